//! Necessary-condition checks on claimed roots.
//!
//! Casting out nines can refute a claim `N = root² + remainder` but never
//! certify it: two numbers that differ by a multiple of 9 look the same.
//! The unit-digit and mod-9 tables for squares are screens in the same
//! sense. Reports therefore speak of "refuted" or "consistent (mod 9)".

use std::fmt;

use serde::Serialize;

use crate::digits::{to_digits, Natural};

/// `n mod 9` by iterated digit sums.
pub fn mod9(n: &Natural) -> u8 {
    let mut sum: u64 = to_digits(n).as_slice().iter().map(|&d| u64::from(d)).sum();
    while sum > 9 {
        sum = digit_sum_u64(sum);
    }
    if sum == 9 {
        0
    } else {
        sum as u8
    }
}

fn digit_sum_u64(mut v: u64) -> u64 {
    let mut s = 0;
    while v > 0 {
        s += v % 10;
        v /= 10;
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Residues disagree: the claim is certainly wrong.
    Refuted,
    /// Residues agree; the claim may still be wrong.
    ConsistentMod9,
}

impl Outcome {
    /// The board-side vocabulary.
    pub fn traditional(self) -> &'static str {
        match self {
            Outcome::Refuted => "ne correspond pas",
            Outcome::ConsistentMod9 => "correspond",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Refuted => "refuted",
            Outcome::ConsistentMod9 => "consistent (mod 9)",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// `N mod 9`.
    pub residue_n: u8,
    /// `root² mod 9`.
    pub residue_root_sq: u8,
    /// `remainder mod 9`.
    pub residue_remainder: u8,
    pub passed: bool,
}

impl VerificationReport {
    pub const NECESSARY_ONLY: bool = true;

    pub fn outcome(&self) -> Outcome {
        if self.passed {
            Outcome::ConsistentMod9
        } else {
            Outcome::Refuted
        }
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("VerificationReport", 6)?;
        s.serialize_field("a", &self.residue_n)?;
        s.serialize_field("b", &self.residue_root_sq)?;
        s.serialize_field("c", &self.residue_remainder)?;
        s.serialize_field("passed", &self.passed)?;
        s.serialize_field("outcome", &self.outcome())?;
        s.serialize_field("semantics", "necessary-only")?;
        s.end()
    }
}

/// Casts out nines on the claim `n = root² + remainder`.
pub fn check_root(n: &Natural, root: &Natural, remainder: &Natural) -> VerificationReport {
    let a = mod9(n);
    let r = mod9(root);
    let b = (r * r) % 9;
    let c = mod9(remainder);
    VerificationReport {
        residue_n: a,
        residue_root_sq: b,
        residue_remainder: c,
        passed: a == (b + c) % 9,
    }
}

/// Units a root may end in, given the unit digit of its square. Empty for
/// units no square can have.
pub fn unit_digit_candidates(square_unit: u8) -> &'static [u8] {
    match square_unit {
        0 => &[0],
        1 => &[1, 9],
        4 => &[2, 8],
        5 => &[5],
        6 => &[4, 6],
        9 => &[3, 7],
        _ => &[],
    }
}

pub const SQUARE_UNITS: [u8; 6] = [0, 1, 4, 5, 6, 9];
pub const SQUARE_RESIDUES_MOD9: [u8; 4] = [0, 1, 4, 7];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "criterion", content = "value", rename_all = "snake_case")]
pub enum Exclusion {
    UnitDigit(u8),
    ResidueMod9(u8),
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exclusion::UnitDigit(d) => write!(f, "unit digit {d} is not one of 0, 1, 4, 5, 6, 9"),
            Exclusion::ResidueMod9(r) => write!(f, "residue {r} mod 9 is not one of 0, 1, 4, 7"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareScreen {
    /// `true` means "not excluded", not "is a square".
    pub possible: bool,
    pub reasons: Vec<Exclusion>,
}

pub fn is_possible_square(n: &Natural) -> SquareScreen {
    let digits = to_digits(n);
    let unit = *digits.as_slice().last().expect("at least one digit");
    let residue = mod9(n);
    let mut reasons = Vec::new();
    if !SQUARE_UNITS.contains(&unit) {
        reasons.push(Exclusion::UnitDigit(unit));
    }
    if !SQUARE_RESIDUES_MOD9.contains(&residue) {
        reasons.push(Exclusion::ResidueMod9(residue));
    }
    SquareScreen {
        possible: reasons.is_empty(),
        reasons,
    }
}
