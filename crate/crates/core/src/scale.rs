//! Root extraction through pre-multiplication: `√(A^2p · N) = A^p · √N`.
//!
//! With `A = 10` the extra root digits are decimal places, and those can be
//! turned into sexagesimal minutes, seconds, tierces, ... by repeatedly
//! multiplying the fractional residue by 60 and splitting off what crosses
//! `10^p`.

use std::fmt;

use serde::Serialize;

use crate::digits::{format_fixed, Natural, Rational};
use crate::error::PreconditionError;
use crate::takht::isqrt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingSpec {
    base: Natural,
    exponent_pairs: u32,
}

impl ScalingSpec {
    pub fn new(base: Natural, exponent_pairs: u32) -> Result<Self, PreconditionError> {
        if base < Natural::from(2u64) {
            return Err(PreconditionError::ScalingBase(base.to_string()));
        }
        if exponent_pairs == 0 {
            return Err(PreconditionError::ScalingExponent);
        }
        Ok(ScalingSpec {
            base,
            exponent_pairs,
        })
    }

    pub fn base(&self) -> &Natural {
        &self.base
    }

    pub fn exponent_pairs(&self) -> u32 {
        self.exponent_pairs
    }

    /// `A^p`, the factor the scaled root is divided by.
    pub fn root_factor(&self) -> Natural {
        self.base.pow(self.exponent_pairs)
    }

    /// `A^2p`, the factor applied to the input.
    pub fn input_factor(&self) -> Natural {
        self.base.pow(2 * self.exponent_pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaledRoot {
    pub scaled_input: Natural,
    pub scaled_root: Natural,
    pub scaled_remainder: Natural,
    pub root_factor: Natural,
    /// `scaled_root / A^p`, reduced.
    pub value: Rational,
}

pub fn scaled_isqrt(n: &Natural, spec: &ScalingSpec) -> ScaledRoot {
    let scaled_input = n * &spec.input_factor();
    let ext = isqrt(&scaled_input, false);
    let root_factor = spec.root_factor();
    let value = Rational::new(ext.root.clone(), root_factor.clone()).expect("A^p is positive");
    ScaledRoot {
        scaled_input,
        scaled_root: ext.root,
        scaled_remainder: ext.remainder,
        root_factor,
        value,
    }
}

/// Root of `10^2p · N` read as a number with `p` decimal places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub scaled_root: Natural,
    pub places: u32,
    pub remainder: Natural,
}

impl FixedPoint {
    pub fn value(&self) -> Rational {
        Rational::new(self.scaled_root.clone(), Natural::pow10(self.places))
            .expect("10^p is positive")
    }

    pub fn integer_part(&self) -> Natural {
        &self.scaled_root / &Natural::pow10(self.places)
    }

    pub fn fractional_digits(&self) -> Natural {
        &self.scaled_root % &Natural::pow10(self.places)
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_fixed(&self.scaled_root, self.places))
    }
}

/// Truncated decimal expansion of `√n` to `places` digits.
pub fn decimal_expansion(n: &Natural, places: u32) -> Result<FixedPoint, PreconditionError> {
    if places == 0 {
        return Err(PreconditionError::NoPlaces);
    }
    let ext = isqrt(&(n * &Natural::pow10(2 * places)), false);
    Ok(FixedPoint {
        scaled_root: ext.root,
        places,
        remainder: ext.remainder,
    })
}

/// One multiply-by-sixty link: `residue · 60 = place · 10^p + next_residue`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SexagesimalStep {
    pub residue: Natural,
    pub product: Natural,
    pub place: u32,
    pub next_residue: Natural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SexagesimalExpansion {
    #[serde(rename = "integer")]
    pub integer_part: Natural,
    pub places: Vec<u32>,
    /// Set when the residue was still nonzero after the last requested place.
    pub truncated: bool,
    #[serde(skip)]
    pub chain: Vec<SexagesimalStep>,
}

impl SexagesimalExpansion {
    /// `integer + Σ places[i] / 60^(i+1)`.
    pub fn value(&self) -> Rational {
        let mut numer = self.integer_part.clone();
        for &place in &self.places {
            numer = &(&numer * 60) + u64::from(place);
        }
        let denom = Natural::from(60u64).pow(self.places.len() as u32);
        Rational::new(numer, denom).expect("60^k is positive")
    }
}

/// `2;14,9,36`.
impl fmt::Display for SexagesimalExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.integer_part)?;
        for (i, place) in self.places.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{place}")?;
        }
        Ok(())
    }
}

pub fn to_sexagesimal(
    root: &FixedPoint,
    depth: usize,
) -> Result<SexagesimalExpansion, PreconditionError> {
    if depth == 0 {
        return Err(PreconditionError::NoDepth);
    }
    let unit = Natural::pow10(root.places);
    let mut residue = root.fractional_digits();
    let mut places = Vec::with_capacity(depth);
    let mut chain = Vec::with_capacity(depth);
    for _ in 0..depth {
        let product = &residue * 60;
        let (place, next_residue) = product.div_rem(&unit)?;
        // residue < 10^p, so the quotient is below 60
        let place = place.to_u64().expect("place below 60") as u32;
        places.push(place);
        chain.push(SexagesimalStep {
            residue,
            product,
            place,
            next_residue: next_residue.clone(),
        });
        residue = next_residue;
    }
    Ok(SexagesimalExpansion {
        integer_part: root.integer_part(),
        places,
        truncated: !residue.is_zero(),
        chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn spec(a: u64, p: u32) -> ScalingSpec {
        ScalingSpec::new(nat(a), p).unwrap()
    }

    #[test]
    fn scaling_examples() {
        let r = scaled_isqrt(&nat(4), &spec(3, 2));
        assert_eq!(r.scaled_input, nat(324));
        assert_eq!(r.scaled_root, nat(18));
        assert_eq!(r.value, Rational::from(2u64));

        let r = scaled_isqrt(&nat(2), &spec(3, 2));
        assert_eq!(
            (r.scaled_root.clone(), r.scaled_remainder.clone()),
            (nat(12), nat(18))
        );
        assert_eq!(r.value, Rational::new(nat(4), nat(3)).unwrap());

        let r = scaled_isqrt(&nat(4), &spec(15, 1));
        assert_eq!(r.scaled_input, nat(900));
        assert_eq!(r.scaled_root, nat(30));
        assert_eq!(r.value, Rational::from(2u64));
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            ScalingSpec::new(nat(1), 1),
            Err(PreconditionError::ScalingBase(_))
        ));
        assert_eq!(
            ScalingSpec::new(nat(10), 0),
            Err(PreconditionError::ScalingExponent)
        );
        assert_eq!(
            decimal_expansion(&nat(5), 0),
            Err(PreconditionError::NoPlaces)
        );
    }

    #[test]
    fn decimal_examples() {
        let f = decimal_expansion(&nat(5), 3).unwrap();
        assert_eq!(
            (f.scaled_root.clone(), f.remainder.clone()),
            (nat(2236), nat(304))
        );
        assert_eq!(f.to_string(), "2.236");

        let f = decimal_expansion(&nat(4), 3).unwrap();
        assert_eq!(f.to_string(), "2.000");
        assert!(f.remainder.is_zero());

        let f = decimal_expansion(&nat(2), 6).unwrap();
        assert_eq!(f.to_string(), "1.414213");
        let two_e12 = &nat(2) * &Natural::pow10(12);
        assert_eq!(
            f.remainder,
            two_e12.checked_sub(&nat(1_414_213).square()).unwrap()
        );
    }

    #[test]
    fn sexagesimal_root_of_five() {
        let f = decimal_expansion(&nat(5), 3).unwrap();
        let s = to_sexagesimal(&f, 3).unwrap();
        assert_eq!(s.integer_part, nat(2));
        assert_eq!(s.places, vec![14, 9, 36]);
        assert_eq!(s.to_string(), "2;14,9,36");
        assert!(!s.truncated);
        let products: Vec<_> = s.chain.iter().map(|c| c.product.clone()).collect();
        assert_eq!(products, vec![nat(14160), nat(9600), nat(36000)]);
        let residues: Vec<_> = s.chain.iter().map(|c| c.next_residue.clone()).collect();
        assert_eq!(residues, vec![nat(160), nat(600), nat(0)]);
    }

    #[test]
    fn sexagesimal_zero_fill_and_truncation() {
        let exact = FixedPoint {
            scaled_root: nat(2000),
            places: 3,
            remainder: nat(0),
        };
        let s = to_sexagesimal(&exact, 3).unwrap();
        assert_eq!(s.places, vec![0, 0, 0]);
        assert!(!s.truncated);

        let root_two = FixedPoint {
            scaled_root: nat(1414),
            places: 3,
            remainder: nat(604),
        };
        let s = to_sexagesimal(&root_two, 2).unwrap();
        assert_eq!(s.places, vec![24, 50]);
        assert_eq!(s.chain[0].product, nat(24840));
        assert_eq!(s.chain[1].product, nat(50400));
        assert!(s.truncated);
        assert_eq!(
            to_sexagesimal(&root_two, 0),
            Err(PreconditionError::NoDepth)
        );
    }
}
