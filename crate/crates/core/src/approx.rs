//! Fractional approximations of the root of a non-square `N = E² + R`.
//!
//! Two historical rules assign the remainder to a fraction: al-Khwarizmi's
//! `R / 2E` and the conventional `R / (2E + 1)`. Quality is judged by how far
//! the square of the approximation lands from `N`, which stays within exact
//! rational arithmetic. The conventional rule is closer exactly when
//! `R >= E`; for `R <= E - 1` al-Khwarizmi's rule wins. Ties only happen on
//! perfect squares, where both fractions are zero.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::digits::{rational_compare_distance, Natural, Rational};
use crate::error::PreconditionError;
use crate::takht::isqrt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// `R / 2E`.
    Khwarizmi,
    /// `R / (2E + 1)`.
    Conventional,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Khwarizmi => "khwarizmi",
            Rule::Conventional => "conventional",
        }
    }

    /// The rule the dominance criterion picks for a remainder `r` over root `e`.
    pub fn preferred_for(e: &Natural, r: &Natural) -> Rule {
        if r < e {
            Rule::Khwarizmi
        } else {
            Rule::Conventional
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Approximation {
    #[serde(rename = "E")]
    pub integer_part: Natural,
    #[serde(rename = "R")]
    pub remainder: Natural,
    pub rule: Rule,
    pub fraction: Rational,
}

impl Approximation {
    /// `E + r` as a single fraction.
    pub fn value(&self) -> Rational {
        &Rational::from(self.integer_part.clone()) + &self.fraction
    }

    pub fn square(&self) -> Rational {
        self.value().square()
    }
}

impl fmt::Display for Approximation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fraction.is_zero() {
            write!(f, "{}", self.integer_part)
        } else {
            write!(f, "{} + {}", self.integer_part, self.fraction)
        }
    }
}

fn build(e: &Natural, r: &Natural, rule: Rule) -> Result<Approximation, PreconditionError> {
    let denom = match rule {
        Rule::Khwarizmi => e * 2,
        Rule::Conventional => &(e * 2) + 1,
    };
    if denom.is_zero() {
        return Err(PreconditionError::ZeroRoot);
    }
    Ok(Approximation {
        integer_part: e.clone(),
        remainder: r.clone(),
        rule,
        fraction: Rational::new(r.clone(), denom)?,
    })
}

/// `E + R/2E` or `E + R/(2E+1)` where `E, R` come from the board extraction.
pub fn approximate(n: &Natural, rule: Rule) -> Result<Approximation, PreconditionError> {
    if n.is_zero() {
        return match rule {
            Rule::Khwarizmi => Err(PreconditionError::ZeroRoot),
            Rule::Conventional => Err(PreconditionError::TooSmall {
                min: 1,
                got: n.to_string(),
            }),
        };
    }
    let ext = isqrt(n, false);
    build(&ext.root, &ext.remainder, rule)
}

/// Applies the dominance criterion first, then the chosen rule.
pub fn approximate_auto(n: &Natural) -> Result<Approximation, PreconditionError> {
    if n.is_zero() {
        return Err(PreconditionError::TooSmall {
            min: 1,
            got: n.to_string(),
        });
    }
    let ext = isqrt(n, false);
    build(
        &ext.root,
        &ext.remainder,
        Rule::preferred_for(&ext.root, &ext.remainder),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Khwarizmi,
    Conventional,
    Tie,
}

impl From<Rule> for Winner {
    fn from(rule: Rule) -> Self {
        match rule {
            Rule::Khwarizmi => Winner::Khwarizmi,
            Rule::Conventional => Winner::Conventional,
        }
    }
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Khwarizmi => "khwarizmi",
            Winner::Conventional => "conventional",
            Winner::Tie => "tie",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleOutcome {
    #[serde(flatten)]
    pub approximation: Approximation,
    pub square: Rational,
    /// `|square - N|`.
    pub distance: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleComparison {
    pub n: Natural,
    pub khwarizmi: RuleOutcome,
    pub conventional: RuleOutcome,
    pub measured_winner: Winner,
    pub predicted_winner: Winner,
    pub agree: bool,
    /// What the historical "conventional is always better" claim says.
    pub historical_claim: Winner,
}

/// Both rules side by side, with exact squared distances and the
/// criterion's prediction.
pub fn compare_rules(n: &Natural) -> Result<RuleComparison, PreconditionError> {
    if n.is_zero() {
        return Err(PreconditionError::TooSmall {
            min: 1,
            got: n.to_string(),
        });
    }
    let ext = isqrt(n, false);
    let outcome = |rule| -> Result<RuleOutcome, PreconditionError> {
        let approximation = build(&ext.root, &ext.remainder, rule)?;
        let square = approximation.square();
        let distance = square.abs_diff(&Rational::from(n.clone()));
        Ok(RuleOutcome {
            approximation,
            square,
            distance,
        })
    };
    let khwarizmi = outcome(Rule::Khwarizmi)?;
    let conventional = outcome(Rule::Conventional)?;

    let measured_winner =
        match rational_compare_distance(&khwarizmi.square, &conventional.square, n) {
            Ordering::Less => Winner::Khwarizmi,
            Ordering::Greater => Winner::Conventional,
            Ordering::Equal => Winner::Tie,
        };
    let predicted_winner = if ext.remainder.is_zero() {
        Winner::Tie
    } else {
        Rule::preferred_for(&ext.root, &ext.remainder).into()
    };
    let historical_claim = if ext.remainder.is_zero() {
        Winner::Tie
    } else {
        Winner::Conventional
    };
    Ok(RuleComparison {
        n: n.clone(),
        agree: measured_winner == predicted_winner,
        khwarizmi,
        conventional,
        measured_winner,
        predicted_winner,
        historical_claim,
    })
}
