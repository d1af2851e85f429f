//! Exact-rational Newton iteration `u ← (u² + a) / 2u` and a harness that
//! compares it with board extraction at a given number of decimal places.
//!
//! Precision on both sides is measured as `|value² − a|`, the same metric the
//! approximation rules use.

use std::fmt;

use serde::Serialize;

use crate::digits::{Natural, Rational};
use crate::error::PreconditionError;
use crate::scale::{decimal_expansion, FixedPoint};

/// Iteration cap used when callers have no better bound. Each step roughly
/// doubles the size of the fraction.
pub const DEFAULT_MAX_STEPS: usize = 16;

/// Decimal places of the reference root used to count correct digits.
pub const REFERENCE_PLACES: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonState {
    pub iterate: Rational,
    pub step: usize,
    pub target: Natural,
}

impl NewtonState {
    pub fn start(target: Natural, u0: Rational) -> Self {
        NewtonState {
            iterate: u0,
            step: 0,
            target,
        }
    }

    /// `|u² − a|`.
    pub fn gap(&self) -> Rational {
        self.iterate
            .square()
            .abs_diff(&Rational::from(self.target.clone()))
    }
}

pub fn newton_step(state: &NewtonState) -> Result<NewtonState, PreconditionError> {
    if state.iterate.is_zero() {
        return Err(PreconditionError::ZeroIterate);
    }
    // u = p/q  ⇒  (u² + a) / 2u = (p² + a·q²) / (2·p·q)
    let p = state.iterate.numer();
    let q = state.iterate.denom();
    let numer = &p.square() + &(&state.target * &q.square());
    let denom = &(p * q) * 2;
    Ok(NewtonState {
        iterate: Rational::new(numer, denom)?,
        step: state.step + 1,
        target: state.target.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonRun {
    pub target: Natural,
    /// `u_0, u_1, …` in order.
    pub iterates: Vec<Rational>,
    /// `|u_n² − a|` for each iterate.
    pub gaps: Vec<Rational>,
    /// Leading decimal digits of each iterate that agree with the reference root.
    pub correct_digits: Vec<usize>,
    pub tolerance: Rational,
    pub converged: bool,
}

impl NewtonRun {
    /// Steps performed (iterates minus the starting value).
    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn last(&self) -> &Rational {
        self.iterates.last().expect("run holds u_0")
    }
}

/// Iterates until `|u_n² − a| <= tolerance` or `max_steps` steps are done.
pub fn newton_run(
    a: &Natural,
    u0: &Rational,
    max_steps: usize,
    tolerance: &Rational,
) -> Result<NewtonRun, PreconditionError> {
    if a.is_zero() {
        return Err(PreconditionError::TooSmall {
            min: 1,
            got: a.to_string(),
        });
    }
    if u0.is_zero() {
        return Err(PreconditionError::ZeroIterate);
    }
    let reference = decimal_expansion(a, REFERENCE_PLACES)?;
    let mut state = NewtonState::start(a.clone(), u0.clone());
    let mut run = NewtonRun {
        target: a.clone(),
        iterates: Vec::new(),
        gaps: Vec::new(),
        correct_digits: Vec::new(),
        tolerance: tolerance.clone(),
        converged: false,
    };
    loop {
        let gap = state.gap();
        run.correct_digits
            .push(correct_leading_digits(&state.iterate, &reference));
        run.iterates.push(state.iterate.clone());
        let done = &gap <= tolerance;
        run.gaps.push(gap);
        if done {
            run.converged = true;
            break;
        }
        if state.step >= max_steps {
            break;
        }
        state = newton_step(&state)?;
    }
    Ok(run)
}

/// Counts agreeing leading characters of the two truncated decimal renderings.
pub fn correct_leading_digits(value: &Rational, reference: &FixedPoint) -> usize {
    let ours = value.floor_scaled(reference.places).to_string();
    let theirs = reference.scaled_root.to_string();
    if ours.len() != theirs.len() {
        return 0;
    }
    ours.bytes()
        .zip(theirs.bytes())
        .take_while(|(x, y)| x == y)
        .count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Takht,
    Newton,
    Tie,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Takht => "takht",
            Method::Newton => "newton",
            Method::Tie => "tie",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodComparison {
    pub a: Natural,
    pub places: u32,
    pub takht: FixedPoint,
    pub takht_error: Rational,
    pub newton_start: Rational,
    pub newton_steps: usize,
    pub newton_value: Rational,
    pub newton_error: Rational,
    pub winner: Method,
    pub metric: &'static str,
}

/// Board extraction at `places` decimals against `newton_steps` Newton steps from `u_0 = a`.
pub fn compare_methods(
    a: &Natural,
    places: u32,
    newton_steps: usize,
) -> Result<MethodComparison, PreconditionError> {
    compare_methods_from(a, places, newton_steps, &Rational::from(a.clone()))
}

pub fn compare_methods_from(
    a: &Natural,
    places: u32,
    newton_steps: usize,
    u0: &Rational,
) -> Result<MethodComparison, PreconditionError> {
    if a.is_zero() {
        return Err(PreconditionError::TooSmall {
            min: 1,
            got: a.to_string(),
        });
    }
    let takht = decimal_expansion(a, places)?;
    let target = Rational::from(a.clone());
    let takht_error = takht.value().square().abs_diff(&target);

    let mut state = NewtonState::start(a.clone(), u0.clone());
    for _ in 0..newton_steps {
        state = newton_step(&state)?;
    }
    let newton_error = state.gap();
    let winner = match takht_error.cmp(&newton_error) {
        std::cmp::Ordering::Less => Method::Takht,
        std::cmp::Ordering::Greater => Method::Newton,
        std::cmp::Ordering::Equal => Method::Tie,
    };
    Ok(MethodComparison {
        a: a.clone(),
        places,
        takht,
        takht_error,
        newton_start: u0.clone(),
        newton_steps,
        newton_value: state.iterate,
        newton_error,
        winner,
        metric: "|value^2 - a|",
    })
}

pub const CSV_HEADER: &str = "a,method,steps_or_p,value,error,winner";

impl MethodComparison {
    /// Two CSV lines, one per method, matching [`CSV_HEADER`].
    pub fn csv_rows(&self) -> [String; 2] {
        [
            format!(
                "{},takht,{},{},{},{}",
                self.a, self.places, self.takht, self.takht_error, self.winner
            ),
            format!(
                "{},newton,{},{},{},{}",
                self.a,
                self.newton_steps,
                self.newton_value.to_decimal_string(self.places),
                self.newton_error,
                self.winner
            ),
        ]
    }
}
