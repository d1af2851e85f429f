//! Square roots of naturals extracted digit by digit, the way they were
//! worked on a dust board, together with the surrounding toolkit: the two
//! classical fractional approximations for non-squares, scaling by even
//! powers with sexagesimal read-out, casting out nines, and an exact Newton
//! iteration to compare against.
//!
//! ```
//! use takht::{isqrt, Natural};
//!
//! let r = isqrt(&Natural::from(54756u64), true);
//! assert_eq!(r.root, Natural::from(234u64));
//! assert_eq!(r.trace.len(), 3);
//! ```

pub mod approx;
pub mod digits;
mod error;
pub mod newton;
pub mod scale;
pub mod takht;
pub mod verify;

pub use approx::{
    approximate, approximate_auto, compare_rules, Approximation, Rule, RuleComparison, Winner,
};
pub use digits::{
    pad_to_even, rational_compare_distance, rational_square, to_digits, DigitString, Natural,
    Rational,
};
pub use error::{ArithmeticError, ParseNaturalError, PreconditionError};
pub use newton::{
    compare_methods, compare_methods_from, newton_run, newton_step, MethodComparison, NewtonRun,
    NewtonState,
};
pub use scale::{
    decimal_expansion, scaled_isqrt, to_sexagesimal, FixedPoint, ScaledRoot, ScalingSpec,
    SexagesimalExpansion,
};
pub use takht::{halve_work_row, isqrt, isqrt_zero_shortcut, IsqrtResult, TakhtBoard};
pub use verify::{check_root, is_possible_square, mod9, unit_digit_candidates, VerificationReport};
