//! Digit-by-digit square-root extraction as done on a dust board.
//!
//! Decimal positions are taken in pairs from the left (an odd-length number
//! gains a leading zero first). For each pair the engine brings the pair down
//! into the running window, picks the largest digit `d` such that
//! `d · (20·prefix + d)` still subtracts from the window, subtracts it, and
//! appends `d` to the root prefix. The doubled prefix written under the
//! residual is what the board calls the work row.
//!
//! Every board in a trace is the state *after* the subtraction of its step.
//! Intermediate boards carry the doubled prefix shifted one column right;
//! the last board carries the undoubled final digit (`4 6 4` for 54756),
//! which is why [`halve_work_row`] adds the digit back after halving.

use serde::Serialize;

use crate::digits::{pad_to_even, to_digits, DigitString, Natural};
use crate::error::PreconditionError;

/// One board state, recorded after the subtraction of its step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TakhtBoard {
    /// 1-based step number; one step per root digit.
    pub step: usize,
    /// Current residual `N - (prefix · 10^k)²` as a number.
    pub residual: Natural,
    /// The residual written across the columns of `N`.
    #[serde(skip)]
    pub remainder_row: DigitString,
    pub work_row: DigitString,
    /// Column of the leftmost work-row digit, counted in the unpadded digits of `N`.
    pub offset: usize,
    pub chosen_digit: u8,
    /// Value the digit was tested against, before subtraction.
    #[serde(skip)]
    pub window: Natural,
    /// `20·prefix + d`; `d · divisor` is what this step subtracted from the window.
    #[serde(skip)]
    pub divisor: Natural,
    /// Digit pairs of `N` not yet brought down.
    #[serde(skip)]
    pub pairs_remaining: usize,
    #[serde(skip)]
    pub is_final: bool,
}

impl TakhtBoard {
    /// Amount removed from the full residual at this step.
    pub fn subtracted(&self) -> Natural {
        let pair_scale = Natural::pow10(2 * self.pairs_remaining as u32);
        &(&self.divisor * self.chosen_digit as u64) * &pair_scale
    }

    /// Column (unpadded) under which the root digit of this step was placed.
    pub fn digit_column(&self) -> usize {
        if self.is_final {
            self.offset + self.work_row.len() - 1
        } else {
            self.offset + self.work_row.len() - 2
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsqrtResult {
    pub input: Natural,
    pub root: Natural,
    pub remainder: Natural,
    pub trace: Vec<TakhtBoard>,
    pub zero_shortcut_used: bool,
    /// Zeros appended to the root when the trailing-zero shortcut fired.
    pub appended_zeros: usize,
}

impl IsqrtResult {
    pub fn is_perfect_square(&self) -> bool {
        self.remainder.is_zero()
    }

    /// Root digits actually extracted on the board, before any appended zeros.
    pub fn board_root(&self) -> Natural {
        &self.root / &Natural::pow10(self.appended_zeros as u32)
    }
}

#[derive(Clone, Copy)]
struct Mode {
    trace: bool,
    shortcut: bool,
}

/// Floor square root and remainder of `n`, optionally with the board trace.
pub fn isqrt(n: &Natural, trace_enabled: bool) -> IsqrtResult {
    extract(
        n,
        Mode {
            trace: trace_enabled,
            shortcut: false,
        },
    )
}

/// Same contract as [`isqrt`], but stops as soon as the residual is zero
/// and only zero pairs remain, appending one root zero per remaining pair.
/// The trace is always recorded.
pub fn isqrt_zero_shortcut(n: &Natural) -> IsqrtResult {
    extract(
        n,
        Mode {
            trace: true,
            shortcut: true,
        },
    )
}

fn extract(n: &Natural, mode: Mode) -> IsqrtResult {
    let mut result = IsqrtResult {
        input: n.clone(),
        root: Natural::zero(),
        remainder: Natural::zero(),
        trace: Vec::new(),
        zero_shortcut_used: false,
        appended_zeros: 0,
    };
    if n.is_zero() {
        return result;
    }

    let digits = to_digits(n);
    let width = digits.len();
    let padded = pad_to_even(&digits);
    let pad = padded.len() - width;
    let pairs: Vec<u64> = padded
        .as_slice()
        .chunks(2)
        .map(|p| u64::from(p[0]) * 10 + u64::from(p[1]))
        .collect();

    let mut window = Natural::zero();
    let mut prefix = Natural::zero();
    let mut residual = n.clone();

    for (i, &pair) in pairs.iter().enumerate() {
        window = &(&window * 100) + &Natural::from(pair);
        let doubled = &prefix * 20;
        let (digit, divisor, product) = largest_digit(&doubled, &window);
        window = window
            .checked_sub(&product)
            .expect("chosen digit never exceeds the window");
        prefix = &(&prefix * 10) + &Natural::from(u64::from(digit));

        let pairs_remaining = pairs.len() - 1 - i;
        let shortcut_fires = mode.shortcut && pairs_remaining > 0 && window.is_zero() && {
            // the window is zero, so the residual is zero exactly when the
            // pairs still to come are all zero
            pairs[i + 1..].iter().all(|&p| p == 0)
        };
        let is_final = pairs_remaining == 0 || shortcut_fires;

        if mode.trace {
            let scale = Natural::pow10(2 * pairs_remaining as u32);
            residual = residual
                .checked_sub(&(&product * &scale))
                .expect("residual stays non-negative");
            // racine column of this step, in padded coordinates
            let digit_col = 2 * i + 1;
            let (work_value, units_col) = if is_final {
                (divisor.clone(), digit_col)
            } else {
                (&prefix * 2, digit_col + 1)
            };
            let work_row = to_digits(&work_value);
            let offset = (units_col + 1 - pad)
                .checked_sub(work_row.len())
                .expect("work row fits inside the board");
            result.trace.push(TakhtBoard {
                step: i + 1,
                remainder_row: to_digits(&residual).pad_to_width(width),
                residual: residual.clone(),
                work_row,
                offset,
                chosen_digit: digit,
                window: &window + &product,
                divisor,
                pairs_remaining,
                is_final,
            });
        }

        if shortcut_fires {
            result.zero_shortcut_used = true;
            result.appended_zeros = pairs_remaining;
            prefix = &prefix * &Natural::pow10(pairs_remaining as u32);
            break;
        }
    }

    result.root = prefix;
    result.remainder = window;
    result
}

/// Scans 9 down to 0 for the largest `d` with `d · (doubled + d) <= window`.
fn largest_digit(doubled: &Natural, window: &Natural) -> (u8, Natural, Natural) {
    for d in (1..=9u8).rev() {
        let divisor = doubled + u64::from(d);
        let product = &divisor * u64::from(d);
        if &product <= window {
            return (d, divisor, product);
        }
    }
    (0, doubled.clone(), Natural::zero())
}

/// Recovers the root from the last board: every digit but the last was
/// doubled, so the root is `(W + last_digit) / 2`.
pub fn halve_work_row(
    final_board: &TakhtBoard,
    last_digit: u8,
) -> Result<Natural, PreconditionError> {
    let w = final_board.work_row.value();
    let corrupt = || PreconditionError::CorruptBoard {
        work_row: final_board.work_row.to_string(),
        last_digit,
    };
    if last_digit > 9 {
        return Err(corrupt());
    }
    let doubled_part = w
        .checked_sub(&Natural::from(u64::from(last_digit)))
        .map_err(|_| corrupt())?;
    let (_, r) = doubled_part
        .div_rem(&Natural::from(20u64))
        .expect("nonzero divisor");
    if !r.is_zero() {
        return Err(corrupt());
    }
    Ok(&(&w + u64::from(last_digit)) / 2)
}

/// Boards one after another, separated by blank lines: residual row on
/// top, work row below it at its column offset.
pub fn render_boards(result: &IsqrtResult) -> String {
    let mut out = String::new();
    for (i, board) in result.trace.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!(
            "step {}: digit {}\n",
            board.step, board.chosen_digit
        ));
        out.push_str(&board.remainder_row.spaced());
        out.push('\n');
        push_at_column(&mut out, board.offset, &board.work_row.spaced());
    }
    out
}

/// One continuous table: the number, then for each step the placed root
/// digit, the residual row and the work row.
pub fn render_paper_layout(result: &IsqrtResult) -> String {
    let mut out = String::new();
    out.push_str(&to_digits(&result.input).spaced());
    out.push('\n');
    for board in &result.trace {
        push_at_column(
            &mut out,
            board.digit_column(),
            &board.chosen_digit.to_string(),
        );
        out.push_str(&board.remainder_row.spaced());
        out.push('\n');
        push_at_column(&mut out, board.offset, &board.work_row.spaced());
    }
    out
}

fn push_at_column(out: &mut String, column: usize, text: &str) {
    out.push_str(&" ".repeat(2 * column));
    out.push_str(text);
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn manuscript_example_54756() {
        let r = isqrt(&nat(54756), true);
        assert_eq!(r.root, nat(234));
        assert_eq!(r.remainder, nat(0));
        let residuals: Vec<_> = r.trace.iter().map(|b| b.residual.clone()).collect();
        assert_eq!(residuals, vec![nat(14756), nat(1856), nat(0)]);
        let rows: Vec<_> = r.trace.iter().map(|b| b.work_row.to_string()).collect();
        assert_eq!(rows, vec!["4", "46", "464"]);
        let offsets: Vec<_> = r.trace.iter().map(|b| b.offset).collect();
        assert_eq!(offsets, vec![1, 2, 2]);
        assert_eq!(r.trace[0].remainder_row.spaced(), "1 4 7 5 6");
        assert_eq!(r.trace[2].remainder_row.spaced(), "0 0 0 0 0");
    }

    #[test]
    fn forced_zero_digit_41209() {
        let r = isqrt(&nat(41209), true);
        assert_eq!(r.root, nat(203));
        assert_eq!(r.remainder, nat(0));
        let digits: Vec<_> = r.trace.iter().map(|b| b.chosen_digit).collect();
        assert_eq!(digits, vec![2, 0, 3]);
        let rows: Vec<_> = r.trace.iter().map(|b| b.work_row.to_string()).collect();
        assert_eq!(rows, vec!["4", "40", "403"]);
        assert_eq!(r.trace[1].residual, nat(1209));
    }

    #[test]
    fn small_and_non_square_inputs() {
        let r = isqrt(&nat(1), true);
        assert_eq!((r.root, r.remainder), (nat(1), nat(0)));
        let r = isqrt(&nat(249), false);
        assert_eq!((r.root, r.remainder), (nat(15), nat(24)));
        assert!(r.trace.is_empty());
        let r = isqrt(&nat(2), true);
        assert_eq!((r.root, r.remainder), (nat(1), nat(1)));
        assert_eq!(r.trace[0].work_row.to_string(), "1");
    }

    #[test]
    fn zero_has_empty_trace() {
        let r = isqrt(&Natural::zero(), true);
        assert_eq!((r.root.clone(), r.remainder.clone()), (nat(0), nat(0)));
        assert!(r.trace.is_empty());
        let s = isqrt_zero_shortcut(&Natural::zero());
        assert!(!s.zero_shortcut_used);
    }

    #[test]
    fn shortcut_on_5290000() {
        let r = isqrt_zero_shortcut(&nat(5_290_000));
        assert_eq!((r.root.clone(), r.remainder.clone()), (nat(2300), nat(0)));
        assert!(r.zero_shortcut_used);
        assert_eq!(r.appended_zeros, 2);
        assert_eq!(r.trace.len(), 2);
        assert_eq!(r.board_root(), nat(23));
        let last = r.trace.last().unwrap();
        assert_eq!(last.work_row.to_string(), "43");
        assert_eq!(last.remainder_row.spaced(), "0 0 0 0 0 0 0");
        assert_eq!(halve_work_row(last, 3).unwrap(), nat(23));

        let plain = isqrt(&nat(5_290_000), true);
        assert_eq!(plain.trace.len(), 4);
        assert!(!plain.zero_shortcut_used);
    }

    #[test]
    fn shortcut_skipped_without_trailing_zero_pairs() {
        let r = isqrt_zero_shortcut(&nat(54756));
        assert_eq!(r.root, nat(234));
        assert!(!r.zero_shortcut_used);
        let r = isqrt_zero_shortcut(&nat(4_000_000));
        assert_eq!(r.root, nat(2000));
        assert!(r.zero_shortcut_used);
        // residual zero but later pairs nonzero: 1 0 0 0 1 is 10001, root 100
        let r = isqrt_zero_shortcut(&nat(10001));
        assert_eq!((r.root.clone(), r.remainder.clone()), (nat(100), nat(1)));
        assert!(!r.zero_shortcut_used);
    }

    #[test]
    fn halving_examples() {
        let r = isqrt(&nat(54756), true);
        assert_eq!(
            halve_work_row(r.trace.last().unwrap(), 4).unwrap(),
            nat(234)
        );
        let r = isqrt(&nat(41209), true);
        assert_eq!(
            halve_work_row(r.trace.last().unwrap(), 3).unwrap(),
            nat(203)
        );
        let r = isqrt(&nat(1), true);
        assert_eq!(halve_work_row(&r.trace[0], 1).unwrap(), nat(1));
    }

    #[test]
    fn halving_rejects_corrupt_boards() {
        let r = isqrt(&nat(54756), true);
        let last = r.trace.last().unwrap();
        assert!(matches!(
            halve_work_row(last, 5),
            Err(PreconditionError::CorruptBoard { .. })
        ));
        let mut bad = last.clone();
        bad.work_row = DigitString::new(vec![4, 7, 4]).unwrap();
        assert!(halve_work_row(&bad, 4).is_err());
    }

    #[test]
    fn paper_layout_matches_printed_table() {
        let r = isqrt(&nat(54756), true);
        let text = render_paper_layout(&r);
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "5 4 7 5 6");
        assert_eq!(lines[1], "2");
        assert_eq!(lines[2], "1 4 7 5 6");
        assert_eq!(lines[3], "  4");
        assert_eq!(lines[4], "    3");
        assert_eq!(lines[5], "0 1 8 5 6");
        assert_eq!(lines[6], "    4 6");
        assert_eq!(lines[7], "        4");
        assert_eq!(lines[8], "0 0 0 0 0");
        assert_eq!(lines[9], "    4 6 4");
    }

    #[test]
    fn board_rendering_ends_with_final_row() {
        let r = isqrt(&nat(41209), true);
        let text = render_boards(&r);
        assert_eq!(text.lines().last().unwrap(), "    4 0 3");
        assert_eq!(text.split("\n\n").count(), 3);
    }
}
