use ::takht::newton::DEFAULT_MAX_STEPS;
use ::takht::*;
use num_bigint::BigUint;
use proptest::prelude::*;

fn big_natural() -> impl Strategy<Value = Natural> {
    "[1-9][0-9]{0,45}|0".prop_map(|s| s.parse().unwrap())
}

fn small_natural(max: u64) -> impl Strategy<Value = Natural> {
    (0..=max).prop_map(Natural::from)
}

/// Binary search on squares, kept independent of the board engine.
fn oracle_floor_sqrt(n: &BigUint) -> BigUint {
    let mut lo = BigUint::from(0u32);
    let mut hi = n + 1u32;
    while &lo + 1u32 < hi {
        let mid = (&lo + &hi) >> 1;
        if &mid * &mid <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

proptest! {
    #[test]
    fn digits_round_trip(n in big_natural()) {
        let d = to_digits(&n);
        prop_assert_eq!(d.value(), n.clone());
        prop_assert!(d.as_slice()[0] != 0 || d.len() == 1);
        prop_assert_eq!(d.to_string(), n.to_string());
    }

    #[test]
    fn padding_is_idempotent_and_value_preserving(n in big_natural()) {
        let once = pad_to_even(&to_digits(&n));
        prop_assert_eq!(once.len() % 2, 0);
        prop_assert_eq!(pad_to_even(&once), once.clone());
        prop_assert_eq!(once.value(), n);
    }

    #[test]
    fn rationals_stay_reduced(a in 1u64..1_000_000, b in 1u64..1_000_000, c in 0u64..1000, d in 1u64..1000) {
        let x = Rational::new(a.into(), b.into()).unwrap();
        let y = Rational::new(c.into(), d.into()).unwrap();
        for r in [&x * &y, &x + &y, x.square(), x.abs_diff(&y)] {
            prop_assert!(r.numer().gcd(r.denom()) == Natural::one() || r.is_zero() && r.denom().is_one());
        }
        prop_assert_eq!(&x * &x.recip().unwrap(), Rational::from(1u64));
    }

    #[test]
    fn isqrt_matches_binary_search(n in big_natural()) {
        let r = isqrt(&n, false);
        let expected = oracle_floor_sqrt(&BigUint::from(n.clone()));
        prop_assert_eq!(BigUint::from(r.root.clone()), expected);
        prop_assert_eq!(&r.root.square() + &r.remainder, n);
        prop_assert!(r.remainder <= &r.root * 2);
    }

    #[test]
    fn shortcut_agrees_with_plain_extraction(n in small_natural(100_000), zeros in 0u32..6) {
        let n = &n * &Natural::pow10(2 * zeros);
        let plain = isqrt(&n, false);
        let short = isqrt_zero_shortcut(&n);
        prop_assert_eq!(&plain.root, &short.root);
        prop_assert_eq!(&plain.remainder, &short.remainder);
    }

    #[test]
    fn trace_replays_and_digits_are_maximal(n in big_natural()) {
        let r = isqrt(&n, true);
        let mut residual = n.clone();
        for board in &r.trace {
            residual = residual.checked_sub(&board.subtracted()).unwrap();
            prop_assert_eq!(&residual, &board.residual);
            prop_assert_eq!(board.remainder_row.value(), board.residual.clone());
            prop_assert!(board.offset + board.work_row.len() <= board.remainder_row.len());
            let d = u64::from(board.chosen_digit);
            prop_assert!(&board.divisor * d <= board.window);
            if d < 9 {
                let bigger = &(&board.divisor + 1) * (d + 1);
                prop_assert!(bigger > board.window);
            }
        }
        prop_assert_eq!(residual, r.remainder.clone());
        if let Some(last) = r.trace.last() {
            prop_assert_eq!(halve_work_row(last, last.chosen_digit).unwrap(), r.root.clone());
        }
    }

    #[test]
    fn khwarizmi_overshoot_identity(n in 2u64..1_000_000) {
        let n = Natural::from(n);
        let k = approximate(&n, Rule::Khwarizmi).unwrap();
        let c = approximate(&n, Rule::Conventional).unwrap();
        let target = Rational::from(n.clone());
        if k.remainder.is_zero() {
            prop_assert!(k.fraction.is_zero() && c.fraction.is_zero());
        } else {
            // (E + R/2E)² − n = (R/2E)²
            prop_assert_eq!(k.square().checked_sub(&target).unwrap(), k.fraction.square());
            prop_assert!(c.square() < target);
            prop_assert!(target < k.square());
            // R <= 2E, with equality at n = (E+1)² − 1
            prop_assert!(k.fraction <= Rational::from(1u64));
            prop_assert!(c.fraction < Rational::from(1u64));
        }
    }

    #[test]
    fn scaling_recovers_square_roots(m in 0u64..=100, a in 2u64..=9, p in 1u32..=3) {
        let spec = ScalingSpec::new(a.into(), p).unwrap();
        let r = scaled_isqrt(&Natural::from(m * m), &spec);
        prop_assert_eq!(r.value, Rational::from(m));
    }

    #[test]
    fn scaled_root_brackets_the_true_root(n in 1u64..100_000, a in 2u64..=12, p in 1u32..=4) {
        let spec = ScalingSpec::new(a.into(), p).unwrap();
        let r = scaled_isqrt(&Natural::from(n), &spec);
        let target = Rational::from(n);
        let upper = Rational::new(&r.scaled_root + 1, r.root_factor.clone()).unwrap();
        prop_assert!(r.value.square() <= target);
        prop_assert!(target < upper.square());
    }

    #[test]
    fn decimal_expansion_is_prefix_stable(n in big_natural(), p in 1u32..12, extra in 1u32..8) {
        let short = decimal_expansion(&n, p).unwrap();
        let long = decimal_expansion(&n, p + extra).unwrap();
        prop_assert_eq!(&long.scaled_root / &Natural::pow10(extra), short.scaled_root.clone());
        prop_assert!(long.value() >= short.value());
    }

    #[test]
    fn sexagesimal_truncates_within_last_place(n in 1u64..10_000_000, p in 1u32..10, depth in 1usize..6) {
        let f = decimal_expansion(&Natural::from(n), p).unwrap();
        let s = to_sexagesimal(&f, depth).unwrap();
        prop_assert_eq!(s.places.len(), depth);
        prop_assert!(s.places.iter().all(|&x| x < 60));
        let gap = f.value().checked_sub(&s.value()).unwrap();
        let last_place = Rational::new(Natural::one(), Natural::from(60u64).pow(depth as u32)).unwrap();
        prop_assert!(gap < last_place);
        prop_assert_eq!(s.truncated, !gap.is_zero());
    }

    #[test]
    fn digit_sum_residue_matches_native(n in big_natural()) {
        let native = BigUint::from(n.clone()) % 9u32;
        prop_assert_eq!(BigUint::from(mod9(&n)), native);
    }

    #[test]
    fn honest_extractions_are_consistent(n in big_natural()) {
        let r = isqrt(&n, false);
        prop_assert!(check_root(&n, &r.root, &r.remainder).passed);
    }

    #[test]
    fn newton_descends_from_above(a in 1u64..5000, u0_extra in 0u64..5000) {
        let a_n = Natural::from(a);
        // any u0 >= a >= sqrt(a) starts above the root
        let u0 = Rational::from(a + u0_extra);
        let run = newton_run(&a_n, &u0, 10, &Rational::zero()).unwrap();
        let target = Rational::from(a);
        for w in run.iterates.windows(2) {
            prop_assert!(w[1] <= w[0]);
            prop_assert!(w[1].square() >= target);
        }
        for (i, w) in run.gaps.windows(2).enumerate() {
            if w[0] <= Rational::from(1u64) {
                let bound = w[0].square().checked_div(&Rational::from(4 * a)).unwrap();
                prop_assert!(w[1] <= bound, "step {} of a = {}", i, a);
            }
        }
        let again = newton_run(&a_n, &u0, 10, &Rational::zero()).unwrap();
        prop_assert_eq!(run, again);
    }
}

#[test]
fn newton_default_cap_is_reachable() {
    let run = newton_run(
        &Natural::from(2u64),
        &Rational::from(1u64),
        DEFAULT_MAX_STEPS,
        &Rational::zero(),
    )
    .unwrap();
    assert_eq!(run.steps(), DEFAULT_MAX_STEPS);
    assert!(!run.converged);
    assert_eq!(*run.correct_digits.last().unwrap(), 65);
}
