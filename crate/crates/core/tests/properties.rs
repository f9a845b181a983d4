use mzv_core::algebra::{shuffle, shuffle_indices, stuffle, FormalSum};
use mzv_core::eval::{direct, EvalConfig, EvalResult};
use mzv_core::rational::{binom, ratio};
use mzv_core::{EvalError, Evaluator, Letter, Part, SignedIndex, Word};
use proptest::prelude::*;

fn all_words(len: usize) -> Vec<Word> {
    (0..1u32 << len)
        .map(|bits| {
            let letters = (0..len).map(|i| if bits >> i & 1 == 1 { Letter::B } else { Letter::A }).collect();
            Word::new(letters).unwrap()
        })
        .collect()
}

#[test]
fn shuffle_count_law_exhaustive_to_length_8() {
    let mut pairs = 0;
    for m in 1..8 {
        for n in 1..=8 - m {
            let expected = binom((m + n) as u64, m as u64).to_f64_fast() as u64;
            for a in all_words(m) {
                for b in all_words(n) {
                    let total: u64 = shuffle(&a, &b).values().sum();
                    assert_eq!(total, expected, "{a} ш {b}");
                    pairs += 1;
                }
            }
        }
    }
    assert_eq!(pairs, (2..=8).map(|t| (t - 1) * (1 << t)).sum::<usize>());
}

fn part() -> impl Strategy<Value = Part> {
    (1u32..=4, any::<bool>()).prop_map(|(e, minus)| if minus { Part::barred(e) } else { Part::plain(e) })
}

/// Admissible signed index of depth 1..=depth and weight at most `max_weight`.
fn signed_index(depth: usize, max_weight: u32) -> impl Strategy<Value = SignedIndex> {
    prop::collection::vec(part(), 1..=depth)
        .prop_map(|mut parts| {
            let last = parts.last_mut().unwrap();
            if !last.sign.is_minus() && last.exponent < 2 {
                last.exponent = 2;
            }
            SignedIndex::new(parts, false).unwrap()
        })
        .prop_filter("weight cap", move |idx| idx.weight() <= max_weight)
}

fn plain_index(depth: usize, max_weight: u32) -> impl Strategy<Value = SignedIndex> {
    prop::collection::vec(1u32..=4, 1..=depth)
        .prop_map(|mut e| {
            let last = e.last_mut().unwrap();
            *last = (*last).max(2);
            SignedIndex::plain(e)
        })
        .prop_filter("weight cap", move |idx| idx.weight() <= max_weight)
}

fn product(x: &EvalResult, y: &EvalResult) -> (f64, f64) {
    let (a, b) = (x.to_f64(), y.to_f64());
    let err = a.abs() * y.error_bound + b.abs() * x.error_bound + x.error_bound * y.error_bound;
    (a * b, err + 1e-15 * (a * b).abs())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn parser_round_trip(idx in signed_index(6, 40), star in any::<bool>()) {
        let idx = idx.with_star(star);
        let text = idx.to_string();
        prop_assert_eq!(text.parse::<SignedIndex>().unwrap(), idx);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 30, ..ProptestConfig::default() })]

    #[test]
    fn shuffle_is_an_evaluation_homomorphism(x in plain_index(3, 5), y in plain_index(3, 5)) {
        prop_assume!(x.weight() + y.weight() <= 7);
        let ev = Evaluator::new();
        let (p, perr) = product(&ev.eval_index(&x, 1e-13).unwrap(), &ev.eval_index(&y, 1e-13).unwrap());
        let s = ev.eval_sum(&shuffle_indices(&x, &y).unwrap(), 1e-12).unwrap();
        prop_assert!((s.to_f64() - p).abs() <= 1e-9 + perr + s.error_bound, "{} {}", x, y);
    }

    #[test]
    fn stuffle_is_an_evaluation_homomorphism(x in signed_index(3, 5), y in signed_index(3, 5)) {
        prop_assume!(x.weight() + y.weight() <= 7);
        let ev = Evaluator::new();
        let (p, perr) = product(&ev.eval_index(&x, 1e-13).unwrap(), &ev.eval_index(&y, 1e-13).unwrap());
        let s = ev.eval_sum(&stuffle(&x, &y).unwrap(), 1e-12).unwrap();
        prop_assert!((s.to_f64() - p).abs() <= 1e-9 + perr + s.error_bound, "{} {}", x, y);
    }

    #[test]
    fn duality_preserves_value(x in plain_index(5, 9)) {
        let ev = Evaluator::new();
        let d = x.dual().unwrap();
        let (a, b) = (ev.eval_index(&x, 1e-12).unwrap(), ev.eval_index(&d, 1e-12).unwrap());
        prop_assert!(a.abs_diff(&b) <= a.error_bound + b.error_bound, "{} vs {}", x, d);
        prop_assert_eq!(d.dual().unwrap(), x);
    }

    #[test]
    fn evaluation_is_linear(x in signed_index(3, 6), y in signed_index(3, 6), a in -5i64..=5, b in 1u64..=4) {
        let ev = Evaluator::new();
        let c = ratio(a, b);
        let mut s = FormalSum::zero();
        s.push(c.clone(), x.clone());
        s.push(ratio(1, 1), y.clone());
        let whole = ev.eval_sum(&s, 1e-12).unwrap();
        let (vx, vy) = (ev.eval_index(&x, 1e-14).unwrap(), ev.eval_index(&y, 1e-14).unwrap());
        let expected = c.to_f64_fast() * vx.to_f64() + vy.to_f64();
        prop_assert!((whole.to_f64() - expected).abs() <= whole.error_bound + 1e-13);
    }

    #[test]
    fn loose_and_tight_results_are_consistent(x in signed_index(4, 9)) {
        let loose = Evaluator::new().eval_index(&x, 1e-6).unwrap();
        let tight = Evaluator::new().eval_index(&x, 1e-12).unwrap();
        prop_assert!(loose.error_bound <= 1e-6 && tight.error_bound <= 1e-12);
        prop_assert!(loose.abs_diff(&tight) <= loose.error_bound + tight.error_bound);
    }

    #[test]
    fn larger_budget_never_loses_a_result(x in signed_index(3, 7), small in 8usize..64) {
        let eval_with = |terms: usize| {
            Evaluator::new()
                .config(EvalConfig { max_series_terms: terms, ..EvalConfig::default() })
                .eval_index(&x, 1e-12)
        };
        match eval_with(small) {
            Ok(r) => {
                let big = eval_with(small * 4).unwrap();
                prop_assert!(r.abs_diff(&big) <= r.error_bound + big.error_bound);
            }
            Err(EvalError::PrecisionUnreachable(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn convolution_agrees_with_direct_summation(x in signed_index(3, 6)) {
        let slow = direct::evaluate(&x, 1e-4, 50_000_000).unwrap();
        let fast = Evaluator::new().eval_index(&x, 1e-12).unwrap();
        prop_assert!(slow.abs_diff(&fast) <= slow.error_bound + fast.error_bound, "{}", x);
    }
}
