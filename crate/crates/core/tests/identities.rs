use std::f64::consts::{LN_2, PI};

use mzv_core::identities::*;
use mzv_core::rational::{binom, int, ratio};
use mzv_core::verify::check_instance;
use mzv_core::{Evaluator, FormalSum, SignedIndex};

const ZETA3: f64 = 1.2020569031595942;
const ZETA5: f64 = 1.036_927_755_143_37;

fn zeta4() -> f64 {
    PI.powi(4) / 90.0
}

fn value(s: &FormalSum) -> f64 {
    let r = Evaluator::new().eval_sum(s, 1e-13).unwrap();
    assert!(r.error_bound <= 1e-13);
    r.to_f64()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + b.abs())
}

fn z(parts: &[i64]) -> SignedIndex {
    SignedIndex::alt(parts)
}

fn one(idx: SignedIndex) -> FormalSum {
    FormalSum::single(idx).unwrap()
}

#[test]
fn weight_examples() {
    assert_eq!(weight_w(&[1, 2], 0, 0, 0).unwrap(), int(1));
    assert_eq!(weight_w(&[2, 1], 0, 0, 0).unwrap(), int(0));
    assert!(weight_w(&[2, 1], 1, 0, 0).is_err());
}

#[test]
fn classical_reductions() {
    assert!(close(value(&one(z(&[1, 3]))), PI.powi(4) / 360.0));
    assert!(close(value(&one(z(&[2, 2]))), PI.powi(4) / 120.0));
    assert!(close(value(&one(z(&[1, 2]))), ZETA3));
    assert!(close(value(&one(z(&[-1]))), -LN_2));
    assert!(close(value(&one(z(&[-2]))), -PI * PI / 12.0));
    // ζ(1̄)² = 2 ζ(1, 1̄)
    assert!(close(value(&one(z(&[1, -1]))), LN_2 * LN_2 / 2.0));
}

#[test]
fn height_one_sums() {
    assert_eq!(z_minus(0), one(z(&[2])));
    assert!(value(&z_minus(1)).abs() < 1e-13);
    assert!(close(value(&z_star_plus(1)), 3.0 * ZETA3));
    assert_eq!(z_minus_closed(2).coefficient(&z(&[4])), ratio(7, 4));
    assert!(z_minus_closed(3).is_empty());
    assert_eq!(z_star_plus_closed(0), one(z(&[2])));
    let lm = le_murakami_pair(1).unwrap();
    assert!(close(value(&lm.lhs.sum), -PI * PI / 6.0) && close(value(&lm.rhs.sum), -PI * PI / 6.0));
    assert_eq!(le_murakami_pair(2).unwrap().lhs.sum.len(), 3);
    let g = granville_pair(1, 1);
    assert!(close(value(&g.lhs.sum), zeta4()));
}

#[test]
fn j_closed_forms() {
    let t0 = j_total_closed(0);
    assert_eq!(t0, FormalSum::from_terms([(ratio(5, 2), z(&[4]))]).unwrap());
    assert_eq!(j_total_closed(1).coefficient(&z(&[3, -2])), int(-4));
    assert_eq!(j_total_closed(2).coefficient(&z(&[4, -2])), int(0));
    assert_eq!(j1_closed(0).coefficient(&z(&[4])), ratio(3, 4));
    assert_eq!(j2_closed(0).coefficient(&z(&[4])), ratio(3, 4));
    assert_eq!(j1_closed(1).coefficient(&z(&[5])), ratio(5, 2));
    assert!(close(value(&j_part(2, 0).unwrap()), 0.75 * zeta4()));
    assert!(close(value(&j1_closed(1)), 2.5 * ZETA5));
}

#[test]
fn main_theorem_base_case_and_counts() {
    let inst = main_theorem(0);
    assert_eq!(inst.rhs.sum, FormalSum::from_terms([(int(4), z(&[1, 3]))]).unwrap());
    let r = check_instance(&Evaluator::new(), &inst, 1e-12);
    assert!(r.pass && r.residual.unwrap() <= 1e-12);
    for p in 0..=6u32 {
        let (_, counts) = main_theorem_rhs(p);
        let expected: f64 = (0..=p).map(|m| binom((p + 2).into(), (m + 1).into()).to_f64_fast()).sum();
        assert_eq!(counts.considered as f64, expected, "p={p}");
        assert!(counts.surviving <= counts.considered);
    }
    assert_eq!(main_theorem_rhs(0).1.surviving, 1);
}

#[test]
fn star_sums() {
    assert!(close(value(&star_double_sum_pair(0).unwrap().lhs.sum), 1.75 * zeta4()));
    assert!(close(value(&sec6_star_height1(1).lhs.sum), 2.0 * ZETA3));
    assert!(close(value(&star_height1_dual_sum(0, 0).lhs.sum), 3.0 * zeta4()));
    // 4 ζ★(1,3) + 2 ζ★(2,2) = (1 + 4 + 3/2 + 2) ζ(4)
    assert!(close(value(&unknown_weighted_sum(0, 0)), 8.5 * zeta4()));
    assert_eq!(t_mn(0, 0), one(z(&[1, 3])));
}

#[test]
fn double_zeta_base_case() {
    let inst = sec6_pair(0);
    let lhs = value(&inst.lhs.sum);
    let z2 = PI * PI / 6.0;
    assert!(close(lhs, z2 * z2 - zeta4()));
}

#[test]
fn euler_examples() {
    let ev = Evaluator::new();
    let pass = |inst: IdentityInstance| {
        let r = check_instance(&ev, &inst, 1e-11);
        assert!(r.pass, "{} {}: {:?}", inst.id, inst.params, r.residual);
    };
    for p in 0..=4 {
        pass(euler_family(p, 0, &int(1)).unwrap());
        pass(euler_special(EulerSpecial::Lambda1Q0, p, 0, &int(0)).unwrap());
    }
    pass(euler_special(EulerSpecial::LambdaM1Q0, 4, 0, &int(0)).unwrap());
    pass(euler_special(EulerSpecial::Lambda0Q1, 3, 1, &int(0)).unwrap());
    pass(euler_special(EulerSpecial::Teo, 2, 0, &int(0)).unwrap());
    pass(euler_special(EulerSpecial::Weighted2n, 1, 0, &int(0)).unwrap());
    let fin = euler_special(EulerSpecial::Final, 1, 0, &int(0)).unwrap();
    assert_eq!(fin.lhs.sum, one(z(&[3])));
    pass(fin);
    assert!(euler_family(2, 3, &int(0)).is_err());
}

#[test]
fn bell_zeta_values() {
    let plain = bell_zeta_pair(2, false).unwrap();
    assert!(close(value(&plain.lhs.sum), PI.powi(4) / 120.0));
    let star = bell_zeta_pair(2, true).unwrap();
    assert!(close(value(&star.lhs.sum), 1.75 * zeta4()));
}

#[test]
fn zeta_star_three_twos() {
    let inst = zeta_star_3_2n_pair(1);
    let v = value(&inst.lhs.sum);
    assert!(close(v, value(&inst.rhs.sum)));
    // ζ★(3,2) = ζ(3,2) + ζ(5) > ζ(5)
    assert!(v > ZETA5);
}
