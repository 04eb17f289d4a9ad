use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use ratcurves::census::*;
use ratcurves::toric::ToricVariety;
use ratcurves::{LPoly, VirtualDim};

fn var(name: &str) -> ToricVariety {
    ToricVariety::from_catalog(name).unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ri(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn qpow(q: u64, e: i64) -> BigRational {
    let b = ri(q as i64);
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

/// Every multidegree with `⟨y, ω⟩ <= hmax`.
fn degrees_up_to(x: &ToricVariety, hmax: i64) -> Vec<Vec<i64>> {
    let omega = x.anticanonical();
    (0..=hmax).flat_map(|d| x.degree_classes_of_height(&omega, d).unwrap()).collect()
}

#[test]
fn closed_form_examples() {
    let p1 = var("P1");
    let p2 = var("P2");
    let count = |x: &ToricVariety, y: &[i64], q: u64| {
        count_closed_form(x, y, q, &MuSeries::fq(x, q, y.iter().sum::<i64>() as u32).unwrap()).unwrap()
    };
    assert_eq!(count(&p1, &[1, 1], 2), BigInt::from(6));
    assert_eq!(count(&p1, &[2, 2], 2), BigInt::from(24));
    assert_eq!(count(&p2, &[1, 1, 1], 2), BigInt::from(24));
    for name in ["P1", "P2", "BlP2", "dP6"] {
        let x = var(name);
        let zero = vec![0; x.num_rays()];
        for q in [2u64, 3] {
            let expected = BigInt::from(q - 1).pow(x.dim() as u32);
            assert_eq!(count(&x, &zero, q), expected);
            assert_eq!(bruteforce_count(&x, &zero, q).unwrap(), expected);
        }
    }
    // not in Pic^∨, or not effective
    assert_eq!(count(&p2, &[1, 1, 0], 2), BigInt::zero());
    assert_eq!(bruteforce_count(&p2, &[1, 0, 0], 2).unwrap(), BigInt::zero());
}

#[test]
fn bruteforce_examples() {
    assert_eq!(bruteforce_count(&var("P1"), &[1, 1], 2).unwrap(), BigInt::from(6));
    assert_eq!(bruteforce_count(&var("P1"), &[2, 2], 2).unwrap(), BigInt::from(24));
    assert_eq!(bruteforce_count(&var("P2"), &[1, 1, 1], 2).unwrap(), BigInt::from(24));
    assert!(matches!(
        bruteforce_count(&var("P2"), &[6, 6, 6], 3),
        Err(ratcurves::Error::Budget { .. })
    ));
}

#[test]
fn oracle_equivalence() {
    for name in ["P1", "P2", "P1xP1", "BlP2", "Fa(1)", "Fa(2)", "dP6"] {
        let x = var(name);
        for q in [2u64, 3] {
            let ys = degrees_up_to(&x, 4);
            assert!(!ys.is_empty());
            let mu = MuSeries::fq(&x, q, 12).unwrap();
            for y in ys {
                let closed = count_closed_form(&x, &y, q, &mu).unwrap();
                match bruteforce_count(&x, &y, q) {
                    Ok(b) => assert_eq!(closed, b, "{name} q {q} y {y:?}"),
                    Err(ratcurves::Error::Budget { .. }) => {}
                    Err(e) => panic!("{name} {y:?}: {e}"),
                }
            }
        }
    }
}

#[test]
fn blp2_exceptional_direction_matches_bruteforce() {
    let x = var("BlP2");
    let mu = MuSeries::fq(&x, 2, 8).unwrap();
    for y in [[0, 0, 1, 1], [0, 0, 2, 2], [1, 1, 2, 1]] {
        assert_eq!(count_closed_form(&x, &y, 2, &mu).unwrap(), bruteforce_count(&x, &y, 2).unwrap(), "{y:?}");
    }
}

#[test]
fn p1_classes() {
    let x = var("P1");
    let mu = MuSeries::motivic(&x, 20).unwrap();
    assert!(mu.complete);
    for d in 1..=8i64 {
        let c = motivic_class(&x, &[d, d], &mu).unwrap();
        assert_eq!(c, LPoly::from_int_terms(&[(2 * d + 1, 1), (2 * d - 1, -1)]), "d {d}");
    }
    assert_eq!(motivic_class(&x, &[0, 0], &mu).unwrap(), LPoly::from_int_terms(&[(1, 1), (0, -1)]));
}

#[test]
fn dimension_law_and_specialization() {
    for name in ["P1", "P2", "P1xP1", "BlP2", "Fa(2)", "dP6"] {
        let x = var(name);
        let omega = x.anticanonical();
        let mot = MuSeries::motivic(&x, 8).unwrap();
        let fqs: Vec<_> = [2u64, 3, 5, 7].iter().map(|&q| (q, MuSeries::fq(&x, q, 8).unwrap())).collect();
        for y in degrees_up_to(&x, 8) {
            let c = motivic_class(&x, &y, &mot).unwrap();
            let height = x.pairing(&y, &omega);
            assert_eq!(c.top_exponent(), Some(height + x.dim() as i64), "{name} {y:?}");
            assert!(c.leading_coeff().unwrap().is_one(), "{name} {y:?}");
            assert!(c.is_integral() && c.is_polynomial());
            for (q, mu) in &fqs {
                let n = count_closed_form(&x, &y, *q, mu).unwrap();
                assert_eq!(c.eval_int(*q as i64), BigRational::from_integer(n), "{name} {y:?} q {q}");
            }
        }
    }
}

#[test]
fn count_report_rows() {
    let x = var("P2");
    let rep = count_report(&x, &[1, 1, 1], 2, true).unwrap();
    assert_eq!(rep.count, BigInt::from(24));
    assert_eq!(rep.expected_dim, 5);
    assert_eq!(rep.class.as_ref().unwrap().eval_int(2), ri(24));
    assert_eq!(rep.tsv_row(), "1,1,1\t2\t24\t5\t1\t5:1 4:1 3:-3 2:-1 1:2");
    assert_eq!(CountReport::HEADER.split('\t').count(), rep.tsv_row().split('\t').count());
    let bare = count_report(&x, &[1, 1, 1], 3, false).unwrap();
    assert!(bare.tsv_row().ends_with("\t-\t-"));
}

#[test]
fn degree_zeta_rows() {
    let p1 = var("P1");
    let z = degree_zeta_fq(&p1, &p1.anticanonical(), 3, 8).unwrap();
    for (d, v) in &z.rows {
        assert_eq!(v.is_zero(), d % 2 == 1, "d {d}");
    }
    let p2 = var("P2");
    let z = degree_zeta_fq(&p2, &p2.anticanonical(), 2, 6).unwrap();
    assert_eq!(z.rows[&0], BigInt::one());
    assert_eq!(z.rows[&3], BigInt::from(24));
    assert_eq!(z.rows[&6], count_report(&p2, &[2, 2, 2], 2, false).unwrap().count);
    let x = var("BlP2");
    let zm = degree_zeta_mot(&x, &x.anticanonical(), 6).unwrap();
    let zf = degree_zeta_fq(&x, &x.anticanonical(), 5, 6).unwrap();
    for (d, c) in &zm.rows {
        assert_eq!(c.eval_int(5), BigRational::from_integer(zf.rows[d].clone()));
    }
    assert_eq!(zm.rows[&0], LPoly::from_int_terms(&[(2, 1), (1, -2), (0, 1)]));
    // a non-big class is rejected
    assert!(degree_zeta_fq(&x, &x.divisor_classes()[3], 2, 3).is_err());
}

#[test]
fn main_term_matches_enumeration() {
    for name in ["P1", "P2", "P1xP1", "BlP2", "Fa(1)", "dP6"] {
        let x = var(name);
        let omega = x.anticanonical();
        let main = main_term_counts(&x, &omega, 24).unwrap();
        for d in 0..=24 {
            let n = x.degree_classes_of_height(&omega, d).unwrap().len();
            assert_eq!(main[d as usize], BigInt::from(n), "{name} d {d}");
        }
    }
}

#[test]
fn c_fin_examples() {
    let x = var("BlP2");
    for q in [2u64, 3, 5, 7] {
        let c = c_fin(&x, q, 8).unwrap();
        assert!(c.is_exact());
        let one_minus = ri(1) - qpow(q, -2);
        assert_eq!(c.value, qpow(q, 2) * &one_minus * &one_minus, "q {q}");
    }
    let c = c_fin(&var("P1"), 2, 4).unwrap();
    assert!(c.is_exact());
    assert_eq!(c.value, r(3, 2));
    // P²: q²(1 − q⁻²)(1 − q⁻³) / (1 − q⁻¹)
    let c = c_fin(&var("P2"), 3, 12).unwrap();
    assert!(c.is_exact());
    assert_eq!(c.value, ri(9) * (ri(1) + r(1, 3)) * (ri(1) - r(1, 27)));
    // too short a truncation is not exact
    let c = c_fin(&var("BlP2"), 3, 3).unwrap();
    assert!(!c.is_exact());
    assert!(c.agrees_with(&c_fin(&var("BlP2"), 3, 8).unwrap()));
}

#[test]
fn euler_product_examples() {
    let p2 = var("P2");
    assert_eq!(euler_factor(&p2, 2, 1).unwrap(), r(7, 8));
    // the empty product leaves the normalizing factor q^dim (1 − q⁻¹)^{−rk}
    let (c0, _) = c_fin_euler(&p2, 2, 0).unwrap();
    assert!((c0.value - ri(8)).abs() <= c0.tail_bound);
    // three rational points, each contributing 7/8
    let (c1, _) = c_fin_euler(&p2, 2, 1).unwrap();
    assert!((c1.value - r(343, 64)).abs() < r(1, 1_000_000));
    for name in ["P2", "BlP2", "P1xP1"] {
        let x = var(name);
        let exact = c_fin(&x, 3, 12).unwrap();
        let (euler, truncation) = c_fin_euler(&x, 3, 12).unwrap();
        assert!(exact.is_exact() && truncation.is_some());
        assert!(exact.agrees_with(&euler), "{name}");
        assert!(euler.tail_bound < r(1, 10_000));
    }
    let (e, _) = c_fin_euler(&var("BlP2"), 3, 10).unwrap();
    assert!(e.agrees_with(&c_fin(&var("BlP2"), 3, 8).unwrap()));
}

#[test]
fn euler_product_agrees_with_truncated_sum_without_finite_support() {
    let x = var("dP6");
    assert!(finite_mu_support(&x).is_none());
    let partial = c_fin(&x, 3, 12).unwrap();
    assert!(!partial.is_exact());
    let (euler, _) = c_fin_euler(&x, 3, 12).unwrap();
    assert!(partial.agrees_with(&euler));
}

#[test]
fn c_mot_examples() {
    let x = var("BlP2");
    let c = c_mot(&x, -10).unwrap();
    assert!(c.is_exact());
    assert_eq!(c.known(), &LPoly::from_int_terms(&[(2, 1), (0, -2), (-2, 1)]));
    for q in [2u64, 3, 5] {
        assert_eq!(c.known().eval_int(q as i64), c_fin(&x, q, 8).unwrap().value, "q {q}");
    }
    let c = c_mot(&var("P1"), -10).unwrap();
    assert_eq!(c.known(), &LPoly::from_int_terms(&[(1, 1), (-1, -1)]));
    for name in ["P2", "P1xP1", "Fa(3)"] {
        let x = var(name);
        let c = c_mot(&x, -10).unwrap();
        assert!(c.is_exact(), "{name}");
        for q in [2u64, 3] {
            assert_eq!(c.known().eval_int(q as i64), c_fin(&x, q, 16).unwrap().value, "{name}");
        }
    }
}

#[test]
fn c_mot_without_finite_support_is_a_tail_series() {
    let x = var("dP6");
    let c = c_mot(&x, -2).unwrap();
    assert_eq!(c.precision(), Some(-2));
    assert_eq!(c.known().top_exponent(), Some(2));
    assert!(c.known().leading_coeff().unwrap().is_one());
    // consistent with the finer expansion
    let finer = c_mot(&x, -4).unwrap();
    assert_eq!(finer.truncate(-2), c);
}

#[test]
fn blp2_boundary_ray_limit() {
    let x = var("BlP2");
    for q in [2u64, 3] {
        let rep = convergence_report(&x, q, &[0, 0, 1, 1], 8).unwrap();
        assert!(!rep.is_interior());
        assert_eq!(rep.zero_set, vec![0, 1]);
        let expected = qpow(q, 2) * (ri(1) - qpow(q, -1)) * (ri(1) - qpow(q, -2));
        assert!(rep.limit.is_exact());
        assert_eq!(rep.limit.value, expected);
        assert_ne!(rep.limit.value, rep.c_fin.value);
        for (n, v) in &rep.rows[1..] {
            assert_eq!(v, &expected, "n {n}");
        }
    }
    let mot = convergence_report_mot(&x, &[0, 0, 1, 1], 6, -8).unwrap();
    assert_eq!(mot.limit.known(), &LPoly::from_int_terms(&[(2, 1), (1, -1), (0, -1), (-1, 1)]));
    for (n, gap) in &mot.gaps[1..] {
        assert_eq!(gap.clone().unwrap(), VirtualDim::NegInfinity, "n {n}");
    }
}

#[test]
fn blp2_interior_ray_limit() {
    let x = var("BlP2");
    let rep = convergence_report(&x, 2, &[1, 1, 2, 1], 10).unwrap();
    assert!(rep.is_interior());
    assert_eq!(rep.limit, rep.c_fin);
    // the pairwise-disjoint size-2 collections kill every correction term
    for (n, v) in &rep.rows {
        assert_eq!(v, &rep.limit.value, "n {n}");
    }
    let mot = convergence_report_mot(&x, &[1, 1, 2, 1], 10, -30).unwrap();
    assert_eq!(mot.limit, c_mot(&x, -30).unwrap());
    for (n, gap) in &mot.gaps {
        let VirtualDim::Finite(g) = gap.clone().unwrap() else { continue };
        assert!(g <= 2 - i64::from(*n) + 2, "n {n}: gap dim {g}");
    }
}

#[test]
fn p2_convergence_to_c_fin() {
    let x = var("P2");
    let rep = convergence_report(&x, 3, &[1, 1, 1], 12).unwrap();
    assert!(rep.is_interior() && rep.limit.is_exact());
    assert_eq!(rep.limit.value, r(104, 9));
    let gaps: Vec<BigRational> = rep.rows.iter().map(|(_, v)| (v - &rep.limit.value).abs()).collect();
    assert!(gaps.windows(2).skip(1).all(|w| w[1] < w[0] && !w[1].is_zero()), "{gaps:?}");
    let mot = convergence_report_mot(&x, &[1, 1, 1], 12, -40).unwrap();
    for (n, gap) in &mot.gaps {
        let g = gap.clone().unwrap().finite().unwrap();
        assert!(g <= 2 - i64::from(*n) + 2, "n {n}: gap dim {g}");
    }
}

#[test]
fn p1_convergence_is_monotone() {
    let x = var("P1");
    let rep = convergence_report(&x, 3, &[1, 1], 10).unwrap();
    assert_eq!(rep.limit.value, r(8, 3));
    for (n, v) in &rep.rows {
        // q^{−2n}(q^{2n+1} − q^{2n−1}) is already the limit
        assert_eq!(v, &rep.limit.value, "n {n}");
    }
    assert!(convergence_report(&x, 3, &[1, 0], 3).is_err());
}

#[test]
fn control_check_examples() {
    let q = 3i64;
    let rho = r(1, q);
    let c = r(5, 2);
    let flat: Vec<(i64, BigRational)> =
        (1..=30).map(|n| (n, &c * qpow(q as u64, n) * num_traits::pow(ri(n), 2))).collect();
    let rep = control_check(&flat, &rho, 3, 1);
    assert_eq!(rep.sup, c);
    assert!(rep.bounded && rep.tail_nonincreasing && rep.envelope_nonincreasing);
    let grow: Vec<(i64, BigRational)> =
        (1..=30).map(|n| (n, qpow(q as u64, n) * num_traits::pow(ri(n), 3))).collect();
    let rep = control_check(&grow, &rho, 3, 1);
    assert!(!rep.bounded);
    assert_eq!(rep.sup, ri(30));
}

#[test]
fn zeta_difference_is_controlled_for_p2_and_blp2() {
    let half = r(1, 2);
    for name in ["P2", "BlP2"] {
        let x = var(name);
        let diff = zeta_difference_fq(&x, 2, 40).unwrap();
        let window: Vec<_> = diff.into_iter().filter(|(d, _)| *d >= 10).collect();
        let rep = control_check(&window, &half, x.pic_rank() as u32 - 1, 6);
        assert!(rep.bounded && rep.envelope_nonincreasing, "{name}");
    }
}

#[test]
fn motivic_dim_check_blp2() {
    let x = var("BlP2");
    let rows = motivic_dim_check(&x, 16, -20).unwrap();
    // (L − 1)² − (L² − 2 + L⁻²)
    assert_eq!(rows[0].relative(), Some(VirtualDim::Finite(1)));
    for row in &rows {
        if row.d >= 2 {
            assert_eq!(row.row_dim, VirtualDim::Finite(row.d + 2));
        }
        if row.d >= 4 {
            let rel = row.relative().unwrap();
            assert!(rel <= VirtualDim::Finite(1), "d {}: {rel}", row.d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_blp2_degrees_match_bruteforce(a in 0i64..3, e in 0i64..3, q in prop::sample::select(vec![2u64, 3])) {
        let x = var("BlP2");
        let y = [a, a, a + e, e];
        let mu = MuSeries::fq(&x, q, 12).unwrap();
        match bruteforce_count(&x, &y, q) {
            Ok(b) => prop_assert_eq!(count_closed_form(&x, &y, q, &mu).unwrap(), b),
            Err(ratcurves::Error::Budget { .. }) => {}
            Err(err) => return Err(TestCaseError::fail(err.to_string())),
        }
    }

    #[test]
    fn closed_form_counts_are_nonnegative(a in 0i64..6, b in 0i64..6, q in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let x = var("P1xP1");
        let y = [a, b, a, b];
        let mu = MuSeries::fq(&x, q, 24).unwrap();
        prop_assert!(count_closed_form(&x, &y, q, &mu).unwrap() >= BigInt::zero());
    }
}
