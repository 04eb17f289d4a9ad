use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ratcurves::cox3::*;
use ratcurves::fq::BinaryForm;
use ratcurves::{Error, LPoly};

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn form(q: u64, c: &[u64]) -> BinaryForm {
    BinaryForm::new(q, c.to_vec())
}

fn ones(q: u64) -> Vec<BinaryForm> {
    vec![BinaryForm::constant(q, 1); 7]
}

#[test]
fn degree_map_and_relation_homogeneity() {
    for d in [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [2, 1, 3, 0], [1, 2, 3, 4]] {
        let y = full_degree(&d);
        assert!(y.iter().all(|&v| v >= 0));
        // x₁x₄, x₂x₅, x₃x₆ all have degree d₀+d₁+d₂+d₃
        for i in 1..4 {
            assert_eq!(y[i] + y[i + 3], relation_degree(&d));
        }
        assert_eq!(omega_pairing(&d), 3 * d[0] + 2 * (d[1] + d[2] + d[3]));
        // the anticanonical class is Σ Dᵢ minus the relation degree
        assert_eq!(omega_pairing(&d), y.iter().sum::<i64>() - relation_degree(&d));
    }
}

#[test]
fn mu0_from_incidences() {
    let mu = mu0_cox3();
    assert_eq!(mu, mu0_cox3_from_incidences());
    assert_eq!(mu.nrays(), 7);
    for n in 0..1u32 << 7 {
        if n.count_ones() == 1 {
            assert_eq!(mu.at_mask(n), 0);
        }
        let mut partial = 0;
        let mut sub = n;
        loop {
            partial += mu.at_mask(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & n;
        }
        assert_eq!(partial, i64::from(meets(n)), "{n:07b}");
    }
    assert_eq!(mu.at_mask(0), 1);
    assert_eq!(mu.at_mask(0b0010001), -1);
    assert!(meets(0b1110000));
    assert!(!meets(0b0000110));
}

#[test]
fn constant_maps_land_in_the_open_part() {
    // U is P² minus the line and three concurrent lines: (q−1)(q−2) points
    for q in [2u64, 3, 5, 7] {
        assert_eq!(bruteforce_count_cox3(&[0, 0, 0, 0], q).unwrap(), int(((q - 1) * (q - 2)) as i64), "q {q}");
    }
}

#[test]
fn normalized_and_unnormalized_enumerations_agree() {
    for (d, q) in [([0, 0, 0, 0], 3u64), ([1, 0, 0, 0], 2), ([0, 1, 0, 0], 3), ([0, 0, 0, 1], 2), ([0, 0, 1, 0], 3)] {
        assert_eq!(
            bruteforce_count_cox3(&d, q).unwrap(),
            bruteforce_count_cox3_unnormalized(&d, q).unwrap(),
            "d {d:?} q {q}"
        );
    }
}

#[test]
fn degree_law_for_small_degrees() {
    for d in [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]] {
        let poly = counting_polynomial(&d, &INTERPOLATION_PRIMES).unwrap();
        assert!(poly.is_integral() && poly.is_polynomial(), "{d:?}: {poly}");
        assert_eq!(poly.top_exponent(), Some(expected_dim(&d)), "{d:?}: {poly}");
        assert_eq!(poly.leading_coeff(), Some(&rat(1, 1)), "{d:?}: {poly}");
    }
    // the three exceptional directions are permuted by the symmetry of the configuration
    let p1 = counting_polynomial(&[0, 1, 0, 0], &INTERPOLATION_PRIMES).unwrap();
    assert_eq!(p1, counting_polynomial(&[0, 0, 1, 0], &INTERPOLATION_PRIMES).unwrap());
    assert_eq!(p1, counting_polynomial(&[0, 0, 0, 1], &INTERPOLATION_PRIMES).unwrap());
    assert_eq!(counting_polynomial(&[0, 0, 0, 0], &INTERPOLATION_PRIMES).unwrap(), LPoly::from_int_terms(&[(2, 1), (1, -3), (0, 2)]));
}

#[test]
fn count_report_row() {
    let r = count_report_cox3(&[0, 0, 0, 0], 3, true).unwrap();
    assert_eq!(r.tsv_row(), "0,0,0,0,0,0,0\t3\t2\t2\t1\t2:1 1:-3 0:2");
    assert!(bruteforce_count_cox3(&[-1, 0, 0, 0], 2).is_err());
}

#[test]
fn syzygy_dimension_examples() {
    let q = 3;
    let one = BinaryForm::constant(q, 1);
    assert_eq!(lemma312_dim(&[0, 0, 0], 2, &[&one, &one, &one]).unwrap(), 6);
    assert_eq!(syzygy_nullity(2, &[&one, &one, &one]), 6);
    let u = form(q, &[0, 1]);
    let v = form(q, &[1, 0]);
    assert_eq!(lemma312_dim(&[1, 1, 0], 2, &[&u, &v, &one]).unwrap(), 4);
    assert_eq!(syzygy_nullity(2, &[&u, &v, &one]), 4);
    assert_eq!(lemma312_dim(&[1, 1, 1], 2, &[&u, &u, &u]).unwrap(), 4);
    assert_eq!(syzygy_nullity(2, &[&u, &u, &u]), 4);
    // e₁ + e₂ > D is outside the lemma
    let uu = u.mul(&u);
    assert!(matches!(lemma312_dim(&[2, 1, 0], 2, &[&uu, &u, &one]), Err(Error::Precondition(_))));
    assert!(matches!(lemma312_dim(&[1, 1, 0], 2, &[&u, &one, &one]), Err(Error::Precondition(_))));
}

fn random_form(rng: &mut StdRng, q: u64, deg: u32) -> BinaryForm {
    loop {
        let f = BinaryForm::new(q, (0..=deg).map(|_| rng.gen_range(0..q)).collect());
        if !f.is_zero() {
            return f;
        }
    }
}

// random gcds are usually trivial, so half the instances share a planted factor
fn random_instance(rng: &mut StdRng, q: u64) -> (u32, [u32; 3], [BinaryForm; 3]) {
    let big_d = rng.gen_range(1..=6u32);
    let e: [u32; 3] = loop {
        let e = [0; 3].map(|_| rng.gen_range(0..=big_d));
        if e[0] + e[1] <= big_d && e[0] + e[2] <= big_d && e[1] + e[2] <= big_d {
            break e;
        }
    };
    let min_e = *e.iter().min().unwrap();
    let common_deg = if min_e > 0 && rng.gen_bool(0.5) { rng.gen_range(1..=min_e) } else { 0 };
    let common = random_form(rng, q, common_deg);
    let r = e.map(|ei| common.mul(&random_form(rng, q, ei - common_deg)));
    (big_d, e, r)
}

#[test]
fn syzygy_dimension_matches_nullity_on_random_instances() {
    let mut rng = StdRng::seed_from_u64(312);
    let mut nontrivial_gcd = 0;
    for k in 0..240 {
        let q = if k % 2 == 0 { 3 } else { 5 };
        let (big_d, e, r) = random_instance(&mut rng, q);
        let refs = [&r[0], &r[1], &r[2]];
        let formula = lemma312_dim(&e, big_d, &refs).unwrap();
        if ratcurves::fq::gcd_degree(&refs) > 0 {
            nontrivial_gcd += 1;
        }
        assert_eq!(formula, syzygy_nullity(big_d, &refs) as i64, "q {q} D {big_d} R {r:?}");
    }
    assert!(nontrivial_gcd >= 20, "only {nontrivial_gcd} instances with a common factor");
}

#[test]
fn nx_formula_matches_bruteforce() {
    let q = 2;
    let u = form(q, &[0, 1]);
    let v = form(q, &[1, 0]);
    let w = form(q, &[1, 1]);
    let mut cases: Vec<([i64; 4], Vec<BinaryForm>)> = Vec::new();
    for d in [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [1, 1, 0, 0], [0, 1, 1, 0]] {
        cases.push((d, ones(q)));
    }
    let mut shifted = ones(q);
    shifted[4] = u.clone();
    cases.push(([1, 0, 0, 0], shifted.clone()));
    cases.push(([1, 1, 0, 0], shifted.clone()));
    shifted[1] = w.clone();
    cases.push(([1, 1, 0, 0], shifted));
    let mut shared = ones(q);
    shared[1] = u.clone();
    shared[2] = u.clone();
    shared[3] = v.clone();
    cases.push(([0, 1, 1, 1], shared));
    for (d, qf) in &cases {
        let formula = nx_formula(d, qf, q).unwrap();
        assert_eq!(formula, nx_bruteforce(d, qf, q).unwrap(), "d {d:?} Q {qf:?}");
    }
}

#[test]
fn nx_formula_exponent_and_refusal() {
    let q = 2;
    // d = 0: P₀..P₃ are nonzero constants and (P₄,P₅,P₆) a plane in F_q³
    assert_eq!(nx_formula(&[0, 0, 0, 0], &ones(q), q).unwrap(), int(4));
    assert_eq!(nx_bruteforce(&[0, 0, 0, 0], &ones(q), q).unwrap(), int(4));
    let q3 = 3;
    assert_eq!(nx_formula(&[0, 0, 0, 0], &ones(q3), q3).unwrap(), int(16 * 9));
    // a degree-one point on D₄ lowers the exponent by one
    let mut shifted = ones(q);
    shifted[4] = form(q, &[0, 1]);
    let full = nx_formula(&[1, 0, 0, 0], &ones(q), q).unwrap();
    let cut = nx_formula(&[1, 0, 0, 0], &shifted, q).unwrap();
    assert_eq!(full, cut * 2);
    // deg Q₄ + deg Q₅ = 2 > d₀ + d₃ = 1
    let mut bad = ones(q);
    bad[4] = form(q, &[0, 1]);
    bad[5] = form(q, &[0, 1]);
    assert!(matches!(nx_formula(&[1, 0, 0, 0], &bad, q), Err(Error::Precondition(_))));
    // a negative shifted degree leaves nothing to count
    let mut big = ones(q);
    big[1] = form(q, &[0, 1]);
    assert_eq!(nx_bruteforce(&[0, 0, 0, 0], &big, q).unwrap(), int(0));
}

#[test]
fn gcd_identity() {
    let check = gcd_identity_check(8).unwrap();
    assert!(check.holds, "{:?}", check.witness);
    let direct = gcd_series_direct(8);
    assert_eq!(direct.coeff(&[0, 0, 1, 1, 1]), int(0));
    assert_eq!(direct.coeff(&[1, 0, 1, 1, 1]), int(1));
    // θ = 1 collapses the weights: every exponent of t has coefficient 1
    for n in ratcurves::moebius::exponents_up_to(4, 5) {
        let mut total = int(0);
        for (e, c) in direct.terms() {
            if e[1..] == n[..] {
                total += c;
            }
        }
        assert_eq!(total, int(1), "{n:?}");
    }
    assert!(gcd_identity_check(1).is_err());
}

#[test]
fn local_factor_closed_form_matches_summation() {
    let zero = [0u8; 7];
    let f0 = local_factor(&zero);
    // n = 0 is the gcd identity with all tᵢ = u
    let expected = ratcurves::cox3::BiPoly::monomial(0, 0, 1).sub(&ratcurves::cox3::BiPoly::monomial(0, 3, 1));
    assert_eq!(f0.num, expected);
    for mask in 0..1u32 << 7 {
        let n: [u8; 7] = std::array::from_fn(|i| u8::from(mask & (1 << i) != 0));
        let f = local_factor(&n);
        // θ = 1 gives 1/(1−u)⁴
        assert_eq!(f.num.at_theta_one(), LPoly::from_int_terms(&[(0, 1), (3, -1)]), "{n:?}");
        assert!(f.series(8).unwrap() == local_factor_direct(&n, 8), "{n:?}");
    }
}

#[test]
fn local_tamagawa_identity() {
    let check = tamagawa_local_identity();
    assert!(check.holds(), "difference {}", check.difference);
    let two = rat(2, 1);
    assert_eq!(check.lhs_at(&two).unwrap(), rat(13, 64));
    assert_eq!(check.rhs_at(&two).unwrap(), rat(13, 64));
    // both sides tend to 1 as s grows
    let big = rat(1_000_000, 1);
    let gap = check.lhs_at(&big).unwrap() - rat(1, 1);
    assert!(gap.abs() < rat(1, 10_000));
    assert_eq!(check.lhs.top_exponent(), Some(0));
}

#[test]
fn torsor_identity() {
    for q in [2u64, 3] {
        let c = torsor_identity_check(q).unwrap();
        assert!(c.holds(), "q {q}: {} vs {}", c.lhs, c.rhs);
        let expected = (q - 1).pow(4) * (1 + 4 * q + q * q);
        assert_eq!(c.torsor_points, expected, "q {q}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn syzygy_dimension_on_arbitrary_seeds(seed in any::<u64>(), five in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let q = if five { 5 } else { 3 };
        let (big_d, e, r) = random_instance(&mut rng, q);
        let refs = [&r[0], &r[1], &r[2]];
        prop_assert_eq!(lemma312_dim(&e, big_d, &refs).unwrap(), syzygy_nullity(big_d, &refs) as i64);
    }
}
