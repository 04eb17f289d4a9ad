use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ratcurves::fq::BinaryForm;
use ratcurves::moebius::{
    bruteforce_mu_aggregate, class_identity, closed_points_p1, exponents_up_to, mask_of, mu0, mu0_closed_form,
    mu_aggregate_fq, mu_divisor, mu_motivic, mu_motivic_from_definition, DivisorTuple,
};
use ratcurves::motivic::{phi_n, class_p1, EulerRoute};
use ratcurves::toric::ToricVariety;
use ratcurves::{LPoly, VirtualDim};

const CATALOG: [&str; 9] = ["P1", "P2", "P3", "P1xP1", "BlP2", "Fa(1)", "Fa(2)", "Fa(3)", "dP6"];

fn lp(terms: &[(i64, i64)]) -> LPoly {
    LPoly::from_int_terms(terms)
}

#[test]
fn blp2_mu0_values() {
    let x = ToricVariety::from_catalog("BlP2").unwrap();
    let mu = mu0(&x);
    assert_eq!(mu.at(&[1, 1, 0, 0]), -1);
    assert_eq!(mu.at(&[0, 0, 1, 1]), -1);
    assert_eq!(mu.at(&[1, 1, 1, 1]), 1);
    for i in 0..4 {
        let mut n = [0u8; 4];
        n[i] = 1;
        assert_eq!(mu.at(&n), 0);
    }
    assert_eq!(mu.at(&[0, 0, 0, 0]), 1);
}

#[test]
fn mu0_properties_on_catalog() {
    for name in CATALOG {
        let x = ToricVariety::from_catalog(name).unwrap();
        let mu = mu0(&x);
        let k = x.num_rays();
        assert_eq!(mu, mu0_closed_form(&x), "{name}");
        for n in 0..1u32 << k {
            if n.count_ones() == 1 {
                assert_eq!(mu.at_mask(n), 0, "{name}");
            }
            // partial sums recover the face indicator
            let mut partial = 0;
            let mut sub = n;
            loop {
                partial += mu.at_mask(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & n;
            }
            let members: Vec<usize> = (0..k).filter(|i| n & (1 << i) != 0).collect();
            assert_eq!(partial, i64::from(x.is_face(&members)), "{name} at {n:b}");
        }
    }
}

#[test]
fn class_identity_on_catalog() {
    for name in CATALOG {
        let x = ToricVariety::from_catalog(name).unwrap();
        let (lhs, rhs) = class_identity(&x);
        assert_eq!(lhs, rhs, "{name}");
    }
}

#[test]
fn closed_point_counts_match_irreducible_enumeration() {
    for q in [2u64, 3, 5] {
        for m in 1..=4u32 {
            let mut expected = ratcurves::fq::monic_irreducibles(q, m as usize).len();
            if m == 1 {
                expected += 1; // the point at infinity
            }
            assert_eq!(closed_points_p1(q, m), BigInt::from(expected), "q {q} m {m}");
        }
    }
}

#[test]
fn p2_aggregate_at_q2() {
    let x = ToricVariety::from_catalog("P2").unwrap();
    let s = mu_aggregate_fq(&mu0(&x), 2, 9).unwrap();
    for d in exponents_up_to(3, 9) {
        let expected = match d.as_slice() {
            [0, 0, 0] => 1,
            [1, 1, 1] => -3,
            [2, 2, 2] => 2,
            _ => 0,
        };
        assert_eq!(s.coeff(&d), BigInt::from(expected), "d {d:?}");
    }
}

#[test]
fn blp2_aggregate_support() {
    let x = ToricVariety::from_catalog("BlP2").unwrap();
    let s = mu_aggregate_fq(&mu0(&x), 2, 8).unwrap();
    for (d, c) in s.terms() {
        assert!(d[0] == d[1] && d[2] == d[3], "nonzero {c} at {d:?}");
    }
}

#[test]
fn mu_divisor_examples() {
    let x = ToricVariety::from_catalog("P2").unwrap();
    let mu = mu0(&x);
    assert_eq!(mu_divisor(&mu, &DivisorTuple::zero(3)), 1);
    let p = BinaryForm::new(2, vec![1, 1]); // u + v
    let q = BinaryForm::new(2, vec![0, 1]); // u
    assert_eq!(mu_divisor(&mu, &DivisorTuple::from_forms(&[&p, &p, &p])), -1);
    assert_eq!(mu_divisor(&mu, &DivisorTuple::from_forms(&[&p, &q, &p])), 0);
    let pp = p.mul(&p);
    let one = BinaryForm::constant(2, 1);
    assert_eq!(mu_divisor(&mu, &DivisorTuple::from_forms(&[&pp, &one, &one])), 0);
    assert_eq!(DivisorTuple::from_forms(&[&pp, &q, &one]).degrees(), vec![2, 1, 0]);
}

#[test]
fn bruteforce_aggregate_matches_euler_product() {
    for (name, q, dmax) in [("P2", 2u64, 4u32), ("P2", 3, 3), ("BlP2", 2, 4), ("BlP2", 3, 3), ("P1xP1", 2, 4), ("P1", 3, 4)] {
        let x = ToricVariety::from_catalog(name).unwrap();
        let mu = mu0(&x);
        let s = mu_aggregate_fq(&mu, q, dmax).unwrap();
        for d in exponents_up_to(x.num_rays(), dmax) {
            assert_eq!(bruteforce_mu_aggregate(&mu, q, &d).unwrap(), s.coeff(&d), "{name} q {q} d {d:?}");
        }
    }
    let x = ToricVariety::from_catalog("BlP2").unwrap();
    assert_eq!(bruteforce_mu_aggregate(&mu0(&x), 2, &[1, 0, 0, 0]).unwrap(), BigInt::from(0));
}

#[test]
fn motivic_mu_p2_and_blp2() {
    let minus_1_l = lp(&[(0, -1), (1, -1)]);
    let x = ToricVariety::from_catalog("P2").unwrap();
    let s = mu_motivic(&mu0(&x), 9, EulerRoute::ExpLog).unwrap();
    for d in exponents_up_to(3, 9) {
        let expected = match d.as_slice() {
            [0, 0, 0] => LPoly::one(),
            [1, 1, 1] => minus_1_l.clone(),
            [2, 2, 2] => LPoly::l(),
            _ => LPoly::zero(),
        };
        assert_eq!(s.coeff(&d), expected, "P2 d {d:?}");
    }
    let x = ToricVariety::from_catalog("BlP2").unwrap();
    let s = mu_motivic(&mu0(&x), 8, EulerRoute::ExpLog).unwrap();
    assert_eq!(s.coeff(&[1, 1, 0, 0]), minus_1_l);
    assert_eq!(s.coeff(&[0, 0, 1, 1]), minus_1_l);
    assert_eq!(s.coeff(&[2, 2, 0, 0]), LPoly::l());
    assert_eq!(s.coeff(&[1, 1, 1, 1]), &minus_1_l * &minus_1_l);
}

#[test]
fn motivic_routes_and_specializations() {
    for name in ["P2", "BlP2", "P1xP1"] {
        let x = ToricVariety::from_catalog(name).unwrap();
        let mu = mu0(&x);
        let a = mu_motivic(&mu, 6, EulerRoute::ExpLog).unwrap();
        let b = mu_motivic(&mu, 6, EulerRoute::Binomial).unwrap();
        assert!(a == b, "{name}: routes differ");
        for q in [2u64, 3, 5, 7] {
            let fin = mu_aggregate_fq(&mu, q, 6).unwrap();
            for d in exponents_up_to(x.num_rays(), 6) {
                let c = a.coeff(&d);
                assert!(c.is_integral(), "{name} {d:?}");
                assert_eq!(c.eval_int(q as i64), BigRational::from_integer(fin.coeff(&d)), "{name} q {q} d {d:?}");
                let total: u32 = d.iter().sum();
                if let VirtualDim::Finite(v) = c.virtual_dim() {
                    assert!(2 * v <= i64::from(total), "{name} {d:?}: dim {v}");
                }
            }
        }
    }
}

#[test]
fn motivic_mu_from_definition_p2() {
    let x = ToricVariety::from_catalog("P2").unwrap();
    let def = mu_motivic_from_definition(&x, 3, &[2, 3, 5, 7, 11, 13]).unwrap();
    let euler = mu_motivic(&mu0(&x), 3, EulerRoute::ExpLog).unwrap();
    assert!(def == euler);
    assert!(mu_motivic_from_definition(&x, 3, &[2, 3]).is_err());
}

#[test]
fn phi_specializes_to_closed_points() {
    for q in [2i64, 3, 5] {
        for n in 1..=8u32 {
            let phi = phi_n(&class_p1(), n);
            assert_eq!(phi.eval_int(q), BigRational::from_integer(closed_points_p1(q as u64, n)), "q {q} n {n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mu0_routes_agree_on_random_complexes(
        facets in prop::collection::vec(prop::collection::btree_set(0usize..7, 1..4), 1..6)
    ) {
        // any simplicial complex on 7 vertices, given by its facets
        let faces: Vec<u32> = facets.iter().map(|f| mask_of(&f.iter().copied().collect::<Vec<_>>())).collect();
        let is_face = |m: u32| faces.iter().any(|f| m & !f == 0);
        let table = ratcurves::moebius::Mu0Table::from_faces(7, is_face);
        let minimal: Vec<u32> = (1..1u32 << 7)
            .filter(|&m| !is_face(m) && (0..7).all(|i| m & (1 << i) == 0 || is_face(m & !(1 << i))))
            .collect();
        let closed = ratcurves::moebius::Mu0Table::from_minimal_nonfaces(7, &minimal);
        prop_assert_eq!(table, closed);
    }
}
