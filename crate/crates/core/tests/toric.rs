use num_rational::BigRational;

use ratcurves::moebius::{class_identity, mu0};
use ratcurves::toric::{catalog, Fan, ToricVariety};
use ratcurves::{Error, LPoly};

const NAMES: [&str; 11] = ["P1", "P2", "P3", "P4", "P1xP1", "BlP2", "Fa(0)", "Fa(1)", "Fa(2)", "Fa(5)", "dP6"];

fn var(name: &str) -> ToricVariety {
    ToricVariety::from_catalog(name).unwrap()
}

#[test]
fn rank_identity_and_exactness() {
    for name in NAMES {
        let x = var(name);
        let fan = x.fan();
        assert_eq!(x.num_rays(), x.dim() + x.pic_rank(), "{name}");
        // characters map to zero in Pic
        for c in 0..x.dim() {
            let a: Vec<i64> = fan.rays.iter().map(|r| r[c]).collect();
            assert!(x.pic_coords(&a).iter().all(|&v| v == 0), "{name} character {c}");
        }
        // the divisors off σ₀ form a basis
        for (k, &j) in x.pic_basis().iter().enumerate() {
            let mut e = vec![0; x.num_rays()];
            e[j] = 1;
            let coords = x.pic_coords(&e);
            let expected: Vec<i64> = (0..x.pic_rank()).map(|i| i64::from(i == k)).collect();
            assert_eq!(coords, expected, "{name}");
            assert!(!fan.max_cones[x.basis_cone()].contains(&j));
        }
        // σ₀ is the lexicographically first maximal cone
        assert_eq!(&fan.max_cones[x.basis_cone()], fan.max_cones.iter().min().unwrap());
    }
}

#[test]
fn spec_picard_examples() {
    let p2 = var("P2");
    assert_eq!(p2.divisor_classes(), vec![vec![1]; 3]);
    assert_eq!(p2.anticanonical(), vec![3]);
    assert_eq!(var("P1").anticanonical(), vec![2]);
    assert_eq!(var("P1xP1").anticanonical(), vec![2, 2]);
    let bl = var("BlP2");
    let rays = &bl.fan().rays;
    assert_eq!(rays[3], vec![rays[0][0] + rays[1][0], rays[0][1] + rays[1][1]]);
    assert_eq!(rays[2], vec![-rays[3][0], -rays[3][1]]);
    let omega = bl.anticanonical();
    for y in [[0, 0, 1, 1], [1, 1, 1, 0], [2, 2, 5, 3]] {
        assert_eq!(bl.pairing(&y, &omega), y.iter().sum::<i64>());
    }
}

#[test]
fn primitive_collection_examples() {
    assert_eq!(var("P2").primitive_collections(), vec![vec![0, 1, 2]]);
    assert_eq!(var("BlP2").primitive_collections(), vec![vec![0, 1], vec![2, 3]]);
    assert_eq!(var("P1xP1").primitive_collections(), vec![vec![0, 2], vec![1, 3]]);
}

#[test]
fn primitive_collections_are_the_minimal_nonfaces() {
    for name in NAMES {
        let x = var(name);
        let k = x.num_rays();
        let cols = x.primitive_collections();
        for c in &cols {
            assert!(!x.is_face(c), "{name} {c:?}");
            for skip in 0..c.len() {
                let sub: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                assert!(x.is_face(&sub), "{name} {c:?}");
            }
        }
        for mask in 0u32..1 << k {
            let s: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
            let contains_one = cols.iter().any(|c| c.iter().all(|i| s.contains(i)));
            assert_eq!(!x.is_face(&s), contains_one, "{name} {s:?}");
        }
    }
}

#[test]
fn class_of_x_examples_and_point_counts() {
    let l = |t: &[(i64, i64)]| LPoly::from_int_terms(t);
    assert_eq!(var("P2").class_of_x(), l(&[(2, 1), (1, 1), (0, 1)]));
    assert_eq!(var("BlP2").class_of_x(), l(&[(2, 1), (1, 2), (0, 1)]));
    assert_eq!(var("P1").class_of_x(), l(&[(1, 1), (0, 1)]));
    for q in [2u64, 3, 4, 5] {
        let qq = q as u128;
        let expected = [
            ("P1", qq + 1),
            ("P2", qq * qq + qq + 1),
            ("P3", qq.pow(3) + qq * qq + qq + 1),
            ("P1xP1", (qq + 1).pow(2)),
            ("BlP2", (qq + 1).pow(2)),
            ("Fa(2)", (qq + 1).pow(2)),
            ("dP6", qq * qq + 4 * qq + 1),
        ];
        for (name, n) in expected {
            let x = var(name);
            assert_eq!(x.count_points(q), n, "{name} q {q}");
            assert_eq!(x.class_at(q as i64), BigRational::from_integer(n.into()), "{name} q {q}");
        }
    }
    for name in NAMES {
        let x = var(name);
        let (lhs, rhs) = class_identity(&x);
        assert_eq!(lhs, rhs, "{name}");
        assert_eq!(mu0(&x).nrays(), x.num_rays());
    }
}

fn box_scan(x: &ToricVariety, bundle: &[i64], d: i64) -> Vec<Vec<i64>> {
    let k = x.num_rays();
    let mut out = Vec::new();
    let mut y = vec![0i64; k];
    loop {
        if x.is_degree_class(&y) && x.pairing(&y, bundle) == d {
            out.push(y.clone());
        }
        let mut i = 0;
        loop {
            if i == k {
                out.sort();
                return out;
            }
            y[i] += 1;
            if y[i] <= d {
                break;
            }
            y[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn degree_classes_match_box_scan() {
    let p2 = var("P2");
    assert_eq!(p2.degree_classes_of_height(&[3], 3).unwrap(), vec![vec![1, 1, 1]]);
    let bl = var("BlP2");
    let omega = bl.anticanonical();
    assert_eq!(bl.degree_classes_of_height(&omega, 2).unwrap(), vec![vec![0, 0, 1, 1]]);
    assert_eq!(bl.degree_classes_of_height(&omega, 2).unwrap(), box_scan(&bl, &omega, 2));
    for name in NAMES {
        let x = var(name);
        let omega = x.anticanonical();
        assert_eq!(x.degree_classes_of_height(&omega, 0).unwrap(), vec![vec![0; x.num_rays()]]);
        let dmax = if x.num_rays() > 5 { 4 } else { 6 };
        for d in 1..=dmax {
            assert_eq!(x.degree_classes_of_height(&omega, d).unwrap(), box_scan(&x, &omega, d), "{name} d {d}");
        }
    }
    // another ample class on BlP2: 2H − E in the basis off σ₀
    let ample: Vec<i64> = bl.pic_coords(&[0, 0, 2, 1]);
    for d in 0..=6 {
        assert_eq!(bl.degree_classes_of_height(&ample, d).unwrap(), box_scan(&bl, &ample, d), "d {d}");
    }
    assert!(matches!(bl.degree_classes_of_height(&bl.divisor_classes()[3], 1), Err(Error::NotBig(_))));
}

#[test]
fn catalog_shapes() {
    let p2 = catalog("P2").unwrap();
    assert_eq!((p2.rays.len(), p2.max_cones.len()), (3, 3));
    let bl = catalog("BlP2").unwrap();
    assert_eq!((bl.rays.len(), bl.max_cones.len()), (4, 4));
    let mut cones = bl.max_cones.clone();
    cones.sort();
    assert_eq!(cones, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
    let pp = catalog("P1xP1").unwrap();
    assert_eq!(pp.rays.len(), 4);
    for r in &pp.rays {
        assert_eq!(r.iter().map(|v| v.abs()).sum::<i64>(), 1);
    }
    assert_eq!(catalog("F2").unwrap(), catalog("Fa(2)").unwrap());
}

#[test]
fn validation_reports_the_failing_check() {
    let overlapping = Fan::new("x", vec![vec![1, 0], vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![0, 2]]);
    let err = overlapping.validate().unwrap_err();
    assert!(matches!(err, Error::InvalidFan { check: "intersection", .. }), "{err}");
    let not_convex = Fan::new("x", vec![vec![1, 0], vec![-1, 0], vec![0, 1]], vec![vec![0, 1], vec![2]]);
    assert!(matches!(not_convex.validate(), Err(Error::InvalidFan { check: "strict convexity", .. })));
    let mixed = Fan::new("x", vec![vec![1, 0], vec![0, 1, 0]], vec![vec![0, 1]]);
    assert!(matches!(mixed.validate(), Err(Error::InvalidFan { check: "dimension", .. })));
    assert!(ToricVariety::from_fan(overlapping).is_err());
    let names: Vec<&str> = catalog("dP6").unwrap().checks().iter().map(|(n, _)| *n).collect();
    assert_eq!(names, ["dimension", "primitive", "strict convexity", "smoothness", "intersection", "completeness"]);
    for name in NAMES {
        assert!(catalog(name).unwrap().checks().iter().all(|(_, r)| r.is_ok()), "{name}");
    }
}

#[test]
fn display_summarizes() {
    assert_eq!(var("BlP2").to_string(), "BlP2 (dim 2, 4 rays, Picard rank 2)");
}
