use clap::ValueEnum;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ratcurves::census::{bruteforce_count, c_mot, count_closed_form, in_degree_cone, MuSeries};
use ratcurves::cox3;
use ratcurves::fq::BinaryForm;
use ratcurves::lattice::{cone_zeta, enumerate_level, specialize_zeta};
use ratcurves::moebius::{class_identity, mu0, mu0_closed_form, mu_motivic};
use ratcurves::motivic::{class_p1, hw_zeta_p1, verify_power_identity, EulerRoute};
use ratcurves::toric::ToricVariety;
use ratcurves::{Error, LPoly};

use crate::output::{csv, Table};
use crate::{Failure, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    ToricIdentities,
    Oracle,
    Motivic,
    Cone,
    Cox3,
}

pub struct Limits {
    pub max_height: i64,
    pub max_total_degree: u32,
}

const VARIETIES: [&str; 8] = ["P1", "P2", "P3", "P1xP1", "BlP2", "Fa(1)", "Fa(2)", "dP6"];

/// Check rows: `Ok(true)` pass, `Ok(false)` fail, `Err` skipped for budget or
/// an error that counts as a failure.
struct Report {
    table: Table,
    failures: usize,
}

impl Report {
    fn new() -> Self {
        Report { table: Table::new(&["check", "status", "detail"]), failures: 0 }
    }

    fn record(&mut self, check: String, outcome: Result<(bool, String), Error>) {
        let (status, detail) = match outcome {
            Ok((true, d)) => ("pass", d),
            Ok((false, d)) => {
                self.failures += 1;
                ("fail", d)
            }
            Err(Error::Budget { needed, .. }) => ("skipped", format!("budget: {needed} visits")),
            Err(e) => {
                self.failures += 1;
                ("fail", e.to_string())
            }
        };
        self.table.push(vec![check, status.into(), detail]);
    }
}

pub fn run(suite: Suite, limits: &Limits, json: bool) -> Outcome {
    let mut r = Report::new();
    match suite {
        Suite::ToricIdentities => toric_identities(&mut r),
        Suite::Oracle => oracle(&mut r, limits),
        Suite::Motivic => motivic(&mut r, limits),
        Suite::Cone => cone(&mut r, limits),
        Suite::Cox3 => cox3_suite(&mut r),
    }
    print!("{}", r.table.render(json));
    if r.failures > 0 {
        return Err(Failure::Check(format!("{} check(s) failed", r.failures)));
    }
    Ok(())
}

fn variety(name: &str) -> ToricVariety {
    ToricVariety::from_catalog(name).expect("catalog entries are valid")
}

fn toric_identities(r: &mut Report) {
    for name in VARIETIES {
        let x = variety(name);
        let (lhs, rhs) = class_identity(&x);
        r.record(format!("{name} Σμ⁰(n)L^(#I−|n|) = (L−1)^rk [X]"), Ok((lhs == rhs, format!("{lhs}"))));
        let mu = mu0(&x);
        r.record(format!("{name} μ⁰ closed form"), Ok((mu == mu0_closed_form(&x), String::new())));
        let k = x.num_rays();
        let partial_ok = (0..1u32 << k).all(|n| {
            let members: Vec<usize> = (0..k).filter(|i| n & (1 << i) != 0).collect();
            let mut partial = 0;
            let mut sub = n;
            loop {
                partial += mu.at_mask(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & n;
            }
            partial == i64::from(x.is_face(&members)) && (n.count_ones() != 1 || mu.at_mask(n) == 0)
        });
        r.record(format!("{name} μ⁰ partial sums are the face indicator"), Ok((partial_ok, String::new())));
        r.record(
            format!("{name} #I = dim + rk Pic"),
            Ok((k == x.dim() + x.pic_rank(), format!("{k} = {} + {}", x.dim(), x.pic_rank()))),
        );
    }
}

fn oracle(r: &mut Report, limits: &Limits) {
    for name in ["P1", "P2", "P1xP1", "BlP2"] {
        let x = variety(name);
        let omega = x.anticanonical();
        for q in [2u64, 3] {
            for h in 0..=limits.max_height {
                let ys = match x.degree_classes_of_height(&omega, h) {
                    Ok(ys) => ys,
                    Err(e) => {
                        r.record(format!("{name} q={q} height {h}"), Err(e));
                        continue;
                    }
                };
                for y in ys.into_iter().filter(|y| in_degree_cone(&x, y)) {
                    let outcome = (|| {
                        let total = y.iter().sum::<i64>().max(0) as u32;
                        let mu = MuSeries::fq(&x, q, total)?;
                        let closed = count_closed_form(&x, &y, q, &mu)?;
                        let brute = bruteforce_count(&x, &y, q)?;
                        Ok((closed == brute, format!("{closed} vs {brute}")))
                    })();
                    r.record(format!("{name} q={q} y={}", csv(&y)), outcome);
                }
            }
        }
    }
}

fn motivic(r: &mut Report, limits: &Limits) {
    let mismatch = verify_power_identity(&hw_zeta_p1(10), &class_p1());
    r.record(
        "P1 Hasse–Weil zeta = ∏(1−tⁿ)^(−Φₙ) to order 10".into(),
        mismatch.map(|m| (m.is_none(), m.map_or(String::new(), |m| format!("{:?}", m.exponent)))),
    );
    for name in ["P2", "BlP2", "P1xP1"] {
        let mu = mu0(&variety(name));
        let outcome = (|| {
            let a = mu_motivic(&mu, limits.max_total_degree, EulerRoute::ExpLog)?;
            let b = mu_motivic(&mu, limits.max_total_degree, EulerRoute::Binomial)?;
            Ok((a == b, String::new()))
        })();
        r.record(format!("{name} μ^mot exp/log route = binomial route"), outcome);
    }
    let expected = LPoly::from_int_terms(&[(2, 1), (0, -2), (-2, 1)]);
    r.record(
        "BlP2 c_mot = L² − 2 + L⁻²".into(),
        c_mot(&variety("BlP2"), -10).map(|c| (c.is_exact() && c.known() == &expected, c.to_string())),
    );
}

fn cone(r: &mut Report, limits: &Limits) {
    let dmax = (limits.max_height * 5).max(20);
    for name in ["P2", "P1xP1", "BlP2", "Fa(2)", "dP6"] {
        let x = variety(name);
        let omega = x.anticanonical();
        let outcome = (|| {
            let dual = x.effective_cone().dual()?;
            let coeffs = specialize_zeta(&cone_zeta(&dual), &omega)?.coefficients(dmax as usize);
            for d in 0..=dmax {
                let n = BigInt::from(enumerate_level(&dual, &omega, d)?.len());
                if n != coeffs[d as usize] {
                    return Ok((false, format!("d={d}: {} vs {n}", coeffs[d as usize])));
                }
            }
            Ok((true, format!("d ≤ {dmax}")))
        })();
        r.record(format!("{name} Eff^∨ zeta coefficients = lattice enumeration"), outcome);
    }
}

fn random_form(rng: &mut StdRng, q: u64, deg: u32) -> BinaryForm {
    loop {
        let f = BinaryForm::new(q, (0..=deg).map(|_| rng.gen_range(0..q)).collect());
        if !f.is_zero() {
            return f;
        }
    }
}

fn cox3_suite(r: &mut Report) {
    r.record(
        "generating identity for q^deg gcd to total degree 8".into(),
        cox3::gcd_identity_check(8).map(|c| (c.holds, c.witness.unwrap_or_default())),
    );
    let t = cox3::tamagawa_local_identity();
    r.record("local Tamagawa identity in s".into(), Ok((t.holds(), t.difference.to_string())));
    for q in [2u64, 3] {
        r.record(
            format!("torsor identity q={q}"),
            cox3::torsor_identity_check(q).map(|c| (c.holds(), format!("{} vs {}", c.lhs, c.rhs))),
        );
    }
    let mut rng = StdRng::seed_from_u64(312);
    let mut bad = Vec::new();
    for k in 0..100 {
        let q = if k % 2 == 0 { 3 } else { 5 };
        let big_d = rng.gen_range(1..=6u32);
        let e: [u32; 3] = loop {
            let e = [0; 3].map(|_| rng.gen_range(0..=big_d));
            if e[0] + e[1] <= big_d && e[0] + e[2] <= big_d && e[1] + e[2] <= big_d {
                break e;
            }
        };
        let forms = e.map(|ei| random_form(&mut rng, q, ei));
        let refs = [&forms[0], &forms[1], &forms[2]];
        match cox3::lemma312_dim(&e, big_d, &refs) {
            Ok(v) if v == cox3::syzygy_nullity(big_d, &refs) as i64 => {}
            other => bad.push(format!("q={q} D={big_d} e={e:?}: {other:?}")),
        }
    }
    r.record("dimension lemma on 100 random instances".into(), Ok((bad.is_empty(), bad.join("; "))));
    for q in [2u64, 3, 5] {
        r.record(
            format!("constant maps q={q}"),
            cox3::bruteforce_count_cox3(&[0, 0, 0, 0], q)
                .map(|n| (n == BigInt::from((q - 1) * (q - 2)), n.to_string())),
        );
    }
    for d in [[1, 0, 0, 0], [0, 1, 0, 0]] {
        let outcome = (|| {
            let a = cox3::bruteforce_count_cox3(&d, 2)?;
            let b = cox3::bruteforce_count_cox3_unnormalized(&d, 2)?;
            Ok((a == b, format!("{a} vs {b}")))
        })();
        r.record(format!("orbit normalization d={} q=2", csv(&d)), outcome);
    }
}
