use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use ratcurves::census::{
    c_fin, c_mot, count_report, degree_zeta_fq, degree_zeta_mot, finite_mu_support, in_degree_cone, main_term_counts,
    MuSeries,
};
use ratcurves::cox3::{count_report_cox3, full_degree};
use ratcurves::toric::{catalog as catalog_fan, ToricVariety, CATALOG_NAMES};
use ratcurves::{LPoly, TailSeries};

use crate::fanfile::FanFile;
use crate::output::{csv, Table};
use crate::{Failure, Outcome, Target};

fn emit(t: &Table, json: bool) {
    print!("{}", t.render(json));
}

fn parse_csv(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("not an integer list: {s:?}"))))
        .collect()
}

fn load_fan(target: &Target, path: Option<PathBuf>) -> Result<ratcurves::toric::Fan, Failure> {
    match (path.or_else(|| target.fan.clone()), &target.catalog) {
        (Some(p), None) => Ok(FanFile::read(&p).map_err(Failure::Usage)?.into_fan()),
        (None, Some(name)) => catalog_fan(name).map_err(|e| Failure::Usage(e.to_string())),
        (Some(_), Some(_)) => Err(Failure::Usage("give either a fan file or --catalog, not both".into())),
        (None, None) => Err(Failure::Usage("give a fan file (--fan) or --catalog".into())),
    }
}

fn load_variety(target: &Target) -> Result<ToricVariety, Failure> {
    Ok(ToricVariety::from_fan(load_fan(target, None)?)?)
}

pub fn validate(path: Option<PathBuf>, target: &Target, json: bool) -> Outcome {
    let fan = load_fan(target, path)?;
    let mut t = Table::new(&["check", "status", "detail"]);
    let mut failed = None;
    for (name, r) in fan.checks() {
        match r {
            Ok(()) => t.push(vec![name.into(), "ok".into(), String::new()]),
            Err(e) => {
                t.push(vec![name.into(), "failed".into(), e.to_string()]);
                failed = Some(e);
            }
        }
    }
    if failed.is_none() {
        let x = ToricVariety::from_fan(fan)?;
        t.push(vec!["variety".into(), "ok".into(), x.to_string()]);
    }
    emit(&t, json);
    match failed {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

/// Full vectors have one entry per ray; shorter ones are coordinates on the
/// Picard basis divisors.
fn parse_degree(x: &ToricVariety, s: &str) -> Result<Vec<i64>, Failure> {
    let v = parse_csv(s)?;
    let y = if v.len() == x.num_rays() {
        v
    } else if v.len() == x.pic_rank() {
        x.degree_class_from_dual_coords(&v)
    } else {
        return Err(Failure::Usage(format!(
            "degree needs {} entries (one per ray) or {} (Picard rank), got {}",
            x.num_rays(),
            x.pic_rank(),
            v.len()
        )));
    };
    if !x.is_degree_class(&y) {
        return Err(Failure::Check(format!("{} is not a degree class: Σ yᵢρᵢ ≠ 0", csv(&y))));
    }
    Ok(y)
}

pub fn count(target: &Target, degree: &str, q: u64, motivic: bool, json: bool) -> Outcome {
    let x = load_variety(target)?;
    let y = parse_degree(&x, degree)?;
    let report = count_report(&x, &y, q, motivic)?;
    if let Some(class) = &report.class {
        let at_q = class.eval_int(q as i64);
        if at_q != BigRational::from_integer(report.count.clone()) {
            return Err(Failure::Check(format!("class {class} gives {at_q} at q = {q}, count is {}", report.count)));
        }
    }
    let mut t = Table::new(&["y", "q", "count", "dim", "leading", "class", "flag"]);
    let mut row: Vec<String> = report.tsv_row().split('\t').map(String::from).collect();
    row.push(if in_degree_cone(&x, &y) { "ok" } else { "outside-eff-dual" }.into());
    t.push(row);
    emit(&t, json);
    Ok(())
}

pub struct ZetaOptions {
    pub q: Option<u64>,
    pub motivic: bool,
    pub max_height: i64,
    pub precision: i64,
    pub max_total_degree: u32,
}

fn approx(r: &BigRational) -> String {
    format!("{:.6e}", r.to_f64().unwrap_or(f64::NAN))
}

pub fn zeta(target: &Target, bundle: Option<&str>, o: &ZetaOptions, json: bool) -> Outcome {
    let x = load_variety(target)?;
    let omega = x.anticanonical();
    let bundle = match bundle {
        Some(b) => parse_csv(b)?,
        None => omega.clone(),
    };
    if bundle.len() != x.pic_rank() {
        return Err(Failure::Usage(format!("bundle needs {} Picard coordinates", x.pic_rank())));
    }
    let anticanonical = bundle == omega;
    let nmax = o.max_height;
    if o.motivic {
        let mut t = Table::new(&["d", "class", "main", "difference_dim"]);
        if nmax >= 0 {
            let zeta = degree_zeta_mot(&x, &bundle, nmax)?;
            let main = main_term_counts(&x, &bundle, nmax)?;
            let c = if anticanonical { Some(c_mot(&x, o.precision)?) } else { None };
            for (&d, row) in &zeta.rows {
                let (m, diff) = match &c {
                    Some(c) => {
                        let n_d = LPoly::constant(BigRational::from_integer(main[d as usize].clone())).shift(d);
                        let m = c * &TailSeries::exact(n_d);
                        let diff = (&TailSeries::exact(row.clone()) - &m)
                            .virtual_dim()
                            .map_or_else(|_| "unknown".to_string(), |v| v.to_string());
                        (m.to_string(), diff)
                    }
                    None => ("-".into(), "-".into()),
                };
                t.push(vec![d.to_string(), row.to_string(), m, diff]);
            }
        }
        emit(&t, json);
        return Ok(());
    }
    let q = o.q.ok_or_else(|| Failure::Usage("--q is required without --motivic".into()))?;
    let mut t = Table::new(&["d", "count", "main", "main_error_bound", "difference", "control", "control_approx"]);
    if nmax >= 0 {
        let zeta = degree_zeta_fq(&x, &bundle, q, nmax)?;
        let main = main_term_counts(&x, &bundle, nmax)?;
        let c = if anticanonical {
            Some(c_fin(&x, q, finite_mu_support(&x).unwrap_or(o.max_total_degree))?)
        } else {
            None
        };
        let qr = BigRational::from_integer(BigInt::from(q));
        for (&d, row) in &zeta.rows {
            let mut cells = vec![d.to_string(), row.to_string()];
            match &c {
                Some(c) => {
                    let scale = num_traits::pow(qr.clone(), d as usize) * BigRational::from_integer(main[d as usize].clone());
                    let m = &c.value * &scale;
                    let diff = BigRational::from_integer(row.clone()) - &m;
                    cells.push(m.to_string());
                    cells.push((&c.tail_bound * &scale).to_string());
                    cells.push(diff.to_string());
                    if d >= 1 {
                        // |a_d| d^{2−rk} q^{−d}
                        let e = 2 - x.pic_rank() as i64;
                        let dpow = num_traits::pow(BigRational::from_integer(d.into()), e.unsigned_abs() as usize);
                        let dpow = if e < 0 { dpow.recip() } else { dpow };
                        let stat = diff.abs() * dpow / num_traits::pow(qr.clone(), d as usize);
                        cells.push(stat.to_string());
                        cells.push(approx(&stat));
                    } else {
                        cells.extend(["-".to_string(), "-".to_string()]);
                    }
                }
                None => cells.extend(std::iter::repeat_n("-".to_string(), 5)),
            }
            t.push(cells);
        }
    }
    emit(&t, json);
    Ok(())
}

pub fn cox3(degree: &str, q: u64, motivic: bool, json: bool) -> Outcome {
    let v = parse_csv(degree)?;
    let d: [i64; 4] = v
        .try_into()
        .map_err(|_| Failure::Usage("cox3 degrees have four entries (d0,d1,d2,d3)".into()))?;
    if d.iter().any(|&e| e < 0) {
        return Err(Failure::Usage(format!("degree {} has a negative entry", csv(&full_degree(&d)))));
    }
    let report = count_report_cox3(&d, q, motivic)?;
    if let Some(class) = &report.class {
        if class.eval_int(q as i64) != BigRational::from_integer(report.count.clone()) {
            return Err(Failure::Check(format!("interpolated polynomial {class} disagrees at q = {q}")));
        }
    }
    let mut t = Table::new(&["y", "q", "count", "dim", "leading", "class"]);
    t.push(report.tsv_row().split('\t').map(String::from).collect());
    emit(&t, json);
    Ok(())
}

pub fn catalog(name: Option<&str>, json: bool) -> Outcome {
    match name {
        Some(n) => {
            let fan = catalog_fan(n).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{}", FanFile::from(&fan).to_json());
        }
        None => {
            let mut t = Table::new(&["name", "dim", "rays", "picard_rank"]);
            for n in CATALOG_NAMES {
                let concrete = if n == "Fa(a)" { "Fa(1)" } else { n };
                let x = ToricVariety::from_catalog(concrete)?;
                t.push(vec![n.into(), x.dim().to_string(), x.num_rays().to_string(), x.pic_rank().to_string()]);
            }
            emit(&t, json);
        }
    }
    Ok(())
}

pub fn mu(target: &Target, q: Option<u64>, motivic: bool, dmax: u32, json: bool) -> Outcome {
    let x = load_variety(target)?;
    let mut t = Table::new(&["d", "mu"]);
    if motivic {
        let s = MuSeries::motivic(&x, dmax)?;
        for (e, c) in s.series.terms() {
            t.push(vec![csv(e), c.to_string()]);
        }
    } else {
        let q = q.ok_or_else(|| Failure::Usage("--q is required without --motivic".into()))?;
        let s = MuSeries::fq(&x, q, dmax)?;
        for (e, c) in s.series.terms() {
            t.push(vec![csv(e), c.to_string()]);
        }
    }
    emit(&t, json);
    Ok(())
}
