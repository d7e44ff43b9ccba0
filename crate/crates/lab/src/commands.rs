//! Subcommand implementations. Every command returns a process exit code:
//! 0 all checks passed, 1 a mathematical check failed, 2 bad input,
//! 3 a tolerance could not be reached (the mapping from `Error` to 2/3
//! happens in `main`).

use crate::report::{array, emit, fit_json, growth_csv, num, JsonObject};
use crate::spec;
use brody_core::growth::{self, characteristic_jensen, CharacteristicSampler};
use brody_core::harmonic::sample_positive_boundary;
use brody_core::num::SplitMix64;
use brody_core::verifier::{boundary_chain_check, sweep_main_inequality, OmittingCurveCase};
use brody_core::{example, Complex64, Error, HoloCurve};
use rayon::prelude::*;
use std::path::Path;

/// Direct-path radius for curves loaded from spec files; the production
/// (reduced) path is unlimited, this only bounds oracle evaluations.
pub const DEFAULT_DIRECT_RADIUS: f64 = 13.0;

pub fn parse_radii_grid(text: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::input("radii must be r0:r1:k (k geometric steps)"));
    }
    let r0: f64 = parts[0]
        .parse()
        .map_err(|_| Error::input("bad r0 in radii"))?;
    let r1: f64 = parts[1]
        .parse()
        .map_err(|_| Error::input("bad r1 in radii"))?;
    let k: usize = parts[2]
        .parse()
        .map_err(|_| Error::input("bad step count in radii"))?;
    growth::geometric_radii(r0, r1, k)
}

pub fn parse_complex(text: &str) -> Result<Complex64, Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::input("complex values are written re,im"));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::input("bad real part"))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::input("bad imaginary part"))?;
    Ok(Complex64::new(re, im))
}

pub fn parse_interval(text: &str) -> Result<(f64, f64), Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::input("intervals are written lo,hi"));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::input("bad interval start"))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::input("bad interval end"))?;
    if !(hi > lo) {
        return Err(Error::input("interval must satisfy lo < hi"));
    }
    Ok((lo, hi))
}

fn load(curve: &Path) -> Result<HoloCurve, Error> {
    spec::load_curve(curve, DEFAULT_DIRECT_RADIUS)
}

pub fn cmd_spherical_grid(
    curve_path: &Path,
    radius: f64,
    resolution: f64,
    out: Option<&Path>,
) -> Result<i32, Error> {
    let curve = load(curve_path)?;
    let sup = curve.sup_spherical(radius, resolution)?;
    let shells = array(sup.shells.iter().map(|s| {
        JsonObject::new()
            .field_num("r_lo", s.r_lo)
            .field_num("r_hi", s.r_hi)
            .field_num("max", s.max)
            .field_pair("argmax", s.argmax)
            .finish()
    }));
    let json = JsonObject::new()
        .field_num("sup", sup.value)
        .field_pair("argmax", sup.argmax)
        .field_raw("shells", &shells)
        .finish();
    emit(out, &json)?;
    Ok(0)
}

pub enum CharacteristicMethod {
    Jensen,
    Ahlfors,
    Both,
}

pub fn cmd_characteristic(
    curve_path: &Path,
    radii: &[f64],
    method: CharacteristicMethod,
    tol: f64,
    out: Option<&Path>,
) -> Result<i32, Error> {
    if radii.is_empty() {
        return Err(Error::input("no radii requested"));
    }
    let curve = load(curve_path)?;
    let mut rows = Vec::with_capacity(radii.len());
    match method {
        CharacteristicMethod::Both => {
            rows = growth::sample_growth(&curve, radii, tol)?;
        }
        CharacteristicMethod::Jensen => {
            for &r in radii {
                rows.push(brody_core::GrowthSample {
                    r,
                    t_jensen: characteristic_jensen(&curve, r, 64)?,
                    t_ahlfors: f64::NAN,
                    n_of_r: f64::NAN,
                });
            }
        }
        CharacteristicMethod::Ahlfors => {
            let mut sampler = CharacteristicSampler::new(&curve, *radii.last().unwrap(), tol)?;
            for &r in radii {
                let t = sampler.characteristic_at(r)?;
                let n = sampler.mass_at(r)?;
                rows.push(brody_core::GrowthSample {
                    r,
                    t_jensen: f64::NAN,
                    t_ahlfors: t,
                    n_of_r: n,
                });
            }
        }
    }
    emit(out, growth_csv(&rows).trim_end())?;
    Ok(0)
}

pub fn cmd_order_fit(
    curve_path: &Path,
    radii: &[f64],
    window: Option<(f64, f64)>,
    out: Option<&Path>,
) -> Result<i32, Error> {
    let curve = load(curve_path)?;
    let window = window.unwrap_or((radii[0], *radii.last().unwrap()));
    let mut pts = Vec::with_capacity(radii.len());
    for &r in radii {
        pts.push((r, characteristic_jensen(&curve, r, 64)?));
    }
    let fit = growth::fit_order_type(&pts, window)?;
    emit(out, &fit_json(&fit))?;
    Ok(0)
}

pub fn cmd_lemma1(
    trials: usize,
    degree: usize,
    seed: u64,
    report_path: Option<&Path>,
) -> Result<i32, Error> {
    if trials == 0 || degree == 0 {
        return Err(Error::input("lemma1 needs trials >= 1 and degree >= 1"));
    }
    struct Row {
        seed: u64,
        degree: usize,
        center: Complex64,
        radius: f64,
        zero_angle: f64,
        margin: f64,
        harnack: f64,
        monotone: f64,
        hadamard: f64,
    }
    let rows: Vec<Row> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = SplitMix64::split(seed, i);
            let deg = 1 + (i % degree as u64) as usize;
            let theta1 = rng.uniform(-core::f64::consts::PI, core::f64::consts::PI);
            let center = rng.complex_square(2.0);
            let radius = rng.uniform(0.5, 4.0);
            let case = sample_positive_boundary(seed ^ i, deg, theta1, center, radius)
                .expect("generator parameters are valid");
            let grid: Vec<f64> = (1..=16).map(|j| radius * j as f64 / 16.0).collect();
            let profile = case.circle_min_profile(&grid).expect("grid is valid");
            Row {
                seed: i,
                degree: deg,
                center,
                radius,
                zero_angle: theta1,
                margin: case.lemma1_margin(),
                harnack: profile.harnack_defect,
                monotone: profile.monotone_defect,
                hadamard: profile.hadamard_defect,
            }
        })
        .collect();
    let argmin = rows
        .iter()
        .min_by(|a, b| a.margin.total_cmp(&b.margin))
        .unwrap();
    let harnack = rows.iter().map(|r| r.harnack).fold(0.0f64, f64::max);
    let monotone = rows.iter().map(|r| r.monotone).fold(0.0f64, f64::max);
    let hadamard = rows.iter().map(|r| r.hadamard).fold(0.0f64, f64::max);
    let pass = argmin.margin >= -1e-9 && harnack <= 1e-9 && monotone <= 1e-8 && hadamard <= 1e-8;
    let argmin_json = JsonObject::new()
        .field_int("seed", argmin.seed as i64)
        .field_int("degree", argmin.degree as i64)
        .field_pair("center", argmin.center)
        .field_num("radius", argmin.radius)
        .field_num("zero_angle", argmin.zero_angle)
        .finish();
    let json = JsonObject::new()
        .field_int("trials", trials as i64)
        .field_int("degree", degree as i64)
        .field_int("seed", seed as i64)
        .field_num("min_margin", argmin.margin)
        .field_raw("argmin", &argmin_json)
        .field_num("harnack_defect", harnack)
        .field_num("monotone_defect", monotone)
        .field_num("hadamard_defect", hadamard)
        .field_bool("pass", pass)
        .finish();
    emit(report_path, &json)?;
    Ok(if pass { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_main_ineq(
    curve_path: &Path,
    z0: Complex64,
    annulus: (f64, f64),
    samples: usize,
    tol: f64,
    chain_centers: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<i32, Error> {
    let curve = load(curve_path)?;
    let case = OmittingCurveCase::with_scanned_sup(curve, z0, 16.0, 0.05)?;
    let r_min = annulus.0.max(z0.norm() * (1.0 + 1e-12)).max(1e-3);
    let rep = sweep_main_inequality(&case, r_min, annulus.1, samples)?;
    let mut chain_rows = Vec::new();
    let mut chain_worst = f64::INFINITY;
    if chain_centers > 0 {
        let mut rng = SplitMix64::new(seed);
        let mut centers = Vec::new();
        let mut attempts = 0;
        while centers.len() < chain_centers && attempts < 100_000 {
            attempts += 1;
            let a = rng.complex_square(8.0);
            if a.norm() < 1.0 {
                continue;
            }
            let u0 = case.curve.components()[0].eval(a).log_modulus();
            let ustar = case
                .curve
                .components()
                .iter()
                .skip(1)
                .map(|c| c.eval(a).log_modulus())
                .fold(f64::NEG_INFINITY, f64::max);
            if u0 > ustar + 0.1 {
                centers.push(a);
            }
        }
        if centers.len() < chain_centers {
            return Err(Error::numerical(
                "could not find enough admissible chain centers",
            ));
        }
        let reports = centers
            .par_iter()
            .map(|&a| boundary_chain_check(&case, a))
            .collect::<Result<Vec<_>, _>>()?;
        for r in &reports {
            chain_worst = chain_worst
                .min(r.margin_radius)
                .min(r.margin_gradient)
                .min(r.margin_pair);
            chain_rows.push(
                JsonObject::new()
                    .field_pair("center", r.center)
                    .field_num("radius", r.radius)
                    .field_pair("z1", r.z1)
                    .field_int("k", r.k as i64)
                    .field_num("margin_radius", r.margin_radius)
                    .field_num("margin_gradient", r.margin_gradient)
                    .field_num("margin_pair", r.margin_pair)
                    .finish(),
            );
        }
    }
    let pass = rep.min_margin >= tol && (chain_rows.is_empty() || chain_worst >= -1e-7);
    let worst_json = JsonObject::new()
        .field_pair("z", rep.worst.z)
        .field_num("lhs", rep.worst.lhs)
        .field_num("rhs", rep.worst.rhs)
        .field_num("margin", rep.worst.margin)
        .field_str("detail", rep.worst.detail)
        .finish();
    let json = JsonObject::new()
        .field_num("sup_estimate", case.sup_s)
        .field_int("samples", rep.samples as i64)
        .field_num("min_margin", rep.min_margin)
        .field_raw("worst", &worst_json)
        .field_raw("chain", &array(chain_rows))
        .field_bool("pass", pass)
        .finish();
    emit(out, &json)?;
    Ok(if pass { 0 } else { 1 })
}

pub fn cmd_example(n: usize, verify: &str, out: Option<&Path>) -> Result<i32, Error> {
    let ex = example::build_example(n, DEFAULT_DIRECT_RADIUS)?;
    let mut obj = JsonObject::new()
        .field_int("n", n as i64)
        .field_pair("beta", ex.beta);
    let mut pass = true;
    let all = verify == "all";
    if all || verify == "elliptic" {
        let res = ex.verify_elliptic(200, 2025);
        pass &= res <= 1e-8;
        obj = obj.field_num("elliptic_residual", res);
    }
    if all || verify == "b0" {
        for which in [0usize, 1] {
            let rep = ex.verify_b0(which, &[10.0, 20.0, 40.0], 256)?;
            let expect = core::f64::consts::FRAC_PI_2;
            pass &= (rep.c_estimate - expect).abs() <= 0.02 * expect;
            pass &= rep.per_radius.last().unwrap().1 < rep.per_radius.first().unwrap().1;
            let per = array(rep.per_radius.iter().map(|&(r, d)| {
                JsonObject::new()
                    .field_num("r", r)
                    .field_num("max_rel_dev", d)
                    .finish()
            }));
            let summary = JsonObject::new()
                .field_num("c_estimate", rep.c_estimate)
                .field_int("samples_used", rep.samples_used as i64)
                .field_int("excluded", rep.excluded as i64)
                .field_num("max_rel_dev", rep.max_rel_dev)
                .field_raw("per_radius", &per)
                .finish();
            obj = obj.field_raw(if which == 0 { "b0_f0" } else { "b0_f1" }, &summary);
        }
    }
    if all || verify == "brody" {
        let floors: Vec<f64> = [5.0, 10.0, 15.0, 20.0]
            .iter()
            .map(|&r| ex.divergence_floor(r))
            .collect();
        pass &= floors.windows(2).all(|w| w[1] > w[0]);
        let bounds = [0.0, 4.0, 8.0, 12.0];
        let mut sups = Vec::new();
        for w in bounds.windows(2) {
            sups.push(ex.curve.shell_sup(w[0], w[1], 0.08)?.max);
        }
        let lo = sups.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = sups.iter().cloned().fold(0.0f64, f64::max);
        pass &= hi / lo - 1.0 <= 0.05;
        let gaps: Vec<f64> = [1.5, 5.0, 20.0]
            .iter()
            .map(|&r| ex.pair_reduction_gap(r, 128))
            .collect();
        pass &= gaps[1] < gaps[0] && gaps[2] <= gaps[1] + 1e-12;
        obj = obj
            .field_raw("norm_floors", &array(floors.iter().map(|&f| num(f))))
            .field_raw("shell_sups", &array(sups.iter().map(|&s| num(s))))
            .field_raw("pair_reduction_gaps", &array(gaps.iter().map(|&g| num(g))));
    }
    if all || verify == "growth" {
        let (fit, c20, c40) = ex.growth_fit()?;
        pass &= (fit.order_rho - 2.0).abs() <= 0.05;
        pass &= (c20 / c40 - 1.0).abs() <= 0.05;
        obj = obj
            .field_raw("fit", &fit_json(&fit))
            .field_num("c1_at_20", c20)
            .field_num("c1_at_40", c40);
    }
    let json = obj.field_bool("pass", pass).finish();
    emit(out, &json)?;
    Ok(if pass { 0 } else { 1 })
}

pub fn cmd_report(out: Option<&Path>) -> Result<i32, Error> {
    let results = crate::accept::run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let json = array(results.iter().map(|r| {
        JsonObject::new()
            .field_int("criterion", r.index as i64)
            .field_str("name", r.name)
            .field_bool("pass", r.pass)
            .field_str("detail", &r.detail)
            .finish()
    }));
    if out.is_some() {
        emit(out, &json)?;
    }
    Ok(if results.iter().all(|r| r.pass) { 0 } else { 1 })
}
