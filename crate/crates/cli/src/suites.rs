//! Named verification suites. Each returns a list of checks with the
//! measured error, its tolerance, and the verdict.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use biaxial_core::cauchy::{
    cauchy_full_ball, kernel_pair_closed, kernel_pair_oracle, reconstruct_ab, KernelParams,
};
use biaxial_core::clifford::{dot, vector_exterior, vector_interior, BiaxialPoint, Multivector};
use biaxial_core::fields::{
    axial_split, ck_bessel_form, ck_extend, constant_field, dirac_apply_fd, eval_series,
    linear_field, modified_dirac_residual, series_axial_field, to_biaxial_picture,
    to_modified_picture, vekua_residual, AxialField, ClosedClassFunction, ExpPoly,
    HYPERMONOGENIC_TOL,
};
use biaxial_core::planewave::{
    exp_coeff_closed, fourier_kernel_closed, fourier_kernel_oracle, hpw_exp_axial,
    hpw_exp_closed, hpw_exp_profiles, hpw_recurrence, radialize_poly, radialize_poly_oracle,
};
use biaxial_core::quadrature::{
    funk_hecke_check, hemisphere_rule, sphere_measure, sphere_rule, FunkHeckeRules,
};
use biaxial_core::rng::SplitMix64;
use num_complex::Complex64;
use serde::Serialize;

use crate::{CliError, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Funkhecke,
    Vekua,
    Dirac,
    Kernel,
    Cauchy,
    Planewave,
    Ck,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Self::Algebra => "algebra",
            Self::Funkhecke => "funkhecke",
            Self::Vekua => "vekua",
            Self::Dirac => "dirac",
            Self::Kernel => "kernel",
            Self::Cauchy => "cauchy",
            Self::Planewave => "planewave",
            Self::Ck => "ck",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when measured ≤ tolerance; NaN never passes.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            pass: measured <= tolerance,
        }
    }

    /// Passes when measured ≥ tolerance (orders, lower bounds).
    pub fn at_least(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            pass: measured >= tolerance,
        }
    }
}

/// Below this a finite-difference residual is rounding noise and no
/// convergence order can be read off it.
pub const ROUNDOFF_FLOOR: f64 = 1e-10;
/// Required observed order of the central differences under h → h/2.
pub const MIN_FD_ORDER: f64 = 1.8;

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    match suite {
        Suite::Algebra => algebra(cfg),
        Suite::Funkhecke => funkhecke(cfg),
        Suite::Vekua => vekua(cfg),
        Suite::Dirac => dirac(cfg),
        Suite::Kernel => kernel(cfg),
        Suite::Cauchy => cauchy(cfg),
        Suite::Planewave => planewave(cfg),
        Suite::Ck => ck(cfg),
    }
}

fn rel_err(a: &Multivector, b: &Multivector) -> f64 {
    (a - b).max_norm() / b.max_norm().max(f64::MIN_POSITIVE)
}

/// |a − b| / max(1, |b|).
fn scaled_err(a: &Multivector, b: &Multivector) -> f64 {
    (a - b).max_norm() / b.max_norm().max(1.0)
}

fn random_mv(rng: &mut SplitMix64, m: usize) -> Multivector {
    let coeffs = (0..1usize << m)
        .map(|_| Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)))
        .collect();
    Multivector::from_coeffs(m, coeffs).expect("dimension within range")
}

/// x with |x| uniform in [rmin, rmax] along a random direction, y in the cube [−ybox, ybox]^q.
pub fn random_point(rng: &mut SplitMix64, p: usize, q: usize, rmin: f64, rmax: f64, ybox: f64) -> BiaxialPoint {
    let dir = rng.unit_vector(p);
    let r = rng.uniform(rmin, rmax);
    let x = dir.iter().map(|v| v * r).collect();
    let y = rng.cube(q).into_iter().map(|v| v * ybox).collect();
    BiaxialPoint::new(x, y).expect("valid dimensions")
}

/// Point of the ball |x + y| ≤ radius with |x| ≥ 0.05·radius.
pub fn ball_point(rng: &mut SplitMix64, p: usize, q: usize, radius: f64) -> BiaxialPoint {
    loop {
        let dir = rng.unit_vector(p + q);
        let rho = radius * rng.uniform(0.3, 1.0);
        let v: Vec<f64> = dir.iter().map(|c| c * rho).collect();
        let pt = BiaxialPoint::from_flat(p, &v).expect("valid dimensions");
        if pt.r() >= 0.05 * radius {
            return pt;
        }
    }
}

fn max_of(vals: impl IntoIterator<Item = f64>) -> f64 {
    vals.into_iter().fold(0.0, f64::max)
}

fn algebra(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    const SAMPLES: usize = 1000;
    const TOL: f64 = 1e-12;
    let m = cfg.p + cfg.q;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            let (ei, ej) = (Multivector::basis_vector(m, i), Multivector::basis_vector(m, j));
            let sum = &(&ei * &ej) + &(&ej * &ei);
            let want = Multivector::scalar(m, if i == j { -2.0 } else { 0.0 });
            worst = worst.max((&sum - &want).max_norm());
        }
    }
    checks.push(Check::at_most("anticommutation", worst, TOL));

    let mut assoc = 0.0f64;
    let mut split = 0.0f64;
    let mut square = 0.0f64;
    let mut grades = 0.0f64;
    for _ in 0..SAMPLES {
        let (a, b, c) = (random_mv(&mut rng, m), random_mv(&mut rng, m), random_mv(&mut rng, m));
        let lhs = &(&a * &b) * &c;
        let rhs = &a * &(&b * &c);
        assoc = assoc.max((&lhs - &rhs).norm() / (a.norm() * b.norm() * c.norm()));

        let xv = rng.cube(m);
        let x = Multivector::vector(m, &xv);
        let parts = &vector_interior(&x, &a)? + &vector_exterior(&x, &a)?;
        split = split.max((&parts - &(&x * &a)).norm() / (x.norm() * a.norm()));

        let n2 = dot(&xv, &xv);
        square = square.max((&(&x * &x) - &Multivector::scalar(m, -n2)).norm() / n2);

        let mut total = Multivector::zero(m);
        for k in 0..=m {
            total += &a.grade_project(k)?;
        }
        grades = grades.max((&total - &a).norm() / a.norm());
    }
    checks.push(Check::at_most("associativity", assoc, TOL));
    checks.push(Check::at_most("interior_plus_exterior", split, TOL));
    checks.push(Check::at_most("vector_square", square, TOL));
    checks.push(Check::at_most("grade_decomposition", grades, TOL));
    Ok(checks)
}

type ScalarFn = fn(f64) -> f64;

const ZONAL_PROFILES: [(&str, ScalarFn); 5] = [
    ("1", |_| 1.0),
    ("t", |t| t),
    ("t^2", |t| t * t),
    ("t^3", |t| t * t * t),
    ("exp", f64::exp),
];

fn funkhecke(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    const TOL: f64 = 1e-8;
    let m = cfg.p;
    if m > 6 {
        return Err(CliError::Config(format!("funkhecke runs on S^(m-1) with m = p <= 6, got {m}")));
    }
    let rules = FunkHeckeRules::new(m, cfg.res)?;
    let mut checks = Vec::new();
    for k in 0..=2 {
        for (name, psi) in ZONAL_PROFILES {
            let (lhs, rhs) = funk_hecke_check(psi, k, m, &rules)?;
            checks.push(Check::at_most(format!("m={m},k={k},psi={name}"), (lhs - rhs).abs(), TOL));
            if k == 0 && name == "1" {
                let want = sphere_measure(m);
                let err = (lhs - want).abs().max((rhs - want).abs());
                checks.push(Check::at_most(format!("m={m},sphere_measure"), err, TOL));
            }
        }
    }
    Ok(checks)
}

/// A and B in the (q+1)-generator picture combined as A + eB.
fn modified_picture_value(field: &AxialField, r: f64, y: &[f64]) -> biaxial_core::Result<Multivector> {
    let p = field.p();
    let a = to_modified_picture(&field.a(r, y)?, p)?;
    let b = to_modified_picture(&field.b(r, y)?, p)?;
    let e = Multivector::basis_vector(field.q() + 1, 0);
    Ok(&a + &e.product(&b)?)
}

/// Hypermonogenic and deliberately broken axial fields shared by the
/// Vekua and modified-Dirac checks.
fn field_battery(cfg: &RunConfig) -> Result<Vec<(&'static str, AxialField, bool)>, CliError> {
    let (p, q, m) = (cfg.p, cfg.q, cfg.p + cfg.q);
    let s = cfg.s.clone();
    let fourier0 = ClosedClassFunction::exp_linear(
        Complex64::new(0.0, 1.0),
        s.clone(),
        vec![Complex64::new(1.0, 0.0)],
    )?;
    let ck_field = series_axial_field(&ck_extend(&fourier0, p, cfg.truncation)?)?;

    let s1 = s.clone();
    let no_b = AxialField::new(
        p,
        q,
        Arc::new(move |_r, y| Ok(Multivector::scalar(m, dot(y, &s1)))),
        Arc::new(move |_r, _y| Ok(Multivector::zero(m))),
    )?;
    let (s2, s3) = (s.clone(), s.clone());
    let sv = Multivector::vector_at(m, p, &s);
    let doubled = AxialField::new(
        p,
        q,
        Arc::new(move |r, y| Ok(Multivector::scalar(m, hpw_exp_profiles(r, p)?.0 * dot(y, &s2).exp()))),
        Arc::new(move |r, y| Ok(sv.scale(2.0 * hpw_exp_profiles(r, p)?.1 * dot(y, &s3).exp()))),
    )?;
    Ok(vec![
        ("linear", linear_field(p, &s)?, true),
        ("exp-hpw", hpw_exp_axial(p, &s)?, true),
        ("ck-fourier", ck_field, true),
        ("linear-without-b", no_b, false),
        ("exp-hpw-doubled-b", doubled, false),
    ])
}

/// An axial field with bivector content that is not hypermonogenic.
fn generic_radial_field(p: usize, q: usize) -> Result<AxialField, CliError> {
    let m = p + q;
    let top = if q >= 2 { (1usize << p) | (1 << (p + 1)) } else { 1 << p };
    Ok(AxialField::new(
        p,
        q,
        Arc::new(move |r, y| {
            let mut out = Multivector::scalar(m, r * r * y[0] + 0.5);
            out.set_coeff(1 << p, Complex64::new(r.cos() * y[q - 1], 0.3 * r));
            Ok(out)
        }),
        Arc::new(move |r, y| {
            let mut out = Multivector::scalar(m, r.sin() * y[0].exp());
            out.set_coeff(top, Complex64::new(r * r, -r * y[0]));
            Ok(out)
        }),
    )?)
}

fn vekua(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    const POINTS: usize = 20;
    const CORRESPONDENCE_TOL: f64 = 1e-8;
    let (p, q, h) = (cfg.p, cfg.q, cfg.h);
    let mut rng = SplitMix64::new(cfg.seed);
    let points: Vec<BiaxialPoint> = (0..POINTS).map(|_| random_point(&mut rng, p, q, 0.2, 1.0, 0.5)).collect();
    let mut checks = Vec::new();
    let mut disagreements = 0usize;
    let mut battery = field_battery(cfg)?;
    for (name, field, hyper) in &battery {
        let mut v_max = 0.0f64;
        let mut d_max = 0.0f64;
        for pt in &points {
            let (r1, r2) = vekua_residual(field, pt.r(), pt.y(), h)?;
            v_max = v_max.max(r1.max_norm()).max(r2.max_norm());
            d_max = d_max.max(dirac_apply_fd(|x| field.eval(x), pt, h)?.max_norm());
        }
        let (v_ok, d_ok) = (v_max < HYPERMONOGENIC_TOL, d_max < HYPERMONOGENIC_TOL);
        if v_ok != d_ok {
            disagreements += 1;
        }
        if *hyper {
            checks.push(Check::at_most(format!("vekua:{name}"), v_max, HYPERMONOGENIC_TOL));
            checks.push(Check::at_most(format!("dirac:{name}"), d_max, HYPERMONOGENIC_TOL));
        } else {
            checks.push(Check::at_least(format!("vekua_detects:{name}"), v_max, HYPERMONOGENIC_TOL));
            checks.push(Check::at_least(format!("dirac_detects:{name}"), d_max, HYPERMONOGENIC_TOL));
        }
    }
    checks.push(Check::at_most("verdicts_disagree", disagreements as f64, 0.0));

    battery.push(("generic-radial", generic_radial_field(p, q)?, false));
    for (name, field, _) in &battery {
        let mut worst = 0.0f64;
        for pt in &points {
            let omega = pt.unit_x().expect("points avoid the axis");
            let mf = modified_dirac_residual(|r, y| modified_picture_value(field, r, y), p, pt.r(), pt.y(), h)?;
            let mapped = to_biaxial_picture(&mf, &omega)?;
            let direct = dirac_apply_fd(|x| field.eval(x), pt, h)?;
            worst = worst.max((&mapped - &direct).max_norm());
        }
        checks.push(Check::at_most(format!("modified_dirac:{name}"), worst, CORRESPONDENCE_TOL));
    }
    Ok(checks)
}

type PointField = Box<dyn Fn(&BiaxialPoint) -> biaxial_core::Result<Multivector>>;

/// Every constructed hypermonogenic field, evaluated pointwise.
pub fn hypermonogenic_fields(cfg: &RunConfig) -> Result<Vec<(String, PointField)>, CliError> {
    let (p, s) = (cfg.p, cfg.s.clone());
    let mut out: Vec<(String, PointField)> = Vec::new();
    let s1 = s.clone();
    out.push(("exp-hpw".into(), Box::new(move |x| hpw_exp_closed(x, &s1))));
    let s2 = s.clone();
    out.push(("fourier-kernel".into(), Box::new(move |x| fourier_kernel_closed(x, &s2))));
    for k in 0..=6 {
        let sk = s.clone();
        out.push((format!("poly:{k}"), Box::new(move |x| radialize_poly(k, x, &sk))));
    }
    let data = [
        ("ck:exp", ClosedClassFunction::exponential(s.clone())?),
        (
            "ck:fourier",
            ClosedClassFunction::exp_linear(Complex64::new(0.0, 1.0), s.clone(), vec![Complex64::new(1.0, 0.0)])?,
        ),
        ("ck:cubic", ClosedClassFunction::polynomial(s.clone(), &[0.5, 0.0, -1.0, 1.0])?),
    ];
    for (name, f0) in data {
        let series = ck_extend(&f0, p, cfg.truncation)?;
        out.push((name.into(), Box::new(move |x| Ok(eval_series(&series, x)?.value))));
    }
    Ok(out)
}

fn dirac(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    const POINTS: usize = 10;
    let (p, q, h) = (cfg.p, cfg.q, cfg.h);
    let mut rng = SplitMix64::new(cfg.seed);
    let points: Vec<BiaxialPoint> = (0..POINTS).map(|_| random_point(&mut rng, p, q, 0.1, 1.5, 1.0)).collect();
    let mut checks = Vec::new();
    for (name, f) in hypermonogenic_fields(cfg)? {
        let mut coarse = 0.0f64;
        let mut fine = 0.0f64;
        for pt in &points {
            coarse = coarse.max(dirac_apply_fd(&f, pt, h)?.max_norm());
            fine = fine.max(dirac_apply_fd(&f, pt, 0.5 * h)?.max_norm());
        }
        checks.push(Check::at_most(format!("{name}:residual"), coarse, HYPERMONOGENIC_TOL));
        if coarse >= ROUNDOFF_FLOOR {
            checks.push(Check::at_least(format!("{name}:order"), (coarse / fine).log2(), MIN_FD_ORDER));
        }
    }
    Ok(checks)
}

/// The 5 × 5 × 3 grid of (r, θ, |y|) used by the kernel suite.
pub fn kernel_grid(q: usize) -> Vec<(f64, f64, Vec<f64>)> {
    let rs = [0.0, 0.15, 0.3, 0.45, 0.6];
    let thetas = [0.0, PI / 8.0, PI / 4.0, 3.0 * PI / 8.0, FRAC_PI_2];
    let ys = [0.0, 0.2, 0.4];
    let d = 1.0 / (q as f64).sqrt();
    let mut out = Vec::new();
    for &r in &rs {
        for &t in &thetas {
            for &yn in &ys {
                out.push((r, t, vec![yn * d; q]));
            }
        }
    }
    out
}

/// x = r·(0.6, 0.8, 0, …).
pub fn kernel_x(p: usize, r: f64) -> Vec<f64> {
    let mut x = vec![0.0; p];
    x[0] = 0.6 * r;
    x[1] = 0.8 * r;
    x
}

pub fn kernel_nu(q: usize) -> Vec<f64> {
    let mut nu = vec![0.0; q];
    nu[q - 1] = 1.0;
    nu
}

fn require_q2(cfg: &RunConfig, suite: &str) -> Result<(), CliError> {
    if cfg.q < 2 {
        return Err(CliError::Config(format!("{suite} needs q >= 2, got q = {}", cfg.q)));
    }
    Ok(())
}

fn kernel(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    const TOL: f64 = 1e-8;
    require_q2(cfg, "kernel")?;
    let (p, q) = (cfg.p, cfg.q);
    let rule = sphere_rule(p, cfg.res)?;
    let nu = kernel_nu(q);
    let grid = kernel_grid(q);
    let mut even = 0.0f64;
    let mut odd = 0.0f64;
    let mut axis = 0.0f64;
    for (r, theta, y) in &grid {
        let kp = KernelParams::new(p, *r, y.clone(), *theta, nu.clone())?;
        let (c0, c1) = kernel_pair_closed(&kp)?;
        let (o0, o1) = kernel_pair_oracle(&kernel_x(p, *r), y, *theta, &nu, &rule)?;
        let scale = c0.abs().max(1.0);
        even = even.max((c0 - o0).abs() / scale);
        odd = odd.max((c1 - o1).abs() / scale);
        if *r == 0.0 {
            let want = sphere_measure(p) * kp.tau().powf(-0.5 * (p + q) as f64);
            axis = axis.max((c0 - want).abs() / want.max(1.0));
        }
    }
    Ok(vec![
        Check::at_most(format!("closed_vs_oracle({} points)", grid.len()), even, TOL),
        Check::at_most(format!("odd_closed_vs_oracle({} points)", grid.len()), odd, TOL),
        Check::at_most("axis_equals_sphere_measure", axis, TOL),
    ])
}

/// The three reconstruction test fields.
pub fn reconstruction_fields(p: usize, q: usize, s: &[f64]) -> Result<Vec<(&'static str, AxialField)>, CliError> {
    Ok(vec![
        ("constant", constant_field(p, q, 1.0)?),
        ("linear", linear_field(p, s)?),
        ("exp-hpw", hpw_exp_axial(p, s)?),
    ])
}

fn cauchy(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    const POINTS: usize = 5;
    const RADIUS: f64 = 0.5;
    const FIELD_TOL: f64 = 1e-4;
    const ORACLE_TOL: f64 = 1e-5;
    const REFINED_FLOOR: f64 = 1e-12;
    require_q2(cfg, "cauchy")?;
    let (p, q) = (cfg.p, cfg.q);
    let coarse = hemisphere_rule(p, q, cfg.res)?;
    let fine = hemisphere_rule(p, q, 2 * cfg.res)?;
    let ball = sphere_rule(p + q, cfg.res)?;
    let mut rng = SplitMix64::new(cfg.seed);
    let points: Vec<BiaxialPoint> = (0..POINTS).map(|_| ball_point(&mut rng, p, q, RADIUS)).collect();
    let mut checks = Vec::new();
    for (name, field) in reconstruction_fields(p, q, &cfg.s)? {
        let (mut ea, mut eb, mut efine, mut eball, mut zonal) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for pt in &points {
            let a = field.a(pt.r(), pt.y())?;
            let b = field.b(pt.r(), pt.y())?;
            let rec = reconstruct_ab(&field, pt, &coarse)?;
            ea = ea.max((&rec.a - &a).max_norm());
            eb = eb.max((&rec.b - &b).max_norm());
            let rf = reconstruct_ab(&field, pt, &fine)?;
            efine = efine.max((&rf.a - &a).max_norm()).max((&rf.b - &b).max_norm());
            let oracle = cauchy_full_ball(|x| field.eval(x), pt, &ball)?;
            eball = eball.max((&oracle - &rec.assemble(pt)?).max_norm());

            let mut rx = pt.x().to_vec();
            rx.rotate_left(1);
            let rotated = BiaxialPoint::new(rx, pt.y().to_vec())?;
            let rr = reconstruct_ab(&field, &rotated, &coarse)?;
            zonal = zonal.max((&rr.a - &rec.a).max_norm()).max((&rr.b - &rec.b).max_norm());
        }
        checks.push(Check::at_most(format!("{name}:A"), ea, FIELD_TOL));
        checks.push(Check::at_most(format!("{name}:B"), eb, FIELD_TOL));
        checks.push(Check::at_most(format!("{name}:full_ball_agreement"), eball, ORACLE_TOL));
        checks.push(Check::at_most(format!("{name}:refined_error"), efine, ea.max(eb).max(REFINED_FLOOR)));
        checks.push(Check::at_most(format!("{name}:zonal"), zonal, 1e-10));
    }
    Ok(checks)
}

fn planewave(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    const POINTS: usize = 10;
    const TOL: f64 = 1e-9;
    let (p, q, s) = (cfg.p, cfg.q, cfg.s.as_slice());
    let rule = sphere_rule(p, cfg.res)?;
    let rule2 = sphere_rule(p, 2 * cfg.res)?;
    let mut rng = SplitMix64::new(cfg.seed);
    let points: Vec<BiaxialPoint> = (0..POINTS).map(|_| random_point(&mut rng, p, q, 0.05, 1.0, 1.0)).collect();
    let mut checks = Vec::new();

    for k in 0..=6 {
        let mut worst = 0.0f64;
        for pt in &points {
            let closed = radialize_poly(k, pt, s)?;
            let oracle = radialize_poly_oracle(k, pt, s, &rule)?;
            worst = worst.max(scaled_err(&oracle, &closed));
        }
        checks.push(Check::at_most(format!("poly:k={k}"), worst, TOL));
    }

    let anchor = {
        let pt = BiaxialPoint::new(vec![1.0, 0.0], vec![0.0])?;
        let circle = sphere_rule(2, cfg.res)?;
        let want = Multivector::basis_vector(3, 0).scale(PI);
        let closed = radialize_poly(1, &pt, &[1.0])?;
        let oracle = radialize_poly_oracle(1, &pt, &[1.0], &circle)?;
        (&closed - &want).max_norm().max((&oracle - &want).max_norm())
    };
    checks.push(Check::at_most("anchor:circle_integral_pi_x", anchor, TOL));

    // self-convergence under res -> 2res on the hardest integrands only
    let far = {
        let w = points[0].unit_x().expect("points avoid the axis");
        BiaxialPoint::new(w.iter().map(|v| 2.0 * v).collect(), points[0].y().to_vec())?
    };
    let refine = (&radialize_poly_oracle(6, &points[0], s, &rule2)? - &radialize_poly_oracle(6, &points[0], s, &rule)?)
        .max_norm()
        .max((&fourier_kernel_oracle(&far, s, &rule2)? - &fourier_kernel_oracle(&far, s, &rule)?).max_norm());

    for &r in &[0.5, 1.0, 2.0] {
        let mut worst = 0.0f64;
        for pt in points.iter().take(3) {
            let w = pt.unit_x().expect("points avoid the axis");
            let x: Vec<f64> = w.iter().map(|v| v * r).collect();
            let at = BiaxialPoint::new(x, pt.y().to_vec())?;
            let closed = fourier_kernel_closed(&at, s)?;
            let oracle = fourier_kernel_oracle(&at, s, &rule)?;
            worst = worst.max(scaled_err(&oracle, &closed));
        }
        checks.push(Check::at_most(format!("fourier:|x|={r}"), worst, TOL));
    }

    let mut bessel_anchor = 0.0f64;
    for &r in &[0.5, 1.0, 2.0] {
        let pt = BiaxialPoint::new(vec![r, 0.0], vec![0.0])?;
        let g = fourier_kernel_closed(&pt, &[1.0])?;
        // trapezoid rule for ∫₀^{2π} e^{r cos φ} dφ, exact to rounding for periodic analytic integrands
        let n = 64;
        let trap: f64 = (0..n).map(|i| (r * (2.0 * PI * i as f64 / n as f64).cos()).exp()).sum::<f64>()
            * (2.0 * PI / n as f64);
        bessel_anchor = bessel_anchor.max((g.coeff(1 << 2).im - trap).abs() / trap);
    }
    checks.push(Check::at_most("anchor:2pi_I0", bessel_anchor, TOL));
    checks.push(Check::at_most("oracle_refinement", refine, 1e-10));

    let series = hpw_recurrence(
        ExpPoly::exp(Complex64::new(1.0, 0.0), 1.0),
        ExpPoly::exp(Complex64::new(1.0, 0.0), 0.0),
        s,
        p,
        cfg.truncation,
    )?;
    let (c, d) = series.exp_coeffs().expect("exponential class");
    let parity = max_of((1..c.len()).map(|j| if j % 2 == 1 { c[j].abs() } else { d[j].abs() }));
    checks.push(Check::at_most("parity_zeros", parity, 0.0));
    let mut round_trip = 0.0f64;
    for pt in &points {
        let quad = series.quadruple(pt.r(), pt.y_dot(s));
        round_trip = round_trip.max((&quad.assemble(pt, s)? - &series.eval(pt)?).max_norm());
    }
    checks.push(Check::at_most("quadruple_round_trip", round_trip, 1e-13));
    Ok(checks)
}

fn ck(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    const POINTS: usize = 10;
    const TOL: f64 = 1e-12;
    let (p, q, s) = (cfg.p, cfg.q, cfg.s.as_slice());
    let mut checks = Vec::new();

    let series = hpw_recurrence(
        ExpPoly::exp(Complex64::new(1.0, 0.0), 1.0),
        ExpPoly::exp(Complex64::new(1.0, 0.0), 0.0),
        s,
        p,
        cfg.truncation,
    )?;
    let (c, d) = series.exp_coeffs().expect("exponential class");
    let coeff = max_of((0..=20.min(cfg.truncation)).map(|j| {
        let rec = if j % 2 == 0 { c[j] } else { d[j] };
        let closed = exp_coeff_closed(j, p);
        (rec - closed).abs() / closed
    }));
    checks.push(Check::at_most("exp_coeffs_vs_closed(j<=20)", coeff, 1e-13));

    let ck_series = ck_extend(&ClosedClassFunction::exponential(s.to_vec())?, p, cfg.truncation)?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut points: Vec<BiaxialPoint> = (0..POINTS).map(|_| random_point(&mut rng, p, q, 0.0, 2.0, 1.0)).collect();
    points.push(BiaxialPoint::new(kernel_x(p, 2.0), vec![0.0; q])?);
    let (mut e_rec, mut e_ck, mut e_bessel, mut e_split) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for pt in &points {
        let closed = hpw_exp_closed(pt, s)?;
        e_rec = e_rec.max(rel_err(&series.eval(pt)?, &closed));
        let ck_val = eval_series(&ck_series, pt)?.value;
        e_ck = e_ck.max(rel_err(&ck_val, &closed));
        e_bessel = e_bessel.max(rel_err(&ck_bessel_form(s, pt)?, &closed));
        let (a, b) = axial_split(&ck_series, pt.r(), pt.y());
        let split = biaxial_core::cauchy::assemble_axial(&a, &b, pt)?;
        e_split = e_split.max(rel_err(&split, &ck_val));
    }
    checks.push(Check::at_most("recurrence_series_vs_bessel_j(|x|<=2)", e_rec, TOL));
    checks.push(Check::at_most("ck_extension_vs_bessel_j(|x|<=2)", e_ck, TOL));
    checks.push(Check::at_most("ck_bessel_form_vs_bessel_j", e_bessel, TOL));
    checks.push(Check::at_most("axial_split_vs_series", e_split, TOL));

    let lin = ck_extend(&ClosedClassFunction::polynomial(s.to_vec(), &[0.0, 1.0])?, p, cfg.truncation)?;
    let m = p + q;
    let want = Multivector::vector_at(m, p, s).scale(1.0 / p as f64);
    let mut e_lin = lin.term(1).first().map_or(f64::INFINITY, |c| (c - &want).max_norm());
    for j in 2..=lin.truncation() {
        if !lin.is_term_zero(j) {
            e_lin = f64::INFINITY;
        }
    }
    checks.push(Check::at_most("linear_data_terminates", e_lin, 1e-15));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_verdicts() {
        assert!(Check::at_most("a", 1e-9, 1e-8).pass);
        assert!(!Check::at_most("a", f64::NAN, 1e-8).pass);
        assert!(Check::at_least("a", 2.0, 1.8).pass);
        assert!(!Check::at_least("a", 1.0, 1.8).pass);
    }

    #[test]
    fn kernel_grid_has_75_interior_points() {
        let grid = kernel_grid(3);
        assert_eq!(grid.len(), 75);
        for (r, _, y) in &grid {
            assert!((r * r + dot(y, y)).sqrt() <= 0.9);
        }
    }

    #[test]
    fn ball_points_stay_inside() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..50 {
            let pt = ball_point(&mut rng, 2, 2, 0.5);
            assert!(pt.norm() <= 0.5 + 1e-15);
        }
    }
}
