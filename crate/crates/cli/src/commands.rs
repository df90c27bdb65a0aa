//! The four subcommands. Each takes a validated config and returns the
//! rendered text plus the overall verdict.

use std::f64::consts::FRAC_PI_2;

use biaxial_core::cauchy::{
    cauchy_full_ball, kernel_pair_closed, kernel_pair_oracle, reconstruct_ab, KernelParams,
    MAX_INTERIOR_RADIUS,
};
use biaxial_core::clifford::{blade_name, BiaxialPoint, Multivector};
use biaxial_core::fields::{ck_extend, eval_series, ClosedClassFunction};
use biaxial_core::planewave::{fourier_kernel_closed, hpw_exp_closed, radialize_poly};
use biaxial_core::quadrature::{hemisphere_rule, sphere_rule};
use biaxial_core::rng::SplitMix64;

use crate::config::Range;
use crate::output::{render_report, render_table, Cell, Report, Table};
use crate::suites::{ball_point, kernel_nu, kernel_x, reconstruction_fields};
use crate::{run_suite, CliError, RunConfig, Suite};

/// Scaled tolerance for kernel-table rows: |closed − oracle| ≤ TOL·max(1, I).
pub const KERNEL_TABLE_TOL: f64 = 1e-8;

pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

pub fn verify(suite: Suite, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let checks = run_suite(suite, cfg)?;
    let pass = checks.iter().all(|c| c.pass);
    let text = render_report(
        &Report {
            suite: suite.name(),
            checks: &checks,
            config: cfg,
        },
        cfg.format,
    )?;
    Ok(Outcome { text, pass })
}

enum EvalField {
    ExpHpw,
    FourierKernel,
    Poly(usize),
    Ck(biaxial_core::fields::HypermonogenicSeries),
}

fn parse_eval_field(name: &str, cfg: &RunConfig) -> Result<EvalField, CliError> {
    match name {
        "exp-hpw" => Ok(EvalField::ExpHpw),
        "fourier-kernel" => Ok(EvalField::FourierKernel),
        "ck" => {
            let f0 = ClosedClassFunction::exponential(cfg.s.clone())?;
            Ok(EvalField::Ck(ck_extend(&f0, cfg.p, cfg.truncation)?))
        }
        "poly" => Ok(EvalField::Poly(cfg.k)),
        other => match other.strip_prefix("poly:") {
            Some(k) => {
                let k: usize = k
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad degree in field '{other}'")))?;
                if k > biaxial_core::planewave::MAX_POLY_DEGREE {
                    return Err(CliError::Config(format!("poly degree {k} too large")));
                }
                Ok(EvalField::Poly(k))
            }
            None => Err(CliError::Config(format!(
                "unknown field '{other}', expected exp-hpw|fourier-kernel|poly:k|ck"
            ))),
        },
    }
}

fn push_blades(row: &mut Vec<Cell>, mv: &Multivector) {
    for c in mv.coeffs() {
        row.push(Cell::Num(c.re));
        row.push(Cell::Num(c.im));
    }
}

fn blade_columns(prefix: &str, m: usize) -> Vec<String> {
    (0..1usize << m)
        .flat_map(|mask| {
            let name = blade_name(mask);
            [format!("{prefix}{name}_re"), format!("{prefix}{name}_im")]
        })
        .collect()
}

/// Evaluates a field at x = u·e₁, y = v·s over the two axis ranges.
pub fn eval(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (p, q, m) = (cfg.p, cfg.q, cfg.p + cfg.q);
    let name = cfg.field.clone().unwrap_or_else(|| "exp-hpw".into());
    let field = parse_eval_field(&name, cfg)?;
    let grid = cfg.grid();
    let xs = grid.x_axis.unwrap_or(Range { lo: 0.0, hi: 1.0, n: 5 }).samples();
    let ys = grid.y_axis.unwrap_or(Range { lo: 0.0, hi: 0.0, n: 1 }).samples();

    let mut columns: Vec<String> = (1..=p).map(|i| format!("x{i}")).collect();
    columns.extend((1..=q).map(|i| format!("y{i}")));
    columns.extend(blade_columns("", m));
    let mut rows = Vec::with_capacity(xs.len() * ys.len());
    for &u in &xs {
        for &v in &ys {
            let mut x = vec![0.0; p];
            x[0] = u;
            // + 0.0 folds −0.0 into 0.0
            let y: Vec<f64> = cfg.s.iter().map(|c| v * c + 0.0).collect();
            let pt = BiaxialPoint::new(x.clone(), y.clone())?;
            let value = match &field {
                EvalField::ExpHpw => hpw_exp_closed(&pt, &cfg.s)?,
                EvalField::FourierKernel => fourier_kernel_closed(&pt, &cfg.s)?,
                EvalField::Poly(k) => radialize_poly(*k, &pt, &cfg.s)?,
                EvalField::Ck(series) => eval_series(series, &pt)?.value,
            };
            let mut row: Vec<Cell> = x.into_iter().chain(y).map(Cell::Num).collect();
            push_blades(&mut row, &value);
            rows.push(row);
        }
    }
    let text = render_table(&Table { columns, rows }, cfg)?;
    Ok(Outcome { text, pass: true })
}

/// Closed kernel against the sphere oracle over an (r, θ) grid at fixed y.
pub fn kernel_table(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (p, q) = (cfg.p, cfg.q);
    if q < 2 {
        return Err(CliError::Config(format!("kernel-table needs q >= 2, got q = {q}")));
    }
    let grid = cfg.grid();
    let rs = grid.r_range.unwrap_or(Range { lo: 0.0, hi: 0.6, n: 5 }).samples();
    let thetas = grid
        .theta_range
        .unwrap_or(Range { lo: 0.0, hi: FRAC_PI_2, n: 5 })
        .samples();
    let y = grid.y.unwrap_or_else(|| vec![0.0; q]);
    if y.len() != q {
        return Err(CliError::Config(format!("--y has {} components but q = {q}", y.len())));
    }
    let y2: f64 = y.iter().map(|v| v * v).sum();
    for &r in &rs {
        if r < 0.0 || (r * r + y2).sqrt() > MAX_INTERIOR_RADIUS {
            return Err(CliError::Config(format!(
                "grid point r = {r} with |y| = {} leaves the ball |x+y| <= {MAX_INTERIOR_RADIUS}",
                y2.sqrt()
            )));
        }
    }
    for &t in &thetas {
        if !(0.0..=FRAC_PI_2).contains(&t) {
            return Err(CliError::Config(format!("theta = {t} outside [0, pi/2]")));
        }
    }
    let rule = sphere_rule(p, cfg.res)?;
    let nu = kernel_nu(q);
    let columns = ["r", "theta", "I_closed", "I_oracle", "abs_diff"].map(String::from).to_vec();
    let mut rows = Vec::new();
    let mut pass = true;
    for &r in &rs {
        for &t in &thetas {
            let kp = KernelParams::new(p, r, y.clone(), t, nu.clone())?;
            let (closed, _) = kernel_pair_closed(&kp)?;
            let (oracle, _) = kernel_pair_oracle(&kernel_x(p, r), &y, t, &nu, &rule)?;
            let diff = (closed - oracle).abs();
            pass &= diff <= KERNEL_TABLE_TOL * closed.abs().max(1.0);
            rows.push(vec![r.into(), t.into(), closed.into(), oracle.into(), diff.into()]);
        }
    }
    let text = render_table(&Table { columns, rows }, cfg)?;
    Ok(Outcome { text, pass })
}

/// Direct values, reconstructed variants and the full-ball oracle at random
/// interior points, reported as max-norm magnitudes and errors.
pub fn reconstruct(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (p, q) = (cfg.p, cfg.q);
    if q < 2 {
        return Err(CliError::Config(format!("reconstruct needs q >= 2, got q = {q}")));
    }
    let grid = cfg.grid();
    let n_points = grid.points.unwrap_or(5);
    let radius = grid.radius.unwrap_or(0.5);
    if !(radius > 0.0 && radius <= MAX_INTERIOR_RADIUS) {
        return Err(CliError::Config(format!("radius must lie in (0, {MAX_INTERIOR_RADIUS}]")));
    }
    if n_points == 0 || n_points > 1000 {
        return Err(CliError::Config("points must lie in 1..=1000".into()));
    }
    let which = cfg.field.clone().unwrap_or_else(|| "all".into());
    let fields: Vec<_> = reconstruction_fields(p, q, &cfg.s)?
        .into_iter()
        .filter(|(name, _)| which == "all" || which == *name)
        .collect();
    if fields.is_empty() {
        return Err(CliError::Config(format!(
            "unknown field '{which}', expected constant|linear|exp-hpw|all"
        )));
    }
    let hrule = hemisphere_rule(p, q, cfg.res)?;
    let ball = sphere_rule(p + q, cfg.res)?;
    let mut rng = SplitMix64::new(cfg.seed);
    let points: Vec<BiaxialPoint> = (0..n_points).map(|_| ball_point(&mut rng, p, q, radius)).collect();

    let mut columns = vec!["field".to_string(), "point".to_string()];
    columns.extend((1..=p).map(|i| format!("x{i}")));
    columns.extend((1..=q).map(|i| format!("y{i}")));
    columns.extend(
        [
            "A_direct",
            "B_direct",
            "err_A_full",
            "err_B_full",
            "err_A_even",
            "err_B_even",
            "err_B_printed",
            "variant_gap_B",
            "err_full_ball",
            "full_ball_vs_full",
        ]
        .map(String::from),
    );
    let mut rows = Vec::new();
    for (name, field) in &fields {
        for (i, pt) in points.iter().enumerate() {
            let a = field.a(pt.r(), pt.y())?;
            let b = field.b(pt.r(), pt.y())?;
            let rec = reconstruct_ab(field, pt, &hrule)?;
            let direct = field.eval(pt)?;
            let oracle = cauchy_full_ball(|x| field.eval(x), pt, &ball)?;
            let err = |u: &Multivector, v: &Multivector| Cell::Num((u - v).max_norm());
            let mut row = vec![Cell::Text(name.to_string()), Cell::Int(i as u64)];
            row.extend(pt.x().iter().chain(pt.y()).map(|v| Cell::Num(*v)));
            row.extend([
                Cell::Num(a.max_norm()),
                Cell::Num(b.max_norm()),
                err(&rec.a, &a),
                err(&rec.b, &b),
                err(&rec.a_even, &a),
                err(&rec.b_even, &b),
                err(&rec.b_short, &b),
                err(&rec.b_short, &rec.b),
                err(&oracle, &direct),
                err(&oracle, &rec.assemble(pt)?),
            ]);
            rows.push(row);
        }
    }
    let text = render_table(&Table { columns, rows }, cfg)?;
    Ok(Outcome { text, pass: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_names() {
        let cfg = RunConfig::new("eval", 2, 2).validate().unwrap();
        assert!(matches!(parse_eval_field("poly:4", &cfg).unwrap(), EvalField::Poly(4)));
        assert!(matches!(parse_eval_field("poly", &cfg).unwrap(), EvalField::Poly(3)));
        assert!(parse_eval_field("poly:x", &cfg).is_err());
        assert!(parse_eval_field("gauss", &cfg).is_err());
    }

    #[test]
    fn eval_axis_row_is_exponential() {
        let mut cfg = RunConfig::new("eval", 3, 2).validate().unwrap();
        cfg.format = crate::Format::Csv;
        cfg.field = Some("exp-hpw".into());
        let text = eval(&cfg).unwrap().text;
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&header[..6], &["x1", "x2", "x3", "y1", "y2", "1_re"]);
        let first: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(first[5], 1.0);
    }

    #[test]
    fn kernel_table_rejects_outside_ball() {
        let mut cfg = RunConfig::new("kernel-table", 2, 2).validate().unwrap();
        cfg.grid = Some(crate::config::GridSpec {
            r_range: Some(Range { lo: 0.0, hi: 0.95, n: 3 }),
            ..cfg.grid()
        });
        assert!(matches!(kernel_table(&cfg), Err(CliError::Config(_))));
    }
}
