//! Real-order special functions: Gamma, Bessel J and I, Gegenbauer
//! polynomials, Pochhammer symbols and the Gauss hypergeometric function.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::cached_jacobi_rule;
use crate::sum::NeumaierSum;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(xm1: f64) -> f64 {
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (xm1 + i as f64);
    }
    a
}

/// Γ(x) for x > 0.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gamma_fn needs a positive finite argument, got {x}"
        )));
    }
    if x.fract() == 0.0 && x <= 21.0 {
        return Ok((1..x as u64).map(|k| k as f64).product());
    }
    if x < 0.5 {
        return Ok(gamma_fn(x + 1.0)? / x);
    }
    if x > 140.0 {
        return Ok(ln_gamma(x)?.exp());
    }
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(xm1 + 0.5) * (-t).exp() * lanczos_sum(xm1))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "ln_gamma needs a positive finite argument, got {x}"
        )));
    }
    if x < 0.5 {
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (xm1 + 0.5) * t.ln() - t + lanczos_sum(xm1).ln())
}

/// Internal Γ for arguments already known to be positive.
pub(crate) fn gamma(x: f64) -> f64 {
    gamma_fn(x).expect("positive gamma argument")
}

/// Rising factorial (a)_k = a(a+1)…(a+k−1).
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).map(|i| a + i as f64).product()
}

pub const BESSEL_MAX_ORDER: f64 = 10.0;
pub const BESSEL_MAX_ARG: f64 = 50.0;

fn check_bessel(nu: f64, z: f64) -> Result<()> {
    if !(0.0..=BESSEL_MAX_ORDER).contains(&nu) || !(0.0..=BESSEL_MAX_ARG).contains(&z) {
        return Err(Error::Domain(format!(
            "Bessel order {nu} / argument {z} outside [0, {BESSEL_MAX_ORDER}] x [0, {BESSEL_MAX_ARG}]"
        )));
    }
    Ok(())
}

/// Σ_j (±1)^j (z/2)^{2j+ν} / (j! Γ(ν+j+1)); the first term goes through
/// ln Γ, the rest through the term ratio.
fn bessel_series(nu: f64, z: f64, alternating: bool) -> f64 {
    if z == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * z;
    let quarter_sq = half * half;
    let mut term = (nu * half.ln() - ln_gamma(nu + 1.0).expect("nu >= 0")).exp();
    let mut acc = NeumaierSum::new();
    acc.add(term);
    for j in 0..1000usize {
        let jf = j as f64;
        term *= quarter_sq / ((jf + 1.0) * (nu + jf + 1.0));
        if alternating {
            term = -term;
        }
        acc.add(term);
        if jf > half && term.abs() < 1e-17 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// J_ν(z) by backward recurrence in the order, normalised with the Neumann
/// sum (z/2)^{ν0} = Σ_k (ν0+2k) Γ(ν0+k)/k! J_{ν0+2k}(z).
fn bessel_j_miller(nu: f64, z: f64) -> f64 {
    let n = nu.floor() as usize;
    let nu0 = nu - n as f64;
    let top = (n as f64).max(z);
    let mut start = n + 2 + (top + 30.0 + 6.0 * top.sqrt()) as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let mut f = vec![0.0f64; start + 2];
    f[start] = 1e-30;
    for k in (1..=start).rev() {
        let next = 2.0 * (nu0 + k as f64) / z * f[k] - f[k + 1];
        f[k - 1] = next;
        if next.abs() > 1e200 {
            for v in f.iter_mut().skip(k - 1) {
                *v *= 1e-200;
            }
        }
    }
    // Neumann weights: c_0 = Γ(ν0+1), c_j = (ν0+2j) Γ(ν0+j)/j!
    let g0 = gamma(nu0 + 1.0);
    let mut norm = NeumaierSum::new();
    norm.add(g0 * f[0]);
    let mut g = g0; // Γ(ν0+j)/j! at j = 1
    let mut j = 1usize;
    while 2 * j <= start {
        norm.add((nu0 + 2.0 * j as f64) * g * f[2 * j]);
        g *= (nu0 + j as f64) / (j as f64 + 1.0);
        j += 1;
    }
    f[n] * (0.5 * z).powf(nu0) / norm.value()
}

const J_SERIES_LIMIT: f64 = 5.0;

/// Bessel function of the first kind J_ν(z).
///
/// Power series for z ≤ 5, where the alternating sum loses at most a few
/// digits; Miller backward recurrence beyond.
pub fn bessel_j(nu: f64, z: f64) -> Result<f64> {
    check_bessel(nu, z)?;
    if z <= J_SERIES_LIMIT {
        Ok(bessel_series(nu, z, true))
    } else {
        Ok(bessel_j_miller(nu, z))
    }
}

/// Power-series J_ν(z) regardless of the argument size.
pub fn bessel_j_series(nu: f64, z: f64) -> Result<f64> {
    check_bessel(nu, z)?;
    Ok(bessel_series(nu, z, true))
}

/// Backward-recurrence J_ν(z), z > 0.
pub fn bessel_j_recurrence(nu: f64, z: f64) -> Result<f64> {
    check_bessel(nu, z)?;
    if z == 0.0 {
        return Ok(bessel_series(nu, z, true));
    }
    Ok(bessel_j_miller(nu, z))
}

/// Modified Bessel function of the first kind I_ν(z) (power series).
pub fn bessel_i(nu: f64, z: f64) -> Result<f64> {
    check_bessel(nu, z)?;
    Ok(bessel_series(nu, z, false))
}

pub const GEGENBAUER_MAX_DEGREE: usize = 30;

/// Gegenbauer polynomial C_k^λ(t) by the three-term recurrence.
pub fn gegenbauer(k: usize, lambda: f64, t: f64) -> Result<f64> {
    if k > GEGENBAUER_MAX_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "Gegenbauer degree {k} > {GEGENBAUER_MAX_DEGREE}"
        )));
    }
    if !(lambda >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Gegenbauer weight must be >= 0, got {lambda}"
        )));
    }
    if !(t.abs() <= 1.0) {
        return Err(Error::Domain(format!("Gegenbauer argument |t| = {} > 1", t.abs())));
    }
    let mut prev = 1.0;
    if k == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * lambda * t;
    for n in 2..=k {
        let nf = n as f64;
        let next = (2.0 * t * (nf + lambda - 1.0) * cur - (nf + 2.0 * lambda - 2.0) * prev) / nf;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// (k!/(m−2)_k) C_k^{m/2−1}(t), with the Chebyshev limit T_k(t) at m = 2.
///
/// This is the zonal kernel appearing in the Funk–Hecke reduction over
/// S^{m−1}; it equals 1 at t = 1 for every m.
pub fn gegenbauer_normalized(k: usize, m: usize, t: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::UnsupportedDimension(format!(
            "normalized Gegenbauer needs m >= 2, got {m}"
        )));
    }
    if m == 2 {
        if k > GEGENBAUER_MAX_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "Gegenbauer degree {k} > {GEGENBAUER_MAX_DEGREE}"
            )));
        }
        if !(t.abs() <= 1.0) {
            return Err(Error::Domain(format!("Chebyshev argument |t| = {} > 1", t.abs())));
        }
        let (mut prev, mut cur) = (1.0, t);
        if k == 0 {
            return Ok(1.0);
        }
        for _ in 2..=k {
            let next = 2.0 * t * cur - prev;
            prev = cur;
            cur = next;
        }
        return Ok(cur);
    }
    let lambda = 0.5 * m as f64 - 1.0;
    let factorial: f64 = (1..=k).map(|i| i as f64).product();
    Ok(factorial / pochhammer(m as f64 - 2.0, k) * gegenbauer(k, lambda, t)?)
}

/// Parameters of ₂F₁(a, b; c; z).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypergeometricParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl HypergeometricParams {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self { a, b, c, z }
    }

    fn validate(&self) -> Result<()> {
        let Self { a, b, c, z } = *self;
        if ![a, b, c, z].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite 2F1 parameter".into()));
        }
        if !(b > 0.0) || !(c - b > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "2F1 needs c > b > 0, got b={b}, c={c}"
            )));
        }
        if z >= 1.0 || z <= -1.0 {
            return Err(Error::Domain(format!("2F1 argument z = {z} outside (-1, 1)")));
        }
        Ok(())
    }
}

/// Branch switch between the power series and the Euler integral.
pub const HYP2F1_SERIES_LIMIT: f64 = 0.5;

/// Gauss hypergeometric function for c > b > 0 and −1 < z < 1.
///
/// Power series for |z| ≤ 0.5, Euler integral by Gauss–Jacobi quadrature
/// otherwise.
pub fn gauss_2f1(params: HypergeometricParams) -> Result<f64> {
    params.validate()?;
    if params.z.abs() <= HYP2F1_SERIES_LIMIT {
        hyp2f1_series(params)
    } else {
        hyp2f1_euler(params)
    }
}

/// Power-series branch, valid for |z| < 1 (slow as |z| → 1).
pub fn hyp2f1_series(params: HypergeometricParams) -> Result<f64> {
    params.validate()?;
    let HypergeometricParams { a, b, c, z } = params;
    let mut term = 1.0;
    let mut acc = NeumaierSum::new();
    acc.add(term);
    for n in 0..20_000usize {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        acc.add(term);
        if term.abs() <= 1e-17 * acc.value().abs() {
            return Ok(acc.value());
        }
    }
    Err(Error::NotConverged(format!("2F1 series at z = {z}")))
}

/// Number of Jacobi nodes for the Euler integrand (1 − zs)^{−a}, sized from
/// the Bernstein ellipse through its singularity.
fn euler_nodes(z: f64) -> usize {
    let tstar = (2.0 / z - 1.0).abs();
    let rho = tstar + (tstar * tstar - 1.0).max(0.0).sqrt();
    let raw = 1.3 * 19.6 / rho.ln() + 16.0;
    let mut n = 32usize;
    while (n as f64) < raw && n < 2048 {
        n *= 2;
    }
    n
}

/// Euler-integral branch:
/// ₂F₁ = Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ s^{b−1}(1−s)^{c−b−1}(1−zs)^{−a} ds.
pub fn hyp2f1_euler(params: HypergeometricParams) -> Result<f64> {
    params.validate()?;
    let HypergeometricParams { a, b, c, z } = params;
    if z == 0.0 {
        return Ok(1.0);
    }
    // s = (1+t)/2 turns the weight into (1−t)^{c−b−1}(1+t)^{b−1}
    let rule = cached_jacobi_rule(euler_nodes(z), c - b - 1.0, b - 1.0)?;
    let total = rule.total_weight();
    let acc: NeumaierSum = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .map(|(t, w)| w * (1.0 - z * 0.5 * (1.0 + t)).powf(-a))
        .collect();
    Ok(acc.value() / total)
}
