//! Hypermonogenic plane waves F = Σ x^j (C_j(t) + s D_j(t)), t = ⟨y, s⟩,
//! and the two radialised families with Bessel-type closed forms.

use std::sync::Arc;

use num_complex::Complex64;

use crate::clifford::{dot, norm, BiaxialPoint, Multivector};
use crate::error::{Error, Result};
use crate::fields::{beta, AxialField, ExpPoly, MAX_TRUNCATION};
use crate::quadrature::{funk_hecke_constant, sphere_measure, SphereRule};
use crate::special::{bessel_i, bessel_j, gamma};
use crate::sum::MultivectorSum;

/// Degree cap for the polynomial radialisation.
pub const MAX_POLY_DEGREE: usize = 12;

fn check_direction(s: &[f64], q: usize) -> Result<()> {
    if s.len() != q || (norm(s) - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "s must be a unit vector of R^{q}"
        )));
    }
    Ok(())
}

/// Output of the plane-wave recurrence: C_j, D_j for j = 0..=J.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWaveSeries {
    p: usize,
    s: Vec<f64>,
    c: Vec<ExpPoly>,
    d: Vec<ExpPoly>,
}

/// Values of the four coefficient functions at one (|x|, t):
/// F = A + B ω + C s + D ω s with ω = x/|x|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HpwQuadruple {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl HpwQuadruple {
    /// Reassembles F at `pt`; on the axis B and D must vanish and are dropped.
    pub fn assemble(&self, pt: &BiaxialPoint, s: &[f64]) -> Result<Multivector> {
        let m = pt.dim();
        let s_emb = pt.embed_y_vector(s);
        let mut out = Multivector::scalar(m, self.a) + s_emb.scale(self.c);
        if let Some(w) = pt.unit_x() {
            let omega = Multivector::vector(m, &w);
            out = out + omega.scale(self.b) + omega.product(&s_emb)?.scale(self.d);
        }
        Ok(out)
    }
}

impl PlaneWaveSeries {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn direction(&self) -> &[f64] {
        &self.s
    }

    pub fn truncation(&self) -> usize {
        self.c.len() - 1
    }

    pub fn c(&self, j: usize) -> &ExpPoly {
        &self.c[j]
    }

    pub fn d(&self, j: usize) -> &ExpPoly {
        &self.d[j]
    }

    /// (c_j, d_j) when every C_j, D_j is a constant multiple of e^t.
    pub fn exp_coeffs(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let one = Complex64::new(1.0, 0.0);
        let scalar = |f: &ExpPoly| {
            (f.is_zero() || (f.lambda == one && f.poly.len() == 1 && f.poly[0].im == 0.0))
                .then(|| f.leading_constant())
        };
        let c = self.c.iter().map(scalar).collect::<Option<Vec<_>>>()?;
        let d = self.d.iter().map(scalar).collect::<Option<Vec<_>>>()?;
        Some((c, d))
    }

    /// Parity split into (A, B, C, D) using x^{2k} = (−1)^k r^{2k}.
    pub fn quadruple(&self, r: f64, t: f64) -> HpwQuadruple {
        let zero = Complex64::new(0.0, 0.0);
        let mut out = HpwQuadruple { a: zero, b: zero, c: zero, d: zero };
        let mut pow = 1.0;
        for j in 0..=self.truncation() {
            if j > 0 {
                pow *= r;
            }
            let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let cj = self.c[j].eval(t) * (sign * pow);
            let dj = self.d[j].eval(t) * (sign * pow);
            if j % 2 == 0 {
                out.a += cj;
                out.c += dj;
            } else {
                out.b += cj;
                out.d += dj;
            }
        }
        out
    }

    /// Σ_j x^j (C_j(t) + s D_j(t)) summed term by term.
    pub fn eval(&self, pt: &BiaxialPoint) -> Result<Multivector> {
        if pt.p() != self.p || pt.q() != self.s.len() {
            return Err(Error::DimensionMismatch {
                left: pt.dim(),
                right: self.p + self.s.len(),
            });
        }
        let m = pt.dim();
        let t = pt.y_dot(&self.s);
        let x = pt.embed_x();
        let s_emb = pt.embed_y_vector(&self.s);
        let mut xj = Multivector::one(m);
        let mut acc = MultivectorSum::new(m);
        for j in 0..=self.truncation() {
            if j > 0 {
                xj = x.product(&xj)?;
            }
            let fj = Multivector::scalar(m, self.c[j].eval(t)) + s_emb.scale(self.d[j].eval(t));
            acc.add_scaled(&xj.product(&fj)?, 1.0);
        }
        Ok(acc.value())
    }
}

/// C_{j+1} = (−1)^j D′_j / β_{j+1}, D_{j+1} = −(−1)^j C′_j / β_{j+1}.
pub fn hpw_recurrence(
    c0: ExpPoly,
    d0: ExpPoly,
    s: &[f64],
    p: usize,
    truncation: usize,
) -> Result<PlaneWaveSeries> {
    if truncation > MAX_TRUNCATION {
        return Err(Error::InvalidParameter(format!(
            "truncation {truncation} exceeds {MAX_TRUNCATION}"
        )));
    }
    if p < 2 {
        return Err(Error::UnsupportedDimension(format!("plane wave with p={p}")));
    }
    check_direction(s, s.len())?;
    let lambda = match (c0.is_zero(), d0.is_zero()) {
        (true, _) => d0.lambda,
        (false, true) => c0.lambda,
        (false, false) if c0.lambda == d0.lambda => c0.lambda,
        _ => {
            return Err(Error::ClassClosure(
                "C0 and D0 must share the exponential rate".into(),
            ))
        }
    };
    let mut c = vec![ExpPoly::new(lambda, c0.poly)];
    let mut d = vec![ExpPoly::new(lambda, d0.poly)];
    for j in 0..truncation {
        let b = beta(j + 1, p) as f64;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let cn = d[j].derivative().scale(sign / b);
        let dn = c[j].derivative().scale(-sign / b);
        c.push(cn);
        d.push(dn);
    }
    Ok(PlaneWaveSeries { p, s: s.to_vec(), c, d })
}

/// c_j (even j) or d_j (odd j) of the exponential plane wave with c₀ = 1, d₀ = 0.
pub fn exp_coeff_closed(j: usize, p: usize) -> f64 {
    let half_p = 0.5 * p as f64;
    let jf = j as f64;
    if j % 2 == 0 {
        gamma(half_p) / (2f64.powi(j as i32) * gamma(0.5 * jf + 1.0) * gamma(0.5 * jf + half_p))
    } else {
        let h = 0.5 * (jf + 1.0);
        gamma(half_p) / (2f64.powi(j as i32) * gamma(h) * gamma(h + half_p))
    }
}

/// Radial profiles of the exponential plane wave,
/// (Γ(p/2)(2/r)^{p/2−1} J_{p/2−1}(r), Γ(p/2)(2/r)^{p/2−1} J_{p/2}(r)).
pub fn hpw_exp_profiles(r: f64, p: usize) -> Result<(f64, f64)> {
    if r == 0.0 {
        return Ok((1.0, 0.0));
    }
    let nu = 0.5 * p as f64 - 1.0;
    let pre = gamma(nu + 1.0) * (2.0 / r).powf(nu);
    Ok((pre * bessel_j(nu, r)?, pre * bessel_j(nu + 1.0, r)?))
}

/// F = Γ(p/2)(2/r)^{p/2−1}(J_{p/2−1}(r) + J_{p/2}(r) ω s) e^{⟨y,s⟩}; e^{⟨y,s⟩} on the axis.
pub fn hpw_exp_closed(pt: &BiaxialPoint, s: &[f64]) -> Result<Multivector> {
    check_direction(s, pt.q())?;
    let m = pt.dim();
    let e = pt.y_dot(s).exp();
    let (a, b) = hpw_exp_profiles(pt.r(), pt.p())?;
    let mut out = Multivector::scalar(m, a * e);
    if let Some(w) = pt.unit_x() {
        let ws = Multivector::vector(m, &w).product(&pt.embed_y_vector(s))?;
        out = out + ws.scale(b * e);
    }
    Ok(out)
}

/// The exponential plane wave as an axial field:
/// A = a(r) e^{⟨y,s⟩}, B = b(r) s e^{⟨y,s⟩} with the profiles of [`hpw_exp_profiles`].
pub fn hpw_exp_axial(p: usize, s: &[f64]) -> Result<AxialField> {
    check_direction(s, s.len())?;
    let q = s.len();
    let m = p + q;
    let sa = s.to_vec();
    let sb = s.to_vec();
    let sv = Multivector::vector_at(m, p, s);
    AxialField::new(
        p,
        q,
        Arc::new(move |r, y| {
            let (a, _) = hpw_exp_profiles(r, p)?;
            Ok(Multivector::scalar(m, a * dot(y, &sa).exp()))
        }),
        Arc::new(move |r, y| {
            let (_, b) = hpw_exp_profiles(r, p)?;
            Ok(sv.scale(b * dot(y, &sb).exp()))
        }),
    )
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn check_degree(k: usize) -> Result<()> {
    if k > MAX_POLY_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "polynomial degree {k} exceeds {MAX_POLY_DEGREE}"
        )));
    }
    Ok(())
}

/// a_j = (−1)^j C(k, 2j+1) Γ((p−1)/2) Γ(j+3/2) / Γ(p/2+j+1).
pub fn poly_coeff_a(j: usize, k: usize, p: usize) -> Result<f64> {
    check_degree(k)?;
    if 2 * j + 1 > k || p < 2 {
        return Err(Error::InvalidParameter(format!("a_j needs 2j+1 <= k, got j={j}, k={k}")));
    }
    let (jf, pf) = (j as f64, p as f64);
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * binomial(k, 2 * j + 1) * gamma(0.5 * (pf - 1.0)) * gamma(jf + 1.5)
        / gamma(0.5 * pf + jf + 1.0))
}

/// b_j = (−1)^j C(k, 2j) Γ((p−1)/2) Γ(j+1/2) / Γ(p/2+j).
pub fn poly_coeff_b(j: usize, k: usize, p: usize) -> Result<f64> {
    check_degree(k)?;
    if 2 * j > k || p < 2 {
        return Err(Error::InvalidParameter(format!("b_j needs 2j <= k, got j={j}, k={k}")));
    }
    let (jf, pf) = (j as f64, p as f64);
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * binomial(k, 2 * j) * gamma(0.5 * (pf - 1.0)) * gamma(jf + 0.5)
        / gamma(0.5 * pf + jf))
}

/// g = A + i B s with A = κ_p Σ x^{2j+1} a_j (it)^{k−2j−1} and
/// B = κ_p Σ x^{2j} b_j (it)^{k−2j}, t = ⟨y, s⟩.
pub fn radialize_poly(k: usize, pt: &BiaxialPoint, s: &[f64]) -> Result<Multivector> {
    check_degree(k)?;
    check_direction(s, pt.q())?;
    let p = pt.p();
    let kappa = funk_hecke_constant(p);
    let it = Complex64::new(0.0, pt.y_dot(s));
    let r2 = pt.r().powi(2);
    let x = pt.embed_x();
    let mut a = Complex64::new(0.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    for j in 0..=k / 2 {
        let x2j = if j % 2 == 0 { r2.powi(j as i32) } else { -r2.powi(j as i32) };
        if 2 * j + 1 <= k {
            a += x2j * poly_coeff_a(j, k, p)? * it.powu((k - 2 * j - 1) as u32);
        }
        b += x2j * poly_coeff_b(j, k, p)? * it.powu((k - 2 * j) as u32);
    }
    let s_emb = pt.embed_y_vector(s);
    Ok(x.scale(a * kappa) + s_emb.scale(Complex64::new(0.0, kappa) * b))
}

fn sphere_oracle<F>(pt: &BiaxialPoint, s: &[f64], rule: &SphereRule, radial: F) -> Result<Multivector>
where
    F: Fn(f64, f64) -> Complex64,
{
    let (m, p) = (pt.dim(), pt.p());
    if rule.dim() != p {
        return Err(Error::DimensionMismatch { left: rule.dim(), right: p });
    }
    check_direction(s, pt.q())?;
    let t_y = pt.y_dot(s);
    let s_emb = pt.embed_y_vector(s);
    let mut acc = MultivectorSum::new(m);
    for (t, w) in rule.iter() {
        let phase = radial(dot(pt.x(), t), t_y);
        let tau = Multivector::vector(m, t) + s_emb.scale(Complex64::new(0.0, 1.0));
        acc.add_scaled(&tau.scale(phase), w);
    }
    Ok(acc.value())
}

/// ∫_{S^{p−1}} (⟨x,t⟩ + i⟨y,s⟩)^k (t + i s) dS(t) by sphere quadrature.
pub fn radialize_poly_oracle(k: usize, pt: &BiaxialPoint, s: &[f64], rule: &SphereRule) -> Result<Multivector> {
    check_degree(k)?;
    sphere_oracle(pt, s, rule, |xt, ty| Complex64::new(xt, ty).powu(k as u32))
}

/// G = e^{it} κ_p √π Γ((p−1)/2) (2/r)^{(p−2)/2} (ω I_{p/2}(r) + i I_{(p−2)/2}(r) s);
/// on the axis G = i |S^{p−1}| s e^{it}.
pub fn fourier_kernel_closed(pt: &BiaxialPoint, s: &[f64]) -> Result<Multivector> {
    check_direction(s, pt.q())?;
    let (m, p) = (pt.dim(), pt.p());
    let phase = Complex64::new(0.0, pt.y_dot(s)).exp();
    let s_emb = pt.embed_y_vector(s);
    let i = Complex64::new(0.0, 1.0);
    let Some(w) = pt.unit_x() else {
        return Ok(s_emb.scale(i * sphere_measure(p) * phase));
    };
    let r = pt.r();
    let nu = 0.5 * (p as f64 - 2.0);
    let pre = funk_hecke_constant(p)
        * std::f64::consts::PI.sqrt()
        * gamma(0.5 * (p as f64 - 1.0))
        * (2.0 / r).powf(nu);
    let omega = Multivector::vector(m, &w);
    Ok((omega.scale(bessel_i(nu + 1.0, r)?) + s_emb.scale(i * bessel_i(nu, r)?)).scale(pre * phase))
}

/// ∫_{S^{p−1}} e^{⟨x,t⟩ + i⟨y,s⟩} (t + i s) dS(t) by sphere quadrature.
pub fn fourier_kernel_oracle(pt: &BiaxialPoint, s: &[f64], rule: &SphereRule) -> Result<Multivector> {
    sphere_oracle(pt, s, rule, |xt, ty| Complex64::new(xt, ty).exp())
}
