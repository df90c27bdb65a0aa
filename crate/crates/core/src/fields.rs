//! Hypermonogenic candidates and the numerical operators that test them:
//! finite-difference Dirac, Vekua and modified Dirac residuals, and the
//! Cauchy–Kovalevskaya series over exponential-polynomial data.

use std::sync::Arc;

use num_complex::Complex64;

use crate::clifford::{norm, vector_interior, BiaxialPoint, Multivector};
use crate::error::{Error, Result};
use crate::special::gamma;
use crate::sum::MultivectorSum;

/// Smallest and largest admissible finite-difference steps.
pub const FD_STEP_RANGE: (f64, f64) = (1e-6, 1e-2);
pub const DEFAULT_FD_STEP: f64 = 1e-4;
/// Residual below which a field counts as hypermonogenic.
pub const HYPERMONOGENIC_TOL: f64 = 1e-6;
pub const MAX_TRUNCATION: usize = 60;
pub const DEFAULT_TRUNCATION: usize = 40;
/// Relative size of the last series terms accepted by [`eval_series`].
pub const SERIES_TAIL_TOL: f64 = 1e-14;

/// β_j with ∂_x x^j = β_j x^{j−1}: −j for even j, −(j+p−1) for odd j.
pub fn beta(j: usize, p: usize) -> i64 {
    assert!(j >= 1, "beta is defined for j >= 1");
    if j % 2 == 0 {
        -(j as i64)
    } else {
        -((j + p - 1) as i64)
    }
}

fn check_step(h: f64) -> Result<()> {
    let (lo, hi) = FD_STEP_RANGE;
    if !(lo..=hi).contains(&h) {
        return Err(Error::InvalidParameter(format!(
            "finite-difference step must lie in [{lo:e}, {hi:e}], got {h:e}"
        )));
    }
    Ok(())
}

fn check_radius(r: f64, h: f64) -> Result<()> {
    if !(r > 2.0 * h) {
        return Err(Error::Domain(format!(
            "|x| = {r} is within 2h = {} of the axis",
            2.0 * h
        )));
    }
    Ok(())
}

/// Central-difference (∂_x + ∂_y) f = Σ_i e_i (f(pt + h e_i) − f(pt − h e_i))/(2h).
pub fn dirac_apply_fd<F>(f: F, pt: &BiaxialPoint, h: f64) -> Result<Multivector>
where
    F: Fn(&BiaxialPoint) -> Result<Multivector>,
{
    check_step(h)?;
    check_radius(pt.r(), h)?;
    let m = pt.dim();
    let mut acc = MultivectorSum::new(m);
    for i in 0..m {
        let plus = f(&pt.shifted(i, h))?;
        let minus = f(&pt.shifted(i, -h))?;
        let diff = plus.try_sub(&minus)?;
        let term = Multivector::basis_vector(m, i).product(&diff)?;
        acc.add_scaled(&term, 0.5 / h);
    }
    Ok(acc.value())
}

/// Radial profile (r, y) ↦ multivector supported on the y-generators.
pub type Profile = Arc<dyn Fn(f64, &[f64]) -> Result<Multivector> + Send + Sync>;

/// f(x, y) = A(|x|, y) + (x/|x|) B(|x|, y) with A, B in the y-subalgebra of C_{p+q}.
#[derive(Clone)]
pub struct AxialField {
    p: usize,
    q: usize,
    a: Profile,
    b: Profile,
}

impl std::fmt::Debug for AxialField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AxialField(p={}, q={})", self.p, self.q)
    }
}

impl AxialField {
    pub fn new(p: usize, q: usize, a: Profile, b: Profile) -> Result<Self> {
        if p < 2 || q < 1 || p + q > crate::clifford::MAX_DIM {
            return Err(Error::UnsupportedDimension(format!(
                "axial field with p={p}, q={q}"
            )));
        }
        Ok(Self { p, q, a, b })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn a(&self, r: f64, y: &[f64]) -> Result<Multivector> {
        self.check_profile((self.a)(r, y)?)
    }

    pub fn b(&self, r: f64, y: &[f64]) -> Result<Multivector> {
        self.check_profile((self.b)(r, y)?)
    }

    fn check_profile(&self, mv: Multivector) -> Result<Multivector> {
        if mv.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: mv.dim(),
                right: self.dim(),
            });
        }
        Ok(mv)
    }

    /// A + (x/|x|)B; on the axis x = 0 only A(0, y) is returned.
    pub fn eval(&self, pt: &BiaxialPoint) -> Result<Multivector> {
        if pt.p() != self.p || pt.q() != self.q {
            return Err(Error::DimensionMismatch {
                left: pt.dim(),
                right: self.dim(),
            });
        }
        let r = pt.r();
        let a = self.a(r, pt.y())?;
        match pt.unit_x() {
            None => Ok(a),
            Some(w) => {
                let omega = Multivector::vector(self.dim(), &w);
                Ok(a + omega.product(&self.b(r, pt.y())?)?)
            }
        }
    }
}

/// f ≡ c.
pub fn constant_field(p: usize, q: usize, c: f64) -> Result<AxialField> {
    let m = p + q;
    AxialField::new(
        p,
        q,
        Arc::new(move |_, _| Ok(Multivector::scalar(m, c))),
        Arc::new(move |_, _| Ok(Multivector::zero(m))),
    )
}

/// f = ⟨y,s⟩ + (1/p) x s, i.e. A = ⟨y,s⟩ and B = (|x|/p) s.
pub fn linear_field(p: usize, s: &[f64]) -> Result<AxialField> {
    if s.is_empty() || (norm(s) - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter("direction s must be a unit vector".into()));
    }
    let q = s.len();
    let m = p + q;
    let sa = s.to_vec();
    let sv = Multivector::vector_at(m, p, s);
    AxialField::new(
        p,
        q,
        Arc::new(move |_r, y| Ok(Multivector::scalar(m, crate::clifford::dot(y, &sa)))),
        Arc::new(move |r, _y| Ok(sv.scale(r / p as f64))),
    )
}

/// Central differences of the Vekua system:
/// res1 = ∂_y A − ∂_r B − ((p−1)/r) B, res2 = ∂_y B − ∂_r A.
pub fn vekua_residual(
    field: &AxialField,
    r: f64,
    y: &[f64],
    h: f64,
) -> Result<(Multivector, Multivector)> {
    check_step(h)?;
    check_radius(r, h)?;
    let (p, q, m) = (field.p(), field.q(), field.dim());
    if y.len() != q {
        return Err(Error::DimensionMismatch { left: y.len(), right: q });
    }
    let dy = |g: &dyn Fn(f64, &[f64]) -> Result<Multivector>| -> Result<Multivector> {
        let mut acc = MultivectorSum::new(m);
        let mut yp = y.to_vec();
        for j in 0..q {
            yp[j] = y[j] + h;
            let plus = g(r, &yp)?;
            yp[j] = y[j] - h;
            let minus = g(r, &yp)?;
            yp[j] = y[j];
            let term = Multivector::basis_vector(m, p + j).product(&plus.try_sub(&minus)?)?;
            acc.add_scaled(&term, 0.5 / h);
        }
        Ok(acc.value())
    };
    let dr = |g: &dyn Fn(f64, &[f64]) -> Result<Multivector>| -> Result<Multivector> {
        Ok(g(r + h, y)?.try_sub(&g(r - h, y)?)?.scale(0.5 / h))
    };
    let fa = |r: f64, y: &[f64]| field.a(r, y);
    let fb = |r: f64, y: &[f64]| field.b(r, y);
    let b = field.b(r, y)?;
    let res1 = dy(&fa)?
        .try_sub(&dr(&fb)?)?
        .try_sub(&b.scale((p as f64 - 1.0) / r))?;
    let res2 = dy(&fb)?.try_sub(&dr(&fa)?)?;
    Ok((res1, res2))
}

/// Moves a multivector supported on the y-generators of C_{p+q} into the
/// (q+1)-generator picture, where generator 0 stands for e = x/|x| and the
/// y-generators sit on 1..=q.
pub fn to_modified_picture(mv: &Multivector, p: usize) -> Result<Multivector> {
    let q = mv.dim().checked_sub(p).filter(|&q| q >= 1).ok_or_else(|| {
        Error::UnsupportedDimension(format!("dimension {} with p={p}", mv.dim()))
    })?;
    let xmask = (1usize << p) - 1;
    let mut out = Multivector::zero(q + 1);
    for (mask, c) in mv.coeffs().iter().enumerate() {
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        if mask & xmask != 0 {
            return Err(Error::InvalidParameter(format!(
                "coefficient on x-blade {} in a y-subalgebra element",
                crate::clifford::blade_name(mask)
            )));
        }
        out.set_coeff((mask >> p) << 1, *c);
    }
    Ok(out)
}

/// Inverse direction: e ↦ ω = x/|x| ∈ R^p and the y-generators back onto
/// e_{p+1}..e_{p+q}. The map is an algebra homomorphism because ω is a
/// unit vector orthogonal to the y-generators.
pub fn to_biaxial_picture(mv: &Multivector, omega: &[f64]) -> Result<Multivector> {
    let p = omega.len();
    let q = mv
        .dim()
        .checked_sub(1)
        .filter(|&q| q >= 1)
        .ok_or_else(|| Error::UnsupportedDimension(format!("picture dimension {}", mv.dim())))?;
    let m = p + q;
    crate::clifford::check_dim(m)?;
    let w = Multivector::vector(m, omega);
    let mut plain = Multivector::zero(m);
    let mut with_e = Multivector::zero(m);
    for (mask, c) in mv.coeffs().iter().enumerate() {
        let target = (mask >> 1) << p;
        if mask & 1 == 0 {
            plain.set_coeff(target, *c);
        } else {
            with_e.set_coeff(target, *c);
        }
    }
    Ok(plain + w.product(&with_e)?)
}

/// M f = e ∂_r f + ∂_y f + ((p−1)/r) e⌋f in the (q+1)-generator picture,
/// by central differences.
pub fn modified_dirac_residual<F>(f: F, p: usize, r: f64, y: &[f64], h: f64) -> Result<Multivector>
where
    F: Fn(f64, &[f64]) -> Result<Multivector>,
{
    check_step(h)?;
    check_radius(r, h)?;
    let q = y.len();
    let n = q + 1;
    let e = Multivector::basis_vector(n, 0);
    let centre = f(r, y)?;
    if centre.dim() != n {
        return Err(Error::DimensionMismatch { left: centre.dim(), right: n });
    }
    let mut acc = MultivectorSum::new(n);
    let dr = f(r + h, y)?.try_sub(&f(r - h, y)?)?;
    acc.add_scaled(&e.product(&dr)?, 0.5 / h);
    let mut yp = y.to_vec();
    for j in 0..q {
        yp[j] = y[j] + h;
        let plus = f(r, &yp)?;
        yp[j] = y[j] - h;
        let minus = f(r, &yp)?;
        yp[j] = y[j];
        let term = Multivector::basis_vector(n, j + 1).product(&plus.try_sub(&minus)?)?;
        acc.add_scaled(&term, 0.5 / h);
    }
    acc.add_scaled(&vector_interior(&e, &centre)?, (p as f64 - 1.0) / r);
    Ok(acc.value())
}

/// P(t) e^{λt} with complex polynomial coefficients in increasing degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPoly {
    pub lambda: Complex64,
    pub poly: Vec<Complex64>,
}

impl ExpPoly {
    pub fn new(lambda: Complex64, poly: Vec<Complex64>) -> Self {
        Self { lambda, poly }
    }

    pub fn zero(lambda: Complex64) -> Self {
        Self { lambda, poly: Vec::new() }
    }

    /// c e^{λt}.
    pub fn exp(lambda: Complex64, c: f64) -> Self {
        Self::new(lambda, vec![Complex64::new(c, 0.0)])
    }

    /// Real polynomial (λ = 0).
    pub fn polynomial(coeffs: &[f64]) -> Self {
        Self::new(Complex64::new(0.0, 0.0), coeffs.iter().map(|&c| c.into()).collect())
    }

    /// (P′ + λP) e^{λt}.
    pub fn derivative(&self) -> Self {
        let n = self.poly.len();
        let poly = (0..n)
            .map(|k| {
                let lead = if k + 1 < n {
                    self.poly[k + 1] * (k + 1) as f64
                } else {
                    Complex64::new(0.0, 0.0)
                };
                lead + self.lambda * self.poly[k]
            })
            .collect();
        Self { lambda: self.lambda, poly }.trimmed()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            lambda: self.lambda,
            poly: self.poly.iter().map(|v| v * c).collect(),
        }
    }

    fn trimmed(mut self) -> Self {
        while self.poly.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            self.poly.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.poly.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let p = self
            .poly
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c);
        p * (self.lambda * t).exp()
    }

    /// Constant coefficient of P, which is the value c of c e^{λt}.
    pub fn leading_constant(&self) -> f64 {
        self.poly.first().map_or(0.0, |c| c.re)
    }
}

/// Scalar initial data for the CK extension.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedClassFunction {
    /// P(⟨y,s⟩) e^{λ⟨y,s⟩}.
    ExpLinear {
        lambda: Complex64,
        s: Vec<f64>,
        poly: Vec<Complex64>,
    },
}

impl ClosedClassFunction {
    pub fn exp_linear(lambda: Complex64, s: Vec<f64>, poly: Vec<Complex64>) -> Result<Self> {
        if s.is_empty() || (norm(&s) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter("direction s must be a unit vector".into()));
        }
        Ok(Self::ExpLinear { lambda, s, poly })
    }

    /// e^{⟨y,s⟩}.
    pub fn exponential(s: Vec<f64>) -> Result<Self> {
        Self::exp_linear(Complex64::new(1.0, 0.0), s, vec![Complex64::new(1.0, 0.0)])
    }

    /// Real polynomial in ⟨y,s⟩.
    pub fn polynomial(s: Vec<f64>, coeffs: &[f64]) -> Result<Self> {
        Self::exp_linear(
            Complex64::new(0.0, 0.0),
            s,
            coeffs.iter().map(|&c| c.into()).collect(),
        )
    }

    pub fn direction(&self) -> &[f64] {
        match self {
            Self::ExpLinear { s, .. } => s,
        }
    }

    pub fn profile(&self) -> ExpPoly {
        match self {
            Self::ExpLinear { lambda, poly, .. } => ExpPoly::new(*lambda, poly.clone()),
        }
    }

    pub fn eval(&self, y: &[f64]) -> Complex64 {
        self.profile().eval(crate::clifford::dot(y, self.direction()))
    }
}

/// f(x, y) = Σ_j x^j f_j(y), f_j(y) = Σ_n M_{j,n} t^n e^{λt}, t = ⟨y, s⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct HypermonogenicSeries {
    p: usize,
    q: usize,
    s: Vec<f64>,
    lambda: Complex64,
    terms: Vec<Vec<Multivector>>,
}

impl HypermonogenicSeries {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn direction(&self) -> &[f64] {
        &self.s
    }

    pub fn truncation(&self) -> usize {
        self.terms.len() - 1
    }

    /// Polynomial coefficients of f_j.
    pub fn term(&self, j: usize) -> &[Multivector] {
        &self.terms[j]
    }

    /// f_j(y).
    pub fn eval_term(&self, j: usize, y: &[f64]) -> Multivector {
        let t = crate::clifford::dot(y, &self.s);
        let e = (self.lambda * t).exp();
        let mut acc = Multivector::zero(self.dim());
        let mut tn = Complex64::new(1.0, 0.0);
        for c in &self.terms[j] {
            acc += &c.scale(tn * e);
            tn *= t;
        }
        acc
    }

    pub fn is_term_zero(&self, j: usize) -> bool {
        self.terms[j].iter().all(Multivector::is_zero)
    }
}

/// CK extension f_{j+1} = −(−1)^j β_{j+1}^{−1} ∂_y f_j, computed exactly on
/// the exponential-polynomial class where ∂_y(M t^n e^{λt}) = s M (n t^{n−1} + λ t^n) e^{λt}.
pub fn ck_extend(f0: &ClosedClassFunction, p: usize, truncation: usize) -> Result<HypermonogenicSeries> {
    if truncation > MAX_TRUNCATION {
        return Err(Error::InvalidParameter(format!(
            "truncation {truncation} exceeds {MAX_TRUNCATION}"
        )));
    }
    let ClosedClassFunction::ExpLinear { lambda, s, poly } = f0;
    let q = s.len();
    if p < 2 || q < 1 {
        return Err(Error::UnsupportedDimension(format!("CK extension with p={p}, q={q}")));
    }
    let m = p + q;
    crate::clifford::check_dim(m)?;
    if (norm(s) - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter("direction s must be a unit vector".into()));
    }
    let s_emb = Multivector::vector_at(m, p, s);
    let mut terms = Vec::with_capacity(truncation + 1);
    terms.push(poly.iter().map(|&c| Multivector::scalar(m, c)).collect::<Vec<_>>());
    for j in 0..truncation {
        let prev: &Vec<Multivector> = &terms[j];
        let n = prev.len();
        let factor = -(if j % 2 == 0 { 1.0 } else { -1.0 }) / beta(j + 1, p) as f64;
        let mut next = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = prev[k].scale(*lambda);
            if k + 1 < n {
                c += &prev[k + 1].scale((k + 1) as f64);
            }
            next.push(s_emb.product(&c)?.scale(factor));
        }
        while next.last().is_some_and(Multivector::is_zero) {
            next.pop();
        }
        terms.push(next);
    }
    Ok(HypermonogenicSeries {
        p,
        q,
        s: s.clone(),
        lambda: *lambda,
        terms,
    })
}

/// Partial sum together with the size of its last two terms.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesEval {
    pub value: Multivector,
    pub tail: f64,
}

fn check_series_point(series: &HypermonogenicSeries, pt: &BiaxialPoint) -> Result<()> {
    if pt.p() != series.p || pt.q() != series.q {
        return Err(Error::DimensionMismatch {
            left: pt.dim(),
            right: series.dim(),
        });
    }
    Ok(())
}

/// Σ_j x^j f_j(y) with x^{2k} = (−1)^k |x|^{2k}; never fails on a slow tail.
pub fn partial_sum(series: &HypermonogenicSeries, pt: &BiaxialPoint) -> Result<SeriesEval> {
    check_series_point(series, pt)?;
    let m = series.dim();
    let x = pt.embed_x();
    let r2 = pt.r().powi(2);
    let mut acc = MultivectorSum::new(m);
    let mut even_power = 1.0;
    let mut last = [0.0f64; 2];
    for j in 0..=series.truncation() {
        if j > 0 && j % 2 == 0 {
            even_power *= -r2;
        }
        let fj = series.eval_term(j, pt.y());
        let term = if j % 2 == 0 {
            fj.scale(even_power)
        } else {
            x.product(&fj)?.scale(even_power)
        };
        last = [last[1], term.max_norm()];
        acc.add_scaled(&term, 1.0);
    }
    Ok(SeriesEval {
        value: acc.value(),
        tail: last[0].max(last[1]),
    })
}

/// [`partial_sum`] that rejects evaluations whose last terms exceed
/// 1e−14 · max(1, |sum|).
pub fn eval_series(series: &HypermonogenicSeries, pt: &BiaxialPoint) -> Result<SeriesEval> {
    let out = partial_sum(series, pt)?;
    let bound = SERIES_TAIL_TOL * out.value.max_norm().max(1.0);
    if out.tail > bound {
        return Err(Error::NotConverged(format!(
            "series tail {:e} above {:e} at |x| = {}",
            out.tail,
            bound,
            pt.r()
        )));
    }
    Ok(out)
}

/// A = Σ (−1)^k |x|^{2k} f_{2k}(y), B = Σ (−1)^k |x|^{2k+1} f_{2k+1}(y).
pub fn axial_split(series: &HypermonogenicSeries, r: f64, y: &[f64]) -> (Multivector, Multivector) {
    let m = series.dim();
    let mut a = MultivectorSum::new(m);
    let mut b = MultivectorSum::new(m);
    let mut pow = 1.0;
    for j in 0..=series.truncation() {
        if j > 0 {
            pow *= r;
        }
        let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let fj = series.eval_term(j, y);
        if j % 2 == 0 {
            a.add_scaled(&fj, sign * pow);
        } else {
            b.add_scaled(&fj, sign * pow);
        }
    }
    (a.value(), b.value())
}

/// The series viewed as an axial field through [`axial_split`].
pub fn series_axial_field(series: &HypermonogenicSeries) -> Result<AxialField> {
    let sa = Arc::new(series.clone());
    let sb = Arc::clone(&sa);
    AxialField::new(
        series.p,
        series.q,
        Arc::new(move |r, y| Ok(axial_split(&sa, r, y).0)),
        Arc::new(move |r, y| Ok(axial_split(&sb, r, y).1)),
    )
}

/// Bessel-type form of the CK extension of e^{⟨y,s⟩}:
/// Γ(p/2)[Σ (−1)^j|x|^{2j}/(j! 4^j Γ(p/2+j)) + ½ Σ (−1)^j|x|^{2j}/(j! 4^j Γ(p/2+j+1)) x s] e^{⟨y,s⟩}.
pub fn ck_bessel_form(s: &[f64], pt: &BiaxialPoint) -> Result<Multivector> {
    if s.len() != pt.q() || (norm(s) - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter("direction s must be a unit vector of R^q".into()));
    }
    let half_p = 0.5 * pt.p() as f64;
    let r2 = pt.r().powi(2);
    let g = gamma(half_p);
    // term_j = (−r²/4)^j / (j! Γ(p/2 + j)), built by ratios
    let mut term0 = 1.0 / gamma(half_p);
    let mut term1 = 1.0 / gamma(half_p + 1.0);
    let mut s0 = crate::sum::NeumaierSum::new();
    let mut s1 = crate::sum::NeumaierSum::new();
    for j in 0..200 {
        s0.add(term0);
        s1.add(term1);
        let jf = j as f64;
        term0 *= -0.25 * r2 / ((jf + 1.0) * (half_p + jf));
        term1 *= -0.25 * r2 / ((jf + 1.0) * (half_p + jf + 1.0));
        if term0.abs() < 1e-18 * s0.value().abs() && term1.abs() < 1e-18 * s1.value().abs() {
            break;
        }
    }
    let m = pt.dim();
    let xs = pt.embed_x().product(&pt.embed_y_vector(s))?;
    let e = pt.y_dot(s).exp();
    Ok((Multivector::scalar(m, g * s0.value()) + xs.scale(0.5 * g * s1.value())).scale(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn pt(x: &[f64], y: &[f64]) -> BiaxialPoint {
        BiaxialPoint::new(x.to_vec(), y.to_vec()).unwrap()
    }

    fn monogenic_linear(p: usize, s: Vec<f64>) -> impl Fn(&BiaxialPoint) -> Result<Multivector> {
        move |pt: &BiaxialPoint| {
            let m = pt.dim();
            let xs = pt.embed_x().product(&pt.embed_y_vector(&s))?;
            Ok(Multivector::scalar(m, pt.y_dot(&s)) + xs.scale(1.0 / p as f64))
        }
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(2, 3), -2);
        assert_eq!(beta(1, 3), -3);
        assert_eq!(beta(5, 4), -8);
    }

    #[test]
    fn x_power_identity() {
        let mut rng = SplitMix64::new(11);
        for p in 2..=4 {
            for j in 1..=5usize {
                let point = pt(&rng.cube(p), &[0.3]);
                let f = |pt: &BiaxialPoint| {
                    let x = pt.embed_x();
                    let mut acc = Multivector::one(pt.dim());
                    for _ in 0..j {
                        acc = x.product(&acc)?;
                    }
                    Ok(acc)
                };
                let got = dirac_apply_fd(f, &point, 1e-4).unwrap();
                let expect = {
                    let x = point.embed_x();
                    let mut acc = Multivector::one(point.dim());
                    for _ in 1..j {
                        acc = x.product(&acc).unwrap();
                    }
                    acc.scale(beta(j, p) as f64)
                };
                let err = (&got - &expect).max_norm();
                assert!(err < 1e-6 * expect.max_norm().max(1.0), "p={p} j={j} err={err}");
            }
        }
    }

    #[test]
    fn dirac_examples() {
        let point = pt(&[0.3, -0.2, 0.5], &[0.1, 0.4]);
        let c = dirac_apply_fd(|p| Ok(Multivector::scalar(p.dim(), 2.5)), &point, 1e-3).unwrap();
        assert_eq!(c.max_norm(), 0.0);
        let x = dirac_apply_fd(|p| Ok(p.embed_x()), &point, 1e-3).unwrap();
        assert!((x.scalar_part().re + 3.0).abs() < 1e-12);
        assert!((&x - &Multivector::scalar(5, -3.0)).max_norm() < 1e-12);
        let s = vec![0.6, 0.8];
        let f = monogenic_linear(3, s);
        assert!(dirac_apply_fd(f, &point, 1e-3).unwrap().max_norm() < 1e-9);
    }

    #[test]
    fn dirac_rejects_bad_input() {
        let point = pt(&[1e-3, 0.0], &[0.1]);
        assert!(dirac_apply_fd(|p| Ok(p.embed()), &point, 1e-3).is_err());
        let point = pt(&[0.5, 0.0], &[0.1]);
        assert!(dirac_apply_fd(|p| Ok(p.embed()), &point, 0.1).is_err());
        assert!(dirac_apply_fd(|p| Ok(p.embed()), &point, 1e-7).is_err());
    }

    fn linear_axial(p: usize, s: Vec<f64>) -> AxialField {
        let q = s.len();
        let m = p + q;
        let s2 = s.clone();
        AxialField::new(
            p,
            q,
            Arc::new(move |_r, y| Ok(Multivector::scalar(m, crate::clifford::dot(y, &s)))),
            Arc::new(move |r, _y| Ok(Multivector::vector_at(m, p, &s2).scale(r / p as f64))),
        )
        .unwrap()
    }

    #[test]
    fn vekua_examples() {
        let field = linear_axial(3, vec![0.6, 0.8]);
        let (r1, r2) = vekua_residual(&field, 0.7, &[0.2, -0.1], 1e-4).unwrap();
        assert!(r1.max_norm() < 1e-9 && r2.max_norm() < 1e-9);
        let one = AxialField::new(
            2,
            2,
            Arc::new(|_, _| Ok(Multivector::one(4))),
            Arc::new(|_, _| Ok(Multivector::zero(4))),
        )
        .unwrap();
        let (r1, r2) = vekua_residual(&one, 0.5, &[0.0, 0.0], 1e-4).unwrap();
        assert_eq!(r1.max_norm(), 0.0);
        assert_eq!(r2.max_norm(), 0.0);
        assert!(vekua_residual(&one, 1e-4, &[0.0, 0.0], 1e-4).is_err());
    }

    #[test]
    fn axial_eval_on_axis_returns_a() {
        let field = linear_axial(2, vec![1.0, 0.0]);
        let v = field.eval(&pt(&[0.0, 0.0], &[0.5, 0.2])).unwrap();
        assert_eq!(v, Multivector::scalar(4, 0.5));
    }

    #[test]
    fn modified_dirac_examples() {
        let one = modified_dirac_residual(|_, _| Ok(Multivector::one(3)), 3, 0.5, &[0.1, 0.2], 1e-4).unwrap();
        assert_eq!(one.max_norm(), 0.0);
        let e = modified_dirac_residual(
            |_, _| Ok(Multivector::basis_vector(3, 0)),
            3,
            0.5,
            &[0.1, 0.2],
            1e-4,
        )
        .unwrap();
        assert!((&e - &Multivector::scalar(3, -4.0)).max_norm() < 1e-12);
    }

    #[test]
    fn picture_maps_round_trip() {
        let mut mv = Multivector::zero(5);
        mv.set_coeff(0, 1.5);
        mv.set_coeff(0b01000, Complex64::new(0.0, 2.0));
        mv.set_coeff(0b11000, -0.5);
        let pic = to_modified_picture(&mv, 3).unwrap();
        assert_eq!(pic.coeff(0b010), Complex64::new(0.0, 2.0));
        assert_eq!(pic.coeff(0b110), Complex64::new(-0.5, 0.0));
        let back = to_biaxial_picture(&pic, &[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(back, mv);
        assert!(to_modified_picture(&Multivector::basis_vector(5, 0), 3).is_err());
    }

    #[test]
    fn ck_examples() {
        let s = vec![0.6, 0.8];
        let lin = ClosedClassFunction::polynomial(s.clone(), &[0.0, 1.0]).unwrap();
        let series = ck_extend(&lin, 3, 10).unwrap();
        let f1 = series.term(1);
        assert_eq!(f1.len(), 1);
        assert!((&f1[0] - &Multivector::vector_at(5, 3, &s).scale(1.0 / 3.0)).max_norm() < 1e-15);
        for j in 2..=10 {
            assert!(series.is_term_zero(j));
        }
        let one = ClosedClassFunction::polynomial(s.clone(), &[1.0]).unwrap();
        let series = ck_extend(&one, 3, 5).unwrap();
        assert!((1..=5).all(|j| series.is_term_zero(j)));

        let p = 4;
        let exp = ClosedClassFunction::exponential(s.clone()).unwrap();
        let series = ck_extend(&exp, p, 40).unwrap();
        let y = [0.3, -0.2];
        let t = crate::clifford::dot(&y, &s);
        let f1 = series.eval_term(1, &y);
        let want = Multivector::vector_at(6, p, &s).scale(t.exp() / p as f64);
        assert!((&f1 - &want).max_norm() < 1e-14);
        let f2 = series.eval_term(2, &y);
        assert!((&f2 - &Multivector::scalar(6, t.exp() / (2.0 * p as f64))).max_norm() < 1e-14);
        assert!(ck_extend(&exp, p, 61).is_err());
    }

    #[test]
    fn series_on_axis_is_initial_data() {
        let s = vec![1.0, 0.0];
        let exp = ClosedClassFunction::exponential(s.clone()).unwrap();
        let series = ck_extend(&exp, 2, 40).unwrap();
        let out = eval_series(&series, &pt(&[0.0, 0.0], &[0.7, 0.1])).unwrap();
        assert!((&out.value - &Multivector::scalar(4, 0.7f64.exp())).max_norm() < 1e-15);
        assert_eq!(out.tail, 0.0);
    }

    #[test]
    fn series_matches_bessel_form_and_is_monogenic() {
        let s = vec![0.0, 0.6, 0.8];
        let exp = ClosedClassFunction::exponential(s.clone()).unwrap();
        let series = ck_extend(&exp, 3, 40).unwrap();
        let point = pt(&[1.2, -0.5, 0.9], &[0.1, 0.2, -0.3]);
        let a = eval_series(&series, &point).unwrap().value;
        let b = ck_bessel_form(&s, &point).unwrap();
        assert!((&a - &b).max_norm() < 1e-12 * b.max_norm());
        let f = |q: &BiaxialPoint| Ok(eval_series(&series, q)?.value);
        let res = dirac_apply_fd(f, &point, 1e-3).unwrap();
        assert!(res.max_norm() < 1e-6);
    }

    #[test]
    fn footnote_split_matches_series() {
        let s = vec![0.6, 0.8];
        let exp = ClosedClassFunction::exponential(s).unwrap();
        let series = ck_extend(&exp, 3, 40).unwrap();
        let point = pt(&[0.4, -0.3, 0.6], &[0.2, 0.5]);
        let field = series_axial_field(&series).unwrap();
        let direct = eval_series(&series, &point).unwrap().value;
        assert!((&field.eval(&point).unwrap() - &direct).max_norm() < 1e-12);
    }

    #[test]
    fn short_truncation_reports_tail() {
        let s = vec![1.0];
        let exp = ClosedClassFunction::exponential(s).unwrap();
        let series = ck_extend(&exp, 2, 3).unwrap();
        let point = pt(&[1.0, 0.5], &[0.0]);
        assert!(matches!(eval_series(&series, &point), Err(Error::NotConverged(_))));
        assert!(partial_sum(&series, &point).unwrap().tail > 1e-3);
    }

    #[test]
    fn exp_poly_derivative() {
        let f = ExpPoly::new(Complex64::new(2.0, 0.0), vec![1.0.into(), 3.0.into()]);
        let d = f.derivative();
        // (3 + 2(1 + 3t)) = 5 + 6t
        assert_eq!(d.poly, vec![Complex64::new(5.0, 0.0), Complex64::new(6.0, 0.0)]);
        let t = 0.3;
        let fd = (f.eval(t + 1e-6) - f.eval(t - 1e-6)) / 2e-6;
        assert!((fd - d.eval(t)).norm() < 1e-7);
        assert!(ExpPoly::polynomial(&[4.0]).derivative().is_zero());
    }
}
