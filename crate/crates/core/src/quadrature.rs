//! Gauss–Jacobi interval rules, product rules on S^{d−1}, and the
//! hemisphere product rule S^{p+q−1} = S^{p−1} × S^{q−1} × [0, π/2].

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::special::{gamma, gegenbauer_normalized, pochhammer};
use crate::sum::NeumaierSum;

/// Default number of nodes per one-dimensional factor.
pub const DEFAULT_RESOLUTION: usize = 64;

/// |S^{d−1}| = 2π^{d/2}/Γ(d/2); `d = 1` gives the counting measure 2 of S⁰.
pub fn sphere_measure(d: usize) -> f64 {
    assert!(d >= 1, "sphere of dimension d-1 needs d >= 1");
    let h = 0.5 * d as f64;
    2.0 * PI.powf(h) / gamma(h)
}

/// Funk–Hecke prefactor for zonal integrals over S^{m−1}: κ_m = |S^{m−2}|.
pub fn funk_hecke_constant(m: usize) -> f64 {
    assert!(m >= 2, "Funk-Hecke needs m >= 2");
    sphere_measure(m - 1)
}

/// Gauss rule on (−1, 1) for the weight (1−t)^α (1+t)^β.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    alpha: f64,
    beta: f64,
}

impl IntervalRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Exponent α of (1−t)^α; equals the symmetric exponent of (1−t²)^α
    /// when the rule is symmetric.
    pub fn weight_exponent(&self) -> f64 {
        self.alpha
    }

    pub fn exponents(&self) -> (f64, f64) {
        (self.alpha, self.beta)
    }

    pub fn total_weight(&self) -> f64 {
        NeumaierSum::from_iter(self.weights.iter().copied()).value()
    }

    /// Σ w_i f(t_i).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .collect::<NeumaierSum>()
            .value()
    }
}

/// ∫_{−1}^{1} (1−t)^α (1+t)^β dt.
pub fn jacobi_moment(alpha: f64, beta: f64) -> f64 {
    2f64.powf(alpha + beta + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(alpha + beta + 2.0)
}

/// Golub–Welsch nodes and weights for (1−t)^α (1+t)^β.
pub fn gauss_jacobi_general(n: usize, alpha: f64, beta: f64) -> Result<IntervalRule> {
    if n == 0 {
        return Err(Error::InvalidParameter("interval rule needs n >= 1".into()));
    }
    if !(alpha > -1.0) || !(beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Jacobi exponents must exceed -1, got alpha={alpha}, beta={beta}"
        )));
    }
    let ab = alpha + beta;
    let mu0 = jacobi_moment(alpha, beta);
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            let s = 2.0 * kf + ab;
            (beta * beta - alpha * alpha) / (s * (s + 2.0))
        };
        jac[(k, k)] = diag;
        if k + 1 < n {
            let m = kf + 1.0;
            let s = 2.0 * m + ab;
            // the m = 1 entry is written with (1+α+β) cancelled so the
            // Chebyshev case α+β = −1 stays finite
            let off_sq = if k == 0 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * m * (m + alpha) * (m + beta) * (m + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            let off = off_sq.sqrt();
            jac[(k, k + 1)] = off;
            jac[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(IntervalRule {
        nodes,
        weights,
        alpha,
        beta,
    })
}

/// Gauss–Jacobi rule for the symmetric weight (1−t²)^α.
pub fn gauss_jacobi_rule(n: usize, alpha: f64) -> Result<IntervalRule> {
    let mut rule = gauss_jacobi_general(n, alpha, alpha)?;
    // symmetrise: the eigen solver leaves tiny asymmetries
    let len = rule.nodes.len();
    for i in 0..len / 2 {
        let j = len - 1 - i;
        let t = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        let w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -t;
        rule.nodes[j] = t;
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if len % 2 == 1 {
        rule.nodes[len / 2] = 0.0;
    }
    Ok(rule)
}

pub fn gauss_legendre(n: usize) -> Result<IntervalRule> {
    gauss_jacobi_rule(n, 0.0)
}

type RuleKey = (usize, u64, u64);

/// Process-wide cache of Jacobi rules, keyed by (n, α bits, β bits).
pub fn cached_jacobi_rule(n: usize, alpha: f64, beta: f64) -> Result<Arc<IntervalRule>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<IntervalRule>>>> = OnceLock::new();
    let key = (n, alpha.to_bits(), beta.to_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().expect("rule cache").get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(if alpha == beta {
        gauss_jacobi_rule(n, alpha)?
    } else {
        gauss_jacobi_general(n, alpha, beta)?
    });
    cache
        .lock()
        .expect("rule cache")
        .entry(key)
        .or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

pub const MAX_SPHERE_DIM: usize = 6;
/// Largest product rule built; about res^{d−1} points.
pub const MAX_SPHERE_POINTS: usize = 1 << 24;

/// Product rule on S^{d−1} ⊂ R^d. Points are stored flat with stride `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereRule {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl SphereRule {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.points.chunks_exact(self.dim).zip(self.weights.iter().copied())
    }

    pub fn total_weight(&self) -> f64 {
        NeumaierSum::from_iter(self.weights.iter().copied()).value()
    }

    pub fn integrate<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.iter().map(|(pt, w)| w * f(pt)).collect::<NeumaierSum>().value()
    }
}

/// Product rule on S^{d−1}.
///
/// d = 1: the two points ±1 with unit weight. d = 2: `resolution` equally
/// spaced angles. d ≥ 3: η = (t, √(1−t²) ξ) with t from a Gauss–Jacobi rule
/// for (1−t²)^{(d−3)/2} and ξ from the rule on S^{d−2}.
pub fn sphere_rule(d: usize, resolution: usize) -> Result<SphereRule> {
    if d == 0 || d > MAX_SPHERE_DIM {
        return Err(Error::UnsupportedDimension(format!(
            "sphere rules exist for 1 <= d <= {MAX_SPHERE_DIM}, got d = {d}"
        )));
    }
    if resolution < 2 {
        return Err(Error::InvalidParameter(format!(
            "sphere resolution must be >= 2, got {resolution}"
        )));
    }
    let count = (resolution as f64).powi(d as i32 - 1);
    if d >= 3 && count > MAX_SPHERE_POINTS as f64 {
        return Err(Error::InvalidParameter(format!(
            "sphere rule on S^{} at resolution {resolution} needs {count:e} points, limit {MAX_SPHERE_POINTS}",
            d - 1
        )));
    }
    match d {
        1 => Ok(SphereRule {
            dim: 1,
            points: vec![-1.0, 1.0],
            weights: vec![1.0, 1.0],
        }),
        2 => {
            let w = 2.0 * PI / resolution as f64;
            let mut points = Vec::with_capacity(2 * resolution);
            for k in 0..resolution {
                let phi = 2.0 * PI * k as f64 / resolution as f64;
                points.push(phi.cos());
                points.push(phi.sin());
            }
            Ok(SphereRule {
                dim: 2,
                points,
                weights: vec![w; resolution],
            })
        }
        _ => {
            let inner = sphere_rule(d - 1, resolution)?;
            let axis = gauss_jacobi_rule(resolution, 0.5 * (d as f64 - 3.0))?;
            let n = axis.len() * inner.len();
            let mut points = Vec::with_capacity(n * d);
            let mut weights = Vec::with_capacity(n);
            for (&t, &wt) in axis.nodes().iter().zip(axis.weights()) {
                let c = (1.0 - t * t).max(0.0).sqrt();
                for (xi, wx) in inner.iter() {
                    points.push(t);
                    points.extend(xi.iter().map(|v| c * v));
                    weights.push(wt * wx);
                }
            }
            Ok(SphereRule { dim: d, points, weights })
        }
    }
}

/// Rules for one Funk–Hecke comparison on S^{m−1}.
#[derive(Clone, Debug)]
pub struct FunkHeckeRules {
    pub sphere: SphereRule,
    pub interval: IntervalRule,
}

impl FunkHeckeRules {
    pub fn new(m: usize, resolution: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::UnsupportedDimension(format!("Funk-Hecke needs m >= 2, got {m}")));
        }
        Ok(Self {
            sphere: sphere_rule(m, resolution)?,
            interval: gauss_jacobi_rule(resolution, 0.5 * (m as f64 - 3.0))?,
        })
    }

    pub fn m(&self) -> usize {
        self.sphere.dim()
    }
}

/// The fixed harmonics used by [`funk_hecke_check`]: 1, η₁, η₁η₂.
pub fn test_harmonic(k: usize, eta: &[f64]) -> f64 {
    match k {
        0 => 1.0,
        1 => eta[0],
        2 => eta[0] * eta[1],
        _ => unreachable!("harmonic degree checked by caller"),
    }
}

/// Both sides of the Funk–Hecke identity for the pole ξ:
/// lhs = ∫_{S^{m−1}} ψ(⟨ξ,η⟩) H_k(η) dS(η) by sphere quadrature,
/// rhs = κ_m (k!/(m−2)_k) H_k(ξ) ∫ ψ(t) C_k^{m/2−1}(t) (1−t²)^{(m−3)/2} dt.
pub fn funk_hecke_check_at<F: Fn(f64) -> f64>(
    psi: F,
    k: usize,
    xi: &[f64],
    rules: &FunkHeckeRules,
) -> Result<(f64, f64)> {
    let m = rules.m();
    if k > 2 {
        return Err(Error::InvalidParameter(format!("harmonic degree {k} > 2")));
    }
    if !(2..=MAX_SPHERE_DIM).contains(&m) {
        return Err(Error::UnsupportedDimension(format!("Funk-Hecke with m = {m}")));
    }
    if xi.len() != m || (crate::clifford::norm(xi) - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter("pole must be a unit vector of R^m".into()));
    }
    let expected_alpha = 0.5 * (m as f64 - 3.0);
    if rules.interval.exponents() != (expected_alpha, expected_alpha) {
        return Err(Error::InvalidParameter(
            "interval rule exponent does not match (m-3)/2".into(),
        ));
    }
    let lhs = rules
        .sphere
        .integrate(|eta| psi(crate::clifford::dot(xi, eta)) * test_harmonic(k, eta));
    let mut radial = NeumaierSum::new();
    for (&t, &w) in rules.interval.nodes().iter().zip(rules.interval.weights()) {
        radial.add(w * psi(t) * gegenbauer_normalized(k, m, t)?);
    }
    let rhs = funk_hecke_constant(m) * test_harmonic(k, xi) * radial.value();
    Ok((lhs, rhs))
}

/// Funk–Hecke check with the default poles: e₁ for k ≤ 1 and
/// (e₁+e₂)/√2 for k = 2, so that H_k(ξ) ≠ 0.
pub fn funk_hecke_check<F: Fn(f64) -> f64>(
    psi: F,
    k: usize,
    m: usize,
    rules: &FunkHeckeRules,
) -> Result<(f64, f64)> {
    if m != rules.m() {
        return Err(Error::DimensionMismatch {
            left: m,
            right: rules.m(),
        });
    }
    let mut xi = vec![0.0; m];
    if k == 2 {
        xi[0] = std::f64::consts::FRAC_1_SQRT_2;
        xi[1] = std::f64::consts::FRAC_1_SQRT_2;
    } else {
        xi[0] = 1.0;
    }
    funk_hecke_check_at(psi, k, &xi, rules)
}

/// Node of the hemisphere rule: η = cos θ ω + sin θ ν.
#[derive(Clone, Copy, Debug)]
pub struct HemisphereNode<'a> {
    pub theta: f64,
    pub omega: &'a [f64],
    pub nu: &'a [f64],
    pub weight: f64,
}

/// Tensor rule on S^{p−1} × S^{q−1} × [0, π/2] with the surface factor
/// cos^{p−1}θ sin^{q−1}θ folded into the θ weights.
#[derive(Clone, Debug)]
pub struct HemisphereRule {
    p: usize,
    q: usize,
    theta: Vec<(f64, f64)>,
    omega: SphereRule,
    nu: SphereRule,
}

impl HemisphereRule {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// (θ, w_θ) pairs; weights include cos^{p−1}θ sin^{q−1}θ.
    pub fn theta(&self) -> &[(f64, f64)] {
        &self.theta
    }

    pub fn omega(&self) -> &SphereRule {
        &self.omega
    }

    pub fn nu(&self) -> &SphereRule {
        &self.nu
    }

    pub fn len(&self) -> usize {
        self.theta.len() * self.omega.len() * self.nu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn nodes(&self) -> impl Iterator<Item = HemisphereNode<'_>> + '_ {
        self.theta.iter().flat_map(move |&(theta, wt)| {
            self.nu.iter().flat_map(move |(nu, wn)| {
                self.omega.iter().map(move |(omega, wo)| HemisphereNode {
                    theta,
                    omega,
                    nu,
                    weight: wt * wn * wo,
                })
            })
        })
    }

    /// The point cos θ ω + sin θ ν of S^{p+q−1}.
    pub fn eta(node: &HemisphereNode<'_>) -> Vec<f64> {
        let (s, c) = node.theta.sin_cos();
        node.omega
            .iter()
            .map(|v| c * v)
            .chain(node.nu.iter().map(|v| s * v))
            .collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.nodes().map(|n| n.weight).collect::<NeumaierSum>().value()
    }

    /// ∫_{S^{p+q−1}} f dS through the hemisphere parametrisation.
    pub fn integrate<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.nodes()
            .map(|n| n.weight * f(&Self::eta(&n)))
            .collect::<NeumaierSum>()
            .value()
    }
}

/// Hemisphere product rule for p, q ≥ 2 with `resolution` Gauss–Legendre
/// nodes on [0, π/2].
pub fn hemisphere_rule(p: usize, q: usize, resolution: usize) -> Result<HemisphereRule> {
    if p < 2 || q < 2 {
        return Err(Error::UnsupportedDimension(format!(
            "hemisphere rule needs p, q >= 2, got p={p}, q={q}"
        )));
    }
    let gl = gauss_legendre(resolution)?;
    let half = 0.25 * PI;
    let theta = gl
        .nodes()
        .iter()
        .zip(gl.weights())
        .map(|(&t, &w)| {
            let th = half * (t + 1.0);
            let (s, c) = th.sin_cos();
            (th, half * w * c.powi(p as i32 - 1) * s.powi(q as i32 - 1))
        })
        .collect();
    Ok(HemisphereRule {
        p,
        q,
        theta,
        omega: sphere_rule(p, resolution)?,
        nu: sphere_rule(q, resolution)?,
    })
}

/// Reference value ∫_{−1}^{1} t^{2j}(1−t²)^α dt = Γ(j+½)Γ(α+1)/Γ(j+α+3/2).
pub fn even_moment(j: usize, alpha: f64) -> f64 {
    let jf = j as f64;
    gamma(jf + 0.5) * gamma(alpha + 1.0) / gamma(jf + alpha + 1.5)
}

/// k!/(m−2)_k, the Funk–Hecke normalisation (1 at m = 2 by the Chebyshev limit).
pub fn funk_hecke_normalisation(k: usize, m: usize) -> f64 {
    if m == 2 {
        return 1.0;
    }
    let factorial: f64 = (1..=k).map(|i| i as f64).product();
    factorial / pochhammer(m as f64 - 2.0, k)
}
