//! Cauchy formula on the unit ball of R^{p+q} for axial data: the reduced
//! kernel over S^{p−1}, the hemisphere reconstruction of A and B, and the
//! full-ball quadrature used as the reference.

use crate::clifford::{dot, norm, BiaxialPoint, Multivector};
use crate::error::{Error, Result};
use crate::fields::AxialField;
use crate::quadrature::{funk_hecke_constant, sphere_measure, HemisphereRule, SphereRule};
use crate::special::{gamma, gauss_2f1, HypergeometricParams};
use crate::sum::{MultivectorSum, NeumaierSum};

/// Largest |x + y| accepted by the kernel and reconstruction routines.
pub const MAX_INTERIOR_RADIUS: f64 = 0.9;
/// Oracle integrands closer than this to the singularity are rejected.
pub const NEAR_SINGULAR_DISTANCE: f64 = 0.05;

/// Evaluation point (|x|, y) and hemisphere node (θ, ν).
#[derive(Clone, Debug, PartialEq)]
pub struct KernelParams {
    pub p: usize,
    pub q: usize,
    pub r: f64,
    pub y: Vec<f64>,
    pub theta: f64,
    pub nu: Vec<f64>,
}

impl KernelParams {
    pub fn new(p: usize, r: f64, y: Vec<f64>, theta: f64, nu: Vec<f64>) -> Result<Self> {
        let q = y.len();
        if p < 2 || q < 2 || nu.len() != q {
            return Err(Error::UnsupportedDimension(format!(
                "kernel needs p, q >= 2 and matching ν, got p={p}, q={q}, |ν|={}",
                nu.len()
            )));
        }
        if !(r >= 0.0) || !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(Error::InvalidParameter(format!("r={r}, theta={theta} out of range")));
        }
        if (norm(&nu) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter("ν must be a unit vector".into()));
        }
        Ok(Self { p, q, r, y, theta, nu })
    }

    /// |x + y|.
    pub fn point_norm(&self) -> f64 {
        (self.r * self.r + dot(&self.y, &self.y)).sqrt()
    }

    /// |y − sinθ ν|².
    fn u2(&self) -> f64 {
        let s = self.theta.sin();
        self.y.iter().zip(&self.nu).map(|(a, b)| (a - s * b).powi(2)).sum()
    }

    /// τ = r² + cos²θ + |y − sinθ ν|².
    pub fn tau(&self) -> f64 {
        self.r * self.r + self.theta.cos().powi(2) + self.u2()
    }

    /// z = 4 r cosθ / (τ + 2 r cosθ).
    pub fn z(&self) -> f64 {
        let rc = self.r * self.theta.cos();
        4.0 * rc / (self.tau() + 2.0 * rc)
    }
}

fn check_interior(norm: f64) -> Result<()> {
    if !(norm <= MAX_INTERIOR_RADIUS) {
        return Err(Error::Domain(format!(
            "|x+y| = {norm} exceeds {MAX_INTERIOR_RADIUS}"
        )));
    }
    Ok(())
}

/// (I, I₁) with I = ∫ dS(ω)/|x+y−cosθω−sinθν|^{p+q} and
/// I₁ = ∫ ⟨x/|x|, ω⟩ dS(ω)/|x+y−cosθω−sinθν|^{p+q}, both over S^{p−1}.
///
/// With a = (p+q)/2, b = (p−1)/2 and C = κ_p 2^{p−2} Γ(b)²/Γ(p−1):
/// I = C (τ + 2r cosθ)^{−a} ₂F₁(a, b; 2b; z),
/// I₁ = C (τ + 2r cosθ)^{−a} [₂F₁(a, b+1; 2b+1; z) − ₂F₁(a, b; 2b; z)].
pub fn kernel_pair_closed(kp: &KernelParams) -> Result<(f64, f64)> {
    check_interior(kp.point_norm())?;
    let z = kp.z();
    if !(z < 1.0) {
        return Err(Error::Domain(format!("kernel argument z = {z} >= 1")));
    }
    let p = kp.p as f64;
    let a = 0.5 * (p + kp.q as f64);
    let b = 0.5 * (p - 1.0);
    let constant = funk_hecke_constant(kp.p) * 2f64.powf(p - 2.0) * gamma(b).powi(2) / gamma(p - 1.0);
    let scale = constant * (kp.tau() + 2.0 * kp.r * kp.theta.cos()).powf(-a);
    let f0 = gauss_2f1(HypergeometricParams::new(a, b, 2.0 * b, z))?;
    let f1 = if z == 0.0 {
        f0
    } else {
        gauss_2f1(HypergeometricParams::new(a, b + 1.0, 2.0 * b + 1.0, z))?
    };
    Ok((scale * f0, scale * (f1 - f0)))
}

pub fn kernel_i_closed(kp: &KernelParams) -> Result<f64> {
    Ok(kernel_pair_closed(kp)?.0)
}

pub fn kernel_i_odd_closed(kp: &KernelParams) -> Result<f64> {
    Ok(kernel_pair_closed(kp)?.1)
}

/// Direct quadrature of both kernels; ω runs over `rule` on S^{p−1}.
pub fn kernel_pair_oracle(
    x: &[f64],
    y: &[f64],
    theta: f64,
    nu: &[f64],
    rule: &SphereRule,
) -> Result<(f64, f64)> {
    let (p, q) = (x.len(), y.len());
    if rule.dim() != p || nu.len() != q {
        return Err(Error::DimensionMismatch { left: rule.dim(), right: p });
    }
    let m = (p + q) as i32;
    let (st, ct) = theta.sin_cos();
    let r = norm(x);
    let xi: Vec<f64> = if r > 0.0 { x.iter().map(|v| v / r).collect() } else { vec![0.0; p] };
    let u2: f64 = y.iter().zip(nu).map(|(a, b)| (a - st * b).powi(2)).sum();
    let mut i0 = NeumaierSum::new();
    let mut i1 = NeumaierSum::new();
    let mut min_dist = f64::INFINITY;
    for (omega, w) in rule.iter() {
        let d2: f64 = x.iter().zip(omega).map(|(a, b)| (a - ct * b).powi(2)).sum::<f64>() + u2;
        let d = d2.sqrt();
        min_dist = min_dist.min(d);
        let k = w / d.powi(m);
        i0.add(k);
        i1.add(k * dot(&xi, omega));
    }
    if min_dist < NEAR_SINGULAR_DISTANCE {
        return Err(Error::NearSingular(min_dist));
    }
    Ok((i0.value(), i1.value()))
}

pub fn kernel_i_oracle(x: &[f64], y: &[f64], theta: f64, nu: &[f64], rule: &SphereRule) -> Result<f64> {
    Ok(kernel_pair_oracle(x, y, theta, nu, rule)?.0)
}

pub fn kernel_i_odd_oracle(x: &[f64], y: &[f64], theta: f64, nu: &[f64], rule: &SphereRule) -> Result<f64> {
    Ok(kernel_pair_oracle(x, y, theta, nu, rule)?.1)
}

/// Reconstructed A, B at one interior point, together with two reduced
/// variants that drop the odd kernel I₁.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    /// Full reduction, including the I₁ terms.
    pub a: Multivector,
    pub b: Multivector,
    /// I-only reduction: (1/λ)∬ I (A + y(sinθνA − cosθB)) dΓ.
    pub a_even: Multivector,
    /// I-only reduction: (|x|/λ)∬ I (sinθνA − cosθB) dΓ.
    pub b_even: Multivector,
    /// I-only reduction without the cosθB term: (|x|/λ)∬ I sinθνA dΓ.
    pub b_short: Multivector,
}

impl Reconstruction {
    /// a + (x/|x|) b; `a` alone on the axis.
    pub fn assemble(&self, pt: &BiaxialPoint) -> Result<Multivector> {
        assemble_axial(&self.a, &self.b, pt)
    }
}

pub fn assemble_axial(a: &Multivector, b: &Multivector, pt: &BiaxialPoint) -> Result<Multivector> {
    match pt.unit_x() {
        None => Ok(a.clone()),
        Some(w) => Ok(a + &Multivector::vector(pt.dim(), &w).product(b)?),
    }
}

/// Hemisphere reconstruction of A(|x|, y) and B(|x|, y) from the boundary
/// values A(cosθ, sinθν), B(cosθ, sinθν).
///
/// With P = sinθνA − cosθB, Q = cosθA − sinθνB and u = y − sinθν, the ω
/// integral of (x+y−η) η f(η)/|x+y−η|^{p+q} over S^{p−1} is
/// I(cosθQ + uP) − rI₁Q + (x/|x|)(rIP − I₁(cosθP + uQ)).
pub fn reconstruct_ab(field: &AxialField, pt: &BiaxialPoint, hrule: &HemisphereRule) -> Result<Reconstruction> {
    let (p, q, m) = (field.p(), field.q(), field.dim());
    if pt.p() != p || pt.q() != q || hrule.p() != p || hrule.q() != q {
        return Err(Error::DimensionMismatch { left: pt.dim(), right: m });
    }
    check_interior(pt.norm())?;
    let r = pt.r();
    let y = pt.y();
    let y_emb = pt.embed_y();
    let mut acc: Vec<MultivectorSum> = (0..5).map(|_| MultivectorSum::new(m)).collect();
    let mut bnd = vec![0.0; q];
    for &(theta, wt) in hrule.theta() {
        let (st, ct) = theta.sin_cos();
        for (nu, wn) in hrule.nu().iter() {
            for (slot, v) in bnd.iter_mut().zip(nu) {
                *slot = st * v;
            }
            let a = field.a(ct, &bnd)?;
            let b = field.b(ct, &bnd)?;
            let nu_emb = Multivector::vector_at(m, p, nu);
            let u = &y_emb - &nu_emb.scale(st);
            let nu_a = nu_emb.product(&a)?;
            let nu_b = nu_emb.product(&b)?;
            let pp = &nu_a.scale(st) - &b.scale(ct);
            let qq = &a.scale(ct) - &nu_b.scale(st);
            let kp = KernelParams::new(p, r, y.to_vec(), theta, nu.to_vec())?;
            let (i0, i1) = kernel_pair_closed(&kp)?;
            let w = wt * wn;

            let even_a = &a + &y_emb.product(&pp)?;
            let full_a = &(&qq.scale(ct) + &u.product(&pp)?).scale(i0) - &qq.scale(r * i1);
            let full_b = &pp.scale(r * i0) - &(&pp.scale(ct) + &u.product(&qq)?).scale(i1);
            acc[0].add_scaled(&full_a, w);
            acc[1].add_scaled(&full_b, w);
            acc[2].add_scaled(&even_a, w * i0);
            acc[3].add_scaled(&pp, w * r * i0);
            acc[4].add_scaled(&nu_a, w * r * i0 * st);
        }
    }
    let norm_const = 1.0 / sphere_measure(m);
    let mut out = acc.iter().map(|s| s.value().scale(norm_const));
    Ok(Reconstruction {
        a: out.next().unwrap(),
        b: out.next().unwrap(),
        a_even: out.next().unwrap(),
        b_even: out.next().unwrap(),
        b_short: out.next().unwrap(),
    })
}

/// f(X) = (1/λ_{m−1}) ∫_{S^{m−1}} (X−η)/|X−η|^m η f(η) dS(η) by direct
/// quadrature over `rule` on S^{p+q−1}.
pub fn cauchy_full_ball<F>(f_boundary: F, pt: &BiaxialPoint, rule: &SphereRule) -> Result<Multivector>
where
    F: Fn(&BiaxialPoint) -> Result<Multivector>,
{
    let m = pt.dim();
    if rule.dim() != m {
        return Err(Error::DimensionMismatch { left: rule.dim(), right: m });
    }
    check_interior(pt.norm())?;
    let xv = pt.flat();
    let x_emb = pt.embed();
    let mut acc = MultivectorSum::new(m);
    for (eta, w) in rule.iter() {
        let d = xv.iter().zip(eta).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let eta_emb = Multivector::vector(m, eta);
        let value = f_boundary(&BiaxialPoint::from_flat(pt.p(), eta)?)?;
        let kernel = &x_emb - &eta_emb;
        let term = kernel.product(&eta_emb.product(&value)?)?;
        acc.add_scaled(&term, w / d.powi(m as i32));
    }
    Ok(acc.value().scale(1.0 / sphere_measure(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{constant_field, linear_field};
    use crate::planewave::{hpw_exp_axial, hpw_exp_closed};
    use crate::quadrature::{hemisphere_rule, sphere_rule};
    use std::f64::consts::FRAC_PI_2;

    fn pt(x: &[f64], y: &[f64]) -> BiaxialPoint {
        BiaxialPoint::new(x.to_vec(), y.to_vec()).unwrap()
    }

    #[test]
    fn kernel_at_origin_is_sphere_measure() {
        for (p, q) in [(2, 2), (3, 2), (2, 3)] {
            let y = vec![0.1; q];
            let mut nu = vec![0.0; q];
            nu[0] = 1.0;
            let kp = KernelParams::new(p, 0.0, y.clone(), 0.7, nu.clone()).unwrap();
            let want = sphere_measure(p) * kp.tau().powf(-0.5 * (p + q) as f64);
            let (i0, i1) = kernel_pair_closed(&kp).unwrap();
            assert!((i0 - want).abs() < 1e-13 * want);
            assert_eq!(i1, 0.0);
            let rule = sphere_rule(p, 16).unwrap();
            let o = kernel_i_oracle(&vec![0.0; p], &y, 0.7, &nu, &rule).unwrap();
            assert!((o - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn kernel_closed_matches_oracle() {
        for (p, q) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let rule = sphere_rule(p, 64).unwrap();
            let mut nu = vec![0.0; q];
            nu[q - 1] = 1.0;
            let y: Vec<f64> = (0..q).map(|i| 0.1 * i as f64 - 0.05).collect();
            for &r in &[0.1, 0.35, 0.6] {
                for &theta in &[0.2, 0.8, 1.4] {
                    let mut x = vec![0.0; p];
                    x[0] = r * 0.6;
                    x[1] = r * 0.8;
                    let kp = KernelParams::new(p, r, y.clone(), theta, nu.clone()).unwrap();
                    let (c0, c1) = kernel_pair_closed(&kp).unwrap();
                    let (o0, o1) = kernel_pair_oracle(&x, &y, theta, &nu, &rule).unwrap();
                    assert!((c0 - o0).abs() < 1e-10 * c0.max(1.0), "p={p} q={q} r={r} θ={theta}");
                    assert!((c1 - o1).abs() < 1e-10 * c0.max(1.0), "odd p={p} q={q} r={r} θ={theta}");
                }
            }
        }
    }

    #[test]
    fn kernel_theta_half_pi() {
        let kp = KernelParams::new(2, 0.4, vec![0.1, 0.0], FRAC_PI_2, vec![1.0, 0.0]).unwrap();
        assert!(kp.z() < 1e-15);
        let want = sphere_measure(2) * (0.16 + 0.81f64).powf(-2.0);
        assert!((kernel_i_closed(&kp).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn kernel_domain_errors() {
        let kp = KernelParams::new(2, 0.8, vec![0.5, 0.0], 0.3, vec![1.0, 0.0]).unwrap();
        assert!(matches!(kernel_i_closed(&kp), Err(Error::Domain(_))));
        let rule = sphere_rule(2, 64).unwrap();
        let r = kernel_i_oracle(&[0.97, 0.0], &[0.0, 0.0], 0.0, &[1.0, 0.0], &rule);
        assert!(matches!(r, Err(Error::NearSingular(_))));
    }

    #[test]
    fn oracle_is_zonal() {
        let rule = sphere_rule(3, 32).unwrap();
        let y = [0.1, 0.2];
        let nu = [0.6, 0.8];
        let a = kernel_i_oracle(&[0.3, 0.0, 0.0], &y, 0.5, &nu, &rule).unwrap();
        let b = kernel_i_oracle(&[0.0, 0.18, 0.24], &y, 0.5, &nu, &rule).unwrap();
        assert!((a - b).abs() < 1e-10 * a);
    }

    #[test]
    fn reconstruction_of_test_fields() {
        let s = [0.6, 0.8];
        let hrule = hemisphere_rule(2, 2, 48).unwrap();
        let point = pt(&[0.2, -0.1], &[0.15, 0.25]);
        let fields = [
            constant_field(2, 2, 1.0).unwrap(),
            linear_field(2, &s).unwrap(),
            hpw_exp_axial(2, &s).unwrap(),
        ];
        for field in &fields {
            let rec = reconstruct_ab(field, &point, &hrule).unwrap();
            let a = field.a(point.r(), point.y()).unwrap();
            let b = field.b(point.r(), point.y()).unwrap();
            assert!((&rec.a - &a).max_norm() < 1e-8, "{:?}", (&rec.a - &a).max_norm());
            assert!((&rec.b - &b).max_norm() < 1e-8, "{:?}", (&rec.b - &b).max_norm());
        }
        let direct = hpw_exp_closed(&point, &s).unwrap();
        let rec = reconstruct_ab(&fields[2], &point, &hrule).unwrap();
        assert!((&rec.assemble(&point).unwrap() - &direct).max_norm() < 1e-8);
    }

    #[test]
    fn full_ball_reproduces_fields() {
        let s = [0.6, 0.8];
        let rule = sphere_rule(4, 32).unwrap();
        let point = pt(&[0.2, -0.1], &[0.15, 0.25]);
        let one = cauchy_full_ball(|q| Ok(Multivector::one(q.dim())), &point, &rule).unwrap();
        assert!((&one - &Multivector::one(4)).max_norm() < 1e-10);
        let field = linear_field(2, &s).unwrap();
        let got = cauchy_full_ball(|q| field.eval(q), &point, &rule).unwrap();
        let want = field.eval(&point).unwrap();
        assert!((&got - &want).max_norm() < 1e-10);
    }
}
