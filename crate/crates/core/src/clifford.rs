//! Dense multivectors of the complex Clifford algebra C_m with e_i² = −1.
//!
//! Coefficients are indexed by blade bitmask: bit `i` set means generator
//! `e_{i+1}` is present, factors in increasing order. For the biaxial splitting
//! R^p × R^q the x-variable lives on bits `0..p` and the y-variable on bits
//! `p..p+q`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported number of generators.
pub const MAX_DIM: usize = 12;

/// Sign of `e_A e_B` for blade bitmasks `a`, `b`, including the factor
/// `(−1)^{|A∩B|}` from the squares.
#[inline]
pub fn blade_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Human-readable blade name: `1` for the scalar, otherwise e.g. `e1e3`.
pub fn blade_name(mask: usize) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut s = String::new();
    let mut i = 0;
    let mut m = mask;
    while m != 0 {
        if m & 1 == 1 {
            s.push_str(&format!("e{}", i + 1));
        }
        m >>= 1;
        i += 1;
    }
    s
}

#[derive(Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<Complex64>,
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() != 0.0)
            .map(|(m, c)| format!("({}){}", c, blade_name(m)))
            .collect();
        if terms.is_empty() {
            write!(f, "Multivector[{}](0)", self.dim)
        } else {
            write!(f, "Multivector[{}]({})", self.dim, terms.join(" + "))
        }
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::UnsupportedDimension(format!(
            "{dim} generators (supported: 1..={MAX_DIM})"
        )));
    }
    Ok(())
}

impl Multivector {
    /// Zero element. Panics if `dim` is outside `1..=MAX_DIM`.
    pub fn zero(dim: usize) -> Self {
        check_dim(dim).expect("multivector dimension");
        Self {
            dim,
            coeffs: vec![Complex64::new(0.0, 0.0); 1 << dim],
        }
    }

    pub fn try_zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::zero(dim))
    }

    pub fn scalar(dim: usize, value: impl Into<Complex64>) -> Self {
        let mut mv = Self::zero(dim);
        mv.coeffs[0] = value.into();
        mv
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, 1.0)
    }

    /// Blade with mask `mask` and coefficient `value`.
    pub fn blade(dim: usize, mask: usize, value: impl Into<Complex64>) -> Self {
        let mut mv = Self::zero(dim);
        assert!(mask < (1 << dim), "blade mask out of range");
        mv.coeffs[mask] = value.into();
        mv
    }

    /// Generator `e_{index+1}` (zero-based index).
    pub fn basis_vector(dim: usize, index: usize) -> Self {
        assert!(index < dim, "generator index out of range");
        Self::blade(dim, 1 << index, 1.0)
    }

    /// Real vector `Σ v_i e_{offset+i+1}`.
    pub fn vector_at(dim: usize, offset: usize, v: &[f64]) -> Self {
        assert!(offset + v.len() <= dim, "vector does not fit the algebra");
        let mut mv = Self::zero(dim);
        for (i, &vi) in v.iter().enumerate() {
            mv.coeffs[1 << (offset + i)] = Complex64::new(vi, 0.0);
        }
        mv
    }

    /// Real vector on the leading generators.
    pub fn vector(dim: usize, v: &[f64]) -> Self {
        Self::vector_at(dim, 0, v)
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if coeffs.len() != 1 << dim {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                1 << dim,
                coeffs.len()
            )));
        }
        Ok(Self { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> Complex64 {
        self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, value: impl Into<Complex64>) {
        self.coeffs[mask] = value.into();
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Largest coefficient modulus ("max blade norm").
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Euclidean norm of the coefficient array.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> Self {
        let f = factor.into();
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// Geometric product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len()];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.re == 0.0 && ca.im == 0.0 {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.re == 0.0 && cb.im == 0.0 {
                    continue;
                }
                out[a ^ b] += ca * cb * blade_sign(a, b);
            }
        }
        Ok(Self {
            dim: self.dim,
            coeffs: out,
        })
    }

    /// Grade-`k` part.
    pub fn grade_project(&self, k: usize) -> Result<Self> {
        if k > self.dim {
            return Err(Error::GradeOutOfRange {
                grade: k,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim);
        for (m, c) in self.coeffs.iter().enumerate() {
            if m.count_ones() as usize == k {
                out.coeffs[m] = *c;
            }
        }
        Ok(out)
    }

    pub fn is_vector(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(m, c)| m.count_ones() == 1 || (c.re == 0.0 && c.im == 0.0))
    }

    /// Grade involution: the grade-k part is multiplied by (−1)^k.
    pub fn involute(&self) -> Self {
        let mut out = self.clone();
        for (m, c) in out.coeffs.iter_mut().enumerate() {
            if m.count_ones() % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    /// Split of `x a` into (x·a, x∧a) for a grade-1 `x`.
    ///
    /// Each pair (e_i, e_A) contributes either to the contraction (i ∈ A) or
    /// to the extension (i ∉ A), so the two halves always sum to the product
    /// coefficient by coefficient.
    pub fn vector_split(x: &Self, a: &Self) -> Result<(Self, Self)> {
        x.same_dim(a)?;
        if !x.is_vector() {
            return Err(Error::NotAVector);
        }
        let mut interior = Self::zero(a.dim);
        let mut exterior = Self::zero(a.dim);
        for i in 0..x.dim {
            let xi = x.coeffs[1 << i];
            if xi.re == 0.0 && xi.im == 0.0 {
                continue;
            }
            let bit = 1usize << i;
            for (m, c) in a.coeffs.iter().enumerate() {
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                let term = xi * c * blade_sign(bit, m);
                if m & bit != 0 {
                    interior.coeffs[m ^ bit] += term;
                } else {
                    exterior.coeffs[m ^ bit] += term;
                }
            }
        }
        Ok((interior, exterior))
    }
}

/// Interior multiplication `x·a = Σ_k ½(x a_k − (−1)^k a_k x)`.
pub fn vector_interior(x: &Multivector, a: &Multivector) -> Result<Multivector> {
    Multivector::vector_split(x, a).map(|(i, _)| i)
}

/// Exterior multiplication `x∧a = Σ_k ½(x a_k + (−1)^k a_k x)`.
pub fn vector_exterior(x: &Multivector, a: &Multivector) -> Result<Multivector> {
    Multivector::vector_split(x, a).map(|(_, e)| e)
}

/// Geometric product, see [`Multivector::product`].
pub fn mv_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.product(b)
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("multivector add")
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.dim, rhs.dim, "multivector add");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("multivector sub")
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.product(rhs).expect("multivector product")
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        &self * &rhs
    }
}

/// A point (x, y) ∈ R^p × R^q.
#[derive(Clone, Debug, PartialEq)]
pub struct BiaxialPoint {
    p: usize,
    q: usize,
    x: Vec<f64>,
    y: Vec<f64>,
}

impl BiaxialPoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let (p, q) = (x.len(), y.len());
        if p < 2 || q < 1 {
            return Err(Error::UnsupportedDimension(format!(
                "biaxial point needs p >= 2 and q >= 1, got p={p}, q={q}"
            )));
        }
        check_dim(p + q)?;
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coordinate".into()));
        }
        Ok(Self { p, q, x, y })
    }

    /// Splits a vector of R^{p+q} into its x and y parts.
    pub fn from_flat(p: usize, coords: &[f64]) -> Result<Self> {
        if coords.len() <= p {
            return Err(Error::UnsupportedDimension(format!(
                "{} coordinates cannot be split with p={p}",
                coords.len()
            )));
        }
        Self::new(coords[..p].to_vec(), coords[p..].to_vec())
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

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// r = |x|.
    pub fn r(&self) -> f64 {
        norm(&self.x)
    }

    /// |x + y| in R^{p+q}.
    pub fn norm(&self) -> f64 {
        (self.r().powi(2) + norm(&self.y).powi(2)).sqrt()
    }

    pub fn flat(&self) -> Vec<f64> {
        self.x.iter().chain(&self.y).copied().collect()
    }

    /// x/|x|, or `None` on the axis x = 0.
    pub fn unit_x(&self) -> Option<Vec<f64>> {
        let r = self.r();
        (r > 0.0).then(|| self.x.iter().map(|v| v / r).collect())
    }

    /// Copy with coordinate `index` (x first, then y) shifted by `delta`.
    pub fn shifted(&self, index: usize, delta: f64) -> Self {
        let mut out = self.clone();
        if index < self.p {
            out.x[index] += delta;
        } else {
            out.y[index - self.p] += delta;
        }
        out
    }

    /// x + y as a vector of C_{p+q}.
    pub fn embed(&self) -> Multivector {
        Multivector::vector(self.dim(), &self.flat())
    }

    /// x on generators e_1..e_p.
    pub fn embed_x(&self) -> Multivector {
        Multivector::vector_at(self.dim(), 0, &self.x)
    }

    /// y on generators e_{p+1}..e_{p+q}.
    pub fn embed_y(&self) -> Multivector {
        Multivector::vector_at(self.dim(), self.p, &self.y)
    }

    /// Vector `v` of R^q placed on the y-generators of this point's algebra.
    pub fn embed_y_vector(&self, v: &[f64]) -> Multivector {
        Multivector::vector_at(self.dim(), self.p, v)
    }

    /// ⟨y, s⟩.
    pub fn y_dot(&self, s: &[f64]) -> f64 {
        dot(&self.y, s)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
