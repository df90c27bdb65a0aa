//! Compensated (Kahan–Babuška–Neumaier) accumulators.
//!
//! Every quadrature loop in the crate reduces through these so that results do
//! not depend on anything but the node order of the rule.

use num_complex::Complex64;

use crate::clifford::Multivector;

#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator of reals.
pub fn neumaier<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<NeumaierSum>().value()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Per-blade compensated accumulator for multivector-valued integrands.
#[derive(Clone, Debug)]
pub struct MultivectorSum {
    dim: usize,
    acc: Vec<ComplexSum>,
}

impl MultivectorSum {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            acc: vec![ComplexSum::new(); 1 << dim],
        }
    }

    /// Adds `weight * mv`. Panics if the dimensions differ.
    pub fn add_scaled(&mut self, mv: &Multivector, weight: f64) {
        assert_eq!(mv.dim(), self.dim, "accumulator dimension mismatch");
        for (slot, c) in self.acc.iter_mut().zip(mv.coeffs()) {
            if c.re != 0.0 || c.im != 0.0 {
                slot.add(c * weight);
            }
        }
    }

    pub fn value(&self) -> Multivector {
        Multivector::from_coeffs(self.dim, self.acc.iter().map(ComplexSum::value).collect())
            .expect("accumulator holds 2^dim slots")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let vals = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(neumaier(vals), 2.0);
        let naive: f64 = vals.iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn complex_sum_tracks_both_parts() {
        let mut s = ComplexSum::new();
        s.add(Complex64::new(1e16, 1.0));
        s.add(Complex64::new(1.0, -1e16));
        s.add(Complex64::new(-1e16, 1e16));
        assert_eq!(s.value(), Complex64::new(1.0, 1.0));
    }
}
