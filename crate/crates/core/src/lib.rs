//! Numerical toolkit for hypermonogenic solutions of the biaxial Dirac
//! operator ∂_x + ∂_y in R^p × R^q.
//!
//! Layers, bottom up:
//!
//! * [`clifford`]: dense multivectors of C_{p+q} with e_i² = −1.
//! * [`special`]: Γ, J_ν, I_ν, Gegenbauer, Pochhammer, ₂F₁.
//! * [`quadrature`]: Gauss–Jacobi, sphere and hemisphere product rules, the
//!   Funk–Hecke identity.
//! * [`fields`]: axial fields, finite-difference Dirac / Vekua / modified
//!   Dirac residuals, Cauchy–Kovalevskaya series.
//! * [`planewave`]: hypermonogenic plane waves and their radialisations.
//! * [`cauchy`]: the reduced kernel and hemisphere reconstruction of A, B.
//!
//! Every closed form has a brute-force quadrature or series counterpart in
//! the same module so the two can be compared directly.

pub mod cauchy;
pub mod clifford;
pub mod error;
pub mod fields;
pub mod planewave;
pub mod quadrature;
pub mod rng;
pub mod special;
pub mod sum;

pub use clifford::{BiaxialPoint, Multivector};
pub use error::{Error, Result};
