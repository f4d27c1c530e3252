//! Exact numerical Fourier–Mukai calculus for smooth projective curves.
//!
//! Kernels on `C × C'` are tracked through their Chern characters in the
//! Künneth-graded cohomology of the product. Grothendieck–Riemann–Roch turns
//! them into maps on K-theory, on rational Picard groups and on Jacobians,
//! where the induced homomorphism is compared against the principal
//! polarizations. All arithmetic is over exact rationals.

pub mod catalog;
pub mod checks;
pub mod error;
pub mod fm;
pub mod grr;
pub mod kunneth;
pub mod lattice;
pub mod matrix;
pub mod rational;

pub use catalog::{catalog_kernel, CatalogEntry, CatalogName, CatalogParams};
pub use error::{Error, Result};
pub use fm::{AffinePicMap, KMapCoefficients, TorelliReport};
pub use grr::{diagonal_kernel, KClassCurve, KernelClass};
pub use kunneth::{CohClass, CurveSpec, ProductSpace};
pub use lattice::{JacHom, JacPoint, SymplecticLattice};
pub use matrix::Matrix;
pub use rational::Rational;
