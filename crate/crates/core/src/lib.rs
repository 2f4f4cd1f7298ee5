//! Higher rank numerical ranges of complex matrices and Perron matrix polynomials.
//!
//! The crate is organized around the support-function representation of the
//! rank-k numerical range: for each direction `theta` the k-th largest
//! eigenvalue of the Hermitian part of `e^{i theta} A` bounds the range by a
//! half-plane, and the range itself is the intersection of those half-planes.
//!
//! * [`linalg`] — dense complex matrices, Hermitian eigendecomposition,
//!   singular values.
//! * [`structure`] — irreducibility, index of imprimitivity, cyclic normal
//!   form and block-shift detection of the nonzero pattern.
//! * [`range`] — support profiles, the range polygon, numerical radius,
//!   maximal elements and isometry witnesses.
//! * [`perron`] — spectral radius, Perron vector and the maximal elements of
//!   the classical numerical range of a nonnegative irreducible matrix.
//! * [`poly`] — monic matrix polynomials, companion linearization and the
//!   rank-k numerical range of a matrix polynomial.
//! * [`fixtures`] — the built-in demonstration matrices used by the CLI.

pub mod fixtures;
pub mod linalg;
pub mod perron;
pub mod poly;
pub mod range;
pub mod structure;

pub use num_complex::Complex64;
