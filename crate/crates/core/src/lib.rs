//! Exact arithmetic for hermitian forms over CM fields and the finite groups
//! they (and cyclic division algebras) can contain.
//!
//! * [`numfield`]: totally real fields, CM extensions, certified signs.
//! * [`hermitian`]: signatures, the invariant triple, equivalence and
//!   admissibility of hermitian forms.
//! * [`groups`]: finite matrix groups, invariant forms by averaging, the
//!   catalog of finite subgroups of `U(2) × U(1)` and embedding pipelines.
//! * [`dgroups`]: the metacyclic groups `G_{m,r}` and the obstruction to
//!   non-cyclic finite subgroups in degree-`p` division algebras.
//! * [`cyclic_algebra`]: the degree-3 cyclic algebra `(L/E, τ, α)` with an
//!   involution of the second kind.

pub mod cyclic_algebra;
pub mod dgroups;
pub mod error;
pub mod groups;
pub mod hermitian;
pub mod hilbert;
pub mod json;
pub mod linalg;
pub mod numfield;
pub mod poly;
pub mod ring;
pub mod roots;

pub use error::{Error, Result};

/// Exact rational scalar used for every coordinate.
pub type Rational = num_rational::BigRational;

/// Matrix over a CM field.
pub type CmMatrix = linalg::Matrix<numfield::CmElem>;
/// Matrix over the rationals.
pub type QMatrix = linalg::Matrix<Rational>;
/// Matrix over the cubic extension `L` of a cyclic algebra.
pub type LMatrix = linalg::Matrix<cyclic_algebra::LElem>;


