//! Exact skeletal fusion categories built from finite abelian groups.
//!
//! * [`cyclotomic`]: exact arithmetic in `Q(ζ_N)` and roots of unity.
//! * [`abgroup`], [`cohomology`], [`quadforms`]: the group-theoretic inputs.
//! * [`skeletal`]: the generic engine (functors, actions, obstructions,
//!   crossed braidings and a propagation solver).
//! * [`pointed`] and [`tycat`]: the two families `Vec_A^ω` and `TY(A, χ, τ)`.
//!
//! Everything is generic over the rational coefficient type; the aliases
//! below fix it to [`BigRational`].

pub mod abgroup;
pub mod cohomology;
pub mod cyclotomic;
mod linalg;
pub mod pointed;
pub mod quadforms;
pub mod skeletal;
pub mod tycat;

pub use num_rational::BigRational;

/// An exact element of `Q(ζ_N)`.
pub type CycNumber = cyclotomic::Cyc<BigRational>;

/// A Tambara–Yamagami category over exact rationals.
pub type TyCategory = tycat::TyData<BigRational>;

pub use abgroup::AbGroup;
pub use cohomology::Cochain;
pub use cyclotomic::{CycField, Root};
pub use pointed::PointedCat;
pub use quadforms::{Bicharacter, QuadraticForm};
