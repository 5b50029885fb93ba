//! Exact commutative algebra over `F_p` for bivariate Tor Hilbert functions.
//!
//! The crate is layered bottom-up: prime-field arithmetic, polynomials and
//! vectors over `k[x_1..x_r]`, Groebner bases, ideals, finitely presented
//! modules, Tor, and on top the sampler/fitter and the verification harness.

pub mod certify;
pub mod error;
pub mod field;
pub mod fit;
pub mod groebner;
pub mod harness;
pub mod hilbert;
pub mod homology;
pub mod ideal;
pub mod length;
pub mod module;
pub mod monomial;
mod parse;
pub mod poly;
pub mod sampler;

pub use error::{Error, Result};
pub use field::{FieldScalar, PrimeField, DEFAULT_CHARACTERISTIC};
pub use groebner::{buchberger, normal_form, GroebnerBasis};
pub use ideal::Ideal;
pub use length::Length;
pub use module::{FPModule, FreeModule, ModuleMap, Subquotient};
pub use monomial::{Monomial, MonomialOrder, OrderKind, MAX_VARS};
pub use poly::{Poly, Ring, Term, Vector};
