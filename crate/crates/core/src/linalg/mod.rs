//! Exact integer and `Z/n` linear algebra.
//!
//! * [`smith_normal_form`] works over ℤ with arbitrary-precision entries and
//!   backs every finite abelian group computation ([`FinAbGroup`],
//!   [`FinAbSubgroup`], [`FinAbHom`]).
//! * [`ModMatrix`] / [`smith_mod`] work over `Z/n` with reduced residues and
//!   carry the large cochain computations ([`SubmoduleBasis`], [`Subquotient`]).

mod finab;
mod int_matrix;
mod modn;
mod smith;
mod submodule;

pub use finab::{FinAbGroup, FinAbHom, FinAbSubgroup, StackedHom};
pub use int_matrix::IntMatrix;
pub use modn::{gcd, inv_mod, lcm, smith_mod, ModMatrix, ModSmith, MAX_MODULUS};
pub use smith::{integer_kernel, smith_normal_form, solve_integer, solve_with, SmithDecomposition};
pub use submodule::{solve_mod, solve_mod_matrix, subquotient, NonMember, SubmoduleBasis, Subquotient};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("modulus {0} is outside the supported range 1..2^32")]
    BadModulus(u64),
    #[error("invalid invariant factors {0:?}: need entries >= 2 forming a divisibility chain")]
    BadInvariantFactors(Vec<u64>),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("boundary generator {0} does not lie in the cycle submodule")]
    NotContained(usize),
    #[error("homomorphism is not well defined on source generator {0}")]
    NotWellDefined(usize),
}
