//! Exact computations with highest-weight modules over generalized reductive
//! Lie algebras `g = g0 ⊕ J` (`g0` semisimple, `J` an abelian radical).
//!
//! Everything is done in exact rational arithmetic on weight-graded
//! truncations, so every identity the library reports is a verified matrix
//! identity, not a floating-point approximation. The main layers:
//!
//! * [`linalg`] — sparse rational matrices, fraction-free elimination,
//!   kernels, ranks and certified solve outcomes.
//! * [`roots`] — finite root systems, Weyl groups, the dot action, strong
//!   linkage chains and the Kostant partition function.
//! * [`algebra`] — Chevalley bases with deterministic structure constants,
//!   radical realizations `J = L(λ_1) ⊕ … ⊕ L(λ_n)` and validation of the
//!   functionals `g ∈ G = {g ∈ J* | g(J_2) = 0}`.
//! * [`pbw`] — truncated weight-graded modules with exact generator action
//!   matrices: Verma modules `M(λ,g)`, Jordan-twisted sums, submodules,
//!   quotients and tensor products with finite-dimensional simples.
//! * [`category`] — maximal vectors, Verma embeddings along linkage chains,
//!   nilpotency of `J_2`, filtrations, non-liftability certificates and the
//!   reciprocity table on rank-one blocks.
//! * [`verify`] — the bundled end-to-end verification suite used by the CLI
//!   and the acceptance tests.

pub mod algebra;
pub mod category;
pub mod error;
pub mod linalg;
pub mod pbw;
pub mod ratio;
pub mod roots;
pub mod verify;

pub use algebra::{GFunctional, GValidation, GenReductiveAlgebra, SimpleRealization};
pub use error::{Error, Result};
pub use linalg::{Rational, RationalMatrix, SolveOutcome};
pub use pbw::{FMonomial, ModuleMap, TruncatedModule};
pub use roots::{LinkageChain, LinkageOutcome, RootSystem, Weight};
