//! Bordism categories as free symmetric monoidal term languages, evaluated
//! exactly as linear maps under dual pairs, commutative Frobenius algebras
//! and fusion-ring Grothendieck algebras.
//!
//! Everything numeric is generic over [`Scalar`]; the `Q*` aliases fix the
//! exact rationals.

pub mod cli;
pub mod error;
pub mod eval;
pub mod examples;
pub mod frobenius;
pub mod fusion;
pub mod io;
pub mod linalg;
pub mod parser;
pub mod scalar;
pub mod term;
pub mod tqft1;
pub mod tqft2;

pub use error::{Error, Result, ZorroSide};
pub use eval::{eval_term, Interpretation, RelationReport};
pub use frobenius::{
    admits_frobenius_form, check_morphism, morphism_inverse, BilinearPairing, FrobeniusAlgebra,
    UnitalAlgebra,
};
pub use fusion::{grothendieck_frobenius, FusionRing};
pub use linalg::{kron, matmul, rank, swap_matrix, Matrix};
pub use scalar::{format_q, parse_q, Scalar, Q};
pub use term::{parse_term, typecheck, ObjectWord, Signature, Term};
pub use tqft1::{bord1_signature, DualPair};
pub use tqft2::{bord2_signature, frobenius_interpretation, surface_invariant};

pub type QMatrix = Matrix<Q>;
pub type QFrobeniusAlgebra = FrobeniusAlgebra<Q>;
pub type QInterpretation = Interpretation<Q>;
pub type QDualPair = DualPair<Q>;
pub type F64Matrix = Matrix<f64>;
pub type F64FrobeniusAlgebra = FrobeniusAlgebra<f64>;
