use thiserror::Error;

use crate::term::ObjectWord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which of the two snake identities of a dual pair failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZorroSide {
    /// `(d ⊗ id_V) ∘ (id_V ⊗ b) = id_V`
    V,
    /// `(id_U ⊗ d) ∘ (b ⊗ id_U) = id_U`
    U,
}

impl std::fmt::Display for ZorroSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZorroSide::V => write!(f, "(d⊗id_V)∘(id_V⊗b) = id_V"),
            ZorroSide::U => write!(f, "(id_U⊗d)∘(b⊗id_U) = id_U"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {}x{} vs {}x{}", .left.0, .left.1, .right.0, .right.1)]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is singular")]
    Singular,
    #[error("{0}")]
    Format(String),

    #[error("lexical error at byte {offset}: {message}")]
    Lex { offset: usize, message: String },
    #[error("parse error at byte {offset}: expected one of [{}], found {found}", .expected.join(", "))]
    Parse {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown object label `{0}`")]
    UnknownObject(String),
    #[error("composition mismatch at {path}: expected {expected}, found {found}")]
    ComposeMismatch {
        expected: ObjectWord,
        found: ObjectWord,
        path: String,
    },
    #[error("invalid signature: {0}")]
    Signature(String),

    #[error("invalid interpretation: {0}")]
    Interpretation(String),
    #[error("no duality data designated for object label `{0}`")]
    MissingDuality(String),
    #[error("term does not have the required shape: {0}")]
    TermShape(String),

    #[error("dual pair violates the snake identity {0}")]
    ZorroViolation(ZorroSide),

    #[error("multiplication is not associative on basis triple {0:?}")]
    NotAssociative((usize, usize, usize)),
    #[error("unit does not act as identity on basis element {0}")]
    NotUnital(usize),
    #[error("pairing is degenerate: rank {rank} < {dim}")]
    PairingDegenerate { rank: usize, dim: usize },
    #[error("pairing is not invariant on basis triple {0:?}")]
    PairingNotInvariant((usize, usize, usize)),
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("{axiom} axiom fails, so relation {relation} would be violated")]
    AxiomViolated {
        axiom: &'static str,
        relation: &'static str,
    },
    #[error("not a Frobenius algebra morphism: equation {equation} ({}) fails", frobenius_equation_name(*.equation))]
    NotAFrobeniusMorphism { equation: usize },
    #[error("not a morphism of dual pairs")]
    NotADualPairMorphism,

    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid fusion ring: {0}")]
    InvalidFusionRing(String),
    #[error("fusion ring is not commutative: N[{}][{}] differs from N[{}][{}]", .0.0, .0.1, .0.1, .0.0)]
    NotCommutativeRing((usize, usize)),
    #[error("label index {0} out of range")]
    LabelOutOfRange(usize),
}

/// Names of the four Frobenius-morphism equations, indexed from 1.
pub fn frobenius_equation_name(equation: usize) -> &'static str {
    match equation {
        1 => "algebra map",
        2 => "unit",
        3 => "coalgebra map",
        4 => "counit",
        _ => "unknown",
    }
}
