//! Error type shared across the crate.
//!
//! Law violations carry the witnessing identifiers so that a failed
//! validation can be traced back to a concrete cell of the offending table.

use thiserror::Error;

use crate::groupoid::{Mor, Ob};

pub type Result<T> = std::result::Result<T, Error>;

/// Which comorphism axiom failed validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComorphismAxiom {
    /// The lift of a morphism must start at the object it was lifted to.
    LiftSource,
    /// Axiom (i): the object map must send the lift's target back to the
    /// original morphism's target.
    AxiomI,
    /// Axiom (ii): identities lift to identities.
    AxiomII,
    /// Axiom (iii): lifting commutes with composition.
    AxiomIII,
}

impl std::fmt::Display for ComorphismAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComorphismAxiom::LiftSource => write!(f, "lift source"),
            ComorphismAxiom::AxiomI => write!(f, "axiom (i)"),
            ComorphismAxiom::AxiomII => write!(f, "axiom (ii)"),
            ComorphismAxiom::AxiomIII => write!(f, "axiom (iii)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("identity law: identity of object {object} has source {src}, target {tgt}")]
    IdentityLaw { object: Ob, src: Ob, tgt: Ob },

    #[error("composition declared for non-composable pair: compose({b}, {a})")]
    NotComposable { b: Mor, a: Mor },

    #[error("composition table missing entry for composable pair: compose({b}, {a})")]
    MissingComposite { b: Mor, a: Mor },

    #[error("composition law: compose({b}, {a}) = {composite} has wrong source or target")]
    CompositeSourceTarget { b: Mor, a: Mor, composite: Mor },

    #[error("unit law violated at morphism {morphism}")]
    UnitLaw { morphism: Mor },

    #[error("inverse law violated at morphism {morphism} (inverse {inverse})")]
    InverseLaw { morphism: Mor, inverse: Mor },

    #[error("associativity violated at triple compose({c}, compose({b}, {a}))")]
    Associativity { c: Mor, b: Mor, a: Mor },

    #[error("functor law: morphism {morphism} maps outside hom(F(source), F(target))")]
    FunctorSourceTarget { morphism: Mor },

    #[error("functor law: identity of object {object} not preserved")]
    FunctorIdentity { object: Ob },

    #[error("functor law: composition not preserved at compose({b}, {a})")]
    FunctorComposition { b: Mor, a: Mor },

    #[error("comorphism {axiom} violated at object {object}{}{}",
        a.map(|m| format!(", morphism {m}")).unwrap_or_default(),
        b.map(|m| format!(", morphism {m}")).unwrap_or_default())]
    ComorphismAxiom {
        axiom: ComorphismAxiom,
        object: Ob,
        a: Option<Mor>,
        b: Option<Mor>,
    },

    #[error("functor is not bijective on objects")]
    NotBijectiveOnObjects,

    #[error("functor is not a discrete opfibration (object {object}, morphism {morphism})")]
    NotDiscreteOpfibration { object: Ob, morphism: Mor },

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cap exceeded: {what} is {value}, cap is {cap}")]
    CapExceeded {
        what: String,
        value: usize,
        cap: usize,
    },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a bisection: {0}")]
    BisectionLaw(String),

    #[error("not a partial bisection: {0}")]
    PartialBisectionLaw(String),

    #[error("not a partial automorphism: {0}")]
    PartialAutomorphismLaw(String),

    #[error("family members {i} and {j} are not compatible")]
    IncompatiblePair { i: usize, j: usize },

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("preservation law violated ({law}): {detail}")]
    PreservationLaw { law: String, detail: String },

    #[error("inverse monoid law violated: {0}")]
    InverseMonoidLaw(String),

    #[error("universe incomplete: {0}")]
    UniverseIncomplete(String),

    #[error("line {line}, col {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
