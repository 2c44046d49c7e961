//! Finite groupoids, comorphisms, bisections and pseudogroups, together with
//! a brute-force harness that checks, at desk scale, how natural families of
//! automorphisms over a universe of maps correspond to (partial) bisections
//! acting by conjugation.
//!
//! Everything is table-driven and deterministic: objects and morphisms are
//! dense integer identifiers, enumerations are lexicographic, and all values
//! are immutable after validation, so shared use across threads is safe.

pub mod bisection;
pub mod caps;
pub mod cli;
pub mod comorphism;
pub mod error;
pub mod functor;
pub mod group;
pub mod groupoid;
pub mod inner;
pub mod io;
pub mod iso;
pub mod pseudogroup;

pub use caps::Caps;
pub use error::{Error, Result};
pub use groupoid::{FiniteGroupoid, Mor, Ob};
