//! Exact computation in the q-deformed enveloping algebras `U_q(r,s)`.
//!
//! Layers, bottom up: rational-function coefficients, the free algebra,
//! reduction systems, the concrete algebra models, and the Lie layer.

pub mod algebras;
pub mod coeffs;
pub mod error;
pub mod freealg;
pub mod liepoly;
pub mod random;
pub mod rewrite;
pub mod suites;

pub use coeffs::{q_bracket, Point, RatFunc, Var};
pub use error::{Error, Result};
pub use freealg::{Alphabet, GeneratorMap, Letter, NCPoly, Word};
pub use rewrite::{
    apply_reduction, Ambiguity, AmbiguityKind, ReductionRule, ReductionSystem, ResolvabilityReport,
    RuleFamily, Strategy, TraceStep,
};
