//! A Hilbert-style calculus for Peano arithmetic: proof checking, the
//! explosion transformer, and exhaustive search for short contradictions.
//!
//! A proof is a numbered list of formulas, each an axiom or obtained from
//! earlier ones by modus ponens or generalization. The logical axioms are
//! the schemas listed in [`Schema`]; the non-logical ones come from a
//! [`Theory`], by default the eight axioms in [`crate::fol::PA_AXIOMS`]
//! plus every induction instance.

mod explode;
mod format;
mod kernel;
mod schema;
mod search;

pub use explode::{explode, ExplodeError};
pub use format::{parse_proof, ProofParseError};
pub use kernel::{
    check_proof, check_proof_of, check_step, contradiction_part, is_contradiction, proof_length, Justification,
    LengthMetric, Proof, ProofError, Step, StepError, Theory,
};
pub use schema::{Schema, SchemaError, UnknownSchema};
pub use search::{
    count_proof_sets, search_contradiction, search_contradiction_with, SearchConfig, SearchError, SearchReport,
    DEFAULT_ALPHABET, FEASIBILITY_CEILING, STATIC_MAJOR_LIMIT,
};
