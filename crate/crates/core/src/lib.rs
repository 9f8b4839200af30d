//! Finite semigroup computation: validated multiplication tables and their
//! structural algorithms, transformation-semigroup operators, a word and
//! omega-term language with a satisfaction engine, a catalog of named
//! semigroups with verified identity data, exhaustive enumeration of small
//! semigroups, and the join-irreducibility classifier.

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod congruence;
pub mod division;
pub mod enumerate;
pub mod error;
pub mod green;
pub mod satisfy;
pub mod semigroup;
pub mod term;
pub mod transform;

pub use congruence::{is_sdi, principal_congruence, Partition};
pub use division::{divides, DivisionConfig, DivisionVerdict, DivisionWitness};
pub use error::{AlgebraError, CatalogError, ClassifyError, EvalError, TermError};
pub use green::{green_partition, minimal_ideal, GreenRelation};
pub use satisfy::{
    eval_term, in_local, satisfies, satisfies_all, separation_search, violates_all, Assignment,
    SatisfactionReport, SearchBounds, Witness,
};
pub use semigroup::{AdjoinMode, CanonicalMode, Semigroup};
pub use term::{parse_term, word_stats, Exponent, Letter, OmegaTerm, Pseudoidentity, Word};
pub use transform::{augment, hierarchy_iterate, right_regular, rlm, AugmentMode};
