//! Shape constraints, type I/II products, the C-set and its maximal word
//! `tau`, the exhaustive unit-regularity search, and identity checks in `S`.
//!
//! Everything here works in the presentation `S`. The `tau` analysis is
//! only valid for `x^3 = 0` and rejects other degrees.

mod cset;
mod identities;
mod search;
mod shape;
mod tau;
mod types;

use thiserror::Error;

use crate::rewrite::{Presentation, RewriteSystem};
use crate::word::Word;

pub use cset::{build_c_set, find_tau, COccurrence, CSet, OccurrenceKind};
pub use identities::{check_primeness_bounded, check_regularity_identities, check_separativity_identities, separativity_sums};
pub use search::{analytic_candidate_count, search_unit_regular_witness, SearchConfig};
pub use shape::{left_shape_words, right_shape_words, LeftShapeWord, RightShapeWord, Side};
pub use tau::{
    check_tau_forms, check_tau_unique_families, check_tau_uniqueness, classify_tau_occurrences, find_form_witness, run_tau_harness, Form, FormKind,
    FormWitness, TauClassification, TauForm, TauHarness, TauHarnessSummary, TauOccurrence, TauViolation,
};
pub use types::{
    check_types_lemma, classify_interface, predicted_type_i_reduction, predicted_type_i_zero, predicted_type_ii_zero,
    type_i, type_ii, InterfaceClass,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{check} needs the presentation S, got {sys}")]
    WrongPresentation { check: &'static str, sys: RewriteSystem },
    #[error("{check} requires n {requirement}, got n = {n}")]
    UnsupportedDegree { check: &'static str, requirement: &'static str, n: u32 },
    #[error("{0} is not a normal word")]
    NotNormal(Word),
    #[error("{word} is not a valid {side} shape word")]
    ShapeViolation { side: Side, word: Word },
    #[error("{side} word {word} occurs twice")]
    DuplicateWord { side: Side, word: Word },
    #[error("coefficient of {word} is zero")]
    ZeroScalar { word: Word },
    #[error("the C-set is empty")]
    EmptyCSet,
    #[error("{0} does not have the shape q^i1 x^2 ... q^ir x^c")]
    BadTau(Word),
    #[error("{given} is not the largest word of the C-set (that is {actual})")]
    TauNotMaximal { given: Word, actual: Word },
    #[error("search space of {candidates} candidates exceeds the limit {limit}")]
    SearchTooLarge { candidates: u128, limit: u128 },
}

pub(crate) fn require_s(check: &'static str, sys: RewriteSystem) -> Result<(), StructureError> {
    if sys.presentation() == Presentation::S {
        Ok(())
    } else {
        Err(StructureError::WrongPresentation { check, sys })
    }
}

pub(crate) fn require_n3(check: &'static str, sys: RewriteSystem) -> Result<(), StructureError> {
    require_s(check, sys)?;
    if sys.degree() == 3 {
        Ok(())
    } else {
        Err(StructureError::UnsupportedDegree { check, requirement: "= 3", n: sys.degree() })
    }
}
