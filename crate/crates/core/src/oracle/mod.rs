//! Independent oracles: `G_g`-representations and their descent, a reference
//! Buchberger engine, and Hilbert functions.

mod buchberger;
mod descent;
mod harvest;
mod hilbert;
mod repr;
mod snapshot;

pub use buchberger::{buchberger, ideal_equal, is_groebner, is_reduced, reduce_basis, spoly};
pub use descent::{
    descend, descend_representation, element_hm, evaluate_checks, f5_replacement,
    find_reductor_for_target, find_unrejected_reductor, hm_replacement, repr_step_check,
    repr_sum_check, rewrite_f5_case, rewrite_hm_case, rewrite_rewritten_case,
    rewritten_replacement, violated_property, DescentRecord, DescentResult, FoundReductor,
    ReductorChecks, Violation,
};
pub use harvest::{harvest_instances, run_harvest, sample_marks, DescentInstance, HarvestReport};
pub use hilbert::{complete_intersection_series, hilbert_function, monomials_of_degree};
pub use repr::{
    elem_cmp, element_signature, ordered_form, repr_cmp, substitute_and_combine, ReprElement,
    ReprOrdering, Representation, SignatureLookup, SignatureTable,
};
pub use snapshot::GgSnapshot;

use crate::poly::Monomial;
use crate::signature::RPos;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("element {mono:?} * b{pos} has a signature above the represented one")]
    NotSignatureSafe { pos: RPos, mono: Monomial },
    #[error("no divisor for the F5-criterion element on b{pos}")]
    NoDivisorFound { pos: RPos },
    #[error("no rewriter in G_g for the element on b{pos}")]
    RewriterNotFound { pos: RPos },
    #[error("no processed S-polynomial for the pair (b{a}, b{b})")]
    TrailNotFound { a: RPos, b: RPos },
    #[error("no second element with the maximal head monomial next to b{pos}")]
    NoSecondHead { pos: RPos },
    #[error("elements on b{a} and b{b} have equal signatures")]
    EqualPartSignatures { a: RPos, b: RPos },
    #[error("replacement uses b{pos}, which is not in G_g")]
    ReductorOutsideSnapshot { pos: RPos },
    #[error("input representation of b{pos} does not lead with its signature")]
    NotAdmissible { pos: RPos },
    #[error("descent exceeded {steps} steps")]
    StepCapExceeded {
        steps: usize,
        log: Vec<DescentRecord>,
    },
    #[error("descent step {step} changed the represented polynomial")]
    SumMismatch { step: usize },
    #[error("descent step {step} did not decrease the representation ({got:?})")]
    NotDecreasing { step: usize, got: ReprOrdering },
    #[error("no final element attains the target head monomial")]
    NoHeadMatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
}
