//! Append-only event log of engine decisions, its replay, and the checkers that
//! re-verify the termination argument's observable claims from the log alone.

mod checks;
mod event;
mod replay;
mod trail;

pub use checks::{
    check_admissibility, check_chains, check_d_progression, check_done_audit, check_hm_decrease,
    check_index_uniformity, check_pair_classification, check_replay_soundness, check_rule_degrees,
    check_signature_safety, check_structure, check_todo_order, classify_pairs,
    d_progression_violation, dominated_pairs_at, dominates, done_insertion_audit, extract_chain,
    find_dominated_pairs, rule_degree_violation, standard_checks, trace_checks, AuditOutcome,
    ChainReport, CheckReport, ClassifyScope, LabeledHead, PairClass, PairIndex, PairKey,
    PairVerdict,
};
pub use event::{read_jsonl, write_jsonl, EventKind, Property, RejectCheck, TraceEvent, TraceLog};
pub use replay::{Insertion, ReplayCall, ReplayLp, ReplayRule, TraceReplay};
pub use trail::{ReductionTrail, TrailExpansion, TrailStep};

use crate::signature::RPos;

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error("trace does not start with a Header event")]
    MissingHeader,
    #[error("trace line {line}: {source}")]
    BadLine {
        line: usize,
        source: serde_json::Error,
    },
    #[error("genealogy of r{pos} does not lead back to an input")]
    BrokenGenealogy { pos: RPos },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
