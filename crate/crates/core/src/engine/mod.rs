//! The original F5 algorithm: incremental driver, degree-stepped main loop,
//! critical pairs, S-polynomials, reduction with the normal-form pre-step and
//! top-reduction with reductor checks (a)-(d).

mod state;

use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::signature::{LabeledPolynomial, LpStatus, RPos, SignatureError};
use crate::trace::TraceLog;

pub use state::EngineState;

/// A critical pair `[t, u1, p1, u2, p2]`; part 1 has the greater multiplied signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub t: Monomial,
    pub u1: Monomial,
    pub p1: RPos,
    pub u2: Monomial,
    pub p2: RPos,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub mono: Monomial,
    pub pos: RPos,
}

/// Per-index rule sequences in append order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleTable {
    tables: Vec<Vec<Rule>>,
}

impl RuleTable {
    pub fn new(m: usize) -> Self {
        RuleTable {
            tables: vec![Vec::new(); m],
        }
    }

    /// Rules of input index `index` (1-based), oldest first.
    pub fn rules(&self, index: usize) -> &[Rule] {
        &self.tables[index - 1]
    }

    pub fn push(&mut self, index: usize, rule: Rule) {
        self.tables[index - 1].push(rule);
    }

    pub fn lens(&self) -> Vec<usize> {
        self.tables.iter().map(Vec::len).collect()
    }

    pub fn m(&self) -> usize {
        self.tables.len()
    }
}

/// Deliberate engine bugs for negative controls of the checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fault {
    /// Check (c) in `IsReducible` rejects every candidate.
    RejectAllByRewritten,
    /// Top-reduction subtracts even when the multiplied reductor signature is greater.
    IgnoreSignatureSafety,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub max_pairs: usize,
    pub max_degree: u32,
    /// Cap on `ToDo` pops within one `Reduction` call.
    pub max_reduction_steps: usize,
    pub fault: Option<Fault>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_pairs: 1_000_000,
            max_degree: 80,
            max_reduction_steps: 1_000_000,
            fault: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Budget {
    Pairs,
    Degree,
    ReductionSteps,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub pairs_created: usize,
    pub f5_rejected: usize,
    pub rewritten_rejected: usize,
    pub spols: usize,
    pub reduction_steps: usize,
    pub new_from_top_reduction: usize,
    pub zero_reductions: usize,
    pub done_inserted: usize,
}

/// State positions recorded when `g` entered `Done`, enough to rebuild `G_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnapshotMark {
    pub g: RPos,
    /// `G_i ∪ Done` just before `g` was added, ascending.
    pub gg: Vec<RPos>,
    pub rule_lens: Vec<usize>,
    pub r_len: usize,
    pub call: usize,
    pub seq: u64,
}

/// Degree values of one `AlgorithmF5` call.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallDegrees {
    pub call: usize,
    pub ds: Vec<u32>,
}

/// Everything a finished (or aborted) run produced.
#[derive(Clone, Debug)]
pub struct F5Run {
    pub ring: PolyRing,
    /// Monic inputs.
    pub inputs: Vec<Polynomial>,
    pub lps: Vec<LabeledPolynomial>,
    /// `bases[i]` is `G_i` for finished calls; index `m + 1` is empty.
    pub bases: Vec<Vec<RPos>>,
    pub rules: RuleTable,
    pub d_histories: Vec<CallDegrees>,
    pub marks: Vec<SnapshotMark>,
    pub stats: Stats,
    pub trace: TraceLog,
}

impl F5Run {
    pub fn m(&self) -> usize {
        self.inputs.len()
    }

    /// Positions of `G_1`.
    pub fn basis_positions(&self) -> &[RPos] {
        &self.bases[1]
    }

    /// Polynomials of `G_1`, sorted by descending head monomial.
    pub fn basis(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = self.bases[1]
            .iter()
            .map(|&p| self.lps[p].poly.clone())
            .collect();
        out.sort_by(|a, b| {
            self.ring
                .cmp(b.head_monomial().unwrap(), a.head_monomial().unwrap())
        });
        out
    }

    pub fn zero_reduced(&self) -> impl Iterator<Item = &LabeledPolynomial> {
        self.lps.iter().filter(|lp| lp.status == LpStatus::Zero)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum F5Error {
    #[error("no input polynomials")]
    NoInputs,
    #[error("input f{index} is not homogeneous")]
    NonHomogeneousInput { index: usize },
    #[error("input f{index} is zero")]
    ZeroInputPolynomial { index: usize },
    #[error("input f{index} has {got} variables, ring has {expected}")]
    VariableCount {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("budget exceeded: {budget:?}")]
    BudgetExceeded { budget: Budget, partial: Box<F5Run> },
    #[error("no rule entry for r{pos}")]
    MissingRule { pos: RPos },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// Runs `IncrementalF5` on the inputs: `G_m = {f_m}`, then `AlgorithmF5` for
/// `i = m-1, ..., 1`.
pub fn incremental_f5(
    ring: &PolyRing,
    inputs: &[Polynomial],
    config: &Config,
) -> Result<F5Run, F5Error> {
    let mut state = EngineState::new(*ring, inputs, config.clone())?;
    let m = inputs.len();
    for i in (1..m).rev() {
        if let Err(e) = state.algorithm_f5(i) {
            return Err(match e {
                state::StepError::Budget(budget) => F5Error::BudgetExceeded {
                    budget,
                    partial: Box::new(state.into_run()),
                },
                state::StepError::Fatal(e) => e,
            });
        }
    }
    Ok(state.into_run())
}
