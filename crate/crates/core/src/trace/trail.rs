use serde::{Deserialize, Serialize};

use crate::poly::{FieldElement, Monomial, PolyRing, Polynomial, PrimeField};
use crate::signature::RPos;

/// One recorded change to a labeled polynomial after creation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TrailStep {
    /// `p -= coeff * mult * poly(reductor)` during the normal-form pre-step.
    Phi {
        coeff: FieldElement,
        mult: Monomial,
        reductor: RPos,
    },
    /// `p -= coeff * mult * poly(reductor)` in a signature-safe top reduction.
    Reduce {
        coeff: FieldElement,
        mult: Monomial,
        reductor: RPos,
    },
    /// `p *= factor`.
    Scale { factor: FieldElement },
}

/// `P_start = scale * P_end + sum coeff * mult * poly(pos)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrailExpansion {
    pub scale: FieldElement,
    pub terms: Vec<(FieldElement, Monomial, RPos)>,
}

/// Every step applied to a labeled polynomial from its creation-time value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReductionTrail {
    steps: Vec<TrailStep>,
}

impl ReductionTrail {
    pub fn push(&mut self, step: TrailStep) {
        self.steps.push(step);
    }

    pub fn steps(&self) -> &[TrailStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies steps `from..` to `start`.
    pub fn replay_from<'a>(
        &self,
        from: usize,
        ring: &PolyRing,
        start: &Polynomial,
        poly_of: impl Fn(RPos) -> &'a Polynomial,
    ) -> Polynomial {
        let mut p = start.clone();
        for step in &self.steps[from..] {
            p = match step {
                TrailStep::Phi {
                    coeff,
                    mult,
                    reductor,
                }
                | TrailStep::Reduce {
                    coeff,
                    mult,
                    reductor,
                } => ring.axpy(&p, *coeff, mult, poly_of(*reductor)),
                TrailStep::Scale { factor } => ring.scale(*factor, &p),
            };
        }
        p
    }

    pub fn replay<'a>(
        &self,
        ring: &PolyRing,
        start: &Polynomial,
        poly_of: impl Fn(RPos) -> &'a Polynomial,
    ) -> Polynomial {
        self.replay_from(0, ring, start, poly_of)
    }

    /// Inverts steps `from..`: the value before step `from` in terms of the final value.
    pub fn expand_from(&self, from: usize, field: &PrimeField) -> TrailExpansion {
        let mut scale = FieldElement::ONE;
        let mut terms: Vec<(FieldElement, Monomial, RPos)> = Vec::new();
        for step in self.steps[from..].iter().rev() {
            match step {
                TrailStep::Phi {
                    coeff,
                    mult,
                    reductor,
                }
                | TrailStep::Reduce {
                    coeff,
                    mult,
                    reductor,
                } => terms.push((*coeff, mult.clone(), *reductor)),
                TrailStep::Scale { factor } => {
                    let inv = field.inv(*factor).expect("nonzero scale factor");
                    scale = field.mul(scale, inv);
                    for t in &mut terms {
                        t.0 = field.mul(t.0, inv);
                    }
                }
            }
        }
        terms.reverse();
        TrailExpansion { scale, terms }
    }
}
