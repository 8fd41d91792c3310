use crate::engine::{F5Run, Rule, RuleTable, SnapshotMark};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::signature::{LabeledPolynomial, LpStatus, RPos, Signature};

use super::repr::SignatureLookup;

/// The list `G_g` frozen when `g` entered `Done`, with the state the descent consults.
///
/// Members of `G_g` never change after insertion, so the run's final labeled
/// polynomials are exactly their snapshot values.
#[derive(Clone, Debug)]
pub struct GgSnapshot<'a> {
    pub ring: PolyRing,
    pub lps: &'a [LabeledPolynomial],
    pub bases: &'a [Vec<RPos>],
    rules: &'a RuleTable,
    pub rule_lens: Vec<usize>,
    /// `G_g` positions, ascending.
    pub elements: Vec<RPos>,
    pub call: usize,
    pub g: Option<RPos>,
    pub g_sig: Signature,
    /// Length of `R` at insertion time.
    pub r_len: usize,
}

impl<'a> GgSnapshot<'a> {
    pub fn from_mark(run: &'a F5Run, mark: &SnapshotMark) -> Self {
        GgSnapshot {
            ring: run.ring,
            lps: &run.lps,
            bases: &run.bases,
            rules: &run.rules,
            rule_lens: mark.rule_lens.clone(),
            elements: mark.gg.clone(),
            call: mark.call,
            g: Some(mark.g),
            g_sig: run.lps[mark.g].sig.clone(),
            r_len: mark.r_len,
        }
    }

    /// A snapshot over hand-built data; `g` may be virtual (signature only).
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        ring: PolyRing,
        lps: &'a [LabeledPolynomial],
        bases: &'a [Vec<RPos>],
        rules: &'a RuleTable,
        elements: Vec<RPos>,
        call: usize,
        g_sig: Signature,
    ) -> Self {
        GgSnapshot {
            ring,
            rule_lens: rules.lens(),
            lps,
            bases,
            rules,
            elements,
            call,
            g: None,
            g_sig,
            r_len: lps.len(),
        }
    }

    pub fn m(&self) -> usize {
        self.rules.m()
    }

    pub fn lp(&self, pos: RPos) -> &'a LabeledPolynomial {
        &self.lps[pos]
    }

    pub fn poly(&self, pos: RPos) -> &'a Polynomial {
        &self.lps[pos].poly
    }

    pub fn sig(&self, pos: RPos) -> &'a Signature {
        &self.lps[pos].sig
    }

    pub fn hm(&self, pos: RPos) -> &'a Monomial {
        self.lps[pos]
            .poly
            .head_monomial()
            .expect("G_g members are nonzero")
    }

    pub fn contains(&self, pos: RPos) -> bool {
        self.elements.binary_search(&pos).is_ok()
    }

    /// Rules of `index` existing at insertion time, oldest first.
    pub fn rules(&self, index: usize) -> &'a [Rule] {
        &self.rules.rules(index)[..self.rule_lens[index - 1]]
    }

    /// First element of `G_{index+1}` whose head divides `mono`.
    pub fn phi_divisor(&self, index: usize, mono: &Monomial) -> Option<RPos> {
        if index >= self.m() {
            return None;
        }
        self.bases[index + 1].iter().copied().find(|&q| {
            self.poly(q)
                .head_monomial()
                .is_some_and(|h| mono.is_divisible_by(h))
        })
    }

    /// Newest rule of the signature's index created after `pos` whose monomial divides
    /// `sig.mono`: the definitional Rewritten criterion.
    pub fn newer_rule_dividing(&self, sig: &Signature, pos: RPos) -> Option<&'a Rule> {
        self.rules(sig.index)
            .iter()
            .rev()
            .find(|r| r.pos > pos && sig.mono.is_divisible_by(&r.mono))
    }

    /// Engine semantics of `Rewritten?(u, pos)`: `Err` when a generated polynomial has no rule.
    pub fn engine_rewriter(&self, u: &Monomial, pos: RPos) -> Result<Option<RPos>, RPos> {
        let s = self.sig(pos).mul(u);
        match self
            .rules(s.index)
            .iter()
            .rev()
            .find(|r| s.mono.is_divisible_by(&r.mono))
        {
            Some(r) => Ok((r.pos != pos).then_some(r.pos)),
            None if pos < self.m() => Ok(None),
            None => Err(pos),
        }
    }

    /// The lp finished (zero or in `G_g`) before the insertion.
    pub fn finished(&self, pos: RPos) -> bool {
        pos < self.r_len && (self.contains(pos) || self.lps[pos].status == LpStatus::Zero)
    }
}

impl SignatureLookup for GgSnapshot<'_> {
    fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    fn signature(&self, pos: RPos) -> &Signature {
        &self.lps[pos].sig
    }
}
