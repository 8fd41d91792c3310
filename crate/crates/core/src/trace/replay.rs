use crate::poly::{Monomial, MonomialOrder};
use crate::signature::{input_pos, Genealogy, RPos, Signature};

use super::{EventKind, TraceError, TraceEvent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayLp {
    pub pos: RPos,
    pub sig: Signature,
    /// Latest head monomial seen in the log; `None` once reduced to zero.
    pub hm: Option<Monomial>,
    pub genealogy: Option<Genealogy>,
    pub created_seq: u64,
    /// Sequence number of `DoneInserted` or `ReductionToZero`.
    pub finished_seq: Option<u64>,
    pub zero: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplayCall {
    pub call: usize,
    pub begin_seq: u64,
    pub end_seq: Option<u64>,
    pub ds: Vec<u32>,
    /// `DoneInserted` positions in log order.
    pub inserted: Vec<RPos>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub seq: u64,
    pub pos: RPos,
    pub call: usize,
    pub sig: Signature,
    pub hm: Monomial,
    /// Index into `TraceReplay::calls`.
    pub call_slot: usize,
    /// Number of insertions of the same call before this one.
    pub prior: usize,
    pub rule_lens: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayRule {
    pub mono: Monomial,
    pub pos: RPos,
    pub seq: u64,
}

/// Engine state reconstructed from the event log alone.
#[derive(Clone, Debug)]
pub struct TraceReplay {
    pub nvars: usize,
    pub order: MonomialOrder,
    pub prime: u32,
    pub m: usize,
    pub lps: Vec<ReplayLp>,
    /// `rules[index - 1]` in append order.
    pub rules: Vec<Vec<ReplayRule>>,
    pub calls: Vec<ReplayCall>,
    /// `bases[i]`, known once `CallEnd` for `i` was seen (and for `i = m`).
    pub bases: Vec<Option<Vec<RPos>>>,
    pub insertions: Vec<Insertion>,
    /// Structural problems found while replaying.
    pub problems: Vec<String>,
}

impl TraceReplay {
    pub fn from_events(events: &[TraceEvent]) -> Result<Self, TraceError> {
        let Some(TraceEvent {
            kind:
                EventKind::Header {
                    nvars,
                    order,
                    prime,
                    m,
                },
            ..
        }) = events.first()
        else {
            return Err(TraceError::MissingHeader);
        };
        let m = *m;
        let mut bases = vec![None; m + 2];
        bases[m] = Some(vec![input_pos(m)]);
        bases[m + 1] = Some(Vec::new());
        let mut rp = TraceReplay {
            nvars: *nvars,
            order: *order,
            prime: *prime,
            m,
            lps: Vec::new(),
            rules: vec![Vec::new(); m],
            calls: Vec::new(),
            bases,
            insertions: Vec::new(),
            problems: Vec::new(),
        };
        let mut last_seq = None;
        for ev in events {
            if let Some(prev) = last_seq {
                if ev.seq <= prev {
                    rp.problems
                        .push(format!("sequence number {} after {}", ev.seq, prev));
                }
            }
            last_seq = Some(ev.seq);
            rp.apply(ev);
        }
        Ok(rp)
    }

    fn create(
        &mut self,
        seq: u64,
        pos: RPos,
        sig: &Signature,
        hm: Option<&Monomial>,
        genealogy: Option<&Genealogy>,
    ) {
        if pos != self.lps.len() {
            self.problems.push(format!(
                "r{pos} created at seq {seq} but {} positions exist",
                self.lps.len()
            ));
            return;
        }
        if let Some(gen) = genealogy {
            let consistent = self
                .lps
                .get(gen.l_star)
                .is_some_and(|star| star.sig.mul(&gen.u_over) == *sig)
                && gen.l_sub < pos;
            if !consistent {
                self.problems
                    .push(format!("r{pos}: genealogy inconsistent with signature"));
            }
        }
        self.lps.push(ReplayLp {
            pos,
            sig: sig.clone(),
            hm: hm.cloned(),
            genealogy: genealogy.cloned(),
            created_seq: seq,
            finished_seq: None,
            zero: false,
        });
    }

    fn apply(&mut self, ev: &TraceEvent) {
        let seq = ev.seq;
        match &ev.kind {
            EventKind::Header { .. } => {}
            EventKind::InputAdded { pos, sig, hm } => self.create(seq, *pos, sig, Some(hm), None),
            EventKind::CallBegin { call } => self.calls.push(ReplayCall {
                call: *call,
                begin_seq: seq,
                ..Default::default()
            }),
            EventKind::CallEnd { call, basis } => {
                if let Some(c) = self.calls.last_mut() {
                    c.end_seq = Some(seq);
                }
                if *call < self.bases.len() {
                    self.bases[*call] = Some(basis.clone());
                }
            }
            EventKind::DegreeStep { d, .. } => {
                if let Some(c) = self.calls.last_mut() {
                    c.ds.push(*d);
                }
            }
            EventKind::SPolCreated {
                pos,
                sig,
                hm,
                genealogy,
            }
            | EventKind::NewFromTopReduction {
                pos,
                sig,
                hm,
                genealogy,
            } => self.create(seq, *pos, sig, hm.as_ref(), Some(genealogy)),
            EventKind::PhiPreReduce { pos, hm_after, .. }
            | EventKind::ReductionStep { pos, hm_after, .. } => {
                if let Some(lp) = self.lps.get_mut(*pos) {
                    lp.hm = hm_after.clone();
                } else {
                    self.problems
                        .push(format!("r{pos} reduced before creation"));
                }
            }
            EventKind::ReductionToZero { pos, .. } => {
                if let Some(lp) = self.lps.get_mut(*pos) {
                    lp.hm = None;
                    lp.zero = true;
                    lp.finished_seq = Some(seq);
                } else {
                    self.problems.push(format!("r{pos} zero before creation"));
                }
            }
            EventKind::DoneInserted { pos, sig, hm, call } => {
                let Some(lp) = self.lps.get_mut(*pos) else {
                    self.problems
                        .push(format!("r{pos} inserted into Done before creation"));
                    return;
                };
                if lp.sig != *sig {
                    self.problems
                        .push(format!("r{pos} inserted with a different signature"));
                }
                lp.hm = Some(hm.clone());
                lp.finished_seq = Some(seq);
                let Some(call_slot) = self.calls.len().checked_sub(1) else {
                    self.problems
                        .push(format!("r{pos} inserted outside a call"));
                    return;
                };
                let prior = self.calls[call_slot].inserted.len();
                self.calls[call_slot].inserted.push(*pos);
                let rule_lens = self.rules.iter().map(Vec::len).collect();
                self.insertions.push(Insertion {
                    seq,
                    pos: *pos,
                    call: *call,
                    sig: sig.clone(),
                    hm: hm.clone(),
                    call_slot,
                    prior,
                    rule_lens,
                });
            }
            EventKind::RuleAdded { index, mono, pos } => {
                if *index == 0 || *index > self.m {
                    self.problems.push(format!("rule with index {index}"));
                    return;
                }
                self.rules[index - 1].push(ReplayRule {
                    mono: mono.clone(),
                    pos: *pos,
                    seq,
                });
            }
            EventKind::CritPairCreated { .. }
            | EventKind::F5CritPairReject { .. }
            | EventKind::RewrittenReject { .. }
            | EventKind::ToDoPop { .. }
            | EventKind::ReductorRejected { .. }
            | EventKind::DescentStep { .. }
            | EventKind::DescentDone { .. } => {}
        }
    }

    pub fn sig(&self, pos: RPos) -> &Signature {
        &self.lps[pos].sig
    }

    pub fn hm(&self, pos: RPos) -> Option<&Monomial> {
        self.lps[pos].hm.as_ref()
    }

    /// `G_g` for the insertion: `G_{i+1} ∪ {r_i} ∪` earlier insertions of the call, ascending.
    pub fn gg(&self, ins: &Insertion) -> Vec<RPos> {
        let mut out: Vec<RPos> = self
            .bases
            .get(ins.call + 1)
            .and_then(|b| b.clone())
            .unwrap_or_default();
        out.push(input_pos(ins.call));
        out.extend(&self.calls[ins.call_slot].inserted[..ins.prior]);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// First element of `G_{index+1}` whose head divides `mono`.
    pub fn phi_divisor(&self, index: usize, mono: &Monomial) -> Option<RPos> {
        if index >= self.m {
            return None;
        }
        self.bases[index + 1]
            .as_ref()?
            .iter()
            .copied()
            .find(|&q| self.hm(q).is_some_and(|h| mono.is_divisible_by(h)))
    }

    /// Engine semantics of `Rewritten?` over the first `lens` rules: the newest
    /// dividing rule belongs to someone else. `Err` when a generated position has no rule.
    pub fn rewriter_with(
        &self,
        lens: &[usize],
        u: &Monomial,
        r: RPos,
    ) -> Result<Option<RPos>, RPos> {
        let s = &self.lps[r].sig;
        let target = s.mono.mul(u);
        let rules = &self.rules[s.index - 1][..lens[s.index - 1]];
        match rules
            .iter()
            .rev()
            .find(|rule| target.is_divisible_by(&rule.mono))
        {
            Some(rule) => Ok((rule.pos != r).then_some(rule.pos)),
            None if r < self.m => Ok(None),
            None => Err(r),
        }
    }

    /// Definitional Rewritten criterion: some newer rule of the same index divides `u * S(r)`.
    pub fn satisfies_rewritten(&self, lens: &[usize], u: &Monomial, r: RPos) -> bool {
        let s = &self.lps[r].sig;
        let target = s.mono.mul(u);
        self.rules[s.index - 1][..lens[s.index - 1]]
            .iter()
            .any(|rule| rule.pos > r && target.is_divisible_by(&rule.mono))
    }

    pub fn rule_lens_at_end(&self) -> Vec<usize> {
        self.rules.iter().map(Vec::len).collect()
    }
}
