use std::cmp::Ordering;

use crate::poly::{FieldElement, Monomial, PolyRing, Polynomial};
use crate::signature::{
    input_pos, sig_cmp, Genealogy, LabeledPolynomial, LpStatus, ModuleVector, RPos, Signature,
};
use crate::trace::{EventKind, ReductionTrail, RejectCheck, TraceLog, TrailStep};

use super::{
    Budget, CallDegrees, Config, CriticalPair, F5Error, F5Run, Fault, Rule, RuleTable,
    SnapshotMark, Stats,
};

#[derive(Debug)]
pub(super) enum StepError {
    Budget(Budget),
    Fatal(F5Error),
}

impl From<F5Error> for StepError {
    fn from(e: F5Error) -> Self {
        StepError::Fatal(e)
    }
}

/// Result of one `TopReduction` call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopOutcome {
    Completed,
    Retry(Vec<RPos>),
}

/// Mutable F5 state. Fields are public so fixtures can set up exact situations.
#[derive(Debug)]
pub struct EngineState {
    pub ring: PolyRing,
    pub inputs: Vec<Polynomial>,
    /// The global sequence `R`.
    pub lps: Vec<LabeledPolynomial>,
    /// `bases[i] = G_i` once call `i` finished; `bases[m + 1]` stays empty.
    pub bases: Vec<Vec<RPos>>,
    /// `G_i` of the running call.
    pub g: Vec<RPos>,
    pub done: Vec<RPos>,
    pub rules: RuleTable,
    pub call: usize,
    pub config: Config,
    pub stats: Stats,
    pub trace: TraceLog,
    pub d_histories: Vec<CallDegrees>,
    pub marks: Vec<SnapshotMark>,
}

impl EngineState {
    /// Validates and normalizes the inputs, creates `r_k = (F_k, f_k)` at position
    /// `k - 1` and sets `G_m = {r_m}`.
    pub fn new(ring: PolyRing, inputs: &[Polynomial], config: Config) -> Result<Self, F5Error> {
        if inputs.is_empty() {
            return Err(F5Error::NoInputs);
        }
        let m = inputs.len();
        let mut monic = Vec::with_capacity(m);
        for (k, f) in inputs.iter().enumerate() {
            let index = k + 1;
            if f.is_zero() {
                return Err(F5Error::ZeroInputPolynomial { index });
            }
            let nv = f.head_monomial().unwrap().nvars();
            if nv != ring.nvars {
                return Err(F5Error::VariableCount {
                    index,
                    got: nv,
                    expected: ring.nvars,
                });
            }
            if !f.is_homogeneous() {
                return Err(F5Error::NonHomogeneousInput { index });
            }
            monic.push(ring.monic(f).0);
        }
        let mut trace = TraceLog::new();
        trace.emit(EventKind::Header {
            nvars: ring.nvars,
            order: ring.order,
            prime: ring.field.modulus(),
            m,
        });
        let mut lps = Vec::with_capacity(m);
        for (k, f) in monic.iter().enumerate() {
            let sig = Signature::unit(ring.nvars, k + 1);
            trace.emit(EventKind::InputAdded {
                pos: k,
                sig: sig.clone(),
                hm: f.head_monomial().unwrap().clone(),
            });
            lps.push(LabeledPolynomial {
                pos: k,
                sig,
                poly: f.clone(),
                initial: f.clone(),
                mv: ModuleVector::unit(&ring, m, k + 1),
                genealogy: None,
                raw_scale: FieldElement::ONE,
                trail: ReductionTrail::default(),
                status: LpStatus::Input,
            });
        }
        let mut bases = vec![Vec::new(); m + 2];
        bases[m] = vec![input_pos(m)];
        Ok(EngineState {
            ring,
            inputs: monic,
            lps,
            g: bases[m].clone(),
            bases,
            done: Vec::new(),
            rules: RuleTable::new(m),
            call: m,
            config,
            stats: Stats::default(),
            trace,
            d_histories: Vec::new(),
            marks: Vec::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.inputs.len()
    }

    pub fn into_run(self) -> F5Run {
        F5Run {
            ring: self.ring,
            inputs: self.inputs,
            lps: self.lps,
            bases: self.bases,
            rules: self.rules,
            d_histories: self.d_histories,
            marks: self.marks,
            stats: self.stats,
            trace: self.trace,
        }
    }

    fn sig(&self, p: RPos) -> &Signature {
        &self.lps[p].sig
    }

    fn hm(&self, p: RPos) -> &Monomial {
        self.lps[p]
            .poly
            .head_monomial()
            .expect("head monomial of a zero polynomial")
    }

    fn sig_cmp(&self, a: &Signature, b: &Signature) -> Ordering {
        sig_cmp(a, b, self.ring.order)
    }

    /// First element of `G_{index+1}` whose head divides `mono`; never for index `m`.
    pub fn phi_divisor(&self, index: usize, mono: &Monomial) -> Option<RPos> {
        if index >= self.m() {
            return None;
        }
        self.bases[index + 1]
            .iter()
            .copied()
            .find(|&q| mono.is_divisible_by(self.hm(q)))
    }

    /// `AlgorithmF5(i, f_i, G_{i+1})`.
    pub(super) fn algorithm_f5(&mut self, i: usize) -> Result<(), StepError> {
        self.call = i;
        self.trace.emit(EventKind::CallBegin { call: i });
        let ri = input_pos(i);
        let mut pending: Vec<CriticalPair> = Vec::new();
        for r in self.bases[i + 1].clone() {
            if let Some(p) = self.crit_pair(ri, r)? {
                pending.push(p);
            }
        }
        self.g = self.bases[i + 1].clone();
        self.g.push(ri);
        let mut ds = Vec::new();
        while let Some(d) = pending.iter().map(|p| p.degree).min() {
            if d > self.config.max_degree {
                self.d_histories.push(CallDegrees { call: i, ds });
                return Err(StepError::Budget(Budget::Degree));
            }
            let (batch, rest): (Vec<_>, Vec<_>) = pending.into_iter().partition(|p| p.degree == d);
            pending = rest;
            self.trace.emit(EventKind::DegreeStep {
                call: i,
                d,
                pairs: batch.len(),
            });
            ds.push(d);
            let f = self.spol(batch)?;
            let rd = match self.reduction(f) {
                Ok(rd) => rd,
                Err(e) => {
                    self.d_histories.push(CallDegrees { call: i, ds });
                    return Err(e);
                }
            };
            for r in rd {
                for p in self.g.clone() {
                    match self.crit_pair(r, p) {
                        Ok(Some(cp)) => pending.push(cp),
                        Ok(None) => {}
                        Err(e) => {
                            self.d_histories.push(CallDegrees { call: i, ds });
                            return Err(e);
                        }
                    }
                }
                self.g.push(r);
            }
        }
        self.d_histories.push(CallDegrees { call: i, ds });
        let mut basis = self.g.clone();
        basis.sort_unstable();
        self.trace.emit(EventKind::CallEnd {
            call: i,
            basis: basis.clone(),
        });
        self.bases[i] = basis;
        self.done.clear();
        Ok(())
    }

    /// `CritPair(r_a, r_b)`: orients by multiplied signature and applies the
    /// normal-form check to both parts.
    pub(super) fn crit_pair(
        &mut self,
        a: RPos,
        b: RPos,
    ) -> Result<Option<CriticalPair>, StepError> {
        let (ha, hb) = (self.hm(a).clone(), self.hm(b).clone());
        let t = ha.lcm(&hb);
        let ua = t.div(&ha).unwrap();
        let ub = t.div(&hb).unwrap();
        let sa = self.sig(a).mul(&ua);
        let sb = self.sig(b).mul(&ub);
        let a_first = match self.sig_cmp(&sa, &sb) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => a > b,
        };
        let (u1, p1, s1, u2, p2, s2) = if a_first {
            (ua, a, sa, ub, b, sb)
        } else {
            (ub, b, sb, ua, a, sa)
        };
        for (part, s) in [(1u8, &s1), (2u8, &s2)] {
            if let Some(divisor) = self.phi_divisor(s.index, &s.mono) {
                self.stats.f5_rejected += 1;
                self.trace.emit(EventKind::F5CritPairReject {
                    u1,
                    p1,
                    u2,
                    p2,
                    part,
                    sig: s.clone(),
                    divisor,
                });
                return Ok(None);
            }
        }
        self.stats.pairs_created += 1;
        if self.stats.pairs_created > self.config.max_pairs {
            return Err(StepError::Budget(Budget::Pairs));
        }
        let degree = t.degree();
        self.trace.emit(EventKind::CritPairCreated {
            t: t.clone(),
            u1: u1.clone(),
            p1,
            u2: u2.clone(),
            p2,
            sig: s1,
            degree,
        });
        Ok(Some(CriticalPair {
            t,
            u1,
            p1,
            u2,
            p2,
            degree,
        }))
    }

    /// The rewriter of `u * S(r)`, if it is not `r` itself: the newest rule of the
    /// same index whose monomial divides the multiplied signature.
    pub fn rewriter(&self, u: &Monomial, r: RPos) -> Result<Option<RPos>, F5Error> {
        let s = self.sig(r);
        let target = s.mono.mul(u);
        match self
            .rules
            .rules(s.index)
            .iter()
            .rev()
            .find(|rule| target.is_divisible_by(&rule.mono))
        {
            Some(rule) => Ok((rule.pos != r).then_some(rule.pos)),
            None if r < self.m() => Ok(None),
            None => Err(F5Error::MissingRule { pos: r }),
        }
    }

    /// `Rewritten?(u, r)`.
    pub fn rewritten(&self, u: &Monomial, r: RPos) -> Result<bool, F5Error> {
        Ok(self.rewriter(u, r)?.is_some())
    }

    pub fn add_rule(&mut self, sig: &Signature, pos: RPos) {
        self.rules.push(
            sig.index,
            Rule {
                mono: sig.mono.clone(),
                pos,
            },
        );
        self.trace.emit(EventKind::RuleAdded {
            index: sig.index,
            mono: sig.mono.clone(),
            pos,
        });
    }

    /// Appends a new labeled polynomial built as `u_over * l_star - u_under * l_sub`.
    fn create(
        &mut self,
        sig: Signature,
        raw: Polynomial,
        raw_mv: ModuleVector,
        genealogy: Genealogy,
    ) -> RPos {
        let (poly, scale) = self.ring.monic(&raw);
        let mv = raw_mv.scale(&self.ring, scale);
        let pos = self.lps.len();
        self.lps.push(LabeledPolynomial {
            pos,
            sig,
            initial: poly.clone(),
            poly,
            mv,
            genealogy: Some(genealogy),
            raw_scale: scale,
            trail: ReductionTrail::default(),
            status: LpStatus::ToDo,
        });
        pos
    }

    /// `SPol(P_d)`: builds S-polynomials in increasing signature order, skipping
    /// pairs with a rewritten part. Returns the new positions sorted by signature.
    pub fn spol(&mut self, mut pairs: Vec<CriticalPair>) -> Result<Vec<RPos>, F5Error> {
        let ord = self.ring.order;
        pairs.sort_by(|a, b| {
            let sa = self.sig(a.p1).mul(&a.u1);
            let sb = self.sig(b.p1).mul(&b.u1);
            sig_cmp(&sa, &sb, ord)
                .then(a.p1.cmp(&b.p1))
                .then(a.p2.cmp(&b.p2))
        });
        let mut out = Vec::new();
        for cp in pairs {
            let rejected = match self.rewriter(&cp.u1, cp.p1)? {
                Some(w) => Some((1u8, w)),
                None => self.rewriter(&cp.u2, cp.p2)?.map(|w| (2u8, w)),
            };
            if let Some((part, rewriter)) = rejected {
                self.stats.rewritten_rejected += 1;
                self.trace.emit(EventKind::RewrittenReject {
                    u1: cp.u1,
                    p1: cp.p1,
                    u2: cp.u2,
                    p2: cp.p2,
                    part,
                    rewriter,
                });
                continue;
            }
            let ring = self.ring;
            let (l1, l2) = (&self.lps[cp.p1], &self.lps[cp.p2]);
            let raw = ring.axpy(
                &ring.mul_term(FieldElement::ONE, &cp.u1, &l1.poly),
                FieldElement::ONE,
                &cp.u2,
                &l2.poly,
            );
            let raw_mv = l1.mv.mul_term(&ring, FieldElement::ONE, &cp.u1).axpy(
                &ring,
                FieldElement::ONE,
                &cp.u2,
                &l2.mv,
            );
            let sig = l1.sig.mul(&cp.u1);
            let genealogy = Genealogy {
                l_star: cp.p1,
                l_sub: cp.p2,
                u_over: cp.u1,
                u_under: cp.u2,
                l_sub_steps: l2.trail.len(),
            };
            let pos = self.create(sig.clone(), raw, raw_mv, genealogy.clone());
            self.stats.spols += 1;
            self.trace.emit(EventKind::SPolCreated {
                pos,
                sig: sig.clone(),
                hm: self.lps[pos].poly.head_monomial().cloned(),
                genealogy,
            });
            self.add_rule(&sig, pos);
            out.push(pos);
        }
        out.sort_by(|&a, &b| self.sig_cmp(self.sig(a), self.sig(b)).then(a.cmp(&b)));
        Ok(out)
    }

    /// `Reduction(F)`: processes `ToDo` in increasing signature order; returns `Done`
    /// in insertion order.
    pub(super) fn reduction(&mut self, f: Vec<RPos>) -> Result<Vec<RPos>, StepError> {
        let mut todo = f;
        self.done.clear();
        let mut pops = 0usize;
        while !todo.is_empty() {
            pops += 1;
            if pops > self.config.max_reduction_steps {
                return Err(StepError::Budget(Budget::ReductionSteps));
            }
            let k = self.min_signature(&todo)?;
            let h = todo.swap_remove(k);
            self.trace.emit(EventKind::ToDoPop {
                pos: h,
                sig: self.sig(h).clone(),
            });
            self.phi_pre_reduce(h);
            match self.top_reduction(h)? {
                TopOutcome::Completed => {
                    if self.lps[h].poly.is_zero() {
                        self.lps[h].status = LpStatus::Zero;
                    } else {
                        self.insert_done(h);
                    }
                }
                TopOutcome::Retry(again) => todo.extend(again),
            }
        }
        Ok(self.done.clone())
    }

    fn min_signature(&self, todo: &[RPos]) -> Result<usize, F5Error> {
        let mut best = 0;
        for k in 1..todo.len() {
            match self.sig_cmp(self.sig(todo[k]), self.sig(todo[best])) {
                Ordering::Less => best = k,
                Ordering::Equal => {
                    return Err(F5Error::Internal(format!(
                        "equal signatures in ToDo: r{} and r{}",
                        todo[k], todo[best]
                    )))
                }
                Ordering::Greater => {}
            }
        }
        Ok(best)
    }

    /// Full normal form of `poly(h)` modulo `G_{i+1}`, then monic.
    fn phi_pre_reduce(&mut self, h: RPos) {
        let ring = self.ring;
        let next: Vec<RPos> = self.bases[self.call + 1].clone();
        let polys: Vec<&Polynomial> = next.iter().map(|&q| &self.lps[q].poly).collect();
        let (nf, steps) = ring.normal_form_steps(&self.lps[h].poly, &polys);
        if !steps.is_empty() {
            let hm_before = self.lps[h].poly.head_monomial().cloned();
            let mut mv = self.lps[h].mv.clone();
            let mut trail_steps = Vec::with_capacity(steps.len());
            for s in &steps {
                let q = next[s.reductor];
                mv = mv.axpy(&ring, s.coeff, &s.mult, &self.lps[q].mv);
                trail_steps.push(TrailStep::Phi {
                    coeff: s.coeff,
                    mult: s.mult.clone(),
                    reductor: q,
                });
            }
            let lp = &mut self.lps[h];
            lp.poly = nf;
            lp.mv = mv;
            for t in trail_steps {
                lp.trail.push(t);
            }
            self.trace.emit(EventKind::PhiPreReduce {
                pos: h,
                reductors: steps.iter().map(|s| next[s.reductor]).collect(),
                hm_before,
                hm_after: self.lps[h].poly.head_monomial().cloned(),
            });
        }
        self.normalize(h);
    }

    fn normalize(&mut self, h: RPos) {
        let ring = self.ring;
        let lp = &mut self.lps[h];
        let (p, factor) = ring.monic(&lp.poly);
        if factor != FieldElement::ONE {
            lp.poly = p;
            lp.mv = lp.mv.scale(&ring, factor);
            lp.trail.push(TrailStep::Scale { factor });
        }
    }

    fn insert_done(&mut self, h: RPos) {
        let mut gg: Vec<RPos> = self.g.iter().chain(&self.done).copied().collect();
        gg.sort_unstable();
        let seq = self.trace.next_seq();
        self.marks.push(SnapshotMark {
            g: h,
            gg,
            rule_lens: self.rules.lens(),
            r_len: self.lps.len(),
            call: self.call,
            seq,
        });
        self.trace.emit(EventKind::DoneInserted {
            pos: h,
            sig: self.sig(h).clone(),
            hm: self.hm(h).clone(),
            call: self.call,
        });
        self.lps[h].status = LpStatus::Done;
        self.stats.done_inserted += 1;
        self.done.push(h);
    }

    /// `TopReduction(h)`.
    pub fn top_reduction(&mut self, h: RPos) -> Result<TopOutcome, F5Error> {
        if self.lps[h].poly.is_zero() {
            self.stats.zero_reductions += 1;
            self.trace.emit(EventKind::ReductionToZero {
                pos: h,
                sig: self.sig(h).clone(),
            });
            return Ok(TopOutcome::Completed);
        }
        let Some((j, u)) = self.is_reducible(h)? else {
            return Ok(TopOutcome::Completed);
        };
        let ring = self.ring;
        let reductor_sig = self.sig(j).mul(&u);
        let safe = self.sig_cmp(self.sig(h), &reductor_sig) == Ordering::Greater;
        if safe || self.config.fault == Some(Fault::IgnoreSignatureSafety) {
            let hm_before = self.hm(h).clone();
            let c = ring
                .field
                .div(
                    self.lps[h].poly.head_coeff().unwrap(),
                    self.lps[j].poly.head_coeff().unwrap(),
                )
                .unwrap();
            let poly = ring.axpy(&self.lps[h].poly, c, &u, &self.lps[j].poly);
            let mv = self.lps[h].mv.axpy(&ring, c, &u, &self.lps[j].mv);
            {
                let lp = &mut self.lps[h];
                lp.poly = poly;
                lp.mv = mv;
                lp.trail.push(TrailStep::Reduce {
                    coeff: c,
                    mult: u.clone(),
                    reductor: j,
                });
            }
            self.normalize(h);
            self.stats.reduction_steps += 1;
            self.trace.emit(EventKind::ReductionStep {
                pos: h,
                sig: self.sig(h).clone(),
                reductor: j,
                mult: u,
                reductor_sig,
                hm_before,
                hm_after: self.lps[h].poly.head_monomial().cloned(),
            });
            return Ok(TopOutcome::Retry(vec![h]));
        }
        let (lj, lh) = (&self.lps[j], &self.lps[h]);
        let raw = ring.axpy(
            &ring.mul_term(FieldElement::ONE, &u, &lj.poly),
            FieldElement::ONE,
            &ring.one_monomial(),
            &lh.poly,
        );
        let raw_mv = lj.mv.mul_term(&ring, FieldElement::ONE, &u).axpy(
            &ring,
            FieldElement::ONE,
            &ring.one_monomial(),
            &lh.mv,
        );
        let genealogy = Genealogy {
            l_star: j,
            l_sub: h,
            u_over: u,
            u_under: ring.one_monomial(),
            l_sub_steps: lh.trail.len(),
        };
        let n = self.create(reductor_sig.clone(), raw, raw_mv, genealogy.clone());
        self.stats.new_from_top_reduction += 1;
        self.trace.emit(EventKind::NewFromTopReduction {
            pos: n,
            sig: reductor_sig.clone(),
            hm: self.lps[n].poly.head_monomial().cloned(),
            genealogy,
        });
        self.add_rule(&reductor_sig, n);
        Ok(TopOutcome::Retry(vec![h, n]))
    }

    /// `IsReducible(h)`: first candidate of `G_i ∪ Done` (ascending position)
    /// passing checks (a)-(d), with its multiplier.
    pub fn is_reducible(&mut self, h: RPos) -> Result<Option<(RPos, Monomial)>, F5Error> {
        let mut candidates: Vec<RPos> = self.g.iter().chain(&self.done).copied().collect();
        candidates.sort_unstable();
        let hm_h = self.hm(h).clone();
        for j in candidates {
            // (a)
            let Some(u) = hm_h.div(self.hm(j)) else {
                continue;
            };
            let sj = self.sig(j).mul(&u);
            let rejected = if let Some(d) = self.phi_divisor(sj.index, &sj.mono) {
                Some((RejectCheck::B, Some(d)))
            } else if self.config.fault == Some(Fault::RejectAllByRewritten) {
                Some((RejectCheck::C, None))
            } else if let Some(w) = self.rewriter(&u, j)? {
                Some((RejectCheck::C, Some(w)))
            } else if &sj == self.sig(h) {
                Some((RejectCheck::D, None))
            } else {
                None
            };
            match rejected {
                Some((check, witness)) => {
                    self.trace.emit(EventKind::ReductorRejected {
                        pos: h,
                        candidate: j,
                        mult: u,
                        check,
                        witness,
                    });
                }
                None => return Ok(Some((j, u))),
            }
        }
        Ok(None)
    }
}
