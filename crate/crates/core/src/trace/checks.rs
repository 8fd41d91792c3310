//! Post-hoc checkers over a replayed event log.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::engine::F5Run;
use crate::poly::{quotient_cmp, Monomial, MonomialOrder, MonomialQuotient};
use crate::signature::{check_admissible, sig_cmp, sig_divides, RPos, Signature};

use super::{EventKind, Insertion, RejectCheck, TraceError, TraceEvent, TraceReplay};

const MAX_MESSAGES: usize = 20;

/// Verdict of one checker: how many items were examined and what failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failure_count: usize,
    /// The first few failure descriptions.
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < MAX_MESSAGES {
            self.failures.push(msg.into());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_MESSAGES {
                self.failures.push(f);
            }
        }
    }
}

/// First `j` with `d_j > d_{j+1}` or `d_j >= d_{j+2}`.
pub fn d_progression_violation(ds: &[u32]) -> Option<usize> {
    (0..ds.len()).find(|&j| {
        ds.get(j + 1).is_some_and(|&n| ds[j] > n) || ds.get(j + 2).is_some_and(|&n| ds[j] >= n)
    })
}

pub fn check_d_progression(rp: &TraceReplay) -> CheckReport {
    let mut rep = CheckReport::new("degree progression");
    for c in &rp.calls {
        rep.checked += 1;
        if let Some(j) = d_progression_violation(&c.ds) {
            rep.fail(format!(
                "call {}: d history {:?} violates at j = {j}",
                c.call, c.ds
            ));
        }
    }
    rep
}

/// Every top-reduction step is signature-safe; normal-form steps use higher-index reductors.
pub fn check_signature_safety(events: &[TraceEvent], rp: &TraceReplay) -> CheckReport {
    let mut rep = CheckReport::new("signature safety");
    for ev in events {
        match &ev.kind {
            EventKind::ReductionStep {
                pos,
                sig,
                reductor,
                mult,
                reductor_sig,
                ..
            } => {
                rep.checked += 1;
                if rp.sig(*reductor).mul(mult) != *reductor_sig || rp.sig(*pos) != sig {
                    rep.fail(format!(
                        "seq {}: signatures of r{pos} / {mult:?} * r{reductor} disagree with the log",
                        ev.seq
                    ));
                } else if sig_cmp(sig, reductor_sig, rp.order) != Ordering::Greater {
                    rep.fail(format!(
                        "seq {}: r{pos} {sig:?} reduced by r{reductor} with {reductor_sig:?}",
                        ev.seq
                    ));
                }
            }
            EventKind::PhiPreReduce { pos, reductors, .. } => {
                let idx = rp.sig(*pos).index;
                for &q in reductors {
                    rep.checked += 1;
                    if rp.sig(q).index <= idx {
                        rep.fail(format!(
                            "seq {}: normal-form step of r{pos} used r{q} of index {}",
                            ev.seq,
                            rp.sig(q).index
                        ));
                    }
                }
            }
            _ => {}
        }
    }
    rep
}

/// First position where the degree sequence drops.
pub fn rule_degree_violation(degs: &[u32]) -> Option<usize> {
    degs.windows(2).position(|w| w[0] > w[1]).map(|k| k + 1)
}

pub fn check_rule_degrees(rp: &TraceReplay) -> CheckReport {
    let mut rep = CheckReport::new("rule degrees");
    for (k, rules) in rp.rules.iter().enumerate() {
        rep.checked += 1;
        let degs: Vec<u32> = rules.iter().map(|r| r.mono.degree()).collect();
        if let Some(at) = rule_degree_violation(&degs) {
            rep.fail(format!(
                "index {}: rule {at} has degree {} after {}",
                k + 1,
                degs[at],
                degs[at - 1]
            ));
        }
    }
    rep
}

/// Within each `Reduction` call, `ToDo` pops are non-decreasing in signature.
pub fn check_todo_order(events: &[TraceEvent], order: MonomialOrder) -> CheckReport {
    let mut rep = CheckReport::new("ToDo order");
    let mut last: Option<&Signature> = None;
    for ev in events {
        match &ev.kind {
            EventKind::DegreeStep { .. } | EventKind::CallBegin { .. } => last = None,
            EventKind::ToDoPop { pos, sig } => {
                rep.checked += 1;
                if let Some(prev) = last {
                    if sig_cmp(sig, prev, order) == Ordering::Less {
                        rep.fail(format!(
                            "seq {}: r{pos} {sig:?} popped after {prev:?}",
                            ev.seq
                        ));
                    }
                }
                last = Some(sig);
            }
            _ => {}
        }
    }
    rep
}

/// Everything created in call `i` carries signature index `i`.
pub fn check_index_uniformity(events: &[TraceEvent]) -> CheckReport {
    let mut rep = CheckReport::new("index uniformity");
    let mut call = None;
    for ev in events {
        let (what, index) = match &ev.kind {
            EventKind::CallBegin { call: c } => {
                call = Some(*c);
                continue;
            }
            EventKind::CritPairCreated { sig, .. } => ("pair", sig.index),
            EventKind::SPolCreated { sig, .. } => ("S-polynomial", sig.index),
            EventKind::NewFromTopReduction { sig, .. } => ("top-reduction polynomial", sig.index),
            EventKind::DoneInserted { sig, call: c, .. } => {
                rep.checked += 1;
                if sig.index != *c {
                    rep.fail(format!(
                        "seq {}: Done insertion of index {} in call {c}",
                        ev.seq, sig.index
                    ));
                }
                continue;
            }
            _ => continue,
        };
        rep.checked += 1;
        if Some(index) != call {
            rep.fail(format!(
                "seq {}: {what} of index {index} in call {call:?}",
                ev.seq
            ));
        }
    }
    rep
}

/// Top-reduction steps strictly lower the head monomial; the normal-form pre-step never raises it.
pub fn check_hm_decrease(events: &[TraceEvent], order: MonomialOrder) -> CheckReport {
    let mut rep = CheckReport::new("head monomial decrease");
    for ev in events {
        match &ev.kind {
            EventKind::ReductionStep {
                pos,
                hm_before,
                hm_after,
                ..
            } => {
                rep.checked += 1;
                if let Some(after) = hm_after {
                    if order.cmp(after, hm_before) != Ordering::Less {
                        rep.fail(format!("seq {}: r{pos} head did not decrease", ev.seq));
                    }
                }
            }
            EventKind::PhiPreReduce {
                pos,
                hm_before: Some(before),
                hm_after: Some(after),
                ..
            } => {
                rep.checked += 1;
                if order.cmp(after, before) == Ordering::Greater {
                    rep.fail(format!("seq {}: r{pos} head grew in normal form", ev.seq));
                }
            }
            _ => {}
        }
    }
    rep
}

/// Structural consistency found while replaying: creation before use, matching
/// genealogy, sequence numbers.
pub fn check_structure(rp: &TraceReplay) -> CheckReport {
    let mut rep = CheckReport::new("log structure");
    rep.checked = rp.lps.len() + rp.insertions.len();
    for p in &rp.problems {
        rep.fail(p.clone());
    }
    for ins in &rp.insertions {
        if rp.lps[ins.pos].created_seq >= ins.seq {
            rep.fail(format!("r{} inserted before it was created", ins.pos));
        }
    }
    rep
}

/// S-pair-chain ending at a labeled polynomial, walked back along greater parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub chain: Vec<RPos>,
    pub divisibility_ok: bool,
    pub quotient_descent_ok: bool,
    pub distinct_hm_ok: bool,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.divisibility_ok && self.quotient_descent_ok && self.distinct_hm_ok
    }
}

pub fn extract_chain(pos: RPos, rp: &TraceReplay) -> Result<ChainReport, TraceError> {
    let broken = || TraceError::BrokenGenealogy { pos };
    let mut chain = vec![pos];
    let mut cur = pos;
    while let Some(gen) = &rp.lps.get(cur).ok_or_else(broken)?.genealogy {
        if gen.l_star >= cur {
            return Err(broken());
        }
        cur = gen.l_star;
        chain.push(cur);
    }
    if cur >= rp.m || rp.sig(cur).index != rp.sig(pos).index {
        return Err(broken());
    }
    chain.reverse();
    let ord = rp.order;
    let mut divisibility_ok = true;
    let mut quotient_descent_ok = true;
    for w in chain.windows(2) {
        let (a, b) = (&rp.lps[w[0]], &rp.lps[w[1]]);
        let u = &b.genealogy.as_ref().unwrap().u_over;
        divisibility_ok &= sig_divides(&a.sig, &b.sig) && a.sig.mul(u) == b.sig;
        if let (Some(ha), Some(hb)) = (&a.hm, &b.hm) {
            let qa = MonomialQuotient::new(ha.clone(), a.sig.mono.clone());
            let qb = MonomialQuotient::new(hb.clone(), b.sig.mono.clone());
            quotient_descent_ok &= quotient_cmp(&qa, &qb, ord) == Ordering::Greater;
        }
    }
    let mut distinct_hm_ok = true;
    for (i, &a) in chain.iter().enumerate() {
        for (j, &b) in chain.iter().enumerate() {
            if i == j {
                continue;
            }
            let (Some(ha), Some(hb)) = (rp.hm(a), rp.hm(b)) else {
                continue;
            };
            if i < j && ha == hb {
                distinct_hm_ok = false;
            }
            if hb.is_divisible_by(ha) && !(i < j && ha.degree() < hb.degree()) {
                distinct_hm_ok = false;
            }
        }
    }
    Ok(ChainReport {
        chain,
        divisibility_ok,
        quotient_descent_ok,
        distinct_hm_ok,
    })
}

pub fn check_chains(rp: &TraceReplay) -> (CheckReport, Vec<ChainReport>) {
    let mut rep = CheckReport::new("S-pair chains");
    let mut chains = Vec::new();
    for pos in rp.m..rp.lps.len() {
        rep.checked += 1;
        match extract_chain(pos, rp) {
            Ok(c) => {
                if !c.passed() {
                    rep.fail(format!("chain {:?}: {c:?}", c.chain));
                }
                chains.push(c);
            }
            Err(e) => rep.fail(e.to_string()),
        }
    }
    (rep, chains)
}

/// Independent re-evaluation of `IsReducible` at a `Done` insertion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditOutcome {
    /// Candidates passing all of (a)-(d): the engine should have used one.
    pub unrejected: Vec<(RPos, Monomial)>,
    /// Candidates with (a) and a strictly smaller multiplied signature.
    pub signature_safe: Vec<(RPos, Monomial)>,
    pub missing_rule: Option<RPos>,
}

pub fn done_insertion_audit(rp: &TraceReplay, ins: &Insertion) -> AuditOutcome {
    let mut out = AuditOutcome::default();
    for j in rp.gg(ins) {
        let Some(hj) = rp.hm(j) else { continue };
        let Some(u) = ins.hm.div(hj) else { continue };
        let sj = rp.sig(j).mul(&u);
        if sig_cmp(&sj, &ins.sig, rp.order) == Ordering::Less {
            out.signature_safe.push((j, u.clone()));
        }
        if rp.phi_divisor(sj.index, &sj.mono).is_some() {
            continue;
        }
        match rp.rewriter_with(&ins.rule_lens, &u, j) {
            Ok(Some(_)) => continue,
            Ok(None) => {}
            Err(p) => {
                out.missing_rule = Some(p);
                continue;
            }
        }
        if sj == ins.sig {
            continue;
        }
        out.unrejected.push((j, u));
    }
    out
}

/// Runs the audit at every insertion. Returns the (a)-(d) verdict and the stronger
/// "no signature-safe reductor exists" consequence.
pub fn check_done_audit(rp: &TraceReplay) -> (CheckReport, CheckReport) {
    let mut audit = CheckReport::new("Done insertion audit");
    let mut safe = CheckReport::new("no signature-safe reductor at insertion");
    for ins in &rp.insertions {
        audit.checked += 1;
        safe.checked += 1;
        let out = done_insertion_audit(rp, ins);
        if let Some(p) = out.missing_rule {
            audit.fail(format!("r{}: no rule for candidate r{p}", ins.pos));
        }
        if let Some((j, u)) = out.unrejected.first() {
            audit.fail(format!(
                "r{} inserted although r{j} * {u:?} passes (a)-(d)",
                ins.pos
            ));
        }
        if let Some((j, u)) = out.signature_safe.first() {
            safe.fail(format!(
                "r{} has signature-safe reductor r{j} * {u:?}",
                ins.pos
            ));
        }
    }
    (audit, safe)
}

/// A critical pair identified by its parts, lower position first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairKey {
    pub a: RPos,
    pub ua: Monomial,
    pub b: RPos,
    pub ub: Monomial,
}

impl PairKey {
    pub fn new(p: RPos, up: Monomial, q: RPos, uq: Monomial) -> Self {
        if p <= q {
            PairKey {
                a: p,
                ua: up,
                b: q,
                ub: uq,
            }
        } else {
            PairKey {
                a: q,
                ua: uq,
                b: p,
                ub: up,
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairClass {
    /// A part was rejected by the normal-form check.
    F5,
    /// A part was rejected by the rewritten check (including check (d)).
    Rewritten,
    /// The S-polynomial was built and fully processed before `g`.
    Completed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Decision {
    F5,
    Rewritten,
    Built(RPos),
}

/// Decisive events per pair, in log order.
#[derive(Clone, Debug, Default)]
pub struct PairIndex {
    decisions: HashMap<PairKey, Vec<(u64, Decision)>>,
}

impl PairIndex {
    pub fn build(events: &[TraceEvent], rp: &TraceReplay) -> Self {
        let mut decisions: HashMap<PairKey, Vec<(u64, Decision)>> = HashMap::new();
        let one = Monomial::one(rp.nvars);
        for ev in events {
            let (key, d) = match &ev.kind {
                EventKind::F5CritPairReject { u1, p1, u2, p2, .. } => {
                    (PairKey::new(*p1, u1.clone(), *p2, u2.clone()), Decision::F5)
                }
                EventKind::RewrittenReject { u1, p1, u2, p2, .. } => (
                    PairKey::new(*p1, u1.clone(), *p2, u2.clone()),
                    Decision::Rewritten,
                ),
                EventKind::ReductorRejected {
                    pos,
                    candidate,
                    mult,
                    check,
                    ..
                } => {
                    let d = match check {
                        RejectCheck::B => Decision::F5,
                        RejectCheck::C | RejectCheck::D => Decision::Rewritten,
                    };
                    (PairKey::new(*candidate, mult.clone(), *pos, one.clone()), d)
                }
                EventKind::SPolCreated { pos, genealogy, .. }
                | EventKind::NewFromTopReduction { pos, genealogy, .. } => (
                    PairKey::new(
                        genealogy.l_star,
                        genealogy.u_over.clone(),
                        genealogy.l_sub,
                        genealogy.u_under.clone(),
                    ),
                    Decision::Built(*pos),
                ),
                _ => continue,
            };
            decisions.entry(key).or_default().push((ev.seq, d));
        }
        PairIndex { decisions }
    }
}

/// Classification of one sub-`S(g)` pair at an insertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub key: PairKey,
    pub class: Result<PairClass, String>,
}

/// Classifies every pair of `G_g` elements with signature below `S(g)` by its first
/// decisive event, and cross-checks rejections against the criterion definitions.
pub fn classify_pairs(rp: &TraceReplay, index: &PairIndex, ins: &Insertion) -> Vec<PairVerdict> {
    let gg = rp.gg(ins);
    let ord = rp.order;
    let mut out = Vec::new();
    for (x, &a) in gg.iter().enumerate() {
        for &b in &gg[x + 1..] {
            let (Some(ha), Some(hb)) = (rp.hm(a), rp.hm(b)) else {
                continue;
            };
            let t = ha.lcm(hb);
            let ua = t.div(ha).unwrap();
            let ub = t.div(hb).unwrap();
            let sa = rp.sig(a).mul(&ua);
            let sb = rp.sig(b).mul(&ub);
            let top = if sig_cmp(&sa, &sb, ord) == Ordering::Less {
                &sb
            } else {
                &sa
            };
            if sig_cmp(top, &ins.sig, ord) != Ordering::Less {
                continue;
            }
            let key = PairKey::new(a, ua.clone(), b, ub.clone());
            let first = index
                .decisions
                .get(&key)
                .and_then(|v| v.iter().find(|(seq, _)| *seq < ins.seq))
                .map(|&(_, d)| d);
            let class = match first {
                None => Err("no decisive event".to_string()),
                Some(Decision::F5) => {
                    let def = [(&ua, a), (&ub, b)].iter().any(|(u, p)| {
                        let s = rp.sig(*p).mul(u);
                        rp.phi_divisor(s.index, &s.mono).is_some()
                    });
                    if def {
                        Ok(PairClass::F5)
                    } else {
                        Err("rejected by the normal-form check but no part satisfies the F5 criterion".into())
                    }
                }
                Some(Decision::Rewritten) => {
                    let def = rp.satisfies_rewritten(&ins.rule_lens, &ua, a)
                        || rp.satisfies_rewritten(&ins.rule_lens, &ub, b);
                    if def {
                        Ok(PairClass::Rewritten)
                    } else {
                        Err(
                            "rejected as rewritten but no part satisfies the Rewritten criterion"
                                .into(),
                        )
                    }
                }
                Some(Decision::Built(p)) => match rp.lps[p].finished_seq {
                    Some(s) if s < ins.seq => Ok(PairClass::Completed),
                    _ => Err(format!("S-polynomial r{p} not processed before insertion")),
                },
            };
            out.push(PairVerdict { key, class });
        }
    }
    out
}

/// Pair-classification exhaustiveness at the selected insertions (all when `None`).
pub fn check_pair_classification(
    events: &[TraceEvent],
    rp: &TraceReplay,
    selection: Option<&[usize]>,
) -> CheckReport {
    let mut rep = CheckReport::new("pair classification");
    let index = PairIndex::build(events, rp);
    let all: Vec<usize> = (0..rp.insertions.len()).collect();
    for &k in selection.unwrap_or(&all) {
        let ins = &rp.insertions[k];
        for v in classify_pairs(rp, &index, ins) {
            rep.checked += 1;
            if let Err(msg) = v.class {
                rep.fail(format!("g = r{}: pair {:?}: {msg}", ins.pos, v.key));
            }
        }
    }
    rep
}

/// `(pos, sig, hm)` of a labeled polynomial for the dominated-pair scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledHead {
    pub pos: RPos,
    pub sig: Signature,
    pub hm: Monomial,
}

/// All `(f', f)` with `f` generated after `f'`, `HM(f') | HM(f)`,
/// `HM(f')/S(f') >_q HM(f)/S(f)` and `S(f') | S(f)`.
pub fn find_dominated_pairs(elems: &[LabeledHead], ord: MonomialOrder) -> Vec<(RPos, RPos)> {
    let mut out = Vec::new();
    for fp in elems {
        for f in elems {
            if fp.pos < f.pos && dominates(fp, f, ord) {
                out.push((fp.pos, f.pos));
            }
        }
    }
    out
}

pub fn dominates(fp: &LabeledHead, f: &LabeledHead, ord: MonomialOrder) -> bool {
    f.hm.is_divisible_by(&fp.hm)
        && sig_divides(&fp.sig, &f.sig)
        && quotient_cmp(
            &MonomialQuotient::new(fp.hm.clone(), fp.sig.mono.clone()),
            &MonomialQuotient::new(f.hm.clone(), f.sig.mono.clone()),
            ord,
        ) == Ordering::Greater
}

/// Dominated pairs `(f', g)` with `f'` in `G_g` at the insertion of `g`.
pub fn dominated_pairs_at(rp: &TraceReplay, ins: &Insertion) -> Vec<(RPos, RPos)> {
    let f = LabeledHead {
        pos: ins.pos,
        sig: ins.sig.clone(),
        hm: ins.hm.clone(),
    };
    rp.gg(ins)
        .into_iter()
        .filter_map(|p| {
            let fp = LabeledHead {
                pos: p,
                sig: rp.sig(p).clone(),
                hm: rp.hm(p)?.clone(),
            };
            (p < f.pos && dominates(&fp, &f, rp.order)).then_some((p, f.pos))
        })
        .collect()
}

/// Replaying each trail from the creation-time polynomial reproduces the stored one.
pub fn check_replay_soundness(run: &F5Run) -> CheckReport {
    let mut rep = CheckReport::new("trail replay");
    for lp in &run.lps {
        rep.checked += 1;
        let replayed = lp
            .trail
            .replay(&run.ring, &lp.initial, |p| &run.lps[p].poly);
        if replayed != lp.poly {
            rep.fail(format!("r{}: trail replay differs", lp.pos));
        }
    }
    rep
}

/// Every labeled polynomial is admissible with a consistent module vector.
pub fn check_admissibility(run: &F5Run) -> CheckReport {
    let mut rep = CheckReport::new("admissibility");
    for lp in &run.lps {
        rep.checked += 1;
        match check_admissible(lp, &run.inputs, &run.ring) {
            Ok(true) => {}
            Ok(false) => rep.fail(format!(
                "r{}: leading module term is not {:?}",
                lp.pos, lp.sig
            )),
            Err(e) => rep.fail(e.to_string()),
        }
    }
    rep
}

/// Which insertions the pair classification covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyScope {
    All,
    /// Skip when more than this many pairs were considered.
    UpToPairs(usize),
    Off,
}

/// The checks that need only the event log, e.g. one read back from a file.
pub fn trace_checks(events: &[TraceEvent], classify: bool) -> Result<Vec<CheckReport>, TraceError> {
    let rp = TraceReplay::from_events(events)?;
    let ord = rp.order;
    let (audit, safe) = check_done_audit(&rp);
    let mut out = vec![
        check_structure(&rp),
        check_d_progression(&rp),
        check_signature_safety(events, &rp),
        check_rule_degrees(&rp),
        check_todo_order(events, ord),
        check_index_uniformity(events),
        check_hm_decrease(events, ord),
        check_chains(&rp).0,
        audit,
        safe,
    ];
    if classify {
        out.push(check_pair_classification(events, &rp, None));
    }
    Ok(out)
}

/// The standard battery over a finished run: the trace checks plus trail replay
/// and admissibility, which need the polynomials.
pub fn standard_checks(
    run: &F5Run,
    classify: ClassifyScope,
) -> Result<Vec<CheckReport>, TraceError> {
    let considered = run.stats.pairs_created + run.stats.f5_rejected;
    let run_classify = match classify {
        ClassifyScope::All => true,
        ClassifyScope::UpToPairs(n) => considered <= n,
        ClassifyScope::Off => false,
    };
    let mut out = trace_checks(run.trace.events(), false)?;
    out.push(check_replay_soundness(run));
    out.push(check_admissibility(run));
    if run_classify {
        let events = run.trace.events();
        out.push(check_pair_classification(
            events,
            &TraceReplay::from_events(events)?,
            None,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_progression_examples() {
        assert_eq!(d_progression_violation(&[3, 4, 5]), None);
        assert_eq!(d_progression_violation(&[3, 3, 3]), Some(0));
        assert_eq!(d_progression_violation(&[3, 3, 4, 4]), None);
        assert_eq!(d_progression_violation(&[4, 3]), Some(0));
        assert_eq!(d_progression_violation(&[]), None);
    }

    #[test]
    fn rule_degree_examples() {
        assert_eq!(rule_degree_violation(&[1, 1, 2]), None);
        assert_eq!(rule_degree_violation(&[2, 1]), Some(1));
    }

    fn cand(pos: RPos, sig: (&[u16], usize), hm: &[u16]) -> LabeledHead {
        LabeledHead {
            pos,
            sig: Signature::new(Monomial::new(sig.0.to_vec()), sig.1),
            hm: Monomial::new(hm.to_vec()),
        }
    }

    #[test]
    fn domination_negative_control() {
        // f' = (F_1, x), f = (x F_1, x^2 y): x * x > x^2 y * 1 is false by degree
        let ord = MonomialOrder::DegRevLex;
        let fp = cand(0, (&[0, 0], 1), &[1, 0]);
        let f = cand(1, (&[1, 0], 1), &[2, 1]);
        assert!(find_dominated_pairs(&[fp.clone(), f], ord).is_empty());
        // coprime heads
        let g = cand(2, (&[1, 0], 1), &[0, 3]);
        assert!(find_dominated_pairs(&[fp.clone(), g], ord).is_empty());
        // a genuine instance: f' = (F_1, x^2), f = (y^2 F_1, x^2 y): x^2 y^2 > x^2 y
        let h = cand(3, (&[0, 2], 1), &[2, 1]);
        let fp2 = cand(0, (&[0, 0], 1), &[2, 0]);
        assert_eq!(find_dominated_pairs(&[fp2, h], ord), vec![(0, 3)]);
    }
}
