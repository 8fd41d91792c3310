use std::cmp::Ordering;
use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::F5Run;
use crate::poly::{FieldElement, Monomial};
use crate::signature::{sig_cmp, RPos, Signature};
use crate::trace::{dominates, EventKind, LabeledHead};

use super::descent::{
    find_reductor_for_target, find_unrejected_reductor, repr_sum_check, violated_property,
};
use super::snapshot::GgSnapshot;

/// One descent start `t * b_h` inside the snapshot of `marks[mark]`, with the
/// virtual reduction target `(target_hm, target_sig)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentInstance {
    pub mark: usize,
    pub t: Monomial,
    pub h: RPos,
    pub target_hm: Monomial,
    pub target_sig: Signature,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HarvestReport {
    pub snapshots: usize,
    pub instances: usize,
    pub descents_ok: usize,
    pub total_steps: usize,
    pub max_steps: usize,
    /// Instances whose found reductor passed checks (a)-(d).
    pub reductors_ok: usize,
    /// `(g, f')` dominated pairs at the sampled insertions.
    pub dominated_pairs: Vec<(RPos, RPos)>,
    pub dominated_ok: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub events: Vec<EventKind>,
}

impl HarvestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Up to `samples` ascending indices below `count`, deterministic in `seed`.
pub fn sample_marks(count: usize, samples: usize, seed: u64) -> Vec<usize> {
    if count <= samples {
        return (0..count).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = rand::seq::index::sample(&mut rng, count, samples).into_vec();
    v.sort_unstable();
    v
}

/// Both parts of every pair of `G_g` members whose signature is below `S(g)`.
pub fn harvest_instances(run: &F5Run, mark: usize) -> Vec<DescentInstance> {
    let m = &run.marks[mark];
    let snap = GgSnapshot::from_mark(run, m);
    let ord = run.ring.order;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (x, &a) in snap.elements.iter().enumerate() {
        for &b in &snap.elements[x + 1..] {
            let (ha, hb) = (snap.hm(a), snap.hm(b));
            let t = ha.lcm(hb);
            let ua = t.div(ha).unwrap();
            let ub = t.div(hb).unwrap();
            let sa = snap.sig(a).mul(&ua);
            let sb = snap.sig(b).mul(&ub);
            let top = if sig_cmp(&sa, &sb, ord) == Ordering::Less {
                &sb
            } else {
                &sa
            };
            if sig_cmp(top, &snap.g_sig, ord) != Ordering::Less {
                continue;
            }
            for (u, h) in [(ua, a), (ub, b)] {
                if seen.insert((u.clone(), h)) {
                    out.push(DescentInstance {
                        mark,
                        t: u,
                        h,
                        target_hm: t.clone(),
                        target_sig: snap.g_sig.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Runs descents on harvested instances and on dominated pairs at the sampled insertions.
///
/// `per_snapshot` bounds the instances descended per snapshot; larger sets are
/// sampled deterministically from `seed`.
pub fn run_harvest(
    run: &F5Run,
    marks: &[usize],
    step_cap: usize,
    per_snapshot: usize,
    seed: u64,
) -> HarvestReport {
    let mut rep = HarvestReport {
        snapshots: marks.len(),
        ..Default::default()
    };
    let ord = run.ring.order;
    for &mk in marks {
        let mark = &run.marks[mk];
        let snap = GgSnapshot::from_mark(run, mark);
        let all = harvest_instances(run, mk);
        let picked = sample_marks(all.len(), per_snapshot, seed.wrapping_add(mk as u64));
        for inst in picked.into_iter().map(|k| &all[k]) {
            let id = rep.instances;
            rep.instances += 1;
            match find_reductor_for_target(
                &inst.t,
                inst.h,
                &inst.target_hm,
                &inst.target_sig,
                &snap,
                step_cap,
            ) {
                Ok(found) => {
                    let d = &found.descent;
                    let mh_sig = snap.sig(inst.h).mul(&inst.t);
                    let mh_hm = inst.t.mul(snap.hm(inst.h));
                    let target = run
                        .ring
                        .mul_term(FieldElement::ONE, &inst.t, snap.poly(inst.h));
                    let final_ok = matches!(
                        violated_property(&d.representation, &mh_sig, &mh_hm, &snap),
                        Ok(None)
                    ) && repr_sum_check(&d.representation, &target, &snap);
                    if final_ok {
                        rep.descents_ok += 1;
                    } else {
                        rep.failures.push(format!(
                            "instance {id}: final representation fails P1-P3 or the sum check"
                        ));
                    }
                    rep.total_steps += d.steps;
                    rep.max_steps = rep.max_steps.max(d.steps);
                    if found.checks.all() {
                        rep.reductors_ok += 1;
                    } else {
                        rep.failures.push(format!(
                            "instance {id} ({:?} * b{} at g = b{}): reductor {:?} * b{} fails {:?}",
                            inst.t, inst.h, mark.g, found.mono, found.pos, found.checks
                        ));
                    }
                    rep.events.extend(d.events(id));
                }
                Err(e) => rep.failures.push(format!(
                    "instance {id} ({:?} * b{} at g = b{}): {e}",
                    inst.t, inst.h, mark.g
                )),
            }
        }
        let g = LabeledHead {
            pos: mark.g,
            sig: snap.g_sig.clone(),
            hm: snap.hm(mark.g).clone(),
        };
        for &fp in &snap.elements {
            let cand = LabeledHead {
                pos: fp,
                sig: snap.sig(fp).clone(),
                hm: snap.hm(fp).clone(),
            };
            if fp >= mark.g || !dominates(&cand, &g, ord) {
                continue;
            }
            rep.dominated_pairs.push((mark.g, fp));
            match find_unrejected_reductor(mark.g, fp, &snap, step_cap) {
                Ok(found) if found.checks.all() => rep.dominated_ok += 1,
                Ok(found) => rep.failures.push(format!(
                    "dominated pair (b{fp}, b{}): reductor {:?} * b{} fails {:?}",
                    mark.g, found.mono, found.pos, found.checks
                )),
                Err(e) => rep
                    .failures
                    .push(format!("dominated pair (b{fp}, b{}): {e}", mark.g)),
            }
        }
    }
    rep
}
