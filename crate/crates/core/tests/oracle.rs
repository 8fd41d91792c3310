mod common;

use std::cmp::Ordering;

use f5_core::engine::F5Run;
use f5_core::oracle::*;
use f5_core::poly::{FieldElement, Monomial};
use f5_core::signature::{sig_cmp, LpStatus};
use f5_core::trace::{EventKind, Property};

use common::comparator::{el, rep, table};
use common::*;

#[test]
fn comparator_element_examples() {
    let t = table();
    assert_eq!(
        elem_cmp(&el(1, [0, 1], 1), &el(100, [0, 1], 2), &t),
        Ordering::Greater
    );
    assert_eq!(
        elem_cmp(&el(1, [1, 0], 1), &el(1, [0, 1], 1), &t),
        Ordering::Greater
    );
    // same signature and position: not comparable, whatever the coefficients
    assert_eq!(
        elem_cmp(&el(-1, [1, 0], 1), &el(2, [1, 0], 1), &t),
        Ordering::Equal
    );
    assert_eq!(
        elem_cmp(&el(1, [0, 2], 1), &el(1, [0, 1], 3), &t),
        Ordering::Less
    );
    assert_eq!(
        elem_cmp(&el(1, [2, 0], 1), &el(1, [1, 0], 3), &t),
        Ordering::Greater
    );
}

#[test]
fn comparator_representation_examples() {
    let t = table();
    let a = rep(&[el(1, [2, 0], 1), el(1, [1, 1], 1), el(1, [0, 2], 1)]);
    let b = rep(&[el(1, [2, 0], 1), el(100, [0, 2], 1)]);
    assert_eq!(repr_cmp(&a, &b, &t), ReprOrdering::Greater);
    let c = rep(&[el(1, [2, 0], 1)]);
    assert_eq!(repr_cmp(&b, &c, &t), ReprOrdering::Greater);
    let d = rep(&[el(1, [1, 1], 1), el(1, [0, 2], 1), el(1, [2, 0], 2)]);
    assert_eq!(repr_cmp(&c, &d, &t), ReprOrdering::Greater);
    let e = rep(&[el(1, [0, 1], 3), el(1, [0, 2], 1), el(1, [2, 0], 2)]);
    assert_eq!(repr_cmp(&d, &e, &t), ReprOrdering::Greater);
    let f = rep(&[el(2, [0, 1], 3), el(1, [0, 2], 2)]);
    assert_eq!(repr_cmp(&e, &f, &t), ReprOrdering::Incomparable);
    assert_eq!(repr_cmp(&f, &e, &t), ReprOrdering::Incomparable);
    // the relations are antisymmetric
    for (x, y) in [(&a, &b), (&b, &c), (&c, &d), (&d, &e)] {
        assert_eq!(repr_cmp(y, x, &t), ReprOrdering::Less);
    }
    // ordered forms as written in the examples
    let form: Vec<ReprElement> = ordered_form(&e, &t);
    assert_eq!(
        form,
        vec![el(1, [0, 1], 3), el(1, [0, 2], 1), el(1, [2, 0], 2)]
    );
}

#[test]
fn buchberger_small_cases() {
    let r = ring(7, 2);
    let x = r.monomial(FieldElement::ONE, mono(&[1, 0]));
    let y = r.monomial(FieldElement::ONE, mono(&[0, 1]));
    let x2 = r.monomial(FieldElement::ONE, mono(&[2, 0]));
    assert!(ideal_equal(&r, std::slice::from_ref(&x), &[x.clone(), x2]));
    assert!(!ideal_equal(
        &r,
        std::slice::from_ref(&x),
        std::slice::from_ref(&y)
    ));
    assert_eq!(buchberger(&r, &[x.clone(), y.clone()]), vec![x.clone(), y]);
    let f = r.scale(r.field.from_i64(3), &x);
    assert_eq!(buchberger(&r, &[f]), vec![x]);
}

#[test]
fn buchberger_output_passes_the_exhaustion_test() {
    for name in SUITE {
        let pf = problem(name);
        let g = buchberger(&pf.ring, &pf.polys);
        assert!(is_groebner(&pf.ring, &g), "{name}");
        assert!(is_reduced(&pf.ring, &g), "{name}");
        for f in &pf.polys {
            let refs: Vec<_> = g.iter().collect();
            assert!(pf.ring.normal_form(f, &refs).is_zero(), "{name}");
        }
    }
}

#[test]
fn generic_quadrics_have_the_complete_intersection_series() {
    let (r, f) = generic_quadric_pair(7);
    let g = buchberger(&r, &f);
    let heads: Vec<Monomial> = g
        .iter()
        .map(|p| p.head_monomial().unwrap().clone())
        .collect();
    let h = hilbert_function(3, &heads, 10);
    let ci = complete_intersection_series(3, &[2, 2], 10);
    assert_eq!(h.iter().map(|&v| v as i64).collect::<Vec<_>>(), ci);
    assert_eq!(ci, [1, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4]);
}

fn all_marks(run: &F5Run) -> Vec<usize> {
    (0..run.marks.len()).collect()
}

#[test]
fn suite_descents_terminate_and_find_unrejected_reductors() {
    let mut seen = [false; 3];
    let mut instances = 0;
    for (name, _, run) in suite_runs() {
        let h = run_harvest(&run, &all_marks(&run), 100_000, usize::MAX, 0);
        assert!(h.passed(), "{name}: {:?}", h.failures);
        assert_eq!(h.descents_ok, h.instances, "{name}");
        assert_eq!(h.reductors_ok, h.instances, "{name}");
        instances += h.instances;
        for e in &h.events {
            if let EventKind::DescentStep { property, .. } = e {
                seen[*property as usize] = true;
            }
        }
    }
    assert!(instances >= 100, "{instances}");
    assert!(seen[Property::P1 as usize] && seen[Property::P2 as usize]);
}

/// Every single-variable multiple `t * b_h` below `S(g)` at every snapshot.
fn small_multiples(run: &F5Run, mut visit: impl FnMut(&GgSnapshot, ReprElement)) {
    let n = run.ring.nvars;
    for mark in &run.marks {
        let snap = GgSnapshot::from_mark(run, mark);
        for &h in &snap.elements {
            let ts = std::iter::once(Monomial::one(n)).chain((0..n).map(|v| Monomial::var(n, v)));
            for t in ts {
                let sig = snap.sig(h).mul(&t);
                if sig_cmp(&sig, &snap.g_sig, run.ring.order) == Ordering::Less {
                    let k = ReprElement {
                        coeff: FieldElement::ONE,
                        mono: t,
                        pos: h,
                    };
                    visit(&snap, k);
                }
            }
        }
    }
}

#[test]
fn criterion_replacements_preserve_value_and_lower_every_element() {
    let mut counts = [0usize; 2];
    for name in ["cyclic3-gf32003", "katsura3-gf32003", "katsura3-gf7"] {
        let run = run(&problem(name));
        small_multiples(&run, |snap, k| {
            let r = Representation::single(k.coeff, k.mono.clone(), k.pos);
            let sig = element_signature(&k, snap);
            let hm = element_hm(&k, snap);
            let replacement = match violated_property(&r, &sig, &hm, snap).unwrap() {
                Some(v) if v.property == Property::P1 => {
                    counts[0] += 1;
                    f5_replacement(&k, snap).unwrap()
                }
                Some(v) if v.property == Property::P2 => {
                    counts[1] += 1;
                    rewritten_replacement(&k, snap).unwrap()
                }
                _ => return,
            };
            assert!(repr_step_check(&r, &replacement, snap));
            for e in replacement.elements() {
                assert_eq!(elem_cmp(e, &k, snap), Ordering::Less, "{e:?} vs {k:?}");
            }
        });
    }
    assert!(counts[0] > 0 && counts[1] > 0, "{counts:?}");
}

/// `u_over * l_star - u_under * l_sub` for every computed pair inside a snapshot.
fn genealogy_pairs(run: &F5Run, mut visit: impl FnMut(&GgSnapshot, Representation, ReprElement)) {
    let field = run.ring.field;
    for mark in &run.marks {
        let snap = GgSnapshot::from_mark(run, mark);
        for &n in &snap.elements {
            let Some(gen) = &run.lps[n].genealogy else {
                continue;
            };
            if sig_cmp(&run.lps[n].sig, &snap.g_sig, run.ring.order) != Ordering::Less
                || !snap.contains(gen.l_sub)
            {
                continue;
            }
            let kp = ReprElement {
                coeff: FieldElement::ONE,
                mono: gen.u_over.clone(),
                pos: gen.l_star,
            };
            let kpp = ReprElement {
                coeff: field.neg(FieldElement::ONE),
                mono: gen.u_under.clone(),
                pos: gen.l_sub,
            };
            visit(
                &snap,
                Representation::combined(&field, [kp.clone(), kpp]),
                kp,
            );
        }
    }
}

#[test]
fn head_cancellation_step_on_computed_pairs() {
    let mut checked = 0;
    for name in [
        "cyclic3-gf32003",
        "katsura3-gf32003",
        "katsura3-gf7",
        "cyclic4",
    ] {
        let run = run(&problem(name));
        genealogy_pairs(&run, |snap, r, kp| {
            let next = rewrite_hm_case(&r, &kp, snap).unwrap();
            assert!(repr_step_check(&r, &next, snap));
            assert_eq!(repr_cmp(&next, &r, snap), ReprOrdering::Less);
            // and the descent completes from there
            let value = r.evaluate(&snap.ring, |p| snap.poly(p));
            if let Some(hm) = value.head_monomial() {
                let sig = element_signature(&kp, snap);
                let done = descend_representation(next, &sig, hm, snap, 100_000).unwrap();
                assert!(repr_sum_check(&done.representation, &value, snap));
                assert_eq!(
                    violated_property(&done.representation, &sig, hm, snap).unwrap(),
                    None
                );
            }
            checked += 1;
        });
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn computed_pairs_leave_the_greater_part_rewritten() {
    // Why the head-cancellation case never fires on its own: the pair's result
    // carries a rule that rewrites its greater part.
    for name in ["katsura3-gf32003", "cyclic4"] {
        let run = run(&problem(name));
        genealogy_pairs(&run, |snap, r, kp| {
            let sig = element_signature(&kp, snap);
            let hm = element_hm(&kp, snap);
            let v = violated_property(&r, &sig, &hm, snap).unwrap().unwrap();
            assert_ne!(v.property, Property::P3);
        });
    }
}

#[test]
fn zero_rewriter_uses_the_syzygy() {
    let run = run(&problem("cyclic4"));
    let mut found = 0;
    for mark in &run.marks {
        let snap = GgSnapshot::from_mark(&run, mark);
        for z in run
            .lps
            .iter()
            .filter(|l| l.status == LpStatus::Zero && l.pos < mark.r_len)
        {
            if sig_cmp(&z.sig, &snap.g_sig, run.ring.order) != Ordering::Less {
                continue;
            }
            for &h in snap.elements.iter().filter(|&&h| h < z.pos) {
                let Some(t) = (snap.sig(h).index == z.sig.index)
                    .then(|| z.sig.mono.div(&snap.sig(h).mono))
                    .flatten()
                else {
                    continue;
                };
                if snap.newer_rule_dividing(&z.sig, h).map(|r| r.pos) != Some(z.pos) {
                    continue;
                }
                found += 1;
                let k = ReprElement {
                    coeff: FieldElement::ONE,
                    mono: t,
                    pos: h,
                };
                let r = Representation::single(k.coeff, k.mono.clone(), h);
                let next = rewrite_rewritten_case(&r, &k, &snap).unwrap();
                assert!(next.positions().all(|p| p != z.pos));
                assert!(repr_step_check(&r, &next, &snap));
                assert_eq!(repr_cmp(&next, &r, &snap), ReprOrdering::Less);
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn descent_rejects_multiples_above_the_snapshot() {
    let run = run(&problem("katsura3-gf32003"));
    let mark = &run.marks[run.marks.len() / 2];
    let snap = GgSnapshot::from_mark(&run, mark);
    let h = snap.elements[0];
    // inputs carry index-dominant signatures only below g's index
    let big = Monomial::new(vec![0, 0, 0, 0, 6]);
    let err = descend(FieldElement::ONE, &big, h, &snap, 10).unwrap_err();
    assert!(matches!(err, OracleError::Precondition(_)), "{err}");
    assert!(matches!(
        descend(FieldElement::ONE, &Monomial::one(5), mark.g, &snap, 10),
        Err(OracleError::Precondition(_))
    ));
}

#[test]
fn step_cap_is_enforced() {
    let run = run(&problem("katsura3-gf32003"));
    let mark = run.marks.len() - 1;
    let inst = harvest_instances(&run, mark);
    let snap = GgSnapshot::from_mark(&run, &run.marks[mark]);
    let long = inst
        .iter()
        .find_map(|i| {
            let d = descend(FieldElement::ONE, &i.t, i.h, &snap, 100_000).unwrap();
            (d.steps >= 2).then_some((i, d.steps))
        })
        .unwrap();
    let (i, steps) = long;
    match descend(FieldElement::ONE, &i.t, i.h, &snap, steps - 1) {
        Err(OracleError::StepCapExceeded { steps: s, log }) => {
            assert_eq!(s, steps - 1);
            assert_eq!(log.len(), steps - 1);
        }
        other => panic!("{other:?}"),
    }
}
