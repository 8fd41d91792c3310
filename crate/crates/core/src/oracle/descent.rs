//! Rewriting a signature-safe `G_g`-representation of `m*h` into one whose elements
//! pass both criteria and never exceed `HM(m*h)`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::poly::{FieldElement, Monomial, Polynomial};
use crate::signature::{input_pos, input_representation_scaled, sig_cmp, RPos, Signature};
use crate::trace::{EventKind, Property};

use super::repr::{
    elem_cmp, element_signature, ordered_form, repr_cmp, substitute_and_combine, ReprElement,
    ReprOrdering, Representation,
};
use super::snapshot::GgSnapshot;
use super::OracleError;

/// An element failing one of the target properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub property: Property,
    pub element: ReprElement,
}

pub fn element_hm(e: &ReprElement, snap: &GgSnapshot) -> Monomial {
    e.mono.mul(snap.hm(e.pos))
}

/// `Σ coeff * mono * poly(b_pos) == target`.
pub fn repr_sum_check(r: &Representation, target: &Polynomial, snap: &GgSnapshot) -> bool {
    r.evaluate(&snap.ring, |p| snap.poly(p)) == *target
}

/// `value(next) == value(prev)`, by evaluating only the elements that differ.
pub fn repr_step_check(prev: &Representation, next: &Representation, snap: &GgSnapshot) -> bool {
    let field = &snap.ring.field;
    let delta = Representation::combined(
        field,
        prev.elements()
            .iter()
            .map(|e| ReprElement {
                coeff: field.neg(e.coeff),
                ..e.clone()
            })
            .chain(next.elements().iter().cloned()),
    );
    delta.evaluate(&snap.ring, |p| snap.poly(p)).is_zero()
}

fn satisfies_f5(e: &ReprElement, snap: &GgSnapshot) -> Option<RPos> {
    let s = element_signature(e, snap);
    snap.phi_divisor(s.index, &s.mono)
}

fn satisfies_rewritten(e: &ReprElement, snap: &GgSnapshot) -> Option<RPos> {
    let s = element_signature(e, snap);
    snap.newer_rule_dividing(&s, e.pos).map(|r| r.pos)
}

/// First violation scanning the ordered form for P1 then P2 per element, then P3.
pub fn violated_property(
    r: &Representation,
    mh_sig: &Signature,
    mh_hm: &Monomial,
    snap: &GgSnapshot,
) -> Result<Option<Violation>, OracleError> {
    let ord = snap.ring.order;
    let form = ordered_form(r, snap);
    for e in &form {
        if sig_cmp(&element_signature(e, snap), mh_sig, ord) == Ordering::Greater {
            return Err(OracleError::NotSignatureSafe {
                pos: e.pos,
                mono: e.mono.clone(),
            });
        }
    }
    for e in &form {
        if satisfies_f5(e, snap).is_some() {
            return Ok(Some(Violation {
                property: Property::P1,
                element: e.clone(),
            }));
        }
        if satisfies_rewritten(e, snap).is_some() {
            return Ok(Some(Violation {
                property: Property::P2,
                element: e.clone(),
            }));
        }
    }
    // form is descending, so the first element attaining the maximum is the greatest
    let Some(max_hm) = form
        .iter()
        .map(|e| element_hm(e, snap))
        .max_by(|a, b| ord.cmp(a, b))
    else {
        return Ok(None);
    };
    if ord.cmp(&max_hm, mh_hm) != Ordering::Greater {
        return Ok(None);
    }
    let k = form
        .iter()
        .find(|e| element_hm(e, snap) == max_hm)
        .expect("maximum is attained");
    Ok(Some(Violation {
        property: Property::P3,
        element: k.clone(),
    }))
}

/// Input-representation of the element and its greatest member.
fn input_form(
    k: &ReprElement,
    snap: &GgSnapshot,
) -> Result<(Representation, ReprElement), OracleError> {
    let lp = snap.lp(k.pos);
    let rep = input_representation_scaled(&snap.ring, &lp.mv, k.coeff, &k.mono);
    let lead = ordered_form(&rep, snap)
        .into_iter()
        .next()
        .ok_or(OracleError::NotAdmissible { pos: k.pos })?;
    if element_signature(&lead, snap) != element_signature(k, snap) {
        return Err(OracleError::NotAdmissible { pos: k.pos });
    }
    Ok((rep, lead))
}

fn without<'a>(
    rep: &'a Representation,
    lead: &ReprElement,
) -> impl Iterator<Item = ReprElement> + 'a {
    let lead = lead.clone();
    rep.elements()
        .iter()
        .filter(move |e| !(e.pos == lead.pos && e.mono == lead.mono))
        .cloned()
}

/// Replacement for an element satisfying the F5 criterion, built from a divisor
/// `b` of `G_{j0+1}` with `HM(b) | s0`.
pub fn f5_replacement(k: &ReprElement, snap: &GgSnapshot) -> Result<Representation, OracleError> {
    let field = snap.ring.field;
    let (rep, lead) = input_form(k, snap)?;
    let s0 = &lead.mono;
    let j0 = snap.sig(lead.pos).index;
    let b = snap
        .phi_divisor(j0, s0)
        .ok_or(OracleError::NoDivisorFound { pos: k.pos })?;
    let pb = snap.poly(b);
    let hb = pb.head().expect("nonzero divisor");
    let s1 = s0.div(&hb.mono).expect("head divides");
    let lc_inv = field.inv(hb.coeff).expect("nonzero head coefficient");
    let c0 = lead.coeff;
    let fj0 = snap.poly(input_pos(j0));
    let first = fj0.terms().iter().map(|a| ReprElement {
        coeff: field.mul(field.mul(c0, a.coeff), lc_inv),
        mono: s1.mul(&a.mono),
        pos: b,
    });
    let second = pb.terms()[1..].iter().map(|a| ReprElement {
        coeff: field.neg(field.mul(field.mul(c0, lc_inv), a.coeff)),
        mono: s1.mul(&a.mono),
        pos: input_pos(j0),
    });
    Ok(Representation::combined(
        &field,
        first.chain(second).chain(without(&rep, &lead)),
    ))
}

/// Replacement for a rewritten element via its rewriter `b_{i'}`. A rewriter that
/// reduced to zero contributes only its (syzygy) input elements.
pub fn rewritten_replacement(
    k: &ReprElement,
    snap: &GgSnapshot,
) -> Result<Representation, OracleError> {
    let field = snap.ring.field;
    let (rep, lead) = input_form(k, snap)?;
    let s = element_signature(k, snap);
    let w = snap
        .newer_rule_dividing(&s, k.pos)
        .ok_or(OracleError::RewriterNotFound { pos: k.pos })?
        .pos;
    let wl = snap.lp(w);
    let nonzero = !wl.poly.is_zero();
    if nonzero && !snap.contains(w) {
        return Err(OracleError::RewriterNotFound { pos: k.pos });
    }
    let s_prime = s.mono.div(&wl.sig.mono).expect("rule divides");
    let (wrep, wlead) = input_form(
        &ReprElement {
            coeff: FieldElement::ONE,
            mono: s_prime.clone(),
            pos: w,
        },
        snap,
    )?;
    let ratio = field.div(lead.coeff, wlead.coeff).expect("nonzero");
    let head = nonzero.then_some(ReprElement {
        coeff: ratio,
        mono: s_prime,
        pos: w,
    });
    let rest_w = without(&wrep, &wlead).map(|e| ReprElement {
        coeff: field.neg(field.mul(ratio, e.coeff)),
        ..e
    });
    Ok(Representation::combined(
        &field,
        head.into_iter().chain(rest_w).chain(without(&rep, &lead)),
    ))
}

/// Replacement for `K'` through the computed S-pair of `K'` and `K''`.
pub fn hm_replacement(
    r: &Representation,
    kp: &ReprElement,
    snap: &GgSnapshot,
) -> Result<Representation, OracleError> {
    let field = snap.ring.field;
    let ord = snap.ring.order;
    let m_max = element_hm(kp, snap);
    let kpp = ordered_form(r, snap)
        .into_iter()
        .filter(|e| elem_cmp(e, kp, snap) == Ordering::Less && element_hm(e, snap) == m_max)
        .max_by(|a, b| elem_cmp(a, b, snap))
        .ok_or(OracleError::NoSecondHead { pos: kp.pos })?;
    let sp = element_signature(kp, snap);
    let spp = element_signature(&kpp, snap);
    if sig_cmp(&sp, &spp, ord) != Ordering::Greater {
        return Err(OracleError::EqualPartSignatures {
            a: kp.pos,
            b: kpp.pos,
        });
    }
    let mp = kp.mono.gcd(&kpp.mono);
    let u1 = kp.mono.div(&mp).unwrap();
    let u2 = kpp.mono.div(&mp).unwrap();
    let n = (snap.m()..snap.r_len)
        .find(|&p| {
            snap.lp(p).genealogy.as_ref().is_some_and(|gen| {
                gen.l_star == kp.pos
                    && gen.l_sub == kpp.pos
                    && gen.u_over == u1
                    && gen.u_under == u2
            }) && snap.finished(p)
        })
        .ok_or(OracleError::TrailNotFound {
            a: kp.pos,
            b: kpp.pos,
        })?;
    let nl = snap.lp(n);
    let sub_steps = nl.genealogy.as_ref().unwrap().l_sub_steps;
    let c0 = kp.coeff;
    let eh = snap.lp(kpp.pos).trail.expand_from(sub_steps, &field);
    let en = nl.trail.expand_from(0, &field);
    let raw_inv = field.inv(nl.raw_scale).expect("nonzero scale");
    let mu2 = mp.mul(&u2);
    let mut out = vec![ReprElement {
        coeff: field.mul(c0, eh.scale),
        mono: kpp.mono.clone(),
        pos: kpp.pos,
    }];
    out.extend(eh.terms.iter().map(|(c, t, j)| ReprElement {
        coeff: field.mul(c0, *c),
        mono: mu2.mul(t),
        pos: *j,
    }));
    let cn = field.mul(c0, raw_inv);
    if !nl.poly.is_zero() {
        out.push(ReprElement {
            coeff: field.mul(cn, en.scale),
            mono: mp.clone(),
            pos: n,
        });
    }
    out.extend(en.terms.iter().map(|(c, t, j)| ReprElement {
        coeff: field.mul(cn, *c),
        mono: mp.mul(t),
        pos: *j,
    }));
    if let Some(e) = out.iter().find(|e| !snap.contains(e.pos)) {
        return Err(OracleError::ReductorOutsideSnapshot { pos: e.pos });
    }
    Ok(Representation::combined(&field, out))
}

pub fn rewrite_f5_case(
    r: &Representation,
    k: &ReprElement,
    snap: &GgSnapshot,
) -> Result<Representation, OracleError> {
    Ok(substitute_and_combine(
        &snap.ring.field,
        r,
        k,
        &f5_replacement(k, snap)?,
    ))
}

pub fn rewrite_rewritten_case(
    r: &Representation,
    k: &ReprElement,
    snap: &GgSnapshot,
) -> Result<Representation, OracleError> {
    Ok(substitute_and_combine(
        &snap.ring.field,
        r,
        k,
        &rewritten_replacement(k, snap)?,
    ))
}

pub fn rewrite_hm_case(
    r: &Representation,
    kp: &ReprElement,
    snap: &GgSnapshot,
) -> Result<Representation, OracleError> {
    Ok(substitute_and_combine(
        &snap.ring.field,
        r,
        kp,
        &hm_replacement(r, kp, snap)?,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentRecord {
    pub step: usize,
    pub property: Property,
    pub pos: RPos,
    pub mono: Monomial,
    /// Representation length after the step.
    pub len: usize,
}

#[derive(Clone, Debug)]
pub struct DescentResult {
    pub representation: Representation,
    pub steps: usize,
    pub log: Vec<DescentRecord>,
}

impl DescentResult {
    pub fn events(&self, instance: usize) -> Vec<EventKind> {
        let mut out: Vec<EventKind> = self
            .log
            .iter()
            .map(|r| EventKind::DescentStep {
                instance,
                step: r.step,
                property: r.property,
                pos: r.pos,
                mono: r.mono.clone(),
                len: r.len,
            })
            .collect();
        out.push(EventKind::DescentDone {
            instance,
            steps: self.steps,
            len: self.representation.len(),
        });
        out
    }
}

/// Starting from `c*t*h`, rewrites until P1-P3 hold. Every step is checked to
/// preserve the value and strictly decrease the representation.
pub fn descend(
    c: FieldElement,
    t: &Monomial,
    h: RPos,
    snap: &GgSnapshot,
    step_cap: usize,
) -> Result<DescentResult, OracleError> {
    let ring = snap.ring;
    let mh_sig = snap.sig(h).mul(t);
    if !snap.contains(h) || sig_cmp(&mh_sig, &snap.g_sig, ring.order) != Ordering::Less {
        return Err(OracleError::Precondition(format!(
            "{t:?} * b{h} is not a signature-smaller multiple of a G_g member"
        )));
    }
    let mh_hm = t.mul(snap.hm(h));
    descend_representation(
        Representation::single(c, t.clone(), h),
        &mh_sig,
        &mh_hm,
        snap,
        step_cap,
    )
}

/// Rewrites a signature-safe representation of a value with signature `mh_sig`
/// and head `mh_hm` until P1-P3 hold.
pub fn descend_representation(
    start: Representation,
    mh_sig: &Signature,
    mh_hm: &Monomial,
    snap: &GgSnapshot,
    step_cap: usize,
) -> Result<DescentResult, OracleError> {
    let target = start.evaluate(&snap.ring, |p| snap.poly(p));
    let mut r = start;
    let mut log = Vec::new();
    loop {
        let Some(v) = violated_property(&r, mh_sig, mh_hm, snap)? else {
            if !repr_sum_check(&r, &target, snap) {
                return Err(OracleError::SumMismatch { step: log.len() });
            }
            return Ok(DescentResult {
                representation: r,
                steps: log.len(),
                log,
            });
        };
        let step = log.len();
        if step >= step_cap {
            return Err(OracleError::StepCapExceeded { steps: step, log });
        }
        let next = match v.property {
            Property::P1 => rewrite_f5_case(&r, &v.element, snap)?,
            Property::P2 => rewrite_rewritten_case(&r, &v.element, snap)?,
            Property::P3 => rewrite_hm_case(&r, &v.element, snap)?,
        };
        if !repr_step_check(&r, &next, snap) {
            return Err(OracleError::SumMismatch { step });
        }
        let cmp = repr_cmp(&next, &r, snap);
        if cmp != ReprOrdering::Less {
            return Err(OracleError::NotDecreasing { step, got: cmp });
        }
        log.push(DescentRecord {
            step,
            property: v.property,
            pos: v.element.pos,
            mono: v.element.mono.clone(),
            len: next.len(),
        });
        r = next;
    }
}

/// Independent evaluation of the engine's reductor checks for `mono * b_pos`
/// against a target `(hm, sig)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductorChecks {
    /// `HM(mono * b) = target HM`.
    pub a: bool,
    /// Not rejected by the normal-form check.
    pub b: bool,
    /// Not rejected by the rewritten check.
    pub c: bool,
    /// Multiplied signature differs from the target's.
    pub d: bool,
}

impl ReductorChecks {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.d
    }
}

pub fn evaluate_checks(
    mono: &Monomial,
    pos: RPos,
    hm: &Monomial,
    sig: &Signature,
    snap: &GgSnapshot,
) -> ReductorChecks {
    let s = snap.sig(pos).mul(mono);
    ReductorChecks {
        a: mono.mul(snap.hm(pos)) == *hm,
        b: snap.phi_divisor(s.index, &s.mono).is_none(),
        c: snap.engine_rewriter(mono, pos) == Ok(None),
        d: s != *sig,
    }
}

#[derive(Clone, Debug)]
pub struct FoundReductor {
    pub mono: Monomial,
    pub pos: RPos,
    pub checks: ReductorChecks,
    pub descent: DescentResult,
}

/// Descends `t*h` and returns the greatest final element whose head monomial is
/// `target_hm`, with the reductor checks against `(target_hm, target_sig)`.
pub fn find_reductor_for_target(
    t: &Monomial,
    h: RPos,
    target_hm: &Monomial,
    target_sig: &Signature,
    snap: &GgSnapshot,
    step_cap: usize,
) -> Result<FoundReductor, OracleError> {
    let descent = descend(FieldElement::ONE, t, h, snap, step_cap)?;
    let k = ordered_form(&descent.representation, snap)
        .into_iter()
        .find(|e| element_hm(e, snap) == *target_hm)
        .ok_or(OracleError::NoHeadMatch)?;
    let checks = evaluate_checks(&k.mono, k.pos, target_hm, target_sig, snap);
    Ok(FoundReductor {
        mono: k.mono,
        pos: k.pos,
        checks,
        descent,
    })
}

/// For `HM(f') | HM(f)`: descends `HM(f)/HM(f') * f'` and returns an element that
/// the engine's checks cannot reject as a reductor of `f`.
pub fn find_unrejected_reductor(
    f_pos: RPos,
    fprime_pos: RPos,
    snap: &GgSnapshot,
    step_cap: usize,
) -> Result<FoundReductor, OracleError> {
    let hm_f = snap
        .lp(f_pos)
        .poly
        .head_monomial()
        .ok_or(OracleError::NoHeadMatch)?
        .clone();
    let t = hm_f.div(snap.hm(fprime_pos)).ok_or_else(|| {
        OracleError::Precondition(format!("HM(b{fprime_pos}) does not divide HM(b{f_pos})"))
    })?;
    let sig_f = snap.sig(f_pos).clone();
    find_reductor_for_target(&t, fprime_pos, &hm_f, &sig_f, snap, step_cap)
}
