use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::poly::{FieldElement, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, Term};
use crate::signature::{sig_cmp, RPos, Signature};

/// One symbolic product `coeff * mono * b_pos`; `pos` is the position in `R`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReprElement {
    pub coeff: FieldElement,
    pub mono: Monomial,
    pub pos: RPos,
}

impl fmt::Debug for ReprElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{:?}*b{}", self.coeff, self.mono, self.pos)
    }
}

/// A finite sum of elements with pairwise distinct `(mono, pos)`; empty means zero.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Representation {
    elements: Vec<ReprElement>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.elements).finish()
    }
}

impl Representation {
    pub fn empty() -> Self {
        Representation::default()
    }

    pub fn single(coeff: FieldElement, mono: Monomial, pos: RPos) -> Self {
        Representation::combined_unchecked(vec![ReprElement { coeff, mono, pos }])
    }

    /// Merges duplicate `(mono, pos)` by adding coefficients and drops zeros.
    pub fn combined(field: &PrimeField, elements: impl IntoIterator<Item = ReprElement>) -> Self {
        let mut acc: BTreeMap<(RPos, Vec<u16>), (Monomial, FieldElement)> = BTreeMap::new();
        for e in elements {
            let slot = acc
                .entry((e.pos, e.mono.exponents().to_vec()))
                .or_insert((e.mono, FieldElement::ZERO));
            slot.1 = field.add(slot.1, e.coeff);
        }
        Representation {
            elements: acc
                .into_iter()
                .filter(|(_, (_, c))| !c.is_zero())
                .map(|((pos, _), (mono, coeff))| ReprElement { coeff, mono, pos })
                .collect(),
        }
    }

    fn combined_unchecked(mut elements: Vec<ReprElement>) -> Self {
        elements.retain(|e| !e.coeff.is_zero());
        elements.sort_by(|a, b| (a.pos, a.mono.exponents()).cmp(&(b.pos, b.mono.exponents())));
        Representation { elements }
    }

    /// Elements in canonical `(pos, exponents)` order.
    pub fn elements(&self) -> &[ReprElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = RPos> + '_ {
        self.elements.iter().map(|e| e.pos)
    }

    /// `c * t * self`.
    pub fn scaled(&self, field: &PrimeField, c: FieldElement, t: &Monomial) -> Self {
        Representation::combined(
            field,
            self.elements.iter().map(|e| ReprElement {
                coeff: field.mul(c, e.coeff),
                mono: e.mono.mul(t),
                pos: e.pos,
            }),
        )
    }

    /// `Σ coeff * mono * poly(pos)`.
    pub fn evaluate<'a>(
        &self,
        ring: &PolyRing,
        poly_of: impl Fn(RPos) -> &'a Polynomial,
    ) -> Polynomial {
        ring.from_terms(self.elements.iter().flat_map(|e| {
            poly_of(e.pos)
                .terms()
                .iter()
                .map(|t| Term::new(ring.field.mul(e.coeff, t.coeff), t.mono.mul(&e.mono)))
        }))
    }
}

/// Signatures and the monomial order, all the element order needs.
pub trait SignatureLookup {
    fn order(&self) -> MonomialOrder;
    fn signature(&self, pos: RPos) -> &Signature;
}

/// A bare position-indexed signature list.
#[derive(Clone, Debug)]
pub struct SignatureTable {
    pub order: MonomialOrder,
    pub sigs: Vec<Signature>,
}

impl SignatureLookup for SignatureTable {
    fn order(&self) -> MonomialOrder {
        self.order
    }

    fn signature(&self, pos: RPos) -> &Signature {
        &self.sigs[pos]
    }
}

pub fn element_signature(e: &ReprElement, lookup: &impl SignatureLookup) -> Signature {
    lookup.signature(e.pos).mul(&e.mono)
}

/// Element order: greater product signature wins; on equal signatures the smaller
/// position is greater. `Equal` means incomparable (same signature and position).
pub fn elem_cmp(a: &ReprElement, b: &ReprElement, lookup: &impl SignatureLookup) -> Ordering {
    let sa = element_signature(a, lookup);
    let sb = element_signature(b, lookup);
    keyed_cmp((&sa, a), (&sb, b), lookup.order())
}

fn keyed_cmp(
    a: (&Signature, &ReprElement),
    b: (&Signature, &ReprElement),
    ord: MonomialOrder,
) -> Ordering {
    sig_cmp(a.0, b.0, ord).then_with(|| b.1.pos.cmp(&a.1.pos))
}

/// Elements with their signatures, in descending element order.
fn keyed_form<'r>(
    r: &'r Representation,
    lookup: &impl SignatureLookup,
) -> Vec<(Signature, &'r ReprElement)> {
    let ord = lookup.order();
    let mut v: Vec<_> = r
        .elements
        .iter()
        .map(|e| (element_signature(e, lookup), e))
        .collect();
    v.sort_by(|a, b| keyed_cmp((&b.0, b.1), (&a.0, a.1), ord));
    v
}

/// Elements in descending element order.
pub fn ordered_form(r: &Representation, lookup: &impl SignatureLookup) -> Vec<ReprElement> {
    keyed_form(r, lookup)
        .into_iter()
        .map(|(_, e)| e.clone())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReprOrdering {
    Less,
    Greater,
    Equal,
    /// The greatest differing elements differ only in the coefficient.
    Incomparable,
}

/// Lexicographic extension of the element order to ordered forms.
pub fn repr_cmp(
    a: &Representation,
    b: &Representation,
    lookup: &impl SignatureLookup,
) -> ReprOrdering {
    let ord = lookup.order();
    let fa = keyed_form(a, lookup);
    let fb = keyed_form(b, lookup);
    for ((sx, x), (sy, y)) in fa.iter().zip(&fb) {
        match keyed_cmp((sx, x), (sy, y), ord) {
            Ordering::Greater => return ReprOrdering::Greater,
            Ordering::Less => return ReprOrdering::Less,
            Ordering::Equal if x.coeff != y.coeff => return ReprOrdering::Incomparable,
            Ordering::Equal => {}
        }
    }
    match fa.len().cmp(&fb.len()) {
        Ordering::Less => ReprOrdering::Less,
        Ordering::Greater => ReprOrdering::Greater,
        Ordering::Equal => ReprOrdering::Equal,
    }
}

/// Removes the element at `(mono, pos)` of `k` and merges `replacement` in.
pub fn substitute_and_combine(
    field: &PrimeField,
    r: &Representation,
    k: &ReprElement,
    replacement: &Representation,
) -> Representation {
    let kept = r
        .elements
        .iter()
        .filter(|e| !(e.pos == k.pos && e.mono == k.mono))
        .cloned();
    Representation::combined(field, kept.chain(replacement.elements.iter().cloned()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn el(c: u32, e: &[u16], pos: RPos) -> ReprElement {
        ReprElement {
            coeff: FieldElement(c),
            mono: m(e),
            pos,
        }
    }

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    // b1 = F1, b2 = F2, b3 = x F1 at positions 0, 1, 2
    fn table() -> SignatureTable {
        SignatureTable {
            order: MonomialOrder::DegRevLex,
            sigs: vec![
                Signature::new(m(&[0, 0]), 1),
                Signature::new(m(&[0, 0]), 2),
                Signature::new(m(&[1, 0]), 1),
            ],
        }
    }

    #[test]
    fn combined_merges_and_drops() {
        let f = field();
        let r = Representation::combined(
            &f,
            [el(1, &[1, 0], 0), el(32002, &[1, 0], 0), el(3, &[0, 1], 1)],
        );
        assert_eq!(r.elements(), &[el(3, &[0, 1], 1)]);
        let r = Representation::combined(&f, [el(2, &[1, 0], 0), el(5, &[1, 0], 0)]);
        assert_eq!(r.elements(), &[el(7, &[1, 0], 0)]);
    }

    #[test]
    fn substitute_identity_and_cancel() {
        let f = field();
        let t = table();
        let r = Representation::combined(&f, [el(1, &[0, 0], 0), el(2, &[0, 1], 1)]);
        let k = el(1, &[0, 0], 0);
        let same = substitute_and_combine(
            &f,
            &r,
            &k,
            &Representation::single(k.coeff, k.mono.clone(), k.pos),
        );
        assert_eq!(repr_cmp(&same, &r, &t), ReprOrdering::Equal);
        let cancel = Representation::single(FieldElement(32001), m(&[0, 1]), 1);
        let out = substitute_and_combine(&f, &r, &k, &cancel);
        assert!(out.is_empty());
    }

    #[test]
    fn empty_is_smallest() {
        let t = table();
        let r = Representation::single(FieldElement(1), m(&[0, 0]), 1);
        assert_eq!(
            repr_cmp(&Representation::empty(), &r, &t),
            ReprOrdering::Less
        );
        assert_eq!(
            repr_cmp(&Representation::empty(), &Representation::empty(), &t),
            ReprOrdering::Equal
        );
    }

    fn arb_elem() -> impl Strategy<Value = ReprElement> {
        (1u32..5, proptest::collection::vec(0u16..3, 2), 0usize..3).prop_map(|(c, e, pos)| {
            ReprElement {
                coeff: FieldElement(c),
                mono: Monomial::new(e),
                pos,
            }
        })
    }

    proptest! {
        #[test]
        fn elem_order_is_a_strict_order(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            let t = table();
            prop_assert_eq!(elem_cmp(&a, &b, &t), elem_cmp(&b, &a, &t).reverse());
            if elem_cmp(&a, &b, &t) == Ordering::Greater && elem_cmp(&b, &c, &t) == Ordering::Greater {
                prop_assert_eq!(elem_cmp(&a, &c, &t), Ordering::Greater);
            }
            if elem_cmp(&a, &b, &t) == Ordering::Equal {
                prop_assert_eq!((a.pos, &a.mono), (b.pos, &b.mono));
            }
        }

        #[test]
        fn repr_order_is_antisymmetric(xs in proptest::collection::vec(arb_elem(), 0..5),
                                       ys in proptest::collection::vec(arb_elem(), 0..5)) {
            let f = field();
            let t = table();
            let a = Representation::combined(&f, xs);
            let b = Representation::combined(&f, ys);
            let ab = repr_cmp(&a, &b, &t);
            let ba = repr_cmp(&b, &a, &t);
            let flipped = match ab {
                ReprOrdering::Less => ReprOrdering::Greater,
                ReprOrdering::Greater => ReprOrdering::Less,
                o => o,
            };
            prop_assert_eq!(ba, flipped);
            prop_assert_eq!(repr_cmp(&a, &a, &t), ReprOrdering::Equal);
            // elements of one representation are pairwise comparable
            let form = ordered_form(&a, &t);
            for w in form.windows(2) {
                prop_assert_eq!(elem_cmp(&w[0], &w[1], &t), Ordering::Greater);
            }
        }
    }
}
