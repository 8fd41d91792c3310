use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{FieldElement, Monomial, MonomialOrder, Polynomial, PrimeField, Term};

/// `GF(p)[x_0, ..., x_{n-1}]` with a fixed monomial order. All polynomial
/// arithmetic goes through a ring so that term order and modulus stay consistent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRing {
    pub field: PrimeField,
    pub order: MonomialOrder,
    pub nvars: usize,
}

/// One division step of a normal-form computation: `p -= coeff * mult * basis[reductor]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionStep {
    pub coeff: FieldElement,
    pub mult: Monomial,
    pub reductor: usize,
}

impl PolyRing {
    pub fn new(field: PrimeField, order: MonomialOrder, nvars: usize) -> Self {
        PolyRing {
            field,
            order,
            nvars,
        }
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges, drops zeros.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = Term>) -> Polynomial {
        let mut terms: Vec<Term> = terms.into_iter().filter(|t| !t.coeff.is_zero()).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.mono, &a.mono));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = self.field.add(last.coeff, t.coeff);
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        Polynomial::from_sorted_terms(merged)
    }

    pub fn monomial(&self, coeff: FieldElement, mono: Monomial) -> Polynomial {
        self.from_terms([Term::new(coeff, mono)])
    }

    pub fn constant(&self, c: FieldElement) -> Polynomial {
        self.monomial(c, self.one_monomial())
    }

    /// `p - c * t * q`, merging in one pass.
    pub fn axpy(
        &self,
        p: &Polynomial,
        c: FieldElement,
        t: &Monomial,
        q: &Polynomial,
    ) -> Polynomial {
        if c.is_zero() || q.is_zero() {
            return p.clone();
        }
        let f = &self.field;
        let neg_c = f.neg(c);
        let (a, b) = (p.terms(), q.terms());
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<Term> = None;
        while i < a.len() || j < b.len() {
            if pending.is_none() && j < b.len() {
                pending = Some(Term::new(f.mul(neg_c, b[j].coeff), b[j].mono.mul(t)));
            }
            match (a.get(i), pending.as_ref()) {
                (Some(ta), Some(tb)) => match self.order.cmp(&ta.mono, &tb.mono) {
                    Ordering::Greater => {
                        out.push(ta.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = f.add(ta.coeff, tb.coeff);
                        if !s.is_zero() {
                            out.push(Term::new(s, ta.mono.clone()));
                        }
                        pending = None;
                        i += 1;
                        j += 1;
                    }
                },
                (Some(ta), None) => {
                    out.push(ta.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                }
                (None, None) => break,
            }
        }
        let r = Polynomial::from_sorted_terms(out);
        debug_assert!(r.is_well_formed(self.order, &self.field));
        r
    }

    pub fn add(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        self.axpy(
            p,
            self.field.neg(FieldElement::ONE),
            &self.one_monomial(),
            q,
        )
    }

    pub fn sub(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        self.axpy(p, FieldElement::ONE, &self.one_monomial(), q)
    }

    /// `c * t * p`.
    pub fn mul_term(&self, c: FieldElement, t: &Monomial, p: &Polynomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_sorted_terms(
            p.terms()
                .iter()
                .map(|s| Term::new(self.field.mul(c, s.coeff), s.mono.mul(t)))
                .collect(),
        )
    }

    pub fn scale(&self, c: FieldElement, p: &Polynomial) -> Polynomial {
        self.mul_term(c, &self.one_monomial(), p)
    }

    pub fn mul(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for t in p.terms() {
            acc = self.axpy(&acc, self.field.neg(t.coeff), &t.mono, q);
        }
        acc
    }

    /// Scales to leading coefficient 1, returning the factor applied.
    pub fn monic(&self, p: &Polynomial) -> (Polynomial, FieldElement) {
        match p.head_coeff() {
            None => (Polynomial::zero(), FieldElement::ONE),
            Some(c) if c == FieldElement::ONE => (p.clone(), FieldElement::ONE),
            Some(c) => {
                let inv = self.field.inv(c).expect("nonzero head coefficient");
                (self.scale(inv, p), inv)
            }
        }
    }

    /// Full remainder of `p` by `basis` (every term reduced), with the steps taken.
    /// The first basis element whose head divides the current term is used.
    pub fn normal_form_steps(
        &self,
        p: &Polynomial,
        basis: &[&Polynomial],
    ) -> (Polynomial, Vec<DivisionStep>) {
        let mut steps = Vec::new();
        let mut rest = p.clone();
        let mut remainder: Vec<Term> = Vec::new();
        while let Some(head) = rest.head().cloned() {
            let found = basis.iter().enumerate().find_map(|(k, b)| {
                let hb = b.head()?;
                head.mono.div(&hb.mono).map(|u| (k, u, hb.coeff))
            });
            match found {
                Some((k, u, hc)) => {
                    let c = self.field.div(head.coeff, hc).expect("nonzero head");
                    rest = self.axpy(&rest, c, &u, basis[k]);
                    steps.push(DivisionStep {
                        coeff: c,
                        mult: u,
                        reductor: k,
                    });
                }
                None => {
                    remainder.push(head);
                    let mut terms = rest.terms().to_vec();
                    terms.remove(0);
                    rest = Polynomial::from_sorted_terms(terms);
                }
            }
        }
        (Polynomial::from_sorted_terms(remainder), steps)
    }

    pub fn normal_form(&self, p: &Polynomial, basis: &[&Polynomial]) -> Polynomial {
        self.normal_form_steps(p, basis).0
    }

    /// `t` is divisible by the head monomial of some element of `basis`.
    pub fn is_top_reducible(&self, t: &Monomial, basis: &[&Polynomial]) -> bool {
        basis
            .iter()
            .filter_map(|b| b.head_monomial())
            .any(|h| t.is_divisible_by(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, n: usize) -> PolyRing {
        PolyRing::new(PrimeField::new(p).unwrap(), MonomialOrder::DegRevLex, n)
    }

    fn poly(r: &PolyRing, terms: &[(i64, &[u16])]) -> Polynomial {
        r.from_terms(
            terms
                .iter()
                .map(|(c, e)| Term::new(r.field.from_i64(*c), Monomial::new(e.to_vec()))),
        )
    }

    #[test]
    fn axpy_examples() {
        let r = ring(7, 2);
        let x2y2 = poly(&r, &[(1, &[2, 0]), (1, &[0, 2])]);
        let x = poly(&r, &[(1, &[1, 0])]);
        let y2 = poly(&r, &[(1, &[0, 2])]);
        let xm = Monomial::new(vec![1, 0]);
        assert_eq!(r.axpy(&x2y2, FieldElement::ONE, &xm, &x), y2);
        assert_eq!(r.axpy(&x2y2, FieldElement::ZERO, &xm, &x), x2y2);
        let p = poly(&r, &[(1, &[2, 0]), (3, &[0, 2])]);
        let x2 = poly(&r, &[(1, &[2, 0])]);
        assert_eq!(r.axpy(&p, FieldElement(3), &r.one_monomial(), &y2), x2);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(7, 2);
        let x2y2 = poly(&r, &[(1, &[2, 0]), (1, &[0, 2])]);
        let x2 = poly(&r, &[(1, &[2, 0])]);
        let y2 = poly(&r, &[(1, &[0, 2])]);
        assert_eq!(r.normal_form(&x2y2, &[&x2]), y2);
        assert_eq!(r.normal_form(&x2y2, &[]), x2y2);
        let xy = poly(&r, &[(1, &[1, 1])]);
        let y_xy = poly(&r, &[(1, &[1, 2])]);
        assert!(r.normal_form(&y_xy, &[&xy]).is_zero());
    }

    #[test]
    fn homogeneity() {
        let r = ring(7, 2);
        assert!(poly(&r, &[(1, &[2, 0]), (1, &[0, 2])]).is_homogeneous());
        assert!(!poly(&r, &[(1, &[2, 0]), (1, &[0, 1])]).is_homogeneous());
        assert!(Polynomial::zero().is_homogeneous());
    }

    #[test]
    fn monic_scales_head_to_one() {
        let r = ring(7, 2);
        let p = poly(&r, &[(3, &[1, 1]), (2, &[0, 2])]);
        let (q, s) = r.monic(&p);
        assert_eq!(q.head_coeff(), Some(FieldElement::ONE));
        assert_eq!(r.scale(s, &p), q);
    }

    fn arb_poly(deg: Option<u16>) -> impl Strategy<Value = Vec<(i64, Vec<u16>)>> {
        proptest::collection::vec(
            (
                -20i64..20,
                proptest::collection::vec(0u16..4, 3).prop_filter("degree", move |e| {
                    deg.is_none_or(|d| e.iter().sum::<u16>() == d)
                }),
            ),
            0..6,
        )
    }

    fn build(r: &PolyRing, t: &[(i64, Vec<u16>)]) -> Polynomial {
        r.from_terms(
            t.iter()
                .map(|(c, e)| Term::new(r.field.from_i64(*c), Monomial::new(e.clone()))),
        )
    }

    proptest! {
        #[test]
        fn axpy_well_formed_and_consistent(a in arb_poly(None), b in arb_poly(None), c in 0u32..7, t in proptest::collection::vec(0u16..3, 3)) {
            let r = ring(7, 3);
            let (p, q) = (build(&r, &a), build(&r, &b));
            let t = Monomial::new(t);
            let out = r.axpy(&p, FieldElement(c), &t, &q);
            prop_assert!(out.is_well_formed(r.order, &r.field));
            // out + c t q == p
            prop_assert_eq!(r.add(&out, &r.mul_term(FieldElement(c), &t, &q)), p);
        }

        #[test]
        fn normal_form_is_idempotent_and_irreducible(a in arb_poly(None), b in arb_poly(None), c in arb_poly(None)) {
            let r = ring(7, 3);
            let p = build(&r, &a);
            let basis: Vec<Polynomial> = [build(&r, &b), build(&r, &c)].into_iter().filter(|q| !q.is_zero()).collect();
            let refs: Vec<&Polynomial> = basis.iter().collect();
            let (nf, steps) = r.normal_form_steps(&p, &refs);
            prop_assert_eq!(r.normal_form(&nf, &refs), nf.clone());
            for t in nf.terms() {
                prop_assert!(!r.is_top_reducible(&t.mono, &refs));
            }
            // replaying steps reproduces the remainder
            let mut replay = p.clone();
            for s in &steps {
                replay = r.axpy(&replay, s.coeff, &s.mult, refs[s.reductor]);
            }
            prop_assert_eq!(replay, nf);
        }

        #[test]
        fn homogeneous_axpy_stays_homogeneous(a in arb_poly(Some(3)), b in arb_poly(Some(2)), v in 0usize..3, c in 1u32..7) {
            let r = ring(7, 3);
            let (p, q) = (build(&r, &a), build(&r, &b));
            let t = Monomial::var(3, v);
            prop_assert!(r.axpy(&p, FieldElement(c), &t, &q).is_homogeneous());
        }
    }
}
