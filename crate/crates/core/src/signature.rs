//! Signatures, module vectors and labeled polynomials.
//!
//! A signature `t F_i` is ordered index-first: a smaller input index is the
//! greater signature, and within one index the monomial order decides. Every
//! labeled polynomial carries its full module vector over the inputs, so the
//! claim "the signature is the leading module term" is checked rather than assumed.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::oracle::{ReprElement, Representation};
use crate::poly::{FieldElement, Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::trace::ReductionTrail;

/// Position of a labeled polynomial in the global creation-ordered sequence `R`.
/// Inputs `f_1..f_m` occupy positions `0..m`.
pub type RPos = usize;

/// Position in `R` of input `f_index` (1-based index).
#[inline]
pub fn input_pos(index: usize) -> RPos {
    index - 1
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub mono: Monomial,
    /// 1-based input index.
    pub index: usize,
}

impl Signature {
    pub fn new(mono: Monomial, index: usize) -> Self {
        Signature { mono, index }
    }

    pub fn unit(nvars: usize, index: usize) -> Self {
        Signature::new(Monomial::one(nvars), index)
    }

    /// `t * self`.
    pub fn mul(&self, t: &Monomial) -> Signature {
        Signature::new(self.mono.mul(t), self.index)
    }

    /// `self | other`: same index and monomial divisibility.
    pub fn divides(&self, other: &Signature) -> bool {
        self.index == other.index && other.mono.is_divisible_by(&self.mono)
    }

    pub fn degree(&self) -> u32 {
        self.mono.degree()
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}F{}", self.mono, self.index)
    }
}

/// Index-dominant comparison: `F_1 > F_2 > ... > F_m`, then the monomial order.
pub fn sig_cmp(a: &Signature, b: &Signature, ord: MonomialOrder) -> Ordering {
    b.index
        .cmp(&a.index)
        .then_with(|| ord.cmp(&a.mono, &b.mono))
}

pub fn sig_mul(t: &Monomial, s: &Signature) -> Signature {
    s.mul(t)
}

pub fn sig_divides(a: &Signature, b: &Signature) -> bool {
    a.divides(b)
}

/// Coordinates over the inputs: `sum coords[i] * f_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleVector {
    coords: Vec<Polynomial>,
}

impl ModuleVector {
    pub fn zero(m: usize) -> Self {
        ModuleVector {
            coords: vec![Polynomial::zero(); m],
        }
    }

    /// The unit vector `e_index` (1-based).
    pub fn unit(ring: &PolyRing, m: usize, index: usize) -> Self {
        let mut mv = ModuleVector::zero(m);
        mv.coords[index - 1] = ring.constant(FieldElement::ONE);
        mv
    }

    pub fn from_coords(coords: Vec<Polynomial>) -> Self {
        ModuleVector { coords }
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// `self - c * t * other`, coordinatewise.
    pub fn axpy(
        &self,
        ring: &PolyRing,
        c: FieldElement,
        t: &Monomial,
        other: &ModuleVector,
    ) -> Self {
        ModuleVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| ring.axpy(a, c, t, b))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &PolyRing, c: FieldElement) -> Self {
        self.mul_term(ring, c, &ring.one_monomial())
    }

    pub fn mul_term(&self, ring: &PolyRing, c: FieldElement, t: &Monomial) -> Self {
        ModuleVector {
            coords: self.coords.iter().map(|a| ring.mul_term(c, t, a)).collect(),
        }
    }

    /// The ≻-greatest module term as `(signature, coefficient)`.
    pub fn leading_term(&self) -> Option<(Signature, FieldElement)> {
        self.coords.iter().enumerate().find_map(|(i, p)| {
            p.head()
                .map(|h| (Signature::new(h.mono.clone(), i + 1), h.coeff))
        })
    }

    /// `sum coords[i] * inputs[i]`.
    pub fn evaluate(&self, ring: &PolyRing, inputs: &[Polynomial]) -> Polynomial {
        self.coords
            .iter()
            .zip(inputs)
            .fold(Polynomial::zero(), |acc, (c, f)| {
                ring.add(&acc, &ring.mul(c, f))
            })
    }
}

/// Greater and smaller S-pair parts a labeled polynomial was built from:
/// `poly = u_over * poly(l_star) - u_under * poly(l_sub)` up to a scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Genealogy {
    pub l_star: RPos,
    pub l_sub: RPos,
    pub u_over: Monomial,
    pub u_under: Monomial,
    /// Trail length of `l_sub` when this polynomial was built. A polynomial still in
    /// `ToDo` can keep changing afterwards, so later trail steps of `l_sub` relate its
    /// creation-time value to its final one.
    pub l_sub_steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Input,
    ToDo,
    Done,
    Zero,
}

#[derive(Clone, Debug)]
pub struct LabeledPolynomial {
    pub pos: RPos,
    pub sig: Signature,
    pub poly: Polynomial,
    pub mv: ModuleVector,
    pub genealogy: Option<Genealogy>,
    /// Polynomial right after creation (already monic).
    pub initial: Polynomial,
    /// `initial = raw_scale * (u_over * poly(l_star) - u_under * poly(l_sub))`.
    pub raw_scale: FieldElement,
    pub trail: ReductionTrail,
    pub status: LpStatus,
}

impl LabeledPolynomial {
    pub fn index(&self) -> usize {
        self.sig.index
    }

    pub fn head_monomial(&self) -> Option<&Monomial> {
        self.poly.head_monomial()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("module vector of r{pos} does not evaluate to its polynomial")]
    InconsistentModuleVector { pos: RPos },
    #[error("module vector of r{pos} has {got} coordinates, expected {expected}")]
    ModuleLength {
        pos: RPos,
        got: usize,
        expected: usize,
    },
}

/// Admissibility: the module vector evaluates to the polynomial, and its leading
/// module term is the stored signature.
pub fn check_admissible(
    lp: &LabeledPolynomial,
    inputs: &[Polynomial],
    ring: &PolyRing,
) -> Result<bool, SignatureError> {
    if lp.mv.len() != inputs.len() {
        return Err(SignatureError::ModuleLength {
            pos: lp.pos,
            got: lp.mv.len(),
            expected: inputs.len(),
        });
    }
    if lp.mv.evaluate(ring, inputs) != lp.poly {
        return Err(SignatureError::InconsistentModuleVector { pos: lp.pos });
    }
    Ok(matches!(lp.mv.leading_term(), Some((s, _)) if s == lp.sig))
}

/// Expands `c * t * mv` into elements `coeff * mono * f_i`, one per module term.
pub fn input_representation_scaled(
    ring: &PolyRing,
    mv: &ModuleVector,
    c: FieldElement,
    t: &Monomial,
) -> Representation {
    let elements = mv.coords().iter().enumerate().flat_map(|(i, p)| {
        p.terms().iter().map(move |term| ReprElement {
            coeff: ring.field.mul(c, term.coeff),
            mono: term.mono.mul(t),
            pos: input_pos(i + 1),
        })
    });
    Representation::combined(&ring.field, elements)
}

/// The input-representation of `lp`: its module vector read as a sum over the inputs.
pub fn input_representation(ring: &PolyRing, lp: &LabeledPolynomial) -> Representation {
    input_representation_scaled(ring, &lp.mv, FieldElement::ONE, &ring.one_monomial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PrimeField, Term};
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    const ORD: MonomialOrder = MonomialOrder::DegRevLex;

    #[test]
    fn index_dominates() {
        let s1 = Signature::new(m(&[0, 0]), 1);
        let s2 = Signature::new(m(&[5, 0]), 2);
        assert_eq!(sig_cmp(&s1, &s2, ORD), Ordering::Greater);
        let sx = Signature::new(m(&[1, 0]), 1);
        let sy = Signature::new(m(&[0, 1]), 1);
        assert_eq!(sig_cmp(&sx, &sy, ORD), Ordering::Greater);
        assert_eq!(sig_cmp(&sx, &sx, ORD), Ordering::Equal);
    }

    #[test]
    fn mul_and_divides() {
        let s = Signature::new(m(&[0, 1]), 1);
        assert_eq!(sig_mul(&m(&[0, 0]), &s), s);
        assert_eq!(sig_mul(&m(&[1, 0]), &s), Signature::new(m(&[1, 1]), 1));
        let sx2 = Signature::new(m(&[1, 0]), 2);
        assert_eq!(sig_mul(&m(&[1, 0]), &sx2), Signature::new(m(&[2, 0]), 2));
        let sx = Signature::new(m(&[1, 0]), 1);
        assert!(sig_divides(&sx, &Signature::new(m(&[2, 1]), 1)));
        assert!(!sig_divides(&sx, &Signature::new(m(&[1, 0]), 2)));
        assert!(sig_divides(&sx, &sx));
    }

    fn ring() -> PolyRing {
        PolyRing::new(PrimeField::new(7).unwrap(), ORD, 2)
    }

    fn lp(
        r: &PolyRing,
        sig: Signature,
        mv: ModuleVector,
        inputs: &[Polynomial],
    ) -> LabeledPolynomial {
        let poly = mv.evaluate(r, inputs);
        LabeledPolynomial {
            pos: 5,
            sig,
            initial: poly.clone(),
            poly,
            mv,
            genealogy: None,
            raw_scale: FieldElement::ONE,
            trail: ReductionTrail::default(),
            status: LpStatus::Done,
        }
    }

    fn inputs(r: &PolyRing) -> Vec<Polynomial> {
        vec![
            r.from_terms([
                Term::new(FieldElement(1), m(&[2, 0])),
                Term::new(FieldElement(1), m(&[0, 2])),
            ]),
            r.from_terms([Term::new(FieldElement(1), m(&[1, 1]))]),
        ]
    }

    #[test]
    fn admissibility_of_inputs_and_mislabeled() {
        let r = ring();
        let f = inputs(&r);
        let input = lp(&r, Signature::unit(2, 1), ModuleVector::unit(&r, 2, 1), &f);
        assert_eq!(check_admissible(&input, &f, &r), Ok(true));

        let xy = r.from_terms([
            Term::new(FieldElement(1), m(&[1, 0])),
            Term::new(FieldElement(1), m(&[0, 1])),
        ]);
        let mv = ModuleVector::from_coords(vec![xy, Polynomial::zero()]);
        let wrong = lp(&r, Signature::new(m(&[0, 1]), 1), mv.clone(), &f);
        assert_eq!(check_admissible(&wrong, &f, &r), Ok(false));
        let right = lp(&r, Signature::new(m(&[1, 0]), 1), mv, &f);
        assert_eq!(check_admissible(&right, &f, &r), Ok(true));

        let mut broken = right.clone();
        broken.poly = f[1].clone();
        assert_eq!(
            check_admissible(&broken, &f, &r),
            Err(SignatureError::InconsistentModuleVector { pos: 5 })
        );
    }

    #[test]
    fn input_representation_expands_terms() {
        let r = ring();
        let f = inputs(&r);
        let input = lp(&r, Signature::unit(2, 1), ModuleVector::unit(&r, 2, 1), &f);
        let rep = input_representation(&r, &input);
        assert_eq!(rep.elements().len(), 1);
        assert_eq!(rep.elements()[0].pos, input_pos(1));
        assert!(rep.elements()[0].mono.is_one());

        let xy = r.from_terms([
            Term::new(FieldElement(1), m(&[1, 0])),
            Term::new(FieldElement(1), m(&[0, 1])),
        ]);
        let l = lp(
            &r,
            Signature::new(m(&[1, 0]), 1),
            ModuleVector::from_coords(vec![xy, Polynomial::zero()]),
            &f,
        );
        let rep = input_representation(&r, &l);
        let mut monos: Vec<_> = rep
            .elements()
            .iter()
            .map(|e| (e.mono.clone(), e.pos))
            .collect();
        monos.sort_by(|a, b| ORD.cmp(&b.0, &a.0));
        assert_eq!(monos, vec![(m(&[1, 0]), 0), (m(&[0, 1]), 0)]);
    }

    fn arb_sig() -> impl Strategy<Value = Signature> {
        (proptest::collection::vec(0u16..4, 3), 1usize..4)
            .prop_map(|(e, i)| Signature::new(Monomial::new(e), i))
    }

    proptest! {
        #[test]
        fn sig_order_is_total_and_index_dominant(a in arb_sig(), b in arb_sig(), c in arb_sig()) {
            prop_assert_eq!(sig_cmp(&a, &b, ORD), sig_cmp(&b, &a, ORD).reverse());
            if sig_cmp(&a, &b, ORD) != Ordering::Less && sig_cmp(&b, &c, ORD) != Ordering::Less {
                prop_assert_ne!(sig_cmp(&a, &c, ORD), Ordering::Less);
            }
            if a.index < b.index {
                prop_assert_eq!(sig_cmp(&a, &b, ORD), Ordering::Greater);
            }
        }

        #[test]
        fn divisibility_implies_greater(a in arb_sig(), t in proptest::collection::vec(0u16..3, 3)) {
            let t = Monomial::new(t);
            let b = a.mul(&t);
            prop_assert!(sig_divides(&a, &b));
            if a != b {
                prop_assert_eq!(sig_cmp(&b, &a, ORD), Ordering::Greater);
            }
        }
    }
}
