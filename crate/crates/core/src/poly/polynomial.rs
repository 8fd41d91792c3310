use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FieldElement, Monomial, MonomialOrder, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub coeff: FieldElement,
    pub mono: Monomial,
}

impl Term {
    pub fn new(coeff: FieldElement, mono: Monomial) -> Self {
        Term { coeff, mono }
    }
}

/// Terms with nonzero coefficients, strictly descending in the ring's order.
/// The empty term list is the zero polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    /// Wraps terms that are already sorted, merged and nonzero.
    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Self {
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn head(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn head_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn head_coeff(&self) -> Option<FieldElement> {
        self.terms.first().map(|t| t.coeff)
    }

    /// Total degree of the head term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.head_monomial().map(Monomial::degree)
    }

    /// All terms share one total degree (vacuously true for zero).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(h) => self
                .terms
                .iter()
                .all(|t| t.mono.degree() == h.mono.degree()),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.head_coeff().is_none_or(|c| c == FieldElement::ONE)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    /// Structural invariant: strictly descending monomials, no zero coefficients.
    pub fn is_well_formed(&self, ord: MonomialOrder, field: &PrimeField) -> bool {
        self.terms
            .iter()
            .all(|t| !t.coeff.is_zero() && t.coeff.value() < field.modulus())
            && self
                .terms
                .windows(2)
                .all(|w| ord.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater)
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, t) in self.poly.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (t.coeff.value(), t.mono.is_one()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", t.mono.display_with(self.names))?,
                (c, false) => write!(f, "{c}*{}", t.mono.display_with(self.names))?,
            }
        }
        Ok(())
    }
}
