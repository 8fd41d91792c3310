//! Prime field GF(p) with p an odd prime below 2^31.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::PolyError;

/// A residue in `[0, p)`. Carries no modulus; arithmetic goes through [`PrimeField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The coefficient field `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(PolyError::NonPrimeModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn from_i64(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        FieldElement((v % self.p as u64) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 as u64 + b.0 as u64;
        let p = self.p as u64;
        FieldElement(if s >= p { s - p } else { s } as u32)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 >= b.0 {
            FieldElement(a.0 - b.0)
        } else {
            FieldElement(a.0 + (self.p - b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            a
        } else {
            FieldElement(self.p - a.0)
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.from_i64(t0))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_small_moduli() {
        assert!(matches!(
            PrimeField::new(4),
            Err(PolyError::NonPrimeModulus(4))
        ));
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(2147483647).is_ok());
        assert!(PrimeField::new(2147483649).is_err());
    }

    #[test]
    fn inverses_in_gf7() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let a = FieldElement(a);
            let ai = f.inv(a).unwrap();
            assert_eq!(f.mul(a, ai), FieldElement::ONE);
        }
        assert_eq!(f.inv(FieldElement::ZERO), None);
    }

    #[test]
    fn large_prime_arithmetic() {
        let f = PrimeField::new(2147483629).unwrap();
        let a = FieldElement(2147483628);
        assert_eq!(f.mul(a, a), FieldElement::ONE);
        assert_eq!(f.add(a, FieldElement::ONE), FieldElement::ZERO);
        assert_eq!(f.sub(FieldElement::ZERO, FieldElement::ONE), a);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
    }
}
