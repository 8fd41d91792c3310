use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u16>", into = "Vec<u16>")]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl From<Vec<u16>> for Monomial {
    fn from(exps: Vec<u16>) -> Self {
        Monomial::new(exps)
    }
}

impl From<Monomial> for Vec<u16> {
    fn from(m: Monomial) -> Self {
        m.exps
    }
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    /// The monomial `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        Monomial { exps, degree: 1 }
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `other` divides `self`.
    #[inline]
    pub fn is_divisible_by(&self, other: &Monomial) -> bool {
        other.degree <= self.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a >= b)
    }

    /// `self / other` when every exponent of `other` is at most that of `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.is_divisible_by(other) {
            return None;
        }
        Some(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Renders with the given variable names, `1` for the unit monomial.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, names }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self.names.get(i).map(String::as_str).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Admissible monomial orders. Variables are ranked `x_0 > x_1 > ... > x_{n-1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    DegLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::DegLex => a.degree.cmp(&b.degree).then_with(|| lex(a, b)),
            MonomialOrder::DegRevLex => a.degree.cmp(&b.degree).then_with(|| {
                // smaller exponent in the last differing variable wins
                for (ea, eb) in a.exps.iter().zip(&b.exps).rev() {
                    if ea != eb {
                        return eb.cmp(ea);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::DegLex => "deglex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "degrevlex" | "grevlex" => Some(MonomialOrder::DegRevLex),
            "deglex" | "grlex" => Some(MonomialOrder::DegLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exps.cmp(&b.exps)
}

/// A formal quotient `numerator / denominator`, compared by cross-multiplication only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialQuotient {
    pub numerator: Monomial,
    pub denominator: Monomial,
}

impl MonomialQuotient {
    pub fn new(numerator: Monomial, denominator: Monomial) -> Self {
        MonomialQuotient {
            numerator,
            denominator,
        }
    }
}

/// `m1/m2` vs `m3/m4` as `m1*m4` vs `m3*m2`.
pub fn quotient_cmp(a: &MonomialQuotient, b: &MonomialQuotient, ord: MonomialOrder) -> Ordering {
    let lhs = a.numerator.mul(&b.denominator);
    let rhs = b.numerator.mul(&a.denominator);
    ord.cmp(&lhs, &rhs)
}
