#![allow(dead_code)]

use std::path::PathBuf;

use f5_core::cli::{parse_problem, ProblemFile};
use f5_core::engine::{incremental_f5, Config, F5Run};
use f5_core::poly::{
    FieldElement, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, Term,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

pub fn problem(name: &str) -> ProblemFile {
    let path = problems_dir().join(format!("{name}.txt"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_problem(&text, None, false).unwrap()
}

/// The fixed suite: every system over both primes.
pub const SUITE: &[&str] = &[
    "demo-gf7",
    "demo-gf32003",
    "monomial-gf7",
    "monomial-gf32003",
    "generic-quadrics-gf7",
    "generic-quadrics-gf32003",
    "generic-cubics-gf7",
    "generic-cubics-gf32003",
    "cyclic3-gf7",
    "cyclic3-gf32003",
    "katsura3-gf7",
    "katsura3-gf32003",
];

pub fn run(pf: &ProblemFile) -> F5Run {
    incremental_f5(&pf.ring, &pf.polys, &Config::default()).unwrap()
}

pub fn suite_runs() -> Vec<(&'static str, ProblemFile, F5Run)> {
    SUITE
        .iter()
        .map(|name| {
            let pf = problem(name);
            let r = run(&pf);
            (*name, pf, r)
        })
        .collect()
}

pub fn ring(p: u64, n: usize) -> PolyRing {
    PolyRing::new(PrimeField::new(p).unwrap(), MonomialOrder::DegRevLex, n)
}

pub fn mono(e: &[u16]) -> Monomial {
    Monomial::new(e.to_vec())
}

pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    f5_core::oracle::monomials_of_degree(n, d)
}

/// A dense form of degree `d` with nonzero coefficients drawn from `rng`.
pub fn dense_form(ring: &PolyRing, d: u32, rng: &mut impl Rng) -> Polynomial {
    let p = ring.field.modulus();
    ring.from_terms(
        monomials(ring.nvars, d)
            .into_iter()
            .map(|m| Term::new(FieldElement(rng.gen_range(1..p)), m)),
    )
}

/// Two generic quadrics in three variables over GF(32003) from a fixed seed.
pub fn generic_quadric_pair(seed: u64) -> (PolyRing, Vec<Polynomial>) {
    let r = ring(32003, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = vec![dense_form(&r, 2, &mut rng), dense_form(&r, 2, &mut rng)];
    (r, f)
}

/// The comparator examples' three-element list over `x > y`:
/// `S(b1) = F1`, `S(b2) = F2`, `S(b3) = x F1`, at positions 0, 1, 2.
pub mod comparator {
    use f5_core::oracle::{ReprElement, Representation, SignatureTable};
    use f5_core::poly::{MonomialOrder, PrimeField};
    use f5_core::signature::Signature;

    use super::mono;

    pub fn table() -> SignatureTable {
        SignatureTable {
            order: MonomialOrder::DegRevLex,
            sigs: vec![
                Signature::new(mono(&[0, 0]), 1),
                Signature::new(mono(&[0, 0]), 2),
                Signature::new(mono(&[1, 0]), 1),
            ],
        }
    }

    pub fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    /// `c * x^a y^b * b_k`, with `k` counted from 1.
    pub fn el(c: i64, e: [u16; 2], k: usize) -> ReprElement {
        ReprElement {
            coeff: field().from_i64(c),
            mono: mono(&e),
            pos: k - 1,
        }
    }

    pub fn rep(es: &[ReprElement]) -> Representation {
        Representation::combined(&field(), es.iter().cloned())
    }
}
