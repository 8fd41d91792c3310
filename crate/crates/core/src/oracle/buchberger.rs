use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use crate::poly::{FieldElement, Monomial, MonomialOrder, PolyRing, Polynomial};

/// `u1*p - c*u2*q` cancelling the heads, for monic or non-monic `p`, `q`.
pub fn spoly(ring: &PolyRing, p: &Polynomial, q: &Polynomial) -> Polynomial {
    let (hp, hq) = (p.head().unwrap(), q.head().unwrap());
    let t = hp.mono.lcm(&hq.mono);
    let up = t.div(&hp.mono).unwrap();
    let uq = t.div(&hq.mono).unwrap();
    let a = ring.mul_term(hq.coeff, &up, p);
    ring.axpy(&a, hp.coeff, &uq, q)
}

struct Pending {
    lcm: Monomial,
    i: usize,
    j: usize,
    order: MonomialOrder,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Reversed so the max-heap pops the smallest lcm first.
impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.lcm, &self.lcm)
            .then((other.i, other.j).cmp(&(self.i, self.j)))
    }
}

/// Reduced monic Gröbner basis by Buchberger's algorithm: pairs by smallest lcm,
/// product and chain criteria, then full interreduction.
pub fn buchberger(ring: &PolyRing, inputs: &[Polynomial]) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = inputs
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| ring.monic(p).0)
        .collect();
    let mut heap = BinaryHeap::new();
    let mut pending = HashSet::new();
    let push = |heap: &mut BinaryHeap<Pending>,
                pending: &mut HashSet<(usize, usize)>,
                g: &[Polynomial],
                i: usize,
                j: usize| {
        let lcm = g[i]
            .head_monomial()
            .unwrap()
            .lcm(g[j].head_monomial().unwrap());
        pending.insert((i, j));
        heap.push(Pending {
            lcm,
            i,
            j,
            order: ring.order,
        });
    };
    for j in 0..g.len() {
        for i in 0..j {
            push(&mut heap, &mut pending, &g, i, j);
        }
    }
    while let Some(Pending { lcm, i, j, .. }) = heap.pop() {
        pending.remove(&(i, j));
        if g[i]
            .head_monomial()
            .unwrap()
            .is_coprime(g[j].head_monomial().unwrap())
        {
            continue;
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chained = (0..g.len()).any(|k| {
            k != i
                && k != j
                && lcm.is_divisible_by(g[k].head_monomial().unwrap())
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chained {
            continue;
        }
        let s = spoly(ring, &g[i], &g[j]);
        let refs: Vec<&Polynomial> = g.iter().collect();
        let r = ring.normal_form(&s, &refs);
        if r.is_zero() {
            continue;
        }
        let n = g.len();
        g.push(ring.monic(&r).0);
        for i in 0..n {
            push(&mut heap, &mut pending, &g, i, n);
        }
    }
    reduce_basis(ring, &g)
}

/// Minimal, fully interreduced, monic; sorted by descending head monomial.
pub fn reduce_basis(ring: &PolyRing, g: &[Polynomial]) -> Vec<Polynomial> {
    let mut gs: Vec<Polynomial> = g.iter().filter(|p| !p.is_zero()).cloned().collect();
    gs.sort_by(|a, b| ring.cmp(a.head_monomial().unwrap(), b.head_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in gs {
        let h = p.head_monomial().unwrap();
        if !minimal
            .iter()
            .any(|q| h.is_divisible_by(q.head_monomial().unwrap()))
        {
            minimal.push(p);
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<&Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, q)| q)
                .collect();
            let hd = minimal[k].head().unwrap();
            let tail = ring.sub(&minimal[k], &ring.monomial(hd.coeff, hd.mono.clone()));
            let tail = ring.normal_form(&tail, &others);
            let full = ring.add(&ring.monomial(hd.coeff, hd.mono.clone()), &tail);
            ring.monic(&full).0
        })
        .collect();
    out.sort_by(|a, b| ring.cmp(b.head_monomial().unwrap(), a.head_monomial().unwrap()));
    out
}

/// Every S-polynomial of `g` reduces to zero modulo `g`.
pub fn is_groebner(ring: &PolyRing, g: &[Polynomial]) -> bool {
    let refs: Vec<&Polynomial> = g.iter().collect();
    for j in 0..g.len() {
        for i in 0..j {
            if !ring
                .normal_form(&spoly(ring, &g[i], &g[j]), &refs)
                .is_zero()
            {
                return false;
            }
        }
    }
    true
}

/// Same ideal: the reduced Gröbner bases coincide.
pub fn ideal_equal(ring: &PolyRing, g1: &[Polynomial], g2: &[Polynomial]) -> bool {
    buchberger(ring, g1) == buchberger(ring, g2)
}

/// Leading coefficient one, sorted by descending head.
pub fn is_reduced(ring: &PolyRing, g: &[Polynomial]) -> bool {
    g.iter().all(|p| p.head_coeff() == Some(FieldElement::ONE))
        && g.windows(2).all(|w| {
            ring.cmp(w[0].head_monomial().unwrap(), w[1].head_monomial().unwrap())
                == Ordering::Greater
        })
        && reduce_basis(ring, g) == g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PrimeField, Term};

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
    fn demo_heads() {
        let r = ring(7, 2);
        let g = buchberger(
            &r,
            &[
                poly(&r, &[(1, &[2, 0]), (1, &[0, 2])]),
                poly(&r, &[(1, &[1, 1])]),
            ],
        );
        let heads: Vec<_> = g
            .iter()
            .map(|p| p.head_monomial().unwrap().exponents().to_vec())
            .collect();
        assert_eq!(heads, vec![vec![0, 3], vec![2, 0], vec![1, 1]]);
        assert!(is_groebner(&r, &g));
        assert!(is_reduced(&r, &g));
    }

    #[test]
    fn trivial_cases() {
        let r = ring(7, 2);
        let f = poly(&r, &[(3, &[2, 0]), (1, &[0, 2])]);
        assert_eq!(
            buchberger(&r, std::slice::from_ref(&f)),
            vec![r.monic(&f).0]
        );
        let x = poly(&r, &[(1, &[1, 0])]);
        let y = poly(&r, &[(1, &[0, 1])]);
        assert_eq!(
            buchberger(&r, &[x.clone(), y.clone()]),
            vec![x.clone(), y.clone()]
        );
        let x2 = poly(&r, &[(1, &[2, 0])]);
        assert!(ideal_equal(&r, std::slice::from_ref(&x), &[x.clone(), x2]));
        assert!(!ideal_equal(&r, std::slice::from_ref(&x), &[y]));
        assert!(ideal_equal(
            &r,
            std::slice::from_ref(&x),
            std::slice::from_ref(&x)
        ));
    }
}
