//! Roots of unity in ℤ[π, π̄], found as the vectors of trace norm D.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ratpoly::Q;
use super::{order_lattice, Algebra, AlgebraElement, OrderLattice};
use crate::linalg::{lll_gram, short_vectors, Matrix};

/// Primitive k-th root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnity {
    pub k: u64,
    pub zeta: AlgebraElement,
}

const VECTOR_LIMIT: usize = 1_000_000;

/// Lattice elements x ≠ 0 with Tr(x·x̄) ≤ bound. `None` when there are more
/// than the enumeration limit.
pub(super) fn short_elements(
    alg: &Algebra,
    lat: &OrderLattice,
    bound: &Q,
) -> Option<Vec<AlgebraElement>> {
    let basis = lat.elements(alg);
    let n = basis.len();
    let conj: Vec<AlgebraElement> = basis.iter().map(|b| alg.conj(b)).collect();
    let gram: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| alg.trace(&alg.mul(&basis[i], &conj[j])).to_integer())
                .collect()
        })
        .collect();
    let t = lll_gram(&gram);
    let reduced: Vec<AlgebraElement> = t
        .iter()
        .map(|row| {
            row.iter().zip(&basis).fold(alg.zero(), |acc, (c, b)| {
                alg.add(&acc, &alg.scale(b, &Q::from_integer(c.clone())))
            })
        })
        .collect();
    let gref = &gram;
    let rgram: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s: BigInt = t[i]
                        .iter()
                        .enumerate()
                        .flat_map(|(a, ta)| {
                            t[j].iter()
                                .enumerate()
                                .map(move |(b, tb)| ta * tb * &gref[a][b])
                        })
                        .sum();
                    s
                })
                .collect()
        })
        .collect();
    let slack = bound.to_f64()? + 0.5;
    let vecs = short_vectors(&rgram, slack, VECTOR_LIMIT)?;
    Some(
        vecs.into_iter()
            .map(|v| {
                v.iter().zip(&reduced).fold(alg.zero(), |acc, (&c, b)| {
                    if c == 0 {
                        acc
                    } else {
                        alg.add(&acc, &alg.scale(b, &Q::from_integer(c.into())))
                    }
                })
            })
            .filter(|x| alg.trace(&alg.mul(x, &alg.conj(x))) <= *bound)
            .collect(),
    )
}

/// Multiplicative order of x, if it is at most `cap`.
pub(super) fn order_of(alg: &Algebra, x: &AlgebraElement, cap: u64) -> Option<u64> {
    let one = alg.one();
    let mut p = x.clone();
    for k in 1..=cap {
        if p == one {
            return Some(k);
        }
        p = alg.mul(&p, x);
    }
    None
}

/// Every root of unity in the order, sorted by order. An element of trace
/// norm Tr(x·x̄) = D with x·x̄ = 1 is a root of unity and every root of unity
/// has this norm, so the short-vector search is complete. `None` if the
/// search exceeds its limit.
pub fn roots_of_unity_in_order(alg: &Algebra) -> Option<Vec<RootOfUnity>> {
    let lat = order_lattice(alg);
    let d = Q::from_integer(alg.dim().into());
    let one = alg.one();
    let cap = 4 * (alg.dim() as u64).pow(2) + 8;
    let mut out: Vec<RootOfUnity> = short_elements(alg, &lat, &d)?
        .into_iter()
        .filter(|x| alg.mul(x, &alg.conj(x)) == one)
        .filter_map(|zeta| order_of(alg, &zeta, cap).map(|k| RootOfUnity { k, zeta }))
        .collect();
    out.sort_by(|a, b| a.k.cmp(&b.k).then_with(|| a.zeta.coords().cmp(b.zeta.coords())));
    Some(out)
}

/// Distinct orders present.
pub fn unity_orders(roots: &[RootOfUnity]) -> Vec<u64> {
    let mut ks: Vec<u64> = roots.iter().map(|r| r.k).collect();
    ks.dedup();
    ks
}
