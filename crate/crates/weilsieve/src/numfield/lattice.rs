//! The order ℤ[π, π̄] as a lattice in power-basis coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::ratpoly::Q;
use super::{Algebra, AlgebraElement, NumFieldError};
use crate::linalg::{hnf, hnf_solve, Matrix};

/// HNF basis of ℤ[π, π̄], scaled by a common denominator so that the rows
/// are integral: element = row / scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderLattice {
    pub scale: BigInt,
    pub basis: Matrix,
}

impl OrderLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis elements as algebra elements.
    pub fn elements(&self, alg: &Algebra) -> Vec<AlgebraElement> {
        self.basis
            .iter()
            .map(|row| {
                alg.element(
                    row.iter()
                        .map(|c| Q::new(c.clone(), self.scale.clone()))
                        .collect(),
                )
            })
            .collect()
    }

    pub fn contains(&self, alg: &Algebra, e: &AlgebraElement) -> Result<bool, NumFieldError> {
        alg.check(e)?;
        let mut v = Vec::with_capacity(e.coords().len());
        for c in e.coords() {
            let scaled = c * Q::from_integer(self.scale.clone());
            if !scaled.is_integer() {
                return Ok(false);
            }
            v.push(scaled.to_integer());
        }
        Ok(hnf_solve(&self.basis, &v).is_some())
    }

    /// Every product of two basis elements lies in the lattice.
    pub fn is_ring(&self, alg: &Algebra) -> bool {
        let els = self.elements(alg);
        els.iter().enumerate().all(|(i, a)| {
            els[i..]
                .iter()
                .all(|b| self.contains(alg, &alg.mul(a, b)).unwrap_or(false))
        })
    }
}

/// ℤ-span of π^a·π̄^b for 0 ≤ a, b < D.
pub fn order_lattice(alg: &Algebra) -> OrderLattice {
    let d = alg.dim();
    let pi = alg.pi();
    let pb = alg.pi_bar();
    let mut gens = Vec::with_capacity(d * d);
    let mut pa = alg.one();
    for _ in 0..d {
        let mut m = pa.clone();
        for _ in 0..d {
            gens.push(m.clone());
            m = alg.mul(&m, &pb);
        }
        pa = alg.mul(&pa, &pi);
    }
    let scale = gens
        .iter()
        .flat_map(|g| g.coords().iter())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| {
            g.coords()
                .iter()
                .map(|c| (c * Q::from_integer(scale.clone())).to_integer())
                .collect()
        })
        .collect();
    OrderLattice {
        scale,
        basis: hnf(&rows),
    }
}
