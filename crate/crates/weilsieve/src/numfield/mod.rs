//! The étale algebra ℚ[x]/(M) attached to an isogeny class, where M is the
//! radical of its Weil polynomial and x plays the role of Frobenius π.

mod descent;
mod lattice;
pub mod modp;
pub mod ratpoly;
mod unity;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use descent::{eth_roots_of_frobenius, EthRoot};
pub use lattice::{order_lattice, OrderLattice};
pub use modp::{splitting_data, ResidueFactor, SplittingData};
pub use unity::{roots_of_unity_in_order, unity_orders, RootOfUnity};

use crate::arith::PrimePower;
use crate::intpoly::{factor_monic_real_weil, radical, resultant, IntPoly};
use crate::weil::{power_sums, weil_companion, RealWeilPoly};
use ratpoly::{q_int, RatPoly, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumFieldError {
    #[error("elements belong to algebras with different moduli")]
    ModulusMismatch,
    #[error("element is a zero divisor")]
    NotInvertible,
    #[error("isogeny class is not ordinary")]
    NotOrdinary,
    #[error("{0} is not an e-th root of q")]
    BadSubfield(String),
}

/// One simple factor ℚ[x]/(M_j) of the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Irreducible factor M_j of the modulus.
    pub poly: IntPoly,
    /// Irreducible factor h_j of the real Weil polynomial it comes from.
    pub real_factor: IntPoly,
    /// Multiplicity of M_j in the Weil polynomial.
    pub multiplicity: u32,
}

/// Element of ℚ[x]/(M) in the power basis 1, π, …, π^(D−1).
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    coords: Vec<Q>,
    modulus: Arc<IntPoly>,
}

impl AlgebraElement {
    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }

    /// Coordinates as strings, for certificates.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

/// ℚ[x]/(M) with the involution π ↦ π̄ = q/π.
#[derive(Debug, Clone)]
pub struct Algebra {
    q: PrimePower,
    modulus: Arc<IntPoly>,
    modulus_q: RatPoly,
    components: Vec<Component>,
    pi_bar: Vec<Q>,
    /// Power sums of the roots of M, index 0 holding D.
    root_power_sums: Vec<BigInt>,
}

impl Algebra {
    pub fn new(h: &RealWeilPoly) -> Self {
        let q = h.q();
        let factors = factor_monic_real_weil(h.h(), q.q).expect("real Weil polynomial");
        let components: Vec<Component> = factors
            .into_iter()
            .map(|(hj, e)| {
                let fj = weil_companion(&hj, q.q);
                let mj = radical(&fj).expect("monic");
                let ratio = (fj.deg() / mj.deg()) as u32;
                Component {
                    poly: mj,
                    real_factor: hj,
                    multiplicity: ratio * e,
                }
            })
            .collect();
        let modulus: IntPoly = components.iter().map(|c| c.poly.clone()).product();
        Self::with_components(q, modulus, components)
    }

    fn with_components(q: PrimePower, modulus: IntPoly, components: Vec<Component>) -> Self {
        let d = modulus.deg();
        let c: Vec<BigInt> = (1..=d).map(|k| modulus.coeff(d - k)).collect();
        let mut root_power_sums = vec![BigInt::from(d)];
        root_power_sums.extend(power_sums(&c, d.saturating_sub(1)));
        let modulus_q = RatPoly::from_int(&modulus);
        // x·Q(x) = M(x) − M(0), so x⁻¹ = −Q(x)/M(0).
        let m0 = Q::from_integer(modulus.coeff(0));
        let inv_x: Vec<Q> = (1..=d).map(|k| -Q::from_integer(modulus.coeff(k)) / &m0).collect();
        let pi_bar = inv_x.iter().map(|c| c * q_int(q.q)).collect();
        Algebra {
            q,
            modulus: Arc::new(modulus),
            modulus_q,
            components,
            pi_bar,
            root_power_sums,
        }
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.modulus.deg()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    fn wrap(&self, p: RatPoly) -> AlgebraElement {
        let r = p.rem(&self.modulus_q);
        let mut coords = r.0;
        coords.resize(self.dim(), Q::zero());
        AlgebraElement {
            coords,
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn element(&self, coords: Vec<Q>) -> AlgebraElement {
        self.wrap(RatPoly::new(coords))
    }

    pub fn from_int_poly(&self, p: &IntPoly) -> AlgebraElement {
        self.wrap(RatPoly::from_int(p))
    }

    pub fn from_i64(&self, n: i64) -> AlgebraElement {
        self.wrap(RatPoly::new(vec![q_int(n)]))
    }

    pub fn one(&self) -> AlgebraElement {
        self.from_i64(1)
    }

    pub fn zero(&self) -> AlgebraElement {
        self.from_i64(0)
    }

    pub fn pi(&self) -> AlgebraElement {
        self.wrap(RatPoly::new(vec![Q::zero(), Q::one()]))
    }

    pub fn pi_bar(&self) -> AlgebraElement {
        self.element(self.pi_bar.clone())
    }

    /// Σ a_k π^k + Σ_{k≥1} b_k π̄^k.
    pub fn from_pi_pibar(&self, a: &[i64], b: &[i64]) -> AlgebraElement {
        let mut e = self.from_int_poly(&IntPoly::from_i64(a));
        let pb = self.pi_bar();
        let mut power = self.one();
        for &bk in b.iter().skip(1) {
            power = self.mul(&power, &pb);
            e = self.add(&e, &self.scale(&power, &q_int(bk)));
        }
        e
    }

    pub fn check(&self, a: &AlgebraElement) -> Result<(), NumFieldError> {
        if Arc::ptr_eq(&a.modulus, &self.modulus) || *a.modulus == *self.modulus {
            Ok(())
        } else {
            Err(NumFieldError::ModulusMismatch)
        }
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.wrap(a.poly().add(&b.poly()))
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.wrap(a.poly().sub(&b.poly()))
    }

    pub fn scale(&self, a: &AlgebraElement, k: &Q) -> AlgebraElement {
        self.wrap(a.poly().scale(k))
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.wrap(a.poly().mul(&b.poly()))
    }

    pub fn pow(&self, a: &AlgebraElement, mut e: u64) -> AlgebraElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inverse(&self, a: &AlgebraElement) -> Result<AlgebraElement, NumFieldError> {
        let (g, s, _) = RatPoly::ext_gcd(&a.poly(), &self.modulus_q);
        if g.deg() != 0 || g.is_zero() {
            return Err(NumFieldError::NotInvertible);
        }
        Ok(self.wrap(s))
    }

    /// a(π̄).
    pub fn conj(&self, a: &AlgebraElement) -> AlgebraElement {
        let pb = self.pi_bar();
        a.coords.iter().rev().fold(self.zero(), |acc, c| {
            let t = self.mul(&acc, &pb);
            self.add(&t, &self.element(vec![c.clone()]))
        })
    }

    /// Sum of the D conjugates.
    pub fn trace(&self, a: &AlgebraElement) -> Q {
        a.coords
            .iter()
            .zip(self.root_power_sums.iter())
            .map(|(c, s)| c * Q::from_integer(s.clone()))
            .sum()
    }

    /// Product of the D conjugates: Res(M, P)/den^D.
    pub fn norm(&self, a: &AlgebraElement) -> Q {
        if a.is_zero() {
            return Q::zero();
        }
        let (num, den) = a.poly().to_int_parts();
        let r = resultant(&self.modulus, &num).expect("nonzero inputs");
        Q::new(r, num_traits::Pow::pow(den, self.dim() as u32))
    }

    /// Characteristic polynomial of multiplication by a on ℚ[x]/(modulus),
    /// for a modulus dividing M.
    pub fn charpoly_on(&self, a: &AlgebraElement, modulus: &IntPoly) -> RatPoly {
        let sub = Algebra::with_components(self.q, modulus.clone(), Vec::new());
        let a = sub.wrap(a.poly());
        let d = sub.dim();
        let mut p = Vec::with_capacity(d);
        let mut power = sub.one();
        for _ in 0..d {
            power = sub.mul(&power, &a);
            p.push(sub.trace(&power));
        }
        charpoly_from_power_sums(&p)
    }

    /// Characteristic polynomial of a on the Weil module, where component j
    /// appears with its multiplicity.
    pub fn charpoly_weil(&self, a: &AlgebraElement) -> RatPoly {
        self.components.iter().fold(RatPoly::one(), |acc, c| {
            let cp = self.charpoly_on(a, &c.poly);
            (0..c.multiplicity).fold(acc, |acc, _| acc.mul(&cp))
        })
    }

    /// Orthogonal idempotent of component j.
    pub fn idempotent(&self, j: usize) -> AlgebraElement {
        let mj = RatPoly::from_int(&self.components[j].poly);
        let (cof, _) = self.modulus_q.divrem(&mj);
        let (_, s, _) = RatPoly::ext_gcd(&cof, &mj);
        self.wrap(s.mul(&cof))
    }

    /// Image of a in ℚ[x]/(M_j), as a rational polynomial of degree < deg M_j.
    pub fn project(&self, a: &AlgebraElement, j: usize) -> RatPoly {
        a.poly().rem(&RatPoly::from_int(&self.components[j].poly))
    }

    /// Lift of per-component values through the idempotents.
    pub fn crt(&self, parts: &[RatPoly]) -> AlgebraElement {
        parts.iter().enumerate().fold(self.zero(), |acc, (j, p)| {
            let t = self.mul(&self.wrap(p.clone()), &self.idempotent(j));
            self.add(&acc, &t)
        })
    }
}

/// Monic polynomial whose roots have the given power sums p_1..p_d.
pub fn charpoly_from_power_sums(p: &[Q]) -> RatPoly {
    let d = p.len();
    // Newton: k·e_k = Σ_{i=1..k} (−1)^(i−1) e_(k−i) p_i.
    let mut e = vec![Q::one()];
    for k in 1..=d {
        let mut s = Q::zero();
        for i in 1..=k {
            let t = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        e.push(s / q_int(k as i64));
    }
    let coeffs = (0..=d)
        .map(|i| {
            let k = d - i;
            if k.is_multiple_of(2) {
                e[k].clone()
            } else {
                -e[k].clone()
            }
        })
        .collect();
    RatPoly::new(coeffs)
}

/// Serializable algebra element: power-basis coordinates as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRepr(pub Vec<String>);

impl From<&AlgebraElement> for ElementRepr {
    fn from(e: &AlgebraElement) -> Self {
        ElementRepr(e.to_strings())
    }
}
