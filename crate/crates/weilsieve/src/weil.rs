//! Real Weil polynomials, their Weil companions, point and place counts.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{divisors, mobius, PrimePower};
use crate::intpoly::{is_real_weil_shape, IntPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0} has a root outside [-2sqrt(q), 2sqrt(q)] or a non-real root")]
    Shape(String),
    #[error("{0} is not a Weil polynomial for q = {1}")]
    NotWeil(String, u64),
    #[error("degree must be positive")]
    ConstantPolynomial,
}

/// Monic h of degree g whose roots are real and lie in [−2√q, 2√q].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealWeilPoly {
    h: IntPoly,
    q: PrimePower,
}

impl RealWeilPoly {
    pub fn new(h: IntPoly, q: PrimePower) -> Result<Self, WeilError> {
        if h.degree().unwrap_or(0) == 0 {
            return Err(WeilError::ConstantPolynomial);
        }
        if !is_real_weil_shape(&h, q.q)? {
            return Err(WeilError::Shape(h.to_list()));
        }
        Ok(RealWeilPoly { h, q })
    }

    /// Skips the shape check; callers have already certified it.
    pub(crate) fn new_unchecked(h: IntPoly, q: PrimePower) -> Self {
        RealWeilPoly { h, q }
    }

    pub fn h(&self) -> &IntPoly {
        &self.h
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn g(&self) -> usize {
        self.h.deg()
    }

    /// Frobenius trace: the sum of the roots of h.
    pub fn trace(&self) -> BigInt {
        -self.h.coeff(self.g() - 1)
    }
}

impl fmt::Display for RealWeilPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over F_{}", self.h, self.q)
    }
}

/// f(x) = x^g·h(x + q/x), monic of degree 2g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilPoly {
    f: IntPoly,
    q: PrimePower,
}

impl WeilPoly {
    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn g(&self) -> usize {
        self.f.deg() / 2
    }

    /// c_n, the coefficient of x^(2g−n).
    pub fn c(&self, n: usize) -> BigInt {
        self.f.coeff(2 * self.g() - n)
    }
}

pub fn real_to_weil(h: &RealWeilPoly) -> WeilPoly {
    WeilPoly {
        f: weil_companion(h.h(), h.q().q),
        q: h.q(),
    }
}

/// x^g·h(x + q/x) for any polynomial h of degree g.
pub fn weil_companion(h: &IntPoly, q: u64) -> IntPoly {
    let g = h.deg();
    let x2q = IntPoly::from_i64(&[q as i64, 0, 1]);
    let mut f = IntPoly::zero();
    for (k, b) in h.coeffs().iter().enumerate() {
        // h_k·x^(g−k)·(x² + q)^k
        let term = &IntPoly::monomial(b.clone(), g - k) * &x2q.pow(k as u32);
        f = &f + &term;
    }
    f
}

pub fn weil_to_real(f: &IntPoly, q: PrimePower) -> Result<RealWeilPoly, WeilError> {
    f.require_monic()?;
    let d = f.deg();
    if d == 0 || d % 2 == 1 {
        return Err(WeilError::NotWeil(f.to_list(), q.q));
    }
    let g = d / 2;
    let qb = q.big();
    // h_i = f_{g+i} − Σ_{j>i, j≡i (2)} C(j, (j−i)/2)·q^((j−i)/2)·h_j
    let mut h = vec![BigInt::zero(); g + 1];
    for i in (0..=g).rev() {
        let mut v = f.coeff(g + i);
        for j in (i + 2..=g).step_by(2) {
            let k = (j - i) / 2;
            v -= binomial(BigInt::from(j), BigInt::from(k)) * Pow::pow(&qb, k) * &h[j];
        }
        h[i] = v;
    }
    let h = IntPoly::new(h);
    if weil_companion(&h, q.q) != *f {
        return Err(WeilError::NotWeil(f.to_list(), q.q));
    }
    RealWeilPoly::new(h, q)
}

/// Coefficients c_1..c_n of the Weil polynomial from the leading
/// coefficients b_1..b_n of h, for n ≤ g.
pub fn weil_coeffs_from_prefix(b: &[BigInt], g: usize, q: u64) -> Vec<BigInt> {
    let qb = BigInt::from(q);
    (1..=b.len())
        .map(|n| {
            let mut c = BigInt::zero();
            for j in (n % 2..=n).step_by(2) {
                let bj = if j == 0 { BigInt::one() } else { b[j - 1].clone() };
                let i = (n - j) / 2;
                c += binomial(BigInt::from(g - j), BigInt::from(i)) * Pow::pow(&qb, i) * bj;
            }
            c
        })
        .collect()
}

/// Power sums P_1..P_n of the roots of x^d + c_1 x^(d−1) + … by Newton's
/// identities; coefficients past the given slice are zero.
pub fn power_sums(c: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut s = if k <= c.len() {
            -BigInt::from(k) * &c[k - 1]
        } else {
            BigInt::zero()
        };
        for i in 1..k.min(c.len() + 1) {
            s -= &c[i - 1] * &p[k - i - 1];
        }
        p.push(s);
    }
    p
}

/// Point counts N_n = q^n + 1 − P_n.
pub fn counts_from_power_sums(p: &[BigInt], q: u64) -> Vec<BigInt> {
    let qb = BigInt::from(q);
    p.iter()
        .enumerate()
        .map(|(i, s)| Pow::pow(&qb, i + 1) + 1 - s)
        .collect()
}

/// a_n = (1/n)·Σ_{d|n} μ(n/d)·N_d, for every n covered by `counts`.
pub fn places_from_counts(counts: &[BigInt]) -> Vec<BigInt> {
    (1..=counts.len())
        .map(|n| {
            let mut s = BigInt::zero();
            for d in divisors(n as u64) {
                let mu = mobius(n as u64 / d);
                if mu != 0 {
                    s += BigInt::from(mu) * &counts[d as usize - 1];
                }
            }
            s.div_floor(&BigInt::from(n))
        })
        .collect()
}

/// Point and place counts of a candidate over F_{q^n}, n = 1..horizon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceCountProfile {
    #[serde(with = "crate::report::bigint_vec")]
    pub point_counts: Vec<BigInt>,
    #[serde(with = "crate::report::bigint_vec")]
    pub place_counts: Vec<BigInt>,
    pub horizon: usize,
}

impl PlaceCountProfile {
    /// First n with a_n < 0.
    pub fn first_negative_place(&self) -> Option<(usize, &BigInt)> {
        self.place_counts
            .iter()
            .enumerate()
            .find(|(_, a)| a.is_negative())
            .map(|(i, a)| (i + 1, a))
    }
}

pub fn point_counts(h: &RealWeilPoly, horizon: usize) -> PlaceCountProfile {
    profile_of(h.h(), h.q().q, horizon)
}

/// Profile of any monic h, real Weil or not.
pub fn profile_of(h: &IntPoly, q: u64, horizon: usize) -> PlaceCountProfile {
    let f = weil_companion(h, q);
    let d = f.deg();
    let c: Vec<BigInt> = (1..=d).map(|n| f.coeff(d - n)).collect();
    let p = power_sums(&c, horizon);
    let point_counts = counts_from_power_sums(&p, q);
    let place_counts = places_from_counts(&point_counts);
    PlaceCountProfile {
        point_counts,
        place_counts,
        horizon,
    }
}

/// g·⌊2√q⌋ + t.
pub fn defect(h: &RealWeilPoly) -> BigInt {
    BigInt::from(h.g() as u64 * h.q().m()) + h.trace()
}

/// gcd(h(0), q) = 1.
pub fn is_ordinary(h: &RealWeilPoly) -> bool {
    h.h().coeff(0).gcd(&h.q().big()).is_one()
}

/// Trace of Frobenius of an elliptic curve over F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticTrace {
    pub t: i64,
    pub q: u64,
}

impl EllipticTrace {
    pub fn new(t: i64, q: PrimePower) -> Option<Self> {
        admissible_elliptic_trace(t, q).then_some(EllipticTrace { t, q: q.q })
    }

    pub fn point_count(&self) -> i64 {
        self.q as i64 + 1 - self.t
    }

    pub fn is_ordinary(&self) -> bool {
        let p = PrimePower::new(self.q).expect("validated on construction").p;
        self.t.rem_euclid(p as i64) != 0
    }

    /// #E(F_{q^n}) for n = 1..horizon.
    pub fn counts(&self, horizon: usize) -> Vec<BigInt> {
        profile_of(&IntPoly::from_i64(&[-self.t, 1]), self.q, horizon).point_counts
    }
}

/// Waterhouse's classification of elliptic Frobenius traces.
pub fn admissible_elliptic_trace(t: i64, q: PrimePower) -> bool {
    let (p, a) = (q.p as i64, q.a);
    let t2 = (t as i128) * (t as i128);
    if t2 > 4 * q.q as i128 {
        return false;
    }
    if t.rem_euclid(p) != 0 {
        return true;
    }
    let even = a % 2 == 0;
    let sqrt_q = q.sqrt().map(|s| s as i64);
    if sqrt_q.is_some_and(|s| t.abs() == 2 * s) {
        return even;
    }
    if sqrt_q.is_some_and(|s| t.abs() == s) {
        return p % 3 != 1;
    }
    if t == 0 {
        return !even || p % 4 != 1;
    }
    if !even && (t as i128).abs() == (p as i128).pow(a.div_ceil(2)) {
        return p == 2 || p == 3;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    fn rw(c: &[i64], q: u64) -> RealWeilPoly {
        RealWeilPoly::new(IntPoly::from_i64(c), pp(q)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn companion_examples() {
        assert_eq!(real_to_weil(&rw(&[2, 1], 7)).f(), &IntPoly::from_i64(&[7, 2, 1]));
        let f = real_to_weil(&rw(&[57, 102, 58, 13, 1], 8));
        assert_eq!(
            f.f(),
            &IntPoly::from_i64(&[4096, 6656, 5760, 3312, 1369, 414, 90, 13, 1])
        );
        assert_eq!(f.c(4), BigInt::from(1369));
        assert_eq!(
            weil_to_real(f.f(), pp(8)).unwrap().h(),
            &IntPoly::from_i64(&[57, 102, 58, 13, 1])
        );
        assert_eq!(
            weil_to_real(&IntPoly::from_i64(&[7, 2, 1]), pp(7)).unwrap().h(),
            &IntPoly::from_i64(&[2, 1])
        );
        assert!(matches!(
            weil_to_real(&IntPoly::from_i64(&[7, 6, 1]), pp(7)),
            Err(WeilError::Shape(_))
        ));
        assert!(matches!(
            weil_to_real(&IntPoly::from_i64(&[5, 2, 1]), pp(7)),
            Err(WeilError::NotWeil(..))
        ));
    }

    #[test]
    fn prefix_coefficients_match_companion() {
        let h = rw(&[57, 102, 58, 13, 1], 8);
        let f = real_to_weil(&h);
        let b = ints(&[13, 58, 102, 57]);
        let c = weil_coeffs_from_prefix(&b, 4, 8);
        assert_eq!(c, (1..=4).map(|n| f.c(n)).collect::<Vec<_>>());
    }

    #[test]
    fn count_examples() {
        let prof = point_counts(&rw(&[4, 4, 1], 2), 2);
        assert_eq!(prof.point_counts, ints(&[7, 5]));
        assert_eq!(prof.place_counts[1], BigInt::from(-1));
        let h = &IntPoly::from_i64(&[1, 1]).pow(3) * &IntPoly::from_i64(&[-3, -1, 1]);
        let prof = point_counts(&RealWeilPoly::new(h, pp(2)).unwrap(), 3);
        assert_eq!(prof.point_counts[2], BigInt::from(-10));
        assert_eq!(point_counts(&rw(&[2, 1], 7), 1).point_counts, ints(&[10]));
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect(&rw(&[4, 4, 1], 2)), BigInt::zero());
        let h = &IntPoly::from_i64(&[2, 1]) * &IntPoly::from_i64(&[5, 1]).pow(3);
        assert_eq!(defect(&RealWeilPoly::new(h, pp(7)).unwrap()), BigInt::from(3));
        let h = IntPoly::from_i64(&[3, 1]).pow(5);
        assert_eq!(defect(&RealWeilPoly::new(h, pp(3)).unwrap()), BigInt::zero());
    }

    #[test]
    fn ordinarity() {
        assert!(is_ordinary(&rw(&[57, 102, 58, 13, 1], 8)));
        assert!(!is_ordinary(&rw(&[2, 1], 2)));
        assert!(is_ordinary(&rw(&[-1, 1, 1], 2)));
    }

    #[test]
    fn elliptic_traces() {
        assert!(admissible_elliptic_trace(-2, pp(7)));
        assert!(admissible_elliptic_trace(2, pp(2)));
        assert!(admissible_elliptic_trace(-3, pp(4)));
        assert!(admissible_elliptic_trace(2, pp(4)));
        assert!(!admissible_elliptic_trace(6, pp(7)));
        assert!(!admissible_elliptic_trace(2, pp(8)));
        assert!(admissible_elliptic_trace(4, pp(8)));
        assert!(admissible_elliptic_trace(3, pp(9)));
        assert!(!admissible_elliptic_trace(7, pp(49)));
        assert!(admissible_elliptic_trace(0, pp(9)));
        assert!(!admissible_elliptic_trace(0, pp(25)));
    }
}
