//! Integer utilities: factorization under an iteration budget, the Möbius
//! function, square and squarefree tests, prime powers and Hermite bounds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero has no factorization")]
    Zero,
    #[error("Hermite dimension must be even and positive, got {0}")]
    BadDimension(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

/// Iteration budget for the rho phase of integer factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Effort(pub u64);

impl Default for Effort {
    fn default() -> Self {
        Effort(2_000_000)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub value: BigInt,
    /// Prime factors in increasing order. When `complete` is false the last
    /// entry may be a composite cofactor; see `cofactor`.
    pub factors: Vec<(BigInt, u32)>,
    pub complete: bool,
    /// Composite part left unsplit when the budget ran out.
    pub cofactor: Option<BigInt>,
}

impl IntFactorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Small primes below the trial-division limit.
fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

fn mod_pow(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

/// Miller–Rabin with the first 13 prime bases; deterministic below 3.3·10²⁴.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let n = n.abs();
    if n < BigInt::from(2) {
        return false;
    }
    for &p in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let p = BigInt::from(p);
        if n == p {
            return true;
        }
        if (&n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n1 = &n - &one;
    let mut d = n1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'bases: for &a in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = mod_pow(&BigInt::from(a), &d, &n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or `None`
/// when `budget` iterations are used up.
fn rho(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let one = BigInt::one();
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        const M: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = M.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                if *budget < steps {
                    return None;
                }
                *budget -= steps;
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
        if *budget == 0 {
            return None;
        }
    }
    None
}

/// Factor `n` completely if the rho budget allows.
pub fn factor_integer(n: &BigInt, effort: Effort) -> Result<IntFactorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    let value = n.clone();
    let mut rest = n.abs();
    let mut found: Vec<(BigInt, u32)> = Vec::new();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        if (&rest % &pb).is_zero() {
            let mut e = 0;
            while (&rest % &pb).is_zero() {
                rest /= &pb;
                e += 1;
            }
            found.push((pb, e));
        }
    }
    let mut budget = effort.0;
    let mut pending = Vec::new();
    let mut stuck: Vec<BigInt> = Vec::new();
    if rest > BigInt::one() {
        pending.push(rest);
    }
    while let Some(m) = pending.pop() {
        if is_probable_prime(&m) {
            found.push((m, 1));
            continue;
        }
        if let Some(r) = m.sqrt().checked_square_eq(&m) {
            pending.push(r.clone());
            pending.push(r);
            continue;
        }
        match rho(&m, &mut budget) {
            Some(d) => {
                let other = &m / &d;
                pending.push(d);
                pending.push(other);
            }
            None => stuck.push(m),
        }
    }
    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in found {
        match factors.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => factors.push((p, e)),
        }
    }
    let cofactor = if stuck.is_empty() {
        None
    } else {
        Some(stuck.iter().fold(BigInt::one(), |a, b| a * b))
    };
    Ok(IntFactorization {
        value,
        factors,
        complete: cofactor.is_none(),
        cofactor,
    })
}

trait SquareCheck {
    fn checked_square_eq(self, target: &BigInt) -> Option<BigInt>;
}

impl SquareCheck for BigInt {
    fn checked_square_eq(self, target: &BigInt) -> Option<BigInt> {
        if &(&self * &self) == target {
            Some(self)
        } else {
            None
        }
    }
}

pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for positive integers");
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    n.sqrt().checked_square_eq(n)
}

pub fn is_squarefree(n: &BigInt, effort: Effort) -> Result<Tri, ArithError> {
    let fac = factor_integer(n, effort)?;
    if fac.factors.iter().any(|(_, e)| *e > 1) {
        return Ok(Tri::No);
    }
    match &fac.cofactor {
        None => Ok(Tri::Yes),
        Some(c) => {
            // The stuck cofactor is composite; a square root or a shared prime
            // with the found part settles the question.
            if is_perfect_square(c).is_some() || fac.primes().any(|p| (c % p).is_zero()) {
                Ok(Tri::No)
            } else {
                Ok(Tri::Unknown)
            }
        }
    }
}

/// q = p^a with p prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub q: u64,
    pub p: u64,
    pub a: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self, ArithError> {
        if q < 2 {
            return Err(ArithError::NotPrimePower(q));
        }
        let mut p = 2;
        while p * p <= q && !q.is_multiple_of(p) {
            p += 1;
        }
        if !q.is_multiple_of(p) {
            p = q;
        }
        let mut m = q;
        let mut a = 0;
        while m.is_multiple_of(p) {
            m /= p;
            a += 1;
        }
        if m != 1 {
            return Err(ArithError::NotPrimePower(q));
        }
        Ok(PrimePower { q, p, a })
    }

    pub fn big(&self) -> BigInt {
        BigInt::from(self.q)
    }

    /// ⌊2√q⌋.
    pub fn m(&self) -> u64 {
        (4 * self.q).sqrt()
    }

    /// Integer square root when q is a square.
    pub fn sqrt(&self) -> Option<u64> {
        if self.a.is_multiple_of(2) {
            Some(self.p.pow(self.a / 2))
        } else {
            None
        }
    }

    /// All (q₀, e) with q₀^e = q and e > 1.
    pub fn roots(&self) -> Vec<(PrimePower, u32)> {
        (2..=self.a)
            .filter(|e| self.a.is_multiple_of(*e))
            .map(|e| {
                let a0 = self.a / e;
                (
                    PrimePower {
                        q: self.p.pow(a0),
                        p: self.p,
                        a: a0,
                    },
                    e,
                )
            })
            .collect()
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// Upper bound for γ_{2n}^{2n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteBound {
    pub dimension: u32,
    pub bound_pow: BigRational,
}

/// Exact values through dimension 8, γ₁₀¹⁰ < 5669, and γ_k ≤ 2k/3 beyond.
pub fn hermite_upper_bound(two_n: u32) -> Result<HermiteBound, ArithError> {
    if two_n == 0 || two_n % 2 == 1 {
        return Err(ArithError::BadDimension(two_n));
    }
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let bound_pow = match two_n {
        2 => r(4, 3),
        4 => r(4, 1),
        6 => r(64, 3),
        8 => r(256, 1),
        10 => r(5669, 1),
        k => {
            let base = r(2 * k as i64, 3);
            num_traits::pow::pow(base, k as usize)
        }
    };
    Ok(HermiteBound {
        dimension: two_n,
        bound_pow,
    })
}


#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factor_examples() {
        let f = factor_integer(&b(12), Effort::default()).unwrap();
        assert_eq!(f.factors, vec![(b(2), 2), (b(3), 1)]);
        assert!(f.complete);
        let f = factor_integer(&b(39601), Effort::default()).unwrap();
        assert_eq!(f.factors, vec![(b(199), 2)]);
        let f = factor_integer(&b(-7), Effort::default()).unwrap();
        assert_eq!(f.factors, vec![(b(7), 1)]);
        assert_eq!(factor_integer(&b(0), Effort::default()), Err(ArithError::Zero));
    }

    #[test]
    fn factor_beyond_trial_division() {
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let f = factor_integer(&(&p * &q * &q), Effort::default()).unwrap();
        assert!(f.complete);
        assert_eq!(f.factors, vec![(p, 1), (q, 2)]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(1_000_000_009u64);
        let n = &p * &q;
        let f = factor_integer(&n, Effort(0)).unwrap();
        assert!(!f.complete);
        assert_eq!(f.cofactor, Some(n.clone()));
        assert_eq!(is_squarefree(&n, Effort(0)).unwrap(), Tri::Unknown);
        assert_eq!(is_squarefree(&(&n * &n), Effort(0)).unwrap(), Tri::No);
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(7), -1);
    }

    #[test]
    fn squares() {
        assert_eq!(is_perfect_square(&b(39601)), Some(b(199)));
        assert_eq!(is_perfect_square(&b(7)), None);
        assert_eq!(is_perfect_square(&b(0)), Some(b(0)));
        assert_eq!(is_perfect_square(&b(-4)), None);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(is_squarefree(&b(7), Effort::default()).unwrap(), Tri::Yes);
        assert_eq!(is_squarefree(&b(12), Effort::default()).unwrap(), Tri::No);
        assert_eq!(is_squarefree(&b(39601), Effort::default()).unwrap(), Tri::No);
        assert_eq!(is_squarefree(&b(-1), Effort::default()).unwrap(), Tri::Yes);
    }

    #[test]
    fn hermite_table() {
        let r = |n: i64, d: i64| BigRational::new(b(n), b(d));
        assert_eq!(hermite_upper_bound(2).unwrap().bound_pow, r(4, 3));
        assert_eq!(hermite_upper_bound(4).unwrap().bound_pow, r(4, 1));
        assert_eq!(hermite_upper_bound(10).unwrap().bound_pow, r(5669, 1));
        assert_eq!(hermite_upper_bound(12).unwrap().bound_pow, r(8, 1).pow(12));
        assert!(hermite_upper_bound(3).is_err());
        assert!(hermite_upper_bound(0).is_err());
    }

    #[test]
    fn prime_powers() {
        let q = PrimePower::new(32).unwrap();
        assert_eq!((q.p, q.a, q.m()), (2, 5, 11));
        assert_eq!(q.roots(), vec![(PrimePower::new(2).unwrap(), 5)]);
        assert_eq!(PrimePower::new(7).unwrap().m(), 5);
        assert_eq!(PrimePower::new(4).unwrap().sqrt(), Some(2));
        assert!(PrimePower::new(6).is_err());
        assert!(PrimePower::new(1).is_err());
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
