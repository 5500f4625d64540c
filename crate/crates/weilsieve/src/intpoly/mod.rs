//! Dense univariate polynomials over ℤ, coefficients stored in ascending
//! degree order with no trailing zeros.

mod factor;
mod resultant;
mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use factor::{factor_monic_real_weil, radical, real_roots_f64, squarefree_decomposition};
pub use resultant::{discriminant, reduced_resultant, resultant};
pub use sturm::{
    all_roots_real_in_weil_interval, count_real_roots_in, is_real_weil_shape, Bound, SturmChain,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial not allowed here")]
    Zero,
    #[error("polynomial {0} is not monic")]
    NotMonic(String),
    #[error("polynomials share a common factor (resultant 0)")]
    CommonFactor,
    #[error("empty or reversed interval")]
    DegenerateInterval,
    #[error("{0} does not have all roots real in [-2sqrt(q), 2sqrt(q)]")]
    Shape(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// x − a
    pub fn linear(a: &BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn require_monic(&self) -> Result<(), PolyError> {
        if self.is_zero() {
            Err(PolyError::Zero)
        } else if self.is_monic() {
            Ok(())
        } else {
            Err(PolyError::NotMonic(self.to_string()))
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of f(a/b) for b > 0, computed as the sign of b^d·f(a/b).
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        let mut acc = self.coeffs[d].clone();
        let mut pow_b = BigInt::one();
        for i in (0..d).rev() {
            pow_b *= den;
            acc = acc * num + &self.coeffs[i] * &pow_b;
        }
        sign(&acc)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// f(−x)
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// f(g(x))
    pub fn compose(&self, g: &IntPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |a, c| a.gcd(c))
    }

    /// Divide out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let p = self.primitive_part();
        if p.lead().is_negative() {
            -&p
        } else {
            p
        }
    }

    /// Division with remainder by a monic divisor.
    pub fn divrem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(d.is_monic(), "divrem_monic needs a monic divisor");
        let n = d.deg();
        let mut r = self.coeffs.clone();
        if r.len() <= n {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - n];
        for i in (n..r.len()).rev() {
            let c = std::mem::take(&mut r[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                r[i - n + j] -= &c * &d.coeffs[j];
            }
            q[i - n] = c;
        }
        r.truncate(n);
        (Self::new(q), Self::new(r))
    }

    /// Pseudo-remainder: lc(d)^(deg f − deg d + 1)·f mod d, with the quotient.
    pub fn pseudo_divrem(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        let n = d.degree().expect("pseudo division by zero");
        let Some(m) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if m < n {
            return (Self::zero(), self.clone());
        }
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); m - n + 1];
        for i in (n..=m).rev() {
            let c = std::mem::take(&mut r[i]);
            for qc in q.iter_mut() {
                *qc *= &lc;
            }
            for x in r.iter_mut().take(i) {
                *x *= &lc;
            }
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                r[i - n + j] -= &c * &d.coeffs[j];
            }
            q[i - n] = c;
        }
        r.truncate(n);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient over ℚ scaled back to ℤ; `None` if `d` does not divide
    /// `self` in ℤ[x].
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let n = d.degree()?;
        let Some(m) = self.degree() else {
            return Some(Self::zero());
        };
        if m < n {
            return None;
        }
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); m - n + 1];
        for i in (n..=m).rev() {
            let (c, rem) = r[i].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            r[i] = BigInt::zero();
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                r[i - n + j] -= &c * &d.coeffs[j];
            }
            q[i - n] = c;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    pub fn divides(&self, f: &IntPoly) -> bool {
        if self.is_monic() {
            f.divrem_monic(self).1.is_zero()
        } else {
            f.div_exact(self).is_some()
        }
    }

    /// Greatest common divisor in ℤ[x], positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.normalized_with_content();
        }
        if other.is_zero() {
            return self.normalized_with_content();
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.pseudo_divrem(&b);
            a = b;
            b = r.primitive_part();
        }
        let g = a.normalized();
        g.scale(&c)
    }

    fn normalized_with_content(&self) -> IntPoly {
        if self.lead().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicity of `d` as a factor; `d` must be nonconstant.
    pub fn multiplicity(&self, d: &IntPoly) -> u32 {
        let mut f = self.clone();
        let mut k = 0;
        while !f.is_zero() {
            match f.div_exact(d) {
                Some(q) => {
                    f = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }

    /// Compact ascending list, e.g. `[57,102,58,13,1]`.
    pub fn to_list(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

pub(crate) fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn display_and_normalization() {
        assert_eq!(p(&[57, 102, 58, 13, 1]).to_string(), "x^4 + 13x^3 + 58x^2 + 102x + 57");
        assert_eq!(p(&[-1, 0, 0]).to_string(), "-1");
        assert_eq!(p(&[0, -1, 1]).to_string(), "x^2 - x");
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[57, 102, 58, 13, 1]).to_list(), "[57,102,58,13,1]");
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[-1, 0, 1]).divrem_monic(&b), (a.clone(), IntPoly::zero()));
        assert_eq!(p(&[1, 0, 1]).divrem_monic(&b).1, p(&[2]));
        assert_eq!(p(&[-2, 0, 2]).div_exact(&p(&[2, 2])), Some(b.clone()));
        assert_eq!(p(&[1, 0, 1]).div_exact(&b), None);
        assert_eq!(p(&[1, 2, 1]).reflect(), p(&[1, -2, 1]));
        assert_eq!(p(&[0, 0, 1]).compose(&a), p(&[1, 2, 1]));
    }

    #[test]
    fn gcd_and_multiplicity() {
        let f = &p(&[2, 1]).pow(3) * &p(&[-1, 1]);
        let g = &p(&[2, 1]).pow(2) * &p(&[1, 1]);
        assert_eq!(f.gcd(&g), p(&[2, 1]).pow(2));
        assert_eq!(f.multiplicity(&p(&[2, 1])), 3);
        assert_eq!(p(&[4, 6]).gcd(&p(&[6, 9])), p(&[2, 3]));
    }

    #[test]
    fn sign_at_rationals() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.sign_at(&BigInt::from(3), &BigInt::from(2)), 1);
        assert_eq!(f.sign_at(&BigInt::from(1), &BigInt::from(1)), -1);
        assert_eq!(p(&[-4, 0, 1]).sign_at(&BigInt::from(2), &BigInt::from(1)), 0);
    }
}
