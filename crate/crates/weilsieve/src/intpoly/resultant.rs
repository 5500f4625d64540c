//! Sylvester resultants, reduced resultants and discriminants.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{IntPoly, PolyError};
use crate::linalg::{bareiss_det, hnf, Matrix};

/// Rows x^i·f (i < deg g) then x^j·g (j < deg f), columns from the highest
/// power down to the constant term.
fn sylvester(f: &IntPoly, g: &IntPoly) -> Matrix {
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, shifts) in [(f, n), (g, m)] {
        for s in (0..shifts).rev() {
            let mut row = vec![BigInt::zero(); size];
            for (k, c) in p.coeffs().iter().enumerate() {
                row[size - 1 - (k + s)] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::Zero);
    }
    if f.deg() == 0 && g.deg() == 0 {
        return Ok(BigInt::from(1));
    }
    Ok(bareiss_det(sylvester(f, g)))
}

/// Positive generator of (f, g) ∩ ℤ for coprime f, g.
pub fn reduced_resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, PolyError> {
    let res = resultant(f, g)?;
    if res.is_zero() {
        return Err(PolyError::CommonFactor);
    }
    if f.deg() == 0 || g.deg() == 0 {
        // The ideal contains the constant; with the other side monic-free we
        // fall back to the content of the constant generator.
        let c = if f.deg() == 0 { f.coeff(0) } else { g.coeff(0) };
        return Ok(c.abs());
    }
    // Every element of (f, g) of degree < deg f + deg g is an integer
    // combination of the Sylvester rows, so the HNF's last pivot (constant
    // column) generates the intersection with ℤ.
    let h = hnf(&sylvester(f, g));
    let last = h.last().expect("nonsingular Sylvester matrix");
    Ok(last[last.len() - 1].abs())
}

/// Discriminant of a monic polynomial: (−1)^(n(n−1)/2)·Res(f, f′).
pub fn discriminant(f: &IntPoly) -> Result<BigInt, PolyError> {
    f.require_monic()?;
    let n = f.deg();
    if n <= 1 {
        return Ok(BigInt::from(1));
    }
    let r = resultant(f, &f.derivative())?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factor_integer, Effort};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-2, 0, 1])).unwrap(), BigInt::from(9));
        let r = resultant(&p(&[-1, 1, 1]), &p(&[-5, -5, 5, 5, 1])).unwrap();
        let fac = factor_integer(&r, Effort::default()).unwrap();
        let primes: Vec<_> = fac.primes().cloned().collect();
        assert_eq!(primes, vec![BigInt::from(3)]);
        assert_eq!(resultant(&IntPoly::zero(), &p(&[1, 1])), Err(PolyError::Zero));
    }

    #[test]
    fn reduced_resultant_examples() {
        assert_eq!(reduced_resultant(&p(&[0, 1]), &p(&[-2, 1])).unwrap(), BigInt::from(2));
        assert_eq!(reduced_resultant(&p(&[1, 1]), &p(&[2, 1])).unwrap(), BigInt::from(1));
        assert_eq!(
            reduced_resultant(&p(&[-1, 1, 1]), &p(&[-5, -5, 5, 5, 1])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            reduced_resultant(&p(&[-1, 1]), &p(&[-1, 0, 1])),
            Err(PolyError::CommonFactor)
        );
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p(&[1, 3, 1])).unwrap(), BigInt::from(5));
        assert_eq!(discriminant(&p(&[-2, 0, 1])).unwrap(), BigInt::from(8));
        assert_eq!(discriminant(&p(&[1, 0, 1])).unwrap(), BigInt::from(-4));
    }
}
