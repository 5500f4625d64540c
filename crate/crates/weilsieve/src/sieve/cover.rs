//! Maps to elliptic curves forced by a linear factor x − t of h.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::{Certificate, CoverBoundDeduction, CoverDeduction, Status, TestName, TestOutcome};
use crate::arith::{divisors, hermite_upper_bound};
use crate::intpoly::{factor_monic_real_weil, radical, IntPoly};
use crate::weil::{point_counts, EllipticTrace, RealWeilPoly};

/// Linear factors x − t of h with multiplicity n, and the cofactor h₀.
fn linear_factors(h: &RealWeilPoly) -> Vec<(i64, u32, IntPoly)> {
    factor_monic_real_weil(h.h(), h.q().q)
        .expect("real Weil polynomial")
        .into_iter()
        .filter(|(p, _)| p.deg() == 1)
        .filter_map(|(p, n)| {
            let t = (-p.coeff(0)).to_i64()?;
            let h0 = h.h().div_exact(&p.pow(n)).expect("factor divides");
            Some((t, n, h0))
        })
        .collect()
}

/// Degrees d in `candidates` with #C(F_q^k) ≤ d·#E(F_q^k) for k ≤ horizon.
fn count_feasible(
    h: &RealWeilPoly,
    e: &EllipticTrace,
    horizon: usize,
    candidates: impl Iterator<Item = u64>,
) -> Vec<u64> {
    let c = point_counts(h, horizon).point_counts;
    let ec = e.counts(horizon);
    candidates
        .filter(|&d| c.iter().zip(&ec).all(|(nc, ne)| *nc <= BigInt::from(d) * ne))
        .collect()
}

/// r = rad(h₀)(t); a curve in the class maps to E with degree dividing r.
pub fn test_elliptic_cover_divisor(h: &RealWeilPoly, horizon: usize) -> TestOutcome {
    let name = TestName::EllipticCoverDivisor;
    if h.g() < 2 {
        return TestOutcome::note(name, Status::Inapplicable, "genus 1");
    }
    let mut options = Vec::new();
    let mut notes = Vec::new();
    for (t, n, h0) in linear_factors(h) {
        if n != 1 {
            continue;
        }
        let Some(e) = EllipticTrace::new(t, h.q()) else {
            notes.push(format!("trace {t} is not the trace of an elliptic curve over F_{}", h.q()));
            continue;
        };
        let g0 = radical(&h0).expect("monic");
        let r = g0.eval(&BigInt::from(t)).abs();
        let Some(ru) = r.to_u64() else {
            notes.push(format!("r = {r} too large to list divisors"));
            continue;
        };
        let feasible = count_feasible(h, &e, horizon, divisors(ru).into_iter().filter(|&d| d >= 2));
        options.push(CoverDeduction {
            t,
            elliptic_points: e.point_count(),
            r,
            feasible_degrees: feasible,
        });
    }
    if options.is_empty() {
        if notes.is_empty() {
            notes.push("no simple linear factor".into());
        }
        return TestOutcome::new(name, Status::Inapplicable, Certificate::CoverDivisor { options, notes });
    }
    let status = if options.iter().any(|o| o.feasible_degrees.is_empty()) {
        Status::Eliminated
    } else {
        Status::Deduction
    };
    TestOutcome::new(name, status, Certificate::CoverDivisor { options, notes })
}

/// Degree bound from the Hermite constant: with r = rad(h₀)(t) and
/// b = gcd(r^n, h₀(t)), deg ≤ B where B^(2n) = γ_2n^(2n)·b²·(|t² − 4q|/4)^n.
pub fn test_elliptic_cover_bound(h: &RealWeilPoly, horizon: usize) -> TestOutcome {
    let name = TestName::EllipticCoverBound;
    if h.g() < 2 {
        return TestOutcome::note(name, Status::Inapplicable, "genus 1");
    }
    let q = h.q();
    let mut options = Vec::new();
    let mut notes = Vec::new();
    for (t, n, h0) in linear_factors(h) {
        let Some(e) = EllipticTrace::new(t, q) else {
            notes.push(format!("trace {t} is not the trace of an elliptic curve over F_{q}"));
            continue;
        };
        if !e.is_ordinary() {
            notes.push(format!("trace {t} is supersingular"));
            continue;
        }
        let tb = BigInt::from(t);
        let g0 = radical(&h0).expect("monic");
        let r = g0.eval(&tb);
        let b = num_traits::pow(r.clone(), n as usize).gcd(&h0.eval(&tb));
        let gamma = hermite_upper_bound(2 * n).expect("even positive dimension").bound_pow;
        let disc = BigInt::from(t * t - 4 * q.q as i64).abs();
        let bound_pow: BigRational = gamma
            * BigRational::from_integer(&b * &b)
            * num_traits::pow(BigRational::new(disc, BigInt::from(4)), n as usize);
        // Least integer k with k^(2n) > B^(2n).
        let mut below = 1u64;
        while BigRational::from_integer(num_traits::pow(BigInt::from(below), 2 * n as usize)) <= bound_pow {
            below += 1;
        }
        let feasible = count_feasible(h, &e, horizon, 2..below);
        options.push(CoverBoundDeduction {
            t,
            n,
            elliptic_points: e.point_count(),
            r,
            b,
            bound_pow: bound_pow.to_string(),
            below,
            feasible_degrees: feasible,
        });
    }
    if options.is_empty() {
        if notes.is_empty() {
            notes.push("no linear factor".into());
        }
        return TestOutcome::new(name, Status::Inapplicable, Certificate::CoverBound { options, notes });
    }
    let status = if options.iter().any(|o| o.feasible_degrees.is_empty()) {
        Status::Eliminated
    } else {
        Status::Deduction
    };
    TestOutcome::new(name, status, Certificate::CoverBound { options, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimePower;

    fn poly(factors: &[(&[i64], u32)]) -> IntPoly {
        factors
            .iter()
            .fold(IntPoly::one(), |acc, (c, e)| &acc * &IntPoly::from_i64(c).pow(*e))
    }

    fn rw(p: IntPoly, q: u64) -> RealWeilPoly {
        RealWeilPoly::new(p, PrimePower::new(q).unwrap()).unwrap()
    }

    #[test]
    fn rigato_degree_three() {
        let h = rw(poly(&[(&[2, 1], 1), (&[5, 1], 3)]), 7);
        let o = test_elliptic_cover_divisor(&h, 8);
        assert_eq!(o.status, Status::Deduction);
        let Certificate::CoverDivisor { options, .. } = o.certificate else { panic!() };
        assert_eq!(options.len(), 1);
        assert_eq!((options[0].t, options[0].elliptic_points), (-2, 10));
        assert_eq!(options[0].r, BigInt::from(3));
        assert_eq!(options[0].feasible_degrees, vec![3]);
    }

    #[test]
    fn f4_triple_cover() {
        let h = rw(poly(&[(&[0, 1], 1), (&[2, 1], 4), (&[3, 1], 1), (&[4, 1], 2)]), 4);
        let o = test_elliptic_cover_divisor(&h, 8);
        let Certificate::CoverDivisor { options, .. } = o.certificate else { panic!() };
        let opt = options.iter().find(|o| o.t == -3).unwrap();
        assert_eq!(opt.r, BigInt::from(3));
        assert_eq!(opt.elliptic_points, 8);
    }

    #[test]
    fn genus12_bound() {
        let h = rw(
            poly(&[(&[2, 1], 2), (&[-2, 0, 1], 1), (&[-2, 2, 1], 3), (&[1, 1], 2)]),
            2,
        );
        let o = test_elliptic_cover_bound(&h, 24);
        let Certificate::CoverBound { options, .. } = o.certificate else { panic!() };
        let opt = options.iter().find(|o| o.t == -1).unwrap();
        assert_eq!(opt.r, BigInt::from(3));
        assert_eq!(opt.b, BigInt::from(9));
        assert_eq!(opt.below, 6);
        assert_eq!(opt.bound_pow, "3969/4");
        assert_eq!(opt.feasible_degrees, vec![4, 5]);
    }

    #[test]
    fn supersingular_trace_is_skipped() {
        let h = rw(poly(&[(&[0, 1], 1), (&[1, 1], 1)]), 2);
        let o = test_elliptic_cover_bound(&h, 4);
        let Certificate::CoverBound { options, notes } = o.certificate else { panic!() };
        assert!(options.iter().all(|o| o.t != 0));
        assert!(notes.iter().any(|n| n.contains("supersingular")));
    }
}
