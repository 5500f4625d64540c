//! Genus-2 and genus-3 pattern rules, and the supersingular-factor test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Certificate, Status, SupersingularBranch, SurfaceRule, TestName, TestOutcome};
use crate::arith::{factor_integer, is_squarefree, Effort, Tri};
use crate::intpoly::IntPoly;
use crate::weil::{is_ordinary, RealWeilPoly};

/// b < 0, a² − b = q and every prime dividing b is 1 mod 3, for the Weil
/// polynomial x⁴ + a x³ + b x² + q a x + q². `Unknown` if b cannot be
/// factored within the budget.
pub fn surface_criterion(a: &BigInt, b: &BigInt, q: u64, effort: Effort) -> Tri {
    if !b.is_negative() || a * a - b != BigInt::from(q) {
        return Tri::No;
    }
    match factor_integer(b, effort) {
        Ok(f) if f.complete => {
            let three = BigInt::from(3);
            if f.primes().all(|p| p.mod_floor(&three) == BigInt::from(1)) {
                Tri::Yes
            } else {
                Tri::No
            }
        }
        _ => Tri::Unknown,
    }
}

/// t with h = (x − t)^power, if any.
fn pure_power_root(h: &IntPoly) -> Option<i64> {
    let g = h.deg() as i64;
    let c = h.coeff(h.deg() - 1);
    if !c.is_multiple_of(&BigInt::from(g)) {
        return None;
    }
    let t = -(c / g);
    let lin = IntPoly::new(vec![-t.clone(), BigInt::from(1)]);
    (lin.pow(g as u32) == *h).then(|| t.to_i64()).flatten()
}

pub fn test_surface_rules(h: &RealWeilPoly, effort: Effort) -> TestOutcome {
    let q = h.q();
    let g = h.g();
    let qi = q.q as i64;
    let hoffmann = |power: usize, bad: &[i64]| -> Option<TestOutcome> {
        let t = pure_power_root(h.h())?;
        let disc = t * t - 4 * qi;
        bad.contains(&disc).then(|| {
            TestOutcome::new(
                TestName::SurfaceRules,
                Status::Eliminated,
                Certificate::Hoffmann { power, t, disc },
            )
        })
    };
    match g {
        2 => {
            let a = h.h().coeff(1);
            let b = h.h().coeff(0) + BigInt::from(2 * q.q);
            let pair = |rule, status| {
                TestOutcome::new(
                    TestName::SurfaceRules,
                    status,
                    Certificate::SurfacePair {
                        rule,
                        a: a.clone(),
                        b: b.clone(),
                    },
                )
            };
            match surface_criterion(&a, &b, q.q, effort) {
                Tri::Yes => return pair(SurfaceRule::NoPpCriterion, Status::NoPp),
                Tri::Unknown => return pair(SurfaceRule::NoPpCriterion, Status::Unknown),
                Tri::No => {}
            }
            if a.is_zero() && b == BigInt::from(1 - 2 * qi) {
                return pair(SurfaceRule::Mn1, Status::Eliminated);
            }
            if q.q % 2 == 1 && a.is_zero() && b == BigInt::from(2 - 2 * qi) {
                return pair(SurfaceRule::Mn2, Status::Eliminated);
            }
            if let Some(o) = hoffmann(2, &[-3, -4, -7]) {
                return o;
            }
            pair(SurfaceRule::NoRule, Status::Inapplicable)
        }
        3 => hoffmann(3, &[-3, -4, -8, -11]).unwrap_or_else(|| {
            TestOutcome::note(TestName::SurfaceRules, Status::Inapplicable, "no genus-3 rule applies")
        }),
        _ => TestOutcome::note(TestName::SurfaceRules, Status::Inapplicable, "genus is not 2 or 3"),
    }
}

/// h = h₀·(x − 2s)^n with s² = q, h₀ ordinary and nonconstant; eliminated
/// when h₀(2s) is squarefree.
pub fn test_supersingular_factor(h: &RealWeilPoly, effort: Effort) -> TestOutcome {
    let q = h.q();
    let Some(root) = q.sqrt() else {
        return TestOutcome::note(
            TestName::SupersingularFactor,
            Status::Inapplicable,
            "q is not a square",
        );
    };
    let mut branches = Vec::new();
    for s in [root as i64, -(root as i64)] {
        let lin = IntPoly::from_i64(&[-2 * s, 1]);
        let n = h.h().multiplicity(&lin);
        if n == 0 {
            continue;
        }
        let h0 = h.h().div_exact(&lin.pow(n)).expect("multiplicity divides");
        if h0.deg() == 0 {
            continue;
        }
        let h0w = RealWeilPoly::new(h0.clone(), q).expect("factor of a real Weil polynomial");
        if !is_ordinary(&h0w) {
            continue;
        }
        let value = h0.eval(&BigInt::from(2 * s));
        let squarefree = is_squarefree(&value, effort).unwrap_or(Tri::Unknown);
        branches.push(SupersingularBranch {
            s,
            n,
            h0: (&h0).into(),
            value,
            squarefree,
        });
    }
    if branches.is_empty() {
        return TestOutcome::note(
            TestName::SupersingularFactor,
            Status::Inapplicable,
            "no factor (x - 2s)^n with ordinary cofactor",
        );
    }
    let status = if branches.iter().any(|b| b.squarefree == Tri::Yes) {
        Status::Eliminated
    } else if branches.iter().any(|b| b.squarefree == Tri::Unknown) {
        Status::Unknown
    } else {
        Status::Inapplicable
    };
    TestOutcome::new(
        TestName::SupersingularFactor,
        status,
        Certificate::Supersingular { branches },
    )
}
