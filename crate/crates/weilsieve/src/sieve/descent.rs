//! Galois descent to a subfield, and roots of unity in ℤ[π, π̄].

use super::{
    Certificate, DescentOption, DescentTarget, NegativePlace, Status, TestName, TestOutcome,
    UnityRecord,
};
use crate::intpoly::{factor_monic_real_weil, radical};
use crate::numfield::{
    eth_roots_of_frobenius, roots_of_unity_in_order, unity_orders, Algebra, ElementRepr,
};
use crate::weil::{is_ordinary, point_counts, weil_companion, RealWeilPoly};

fn descended_option(h0: &RealWeilPoly, twist: bool, horizon: usize) -> DescentOption {
    let profile = point_counts(h0, horizon);
    let negative_place = profile.first_negative_place().map(|(n, a)| NegativePlace {
        n,
        places: a.clone(),
        points: profile.point_counts[n - 1].clone(),
    });
    DescentOption {
        twist,
        h0: h0.h().into(),
        negative_place,
    }
}

/// Every curve in an ordinary class over F_{q₀^e} descends to F_{q₀} with
/// Frobenius some e-th root π₀ of π in ℤ[π, π̄]. The descended polynomial
/// is f₀ itself when e is odd; for even e its quadratic twist f₀(−x) is also
/// possible. Eliminated when, for some e, roots exist and every option
/// predicts a negative place count over F_{q₀} within e·horizon.
pub fn test_descent(h: &RealWeilPoly, horizon: usize) -> TestOutcome {
    let name = TestName::Descent;
    let roots = h.q().roots();
    if roots.is_empty() {
        return TestOutcome::note(name, Status::Inapplicable, "q is prime");
    }
    if !is_ordinary(h) {
        return TestOutcome::note(name, Status::Inapplicable, "class is not ordinary");
    }
    let mut targets = Vec::new();
    let mut notes = Vec::new();
    let mut eliminated = false;
    for (q0, e) in roots {
        let found = match eth_roots_of_frobenius(h, e, q0) {
            Ok(f) => f,
            Err(err) => {
                notes.push(format!("e = {e}: {err}"));
                continue;
            }
        };
        if found.is_empty() {
            notes.push(format!("no root of Frobenius in Z[pi, pibar] over F_{q0} (e = {e})"));
            continue;
        }
        let sub_horizon = e as usize * horizon;
        let block: Vec<DescentTarget> = found
            .iter()
            .map(|root| {
                let mut options = vec![descended_option(&root.h0, false, sub_horizon)];
                if e % 2 == 0 {
                    let (_, twist) = root.twist();
                    options.push(descended_option(&twist, true, sub_horizon));
                }
                DescentTarget {
                    q0: q0.q,
                    e,
                    pi0: ElementRepr::from(&root.pi0),
                    options,
                }
            })
            .collect();
        eliminated |= block.iter().all(DescentTarget::all_fail);
        targets.extend(block);
    }
    if targets.is_empty() {
        return TestOutcome::new(name, Status::Inapplicable, Certificate::Descent { targets, notes });
    }
    let status = if eliminated {
        Status::Eliminated
    } else {
        Status::Deduction
    };
    TestOutcome::new(name, status, Certificate::Descent { targets, notes })
}

/// Roots of unity of order k > 2 in ℤ[π, π̄] force automorphisms; reported
/// when the Weil polynomial is squarefree or a power of one irreducible.
pub fn test_cyclotomic_automorphism(h: &RealWeilPoly) -> TestOutcome {
    let name = TestName::CyclotomicAutomorphism;
    let factors = factor_monic_real_weil(h.h(), h.q().q).expect("real Weil polynomial");
    let f = weil_companion(h.h(), h.q().q);
    let squarefree = radical(&f).expect("monic") == f;
    if !(squarefree || factors.len() == 1) {
        return TestOutcome::note(
            name,
            Status::Inapplicable,
            "Weil polynomial is neither squarefree nor a power of an irreducible",
        );
    }
    let alg = Algebra::new(h);
    let Some(roots) = roots_of_unity_in_order(&alg) else {
        return TestOutcome::note(name, Status::Unknown, "short-vector search exceeded its limit");
    };
    let orders: Vec<u64> = unity_orders(&roots).into_iter().filter(|&k| k > 2).collect();
    if orders.is_empty() {
        return TestOutcome::note(name, Status::Inapplicable, "only +1 and -1 in Z[pi, pibar]");
    }
    let generators = orders
        .iter()
        .filter_map(|&k| {
            roots.iter().find(|r| r.k == k).map(|r| UnityRecord {
                k,
                zeta: ElementRepr::from(&r.zeta),
            })
        })
        .collect();
    TestOutcome::new(name, Status::Deduction, Certificate::Cyclotomic { orders, generators })
}
