//! Coprime splittings h = h₁·h₂ and the tests driven by the reduced
//! resultant of their radicals.

use num_bigint::BigInt;
use num_traits::One;

use super::{Certificate, QuotientCheck, QuotientSplit, SplitRecord, Status, TestName, TestOutcome};
use crate::intpoly::{factor_monic_real_weil, radical, reduced_resultant, IntPoly};
use crate::weil::{point_counts, RealWeilPoly};

/// h = h1·h2 with h1, h2 coprime and nonconstant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub h1: IntPoly,
    pub h2: IntPoly,
    pub reduced_resultant: BigInt,
}

impl Split {
    pub fn record(&self) -> SplitRecord {
        SplitRecord {
            h1: (&self.h1).into(),
            h2: (&self.h2).into(),
            reduced_resultant: self.reduced_resultant.clone(),
        }
    }
}

/// Every grouping of the irreducible-power blocks of h into two nonempty
/// parts, 2^(k−1) − 1 of them for k blocks. The last block always goes to h2.
pub fn coprime_splits(h: &RealWeilPoly) -> Vec<Split> {
    let blocks: Vec<IntPoly> = factor_monic_real_weil(h.h(), h.q().q)
        .expect("real Weil polynomial")
        .into_iter()
        .map(|(p, e)| p.pow(e))
        .collect();
    let k = blocks.len();
    if k < 2 {
        return Vec::new();
    }
    (1u64..(1 << (k - 1)))
        .map(|mask| {
            let (mut h1, mut h2) = (IntPoly::one(), IntPoly::one());
            for (i, b) in blocks.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    h1 = &h1 * b;
                } else {
                    h2 = &h2 * b;
                }
            }
            let r1 = radical(&h1).expect("monic");
            let r2 = radical(&h2).expect("monic");
            let rr = reduced_resultant(&r1, &r2).expect("coprime blocks");
            Split {
                h1,
                h2,
                reduced_resultant: rr,
            }
        })
        .collect()
}

/// Eliminated iff some split has reduced resultant 1.
pub fn test_resultant1(h: &RealWeilPoly) -> TestOutcome {
    let splits = coprime_splits(h);
    if splits.is_empty() {
        return TestOutcome::note(TestName::Resultant1, Status::Inapplicable, "no coprime splitting");
    }
    match splits.iter().find(|s| s.reduced_resultant.is_one()) {
        Some(s) => TestOutcome::new(
            TestName::Resultant1,
            Status::Eliminated,
            Certificate::Splits {
                splits: vec![s.record()],
            },
        ),
        None => TestOutcome::new(
            TestName::Resultant1,
            Status::Inapplicable,
            Certificate::Splits {
                splits: splits.iter().map(Split::record).collect(),
            },
        ),
    }
}

fn quotient_check(h: &RealWeilPoly, quotient: &IntPoly, horizon: usize) -> QuotientCheck {
    let g = h.g();
    let genus = quotient.deg();
    let genus_ok = 2 * genus <= g + 1;
    let qh = RealWeilPoly::new(quotient.clone(), h.q()).expect("factor of a real Weil polynomial");
    let qp = point_counts(&qh, horizon);
    let cp = point_counts(h, horizon);
    let negative_place = qp.first_negative_place().map(|(n, _)| n);
    let count_violation = cp
        .point_counts
        .iter()
        .zip(&qp.point_counts)
        .position(|(c, d)| *c > BigInt::from(2) * d)
        .map(|i| i + 1);
    QuotientCheck {
        quotient: quotient.into(),
        genus,
        genus_ok,
        negative_place,
        count_violation,
        feasible: genus_ok && negative_place.is_none() && count_violation.is_none(),
    }
}

/// Splits with reduced resultant 2 force a double cover of a curve with real
/// Weil polynomial h₁ or h₂; eliminated when both quotients are infeasible.
pub fn test_resultant2(h: &RealWeilPoly, horizon: usize) -> TestOutcome {
    let two = BigInt::from(2);
    let splits: Vec<QuotientSplit> = coprime_splits(h)
        .into_iter()
        .filter(|s| s.reduced_resultant == two)
        .map(|s| QuotientSplit {
            options: vec![
                quotient_check(h, &s.h1, horizon),
                quotient_check(h, &s.h2, horizon),
            ],
            split: s.record(),
        })
        .collect();
    if splits.is_empty() {
        return TestOutcome::note(
            TestName::Resultant2,
            Status::Inapplicable,
            "no split with reduced resultant 2",
        );
    }
    let status = if splits.iter().any(QuotientSplit::eliminates) {
        Status::Eliminated
    } else {
        Status::Deduction
    };
    TestOutcome::new(TestName::Resultant2, status, Certificate::Quotients { splits })
}

/// Reports the annihilator r of the kernel for every split; never eliminates.
pub fn test_splitting_annihilator(h: &RealWeilPoly) -> TestOutcome {
    let splits = coprime_splits(h);
    if splits.is_empty() {
        return TestOutcome::note(
            TestName::SplittingAnnihilator,
            Status::Inapplicable,
            "no coprime splitting",
        );
    }
    TestOutcome::new(
        TestName::SplittingAnnihilator,
        Status::Deduction,
        Certificate::Annihilator {
            shape: "0 -> Delta -> A1 x A2 -> A -> 0, Delta killed by r".into(),
            splits: splits.iter().map(Split::record).collect(),
        },
    )
}
