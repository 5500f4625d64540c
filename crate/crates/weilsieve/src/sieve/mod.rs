//! Tests that eliminate isogeny classes or deduce structure of any curve in
//! them, and the pipeline that runs them in a fixed order.

mod certificate;
mod cover;
mod descent;
mod pp;
mod splits;
mod surface;
mod text;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use certificate::*;
pub use cover::{test_elliptic_cover_bound, test_elliptic_cover_divisor};
pub use descent::{test_cyclotomic_automorphism, test_descent};
pub use pp::test_pp_ordinary_simple;
pub use splits::{
    coprime_splits, test_resultant1, test_resultant2, test_splitting_annihilator, Split,
};
pub use surface::{surface_criterion, test_supersingular_factor, test_surface_rules};

use crate::arith::{Effort, PrimePower};
use crate::intpoly::IntPoly;
use crate::report::bigint;
use crate::weil::{defect, point_counts, RealWeilPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestName {
    NonnegPlaces,
    Resultant1,
    SurfaceRules,
    SupersingularFactor,
    Resultant2,
    EllipticCoverDivisor,
    EllipticCoverBound,
    CyclotomicAutomorphism,
    SplittingAnnihilator,
    Descent,
    PpOrdinarySimple,
}

impl TestName {
    /// Pipeline order: cheap structural tests first, descent and the
    /// polarization test last.
    pub const ALL: [TestName; 11] = [
        TestName::NonnegPlaces,
        TestName::Resultant1,
        TestName::SurfaceRules,
        TestName::SupersingularFactor,
        TestName::Resultant2,
        TestName::EllipticCoverDivisor,
        TestName::EllipticCoverBound,
        TestName::CyclotomicAutomorphism,
        TestName::SplittingAnnihilator,
        TestName::Descent,
        TestName::PpOrdinarySimple,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TestName::NonnegPlaces => "nonneg_places",
            TestName::Resultant1 => "resultant1",
            TestName::SurfaceRules => "surface_rules",
            TestName::SupersingularFactor => "supersingular_factor",
            TestName::Resultant2 => "resultant2",
            TestName::EllipticCoverDivisor => "elliptic_cover_divisor",
            TestName::EllipticCoverBound => "elliptic_cover_bound",
            TestName::CyclotomicAutomorphism => "cyclotomic_automorphism",
            TestName::SplittingAnnihilator => "splitting_annihilator",
            TestName::Descent => "descent",
            TestName::PpOrdinarySimple => "pp_ordinary_simple",
        }
    }
}

impl fmt::Display for TestName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown test `{0}`")]
pub struct UnknownTest(pub String);

impl FromStr for TestName {
    type Err = UnknownTest;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TestName::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| UnknownTest(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Eliminated,
    Deduction,
    PpExists,
    NoPp,
    Inapplicable,
    Unknown,
}

impl Status {
    /// Rules out Jacobians in the whole class.
    pub fn is_elimination(self) -> bool {
        matches!(self, Status::Eliminated | Status::NoPp)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestOutcome {
    pub name: TestName,
    pub status: Status,
    pub certificate: Certificate,
}

impl TestOutcome {
    pub fn new(name: TestName, status: Status, certificate: Certificate) -> Self {
        TestOutcome {
            name,
            status,
            certificate,
        }
    }

    pub fn note(name: TestName, status: Status, note: impl Into<String>) -> Self {
        TestOutcome::new(name, status, Certificate::Note { note: note.into() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Eliminated,
    Constrained,
    Open,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Eliminated => "ELIMINATED",
            Verdict::Constrained => "CONSTRAINED",
            Verdict::Open => "OPEN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveConfig {
    /// Place counts and point-count comparisons are checked for n ≤ horizon.
    pub horizon: usize,
    pub tests: Vec<TestName>,
    /// Keep running after an elimination.
    pub exhaustive: bool,
    pub effort: Effort,
}

impl SieveConfig {
    /// All tests, horizon 2g, stop at the first elimination.
    pub fn for_genus(g: usize) -> Self {
        SieveConfig {
            horizon: 2 * g,
            tests: TestName::ALL.to_vec(),
            exhaustive: false,
            effort: Effort::default(),
        }
    }
}

/// One row of output: the candidate, its counts and every outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveReport {
    pub q: u64,
    pub g: usize,
    #[serde(with = "crate::report::bigint_vec")]
    pub h: Vec<BigInt>,
    #[serde(with = "bigint")]
    pub defect: BigInt,
    #[serde(with = "crate::report::bigint_vec")]
    pub point_counts: Vec<BigInt>,
    pub verdict: Verdict,
    pub tests: Vec<TestOutcome>,
}

impl SieveReport {
    /// The candidate rebuilt from the row, if the row is well formed.
    pub fn candidate(&self) -> Option<RealWeilPoly> {
        let q = PrimePower::new(self.q).ok()?;
        RealWeilPoly::new(IntPoly::new(self.h.clone()), q).ok()
    }

    pub fn outcome(&self, name: TestName) -> Option<&TestOutcome> {
        self.tests.iter().find(|t| t.name == name)
    }

    /// The first eliminating outcome.
    pub fn eliminated_by(&self) -> Option<&TestOutcome> {
        self.tests.iter().find(|t| t.status.is_elimination())
    }

    pub fn text(&self) -> String {
        text::report_paragraph(self)
    }
}

pub fn verdict_of(outcomes: &[TestOutcome]) -> Verdict {
    if outcomes.iter().any(|o| o.status.is_elimination()) {
        Verdict::Eliminated
    } else if outcomes.iter().any(|o| o.status == Status::Deduction) {
        Verdict::Constrained
    } else {
        Verdict::Open
    }
}

/// Eliminated iff some a_n < 0 with n ≤ horizon.
pub fn test_nonneg_places(h: &RealWeilPoly, horizon: usize) -> TestOutcome {
    let profile = point_counts(h, horizon);
    match profile.first_negative_place() {
        Some((n, a)) => TestOutcome::new(
            TestName::NonnegPlaces,
            Status::Eliminated,
            Certificate::NegativePlace(NegativePlace {
                n,
                places: a.clone(),
                points: profile.point_counts[n - 1].clone(),
            }),
        ),
        None => TestOutcome::note(
            TestName::NonnegPlaces,
            Status::Inapplicable,
            format!("a_n >= 0 for n <= {horizon}"),
        ),
    }
}

pub fn run_test(name: TestName, h: &RealWeilPoly, config: &SieveConfig) -> TestOutcome {
    let horizon = config.horizon;
    match name {
        TestName::NonnegPlaces => test_nonneg_places(h, horizon),
        TestName::Resultant1 => test_resultant1(h),
        TestName::SurfaceRules => test_surface_rules(h, config.effort),
        TestName::SupersingularFactor => test_supersingular_factor(h, config.effort),
        TestName::Resultant2 => test_resultant2(h, horizon),
        TestName::EllipticCoverDivisor => test_elliptic_cover_divisor(h, horizon),
        TestName::EllipticCoverBound => test_elliptic_cover_bound(h, horizon),
        TestName::CyclotomicAutomorphism => test_cyclotomic_automorphism(h),
        TestName::SplittingAnnihilator => test_splitting_annihilator(h),
        TestName::Descent => test_descent(h, horizon),
        TestName::PpOrdinarySimple => test_pp_ordinary_simple(h, config.effort),
    }
}

/// Run the selected tests in pipeline order.
pub fn run_pipeline(h: &RealWeilPoly, config: &SieveConfig) -> SieveReport {
    let mut tests = Vec::new();
    for name in TestName::ALL {
        if !config.tests.contains(&name) {
            continue;
        }
        let outcome = run_test(name, h, config);
        let stop = outcome.status.is_elimination() && !config.exhaustive;
        tests.push(outcome);
        if stop {
            break;
        }
    }
    SieveReport {
        q: h.q().q,
        g: h.g(),
        h: h.h().coeffs().to_vec(),
        defect: defect(h),
        point_counts: point_counts(h, config.horizon).point_counts,
        verdict: verdict_of(&tests),
        tests,
    }
}
