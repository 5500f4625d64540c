//! Replayable certificates attached to test outcomes.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::Tri;
use crate::numfield::ElementRepr;
use crate::report::{bigint, opt_bigint, PolyRepr};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    None,
    Note { note: String },
    NegativePlace(NegativePlace),
    Splits { splits: Vec<SplitRecord> },
    Quotients { splits: Vec<QuotientSplit> },
    SurfacePair { rule: SurfaceRule, #[serde(with = "bigint")] a: BigInt, #[serde(with = "bigint")] b: BigInt },
    Hoffmann { power: usize, t: i64, disc: i64 },
    Supersingular { branches: Vec<SupersingularBranch> },
    CoverDivisor { options: Vec<CoverDeduction>, notes: Vec<String> },
    CoverBound { options: Vec<CoverBoundDeduction>, notes: Vec<String> },
    Cyclotomic { orders: Vec<u64>, generators: Vec<UnityRecord> },
    Annihilator { shape: String, splits: Vec<SplitRecord> },
    Descent { targets: Vec<DescentTarget>, notes: Vec<String> },
    Polarization(PolarizationCertificate),
}

/// a_n < 0, with the point count N_n behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativePlace {
    pub n: usize,
    #[serde(with = "bigint")]
    pub places: BigInt,
    #[serde(with = "bigint")]
    pub points: BigInt,
}

/// h = h1·h2 with the reduced resultant of their radicals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub h1: PolyRepr,
    pub h2: PolyRepr,
    #[serde(with = "bigint")]
    pub reduced_resultant: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSplit {
    pub split: SplitRecord,
    pub options: Vec<QuotientCheck>,
}

impl QuotientSplit {
    pub fn eliminates(&self) -> bool {
        self.options.iter().all(|o| !o.feasible)
    }
}

/// Feasibility of a double-cover quotient D with real Weil polynomial h_i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientCheck {
    pub quotient: PolyRepr,
    pub genus: usize,
    pub genus_ok: bool,
    pub negative_place: Option<usize>,
    /// First n with #C(F_q^n) > 2·#D(F_q^n).
    pub count_violation: Option<usize>,
    pub feasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceRule {
    /// b < 0, a² − b = q, every prime of b is 1 mod 3.
    NoPpCriterion,
    /// Real form of x⁴ + (1 − 2q)x² + q².
    Mn1,
    /// Real form of x⁴ + (2 − 2q)x² + q², q odd.
    Mn2,
    NoRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupersingularBranch {
    pub s: i64,
    pub n: u32,
    pub h0: PolyRepr,
    #[serde(with = "bigint")]
    pub value: BigInt,
    pub squarefree: Tri,
}

/// A map of degree dividing r to an elliptic curve with trace t.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDeduction {
    pub t: i64,
    pub elliptic_points: i64,
    #[serde(with = "bigint")]
    pub r: BigInt,
    pub feasible_degrees: Vec<u64>,
}

/// A map of degree at most B to an elliptic curve with trace t, where
/// B^(2n) = `bound_pow` and `below` is the least integer exceeding B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverBoundDeduction {
    pub t: i64,
    pub n: u32,
    pub elliptic_points: i64,
    #[serde(with = "bigint")]
    pub r: BigInt,
    #[serde(with = "bigint")]
    pub b: BigInt,
    pub bound_pow: String,
    pub below: u64,
    pub feasible_degrees: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnityRecord {
    pub k: u64,
    pub zeta: ElementRepr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentTarget {
    pub q0: u64,
    pub e: u32,
    pub pi0: ElementRepr,
    pub options: Vec<DescentOption>,
}

impl DescentTarget {
    pub fn all_fail(&self) -> bool {
        self.options.iter().all(|o| o.negative_place.is_some())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentOption {
    pub twist: bool,
    pub h0: PolyRepr,
    pub negative_place: Option<NegativePlace>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalBehaviour {
    Split,
    Inert,
    Ramified,
    Unresolved,
}

/// A prime of K⁺ above p: residue degree, ramification in K⁺/ℚ, v(δ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceRecord {
    pub degree: usize,
    pub exponent: u32,
    pub valuation: Option<u32>,
    pub behaviour: LocalBehaviour,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalRecord {
    pub p: u64,
    pub usable: bool,
    pub places: Vec<PlaceRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationCertificate {
    /// N(π − π̄).
    #[serde(with = "bigint")]
    pub norm: BigInt,
    #[serde(with = "opt_bigint")]
    pub s: Option<BigInt>,
    pub m: u64,
    pub c_g_mod_m: u64,
    pub s_mod_m: Option<u64>,
    pub primes: Vec<LocalRecord>,
    pub witness: Option<String>,
    pub reason: String,
}
