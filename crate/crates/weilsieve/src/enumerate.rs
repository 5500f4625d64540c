//! Recursive enumeration of real Weil polynomials, one coefficient at a time.
//!
//! Write h = x^g + b_1 x^(g−1) + … + b_g. The normalized derivative
//! Q_n = h^(g−n)/(g−n)! = Σ_{j≤n} C(g−j, g−n)·b_j·x^(n−j) depends on b_1..b_n
//! only, and has all roots in [−2√q, 2√q] whenever h does. Since
//! Q_n′ = (g−n+1)·Q_(n−1), the admissible b_n for a fixed prefix are cut out
//! by sign conditions at the roots of Q_(n−1) and at ±2√q, each affine in
//! b_n, so they form an integer interval.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::PrimePower;
use crate::intpoly::{all_roots_real_in_weil_interval, IntPoly};
use crate::weil::{
    counts_from_power_sums, places_from_counts, point_counts, power_sums,
    weil_coeffs_from_prefix, RealWeilPoly,
};

/// How far non-negativity of place counts is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlaceHorizon {
    Off,
    /// a_1..a_g, the counts fixed by the coefficients during recursion.
    #[default]
    Genus,
    /// a_1..a_n; the part beyond g is applied to finished candidates.
    To(usize),
}

impl PlaceHorizon {
    pub fn resolve(self, g: usize) -> usize {
        match self {
            PlaceHorizon::Off => 0,
            PlaceHorizon::Genus => g,
            PlaceHorizon::To(n) => n,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumConstraints {
    /// #C(F_q), which fixes b_1 = N − q − 1.
    pub exact_point_count: Option<i64>,
    /// Upper bound on g·⌊2√q⌋ + t, i.e. b_1 ≥ g·m − D.
    pub max_defect: Option<u64>,
    pub nonneg_places: PlaceHorizon,
    /// a_n ≥ extra_lower_bounds[n−1].
    pub extra_lower_bounds: Vec<i64>,
}

impl EnumConstraints {
    /// Shape condition only.
    pub fn none() -> Self {
        EnumConstraints {
            nonneg_places: PlaceHorizon::Off,
            ..Default::default()
        }
    }

    fn place_minimum(&self, n: usize, g: usize) -> Option<BigInt> {
        let nonneg = (n <= self.nonneg_places.resolve(g)).then(BigInt::zero);
        let extra = self.extra_lower_bounds.get(n - 1).map(|&v| BigInt::from(v));
        match (nonneg, extra) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }
}

/// A fixed prefix b_1..b_(n−1) with approximate roots of Q_(n−1).
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFrame {
    pub fixed: Vec<BigInt>,
    /// Roots of Q_(n−1), ascending, in double precision.
    pub critical_points: Vec<f64>,
    prefix_valid: bool,
}

impl CoefficientFrame {
    pub fn root() -> Self {
        CoefficientFrame {
            fixed: Vec::new(),
            critical_points: Vec::new(),
            prefix_valid: true,
        }
    }

    /// Frame for an arbitrary prefix; the critical points are recomputed.
    pub fn from_prefix(prefix: &[i64], q: PrimePower, g: usize) -> Self {
        let mut frame = CoefficientFrame::root();
        let a = weil_bound(q);
        for &b in prefix {
            frame = frame.child(BigInt::from(b), g, a);
            frame.prefix_valid &= frame.depth() <= g + 1
                && all_roots_real_in_weil_interval(&partial_derivative_poly(&frame.fixed, g), q.q);
        }
        frame
    }

    /// n, the index of the coefficient this frame chooses.
    pub fn depth(&self) -> usize {
        self.fixed.len() + 1
    }

    fn child(&self, b: BigInt, g: usize, a: f64) -> Self {
        let mut fixed = self.fixed.clone();
        fixed.push(b);
        let q_n = partial_derivative_poly(&fixed, g);
        let critical_points = interlaced_roots(&q_n, &self.critical_points, a);
        CoefficientFrame {
            fixed,
            critical_points,
            prefix_valid: self.prefix_valid,
        }
    }
}

fn weil_bound(q: PrimePower) -> f64 {
    2.0 * (q.q as f64).sqrt()
}

/// Q_n for the prefix b_1..b_n.
fn partial_derivative_poly(prefix: &[BigInt], g: usize) -> IntPoly {
    let n = prefix.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for j in 0..=n {
        let bj = if j == 0 { BigInt::one() } else { prefix[j - 1].clone() };
        coeffs[n - j] = binomial(BigInt::from(g - j), BigInt::from(g - n)) * bj;
    }
    IntPoly::new(coeffs)
}

/// Roots of p, bracketed by the roots of its derivative and ±a.
fn interlaced_roots(p: &IntPoly, cuts: &[f64], a: f64) -> Vec<f64> {
    let coeffs = p.to_f64();
    let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let mut ends = Vec::with_capacity(cuts.len() + 2);
    ends.push(-a);
    ends.extend_from_slice(cuts);
    ends.push(a);
    ends.windows(2)
        .map(|w| {
            let (mut lo, mut hi) = (w[0], w[1]);
            let (flo, fhi) = (eval(lo), eval(hi));
            if flo == 0.0 || (fhi != 0.0 && flo.signum() == fhi.signum()) {
                // No sign change: a multiple root at an end, or rounding.
                return if flo.abs() <= fhi.abs() { lo } else { hi };
            }
            if fhi == 0.0 {
                return hi;
            }
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if eval(mid).signum() == flo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Integer interval of b_n keeping Q_n real-rooted in [−2√q, 2√q].
/// The floating-point estimate from the sign conditions is widened by one
/// and its ends are then located exactly, using that the valid set is an
/// interval.
pub fn coefficient_interval(
    frame: &CoefficientFrame,
    q: PrimePower,
    g: usize,
) -> Option<(BigInt, BigInt)> {
    let n = frame.depth();
    if n > g {
        return None;
    }
    if !frame.prefix_valid {
        return None;
    }
    let a = weil_bound(q);
    let base = {
        let mut prefix = frame.fixed.clone();
        prefix.push(BigInt::zero());
        partial_derivative_poly(&prefix, g)
    };
    let coeffs = base.to_f64();
    let r = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    let mut bound = |x: f64, sign_even: bool| {
        if sign_even {
            lo = lo.max(-r(x));
        } else {
            hi = hi.min(-r(x));
        }
    };
    for (i, &xi) in frame.critical_points.iter().enumerate() {
        bound(xi, (n - (i + 1)).is_multiple_of(2));
    }
    bound(a, true);
    bound(-a, n.is_multiple_of(2));
    if !(lo.is_finite() && hi.is_finite()) || lo > hi + 2.0 {
        return None;
    }
    let valid = |b: &BigInt| {
        let mut prefix = frame.fixed.clone();
        prefix.push(b.clone());
        all_roots_real_in_weil_interval(&partial_derivative_poly(&prefix, g), q.q)
    };
    let lo_guess = BigInt::from(lo.ceil() as i64 - 1);
    let hi_guess = BigInt::from(hi.floor() as i64 + 1);
    let inside = find_valid(&lo_guess, &hi_guess, &valid)?;
    let lo = boundary(&inside, &lo_guess, -1, &valid);
    let hi = boundary(&inside, &hi_guess, 1, &valid);
    Some((lo, hi))
}

/// Some valid point of [lo, hi], probing the middle and the ends first.
fn find_valid(lo: &BigInt, hi: &BigInt, valid: &impl Fn(&BigInt) -> bool) -> Option<BigInt> {
    if lo > hi {
        return None;
    }
    let mid: BigInt = (lo + hi).div_floor(&BigInt::from(2));
    for c in [&mid, lo, hi] {
        if valid(c) {
            return Some(c.clone());
        }
    }
    let mut b = lo + 1;
    while &b < hi {
        if b != mid && valid(&b) {
            return Some(b);
        }
        b += 1;
    }
    None
}

/// Farthest valid point from `inside` in direction `dir`, starting the
/// search at `guess`.
fn boundary(
    inside: &BigInt,
    guess: &BigInt,
    dir: i32,
    valid: &impl Fn(&BigInt) -> bool,
) -> BigInt {
    let step = BigInt::from(dir);
    // Ensure an invalid anchor beyond the boundary.
    let mut out = guess.clone();
    let past = |x: &BigInt| if dir < 0 { x < inside } else { x > inside };
    if !past(&out) {
        out = inside + &step;
    }
    let mut gap = BigInt::one();
    let mut good = inside.clone();
    while valid(&out) {
        good = out.clone();
        gap *= 2;
        out = &good + &step * &gap;
    }
    // Binary search between good (valid) and out (invalid).
    while (&out - &good).abs() > BigInt::one() {
        let mid: BigInt = (&good + &out).div_floor(&BigInt::from(2));
        if valid(&mid) {
            good = mid;
        } else {
            out = mid;
        }
    }
    good
}

/// b_n ≥ min − a_n(b_n = 0), from n·a_n = n·c_n + (terms in b_1..b_(n−1)).
pub fn place_count_lower_bound(
    frame: &CoefficientFrame,
    constraints: &EnumConstraints,
    q: PrimePower,
    g: usize,
) -> Option<BigInt> {
    let n = frame.depth();
    let min = constraints.place_minimum(n, g)?;
    let mut prefix = frame.fixed.clone();
    prefix.push(BigInt::zero());
    let a0 = places_of_prefix(&prefix, g, q)[n - 1].clone();
    Some(min - a0)
}

fn places_of_prefix(prefix: &[BigInt], g: usize, q: PrimePower) -> Vec<BigInt> {
    let c = weil_coeffs_from_prefix(prefix, g, q.q);
    let p = power_sums(&c, prefix.len());
    places_from_counts(&counts_from_power_sums(&p, q.q))
}

/// The coefficient interval intersected with the place-count and point-count
/// constraints.
pub fn place_count_interval(
    frame: &CoefficientFrame,
    constraints: &EnumConstraints,
    q: PrimePower,
    g: usize,
) -> Option<(BigInt, BigInt)> {
    let (mut lo, mut hi) = coefficient_interval(frame, q, g)?;
    if let Some(b) = place_count_lower_bound(frame, constraints, q, g) {
        lo = lo.max(b);
    }
    if frame.depth() == 1 {
        if let Some(n) = constraints.exact_point_count {
            let b1 = BigInt::from(n) - BigInt::from(q.q + 1);
            lo = lo.max(b1.clone());
            hi = hi.min(b1);
        }
        if let Some(d) = constraints.max_defect {
            lo = lo.max(BigInt::from(g as u64 * q.m()) - d);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// All real Weil polynomials of degree g over F_q meeting the constraints,
/// in lexicographic order of (b_1, b_2, …).
pub fn enumerate_real_weil(
    q: PrimePower,
    g: usize,
    constraints: &EnumConstraints,
) -> Vec<RealWeilPoly> {
    enumerate_with(q, g, constraints, &|_| true)
}

/// Prefix filter: called with (b_1, …, b_n); subtrees whose prefix is
/// rejected are skipped.
pub type PrefixFilter<'a> = dyn Fn(&[BigInt]) -> bool + Sync + 'a;

/// Enumeration with an extra caller-supplied prefix filter, applied at every
/// depth including the leaves.
pub fn enumerate_with(
    q: PrimePower,
    g: usize,
    constraints: &EnumConstraints,
    keep: &PrefixFilter<'_>,
) -> Vec<RealWeilPoly> {
    if g == 0 {
        return Vec::new();
    }
    let a = weil_bound(q);
    // Split the tree at depth ≤ 2 for parallel exploration.
    let mut frames = vec![CoefficientFrame::root()];
    for _ in 0..2.min(g - 1) {
        frames = frames
            .iter()
            .flat_map(|f| children(f, constraints, q, g, a))
            .filter(|f| keep(&f.fixed))
            .collect();
    }
    let horizon = constraints.nonneg_places.resolve(g).max(constraints.extra_lower_bounds.len());
    frames
        .par_iter()
        .map(|f| {
            let mut out = Vec::new();
            descend(f, constraints, q, g, a, keep, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .filter(|h| horizon <= g || passes_post_filter(h, constraints, horizon))
        .collect()
}

fn children(
    frame: &CoefficientFrame,
    constraints: &EnumConstraints,
    q: PrimePower,
    g: usize,
    a: f64,
) -> Vec<CoefficientFrame> {
    let Some((lo, hi)) = place_count_interval(frame, constraints, q, g) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut b = lo;
    while b <= hi {
        out.push(frame.child(b.clone(), g, a));
        b += 1;
    }
    out
}

fn descend(
    frame: &CoefficientFrame,
    constraints: &EnumConstraints,
    q: PrimePower,
    g: usize,
    a: f64,
    keep: &PrefixFilter<'_>,
    out: &mut Vec<RealWeilPoly>,
) {
    let n = frame.depth();
    let Some((lo, hi)) = place_count_interval(frame, constraints, q, g) else {
        return;
    };
    let mut b = lo;
    while b <= hi {
        if n == g {
            let mut fixed = frame.fixed.clone();
            fixed.push(b.clone());
            if !keep(&fixed) {
                b += 1;
                continue;
            }
            let h = partial_derivative_poly(&fixed, g);
            if all_roots_real_in_weil_interval(&h, q.q) {
                out.push(RealWeilPoly::new_unchecked(h, q));
            }
        } else {
            let child = frame.child(b.clone(), g, a);
            if keep(&child.fixed) {
                descend(&child, constraints, q, g, a, keep, out);
            }
        }
        b += 1;
    }
}

fn passes_post_filter(h: &RealWeilPoly, constraints: &EnumConstraints, horizon: usize) -> bool {
    let profile = point_counts(h, horizon);
    profile.place_counts.iter().enumerate().all(|(i, a)| {
        constraints
            .place_minimum(i + 1, h.g())
            .is_none_or(|min| *a >= min)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    fn lists(v: &[RealWeilPoly]) -> Vec<String> {
        v.iter().map(|h| h.h().to_list()).collect()
    }

    #[test]
    fn first_coefficient_range() {
        let frame = CoefficientFrame::root();
        assert_eq!(
            coefficient_interval(&frame, pp(2), 1),
            Some((BigInt::from(-2), BigInt::from(2)))
        );
    }

    #[test]
    fn second_coefficient_of_f8_quartic() {
        let frame = CoefficientFrame::from_prefix(&[13], pp(8), 4);
        let (lo, hi) = coefficient_interval(&frame, pp(8), 4).unwrap();
        assert!(lo <= BigInt::from(58) && BigInt::from(58) <= hi);
    }

    #[test]
    fn invalid_prefix_gives_empty_interval() {
        let frame = CoefficientFrame::from_prefix(&[10], pp(2), 2);
        assert_eq!(coefficient_interval(&frame, pp(2), 2), None);
    }

    #[test]
    fn place_count_cut() {
        let frame = CoefficientFrame::from_prefix(&[4], pp(2), 2);
        let c = EnumConstraints::default();
        assert_eq!(place_count_lower_bound(&frame, &c, pp(2), 2), Some(BigInt::from(5)));
        assert_eq!(place_count_interval(&frame, &c, pp(2), 2), None);
        let none = EnumConstraints::none();
        assert_eq!(
            place_count_interval(&frame, &none, pp(2), 2),
            coefficient_interval(&frame, pp(2), 2)
        );
    }

    #[test]
    fn point_count_fixes_trace() {
        let c = EnumConstraints {
            exact_point_count: Some(25),
            ..Default::default()
        };
        let frame = CoefficientFrame::root();
        assert_eq!(
            place_count_interval(&frame, &c, pp(7), 4),
            Some((BigInt::from(17), BigInt::from(17)))
        );
    }

    #[test]
    fn genus_one_over_f2() {
        let all = enumerate_real_weil(pp(2), 1, &EnumConstraints::none());
        assert_eq!(lists(&all), ["[-2,1]", "[-1,1]", "[0,1]", "[1,1]", "[2,1]"]);
    }

    #[test]
    fn defect_zero_genus_two_over_f2_is_empty() {
        let c = EnumConstraints {
            max_defect: Some(0),
            ..Default::default()
        };
        assert!(enumerate_real_weil(pp(2), 2, &c).is_empty());
    }

    #[test]
    fn rigato_candidate_is_found() {
        let c = EnumConstraints {
            exact_point_count: Some(25),
            ..Default::default()
        };
        let target = &IntPoly::from_i64(&[2, 1]) * &IntPoly::from_i64(&[5, 1]).pow(3);
        let all = enumerate_real_weil(pp(7), 4, &c);
        assert!(all.iter().any(|h| *h.h() == target));
        assert!(all.iter().all(|h| h.h().coeff(3) == BigInt::from(17)));
    }
}
