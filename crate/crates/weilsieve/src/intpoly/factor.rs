//! Radicals, squarefree decomposition and factorization of real-rooted
//! integer polynomials.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{all_roots_real_in_weil_interval, IntPoly, PolyError};

/// Monic squarefree polynomial with the same roots as `f`.
pub fn radical(f: &IntPoly) -> Result<IntPoly, PolyError> {
    f.require_monic()?;
    if f.deg() == 0 {
        return Ok(f.clone());
    }
    let g = f.gcd(&f.derivative());
    let r = f.div_exact(&g).expect("gcd divides f");
    Ok(r.normalized())
}

/// Yun's algorithm: `f = ∏ parts[i]^(i+1)` with pairwise coprime squarefree
/// monic parts (some possibly constant).
pub fn squarefree_decomposition(f: &IntPoly) -> Result<Vec<IntPoly>, PolyError> {
    f.require_monic()?;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp).normalized();
    let mut b = f.div_exact(&a0).expect("gcd divides f").normalized();
    let mut c = fp.div_exact(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    while b.deg() > 0 {
        let a = b.gcd(&d).normalized();
        out.push(a.clone());
        b = b.div_exact(&a).expect("gcd divides b").normalized();
        c = d.div_exact(&a).expect("gcd divides d");
        d = &c - &b.derivative();
    }
    Ok(out)
}

/// Real roots of a squarefree polynomial in double precision, ascending.
/// Roots of each derivative bracket the roots of the previous one, so the
/// whole chain is solved by bisection from the bottom up.
pub fn real_roots_f64(f: &IntPoly) -> Vec<f64> {
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    let mut chain = vec![f.clone()];
    for _ in 1..n {
        let d = chain.last().expect("nonempty").derivative();
        chain.push(d);
    }
    let bound = cauchy_bound(f);
    let mut roots: Vec<f64> = Vec::new();
    for p in chain.iter().rev() {
        let coeffs = p.to_f64();
        let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let mut cuts = vec![-bound];
        cuts.extend(roots.iter().copied());
        cuts.push(bound);
        let mut next = Vec::new();
        for w in cuts.windows(2) {
            let (mut lo, mut hi) = (w[0], w[1]);
            let (flo, fhi) = (eval(lo), eval(hi));
            if flo == 0.0 {
                push_distinct(&mut next, lo);
                continue;
            }
            if fhi == 0.0 || flo.signum() == fhi.signum() {
                continue;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = eval(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            push_distinct(&mut next, 0.5 * (lo + hi));
        }
        if eval(bound) == 0.0 {
            push_distinct(&mut next, bound);
        }
        roots = next;
    }
    roots
}

fn push_distinct(v: &mut Vec<f64>, x: f64) {
    if v.last().is_none_or(|&y| y != x) {
        v.push(x);
    }
}

fn cauchy_bound(f: &IntPoly) -> f64 {
    let lead = f.lead().to_f64().unwrap_or(f64::INFINITY).abs();
    let m = f.coeffs()[..f.deg()]
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY).abs())
        .fold(0.0, f64::max);
    1.0 + m / lead + 1.0
}

/// Irreducible factorization of a real Weil polynomial over ℤ, with
/// multiplicities, factors sorted by degree then coefficients.
pub fn factor_monic_real_weil(h: &IntPoly, q: u64) -> Result<Vec<(IntPoly, u32)>, PolyError> {
    h.require_monic()?;
    if !all_roots_real_in_weil_interval(h, q) {
        return Err(PolyError::Shape(h.to_list()));
    }
    let mut out = Vec::new();
    for (i, part) in squarefree_decomposition(h)?.into_iter().enumerate() {
        if part.deg() == 0 {
            continue;
        }
        for factor in split_squarefree(&part) {
            out.push((factor, i as u32 + 1));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Split a monic squarefree totally real polynomial into irreducibles.
/// A monic factor of degree d is the product of d of the real roots, so
/// subsets of the numerical roots propose candidates which exact division
/// confirms. The smallest proper factor found is irreducible.
fn split_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    'outer: while rest.deg() > 1 {
        let roots = real_roots_f64(&rest);
        let n = rest.deg();
        if roots.len() == n {
            for d in 1..=n / 2 {
                if let Some(factor) = find_factor(&rest, &roots, d) {
                    rest = rest.div_exact(&factor).expect("verified divisor");
                    out.push(factor);
                    continue 'outer;
                }
            }
        }
        break;
    }
    if rest.deg() > 0 {
        out.push(rest);
    }
    out
}

fn find_factor(f: &IntPoly, roots: &[f64], d: usize) -> Option<IntPoly> {
    let mut chosen = Vec::with_capacity(d);
    search_subsets(f, roots, d, 0, &mut chosen)
}

fn search_subsets(
    f: &IntPoly,
    roots: &[f64],
    d: usize,
    start: usize,
    chosen: &mut Vec<f64>,
) -> Option<IntPoly> {
    if chosen.len() == d {
        return candidate(f, chosen);
    }
    for i in start..roots.len() {
        if roots.len() - i < d - chosen.len() {
            break;
        }
        chosen.push(roots[i]);
        let found = search_subsets(f, roots, d, i + 1, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn candidate(f: &IntPoly, roots: &[f64]) -> Option<IntPoly> {
    // Expand ∏ (x − r) in floating point.
    let mut c = vec![1.0f64];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= r * a;
        }
        c = next;
    }
    let mut ints = Vec::with_capacity(c.len());
    for &a in &c {
        let rounded = a.round();
        if (a - rounded).abs() > 1e-3 * (1.0 + a.abs()) {
            return None;
        }
        ints.push(BigInt::from(rounded as i64));
    }
    let g = IntPoly::new(ints);
    g.divides(f).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn radical_examples() {
        let f = &p(&[2, 1]).pow(2) * &p(&[-1, 1]);
        assert_eq!(radical(&f).unwrap(), &p(&[2, 1]) * &p(&[-1, 1]));
        let f = &(&p(&[0, 1]) * &p(&[2, 1]).pow(4)) * &p(&[4, 1]).pow(2);
        assert_eq!(
            radical(&f).unwrap(),
            &(&p(&[0, 1]) * &p(&[2, 1])) * &p(&[4, 1])
        );
        assert_eq!(radical(&p(&[-1, 1, 1])).unwrap(), p(&[-1, 1, 1]));
        assert!(radical(&p(&[1, 2])).is_err());
    }

    #[test]
    fn yun() {
        let f = &(&p(&[1, 1]) * &p(&[-2, 1]).pow(2)) * &p(&[3, 1]).pow(4);
        let parts = squarefree_decomposition(&f).unwrap();
        assert_eq!(parts.len(), 4);
        assert_eq!(parts[0], p(&[1, 1]));
        assert_eq!(parts[1], p(&[-2, 1]));
        assert_eq!(parts[2], IntPoly::one());
        assert_eq!(parts[3], p(&[3, 1]));
    }

    #[test]
    fn float_roots() {
        let r = real_roots_f64(&p(&[1, -3, 1]));
        assert_eq!(r.len(), 2);
        assert!((r[0] - 0.381_966_011_250_105).abs() < 1e-12);
        assert!((r[1] - 2.618_033_988_749_895).abs() < 1e-12);
        assert!(real_roots_f64(&p(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn factor_examples() {
        let h = &p(&[2, 1]) * &p(&[5, 1]).pow(3);
        assert_eq!(
            factor_monic_real_weil(&h, 7).unwrap(),
            vec![(p(&[2, 1]), 1), (p(&[5, 1]), 3)]
        );
        assert_eq!(
            factor_monic_real_weil(&p(&[1, 3, 1]), 2).unwrap(),
            vec![(p(&[1, 3, 1]), 1)]
        );
        let h = &p(&[1, 1]).pow(3) * &p(&[-3, -1, 1]);
        assert_eq!(
            factor_monic_real_weil(&h, 2).unwrap(),
            vec![(p(&[1, 1]), 3), (p(&[-3, -1, 1]), 1)]
        );
        assert!(factor_monic_real_weil(&p(&[-3, 1]), 2).is_err());
    }
}
