//! Sturm chains over ℤ and exact real-root counting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{sign, IntPoly, PolyError};

/// Endpoint of a real interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn int(n: i64) -> Self {
        Bound::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    fn less_than(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, Bound::PosInf) => false,
            (Bound::NegInf, _) | (_, Bound::PosInf) => true,
            (_, Bound::NegInf) | (Bound::PosInf, _) => false,
            (Bound::Finite(a), Bound::Finite(b)) => a < b,
        }
    }
}

/// Positive rescalings of the standard Sturm sequence f, f′, −rem, …
/// When f has repeated roots every member is divided by gcd(f, f′), so the
/// chain counts distinct roots and stays valid at multiple roots.
#[derive(Debug, Clone)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
    /// Degree of gcd(f, f′).
    gcd_degree: usize,
}

impl SturmChain {
    pub fn new(f: &IntPoly) -> Self {
        let mut polys = vec![positive_scale(f), positive_scale(&f.derivative())];
        if polys[1].is_zero() {
            polys.pop();
            return SturmChain {
                polys,
                gcd_degree: 0,
            };
        }
        loop {
            let n = polys.len();
            let (a, b) = (&polys[n - 2], &polys[n - 1]);
            let (_, r) = a.pseudo_divrem(b);
            if r.is_zero() {
                break;
            }
            // lc(b)^(δ+1)·a = Q·b + r, so −rem(a, b) is a positive multiple
            // of −r·sign(lc(b))^(δ+1).
            let delta = a.deg() - b.deg();
            let flip = b.lead().is_negative() && (delta + 1) % 2 == 1;
            let next = if flip { r } else { -&r };
            polys.push(positive_scale(&next));
        }
        let last = polys.last().expect("chain is nonempty").clone();
        let gcd_degree = last.deg();
        if gcd_degree > 0 {
            for p in polys.iter_mut() {
                let (q, r) = p.pseudo_divrem(&last);
                debug_assert!(r.is_zero());
                let lc = last.lead();
                let k = p.deg() - last.deg() + 1;
                let scaled = if lc.is_negative() && k % 2 == 1 { -&q } else { q };
                *p = positive_scale(&scaled);
            }
        }
        SturmChain { polys, gcd_degree }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    /// Degree of the squarefree part of the chain's polynomial.
    pub fn distinct_root_bound(&self) -> usize {
        self.polys[0].deg()
    }

    pub fn gcd_degree(&self) -> usize {
        self.gcd_degree
    }

    fn signs_at(&self, x: &Bound) -> Vec<i8> {
        self.polys
            .iter()
            .map(|p| match x {
                Bound::PosInf => sign(&p.lead()),
                Bound::NegInf => {
                    let s = sign(&p.lead());
                    if p.deg() % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                }
                Bound::Finite(r) => p.sign_at(r.numer(), r.denom()),
            })
            .collect()
    }

    pub fn variations_at(&self, x: &Bound) -> usize {
        let signs: Vec<i8> = self.signs_at(x).into_iter().filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in the open interval (lo, hi).
    pub fn count_in(&self, lo: &Bound, hi: &Bound) -> usize {
        let v_lo = self.variations_at(lo);
        let v_hi = self.variations_at(hi);
        let mut n = v_lo.saturating_sub(v_hi);
        if let Bound::Finite(r) = hi {
            if self.polys[0].sign_at(r.numer(), r.denom()) == 0 {
                n -= 1;
            }
        }
        n
    }

    pub fn count_real(&self) -> usize {
        self.count_in(&Bound::NegInf, &Bound::PosInf)
    }
}

/// Multiply by a positive rational so the coefficients are coprime integers.
fn positive_scale(p: &IntPoly) -> IntPoly {
    p.primitive_part()
}

/// Number of distinct real roots of `f` strictly inside (lo, hi).
pub fn count_real_roots_in(f: &IntPoly, lo: &Bound, hi: &Bound) -> Result<usize, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Zero);
    }
    if !lo.less_than(hi) {
        return Err(PolyError::DegenerateInterval);
    }
    Ok(SturmChain::new(f).count_in(lo, hi))
}

/// True when every complex root of `f` is real and lies in [−2√q, 2√q].
/// The leading coefficient may be any nonzero integer.
pub fn all_roots_real_in_weil_interval(f: &IntPoly, q: u64) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return true;
    }
    let chain = SturmChain::new(f);
    if chain.count_real() != d - chain.gcd_degree() {
        return false;
    }
    // G(x²) = f(x)·f(−x) has the squared roots of f as its roots.
    let ff = &(f * &f.reflect());
    let g = IntPoly::new(ff.coeffs().iter().step_by(2).cloned().collect());
    let four_q = Bound::Finite(BigRational::from_integer(BigInt::from(4 * q)));
    SturmChain::new(&g).count_in(&four_q, &Bound::PosInf) == 0
}

pub fn is_real_weil_shape(h: &IntPoly, q: u64) -> Result<bool, PolyError> {
    h.require_monic()?;
    Ok(all_roots_real_in_weil_interval(h, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn counting_examples() {
        let zero = Bound::int(0);
        assert_eq!(count_real_roots_in(&p(&[-2, 0, 1]), &zero, &Bound::PosInf).unwrap(), 1);
        assert_eq!(
            count_real_roots_in(&p(&[1, 0, 1]), &Bound::NegInf, &Bound::PosInf).unwrap(),
            0
        );
        assert_eq!(count_real_roots_in(&p(&[1, -3, 1]), &zero, &Bound::PosInf).unwrap(), 2);
        assert_eq!(
            count_real_roots_in(&p(&[1, 1]), &zero, &zero),
            Err(PolyError::DegenerateInterval)
        );
    }

    #[test]
    fn multiple_roots_at_endpoints() {
        // (x−2)³(x+1)²: roots 2 and −1.
        let f = &p(&[-2, 1]).pow(3) * &p(&[1, 1]).pow(2);
        assert_eq!(count_real_roots_in(&f, &Bound::NegInf, &Bound::PosInf).unwrap(), 2);
        assert_eq!(count_real_roots_in(&f, &Bound::int(-1), &Bound::int(2)).unwrap(), 0);
        assert_eq!(count_real_roots_in(&f, &Bound::int(-2), &Bound::int(2)).unwrap(), 1);
        assert_eq!(count_real_roots_in(&f, &Bound::int(-1), &Bound::int(3)).unwrap(), 1);
    }

    #[test]
    fn shape_examples() {
        assert!(is_real_weil_shape(&p(&[2, 1]), 2).unwrap());
        assert!(!is_real_weil_shape(&p(&[-3, 1]), 2).unwrap());
        assert!(is_real_weil_shape(&p(&[57, 102, 58, 13, 1]), 8).unwrap());
        assert!(is_real_weil_shape(&p(&[-4, 1]), 4).unwrap());
        assert!(!is_real_weil_shape(&p(&[-5, 1]), 4).unwrap());
        assert!(!is_real_weil_shape(&p(&[1, 0, 1]), 4).unwrap());
        assert!(is_real_weil_shape(&p(&[4, 4, 1]), 2).unwrap());
        assert!(is_real_weil_shape(&p(&[-8, 0, 1]), 2).unwrap());
        assert!(!is_real_weil_shape(&p(&[-9, 0, 1]), 2).unwrap());
        assert!(is_real_weil_shape(&p(&[2, 1]), 2).is_ok());
        assert!(is_real_weil_shape(&p(&[2, 2]), 2).is_err());
    }
}
