//! Polynomials over F_p: factorization (squarefree, distinct-degree,
//! equal-degree) and Hensel lifting of coprime factorizations to ℤ/p^k.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::intpoly::{discriminant, IntPoly};

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Legendre symbol (a/p) for odd prime p, as −1, 0 or 1.
pub fn legendre(a: &BigInt, p: u64) -> i8 {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().expect("reduced");
    match powmod(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Polynomial over F_p, ascending coefficients in [0, p), trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        FpPoly::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
                .collect(),
        )
    }

    /// Lift with coefficients in [0, p).
    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn constant(p: u64, a: u64) -> Self {
        FpPoly::new(p, vec![a])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.lead(), self.p))
    }

    pub fn scale(&self, k: u64) -> Self {
        FpPoly::new(self.p, self.c.iter().map(|&x| mulmod(x, k, self.p)).collect())
    }

    pub fn add(&self, o: &FpPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        FpPoly::new(
            self.p,
            (0..n).map(|i| (get(&self.c, i) + get(&o.c, i)) % self.p).collect(),
        )
    }

    pub fn sub(&self, o: &FpPoly) -> Self {
        self.add(&o.scale(self.p - 1))
    }

    pub fn mul(&self, o: &FpPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(self.p, Vec::new());
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, acc.into_iter().map(|x| x as u64).collect())
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (FpPoly::new(p, Vec::new()), self.clone());
        }
        let inv = invmod(d.lead(), p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulmod(r[k + dd], inv, p);
            if c != 0 {
                for (j, &dj) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulmod(c, dj, p)) % p;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    pub fn div(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).0
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Monic gcd with Bézout cofactors: g = s·a + t·b.
    pub fn ext_gcd(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (FpPoly::constant(p, 1), FpPoly::new(p, Vec::new()));
        let (mut t0, mut t1) = (FpPoly::new(p, Vec::new()), FpPoly::constant(p, 1));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let k = invmod(r0.lead(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulmod(a, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// self^e mod m.
    pub fn powmod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::constant(self.p, 1).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Evaluation at a constant.
    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }
}

/// Squarefree decomposition of a monic polynomial: (factor, multiplicity).
fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div(&w);
        i += 1;
    }
    if !c.is_one() {
        // c is a polynomial in x^p; the p-th root of each coefficient is itself.
        let root = FpPoly::new(p, c.c.iter().step_by(p as usize).copied().collect());
        for (g, m) in squarefree(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let pe = BigUint::from(p);
    let x = FpPoly::x(p);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.powmod(&pe, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div(&g);
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Test polynomial number `n`: the base-p digits of n as coefficients.
fn test_poly(p: u64, mut n: u64) -> FpPoly {
    let mut c = Vec::new();
    while n > 0 {
        c.push(n % p);
        n /= p;
    }
    FpPoly::new(p, c)
}

/// Equal-degree factorization into irreducibles of degree d, with
/// deterministic test polynomials.
fn equal_degree(f: &FpPoly, d: usize, out: &mut Vec<FpPoly>) {
    if f.deg() == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    let one = FpPoly::constant(p, 1);
    let mut n = p;
    loop {
        let a = test_poly(p, n);
        n += 1;
        if a.deg() >= f.deg() {
            // Every test polynomial below deg f has been tried; cannot happen
            // for a genuine product of degree-d irreducibles.
            panic!("equal-degree split failed");
        }
        let b = if p == 2 {
            let mut t = a.rem(f);
            let mut s = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                s = s.add(&t);
            }
            s
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            a.powmod(&e, f).sub(&one)
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < f.deg() {
            equal_degree(&g, d, out);
            equal_degree(&f.div(&g), d, out);
            return;
        }
    }
}

/// Complete factorization of a monic polynomial over F_p into monic
/// irreducibles with multiplicities, sorted.
pub fn factor_mod_p(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    for (sq, m) in squarefree(&f.monic()) {
        for (part, d) in distinct_degree(&sq) {
            let mut irr = Vec::new();
            equal_degree(&part, d, &mut irr);
            out.extend(irr.into_iter().map(|g| (g, m)));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0.c).cmp(&(b.0.deg(), &b.0.c)));
    out
}

fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Lift h ≡ a·b (mod p), a monic and a, b coprime mod p, to mod p^k.
fn lift_pair(h: &IntPoly, a: &FpPoly, b: &FpPoly, k: u32) -> (IntPoly, IntPoly) {
    let p = a.p;
    let pb = BigInt::from(p);
    let (g, s, t) = FpPoly::ext_gcd(a, b);
    debug_assert!(g.is_one(), "blocks must be coprime");
    let mut aa = a.to_int();
    let mut bb = b.to_int();
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let diff = reduce_mod(&(h - &(&aa * &bb)), &next);
        let e = FpPoly::from_int(
            &IntPoly::new(diff.coeffs().iter().map(|c| c / &pj).collect()),
            p,
        );
        let (qq, r) = t.mul(&e).divrem(a);
        let db = s.mul(&e).add(&qq.mul(b));
        aa = reduce_mod(&(&aa + &r.to_int().scale(&pj)), &next);
        bb = reduce_mod(&(&bb + &db.to_int().scale(&pj)), &next);
        pj = next;
    }
    (aa, bb)
}

/// Lift a factorization of monic h into pairwise coprime monic blocks mod p
/// to a factorization mod p^k, by recursive halving.
pub fn hensel_lift(h: &IntPoly, blocks: &[FpPoly], k: u32) -> Vec<IntPoly> {
    let Some(first) = blocks.first() else {
        return Vec::new();
    };
    let p = first.p;
    let modulus = BigInt::from(p).pow(k);
    if blocks.len() == 1 {
        return vec![reduce_mod(h, &modulus)];
    }
    let (left, right) = blocks.split_at(blocks.len() / 2);
    let prod = |bs: &[FpPoly]| bs.iter().fold(FpPoly::constant(p, 1), |acc, b| acc.mul(b));
    let (a, b) = lift_pair(h, &prod(left), &prod(right), k);
    let mut out = hensel_lift(&a, left, k);
    out.extend(hensel_lift(&b, right, k));
    out
}

/// Irreducible factor of h mod p with its residue degree and exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueFactor {
    pub poly: FpPoly,
    pub degree: usize,
    pub exponent: u32,
}

impl ResidueFactor {
    pub fn is_ramified(&self) -> bool {
        self.exponent > 1
    }

    /// poly^exponent, the block lifted by Hensel's lemma.
    pub fn block(&self) -> FpPoly {
        (0..self.exponent).fold(FpPoly::constant(self.poly.p, 1), |acc, _| acc.mul(&self.poly))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingData {
    pub p: u64,
    pub factors: Vec<ResidueFactor>,
    /// p² does not divide disc(h).
    pub usable: bool,
}

impl SplittingData {
    /// The blocks poly^exponent lifted to ℤ/p^k.
    pub fn lifted_blocks(&self, h: &IntPoly, k: u32) -> Vec<IntPoly> {
        let blocks: Vec<FpPoly> = self.factors.iter().map(ResidueFactor::block).collect();
        hensel_lift(h, &blocks, k)
    }
}

/// Factorization of monic h modulo the prime p.
pub fn splitting_data(h: &IntPoly, p: u64) -> SplittingData {
    let factors = factor_mod_p(&FpPoly::from_int(h, p))
        .into_iter()
        .map(|(poly, exponent)| ResidueFactor {
            degree: poly.deg(),
            poly,
            exponent,
        })
        .collect();
    let p2 = BigInt::from(p) * BigInt::from(p);
    let usable = discriminant(h).is_ok_and(|d| !d.is_zero() && !d.is_multiple_of(&p2));
    SplittingData { p, factors, usable }
}

/// (p-adic valuation, unit part) of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    if m.is_zero() {
        return (u32::MAX, m);
    }
    while m.is_multiple_of(&pb) {
        m /= &pb;
        v += 1;
    }
    (v, m)
}
