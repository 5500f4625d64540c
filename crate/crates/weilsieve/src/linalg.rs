//! Exact integer linear algebra: Bareiss determinants, Hermite normal form,
//! integral LLL reduction and short-vector enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// Determinant by fraction-free Gaussian elimination.
pub fn bareiss_det(mut m: Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
/// The result is upper triangular in echelon form with positive pivots and
/// entries above each pivot reduced into [0, pivot). Zero rows are dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> Matrix {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut basis: Matrix = Vec::new();
    for r in rows {
        insert_row(&mut basis, r.clone(), ncols);
    }
    for i in 0..basis.len() {
        if let Some(col) = pivot_col(&basis[i]) {
            reduce_above(&mut basis, i, col);
        }
    }
    basis
}

/// Add one generator to an HNF basis in place.
pub fn insert_row(basis: &mut Matrix, mut v: Vec<BigInt>, ncols: usize) {
    let mut i = 0;
    for col in 0..ncols {
        if v[col].is_zero() {
            if i < basis.len() && pivot_col(&basis[i]) == Some(col) {
                i += 1;
            }
            continue;
        }
        if i < basis.len() && pivot_col(&basis[i]) == Some(col) {
            // Combine v with the basis row at this pivot via extended gcd.
            let b = basis[i].clone();
            let (g, x, y) = ext_gcd(&b[col], &v[col]);
            let bp = &b[col] / &g;
            let vp = &v[col] / &g;
            let new_b: Vec<BigInt> = (0..ncols).map(|j| &x * &b[j] + &y * &v[j]).collect();
            let new_v: Vec<BigInt> = (0..ncols).map(|j| &bp * &v[j] - &vp * &b[j]).collect();
            basis[i] = new_b;
            v = new_v;
            reduce_above(basis, i, col);
            i += 1;
        } else {
            // New pivot column.
            if v[col].is_negative() {
                for x in v.iter_mut() {
                    *x = -&*x;
                }
            }
            basis.insert(i, v);
            reduce_above(basis, i, col);
            return;
        }
    }
}

fn pivot_col(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

fn reduce_above(basis: &mut Matrix, i: usize, col: usize) {
    let p = basis[i][col].clone();
    debug_assert!(p.is_positive());
    for k in 0..i {
        let q = basis[k][col].div_floor(&p);
        if !q.is_zero() {
            let pivot_row = basis[i].clone();
            for (x, y) in basis[k].iter_mut().zip(pivot_row.iter()) {
                *x -= &q * y;
            }
        }
    }
}

/// (g, x, y) with g = gcd(a, b) > 0 and g = a·x + b·y.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Solve x·H = v for integer x with H in HNF; `None` if v is not in the
/// lattice.
pub fn hnf_solve(h: &Matrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(h.len());
    for row in h {
        let col = pivot_col(row)?;
        if rest[..col].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = rest[col].div_rem(&row[col]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in rest.iter_mut().zip(row.iter()) {
            *x -= &q * y;
        }
        coords.push(q);
    }
    if rest.iter().all(Zero::is_zero) {
        Some(coords)
    } else {
        None
    }
}

/// Integral LLL (δ = 3/4) on a basis with an integer Gram matrix.
/// Returns the reduced basis as integer combinations of the input rows.
pub fn lll_gram(gram: &Matrix) -> Matrix {
    let n = gram.len();
    let mut g = gram.clone();
    let mut trans: Matrix = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    // d[0] = 1, d[i+1] = det of leading (i+1)-minor; lam[i][j] for j < i.
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam: Matrix = vec![vec![BigInt::zero(); n]; n];
    let recompute = |g: &Matrix, d: &mut Vec<BigInt>, lam: &mut Matrix| {
        d[0] = BigInt::one();
        for i in 0..n {
            for j in 0..=i {
                let mut u = g[i][j].clone();
                for k in 0..j {
                    u = (&d[k + 1] * &u - &lam[i][k] * &lam[j][k]) / &d[k];
                }
                if j < i {
                    lam[i][j] = u;
                } else {
                    d[i + 1] = u;
                }
            }
        }
    };
    recompute(&g, &mut d, &mut lam);
    let mut k = 1;
    while k < n {
        size_reduce(k, k - 1, &mut g, &mut trans, &d, &mut lam);
        // Lovász: 4·d[k+1]·d[k-1] < 3·d[k]² − 4·lam²  ⇒ swap.
        let lhs = BigInt::from(4) * &d[k + 1] * &d[k - 1];
        let rhs = BigInt::from(3) * &d[k] * &d[k] - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            trans.swap(k, k - 1);
            recompute(&g, &mut d, &mut lam);
            if k > 1 {
                k -= 1;
            }
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                size_reduce(k, l, &mut g, &mut trans, &d, &mut lam);
            }
            k += 1;
        }
    }
    trans
}

fn size_reduce(k: usize, l: usize, g: &mut Matrix, trans: &mut Matrix, d: &[BigInt], lam: &mut Matrix) {
    let two_lam = BigInt::from(2) * &lam[k][l];
    if two_lam.abs() <= d[l + 1] {
        return;
    }
    // q = round(lam / d[l+1])
    let num = BigInt::from(2) * &lam[k][l] + &d[l + 1];
    let q = num.div_floor(&(BigInt::from(2) * &d[l + 1]));
    let n = g.len();
    // b_k ← b_k − q b_l
    let row_l = trans[l].clone();
    for (x, y) in trans[k].iter_mut().zip(row_l.iter()) {
        *x -= &q * y;
    }
    let gkl = g[k][l].clone();
    let gll = g[l][l].clone();
    let gkk = &g[k][k] - BigInt::from(2) * &q * &gkl + &q * &q * &gll;
    for j in 0..n {
        if j != k {
            let v = &g[k][j] - &q * &g[l][j];
            g[k][j] = v.clone();
            g[j][k] = v;
        }
    }
    g[k][k] = gkk;
    lam[k][l] -= &q * &d[l + 1];
    let (lo, hi) = lam.split_at_mut(k);
    for (x, y) in hi[0][..l].iter_mut().zip(&lo[l][..l]) {
        *x -= &q * y;
    }
}

/// All integer vectors x ≠ 0 with xᵀ·G·x ≤ bound (Fincke–Pohst). G must be
/// positive definite and is best LLL-reduced first; floating-point slack is
/// absorbed by `bound` being a little generous, callers verify exactly.
pub fn short_vectors(gram: &Matrix, bound: f64, limit: usize) -> Option<Vec<Vec<i64>>> {
    let n = gram.len();
    let gf: Vec<Vec<f64>> = gram
        .iter()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY)).collect())
        .collect();
    // Cholesky-style decomposition q[i][i] > 0, q[i][j] for j > i.
    let mut q = gf.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
        if q[i][i] <= 0.0 {
            return None;
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let mut t = vec![0.0f64; n + 1];
    let mut center = vec![0.0f64; n];
    t[n] = bound;
    enumerate_level(n, n - 1, &q, &mut x, &mut t, &mut center, &mut out, limit)?;
    Some(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_level(
    n: usize,
    i: usize,
    q: &[Vec<f64>],
    x: &mut Vec<i64>,
    t: &mut Vec<f64>,
    center: &mut Vec<f64>,
    out: &mut Vec<Vec<i64>>,
    limit: usize,
) -> Option<()> {
    let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    center[i] = c;
    let r = (t[i + 1] / q[i][i]).max(0.0).sqrt();
    let lo = (c - r).ceil() as i64;
    let hi = (c + r).floor() as i64;
    for xi in lo..=hi {
        x[i] = xi;
        let diff = xi as f64 - c;
        t[i] = t[i + 1] - q[i][i] * diff * diff;
        if t[i] < -1e-9 {
            continue;
        }
        if i == 0 {
            if x.iter().any(|&v| v != 0) {
                out.push(x.clone());
                if out.len() > limit {
                    return None;
                }
            }
        } else {
            enumerate_level(n, i - 1, q, x, t, center, out, limit)?;
        }
    }
    x[i] = 0;
    Some(())
}

/// Exact rational inverse-free solve helper: the matrix of rationals as
/// integer rows over a common denominator.
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
