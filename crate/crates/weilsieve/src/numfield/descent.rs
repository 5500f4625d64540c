//! e-th roots of Frobenius: elements π₀ of ℤ[π, π̄] with π₀^e = π and
//! π₀·π̄₀ = q₀, located through their characteristic polynomials over F_q₀.

use num_bigint::BigInt;

use super::ratpoly::{q_int, RatPoly};
use super::unity::short_elements;
use super::{order_lattice, Algebra, AlgebraElement, NumFieldError};
use crate::arith::PrimePower;
use crate::enumerate::{enumerate_with, EnumConstraints};
use crate::intpoly::{radical, IntPoly};
use crate::weil::{
    is_ordinary, power_sums, weil_coeffs_from_prefix, weil_companion, RealWeilPoly,
};

/// A descended Frobenius π₀ with its Weil polynomial over F_q₀.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EthRoot {
    pub pi0: AlgebraElement,
    pub f0: IntPoly,
    pub h0: RealWeilPoly,
}

impl EthRoot {
    /// The quadratic-twist companion f₀(−x), with its real form.
    pub fn twist(&self) -> (IntPoly, RealWeilPoly) {
        let minus_x = IntPoly::from_i64(&[0, -1]);
        let f = self.f0.compose(&minus_x);
        let g = self.h0.g();
        let mut h = self.h0.h().compose(&minus_x);
        if g % 2 == 1 {
            h = h.scale(&BigInt::from(-1));
        }
        let real = RealWeilPoly::new(h, self.h0.q()).expect("twist of a real Weil polynomial");
        (f, real)
    }
}

/// Coefficients c_1..c_d of a monic polynomial of degree d.
fn top_coeffs(f: &IntPoly) -> Vec<BigInt> {
    let d = f.deg();
    (1..=d).map(|k| f.coeff(d - k)).collect()
}

/// Every π₀ in ℤ[π, π̄] with π₀^e = π and π₀·π̄₀ = q₀, for an ordinary class.
pub fn eth_roots_of_frobenius(
    h: &RealWeilPoly,
    e: u32,
    q0: PrimePower,
) -> Result<Vec<EthRoot>, NumFieldError> {
    let q = h.q();
    if q0.big().pow(e) != q.big() {
        return Err(NumFieldError::BadSubfield(q0.q.to_string()));
    }
    if !is_ordinary(h) {
        return Err(NumFieldError::NotOrdinary);
    }
    let g = h.g();
    let e = e as usize;
    let f = weil_companion(h.h(), q.q);
    let target = power_sums(&top_coeffs(&f), 2 * g);

    let keep = |prefix: &[BigInt]| {
        let n = prefix.len();
        if n < e {
            return true;
        }
        let c = weil_coeffs_from_prefix(prefix, g, q0.q);
        let p0 = power_sums(&c, n);
        (1..=n / e).all(|k| p0[e * k - 1] == target[k - 1])
    };
    let candidates = enumerate_with(q0, g, &EnumConstraints::none(), &keep);

    let alg = Algebra::new(h);
    let lat = order_lattice(&alg);
    let q0_elt = alg.from_i64(q0.q as i64);
    let pi = alg.pi();
    let mut out: Vec<EthRoot> = Vec::new();
    for h0 in candidates {
        let f0 = weil_companion(h0.h(), q0.q);
        let p0 = power_sums(&top_coeffs(&f0), 2 * g * e);
        if !(1..=2 * g).all(|k| p0[e * k - 1] == target[k - 1]) {
            continue;
        }
        let rad = radical(&f0).expect("monic");
        let per_component: Vec<Vec<RatPoly>> = (0..alg.components().len())
            .map(|j| component_roots(&alg, j, &rad, e, q0))
            .collect();
        for choice in cartesian(&per_component) {
            let pi0 = alg.crt(&choice);
            if alg.pow(&pi0, e as u64) != pi
                || alg.mul(&pi0, &alg.conj(&pi0)) != q0_elt
                || alg.charpoly_weil(&pi0).to_int().as_ref() != Some(&f0)
                || !lat.contains(&alg, &pi0).unwrap_or(false)
            {
                continue;
            }
            if !out.iter().any(|r| r.pi0 == pi0) {
                out.push(EthRoot {
                    pi0,
                    f0: f0.clone(),
                    h0: h0.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Roots z of rad(f₀) with z^e = π_j in the component field K_j.
fn component_roots(alg: &Algebra, j: usize, rad: &IntPoly, e: usize, q0: PrimePower) -> Vec<RatPoly> {
    let mj = alg.components()[j].poly.clone();
    let k = Algebra::with_components(alg.q(), mj, Vec::new());
    let pi = k.pi();
    let rad_k: Vec<AlgebraElement> = rad.coeffs().iter().map(|c| k.from_int_poly(&IntPoly::constant(c.clone()))).collect();
    let mut binom = vec![k.zero(); e + 1];
    binom[0] = k.sub(&k.zero(), &pi);
    binom[e] = k.one();
    let g = kpoly_gcd(&k, rad_k.clone(), binom);
    let is_root = |z: &AlgebraElement| {
        k.pow(z, e as u64) == pi && kpoly_eval(&k, &rad_k, z).is_zero()
    };
    match g.len() {
        0 | 1 => Vec::new(),
        2 => {
            let z = k.sub(&k.zero(), &g[0]);
            vec![RatPoly::new(z.coords().to_vec())]
        }
        _ => {
            // Several roots may lie in K_j; search the component order for
            // elements of the right absolute value.
            let lat = order_lattice(&k);
            let bound = q_int(k.dim() as i64) * q_int(q0.q as i64);
            short_elements(&k, &lat, &bound)
                .unwrap_or_default()
                .into_iter()
                .filter(is_root)
                .map(|z| RatPoly::new(z.coords().to_vec()))
                .collect()
        }
    }
}

fn trim(mut p: Vec<AlgebraElement>) -> Vec<AlgebraElement> {
    while p.last().is_some_and(AlgebraElement::is_zero) {
        p.pop();
    }
    p
}

fn kpoly_rem(k: &Algebra, a: Vec<AlgebraElement>, b: &[AlgebraElement]) -> Vec<AlgebraElement> {
    let mut r = trim(a);
    let db = b.len() - 1;
    let inv = k.inverse(&b[db]).expect("nonzero element of a field");
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = k.mul(r.last().expect("nonempty"), &inv);
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = k.sub(&r[shift + i], &k.mul(&c, bi));
        }
        r = trim(r);
    }
    r
}

/// Monic gcd over the field K, coefficients ascending.
fn kpoly_gcd(k: &Algebra, a: Vec<AlgebraElement>, b: Vec<AlgebraElement>) -> Vec<AlgebraElement> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = kpoly_rem(k, a, &b);
        a = std::mem::replace(&mut b, r);
    }
    if let Some(lead) = a.last() {
        let inv = k.inverse(lead).expect("nonzero element of a field");
        a = a.iter().map(|c| k.mul(c, &inv)).collect();
    }
    a
}

fn kpoly_eval(k: &Algebra, p: &[AlgebraElement], z: &AlgebraElement) -> AlgebraElement {
    p.iter()
        .rev()
        .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, z), c))
}

fn cartesian(sets: &[Vec<RatPoly>]) -> Vec<Vec<RatPoly>> {
    sets.iter().fold(vec![Vec::new()], |acc, set| {
        acc.iter()
            .flat_map(|prefix| {
                set.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    #[test]
    fn f32_fixture_descends_to_f2() {
        let h = &IntPoly::from_i64(&[11, 1]).pow(3) * &IntPoly::from_i64(&[87, 19, 1]);
        let rw = RealWeilPoly::new(h, pp(32)).unwrap();
        let roots = eth_roots_of_frobenius(&rw, 5, pp(2)).unwrap();
        let alg = Algebra::new(&rw);
        let expected = alg.from_pi_pibar(&[5976, 1046, 99, 4], &[0, 578, 24]);
        let hit = roots.iter().find(|r| r.pi0 == expected).expect("π₀ found");
        let f0 = &IntPoly::from_i64(&[2, 1, 1]).pow(3) * &IntPoly::from_i64(&[4, -2, 1, -1, 1]);
        assert_eq!(hit.f0, f0);
        for r in &roots {
            assert_eq!(alg.pow(&r.pi0, 5), alg.pi());
        }
    }

    #[test]
    fn non_root_subfield_rejected() {
        let rw = RealWeilPoly::new(IntPoly::from_i64(&[1, 3, 1]), pp(2)).unwrap();
        assert!(matches!(
            eth_roots_of_frobenius(&rw, 3, pp(2)),
            Err(NumFieldError::BadSubfield(_))
        ));
    }

    #[test]
    fn supersingular_rejected() {
        let rw = RealWeilPoly::new(IntPoly::from_i64(&[0, 1]), pp(4)).unwrap();
        assert_eq!(eth_roots_of_frobenius(&rw, 2, pp(2)), Err(NumFieldError::NotOrdinary));
    }

    #[test]
    fn square_root_of_frobenius_over_f4() {
        // h0 = x + 1 over F₂ (f0 = x² + x + 2) squares to f = x² + 3x + 4 over F₄.
        let rw = RealWeilPoly::new(IntPoly::from_i64(&[3, 1]), pp(4)).unwrap();
        let roots = eth_roots_of_frobenius(&rw, 2, pp(2)).unwrap();
        let fs: Vec<_> = roots.iter().map(|r| r.f0.clone()).collect();
        assert!(fs.contains(&IntPoly::from_i64(&[2, 1, 1])));
        assert!(fs.contains(&IntPoly::from_i64(&[2, -1, 1])));
        let twist = roots[0].twist();
        assert_eq!(twist.0.compose(&IntPoly::from_i64(&[0, -1])), roots[0].f0);
    }
}
