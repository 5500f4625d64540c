//! Existence of principal polarizations in a simple ordinary class.
//!
//! With K = ℚ(π), K⁺ = ℚ(π + π̄) and δ = (π + π̄)² − 4q = (π − π̄)², the class
//! contains a principally polarized variety whenever K/K⁺ ramifies at a
//! finite prime or some prime of K⁺ dividing π − π̄ is inert. Otherwise
//! N = N(π − π̄) is a square s² and existence is decided by c_g ≡ s mod m.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{
    Certificate, LocalBehaviour, LocalRecord, PlaceRecord, PolarizationCertificate, Status,
    TestName, TestOutcome,
};
use crate::arith::{factor_integer, Effort};
use crate::intpoly::{factor_monic_real_weil, resultant, IntPoly};
use crate::numfield::modp::{splitting_data, valuation, FpPoly, ResidueFactor};
use crate::weil::{is_ordinary, weil_companion, RealWeilPoly};

/// ℤ/p^k[y]/(H) for a monic lift H of a residue block.
struct LocalRing<'a> {
    modulus: BigInt,
    h: &'a IntPoly,
}

impl LocalRing<'_> {
    fn reduce(&self, a: &IntPoly) -> IntPoly {
        let (_, r) = a.divrem_monic(self.h);
        IntPoly::new(r.coeffs().iter().map(|c| c.mod_floor(&self.modulus)).collect())
    }

    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        self.reduce(&(a * b))
    }

    /// Inverse of a unit by Newton iteration from an inverse mod p.
    fn inverse(&self, a: &IntPoly, p: u64) -> IntPoly {
        let phi = FpPoly::from_int(self.h, p);
        let (_, s, _) = FpPoly::ext_gcd(&FpPoly::from_int(a, p), &phi);
        let mut x = s.to_int();
        let two = IntPoly::constant(BigInt::from(2));
        let mut prec = BigInt::from(p);
        while prec < self.modulus {
            x = self.mul(&x, &(&two - &self.mul(a, &x)));
            prec = &prec * &prec;
        }
        x
    }
}

/// δ = p^v·u at the place, u known at least mod p^(k − v). `None` when δ
/// vanishes to the working precision.
fn split_valuation(delta: &IntPoly, p: u64) -> Option<(u32, IntPoly)> {
    let v = delta
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| valuation(c, p).0)
        .min()?;
    let pv = BigInt::from(p).pow(v);
    Some((v, IntPoly::new(delta.coeffs().iter().map(|c| c / &pv).collect())))
}

fn residue_is_square(u: &FpPoly, phi: &FpPoly) -> bool {
    let p = phi.p();
    let order = BigUint::from(p).pow(phi.deg() as u32) - 1u32;
    u.powmod(&(order >> 1), phi).is_one()
}

/// Absolute trace F_{2^f} → F₂ of c mod φ.
fn trace_f2(c: &FpPoly, phi: &FpPoly) -> u64 {
    let mut acc = FpPoly::constant(2, 0);
    let mut power = c.rem(phi);
    for _ in 0..phi.deg() {
        acc = acc.add(&power);
        power = power.mul(&power).rem(phi);
    }
    acc.coeffs().first().copied().unwrap_or(0)
}

fn place(rf: &ResidueFactor, valuation: Option<u32>, behaviour: LocalBehaviour) -> PlaceRecord {
    PlaceRecord {
        degree: rf.degree,
        exponent: rf.exponent,
        valuation,
        behaviour,
    }
}

/// Behaviour of K/K⁺ at an odd prime p | N, with a witness description.
fn analyze_odd(h: &IntPoly, delta: &IntPoly, p: u64, vn: u32) -> (LocalRecord, Option<String>) {
    let data = splitting_data(h, p);
    let mut record = LocalRecord {
        p,
        usable: data.usable,
        places: Vec::new(),
    };
    if !data.usable {
        record.places = data
            .factors
            .iter()
            .map(|rf| place(rf, None, LocalBehaviour::Unresolved))
            .collect();
        return (record, None);
    }
    let k = vn + 2;
    let ring_mod = BigInt::from(p).pow(k);
    let mut witness = None;
    for (rf, big_h) in data.factors.iter().zip(data.lifted_blocks(h, k)) {
        let ring = LocalRing {
            modulus: ring_mod.clone(),
            h: &big_h,
        };
        let rec = if rf.is_ramified() {
            let res = resultant(&big_h, delta).expect("nonzero").mod_floor(&ring_mod);
            if res.is_zero() {
                place(rf, None, LocalBehaviour::Unresolved)
            } else {
                let v = valuation(&res, p).0 / rf.degree as u32;
                let b = match v {
                    0 => LocalBehaviour::Split,
                    v if v % 2 == 1 => LocalBehaviour::Ramified,
                    _ => LocalBehaviour::Unresolved,
                };
                place(rf, Some(v), b)
            }
        } else {
            match split_valuation(&ring.reduce(delta), p) {
                None => place(rf, None, LocalBehaviour::Unresolved),
                Some((v, _)) if v % 2 == 1 => place(rf, Some(v), LocalBehaviour::Ramified),
                Some((0, _)) => place(rf, Some(0), LocalBehaviour::Split),
                Some((v, u)) => {
                    let ubar = FpPoly::from_int(&u, p).rem(&rf.poly);
                    let b = if residue_is_square(&ubar, &rf.poly) {
                        LocalBehaviour::Split
                    } else {
                        LocalBehaviour::Inert
                    };
                    place(rf, Some(v), b)
                }
            }
        };
        if witness.is_none() {
            witness = match (rec.behaviour, rec.valuation) {
                (LocalBehaviour::Ramified, _) => Some(format!(
                    "K/K+ ramified above {p} (place of degree {}, v(delta) = {})",
                    rf.degree,
                    rec.valuation.unwrap_or_default()
                )),
                (LocalBehaviour::Inert, Some(v)) if v >= 2 => Some(format!(
                    "inert prime of degree {} above {p} divides pi - pibar",
                    rf.degree
                )),
                _ => None,
            };
        }
        record.places.push(rec);
    }
    (record, witness)
}

/// Behaviour of K/K⁺ above 2 for odd q, using square roots in the residue
/// fields and the Artin–Schreier trace.
fn analyze_two(h: &IntPoly, delta: &IntPoly, vn: u32) -> (LocalRecord, Option<String>) {
    let data = splitting_data(h, 2);
    let unramified = data.factors.iter().all(|rf| !rf.is_ramified());
    let mut record = LocalRecord {
        p: 2,
        usable: unramified,
        places: Vec::new(),
    };
    if !unramified {
        record.places = data
            .factors
            .iter()
            .map(|rf| place(rf, None, LocalBehaviour::Unresolved))
            .collect();
        return (record, None);
    }
    let k = vn + 3;
    let ring_mod = BigInt::from(2).pow(k);
    let four = BigInt::from(4);
    let mut witness = None;
    for (rf, big_h) in data.factors.iter().zip(data.lifted_blocks(h, k)) {
        let ring = LocalRing {
            modulus: ring_mod.clone(),
            h: &big_h,
        };
        let rec = match split_valuation(&ring.reduce(delta), 2) {
            None => place(rf, None, LocalBehaviour::Unresolved),
            Some((v, _)) if v % 2 == 1 => place(rf, Some(v), LocalBehaviour::Ramified),
            Some((v, u)) => {
                let phi = &rf.poly;
                let ubar = FpPoly::from_int(&u, 2).rem(phi);
                let half = BigUint::from(2u32).pow(rf.degree as u32 - 1);
                let w0 = ubar.powmod(&half, phi).to_int();
                let w0sq = ring.mul(&w0, &w0);
                if !(&u - &w0sq).coeffs().iter().all(|c| c.is_multiple_of(&four)) {
                    place(rf, Some(v), LocalBehaviour::Ramified)
                } else {
                    let ratio = ring.mul(&u, &ring.inverse(&w0sq, 2));
                    let c = IntPoly::new(
                        (&ratio - &IntPoly::one())
                            .coeffs()
                            .iter()
                            .map(|a| a.mod_floor(&ring_mod) / &four)
                            .collect(),
                    );
                    let b = if trace_f2(&FpPoly::from_int(&c, 2), phi) == 1 {
                        LocalBehaviour::Inert
                    } else {
                        LocalBehaviour::Split
                    };
                    place(rf, Some(v), b)
                }
            }
        };
        if witness.is_none() {
            witness = match (rec.behaviour, rec.valuation) {
                (LocalBehaviour::Ramified, _) => Some(format!(
                    "K/K+ ramified above 2 (place of degree {})",
                    rf.degree
                )),
                (LocalBehaviour::Inert, Some(v)) if v >= 2 => Some(format!(
                    "inert prime of degree {} above 2 divides pi - pibar",
                    rf.degree
                )),
                _ => None,
            };
        }
        record.places.push(rec);
    }
    (record, witness)
}

pub fn test_pp_ordinary_simple(h: &RealWeilPoly, effort: Effort) -> TestOutcome {
    let name = TestName::PpOrdinarySimple;
    let factors = factor_monic_real_weil(h.h(), h.q().q).expect("real Weil polynomial");
    if factors.len() != 1 || factors[0].1 != 1 {
        return TestOutcome::note(name, Status::Inapplicable, "class is not simple");
    }
    if !is_ordinary(h) {
        return TestOutcome::note(name, Status::Inapplicable, "class is not ordinary");
    }
    let q = h.q();
    let g = h.g();
    let delta = IntPoly::from_i64(&[-4 * q.q as i64, 0, 1]);
    let norm = resultant(h.h(), &delta).expect("nonzero").abs();
    let m = if q.q % 2 == 1 { q.p } else { 4 };
    let mb = BigInt::from(m);
    let c_g = weil_companion(h.h(), q.q).coeff(g);
    let c_g_mod_m = c_g.mod_floor(&mb).to_u64().expect("small");
    let root = norm.sqrt();
    let s = (&root * &root == norm).then_some(root);
    let mut cert = PolarizationCertificate {
        s_mod_m: s.as_ref().map(|s| s.mod_floor(&mb).to_u64().expect("small")),
        norm: norm.clone(),
        s,
        m,
        c_g_mod_m,
        primes: Vec::new(),
        witness: None,
        reason: String::new(),
    };
    let finish = |status, mut cert: PolarizationCertificate, reason: &str| {
        cert.reason = reason.to_string();
        TestOutcome::new(name, status, Certificate::Polarization(cert))
    };
    if g % 2 == 1 {
        return finish(Status::PpExists, cert, "odd dimension");
    }
    let Some(s_mod_m) = cert.s_mod_m else {
        return finish(Status::PpExists, cert, "N(pi - pibar) is not a square");
    };

    let mut complete = true;
    let mut primes: Vec<u64> = match factor_integer(&norm, effort) {
        Ok(f) => {
            complete &= f.complete;
            f.primes().filter_map(|p| p.to_u64()).collect()
        }
        Err(_) => Vec::new(),
    };
    if q.q % 2 == 1 && !primes.contains(&2) {
        primes.push(2);
    }
    primes.sort_unstable();
    for p in primes {
        let vn = valuation(&norm, p).0;
        let (rec, witness) = if p == 2 {
            analyze_two(h.h(), &delta, vn)
        } else {
            analyze_odd(h.h(), &delta, p, vn)
        };
        complete &= rec.usable && rec.places.iter().all(|pl| pl.behaviour != LocalBehaviour::Unresolved);
        cert.primes.push(rec);
        if witness.is_some() {
            cert.witness = witness;
            return finish(Status::PpExists, cert, "local witness");
        }
    }
    if !complete {
        return finish(Status::Unknown, cert, "local analysis incomplete");
    }
    if c_g_mod_m == s_mod_m {
        finish(Status::PpExists, cert, "c_g = s mod m")
    } else {
        finish(Status::NoPp, cert, "c_g != s mod m")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimePower;

    fn rw(c: &[i64], q: u64) -> RealWeilPoly {
        RealWeilPoly::new(IntPoly::from_i64(c), PrimePower::new(q).unwrap()).unwrap()
    }

    fn cert(o: &TestOutcome) -> &PolarizationCertificate {
        let Certificate::Polarization(c) = &o.certificate else { panic!("{o:?}") };
        c
    }

    #[test]
    fn f8_quartic_has_no_pp() {
        let o = test_pp_ordinary_simple(&rw(&[57, 102, 58, 13, 1], 8), Effort::default());
        assert_eq!(o.status, Status::NoPp);
        let c = cert(&o);
        assert_eq!(c.norm, BigInt::from(39601));
        assert_eq!(c.s, Some(BigInt::from(199)));
        assert_eq!((c.m, c.c_g_mod_m, c.s_mod_m), (4, 1, Some(3)));
        assert!(c.witness.is_none());
        assert_eq!(c.primes.len(), 1);
        assert_eq!(c.primes[0].p, 199);
    }

    #[test]
    fn odd_dimension() {
        let o = test_pp_ordinary_simple(&rw(&[-1, 3, 4, 1], 2), Effort::default());
        assert_eq!(o.status, Status::PpExists);
        assert_eq!(cert(&o).reason, "odd dimension");
    }

    #[test]
    fn elliptic_norm_not_square() {
        let o = test_pp_ordinary_simple(&rw(&[-1, 1], 2), Effort::default());
        assert_eq!(o.status, Status::PpExists);
        assert_eq!(cert(&o).norm, BigInt::from(7));
    }

    #[test]
    fn reducible_is_inapplicable() {
        let h = rw(&[2, 3, 1], 2);
        assert_eq!(test_pp_ordinary_simple(&h, Effort::default()).status, Status::Inapplicable);
    }

    #[test]
    fn two_adic_trace() {
        let phi = FpPoly::from_int(&IntPoly::from_i64(&[1, 1, 1]), 2);
        assert_eq!(trace_f2(&FpPoly::x(2), &phi), 1);
        assert_eq!(trace_f2(&FpPoly::constant(2, 1), &phi), 0);
    }

    #[test]
    fn local_inverse() {
        let h = IntPoly::from_i64(&[1, 1, 1]);
        let ring = LocalRing {
            modulus: BigInt::from(1 << 10),
            h: &h,
        };
        let a = IntPoly::from_i64(&[3, 2]);
        assert_eq!(ring.mul(&a, &ring.inverse(&a, 2)), IntPoly::one());
    }
}
