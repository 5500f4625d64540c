//! Plain-text rendering of a sieve report.

use std::fmt::Write;

use super::{Certificate, LocalBehaviour, SieveReport, Status, SurfaceRule, TestOutcome};
use crate::arith::Tri;
use crate::intpoly::IntPoly;

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Eliminated => "eliminated",
        Status::Deduction => "deduction",
        Status::PpExists => "pp exists",
        Status::NoPp => "no pp",
        Status::Inapplicable => "inapplicable",
        Status::Unknown => "unknown",
    }
}

fn describe(o: &TestOutcome) -> String {
    match &o.certificate {
        Certificate::None => String::new(),
        Certificate::Note { note } => note.clone(),
        Certificate::NegativePlace(np) => format!(
            "a_{} = {} (N_{} = {})",
            np.n, np.places, np.n, np.points
        ),
        Certificate::Splits { splits } => {
            let rr: Vec<String> = splits.iter().map(|s| s.reduced_resultant.to_string()).collect();
            match splits.as_slice() {
                [s] if s.reduced_resultant == 1.into() => {
                    format!("h = ({}) * ({}) with reduced resultant 1", s.h1, s.h2)
                }
                _ => format!("reduced resultants {}", list(&rr)),
            }
        }
        Certificate::Quotients { splits } => splits
            .iter()
            .map(|s| {
                let opts: Vec<String> = s
                    .options
                    .iter()
                    .map(|c| {
                        let why = if c.feasible {
                            "feasible".to_string()
                        } else if !c.genus_ok {
                            format!("genus {} too large", c.genus)
                        } else if let Some(n) = c.negative_place {
                            format!("negative place count at n = {n}")
                        } else {
                            format!("#C > 2#D at n = {}", c.count_violation.unwrap_or_default())
                        };
                        format!("D with h = {}: {why}", c.quotient)
                    })
                    .collect();
                format!("double cover for ({}) * ({}): {}", s.split.h1, s.split.h2, opts.join("; "))
            })
            .collect::<Vec<_>>()
            .join(". "),
        Certificate::SurfacePair { rule, a, b } => {
            let r = match rule {
                SurfaceRule::NoPpCriterion => "no principally polarized surface",
                SurfaceRule::Mn1 => "x^4 + (1 - 2q)x^2 + q^2 pattern",
                SurfaceRule::Mn2 => "x^4 + (2 - 2q)x^2 + q^2 pattern",
                SurfaceRule::NoRule => "no rule applies",
            };
            format!("(a, b) = ({a}, {b}): {r}")
        }
        Certificate::Hoffmann { power, t, disc } => {
            format!("h = (x - ({t}))^{power} with t^2 - 4q = {disc}")
        }
        Certificate::Supersingular { branches } => branches
            .iter()
            .map(|b| {
                let sf = match b.squarefree {
                    Tri::Yes => "squarefree",
                    Tri::No => "not squarefree",
                    Tri::Unknown => "squarefreeness unknown",
                };
                format!("h0(2*{}) = {} is {sf}", b.s, b.value)
            })
            .collect::<Vec<_>>()
            .join("; "),
        Certificate::CoverDivisor { options, notes } => {
            let mut parts: Vec<String> = options
                .iter()
                .map(|c| {
                    format!(
                        "map of degree dividing {} to the elliptic curve with trace {} ({} points), feasible degrees [{}]",
                        c.r,
                        c.t,
                        c.elliptic_points,
                        list(&c.feasible_degrees)
                    )
                })
                .collect();
            parts.extend(notes.iter().cloned());
            parts.join("; ")
        }
        Certificate::CoverBound { options, notes } => {
            let mut parts: Vec<String> = options
                .iter()
                .map(|c| {
                    format!(
                        "map of degree < {} to the elliptic curve with trace {} ({} points, b = {}), feasible degrees [{}]",
                        c.below,
                        c.t,
                        c.elliptic_points,
                        c.b,
                        list(&c.feasible_degrees)
                    )
                })
                .collect();
            parts.extend(notes.iter().cloned());
            parts.join("; ")
        }
        Certificate::Cyclotomic { orders, .. } => {
            format!("roots of unity of order [{}] in Z[pi, pibar] give automorphisms", list(orders))
        }
        Certificate::Annihilator { splits, .. } => {
            let rr: Vec<String> = splits.iter().map(|s| s.reduced_resultant.to_string()).collect();
            format!("kernels of the splittings are killed by [{}]", list(&rr))
        }
        Certificate::Descent { targets, notes } => {
            let mut parts: Vec<String> = targets
                .iter()
                .flat_map(|t| {
                    t.options.iter().map(move |o| {
                        let fate = match &o.negative_place {
                            Some(np) => format!("fails with N_{} = {}", np.n, np.points),
                            None => "survives".to_string(),
                        };
                        let kind = if o.twist { "twist" } else { "descent" };
                        format!("{kind} to F_{} with h0 = {}: {fate}", t.q0, o.h0)
                    })
                })
                .collect();
            parts.extend(notes.iter().cloned());
            parts.join("; ")
        }
        Certificate::Polarization(c) => {
            let mut s = format!("N(pi - pibar) = {}", c.norm);
            if let Some(r) = &c.s {
                let _ = write!(s, " = {r}^2, s = {} mod {}", c.s_mod_m.unwrap_or_default(), c.m);
            }
            let _ = write!(s, ", c_g = {} mod {}", c.c_g_mod_m, c.m);
            for rec in &c.primes {
                let places: Vec<&str> = rec
                    .places
                    .iter()
                    .map(|p| match p.behaviour {
                        LocalBehaviour::Split => "split",
                        LocalBehaviour::Inert => "inert",
                        LocalBehaviour::Ramified => "ramified",
                        LocalBehaviour::Unresolved => "unresolved",
                    })
                    .collect();
                let _ = write!(s, "; above {}: {}", rec.p, places.join(", "));
            }
            if let Some(w) = &c.witness {
                let _ = write!(s, "; {w}");
            }
            let _ = write!(s, "; {}", c.reason);
            s
        }
    }
}

/// A short paragraph: the candidate, its point counts, the verdict and one
/// line per test that ran.
pub fn report_paragraph(r: &SieveReport) -> String {
    let h = IntPoly::new(r.h.clone());
    let mut out = format!(
        "q = {}, g = {}, h = {}, defect {}\n  N_1..N_{} = [{}]\n  verdict: {}\n",
        r.q,
        r.g,
        h,
        r.defect,
        r.point_counts.len(),
        list(&r.point_counts),
        r.verdict
    );
    for o in &r.tests {
        let _ = writeln!(out, "  {}: {}. {}", o.name, status_word(o.status), describe(o));
    }
    out
}
