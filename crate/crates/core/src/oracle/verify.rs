use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use super::{chain_model, simplicial_model, tier2_obstruction, Tier2Options};
use crate::calculus::{cohomology_ring_of_descriptor, homology_of_descriptor, CalculusError};
use crate::coefficients::CoefficientRing;
use crate::graded_algebra::{
    pairing_invariants, GradedModule, PairingInvariant, PresentedGradedRing,
};
use crate::reeb_descriptor::ReebDescriptor;
use crate::simplicial::{cup_ring_of_complex, ChainComplex, SimplicialComplex};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TierChoice {
    /// Tier 1 always, Tier 2 where it applies.
    #[default]
    Auto,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl FromStr for TierChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(TierChoice::Auto),
            "1" => Ok(TierChoice::One),
            "2" => Ok(TierChoice::Two),
            other => Err(format!("unknown tier `{other}` (expected auto, 1 or 2)")),
        }
    }
}

impl fmt::Display for TierChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TierChoice::Auto => "auto",
            TierChoice::One => "1",
            TierChoice::Two => "2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub rings: Vec<CoefficientRing>,
    pub tier: TierChoice,
    pub allow_pinch: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            rings: vec![CoefficientRing::Integers],
            tier: TierChoice::Auto,
            allow_pinch: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Tier2Status {
    NotRequested,
    Used,
    Unsupported(String),
    Failed(String),
}

/// One concrete disagreement. `degree` is the cohomological degree involved
/// (for pairings, `p + q`), absent for whole-descriptor failures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MismatchWitness {
    pub check: String,
    pub degree: Option<usize>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingVerdict {
    pub ring: CoefficientRing,
    /// Highest tier that contributed to the verdict.
    pub tier: u8,
    pub homology_match: bool,
    /// `None` when no ring comparison was made (Tier 2 unavailable).
    pub ring_match: Option<bool>,
    pub calculus_homology: Option<GradedModule>,
    pub tier1_homology: GradedModule,
    pub tier2_homology: Option<GradedModule>,
    pub calculus_pairings: Vec<PairingInvariant>,
    pub model_pairings: Vec<PairingInvariant>,
    pub witnesses: Vec<MismatchWitness>,
    pub elapsed_ms: u64,
}

impl RingVerdict {
    pub fn matches(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub descriptor: ReebDescriptor,
    pub tier_requested: TierChoice,
    pub tier2: Tier2Status,
    /// Simplex count of the Tier-2 model, when built.
    pub tier2_simplices: Option<usize>,
    pub rings: Vec<RingVerdict>,
    pub all_match: bool,
    pub elapsed_ms: u64,
}

fn module_witnesses(
    check: &str,
    expected: &GradedModule,
    got: &GradedModule,
    n: usize,
) -> Vec<MismatchWitness> {
    let (e, g) = (expected.clone().padded(n), got.clone().padded(n));
    let top = e.max_degree().max(g.max_degree());
    (0..=top)
        .filter(|&k| e.piece(k) != g.piece(k))
        .map(|k| MismatchWitness {
            check: check.into(),
            degree: Some(k),
            expected: piece_string(&e, k),
            got: piece_string(&g, k),
        })
        .collect()
}

fn piece_string(m: &GradedModule, k: usize) -> String {
    let p = m.piece(k);
    let mut s = format!("rank {}", p.free_rank);
    for t in &p.torsion {
        s.push_str(&format!(" + Z/{t}"));
    }
    s
}

fn zero_pairing(p: usize, q: usize) -> PairingInvariant {
    PairingInvariant {
        p,
        q,
        rank: 0,
        divisors: Vec::new(),
        form_rank: 0,
        form_divisors: Vec::new(),
    }
}

/// Pairing invariants for every `1 <= p <= q`, `p + q <= n`, zero beyond the
/// ring's top degree.
fn pairings_up_to(r: &PresentedGradedRing, n: usize) -> Vec<PairingInvariant> {
    let mut out = Vec::new();
    for p in 1..n {
        for q in p..=n - p {
            out.push(if p + q <= r.top_degree() {
                pairing_invariants(r, p, q).expect("degrees in range")
            } else {
                zero_pairing(p, q)
            });
        }
    }
    out
}

fn pairing_string(x: &PairingInvariant) -> String {
    let d: Vec<String> = x.divisors.iter().map(|d| d.to_string()).collect();
    let f: Vec<String> = x.form_divisors.iter().map(|d| d.to_string()).collect();
    format!(
        "rank {} divisors [{}] form rank {} form divisors [{}]",
        x.rank,
        d.join(","),
        x.form_rank,
        f.join(",")
    )
}

fn betti_euler(m: &GradedModule) -> i64 {
    m.free_ranks()
        .iter()
        .enumerate()
        .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
        .sum()
}

/// Verification against the built-in calculus.
pub fn verify_descriptor(d: &ReebDescriptor, opts: &VerifyOptions) -> VerificationReport {
    verify_descriptor_with(d, opts, homology_of_descriptor)
}

/// Verification with a substitute homology calculus (used as a negative control).
pub fn verify_descriptor_with<F>(
    d: &ReebDescriptor,
    opts: &VerifyOptions,
    calculus: F,
) -> VerificationReport
where
    F: Fn(&ReebDescriptor, CoefficientRing) -> Result<GradedModule, CalculusError>,
{
    let start = Instant::now();
    let n = d.n;
    let tier1 = chain_model(d);
    let t2opts = Tier2Options {
        allow_pinch: opts.allow_pinch,
    };
    let (tier2, model): (Tier2Status, Option<SimplicialComplex>) = match opts.tier {
        TierChoice::One => (Tier2Status::NotRequested, None),
        _ => match tier1
            .as_ref()
            .ok()
            .and_then(|_| tier2_obstruction(d, t2opts))
        {
            Some(reason) => (Tier2Status::Unsupported(reason), None),
            None if tier1.is_err() => (Tier2Status::NotRequested, None),
            None => match simplicial_model(d, t2opts) {
                Ok(m) => (Tier2Status::Used, Some(m.complex)),
                Err(e) => (Tier2Status::Failed(e.to_string()), None),
            },
        },
    };
    let model_chains = model.as_ref().map(ChainComplex::of_complex);

    let mut rings = Vec::new();
    for &ring in &opts.rings {
        let t0 = Instant::now();
        let mut w = Vec::new();
        let calc = calculus(d, ring);
        let t1h = match &tier1 {
            Ok(c) => c.homology(ring).padded(n),
            Err(e) => {
                w.push(MismatchWitness {
                    check: "tier1".into(),
                    degree: None,
                    expected: "chain model".into(),
                    got: e.to_string(),
                });
                GradedModule::default()
            }
        };
        let calc_h = match &calc {
            Ok(h) => {
                if tier1.is_ok() {
                    w.extend(module_witnesses("homology", h, &t1h, n));
                }
                Some(h.clone().padded(n))
            }
            Err(e) => {
                w.push(MismatchWitness {
                    check: "calculus".into(),
                    degree: None,
                    expected: "homology".into(),
                    got: e.to_string(),
                });
                None
            }
        };
        let homology_match = w.is_empty();

        let mut tier = 1u8;
        let mut ring_match = None;
        let mut t2h = None;
        let (mut calc_p, mut model_p) = (Vec::new(), Vec::new());
        if let (Some(k), Some(chains)) = (&model, &model_chains) {
            tier = 2;
            let before = w.len();
            let h = chains.homology(ring).padded(n);
            if let Some(c) = &calc_h {
                w.extend(module_witnesses("tier2_homology", c, &h, n));
                let chi = chains.euler_characteristic();
                if chi != betti_euler(c) {
                    w.push(MismatchWitness {
                        check: "euler_characteristic".into(),
                        degree: None,
                        expected: betti_euler(c).to_string(),
                        got: chi.to_string(),
                    });
                }
            }
            t2h = Some(h);
            match (
                cohomology_ring_of_descriptor(d, ring),
                cup_ring_of_complex(k, ring),
            ) {
                (Ok(cr), Ok(mr)) => {
                    calc_p = pairings_up_to(&cr.ring, n);
                    model_p = pairings_up_to(&mr.ring, n);
                    for (x, y) in calc_p.iter().zip(&model_p) {
                        if x != y {
                            w.push(MismatchWitness {
                                check: format!("pairing({},{})", x.p, x.q),
                                degree: Some(x.p + x.q),
                                expected: pairing_string(x),
                                got: pairing_string(y),
                            });
                        }
                    }
                }
                (Err(e), _) => w.push(MismatchWitness {
                    check: "calculus_ring".into(),
                    degree: None,
                    expected: "ring presentation".into(),
                    got: e.to_string(),
                }),
                (_, Err(e)) => w.push(MismatchWitness {
                    check: "cup_ring".into(),
                    degree: None,
                    expected: "cup ring".into(),
                    got: e.to_string(),
                }),
            }
            ring_match = Some(w.len() == before);
        } else if opts.tier == TierChoice::Two {
            if let Tier2Status::Unsupported(reason) | Tier2Status::Failed(reason) = &tier2 {
                w.push(MismatchWitness {
                    check: "tier2".into(),
                    degree: None,
                    expected: "simplicial model".into(),
                    got: reason.clone(),
                });
            }
        }
        rings.push(RingVerdict {
            ring,
            tier,
            homology_match,
            ring_match,
            calculus_homology: calc_h,
            tier1_homology: t1h,
            tier2_homology: t2h,
            calculus_pairings: calc_p,
            model_pairings: model_p,
            witnesses: w,
            elapsed_ms: t0.elapsed().as_millis() as u64,
        });
    }
    let all_match = rings.iter().all(RingVerdict::matches);
    VerificationReport {
        descriptor: d.clone(),
        tier_requested: opts.tier,
        tier2,
        tier2_simplices: model.as_ref().map(SimplicialComplex::total_simplices),
        rings,
        all_match,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

impl VerificationReport {
    /// Plain-text table, one row per ring, witnesses indented below.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<6} {:<4} {:<9} {:<9} {:<24} {:>8}",
            "ring", "tier", "homology", "ring", "calculus H_*", "ms"
        );
        for r in &self.rings {
            let ring_col = match r.ring_match {
                Some(true) => "match",
                Some(false) => "MISMATCH",
                None => "-",
            };
            let h = r
                .calculus_homology
                .as_ref()
                .map(|h| h.to_string())
                .unwrap_or_else(|| "error".into());
            let _ = writeln!(
                s,
                "{:<6} {:<4} {:<9} {:<9} {:<24} {:>8}",
                r.ring.to_string(),
                r.tier,
                if r.homology_match {
                    "match"
                } else {
                    "MISMATCH"
                },
                ring_col,
                h,
                r.elapsed_ms
            );
            for p in &r.model_pairings {
                if p.rank > 0 {
                    let d: Vec<String> = p.divisors.iter().map(|d| d.to_string()).collect();
                    let _ = writeln!(
                        s,
                        "         pairing ({},{}): rank {} divisors [{}]",
                        p.p,
                        p.q,
                        p.rank,
                        d.join(",")
                    );
                }
            }
            for x in &r.witnesses {
                let deg = x.degree.map(|k| format!(" degree {k}")).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "         ! {}{deg}: expected {}, got {}",
                    x.check, x.expected, x.got
                );
            }
        }
        let tier2 = match &self.tier2 {
            Tier2Status::NotRequested => "not requested".to_string(),
            Tier2Status::Used => format!("used ({} simplices)", self.tier2_simplices.unwrap_or(0)),
            Tier2Status::Unsupported(r) => format!("unsupported: {r}"),
            Tier2Status::Failed(r) => format!("failed: {r}"),
        };
        let _ = writeln!(s, "tier 2: {tier2}");
        let _ = writeln!(
            s,
            "verdict: {}",
            if self.all_match {
                "all match"
            } else {
                "MISMATCH"
            }
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::graded_algebra::ManifoldExpr;
    use crate::reeb_descriptor::{BubblingRecord, RecordKind, SphereSpec};

    fn rings() -> Vec<CoefficientRing> {
        vec![
            CoefficientRing::Integers,
            CoefficientRing::Rationals,
            CoefficientRing::prime_field(2).unwrap(),
        ]
    }

    fn coefficient(c: i64) -> ReebDescriptor {
        ReebDescriptor::new(3)
            .with_handle(ManifoldExpr::sphere(1))
            .with_record(BubblingRecord::new(
                RecordKind::M,
                vec![SphereSpec::new(1).with(1, c)],
            ))
    }

    #[test]
    fn sphere_descriptor_matches() {
        let d = ReebDescriptor::new(3).with_record(BubblingRecord::point());
        let r = verify_descriptor(
            &d,
            &VerifyOptions {
                rings: rings(),
                ..Default::default()
            },
        );
        assert!(r.all_match, "{}", r.table());
        assert_eq!(r.tier2, Tier2Status::Used);
    }

    #[test]
    fn coefficient_two_pairings() {
        let r = verify_descriptor(
            &coefficient(2),
            &VerifyOptions {
                rings: rings(),
                ..Default::default()
            },
        );
        assert!(r.all_match, "{}", r.table());
        let at = |i: usize| {
            r.rings[i]
                .model_pairings
                .iter()
                .find(|p| (p.p, p.q) == (1, 2))
                .unwrap()
                .clone()
        };
        assert_eq!(at(0).divisors, vec![BigInt::from(2)]);
        assert_eq!(at(1).rank, 1);
        assert_eq!(at(2).rank, 0);
    }

    #[test]
    fn corrupted_calculus_is_caught() {
        let bad = |d: &ReebDescriptor, r: CoefficientRing| {
            let mut h = homology_of_descriptor(d, r)?;
            h.pieces[2].free_rank += 1;
            Ok(h)
        };
        let r = verify_descriptor_with(&coefficient(1), &VerifyOptions::default(), bad);
        assert!(!r.all_match);
        let w = &r.rings[0].witnesses;
        assert!(w
            .iter()
            .any(|x| x.check == "homology" && x.degree == Some(2)));
    }

    #[test]
    fn explicit_tier_two_on_unsupported_fails() {
        let d = ReebDescriptor::new(3)
            .with_handle(ManifoldExpr::sphere(1))
            .with_handle(ManifoldExpr::sphere(1))
            .with_record(BubblingRecord::new(
                RecordKind::M,
                vec![SphereSpec::new(1).with(1, 1).with(2, -1)],
            ));
        let auto = verify_descriptor(&d, &VerifyOptions::default());
        assert!(auto.all_match);
        assert!(matches!(auto.tier2, Tier2Status::Unsupported(_)));
        let two = verify_descriptor(
            &d,
            &VerifyOptions {
                tier: TierChoice::Two,
                ..Default::default()
            },
        );
        assert!(!two.all_match);
        let pinch = verify_descriptor(
            &d,
            &VerifyOptions {
                tier: TierChoice::Two,
                allow_pinch: true,
                ..Default::default()
            },
        );
        assert!(pinch.all_match, "{}", pinch.table());
    }

    #[test]
    fn tier_names() {
        for t in ["auto", "1", "2"] {
            assert_eq!(t.parse::<TierChoice>().unwrap().to_string(), t);
        }
        assert!("3".parse::<TierChoice>().is_err());
    }
}
