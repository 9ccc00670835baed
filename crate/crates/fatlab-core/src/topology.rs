//! First Pontryagin classes and cohomology-type constants of the quotients.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spin::{self, CirclePattern, SpinError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("pattern n={0:?} does not act freely")]
    NotFree([i64; 4]),
    #[error(transparent)]
    Spin(#[from] SpinError),
}

/// `p₁` as a multiple of a generator of `H⁴`; the sign is not determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P1Value {
    pub value: i64,
    pub sign_ambiguous: bool,
}

impl P1Value {
    fn unsigned(value: i64) -> Self {
        P1Value {
            value: value.abs(),
            sign_ambiguous: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseSpace {
    #[serde(rename = "S7xS7")]
    S7xS7,
    #[serde(rename = "S6xS7")]
    S6xS7,
}

impl BaseSpace {
    pub fn label(self) -> &'static str {
        match self {
            BaseSpace::S7xS7 => "S^7 x S^7",
            BaseSpace::S6xS7 => "S^6 x S^7",
        }
    }

    fn k(self) -> u32 {
        match self {
            BaseSpace::S7xS7 => 7,
            BaseSpace::S6xS7 => 6,
        }
    }
}

/// `Σ ℓ_i² + r_i²` for a free circle on S⁷×S⁷.
pub fn p1_circle(p: &CirclePattern) -> Result<P1Value, TopologyError> {
    if !spin::is_free_circle(p) {
        return Err(TopologyError::NotFree(p.n));
    }
    Ok(P1Value::unsigned(p.sum_of_squares()))
}

/// The restricted circle on S⁶×S⁷ (`ℓ₁ = 0`) has the same closed form.
pub fn p1_circle_sphere6(p: &CirclePattern) -> Result<P1Value, TopologyError> {
    if p.l[0] != 0 {
        return Err(SpinError::NotOnSphere6(p.l[0]).into());
    }
    p1_circle(p)
}

/// Weights of the maximal torus of the unique free SU(2).
pub const SU2_FREE_PARTITION: [u32; 4] = [2, 2, 2, 2];

/// Correction subtracted from the torus sum for the SU(2) quotient.
pub const SU2_CORRECTION: i64 = 4;

/// `p₁` of the SU(2) quotient of S⁷×S⁷ or S⁶×S⁷: the torus sum minus 4.
pub fn p1_su2(base: BaseSpace) -> P1Value {
    let row = spin::su2_table(&SU2_FREE_PARTITION).expect("valid partition");
    let s: i64 = row.lift_a.iter().chain(&row.lift_b).map(|x| x * x).sum();
    // both bases share the torus; the S⁶ factor lies in the ℓ₁ = 0 slice
    debug_assert!(base != BaseSpace::S6xS7 || row.lift_a[0] == 0);
    P1Value::unsigned(s - SU2_CORRECTION)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyVerdict {
    pub distinct_homotopy: bool,
    pub distinct_homeo_hint: bool,
}

/// Compares two `p₁` values known only up to sign.
///
/// Homotopy types differ when `a ≢ ±b (mod 24)`; rational classes being
/// homeomorphism invariants, `|a| ≠ |b|` hints at distinct homeomorphism types.
pub fn homotopy_obstruction(a: i64, b: i64) -> HomotopyVerdict {
    let am = a.rem_euclid(24);
    let distinct_homotopy = am != b.rem_euclid(24) && am != (-b).rem_euclid(24);
    HomotopyVerdict {
        distinct_homotopy,
        distinct_homeo_hint: a.abs() != b.abs(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    Circle { pattern: [i64; 4] },
    Su2,
    Finite {
        d: u64,
        minus_on_first: bool,
        pattern: [i64; 4],
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDescriptor {
    pub base: BaseSpace,
    pub group: GroupKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub space: String,
    pub group: String,
    pub pattern: Option<[i64; 4]>,
    pub p1: Option<i64>,
    pub p1_mod24: Option<i64>,
    pub p1_sign_ambiguous: bool,
    pub ring_type: Option<String>,
    pub pi1: String,
    pub higher_pontryagin_vanish: bool,
    pub diffeomorphic_to: Option<String>,
    pub verdicts: Vec<String>,
}

fn model_p1(ring: &str) -> i64 {
    if ring.contains("CP^3") {
        4
    } else {
        0
    }
}

/// Bundles `p₁`, the stored cohomology type and inequivalence verdicts.
///
/// Only inequivalence is ever asserted; agreement mod 24 yields no verdict.
pub fn quotient_report(q: &QuotientDescriptor) -> Result<QuotientReport, TopologyError> {
    let k = q.base.k();
    let space = q.base.label().to_string();
    match &q.group {
        GroupKind::Circle { pattern } => {
            let p = CirclePattern::new(*pattern)?;
            let p1 = match q.base {
                BaseSpace::S7xS7 => p1_circle(&p)?,
                BaseSpace::S6xS7 => p1_circle_sphere6(&p)?,
            };
            let ring = format!("S^{k} x CP^3");
            Ok(connected_report(space, "circle", Some(p.n), p1, ring))
        }
        GroupKind::Su2 => {
            let ring = format!("S^{k} x S^4");
            Ok(connected_report(space, "SU(2)", None, p1_su2(q.base), ring))
        }
        GroupKind::Finite {
            d,
            minus_on_first,
            pattern,
        } => {
            let p = CirclePattern::new(*pattern)?;
            let sphere6 = q.base == BaseSpace::S6xS7;
            if !spin::finite_action_free(&p, *d, *minus_on_first, sphere6)? {
                return Err(TopologyError::NotFree(p.n));
            }
            let first = if sphere6 { "RP^6" } else { "RP^7" };
            let (pi1, diffeo) = match (*minus_on_first, *d) {
                (true, 1) => ("Z2".to_string(), Some(format!("{first} x S^7"))),
                (true, 2) => ("Z2 x Z2".to_string(), Some(format!("{first} x RP^7"))),
                (true, d) => (format!("Z2 x Z{d}"), None),
                (false, 1) => ("0".to_string(), Some(space.clone())),
                (false, d) => (format!("Z{d}"), None),
            };
            let mut verdicts = Vec::new();
            if pi1 != "0" {
                let reason = if sphere6 {
                    "non-orientable in odd dimension"
                } else {
                    "orientable in even dimension with nontrivial fundamental group"
                };
                verdicts.push(format!("admits no metric of positive sectional curvature (Synge: {reason})"));
            }
            Ok(QuotientReport {
                space,
                group: format!("finite of order {}", (*d) * if *minus_on_first { 2 } else { 1 }),
                pattern: Some(p.n),
                p1: None,
                p1_mod24: None,
                p1_sign_ambiguous: false,
                ring_type: None,
                pi1,
                higher_pontryagin_vanish: false,
                diffeomorphic_to: diffeo,
                verdicts,
            })
        }
    }
}

fn connected_report(
    space: String,
    group: &str,
    pattern: Option<[i64; 4]>,
    p1: P1Value,
    ring: String,
) -> QuotientReport {
    let model = model_p1(&ring);
    let v = homotopy_obstruction(p1.value, model);
    let mut verdicts = Vec::new();
    if v.distinct_homotopy {
        verdicts.push(format!(
            "not homotopy equivalent to {ring} (p1 = {} vs {model} mod 24)",
            p1.value
        ));
    }
    QuotientReport {
        space,
        group: group.to_string(),
        pattern,
        p1: Some(p1.value),
        p1_mod24: Some(p1.value.rem_euclid(24)),
        p1_sign_ambiguous: p1.sign_ambiguous,
        ring_type: Some(ring),
        pi1: "0".to_string(),
        higher_pontryagin_vanish: true,
        diffeomorphic_to: None,
        verdicts,
    }
}
