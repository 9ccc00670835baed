//! Data-driven ledger of verifiable claims, the b = 1 pair table and the
//! case analysis of triples with `f = 1`.
//!
//! The ledger ships as JSON (`data/registry.json`). Every claim names a plan
//! (an operation of this crate plus arguments) and an expected outcome.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::curvature::{self, DeformedMetric, Deformation, PMode, PVerdict};
use crate::exactnum::{MatQ, Rational};
use crate::liealg::{
    builders, compute_b, compute_f, dimension_obstruction, ideal_split, InvariantReport, LieError, PresetStore,
    SampleOptions, Status, DEFAULT_SEED,
};
use crate::octonion::{self, left_mult_matrix, right_mult_matrix, Octonion};
use crate::spin::{self, CirclePattern};
use crate::topology::{self, BaseSpace};

pub const REGISTRY_SCHEMA: u32 = 1;

const REGISTRY_JSON: &str = include_str!("../data/registry.json");

/// Preset ids of the six triples with `f = 1`.
pub const SURVIVORS: [&str; 6] = [
    "so2-so3-so4",
    "0-so3-so4",
    "u1-u2-u1+so4",
    "so3-so4-so3+so4",
    "su3-g2-so7",
    "g2-so7-so8",
];

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("malformed registry: {0}")]
    Malformed(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Curvature(#[from] curvature::CurvatureError),
    #[error(transparent)]
    Spin(#[from] spin::SpinError),
    #[error(transparent)]
    Topology(#[from] topology::TopologyError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub location: String,
    pub anchor: String,
}

impl Citation {
    pub fn is_complete(&self) -> bool {
        !self.location.trim().is_empty() && !self.anchor.trim().is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Plan {
    ComputeB {
        pair: String,
        #[serde(default)]
        samples: Option<usize>,
    },
    ComputeF {
        triple: String,
        #[serde(default)]
        samples: Option<usize>,
    },
    DimensionRule {
        triple: String,
    },
    PropertyP {
        pair: String,
    },
    G2Pairing,
    PairTypes,
    PropertyPTypes,
    Classify,
    FlatWitness {
        pair: String,
    },
    Ric2Sampling {
        pair: String,
        samples: usize,
    },
    RicCertificate {
        triple: String,
        t: String,
        b_fiber: usize,
        b_base: usize,
        f: usize,
        /// Type of the base pair in the b = 1 table.
        base_type: u32,
        #[serde(default)]
        budget: Option<usize>,
    },
    OctonionTable,
    Moufang {
        samples: usize,
    },
    Triality {
        which: String,
    },
    Table2Rows,
    Table2Free,
    FreeCircle {
        pattern: [i64; 4],
    },
    P1Circle {
        pattern: [i64; 4],
        #[serde(default)]
        sphere6: bool,
    },
    P1Su2,
    FiniteFree {
        pattern: [i64; 4],
        d_max: u64,
        #[serde(default)]
        sphere6: bool,
    },
    Constant {
        value: String,
    },
}

impl Plan {
    pub fn is_computational(&self) -> bool {
        !matches!(self, Plan::Constant { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Value(i64),
    AtLeast(i64),
    Bool(bool),
    Set(Vec<i64>),
    Constant(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub citation: Citation,
    pub plan: Plan,
    pub expected: Expected,
    /// The upper bound is taken from the cited proof; computation supplies the lower bound.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub upper_bound_cited: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairType {
    #[serde(rename = "type")]
    pub type_id: u32,
    pub space: String,
    /// `k` first, then intermediate subalgebras, then `g`.
    pub chain: Vec<String>,
    pub property_p: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub presets: Vec<String>,
}

impl PairType {
    pub fn has_intermediate(&self) -> bool {
        self.chain.len() > 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Dimension,
    Witness,
    IdealSplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FVerdict {
    Eq0,
    Eq1,
    Gt1,
    Eq3,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseEntry {
    pub label: String,
    pub triple: String,
    pub route: Route,
    pub expected: FVerdict,
    pub citation: Citation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    pub schema: u32,
    pub pair_types: Vec<PairType>,
    pub cases: Vec<CaseEntry>,
    pub claims: Vec<ClaimRecord>,
}

impl Registry {
    /// The registry shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json(REGISTRY_JSON).expect("shipped registry parses")
    }

    pub fn from_json(text: &str) -> Result<Self, RegistryError> {
        let reg: Registry = serde_json::from_str(text)?;
        reg.validate()?;
        Ok(reg)
    }

    /// Unique ids and complete citations.
    pub fn validate(&self) -> Result<(), RegistryError> {
        if self.schema != REGISTRY_SCHEMA {
            return Err(RegistryError::Malformed(format!("schema {}", self.schema)));
        }
        let mut seen = std::collections::HashSet::new();
        for c in &self.claims {
            if !seen.insert(c.id.as_str()) {
                return Err(RegistryError::Malformed(format!("duplicate id {}", c.id)));
            }
            if !c.citation.is_complete() {
                return Err(RegistryError::Malformed(format!("claim {} lacks a citation anchor", c.id)));
            }
        }
        if let Some(c) = self.cases.iter().find(|c| !c.citation.is_complete()) {
            return Err(RegistryError::Malformed(format!("case {} lacks a citation anchor", c.label)));
        }
        Ok(())
    }

    pub fn claim(&self, id: &str) -> Result<&ClaimRecord, RegistryError> {
        self.claims
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| RegistryError::UnknownClaim(id.into()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.claims.iter().map(|c| c.id.as_str())
    }
}

/// Seed and optional sample budget shared by all claims of a run.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            budget: None,
        }
    }
}

impl RunConfig {
    fn samples(&self, planned: Option<usize>, default: usize) -> usize {
        self.budget.or(planned).unwrap_or(default).max(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    LowerBoundOnly,
    /// Non-computational record, reported without evaluation.
    Constant,
}

impl ClaimStatus {
    pub fn label(self) -> &'static str {
        match self {
            ClaimStatus::Pass => "PASS",
            ClaimStatus::Fail => "FAIL",
            ClaimStatus::LowerBoundOnly => "LOWER-BOUND",
            ClaimStatus::Constant => "CONSTANT",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub status: ClaimStatus,
    pub computational: bool,
    pub value: Value,
    pub expected: Expected,
    pub detail: String,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

const DEFAULT_SAMPLES: usize = 256;
const DEFAULT_SEARCH: usize = 512;

fn judge_invariant(rep: &InvariantReport, expected: &Expected, cited: bool) -> (ClaimStatus, String) {
    let value = rep.value.map(|v| v as i64);
    let lower = rep.certified_lower as i64;
    let sampled = rep.sampled_max as i64;
    let detail = format!(
        "lower {lower}, sampled {sampled}, {} samples, status {:?}",
        rep.samples, rep.status
    );
    if rep.status == Status::Contradicted {
        return (ClaimStatus::Fail, detail);
    }
    let status = match *expected {
        Expected::Value(n) => {
            if value == Some(n) {
                ClaimStatus::Pass
            } else if value.is_some() || lower > n || sampled > n {
                ClaimStatus::Fail
            } else if cited && lower == n {
                ClaimStatus::Pass
            } else {
                ClaimStatus::LowerBoundOnly
            }
        }
        Expected::AtLeast(n) => {
            if value.unwrap_or(lower) >= n {
                ClaimStatus::Pass
            } else {
                ClaimStatus::Fail
            }
        }
        _ => ClaimStatus::Fail,
    };
    let detail = if cited && status == ClaimStatus::Pass && value.is_none() {
        format!("{detail}; upper bound from the cited proof")
    } else {
        detail
    };
    (status, detail)
}

fn judge(value: &Value, expected: &Expected) -> ClaimStatus {
    let ok = match expected {
        Expected::Value(n) => value.as_i64() == Some(*n),
        Expected::AtLeast(n) => value.as_i64().is_some_and(|v| v >= *n),
        Expected::Bool(b) => value.as_bool() == Some(*b),
        Expected::Set(s) => {
            let got: Option<Vec<i64>> = value.as_array().map(|a| a.iter().filter_map(Value::as_i64).collect());
            got.as_deref() == Some(s.as_slice())
        }
        Expected::Constant(_) => true,
    };
    if ok {
        ClaimStatus::Pass
    } else {
        ClaimStatus::Fail
    }
}

fn parse_t(t: &str) -> Result<Deformation, RegistryError> {
    if t == "inf" {
        return Ok(Deformation::Normal);
    }
    t.parse::<Rational>()
        .map(Deformation::Finite)
        .map_err(|_| RegistryError::Malformed(format!("bad t {t:?}")))
}

fn type_has_p(reg: &Registry, type_id: u32) -> Result<bool, RegistryError> {
    reg.pair_types
        .iter()
        .find(|p| p.type_id == type_id)
        .map(|p| p.property_p)
        .ok_or_else(|| RegistryError::Malformed(format!("unknown pair type {type_id}")))
}

/// Random point of the unit sphere in `Im O` with rational coordinates.
fn rational_unit_imaginary(rng: &mut ChaCha8Rng) -> Octonion {
    let w: Vec<i64> = (0..6).map(|_| rng.random_range(-5..=5)).collect();
    let s: i64 = w.iter().map(|x| x * x).sum();
    let den = Rational::integer(s + 1);
    let mut c = vec![Rational::zero(); 8];
    for (i, wi) in w.iter().enumerate() {
        c[i + 1] = Rational::integer(2 * wi) / &den;
    }
    c[7] = Rational::integer(s - 1) / &den;
    Octonion::from_vec(&c)
}

fn moufang_triples(samples: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let u = rational_unit_imaginary(&mut rng);
        let (lu, ru, rub) = (left_mult_matrix(&u), right_mult_matrix(&u), right_mult_matrix(&u.conj()));
        let lr = &lu * &rub;
        spin::triality_check(&-&lu, &ru, &lr) && spin::triality_check(&lr, &lu, &lu)
    })
}

/// `⟨[A(e₁), A(e₂)], T⟩` for the `z₁ = 1` generator `T` of g₂.
pub fn g2_pairing() -> Rational {
    let e = |i: usize| builders::unit(7, i);
    let x = builders::a_perp(&e(0)).expect("7 params");
    let y = builders::a_perp(&e(1)).expect("7 params");
    let t = builders::g2_t_generator();
    let z = &(&x * &y) - &(&y * &x);
    -(&z * &t).trace()
}

fn dims_json(reg: &Registry) -> Vec<u32> {
    reg.pair_types.iter().filter(|p| p.property_p).map(|p| p.type_id).collect()
}

fn p_verdict(store: &PresetStore, pair: &str, cfg: &RunConfig, samples: usize) -> Result<PVerdict, RegistryError> {
    let pp = store.pair(pair)?;
    let f = store.intermediate(pair)?;
    let mode = if f.is_some() { PMode::Falsify } else { PMode::Witness };
    Ok(curvature::property_p_test(&pp.pair, mode, f.as_deref(), samples, cfg.seed)?)
}

fn evaluate(
    reg: &Registry,
    store: &PresetStore,
    claim: &ClaimRecord,
    cfg: &RunConfig,
) -> Result<(ClaimStatus, Value, String), RegistryError> {
    let plain = |value: Value, detail: String| {
        let status = judge(&value, &claim.expected);
        Ok((status, value, detail))
    };
    match &claim.plan {
        Plan::ComputeB { pair, samples } => {
            let pp = store.pair(pair)?;
            let opts = SampleOptions::new(cfg.samples(*samples, DEFAULT_SAMPLES), cfg.seed);
            let rep = compute_b(&pp.pair, &pp.hints, &opts)?;
            let (status, detail) = judge_invariant(&rep, &claim.expected, claim.upper_bound_cited);
            Ok((status, json!(rep.best()), detail))
        }
        Plan::ComputeF { triple, samples } => {
            let tp = store.triple(triple)?;
            let opts = SampleOptions::new(cfg.samples(*samples, DEFAULT_SAMPLES), cfg.seed);
            let rep = compute_f(&tp.triple, &tp.hints, &opts)?;
            let (status, detail) = judge_invariant(&rep, &claim.expected, claim.upper_bound_cited);
            Ok((status, json!(rep.best()), format!("{detail}, route {:?}", rep.route)))
        }
        Plan::DimensionRule { triple } => {
            let tp = store.triple(triple)?;
            let d = dimension_obstruction(&tp.triple);
            plain(json!(d.f1_allowed), format!("dim m {}, dim p {}", d.dim_m, d.dim_p))
        }
        Plan::PropertyP { pair } => {
            let v = p_verdict(store, pair, cfg, cfg.samples(None, 64))?;
            let holds = !v.is_counterexample();
            let detail = match &v {
                PVerdict::HoldsOnSamples { checked } => format!("no counterexample in {checked} vectors"),
                PVerdict::Inconclusive { checked } => format!("inconclusive after {checked} vectors"),
                PVerdict::Counterexample { .. } => "counterexample found".to_string(),
            };
            plain(json!(holds), detail)
        }
        Plan::G2Pairing => {
            let v = g2_pairing();
            plain(json!(v.to_i64()), format!("pairing {v}"))
        }
        Plan::PairTypes => plain(json!(reg.pair_types.len()), "rows of the b=1 pair table".into()),
        Plan::PropertyPTypes => plain(json!(dims_json(reg)), "types flagged with (P)".into()),
        Plan::Classify => {
            let table = classify_triples(reg, store, cfg)?;
            let n = table.survivors.len();
            let detail = format!("survivors {:?}, all cases agree: {}", table.survivors, table.all_agree());
            let value = if table.all_agree() && table.survivors_match() { json!(n) } else { json!(-1) };
            plain(value, detail)
        }
        Plan::FlatWitness { pair } => {
            let pp = store.pair(pair)?;
            let n = pp.pair.g().ambient_dim();
            let hint = pp
                .hints
                .iter()
                .find(|h| !h.vectors.is_empty())
                .ok_or_else(|| RegistryError::Malformed(format!("{pair} has no witness vector")))?;
            let x = hint.vector_matrices(n)?.remove(0);
            let z = crate::liealg::invariants::centralizer_basis(&x, pp.pair.perp())?;
            let y = z
                .into_iter()
                .find(|y| crate::exactnum::rank_rows(&[crate::liealg::flatten(&x), crate::liealg::flatten(y)]) == 2)
                .ok_or_else(|| RegistryError::Malformed("witness has a one-dimensional centralizer".into()))?;
            let sec = curvature::sectional(&x, &y, &pp.pair)?;
            plain(json!(sec.to_i64()), format!("sectional curvature {sec}"))
        }
        Plan::Ric2Sampling { pair, samples } => {
            let pp = store.pair(pair)?;
            let s = curvature::ric2_sampling(&pp.pair, cfg.samples(Some(*samples), *samples), cfg.seed);
            plain(json!(s.all_positive), format!("min Ric2 sum {:.6} over {} samples", s.min_sum, s.samples))
        }
        Plan::RicCertificate {
            triple,
            t,
            b_fiber,
            b_base,
            f,
            base_type,
            budget,
        } => {
            let tp = store.triple(triple)?;
            let dm = DeformedMetric::new(&tp.triple, parse_t(t)?, type_has_p(reg, *base_type)?)?;
            let budget = cfg.samples(*budget, DEFAULT_SEARCH);
            let cert = curvature::ric_k_certificate(&dm, *b_fiber, *b_base, *f, budget, cfg.seed)?;
            plain(
                json!(cert.falsified),
                format!("k = {}, flat frame found: {}, {} searches", cert.k, cert.falsified, budget),
            )
        }
        Plan::OctonionTable => plain(json!(octonion::verify_table().is_ok()), "alternative law on all basis pairs".into()),
        Plan::Moufang { samples } => {
            let n = cfg.samples(Some(*samples), *samples);
            plain(json!(moufang_triples(n, cfg.seed)), format!("{n} rational unit imaginaries"))
        }
        Plan::Triality { which } => {
            let (a, b, c) = match which.as_str() {
                "sigma" => (spin::sigma(), spin::sigma(), spin::sigma()),
                "minus_identity" => {
                    let i = MatQ::identity(8);
                    (-&i, i.clone(), -&i)
                }
                _ => return Err(RegistryError::Malformed(format!("unknown triality triple {which:?}"))),
            };
            plain(json!(spin::triality_check(&a, &b, &c)), "64 basis pairs".into())
        }
        Plan::Table2Rows => plain(json!(spin::table2().len()), "partitions of 8".into()),
        Plan::Table2Free => {
            let free: Vec<usize> = spin::table2()
                .iter()
                .enumerate()
                .filter(|(_, r)| r.free)
                .map(|(i, _)| i + 1)
                .collect();
            plain(json!(free), "rows with a free action".into())
        }
        Plan::FreeCircle { pattern } => {
            let p = CirclePattern::new(*pattern)?;
            plain(json!(spin::is_free_circle(&p)), format!("l {:?}, r {:?}", p.l, p.r))
        }
        Plan::P1Circle { pattern, sphere6 } => {
            let p = CirclePattern::new(*pattern)?;
            let v = if *sphere6 {
                topology::p1_circle_sphere6(&p)?
            } else {
                topology::p1_circle(&p)?
            };
            plain(json!(v.value), format!("l {:?}, r {:?}, sign ambiguous", p.l, p.r))
        }
        Plan::P1Su2 => {
            let a = topology::p1_su2(BaseSpace::S7xS7).value;
            let b = topology::p1_su2(BaseSpace::S6xS7).value;
            let v = if a == b { json!(a) } else { json!([a, b]) };
            plain(v, "both base spaces".into())
        }
        Plan::FiniteFree { pattern, d_max, sphere6 } => {
            let p = CirclePattern::new(*pattern)?;
            let mut all = true;
            for d in 1..=*d_max {
                all &= spin::finite_action_free(&p, d, true, *sphere6)?;
            }
            plain(json!(all), format!("Z2 x Z_d for d = 1..={d_max}"))
        }
        Plan::Constant { value } => Ok((ClaimStatus::Constant, json!(value), "stored constant, not computed".into())),
    }
}

pub fn run_claim(reg: &Registry, store: &PresetStore, id: &str, cfg: &RunConfig) -> Result<ClaimResult, RegistryError> {
    let claim = reg.claim(id)?;
    let start = Instant::now();
    let (status, value, detail) = match evaluate(reg, store, claim, cfg) {
        Ok(r) => r,
        Err(e) => (ClaimStatus::Fail, Value::Null, format!("error: {e}")),
    };
    Ok(ClaimResult {
        id: claim.id.clone(),
        status,
        computational: claim.plan.is_computational(),
        value,
        expected: claim.expected.clone(),
        detail,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Runs the given claims in parallel; results keep the input order.
pub fn run_claims(
    reg: &Registry,
    store: &PresetStore,
    ids: &[&str],
    cfg: &RunConfig,
) -> Result<Vec<ClaimResult>, RegistryError> {
    for id in ids {
        reg.claim(id)?;
    }
    ids.par_iter().map(|id| run_claim(reg, store, id, cfg)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseRow {
    pub label: String,
    pub triple: String,
    pub display: String,
    pub route: Route,
    pub dim_m: usize,
    pub dim_p: usize,
    pub expected: FVerdict,
    pub computed: FVerdict,
    pub f_lower: usize,
    pub f_value: Option<usize>,
    pub survivor: bool,
}

impl CaseRow {
    pub fn agrees(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseTable {
    pub rows: Vec<CaseRow>,
    pub survivors: Vec<String>,
}

impl CaseTable {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(CaseRow::agrees)
    }

    /// Survivors are exactly [`SURVIVORS`].
    pub fn survivors_match(&self) -> bool {
        let mut a: Vec<&str> = self.survivors.iter().map(String::as_str).collect();
        let mut b = SURVIVORS.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

fn verdict_from_report(rep: &InvariantReport) -> FVerdict {
    match rep.value {
        Some(0) => FVerdict::Eq0,
        Some(1) => FVerdict::Eq1,
        Some(3) if rep.best() == 3 => FVerdict::Eq3,
        _ if rep.best() >= 2 => FVerdict::Gt1,
        _ => FVerdict::Undetermined,
    }
}

fn classify_case(store: &PresetStore, case: &CaseEntry, cfg: &RunConfig) -> Result<CaseRow, RegistryError> {
    let tp = store.triple(&case.triple)?;
    let d = dimension_obstruction(&tp.triple);
    let (computed, lower, value) = match case.route {
        Route::Dimension => {
            let v = if !d.f0_allowed && !d.f1_allowed {
                FVerdict::Gt1
            } else {
                FVerdict::Undetermined
            };
            (v, if v == FVerdict::Gt1 { 2 } else { 0 }, None)
        }
        Route::Witness | Route::IdealSplit => {
            if case.route == Route::IdealSplit && !ideal_split(&tp.triple) {
                (FVerdict::Undetermined, 0, None)
            } else {
                let opts = SampleOptions::new(cfg.samples(None, DEFAULT_SAMPLES), cfg.seed);
                let rep = compute_f(&tp.triple, &tp.hints, &opts)?;
                (verdict_from_report(&rep), rep.certified_lower, rep.value)
            }
        }
    };
    Ok(CaseRow {
        label: case.label.clone(),
        triple: case.triple.clone(),
        display: tp.display.clone(),
        route: case.route,
        dim_m: d.dim_m,
        dim_p: d.dim_p,
        expected: case.expected,
        computed,
        f_lower: lower,
        f_value: value,
        survivor: computed == FVerdict::Eq1,
    })
}

/// Replays every case of the classification by its registered route.
pub fn classify_triples(reg: &Registry, store: &PresetStore, cfg: &RunConfig) -> Result<CaseTable, RegistryError> {
    let rows: Vec<CaseRow> = reg
        .cases
        .par_iter()
        .map(|c| classify_case(store, c, cfg))
        .collect::<Result<_, _>>()?;
    let survivors = rows.iter().filter(|r| r.survivor).map(|r| r.triple.clone()).collect();
    Ok(CaseTable { rows, survivors })
}
