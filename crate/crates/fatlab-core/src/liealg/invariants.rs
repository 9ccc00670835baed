//! Centralizer dimensions and the invariants b and f.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::hints::{HintKind, HintTarget, WitnessHint};
use super::intmat::IntMat;
use super::presentation::{PairPresentation, Subspace, TriplePresentation};
use super::LieError;
use crate::exactnum::{rank_int, rank_mod_p, CaseRank, GenericRank, MatQ, PolyMat, Rational};

pub const DEFAULT_SEED: u64 = 0x5eed_f47;
const CHUNK: usize = 64;
const COEFF_RANGE: i64 = 9;

fn bracket_rows(x: &IntMat, target: &Subspace) -> Vec<Vec<i64>> {
    target.ints().iter().map(|t| x.bracket(t).upper()).collect()
}

/// `dim {y ∈ span(target) : [x, y] = 0}`, exactly.
pub fn centralizer_dim(x: &MatQ, target: &Subspace) -> Result<usize, LieError> {
    if x.is_zero() {
        return Err(LieError::ZeroVector);
    }
    if target.dim() == 0 {
        return Ok(0);
    }
    let (xi, _) = IntMat::from_matq(x);
    Ok(target.dim() - rank_int(&bracket_rows(&xi, target)))
}

/// Basis of the centralizer of `x` inside `span(target)`.
pub fn centralizer_basis(x: &MatQ, target: &Subspace) -> Result<Vec<MatQ>, LieError> {
    if x.is_zero() {
        return Err(LieError::ZeroVector);
    }
    let (xi, _) = IntMat::from_matq(x);
    let rows = bracket_rows(&xi, target);
    let cols = target.dim();
    // kernel of the map c ↦ Σ c_j [x, t_j]: transpose so that unknowns are columns
    let width = rows.first().map_or(0, Vec::len);
    let eqs: Vec<Vec<Rational>> = (0..width)
        .map(|r| rows.iter().map(|row| Rational::integer(row[r])).collect())
        .collect();
    let ker = crate::exactnum::kernel_rows(&eqs, cols);
    Ok(ker.iter().map(|c| target.combination(c)).collect())
}

/// Bound on a mod-p screened centralizer dimension; exact whenever it is reported as a new maximum.
fn sampled_dim(x: &IntMat, target: &Subspace, floor: usize) -> Option<usize> {
    let rows = bracket_rows(x, target);
    let upper = target.dim() - rank_mod_p(&rows);
    if upper <= floor {
        return None;
    }
    Some(target.dim() - rank_int(&rows))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SampleSummary {
    pub samples: usize,
    pub max: usize,
    /// Integer coordinates, in the source basis, of the first sample attaining `max`.
    pub argmax: Option<Vec<i64>>,
}

/// Maximum of `dim Z_target(x)` over `samples` random integer combinations `x` of `source`.
///
/// Chunks of samples use independent ChaCha streams of the same seed, so the
/// result does not depend on the thread count.
pub fn sample_max(source: &Subspace, target: &Subspace, samples: usize, seed: u64) -> SampleSummary {
    if samples == 0 || source.dim() == 0 || target.dim() == 0 {
        return SampleSummary {
            samples,
            ..Default::default()
        };
    }
    let chunks = samples.div_ceil(CHUNK);
    let results: Vec<(usize, Option<Vec<i64>>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut best = (0usize, None);
            for _ in 0..count {
                let coeffs = loop {
                    let v: Vec<i64> = (0..source.dim())
                        .map(|_| rng.random_range(-COEFF_RANGE..=COEFF_RANGE))
                        .collect();
                    if v.iter().any(|&a| a != 0) {
                        break v;
                    }
                };
                let x = source.int_combination(&coeffs);
                let floor = if best.1.is_none() { 0 } else { best.0 };
                let exact = if best.1.is_none() {
                    Some(target.dim() - rank_int(&bracket_rows(&x, target)))
                } else {
                    sampled_dim(&x, target, floor)
                };
                if let Some(d) = exact {
                    if best.1.is_none() || d > best.0 {
                        best = (d, Some(coeffs));
                    }
                }
            }
            best
        })
        .collect();
    let mut out = SampleSummary {
        samples,
        ..Default::default()
    };
    for (d, arg) in results {
        if out.argmax.is_none() || d > out.max {
            out.max = d;
            out.argmax = arg;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceCase {
    pub assignment: Vec<(String, Rational)>,
    pub rank: usize,
    pub centralizer_dim: usize,
    pub rank_constant: bool,
    pub degenerate_locus: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HintEvaluation {
    pub kind: HintKind,
    pub target: HintTarget,
    pub value: usize,
    /// The hint determines the maximum in its direction.
    pub certifies: bool,
    pub cases: Vec<SliceCase>,
    pub provenance: String,
}

fn evaluate_hint(
    hint: &WitnessHint,
    n: usize,
    source: &Subspace,
    target: &Subspace,
) -> Result<HintEvaluation, LieError> {
    hint.validate_shape()?;
    let label = hint.target.label();
    let mut eval = HintEvaluation {
        kind: hint.kind,
        target: hint.target,
        value: 0,
        certifies: false,
        cases: Vec::new(),
        provenance: hint.provenance.clone(),
    };
    match hint.kind {
        HintKind::ExplicitVector | HintKind::TransitivityClaim => {
            for x in hint.vector_matrices(n)? {
                if !source.contains(&x) {
                    return Err(LieError::HintOutsideSpace(label.into()));
                }
                eval.value = eval.value.max(centralizer_dim(&x, target)?);
            }
            eval.certifies = hint.kind == HintKind::TransitivityClaim;
        }
        HintKind::Slice => {
            let spec = hint.slice.as_ref().expect("validated");
            let gens = spec
                .generators
                .iter()
                .map(|g| super::hints::to_matrix(n, g))
                .collect::<Result<Vec<_>, _>>()?;
            for g in &gens {
                if !source.contains(g) {
                    return Err(LieError::HintOutsideSpace(label.into()));
                }
            }
            let coeffs: Vec<MatQ> = gens
                .iter()
                .map(|g| {
                    let cols: Vec<Vec<Rational>> = target
                        .basis()
                        .iter()
                        .map(|t| super::presentation::flatten(&g.commutator(t).expect("square")))
                        .collect();
                    let h = cols.first().map_or(0, Vec::len);
                    let mut m = MatQ::zeros(h, cols.len());
                    for (j, c) in cols.iter().enumerate() {
                        for (i, v) in c.iter().enumerate() {
                            m[(i, j)] = v.clone();
                        }
                    }
                    m
                })
                .collect();
            let pm = PolyMat::linear(spec.vars.clone(), &coeffs)?;
            let case_vars: Vec<&str> = spec.case_vars.iter().map(String::as_str).collect();
            let mut all_constant = true;
            for case in pm.case_split(&case_vars)? {
                let (cases, constant) = refine_case(&case, target.dim());
                all_constant &= constant;
                for c in cases {
                    eval.value = eval.value.max(c.centralizer_dim);
                    eval.cases.push(c);
                }
            }
            eval.certifies = all_constant;
        }
    }
    Ok(eval)
}

fn slice_case(assignment: Vec<(String, Rational)>, r: &GenericRank, dim: usize) -> SliceCase {
    SliceCase {
        assignment,
        rank: r.rank,
        centralizer_dim: dim - r.rank,
        rank_constant: r.rank_constant_over_reals,
        degenerate_locus: r.degenerate_locus.clone(),
    }
}

/// Resolves a case whose rank may drop: when the degenerate locus is a
/// polynomial in one variable whose real roots are all rational, the rank is
/// generic off those roots and is recomputed exactly at each of them.
fn refine_case(case: &CaseRank, dim: usize) -> (Vec<SliceCase>, bool) {
    let base = slice_case(case.assignment.clone(), &case.result, dim);
    if case.result.rank_constant_over_reals {
        return (vec![base], true);
    }
    let resolved = case.result.last_pivot.as_ref().and_then(|p| {
        let var = p.single_variable()?;
        let (roots, rest) = p.deflate_rational_roots(var)?;
        if !(rest.is_constant() || rest.never_vanishes_over_reals()) {
            return None;
        }
        let name = case.matrix.vars()[var].clone();
        let mut out = vec![SliceCase {
            rank_constant: true,
            ..base.clone()
        }];
        for r in roots {
            let sub = case.matrix.substitute(&name, &r).ok()?.generic_rank();
            if !sub.rank_constant_over_reals {
                return None;
            }
            let mut a = case.assignment.clone();
            a.push((name.clone(), r));
            out.push(slice_case(a, &sub, dim));
        }
        Some(out)
    });
    match resolved {
        Some(out) => (out, true),
        None => (vec![base], false),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    LowerBound,
    /// Sampling found a vector beating a certifying hint: the hint is wrong.
    Contradicted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Hints,
    IdealSplit,
    SamplingOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectionReport {
    pub target: HintTarget,
    pub source_dim: usize,
    pub target_dim: usize,
    pub hint_lower: usize,
    pub sampling: SampleSummary,
    /// Value fixed by a certifying hint.
    pub certified_value: Option<usize>,
    pub hints: Vec<HintEvaluation>,
}

impl DirectionReport {
    fn lower(&self) -> usize {
        self.hint_lower.max(self.sampling.max)
    }

    fn contradicted(&self) -> bool {
        self.certified_value.is_some_and(|v| v < self.lower())
    }
}

/// Result of computing b or f.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub invariant: String,
    pub name: String,
    pub certified_lower: usize,
    pub sampled_max: usize,
    pub samples: usize,
    pub claimed: Option<usize>,
    pub status: Status,
    pub route: Route,
    /// Exact value, conditional on the certifying hints.
    pub value: Option<usize>,
    pub directions: Vec<DirectionReport>,
}

pub type BReport = InvariantReport;
pub type FReport = InvariantReport;

impl InvariantReport {
    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }

    /// The certified value, or the certified lower bound.
    pub fn best(&self) -> usize {
        self.value.unwrap_or(self.certified_lower)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SampleOptions {
    pub samples: usize,
    pub seed: u64,
    pub claimed: Option<usize>,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            samples: 256,
            seed: DEFAULT_SEED,
            claimed: None,
        }
    }
}

impl SampleOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        SampleOptions {
            samples,
            seed,
            claimed: None,
        }
    }

    pub fn claimed(mut self, v: usize) -> Self {
        self.claimed = Some(v);
        self
    }
}

fn direction(
    target_kind: HintTarget,
    n: usize,
    source: &Subspace,
    target: &Subspace,
    hints: &[WitnessHint],
    opts: &SampleOptions,
    stream: u64,
) -> Result<DirectionReport, LieError> {
    let mut evals = Vec::new();
    for h in hints.iter().filter(|h| h.target == target_kind) {
        evals.push(evaluate_hint(h, n, source, target)?);
    }
    let hint_lower = evals.iter().map(|e| e.value).max().unwrap_or(0);
    let certified_value = evals
        .iter()
        .filter(|e| e.certifies)
        .map(|e| e.value)
        .min();
    let sampling = sample_max(source, target, opts.samples, opts.seed ^ stream);
    Ok(DirectionReport {
        target: target_kind,
        source_dim: source.dim(),
        target_dim: target.dim(),
        hint_lower,
        sampling,
        certified_value,
        hints: evals,
    })
}

fn assemble(
    invariant: &str,
    name: &str,
    opts: &SampleOptions,
    directions: Vec<DirectionReport>,
    forced: Option<usize>,
) -> InvariantReport {
    let certified_lower = directions.iter().map(DirectionReport::lower).max().unwrap_or(0);
    let sampled_max = directions.iter().map(|d| d.sampling.max).max().unwrap_or(0);
    let contradicted = directions.iter().any(DirectionReport::contradicted);
    let all_certified = directions.iter().all(|d| d.certified_value.is_some());
    let (status, value, route) = if let Some(v) = forced {
        (Status::Certified, Some(v), Route::IdealSplit)
    } else if contradicted {
        (Status::Contradicted, None, Route::Hints)
    } else if all_certified {
        let v = directions.iter().filter_map(|d| d.certified_value).max();
        (Status::Certified, v, Route::Hints)
    } else if directions.iter().all(|d| d.hints.is_empty()) {
        (Status::LowerBound, None, Route::SamplingOnly)
    } else {
        (Status::LowerBound, None, Route::Hints)
    };
    InvariantReport {
        invariant: invariant.into(),
        name: name.into(),
        certified_lower: certified_lower.max(value.unwrap_or(0)),
        sampled_max,
        samples: opts.samples,
        claimed: opts.claimed,
        status,
        route,
        value,
        directions,
    }
}

/// `b(h ⊂ g) = max_{x ∈ h⊥ \ 0} dim Z_{h⊥}(x)`.
pub fn compute_b(pair: &PairPresentation, hints: &[WitnessHint], opts: &SampleOptions) -> Result<BReport, LieError> {
    let n = pair.g().ambient_dim();
    let d = direction(HintTarget::Perp, n, pair.perp(), pair.perp(), hints, opts, 0)?;
    Ok(assemble("b", pair.name(), opts, vec![d], None))
}

/// All brackets between the bases of `m` and `p` vanish.
pub fn ideal_split(triple: &TriplePresentation) -> bool {
    triple
        .m()
        .ints()
        .iter()
        .all(|a| triple.p().ints().iter().all(|b| a.bracket(b).is_zero()))
}

/// `f = max(max_{x ∈ p} dim Z_m(x), max_{y ∈ m} dim Z_p(y))`.
pub fn compute_f(triple: &TriplePresentation, hints: &[WitnessHint], opts: &SampleOptions) -> Result<FReport, LieError> {
    let n = triple.g().ambient_dim();
    let dp = direction(HintTarget::P, n, triple.p(), triple.m(), hints, opts, 1)?;
    let dm = direction(HintTarget::M, n, triple.m(), triple.p(), hints, opts, 2)?;
    let forced = ideal_split(triple).then(|| triple.m().dim().max(triple.p().dim()));
    Ok(assemble("f", triple.name(), opts, vec![dp, dm], forced))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionObstruction {
    pub dim_m: usize,
    pub dim_p: usize,
    pub f0_allowed: bool,
    pub f1_allowed: bool,
}

pub fn dimension_obstruction(triple: &TriplePresentation) -> DimensionObstruction {
    dimension_rule(triple.m().dim(), triple.p().dim())
}

pub fn dimension_rule(dim_m: usize, dim_p: usize) -> DimensionObstruction {
    DimensionObstruction {
        dim_m,
        dim_p,
        f1_allowed: dim_p % 2 == 1 && dim_m <= dim_p,
        f0_allowed: dim_p % 2 == 0 && dim_m + 1 <= dim_p,
    }
}

/// Jacobi identity on every basis triple, exactly.
pub fn jacobi_holds(basis: &Subspace) -> bool {
    let b = basis.ints();
    (0..b.len()).all(|i| {
        (i + 1..b.len()).all(|j| {
            let bij = b[i].bracket(&b[j]);
            (j + 1..b.len()).all(|k| {
                let t1 = bij.bracket(&b[k]);
                let t2 = b[j].bracket(&b[k]).bracket(&b[i]);
                let t3 = b[k].bracket(&b[i]).bracket(&b[j]);
                t1.data()
                    .iter()
                    .zip(t2.data())
                    .zip(t3.data())
                    .all(|((a, b), c)| a + b + c == 0)
            })
        })
    })
}
