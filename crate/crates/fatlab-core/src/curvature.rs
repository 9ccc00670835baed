//! Zero-curvature planes of normal homogeneous and Cheeger-deformed metrics,
//! Property (P) testing and Ric_k certificates.
//!
//! Curvature of a deformed metric is never evaluated; only the flat-plane
//! criterion is used. For the normal metric the sectional curvature is exact:
//! `sec(x, y) = ¼|[x,y]_{h⊥}|² + |[x,y]_h|²` for orthonormal `x, y ∈ h⊥`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{solve, Echelon, MatQ, Rational};
use crate::liealg::{
    flatten, AlgebraPresentation, IntMat, LieError, PairPresentation, Subspace, TriplePresentation,
};

#[derive(Debug, Error)]
pub enum CurvatureError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("vector has a nonzero h-component")]
    OutsideHorizontal,
    #[error("inputs are linearly dependent")]
    Dependent,
    #[error("inputs are not orthonormal")]
    NotOrthonormal,
    #[error("t must be positive")]
    NonPositiveT,
    #[error("the base pair is not declared to satisfy Property (P)")]
    PropertyPUndeclared,
    #[error("k = {k} is not below dim G/H = {dim}")]
    KTooLarge { k: usize, dim: usize },
}

/// Cheeger parameter: a positive rational, or the normal metric (`t = ∞`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Deformation {
    Finite(Rational),
    Normal,
}

impl std::fmt::Display for Deformation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Deformation::Finite(t) => write!(f, "{t}"),
            Deformation::Normal => f.write_str("inf"),
        }
    }
}

/// The metric `q_t` on `G/H` for a triple `h ⊂ k ⊂ g`.
#[derive(Clone, Debug)]
pub struct DeformedMetric<'a> {
    triple: &'a TriplePresentation,
    t: Deformation,
    base_property_p: bool,
}

impl<'a> DeformedMetric<'a> {
    /// `base_property_p` records whether `k ⊂ g` is flagged as satisfying (P).
    pub fn new(triple: &'a TriplePresentation, t: Deformation, base_property_p: bool) -> Result<Self, CurvatureError> {
        if let Deformation::Finite(v) = &t {
            if !v.is_positive() {
                return Err(CurvatureError::NonPositiveT);
            }
        }
        Ok(DeformedMetric {
            triple,
            t,
            base_property_p,
        })
    }

    pub fn normal(triple: &'a TriplePresentation) -> Self {
        DeformedMetric {
            triple,
            t: Deformation::Normal,
            base_property_p: false,
        }
    }

    pub fn triple(&self) -> &TriplePresentation {
        self.triple
    }

    pub fn t(&self) -> &Deformation {
        &self.t
    }

    pub fn base_property_p(&self) -> bool {
        self.base_property_p
    }

    /// Weight `t/(t+1)` on `m`; 1 for the normal metric.
    pub fn m_weight(&self) -> Rational {
        match &self.t {
            Deformation::Finite(t) => t / &(t + &Rational::one()),
            Deformation::Normal => Rational::one(),
        }
    }

    fn horizontal_parts(&self, x: &MatQ) -> Result<(MatQ, MatQ), CurvatureError> {
        let (h, m, p) = self.triple.decompose(x)?;
        if !h.is_zero() {
            return Err(CurvatureError::OutsideHorizontal);
        }
        Ok((m, p))
    }
}

/// `q_t(X, Y) = t/(t+1)⟨X_m, Y_m⟩ + ⟨X_p, Y_p⟩`.
pub fn metric_qt(x: &MatQ, y: &MatQ, dm: &DeformedMetric) -> Result<Rational, CurvatureError> {
    let g = dm.triple.g();
    let (xm, xp) = dm.horizontal_parts(x)?;
    let (ym, yp) = dm.horizontal_parts(y)?;
    Ok(dm.m_weight() * g.inner(&xm, &ym) + g.inner(&xp, &yp))
}

fn independent(x: &MatQ, y: &MatQ) -> bool {
    crate::exactnum::rank_rows(&[flatten(x), flatten(y)]) == 2
}

/// Zero-curvature test for the plane spanned by `x, y ∈ m ⊕ p`.
///
/// Normal metric: `[x, y] = 0`. Finite `t` (base pair with (P)):
/// `[x, y] = [x_k, y_k] = [x_p, y_p] = 0`.
pub fn flat_plane_test(x: &MatQ, y: &MatQ, dm: &DeformedMetric) -> Result<bool, CurvatureError> {
    if !independent(x, y) {
        return Err(CurvatureError::Dependent);
    }
    let (xm, xp) = dm.horizontal_parts(x)?;
    let (ym, yp) = dm.horizontal_parts(y)?;
    if !x.commutator(y).map_err(LieError::from)?.is_zero() {
        return Ok(false);
    }
    match dm.t {
        Deformation::Normal => Ok(true),
        Deformation::Finite(_) => {
            if !dm.base_property_p {
                return Err(CurvatureError::PropertyPUndeclared);
            }
            let k_ok = xm.commutator(&ym).map_err(LieError::from)?.is_zero();
            let p_ok = xp.commutator(&yp).map_err(LieError::from)?.is_zero();
            Ok(k_ok && p_ok)
        }
    }
}

/// Orthogonal projection of `z` onto `span(basis)`.
pub fn project(g: &AlgebraPresentation, basis: &Subspace, z: &MatQ) -> MatQ {
    if basis.dim() == 0 {
        return MatQ::zeros(z.rows(), z.cols());
    }
    let gram = g.gram(basis.basis(), basis.basis());
    let rhs: Vec<Rational> = basis.basis().iter().map(|b| g.inner(b, z)).collect();
    let c = solve(&gram, &rhs).expect("Gram matrix of a basis is invertible");
    basis.combination(&c)
}

/// `⟨R(x, y)y, x⟩ = ¼|[x,y]_{h⊥}|² + |[x,y]_h|²` for the normal metric of `h ⊂ g`.
pub fn curvature_numerator(x: &MatQ, y: &MatQ, pair: &PairPresentation) -> Result<Rational, CurvatureError> {
    let g = pair.g();
    let z = x.commutator(y).map_err(LieError::from)?;
    let zh = project(g, pair.h(), &z);
    let zp = &z - &zh;
    Ok(g.norm2(&zp) / Rational::integer(4) + g.norm2(&zh))
}

fn check_in_perp(pair: &PairPresentation, x: &MatQ) -> Result<(), CurvatureError> {
    if !pair.perp().contains(x) {
        return Err(CurvatureError::OutsideHorizontal);
    }
    Ok(())
}

/// Sectional curvature of the plane spanned by independent `x, y ∈ h⊥`.
pub fn sectional(x: &MatQ, y: &MatQ, pair: &PairPresentation) -> Result<Rational, CurvatureError> {
    check_in_perp(pair, x)?;
    check_in_perp(pair, y)?;
    let g = pair.g();
    let area = g.norm2(x) * g.norm2(y) - g.inner(x, y).square();
    if area.is_zero() {
        return Err(CurvatureError::Dependent);
    }
    Ok(curvature_numerator(x, y, pair)? / area)
}

/// Normal homogeneous sectional curvature for orthonormal `x, y ∈ h⊥`.
pub fn normal_sec(x: &MatQ, y: &MatQ, pair: &PairPresentation) -> Result<Rational, CurvatureError> {
    check_in_perp(pair, x)?;
    check_in_perp(pair, y)?;
    let g = pair.g();
    if !g.norm2(x).is_one() || !g.norm2(y).is_one() || !g.inner(x, y).is_zero() {
        return Err(CurvatureError::NotOrthonormal);
    }
    curvature_numerator(x, y, pair)
}

/// Primitive integer basis of `{c : Σ c_j cols[j] = 0}`.
fn int_kernel(cols: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let n = cols.len();
    let len = cols.first().map_or(0, Vec::len);
    let rows: Vec<Vec<BigInt>> = (0..len)
        .map(|r| cols.iter().map(|c| BigInt::from(c[r])).collect())
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| x != &BigInt::from(0)))
        .collect();
    Echelon::from_integer_rows(rows, n)
        .kernel()
        .iter()
        .map(|v| {
            let l = crate::exactnum::lcm_denominators(v.iter());
            let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            let g = ints.iter().fold(BigInt::from(0), |a, b| num_integer::Integer::gcd(&a, b));
            ints.into_iter().map(|x| x / &g).collect()
        })
        .collect()
}

fn to_i64s(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}

/// Tester for Property (P) of a pair `k ⊂ g`: `[x, y]_k = 0 ⇒ [x, y] = 0` on `p = k⊥`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PMode {
    Witness,
    Falsify,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PVerdict {
    HoldsOnSamples { checked: usize },
    Counterexample { x: MatQ, y: MatQ },
    Inconclusive { checked: usize },
}

impl PVerdict {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, PVerdict::Counterexample { .. })
    }
}

/// For fixed `x ∈ p`, every `y` in the kernel of `y ↦ [x, y]_k` must commute with `x`.
fn p_check_at(pair: &PairPresentation, x: &IntMat) -> Option<MatQ> {
    let g = pair.g();
    let p = pair.perp();
    let cols: Vec<Vec<i64>> = p
        .ints()
        .iter()
        .map(|pj| {
            let b = x.bracket(pj);
            pair.h()
                .ints()
                .iter()
                .map(|hi| g.ip_int(&b, hi) as i64)
                .collect()
        })
        .collect();
    let kernel = if pair.h().dim() == 0 {
        (0..p.dim())
            .map(|j| (0..p.dim()).map(|i| BigInt::from((i == j) as i64)).collect())
            .collect()
    } else {
        int_kernel(&cols)
    };
    for c in kernel {
        let c = to_i64s(&c)?;
        let y = p.int_combination(&c);
        if !x.bracket(&y).is_zero() {
            return Some(y.to_matq());
        }
    }
    None
}

fn random_coeffs(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
        if v.iter().any(|&a| a != 0) {
            return v;
        }
    }
}

pub fn property_p_test(
    pair: &PairPresentation,
    mode: PMode,
    intermediate: Option<&[MatQ]>,
    budget: usize,
    seed: u64,
) -> Result<PVerdict, CurvatureError> {
    if mode == PMode::Falsify {
        if let Some(f) = intermediate {
            return falsify_with(pair, f, budget, seed);
        }
    }
    let p = pair.perp();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut candidates: Vec<Vec<i64>> = (0..p.dim())
        .map(|j| (0..p.dim()).map(|i| (i == j) as i64).collect())
        .collect();
    candidates.extend((0..budget).map(|_| random_coeffs(&mut rng, p.dim())));
    for c in candidates {
        let x = p.int_combination(&c);
        checked += 1;
        if let Some(y) = p_check_at(pair, &x) {
            return Ok(PVerdict::Counterexample { x: x.to_matq(), y });
        }
    }
    Ok(match mode {
        PMode::Witness => PVerdict::HoldsOnSamples { checked },
        PMode::Falsify => PVerdict::Inconclusive { checked },
    })
}

/// With `h ⊂ f ⊂ g`: `x ∈ f⊥`, `y ∈ h⊥ ∩ f` give `[x, y] ∈ f⊥`, so `[x, y]_h = 0`.
fn falsify_with(pair: &PairPresentation, f: &[MatQ], budget: usize, seed: u64) -> Result<PVerdict, CurvatureError> {
    let g = pair.g();
    let f_perp = Subspace::new(g.complement(g.basis(), f));
    let inner = Subspace::new(g.complement(f, pair.h().basis()));
    let h = pair.h();
    let test = |x: &IntMat, y: &IntMat| -> Option<(MatQ, MatQ)> {
        let b = x.bracket(y);
        let in_h = h.ints().iter().any(|hi| g.ip_int(&b, hi) != 0);
        (!b.is_zero() && !in_h).then(|| (x.to_matq(), y.to_matq()))
    };
    let mut checked = 0;
    for x in f_perp.ints() {
        for y in inner.ints() {
            checked += 1;
            if let Some((x, y)) = test(x, y) {
                return Ok(PVerdict::Counterexample { x, y });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        if f_perp.dim() == 0 || inner.dim() == 0 {
            break;
        }
        let x = f_perp.int_combination(&random_coeffs(&mut rng, f_perp.dim()));
        let y = inner.int_combination(&random_coeffs(&mut rng, inner.dim()));
        checked += 1;
        if let Some((x, y)) = test(&x, &y) {
            return Ok(PVerdict::Counterexample { x, y });
        }
    }
    Ok(PVerdict::Inconclusive { checked })
}

/// Result of a Ric_k certificate with its falsification search.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub triple: String,
    pub t: String,
    pub k: usize,
    pub b_fiber: usize,
    pub b_base: usize,
    pub f: usize,
    pub samples: usize,
    pub falsified: bool,
    /// A frame of `k + 1` vectors spanning only flat planes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<MatQ>>,
}

/// Integer coordinates over `m ⊕ p` (m basis first).
struct Horizontal<'a> {
    triple: &'a TriplePresentation,
    dm_: usize,
    normal: bool,
}

impl Horizontal<'_> {
    fn dim(&self) -> usize {
        self.dm_ + self.triple.p().dim()
    }

    fn parts(&self, c: &[i64]) -> (IntMat, IntMat) {
        let (cm, cp) = c.split_at(self.dm_);
        (self.triple.m().int_combination(cm), self.triple.p().int_combination(cp))
    }

    fn basis(&self, j: usize) -> &IntMat {
        if j < self.dm_ {
            &self.triple.m().ints()[j]
        } else {
            &self.triple.p().ints()[j - self.dm_]
        }
    }

    /// Columns of the linear conditions on `y` for the plane `(v, y)` to be flat.
    fn conditions(&self, v: &[i64], out: &mut [Vec<i64>]) {
        let n = self.triple.g().ambient_dim();
        let (vm, vp) = self.parts(v);
        let full = IntMat::combination(n, &[1, 1], &[vm.clone(), vp.clone()]);
        for (j, col) in out.iter_mut().enumerate() {
            let b = self.basis(j);
            col.extend(full.bracket(b).upper());
            if !self.normal {
                let partial = if j < self.dm_ { vm.bracket(b) } else { vp.bracket(b) };
                col.extend(partial.upper());
            }
        }
    }

    /// Greedy exact search for `size` vectors spanning only flat planes.
    fn flat_frame(&self, start: Vec<i64>, size: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<i64>>> {
        let mut frame = vec![start];
        while frame.len() < size {
            let mut cols = vec![Vec::new(); self.dim()];
            for v in &frame {
                self.conditions(v, &mut cols);
            }
            let ker = int_kernel(&cols);
            if ker.len() <= frame.len() {
                return None;
            }
            let ker: Vec<Vec<i64>> = ker.iter().map(|c| to_i64s(c)).collect::<Option<_>>()?;
            let mut found = None;
            for _ in 0..4 {
                let w = random_coeffs(rng, ker.len());
                let mut y = vec![0i64; self.dim()];
                for (a, kv) in w.iter().zip(&ker) {
                    for (yi, ki) in y.iter_mut().zip(kv) {
                        *yi = yi.checked_add(a.checked_mul(*ki)?)?;
                    }
                }
                let mut rows = frame.clone();
                rows.push(y.clone());
                if crate::exactnum::rank_int(&rows) == rows.len() {
                    found = Some(y);
                    break;
                }
            }
            frame.push(found?);
        }
        Some(frame)
    }
}

const SEARCH_CHUNK: usize = 256;

/// Certificate for `k = b_fiber + b_base + f − 1` with an exact randomized search
/// for a flat `(k+1)`-frame in `m ⊕ p`.
///
/// Each sample starts from a random vector supported on `m ⊕ p`, `m` or `p`, and
/// greedily extends it inside the linear space of vectors spanning flat planes
/// with every frame member, so a returned frame is flat by construction.
pub fn ric_k_certificate(
    dm: &DeformedMetric,
    b_fiber: usize,
    b_base: usize,
    f: usize,
    search_budget: usize,
    seed: u64,
) -> Result<Certificate, CurvatureError> {
    if !dm.base_property_p {
        return Err(CurvatureError::PropertyPUndeclared);
    }
    let triple = dm.triple;
    let k = (b_fiber + b_base + f).saturating_sub(1);
    let dim = triple.m().dim() + triple.p().dim();
    if k >= dim {
        return Err(CurvatureError::KTooLarge { k, dim });
    }
    let hz = Horizontal {
        triple,
        dm_: triple.m().dim(),
        normal: dm.t == Deformation::Normal,
    };
    let chunks = search_budget.div_ceil(SEARCH_CHUNK);
    let found: Vec<Option<Vec<Vec<i64>>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = SEARCH_CHUNK.min(search_budget - c * SEARCH_CHUNK);
            for _ in 0..count {
                let mut start = random_coeffs(&mut rng, hz.dim());
                match rng.random_range(0..3) {
                    0 => start[hz.dm_..].iter_mut().for_each(|x| *x = 0),
                    1 => start[..hz.dm_].iter_mut().for_each(|x| *x = 0),
                    _ => {}
                }
                if start.iter().all(|&x| x == 0) {
                    continue;
                }
                if let Some(frame) = hz.flat_frame(start, k + 1, &mut rng) {
                    return Some(frame);
                }
            }
            None
        })
        .collect();
    let witness = found.into_iter().flatten().next().map(|frame| {
        frame
            .iter()
            .map(|c| {
                let (m, p) = hz.parts(c);
                &m.to_matq() + &p.to_matq()
            })
            .collect::<Vec<_>>()
    });
    if let Some(w) = &witness {
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                debug_assert!(flat_plane_test(&w[i], &w[j], dm).unwrap_or(false));
            }
        }
    }
    Ok(Certificate {
        triple: triple.name().to_string(),
        t: dm.t.to_string(),
        k,
        b_fiber,
        b_base,
        f,
        samples: search_budget,
        falsified: witness.is_some(),
        witness,
    })
}

/// Floating-point model of `h⊥` for curvature sampling.
struct FloatPerp {
    n: usize,
    weights: Vec<f64>,
    perp: Vec<Vec<f64>>,
    h: Vec<Vec<f64>>,
}

fn weights(g: &AlgebraPresentation) -> Vec<f64> {
    let n = g.ambient_dim();
    let mut w = vec![0.0; n * n];
    for (b, s) in g.ideal_blocks().iter().zip(g.metric_scales()) {
        for i in b.offset..b.offset + b.size {
            for j in b.offset..b.offset + b.size {
                w[i * n + j] = s.to_f64();
            }
        }
    }
    w
}

impl FloatPerp {
    fn new(pair: &PairPresentation) -> Self {
        let g = pair.g();
        let n = g.ambient_dim();
        let weights = weights(g);
        let mut fp = FloatPerp {
            n,
            weights,
            perp: Vec::new(),
            h: Vec::new(),
        };
        fp.perp = fp.orthonormalize(pair.perp().basis());
        fp.h = fp.orthonormalize(pair.h().basis());
        fp
    }

    fn ip(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).zip(&self.weights).map(|((x, y), w)| x * y * w).sum()
    }

    fn orthonormalize(&self, basis: &[MatQ]) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for m in basis {
            let mut v = m.to_f64();
            for u in &out {
                let c = self.ip(&v, u);
                v.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
            }
            let nv = self.ip(&v, &v).sqrt();
            v.iter_mut().for_each(|a| *a /= nv);
            out.push(v);
        }
        out
    }

    fn bracket(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let (aik, bik) = (a[i * n + k], b[i * n + k]);
                if aik == 0.0 && bik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += aik * b[k * n + j] - bik * a[k * n + j];
                }
            }
        }
        out
    }

    fn sec(&self, x: &[f64], y: &[f64]) -> f64 {
        let z = self.bracket(x, y);
        let total = self.ip(&z, &z);
        let zh: f64 = self.h.iter().map(|u| self.ip(&z, u).powi(2)).sum();
        0.25 * (total - zh) + zh
    }

    fn combine(&self, c: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; self.n * self.n];
        for (a, u) in c.iter().zip(&self.perp) {
            v.iter_mut().zip(u).for_each(|(x, y)| *x += a * y);
        }
        v
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Ric2Summary {
    pub samples: usize,
    pub min_sum: f64,
    pub all_positive: bool,
}

/// Samples Gaussian orthonormal triples `{x, e1, e2}` in `h⊥` and records
/// `min sec(x, e1) + sec(x, e2)` for the normal metric.
pub fn ric2_sampling(pair: &PairPresentation, samples: usize, seed: u64) -> Ric2Summary {
    let fp = FloatPerp::new(pair);
    let d = fp.perp.len();
    let chunks = samples.div_ceil(SEARCH_CHUNK);
    let mins: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = SEARCH_CHUNK.min(samples - c * SEARCH_CHUNK);
            let mut best = f64::INFINITY;
            for _ in 0..count {
                let mut frame: Vec<Vec<f64>> = Vec::with_capacity(3);
                while frame.len() < 3 {
                    let mut v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
                    for u in &frame {
                        let c: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
                        v.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
                    }
                    let nv = v.iter().map(|a| a * a).sum::<f64>().sqrt();
                    if nv > 1e-9 {
                        v.iter_mut().for_each(|a| *a /= nv);
                        frame.push(v);
                    }
                }
                let [x, e1, e2] = [0, 1, 2].map(|i| fp.combine(&frame[i]));
                best = best.min(fp.sec(&x, &e1) + fp.sec(&x, &e2));
            }
            best
        })
        .collect();
    let min_sum = mins.into_iter().fold(f64::INFINITY, f64::min);
    Ric2Summary {
        samples,
        min_sum,
        all_positive: min_sum > 0.0,
    }
}
