use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::intmat::IntMat;
use super::LieError;
use crate::exactnum::{lcm_denominators, rank_int, solve, MatQ, Rational};

/// A diagonal block of the ambient matrices carrying its own metric scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealBlock {
    pub label: String,
    pub offset: usize,
    pub size: usize,
}

/// Matrix commutator `XY − YX`.
pub fn bracket(x: &MatQ, y: &MatQ) -> Result<MatQ, LieError> {
    Ok(x.commutator(y)?)
}

/// Strict upper triangle of a skew matrix.
pub fn flatten(m: &MatQ) -> Vec<Rational> {
    let n = m.rows();
    let mut v = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            v.push(m[(i, j)].clone());
        }
    }
    v
}

/// Inverse of [`flatten`].
pub fn unflatten(n: usize, v: &[Rational]) -> MatQ {
    let mut m = MatQ::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = v[k].clone();
            m[(j, i)] = -&v[k];
            k += 1;
        }
    }
    m
}

/// Incremental membership test against a fixed integer span.
#[derive(Clone, Debug)]
pub(crate) struct SpanTester {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl SpanTester {
    pub fn new(vectors: &[Vec<i64>]) -> Self {
        let mut t = SpanTester { rows: Vec::new() };
        for v in vectors {
            t.insert(v);
        }
        t
    }

    fn reduce(&self, v: &[i64]) -> Vec<BigInt> {
        let mut w: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for (c, row) in &self.rows {
            if w[*c].is_zero() {
                continue;
            }
            let a = row[*c].clone();
            let b = w[*c].clone();
            for (x, r) in w.iter_mut().zip(row) {
                *x = &a * &*x - &b * r;
            }
            let g = w.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in w.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        w
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let w = self.reduce(v);
        match w.iter().position(|x| !x.is_zero()) {
            Some(c) => {
                self.rows.push((c, w));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Integer weights proportional to the block scales.
fn integer_weights(scales: &[Rational]) -> Vec<i64> {
    let l = lcm_denominators(scales);
    scales
        .iter()
        .map(|s| (s.numer() * (&l / s.denom())).to_i64().expect("weight fits"))
        .collect()
}

/// A subspace of matrices with a cached integer frame.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Vec<MatQ>,
    ints: Vec<IntMat>,
}

impl Subspace {
    pub fn new(basis: Vec<MatQ>) -> Self {
        let ints = basis.iter().map(|m| IntMat::from_matq(m).0).collect();
        Subspace { basis, ints }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MatQ] {
        &self.basis
    }

    /// Basis elements scaled to primitive integer matrices.
    pub fn ints(&self) -> &[IntMat] {
        &self.ints
    }

    pub fn int_combination(&self, coeffs: &[i64]) -> IntMat {
        let n = self.ints.first().map_or(0, |m| m.n());
        IntMat::combination(n, coeffs, &self.ints)
    }

    pub fn combination(&self, coeffs: &[Rational]) -> MatQ {
        let n = self.basis.first().map_or(0, |m| m.rows());
        let mut out = MatQ::zeros(n, n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    /// Coordinates of `x` in this basis, if `x` lies in the span.
    pub fn coordinates(&self, x: &MatQ) -> Option<Vec<Rational>> {
        if self.basis.is_empty() {
            return x.is_zero().then(Vec::new);
        }
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(flatten).collect();
        let target = flatten(x);
        let rows: Vec<Vec<Rational>> = (0..target.len())
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        solve(&rows, &target)
    }

    pub fn contains(&self, x: &MatQ) -> bool {
        self.coordinates(x).is_some()
    }
}

/// A compact matrix Lie algebra with a block-wise scaled `−tr(XY)` inner product.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    name: String,
    ambient_dim: usize,
    ideal_blocks: Vec<IdealBlock>,
    metric_scales: Vec<Rational>,
    weights: Vec<i64>,
    span: Subspace,
}

/// Serialized form of an [`AlgebraPresentation`]; basis matrices are row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraData {
    pub name: String,
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Rational>>,
    pub ideal_blocks: Vec<IdealBlock>,
    pub metric_scales: Vec<Rational>,
}

impl AlgebraPresentation {
    /// Validates skewness, block structure, independence, closure and Ad-invariance.
    pub fn new(
        name: impl Into<String>,
        ambient_dim: usize,
        basis: Vec<MatQ>,
        ideal_blocks: Vec<IdealBlock>,
        metric_scales: Vec<Rational>,
    ) -> Result<Self, LieError> {
        let name = name.into();
        if ideal_blocks.len() != metric_scales.len() {
            return Err(LieError::Invalid(format!(
                "{name}: {} blocks but {} scales",
                ideal_blocks.len(),
                metric_scales.len()
            )));
        }
        if metric_scales.iter().any(|s| !s.is_positive()) {
            return Err(LieError::Invalid(format!("{name}: metric scales must be positive")));
        }
        let mut covered = 0;
        for b in &ideal_blocks {
            if b.offset != covered || b.size == 0 {
                return Err(LieError::Invalid(format!(
                    "{name}: blocks must tile the diagonal in order"
                )));
            }
            covered += b.size;
        }
        if covered != ambient_dim {
            return Err(LieError::Invalid(format!(
                "{name}: blocks cover {covered} of {ambient_dim} rows"
            )));
        }
        let block_of = |i: usize| ideal_blocks.iter().position(|b| i >= b.offset && i < b.offset + b.size);
        for (idx, m) in basis.iter().enumerate() {
            if m.rows() != ambient_dim || m.cols() != ambient_dim {
                return Err(LieError::Invalid(format!("{name}: basis[{idx}] has wrong shape")));
            }
            if !m.is_skew() {
                return Err(LieError::Invalid(format!("{name}: basis[{idx}] is not skew")));
            }
            for i in 0..ambient_dim {
                for j in 0..ambient_dim {
                    if !m[(i, j)].is_zero() && block_of(i) != block_of(j) {
                        return Err(LieError::Invalid(format!(
                            "{name}: basis[{idx}] is not block diagonal"
                        )));
                    }
                }
            }
        }
        let alg = AlgebraPresentation {
            weights: integer_weights(&metric_scales),
            name,
            ambient_dim,
            ideal_blocks,
            metric_scales,
            span: Subspace::new(basis),
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), LieError> {
        let ints = self.span.ints();
        let flat: Vec<Vec<i64>> = ints.iter().map(IntMat::upper).collect();
        if rank_int(&flat) != ints.len() && !ints.is_empty() {
            return Err(LieError::Invalid(format!("{}: basis is dependent", self.name)));
        }
        let tester = SpanTester::new(&flat);
        let d = ints.len();
        let mut brackets = vec![vec![IntMat::zeros(self.ambient_dim); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let b = ints[i].bracket(&ints[j]);
                if !tester.contains(&b.upper()) {
                    return Err(LieError::NotClosed {
                        name: self.name.clone(),
                        i,
                        j,
                    });
                }
                brackets[j][i] = IntMat::from_dense(self.ambient_dim, b.data().iter().map(|x| -x).collect());
                brackets[i][j] = b;
            }
        }
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let s = self.ip_int(&brackets[i][j], &ints[l]) + self.ip_int(&ints[j], &brackets[i][l]);
                    if s != 0 {
                        return Err(LieError::Invalid(format!(
                            "{}: inner product not Ad-invariant at ({i}, {j}, {l})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_data(data: &AlgebraData) -> Result<Self, LieError> {
        let n = data.ambient_dim;
        let basis = data
            .basis
            .iter()
            .map(|v| MatQ::new(n, n, v.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        AlgebraPresentation::new(
            data.name.clone(),
            n,
            basis,
            data.ideal_blocks.clone(),
            data.metric_scales.clone(),
        )
    }

    pub fn to_data(&self) -> AlgebraData {
        AlgebraData {
            name: self.name.clone(),
            ambient_dim: self.ambient_dim,
            basis: self.span.basis().iter().map(|m| m.entries().to_vec()).collect(),
            ideal_blocks: self.ideal_blocks.clone(),
            metric_scales: self.metric_scales.clone(),
        }
    }

    /// Single-block presentation with scale 1.
    pub fn simple(name: impl Into<String>, basis: Vec<MatQ>) -> Result<Self, LieError> {
        let n = basis.first().map_or(0, |m| m.rows());
        let name = name.into();
        AlgebraPresentation::new(
            name.clone(),
            n,
            basis,
            vec![IdealBlock {
                label: name,
                offset: 0,
                size: n,
            }],
            vec![Rational::one()],
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn basis(&self) -> &[MatQ] {
        self.span.basis()
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn ideal_blocks(&self) -> &[IdealBlock] {
        &self.ideal_blocks
    }

    pub fn metric_scales(&self) -> &[Rational] {
        &self.metric_scales
    }

    /// Same algebra with new block scales.
    pub fn with_scales(&self, scales: Vec<Rational>) -> Result<Self, LieError> {
        AlgebraPresentation::new(
            self.name.clone(),
            self.ambient_dim,
            self.span.basis().to_vec(),
            self.ideal_blocks.clone(),
            scales,
        )
    }

    /// `⟨X, Y⟩ = Σ_b scale_b · (−tr(X_b Y_b))`.
    pub fn inner(&self, x: &MatQ, y: &MatQ) -> Rational {
        let mut total = Rational::zero();
        for (b, s) in self.ideal_blocks.iter().zip(&self.metric_scales) {
            let mut acc = Rational::zero();
            for i in b.offset..b.offset + b.size {
                for j in b.offset..b.offset + b.size {
                    let (a, c) = (&x[(i, j)], &y[(j, i)]);
                    if !a.is_zero() && !c.is_zero() {
                        acc -= a * c;
                    }
                }
            }
            total += s * &acc;
        }
        total
    }

    pub fn norm2(&self, x: &MatQ) -> Rational {
        self.inner(x, x)
    }

    /// Inner product of integer skew matrices up to a fixed positive factor.
    pub fn ip_int(&self, x: &IntMat, y: &IntMat) -> i128 {
        let n = self.ambient_dim;
        let mut total = 0i128;
        let (sparse, dense) = if x.nonzeros().len() <= y.nonzeros().len() { (x, y) } else { (y, x) };
        for &(i, j, v) in sparse.nonzeros() {
            let b = self
                .ideal_blocks
                .iter()
                .position(|b| i >= b.offset && i < b.offset + b.size)
                .expect("tiled");
            total += (self.weights[b] as i128) * (v as i128) * (dense.data()[i * n + j] as i128);
        }
        total
    }

    pub fn contains(&self, x: &MatQ) -> bool {
        x.rows() == self.ambient_dim && self.span.contains(x)
    }

    /// Gram matrix of `a` against `b`: `G[i][j] = ⟨a_i, b_j⟩`.
    pub fn gram(&self, a: &[MatQ], b: &[MatQ]) -> Vec<Vec<Rational>> {
        a.iter()
            .map(|x| b.iter().map(|y| self.inner(x, y)).collect())
            .collect()
    }

    /// Basis of `{t ∈ span(within) : ⟨t, s⟩ = 0 for all s ∈ sub}`, scaled to integers.
    pub fn complement(&self, within: &[MatQ], sub: &[MatQ]) -> Vec<MatQ> {
        if sub.is_empty() {
            return within.iter().map(primitive).collect();
        }
        let g = self.gram(sub, within);
        let ker = crate::exactnum::kernel_rows(&g, within.len());
        ker.iter()
            .map(|c| {
                let s = Subspace {
                    basis: within.to_vec(),
                    ints: Vec::new(),
                };
                primitive(&s.combination(c))
            })
            .collect()
    }
}

/// `m` scaled to a primitive integer matrix with a positive first nonzero entry.
pub fn primitive(m: &MatQ) -> MatQ {
    let (ints, _) = m.primitive_integer();
    let sign = ints.iter().find(|&&x| x != 0).map_or(1, |x| x.signum());
    let ints: Vec<i64> = ints.iter().map(|x| x * sign).collect();
    MatQ::from_i64(m.rows(), m.cols(), &ints).expect("same shape")
}

/// Invariant `h ⊂ g` with the orthogonal complement of `h` inside `ambient ⊆ g`.
#[derive(Clone, Debug)]
pub struct PairPresentation {
    name: String,
    g: Arc<AlgebraPresentation>,
    h: Subspace,
    perp: Subspace,
    ambient: Subspace,
}

fn ensure_subalgebra(
    g: &AlgebraPresentation,
    label: &str,
    basis: &[MatQ],
) -> Result<(), LieError> {
    let ints: Vec<IntMat> = basis.iter().map(|m| IntMat::from_matq(m).0).collect();
    let flat: Vec<Vec<i64>> = ints.iter().map(IntMat::upper).collect();
    if !flat.is_empty() && rank_int(&flat) != flat.len() {
        return Err(LieError::Invalid(format!("{label}: basis is dependent")));
    }
    for m in basis {
        if !g.contains(m) {
            return Err(LieError::NotSubspace(format!("{label} is not inside {}", g.name())));
        }
    }
    let tester = SpanTester::new(&flat);
    for i in 0..ints.len() {
        for j in i + 1..ints.len() {
            if !tester.contains(&ints[i].bracket(&ints[j]).upper()) {
                return Err(LieError::NotClosed {
                    name: label.to_string(),
                    i,
                    j,
                });
            }
        }
    }
    Ok(())
}

impl PairPresentation {
    pub fn new(
        name: impl Into<String>,
        g: Arc<AlgebraPresentation>,
        h_basis: Vec<MatQ>,
    ) -> Result<Self, LieError> {
        let ambient = g.basis().to_vec();
        PairPresentation::within(name, g, ambient, h_basis)
    }

    /// The pair `h ⊂ k` where `k = span(ambient)` is a subalgebra of `g`.
    pub fn within(
        name: impl Into<String>,
        g: Arc<AlgebraPresentation>,
        ambient: Vec<MatQ>,
        h_basis: Vec<MatQ>,
    ) -> Result<Self, LieError> {
        let name = name.into();
        ensure_subalgebra(&g, &format!("{name}: ambient"), &ambient)?;
        ensure_subalgebra(&g, &format!("{name}: subalgebra"), &h_basis)?;
        let amb = Subspace::new(ambient.clone());
        for m in &h_basis {
            if !amb.contains(m) {
                return Err(LieError::NotSubspace(format!("{name}: h not inside the ambient algebra")));
            }
        }
        if h_basis.len() >= ambient.len() {
            return Err(LieError::Degenerate(format!("{name}: subalgebra is not proper")));
        }
        let perp = g.complement(&ambient, &h_basis);
        Ok(PairPresentation {
            name,
            g,
            h: Subspace::new(h_basis),
            perp: Subspace::new(perp),
            ambient: amb,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g(&self) -> &AlgebraPresentation {
        &self.g
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    /// Orthogonal complement of `h` inside the ambient algebra.
    pub fn perp(&self) -> &Subspace {
        &self.perp
    }

    pub fn ambient(&self) -> &Subspace {
        &self.ambient
    }
}

/// Nested subalgebras `h ⊂ k ⊂ g` with `m = h⊥ ∩ k` and `p = k⊥`.
#[derive(Clone, Debug)]
pub struct TriplePresentation {
    name: String,
    g: Arc<AlgebraPresentation>,
    k: Subspace,
    h: Subspace,
    m: Subspace,
    p: Subspace,
}

impl TriplePresentation {
    pub fn new(
        name: impl Into<String>,
        g: Arc<AlgebraPresentation>,
        k_basis: Vec<MatQ>,
        h_basis: Vec<MatQ>,
    ) -> Result<Self, LieError> {
        let name = name.into();
        ensure_subalgebra(&g, &format!("{name}: k"), &k_basis)?;
        ensure_subalgebra(&g, &format!("{name}: h"), &h_basis)?;
        let k = Subspace::new(k_basis.clone());
        for m in &h_basis {
            if !k.contains(m) {
                return Err(LieError::NotSubspace(format!("{name}: h is not inside k")));
            }
        }
        if h_basis.len() == k_basis.len() {
            return Err(LieError::Degenerate(format!("{name}: h = k")));
        }
        if k_basis.len() == g.dim() {
            return Err(LieError::Degenerate(format!("{name}: k = g")));
        }
        let m = g.complement(&k_basis, &h_basis);
        let p = g.complement(g.basis(), &k_basis);
        let t = TriplePresentation {
            name,
            m: Subspace::new(m),
            p: Subspace::new(p),
            k,
            h: Subspace::new(h_basis),
            g,
        };
        if !t.is_reductive() {
            return Err(LieError::Invalid(format!("{}: [k, p] not inside p", t.name)));
        }
        Ok(t)
    }

    /// The projection of every `[k_i, p_j]` onto `k` vanishes.
    pub fn is_reductive(&self) -> bool {
        let ks = self.k.ints();
        ks.iter().all(|ki| {
            self.p.ints().iter().all(|pj| {
                let b = ki.bracket(pj);
                ks.iter().all(|kl| self.g.ip_int(&b, kl) == 0)
            })
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g(&self) -> &AlgebraPresentation {
        &self.g
    }

    pub fn g_arc(&self) -> Arc<AlgebraPresentation> {
        self.g.clone()
    }

    pub fn k(&self) -> &Subspace {
        &self.k
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn m(&self) -> &Subspace {
        &self.m
    }

    pub fn p(&self) -> &Subspace {
        &self.p
    }

    /// `m ⊕ p`, the tangent space of `G/H`.
    pub fn horizontal(&self) -> Subspace {
        let mut b = self.m.basis().to_vec();
        b.extend(self.p.basis().iter().cloned());
        Subspace::new(b)
    }

    /// `h ⊂ g`.
    pub fn total_pair(&self) -> Result<PairPresentation, LieError> {
        PairPresentation::new(format!("{}: total", self.name), self.g.clone(), self.h.basis().to_vec())
    }

    /// `k ⊂ g`.
    pub fn base_pair(&self) -> Result<PairPresentation, LieError> {
        PairPresentation::new(format!("{}: base", self.name), self.g.clone(), self.k.basis().to_vec())
    }

    /// `h ⊂ k`.
    pub fn fiber_pair(&self) -> Result<PairPresentation, LieError> {
        PairPresentation::within(
            format!("{}: fiber", self.name),
            self.g.clone(),
            self.k.basis().to_vec(),
            self.h.basis().to_vec(),
        )
    }

    /// Splits `x ∈ g` into its `h`, `m` and `p` components.
    pub fn decompose(&self, x: &MatQ) -> Result<(MatQ, MatQ, MatQ), LieError> {
        let mut all = self.h.basis().to_vec();
        all.extend(self.m.basis().iter().cloned());
        all.extend(self.p.basis().iter().cloned());
        let s = Subspace::new(all);
        let c = s
            .coordinates(x)
            .ok_or_else(|| LieError::NotSubspace("vector outside g".into()))?;
        let (dh, dm) = (self.h.dim(), self.m.dim());
        Ok((
            self.h.combination(&c[..dh]),
            self.m.combination(&c[dh..dh + dm]),
            self.p.combination(&c[dh + dm..]),
        ))
    }
}
