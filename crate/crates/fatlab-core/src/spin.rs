//! Spin(8) as triality pairs, torus lifts, circle patterns and free actions on S⁷×S⁷.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{CirclePoint, MatQ, Rational};
use crate::octonion::{basis_product, left_mult_matrix, Octonion};
use crate::topology;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("(A, B) does not satisfy the triality relation")]
    NotTriality,
    #[error("coefficients {0:?} need an exact half angle, none available")]
    NoExactHalf([i64; 4]),
    #[error("invalid partition {0:?}: {1}")]
    InvalidPartition(Vec<u32>, String),
    #[error("pattern {0:?} is not primitive")]
    NotPrimitive([i64; 4]),
    #[error("weights l={0:?}, r={1:?} do not come from an integer pattern")]
    InconsistentWeights([i64; 4], [i64; 4]),
    #[error("group order must be at least 1")]
    ZeroOrder,
    #[error("an action on S^6 needs l1 = 0, got {0}")]
    NotOnSphere6(i64),
}

/// Candidate `C` from the triality relation at `x = 1`: `C = L_{A(1)} ∘ B`.
pub fn induced_c(a: &MatQ, b: &MatQ) -> MatQ {
    let a1 = Octonion::from_vec(&a.column(0));
    &left_mult_matrix(&a1) * b
}

/// `A(e_i) B(e_j) = C(e_i e_j)` for all 64 basis pairs.
pub fn triality_check(a: &MatQ, b: &MatQ, c: &MatQ) -> bool {
    let cols = |m: &MatQ| -> Vec<Octonion> { (0..8).map(|j| Octonion::from_vec(&m.column(j))).collect() };
    let (ac, bc, cc) = (cols(a), cols(b), cols(c));
    (0..8).all(|i| {
        (0..8).all(|j| {
            let (s, k) = basis_product(i, j);
            let rhs = if s > 0 { cc[k].clone() } else { -&cc[k] };
            &ac[i] * &bc[j] == rhs
        })
    })
}

/// An element of Spin(8): a pair `(A, B)` with a compatible `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinElement {
    a: MatQ,
    b: MatQ,
    c: MatQ,
}

impl SpinElement {
    pub fn new(a: MatQ, b: MatQ) -> Result<Self, SpinError> {
        if a.rows() != 8 || a.cols() != 8 || b.rows() != 8 || b.cols() != 8 {
            return Err(SpinError::NotTriality);
        }
        let c = induced_c(&a, &b);
        if !triality_check(&a, &b, &c) {
            return Err(SpinError::NotTriality);
        }
        Ok(SpinElement { a, b, c })
    }

    pub fn identity() -> Self {
        SpinElement {
            a: MatQ::identity(8),
            b: MatQ::identity(8),
            c: MatQ::identity(8),
        }
    }

    pub fn a(&self) -> &MatQ {
        &self.a
    }

    pub fn b(&self) -> &MatQ {
        &self.b
    }

    /// The image in SO(8).
    pub fn c(&self) -> &MatQ {
        &self.c
    }

    /// The other preimage of `C`.
    pub fn negated(&self) -> SpinElement {
        SpinElement {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
        }
    }

    pub fn compose(&self, other: &SpinElement) -> SpinElement {
        SpinElement {
            a: &self.a * &other.a,
            b: &self.b * &other.b,
            c: &self.c * &other.c,
        }
    }

    /// Spin(7) membership in the triality picture: `B = C`.
    pub fn in_spin7(&self) -> bool {
        self.b == self.c
    }

    /// G₂ membership: `A = B = C`.
    pub fn in_g2(&self) -> bool {
        self.a == self.b && self.b == self.c
    }
}

fn rot_diag(angles: &[CirclePoint; 4]) -> MatQ {
    MatQ::block_diag(&angles.clone().map(|p| p.rotation()))
}

/// Block-diagonal `diag(R(k₁φ), …, R(k₄φ))`.
pub fn rotation_blocks(k: [i64; 4], phi: &CirclePoint) -> MatQ {
    rot_diag(&k.map(|x| phi.pow(x)))
}

/// The maximal torus element with parameters `α₁..α₄`.
pub fn torus_element(alpha: &[CirclePoint; 4]) -> Result<SpinElement, SpinError> {
    let [a1, a2, a3, a4] = alpha;
    let a = rot_diag(&[
        a1.clone(),
        a1.compose(a3).compose(a4),
        a2.compose(a3).compose(&a4.inverse()),
        a2.clone(),
    ]);
    let b = rot_diag(&[
        a3.clone(),
        a4.clone(),
        a1.inverse().compose(a2).compose(&a4.inverse()),
        a1.compose(a2).compose(a3),
    ]);
    SpinElement::new(a, b)
}

/// Integer data of a lifted diagonal torus circle.
///
/// `C = diag(R(c₁φ), …)`, `A = diag(R(a₁φ), …)`, `B = diag(R(b₁φ), …)` where
/// `φ = θ` when `half_angle` is false and `φ∘φ = θ` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusLift {
    pub c: [i64; 4],
    pub a: [i64; 4],
    pub b: [i64; 4],
    pub alpha: [i64; 4],
    pub half_angle: bool,
}

/// Coefficients of the identity-connected lift of `diag(R(c₁θ), …, R(c₄θ))`.
pub fn lift_coefficients(c: [i64; 4]) -> TorusLift {
    let [c1, c2, c3, c4] = c;
    // twice the α-coefficients, in units of θ
    let alpha2 = [
        c1 + c2 + c3 - c4,
        -c1 + c2 + c3 + c4,
        c1 - c2 - c3 + c4,
        -c1 + c2 - c3 + c4,
    ];
    let from_alpha = |al: [i64; 4]| {
        let [x1, x2, x3, x4] = al;
        (
            [x1, x1 + x3 + x4, x2 + x3 - x4, x2],
            [x3, x4, -x1 + x2 - x4, x1 + x2 + x3],
        )
    };
    let half_angle = (c1 + c2 + c3 + c4) % 2 != 0;
    if half_angle {
        let (a, b) = from_alpha(alpha2);
        TorusLift {
            c: c.map(|x| 2 * x),
            a,
            b,
            alpha: alpha2,
            half_angle,
        }
    } else {
        let alpha = alpha2.map(|x| x / 2);
        let (a, b) = from_alpha(alpha);
        TorusLift {
            c,
            a,
            b,
            alpha,
            half_angle,
        }
    }
}

/// Lift of `diag(R(c₁θ), …, R(c₄θ))` continuously connected to the identity.
///
/// When `Σc` is odd the lift needs `θ/2`; it is taken from [`CirclePoint::half`].
pub fn lift_c_diagonal(c: [i64; 4], theta: &CirclePoint) -> Result<SpinElement, SpinError> {
    let lift = lift_coefficients(c);
    let phi = if lift.half_angle {
        theta.half().ok_or(SpinError::NoExactHalf(c))?
    } else {
        theta.clone()
    };
    build_lift(&lift, &phi)
}

/// Like [`lift_c_diagonal`] with a caller-supplied `φ` satisfying `φ∘φ = θ`.
pub fn lift_c_diagonal_with_half(c: [i64; 4], phi: &CirclePoint) -> Result<SpinElement, SpinError> {
    let lift = lift_coefficients(c);
    let unit = if lift.half_angle { phi.clone() } else { phi.compose(phi) };
    build_lift(&lift, &unit)
}

fn build_lift(lift: &TorusLift, phi: &CirclePoint) -> Result<SpinElement, SpinError> {
    SpinElement::new(rotation_blocks(lift.a, phi), rotation_blocks(lift.b, phi))
}

/// A circle in the maximal torus with `α = (n₁φ, n₂φ, n₃φ, n₄φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CirclePattern {
    pub n: [i64; 4],
    pub l: [i64; 4],
    pub r: [i64; 4],
}

pub fn weights_from_n(n: [i64; 4]) -> ([i64; 4], [i64; 4]) {
    let [n1, n2, n3, n4] = n;
    (
        [n1, n1 + n3 + n4, n2 + n3 - n4, n2],
        [n3, n4, -n1 + n2 - n4, n1 + n2 + n3],
    )
}

impl CirclePattern {
    /// Pattern from a primitive integer vector.
    pub fn new(n: [i64; 4]) -> Result<Self, SpinError> {
        if n.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
            return Err(SpinError::NotPrimitive(n));
        }
        Ok(CirclePattern::unchecked(n))
    }

    /// Pattern without the primitivity check, for lifted weights that may share a factor.
    pub fn unchecked(n: [i64; 4]) -> Self {
        let (l, r) = weights_from_n(n);
        CirclePattern { n, l, r }
    }

    /// Recovers `n = (ℓ₁, ℓ₄, r₁, r₂)` and checks the remaining four equations.
    pub fn from_weights(l: [i64; 4], r: [i64; 4]) -> Result<Self, SpinError> {
        let p = CirclePattern::unchecked([l[0], l[3], r[0], r[1]]);
        if p.l != l || p.r != r {
            return Err(SpinError::InconsistentWeights(l, r));
        }
        Ok(p)
    }

    pub fn is_primitive(&self) -> bool {
        self.n.iter().fold(0i64, |g, x| g.gcd(x)) == 1
    }

    /// The torus element at parameter `φ`.
    pub fn element(&self, phi: &CirclePoint) -> Result<SpinElement, SpinError> {
        torus_element(&self.n.map(|k| phi.pow(k)))
    }

    pub fn sum_of_squares(&self) -> i64 {
        self.l.iter().chain(&self.r).map(|x| x * x).sum()
    }
}

/// First pair `(i, j)` (1-based, lexicographic) with `gcd(ℓ_i, r_j) ≠ 1`.
///
/// `gcd` is `None` for the undefined `gcd(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdWitness {
    pub i: usize,
    pub j: usize,
    pub gcd: Option<i64>,
}

pub fn gcd_witness(l: &[i64; 4], r: &[i64; 4]) -> Option<GcdWitness> {
    for (i, a) in l.iter().enumerate() {
        for (j, b) in r.iter().enumerate() {
            let g = a.gcd(b);
            if g != 1 {
                return Some(GcdWitness {
                    i: i + 1,
                    j: j + 1,
                    gcd: (g != 0).then_some(g),
                });
            }
        }
    }
    None
}

/// The circle acts freely on S⁷×S⁷ iff every `gcd(ℓ_i, r_j)` equals 1.
pub fn is_free_weights(l: &[i64; 4], r: &[i64; 4]) -> bool {
    gcd_witness(l, r).is_none()
}

pub fn is_free_circle(p: &CirclePattern) -> bool {
    is_free_weights(&p.l, &p.r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedPattern {
    pub pattern: CirclePattern,
    pub free: bool,
    pub p1: Option<i64>,
}

/// Coarse equivalence class: sorted `|ℓ| ∪ |r|` multiset and `p₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureClass {
    pub abs_weights: [i64; 8],
    pub p1: i64,
    pub count: usize,
    pub representative: [i64; 4],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Enumeration {
    pub bound: u32,
    pub patterns: Vec<EnumeratedPattern>,
    pub classes: Vec<SignatureClass>,
}

impl Enumeration {
    pub fn free_patterns(&self) -> impl Iterator<Item = &EnumeratedPattern> {
        self.patterns.iter().filter(|p| p.free)
    }
}

pub fn signature(p: &CirclePattern) -> [i64; 8] {
    let mut s = [0i64; 8];
    for (k, x) in p.l.iter().chain(&p.r).enumerate() {
        s[k] = x.abs();
    }
    s.sort_unstable();
    s
}

/// Primitive patterns with `max|n_i| ≤ bound`, in lexicographic order of `n`.
///
/// Free patterns carry `p₁`; non-free ones are kept only with `include_non_free`.
pub fn enumerate_circles(bound: u32, include_non_free: bool) -> Enumeration {
    let b = bound as i64;
    let side = 2 * b + 1;
    let total = side.pow(4);
    let patterns: Vec<EnumeratedPattern> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let n = [
                idx / side.pow(3) - b,
                (idx / side.pow(2)) % side - b,
                (idx / side) % side - b,
                idx % side - b,
            ];
            let p = CirclePattern::new(n).ok()?;
            let free = is_free_circle(&p);
            if !free && !include_non_free {
                return None;
            }
            let p1 = free.then(|| topology::p1_circle(&p).expect("free").value);
            Some(EnumeratedPattern {
                pattern: p,
                free,
                p1,
            })
        })
        .collect();
    let mut classes: Vec<SignatureClass> = Vec::new();
    let mut index = std::collections::BTreeMap::new();
    for e in patterns.iter().filter(|e| e.free) {
        let key = (signature(&e.pattern), e.p1.expect("free"));
        match index.get(&key) {
            Some(&k) => {
                let c: &mut SignatureClass = &mut classes[k];
                c.count += 1;
            }
            None => {
                index.insert(key, classes.len());
                classes.push(SignatureClass {
                    abs_weights: key.0,
                    p1: key.1,
                    count: 1,
                    representative: e.pattern.n,
                });
            }
        }
    }
    Enumeration {
        bound,
        patterns,
        classes,
    }
}

pub fn enumerate_free_circles(bound: u32) -> Enumeration {
    enumerate_circles(bound, false)
}

/// One row of the SU(2) subgroup table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Su2Rep {
    /// Parts in non-increasing order.
    pub partition: Vec<u32>,
    pub torus_weights: [i64; 4],
    pub lift_a: [i64; 4],
    pub lift_b: [i64; 4],
    pub gcd_witness: Option<GcdWitness>,
    pub free: bool,
}

/// Rows in the order of the published table.
pub const TABLE2_PARTITIONS: [&[u32]; 9] = [
    &[5, 1, 1, 1],
    &[4, 4],
    &[3, 2, 2, 1],
    &[3, 1, 1, 1, 1, 1],
    &[2, 2, 2, 2],
    &[2, 2, 1, 1, 1, 1],
    &[7, 1],
    &[5, 3],
    &[3, 3, 1, 1],
];

/// Torus coefficients `c₁ ≥ … ≥ c₄ ≥ 0` of the 8-dimensional representation `⊕ φ_d`.
///
/// `φ_d` has weights `d−1, d−3, …, 1−d`; positive weights pair with their
/// negatives and zero weights pair with each other.
pub fn torus_weights(partition: &[u32]) -> Result<[i64; 4], SpinError> {
    let bad = |msg: &str| SpinError::InvalidPartition(partition.to_vec(), msg.to_string());
    if partition.iter().any(|&d| d == 0) {
        return Err(bad("parts must be positive"));
    }
    if partition.iter().sum::<u32>() != 8 {
        return Err(bad("parts must sum to 8"));
    }
    for d in partition.iter().filter(|&&d| d % 2 == 0) {
        if partition.iter().filter(|&&x| x == *d).count() % 2 != 0 {
            return Err(bad("even parts must occur an even number of times"));
        }
    }
    let mut positive = Vec::new();
    for &d in partition {
        let d = d as i64;
        positive.extend((0..d).map(|k| d - 1 - 2 * k).filter(|&w| w > 0));
    }
    positive.sort_unstable_by(|a, b| b.cmp(a));
    let mut c = [0i64; 4];
    for (k, w) in positive.into_iter().enumerate() {
        c[k] = w;
    }
    Ok(c)
}

/// Table row for a partition.
///
/// The lift uses `(−c₁, c₂, c₃, c₄)`, an O(8)-conjugate of the torus circle,
/// which is the normalization under which the published coefficients appear.
pub fn su2_table(partition: &[u32]) -> Result<Su2Rep, SpinError> {
    let c = torus_weights(partition)?;
    let lift = lift_coefficients([-c[0], c[1], c[2], c[3]]);
    debug_assert!(!lift.half_angle);
    let witness = gcd_witness(&lift.a, &lift.b);
    let mut parts = partition.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Su2Rep {
        partition: parts,
        torus_weights: c,
        lift_a: lift.a,
        lift_b: lift.b,
        gcd_witness: witness,
        free: witness.is_none(),
    })
}

pub fn table2() -> Vec<Su2Rep> {
    TABLE2_PARTITIONS
        .iter()
        .map(|p| su2_table(p).expect("valid partition"))
        .collect()
}

/// Does the rotation block `ε R(2π w k / d)` have eigenvalue 1?
fn block_fixes(w: i64, k: i64, d: i64, eps_negative: bool) -> bool {
    let target = if eps_negative { d } else { 0 };
    (2 * w * k - target).rem_euclid(2 * d) == 0
}

/// Freeness of `Z₂ × Z_d` (or `Z_d` when `minus_on_first` is false) acting through
/// the circle `p` at angles `2πk/d`, the `Z₂` factor acting by `−1` on the first sphere.
///
/// With `sphere6` the first factor is the unit sphere of `Im O`, which needs `ℓ₁ = 0`.
pub fn finite_action_free(
    p: &CirclePattern,
    d: u64,
    minus_on_first: bool,
    sphere6: bool,
) -> Result<bool, SpinError> {
    if d == 0 {
        return Err(SpinError::ZeroOrder);
    }
    if sphere6 && p.l[0] != 0 {
        return Err(SpinError::NotOnSphere6(p.l[0]));
    }
    let d = d as i64;
    let signs: &[bool] = if minus_on_first { &[false, true] } else { &[false] };
    for &neg in signs {
        for k in 0..d {
            if !neg && k == 0 {
                continue;
            }
            // On S⁶ the first block is ±I on span{1, i}; its fixed part inside
            // Im O is the i-direction, present exactly when the block fixes.
            let first = p.l.iter().any(|&w| block_fixes(w, k, d, neg));
            let second = p.r.iter().any(|&w| block_fixes(w, k, d, false));
            if first && second {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The circle's `ℓ`/`r` blocks as exact matrices at angle `φ`, for display and checks.
pub fn circle_matrices(p: &CirclePattern, phi: &CirclePoint) -> (MatQ, MatQ) {
    (rotation_blocks(p.l, phi), rotation_blocks(p.r, phi))
}

/// `σ = diag(1, −1, 1, −1, 1, −1, 1, −1)`.
pub fn sigma() -> MatQ {
    MatQ::diag(&[1, -1, 1, -1, 1, -1, 1, -1].map(Rational::integer))
}
