//! Explicit matrix models of the algebras and complements used throughout.

use super::presentation::{primitive, AlgebraPresentation, IdealBlock};
use super::LieError;
use crate::exactnum::{kernel_rows, q, qi, MatQ, Rational};
use crate::octonion::{basis_product, Octonion};

fn check_len(what: &str, got: usize, want: usize) -> Result<(), LieError> {
    if got != want {
        return Err(LieError::Dimension(format!("{what} needs {want} parameters, got {got}")));
    }
    Ok(())
}

/// `E_ij − E_ji` for `i < j` in lexicographic order.
pub fn so_basis(n: usize) -> Vec<MatQ> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(MatQ::skew_unit(n, i, j));
        }
    }
    out
}

/// `M(z) ∈ so(n+1)`: last column `z`, last row `−zᵀ`.
pub fn m_vector(z: &[Rational]) -> MatQ {
    let n = z.len();
    let mut m = MatQ::zeros(n + 1, n + 1);
    for (i, v) in z.iter().enumerate() {
        m[(i, n)] = v.clone();
        m[(n, i)] = -v;
    }
    m
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { qi(1) } else { qi(0) }).collect()
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| qi(x)).collect()
}

/// Places `m` in an `n × n` zero matrix with top-left corner at `(offset, offset)`.
pub fn embed(m: &MatQ, n: usize, offset: usize) -> MatQ {
    let mut out = MatQ::zeros(n, n);
    out.set_block(offset, offset, m);
    out
}

/// The g₂ matrix with parameters `(x₁..x₆, y₁..y₆, z₁, z₂)`.
pub fn g2_in_so7(p: &[Rational]) -> Result<MatQ, LieError> {
    check_len("g2_in_so7", p.len(), 14)?;
    let (x, y, z) = (&p[0..6], &p[6..12], &p[12..14]);
    let s = |a: &Rational, b: &Rational| a + b;
    let rows: [[Rational; 7]; 7] = [
        [qi(0), s(&x[0], &x[1]), s(&y[0], &y[1]), s(&x[2], &x[3]), s(&y[2], &y[3]), s(&x[4], &x[5]), s(&y[4], &y[5])],
        [-s(&x[0], &x[1]), qi(0), z[0].clone(), -&y[4], x[4].clone(), -&y[2], x[2].clone()],
        [-s(&y[0], &y[1]), -&z[0], qi(0), x[5].clone(), y[5].clone(), -&x[3], -&y[3]],
        [-s(&x[2], &x[3]), y[4].clone(), -&x[5], qi(0), z[1].clone(), y[0].clone(), -&x[0]],
        [-s(&y[2], &y[3]), -&x[4], -&y[5], -&z[1], qi(0), x[1].clone(), y[1].clone()],
        [-s(&x[4], &x[5]), y[2].clone(), x[3].clone(), -&y[0], -&x[1], qi(0), s(&z[0], &z[1])],
        [-s(&y[4], &y[5]), -&x[2], y[3].clone(), x[0].clone(), -&y[1], -s(&z[0], &z[1]), qi(0)],
    ];
    Ok(MatQ::from_rows(rows.into_iter().map(Vec::from).collect())?)
}

pub fn g2_basis() -> Vec<MatQ> {
    (0..14).map(|i| g2_in_so7(&unit(14, i)).expect("14 params")).collect()
}

/// `A(v)`, spanning the complement of g₂ in so(7).
pub fn a_perp(v: &[Rational]) -> Result<MatQ, LieError> {
    check_len("A_perp", v.len(), 7)?;
    let z = qi(0);
    let w = |k: usize| v[k - 1].clone();
    let n = |k: usize| -&v[k - 1];
    let rows = vec![
        vec![z.clone(), w(1), w(2), w(3), w(4), w(5), w(6)],
        vec![n(1), z.clone(), w(7), w(6), n(5), w(4), n(3)],
        vec![n(2), n(7), z.clone(), n(5), n(6), w(3), w(4)],
        vec![n(3), n(6), w(5), z.clone(), w(7), n(2), w(1)],
        vec![n(4), w(5), w(6), n(7), z.clone(), n(1), n(2)],
        vec![n(5), n(4), n(3), w(2), w(1), z.clone(), n(7)],
        vec![n(6), w(3), n(4), n(1), w(2), w(7), z],
    ];
    Ok(MatQ::from_rows(rows)?)
}

pub fn a_perp_basis() -> Vec<MatQ> {
    (0..7).map(|i| a_perp(&unit(7, i)).expect("7 params")).collect()
}

/// su₃ inside g₂: parameters `(x₁, x₃, x₅, y₁, y₃, y₅, z₁, z₂)` with `x₂ = −x₁` etc.
pub fn su3_element(p: &[Rational]) -> Result<MatQ, LieError> {
    check_len("su3_in_g2", p.len(), 8)?;
    let full: Vec<Rational> = vec![
        p[0].clone(), -&p[0], p[1].clone(), -&p[1], p[2].clone(), -&p[2],
        p[3].clone(), -&p[3], p[4].clone(), -&p[4], p[5].clone(), -&p[5],
        p[6].clone(), p[7].clone(),
    ];
    g2_in_so7(&full)
}

/// Basis of the su₃ ⊂ g₂ whose first row and column vanish.
pub fn su3_in_g2() -> Vec<MatQ> {
    (0..8).map(|i| su3_element(&unit(8, i)).expect("8 params")).collect()
}

/// `C(z)`, spanning the complement of su₃ in g₂.
pub fn c_perp(z: &[Rational]) -> Result<MatQ, LieError> {
    check_len("C_perp", z.len(), 6)?;
    let h = q(1, 2);
    let w = |k: usize| &z[k - 1] * &h;
    let n = |k: usize| -&(&z[k - 1] * &h);
    let o = qi(0);
    let rows = vec![
        vec![o.clone(), z[0].clone(), z[1].clone(), z[2].clone(), z[3].clone(), z[4].clone(), z[5].clone()],
        vec![-&z[0], o.clone(), o.clone(), n(6), w(5), n(4), w(3)],
        vec![-&z[1], o.clone(), o.clone(), w(5), w(6), n(3), n(4)],
        vec![-&z[2], w(6), n(5), o.clone(), o.clone(), w(2), n(1)],
        vec![-&z[3], n(5), n(6), o.clone(), o.clone(), w(1), w(2)],
        vec![-&z[4], w(4), w(3), n(2), n(1), o.clone(), o.clone()],
        vec![-&z[5], n(3), w(4), w(1), n(2), o.clone(), o],
    ];
    Ok(MatQ::from_rows(rows)?)
}

pub fn c_perp_basis() -> Vec<MatQ> {
    (0..6).map(|i| c_perp(&unit(6, i)).expect("6 params")).collect()
}

/// The z₁ = 1 generator of g₂ used in the Property (P) witness.
pub fn g2_t_generator() -> MatQ {
    let mut p = vec![qi(0); 14];
    p[12] = qi(1);
    g2_in_so7(&p).expect("14 params")
}

/// Complex `n × n` matrix given by real and imaginary parts, realified with
/// `a + bi ↦ [[a, −b], [b, a]]` in each 2×2 block.
pub fn realify_complex(re: &[Vec<i64>], im: &[Vec<i64>]) -> MatQ {
    let n = re.len();
    let mut m = MatQ::zeros(2 * n, 2 * n);
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (qi(re[a][b]), qi(im[a][b]));
            m[(2 * a, 2 * b)] = x.clone();
            m[(2 * a, 2 * b + 1)] = -&y;
            m[(2 * a + 1, 2 * b)] = y;
            m[(2 * a + 1, 2 * b + 1)] = x;
        }
    }
    m
}

fn complex_elem(n: usize, entries: &[(usize, usize, i64, i64)]) -> MatQ {
    let mut re = vec![vec![0; n]; n];
    let mut im = vec![vec![0; n]; n];
    for &(a, b, x, y) in entries {
        re[a][b] += x;
        im[a][b] += y;
    }
    realify_complex(&re, &im)
}

fn offdiag_unitary(n: usize) -> Vec<MatQ> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(complex_elem(n, &[(a, b, 1, 0), (b, a, -1, 0)]));
            out.push(complex_elem(n, &[(a, b, 0, 1), (b, a, 0, 1)]));
        }
    }
    out
}

/// u(n) realified in so(2n).
pub fn u_basis(n: usize) -> Vec<MatQ> {
    let mut out = offdiag_unitary(n);
    for a in 0..n {
        out.push(complex_elem(n, &[(a, a, 0, 1)]));
    }
    out
}

/// su(n) realified in so(2n).
pub fn su_basis(n: usize) -> Vec<MatQ> {
    let mut out = offdiag_unitary(n);
    for a in 0..n.saturating_sub(1) {
        out.push(complex_elem(n, &[(a, a, 0, 1), (a + 1, a + 1, 0, -1)]));
    }
    out
}

/// Left multiplication by a quaternion `w + xi + yj + zk` on `H = R⁴`.
pub fn quat_left(c: [i64; 4]) -> MatQ {
    let [w, x, y, z] = c;
    MatQ::from_i64(4, 4, &[w, -x, -y, -z, x, w, -z, y, y, z, w, -x, z, -y, x, w]).expect("4x4")
}

/// Right multiplication by a quaternion on `H = R⁴`.
pub fn quat_right(c: [i64; 4]) -> MatQ {
    let [w, x, y, z] = c;
    MatQ::from_i64(4, 4, &[w, -x, -y, -z, x, w, z, -y, y, -z, w, x, z, y, -x, w]).expect("4x4")
}

const IMAG_UNITS: [[i64; 4]; 3] = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

/// so₃₊ = left multiplications by imaginary quaternions.
pub fn so3_plus() -> Vec<MatQ> {
    IMAG_UNITS.iter().map(|&u| quat_left(u)).collect()
}

/// so₃₋ = right multiplications by imaginary quaternions.
pub fn so3_minus() -> Vec<MatQ> {
    IMAG_UNITS.iter().map(|&u| quat_right(u)).collect()
}

fn quat_elem(n: usize, entries: &[(usize, usize, [i64; 4])]) -> MatQ {
    let mut m = MatQ::zeros(4 * n, 4 * n);
    for &(a, b, c) in entries {
        let blk = &m.submatrix(4 * a, 4 * b, 4, 4) + &quat_left(c);
        m.set_block(4 * a, 4 * b, &blk);
    }
    m
}

/// sp(n) realified in so(4n); entries act by left multiplication.
pub fn sp_basis(n: usize) -> Vec<MatQ> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(quat_elem(n, &[(a, b, [1, 0, 0, 0]), (b, a, [-1, 0, 0, 0])]));
            for u in IMAG_UNITS {
                out.push(quat_elem(n, &[(a, b, u), (b, a, u)]));
            }
        }
    }
    for a in 0..n {
        for u in IMAG_UNITS {
            out.push(quat_elem(n, &[(a, a, u)]));
        }
    }
    out
}

/// sp(n−1) ⊂ sp(n) on the first `n − 1` quaternionic coordinates.
pub fn sp_sub_basis(n: usize) -> Vec<MatQ> {
    sp_basis(n - 1)
        .iter()
        .map(|m| embed(m, 4 * n, 0))
        .collect()
}

/// The sp(1) acting on the last quaternionic coordinate of `Hⁿ`.
pub fn sp_last_factor(n: usize) -> Vec<MatQ> {
    IMAG_UNITS
        .iter()
        .map(|&u| quat_elem(n, &[(n - 1, n - 1, u)]))
        .collect()
}

/// Matrix of `X ↦ [s, X]` on `span(basis)` in the coordinates given by `coords`.
fn adjoint_matrix(s: &MatQ, basis: &[MatQ], coords: impl Fn(&MatQ) -> Vec<Rational>) -> MatQ {
    let n = basis.len();
    let mut m = MatQ::zeros(n, n);
    for (j, b) in basis.iter().enumerate() {
        let c = coords(&s.commutator(b).expect("square"));
        for i in 0..n {
            m[(i, j)] = c[i].clone();
        }
    }
    m
}

/// Matrix of `ad(x)` on `span(basis)`, for a basis that is orthogonal with equal
/// norms under `−tr`; the result is skew and `x ↦ adjoint_on(x, basis)` is a
/// homomorphism whenever `span(basis)` is an ideal containing `x`.
pub fn adjoint_on(x: &MatQ, basis: &[MatQ]) -> MatQ {
    let norm = |m: &MatQ| -> Rational { -(&(m * m)).trace() };
    adjoint_matrix(x, basis, |m| {
        basis
            .iter()
            .map(|b| -(&(m * b)).trace() / norm(b))
            .collect()
    })
}

/// u(2) inside su(3) as `X ↦ diag(X, −tr X)`, realified in so(6): the three su(2)
/// generators of [`su2_standard`] followed by the central `diag(i, i, −2i)`.
pub fn u2_in_su3() -> Vec<MatQ> {
    let mut out: Vec<MatQ> = su2_standard().iter().map(|m| embed(m, 6, 0)).collect();
    out.push(complex_elem(3, &[(0, 0, 0, 1), (1, 1, 0, 1), (2, 2, 0, -2)]));
    out
}

/// The imaginary quaternion units `i, j, k` as elements of su(2) realified in so(4):
/// `diag(i, −i)`, `[[0, 1], [−1, 0]]`, `[[0, i], [i, 0]]`.
pub fn su2_standard() -> Vec<MatQ> {
    vec![
        complex_elem(2, &[(0, 0, 0, 1), (1, 1, 0, -1)]),
        complex_elem(2, &[(0, 1, 1, 0), (1, 0, -1, 0)]),
        complex_elem(2, &[(0, 1, 0, 1), (1, 0, 0, 1)]),
    ]
}

/// Adjoint representation su(2) → so(3) on the images of [`su2_standard`].
pub fn su2_adjoint(x: &[Rational; 3]) -> MatQ {
    let basis = su2_standard();
    let s = basis
        .iter()
        .zip(x)
        .fold(MatQ::zeros(4, 4), |acc, (b, c)| &acc + &b.scale(c));
    adjoint_on(&s, &basis)
}

/// Infinitesimal triality: pairs `(a, c) ∈ so(8)²` with `a(x)y + x c(y) = c(xy)`.
/// Their `c`-components form the spin representation of spin(7) on `O`.
pub fn spin7_plus_in_so8() -> Vec<MatQ> {
    let so8 = so_basis(8);
    let d = so8.len();
    // unknown vector: coefficients of a (first d) then c (next d)
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let col_oct = |m: &MatQ, j: usize| Octonion::from_vec(&m.column(j));
    for i in 0..8 {
        for j in 0..8 {
            let (s, k) = basis_product(i, j);
            let ei = Octonion::basis(i);
            let ej = Octonion::basis(j);
            let mut eq: Vec<Vec<Rational>> = vec![vec![qi(0); 2 * d]; 8];
            for (t, b) in so8.iter().enumerate() {
                let av = &col_oct(b, i) * &ej;
                let cv = &ei * &col_oct(b, j);
                let mut ck = col_oct(b, k);
                if s < 0 {
                    ck = -ck;
                }
                for r in 0..8 {
                    eq[r][t] = av.coords()[r].clone();
                    eq[r][d + t] = &cv.coords()[r] - &ck.coords()[r];
                }
            }
            rows.extend(eq);
        }
    }
    let ker = kernel_rows(&rows, 2 * d);
    ker.iter()
        .map(|v| {
            let c = so8
                .iter()
                .zip(&v[d..])
                .fold(MatQ::zeros(8, 8), |acc, (b, x)| &acc + &b.scale(x));
            primitive(&c)
        })
        .collect()
}

/// Rational orthonormal basis of traceless symmetric 3×3 matrices for `(3/2)·tr(ST)`.
fn traceless_symmetric_basis() -> Vec<MatQ> {
    let sym = |entries: &[(usize, usize, i64)]| {
        let mut m = MatQ::zeros(3, 3);
        for &(i, j, v) in entries {
            m[(i, j)] += qi(v);
            if i != j {
                m[(j, i)] += qi(v);
            }
        }
        m
    };
    let u = [
        sym(&[(0, 1, 1)]),
        sym(&[(0, 2, 1)]),
        sym(&[(1, 2, 1)]),
        sym(&[(0, 0, 1), (1, 1, -1)]),
    ];
    let u5 = sym(&[(0, 0, 1), (1, 1, 1), (2, 2, -2)]);
    // 1 + i + j has norm 3, so (1/3)·L_{1+i+j} rescales u₁..u₄ to norm 1/3 each
    let mq = quat_left([1, 1, 1, 0]);
    let third = q(1, 3);
    let mut out: Vec<MatQ> = (0..4)
        .map(|k| {
            (0..4).fold(MatQ::zeros(3, 3), |acc, j| &acc + &u[j].scale(&(&mq[(k, j)] * &third)))
        })
        .collect();
    out.push(u5.scale(&third));
    out
}

/// so₃ acting irreducibly on R⁵ (traceless symmetric 3×3 matrices).
pub fn so3_max_in_so5() -> Vec<MatQ> {
    let basis = traceless_symmetric_basis();
    let ip = |a: &MatQ, b: &MatQ| (a * b).trace() * q(3, 2);
    so_basis(3)
        .iter()
        .map(|x| adjoint_matrix(x, &basis, |m| basis.iter().map(|b| ip(m, b)).collect()))
        .collect()
}

/// Direct sum of presentations with the blocks re-scaled by `scales`.
pub fn direct_sum(parts: &[&AlgebraPresentation], scales: Option<&[Rational]>) -> Result<AlgebraPresentation, LieError> {
    let n: usize = parts.iter().map(|p| p.ambient_dim()).sum();
    let mut basis = Vec::new();
    let mut blocks = Vec::new();
    let mut metric = Vec::new();
    let mut offset = 0;
    for p in parts {
        for b in p.basis() {
            basis.push(embed(b, n, offset));
        }
        for (blk, s) in p.ideal_blocks().iter().zip(p.metric_scales()) {
            blocks.push(IdealBlock {
                label: blk.label.clone(),
                offset: blk.offset + offset,
                size: blk.size,
            });
            metric.push(s.clone());
        }
        offset += p.ambient_dim();
    }
    if let Some(s) = scales {
        if s.len() != metric.len() {
            return Err(LieError::Dimension(format!(
                "{} scales for {} blocks",
                s.len(),
                metric.len()
            )));
        }
        metric = s.to_vec();
    }
    let name = parts.iter().map(|p| p.name()).collect::<Vec<_>>().join("+");
    AlgebraPresentation::new(name, n, basis, blocks, metric)
}

pub fn so_algebra(n: usize) -> AlgebraPresentation {
    AlgebraPresentation::simple(format!("so{n}"), so_basis(n)).expect("so(n) is valid")
}
