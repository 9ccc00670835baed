//! Octonions over the rationals in the basis `1, i, j, k, ℓ, iℓ, jℓ, kℓ`.
//!
//! Products read `(row)(column)` in [`TABLE`]:
//!
//! ```
//! use fatlab_core::octonion::{Octonion, I, J, K, L, IL, JL, KL};
//! let e = Octonion::basis;
//! assert_eq!(e(I) * e(J), e(K));
//! assert_eq!(e(J) * e(I), -e(K));
//! assert_eq!(e(JL) * e(KL), -e(I));
//! assert_eq!(e(I) * e(L), e(IL));
//! assert_eq!(e(L) * e(I), -e(IL));
//! assert_eq!(e(IL) * e(JL), -e(K));
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exactnum::{MatQ, Rational};

pub const ONE: usize = 0;
pub const I: usize = 1;
pub const J: usize = 2;
pub const K: usize = 3;
pub const L: usize = 4;
pub const IL: usize = 5;
pub const JL: usize = 6;
pub const KL: usize = 7;

pub const BASIS_NAMES: [&str; 8] = ["1", "i", "j", "k", "l", "il", "jl", "kl"];

/// `TABLE[a-1][b-1] = (sign, index)` with `e_a · e_b = sign · e_index`, for imaginary units.
pub const TABLE: [[(i8, usize); 7]; 7] = [
    [(-1, ONE), (1, K), (-1, J), (1, IL), (-1, L), (-1, KL), (1, JL)],
    [(-1, K), (-1, ONE), (1, I), (1, JL), (1, KL), (-1, L), (-1, IL)],
    [(1, J), (-1, I), (-1, ONE), (1, KL), (-1, JL), (1, IL), (-1, L)],
    [(-1, IL), (-1, JL), (-1, KL), (-1, ONE), (1, I), (1, J), (1, K)],
    [(1, L), (-1, KL), (1, JL), (-1, I), (-1, ONE), (-1, K), (1, J)],
    [(1, KL), (1, L), (-1, IL), (-1, J), (1, K), (-1, ONE), (-1, I)],
    [(-1, JL), (1, IL), (1, L), (-1, K), (-1, J), (1, I), (-1, ONE)],
];

/// Product of basis elements as `(sign, index)`.
pub fn basis_product(a: usize, b: usize) -> (i8, usize) {
    match (a, b) {
        (0, _) => (1, b),
        (_, 0) => (1, a),
        _ => TABLE[a - 1][b - 1],
    }
}

/// Checks squares, anticommutation and that every pair of imaginary units
/// generates an associative quaternion subalgebra.
pub fn verify_table() -> Result<(), String> {
    for a in 1..8 {
        if TABLE[a - 1][a - 1] != (-1, ONE) {
            return Err(format!("{}^2 != -1", BASIS_NAMES[a]));
        }
        for b in 1..8 {
            if a == b {
                continue;
            }
            let (s1, c1) = basis_product(a, b);
            let (s2, c2) = basis_product(b, a);
            if c1 != c2 || s1 != -s2 || c1 == ONE || c1 == a || c1 == b {
                return Err(format!(
                    "{}·{} not anticommuting imaginary",
                    BASIS_NAMES[a], BASIS_NAMES[b]
                ));
            }
        }
    }
    for a in 1..8 {
        for b in a + 1..8 {
            let (_, c) = basis_product(a, b);
            let span = [ONE, a, b, c];
            for &x in &span {
                for &y in &span {
                    for &z in &span {
                        let [ex, ey, ez] = [x, y, z].map(Octonion::basis);
                        let lhs = ex.mul_unchecked(&ey).mul_unchecked(&ez);
                        let rhs = ex.mul_unchecked(&ey.mul_unchecked(&ez));
                        if lhs != rhs {
                            return Err(format!(
                                "subalgebra <{}, {}> not associative",
                                BASIS_NAMES[a], BASIS_NAMES[b]
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn table_checked() {
    static CHECK: OnceLock<Result<(), String>> = OnceLock::new();
    if let Err(e) = CHECK.get_or_init(verify_table) {
        panic!("octonion table transcription error: {e}");
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Octonion {
    coords: [Rational; 8],
}

impl Octonion {
    pub fn new(coords: [Rational; 8]) -> Self {
        Octonion { coords }
    }

    pub fn from_i64(c: [i64; 8]) -> Self {
        Octonion {
            coords: c.map(Rational::integer),
        }
    }

    pub fn zero() -> Self {
        Octonion {
            coords: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn one() -> Self {
        Octonion::basis(ONE)
    }

    pub fn basis(i: usize) -> Self {
        let mut o = Octonion::zero();
        o.coords[i] = Rational::one();
        o
    }

    pub fn from_vec(v: &[Rational]) -> Self {
        assert_eq!(v.len(), 8, "octonion needs 8 coordinates");
        Octonion {
            coords: std::array::from_fn(|i| v[i].clone()),
        }
    }

    pub fn coords(&self) -> &[Rational; 8] {
        &self.coords
    }

    pub fn real(&self) -> &Rational {
        &self.coords[0]
    }

    pub fn is_imaginary(&self) -> bool {
        self.coords[0].is_zero()
    }

    pub fn conj(&self) -> Octonion {
        let mut c = self.coords.clone();
        for x in c.iter_mut().skip(1) {
            *x = -&*x;
        }
        Octonion { coords: c }
    }

    pub fn norm2(&self) -> Rational {
        self.coords.iter().map(|x| x * x).sum()
    }

    pub fn scale(&self, k: &Rational) -> Octonion {
        Octonion {
            coords: std::array::from_fn(|i| &self.coords[i] * k),
        }
    }

    pub fn mul(&self, other: &Octonion) -> Octonion {
        table_checked();
        self.mul_unchecked(other)
    }

    fn mul_unchecked(&self, other: &Octonion) -> Octonion {
        let mut out = Octonion::zero();
        for a in 0..8 {
            if self.coords[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if other.coords[b].is_zero() {
                    continue;
                }
                let (s, c) = basis_product(a, b);
                let t = &self.coords[a] * &other.coords[b];
                if s > 0 {
                    out.coords[c] += t;
                } else {
                    out.coords[c] -= t;
                }
            }
        }
        out
    }
}

pub fn oct_mul(a: &Octonion, b: &Octonion) -> Octonion {
    a.mul(b)
}

pub fn conj(a: &Octonion) -> Octonion {
    a.conj()
}

pub fn norm2(a: &Octonion) -> Rational {
    a.norm2()
}

/// Matrix of `x ↦ u x`; column `j` is `u e_j`.
pub fn left_mult_matrix(u: &Octonion) -> MatQ {
    mult_matrix(|e| u.mul(&e))
}

/// Matrix of `x ↦ x u`; column `j` is `e_j u`.
pub fn right_mult_matrix(u: &Octonion) -> MatQ {
    mult_matrix(|e| e.mul(u))
}

fn mult_matrix(f: impl Fn(Octonion) -> Octonion) -> MatQ {
    let mut m = MatQ::zeros(8, 8);
    for j in 0..8 {
        let col = f(Octonion::basis(j));
        for i in 0..8 {
            m[(i, j)] = col.coords[i].clone();
        }
    }
    m
}

/// Applies an 8×8 matrix to an octonion viewed as a column vector.
pub fn apply(m: &MatQ, x: &Octonion) -> Octonion {
    Octonion::from_vec(&m.mul_vec(x.coords()).expect("8x8 matrix"))
}

/// The Moufang identities `(ab)(ca) = (a(bc))a`, `((ab)a)c = a(b(ac))`
/// and `((ab)c)b = a(b(cb))`.
pub fn check_moufang(a: &Octonion, b: &Octonion, c: &Octonion) -> bool {
    let first = (a * b) * (c * a) == (a * &(b * c)) * a;
    let second = ((a * b) * a) * c == a * &(b * &(a * c));
    let third = ((a * b) * c) * b == a * &(b * &(c * b));
    first && second && third
}

/// Left and right alternative laws.
pub fn check_alternative(a: &Octonion, b: &Octonion) -> bool {
    a * &(a * b) == (a * a) * b && (b * a) * a == b * &(a * a)
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        Octonion::mul(&self, &rhs)
    }
}

impl Mul<&Octonion> for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        Octonion::mul(self, rhs)
    }
}

impl Mul<&Octonion> for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        Octonion::mul(&self, rhs)
    }
}

impl Mul<Octonion> for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        Octonion::mul(self, &rhs)
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, rhs: &Octonion) -> Octonion {
        Octonion {
            coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]),
        }
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        &self + &rhs
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &Octonion) -> Octonion {
        Octonion {
            coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]),
        }
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        &self - &rhs
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        self.scale(&-Rational::one())
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coords.iter().zip(BASIS_NAMES) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (name, mag.is_one()) {
                ("1", _) => mag.to_string(),
                (n, true) => n.to_string(),
                (n, false) => format!("{mag}{n}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
