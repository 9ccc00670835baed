//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Rational rows are first scaled to integer rows. Elimination runs in
//! checked `i128` and restarts in `BigInt` on overflow, so results are exact
//! either way. Pivot choice: the nonzero entry of smallest magnitude in the
//! current column, first row on ties.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{lcm_denominators, Rational};

trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn smaller(&self, other: &Self) -> bool;
    /// `(akk * aij - aik * akj) / prev`, exact.
    fn bareiss(akk: &Self, aij: &Self, aik: &Self, akj: &Self, prev: &Self) -> Option<Self>;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn smaller(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn bareiss(akk: &Self, aij: &Self, aik: &Self, akj: &Self, prev: &Self) -> Option<Self> {
        let num = akk.checked_mul(*aij)?.checked_sub(aik.checked_mul(*akj)?)?;
        debug_assert_eq!(num % prev, 0);
        Some(num / prev)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn smaller(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn bareiss(akk: &Self, aij: &Self, aik: &Self, akj: &Self, prev: &Self) -> Option<Self> {
        let num = akk * aij - aik * akj;
        if prev.is_one() {
            return Some(num);
        }
        debug_assert!(Zero::is_zero(&(&num % prev)));
        Some(num / prev)
    }
}

fn echelon<T: Ring>(a: &mut [Vec<T>], cols: usize) -> Option<Vec<(usize, usize)>> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..nrows {
            if !a[i][c].is_zero() && best.is_none_or(|b| a[i][c].smaller(&a[b][c])) {
                best = Some(i);
            }
        }
        let Some(p) = best else { continue };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pr = &top[r];
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                row[j] = T::bareiss(&pr[c], &row[j], &f, &pr[j], &prev)?;
            }
            row[c] = T::zero();
        }
        prev = pr[c].clone();
        pivots.push((r, c));
        r += 1;
    }
    Some(pivots)
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = lcm_denominators(row);
    row.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

/// Integer echelon form produced by fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<(usize, usize)>,
    cols: usize,
}

impl Echelon {
    pub fn from_integer_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
        let small: Option<Vec<Vec<i128>>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().map(i128::from)).collect())
            .collect();
        if let Some(mut m) = small {
            if let Some(pivots) = echelon(&mut m, cols) {
                let rows = m
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect();
                return Echelon { rows, pivots, cols };
            }
        }
        let mut m = rows;
        let pivots = echelon(&mut m, cols).expect("bigint elimination cannot overflow");
        Echelon { rows: m, pivots, cols }
    }

    pub fn from_rational_rows(rows: &[Vec<Rational>], cols: usize) -> Echelon {
        let ints = rows.iter().map(|r| integer_row(r)).collect();
        Echelon::from_integer_rows(ints, cols)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// `(row, column)` of each pivot, in elimination order.
    pub fn pivots(&self) -> &[(usize, usize)] {
        &self.pivots
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(_, c)| c).collect()
    }

    fn back_substitute(&self, v: &mut [Rational], rhs: Option<&[BigInt]>) {
        for &(r, c) in self.pivots.iter().rev() {
            let row = &self.rows[r];
            let mut acc = match rhs {
                Some(b) => Rational::from(b[r].clone()),
                None => Rational::zero(),
            };
            for j in c + 1..self.cols {
                if !Zero::is_zero(&row[j]) && !v[j].is_zero() {
                    acc -= &Rational::from(row[j].clone()) * &v[j];
                }
            }
            v[c] = acc / Rational::from(row[c].clone());
        }
    }

    /// Basis of the null space: one vector per free column, that column set to 1.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let piv: Vec<bool> = {
            let mut p = vec![false; self.cols];
            for &(_, c) in &self.pivots {
                p[c] = true;
            }
            p
        };
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !piv[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            self.back_substitute(&mut v, None);
            out.push(v);
        }
        out
    }
}

pub fn rank_rows(rows: &[Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    Echelon::from_rational_rows(rows, cols).rank()
}

pub fn kernel_rows(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    Echelon::from_rational_rows(rows, cols).kernel()
}

/// Exact rank of an integer matrix.
pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    if let Some(p) = echelon(&mut m, cols) {
        return p.len();
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    echelon(&mut m, cols).expect("bigint").len()
}

const P61: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P61 as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Rank modulo the prime 2^61 − 1.
///
/// Never exceeds the rational rank, so `cols - rank_mod_p` bounds the
/// rational nullity from above. Used as a cheap screen in sampling loops.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(P61 as i64) as u64).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.len() {
            break;
        }
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = powmod(m[rank][c], P61 - 2);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pr = &top[rank];
        for row in bottom.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mulmod(row[c], inv);
            for j in c..cols {
                let t = mulmod(f, pr[j]);
                row[j] = (row[j] + P61 - t) % P61;
            }
        }
        rank += 1;
    }
    rank
}

/// Some solution of `A v = b`, or `None` when the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let ints: Vec<Vec<BigInt>> = aug.iter().map(|r| integer_row(r)).collect();
    let e = Echelon::from_integer_rows(ints, cols + 1);
    if e.pivots.iter().any(|&(_, c)| c == cols) {
        return None;
    }
    let rhs: Vec<BigInt> = e.rows.iter().map(|r| r[cols].clone()).collect();
    let inner = Echelon {
        rows: e.rows.clone(),
        pivots: e.pivots.clone(),
        cols,
    };
    let mut v = vec![Rational::zero(); cols];
    inner.back_substitute(&mut v, Some(&rhs));
    Some(v)
}
