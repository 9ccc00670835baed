//! Integer square matrices for the hot centralizer loops.

use crate::exactnum::{MatQ, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    n: usize,
    data: Vec<i64>,
    nz: Vec<(usize, usize, i64)>,
}

impl IntMat {
    pub fn zeros(n: usize) -> Self {
        IntMat {
            n,
            data: vec![0; n * n],
            nz: Vec::new(),
        }
    }

    pub fn from_dense(n: usize, data: Vec<i64>) -> Self {
        let mut m = IntMat {
            n,
            data,
            nz: Vec::new(),
        };
        m.refresh();
        m
    }

    /// Primitive integer multiple of `m` together with the factor `k`, `m = self / k`.
    pub fn from_matq(m: &MatQ) -> (IntMat, Rational) {
        let (ints, k) = m.primitive_integer();
        (IntMat::from_dense(m.rows(), ints), k)
    }

    fn refresh(&mut self) {
        let n = self.n;
        self.nz = self
            .data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(idx, &v)| (idx / n, idx % n, v))
            .collect();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn nonzeros(&self) -> &[(usize, usize, i64)] {
        &self.nz
    }

    pub fn is_zero(&self) -> bool {
        self.nz.is_empty()
    }

    /// `Σ coeffs[i] · mats[i]`.
    pub fn combination(n: usize, coeffs: &[i64], mats: &[IntMat]) -> IntMat {
        let mut data = vec![0i64; n * n];
        for (c, m) in coeffs.iter().zip(mats) {
            if *c == 0 {
                continue;
            }
            for &(i, j, v) in &m.nz {
                data[i * n + j] += c * v;
            }
        }
        IntMat::from_dense(n, data)
    }

    /// `[self, other]`, cost proportional to the nonzeros of the sparser factor.
    pub fn bracket(&self, other: &IntMat) -> IntMat {
        let n = self.n;
        let mut out = vec![0i64; n * n];
        if other.nz.len() <= self.nz.len() {
            for &(j, k, v) in &other.nz {
                for i in 0..n {
                    let a = self.data[i * n + j];
                    if a != 0 {
                        out[i * n + k] += a * v;
                    }
                }
                for kk in 0..n {
                    let b = self.data[k * n + kk];
                    if b != 0 {
                        out[j * n + kk] -= v * b;
                    }
                }
            }
        } else {
            for &(j, k, v) in &self.nz {
                for kk in 0..n {
                    let b = other.data[k * n + kk];
                    if b != 0 {
                        out[j * n + kk] += v * b;
                    }
                }
                for i in 0..n {
                    let a = other.data[i * n + j];
                    if a != 0 {
                        out[i * n + k] -= a * v;
                    }
                }
            }
        }
        IntMat::from_dense(n, out)
    }

    /// Strict upper triangle, row by row.
    pub fn upper(&self) -> Vec<i64> {
        let n = self.n;
        let mut v = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                v.push(self.data[i * n + j]);
            }
        }
        v
    }

    pub fn to_matq(&self) -> MatQ {
        MatQ::from_i64(self.n, self.n, &self.data).expect("square")
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|&x| x as f64).collect()
    }
}
