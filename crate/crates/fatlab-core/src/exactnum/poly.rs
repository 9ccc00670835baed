use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use super::{ExactError, MatQ, Rational};

/// Multivariate polynomial over the rationals with a fixed number of variables.
///
/// Monomials are exponent vectors ordered lexicographically, so the largest
/// key is the leading term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn leading(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Quotient `self / d` when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut q = Poly::zero(self.nvars);
        let mut r = self.clone();
        while let Some((re, rc)) = r.leading() {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let te: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let tc = rc / &dc;
            let mut t = Poly::zero(self.nvars);
            t.terms.insert(te, tc);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * x.pow(k as i32))
            })
            .sum()
    }

    /// Substitutes `var = value`, keeping the variable count.
    pub fn substitute(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[var], 0);
            out.add_term(e2, c * &value.pow(k as i32));
        }
        out
    }

    /// Sufficient test for having no real zero: every exponent even, every
    /// coefficient of one sign, and a nonzero constant term.
    pub fn never_vanishes_over_reals(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let c0 = self.constant_term();
        if c0.is_zero() {
            return false;
        }
        let sign = c0.signum();
        self.terms
            .iter()
            .all(|(e, c)| c.signum() == sign && e.iter().all(|k| k % 2 == 0))
    }

    /// The only variable occurring in a nonconstant polynomial, if there is exactly one.
    pub fn single_variable(&self) -> Option<usize> {
        let mut found = None;
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    match found {
                        None => found = Some(i),
                        Some(j) if j != i => return None,
                        _ => {}
                    }
                }
            }
        }
        found
    }

    /// Dense coefficients `c_0..c_d` of a polynomial in `var` alone.
    fn univariate_coeffs(&self, var: usize) -> Vec<Rational> {
        let d = self.terms.keys().map(|e| e[var]).max().unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); d + 1];
        for (e, v) in &self.terms {
            c[e[var] as usize] += v;
        }
        c
    }

    /// Splits off every rational root of a polynomial in `var` alone.
    ///
    /// Returns the distinct roots and the cofactor with no rational root.
    /// Candidates come from the rational root theorem; `None` when the
    /// coefficients are too large to enumerate divisors.
    pub fn deflate_rational_roots(&self, var: usize) -> Option<(Vec<Rational>, Poly)> {
        let mut c = self.univariate_coeffs(var);
        let mut roots = Vec::new();
        if c.iter().all(|x| x.is_zero()) {
            return None;
        }
        if c[0].is_zero() {
            roots.push(Rational::zero());
            while c.len() > 1 && c[0].is_zero() {
                c.remove(0);
            }
        }
        let scale = super::rational::lcm_denominators(c.iter());
        let ints: Vec<i64> = c
            .iter()
            .map(|x| (x * &Rational::from(scale.clone())).to_i64())
            .collect::<Option<_>>()?;
        let (lead, low) = (*ints.last()?, ints[0]);
        let divisors = |n: i64| -> Option<Vec<i64>> {
            let n = n.checked_abs()?;
            if n > 1_000_000_000_000 {
                return None;
            }
            let mut d = Vec::new();
            let mut k = 1;
            while k * k <= n {
                if n % k == 0 {
                    d.push(k);
                    d.push(n / k);
                }
                k += 1;
            }
            Some(d)
        };
        let (ps, qs) = (divisors(low)?, divisors(lead)?);
        let mut poly: Vec<Rational> = c;
        for &p in &ps {
            for &qd in &qs {
                for sign in [1, -1] {
                    let r = Rational::new(sign * p, qd);
                    if roots.contains(&r) {
                        continue;
                    }
                    let mut hit = false;
                    while poly.len() > 1 && horner(&poly, &r).is_zero() {
                        poly = synthetic_division(&poly, &r);
                        hit = true;
                    }
                    if hit {
                        roots.push(r);
                    }
                }
            }
        }
        let mut rest = Poly::zero(self.nvars);
        for (k, v) in poly.into_iter().enumerate() {
            let mut e = vec![0; self.nvars];
            e[var] = k as u32;
            rest.add_term(e, v);
        }
        roots.sort();
        Some((roots, rest))
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        let mut s = String::new();
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                let _ = write!(s, "{mag}");
            } else if mag.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                let _ = write!(s, "{mag}*{}", mono.join("*"));
            }
        }
        s
    }
}

fn horner(c: &[Rational], x: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
}

/// Quotient of `c` by `(v − r)` when `r` is a root.
fn synthetic_division(c: &[Rational], r: &Rational) -> Vec<Rational> {
    let d = c.len() - 1;
    let mut q = vec![Rational::zero(); d];
    let mut carry = Rational::zero();
    for k in (1..=d).rev() {
        carry = &c[k] + &(carry * r);
        q[k - 1] = carry.clone();
    }
    q
}

/// Matrix of polynomials in named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat {
    vars: Vec<String>,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

/// Result of fraction-free elimination over the rational function field.
#[derive(Clone, Debug, Serialize)]
pub struct GenericRank {
    pub rank: usize,
    /// Pivot polynomials in elimination order, formatted with variable names.
    pub pivots: Vec<String>,
    /// `±` the last pivot for square full-rank input.
    pub determinant: Option<String>,
    /// Zero set of the last pivot, outside of which the rank equals `rank`.
    pub degenerate_locus: Option<String>,
    /// The last pivot has no real zero.
    pub rank_constant_over_reals: bool,
    #[serde(skip)]
    pub last_pivot: Option<Poly>,
}

/// One case of a projective case split.
#[derive(Clone, Debug, Serialize)]
pub struct CaseRank {
    pub assignment: Vec<(String, Rational)>,
    pub result: GenericRank,
    /// The matrix after the case substitution.
    #[serde(skip)]
    pub matrix: PolyMat,
}

impl PolyMat {
    pub fn new(vars: Vec<String>, rows: usize, cols: usize, data: Vec<Poly>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|p| p.nvars != vars.len()) {
            return Err(ExactError::Shape("inconsistent variable count".into()));
        }
        Ok(PolyMat {
            vars,
            rows,
            cols,
            data,
        })
    }

    /// Entries `Σ_i v_i · coeffs[i]`, all coefficient matrices of equal shape.
    pub fn linear(vars: Vec<String>, coeffs: &[MatQ]) -> Result<Self, ExactError> {
        if vars.len() != coeffs.len() || coeffs.is_empty() {
            return Err(ExactError::Shape("one coefficient matrix per variable".into()));
        }
        let (r, c) = (coeffs[0].rows(), coeffs[0].cols());
        if coeffs.iter().any(|m| m.rows() != r || m.cols() != c) {
            return Err(ExactError::Shape("coefficient shapes differ".into()));
        }
        let n = vars.len();
        let mut data = vec![Poly::zero(n); r * c];
        for (k, m) in coeffs.iter().enumerate() {
            let v = Poly::var(n, k);
            for i in 0..r {
                for j in 0..c {
                    if !m[(i, j)].is_zero() {
                        data[i * c + j] = data[i * c + j].add(&v.scale(&m[(i, j)]));
                    }
                }
            }
        }
        PolyMat::new(vars, r, c, data)
    }

    /// Builds from string-free closures, mainly for tests.
    pub fn from_fn(vars: &[&str], rows: usize, cols: usize, f: impl Fn(usize, usize) -> Poly) -> Self {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        PolyMat::new(vars.iter().map(|s| s.to_string()).collect(), rows, cols, data)
            .expect("consistent")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn var_index(&self, name: &str) -> Result<usize, ExactError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| ExactError::UnknownVariable(name.to_string()))
    }

    pub fn substitute(&self, name: &str, value: &Rational) -> Result<PolyMat, ExactError> {
        let k = self.var_index(name)?;
        Ok(PolyMat {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.substitute(k, value)).collect(),
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Result<MatQ, ExactError> {
        if point.len() != self.vars.len() {
            return Err(ExactError::Shape("point arity".into()));
        }
        MatQ::new(
            self.rows,
            self.cols,
            self.data.iter().map(|p| p.eval(point)).collect(),
        )
    }

    /// Rank over the field of rational functions by Bareiss elimination.
    pub fn generic_rank(&self) -> GenericRank {
        let mut a: Vec<Vec<Poly>> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let n = self.vars.len();
        let height = |p: &Poly| (p.total_degree(), p.num_terms());
        let mut prev = Poly::constant(n, Rational::one());
        let mut pivots: Vec<Poly> = Vec::new();
        let mut swaps = 0usize;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut best: Option<usize> = None;
            for i in r..self.rows {
                if !a[i][c].is_zero() && best.is_none_or(|b| height(&a[i][c]) < height(&a[b][c])) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { continue };
            if p != r {
                a.swap(r, p);
                swaps += 1;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let pr = &top[r];
            for row in bottom.iter_mut() {
                let f = row[c].clone();
                for j in c + 1..self.cols {
                    let num = pr[c].mul(&row[j]).sub(&f.mul(&pr[j]));
                    row[j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                row[c] = Poly::zero(n);
            }
            prev = pr[c].clone();
            pivots.push(prev.clone());
            r += 1;
        }
        let rank = pivots.len();
        let last = pivots.last().cloned();
        let determinant = (self.rows == self.cols && rank == self.rows).then(|| {
            let d = last.clone().expect("nonempty");
            if swaps % 2 == 1 { d.neg() } else { d }
        });
        let rank_constant_over_reals = last.as_ref().is_none_or(|p| p.never_vanishes_over_reals());
        GenericRank {
            rank,
            pivots: pivots.iter().map(|p| p.format(&self.vars)).collect(),
            determinant: determinant.map(|p| p.format(&self.vars)),
            degenerate_locus: last
                .as_ref()
                .filter(|p| !p.is_constant())
                .map(|p| format!("{} = 0", p.format(&self.vars))),
            rank_constant_over_reals,
            last_pivot: last,
        }
    }

    /// Projective case split over at most two case variables.
    ///
    /// Case `k` sets the first `k` case variables to 0 and the next one to 1,
    /// which covers every nonzero point up to scale. When other variables are
    /// present, a final case sets all case variables to 0.
    pub fn case_split(&self, case_vars: &[&str]) -> Result<Vec<CaseRank>, ExactError> {
        if case_vars.len() > 2 {
            return Err(ExactError::TooManyCaseVars(case_vars.len()));
        }
        for v in case_vars {
            self.var_index(v)?;
        }
        let mut cases = Vec::new();
        for k in 0..case_vars.len() {
            let mut m = self.clone();
            let mut assignment = Vec::new();
            for v in &case_vars[..k] {
                m = m.substitute(v, &Rational::zero())?;
                assignment.push((v.to_string(), Rational::zero()));
            }
            m = m.substitute(case_vars[k], &Rational::one())?;
            assignment.push((case_vars[k].to_string(), Rational::one()));
            cases.push(CaseRank {
                assignment,
                result: m.generic_rank(),
                matrix: m,
            });
        }
        if self.vars.len() > case_vars.len() {
            let mut m = self.clone();
            let mut assignment = Vec::new();
            for v in case_vars {
                m = m.substitute(v, &Rational::zero())?;
                assignment.push((v.to_string(), Rational::zero()));
            }
            cases.push(CaseRank {
                assignment,
                result: m.generic_rank(),
                matrix: m,
            });
        }
        Ok(cases)
    }
}
