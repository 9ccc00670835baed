//! Named pairs and triples with their orbit hints, built from [`super::builders`]
//! and exchangeable as JSON files.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::builders::*;
use super::hints::{row_major, to_matrix, HintTarget, WitnessHint};
use super::presentation::{
    AlgebraData, AlgebraPresentation, IdealBlock, PairPresentation, TriplePresentation,
};
use super::LieError;
use crate::exactnum::{qi, MatQ, Rational};

/// On-disk schema version for preset files.
pub const PRESET_SCHEMA: u32 = 1;

#[derive(Clone, Debug)]
pub struct TriplePreset {
    pub id: String,
    pub display: String,
    pub triple: TriplePresentation,
    pub hints: Vec<WitnessHint>,
}

#[derive(Clone, Debug)]
pub struct PairPreset {
    pub id: String,
    pub display: String,
    pub pair: PairPresentation,
    pub hints: Vec<WitnessHint>,
}

/// One block of a block-diagonal algebra.
struct Part {
    label: String,
    size: usize,
    scale: Rational,
}

struct Blocks(Vec<Part>);

impl Blocks {
    fn new(parts: &[(&str, usize)]) -> Self {
        Blocks(
            parts
                .iter()
                .map(|&(l, s)| Part {
                    label: l.into(),
                    size: s,
                    scale: qi(1),
                })
                .collect(),
        )
    }

    fn with_scales(mut self, scales: &[Rational]) -> Self {
        for (p, s) in self.0.iter_mut().zip(scales) {
            p.scale = s.clone();
        }
        self
    }

    fn n(&self) -> usize {
        self.0.iter().map(|p| p.size).sum()
    }

    fn offset(&self, b: usize) -> usize {
        self.0[..b].iter().map(|p| p.size).sum()
    }

    /// Block-diagonal matrix with `m` placed in block `b` and zeros elsewhere.
    fn at(&self, b: usize, m: &MatQ) -> MatQ {
        embed(m, self.n(), self.offset(b))
    }

    /// Sum of per-block contributions.
    fn pair(&self, parts: &[(usize, &MatQ)]) -> MatQ {
        parts
            .iter()
            .fold(MatQ::zeros(self.n(), self.n()), |acc, (b, m)| &acc + &self.at(*b, m))
    }

    fn algebra(&self, name: &str, basis: Vec<MatQ>) -> Result<Arc<AlgebraPresentation>, LieError> {
        let blocks = self
            .0
            .iter()
            .enumerate()
            .map(|(i, p)| IdealBlock {
                label: p.label.clone(),
                offset: self.offset(i),
                size: p.size,
            })
            .collect();
        let scales = self.0.iter().map(|p| p.scale.clone()).collect();
        Ok(Arc::new(AlgebraPresentation::new(name, self.n(), basis, blocks, scales)?))
    }
}

fn single(n: usize) -> Blocks {
    Blocks::new(&[("main", n)])
}

fn in_block(blocks: &Blocks, b: usize, ms: &[MatQ]) -> Vec<MatQ> {
    ms.iter().map(|m| blocks.at(b, m)).collect()
}

fn so_upper(k: usize, n: usize) -> Vec<MatQ> {
    so_basis(k).iter().map(|m| embed(m, n, 0)).collect()
}

fn e(n: usize, i: usize) -> Vec<Rational> {
    unit(n, i)
}

fn build(
    id: &str,
    display: &str,
    g: Arc<AlgebraPresentation>,
    k: Vec<MatQ>,
    h: Vec<MatQ>,
    hints: impl FnOnce(&TriplePresentation) -> Vec<WitnessHint>,
) -> Result<TriplePreset, LieError> {
    let triple = TriplePresentation::new(id, g, k, h)?;
    let hints = hints(&triple);
    Ok(TriplePreset {
        id: id.into(),
        display: display.into(),
        triple,
        hints,
    })
}

const SO_TRANSITIVE: &str =
    "the isotropy group SO(n) acts transitively on the unit sphere of the complement";

/// `so(n−1) ⊂ so(n) ⊂ so(n+1)` in the upper-left blocks.
pub fn so_chain(n: usize) -> Result<TriplePreset, LieError> {
    if n < 3 {
        return Err(LieError::Degenerate(format!("so chain needs n >= 3, got {n}")));
    }
    let g = single(n + 1).algebra(&format!("so{}", n + 1), so_basis(n + 1))?;
    let id = format!("so{}-so{}-so{}", n - 1, n, n + 1);
    let display = format!("so{} ⊂ so{} ⊂ so{}", n - 1, n, n + 1);
    build(&id, &display, g, so_upper(n, n + 1), so_upper(n - 1, n + 1), |t| {
        let y = embed(&m_vector(&e(n - 1, 0)), n + 1, 0);
        if n == 3 {
            let x1 = m_vector(&e(3, 0));
            let x3 = m_vector(&e(3, 2));
            vec![
                WitnessHint::slice(
                    HintTarget::P,
                    &["b", "a"],
                    &[x3, x1],
                    "SO(2) rotates the first two coordinates of p and fixes the third, so every orbit meets a·M(e1) + b·M(e3)",
                ),
                WitnessHint::transitive(
                    HintTarget::M,
                    &[y],
                    "SO(2) acts transitively on the unit circle of m",
                ),
            ]
        } else {
            let _ = t;
            vec![WitnessHint::explicit(
                HintTarget::M,
                &[y],
                "y = diag(M(e1), 0) in m commutes with M(z) for z in the span of e2..e(n-1)",
            )]
        }
    })
}

/// `{0} ⊂ so3 ⊂ so4`.
pub fn trivial_so3_so4() -> Result<TriplePreset, LieError> {
    let g = single(4).algebra("so4", so_basis(4))?;
    build("0-so3-so4", "{0} ⊂ so3 ⊂ so4", g, so_upper(3, 4), Vec::new(), |_| {
        vec![
            WitnessHint::transitive(
                HintTarget::P,
                &[m_vector(&e(3, 0))],
                "SO(3) normalizes the trivial subgroup and acts transitively on the unit sphere of p",
            ),
            WitnessHint::transitive(
                HintTarget::M,
                &[embed(&MatQ::skew_unit(3, 0, 1), 4, 0)],
                "SO(3) acts transitively on the unit sphere of so3 by the adjoint action",
            ),
        ]
    })
}

/// `u1 ⊂ u2 ⊂ u1 ⊕ so4` with `u2 = u1 ⊕ so3` and the subalgebra of slope (1, 1).
pub fn u1_u2_u1so4() -> Result<TriplePreset, LieError> {
    let b = Blocks::new(&[("u1", 2), ("so4", 4)]);
    let j = MatQ::skew_unit(2, 0, 1);
    let mut basis = in_block(&b, 0, &[j.clone()]);
    basis.extend(in_block(&b, 1, &so_basis(4)));
    let g = b.algebra("u1+so4", basis)?;
    let mut k = in_block(&b, 0, &[j.clone()]);
    k.extend(in_block(&b, 1, &so_upper(3, 4)));
    let e01 = embed(&MatQ::skew_unit(3, 0, 1), 4, 0);
    let h = vec![b.pair(&[(0, &j), (1, &e01)])];
    let e02 = b.at(1, &embed(&MatQ::skew_unit(3, 0, 2), 4, 0));
    let x1 = b.at(1, &m_vector(&e(3, 0)));
    let x3 = b.at(1, &m_vector(&e(3, 2)));
    build("u1-u2-u1+so4", "u1 ⊂ u2 ⊂ u1 ⊕ so4", g, k, h, |t| {
        let fixed = t.m().basis()[0].clone();
        vec![
            WitnessHint::slice(
                HintTarget::P,
                &["b", "a"],
                &[x3, x1],
                "the circle rotates the first two coordinates of p and fixes the third",
            ),
            WitnessHint::slice(
                HintTarget::M,
                &["a", "c"],
                &[e02, fixed],
                "the circle rotates the plane spanned by E02, E12 in m and fixes its orthogonal line",
            ),
        ]
    })
}

/// `Δso3 ⊂ so3 ⊕ so3 ⊂ so3 ⊕ so4` with metric scales `(1, t)`.
pub fn diagonal_so3_family(t: &Rational) -> Result<TriplePreset, LieError> {
    let b = Blocks::new(&[("so3", 3), ("so4", 4)]).with_scales(&[qi(1), t.clone()]);
    let mut basis = in_block(&b, 0, &so_basis(3));
    basis.extend(in_block(&b, 1, &so_basis(4)));
    let name = if t == &qi(1) {
        "so3+so4".to_string()
    } else {
        format!("so3+so4@{t}")
    };
    let g = b.algebra(&name, basis)?;
    let mut k = in_block(&b, 0, &so_basis(3));
    k.extend(in_block(&b, 1, &so_upper(3, 4)));
    let h: Vec<MatQ> = so_basis(3)
        .iter()
        .map(|x| b.pair(&[(0, x), (1, &embed(x, 4, 0))]))
        .collect();
    let id = if t == &qi(1) {
        "so3-so4-so3+so4".to_string()
    } else {
        format!("so3-so4-so3+so4@{t}")
    };
    build(&id, "so3 ⊂ so4 ⊂ so3 ⊕ so4", g, k, h, |tr| {
        vec![
            WitnessHint::transitive(
                HintTarget::P,
                &[tr.p().basis()[0].clone()],
                "the diagonal SO(3) acts on p as on R^3, transitively on the unit sphere",
            ),
            WitnessHint::transitive(
                HintTarget::M,
                &[tr.m().basis()[0].clone()],
                "the diagonal SO(3) acts on m by the adjoint action, transitively on the unit sphere",
            ),
        ]
    })
}

/// `su3 ⊂ g2 ⊂ so7`.
pub fn su3_g2_so7() -> Result<TriplePreset, LieError> {
    let g = single(7).algebra("so7", so_basis(7))?;
    let mut v = vec![qi(0); 7];
    v[0] = qi(1);
    let x1 = a_perp(&v)?;
    v[0] = qi(0);
    v[6] = qi(1);
    let x7 = a_perp(&v)?;
    let y = c_perp(&e(6, 0))?;
    build("su3-g2-so7", "su3 ⊂ g2 ⊂ so7", g, g2_basis(), su3_in_g2(), |_| {
        vec![
            WitnessHint::slice(
                HintTarget::P,
                &["v1", "v7"],
                &[x1, x7],
                "SU(3) acts on p with cohomogeneity one; every orbit meets A(v1, 0, ..., 0, v7)",
            ),
            WitnessHint::transitive(
                HintTarget::M,
                &[y],
                "SU(3) acts transitively on the unit sphere of m = C^3",
            ),
        ]
    })
}

/// `g2 ⊂ so7 ⊂ so8`.
pub fn g2_so7_so8() -> Result<TriplePreset, LieError> {
    let g = single(8).algebra("so8", so_basis(8))?;
    let h = g2_basis().iter().map(|m| embed(m, 8, 0)).collect();
    let x = m_vector(&e(7, 0));
    let y = embed(&a_perp(&e(7, 0))?, 8, 0);
    build("g2-so7-so8", "g2 ⊂ so7 ⊂ so8", g, so_upper(7, 8), h, |_| {
        vec![
            WitnessHint::transitive(
                HintTarget::P,
                &[x],
                "G2 acts transitively on the unit sphere of p = R^7",
            ),
            WitnessHint::transitive(
                HintTarget::M,
                &[y],
                "G2 acts transitively on the unit sphere of m = R^7",
            ),
        ]
    })
}

/// `spin7 ⊂ spin9 ⊂ spin10`, with spin7 acting on R^8 by its spin representation.
pub fn spin7_so9_so10() -> Result<TriplePreset, LieError> {
    let g = single(10).algebra("so10", so_basis(10))?;
    let h = spin7_plus_in_so8().iter().map(|m| embed(m, 10, 0)).collect();
    build("spin7-so9-so10", "spin7 ⊂ spin9 ⊂ spin10", g, so_upper(9, 10), h, |_| Vec::new())
}

/// `so3 ⊂ so5 ⊂ so6` with so3 acting irreducibly on R^5.
pub fn so3max_so5_so6() -> Result<TriplePreset, LieError> {
    let g = single(6).algebra("so6", so_basis(6))?;
    let h = so3_max_in_so5().iter().map(|m| embed(m, 6, 0)).collect();
    build("so3max-so5-so6", "so3 ⊂ so5 ⊂ so6 (irreducible)", g, so_upper(5, 6), h, |_| Vec::new())
}

fn sp2_so6(id: &str, display: &str, h4: Vec<MatQ>) -> Result<TriplePreset, LieError> {
    let g = single(6).algebra("so6", so_basis(6))?;
    let h = h4.iter().map(|m| embed(m, 6, 0)).collect();
    build(id, display, g, so_upper(5, 6), h, |t| {
        if t.h().dim() == 6 {
            let y = embed(&m_vector(&e(4, 0)), 6, 0);
            vec![WitnessHint::explicit(
                HintTarget::M,
                &[y],
                "y = diag(M(e1), 0) in m commutes with M(z) for z in the span of e2..e4",
            )]
        } else {
            Vec::new()
        }
    })
}

/// `sp1 ⊂ sp2 ⊂ so6` with `sp2 = so5`; sp1 is one factor of `so4 = sp1 ⊕ sp1`.
pub fn sp1_sp2_so6() -> Result<TriplePreset, LieError> {
    sp2_so6("sp1-sp2-so6", "sp1 ⊂ sp2 ⊂ so6", so3_plus())
}

/// `sp1 ⊕ u1 ⊂ sp2 ⊂ so6`.
pub fn sp1u1_sp2_so6() -> Result<TriplePreset, LieError> {
    let mut h = so3_plus();
    h.push(so3_minus()[0].clone());
    sp2_so6("sp1+u1-sp2-so6", "sp1 ⊕ u1 ⊂ sp2 ⊂ so6", h)
}

/// `sp1 ⊕ sp1 ⊂ sp2 ⊂ so6`, that is `so4 ⊂ so5 ⊂ so6`.
pub fn sp1sp1_sp2_so6() -> Result<TriplePreset, LieError> {
    let mut h = so3_plus();
    h.extend(so3_minus());
    sp2_so6("sp1+sp1-sp2-so6", "sp1 ⊕ sp1 ⊂ sp2 ⊂ so6", h)
}

/// `({0} ⊕ so3) ⊂ so3 ⊕ so3 ⊂ so3 ⊕ so4`: m and p lie in different ideals.
pub fn split_product() -> Result<TriplePreset, LieError> {
    let b = Blocks::new(&[("so3", 3), ("so4", 4)]);
    let mut basis = in_block(&b, 0, &so_basis(3));
    basis.extend(in_block(&b, 1, &so_basis(4)));
    let g = b.algebra("so3+so4", basis)?;
    let mut k = in_block(&b, 0, &so_basis(3));
    k.extend(in_block(&b, 1, &so_upper(3, 4)));
    let h = in_block(&b, 1, &so_upper(3, 4));
    build("0+so3-so3+so3-so3+so4", "({0} ⊕ so3) ⊂ so3 ⊕ so3 ⊂ so3 ⊕ so4", g, k, h, |_| Vec::new())
}

/// `u2 ⊂ su3 ⊕ so3 ⊂ su3 ⊕ so4`, with u2 mapping to so3 through its su2 part.
pub fn u2_su3so3_su3so4() -> Result<TriplePreset, LieError> {
    let b = Blocks::new(&[("su3", 6), ("so4", 4)]);
    let mut basis = in_block(&b, 0, &su_basis(3));
    basis.extend(in_block(&b, 1, &so_basis(4)));
    let g = b.algebra("su3+so4", basis)?;
    let mut k = in_block(&b, 0, &su_basis(3));
    k.extend(in_block(&b, 1, &so_upper(3, 4)));
    let u2 = u2_in_su3();
    let su2 = su2_standard();
    let mut h = Vec::new();
    for (emb, s) in u2.iter().zip(&su2) {
        let ad = embed(&adjoint_on(s, &su2), 4, 0);
        h.push(b.pair(&[(0, emb), (1, &ad)]));
    }
    h.push(b.at(0, &u2[3]));
    build("u2-su3+so3-su3+so4", "u2 ⊂ su3 ⊕ so3 ⊂ su3 ⊕ so4", g, k, h, |_| Vec::new())
}

/// `sp1 ⊕ Δu1 ⊂ u1 ⊕ sp2 ⊂ u1 ⊕ so6`.
pub fn sp1du1_u1sp2_u1so6() -> Result<TriplePreset, LieError> {
    let b = Blocks::new(&[("u1", 2), ("so6", 6)]);
    let j = MatQ::skew_unit(2, 0, 1);
    let mut basis = in_block(&b, 0, &[j.clone()]);
    basis.extend(in_block(&b, 1, &so_basis(6)));
    let g = b.algebra("u1+so6", basis)?;
    let mut k = in_block(&b, 0, &[j.clone()]);
    k.extend(in_block(&b, 1, &so_upper(5, 6)));
    let mut h: Vec<MatQ> = so3_plus().iter().map(|m| b.at(1, &embed(m, 6, 0))).collect();
    h.push(b.pair(&[(0, &j), (1, &embed(&so3_minus()[0], 6, 0))]));
    build("sp1+u1-u1+sp2-u1+so6", "sp1 ⊕ Δu1 ⊂ u1 ⊕ sp2 ⊂ u1 ⊕ so6", g, k, h, |_| Vec::new())
}

/// `sp1 ⊕ Δsp1 ⊂ sp1 ⊕ sp2 ⊂ sp1 ⊕ so6`.
pub fn sp1dsp1_sp1sp2_sp1so6() -> Result<TriplePreset, LieError> {
    let b = Blocks::new(&[("so3", 3), ("so6", 6)]);
    let mut basis = in_block(&b, 0, &so_basis(3));
    basis.extend(in_block(&b, 1, &so_basis(6)));
    let g = b.algebra("so3+so6", basis)?;
    let mut k = in_block(&b, 0, &so_basis(3));
    k.extend(in_block(&b, 1, &so_upper(5, 6)));
    let mut h: Vec<MatQ> = so3_plus().iter().map(|m| b.at(1, &embed(m, 6, 0))).collect();
    let minus = so3_minus();
    for r in &minus {
        h.push(b.pair(&[(0, &adjoint_on(r, &minus)), (1, &embed(r, 6, 0))]));
    }
    build("sp1+sp1-sp1+sp2-sp1+so6", "sp1 ⊕ Δsp1 ⊂ sp1 ⊕ sp2 ⊂ sp1 ⊕ so6", g, k, h, |_| Vec::new())
}

/// `sp(n−1) ⊕ Δsp1 ⊂ sp(n) ⊕ sp1 ⊂ sp(n) ⊕ so4` for `n ≥ 2`.
pub fn spn_family(n: usize) -> Result<TriplePreset, LieError> {
    if n < 2 {
        return Err(LieError::Degenerate(format!("needs n >= 2, got {n}")));
    }
    let b = Blocks::new(&[("sp", 4 * n), ("so4", 4)]);
    let mut basis = in_block(&b, 0, &sp_basis(n));
    basis.extend(in_block(&b, 1, &so_basis(4)));
    let g = b.algebra(&format!("sp{n}+so4"), basis)?;
    let mut k = in_block(&b, 0, &sp_basis(n));
    k.extend(in_block(&b, 1, &so_upper(3, 4)));
    let mut h = in_block(&b, 0, &sp_sub_basis(n));
    let last = sp_last_factor(n);
    for s in &last {
        let ad = embed(&adjoint_on(s, &last), 4, 0);
        h.push(b.pair(&[(0, s), (1, &ad)]));
    }
    let id = format!("sp{}+sp1-sp{n}+sp1-sp{n}+so4", n - 1);
    let display = format!("sp{} ⊕ Δsp1 ⊂ sp{n} ⊕ sp1 ⊂ sp{n} ⊕ so4", n - 1);
    build(&id, &display, g, k, h, |_| Vec::new())
}

/// Builder-backed triple ids.
pub const TRIPLE_IDS: &[&str] = &[
    "so2-so3-so4",
    "0-so3-so4",
    "u1-u2-u1+so4",
    "so3-so4-so3+so4",
    "su3-g2-so7",
    "g2-so7-so8",
    "so3-so4-so5",
    "so4-so5-so6",
    "so6-so7-so8",
    "spin7-so9-so10",
    "so3max-so5-so6",
    "sp1-sp2-so6",
    "sp1+u1-sp2-so6",
    "sp1+sp1-sp2-so6",
    "0+so3-so3+so3-so3+so4",
    "u2-su3+so3-su3+so4",
    "sp1+u1-u1+sp2-u1+so6",
    "sp1+sp1-sp1+sp2-sp1+so6",
    "sp1+sp1-sp2+sp1-sp2+so4",
    "sp2+sp1-sp3+sp1-sp3+so4",
];

pub fn builtin_triple(id: &str) -> Result<TriplePreset, LieError> {
    match id {
        "so2-so3-so4" => so_chain(3),
        "so3-so4-so5" => so_chain(4),
        "so4-so5-so6" => so_chain(5),
        "so6-so7-so8" => so_chain(7),
        "0-so3-so4" => trivial_so3_so4(),
        "u1-u2-u1+so4" => u1_u2_u1so4(),
        "so3-so4-so3+so4" => diagonal_so3_family(&qi(1)),
        "su3-g2-so7" => su3_g2_so7(),
        "g2-so7-so8" => g2_so7_so8(),
        "spin7-so9-so10" => spin7_so9_so10(),
        "so3max-so5-so6" => so3max_so5_so6(),
        "sp1-sp2-so6" => sp1_sp2_so6(),
        "sp1+u1-sp2-so6" => sp1u1_sp2_so6(),
        "sp1+sp1-sp2-so6" => sp1sp1_sp2_so6(),
        "0+so3-so3+so3-so3+so4" => split_product(),
        "u2-su3+so3-su3+so4" => u2_su3so3_su3so4(),
        "sp1+u1-u1+sp2-u1+so6" => sp1du1_u1sp2_u1so6(),
        "sp1+sp1-sp1+sp2-sp1+so6" => sp1dsp1_sp1sp2_sp1so6(),
        "sp1+sp1-sp2+sp1-sp2+so4" => spn_family(2),
        "sp2+sp1-sp3+sp1-sp3+so4" => spn_family(3),
        _ => Err(LieError::UnknownPreset(id.into())),
    }
}

fn pair_preset(
    id: &str,
    display: &str,
    g: Arc<AlgebraPresentation>,
    h: Vec<MatQ>,
    hints: impl FnOnce(&PairPresentation) -> Vec<WitnessHint>,
) -> Result<PairPreset, LieError> {
    let pair = PairPresentation::new(id, g, h)?;
    let hints = hints(&pair);
    Ok(PairPreset {
        id: id.into(),
        display: display.into(),
        pair,
        hints,
    })
}

/// `so(n) ⊂ so(n+1)`.
pub fn so_sphere(n: usize) -> Result<PairPreset, LieError> {
    let g = single(n + 1).algebra(&format!("so{}", n + 1), so_basis(n + 1))?;
    let id = format!("so{n}-so{}", n + 1);
    pair_preset(&id, &format!("so{n} ⊂ so{}", n + 1), g, so_upper(n, n + 1), |_| {
        vec![WitnessHint::transitive(
            HintTarget::Perp,
            &[m_vector(&e(n, 0))],
            SO_TRANSITIVE,
        )]
    })
}

pub const PAIR_IDS: &[&str] = &[
    "so2-so3", "so3-so4", "so4-so5", "so5-so6", "so6-so7", "so7-so8",
    "g2-so7", "su3-g2", "g2-so8", "su3-so7", "0-u1-su2", "su2-u2-su3",
];

pub fn builtin_pair(id: &str) -> Result<PairPreset, LieError> {
    if let Some(rest) = id.strip_prefix("so") {
        if let Some((a, b)) = rest.split_once("-so") {
            if let (Ok(a), Ok(b)) = (a.parse::<usize>(), b.parse::<usize>()) {
                if b == a + 1 && a >= 2 {
                    return so_sphere(a);
                }
            }
        }
    }
    match id {
        "g2-so7" => {
            let g = single(7).algebra("so7", so_basis(7))?;
            pair_preset(id, "g2 ⊂ so7", g, g2_basis(), |_| {
                vec![WitnessHint::transitive(
                    HintTarget::Perp,
                    &[a_perp(&e(7, 0)).expect("7 params")],
                    "G2 acts transitively on the unit sphere of the complement R^7",
                )]
            })
        }
        "su3-g2" => {
            let g = Arc::new(AlgebraPresentation::simple("g2", g2_basis())?);
            pair_preset(id, "su3 ⊂ g2", g, su3_in_g2(), |_| {
                vec![WitnessHint::transitive(
                    HintTarget::Perp,
                    &[c_perp(&e(6, 0)).expect("6 params")],
                    "SU(3) acts transitively on the unit sphere of the complement C^3",
                )]
            })
        }
        "g2-so8" => {
            let g = single(8).algebra("so8", so_basis(8))?;
            let h = g2_basis().iter().map(|m| embed(m, 8, 0)).collect();
            let x = m_vector(&e(7, 2));
            pair_preset(id, "g2 ⊂ so8", g, h, |_| {
                vec![WitnessHint::explicit(
                    HintTarget::Perp,
                    &[x],
                    "x = M(e3) commutes with y = diag(A(e1), 0) inside the complement",
                )]
            })
        }
        "su3-so7" => {
            let g = single(7).algebra("so7", so_basis(7))?;
            pair_preset(id, "su3 ⊂ so7", g, su3_in_g2(), |_| {
                vec![WitnessHint::explicit(
                    HintTarget::Perp,
                    &[MatQ::skew_unit(7, 0, 1)],
                    "x = E01 − E10 lies in the complement of so6 ⊃ su3 and its centralizer there contains so5 ∩ su3⊥ directions",
                )]
            })
        }
        "0-u1-su2" => {
            let g = Arc::new(AlgebraPresentation::simple("su2", su2_standard())?);
            pair_preset(id, "{0} ⊂ su2", g, Vec::new(), |_| Vec::new())
        }
        "su2-u2-su3" => {
            let g = Arc::new(AlgebraPresentation::simple("su3", su_basis(3))?);
            pair_preset(id, "su2 ⊂ su3", g, u2_in_su3()[..3].to_vec(), |_| Vec::new())
        }
        _ => Err(LieError::UnknownPreset(id.into())),
    }
}

/// Intermediate subalgebras `h ⊂ f ⊂ g` attached to pair presets, if any.
pub fn intermediate(id: &str) -> Option<Vec<MatQ>> {
    match id {
        "0-u1-su2" => Some(vec![su2_standard()[0].clone()]),
        "su2-u2-su3" => Some(u2_in_su3()),
        _ => None,
    }
}

/// Serialized preset, as shipped under `presets/`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresetFile {
    pub schema: u32,
    pub id: String,
    pub display: String,
    pub algebra: AlgebraData,
    /// Present for triples only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<Vec<Rational>>>,
    pub h: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intermediate: Option<Vec<Vec<Rational>>>,
    #[serde(default)]
    pub hints: Vec<WitnessHint>,
}

impl TriplePreset {
    pub fn to_file(&self) -> PresetFile {
        PresetFile {
            schema: PRESET_SCHEMA,
            id: self.id.clone(),
            display: self.display.clone(),
            algebra: self.triple.g().to_data(),
            k: Some(self.triple.k().basis().iter().map(row_major).collect()),
            h: self.triple.h().basis().iter().map(row_major).collect(),
            intermediate: None,
            hints: self.hints.clone(),
        }
    }
}

impl PairPreset {
    pub fn to_file(&self) -> PresetFile {
        PresetFile {
            schema: PRESET_SCHEMA,
            id: self.id.clone(),
            display: self.display.clone(),
            algebra: self.pair.g().to_data(),
            k: None,
            h: self.pair.h().basis().iter().map(row_major).collect(),
            intermediate: intermediate(&self.id).map(|v| v.iter().map(row_major).collect()),
            hints: self.hints.clone(),
        }
    }
}

fn matrices(n: usize, rows: &[Vec<Rational>]) -> Result<Vec<MatQ>, LieError> {
    rows.iter().map(|r| to_matrix(n, r)).collect()
}

impl PresetFile {
    fn check_schema(&self) -> Result<(), LieError> {
        if self.schema != PRESET_SCHEMA {
            return Err(LieError::Invalid(format!(
                "{}: unsupported preset schema {}",
                self.id, self.schema
            )));
        }
        Ok(())
    }

    pub fn is_triple(&self) -> bool {
        self.k.is_some()
    }

    pub fn to_triple(&self) -> Result<TriplePreset, LieError> {
        self.check_schema()?;
        let g = Arc::new(AlgebraPresentation::from_data(&self.algebra)?);
        let n = g.ambient_dim();
        let k = self
            .k
            .as_ref()
            .ok_or_else(|| LieError::Invalid(format!("{} is a pair preset", self.id)))?;
        let triple = TriplePresentation::new(self.id.clone(), g, matrices(n, k)?, matrices(n, &self.h)?)?;
        Ok(TriplePreset {
            id: self.id.clone(),
            display: self.display.clone(),
            triple,
            hints: self.hints.clone(),
        })
    }

    pub fn to_pair(&self) -> Result<PairPreset, LieError> {
        self.check_schema()?;
        if self.is_triple() {
            return Err(LieError::Invalid(format!("{} is a triple preset", self.id)));
        }
        let g = Arc::new(AlgebraPresentation::from_data(&self.algebra)?);
        let n = g.ambient_dim();
        let pair = PairPresentation::new(self.id.clone(), g, matrices(n, &self.h)?)?;
        Ok(PairPreset {
            id: self.id.clone(),
            display: self.display.clone(),
            pair,
            hints: self.hints.clone(),
        })
    }

    pub fn intermediate_matrices(&self) -> Result<Option<Vec<MatQ>>, LieError> {
        self.intermediate
            .as_ref()
            .map(|rows| matrices(self.algebra.ambient_dim, rows))
            .transpose()
    }
}

/// File name of a preset id under a presets directory.
pub fn file_name(id: &str) -> String {
    format!("{}.json", id.replace('+', "_plus_").replace('@', "_at_").replace('/', "_"))
}

/// Preset lookup: files from a directory when present, builders otherwise.
#[derive(Clone, Debug, Default)]
pub struct PresetStore {
    files: BTreeMap<String, PresetFile>,
}

impl PresetStore {
    pub fn builtin() -> Self {
        PresetStore::default()
    }

    /// Loads every `*.json` preset in `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self, LieError> {
        let mut files = BTreeMap::new();
        let entries = std::fs::read_dir(dir)
            .map_err(|e| LieError::Invalid(format!("{}: {e}", dir.display())))?;
        let mut paths: Vec<_> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
        paths.sort();
        for path in paths {
            if path.extension().and_then(|s| s.to_str()) != Some("json") {
                continue;
            }
            let text = std::fs::read_to_string(&path)
                .map_err(|e| LieError::Invalid(format!("{}: {e}", path.display())))?;
            let file: PresetFile = serde_json::from_str(&text)?;
            files.insert(file.id.clone(), file);
        }
        Ok(PresetStore { files })
    }

    pub fn len(&self) -> usize {
        self.files.len()
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    pub fn triple(&self, id: &str) -> Result<TriplePreset, LieError> {
        match self.files.get(id) {
            Some(f) => f.to_triple(),
            None => builtin_triple(id),
        }
    }

    pub fn pair(&self, id: &str) -> Result<PairPreset, LieError> {
        match self.files.get(id) {
            Some(f) => f.to_pair(),
            None => builtin_pair(id),
        }
    }

    pub fn intermediate(&self, id: &str) -> Result<Option<Vec<MatQ>>, LieError> {
        match self.files.get(id) {
            Some(f) => f.intermediate_matrices(),
            None => Ok(intermediate(id)),
        }
    }
}

/// Every builder-backed preset as a file, pairs first.
pub fn all_files() -> Result<Vec<PresetFile>, LieError> {
    let mut out = Vec::new();
    for id in PAIR_IDS {
        out.push(builtin_pair(id)?.to_file());
    }
    for id in TRIPLE_IDS {
        out.push(builtin_triple(id)?.to_file());
    }
    Ok(out)
}
