use std::sync::Arc;

use fatlab_core::exactnum::{q, qi, MatQ, Rational};
use fatlab_core::liealg::builders::{
    a_perp, a_perp_basis, c_perp, embed, g2_basis, g2_in_so7, ints, m_vector, so_basis, su3_in_g2, unit,
};
use fatlab_core::liealg::presets::{builtin_pair, builtin_triple, diagonal_so3_family, so_chain};
use fatlab_core::liealg::{
    bracket, centralizer_dim, compute_b, compute_f, dimension_obstruction, ideal_split, jacobi_holds,
    AlgebraPresentation, SampleOptions, Status, Subspace, TriplePresentation, PAIR_IDS, TRIPLE_IDS,
};
use fatlab_core::liealg::invariants::dimension_rule;
use proptest::prelude::*;

fn opts() -> SampleOptions {
    SampleOptions::new(64, 7)
}

fn ip(x: &MatQ, y: &MatQ) -> Rational {
    -x.try_mul(y).unwrap().trace()
}

fn closed(basis: &[MatQ]) -> bool {
    let span = Subspace::new(basis.to_vec());
    basis
        .iter()
        .all(|a| basis.iter().all(|b| span.contains(&bracket(a, b).unwrap())))
}

#[test]
fn g2_and_su3_are_subalgebras() {
    let g2 = g2_basis();
    assert_eq!(Subspace::new(g2.clone()).dim(), 14);
    assert!(closed(&g2));
    assert!(g2.iter().all(MatQ::is_skew));
    let su3 = su3_in_g2();
    assert_eq!(Subspace::new(su3.clone()).dim(), 8);
    assert!(closed(&su3));
    assert!(su3.iter().all(|m| m.row(0).iter().all(Rational::is_zero)));
    assert!(jacobi_holds(&Subspace::new(g2)));
}

#[test]
fn complements_are_orthogonal() {
    for a in a_perp_basis() {
        for g in g2_basis() {
            assert!(ip(&a, &g).is_zero());
        }
    }
    let g2 = Subspace::new(g2_basis());
    for i in 0..6 {
        let c = c_perp(&unit(6, i)).unwrap();
        assert!(g2.contains(&c));
        for s in su3_in_g2() {
            assert!(ip(&c, &s).is_zero());
        }
    }
}

#[test]
fn builder_length_errors() {
    assert!(g2_in_so7(&ints(&[1, 2, 3])).is_err());
    assert!(a_perp(&ints(&[1; 6])).is_err());
    assert!(c_perp(&ints(&[1; 7])).is_err());
}

#[test]
fn bracket_of_m_vectors() {
    let b = bracket(&m_vector(&unit(3, 0)), &m_vector(&unit(3, 1))).unwrap();
    let mut expect = MatQ::zeros(4, 4);
    expect[(0, 1)] = qi(-1);
    expect[(1, 0)] = qi(1);
    assert_eq!(b, expect);
    assert_eq!(b.rank(), 2);
    let x = m_vector(&ints(&[2, -1, 3]));
    assert!(bracket(&x, &x).unwrap().is_zero());
}

#[test]
fn so_chain_bracket_and_centralizer() {
    for n in [4usize, 5, 7] {
        let y = embed(&m_vector(&unit(n - 1, 0)), n + 1, 0);
        let z: Vec<Rational> = (1..=n as i64).map(|k| qi(3 * k - 7)).collect();
        let x = m_vector(&z);
        let mut w = vec![qi(0); n];
        w[0] = z[n - 1].clone();
        w[n - 1] = -&z[0];
        assert_eq!(bracket(&y, &x).unwrap(), m_vector(&w));
        let t = so_chain(n).unwrap().triple;
        assert_eq!(centralizer_dim(&y, t.p()).unwrap(), n - 2);
    }
}

#[test]
fn su3_g2_bracket_and_centralizer() {
    let y = c_perp(&unit(6, 0)).unwrap();
    let v = ints(&[3, -2, 5, 1, -4, 7, 2]);
    let vk = |k: usize| v[k - 1].clone();
    let expect = a_perp(&[qi(0), qi(2) * vk(7), vk(6), -vk(5), vk(4), -vk(3), qi(-2) * vk(2)])
        .unwrap()
        .scale(&q(1, 2));
    assert_eq!(bracket(&y, &a_perp(&v).unwrap()).unwrap(), expect);
    let t = builtin_triple("su3-g2-so7").unwrap().triple;
    assert_eq!(centralizer_dim(&y, t.p()).unwrap(), 1);
}

#[test]
fn g2_so8_witness_commutes() {
    let t = builtin_triple("g2-so7-so8").unwrap().triple;
    let x = m_vector(&unit(7, 2));
    let y = embed(&a_perp(&unit(7, 0)).unwrap(), 8, 0);
    assert!(t.p().contains(&x) && t.m().contains(&y));
    assert!(bracket(&x, &y).unwrap().is_zero());
    assert!(centralizer_dim(&x, t.m()).unwrap() >= 1);
    assert!(centralizer_dim(&MatQ::zeros(8, 8), t.m()).is_err());
}

#[test]
fn b_values() {
    for n in 2..8 {
        let p = builtin_pair(&format!("so{n}-so{}", n + 1)).unwrap();
        let r = compute_b(&p.pair, &p.hints, &opts()).unwrap();
        assert_eq!(r.value, Some(1), "so{n}");
        assert_eq!(r.status, Status::Certified);
    }
    let p = builtin_pair("g2-so8").unwrap();
    let r = compute_b(&p.pair, &p.hints, &opts()).unwrap();
    assert_eq!(r.certified_lower, 2);
    let p = builtin_pair("su3-so7").unwrap();
    assert!(compute_b(&p.pair, &p.hints, &opts()).unwrap().certified_lower >= 3);
}

#[test]
fn f_values() {
    let t = builtin_triple("su3-g2-so7").unwrap();
    let r = compute_f(&t.triple, &t.hints, &opts()).unwrap();
    assert_eq!(r.certified_lower, 1);
    assert_eq!(r.sampled_max, 1);
    let t = builtin_triple("so3-so4-so5").unwrap();
    assert!(compute_f(&t.triple, &t.hints, &opts()).unwrap().certified_lower >= 2);
    let t = builtin_triple("0+so3-so3+so3-so3+so4").unwrap();
    assert!(ideal_split(&t.triple));
    let r = compute_f(&t.triple, &t.hints, &opts()).unwrap();
    assert_eq!(r.value, Some(3));
}

#[test]
fn dimension_rule_examples() {
    let d = dimension_rule(15, 9);
    assert!(!d.f1_allowed);
    let d = dimension_rule(7, 3);
    assert!(!d.f1_allowed);
    let t = builtin_triple("so2-so3-so4").unwrap().triple;
    let d = dimension_obstruction(&t);
    assert_eq!((d.dim_m, d.dim_p), (2, 3));
    assert!(d.f1_allowed && !d.f0_allowed);
    let t = builtin_triple("spin7-so9-so10").unwrap().triple;
    assert_eq!((t.m().dim(), t.p().dim()), (15, 9));
    let t = builtin_triple("u2-su3+so3-su3+so4").unwrap().triple;
    assert_eq!((t.m().dim(), t.p().dim()), (7, 3));
    assert!(!dimension_obstruction(&t).f1_allowed);
}

#[test]
fn metric_independence() {
    let mut values = Vec::new();
    for t in [qi(1), qi(2), qi(5)] {
        let p = diagonal_so3_family(&t).unwrap();
        let r = compute_f(&p.triple, &p.hints, &opts()).unwrap();
        values.push((r.value, r.certified_lower, r.sampled_max));
    }
    assert_eq!(values[0].0, Some(1));
    assert!(values.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn triples_are_reductive_and_graded() {
    for id in TRIPLE_IDS {
        let t = builtin_triple(id).unwrap().triple;
        let g = t.g();
        assert!(t.is_reductive(), "{id}");
        assert_eq!(t.m().dim() + t.h().dim(), t.k().dim(), "{id}");
        assert_eq!(t.k().dim() + t.p().dim(), g.dim(), "{id}");
        for a in t.k().basis() {
            for b in t.p().basis() {
                let c = bracket(a, b).unwrap();
                assert!(t.k().basis().iter().all(|k| g.inner(&c, k).is_zero()), "{id}");
            }
        }
        for a in t.m().basis() {
            assert!(t.h().basis().iter().all(|h| g.inner(a, h).is_zero()), "{id}");
        }
    }
}

#[test]
fn presets_satisfy_jacobi() {
    for id in PAIR_IDS {
        assert!(jacobi_holds(builtin_pair(id).unwrap().pair.g().span()), "{id}");
    }
}

#[test]
fn f_one_verdicts_pass_dimension_rule() {
    for id in TRIPLE_IDS {
        let t = builtin_triple(id).unwrap();
        let r = compute_f(&t.triple, &t.hints, &opts()).unwrap();
        if r.value == Some(1) {
            assert!(dimension_obstruction(&t.triple).f1_allowed, "{id}");
        }
    }
}

#[test]
fn f_versus_b() {
    // triples whose total pair has a known value of b
    let cases = [("g2-so7-so8", "g2-so8", 2), ("su3-g2-so7", "su3-so7", 3)];
    for (tid, pid, b_known) in cases {
        let t = builtin_triple(tid).unwrap();
        let f = compute_f(&t.triple, &t.hints, &opts()).unwrap();
        let total = builtin_pair(pid).unwrap();
        let b_total = compute_b(&total.pair, &total.hints, &opts()).unwrap();
        assert_eq!(total.pair.perp().dim(), t.triple.m().dim() + t.triple.p().dim());
        assert!(b_total.certified_lower <= b_known, "{tid}");
        assert!(b_known >= f.certified_lower + 1, "{tid}");
        let base = compute_b(&t.triple.base_pair().unwrap(), &[], &opts()).unwrap();
        let fiber = compute_b(&t.triple.fiber_pair().unwrap(), &[], &opts()).unwrap();
        assert!(b_known >= base.certified_lower.max(fiber.certified_lower), "{tid}");
    }
    for id in TRIPLE_IDS {
        let t = builtin_triple(id).unwrap();
        let f = compute_f(&t.triple, &t.hints, &opts()).unwrap();
        let b_total = compute_b(&t.triple.total_pair().unwrap(), &[], &opts()).unwrap();
        if let Some(v) = b_total.value {
            assert!(v >= f.certified_lower + 1, "{id}");
        }
        // f ≤ b(h⊂g) - 1 ≤ dim(m ⊕ p) - 1
        assert!(f.certified_lower < t.triple.m().dim() + t.triple.p().dim(), "{id}");
    }
}

#[test]
fn degenerate_triples_rejected() {
    let g = Arc::new(AlgebraPresentation::simple("so4", so_basis(4)).unwrap());
    let k = so_basis(3).iter().map(|m| embed(m, 4, 0)).collect::<Vec<_>>();
    assert!(TriplePresentation::new("k=k", g.clone(), k.clone(), k.clone()).is_err());
    assert!(TriplePresentation::new("k=g", g.clone(), so_basis(4), k.clone()).is_err());
    let mut bad = k.clone();
    bad.truncate(2);
    assert!(TriplePresentation::new("open", g, k, bad).is_err());
}

fn so7_element() -> impl Strategy<Value = MatQ> {
    prop::collection::vec(-5i64..6, 21).prop_map(|c| {
        so_basis(7)
            .iter()
            .zip(c)
            .fold(MatQ::zeros(7, 7), |acc, (b, k)| acc.try_add(&b.scale(&qi(k))).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_product_is_ad_invariant(x in so7_element(), y in so7_element(), z in so7_element()) {
        let lhs = ip(&bracket(&x, &y).unwrap(), &z) + ip(&y, &bracket(&x, &z).unwrap());
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric(x in so7_element(), y in so7_element()) {
        let a = bracket(&x, &y).unwrap();
        let b = bracket(&y, &x).unwrap();
        prop_assert!(a.try_add(&b).unwrap().is_zero());
    }
}
