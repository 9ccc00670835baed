use fatlab_core::exactnum::{q, CirclePoint, MatQ};
use fatlab_core::octonion::{conj, left_mult_matrix, right_mult_matrix, Octonion, I, KL};
use fatlab_core::spin::{
    enumerate_free_circles, finite_action_free, induced_c, is_free_circle, lift_c_diagonal, lift_coefficients,
    rotation_blocks, sigma, su2_table, table2, torus_element, torus_weights, triality_check,
    CirclePattern, SpinElement, SpinError,
};
use proptest::prelude::*;

struct Row {
    partition: &'static [u32],
    c: [i64; 4],
    a: [i64; 4],
    b: [i64; 4],
    // (i, j, gcd) with gcd 0 for the undefined gcd(0, 0)
    witness: Option<(usize, usize, i64)>,
    free: bool,
}

const ROWS: [Row; 9] = [
    Row { partition: &[5, 1, 1, 1], c: [4, 2, 0, 0], a: [-1, -1, -3, 3], b: [-3, 3, 1, -1], witness: Some((3, 1, 3)), free: false },
    Row { partition: &[4, 4], c: [3, 3, 1, 1], a: [0, 0, -2, 4], b: [-3, 3, 1, 1], witness: Some((1, 1, 3)), free: false },
    Row { partition: &[3, 2, 2, 1], c: [2, 1, 1, 0], a: [0, -1, -1, 2], b: [-2, 1, 1, 0], witness: Some((1, 1, 2)), free: false },
    Row { partition: &[3, 1, 1, 1, 1, 1], c: [2, 0, 0, 0], a: [-1, -1, -1, 1], b: [-1, 1, 1, -1], witness: None, free: true },
    Row { partition: &[2, 2, 2, 2], c: [1, 1, 1, 1], a: [0, 0, 0, 2], b: [-1, 1, 1, 1], witness: None, free: true },
    Row { partition: &[2, 2, 1, 1, 1, 1], c: [1, 1, 0, 0], a: [0, 0, -1, 1], b: [-1, 1, 0, 0], witness: Some((1, 3, 0)), free: false },
    Row { partition: &[7, 1], c: [6, 4, 2, 0], a: [0, -2, -4, 6], b: [-6, 4, 2, 0], witness: Some((1, 1, 6)), free: false },
    Row { partition: &[5, 3], c: [4, 2, 2, 0], a: [0, -2, -2, 4], b: [-4, 2, 2, 0], witness: Some((1, 1, 4)), free: false },
    Row { partition: &[3, 3, 1, 1], c: [2, 2, 0, 0], a: [0, 0, -2, 2], b: [-2, 2, 0, 0], witness: Some((1, 1, 2)), free: false },
];

fn theta() -> CirclePoint {
    CirclePoint::new(q(3, 5), q(4, 5)).unwrap()
}

fn circle_point() -> impl Strategy<Value = CirclePoint> {
    (-7i64..8, -7i64..8)
        .prop_filter("nonzero", |(m, n)| *m != 0 || *n != 0)
        .prop_map(|(m, n)| CirclePoint::from_pythagorean(m, n))
}

/// Brute-force freeness: an element of order N in the circle fixes a point of
/// S⁷×S⁷ iff some block on each side is fixed, i.e. N divides some ℓ_i and some r_j.
fn free_by_subgroup_search(p: &CirclePattern, max_n: i64) -> bool {
    let fixed = |w: &[i64; 4], n: i64| w.iter().any(|&x| x % n == 0);
    if p.l.contains(&0) && p.r.contains(&0) {
        return false;
    }
    (2..=max_n).all(|n| !(fixed(&p.l, n) && fixed(&p.r, n)))
}

#[test]
fn triality_examples() {
    let id = MatQ::identity(8);
    assert!(triality_check(&id, &id, &id));
    assert_eq!(induced_c(&id, &id), id);
    assert!(triality_check(&-&id, &id, &-&id));
    let s = sigma();
    assert_eq!(induced_c(&s, &s), s);
    assert!(triality_check(&s, &s, &s));
    assert!(!triality_check(&s, &id, &id));
    assert_eq!(SpinElement::new(s.clone(), id.clone()), Err(SpinError::NotTriality));
}

#[test]
fn moufang_pair_gives_conjugation() {
    let mut c: [fatlab_core::exactnum::Rational; 8] = Default::default();
    c[I] = q(3, 5);
    c[KL] = q(-4, 5);
    let u = Octonion::new(c);
    let a = -&left_mult_matrix(&u);
    let b = right_mult_matrix(&u);
    let expect = &left_mult_matrix(&u) * &right_mult_matrix(&conj(&u));
    assert_eq!(induced_c(&a, &b), expect);
    assert!(triality_check(&a, &b, &expect));
}

#[test]
fn torus_examples() {
    let one = CirclePoint::identity();
    let t = torus_element(&[one.clone(), one.clone(), one.clone(), one.clone()]).unwrap();
    assert_eq!(t, SpinElement::identity());
    let a1 = theta();
    let t = torus_element(&[a1.clone(), one.clone(), one.clone(), one]).unwrap();
    assert_eq!(t.a(), &rotation_blocks([1, 1, 0, 0], &a1));
    assert_eq!(t.b(), &rotation_blocks([0, 0, -1, 1], &a1));
}

#[test]
fn theta3_lift() {
    let th = CirclePoint::new(q(5, 13), q(12, 13)).unwrap();
    let lift = lift_c_diagonal([0, 0, 2, 0], &th).unwrap();
    let a = rotation_blocks([1, -1, 1, 1], &th);
    let b = rotation_blocks([-1, -1, 1, 1], &th);
    assert!((lift.a() == &a && lift.b() == &b) || (lift.a() == &-&a && lift.b() == &-&b));
    assert_eq!(lift.c(), &rotation_blocks([0, 0, 2, 0], &th));
}

#[test]
fn lift_examples() {
    // the published coefficients correspond to the O(8)-conjugate with c₁ negated
    let l = lift_coefficients([-4, 2, 0, 0]);
    assert!(!l.half_angle);
    assert_eq!((l.a, l.b), ([-1, -1, -3, 3], [-3, 3, 1, -1]));
    let zero = lift_c_diagonal([0, 0, 0, 0], &theta()).unwrap();
    assert_eq!(zero, SpinElement::identity());
    // odd Σc needs an exact half of θ
    assert!(matches!(lift_c_diagonal([1, 0, 0, 0], &theta()), Err(SpinError::NoExactHalf(_))));
    let th = CirclePoint::new(q(7, 25), q(24, 25)).unwrap();
    let odd = lift_c_diagonal([1, 0, 0, 0], &th).unwrap();
    assert_eq!(odd.c(), &rotation_blocks([1, 0, 0, 0], &th));
}

#[test]
fn pattern_weights() {
    let p = CirclePattern::new([0, 2, -1, 1]).unwrap();
    assert_eq!((p.l, p.r), ([0, 0, 0, 2], [-1, 1, 1, 1]));
    assert!(is_free_circle(&p));
    let p = CirclePattern::new([1, 1, 1, 3]).unwrap();
    assert_eq!((p.l, p.r), ([1, 5, -1, 1], [1, 3, -3, 3]));
    assert!(is_free_circle(&p));
    assert!(!is_free_circle(&CirclePattern::new([1, 1, 1, 1]).unwrap()));
    assert!(CirclePattern::new([2, 4, 0, 6]).is_err());
    assert!(CirclePattern::from_weights([-1, -1, -3, 3], [-3, 3, 1, -1]).is_ok());
}

#[test]
fn table_rows() {
    let table = table2();
    assert_eq!(table.len(), 9);
    for (got, want) in table.iter().zip(ROWS.iter()) {
        assert_eq!(got.partition, want.partition);
        assert_eq!(got.torus_weights, want.c, "{:?}", want.partition);
        assert_eq!((got.lift_a, got.lift_b), (want.a, want.b), "{:?}", want.partition);
        let w = got.gcd_witness.map(|w| (w.i, w.j, w.gcd.unwrap_or(0)));
        assert_eq!(w, want.witness, "{:?}", want.partition);
        assert_eq!(got.free, want.free);
    }
    assert_eq!(table.iter().filter(|r| r.free).count(), 2);
}

#[test]
fn partition_validation() {
    assert!(su2_table(&[2, 1, 1, 1, 1, 1, 1]).is_err());
    assert!(su2_table(&[4, 3]).is_err());
    assert!(torus_weights(&[0, 8]).is_err());
    assert_eq!(torus_weights(&[1; 8]).unwrap(), [0, 0, 0, 0]);
}

#[test]
fn enumeration_contents() {
    let e = enumerate_free_circles(3);
    let ns: Vec<[i64; 4]> = e.free_patterns().map(|p| p.pattern.n).collect();
    assert!(ns.contains(&[0, 2, -1, 1]));
    assert!(ns.contains(&[1, 1, 1, 3]));
    for p in e.free_patterns() {
        assert_eq!(p.p1.unwrap() % 8, 0);
    }
    let total: usize = e.classes.iter().map(|c| c.count).sum();
    assert_eq!(total, ns.len());
}

#[test]
fn gcd_criterion_matches_subgroup_search() {
    let b = 2i64;
    for n1 in -b..=b {
        for n2 in -b..=b {
            for n3 in -b..=b {
                for n4 in -b..=b {
                    let Ok(p) = CirclePattern::new([n1, n2, n3, n4]) else { continue };
                    assert_eq!(is_free_circle(&p), free_by_subgroup_search(&p, 1000), "{:?}", p.n);
                }
            }
        }
    }
}

#[test]
fn finite_action_examples() {
    let p = CirclePattern::new([0, 2, -1, 1]).unwrap();
    assert!(finite_action_free(&p, 5, true, false).unwrap());
    assert!(finite_action_free(&p, 5, true, true).unwrap());
    assert!(finite_action_free(&p, 1, true, false).unwrap());
    assert_eq!(finite_action_free(&p, 0, true, false), Err(SpinError::ZeroOrder));
    // ℓ₁ = r₃ = 0 once n = (0, 1, 0, 1)
    let q0 = CirclePattern::unchecked([0, 1, 0, 1]);
    assert!(q0.l.contains(&0) && q0.r.contains(&0));
    for d in 2..6 {
        assert!(!finite_action_free(&q0, d, false, false).unwrap());
    }
    let not_s6 = CirclePattern::new([1, 1, 1, 3]).unwrap();
    assert!(finite_action_free(&not_s6, 3, true, true).is_err());
}

#[test]
fn sigma_and_minus_identity() {
    let s = SpinElement::new(sigma(), sigma()).unwrap();
    assert_eq!(s.c(), &sigma());
    let m = SpinElement::new(-&MatQ::identity(8), MatQ::identity(8)).unwrap();
    assert_eq!(m.c(), &-&MatQ::identity(8));
    assert!(!m.in_spin7());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn torus_elements_satisfy_triality(a in circle_point(), b in circle_point(), c in circle_point(), d in circle_point()) {
        let t = torus_element(&[a, b.clone(), c.clone(), d.clone()]).unwrap();
        prop_assert!(triality_check(t.a(), t.b(), t.c()));
        prop_assert!(t.c().is_orthogonal());
        let s = torus_element(&[CirclePoint::identity(), b, c, d]).unwrap();
        prop_assert!(s.in_spin7());
        prop_assert_eq!(s.in_g2(), s == SpinElement::identity() || s.a() == s.b());
    }

    #[test]
    fn lifts_project_back(c in prop::array::uniform4(-4i64..5), m in 1i64..6, n in 1i64..6) {
        // φ∘φ composed twice keeps the half angle exact
        let phi = CirclePoint::from_pythagorean(m, n);
        let theta = phi.compose(&phi);
        let lift = lift_c_diagonal(c, &theta).unwrap();
        prop_assert_eq!(lift.c(), &rotation_blocks(c, &theta));
        prop_assert!(triality_check(lift.a(), lift.b(), lift.c()));
        let neg = lift.negated();
        prop_assert!(triality_check(neg.a(), neg.b(), neg.c()));
    }

    #[test]
    fn finite_freeness_is_monotone(n in prop::array::uniform4(-4i64..5), d in 1u64..12, k in 2u64..5, minus in any::<bool>()) {
        prop_assume!(n != [0; 4]);
        let p = CirclePattern::unchecked(n);
        let small = finite_action_free(&p, d, minus, false).unwrap();
        let big = finite_action_free(&p, d * k, minus, false).unwrap();
        prop_assert!(small || !big);
    }
}
