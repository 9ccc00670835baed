use fatlab_core::exactnum::{circle_compose, kernel_rows, q, qi, rank_int, rank_rows, CirclePoint, MatQ, Poly, PolyMat, Rational};
use proptest::prelude::*;

fn float_rank(rows: &[Vec<f64>]) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())) else {
            break;
        };
        if m[p][c].abs() < 1e-9 {
            continue;
        }
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank {
                let f = m[r][c] / m[rank][c];
                for k in 0..cols {
                    m[r][k] -= f * m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

fn qrows(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        // a narrow range makes rank deficiency common
        prop::collection::vec(prop::collection::vec(-2i64..=2, c), r)
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
}

fn circle_point() -> impl Strategy<Value = CirclePoint> {
    (-9i64..10, -9i64..10)
        .prop_filter("nonzero", |(m, n)| *m != 0 || *n != 0)
        .prop_map(|(m, n)| CirclePoint::from_pythagorean(m, n))
}

#[test]
fn display_and_parse() {
    assert_eq!(q(6, -4).to_string(), "-3/2");
    assert_eq!(qi(7).to_string(), "7");
    assert_eq!("-3/2".parse::<Rational>().unwrap(), q(-3, 2));
    assert!(Rational::try_new(1, 0).is_err());
    assert_eq!(q(9, 4).sqrt_exact(), Some(q(3, 2)));
    assert_eq!(q(2, 1).sqrt_exact(), None);
}

#[test]
fn compose_examples() {
    let a = CirclePoint::new(q(3, 5), q(4, 5)).unwrap();
    let sq = circle_compose(&a, &a);
    assert_eq!((sq.c().clone(), sq.s().clone()), (q(-7, 25), q(24, 25)));
    assert_eq!(circle_compose(&CirclePoint::identity(), &a), a);
    assert!(circle_compose(&a, &a.inverse()).is_identity());
    assert!(CirclePoint::new(q(1, 2), q(1, 2)).is_err());
}

#[test]
fn half_angles() {
    let a = CirclePoint::new(q(7, 25), q(24, 25)).unwrap();
    let h = a.half().unwrap();
    assert_eq!(h, CirclePoint::new(q(4, 5), q(3, 5)).unwrap());
    assert_eq!(h.compose(&h), a);
    assert!(CirclePoint::new(q(3, 5), q(4, 5)).unwrap().half().is_none());
    assert_eq!(CirclePoint::half_turn().half(), Some(CirclePoint::quarter_turn()));
    assert_eq!(CirclePoint::quarter_turn().pow(4), CirclePoint::identity());
}

#[test]
fn kernel_examples() {
    assert_eq!(MatQ::zeros(3, 3).kernel().len(), 3);
    assert!(MatQ::identity(4).kernel().is_empty());
    let m = MatQ::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]).unwrap();
    assert_eq!(m.rank(), 1);
    assert_eq!(m.kernel().len(), 2);
}

#[test]
fn generic_rank_examples() {
    let v = Poly::var(1, 0);
    let one = Poly::constant(1, qi(1));
    let zero = Poly::zero(1);
    let vars = vec!["v1".to_string()];
    let diag = PolyMat::new(vars.clone(), 2, 2, vec![v.clone(), zero.clone(), zero, one.clone()]).unwrap();
    let g = diag.generic_rank();
    assert_eq!(g.rank, 2);
    assert!(!g.rank_constant_over_reals);
    assert!(g.degenerate_locus.is_some());

    let all_v = PolyMat::new(vars, 2, 2, vec![v.clone(), v.clone(), v.clone(), v]).unwrap();
    assert_eq!(all_v.generic_rank().rank, 1);

    // [[-2v7, -1], [-1, 2v7]] has determinant -(1 + 4 v7^2)
    let v7 = Poly::var(1, 0);
    let m1 = Poly::constant(1, qi(-1));
    let sys = PolyMat::new(
        vec!["v7".to_string()],
        2,
        2,
        vec![v7.scale(&qi(-2)), m1.clone(), m1, v7.scale(&qi(2))],
    )
    .unwrap();
    let g = sys.generic_rank();
    assert_eq!(g.rank, 2);
    assert!(g.rank_constant_over_reals);
    let det = g.last_pivot.unwrap();
    for x in [-3, 0, 1, 5] {
        let x = qi(x);
        let expect = -(qi(1) + qi(4) * &x * &x);
        let got = det.eval(&[x]);
        assert!(got == expect || got == -expect.clone(), "det at point: {got} vs {expect}");
    }
}

#[test]
fn mod_p_and_exact_rank_agree_on_structured_input() {
    let rows = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]];
    assert_eq!(rank_int(&rows), 2);
    assert_eq!(rank_rows(&qrows(&rows)), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_matches_float_elimination(rows in small_matrix()) {
        let f: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        prop_assert_eq!(rank_rows(&qrows(&rows)), float_rank(&f));
        prop_assert_eq!(rank_int(&rows), float_rank(&f));
    }
}

proptest! {
    #[test]
    fn kernel_vectors_annihilate(rows in small_matrix()) {
        let cols = rows[0].len();
        let qr = qrows(&rows);
        let ker = kernel_rows(&qr, cols);
        prop_assert_eq!(ker.len() + rank_rows(&qr), cols);
        for v in &ker {
            for r in &qr {
                let dot: Rational = r.iter().zip(v).map(|(a, b)| a * b).sum();
                prop_assert!(dot.is_zero());
            }
        }
        prop_assert_eq!(rank_rows(&ker), ker.len());
    }

    #[test]
    fn field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn compose_is_a_group_law(a in circle_point(), b in circle_point(), c in circle_point()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(CirclePoint::identity().compose(&a), a.clone());
        prop_assert_eq!(a.compose(&CirclePoint::identity()), a.clone());
        let ab = a.compose(&b);
        prop_assert_eq!(&(ab.c() * ab.c()) + &(ab.s() * ab.s()), qi(1));
        prop_assert!(ab.rotation().is_orthogonal());
    }

    #[test]
    fn pow_is_repeated_composition(a in circle_point(), k in -6i64..7) {
        let mut acc = CirclePoint::identity();
        let step = if k < 0 { a.inverse() } else { a.clone() };
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&step);
        }
        prop_assert_eq!(a.pow(k), acc);
    }
}
