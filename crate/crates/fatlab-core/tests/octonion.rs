use fatlab_core::exactnum::{q, qi, CirclePoint, MatQ, Rational};
use fatlab_core::octonion::{
    apply, basis_product, check_alternative, check_moufang, conj, left_mult_matrix, norm2, oct_mul,
    right_mult_matrix, verify_table, Octonion, BASIS_NAMES, I, IL, J, JL, K, KL, L, ONE,
};
use proptest::prelude::*;

// Rows are the left factor, columns the right factor, basis i, j, k, l, il, jl, kl.
const TRANSCRIBED: &str = "
    -1  k   -j  il  -l  -kl jl
    -k  -1  i   jl  kl  -l  -il
    j   -i  -1  kl  -jl il  -l
    -il -jl -kl -1  i   j   k
    l   -kl jl  -i  -1  -k  j
    kl  l   -il -j  k   -1  -i
    -jl il  l   -k  -j  i   -1
";

fn parse_entry(s: &str) -> (i8, usize) {
    let (sign, name) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let idx = BASIS_NAMES.iter().position(|&n| n == name).expect("basis name");
    (sign, idx)
}

fn e(i: usize) -> Octonion {
    Octonion::basis(i)
}

fn octonion() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8((-6i64..7, 1i64..4)).prop_map(|c| Octonion::new(c.map(|(n, d)| q(n, d))))
}

fn signed(sign: i64, i: usize) -> Octonion {
    e(i).scale(&qi(sign))
}

#[test]
fn table_matches_transcription() {
    verify_table().unwrap();
    for (a, line) in TRANSCRIBED.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        for (b, tok) in line.split_whitespace().enumerate() {
            assert_eq!(basis_product(a + 1, b + 1), parse_entry(tok), "{} * {}", BASIS_NAMES[a + 1], BASIS_NAMES[b + 1]);
        }
    }
}

#[test]
fn named_products() {
    assert_eq!(oct_mul(&e(I), &e(J)), e(K));
    assert_eq!(oct_mul(&e(JL), &e(KL)), signed(-1, I));
    let x = Octonion::from_i64([3, -1, 4, 1, -5, 9, 2, -6]);
    assert_eq!(oct_mul(&Octonion::one(), &x), x);
    assert_eq!(oct_mul(&x, &Octonion::one()), x);
}

#[test]
fn conjugation_and_norm() {
    assert_eq!(conj(&e(I)), signed(-1, I));
    assert_eq!(norm2(&Octonion::from_i64([1, 1, 0, 0, 0, 0, 0, 0])), qi(2));
    let x = Octonion::from_i64([1, 2, 0, -1, 0, 3, 0, 1]);
    assert_eq!(oct_mul(&x, &conj(&x)), Octonion::one().scale(&norm2(&x)));
}

#[test]
fn multiplication_matrices() {
    assert_eq!(left_mult_matrix(&Octonion::one()), MatQ::identity(8));
    assert_eq!(apply(&left_mult_matrix(&e(I)), &e(J)), e(K));
    // i·l = il in the table, so right multiplication by l sends i to +il
    assert_eq!(apply(&right_mult_matrix(&e(L)), &e(I)), e(IL));
    assert_eq!(apply(&left_mult_matrix(&e(L)), &e(I)), signed(-1, IL));
}

#[test]
fn non_associative_but_moufang() {
    let (i, j, l) = (e(I), e(J), e(L));
    assert_eq!(oct_mul(&oct_mul(&i, &j), &l), e(KL));
    assert_eq!(oct_mul(&i, &oct_mul(&j, &l)), signed(-1, KL));
    assert!(check_moufang(&i, &j, &l));
    let b = Octonion::from_i64([0, 1, 2, 0, 0, 1, 0, 3]);
    let c = Octonion::from_i64([1, 0, 0, 4, 1, 0, 2, 0]);
    assert!(check_moufang(&Octonion::one(), &b, &c));
}

#[test]
fn multiplication_by_unit_is_orthogonal() {
    // unit octonion from two rational circle points
    let a = CirclePoint::new(q(3, 5), q(4, 5)).unwrap();
    let b = CirclePoint::new(q(5, 13), q(12, 13)).unwrap();
    let mut c: [Rational; 8] = Default::default();
    c[ONE] = a.c() * b.c();
    c[J] = a.c() * b.s();
    c[L] = a.s().clone();
    let u = Octonion::new(c);
    assert_eq!(norm2(&u), qi(1));
    assert!(left_mult_matrix(&u).is_orthogonal());
    assert!(right_mult_matrix(&u).is_orthogonal());
    let v = Octonion::from_i64([1, 1, 0, 0, 0, 0, 0, 0]);
    assert!(!left_mult_matrix(&v).is_orthogonal());
}

#[test]
fn lr_conjugate_fixes_one_and_u() {
    // u = (3i + 4kl)/5
    let mut c: [Rational; 8] = Default::default();
    c[I] = q(3, 5);
    c[KL] = q(4, 5);
    let u = Octonion::new(c);
    let m = left_mult_matrix(&u).try_mul(&right_mult_matrix(&conj(&u))).unwrap();
    assert_eq!(apply(&m, &Octonion::one()), Octonion::one());
    assert_eq!(apply(&m, &u), u);
    // a unit orthogonal to 1 and u
    let mut w: [Rational; 8] = Default::default();
    w[I] = q(4, 5);
    w[KL] = q(-3, 5);
    for x in [Octonion::new(w), e(J), e(K), e(L), e(IL), e(JL)] {
        assert_eq!(apply(&m, &x), x.scale(&qi(-1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_multiplicative(a in octonion(), b in octonion()) {
        prop_assert_eq!(norm2(&oct_mul(&a, &b)), &norm2(&a) * &norm2(&b));
    }

    #[test]
    fn moufang_identities(a in octonion(), b in octonion(), c in octonion()) {
        prop_assert!(check_moufang(&a, &b, &c));
    }

    #[test]
    fn alternative_laws(a in octonion(), b in octonion()) {
        prop_assert!(check_alternative(&a, &b));
        // direct expansion, independent of the helper
        prop_assert_eq!(oct_mul(&a, &oct_mul(&a, &b)), oct_mul(&oct_mul(&a, &a), &b));
        prop_assert_eq!(oct_mul(&oct_mul(&b, &a), &a), oct_mul(&b, &oct_mul(&a, &a)));
    }

    #[test]
    fn conjugation_reverses_products(a in octonion(), b in octonion()) {
        prop_assert_eq!(conj(&oct_mul(&a, &b)), oct_mul(&conj(&b), &conj(&a)));
    }

    #[test]
    fn mult_matrices_agree_with_product(a in octonion(), x in octonion()) {
        prop_assert_eq!(apply(&left_mult_matrix(&a), &x), oct_mul(&a, &x));
        prop_assert_eq!(apply(&right_mult_matrix(&a), &x), oct_mul(&x, &a));
    }
}
