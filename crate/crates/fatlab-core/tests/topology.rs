use std::collections::BTreeSet;

use fatlab_core::spin::{enumerate_free_circles, is_free_circle, table2, CirclePattern};
use fatlab_core::topology::{
    homotopy_obstruction, p1_circle, p1_circle_sphere6, p1_su2, quotient_report, BaseSpace, GroupKind,
    QuotientDescriptor, TopologyError,
};

fn circle(base: BaseSpace, n: [i64; 4]) -> QuotientDescriptor {
    QuotientDescriptor {
        base,
        group: GroupKind::Circle { pattern: n },
    }
}

#[test]
fn circle_values() {
    let p = CirclePattern::new([1, 1, 1, 3]).unwrap();
    let v = p1_circle(&p).unwrap();
    assert_eq!(v.value, 56);
    assert!(v.sign_ambiguous);
    let s = CirclePattern::new([0, 2, -1, 1]).unwrap();
    assert_eq!(p1_circle(&s).unwrap().value, 8);
    assert_eq!(p1_circle_sphere6(&s).unwrap().value, 8);
    assert!(p1_circle_sphere6(&p).is_err());
    let bad = CirclePattern::new([1, 1, 1, 1]).unwrap();
    assert_eq!(p1_circle(&bad), Err(TopologyError::NotFree([1, 1, 1, 1])));
}

#[test]
fn one_one_one_k_family() {
    for k in (-99i64..=99).filter(|k| k.rem_euclid(6) == 3) {
        let p = CirclePattern::new([1, 1, 1, k]).unwrap();
        assert!(is_free_circle(&p), "k={k}");
        assert_eq!(p1_circle(&p).unwrap().value, 4 * (k * k + 5), "k={k}");
    }
}

#[test]
fn su2_value() {
    assert_eq!(p1_su2(BaseSpace::S7xS7).value, 4);
    assert_eq!(p1_su2(BaseSpace::S6xS7).value, 4);
    let row = table2().into_iter().find(|r| r.partition == [2, 2, 2, 2]).unwrap();
    let sum: i64 = row.lift_a.iter().chain(&row.lift_b).map(|x| x * x).sum();
    assert_eq!(sum - 4, 4);
}

#[test]
fn enumeration_invariants() {
    let e = enumerate_free_circles(10);
    let mut values = BTreeSet::new();
    for p in e.free_patterns() {
        let v = p.p1.unwrap();
        assert_eq!(v % 8, 0, "{:?}", p.pattern.n);
        values.insert(v.abs());
    }
    assert!(values.len() >= 5, "{values:?}");
}

#[test]
fn obstruction_examples() {
    let v = homotopy_obstruction(56, 4);
    assert!(v.distinct_homotopy && v.distinct_homeo_hint);
    assert!(homotopy_obstruction(4, 0).distinct_homotopy);
    let v = homotopy_obstruction(8, 8);
    assert!(!v.distinct_homotopy && !v.distinct_homeo_hint);
    // the sign of p1 is not determined, so a and -a are never separated
    assert!(!homotopy_obstruction(8, -8).distinct_homotopy);
    assert!(!homotopy_obstruction(32, 8).distinct_homotopy);
}

#[test]
fn circle_report() {
    let r = quotient_report(&circle(BaseSpace::S7xS7, [1, 1, 1, 3])).unwrap();
    assert_eq!(r.p1, Some(56));
    assert_eq!(r.p1_mod24, Some(8));
    assert_eq!(r.pi1, "0");
    assert_eq!(r.ring_type.as_deref(), Some("S^7 x CP^3"));
    assert!(r.higher_pontryagin_vanish);
    assert!(r.verdicts.iter().any(|v| v.starts_with("not homotopy equivalent")));
    assert!(quotient_report(&circle(BaseSpace::S7xS7, [1, 1, 1, 1])).is_err());
}

#[test]
fn finite_and_su2_reports() {
    let d2 = QuotientDescriptor {
        base: BaseSpace::S7xS7,
        group: GroupKind::Finite {
            d: 2,
            minus_on_first: true,
            pattern: [0, 2, -1, 1],
        },
    };
    let r = quotient_report(&d2).unwrap();
    assert_eq!(r.pi1, "Z2 x Z2");
    assert_eq!(r.diffeomorphic_to.as_deref(), Some("RP^7 x RP^7"));
    let d1 = QuotientDescriptor {
        base: BaseSpace::S7xS7,
        group: GroupKind::Finite {
            d: 1,
            minus_on_first: true,
            pattern: [0, 2, -1, 1],
        },
    };
    assert_eq!(quotient_report(&d1).unwrap().diffeomorphic_to.as_deref(), Some("RP^7 x S^7"));
    let su2 = QuotientDescriptor {
        base: BaseSpace::S6xS7,
        group: GroupKind::Su2,
    };
    let r = quotient_report(&su2).unwrap();
    assert_eq!(r.p1, Some(4));
    assert_eq!(r.ring_type.as_deref(), Some("S^6 x S^4"));
}

#[test]
fn reports_never_assert_equivalence() {
    let mut descriptors = vec![
        QuotientDescriptor {
            base: BaseSpace::S7xS7,
            group: GroupKind::Su2,
        },
        circle(BaseSpace::S6xS7, [0, 2, -1, 1]),
    ];
    for p in enumerate_free_circles(2).free_patterns() {
        descriptors.push(circle(BaseSpace::S7xS7, p.pattern.n));
    }
    for d in &descriptors {
        let r = quotient_report(d).unwrap();
        for v in &r.verdicts {
            assert!(v.starts_with("not "), "{v}");
        }
        // agreement with the S^k x CP^3 model mod 24 must not produce a verdict
        let cp3 = r.ring_type.as_deref().is_some_and(|t| t.contains("CP^3"));
        if cp3 && (r.p1_mod24 == Some(4) || r.p1_mod24 == Some(20)) {
            assert!(r.verdicts.is_empty());
        }
    }
}
