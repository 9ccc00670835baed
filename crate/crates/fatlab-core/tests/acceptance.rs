//! Acceptance run: one PASS/FAIL line per criterion, each with its time budget.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fatlab_core::curvature::{ric2_sampling, ric_k_certificate, sectional, flat_plane_test, Deformation, DeformedMetric};
use fatlab_core::exactnum::{q, qi, CirclePoint, Poly, Rational};
use fatlab_core::liealg::builders::{a_perp, embed, g2_basis, m_vector, su3_in_g2, unit};
use fatlab_core::liealg::presets::{builtin_pair, builtin_triple, so_chain};
use fatlab_core::liealg::{bracket, compute_b, compute_f, jacobi_holds, SampleOptions, Subspace, PAIR_IDS, TRIPLE_IDS};
use fatlab_core::octonion::{check_alternative, check_moufang, oct_mul, verify_table, Octonion};
use fatlab_core::liealg::PresetStore;
use fatlab_core::registry::{classify_triples, FVerdict, Registry, Route, RunConfig, SURVIVORS};
use fatlab_core::spin::{
    enumerate_free_circles, finite_action_free, is_free_circle, lift_c_diagonal, rotation_blocks, sigma,
    table2, torus_element, triality_check, weights_from_n, CirclePattern, SpinElement,
};
use fatlab_core::topology::{p1_circle, p1_circle_sphere6, p1_su2, BaseSpace};
use fatlab_core::exactnum::MatQ;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> CirclePoint {
    CirclePoint::from_pythagorean(rng.random_range(1..40), rng.random_range(0..40))
}

// 1. SU(2) subgroup table
// (partition, c, A, B, witness (i, j, gcd) with gcd 0 for gcd(0, 0), free)
type Row = (&'static [u32], [i64; 4], [i64; 4], [i64; 4], Option<(usize, usize, i64)>, bool);

const TABLE2: [Row; 9] = [
    (&[5, 1, 1, 1], [4, 2, 0, 0], [-1, -1, -3, 3], [-3, 3, 1, -1], Some((3, 1, 3)), false),
    (&[4, 4], [3, 3, 1, 1], [0, 0, -2, 4], [-3, 3, 1, 1], Some((1, 1, 3)), false),
    (&[3, 2, 2, 1], [2, 1, 1, 0], [0, -1, -1, 2], [-2, 1, 1, 0], Some((1, 1, 2)), false),
    (&[3, 1, 1, 1, 1, 1], [2, 0, 0, 0], [-1, -1, -1, 1], [-1, 1, 1, -1], None, true),
    (&[2, 2, 2, 2], [1, 1, 1, 1], [0, 0, 0, 2], [-1, 1, 1, 1], None, true),
    (&[2, 2, 1, 1, 1, 1], [1, 1, 0, 0], [0, 0, -1, 1], [-1, 1, 0, 0], Some((1, 3, 0)), false),
    (&[7, 1], [6, 4, 2, 0], [0, -2, -4, 6], [-6, 4, 2, 0], Some((1, 1, 6)), false),
    (&[5, 3], [4, 2, 2, 0], [0, -2, -2, 4], [-4, 2, 2, 0], Some((1, 1, 4)), false),
    (&[3, 3, 1, 1], [2, 2, 0, 0], [0, 0, -2, 2], [-2, 2, 0, 0], Some((1, 1, 2)), false),
];

fn criterion_1() -> Outcome {
    let rows = table2();
    ensure(rows.len() == 9, format!("{} rows", rows.len()))?;
    for (got, (part, c, a, b, witness, free)) in rows.iter().zip(TABLE2) {
        ensure(got.partition == part, format!("partition {:?}", got.partition))?;
        ensure(got.torus_weights == c, format!("{part:?}: torus {:?}", got.torus_weights))?;
        ensure((got.lift_a, got.lift_b) == (a, b), format!("{part:?}: lift {:?} {:?}", got.lift_a, got.lift_b))?;
        let w = got.gcd_witness.map(|w| (w.i, w.j, w.gcd.unwrap_or(0)));
        ensure(w == witness, format!("{part:?}: witness {w:?}"))?;
        ensure(got.free == free, format!("{part:?}: free {}", got.free))?;
    }
    Ok("9 rows match".into())
}

// 2. Invariant values
fn criterion_2() -> Outcome {
    let few = SampleOptions::new(256, SEED);
    for id in ["su3-g2-so7", "g2-so7-so8"] {
        let t = builtin_triple(id).map_err(|e| e.to_string())?;
        let r = compute_f(&t.triple, &t.hints, &few).map_err(|e| e.to_string())?;
        ensure(r.value == Some(1), format!("f({id}) = {:?}, lower {}", r.value, r.certified_lower))?;
    }
    for t in [qi(1), q(1, 3), qi(7)] {
        let p = fatlab_core::liealg::presets::diagonal_so3_family(&t).map_err(|e| e.to_string())?;
        let r = compute_f(&p.triple, &p.hints, &few).map_err(|e| e.to_string())?;
        ensure(r.value == Some(1), format!("diagonal family t={t}: {:?}", r.value))?;
    }
    let split = builtin_triple("0+so3-so3+so3-so3+so4").map_err(|e| e.to_string())?;
    let r = compute_f(&split.triple, &split.hints, &few).map_err(|e| e.to_string())?;
    ensure(r.value == Some(3), format!("split F2 f = {:?}", r.value))?;
    let chain = so_chain(4).map_err(|e| e.to_string())?;
    let r = compute_f(&chain.triple, &chain.hints, &few).map_err(|e| e.to_string())?;
    ensure(r.certified_lower >= 2, format!("so chain n=4 lower {}", r.certified_lower))?;

    let g2 = builtin_pair("g2-so8").map_err(|e| e.to_string())?;
    let r = compute_b(&g2.pair, &g2.hints, &SampleOptions::new(10_000, SEED)).map_err(|e| e.to_string())?;
    ensure(
        r.certified_lower == 2 && r.sampled_max <= 2 && r.samples >= 10_000,
        format!("b(g2-so8): lower {}, sampled max {} over {}", r.certified_lower, r.sampled_max, r.samples),
    )?;
    let su3 = builtin_pair("su3-so7").map_err(|e| e.to_string())?;
    let r3 = compute_b(&su3.pair, &su3.hints, &few).map_err(|e| e.to_string())?;
    ensure(r3.certified_lower >= 3, format!("b(su3-so7) lower {}", r3.certified_lower))?;
    Ok(format!("b(g2-so8) = 2, sampled max {} over {} samples", r.sampled_max, r.samples))
}

// 3. Classification replay
fn criterion_3() -> Outcome {
    let table = classify_triples(&Registry::builtin(), &PresetStore::builtin(), &RunConfig::default())
        .map_err(|e| e.to_string())?;
    for row in &table.rows {
        ensure(row.agrees(), format!("{} ({}): expected {:?}, got {:?}", row.label, row.triple, row.expected, row.computed))?;
        if row.route == Route::IdealSplit {
            ensure(row.computed != FVerdict::Eq1 || row.expected == FVerdict::Eq1, format!("{}", row.label))?;
        }
    }
    let found: BTreeSet<&str> = table.survivors.iter().map(String::as_str).collect();
    let want: BTreeSet<&str> = SURVIVORS.iter().copied().collect();
    ensure(found == want && table.survivors.len() == 6, format!("survivors {found:?}"))?;
    let routes = |r: Route| table.rows.iter().filter(|x| x.route == r).count();
    Ok(format!(
        "{} cases (dimension {}, witness {}, ideal split {}), 6 survivors",
        table.rows.len(),
        routes(Route::Dimension),
        routes(Route::Witness),
        routes(Route::IdealSplit)
    ))
}

// 4. Freeness oracle
/// An element of order N in the circle fixes a point iff N divides some ℓ_i and some r_j.
fn free_by_subgroups(l: &[i64; 4], r: &[i64; 4], max_n: i64) -> bool {
    let fixed = |w: &[i64; 4], n: i64| w.iter().any(|&x| x % n == 0);
    if l.contains(&0) && r.contains(&0) {
        return false;
    }
    (2..=max_n).all(|n| !(fixed(l, n) && fixed(r, n)))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let b = 4i64;
    for n1 in -b..=b {
        for n2 in -b..=b {
            for n3 in -b..=b {
                for n4 in -b..=b {
                    let Ok(p) = CirclePattern::new([n1, n2, n3, n4]) else { continue };
                    checked += 1;
                    // weights recomputed here, independent of the library
                    let l = [n1, n1 + n3 + n4, n2 + n3 - n4, n2];
                    let r = [n3, n4, -n1 + n2 - n4, n1 + n2 + n3];
                    if is_free_circle(&p) != free_by_subgroups(&l, &r, 1000) {
                        bad.push(p.n);
                    }
                }
            }
        }
    }
    ensure(bad.is_empty(), format!("{} disagreements, first {:?}", bad.len(), bad.first()))?;
    Ok(format!("{checked} primitive patterns, 0 disagreements"))
}

// 5. Pontryagin arithmetic
fn criterion_5() -> Outcome {
    let k = Poly::var(1, 0);
    let c = |x: i64| Poly::constant(1, qi(x));
    let n = [c(1), c(1), c(1), k.clone()];
    let l = [n[0].clone(), n[0].add(&n[2]).add(&n[3]), n[1].add(&n[2]).sub(&n[3]), n[1].clone()];
    let r = [n[2].clone(), n[3].clone(), n[1].sub(&n[0]).sub(&n[3]), n[0].add(&n[1]).add(&n[2])];
    let sum = l.iter().chain(&r).fold(Poly::zero(1), |acc, w| acc.add(&w.mul(w)));
    let closed = k.mul(&k).add(&c(5)).scale(&qi(4));
    ensure(sum.sub(&closed).is_zero(), "sum of squared weights differs from 4(k^2+5)")?;
    for kv in (-99i64..=99).filter(|v| v.rem_euclid(6) == 3) {
        let (lw, rw) = weights_from_n([1, 1, 1, kv]);
        let point = [qi(kv)];
        for (w, poly) in lw.iter().chain(&rw).zip(l.iter().chain(&r)) {
            ensure(qi(*w) == poly.eval(&point), format!("weight mismatch at k={kv}"))?;
        }
        let p = CirclePattern::new([1, 1, 1, kv]).map_err(|e| e.to_string())?;
        let v = p1_circle(&p).map_err(|e| format!("k={kv}: {e}"))?;
        ensure(v.value == 4 * (kv * kv + 5), format!("k={kv}: p1 {}", v.value))?;
    }
    let e = enumerate_free_circles(10);
    let mut values = BTreeSet::new();
    let mut count = 0;
    for p in e.free_patterns() {
        let v = p.p1.ok_or("missing p1")?;
        ensure(v % 8 == 0, format!("{:?}: p1 {v}", p.pattern.n))?;
        values.insert(v.abs());
        count += 1;
    }
    ensure(values.len() >= 5, format!("{} distinct values", values.len()))?;
    ensure(p1_su2(BaseSpace::S7xS7).value == 4, "p1_su2")?;
    let s6 = CirclePattern::new([0, 2, -1, 1]).map_err(|e| e.to_string())?;
    let v6 = p1_circle_sphere6(&s6).map_err(|e| e.to_string())?;
    ensure(v6.value == 8, format!("S6xS7 value {}", v6.value))?;
    Ok(format!("{count} free patterns at bound 10, {} distinct |p1|", values.len()))
}

// 6. Triality
fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..100 {
        let alpha = [(); 4].map(|_| random_point(&mut rng));
        let t = torus_element(&alpha).map_err(|e| e.to_string())?;
        ensure(triality_check(t.a(), t.b(), t.c()), format!("torus sample {i}"))?;
    }
    let mut lifts = 0;
    for (_, c, a, b, _, _) in TABLE2 {
        // the published lift is for the torus circle with θ₁ reversed
        let flipped = [-c[0], c[1], c[2], c[3]];
        for _ in 0..3 {
            // every row has even Σc, so A and B are integral in θ
            let theta = random_point(&mut rng);
            let lift = lift_c_diagonal(flipped, &theta).map_err(|e| e.to_string())?;
            ensure(lift.c() == &rotation_blocks(flipped, &theta), format!("lift {c:?} projects elsewhere"))?;
            ensure(lift.a() == &rotation_blocks(a, &theta) && lift.b() == &rotation_blocks(b, &theta), format!("lift {c:?}"))?;
            ensure(triality_check(lift.a(), lift.b(), lift.c()), format!("lift {c:?}"))?;
            ensure(triality_check(&-lift.a(), &-lift.b(), lift.c()), format!("lift {c:?} negated"))?;
            lifts += 1;
        }
    }
    let s = sigma();
    ensure(triality_check(&s, &s, &s), "(sigma, sigma, sigma)")?;
    let id = MatQ::identity(8);
    ensure(triality_check(&-&id, &id, &-&id), "(-I, I, -I)")?;
    let m = SpinElement::new(-&id, id.clone()).map_err(|e| e.to_string())?;
    ensure(m.c() == &-&id, "induced C of (-I, I)")?;
    Ok(format!("100 torus elements, {lifts} lifts, sigma and -I"))
}

// 7. Curvature
fn criterion_7() -> Outcome {
    let g2 = builtin_pair("g2-so8").map_err(|e| e.to_string())?;
    let s = ric2_sampling(&g2.pair, 100_000, SEED);
    ensure(s.all_positive && s.samples == 100_000, format!("Ric2 min {}", s.min_sum))?;
    let x = m_vector(&unit(7, 2));
    let y = embed(&a_perp(&unit(7, 0)).map_err(|e| e.to_string())?, 8, 0);
    let k = sectional(&x, &y, &g2.pair).map_err(|e| e.to_string())?;
    ensure(k == Rational::zero(), format!("witness plane curvature {k}"))?;

    let mut frames = 0;
    for id in ["g2-so7-so8", "su3-g2-so7"] {
        let t = builtin_triple(id).map_err(|e| e.to_string())?;
        for d in [Deformation::Normal, Deformation::Finite(qi(1))] {
            let dm = DeformedMetric::new(&t.triple, d, true).map_err(|e| e.to_string())?;
            let c = ric_k_certificate(&dm, 1, 1, 1, 10_000, SEED).map_err(|e| e.to_string())?;
            ensure(c.k == 2 && !c.falsified, format!("{id}: flat {}-frame found", c.k + 1))?;
            frames += c.samples;
        }
    }
    let split = builtin_triple("0+so3-so3+so3-so3+so4").map_err(|e| e.to_string())?;
    let dm = DeformedMetric::new(&split.triple, Deformation::Finite(qi(1)), true).map_err(|e| e.to_string())?;
    let c = ric_k_certificate(&dm, 1, 1, 0, 1_000, SEED).map_err(|e| e.to_string())?;
    let w = c.witness.ok_or("product counterexample not falsified")?;
    ensure(w.len() == c.k + 1, "witness size")?;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            ensure(flat_plane_test(&w[i], &w[j], &dm).map_err(|e| e.to_string())?, "witness plane not flat")?;
        }
    }
    Ok(format!("Ric2 min {:.4} over 1e5, {frames} frame searches, product frame found", s.min_sum))
}

// 8. Finite quotients
fn criterion_8() -> Outcome {
    let p = CirclePattern::new([0, 2, -1, 1]).map_err(|e| e.to_string())?;
    for d in 1..=50u64 {
        for sphere6 in [false, true] {
            let ok = finite_action_free(&p, d, true, sphere6).map_err(|e| e.to_string())?;
            ensure(ok, format!("d={d} sphere6={sphere6}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    while checked < 500 {
        let n = [(); 4].map(|_| rng.random_range(-5i64..=5));
        if n == [0; 4] {
            continue;
        }
        let p = CirclePattern::unchecked(n);
        let d = rng.random_range(1u64..=30);
        let m = rng.random_range(2u64..=6);
        let minus = rng.random_bool(0.5);
        let small = finite_action_free(&p, d, minus, false).map_err(|e| e.to_string())?;
        let big = finite_action_free(&p, d * m, minus, false).map_err(|e| e.to_string())?;
        ensure(small || !big, format!("{n:?}, d={d}, m={m}: free for dm but not d"))?;
        checked += 1;
    }
    Ok("d = 1..50 on both bases, 500 monotonicity triples".into())
}

// 9. Algebra self-tests
fn random_octonion(rng: &mut ChaCha8Rng) -> Octonion {
    Octonion::new([(); 8].map(|_| q(rng.random_range(-9..=9), rng.random_range(1..=4))))
}

fn closed(basis: &[MatQ]) -> bool {
    let span = Subspace::new(basis.to_vec());
    basis.iter().all(|a| basis.iter().all(|b| bracket(a, b).is_ok_and(|c| span.contains(&c))))
}

fn criterion_9() -> Outcome {
    verify_table().map_err(|e| format!("table: {e:?}"))?;
    for i in 1..8 {
        for j in 1..8 {
            let (a, b) = (Octonion::basis(i), Octonion::basis(j));
            let ab = oct_mul(&a, &b);
            let ba = oct_mul(&b, &a);
            let expect = if i == j { Octonion::one().scale(&qi(-1)) } else { ba.scale(&qi(-1)) };
            ensure(ab == expect, format!("e{i} e{j}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 0..1000 {
        let (a, b, c) = (random_octonion(&mut rng), random_octonion(&mut rng), random_octonion(&mut rng));
        ensure(check_alternative(&a, &b) && check_moufang(&a, &b, &c), format!("triple {n}"))?;
    }
    let g2 = g2_basis();
    ensure(Subspace::new(g2.clone()).dim() == 14 && closed(&g2), "g2 basis")?;
    let su3 = su3_in_g2();
    ensure(Subspace::new(su3.clone()).dim() == 8 && closed(&su3), "su3 basis")?;
    for id in PAIR_IDS {
        let p = builtin_pair(id).map_err(|e| e.to_string())?;
        ensure(jacobi_holds(p.pair.g().span()), format!("Jacobi on {id}"))?;
    }
    for id in TRIPLE_IDS {
        let t = builtin_triple(id).map_err(|e| e.to_string())?;
        ensure(jacobi_holds(t.triple.g().span()), format!("Jacobi on {id}"))?;
    }
    Ok(format!("1000 random triples, Jacobi on {} presets", PAIR_IDS.len() + TRIPLE_IDS.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("su2 table reproduction", 1, criterion_1),
        ("invariant values", 30, criterion_2),
        ("classification replay", 60, criterion_3),
        ("freeness oracle equivalence", 120, criterion_4),
        ("pontryagin arithmetic", 60, criterion_5),
        ("triality exactness", 10, criterion_6),
        ("curvature properties", 120, criterion_7),
        ("finite quotients", 30, criterion_8),
        ("algebra self-tests", 30, criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(*limit);
        let (ok, detail) = match outcome {
            Ok(d) if elapsed < budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit} s budget")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name} ({:.2} s < {limit} s) {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
