//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use periodic_torus::characteristics::{
    enumerate_general, enumerate_torus_nonfree, is_admissible, modular_genus, torus_kappa,
    valency_sum_ok, CompleteCharacteristic, ModularGenus,
};
use periodic_torus::dynamics::{
    complete_characteristic, conjugate_test, fixed_points, lower_period_set, map_period,
    AffineTorusMap, TorusPoint,
};
use periodic_torus::exactlin::{det, mat_mul, mat_pow, unimodular_inverse, Mat2, SolutionSet, Vec2Q};
use periodic_torus::glz::{
    are_similar_over_z, batterson_class, has_unit_modulus_spectrum, oriented_class, period_of,
    torus_class_matrix, OrientedClass, SimilarityClass,
};

type Outcome = Result<String, String>;

fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
    Mat2::from_i64(a, b, c, d)
}

fn a(j: usize) -> Mat2 {
    torus_class_matrix(j).unwrap()
}

/// κ₁..κ₇ written out independently of the library's table.
fn printed_kappas() -> Vec<CompleteCharacteristic> {
    let raw: [(u64, &[(u64, u64)]); 7] = [
        (2, &[(1, 1), (1, 1), (1, 1), (1, 1)]),
        (3, &[(1, 1), (1, 1), (1, 1)]),
        (3, &[(1, 2), (1, 2), (1, 2)]),
        (6, &[(3, 1), (2, 1), (1, 1)]),
        (6, &[(3, 1), (2, 2), (1, 5)]),
        (4, &[(2, 1), (1, 1), (1, 1)]),
        (4, &[(2, 1), (1, 3), (1, 3)]),
    ];
    raw.iter()
        .map(|(n, pairs)| CompleteCharacteristic::from_pairs(*n, 1, pairs).unwrap())
        .collect()
}

fn conjugate(s: &Mat2, x: &Mat2) -> Mat2 {
    mat_mul(&mat_mul(&unimodular_inverse(s).unwrap(), x), s)
}

/// All S with entries in [−bound, bound] and det S ∈ `dets`.
fn unimodular_box(bound: i64, dets: &[i64]) -> Vec<Mat2> {
    let mut out = Vec::new();
    for p in -bound..=bound {
        for q in -bound..=bound {
            for r in -bound..=bound {
                for s in -bound..=bound {
                    if dets.contains(&(p * s - q * r)) {
                        out.push(m(p, q, r, s));
                    }
                }
            }
        }
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let got = enumerate_torus_nonfree();
    ensure(got.len() == 7, || format!("{} characteristics, expected 7", got.len()))?;
    let got: BTreeSet<_> = got.into_iter().collect();
    let want: BTreeSet<_> = printed_kappas().into_iter().collect();
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("7 characteristics, equal to κ₁..κ₇".into())
}

fn criterion_2() -> Outcome {
    let printed = printed_kappas();
    for j in 1..=7 {
        ensure(torus_kappa(j).as_ref() == Some(&printed[j - 1]), || format!("κ{j} table entry"))?;
        let f = AffineTorusMap::linear(a(j)).unwrap();
        let k = complete_characteristic(&f).map_err(|e| format!("A{j}: {e}"))?;
        ensure(k == printed[j - 1], || format!("A{j} → {k}"))?;
        let class = oriented_class(&a(j)).map_err(|e| e.to_string())?;
        ensure(class == OrientedClass::from_index(j).unwrap(), || {
            format!("oriented_class(A{j}) = {class}")
        })?;
    }
    let k6 = complete_characteristic(&AffineTorusMap::linear(a(6)).unwrap()).unwrap();
    let k7 = complete_characteristic(&AffineTorusMap::linear(a(7)).unwrap()).unwrap();
    ensure(k6 != k7, || "A6 and A7 not distinguished".into())?;
    Ok("A_j → κ_j and class A_j for j = 1..7".into())
}

fn criterion_3() -> Outcome {
    let f = AffineTorusMap::linear(a(5)).unwrap();
    ensure(map_period(&f) == Some(6), || format!("period {:?}", map_period(&f)))?;
    let p = |x: (i64, i64), y: (i64, i64)| Vec2Q::from_ratios(x, y);
    let fix = |k: u64| -> BTreeSet<Vec2Q> { fixed_points(&f.iterate(k)).points().iter().cloned().collect() };
    let want1: BTreeSet<_> = [p((0, 1), (0, 1))].into_iter().collect();
    let want2: BTreeSet<_> = [p((0, 1), (0, 1)), p((1, 3), (1, 3)), p((2, 3), (2, 3))].into_iter().collect();
    let want3: BTreeSet<_> = [p((0, 1), (0, 1)), p((1, 2), (1, 2)), p((1, 2), (0, 1)), p((0, 1), (1, 2))]
        .into_iter()
        .collect();
    ensure(fix(1) == want1, || format!("Fix(f) = {:?}", fix(1)))?;
    ensure(fix(2) == want2, || format!("Fix(f²) = {:?}", fix(2)))?;
    ensure(fix(3) == want3, || format!("Fix(f³) = {:?}", fix(3)))?;

    let b = lower_period_set(&f).map_err(|e| e.to_string())?;
    ensure(b.orbits.len() == 3, || format!("{} orbits", b.orbits.len()))?;
    let tp = TorusPoint::from_ratios;
    let expected = [
        (vec![tp((0, 1), (1, 2)), tp((1, 2), (0, 1)), tp((1, 2), (1, 2))], 3u64, 1u64),
        (vec![tp((1, 3), (1, 3)), tp((2, 3), (2, 3))], 2, 2),
        (vec![TorusPoint::origin()], 1, 5),
    ];
    for (o, (pts, period, d)) in b.orbits.iter().zip(expected) {
        let got: BTreeSet<_> = o.points.iter().cloned().collect();
        let want: BTreeSet<_> = pts.into_iter().collect();
        ensure(got == want && o.period == period && o.valency == d, || {
            format!("orbit {:?}: period {} d {}", o.points, o.period, o.valency)
        })?;
    }
    Ok("period 6, Fix sets 1/3/4 points, valencies d = 5, 2, 1".into())
}

fn criterion_4() -> Outcome {
    let mut canonical = Vec::new();
    for k in 0..=3i64 {
        canonical.push(m(1, k, 0, 1));
        canonical.push(m(-1, k, 0, -1));
    }
    for c in [
        SimilarityClass::M3,
        SimilarityClass::M4,
        SimilarityClass::M5,
        SimilarityClass::M6,
        SimilarityClass::M7,
    ] {
        canonical.push(c.representative());
    }

    let pool = unimodular_box(5, &[1, -1]);
    let mut rng = StdRng::seed_from_u64(0x7041_7005);
    for x in &canonical {
        let class = batterson_class(x).map_err(|e| e.to_string())?;
        for s in pool.choose_multiple(&mut rng, 100) {
            let c = conjugate(s, x);
            let got = batterson_class(&c).map_err(|e| e.to_string())?;
            ensure(got == class, || format!("S={s}: class of {c} is {got}, expected {class}"))?;
        }
    }

    for x in &canonical {
        for y in &canonical {
            let same = batterson_class(x).unwrap() == batterson_class(y).unwrap();
            let similar = are_similar_over_z(x, y, 4);
            ensure(same == similar, || format!("{x} vs {y}: class equal {same}, oracle {similar}"))?;
        }
    }
    Ok(format!(
        "{} canonical matrices × 100 conjugators; {} oracle pairs",
        canonical.len(),
        canonical.len() * canonical.len()
    ))
}

fn criterion_5() -> Outcome {
    let all = unimodular_box(6, &[1, -1]);
    let mut mismatches = Vec::new();
    for x in &all {
        let periodic = period_of(x).unwrap().is_some();
        let unit = has_unit_modulus_spectrum(x).unwrap();
        if periodic != unit {
            mismatches.push(x.clone());
        }
    }
    if mismatches.is_empty() {
        return Ok(format!("{} unimodular matrices with entries in [−6, 6]", all.len()));
    }
    // Every mismatch is a unipotent-type matrix: trace ±2, det 1, A ≠ ±I.
    let all_parabolic = mismatches.iter().all(|x| {
        det(x) == BigInt::from(1)
            && x.trace().abs() == BigInt::from(2)
            && !x.is_identity()
            && !(-x).is_identity()
    });
    Err(format!(
        "{} of {} matrices are unit-modulus but of infinite order (first: {}); all parabolic: {}",
        mismatches.len(),
        all.len(),
        mismatches[0],
        all_parabolic
    ))
}

fn criterion_6() -> Outcome {
    let pool = unimodular_box(5, &[1]);
    let mut rng = StdRng::seed_from_u64(0xC0_047);
    let mut checked = 0;
    for j in 1..=7 {
        let mut mats = vec![a(j)];
        mats.extend(pool.choose_multiple(&mut rng, 50).map(|s| conjugate(s, &a(j))));
        for x in &mats {
            let period = period_of(x).unwrap().unwrap();
            for k in 1..period {
                let xk = mat_pow(x, k);
                if xk.is_identity() {
                    continue;
                }
                let count = match fixed_points(&AffineTorusMap::linear(xk.clone()).unwrap()) {
                    SolutionSet::Finite(pts) => pts.len(),
                    other => return Err(format!("{x}^{k}: {other:?}")),
                };
                let expected = det(&(&xk - &Mat2::identity())).abs();
                ensure(BigInt::from(count) == expected, || {
                    format!("{x}^{k}: {count} fixed points, |det(A^m − I)| = {expected}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} powers checked"))
}

fn criterion_7() -> Outcome {
    let mut produced = enumerate_torus_nonfree();
    for p in 0..=3 {
        produced.extend(enumerate_general(p, 12, 6));
    }
    let pool = unimodular_box(3, &[1]);
    for j in 1..=7 {
        for s in &pool {
            let f = AffineTorusMap::linear(conjugate(s, &a(j))).unwrap();
            produced.push(complete_characteristic(&f).map_err(|e| e.to_string())?);
        }
    }
    for n in 1..=12 {
        produced.push(complete_characteristic(&AffineTorusMap::shift(n)).unwrap());
    }
    for k in &produced {
        let adm = is_admissible(k);
        ensure(adm.is_admissible(), || format!("{k} fails {:?}", adm.failed))?;
    }
    for k in printed_kappas() {
        ensure(modular_genus(&k) == Some(ModularGenus(0)) && valency_sum_ok(&k), || {
            format!("{k} violates the genus or valency equation")
        })?;
    }
    Ok(format!("{} produced characteristics admissible", produced.len()))
}

fn criterion_8() -> Outcome {
    for n in [2u64, 3, 4, 6, 12] {
        let shift = AffineTorusMap::shift(n);
        let b = lower_period_set(&shift).map_err(|e| e.to_string())?;
        ensure(b.is_empty(), || format!("n={n}: B̄ not empty"))?;
        let k = complete_characteristic(&shift).unwrap();
        ensure(k == CompleteCharacteristic::free(n, 1).unwrap(), || format!("n={n}: {k}"))?;
        let other = AffineTorusMap::translation_by(Vec2Q::from_ratios((0, 1), (1, n as i64)));
        ensure(conjugate_test(&shift, &other).unwrap().conjugate, || {
            format!("n={n}: shifts not conjugate")
        })?;
        for j in 1..=7 {
            let g = AffineTorusMap::linear(a(j)).unwrap();
            ensure(!conjugate_test(&shift, &g).unwrap().conjugate, || {
                format!("n={n}: shift conjugate to A{j}")
            })?;
        }
    }
    Ok("n ∈ {2, 3, 4, 6, 12}".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 torus characteristic enumeration", criterion_1),
        ("2 A_j realize κ_j", criterion_2),
        ("3 A5 worked example", criterion_3),
        ("4 similarity canonicalization", criterion_4),
        ("5 periodicity ⟺ unit-modulus spectrum", criterion_5),
        ("6 fixed-point count law", criterion_6),
        ("7 admissibility of produced characteristics", criterion_7),
        ("8 translations", criterion_8),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    let elapsed = start.elapsed();
    println!("{} / 8 criteria passed in {:.2?}", 8 - failed, elapsed);
    if elapsed.as_secs_f64() >= 10.0 {
        println!("FAIL  runtime budget: {elapsed:.2?} ≥ 10 s");
        failed += 1;
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
