//! Self-check battery behind the `verify` command.

use serde::Serialize;

use crate::characteristics::{
    enumerate_torus_nonfree, is_admissible, modular_genus, torus_kappa, torus_kappas,
    valency_sum_ok, CompleteCharacteristic, ModularGenus,
};
use crate::dynamics::{
    complete_characteristic, conjugate_test, fixed_points, lefschetz_number, lower_period_set,
    map_period, AffineTorusMap, TorusPoint,
};
use crate::error::Result;
use crate::exactlin::{det, mat_mul, mat_pow, unimodular_inverse, Mat2, Vec2Q};
use crate::glz::{oriented_class, period_of, torus_class_matrix, OrientedClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// How characteristics are computed; swappable so the battery itself can be
/// tested against a deliberately broken pipeline.
pub type CharacteristicFn = dyn Fn(&AffineTorusMap) -> Result<CompleteCharacteristic>;

/// Conjugators `S` with `det S = 1` and entries in `[−bound, bound]`, in a
/// fixed order.
pub fn special_linear_box(bound: i64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    if a * d - b * c == 1 {
                        out.push(Mat2::from_i64(a, b, c, d));
                    }
                }
            }
        }
    }
    out
}

fn conjugate(s: &Mat2, a: &Mat2) -> Mat2 {
    let inv = unimodular_inverse(s).expect("conjugator is unimodular");
    mat_mul(&mat_mul(&inv, a), s)
}

pub fn run_battery() -> Vec<Check> {
    run_battery_with(&complete_characteristic)
}

pub fn run_battery_with(characteristic: &CharacteristicFn) -> Vec<Check> {
    let mut checks = Vec::new();
    let kappas = torus_kappas();

    let mut enumerated = enumerate_torus_nonfree();
    let mut expected = kappas.clone();
    enumerated.sort();
    expected.sort();
    checks.push(Check::new(
        "torus characteristics enumeration",
        enumerated == expected,
        format!("{} characteristics enumerated", enumerated.len()),
    ));

    for j in 1..=7 {
        let a = torus_class_matrix(j).expect("j in range");
        let f = AffineTorusMap::linear(a.clone()).expect("unimodular");
        let kappa = torus_kappa(j).expect("j in range");
        let computed = characteristic(&f);
        let class = oriented_class(&a);
        let passed = computed.as_ref() == Ok(&kappa)
            && class == Ok(OrientedClass::from_index(j).expect("j in range"));
        let class_text = match &class {
            Ok(c) => c.to_string(),
            Err(e) => e.to_string(),
        };
        let detail = match &computed {
            Ok(k) => match k.torus_label() {
                Some(l) => format!("A{j} → κ{l}, class {class_text}"),
                None => format!("A{j} → {k}, class {class_text}"),
            },
            Err(e) => format!("A{j}: {e}"),
        };
        checks.push(Check::new(format!("A{j} has characteristic κ{j}"), passed, detail));
    }

    checks.push(worked_example(characteristic));
    checks.push(count_law());
    checks.push(admissibility(&kappas, characteristic));
    checks.push(translations());
    checks
}

fn worked_example(characteristic: &CharacteristicFn) -> Check {
    let a5 = torus_class_matrix(5).expect("A5");
    let f = AffineTorusMap::linear(a5).expect("unimodular");
    let pts = |m: u64| -> Vec<TorusPoint> {
        fixed_points(&f.iterate(m))
            .points()
            .iter()
            .cloned()
            .map(TorusPoint::from)
            .collect()
    };
    let p = TorusPoint::from_ratios;
    let origin = TorusPoint::origin();
    let mut fix3 = pts(3);
    fix3.sort();
    let mut expected3 = vec![origin.clone(), p((1, 2), (1, 2)), p((1, 2), (0, 1)), p((0, 1), (1, 2))];
    expected3.sort();

    let valencies = characteristic(&f).map(|k| {
        k.orbits().iter().map(|o| (o.period, o.valency)).collect::<Vec<_>>()
    });
    let orbit_points = lower_period_set(&f).map(|b| b.orbits.len());
    let passed = map_period(&f) == Some(6)
        && pts(1) == vec![origin.clone()]
        && pts(2) == vec![origin, p((1, 3), (1, 3)), p((2, 3), (2, 3))]
        && fix3 == expected3
        && orbit_points == Ok(3)
        && valencies.as_deref() == Ok(&[(3, 1), (2, 2), (1, 5)][..]);
    Check::new(
        "A5 worked example",
        passed,
        format!("orbit valencies {:?}", valencies.unwrap_or_default()),
    )
}

fn count_law() -> Check {
    let conjugators = special_linear_box(2);
    let mut tested = 0usize;
    let mut failures = Vec::new();
    for j in 1..=7 {
        let base = torus_class_matrix(j).expect("j in range");
        for s in &conjugators {
            let a = conjugate(s, &base);
            let period = period_of(&a).ok().flatten().unwrap_or(0);
            for m in 1..period {
                let am = mat_pow(&a, m);
                if am.is_identity() {
                    continue;
                }
                let f = AffineTorusMap::linear(am.clone()).expect("unimodular");
                let count = fixed_points(&f).finite_len();
                let expected = det(&(&am - &Mat2::identity())).magnitude().clone();
                let lefschetz = lefschetz_number(&am).magnitude().clone();
                tested += 1;
                if count.map(num_bigint::BigUint::from) != Some(expected.clone()) || lefschetz != expected {
                    failures.push(format!("{a}^{m}"));
                }
            }
        }
    }
    Check::new(
        "fixed-point count law",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{tested} powers checked")
        } else {
            format!("failed on {}", failures.join(", "))
        },
    )
}

fn admissibility(kappas: &[CompleteCharacteristic], characteristic: &CharacteristicFn) -> Check {
    let mut produced: Vec<CompleteCharacteristic> = enumerate_torus_nonfree();
    for j in 1..=7 {
        let f = AffineTorusMap::linear(torus_class_matrix(j).expect("j")).expect("unimodular");
        if let Ok(k) = characteristic(&f) {
            produced.push(k);
        }
    }
    let all_ok = produced.iter().all(|k| is_admissible(k).is_admissible());
    let sphere = kappas
        .iter()
        .all(|k| modular_genus(k) == Some(ModularGenus(0)) && valency_sum_ok(k));
    Check::new(
        "admissibility of produced characteristics",
        all_ok && sphere,
        format!("{} characteristics checked", produced.len()),
    )
}

fn translations() -> Check {
    let mut failures = Vec::new();
    for n in [2u64, 3, 4, 6, 12] {
        let shift = AffineTorusMap::shift(n);
        let other = AffineTorusMap::translation_by(Vec2Q::new(
            num_rational::BigRational::from_integer(0.into()),
            num_rational::BigRational::new(1.into(), n.into()),
        ));
        let free = lower_period_set(&shift).map(|b| b.is_empty()) == Ok(true);
        let kappa = complete_characteristic(&shift).ok() == CompleteCharacteristic::free(n, 1).ok();
        let conj = conjugate_test(&shift, &other).map(|v| v.conjugate) == Ok(true);
        let distinct = (1..=7).all(|j| {
            let g = AffineTorusMap::linear(torus_class_matrix(j).expect("j")).expect("unimodular");
            conjugate_test(&shift, &g).map(|v| v.conjugate) == Ok(false)
        });
        if !(free && kappa && conj && distinct) {
            failures.push(n.to_string());
        }
    }
    Check::new(
        "translations are free and classified by period",
        failures.is_empty(),
        if failures.is_empty() {
            "n ∈ {2, 3, 4, 6, 12}".to_string()
        } else {
            format!("failed for n = {}", failures.join(", "))
        },
    )
}

/// Characteristic with every local rotation reversed (`δ ↦ λ − δ`).
pub fn mirrored_characteristic(f: &AffineTorusMap) -> Result<CompleteCharacteristic> {
    let k = complete_characteristic(f)?;
    let n = k.period();
    CompleteCharacteristic::new(
        n,
        k.genus(),
        k.orbits().iter().map(|o| {
            let lambda = n / o.period;
            crate::characteristics::OrbitValency::new(o.period, lambda - o.valency)
        }),
    )
}
