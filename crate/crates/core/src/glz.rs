//! Periodicity and conjugacy classes in GL(2, ℤ).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::characteristics::CompleteCharacteristic;
use crate::dynamics::{complete_characteristic, AffineTorusMap};
use crate::error::{Error, Result};
use crate::exactlin::{det, mat_mul, trace, Mat2};

/// Every finite order in GL(2, ℤ) divides 12.
pub const PERIOD_SEARCH_CAP: u64 = 12;

/// ℤ-similarity class of a matrix whose eigenvalues lie on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SimilarityClass {
    /// `(1 m; 0 1)`; `M1(0)` is the identity.
    M1(BigInt),
    /// `(−1 m; 0 −1)`
    M2(BigInt),
    /// `(1 0; 0 −1)`
    M3,
    /// `(1 1; 0 −1)`
    M4,
    /// `(0 1; −1 0)`
    M5,
    /// `(0 1; −1 −1)`
    M6,
    /// `(0 −1; 1 1)`
    M7,
}

impl SimilarityClass {
    pub fn representative(&self) -> Mat2 {
        match self {
            SimilarityClass::M1(m) => {
                Mat2::new(BigInt::one(), m.clone(), BigInt::zero(), BigInt::one())
            }
            SimilarityClass::M2(m) => {
                Mat2::new(-BigInt::one(), m.clone(), BigInt::zero(), -BigInt::one())
            }
            SimilarityClass::M3 => Mat2::from_i64(1, 0, 0, -1),
            SimilarityClass::M4 => Mat2::from_i64(1, 1, 0, -1),
            SimilarityClass::M5 => Mat2::from_i64(0, 1, -1, 0),
            SimilarityClass::M6 => Mat2::from_i64(0, 1, -1, -1),
            SimilarityClass::M7 => Mat2::from_i64(0, -1, 1, 1),
        }
    }
}

impl fmt::Display for SimilarityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimilarityClass::M1(m) => write!(f, "M1({m})"),
            SimilarityClass::M2(m) => write!(f, "M2({m})"),
            SimilarityClass::M3 => write!(f, "M3"),
            SimilarityClass::M4 => write!(f, "M4"),
            SimilarityClass::M5 => write!(f, "M5"),
            SimilarityClass::M6 => write!(f, "M6"),
            SimilarityClass::M7 => write!(f, "M7"),
        }
    }
}

/// Conjugacy class under orientation-preserving conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrientedClass {
    Identity,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    NonPeriodic,
    OrientationReversing,
}

impl OrientedClass {
    /// `Aⱼ` for `j ∈ 1..=7`.
    pub fn from_index(j: usize) -> Option<Self> {
        use OrientedClass::*;
        [A1, A2, A3, A4, A5, A6, A7].get(j.checked_sub(1)?).copied()
    }

    pub fn index(self) -> Option<usize> {
        (1..=7).find(|&j| Self::from_index(j) == Some(self))
    }
}

impl fmt::Display for OrientedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrientedClass::Identity => write!(f, "identity"),
            OrientedClass::NonPeriodic => write!(f, "non-periodic"),
            OrientedClass::OrientationReversing => write!(f, "orientation-reversing"),
            other => write!(f, "A{}", other.index().unwrap_or(0)),
        }
    }
}

/// The representative `Aⱼ`, `j ∈ 1..=7`.
pub fn torus_class_matrix(j: usize) -> Option<Mat2> {
    let m = match j {
        1 => Mat2::from_i64(-1, 0, 0, -1),
        2 => Mat2::from_i64(-1, -1, 1, 0),
        3 => Mat2::from_i64(0, 1, -1, -1),
        4 => Mat2::from_i64(0, -1, 1, 1),
        5 => Mat2::from_i64(1, 1, -1, 0),
        6 => Mat2::from_i64(0, -1, 1, 0),
        7 => Mat2::from_i64(0, 1, -1, 0),
        _ => return None,
    };
    Some(m)
}

fn check_unimodular(a: &Mat2) -> Result<BigInt> {
    let d = det(a);
    if d.abs().is_one() {
        Ok(d)
    } else {
        Err(Error::NotUnimodular { det: d.to_string() })
    }
}

/// Both eigenvalues on the unit circle.
pub fn has_unit_modulus_spectrum(a: &Mat2) -> Result<bool> {
    let d = check_unimodular(a)?;
    let t = trace(a);
    Ok(if d.is_one() {
        t.abs() <= BigInt::from(2)
    } else {
        t.is_zero()
    })
}

/// Smallest `n ≥ 1` with `Aⁿ = I`, or `None` when `A` has infinite order.
pub fn period_of(a: &Mat2) -> Result<Option<u64>> {
    check_unimodular(a)?;
    let mut power = a.clone();
    for n in 1..=PERIOD_SEARCH_CAP {
        if power.is_identity() {
            return Ok(Some(n));
        }
        power = mat_mul(&power, a);
    }
    Ok(None)
}

pub fn batterson_class(a: &Mat2) -> Result<SimilarityClass> {
    let d = check_unimodular(a)?;
    if !has_unit_modulus_spectrum(a)? {
        return Err(Error::SpectrumNotUnitModulus);
    }
    let t = trace(a).to_i64().expect("|trace| ≤ 2");
    let class = if d.is_one() {
        match t {
            2 => SimilarityClass::M1((a - &Mat2::identity()).content()),
            -2 => SimilarityClass::M2((a + &Mat2::identity()).content()),
            0 => SimilarityClass::M5,
            -1 => SimilarityClass::M6,
            1 => SimilarityClass::M7,
            _ => unreachable!("unit-modulus trace"),
        }
    } else if a.reduce_mod(&BigInt::from(2)).is_identity() {
        SimilarityClass::M3
    } else {
        SimilarityClass::M4
    };
    Ok(class)
}

/// Exhaustive search for `S` with entries in `[−bound, bound]`, `det S = ±1`
/// and `S·B = A·S`. A `false` answer only means no conjugator within the
/// bound.
pub fn are_similar_over_z(a: &Mat2, b: &Mat2, bound: u64) -> bool {
    if det(a) != det(b) || trace(a) != trace(b) {
        return false;
    }
    match (a.to_i64(), b.to_i64(), i64::try_from(bound)) {
        (Some(a), Some(b), Ok(bound)) => similar_small(a, b, bound),
        _ => similar_big(a, b, bound),
    }
}

fn similar_small(a: [i64; 4], b: [i64; 4], bound: i64) -> bool {
    let [a0, a1, a2, a3] = a.map(i128::from);
    let [b0, b1, b2, b3] = b.map(i128::from);
    let range = || -bound..=bound;
    for s0 in range() {
        for s1 in range() {
            for s2 in range() {
                for s3 in range() {
                    let (s0, s1, s2, s3) = (s0 as i128, s1 as i128, s2 as i128, s3 as i128);
                    let det = s0 * s3 - s1 * s2;
                    if det != 1 && det != -1 {
                        continue;
                    }
                    // S·B == A·S
                    if s0 * b0 + s1 * b2 == a0 * s0 + a1 * s2
                        && s0 * b1 + s1 * b3 == a0 * s1 + a1 * s3
                        && s2 * b0 + s3 * b2 == a2 * s0 + a3 * s2
                        && s2 * b1 + s3 * b3 == a2 * s1 + a3 * s3
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn similar_big(a: &Mat2, b: &Mat2, bound: u64) -> bool {
    let bound = BigInt::from(bound);
    let values: Vec<BigInt> = {
        let mut v = Vec::new();
        let mut x = -bound.clone();
        while x <= bound {
            v.push(x.clone());
            x += 1;
        }
        v
    };
    for s0 in &values {
        for s1 in &values {
            for s2 in &values {
                for s3 in &values {
                    let s = Mat2::new(s0.clone(), s1.clone(), s2.clone(), s3.clone());
                    if det(&s).abs().is_one() && mat_mul(&s, b) == mat_mul(a, &s) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Orientation-preserving class, read off from the complete characteristic
/// of the induced torus automorphism.
pub fn oriented_class(a: &Mat2) -> Result<OrientedClass> {
    let d = check_unimodular(a)?;
    if a.is_identity() {
        return Ok(OrientedClass::Identity);
    }
    if period_of(a)?.is_none() {
        return Ok(OrientedClass::NonPeriodic);
    }
    if !d.is_one() {
        return Ok(OrientedClass::OrientationReversing);
    }
    let kappa = complete_characteristic(&AffineTorusMap::linear(a.clone())?)?;
    class_of_characteristic(&kappa)
}

fn class_of_characteristic(kappa: &CompleteCharacteristic) -> Result<OrientedClass> {
    kappa
        .torus_label()
        .and_then(OrientedClass::from_index)
        .ok_or_else(|| Error::UnmatchedCharacteristic(kappa.to_string()))
}
