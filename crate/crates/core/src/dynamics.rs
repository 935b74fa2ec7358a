//! Affine maps `x ↦ A·x + v (mod ℤ²)` of the torus: periods, periodic
//! points, orbit structure and complete characteristics.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::characteristics::{equivalent, CompleteCharacteristic, OrbitValency};
use crate::error::{Error, Result};
use crate::exactlin::{det, mat_mul, mat_pow, solve_torus_congruence, Mat2, Rat, SolutionSet, Vec2Q};
use crate::glz::period_of;

/// Exact point of `[0,1)²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    pub x: Rat,
    pub y: Rat,
}

impl TorusPoint {
    /// Reduces both coordinates mod 1.
    pub fn new(x: Rat, y: Rat) -> Self {
        let v = Vec2Q::new(x, y).reduce_mod1();
        TorusPoint { x: v.x, y: v.y }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Self::from(Vec2Q::from_ratios(x, y))
    }

    pub fn origin() -> Self {
        TorusPoint { x: Rat::zero(), y: Rat::zero() }
    }

    pub fn as_vec(&self) -> Vec2Q {
        Vec2Q::new(self.x.clone(), self.y.clone())
    }
}

impl From<Vec2Q> for TorusPoint {
    fn from(v: Vec2Q) -> Self {
        TorusPoint::new(v.x, v.y)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `x ↦ A·x + v (mod ℤ²)` with `det A = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTorusMap {
    matrix: Mat2,
    translation: Vec2Q,
}

impl AffineTorusMap {
    pub fn new(matrix: Mat2, translation: Vec2Q) -> Result<Self> {
        let d = det(&matrix);
        if !d.abs().is_one() {
            return Err(Error::NotUnimodular { det: d.to_string() });
        }
        Ok(AffineTorusMap { matrix, translation: translation.reduce_mod1() })
    }

    /// Algebraic automorphism `f_A`.
    pub fn linear(matrix: Mat2) -> Result<Self> {
        Self::new(matrix, Vec2Q::zero())
    }

    pub fn translation_by(v: Vec2Q) -> Self {
        AffineTorusMap { matrix: Mat2::identity(), translation: v.reduce_mod1() }
    }

    /// The shift `(x, y) ↦ (x + 1/n, y)`.
    pub fn shift(n: u64) -> Self {
        Self::translation_by(Vec2Q::new(
            Rat::new(BigInt::one(), BigInt::from(n)),
            Rat::zero(),
        ))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn translation(&self) -> &Vec2Q {
        &self.translation
    }

    pub fn preserves_orientation(&self) -> bool {
        det(&self.matrix).is_one()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity() && self.translation.is_integral()
    }

    /// `fᵐ = (Aᵐ, (Aᵐ⁻¹ + … + A + I)·v)`.
    pub fn iterate(&self, m: u64) -> AffineTorusMap {
        let mut matrix = Mat2::identity();
        let mut translation = Vec2Q::zero();
        for _ in 0..m {
            translation = &self.matrix.apply(&translation) + &self.translation;
            matrix = mat_mul(&self.matrix, &matrix);
        }
        AffineTorusMap { matrix, translation: translation.reduce_mod1() }
    }

    /// `g ∘ f` applied as first `self`, then `other`.
    pub fn then(&self, other: &AffineTorusMap) -> AffineTorusMap {
        let translation = &other.matrix.apply(&self.translation) + &other.translation;
        AffineTorusMap {
            matrix: mat_mul(&other.matrix, &self.matrix),
            translation: translation.reduce_mod1(),
        }
    }
}

impl fmt::Display for AffineTorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x ↦ {}·x + {}", self.matrix, self.translation)
    }
}

/// Orbit of points whose period is below the map's period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    #[serde(serialize_with = "serialize_points")]
    pub points: Vec<TorusPoint>,
    pub period: u64,
    pub lambda: u64,
    pub delta: u64,
    pub valency: u64,
}

fn serialize_points<S: serde::Serializer>(pts: &[TorusPoint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for p in pts {
        seq.serialize_element(&[p.x.to_string(), p.y.to_string()])?;
    }
    seq.end()
}

/// The set `B̄_f` split into orbits.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct BSet {
    pub orbits: Vec<Orbit>,
}

impl BSet {
    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

pub fn apply(f: &AffineTorusMap, x: &TorusPoint) -> TorusPoint {
    TorusPoint::from(&f.matrix.apply(&x.as_vec()) + &f.translation)
}

/// Smallest `n` with `fⁿ = id`.
///
/// The linear part has some order `q` (or none); then `f^q` is the
/// translation by `w = (A^{q−1}+…+I)·v`, and the period is `q` times the
/// order of `w` in `ℚ²/ℤ²`.
pub fn map_period(f: &AffineTorusMap) -> Option<u64> {
    let q = period_of(&f.matrix).ok()??;
    let w = f.iterate(q).translation;
    let order = w.denominator_lcm().to_u64()?;
    Some(q * order)
}

/// `Fix(f)`: solutions of `(A − I)·x ≡ −v`.
pub fn fixed_points(f: &AffineTorusMap) -> SolutionSet {
    solve_torus_congruence(&(&f.matrix - &Mat2::identity()), &-&f.translation)
}

/// Splits an `f`-invariant point set into orbits, each starting at its least
/// point and ordered by descending period, then least point.
pub fn orbit_decomposition(
    f: &AffineTorusMap,
    points: &BTreeSet<TorusPoint>,
) -> Result<Vec<Vec<TorusPoint>>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for start in points {
        if seen.contains(start) {
            continue;
        }
        let mut orbit = vec![start.clone()];
        seen.insert(start.clone());
        let mut x = apply(f, start);
        while &x != start {
            if !points.contains(&x) || !seen.insert(x.clone()) {
                return Err(Error::NotInvariant);
            }
            orbit.push(x.clone());
            x = apply(f, &x);
        }
        orbits.push(orbit);
    }
    orbits.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    Ok(orbits)
}

/// `2·cos(2πδ/λ)` for `gcd(δ, λ) = 1`, when it is an integer.
fn twice_cos_primitive(lambda: u64) -> Option<i64> {
    match lambda {
        2 => Some(-2),
        3 => Some(-1),
        4 => Some(0),
        6 => Some(1),
        _ => None,
    }
}

/// Rotation numerator `δ` of a finite-order `B ∈ SL(2, ℤ)`.
///
/// `B` is conjugate, by an orientation-preserving real map, to the rotation
/// by `2πδ/λ`; `cos` is fixed by the trace and the sign of `sin` is the sign
/// of the lower-left entry. The half turn `−I` gives `δ = 1`.
pub fn local_rotation(b: &Mat2, lambda: u64) -> Result<u64> {
    if !det(b).is_one() {
        return Err(Error::NotSpecialLinear);
    }
    let wrong = Error::WrongOrder { expected: lambda };
    if lambda < 2 || !mat_pow(b, lambda).is_identity() {
        return Err(wrong);
    }
    if (1..lambda).any(|k| mat_pow(b, k).is_identity()) {
        return Err(wrong);
    }
    if lambda == 2 {
        return Ok(1);
    }
    let trace = b.trace().to_i64();
    if twice_cos_primitive(lambda) != trace {
        return Err(wrong);
    }
    let counterclockwise = b.c.is_positive();
    // δ < λ/2 ⟺ sin(2πδ/λ) > 0
    let delta = (1..lambda)
        .filter(|d| d.gcd(&lambda) == 1)
        .find(|&d| (2 * d < lambda) == counterclockwise)
        .expect("two primitive residues for λ ∈ {3, 4, 6}");
    Ok(delta)
}

/// `d` with `d·δ ≡ 1 (mod λ)`, `1 ≤ d < λ`.
pub fn valency_d(delta: u64, lambda: u64) -> Result<u64> {
    let not_coprime = Error::NotCoprime { value: delta, modulus: lambda };
    if lambda < 2 || delta == 0 || delta >= lambda {
        return Err(not_coprime);
    }
    let e = (delta as i64).extended_gcd(&(lambda as i64));
    if e.gcd != 1 {
        return Err(not_coprime);
    }
    Ok(e.x.rem_euclid(lambda as i64) as u64)
}

/// `B̄_f` with per-orbit rotation data.
pub fn lower_period_set(f: &AffineTorusMap) -> Result<BSet> {
    let n = map_period(f).ok_or(Error::NotPeriodic)?;
    if !f.preserves_orientation() {
        return Err(Error::OrientationReversing);
    }
    let mut points = BTreeSet::new();
    for m in (1..n).filter(|m| n % m == 0) {
        match fixed_points(&f.iterate(m)) {
            SolutionSet::Finite(pts) => points.extend(pts.into_iter().map(TorusPoint::from)),
            SolutionSet::Empty => {}
            SolutionSet::AllOfTorus | SolutionSet::PositiveDimensional => {
                return Err(Error::DegenerateFixedSet { power: m });
            }
        }
    }
    let mut orbits = Vec::new();
    for pts in orbit_decomposition(f, &points)? {
        let period = pts.len() as u64;
        let lambda = n / period;
        let delta = local_rotation(&mat_pow(&f.matrix, period), lambda)?;
        let valency = valency_d(delta, lambda)?;
        orbits.push(Orbit { points: pts, period, lambda, delta, valency });
    }
    Ok(BSet { orbits })
}

pub fn complete_characteristic(f: &AffineTorusMap) -> Result<CompleteCharacteristic> {
    let n = map_period(f).ok_or(Error::NotPeriodic)?;
    let bset = lower_period_set(f)?;
    CompleteCharacteristic::new(
        n,
        1,
        bset.orbits.iter().map(|o| OrbitValency::new(o.period, o.valency)),
    )
}

/// `L(f_A) = det(I − A)`.
pub fn lefschetz_number(a: &Mat2) -> BigInt {
    det(&(&Mat2::identity() - a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyVerdict {
    pub conjugate: bool,
    pub reason: String,
}

fn kappa_name(kappa: &CompleteCharacteristic) -> String {
    kappa.torus_name().unwrap_or_else(|| kappa.to_string())
}

/// Orientation-preserving conjugacy of two periodic maps.
pub fn conjugate_test(f: &AffineTorusMap, g: &AffineTorusMap) -> Result<ConjugacyVerdict> {
    let kf = complete_characteristic(f)?;
    let kg = complete_characteristic(g)?;
    let verdict = if kf.is_free() && kg.is_free() {
        let (nf, ng) = (kf.period(), kg.period());
        if nf == ng {
            ConjugacyVerdict { conjugate: true, reason: format!("both free, period {nf}") }
        } else {
            ConjugacyVerdict {
                conjugate: false,
                reason: format!("both free, periods {nf} ≠ {ng}"),
            }
        }
    } else if equivalent(&kf, &kg) {
        ConjugacyVerdict {
            conjugate: true,
            reason: format!("characteristics coincide: {}", kappa_name(&kf)),
        }
    } else {
        ConjugacyVerdict {
            conjugate: false,
            reason: format!("{} ≠ {}", kappa_name(&kf), kappa_name(&kg)),
        }
    };
    Ok(verdict)
}
