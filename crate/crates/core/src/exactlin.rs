//! Exact 2×2 integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`; there is no floating
//! point anywhere in the module.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// 2×2 integer matrix, row-major: `(a b; c d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Mat2::from_i64(1, 0, 0, 1)
    }

    pub fn zero() -> Self {
        Mat2::from_i64(0, 0, 0, 0)
    }

    pub fn scalar(k: i64) -> Self {
        Mat2::from_i64(k, 0, 0, k)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn det(&self) -> BigInt {
        det(self)
    }

    pub fn trace(&self) -> BigInt {
        trace(self)
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// gcd of the absolute values of the entries; zero for the zero matrix.
    pub fn content(&self) -> BigInt {
        self.entries()
            .into_iter()
            .fold(BigInt::zero(), |g, e| g.gcd(e))
    }

    /// Entrywise residues in `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Mat2 {
        Mat2::new(
            self.a.mod_floor(m),
            self.b.mod_floor(m),
            self.c.mod_floor(m),
            self.d.mod_floor(m),
        )
    }

    pub fn apply(&self, v: &Vec2Q) -> Vec2Q {
        let (a, b, c, d) = (
            Rat::from_integer(self.a.clone()),
            Rat::from_integer(self.b.clone()),
            Rat::from_integer(self.c.clone()),
            Rat::from_integer(self.d.clone()),
        );
        Vec2Q::new(&a * &v.x + &b * &v.y, &c * &v.x + &d * &v.y)
    }

    /// Returns the entries as `i64` when every entry fits.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        use num_traits::ToPrimitive;
        Some([
            self.a.to_i64()?,
            self.b.to_i64()?,
            self.c.to_i64()?,
            self.d.to_i64()?,
        ])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        mat_mul(self, rhs)
    }
}

impl Add for &Mat2 {
    type Output = Mat2;
    fn add(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a + &rhs.a,
            &self.b + &rhs.b,
            &self.c + &rhs.c,
            &self.d + &rhs.d,
        )
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a - &rhs.a,
            &self.b - &rhs.b,
            &self.c - &rhs.c,
            &self.d - &rhs.d,
        )
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

/// Exact rational 2-vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2Q {
    pub x: Rat,
    pub y: Rat,
}

impl Vec2Q {
    pub fn new(x: Rat, y: Rat) -> Self {
        Vec2Q { x, y }
    }

    pub fn zero() -> Self {
        Vec2Q::new(Rat::zero(), Rat::zero())
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Vec2Q::new(
            Rat::new(x.0.into(), x.1.into()),
            Rat::new(y.0.into(), y.1.into()),
        )
    }

    /// Both coordinates reduced into `[0, 1)`.
    pub fn reduce_mod1(&self) -> Vec2Q {
        Vec2Q::new(frac(&self.x), frac(&self.y))
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }
}

impl Add for &Vec2Q {
    type Output = Vec2Q;
    fn add(self, rhs: &Vec2Q) -> Vec2Q {
        Vec2Q::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Neg for &Vec2Q {
    type Output = Vec2Q;
    fn neg(self) -> Vec2Q {
        Vec2Q::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for Vec2Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &Rat) -> Rat {
    q - q.floor()
}

/// Solutions of `M·x ≡ b (mod ℤ²)` on the torus `[0,1)²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    /// Distinct points, sorted lexicographically by `(x, y)`.
    Finite(Vec<Vec2Q>),
    AllOfTorus,
    Empty,
    PositiveDimensional,
}

impl SolutionSet {
    /// Number of points for finite sets (`Empty` counts as zero).
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            SolutionSet::Finite(pts) => Some(pts.len()),
            SolutionSet::Empty => Some(0),
            _ => None,
        }
    }

    pub fn points(&self) -> &[Vec2Q] {
        match self {
            SolutionSet::Finite(pts) => pts,
            _ => &[],
        }
    }
}

pub fn mat_mul(lhs: &Mat2, rhs: &Mat2) -> Mat2 {
    Mat2::new(
        &lhs.a * &rhs.a + &lhs.b * &rhs.c,
        &lhs.a * &rhs.b + &lhs.b * &rhs.d,
        &lhs.c * &rhs.a + &lhs.d * &rhs.c,
        &lhs.c * &rhs.b + &lhs.d * &rhs.d,
    )
}

pub fn mat_pow(m: &Mat2, exp: u64) -> Mat2 {
    let mut acc = Mat2::identity();
    for _ in 0..exp {
        acc = mat_mul(&acc, m);
    }
    acc
}

pub fn det(m: &Mat2) -> BigInt {
    &m.a * &m.d - &m.b * &m.c
}

pub fn trace(m: &Mat2) -> BigInt {
    &m.a + &m.d
}

/// Integer inverse of a matrix with determinant ±1.
pub fn unimodular_inverse(m: &Mat2) -> Result<Mat2> {
    let det = det(m);
    if det.abs() != BigInt::one() {
        return Err(Error::NotUnimodular { det: det.to_string() });
    }
    // adj(M) / det, and det = ±1 so dividing is multiplying
    let adj = adjugate(m);
    Ok(Mat2::new(
        &adj.a * &det,
        &adj.b * &det,
        &adj.c * &det,
        &adj.d * &det,
    ))
}

fn adjugate(m: &Mat2) -> Mat2 {
    Mat2::new(m.d.clone(), -&m.b, -&m.c, m.a.clone())
}

/// All `x ∈ [0,1)²` with `M·x ≡ b (mod ℤ²)`.
///
/// For `det M = D ≠ 0` the solutions are `adj(M)·(b + k) / D` where `k` runs
/// over coset representatives of `ℤ² / Mℤ²`. The representatives come from
/// the column Hermite form `(g 0; q D/g)` of `M`, so exactly `|D|` vectors are
/// visited.
pub fn solve_torus_congruence(m: &Mat2, rhs: &Vec2Q) -> SolutionSet {
    let det = det(m);
    if det.is_zero() {
        if m.is_zero() {
            return if rhs.is_integral() {
                SolutionSet::AllOfTorus
            } else {
                SolutionSet::Empty
            };
        }
        return SolutionSet::PositiveDimensional;
    }

    // The first row is nonzero because det ≠ 0.
    let g = m.a.gcd(&m.b);
    let rows = g.clone();
    let cols = (&det / &g).abs();

    let adj = adjugate(m);
    let det_q = Rat::from_integer(det);
    let mut found = BTreeSet::new();
    let mut i = BigInt::zero();
    while i < rows {
        let mut j = BigInt::zero();
        while j < cols {
            let shifted = Vec2Q::new(
                &rhs.x + Rat::from_integer(i.clone()),
                &rhs.y + Rat::from_integer(j.clone()),
            );
            let raw = adj.apply(&shifted);
            let x = Vec2Q::new(&raw.x / &det_q, &raw.y / &det_q).reduce_mod1();
            found.insert(x);
            j += 1;
        }
        i += 1;
    }
    SolutionSet::Finite(found.into_iter().collect())
}
