//! Complete characteristics `(n, p, n₁..n_k, d₁..d_k)` of periodic surface
//! maps: admissibility, equivalence and enumeration.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// One orbit of points with period below the map's period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitValency {
    /// Period `nᵢ` of the orbit.
    pub period: u64,
    /// Valency `dᵢ`, the inverse of the local rotation numerator mod `λᵢ`.
    pub valency: u64,
}

impl OrbitValency {
    pub fn new(period: u64, valency: u64) -> Self {
        OrbitValency { period, valency }
    }
}

// Storage order: descending period, then ascending valency.
impl Ord for OrbitValency {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .period
            .cmp(&self.period)
            .then(self.valency.cmp(&other.valency))
    }
}

impl PartialOrd for OrbitValency {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Complete characteristic of a periodic map.
///
/// Orbits are kept sorted, so `==` is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CompleteCharacteristic {
    n: u64,
    p: u64,
    orbits: Vec<OrbitValency>,
}

impl CompleteCharacteristic {
    /// Checks the per-orbit invariants: `nᵢ | n`, `nᵢ < n`, and
    /// `1 ≤ dᵢ < λᵢ` with `gcd(dᵢ, λᵢ) = 1`.
    pub fn new(n: u64, p: u64, orbits: impl IntoIterator<Item = OrbitValency>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCharacteristic("period must be positive".into()));
        }
        let mut orbits: Vec<OrbitValency> = orbits.into_iter().collect();
        for o in &orbits {
            if o.period == 0 || o.period >= n || n % o.period != 0 {
                return Err(Error::InvalidCharacteristic(format!(
                    "orbit period {} is not a proper divisor of {}",
                    o.period, n
                )));
            }
            let lambda = n / o.period;
            if o.valency == 0 || o.valency >= lambda || o.valency.gcd(&lambda) != 1 {
                return Err(Error::InvalidCharacteristic(format!(
                    "valency {} is not a unit modulo {}",
                    o.valency, lambda
                )));
            }
        }
        orbits.sort();
        Ok(CompleteCharacteristic { n, p, orbits })
    }

    /// Characteristic `(n, p)` of a free action.
    pub fn free(n: u64, p: u64) -> Result<Self> {
        Self::new(n, p, [])
    }

    pub fn from_pairs(n: u64, p: u64, pairs: &[(u64, u64)]) -> Result<Self> {
        Self::new(n, p, pairs.iter().map(|&(ni, di)| OrbitValency::new(ni, di)))
    }

    pub fn period(&self) -> u64 {
        self.n
    }

    pub fn genus(&self) -> u64 {
        self.p
    }

    pub fn orbits(&self) -> &[OrbitValency] {
        &self.orbits
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_free(&self) -> bool {
        self.orbits.is_empty()
    }

    fn orbit_period_sum(&self) -> u64 {
        self.orbits.iter().map(|o| o.period).sum()
    }

    /// Flat tuple `(n, p, k, n₁..n_k, d₁..d_k)`.
    pub fn to_tuple(&self) -> Vec<u64> {
        let mut t = vec![self.n, self.p, self.orbits.len() as u64];
        t.extend(self.orbits.iter().map(|o| o.period));
        t.extend(self.orbits.iter().map(|o| o.valency));
        t
    }

    /// Index `j` when this is one of the seven torus characteristics `κⱼ`.
    pub fn torus_label(&self) -> Option<usize> {
        (1..=7).find(|&j| torus_kappa(j).as_ref() == Some(self))
    }

    /// `κⱼ` for the seven torus characteristics.
    pub fn torus_name(&self) -> Option<String> {
        const SUB: [&str; 8] = ["₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇"];
        self.torus_label().map(|j| format!("κ{}", SUB[j]))
    }
}

impl fmt::Display for CompleteCharacteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, p={}", self.n, self.p)?;
        if !self.orbits.is_empty() {
            let list: Vec<String> = self
                .orbits
                .iter()
                .map(|o| format!("({},{})", o.period, o.valency))
                .collect();
            write!(f, ", orbits {{{}}}", list.join(","))?;
        }
        write!(f, ")")
    }
}

/// The seven characteristics of periodic torus maps with nonempty `B̄_f`,
/// indexed `1..=7`.
pub fn torus_kappa(j: usize) -> Option<CompleteCharacteristic> {
    let pairs: &[(u64, u64)] = match j {
        1 => &[(1, 1), (1, 1), (1, 1), (1, 1)],
        2 => &[(1, 1), (1, 1), (1, 1)],
        3 => &[(1, 2), (1, 2), (1, 2)],
        4 => &[(3, 1), (2, 1), (1, 1)],
        5 => &[(3, 1), (2, 2), (1, 5)],
        6 => &[(2, 1), (1, 1), (1, 1)],
        7 => &[(2, 1), (1, 3), (1, 3)],
        _ => return None,
    };
    let n = match j {
        1 => 2,
        2 | 3 => 3,
        4 | 5 => 6,
        _ => 4,
    };
    Some(CompleteCharacteristic::from_pairs(n, 1, pairs).expect("valid torus characteristic"))
}

pub fn torus_kappas() -> Vec<CompleteCharacteristic> {
    (1..=7).filter_map(torus_kappa).collect()
}

/// Genus of the orbit space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModularGenus(pub u64);

/// Solves `2p + Σnᵢ − 2 = n(2g + k − 2)` for an integer `g ≥ 0`.
pub fn modular_genus(kappa: &CompleteCharacteristic) -> Option<ModularGenus> {
    let n = kappa.n as i128;
    let k = kappa.orbits.len() as i128;
    let lhs = 2 * kappa.p as i128 + kappa.orbit_period_sum() as i128 - 2;
    if lhs % n != 0 {
        return None;
    }
    let twice_g = lhs / n - k + 2;
    if twice_g < 0 || twice_g % 2 != 0 {
        return None;
    }
    Some(ModularGenus((twice_g / 2) as u64))
}

/// `Σ dᵢnᵢ ≡ 0 (mod n)`.
pub fn valency_sum_ok(kappa: &CompleteCharacteristic) -> bool {
    let sum: u64 = kappa.orbits.iter().map(|o| o.valency * o.period).sum();
    sum % kappa.n == 0
}

/// `gcd(n₁d₁, …, n_kd_k, n) = 1`; only meaningful when the orbit space is a
/// sphere.
pub fn sphere_gcd_ok(kappa: &CompleteCharacteristic) -> Result<bool> {
    if modular_genus(kappa) != Some(ModularGenus(0)) {
        return Err(Error::GenusNotZero);
    }
    let g = kappa
        .orbits
        .iter()
        .fold(kappa.n, |g, o| g.gcd(&(o.period * o.valency)));
    Ok(g == 1)
}

/// Realizability conditions, numbered as in the classical existence theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// `Σ dᵢnᵢ ≡ 0 (mod n)`
    ValencySum,
    /// Riemann–Hurwitz: integer `g ≥ 0` exists
    GenusEquation,
    /// `gcd(n₁d₁, …, n) = 1` when `g = 0`
    SphereGcd,
}

impl Condition {
    pub fn equation_number(self) -> u8 {
        match self {
            Condition::ValencySum => 2,
            Condition::GenusEquation => 3,
            Condition::SphereGcd => 4,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Condition::ValencySum => "valency sum Σ dᵢnᵢ ≢ 0 (mod n)",
            Condition::GenusEquation => "2p + Σnᵢ − 2 = n(2g + k − 2) has no integer g ≥ 0",
            Condition::SphereGcd => "gcd(n₁d₁, …, n_kd_k, n) ≠ 1 with g = 0",
        };
        write!(f, "({}) {}", self.equation_number(), text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub genus: Option<ModularGenus>,
    pub failed: Option<Condition>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.failed.is_none()
    }
}

/// Checks all three realizability conditions; `failed` names the first one
/// violated, in the order genus equation, valency sum, sphere gcd.
pub fn is_admissible(kappa: &CompleteCharacteristic) -> Admissibility {
    let genus = modular_genus(kappa);
    let failed = match genus {
        None => Some(Condition::GenusEquation),
        Some(_) if !valency_sum_ok(kappa) => Some(Condition::ValencySum),
        Some(ModularGenus(0)) if !sphere_gcd_ok(kappa).unwrap_or(false) => {
            Some(Condition::SphereGcd)
        }
        Some(_) => None,
    };
    Admissibility { genus, failed }
}

/// Orientation-preserving conjugacy test on characteristics.
pub fn equivalent(lhs: &CompleteCharacteristic, rhs: &CompleteCharacteristic) -> bool {
    lhs == rhs
}

/// `p = n(g−1)+1` for free actions, `p > n(g−1)+1` otherwise.
pub fn genus_relation_holds(kappa: &CompleteCharacteristic, g: ModularGenus) -> bool {
    let bound = kappa.n as i128 * (g.0 as i128 - 1) + 1;
    let p = kappa.p as i128;
    if kappa.is_free() {
        p == bound
    } else {
        p > bound
    }
}

/// `0 < k ≤ Σnᵢ ≤ nk/2 < nk` (vacuous for free characteristics).
pub fn orbit_sum_bounds_hold(kappa: &CompleteCharacteristic) -> bool {
    if kappa.is_free() {
        return true;
    }
    let k = kappa.orbits.len() as u64;
    let sum = kappa.orbit_period_sum();
    k <= sum && 2 * sum <= kappa.n * k && kappa.n * k < 2 * kappa.n * k
}

/// `2 < 2n/(n−1) ≤ k ≤ 4` for a torus map with nonempty `B̄_f`.
pub fn torus_orbit_count_ok(n: u64, k: u64) -> bool {
    n >= 2 && 2 * n <= k * (n - 1) && k <= 4
}

/// Admissible `(nᵢ, dᵢ)` pairs for period `n`.
fn orbit_alphabet(n: u64) -> Vec<OrbitValency> {
    let mut out = Vec::new();
    for ni in (1..n).filter(|ni| n % ni == 0) {
        let lambda = n / ni;
        for di in (1..lambda).filter(|d| d.gcd(&lambda) == 1) {
            out.push(OrbitValency::new(ni, di));
        }
    }
    out.sort();
    out
}

/// Multisets of size `k` over `alphabet`, as nondecreasing index sequences.
fn for_each_multiset(
    alphabet: &[OrbitValency],
    k: usize,
    start: usize,
    current: &mut Vec<OrbitValency>,
    visit: &mut dyn FnMut(&[OrbitValency]),
) {
    if current.len() == k {
        visit(current);
        return;
    }
    for i in start..alphabet.len() {
        current.push(alphabet[i]);
        for_each_multiset(alphabet, k, i, current, visit);
        current.pop();
    }
}

/// Multisets `{λ₁ ≤ … ≤ λ_k}` of integers `≥ 2` with `Σ 1/λᵢ = target`.
fn unit_fraction_tuples(k: usize, target: (u64, u64)) -> Vec<Vec<u64>> {
    fn go(
        remaining: usize,
        target: (u64, u64),
        min: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        let (num, den) = target;
        if remaining == 0 {
            if num == 0 {
                out.push(current.clone());
            }
            return;
        }
        if num == 0 {
            return;
        }
        // λ ≤ remaining / target, otherwise the remaining terms fall short.
        let max = (remaining as u64 * den) / num;
        for lambda in min.max(2)..=max {
            // num/den − 1/λ
            let (mut n2, d2) = (num * lambda, den * lambda);
            if n2 < den {
                continue;
            }
            n2 -= den;
            let g = n2.gcd(&d2).max(1);
            current.push(lambda);
            go(remaining - 1, (n2 / g, d2 / g), lambda, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(k, target, 2, &mut Vec::new(), &mut out);
    out
}

/// All admissible torus characteristics with nonempty `B̄_f`.
///
/// With `p = 1` the orbit space is a sphere and the genus equation reads
/// `nk = Σnᵢ + 2n`, i.e. `Σ 1/λᵢ = k − 2` with `λᵢ = n/nᵢ ≥ 2`, which forces
/// `k ∈ {3, 4}`. Each `λ` multiset is finite, and the sphere gcd condition
/// makes `n/lcm(λ)` divide the gcd, so `n = lcm(λ)`.
pub fn enumerate_torus_nonfree() -> Vec<CompleteCharacteristic> {
    let mut found = Vec::new();
    for k in 3..=4u64 {
        for lambdas in unit_fraction_tuples(k as usize, (k - 2, 1)) {
            let n = lambdas.iter().fold(1u64, |l, x| l.lcm(x));
            if !torus_orbit_count_ok(n, k) {
                continue;
            }
            let choices: Vec<Vec<u64>> = lambdas
                .iter()
                .map(|&lambda| (1..lambda).filter(|d| d.gcd(&lambda) == 1).collect())
                .collect();
            let mut idx = vec![0usize; choices.len()];
            loop {
                let orbits = lambdas
                    .iter()
                    .zip(&idx)
                    .zip(&choices)
                    .map(|((&lambda, &i), ds)| OrbitValency::new(n / lambda, ds[i]));
                let kappa = CompleteCharacteristic::new(n, 1, orbits)
                    .expect("orbit data built from divisors and units");
                if is_admissible(&kappa).is_admissible() {
                    found.push(kappa);
                }
                // odometer
                let mut pos = 0;
                while pos < idx.len() {
                    idx[pos] += 1;
                    if idx[pos] < choices[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
    }
    found.sort();
    found.dedup();
    found
}

/// Brute force over all characteristics of genus `p` with period at most
/// `n_max` and at most `k_max` orbits, keeping the admissible ones.
pub fn enumerate_general(p: u64, n_max: u64, k_max: u64) -> Vec<CompleteCharacteristic> {
    let mut found = Vec::new();
    for n in 1..=n_max {
        let alphabet = orbit_alphabet(n);
        for k in 0..=k_max as usize {
            if k > 0 && alphabet.is_empty() {
                break;
            }
            for_each_multiset(&alphabet, k, 0, &mut Vec::new(), &mut |orbits| {
                let kappa = CompleteCharacteristic::new(n, p, orbits.iter().copied())
                    .expect("orbit data built from divisors and units");
                if is_admissible(&kappa).is_admissible() {
                    found.push(kappa);
                }
            });
        }
    }
    found.sort();
    found.dedup();
    found
}
