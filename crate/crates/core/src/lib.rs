//! Exact classification of periodic homeomorphisms of the 2-torus.
//!
//! * [`exactlin`]: 2×2 integer/rational algebra and the congruence solver.
//! * [`glz`]: periods and conjugacy classes in GL(2, ℤ).
//! * [`dynamics`]: affine torus maps, periodic points, orbits, valencies.
//! * [`characteristics`]: complete characteristics, admissibility and
//!   enumeration.
//! * [`cli`]: the command-line front end and its reports.

pub mod characteristics;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod exactlin;
pub mod glz;
pub mod verify;

pub use characteristics::{CompleteCharacteristic, OrbitValency};
pub use dynamics::{AffineTorusMap, TorusPoint};
pub use error::{Error, Result};
pub use exactlin::{Mat2, Rat, SolutionSet, Vec2Q};
pub use glz::{OrientedClass, SimilarityClass};
