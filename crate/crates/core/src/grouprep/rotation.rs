//! SO(3) elements as canonical-sign unit quaternions.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sampling::stream_rng;

/// Components below this magnitude are treated as exact zeros when fixing
/// the sign, so that e.g. `cos(π/2)` does not decide the representative.
const SNAP: f64 = 1e-13;

/// A rotation stored as the unit quaternion `(w, x, y, z)` whose first
/// nonzero component is strictly positive.
///
/// The canonical representative doubles as the section `SO(3) → SU(2)`; the
/// sign discarded by canonicalization after a product is the cocycle value.
#[derive(Clone, Copy, PartialEq)]
pub struct RotationElement {
    quat: [f64; 4],
}

/// Normalizes, snaps tiny components and returns the canonical quaternion
/// together with the sign that was applied.
fn canonicalize(q: [f64; 4]) -> ([f64; 4], f64) {
    let norm = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    let mut out = q.map(|c| c / norm);
    let mut snapped = false;
    for c in out.iter_mut() {
        if c.abs() < SNAP && *c != 0.0 {
            *c = 0.0;
            snapped = true;
        }
    }
    if snapped {
        let n = out.iter().map(|c| c * c).sum::<f64>().sqrt();
        out = out.map(|c| c / n);
    }
    let lead = out.iter().copied().find(|c| *c != 0.0).unwrap_or(1.0);
    if lead < 0.0 {
        (out.map(|c| -c), -1.0)
    } else {
        (out, 1.0)
    }
}

fn hamilton(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

impl RotationElement {
    pub fn identity() -> Self {
        Self {
            quat: [1.0, 0.0, 0.0, 0.0],
        }
    }

    pub fn from_quaternion(q: [f64; 4]) -> Result<Self> {
        let norm = q.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(Error::Invalid(format!("quaternion {q:?} cannot be normalized")));
        }
        Ok(Self {
            quat: canonicalize(q).0,
        })
    }

    /// Rotation by `theta` radians about `axis` (right-hand rule).
    pub fn from_axis_angle(axis: [f64; 3], theta: f64) -> Result<Self> {
        let n = axis.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !n.is_finite() || n < 1e-12 {
            return Err(Error::Invalid(format!("rotation axis {axis:?} has zero length")));
        }
        let (s, c) = (theta / 2.0).sin_cos();
        Self::from_quaternion([c, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n])
    }

    pub fn rx(theta: f64) -> Self {
        Self::from_axis_angle([1.0, 0.0, 0.0], theta).expect("unit axis")
    }

    pub fn ry(theta: f64) -> Self {
        Self::from_axis_angle([0.0, 1.0, 0.0], theta).expect("unit axis")
    }

    pub fn rz(theta: f64) -> Self {
        Self::from_axis_angle([0.0, 0.0, 1.0], theta).expect("unit axis")
    }

    pub fn quat(&self) -> [f64; 4] {
        self.quat
    }

    /// Group product `self · other` and the sign relating the raw
    /// quaternion product to the canonical representative of the result.
    pub fn compose_signed(&self, other: &Self) -> (Self, f64) {
        let (quat, sign) = canonicalize(hamilton(self.quat, other.quat));
        (Self { quat }, sign)
    }

    pub fn compose(&self, other: &Self) -> Self {
        self.compose_signed(other).0
    }

    pub fn inverse(&self) -> Self {
        let [w, x, y, z] = self.quat;
        Self {
            quat: canonicalize([w, -x, -y, -z]).0,
        }
    }

    /// Distance between the rotations, insensitive to the quaternion sign.
    pub fn distance(&self, other: &Self) -> f64 {
        let plus: f64 = self.quat.iter().zip(&other.quat).map(|(a, b)| (a - b).powi(2)).sum();
        let minus: f64 = self.quat.iter().zip(&other.quat).map(|(a, b)| (a + b).powi(2)).sum();
        plus.min(minus).sqrt()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Self::identity(), tol)
    }

    /// The 3×3 rotation matrix acting on column vectors.
    pub fn rotation_matrix(&self) -> [[f64; 3]; 3] {
        let [w, x, y, z] = self.quat;
        [
            [
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
            ],
            [
                2.0 * (x * y + w * z),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - w * x),
            ],
            [
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                1.0 - 2.0 * (x * x + y * y),
            ],
        ]
    }

    pub fn norm_defect(&self) -> f64 {
        (self.quat.iter().map(|c| c * c).sum::<f64>() - 1.0).abs()
    }

    pub(crate) fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            quat: canonicalize(raw_haar_quaternion(rng)).0,
        }
    }
}

/// Four independent standard normals, normalized: uniform on the 3-sphere.
pub(crate) fn raw_haar_quaternion<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-8 {
            return q.map(|c| c / n);
        }
    }
}

/// `count` Haar-distributed rotations from a single seeded stream.
pub fn haar_sample(seed: u64, count: usize) -> Vec<RotationElement> {
    let mut rng = stream_rng(seed);
    (0..count).map(|_| RotationElement::random(&mut rng)).collect()
}

impl fmt::Debug for RotationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [w, x, y, z] = self.quat;
        write!(f, "RotationElement({w:.6}, {x:.6}, {y:.6}, {z:.6})")
    }
}

impl fmt::Display for RotationElement {
    /// Axis-angle form `ax,ay,az:theta`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [w, x, y, z] = self.quat;
        let s = (x * x + y * y + z * z).sqrt();
        if s < 1e-15 {
            return write!(f, "0,0,1:0");
        }
        let theta = 2.0 * s.atan2(w);
        write!(f, "{},{},{}:{}", x / s, y / s, z / s, theta)
    }
}

impl FromStr for RotationElement {
    type Err = Error;

    /// Parses `ax,ay,az:theta` with `theta` in radians. `pi` and `-pi`
    /// are accepted as angle shorthands.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("expected rotation as 'ax,ay,az:theta', got '{s}'"));
        let (axis, angle) = s.split_once(':').ok_or_else(bad)?;
        let comps: Vec<f64> = axis
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        if comps.len() != 3 {
            return Err(bad());
        }
        let theta = match angle.trim() {
            "pi" => std::f64::consts::PI,
            "-pi" => -std::f64::consts::PI,
            other => other.parse().map_err(|_| bad())?,
        };
        Self::from_axis_angle([comps[0], comps[1], comps[2]], theta)
    }
}

#[derive(Serialize, Deserialize)]
struct RotationRepr {
    quat: [f64; 4],
}

impl Serialize for RotationElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RotationRepr { quat: self.quat }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RotationElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = RotationRepr::deserialize(deserializer)?;
        RotationElement::from_quaternion(repr.quat).map_err(D::Error::custom)
    }
}
