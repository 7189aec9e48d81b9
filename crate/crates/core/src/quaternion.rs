//! Quaternion algebra in two layers: plain `f64` quaternions for geometry
//! and error measurement, and exact half-integer Hurwitz quaternions for
//! everything number-theoretic.
//!
//! Throughout this crate the *norm* of a quaternion is `a·ā`, i.e. the
//! squared Euclidean length of its coefficient vector. The metric is
//! `|a − b| = sqrt(norm(a − b))`.

use crate::vec4;
use crate::Error;

/// Relative tolerance for floating-layer equality checks.
pub const REL_TOL: f64 = 1e-10;
/// Absolute floor for floating-layer equality checks.
pub const ABS_TOL: f64 = 1e-12;

/// A quaternion `x1 + x2·i + x3·j + x4·k` with `f64` coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { x1: 0.0, x2: 0.0, x3: 0.0, x4: 0.0 };
    pub const ONE: Quaternion = Quaternion { x1: 1.0, x2: 0.0, x3: 0.0, x4: 0.0 };
    pub const I: Quaternion = Quaternion { x1: 0.0, x2: 1.0, x3: 0.0, x4: 0.0 };
    pub const J: Quaternion = Quaternion { x1: 0.0, x2: 0.0, x3: 1.0, x4: 0.0 };
    pub const K: Quaternion = Quaternion { x1: 0.0, x2: 0.0, x3: 0.0, x4: 1.0 };

    /// Panics if any coefficient is NaN or infinite.
    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        let q = Quaternion { x1, x2, x3, x4 };
        assert!(
            q.embed().iter().all(|c| c.is_finite()),
            "quaternion coefficients must be finite: {q:?}"
        );
        q
    }

    pub fn from_coords(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn scale(self, f: f64) -> Self {
        Quaternion { x1: self.x1 * f, x2: self.x2 * f, x3: self.x3 * f, x4: self.x4 * f }
    }

    /// Negates the i, j, k components.
    pub fn conjugate(self) -> Self {
        Quaternion { x1: self.x1, x2: -self.x2, x3: -self.x3, x4: -self.x4 }
    }

    /// `a·ā = x1² + x2² + x3² + x4²` — the squared Euclidean length.
    pub fn norm(self) -> f64 {
        vec4::dot(self.embed(), self.embed())
    }

    /// `ā / norm(a)`; fails on norm zero.
    pub fn inverse(self) -> Result<Self, Error> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(self.conjugate().scale(1.0 / n))
    }

    /// `self · a⁻¹`.
    pub fn right_quotient(self, a: Quaternion) -> Result<Self, Error> {
        Ok(self * a.inverse()?)
    }

    /// `a⁻¹ · self`.
    pub fn left_quotient(self, a: Quaternion) -> Result<Self, Error> {
        Ok(a.inverse()? * self)
    }

    /// Euclidean distance of the coefficient vectors.
    pub fn distance(self, other: Quaternion) -> f64 {
        vec4::len(vec4::sub(self.embed(), other.embed()))
    }

    /// Coordinate vector in R^4; an isometry for [`Quaternion::distance`].
    pub fn embed(self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    /// Exact test against zero (all four coefficients identically zero).
    pub fn is_zero(self) -> bool {
        self.x1 == 0.0 && self.x2 == 0.0 && self.x3 == 0.0 && self.x4 == 0.0
    }

    /// Equality with relative tolerance [`REL_TOL`] and absolute floor
    /// [`ABS_TOL`].
    pub fn approx_eq(self, other: Quaternion) -> bool {
        let scale = self.norm().sqrt().max(other.norm().sqrt());
        self.distance(other) <= ABS_TOL.max(REL_TOL * scale)
    }
}

impl std::ops::Add for Quaternion {
    type Output = Quaternion;
    fn add(self, b: Quaternion) -> Quaternion {
        Quaternion { x1: self.x1 + b.x1, x2: self.x2 + b.x2, x3: self.x3 + b.x3, x4: self.x4 + b.x4 }
    }
}

impl std::ops::Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, b: Quaternion) -> Quaternion {
        Quaternion { x1: self.x1 - b.x1, x2: self.x2 - b.x2, x3: self.x3 - b.x3, x4: self.x4 - b.x4 }
    }
}

impl std::ops::Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl std::ops::Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product; noncommutative (`i·j = k`, `j·i = -k`).
    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion {
            x1: a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3 - a.x4 * b.x4,
            x2: a.x1 * b.x2 + a.x2 * b.x1 + a.x3 * b.x4 - a.x4 * b.x3,
            x3: a.x1 * b.x3 + a.x3 * b.x1 + a.x4 * b.x2 - a.x2 * b.x4,
            x4: a.x1 * b.x4 + a.x4 * b.x1 + a.x2 * b.x3 - a.x3 * b.x2,
        }
    }
}

/// Which of the two disjoint halves of the Hurwitz order an element lives
/// in: `H1` has integer coordinates, `H2` half-odd-integer coordinates.
/// `Any` is accepted in requests that do not care.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subring {
    H1,
    H2,
    Any,
}

/// A Hurwitz quaternion `(d1 + d2·i + d3·j + d4·k)/2` stored through its
/// doubled coordinates, which must be all even (integer coordinates, `H1`)
/// or all odd (half-odd-integer coordinates, `H2`).
///
/// The doubled representation keeps norms and products exact, so primality
/// decisions never depend on floating-point rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HurwitzInt {
    d: [i64; 4],
}

impl HurwitzInt {
    /// Builds from doubled coordinates, enforcing the parity invariant.
    pub fn from_doubled(d: [i64; 4]) -> Result<Self, Error> {
        let parity = d[0] & 1;
        if d.iter().any(|c| c & 1 != parity) {
            return Err(Error::MixedParity(d));
        }
        Ok(HurwitzInt { d })
    }

    /// Integer-coordinate element (`H1`).
    pub fn from_integers(c: [i64; 4]) -> Self {
        HurwitzInt { d: [2 * c[0], 2 * c[1], 2 * c[2], 2 * c[3]] }
    }

    pub(crate) fn from_doubled_unchecked(d: [i64; 4]) -> Self {
        debug_assert!(d.iter().all(|c| c & 1 == d[0] & 1));
        HurwitzInt { d }
    }

    pub fn doubled(&self) -> [i64; 4] {
        self.d
    }

    /// Exact integer norm `(d1² + d2² + d3² + d4²)/4`.
    pub fn hnorm(&self) -> u64 {
        let s: i128 = self.d.iter().map(|&c| (c as i128) * (c as i128)).sum();
        debug_assert_eq!(s % 4, 0, "parity invariant violated in {:?}", self.d);
        u64::try_from(s / 4).expect("norm exceeds u64")
    }

    pub fn conjugate(&self) -> Self {
        HurwitzInt { d: [self.d[0], -self.d[1], -self.d[2], -self.d[3]] }
    }

    /// Exact Hamilton product. The product of doubled coordinates is always
    /// divisible by two; the division is checked so a representation bug
    /// cannot pass silently.
    pub fn mul(&self, b: &HurwitzInt) -> Self {
        let a: [i128; 4] = self.d.map(i128::from);
        let c: [i128; 4] = b.d.map(i128::from);
        let prod = [
            a[0] * c[0] - a[1] * c[1] - a[2] * c[2] - a[3] * c[3],
            a[0] * c[1] + a[1] * c[0] + a[2] * c[3] - a[3] * c[2],
            a[0] * c[2] + a[2] * c[0] + a[3] * c[1] - a[1] * c[3],
            a[0] * c[3] + a[3] * c[0] + a[1] * c[2] - a[2] * c[1],
        ];
        let mut d = [0i64; 4];
        for i in 0..4 {
            assert_eq!(prod[i] % 2, 0, "doubled product has an odd component");
            d[i] = i64::try_from(prod[i] / 2).expect("product coordinate exceeds i64");
        }
        debug_assert!(d.iter().all(|c| c & 1 == d[0] & 1));
        HurwitzInt { d }
    }

    /// `H1` for all-even doubled coordinates, `H2` for all-odd.
    pub fn subring(&self) -> Subring {
        if self.d[0] & 1 == 0 {
            Subring::H1
        } else {
            Subring::H2
        }
    }

    pub fn to_quaternion(&self) -> Quaternion {
        Quaternion::new(
            self.d[0] as f64 / 2.0,
            self.d[1] as f64 / 2.0,
            self.d[2] as f64 / 2.0,
            self.d[3] as f64 / 2.0,
        )
    }
}

/// The 24 Hurwitz units (norm-one elements): `±1, ±i, ±j, ±k` and
/// `(±1 ± i ± j ± k)/2`, in ascending doubled-coordinate order.
pub fn units() -> Vec<HurwitzInt> {
    let mut out = Vec::with_capacity(24);
    for axis in 0..4 {
        for sign in [-2i64, 2] {
            let mut d = [0i64; 4];
            d[axis] = sign;
            out.push(HurwitzInt { d });
        }
    }
    for mask in 0u32..16 {
        let d = std::array::from_fn(|i| if mask & (1 << i) != 0 { -1 } else { 1 });
        out.push(HurwitzInt { d });
    }
    out.sort_unstable();
    out
}
