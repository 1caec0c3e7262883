//! Exact rational primitives for the three geometric settings: directions on
//! the sphere of radius 1/√2, point–line scenes in the plane, and rational
//! points in 3-space.
//!
//! A point of the sphere is stored as a primitive integer triple up to
//! *positive* scaling, so every predicate (unit distance, antipodality, pole
//! membership) is exact integer arithmetic. On this sphere two points are at
//! unit distance exactly when their position vectors are orthogonal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

use crate::error::GeomError;

/// A sphere point as a primitive integer triple, up to positive scaling.
///
/// `Direction(d)` and `Direction(-d)` are distinct (antipodal) points; the
/// sign is never canonicalized.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl Direction {
    /// Normalizes an integer triple to primitive form (divide by the gcd of
    /// absolute values, keep orientation).
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self, GeomError> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(GeomError::ZeroVector);
        }
        let g = a.gcd(&b).gcd(&c);
        Ok(Direction {
            a: &a / &g,
            b: &b / &g,
            c: &c / &g,
        })
    }

    /// Normalizes a rational triple: clears denominators with a positive
    /// factor, then reduces to a primitive integer triple.
    pub fn from_rationals(
        x: &BigRational,
        y: &BigRational,
        z: &BigRational,
    ) -> Result<Self, GeomError> {
        let lcm = x.denom().lcm(y.denom()).lcm(z.denom());
        Direction::new(
            (x * &lcm).to_integer(),
            (y * &lcm).to_integer(),
            (z * &lcm).to_integer(),
        )
    }

    pub fn coords(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn dot(&self, other: &Direction) -> BigInt {
        &self.a * &other.a + &self.b * &other.b + &self.c * &other.c
    }

    /// Cross product, renormalized. Fails only for parallel inputs.
    pub fn cross(&self, other: &Direction) -> Result<Direction, GeomError> {
        Direction::new(
            &self.b * &other.c - &self.c * &other.b,
            &self.c * &other.a - &self.a * &other.c,
            &self.a * &other.b - &self.b * &other.a,
        )
    }

    pub fn negate(&self) -> Direction {
        Direction {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
        }
    }
}

/// Unit distance on the radius-1/√2 sphere: `p` lies on the great circle
/// with pole `q` exactly when the position vectors are orthogonal.
pub fn is_unit_distance_sphere(p: &Direction, q: &Direction) -> bool {
    p.dot(q).is_zero()
}

pub fn is_antipodal(p: &Direction, q: &Direction) -> bool {
    *q == p.negate()
}

/// The set of points at unit distance from both `p` and `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommonNeighbors {
    /// Non-antipodal distinct inputs: exactly the two points `±(p × q)`.
    TwoPoints(Direction, Direction),
    /// Antipodal inputs: the whole great circle with this pole.
    Circle { pole: Direction },
    /// Equal inputs: the whole polar circle of the point itself.
    Degenerate { pole: Direction },
}

pub fn common_unit_neighbors(p: &Direction, q: &Direction) -> CommonNeighbors {
    if p == q {
        return CommonNeighbors::Degenerate { pole: p.clone() };
    }
    if is_antipodal(p, q) {
        return CommonNeighbors::Circle { pole: p.clone() };
    }
    // Distinct, non-antipodal: the cross product cannot vanish.
    let d = p.cross(q).expect("non-parallel directions");
    let neg = d.negate();
    CommonNeighbors::TwoPoints(d, neg)
}

/// A planar point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl PlanarPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        PlanarPoint { x, y }
    }

    pub fn from_ints(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        PlanarPoint {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
        }
    }
}

/// The line `ax + by + c = 0`, stored as a primitive integer triple with
/// `(a, b) ≠ (0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarLine {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl PlanarLine {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self, GeomError> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if a.is_zero() && b.is_zero() {
            return Err(GeomError::DegenerateLine);
        }
        let g = a.gcd(&b).gcd(&c);
        Ok(PlanarLine {
            a: &a / &g,
            b: &b / &g,
            c: &c / &g,
        })
    }

    pub fn from_rationals(
        a: &BigRational,
        b: &BigRational,
        c: &BigRational,
    ) -> Result<Self, GeomError> {
        let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
        PlanarLine::new(
            (a * &lcm).to_integer(),
            (b * &lcm).to_integer(),
            (c * &lcm).to_integer(),
        )
    }

    pub fn coeffs(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn contains(&self, p: &PlanarPoint) -> bool {
        let v = BigRational::from_integer(self.a.clone()) * &p.x
            + BigRational::from_integer(self.b.clone()) * &p.y
            + BigRational::from_integer(self.c.clone());
        v.is_zero()
    }
}

/// Central projection of the plane `z = 1`: a planar point `(x, y)` maps to
/// the direction through `(x, y, 1)`.
pub fn lift_point(p: &PlanarPoint) -> Direction {
    Direction::from_rationals(&p.x, &p.y, &BigRational::from_integer(BigInt::from(1)))
        .expect("(x, y, 1) is never zero")
}

/// A line lifts to a pole of the great circle it projects to: the direction
/// `(a, b, c)`. The opposite pole is the negation; incidence `ax + by + c = 0`
/// holds exactly when the lifted point and lifted line are orthogonal.
pub fn lift_line(line: &PlanarLine) -> Direction {
    Direction::new(line.a.clone(), line.b.clone(), line.c.clone())
        .expect("(a, b) ≠ (0, 0) by invariant")
}

/// A point in 3-space with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct R3Point {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl R3Point {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        R3Point { x, y, z }
    }

    pub fn from_ints(
        x: impl Into<BigInt>,
        y: impl Into<BigInt>,
        z: impl Into<BigInt>,
    ) -> Self {
        R3Point {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
            z: BigRational::from_integer(z.into()),
        }
    }
}

pub fn squared_distance_r3(p: &R3Point, q: &R3Point) -> BigRational {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    let dz = &p.z - &q.z;
    &dx * &dx + &dy * &dy + &dz * &dz
}

#[cfg(test)]
pub(crate) fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
