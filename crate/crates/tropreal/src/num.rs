//! Exact rationals, lattice points and planar points.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational number used for every coordinate and coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Q::from_integer),
    }
}

pub fn format_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn q_to_f64(v: &Q) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(0.0)
}

/// A point of Z², used both for lattice points of Newton polygons and for
/// primitive integer directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lattice {
    pub i: i64,
    pub j: i64,
}

impl Lattice {
    pub const fn new(i: i64, j: i64) -> Self {
        Lattice { i, j }
    }

    pub fn sub(self, o: Lattice) -> Lattice {
        Lattice::new(self.i - o.i, self.j - o.j)
    }

    pub fn add(self, o: Lattice) -> Lattice {
        Lattice::new(self.i + o.i, self.j + o.j)
    }

    pub fn neg(self) -> Lattice {
        Lattice::new(-self.i, -self.j)
    }

    /// Counter-clockwise rotation by 90 degrees.
    pub fn rot90(self) -> Lattice {
        Lattice::new(-self.j, self.i)
    }

    pub fn gcd(self) -> i64 {
        num_integer::gcd(self.i, self.j)
    }

    pub fn primitive(self) -> Lattice {
        let g = self.gcd();
        if g == 0 {
            self
        } else {
            Lattice::new(self.i / g, self.j / g)
        }
    }

    pub fn is_primitive(self) -> bool {
        self.gcd() == 1
    }

    pub fn to_point(self) -> Point {
        Point::new(q(self.i), q(self.j))
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl FromStr for Lattice {
    type Err = String;

    /// Accepts `"(i,j)"`, `"i,j"` and whitespace variants.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t.split_once(',').ok_or_else(|| format!("expected \"(i,j)\", got {s:?}"))?;
        let i = a.trim().parse::<i64>().map_err(|e| format!("{s:?}: {e}"))?;
        let j = b.trim().parse::<i64>().map_err(|e| format!("{s:?}: {e}"))?;
        Ok(Lattice::new(i, j))
    }
}

pub fn det(a: Lattice, b: Lattice) -> i64 {
    a.i * b.j - a.j * b.i
}

pub fn dot(a: Lattice, b: Lattice) -> i64 {
    a.i * b.i + a.j * b.j
}

/// Twice the signed area of the triangle `abc`.
pub fn orient(a: Lattice, b: Lattice, c: Lattice) -> i64 {
    det(b.sub(a), c.sub(a))
}

/// A point of R² with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(Q::zero(), Q::zero())
    }

    pub fn add_dir(&self, d: Lattice, t: &Q) -> Point {
        Point::new(&self.x + t * q(d.i), &self.y + t * q(d.j))
    }

    pub fn translate(&self, dx: &Q, dy: &Q) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }

    pub fn sub(&self, o: &Point) -> (Q, Q) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        let two = q(2);
        Point::new((&self.x + &o.x) / &two, (&self.y + &o.y) / &two)
    }

    /// Sign of det(d, self - base): which side of the line through `base`
    /// with direction `d` this point lies on.
    pub fn side_of(&self, base: &Point, d: Lattice) -> i32 {
        let (dx, dy) = self.sub(base);
        sign(&(q(d.i) * dy - q(d.j) * dx))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_q(&self.x), format_q(&self.y))
    }
}

pub fn sign(v: &Q) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

pub fn centroid(points: &[Point]) -> Point {
    let n = q(points.len() as i64);
    let mut sx = Q::zero();
    let mut sy = Q::zero();
    for p in points {
        sx += &p.x;
        sy += &p.y;
    }
    Point::new(sx / &n, sy / n)
}
