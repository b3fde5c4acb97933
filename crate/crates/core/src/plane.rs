//! Points, lines and incidence of PG(2,q^3).
//!
//! Objects are kept in canonical form (leftmost nonzero coordinate equal to
//! one), so equality is coordinate equality. Both points and lines are
//! numbered densely:
//!
//! ```text
//! (1, y, z) -> y*Q + z        (Q = q^3, y/z by Elem::raw)
//! (0, 1, z) -> Q^2 + z
//! (0, 0, 1) -> Q^2 + Q
//! ```

use std::fmt;

use crate::error::{FieldError, GeometryError};
use crate::field::{Elem, Field};

const O: Elem = Elem::ZERO;
const I: Elem = Elem::ONE;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Point([Elem; 3]);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Line([Elem; 3]);

impl Point {
    pub fn coords(&self) -> [Elem; 3] {
        self.0
    }
}

impl Line {
    pub fn coords(&self) -> [Elem; 3] {
        self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0], self.0[1], self.0[2])
    }
}

impl serde::Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Line {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The fixed triangle: `T = (0,0,1)`, `T^phi = (1,0,0)`, `T^phi^2 = (0,1,0)`
/// and `m_T = [0,0,1]`, the side opposite `T`.
pub mod frame {
    use super::{Line, Point, I, O};

    pub const T: Point = Point([O, O, I]);
    pub const T_PHI: Point = Point([I, O, O]);
    pub const T_PHI2: Point = Point([O, I, O]);
    pub const M_T: Line = Line([O, O, I]);
    /// `m_T^phi = T^phi^2 T`.
    pub const M_T_PHI: Line = Line([I, O, O]);
    /// `m_T^phi^2 = T T^phi`.
    pub const M_T_PHI2: Line = Line([O, I, O]);
}

/// PG(2,q^3) over a fixed field.
#[derive(Clone, Debug)]
pub struct Plane {
    field: Field,
    q3: usize,
}

impl Plane {
    pub fn new(field: Field) -> Self {
        let q3 = field.size() as usize;
        Self { field, q3 }
    }

    pub fn from_q(q: u64) -> Result<Self, FieldError> {
        Field::from_q(q).map(Self::new)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// `q^6 + q^3 + 1`, the number of points (and of lines).
    pub fn size(&self) -> usize {
        self.q3 * self.q3 + self.q3 + 1
    }

    /// `q^3 + 1`, points per line.
    pub fn line_size(&self) -> usize {
        self.q3 + 1
    }

    /// Scales `t` so its leftmost nonzero coordinate is one.
    pub fn canonical(&self, t: [Elem; 3]) -> Result<[Elem; 3], GeometryError> {
        let lead = t
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or(GeometryError::ZeroTriple)?;
        if lead == I {
            return Ok(t);
        }
        Ok(t.map(|c| self.field.div(c, lead)))
    }

    pub fn point(&self, t: [Elem; 3]) -> Result<Point, GeometryError> {
        self.canonical(t).map(Point)
    }

    pub fn line(&self, t: [Elem; 3]) -> Result<Line, GeometryError> {
        self.canonical(t).map(Line)
    }

    fn index_of(&self, c: [Elem; 3]) -> usize {
        let q3 = self.q3;
        if c[0] == I {
            c[1].raw() as usize * q3 + c[2].raw() as usize
        } else if c[1] == I {
            q3 * q3 + c[2].raw() as usize
        } else {
            q3 * q3 + q3
        }
    }

    fn triple_at(&self, idx: usize) -> [Elem; 3] {
        let q3 = self.q3;
        let f = &self.field;
        assert!(idx < self.size(), "index {idx} out of range");
        if idx < q3 * q3 {
            [
                I,
                f.from_raw((idx / q3) as u32),
                f.from_raw((idx % q3) as u32),
            ]
        } else if idx < q3 * q3 + q3 {
            [O, I, f.from_raw((idx - q3 * q3) as u32)]
        } else {
            [O, O, I]
        }
    }

    #[inline]
    pub fn point_index(&self, p: &Point) -> usize {
        self.index_of(p.0)
    }

    pub fn point_at(&self, idx: usize) -> Point {
        Point(self.triple_at(idx))
    }

    #[inline]
    pub fn line_index(&self, l: &Line) -> usize {
        self.index_of(l.0)
    }

    pub fn line_at(&self, idx: usize) -> Line {
        Line(self.triple_at(idx))
    }

    /// All points in index order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.size()).map(|i| self.point_at(i))
    }

    /// All lines in index order.
    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        (0..self.size()).map(|i| self.line_at(i))
    }

    #[inline]
    pub fn dot(&self, a: [Elem; 3], b: [Elem; 3]) -> Elem {
        let f = &self.field;
        f.add(
            f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])),
            f.mul(a[2], b[2]),
        )
    }

    #[inline]
    pub fn cross(&self, a: [Elem; 3], b: [Elem; 3]) -> [Elem; 3] {
        let f = &self.field;
        let m = |i: usize, j: usize| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
        [m(1, 2), m(2, 0), m(0, 1)]
    }

    #[inline]
    pub fn incident(&self, p: &Point, l: &Line) -> bool {
        self.dot(p.0, l.0).is_zero()
    }

    pub fn join(&self, p: &Point, q: &Point) -> Result<Line, GeometryError> {
        if p == q {
            return Err(GeometryError::IdenticalArguments);
        }
        self.line(self.cross(p.0, q.0))
    }

    pub fn meet(&self, l: &Line, m: &Line) -> Result<Point, GeometryError> {
        if l == m {
            return Err(GeometryError::IdenticalArguments);
        }
        self.point(self.cross(l.0, m.0))
    }

    /// The `q^3 + 1` canonical triples orthogonal to `t`.
    fn orthogonal(&self, t: [Elem; 3]) -> Vec<[Elem; 3]> {
        let f = &self.field;
        let mut basis: Vec<[Elem; 3]> = Vec::with_capacity(2);
        for e in [[I, O, O], [O, I, O], [O, O, I]] {
            let Ok(c) = self.canonical(self.cross(t, e)) else {
                continue;
            };
            if !basis.contains(&c) {
                basis.push(c);
            }
            if basis.len() == 2 {
                break;
            }
        }
        let (a, b) = (basis[0], basis[1]);
        let mut out = Vec::with_capacity(self.q3 + 1);
        out.push(a);
        for lambda in f.elements() {
            let v = [0, 1, 2].map(|i| f.add(b[i], f.mul(lambda, a[i])));
            out.push(self.canonical(v).expect("a and b are independent"));
        }
        out
    }

    pub fn points_on(&self, l: &Line) -> Vec<Point> {
        self.orthogonal(l.0).into_iter().map(Point).collect()
    }

    pub fn lines_through(&self, p: &Point) -> Vec<Line> {
        self.orthogonal(p.0).into_iter().map(Line).collect()
    }

    fn parse_triple(&self, s: &str) -> Result<[Elem; 3], GeometryError> {
        let err = || GeometryError::Parse(s.to_string());
        let parts: Vec<_> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(err());
        }
        let mut out = [O; 3];
        for (slot, part) in out.iter_mut().zip(&parts) {
            *slot = self.field.parse_elem(part).ok_or_else(err)?;
        }
        Ok(out)
    }

    /// Parses `x:y:z`.
    pub fn parse_point(&self, s: &str) -> Result<Point, GeometryError> {
        self.point(self.parse_triple(s.trim())?)
    }

    /// Parses `[d:e:f]`.
    pub fn parse_line(&self, s: &str) -> Result<Line, GeometryError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| GeometryError::Parse(s.to_string()))?;
        self.line(self.parse_triple(inner)?)
    }
}
