//! The order-3 collineation `phi`, point/line types, the group
//! `S_T = {psi_t}` and the seven-category partition of PG(2,q^3) into
//! `S_T`-orbits.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::field::Elem;
use crate::linalg::{det3, rank3};
use crate::plane::{frame, Line, Plane, Point};

/// Type I, II or III: the rank of `A_P` (resp. `A_l`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum ObjType {
    I,
    II,
    III,
}

impl fmt::Display for ObjType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjType::I => "I",
            ObjType::II => "II",
            ObjType::III => "III",
        })
    }
}

impl ObjType {
    fn from_rank(rank: usize) -> Self {
        match rank {
            1 => ObjType::I,
            2 => ObjType::II,
            3 => ObjType::III,
            r => unreachable!("A_P of a nonzero vector has rank {r}"),
        }
    }
}

/// `(x,y,z) -> (z^q, x^q, y^q)`.
pub fn phi_point(pg: &Plane, p: &Point) -> Point {
    let f = pg.field();
    let [x, y, z] = p.coords();
    pg.point([f.frob(z, 1), f.frob(x, 1), f.frob(y, 1)])
        .expect("phi is a bijection")
}

/// `[d,e,f] -> [f^q, d^q, e^q]`.
pub fn phi_line(pg: &Plane, l: &Line) -> Line {
    let f = pg.field();
    let [d, e, g] = l.coords();
    pg.line([f.frob(g, 1), f.frob(d, 1), f.frob(e, 1)])
        .expect("phi is a bijection")
}

/// Rows `P`, `P^phi`, `P^phi^2` as unnormalised vectors.
pub fn point_matrix(pg: &Plane, p: &Point) -> [[Elem; 3]; 3] {
    let f = pg.field();
    let [x, y, z] = p.coords();
    let fr = |a: Elem, i: u32| f.frob(a, i);
    [
        [x, y, z],
        [fr(z, 1), fr(x, 1), fr(y, 1)],
        [fr(y, 2), fr(z, 2), fr(x, 2)],
    ]
}

/// Columns `l`, `l^phi`, `l^phi^2`.
pub fn line_matrix(pg: &Plane, l: &Line) -> [[Elem; 3]; 3] {
    let f = pg.field();
    let [d, e, g] = l.coords();
    let fr = |a: Elem, i: u32| f.frob(a, i);
    [
        [d, fr(g, 1), fr(e, 2)],
        [e, fr(d, 1), fr(g, 2)],
        [g, fr(e, 1), fr(d, 2)],
    ]
}

pub fn point_type(pg: &Plane, p: &Point) -> ObjType {
    ObjType::from_rank(rank3(pg.field(), point_matrix(pg, p)))
}

pub fn line_type(pg: &Plane, l: &Line) -> ObjType {
    ObjType::from_rank(rank3(pg.field(), line_matrix(pg, l)))
}

/// Types of every point, by point index.
pub fn point_types(pg: &Plane) -> Vec<ObjType> {
    (0..pg.size())
        .into_par_iter()
        .map(|i| point_type(pg, &pg.point_at(i)))
        .collect()
}

/// Types of every line, by line index.
pub fn line_types(pg: &Plane) -> Vec<ObjType> {
    (0..pg.size())
        .into_par_iter()
        .map(|i| line_type(pg, &pg.line_at(i)))
        .collect()
}

/// Point and line types for the whole plane, by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTables {
    pub points: Vec<ObjType>,
    pub lines: Vec<ObjType>,
}

impl TypeTables {
    pub fn compute(pg: &Plane) -> Self {
        TypeTables {
            points: point_types(pg),
            lines: line_types(pg),
        }
    }

    /// Counts of Types I, II, III.
    pub fn point_counts(&self) -> [u64; 3] {
        count_types(&self.points)
    }

    pub fn line_counts(&self) -> [u64; 3] {
        count_types(&self.lines)
    }
}

fn count_types(v: &[ObjType]) -> [u64; 3] {
    let mut out = [0; 3];
    for &t in v {
        out[t as usize] += 1;
    }
    out
}

/// `(x,y,z) -> (t x, t^q y, t^{q^2} z)`.
pub fn psi_point(pg: &Plane, t: Elem, p: &Point) -> Result<Point, GeometryError> {
    if t.is_zero() {
        return Err(GeometryError::ZeroScalar);
    }
    let f = pg.field();
    let [x, y, z] = p.coords();
    pg.point([f.mul(t, x), f.mul(f.frob(t, 1), y), f.mul(f.frob(t, 2), z)])
}

/// Action of `psi_t` on line coordinates (the inverse transpose).
pub fn psi_line(pg: &Plane, t: Elem, l: &Line) -> Result<Line, GeometryError> {
    if t.is_zero() {
        return Err(GeometryError::ZeroScalar);
    }
    let f = pg.field();
    let [d, e, g] = l.coords();
    pg.line([f.div(d, t), f.div(e, f.frob(t, 1)), f.div(g, f.frob(t, 2))])
}

/// Coset representatives `t^i`, `i = 0..=q^2+q`, one per element of `S_T`.
pub fn st_elements(pg: &Plane) -> impl Iterator<Item = Elem> + '_ {
    let f = pg.field();
    (0..f.norm_exponent() as u64).map(move |i| f.from_log(i))
}

/// Sorted point indices of `P^{S_T}`.
pub fn orbit_under_st(pg: &Plane, p: &Point) -> Vec<usize> {
    let mut out: Vec<usize> = st_elements(pg)
        .map(|t| pg.point_index(&psi_point(pg, t, p).expect("t != 0")))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Sorted line indices of `l^{S_T}`.
pub fn line_orbit_under_st(pg: &Plane, l: &Line) -> Vec<usize> {
    let mut out: Vec<usize> = st_elements(pg)
        .map(|t| pg.line_index(&psi_line(pg, t, l).expect("t != 0")))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// One of the three sides of the triangle `T T^phi T^phi^2`, named by the
/// vertex it is opposite to: side `T` is `m_T`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Side {
    T,
    TPhi,
    TPhi2,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::T, Side::TPhi, Side::TPhi2];

    pub fn line(self) -> Line {
        match self {
            Side::T => frame::M_T,
            Side::TPhi => frame::M_T_PHI,
            Side::TPhi2 => frame::M_T_PHI2,
        }
    }

    pub fn vertex(self) -> Point {
        match self {
            Side::T => frame::T,
            Side::TPhi => frame::T_PHI,
            Side::TPhi2 => frame::T_PHI2,
        }
    }

    /// Number of `phi` applications taking side `T` to this side.
    pub fn phi_power(self) -> u32 {
        self as u32
    }

    /// The side containing a point with exactly one zero coordinate.
    pub fn of_point(p: &Point) -> Option<Side> {
        match p.coords().map(|c| c.is_zero()) {
            [false, false, true] => Some(Side::T),
            [true, false, false] => Some(Side::TPhi),
            [false, true, false] => Some(Side::TPhi2),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::T => "T",
            Side::TPhi => "T^phi",
            Side::TPhi2 => "T^phi^2",
        })
    }
}

/// The seven kinds of `S_T`-orbit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    FixedPoint,
    TypeIiSls,
    TypeIiiSls,
    P2q,
    IiPointsIiiLines,
    IiiPointsIiLines,
    IiiPointsIiiLines,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::FixedPoint,
        Category::TypeIiSls,
        Category::TypeIiiSls,
        Category::P2q,
        Category::IiPointsIiiLines,
        Category::IiiPointsIiLines,
        Category::IiiPointsIiiLines,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::FixedPoint => "fixed_point",
            Category::TypeIiSls => "type_ii_sls",
            Category::TypeIiiSls => "type_iii_sls",
            Category::P2q => "p2q",
            Category::IiPointsIiiLines => "ii_points_iii_lines",
            Category::IiiPointsIiLines => "iii_points_ii_lines",
            Category::IiiPointsIiiLines => "iii_points_iii_lines",
        }
    }

    pub fn is_plane(self) -> bool {
        matches!(
            self,
            Category::P2q
                | Category::IiPointsIiiLines
                | Category::IiiPointsIiLines
                | Category::IiiPointsIiiLines
        )
    }

    /// Closed-form number of orbits of this kind.
    pub fn expected_count(self, q: u64) -> u64 {
        let q = q as i64;
        let v = match self {
            Category::FixedPoint | Category::TypeIiSls => 3,
            Category::TypeIiiSls => 3 * (q - 2),
            Category::P2q => 1,
            Category::IiPointsIiiLines | Category::IiiPointsIiLines => q * q * q - q - 3,
            Category::IiiPointsIiiLines => q.pow(4) - 3 * q.pow(3) + q + 6,
        };
        v as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    /// Smallest member index.
    pub representative: usize,
    pub members: Vec<usize>,
    pub category: Category,
    pub side: Option<Side>,
    pub point_type: ObjType,
    /// Type of the secant lines, for planes.
    pub line_type: Option<ObjType>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Indexed like [`Category::ALL`].
    pub counts: [u64; 7],
    pub orbits: u64,
    /// Sum of orbit sizes.
    pub points: u64,
}

impl Census {
    pub fn expected(q: u64) -> [u64; 7] {
        Category::ALL.map(|c| c.expected_count(q))
    }

    pub fn count(&self, c: Category) -> u64 {
        self.counts[c as usize]
    }
}

pub struct Partition {
    pub classes: Vec<OrbitClass>,
    /// Class index of every point.
    pub class_of: Vec<u32>,
    pub census: Census,
}

impl Partition {
    pub fn class_of_point(&self, idx: usize) -> &OrbitClass {
        &self.classes[self.class_of[idx] as usize]
    }
}

fn categorise(
    pg: &Plane,
    rep: &Point,
    size: usize,
    point_type: ObjType,
) -> Result<(Category, Option<Side>, Option<ObjType>), GeometryError> {
    if size == 1 {
        return Ok((Category::FixedPoint, None, None));
    }
    if let Some(side) = Side::of_point(rep) {
        let cat = match point_type {
            ObjType::II => Category::TypeIiSls,
            ObjType::III => Category::TypeIiiSls,
            ObjType::I => {
                return Err(GeometryError::InconsistentClass {
                    rep: rep.to_string(),
                })
            }
        };
        return Ok((cat, Some(side), None));
    }
    let members = orbit_under_st(pg, rep);
    let secant = pg
        .join(&pg.point_at(members[0]), &pg.point_at(members[1]))
        .expect("distinct members");
    let lt = line_type(pg, &secant);
    let cat = match (point_type, lt) {
        (ObjType::I, ObjType::I) => Category::P2q,
        (ObjType::II, ObjType::III) => Category::IiPointsIiiLines,
        (ObjType::III, ObjType::II) => Category::IiiPointsIiLines,
        (ObjType::III, ObjType::III) => Category::IiiPointsIiiLines,
        _ => {
            return Err(GeometryError::InconsistentClass {
                rep: rep.to_string(),
            })
        }
    };
    Ok((cat, None, Some(lt)))
}

/// Partitions every point into `S_T`-orbits (representatives are minimal
/// indices, classes in representative order) and counts the categories.
pub fn partition_and_census(pg: &Plane) -> Result<Partition, GeometryError> {
    let types = point_types(pg);
    let n = pg.size();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for idx in 0..n {
        if class_of[idx] != u32::MAX {
            continue;
        }
        let rep = pg.point_at(idx);
        let members = orbit_under_st(pg, &rep);
        let pt = types[idx];
        if members.iter().any(|&m| types[m] != pt) {
            return Err(GeometryError::InconsistentClass {
                rep: rep.to_string(),
            });
        }
        let (category, side, line_type) = categorise(pg, &rep, members.len(), pt)?;
        let id = classes.len() as u32;
        for &m in &members {
            class_of[m] = id;
        }
        classes.push(OrbitClass {
            representative: idx,
            members,
            category,
            side,
            point_type: pt,
            line_type,
        });
    }
    let mut counts = [0u64; 7];
    for c in &classes {
        counts[c.category as usize] += 1;
    }
    let census = Census {
        counts,
        orbits: classes.len() as u64,
        points: classes.iter().map(|c| c.members.len() as u64).sum(),
    };
    Ok(Partition {
        classes,
        class_of,
        census,
    })
}

/// Checks `N(X) - N(x) det A_P = N(Y) - N(y) det A_P = N(Z) - N(z) det A_P
/// = -det A_l` for `l = [yz, zx, xy]`, where `X = x^{1+q} - y z^q` and `Y`,
/// `Z` are its cyclic shifts.
pub fn norm_identity_check(pg: &Plane, p: &Point) -> Result<bool, GeometryError> {
    let f = pg.field();
    let [x, y, z] = p.coords();
    if x.is_zero() || y.is_zero() || z.is_zero() {
        return Err(GeometryError::ZeroCoordinate(p.to_string()));
    }
    let shifted = |a: Elem, b: Elem, c: Elem| f.sub(f.mul(a, f.frob(a, 1)), f.mul(b, f.frob(c, 1)));
    let big_x = shifted(x, y, z);
    let big_y = shifted(y, z, x);
    let big_z = shifted(z, x, y);
    let det_p = det3(f, point_matrix(pg, p));
    let l = [f.mul(y, z), f.mul(z, x), f.mul(x, y)];
    let fr = |a: Elem, i: u32| f.frob(a, i);
    let a_l = [
        [l[0], fr(l[2], 1), fr(l[1], 2)],
        [l[1], fr(l[0], 1), fr(l[2], 2)],
        [l[2], fr(l[1], 1), fr(l[0], 2)],
    ];
    let rhs = f.neg(det3(f, a_l));
    let side = |big: Elem, small: Elem| f.sub(f.norm(big), f.mul(f.norm(small), det_p));
    Ok([side(big_x, x), side(big_y, y), side(big_z, z)]
        .iter()
        .all(|&v| v == rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::frame::*;

    fn plane(q: u64) -> Plane {
        Plane::from_q(q).unwrap()
    }

    #[test]
    fn phi_on_frame() {
        let pg = plane(3);
        assert_eq!(phi_point(&pg, &T), T_PHI);
        assert_eq!(phi_point(&pg, &T_PHI), T_PHI2);
        let one = pg.point([Elem::ONE; 3]).unwrap();
        assert_eq!(phi_point(&pg, &one), one);
        assert_eq!(phi_line(&pg, &M_T), M_T_PHI);
        assert_eq!(phi_line(&pg, &M_T_PHI), M_T_PHI2);
    }

    #[test]
    fn phi_has_order_three_and_preserves_incidence() {
        let pg = plane(3);
        for p in pg.points() {
            let p3 = phi_point(&pg, &phi_point(&pg, &phi_point(&pg, &p)));
            assert_eq!(p3, p);
        }
        for (i, l) in pg.lines().enumerate().step_by(3) {
            let lphi = phi_line(&pg, &l);
            assert_eq!(phi_line(&pg, &phi_line(&pg, &lphi)), l);
            for p in pg.points().skip(i % 11).step_by(11) {
                assert_eq!(pg.incident(&p, &l), pg.incident(&phi_point(&pg, &p), &lphi));
            }
        }
    }

    #[test]
    fn type_examples() {
        let pg = plane(3);
        let f = pg.field();
        assert_eq!(point_type(&pg, &T), ObjType::III);
        assert_eq!(
            point_type(&pg, &pg.point([Elem::ONE; 3]).unwrap()),
            ObjType::I
        );
        for s in f.nonzero() {
            let p = pg.point([s, Elem::ONE, Elem::ZERO]).unwrap();
            let expect = if f.norm(s) == f.neg_one() {
                ObjType::II
            } else {
                ObjType::III
            };
            assert_eq!(point_type(&pg, &p), expect, "{p}");
        }
    }

    #[test]
    fn type_i_is_exactly_the_fixed_points() {
        let pg = plane(4);
        for p in pg.points() {
            assert_eq!(point_type(&pg, &p) == ObjType::I, phi_point(&pg, &p) == p);
        }
    }

    #[test]
    fn psi_basics() {
        let pg = plane(3);
        let f = pg.field();
        let one = pg.point([Elem::ONE; 3]).unwrap();
        assert_eq!(psi_point(&pg, Elem::ONE, &T).unwrap(), T);
        for lambda in f.base_subfield().into_iter().skip(1) {
            assert_eq!(psi_point(&pg, lambda, &one).unwrap(), one);
        }
        assert_eq!(
            psi_point(&pg, Elem::ZERO, &T),
            Err(GeometryError::ZeroScalar)
        );
        // psi preserves incidence on lines too.
        let t = f.from_log(5);
        for (a, b) in [(3usize, 100usize), (40, 700), (500, 17)] {
            let (p, l) = (pg.point_at(a), pg.line_at(b));
            assert_eq!(
                pg.incident(&p, &l),
                pg.incident(
                    &psi_point(&pg, t, &p).unwrap(),
                    &psi_line(&pg, t, &l).unwrap()
                )
            );
        }
    }

    #[test]
    fn st_has_q2_q_1_distinct_elements() {
        let pg = plane(3);
        let f = pg.field();
        // Compare psi_t as permutations of the points, over all t.
        let mut perms: Vec<Vec<usize>> = f
            .nonzero()
            .map(|t| {
                pg.points()
                    .map(|p| pg.point_index(&psi_point(&pg, t, &p).unwrap()))
                    .collect()
            })
            .collect();
        perms.sort();
        perms.dedup();
        assert_eq!(perms.len(), 13);
    }

    #[test]
    fn orbit_examples() {
        let pg = plane(3);
        let f = pg.field();
        assert_eq!(orbit_under_st(&pg, &T), vec![pg.point_index(&T)]);
        let one = pg.point([Elem::ONE; 3]).unwrap();
        let mut p2q: Vec<usize> = f
            .nonzero()
            .map(|x| pg.point_index(&pg.point([x, f.frob(x, 1), f.frob(x, 2)]).unwrap()))
            .collect();
        p2q.sort_unstable();
        p2q.dedup();
        assert_eq!(orbit_under_st(&pg, &one), p2q);
        let o = orbit_under_st(&pg, &pg.point([f.gen(), Elem::ONE, Elem::ZERO]).unwrap());
        assert_eq!(o.len(), 13);
        assert!(o.iter().all(|&i| pg.incident(&pg.point_at(i), &M_T)));
    }

    #[test]
    fn census_at_q3() {
        let pg = plane(3);
        let part = partition_and_census(&pg).unwrap();
        assert_eq!(part.census.counts, [3, 3, 3, 1, 21, 21, 9]);
        assert_eq!(part.census.orbits, 61);
        assert_eq!(part.census.points, 757);
        assert_eq!(Census::expected(3), [3, 3, 3, 1, 21, 21, 9]);
        assert_eq!(Census::expected(4), [3, 3, 6, 1, 57, 57, 74]);
    }

    #[test]
    fn norm_identity_examples() {
        let pg = plane(3);
        let one = pg.point([Elem::ONE; 3]).unwrap();
        assert_eq!(norm_identity_check(&pg, &one), Ok(true));
        assert!(matches!(
            norm_identity_check(&pg, &T),
            Err(GeometryError::ZeroCoordinate(_))
        ));
    }
}
