//! T-slses `S_theta`, their pencils, T-planes `Pi_theta` and the
//! F_q-plane through a point with all coordinates nonzero.

use std::fmt;

use serde::Serialize;

use crate::collineation::{phi_line, phi_point, st_elements, ObjType, Side};
use crate::error::GeometryError;
use crate::field::{Elem, Field};
use crate::plane::{frame, Line, Plane, Point};

/// An sls on one side of the triangle, named by `Norm(theta)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct SlsId {
    pub side: Side,
    pub norm_class: Elem,
}

impl SlsId {
    pub fn new(f: &Field, side: Side, theta: Elem) -> Result<Self, GeometryError> {
        if theta.is_zero() {
            return Err(GeometryError::ZeroTheta);
        }
        Ok(SlsId {
            side,
            norm_class: f.norm(theta),
        })
    }

    /// The representative `theta = t^j` with `Norm(theta) = norm_class`.
    pub fn theta(&self, f: &Field) -> Elem {
        let log = self.norm_class.log().expect("norm class is nonzero");
        f.from_log((log / f.norm_exponent()) as u64)
    }
}

impl fmt::Display for SlsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S[{}; N={}]", self.side, self.norm_class)
    }
}

/// `t^i` for `i = 0..q-1`: one theta per norm class, in generator order.
pub fn norm_class_reps(f: &Field) -> Vec<Elem> {
    (0..f.q() as u64 - 1).map(|i| f.from_log(i)).collect()
}

pub fn sls_ids(f: &Field, side: Side) -> Vec<SlsId> {
    norm_class_reps(f)
        .into_iter()
        .map(|t| SlsId::new(f, side, t).expect("nonzero"))
        .collect()
}

fn phi_power_point(pg: &Plane, p: Point, n: u32) -> Point {
    (0..n).fold(p, |p, _| phi_point(pg, &p))
}

fn phi_power_line(pg: &Plane, l: Line, n: u32) -> Line {
    (0..n).fold(l, |l, _| phi_line(pg, &l))
}

fn sorted_indices(pg: &Plane, pts: impl Iterator<Item = Point>) -> Vec<usize> {
    let mut v: Vec<usize> = pts.map(|p| pg.point_index(&p)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn sorted_line_indices(pg: &Plane, lines: impl Iterator<Item = Line>) -> Vec<usize> {
    let mut v: Vec<usize> = lines.map(|l| pg.line_index(&l)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Sorted point indices of `S_theta = {(x theta, x^q, 0)}` moved to `side`
/// by `phi`.
pub fn sls_points(pg: &Plane, theta: Elem, side: Side) -> Result<Vec<usize>, GeometryError> {
    if theta.is_zero() {
        return Err(GeometryError::ZeroTheta);
    }
    let f = pg.field();
    let pts = st_elements(pg).map(|x| {
        let p = pg
            .point([f.mul(x, theta), f.frob(x, 1), Elem::ZERO])
            .expect("x != 0");
        phi_power_point(pg, p, side.phi_power())
    });
    Ok(sorted_indices(pg, pts))
}

pub fn sls_points_of(pg: &Plane, id: SlsId) -> Vec<usize> {
    sls_points(pg, id.theta(pg.field()), id.side).expect("representative is nonzero")
}

/// The sls containing a point with exactly one zero coordinate.
pub fn sls_id_of_point(pg: &Plane, p: &Point) -> Option<SlsId> {
    let side = Side::of_point(p)?;
    let back = phi_power_point(pg, *p, (3 - side.phi_power()) % 3);
    let f = pg.field();
    let [a, b, _] = back.coords();
    Some(SlsId {
        side,
        norm_class: f.norm(f.div(a, b)),
    })
}

/// `Some(id)` iff the index set is exactly one sls.
pub fn classify_sls_set(pg: &Plane, pts: &[usize]) -> Option<SlsId> {
    let q = pg.q() as usize;
    if pts.len() != q * q + q + 1 {
        return None;
    }
    let id = sls_id_of_point(pg, &pg.point_at(*pts.first()?))?;
    pts.iter()
        .all(|&i| sls_id_of_point(pg, &pg.point_at(i)) == Some(id))
        .then_some(id)
}

/// Lines joining the vertex opposite `side` to the points of the sls.
pub fn pencil_lines(pg: &Plane, id: SlsId) -> Vec<usize> {
    let v = id.side.vertex();
    sorted_line_indices(
        pg,
        sls_points_of(pg, id).into_iter().map(|i| {
            pg.join(&v, &pg.point_at(i))
                .expect("vertex is off its side")
        }),
    )
}

/// Closed form: the pencil `T S_theta` has Type II iff `Norm(theta) = 1`.
pub fn pencil_type(pg: &Plane, theta: Elem) -> Result<ObjType, GeometryError> {
    if theta.is_zero() {
        return Err(GeometryError::ZeroTheta);
    }
    Ok(if pg.field().norm(theta) == Elem::ONE {
        ObjType::II
    } else {
        ObjType::III
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneTag {
    /// `Pi_theta` (side `T`) or its image under `phi` / `phi^2`.
    TPlane {
        side: Side,
        norm_class: Elem,
    },
    Generic,
}

/// An F_q-subplane: sorted point and line indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubplaneSet {
    pub points: Vec<usize>,
    pub lines: Vec<usize>,
    pub tag: PlaneTag,
}

impl SubplaneSet {
    pub fn contains_point(&self, idx: usize) -> bool {
        self.points.binary_search(&idx).is_ok()
    }

    pub fn contains_line(&self, idx: usize) -> bool {
        self.lines.binary_search(&idx).is_ok()
    }
}

/// `Pi_theta`: points `(r theta^{q+1}, r^q, r^{q^2} theta)`, lines
/// `[s, s^q theta^{q+1}, s^{q^2} theta^q]`.
pub fn t_plane(pg: &Plane, theta: Elem) -> Result<SubplaneSet, GeometryError> {
    if theta.is_zero() {
        return Err(GeometryError::ZeroTheta);
    }
    let f = pg.field();
    let th_q1 = f.mul(theta, f.frob(theta, 1));
    let th_q = f.frob(theta, 1);
    let points = sorted_indices(
        pg,
        st_elements(pg).map(|r| {
            pg.point([f.mul(r, th_q1), f.frob(r, 1), f.mul(f.frob(r, 2), theta)])
                .expect("r != 0")
        }),
    );
    let lines = sorted_line_indices(
        pg,
        st_elements(pg).map(|s| {
            pg.line([s, f.mul(f.frob(s, 1), th_q1), f.mul(f.frob(s, 2), th_q)])
                .expect("s != 0")
        }),
    );
    Ok(SubplaneSet {
        points,
        lines,
        tag: PlaneTag::TPlane {
            side: Side::T,
            norm_class: f.norm(theta),
        },
    })
}

/// The plane `P^{S_T}` with lines `[yz s, xz s^q, xy s^{q^2}]`.
pub fn plane_from_rep(pg: &Plane, p: &Point) -> Result<SubplaneSet, GeometryError> {
    let f = pg.field();
    let [x, y, z] = p.coords();
    if x.is_zero() || y.is_zero() || z.is_zero() {
        return Err(GeometryError::ZeroCoordinate(p.to_string()));
    }
    let points = sorted_indices(
        pg,
        st_elements(pg).map(|t| {
            pg.point([f.mul(t, x), f.mul(f.frob(t, 1), y), f.mul(f.frob(t, 2), z)])
                .expect("t != 0")
        }),
    );
    let (yz, xz, xy) = (f.mul(y, z), f.mul(x, z), f.mul(x, y));
    let lines = sorted_line_indices(
        pg,
        st_elements(pg).map(|s| {
            pg.line([
                f.mul(yz, s),
                f.mul(xz, f.frob(s, 1)),
                f.mul(xy, f.frob(s, 2)),
            ])
            .expect("s != 0")
        }),
    );
    Ok(SubplaneSet {
        points,
        lines,
        tag: PlaneTag::Generic,
    })
}

/// Image of a subplane under `phi^n`; T-plane tags move to the next side.
pub fn phi_plane(pg: &Plane, b: &SubplaneSet, n: u32) -> SubplaneSet {
    let points = sorted_indices(
        pg,
        b.points
            .iter()
            .map(|&i| phi_power_point(pg, pg.point_at(i), n)),
    );
    let lines = sorted_line_indices(
        pg,
        b.lines
            .iter()
            .map(|&i| phi_power_line(pg, pg.line_at(i), n)),
    );
    let tag = match b.tag {
        PlaneTag::TPlane { side, norm_class } => PlaneTag::TPlane {
            side: Side::ALL[((side.phi_power() + n) % 3) as usize],
            norm_class,
        },
        PlaneTag::Generic => PlaneTag::Generic,
    };
    SubplaneSet { points, lines, tag }
}

/// The `phi`-images of `Pi_theta` on the three sides.
pub fn t_plane_on(pg: &Plane, theta: Elem, side: Side) -> Result<SubplaneSet, GeometryError> {
    Ok(phi_plane(pg, &t_plane(pg, theta)?, side.phi_power()))
}

/// Checks that `b` is a subplane of order `q`: both sets have `q^2+q+1`
/// elements, every member line carries `q+1` member points, every member
/// point is on `q+1` member lines, and any two member points join to a
/// member line.
pub fn is_subplane(pg: &Plane, b: &SubplaneSet) -> bool {
    let q = pg.q() as usize;
    let n = q * q + q + 1;
    if b.points.len() != n || b.lines.len() != n {
        return false;
    }
    let pts: Vec<Point> = b.points.iter().map(|&i| pg.point_at(i)).collect();
    let lines: Vec<Line> = b.lines.iter().map(|&i| pg.line_at(i)).collect();
    let lines_ok = lines
        .iter()
        .all(|l| pts.iter().filter(|p| pg.incident(p, l)).count() == q + 1);
    let points_ok = pts
        .iter()
        .all(|p| lines.iter().filter(|l| pg.incident(p, l)).count() == q + 1);
    if !(lines_ok && points_ok) {
        return false;
    }
    pts.iter().enumerate().all(|(i, a)| {
        pts[i + 1..]
            .iter()
            .all(|c| b.contains_line(pg.line_index(&pg.join(a, c).expect("distinct"))))
    })
}

/// `P_{2,q}`, the subplane of `phi`-fixed points.
pub fn p2q(pg: &Plane) -> SubplaneSet {
    t_plane(pg, Elem::ONE).expect("1 != 0")
}

/// True iff `m_T` is the line through `T^phi` and `T^phi^2`.
pub fn frame_consistent(pg: &Plane) -> bool {
    pg.join(&frame::T_PHI, &frame::T_PHI2).ok() == Some(frame::M_T)
        && !pg.incident(&frame::T, &frame::M_T)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collineation::{line_type, orbit_under_st, point_type};

    fn plane(q: u64) -> Plane {
        Plane::from_q(q).unwrap()
    }

    #[test]
    fn norm_class_reps_cover_base_units() {
        for q in [3, 4, 5] {
            let pg = plane(q);
            let f = pg.field();
            let mut norms: Vec<Elem> = norm_class_reps(f).iter().map(|&t| f.norm(t)).collect();
            norms.sort();
            let mut units: Vec<Elem> = f
                .base_subfield()
                .into_iter()
                .filter(|x| !x.is_zero())
                .collect();
            units.sort();
            assert_eq!(norms, units);
            for id in sls_ids(f, Side::T) {
                assert_eq!(f.norm(id.theta(f)), id.norm_class);
            }
        }
    }

    #[test]
    fn sls_examples() {
        let pg = plane(3);
        let f = pg.field();
        let s1 = sls_points(&pg, Elem::ONE, Side::T).unwrap();
        assert_eq!(s1.len(), 13);
        let one_one = pg.point([Elem::ONE, Elem::ONE, Elem::ZERO]).unwrap();
        assert!(s1.contains(&pg.point_index(&one_one)));
        assert_eq!(
            sls_points(&pg, Elem::ZERO, Side::T),
            Err(GeometryError::ZeroTheta)
        );
        // Equal norm classes give equal sets.
        for th in f.nonzero() {
            let rep = norm_class_reps(f)
                .into_iter()
                .find(|&r| f.norm(r) == f.norm(th))
                .unwrap();
            assert_eq!(
                sls_points(&pg, th, Side::T).unwrap(),
                sls_points(&pg, rep, Side::T).unwrap()
            );
        }
    }

    #[test]
    fn sls_types_follow_norm() {
        let pg = plane(5);
        let f = pg.field();
        for th in norm_class_reps(f) {
            let expect = if f.norm(th) == f.neg_one() {
                ObjType::II
            } else {
                ObjType::III
            };
            for side in Side::ALL {
                for i in sls_points(&pg, th, side).unwrap() {
                    assert_eq!(point_type(&pg, &pg.point_at(i)), expect);
                }
            }
        }
    }

    #[test]
    fn slses_partition_each_side() {
        for q in [3, 4] {
            let pg = plane(q);
            let f = pg.field();
            for side in Side::ALL {
                let line = side.line();
                let mut all: Vec<usize> = Vec::new();
                for id in sls_ids(f, side) {
                    let pts = sls_points_of(&pg, id);
                    assert_eq!(classify_sls_set(&pg, &pts), Some(id));
                    all.extend(pts);
                }
                all.sort_unstable();
                let mut expect: Vec<usize> = pg
                    .points_on(&line)
                    .iter()
                    .filter(|p| Side::of_point(p).is_some())
                    .map(|p| pg.point_index(p))
                    .collect();
                expect.sort_unstable();
                assert_eq!(all, expect);
            }
        }
    }

    #[test]
    fn sls_ids_match_orbits() {
        let pg = plane(3);
        for p in pg.points_on(&frame::M_T) {
            if let Some(id) = sls_id_of_point(&pg, &p) {
                assert_eq!(orbit_under_st(&pg, &p), sls_points_of(&pg, id));
            }
        }
    }

    #[test]
    fn pencil_types_agree_with_rank() {
        for q in [3, 4, 5] {
            let pg = plane(q);
            let f = pg.field();
            let mut type_ii = 0;
            for th in norm_class_reps(f) {
                let id = SlsId::new(f, Side::T, th).unwrap();
                let expect = pencil_type(&pg, th).unwrap();
                let lines = pencil_lines(&pg, id);
                assert_eq!(lines.len() as u32, q as u32 * q as u32 + q as u32 + 1);
                for i in lines {
                    assert_eq!(line_type(&pg, &pg.line_at(i)), expect);
                }
                type_ii += (expect == ObjType::II) as u32;
            }
            assert_eq!(type_ii, 1);
        }
    }

    #[test]
    fn t_planes() {
        let pg = plane(3);
        let f = pg.field();
        let one = plane_from_rep(&pg, &pg.point([Elem::ONE; 3]).unwrap()).unwrap();
        assert_eq!(p2q(&pg).points, one.points);
        assert_eq!(p2q(&pg).lines, one.lines);
        let mut distinct: Vec<Vec<usize>> = f
            .nonzero()
            .map(|t| t_plane(&pg, t).unwrap().points)
            .collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 2);
        for th in f.nonzero() {
            let b = t_plane(&pg, th).unwrap();
            assert!(is_subplane(&pg, &b));
            let rep = pg.point([f.mul(th, f.frob(th, 1)), Elem::ONE, th]).unwrap();
            let c = plane_from_rep(&pg, &rep).unwrap();
            assert_eq!((b.points.clone(), b.lines.clone()), (c.points, c.lines));
            if f.norm(th) != Elem::ONE {
                assert!(b
                    .points
                    .iter()
                    .all(|&i| point_type(&pg, &pg.point_at(i)) == ObjType::III));
                assert!(b
                    .lines
                    .iter()
                    .all(|&i| line_type(&pg, &pg.line_at(i)) == ObjType::III));
            }
        }
    }

    #[test]
    fn plane_from_rep_lines_do_not_depend_on_rep() {
        let pg = plane(4);
        let f = pg.field();
        let p = pg
            .point([Elem::ONE, f.from_log(5), f.from_log(17)])
            .unwrap();
        let b = plane_from_rep(&pg, &p).unwrap();
        assert!(is_subplane(&pg, &b));
        for &i in b.points.iter().take(5) {
            assert_eq!(plane_from_rep(&pg, &pg.point_at(i)).unwrap(), b);
        }
        assert!(matches!(
            plane_from_rep(&pg, &frame::T),
            Err(GeometryError::ZeroCoordinate(_))
        ));
    }

    #[test]
    fn phi_images_of_t_planes_are_subplanes() {
        let pg = plane(3);
        let f = pg.field();
        let b = t_plane_on(&pg, f.gen(), Side::TPhi).unwrap();
        assert!(is_subplane(&pg, &b));
        assert!(matches!(
            b.tag,
            PlaneTag::TPlane {
                side: Side::TPhi,
                ..
            }
        ));
        assert!(frame_consistent(&pg));
    }
}
