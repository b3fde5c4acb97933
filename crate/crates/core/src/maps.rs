//! `mu`, projection from `T`, splash, projection from other vertices and the
//! planes fixed by `phi` and `mu`.

use rayon::prelude::*;
use serde::Serialize;

use crate::collineation::{line_type, phi_point, point_type, ObjType, Partition, Side};
use crate::error::GeometryError;
use crate::field::Elem;
use crate::plane::{frame, Line, Plane, Point};
use crate::special::{classify_sls_set, plane_from_rep, SlsId, SubplaneSet};

fn require_type_iii_point(pg: &Plane, p: &Point) -> Result<(), GeometryError> {
    match point_type(pg, p) {
        ObjType::III => Ok(()),
        found => Err(GeometryError::NotTypeIII {
            object: p.to_string(),
            found,
        }),
    }
}

fn require_type_iii_line(pg: &Plane, l: &Line) -> Result<(), GeometryError> {
    match line_type(pg, l) {
        ObjType::III => Ok(()),
        found => Err(GeometryError::NotTypeIII {
            object: l.to_string(),
            found,
        }),
    }
}

/// `P -> P^phi P^phi^2`.
pub fn mu_pt(pg: &Plane, p: &Point) -> Result<Line, GeometryError> {
    require_type_iii_point(pg, p)?;
    Ok(mu_pt_unchecked(pg, p))
}

/// `l -> l^phi cap l^phi^2`.
pub fn mu_line(pg: &Plane, l: &Line) -> Result<Point, GeometryError> {
    require_type_iii_line(pg, l)?;
    Ok(mu_line_unchecked(pg, l))
}

/// `mu_pt` for a point already known to have Type III.
pub(crate) fn mu_pt_unchecked(pg: &Plane, p: &Point) -> Line {
    let a = phi_point(pg, p);
    let b = phi_point(pg, &a);
    pg.join(&a, &b)
        .expect("Type III points have distinct images")
}

pub(crate) fn mu_line_unchecked(pg: &Plane, l: &Line) -> Point {
    let a = crate::collineation::phi_line(pg, l);
    let b = crate::collineation::phi_line(pg, &a);
    pg.meet(&a, &b)
        .expect("Type III lines have distinct images")
}

/// `T P cap m_T`.
pub fn project_from_t(pg: &Plane, p: &Point) -> Result<Point, GeometryError> {
    if *p == frame::T {
        return Err(GeometryError::ProjectFromSelf);
    }
    Ok(pg
        .meet(&pg.join(&frame::T, p)?, &frame::M_T)
        .expect("T is off m_T"))
}

/// `l cap m_T`.
pub fn splash_line(pg: &Plane, l: &Line) -> Result<Point, GeometryError> {
    if *l == frame::M_T {
        return Err(GeometryError::SplashOfAxis);
    }
    pg.meet(l, &frame::M_T)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageKind {
    /// `q^2+q+1` points; `Some` when the set is an sls on `m_T`.
    Scattered(Option<SlsId>),
    /// `q^2+1` points.
    Club,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSetImage {
    /// Sorted point indices on `m_T`.
    pub points: Vec<usize>,
    pub kind: ImageKind,
    pub vertex: Point,
}

impl LinearSetImage {
    fn classify(pg: &Plane, mut points: Vec<usize>, vertex: Point) -> Self {
        points.sort_unstable();
        points.dedup();
        let q = pg.q() as usize;
        let kind = if points.len() == q * q + q + 1 {
            ImageKind::Scattered(classify_sls_set(pg, &points).filter(|id| id.side == Side::T))
        } else if points.len() == q * q + 1 {
            ImageKind::Club
        } else {
            ImageKind::Other
        };
        LinearSetImage {
            points,
            kind,
            vertex,
        }
    }

    pub fn sls(&self) -> Option<SlsId> {
        match self.kind {
            ImageKind::Scattered(id) => id,
            _ => None,
        }
    }
}

pub fn pr_set(pg: &Plane, b: &SubplaneSet) -> Result<LinearSetImage, GeometryError> {
    let pts = b
        .points
        .iter()
        .map(|&i| project_from_t(pg, &pg.point_at(i)).map(|p| pg.point_index(&p)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LinearSetImage::classify(pg, pts, frame::T))
}

pub fn sp_set(pg: &Plane, b: &SubplaneSet) -> Result<LinearSetImage, GeometryError> {
    let pts = b
        .lines
        .iter()
        .map(|&i| splash_line(pg, &pg.line_at(i)).map(|p| pg.point_index(&p)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LinearSetImage::classify(pg, pts, frame::T))
}

/// Projects the points of `b` from `v` onto `m_T`.
pub fn project_from_vertex(
    pg: &Plane,
    v: &Point,
    b: &SubplaneSet,
) -> Result<LinearSetImage, GeometryError> {
    if pg.incident(v, &frame::M_T) {
        return Err(GeometryError::VertexOnAxis(v.to_string()));
    }
    let vi = pg.point_index(v);
    if b.contains_point(vi) {
        return Err(GeometryError::VertexInPlane(v.to_string()));
    }
    let pts = b
        .points
        .iter()
        .map(|&i| {
            let l = pg.join(v, &pg.point_at(i)).expect("v not in b");
            pg.point_index(&pg.meet(&l, &frame::M_T).expect("v is off m_T"))
        })
        .collect();
    Ok(LinearSetImage::classify(pg, pts, *v))
}

/// Images of a subplane under `mu`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuImage {
    /// Points of an sls.
    Sls(SlsId),
    /// Lines joining the vertex opposite `id.side` to the points of the sls.
    Pencil(SlsId),
    /// An F_q-plane of the orbit partition.
    Plane(SubplaneSet),
}

/// `mu_line` applied to every line of `b`, identified as an sls or a plane.
pub fn mu_line_image(pg: &Plane, b: &SubplaneSet) -> Result<MuImage, GeometryError> {
    let mut pts = b
        .lines
        .iter()
        .map(|&i| mu_line(pg, &pg.line_at(i)).map(|p| pg.point_index(&p)))
        .collect::<Result<Vec<_>, _>>()?;
    pts.sort_unstable();
    if let Some(id) = classify_sls_set(pg, &pts) {
        return Ok(MuImage::Sls(id));
    }
    let plane = plane_from_rep(pg, &pg.point_at(pts[0])).map_err(|_| GeometryError::NotAnOrbit)?;
    if plane.points == pts {
        Ok(MuImage::Plane(plane))
    } else {
        Err(GeometryError::NotAnOrbit)
    }
}

/// `mu_pt` applied to every point of `b`, identified as a pencil or the
/// line set of a plane.
pub fn mu_pt_image(pg: &Plane, b: &SubplaneSet) -> Result<MuImage, GeometryError> {
    let lines_v: Vec<Line> = b
        .points
        .iter()
        .map(|&i| mu_pt(pg, &pg.point_at(i)))
        .collect::<Result<_, _>>()?;
    let mut idx: Vec<usize> = lines_v.iter().map(|l| pg.line_index(l)).collect();
    idx.sort_unstable();
    for side in Side::ALL {
        let v = side.vertex();
        if lines_v.iter().all(|l| pg.incident(&v, l)) {
            let mut pts: Vec<usize> = lines_v
                .iter()
                .map(|l| pg.point_index(&pg.meet(l, &side.line()).expect("vertex off side")))
                .collect();
            pts.sort_unstable();
            return match classify_sls_set(pg, &pts) {
                Some(id) if id.side == side => Ok(MuImage::Pencil(id)),
                _ => Err(GeometryError::NotAnOrbit),
            };
        }
    }
    let rep = pg
        .meet(&lines_v[0], &lines_v[1])
        .map_err(|_| GeometryError::NotAnOrbit)?;
    let plane = plane_from_rep(pg, &rep).map_err(|_| GeometryError::NotAnOrbit)?;
    if plane.lines == idx {
        Ok(MuImage::Plane(plane))
    } else {
        Err(GeometryError::NotAnOrbit)
    }
}

/// Closed form: `pi_lambda = (1,1,lambda)^{S_T}` for `lambda^3 = 1` in GF(q).
pub fn phi_fixed_planes(pg: &Plane) -> Vec<SubplaneSet> {
    cube_roots_of_unity(pg)
        .into_iter()
        .map(|l| pi_lambda(pg, l))
        .collect()
}

/// Closed form: the `pi_lambda` with `lambda != 1`.
pub fn mu_fixed_planes(pg: &Plane) -> Vec<SubplaneSet> {
    cube_roots_of_unity(pg)
        .into_iter()
        .filter(|&l| l != Elem::ONE)
        .map(|l| pi_lambda(pg, l))
        .collect()
}

fn pi_lambda(pg: &Plane, lambda: Elem) -> SubplaneSet {
    let rep = pg.point([Elem::ONE, Elem::ONE, lambda]).expect("nonzero");
    plane_from_rep(pg, &rep).expect("xyz != 0")
}

/// `lambda` in GF(q)* with `lambda^3 = 1`, in log order.
pub fn cube_roots_of_unity(pg: &Plane) -> Vec<Elem> {
    let f = pg.field();
    let mut v: Vec<Elem> = f
        .base_subfield()
        .into_iter()
        .filter(|&x| !x.is_zero() && f.pow(x, 3) == Elem::ONE)
        .collect();
    v.sort();
    v
}

/// Plane classes of the partition whose point set is mapped onto itself
/// by `phi`.
pub fn scan_phi_fixed_planes(pg: &Plane, part: &Partition) -> Vec<SubplaneSet> {
    plane_classes(pg, part)
        .into_par_iter()
        .filter(|b| {
            let mut img: Vec<usize> = b
                .points
                .iter()
                .map(|&i| pg.point_index(&phi_point(pg, &pg.point_at(i))))
                .collect();
            img.sort_unstable();
            img == b.points
        })
        .collect()
}

/// Plane classes with only Type III points whose `mu_pt` image is exactly
/// their own line set.
pub fn scan_mu_fixed_planes(pg: &Plane, part: &Partition) -> Vec<SubplaneSet> {
    plane_classes(pg, part)
        .into_par_iter()
        .filter(|b| {
            let cls = part.class_of_point(b.points[0]);
            if cls.point_type != ObjType::III {
                return false;
            }
            let mut img: Vec<usize> = b
                .points
                .iter()
                .map(|&i| pg.line_index(&mu_pt_unchecked(pg, &pg.point_at(i))))
                .collect();
            img.sort_unstable();
            img == b.lines
        })
        .collect()
}

/// Every plane class of the partition as a subplane, in class order.
pub fn plane_classes(pg: &Plane, part: &Partition) -> Vec<SubplaneSet> {
    part.classes
        .iter()
        .filter(|c| c.category.is_plane())
        .map(|c| {
            plane_from_rep(pg, &pg.point_at(c.representative))
                .expect("plane classes avoid the sides")
        })
        .collect()
}

/// The image of `b` from every admissible vertex, in point-index order.
pub fn vertex_images(pg: &Plane, b: &SubplaneSet) -> Vec<LinearSetImage> {
    (0..pg.size())
        .into_par_iter()
        .filter_map(|i| {
            let v = pg.point_at(i);
            project_from_vertex(pg, &v, b).ok()
        })
        .collect()
}

/// Vertices projecting `b` onto the T-sls with the given `theta`.
pub fn projection_vertices(
    pg: &Plane,
    b: &SubplaneSet,
    theta: Elem,
) -> Result<Vec<usize>, GeometryError> {
    let target = SlsId::new(pg.field(), Side::T, theta)?;
    Ok(vertex_images(pg, b)
        .into_iter()
        .filter(|img| img.sls() == Some(target))
        .map(|img| pg.point_index(&img.vertex))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collineation::partition_and_census;
    use crate::special::{norm_class_reps, p2q, pencil_lines, sls_points, t_plane};

    fn plane(q: u64) -> Plane {
        Plane::from_q(q).unwrap()
    }

    #[test]
    fn mu_examples() {
        let pg = plane(3);
        assert_eq!(mu_pt(&pg, &frame::T), Ok(frame::M_T));
        assert_eq!(mu_line(&pg, &frame::M_T), Ok(frame::T));
        let l = pg.join(&frame::T, &frame::T_PHI).unwrap();
        assert_eq!(mu_line(&pg, &l), Ok(frame::T_PHI2));
        let one = pg.point([Elem::ONE; 3]).unwrap();
        assert!(matches!(
            mu_pt(&pg, &one),
            Err(GeometryError::NotTypeIII {
                found: ObjType::I,
                ..
            })
        ));
    }

    #[test]
    fn mu_is_an_involution() {
        let pg = plane(3);
        for p in pg.points().filter(|p| point_type(&pg, p) == ObjType::III) {
            let l = mu_pt(&pg, &p).unwrap();
            assert_eq!(line_type(&pg, &l), ObjType::III);
            assert_eq!(mu_line(&pg, &l).unwrap(), p);
        }
        for l in pg.lines().filter(|l| line_type(&pg, l) == ObjType::III) {
            assert_eq!(mu_pt(&pg, &mu_line(&pg, &l).unwrap()).unwrap(), l);
        }
    }

    // mu is not a correlation: flags are not carried to flags in general.
    // Counts over all Type III (point, line) pairs at q=3.
    #[test]
    fn mu_incidence_counts() {
        let pg = plane(3);
        let pts: Vec<Point> = pg
            .points()
            .filter(|p| point_type(&pg, p) == ObjType::III)
            .collect();
        let mus: Vec<Line> = pts.iter().map(|p| mu_pt(&pg, p).unwrap()).collect();
        let (mut both, mut only_flag, mut only_image) = (0, 0, 0);
        for l in pg.lines().filter(|l| line_type(&pg, l) == ObjType::III) {
            let m = mu_line(&pg, &l).unwrap();
            for (p, mp) in pts.iter().zip(&mus) {
                match (pg.incident(p, &l), pg.incident(&m, mp)) {
                    (true, true) => both += 1,
                    (true, false) => only_flag += 1,
                    (false, true) => only_image += 1,
                    _ => {}
                }
            }
        }
        assert_eq!((both, only_flag, only_image), (864, 5616, 5616));
    }

    #[test]
    fn projection_basics() {
        let pg = plane(3);
        assert_eq!(project_from_t(&pg, &frame::T_PHI), Ok(frame::T_PHI));
        assert_eq!(
            project_from_t(&pg, &frame::T),
            Err(GeometryError::ProjectFromSelf)
        );
        assert_eq!(
            splash_line(&pg, &frame::M_T),
            Err(GeometryError::SplashOfAxis)
        );
        let b = p2q(&pg);
        let img = pr_set(&pg, &b).unwrap();
        assert_eq!(img.points, sls_points(&pg, Elem::ONE, Side::T).unwrap());
        assert!(matches!(img.kind, ImageKind::Scattered(Some(_))));
        assert!(matches!(
            project_from_vertex(&pg, &frame::T_PHI, &b),
            Err(GeometryError::VertexOnAxis(_))
        ));
        let inside = pg.point_at(b.points[0]);
        assert!(matches!(
            project_from_vertex(&pg, &inside, &b),
            Err(GeometryError::VertexInPlane(_))
        ));
    }

    #[test]
    fn mu_on_t_planes_at_q3() {
        let pg = plane(3);
        let f = pg.field();
        for th in norm_class_reps(f)
            .into_iter()
            .filter(|&t| f.norm(t) != Elem::ONE)
        {
            let b = t_plane(&pg, th).unwrap();
            let inv = f.inv(th).unwrap();
            let want_line = SlsId::new(f, Side::T, f.neg(inv)).unwrap();
            assert_eq!(mu_line_image(&pg, &b), Ok(MuImage::Sls(want_line)));
            let want_pt = SlsId::new(f, Side::T, inv).unwrap();
            assert_eq!(mu_pt_image(&pg, &b), Ok(MuImage::Pencil(want_pt)));
            let lines: Vec<usize> = b
                .points
                .iter()
                .map(|&i| pg.line_index(&mu_pt(&pg, &pg.point_at(i)).unwrap()))
                .collect();
            let mut lines = lines;
            lines.sort_unstable();
            assert_eq!(lines, pencil_lines(&pg, want_pt));
        }
    }

    #[test]
    fn fixed_planes_closed_form_matches_scan() {
        for (q, phi, mu) in [(3u64, 1usize, 0usize), (4, 3, 2)] {
            let pg = plane(q);
            let part = partition_and_census(&pg).unwrap();
            let mut a: Vec<_> = phi_fixed_planes(&pg)
                .into_iter()
                .map(|b| b.points)
                .collect();
            let mut b: Vec<_> = scan_phi_fixed_planes(&pg, &part)
                .into_iter()
                .map(|b| b.points)
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a.len(), phi);
            assert_eq!(a, b);
            let mut a: Vec<_> = mu_fixed_planes(&pg).into_iter().map(|b| b.points).collect();
            let mut b: Vec<_> = scan_mu_fixed_planes(&pg, &part)
                .into_iter()
                .map(|b| b.points)
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a.len(), mu);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn vertex_from_t_equals_pr() {
        let pg = plane(3);
        let b = t_plane(&pg, pg.field().gen()).unwrap();
        assert_eq!(project_from_vertex(&pg, &frame::T, &b), pr_set(&pg, &b));
    }

    #[test]
    fn club_from_some_type_ii_vertex() {
        let pg = plane(3);
        let b = p2q(&pg);
        let club = pg
            .points()
            .filter(|v| !pg.incident(v, &frame::M_T) && point_type(&pg, v) == ObjType::II)
            .filter_map(|v| project_from_vertex(&pg, &v, &b).ok())
            .find(|img| img.kind == ImageKind::Club);
        let club = club.expect("a club image exists");
        assert_eq!(club.points.len(), 10);
    }
}
