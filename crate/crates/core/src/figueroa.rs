//! Fig-blocks, the Figueroa plane FIG(q^3), axiom checking, and the
//! structural statements about `Fig(T)`.

use std::collections::HashSet;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::collineation::{line_type, phi_point, point_type, ObjType, Side, TypeTables};
use crate::error::GeometryError;
use crate::field::Elem;
use crate::maps::{mu_line_unchecked, mu_pt, mu_pt_unchecked, splash_line, vertex_images};
use crate::plane::{frame, Plane, Point};
use crate::special::{norm_class_reps, p2q, pencil_lines, sls_points, t_plane, SlsId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FigBlock {
    pub anchor: Point,
    /// Type II points of `anchor^mu`.
    pub e: Vec<usize>,
    /// `mu(l)` for the Type III lines `l` through the anchor.
    pub f: Vec<usize>,
    /// `e` and `f` merged, sorted.
    pub points: Vec<usize>,
}

impl FigBlock {
    pub fn contains(&self, idx: usize) -> bool {
        self.points.binary_search(&idx).is_ok()
    }
}

/// `Fig(anchor) = E u F` for a Type III anchor.
pub fn fig_block(pg: &Plane, anchor: &Point) -> Result<FigBlock, GeometryError> {
    let axis = mu_pt(pg, anchor)?;
    let e = pg
        .points_on(&axis)
        .into_iter()
        .filter(|p| point_type(pg, p) == ObjType::II)
        .map(|p| pg.point_index(&p))
        .collect();
    let f = pg
        .lines_through(anchor)
        .into_iter()
        .filter(|l| line_type(pg, l) == ObjType::III)
        .map(|l| pg.point_index(&mu_line_unchecked(pg, &l)))
        .collect();
    Ok(assemble(*anchor, e, f))
}

fn fig_block_with(pg: &Plane, types: &TypeTables, anchor: &Point) -> FigBlock {
    let axis = mu_pt_unchecked(pg, anchor);
    let e = pg
        .points_on(&axis)
        .into_iter()
        .map(|p| pg.point_index(&p))
        .filter(|&i| types.points[i] == ObjType::II)
        .collect();
    let f = pg
        .lines_through(anchor)
        .into_iter()
        .filter(|l| types.lines[pg.line_index(l)] == ObjType::III)
        .map(|l| pg.point_index(&mu_line_unchecked(pg, &l)))
        .collect();
    assemble(*anchor, e, f)
}

fn assemble(anchor: Point, mut e: Vec<usize>, mut f: Vec<usize>) -> FigBlock {
    e.sort_unstable();
    f.sort_unstable();
    let mut points: Vec<usize> = e.iter().chain(&f).copied().collect();
    points.sort_unstable();
    points.dedup();
    FigBlock {
        anchor,
        e,
        f,
        points,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockTag {
    TypeILine,
    TypeIiLine,
    TypeIiiLine,
    FigBlock,
}

/// Points `0..npoints` and blocks of sorted point indices. Block `i`
/// corresponds to line `i` of PG(2,q^3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidencePlane {
    pub order: usize,
    pub npoints: usize,
    pub blocks: Vec<Vec<u32>>,
    pub tags: Vec<BlockTag>,
}

fn line_block(pg: &Plane, idx: usize) -> Vec<u32> {
    let mut b: Vec<u32> = pg
        .points_on(&pg.line_at(idx))
        .iter()
        .map(|p| pg.point_index(p) as u32)
        .collect();
    b.sort_unstable();
    b
}

fn type_tag(t: ObjType) -> BlockTag {
    match t {
        ObjType::I => BlockTag::TypeILine,
        ObjType::II => BlockTag::TypeIiLine,
        ObjType::III => BlockTag::TypeIiiLine,
    }
}

impl IncidencePlane {
    /// PG(2,q^3) itself.
    pub fn desarguesian(pg: &Plane, types: &TypeTables) -> Self {
        let blocks = (0..pg.size())
            .into_par_iter()
            .map(|i| line_block(pg, i))
            .collect();
        IncidencePlane {
            order: pg.line_size() - 1,
            npoints: pg.size(),
            blocks,
            tags: types.lines.iter().map(|&t| type_tag(t)).collect(),
        }
    }

    /// Writes the header `FIG <q^3> <npoints>` and one block per line.
    pub fn write_blocks<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "FIG {} {}", self.order, self.npoints)?;
        for b in &self.blocks {
            let line: Vec<String> = b.iter().map(u32::to_string).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn tag_counts(&self) -> [usize; 4] {
        let mut out = [0; 4];
        for &t in &self.tags {
            out[t as usize] += 1;
        }
        out
    }
}

/// Type I and II lines of PG(2,q^3) plus `Fig(m^mu)` in place of every
/// Type III line `m`.
pub fn build_fig_plane(pg: &Plane, types: &TypeTables) -> Result<IncidencePlane, GeometryError> {
    let q = pg.q() as u64;
    if q < 3 {
        return Err(GeometryError::SmallOrder(q));
    }
    let (blocks, tags) = (0..pg.size())
        .into_par_iter()
        .map(|i| match types.lines[i] {
            ObjType::III => {
                let anchor = mu_line_unchecked(pg, &pg.line_at(i));
                let b = fig_block_with(pg, types, &anchor);
                (
                    b.points.iter().map(|&x| x as u32).collect(),
                    BlockTag::FigBlock,
                )
            }
            t => (line_block(pg, i), type_tag(t)),
        })
        .unzip();
    Ok(IncidencePlane {
        order: pg.line_size() - 1,
        npoints: pg.size(),
        blocks,
        tags,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    Full,
    /// `pairs` uniformly random point pairs and as many block pairs.
    Sampled {
        pairs: u64,
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomViolation {
    BlockSize {
        block: usize,
        size: usize,
    },
    PointDegree {
        point: usize,
        degree: usize,
    },
    /// Two points lying in `blocks` common blocks, not one.
    PointPair {
        a: usize,
        b: usize,
        blocks: usize,
    },
    /// Two blocks meeting in `common` points, not one.
    BlockPair {
        a: usize,
        b: usize,
        common: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub mode: PairMode,
    pub points: usize,
    pub blocks: usize,
    pub point_pairs_checked: u64,
    pub block_pairs_checked: u64,
    /// The first few violations in scan order.
    pub violations: Vec<AxiomViolation>,
    pub violation_count: u64,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

const MAX_WITNESSES: usize = 8;

struct Collector {
    list: Vec<AxiomViolation>,
    count: u64,
}

impl Collector {
    fn push(&mut self, v: AxiomViolation) {
        self.count += 1;
        if self.list.len() < MAX_WITNESSES {
            self.list.push(v);
        }
    }
}

/// Index of the pair `a < b` in a flat upper-triangular table.
fn tri(n: usize, a: usize, b: usize) -> usize {
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Counts, for every unordered pair of `0..n`, how many of the sets contain
/// both, saturating at 255.
fn pair_counts(n: usize, sets: &[Vec<u32>]) -> Vec<u8> {
    let mut counter = vec![0u8; n * (n - 1) / 2];
    for s in sets {
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                let c = &mut counter[tri(n, a as usize, b as usize)];
                *c = c.saturating_add(1);
            }
        }
    }
    counter
}

fn common(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Checks that `plane` is a projective plane of order `plane.order`: block
/// sizes, point degrees, and the one-block / one-point pair conditions.
pub fn check_axioms(plane: &IncidencePlane, mode: PairMode) -> AxiomReport {
    let n = plane.npoints;
    let k = plane.order + 1;
    let mut out = Collector {
        list: Vec::new(),
        count: 0,
    };
    for (i, b) in plane.blocks.iter().enumerate() {
        if b.len() != k {
            out.push(AxiomViolation::BlockSize {
                block: i,
                size: b.len(),
            });
        }
    }
    let mut through: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, b) in plane.blocks.iter().enumerate() {
        for &p in b {
            through[p as usize].push(i as u32);
        }
    }
    for (p, t) in through.iter().enumerate() {
        if t.len() != k {
            out.push(AxiomViolation::PointDegree {
                point: p,
                degree: t.len(),
            });
        }
    }
    let nb = plane.blocks.len();
    let (pp, bp) = match mode {
        PairMode::Full => {
            let counts = pair_counts(n, &plane.blocks);
            let mut idx = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if counts[idx] != 1 {
                        out.push(AxiomViolation::PointPair {
                            a,
                            b,
                            blocks: counts[idx] as usize,
                        });
                    }
                    idx += 1;
                }
            }
            let counts = pair_counts(nb, &through);
            let mut idx = 0;
            for a in 0..nb {
                for b in a + 1..nb {
                    if counts[idx] != 1 {
                        out.push(AxiomViolation::BlockPair {
                            a,
                            b,
                            common: counts[idx] as usize,
                        });
                    }
                    idx += 1;
                }
            }
            ((n * (n - 1) / 2) as u64, (nb * (nb - 1) / 2) as u64)
        }
        PairMode::Sampled { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut draw = |m: usize| loop {
                let a = rng.gen_range(0..m);
                let b = rng.gen_range(0..m);
                if a != b {
                    return (a.min(b), a.max(b));
                }
            };
            for _ in 0..pairs {
                let (a, b) = draw(n);
                let c = common(&through[a], &through[b]);
                if c != 1 {
                    out.push(AxiomViolation::PointPair { a, b, blocks: c });
                }
            }
            for _ in 0..pairs {
                let (a, b) = draw(nb);
                let c = common(&plane.blocks[a], &plane.blocks[b]);
                if c != 1 {
                    out.push(AxiomViolation::BlockPair { a, b, common: c });
                }
            }
            (pairs, pairs)
        }
    };
    AxiomReport {
        mode,
        points: n,
        blocks: nb,
        point_pairs_checked: pp,
        block_pairs_checked: bp,
        violations: out.list,
        violation_count: out.count,
    }
}

/// True iff the block set is mapped onto itself by `phi`.
pub fn phi_invariant(pg: &Plane, plane: &IncidencePlane) -> bool {
    let set: HashSet<&[u32]> = plane.blocks.iter().map(|b| b.as_slice()).collect();
    plane.blocks.par_iter().all(|b| {
        let mut img: Vec<u32> = b
            .iter()
            .map(|&i| pg.point_index(&phi_point(pg, &pg.point_at(i as usize))) as u32)
            .collect();
        img.sort_unstable();
        set.contains(img.as_slice())
    })
}

/// Three member points of a block that are not collinear in PG(2,q^3).
pub fn non_collinear_witness(pg: &Plane, block: &[u32]) -> Option<[usize; 3]> {
    let a = pg.point_at(*block.first()? as usize);
    let b = pg.point_at(*block.get(1)? as usize);
    let l = pg.join(&a, &b).ok()?;
    block[2..]
        .iter()
        .find(|&&c| !pg.incident(&pg.point_at(c as usize), &l))
        .map(|&c| [block[0] as usize, block[1] as usize, c as usize])
}

/// `Pr` of every point of `Fig(V)` other than `T`, for `V` a frame vertex.
pub fn pr_fig_block(pg: &Plane, which: Side) -> Vec<usize> {
    let block = fig_block(pg, &which.vertex()).expect("frame vertices have Type III");
    let t = pg.point_index(&frame::T);
    let mut out: Vec<usize> = block
        .points
        .iter()
        .filter(|&&i| i != t)
        .map(|&i| {
            let p = pg.point_at(i);
            let l = pg.join(&frame::T, &p).expect("p != T");
            pg.point_index(&pg.meet(&l, &frame::M_T).expect("T off m_T"))
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The set predicted for `pr_fig_block`:
/// * `T`, q even: all of `m_T`;
/// * `T`, q odd: `{T^phi, T^phi^2} u S_{-1} u {S_theta : Norm(theta) a nonzero square}`;
/// * `T^phi`: `m_T \ (S_1 u {T^phi^2})`;
/// * `T^phi^2`: `m_T \ (S_1 u {T^phi})`.
pub fn expected_pr_fig_block(pg: &Plane, which: Side) -> Vec<usize> {
    let f = pg.field();
    let axis: Vec<usize> = pg
        .points_on(&frame::M_T)
        .iter()
        .map(|p| pg.point_index(p))
        .collect();
    let s1 = sls_points(pg, Elem::ONE, Side::T).expect("1 != 0");
    let mut out: Vec<usize> = match which {
        Side::T if f.p() == 2 => axis,
        Side::T => {
            let mut v = vec![
                pg.point_index(&frame::T_PHI),
                pg.point_index(&frame::T_PHI2),
            ];
            v.extend(sls_points(pg, f.neg_one(), Side::T).expect("-1 != 0"));
            for th in norm_class_reps(f) {
                if f.is_nonzero_square(f.norm(th)) {
                    v.extend(sls_points(pg, th, Side::T).expect("nonzero"));
                }
            }
            v
        }
        Side::TPhi | Side::TPhi2 => {
            let drop = if which == Side::TPhi {
                frame::T_PHI2
            } else {
                frame::T_PHI
            };
            let drop = pg.point_index(&drop);
            axis.into_iter()
                .filter(|i| *i != drop && s1.binary_search(i).is_err())
                .collect()
        }
    };
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArchingRow {
    pub theta: Elem,
    pub norm_class: Elem,
    /// Norm classes `Norm(kappa)` of the T-planes `Pi_kappa` arched over.
    pub arched: Vec<Elem>,
}

/// For each pencil `T S_theta`, the T-planes every one of whose pencil
/// lines meets the plane in exactly one point.
pub fn arching_census(pg: &Plane) -> Vec<ArchingRow> {
    let f = pg.field();
    let planes: Vec<_> = norm_class_reps(f)
        .into_iter()
        .map(|k| (f.norm(k), t_plane(pg, k).expect("nonzero")))
        .collect();
    norm_class_reps(f)
        .into_iter()
        .map(|th| {
            let id = SlsId::new(f, Side::T, th).expect("nonzero");
            let lines: Vec<_> = pencil_lines(pg, id)
                .into_iter()
                .map(|i| pg.line_at(i))
                .collect();
            let arched = planes
                .iter()
                .filter(|(_, b)| {
                    lines.iter().all(|l| {
                        b.points
                            .iter()
                            .filter(|&&i| pg.incident(&pg.point_at(i), l))
                            .count()
                            == 1
                    })
                })
                .map(|(n, _)| *n)
                .collect();
            ArchingRow {
                theta: th,
                norm_class: f.norm(th),
                arched,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCount {
    pub sls: SlsId,
    pub vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FigPointsReport {
    /// Points `P` off `m_T u {T}` and off `P_{2,q}` that were scanned.
    pub scanned: usize,
    /// Points where "projection is a T-sls" and "in Fig(T)" disagree.
    pub mismatches: Vec<usize>,
    /// Vertices onto a T-sls, `T` included.
    pub total_vertices: usize,
    pub per_sls: Vec<VertexCount>,
    /// Members of `P_{2,q}`; none lie in `Fig(T)`.
    pub p2q_in_fig: usize,
}

/// Scans every point `P` off `m_T u {T}`: the projection of `P_{2,q}` from
/// `P` is a T-sls iff `P` is in `Fig(T)`. Points of `P_{2,q}` cannot serve
/// as vertices and are reported separately.
pub fn characterize_fig_points(pg: &Plane) -> FigPointsReport {
    let fig = fig_block(pg, &frame::T).expect("T has Type III");
    let b = p2q(pg);
    let t = pg.point_index(&frame::T);
    let images = vertex_images(pg, &b);
    let mut mismatches = Vec::new();
    let mut scanned = 0;
    let f = pg.field();
    let mut per: Vec<VertexCount> = norm_class_reps(f)
        .into_iter()
        .map(|th| VertexCount {
            sls: SlsId::new(f, Side::T, th).expect("nonzero"),
            vertices: 0,
        })
        .collect();
    for img in &images {
        let v = pg.point_index(&img.vertex);
        if let Some(id) = img.sls() {
            per.iter_mut()
                .find(|c| c.sls == id)
                .expect("T-side id")
                .vertices += 1;
        }
        if v == t {
            continue;
        }
        scanned += 1;
        if img.sls().is_some() != fig.contains(v) {
            mismatches.push(v);
        }
    }
    FigPointsReport {
        scanned,
        mismatches,
        total_vertices: per.iter().map(|c| c.vertices).sum(),
        per_sls: per,
        p2q_in_fig: b.points.iter().filter(|&&i| fig.contains(i)).count(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilStructure {
    pub vertex: Side,
    pub lines: usize,
    /// `(line, |F n l|, |E n l|)` for lines with neither exactly one point of
    /// `F` and none of `E`, nor the reverse. The vertex itself is not counted.
    pub bad: Vec<(usize, usize, usize)>,
}

impl PencilStructure {
    pub fn holds(&self) -> bool {
        self.bad.is_empty()
    }
}

/// Checks, on every line through `T`, `T^phi`, `T^phi^2`, that it carries one
/// point of `f` or one point of `e[i]` but not both.
pub fn even_structure_with(pg: &Plane, e: [&[usize]; 3], f: &[usize]) -> [PencilStructure; 3] {
    Side::ALL.map(|side| {
        let v = side.vertex();
        let vi = pg.point_index(&v);
        let lines = pg.lines_through(&v);
        let count = |set: &[usize], l| {
            set.iter()
                .filter(|&&i| i != vi && pg.incident(&pg.point_at(i), l))
                .count()
        };
        let bad = lines
            .iter()
            .filter_map(|l| {
                let (cf, ce) = (count(f, l), count(e[side as usize], l));
                (!matches!((cf, ce), (1, 0) | (0, 1))).then(|| (pg.line_index(l), cf, ce))
            })
            .collect();
        PencilStructure {
            vertex: side,
            lines: lines.len(),
            bad,
        }
    })
}

/// Even-q structure of `Fig(T)`: lines through `T` against `E_T`, through
/// `T^phi` against `E_T^phi`, through `T^phi^2` against `E_T^phi^2`, each
/// together with `F_T`.
pub fn even_structure_check(pg: &Plane) -> Result<[PencilStructure; 3], GeometryError> {
    if pg.field().p() != 2 {
        return Err(GeometryError::OddOrder(pg.q() as u64));
    }
    let fig = fig_block(pg, &frame::T).expect("T has Type III");
    let shift = |v: &[usize]| -> Vec<usize> {
        v.iter()
            .map(|&i| pg.point_index(&phi_point(pg, &pg.point_at(i))))
            .collect()
    };
    let e1 = shift(&fig.e);
    let e2 = shift(&e1);
    Ok(even_structure_with(pg, [&fig.e, &e1, &e2], &fig.f))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpMuReport {
    /// Number of Type III points of `Fig(T)`.
    pub domain: usize,
    pub image: Vec<usize>,
    pub injective: bool,
    pub equals_complement_of_s1: bool,
    pub equals_type_iii_of_axis: bool,
}

/// `Sp(mu_pt(P))` over the Type III points `P` of `Fig(T)`.
pub fn sp_mu_bijection_check(pg: &Plane) -> SpMuReport {
    let fig = fig_block(pg, &frame::T).expect("T has Type III");
    let dom: Vec<Point> = fig
        .points
        .iter()
        .map(|&i| pg.point_at(i))
        .filter(|p| point_type(pg, p) == ObjType::III)
        .collect();
    let mut image: Vec<usize> = dom
        .iter()
        .map(|p| {
            let l = mu_pt_unchecked(pg, p);
            pg.point_index(&splash_line(pg, &l).expect("mu(P) = m_T only for P = T"))
        })
        .collect();
    image.sort_unstable();
    let raw = image.len();
    image.dedup();
    let s1 = sls_points(pg, Elem::ONE, Side::T).expect("1 != 0");
    let axis: Vec<Point> = pg.points_on(&frame::M_T);
    let mut complement: Vec<usize> = axis
        .iter()
        .map(|p| pg.point_index(p))
        .filter(|i| s1.binary_search(i).is_err())
        .collect();
    complement.sort_unstable();
    let mut type_iii: Vec<usize> = axis
        .iter()
        .filter(|p| point_type(pg, p) == ObjType::III)
        .map(|p| pg.point_index(p))
        .collect();
    type_iii.sort_unstable();
    SpMuReport {
        domain: dom.len(),
        injective: raw == image.len(),
        equals_complement_of_s1: image == complement,
        equals_type_iii_of_axis: image == type_iii,
        image,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(q: u64) -> Plane {
        Plane::from_q(q).unwrap()
    }

    #[test]
    fn fig_t_at_q3() {
        let pg = plane(3);
        let fig = fig_block(&pg, &frame::T).unwrap();
        assert_eq!(fig.points.len(), 28);
        assert_eq!(fig.e.len(), 13);
        assert_eq!(fig.f.len(), 15);
        assert!(fig.contains(pg.point_index(&frame::T_PHI)));
        assert!(fig.contains(pg.point_index(&frame::T_PHI2)));
        // Closed form: E_T u {T^phi, T^phi^2} u Pi_theta for Norm(theta) != 1.
        let f = pg.field();
        let mut expect = fig.e.clone();
        expect.push(pg.point_index(&frame::T_PHI));
        expect.push(pg.point_index(&frame::T_PHI2));
        for th in norm_class_reps(f)
            .into_iter()
            .filter(|&t| f.norm(t) != Elem::ONE)
        {
            expect.extend(t_plane(&pg, th).unwrap().points);
        }
        expect.sort_unstable();
        assert_eq!(fig.points, expect);
        let on_axis = fig
            .points
            .iter()
            .filter(|&&i| pg.incident(&pg.point_at(i), &frame::M_T))
            .count();
        assert_eq!(on_axis, 13 + 2);
    }

    #[test]
    fn fig_block_is_phi_equivariant() {
        let pg = plane(3);
        let a = fig_block(&pg, &frame::T).unwrap();
        let b = fig_block(&pg, &frame::T_PHI).unwrap();
        let mut img: Vec<usize> = a
            .points
            .iter()
            .map(|&i| pg.point_index(&phi_point(&pg, &pg.point_at(i))))
            .collect();
        img.sort_unstable();
        assert_eq!(img, b.points);
    }

    #[test]
    fn fig_block_rejects_non_type_iii() {
        let pg = plane(3);
        let one = pg.point([Elem::ONE; 3]).unwrap();
        assert!(matches!(
            fig_block(&pg, &one),
            Err(GeometryError::NotTypeIII { .. })
        ));
    }

    #[test]
    fn tri_index_is_dense() {
        let n = 7;
        let mut seen = vec![false; n * (n - 1) / 2];
        for a in 0..n {
            for b in a + 1..n {
                assert!(!std::mem::replace(&mut seen[tri(n, a, b)], true));
            }
        }
        assert!(seen.into_iter().all(|x| x));
    }

    #[test]
    fn fano_plane_passes_and_mutant_fails() {
        let fano: Vec<Vec<u32>> = vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ];
        let mut plane = IncidencePlane {
            order: 2,
            npoints: 7,
            blocks: fano,
            tags: vec![BlockTag::TypeILine; 7],
        };
        assert!(check_axioms(&plane, PairMode::Full).passed());
        assert!(check_axioms(
            &plane,
            PairMode::Sampled {
                pairs: 200,
                seed: 1
            }
        )
        .passed());
        plane.blocks[6] = vec![2, 4, 6];
        let r = check_axioms(&plane, PairMode::Full);
        assert!(!r.passed());
        assert!(r.violations.contains(&AxiomViolation::PointPair {
            a: 2,
            b: 5,
            blocks: 0
        }));
    }

    #[test]
    fn small_order_is_rejected() {
        let pg = plane(2);
        let types = TypeTables::compute(&pg);
        assert_eq!(
            build_fig_plane(&pg, &types),
            Err(GeometryError::SmallOrder(2))
        );
    }

    #[test]
    fn emitted_header() {
        let plane = IncidencePlane {
            order: 2,
            npoints: 7,
            blocks: vec![vec![0, 1, 2]],
            tags: vec![BlockTag::FigBlock],
        };
        let mut out = Vec::new();
        plane.write_blocks(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "FIG 2 7\n0 1 2\n");
    }
}
