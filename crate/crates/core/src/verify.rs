//! Runs the exhaustive checks and collects them into a report.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::collineation::{
    norm_identity_check, orbit_under_st, partition_and_census, phi_point, Category, Census,
    ObjType, Partition, Side, TypeTables,
};
use crate::error::{FieldError, GeometryError};
use crate::field::{poly, prime_power, Elem, Field, FieldSpec};
use crate::figueroa::{
    arching_census, build_fig_plane, characterize_fig_points, check_axioms, even_structure_check,
    expected_pr_fig_block, fig_block, non_collinear_witness, phi_invariant, pr_fig_block,
    sp_mu_bijection_check, BlockTag, IncidencePlane, PairMode,
};
use crate::linalg::det3;
use crate::maps::{
    mu_fixed_planes, mu_line, mu_line_image, mu_pt, mu_pt_image, phi_fixed_planes, plane_classes,
    pr_set, project_from_vertex, scan_mu_fixed_planes, scan_phi_fixed_planes, sp_set,
    vertex_images, ImageKind, MuImage,
};
use crate::plane::{frame, Plane};
use crate::special::{
    classify_sls_set, is_subplane, norm_class_reps, p2q, pencil_lines, pencil_type, phi_plane,
    plane_from_rep, sls_points, t_plane, SlsId,
};

pub const TOOL: &str = "pgfig";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Sampled pair count for the axiom check when the full table is too big.
pub const SAMPLED_PAIRS: u64 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Census,
    Maps,
    Figueroa,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "census" => Ok(Suite::Census),
            "maps" => Ok(Suite::Maps),
            "figueroa" => Ok(Suite::Figueroa),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?}")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Census => "census",
            Suite::Maps => "maps",
            Suite::Figueroa => "figueroa",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub suite: Suite,
    /// Restricts the run to these check ids (or id prefixes) when nonempty.
    pub checks: Vec<String>,
    pub seed: u64,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
    pub full_pairs: bool,
    pub timings: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl RunConfig {
    pub fn new(q: u64, suite: Suite) -> Result<Self, ConfigError> {
        let (p, k) = prime_power(q).ok_or(ConfigError::NotPrimePower(q))?;
        Ok(RunConfig {
            q,
            p,
            k,
            suite,
            checks: Vec::new(),
            seed: 0,
            jobs: 0,
            full_pairs: false,
            timings: false,
        })
    }

    /// Rejects configurations that cannot run, before any work is done.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let selected = self.selected();
        for c in &self.checks {
            if !CHECKS.iter().any(|d| matches_filter(d.id, c)) {
                return Err(ConfigError::UnknownCheck(c.clone()));
            }
        }
        if self.q < 3 && selected.iter().any(|d| d.suite == Suite::Figueroa) {
            return Err(GeometryError::SmallOrder(self.q).into());
        }
        Ok(())
    }

    /// Checks that will run, in registry order.
    pub fn selected(&self) -> Vec<&'static CheckDef> {
        CHECKS
            .iter()
            .filter(|d| {
                if !self.checks.is_empty() {
                    return self.checks.iter().any(|c| matches_filter(d.id, c));
                }
                match self.suite {
                    // Desk-scale default: only the census suite beyond q = 5.
                    Suite::All => self.q <= 5 || d.suite == Suite::Census,
                    s => d.suite == s,
                }
            })
            .collect()
    }
}

fn matches_filter(id: &str, filter: &str) -> bool {
    id == filter
        || id.strip_prefix(filter).is_some_and(|r| r.starts_with('.'))
        || id.rsplit('.').next() == Some(filter)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub claim: &'static str,
    pub anchor: &'static str,
    pub status: Status,
    pub counts: Value,
    pub witnesses: Vec<String>,
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportHeader {
    pub tool: &'static str,
    pub version: &'static str,
    pub field: FieldSpec,
    pub config: RunConfig,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub header: ReportHeader,
    pub checks: Vec<CheckEntry>,
    /// Category counts keyed by name, when the census ran.
    pub census: Option<Value>,
    pub passed: bool,
    /// The census as CSV rows, when the census ran.
    #[serde(skip)]
    pub census_csv: Option<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let n = |s| self.checks.iter().filter(|c| c.status == s).count();
        (n(Status::Pass), n(Status::Fail), n(Status::Skipped))
    }
}

pub struct CheckDef {
    pub id: &'static str,
    pub suite: Suite,
    pub anchor: &'static str,
    run: fn(&Ctx) -> Outcome,
}

struct Outcome {
    status: Status,
    counts: Value,
    witnesses: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, counts: Value, witnesses: Vec<String>) -> Self {
        Outcome {
            status: if pass { Status::Pass } else { Status::Fail },
            counts,
            witnesses,
        }
    }

    fn skipped(reason: &str) -> Self {
        Outcome {
            status: Status::Skipped,
            counts: json!({ "reason": reason }),
            witnesses: Vec::new(),
        }
    }
}

/// Records failures with at most a few witnesses each.
#[derive(Default)]
struct Witnesses(Vec<String>, usize);

impl Witnesses {
    fn fail(&mut self, w: impl FnOnce() -> String) {
        self.1 += 1;
        if self.0.len() < 8 {
            self.0.push(w());
        }
    }

    fn ok(&self) -> bool {
        self.1 == 0
    }
}

pub struct Ctx {
    pub cfg: RunConfig,
    pub pg: Plane,
    types: OnceLock<TypeTables>,
    part: OnceLock<Result<Partition, GeometryError>>,
    fig: OnceLock<Result<IncidencePlane, GeometryError>>,
}

impl Ctx {
    pub fn new(cfg: RunConfig) -> Result<Self, ConfigError> {
        let field = Field::new(cfg.p as u32, cfg.k)?;
        Ok(Ctx {
            cfg,
            pg: Plane::new(field),
            types: OnceLock::new(),
            part: OnceLock::new(),
            fig: OnceLock::new(),
        })
    }

    fn f(&self) -> &Field {
        self.pg.field()
    }

    fn q(&self) -> u64 {
        self.cfg.q
    }

    pub fn types(&self) -> &TypeTables {
        self.types.get_or_init(|| TypeTables::compute(&self.pg))
    }

    fn part(&self) -> Result<&Partition, String> {
        self.part
            .get_or_init(|| partition_and_census(&self.pg))
            .as_ref()
            .map_err(|e| e.to_string())
    }

    fn fig_plane(&self) -> Result<&IncidencePlane, String> {
        self.fig
            .get_or_init(|| build_fig_plane(&self.pg, self.types()))
            .as_ref()
            .map_err(|e| e.to_string())
    }

    fn pt(&self, i: usize) -> String {
        self.pg.point_at(i).to_string()
    }

    fn pair_mode(&self) -> PairMode {
        if self.q() <= 4 || self.cfg.full_pairs {
            PairMode::Full
        } else {
            PairMode::Sampled {
                pairs: SAMPLED_PAIRS,
                seed: self.cfg.seed,
            }
        }
    }
}

/// Runs the selected checks in registry order inside a pool of
/// `cfg.jobs` workers.
pub fn run(cfg: RunConfig) -> Result<Report, ConfigError> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if cfg.jobs > 0 {
        builder = builder.num_threads(cfg.jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| ConfigError::Pool(e.to_string()))?;
    let ctx = Ctx::new(cfg)?;
    Ok(pool.install(|| run_in(&ctx)))
}

fn run_in(ctx: &Ctx) -> Report {
    let mut checks = Vec::new();
    for def in ctx.cfg.selected() {
        let t0 = Instant::now();
        let out = (def.run)(ctx);
        let elapsed = t0.elapsed().as_millis() as u64;
        checks.push(CheckEntry {
            claim: def.id,
            anchor: def.anchor,
            status: out.status,
            counts: out.counts,
            witnesses: out.witnesses,
            elapsed_ms: ctx.cfg.timings.then_some(elapsed),
        });
    }
    let part = checks
        .iter()
        .any(|c| c.claim == "census.orbits")
        .then(|| ctx.part().ok())
        .flatten();
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Report {
        header: ReportHeader {
            tool: TOOL,
            version: VERSION,
            field: ctx.f().spec(),
            config: ctx.cfg.clone(),
        },
        checks,
        census: part.map(|p| census_json(&p.census)),
        passed,
        census_csv: part.map(|p| census_csv(&ctx.pg, p)),
    }
}

pub fn census_json(c: &Census) -> Value {
    let mut m = serde_json::Map::new();
    for cat in Category::ALL {
        m.insert(cat.name().to_string(), json!(c.count(cat)));
    }
    Value::Object(m)
}

/// One CSV row per category: `category,count,orbit_size,point_type,line_type`.
pub fn census_csv(pg: &Plane, part: &Partition) -> String {
    let mut out = String::from("category,count,orbit_size,point_type,line_type\n");
    for cat in Category::ALL {
        let cls: Vec<_> = part.classes.iter().filter(|c| c.category == cat).collect();
        let size = if cat == Category::FixedPoint {
            1
        } else {
            let q = pg.q() as usize;
            q * q + q + 1
        };
        let pt = cls
            .first()
            .map(|c| c.point_type.to_string())
            .unwrap_or_default();
        let lt = cls
            .first()
            .and_then(|c| c.line_type)
            .map(|t| t.to_string())
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            cat.name(),
            cls.len(),
            size,
            pt,
            lt
        ));
    }
    out
}

macro_rules! check {
    ($id:literal, $suite:ident, $anchor:literal, $f:ident) => {
        CheckDef {
            id: $id,
            suite: Suite::$suite,
            anchor: $anchor,
            run: $f,
        }
    };
}

pub static CHECKS: &[CheckDef] = &[
    check!(
        "field.tower",
        Census,
        "field tower GF(p) < GF(q) < GF(q^3)",
        c_field
    ),
    check!(
        "plane.counts",
        Census,
        "size and indexing of PG(2,q^3)",
        c_plane_counts
    ),
    check!(
        "plane.axioms",
        Census,
        "PG(2,q^3) is a projective plane",
        c_plane_axioms
    ),
    check!(
        "census.orbits",
        Census,
        "seven-category orbit census",
        c_census
    ),
    check!(
        "census.types",
        Census,
        "point and line type counts",
        c_types
    ),
    check!(
        "census.phi_permutes",
        Census,
        "phi permutes the orbit classes",
        c_phi_permutes
    ),
    check!(
        "census.norm_identity",
        Census,
        "norm identity for A_P and A_l",
        c_norm_identity
    ),
    check!(
        "special.sls",
        Census,
        "T-slses and their norm classes",
        c_sls
    ),
    check!(
        "special.pencils",
        Census,
        "types of T-sls pencils",
        c_pencils
    ),
    check!(
        "special.tplanes",
        Census,
        "T-planes and generic F_q-planes",
        c_tplanes
    ),
    check!(
        "maps.mu_involution",
        Maps,
        "mu is an involution on Type III objects",
        c_mu_involution
    ),
    check!("maps.mu_tplanes", Maps, "mu on T-planes", c_mu_tplanes),
    check!(
        "maps.mu_planes",
        Maps,
        "mu maps qualifying planes into orb(S_T)",
        c_mu_planes
    ),
    check!(
        "maps.pr_sp",
        Maps,
        "projection and splash of T-planes",
        c_pr_sp
    ),
    check!("maps.fixed", Maps, "planes fixed by phi and by mu", c_fixed),
    check!(
        "maps.vertex_projection",
        Maps,
        "projection of Pi_theta from a vertex in Pi_kappa",
        c_vertex_projection
    ),
    check!(
        "maps.vertex_spectrum",
        Maps,
        "projection-vertex counts for T-planes",
        c_vertex_spectrum
    ),
    check!(
        "maps.images",
        Maps,
        "projection images are scattered or clubs",
        c_images
    ),
    check!("figueroa.block", Figueroa, "structure of Fig(T)", c_block),
    check!(
        "figueroa.block_sizes",
        Figueroa,
        "Fig-block size for every anchor",
        c_block_sizes
    ),
    check!("figueroa.build", Figueroa, "blocks of FIG(q^3)", c_build),
    check!(
        "figueroa.phi_invariant",
        Figueroa,
        "FIG(q^3) is phi-invariant",
        c_fig_phi
    ),
    check!(
        "figueroa.axioms",
        Figueroa,
        "FIG(q^3) is a projective plane",
        c_axioms
    ),
    check!(
        "figueroa.mutation",
        Figueroa,
        "axiom check rejects a replaced block",
        c_mutation
    ),
    check!(
        "figueroa.pr_t",
        Figueroa,
        "projection of Fig(T) from T",
        c_pr_t
    ),
    check!(
        "figueroa.pr_t_phi",
        Figueroa,
        "projection of Fig(T^phi) from T",
        c_pr_t_phi
    ),
    check!(
        "figueroa.pr_t_phi2",
        Figueroa,
        "projection of Fig(T^phi^2) from T",
        c_pr_t_phi2
    ),
    check!(
        "figueroa.arching",
        Figueroa,
        "pencils arching over T-planes",
        c_arching
    ),
    check!(
        "figueroa.fig_points",
        Figueroa,
        "Fig(T) via projections of P_{2,q}",
        c_fig_points
    ),
    check!(
        "figueroa.vertex_census",
        Figueroa,
        "projection vertices of P_{2,q}",
        c_vertex_census
    ),
    check!(
        "figueroa.even_structure",
        Figueroa,
        "even-q pencil structure of Fig(T)",
        c_even
    ),
    check!("figueroa.sp_mu", Figueroa, "Sp after mu on Fig(T)", c_sp_mu),
];

fn c_field(ctx: &Ctx) -> Outcome {
    let f = ctx.f();
    let mut w = Witnesses::default();
    let order = f.order() as u64;
    for d in crate::field::prime_factors(order) {
        if f.pow(f.gen(), order / d) == Elem::ONE {
            w.fail(|| format!("generator has order dividing {}", order / d));
        }
    }
    if f.pow(f.gen(), order) != Elem::ONE {
        w.fail(|| "generator^(q^3-1) != 1".into());
    }
    let sub = f.base_subfield();
    if sub.len() as u64 != ctx.q() {
        w.fail(|| format!("base subfield has {} elements", sub.len()));
    }
    for &a in &sub {
        for &b in &sub {
            if !f.in_base_subfield(f.add(a, b)) || !f.in_base_subfield(f.mul(a, b)) {
                w.fail(|| format!("subfield not closed at {a}, {b}"));
            }
        }
    }
    if !poly::is_irreducible(f.modulus(), f.p()) {
        w.fail(|| format!("modulus {:?} is reducible", f.modulus()));
    }
    let again = Field::new(f.p(), f.k()).expect("same parameters");
    if again.spec() != f.spec() {
        w.fail(|| "construction is not deterministic".into());
    }
    let mut fibre = vec![0u64; f.size() as usize];
    for x in f.nonzero() {
        fibre[f.norm(x).raw() as usize] += 1;
    }
    if fibre
        .iter()
        .any(|&c| c != 0 && c != f.norm_exponent() as u64)
    {
        w.fail(|| "norm fibres are not of size q^2+q+1".into());
    }
    Outcome::new(
        w.ok(),
        json!({ "q3": f.size(), "subfield": sub.len(), "modulus": f.modulus() }),
        w.0,
    )
}

fn c_plane_counts(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let q3 = pg.field().size() as usize;
    let n = q3 * q3 + q3 + 1;
    let mut w = Witnesses::default();
    if pg.size() != n || pg.points().count() != n || pg.lines().count() != n {
        w.fail(|| format!("expected {n} points and lines"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
    for _ in 0..100 {
        let i = rng.gen_range(0..n);
        let l = pg.line_at(i);
        let pts = pg.points_on(&l);
        if pts.len() != q3 + 1 || pts.iter().any(|p| !pg.incident(p, &l)) {
            w.fail(|| format!("line {l} does not carry q^3+1 points"));
        }
        if pg.point_index(&pg.point_at(i)) != i || pg.line_index(&l) != i {
            w.fail(|| format!("index {i} does not round-trip"));
        }
    }
    Outcome::new(w.ok(), json!({ "points": n, "line_size": q3 + 1 }), w.0)
}

fn c_plane_axioms(ctx: &Ctx) -> Outcome {
    if ctx.q() > 5 {
        return Outcome::skipped("block table too large beyond q = 5");
    }
    let plane = IncidencePlane::desarguesian(&ctx.pg, ctx.types());
    axiom_outcome(ctx, &plane, ctx.pair_mode())
}

fn axiom_outcome(ctx: &Ctx, plane: &IncidencePlane, mode: PairMode) -> Outcome {
    let r = check_axioms(plane, mode);
    let witnesses = r
        .violations
        .iter()
        .map(|v| match *v {
            crate::figueroa::AxiomViolation::BlockSize { block, size } => {
                format!("block {block} has {size} points")
            }
            crate::figueroa::AxiomViolation::PointDegree { point, degree } => {
                format!("point {} lies in {degree} blocks", ctx.pt(point))
            }
            crate::figueroa::AxiomViolation::PointPair { a, b, blocks } => {
                format!(
                    "points {} and {} share {blocks} blocks",
                    ctx.pt(a),
                    ctx.pt(b)
                )
            }
            crate::figueroa::AxiomViolation::BlockPair { a, b, common } => {
                format!("blocks {a} and {b} share {common} points")
            }
        })
        .collect();
    Outcome::new(
        r.passed(),
        json!({
            "mode": r.mode,
            "points": r.points,
            "blocks": r.blocks,
            "point_pairs_checked": r.point_pairs_checked,
            "block_pairs_checked": r.block_pairs_checked,
            "violations": r.violation_count,
        }),
        witnesses,
    )
}

fn c_census(ctx: &Ctx) -> Outcome {
    let part = match ctx.part() {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, json!({}), vec![e]),
    };
    let expected = Census::expected(ctx.q());
    let c = &part.census;
    let mut w = Witnesses::default();
    for (i, cat) in Category::ALL.iter().enumerate() {
        if c.counts[i] != expected[i] {
            w.fail(|| {
                format!(
                    "{}: {} orbits, expected {}",
                    cat.name(),
                    c.counts[i],
                    expected[i]
                )
            });
        }
    }
    if c.points as usize != ctx.pg.size() {
        w.fail(|| format!("orbits cover {} points", c.points));
    }
    let n = ctx.q() * ctx.q() + ctx.q() + 1;
    for cls in &part.classes {
        let len = cls.members.len() as u64;
        if len != 1 && len != n {
            w.fail(|| format!("orbit of {} has size {len}", ctx.pt(cls.representative)));
        }
    }
    Outcome::new(
        w.ok(),
        json!({
            "orbits": c.orbits,
            "counts": census_json(c),
            "expected": expected,
        }),
        w.0,
    )
}

fn c_types(ctx: &Ctx) -> Outcome {
    let t = ctx.types();
    let q = ctx.q();
    let n = ctx.pg.size() as u64;
    let one = q * q + q + 1;
    let two = (q * q * q - q) * one;
    let expected = [one, two, n - one - two];
    let pc = t.point_counts();
    let lc = t.line_counts();
    let mut w = Witnesses::default();
    if pc != expected {
        w.fail(|| format!("point types {pc:?}, expected {expected:?}"));
    }
    if lc != pc {
        w.fail(|| format!("line types {lc:?} differ from point types {pc:?}"));
    }
    let fixed = (0..ctx.pg.size())
        .filter(|&i| {
            let p = ctx.pg.point_at(i);
            phi_point(&ctx.pg, &p) == p
        })
        .count() as u64;
    if fixed != one {
        w.fail(|| format!("{fixed} phi-fixed points"));
    }
    Outcome::new(
        w.ok(),
        json!({ "points": pc, "lines": lc, "expected": expected }),
        w.0,
    )
}

fn c_phi_permutes(ctx: &Ctx) -> Outcome {
    let part = match ctx.part() {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, json!({}), vec![e]),
    };
    let pg = &ctx.pg;
    let mut w = Witnesses::default();
    for cls in &part.classes {
        let mut img: Vec<usize> = cls
            .members
            .iter()
            .map(|&i| pg.point_index(&phi_point(pg, &pg.point_at(i))))
            .collect();
        img.sort_unstable();
        let target = part.class_of_point(img[0]);
        if target.members != img || target.category != cls.category {
            w.fail(|| {
                format!(
                    "image of the orbit of {} is not an orbit of the same kind",
                    ctx.pt(cls.representative)
                )
            });
        }
    }
    Outcome::new(w.ok(), json!({ "classes": part.classes.len() }), w.0)
}

fn c_norm_identity(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let f = ctx.f();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
    let mut w = Witnesses::default();
    let order = f.order() as u64;
    let samples = 10_000;
    for _ in 0..samples {
        let c = [0; 3].map(|_: u8| f.from_log(rng.gen_range(0..order)));
        let p = pg.point(c).expect("nonzero");
        if norm_identity_check(pg, &p) != Ok(true) {
            w.fail(|| format!("identity fails at {p}"));
        }
    }
    // Type II points with xyz != 0: Norm(X) = -det A_l != 0.
    let mut type_ii = 0;
    for (i, &t) in ctx.types().points.iter().enumerate() {
        let p = pg.point_at(i);
        if t != ObjType::II || p.coords().iter().any(|c| c.is_zero()) {
            continue;
        }
        type_ii += 1;
        if ctx.q() > 4 && type_ii > 2000 {
            break;
        }
        let [x, y, z] = p.coords();
        let big_x = f.sub(f.mul(x, f.frob(x, 1)), f.mul(y, f.frob(z, 1)));
        let raw = [f.mul(y, z), f.mul(z, x), f.mul(x, y)];
        let fr = |a: Elem, i: u32| f.frob(a, i);
        let a_l = [
            [raw[0], fr(raw[2], 1), fr(raw[1], 2)],
            [raw[1], fr(raw[0], 1), fr(raw[2], 2)],
            [raw[2], fr(raw[1], 1), fr(raw[0], 2)],
        ];
        let rhs = f.neg(det3(f, a_l));
        if f.norm(big_x) != rhs || rhs.is_zero() {
            w.fail(|| {
                format!(
                    "Type II point {p}: Norm(X) = {}, -det A_l = {rhs}",
                    f.norm(big_x)
                )
            });
        }
    }
    Outcome::new(
        w.ok(),
        json!({ "random_points": samples, "type_ii_points": type_ii }),
        w.0,
    )
}

fn c_sls(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let f = ctx.f();
    let mut w = Witnesses::default();
    let mut slses = 0;
    for side in Side::ALL {
        let mut all = Vec::new();
        for th in norm_class_reps(f) {
            let pts = sls_points(pg, th, side).expect("nonzero");
            slses += 1;
            let id = SlsId::new(f, side, th).expect("nonzero");
            if classify_sls_set(pg, &pts) != Some(id) {
                w.fail(|| format!("{id} is not recognised"));
            }
            let expect = if f.norm(th) == f.neg_one() {
                ObjType::II
            } else {
                ObjType::III
            };
            if let Some(&bad) = pts.iter().find(|&&i| ctx.types().points[i] != expect) {
                w.fail(|| format!("{} in {id} has the wrong type", ctx.pt(bad)));
            }
            if side == Side::T && orbit_under_st(pg, &pg.point_at(pts[0])) != pts {
                w.fail(|| format!("{id} is not an orbit"));
            }
            all.extend(pts);
        }
        all.sort_unstable();
        let mut expect: Vec<usize> = pg
            .points_on(&side.line())
            .iter()
            .filter(|p| Side::of_point(p).is_some())
            .map(|p| pg.point_index(p))
            .collect();
        expect.sort_unstable();
        if all != expect {
            w.fail(|| format!("slses on side {side} do not partition the side"));
        }
    }
    // Equal sets exactly for equal norms.
    for a in f.nonzero().step_by(7) {
        for b in f.nonzero().step_by(11) {
            let same = sls_points(pg, a, Side::T).ok() == sls_points(pg, b, Side::T).ok();
            if same != (f.norm(a) == f.norm(b)) {
                w.fail(|| format!("S_{a} vs S_{b}"));
            }
        }
    }
    Outcome::new(
        w.ok(),
        json!({ "slses": slses, "per_side": f.q() - 1 }),
        w.0,
    )
}

fn c_pencils(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let f = ctx.f();
    let mut w = Witnesses::default();
    let (mut ii, mut iii) = (0, 0);
    let minus_one = f.neg_one();
    for th in norm_class_reps(f) {
        let id = SlsId::new(f, Side::T, th).expect("nonzero");
        let expect = pencil_type(pg, th).expect("nonzero");
        match expect {
            ObjType::II => ii += 1,
            _ => iii += 1,
        }
        for l in pencil_lines(pg, id) {
            if ctx.types().lines[l] != expect {
                w.fail(|| format!("line {} of the pencil over {id}", pg.line_at(l)));
            }
        }
        // Type of the sls the pencil meets m_T in.
        let sls_t = ctx.types().points[sls_points(pg, th, Side::T).expect("nonzero")[0]];
        let want = if f.norm(th) == minus_one {
            ObjType::II
        } else {
            ObjType::III
        };
        if sls_t != want {
            w.fail(|| format!("pencil over {id} meets m_T in a Type {sls_t} sls"));
        }
    }
    if (ii, iii) != (1, ctx.q() - 2) {
        w.fail(|| format!("{ii} Type II and {iii} Type III pencils"));
    }
    // Parity table: which pencil meets m_T in the Type II sls.
    let ii_sls_pencil = pencil_type(pg, minus_one).expect("nonzero");
    let want = if ctx.q().is_multiple_of(2) {
        ObjType::II
    } else {
        ObjType::III
    };
    if ii_sls_pencil != want {
        w.fail(|| format!("pencil over S_-1 has Type {ii_sls_pencil}"));
    }
    Outcome::new(
        w.ok(),
        json!({ "type_ii_pencils": ii, "type_iii_pencils": iii }),
        w.0,
    )
}

fn c_tplanes(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let f = ctx.f();
    let mut w = Witnesses::default();
    let mut distinct: Vec<Vec<usize>> = Vec::new();
    for th in norm_class_reps(f) {
        let b = t_plane(pg, th).expect("nonzero");
        if !is_subplane(pg, &b) {
            w.fail(|| format!("Pi_{th} is not a subplane"));
        }
        let rep = pg
            .point([f.mul(th, f.frob(th, 1)), Elem::ONE, th])
            .expect("nonzero");
        let c = plane_from_rep(pg, &rep).expect("xyz != 0");
        if (&c.points, &c.lines) != (&b.points, &b.lines) {
            w.fail(|| format!("orbit of {rep} differs from Pi_{th}"));
        }
        if f.norm(th) != Elem::ONE {
            let t = ctx.types();
            if b.points.iter().any(|&i| t.points[i] != ObjType::III)
                || b.lines.iter().any(|&i| t.lines[i] != ObjType::III)
            {
                w.fail(|| format!("Pi_{th} has objects of Type I or II"));
            }
        }
        for n in 1..3 {
            if !is_subplane(pg, &phi_plane(pg, &b, n)) {
                w.fail(|| format!("phi^{n} image of Pi_{th} is not a subplane"));
            }
        }
        distinct.push(b.points);
    }
    // Equal planes for equal norms, on a sample of thetas.
    for th in f.nonzero().step_by(5) {
        let rep = norm_class_reps(f)
            .into_iter()
            .find(|&r| f.norm(r) == f.norm(th))
            .expect("rep");
        if t_plane(pg, th).ok().map(|b| b.points) != t_plane(pg, rep).ok().map(|b| b.points) {
            w.fail(|| format!("Pi_{th} differs from Pi_{rep}"));
        }
    }
    let one = pg.point([Elem::ONE; 3]).expect("nonzero");
    let fixed: Vec<usize> = {
        let mut v: Vec<usize> = f
            .nonzero()
            .map(|x| pg.point_index(&pg.point([x, f.frob(x, 1), f.frob(x, 2)]).expect("nonzero")))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    if p2q(pg).points != fixed || plane_from_rep(pg, &one).map(|b| b.points).ok() != Some(fixed) {
        w.fail(|| "Pi_1 is not P_{2,q}".into());
    }
    let before = distinct.len();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != before {
        w.fail(|| format!("only {} distinct T-planes", distinct.len()));
    }
    Outcome::new(w.ok(), json!({ "t_planes": distinct.len() }), w.0)
}

fn c_mu_involution(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let t = ctx.types();
    let mut w = Witnesses::default();
    let (mut np, mut nl) = (0, 0);
    for i in 0..pg.size() {
        if t.points[i] == ObjType::III {
            np += 1;
            let p = pg.point_at(i);
            let l = mu_pt(pg, &p).expect("Type III");
            if t.lines[pg.line_index(&l)] != ObjType::III || mu_line(pg, &l).ok() != Some(p) {
                w.fail(|| format!("mu(mu({p})) != {p}"));
            }
        } else if mu_pt(pg, &pg.point_at(i)).is_ok() {
            w.fail(|| format!("mu defined at Type {} point {}", t.points[i], ctx.pt(i)));
        }
        if t.lines[i] == ObjType::III {
            nl += 1;
            let l = pg.line_at(i);
            let p = mu_line(pg, &l).expect("Type III");
            if mu_pt(pg, &p).ok() != Some(l) {
                w.fail(|| format!("mu(mu({l})) != {l}"));
            }
        }
    }
    Outcome::new(
        w.ok(),
        json!({ "type_iii_points": np, "type_iii_lines": nl }),
        w.0,
    )
}

fn c_mu_tplanes(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let f = ctx.f();
    let mut w = Witnesses::default();
    let mut n = 0;
    for th in f.nonzero().filter(|&t| f.norm(t) != Elem::ONE) {
        n += 1;
        let b = t_plane(pg, th).expect("nonzero");
        let inv = f.inv(th).expect("nonzero");
        let want_l = SlsId::new(f, Side::T, f.neg(inv)).expect("nonzero");
        let want_p = SlsId::new(f, Side::T, inv).expect("nonzero");
        let got_l = mu_line_image(pg, &b);
        if got_l != Ok(MuImage::Sls(want_l)) {
            w.fail(|| format!("mu_line(Pi_{th}) = {got_l:?}, expected {want_l}"));
        }
        let got_p = mu_pt_image(pg, &b);
        if got_p != Ok(MuImage::Pencil(want_p)) {
            w.fail(|| format!("mu_pt(Pi_{th}) = {got_p:?}, expected pencil over {want_p}"));
        }
        // The phi-conjugate statements on the other sides.
        for side in [Side::TPhi, Side::TPhi2] {
            let c = phi_plane(pg, &b, side.phi_power());
            let want = MuImage::Sls(SlsId { side, ..want_l });
            if mu_line_image(pg, &c).as_ref() != Ok(&want) {
                w.fail(|| format!("mu_line of the {side}-image of Pi_{th}"));
            }
            let want = MuImage::Pencil(SlsId { side, ..want_p });
            if mu_pt_image(pg, &c).as_ref() != Ok(&want) {
                w.fail(|| format!("mu_pt of the {side}-image of Pi_{th}"));
            }
        }
    }
    Outcome::new(w.ok(), json!({ "thetas": n }), w.0)
}

fn c_mu_planes(ctx: &Ctx) -> Outcome {
    let part = match ctx.part() {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, json!({}), vec![e]),
    };
    let pg = &ctx.pg;
    let t = ctx.types();
    let mut w = Witnesses::default();
    let (mut by_lines, mut by_points) = (0, 0);
    let in_partition = |img: &MuImage| match img {
        MuImage::Sls(_) | MuImage::Pencil(_) => true,
        MuImage::Plane(b) => part.class_of_point(b.points[0]).members == b.points,
    };
    for b in plane_classes(pg, part) {
        if b.lines.iter().all(|&i| t.lines[i] == ObjType::III) {
            by_lines += 1;
            match mu_line_image(pg, &b) {
                Ok(img) if in_partition(&img) => {}
                other => w.fail(|| {
                    format!(
                        "mu_line of the plane through {}: {other:?}",
                        ctx.pt(b.points[0])
                    )
                }),
            }
        }
        if b.points.iter().all(|&i| t.points[i] == ObjType::III) {
            by_points += 1;
            match mu_pt_image(pg, &b) {
                Ok(img) if in_partition(&img) => {}
                other => w.fail(|| {
                    format!(
                        "mu_pt of the plane through {}: {other:?}",
                        ctx.pt(b.points[0])
                    )
                }),
            }
        }
    }
    Outcome::new(
        w.ok(),
        json!({ "planes_by_lines": by_lines, "planes_by_points": by_points }),
        w.0,
    )
}

fn c_pr_sp(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let f = ctx.f();
    let mut w = Witnesses::default();
    let mut n = 0;
    let mut pr_eq_sp = 0;
    for th in f.nonzero() {
        n += 1;
        let b = t_plane(pg, th).expect("nonzero");
        let sq = f.mul(th, th);
        let pr = pr_set(pg, &b).expect("T not in Pi_theta");
        let sp = sp_set(pg, &b).expect("m_T not in Pi_theta");
        let want_pr = SlsId::new(f, Side::T, sq).expect("nonzero");
        let want_sp = SlsId::new(f, Side::T, f.neg(sq)).expect("nonzero");
        if pr.sls() != Some(want_pr) {
            w.fail(|| format!("Pr(Pi_{th}) is {:?}, expected {want_pr}", pr.kind));
        }
        if sp.sls() != Some(want_sp) {
            w.fail(|| format!("Sp(Pi_{th}) is {:?}, expected {want_sp}", sp.kind));
        }
        if project_from_vertex(pg, &frame::T, &b).ok().as_ref() != Some(&pr) {
            w.fail(|| format!("projection from the vertex T disagrees with Pr on Pi_{th}"));
        }
        pr_eq_sp += (pr.points == sp.points) as usize;
    }
    let even = ctx.q().is_multiple_of(2);
    if (pr_eq_sp == n) != even || (!even && pr_eq_sp != 0) {
        w.fail(|| format!("Pr = Sp for {pr_eq_sp} of {n} T-planes"));
    }
    // Parity table for P_{2,q} and Pi_{-1}.
    let s1 = sls_points(pg, Elem::ONE, Side::T).expect("1 != 0");
    let sm1 = sls_points(pg, f.neg_one(), Side::T).expect("-1 != 0");
    let base = p2q(pg);
    let pm1 = t_plane(pg, f.neg_one()).expect("-1 != 0");
    let pr = |b| pr_set(pg, b).map(|i| i.points).ok();
    let sp = |b| sp_set(pg, b).map(|i| i.points).ok();
    let table_ok = if even {
        pr(&base).as_ref() == Some(&s1) && sp(&base).as_ref() == Some(&s1)
    } else {
        pr(&base).as_ref() == Some(&s1)
            && pr(&pm1).as_ref() == Some(&s1)
            && sp(&base).as_ref() == Some(&sm1)
            && sp(&pm1).as_ref() == Some(&sm1)
    };
    if !table_ok {
        w.fail(|| "Pr/Sp of P_{2,q} and Pi_{-1} do not match the parity table".into());
    }
    Outcome::new(
        w.ok(),
        json!({ "thetas": n, "pr_equals_sp": pr_eq_sp }),
        w.0,
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn c_fixed(ctx: &Ctx) -> Outcome {
    let part = match ctx.part() {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, json!({}), vec![e]),
    };
    let pg = &ctx.pg;
    let t = ctx.types();
    let mut w = Witnesses::default();
    let sorted = |v: Vec<crate::special::SubplaneSet>| {
        let mut v: Vec<Vec<usize>> = v.into_iter().map(|b| b.points).collect();
        v.sort();
        v
    };
    let phi_closed = phi_fixed_planes(pg);
    let mu_closed = mu_fixed_planes(pg);
    let phi_scan = sorted(scan_phi_fixed_planes(pg, part));
    let mu_scan = sorted(scan_mu_fixed_planes(pg, part));
    let g = gcd(3, ctx.q() - 1) as usize;
    if phi_scan.len() != g || sorted(phi_closed.clone()) != phi_scan {
        w.fail(|| format!("{} phi-fixed planes by scan, {g} expected", phi_scan.len()));
    }
    if mu_scan.len() != g - 1 || sorted(mu_closed.clone()) != mu_scan {
        w.fail(|| {
            format!(
                "{} mu-fixed planes by scan, {} expected",
                mu_scan.len(),
                g - 1
            )
        });
    }
    if !phi_closed.iter().any(|b| b.points == p2q(pg).points) {
        w.fail(|| "P_{2,q} is not among the phi-fixed planes".into());
    }
    for b in &mu_closed {
        if b.points.iter().any(|&i| t.points[i] != ObjType::III)
            || b.lines.iter().any(|&i| t.lines[i] != ObjType::III)
        {
            w.fail(|| {
                format!(
                    "fixed plane through {} is not all Type III",
                    ctx.pt(b.points[0])
                )
            });
        }
    }
    let reps = |v: &[crate::special::SubplaneSet]| -> Vec<String> {
        v.iter().map(|b| ctx.pt(b.points[0])).collect()
    };
    Outcome::new(
        w.ok(),
        json!({
            "phi_fixed": phi_scan.len(),
            "mu_fixed": mu_scan.len(),
            "phi_fixed_reps": reps(&phi_closed),
            "mu_fixed_reps": reps(&mu_closed),
        }),
        w.0,
    )
}

fn c_vertex_projection(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let f = ctx.f();
    let mut w = Witnesses::default();
    let mut pairs = 0;
    let mut vertices = 0;
    for kappa in norm_class_reps(f) {
        let bk = t_plane(pg, kappa).expect("nonzero");
        for theta in norm_class_reps(f) {
            if f.norm(theta) == f.norm(kappa) {
                continue;
            }
            pairs += 1;
            let bt = t_plane(pg, theta).expect("nonzero");
            let want = SlsId::new(f, Side::T, f.neg(f.mul(kappa, theta))).expect("nonzero");
            for &v in &bk.points {
                vertices += 1;
                let img = project_from_vertex(pg, &pg.point_at(v), &bt);
                if img.as_ref().ok().and_then(|i| i.sls()) != Some(want) {
                    w.fail(|| {
                        format!("from {} Pi_{theta} does not project onto {want}", ctx.pt(v))
                    });
                }
            }
        }
    }
    Outcome::new(w.ok(), json!({ "pairs": pairs, "vertices": vertices }), w.0)
}

fn c_vertex_spectrum(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let f = ctx.f();
    let q = ctx.q() as usize;
    let n = q * q + q + 1;
    let admissible: Vec<usize> = if q.is_multiple_of(2) {
        vec![1, n]
    } else {
        vec![0, n, n + 1]
    };
    let mut w = Witnesses::default();
    let mut spectrum = std::collections::BTreeMap::<usize, usize>::new();
    for kappa in norm_class_reps(f) {
        let b = t_plane(pg, kappa).expect("nonzero");
        let images = vertex_images(pg, &b);
        for th in norm_class_reps(f) {
            let id = SlsId::new(f, Side::T, th).expect("nonzero");
            let c = images.iter().filter(|i| i.sls() == Some(id)).count();
            *spectrum.entry(c).or_default() += 1;
            if !admissible.contains(&c) {
                w.fail(|| format!("Pi_{kappa} has {c} projection vertices onto {id}"));
            }
        }
    }
    Outcome::new(
        w.ok(),
        json!({ "admissible": admissible, "observed": spectrum }),
        w.0,
    )
}

fn c_images(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let images = vertex_images(pg, &p2q(pg));
    let mut w = Witnesses::default();
    let (mut sc, mut club) = (0, 0);
    let mut club_ii = None;
    for img in &images {
        match img.kind {
            ImageKind::Scattered(_) => sc += 1,
            ImageKind::Club => {
                club += 1;
                let v = pg.point_index(&img.vertex);
                if club_ii.is_none() && ctx.types().points[v] == ObjType::II {
                    club_ii = Some(img.vertex.to_string());
                }
            }
            ImageKind::Other => {
                w.fail(|| format!("image from {} has {} points", img.vertex, img.points.len()))
            }
        }
    }
    if club_ii.is_none() {
        w.fail(|| "no Type II vertex gives a club".into());
    }
    Outcome::new(
        w.ok(),
        json!({ "scattered": sc, "clubs": club, "type_ii_club_vertex": club_ii }),
        w.0,
    )
}

fn c_block(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let f = ctx.f();
    let q = ctx.q() as usize;
    let n = q * q + q + 1;
    let fig = fig_block(pg, &frame::T).expect("T has Type III");
    let mut w = Witnesses::default();
    let q3 = f.size() as usize;
    if fig.points.len() != q3 + 1 {
        w.fail(|| format!("|Fig(T)| = {}", fig.points.len()));
    }
    if fig.e.len() != n {
        w.fail(|| format!("|E_T| = {}", fig.e.len()));
    }
    let mut expect_f = vec![
        pg.point_index(&frame::T_PHI),
        pg.point_index(&frame::T_PHI2),
    ];
    for th in norm_class_reps(f)
        .into_iter()
        .filter(|&t| f.norm(t) != Elem::ONE)
    {
        expect_f.extend(t_plane(pg, th).expect("nonzero").points);
    }
    expect_f.sort_unstable();
    if fig.f != expect_f {
        w.fail(|| "F_T is not {T^phi, T^phi^2} with the T-planes of norm != 1".into());
    }
    let sm1 = sls_points(pg, f.neg_one(), Side::T).expect("-1 != 0");
    if fig.e != sm1 {
        w.fail(|| "E_T is not S_-1".into());
    }
    let on_axis = fig
        .points
        .iter()
        .filter(|&&i| pg.incident(&pg.point_at(i), &frame::M_T))
        .count();
    if on_axis != n + 2 {
        w.fail(|| format!("Fig(T) meets m_T in {on_axis} points"));
    }
    let image = |b: &crate::figueroa::FigBlock| -> Vec<usize> {
        let mut v: Vec<usize> = b
            .points
            .iter()
            .map(|&i| pg.point_index(&phi_point(pg, &pg.point_at(i))))
            .collect();
        v.sort_unstable();
        v
    };
    let f1 = fig_block(pg, &frame::T_PHI).expect("Type III");
    let f2 = fig_block(pg, &frame::T_PHI2).expect("Type III");
    if image(&fig) != f1.points || image(&f1) != f2.points {
        w.fail(|| "Fig(T)^phi != Fig(T^phi)".into());
    }
    Outcome::new(
        w.ok(),
        json!({ "size": fig.points.len(), "e": fig.e.len(), "f": fig.f.len(), "on_m_t": on_axis }),
        w.0,
    )
}

fn c_block_sizes(ctx: &Ctx) -> Outcome {
    let pg = &ctx.pg;
    let t = ctx.types();
    let anchors: Vec<usize> = (0..pg.size())
        .filter(|&i| t.points[i] == ObjType::III)
        .collect();
    let chosen: Vec<usize> = if ctx.q() <= 3 {
        anchors
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
        (0..200)
            .map(|_| anchors[rng.gen_range(0..anchors.len())])
            .collect()
    };
    let want = pg.line_size();
    let mut w = Witnesses::default();
    for &a in &chosen {
        let b = fig_block(pg, &pg.point_at(a)).expect("Type III");
        if b.points.len() != want || b.e.len() + b.f.len() != want {
            w.fail(|| format!("Fig({}) has {} points", ctx.pt(a), b.points.len()));
        }
    }
    Outcome::new(
        w.ok(),
        json!({ "anchors": chosen.len(), "block_size": want }),
        w.0,
    )
}

fn c_build(ctx: &Ctx) -> Outcome {
    let fig = match ctx.fig_plane() {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, json!({}), vec![e]),
    };
    let pg = &ctx.pg;
    let t = ctx.types();
    let mut w = Witnesses::default();
    if fig.blocks.len() != pg.size() {
        w.fail(|| format!("{} blocks", fig.blocks.len()));
    }
    if let Some((i, b)) = fig
        .blocks
        .iter()
        .enumerate()
        .find(|(_, b)| b.len() != pg.line_size())
    {
        w.fail(|| format!("block {i} has {} points", b.len()));
    }
    let lc = t.line_counts();
    let tags = fig.tag_counts();
    if [tags[0], tags[1], tags[3]] != [lc[0] as usize, lc[1] as usize, lc[2] as usize]
        || tags[2] != 0
    {
        w.fail(|| format!("block tags {tags:?} against line types {lc:?}"));
    }
    let mut differing = 0;
    for (i, b) in fig.blocks.iter().enumerate() {
        let mut line: Vec<u32> = pg
            .points_on(&pg.line_at(i))
            .iter()
            .map(|p| pg.point_index(p) as u32)
            .collect();
        line.sort_unstable();
        match fig.tags[i] {
            BlockTag::FigBlock => {
                differing += (*b != line) as usize;
                if non_collinear_witness(pg, b).is_none() {
                    w.fail(|| format!("Fig-block replacing {} is collinear", pg.line_at(i)));
                }
            }
            _ if *b != line => w.fail(|| format!("block {i} is not the line {}", pg.line_at(i))),
            _ => {}
        }
    }
    Outcome::new(
        w.ok(),
        json!({
            "blocks": fig.blocks.len(),
            "type_i": tags[0],
            "type_ii": tags[1],
            "fig_blocks": tags[3],
            "differing_from_pg": differing,
        }),
        w.0,
    )
}

fn c_fig_phi(ctx: &Ctx) -> Outcome {
    match ctx.fig_plane() {
        Ok(p) => Outcome::new(
            phi_invariant(&ctx.pg, p),
            json!({ "blocks": p.blocks.len() }),
            vec![],
        ),
        Err(e) => Outcome::new(false, json!({}), vec![e]),
    }
}

fn c_axioms(ctx: &Ctx) -> Outcome {
    match ctx.fig_plane() {
        Ok(p) => axiom_outcome(ctx, p, ctx.pair_mode()),
        Err(e) => Outcome::new(false, json!({}), vec![e]),
    }
}

fn c_mutation(ctx: &Ctx) -> Outcome {
    let fig = match ctx.fig_plane() {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, json!({}), vec![e]),
    };
    let pg = &ctx.pg;
    let Some(i) = fig.tags.iter().position(|&t| t == BlockTag::FigBlock) else {
        return Outcome::new(false, json!({}), vec!["no Fig-block to replace".into()]);
    };
    let mut mutant = fig.clone();
    let mut line: Vec<u32> = pg
        .points_on(&pg.line_at(i))
        .iter()
        .map(|p| pg.point_index(p) as u32)
        .collect();
    line.sort_unstable();
    mutant.blocks[i] = line;
    let r = axiom_outcome(ctx, &mutant, ctx.pair_mode());
    // The claim holds when the checker rejects the mutant with a witness.
    let rejected = r.status == Status::Fail && !r.witnesses.is_empty();
    Outcome::new(
        rejected,
        json!({ "replaced_line": pg.line_at(i).to_string(), "checker": r.counts }),
        r.witnesses,
    )
}

fn pr_outcome(ctx: &Ctx, which: Side) -> Outcome {
    let pg = &ctx.pg;
    let got = pr_fig_block(pg, which);
    let want = expected_pr_fig_block(pg, which);
    let only_got: Vec<String> = got
        .iter()
        .filter(|i| want.binary_search(i).is_err())
        .map(|&i| ctx.pt(i))
        .collect();
    let only_want: Vec<String> = want
        .iter()
        .filter(|i| got.binary_search(i).is_err())
        .map(|&i| ctx.pt(i))
        .collect();
    let mut w = Witnesses::default();
    for p in &only_got {
        w.fail(|| format!("{p} is in the projection but not in the stated set"));
    }
    for p in &only_want {
        w.fail(|| format!("{p} is in the stated set but not in the projection"));
    }
    let mut counts = json!({ "size": got.len(), "stated_size": want.len() });
    if which == Side::T {
        let q = ctx.q() as usize;
        let n = q * q + q + 1;
        let size = match q % 4 {
            1 => 2 + (q - 1) / 2 * n,
            3 => 2 + q.div_ceil(2) * n,
            _ => q * q * q + 1,
        };
        if got.len() != size {
            w.fail(|| format!("{} points, size formula gives {size}", got.len()));
        }
        counts["formula_size"] = json!(size);
    }
    Outcome::new(w.ok(), counts, w.0)
}

fn c_pr_t(ctx: &Ctx) -> Outcome {
    pr_outcome(ctx, Side::T)
}

fn c_pr_t_phi(ctx: &Ctx) -> Outcome {
    pr_outcome(ctx, Side::TPhi)
}

fn c_pr_t_phi2(ctx: &Ctx) -> Outcome {
    pr_outcome(ctx, Side::TPhi2)
}

fn c_arching(ctx: &Ctx) -> Outcome {
    let f = ctx.f();
    let rows = arching_census(&ctx.pg);
    let mut w = Witnesses::default();
    let even = ctx.q().is_multiple_of(2);
    let mut arched_planes: Vec<Elem> = Vec::new();
    for r in &rows {
        let want = if even {
            1
        } else if f.is_nonzero_square(r.norm_class) {
            2
        } else {
            0
        };
        if r.arched.len() != want {
            w.fail(|| {
                format!(
                    "pencil over S_{} arches over {} T-planes, expected {want}",
                    r.theta,
                    r.arched.len()
                )
            });
        }
        arched_planes.extend(&r.arched);
    }
    if even {
        let before = arched_planes.len();
        arched_planes.sort();
        arched_planes.dedup();
        if arched_planes.len() != before {
            w.fail(|| "two pencils arch over the same T-plane".into());
        }
    }
    let counts: Vec<usize> = rows.iter().map(|r| r.arched.len()).collect();
    let mut sorted = counts.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    Outcome::new(
        w.ok(),
        json!({ "per_pencil": counts, "sorted": sorted }),
        w.0,
    )
}

fn c_fig_points(ctx: &Ctx) -> Outcome {
    let r = characterize_fig_points(&ctx.pg);
    let mut w = Witnesses::default();
    for &m in &r.mismatches {
        w.fail(|| format!("criterion and membership disagree at {}", ctx.pt(m)));
    }
    if r.p2q_in_fig != 0 {
        w.fail(|| format!("{} points of P_{{2,q}} lie in Fig(T)", r.p2q_in_fig));
    }
    Outcome::new(
        w.ok(),
        json!({ "scanned": r.scanned, "mismatches": r.mismatches.len() }),
        w.0,
    )
}

fn c_vertex_census(ctx: &Ctx) -> Outcome {
    let f = ctx.f();
    let q = ctx.q() as usize;
    let n = q * q + q + 1;
    let r = characterize_fig_points(&ctx.pg);
    let mut w = Witnesses::default();
    let total = q * q * q - q * q - q - 1;
    if r.total_vertices != total {
        w.fail(|| format!("{} vertices, expected {total}", r.total_vertices));
    }
    for c in &r.per_sls {
        let want = if q.is_multiple_of(2) {
            if c.sls.norm_class == Elem::ONE {
                1
            } else {
                n
            }
        } else if c.sls.norm_class == f.neg_one() {
            0
        } else if c.sls.norm_class == Elem::ONE {
            n + 1
        } else {
            n
        };
        if c.vertices != want {
            w.fail(|| format!("{} vertices onto {}, expected {want}", c.vertices, c.sls));
        }
    }
    // Every vertex other than T lies in Fig(T) and off m_T.
    let fig = fig_block(&ctx.pg, &frame::T).expect("Type III");
    let off_axis_fig = fig
        .points
        .iter()
        .filter(|&&i| !ctx.pg.incident(&ctx.pg.point_at(i), &frame::M_T))
        .count();
    if off_axis_fig + 1 != r.total_vertices {
        w.fail(|| format!("{off_axis_fig} points of Fig(T) off m_T"));
    }
    let per: Vec<usize> = r.per_sls.iter().map(|c| c.vertices).collect();
    Outcome::new(
        w.ok(),
        json!({ "total": r.total_vertices, "per_sls": per }),
        w.0,
    )
}

fn c_even(ctx: &Ctx) -> Outcome {
    let Ok(res) = even_structure_check(&ctx.pg) else {
        return Outcome::skipped("q is odd");
    };
    let mut w = Witnesses::default();
    for ps in &res {
        for &(l, cf, ce) in &ps.bad {
            w.fail(|| {
                format!(
                    "line {} through {}: {cf} points of F_T, {ce} of E_T^phi^{}",
                    ctx.pg.line_at(l),
                    ps.vertex,
                    ps.vertex.phi_power()
                )
            });
        }
    }
    let bad: Vec<usize> = res.iter().map(|p| p.bad.len()).collect();
    Outcome::new(
        w.ok(),
        json!({ "lines_per_vertex": res[0].lines, "bad_lines": bad }),
        w.0,
    )
}

fn c_sp_mu(ctx: &Ctx) -> Outcome {
    let r = sp_mu_bijection_check(&ctx.pg);
    let mut w = Witnesses::default();
    if !r.injective {
        w.fail(|| "two Type III points of Fig(T) share an image".into());
    }
    if !r.equals_complement_of_s1 {
        w.fail(|| {
            format!(
                "image has {} points and is not m_T minus S_1",
                r.image.len()
            )
        });
    }
    if r.equals_type_iii_of_axis != ctx.q().is_multiple_of(2) {
        w.fail(|| "image equals the Type III points of m_T for the wrong parity".into());
    }
    Outcome::new(
        w.ok(),
        json!({
            "domain": r.domain,
            "image": r.image.len(),
            "injective": r.injective,
            "all_type_iii": r.equals_type_iii_of_axis,
        }),
        w.0,
    )
}
