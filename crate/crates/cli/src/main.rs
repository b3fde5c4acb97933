use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pgfig_core::collineation::Side;
use pgfig_core::figueroa::build_fig_plane;
use pgfig_core::special::{sls_points, t_plane};
use pgfig_core::verify::{self, ConfigError, Report, RunConfig, Status, Suite};
use pgfig_core::{Plane, TypeTables};

#[derive(Parser)]
#[command(
    name = "pgfig",
    version,
    about = "Exhaustive checks on PG(2,q^3) and the Figueroa plane"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the verification suites.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "all")]
        suite: SuiteArg,
        /// Run only these checks (ids like `census.orbits` or a suite prefix).
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// The orbit census, as CSV rows or a JSON summary.
    Census {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Checks on mu, projection, splash, fixed planes and vertices.
    Maps {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long = "check")]
        checks: Vec<MapsCheck>,
    },
    /// Checks on Fig-blocks and FIG(q^3).
    Figueroa {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long = "check")]
        checks: Vec<FigCheck>,
        /// Write the blocks of FIG(q^3) to this file.
        #[arg(long)]
        emit_plane: Option<PathBuf>,
    },
    /// Print the points of the sls S_theta, theta = t^i.
    Sls {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        theta: u64,
        #[arg(long, default_value = "t")]
        side: SideArg,
    },
    /// Print the points and lines of the T-plane Pi_theta, theta = t^i.
    Tplane {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        theta: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    format: Option<Format>,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exhaustive pair check even where sampling is the default.
    #[arg(long)]
    full_pairs: bool,
    /// Record wall-clock time per check (reports are then not reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Census,
    Maps,
    Figueroa,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    T,
    TPhi,
    TPhi2,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapsCheck {
    Mu,
    PrSp,
    Fixed,
    Vertices,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigCheck {
    Build,
    Axioms,
    Pr,
    Arching,
    FigPoints,
    EvenStructure,
    SpMu,
}

impl MapsCheck {
    fn ids(self) -> &'static [&'static str] {
        match self {
            MapsCheck::Mu => &["maps.mu_involution", "maps.mu_tplanes", "maps.mu_planes"],
            MapsCheck::PrSp => &["maps.pr_sp"],
            MapsCheck::Fixed => &["maps.fixed"],
            MapsCheck::Vertices => &[
                "maps.vertex_projection",
                "maps.vertex_spectrum",
                "maps.images",
            ],
        }
    }
}

impl FigCheck {
    fn ids(self) -> &'static [&'static str] {
        match self {
            FigCheck::Build => &[
                "figueroa.block",
                "figueroa.block_sizes",
                "figueroa.build",
                "figueroa.phi_invariant",
            ],
            FigCheck::Axioms => &["figueroa.axioms", "figueroa.mutation"],
            FigCheck::Pr => &["figueroa.pr_t", "figueroa.pr_t_phi", "figueroa.pr_t_phi2"],
            FigCheck::Arching => &["figueroa.arching"],
            FigCheck::FigPoints => &["figueroa.fig_points", "figueroa.vertex_census"],
            FigCheck::EvenStructure => &["figueroa.even_structure"],
            FigCheck::SpMu => &["figueroa.sp_mu"],
        }
    }
}

const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(ConfigError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pgfig: {e}");
            ExitCode::from(USAGE)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<ExitCode, ConfigError> {
    match cmd {
        Cmd::Verify { run, suite, checks } => {
            let suite = match suite {
                SuiteArg::Census => Suite::Census,
                SuiteArg::Maps => Suite::Maps,
                SuiteArg::Figueroa => Suite::Figueroa,
                SuiteArg::All => Suite::All,
            };
            let fmt = run.format.unwrap_or(Format::Json);
            let cfg = config(&run, suite, checks)?;
            report(cfg, fmt)
        }
        Cmd::Census { run } => {
            let fmt = run.format.unwrap_or(Format::Csv);
            let cfg = config(&run, Suite::Census, vec!["census.orbits".into()])?;
            report(cfg, fmt)
        }
        Cmd::Maps { run, checks } => {
            let ids = checks
                .iter()
                .flat_map(|c| c.ids())
                .map(|s| s.to_string())
                .collect();
            let fmt = run.format.unwrap_or(Format::Json);
            report(config(&run, Suite::Maps, ids)?, fmt)
        }
        Cmd::Figueroa {
            run,
            checks,
            emit_plane,
        } => {
            let ids = checks
                .iter()
                .flat_map(|c| c.ids())
                .map(|s| s.to_string())
                .collect();
            let fmt = run.format.unwrap_or(Format::Json);
            let cfg = config(&run, Suite::Figueroa, ids)?;
            cfg.validate()?;
            if let Some(path) = emit_plane {
                emit(&cfg, &path)?;
            }
            report(cfg, fmt)
        }
        Cmd::Sls { q, theta, side } => {
            let pg = plane(q)?;
            let side = match side {
                SideArg::T => Side::T,
                SideArg::TPhi => Side::TPhi,
                SideArg::TPhi2 => Side::TPhi2,
            };
            let th = pg.field().from_log(theta);
            let pts = sls_points(&pg, th, side)?;
            let mut out = io::stdout().lock();
            for i in pts {
                writeln!(out, "{}", pg.point_at(i))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tplane { q, theta } => {
            let pg = plane(q)?;
            let b = t_plane(&pg, pg.field().from_log(theta))?;
            let mut out = io::stdout().lock();
            for &i in &b.points {
                writeln!(out, "{}", pg.point_at(i))?;
            }
            for &i in &b.lines {
                writeln!(out, "{}", pg.line_at(i))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn plane(q: u64) -> Result<Plane, ConfigError> {
    let cfg = RunConfig::new(q, Suite::Census)?;
    Ok(Plane::new(pgfig_core::Field::new(cfg.p as u32, cfg.k)?))
}

fn config(run: &RunArgs, suite: Suite, checks: Vec<String>) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::new(run.q, suite)?;
    cfg.checks = checks;
    cfg.seed = run.seed;
    cfg.jobs = run.jobs;
    cfg.full_pairs = run.full_pairs;
    cfg.timings = run.timings;
    Ok(cfg)
}

fn emit(cfg: &RunConfig, path: &PathBuf) -> Result<(), ConfigError> {
    let pg = plane(cfg.q)?;
    let types = TypeTables::compute(&pg);
    let fig = build_fig_plane(&pg, &types)?;
    let file = File::create(path)?;
    Ok(fig.write_blocks(BufWriter::new(file))?)
}

fn report(cfg: RunConfig, fmt: Format) -> Result<ExitCode, ConfigError> {
    let r = verify::run(cfg)?;
    let mut out = io::stdout().lock();
    let text = match fmt {
        Format::Json => serde_json::to_string_pretty(&r).expect("report serialises") + "\n",
        Format::Csv => csv(&r),
        Format::Text => text(&r),
    };
    out.write_all(text.as_bytes())?;
    Ok(ExitCode::from(r.exit_code() as u8))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

/// The census table when the census ran, otherwise one row per check.
fn csv(r: &Report) -> String {
    if let Some(t) = &r.census_csv {
        return t.clone();
    }
    let mut out = String::from("claim,anchor,status,witnesses\n");
    for c in &r.checks {
        out.push_str(&format!(
            "{},{},{},{}\n",
            c.claim,
            csv_field(c.anchor),
            status(c.status),
            csv_field(&c.witnesses.join("; "))
        ));
    }
    out
}

fn text(r: &Report) -> String {
    let h = &r.header;
    let mut out = format!(
        "{} {}  q={} (p={}, k={})  seed={}\n",
        h.tool, h.version, h.config.q, h.config.p, h.config.k, h.config.seed
    );
    for c in &r.checks {
        out.push_str(&format!(
            "{:<7} {:<28} {}\n",
            status(c.status).to_uppercase(),
            c.claim,
            c.anchor
        ));
        for w in &c.witnesses {
            out.push_str(&format!("        - {w}\n"));
        }
    }
    let (p, f, s) = r.counts();
    out.push_str(&format!("{p} passed, {f} failed, {s} skipped\n"));
    out
}
