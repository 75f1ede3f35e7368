//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rmfgeom::catalog::{self, Example, Variant};
use rmfgeom::framing::{rmf_propagate, OrthoFrame, RmfApparatus};
use rmfgeom::geomcore::CurveRef;
use rmfgeom::legendre::{rmf_from_legendre, LegendreCurve, LegendreFrame};
use rmfgeom::ruled::{RulingExtent, SurfaceKind};
use rmfgeom::singular::{cone_apex, normal_form_surface, scan_singularities, SingularClass};
use rmfgeom::{Interval, SampledGrid, Tolerances, Vec3};

use crate::error::CliError;
use crate::frames::write_frames_csv;
use crate::obj::write_obj_file;
use crate::points::load_points;
use crate::report::{entries, write_report, DevelopabilityEntry, FrameChecks, InputEcho, KindMap, Report};

#[derive(Debug, Parser)]
#[command(name = "rmfgeom", version, about = "Legendre curves, rotation-minimizing frames and singular ruled surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a pair, scan all requested surfaces and write a JSON report.
    Analyze(AnalyzeArgs),
    /// Print the rotation-minimizing frame and natural curvatures as CSV.
    Frames(SourceArgs),
    /// Write the reference mesh of a singularity normal form.
    NormalForm(NormalFormArgs),
}

/// Built-in example names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    Example1,
    Example2,
    Example3,
    Helix,
    /// Sampled pair read from `--points`.
    Custom,
}

#[derive(Debug, Clone, Args)]
struct SourceArgs {
    #[arg(long, value_enum)]
    example: ExampleName,
    /// Number of grid nodes.
    #[arg(long, default_value_t = 512)]
    grid: usize,
    /// Upper end of the parameter domain.
    #[arg(long)]
    domain_hi: Option<f64>,
    /// Use the literal first-draft formulas (these fail validation).
    #[arg(long)]
    as_printed: bool,
    /// Sample file with rows `s γx γy γz vx vy vz` (for `--example custom`).
    #[arg(long)]
    points: Option<PathBuf>,
    /// Project a marginally invalid pair onto UT S² before use.
    #[arg(long)]
    renormalize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum KindSelection {
    All,
    One(SurfaceKind),
}

impl KindSelection {
    fn kinds(self) -> Vec<SurfaceKind> {
        match self {
            KindSelection::All => SurfaceKind::ALL.to_vec(),
            KindSelection::One(k) => vec![k],
        }
    }
}

fn parse_kind(s: &str) -> Result<KindSelection, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(KindSelection::All);
    }
    SurfaceKind::from_tag(s).map(KindSelection::One).ok_or_else(|| {
        let valid: Vec<_> = SurfaceKind::ALL.iter().map(|k| k.tag()).collect();
        format!("unknown kind {s:?}; valid: {}, all", valid.join(", "))
    })
}

fn parse_class(s: &str) -> Result<SingularClass, String> {
    match SingularClass::from_name(s) {
        Some(c @ (SingularClass::CuspidalEdge | SingularClass::Swallowtail | SingularClass::CuspidalCrosscap)) => Ok(c),
        _ => Err(format!("unknown normal form {s:?}; valid: ce, sw, ccr")),
    }
}

fn parse_mesh(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("mesh size {s:?} must look like 64x32 with both sides ≥ 2");
    let (a, b) = s.split_once('x').ok_or_else(bad)?;
    let (a, b) = (a.parse::<usize>().map_err(|_| bad())?, b.parse::<usize>().map_err(|_| bad())?);
    if a < 2 || b < 2 {
        return Err(bad());
    }
    Ok((a, b))
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Surface kind tag or `all`.
    #[arg(long, default_value = "all", value_parser = parse_kind)]
    kind: KindSelection,
    #[arg(long, default_value_t = catalog::DEFAULT_U_EXTENT.lo, allow_negative_numbers = true)]
    u_min: f64,
    #[arg(long, default_value_t = catalog::DEFAULT_U_EXTENT.hi, allow_negative_numbers = true)]
    u_max: f64,
    /// Report destination; stdout when absent or `-`.
    #[arg(long)]
    json: Option<PathBuf>,
    /// OBJ destination; with several kinds, `<stem>_<kind>.obj` per kind.
    #[arg(long)]
    obj: Option<PathBuf>,
    /// Tessellation size `NSxNU`.
    #[arg(long, default_value = "64x32", value_parser = parse_mesh)]
    mesh: (usize, usize),
}

#[derive(Debug, Args)]
struct NormalFormArgs {
    /// `ce`, `sw` or `ccr`.
    #[arg(long, value_parser = parse_class)]
    class: SingularClass,
    #[arg(long)]
    obj: PathBuf,
    /// Samples per axis over [-1, 1].
    #[arg(long, default_value_t = 21)]
    samples: usize,
}

/// Resolved input: which pair, on which domain and grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleSpec {
    pub name: ExampleName,
    pub variant: Variant,
    pub domain_hi: Option<f64>,
    pub grid: usize,
    pub u_domain: RulingExtent,
    pub points: Option<PathBuf>,
    pub renormalize: bool,
}

/// Smallest grid accepted (the derivative stencils need a few nodes).
pub const MIN_GRID: usize = 8;

impl ExampleSpec {
    pub fn new(name: ExampleName) -> Self {
        ExampleSpec {
            name,
            variant: Variant::Corrected,
            domain_hi: None,
            grid: 512,
            u_domain: catalog::DEFAULT_U_EXTENT,
            points: None,
            renormalize: false,
        }
    }

    fn from_args(a: &SourceArgs) -> Self {
        ExampleSpec {
            name: a.example,
            variant: if a.as_printed { Variant::AsPrinted } else { Variant::Corrected },
            domain_hi: a.domain_hi,
            grid: a.grid,
            u_domain: catalog::DEFAULT_U_EXTENT,
            points: a.points.clone(),
            renormalize: a.renormalize,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.name {
            ExampleName::Example1 => "example1",
            ExampleName::Example2 => "example2",
            ExampleName::Example3 => "example3",
            ExampleName::Helix => "helix",
            ExampleName::Custom => "custom",
        }
    }

    fn example(&self) -> Option<Example> {
        Example::from_name(self.label())
    }

    /// `(γ, v, domain)`.
    pub fn curves(&self) -> Result<(CurveRef, CurveRef, Interval), CliError> {
        if self.grid < MIN_GRID {
            return Err(CliError::Usage(format!("--grid must be at least {MIN_GRID}")));
        }
        match (self.example(), &self.points) {
            (Some(_), Some(_)) => Err(CliError::Usage("--points is only valid with --example custom".into())),
            (None, None) => Err(CliError::Usage("--example custom requires --points PATH".into())),
            (Some(ex), None) => Ok(catalog::legendre_pair(ex, self.variant, self.domain_hi)?),
            (None, Some(path)) => {
                if self.variant == Variant::AsPrinted || self.domain_hi.is_some() {
                    return Err(CliError::Usage("--as-printed and --domain-hi do not apply to custom input".into()));
                }
                load_points(path)
            }
        }
    }

    /// Validated Legendre frame with `β(lo) = 0`.
    pub fn frame(&self, tol: &Tolerances) -> Result<LegendreFrame, CliError> {
        let (g, v, domain) = self.curves()?;
        let grid = SampledGrid::uniform(domain, self.grid)?;
        let curve = if self.renormalize {
            LegendreCurve::renormalized(g, v, &grid, tol)?
        } else {
            LegendreCurve::new(g, v, &grid, tol)?
        };
        Ok(rmf_from_legendre(curve, domain.lo(), Vec3::ZERO, 4 * (self.grid - 1), tol)?)
    }
}

/// Full pipeline for `analyze`: the report (kinds ordered by tag), plus
/// the frame for mesh output.
pub fn analyze(spec: &ExampleSpec, kinds: &[SurfaceKind], tol: &Tolerances) -> Result<(Report, LegendreFrame), CliError> {
    let mut kinds = kinds.to_vec();
    kinds.sort_by_key(|k| k.tag());
    kinds.dedup();
    let frame = spec.frame(tol)?;
    let grid = frame.grid().clone();
    let mut developability = KindMap::default();
    let mut singularities = KindMap::default();
    for &kind in &kinds {
        let surface = frame.surface(kind, spec.u_domain)?;
        let dev = surface.developability_defect(&grid)?;
        developability.0.push((kind, DevelopabilityEntry { max_defect: dev.max, developable: dev.max < tol.dev }));
        let scan = scan_singularities(&frame, kind, &grid, spec.u_domain, tol)?;
        let is_cone = scan.events.iter().any(|e| e.class == SingularClass::Cone);
        let apex = if is_cone { Some(cone_apex(&frame, kind, &grid, tol)?) } else { None };
        singularities.0.push((kind, entries(&scan, apex.as_ref())));
    }
    let curve = frame.curve();
    let domain = grid.domain();
    let report = Report {
        input: InputEcho {
            example: spec.label().to_string(),
            variant: match spec.variant {
                Variant::Corrected => "corrected".into(),
                Variant::AsPrinted => "as_printed".into(),
            },
            points: spec.points.as_ref().map(|p| p.display().to_string()),
            renormalized: curve.report().renormalized,
            domain: [domain.lo(), domain.hi()],
            grid: grid.len(),
            u_domain: [spec.u_domain.lo, spec.u_domain.hi],
            kinds,
            tolerances: *tol,
        },
        developability,
        singularities,
        frame_checks: FrameChecks {
            validation: *curve.report(),
            max_orthonormality_defect: curve.max_orthonormality_defect(),
            max_handedness_defect: curve.max_handedness_defect(),
            max_abs_l: curve.max_abs_l(),
            legendre: curve.is_legendre(tol).passed,
            residuals: frame.residuals(),
        },
    };
    Ok((report, frame))
}

/// Frames for `frames`: the helix RMF started from its Frenet frame, or
/// for a Legendre pair the RMF along `β` started from `(η, γ, v)`.
pub fn frames(spec: &ExampleSpec, tol: &Tolerances) -> Result<RmfApparatus, CliError> {
    if spec.name == ExampleName::Helix {
        if spec.variant == Variant::AsPrinted {
            return Err(CliError::Usage("the helix example has no printed variant".into()));
        }
        let helix = catalog::helix();
        let domain = match spec.domain_hi {
            Some(hi) => Interval::new(helix.domain().lo(), hi)?,
            None => helix.domain(),
        };
        if spec.grid < MIN_GRID {
            return Err(CliError::Usage(format!("--grid must be at least {MIN_GRID}")));
        }
        if domain.hi() > helix.domain().hi() {
            return Err(CliError::Usage(format!("--domain-hi must not exceed {}", helix.domain().hi())));
        }
        let grid = SampledGrid::uniform(domain, spec.grid)?;
        let (t, n, _) = catalog::helix_frenet(domain.lo());
        return Ok(rmf_propagate(&*helix, OrthoFrame::from_tangent_normal(t, n), &grid, tol)?);
    }
    let frame = spec.frame(tol)?;
    let s0 = frame.grid().first();
    let curve = frame.curve();
    let initial = OrthoFrame::new(curve.eta_at(s0), curve.gamma().point(s0), curve.v().point(s0));
    Ok(rmf_propagate(&*frame.beta(), initial, frame.grid(), tol)?)
}

fn obj_path(base: &Path, kind: SurfaceKind, many: bool) -> PathBuf {
    if !many {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "mesh".into());
    let ext = base.extension().map(|e| e.to_string_lossy().into_owned()).unwrap_or_else(|| "obj".into());
    base.with_file_name(format!("{stem}_{}.{ext}", kind.tag()))
}

fn run_analyze(a: &AnalyzeArgs, out: &mut dyn Write, tol: &Tolerances) -> Result<(), CliError> {
    let mut spec = ExampleSpec::from_args(&a.source);
    spec.u_domain = RulingExtent::new(a.u_min, a.u_max).map_err(|e| CliError::Usage(e.to_string()))?;
    let kinds = a.kind.kinds();
    let (report, frame) = analyze(&spec, &kinds, tol)?;
    if let Some(base) = &a.obj {
        let (ns, nu) = a.mesh;
        for &kind in &kinds {
            let surface = frame.surface(kind, spec.u_domain)?;
            let mesh = surface.tessellate(ns, nu, tol)?;
            let d = surface.s_domain();
            let header = format!(
                "rmfgeom {} {} s in [{}, {}] u in [{}, {}] {}x{}",
                spec.label(),
                kind.tag(),
                d.lo(),
                d.hi(),
                spec.u_domain.lo,
                spec.u_domain.hi,
                ns,
                nu
            );
            write_obj_file(&mesh, &header, &obj_path(base, kind, kinds.len() > 1))?;
        }
    }
    match &a.json {
        Some(p) if p.as_os_str() != "-" => write_report(&report, p),
        _ => report.write(out).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn run_frames(a: &SourceArgs, out: &mut dyn Write, tol: &Tolerances) -> Result<(), CliError> {
    let rmf = frames(&ExampleSpec::from_args(a), tol)?;
    let mut buf = Vec::new();
    write_frames_csv(&rmf, &mut buf).map_err(|e| CliError::io("<stdout>", e))?;
    out.write_all(&buf).map_err(|e| CliError::io("<stdout>", e))
}

fn run_normal_form(a: &NormalFormArgs) -> Result<(), CliError> {
    let mesh = normal_form_surface(a.class, a.samples)?;
    let header = format!("rmfgeom normal form {} on [-1, 1]^2, {}x{}", a.class.name(), a.samples, a.samples);
    write_obj_file(&mesh, &header, &a.obj)
}

/// Parse `args` (including the program name) and run. Returns the exit
/// code: 0 success, 1 usage or I/O error, 2 validation failure,
/// 3 degenerate input.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { CliError::USAGE } else { CliError::OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let tol = Tolerances::default();
    let result = match &cli.command {
        Command::Analyze(a) => run_analyze(a, out, &tol),
        Command::Frames(a) => run_frames(a, out, &tol),
        Command::NormalForm(a) => run_normal_form(a),
    };
    match result {
        Ok(()) => CliError::OK,
        Err(e) => {
            let label = match e.exit_code() {
                CliError::VALIDATION => "validation failed",
                CliError::DEGENERATE => "degenerate input",
                _ => "error",
            };
            let _ = writeln!(err, "rmfgeom: {label}: {e}");
            e.exit_code()
        }
    }
}
