//! The `gme` command line: point evaluation, surface and slice export,
//! self-verification and the negativity/GME ordering scan.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 I/O error.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::family::{cubic_roots_nonneg, e_psi, e_psi_xr, lambda_family};
use crate::mixed_hull::{hull_oracle, mixed_gme_surface, sample_e_psi_xr, sample_e_psi_xy, verify_convexity, MixedSurface};
use crate::negativity::{family_negativity, negativity_surface, ordering_search, OrderingDisagreement};
use crate::pure_gme::{solve_gme, SolverConfig};
use crate::states::{
    family_density_matrix, family_pure_state, make_ghz, make_w, make_w_tilde, twirl, FamilyPoint,
};
use crate::surface::{format_sig, format_value, grid_coord, SurfaceGrid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Default resolution for anything that involves the mixed-state surface.
pub const DEFAULT_RHO_RESOLUTION: usize = 201;
/// Interpolation-error bound on convexity defects and surface comparisons.
pub const CONVEXITY_BOUND: f64 = 5e-3;
/// How close to zero the mixed-state entanglement must come at the separable point.
pub const SEPARABLE_BOUND: f64 = 2e-3;
/// Random pairs drawn by `ordering` once exhaustive scanning gets too large.
pub const ORDERING_PAIR_BUDGET: usize = 1_000_000;

const FIG5_DEFAULT_X: [f64; 8] = [0.8, 0.85, 0.9, 0.92, 0.94, 0.96, 0.98, 1.0];
const FIG6_DEFAULT_R: [f64; 5] = [0.0, 0.1, 0.2, 0.3, 0.5];

#[derive(Debug, Parser)]
#[command(name = "gme", version, about = "Geometric measure of entanglement for GHZ/W/inverted-W mixtures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print t, Λ, E_ψ, E_ρ and N at one point (x, y) of the simplex.
    Eval {
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(allow_negative_numbers = true)]
        y: f64,
        /// Resolution of the (x, r) grid used for E_ρ.
        #[arg(long, default_value_t = DEFAULT_RHO_RESOLUTION)]
        resolution: usize,
    },
    /// Write a sampled surface as CSV.
    Surface {
        #[arg(value_enum)]
        kind: SurfaceKind,
        #[arg(long, default_value_t = 101)]
        nx: usize,
        #[arg(long, default_value_t = 101)]
        ny: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write a gnuplot script next to the CSV.
        #[arg(long)]
        plot_script: bool,
    },
    /// Write one-dimensional cuts through the surfaces as CSV.
    Slice {
        #[arg(value_enum)]
        kind: SliceKind,
        #[arg(long, default_value_t = DEFAULT_RHO_RESOLUTION)]
        resolution: usize,
        /// Comma-separated x values (fig5) or r values (fig6).
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        plot_script: bool,
    },
    /// Run the built-in consistency checks; exit 1 if any fails.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt the mixed-state surface before the convexity check.
        #[arg(long, hide = true)]
        inject_corruption: bool,
    },
    /// List pairs of states that negativity and E_ρ rank in opposite order.
    Ordering {
        #[arg(long, default_value_t = 21)]
        resolution: usize,
        #[arg(long, default_value_t = 100)]
        max_report: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceKind {
    EPsiXy,
    EPsiXr,
    ERho,
    Negativity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SliceKind {
    Fig2,
    Fig3,
    Fig5,
    Fig6,
    Fig8,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs one command, writing its report to `stdout`. Returns the exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    match cli.command {
        Command::Eval { x, y, resolution } => cmd_eval(x, y, resolution, stdout).map(|_| EXIT_OK),
        Command::Surface {
            kind,
            nx,
            ny,
            out,
            plot_script,
        } => cmd_surface(kind, nx, ny, &out, plot_script, stdout).map(|_| EXIT_OK),
        Command::Slice {
            kind,
            resolution,
            params,
            out,
            plot_script,
        } => cmd_slice(kind, resolution, params.as_deref(), &out, plot_script, stdout).map(|_| EXIT_OK),
        Command::Verify {
            seed,
            inject_corruption,
        } => {
            let report = run_verify(&VerifyOptions {
                seed,
                inject_corruption,
            })?;
            write!(stdout, "{report}").map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Ordering {
            resolution,
            max_report,
            out,
            seed,
        } => cmd_ordering(resolution, max_report, out.as_deref(), seed, stdout).map(|_| EXIT_OK),
    }
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::io(Path::new("<stdout>"), e)
}

/// Labeled values at one simplex point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointReport {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub lambda: f64,
    pub e_psi: f64,
    pub e_rho: f64,
    pub negativity: f64,
}

pub fn evaluate_point(x: f64, y: f64, resolution: usize) -> CliResult<PointReport> {
    FamilyPoint::new(x, y)?;
    let sol = cubic_roots_nonneg(x, y)?;
    let lambda = lambda_family(x, y)?;
    let mixed = MixedSurface::build(resolution, resolution)?;
    Ok(PointReport {
        x,
        y,
        t: sol.chosen_t,
        lambda,
        e_psi: e_psi(x, y)?,
        e_rho: mixed.eval(x, y)?,
        negativity: family_negativity(x, y)?,
    })
}

fn cmd_eval(x: f64, y: f64, resolution: usize, out: &mut dyn Write) -> CliResult<()> {
    let r = evaluate_point(x, y, resolution)?;
    writeln!(out, "x       {}", format_sig(r.x)).map_err(stdout_err)?;
    writeln!(out, "y       {}", format_sig(r.y)).map_err(stdout_err)?;
    for (label, v) in [
        ("t", r.t),
        ("Lambda", r.lambda),
        ("E_psi", r.e_psi),
        ("E_rho", r.e_rho),
        ("N", r.negativity),
    ] {
        writeln!(out, "{label:<8}{v:.12}").map_err(stdout_err)?;
    }
    Ok(())
}

pub fn compute_surface(kind: SurfaceKind, nx: usize, ny: usize) -> CliResult<SurfaceGrid> {
    Ok(match kind {
        SurfaceKind::EPsiXy => sample_e_psi_xy(nx, ny)?,
        SurfaceKind::EPsiXr => sample_e_psi_xr(nx, ny)?,
        SurfaceKind::ERho => mixed_gme_surface(nx, ny)?,
        SurfaceKind::Negativity => negativity_surface(nx, ny)?,
    })
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn plot_script_path(csv: &Path) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".gp");
    PathBuf::from(s)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn cmd_surface(
    kind: SurfaceKind,
    nx: usize,
    ny: usize,
    path: &Path,
    plot_script: bool,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    let grid = compute_surface(kind, nx, ny)?;
    let mut w = create(path)?;
    grid.write_csv(&mut w).map_err(|e| CliError::io(path, e))?;
    if plot_script {
        let gp = plot_script_path(path);
        let second = grid.parametrization.second_axis();
        let script = format!(
            "set datafile separator ','\n\
             set datafile missing 'NA'\n\
             set xlabel 'x'\n\
             set ylabel '{second}'\n\
             set zlabel 'value'\n\
             splot '{}' using 1:2:3 every ::1 with points notitle\n",
            file_name(path)
        );
        std::fs::write(&gp, script).map_err(|e| CliError::io(&gp, e))?;
    }
    writeln!(stdout, "wrote {} ({}×{})", path.display(), nx, ny).map_err(stdout_err)?;
    Ok(())
}

fn parse_params(raw: &str) -> CliResult<Vec<f64>> {
    raw.split(',')
        .map(|s| {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad parameter {s:?}")))?;
            if !(0.0..=1.0).contains(&v) {
                return Err(CliError::usage(format!("parameter {v} outside [0, 1]")));
            }
            Ok(v)
        })
        .collect()
}

/// A one-dimensional cut: abscissa name and values plus one column per curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Slice {
    pub axis: String,
    pub abscissa: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

impl Slice {
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let names: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        writeln!(out, "{},{}", self.axis, names.join(","))?;
        for (k, a) in self.abscissa.iter().enumerate() {
            let row: Vec<String> = self.columns.iter().map(|(_, c)| format_value(c[k])).collect();
            writeln!(out, "{},{}", format_sig(*a), row.join(","))?;
        }
        out.flush()
    }
}

pub fn compute_slice(kind: SliceKind, resolution: usize, params: Option<&str>) -> CliResult<Slice> {
    if resolution < 3 {
        return Err(CliError::usage("resolution must be at least 3"));
    }
    let params = params.map(parse_params).transpose()?;
    if params.is_some() && !matches!(kind, SliceKind::Fig5 | SliceKind::Fig6) {
        return Err(CliError::usage("--params only applies to fig5 and fig6"));
    }
    let grid: Vec<f64> = (0..resolution).map(|k| grid_coord(k, resolution)).collect();
    let eval_all = |f: &dyn Fn(f64) -> crate::Result<f64>| -> CliResult<Vec<f64>> {
        grid.iter().map(|&s| f(s).map_err(CliError::from)).collect()
    };
    let slice = match kind {
        SliceKind::Fig2 => Slice {
            axis: "y".into(),
            columns: vec![("value".into(), eval_all(&|y| e_psi(0.0, y))?)],
            abscissa: grid.clone(),
        },
        SliceKind::Fig3 => Slice {
            axis: "x".into(),
            columns: vec![("value".into(), eval_all(&|x| e_psi(x, 1.0 - x))?)],
            abscissa: grid.clone(),
        },
        SliceKind::Fig5 => {
            let xs = params.unwrap_or_else(|| FIG5_DEFAULT_X.to_vec());
            let mut columns = Vec::new();
            for x in xs {
                columns.push((format!("x={}", format_sig(x)), eval_all(&|r| e_psi_xr(x, r))?));
            }
            Slice {
                axis: "r".into(),
                abscissa: grid.clone(),
                columns,
            }
        }
        SliceKind::Fig6 => {
            let rs = params.unwrap_or_else(|| FIG6_DEFAULT_R.to_vec());
            let mut columns = Vec::new();
            for r in rs {
                columns.push((format!("r={}", format_sig(r)), eval_all(&|x| e_psi_xr(x, r))?));
            }
            Slice {
                axis: "x".into(),
                abscissa: grid.clone(),
                columns,
            }
        }
        SliceKind::Fig8 => {
            let mixed = MixedSurface::build(resolution, resolution)?;
            Slice {
                axis: "x".into(),
                columns: vec![("value".into(), eval_all(&|x| mixed.eval(x, (1.0 - x) / 2.0))?)],
                abscissa: grid.clone(),
            }
        }
    };
    Ok(slice)
}

fn cmd_slice(
    kind: SliceKind,
    resolution: usize,
    params: Option<&str>,
    path: &Path,
    plot_script: bool,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    let slice = compute_slice(kind, resolution, params)?;
    let mut w = create(path)?;
    slice.write_csv(&mut w).map_err(|e| CliError::io(path, e))?;
    if plot_script {
        let gp = plot_script_path(path);
        let name = file_name(path);
        let curves: Vec<String> = (0..slice.columns.len())
            .map(|k| format!("'{name}' using 1:{} every ::1 with lines title columnhead({})", k + 2, k + 2))
            .collect();
        let script = format!(
            "set datafile separator ','\n\
             set datafile missing 'NA'\n\
             set xlabel '{}'\n\
             set ylabel 'E'\n\
             plot {}\n",
            slice.axis,
            curves.join(", \\\n     ")
        );
        std::fs::write(&gp, script).map_err(|e| CliError::io(&gp, e))?;
    }
    writeln!(stdout, "wrote {} ({} rows)", path.display(), slice.abscissa.len()).map_err(stdout_err)?;
    Ok(())
}

/// Disagreeing pairs at `resolution`, strongest first, at most `max_report`
/// plus the GHZ/W and GHZ/W̃ corner pairs, which are never truncated away.
pub fn ordering_report(resolution: usize, max_report: usize, seed: u64) -> CliResult<Vec<OrderingDisagreement>> {
    if resolution < 11 {
        return Err(CliError::usage("ordering needs resolution ≥ 11"));
    }
    let gme = mixed_gme_surface(resolution, resolution)?;
    let neg = negativity_surface(resolution, resolution)?;
    let mut found = ordering_search(&gme, &neg, ORDERING_PAIR_BUDGET, seed)?;
    found.sort_by(|a, b| b.magnitude().total_cmp(&a.magnitude()));
    let is_corner_pair = |d: &OrderingDisagreement| {
        d.involves((1.0, 0.0), (0.0, 1.0)) || d.involves((1.0, 0.0), (0.0, 0.0))
    };
    let mut kept = 0;
    found.retain(|d| {
        if is_corner_pair(d) {
            return true;
        }
        kept += 1;
        kept <= max_report
    });
    Ok(found)
}

pub fn write_ordering_csv<W: Write>(pairs: &[OrderingDisagreement], mut out: W) -> std::io::Result<()> {
    writeln!(out, "x1,y1,x2,y2,N1,N2,E1,E2")?;
    for d in pairs {
        let cells = [d.p1.0, d.p1.1, d.p2.0, d.p2.1, d.n1, d.n2, d.e1, d.e2].map(format_sig);
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()
}

fn cmd_ordering(
    resolution: usize,
    max_report: usize,
    path: Option<&Path>,
    seed: u64,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    let pairs = ordering_report(resolution, max_report, seed)?;
    match path {
        Some(p) => {
            let w = create(p)?;
            write_ordering_csv(&pairs, w).map_err(|e| CliError::io(p, e))?;
            writeln!(stdout, "wrote {} disagreeing pairs to {}", pairs.len(), p.display()).map_err(stdout_err)?;
        }
        None => write_ordering_csv(&pairs, stdout).map_err(stdout_err)?,
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Test hook: raise a patch of the mixed-state surface before checking
    /// its convexity.
    pub inject_corruption: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {:<22} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult { name, passed, detail }
}

pub fn run_verify(opts: &VerifyOptions) -> CliResult<VerifyReport> {
    let mut checks = Vec::new();
    let solver = SolverConfig::with_seed(opts.seed);

    // Corner values from both routes.
    let ghz = solve_gme(&make_ghz(), &solver)?.e_sin2;
    let w = solve_gme(&make_w(), &solver)?.e_sin2;
    let wt = solve_gme(&make_w_tilde(), &solver)?.e_sin2;
    let worst = [
        (ghz - 0.5).abs(),
        (w - 5.0 / 9.0).abs(),
        (wt - 5.0 / 9.0).abs(),
        (e_psi(1.0, 0.0)? - 0.5).abs(),
        (e_psi(0.0, 1.0)? - 5.0 / 9.0).abs(),
        (e_psi(0.0, 0.0)? - 5.0 / 9.0).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    checks.push(check("corner-values", worst <= 1e-9, format!("max error {worst:.3e}")));

    let n_ghz = family_negativity(1.0, 0.0)?;
    let n_w = family_negativity(0.0, 1.0)?;
    let worst = (n_ghz - 1.0).abs().max((n_w - 2.0 * 2f64.sqrt() / 3.0).abs());
    checks.push(check("negativity-corners", worst <= 1e-10, format!("max error {worst:.3e}")));

    // Closed form against the variational solver.
    let n = 25;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..(n - i) {
            let (x, y) = (grid_coord(i, n), grid_coord(j, n));
            let psi = family_pure_state(&FamilyPoint::new(x, y)?)?;
            let e_solver = solve_gme(&psi, &solver)?.e_sin2;
            worst = worst.max((e_psi(x, y)? - e_solver).abs());
        }
    }
    checks.push(check("formula-vs-solver", worst <= 1e-7, format!("max |ΔE| {worst:.3e} on {n}×{n}")));

    // Twirl invariance of the mixture and of phased preimages.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..(n - i) {
            let (x, y) = (grid_coord(i, n), grid_coord(j, n));
            let rho = family_density_matrix(&FamilyPoint::new(x, y)?)?;
            worst = worst.max(twirl(&rho).max_abs_diff(&rho));
            let phases = [0; 3].map(|_| rng.gen_range(0.0..std::f64::consts::TAU));
            let psi = family_pure_state(&FamilyPoint::with_phases(x, y, phases)?)?;
            worst = worst.max(twirl(&psi.projector()).max_abs_diff(&rho));
        }
    }
    checks.push(check("twirl-invariance", worst <= 1e-12, format!("max entry error {worst:.3e}")));

    // Convexity of the mixed-state surface.
    let res = 101;
    let mut rho_surface = mixed_gme_surface(res, res)?;
    if opts.inject_corruption {
        for i in 20..30 {
            for j in 20..30 {
                let v = rho_surface.get(i, j);
                rho_surface.set(i, j, v + 0.2);
            }
        }
    }
    let report = verify_convexity(&rho_surface, 20_000, opts.seed)?;
    checks.push(check(
        "convexity",
        report.passes(CONVEXITY_BOUND),
        format!("max violation {:.3e} over {} pairs", report.max_violation, report.n_segments_tested),
    ));

    let raw = sample_e_psi_xy(res, res)?;
    let raw_report = verify_convexity(&raw, 20_000, opts.seed)?;
    let found = raw_report
        .violating_pairs
        .iter()
        .any(|p| p.violation > CONVEXITY_BOUND && p.p1.0 > 0.8 && p.p2.0 > 0.8);
    checks.push(check(
        "pure-nonconvexity",
        found,
        format!("worst raw violation {:.3e}", raw_report.max_violation),
    ));

    let oracle = hull_oracle(res, res)?;
    let clean = mixed_gme_surface(res, res)?;
    let diff = clean.max_abs_diff(&oracle);
    checks.push(check("hull-oracle", diff <= CONVEXITY_BOUND, format!("max |Δ| {diff:.3e} at {res}×{res}")));

    // The separable point.
    let mixed = MixedSurface::build(DEFAULT_RHO_RESOLUTION, DEFAULT_RHO_RESOLUTION)?;
    let e0 = mixed.eval(0.25, 0.375)?;
    let n0 = family_negativity(0.25, 0.375)?;
    checks.push(check(
        "separable-point",
        e0 <= SEPARABLE_BOUND && n0.abs() <= 1e-10,
        format!("E_rho {} N {}", format_sig(e0), format_sig(n0)),
    ));

    Ok(VerifyReport { checks })
}

/// Reads a surface CSV back; used by tests and handy for downstream checks.
pub fn read_surface(path: &Path) -> crate::Result<SurfaceGrid> {
    let f = File::open(path).map_err(|e| Error::Csv {
        line: 0,
        reason: e.to_string(),
    })?;
    SurfaceGrid::read_csv(std::io::BufReader::new(f))
}
