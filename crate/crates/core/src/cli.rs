//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input or verification error, 2 unsupported
//! combination (bounds only), 3 no optimal division exists.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::geometry::{Body, ConvexPolygon, Magnitude};
use crate::io::{OracleRecord, PolygonDocument, ReportDocument, Status};
use crate::maxmin::{
    maxmin_diameter_feasible, maxmin_diameter_solve, maxmin_inradius_2_solve, maxmin_inradius_bound,
    maxmin_width_2_solve, maxmin_width_bounds,
};
use crate::minmax::{conway_solve, minmax_diameter_report, minmax_width_solve};
use crate::oracle::{brute_2division, brute_3division, SearchGrid};
use crate::report::{BoundsReport, Objective};
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "convex-division", version, about = "Optimal divisions of planar convex bodies by successive line cuts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProblemArg {
    Minmax,
    Maxmin,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MagnitudeArg {
    Diameter,
    Width,
    Inradius,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one problem for a polygon document and print a JSON report.
    Solve {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long, value_enum)]
        magnitude: MagnitudeArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: PathBuf,
        /// Tolerance for the iterative solvers.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Also write a drawing of the division.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Compare against the brute-force search (n = 2 or 3).
        #[arg(long)]
        oracle: bool,
    },
    /// Draw a polygon document and the cuts of a report.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Run the solver and oracle suite on every polygon document in a directory.
    Corpus {
        #[arg(long)]
        dir: PathBuf,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match cli.command {
        Command::Solve { problem, magnitude, n, input, tol, svg, oracle } => {
            let problem = match problem {
                ProblemArg::Minmax => Objective::MinMax,
                ProblemArg::Maxmin => Objective::MaxMin,
            };
            let magnitude = match magnitude {
                MagnitudeArg::Diameter => Magnitude::Diameter,
                MagnitudeArg::Width => Magnitude::Width,
                MagnitudeArg::Inradius => Magnitude::Inradius,
            };
            solve_command(problem, magnitude, n, &input, tol, svg.as_deref(), oracle, out, err)
        }
        Command::Render { input, report, svg } => render_command(&input, &report, &svg, err),
        Command::Corpus { dir } => corpus_command(&dir, out, err),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InfeasibleN { .. } => EXIT_INFEASIBLE,
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
        _ => EXIT_INPUT,
    }
}

fn load_polygon(path: &Path) -> Result<(String, ConvexPolygon), Error> {
    let doc = PolygonDocument::read(path)?;
    let poly = doc.polygon()?;
    Ok((doc.name, poly))
}

/// Solves one problem. Returns the exit code and the report.
pub fn solve(problem: Objective, magnitude: Magnitude, n: usize, c: &ConvexPolygon, tol: f64) -> Result<(i32, ReportDocument), Error> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let unsupported = |b: BoundsReport, what: &str| -> Result<(i32, ReportDocument), Error> {
        let mut doc = ReportDocument::from_bounds(problem, magnitude, n, &b, Status::Unsupported)?;
        doc.message = Some(format!("unsupported: bounds only ({what})"));
        Ok((EXIT_UNSUPPORTED, doc))
    };
    let doc = match (problem, magnitude) {
        (Objective::MinMax, Magnitude::Width) => ReportDocument::from_solve(&minmax_width_solve(c, n)?),
        (Objective::MinMax, Magnitude::Inradius) => ReportDocument::from_solve(&conway_solve(c, n)?),
        (Objective::MinMax, Magnitude::Diameter) => {
            let b = minmax_diameter_report(c, n)?;
            let mut doc = ReportDocument::from_bounds(problem, magnitude, n, &b, Status::Bounds)?;
            doc.message = Some("the optimal value is only known up to these bounds".into());
            doc
        }
        (Objective::MaxMin, Magnitude::Diameter) => {
            let (f, _) = maxmin_diameter_feasible(c, n);
            if !f.feasible {
                let mut doc = ReportDocument::infeasible(problem, magnitude, n, f);
                doc.diagnostics.insert("diameter".into(), c.diameter().value);
                return Ok((EXIT_INFEASIBLE, doc));
            }
            ReportDocument::from_solve(&maxmin_diameter_solve(c, n)?)
        }
        (Objective::MaxMin, Magnitude::Width) if n == 2 => ReportDocument::from_solve(&maxmin_width_2_solve(&c.clone().into(), tol)?),
        (Objective::MaxMin, Magnitude::Width) => return unsupported(maxmin_width_bounds(c, n)?, "no solver for n > 2"),
        (Objective::MaxMin, Magnitude::Inradius) if n == 2 => ReportDocument::from_solve(&maxmin_inradius_2_solve(c, tol)?),
        (Objective::MaxMin, Magnitude::Inradius) => {
            let b = BoundsReport {
                lower: maxmin_inradius_bound(c, n)?,
                lower_strict: false,
                upper: c.inradius().value,
                witness: None,
                mesh_tuple: None,
            };
            return unsupported(b, "no solver for n > 2");
        }
    };
    Ok((EXIT_OK, doc))
}

/// Brute-force value for `n` in {2, 3}.
pub fn oracle_value(problem: Objective, magnitude: Magnitude, n: usize, c: &ConvexPolygon) -> Result<Option<f64>, Error> {
    let body: Body = c.clone().into();
    match n {
        2 => {
            Ok(Some(brute_2division(&body, magnitude, problem, &SearchGrid::default())?.0))
        }
        3 => {
            let grid = SearchGrid { angle_samples: 12, offset_samples: 1, refine_rounds: 1, seed: 0 };
            Ok(Some(brute_3division(&body, magnitude, problem, &grid)?))
        }
        _ => Ok(None),
    }
}

#[allow(clippy::too_many_arguments)]
fn solve_command(
    problem: Objective,
    magnitude: Magnitude,
    n: usize,
    input: &Path,
    tol: f64,
    svg_path: Option<&Path>,
    oracle: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (_, c) = match load_polygon(input) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", input.display());
            return EXIT_INPUT;
        }
    };
    let (code, mut doc) = match solve(problem, magnitude, n, &c, tol) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    if oracle {
        let reference = doc
            .value
            .or(doc.bounds.as_ref().map(|b| b.upper))
            .or(doc.diagnostics.get("diameter").copied());
        match (oracle_value(problem, magnitude, n, &c), reference) {
            (Ok(Some(v)), Some(r)) => doc.oracle = Some(OracleRecord { value: v, delta: v - r }),
            (Ok(_), _) => {
                let _ = writeln!(err, "note: no brute-force reference for n = {n}");
            }
            (Err(e), _) => {
                let _ = writeln!(err, "error: oracle: {e}");
                return exit_code(&e);
            }
        }
    }
    if let Some(path) = svg_path {
        if let Err(e) = write_svg(&c, &doc, path) {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    }
    let _ = write!(out, "{}", doc.to_json());
    code
}

fn write_svg(c: &ConvexPolygon, doc: &ReportDocument, path: &Path) -> Result<(), Error> {
    let tree = doc.replay(c.clone())?;
    let labels: Vec<String> = doc.per_subset_values.iter().map(|v| format!("{v:.6}")).collect();
    let mut caption = vec![format!("{} {} n={}", doc.problem.name(), doc.magnitude.name(), doc.n)];
    if let Some(v) = doc.value {
        caption.push(format!("value {v:.9}"));
    }
    if let Some(b) = &doc.bounds {
        caption.push(format!("bounds [{:.9}, {:.9}]", b.lower, b.upper));
    }
    let text = svg::render(tree.root(), Some(&tree), &labels, &caption);
    std::fs::write(path, text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

fn render_command(input: &Path, report: &Path, svg_path: &Path, err: &mut dyn Write) -> i32 {
    let result = load_polygon(input)
        .and_then(|(_, c)| ReportDocument::read(report).map(|r| (c, r)))
        .and_then(|(c, r)| write_svg(&c, &r, svg_path));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

/// One corpus row: the table cells and any failed checks.
fn corpus_row(name: &str, c: &ConvexPolygon) -> (Vec<String>, Vec<String>) {
    let mut fails = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            fails.push(what);
        }
    };
    let w = c.width().value;
    let d = c.diameter().value;
    let inr = c.inradius().value;
    let fmt = |v: f64| format!("{v:.9}");
    let mut cells = vec![name.to_string(), c.len().to_string(), fmt(w), fmt(d), fmt(inr)];

    for n in 2..=4 {
        match minmax_width_solve(c, n) {
            Ok(r) => check(
                (r.value - w / n as f64).abs() <= 1e-12 * w && r.balanced,
                format!("minmax width n={n} not exact or unbalanced"),
            ),
            Err(e) => check(false, format!("minmax width n={n}: {e}")),
        }
    }
    cells.push(fmt(w / 2.0));

    match conway_solve(c, 2) {
        Ok(r) => {
            check(r.value >= inr / 2.0 * (1.0 - 1e-9), "Conway value below I/2".into());
            cells.push(fmt(r.value));
            if c.len() <= 12 {
                match brute_2division(&c.clone().into(), Magnitude::Inradius, Objective::MinMax, &SearchGrid::default()) {
                    Ok((v, _)) => {
                        let delta = v - r.value;
                        check(delta >= -1e-9 && delta <= 1e-4, format!("Conway oracle delta {delta:e}"));
                        cells.push(format!("{delta:.2e}"));
                    }
                    Err(e) => {
                        check(false, format!("oracle: {e}"));
                        cells.push("error".into());
                    }
                }
            } else {
                cells.push("skipped".into());
            }
        }
        Err(e) => {
            check(false, format!("Conway n=2: {e}"));
            cells.extend(["error".to_string(), "-".to_string()]);
        }
    }

    match minmax_diameter_report(c, 4) {
        Ok(b) => {
            let worst = b.witness.as_ref().map(|t| t.leaves().iter().map(|l| l.diameter()).fold(0.0, f64::max));
            check(b.lower < b.upper, "diameter bounds out of order".into());
            check(worst.is_some_and(|m| m <= b.upper + 1e-9), "mesh witness exceeds upper bound".into());
            cells.push(format!("[{:.4}, {:.4}]", b.lower, b.upper));
        }
        Err(e) => {
            check(false, format!("minmax diameter: {e}"));
            cells.push("error".into());
        }
    }

    let (f, _) = maxmin_diameter_feasible(c, 2);
    for n in 2..=f.max_n.min(6) {
        if let Err(e) = maxmin_diameter_solve(c, n) {
            check(false, format!("maxmin diameter n={n}: {e}"));
        }
    }
    cells.push(f.max_n.to_string());

    match maxmin_width_2_solve(&c.clone().into(), 1e-9) {
        Ok(r) => {
            let ok = r.value >= w / 2.0 - 1e-9 && r.value <= w.min(d / 2.0) + 1e-9 && r.balanced;
            check(ok, "maxmin width outside bounds or unbalanced".into());
            cells.push(fmt(r.value));
        }
        Err(e) => {
            check(false, format!("maxmin width: {e}"));
            cells.push("error".into());
        }
    }

    match maxmin_inradius_2_solve(c, 1e-6) {
        Ok(r) => {
            check(r.value >= inr / 2.0 * (1.0 - 1e-9) && r.value <= inr * (1.0 + 1e-9), "maxmin inradius outside [I/2, I]".into());
            cells.push(fmt(r.value));
        }
        Err(e) => {
            check(false, format!("maxmin inradius: {e}"));
            cells.push("error".into());
        }
    }

    cells.push(if fails.is_empty() { "ok".into() } else { "FAIL".into() });
    (cells, fails)
}

fn corpus_command(dir: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let entries = match std::fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", dir.display());
            return EXIT_INPUT;
        }
    };
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        let _ = writeln!(err, "error: no polygon documents in {}", dir.display());
        return EXIT_INPUT;
    }
    let mut bodies = Vec::new();
    let mut bad = Vec::new();
    for f in &files {
        match load_polygon(f) {
            Ok(x) => bodies.push(x),
            Err(e) => bad.push(format!("{}: {e}", f.display())),
        }
    }
    if !bad.is_empty() {
        for b in &bad {
            let _ = writeln!(err, "invalid: {b}");
        }
        return EXIT_INPUT;
    }
    let header = [
        "body", "sides", "w", "D", "I", "min-Max w (n=2)", "Conway (n=2)", "oracle delta", "min-Max D bounds (n=4)",
        "max-min D maxN", "max-min w (n=2)", "max-min I (n=2)", "status",
    ];
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    let mut failures = 0;
    for (name, c) in &bodies {
        let (cells, fails) = corpus_row(name, c);
        let _ = writeln!(out, "| {} |", cells.join(" | "));
        for f in fails {
            failures += 1;
            let _ = writeln!(err, "{name}: {f}");
        }
    }
    if failures > 0 {
        EXIT_INPUT
    } else {
        EXIT_OK
    }
}
