//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde_json::json;

use crate::algebra::{format_rational, parse_rational, rat, Rational};
use crate::classification::{classify_with_tolerance, orientation_consistency_check, BInvariant, OrientationCheck, Verdict};
use crate::cohomology::{cohomology, standard_arrangement, CohomologyReport, CohomologyTheory, Source};
use crate::divisor::StarDivisorModel;
use crate::frames::{expected_tangent_dim, verify_frame_generation, LineArrangement};
use crate::pages::{expected_page_dims, page_cohomology_dims, PageModel, Theory};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "starlog", version, about = "Cohomology and classification of star log symplectic surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lie algebroid cohomology dimensions of a divisor.
    Cohomology {
        divisor: PathBuf,
        #[arg(long, value_enum, default_value_t = TheoryArg::Poisson)]
        theory: TheoryArg,
        /// Print every summand.
        #[arg(long)]
        breakdown: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two invariants describe symplectomorphic forms.
    Classify {
        divisor: PathBuf,
        inv0: PathBuf,
        inv1: PathBuf,
        /// Largest coordinate difference still counted as equal.
        #[arg(long, default_value = "0")]
        tol: String,
        #[arg(long)]
        json: bool,
    },
    /// Check that the two frame fields generate all tangent fields.
    VerifyFrames(VerifyFrames),
    /// Local page cohomology against the expected dimensions.
    VerifyPages {
        #[arg(long, value_enum)]
        theory: PageTheoryArg,
        #[arg(long)]
        k: usize,
        /// Trials after the first run on random arrangements.
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long)]
        json: bool,
    },
    /// Report every structural problem of a divisor file.
    Validate {
        divisor: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct VerifyFrames {
    /// Divisor file; requires --point.
    #[arg(conflicts_with = "lines", requires = "point")]
    pub divisor: Option<PathBuf>,
    #[arg(long)]
    pub point: Option<String>,
    /// Lines `A,B;A,B;…`. Starting with `1,0;0,1` gives the full list,
    /// otherwise the entries are added after the two axes.
    #[arg(long, required_unless_present = "divisor")]
    pub lines: Option<String>,
    #[arg(long)]
    pub max_degree: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TheoryArg {
    B,
    Zero,
    Poisson,
}

impl From<TheoryArg> for CohomologyTheory {
    fn from(t: TheoryArg) -> Self {
        match t {
            TheoryArg::B => Self::B,
            TheoryArg::Zero => Self::Zero,
            TheoryArg::Poisson => Self::Poisson,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PageTheoryArg {
    B,
    Zero,
}

impl From<PageTheoryArg> for Theory {
    fn from(t: PageTheoryArg) -> Self {
        match t {
            PageTheoryArg::B => Self::B,
            PageTheoryArg::Zero => Self::Zero,
        }
    }
}

/// Parses `argv` (program name first) and runs it, writing to the given
/// streams. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
    }
}

type Outcome = Result<i32, String>;

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Cohomology { divisor, theory, breakdown, json } => {
            let d = load_valid(&divisor)?;
            let report = cohomology(&d, theory.into()).map_err(|e| e.to_string())?;
            if json {
                emit(out, &report.to_json())?;
            } else {
                emit(out, &format!("H0={} H1={} H2={}", report.dims[0], report.dims[1], report.dims[2]))?;
                if breakdown {
                    emit(out, &breakdown_table(&report))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Classify { divisor, inv0, inv1, tol, json } => {
            let d = load_valid(&divisor)?;
            let tol = parse_rational(&tol).map_err(|e| format!("--tol: {e}"))?;
            let a = BInvariant::load(&inv0).map_err(|e| format!("{}: {e}", inv0.display()))?;
            let b = BInvariant::load(&inv1).map_err(|e| format!("{}: {e}", inv1.display()))?;
            let verdict = classify_with_tolerance(&d, &a, &b, &tol).map_err(|e| e.to_string())?;
            let mut warnings = Vec::new();
            for (path, inv) in [(&inv0, &a), (&inv1, &b)] {
                let check = orientation_consistency_check(&d, inv).map_err(|e| e.to_string())?;
                if check != OrientationCheck::Ok {
                    warnings.push(format!("{}: {check}", path.display()));
                }
            }
            for w in &warnings {
                let _ = writeln!(err, "{w}");
            }
            if json {
                let reason = match &verdict {
                    Verdict::Isomorphic => serde_json::Value::Null,
                    Verdict::NotIsomorphic(c) => json!(c.to_string()),
                };
                let kind = if verdict.is_isomorphic() { "Isomorphic" } else { "NotIsomorphic" };
                let value = json!({"verdict": kind, "reason": reason, "tolerance": format_rational(&tol), "warnings": warnings});
                emit(out, &pretty(&value))?;
            } else {
                emit(out, &verdict.to_string())?;
            }
            Ok(if verdict.is_isomorphic() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::VerifyFrames(args) => verify_frames(args, out),
        Command::VerifyPages { theory, k, trials, json } => verify_pages(theory.into(), k, trials, json, out),
        Command::Validate { divisor, json } => {
            let d = StarDivisorModel::load(&divisor).map_err(|e| e.to_string())?;
            let violations: Vec<String> = match d.validate() {
                Ok(()) => vec![],
                Err(v) => v.iter().map(ToString::to_string).collect(),
            };
            if json {
                emit(out, &pretty(&json!({"valid": violations.is_empty(), "violations": violations})))?;
            } else if violations.is_empty() {
                emit(out, "ok")?;
            } else {
                for v in &violations {
                    emit(out, v)?;
                }
            }
            Ok(if violations.is_empty() { EXIT_OK } else { EXIT_INPUT })
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), String> {
    writeln!(out, "{text}").map_err(|e| e.to_string())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value")
}

fn load_valid(path: &PathBuf) -> Result<StarDivisorModel, String> {
    let d = StarDivisorModel::load(path).map_err(|e| e.to_string())?;
    d.ensure_valid().map_err(|e| e.to_string())?;
    Ok(d)
}

fn breakdown_table(report: &CohomologyReport) -> String {
    let mut rows = vec![("deg".to_string(), "dim".to_string(), "source".to_string(), "summand".to_string())];
    for (deg, summands) in report.breakdown.iter().enumerate() {
        for s in summands {
            let source = match &s.source {
                Source::Surface => "surface".to_string(),
                Source::Curve { curve } => format!("curve {curve}"),
                Source::Subset { point, curves } => format!("point {point} {{{}}}", curves.join(",")),
                Source::Stratum { curves } => format!("stratum {{{}}}", curves.join(",")),
            };
            rows.push((deg.to_string(), s.dim.to_string(), source, s.tag.clone()));
        }
    }
    let w: Vec<usize> = [0, 1, 2]
        .iter()
        .map(|&i| {
            rows.iter()
                .map(|r| [&r.0, &r.1, &r.2][i].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let pad = |s: &str, n: usize| format!("{s}{}", " ".repeat(n - s.chars().count()));
    rows.iter()
        .map(|r| format!("{}  {}  {}  {}", pad(&r.0, w[0]), pad(&r.1, w[1]), pad(&r.2, w[2]), r.3))
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_lines(text: &str) -> Result<Vec<(Rational, Rational)>, String> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(format!("--lines: expected `A,B`, got {pair:?}"));
            }
            let p = |s: &str| parse_rational(s).map_err(|e| format!("--lines: {e}"));
            Ok((p(parts[0])?, p(parts[1])?))
        })
        .collect()
}

fn arrangement_from_lines(text: &str) -> Result<LineArrangement, String> {
    let lines = parse_lines(text)?;
    let axes = [(rat(1), rat(0)), (rat(0), rat(1))];
    let result = if lines.len() >= 2 && lines[..2] == axes {
        LineArrangement::new(lines)
    } else {
        LineArrangement::with_extra_lines(lines)
    };
    result.map_err(|e| format!("--lines: {e}"))
}

fn describe(arr: &LineArrangement) -> String {
    arr.lines()
        .iter()
        .map(|(a, b)| format!("{},{}", format_rational(a), format_rational(b)))
        .collect::<Vec<_>>()
        .join(";")
}

fn verify_frames(args: VerifyFrames, out: &mut dyn Write) -> Outcome {
    let arr = match (&args.lines, &args.divisor, &args.point) {
        (Some(lines), _, _) => arrangement_from_lines(lines)?,
        (None, Some(path), Some(point)) => {
            let d = load_valid(path)?;
            let p = d.point(point).map_err(|e| e.to_string())?;
            let slopes = d.resolve_slopes(p).into_iter().map(|(_, s)| s).collect();
            LineArrangement::new(slopes).map_err(|e| e.to_string())?
        }
        _ => return Err("give either --lines or a divisor with --point".into()),
    };
    let report = verify_frame_generation(&arr, args.max_degree);
    let k = arr.k();
    let closed_form_holds = report.degrees.iter().all(|c| c.tangent_dim == expected_tangent_dim(k, c.degree));
    let passed = report.passed() && closed_form_holds;
    let verdict = if passed { "PASS" } else { "FAIL" };
    if args.json {
        let degrees: Vec<_> = report
            .degrees
            .iter()
            .map(|c| {
                json!({"degree": c.degree, "tangent_dim": c.tangent_dim, "span_dim": c.span_dim,
                       "expected_dim": expected_tangent_dim(k, c.degree), "equal": c.equal()})
            })
            .collect();
        emit(out, &pretty(&json!({"lines": describe(&arr), "k": k, "degrees": degrees, "passed": passed})))?;
    } else {
        emit(out, &format!("lines {} (k = {k})", describe(&arr)))?;
        emit(out, "m  tangent  span  expected")?;
        for c in &report.degrees {
            let mark = if c.equal() && c.tangent_dim == expected_tangent_dim(k, c.degree) { "" } else { "  <-" };
            emit(out, &format!("{:<2} {:<8} {:<5} {}{mark}", c.degree, c.tangent_dim, c.span_dim, expected_tangent_dim(k, c.degree)))?;
        }
        emit(out, verdict)?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAIL })
}

fn verify_pages(theory: Theory, k: usize, trials: usize, json: bool, out: &mut dyn Write) -> Outcome {
    if k < 2 {
        return Err(format!("--k must be at least 2, got {k}"));
    }
    let expected = expected_page_dims(theory, k);
    let mut rng = rand::rngs::StdRng::seed_from_u64(k as u64);
    let mut runs = Vec::new();
    for t in 0..trials.max(1) {
        let arr = if t == 0 { standard_arrangement(k) } else { LineArrangement::random(k, &mut rng) };
        let model = PageModel::new(theory, arr.clone()).map_err(|e| e.to_string())?;
        let c = page_cohomology_dims(&model).map_err(|e| e.to_string())?;
        runs.push((arr, c.dims()));
    }
    let passed = runs.iter().all(|(_, d)| *d == expected);
    let fmt = |d: (usize, usize, usize)| format!("({},{},{})", d.0, d.1, d.2);
    if json {
        let trials: Vec<_> = runs.iter().map(|(a, d)| json!({"lines": describe(a), "dims": [d.0, d.1, d.2]})).collect();
        emit(
            out,
            &pretty(&json!({"theory": theory.to_string(), "k": k, "expected": [expected.0, expected.1, expected.2],
                            "trials": trials, "passed": passed})),
        )?;
    } else {
        for (a, d) in &runs {
            emit(out, &format!("lines {}: {}", describe(a), fmt(*d)))?;
        }
        let shown = runs.iter().map(|(_, d)| *d).find(|d| *d != expected).unwrap_or(expected);
        if passed {
            emit(out, &format!("{} PASS", fmt(shown)))?;
        } else {
            emit(out, &format!("{} FAIL (expected {})", fmt(shown), fmt(expected)))?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAIL })
}
