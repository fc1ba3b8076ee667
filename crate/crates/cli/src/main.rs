use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use splinezero::arith::{format_rational, parse_rational};
use splinezero::boxspline::{box_spline_eval, conjecture_verdict, parse_point, VectorConfig};
use splinezero::bspline::{cardinal_bspline, extend_compact};
use splinezero::harness::{run_verification_suite, GeneratorConfig, SuiteKind};
use splinezero::spline::{check_theorem_bound, separated_zero_count};
use splinezero::{Error, Rational, Spline};

#[derive(Parser)]
#[command(name = "splinezero")]
#[command(about = "Exact zero counting for splines and box-spline collocation determinants")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the cardinal B-spline B_m piece by piece
    Bspline {
        #[arg(long)]
        m: usize,
        /// Also evaluate B_m at this rational
        #[arg(long)]
        eval: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Count separated zeros of a spline read from a JSON document
    Zeros {
        #[arg(long = "in")]
        input: PathBuf,
        /// Left end of the interval (default: first knot); inserted as a knot if needed
        #[arg(long)]
        from: Option<String>,
        /// Right end of the interval (default: last knot); inserted as a knot if needed
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Extend a spline to a compactly supported one that agrees on its knot span
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Run a seeded verification suite
    Verify {
        /// theorem9 | prop5 | corollary10 | extension | rolle
        #[arg(long)]
        kind: String,
        #[arg(long)]
        m: usize,
        /// Number of knot intervals n (the spline has n + 1 knots)
        #[arg(long)]
        knots: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Report elapsed_ms as 0 so reports compare byte for byte
        #[arg(long)]
        no_timing: bool,
    },
    /// Build A_X for a vector configuration and report its determinant
    Conjecture {
        /// Vectors such as "1,0;1,1;0,1"
        #[arg(long, allow_hyphen_values = true)]
        vectors: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the box spline B_X at a point
    Boxspline {
        #[arg(long, allow_hyphen_values = true)]
        vectors: String,
        /// Point such as "1,1/2"
        #[arg(long, allow_hyphen_values = true)]
        eval: String,
    },
}

/// Input and usage problems; these exit with status 2.
#[derive(Debug)]
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<ExitCode, UsageError>;

fn read_spline(path: &Path) -> Result<Spline, UsageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    Spline::from_json(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn bspline(m: usize, eval: Option<String>, as_json: bool) -> CmdResult {
    let b = cardinal_bspline(m)?;
    let value = eval.as_deref().map(parse_rational).transpose()?;
    if as_json {
        let mut doc = serde_json::to_value(b.spline().to_document()).expect("documents serialize");
        if let (Some(x), Some(obj)) = (&value, doc.as_object_mut()) {
            obj.insert("eval".into(), json!({"x": format_rational(x), "value": format_rational(&b.eval(x))}));
        }
        println!("{}", serde_json::to_string_pretty(&doc).expect("json values serialize"));
    } else {
        println!("B_{m}: degree {m}, support [0, {}]", m + 1);
        for k in 0..=m {
            println!("  [{k}, {}]: {}", k + 1, b.piece(k));
        }
        if let Some(x) = value {
            println!("B_{m}({}) = {}", format_rational(&x), format_rational(&b.eval(&x)));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// `s` with `x` as a knot, inserting it when it lies strictly inside.
fn with_knot(s: Spline, x: &Rational) -> Result<Spline, UsageError> {
    if s.knot_index(x).is_some() {
        return Ok(s);
    }
    s.insert_knot(x).map_err(|_| {
        UsageError(format!(
            "{} lies outside the knot span [{}, {}]",
            format_rational(x),
            format_rational(s.first_knot()),
            format_rational(s.last_knot())
        ))
    })
}

fn zeros(input: &Path, from: Option<String>, to: Option<String>, as_json: bool) -> CmdResult {
    let mut s = read_spline(input)?;
    if s.degree() == 0 {
        return Err(UsageError("zero counting needs degree at least 1".into()));
    }
    let a = from.as_deref().map(parse_rational).transpose()?.unwrap_or_else(|| s.first_knot().clone());
    let b = to.as_deref().map(parse_rational).transpose()?.unwrap_or_else(|| s.last_knot().clone());
    s = with_knot(s, &a)?;
    s = with_knot(s, &b)?;
    let (z, report) = separated_zero_count(&s, &a, &b)?;
    let whole = check_theorem_bound(&s)?;
    if as_json {
        let out = json!({
            "from": format_rational(&a),
            "to": format_rational(&b),
            "Z": z,
            "open_Z": report.open_component_count,
            "zero_cardinality": report.zero_cardinality(),
            "n": whole.n,
            "degree": whole.degree,
            "bound": whole.bound,
            "Z_span": whole.z,
            "census": report,
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json values serialize"));
    } else {
        println!("Z = {z} on [{}, {}]", format_rational(&a), format_rational(&b));
        println!("zeros strictly inside: {}", report.open_component_count);
        match report.zero_cardinality() {
            Some(c) => println!("zero set: {c} points"),
            None => println!("zero set: contains an interval"),
        }
        println!(
            "on the knot span: Z = {}, n = {}, m = {}, bound n + m - 1 = {}",
            whole.z, whole.n, whole.degree, whole.bound
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn extend(input: &Path, output: &Path) -> CmdResult {
    let s = read_spline(input)?;
    let e = extend_compact(&s)?;
    fs::write(output, e.to_json() + "\n")
        .map_err(|err| UsageError(format!("cannot write {}: {err}", output.display())))?;
    println!(
        "extended: {} knots on [{}, {}] written to {}",
        e.knots().len(),
        format_rational(e.first_knot()),
        format_rational(e.last_knot()),
        output.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn verify(kind: &str, m: usize, knots: usize, trials: u64, seed: u64, as_json: bool, no_timing: bool) -> CmdResult {
    let kind: SuiteKind = kind.parse()?;
    if knots == 0 {
        return Err(UsageError("--knots must be at least 1".into()));
    }
    let cfg = GeneratorConfig::new(seed, m, knots - 1);
    let mut report = run_verification_suite(kind, &cfg, trials)?;
    if no_timing {
        report.elapsed_ms = 0;
    }
    if as_json {
        println!("{}", report.to_json());
    } else {
        println!("{}", report.command);
        println!("trials: {}", report.trials);
        println!("violations: {}", report.violations);
        println!("max Z: {} (bound {})", report.max_z, report.bound);
        println!("witnesses: {}", report.witnesses.len());
        if !no_timing {
            println!("elapsed: {} ms", report.elapsed_ms);
        }
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn conjecture(vectors: &str, as_json: bool) -> CmdResult {
    let x: VectorConfig = vectors.parse()?;
    let v = conjecture_verdict(&x)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&v.to_json()).expect("json values serialize"));
        return Ok(ExitCode::SUCCESS);
    }
    println!("X = {x}");
    let omega: Vec<String> = v
        .omega
        .points
        .iter()
        .map(|p| format!("({})", p.iter().map(format_rational).collect::<Vec<_>>().join(",")))
        .collect();
    println!("|Ω| = {}: {}", v.omega.len(), omega.join(" "));
    if v.omega.proper_sublattice {
        println!("note: X generates a sublattice of index {}; Ω uses half of that lattice", v.omega.lattice_index);
    }
    print!("{}", v.matrix);
    println!("det = {}", format_rational(&v.determinant));
    match &v.unimodularity.witness {
        None => println!("unimodular: yes"),
        Some(w) => println!("unimodular: no (minor {:?} has det {})", w.vectors, w.det),
    }
    println!("invertible: {}", if v.invertible { "yes" } else { "NO" });
    Ok(ExitCode::SUCCESS)
}

fn boxspline(vectors: &str, eval: &str) -> CmdResult {
    let x: VectorConfig = vectors.parse()?;
    let p = parse_point(eval)?;
    let value = box_spline_eval(&x, &p)?;
    println!("{}", format_rational(&value));
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bspline { m, eval, json } => bspline(m, eval, json),
        Command::Zeros { input, from, to, json } => zeros(&input, from, to, json),
        Command::Extend { input, output } => extend(&input, &output),
        Command::Verify {
            kind,
            m,
            knots,
            trials,
            seed,
            json,
            no_timing,
        } => verify(&kind, m, knots, trials, seed, json, no_timing),
        Command::Conjecture { vectors, json } => conjecture(&vectors, json),
        Command::Boxspline { vectors, eval } => boxspline(&vectors, &eval),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
