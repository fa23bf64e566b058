//! `dilate` command-line front end.
//!
//! Exit status: 0 on success, 1 on a domain error (reported as
//! `{"error": {"code", "message", "witness"}}` on stdout), 2 on a usage error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use dilate::algebra::parse_polynomial;
use dilate::classify::{classify, h_value, matrix_h_value};
use dilate::compression::{bm_defect, full_compress, i_compress, is_compressed, CompressionBasis};
use dilate::constructions::{companion_pair, grid_box, kp_box, rot_line, skew_box};
use dilate::lattice::Lattice;
use dilate::pointset::{coset_partition, doubling_report, transform_sumset, PointSet};
use dilate::search::{
    closed_form_steps, final_constants_identity, minimize, parse_box, run_to_target, BootstrapMode,
    BootstrapState, SearchSpec, Strategy,
};
use dilate::{BigInt, BigRational, Error, IntMatrix, IntPolynomial, RatMatrix};

#[derive(Parser)]
#[command(name = "dilate", version, about = "Sumsets of linear transformations over Z^d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducibility, coprimality and bound constants of a matrix pair
    Classify(PairArgs),
    /// Matrix pair of an irreducible integer polynomial, with its classification
    Companion(PolyArgs),
    /// The invariant H of a polynomial or of a matrix pair
    Hvalue(HArgs),
    /// Size of L1 A + L2 A for a point-set file
    Sumset(SumsetArgs),
    /// Split a point set along the cosets of a lattice
    Partition(PartitionArgs),
    /// i-compression or full compression of a point set
    Compress(CompressArgs),
    /// Certified discrete Brunn-Minkowski defect of two point sets
    Bmcheck(BmArgs),
    /// Write one of the standard example point sets
    Generate(GenerateArgs),
    /// Minimize |L1 A + L2 A| over n-subsets of a box
    Minimize(MinimizeArgs),
    /// Trace the bootstrap deficit recursion as JSON lines
    Constants(ConstantsArgs),
}

fn int_matrix(s: &str) -> Result<IntMatrix, String> {
    let m: IntMatrix = s.parse().map_err(|e: Error| e.to_string())?;
    if !m.is_square() {
        return Err("matrix must be square".into());
    }
    Ok(m)
}

fn rat_matrix(s: &str) -> Result<RatMatrix, String> {
    let m: RatMatrix = s.parse().map_err(|e: Error| e.to_string())?;
    if !m.is_square() {
        return Err("matrix must be square".into());
    }
    Ok(m)
}

fn int_poly(s: &str) -> Result<IntPolynomial, String> {
    parse_polynomial::<BigInt>(s).map_err(|e| e.to_string())
}

fn strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone)]
struct Bounds(Vec<(i64, i64)>);

fn box_bounds(s: &str) -> Result<Bounds, String> {
    parse_box(s).map(Bounds).map_err(|e| e.to_string())
}

#[derive(Args)]
struct PairArgs {
    /// First matrix, rows separated by `;`, entries by `,`
    #[arg(long, value_parser = int_matrix, allow_hyphen_values = true)]
    l1: IntMatrix,
    /// Second matrix
    #[arg(long, value_parser = int_matrix, allow_hyphen_values = true)]
    l2: IntMatrix,
}

#[derive(Args)]
struct PolyArgs {
    /// Coefficients from the constant term upward, e.g. `-2,0,1`
    #[arg(long, value_parser = int_poly, allow_hyphen_values = true)]
    poly: IntPolynomial,
}

#[derive(Args)]
struct HArgs {
    #[arg(long, value_parser = int_poly, allow_hyphen_values = true, conflicts_with_all = ["l1", "l2"])]
    poly: Option<IntPolynomial>,
    #[arg(long, value_parser = int_matrix, allow_hyphen_values = true, requires = "l2")]
    l1: Option<IntMatrix>,
    #[arg(long, value_parser = int_matrix, allow_hyphen_values = true, requires = "l1")]
    l2: Option<IntMatrix>,
    /// Interval width at most 2^-BITS
    #[arg(long, default_value_t = 64)]
    tol_bits: u32,
}

#[derive(Args)]
struct SumsetArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Point-set file
    #[arg(long)]
    points: PathBuf,
    /// Also write the sumset to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long)]
    points: PathBuf,
    /// Lattice generator matrix (columns span the lattice)
    #[arg(long, value_parser = int_matrix, allow_hyphen_values = true)]
    lattice: IntMatrix,
}

#[derive(Args)]
struct CompressArgs {
    #[arg(long)]
    points: PathBuf,
    /// Basis vectors as matrix columns; standard basis by default
    #[arg(long, value_parser = rat_matrix, allow_hyphen_values = true)]
    basis: Option<RatMatrix>,
    /// Compress along this axis only (1-based); full compression otherwise
    #[arg(long)]
    axis: Option<usize>,
    /// Write the result here instead of listing it in the report
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BmArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, value_parser = rat_matrix, allow_hyphen_values = true)]
    basis: Option<RatMatrix>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    /// {(x, y) : 0 <= x < M, 0 <= y < N}
    Kp,
    /// {(x, 2y) : x, y in 1..=n}
    Skew,
    /// {(0, x) : x in 1..=n}
    RotLine,
    /// [0, s1) x ... x [0, sd)
    Box,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    shape: Shape,
    #[arg(long = "m")]
    m: Option<i64>,
    #[arg(short = 'n', long = "n")]
    n: Option<i64>,
    /// Side lengths for `box`, comma-separated
    #[arg(long)]
    sides: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MinimizeArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Set size, or an inclusive range `A:B`
    #[arg(short = 'n')]
    n: String,
    /// Inclusive bounds per axis, e.g. `0:3,0:3`
    #[arg(long = "box", value_parser = box_bounds, allow_hyphen_values = true)]
    bounds: Bounds,
    /// exhaustive | random:COUNT:SEED | anneal:STEPS:SEED
    #[arg(long, value_parser = strategy, default_value = "exhaustive")]
    strategy: Strategy,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// One `n,minimum,ratio` row per n
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long)]
    d: u32,
    #[arg(long, conflicts_with_all = ["p", "q"], required_unless_present = "p")]
    k: Option<u64>,
    #[arg(long, requires = "q")]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    q: Option<u64>,
    #[arg(long)]
    sigma1: f64,
    #[arg(long = "D")]
    big_d: f64,
    #[arg(long)]
    alpha0: f64,
    #[arg(long = "D1")]
    d1: f64,
    #[arg(long)]
    target_eps: f64,
    /// Coefficient D2' for the final constants; defaults to the final D1
    #[arg(long = "D2-prime")]
    d2_prime: Option<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: u64,
}

type Outcome = Result<String, Error>;

fn read_points(path: &Path) -> Result<PointSet, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    PointSet::parse(&text)
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

fn basis_for(basis: Option<RatMatrix>, d: usize) -> Result<CompressionBasis, Error> {
    match basis {
        Some(m) => CompressionBasis::new(m),
        None => Ok(CompressionBasis::standard(d)),
    }
}

fn run_classify(a: PairArgs) -> Outcome {
    Ok(to_json(&classify(&a.l1, &a.l2)?))
}

fn run_companion(a: PolyArgs) -> Outcome {
    let c = companion_pair(&a.poly)?;
    let report = classify(&c.l1, &c.l2)?;
    Ok(to_json(&json!({
        "polynomial": c.polynomial.to_string(),
        "b": c.b.to_string(),
        "l1": c.l1.to_string(),
        "l2": c.l2.to_string(),
        "classification": report,
    })))
}

fn run_hvalue(a: HArgs) -> Outcome {
    let tol = BigRational::new(BigInt::from(1), BigInt::from(1) << a.tol_bits);
    let h = match (a.poly, a.l1, a.l2) {
        (Some(f), _, _) => h_value(&f, &tol)?,
        (None, Some(l1), Some(l2)) => matrix_h_value(&l1, &l2, &tol)?,
        _ => return Err(Error::InvalidParameter("give --poly or both --l1 and --l2".into())),
    };
    Ok(to_json(&h))
}

fn run_sumset(a: SumsetArgs) -> Outcome {
    let pts = read_points(&a.points)?;
    let report = doubling_report(&a.pair.l1, &a.pair.l2, &pts)?;
    if let Some(out) = &a.out {
        write_file(out, &transform_sumset(&a.pair.l1, &a.pair.l2, &pts)?.to_file_string())?;
    }
    Ok(to_json(&report))
}

fn run_partition(a: PartitionArgs) -> Outcome {
    let pts = read_points(&a.points)?;
    let lattice = Lattice::from_generators(&a.lattice)?;
    let part = coset_partition(&pts, &lattice)?;
    let parts: Vec<Value> = part
        .parts
        .iter()
        .map(|(rep, set)| {
            json!({
                "rep": rep.iter().map(|x| x.to_string().parse::<i64>().unwrap_or(0)).collect::<Vec<_>>(),
                "size": set.len(),
                "points": set.points(),
            })
        })
        .collect();
    Ok(to_json(&json!({
        "lattice": lattice.to_string(),
        "index": lattice.index().to_string(),
        "n": pts.len(),
        "parts": parts,
    })))
}

fn run_compress(a: CompressArgs) -> Outcome {
    let pts = read_points(&a.points)?;
    let basis = basis_for(a.basis, pts.dim())?;
    let result = match a.axis {
        Some(i) if i == 0 || i > pts.dim() => return Err(Error::AxisOutOfRange { axis: i, dim: pts.dim() }),
        Some(i) => i_compress(&pts, i - 1, &basis)?,
        None => full_compress(&pts, &basis)?,
    };
    let compressed = result.iter().all(|p| p.iter().all(|&x| x >= 0)) && is_compressed(&result)?;
    let mut report = json!({ "n": result.len(), "compressed": compressed });
    match &a.out {
        Some(out) => write_file(out, &result.to_file_string())?,
        None => report["points"] = json!(result.points()),
    }
    Ok(to_json(&report))
}

fn run_bmcheck(a: BmArgs) -> Outcome {
    let sa = read_points(&a.a)?;
    let sb = read_points(&a.b)?;
    let basis = basis_for(a.basis, sa.dim())?;
    let r = bm_defect(&sa, &sb, &basis)?;
    Ok(to_json(&json!({
        "a": sa.len(),
        "b": sb.len(),
        "sumset": r.sumset,
        "projections": r.projections,
        "bound": r.bound,
        "defect": r.defect,
        "nonnegative": r.certified_nonnegative(),
    })))
}

fn need(name: &str, v: Option<i64>) -> Result<i64, Error> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--{name} is required for this shape")))
}

fn run_generate(a: GenerateArgs) -> Outcome {
    let set = match a.shape {
        Shape::Kp => kp_box(need("m", a.m)?, need("n", a.n)?)?,
        Shape::Skew => skew_box(need("n", a.n)?)?,
        Shape::RotLine => rot_line(need("n", a.n)?)?,
        Shape::Box => {
            let sides = a
                .sides
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("--sides is required for box".into()))?
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("side {t:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            grid_box(&sides)?
        }
    };
    let text = set.to_file_string();
    match &a.out {
        Some(out) => {
            write_file(out, &text)?;
            Ok(to_json(&json!({ "n": set.len(), "path": out.display().to_string() })))
        }
        None => Ok(text.trim_end().to_string()),
    }
}

fn n_range(s: &str) -> Result<(usize, usize), Error> {
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("-n {s:?}: {e}")));
    match s.split_once(':') {
        Some((a, b)) => Ok((p(a)?, p(b)?)),
        None => {
            let n = p(s)?;
            Ok((n, n))
        }
    }
}

fn run_minimize(a: MinimizeArgs) -> Outcome {
    let (lo, hi) = n_range(&a.n)?;
    let mut lines = Vec::new();
    if a.csv {
        lines.push("n,minimum,ratio".to_string());
    }
    for n in lo..=hi {
        let mut spec = SearchSpec::new(a.pair.l1.clone(), a.pair.l2.clone(), n, a.bounds.0.clone(), a.strategy);
        spec.workers = a.workers;
        let r = minimize(&spec)?;
        let ratio = BigRational::new(BigInt::from(r.minimum), BigInt::from(n));
        if a.csv {
            lines.push(format!("{n},{},{ratio}", r.minimum));
        } else if a.json {
            let mut v = serde_json::to_value(&r).expect("result serializes");
            v["strategy"] = json!(a.strategy.to_string());
            v["ratio"] = json!(ratio.to_string());
            lines.push(to_json(&v));
        } else {
            lines.push(format!(
                "n={n} minimum={} ratio={ratio} exact={} witness={}",
                r.minimum, r.exact, r.witness
            ));
        }
    }
    Ok(lines.join("\n"))
}

fn run_constants(a: ConstantsArgs) -> Outcome {
    let state = match (a.k, a.p, a.q) {
        (Some(k), _, _) => BootstrapState::identity(a.d, k, a.alpha0, a.d1, a.sigma1, a.big_d)?,
        (None, Some(p), Some(q)) => BootstrapState::pair(a.d, p, q, a.alpha0, a.d1, a.sigma1, a.big_d)?,
        _ => return Err(Error::InvalidParameter("give --k or both --p and --q".into())),
    };
    let trace = run_to_target(&state, a.target_eps, a.max_steps)?;
    let mut lines: Vec<String> = trace.iter().map(to_json).collect();
    let last = trace.last().expect("trace has the initial state");
    let mut summary = json!({ "steps": last.m });
    if let BootstrapMode::Identity { k } = state.mode {
        summary["closed_form_steps"] = json!(closed_form_steps(a.alpha0, a.target_eps, k));
        let d2p = a.d2_prime.unwrap_or(last.d1);
        if d2p.is_finite() {
            let (sigma2, d2) = final_constants_identity(a.d, k, a.sigma1, a.big_d, a.target_eps, d2p)?;
            summary["sigma2"] = json!(sigma2);
            summary["D2"] = json!(d2);
        } else {
            // D1 left the f64 range; sigma2 does not depend on it
            let (sigma2, _) = final_constants_identity(a.d, k, a.sigma1, a.big_d, a.target_eps, 1.0)?;
            summary["sigma2"] = json!(sigma2);
            summary["D2"] = json!("inf");
        }
    }
    lines.push(to_json(&json!({ "final": summary })));
    Ok(lines.join("\n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Classify(a) => run_classify(a),
        Command::Companion(a) => run_companion(a),
        Command::Hvalue(a) => run_hvalue(a),
        Command::Sumset(a) => run_sumset(a),
        Command::Partition(a) => run_partition(a),
        Command::Compress(a) => run_compress(a),
        Command::Bmcheck(a) => run_bmcheck(a),
        Command::Generate(a) => run_generate(a),
        Command::Minimize(a) => run_minimize(a),
        Command::Constants(a) => run_constants(a),
    };
    let mut out = io::stdout().lock();
    match outcome {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let report = json!({
                "error": {
                    "code": e.code(),
                    "message": e.to_string(),
                    "witness": e.witness(),
                }
            });
            let _ = writeln!(out, "{report}");
            ExitCode::from(1)
        }
    }
}
