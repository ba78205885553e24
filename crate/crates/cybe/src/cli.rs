//! Command-line surface: reproducible build / verify / expand / recipe /
//! enumerate / export runs with JSON and LaTeX artifacts.
//!
//! Every emitted solution ships with a residual certificate (the exact zero
//! polynomials plus seeded point evaluations, with the points logged).
//! Outputs are deterministic: canonical term orders everywhere, no ambient
//! state, and the seed recorded in the artifact. Exit codes: 0 success,
//! 1 verification failure, 2 malformed input; errors are emitted as JSON
//! on stderr.

use crate::grading::{coxeter_auto, identity_auto, load_graded_auto, GradedAuto, GradedAutoFile};
use crate::latex::{latex_display, latex_rmat};
use crate::liealg::{make_sl, FormKind, LieAlgebra, Tensor2};
use crate::loops::{root_decomposition, LoopAlgebra, LoopElt, LoopEltFile};
use crate::manin::{
    check_manin, cuspidal_recipe, expand_rational, nodal_recipe, normalize_exp, series_w,
    standard_w, trunc_from_file, trunc_to_file, twist_equation_residual, w_trg, SeriesRep,
    TruncSubspace, TruncSubspaceFile,
};
use crate::rat::{parse_rat, rat_str, Rat};
use crate::rtensor::{
    constant_cybe_residual, cybe_eval_at, cybe_residual, rmat_from_file, rmat_to_file, skew_residual,
    Denom, RMatElem, RMatFile,
};
use crate::solutions::{
    bd_twist, cg_solution, covector_gram, enumerate_bd_triples, jimbo_standard_r, lambda1,
    quasi_constant, solve_consistency, standard_r, BDQuadruple, GenBDQuadruple, QcKind,
};
use clap::{Args, Parser, Subcommand};
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "cybe",
    about = "Exact construction and verification of classical Yang-Baxter solutions",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Construct a solution family member.
    Build {
        #[command(subcommand)]
        family: BuildCmd,
    },
    /// Check residuals of a stored artifact.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Formal series expansion of a stored solution.
    Expand(ExpandArgs),
    /// Dual-basis reconstruction from a Lagrangian subspace.
    Recipe {
        #[command(subcommand)]
        kind: RecipeCmd,
    },
    /// Enumerate classification data.
    Enumerate {
        #[command(subcommand)]
        what: EnumCmd,
    },
    /// Emit LaTeX or a full catalog.
    Export {
        #[command(subcommand)]
        what: ExportCmd,
    },
}

/// Ambient algebra flags shared by most commands.
#[derive(Args, Debug, Clone, Serialize)]
struct AlgOpts {
    /// Rank parameter n of sl_n.
    #[arg(long = "sl", default_value_t = 2)]
    sl: usize,
    /// Automorphism: `id`, `coxeter`, or `file:PATH` (GradedAuto JSON).
    #[arg(long, default_value = "id")]
    sigma: String,
    /// Invariant form: `trace` or `killing`.
    #[arg(long, default_value = "trace")]
    form: String,
}

/// Output and reproducibility flags.
#[derive(Args, Debug, Clone, Serialize)]
struct IoOpts {
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the logged random point evaluations.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Scale the emitted tensor by a rational factor p/q.
    #[arg(long)]
    rescale: Option<String>,
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    /// The standard (quasi-)trigonometric solution r_◦ for (sl_n, σ).
    Standard {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
    },
    /// The Drinfeld–Jimbo form ½(x+y)/(x−y)γ + ½Σ e_{−α}∧e_α (σ = id).
    Jimbo {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
    },
    /// r_◦ + Belavin–Drinfeld twist for an enumerated quadruple (Coxeter σ).
    Bd {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
        /// Index into the canonical enumeration of triples.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// r_◦ + general (σ-arbitrary) Belavin–Drinfeld twist.
    GeneralBd {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
        /// Index into the canonical enumeration of triples.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Root-decomposition window.
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// The (c,d) solution of Cremmer–Gervais type.
    Cg {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Quasi-constant solution from a constant cCYBE tensor.
    Quasiconstant {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
        /// Path to the constant tensor JSON `[[i, j, "p/q"], …]`.
        #[arg(long)]
        tensor: PathBuf,
        /// Constant equation kind: `trig` (λ=1) or `rat` (λ=0).
        #[arg(long, default_value = "trig")]
        kind: String,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Exact CYBE residual of a stored solution, plus seeded point checks.
    Cybe {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
        #[arg(long)]
        input: PathBuf,
    },
    /// Skew-symmetry residual r(x,y) + r²¹(y,x).
    Skew {
        #[command(flatten)]
        io: IoOpts,
        #[arg(long)]
        input: PathBuf,
    },
    /// Twist equation alt((δ_◦⊗1)t) = [[t,t]] for a stored twist.
    TwistEq {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
        #[arg(long)]
        input: PathBuf,
    },
    /// Constant CYBE residuals for a stored tensor.
    Constant {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "trig")]
        kind: String,
    },
    /// Manin-triple report (isotropy, complementarity, closure) for a
    /// stored truncated subspace.
    Manin {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[command(flatten)]
    alg: AlgOpts,
    #[command(flatten)]
    io: IoOpts,
    #[arg(long)]
    input: PathBuf,
    /// Series truncation order in the second variable.
    #[arg(long, default_value_t = 6)]
    order: i64,
    /// Exp-substitution normalization for trigonometric denominators.
    #[arg(long, default_value_t = false)]
    normalize: bool,
    /// Power-series working precision for the normalized expansion.
    #[arg(long, default_value_t = 20)]
    prec: i64,
    /// Also run the duality/constraint report to this order.
    #[arg(long)]
    check: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum RecipeCmd {
    /// Nodal dual-basis reconstruction from a Lagrangian pair subspace.
    Nodal {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
        /// Subspace: `standard`, `trg:C,D`, or a TruncSubspace JSON path.
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 8)]
        window: i64,
    },
    /// Cuspidal dual-basis reconstruction inside g((z⁻¹)).
    Cuspidal {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
        /// Subspace: `yang` or a JSON path `{window, vectors: [LoopElt]}`.
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 8)]
        window: i64,
    },
}

#[derive(Subcommand, Debug)]
enum EnumCmd {
    /// All Belavin–Drinfeld triples with consistency solutions.
    BdTriples {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
    },
}

#[derive(Subcommand, Debug)]
enum ExportCmd {
    /// LaTeX fragment for a stored solution.
    Latex {
        #[command(flatten)]
        alg: AlgOpts,
        #[command(flatten)]
        io: IoOpts,
        #[arg(long)]
        input: PathBuf,
    },
    /// Full catalog: catalog/<family>/<id>/{solution.json, certificate.json,
    /// solution.tex}.
    Catalog {
        #[command(flatten)]
        io: IoOpts,
        /// Catalog root directory.
        #[arg(long)]
        out_dir: PathBuf,
    },
}

// ---------------------------------------------------------------------------
// Errors and documents
// ---------------------------------------------------------------------------

#[derive(Debug)]
enum CliError {
    /// Exit 2: bad flags, unreadable files, schema violations.
    Malformed(String),
    /// Exit 1: residuals nonzero, reports failing.
    Verification(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
    fn emit(&self) {
        let (kind, message) = match self {
            CliError::Malformed(m) => ("malformed", m),
            CliError::Verification(m) => ("verification", m),
        };
        let doc = serde_json::json!({"error": {"kind": kind, "message": message}});
        eprintln!("{doc}");
    }
}

/// A logged random evaluation point with its residual status.
#[derive(Debug, Serialize, Deserialize)]
pub struct SamplePoint {
    pub x1: String,
    pub x2: String,
    pub x3: String,
    pub residual_zero: bool,
}

/// The residual certificate attached to every emitted solution.
#[derive(Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub cybe_residual_zero: bool,
    pub skew_residual_zero: bool,
    pub seed: u64,
    pub samples: Vec<SamplePoint>,
}

/// A complete build artifact.
#[derive(Debug, Serialize)]
struct SolutionDoc {
    family: String,
    config: serde_json::Value,
    solution: RMatFile,
    latex: String,
    certificate: Certificate,
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Parse and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own usage text; keep it on stderr.
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(e) => {
            e.emit();
            e.code()
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Build { family } => build(family),
        Cmd::Verify { what } => verify(what),
        Cmd::Expand(args) => expand(args),
        Cmd::Recipe { kind } => recipe(kind),
        Cmd::Enumerate { what } => enumerate(what),
        Cmd::Export { what } => export(what),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn malformed<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Malformed(e.to_string())
}

fn parse_form(s: &str) -> Result<FormKind, CliError> {
    match s {
        "trace" => Ok(FormKind::Trace),
        "killing" => Ok(FormKind::Killing),
        other => Err(CliError::Malformed(format!("unknown form `{other}`"))),
    }
}

fn make_algebra(opts: &AlgOpts) -> Result<LieAlgebra, CliError> {
    make_sl(opts.sl, parse_form(&opts.form)?).map_err(malformed)
}

fn make_auto(alg: &LieAlgebra, sigma: &str) -> Result<GradedAuto, CliError> {
    match sigma {
        "id" => Ok(identity_auto(alg)),
        "coxeter" => coxeter_auto(alg).map_err(malformed),
        other => {
            let Some(path) = other.strip_prefix("file:") else {
                return Err(CliError::Malformed(format!("unknown sigma `{other}`")));
            };
            let file: GradedAutoFile = read_json(Path::new(path))?;
            load_graded_auto(alg, &file).map_err(malformed)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn write_artifact(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        None => {
            // A closed pipe (e.g. piping into `head`) is not an error.
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{text}");
            Ok(())
        }
        Some(p) => {
            if let Some(dir) = p.parent() {
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(dir).map_err(malformed)?;
                }
            }
            std::fs::write(p, format!("{text}\n")).map_err(malformed)
        }
    }
}

fn emit_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(malformed)?;
    write_artifact(out, &text)
}

fn apply_rescale(r: RMatElem, io: &IoOpts) -> Result<RMatElem, CliError> {
    match &io.rescale {
        None => Ok(r),
        Some(s) => {
            let c = parse_rat(s).map_err(CliError::Malformed)?;
            if c.is_zero() {
                return Err(CliError::Malformed("rescale factor must be nonzero".into()));
            }
            Ok(r.scale(&c))
        }
    }
}

/// Seeded sample evaluations of the CYBE left-hand side, points logged.
pub fn sample_certificate(
    alg: &LieAlgebra,
    r: &RMatElem,
    seed: u64,
) -> Certificate {
    let cybe_zero = cybe_residual(alg, r).is_zero();
    let skew_zero = skew_residual(r).is_zero();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    let mut drawn = 0;
    while drawn < 3 {
        // Distinct nonzero small rationals keep every denominator valid.
        let pick = |rng: &mut ChaCha8Rng| -> Rat {
            let p: i64 = rng.gen_range(1..50);
            let q: i64 = rng.gen_range(1..8);
            crate::rat::rat(p, q)
        };
        let x1 = pick(&mut rng);
        let x2 = pick(&mut rng);
        let x3 = pick(&mut rng);
        let m = r.m as i32;
        let distinct = |a: &Rat, b: &Rat| a.pow(m) != b.pow(m);
        if !(distinct(&x1, &x2) && distinct(&x1, &x3) && distinct(&x2, &x3)) {
            continue;
        }
        let zero = match cybe_eval_at(alg, r, &x1, &x2, &x3) {
            Ok(t) => t.values().all(|c| c.is_zero()),
            Err(_) => false,
        };
        samples.push(SamplePoint {
            x1: rat_str(&x1),
            x2: rat_str(&x2),
            x3: rat_str(&x3),
            residual_zero: zero,
        });
        drawn += 1;
    }
    Certificate {
        cybe_residual_zero: cybe_zero,
        skew_residual_zero: skew_zero,
        seed,
        samples,
    }
}

fn emit_solution(
    family: &str,
    config: serde_json::Value,
    alg: &LieAlgebra,
    r: RMatElem,
    io: &IoOpts,
) -> Result<(), CliError> {
    let r = apply_rescale(r, io)?;
    let certificate = sample_certificate(alg, &r, io.seed);
    if !certificate.cybe_residual_zero || !certificate.skew_residual_zero {
        return Err(CliError::Verification(format!(
            "{family}: emitted solution has nonzero residual"
        )));
    }
    let doc = SolutionDoc {
        family: family.to_string(),
        config,
        latex: latex_rmat(alg, &r),
        solution: rmat_to_file(&r),
        certificate,
    };
    emit_json(&io.out, &doc)
}

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

/// Canonical BD quadruples: every enumerated triple paired with the
/// particular consistency solution.
fn bd_quadruples(alg: &LieAlgebra, auto: &GradedAuto) -> Result<Vec<BDQuadruple>, CliError> {
    let l1 = lambda1(alg, auto).map_err(malformed)?;
    let alphas: Vec<Vec<Rat>> = l1.iter().map(|e| e.alpha.clone()).collect();
    let gram = covector_gram(alg, &auto.g0_cartan, &alphas).map_err(malformed)?;
    let comp = crate::grading::casimir_components(alg, auto).map_err(malformed)?;
    let mut out = Vec::new();
    for triple in enumerate_bd_triples(&gram) {
        let pairs: Vec<(Vec<Rat>, Vec<Rat>)> = triple
            .gamma1
            .iter()
            .zip(&triple.tau)
            .map(|(&a, &b)| (l1[b].alpha.clone(), l1[a].alpha.clone()))
            .collect();
        let sol =
            solve_consistency(&auto.g0_cartan, &pairs, &comp.gamma0_zero).map_err(malformed)?;
        out.push(BDQuadruple { triple, s: sol.particular });
    }
    Ok(out)
}

fn build(cmd: BuildCmd) -> Result<(), CliError> {
    match cmd {
        BuildCmd::Standard { alg: aopts, io } => {
            let alg = make_algebra(&aopts)?;
            let auto = make_auto(&alg, &aopts.sigma)?;
            let r = standard_r(&alg, &auto).map_err(malformed)?;
            let config = serde_json::json!({"alg": aopts, "seed": io.seed});
            emit_solution("standard", config, &alg, r, &io)
        }
        BuildCmd::Jimbo { alg: aopts, io } => {
            let alg = make_algebra(&aopts)?;
            if aopts.sigma != "id" {
                return Err(CliError::Malformed(
                    "jimbo form is defined for sigma = id".into(),
                ));
            }
            let r = jimbo_standard_r(&alg).map_err(malformed)?;
            let config = serde_json::json!({"alg": aopts, "seed": io.seed});
            emit_solution("jimbo", config, &alg, r, &io)
        }
        BuildCmd::Bd { alg: aopts, io, index } => {
            let alg = make_algebra(&aopts)?;
            let auto = make_auto(&alg, &aopts.sigma)?;
            let quads = bd_quadruples(&alg, &auto)?;
            let q = quads
                .get(index)
                .ok_or_else(|| CliError::Malformed(format!("index {index} out of range ({} quadruples)", quads.len())))?;
            let t = bd_twist(&alg, &auto, q).map_err(malformed)?;
            let r0 = standard_r(&alg, &auto).map_err(malformed)?;
            let r = r0
                .add(&t.promote(Denom::XmYm).map_err(malformed)?)
                .map_err(malformed)?;
            let config = serde_json::json!({
                "alg": aopts, "seed": io.seed, "index": index,
                "triple": q.triple,
            });
            emit_solution("bd", config, &alg, r, &io)
        }
        BuildCmd::GeneralBd { alg: aopts, io, index, window } => {
            let alg = make_algebra(&aopts)?;
            let auto = make_auto(&alg, &aopts.sigma)?;
            let la = LoopAlgebra { alg: alg.clone(), auto: auto.clone() };
            let datum = root_decomposition(&la, window).map_err(malformed)?;
            let weights: Vec<Vec<Rat>> = datum
                .simple
                .iter()
                .map(|&s| datum.roots[s].0.alpha.clone())
                .collect();
            let gram = covector_gram(&alg, &datum.cartan, &weights).map_err(malformed)?;
            let comp = crate::grading::casimir_components(&alg, &auto).map_err(malformed)?;
            let triples = enumerate_bd_triples(&gram);
            let triple = triples
                .get(index)
                .ok_or_else(|| CliError::Malformed(format!("index {index} out of range ({} triples)", triples.len())))?;
            let pairs: Vec<(Vec<Rat>, Vec<Rat>)> = triple
                .gamma1
                .iter()
                .zip(&triple.tau)
                .map(|(&a, &b)| (weights[b].clone(), weights[a].clone()))
                .collect();
            let sol = solve_consistency(&datum.cartan, &pairs, &comp.gamma0_zero)
                .map_err(malformed)?;
            let q = GenBDQuadruple {
                gamma1: triple.gamma1.clone(),
                gamma2: triple.gamma2.clone(),
                tau: triple.tau.clone(),
                s: sol.particular,
            };
            let t = crate::solutions::general_bd_twist(&la, &datum, &q).map_err(malformed)?;
            let r0 = standard_r(&alg, &auto).map_err(malformed)?;
            let r = r0
                .add(&t.promote(Denom::XmYm).map_err(malformed)?)
                .map_err(malformed)?;
            let config = serde_json::json!({
                "alg": aopts, "seed": io.seed, "index": index,
                "window": window, "triple": triple,
            });
            emit_solution("general-bd", config, &alg, r, &io)
        }
        BuildCmd::Cg { c, d, io } => {
            let (alg, r) = cg_solution(c, d).map_err(malformed)?;
            let config = serde_json::json!({"c": c, "d": d, "seed": io.seed});
            emit_solution("cg", config, &alg, r, &io)
        }
        BuildCmd::Quasiconstant { alg: aopts, io, tensor, kind } => {
            let alg = make_algebra(&aopts)?;
            let t = read_tensor2(&tensor)?;
            let kind = parse_kind(&kind)?;
            let r = quasi_constant(&alg, &t, kind).map_err(malformed)?;
            let config = serde_json::json!({
                "alg": aopts, "seed": io.seed,
                "kind": kind, "tensor": tensor.display().to_string(),
            });
            emit_solution("quasiconstant", config, &alg, r, &io)
        }
    }
}

fn parse_kind(s: &str) -> Result<QcKind, CliError> {
    match s {
        "trig" => Ok(QcKind::Trig),
        "rat" => Ok(QcKind::Rat),
        other => Err(CliError::Malformed(format!("unknown kind `{other}`"))),
    }
}

/// Constant tensor JSON: `[[i, j, "p/q"], …]`.
fn read_tensor2(path: &Path) -> Result<Tensor2, CliError> {
    let entries: Vec<(usize, usize, String)> = read_json(path)?;
    let mut t = Tensor2::new();
    for (i, j, s) in entries {
        let c = parse_rat(&s).map_err(CliError::Malformed)?;
        if !c.is_zero() {
            *t.entry((i, j)).or_insert_with(Rat::zero) += c;
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn load_rmat(path: &Path) -> Result<RMatElem, CliError> {
    let file: RMatFile = read_json(path)?;
    rmat_from_file(&file).map_err(malformed)
}

fn verify(cmd: VerifyCmd) -> Result<(), CliError> {
    match cmd {
        VerifyCmd::Cybe { alg: aopts, io, input } => {
            let alg = make_algebra(&aopts)?;
            let r = load_rmat(&input)?;
            let cert = sample_certificate(&alg, &r, io.seed);
            let pass = cert.cybe_residual_zero && cert.samples.iter().all(|s| s.residual_zero);
            emit_json(&io.out, &cert)?;
            if pass {
                Ok(())
            } else {
                Err(CliError::Verification("nonzero CYBE residual".into()))
            }
        }
        VerifyCmd::Skew { io, input } => {
            let r = load_rmat(&input)?;
            let zero = skew_residual(&r).is_zero();
            emit_json(&io.out, &serde_json::json!({"skew_residual_zero": zero}))?;
            if zero {
                Ok(())
            } else {
                Err(CliError::Verification("nonzero skew residual".into()))
            }
        }
        VerifyCmd::TwistEq { alg: aopts, io, input } => {
            let alg = make_algebra(&aopts)?;
            let auto = make_auto(&alg, &aopts.sigma)?;
            let la = LoopAlgebra { alg: alg.clone(), auto: auto.clone() };
            let t = load_rmat(&input)?;
            if t.denom != Denom::One {
                return Err(CliError::Malformed(
                    "twist tensor must have denominator 1".into(),
                ));
            }
            let r0 = standard_r(&alg, &auto).map_err(malformed)?;
            let res = twist_equation_residual(&la, &t, &r0).map_err(malformed)?;
            let zero = res.is_zero();
            emit_json(&io.out, &serde_json::json!({"twist_equation_residual_zero": zero}))?;
            if zero {
                Ok(())
            } else {
                Err(CliError::Verification("nonzero twist-equation residual".into()))
            }
        }
        VerifyCmd::Constant { alg: aopts, io, input, kind } => {
            let alg = make_algebra(&aopts)?;
            let t = read_tensor2(&input)?;
            let lambda = match parse_kind(&kind)? {
                QcKind::Trig => Rat::one(),
                QcKind::Rat => Rat::zero(),
            };
            let (yb, sym) = constant_cybe_residual(&alg, &t, &lambda);
            let pass = yb.is_empty() && sym.is_empty();
            emit_json(
                &io.out,
                &serde_json::json!({
                    "yang_baxter_zero": yb.is_empty(),
                    "symmetric_part_zero": sym.is_empty(),
                }),
            )?;
            if pass {
                Ok(())
            } else {
                Err(CliError::Verification("constant residuals nonzero".into()))
            }
        }
        VerifyCmd::Manin { alg: aopts, io, input } => {
            let alg = make_algebra(&aopts)?;
            let auto = make_auto(&alg, &aopts.sigma)?;
            let la = LoopAlgebra { alg, auto };
            let file: TruncSubspaceFile = read_json(&input)?;
            let w = trunc_from_file(&la, &file).map_err(malformed)?;
            let report = check_manin(&la, &w).map_err(malformed)?;
            let pass = report.isotropy && report.diagonal_complement && report.bracket_closure;
            emit_json(&io.out, &report)?;
            if pass {
                Ok(())
            } else {
                Err(CliError::Verification("Manin-triple conditions fail".into()))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct SeriesDoc {
    order: i64,
    prec: i64,
    terms: Vec<(usize, usize, i64, i64, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<crate::manin::SeriesReport>,
}

fn series_doc(s: &SeriesRep, report: Option<crate::manin::SeriesReport>) -> SeriesDoc {
    SeriesDoc {
        order: s.order,
        prec: s.prec,
        terms: s
            .terms
            .iter()
            .map(|(&(i, j, a, b), c)| (i, j, a, b, rat_str(c)))
            .collect(),
        report,
    }
}

fn expand(args: ExpandArgs) -> Result<(), CliError> {
    let alg = make_algebra(&args.alg)?;
    let r = load_rmat(&args.input)?;
    let s = if args.normalize {
        normalize_exp(&r, args.order, args.prec).map_err(malformed)?
    } else {
        expand_rational(&r, args.order).map_err(malformed)?
    };
    let report = match args.check {
        None => None,
        Some(k) => Some(series_w(&alg, &s, k).map_err(malformed)?),
    };
    let failed = report
        .as_ref()
        .map(|rep| !(rep.shape_ok && rep.gram_ok && rep.constraints_ok))
        .unwrap_or(false);
    emit_json(&args.io.out, &series_doc(&s, report))?;
    if failed {
        Err(CliError::Verification("series report fails".into()))
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// recipe
// ---------------------------------------------------------------------------

/// Cuspidal subspace JSON: `{window, vectors: [LoopEltFile, …]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct CuspWFile {
    pub window: i64,
    pub vectors: Vec<LoopEltFile>,
}

fn named_nodal_w(
    la: &LoopAlgebra,
    spec: &str,
    window: i64,
) -> Result<(LoopAlgebra, TruncSubspace), CliError> {
    if spec == "standard" {
        let w = standard_w(la, window).map_err(malformed)?;
        return Ok((la.clone(), w));
    }
    if let Some(cd) = spec.strip_prefix("trg:") {
        let parts: Vec<&str> = cd.split(',').collect();
        if parts.len() != 2 {
            return Err(CliError::Malformed("expected trg:C,D".into()));
        }
        let c: usize = parts[0].trim().parse().map_err(malformed)?;
        let d: usize = parts[1].trim().parse().map_err(malformed)?;
        return w_trg(c, d, window).map_err(malformed);
    }
    let file: TruncSubspaceFile = read_json(Path::new(spec))?;
    let w = trunc_from_file(la, &file).map_err(malformed)?;
    Ok((la.clone(), w))
}

fn recipe(cmd: RecipeCmd) -> Result<(), CliError> {
    match cmd {
        RecipeCmd::Nodal { alg: aopts, io, w, window } => {
            if window < 2 {
                return Err(CliError::Malformed("recipes need window >= 2".into()));
            }
            let alg = make_algebra(&aopts)?;
            let auto = make_auto(&alg, &aopts.sigma)?;
            let la = LoopAlgebra { alg, auto };
            let (la, wsub) = named_nodal_w(&la, &w, window)?;
            let r = nodal_recipe(&la, &wsub).map_err(malformed)?;
            let config = serde_json::json!({
                "alg": aopts, "seed": io.seed, "w": w, "window": window,
            });
            emit_solution("nodal", config, &la.alg, r, &io)
        }
        RecipeCmd::Cuspidal { alg: aopts, io, w, window } => {
            if window < 2 {
                return Err(CliError::Malformed("recipes need window >= 2".into()));
            }
            let alg = make_algebra(&aopts)?;
            let auto = make_auto(&alg, &aopts.sigma)?;
            let la = LoopAlgebra { alg, auto };
            let vectors: Vec<LoopElt> = if w == "yang" {
                let mut out = Vec::new();
                for k in 1..=window {
                    for i in 0..la.alg.dim {
                        out.push(LoopElt::single(-k, la.alg.basis_vec(i)));
                    }
                }
                out
            } else {
                let file: CuspWFile = read_json(Path::new(&w))?;
                file.vectors
                    .iter()
                    .map(|f| crate::loops::loop_elt_from_file(&la, f))
                    .collect::<Result<_, _>>()
                    .map_err(malformed)?
            };
            let r = cuspidal_recipe(&la, &vectors, window).map_err(malformed)?;
            let config = serde_json::json!({
                "alg": aopts, "seed": io.seed, "w": w, "window": window,
            });
            emit_solution("cuspidal", config, &la.alg, r, &io)
        }
    }
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct QuadrupleDoc {
    gamma1: Vec<usize>,
    gamma2: Vec<usize>,
    tau: Vec<(usize, usize)>,
    s: Vec<(usize, usize, String)>,
}

fn enumerate(cmd: EnumCmd) -> Result<(), CliError> {
    match cmd {
        EnumCmd::BdTriples { alg: aopts, io } => {
            let alg = make_algebra(&aopts)?;
            let auto = make_auto(&alg, &aopts.sigma)?;
            let l1 = lambda1(&alg, &auto).map_err(malformed)?;
            let alphas: Vec<Vec<Rat>> = l1.iter().map(|e| e.alpha.clone()).collect();
            let gram = covector_gram(&alg, &auto.g0_cartan, &alphas).map_err(malformed)?;
            let quads = bd_quadruples(&alg, &auto)?;
            let labels: Vec<String> =
                (0..alphas.len()).map(|i| format!("alpha_{i}")).collect();
            let docs: Vec<QuadrupleDoc> = quads
                .iter()
                .map(|q| QuadrupleDoc {
                    gamma1: q.triple.gamma1.clone(),
                    gamma2: q.triple.gamma2.clone(),
                    tau: q
                        .triple
                        .gamma1
                        .iter()
                        .zip(&q.triple.tau)
                        .map(|(&a, &b)| (a, b))
                        .collect(),
                    s: q.s.iter().map(|(&(i, j), c)| (i, j, rat_str(c))).collect(),
                })
                .collect();
            let gram_s: Vec<Vec<String>> = gram
                .iter()
                .map(|row| row.iter().map(rat_str).collect())
                .collect();
            emit_json(
                &io.out,
                &serde_json::json!({
                    "labels": labels,
                    "gram": gram_s,
                    "quadruples": docs,
                }),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// export
// ---------------------------------------------------------------------------

fn export(cmd: ExportCmd) -> Result<(), CliError> {
    match cmd {
        ExportCmd::Latex { alg: aopts, io, input } => {
            let alg = make_algebra(&aopts)?;
            let r = load_rmat(&input)?;
            let frag = latex_display(&latex_rmat(&alg, &r));
            write_artifact(&io.out, frag.trim_end())
        }
        ExportCmd::Catalog { io, out_dir } => export_catalog(&out_dir, io.seed),
    }
}

/// The fixed catalog: every family at desk scale, one directory per entry
/// with solution.json, certificate.json, solution.tex.
fn export_catalog(root: &Path, seed: u64) -> Result<(), CliError> {
    let mut entries: Vec<(String, String, LieAlgebra, RMatElem)> = Vec::new();
    for n in [2usize, 3] {
        let alg = make_sl(n, FormKind::Trace).map_err(malformed)?;
        let auto = identity_auto(&alg);
        let r = standard_r(&alg, &auto).map_err(malformed)?;
        entries.push(("standard".into(), format!("sl{n}-id"), alg, r));
    }
    {
        let alg = make_sl(2, FormKind::Trace).map_err(malformed)?;
        let auto = coxeter_auto(&alg).map_err(malformed)?;
        let r = standard_r(&alg, &auto).map_err(malformed)?;
        entries.push(("standard".into(), "sl2-coxeter".into(), alg, r));
    }
    {
        let alg = make_sl(2, FormKind::Trace).map_err(malformed)?;
        let r = jimbo_standard_r(&alg).map_err(malformed)?;
        entries.push(("jimbo".into(), "sl2".into(), alg, r));
    }
    for (c, d) in [(1usize, 1usize), (1, 2), (2, 1)] {
        let (alg, r) = cg_solution(c, d).map_err(malformed)?;
        entries.push(("cg".into(), format!("{c}-{d}"), alg, r));
    }
    {
        let alg = make_sl(2, FormKind::Trace).map_err(malformed)?;
        let auto = coxeter_auto(&alg).map_err(malformed)?;
        let r0 = standard_r(&alg, &auto).map_err(malformed)?;
        for (idx, q) in bd_quadruples(&alg, &auto)?.iter().enumerate() {
            let t = bd_twist(&alg, &auto, q).map_err(malformed)?;
            let r = r0
                .add(&t.promote(Denom::XmYm).map_err(malformed)?)
                .map_err(malformed)?;
            entries.push(("bd-sl2-coxeter".into(), format!("q{idx}"), alg.clone(), r));
        }
    }
    for (family, id, alg, r) in entries {
        let dir = root.join(&family).join(&id);
        std::fs::create_dir_all(&dir).map_err(malformed)?;
        let cert = sample_certificate(&alg, &r, seed);
        if !cert.cybe_residual_zero || !cert.skew_residual_zero {
            return Err(CliError::Verification(format!(
                "catalog {family}/{id}: nonzero residual"
            )));
        }
        let sol = serde_json::to_string_pretty(&rmat_to_file(&r)).map_err(malformed)?;
        std::fs::write(dir.join("solution.json"), format!("{sol}\n")).map_err(malformed)?;
        let cj = serde_json::to_string_pretty(&cert).map_err(malformed)?;
        std::fs::write(dir.join("certificate.json"), format!("{cj}\n")).map_err(malformed)?;
        let tex = latex_display(&latex_rmat(&alg, &r));
        std::fs::write(dir.join("solution.tex"), tex).map_err(malformed)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// helpers exposed for integration tests
// ---------------------------------------------------------------------------

/// Serialize the standard Lagrangian W° for external `recipe nodal` runs.
pub fn standard_w_file(la: &LoopAlgebra, window: i64) -> Result<TruncSubspaceFile, String> {
    let w = standard_w(la, window).map_err(|e| e.to_string())?;
    Ok(trunc_to_file(la, &w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_vec(args: &[&str]) -> i32 {
        run(args.iter().map(|s| s.to_string()))
    }

    #[test]
    fn build_standard_writes_verified_artifact() {
        let dir = std::env::temp_dir().join("cybe-cli-test-std");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("r.json");
        let code = run_vec(&[
            "cybe", "build", "standard", "--sl", "2", "--sigma", "coxeter",
            "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(doc["certificate"]["cybe_residual_zero"], true);
        assert_eq!(doc["certificate"]["skew_residual_zero"], true);
        assert!(doc["latex"].as_str().unwrap().contains("\\otimes"));
        // The embedded solution re-verifies under `verify cybe`.
        let sol = serde_json::to_string(&doc["solution"]).unwrap();
        let sol_path = dir.join("solution.json");
        std::fs::write(&sol_path, sol).unwrap();
        let code = run_vec(&[
            "cybe", "verify", "cybe", "--sl", "2", "--sigma", "coxeter",
            "--input", sol_path.to_str().unwrap(),
            "--out", dir.join("cert.json").to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let code = run_vec(&[
            "cybe", "verify", "skew",
            "--input", sol_path.to_str().unwrap(),
            "--out", dir.join("skew.json").to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }

    #[test]
    fn determinism_byte_identical() {
        let dir = std::env::temp_dir().join("cybe-cli-test-det");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        let a = dir.join("a.json");
        let b = dir.join("b.json");
        for out in [&a, &b] {
            let code = run_vec(&[
                "cybe", "build", "cg", "--c", "1", "--d", "2", "--seed", "7",
                "--out", out.to_str().unwrap(),
            ]);
            assert_eq!(code, 0);
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }

    #[test]
    fn exit_codes() {
        // Malformed: non-coprime (c, d).
        let code = run_vec(&["cybe", "build", "cg", "--c", "2", "--d", "2"]);
        assert_eq!(code, 2);
        // Malformed: unknown flags.
        let code = run_vec(&["cybe", "build", "standard", "--bogus"]);
        assert_eq!(code, 2);
        // Verification failure: a non-solution r fails `verify cybe`.
        let dir = std::env::temp_dir().join("cybe-cli-test-exit");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        let bad = dir.join("bad.json");
        // e ⊗ f alone is no solution: [r¹²,r²³] = e⊗h⊗f ≠ 0.
        std::fs::write(
            &bad,
            r#"{"m": 1, "denom": "xy", "terms": [[0, 1, 0, 0, "1"]]}"#,
        )
        .unwrap();
        let code = run_vec(&[
            "cybe", "verify", "cybe", "--sl", "2",
            "--input", bad.to_str().unwrap(),
            "--out", dir.join("cert.json").to_str().unwrap(),
        ]);
        assert_eq!(code, 1);
    }

    #[test]
    fn recipe_nodal_matches_build_standard() {
        let dir = std::env::temp_dir().join("cybe-cli-test-recipe");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        // Dump W° to a file, run the recipe from the file, and compare the
        // solution term-for-term with `build standard` (the recipe output
        // carries denominator x−y, the standard x^m−y^m with m = 1, so
        // compare promoted forms).
        let alg = make_sl(2, FormKind::Trace).unwrap();
        let auto = identity_auto(&alg);
        let la = LoopAlgebra { alg: alg.clone(), auto };
        let wfile = standard_w_file(&la, 8).unwrap();
        let wpath = dir.join("w_circ.json");
        std::fs::write(&wpath, serde_json::to_string(&wfile).unwrap()).unwrap();
        let rec_out = dir.join("recipe.json");
        let code = run_vec(&[
            "cybe", "recipe", "nodal", "--sl", "2", "--w", wpath.to_str().unwrap(),
            "--window", "8", "--out", rec_out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let std_out = dir.join("standard.json");
        let code = run_vec(&[
            "cybe", "build", "standard", "--sl", "2",
            "--out", std_out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let load = |p: &Path| -> RMatElem {
            let doc: serde_json::Value =
                serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
            let f: RMatFile = serde_json::from_value(doc["solution"].clone()).unwrap();
            rmat_from_file(&f).unwrap()
        };
        let r_rec = load(&rec_out).promote(Denom::XmYm).unwrap();
        let r_std = load(&std_out);
        assert_eq!(r_rec, r_std);
    }

    #[test]
    fn enumerate_and_catalog() {
        let dir = std::env::temp_dir().join("cybe-cli-test-cat");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        let enum_out = dir.join("triples.json");
        let code = run_vec(&[
            "cybe", "enumerate", "bd-triples", "--sl", "2", "--sigma", "coxeter",
            "--out", enum_out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&enum_out).unwrap()).unwrap();
        assert_eq!(doc["quadruples"].as_array().unwrap().len(), 3);
        let cat = dir.join("catalog");
        let code = run_vec(&[
            "cybe", "export", "catalog", "--out-dir", cat.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        for sub in ["standard/sl2-id", "cg/1-1", "bd-sl2-coxeter/q0"] {
            for f in ["solution.json", "certificate.json", "solution.tex"] {
                assert!(cat.join(sub).join(f).exists(), "{sub}/{f}");
            }
        }
        // Determinism across repeated catalog export.
        let sol = cat.join("cg/1-1/solution.json");
        let first = std::fs::read(&sol).unwrap();
        let code = run_vec(&[
            "cybe", "export", "catalog", "--out-dir", cat.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert_eq!(first, std::fs::read(&sol).unwrap());
    }

    #[test]
    fn expand_with_check() {
        let dir = std::env::temp_dir().join("cybe-cli-test-exp");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        let std_out = dir.join("standard.json");
        assert_eq!(
            run_vec(&["cybe", "build", "standard", "--sl", "2", "--out", std_out.to_str().unwrap()]),
            0
        );
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&std_out).unwrap()).unwrap();
        let sol_path = dir.join("solution.json");
        std::fs::write(&sol_path, serde_json::to_string(&doc["solution"]).unwrap()).unwrap();
        let exp_out = dir.join("series.json");
        let code = run_vec(&[
            "cybe", "expand", "--sl", "2", "--input", sol_path.to_str().unwrap(),
            "--order", "6", "--normalize", "--prec", "16", "--check", "4",
            "--out", exp_out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let sdoc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&exp_out).unwrap()).unwrap();
        assert_eq!(sdoc["report"]["constraints_ok"], true);
    }

    #[test]
    fn verify_manin_and_twist_eq() {
        let dir = std::env::temp_dir().join("cybe-cli-test-manin");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        let alg = make_sl(2, FormKind::Trace).unwrap();
        let auto = identity_auto(&alg);
        let la = LoopAlgebra { alg, auto };
        let wfile = standard_w_file(&la, 4).unwrap();
        let wpath = dir.join("w.json");
        std::fs::write(&wpath, serde_json::to_string(&wfile).unwrap()).unwrap();
        let code = run_vec(&[
            "cybe", "verify", "manin", "--sl", "2", "--input", wpath.to_str().unwrap(),
            "--out", dir.join("report.json").to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        // The zero twist passes the twist equation.
        let tpath = dir.join("t0.json");
        std::fs::write(&tpath, r#"{"m": 1, "denom": "one", "terms": []}"#).unwrap();
        let code = run_vec(&[
            "cybe", "verify", "twist-eq", "--sl", "2", "--input", tpath.to_str().unwrap(),
            "--out", dir.join("teq.json").to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
}
