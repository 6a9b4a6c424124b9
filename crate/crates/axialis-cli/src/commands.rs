//! Command-line surface: argument parsing, the eleven subcommand handlers,
//! and the exit-code contract (0 pass, 1 verification failure, 2 usage
//! error). Every subcommand prints one `RunReport` JSON document to stdout;
//! progress chatter goes to stderr.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use axialis_core::axial::{
    assemble, assemble_decomposition, axial_eval, block_first_quadruple, block_second_quadruple,
    decompose_two_sided, vekua_two_sided_residual, vekua_two_sided_residual_numeric,
};
use axialis_core::ckext::ck_extend;
use axialis_core::planewave::{
    i_h_direct, i_h_profile_functions, i_h_profiles, HoloProfile, SphereRule,
};
use axialis_core::primitive::{primitivize, right_derivative};
use axialis_core::scalar::{rat_int, Rat};
use axialis_core::spherical::{
    expansion_kernel, expansion_map, fischer_harmonic, fischer_monogenic, inner_monogenic_basis,
    two_sided_monogenic_basis, InnerMonogenic,
};
use axialis_core::MvPoly;

use crate::battery::{
    funk_hecke_table, mv_rel_err, run_battery, specfun_identity_table, thread_cap, IdentityRow,
};
use crate::io::{self, format_f64};
use crate::report::{sha256_hex, CriterionJson, ResidualEntry, RunReport};

type P = MvPoly<Rat>;

#[derive(Parser)]
#[command(
    name = "axialis",
    version,
    about = "Axial two-sided monogenic functions: construction, decomposition, verification",
    color = clap::ColorChoice::Never
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a rational basis of inner spherical monogenics
    Basis(BasisArgs),
    /// Extend x-only data to its left Cauchy-Kovalevskaya extension
    CkExtend(CkExtendArgs),
    /// Build one axial building block and verify two-sided monogenicity
    Block(BlockArgs),
    /// Split a two-sided axial polynomial into blocks, or print the
    /// expansion map's kernel with --kernel
    Decompose(DecomposeArgs),
    /// Fischer decompositions of a homogeneous polynomial, with certificates
    Fischer(FischerArgs),
    /// Check the radial profile system on an axial quadruple file
    Vekua(VekuaArgs),
    /// Plane-wave integrals of an axially symmetric holomorphic kernel
    Planewave(PlanewaveArgs),
    /// Funk-Hecke reduction: sphere quadrature against 1-D weighted integrals
    FunkHeckeCheck(FunkHeckeArgs),
    /// Special-function identity table (Gegenbauer, Bessel, weighted integrals)
    SpecfunSelftest(SpecfunArgs),
    /// Primitivize an axial quadruple on a rectangle, recovering the constant
    Primitivize(PrimitivizeArgs),
    /// Run the acceptance battery
    Battery(BatteryArgs),
}

#[derive(Args)]
struct BasisArgs {
    /// Ambient dimension
    #[arg(long)]
    m: u32,
    /// Homogeneity degree
    #[arg(long)]
    k: u32,
    /// Coefficient grade; all grades when omitted
    #[arg(long)]
    ell: Option<u32>,
    /// Include LaTeX renditions of the basis elements
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct CkExtendArgs {
    /// Path to a polynomial JSON file (the x-only data)
    #[arg(long)]
    input: PathBuf,
    /// Include a LaTeX rendition of the extension
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct BlockArgs {
    /// Building-block family: 1 or 2
    #[arg(long)]
    family: u32,
    /// Ambient dimension
    #[arg(long)]
    m: u32,
    /// Degree of the spherical monogenic seed
    #[arg(long)]
    k: u32,
    /// Grade of the spherical monogenic seed
    #[arg(long)]
    ell: u32,
    /// Radial power index
    #[arg(long)]
    n: u32,
    /// Which basis element of the seed space to use
    #[arg(long, default_value_t = 0)]
    basis_index: usize,
    /// Include a LaTeX rendition of the block
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Path to a polynomial JSON file (a two-sided axial polynomial)
    #[arg(long, required_unless_present = "kernel")]
    input: Option<PathBuf>,
    /// Print the kernel of the degree-k expansion map instead
    #[arg(long)]
    kernel: bool,
    /// Ambient dimension (kernel mode)
    #[arg(long)]
    m: Option<u32>,
    /// Expansion degree (kernel mode)
    #[arg(long)]
    k: Option<u32>,
    /// Include LaTeX renditions of the components
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct FischerArgs {
    /// Path to a polynomial JSON file (homogeneous, x-only)
    #[arg(long)]
    input: PathBuf,
    /// Include LaTeX renditions of the parts
    #[arg(long)]
    latex: bool,
}

#[derive(Args)]
struct VekuaArgs {
    /// Path to an axial quadruple JSON file
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct PlanewaveArgs {
    /// Ambient dimension
    #[arg(long)]
    m: u32,
    /// Degree of the spherical monogenic seed
    #[arg(long)]
    k: u32,
    /// Grade of the spherical monogenic seed
    #[arg(long, default_value_t = 1)]
    ell: u32,
    /// Holomorphic kernel: "exp" for e^(x+iy), "pow" for (x+iy)^N
    #[arg(long, default_value = "exp")]
    h: String,
    /// Exponent N for --h pow
    #[arg(long)]
    pow_degree: Option<u32>,
    /// Axial coordinate of the evaluation point
    #[arg(long, default_value_t = 0.5)]
    x0: f64,
    /// Radial coordinate of the evaluation point
    #[arg(long, default_value_t = 1.5)]
    r: f64,
    /// Which basis element seeds the direct oracle (m = 3 only)
    #[arg(long, default_value_t = 0)]
    basis_index: usize,
    /// Tolerance for the direct-oracle discrepancy
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Args)]
struct FunkHeckeArgs {
    /// Maximum allowed relative error
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct SpecfunArgs {
    /// Maximum allowed relative error
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct PrimitivizeArgs {
    /// Path to an axial quadruple JSON file
    #[arg(long)]
    input: PathBuf,
    /// Rectangle a1 b1 a2 b2 in (x0, r), rational entries like 1/2
    #[arg(long, num_args = 4, value_names = ["A1", "B1", "A2", "B2"],
          default_values = ["0", "1", "1", "2"])]
    rect: Vec<String>,
}

#[derive(Args)]
struct BatteryArgs {
    /// Run only the exact (quadrature-free) criteria
    #[arg(long)]
    quick: bool,
    /// Seed for all randomized property sweeps
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// What a handler computed; the dispatcher wraps it into a `RunReport`.
struct HandlerOutput {
    pass: bool,
    residuals: Vec<ResidualEntry>,
    criteria: Option<Vec<CriterionJson>>,
    inputs: BTreeMap<String, String>,
    result: Value,
}

impl HandlerOutput {
    fn new(pass: bool, residuals: Vec<ResidualEntry>, result: Value) -> Self {
        HandlerOutput {
            pass,
            residuals,
            criteria: None,
            inputs: BTreeMap::new(),
            result,
        }
    }
}

/// Parse, dispatch, and print: the whole binary minus `process::exit`.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let (code, out) = run_captured(argv);
    if !out.is_empty() {
        print!("{}", out);
        if !out.ends_with('\n') {
            println!();
        }
    }
    code
}

/// Like `run`, but returns what would have been printed to stdout instead of
/// printing it. Usage errors and progress still go to stderr directly.
pub fn run_captured<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv
        .iter()
        .map(|s| s.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(argv.iter().cloned()) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{}", e.render());
                return (2, String::new());
            }
            // --help and --version print to stdout and succeed
            return (0, e.render().to_string());
        }
    };
    let start = Instant::now();
    match dispatch(&cli.cmd) {
        Ok(output) => {
            let pass = output.pass;
            let report = RunReport {
                command: echo,
                inputs: output.inputs,
                pass,
                residuals: output.residuals,
                criteria: output.criteria,
                result: output.result,
                elapsed_seconds: format_f64(start.elapsed().as_secs_f64()),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            (if pass { 0 } else { 1 }, text + "\n")
        }
        Err(err) => {
            eprintln!("error: {:#}", err);
            (2, String::new())
        }
    }
}

fn dispatch(cmd: &Cmd) -> Result<HandlerOutput> {
    match cmd {
        Cmd::Basis(args) => cmd_basis(args),
        Cmd::CkExtend(args) => cmd_ck_extend(args),
        Cmd::Block(args) => cmd_block(args),
        Cmd::Decompose(args) => cmd_decompose(args),
        Cmd::Fischer(args) => cmd_fischer(args),
        Cmd::Vekua(args) => cmd_vekua(args),
        Cmd::Planewave(args) => cmd_planewave(args),
        Cmd::FunkHeckeCheck(args) => cmd_funk_hecke(args),
        Cmd::SpecfunSelftest(args) => cmd_specfun(args),
        Cmd::Primitivize(args) => cmd_primitivize(args),
        Cmd::Battery(args) => cmd_battery(args),
    }
}

fn check_dim(m: u32) -> Result<()> {
    ensure!(
        (1..=axialis_core::MAX_DIM).contains(&m),
        "dimension must be in 1..={}",
        axialis_core::MAX_DIM
    );
    Ok(())
}

/// Read a file, record its hash, and deserialize it as type T.
fn load_json<T: serde::de::DeserializeOwned>(
    path: &Path,
    inputs: &mut BTreeMap<String, String>,
) -> Result<T> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    inputs.insert(path.display().to_string(), sha256_hex(&bytes));
    serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))
}

fn status_str(is_zero: bool) -> &'static str {
    if is_zero {
        "0"
    } else {
        "nonzero"
    }
}

fn cmd_basis(args: &BasisArgs) -> Result<HandlerOutput> {
    check_dim(args.m)?;
    if let Some(ell) = args.ell {
        ensure!(ell <= args.m, "grade must be at most m = {}", args.m);
    }
    let elements: Vec<InnerMonogenic> = match args.ell {
        Some(ell) => inner_monogenic_basis(args.m, args.k, ell),
        None => two_sided_monogenic_basis(args.m, args.k),
    };
    // recompute the defining certificates instead of trusting construction
    let left = elements.iter().all(|e| e.poly().dirac_left().is_zero());
    let right = elements.iter().all(|e| e.poly().dirac_right().is_zero());
    let residuals = vec![
        ResidualEntry::exact("dirac_left", left),
        ResidualEntry::exact("dirac_right", right),
    ];
    let mut result = json!({
        "count": elements.len(),
        "elements": elements
            .iter()
            .map(|e| {
                json!({
                    "k": e.k,
                    "ell": e.ell,
                    "poly": io::poly_to_json(e.poly()),
                })
            })
            .collect::<Vec<_>>(),
    });
    if args.latex {
        result["latex"] = json!(elements
            .iter()
            .map(|e| io::poly_latex(e.poly()))
            .collect::<Vec<_>>());
    }
    Ok(HandlerOutput::new(left && right, residuals, result))
}

fn cmd_ck_extend(args: &CkExtendArgs) -> Result<HandlerOutput> {
    let mut inputs = BTreeMap::new();
    let j: io::PolyJson = load_json(&args.input, &mut inputs)?;
    let g = io::poly_from_json(&j)?;
    ensure!(
        g.is_x0_free(),
        "the data polynomial must not involve x0; it lives on the hyperplane"
    );
    let ext = ck_extend(&g);
    let left_zero = ext.cr_left().is_zero();
    let right_zero = ext.cr_right().is_zero();
    let restriction_ok = ext.restrict_x0_zero() == g;
    let residuals = vec![
        ResidualEntry::exact("left_residual", left_zero),
        ResidualEntry::exact("restriction_defect", restriction_ok),
    ];
    let mut result = json!({
        "extension": io::poly_to_json(&ext),
        "verification": {
            "left_residual": status_str(left_zero),
            "right_residual": status_str(right_zero),
        },
    });
    if args.latex {
        result["latex"] = json!(io::poly_latex(&ext));
    }
    let mut out = HandlerOutput::new(left_zero && restriction_ok, residuals, result);
    out.inputs = inputs;
    Ok(out)
}

fn cmd_block(args: &BlockArgs) -> Result<HandlerOutput> {
    check_dim(args.m)?;
    ensure!(
        args.family == 1 || args.family == 2,
        "family must be 1 or 2"
    );
    ensure!(args.ell <= args.m, "grade must be at most m = {}", args.m);
    if args.family == 1 {
        ensure!(
            args.n >= 1,
            "the first family starts at n = 1; n = 0 is the seed itself"
        );
    }
    let basis = inner_monogenic_basis(args.m, args.k, args.ell);
    ensure!(
        !basis.is_empty(),
        "the (m={}, k={}, ell={}) spherical monogenic space is zero-dimensional",
        args.m,
        args.k,
        args.ell
    );
    ensure!(
        args.basis_index < basis.len(),
        "basis index {} out of range; the space has dimension {}",
        args.basis_index,
        basis.len()
    );
    let p = &basis[args.basis_index];
    let q = if args.family == 1 {
        block_first_quadruple(p, args.n)
    } else {
        block_second_quadruple(p, args.n)
    };
    let f = assemble(&q);
    let left_zero = f.cr_left().is_zero();
    let right_zero = f.cr_right().is_zero();
    let residuals = vec![
        ResidualEntry::exact("cr_left", left_zero),
        ResidualEntry::exact("cr_right", right_zero),
    ];
    let mut result = json!({
        "block": io::poly_to_json(&f),
        "profiles": io::quadruple_to_json(&q),
        "seed_dimension": basis.len(),
        "collapsed": f.is_zero(),
        "verification": {
            "cr_left": status_str(left_zero),
            "cr_right": status_str(right_zero),
        },
    });
    if args.latex {
        result["latex"] = json!(io::poly_latex(&f));
    }
    Ok(HandlerOutput::new(left_zero && right_zero, residuals, result))
}

fn cmd_decompose(args: &DecomposeArgs) -> Result<HandlerOutput> {
    if args.kernel {
        let m = args.m.context("--kernel requires --m")?;
        let k = args.k.context("--kernel requires --k")?;
        check_dim(m)?;
        ensure!(m >= 2, "the kernel is stated for dimensions m >= 2");
        ensure!(k >= 1, "the expansion map is defined for k >= 1");
        let elements = expansion_kernel(m, k);
        let images_zero = elements
            .iter()
            .all(|e| expansion_map(k, &e.r, &e.s).is_zero());
        let residuals = vec![ResidualEntry::exact("expansion_map_image", images_zero)];
        let result = json!({
            "dimension": elements.len(),
            "elements": elements
                .iter()
                .map(|e| {
                    json!({
                        "r": e.r.iter().map(io::poly_to_json).collect::<Vec<_>>(),
                        "s": e.s.iter().map(io::poly_to_json).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        });
        return Ok(HandlerOutput::new(images_zero, residuals, result));
    }
    let path = args.input.as_ref().expect("clap enforces input");
    let mut inputs = BTreeMap::new();
    let j: io::PolyJson = load_json(path, &mut inputs)?;
    let f = io::poly_from_json(&j)?;
    ensure!(!f.is_zero(), "cannot decompose the zero polynomial");
    ensure!(f.is_homogeneous(), "the input must be homogeneous");
    let left_zero = f.cr_left().is_zero();
    let right_zero = f.cr_right().is_zero();
    if !(left_zero && right_zero) {
        // not a verification of our own output: the input fails the
        // two-sidedness hypothesis, so report the failure and exit 1
        let residuals = vec![
            ResidualEntry::exact("cr_left", left_zero),
            ResidualEntry::exact("cr_right", right_zero),
        ];
        let result = json!({
            "error": "input is not two-sided monogenic; nothing to decompose",
        });
        let mut out = HandlerOutput::new(false, residuals, result);
        out.inputs = inputs;
        return Ok(out);
    }
    let components = decompose_two_sided(&f);
    let reconstruction_ok = assemble_decomposition(&components) == f;
    let residuals = vec![
        ResidualEntry::exact("cr_left", true),
        ResidualEntry::exact("cr_right", true),
        ResidualEntry::exact("reconstruction_residual", reconstruction_ok),
    ];
    let mut result = json!({
        "S": components.iter().map(io::poly_to_json).collect::<Vec<_>>(),
        "reconstruction_residual": status_str(reconstruction_ok),
    });
    if args.latex {
        result["latex"] = json!(components
            .iter()
            .map(io::poly_latex)
            .collect::<Vec<_>>());
    }
    let mut out = HandlerOutput::new(reconstruction_ok, residuals, result);
    out.inputs = inputs;
    Ok(out)
}

fn cmd_fischer(args: &FischerArgs) -> Result<HandlerOutput> {
    let mut inputs = BTreeMap::new();
    let j: io::PolyJson = load_json(&args.input, &mut inputs)?;
    let f = io::poly_from_json(&j)?;
    ensure!(!f.is_zero(), "cannot split the zero polynomial");
    ensure!(f.is_x0_free(), "Fischer splits act on x-only polynomials");
    ensure!(f.is_homogeneous(), "the input must be homogeneous");
    let m = f.dim();
    let (h, p2) = fischer_harmonic(&f);
    let harmonic_ok = h.laplacian(false).is_zero();
    let harmonic_recon = h.add_ref(&P::norm_sq(m).mul_ref(&p2)) == f;
    let (mk, p1, q1) = fischer_monogenic(&f);
    let monogenic_ok = mk.dirac_left().is_zero() && mk.dirac_right().is_zero();
    let x = P::vector_variable(m);
    let monogenic_recon = mk.add_ref(&x.mul_ref(&p1)).add_ref(&q1.mul_ref(&x)) == f;
    let residuals = vec![
        ResidualEntry::exact("harmonic_laplacian", harmonic_ok),
        ResidualEntry::exact("harmonic_reconstruction", harmonic_recon),
        ResidualEntry::exact("monogenic_dirac", monogenic_ok),
        ResidualEntry::exact("monogenic_reconstruction", monogenic_recon),
    ];
    let mut result = json!({
        "harmonic": {
            "h": io::poly_to_json(&h),
            "p": io::poly_to_json(&p2),
        },
        "monogenic": {
            "m": io::poly_to_json(&mk),
            "p": io::poly_to_json(&p1),
            "q": io::poly_to_json(&q1),
        },
    });
    if args.latex {
        result["latex"] = json!({
            "harmonic_h": io::poly_latex(&h),
            "monogenic_m": io::poly_latex(&mk),
        });
    }
    let pass = harmonic_ok && harmonic_recon && monogenic_ok && monogenic_recon;
    let mut out = HandlerOutput::new(pass, residuals, result);
    out.inputs = inputs;
    Ok(out)
}

fn cmd_vekua(args: &VekuaArgs) -> Result<HandlerOutput> {
    let mut inputs = BTreeMap::new();
    let j: io::QuadrupleJson = load_json(&args.input, &mut inputs)?;
    let q = io::quadruple_from_json(&j)?;
    let res = vekua_two_sided_residual(&q);
    let names = ["system_1", "system_2", "system_3", "system_4", "symmetry_c_minus_b"];
    let residuals: Vec<ResidualEntry> = names
        .iter()
        .zip(res.iter())
        .map(|(name, r)| ResidualEntry::exact(name, r.is_zero()))
        .collect();
    let pass = res.iter().all(|r| r.is_zero());
    let result = json!({
        "satisfied": pass,
        "degenerate_grade": q.is_degenerate(),
        "symmetric": q.is_symmetric(),
    });
    let mut out = HandlerOutput::new(pass, residuals, result);
    out.inputs = inputs;
    Ok(out)
}

fn cmd_planewave(args: &PlanewaveArgs) -> Result<HandlerOutput> {
    check_dim(args.m)?;
    ensure!(args.ell <= args.m, "grade must be at most m = {}", args.m);
    ensure!(args.r > 0.0, "the radial coordinate must be positive");
    let h = match args.h.as_str() {
        "exp" => HoloProfile::Exp,
        "pow" => {
            let d = args
                .pow_degree
                .context("--h pow requires --pow-degree")?;
            HoloProfile::power(d)
        }
        other => bail!("unknown kernel {:?}; use exp or pow", other),
    };
    let quad = match i_h_profiles(&h, args.m, args.k, args.ell, args.x0, args.r) {
        Ok(q) => q,
        Err(e) => {
            let result = json!({
                "error": format!("plane-wave quadrature did not converge: {:?}", e),
            });
            return Ok(HandlerOutput::new(false, Vec::new(), result));
        }
    };
    let mut residuals = Vec::new();
    let mut pass = true;
    // the profiles must satisfy the numeric two-sided system at this point
    let qf = i_h_profile_functions(&h, args.m, args.k, args.ell);
    let system = vekua_two_sided_residual_numeric(&qf, args.k, args.ell, args.m, args.x0, args.r);
    let max_system = system.iter().fold(0.0f64, |acc, v| acc.max(v.norm()));
    residuals.push(ResidualEntry::float("system_residual", max_system));
    pass &= max_system < 1e-6;
    let mut result = json!({
        "profiles": {
            "a": io::complex_to_json(quad[0]),
            "b": io::complex_to_json(quad[1]),
            "c": io::complex_to_json(quad[2]),
            "d": io::complex_to_json(quad[3]),
        },
    });
    // at m = 3 a sphere rule exists, so check against the direct integral
    if args.m == 3 {
        let basis = inner_monogenic_basis(3, args.k, args.ell);
        if basis.is_empty() {
            result["direct_oracle"] = json!(
                "skipped: the spherical monogenic space for this grade and degree is zero"
            );
        } else {
            ensure!(
                args.basis_index < basis.len(),
                "basis index {} out of range; the space has dimension {}",
                args.basis_index,
                basis.len()
            );
            let p = &basis[args.basis_index];
            let direction = [0.6f64, 0.0, 0.8];
            let x: Vec<f64> = direction.iter().map(|v| v * args.r).collect();
            let rule = SphereRule::new(3, 30);
            let direct = i_h_direct(&h, p, args.x0, &x, &rule);
            let expected = axial_eval(p, &quad, &x);
            let discrepancy = mv_rel_err(&direct, &expected);
            residuals.push(ResidualEntry::float("direct_oracle_discrepancy", discrepancy));
            pass &= discrepancy < args.tol;
            result["direct_oracle"] = json!({
                "point": x.iter().map(|v| format_f64(*v)).collect::<Vec<_>>(),
                "discrepancy": format_f64(discrepancy),
                "tolerance": format_f64(args.tol),
            });
        }
    } else {
        result["direct_oracle"] = json!("available at m = 3 only");
    }
    Ok(HandlerOutput::new(pass, residuals, result))
}

fn identity_report(rows: &[IdentityRow], tol: f64) -> (bool, Vec<ResidualEntry>, Value) {
    let max = rows.iter().fold(0.0f64, |acc, r| acc.max(r.err));
    let residuals = vec![ResidualEntry::float("max_rel_err", max)];
    let result = json!({
        "cases": rows.len(),
        "tolerance": format_f64(tol),
        "rows": rows
            .iter()
            .map(|r| {
                json!({
                    "battery": r.battery,
                    "case": r.case,
                    "rel_err": format_f64(r.err),
                })
            })
            .collect::<Vec<_>>(),
    });
    (max < tol, residuals, result)
}

fn cmd_funk_hecke(args: &FunkHeckeArgs) -> Result<HandlerOutput> {
    let rows = funk_hecke_table();
    let (pass, residuals, result) = identity_report(&rows, args.tol);
    Ok(HandlerOutput::new(pass, residuals, result))
}

fn cmd_specfun(args: &SpecfunArgs) -> Result<HandlerOutput> {
    let rows = specfun_identity_table();
    let (pass, residuals, result) = identity_report(&rows, args.tol);
    Ok(HandlerOutput::new(pass, residuals, result))
}

fn parse_rat(s: &str) -> Result<Rat> {
    s.parse::<Rat>().map_err(|e| {
        anyhow::anyhow!(
            "cannot parse {:?} as a rational (use forms like 3 or 1/2): {}",
            s,
            e
        )
    })
}

fn cmd_primitivize(args: &PrimitivizeArgs) -> Result<HandlerOutput> {
    ensure!(args.rect.len() == 4, "--rect takes exactly four values");
    let rect: [Rat; 4] = [
        parse_rat(&args.rect[0])?,
        parse_rat(&args.rect[1])?,
        parse_rat(&args.rect[2])?,
        parse_rat(&args.rect[3])?,
    ];
    ensure!(rect[1] > rect[0], "the x0 interval must be nondegenerate");
    ensure!(rect[2] > rat_int(0), "the inner radius must be positive");
    ensure!(rect[3] > rect[2], "the r interval must be nondegenerate");
    let mut inputs = BTreeMap::new();
    let j: io::QuadrupleJson = load_json(&args.input, &mut inputs)?;
    let q = io::quadruple_from_json(&j)?;
    let prim = match primitivize(&q, &rect) {
        Ok(prim) => prim,
        Err(violation) => {
            let names = ["system_1", "system_2", "system_3", "system_4", "symmetry_c_minus_b"];
            let residuals: Vec<ResidualEntry> = names
                .iter()
                .zip(violation.residuals.iter())
                .map(|(name, r)| ResidualEntry::exact(name, r.is_zero()))
                .collect();
            let result = json!({
                "error": "the quadruple does not satisfy the two-sided system",
            });
            let mut out = HandlerOutput::new(false, residuals, result);
            out.inputs = inputs;
            return Ok(out);
        }
    };
    // verify: the right derivative of the primitive pair returns the input
    // quadruple except for the constant left over in the scalar slot
    let back = right_derivative(&prim.m_profile, &prim.n_profile, q.p())
        .map_err(|e| anyhow::anyhow!("primitive pair fails the left system: {:?}", e))?;
    let b_ok = back.b() == q.b();
    let c_ok = back.c() == q.c();
    let d_ok = back.d() == q.d();
    let gap = q.a().sub_ref(back.a());
    let gap_ok = gap == axialis_core::axial::RadialPoly::constant(prim.constant.clone());
    let residuals = vec![
        ResidualEntry::exact("b_match", b_ok),
        ResidualEntry::exact("c_match", c_ok),
        ResidualEntry::exact("d_match", d_ok),
        ResidualEntry::exact("a_gap_is_constant", gap_ok),
    ];
    let result = json!({
        "m_profile": io::radial_to_json(&prim.m_profile),
        "n_profile": io::radial_to_json(&prim.n_profile),
        "constant": {
            "num": prim.constant.numer().to_string(),
            "den": prim.constant.denom().to_string(),
        },
    });
    let mut out = HandlerOutput::new(b_ok && c_ok && d_ok && gap_ok, residuals, result);
    out.inputs = inputs;
    Ok(out)
}

fn cmd_battery(args: &BatteryArgs) -> Result<HandlerOutput> {
    let threads = thread_cap();
    eprintln!(
        "running {} criteria on {} worker(s), seed {}",
        if args.quick { "exact" } else { "all 13" },
        threads,
        args.seed
    );
    let reports = run_battery(args.quick, args.seed, threads, |rep| {
        eprintln!("{}", rep.line());
    });
    let criteria: Vec<CriterionJson> = reports
        .iter()
        .map(|rep| CriterionJson {
            id: rep.id,
            name: rep.name.to_string(),
            passed: rep.passed,
            detail: rep.detail.clone(),
            max_err: rep.max_err.map(format_f64),
            within_budget: rep.within_budget(),
            budget_seconds: format_f64(rep.budget.as_secs_f64()),
            elapsed_seconds: format_f64(rep.elapsed.as_secs_f64()),
        })
        .collect();
    let pass = reports.iter().all(|r| r.passed);
    let failed: Vec<usize> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let result = json!({
        "total": reports.len(),
        "passed_count": reports.iter().filter(|r| r.passed).count(),
        "failed_ids": failed,
        "quick": args.quick,
    });
    let mut inputs = BTreeMap::new();
    inputs.insert("seed".to_string(), args.seed.to_string());
    let mut out = HandlerOutput::new(pass, Vec::new(), result);
    out.criteria = Some(criteria);
    out.inputs = inputs;
    Ok(out)
}
