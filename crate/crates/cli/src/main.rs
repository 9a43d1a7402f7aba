//! `polyseq` command-line front end.
//!
//! Exit codes: 0 success, 2 file or parse error, 3 window or math error,
//! 4 method mismatch or failed verification.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyseq::families::{cheby_series_p, family_ak_closed, family_pnh_closed, hermite_exp_p};
use polyseq::json::{self, SliceJson, TableJson, TensorJson};
use polyseq::linearization::{
    check_inverse_pair, check_row_identity, check_row_recurrence, connection_matrix, lin_tensor_direct,
    lin_tensor_recurrence_all, mixed_tensor, pn_matrices, required_size, table_json,
};
use polyseq::oracle::{connection_oracle, lin_tensor_oracle};
use polyseq::orthogonal::{op_lin_recurrence, orthogonality_table, support_check};
use polyseq::rational::{self, Rational};
use polyseq::sequences::{build_a_rows, build_p_columns, realize_h, tau_moments};
use polyseq::{Error, Family, HSpec, LinTensor, SequencePair, ThreeTermRecurrence, TruncMatrix};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "polyseq", version, about = "Exact polynomial sequences from Hessenberg matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest truncation size any command may use.
    #[arg(long, global = true, env = "POLYSEQ_MAX_T", default_value_t = 512)]
    max_t: usize,
    /// Progress messages on stdout.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Emit H, A, P and the moments of the functional.
    Build(BuildArgs),
    /// Emit the linearization tensor d(n,m,k).
    Linearize(LinearizeArgs),
    /// Emit the connection matrix from the first spec's basis to the second's.
    Connect(ConnectArgs),
    /// Emit closed forms for a named family.
    Family(FamilyArgs),
    /// Run the property suite on a spec.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Window {
    /// Truncation size; must be at least the size the command requires.
    #[arg(long)]
    size: Option<usize>,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    h_spec: PathBuf,
    /// Highest polynomial degree to emit.
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[command(flatten)]
    window: Window,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Recurrence,
    Oracle,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct LinearizeArgs {
    #[arg(long)]
    h_spec: PathBuf,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    /// Emit only slice k.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    method: Method,
    /// Reject tridiagonal specs with a zero alpha.
    #[arg(long)]
    validate_tridiagonal: bool,
    #[command(flatten)]
    window: Window,
    /// Output file for json, output directory for csv.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ConnectArgs {
    /// Source spec, then target spec.
    #[arg(long, num_args = 2, required = true)]
    h_spec: Vec<PathBuf>,
    #[arg(long, default_value_t = 4)]
    m_max: usize,
    /// Also emit the mixed tensor e(n,m,k) for n, m <= n_max.
    #[arg(long)]
    mixed: bool,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    method: Method,
    /// Check that the two connection matrices are inverse to each other.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    window: Window,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    h_spec: PathBuf,
    /// Emit p_n(H) for n <= n_max.
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    /// Also emit A^(k) as an (n_max+1) x (n_max+1) table.
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    window: Window,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    h_spec: PathBuf,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[command(flatten)]
    window: Window,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BuildJson {
    a: TruncMatrix,
    h: TruncMatrix,
    #[serde(with = "rational::serde_vec")]
    moments: Vec<Rational>,
    p: TruncMatrix,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConnectJson {
    connection: TableJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mixed: Option<TensorJson>,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ak: Option<SliceJson>,
    family: String,
    pnh: Vec<TruncMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    series: Option<TruncMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    series_inverse: Option<TruncMatrix>,
}

enum Failure {
    Input(String),
    Math(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Math(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Math(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Input(e.to_string()),
            Error::PropertyViolation(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

fn input_err(path: &Path, e: impl Display) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

type Outcome<T> = Result<T, Failure>;

struct Ctx {
    max_t: usize,
    verbose: bool,
}

impl Ctx {
    fn progress(&self, msg: impl Display) {
        if self.verbose {
            println!("{msg}");
        }
    }

    fn size(&self, window: &Window, required: usize) -> Outcome<usize> {
        let size = window.size.unwrap_or(required);
        if size < required {
            return Err(Error::WindowExceeded {
                what: "requested --size".into(),
                required,
                have: size,
            }
            .into());
        }
        if size > self.max_t {
            return Err(Failure::Math(format!(
                "truncation size {size} exceeds the cap {} (POLYSEQ_MAX_T)",
                self.max_t
            )));
        }
        Ok(size.max(1))
    }
}

fn read_spec(path: &Path) -> Outcome<HSpec> {
    let text = fs::read_to_string(path).map_err(|e| input_err(path, e))?;
    json::from_str(&text).map_err(|e| input_err(path, e))
}

fn write_text(path: &Path, text: &str) -> Outcome<()> {
    fs::write(path, text).map_err(|e| input_err(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Outcome<()> {
    write_text(path, &json::to_canonical_string(value))
}

fn csv_table(header: &str, matrix: &[Vec<Rational>]) -> String {
    let mut out = format!("{header}\n");
    for (i, row) in matrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out.push_str(&format!("{i},{j},{}\n", rational::format(v)));
        }
    }
    out
}

fn write_csv_slices(dir: &Path, slices: &[SliceJson]) -> Outcome<()> {
    fs::create_dir_all(dir).map_err(|e| input_err(dir, e))?;
    for s in slices {
        write_text(&dir.join(format!("slice_k{}.csv", s.k)), &csv_table("n,m,value", &s.matrix))?;
    }
    Ok(())
}

fn tensor_slices(t: &LinTensor, only: Option<usize>) -> Vec<SliceJson> {
    (0..=t.k_max())
        .filter(|k| only.is_none_or(|o| o == *k))
        .map(|k| SliceJson {
            k,
            matrix: t.slice(k).to_vec(),
        })
        .collect()
}

/// Four-term recurrence data for tridiagonal and family inputs
/// with every alpha nonzero.
fn three_term(spec: &HSpec, size: usize) -> Option<ThreeTermRecurrence> {
    match spec {
        HSpec::Rows { .. } => None,
        _ => ThreeTermRecurrence::from_spec(spec, size).ok(),
    }
}

fn build(ctx: &Ctx, args: &BuildArgs) -> Outcome<()> {
    let spec = read_spec(&args.h_spec)?;
    let size = ctx.size(&args.window, args.n_max + 1)?;
    let pair = SequencePair::from_spec(&spec, size)?;
    ctx.progress(format!("built H, A, P at T = {size}"));
    let out = BuildJson {
        a: pair.a().clone(),
        h: pair.h().clone(),
        moments: tau_moments(&pair),
        p: pair.p().clone(),
    };
    write_json(&args.out, &out)
}

fn linearize(ctx: &Ctx, args: &LinearizeArgs) -> Outcome<()> {
    let spec = read_spec(&args.h_spec)?;
    if let Some(k) = args.k {
        if k > 2 * args.n_max {
            return Err(Failure::Math(format!("k = {k} exceeds 2*n_max = {}", 2 * args.n_max)));
        }
    }
    let size = ctx.size(&args.window, required_size(args.n_max))?;
    if args.validate_tridiagonal {
        ThreeTermRecurrence::from_spec(&spec, size)?;
    }
    let recurrence = three_term(&spec, size);
    let pair = SequencePair::from_spec(&spec, size)?;
    let n_max = args.n_max;
    let tensor = match args.method {
        Method::Direct => lin_tensor_direct(&pair, n_max)?,
        Method::Recurrence => lin_tensor_recurrence_all(pair.h(), n_max)?,
        Method::Oracle => lin_tensor_oracle(&pair, n_max)?,
        Method::All => {
            let direct = lin_tensor_direct(&pair, n_max)?;
            ctx.progress("direct tensor done");
            let others = [
                ("recurrence", lin_tensor_recurrence_all(pair.h(), n_max)?),
                ("oracle", lin_tensor_oracle(&pair, n_max)?),
            ];
            for (name, other) in &others {
                ctx.progress(format!("{name} tensor done"));
                if let Some((n, m, k)) = direct.first_difference(other) {
                    return Err(Failure::Mismatch(format!(
                        "direct and {name} differ at (n,m,k) = ({n},{m},{k}): {} vs {}",
                        direct.get(n, m, k),
                        other.get(n, m, k)
                    )));
                }
            }
            if let Some(r) = &recurrence {
                for k in 0..=2 * n_max {
                    let slice = op_lin_recurrence(r, n_max, k)?;
                    for (n, row) in slice.iter().enumerate() {
                        if let Some(m) = (0..=n_max).find(|&m| &row[m] != direct.get(n, m, k)) {
                            return Err(Failure::Mismatch(format!(
                                "direct and four-term recurrence differ at (n,m,k) = ({n},{m},{k})"
                            )));
                        }
                    }
                }
                ctx.progress("four-term recurrence agrees");
            }
            direct
        }
    };
    let slices = tensor_slices(&tensor, args.k);
    match (args.format, args.k) {
        (Format::Csv, _) => write_csv_slices(&args.out, &slices),
        (Format::Json, Some(_)) => write_json(&args.out, &slices[0]),
        (Format::Json, None) => write_json(&args.out, &TensorJson::from(tensor)),
    }
}

fn connect(ctx: &Ctx, args: &ConnectArgs) -> Outcome<()> {
    let p_spec = read_spec(&args.h_spec[0])?;
    let u_spec = read_spec(&args.h_spec[1])?;
    let mut required = args.m_max + 2;
    if args.mixed {
        required = required.max(required_size(args.n_max));
    }
    let size = ctx.size(&args.window, required)?;
    let p = SequencePair::from_spec(&p_spec, size)?;
    let u = SequencePair::from_spec(&u_spec, size)?;
    let forward = connection_matrix(&p, &u, args.m_max)?;
    if matches!(args.method, Method::Oracle | Method::All) {
        let oracle = connection_oracle(&p, &u, args.m_max)?;
        if let Some((m, k)) = first_table_difference(&forward, &oracle) {
            return Err(Failure::Mismatch(format!("matrix and oracle connection differ at (m,k) = ({m},{k})")));
        }
        ctx.progress("connection agrees with the oracle");
    }
    if args.verify {
        let backward = connection_matrix(&u, &p, args.m_max)?;
        let check = check_inverse_pair(&forward, &backward);
        if let Some((i, j)) = check.first_violation {
            return Err(Failure::Mismatch(format!("connection product is not I at ({i},{j})")));
        }
        ctx.progress("inverse relation holds");
    }
    let mixed = if args.mixed {
        Some(mixed_tensor(&p, &u, args.n_max)?)
    } else {
        None
    };
    match args.format {
        Format::Json => write_json(
            &args.out,
            &ConnectJson {
                connection: table_json(forward),
                mixed: mixed.map(TensorJson::from),
            },
        ),
        Format::Csv => {
            fs::create_dir_all(&args.out).map_err(|e| input_err(&args.out, e))?;
            write_text(&args.out.join("connection.csv"), &csv_table("m,k,value", &forward))?;
            match mixed {
                Some(t) => write_csv_slices(&args.out, &tensor_slices(&t, None)),
                None => Ok(()),
            }
        }
    }
}

fn first_table_difference(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Option<(usize, usize)> {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        if let Some(j) = ra.iter().zip(rb).position(|(x, y)| x != y) {
            return Some((i, j));
        }
    }
    None
}

fn family(ctx: &Ctx, args: &FamilyArgs) -> Outcome<()> {
    let spec = read_spec(&args.h_spec)?;
    let params = spec
        .family_params()
        .ok_or_else(|| Failure::Math("family expects a chebyshev, hermite or charlier spec".into()))??;
    let size = ctx.size(&args.window, args.n_max + 1)?;
    let pnh = (0..=args.n_max)
        .map(|n| family_pnh_closed(&params, n, size))
        .collect::<Result<Vec<_>, _>>()?;
    let ak = match args.k {
        Some(k) => Some(SliceJson {
            k,
            matrix: family_ak_closed(&params, k, args.n_max)?,
        }),
        None => None,
    };
    let (series, series_inverse) = match params.family() {
        Family::Chebyshev => (Some(cheby_series_p(&params, size)?), None),
        Family::Hermite => (
            Some(hermite_exp_p(&params, size, false)?),
            Some(hermite_exp_p(&params, size, true)?),
        ),
        Family::Charlier => (None, None),
    };
    ctx.progress(format!("{} closed forms at T = {size}", params.family()));
    write_json(
        &args.out,
        &FamilyJson {
            ak,
            family: params.family().name().to_string(),
            pnh,
            series,
            series_inverse,
        },
    )
}

struct Suite<'a> {
    ctx: &'a Ctx,
    failures: Vec<String>,
}

impl Suite<'_> {
    fn check(&mut self, name: &str, result: Outcome<Option<String>>) -> Outcome<()> {
        match result {
            Ok(None) => self.ctx.progress(format!("ok      {name}")),
            Ok(Some(why)) => {
                eprintln!("FAILED  {name}: {why}");
                self.failures.push(name.to_string());
            }
            Err(Failure::Mismatch(why)) => {
                eprintln!("FAILED  {name}: {why}");
                self.failures.push(name.to_string());
            }
            Err(e) => return Err(e),
        }
        Ok(())
    }
}

fn verify(ctx: &Ctx, args: &VerifyArgs) -> Outcome<()> {
    let spec = read_spec(&args.h_spec)?;
    let n_max = args.n_max;
    let size = ctx.size(&args.window, required_size(n_max))?;
    let h = realize_h(&spec, size)?;
    let mut suite = Suite {
        ctx,
        failures: Vec::new(),
    };
    let pair = SequencePair::from_spec(&spec, size);
    suite.check("A P = P A = I, A H = X A, H P = P X", pair.as_ref().map(|_| None).map_err(|e| e.clone().into()))?;
    let pair = pair?;

    suite.check("A by rows equals P^-1", {
        let a = build_a_rows(&h)?;
        Ok(a.first_difference(pair.a(), size, size).map(|at| format!("differs at {at:?}")))
    })?;
    suite.check("P by columns equals P by recurrence", {
        let p = build_p_columns(&h)?;
        Ok(p.first_difference(pair.p(), p.exact_rows(), size).map(|at| format!("differs at {at:?}")))
    })?;

    let direct = lin_tensor_direct(&pair, n_max);
    suite.check(
        "tensor symmetry and normalization",
        direct.as_ref().map(|_| None).map_err(|e| e.clone().into()),
    )?;
    let direct = direct?;
    suite.check("direct equals recurrence", {
        let rec = lin_tensor_recurrence_all(&h, n_max)?;
        Ok(direct.first_difference(&rec).map(|at| format!("differs at {at:?}")))
    })?;
    suite.check("direct equals oracle", {
        let oracle = lin_tensor_oracle(&pair, n_max)?;
        Ok(direct.first_difference(&oracle).map(|at| format!("differs at {at:?}")))
    })?;
    let mats = pn_matrices(&h, n_max)?;
    suite.check(
        "row identity",
        Ok(check_row_identity(&mats, size).map(|at| format!("fails at (n,m) = {at:?}"))),
    )?;
    suite.check(
        "row recurrence",
        Ok(check_row_recurrence(&h, &mats, size).map(|at| format!("fails at (n,m) = {at:?}"))),
    )?;

    if let Some(r) = three_term(&spec, size) {
        suite.check("support bound", {
            let report = support_check(&direct);
            Ok(report.first_violation.map(|at| format!("nonzero at {at:?}")))
        })?;
        suite.check("orthogonality", {
            let g = orthogonality_table(&pair, n_max)?;
            let mut bad = None;
            for (n, row) in g.iter().enumerate() {
                for (m, v) in row.iter().enumerate() {
                    let want = if n == m { r.alpha_product(n) } else { rational::zero() };
                    if *v != want && bad.is_none() {
                        bad = Some(format!("tau(p_{n} p_{m}) = {v}, expected {want}"));
                    }
                }
            }
            Ok(bad)
        })?;
    }

    if let Some(params) = spec.family_params() {
        let params = params?;
        suite.check("closed-form p_n(H)", {
            let mut bad = None;
            for (n, generic) in mats.iter().enumerate() {
                let closed = family_pnh_closed(&params, n, size)?;
                if let Some(at) = closed.first_difference(generic, generic.exact_rows(), size) {
                    bad.get_or_insert(format!("p_{n}(H) differs at {at:?}"));
                }
            }
            Ok(bad)
        })?;
        suite.check("closed-form A^(k)", {
            let mut bad = None;
            for k in 0..=2 * n_max {
                if family_ak_closed(&params, k, n_max)? != direct.slice(k) {
                    bad.get_or_insert(format!("slice {k} differs"));
                }
            }
            Ok(bad)
        })?;
    }

    if suite.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{} check(s) failed", suite.failures.len())))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        max_t: cli.max_t,
        verbose: cli.verbose,
    };
    let result = match &cli.command {
        Command::Build(a) => build(&ctx, a),
        Command::Linearize(a) => linearize(&ctx, a),
        Command::Connect(a) => connect(&ctx, a),
        Command::Family(a) => family(&ctx, a),
        Command::Verify(a) => verify(&ctx, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("polyseq: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
