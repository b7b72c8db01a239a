//! The `equilayer` command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid arguments, 3 resource
//! bound, 4 verification failure.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::{dimension_breakdown, layer_basis_with, local_basis_with, weight_matrix, with_features_with, LayerBasis, LayerSpec};
use crate::combinatorics::enumerate_partitions;
use crate::document::{parse_params, DocumentSpec, MatrixDocument};
use crate::error::Error;
use crate::group::GroupKind;
use crate::limits::Limits;
use crate::oracle::{
    check_basis_with, check_local_basis_with, layer_actions, local_actions, verify_against, ConstraintSet, SubspaceReport,
};
use crate::orbits::splits;
use crate::sparse::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Largest matrix, in cells, that `--format dense` will print.
pub const DENSE_MAX_CELLS: u128 = 100_000;

#[derive(Debug, Parser)]
#[command(name = "equilayer", version, about = "Bases of S_n- and A_n-equivariant linear layers")]
struct Cli {
    /// Cap on rows × cols of any matrix; overrides EQUILAYER_MAX_SIZE.
    #[arg(long, global = true, value_name = "INT")]
    max_size: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension of the equivariant space, with a per-block-count breakdown.
    Dim(LayerArgs),
    /// List set partitions with their flattened-diagram sketch.
    Partitions(PartitionArgs),
    /// Stream every basis element as a document.
    Basis {
        #[command(flatten)]
        layer: LayerArgs,
        #[command(flatten)]
        features: FeatureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build one weight matrix from parameters.
    Weight(WeightArgs),
    /// Check the equivariance of documents read from a file or stdin.
    Verify {
        /// Document file; stdin when omitted or `-`.
        #[arg(long, value_name = "FILE")]
        file: Option<PathBuf>,
    },
    /// Compare the constructed basis with a brute-force computation.
    Oracle {
        #[command(flatten)]
        layer: LayerArgs,
        #[command(flatten)]
        features: FeatureArgs,
        /// Impose constraints for a generating set only.
        #[arg(long)]
        generators: bool,
    },
    /// Basis for a direct product of groups acting factor-wise.
    Local {
        /// Factor as `n,k,l,group`; repeat for each factor, first is slowest.
        #[arg(long = "factor", value_name = "N,K,L,GROUP", required = true, value_parser = parse_factor)]
        factors: Vec<LayerSpec>,
        /// Check the result against a brute-force computation instead of printing it.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct LayerArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, value_enum)]
    group: GroupArg,
}

#[derive(Debug, Args)]
struct FeatureArgs {
    /// Input feature channels.
    #[arg(long, default_value_t = 1)]
    dk: usize,
    /// Output feature channels.
    #[arg(long, default_value_t = 1)]
    dl: usize,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write entries as floating point numbers.
    #[arg(long)]
    float: bool,
}

#[derive(Debug, Args)]
struct PartitionArgs {
    /// Size of the ground set.
    #[arg(long)]
    m: usize,
    #[arg(long)]
    max_blocks: usize,
    /// Report whether each orbit splits under A_n.
    #[arg(long)]
    n: Option<usize>,
    /// Vertices in the top row of the sketch.
    #[arg(long, default_value_t = 0)]
    l: usize,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["params", "values", "seed"]))]
struct WeightArgs {
    #[command(flatten)]
    layer: LayerArgs,
    #[command(flatten)]
    features: FeatureArgs,
    /// File of rationals separated by whitespace or commas; `-` for stdin.
    #[arg(long, value_name = "FILE")]
    params: Option<PathBuf>,
    /// Inline comma-separated rationals such as `1,-2/3,0.5`.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    values: Option<String>,
    /// Draw reproducible pseudo-random rational parameters.
    #[arg(long, value_name = "INT")]
    seed: Option<u64>,
    /// Check equivariance of the result; exit 4 on a violation.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Sn,
    An,
}

impl From<GroupArg> for GroupKind {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Sn => GroupKind::Symmetric,
            GroupArg::An => GroupKind::Alternating,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Coo,
    Dense,
}

fn parse_factor(text: &str) -> Result<LayerSpec, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [n, k, l, group] = parts.as_slice() else {
        return Err(format!("expected n,k,l,group, got {text:?}"));
    };
    let num = |s: &str| s.parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
    let group: GroupKind = group.parse().map_err(|e: Error| e.to_string())?;
    Ok(LayerSpec::new(num(n)?, num(k)?, num(l)?, group))
}

impl LayerArgs {
    fn spec(&self, features: Option<&FeatureArgs>) -> LayerSpec {
        let spec = LayerSpec::new(self.n, self.k, self.l, self.group.into());
        match features {
            Some(f) => spec.with_features(f.dk, f.dl),
            None => spec,
        }
    }
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<(), Failure>;

struct Context<'a> {
    limits: Limits,
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs one command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let mut limits = Limits::from_env();
    if let Some(size) = cli.max_size {
        limits = limits.with_max_size(size);
    }
    let mut ctx = Context {
        limits,
        stdin,
        stdout,
        stderr,
    };
    let outcome = dispatch(cli.command, &mut ctx);
    let code = match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_VERIFY,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(ctx.stderr, "error: {e}");
            EXIT_IO
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(ctx.stderr, "error: {e}");
            match e {
                Error::ResourceBound { .. } => EXIT_RESOURCE,
                Error::InvalidArgument(_) | Error::Parse(_) => EXIT_INVALID,
            }
        }
    };
    let _ = ctx.stdout.flush();
    code
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> CmdResult {
    match command {
        Command::Dim(layer) => cmd_dim(&layer.spec(None), ctx),
        Command::Partitions(args) => cmd_partitions(&args, ctx),
        Command::Basis {
            layer,
            features,
            output,
        } => cmd_basis(&layer.spec(Some(&features)), &output, ctx),
        Command::Weight(args) => cmd_weight(&args, ctx),
        Command::Verify { file } => cmd_verify(file.as_deref(), ctx),
        Command::Oracle {
            layer,
            features,
            generators,
        } => cmd_oracle(&layer.spec(Some(&features)), generators, ctx),
        Command::Local {
            factors,
            oracle,
            output,
        } => cmd_local(&factors, oracle, &output, ctx),
    }
}

fn build_basis(spec: &LayerSpec, limits: &Limits) -> crate::error::Result<LayerBasis> {
    spec.check(limits)?;
    let basis = layer_basis_with(spec.n, spec.k, spec.l, spec.group, limits)?;
    if spec.d_k == 1 && spec.d_l == 1 {
        Ok(basis)
    } else {
        with_features_with(&basis, spec.d_k, spec.d_l, limits)
    }
}

fn cmd_dim(spec: &LayerSpec, ctx: &mut Context<'_>) -> CmdResult {
    if spec.n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()).into());
    }
    let out = &mut *ctx.stdout;
    writeln!(out, "{}", spec.dimension())?;
    writeln!(out, "# t partitions splits contributes")?;
    for row in dimension_breakdown(spec.n, spec.k, spec.l, spec.group) {
        writeln!(
            out,
            "# {} {} {} {}",
            row.t,
            row.partitions,
            if row.splits { "yes" } else { "no" },
            row.contributes
        )?;
    }
    Ok(())
}

fn cmd_partitions(args: &PartitionArgs, ctx: &mut Context<'_>) -> CmdResult {
    if args.l > args.m {
        return Err(Error::InvalidArgument(format!("--l {} exceeds --m {}", args.l, args.m)).into());
    }
    let out = &mut *ctx.stdout;
    for p in enumerate_partitions(args.m, args.max_blocks) {
        write!(out, "{}\t{}\t{}", p.rgs_string(), p, p.flattened_sketch(args.l))?;
        if let Some(n) = args.n {
            write!(out, "\tsplits={}", if splits(&p, n) { "yes" } else { "no" })?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn emit(doc: MatrixDocument, output: &OutputArgs, first: bool, out: &mut dyn Write) -> CmdResult {
    let doc = if output.float { doc.into_float() } else { doc };
    match output.format {
        Format::Json => writeln!(out, "{}", doc.to_json())?,
        Format::Coo => {
            if !first {
                writeln!(out)?;
            }
            write!(out, "{}", doc.to_coo())?;
        }
        Format::Dense => {
            if !first {
                writeln!(out)?;
            }
            write!(out, "{}", doc.to_dense())?;
        }
    }
    Ok(())
}

fn check_dense(format: Format, rows: usize, cols: usize) -> CmdResult {
    let cells = rows as u128 * cols as u128;
    if format == Format::Dense && cells > DENSE_MAX_CELLS {
        return Err(Error::ResourceBound {
            what: "dense output".into(),
            needed: cells,
            limit: DENSE_MAX_CELLS,
        }
        .into());
    }
    Ok(())
}

fn cmd_basis(spec: &LayerSpec, output: &OutputArgs, ctx: &mut Context<'_>) -> CmdResult {
    let (rows, cols) = spec.check(&ctx.limits)?;
    check_dense(output.format, rows, cols)?;
    let basis = build_basis(spec, &ctx.limits)?;
    for i in 0..basis.len() {
        emit(MatrixDocument::basis_element(&basis, i), output, i == 0, ctx.stdout)?;
    }
    Ok(())
}

/// Rationals `p/q` with `p ∈ [-9, 9]`, `q ∈ [1, 9]`.
fn seeded_params(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p: i64 = rng.gen_range(-9..=9);
            let q: i64 = rng.gen_range(1..=9);
            Rational::new(BigInt::from(p), BigInt::from(q))
        })
        .collect()
}

fn cmd_weight(args: &WeightArgs, ctx: &mut Context<'_>) -> CmdResult {
    let spec = args.layer.spec(Some(&args.features));
    let (rows, cols) = spec.check(&ctx.limits)?;
    check_dense(args.output.format, rows, cols)?;
    let basis = build_basis(&spec, &ctx.limits)?;
    let params = if let Some(seed) = args.seed {
        seeded_params(seed, basis.len())
    } else if let Some(list) = &args.values {
        parse_params(list)?
    } else {
        let path = args.params.as_ref().expect("clap requires a parameter source");
        let text = read_input(Some(path), ctx)?;
        parse_params(&text)?
    };
    let m = weight_matrix(&basis, &params)?;
    if args.verify {
        let actions = layer_actions(&spec, ConstraintSet::FullGroup, &ctx.limits)?;
        if let Some(w) = verify_against(&m, &actions)?.witness {
            writeln!(
                ctx.stderr,
                "not equivariant: σ = {} changes {} entries (max deviation {})",
                w.group_element, w.differing_entries, w.max_deviation
            )?;
            return Err(Failure::Verification);
        }
        writeln!(ctx.stderr, "verified: equivariant under all of {}", group_name(&spec))?;
    }
    emit(MatrixDocument::weight(&basis, &params, &m), &args.output, true, ctx.stdout)
}

fn group_name(spec: &LayerSpec) -> String {
    let letter = match spec.group {
        GroupKind::Symmetric => 'S',
        GroupKind::Alternating => 'A',
    };
    format!("{letter}_{}", spec.n)
}

fn read_input(path: Option<&std::path::Path>, ctx: &mut Context<'_>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| {
            Failure::Lib(Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))
        }),
        _ => {
            let mut text = String::new();
            ctx.stdin.read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn cmd_verify(file: Option<&std::path::Path>, ctx: &mut Context<'_>) -> CmdResult {
    let text = read_input(file, ctx)?;
    let docs = MatrixDocument::parse_stream(&text)?;
    if docs.is_empty() {
        return Err(Error::InvalidArgument("no documents to verify".into()).into());
    }
    let mut failed = 0;
    for (i, doc) in docs.iter().enumerate() {
        if !doc.is_exact() {
            return Err(Error::InvalidArgument(format!(
                "document {i} has floating point entries; verification needs exact fractions"
            ))
            .into());
        }
        let actions = match &doc.spec {
            DocumentSpec::Layer(spec) => layer_actions(spec, ConstraintSet::FullGroup, &ctx.limits)?,
            DocumentSpec::Local { factors } => local_actions(factors, ConstraintSet::FullGroup, &ctx.limits)?,
        };
        let (rows, cols) = (actions[0].out.rows(), actions[0].inp.rows());
        if doc.shape != [rows, cols] {
            return Err(Error::InvalidArgument(format!(
                "document {i} has shape {}×{} but its spec needs {rows}×{cols}",
                doc.shape[0], doc.shape[1]
            ))
            .into());
        }
        match verify_against(&doc.matrix()?, &actions)?.witness {
            None => writeln!(ctx.stdout, "document {i}: ok")?,
            Some(w) => {
                failed += 1;
                writeln!(
                    ctx.stdout,
                    "document {i}: violation under σ = {} ({} entries differ, max deviation {})",
                    w.group_element, w.differing_entries, w.max_deviation
                )?;
            }
        }
    }
    if failed > 0 {
        writeln!(ctx.stderr, "{failed} of {} documents are not equivariant", docs.len())?;
        return Err(Failure::Verification);
    }
    Ok(())
}

fn report_summary(report: &SubspaceReport, label: &str, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "{label}: commutant dimension {}, {} basis elements, {}×{} matrices",
        report.dimension, report.element_count, report.rows, report.cols
    )?;
    writeln!(out, "  equivariant and disjoint: {}", if report.basis_ok { "yes" } else { "NO" })?;
    writeln!(out, "  spans the commutant:      {}", if report.span_ok { "yes" } else { "NO" })?;
    if report.full_space {
        writeln!(out, "  the commutant is the full matrix space")?;
    }
    for f in &report.failures {
        writeln!(out, "  failure: {}", f.detail)?;
    }
    Ok(())
}

fn finish_report(report: &SubspaceReport, label: &str, ctx: &mut Context<'_>) -> CmdResult {
    report_summary(report, label, ctx.stderr)?;
    let json = serde_json::to_string_pretty(report).expect("reports always serialize");
    writeln!(ctx.stdout, "{json}")?;
    if report.basis_ok && report.span_ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_oracle(spec: &LayerSpec, generators: bool, ctx: &mut Context<'_>) -> CmdResult {
    let set = if generators {
        ConstraintSet::Generators
    } else {
        ConstraintSet::FullGroup
    };
    let basis = build_basis(spec, &ctx.limits)?;
    let report = check_basis_with(&basis, set, &ctx.limits)?;
    let label = format!(
        "{} with n = {}, k = {}, l = {}, d_k = {}, d_l = {}",
        group_name(spec),
        spec.n,
        spec.k,
        spec.l,
        spec.d_k,
        spec.d_l
    );
    finish_report(&report, &label, ctx)
}

fn cmd_local(factors: &[LayerSpec], oracle: bool, output: &OutputArgs, ctx: &mut Context<'_>) -> CmdResult {
    let basis = local_basis_with(factors, &ctx.limits)?;
    if oracle {
        let report = check_local_basis_with(&basis, ConstraintSet::FullGroup, &ctx.limits)?;
        let label = factors.iter().map(group_name).collect::<Vec<_>>().join(" × ");
        return finish_report(&report, &label, ctx);
    }
    if let Some(first) = basis.elements.first() {
        check_dense(output.format, first.matrix.rows(), first.matrix.cols())?;
    }
    for i in 0..basis.len() {
        emit(MatrixDocument::local_element(&basis, i), output, i == 0, ctx.stdout)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["equilayer"];
        full.extend_from_slice(args);
        let code = run(full, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn factor_syntax() {
        assert_eq!(
            parse_factor("2, 1,1,an").unwrap(),
            LayerSpec::new(2, 1, 1, GroupKind::Alternating)
        );
        assert!(parse_factor("2,1,an").is_err());
        assert!(parse_factor("2,1,1,xn").is_err());
    }

    #[test]
    fn seeded_params_are_reproducible() {
        assert_eq!(seeded_params(7, 10), seeded_params(7, 10));
        assert_ne!(seeded_params(7, 10), seeded_params(8, 10));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["dim", "--n", "3"], "").0, EXIT_INVALID);
        assert_eq!(run_str(&["dim", "--n", "3", "--k", "1", "--l", "1", "--group", "bn"], "").0, EXIT_INVALID);
        assert_eq!(run_str(&["--help"], "").0, EXIT_OK);
    }
}
