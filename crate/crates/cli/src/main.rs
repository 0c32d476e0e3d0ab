use std::process::ExitCode;

use casimir_cli::{run, CommandRequest, Format, Subcommand, TensorKind};
use casimir_core::AlgebraSpec;
use clap::{Args, Parser, ValueEnum};

#[derive(Parser)]
#[command(name = "casimir", version, about = "Invariant tensors, Casimir identities and cocycles")]
enum Cli {
    /// Generators, metric and sizes of a catalog algebra.
    Catalog(Common),
    /// Export an invariant symmetric tensor.
    Tensor(Common),
    /// Derive the power-sum identity at an order.
    IdentityDerive(Common),
    /// Verify an identity exactly (default) or at random vectors.
    IdentityVerify(Common),
    /// Cocycle of an invariant tensor; zero iff the tensor is not primitive.
    Cocycle(Common),
    /// Casimir matrix of an invariant tensor in the defining representation.
    Casimir(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long, value_parser = parse_algebra)]
    algebra: AlgebraSpec,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value_t = KindArg::SymTrace)]
    kind: KindArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random vectors for --sampled.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    sampled: bool,
    /// Allow jobs estimated above ten minutes.
    #[arg(long)]
    long_run: bool,
    /// Identity text to verify, e.g. "p4 = 1/2*p2^2".
    #[arg(long)]
    identity: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    SymTrace,
    Metric,
    D3,
    Sudbery,
    Pfaffian,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn parse_algebra(s: &str) -> Result<AlgebraSpec, String> {
    s.parse().map_err(|e: casimir_core::Error| e.to_string())
}

fn request(cli: Cli) -> CommandRequest {
    let (sub, c) = match cli {
        Cli::Catalog(c) => (Subcommand::Catalog, c),
        Cli::Tensor(c) => (Subcommand::Tensor, c),
        Cli::IdentityDerive(c) => (Subcommand::IdentityDerive, c),
        Cli::IdentityVerify(c) => (Subcommand::IdentityVerify, c),
        Cli::Cocycle(c) => (Subcommand::Cocycle, c),
        Cli::Casimir(c) => (Subcommand::Casimir, c),
    };
    let mut req = CommandRequest::new(sub, c.algebra);
    req.order = c.order;
    req.kind = match c.kind {
        KindArg::SymTrace => TensorKind::SymTrace,
        KindArg::Metric => TensorKind::Metric,
        KindArg::D3 => TensorKind::D3,
        KindArg::Sudbery => TensorKind::Sudbery,
        KindArg::Pfaffian => TensorKind::Pfaffian,
    };
    req.format = match c.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    req.seed = c.seed;
    req.trials = c.trials;
    req.exact = c.exact;
    req.sampled = c.sampled;
    req.long_run = c.long_run;
    req.identity = c.identity;
    req
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("CASIMIR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let out = run(&request(cli));
    print!("{}", out.stdout);
    if !out.stderr.is_empty() {
        eprintln!("casimir: {}", out.stderr);
    }
    ExitCode::from(out.status as u8)
}
