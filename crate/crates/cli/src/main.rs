use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galcoh_cli::config::{parse_n_list, SweepConfig};
use galcoh_cli::input::{parse_group, parse_module};
use galcoh_cli::selftest::{selftest, Fault};
use galcoh_cli::{commands, sweep, CliError, VerificationReport};
use galcoh_core::cohomology::{ResourceGuard, DEFAULT_RESOURCE_BOUND};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "galcoh", version, about = "Exact cohomology of finite groups and a verification harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant factors of H^r(G, M).
    Hr {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        degree: usize,
        /// Also print generator cochains.
        #[arg(long)]
        generators: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Ш¹_ω(G, M); without --module, the certificate for the augmentation kernel.
    Sha {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: u64,
        #[arg(long, help = sweep::module_help())]
        module: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form check of Ш¹_ω over the catalog.
    CertifyPropdata(SweepArgs),
    /// Duality, exact sequences, Shapiro, inflation and cup/connecting checks over the catalog.
    VerifyStructure(SweepArgs),
    /// Seeded property suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt one suite so that it must fail.
        #[arg(long, value_name = "snf|coboundary|section")]
        inject_fault: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Catalog operations.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Groups in the built-in catalog.
    List {
        #[arg(long, default_value_t = 12)]
        max_order: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Target {
    /// Catalog name, inline JSON, or path to a JSON Cayley table.
    #[arg(long)]
    group: String,
    #[arg(long, help = sweep::module_help())]
    module: String,
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
struct Common {
    #[arg(long, env = "GALCOH_RESOURCE_BOUND", default_value_t = DEFAULT_RESOURCE_BOUND)]
    resource_bound: u64,
    /// Also write the JSON output here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 12)]
    max_order: usize,
    /// Comma-separated moduli.
    #[arg(long, default_value = "2,3,4,6,8,12")]
    n_list: String,
    /// Highest cohomological degree examined.
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

impl SweepArgs {
    fn config(&self) -> Result<SweepConfig, CliError> {
        Ok(SweepConfig {
            max_group_order: self.max_order,
            n_list: parse_n_list(&self.n_list)?,
            degree_cap: self.degree,
            resource_bound: self.common.resource_bound,
            output_path: self.common.out.clone(),
            jobs: self.jobs,
            seed: self.seed,
        })
    }
}

fn write_out(path: &Option<PathBuf>, json: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, format!("{json}\n"))?;
    }
    Ok(())
}

fn emit_value(v: &Value, common: &Common) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(v).expect("value serializes");
    write_out(&common.out, &json)?;
    match common.format {
        Format::Json => print_out(&format!("{json}\n")),
        Format::Table => {
            let mut text = String::new();
            flatten("", v, &mut text);
            print_out(&text);
        }
    }
    Ok(())
}

/// A closed stdout (e.g. piped into `head`) is not an error.
fn print_out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => {
            let _ = writeln!(out, "{prefix}: {other}");
        }
    }
}

fn emit_report(report: &VerificationReport, common: &Common) -> Result<bool, CliError> {
    let json = report.to_json();
    write_out(&common.out, &json)?;
    match common.format {
        Format::Json => print_out(&format!("{json}\n")),
        Format::Table => print_out(&report.render_table()),
    }
    Ok(report.ok)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Hr { target, degree, generators, common } => {
            let g = parse_group(&target.group)?;
            let m = parse_module(&g, target.n, &target.module)?;
            let v = commands::hr(&g, &m, degree, generators, ResourceGuard::new(common.resource_bound))?;
            emit_value(&v, &common)?;
            Ok(true)
        }
        Command::Sha { group, n, module, common } => {
            let g = parse_group(&group)?;
            let m = module.map(|spec| parse_module(&g, Some(n), &spec)).transpose()?;
            let (v, ok) = commands::sha(&g, n, m.as_ref(), ResourceGuard::new(common.resource_bound))?;
            emit_value(&v, &common)?;
            Ok(ok)
        }
        Command::CertifyPropdata(args) => emit_report(&sweep::certify_propdata(&args.config()?)?, &args.common),
        Command::VerifyStructure(args) => emit_report(&sweep::verify_structure(&args.config()?)?, &args.common),
        Command::Selftest { seed, inject_fault, common } => {
            let fault = inject_fault.as_deref().map(str::parse::<Fault>).transpose()?;
            emit_report(&selftest(seed, fault), &common)
        }
        Command::Group { command: GroupCommand::List { max_order, common } } => {
            emit_value(&commands::group_list(max_order), &common)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("galcoh: at least one check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("galcoh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
