use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use conhom::homct::Mode;
use conhom::io::{write_edge_list, write_generators, write_graph6};
use conhom_cli::claims::{load_claims, reproduce, ReproduceArgs, TagFilter};
use conhom_cli::commands::{run_aut, run_check, run_report, CheckArgs, GroupSource};
use conhom_cli::{registry, CliError, Context};

#[derive(Parser)]
#[command(name = "conhom", version, about = "Connected-homogeneity checks for finite graphs")]
struct Cli {
    /// Directory holding fixture generator files.
    #[arg(long, global = true, default_value = "fixtures")]
    fixtures: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Ch,
    Hom,
}

#[derive(Clone, Copy, ValueEnum)]
enum TagArg {
    Core,
    Extended,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and write it out.
    Construct {
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
    /// Distance parameters and local structure, as JSON.
    Report {
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
    },
    /// Check extension levels 1..=k.
    Check {
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// `auto` or a generator file.
        #[arg(long, default_value = "auto")]
        group: String,
        #[arg(long, value_enum, default_value = "ch")]
        mode: ModeArg,
        #[arg(long)]
        class_cap: Option<usize>,
    },
    /// Automorphism group summary; `--out` also writes the generators.
    Aut {
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a claims file and compare against the recorded expectations.
    Reproduce {
        /// Claims files; repeat to merge several.
        #[arg(long, default_values = ["claims/core.json", "claims/extended.json"])]
        claims: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "core")]
        tag: TagArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the JSON log here.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Per-claim limit in seconds.
        #[arg(long)]
        timeout: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let ctx = Context { fixtures: cli.fixtures };
    let mut stdout = std::io::stdout().lock();
    let mut emit = |s: &str| stdout.write_all(s.as_bytes()).map_err(|e| CliError::Io(e.to_string()));
    match cli.command {
        Command::Construct { graph, out, format } => {
            let g = registry::build(&graph, &ctx)?;
            let text = match format {
                Format::Graph6 => write_graph6(&g) + "\n",
                Format::Edges => write_edge_list(&g),
            };
            match out {
                Some(path) => write_file(&path, &text)?,
                None => emit(&text)?,
            }
            Ok(0)
        }
        Command::Report { graph } => {
            emit(&json(&run_report(&graph, &ctx)?))?;
            Ok(0)
        }
        Command::Check { graph, k, group, mode, class_cap } => {
            let mode = match mode {
                ModeArg::Ch => Mode::Ch,
                ModeArg::Hom => Mode::Homogeneous,
            };
            let args = CheckArgs { k, group: GroupSource::parse(&group), mode, class_cap };
            let report = run_check(&graph, &args, &ctx)?;
            emit(&json(&report))?;
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Aut { graph, out } => {
            let (summary, chain) = run_aut(&graph, &ctx)?;
            if let Some(path) = out {
                let meta = [("graph".to_string(), graph.join(" ")), ("order".to_string(), summary.order.clone())];
                write_file(&path, &write_generators(chain.degree(), chain.generators(), &meta))?;
            }
            emit(&json(&summary))?;
            Ok(0)
        }
        Command::Reproduce { claims, tag, jobs, log, timeout, seed } => {
            let tag = match tag {
                TagArg::Core => TagFilter::Core,
                TagArg::Extended => TagFilter::Extended,
                TagArg::All => TagFilter::All,
            };
            let loaded = load_claims(&claims)?;
            let args = ReproduceArgs { tag, jobs, timeout: timeout.map(Duration::from_secs), seed };
            let (result, times) = reproduce(&loaded, &args, &ctx)?;
            let mut table = format!("{:<36} {:<22} {:<22} {:<9} {:>9}\n", "claim", "expected", "computed", "status", "seconds");
            for (r, t) in result.results.iter().zip(&times) {
                let mut expected: Vec<String> = r.expected.iter().map(|e| format!("{}{}", if e.pass { "" } else { "!" }, e.k)).collect();
                let mut computed: Vec<String> = r.verdicts.iter().map(|v| format!("{}{}", if v.pass { "" } else { "!" }, v.k)).collect();
                if let Some(p) = &r.parameters {
                    if let Some(s) = p.srg {
                        computed.push(format!("srg({},{},{},{})", s.v, s.k, s.lambda, s.mu));
                    }
                    if expected.is_empty() {
                        expected.push("parameters".into());
                    }
                }
                table.push_str(&format!(
                    "{:<36} {:<22} {:<22} {:<9} {:>9.3}\n",
                    r.id,
                    expected.join(","),
                    computed.join(","),
                    r.status.to_string(),
                    t.as_secs_f64()
                ));
                for m in &r.mismatches {
                    table.push_str(&format!("    {m}\n"));
                }
                if let Some(e) = &r.error {
                    table.push_str(&format!("    {e}\n"));
                }
            }
            emit(&table)?;
            if let Some(path) = log {
                write_file(&path, &json(&result))?;
            }
            Ok(result.exit_code())
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
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("conhom: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
