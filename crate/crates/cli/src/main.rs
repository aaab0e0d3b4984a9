use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use beid_core::census::{read_graph6_stream, run_census, run_census_on, CensusOptions};
use beid_core::{build_dual_from, classify, enumerate_cut_sets, graph6, Verdict};
use clap::{Parser, Subcommand, ValueEnum};

mod input;
mod render;

const EXIT_NOT_CM: u8 = 1;
const EXIT_NOT_APPLICABLE: u8 = 2;
const EXIT_INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "beid",
    version,
    about = "Cut sets, dual graphs and Cohen-Macaulay classification of binomial edge ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one graph given as a block expression or a graph6 string (`-` reads stdin).
    Analyze {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every connected graph up to a size, or every graph in a graph6 stream.
    Census {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        bipartite_only: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also run the neighbourhood-completion check (slower).
        #[arg(long)]
        splitting: bool,
        /// graph6 file to classify instead of generating graphs; `-` reads stdin.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a graph: `M <k> square|offset`, `fan <n> [sizes]`, `semicone-of <expr>`, or a
    /// block expression such as `F3 o F4 * F2`.
    Generate {
        spec: String,
        #[arg(long, value_enum, default_value_t = GenFormat::Graph6)]
        format: GenFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the dual graph of an unmixed graph.
    Dual {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFormat {
    Graph6,
    Text,
    Json,
    Dot,
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn unsupported(cmd: &str, format: Format) -> anyhow::Error {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    anyhow::anyhow!("`{cmd}` does not support --format {name}")
}

fn analyze(input: &str, format: Format, out: Option<&PathBuf>) -> Result<u8> {
    let loaded = input::load_graph(&input::read_arg(input)?)?;
    let g = &loaded.graph;
    let report = classify(g);
    let body = match format {
        Format::Text => render::report_text(&report, &enumerate_cut_sets(g), &loaded.warnings),
        Format::Json => {
            let family = enumerate_cut_sets(g);
            let value = serde_json::json!({
                "input": loaded.expr.as_ref().map(|e| e.to_string()),
                "warnings": loaded.warnings,
                "cutsets": family.entries(),
                "report": report,
            });
            with_newline(serde_json::to_string_pretty(&value)?)
        }
        Format::Dot => g.to_dot(),
        Format::Csv => return Err(unsupported("analyze", format)),
    };
    emit(out, &body)?;
    Ok(match report.verdict {
        Verdict::CohenMacaulay => 0,
        Verdict::NotCohenMacaulay => EXIT_NOT_CM,
        Verdict::NotApplicable => EXIT_NOT_APPLICABLE,
    })
}

#[allow(clippy::too_many_arguments)]
fn census(
    max_n: usize,
    min_n: usize,
    bipartite_only: bool,
    jobs: usize,
    splitting: bool,
    input: Option<&str>,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<u8> {
    let outcome = match input {
        Some(src) => {
            let text = if src == "-" {
                input::read_arg("-")?
            } else {
                fs::read_to_string(src).with_context(|| format!("reading {src}"))?
            };
            let mut graphs = read_graph6_stream(&text)?;
            if bipartite_only {
                graphs.retain(|g| g.is_connected() && g.is_bipartite());
            }
            run_census_on(&graphs, jobs, splitting)?
        }
        None => run_census(CensusOptions {
            max_n,
            min_n,
            bipartite_only,
            jobs,
            splitting,
        })?,
    };
    let body = match format {
        Format::Text => render::census_text(&outcome),
        Format::Json => with_newline(serde_json::to_string_pretty(&outcome)?),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &outcome.rows {
                w.serialize(row)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Dot => return Err(unsupported("census", format)),
    };
    emit(out, &body)?;
    if format == Format::Csv {
        for v in &outcome.violations {
            eprintln!("violation: {} [{}] {}", v.graph6, v.check, v.detail);
        }
    }
    Ok(if outcome.violations.is_empty() { 0 } else { 1 })
}

fn generate(spec: &str, format: GenFormat, out: Option<&PathBuf>) -> Result<u8> {
    let gen = input::generate(&input::read_arg(spec)?)?;
    let body = match format {
        GenFormat::Graph6 => format!("{}\n", graph6::encode(&gen.graph)),
        GenFormat::Text => {
            render::generated_text(&gen.graph, gen.predicted.as_deref(), &gen.warnings)
        }
        GenFormat::Json => {
            let value = serde_json::json!({
                "graph6": graph6::encode(&gen.graph),
                "n": gen.graph.n(),
                "edges": gen.graph.edges(),
                "predicted_cutsets": gen.predicted,
                "warnings": gen.warnings,
            });
            with_newline(serde_json::to_string_pretty(&value)?)
        }
        GenFormat::Dot => gen.graph.to_dot(),
    };
    if format == GenFormat::Graph6 {
        for w in &gen.warnings {
            eprintln!("warning: {w}");
        }
    }
    emit(out, &body)?;
    Ok(0)
}

fn dual(input: &str, format: Format, out: Option<&PathBuf>) -> Result<u8> {
    let loaded = input::load_graph(&input::read_arg(input)?)?;
    let g = &loaded.graph;
    let d = build_dual_from(g, &enumerate_cut_sets(g))?;
    let body = match format {
        Format::Text => render::dual_text(&d),
        Format::Json => with_newline(serde_json::to_string_pretty(&d.report())?),
        Format::Dot => d.to_dot(),
        Format::Csv => return Err(unsupported("dual", format)),
    };
    emit(out, &body)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { input, format, out } => analyze(&input, format, out.as_ref()),
        Command::Census {
            max_n,
            min_n,
            bipartite_only,
            jobs,
            splitting,
            input,
            format,
            out,
        } => census(
            max_n,
            min_n,
            bipartite_only,
            jobs,
            splitting,
            input.as_deref(),
            format,
            out.as_ref(),
        ),
        Command::Generate { spec, format, out } => generate(&spec, format, out.as_ref()),
        Command::Dual { input, format, out } => dual(&input, format, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
