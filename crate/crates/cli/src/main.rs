use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use raag_embed::braid::{plan_configuration, strand_report, strand_report_for, DiskConfiguration};
use raag_embed::embed::{build_embedding_with, BuildOptions, BuildStrategy, Embedding};
use raag_embed::graph::Graph;
use raag_embed::render::{render, Format};
use raag_embed::verify::{verify, VerifyConfig};
use raag_embed::word::{reduce, support, Word};

/// Embeds right-angled Artin groups into tree groups and checks the result.
#[derive(Parser)]
#[command(name = "raag-embed", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of a word, with its length and support.
    Reduce {
        #[command(flatten)]
        input: Input,
        /// Whitespace-separated letters: `a`, `a^-1`, `a^3`.
        #[arg(long)]
        word: String,
    },
    /// Build the embedding of a graph and write its certificate.
    Embed {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Strategy::Union)]
        strategy: Strategy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate (or a freshly built embedding of a graph).
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Puncture configuration for the target tree. Prints the report, or
    /// with `--format` the configuration itself.
    Braid {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        format: Option<RenderFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a configuration, certificate or graph.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
        format: RenderFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// JSON file holding a graph, a certificate or a disk configuration;
    /// `-` reads standard input.
    #[arg(long, conflicts_with = "inline")]
    graph: Option<PathBuf>,
    /// The same JSON given on the command line.
    #[arg(long)]
    inline: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    /// Radius of the exhaustive ball.
    #[arg(long = "depth", default_value_t = 4)]
    depth: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 20)]
    max_len: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "RAAG_EMBED_JOBS", default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Union,
    Literal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Dot,
    Svg,
    Json,
}

impl From<RenderFormat> for Format {
    fn from(f: RenderFormat) -> Format {
        match f {
            RenderFormat::Dot => Format::Dot,
            RenderFormat::Svg => Format::Svg,
            RenderFormat::Json => Format::Json,
        }
    }
}

enum Failure {
    /// Exit 1: the input was fine but a check failed.
    Check(String),
    /// Exit 2: the input could not be used.
    Input(String),
}

impl From<raag_embed::Error> for Failure {
    fn from(e: raag_embed::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Check(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

enum Loaded {
    Graph(Graph),
    Certificate(Box<Embedding>),
    Configuration(DiskConfiguration),
}

impl Input {
    fn text(&self) -> Result<Option<String>, Failure> {
        match (&self.graph, &self.inline) {
            (Some(p), _) if p.as_os_str() == "-" => {
                let mut s = String::new();
                io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
                Ok(Some(s))
            }
            (Some(p), _) => fs::read_to_string(p)
                .map(Some)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
            (None, Some(s)) => Ok(Some(s.clone())),
            (None, None) => Ok(None),
        }
    }

    /// Sniffs the JSON shape: certificates carry `source_graph`,
    /// configurations carry `disks`.
    fn load(&self) -> Result<Loaded, Failure> {
        let text = self
            .text()?
            .ok_or_else(|| Failure::Input("one of --graph or --inline is required".into()))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("json: {e}")))?;
        if value.get("source_graph").is_some() {
            Ok(Loaded::Certificate(Box::new(Embedding::from_json(&text)?)))
        } else if value.get("disks").is_some() {
            Ok(Loaded::Configuration(DiskConfiguration::from_json(&text)?))
        } else {
            Ok(Loaded::Graph(Graph::from_json(&text)?))
        }
    }

    fn graph(&self) -> Result<Graph, Failure> {
        match self.load()? {
            Loaded::Graph(g) => Ok(g),
            Loaded::Certificate(e) => Ok(e.source().clone()),
            Loaded::Configuration(_) => Err(Failure::Input("expected a graph, got a disk configuration".into())),
        }
    }

    fn embedding(&self) -> Result<Embedding, Failure> {
        match self.load()? {
            Loaded::Graph(g) => Ok(build_embedding_with(&g, BuildOptions::default())?),
            Loaded::Certificate(e) => Ok(*e),
            Loaded::Configuration(_) => Err(Failure::Input("expected a graph or certificate".into())),
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut so = io::stdout().lock();
            // a closed pipe is not worth an error
            let _ = so.write_all(text.as_bytes());
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

/// Without a graph the word lives in the free group on its own letters:
/// the complete graph, where nothing commutes.
fn free_group_for(word: &str) -> Result<Graph, Failure> {
    let mut names: Vec<&str> = Vec::new();
    for tok in word.split_whitespace() {
        if tok == "ε" || tok == "1" {
            continue;
        }
        let name = tok.rsplit_once('^').map_or(tok, |(n, _)| n);
        if !name.is_empty() && !names.contains(&name) {
            names.push(name);
        }
    }
    let n = names.len();
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Ok(Graph::from_indices(names.iter().map(|s| s.to_string()).collect(), edges)?)
}

fn cmd_reduce(input: &Input, word: &str) -> Outcome {
    let g = match input.text()? {
        Some(_) => input.graph()?,
        None => free_group_for(word)?,
    };
    let w = Word::parse(&g, word)?;
    let r = reduce(&g, &w)?;
    let line = if r.is_empty() {
        "ε (len 0)".to_string()
    } else {
        let supp: Vec<&str> = support(&g, &r)?.into_iter().map(|v| g.name(v)).collect();
        format!("{} (len {}, supp {{{}}})", r.to_text(&g), r.len(), supp.join(","))
    };
    emit(&None, &with_newline(line))
}

fn cmd_embed(input: &Input, strategy: Strategy, out: &Option<PathBuf>) -> Outcome {
    let g = match input.load()? {
        Loaded::Graph(g) => g,
        _ => return Err(Failure::Input("embed expects a graph".into())),
    };
    let strategy = match strategy {
        Strategy::Union => BuildStrategy::Union,
        Strategy::Literal => BuildStrategy::Literal,
    };
    let e = build_embedding_with(&g, BuildOptions { strategy })?;
    emit(out, &with_newline(e.to_json()))
}

fn cmd_verify(input: &Input, run: &RunArgs, format: ReportFormat, out: &Option<PathBuf>) -> Outcome {
    let e = input.embedding()?;
    let cfg = VerifyConfig {
        depth: run.depth,
        samples: run.samples,
        max_len: run.max_len,
        seed: run.seed,
        jobs: run.jobs,
        ..VerifyConfig::default()
    };
    let report = verify(&e, &cfg)?;
    let text = match format {
        ReportFormat::Text => report.to_table(),
        ReportFormat::Json => report.to_json(),
    };
    emit(out, &with_newline(text))?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check("verification failed".into()))
    }
}

fn cmd_braid(input: &Input, format: Option<RenderFormat>, out: &Option<PathBuf>) -> Outcome {
    let e = input.embedding()?;
    let problems = e.structural_problems();
    if !problems.is_empty() {
        return Err(Failure::Check(problems.join("; ")));
    }
    let report = strand_report(&e)?;
    match format {
        None => emit(out, &with_newline(report.to_table()))?,
        Some(f) => {
            let cfg = plan_configuration(e.tree())?;
            emit(out, &with_newline(render(&cfg, f.into())))?;
            eprintln!("n = {} punctures, geometry {}", report.n, if report.geometry.pass { "ok" } else { "FAILED" });
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check("braid configuration failed its checks".into()))
    }
}

fn cmd_render(input: &Input, format: RenderFormat, out: &Option<PathBuf>) -> Outcome {
    let (cfg, m, connected) = match input.load()? {
        Loaded::Configuration(c) => (c, None, true),
        Loaded::Certificate(e) => (plan_configuration(e.tree())?, Some(e.source().vertex_count()), e.source().is_connected()),
        Loaded::Graph(g) => {
            let e = build_embedding_with(&g, BuildOptions::default())?;
            (plan_configuration(e.tree())?, Some(g.vertex_count()), g.is_connected())
        }
    };
    emit(out, &with_newline(render(&cfg, format.into())))?;
    let audit = match m {
        Some(m) => strand_report_for(m, connected, &cfg).geometry,
        None => cfg.audit(),
    };
    if audit.pass {
        Ok(())
    } else {
        Err(Failure::Check(audit.problems.join("; ")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Reduce { input, word } => cmd_reduce(input, word),
        Command::Embed { input, strategy, out } => cmd_embed(input, *strategy, out),
        Command::Verify { input, run, format, out } => cmd_verify(input, run, *format, out),
        Command::Braid { input, format, out } => cmd_braid(input, *format, out),
        Command::Render { input, format, out } => cmd_render(input, *format, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("raag-embed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("raag-embed: {msg}");
            ExitCode::from(2)
        }
    }
}
