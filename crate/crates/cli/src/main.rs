mod sweep;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ftcs::conformance::{self, Bounds};
use ftcs::{
    shannon_cover, Alphabet, CmrAutomaton, CoverReport, ForbiddenSet, Format, GraphDocument,
};

#[derive(Parser)]
#[command(
    name = "ftcs",
    version,
    about = "CMR presentations and Shannon covers of finite-type constrained systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the CMR automaton and presentation with failure links.
    Build {
        #[command(flatten)]
        input: InputArgs,
        /// Output format; repeat for several.
        #[arg(long = "format", value_enum, default_value = "dot")]
        formats: Vec<GraphFormat>,
        /// Directory for automaton.<ext> and presentation.<ext>.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the Shannon cover and write its report as JSON.
    Cover {
        #[command(flatten)]
        input: InputArgs,
        /// Report file; the summary then goes to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every conformance check and report each verdict.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Check many forbidden sets, enumerated or sampled.
    Sweep(sweep::SweepArgs),
    /// Convert a graph between JSON and DOT.
    Export {
        /// Graph file, or `-` for standard input.
        input: PathBuf,
        #[arg(long, value_enum)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Symbols, separated by spaces or given as one string of characters.
    #[arg(long, requires = "forbidden", conflicts_with = "input")]
    alphabet: Option<String>,
    /// A forbidden word; repeat for each word.
    #[arg(long, requires = "alphabet")]
    forbidden: Vec<String>,
    /// Forbidden-set file, or `-` for standard input.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
pub(crate) struct BoundArgs {
    /// Length bound for language comparison [default: |G_F| + 2].
    #[arg(long = "bound")]
    language: Option<usize>,
    /// Connector length bound for the irreducibility search [default: |G_F|²].
    #[arg(long = "connector-bound")]
    connector: Option<usize>,
}

impl BoundArgs {
    pub(crate) fn resolve(self, f: &ForbiddenSet) -> Bounds {
        let defaults = Bounds::defaults(&CmrAutomaton::new(f));
        Bounds {
            language: self.language.unwrap_or(defaults.language),
            irreducibility: defaults.irreducibility,
            connector: self.connector.unwrap_or(defaults.connector),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

impl GraphFormat {
    fn format(self) -> Format {
        match self {
            GraphFormat::Dot => Format::Dot,
            GraphFormat::Json => Format::Json,
        }
    }

    fn extension(self) -> &'static str {
        match self {
            GraphFormat::Dot => "dot",
            GraphFormat::Json => "json",
        }
    }
}

/// Exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_source(path: &Path) -> Result<String, InputError> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }
}

fn parse_alphabet(spec: &str) -> ftcs::Result<Alphabet> {
    if spec.split_whitespace().count() > 1 {
        Alphabet::new(spec.split_whitespace())
    } else {
        Alphabet::from_chars(spec.trim())
    }
}

fn load(input: &InputArgs) -> Result<ForbiddenSet, InputError> {
    if let Some(path) = &input.input {
        return Ok(ftcs::parse_forbidden_set(&read_source(path)?)?);
    }
    let Some(spec) = &input.alphabet else {
        return Err(InputError(
            "give --input FILE or --alphabet with --forbidden".into(),
        ));
    };
    let alphabet = parse_alphabet(spec)?;
    let words = input
        .forbidden
        .iter()
        .map(|w| alphabet.parse_word(w))
        .collect::<ftcs::Result<Vec<_>>>()?;
    Ok(ForbiddenSet::new(alphabet, words)?)
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), InputError> {
    match out {
        Some(path) => {
            fs::write(path, bytes).map_err(|e| InputError(format!("{}: {e}", path.display())))
        }
        None => Ok(io::stdout().write_all(bytes)?),
    }
}

fn build(input: &InputArgs, formats: &[GraphFormat], out: Option<&Path>) -> Result<(), InputError> {
    let f = load(input)?;
    let d = CmrAutomaton::new(&f);
    let docs = [
        ("automaton", d.automaton_document()),
        ("presentation", d.presentation_document()),
    ];
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
    }
    for format in formats {
        for (stem, doc) in &docs {
            let bytes = doc.render(format.format());
            match out {
                Some(dir) => {
                    let path = dir.join(format!("{stem}.{}", format.extension()));
                    write_output(Some(&path), &bytes)?;
                }
                None => write_output(None, &bytes)?,
            }
        }
    }
    Ok(())
}

fn summary(f: &ForbiddenSet, d: &CmrAutomaton, report: &CoverReport) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let g = d.presentation();
    let mut lines = vec![
        format!(
            "forbidden: {}",
            f.words()
                .iter()
                .map(|w| f.render(w))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        format!("states of G_F: {}", g.len()),
        format!("nu: {}", report.nu),
        format!("graph irreducible: {}", yes_no(report.graph_irreducible)),
        format!(
            "language irreducible: {}",
            yes_no(report.language_irreducible)
        ),
        format!(
            "cover guaranteed minimal: {}",
            yes_no(report.cover_guaranteed_minimal)
        ),
    ];
    let mut merged = Vec::new();
    for block in report.partition.merged_blocks() {
        let names: Vec<&str> = block.iter().map(|&s| g.name(s)).collect();
        let mut levels: Vec<usize> = block
            .iter()
            .map(|&s| g.state(s).word.as_ref().map_or(0, |w| w.len()))
            .collect();
        levels.dedup();
        let levels: Vec<String> = levels.iter().map(usize::to_string).collect();
        merged.push(format!(
            "merged: {} at level {}",
            names.join(" ~ "),
            levels.join(",")
        ));
    }
    if merged.is_empty() {
        merged.push("merged: none".to_string());
    }
    lines.extend(merged);
    lines.join("\n") + "\n"
}

fn cover(input: &InputArgs, out: Option<&Path>) -> Result<(), InputError> {
    let f = load(input)?;
    let report = shannon_cover(&f)?;
    let d = CmrAutomaton::new(&f);
    let text = summary(&f, &d, &report);
    match out {
        Some(path) => {
            write_output(Some(path), report.to_json().as_bytes())?;
            print!("{text}");
        }
        None => {
            print!("{}", report.to_json());
            eprint!("{text}");
        }
    }
    Ok(())
}

fn check(input: &InputArgs, bounds: BoundArgs) -> Result<bool, InputError> {
    let f = load(input)?;
    let results = conformance::check(&f, Some(bounds.resolve(&f)));
    let mut stdout = io::stdout().lock();
    for r in &results {
        writeln!(stdout, "{r}")?;
    }
    if let Ok(report) = shannon_cover(&f) {
        let verdict = if report.language_irreducible {
            "irreducible"
        } else {
            "reducible"
        };
        writeln!(stdout, "language: {verdict}")?;
    }
    Ok(conformance::all_hold(&results))
}

fn export(input: &Path, format: GraphFormat, out: Option<&Path>) -> Result<(), InputError> {
    let doc = GraphDocument::parse(&read_source(input)?)?;
    write_output(out, &doc.render(format.format()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Build {
            input,
            formats,
            out,
        } => build(input, formats, out.as_deref()).map(|_| true),
        Command::Cover { input, out } => cover(input, out.as_deref()).map(|_| true),
        Command::Check { input, bounds } => check(input, *bounds),
        Command::Sweep(args) => sweep::run(args),
        Command::Export { input, format, out } => {
            export(input, *format, out.as_deref()).map(|_| true)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
