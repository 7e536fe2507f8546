use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::Args;
use ftcs::conformance;
use ftcs::sample::{all_sets, random_set};
use ftcs::ForbiddenSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{parse_alphabet, BoundArgs, InputError};

#[derive(Args)]
pub(crate) struct SweepArgs {
    /// Symbols; defaults to `ab`.
    #[arg(long, default_value = "ab")]
    alphabet: String,
    /// Longest forbidden word.
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    /// Most words per set.
    #[arg(long, default_value_t = 2)]
    max_words: usize,
    /// Draw this many random sets instead of enumerating all of them.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads [default: all cores].
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    bounds: BoundArgs,
    /// Report file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default)]
struct Tally {
    pass: usize,
    fail: usize,
    not_applicable: usize,
}

fn instances(args: &SweepArgs) -> Result<Vec<ForbiddenSet>, InputError> {
    let alphabet = parse_alphabet(&args.alphabet)?;
    if args.max_n == 0 || args.max_words == 0 {
        return Err(InputError(
            "--max-n and --max-words must be positive".into(),
        ));
    }
    Ok(match args.samples {
        None => all_sets(&alphabet, args.max_words, args.max_n),
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..count)
                .map(|_| random_set(&mut rng, &alphabet, args.max_words, args.max_n))
                .collect()
        }
    })
}

pub(crate) fn run(args: &SweepArgs) -> Result<bool, InputError> {
    let sets = instances(args)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        builder = builder.num_threads(jobs);
    }
    let pool = builder.build()?;
    let bounds = args.bounds;
    // par_iter + collect keeps input order, so the report does not depend on --jobs
    let results: Vec<_> = pool.install(|| {
        sets.par_iter()
            .map(|f| conformance::check(f, Some(bounds.resolve(f))))
            .collect()
    });

    let mut table: BTreeMap<&'static str, Tally> = BTreeMap::new();
    let mut failures = Vec::new();
    for (f, checks) in sets.iter().zip(&results) {
        for c in checks {
            let tally = table.entry(c.name).or_default();
            match c.holds() {
                Some(true) => tally.pass += 1,
                Some(false) => {
                    tally.fail += 1;
                    failures.push(format!(
                        "{}: {c}",
                        f.to_text().trim_end().replace('\n', " | ")
                    ));
                }
                None => tally.not_applicable += 1,
            }
        }
    }

    let mut report = String::new();
    let mode = match args.samples {
        Some(n) => format!("{n} random sets, seed {}", args.seed),
        None => "exhaustive".to_string(),
    };
    writeln!(
        report,
        "sweep: alphabet {}, max length {}, max words {}, {mode}",
        args.alphabet, args.max_n, args.max_words
    )
    .unwrap();
    writeln!(report, "instances: {}", sets.len()).unwrap();
    writeln!(
        report,
        "{:<40} {:>8} {:>8} {:>8}",
        "check", "pass", "fail", "n/a"
    )
    .unwrap();
    for (name, t) in &table {
        writeln!(
            report,
            "{name:<40} {:>8} {:>8} {:>8}",
            t.pass, t.fail, t.not_applicable
        )
        .unwrap();
    }
    writeln!(report, "failures: {}", failures.len()).unwrap();
    for line in &failures {
        writeln!(report, "  {line}").unwrap();
    }

    match &args.out {
        Some(path) => {
            fs::write(path, &report).map_err(|e| InputError(format!("{}: {e}", path.display())))?
        }
        None => print!("{report}"),
    }
    Ok(failures.is_empty())
}
