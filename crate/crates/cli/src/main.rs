use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permscheme::{
    brute_count, brute_distribution, deepen_scheme, discover, discover_for_stats,
    discover_with_symmetry, ensure_clearance, oeis_format, parse_pattern_set, DistPolynomial,
    Error, Evaluator, MultiStat, Outcome, Scheme, SearchBounds, Symmetry, VincularPattern,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "permscheme",
    version,
    about = "Enumeration schemes for vincular pattern avoidance"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a scheme and print it as a tree.
    Discover {
        #[command(flatten)]
        src: Source,
        /// Write the scheme as JSON.
        #[arg(long)]
        save: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Deepen a saved scheme to clearance `-c`.
    Deepen {
        #[arg(long, value_name = "FILE")]
        scheme: PathBuf,
        #[arg(short = 'c', long)]
        clearance: usize,
        #[arg(long, value_name = "DEPTH:GAPSUM:VERIFY")]
        bounds: Option<SearchBounds>,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Count avoiders for n = 1..=N.
    Count {
        #[command(flatten)]
        src: Source,
        #[arg(short = 'n', long = "n-max")]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Distribution polynomials of statistics for n = 1..=N.
    Distribute {
        #[command(flatten)]
        src: Source,
        /// Comma-separated statistic names.
        #[arg(short = 's', long)]
        stats: String,
        #[arg(short = 'n', long = "n-max")]
        n_max: u32,
        /// Deepen the scheme when its clearance is below the statistics' margin.
        #[arg(long)]
        auto_deepen: bool,
        /// Discover a scheme for the reversed patterns and track the reversed
        /// statistics (needed for maj).
        #[arg(long, conflicts_with = "symmetry")]
        via_reverse: bool,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Compare a scheme against brute force for n = 1..=N.
    Verify {
        #[command(flatten)]
        src: Source,
        #[arg(short = 's', long)]
        stats: Option<String>,
        #[arg(short = 'n', long = "n-max")]
        n_max: u32,
    },
    /// Print a scheme as a tree.
    Render {
        #[command(flatten)]
        src: Source,
    },
}

#[derive(Args)]
struct Source {
    /// Comma-separated patterns in dash syntax, e.g. 2-1-3,1-2-3-4.
    #[arg(
        short = 'B',
        long = "patterns",
        value_name = "PATTERNS",
        allow_hyphen_values = true
    )]
    patterns: Option<String>,
    /// Load a scheme instead of discovering one.
    #[arg(long, value_name = "FILE", conflicts_with = "patterns")]
    scheme: Option<PathBuf>,
    #[arg(short = 'c', long, default_value_t = 0)]
    clearance: usize,
    #[arg(long, value_name = "DEPTH:GAPSUM:VERIFY")]
    bounds: Option<SearchBounds>,
    #[arg(long)]
    max_depth: Option<usize>,
    /// Also try the complement, reverse and reverse-complement.
    #[arg(long)]
    symmetry: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Csv,
}

/// Domain failures exit 1; anything the caller got wrong exits 2.
enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoScheme(_)
            | Error::ClearanceShortfall { .. }
            | Error::Invariant(_)
            | Error::Clearance { .. } => Failure::Domain(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Discover { src, save, output } => {
            let s = obtain(&src)?;
            if let Some(path) = save {
                write_file(&path, &s.to_json())?;
            }
            match output {
                Output::Json => println!("{}", s.to_json()),
                _ => print_summary(&s),
            }
            Ok(())
        }
        Command::Deepen {
            scheme,
            clearance,
            bounds,
            save,
        } => {
            let s = load(&scheme)?;
            let b = bounds.unwrap_or_else(|| SearchBounds::for_patterns(&s.patterns));
            let d = deepen_scheme(&s, clearance, &b)?;
            match save {
                Some(path) => {
                    write_file(&path, &d.to_json())?;
                    print_summary(&d);
                }
                None => println!("{}", d.to_json()),
            }
            Ok(())
        }
        Command::Count { src, n_max, output } => {
            let s = obtain(&src)?;
            let counts = Evaluator::counting(&s)?.sequence(n_max)?;
            match output {
                Output::Text => println!("{}", oeis_format(&counts)),
                Output::Csv => {
                    println!("n,count");
                    for (i, c) in counts.iter().enumerate() {
                        println!("{},{c}", i + 1);
                    }
                }
                Output::Json => {
                    let counts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                    println!(
                        "{}",
                        json!({ "patterns": pattern_strings(&s.source_patterns()), "counts": counts })
                    );
                }
            }
            Ok(())
        }
        Command::Distribute {
            src,
            stats,
            n_max,
            auto_deepen,
            via_reverse,
            output,
        } => {
            let ms = MultiStat::parse(&stats)?;
            let mut src = src;
            let syms: &[Symmetry] = if via_reverse {
                src.symmetry = true;
                &[Symmetry::Reverse]
            } else {
                &Symmetry::SEARCH_ORDER
            };
            let s = obtain_for_stats(&src, &ms, syms, auto_deepen)?;
            let mut ev = Evaluator::with_stats(&s, &ms)?;
            let polys = (1..=n_max)
                .map(|n| ev.distribution(n))
                .collect::<Result<Vec<_>, _>>()?;
            print_distributions(&ms, &polys, output);
            Ok(())
        }
        Command::Verify { src, stats, n_max } => {
            let ms = stats.as_deref().map(MultiStat::parse).transpose()?;
            let s = match &ms {
                Some(ms) => obtain_for_stats(&src, ms, &Symmetry::SEARCH_ORDER, true)?,
                None => obtain(&src)?,
            };
            verify(&s, ms.as_ref(), n_max)
        }
        Command::Render { src } => {
            let s = obtain(&src)?;
            print_summary(&s);
            Ok(())
        }
    }
}

fn patterns_of(src: &Source) -> CliResult<Vec<VincularPattern>> {
    match &src.patterns {
        Some(p) => Ok(parse_pattern_set(p)?),
        None => Err(Failure::Usage("pass -B PATTERNS or --scheme FILE".into())),
    }
}

fn bounds_of(src: &Source, patterns: &[VincularPattern]) -> SearchBounds {
    let b = src
        .bounds
        .unwrap_or_else(|| SearchBounds::for_patterns(patterns));
    match src.max_depth {
        Some(d) => b.with_max_depth(d),
        None => b,
    }
}

fn load(path: &PathBuf) -> CliResult<Scheme> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(Scheme::from_json(&text)?)
}

fn write_file(path: &PathBuf, text: &str) -> CliResult<()> {
    fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

/// A scheme from `--scheme` or by discovery at clearance `-c`.
fn obtain(src: &Source) -> CliResult<Scheme> {
    if let Some(path) = &src.scheme {
        return load(path);
    }
    let patterns = patterns_of(src)?;
    let bounds = bounds_of(src, &patterns);
    let outcome = if src.symmetry {
        discover_with_symmetry(&patterns, src.clearance, &bounds)?
    } else {
        discover(&patterns, src.clearance, &bounds)?
    };
    found(outcome)
}

/// A scheme deep enough for `stats`: loaded and deepened on request, or
/// discovered with the clearance the statistics need.
fn obtain_for_stats(
    src: &Source,
    stats: &MultiStat,
    syms: &[Symmetry],
    auto_deepen: bool,
) -> CliResult<Scheme> {
    if let Some(path) = &src.scheme {
        let s = load(path)?;
        if !auto_deepen {
            return Ok(s);
        }
        let b = src
            .bounds
            .unwrap_or_else(|| SearchBounds::for_patterns(&s.patterns));
        return Ok(ensure_clearance(s, stats, &b)?);
    }
    let patterns = patterns_of(src)?;
    let bounds = bounds_of(src, &patterns);
    let syms: &[Symmetry] = if src.symmetry {
        syms
    } else {
        &[Symmetry::Identity]
    };
    let outcome = discover_for_stats(&patterns, stats, src.clearance, syms, &bounds)?;
    found(outcome)
}

fn found(outcome: Outcome) -> CliResult<Scheme> {
    match outcome {
        Outcome::Found(s) => Ok(s),
        Outcome::Exhausted(frontiers) => {
            let mut msg = String::from("no scheme found within the search bounds");
            for f in frontiers {
                msg.push_str(&format!("\nopen frontier {f}"));
            }
            Err(Failure::Domain(msg))
        }
    }
}

fn pattern_strings(ps: &[VincularPattern]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn print_summary(s: &Scheme) {
    println!(
        "patterns: {}",
        pattern_strings(&s.source_patterns()).join(", ")
    );
    if s.symmetry != Symmetry::Identity {
        println!(
            "scheme for: {} (symmetry {})",
            pattern_strings(&s.patterns).join(", "),
            s.symmetry
        );
    }
    println!(
        "triples: {}  depth: {}  clearance: {}  verified to n = {}",
        s.len(),
        s.depth(),
        s.clearance(),
        s.verification_bound
    );
    print!("{}", s.render_tree());
}

fn print_distributions(ms: &MultiStat, polys: &[DistPolynomial], output: Output) {
    let names = ms.names();
    let vars = DistPolynomial::default_vars(ms.arity());
    match output {
        Output::Text => {
            let legend: Vec<String> = vars
                .iter()
                .zip(&names)
                .map(|(v, n)| format!("{v} = {n}"))
                .collect();
            println!("# {}", legend.join(", "));
            for (i, p) in polys.iter().enumerate() {
                println!("n={}: {}", i + 1, p.display_with(&vars));
            }
        }
        Output::Csv => {
            println!("n,{},coefficient", names.join(","));
            for (i, p) in polys.iter().enumerate() {
                for (e, c) in p.terms() {
                    let e: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                    println!("{},{},{c}", i + 1, e.join(","));
                }
            }
        }
        Output::Json => {
            let rows: Vec<_> = polys
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let terms: Vec<_> = p
                        .terms()
                        .map(|(e, c)| json!({ "exponents": e, "coefficient": c.to_string() }))
                        .collect();
                    json!({ "n": i + 1, "terms": terms })
                })
                .collect();
            println!("{}", json!({ "statistics": names, "distributions": rows }));
        }
    }
}

fn verify(s: &Scheme, ms: Option<&MultiStat>, n_max: u32) -> CliResult<()> {
    let source = s.source_patterns();
    let mut counter = Evaluator::counting(s)?;
    let mut dist = ms.map(|m| Evaluator::with_stats(s, m)).transpose()?;
    for n in 1..=n_max {
        let got = counter.count(n)?;
        let want = brute_count(n, &source)?;
        if got != want.into() {
            return Err(Failure::Domain(format!(
                "divergence at n={n} (count): scheme gives {got}, brute force {want}"
            )));
        }
        if let (Some(ev), Some(m)) = (dist.as_mut(), ms) {
            let got = ev.distribution(n)?;
            let want = brute_distribution(n, &source, m)?;
            if got != want {
                let i = (0..m.arity())
                    .find(|&i| got.marginal(i) != want.marginal(i))
                    .unwrap_or(0);
                return Err(Failure::Domain(format!(
                    "divergence at n={n} ({}): scheme gives {got}, brute force {want}",
                    m.names()[i]
                )));
            }
        }
        println!("n={n}: ok ({want})");
    }
    println!("pass");
    Ok(())
}
