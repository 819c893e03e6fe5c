//! Command-line front end: normal forms, word equality, relation listing,
//! congruence orbits, normal-word counting, growth series, automaton export
//! and the verification suites.
//!
//! Exit codes: 0 success; 1 verification failure (a failing suite, or `eq`
//! deciding "not-equal", or an internal invariant violation); 2 invalid
//! input (bad `n`/`k`, malformed word, exceeded budget, unknown flag).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dihedral::lang;
use dihedral::oracle;
use dihedral::presentation::{Presentation, Word};
use dihedral::rewrite;
use dihedral::verify::{run_suite, Suite, SuiteBounds};
use dihedral::Error;

#[derive(Parser)]
#[command(
    name = "dihedral",
    version,
    about = "Normal forms, automata and growth series for monoids with dihedral-type permutation relations"
)]
struct Cli {
    /// Number of generators (n > 3)
    #[arg(long)]
    n: i64,
    /// Skip parameter (1 < k < n, k^2 ≡ 1 mod n)
    #[arg(long)]
    k: i64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a word to its normal form and print the a_1^i (a_2⋯a_n)^j b decomposition
    Nf { word: String },
    /// Decide whether two words represent the same monoid element
    Eq { left: String, right: String },
    /// Print the 2n defining relation words, sorted length-lex
    Relations,
    /// Print the congruence class of a word under the defining relations
    Orbit {
        word: String,
        /// Abort (exit 2) if the class grows past this many members
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Count normal words per length, as CSV
    Count {
        #[arg(long)]
        max_len: usize,
    },
    /// Count normal words and print the rational generating function
    Growth {
        #[arg(long)]
        max_len: usize,
    },
    /// Export a normal-word automaton
    Dfa {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum)]
        format: DfaFormat,
    },
    /// Run verification suites (exit 1 if any check fails)
    Verify {
        /// Suite name, or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        max_q: Option<usize>,
        #[arg(long)]
        max_v: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Irreducible,
    Theorem,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Irreducible => "irreducible",
            Which::Theorem => "theorem",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DfaFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ReportFormat {
    Text,
    Json,
}

/// Invalid input exits 2; broken internal invariants exit 1.
fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::RuleMismatch { .. }
        | Error::NonDecreasingStep { .. }
        | Error::NotNormalForm
        | Error::StructureViolation(_) => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

/// Words are whitespace-separated tokens, each an index in 1..=n, written
/// either bare ("3") or prefixed ("a3"). The empty string is the identity.
fn parse_word(p: &Presentation, text: &str) -> Result<Word, String> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let digits = token.strip_prefix('a').unwrap_or(token);
        let value: i64 = digits
            .parse()
            .map_err(|_| format!("malformed word token {token:?}"))?;
        if value < 1 || value > p.n() as i64 {
            return Err(format!(
                "letter {value} out of range 1..={} in word {text:?}",
                p.n()
            ));
        }
        letters.push(value as u8);
    }
    Ok(Word::from(letters))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let p = Presentation::new(cli.n, cli.k)?;
    match cli.command {
        Command::Nf { word } => {
            let w = match parse_word(&p, &word) {
                Ok(w) => w,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return Ok(ExitCode::from(2));
                }
            };
            let nf = rewrite::normal_form(&p, &w)?;
            let d = rewrite::decompose(&p, &nf)?;
            println!("{nf}");
            println!("i={} j={} b={}", d.i, d.j, d.b);
            Ok(ExitCode::SUCCESS)
        }
        Command::Eq { left, right } => {
            let (l, r) = match (parse_word(&p, &left), parse_word(&p, &right)) {
                (Ok(l), Ok(r)) => (l, r),
                (Err(msg), _) | (_, Err(msg)) => {
                    eprintln!("error: {msg}");
                    return Ok(ExitCode::from(2));
                }
            };
            if rewrite::normal_form(&p, &l)? == rewrite::normal_form(&p, &r)? {
                println!("equal");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not-equal");
                Ok(ExitCode::from(1))
            }
        }
        Command::Relations => {
            for w in p.relation_words() {
                println!("{w}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit { word, cap } => {
            let w = match parse_word(&p, &word) {
                Ok(w) => w,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return Ok(ExitCode::from(2));
                }
            };
            let class = oracle::congruence_class(&p, &w, cap);
            if class.truncated {
                eprintln!("error: congruence class exceeds cap {cap}; rerun with a larger --cap");
                return Ok(ExitCode::from(2));
            }
            for m in &class.members {
                println!("{m}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { max_len } => {
            let dfa = lang::irreducible_dfa(&p)?;
            println!("length,count");
            for (len, count) in dfa.count_words_upto(max_len).iter().enumerate() {
                println!("{len},{count}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Growth { max_len } => {
            let dfa = lang::irreducible_dfa(&p)?;
            let g = lang::growth_series(&dfa, max_len);
            println!("length,count");
            for (len, count) in g.coefficients.iter().enumerate() {
                println!("{len},{count}");
            }
            let join = |v: &[num_bigint::BigInt]| {
                v.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            println!("num: {}", join(&g.numerator));
            println!("den: {}", join(&g.denominator));
            Ok(ExitCode::SUCCESS)
        }
        Command::Dfa { which, format } => {
            let dfa = match which {
                Which::Irreducible => lang::irreducible_dfa(&p)?,
                Which::Theorem => lang::theorem_language_dfa(&p)?,
            };
            match format {
                DfaFormat::Json => println!("{}", lang::dfa_to_json(&p, which.name(), &dfa)),
                DfaFormat::Dot => print!("{}", lang::dfa_to_dot(&dfa)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            max_len,
            max_q,
            max_v,
            samples,
            seed,
            cap,
            format,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::all().to_vec()
            } else {
                vec![Suite::from_name(&suite)?]
            };
            let bounds = SuiteBounds {
                max_len,
                max_q,
                max_v,
                samples,
                seed,
                cap,
            };
            let mut all_passed = true;
            let mut reports = Vec::new();
            for s in suites {
                let report = run_suite(&p, s, &bounds)?;
                all_passed &= report.passed();
                match format {
                    ReportFormat::Text => print!("{}", report.to_text()),
                    ReportFormat::Json => reports.push(report),
                }
            }
            if format == ReportFormat::Json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&reports).expect("serialization cannot fail")
                );
            }
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
