use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde::Serialize;
use serde_json::json;

use shuffle_hopf::exact::parse_rational;
use shuffle_hopf::fps::parse_series;
use shuffle_hopf::hausdorff::{
    goldberg_coeff, goldberg_moment_coeff, hausdorff_series, reconstruct, NCPoly,
};
use shuffle_hopf::nattrans::{coder_apply, phi_apply, phi_inverse_apply};
use shuffle_hopf::tensorhopf::{qshuffle, shuffle, twisted_product, word, TElem, TensorWord};
use shuffle_hopf::verify;
use shuffle_hopf::wqsym::PackedWord;
use shuffle_hopf::{Error, Rational};

#[derive(Parser)]
#[command(
    name = "shufflehopf",
    version,
    about = "Exact shuffle, quasi-shuffle and Hausdorff series computations"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductKind {
    Shuffle,
    Qshuffle,
    Twist,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two tensor words, e.g. `product qshuffle "1" "2.3 4"`.
    Product {
        kind: ProductKind,
        w1: String,
        w2: String,
        /// Twisting series (required for `twist`).
        #[arg(long)]
        series: Option<String>,
    },
    /// Apply φ_P (or its inverse) to a tensor word.
    Phi {
        word: String,
        #[arg(long)]
        series: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Apply the coderivation D_P to a tensor word.
    Coder {
        word: String,
        #[arg(long)]
        series: String,
    },
    /// Goldberg coefficient of a packed word in the Hausdorff series.
    Goldberg {
        word: String,
        /// Moments f1,f2,... replacing the integral.
        #[arg(long, value_delimiter = ',')]
        moments: Option<Vec<String>>,
    },
    /// Hausdorff series log(e^x1 ... e^xk) truncated at degree N.
    Hausdorff {
        k: Option<usize>,
        n: Option<usize>,
        #[arg(long)]
        letters: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
        /// Compare with the sum of Goldberg coefficients instead of printing.
        #[arg(long)]
        check: bool,
    },
    /// Run a property suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

enum Failure {
    Verification,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::UnknownSeries(_)
        | Error::UnknownSuite(_)
        | Error::NotPermutation(_)
        | Error::NotNondecreasing(_)
        | Error::EmptyArgument => 2,
        Error::TruncationExceeded { .. }
        | Error::OrderMismatch { .. }
        | Error::InsufficientMoments { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn parse_word(s: &str) -> Result<TensorWord, Error> {
    s.parse()
}

/// Rationals in JSON are always written `a/b`.
fn json_rational(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Terms longest word first, then lexicographically, as `c*[word]`.
fn render_telem(x: &TElem) -> String {
    let mut terms: Vec<_> = x.iter().collect();
    terms.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = c.abs();
        out.push_str(match (i, negative) {
            (0, true) => "−",
            (0, false) => "",
            (_, true) => " − ",
            (_, false) => " + ",
        });
        out.push_str(&format!("{magnitude}*[{w}]"));
    }
    out
}

fn telem_json(x: &TElem) -> String {
    let mut terms: Vec<_> = x.iter().collect();
    terms.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let terms: Vec<_> = terms
        .into_iter()
        .map(|(w, c)| {
            let letters: Vec<Vec<String>> = w
                .letters()
                .iter()
                .map(|m| m.factors().iter().map(u32::to_string).collect())
                .collect();
            json!({ "coeff": json_rational(c), "word": letters })
        })
        .collect();
    json!({ "terms": terms }).to_string()
}

fn ncpoly_json(p: &NCPoly) -> String {
    let terms: Vec<_> = p
        .terms()
        .map(|(w, c)| json!({ "word": w.letters(), "coeff": json_rational(c) }))
        .collect();
    serde_json::Value::Array(terms).to_string()
}

fn telem_out(x: &TElem, as_json: bool) -> String {
    if as_json {
        telem_json(x)
    } else {
        render_telem(x)
    }
}

#[derive(Serialize)]
struct SuiteJson<'a> {
    suite: &'a str,
    cases: usize,
    passed: bool,
    failures: &'a [String],
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Product {
            kind,
            w1,
            w2,
            series,
        } => {
            let (a, b) = (parse_word(w1)?, parse_word(w2)?);
            let (x, y) = (word(a.clone()), word(b.clone()));
            let z = match kind {
                ProductKind::Shuffle => shuffle(&x, &y),
                ProductKind::Qshuffle => qshuffle(&x, &y),
                ProductKind::Twist => {
                    let s = series
                        .as_deref()
                        .ok_or_else(|| Error::Parse("twist requires --series".into()))?;
                    let p = parse_series(s, (a.len() + b.len()).max(1))?;
                    twisted_product(&p, &x, &y)?
                }
            };
            Ok(telem_out(&z, cli.json))
        }
        Command::Phi {
            word: w,
            series,
            inverse,
        } => {
            let w = parse_word(w)?;
            let p = parse_series(series, w.len().max(1))?;
            let x = word(w);
            let y = if *inverse {
                phi_inverse_apply(&p, &x)?
            } else {
                phi_apply(&p, &x)?
            };
            Ok(telem_out(&y, cli.json))
        }
        Command::Coder { word: w, series } => {
            let w = parse_word(w)?;
            let p = parse_series(series, w.len().max(1))?;
            Ok(telem_out(&coder_apply(&p, &word(w))?, cli.json))
        }
        Command::Goldberg { word: u, moments } => {
            let u: PackedWord = u.parse()?;
            let c = match moments {
                None => goldberg_coeff(&u),
                Some(ms) => {
                    let ms = ms
                        .iter()
                        .map(|m| parse_rational(m))
                        .collect::<Result<Vec<_>, _>>()?;
                    goldberg_moment_coeff(&u, &ms)?
                }
            };
            Ok(if cli.json {
                json!({ "word": u.values(), "coeff": json_rational(&c) }).to_string()
            } else {
                c.to_string()
            })
        }
        Command::Hausdorff {
            k,
            n,
            letters,
            degree,
            check,
        } => {
            let k = letters
                .or(*k)
                .ok_or_else(|| Error::Parse("missing alphabet size k".into()))?;
            let n = degree
                .or(*n)
                .ok_or_else(|| Error::Parse("missing truncation degree N".into()))?;
            if k == 0 || n == 0 || k > u8::MAX as usize {
                return Err(Error::Parse("k and N must be positive (k ≤ 255)".into()).into());
            }
            if !check {
                let phi = hausdorff_series(k, n);
                return Ok(if cli.json {
                    ncpoly_json(&phi)
                } else {
                    phi.to_string()
                });
            }
            let rec = reconstruct(k, n);
            let text = if cli.json {
                json!({
                    "passed": rec.passed(),
                    "coefficients": rec.words,
                    "mismatch": rec.mismatch.as_ref().map(|(w, a, b)| json!({
                        "word": w.letters(),
                        "goldberg": json_rational(a),
                        "hausdorff": json_rational(b),
                    })),
                })
                .to_string()
            } else {
                match &rec.mismatch {
                    None => format!("PASS ({} coefficients)", rec.words),
                    Some((w, a, b)) => {
                        format!("FAIL at {w}: Σ c_u M_u gives {a}, Hausdorff series has {b}")
                    }
                }
            };
            if rec.passed() {
                Ok(text)
            } else {
                println!("{text}");
                Err(Failure::Verification)
            }
        }
        Command::Verify { suite, max_n } => {
            let reports = verify::run(suite, *max_n)?;
            let passed = reports.iter().all(|r| r.passed());
            let text = if cli.json {
                let suites: Vec<_> = reports
                    .iter()
                    .map(|r| SuiteJson {
                        suite: r.suite,
                        cases: r.cases,
                        passed: r.passed(),
                        failures: &r.failures,
                    })
                    .collect();
                json!({ "passed": passed, "suites": suites }).to_string()
            } else {
                let mut lines = Vec::new();
                for r in &reports {
                    if r.passed() {
                        lines.push(format!("{}: PASS ({} cases)", r.suite, r.cases));
                    } else {
                        lines.push(format!(
                            "{}: FAIL ({} of {} cases)",
                            r.suite,
                            r.failures.len(),
                            r.cases
                        ));
                        lines.extend(r.failures.iter().map(|f| format!("  {f}")));
                    }
                }
                lines.push(if passed { "PASS" } else { "FAIL" }.into());
                lines.join("\n")
            };
            if passed {
                Ok(text)
            } else {
                println!("{text}");
                Err(Failure::Verification)
            }
        }
    }
}
