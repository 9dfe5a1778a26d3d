//! Command-line front end.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bases::{
    build_family, check_duality, entry_flags, multiplicativity_check, BasisTable, Family,
};
use crate::bialgebra::Bialgebra;
use crate::error::{Error, Result};
use crate::factorization::{verify_factorization, ORDER_CONVENTION};
use crate::poly::{format_rational, Poly};
use crate::semigroup::SemigroupSpec;
use crate::words::{lyndon_words_up_to_grade, Alphabet, LetterOrder};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when a check produced a nonempty violation report.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for usage, configuration and algebra errors.
pub const EXIT_ERROR: i32 = 2;

const DEFAULT_SEMIGROUP: &str = r#"{"kind":"trivial","alphabet":["a","b"]}"#;

#[derive(Parser, Debug)]
#[command(
    name = "combialg",
    version,
    about = "Exact computations in semigroup bialgebras over words"
)]
pub struct Cli {
    /// Semigroup as inline JSON or a path to a JSON file.
    #[arg(long, global = true, default_value = DEFAULT_SEMIGROUP)]
    pub semigroup: String,

    /// Letter order: comma-separated labels, `default` or `reverse-grade`.
    #[arg(long, global = true, default_value = "default")]
    pub order: String,

    /// Truncation grade.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub grade: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Smallest |β| examined by `check-mult`.
    #[arg(long, global = true, default_value_t = 2)]
    pub min_weight: u32,

    /// Report every violation instead of the first 100.
    #[arg(long, global = true)]
    pub full_diff: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Law {
    Shuffle,
    Stuffle,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "PS")]
    PS,
    #[value(name = "TS")]
    TS,
    #[value(name = "P")]
    P,
    #[value(name = "S")]
    S,
    #[value(name = "Sprime")]
    Sprime,
    #[value(name = "Bprime")]
    Bprime,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::PS => Family::PS,
            FamilyArg::TS => Family::TS,
            FamilyArg::P => Family::P,
            FamilyArg::S => Family::S,
            FamilyArg::Sprime => Family::Sprime,
            FamilyArg::Bprime => Family::Bprime,
        }
    }
}

/// A dual pair `(S, B)`: the left family supplies the linear forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyPair {
    #[value(name = "S-P")]
    SP,
    #[value(name = "Sprime-Bprime")]
    SprimeBprime,
    #[value(name = "TS-PS")]
    TsPs,
}

impl FamilyPair {
    pub fn families(self) -> (Family, Family) {
        match self {
            FamilyPair::SP => (Family::S, Family::P),
            FamilyPair::SprimeBprime => (Family::Sprime, Family::Bprime),
            FamilyPair::TsPs => (Family::TS, Family::PS),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyPair::SP => "S-P",
            FamilyPair::SprimeBprime => "Sprime-Bprime",
            FamilyPair::TsPs => "TS-PS",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lyndon words up to the truncation grade.
    Lyndon,
    /// Product of two words.
    Product {
        #[arg(long, value_enum, default_value_t = Law::Dual)]
        law: Law,
        left: String,
        right: String,
    },
    /// Coproduct of a word.
    Coproduct { word: String },
    /// Primitive projection of a word.
    Pi1 { word: String },
    /// A basis family up to the truncation grade.
    Basis {
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Pairing of a family pair against the identity matrix.
    CheckDuality {
        #[arg(long, value_enum, default_value_t = FamilyPair::SprimeBprime)]
        family_pair: FamilyPair,
    },
    /// Multiplicativity criterion on a family pair.
    CheckMult {
        #[arg(long, value_enum, default_value_t = FamilyPair::SprimeBprime)]
        family_pair: FamilyPair,
    },
    /// Truncated factorization of the diagonal series.
    Factorize {
        #[arg(long, value_enum, default_value_t = FamilyPair::SP)]
        family_pair: FamilyPair,
    },
}

/// Rendered output of a run and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

fn load_semigroup(arg: &str) -> Result<SemigroupSpec> {
    let text = arg.trim();
    if text.starts_with('{') {
        return SemigroupSpec::from_json(text);
    }
    let content = std::fs::read_to_string(Path::new(text))
        .map_err(|e| Error::InvalidConfig(format!("--semigroup {text}: {e}")))?;
    SemigroupSpec::from_json(&content)
}

fn parse_order(arg: &str) -> LetterOrder {
    match arg.trim() {
        "default" => LetterOrder::Default,
        "reverse-grade" => LetterOrder::ReverseGrade,
        list => LetterOrder::Explicit(list.split(',').map(|s| s.trim().to_string()).collect()),
    }
}

struct Context {
    bialgebra: Bialgebra,
    grade: u32,
    format: Format,
}

impl Context {
    fn alphabet(&self) -> &Arc<Alphabet> {
        self.bialgebra.alphabet()
    }

    fn header(&self) -> Value {
        let a = self.alphabet();
        json!({
            "semigroup": a.spec().to_json(),
            "order": a.order_labels(),
            "grade": self.grade,
        })
    }

    fn text_header(&self) -> String {
        format!(
            "order: {}\ngrade: {}\n",
            self.alphabet().order_labels().join(" < "),
            self.grade
        )
    }

    fn render(&self, mut body: Value, text: impl FnOnce() -> String) -> String {
        match self.format {
            Format::Json => {
                let mut out = self.header();
                if let (Value::Object(o), Value::Object(b)) = (&mut out, body.take()) {
                    o.extend(b);
                }
                serde_json::to_string_pretty(&out).expect("JSON value serializes") + "\n"
            }
            Format::Text => self.text_header() + &text(),
        }
    }

    fn word_poly(&self, text: &str) -> Result<Poly> {
        let w = self.alphabet().parse_word(text)?;
        Ok(Poly::word(w))
    }

    fn table(&self, family: Family) -> Result<BasisTable> {
        build_family(&self.bialgebra, family, self.grade)
    }
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let spec = load_semigroup(&cli.semigroup)?;
    let alphabet = Arc::new(Alphabet::new(spec, &parse_order(&cli.order), cli.grade)?);
    let ctx = Context {
        bialgebra: Bialgebra::new(alphabet),
        grade: cli.grade,
        format: cli.format,
    };
    let a = ctx.alphabet().clone();
    let ok = |output| {
        Ok(Outcome {
            status: EXIT_OK,
            output,
        })
    };
    match &cli.command {
        Command::Lyndon => {
            let words = lyndon_words_up_to_grade(&a, ctx.grade)?;
            let body = json!({
                "count": words.len(),
                "words": words.iter().map(|w| a.word_labels(w)).collect::<Vec<_>>(),
            });
            ok(ctx.render(body, || {
                words.iter().fold(String::new(), |mut s, w| {
                    let _ = writeln!(s, "{:>3}  {}", a.grade(w), a.format_word(w));
                    s
                })
            }))
        }
        Command::Product { law, left, right } => {
            let (p, q) = (ctx.word_poly(left)?, ctx.word_poly(right)?);
            let (name, result) = match law {
                Law::Shuffle => ("shuffle", ctx.bialgebra.shuffle(&p, &q)?),
                Law::Stuffle => ("stuffle", ctx.bialgebra.stuffle(&p, &q)?),
                Law::Dual => ("dual", ctx.bialgebra.dual_product(&p, &q)?),
            };
            let body = json!({ "law": name, "result": result.to_json(&a) });
            ok(ctx.render(body, || result.display(&a) + "\n"))
        }
        Command::Coproduct { word } => {
            let result = ctx.bialgebra.delta(&ctx.word_poly(word)?)?;
            let body = json!({ "result": result.to_json(&a) });
            ok(ctx.render(body, || result.display(&a) + "\n"))
        }
        Command::Pi1 { word } => {
            let result = ctx.bialgebra.pi1(&ctx.word_poly(word)?, ctx.grade)?;
            let body = json!({ "result": result.to_json(&a) });
            ok(ctx.render(body, || result.display(&a) + "\n"))
        }
        Command::Basis { family } => {
            let family = Family::from(*family);
            let table = ctx.table(family)?;
            let body =
                json!({ "family": family.name(), "entries": table.to_json(&ctx.bialgebra)? });
            let mut rows = Vec::new();
            for e in table.iter() {
                let f = entry_flags(&ctx.bialgebra, e)?;
                let mut flags = Vec::new();
                if f.lyndon {
                    flags.push("lyndon");
                }
                if f.primitive == Some(true) {
                    flags.push("primitive");
                }
                if f.upper_triangular {
                    flags.push("upper");
                }
                if f.lower_triangular {
                    flags.push("lower");
                }
                rows.push((
                    a.format_word(&e.word),
                    e.element.display(&a),
                    flags.join(","),
                ));
            }
            ok(ctx.render(body, || aligned(&rows)))
        }
        Command::CheckDuality { family_pair } => {
            let (fs, fb) = family_pair.families();
            let (s, b) = (ctx.table(fs)?, ctx.table(fb)?);
            let violations = check_duality(&s, &b, ctx.grade)?;
            let body = json!({
                "family_pair": family_pair.name(),
                "holds": violations.is_empty(),
                "violations": violations.iter().map(|v| json!({
                    "left": a.word_labels(&v.left),
                    "right": a.word_labels(&v.right),
                    "value": format_rational(&v.value),
                })).collect::<Vec<_>>(),
            });
            let output = ctx.render(body, || {
                let mut s = format!("holds: {}\n", violations.is_empty());
                for v in &violations {
                    let _ = writeln!(
                        s,
                        "<{}, {}> = {}",
                        a.format_word(&v.left),
                        a.format_word(&v.right),
                        v.value
                    );
                }
                s
            });
            Ok(Outcome {
                status: check_status(violations.is_empty()),
                output,
            })
        }
        Command::CheckMult { family_pair } => {
            let (fs, fb) = family_pair.families();
            let (s, b) = (ctx.table(fs)?, ctx.table(fb)?);
            let report = multiplicativity_check(&s, &b, ctx.grade, cli.min_weight)?;
            let mut body = report.to_json(&a);
            body["family_pair"] = json!(family_pair.name());
            body["order_convention"] = json!(ORDER_CONVENTION);
            let output = ctx.render(body, || {
                let mut s = format!("multiplicative: {}\n", report.is_multiplicative());
                for h in &report.hits {
                    let beta: Vec<String> = h
                        .beta
                        .entries()
                        .rev()
                        .map(|(l, e)| format!("{}^{}", a.format_word(l), e))
                        .collect();
                    let _ = writeln!(
                        s,
                        "{}  [{}]  {}",
                        a.format_word(&h.lyndon),
                        beta.join(" "),
                        h.value
                    );
                }
                s
            });
            Ok(Outcome {
                status: check_status(report.is_multiplicative()),
                output,
            })
        }
        Command::Factorize { family_pair } => {
            let (fs, fb) = family_pair.families();
            let (s, b) = (ctx.table(fs)?, ctx.table(fb)?);
            let report = verify_factorization(&ctx.bialgebra, &s, &b, ctx.grade, cli.full_diff)?;
            let mut body = report.to_json(&a);
            body["family_pair"] = json!(family_pair.name());
            let output = ctx.render(body, || {
                let mut s = format!(
                    "holds: {}\norder_convention: {}\ntotal_violations: {}\n",
                    report.holds, ORDER_CONVENTION, report.total_violations
                );
                for (u, v, c) in &report.violations {
                    let _ = writeln!(s, "{} ⊗ {}  {}", a.format_word(u), a.format_word(v), c);
                }
                s
            });
            Ok(Outcome {
                status: check_status(report.holds),
                output,
            })
        }
    }
}

fn check_status(holds: bool) -> i32 {
    if holds {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn aligned(rows: &[(String, String, String)]) -> String {
    let w0 = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    let w1 = rows.iter().map(|r| r.1.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (a, b, c) in rows {
        let pad0 = w0 - a.chars().count();
        let pad1 = w1 - b.chars().count();
        let line = format!("{a}{}  {b}{}  {c}", " ".repeat(pad0), " ".repeat(pad1));
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}

/// Parses `args`, runs the command and returns the exit status together
/// with what belongs on stdout and stderr.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if status == EXIT_OK {
                (status, text, String::new())
            } else {
                (status, String::new(), text)
            };
        }
    };
    match run(&cli) {
        Ok(o) => (o.status, o.output, String::new()),
        Err(e) => (EXIT_ERROR, String::new(), format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        main_with_args(std::iter::once("combialg").chain(args.iter().copied()))
    }

    #[test]
    fn lyndon_count() {
        let (status, out, _) = run_args(&["lyndon", "--grade", "4"]);
        assert_eq!(status, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], 8);
        assert_eq!(v["order"], json!(["a", "b"]));
    }

    #[test]
    fn shuffle_product() {
        let (status, out, _) = run_args(&["product", "--law", "shuffle", "ab", "ab"]);
        assert_eq!(status, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(
            v["result"],
            json!({"terms": [
                {"word": ["a", "a", "b", "b"], "coeff": "4"},
                {"word": ["a", "b", "a", "b"], "coeff": "2"},
            ]})
        );
    }

    #[test]
    fn errors_exit_two() {
        assert_eq!(run_args(&["pi1", "c"]).0, 2);
        assert_eq!(run_args(&["lyndon", "--grade", "0"]).0, 2);
        assert_eq!(run_args(&["bogus"]).0, 2);
        let (status, _, err) = run_args(&[
            "--semigroup",
            r#"{"kind":"nat_plus"}"#,
            "basis",
            "--family",
            "P",
        ]);
        assert_eq!(status, 2);
        assert!(err.contains("WrongSemigroup"), "{err}");
    }

    #[test]
    fn order_is_echoed() {
        let (_, out, _) = run_args(&[
            "lyndon", "--order", "b,a", "--grade", "2", "--format", "text",
        ]);
        assert!(out.starts_with("order: b < a\n"), "{out}");
        let (_, out, _) = run_args(&[
            "--semigroup",
            r#"{"kind":"nat_plus"}"#,
            "--order",
            "reverse-grade",
            "--grade",
            "3",
            "lyndon",
            "--format",
            "text",
        ]);
        assert!(out.starts_with("order: y3 < y2 < y1\n"), "{out}");
    }

    #[test]
    fn aligned_columns() {
        let rows = vec![
            ("a".to_string(), "a".to_string(), "lyndon".to_string()),
            ("ab".to_string(), "ab - ba".to_string(), String::new()),
        ];
        assert_eq!(aligned(&rows), "a   a        lyndon\nab  ab - ba\n");
    }
}
