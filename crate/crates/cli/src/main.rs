use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use qpyth::qarith::{q_rational_any, CFrac, Fraction, QRational};
use qpyth::qtriples::{
    condition_report, q_pythagorean_tree, q_triple, scan_unimodal, series_solution,
    verify_pythagoras, ConditionReport, QPythTriple,
};
use qpyth::search::{search_with_stats, SearchBounds};
use qpyth::triples::{euclid_triple, pythagorean_tree, ClassicalTriple};
use qpyth::Poly;

const DEPTH_LIMIT: usize = 64;

#[derive(Parser, Debug)]
#[command(
    name = "qpyth",
    version,
    about = "q-deformed rationals and Pythagorean triples"
)]
struct Cli {
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Largest tree depth accepted (at most 64)
    #[arg(long, global = true, default_value_t = 20)]
    max_depth: usize,

    /// Largest numerator for scan-unimodal
    #[arg(long, global = true, default_value_t = 40)]
    max_m: u64,

    /// Largest degree of C for search
    #[arg(long, global = true, default_value_t = 7)]
    max_deg: usize,

    /// Largest coefficient for search (default: the hypotenuse)
    #[arg(long, global = true)]
    max_coeff: Option<u64>,

    /// Keep only unimodal solutions in search
    #[arg(long, global = true)]
    require_unimodal: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// q-rational [m/n]_q; fractions below 1 go through inversion
    Qrat { fraction: Fraction },
    /// Continued fraction of m/n, or the fraction of [a1,a2,...]
    Cf { input: String },
    /// Euclid's triple (2mn, m^2-n^2, m^2+n^2) for m/n >= 1
    Triple { fraction: Fraction },
    /// q-Pythagorean triple of m/n > 1
    Qtriple { fraction: Fraction },
    /// The series solution for n/1
    Series { n: u64 },
    /// Checks A^2 + q B^2 = C C* for coefficient lists like 1,2,1
    Verify { a: String, b: String, c: String },
    /// Tree of Pythagorean triples
    Tree {
        #[arg(default_value_t = 3)]
        depth: usize,
        /// Attach q-triples to the nodes
        #[arg(long)]
        q: bool,
    },
    /// Tree of Pythagorean triples with q-triples
    Qtree {
        #[arg(default_value_t = 3)]
        depth: usize,
    },
    /// Bounded search for q-deformations of the triple (a, b, c)
    Search { a: i128, b: i128, c: i128 },
    /// Unimodality of A, B, C for all coprime m > n with m <= --max-m
    ScanUnimodal,
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn qrat_text(r: &QRational) -> String {
    format!(
        "[{}]_q = ({}) / ({})\nnum {}\nden {}\n",
        r.base(),
        r.num(),
        r.den(),
        r.num(),
        r.den()
    )
}

fn triple_text(t: &QPythTriple) -> String {
    let [a, b, c] = t.classical();
    let mut s = format!("{} -> ({a}, {b}, {c})\n", t.base());
    let _ = writeln!(s, "A  = {}", t.a());
    let _ = writeln!(s, "B  = {}", t.b());
    let _ = writeln!(s, "C  = {}", t.c());
    let _ = writeln!(s, "C* = {}", t.c_star());
    s + &conditions_text(&t.conditions())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn conditions_text(r: &ConditionReport) -> String {
    format!(
        "positive {}, palindromic {}, monic {}, unimodal {}\n",
        yes(r.con1()),
        yes(r.con2()),
        yes(r.con3()),
        yes(r.unimodal())
    )
}

#[derive(Serialize)]
struct CfRecord {
    fraction: Fraction,
    terms: Vec<u64>,
}

#[derive(Serialize)]
struct TripleRecord {
    fraction: Fraction,
    triple: [i128; 3],
}

#[derive(Serialize)]
struct VerifyRecord {
    #[serde(rename = "A")]
    a: Poly,
    #[serde(rename = "B")]
    b: Poly,
    #[serde(rename = "C")]
    c: Poly,
    holds: bool,
    conditions: ConditionReport,
}

#[derive(Serialize)]
struct TreeRecord {
    level: usize,
    word: String,
    triple: [i128; 3],
    fraction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<Option<QPythTriple>>,
}

fn cmd_cf(cli: &Cli, input: &str) -> Result<Output> {
    let (fraction, cf) = if input.trim_start().starts_with('[') {
        let cf: CFrac = input.parse()?;
        (cf.to_fraction()?, cf)
    } else {
        let f: Fraction = input.parse()?;
        (f, CFrac::expand(f)?)
    };
    if cli.json {
        return Ok(Output::ok(json(&CfRecord {
            fraction,
            terms: cf.terms().to_vec(),
        })?));
    }
    Ok(Output::ok(format!("{fraction} = {cf}\n")))
}

fn cmd_tree(cli: &Cli, depth: usize, with_q: bool) -> Result<Output> {
    if depth > cli.max_depth {
        bail!("depth {depth} exceeds --max-depth {}", cli.max_depth);
    }
    let records: Vec<TreeRecord> = if with_q {
        let tree = q_pythagorean_tree(depth)?;
        tree.levels()
            .iter()
            .enumerate()
            .flat_map(|(level, row)| row.iter().map(move |n| (level, n)))
            .map(|(level, n)| {
                let r = n.node.record();
                TreeRecord {
                    level,
                    word: r.word,
                    triple: r.triple,
                    fraction: r.fraction,
                    q: Some(n.q.clone()),
                }
            })
            .collect()
    } else {
        let tree = pythagorean_tree(depth)?;
        tree.levels()
            .iter()
            .enumerate()
            .flat_map(|(level, row)| row.iter().map(move |n| (level, n)))
            .map(|(level, n)| {
                let r = n.record();
                TreeRecord {
                    level,
                    word: r.word,
                    triple: r.triple,
                    fraction: r.fraction,
                    q: None,
                }
            })
            .collect()
    };
    if cli.json {
        return Ok(Output::ok(json(&records)?));
    }
    let mut s = String::new();
    for r in &records {
        let [a, b, c] = r.triple;
        let word = if r.word.is_empty() { "-" } else { &r.word };
        let frac = r.fraction.as_deref().unwrap_or("-");
        let _ = writeln!(
            s,
            "{:indent$}{word} ({a}, {b}, {c}) {frac}",
            "",
            indent = 2 * r.level
        );
        if let Some(Some(t)) = &r.q {
            let pad = 2 * r.level + 2;
            let _ = writeln!(s, "{:pad$}A = {}", "", t.a());
            let _ = writeln!(s, "{:pad$}B = {}", "", t.b());
            let _ = writeln!(s, "{:pad$}C = {}", "", t.c());
        }
    }
    Ok(Output::ok(s))
}

fn cmd_search(cli: &Cli, a: i128, b: i128, c: i128) -> Result<Output> {
    let target = ClassicalTriple::new(a, b, c);
    let cap = match cli.max_coeff {
        Some(x) => x,
        None => u64::try_from(c).context("hypotenuse out of range")?,
    };
    let bounds = SearchBounds::new(cli.max_deg, cap, cli.require_unimodal)?;
    let (set, stats) = search_with_stats(&target, &bounds)?;
    eprintln!(
        "examined {} candidates, found {} solutions",
        stats.candidates, stats.solutions
    );
    if cli.json {
        return Ok(Output::ok(json(&set)?));
    }
    let n = set.solutions().len();
    let mut s = format!(
        "{target}: deg C <= {}, coefficients <= {cap}: {n} solution{}\n",
        cli.max_deg,
        if n == 1 { "" } else { "s" }
    );
    for (i, sol) in set.solutions().iter().enumerate() {
        let [ta, tb, tc] = sol.terms();
        let _ = writeln!(s, "[{}] terms {ta}/{tb}/{tc}", i + 1);
        let _ = writeln!(s, "  A = {}", sol.a);
        let _ = writeln!(s, "  B = {}", sol.b);
        let _ = writeln!(s, "  C = {}", sol.c);
    }
    Ok(Output::ok(s))
}

fn cmd_scan(cli: &Cli) -> Result<Output> {
    if cli.max_m < 1 {
        bail!("--max-m must be at least 1");
    }
    let scan = scan_unimodal(cli.max_m)?;
    let code = if scan.counterexamples.is_empty() {
        0
    } else {
        3
    };
    if cli.json {
        return Ok(Output {
            text: json(&scan)?,
            code,
        });
    }
    let mut s = format!(
        "checked {} fractions with m <= {}\n",
        scan.checked, scan.max_m
    );
    let _ = writeln!(s, "{} counterexamples", scan.counterexamples.len());
    for ce in &scan.counterexamples {
        let u = ce.unimodal;
        let _ = writeln!(
            s,
            "{}: A {}, B {}, C {}",
            ce.base,
            yes(u.a),
            yes(u.b),
            yes(u.c)
        );
    }
    Ok(Output { text: s, code })
}

fn run(cli: &Cli) -> Result<Output> {
    if cli.max_depth > DEPTH_LIMIT {
        bail!("--max-depth must be at most {DEPTH_LIMIT}");
    }
    match &cli.command {
        Command::Qrat { fraction } => {
            let r = q_rational_any(*fraction)?;
            Ok(Output::ok(if cli.json { json(&r)? } else { qrat_text(&r) }))
        }
        Command::Cf { input } => cmd_cf(cli, input),
        Command::Triple { fraction } => {
            let t = euclid_triple(fraction.num(), fraction.den())?;
            if cli.json {
                let r = TripleRecord {
                    fraction: *fraction,
                    triple: [t.a, t.b, t.c],
                };
                return Ok(Output::ok(json(&r)?));
            }
            Ok(Output::ok(format!("{fraction} -> {t}\n")))
        }
        Command::Qtriple { fraction } => {
            let t = q_triple(*fraction)?;
            Ok(Output::ok(if cli.json {
                json(&t)?
            } else {
                triple_text(&t)
            }))
        }
        Command::Series { n } => {
            let t = series_solution(*n)?;
            Ok(Output::ok(if cli.json {
                json(&t)?
            } else {
                triple_text(&t)
            }))
        }
        Command::Verify { a, b, c } => {
            let parse =
                |s: &str| Poly::from_coeff_list(s).with_context(|| format!("bad polynomial {s:?}"));
            let (a, b, c) = (parse(a)?, parse(b)?, parse(c)?);
            let holds = verify_pythagoras(&a, &b, &c);
            let conditions = condition_report(&a, &b, &c);
            let code = if holds { 0 } else { 2 };
            if cli.json {
                return Ok(Output {
                    text: json(&VerifyRecord {
                        a,
                        b,
                        c,
                        holds,
                        conditions,
                    })?,
                    code,
                });
            }
            let text = format!(
                "A^2 + q B^2 = C C*: {}\n{}",
                yes(holds),
                conditions_text(&conditions)
            );
            Ok(Output { text, code })
        }
        Command::Tree { depth, q } => cmd_tree(cli, *depth, *q),
        Command::Qtree { depth } => cmd_tree(cli, *depth, true),
        Command::Search { a, b, c } => cmd_search(cli, *a, *b, *c),
        Command::ScanUnimodal => cmd_scan(cli),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
