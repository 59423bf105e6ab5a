//! The `qring` command line: report documents and their text rendering.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::classifier::{classify, roundtrip_check, Witnessing};
use crate::constructions::fraction_extension;
use crate::error::Error;
use crate::gallery::{builtin, prop32_report};
use crate::model_finder::{cross_check_dichotomy, enumerate_quasiorders_with, DEFAULT_MAX_N};
use crate::relation::{check_axioms, compute_support, lemma_suite, QuasiOrderSpec};
use crate::ring::{Elem, Ring, Window};
use crate::structure::{parse_structure, parse_window, Structure};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Largest integer interval used for fraction windows unless `--window` is
/// given.
const FRACTION_BOUND: i64 = 10;

#[derive(Debug, Parser)]
#[command(name = "qring", version, about = "Check and classify quasi-ordered commutative rings")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the quasi-order axioms and lemmas.
    Check(StructureArgs),
    /// Decide ordered versus valued and rebuild the relation.
    Classify(StructureArgs),
    /// Enumerate every quasi-order on a small finite ring.
    Enumerate(EnumerateArgs),
    /// Check the induced order on the field of fractions.
    Quotfield(StructureArgs),
    /// Run the checks on the two-variable counterexample.
    Counterexample(CounterexampleArgs),
}

#[derive(Debug, Args)]
struct StructureArgs {
    /// Structure file (JSON).
    file: Option<PathBuf>,
    /// Use a builtin structure instead of a file.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Window override: an integer `n` for [-n, n], or a window JSON object.
    #[arg(long)]
    window: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// `zmod:<n>`.
    #[arg(long)]
    ring: String,
    /// Largest ring enumerated exhaustively.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CounterexampleArgs {
    #[arg(long)]
    window: Option<String>,
    #[arg(long)]
    json: bool,
}

/// A finished command: the JSON document, its text rendering and the exit
/// code.
pub struct Outcome {
    pub doc: Json,
    pub text: String,
    pub code: i32,
}

fn input_error(command: &str, e: &Error) -> Outcome {
    Outcome {
        doc: json!({"command": command, "error": e.to_string(), "exit_status": EXIT_INPUT}),
        text: format!("error: {e}\n"),
        code: EXIT_INPUT,
    }
}

fn parse_window_arg(s: &str) -> Result<Window, Error> {
    match s.trim().parse::<i64>() {
        Ok(n) if n >= 0 => Ok(Window::interval(n)),
        Ok(_) => Err(Error::InvalidWindow(format!("negative bound {s}"))),
        Err(_) => parse_window(s),
    }
}

fn load(args: &StructureArgs) -> Result<Structure, Error> {
    let mut s = match (&args.builtin, &args.file) {
        (Some(name), _) => {
            let b = builtin(name)?;
            Structure {
                relation: b.relation,
                window: b.window,
            }
        }
        (None, Some(path)) => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            parse_structure(&src).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
                other => other,
            })?
        }
        (None, None) => return Err(Error::Parse("give a structure file or --builtin".into())),
    };
    if let Some(w) = &args.window {
        s.window = parse_window_arg(w)?;
    }
    s.window.elements(s.ring())?;
    Ok(s)
}

fn describe(s: &Structure, source: &StructureArgs) -> Json {
    json!({
        "source": match (&source.builtin, &source.file) {
            (Some(b), _) => json!({"builtin": b}),
            (None, Some(f)) => json!({"file": f.display().to_string()}),
            _ => Json::Null,
        },
        "ring": s.ring().describe(),
        "relation": s.relation.spec().kind(),
        "window": serde_json::to_value(&s.window).expect("windows serialize"),
    })
}

fn render_checks(out: &mut String, title: &str, checks: &Json) {
    out.push_str(title);
    out.push('\n');
    for c in checks.as_array().into_iter().flatten() {
        let name = c["name"].as_str().unwrap_or("?");
        let status = c["status"].as_str().unwrap_or("?");
        out.push_str(&format!("  {name:<22} {status}"));
        if let Some(w) = c.get("witness").and_then(Json::as_array) {
            let w: Vec<&str> = w.iter().filter_map(Json::as_str).collect();
            out.push_str(&format!("  witness ({})", w.join(", ")));
        }
        out.push('\n');
    }
}

fn render_elems(xs: &Json) -> String {
    let parts: Vec<String> = xs
        .as_array()
        .into_iter()
        .flatten()
        .map(|x| match x {
            Json::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn cmd_check(args: &StructureArgs) -> Outcome {
    let s = match load(args) {
        Ok(s) => s,
        Err(e) => return input_error("check", &e),
    };
    check_structure("check", s, args)
}

fn check_structure(command: &str, s: Structure, args: &StructureArgs) -> Outcome {
    let run = || -> Result<Outcome, Error> {
        let ring = s.ring();
        let axioms = check_axioms(&s.relation, &s.window)?;
        let lemmas = lemma_suite(&s.relation, &s.window)?;
        let support = compute_support(&s.relation, Some(&s.window))?;
        let ok = axioms.all_pass() && lemmas.all_pass();
        let code = if ok { EXIT_OK } else { EXIT_FAIL };
        let mut doc = json!({
            "command": command,
            "structure": describe(&s, args),
            "axioms": axioms.to_json(),
            "lemmas": lemmas.to_json(),
            "support": support.to_json(ring),
            "exit_status": code,
        });
        let mut text = format!(
            "{command}: {} on {} ({} window elements{})\n",
            s.relation.spec().kind(),
            ring,
            axioms.window_size,
            if axioms.exhaustive { ", exhaustive" } else { "" }
        );
        render_checks(&mut text, "axioms", &doc["axioms"]["axioms"]);
        render_checks(&mut text, "lemmas", &doc["lemmas"]);
        text.push_str(&format!("support on window: {}\n", render_elems(&doc["support"])));
        if matches!(s.relation.spec(), QuasiOrderSpec::CounterexampleSec3) {
            let p = prop32_report(&s.window)?;
            doc["counterexample"] = p.to_json(ring);
            let w = &p.witness;
            text.push_str(&format!(
                "cancellation witness: x = {}, y = {}, z = {}: x < y {}, 0 < z {}, xz ~ yz {}\n",
                ring.render(&w.triple[0]),
                ring.render(&w.triple[1]),
                ring.render(&w.triple[2]),
                w.x_below_y,
                w.z_positive,
                w.products_equivalent
            ));
            text.push_str(&format!(
                "0 < -1: {}; reproduced: {}\n",
                p.minus_one_positive,
                p.reproduced()
            ));
        }
        text.push_str(if ok { "result: PASS\n" } else { "result: FAIL\n" });
        Ok(Outcome { doc, text, code })
    };
    run().unwrap_or_else(|e| input_error(command, &e))
}

fn cmd_classify(args: &StructureArgs) -> Outcome {
    let s = match load(args) {
        Ok(s) => s,
        Err(e) => return input_error("classify", &e),
    };
    let ring = s.ring().clone();
    let c = match classify(&s.relation, &s.window) {
        Ok(c) => c,
        Err(Error::RejectedInput(report)) => {
            let doc = json!({
                "command": "classify",
                "structure": describe(&s, args),
                "axioms": report.to_json(),
                "rejected": true,
                "exit_status": EXIT_FAIL,
            });
            let mut text = String::from("classify: rejected, the relation is not a quasi-order\n");
            render_checks(&mut text, "axioms", &doc["axioms"]["axioms"]);
            return Outcome {
                doc,
                text,
                code: EXIT_FAIL,
            };
        }
        Err(e) => return input_error("classify", &e),
    };
    let rt = match roundtrip_check(&s.relation, &c) {
        Ok(rt) => rt,
        Err(e) => return input_error("classify", &e),
    };
    let ok = rt.ok() && c.soundness.all_pass();
    let code = if ok { EXIT_OK } else { EXIT_FAIL };
    let doc = json!({
        "command": "classify",
        "structure": describe(&s, args),
        "classification": c.to_json(),
        "roundtrip": rt.to_json(&ring),
        "exit_status": code,
    });
    let cj = &doc["classification"];
    let mut text = format!("branch: {}\n", c.branch().as_str().to_uppercase());
    text.push_str(&format!("support: {}\n", render_elems(&cj["support"])));
    match &c.structure {
        Witnessing::Ordered { .. } => {
            text.push_str(&format!("order: {}\n", cj["order"]));
            text.push_str(&format!("cone on window: {}\n", render_elems(&cj["cone_window"])));
        }
        Witnessing::Valued { map, .. } => {
            text.push_str(&format!("value group: {}\n", cj["group"]));
            text.push_str(&format!("valuation: {}\n", cj["valuation"]));
            let shown: Vec<String> = map
                .iter()
                .take(24)
                .map(|(x, v)| format!("{}:{}", ring.render(x), v.to_json()))
                .collect();
            let more = if map.len() > 24 { ", ..." } else { "" };
            text.push_str(&format!("w on window: {}{more}\n", shown.join(", ")));
        }
    }
    render_checks(&mut text, "soundness", &cj["soundness"]);
    text.push_str(&format!(
        "round trip: {} ({} pairs{})\n",
        if rt.ok() { "ok" } else { "FAILED" },
        rt.pairs_checked,
        rt.witness
            .as_ref()
            .map(|(x, y)| format!(", differs at ({}, {})", ring.render(x), ring.render(y)))
            .unwrap_or_default()
    ));
    Outcome { doc, text, code }
}

fn parse_ring_arg(s: &str) -> Result<Ring, Error> {
    let n = s
        .strip_prefix("zmod:")
        .and_then(|n| n.parse::<u64>().ok())
        .ok_or_else(|| Error::Parse(format!("expected --ring zmod:<n>, got `{s}`")))?;
    Ring::modular(n)
}

fn cmd_enumerate(args: &EnumerateArgs) -> Outcome {
    let run = || -> Result<Outcome, Error> {
        let ring = parse_ring_arg(&args.ring)?;
        let e = enumerate_quasiorders_with(&ring, args.max_n)?;
        let report = cross_check_dichotomy(&e)?;
        let qos: Vec<Json> = e
            .quasiorders
            .iter()
            .zip(&report.classifications)
            .map(|(q, c)| {
                json!({
                    "matrix": q.matrix(),
                    "support": q.support.iter().map(|x| ring.elem_to_json(x)).collect::<Vec<_>>(),
                    "classification": c.to_json(),
                })
            })
            .collect();
        let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
        let doc = json!({
            "command": "enumerate",
            "ring": ring.describe(),
            "exhaustive": e.exhaustive,
            "codes_scanned": e.codes_scanned,
            "count": e.quasiorders.len(),
            "quasiorders": qos,
            "cross_check": report.to_json(&ring),
            "exit_status": code,
        });
        let mut text = format!("ring: {ring}\n");
        if e.exhaustive {
            text.push_str(&format!("weak orders scanned: {}\n", e.codes_scanned));
        } else {
            text.push_str(&format!(
                "notice: {} elements exceeds --max-n {}; one trivial quasi-order per prime ideal, not exhaustive\n",
                ring.size().unwrap_or(0),
                args.max_n
            ));
        }
        text.push_str(&format!("quasi-orders: {}\n", e.quasiorders.len()));
        for (i, q) in qos.iter().enumerate() {
            text.push_str(&format!(
                "  #{i}: support {}, {}\n",
                render_elems(&q["support"]),
                q["classification"]["branch"].as_str().unwrap_or("?")
            ));
        }
        text.push_str(&format!(
            "prime ideals: {}\n",
            report
                .prime_ideals
                .iter()
                .map(|p| format!("({})", p.generators.iter().map(|g| ring.render(g)).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        text.push_str(&format!(
            "cross-check: {}\n",
            if report.passed() { "ok" } else { "FAILED" }
        ));
        Ok(Outcome { doc, text, code })
    };
    run().unwrap_or_else(|e| input_error("enumerate", &e))
}

/// Fixed comparisons shown by `quotfield`, as `(a, b, c, d)` for
/// `a/b ⊴ c/d`.
const INTEGER_SAMPLES: [(i64, i64, i64, i64); 4] = [(3, 1, 1, 2), (1, 2, 3, 4), (1, 3, 1, 2), (-1, 2, 1, 4)];

fn cmd_quotfield(args: &StructureArgs) -> Outcome {
    let mut s = match load(args) {
        Ok(s) => s,
        Err(e) => return input_error("quotfield", &e),
    };
    if args.window.is_none() {
        if let Window::Interval { lo, hi } = s.window {
            s.window = Window::Interval {
                lo: lo.max(-FRACTION_BOUND),
                hi: hi.min(FRACTION_BOUND),
            };
        }
    }
    let ring = s.ring().clone();
    let ext = match fraction_extension(&s.relation, &s.window) {
        Ok(ext) => ext,
        Err(e @ (Error::Precondition(_) | Error::RejectedInput(_))) => {
            let doc = json!({
                "command": "quotfield",
                "structure": describe(&s, args),
                "error": e.to_string(),
                "exit_status": EXIT_FAIL,
            });
            return Outcome {
                doc,
                text: format!("quotfield: {e}\n"),
                code: EXIT_FAIL,
            };
        }
        Err(e) => return input_error("quotfield", &e),
    };
    let report = ext.check();
    let mut samples = Vec::new();
    if ring == Ring::Integers {
        for (a, b, c, d) in INTEGER_SAMPLES {
            let f = ext.fraction(Elem::int(a), Elem::int(b));
            let g = ext.fraction(Elem::int(c), Elem::int(d));
            if let (Ok(f), Ok(g)) = (f, g) {
                let le = ext.le(&f, &g);
                samples.push(json!({
                    "lhs": ext.render(&f),
                    "rhs": ext.render(&g),
                    "leq": le,
                }));
            }
        }
    }
    let code = if report.all_pass() { EXIT_OK } else { EXIT_FAIL };
    let doc = json!({
        "command": "quotfield",
        "structure": describe(&s, args),
        "fraction_window": ext.window_size(),
        "representatives": ext.representatives().len(),
        "checks": report.to_json(),
        "samples": samples,
        "exit_status": code,
    });
    let mut text = format!(
        "fractions: {} pairs, {} classes\n",
        ext.window_size(),
        ext.representatives().len()
    );
    render_checks(&mut text, "checks", &doc["checks"]);
    for sm in &samples {
        let op = if sm["leq"] == Json::Bool(true) { "⊴" } else { "⋬" };
        text.push_str(&format!(
            "  {} {op} {}\n",
            sm["lhs"].as_str().unwrap_or("?"),
            sm["rhs"].as_str().unwrap_or("?")
        ));
    }
    Outcome { doc, text, code }
}

fn cmd_counterexample(args: &CounterexampleArgs) -> Outcome {
    let sargs = StructureArgs {
        file: None,
        builtin: Some("sec3".into()),
        window: args.window.clone(),
        json: args.json,
    };
    match load(&sargs) {
        Ok(s) => check_structure("counterexample", s, &sargs),
        Err(e) => input_error("counterexample", &e),
    }
}

/// Runs the command line in `argv`, writing the report to `out`, and
/// returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let start = Instant::now();
    let (outcome, as_json) = match &cli.command {
        Command::Check(a) => (cmd_check(a), a.json),
        Command::Classify(a) => (cmd_classify(a), a.json),
        Command::Enumerate(a) => (cmd_enumerate(a), a.json),
        Command::Quotfield(a) => (cmd_quotfield(a), a.json),
        Command::Counterexample(a) => (cmd_counterexample(a), a.json),
    };
    let written = if as_json {
        serde_json::to_string_pretty(&outcome.doc)
            .map_err(std::io::Error::other)
            .and_then(|s| writeln!(out, "{s}"))
    } else if outcome.code == EXIT_INPUT {
        write!(out, "{}", outcome.text)
    } else {
        write!(
            out,
            "{}time: {:.3} s\n",
            outcome.text,
            start.elapsed().as_secs_f64()
        )
    };
    if written.is_err() {
        return EXIT_INPUT;
    }
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("qring").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["check", "--builtin", "z_padic_2"]).0, EXIT_OK);
        assert_eq!(run_capture(&["check", "--builtin", "sec3"]).0, EXIT_FAIL);
        assert_eq!(run_capture(&["check", "--builtin", "nope"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["enumerate", "--ring", "zmod6"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_INPUT);
    }

    #[test]
    fn window_override() {
        let (code, out) = run_capture(&["check", "--builtin", "z_standard", "--window", "5", "--json"]);
        assert_eq!(code, EXIT_OK);
        let doc: Json = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["axioms"]["window_size"], 11);
        let (code, _) = run_capture(&["check", "--builtin", "z_standard", "--window", r#"{"kind":"interval","lo":0,"hi":3}"#]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn quotfield_samples() {
        let (code, out) = run_capture(&["quotfield", "--builtin", "z_padic_2", "--window", "6"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("3/1 ⊴ 1/2"), "{out}");
        let (code, out) = run_capture(&["quotfield", "--builtin", "z_standard", "--window", "6"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("1/2 ⊴ 3/4"), "{out}");
        assert_eq!(run_capture(&["quotfield", "--builtin", "zmod_trivial_12_3"]).0, EXIT_FAIL);
    }
}
