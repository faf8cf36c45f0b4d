//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check, relation, or algebraic
//! requirement fails, 2 for usage, I/O, parse and shape errors. Every
//! diagnostic is a single line naming its input and a position.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::Error;
use crate::eval::{Interpretation, RelationReport};
use crate::examples::{
    group_algebra, matrix_center_algebra, milnor_ring, s3_table, upper_triangular_algebra,
    zn_table, FiniteGroupTable,
};
use crate::frobenius::{admits_frobenius_form, FrobeniusAlgebra, UnitalAlgebra};
use crate::fusion::{fibonacci, grothendieck_frobenius, ising, vec_zn, FusionRing};
use crate::io;
use crate::scalar::{format_q, Q};
use crate::term::{parse_term, typecheck, Signature, Term};
use crate::tqft1::{bord1_signature, dual_pair_interpretation, raw_interpretation, DualPair};
use crate::tqft2::{
    bord2_signature, frobenius_interpretation, frobenius_interpretation_unchecked,
    reduce_along_circle, surface_invariant,
};

#[derive(Parser, Debug)]
#[command(
    name = "tqft",
    version,
    about = "Evaluate bordism terms exactly under algebraic interpretations"
)]
struct Cli {
    /// Machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the six Frobenius-algebra axioms.
    Check {
        #[arg(long)]
        algebra: String,
    },
    /// Evaluate a term and print its matrix.
    Eval {
        #[arg(long, default_value = "bord2")]
        sig: String,
        #[command(flatten)]
        source: InterpSource,
        /// DSL text or a file containing it.
        #[arg(long)]
        term: String,
    },
    /// Closed genus-g surface invariant.
    Invariant {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        genus: usize,
    },
    /// Check every relation of a signature under an interpretation.
    Relations {
        #[arg(long, default_value = "bord2")]
        sig: String,
        #[command(flatten)]
        source: InterpSource,
    },
    /// Reduce a 2d theory along a circle to a dual pair.
    Reduce {
        #[arg(long)]
        algebra: String,
    },
    /// Fusion-ring validation, Hom dimensions and reduced invariants.
    Fusion {
        /// JSON file or a built-in: fibonacci, ising, vec_z:<n>.
        ring: String,
        /// Comma-separated labels.
        #[arg(long, conflicts_with = "genus")]
        word: Option<String>,
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Compare direct evaluation with the bend/reconstruct round trip.
    Recon {
        #[arg(long, default_value = "bord2")]
        sig: String,
        #[command(flatten)]
        source: InterpSource,
        #[arg(long)]
        term: String,
    },
}

#[derive(clap::Args, Debug)]
struct InterpSource {
    /// Algebra file or built-in name (bord2).
    #[arg(long)]
    algebra: Option<String>,
    /// Dual-pair file or `std:<n>` (bord1).
    #[arg(long)]
    pair: Option<String>,
    /// Interpretation file (any signature).
    #[arg(long)]
    interp: Option<String>,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    /// `origin` names the input the error came from.
    fn from_error(origin: &str, e: &Error) -> Self {
        Self {
            code: exit_code(e),
            message: format!("{origin}: {e}"),
        }
    }
}

/// 1 for mathematical failures of otherwise well-formed input, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ZorroViolation(_)
        | Error::NotAssociative(_)
        | Error::NotUnital(_)
        | Error::PairingDegenerate { .. }
        | Error::PairingNotInvariant(_)
        | Error::NotCommutative
        | Error::AxiomViolated { .. }
        | Error::NotAFrobeniusMorphism { .. }
        | Error::NotADualPairMorphism
        | Error::InvalidGroup(_)
        | Error::InvalidFusionRing(_)
        | Error::NotCommutativeRing(_)
        | Error::Singular => 1,
        _ => 2,
    }
}

type Step<T> = std::result::Result<T, Failure>;

/// Run with `argv[0]` as the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                let first = text.lines().next().unwrap_or("usage error").to_owned();
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("{first}\n"),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(cli: &Cli) -> Step<(i32, String)> {
    match &cli.command {
        Command::Check { algebra } => cmd_check(algebra, cli.json),
        Command::Eval { sig, source, term } => cmd_eval(sig, source, term),
        Command::Invariant { algebra, genus } => cmd_invariant(algebra, *genus, cli.json),
        Command::Relations { sig, source } => cmd_relations(sig, source, cli.json),
        Command::Reduce { algebra } => cmd_reduce(algebra),
        Command::Fusion { ring, word, genus } => {
            cmd_fusion(ring, word.as_deref(), *genus, cli.json)
        }
        Command::Recon { sig, source, term } => cmd_recon(sig, source, term, cli.json),
    }
}

fn line(out: &mut String, text: impl std::fmt::Display) {
    writeln!(out, "{text}").expect("writing to a String");
}

fn json_out(v: &Value) -> String {
    format!("{}\n", io::to_text(v))
}

// ---- input loading ----

fn read_file(path: &str) -> Step<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn load_json(path: &str) -> Step<Value> {
    let text = read_file(path)?;
    io::parse_json(&text).map_err(|e| Failure::from_error(path, &e))
}

enum LoadedAlgebra {
    Frobenius(FrobeniusAlgebra<Q>),
    Plain(UnitalAlgebra<Q>),
}

fn group_spec(spec: &str) -> Option<FiniteGroupTable> {
    let mut tables = spec.split('x').map(|part| match part {
        "s3" => Some(s3_table()),
        _ => part
            .strip_prefix('z')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .map(zn_table),
    });
    let first = tables.next()??;
    tables.try_fold(first, |acc, t| Some(acc.product(&t?)))
}

fn parse_blocks(list: &str) -> Option<Vec<usize>> {
    list.strip_prefix('[')?
        .strip_suffix(']')?
        .split(',')
        .map(|s| s.trim().parse().ok())
        .collect()
}

fn builtin_ring(name: &str) -> Option<FusionRing> {
    match name {
        "fib" | "fibonacci" => Some(fibonacci()),
        "ising" => Some(ising()),
        _ => name
            .strip_prefix("vec_z:")
            .and_then(|n| n.parse().ok())
            .filter(|&n: &usize| n > 0)
            .map(vec_zn),
    }
}

/// Built-ins: `trivial`, `z<n>`, `s3`, products such as `z2xz2`,
/// `milnor:<d>`, `center:[n1,...]`, `triangular`, `gr:<ring>`; anything
/// else is read as a file.
fn load_algebra(spec: &str) -> Step<LoadedAlgebra> {
    let built = |r: crate::error::Result<FrobeniusAlgebra<Q>>| {
        r.map(LoadedAlgebra::Frobenius)
            .map_err(|e| Failure::from_error(spec, &e))
    };
    if spec == "triangular" {
        return Ok(LoadedAlgebra::Plain(upper_triangular_algebra()));
    }
    if spec == "trivial" {
        return built(group_algebra(&zn_table(1)));
    }
    if let Some(g) = group_spec(spec) {
        return built(group_algebra(&g));
    }
    if let Some(d) = spec.strip_prefix("milnor:") {
        let d = d
            .parse::<usize>()
            .map_err(|_| Failure::usage(format!("{spec}: degree must be an integer")))?;
        return built(milnor_ring(d));
    }
    if let Some(list) = spec.strip_prefix("center:") {
        let blocks = parse_blocks(list)
            .ok_or_else(|| Failure::usage(format!("{spec}: expected center:[n1,n2,...]")))?;
        return built(matrix_center_algebra(&blocks));
    }
    if let Some(ring) = spec.strip_prefix("gr:") {
        let ring = load_ring(ring)?;
        return built(grothendieck_frobenius(&ring));
    }
    let v = load_json(spec)?;
    io::algebra_from_json(&v)
        .map(LoadedAlgebra::Frobenius)
        .map_err(|e| Failure::from_error(spec, &e))
}

fn load_frobenius(spec: &str) -> Step<FrobeniusAlgebra<Q>> {
    match load_algebra(spec)? {
        LoadedAlgebra::Frobenius(f) => Ok(f),
        LoadedAlgebra::Plain(_) => Err(Failure {
            code: 1,
            message: format!("{spec}: algebra admits no Frobenius form"),
        }),
    }
}

fn load_ring(spec: &str) -> Step<FusionRing> {
    if let Some(r) = builtin_ring(spec) {
        return Ok(r);
    }
    let v = load_json(spec)?;
    io::fusion_ring_from_json(&v).map_err(|e| Failure::from_error(spec, &e))
}

fn load_signature(spec: &str) -> Step<Signature> {
    match spec {
        "bord1" => Ok(bord1_signature()),
        "bord2" => Ok(bord2_signature()),
        path => {
            let v = load_json(path)?;
            io::signature_from_json(&v).map_err(|e| Failure::from_error(path, &e))
        }
    }
}

fn load_pair(spec: &str, checked: bool) -> Step<DualPair<Q>> {
    if let Some(n) = spec.strip_prefix("std:") {
        return match n.parse::<usize>() {
            Ok(n) if n > 0 => Ok(DualPair::standard(n)),
            _ => Err(Failure::usage(format!(
                "{spec}: expected std:<positive integer>"
            ))),
        };
    }
    let v = load_json(spec)?;
    io::dual_pair_from_json(&v, checked).map_err(|e| Failure::from_error(spec, &e))
}

/// `checked` selects the axiom-checking constructors; unchecked
/// interpretations are used to report which relations fail.
fn load_interpretation(
    sig_spec: &str,
    src: &InterpSource,
    checked: bool,
) -> Step<Interpretation<Q>> {
    let sig = load_signature(sig_spec)?;
    if let Some(path) = &src.interp {
        let v = load_json(path)?;
        return io::interpretation_from_json(&v, sig).map_err(|e| Failure::from_error(path, &e));
    }
    match sig_spec {
        "bord2" => {
            let spec = src
                .algebra
                .as_deref()
                .ok_or_else(|| Failure::usage("--sig bord2 needs --algebra or --interp"))?;
            let f = load_frobenius(spec)?;
            if checked {
                frobenius_interpretation(&f).map_err(|e| Failure::from_error(spec, &e))
            } else {
                Ok(frobenius_interpretation_unchecked(&f))
            }
        }
        "bord1" => {
            let spec = src
                .pair
                .as_deref()
                .ok_or_else(|| Failure::usage("--sig bord1 needs --pair or --interp"))?;
            let p = load_pair(spec, false)?;
            if checked {
                dual_pair_interpretation(&p).map_err(|e| Failure::from_error(spec, &e))
            } else {
                Ok(raw_interpretation(&p))
            }
        }
        _ => Err(Failure::usage(format!(
            "{sig_spec}: a signature file needs --interp"
        ))),
    }
}

fn byte_to_line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, col)
}

/// Read `--term` from a file if one exists at that path, else use it inline.
fn load_term(arg: &str, sig: &Signature) -> Step<Term> {
    let (origin, text) = if Path::new(arg).is_file() {
        (arg.to_owned(), read_file(arg)?)
    } else {
        ("<term>".to_owned(), arg.to_owned())
    };
    parse_term(&text, sig).map_err(|e| {
        let origin = match &e {
            Error::Lex { offset, .. } | Error::Parse { offset, .. } => {
                let (l, c) = byte_to_line_col(&text, *offset);
                format!("{origin}:{l}:{c}")
            }
            _ => origin,
        };
        Failure::from_error(&origin, &e)
    })
}

// ---- commands ----

fn cmd_check(spec: &str, json: bool) -> Step<(i32, String)> {
    let mut out = String::new();
    match load_algebra(spec)? {
        LoadedAlgebra::Frobenius(f) => {
            let r = f.check_axioms();
            if json {
                out = json_out(&io::axiom_report_to_json(&r));
            } else {
                for (name, ok) in r.entries() {
                    line(&mut out, format!("{name}: {ok}"));
                }
            }
            Ok((if r.is_frobenius() { 0 } else { 1 }, out))
        }
        LoadedAlgebra::Plain(a) => {
            let assoc = a.associativity_witness().is_none();
            let unit = a.unit_witness().is_none();
            let form = admits_frobenius_form(a.dim, &a.mu, &a.eta);
            if json {
                out = json_out(&json!({"assoc": assoc, "unit": unit, "frobenius_form": form}));
            } else {
                line(&mut out, format!("assoc: {assoc}"));
                line(&mut out, format!("unit: {unit}"));
                line(&mut out, format!("frobenius_form: {form}"));
            }
            Ok((if assoc && unit && form { 0 } else { 1 }, out))
        }
    }
}

fn cmd_eval(sig: &str, src: &InterpSource, term: &str) -> Step<(i32, String)> {
    let z = load_interpretation(sig, src, true)?;
    let t = load_term(term, z.signature())?;
    let m = z.eval(&t).map_err(|e| Failure::from_error(term, &e))?;
    Ok((0, json_out(&io::matrix_to_json(&m))))
}

fn cmd_invariant(spec: &str, genus: usize, json: bool) -> Step<(i32, String)> {
    let f = load_frobenius(spec)?;
    let v = surface_invariant(&f, genus).map_err(|e| Failure::from_error(spec, &e))?;
    Ok((0, scalar_report(genus, &v, json)))
}

fn scalar_report(genus: usize, v: &Q, json: bool) -> String {
    if json {
        json_out(&json!({"genus": genus, "value": format_q(v)}))
    } else {
        format!("{}\n", format_q(v))
    }
}

fn relation_text(r: &RelationReport<Q>) -> String {
    let mut out = String::new();
    for o in &r.outcomes {
        match &o.mismatch {
            None => line(&mut out, format!("{}: pass", o.name)),
            Some(m) => line(
                &mut out,
                format!(
                    "{}: FAIL at ({},{}): {} vs {}",
                    o.name,
                    m.row,
                    m.col,
                    format_q(&m.lhs),
                    format_q(&m.rhs)
                ),
            ),
        }
    }
    let passed = r.outcomes.iter().filter(|o| o.passed()).count();
    line(
        &mut out,
        format!("{passed}/{} relations hold", r.outcomes.len()),
    );
    out
}

fn cmd_relations(sig: &str, src: &InterpSource, json: bool) -> Step<(i32, String)> {
    let z = load_interpretation(sig, src, false)?;
    let r = z.check_relations();
    let out = if json {
        json_out(&io::relation_report_to_json(&r))
    } else {
        relation_text(&r)
    };
    Ok((if r.all_pass() { 0 } else { 1 }, out))
}

fn cmd_reduce(spec: &str) -> Step<(i32, String)> {
    let f = load_frobenius(spec)?;
    let p = reduce_along_circle(&f).map_err(|e| Failure::from_error(spec, &e))?;
    Ok((0, json_out(&io::dual_pair_to_json(&p))))
}

fn cmd_fusion(
    spec: &str,
    word: Option<&str>,
    genus: Option<usize>,
    json: bool,
) -> Step<(i32, String)> {
    let ring = load_ring(spec)?;
    if let Some(word) = word {
        let labels: Vec<&str> = if word.trim().is_empty() {
            Vec::new()
        } else {
            word.split(',').collect()
        };
        let w = ring
            .word(&labels)
            .map_err(|e| Failure::from_error("--word", &e))?;
        let n = ring
            .hom_dimension(&w)
            .map_err(|e| Failure::from_error("--word", &e))?;
        let out = if json {
            json_out(&json!({"word": labels, "hom_dimension": n}))
        } else {
            format!("{n}\n")
        };
        return Ok((0, out));
    }
    if let Some(g) = genus {
        let f: FrobeniusAlgebra<Q> =
            grothendieck_frobenius(&ring).map_err(|e| Failure::from_error(spec, &e))?;
        let v = surface_invariant(&f, g).map_err(|e| Failure::from_error(spec, &e))?;
        return Ok((0, scalar_report(g, &v, json)));
    }
    let report = ring.validate();
    let out = if json {
        json_out(&json!({
            "valid": report.is_valid(),
            "failures": report.failures.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }))
    } else if report.is_valid() {
        "valid fusion ring\n".to_owned()
    } else {
        let mut out = String::new();
        for f in &report.failures {
            line(&mut out, f);
        }
        out
    };
    Ok((if report.is_valid() { 0 } else { 1 }, out))
}

fn cmd_recon(sig: &str, src: &InterpSource, term: &str, json: bool) -> Step<(i32, String)> {
    let z = load_interpretation(sig, src, true)?;
    let t = load_term(term, z.signature())?;
    let fail = |e: Error| Failure::from_error(term, &e);
    let direct = z.eval(&t).map_err(fail)?;
    let (source, target) = typecheck(&t, z.signature()).map_err(fail)?;
    let state = z.bend_state(&t).map_err(fail)?;
    let rebuilt = z.reconstruct_map(&state, &source, &target).map_err(fail)?;
    let agree = direct == rebuilt;
    let out = if json {
        json_out(&json!({
            "direct": io::matrix_to_json(&direct),
            "reconstructed": io::matrix_to_json(&rebuilt),
            "agree": agree,
        }))
    } else {
        let mut out = String::new();
        line(
            &mut out,
            format!("direct: {}", io::to_text(&io::matrix_to_json(&direct))),
        );
        line(
            &mut out,
            format!(
                "reconstructed: {}",
                io::to_text(&io::matrix_to_json(&rebuilt))
            ),
        );
        line(&mut out, format!("agree: {agree}"));
        out
    };
    Ok((if agree { 0 } else { 1 }, out))
}
