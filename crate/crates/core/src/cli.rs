//! The `spa` command line.
//!
//! Exit codes: 0 success, 1 a mathematical "no" (violation found, not a member,
//! lemma failure), 2 usage or input errors, 3 budget exhaustion.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use crate::algebra::{AlgebraPresentation, Element};
use crate::coeffs::QMode;
use crate::dims::{
    check_elimination_lemma, eliminate_with, gk_dimension, hilbert_truncated, EliminationCertificate,
    EliminationConfig, VariableSubset,
};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_with, ideal_membership, normal_form, GbConfig, GroebnerBasis, Side};
use crate::ordering::{verify_ordering_axioms, AxiomCheckConfig, OrderingSpec};
use crate::quantum::{associated_graded, build_uq_minus, build_uq_plus, tensor_product};
use crate::rewrite::pbw_consistency;
use crate::syntax::{parse_generator_list, parse_polynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "spa", about = "Solvable polynomial algebras and quantum group PBW computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that every commutation rule has a nonzero scalar and a smaller tail.
    CheckSolvable(Common),
    /// Sample the monomial-ordering axioms.
    VerifyOrdering {
        #[command(flatten)]
        common: Common,
        /// Sampled tuples per axiom.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Largest monomial degree sampled.
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Reduced Gröbner basis of an ideal.
    Gb(Common),
    /// Normal form of `--poly` modulo the ideal.
    Nf(Common),
    /// Ideal membership of `--poly`.
    Member(Common),
    /// Gelfand–Kirillov dimension of A/L.
    Gkdim(Common),
    /// Elements of the ideal in the subalgebra spanned by `--keep`.
    Eliminate {
        #[command(flatten)]
        common: Common,
        /// Generators to keep, e.g. `x[1,3],x[2,3]`.
        #[arg(long)]
        keep: Option<String>,
        /// Check every (d+1)-subset instead (d = GK dimension).
        #[arg(long)]
        lemma: bool,
        /// Degree bound for the truncated fallback.
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Resolve all overlap ambiguities of the rewriting system.
    PbwCheck(Common),
    /// Associated graded algebra and its solvability.
    Gr(Common),
    /// Standard monomial counts per degree.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// `uq+ N`, `uq- N`, `A (x) B` or `gr(A)`.
    #[arg(long, default_value = "uq+ 2")]
    algebra: String,
    /// `symbolic` or a rational value such as `2` or `3/2`.
    #[arg(long, default_value = "symbolic")]
    q: String,
    /// rankword, lexword, graded, deglex, tensor, or elim:<generators>.
    #[arg(long)]
    ordering: Option<String>,
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    side: SideArg,
    /// Ideal file: one polynomial per line, `#` starts a comment.
    #[arg(long)]
    gens: Option<PathBuf>,
    /// A polynomial; for gb/gkdim/hilbert/eliminate it is added to the ideal,
    /// for nf/member it is the element tested.
    #[arg(long)]
    poly: Vec<String>,
    /// Step budget (defaults to $SPA_BUDGET, then the built-in default).
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `spa` with `argv` (including the program name).
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CommandOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(cli.command) {
        Ok((code, stdout)) => CommandOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => CommandOutput {
            code: if e.is_budget() { EXIT_BUDGET } else { EXIT_USAGE },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Entry point for the binary.
pub fn main_entry() -> i32 {
    let out = run_command(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

/// Parses an algebra specifier.
pub fn parse_algebra(spec: &str, qmode: QMode) -> Result<AlgebraPresentation> {
    let s = spec.trim();
    if let Some(idx) = s.find("(x)") {
        let a = parse_algebra(&s[..idx], qmode.clone())?;
        let b = parse_algebra(&s[idx + 3..], qmode)?;
        return tensor_product(&a, &b);
    }
    if let Some(inner) = s.strip_prefix("gr(").and_then(|r| r.strip_suffix(')')) {
        return associated_graded(&parse_algebra(inner, qmode)?);
    }
    let (kind, rank) = s
        .split_once(char::is_whitespace)
        .ok_or_else(|| Error::Usage(format!("cannot parse algebra `{spec}`")))?;
    let rank: u32 = rank
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("bad rank in `{spec}`")))?;
    match kind {
        "uq+" => build_uq_plus(rank, qmode),
        "uq-" => build_uq_minus(rank, qmode),
        _ => Err(Error::Usage(format!("unknown algebra `{kind}`"))),
    }
}

pub fn parse_qmode(text: &str) -> Result<QMode> {
    let t = text.trim();
    if t == "symbolic" {
        return Ok(QMode::Symbolic);
    }
    let v: BigRational = t
        .parse()
        .map_err(|_| Error::Usage(format!("`{t}` is neither `symbolic` nor a rational number")))?;
    Ok(QMode::specialized(v)?)
}

/// Parses an ordering name against an algebra.
pub fn parse_ordering(text: &str, a: &AlgebraPresentation) -> Result<OrderingSpec> {
    let t = text.trim();
    Ok(match t {
        "rankword" => OrderingSpec::RankedWord,
        "lexword" => OrderingSpec::IndexLexWord,
        "graded" => OrderingSpec::GradedRankedWord,
        "deglex" => OrderingSpec::DegLex,
        "tensor" => match a.ordering() {
            o @ OrderingSpec::Tensor(..) => o.clone(),
            _ => return Err(Error::Usage("`tensor` needs a tensor product algebra".into())),
        },
        _ => match t.strip_prefix("elim:") {
            Some(vars) => OrderingSpec::elimination(parse_generator_list(vars, a)?, OrderingSpec::DegLex),
            None => return Err(Error::Usage(format!("unknown ordering `{t}`"))),
        },
    })
}

/// Polynomials in an ideal file.
pub fn parse_ideal_file(text: &str, a: &AlgebraPresentation) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            out.push(parse_polynomial(body, a)?);
        }
    }
    Ok(out)
}

struct Session {
    algebra: AlgebraPresentation,
    side: Side,
    budget: u64,
    format: Format,
}

fn budget_from(common: &Common) -> Result<u64> {
    if let Some(b) = common.budget {
        return Ok(b);
    }
    match std::env::var("SPA_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("SPA_BUDGET=`{v}` is not an integer"))),
        Err(_) => Ok(crate::groebner::DEFAULT_GB_BUDGET),
    }
}

fn session(common: &Common, default_ordering: Option<&str>) -> Result<Session> {
    let qmode = parse_qmode(&common.q)?;
    let budget = budget_from(common)?;
    let base = parse_algebra(&common.algebra, qmode)?.with_step_budget(budget);
    let algebra = match common.ordering.as_deref().or(default_ordering) {
        Some(o) => {
            let spec = parse_ordering(o, &base)?;
            base.with_ordering(spec)?
        }
        None => base,
    };
    Ok(Session {
        algebra,
        side: match common.side {
            SideArg::Left => Side::Left,
            SideArg::Two => Side::TwoSided,
        },
        budget,
        format: common.format,
    })
}

fn ideal(common: &Common, s: &Session, include_poly: bool) -> Result<Vec<Element>> {
    let mut gens = match &common.gens {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", p.display())))?;
            parse_ideal_file(&text, &s.algebra)?
        }
        None => Vec::new(),
    };
    if include_poly {
        for p in &common.poly {
            gens.push(parse_polynomial(p, &s.algebra)?);
        }
    }
    Ok(gens)
}

fn groebner(s: &Session, gens: &[Element]) -> Result<GroebnerBasis> {
    buchberger_with(&s.algebra, gens, s.side, &GbConfig { budget: s.budget })
}

fn single_poly(common: &Common, s: &Session) -> Result<Element> {
    match common.poly.as_slice() {
        [p] => parse_polynomial(p, &s.algebra),
        _ => Err(Error::Usage("exactly one --poly is required".into())),
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::TwoSided => "two",
    }
}

fn header(s: &Session) -> String {
    format!(
        "# algebra={} ordering={} side={} q={}",
        s.algebra.name(),
        s.algebra.ordering(),
        side_name(s.side),
        s.algebra.qmode()
    )
}

fn execute(cmd: Command) -> Result<(i32, String)> {
    let mut out = String::new();
    let code = match cmd {
        Command::CheckSolvable(c) => {
            let s = session(&c, None)?;
            let r = s.algebra.check_solvable();
            if s.format == Format::Json {
                writeln!(out, "{}", serde_json::to_string(&r).unwrap()).unwrap();
            } else {
                writeln!(out, "algebra: {}", r.algebra).unwrap();
                writeln!(out, "ordering: {}", r.ordering).unwrap();
                writeln!(out, "pairs checked: {}", r.pairs_checked).unwrap();
                for v in &r.violations {
                    writeln!(out, "violation: {} {} {:?}", v.left, v.right, v.issue).unwrap();
                }
                for n in &r.notes {
                    writeln!(out, "note: {n}").unwrap();
                }
                writeln!(out, "solvable: {}", if r.is_solvable() { "yes" } else { "no" }).unwrap();
            }
            if r.is_solvable() {
                EXIT_OK
            } else {
                EXIT_FALSE
            }
        }
        Command::VerifyOrdering {
            common,
            samples,
            max_degree,
            seed,
        } => {
            let s = session(&common, None)?;
            let cfg = AxiomCheckConfig {
                sample_budget: samples,
                max_degree,
                seed,
                ..AxiomCheckConfig::default()
            };
            let r = verify_ordering_axioms(&s.algebra, s.algebra.ordering(), &cfg)?;
            if s.format == Format::Json {
                writeln!(out, "{}", serde_json::to_string(&r).unwrap()).unwrap();
            } else {
                writeln!(out, "ordering: {}", s.algebra.ordering()).unwrap();
                writeln!(out, "violations: {}", r.violation_count).unwrap();
                for v in &r.violations {
                    writeln!(out, "  {:?}: {}", v.kind, v.witness).unwrap();
                }
                for w in &r.warnings {
                    writeln!(out, "warning: {w}").unwrap();
                }
                writeln!(out, "axioms hold: {}", if r.passed() { "yes" } else { "no" }).unwrap();
            }
            if r.passed() {
                EXIT_OK
            } else {
                EXIT_FALSE
            }
        }
        Command::Gb(c) => {
            let s = session(&c, Some("deglex"))?;
            let gb = groebner(&s, &ideal(&c, &s, true)?)?;
            let lines: Vec<String> = gb.elements.iter().map(|g| s.algebra.format_element(g)).collect();
            if s.format == Format::Json {
                let v = json!({
                    "algebra": s.algebra.name(),
                    "ordering": s.algebra.ordering().to_string(),
                    "side": side_name(s.side),
                    "q": s.algebra.qmode().to_string(),
                    "basis": lines,
                });
                writeln!(out, "{v}").unwrap();
            } else {
                writeln!(out, "{}", header(&s)).unwrap();
                for l in lines {
                    writeln!(out, "{l}").unwrap();
                }
            }
            EXIT_OK
        }
        Command::Nf(c) | Command::Member(c) if c.poly.len() != 1 => {
            return Err(Error::Usage("exactly one --poly is required".into()));
        }
        Command::Nf(c) => {
            let s = session(&c, Some("deglex"))?;
            let f = single_poly(&c, &s)?;
            let gb = groebner(&s, &ideal(&c, &s, false)?)?;
            let r = normal_form(&s.algebra, &f, &gb.elements)?;
            let text = s.algebra.format_element(&r);
            if s.format == Format::Json {
                writeln!(out, "{}", json!({ "normal_form": text })).unwrap();
            } else {
                writeln!(out, "{text}").unwrap();
            }
            EXIT_OK
        }
        Command::Member(c) => {
            let s = session(&c, Some("deglex"))?;
            let f = single_poly(&c, &s)?;
            let gb = groebner(&s, &ideal(&c, &s, false)?)?;
            let yes = ideal_membership(&s.algebra, &f, &gb)?;
            if s.format == Format::Json {
                writeln!(out, "{}", json!({ "member": yes })).unwrap();
            } else {
                writeln!(out, "member: {}", if yes { "yes" } else { "no" }).unwrap();
            }
            if yes {
                EXIT_OK
            } else {
                EXIT_FALSE
            }
        }
        Command::Gkdim(c) => {
            let s = session(&c, Some("deglex"))?;
            let gb = groebner(&s, &ideal(&c, &s, true)?)?;
            let d = gk_dimension(&s.algebra, &gb)?;
            if s.format == Format::Json {
                writeln!(out, "{}", json!({ "gkdim": d })).unwrap();
            } else {
                writeln!(out, "{d}").unwrap();
            }
            EXIT_OK
        }
        Command::Hilbert { common, dmax } => {
            let s = session(&common, Some("deglex"))?;
            let gb = groebner(&s, &ideal(&common, &s, true)?)?;
            let h = hilbert_truncated(&s.algebra, &gb, dmax)?;
            if s.format == Format::Json {
                writeln!(out, "{}", json!({ "hilbert": h })).unwrap();
            } else {
                let v: Vec<String> = h.iter().map(|x| x.to_string()).collect();
                writeln!(out, "[{}]", v.join(", ")).unwrap();
            }
            EXIT_OK
        }
        Command::Eliminate {
            common,
            keep,
            lemma,
            max_degree,
        } => {
            let s = session(&common, Some("deglex"))?;
            let mut gens = ideal(&common, &s, true)?;
            if s.side == Side::TwoSided {
                // The left ideal spanned by a two-sided basis is the two-sided ideal.
                gens = groebner(&s, &gens)?.elements;
            }
            if lemma {
                let gb = groebner(&s, &gens)?;
                let r = check_elimination_lemma(&s.algebra, &gb)?;
                if s.format == Format::Json {
                    for o in &r.outcomes {
                        writeln!(out, "{}", serde_json::to_string(o).unwrap()).unwrap();
                    }
                    writeln!(
                        out,
                        "{}",
                        json!({ "gkdim": r.gk_dimension, "subsets": r.subsets_checked, "failures": r.failures })
                    )
                    .unwrap();
                } else {
                    writeln!(out, "gkdim: {}", r.gk_dimension).unwrap();
                    for o in &r.outcomes {
                        writeln!(out, "{{{}}}: {} element(s)", o.subset.join(", "), o.found).unwrap();
                    }
                    writeln!(out, "lemma holds: {}", if r.passed() { "yes" } else { "no" }).unwrap();
                }
                if r.passed() {
                    EXIT_OK
                } else {
                    EXIT_FALSE
                }
            } else {
                let keep = keep.ok_or_else(|| Error::Usage("--keep or --lemma is required".into()))?;
                let u = VariableSubset::new(&s.algebra, parse_generator_list(&keep, &s.algebra)?)?;
                let r = eliminate_with(&s.algebra, &gens, &u, &EliminationConfig { max_degree })?;
                let ae = s.algebra.with_ordering(r.ordering.clone())?;
                let lines: Vec<String> = r.elements.iter().map(|g| ae.format_element(g)).collect();
                let cert = match r.certificate {
                    EliminationCertificate::Exact => "exact".to_string(),
                    EliminationCertificate::Truncated { degree } => format!("truncated at degree {degree}"),
                };
                if s.format == Format::Json {
                    writeln!(out, "{}", json!({ "keep": u.names(&s.algebra), "elements": lines, "certificate": r.certificate })).unwrap();
                } else {
                    writeln!(out, "# keep={} certificate={cert}", u.names(&s.algebra).join(",")).unwrap();
                    for l in lines {
                        writeln!(out, "{l}").unwrap();
                    }
                }
                EXIT_OK
            }
        }
        Command::PbwCheck(c) => {
            let s = session(&c, None)?;
            let r = pbw_consistency(&s.algebra)?;
            if s.format == Format::Json {
                writeln!(out, "{}", serde_json::to_string(&r).unwrap()).unwrap();
            } else {
                writeln!(out, "triples checked: {}", r.triples_checked).unwrap();
                for f in &r.failures {
                    writeln!(out, "ambiguity {}: {}", f.triple.join(" "), f.difference).unwrap();
                }
                writeln!(out, "consistent: {}", if r.passed() { "yes" } else { "no" }).unwrap();
            }
            if r.passed() {
                EXIT_OK
            } else {
                EXIT_FALSE
            }
        }
        Command::Gr(c) => {
            let s = session(&c, None)?;
            let g = associated_graded(&s.algebra)?;
            let r = g.check_solvable();
            let rules: Vec<String> = g
                .rules()
                .map(|rule| {
                    let gens = g.generators();
                    let swapped = crate::algebra::Monomial::var(g.num_generators(), rule.right)
                        .mul(&crate::algebra::Monomial::var(g.num_generators(), rule.left));
                    let rhs = Element::term(rule.lambda.clone(), swapped).add(&rule.tail);
                    format!("{}*{} = {}", gens[rule.left].name, gens[rule.right].name, g.format_element(&rhs))
                })
                .collect();
            if s.format == Format::Json {
                writeln!(out, "{}", json!({ "algebra": g.name(), "relations": rules, "solvable": r.is_solvable() })).unwrap();
            } else {
                writeln!(out, "# algebra={} ordering={}", g.name(), g.ordering()).unwrap();
                for l in rules {
                    writeln!(out, "{l}").unwrap();
                }
                writeln!(out, "solvable: {}", if r.is_solvable() { "yes" } else { "no" }).unwrap();
            }
            if r.is_solvable() {
                EXIT_OK
            } else {
                EXIT_FALSE
            }
        }
    };
    Ok((code, out))
}
