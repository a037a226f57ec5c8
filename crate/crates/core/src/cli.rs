//! The `asmposet` command line.
//!
//! Exit codes: 0 on success, 1 when the input or a check fails, 2 on usage
//! errors. Streams are written item by item in the canonical sequential order.

use std::ffi::OsString;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::asm::{
    enumerate_asms_backtrack, enumerate_asms_exhaustive, parse_asm, serialize_asm, Asm,
    MAX_BACKTRACK_ORDER, MAX_EXHAUSTIVE_ORDER,
};
use crate::chain::{
    asm_to_chain, chain_to_asm, enumerate_maximal_chains, enumerate_maximal_chains_unguarded,
    parse_chain, Chain, DEFAULT_ENUMERATION_LIMIT,
};
use crate::poset::{count_maximal_chains, hasse_edges, MAX_POSET_ORDER};
use crate::seq::{enumerate_alternating, Vertex, MAX_ENUMERATION_LEN};
use crate::symmetry::{
    find_broken_edge, format_cycle, format_orbits, group_order, orbits_to_json, theta_cycles,
    vertex_orbits, VertexPermutation, VertexStyle,
};
use crate::verify::{Verifier, MAX_VERIFY_N};
use crate::Parallelism;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const MAX_HASSE_EXPORT: usize = 14;
const MAX_SYM_N: usize = 12;
const MAX_SYM_CHECK_N: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "asmposet",
    version,
    about = "Maximal chains of a graded poset on binary words, alternating sign matrices, and dihedral symmetries"
)]
struct Cli {
    /// Output format; accepted values depend on the subcommand
    #[arg(long, global = true)]
    format: Option<String>,
    /// Lift the default size guard on enumerations
    #[arg(long, global = true)]
    force: bool,
    /// Suppress informational output on stderr and verify's per-check table
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the alternating sequences of length n (formats: compact, numeric, json)
    AltList { n: usize },
    /// Count or enumerate maximal chains
    Chains {
        #[command(subcommand)]
        action: ChainsAction,
    },
    /// Validate, enumerate or convert alternating sign matrices
    Asm {
        #[command(subcommand)]
        action: AsmAction,
    },
    /// Convert a maximal chain (JSON or bitstrings) to its matrix (formats: text, json)
    ChainToAsm {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Export the Hasse diagram (formats: edgelist, dot, json)
    #[command(alias = "hasse-export")]
    Hasse { n: usize },
    /// Symmetry reports
    Sym {
        #[command(subcommand)]
        action: SymAction,
    },
    /// Run the invariant suite for sizes up to n_max
    Verify {
        #[arg(default_value_t = 6)]
        n_max: usize,
        /// Replace the alternating-sequence predicate with a faulty one
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ChainsAction {
    /// Print the number of maximal chains
    Count { n: usize },
    /// Stream maximal chains in depth-first order (formats: json, text)
    Enumerate { n: usize },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Chains,
    Backtrack,
    Exhaustive,
}

#[derive(Debug, Subcommand)]
enum AsmAction {
    /// Check that a matrix is an alternating sign matrix
    Validate {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Stream all matrices of order n (formats: json, text)
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Chains)]
        method: Method,
    },
    /// Print the maximal chain of a matrix (formats: json, text)
    ToChain {
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Debug, Subcommand)]
enum SymAction {
    /// Print every theta-cycle as `v1 -> v2 -> ... -> v1` (formats: bits, tuple)
    ThetaCycles { n: usize },
    /// Print the orbit partition under the chosen generators (formats: text, json)
    Orbits {
        n: usize,
        /// Comma-separated generators from {theta, tau}
        #[arg(long = "gen", default_value = "theta")]
        generators: String,
    },
    /// Check that theta and tau are Hasse diagram automorphisms and report the realized group order
    Check { n: usize },
}

enum CliError {
    Usage(String),
    Failure(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<(), CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn check_n(n: usize, max: usize, what: &str) -> Result<(), CliError> {
    if n == 0 || n > max {
        usage(format!("{what}: n must be in 1..={max}, got {n}"))
    } else {
        Ok(())
    }
}

fn pick_format(given: &Option<String>, allowed: &[&'static str]) -> Result<&'static str, CliError> {
    match given.as_deref() {
        None => Ok(allowed[0]),
        Some(f) => match allowed.iter().find(|&&a| a == f) {
            Some(a) => Ok(a),
            None => usage(format!(
                "unsupported --format {f:?}; expected one of {}",
                allowed.join(", ")
            )),
        },
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: Option<String>,
    force: bool,
    quiet: bool,
}

impl Ctx<'_> {
    fn read_input(&mut self, input: &str) -> Result<String, CliError> {
        if input == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            std::fs::read_to_string(input)
                .map_err(|e| CliError::Failure(format!("cannot read {input}: {e}")))
        }
    }

    fn info(&mut self, msg: &str) -> io::Result<()> {
        if self.quiet {
            Ok(())
        } else {
            writeln!(self.err, "{msg}")
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        stdin,
        out,
        err,
        format: cli.format.clone(),
        force: cli.force,
        quiet: cli.quiet,
    };
    let result = dispatch(&mut ctx, cli.command).and_then(|()| Ok(ctx.out.flush()?));
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failure(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            EXIT_FAILURE
        }
        // a closed downstream pipe is not an error for a streaming tool
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::Io(e)) => {
            let _ = writeln!(ctx.err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> CliResult {
    match command {
        Command::AltList { n } => alt_list(ctx, n),
        Command::Chains { action } => match action {
            ChainsAction::Count { n } => chains_count(ctx, n),
            ChainsAction::Enumerate { n } => chains_enumerate(ctx, n),
        },
        Command::Asm { action } => match action {
            AsmAction::Validate { input } => asm_validate(ctx, &input),
            AsmAction::Enumerate { n, method } => asm_enumerate(ctx, n, method),
            AsmAction::ToChain { input } => asm_to_chain_cmd(ctx, &input),
        },
        Command::ChainToAsm { input } => chain_to_asm_cmd(ctx, &input),
        Command::Hasse { n } => hasse(ctx, n),
        Command::Sym { action } => match action {
            SymAction::ThetaCycles { n } => sym_theta_cycles(ctx, n),
            SymAction::Orbits { n, generators } => sym_orbits(ctx, n, &generators),
            SymAction::Check { n } => sym_check(ctx, n),
        },
        Command::Verify {
            n_max,
            inject_fault,
        } => verify(ctx, n_max, inject_fault),
    }
}

fn alt_list(ctx: &mut Ctx<'_>, n: usize) -> CliResult {
    check_n(n, MAX_ENUMERATION_LEN, "alt-list")?;
    let format = pick_format(&ctx.format, &["compact", "numeric", "json"])?;
    for a in enumerate_alternating(n).expect("n checked") {
        match format {
            "compact" => writeln!(ctx.out, "{}", a.to_compact())?,
            "numeric" => writeln!(ctx.out, "{}", a.to_numeric())?,
            _ => writeln!(
                ctx.out,
                "{}",
                serde_json::to_string(a.entries()).expect("json")
            )?,
        }
    }
    Ok(())
}

fn chains_count(ctx: &mut Ctx<'_>, n: usize) -> CliResult {
    check_n(n, MAX_POSET_ORDER, "chains count")?;
    pick_format(&ctx.format, &["text"])?;
    let count = count_maximal_chains(n).expect("n checked");
    writeln!(ctx.out, "{count}")?;
    Ok(())
}

fn chain_stream(ctx: &Ctx<'_>, n: usize) -> Result<Box<dyn Iterator<Item = Chain>>, CliError> {
    if ctx.force {
        check_n(n, MAX_POSET_ORDER, "chain enumeration")?;
        Ok(Box::new(
            enumerate_maximal_chains_unguarded(n).expect("n checked"),
        ))
    } else {
        if n > DEFAULT_ENUMERATION_LIMIT {
            return usage(format!(
                "chain enumeration is limited to n <= {DEFAULT_ENUMERATION_LIMIT}; pass --force to override"
            ));
        }
        check_n(n, DEFAULT_ENUMERATION_LIMIT, "chain enumeration")?;
        Ok(Box::new(enumerate_maximal_chains(n).expect("n checked")))
    }
}

fn write_chain(out: &mut dyn Write, c: &Chain, format: &str) -> io::Result<()> {
    match format {
        "json" => writeln!(out, "{}", c.to_json()),
        _ => writeln!(out, "{c}"),
    }
}

fn chains_enumerate(ctx: &mut Ctx<'_>, n: usize) -> CliResult {
    let format = pick_format(&ctx.format, &["json", "text"])?;
    for c in chain_stream(ctx, n)? {
        write_chain(ctx.out, &c, format)?;
    }
    Ok(())
}

fn asm_validate(ctx: &mut Ctx<'_>, input: &str) -> CliResult {
    pick_format(&ctx.format, &["text"])?;
    let text = ctx.read_input(input)?;
    match parse_asm(&text) {
        Ok(a) => {
            ctx.info(&format!(
                "valid alternating sign matrix of order {}",
                a.order()
            ))?;
            Ok(())
        }
        Err(e) => Err(CliError::Failure(format!("invalid matrix: {e}"))),
    }
}

fn write_asm(out: &mut dyn Write, a: &Asm, format: &str, first: bool) -> io::Result<()> {
    match format {
        "json" => writeln!(out, "{}", a.to_json()),
        _ => {
            if !first {
                writeln!(out)?;
            }
            writeln!(out, "{}", serialize_asm(a))
        }
    }
}

fn asm_enumerate(ctx: &mut Ctx<'_>, n: usize, method: Method) -> CliResult {
    let format = pick_format(&ctx.format, &["json", "text"])?;
    let stream: Box<dyn Iterator<Item = Asm>> = match method {
        Method::Chains => Box::new(chain_stream(ctx, n)?.map(|c| chain_to_asm(&c))),
        Method::Backtrack => {
            check_n(n, MAX_BACKTRACK_ORDER, "backtracking enumeration")?;
            Box::new(enumerate_asms_backtrack(n).expect("n checked"))
        }
        Method::Exhaustive => {
            check_n(n, MAX_EXHAUSTIVE_ORDER, "exhaustive enumeration")?;
            Box::new(enumerate_asms_exhaustive(n).expect("n checked").into_iter())
        }
    };
    for (i, a) in stream.enumerate() {
        write_asm(ctx.out, &a, format, i == 0)?;
    }
    Ok(())
}

fn asm_to_chain_cmd(ctx: &mut Ctx<'_>, input: &str) -> CliResult {
    let format = pick_format(&ctx.format, &["json", "text"])?;
    let text = ctx.read_input(input)?;
    let a = parse_asm(&text).map_err(|e| CliError::Failure(format!("invalid matrix: {e}")))?;
    write_chain(ctx.out, &asm_to_chain(&a), format)?;
    Ok(())
}

fn chain_to_asm_cmd(ctx: &mut Ctx<'_>, input: &str) -> CliResult {
    let format = pick_format(&ctx.format, &["text", "json"])?;
    let text = ctx.read_input(input)?;
    let c = parse_chain(&text).map_err(|e| CliError::Failure(format!("invalid chain: {e}")))?;
    write_asm(ctx.out, &chain_to_asm(&c), format, true)?;
    Ok(())
}

fn hasse(ctx: &mut Ctx<'_>, n: usize) -> CliResult {
    check_n(n, MAX_HASSE_EXPORT, "hasse")?;
    let format = pick_format(&ctx.format, &["edgelist", "dot", "json"])?;
    let edges = hasse_edges(n).expect("n checked");
    match format {
        "edgelist" => {
            for e in edges {
                writeln!(ctx.out, "{} {}", e.lower, e.upper)?;
            }
        }
        "dot" => {
            writeln!(ctx.out, "graph hasse {{")?;
            writeln!(ctx.out, "  rankdir=BT;")?;
            let mut layers: Vec<Vec<Vertex>> = vec![Vec::new(); n + 1];
            for b in 0..1u64 << n {
                let v = Vertex::new(n, b).expect("in range");
                layers[v.rank()].push(v);
            }
            for layer in &layers {
                let nodes: Vec<String> = layer.iter().map(|v| format!("\"{v}\";")).collect();
                writeln!(ctx.out, "  {{ rank=same; {} }}", nodes.join(" "))?;
            }
            for e in edges {
                writeln!(ctx.out, "  \"{}\" -- \"{}\";", e.lower, e.upper)?;
            }
            writeln!(ctx.out, "}}")?;
        }
        _ => {
            let vertices: Vec<String> = (0..1u64 << n)
                .map(|b| Vertex::new(n, b).expect("in range").to_string())
                .collect();
            let edges: Vec<[String; 2]> = edges
                .map(|e| [e.lower.to_string(), e.upper.to_string()])
                .collect();
            let doc = serde_json::json!({ "n": n, "vertices": vertices, "edges": edges });
            writeln!(ctx.out, "{doc}")?;
        }
    }
    Ok(())
}

fn sym_theta_cycles(ctx: &mut Ctx<'_>, n: usize) -> CliResult {
    check_n(n, MAX_SYM_N, "sym theta-cycles")?;
    let style = match pick_format(&ctx.format, &["bits", "tuple"])? {
        "tuple" => VertexStyle::Tuple,
        _ => VertexStyle::Bits,
    };
    for cycle in theta_cycles(n).expect("n checked") {
        writeln!(ctx.out, "{}", format_cycle(&cycle, style))?;
    }
    Ok(())
}

fn parse_generators(n: usize, list: &str) -> Result<Vec<VertexPermutation>, CliError> {
    list.split(',')
        .map(|g| match g.trim() {
            "theta" => Ok(VertexPermutation::theta(n)),
            "tau" => Ok(VertexPermutation::tau(n)),
            other => usage(format!(
                "unknown generator {other:?}; expected theta or tau"
            )),
        })
        .collect()
}

fn sym_orbits(ctx: &mut Ctx<'_>, n: usize, generators: &str) -> CliResult {
    check_n(n, MAX_SYM_N, "sym orbits")?;
    let format = pick_format(&ctx.format, &["text", "json"])?;
    let gens = parse_generators(n, generators)?;
    let orbits = vertex_orbits(n, &gens).map_err(|e| CliError::Failure(e.to_string()))?;
    match format {
        "json" => writeln!(ctx.out, "{}", orbits_to_json(&orbits))?,
        _ => writeln!(ctx.out, "{}", format_orbits(&orbits, VertexStyle::Bits))?,
    }
    Ok(())
}

fn sym_check(ctx: &mut Ctx<'_>, n: usize) -> CliResult {
    check_n(n, MAX_SYM_CHECK_N, "sym check")?;
    pick_format(&ctx.format, &["text"])?;
    let mut failed = Vec::new();
    for (name, f) in [
        ("theta", VertexPermutation::theta(n)),
        ("tau", VertexPermutation::tau(n)),
    ] {
        match find_broken_edge(&f, Parallelism::default()) {
            Ok(None) => writeln!(ctx.out, "{name}: automorphism")?,
            Ok(Some(e)) => {
                writeln!(
                    ctx.out,
                    "{name}: NOT an automorphism (edge {} {})",
                    e.lower, e.upper
                )?;
                failed.push(name);
            }
            Err(e) => return Err(CliError::Failure(e.to_string())),
        }
    }
    let order = group_order(n).map_err(|e| CliError::Failure(e.to_string()))?;
    writeln!(ctx.out, "realized group order: {order}")?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "automorphism check failed for {}",
            failed.join(", ")
        )))
    }
}

fn faulty_is_alternating(w: &[i8]) -> bool {
    crate::seq::is_alternating_slice(w) || w.iter().all(|&e| e == 0)
}

fn verify(ctx: &mut Ctx<'_>, n_max: usize, inject_fault: bool) -> CliResult {
    check_n(n_max, MAX_VERIFY_N, "verify")?;
    pick_format(&ctx.format, &["text"])?;
    let verifier = if inject_fault {
        Verifier::with_predicate(faulty_is_alternating)
    } else {
        Verifier::default()
    };
    let report = verifier.run(n_max);
    if !ctx.quiet {
        for r in &report.results {
            writeln!(ctx.out, "{r}")?;
        }
    }
    let passed = report.results.iter().filter(|r| r.passed()).count();
    writeln!(ctx.out, "{passed}/{} checks passed", report.results.len())?;
    match report.first_failure() {
        None => Ok(()),
        Some(r) => {
            let msg = match &r.outcome {
                crate::verify::Outcome::Fail(m) => m.clone(),
                crate::verify::Outcome::Pass(_) => unreachable!(),
            };
            Err(CliError::Failure(format!("{} failed: {msg}", r.name)))
        }
    }
}
