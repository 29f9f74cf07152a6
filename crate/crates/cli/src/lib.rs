//! Command line front end. [`run`] parses arguments, dispatches and renders
//! the result; the binary only prints it.

use std::fs;

use brauer_core::abacus::{self, choose_b, encode, is_p_core, p_core, validate_b};
use brauer_core::blocks::{
    self, block_decomposition_char0, content_scalar, label_text, orbit_decomposition_affine,
    search_split_certificates, BlockDecomposition,
};
use brauer_core::diagrams::{self, build_tn, e_n, AlgebraElement, BrauerDiagram};
use brauer_core::projection::Projection;
use brauer_core::weights::{conjugate, Characteristic, Context, Partition, Weight};
use brauer_core::weyl::{self, OrbitWitness};
use brauer_core::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "brauer", version, about = "Blocks of the Brauer algebra via type D Weyl group orbits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Rank n
    #[arg(long = "n", global = true)]
    pub n: Option<usize>,

    /// Parameter delta (an integer; reduced mod p in characteristic p)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub delta: Option<String>,

    /// Characteristic: 0 or a prime greater than 2
    #[arg(long = "p", global = true, default_value_t = 0)]
    pub p: u64,

    /// Bead count override for abacus commands
    #[arg(long = "b", global = true)]
    pub b: Option<usize>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Exit with status 1 when a query is answered negatively
    #[arg(long, global = true)]
    pub strict: bool,

    /// Whether partition inputs are geometric weights or module labels
    #[arg(long, global = true, value_enum, default_value_t = Labels::Geometric)]
    pub labels: Labels,

    /// Batch input: one `λ;μ` pair per line
    #[arg(long, global = true)]
    pub pairs: Option<String>,

    /// Write SVG output to this file
    #[arg(long, global = true)]
    pub out: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Labels {
    /// Inputs are weights λ
    Geometric,
    /// Inputs are module labels λ^T
    Transpose,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit membership with a witness (finite group in characteristic 0, affine otherwise)
    Orbit(Pair),
    /// Balanced test (characteristic 0)
    Balanced(Pair),
    /// Same-block query
    Block(Pair),
    /// Block (or orbit) decomposition of the label set
    Blocks,
    /// Linking reflection word from λ to μ
    Chain(Pair),
    /// Abacus of a partition
    Abacus {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// p-core of a partition
    Pcore {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// The T_n content condition for |λ| - |μ| = 2t
    Obstruction(Pair),
    /// Search for split-orbit certificates
    Certify {
        #[arg(long, default_value_t = 30)]
        max_n: usize,
    },
    /// Diagram algebra evaluation
    Diagram {
        #[command(subcommand)]
        op: DiagramOp,
    },
    /// SVG projection onto the (i, j) coordinate plane
    Project {
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 2)]
        j: usize,
        #[arg(long, default_value_t = 10)]
        radius: i64,
        /// Weights to mark
        #[arg(allow_hyphen_values = true)]
        weights: Vec<String>,
    },
}

#[derive(Debug, clap::Args)]
pub struct Pair {
    #[arg(allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(allow_hyphen_values = true)]
    pub mu: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum DiagramOp {
    /// Product of two diagrams with its δ power
    Product { left: String, right: String },
    /// The idempotent e_n
    En,
    /// T_n = Σ X_{i,j}
    Tn,
    /// Count of basis diagrams
    Count,
}

/// Exit status and rendered streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn invalid(msg: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

/// One answered query.
struct Answer {
    query: Value,
    result: Value,
    witness: Value,
    text: String,
    /// `Some(false)` for a negative decision.
    decision: Option<bool>,
}

type CmdResult<T> = std::result::Result<T, String>;

fn err(e: Error) -> String {
    e.to_string()
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
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
                Outcome::invalid(text)
            };
        }
    };
    match execute(&cli) {
        Ok(answers) => render(&cli, answers),
        Err(msg) => Outcome::invalid(format!("error: {msg}\n")),
    }
}

fn render(cli: &Cli, answers: Vec<Answer>) -> Outcome {
    let ctx_json = context_json(cli);
    let mut stdout = String::new();
    let mut negative = false;
    for a in answers {
        negative |= a.decision == Some(false);
        if cli.json {
            let record = json!({
                "query": a.query,
                "context": ctx_json,
                "result": a.result,
                "witness": a.witness,
            });
            stdout.push_str(&record.to_string());
            stdout.push('\n');
        } else {
            stdout.push_str(&a.text);
            if !a.text.ends_with('\n') {
                stdout.push('\n');
            }
        }
    }
    Outcome {
        code: if cli.strict && negative { 1 } else { 0 },
        stdout,
        stderr: String::new(),
    }
}

fn context_json(cli: &Cli) -> Value {
    let delta = cli
        .delta
        .as_deref()
        .and_then(|d| d.trim().parse::<i64>().ok())
        .map(|d| if cli.p > 0 { d.rem_euclid(cli.p as i64) } else { d });
    json!({ "n": cli.n, "delta": delta, "p": cli.p })
}

fn parse_delta(cli: &Cli) -> CmdResult<i64> {
    let Some(raw) = cli.delta.as_deref() else {
        return Err("--delta is required".into());
    };
    match raw.trim().parse::<i64>() {
        Ok(d) => Ok(d),
        Err(_) if raw.trim().parse::<f64>().is_ok() => Err(format!(
            "delta = {raw} is not an integer; for non-integral delta the algebra B_n(delta) is semisimple over C, so every block is a single simple module"
        )),
        Err(_) => Err(format!("cannot parse delta {raw:?}")),
    }
}

fn context(cli: &Cli) -> CmdResult<Context> {
    let n = cli.n.ok_or("--n is required")?;
    let delta = parse_delta(cli)?;
    Context::new(n, delta, cli.p).map_err(err)
}

fn partition_arg(cli: &Cli, s: &str) -> CmdResult<Partition> {
    let p: Partition = s.parse().map_err(err)?;
    Ok(match cli.labels {
        Labels::Geometric => p,
        Labels::Transpose => conjugate(&p),
    })
}

fn weight_arg(cli: &Cli, s: &str) -> CmdResult<Weight> {
    match cli.labels {
        Labels::Geometric => s.parse().map_err(err),
        Labels::Transpose => Ok(partition_arg(cli, s)?.as_weight()),
    }
}

/// Shows a partition in the convention the inputs were given in.
fn show(cli: &Cli, p: &Partition) -> String {
    match cli.labels {
        Labels::Geometric => label_text(p),
        Labels::Transpose => label_text(&conjugate(p)),
    }
}

fn pair_inputs(cli: &Cli, pair: &Pair) -> CmdResult<Vec<(String, String)>> {
    match (&cli.pairs, &pair.lambda, &pair.mu) {
        (Some(path), None, None) => {
            let body = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            body.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| {
                    l.split_once(';')
                        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                        .ok_or_else(|| format!("expected `λ;μ`, got {l:?}"))
                })
                .collect()
        }
        (None, Some(a), Some(b)) => Ok(vec![(a.clone(), b.clone())]),
        (Some(_), _, _) => Err("give either --pairs or two positional arguments".into()),
        _ => Err("two arguments λ and μ are required".into()),
    }
}

fn execute(cli: &Cli) -> CmdResult<Vec<Answer>> {
    match &cli.command {
        Command::Orbit(pair) => each_pair(cli, pair, orbit),
        Command::Balanced(pair) => each_pair(cli, pair, balanced),
        Command::Block(pair) => each_pair(cli, pair, block),
        Command::Chain(pair) => each_pair(cli, pair, chain),
        Command::Obstruction(pair) => each_pair(cli, pair, obstruction),
        Command::Blocks => Ok(vec![decomposition(cli)?]),
        Command::Abacus { lambda } => Ok(vec![abacus_cmd(cli, lambda)?]),
        Command::Pcore { lambda } => Ok(vec![pcore(cli, lambda)?]),
        Command::Certify { max_n } => Ok(vec![certify(cli, *max_n)?]),
        Command::Diagram { op } => Ok(vec![diagram(cli, op)?]),
        Command::Project {
            i,
            j,
            radius,
            weights,
        } => Ok(vec![project(cli, *i, *j, *radius, weights)?]),
    }
}

fn each_pair(
    cli: &Cli,
    pair: &Pair,
    f: fn(&Cli, &Context, &str, &str) -> CmdResult<Answer>,
) -> CmdResult<Vec<Answer>> {
    let ctx = context(cli)?;
    pair_inputs(cli, pair)?
        .iter()
        .map(|(a, b)| f(cli, &ctx, a, b))
        .collect()
}

fn pair_query(command: &str, a: &str, b: &str) -> Value {
    json!({ "command": command, "lambda": a, "mu": b })
}

fn witness_json(w: &OrbitWitness) -> Value {
    json!({ "pi": w.pi(), "sigma": w.sigma(), "d_sigma": w.d_sigma() })
}

fn orbit(cli: &Cli, ctx: &Context, a: &str, b: &str) -> CmdResult<Answer> {
    let (l, m) = (weight_arg(cli, a)?, weight_arg(cli, b)?);
    let found = match ctx.characteristic() {
        Characteristic::Zero => weyl::orbit_member_finite(&l, &m, ctx),
        Characteristic::Prime(_) => weyl::orbit_member_affine(&l, &m, ctx),
    }
    .map_err(err)?;
    let mut text = format!("in-orbit: {}\n", found.is_some());
    if let Some(w) = &found {
        let pi: Vec<String> = w.pi().iter().map(|x| x.to_string()).collect();
        let sigma: Vec<&str> = w.sigma().iter().map(|&s| if s == 1 { "+" } else { "-" }).collect();
        text.push_str(&format!("pi: {}\nsigma: {}\n", pi.join(","), sigma.join(",")));
    }
    Ok(Answer {
        query: pair_query("orbit", a, b),
        result: json!(found.is_some()),
        witness: found.as_ref().map_or(Value::Null, witness_json),
        text,
        decision: Some(found.is_some()),
    })
}

fn balanced(cli: &Cli, ctx: &Context, a: &str, b: &str) -> CmdResult<Answer> {
    let (l, m) = (partition_arg(cli, a)?, partition_arg(cli, b)?);
    let yes = blocks::is_balanced(&l, &m, ctx).map_err(err)?;
    Ok(Answer {
        query: pair_query("balanced", a, b),
        result: json!(yes),
        witness: Value::Null,
        text: format!("balanced: {yes}\n"),
        decision: Some(yes),
    })
}

fn block(cli: &Cli, ctx: &Context, a: &str, b: &str) -> CmdResult<Answer> {
    let (l, m) = (partition_arg(cli, a)?, partition_arg(cli, b)?);
    let (yes, kind) = match ctx.characteristic() {
        Characteristic::Zero => (blocks::same_block_char0(&l, &m, ctx).map_err(err)?, "exact-blocks"),
        Characteristic::Prime(_) => {
            (abacus::orbit_equiv_abacus(&l, &m, ctx).map_err(err)?, "orbit-upper-bound")
        }
    };
    let text = match kind {
        "exact-blocks" => format!("same-block: {yes}\n"),
        _ => format!("same-orbit: {yes} (orbits are unions of blocks)\n"),
    };
    Ok(Answer {
        query: pair_query("block", a, b),
        result: json!(yes),
        witness: json!({ "kind": kind }),
        text,
        decision: Some(yes),
    })
}

fn chain(cli: &Cli, ctx: &Context, a: &str, b: &str) -> CmdResult<Answer> {
    let (l, m) = (partition_arg(cli, a)?, partition_arg(cli, b)?);
    let query = pair_query("chain", a, b);
    match weyl::linking_steps(&l, &m, ctx) {
        Ok(steps) => {
            let word = steps
                .iter()
                .fold(weyl::ReflectionWord::identity(), |acc, s| acc.then(&s.word));
            let mut text = format!("word: {word}\n");
            for s in &steps {
                text.push_str(&format!("  {} -> {}\n", s.word, s.result));
            }
            let witness: Vec<Value> = steps
                .iter()
                .map(|s| json!({ "word": s.word.to_string(), "result": s.result.to_string() }))
                .collect();
            Ok(Answer {
                query,
                result: json!(word.to_string()),
                witness: json!(witness),
                text,
                decision: Some(true),
            })
        }
        Err(Error::NotBalanced(..)) => Ok(Answer {
            query,
            result: Value::Null,
            witness: Value::Null,
            text: "not balanced: no linking word\n".into(),
            decision: Some(false),
        }),
        Err(e) => Err(err(e)),
    }
}

fn obstruction(cli: &Cli, ctx: &Context, a: &str, b: &str) -> CmdResult<Answer> {
    let (l, m) = (partition_arg(cli, a)?, partition_arg(cli, b)?);
    let scalar = content_scalar(&l, &m, ctx).map_err(err)?;
    Ok(Answer {
        query: pair_query("obstruction", a, b),
        result: json!(scalar == 0),
        witness: json!({ "scalar": scalar }),
        text: format!("condition holds: {} (scalar {scalar})\n", scalar == 0),
        decision: Some(scalar == 0),
    })
}

fn decomposition(cli: &Cli) -> CmdResult<Answer> {
    let ctx = context(cli)?;
    let d: BlockDecomposition = match ctx.characteristic() {
        Characteristic::Zero => block_decomposition_char0(&ctx),
        Characteristic::Prime(_) => orbit_decomposition_affine(&ctx),
    }
    .map_err(err)?;
    let classes: Vec<Vec<String>> = d
        .classes
        .iter()
        .map(|c| c.iter().map(|p| show(cli, p)).collect())
        .collect();
    let mut text = format!("{}\n", d.header());
    for c in &classes {
        text.push_str(&c.join(";"));
        text.push('\n');
    }
    Ok(Answer {
        query: json!({ "command": "blocks" }),
        result: json!(classes),
        witness: json!({ "kind": d.kind.to_string() }),
        text,
        decision: None,
    })
}

fn abacus_cmd(cli: &Cli, lambda: &str) -> CmdResult<Answer> {
    let ctx = match cli.delta {
        Some(_) => context(cli)?,
        // The bead count needs delta only when it is not given explicitly.
        None if cli.b.is_some() => Context::new(cli.n.ok_or("--n is required")?, 0, cli.p).map_err(err)?,
        None => return Err("--delta is required unless --b is given".into()),
    };
    if ctx.prime().is_none() {
        return Err("abacus needs --p, a prime greater than 2".into());
    }
    let l = partition_arg(cli, lambda)?;
    let b = match cli.b {
        Some(b) => {
            if cli.delta.is_some() {
                validate_b(b, &l, &l, &ctx).map_err(err)?;
            }
            b
        }
        None => choose_b(ctx.rank().max(l.len()), &ctx).map_err(err)?,
    };
    let a = encode(&l, b, &ctx).map_err(err)?;
    let counts = a.runner_counts();
    let totals = a.pair_totals();
    let p = counts.len();
    let mut text = a.render();
    text.push_str(&format!("runner 0: {}\n", counts[0]));
    for (k, t) in totals.iter().enumerate() {
        text.push_str(&format!("runners {}/{}: {}\n", k + 1, p - k - 1, t));
    }
    text.push_str(&format!("compact: {}\n", a.compact()));
    Ok(Answer {
        query: json!({ "command": "abacus", "lambda": lambda, "b": b }),
        result: json!({
            "positions": a.positions(),
            "runner_counts": counts,
            "pair_totals": totals,
            "black_on_runner_0": a.has_black_on_runner_zero(),
            "compact": a.compact(),
        }),
        witness: Value::Null,
        text,
        decision: None,
    })
}

fn pcore(cli: &Cli, lambda: &str) -> CmdResult<Answer> {
    if cli.p < 2 {
        return Err("pcore needs --p".into());
    }
    let l = partition_arg(cli, lambda)?;
    let core = p_core(&l, cli.p);
    let is_core = is_p_core(&l, cli.p);
    Ok(Answer {
        query: json!({ "command": "pcore", "lambda": lambda }),
        result: json!(show(cli, &core)),
        witness: json!({ "is_core": is_core }),
        text: format!("core: {}\nis-core: {is_core}\n", show(cli, &core)),
        decision: Some(is_core),
    })
}

fn certify(cli: &Cli, max_n: usize) -> CmdResult<Answer> {
    let delta = parse_delta(cli)?;
    let ctx = Context::new(1, delta, cli.p).map_err(err)?;
    let found = search_split_certificates(&ctx, max_n).map_err(err)?;
    let mut text = format!("certificates with |lambda| <= {max_n}: {}\n", found.len());
    let mut list = Vec::new();
    for c in &found {
        text.push_str(&format!(
            "{} ; {} (n = {}, row {})\n",
            show(cli, &c.lambda),
            show(cli, &c.mu),
            c.lambda.degree(),
            c.row
        ));
        list.push(json!({
            "lambda": show(cli, &c.lambda),
            "mu": show(cli, &c.mu),
            "n": c.lambda.degree(),
            "row": c.row,
        }));
    }
    Ok(Answer {
        query: json!({ "command": "certify", "max_n": max_n }),
        result: json!(list),
        witness: Value::Null,
        decision: Some(!found.is_empty()),
        text,
    })
}

fn element_json(x: &AlgebraElement) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .iter()
        .map(|(d, c)| json!({ "diagram": d.to_string(), "coefficient": c.to_string() }))
        .collect();
    json!(terms)
}

fn diagram(cli: &Cli, op: &DiagramOp) -> CmdResult<Answer> {
    match op {
        DiagramOp::Product { left: a, right: b } => {
            let (da, db): (BrauerDiagram, BrauerDiagram) =
                (a.parse().map_err(err)?, b.parse().map_err(err)?);
            let (loops, c) = diagrams::compose(&da, &db).map_err(err)?;
            Ok(Answer {
                query: json!({ "command": "diagram", "op": "product", "a": a, "b": b }),
                result: json!({ "loops": loops, "diagram": c.to_string() }),
                witness: Value::Null,
                text: format!("delta^{loops} * [{c}]\n"),
                decision: None,
            })
        }
        DiagramOp::En | DiagramOp::Tn => {
            let ctx = context(cli)?;
            let (name, x) = match op {
                DiagramOp::En => ("en", e_n(&ctx).map_err(err)?),
                _ => ("tn", build_tn(&ctx).map_err(err)?),
            };
            Ok(Answer {
                query: json!({ "command": "diagram", "op": name }),
                result: element_json(&x),
                witness: Value::Null,
                text: format!("{x}\n"),
                decision: None,
            })
        }
        DiagramOp::Count => {
            let n = cli.n.ok_or("--n is required")?;
            if n > 7 {
                return Err("count enumerates diagrams; use n <= 7".into());
            }
            let k = diagrams::all_diagrams(n).len();
            Ok(Answer {
                query: json!({ "command": "diagram", "op": "count" }),
                result: json!(k),
                witness: Value::Null,
                text: format!("{k}\n"),
                decision: None,
            })
        }
    }
}

fn project(cli: &Cli, i: usize, j: usize, radius: i64, weights: &[String]) -> CmdResult<Answer> {
    let ctx = context(cli)?;
    let pr = Projection::new(i, j, radius).map_err(err)?;
    let points = weights
        .iter()
        .map(|w| weight_arg(cli, w))
        .collect::<CmdResult<Vec<_>>>()?;
    let svg = pr.render_svg(&ctx, &points).map_err(err)?;
    let text = match &cli.out {
        Some(path) => {
            fs::write(path, &svg).map_err(|e| format!("{path}: {e}"))?;
            format!("wrote {path}\n")
        }
        None => svg.clone(),
    };
    Ok(Answer {
        query: json!({ "command": "project", "i": i, "j": j, "radius": radius }),
        result: json!(cli.out.as_deref().unwrap_or("stdout")),
        witness: Value::Null,
        text,
        decision: None,
    })
}
