mod context;
mod suites;

use clap::{Args, Parser, Subcommand};
use context::Context;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::process::ExitCode;
use suites::{run_suite, Params};
use swcalc_core::commutant::TensorModel;
use swcalc_core::lattice_screening::{NamedFields, Words};
use swcalc_core::invariant_oracle::{dump_triplets, first_relation_weight, invariant_dim, weyl_span_dim};
use swcalc_core::report::Report;
use swcalc_core::swinf::{decouple, relation_space, singular_check, JLabel, Realization};
use swcalc_core::vertex::Weight;
use swcalc_core::{Error, FieldExpr, OpeResult, RatFunc};

#[derive(Parser)]
#[command(name = "swcalc", version, about = "Exact OPE calculator for free-field vertex superalgebras and their W-algebras")]
struct Cli {
    #[command(flatten)]
    g: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for concurrent checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Rank n; suites accept a comma-separated list.
    #[arg(long, global = true, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Level k as a rational number or rational function of k.
    #[arg(long, global = true, allow_hyphen_values = true)]
    k: Option<String>,
    /// Keep the level symbolic (the default when --k is absent).
    #[arg(long, global = true, conflicts_with = "k")]
    symbolic: bool,
    /// Conformal weight, e.g. 5/2.
    #[arg(long, global = true)]
    weight: Option<String>,
    /// Algebra context: bcbg:N, bc:N, betagamma:N, M:N, swinf[:C], V:N, gl:N, W:N, B:N, W2.
    #[arg(long, global = true)]
    algebra: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the canonical form of an expression.
    Parse {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Pole table of lhs(z) rhs(w).
    Ope {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// The circle product lhs ∘_order rhs; negative orders give normally ordered products.
    Nproduct {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, allow_hyphen_values = true)]
        order: i32,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        /// Largest mode index k, l in the realization cross-check.
        #[arg(long, default_value_t = 2)]
        kmax: u32,
    },
    /// Express J^{a,m} as a normally ordered polynomial in lower generators at c = n.
    Decouple {
        /// Generator as a,m with a in 0, 1, +, -.
        #[arg(long)]
        gen: String,
    },
    /// Relations of the free-field realization at c = n and a given weight.
    Relations,
    /// GL_n-invariants of the associated graded algebra.
    Invariants {
        #[arg(long)]
        span: bool,
        #[arg(long)]
        dim: bool,
        #[arg(long)]
        first_relation: bool,
        /// Dump the invariance matrix as (row, col, rational) triplets.
        #[arg(long)]
        triplets: bool,
    },
    /// Basis of the affine commutant at a weight, or with --verify the commutant suite.
    Commutant {
        /// Level as a rational, or `symbolic`.
        #[arg(long, allow_hyphen_values = true)]
        level: Option<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Identification checks: w2b2 or gl22remark.
    Identify {
        #[arg(long)]
        check: String,
    },
    /// The W-algebra of the screening realization.
    Walg {
        #[command(subcommand)]
        cmd: WalgCmd,
    },
}

#[derive(Subcommand)]
enum WalgCmd {
    /// Kernel theorem for rank n, plus the full table when n = 2.
    Verify,
    /// OPE of two named fields, e.g. --lhs H --rhs G+.
    Ope {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// At n = 2, also write each pole in normally ordered words of E, N, Psi, T, H, G.
        #[arg(long)]
        words: bool,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownGenerator(_) | Error::InvalidArgument(_) | Error::MixedAlgebra => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Out = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.g.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn level(g: &Global) -> Result<RatFunc, Failure> {
    match &g.k {
        Some(k) if !g.symbolic => Ok(RatFunc::parse(k)?),
        _ => Ok(RatFunc::kappa()),
    }
}

fn weight(g: &Global) -> Result<Weight, Failure> {
    let w = g.weight.as_deref().ok_or_else(|| Failure::Usage("--weight is required".into()))?;
    parse_weight(w)
}

fn parse_weight(w: &str) -> Result<Weight, Failure> {
    w.trim().parse::<Weight>().map_err(|_| Failure::Usage(format!("bad weight {w}")))
}

fn single_n(g: &Global) -> Result<usize, Failure> {
    match g.n.as_deref() {
        None => Err(Failure::Usage("--n is required".into())),
        Some([n]) if *n > 0 => Ok(*n),
        Some(_) => Err(Failure::Usage("--n takes a single positive rank here".into())),
    }
}

fn context(g: &Global) -> Result<Context, Failure> {
    let spec = g.algebra.clone().unwrap_or_else(|| format!("bcbg:{}", g.n.as_deref().and_then(|n| n.first()).copied().unwrap_or(1)));
    Ok(Context::open(&spec, level(g)?)?)
}

fn ope_json(ope: &OpeResult) -> Value {
    let poles: BTreeMap<String, String> = ope.poles.iter().filter(|(_, p)| !p.is_zero()).map(|(o, p)| (o.to_string(), p.to_string())).collect();
    json!(poles)
}

fn print_ope(ctx: &Context, lhs: &str, rhs: &str, ope: &OpeResult, as_json: bool) {
    if as_json {
        let v = json!({ "context": ctx.name(), "lhs": lhs, "rhs": rhs, "poles": ope_json(ope), "version": env!("CARGO_PKG_VERSION") });
        println!("{v}");
        return;
    }
    let mut any = false;
    for (o, p) in ope.poles.iter().rev() {
        if !p.is_zero() {
            println!("(z-w)^-{o}: {p}");
            any = true;
        }
    }
    if !any {
        println!("regular");
    }
}

/// Each pole as a combination of normally ordered words in the strong generators.
fn in_words(fields: &NamedFields, ope: &OpeResult) -> Result<BTreeMap<u32, String>, Failure> {
    let words = Words::new(&fields.alg, fields.strong_generators())?;
    let mut out = BTreeMap::new();
    for (o, p) in &ope.poles {
        if p.is_zero() {
            continue;
        }
        if p.is_scalar() {
            out.insert(*o, p.to_string());
            continue;
        }
        let w = p.weight().ok_or_else(|| Failure::Compute(format!("pole {o} is not homogeneous")))?;
        let basis = words.basis(w)?;
        let terms: Vec<String> = basis.decompose(p)?.into_iter().map(|(i, c)| format!("({c})*{}", words.label(&basis.words[i]))).collect();
        out.insert(*o, terms.join(" + "));
    }
    Ok(out)
}

fn print_report(r: &Report, as_json: bool) -> bool {
    if as_json {
        println!("{}", serde_json::to_string_pretty(r).unwrap_or_default());
    } else {
        println!("{r}");
    }
    r.passed()
}

fn print_fields(header: Value, label: &str, fields: &[FieldExpr], as_json: bool) {
    if as_json {
        let mut v = header;
        v[label] = json!(fields.iter().map(|f| f.to_string()).collect::<Vec<_>>());
        println!("{v}");
    } else {
        if let Value::Object(m) = &header {
            for (key, val) in m {
                println!("{key}: {}", val.as_str().map_or(val.to_string(), str::to_string));
            }
        }
        for (i, f) in fields.iter().enumerate() {
            println!("[{i}] {f}");
        }
    }
}

fn run(cli: &Cli) -> Out {
    let g = &cli.g;
    match &cli.cmd {
        Cmd::Parse { expr } => {
            let ctx = context(g)?;
            let x = ctx.parse(expr)?;
            if g.json {
                println!("{}", json!({ "context": ctx.name(), "input": expr, "canonical": x.to_string() }));
            } else {
                println!("{x}");
            }
            Ok(true)
        }
        Cmd::Ope { lhs, rhs } => {
            let ctx = context(g)?;
            let (a, b) = (ctx.parse(lhs)?, ctx.parse(rhs)?);
            let ope = ctx.alg().ope(&a, &b)?;
            print_ope(&ctx, lhs, rhs, &ope, g.json);
            Ok(true)
        }
        Cmd::Nproduct { lhs, rhs, order } => {
            let ctx = context(g)?;
            let (a, b) = (ctx.parse(lhs)?, ctx.parse(rhs)?);
            let x = ctx.alg().circle(&a, &b, *order)?;
            if g.json {
                println!("{}", json!({ "context": ctx.name(), "lhs": lhs, "rhs": rhs, "order": order, "result": x.to_string() }));
            } else {
                println!("{x}");
            }
            Ok(true)
        }
        Cmd::Verify { suite, kmax } => {
            let weight = g.weight.as_deref().map(parse_weight).transpose()?;
            let p = Params { ns: g.n.clone(), k: level(g)?, kmax: *kmax, weight };
            let r = run_suite(suite, &p)?;
            Ok(print_report(&r, g.json))
        }
        Cmd::Decouple { gen } => {
            let n = single_n(g)?;
            let (a, m) = gen.split_once(',').ok_or_else(|| Failure::Usage("--gen takes a,m".into()))?;
            let a = JLabel::parse(a).ok_or_else(|| Failure::Usage(format!("bad label {a}")))?;
            let m: u32 = m.trim().parse().map_err(|_| Failure::Usage(format!("bad index {m}")))?;
            let real = Realization::new(n)?;
            let x = decouple(&real, a, m)?;
            let ok = real.apply(&x)? == real.j(a, m)?;
            if g.json {
                println!("{}", json!({ "n": n, "generator": format!("J[{a},{m}]"), "expression": x.to_string(), "realizes": ok }));
            } else {
                println!("J[{a},{m}] = {x}");
            }
            Ok(ok)
        }
        Cmd::Relations => {
            let n = single_n(g)?;
            let w = weight(g)?;
            let real = Realization::new(n)?;
            let rels = relation_space(&real, w)?;
            let mut singular = Vec::new();
            for r in &rels {
                singular.push(singular_check(&r.expr)?);
            }
            let fields: Vec<FieldExpr> = rels.iter().map(|r| r.expr.clone()).collect();
            let header = json!({ "n": n, "weight": w.to_string(), "dim": rels.len(), "singular": singular });
            print_fields(header, "relations", &fields, g.json);
            Ok(rels.iter().all(|r| r.image_zero))
        }
        Cmd::Invariants { span, dim, first_relation, triplets } => {
            let n = single_n(g)?;
            let all = !(*span || *dim || *first_relation || *triplets);
            let mut out = serde_json::Map::new();
            out.insert("n".into(), json!(n));
            if *first_relation || all {
                out.insert("first_relation".into(), json!(first_relation_weight(n)?.to_string()));
            }
            if *dim || *span || *triplets || (all && g.weight.is_some()) {
                let w = weight(g)?;
                out.insert("weight".into(), json!(w.to_string()));
                if *dim || all {
                    out.insert("invariant_dim".into(), json!(invariant_dim(n, w)?));
                }
                if *span || all {
                    out.insert("weyl_span_dim".into(), json!(weyl_span_dim(n, w)?));
                }
                if *triplets {
                    out.insert("triplets".into(), json!(dump_triplets(n, w)?));
                }
            }
            if g.json {
                println!("{}", Value::Object(out));
            } else if *triplets {
                print!("{}", out["triplets"].as_str().unwrap_or_default());
            } else {
                for (key, val) in out {
                    match val.as_str() {
                        Some(s) => println!("{key}: {s}"),
                        None => println!("{key}: {val}"),
                    }
                }
            }
            Ok(true)
        }
        Cmd::Commutant { level: lv, verify } => {
            let k = match lv.as_deref() {
                None | Some("symbolic") => level(g)?,
                Some(s) => RatFunc::parse(s)?,
            };
            if *verify {
                let weight = g.weight.as_deref().map(parse_weight).transpose()?;
                let r = run_suite("commutant", &Params { ns: g.n.clone(), k, kmax: 2, weight })?;
                return Ok(print_report(&r, g.json));
            }
            let n = single_n(g)?;
            let w = weight(g)?;
            let m = TensorModel::new(n, k)?;
            let basis = m.commutant_basis(w)?;
            let inv = invariant_dim(n, w)?;
            let header = json!({ "n": n, "level": m.k.to_string(), "weight": w.to_string(), "dim": basis.len(), "invariant_dim": inv });
            print_fields(header, "basis", &basis, g.json);
            Ok(true)
        }
        Cmd::Identify { check } => {
            let suite = match check.as_str() {
                "w2b2" | "gl22remark" => check.as_str(),
                other => return Err(Failure::Usage(format!("unknown check {other}; expected w2b2 or gl22remark"))),
            };
            let p = Params { ns: None, k: level(g)?, kmax: 2, weight: None };
            Ok(print_report(&run_suite(suite, &p)?, g.json))
        }
        Cmd::Walg { cmd: WalgCmd::Verify } => {
            let n = single_n(g)?;
            let p = Params { ns: Some(vec![n]), k: level(g)?, kmax: 2, weight: None };
            let mut r = run_suite("kernels", &p)?;
            if n == 2 {
                r.merge(run_suite("w2opes", &p)?);
            }
            r.suite = "walg".into();
            Ok(print_report(&r, g.json))
        }
        Cmd::Walg { cmd: WalgCmd::Ope { lhs, rhs, words } } => {
            let n = g.n.as_deref().and_then(|n| n.first()).copied().unwrap_or(2);
            let spec = if n == 2 { "W2".to_string() } else { format!("W:{n}") };
            let ctx = Context::open(&spec, level(g)?)?;
            let (a, b) = (ctx.parse(lhs)?, ctx.parse(rhs)?);
            let ope = ctx.alg().ope(&a, &b)?;
            match (&ctx, words) {
                (Context::Named { fields, .. }, true) if n == 2 => {
                    let table = in_words(fields, &ope)?;
                    if g.json {
                        println!("{}", json!({ "context": ctx.name(), "lhs": lhs, "rhs": rhs, "poles": table, "version": env!("CARGO_PKG_VERSION") }));
                    } else if table.is_empty() {
                        println!("regular");
                    } else {
                        for (o, p) in table.iter().rev() {
                            println!("(z-w)^-{o}: {p}");
                        }
                    }
                }
                _ => print_ope(&ctx, lhs, rhs, &ope, g.json),
            }
            Ok(true)
        }
    }
}
