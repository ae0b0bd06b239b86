use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use shortres::algebra::{find_conca, normalize_basis, AlgebraSpec, ConcaSearch, ShortAlgebra, Strategy};
use shortres::extalg::{bound_equality_check, delta_map, dimension_check, kernel_f, ExtPresentation, ExtReport};
use shortres::koszul::{is_koszul_resolved, rationality_resolved};
use shortres::modrep::{FiniteModule, ModuleSpec};
use shortres::resolution::{default_depth, negative_syzygy, ResolveOptions, Resolution, DEFAULT_BUDGET};
use shortres::series::{rational_fit, Poly};
use shortres::suite::{self, Mode, SuiteConfig};
use shortres::{Error, Field};

#[derive(Parser)]
#[command(name = "shortres", version, about = "Resolutions and Koszul certificates over local rings with m^3 = 0")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Prime for built-in algebras; overrides the prime of a spec file.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Homological degree to resolve through (default depends on e).
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest syzygy lower bound per degree before a resolution is truncated.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, global = true, env = "SHORTRES_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants, validation and Conca generators of an algebra.
    Algebra {
        algebra: String,
        #[arg(long)]
        validate: bool,
        #[arg(long)]
        invariants: bool,
        #[arg(long)]
        conca: bool,
        #[arg(long)]
        normalize: bool,
        /// Search for Conca generators over F_{p^d}.
        #[arg(long, default_value_t = 1)]
        extension: u32,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyArg,
    },
    /// Minimal free resolution of a module.
    Resolve(ModuleArgs),
    /// Koszul verdict, syzygy index and p_M(t).
    Koszul(ModuleArgs),
    /// Yoneda algebra presentation and the delta kernel of a module.
    Ext {
        #[command(flatten)]
        target: ModuleArgs,
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        delta: bool,
        #[arg(long)]
        bound_check: bool,
    },
    /// Run the acceptance suite.
    Suite {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
        /// Comma-separated criteria, e.g. A1,A7.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Print one line per instance.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Random,
}

#[derive(Args)]
struct ModuleArgs {
    /// Algebra: a JSON spec path or cx2, cubic, square-zero:E, exterior:E, ex111:E, random:E:R.
    algebra: String,
    /// Module: residue, regular, maximal, negsyz:I, random:G:DENSITY, annihilated:G or a JSON spec path.
    #[arg(long, default_value = "residue")]
    module: String,
}

enum Failure {
    Input(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(m) => Failure::Precondition(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Out = std::result::Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let g = &cli.global;
    let res = match &cli.cmd {
        Cmd::Algebra { algebra, validate, invariants, conca, normalize, extension, strategy } => {
            cmd_algebra(g, algebra, *validate, *invariants, *conca, *normalize, *extension, *strategy)
        }
        Cmd::Resolve(m) => cmd_resolve(g, m),
        Cmd::Koszul(m) => cmd_koszul(g, m),
        Cmd::Ext { target, basis, delta, bound_check } => cmd_ext(g, target, *basis, *delta, *bound_check),
        Cmd::Suite { full, only, verbose, .. } => cmd_suite(g, *full, only, *verbose),
    };
    match res {
        Ok(code) => code,
        Err(Failure::Input(m)) => {
            eprintln!("input error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(m)) => {
            eprintln!("precondition unmet: {m}");
            ExitCode::from(3)
        }
    }
}

fn emit(g: &Global, v: &Value, text: impl FnOnce() -> String) {
    let s = if g.json { serde_json::to_string_pretty(v).expect("reports serialize") + "\n" } else { text() };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().write_all(s.as_bytes());
}

fn field(g: &Global) -> std::result::Result<Field, Failure> {
    Field::prime(g.p.unwrap_or(101)).map_err(|e| Failure::Input(e.to_string()))
}

fn load_algebra(g: &Global, name: &str) -> std::result::Result<ShortAlgebra, Failure> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |i: usize| -> std::result::Result<usize, Failure> {
        parts.get(i).and_then(|s| s.parse().ok()).ok_or_else(|| Failure::Input(format!("bad algebra name {name}")))
    };
    let built = match parts[0] {
        "cx2" => Some(ShortAlgebra::exterior_like(&field(g)?, 2)),
        "cubic" => Some(ShortAlgebra::cubic_truncation(&field(g)?)),
        "square-zero" => Some(ShortAlgebra::square_zero(&field(g)?, num(1)?)),
        "exterior" => Some(ShortAlgebra::exterior_like(&field(g)?, num(1)?)),
        "ex111" => Some(ShortAlgebra::two_square_fiber(&field(g)?, num(1)?)?),
        "random" => {
            use rand::SeedableRng;
            let (e, r) = (num(1)?, num(2)?);
            if r > e * (e + 1) / 2 {
                return Err(Failure::Input(format!("r = {r} exceeds the quadratic monomials for e = {e}")));
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(g.seed);
            Some(ShortAlgebra::random(&field(g)?, e, r, &mut rng))
        }
        _ => None,
    };
    if let Some(a) = built {
        return Ok(a);
    }
    let text = std::fs::read_to_string(Path::new(name)).map_err(|e| Failure::Input(format!("{name}: {e}")))?;
    let mut spec = AlgebraSpec::parse(&text).map_err(|e| Failure::Input(format!("{name}: {e}")))?;
    if let Some(p) = g.p {
        spec.p = p;
    }
    spec.build().map_err(|e| Failure::Input(format!("{name}: {e}")))
}

fn conca_hint(a: &ShortAlgebra) -> Option<Vec<shortres::Elem>> {
    match find_conca(a, Strategy::Exhaustive, 1, 0) {
        Ok(ConcaSearch::Found { x, .. }) => Some(x),
        _ => None,
    }
}

fn load_module(g: &Global, alg: &Arc<ShortAlgebra>, name: &str) -> std::result::Result<FiniteModule, Failure> {
    let parts: Vec<&str> = name.split(':').collect();
    let bad = || Failure::Input(format!("bad module name {name}"));
    match parts[0] {
        "residue" | "k" => Ok(FiniteModule::residue_field(alg.clone())),
        "regular" | "R" => Ok(FiniteModule::regular(alg.clone())),
        "maximal" | "m" => Ok(FiniteModule::maximal_ideal(alg.clone())),
        "negsyz" => {
            let i: usize = parts.get(1).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            Ok(negative_syzygy(alg.clone(), i, ResolveOptions { budget: g.budget, hint: conca_hint(alg) })?)
        }
        "random" => {
            let gens: usize = parts.get(1).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let density: f64 = parts.get(2).map_or(Some(0.5), |s| s.parse().ok()).ok_or_else(bad)?;
            Ok(FiniteModule::random(alg.clone(), gens, density, g.seed)?)
        }
        "annihilated" => {
            let gens: usize = parts.get(1).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let x = conca_hint(alg).ok_or_else(|| Failure::Precondition("no Conca generator to annihilate".into()))?;
            Ok(FiniteModule::annihilated_by(alg.clone(), &x, gens, g.seed)?)
        }
        _ => {
            let text = std::fs::read_to_string(name).map_err(|e| Failure::Input(format!("{name}: {e}")))?;
            let spec = ModuleSpec::parse(&text).map_err(|e| Failure::Input(format!("{name}: {e}")))?;
            spec.build(alg.clone()).map_err(|e| Failure::Input(format!("{name}: {e}")))
        }
    }
}

struct Loaded {
    alg: Arc<ShortAlgebra>,
    module: FiniteModule,
    hint: Option<Vec<shortres::Elem>>,
    depth: usize,
}

fn load(g: &Global, m: &ModuleArgs) -> std::result::Result<Loaded, Failure> {
    let alg = Arc::new(load_algebra(g, &m.algebra)?);
    let module = load_module(g, &alg, &m.module)?;
    let hint = conca_hint(&alg);
    let depth = g.depth.unwrap_or_else(|| default_depth(alg.e()));
    Ok(Loaded { alg, module, hint, depth })
}

#[allow(clippy::too_many_arguments)]
fn cmd_algebra(g: &Global, name: &str, validate: bool, invariants: bool, conca: bool, normalize: bool, d: u32, strategy: StrategyArg) -> Out {
    let a = load_algebra(g, name)?;
    let all = !(validate || invariants || conca || normalize);
    let mut v = json!({});
    let mut text = String::new();
    if validate || all {
        let rep = a.validate();
        for c in &rep.checks {
            text += &format!("check {:<14} {} {}\n", c.name, if c.passed { "ok" } else { "FAILED" }, c.detail);
        }
        v["validation"] = serde_json::to_value(&rep).unwrap();
    }
    if invariants || all {
        let h = a.hilbert();
        text += &format!("e={} r={} s={} dim={}\nhilbert {}\ngorenstein={}\n", a.e(), a.r(), a.socle_rank(), a.dim(), h.to_poly(), a.is_gorenstein());
        v["e"] = json!(a.e());
        v["r"] = json!(a.r());
        v["s"] = json!(a.socle_rank());
        v["dim"] = json!(a.dim());
        v["hilbert"] = json!(h.to_poly().to_string());
        v["gorenstein"] = json!(a.is_gorenstein());
    }
    let mut search = None;
    if conca || normalize || all {
        let st = match strategy {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Random => Strategy::Random,
        };
        let s = find_conca(&a, st, d, g.seed)?;
        v["conca_status"] = json!(s.status());
        match &s {
            ConcaSearch::Found { x, .. } => {
                text += &format!("conca=[{}]\n", x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
                v["conca"] = json!(x);
            }
            ConcaSearch::None => {
                text += "conca=absent\n";
                v["conca"] = Value::Null;
            }
            ConcaSearch::Inconclusive(why) => {
                text += &format!("conca=inconclusive ({why})\n");
                v["conca"] = Value::Null;
            }
        }
        search = Some(s);
    }
    if normalize {
        match search {
            Some(ConcaSearch::Found { x, algebra }) => {
                let na = normalize_basis(&algebra, &x)?;
                let pres = ExtPresentation::from_normalized(&na)?;
                let rels: Vec<String> = (0..pres.r()).map(|h| pres.relation_string(h)).collect();
                text += &format!("normalized basis change (columns = new x_i):\n{}", mat_text(&na.basis_change));
                for r in &rels {
                    text += &format!("relation {r}\n");
                }
                v["normalized"] = serde_json::to_value(AlgebraSpec::from_algebra(&na.algebra)).unwrap();
                v["relations"] = json!(rels);
            }
            _ => text += "normalization skipped: no Conca generator\n",
        }
    }
    emit(g, &v, || text);
    Ok(ExitCode::SUCCESS)
}

fn mat_text(m: &shortres::exactla::Mat) -> String {
    (0..m.rows()).map(|i| format!("  {}\n", m.row(i).iter().map(|c| format!("{c:>4}")).collect::<String>())).collect()
}

fn cmd_resolve(g: &Global, m: &ModuleArgs) -> Out {
    let l = load(g, m)?;
    let res = Resolution::resolve(&l.module, l.depth, ResolveOptions { budget: g.budget, hint: l.hint.clone() })?;
    let rep = res.report();
    let p = res.poincare();
    let denom = Poly::koszul_denominator(l.alg.e(), l.alg.r());
    let fit = if res.truncated() { None } else { rational_fit(&p, &denom)? };
    let v = json!({
        "report": rep,
        "poincare": p.coeffs(),
        "denominator": denom.to_string(),
        "numerator": fit.as_ref().map(|q| q.to_string()),
        "stats": res.stats(),
    });
    emit(g, &v, || {
        let mut s = format!("hilbert ({})\n n  beta  dim_syzygy\n", rep.hilbert.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        for (n, b) in rep.betti.iter().enumerate() {
            s += &format!("{n:>2} {b:>5} {:>11}\n", rep.dims[n]);
        }
        s += &format!("poincare {p}\n");
        if rep.truncated {
            s += &format!("truncated: budget {} exceeded after degree {}\n", g.budget, res.depth());
        }
        match &fit {
            Some(q) => s += &format!("P_M(t) = ({q}) / ({denom})\n"),
            None => s += &format!("no rational fit over {denom} in the computed window\n"),
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_koszul(g: &Global, m: &ModuleArgs) -> Out {
    let l = load(g, m)?;
    let mut res = Resolution::new(&l.module, ResolveOptions { budget: g.budget, hint: l.hint.clone() })?;
    let verdict = is_koszul_resolved(&mut res, l.depth)?;
    let rat = if l.depth >= 4 { Some(rationality_resolved(&mut res, l.depth)?) } else { None };
    let index = rat.as_ref().and_then(|r| r.index);
    let numerator = rat.as_ref().and_then(|r| r.numerator.clone());
    let v = json!({
        "verdict": verdict,
        "label": verdict.label(),
        "syzygy_index": index,
        "p_M": numerator.as_ref().map(|q| q.to_string()),
        "rationality": rat,
        "truncated": res.truncated(),
    });
    emit(g, &v, || {
        let mut s = format!("verdict {}\n", verdict.label());
        s += &format!("syzygy index {}\n", index.map_or("not found within the depth".to_string(), |i| i.to_string()));
        if let Some(q) = &numerator {
            s += &format!("p_M(t) = {q}\n");
        }
        if res.truncated() {
            s += &format!("truncated: budget {} exceeded after degree {}\n", g.budget, res.depth());
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_ext(g: &Global, m: &ModuleArgs, basis: bool, delta: bool, bound_check: bool) -> Out {
    let l = load(g, m)?;
    let x = l.hint.clone().ok_or_else(|| Failure::Precondition("presentation theorem inapplicable: the algebra has no Conca generator".into()))?;
    let na = normalize_basis(&l.alg, &x)?;
    let pres = ExtPresentation::from_normalized(&na)?;
    let all = !(basis || delta || bound_check);
    let depth = l.depth;
    let w: Vec<usize> = (0..=depth).map(|n| pres.reduced_words(n).len()).collect();
    let relations: Vec<String> = (0..pres.r()).map(|h| pres.relation_string(h)).collect();
    let mut report = ExtReport { w, relations, f_dims: Vec::new(), f_generators: Vec::new(), bound_lhs: None, bound_rhs: None };
    let mut text = String::new();
    if basis || all {
        let dc = dimension_check(&pres, depth, None)?;
        text += &format!("w = {}\n", report.w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        for r in &report.relations {
            text += &format!("relation {r}\n");
        }
        text += &format!("reduced words agree with 1/(1-et+rt^2): {}\n", dc.passed);
    }
    if delta || bound_check || (all && l.module.radical_square().rank() == 0) {
        if l.module.radical_square().rank() != 0 {
            return Err(Failure::Precondition("the delta map needs m^2 M = 0".into()));
        }
        let dm = delta_map(&na, &l.module)?;
        let kf = kernel_f(&pres, &dm, depth)?;
        text += &format!("delta: h0={} h1={}\nF dims = {}\nF generators = {}\n", dm.h0, dm.h1, list(&kf.dims), list(&kf.generators));
        report.f_dims = kf.dims.clone();
        report.f_generators = kf.generators.clone();
        if bound_check || all {
            let (b, _) = bound_equality_check(&na, &l.module, depth, ResolveOptions { budget: g.budget, hint: Some(x.clone()) })?;
            let show = |o: Option<usize>| o.map_or("undetermined".to_string(), |v| v.to_string());
            text += &format!("bound check: lhs={} rhs={} {}\n", show(b.lhs), show(b.rhs), if b.passed { "equal" } else { "NOT equal" });
            report.bound_lhs = b.lhs;
            report.bound_rhs = b.rhs;
        }
    }
    emit(g, &serde_json::to_value(&report).unwrap(), || text);
    Ok(ExitCode::SUCCESS)
}

fn list(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_suite(g: &Global, full: bool, only: &[String], verbose: bool) -> Out {
    let cfg = SuiteConfig { mode: if full { Mode::Full } else { Mode::Quick }, seed: g.seed, threads: g.threads, only: only.to_vec() };
    let rep = suite::run(&cfg)?;
    let canonical = rep.canonical();
    emit(g, &serde_json::to_value(&canonical).unwrap(), || rep.transcript(verbose));
    for c in &rep.results {
        eprintln!("{} {:.1}s", c.id, c.seconds.unwrap_or(0.0));
    }
    if rep.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("acceptance failure: {}", rep.failures().join(", "));
        Ok(ExitCode::from(1))
    }
}
