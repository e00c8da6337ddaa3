//! The `chulogic` command line. Exit codes: 0 success, 1 semantic failure
//! (syntax error in an input, failed law, diff mismatch, failing axiom),
//! 2 usage or I/O error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::lattice::{BUILTIN_SPACES, ZOO};
use crate::models::{resolve_model, AffineModel, AnyModel};
use crate::semantics::{
    eval, holds_sequent, implicit_signature, law_suite, load_structure, search_countermodel, LawOptions, SearchOptions, SearchOutcome,
    SearchProblem, SequentWitness, Structure, StructureJson, Suite,
};
use crate::syntax::{
    parse_linear, parse_linear_sequent, parse_linear_with, parse_theory, LinearFormula, Sequent, SyntaxError, Term, Theory,
};
use crate::translate::{check_against, render_iseq, translate_theory, TranslationJson};
use crate::with_model;

pub const PARSE_SCHEMA: &str = "chulogic.parse/v1";
pub const EVAL_SCHEMA: &str = "chulogic.eval/v1";
pub const DIFF_SCHEMA: &str = "chulogic.iseq-diff/v1";
pub const CHECK_SCHEMA: &str = "chulogic.check/v1";
pub const SEARCH_SCHEMA: &str = "chulogic.search/v1";
pub const MODELS_SCHEMA: &str = "chulogic.models/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "chulogic", version, about = "Chu-construction models of affine logic and the dual-pair translation")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "CHULOGIC_FORMAT", default_value = "text")]
    pub format: Format,
    /// Worker threads for parallel commands (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for every randomized protocol.
    #[arg(long, global = true, default_value_t = 0x5EED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse formulas (one per line), sequents, or a `.llt` theory and dump the AST.
    Parse(ParseArgs),
    /// Evaluate a formula in a model.
    Eval(EvalArgs),
    /// Run law suites over models.
    Laws(LawsArgs),
    /// Expand a theory into intuitionistic sequents.
    Translate(TranslateArgs),
    /// Check every axiom of a theory in a structure.
    Check(CheckArgs),
    /// Look for a finite countermodel.
    Search(SearchArgs),
    /// List the builtin models.
    Models,
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    /// Input file; `.llt` is read as a theory.
    #[arg(required_unless_present = "expr")]
    pub path: Option<PathBuf>,
    /// Parse this text instead of a file.
    #[arg(short, long, conflicts_with = "path")]
    pub expr: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub formula: String,
    #[arg(long, short)]
    pub model: String,
    /// Value of a nullary atom, e.g. `--set P=N`.
    #[arg(long = "set", value_name = "ATOM=VALUE")]
    pub sets: Vec<String>,
    /// Size of each quantified sort when no structure is given.
    #[arg(long, default_value_t = 2)]
    pub domain: usize,
    /// Signature for `--structure`.
    #[arg(long, requires = "structure")]
    pub theory: Option<PathBuf>,
    #[arg(long, requires = "theory")]
    pub structure: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LawsArgs {
    /// Suite id (core, chu-special, exponential); repeatable, default all.
    #[arg(long)]
    pub suite: Vec<String>,
    /// Model id; repeatable, default the Chu(H,0) zoo.
    #[arg(long)]
    pub model: Vec<String>,
    /// Random assignments after the grid on infinite carriers.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    pub theory: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Golden `.iseq` file; exit 1 unless the sequent sets agree.
    #[arg(long)]
    pub diff: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub theory: PathBuf,
    pub structure: PathBuf,
    /// Defaults to the model named in the structure file.
    #[arg(long, short)]
    pub model: Option<String>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Signature and background axioms.
    pub theory: Option<PathBuf>,
    #[arg(long, short)]
    pub model: String,
    #[arg(long, default_value_t = 2)]
    pub max_domain: usize,
    /// Sequent to refute, e.g. `|- p + ~p`.
    #[arg(long, required_unless_present = "axiom", conflicts_with = "axiom")]
    pub goal: Option<String>,
    /// Refute this axiom of the theory from the others.
    #[arg(long, requires = "theory")]
    pub axiom: Option<String>,
    #[arg(long, default_value_t = 5_000_000)]
    pub node_cap: u64,
    /// Write the countermodel here as structure JSON.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// A failed command: its exit code and message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, message: msg.into() }
}

fn semantic(msg: impl Into<String>) -> Failure {
    Failure { code: 1, message: msg.into() }
}

/// Output of a successful run; `code` is 1 when the report records a failure.
pub struct Report {
    pub code: u8,
    pub stdout: String,
}

fn ok(stdout: String) -> Result<Report, Failure> {
    Ok(Report { code: 0, stdout })
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn model(id: &str) -> Result<AnyModel, Failure> {
    resolve_model(id).map_err(|e| usage(e.to_string()))
}

fn theory(path: &Path) -> Result<Theory, Failure> {
    parse_theory(&read(path)?).map_err(|e| semantic(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.stdout);
            ExitCode::from(r.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let f = cli.format;
    match &cli.command {
        Command::Parse(a) => cmd_parse(a, f),
        Command::Eval(a) => cmd_eval(a, f),
        Command::Laws(a) => cmd_laws(a, f, cli.seed),
        Command::Translate(a) => cmd_translate(a, f),
        Command::Check(a) => cmd_check(a, f),
        Command::Search(a) => cmd_search(a, f),
        Command::Models => cmd_models(f),
    }
}

fn sexp_term(t: &Term) -> String {
    match t {
        Term::Var(v) => v.clone(),
        Term::App(g, args) if args.is_empty() => g.clone(),
        Term::App(g, args) => format!("({g} {})", args.iter().map(sexp_term).collect::<Vec<_>>().join(" ")),
    }
}

/// Fully parenthesized prefix form of a formula.
pub fn sexp(f: &LinearFormula) -> String {
    use LinearFormula::*;
    let bin = |op: &str, a: &LinearFormula, b: &LinearFormula| format!("({op} {} {})", sexp(a), sexp(b));
    match f {
        Atom(p, args) if args.is_empty() => format!("(atom {p})"),
        Atom(p, args) => format!("(atom {p} {})", args.iter().map(sexp_term).collect::<Vec<_>>().join(" ")),
        Top => "top".into(),
        Bot => "bot".into(),
        Tensor(a, b) => bin("tensor", a, b),
        Par(a, b) => bin("par", a, b),
        With(a, b) => bin("with", a, b),
        Plus(a, b) => bin("plus", a, b),
        Limp(a, b) => bin("limp", a, b),
        Liff(a, b) => bin("liff", a, b),
        Neg(a) => format!("(neg {})", sexp(a)),
        Bang(a) => format!("(bang {})", sexp(a)),
        WhyNot(a) => format!("(whynot {})", sexp(a)),
        Forall(x, s, b) => format!("(forall {x}:{s} {})", sexp(b)),
        Exists(x, s, b) => format!("(exists {x}:{s} {})", sexp(b)),
    }
}

fn sexp_sequent(s: &Sequent) -> String {
    let ctx: Vec<String> = s.context.iter().map(|(x, t)| format!("{x}:{t}")).collect();
    let hyps: Vec<String> = s.hypotheses.iter().map(sexp).collect();
    format!("(sequent ({}) ({}) {})", ctx.join(" "), hyps.join(" "), sexp(&s.conclusion))
}

#[derive(Serialize)]
struct ParsedItem {
    line: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    ast: String,
}

#[derive(Serialize)]
struct ParseJson {
    schema: &'static str,
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    theory: Option<String>,
    items: Vec<ParsedItem>,
}

fn relocate(e: SyntaxError, line: usize) -> SyntaxError {
    match e {
        SyntaxError::Parse { col, msg, .. } => SyntaxError::Parse { line, col, msg },
        e => SyntaxError::AtLine { line, source: Box::new(e) },
    }
}

fn cmd_parse(a: &ParseArgs, f: Format) -> Result<Report, Failure> {
    let (source, text) = match (&a.path, &a.expr) {
        (_, Some(e)) => ("<expr>".to_string(), e.clone()),
        (Some(p), None) => (p.display().to_string(), read(p)?),
        (None, None) => return Err(usage("nothing to parse")),
    };
    let mut out = ParseJson { schema: PARSE_SCHEMA, source: source.clone(), theory: None, items: vec![] };
    if a.path.as_ref().is_some_and(|p| p.extension().is_some_and(|x| x == "llt")) {
        let th = parse_theory(&text).map_err(|e| semantic(format!("{source}:{e}")))?;
        out.items =
            th.axioms.iter().map(|ax| ParsedItem { line: ax.line, name: Some(ax.name.clone()), ast: sexp_sequent(&ax.sequent) }).collect();
        out.theory = Some(th.name);
    } else {
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let ast = if body.contains("|-") {
                parse_linear_sequent(body, None).map(|s| sexp_sequent(&s))
            } else {
                parse_linear(body).map(|f| sexp(&f))
            };
            // Columns refer to the trimmed text; shift them back to the raw line.
            let lead = line.len() - line.trim_start().len();
            let ast = ast.map_err(|e| match relocate(e, i + 1) {
                SyntaxError::Parse { line, col, msg } => SyntaxError::Parse { line, col: col + lead, msg },
                e => e,
            });
            out.items.push(ParsedItem { line: i + 1, name: None, ast: ast.map_err(|e| semantic(format!("{source}:{e}")))? });
        }
    }
    match f {
        Format::Json => ok(json(&out)),
        Format::Text => {
            let mut s = String::new();
            if let Some(t) = &out.theory {
                let _ = writeln!(s, "theory {t}");
            }
            for it in &out.items {
                match &it.name {
                    Some(n) => {
                        let _ = writeln!(s, "{n}: {}", it.ast);
                    }
                    None => {
                        let _ = writeln!(s, "{}", it.ast);
                    }
                }
            }
            ok(s)
        }
    }
}

#[derive(Serialize)]
struct EvalJson {
    schema: &'static str,
    model: String,
    formula: String,
    value: String,
}

fn eval_in<M: AffineModel>(m: &M, a: &EvalArgs) -> Result<String, Failure> {
    let (f, s) = match (&a.theory, &a.structure) {
        (Some(tp), Some(sp)) => {
            let th = theory(tp)?;
            let f = parse_linear_with(&a.formula, Some(&th)).map_err(|e| semantic(format!("formula: {e}")))?;
            let s = load_structure(&read(sp)?, &th, m).map_err(|e| semantic(format!("{}: {e}", sp.display())))?;
            (f, s)
        }
        _ => {
            let f = parse_linear(&a.formula).map_err(|e| semantic(format!("formula: {e}")))?;
            let seq = Sequent { context: vec![], hypotheses: vec![], conclusion: f.clone() };
            let sig = implicit_signature(&seq).map_err(|e| semantic(e.to_string()))?;
            let sizes = sig.sorts.iter().map(|s| (s.clone(), a.domain)).collect::<BTreeMap<_, _>>();
            let mut s = Structure::new(&m.id(), &sig, &sizes, m.bot(), m.top());
            let mut given = BTreeMap::new();
            for kv in &a.sets {
                let (k, v) = kv.split_once('=').ok_or_else(|| usage(format!("--set `{kv}` is not ATOM=VALUE")))?;
                let v = m.parse_elem(v.trim()).map_err(|e| usage(e.to_string()))?;
                let t = s.pred_mut(k.trim()).ok_or_else(|| usage(format!("`{k}` does not occur in the formula")))?;
                if !t.arg_sorts.is_empty() {
                    return Err(usage(format!("`{k}` takes arguments; give a --theory and --structure")));
                }
                t.set(&[], v);
                given.insert(k.trim().to_string(), ());
            }
            if let Some(p) = sig.preds.iter().find(|p| !given.contains_key(&p.name)) {
                return Err(usage(format!("no value for `{}`; pass --set {}=...", p.name, p.name)));
            }
            (f, s)
        }
    };
    let v = eval(m, &s, &f, &mut Vec::new()).map_err(|e| semantic(e.to_string()))?;
    Ok(m.format_elem(v))
}

fn cmd_eval(a: &EvalArgs, f: Format) -> Result<Report, Failure> {
    let any = model(&a.model)?;
    let value = with_model!(&any, m => eval_in(m, a))?;
    match f {
        Format::Json => ok(json(&EvalJson { schema: EVAL_SCHEMA, model: any.id(), formula: a.formula.clone(), value })),
        Format::Text => ok(format!("{value}\n")),
    }
}

fn cmd_laws(a: &LawsArgs, f: Format, seed: u64) -> Result<Report, Failure> {
    let suites = if a.suite.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suite.iter().map(|s| Suite::parse(s).ok_or_else(|| usage(format!("unknown suite `{s}`")))).collect::<Result<_, _>>()?
    };
    let ids: Vec<String> = if a.model.is_empty() { ZOO.iter().map(|h| format!("chu0:{h}")).collect() } else { a.model.clone() };
    let models = ids.iter().map(|id| model(id)).collect::<Result<Vec<_>, _>>()?;
    let report = law_suite(&suites, &models, LawOptions { seed, samples: a.samples });
    let body = match f {
        Format::Json => json(&report),
        Format::Text => {
            let bad = report.unexpected_failures().len();
            format!("{}{} rows, {bad} unexpected failures\n", report.render_text(), report.rows.len())
        }
    };
    let code = u8::from(!report.unexpected_failures().is_empty());
    match &a.output {
        Some(p) => {
            write(p, &body)?;
            Ok(Report { code, stdout: String::new() })
        }
        None => Ok(Report { code, stdout: body }),
    }
}

#[derive(Serialize)]
struct DiffJson {
    schema: &'static str,
    theory: String,
    golden: String,
    #[serde(rename = "match")]
    matches: bool,
    missing: Vec<String>,
    unexpected: Vec<String>,
}

fn cmd_translate(a: &TranslateArgs, f: Format) -> Result<Report, Failure> {
    let th = theory(&a.theory)?;
    let src = a.theory.display().to_string();
    let seqs = translate_theory(&th).map_err(|e| semantic(format!("{src}: {e}")))?;
    let rendered = match f {
        Format::Json => json(&TranslationJson::new(&th.name, &seqs)),
        Format::Text => render_iseq(&seqs),
    };
    if let Some(p) = &a.output {
        write(p, &rendered)?;
    }
    let Some(gp) = &a.diff else {
        return ok(if a.output.is_some() { String::new() } else { rendered });
    };
    let diff = check_against(&th, &read(gp)?).map_err(|e| semantic(format!("{}: {e}", gp.display())))?;
    let code = u8::from(!diff.is_match());
    let stdout = match f {
        Format::Json => json(&DiffJson {
            schema: DIFF_SCHEMA,
            theory: th.name.clone(),
            golden: gp.display().to_string(),
            matches: diff.is_match(),
            missing: diff.missing.clone(),
            unexpected: diff.unexpected.clone(),
        }),
        Format::Text if diff.is_match() => format!("{}: {} sequents match {}\n", th.name, seqs.len(), gp.display()),
        Format::Text => format!("{}: differs from {}\n{}", th.name, gp.display(), diff.render()),
    };
    Ok(Report { code, stdout })
}

#[derive(Serialize)]
struct AxiomRow {
    axiom: String,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<SequentWitness>,
}

#[derive(Serialize)]
struct CheckJson {
    schema: &'static str,
    theory: String,
    model: String,
    axioms: Vec<AxiomRow>,
}

fn witness_text(w: &SequentWitness) -> String {
    let vals: Vec<String> = w.valuation.iter().map(|(x, e)| format!("{x}={e}")).collect();
    let at = if vals.is_empty() { String::new() } else { format!(" at {}", vals.join(" ")) };
    format!("{at} (hypotheses {}, conclusion {})", w.hypotheses, w.conclusion)
}

fn check_in<M: AffineModel>(m: &M, th: &Theory, text: &str, path: &Path) -> Result<Vec<AxiomRow>, Failure> {
    let s = load_structure(text, th, m).map_err(|e| semantic(format!("{}: {e}", path.display())))?;
    th.axioms
        .iter()
        .map(|ax| {
            let w = holds_sequent(m, &ax.sequent, &s).map_err(|e| semantic(format!("{}: {e}", ax.name)))?;
            Ok(AxiomRow { axiom: ax.name.clone(), holds: w.is_none(), witness: w })
        })
        .collect()
}

fn cmd_check(a: &CheckArgs, f: Format) -> Result<Report, Failure> {
    let th = theory(&a.theory)?;
    let text = read(&a.structure)?;
    let id = match &a.model {
        Some(id) => id.clone(),
        None => serde_json::from_str::<StructureJson>(&text).map_err(|e| semantic(format!("{}: {e}", a.structure.display())))?.model,
    };
    let any = model(&id)?;
    let rows = with_model!(&any, m => check_in(m, &th, &text, &a.structure))?;
    let code = u8::from(rows.iter().any(|r| !r.holds));
    let stdout = match f {
        Format::Json => json(&CheckJson { schema: CHECK_SCHEMA, theory: th.name.clone(), model: any.id(), axioms: rows }),
        Format::Text => {
            let mut s = format!("theory {} in {}\n", th.name, any.id());
            for r in &rows {
                let _ = match &r.witness {
                    None => writeln!(s, "{:<16} HOLDS", r.axiom),
                    Some(w) => writeln!(s, "{:<16} FAILS{}", r.axiom, witness_text(w)),
                };
            }
            s
        }
    };
    Ok(Report { code, stdout })
}

#[derive(Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
enum SearchResult {
    Found { witness: SequentWitness, structure: StructureJson, explored: u64 },
    NoneUpToBound { max_domain: usize, explored: u64 },
    CapExceeded { explored: u64 },
}

#[derive(Serialize)]
struct SearchJson {
    schema: &'static str,
    model: String,
    goal: String,
    #[serde(flatten)]
    result: SearchResult,
}

/// One `name(args) = value` line per table cell.
pub fn structure_text(s: &StructureJson) -> String {
    let mut out = String::new();
    for (sort, els) in &s.domains {
        let _ = writeln!(out, "sort {sort} = {{{}}}", els.join(", "));
    }
    for (c, v) in &s.consts {
        let _ = writeln!(out, "{c} = {v}");
    }
    for (name, rows) in s.funcs.iter().chain(&s.preds) {
        for (k, v) in rows {
            let _ = if k.is_empty() { writeln!(out, "{name} = {v}") } else { writeln!(out, "{name}({k}) = {v}") };
        }
    }
    out
}

fn search_in<M: AffineModel>(m: &M, p: &SearchProblem, opts: SearchOptions) -> Result<SearchResult, Failure> {
    Ok(match search_countermodel(m, p, opts).map_err(|e| usage(e.to_string()))? {
        SearchOutcome::Found { structure, witness, explored } => SearchResult::Found { witness, structure: structure.to_json(m), explored },
        SearchOutcome::NoneUpToBound { max_domain, explored } => SearchResult::NoneUpToBound { max_domain, explored },
        SearchOutcome::CapExceeded { explored } => SearchResult::CapExceeded { explored },
    })
}

fn cmd_search(a: &SearchArgs, f: Format) -> Result<Report, Failure> {
    let any = model(&a.model)?;
    let th = a.theory.as_deref().map(theory).transpose()?;
    let (problem, goal_text) = match (&th, &a.axiom, &a.goal) {
        (Some(th), Some(name), _) => {
            let ax = th.axiom(name).ok_or_else(|| usage(format!("no axiom `{name}` in {}", th.name)))?;
            let background = th.axioms.iter().filter(|b| b.name != *name).map(|b| b.sequent.clone()).collect();
            (SearchProblem { signature: th.clone(), background, goal: ax.sequent.clone() }, name.clone())
        }
        (Some(th), None, Some(g)) => {
            let goal = parse_linear_sequent(g, Some(th)).map_err(|e| semantic(format!("goal: {e}")))?;
            (SearchProblem { signature: th.clone(), background: th.axioms.iter().map(|b| b.sequent.clone()).collect(), goal }, g.clone())
        }
        (None, _, Some(g)) => {
            let goal = parse_linear_sequent(g, None).map_err(|e| semantic(format!("goal: {e}")))?;
            let signature = implicit_signature(&goal).map_err(|e| semantic(format!("goal: {e}")))?;
            (SearchProblem { signature, background: vec![], goal }, g.clone())
        }
        _ => return Err(usage("give --goal, or a theory with --axiom")),
    };
    let opts = SearchOptions { max_domain: a.max_domain, node_cap: a.node_cap };
    let result = with_model!(&any, m => search_in(m, &problem, opts))?;
    if let (Some(p), SearchResult::Found { structure, .. }) = (&a.output, &result) {
        write(p, &json(structure))?;
    }
    let code = u8::from(matches!(result, SearchResult::CapExceeded { .. }));
    let stdout = match f {
        Format::Json => json(&SearchJson { schema: SEARCH_SCHEMA, model: any.id(), goal: goal_text, result }),
        Format::Text => match &result {
            SearchResult::Found { witness, structure, explored } => {
                format!(
                    "countermodel in {} after {explored} nodes, goal fails{}\n{}",
                    any.id(),
                    witness_text(witness),
                    structure_text(structure)
                )
            }
            SearchResult::NoneUpToBound { max_domain, explored } => {
                format!("none up to bound (domains <= {max_domain}, {explored} nodes)\n")
            }
            SearchResult::CapExceeded { explored } => format!("node cap exceeded after {explored} nodes\n"),
        },
    };
    Ok(Report { code, stdout })
}

#[derive(Serialize)]
struct ModelEntry {
    id: String,
    kind: crate::models::ModelKind,
    elements: usize,
    exhaustive: bool,
}

#[derive(Serialize)]
struct ModelsJson {
    schema: &'static str,
    models: Vec<ModelEntry>,
}

/// Every builtin model id: the Chu zoo in both variants, then the others.
pub fn builtin_model_ids() -> Vec<String> {
    let mut ids: Vec<String> = ZOO.iter().map(|h| format!("chu0:{h}")).collect();
    ids.extend(ZOO.iter().map(|h| format!("chu1:{h}")));
    ids.push("luk:grid5".into());
    ids.extend(BUILTIN_SPACES.iter().map(|s| format!("int:{s}")));
    ids
}

fn cmd_models(f: Format) -> Result<Report, Failure> {
    let models = builtin_model_ids()
        .iter()
        .map(|id| {
            let any = model(id)?;
            let (elements, exhaustive) = with_model!(&any, m => (m.elements().len(), m.is_exhaustive()));
            Ok(ModelEntry { id: any.id(), kind: any.kind(), elements, exhaustive })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    match f {
        Format::Json => ok(json(&ModelsJson { schema: MODELS_SCHEMA, models })),
        Format::Text => {
            let mut s = String::new();
            for e in &models {
                let size = if e.exhaustive { format!("{} elements", e.elements) } else { format!("grid of {}", e.elements) };
                let _ = writeln!(s, "{:<24} {size}", e.id);
            }
            s.push_str("also: luk:gridN (2..=65), chu0:/chu1: over chainN, boolN, downset:@poset.json, opens:@space.json\n");
            ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print_linear;

    #[test]
    fn sexp_shape() {
        let f = parse_linear("!(p * q) -o \\/x:D. A(x)").unwrap();
        assert_eq!(sexp(&f), "(limp (bang (tensor (atom p) (atom q))) (exists x:D (atom A x)))");
    }

    #[test]
    fn print_and_sexp_agree_on_reparse() {
        let f = parse_linear("~(p & q) + ?r").unwrap();
        assert_eq!(sexp(&parse_linear(&print_linear(&f)).unwrap()), sexp(&f));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
