//! The eight acceptance criteria, one PASS/FAIL line each.
//!
//!     cargo test --release --test acceptance

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use chulogic::chu::{ChuModel, ChuProp, ChuVariant};
use chulogic::cli::builtin_model_ids;
use chulogic::lattice::{resolve_lattice, ZOO};
use chulogic::models::{resolve_model, AffineModel, AnyModel, Rational};
use chulogic::semantics::{
    implicit_signature, law, law_suite, metric_verdict, replay_witness, search_countermodel, LawOptions, LawStatus, LawWitness,
    SearchOptions, SearchOutcome, SearchProblem, Suite,
};
use chulogic::syntax::{parse_linear_sequent, parse_theory};
use chulogic::translate::{check_against, verify_random};
use chulogic::with_model;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn chu(h: &str, v: ChuVariant) -> ChuModel {
    ChuModel::new(resolve_lattice(h).unwrap(), v).unwrap()
}

// Halves: 0, 1, 2 stand for 0, 1/2, 1.
fn luk3(op: &str, a: i32, b: i32) -> i32 {
    match op {
        "tensor" => (a + b - 2).max(0),
        "par" => (a + b).min(2),
        "with" => a.min(b),
        "plus" => a.max(b),
        "limp" => (2 - a + b).min(2),
        "neg" => 2 - a,
        "bang" => {
            if a == 2 {
                2
            } else {
                0
            }
        }
        "whynot" => {
            if a == 0 {
                0
            } else {
                2
            }
        }
        _ => unreachable!(),
    }
}

fn three_valued() -> Outcome {
    let m = chu("chain2", ChuVariant::Strict0);
    let els = m.enumerate().to_vec();
    if els.len() != 3 {
        return Err(format!("{} elements", els.len()));
    }
    let code = |p: ChuProp| match m.format(p).as_str() {
        "(1,0)" => 2,
        "(0,0)" => 1,
        "(0,1)" => 0,
        s => panic!("unexpected element {s}"),
    };
    let mut cells = 0;
    for op in ["tensor", "par", "with", "plus", "limp"] {
        for &a in &els {
            for &b in &els {
                let got = match op {
                    "tensor" => m.tensor(a, b),
                    "par" => m.par(a, b),
                    "with" => m.with(a, b),
                    "plus" => m.plus(a, b),
                    _ => m.limp(a, b),
                };
                if code(got) != luk3(op, code(a), code(b)) {
                    return Err(format!("{} {op} {}", m.format(a), m.format(b)));
                }
                cells += 1;
            }
        }
    }
    for op in ["neg", "bang", "whynot"] {
        for &a in &els {
            let got = match op {
                "neg" => m.neg(a),
                "bang" => m.bang(a),
                _ => m.whynot(a),
            };
            if code(got) != luk3(op, code(a), 0) {
                return Err(format!("{op} {}", m.format(a)));
            }
            cells += 1;
        }
    }
    Ok(format!("3 elements, {cells} table cells equal"))
}

fn chu0_zoo() -> Vec<AnyModel> {
    ZOO.iter().map(|h| resolve_model(&format!("chu0:{h}")).unwrap()).collect()
}

fn chu_law_suite() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let models = chu0_zoo();
    let too_big: Vec<String> = models
        .iter()
        .filter_map(|m| match m {
            AnyModel::Chu(c) if c.base().size() > 16 => Some(c.model_id()),
            _ => None,
        })
        .collect();
    if !too_big.is_empty() {
        return Err(format!("zoo algebras above 16 elements: {too_big:?}"));
    }
    let report = pool.install(|| law_suite(&Suite::ALL, &models, LawOptions::default()));
    let fails: Vec<String> =
        report.rows.iter().filter(|r| matches!(r.status, LawStatus::Fails { .. })).map(|r| format!("{} on {}", r.law, r.model)).collect();
    let holds = report.rows.iter().filter(|r| r.status == LawStatus::Holds).count();
    if fails.is_empty() {
        Ok(format!("{} algebras, {holds} laws hold, {} skipped", models.len(), report.rows.len() - holds))
    } else {
        Err(format!("{} failures: {}", fails.len(), fails.join(", ")))
    }
}

fn chu1_mix() -> Outcome {
    for h in ZOO {
        let m = chu(h, ChuVariant::Chu1);
        let els = m.enumerate().to_vec();
        let one = m.base().top();
        let both = ChuProp { pf: one, rf: one };
        let tensor_units: Vec<ChuProp> = els.iter().copied().filter(|&u| els.iter().all(|&a| m.tensor(u, a) == a)).collect();
        let par_units: Vec<ChuProp> = els.iter().copied().filter(|&u| els.iter().all(|&a| m.par(u, a) == a)).collect();
        if tensor_units != [both] || par_units != [both] {
            return Err(format!("chu1:{h}: tensor units {tensor_units:?}, par units {par_units:?}"));
        }
    }
    Ok(format!("{} algebras, both units are (1,1)", ZOO.len()))
}

fn translation_soundness() -> Outcome {
    let mut trials = 0;
    let mut algebras = 0;
    for h in ZOO {
        let m = chu(h, ChuVariant::Strict0);
        if m.base().size() > 8 {
            continue;
        }
        algebras += 1;
        let r = verify_random(&m, 1000, 6, 0xACCE55).map_err(|e| format!("{h}: {e}"))?;
        if !r.all_agree() {
            return Err(format!("{h}: {}/{} agree, first {:?}", r.agreements, r.trials, r.mismatches.first()));
        }
        trials += r.trials;
    }
    Ok(format!("{trials} formula evaluations over {algebras} algebras agree"))
}

fn corpus_fidelity() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let names = [
        "set-equality",
        "strong-set",
        "complemented-subset",
        "function",
        "subgroup",
        "strong-subgroup",
        "partial-order",
        "strong-partial-order",
        "total-or",
        "total-par",
    ];
    for n in names {
        let th = parse_theory(&std::fs::read_to_string(dir.join(format!("{n}.llt"))).unwrap()).map_err(|e| format!("{n}: {e}"))?;
        let golden = std::fs::read_to_string(dir.join(format!("{n}.iseq"))).unwrap();
        let d = check_against(&th, &golden).map_err(|e| format!("{n}: {e}"))?;
        if !d.is_match() {
            return Err(format!("{n}:\n{}", d.render()));
        }
    }
    Ok(format!("{} goldens match", names.len()))
}

fn model_differentiation() -> Outcome {
    let luk = resolve_model("luk:grid5").unwrap();
    let int = resolve_model("int:3pt").unwrap();
    let report = law_suite(&Suite::ALL, &[luk.clone(), int.clone()], LawOptions::default());
    let row = |name: &str, model: &str| report.rows.iter().find(|r| r.law == name && r.model == model).unwrap();
    let witness = |name: &str, model: &str| match &row(name, model).status {
        LawStatus::Fails { witness } => Ok(witness.clone()),
        s => Err(format!("{name} on {model}: {s:?}")),
    };
    let at = |w: &LawWitness| w.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");

    let sq = witness("bang-squaring", "luk:grid5")?;
    if at(&sq) != "P=3/4" {
        return Err(format!("bang-squaring witness {}", at(&sq)));
    }
    let ed = witness("exp-dist", "int:3pt")?;
    if at(&ed) != "P={a}" {
        return Err(format!("exp-dist witness {}", at(&ed)));
    }
    witness("exact-exp", "int:3pt")?;
    let given =
        LawWitness { assignment: vec![("P".into(), "{a,b}".into()), ("Q".into(), "{b,c}".into())], lhs: String::new(), rhs: String::new() };
    let replays = [
        with_model!(&luk, m => replay_witness(law("bang-squaring").unwrap(), m, &sq)),
        with_model!(&int, m => replay_witness(law("exp-dist").unwrap(), m, &ed)),
        with_model!(&int, m => replay_witness(law("exact-exp").unwrap(), m, &given)),
    ];
    if replays.iter().any(|r| r != &Ok(true)) {
        return Err(format!("replays: {replays:?}"));
    }
    let bad: Vec<String> = report
        .rows
        .iter()
        .filter(|r| (r.suite == Suite::Core || r.law == "seely") && matches!(r.status, LawStatus::Fails { .. }))
        .map(|r| format!("{} on {}", r.law, r.model))
        .collect();
    if !bad.is_empty() {
        return Err(format!("core/seely failures: {}", bad.join(", ")));
    }
    Ok("bang-squaring at P=3/4, exp-dist at P={a}, exact-exp at P={a,b} Q={b,c}; core and seely hold".into())
}

fn dist(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(0..=12), 12)
}

/// Mixes arbitrary symmetric matrices with points on a line and ultrametrics
/// built from random merge heights, so every verdict class shows up.
fn random_matrix(rng: &mut ChaCha8Rng, i: usize) -> Vec<Vec<Rational>> {
    let n = 4;
    let mut d = vec![vec![Rational::zero(); n]; n];
    match i % 3 {
        0 => {
            for a in 0..n {
                for b in a + 1..n {
                    d[a][b] = dist(rng);
                    d[b][a] = d[a][b];
                }
            }
        }
        1 => {
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=12)).collect();
            for a in 0..n {
                for b in 0..n {
                    d[a][b] = Rational::new((x[a] - x[b]).abs(), 12);
                }
            }
        }
        _ => {
            // Merge clusters in random order at nondecreasing heights.
            let mut cluster: Vec<usize> = (0..n).collect();
            let mut h = 0;
            for _ in 0..n - 1 {
                h = rng.gen_range(h..=12);
                let roots: Vec<usize> = {
                    let mut r = cluster.clone();
                    r.sort();
                    r.dedup();
                    r
                };
                let a = roots[rng.gen_range(0..roots.len())];
                let b = *roots.iter().filter(|&&r| r != a).nth(rng.gen_range(0..roots.len() - 1)).unwrap();
                for u in 0..n {
                    for v in 0..n {
                        if cluster[u] == a && cluster[v] == b || cluster[u] == b && cluster[v] == a {
                            d[u][v] = Rational::new(h, 12);
                        }
                    }
                }
                for c in cluster.iter_mut() {
                    if *c == b {
                        *c = a;
                    }
                }
            }
        }
    }
    d
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
}

fn metric_correspondence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0DD_BA11);
    let mut classes = BTreeMap::new();
    for i in 0..200 {
        let d = random_matrix(&mut rng, i);
        let triangle = triples(4).all(|(x, y, z)| d[x][z] <= d[x][y] + d[y][z]);
        let ultra = triples(4).all(|(x, y, z)| d[x][z] <= d[x][y].max(d[y][z]));
        let v = metric_verdict(&d).map_err(|e| e.to_string())?;
        if v.tensor_transitive != triangle || v.with_transitive != ultra || !v.reflexive || !v.symmetric {
            return Err(format!("matrix {i}: {d:?} gives {v:?}, oracle triangle={triangle} ultrametric={ultra}"));
        }
        *classes.entry((triangle, ultra)).or_insert(0) += 1;
    }
    if classes.len() < 3 {
        return Err(format!("generator covered only {classes:?}"));
    }
    let c = |k| classes.get(&k).copied().unwrap_or(0);
    Ok(format!("200/200 agree ({} ultrametric, {} metric only, {} neither)", c((true, true)), c((true, false)), c((false, false))))
}

fn search_problem(goal: &str) -> SearchProblem {
    let goal = parse_linear_sequent(goal, None).unwrap();
    SearchProblem { signature: implicit_signature(&goal).unwrap(), background: vec![], goal }
}

fn countermodel_search() -> Outcome {
    let opts = SearchOptions::default();
    let AnyModel::Chu(c2) = resolve_model("chu0:chain2").unwrap() else { unreachable!() };
    match search_countermodel(&c2, &search_problem("|- p + ~p"), opts).map_err(|e| e.to_string())? {
        SearchOutcome::Found { structure, .. } if structure.pred("p").unwrap().values[0] == c2.parse("N").unwrap() => {}
        other => return Err(format!("p + ~p on chu0:chain2: {:?}", other.found())),
    }
    let par = search_problem("|- p @ ~p");
    let ids: Vec<String> = builtin_model_ids().into_iter().filter(|id| !id.starts_with("chu1:")).collect();
    for id in &ids {
        let any = resolve_model(id).unwrap();
        let out = with_model!(&any, m => search_countermodel(m, &par, opts).map(|o| matches!(o, SearchOutcome::NoneUpToBound { .. })));
        if out != Ok(true) {
            return Err(format!("p @ ~p on {id}: {out:?}"));
        }
    }
    Ok(format!("N refutes p + ~p; p @ ~p has none up to bound on {} models", ids.len()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("three-valued correspondence", Duration::from_secs(1), three_valued),
        ("Chu(H,0) law suite", Duration::from_secs(60), chu_law_suite),
        ("Chu(H,1) MIX units", Duration::from_secs(60), chu1_mix),
        ("translation soundness", Duration::from_secs(120), translation_soundness),
        ("corpus fidelity", Duration::from_secs(60), corpus_fidelity),
        ("model differentiation", Duration::from_secs(60), model_differentiation),
        ("metric correspondence", Duration::from_secs(60), metric_correspondence),
        ("countermodel search", Duration::from_secs(60), countermodel_search),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let took = t.elapsed();
        let (tag, detail) = match outcome {
            Ok(s) if took <= limit => ("PASS", s),
            Ok(s) => ("FAIL", format!("{s}; took longer than {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("acceptance {} {tag} {name} [{:.2}s]: {detail}", i + 1, took.as_secs_f64());
    }
    println!("acceptance: {} of 8 pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
