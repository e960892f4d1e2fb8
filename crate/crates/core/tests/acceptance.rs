//! Acceptance run: one pass/fail line per criterion, nonzero exit if any
//! fails. Every threshold and tolerance used below is a named constant.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use mlgraph::cli::aggregate::{pooled, read_rows};
use mlgraph::cli::analyze::{analyze_corpus, write_metrics_csv, AnalyzeOptions};
use mlgraph::cli::config::RunConfig;
use mlgraph::cli::corpus::DreamRecord;
use mlgraph::features::{detect_sccs, detect_simple_cycles};
use mlgraph::graph::{is_contraction_of, reconstruct, Digraph};
use mlgraph::metrics::{contraction_percentage, cycle_basis_count, density, path_stats, weight_assortativity};
use mlgraph::textpipe::{clean_and_lemmatize, PipelineConfig};
use mlgraph::{ContractionScheme, MultilevelGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x6d6c_6772;
const RANDOM_GRAPHS: usize = 200;
const MIN_NODES: usize = 5;
const MAX_NODES: usize = 40;
const COMPOSITIONS_PER_GRAPH: usize = 3;
const VALIDITY_BUDGET: Duration = Duration::from_secs(60);
const ORACLE_GRAPHS: usize = 500;
const ORACLE_MAX_NODES: usize = 8;
const ORACLE_REL_TOL: f64 = 1e-9;
const PURE_CYCLES: std::ops::RangeInclusive<usize> = 3..=12;
const DEFAULT_LEVELS: usize = 8;
const DETERMINISM_DREAMS: usize = 100;
const DETERMINISM_JOBS: [usize; 2] = [1, 8];
const LONG_DREAM_LEMMAS: usize = 300;
const LONG_DREAM_BUDGET: Duration = Duration::from_secs(5);

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Sparse-to-moderate random digraphs sized within the suite's node range.
fn graph_corpus() -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..RANDOM_GRAPHS)
        .map(|_| {
            let n = rng.gen_range(MIN_NODES..=MAX_NODES);
            let degree = rng.gen_range(0.5..3.0);
            let p = (degree / (n - 1) as f64).min(1.0);
            random_digraph(&mut rng, n, p)
        })
        .collect()
}

fn compositions(rng: &mut ChaCha8Rng) -> Vec<Vec<ContractionScheme>> {
    let schemes = all_schemes();
    (0..COMPOSITIONS_PER_GRAPH)
        .map(|_| (0..3).map(|_| *schemes.choose(rng).unwrap()).collect())
        .collect()
}

fn contraction_validity(graphs: &[Digraph]) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut checks = 0;
    for d in graphs {
        let g = lift(d);
        for s in all_schemes() {
            check(is_contraction_of(&s.apply(&g).graph, &g), format!("{} failed on a {}-node graph", s.tag(), d.node_count()))?;
            checks += 1;
        }
        for gamma in compositions(&mut rng) {
            let m = MultilevelGraph::new(d.clone(), gamma).unwrap();
            for k in 1..=m.height() {
                check(is_contraction_of(m.con(k).unwrap(), m.con(k - 1).unwrap()), format!("composition level {k} invalid"))?;
                checks += 1;
            }
        }
    }
    let took = start.elapsed();
    check(took < VALIDITY_BUDGET, format!("took {took:?}"))?;
    Ok(format!("{checks} contractions valid, 0 failures, {took:.2?}"))
}

fn round_trip(graphs: &[Digraph]) -> Outcome {
    let mut checks = 0;
    for d in graphs {
        let g = lift(d);
        for s in all_schemes() {
            let back = reconstruct(&s.apply(&g).graph).map_err(|e| e.to_string())?;
            check(back == g, format!("{} did not round-trip", s.tag()))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} reconstructions equal their input"))
}

fn conservation(graphs: &[Digraph]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut levels = 0;
    for d in graphs {
        let mut schedules = compositions(&mut rng);
        schedules.push(ContractionScheme::default_schedule());
        for gamma in schedules {
            let m = MultilevelGraph::new(d.clone(), gamma).unwrap();
            let base: BTreeSet<_> = m.con(0).unwrap().node_ids().collect();
            for k in 0..=m.height() {
                let g = m.con(k).unwrap();
                check(g.total_node_weight() == d.total_weight(), format!("level {k} weight {} != {}", g.total_node_weight(), d.total_weight()))?;
                let mut seen = BTreeSet::new();
                for id in g.node_ids() {
                    for b in m.trace(k, id).unwrap() {
                        check(seen.insert(b), format!("base node {b} traced twice at level {k}"))?;
                    }
                }
                check(seen == base, format!("traces at level {k} do not cover the base"))?;
                levels += 1;
            }
        }
    }
    Ok(format!("{levels} levels conserve weight and partition the base"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    for i in 0..ORACLE_GRAPHS {
        let n = rng.gen_range(1..=ORACLE_MAX_NODES);
        let p = rng.gen_range(0.1..0.6);
        let g = lift(&random_digraph(&mut rng, n, p));
        let adj = adjacency(&g);
        let pos = |ids: &[mlgraph::NodeId]| -> BTreeSet<usize> {
            let all: Vec<_> = g.node_ids().collect();
            ids.iter().map(|x| all.iter().position(|y| y == x).unwrap()).collect()
        };
        let sccs: BTreeSet<_> = detect_sccs(&g).features.iter().map(|f| pos(&f.members)).collect();
        let want: BTreeSet<_> = scc_oracle(&adj).into_iter().filter(|c| c.len() > 1).collect();
        check(sccs == want, format!("graph {i}: SCCs differ"))?;
        let cycles = detect_simple_cycles(&g, usize::MAX);
        let got: BTreeSet<_> = cycles.features.iter().map(|f| pos(&f.members)).collect();
        check(got == cycle_oracle(&adj), format!("graph {i}: cycles differ"))?;
        check(close_opt(density(&g), density_oracle(&g), ORACLE_REL_TOL), format!("graph {i}: density"))?;
        check(
            close_opt(weight_assortativity(&g), assortativity_oracle(&g), ORACLE_REL_TOL),
            format!("graph {i}: assortativity"),
        )?;
        let (gspl, gdi) = path_stats(&g);
        let (mean, max) = path_oracle(&adj);
        check(close_opt(gspl, mean, ORACLE_REL_TOL), format!("graph {i}: GSPL"))?;
        check(gdi == max, format!("graph {i}: GDi"))?;
        check(cycle_basis_count(&g) == cycle_basis_oracle(&adj), format!("graph {i}: cycle basis"))?;
    }
    Ok(format!("{ORACLE_GRAPHS} graphs agree with brute force (rel tol {ORACLE_REL_TOL:e})"))
}

fn structural_theorems(graphs: &[Digraph]) -> Outcome {
    for d in graphs {
        let c = ContractionScheme::Scc.apply(&lift(d)).graph;
        check(is_acyclic(&c), "SCC contraction left a directed cycle")?;
    }
    for n in PURE_CYCLES {
        let m = MultilevelGraph::new(cycle_digraph(n), vec![ContractionScheme::simple_cycles()]).unwrap();
        let top = m.con(1).unwrap();
        check(top.node_count() == 1, format!("{n}-cycle left {} nodes", top.node_count()))?;
        let cp = contraction_percentage(Some(m.con(0).unwrap()), top).unwrap();
        let want = 100.0 * (n as f64 - 1.0) / n as f64;
        check(cp == want, format!("{n}-cycle CP {cp} != {want}"))?;
    }
    Ok(format!("{} SCC quotients acyclic; n-cycles {PURE_CYCLES:?} give one node with exact CP", graphs.len()))
}

fn fixture_pipeline() -> Outcome {
    let seq = clean_and_lemmatize(LAKE_DREAM, &PipelineConfig::default());
    let first_two = ["lake", "hometown", "something", "go", "hurry", "get", "away"];
    check(seq.lemmas[..first_two.len()] == first_two, format!("first sentences gave {:?}", &seq.lemmas[..first_two.len()]))?;
    let want: Vec<&str> = LAKE_LEMMAS.split_whitespace().collect();
    check(seq.lemmas == want, format!("got {:?}", seq.lemmas))?;
    Ok(format!("{} lemmas match the expected sequence", want.len()))
}

fn lake_record(dreamer: &str, id: &str) -> DreamRecord {
    DreamRecord {
        dreamer: dreamer.into(),
        group: None,
        id: id.into(),
        text: LAKE_DREAM.into(),
    }
}

fn level_layout() -> Outcome {
    let cfg = RunConfig::default();
    check(cfg.gamma.len() == DEFAULT_LEVELS - 1, "default schedule length")?;
    let a = analyze_corpus(&[lake_record("a", "1")], &cfg, AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    write_metrics_csv(&a.results, &mut buf).unwrap();
    let csv = String::from_utf8(buf).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    check(rows.len() == DEFAULT_LEVELS, format!("{} rows", rows.len()))?;
    for (k, row) in rows.iter().enumerate() {
        check(row.split(',').nth(2) == Some(&k.to_string()), format!("row {k} has the wrong level"))?;
    }
    let cp0 = rows[0].split(',').nth(4).unwrap();
    check(cp0 == "0.000", format!("level-0 CP cell is `{cp0}`"))?;
    Ok(format!("levels 0-{} emitted, level-0 CP `{cp0}`", DEFAULT_LEVELS - 1))
}

fn determinism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let records: Vec<DreamRecord> = (0..DETERMINISM_DREAMS)
        .map(|i| {
            let words = rng.gen_range(20..80);
            DreamRecord {
                dreamer: format!("d{}", i % 7),
                group: None,
                id: format!("{i:03}"),
                text: synthetic_text(&mut rng, words, 16),
            }
        })
        .collect();
    let cfg = RunConfig::default();
    let outputs: Vec<Vec<u8>> = DETERMINISM_JOBS
        .iter()
        .map(|&jobs| {
            let a = analyze_corpus(&records, &cfg, AnalyzeOptions { jobs, keep_hierarchies: false }).unwrap();
            let mut buf = Vec::new();
            write_metrics_csv(&a.results, &mut buf).unwrap();
            buf
        })
        .collect();
    check(outputs[0] == outputs[1], "CSV differs between worker counts")?;
    let rows = outputs[0].iter().filter(|&&b| b == b'\n').count() - 1;

    // A dense vocabulary makes cycle enumeration hit its default limit.
    let text = synthetic_text(&mut rng, LONG_DREAM_LEMMAS, 12);
    let dream = DreamRecord {
        dreamer: "long".into(),
        group: None,
        id: "1".into(),
        text,
    };
    let start = Instant::now();
    let a = analyze_corpus(&[dream], &cfg, AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let r = a.results.first().ok_or("long dream was not admitted")?;
    check(r.lemmas == LONG_DREAM_LEMMAS, format!("long dream has {} lemmas", r.lemmas))?;
    check(r.levels.len() == DEFAULT_LEVELS, "long dream level count")?;
    let flagged = r.levels.iter().any(|l| l.truncated_cycles);
    check(flagged, "cycle limit was not hit or not flagged")?;
    check(took < LONG_DREAM_BUDGET, format!("{LONG_DREAM_LEMMAS}-lemma dream took {took:?}"))?;
    Ok(format!(
        "{rows} rows identical for jobs {DETERMINISM_JOBS:?}; {LONG_DREAM_LEMMAS}-lemma dream in {took:.2?} with the cycle limit flagged"
    ))
}

fn aggregation() -> Outcome {
    // Dreamer a: CP 1.0 and 2.0, GWAC empty twice. Dreamer b: CP 3.0 and
    // empty, GWAC 0.5. Per-dreamer CP means 1.5 and 3.0 pool to 2.25; GWAC
    // pools over b alone.
    let csv = "dreamer,dream_id,level,NNC,CP,GWAC,NNW,NNWv,NNWm,GSPL,GDi,GDe\n\
               a,1,1,10.000,1.000,,1.000,0.000,1.000,1.000,1,0.500\n\
               a,2,1,20.000,2.000,,1.000,0.000,1.000,1.000,3,0.500\n\
               b,1,1,40.000,3.000,0.500,1.000,0.000,1.000,1.000,2,0.500\n\
               b,2,1,60.000,,,1.000,0.000,1.000,1.000,2,0.500\n";
    let rows = read_rows(csv.as_bytes()).map_err(|e| e.to_string())?;
    let p = pooled(&rows, "pooled");
    check(p.len() == 1 && p[0].records == 4, "one pooled row over four dreams")?;
    let m = &p[0].means;
    check(m[0] == Some(32.5), format!("NNC {:?}", m[0]))?; // (15 + 50) / 2
    check(m[1] == Some(2.25), format!("CP {:?}", m[1]))?;
    check(m[2] == Some(0.5), format!("GWAC {:?}", m[2]))?;
    check(p[0].counts[2] == 1, "GWAC null exclusion count")?;
    check(m[7] == Some(2.0), format!("GDi {:?}", m[7]))?; // (2 + 2) / 2
    Ok("pooled NNC 32.5, CP 2.25, GWAC 0.5 over one dreamer".into())
}

fn main() {
    let graphs = graph_corpus();
    let criteria: Vec<Criterion> = vec![
        ("contraction validity", Box::new(|| contraction_validity(&graphs))),
        ("round trip", Box::new(|| round_trip(&graphs))),
        ("conservation", Box::new(|| conservation(&graphs))),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("structural theorems", Box::new(|| structural_theorems(&graphs))),
        ("fixture pipeline", Box::new(fixture_pipeline)),
        ("level count and layout", Box::new(level_layout)),
        ("determinism and speed", Box::new(determinism)),
        ("aggregation", Box::new(aggregation)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
