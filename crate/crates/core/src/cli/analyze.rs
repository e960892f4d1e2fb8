use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::RunConfig;
use super::corpus::DreamRecord;
use super::format::{float_cell, int_cell};
use crate::error::{Error, Result};
use crate::metrics::{hierarchy_metrics, LevelMetrics};
use crate::multilevel::MultilevelGraph;
use crate::textpipe::{admit, build_sequence_graph, clean_and_lemmatize};

pub const METRICS_HEADER: [&str; 12] = [
    "dreamer", "dream_id", "level", "NNC", "CP", "GWAC", "NNW", "NNWv", "NNWm", "GSPL", "GDi", "GDe",
];

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub jobs: usize,
    pub keep_hierarchies: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            jobs: 1,
            keep_hierarchies: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DreamResult {
    pub dreamer: String,
    pub dream_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub lemmas: usize,
    pub levels: Vec<LevelMetrics>,
    #[serde(skip)]
    pub hierarchy: Option<MultilevelGraph>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub dreamer: String,
    pub dream_id: String,
    pub reason: String,
}

#[derive(Debug, Default)]
pub struct Analysis {
    /// Ordered by dreamer, then dream id.
    pub results: Vec<DreamResult>,
    /// Dreams left out by the lemma filter or by sampling.
    pub rejected: Vec<Skipped>,
    /// Dreams whose analysis failed.
    pub failed: Vec<Skipped>,
}

impl Analysis {
    pub fn is_partial(&self) -> bool {
        !self.failed.is_empty()
    }
}

struct Admitted<'a> {
    record: &'a DreamRecord,
    lemmas: crate::textpipe::LemmaSequence,
}

/// Runs the text pipeline and the contraction schedule on every admitted
/// dream. Output order does not depend on `opts.jobs`.
pub fn analyze_corpus(records: &[DreamRecord], cfg: &RunConfig, opts: AnalyzeOptions) -> Result<Analysis> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;

    let mut ordered: Vec<&DreamRecord> = records.iter().collect();
    ordered.sort_by(|a, b| (&a.dreamer, &a.id).cmp(&(&b.dreamer, &b.id)));

    let mut analysis = Analysis::default();
    let cleaned: Vec<_> = pool.install(|| {
        ordered
            .par_iter()
            .map(|r| (*r, clean_and_lemmatize(&r.text, &cfg.pipeline)))
            .collect()
    });
    let mut admitted = Vec::new();
    for (record, lemmas) in cleaned {
        if admit(&lemmas, &cfg.pipeline) {
            admitted.push(Admitted { record, lemmas });
        } else {
            analysis.rejected.push(skipped(
                record,
                format!(
                    "{} lemmas outside [{}, {}]",
                    lemmas.len(),
                    cfg.pipeline.min_lemmas,
                    cfg.pipeline.max_lemmas
                ),
            ));
        }
    }
    if let Some(s) = cfg.sampling {
        admitted = sample_per_dreamer(admitted, s.per_dreamer_cap, s.seed, &mut analysis.rejected);
    }
    analysis.rejected.sort_by(|a, b| (&a.dreamer, &a.dream_id).cmp(&(&b.dreamer, &b.dream_id)));

    let outcomes: Vec<std::result::Result<DreamResult, Skipped>> = pool.install(|| {
        admitted
            .par_iter()
            .map(|a| {
                let run = catch_unwind(AssertUnwindSafe(|| analyze_dream(a, cfg, opts.keep_hierarchies)));
                match run {
                    Ok(Ok(r)) => Ok(r),
                    Ok(Err(e)) => Err(skipped(a.record, e.to_string())),
                    Err(_) => Err(skipped(a.record, "analysis panicked".to_owned())),
                }
            })
            .collect()
    });
    for outcome in outcomes {
        match outcome {
            Ok(r) => analysis.results.push(r),
            Err(s) => {
                log::warn!("dream {}/{} failed: {}", s.dreamer, s.dream_id, s.reason);
                analysis.failed.push(s);
            }
        }
    }
    Ok(analysis)
}

fn skipped(r: &DreamRecord, reason: String) -> Skipped {
    Skipped {
        dreamer: r.dreamer.clone(),
        dream_id: r.id.clone(),
        reason,
    }
}

/// Keeps a seeded uniform sample of at most `cap` dreams per dreamer.
/// Dreamers are visited in sorted order so the draw is reproducible.
fn sample_per_dreamer<'a>(admitted: Vec<Admitted<'a>>, cap: usize, seed: u64, rejected: &mut Vec<Skipped>) -> Vec<Admitted<'a>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut by_dreamer: BTreeMap<&str, Vec<Admitted<'a>>> = BTreeMap::new();
    for a in admitted {
        by_dreamer.entry(a.record.dreamer.as_str()).or_default().push(a);
    }
    let mut kept = Vec::new();
    for (_, dreams) in by_dreamer {
        if dreams.len() <= cap {
            kept.extend(dreams);
            continue;
        }
        let chosen: HashSet<usize> = sample(&mut rng, dreams.len(), cap).into_iter().collect();
        for (i, a) in dreams.into_iter().enumerate() {
            if chosen.contains(&i) {
                kept.push(a);
            } else {
                rejected.push(skipped(a.record, "not sampled".to_owned()));
            }
        }
    }
    kept
}

fn analyze_dream(a: &Admitted<'_>, cfg: &RunConfig, keep: bool) -> Result<DreamResult> {
    let budget = a
        .lemmas
        .budget()
        .ok_or_else(|| Error::Config("admitted dream has no lemmas".into()))?;
    let m = MultilevelGraph::new(build_sequence_graph(&a.lemmas), cfg.gamma.clone())?;
    let levels = hierarchy_metrics(&m, budget)?;
    if levels.iter().any(|l| l.truncated_cycles) {
        log::info!("dream {}/{}: cycle enumeration hit its limit", a.record.dreamer, a.record.id);
    }
    Ok(DreamResult {
        dreamer: a.record.dreamer.clone(),
        dream_id: a.record.id.clone(),
        group: a.record.group.clone(),
        lemmas: a.lemmas.len(),
        levels,
        hierarchy: keep.then_some(m),
    })
}

pub fn metrics_row(r: &DreamResult, m: &LevelMetrics) -> [String; 12] {
    [
        r.dreamer.clone(),
        r.dream_id.clone(),
        m.level.to_string(),
        float_cell(m.nnc),
        float_cell(m.cp),
        float_cell(m.gwac),
        float_cell(m.nnw),
        float_cell(m.nnwv),
        float_cell(m.nnwm),
        float_cell(m.gspl),
        int_cell(m.gdi),
        float_cell(m.gde),
    ]
}

pub fn write_metrics_csv(results: &[DreamResult], out: impl std::io::Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(METRICS_HEADER)?;
    for r in results {
        for m in &r.levels {
            w.write_record(metrics_row(r, m))?;
        }
    }
    w.flush().map_err(|e| Error::io("<metrics.csv>", e))?;
    Ok(())
}

/// Writes `metrics.csv`, `metrics.json`, `rejected.csv` and, for kept
/// hierarchies, one JSON file per dream under `hierarchies/`.
pub fn write_outputs(analysis: &Analysis, out_dir: &Path) -> Result<()> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let create = |name: &str| {
        let path = out_dir.join(name);
        fs::File::create(&path)
            .map(std::io::BufWriter::new)
            .map_err(|e| Error::io(path, e))
    };

    write_metrics_csv(&analysis.results, create("metrics.csv")?)?;
    serde_json::to_writer_pretty(create("metrics.json")?, &analysis.results)?;

    let mut w = csv::Writer::from_writer(create("rejected.csv")?);
    w.write_record(["dreamer", "dream_id", "status", "reason"])?;
    for (status, list) in [("rejected", &analysis.rejected), ("failed", &analysis.failed)] {
        for s in list {
            w.write_record([s.dreamer.as_str(), s.dream_id.as_str(), status, s.reason.as_str()])?;
        }
    }
    w.flush().map_err(|e| Error::io(out_dir.join("rejected.csv"), e))?;

    let kept: Vec<&DreamResult> = analysis.results.iter().filter(|r| r.hierarchy.is_some()).collect();
    if !kept.is_empty() {
        let dir = out_dir.join("hierarchies");
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let mut used = HashSet::new();
        for r in kept {
            let stem = file_stem(&r.dreamer, &r.dream_id);
            let mut name = format!("{stem}.json");
            let mut n = 2;
            while !used.insert(name.clone()) {
                name = format!("{stem}-{n}.json");
                n += 1;
            }
            let path = dir.join(&name);
            let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
            serde_json::to_writer(std::io::BufWriter::new(file), r.hierarchy.as_ref().expect("filtered"))?;
        }
    }
    Ok(())
}

fn file_stem(dreamer: &str, id: &str) -> String {
    format!("{dreamer}__{id}")
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}
