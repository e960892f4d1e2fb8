use std::collections::BTreeMap;
use std::io::{Read, Write};

use super::analyze::METRICS_HEADER;
use super::format::{float_cell, parse_cell};
use crate::error::{Error, Result};

/// Metric columns in output order.
pub const METRIC_NAMES: [&str; 9] = ["NNC", "CP", "GWAC", "NNW", "NNWv", "NNWm", "GSPL", "GDi", "GDe"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AggregateMode {
    PerDreamer,
    /// Mean of the per-dreamer means, each dreamer weighted equally.
    Pooled,
}

/// One row of `metrics.csv`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRow {
    pub dreamer: String,
    pub dream_id: String,
    pub level: usize,
    pub values: [Option<f64>; 9],
}

#[derive(Clone, Debug, PartialEq)]
pub struct AggregateRow {
    pub entity: String,
    /// Dreams contributing to the row.
    pub records: usize,
    pub level: usize,
    pub means: [Option<f64>; 9],
    /// Non-null values behind each mean: dreams for per-dreamer rows,
    /// dreamers for pooled rows.
    pub counts: [usize; 9],
}

pub fn read_rows(reader: impl Read) -> Result<Vec<MetricsRow>> {
    let mut r = csv::Reader::from_reader(reader);
    let header = r.headers()?.clone();
    if header.iter().ne(METRICS_HEADER) {
        return Err(Error::Config(format!("unexpected metrics header `{}`", header.iter().collect::<Vec<_>>().join(","))));
    }
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let bad = |what: &str| Error::Corpus {
            line: i + 2,
            reason: format!("invalid {what}"),
        };
        let level = rec[2].parse().map_err(|_| bad("level"))?;
        let mut values = [None; 9];
        for (j, v) in values.iter_mut().enumerate() {
            *v = parse_cell(&rec[3 + j]).map_err(|_| bad(METRIC_NAMES[j]))?;
        }
        out.push(MetricsRow {
            dreamer: rec[0].to_owned(),
            dream_id: rec[1].to_owned(),
            level,
            values,
        });
    }
    Ok(out)
}

#[derive(Default)]
struct Acc {
    records: usize,
    sums: [f64; 9],
    counts: [usize; 9],
}

impl Acc {
    fn add(&mut self, values: &[Option<f64>; 9]) {
        self.records += 1;
        for (j, v) in values.iter().enumerate() {
            if let Some(x) = v {
                self.sums[j] += x;
                self.counts[j] += 1;
            }
        }
    }

    fn means(&self) -> [Option<f64>; 9] {
        std::array::from_fn(|j| (self.counts[j] > 0).then(|| self.sums[j] / self.counts[j] as f64))
    }
}

/// Means per (dreamer, level) with nulls excluded, sorted by dreamer then
/// level.
pub fn per_dreamer(rows: &[MetricsRow]) -> Vec<AggregateRow> {
    let mut groups: BTreeMap<(&str, usize), Acc> = BTreeMap::new();
    for r in rows {
        groups.entry((r.dreamer.as_str(), r.level)).or_default().add(&r.values);
    }
    groups
        .into_iter()
        .map(|((dreamer, level), acc)| AggregateRow {
            entity: dreamer.to_owned(),
            records: acc.records,
            level,
            means: acc.means(),
            counts: acc.counts,
        })
        .collect()
}

/// Per level, the unweighted mean over dreamers of their per-dreamer means.
pub fn pooled(rows: &[MetricsRow], entity: &str) -> Vec<AggregateRow> {
    let mut levels: BTreeMap<usize, Acc> = BTreeMap::new();
    let mut records: BTreeMap<usize, usize> = BTreeMap::new();
    for d in per_dreamer(rows) {
        levels.entry(d.level).or_default().add(&d.means);
        *records.entry(d.level).or_default() += d.records;
    }
    levels
        .into_iter()
        .map(|(level, acc)| AggregateRow {
            entity: entity.to_owned(),
            records: records[&level],
            level,
            means: acc.means(),
            counts: acc.counts,
        })
        .collect()
}

pub fn aggregate(rows: &[MetricsRow], mode: AggregateMode, entity: &str) -> Vec<AggregateRow> {
    match mode {
        AggregateMode::PerDreamer => per_dreamer(rows),
        AggregateMode::Pooled => pooled(rows, entity),
    }
}

pub fn write_aggregate(rows: &[AggregateRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["entity".to_owned(), "records".to_owned(), "level".to_owned()];
    header.extend(METRIC_NAMES.iter().map(|m| m.to_string()));
    header.extend(METRIC_NAMES.iter().map(|m| format!("n_{m}")));
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.entity.clone(), r.records.to_string(), r.level.to_string()];
        rec.extend(r.means.iter().map(|&m| float_cell(m)));
        rec.extend(r.counts.iter().map(|c| c.to_string()));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io("<aggregate>", e))?;
    Ok(())
}
