use std::collections::HashSet;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One line of the JSON Lines corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DreamRecord {
    pub dreamer: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub id: String,
    pub text: String,
}

pub fn read_corpus(path: &Path) -> Result<Vec<DreamRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(std::io::BufReader::new(file)).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

/// Parses JSON Lines, skipping blank lines. `(dreamer, id)` must be unique.
pub fn parse_corpus(reader: impl BufRead) -> Result<Vec<DreamRecord>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<corpus>", e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: DreamRecord = serde_json::from_str(&line).map_err(|e| Error::Corpus {
            line: i + 1,
            reason: e.to_string(),
        })?;
        if !seen.insert((record.dreamer.clone(), record.id.clone())) {
            return Err(Error::Corpus {
                line: i + 1,
                reason: format!("duplicate dream `{}` for dreamer `{}`", record.id, record.dreamer),
            });
        }
        out.push(record);
    }
    Ok(out)
}
