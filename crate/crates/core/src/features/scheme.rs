use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::quotient::quotient;
use super::{detect_cliques, detect_sccs, detect_simple_cycles, detect_stars, FeatureSet, DEFAULT_CYCLE_LIMIT};
use crate::error::{Error, Result};
use crate::graph::DecGraph;

/// A deterministic contraction function: a feature detector followed by the
/// feature quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SchemeSpec", into = "SchemeSpec")]
pub enum ContractionScheme {
    SimpleCycles { limit: usize },
    Scc,
    Star { min_periphery: usize },
    Clique { min_size: usize },
}

/// Configuration form of a scheme: `{"tag": "star", "params": {...}}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSpec {
    pub tag: String,
    #[serde(default)]
    pub params: Map<String, Value>,
}

impl SchemeSpec {
    pub fn new(tag: impl Into<String>) -> Self {
        SchemeSpec {
            tag: tag.into(),
            params: Map::new(),
        }
    }
}

pub struct Contraction {
    pub graph: DecGraph,
    pub features: usize,
    pub truncated: bool,
}

impl ContractionScheme {
    pub fn simple_cycles() -> Self {
        ContractionScheme::SimpleCycles {
            limit: DEFAULT_CYCLE_LIMIT,
        }
    }

    pub fn star() -> Self {
        ContractionScheme::Star { min_periphery: 1 }
    }

    pub fn clique() -> Self {
        ContractionScheme::Clique { min_size: 3 }
    }

    /// Simple cycles, strongly connected components, then five star passes.
    pub fn default_schedule() -> Vec<Self> {
        let mut gamma = vec![Self::simple_cycles(), ContractionScheme::Scc];
        gamma.extend([Self::star(); 5]);
        gamma
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ContractionScheme::SimpleCycles { .. } => "simple_cycles",
            ContractionScheme::Scc => "scc",
            ContractionScheme::Star { .. } => "star",
            ContractionScheme::Clique { .. } => "clique",
        }
    }

    pub fn detect(&self, g: &DecGraph) -> FeatureSet {
        match *self {
            ContractionScheme::SimpleCycles { limit } => detect_simple_cycles(g, limit),
            ContractionScheme::Scc => detect_sccs(g),
            ContractionScheme::Star { min_periphery } => detect_stars(g, min_periphery),
            ContractionScheme::Clique { min_size } => detect_cliques(g, min_size),
        }
    }

    pub fn apply(&self, g: &DecGraph) -> Contraction {
        let q = self.detect(g);
        Contraction {
            graph: quotient(g, &q),
            features: q.len(),
            truncated: q.truncated,
        }
    }

    pub fn from_spec(spec: &SchemeSpec) -> Result<Self> {
        let tag = spec.tag.as_str();
        let params = Params { tag, map: &spec.params };
        let scheme = match tag {
            "simple_cycles" => ContractionScheme::SimpleCycles {
                limit: params.take("limit", DEFAULT_CYCLE_LIMIT, 1)?,
            },
            "scc" => ContractionScheme::Scc,
            "star" => ContractionScheme::Star {
                min_periphery: params.take("min_periphery", 1, 1)?,
            },
            "clique" => ContractionScheme::Clique {
                min_size: params.take("min_size", 3, 3)?,
            },
            _ => return Err(Error::UnknownScheme(tag.to_owned())),
        };
        params.finish(&scheme)?;
        Ok(scheme)
    }

    pub fn to_spec(&self) -> SchemeSpec {
        let mut spec = SchemeSpec::new(self.tag());
        let param = match *self {
            ContractionScheme::SimpleCycles { limit } => Some(("limit", limit)),
            ContractionScheme::Scc => None,
            ContractionScheme::Star { min_periphery } => Some(("min_periphery", min_periphery)),
            ContractionScheme::Clique { min_size } => Some(("min_size", min_size)),
        };
        if let Some((k, v)) = param {
            spec.params.insert(k.to_owned(), Value::from(v));
        }
        spec
    }
}

struct Params<'a> {
    tag: &'a str,
    map: &'a Map<String, Value>,
}

impl Params<'_> {
    fn take(&self, key: &str, default: usize, min: usize) -> Result<usize> {
        let Some(v) = self.map.get(key) else {
            return Ok(default);
        };
        let n = v
            .as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| self.invalid(format!("`{key}` must be a non-negative integer, got {v}")))?;
        if n < min {
            return Err(self.invalid(format!("`{key}` must be at least {min}, got {n}")));
        }
        Ok(n)
    }

    fn finish(&self, scheme: &ContractionScheme) -> Result<()> {
        let known = scheme.to_spec();
        match self.map.keys().find(|k| !known.params.contains_key(*k)) {
            Some(k) => Err(self.invalid(format!("unknown parameter `{k}`"))),
            None => Ok(()),
        }
    }

    fn invalid(&self, reason: String) -> Error {
        Error::InvalidParams {
            tag: self.tag.to_owned(),
            reason,
        }
    }
}

impl TryFrom<SchemeSpec> for ContractionScheme {
    type Error = Error;

    fn try_from(spec: SchemeSpec) -> Result<Self> {
        Self::from_spec(&spec)
    }
}

impl From<ContractionScheme> for SchemeSpec {
    fn from(s: ContractionScheme) -> Self {
        s.to_spec()
    }
}
