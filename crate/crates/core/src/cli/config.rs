use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::features::{ContractionScheme, SchemeSpec};
use crate::textpipe::PipelineConfig;

pub const DEFAULT_PER_DREAMER_CAP: usize = 30;

/// Seeded per-dreamer sampling of admitted dreams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub per_dreamer_cap: usize,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub gamma: Vec<ContractionScheme>,
    pub pipeline: PipelineConfig,
    pub sampling: Option<Sampling>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            gamma: ContractionScheme::default_schedule(),
            pipeline: PipelineConfig::default(),
            sampling: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    gamma: Option<Vec<SchemeSpec>>,
    #[serde(default)]
    pipeline: PipelineSection,
    sampling: Option<SamplingSection>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PipelineSection {
    stopwords: Option<PathBuf>,
    lemma_dict: Option<PathBuf>,
    min_lemmas: Option<usize>,
    max_lemmas: Option<usize>,
    #[serde(default)]
    sentence_breaks: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SamplingSection {
    per_dreamer_cap: Option<usize>,
    seed: Option<u64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Parses a JSON config. Relative resource paths are taken relative to
    /// `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let file: ConfigFile = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut cfg = RunConfig::default();
        if let Some(specs) = file.gamma {
            if specs.is_empty() {
                return Err(Error::Config("gamma must list at least one scheme".into()));
            }
            cfg.gamma = specs.iter().map(ContractionScheme::from_spec).collect::<Result<_>>()?;
        }
        let p = file.pipeline;
        let resolve = |rel: PathBuf| if rel.is_absolute() { rel } else { base_dir.join(rel) };
        if let Some(path) = p.stopwords {
            cfg.pipeline.load_stopwords(&resolve(path))?;
        }
        if let Some(path) = p.lemma_dict {
            cfg.pipeline.load_lemma_dict(&resolve(path))?;
        }
        cfg.pipeline.min_lemmas = p.min_lemmas.unwrap_or(cfg.pipeline.min_lemmas);
        cfg.pipeline.max_lemmas = p.max_lemmas.unwrap_or(cfg.pipeline.max_lemmas);
        cfg.pipeline.sentence_breaks = p.sentence_breaks;
        if cfg.pipeline.min_lemmas > cfg.pipeline.max_lemmas {
            return Err(Error::Config(format!(
                "min_lemmas {} exceeds max_lemmas {}",
                cfg.pipeline.min_lemmas, cfg.pipeline.max_lemmas
            )));
        }
        if let Some(s) = file.sampling {
            let per_dreamer_cap = s.per_dreamer_cap.unwrap_or(DEFAULT_PER_DREAMER_CAP);
            if per_dreamer_cap == 0 {
                return Err(Error::Config("per_dreamer_cap must be positive".into()));
            }
            cfg.sampling = Some(Sampling {
                per_dreamer_cap,
                seed: s.seed.unwrap_or(0),
            });
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let cfg = RunConfig::parse("{}", Path::new(".")).unwrap();
        assert_eq!(cfg.gamma.len(), 7);
        assert!(cfg.sampling.is_none());
        assert_eq!(cfg.pipeline.min_lemmas, 15);

        let cfg = RunConfig::parse(
            r#"{"gamma": [{"tag": "scc"}, {"tag": "clique", "params": {"min_size": 4}}],
                "pipeline": {"min_lemmas": 1, "sentence_breaks": true},
                "sampling": {"seed": 9}}"#,
            Path::new("."),
        )
        .unwrap();
        assert_eq!(cfg.gamma, vec![ContractionScheme::Scc, ContractionScheme::Clique { min_size: 4 }]);
        assert!(cfg.pipeline.sentence_breaks);
        assert_eq!(cfg.sampling, Some(Sampling { per_dreamer_cap: 30, seed: 9 }));
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = [
            r#"{"gamma": []}"#,
            r#"{"gamma": [{"tag": "pagerank"}]}"#,
            r#"{"pipeline": {"min_lemmas": 10, "max_lemmas": 5}}"#,
            r#"{"sampling": {"per_dreamer_cap": 0}}"#,
            r#"{"extra": 1}"#,
            r#"{"pipeline": {"stopwords": "does/not/exist.txt"}}"#,
        ];
        for text in bad {
            assert!(RunConfig::parse(text, Path::new("/nonexistent")).is_err(), "{text}");
        }
    }

    #[test]
    fn resource_paths_are_relative_to_the_config() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("stop.txt"), "lake\n").unwrap();
        std::fs::write(dir.path().join("lem.tsv"), "lakes\tpond\n").unwrap();
        let cfg_path = dir.path().join("run.json");
        std::fs::write(&cfg_path, r#"{"pipeline": {"stopwords": "stop.txt", "lemma_dict": "lem.tsv"}}"#).unwrap();
        let cfg = RunConfig::load(&cfg_path).unwrap();
        assert_eq!(cfg.pipeline.stopwords.len(), 1);
        assert_eq!(cfg.pipeline.lemmas["lakes"], "pond");
    }
}
