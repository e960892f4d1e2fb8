//! Narrative text to lemma sequence to word-sequence graph.

mod lemma;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::metrics::LemmaBudget;

pub use lemma::{default_rules, lemmatize, Guard, SuffixRule};

const DEFAULT_STOPWORDS: &str = include_str!("../../resources/stopwords.txt");
const DEFAULT_LEMMAS: &str = include_str!("../../resources/lemmas.tsv");

pub const DEFAULT_MIN_LEMMAS: usize = 15;
pub const DEFAULT_MAX_LEMMAS: usize = 300;

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub stopwords: HashSet<String>,
    pub lemmas: HashMap<String, String>,
    pub rules: Vec<SuffixRule>,
    pub min_lemmas: usize,
    pub max_lemmas: usize,
    /// Cut the word sequence at `.`, `!` and `?`.
    pub sentence_breaks: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            stopwords: parse_stopwords(DEFAULT_STOPWORDS),
            lemmas: parse_lemma_dict(DEFAULT_LEMMAS).expect("shipped lemma dictionary is well formed"),
            rules: default_rules(),
            min_lemmas: DEFAULT_MIN_LEMMAS,
            max_lemmas: DEFAULT_MAX_LEMMAS,
            sentence_breaks: false,
        }
    }
}

impl PipelineConfig {
    pub fn load_stopwords(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.stopwords = parse_stopwords(&text);
        Ok(())
    }

    pub fn load_lemma_dict(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.lemmas = parse_lemma_dict(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Ok(())
    }
}

/// One word per line; blank lines and `#` comments are ignored.
pub fn parse_stopwords(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

/// `surface<TAB>lemma` per line; blank lines and `#` comments are ignored.
pub fn parse_lemma_dict(text: &str) -> std::result::Result<HashMap<String, String>, String> {
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (surface, lemma) = line
            .split_once('\t')
            .ok_or_else(|| format!("line {}: expected `surface<TAB>lemma`", i + 1))?;
        let (surface, lemma) = (surface.trim(), lemma.trim());
        if surface.is_empty() || lemma.is_empty() {
            return Err(format!("line {}: empty field", i + 1));
        }
        out.insert(surface.to_lowercase(), lemma.to_lowercase());
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaSequence {
    pub lemmas: Vec<String>,
    /// Positions `i` where no edge joins `lemmas[i - 1]` and `lemmas[i]`.
    pub breaks: BTreeSet<usize>,
}

impl LemmaSequence {
    pub fn len(&self) -> usize {
        self.lemmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lemmas.is_empty()
    }

    pub fn budget(&self) -> Option<LemmaBudget> {
        LemmaBudget::new(self.lemmas.len() as u64)
    }
}

enum Piece {
    Word(String),
    Break,
}

/// Lowercases and splits `text` into words of letters. A hyphen or
/// apostrophe between two letters stays inside the word; everything else
/// separates words. A possessive `'s` is removed, then remaining apostrophes.
fn tokenize(text: &str) -> Vec<Piece> {
    let chars: Vec<char> = text.to_lowercase().chars().collect();
    let mut out = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut Vec<Piece>| {
        if word.is_empty() {
            return;
        }
        let mut w = std::mem::take(word);
        if w.ends_with("'s") {
            w.truncate(w.len() - 2);
        }
        w.retain(|c| c != '\'');
        if !w.is_empty() {
            out.push(Piece::Word(w));
        }
    };
    for (i, &c) in chars.iter().enumerate() {
        let c = if c == '\u{2019}' { '\'' } else { c };
        if c.is_alphabetic() {
            word.push(c);
            continue;
        }
        let joins = matches!(c, '-' | '\'')
            && !word.is_empty()
            && word.ends_with(char::is_alphabetic)
            && chars.get(i + 1).is_some_and(|n| n.is_alphabetic());
        if joins {
            word.push(c);
            continue;
        }
        flush(&mut word, &mut out);
        if matches!(c, '.' | '!' | '?') {
            out.push(Piece::Break);
        }
    }
    flush(&mut word, &mut out);
    out
}

/// Cleans `text` and maps it to lemmas, dropping stopwords before and after
/// lemmatization.
pub fn clean_and_lemmatize(text: &str, cfg: &PipelineConfig) -> LemmaSequence {
    let mut seq = LemmaSequence::default();
    let mut pending_break = false;
    for piece in tokenize(text) {
        let word = match piece {
            Piece::Break => {
                pending_break = cfg.sentence_breaks;
                continue;
            }
            Piece::Word(w) => w,
        };
        if cfg.stopwords.contains(&word) {
            continue;
        }
        let lemma = lemmatize(&word, &cfg.lemmas, &cfg.rules);
        if cfg.stopwords.contains(&lemma) {
            continue;
        }
        if pending_break && !seq.lemmas.is_empty() {
            seq.breaks.insert(seq.lemmas.len());
        }
        pending_break = false;
        seq.lemmas.push(lemma);
    }
    seq
}

/// One node per distinct lemma, weighted by its count, ids in order of first
/// appearance. Consecutive distinct lemmas add 1 to the edge between them;
/// repeats and sentence breaks add nothing.
pub fn build_sequence_graph(seq: &LemmaSequence) -> Digraph {
    let mut g = Digraph::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut counts: Vec<u64> = Vec::new();
    let ids: Vec<usize> = seq
        .lemmas
        .iter()
        .map(|l| {
            *index.entry(l.as_str()).or_insert_with(|| {
                counts.push(0);
                counts.len() - 1
            })
        })
        .collect();
    for &i in &ids {
        counts[i] += 1;
    }
    let mut labels: Vec<&str> = vec![""; counts.len()];
    for (l, &i) in &index {
        labels[i] = l;
    }
    for (label, count) in labels.into_iter().zip(counts) {
        g.add_node(label, count);
    }
    for (pos, pair) in ids.windows(2).enumerate() {
        if pair[0] != pair[1] && !seq.breaks.contains(&(pos + 1)) {
            g.add_edge(pair[0], pair[1], 1);
        }
    }
    g
}

pub fn admit(seq: &LemmaSequence, cfg: &PipelineConfig) -> bool {
    (cfg.min_lemmas..=cfg.max_lemmas).contains(&seq.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lemmas(text: &str) -> Vec<String> {
        clean_and_lemmatize(text, &PipelineConfig::default()).lemmas
    }

    #[test]
    fn first_sentences() {
        assert_eq!(lemmas("I am at a lake in my hometown."), ["lake", "hometown"]);
        assert_eq!(lemmas("We get in a station wagon"), ["get", "station", "wagon"]);
        assert!(lemmas("").is_empty());
        assert!(lemmas("... 42 !!").is_empty());
    }

    #[test]
    fn hyphens_apostrophes_digits() {
        assert_eq!(lemmas("My mother-in-law's dog."), ["mother-in-law", "dog"]);
        assert_eq!(lemmas("I didn't see the -dash- thing"), ["see", "dash", "thing"]);
        assert_eq!(lemmas("Room 101b, the café\u{2019}s door"), ["room", "b", "café", "door"]);
    }

    #[test]
    fn sentence_breaks_only_when_enabled() {
        let mut cfg = PipelineConfig::default();
        let text = "Lake hometown. Wagon!";
        assert!(clean_and_lemmatize(text, &cfg).breaks.is_empty());
        cfg.sentence_breaks = true;
        let seq = clean_and_lemmatize(text, &cfg);
        assert_eq!(seq.breaks.iter().copied().collect::<Vec<_>>(), vec![2]);
        let g = build_sequence_graph(&seq);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn sequence_graph() {
        let seq = LemmaSequence {
            lemmas: ["get", "away", "get"].map(String::from).to_vec(),
            breaks: BTreeSet::new(),
        };
        let g = build_sequence_graph(&seq);
        assert_eq!(g.nodes()[0].label, "get");
        assert_eq!(g.nodes()[0].weight, 2);
        assert_eq!(g.edge_weight(0, 1), Some(1));
        assert_eq!(g.edge_weight(1, 0), Some(1));

        let seq = LemmaSequence {
            lemmas: vec!["go".to_owned(); 3],
            breaks: BTreeSet::new(),
        };
        let g = build_sequence_graph(&seq);
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.total_weight(), 3);
        assert!(build_sequence_graph(&LemmaSequence::default()).node_count() == 0);
    }

    #[test]
    fn admission_bounds() {
        let cfg = PipelineConfig::default();
        let seq = |n: usize| LemmaSequence {
            lemmas: vec!["w".to_owned(); n],
            breaks: BTreeSet::new(),
        };
        assert!(admit(&seq(15), &cfg));
        assert!(admit(&seq(300), &cfg));
        assert!(!admit(&seq(301), &cfg));
        assert!(!admit(&seq(14), &cfg));
        assert!(!admit(&seq(0), &cfg));
    }

    #[test]
    fn dictionary_parsing() {
        assert!(parse_lemma_dict("went\tgo\n# c\n\n").unwrap().contains_key("went"));
        assert!(parse_lemma_dict("went go").is_err());
        assert!(parse_stopwords("a\n# x\n B \n").contains("b"));
    }
}
