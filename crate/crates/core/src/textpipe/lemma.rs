//! Dictionary-then-suffix-rule lemmatizer.

use std::collections::HashMap;

/// Condition a stem must meet for a [`SuffixRule`] to fire.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    /// The stem has at least this many characters.
    MinStem(usize),
    /// The stem has at least this many characters and contains a vowel.
    Vowel(usize),
    /// The stem's vowel-consonant measure is greater than this.
    Measure(usize),
    /// Never fires; stops later rules from matching the word.
    Keep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixRule {
    pub suffix: &'static str,
    pub replacement: &'static str,
    pub guard: Guard,
    /// Repair the stem after stripping a verbal ending (`hopp` -> `hop`,
    /// `hop` -> `hope`).
    pub repair: bool,
}

const fn rule(suffix: &'static str, replacement: &'static str, guard: Guard, repair: bool) -> SuffixRule {
    SuffixRule {
        suffix,
        replacement,
        guard,
        repair,
    }
}

/// The first rule whose suffix matches decides; if its guard fails the word
/// is left alone.
pub fn default_rules() -> Vec<SuffixRule> {
    use Guard::*;
    vec![
        rule("sses", "ss", MinStem(1), false),
        rule("ies", "y", MinStem(2), false),
        rule("ied", "y", MinStem(2), false),
        rule("eed", "ee", Measure(0), false),
        rule("ches", "ch", MinStem(1), false),
        rule("shes", "sh", MinStem(1), false),
        rule("zzes", "zz", MinStem(1), false),
        rule("xes", "x", MinStem(1), false),
        rule("oes", "o", MinStem(1), false),
        rule("ing", "", Vowel(2), true),
        rule("ed", "", Vowel(3), true),
        rule("ss", "ss", Keep, false),
        rule("us", "us", Keep, false),
        rule("is", "is", Keep, false),
        rule("s", "", MinStem(3), false),
    ]
}

fn is_vowel(chars: &[char], i: usize) -> bool {
    match chars[i] {
        'a' | 'e' | 'i' | 'o' | 'u' => true,
        'y' => i > 0 && !is_vowel(chars, i - 1),
        _ => false,
    }
}

/// Number of vowel-consonant sequences in `stem`.
fn measure(stem: &[char]) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..stem.len() {
        let v = is_vowel(stem, i);
        if prev_vowel && !v {
            m += 1;
        }
        prev_vowel = v;
    }
    m
}

fn ends_cvc(stem: &[char]) -> bool {
    let n = stem.len();
    n >= 3
        && !is_vowel(stem, n - 3)
        && is_vowel(stem, n - 2)
        && !is_vowel(stem, n - 1)
        && !matches!(stem[n - 1], 'w' | 'x' | 'y')
}

fn repair(stem: &mut Vec<char>) {
    let n = stem.len();
    if n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem, n - 1) && !matches!(stem[n - 1], 'l' | 's' | 'z' | 'f') {
        stem.pop();
        return;
    }
    let ends = |s: &str| stem.iter().rev().take(s.len()).rev().copied().eq(s.chars());
    let consonant_at = n >= 3 && ends("at") && !is_vowel(stem, n - 3);
    if consonant_at || ends("bl") || ends("iz") || ends("c") || ends("v") || (measure(stem) == 1 && ends_cvc(stem)) {
        stem.push('e');
    }
}

fn apply_rules(word: &str, rules: &[SuffixRule]) -> Option<String> {
    let rule = rules.iter().find(|r| word.len() > r.suffix.len() && word.ends_with(r.suffix))?;
    let mut stem: Vec<char> = word[..word.len() - rule.suffix.len()].chars().collect();
    let ok = match rule.guard {
        Guard::MinStem(n) => stem.len() >= n,
        Guard::Vowel(n) => stem.len() >= n && (0..stem.len()).any(|i| is_vowel(&stem, i)),
        Guard::Measure(m) => measure(&stem) > m,
        Guard::Keep => false,
    };
    if !ok {
        return None;
    }
    if rule.repair {
        repair(&mut stem);
    }
    stem.extend(rule.replacement.chars());
    Some(stem.into_iter().collect())
}

/// Lemmatizes one lowercase token. Dictionary entries win over the suffix
/// rules; hyphenated tokens only go through the dictionary. The result is a
/// fixed point, so lemmatizing a lemma returns it unchanged.
pub fn lemmatize(word: &str, dict: &HashMap<String, String>, rules: &[SuffixRule]) -> String {
    const MAX_STEPS: usize = 8;
    let mut current = word.to_owned();
    for _ in 0..MAX_STEPS {
        let next = match dict.get(&current) {
            Some(lemma) => lemma.clone(),
            None if current.contains('-') => return current,
            None => match apply_rules(&current, rules) {
                Some(stem) => stem,
                None => return current,
            },
        };
        if next == current || next.is_empty() {
            return current;
        }
        current = next;
    }
    current
}
