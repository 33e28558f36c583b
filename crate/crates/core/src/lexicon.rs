//! Dictionary ingestion: token normalization, the line and JSON formats,
//! and closure validation.
//!
//! The text format has one entry per line:
//!
//! ```text
//! # comment
//! apple : red fruit
//! not   : not
//! ```
//!
//! The JSON format is a single object mapping each word to an array of
//! defining words.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Read};

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// A normalized dictionary token.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Word(String);

impl Word {
    pub fn new(raw: &str) -> Result<Self> {
        normalize_token(raw)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for Word {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Word {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Lowercases `raw` and strips surrounding whitespace and ASCII punctuation.
/// Interior characters are kept as they are.
pub fn normalize_token(raw: &str) -> Result<Word> {
    let trimmed = raw.trim_matches(|c: char| c.is_whitespace() || c.is_ascii_punctuation());
    if trimmed.is_empty() {
        return Err(Error::EmptyToken);
    }
    if trimmed.chars().any(char::is_whitespace) {
        return Err(Error::WhitespaceInToken(trimmed.to_string()));
    }
    Ok(Word(trimmed.to_lowercase()))
}

/// Entries as they were read, before any structural checks.
///
/// Unlike [`Dictionary`] this may hold repeated definienda, empty
/// definitions and definientes that have no entry of their own.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawEntries {
    entries: Vec<(Word, BTreeSet<Word>)>,
}

impl RawEntries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, word: Word, definition: impl IntoIterator<Item = Word>) {
        self.entries.push((word, definition.into_iter().collect()));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BTreeSet<Word>)> {
        self.entries.iter().map(|(w, d)| (w, d))
    }

    /// Removes the entry for `word`, if any. Used by tests that break closure.
    pub fn remove(&mut self, word: &Word) -> bool {
        let before = self.entries.len();
        self.entries.retain(|(w, _)| w != word);
        before != self.entries.len()
    }
}

impl FromIterator<(Word, BTreeSet<Word>)> for RawEntries {
    fn from_iter<I: IntoIterator<Item = (Word, BTreeSet<Word>)>>(iter: I) -> Self {
        RawEntries {
            entries: iter.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MissingWord {
    pub definiendum: Word,
    pub undefined: Word,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub missing_words: Vec<MissingWord>,
    pub empty_definitions: Vec<Word>,
    pub duplicate_definienda: Vec<Word>,
    /// Entries that mention themselves. Accepted, reported for information.
    pub self_defined: Vec<Word>,
}

impl ValidationReport {
    /// Whether the only defects are undefined definientes.
    pub fn open_only(&self) -> bool {
        self.empty_definitions.is_empty() && self.duplicate_definienda.is_empty()
    }
}

/// Checks the structural conditions a dictionary has to satisfy.
pub fn validate(raw: &RawEntries) -> ValidationReport {
    let mut seen = BTreeSet::new();
    let mut duplicates = BTreeSet::new();
    let mut empty = BTreeSet::new();
    let mut self_defined = BTreeSet::new();
    for (word, definition) in raw.iter() {
        if !seen.insert(word) {
            duplicates.insert(word.clone());
        }
        if definition.is_empty() {
            empty.insert(word.clone());
        }
        if definition.contains(word) {
            self_defined.insert(word.clone());
        }
    }
    let mut missing = BTreeSet::new();
    for (word, definition) in raw.iter() {
        for d in definition {
            if !seen.contains(d) {
                missing.insert((word.clone(), d.clone()));
            }
        }
    }
    let missing_words: Vec<MissingWord> = missing
        .into_iter()
        .map(|(definiendum, undefined)| MissingWord {
            definiendum,
            undefined,
        })
        .collect();
    ValidationReport {
        ok: missing_words.is_empty() && empty.is_empty() && duplicates.is_empty(),
        missing_words,
        empty_definitions: empty.into_iter().collect(),
        duplicate_definienda: duplicates.into_iter().collect(),
        self_defined: self_defined.into_iter().collect(),
    }
}

/// A finite set of entries `(w, d_w)` where every `d_w` is nonempty and
/// every defining word has an entry of its own.
///
/// An *open* dictionary additionally tolerates definientes without an
/// entry; those are kept in [`Dictionary::undefined`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dictionary {
    entries: BTreeMap<Word, BTreeSet<Word>>,
    undefined: BTreeSet<Word>,
}

impl Dictionary {
    /// Builds a closed dictionary.
    pub fn from_raw(raw: RawEntries) -> Result<Self> {
        Self::build(raw, false)
    }

    /// Builds a dictionary that may mention words it does not define.
    pub fn from_raw_open(raw: RawEntries) -> Result<Self> {
        Self::build(raw, true)
    }

    fn build(raw: RawEntries, allow_open: bool) -> Result<Self> {
        let report = validate(&raw);
        if let Some(dup) = report.duplicate_definienda.first() {
            return Err(Error::DuplicateEntry(dup.to_string()));
        }
        if !report.ok && !(allow_open && report.open_only()) {
            return Err(Error::Invalid(Box::new(report)));
        }
        let undefined = report
            .missing_words
            .into_iter()
            .map(|m| m.undefined)
            .collect();
        Ok(Dictionary {
            entries: raw.entries.into_iter().collect(),
            undefined,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn definition(&self, word: &str) -> Option<&BTreeSet<Word>> {
        self.entries.get(word)
    }

    /// Entries in lexicographic order of the definiendum.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BTreeSet<Word>)> {
        self.entries.iter()
    }

    /// Words used in definitions but never defined. Always empty for a
    /// closed dictionary.
    pub fn undefined(&self) -> &BTreeSet<Word> {
        &self.undefined
    }

    pub fn is_open(&self) -> bool {
        !self.undefined.is_empty()
    }

    /// Renders the dictionary in the line format, one sorted entry per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (word, definition) in &self.entries {
            out.push_str(word.as_str());
            out.push(':');
            for d in definition {
                out.push(' ');
                out.push_str(d.as_str());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("string map serializes")
    }
}

impl std::str::FromStr for Dictionary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_text(s.as_bytes())
    }
}

/// Reads the line format without checking closure.
pub fn parse_text_entries<R: BufRead>(source: R) -> Result<RawEntries> {
    let mut raw = RawEntries::new();
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Syntax {
            line: line_no,
            message: e.to_string(),
        })?;
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let syntax = |message: &str| Error::Syntax {
            line: line_no,
            message: message.to_string(),
        };
        let (lhs, rhs) = content
            .split_once(':')
            .ok_or_else(|| syntax("expected `word : definition`"))?;
        let word = normalize_token(lhs).map_err(|e| syntax(&e.to_string()))?;
        let mut definition = BTreeSet::new();
        for tok in rhs.split_whitespace() {
            match normalize_token(tok) {
                Ok(w) => {
                    definition.insert(w);
                }
                // bare punctuation between words
                Err(Error::EmptyToken) => {}
                Err(e) => return Err(syntax(&e.to_string())),
            }
        }
        if definition.is_empty() {
            return Err(syntax("empty definition"));
        }
        raw.entries.push((word, definition));
    }
    Ok(raw)
}

pub fn parse_text<R: BufRead>(source: R) -> Result<Dictionary> {
    Dictionary::from_raw(parse_text_entries(source)?)
}

/// Reads the JSON format without checking closure. Repeated keys are kept
/// so that validation can report them.
pub fn parse_json_entries<R: Read>(source: R) -> Result<RawEntries> {
    let mut de = serde_json::Deserializer::from_reader(source);
    let pairs = JsonEntries::deserialize(&mut de)
        .and_then(|entries| de.end().map(|_| entries))
        .map_err(|e| Error::Syntax {
            line: e.line(),
            message: e.to_string(),
        })?;
    let mut raw = RawEntries::new();
    for (key, tokens) in pairs.0 {
        let invalid = |message: String| Error::Syntax { line: 0, message };
        let word = normalize_token(&key).map_err(|e| invalid(format!("{key:?}: {e}")))?;
        let mut definition = BTreeSet::new();
        for tok in &tokens {
            let w = normalize_token(tok).map_err(|e| invalid(format!("{key:?}: {tok:?}: {e}")))?;
            definition.insert(w);
        }
        if definition.is_empty() {
            return Err(invalid(format!("{key:?}: empty definition")));
        }
        raw.entries.push((word, definition));
    }
    Ok(raw)
}

pub fn parse_json<R: Read>(source: R) -> Result<Dictionary> {
    Dictionary::from_raw(parse_json_entries(source)?)
}

struct JsonEntries(Vec<(String, Vec<String>)>);

impl<'de> Deserialize<'de> for JsonEntries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = JsonEntries;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object mapping words to arrays of words")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut entries = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, Vec<String>>()? {
                    entries.push((k, v));
                }
                Ok(JsonEntries(entries))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}
