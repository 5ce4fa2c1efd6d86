//! Corpus files: one word per line, `#` comments, blank line = empty word.

use subfact::{Error, FeatureSystem, Word};

#[derive(Debug)]
pub struct CorpusError {
    pub line: usize,
    pub source: Error,
}

impl std::fmt::Display for CorpusError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "corpus line {}: {}", self.line, self.source)
    }
}

/// A corpus line that is not a comment, trimmed of surrounding whitespace.
pub fn word_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'))
}

pub fn read_corpus(text: &str, fs: &FeatureSystem) -> Result<Vec<Word>, CorpusError> {
    word_lines(text)
        .map(|(line, l)| {
            fs.parse_word(l)
                .map_err(|source| CorpusError { line, source })
        })
        .collect()
}
