//! Linear factors, word models, and the bracket notation `[p,q][][r]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureSystem, PropSet, SymbolId, Word};

/// The binary order relation of a string model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderType {
    /// Immediate successor: consecutive positions only.
    Successor,
    /// General precedence: every ordered pair of positions.
    Precedence,
}

impl OrderType {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderType::Successor => "successor",
            OrderType::Precedence => "precedence",
        }
    }

    /// Relation name used in explicit structures.
    pub fn relation_name(self) -> &'static str {
        match self {
            OrderType::Successor => "succ",
            OrderType::Precedence => "prec",
        }
    }

    /// Whether positions `i < j` of a linear structure are related.
    pub fn relates(self, i: usize, j: usize) -> bool {
        match self {
            OrderType::Successor => j == i + 1,
            OrderType::Precedence => i < j,
        }
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "successor" | "succ" => Ok(OrderType::Successor),
            "precedence" | "prec" => Ok(OrderType::Precedence),
            _ => Err(format!(
                "unknown order `{s}` (expected successor or precedence)"
            )),
        }
    }
}

/// A connected linear structure: a sequence of property sets under one order
/// relation. The zero-length factor is the empty structure.
///
/// Property sets are bit sets indexed by declaration order, so every `Factor`
/// value is already in canonical form; two factors denote isomorphic
/// structures iff they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    order: OrderType,
    positions: Vec<PropSet>,
}

impl Factor {
    pub fn empty(order: OrderType) -> Self {
        Factor {
            order,
            positions: Vec::new(),
        }
    }

    /// Builds a factor without checking it against a feature system; see
    /// [`canonicalize`] for the checked route.
    pub fn new(order: OrderType, positions: Vec<PropSet>) -> Self {
        Factor { order, positions }
    }

    pub fn order(&self) -> OrderType {
        self.order
    }

    pub fn positions(&self) -> &[PropSet] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Number of positions plus number of property memberships. Every least
    /// superfactor has rank exactly one more than its subfactor.
    pub fn rank(&self) -> usize {
        self.len() + self.positions.iter().map(|p| p.len()).sum::<usize>()
    }

    pub(crate) fn with_positions(&self, positions: Vec<PropSet>) -> Factor {
        Factor {
            order: self.order,
            positions,
        }
    }

    pub fn render(&self, fs: &FeatureSystem) -> String {
        render_factor(self, fs)
    }

    /// Sort key used for every deterministic listing: length, then text.
    pub fn sort_key(&self, fs: &FeatureSystem) -> (usize, String) {
        (self.len(), self.render(fs))
    }
}

/// Validates `f` against `fs` and returns its canonical form.
pub fn canonicalize(f: &Factor, fs: &FeatureSystem) -> Result<Factor> {
    let known = fs.all_properties();
    for (i, &set) in f.positions.iter().enumerate() {
        if !set.is_subset(known) {
            let bad = set.iter().find(|p| !known.contains(*p)).unwrap();
            return Err(Error::UnknownProperty(format!("#{}", bad.0)));
        }
        fs.check_consistent(set, i + 1)?;
    }
    Ok(f.clone())
}

pub fn render_factor(f: &Factor, fs: &FeatureSystem) -> String {
    let mut out = String::new();
    for set in &f.positions {
        out.push('[');
        for (i, p) in set.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(fs.property_name(p));
        }
        out.push(']');
    }
    out
}

/// Parses zero or more `[p1,p2,...]` groups. Whitespace between groups and
/// around names is ignored; the empty string is the empty structure.
pub fn parse_factor(text: &str, fs: &FeatureSystem, order: OrderType) -> Result<Factor> {
    let mut positions = Vec::new();
    let mut rest = text;
    loop {
        let trimmed = rest.trim_start();
        let at = text.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        let Some(body) = trimmed.strip_prefix('[') else {
            return Err(Error::FactorSyntax {
                offset: at,
                message: "expected `[`".into(),
            });
        };
        let Some(close) = body.find(']') else {
            return Err(Error::FactorSyntax {
                offset: at,
                message: "unterminated `[`".into(),
            });
        };
        let inner = &body[..close];
        if let Some(nested) = inner.find('[') {
            return Err(Error::FactorSyntax {
                offset: at + 1 + nested,
                message: "nested `[`".into(),
            });
        }
        let mut set = PropSet::EMPTY;
        if !inner.trim().is_empty() {
            let mut offset = at + 1;
            for name in inner.split(',') {
                let trimmed_name = name.trim();
                if trimmed_name.is_empty() {
                    return Err(Error::FactorSyntax {
                        offset,
                        message: "empty property name".into(),
                    });
                }
                let p = fs
                    .property_id(trimmed_name)
                    .ok_or_else(|| Error::UnknownProperty(trimmed_name.to_string()))?;
                set = set.with(p);
                offset += name.len() + 1;
            }
        }
        fs.check_consistent(set, positions.len() + 1)?;
        positions.push(set);
        rest = &body[close + 1..];
    }
    Ok(Factor { order, positions })
}

/// The saturated factor image of a concrete word: position `i` carries the
/// full property set of the word's `i`-th symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordModel {
    word: Word,
    factor: Factor,
}

impl WordModel {
    /// Builds the model of an already-encoded word. Symbol ids must come from
    /// `fs`.
    pub fn new(fs: &FeatureSystem, word: &[SymbolId], order: OrderType) -> Self {
        let positions = word.iter().map(|&s| fs.symbol_props(s)).collect();
        WordModel {
            word: word.to_vec(),
            factor: Factor { order, positions },
        }
    }

    pub fn word(&self) -> &[SymbolId] {
        &self.word
    }

    pub fn factor(&self) -> &Factor {
        &self.factor
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

pub fn build_word_model<S: AsRef<str>>(
    word: &[S],
    fs: &FeatureSystem,
    order: OrderType,
) -> Result<WordModel> {
    let ids = fs.encode_word(word)?;
    Ok(WordModel::new(fs, &ids, order))
}
