//! Grammars as finite sets of forbidden factors.
//!
//! A word belongs to `L(G)` iff its model contains none of the forbidden
//! factors. The JSON form is
//!
//! ```json
//! {
//!   "order": "successor",
//!   "k": 2,
//!   "forbidden": ["[c]", "[a][a]", "[b][b]"]
//! }
//! ```
//!
//! with `forbidden` sorted by (length, text).

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{parse_factor, Factor, OrderType, WordModel};
use crate::features::{FeatureSystem, Word};
use crate::order::embeds;

/// Default cap on the number of words [`Grammar::language_up_to`] enumerates.
pub const LANGUAGE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct Grammar {
    fs: Arc<FeatureSystem>,
    order: OrderType,
    k: usize,
    // Deduplicated and sorted by `Factor::sort_key`.
    forbidden: Vec<Factor>,
}

impl PartialEq for Grammar {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.k == other.k && self.forbidden == other.forbidden
    }
}

impl Eq for Grammar {}

#[derive(Serialize, Deserialize)]
struct GrammarFile {
    order: OrderType,
    k: usize,
    forbidden: Vec<String>,
}

impl Grammar {
    pub fn new<I>(fs: Arc<FeatureSystem>, order: OrderType, k: usize, forbidden: I) -> Result<Self>
    where
        I: IntoIterator<Item = Factor>,
    {
        let set: BTreeSet<Factor> = forbidden.into_iter().collect();
        for f in &set {
            if f.order() != order {
                return Err(Error::OrderMismatch);
            }
            if f.len() > k {
                return Err(Error::FactorTooLong { len: f.len(), k });
            }
        }
        let mut forbidden: Vec<Factor> = set.into_iter().collect();
        forbidden.sort_by_cached_key(|f| f.sort_key(&fs));
        Ok(Grammar {
            fs,
            order,
            k,
            forbidden,
        })
    }

    /// Parses forbidden-factor notation strings against `fs`.
    pub fn from_notation<S: AsRef<str>>(
        fs: Arc<FeatureSystem>,
        order: OrderType,
        k: usize,
        forbidden: &[S],
    ) -> Result<Self> {
        let factors = forbidden
            .iter()
            .map(|t| parse_factor(t.as_ref(), &fs, order))
            .collect::<Result<Vec<_>>>()?;
        Grammar::new(fs, order, k, factors)
    }

    pub fn feature_system(&self) -> &Arc<FeatureSystem> {
        &self.fs
    }

    pub fn order(&self) -> OrderType {
        self.order
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn forbidden(&self) -> &[Factor] {
        &self.forbidden
    }

    pub fn len(&self) -> usize {
        self.forbidden.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forbidden.is_empty()
    }

    pub fn model(&self, word: &[crate::features::SymbolId]) -> WordModel {
        WordModel::new(&self.fs, word, self.order)
    }

    /// The first forbidden factor (in listing order) contained in the word's
    /// model, if any.
    pub fn violation(&self, word: &Word) -> Option<&Factor> {
        let m = self.model(word);
        self.forbidden
            .iter()
            .find(|f| embeds(f.positions(), m.factor().positions(), self.order))
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.violation(word).is_none()
    }

    /// Membership for a tokenized word; fails on unknown symbols.
    pub fn accepts_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> Result<bool> {
        Ok(self.accepts(&self.fs.encode_word(tokens)?))
    }

    /// Every accepted word of length at most `n`, in length-then-symbol order.
    pub fn language_up_to(&self, n: usize) -> Result<Vec<Word>> {
        self.language_up_to_with_limit(n, LANGUAGE_LIMIT)
    }

    pub fn language_up_to_with_limit(&self, n: usize, limit: u128) -> Result<Vec<Word>> {
        let sigma = self.fs.symbols().len() as u128;
        let mut total: u128 = 0;
        let mut layer: u128 = 1;
        for _ in 0..=n {
            total = total.saturating_add(layer);
            layer = layer.saturating_mul(sigma);
        }
        if total > limit {
            return Err(Error::BoundExceeded {
                what: "words to enumerate",
                size: total,
                limit,
            });
        }
        Ok(all_words_up_to(&self.fs, n)
            .into_iter()
            .filter(|w| self.accepts(w))
            .collect())
    }

    pub fn is_consistent(&self, data: &[Word]) -> bool {
        data.iter().all(|w| self.accepts(w))
    }

    /// Local certificate of maximal generality: every maximal proper subfactor
    /// of every forbidden factor is attested in some datum.
    pub fn is_most_general(&self, data: &[Word]) -> bool {
        let models: Vec<WordModel> = data.iter().map(|w| self.model(w)).collect();
        let attested = |f: &Factor| {
            models
                .iter()
                .any(|m| embeds(f.positions(), m.factor().positions(), self.order))
        };
        self.forbidden
            .iter()
            .all(|f| maximal_proper_subfactors(f).iter().all(attested))
    }

    /// Drops every forbidden factor that strictly contains another one.
    pub fn normalized(&self) -> Grammar {
        let keep = self
            .forbidden
            .iter()
            .filter(|f| {
                !self
                    .forbidden
                    .iter()
                    .any(|g| g != *f && embeds(g.positions(), f.positions(), self.order))
            })
            .cloned()
            .collect();
        Grammar {
            forbidden: keep,
            ..self.clone()
        }
    }

    /// True if no forbidden factor contains another.
    pub fn is_antichain(&self) -> bool {
        self.normalized().len() == self.len()
    }

    pub fn to_json(&self) -> String {
        let file = GrammarFile {
            order: self.order,
            k: self.k,
            forbidden: self.forbidden.iter().map(|f| f.render(&self.fs)).collect(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("grammar serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str, fs: Arc<FeatureSystem>) -> Result<Self> {
        let file: GrammarFile =
            serde_json::from_str(text).map_err(|e| Error::GrammarSyntax(e.to_string()))?;
        Grammar::from_notation(fs, file.order, file.k, &file.forbidden)
    }
}

/// Factors obtained by deleting one property from one position, or one
/// position (an end position under successor, any position under precedence).
pub fn maximal_proper_subfactors(f: &Factor) -> BTreeSet<Factor> {
    let positions = f.positions();
    let mut out = BTreeSet::new();
    for (i, set) in positions.iter().enumerate() {
        for p in set.iter() {
            let mut next = positions.to_vec();
            next[i] = set.without(p);
            out.insert(f.with_positions(next));
        }
    }
    let deletable: Vec<usize> = match f.order() {
        OrderType::Successor if positions.is_empty() => vec![],
        OrderType::Successor => vec![0, positions.len() - 1],
        OrderType::Precedence => (0..positions.len()).collect(),
    };
    for i in deletable {
        let mut next = positions.to_vec();
        next.remove(i);
        out.insert(f.with_positions(next));
    }
    out
}

/// `Σ^{≤n}` in length-then-symbol-index order.
pub fn all_words_up_to(fs: &FeatureSystem, n: usize) -> Vec<Word> {
    let symbols: Vec<_> = fs.symbol_ids().collect();
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|w| {
                symbols.iter().map(move |&s| {
                    let mut next = w.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
