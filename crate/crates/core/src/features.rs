//! Feature systems: the unary relations of a string model signature.
//!
//! A [`FeatureSystem`] names a finite, ordered set of properties, assigns every
//! alphabet symbol a non-empty property set, and groups properties into
//! incompatibility classes (at most one member of a class may hold at a
//! position). A conventional model is the degenerate case where every symbol is
//! its own property and all properties form a single class.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Upper bound on the number of declared properties.
pub const MAX_PROPERTIES: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropId(pub u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub usize);

/// A string over a feature system's alphabet.
pub type Word = Vec<SymbolId>;

/// A set of properties, iterated in the system's canonical (declaration) order.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropSet(u128);

impl PropSet {
    pub const EMPTY: PropSet = PropSet(0);

    pub fn singleton(p: PropId) -> Self {
        PropSet(1u128 << p.0)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, p: PropId) -> bool {
        self.0 & (1u128 << p.0) != 0
    }

    pub fn with(self, p: PropId) -> Self {
        PropSet(self.0 | (1u128 << p.0))
    }

    pub fn without(self, p: PropId) -> Self {
        PropSet(self.0 & !(1u128 << p.0))
    }

    pub fn union(self, other: PropSet) -> Self {
        PropSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PropSet) -> Self {
        PropSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: PropSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = PropId> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let p = rest.trailing_zeros();
            rest &= rest - 1;
            Some(PropId(p as u8))
        })
    }

    /// Every subset of `self`, starting with the empty set.
    pub fn subsets(self) -> impl Iterator<Item = PropSet> {
        // Standard submask walk, emitted in increasing order.
        let full = self.0;
        let mut next = Some(0u128);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(PropSet(cur))
        })
    }
}

impl FromIterator<PropId> for PropSet {
    fn from_iter<I: IntoIterator<Item = PropId>>(iter: I) -> Self {
        iter.into_iter().fold(PropSet::EMPTY, PropSet::with)
    }
}

impl fmt::Debug for PropSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|p| p.0)).finish()
    }
}

#[derive(Clone, Debug)]
pub struct FeatureSystem {
    properties: Vec<String>,
    property_index: HashMap<String, PropId>,
    symbols: Vec<String>,
    symbol_index: HashMap<String, SymbolId>,
    symbol_props: Vec<PropSet>,
    classes: Vec<PropSet>,
    class_of: Vec<Option<usize>>,
    multi_char: bool,
}

/// Collects declarations; [`FeatureSystemBuilder::build`] validates them.
#[derive(Clone, Debug, Default)]
pub struct FeatureSystemBuilder {
    properties: Vec<String>,
    classes: Vec<Vec<String>>,
    symbols: Vec<(String, Vec<String>)>,
}

impl FeatureSystemBuilder {
    pub fn property(mut self, name: impl Into<String>) -> Self {
        self.properties.push(name.into());
        self
    }

    pub fn class<I, S>(mut self, members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.classes
            .push(members.into_iter().map(Into::into).collect());
        self
    }

    pub fn symbol<I, S>(mut self, symbol: impl Into<String>, props: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.symbols
            .push((symbol.into(), props.into_iter().map(Into::into).collect()));
        self
    }

    pub fn build(self) -> Result<FeatureSystem> {
        if self.properties.len() > MAX_PROPERTIES {
            return Err(Error::TooManyProperties {
                max: MAX_PROPERTIES,
                got: self.properties.len(),
            });
        }
        let mut property_index = HashMap::new();
        for (i, name) in self.properties.iter().enumerate() {
            if property_index
                .insert(name.clone(), PropId(i as u8))
                .is_some()
            {
                return Err(Error::DuplicateProperty(name.clone()));
            }
        }
        let lookup = |name: &str| {
            property_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownProperty(name.to_string()))
        };

        let mut class_of = vec![None; self.properties.len()];
        let mut classes = Vec::with_capacity(self.classes.len());
        for members in &self.classes {
            let mut set = PropSet::EMPTY;
            for name in members {
                let p = lookup(name)?;
                if class_of[p.0 as usize].is_some() {
                    return Err(Error::OverlappingClasses(name.clone()));
                }
                class_of[p.0 as usize] = Some(classes.len());
                set = set.with(p);
            }
            classes.push(set);
        }

        let mut fs = FeatureSystem {
            properties: self.properties,
            property_index: property_index.clone(),
            symbols: Vec::new(),
            symbol_index: HashMap::new(),
            symbol_props: Vec::new(),
            classes,
            class_of,
            multi_char: false,
        };

        for (symbol, props) in self.symbols {
            if symbol.is_empty() || symbol.chars().any(char::is_whitespace) {
                return Err(Error::InvalidStructure(format!(
                    "symbol `{symbol}` is empty or contains whitespace"
                )));
            }
            if fs.symbol_index.contains_key(&symbol) {
                return Err(Error::DuplicateSymbol(symbol));
            }
            let mut set = PropSet::EMPTY;
            for name in &props {
                set = set.with(lookup(name)?);
            }
            if set.is_empty() {
                return Err(Error::EmptySymbol(symbol));
            }
            fs.check_consistent(set, 1)?;
            if let Some(i) = fs.symbol_props.iter().position(|&s| s == set) {
                return Err(Error::IndistinctSymbols(fs.symbols[i].clone(), symbol));
            }
            fs.multi_char |= symbol.chars().count() > 1;
            fs.symbol_index
                .insert(symbol.clone(), SymbolId(fs.symbols.len()));
            fs.symbols.push(symbol);
            fs.symbol_props.push(set);
        }
        Ok(fs)
    }
}

impl FeatureSystem {
    pub fn builder() -> FeatureSystemBuilder {
        FeatureSystemBuilder::default()
    }

    /// The conventional model over `symbols`: each symbol is its own property,
    /// and all of them are mutually incompatible.
    pub fn conventional<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let mut b = FeatureSystem::builder();
        for s in &symbols {
            b = b.property(s.clone());
        }
        b = b.class(symbols.iter().cloned());
        for s in &symbols {
            b = b.symbol(s.clone(), [s.clone()]);
        }
        b.build()
    }

    /// Parses the line-oriented feature-table format:
    ///
    /// ```text
    /// property <name>
    /// class <name> <name> ...
    /// symbol <sym> : <prop>,<prop>,...
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn from_table(text: &str) -> Result<Self> {
        let mut b = FeatureSystem::builder();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            let body = line.trim_start();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let syntax = |byte: usize, message: String| Error::TableSyntax {
                line: lineno + 1,
                column: line[..byte].chars().count() + 1,
                message,
            };
            let start = line.len() - body.len();
            let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let rest_at = start + keyword.len() + (body.len() - keyword.len() - rest.len());
            match keyword {
                "property" => {
                    let names: Vec<&str> = rest.split_whitespace().collect();
                    if names.len() != 1 {
                        return Err(syntax(rest_at, "expected exactly one property name".into()));
                    }
                    check_name(names[0]).map_err(|m| syntax(rest_at, m))?;
                    b = b.property(names[0]);
                }
                "class" => {
                    let names: Vec<&str> = rest.split_whitespace().collect();
                    if names.is_empty() {
                        return Err(syntax(
                            rest_at,
                            "expected at least one property name".into(),
                        ));
                    }
                    b = b.class(names);
                }
                "symbol" => {
                    let Some((sym, props)) = rest.split_once(':') else {
                        return Err(syntax(rest_at, "expected `symbol <sym> : <props>`".into()));
                    };
                    let sym = sym.trim();
                    if sym.is_empty() || sym.contains(char::is_whitespace) {
                        return Err(syntax(rest_at, "expected a single symbol token".into()));
                    }
                    let props_at = rest_at + rest.len() - props.len();
                    let names: Vec<&str> = props.split(',').map(str::trim).collect();
                    if names.iter().any(|n| n.is_empty()) {
                        return Err(syntax(props_at, "empty property name in list".into()));
                    }
                    b = b.symbol(sym, names);
                }
                other => {
                    return Err(syntax(start, format!("unknown declaration `{other}`")));
                }
            }
        }
        b.build()
    }

    pub fn properties(&self) -> &[String] {
        &self.properties
    }

    pub fn property_name(&self, p: PropId) -> &str {
        &self.properties[p.0 as usize]
    }

    pub fn property_id(&self, name: &str) -> Option<PropId> {
        self.property_index.get(name).copied()
    }

    pub fn all_properties(&self) -> PropSet {
        (0..self.properties.len())
            .map(|i| PropId(i as u8))
            .collect()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol_ids(&self) -> impl Iterator<Item = SymbolId> {
        (0..self.symbols.len()).map(SymbolId)
    }

    pub fn symbol_name(&self, s: SymbolId) -> &str {
        &self.symbols[s.0]
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.symbol_index.get(name).copied()
    }

    pub fn symbol_props(&self, s: SymbolId) -> PropSet {
        self.symbol_props[s.0]
    }

    pub fn classes(&self) -> &[PropSet] {
        &self.classes
    }

    /// True if any symbol name is longer than one character; corpora are then
    /// tokenized on whitespace instead of per character.
    pub fn multi_char_symbols(&self) -> bool {
        self.multi_char
    }

    /// First pair of properties in `set` that share an incompatibility class.
    pub fn conflict(&self, set: PropSet) -> Option<(PropId, PropId)> {
        self.classes.iter().find_map(|&class| {
            let mut hits = set.intersection(class).iter();
            match (hits.next(), hits.next()) {
                (Some(a), Some(b)) => Some((a, b)),
                _ => None,
            }
        })
    }

    pub fn is_consistent(&self, set: PropSet) -> bool {
        self.conflict(set).is_none()
    }

    pub(crate) fn check_consistent(&self, set: PropSet, position: usize) -> Result<()> {
        match self.conflict(set) {
            None => Ok(()),
            Some((a, b)) => Err(Error::Incompatible {
                position,
                first: self.property_name(a).to_string(),
                second: self.property_name(b).to_string(),
            }),
        }
    }

    /// Whether `p` can be added to `set` without violating a class.
    pub fn can_extend(&self, set: PropSet, p: PropId) -> bool {
        if set.contains(p) {
            return false;
        }
        match self.class_of[p.0 as usize] {
            Some(c) => set.intersection(self.classes[c]).is_empty(),
            None => true,
        }
    }

    /// Whether some symbol carries every property in `set`.
    pub fn is_realizable(&self, set: PropSet) -> bool {
        self.symbol_props.iter().any(|&s| set.is_subset(s))
    }

    /// Splits a corpus line into symbol tokens (characters, or whitespace
    /// separated tokens when the alphabet has multi-character symbols).
    pub fn split_word<'a>(&self, text: &'a str) -> Vec<&'a str> {
        if self.multi_char {
            text.split_whitespace().collect()
        } else {
            text.char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .map(|(i, c)| &text[i..i + c.len_utf8()])
                .collect()
        }
    }

    pub fn encode_word<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Word> {
        tokens
            .iter()
            .enumerate()
            .map(|(i, t)| {
                self.symbol_id(t.as_ref())
                    .ok_or_else(|| Error::UnknownSymbol {
                        symbol: t.as_ref().to_string(),
                        position: i + 1,
                    })
            })
            .collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.encode_word(&self.split_word(text))
    }

    pub fn render_word(&self, word: &[SymbolId]) -> String {
        let sep = if self.multi_char { " " } else { "" };
        word.iter()
            .map(|&s| self.symbol_name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl FromStr for FeatureSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FeatureSystem::from_table(s)
    }
}

fn check_name(name: &str) -> std::result::Result<(), String> {
    if name.contains(['[', ']', ',']) {
        Err(format!(
            "property name `{name}` may not contain `[`, `]` or `,`"
        ))
    } else {
        Ok(())
    }
}
