//! The subfactor partial order.
//!
//! For linear factors containment reduces to a per-position subset test along
//! a contiguous window (successor) or a strictly increasing index map
//! (precedence). [`GeneralStructure`] covers the definition-level notions of
//! connectedness and restriction over arbitrary finite relational structures.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::factor::{Factor, OrderType, WordModel};
use crate::features::{FeatureSystem, PropSet};

/// Opaque element identifier.
pub type Element = usize;

/// A finite relational structure with unary relations and at most one binary
/// relation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneralStructure {
    domain: BTreeSet<Element>,
    unary: BTreeMap<String, BTreeSet<Element>>,
    binary: BTreeMap<String, BTreeSet<(Element, Element)>>,
}

impl GeneralStructure {
    pub fn new(
        domain: BTreeSet<Element>,
        unary: BTreeMap<String, BTreeSet<Element>>,
        binary: BTreeMap<String, BTreeSet<(Element, Element)>>,
    ) -> Result<Self> {
        if binary.len() > 1 {
            return Err(Error::InvalidStructure(
                "more than one binary relation".into(),
            ));
        }
        for (name, members) in &unary {
            if let Some(x) = members.iter().find(|x| !domain.contains(x)) {
                return Err(Error::InvalidStructure(format!(
                    "{name}({x}) ranges outside the domain"
                )));
            }
        }
        for (name, pairs) in &binary {
            if let Some((x, y)) = pairs
                .iter()
                .find(|(x, y)| !domain.contains(x) || !domain.contains(y))
            {
                return Err(Error::InvalidStructure(format!(
                    "{name}({x},{y}) ranges outside the domain"
                )));
            }
        }
        Ok(GeneralStructure {
            domain,
            unary,
            binary,
        })
    }

    /// Explicit structure of a linear factor: domain `1..=n`, one unary
    /// relation per declared property, and the order's relation.
    pub fn from_factor(f: &Factor, fs: &FeatureSystem) -> Self {
        let n = f.len();
        let domain = (1..=n).collect();
        let unary = fs
            .properties()
            .iter()
            .map(|name| {
                let p = fs.property_id(name).unwrap();
                let members = f
                    .positions()
                    .iter()
                    .enumerate()
                    .filter(|(_, set)| set.contains(p))
                    .map(|(i, _)| i + 1)
                    .collect();
                (name.clone(), members)
            })
            .collect();
        let order = f.order();
        let pairs = (1..=n)
            .tuple_combinations()
            .filter(|&(i, j)| order.relates(i, j))
            .collect();
        let binary = BTreeMap::from([(order.relation_name().to_string(), pairs)]);
        GeneralStructure {
            domain,
            unary,
            binary,
        }
    }

    pub fn from_word_model(m: &WordModel, fs: &FeatureSystem) -> Self {
        Self::from_factor(m.factor(), fs)
    }

    pub fn domain(&self) -> &BTreeSet<Element> {
        &self.domain
    }

    pub fn unary(&self) -> &BTreeMap<String, BTreeSet<Element>> {
        &self.unary
    }

    pub fn binary(&self) -> &BTreeMap<String, BTreeSet<(Element, Element)>> {
        &self.binary
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }
}

/// True iff every pair of domain elements is linked by the symmetric
/// transitive closure of co-occurrence in a non-unary tuple.
pub fn is_connected(s: &GeneralStructure) -> bool {
    if s.domain.len() <= 1 {
        return true;
    }
    let index: BTreeMap<Element, usize> =
        s.domain.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut classes = UnionFind::<usize>::new(index.len());
    for &(x, y) in s.binary.values().flatten() {
        classes.union(index[&x], index[&y]);
    }
    let root = classes.find(0);
    (1..index.len()).all(|i| classes.find(i) == root)
}

/// Keeps the elements of `subset` and exactly the tuples lying wholly
/// within it.
pub fn restriction(s: &GeneralStructure, subset: &BTreeSet<Element>) -> Result<GeneralStructure> {
    if let Some(x) = subset.iter().find(|x| !s.domain.contains(x)) {
        return Err(Error::InvalidStructure(format!(
            "element {x} is not in the domain"
        )));
    }
    let unary = s
        .unary
        .iter()
        .map(|(name, members)| {
            (
                name.clone(),
                members.intersection(subset).copied().collect(),
            )
        })
        .collect();
    let binary = s
        .binary
        .iter()
        .map(|(name, pairs)| {
            let kept = pairs
                .iter()
                .filter(|(x, y)| subset.contains(x) && subset.contains(y))
                .copied()
                .collect();
            (name.clone(), kept)
        })
        .collect();
    Ok(GeneralStructure {
        domain: subset.clone(),
        unary,
        binary,
    })
}

/// Decides `a ⊑ b` for linear factors over the same order relation.
pub fn contains(a: &Factor, b: &Factor) -> Result<bool> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch);
    }
    Ok(embeds(a.positions(), b.positions(), a.order()))
}

pub(crate) fn embeds(a: &[PropSet], b: &[PropSet], order: OrderType) -> bool {
    if a.is_empty() {
        return true;
    }
    if a.len() > b.len() {
        return false;
    }
    match order {
        OrderType::Successor => b
            .windows(a.len())
            .any(|w| a.iter().zip(w).all(|(x, y)| x.is_subset(*y))),
        OrderType::Precedence => {
            // Greedy leftmost matching is exact for per-position predicates.
            let mut rest = b.iter();
            a.iter().all(|x| rest.any(|y| x.is_subset(*y)))
        }
    }
}

/// All factors of at most `k` positions contained in the word model,
/// including the empty factor.
pub fn subfactors_k(w: &WordModel, k: usize) -> BTreeSet<Factor> {
    subfactors_of(w.factor(), k)
}

/// All factors of at most `k` positions contained in `f`.
pub fn subfactors_of(f: &Factor, k: usize) -> BTreeSet<Factor> {
    let n = f.len();
    let order = f.order();
    let mut out = BTreeSet::from([Factor::empty(order)]);
    for m in 1..=k.min(n) {
        let index_sets: Vec<Vec<usize>> = match order {
            OrderType::Successor => (0..=n - m).map(|s| (s..s + m).collect()).collect(),
            OrderType::Precedence => (0..n).combinations(m).collect(),
        };
        for idx in index_sets {
            let choices = idx
                .iter()
                .map(|&i| f.positions()[i].subsets().collect::<Vec<_>>());
            for positions in choices.multi_cartesian_product() {
                out.insert(Factor::new(order, positions));
            }
        }
    }
    out
}
