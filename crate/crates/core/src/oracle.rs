//! Brute-force reference implementations.
//!
//! Nothing here is used by the learner. These functions restate the
//! definitions directly (string splits, searches over every injective map,
//! exhaustive factor enumeration) and are slow on purpose; each has a hard
//! size guard that errors instead of truncating.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::factor::{Factor, OrderType, WordModel};
use crate::features::{FeatureSystem, PropSet, Word};
use crate::grammar::Grammar;
use crate::order::{is_connected, Element, GeneralStructure};

type Pairs = BTreeSet<(Element, Element)>;

/// Most injective maps [`hom_embeds`] will try.
pub const MAP_LIMIT: u128 = 2_000_000;
/// Most factors [`enumerate_all_factors`] will produce.
pub const FACTOR_LIMIT: u128 = 1_000_000;
/// Most properties enumerated as free subsets of a position.
pub const SUBSET_PROPERTY_LIMIT: usize = 20;

/// `{u | w = l·u·r}`, including the empty string.
pub fn substrings<T: Clone + Ord>(w: &[T]) -> BTreeSet<Vec<T>> {
    let mut out = BTreeSet::new();
    for l in 0..=w.len() {
        for r in l..=w.len() {
            out.insert(w[l..r].to_vec());
        }
    }
    out
}

/// Every subsequence of `w`, including the empty string.
pub fn subsequences<T: Clone + Ord>(w: &[T]) -> BTreeSet<Vec<T>> {
    assert!(w.len() < 32, "subsequence enumeration is exponential");
    (0u32..1 << w.len())
        .map(|mask| {
            w.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

fn permutation_count(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    ((n - r + 1)..=n).map(|x| x as u128).product()
}

/// Whether some injective map from `a`'s domain into `b`'s preserves every
/// unary and binary tuple of `a`. `a` must be connected.
pub fn hom_embeds(a: &GeneralStructure, b: &GeneralStructure) -> Result<bool> {
    if !is_connected(a) {
        return Err(Error::NotConnected);
    }
    let maps = permutation_count(b.len(), a.len());
    if maps > MAP_LIMIT {
        return Err(Error::BoundExceeded {
            what: "injective maps",
            size: maps,
            limit: MAP_LIMIT,
        });
    }
    if a.len() > b.len() {
        return Ok(false);
    }
    let index: BTreeMap<Element, usize> = a
        .domain()
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i))
        .collect();

    let empty_unary = BTreeSet::new();
    let mut unary: Vec<(usize, &BTreeSet<Element>)> = Vec::new();
    for (name, members) in a.unary() {
        let target = b.unary().get(name).unwrap_or(&empty_unary);
        unary.extend(members.iter().map(|x| (index[x], target)));
    }
    let empty_binary = BTreeSet::new();
    let mut binary: Vec<(usize, usize, &Pairs)> = Vec::new();
    for (name, pairs) in a.binary() {
        let target = b.binary().get(name).unwrap_or(&empty_binary);
        binary.extend(pairs.iter().map(|(x, y)| (index[x], index[y], target)));
    }

    let targets: Vec<Element> = b.domain().iter().copied().collect();
    Ok(targets.into_iter().permutations(a.len()).any(|h| {
        unary.iter().all(|&(x, rel)| rel.contains(&h[x]))
            && binary
                .iter()
                .all(|&(x, y, rel)| rel.contains(&(h[x], h[y])))
    }))
}

/// `a ⊑ b` for linear factors by search over all injective position maps
/// that preserve the order relation and send each property set into a
/// superset.
pub fn factor_embeds(a: &Factor, b: &Factor) -> bool {
    let order = a.order();
    let (pa, pb) = (a.positions(), b.positions());
    if pa.len() > pb.len() {
        return false;
    }
    (0..pb.len()).permutations(pa.len()).any(|h| {
        pa.iter().zip(&h).all(|(x, &j)| x.is_subset(pb[j]))
            && (0..pa.len())
                .tuple_combinations()
                .all(|(i, j)| !order.relates(i, j) || order.relates(h[i], h[j]))
    })
}

/// Every property set a position may carry: class-consistent subsets of all
/// properties, or only subsets of some symbol's set when `realizable_only`.
pub fn position_sets(fs: &FeatureSystem, realizable_only: bool) -> Result<Vec<PropSet>> {
    let mut out = BTreeSet::new();
    if realizable_only {
        for s in fs.symbol_ids() {
            let set = fs.symbol_props(s);
            if set.len() > SUBSET_PROPERTY_LIMIT {
                return Err(Error::BoundExceeded {
                    what: "properties of one symbol",
                    size: set.len() as u128,
                    limit: SUBSET_PROPERTY_LIMIT as u128,
                });
            }
            out.extend(set.subsets());
        }
    } else {
        let n = fs.properties().len();
        if n > SUBSET_PROPERTY_LIMIT {
            return Err(Error::BoundExceeded {
                what: "properties",
                size: n as u128,
                limit: SUBSET_PROPERTY_LIMIT as u128,
            });
        }
        out.extend(
            fs.all_properties()
                .subsets()
                .filter(|&set| fs.is_consistent(set)),
        );
    }
    Ok(out.into_iter().collect())
}

/// Every factor of at most `k` positions.
pub fn enumerate_all_factors(
    fs: &FeatureSystem,
    order: OrderType,
    k: usize,
    realizable_only: bool,
) -> Result<BTreeSet<Factor>> {
    let sets = position_sets(fs, realizable_only)?;
    let c = sets.len() as u128;
    let total = (0..=k as u32).fold(0u128, |acc, i| acc.saturating_add(c.saturating_pow(i)));
    if total > FACTOR_LIMIT {
        return Err(Error::BoundExceeded {
            what: "factors to enumerate",
            size: total,
            limit: FACTOR_LIMIT,
        });
    }
    let mut out = BTreeSet::from([Factor::empty(order)]);
    for len in 1..=k {
        for positions in std::iter::repeat_n(sets.iter().copied(), len).multi_cartesian_product() {
            out.insert(Factor::new(order, positions));
        }
    }
    Ok(out)
}

/// The ⊑-minimal factors of at most `k` positions that no datum's model
/// contains, computed by exhaustive enumeration.
pub fn naive_learn(
    data: &[Word],
    fs: Arc<FeatureSystem>,
    order: OrderType,
    k: usize,
    realizable_only: bool,
) -> Result<Grammar> {
    if k < 1 {
        return Err(Error::InvalidK);
    }
    for w in data {
        if let Some(i) = w.iter().position(|s| s.0 >= fs.symbols().len()) {
            return Err(Error::UnknownSymbol {
                symbol: format!("#{}", w[i].0),
                position: i + 1,
            });
        }
    }
    let models: Vec<WordModel> = data.iter().map(|w| WordModel::new(&fs, w, order)).collect();
    let unattested: Vec<Factor> = enumerate_all_factors(&fs, order, k, realizable_only)?
        .into_iter()
        .filter(|f| !models.iter().any(|m| factor_embeds(f, m.factor())))
        .collect();
    let minimal: Vec<Factor> = unattested
        .iter()
        .filter(|f| {
            !unattested
                .iter()
                .any(|g| g.rank() < f.rank() && factor_embeds(g, f))
        })
        .cloned()
        .collect();
    Grammar::new(fs, order, k, minimal)
}
