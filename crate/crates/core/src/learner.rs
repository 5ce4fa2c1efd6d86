//! Bottom-up learning of forbidden factors.
//!
//! The learner walks the factor lattice breadth-first from the empty
//! structure. A dequeued factor attested in the data is expanded into its
//! least superfactors; an unattested one becomes a forbidden factor and its
//! filter is never entered. Generated superfactors are dropped when they
//! exceed `k` positions, contain a forbidden factor, or were already seen.
//!
//! Every least superfactor has rank (positions plus property memberships)
//! exactly one higher than its source, so the FIFO queue holds at most two
//! adjacent ranks at a time. Expansion of a rank is deferred until every
//! factor of that rank has been classified: a factor is then generated only
//! after all of its proper subfactors have been, and the forbidden set grows
//! into exactly the ⊑-minimal unattested factors.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{Factor, OrderType, WordModel};
use crate::features::{FeatureSystem, PropId, PropSet, Word};
use crate::grammar::Grammar;
use crate::oracle;
use crate::order::embeds;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LearnConfig {
    /// Maximum factor size in positions.
    pub k: usize,
    /// Skip factors with a position no symbol can realize.
    pub prune_unrealizable: bool,
    /// Record every queue event in [`Learned::trace`].
    pub trace: bool,
}

impl LearnConfig {
    pub fn new(k: usize) -> Self {
        LearnConfig {
            k,
            prune_unrealizable: true,
            trace: false,
        }
    }

    pub fn with_pruning(mut self, prune_unrealizable: bool) -> Self {
        self.prune_unrealizable = prune_unrealizable;
        self
    }

    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LearnStats {
    pub dequeued: usize,
    pub enqueued: usize,
    pub grammar_size: usize,
    /// `Σ_{i=1..k} (2^n)^i` for `n` properties, saturating.
    pub search_space_bound: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Enqueue(Factor),
    Dequeue(Factor),
    Forbid(Factor),
}

#[derive(Clone, Debug)]
pub struct Learned {
    pub grammar: Grammar,
    pub stats: LearnStats,
    /// Empty unless [`LearnConfig::trace`] is set.
    pub trace: Vec<TraceEvent>,
}

/// Upper bound on the number of non-empty factors of at most `k` positions
/// over `properties` unary relations.
pub fn search_space_bound(properties: usize, k: usize) -> u128 {
    let per_position = if properties >= 128 {
        u128::MAX
    } else {
        1u128 << properties
    };
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for _ in 0..k {
        term = term.saturating_mul(per_position);
        total = total.saturating_add(term);
    }
    total
}

/// The least superfactors of `s`: one compatible property added at one
/// position, or one empty position added (at either end under successor, in
/// any gap under precedence). Sorted by (length, text).
pub fn next_sup_fact(s: &Factor, fs: &FeatureSystem, prune_unrealizable: bool) -> Vec<Factor> {
    let admissible = |set: PropSet| !prune_unrealizable || fs.is_realizable(set);
    let positions = s.positions();
    let mut out = BTreeSet::new();

    for (i, &set) in positions.iter().enumerate() {
        for p in (0..fs.properties().len()).map(|p| PropId(p as u8)) {
            if !fs.can_extend(set, p) || !admissible(set.with(p)) {
                continue;
            }
            let mut next = positions.to_vec();
            next[i] = set.with(p);
            out.insert(Factor::new(s.order(), next));
        }
    }

    if admissible(PropSet::EMPTY) {
        let gaps: Vec<usize> = match s.order() {
            OrderType::Successor => vec![0, positions.len()],
            OrderType::Precedence => (0..=positions.len()).collect(),
        };
        for gap in gaps {
            let mut next = positions.to_vec();
            next.insert(gap, PropSet::EMPTY);
            out.insert(Factor::new(s.order(), next));
        }
    }

    let mut out: Vec<Factor> = out.into_iter().collect();
    out.sort_by_cached_key(|f| f.sort_key(fs));
    out
}

pub fn learn(
    data: &[Word],
    fs: Arc<FeatureSystem>,
    order: OrderType,
    cfg: LearnConfig,
) -> Result<Learned> {
    if cfg.k < 1 {
        return Err(Error::InvalidK);
    }
    check_words(data, &fs)?;
    let models: Vec<WordModel> = data.iter().map(|w| WordModel::new(&fs, w, order)).collect();
    let attested = |f: &Factor| {
        models
            .iter()
            .any(|m| embeds(f.positions(), m.factor().positions(), order))
    };

    let mut trace = Vec::new();
    let mut record = |e: TraceEvent| {
        if cfg.trace {
            trace.push(e);
        }
    };

    let mut stats = LearnStats {
        search_space_bound: search_space_bound(fs.properties().len(), cfg.k),
        ..LearnStats::default()
    };
    let mut forbidden: Vec<Factor> = Vec::new();
    let mut visited: HashSet<Factor> = HashSet::new();
    let mut queue: VecDeque<Factor> = VecDeque::new();
    let mut queued: HashSet<Factor> = HashSet::new();

    let start = Factor::empty(order);
    record(TraceEvent::Enqueue(start.clone()));
    queue.push_back(start);
    stats.enqueued += 1;

    while !queue.is_empty() {
        let mut expand = Vec::new();
        while let Some(s) = queue.pop_front() {
            queued.remove(&s);
            stats.dequeued += 1;
            record(TraceEvent::Dequeue(s.clone()));
            visited.insert(s.clone());
            if attested(&s) {
                expand.push(s);
            } else {
                record(TraceEvent::Forbid(s.clone()));
                forbidden.push(s);
            }
        }
        for s in expand {
            for sup in next_sup_fact(&s, &fs, cfg.prune_unrealizable) {
                if sup.len() > cfg.k
                    || forbidden
                        .iter()
                        .any(|g| embeds(g.positions(), sup.positions(), order))
                    || visited.contains(&sup)
                    || queued.contains(&sup)
                {
                    continue;
                }
                record(TraceEvent::Enqueue(sup.clone()));
                queued.insert(sup.clone());
                queue.push_back(sup);
                stats.enqueued += 1;
            }
        }
    }

    stats.grammar_size = forbidden.len();
    let grammar = Grammar::new(fs, order, cfg.k, forbidden)?;
    Ok(Learned {
        grammar,
        stats,
        trace,
    })
}

fn check_words(data: &[Word], fs: &FeatureSystem) -> Result<()> {
    let n = fs.symbols().len();
    for w in data {
        if let Some(i) = w.iter().position(|s| s.0 >= n) {
            return Err(Error::UnknownSymbol {
                symbol: format!("#{}", w[i].0),
                position: i + 1,
            });
        }
    }
    Ok(())
}

/// Outcome of checking a grammar against the three learning criteria.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    /// Every datum is accepted.
    pub consistent: bool,
    /// The bounded language equals that of the brute-force minimal grammar.
    pub smallest_language: bool,
    /// Every forbidden factor's maximal proper subfactors are attested.
    pub most_general: bool,
    /// The forbidden set equals the brute-force one exactly.
    pub equals_oracle: bool,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.consistent && self.smallest_language && self.most_general
    }
}

/// Learns a grammar and checks it against the brute-force oracle, comparing
/// languages over words of length at most `upto`.
pub fn verify_theorem(
    data: &[Word],
    fs: Arc<FeatureSystem>,
    order: OrderType,
    cfg: LearnConfig,
    upto: usize,
) -> Result<TheoremReport> {
    let learned = learn(data, fs, order, cfg)?;
    verify_grammar(&learned.grammar, data, cfg, upto)
}

/// Checks an arbitrary grammar against the learning criteria for `data`.
pub fn verify_grammar(
    grammar: &Grammar,
    data: &[Word],
    cfg: LearnConfig,
    upto: usize,
) -> Result<TheoremReport> {
    let fs = grammar.feature_system().clone();
    let reference = oracle::naive_learn(data, fs, grammar.order(), cfg.k, cfg.prune_unrealizable)?;
    Ok(TheoremReport {
        consistent: grammar.is_consistent(data),
        smallest_language: grammar.language_up_to(upto)? == reference.language_up_to(upto)?,
        most_general: grammar.is_most_general(data),
        equals_oracle: grammar.forbidden() == reference.forbidden(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::parse_factor;

    fn caps() -> FeatureSystem {
        let mut b = FeatureSystem::builder().property("capital");
        let letters: Vec<String> = ('a'..='z').map(String::from).collect();
        for l in &letters {
            b = b.property(l.clone());
        }
        b = b.class(letters.clone());
        for l in &letters {
            b = b.symbol(l.clone(), [l.clone()]);
            b = b.symbol(l.to_uppercase(), ["capital".to_string(), l.clone()]);
        }
        b.build().unwrap()
    }

    fn texts(fs: &FeatureSystem, fs_out: &[Factor]) -> Vec<String> {
        fs_out.iter().map(|f| f.render(fs)).collect()
    }

    #[test]
    fn sup_facts_of_empty() {
        let fs = caps();
        for order in [OrderType::Successor, OrderType::Precedence] {
            let out = next_sup_fact(&Factor::empty(order), &fs, true);
            assert_eq!(texts(&fs, &out), ["[]"]);
        }
    }

    #[test]
    fn sup_facts_of_bare_position() {
        let fs = caps();
        let s = parse_factor("[]", &fs, OrderType::Successor).unwrap();
        let out = texts(&fs, &next_sup_fact(&s, &fs, true));
        assert_eq!(out.len(), 28);
        assert!(out.contains(&"[capital]".to_string()));
        assert!(out.contains(&"[z]".to_string()));
        assert_eq!(out.last().unwrap(), "[][]");
    }

    #[test]
    fn sup_facts_of_letter() {
        let fs = caps();
        let s = parse_factor("[a]", &fs, OrderType::Successor).unwrap();
        let out = texts(&fs, &next_sup_fact(&s, &fs, true));
        assert_eq!(out, ["[capital,a]", "[][a]", "[a][]"]);
    }

    #[test]
    fn sup_facts_under_precedence() {
        let fs = FeatureSystem::builder()
            .property("+str")
            .property("-str")
            .property("+ant")
            .property("-ant")
            .property("+voi")
            .property("-voi")
            .class(["+str", "-str"])
            .class(["+ant", "-ant"])
            .class(["+voi", "-voi"])
            .symbol("s", ["+str", "+ant", "-voi"])
            .build()
            .unwrap();
        let s = parse_factor("[+str][+str]", &fs, OrderType::Precedence).unwrap();
        let out = texts(&fs, &next_sup_fact(&s, &fs, false));
        for want in [
            "[+str,+ant][+str]",
            "[+str][+str,-ant]",
            "[][+str][+str]",
            "[+str][][+str]",
            "[+str][+str][]",
        ] {
            assert!(out.contains(&want.to_string()), "{want}");
        }
        assert!(!out.iter().any(|f| f.contains("-str")));
        // 2 positions x 4 compatible properties + 3 gaps
        assert_eq!(out.len(), 11);
        // Realizability leaves only what `s` can carry.
        let pruned = texts(&fs, &next_sup_fact(&s, &fs, true));
        assert!(pruned.contains(&"[+str,+ant][+str]".to_string()));
        assert!(!pruned.contains(&"[+str][+str,-ant]".to_string()));
    }

    #[test]
    fn learns_alternating_grammar() {
        let fs = Arc::new(FeatureSystem::conventional(["a", "b", "c"]).unwrap());
        let data: Vec<Word> = ["ab", "ba", "abab"]
            .iter()
            .map(|w| fs.parse_word(w).unwrap())
            .collect();
        let out = learn(&data, fs.clone(), OrderType::Successor, LearnConfig::new(2)).unwrap();
        assert_eq!(
            texts(&fs, out.grammar.forbidden()),
            ["[c]", "[a][a]", "[b][b]"]
        );
        assert_eq!(out.stats.grammar_size, 3);
        assert!(out.stats.dequeued >= out.stats.grammar_size);
        assert_eq!(out.stats.search_space_bound, 8 + 64);
    }

    #[test]
    fn no_data_forbids_everything() {
        let fs = Arc::new(caps());
        let out = learn(&[], fs.clone(), OrderType::Precedence, LearnConfig::new(3)).unwrap();
        assert_eq!(texts(&fs, out.grammar.forbidden()), [""]);
        assert!(out.grammar.language_up_to(2).unwrap().is_empty());
        assert_eq!(out.stats.dequeued, 1);
    }

    #[test]
    fn empty_word_attests_only_the_empty_factor() {
        let fs = Arc::new(FeatureSystem::conventional(["a", "b"]).unwrap());
        let out = learn(
            &[vec![]],
            fs.clone(),
            OrderType::Successor,
            LearnConfig::new(2),
        )
        .unwrap();
        assert_eq!(texts(&fs, out.grammar.forbidden()), ["[]"]);
    }

    #[test]
    fn rejects_bad_input() {
        let fs = Arc::new(FeatureSystem::conventional(["a"]).unwrap());
        assert!(matches!(
            learn(&[], fs.clone(), OrderType::Successor, LearnConfig::new(0)),
            Err(Error::InvalidK)
        ));
        let bogus = vec![vec![crate::features::SymbolId(9)]];
        assert!(matches!(
            learn(&bogus, fs, OrderType::Successor, LearnConfig::new(1)),
            Err(Error::UnknownSymbol { .. })
        ));
    }

    #[test]
    fn capital_is_the_only_constraint() {
        let fs = Arc::new(caps());
        let data: Vec<Word> = [
            "the", "quick", "brown", "fox", "jumps", "over", "a", "lazy", "dog",
        ]
        .iter()
        .map(|w| fs.parse_word(w).unwrap())
        .collect();
        let cfg = LearnConfig::new(1).with_trace(true);
        let out = learn(&data, fs.clone(), OrderType::Successor, cfg).unwrap();
        assert_eq!(texts(&fs, out.grammar.forbidden()), ["[capital]"]);
        let capital = out.grammar.forbidden()[0].clone();
        for e in &out.trace {
            if let TraceEvent::Enqueue(f) = e {
                assert!(
                    f == &capital
                        || !embeds(capital.positions(), f.positions(), OrderType::Successor)
                );
            }
        }
    }

    #[test]
    fn bound_saturates() {
        assert_eq!(search_space_bound(1, 1), 2);
        assert_eq!(search_space_bound(2, 2), 4 + 16);
        assert_eq!(search_space_bound(60, 3), u128::MAX);
        assert_eq!(search_space_bound(200, 1), u128::MAX);
    }

    #[test]
    fn theorem_report_flags_non_general_grammar() {
        let fs = Arc::new(FeatureSystem::conventional(["a", "b", "c"]).unwrap());
        let data: Vec<Word> = ["ab", "ba", "abab"]
            .iter()
            .map(|w| fs.parse_word(w).unwrap())
            .collect();
        let cfg = LearnConfig::new(2);
        let report = verify_theorem(&data, fs.clone(), OrderType::Successor, cfg, 6).unwrap();
        assert!(report.passed() && report.equals_oracle);

        let h = Grammar::from_notation(
            fs.clone(),
            OrderType::Successor,
            2,
            &[
                "[a][a]", "[b][b]", "[a][c]", "[b][c]", "[c][c]", "[c][a]", "[c][b]",
            ],
        )
        .unwrap();
        let report = verify_grammar(&h, &data, cfg, 6).unwrap();
        assert!(report.consistent);
        assert!(!report.most_general);
        // H never forbids a lone `c`, so its language is strictly larger.
        assert!(!report.smallest_language);
        let c = fs.parse_word("c").unwrap();
        assert!(h.accepts(&c));
        assert!(!report.passed());

        let empty = verify_theorem(&[], fs, OrderType::Successor, cfg, 4).unwrap();
        assert!(empty.passed());
    }
}
