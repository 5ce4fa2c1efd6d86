//! Learning constraint grammars over feature-enriched string models.
//!
//! Strings are modeled as linear relational structures: positions ordered by
//! successor or precedence, each carrying the properties of its symbol. A
//! grammar is a finite set of forbidden [`Factor`]s, and a word is accepted
//! when its model contains none of them. [`learn`] finds the most general such
//! grammar consistent with a positive sample by walking the subfactor order
//! upward from the empty structure.
//!
//! ```
//! use std::sync::Arc;
//! use subfact::{learn, FeatureSystem, LearnConfig, OrderType};
//!
//! let fs = Arc::new(FeatureSystem::conventional(["a", "b", "c"]).unwrap());
//! let data: Vec<_> = ["ab", "ba", "abab"]
//!     .iter()
//!     .map(|w| fs.parse_word(w).unwrap())
//!     .collect();
//! let out = learn(&data, fs.clone(), OrderType::Successor, LearnConfig::new(2)).unwrap();
//! let forbidden: Vec<_> = out.grammar.forbidden().iter().map(|f| f.render(&fs)).collect();
//! assert_eq!(forbidden, ["[c]", "[a][a]", "[b][b]"]);
//! ```

pub mod error;
pub mod factor;
pub mod features;
pub mod grammar;
pub mod learner;
pub mod oracle;
pub mod order;

pub use error::{Error, Result};
pub use factor::{
    build_word_model, canonicalize, parse_factor, render_factor, Factor, OrderType, WordModel,
};
pub use features::{FeatureSystem, FeatureSystemBuilder, PropId, PropSet, SymbolId, Word};
pub use grammar::{all_words_up_to, maximal_proper_subfactors, Grammar};
pub use learner::{
    learn, next_sup_fact, search_space_bound, verify_grammar, verify_theorem, LearnConfig,
    LearnStats, Learned, TheoremReport, TraceEvent,
};
pub use order::{contains, is_connected, restriction, subfactors_k, GeneralStructure};
