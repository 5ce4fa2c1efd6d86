//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use subfact::{FeatureSystem, Word};

const SAMALA_TABLE: &str = include_str!("../../../data/samala.table");
const SAMALA_CORPUS: &str = include_str!("../../../data/samala.txt");
const CAPITALS_TABLE: &str = include_str!("../../../data/capitals.table");
const LOWERCASE_CORPUS: &str = include_str!("../../../data/lowercase.txt");

fn words(fs: &FeatureSystem, text: &str) -> Vec<Word> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.starts_with('#'))
        .map(|l| fs.parse_word(l).expect("fixture word"))
        .collect()
}

pub fn samala() -> (Arc<FeatureSystem>, Vec<Word>) {
    let fs = FeatureSystem::from_table(SAMALA_TABLE).expect("fixture table");
    let data = words(&fs, SAMALA_CORPUS);
    (Arc::new(fs), data)
}

pub fn capitals() -> (Arc<FeatureSystem>, Vec<Word>) {
    let fs = FeatureSystem::from_table(CAPITALS_TABLE).expect("fixture table");
    let data = words(&fs, LOWERCASE_CORPUS);
    (Arc::new(fs), data)
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_load() {
        assert_eq!(super::samala().1.len(), 24);
        assert_eq!(super::capitals().0.properties().len(), 27);
    }
}
