use std::path::Path;

use serde::Serialize;
use subfact::OrderType;

pub const FORMAT_VERSION: &str = "1";

/// Inputs and flags of one learning run, echoed in the stats block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub format_version: String,
    pub feature_table: String,
    pub corpus: String,
    pub order: OrderType,
    pub k: usize,
    pub prune_unrealizable: bool,
    pub trace: bool,
    pub output: Option<String>,
}

impl RunManifest {
    pub fn validate(&self) -> Result<(), String> {
        if self.format_version != FORMAT_VERSION {
            return Err(format!(
                "unsupported manifest format version {}",
                self.format_version
            ));
        }
        for path in [&self.feature_table, &self.corpus] {
            if !Path::new(path).is_file() {
                return Err(format!("{path}: no such file"));
            }
        }
        Ok(())
    }
}
