//! Regression corpus: expected verdicts for named groups.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    /// A builtin name such as `S5` or `SL2(3)`, or a group file path.
    pub group: String,
    pub almost_monomial: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial: Option<bool>,
}

impl CorpusEntry {
    pub fn new(group: &str, almost_monomial: bool) -> Self {
        CorpusEntry {
            group: group.to_string(),
            almost_monomial,
            monomial: None,
        }
    }
}

/// Published verdicts for small symmetric, alternating and linear groups.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 2..=7 {
        out.push(CorpusEntry::new(&format!("S{n}"), true));
    }
    for n in 2..=7 {
        out.push(CorpusEntry::new(&format!("A{n}"), n <= 5));
    }
    out.push(CorpusEntry::new("SL2(2)", true));
    out.push(CorpusEntry {
        monomial: Some(false),
        ..CorpusEntry::new("SL2(3)", true)
    });
    out.push(CorpusEntry::new("SL2(4)", true));
    out.push(CorpusEntry::new("SL2(5)", false));
    out.push(CorpusEntry::new("SL2(8)", true));
    out.push(CorpusEntry::new("GL2(3)", false));
    out
}

/// A JSON array of entries; a blank file is an empty corpus.
pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
