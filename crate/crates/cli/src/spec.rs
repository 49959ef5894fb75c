//! Resolving command-line group arguments.

use std::path::{Path, PathBuf};

use almono_core::{Family, PermGroup, Permutation};
use serde::Deserialize;

use crate::CliError;

/// A builtin family or a generator document on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Builtin(Family),
    File(PathBuf),
}

/// `{"degree": 4, "generators": [[2, 1, 3, 4], [2, 3, 4, 1]]}`, images 1-based.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    #[serde(default)]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupDocument {
    pub fn build(&self, cap: u64) -> Result<PermGroup, CliError> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                if g.len() != self.degree {
                    return Err(CliError::Input(format!(
                        "generator {g:?} has {} images, expected {}",
                        g.len(),
                        self.degree
                    )));
                }
                Ok(Permutation::from_one_based(g)?)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let group = PermGroup::with_cap(self.degree, gens, cap)?;
        group.check_cap()?;
        Ok(group)
    }
}

impl GroupSpec {
    /// Parses `S4`, `SL2 3`, `cyclic 6` or a path to a `.json` document.
    pub fn parse(tokens: &[String]) -> Result<Self, CliError> {
        let joined = tokens.join(" ");
        if tokens.len() == 1 {
            let path = Path::new(&tokens[0]);
            if path.extension().is_some_and(|e| e == "json") || path.is_file() {
                return Ok(GroupSpec::File(path.to_path_buf()));
            }
        }
        joined
            .parse::<Family>()
            .map(GroupSpec::Builtin)
            .map_err(|_| {
                CliError::Input(format!(
                    "{joined:?} is neither a builtin group nor a group file"
                ))
            })
    }

    /// The group and its display name.
    pub fn resolve(&self, cap: u64) -> Result<(String, PermGroup), CliError> {
        match self {
            GroupSpec::Builtin(f) => Ok((f.to_string(), f.build_with_cap(cap)?)),
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
                let doc: GroupDocument = serde_json::from_str(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                let name = doc.name.clone().unwrap_or_else(|| {
                    path.file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| path.display().to_string())
                });
                Ok((name, doc.build(cap)?))
            }
        }
    }
}
