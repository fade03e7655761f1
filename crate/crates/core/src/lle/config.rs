//! JSON configuration for user-supplied equations:
//! `{"name": "...", "time": "QII", "space": ["XYI"], "potential": [{"word": "XA", "fn": "f"}]}`.

use serde::Deserialize;

use super::{LleSpec, PotentialTerm};
use crate::error::LleError;
use crate::grammar;
use crate::word::Word;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub word: Word,
    #[serde(rename = "fn")]
    pub function: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LleConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub time: Word,
    pub space: Vec<Word>,
    #[serde(default)]
    pub potential: Vec<PotentialConfig>,
}

impl LleConfig {
    pub fn into_spec(self, default_name: &str) -> Result<LleSpec, LleError> {
        let potential = self
            .potential
            .into_iter()
            .map(|p| {
                let function = grammar::parse(&p.function)
                    .map_err(|e| LleError::Config(format!("potential `{}`: {e}", p.function)))?;
                Ok(PotentialTerm { word: p.word, function })
            })
            .collect::<Result<Vec<_>, LleError>>()?;
        LleSpec::new(
            self.name.unwrap_or_else(|| default_name.to_string()),
            self.time,
            self.space,
            potential,
        )
    }
}

pub fn parse_config(text: &str, default_name: &str) -> Result<LleSpec, LleError> {
    let cfg: LleConfig = serde_json::from_str(text).map_err(|e| LleError::Config(e.to_string()))?;
    cfg.into_spec(default_name)
}
