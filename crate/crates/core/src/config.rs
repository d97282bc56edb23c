//! The JSON configuration document. Every section is optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::DegreeWindow;
use crate::error::{Error, Result};
use crate::report::{Assumption, CheckId};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<DegreeWindow>,
    #[serde(default)]
    pub generators: Generators,
    /// `d3` and `d7` tables, generator name to target. A table given here replaces the default.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differentials: BTreeMap<String, BTreeMap<String, String>>,
    /// Permanent-cycle assertions for the survival check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub markers: Option<Vec<Assumption>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub checks: BTreeMap<String, CheckParams>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generators {
    /// Classes claimed to generate `E_8`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e8: Option<Vec<String>>,
    /// Relations to leave out of the `E_4` presentation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub drop_relations: Vec<String>,
}

/// Per-check sizes for the algebroid and cobar checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<i64>,
}

pub const SQUARE_RELATION: &str = "m1^2 - 4*t1sq";

fn config_error(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config {
        path: path.into(),
        message: message.into(),
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: Config = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let path = if path == "." { "(document)".to_string() } else { path };
            config_error(path, e.inner().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.height {
            if !(1..=3).contains(&n) {
                return Err(config_error("height", format!("height must be 1, 2 or 3, got {n}")));
            }
        }
        if let Some(w) = &self.window {
            w.validate().map_err(|e| config_error("window", e.to_string()))?;
        }
        for (i, r) in self.generators.drop_relations.iter().enumerate() {
            if r.replace(' ', "") != SQUARE_RELATION.replace(' ', "") {
                return Err(config_error(
                    format!("generators.drop_relations[{i}]"),
                    format!("only {SQUARE_RELATION} can be dropped, got {r}"),
                ));
            }
        }
        for key in self.differentials.keys() {
            if key != "d3" && key != "d7" {
                return Err(config_error(format!("differentials.{key}"), "tables are named d3 and d7"));
            }
        }
        for (i, m) in self.markers.iter().flatten().enumerate() {
            if m.reason.trim().is_empty() {
                return Err(config_error(format!("markers[{i}].reason"), "a marker needs a reason"));
            }
        }
        for key in self.checks.keys() {
            if key.parse::<CheckId>().is_err() {
                return Err(config_error(format!("checks.{key}"), format!("unknown check id {key:?}")));
            }
        }
        Ok(())
    }

    pub fn params(&self, id: CheckId) -> CheckParams {
        self.checks.get(id.as_str()).cloned().unwrap_or_default()
    }

    pub fn drops_square_relation(&self) -> bool {
        !self.generators.drop_relations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_name_the_path() {
        let e = Config::parse(r#"{"window": {"max_underlying": 4, "max_abs_w": 1, "max_abs_s": "x"}}"#).unwrap_err();
        assert!(matches!(e, Error::Config { ref path, .. } if path == "window.max_abs_s"), "{e}");
        let e = Config::parse(r#"{"heigth": 2}"#).unwrap_err();
        assert!(matches!(e, Error::Config { .. }), "{e}");
        let e = Config::parse(r#"{"height": 5}"#).unwrap_err();
        assert!(matches!(e, Error::Config { ref path, .. } if path == "height"));
        let e = Config::parse(r#"{"checks": {"nope": {}}}"#).unwrap_err();
        assert!(matches!(e, Error::Config { ref path, .. } if path == "checks.nope"));
        assert_eq!(Config::parse("{}").unwrap(), Config::default());
    }
}
