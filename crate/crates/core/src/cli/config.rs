//! Session configuration files (TOML).

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::root_datum::{build_root_datum, CartanSpec, LatticeSpec};
use crate::setting::Setting;

#[derive(Debug, Clone, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum LatticeField {
    Named(String),
    Rows(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TwistConfig {
    pub diagram_perm: Option<Vec<usize>>,
    pub omega: Option<String>,
}

#[derive(Debug, Clone, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct Bounds {
    pub ball_radius: i64,
    pub conj_depth: Option<usize>,
    pub twist_check_depth: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { ball_radius: 4, conj_depth: None, twist_check_depth: crate::root_datum::TWIST_CHECK_DEPTH }
    }
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Structured,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "structured" => Ok(Format::Structured),
            "dot" => Ok(Format::Dot),
            _ => Err(Error::Cli(format!("unknown format `{s}` (expected text, structured or dot)"))),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub cartan_type: String,
    pub lattice: LatticeField,
    #[serde(default)]
    pub central_rank: usize,
    #[serde(default)]
    pub twist: TwistConfig,
    #[serde(default)]
    pub omega_labels: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default)]
    pub output: OutputConfig,
}

impl SessionConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string().trim_end().to_string()))
    }

    pub fn lattice_spec(&self) -> Result<LatticeSpec> {
        match &self.lattice {
            LatticeField::Named(s) => match s.as_str() {
                "simply_connected" => Ok(LatticeSpec::SimplyConnected),
                "adjoint" => Ok(LatticeSpec::Adjoint),
                _ => Err(Error::Config(format!(
                    "lattice must be \"simply_connected\", \"adjoint\" or a list of rows, got `{s}`"
                ))),
            },
            LatticeField::Rows(rows) => Ok(LatticeSpec::Explicit(rows.clone())),
        }
    }

    /// Builds the datum, resolves Ω labels and the twist.
    pub fn setting(&self) -> Result<Setting> {
        let spec = CartanSpec {
            cartan_type: self.cartan_type.clone(),
            lattice: self.lattice_spec()?,
            central_rank: self.central_rank,
        };
        let rd = build_root_datum(&spec)?;
        let labels: Vec<(String, Vec<i64>)> = self.omega_labels.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let st = Setting::build(
            rd,
            &labels,
            self.twist.diagram_perm.clone(),
            self.twist.omega.as_deref(),
            Some(self.bounds.twist_check_depth),
        )?;
        Ok(match self.bounds.conj_depth {
            Some(d) => st.with_conj_depth(d),
            None => st,
        })
    }
}

pub fn load_config(path: &Path) -> Result<SessionConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read `{}`: {e}", path.display())))?;
    SessionConfig::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config() {
        let c = SessionConfig::parse("cartan_type = \"A1\"\nlattice = \"simply_connected\"\n").unwrap();
        assert_eq!(c.bounds, Bounds::default());
        assert_eq!(c.output.format, Format::Text);
        let st = c.setting().unwrap();
        assert_eq!(st.datum.rank, 1);
    }

    #[test]
    fn full_config() {
        let text = r#"
cartan_type = "A1"
lattice = "adjoint"

[twist]
omega = "p"

[omega_labels]
p = [1]

[bounds]
ball_radius = 6
conj_depth = 2

[output]
format = "structured"
"#;
        let c = SessionConfig::parse(text).unwrap();
        assert_eq!(c.output.format, Format::Structured);
        let st = c.setting().unwrap();
        assert_eq!(st.twist.gen_perm, vec![1, 0]);
        assert_eq!(st.conj_depth(), 2);
    }

    #[test]
    fn errors() {
        let e = SessionConfig::parse("cartan_type = \"A1\"\nlattice = [[4]]\n").unwrap().setting().unwrap_err();
        assert_eq!(e.to_string(), "root_datum: lattice does not contain Q∨");
        let e = SessionConfig::parse("cartan_type = \"A1\"\nlatice = 1\n").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = SessionConfig::parse("cartan_type = \"A2\"\nlattice = \"adjoint\"\n[twist]\ndiagram_perm = [1, 0]\n")
            .unwrap()
            .setting()
            .unwrap();
        assert_eq!(e.twist.order, 2);
        assert!(SessionConfig::parse("cartan_type = \"A1\"\nlattice = \"weird\"\n").unwrap().setting().is_err());
    }
}
