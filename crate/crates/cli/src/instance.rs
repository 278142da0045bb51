//! The JSON instance file: a bundle over a curve and the twists of a
//! relative complete intersection in its projectivization.
//!
//! ```json
//! {
//!   "bundle": { "rank": 4, "degree": 4, "base_genus": 0, "split": [1, 1, 1, 1] },
//!   "ci": { "k": [3, 3], "y": [1, 2] }
//! }
//! ```

use std::path::Path;

use relci::bundle::{BundleOverCurve, HnBlock};
use relci::oracles::SplitBundle;
use relci::{Error, RelativeCI};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub bundle: BundleSpec,
    pub ci: CiSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpec {
    pub rank: i64,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_genus: Option<i64>,
    /// Harder–Narasimhan blocks with strictly decreasing slopes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hn: Option<Vec<HnSpec>>,
    /// Degrees of line bundles `a_i` with `E = ⊕ O(a_i)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HnSpec {
    pub rank: i64,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CiSpec {
    pub k: Vec<i64>,
    pub y: Vec<i64>,
}

/// A validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub file: InstanceFile,
    pub ci: RelativeCI,
    pub split: Option<SplitBundle>,
}

impl Instance {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn from_file(file: InstanceFile) -> CliResult<Self> {
        let b = &file.bundle;
        let split = b.split.clone().map(SplitBundle::new).transpose()?;
        let mut hn = b.hn.as_ref().map(|blocks| blocks.iter().map(|h| HnBlock::new(h.rank, h.degree)).collect::<Vec<_>>());
        if let Some(s) = &split {
            if s.rank() != b.rank || s.degree() != b.degree {
                return Err(Error::invalid(
                    "bundle.split",
                    format!("split has rank {} and degree {}, bundle says {} and {}", s.rank(), s.degree(), b.rank, b.degree),
                )
                .into());
            }
            match &hn {
                Some(given) if *given != s.hn() => {
                    return Err(Error::invalid("bundle.hn", "does not match the filtration induced by split").into());
                }
                _ => hn = Some(s.hn()),
            }
        }
        let bundle = BundleOverCurve::new(b.rank, b.degree, b.base_genus.unwrap_or(0), hn)?;
        let ci = RelativeCI::new(bundle, file.ci.k.clone(), file.ci.y.clone())?;
        Ok(Instance { file, ci, split })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = r#"{"bundle":{"rank":4,"degree":4,"split":[1,1,1,1]},"ci":{"k":[3,3],"y":[1,2]}}"#;

    #[test]
    fn split_induces_hn() {
        let inst = Instance::parse(WORKED).unwrap();
        assert_eq!(inst.ci.bundle().hn().unwrap(), &[HnBlock::new(4, 4)]);
        assert_eq!(inst.ci.c(), 2);
    }

    #[test]
    fn rejects_inconsistent_split() {
        let e = Instance::parse(r#"{"bundle":{"rank":4,"degree":5,"split":[1,1,1,1]},"ci":{"k":[3,3],"y":[1,2]}}"#).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("bundle.split"));
        let e = Instance::parse(
            r#"{"bundle":{"rank":3,"degree":3,"split":[2,1,0],"hn":[{"rank":3,"degree":3}]},"ci":{"k":[2],"y":[0]}}"#,
        )
        .unwrap_err();
        assert!(e.to_string().contains("bundle.hn"));
    }

    #[test]
    fn field_level_messages() {
        let e = Instance::parse(r#"{"bundle":{"rank":4,"degree":4},"ci":{"k":[3,3],"y":[1]}}"#).unwrap_err();
        assert!(e.to_string().contains("ci.y"), "{e}");
        let e = Instance::parse(r#"{"bundle":{"rank":4,"degree":4},"ci":{"k":[3],"y":[1]},"extra":1}"#).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
