//! Versioned lists of module specs that the checks run over.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::ModuleSpec;
use crate::specfile::SpecDoc;

pub const MANIFEST_VERSION: u32 = 1;

const SMALL: &str = include_str!("../../manifests/small.yaml");
const FULL: &str = include_str!("../../manifests/full.yaml");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedSpec {
    pub name: String,
    pub spec: SpecDoc,
}

/// Two factors whose product is enumerated both directly and by quintuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedPair {
    pub name: String,
    pub left: SpecDoc,
    pub right: SpecDoc,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema_version: u32,
    #[serde(default)]
    pub instances: Vec<NamedSpec>,
    #[serde(default)]
    pub goursat: Vec<NamedPair>,
    /// Semisimple specs with every multiplicity even, explored but not checked.
    #[serde(default)]
    pub open_case: Vec<NamedSpec>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        let m: Manifest = serde_yaml::from_str(text).map_err(|e| {
            let (line, column) = e.location().map_or((0, 0), |l| (l.line(), l.column()));
            Error::Parse {
                line,
                column,
                message: e.to_string(),
            }
        })?;
        if m.schema_version != MANIFEST_VERSION {
            return Err(Error::InvalidParameters(format!(
                "manifest schema_version {} is not {MANIFEST_VERSION}",
                m.schema_version
            )));
        }
        let mut names: Vec<&str> = m.instances.iter().map(|i| i.name.as_str()).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameters(format!("instance `{}` is listed twice", w[0])));
        }
        for i in m.instances.iter().chain(&m.open_case) {
            i.spec.to_spec()?;
        }
        for p in &m.goursat {
            p.left.to_spec()?;
            p.right.to_spec()?;
        }
        Ok(m)
    }

    /// `small` is the acceptance family; `full` adds larger fields and groups.
    pub fn builtin(scale: &str) -> Result<Self> {
        match scale {
            "small" => Manifest::parse(SMALL),
            "full" => {
                let mut m = Manifest::parse(SMALL)?;
                let extra = Manifest::parse(FULL)?;
                m.instances.extend(extra.instances);
                m.goursat.extend(extra.goursat);
                m.open_case.extend(extra.open_case);
                Ok(m)
            }
            other => Err(Error::InvalidParameters(format!(
                "unknown scale `{other}` (expected small or full)"
            ))),
        }
    }

    pub fn specs(&self) -> Result<Vec<(String, ModuleSpec)>> {
        self.instances
            .iter()
            .map(|i| Ok((i.name.clone(), i.spec.to_spec()?)))
            .collect()
    }
}
