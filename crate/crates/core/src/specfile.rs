//! Text format for module specs.
//!
//! ```yaml
//! semisimple: [{type: S, mult: 2, q: 2}, {type: T, mult: 1, q: 2}]
//! ```
//! or
//! ```yaml
//! explicit: {moduli: [4, 2], action: [[[1, 0], [1, 1]]]}
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianPresentation;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::module::{Component, ModuleSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    #[serde(rename = "type")]
    pub type_id: String,
    pub mult: usize,
    pub q: u64,
}

/// Serialized form of a [`ModuleSpec`]; exactly one field is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semisimple: Option<Vec<ComponentDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit: Option<AbelianPresentation>,
}

impl From<&ModuleSpec> for SpecDoc {
    fn from(spec: &ModuleSpec) -> Self {
        match spec {
            ModuleSpec::Semisimple { components } => SpecDoc {
                semisimple: Some(
                    components
                        .iter()
                        .map(|c| ComponentDoc {
                            type_id: c.type_id.clone(),
                            mult: c.mult,
                            q: c.field.q() as u64,
                        })
                        .collect(),
                ),
                explicit: None,
            },
            ModuleSpec::Explicit { pres } => SpecDoc {
                semisimple: None,
                explicit: Some(pres.clone()),
            },
        }
    }
}

impl SpecDoc {
    pub fn to_spec(&self) -> Result<ModuleSpec> {
        match (&self.semisimple, &self.explicit) {
            (Some(cs), None) => {
                if cs.is_empty() {
                    return Err(Error::InvalidParameters("semisimple spec has no components".into()));
                }
                let mut components: Vec<Component> = Vec::with_capacity(cs.len());
                for c in cs {
                    if c.mult == 0 {
                        return Err(Error::InvalidParameters(format!("component {} has multiplicity 0", c.type_id)));
                    }
                    if components.iter().any(|x| x.type_id == c.type_id) {
                        return Err(Error::InvalidParameters(format!("component {} is listed twice", c.type_id)));
                    }
                    components.push(Component::new(c.type_id.clone(), c.mult, FieldSpec::of_order(c.q)?));
                }
                Ok(ModuleSpec::semisimple(components))
            }
            (None, Some(pres)) => Ok(ModuleSpec::explicit(pres.clone())),
            _ => Err(Error::InvalidParameters(
                "a spec needs exactly one of `semisimple` and `explicit`".into(),
            )),
        }
    }
}

impl fmt::Display for SpecDoc {
    /// Single-line JSON.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

fn parse_error(e: serde_yaml::Error) -> Error {
    let (line, column) = e.location().map_or((0, 0), |l| (l.line(), l.column()));
    Error::Parse {
        line,
        column,
        message: e.to_string(),
    }
}

/// Parses a spec document. Syntax errors carry a line and column.
pub fn parse_spec(text: &str) -> Result<ModuleSpec> {
    let doc: SpecDoc = serde_yaml::from_str(text).map_err(parse_error)?;
    doc.to_spec()
}

pub fn spec_to_yaml(spec: &ModuleSpec) -> String {
    serde_yaml::to_string(&SpecDoc::from(spec)).expect("spec documents always serialize")
}

/// Short human-readable name, e.g. `2S+T/F2` or `Z/4xZ/2`.
pub fn short_name(spec: &ModuleSpec) -> String {
    match spec {
        ModuleSpec::Semisimple { components } => {
            let parts: Vec<String> = components
                .iter()
                .map(|c| {
                    let m = if c.mult == 1 { String::new() } else { c.mult.to_string() };
                    format!("{m}{}/F{}", c.type_id, c.field.q())
                })
                .collect();
            parts.join("+")
        }
        ModuleSpec::Explicit { pres } => {
            let g: Vec<String> = pres.moduli.iter().map(|m| format!("Z/{m}")).collect();
            let g = if g.is_empty() { "0".to_string() } else { g.join("x") };
            match pres.action.len() {
                0 => g,
                1 => format!("{g} (1 action matrix)"),
                k => format!("{g} ({k} action matrices)"),
            }
        }
    }
}
