//! Surface descriptors: a family tag plus integer parameters, read from
//! command-line flags or a `moduli-lab/1` text file.

use std::collections::BTreeMap;
use std::fmt;

use moduli_lab::surface::SurfaceFamily;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::output::Int;

pub const FORMAT_HEADER: &str = "moduli-lab/1";

pub const FAMILIES: [&str; 7] = [
    "gt-canonical",
    "gt-bicanonical",
    "k3",
    "kod0",
    "delpezzo",
    "elliptic",
    "isogenous",
];

const PARAMETER_KEYS: [&str; 8] = [
    "ksq",
    "chi",
    "hsq",
    "k3",
    "trivial_canonical",
    "e",
    "g",
    "group_order",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescriptorError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line {FORMAT_HEADER:?}")]
    MissingHeader,
    #[error("no family given (use --family or a descriptor file)")]
    MissingFamily,
    #[error("unknown family {0:?}; expected one of {families}", families = FAMILIES.join(", "))]
    UnknownFamily(String),
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("family {family}: missing required key {key:?}")]
    MissingKey { family: String, key: &'static str },
    #[error("family {family}: key {key:?} does not apply")]
    UnusedKey { family: String, key: String },
    #[error("key {key:?} must be 0 or 1, got {value}")]
    NotBoolean { key: String, value: BigInt },
    #[error("family {family}: {message}")]
    Inconsistent { family: String, message: String },
    #[error("both --surface-file and surface flags were given")]
    MixedSources,
}

/// Family tag, integer parameters and an optional label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    pub family: String,
    pub parameters: BTreeMap<String, Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SurfaceDescriptor {
    pub fn new(family: impl Into<String>) -> Self {
        Self {
            family: family.into(),
            parameters: BTreeMap::new(),
            label: None,
        }
    }

    pub fn set(&mut self, key: &str, value: BigInt) -> Result<(), DescriptorError> {
        if !PARAMETER_KEYS.contains(&key) {
            return Err(DescriptorError::UnknownKey(key.to_string()));
        }
        self.parameters.insert(key.to_string(), Int(value));
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&BigInt> {
        self.parameters.get(key).map(|v| &v.0)
    }

    pub fn parse(text: &str) -> Result<Self, DescriptorError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, header)) if header == FORMAT_HEADER => {}
            _ => return Err(DescriptorError::MissingHeader),
        }
        let mut family = None;
        let mut label = None;
        let mut parameters = Vec::new();
        for (line, content) in lines {
            let syntax = |message: String| DescriptorError::Syntax { line, message };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| syntax(format!("expected `key = value`, got {content:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "family" => family = Some(value.to_string()),
                "label" => label = Some(value.to_string()),
                _ => {
                    let parsed: BigInt = value
                        .parse()
                        .map_err(|_| syntax(format!("{key}: {value:?} is not an integer")))?;
                    parameters.push((key.to_string(), parsed));
                }
            }
        }
        let mut descriptor = SurfaceDescriptor::new(family.ok_or(DescriptorError::MissingFamily)?);
        descriptor.label = label;
        for (key, value) in parameters {
            descriptor.set(&key, value)?;
        }
        Ok(descriptor)
    }

    #[cfg(test)]
    pub fn to_text(&self) -> String {
        let mut out = format!("{FORMAT_HEADER}\nfamily = {}\n", self.family);
        if let Some(label) = &self.label {
            out.push_str(&format!("label = {label}\n"));
        }
        for (key, value) in &self.parameters {
            out.push_str(&format!("{key} = {}\n", value.0));
        }
        out
    }

    fn inconsistent(&self, message: impl Into<String>) -> DescriptorError {
        DescriptorError::Inconsistent {
            family: self.family.clone(),
            message: message.into(),
        }
    }

    fn check_keys(
        &self,
        required: &[&'static str],
        optional: &[&str],
    ) -> Result<(), DescriptorError> {
        for key in required {
            if self.get(key).is_none() {
                return Err(DescriptorError::MissingKey {
                    family: self.family.clone(),
                    key,
                });
            }
        }
        for key in self.parameters.keys() {
            if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
                return Err(DescriptorError::UnusedKey {
                    family: self.family.clone(),
                    key: key.clone(),
                });
            }
        }
        Ok(())
    }

    fn flag(&self, key: &str) -> Result<Option<bool>, DescriptorError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) if v.is_zero() => Ok(Some(false)),
            Some(v) if v.is_one() => Ok(Some(true)),
            Some(v) => Err(DescriptorError::NotBoolean {
                key: key.to_string(),
                value: v.clone(),
            }),
        }
    }

    fn required(&self, key: &str) -> BigInt {
        self.get(key).cloned().expect("checked by check_keys")
    }

    /// The family variant; numerical hypotheses are left to model building.
    pub fn to_family(&self) -> Result<SurfaceFamily, DescriptorError> {
        match self.family.as_str() {
            "gt-canonical" => {
                self.check_keys(&["ksq"], &["chi"])?;
                Ok(SurfaceFamily::GeneralTypeCanonical {
                    ksq: self.required("ksq"),
                    chi: self.get("chi").cloned(),
                })
            }
            "gt-bicanonical" => {
                self.check_keys(&["ksq"], &["chi"])?;
                Ok(SurfaceFamily::GeneralTypeBicanonical {
                    ksq: self.required("ksq"),
                    chi: self.get("chi").cloned(),
                })
            }
            "k3" => {
                self.check_keys(&["hsq"], &[])?;
                Ok(SurfaceFamily::k3(self.required("hsq")))
            }
            "kod0" => {
                self.check_keys(&["hsq"], &["chi", "k3", "trivial_canonical"])?;
                let hsq = self.required("hsq");
                let chi = self.get("chi").cloned();
                let trivial = self.flag("trivial_canonical")?;
                let k3 = match self.flag("k3")? {
                    Some(k3) => k3,
                    None => hsq < BigInt::from(10),
                };
                if k3 {
                    if trivial == Some(false) {
                        return Err(self.inconsistent("a K3 surface has trivial canonical bundle"));
                    }
                    if chi.as_ref().is_some_and(|c| *c != BigInt::from(2)) {
                        return Err(self.inconsistent("a K3 surface has chi = 2"));
                    }
                    return Ok(SurfaceFamily::k3(hsq));
                }
                let trivial_canonical = trivial.ok_or_else(|| {
                    self.inconsistent("trivial_canonical is required when the surface is not K3")
                })?;
                Ok(SurfaceFamily::KodairaZero {
                    hsq,
                    chi,
                    k3: false,
                    trivial_canonical,
                })
            }
            "delpezzo" => {
                self.check_keys(&["e"], &[])?;
                Ok(SurfaceFamily::DelPezzo {
                    degree: self.required("e"),
                })
            }
            "elliptic" => {
                self.check_keys(&["g"], &[])?;
                Ok(SurfaceFamily::EllipticProduct {
                    genus: self.required("g"),
                })
            }
            "isogenous" => {
                self.check_keys(&["g", "group_order"], &[])?;
                Ok(SurfaceFamily::IsogenousProduct {
                    genus: self.required("g"),
                    group_order: self.required("group_order"),
                })
            }
            other => Err(DescriptorError::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for SurfaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family)?;
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={}", v.0))
            .collect();
        if !params.is_empty() {
            write!(f, " ({})", params.join(", "))?;
        }
        if let Some(label) = &self.label {
            write!(f, " \"{label}\"")?;
        }
        Ok(())
    }
}
