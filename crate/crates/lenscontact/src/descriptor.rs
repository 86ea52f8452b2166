//! Form descriptors: the persisted, canonical representation of a contact
//! form. Only primary data is stored (lens, τ₀, φ₀, profile coefficients);
//! derived quantities (τ₁, φ₁, volumes) are always recomputed on load.

use crate::error::{Error, Result};
use crate::form::{from_triple, ContactForm};
use crate::lens::{make_lens, LensParams};
use crate::profile::{BoundaryData, ProfileSpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProfileDescriptor {
    #[serde(rename = "type")]
    pub kind: String,
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FormDescriptor {
    pub schema_version: u32,
    pub lens: LensParams,
    pub tau0: f64,
    pub phi0: f64,
    pub profile: ProfileDescriptor,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

impl FormDescriptor {
    pub fn from_form(form: &ContactForm) -> Self {
        FormDescriptor {
            schema_version: SCHEMA_VERSION,
            lens: form.lens,
            tau0: form.tau0,
            phi0: form.phi0,
            profile: ProfileDescriptor {
                kind: "poly-in-u".into(),
                coeffs: form.profile.coeffs().to_vec(),
            },
            meta: BTreeMap::new(),
        }
    }

    fn parse_parts(&self) -> Result<(crate::lens::LensParams, ProfileSpec)> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.profile.kind != "poly-in-u" {
            return Err(Error::Schema(format!(
                "unknown profile type {:?} (expected \"poly-in-u\")",
                self.profile.kind
            )));
        }
        // canonical lens data is re-derived and must agree
        let canonical = make_lens(self.lens.p, self.lens.q)?;
        if canonical != self.lens {
            return Err(Error::Schema(format!(
                "lens entry (m, s) = ({}, {}) is not the canonical representative ({}, {})",
                self.lens.m, self.lens.s, canonical.m, canonical.s
            )));
        }
        let boundary = BoundaryData::new(canonical, self.tau0, self.phi0)?;
        let profile = ProfileSpec::from_coeffs(self.profile.coeffs.clone(), boundary)?;
        Ok((canonical, profile))
    }

    /// Reconstruct and fully re-validate the form. Derived quantities are
    /// recomputed, never trusted from disk.
    pub fn to_form(&self) -> Result<ContactForm> {
        let (lens, profile) = self.parse_parts()?;
        from_triple(profile, self.tau0, self.phi0, lens)
    }

    /// Reconstruct without the validation gates, so that gate failures can
    /// be reported as named check rows by the validation command.
    pub fn to_form_lenient(&self) -> Result<ContactForm> {
        let (lens, profile) = self.parse_parts()?;
        crate::form::from_triple_unvalidated(profile, self.tau0, self.phi0, lens)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }
}
