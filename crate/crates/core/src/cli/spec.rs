//! System spec files: UTF-8 `key: value` lines.
//!
//! ```text
//! # comment
//! P: -y
//! Q: x + y + y^2
//! option.max_degree: 4
//! ```

use std::collections::BTreeMap;

use super::parse::parse_polynomial;
use crate::algebra::Vars;
use crate::error::{Error, Result};
use crate::vectorfield::VectorField;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SystemSpec {
    pub p_text: Option<String>,
    pub q_text: Option<String>,
    /// Option names with `-` normalized to `_`.
    pub options: BTreeMap<String, String>,
}

impl SystemSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = SystemSpec::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Invalid(format!("spec line {}: {msg}", lineno + 1));
            let (key, value) = line.split_once(':').ok_or_else(|| bad("expected `key: value`"))?;
            let (key, value) = (key.trim(), value.trim().to_string());
            match key {
                "P" => out.p_text = Some(value),
                "Q" => out.q_text = Some(value),
                k => {
                    let name = k.strip_prefix("option.").ok_or_else(|| bad(&format!("unknown key {k:?}")))?;
                    if name.is_empty() {
                        return Err(bad("empty option name"));
                    }
                    out.options.insert(name.replace('-', "_"), value);
                }
            }
        }
        Ok(out)
    }

    pub fn field(&self) -> Result<VectorField> {
        let vars = Vars::xy();
        let (Some(p), Some(q)) = (&self.p_text, &self.q_text) else {
            return Err(Error::Invalid("both P and Q are required (--P/--Q or a spec file)".into()));
        };
        VectorField::new(parse_polynomial(p, &vars)?, parse_polynomial(q, &vars)?)
            .map_err(|e| Error::Invalid(e.to_string()))
    }
}
