//! JSON config loading and export.
//!
//! One document, two entry points: a direct `"model"` with A and b, or a
//! `"network"` that gets compiled into one. Numeric fields are decimal
//! strings (or JSON number literals) parsed into exact rationals, so a
//! value like ".2" survives the trip without binary rounding.

use netvuln::netmodel::{
    build_taylor_model, InfluenceEdge, LinearModel, PersuasibilityEntry, SocialNetworkSpec,
    SourceSpec,
};
use netvuln::ratfun::{format_rational, parse_rational};
use num::rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exact rational carried as a string in JSON.
#[derive(Clone, PartialEq)]
pub struct Exact(pub BigRational);

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

impl Serialize for Exact {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        // Accept "0.25", "1/4", or a bare JSON number (its literal text is
        // preserved by the arbitrary-precision parser).
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(serde_json::Number),
        }
        let text = match Raw::deserialize(d)? {
            Raw::Text(t) => t,
            Raw::Number(n) => n.to_string(),
        };
        parse_rational(&text)
            .map(Exact)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal or fraction: {text:?}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelConfig {
    #[serde(rename = "A")]
    pub a: Vec<Vec<Exact>>,
    pub b: Vec<Exact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeConfig {
    pub source: String,
    pub target: String,
    pub weight: Exact,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SourceConfig {
    pub name: String,
    pub sentiment: Exact,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PersuasibilityConfig {
    pub agent: String,
    pub source: String,
    pub weight: Exact,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetworkConfig {
    pub agents: Vec<String>,
    pub edges: Vec<EdgeConfig>,
    pub sources: Vec<SourceConfig>,
    pub persuasibility: Vec<PersuasibilityConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub network: Option<NetworkConfig>,
    /// State names to expose; default all.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exposed: Option<Vec<String>>,
}

/// Parse a config document into a model. Errors are strings aimed at the
/// person editing the file.
pub fn build_model(doc: &ConfigDoc) -> Result<LinearModel, String> {
    let base = match (&doc.model, &doc.network) {
        (Some(_), Some(_)) => {
            return Err("config has both \"model\" and \"network\"; pick one".into())
        }
        (None, None) => return Err("config needs a \"model\" or a \"network\" section".into()),
        (Some(m), None) => {
            let a = m
                .a
                .iter()
                .map(|row| row.iter().map(|x| x.0.clone()).collect())
                .collect();
            let b = m.b.iter().map(|x| x.0.clone()).collect();
            LinearModel::new(a, b, None, m.labels.clone()).map_err(|e| e.to_string())?
        }
        (None, Some(net)) => {
            let spec = SocialNetworkSpec {
                agents: net.agents.clone(),
                edges: net
                    .edges
                    .iter()
                    .map(|e| InfluenceEdge {
                        source: e.source.clone(),
                        target: e.target.clone(),
                        weight: e.weight.0.clone(),
                    })
                    .collect(),
                sources: net
                    .sources
                    .iter()
                    .map(|s| SourceSpec {
                        name: s.name.clone(),
                        sentiment: s.sentiment.0.clone(),
                    })
                    .collect(),
                persuasibility: net
                    .persuasibility
                    .iter()
                    .map(|p| PersuasibilityEntry {
                        agent: p.agent.clone(),
                        source: p.source.clone(),
                        weight: p.weight.0.clone(),
                    })
                    .collect(),
            };
            build_taylor_model(&spec).map_err(|e| e.to_string())?
        }
    };
    match &doc.exposed {
        None => Ok(base),
        Some(names) => {
            let mut indices = Vec::with_capacity(names.len());
            for name in names {
                let idx = base
                    .labels()
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| format!("exposed state {name:?} is not a state label"))?;
                indices.push(idx);
            }
            base.with_exposed(indices).map_err(|e| e.to_string())
        }
    }
}

pub fn load(path: &std::path::Path) -> Result<(ConfigDoc, LinearModel), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let doc: ConfigDoc = serde_json::from_str(&text)
        .map_err(|e| format!("{} is not a valid config: {e}", path.display()))?;
    let model = build_model(&doc)?;
    Ok((doc, model))
}

/// Export a model back to the direct (A, b) config form.
pub fn export(model: &LinearModel) -> ConfigDoc {
    let m = ModelConfig {
        a: model
            .a()
            .iter()
            .map(|row| row.iter().map(|x| Exact(x.clone())).collect())
            .collect(),
        b: model.b().iter().map(|x| Exact(x.clone())).collect(),
        labels: Some(model.labels().to_vec()),
    };
    let exposed = if model.is_fully_exposed() {
        None
    } else {
        Some(
            model
                .exposed()
                .iter()
                .map(|&i| model.labels()[i].clone())
                .collect(),
        )
    };
    ConfigDoc {
        model: Some(m),
        network: None,
        exposed,
    }
}
