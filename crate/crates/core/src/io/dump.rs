use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_data::{GroupId, WeightVector};
use crate::numeric::{format_rational, parse_rational};
use crate::spectrum::SpectrumEntry;

/// `{family, N, entries: [{b, lambda, mult}]}` with rationals as `"p/q"`
/// and multiplicities in decimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDump {
    pub family: String,
    #[serde(rename = "N")]
    pub n: u32,
    pub entries: Vec<DumpEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpEntry {
    pub b: Vec<String>,
    pub lambda: String,
    pub mult: String,
}

impl SpectrumDump {
    pub fn new(group: &GroupId, entries: &[SpectrumEntry]) -> Self {
        SpectrumDump {
            family: group.name().to_string(),
            n: group.n(),
            entries: entries
                .iter()
                .map(|e| DumpEntry {
                    b: e.weight.to_strings(),
                    lambda: format_rational(&e.eigenvalue),
                    mult: e.multiplicity.to_string(),
                })
                .collect(),
        }
    }

    /// Parses the entries back into exact values.
    pub fn entries(&self) -> Result<Vec<SpectrumEntry>> {
        self.entries
            .iter()
            .map(|e| {
                let coords = e.b.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                Ok(SpectrumEntry {
                    weight: WeightVector::from_rationals(&coords)?,
                    eigenvalue: parse_rational(&e.lambda)?,
                    multiplicity: e.mult.parse().map_err(|_| Error::invalid(format!("bad multiplicity {}", e.mult)))?,
                })
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
