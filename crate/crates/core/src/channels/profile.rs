//! Channel profiles as they appear in TOML config files.
//!
//! ```toml
//! [main]
//! kind = "bec"
//! eps = 0.1
//!
//! [wiretap]
//! kind = "table"
//! outputs = ["0", "1", "?"]
//! p0 = [0.7, 0.1, 0.2]
//! p1 = [0.1, 0.7, 0.2]
//! ```

use serde::{Deserialize, Serialize};
use toml::Spanned;

use super::{DiscreteChannel, ErasureChannel, Symbol};
use crate::error::{Error, Result};

/// Table rows loaded from config must sum to 1 within this tolerance.
pub const TABLE_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    Bec,
    Bsc,
    Table,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelProfile {
    pub kind: ChannelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p0: Option<Spanned<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<Spanned<Vec<f64>>>,
}

/// 1-based line number of a byte offset.
pub fn line_of_offset(src: &str, offset: usize) -> usize {
    src.as_bytes()[..offset.min(src.len())]
        .iter()
        .filter(|b| **b == b'\n')
        .count()
        + 1
}

impl ChannelProfile {
    pub fn bec(eps: f64) -> Self {
        Self {
            kind: ChannelKind::Bec,
            eps: Some(eps),
            p: None,
            outputs: None,
            p0: None,
            p1: None,
        }
    }

    pub fn bsc(p: f64) -> Self {
        Self {
            kind: ChannelKind::Bsc,
            eps: None,
            p: Some(p),
            outputs: None,
            p0: None,
            p1: None,
        }
    }

    pub fn table(p0: Vec<f64>, p1: Vec<f64>) -> Self {
        Self {
            kind: ChannelKind::Table,
            eps: None,
            p: None,
            outputs: None,
            p0: Some(Spanned::new(0..0, p0)),
            p1: Some(Spanned::new(0..0, p1)),
        }
    }

    /// Builds the channel. `src` is the config text the profile was parsed
    /// from; when given, table errors carry the line of the offending row.
    pub fn build(&self, src: Option<&str>) -> Result<DiscreteChannel> {
        let at = |span: std::ops::Range<usize>| src.map(|s| line_of_offset(s, span.start));
        match self.kind {
            ChannelKind::Bec => {
                let eps = self
                    .eps
                    .ok_or_else(|| Error::config("bec profile needs `eps`"))?;
                Ok(ErasureChannel::new(eps)?.to_channel())
            }
            ChannelKind::Bsc => {
                let p = self
                    .p
                    .ok_or_else(|| Error::config("bsc profile needs `p`"))?;
                DiscreteChannel::bsc(p)
            }
            ChannelKind::Table => {
                let (Some(p0), Some(p1)) = (&self.p0, &self.p1) else {
                    return Err(Error::config("table profile needs `p0` and `p1` rows"));
                };
                let mut rows = Vec::with_capacity(2);
                for (name, row) in [("p0", p0), ("p1", p1)] {
                    let line = at(row.span());
                    let values = row.get_ref();
                    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
                        return Err(Error::Config {
                            line,
                            msg: format!("row `{name}` has a negative or non-finite entry"),
                        });
                    }
                    let sum: f64 = values.iter().sum();
                    if (sum - 1.0).abs() > TABLE_SUM_TOL {
                        return Err(Error::Config {
                            line,
                            msg: format!("row `{name}` sums to {sum}, expected 1"),
                        });
                    }
                    rows.push(values.iter().map(|v| v / sum).collect::<Vec<f64>>());
                }
                let p1 = rows.pop().expect("two rows");
                let p0 = rows.pop().expect("two rows");
                if p0.len() != p1.len() {
                    return Err(Error::Config {
                        line: at(self.p1.as_ref().expect("checked").span()),
                        msg: format!("rows have lengths {} and {}", p0.len(), p1.len()),
                    });
                }
                let outputs = match &self.outputs {
                    Some(labels) => {
                        if labels.len() != p0.len() {
                            return Err(Error::config(format!(
                                "{} output labels for rows of length {}",
                                labels.len(),
                                p0.len()
                            )));
                        }
                        labels
                            .iter()
                            .map(|l| l.parse::<Symbol>())
                            .collect::<Result<Vec<_>>>()?
                    }
                    None => (0..p0.len() as u32).map(Symbol::Id).collect(),
                };
                DiscreteChannel::new(outputs, p0, p1)
            }
        }
    }
}
