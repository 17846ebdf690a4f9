//! JSON interchange format for fuzzy numbers.
//!
//! ```json
//! {"dim": 1, "levels": [{"alpha": 0, "cut": {"lo": 0, "hi": 2}},
//!                       {"alpha": 1, "cut": {"lo": 1, "hi": 1}}]}
//! ```
//!
//! Two-dimensional cuts use `{"vertices": [[x, y], ...]}` in counter-clockwise
//! order. Documents are validated with the same rules as
//! [`make_fuzzy_number`].

use serde::{Deserialize, Serialize};

use crate::cut::Cut;
use crate::error::{FuzzyError, Result};
use crate::fuzzy::{make_fuzzy_number, FuzzyNumber, RawCut};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyDoc {
    pub dim: usize,
    pub levels: Vec<LevelDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDoc {
    pub alpha: f64,
    pub cut: CutDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CutDoc {
    Interval { lo: f64, hi: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

impl From<&FuzzyNumber> for FuzzyDoc {
    fn from(u: &FuzzyNumber) -> Self {
        FuzzyDoc {
            dim: u.dim(),
            levels: u
                .levels()
                .iter()
                .map(|l| LevelDoc {
                    alpha: l.alpha,
                    cut: match &l.cut {
                        Cut::Interval(i) => CutDoc::Interval {
                            lo: i.lo(),
                            hi: i.hi(),
                        },
                        Cut::Polygon(p) => CutDoc::Polygon {
                            vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
                        },
                    },
                })
                .collect(),
        }
    }
}

impl TryFrom<FuzzyDoc> for FuzzyNumber {
    type Error = FuzzyError;

    fn try_from(doc: FuzzyDoc) -> Result<Self> {
        let levels = doc
            .levels
            .into_iter()
            .map(|l| {
                let raw = match l.cut {
                    CutDoc::Interval { lo, hi } => RawCut::Interval { lo, hi },
                    CutDoc::Polygon { vertices } => RawCut::Vertices(vertices),
                };
                (l.alpha, raw)
            })
            .collect();
        make_fuzzy_number(doc.dim, levels)
    }
}

impl Serialize for FuzzyNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FuzzyDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FuzzyNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = FuzzyDoc::deserialize(d)?;
        FuzzyNumber::try_from(doc).map_err(serde::de::Error::custom)
    }
}

/// Parses and validates a fuzzy-number document.
pub fn from_json_str(text: &str) -> Result<FuzzyNumber> {
    let doc: FuzzyDoc = serde_json::from_str(text).map_err(|e| FuzzyError::Format(e.to_string()))?;
    FuzzyNumber::try_from(doc)
}

pub fn to_json_string(u: &FuzzyNumber) -> String {
    serde_json::to_string_pretty(&FuzzyDoc::from(u)).expect("fuzzy documents always serialize")
}
