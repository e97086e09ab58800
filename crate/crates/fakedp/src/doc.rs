//! The `.surface` document: a JSON profile with integer data only.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    pub schema: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub template: bool,
    pub rank: usize,
    pub canonical_y: Vec<i64>,
    pub group: GroupDoc,
    pub branches: Vec<BranchDoc>,
    #[serde(default)]
    pub unramified: Vec<CurveDoc>,
    #[serde(default)]
    pub basis_x: Vec<BasisDoc>,
    #[serde(default)]
    pub effective_roots: Vec<Vec<i64>>,
    pub ample_y: Vec<i64>,
    #[serde(default)]
    pub generators: Vec<String>,
    /// Expressions whose inertia images must sum to zero, e.g. `"A1+B1+C2"`.
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub declared: Declared,
    #[serde(default)]
    pub presets: Presets,
    #[serde(default)]
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub orders: Vec<u32>,
    pub g_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDoc {
    pub name: String,
    pub class: Vec<i64>,
    pub psi: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub name: String,
    pub class: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub name: String,
    pub expr: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Declared {
    #[serde(default)]
    pub coordinates: Vec<CoordinateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_x: Option<BundleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinateDoc {
    pub name: String,
    pub multidegree: Vec<i64>,
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub multidegree: Vec<i64>,
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presets {
    #[serde(default)]
    pub numerical: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k2: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1_tx: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2_tx: Option<i64>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl SurfaceDoc {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Canonical serialization: declared field order, two-space indent, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}
