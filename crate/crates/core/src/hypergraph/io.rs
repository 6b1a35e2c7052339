//! JSON interchange format.
//!
//! ```text
//! {"edges": [{"members": {"a": -1, "b": 1}}, ...], "vertices": ["a", "b", ...]}
//! ```
//!
//! `-1` is an input, `+1` an output. Output is canonical: sorted keys,
//! vertices sorted by name, edges sorted by member lists.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{OrientedHypergraph, RawHypergraph, Sign};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    edges: Vec<EdgeDocument>,
    vertices: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDocument {
    members: BTreeMap<String, i64>,
}

pub fn parse(text: &str) -> Result<OrientedHypergraph> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let index: HashMap<&str, usize> = doc.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (j, edge) in doc.edges.iter().enumerate() {
        let mut members = Vec::with_capacity(edge.members.len());
        for (name, &value) in &edge.members {
            let v = *index.get(name.as_str()).ok_or_else(|| Error::UnknownVertex { edge: j, vertex: name.clone() })?;
            let sign = Sign::from_value(value).ok_or_else(|| Error::SignOutsideAlphabet {
                edge: j,
                vertex: name.clone(),
                sign: value,
            })?;
            members.push((v, sign));
        }
        edges.push(members);
    }
    RawHypergraph::new(doc.vertices.clone(), edges).build()
}

pub fn serialize(h: &OrientedHypergraph) -> String {
    let doc = Document {
        edges: h
            .edges()
            .iter()
            .map(|e| EdgeDocument {
                members: e.members().iter().map(|&(v, s)| (h.vertex_name(v).to_string(), s.value())).collect(),
            })
            .collect(),
        vertices: h.vertices().to_vec(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
    out.push('\n');
    out
}
