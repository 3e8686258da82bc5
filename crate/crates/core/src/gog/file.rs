//! On-disk form of a graph of groups (JSON):
//!
//! ```json
//! {
//!   "vertices": { "v": { "generators": ["a"], "relators": [] } },
//!   "edges": [
//!     { "id": "e", "from": "v", "to": "v", "edge_generators": ["c"],
//!       "alpha": ["a"], "alpha_bar": ["a"],
//!       "index_meta": { "alpha": "infinite", "alpha_bar": { "finite": 2 } } }
//!   ]
//! }
//! ```
//!
//! Vertices are ordered by id. Edge `id` yields half-edges `id` and
//! `id_bar`; `alpha` is read in the `from` vertex and `alpha_bar` in `to`.
//! `relators`, `edges`, `edge_generators`, `alpha`, `alpha_bar` and
//! `index_meta` may be omitted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GogError, GraphOfGroups, IndexMeta, SplittingMeta};
use crate::words::{format_word, Alphabet, Word};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GogFile {
    pub vertices: BTreeMap<String, VertexSpec>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub edge_generators: Vec<String>,
    #[serde(default)]
    pub alpha: Vec<String>,
    #[serde(default)]
    pub alpha_bar: Vec<String>,
    #[serde(default)]
    pub index_meta: EndMeta,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndMeta {
    #[serde(default)]
    pub alpha: IndexMeta,
    #[serde(default)]
    pub alpha_bar: IndexMeta,
}

impl GogFile {
    /// Parses the JSON text; syntax and schema errors carry line and column.
    pub fn parse(text: &str) -> Result<Self, GogError> {
        serde_json::from_str(text).map_err(|e| GogError::File(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Builds the graph of groups (not yet validated) and its metadata.
    pub fn build(&self) -> Result<(GraphOfGroups, SplittingMeta), GogError> {
        let mut gog = GraphOfGroups::new();
        let mut meta = SplittingMeta::default();
        for (id, v) in &self.vertices {
            gog.add_vertex(id, &v.generators, &v.relators)
                .map_err(|e| GogError::File(format!("vertices.{id}: {e}")))?;
        }
        for (i, e) in self.edges.iter().enumerate() {
            gog.add_edge(&e.id, &e.from, &e.to, &e.edge_generators, &e.alpha, &e.alpha_bar)
                .map_err(|err| GogError::File(format!("edges[{i}]: {err}")))?;
            if e.index_meta.alpha != IndexMeta::Unknown {
                meta.set(&e.id, e.index_meta.alpha);
            }
            if e.index_meta.alpha_bar != IndexMeta::Unknown {
                meta.set(&format!("{}_bar", e.id), e.index_meta.alpha_bar);
            }
        }
        Ok((gog, meta))
    }

    /// Inverse of [`Self::build`] for graphs made by the builder API.
    pub fn from_gog(gog: &GraphOfGroups, meta: &SplittingMeta) -> Self {
        let names: Vec<String> = gog.generators.iter().map(|g| g.name.clone()).collect();
        let alphabet = Alphabet::from_names(&names);
        let text = |w: &Word| format_word(w, &alphabet);
        let mut vertices = BTreeMap::new();
        for (v, id) in gog.graph.vertices.iter().enumerate() {
            let generators = gog.vertex_generators(v).iter().map(|g| names[g.index()].clone()).collect();
            let relators = gog.vertex_relators[v].iter().map(text).collect();
            vertices.insert(id.clone(), VertexSpec { generators, relators });
        }
        let mut edges = Vec::new();
        for k in 0..gog.graph.pair_count() {
            let e = gog.graph.pair_edge(k);
            let ebar = gog.graph.inv(e);
            let h = &gog.graph.half_edges;
            edges.push(EdgeSpec {
                id: h[e].name.clone(),
                from: gog.graph.vertices[h[e].origin].clone(),
                to: gog.graph.vertices[h[ebar].origin].clone(),
                edge_generators: gog.edge_generators[e].clone(),
                alpha: gog.boundary[e].iter().map(text).collect(),
                alpha_bar: gog.boundary[ebar].iter().map(text).collect(),
                index_meta: EndMeta { alpha: meta.get(&h[e].name), alpha_bar: meta.get(&h[ebar].name) },
            });
        }
        GogFile { vertices, edges }
    }
}

impl std::str::FromStr for GogFile {
    type Err = GogError;

    fn from_str(s: &str) -> Result<Self, GogError> {
        Self::parse(s)
    }
}
