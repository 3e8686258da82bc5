use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::GraphOfGroups;

/// Index of `α_e(Γ_e)` in `Γ_{o(e)}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexMeta {
    Finite(u64),
    Infinite,
    #[default]
    Unknown,
}

impl fmt::Display for IndexMeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexMeta::Finite(k) => write!(f, "finite({k})"),
            IndexMeta::Infinite => f.write_str("infinite"),
            IndexMeta::Unknown => f.write_str("unknown"),
        }
    }
}

/// Declared indices keyed by half-edge name; absent means unknown.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingMeta(pub BTreeMap<String, IndexMeta>);

impl SplittingMeta {
    pub fn get(&self, half_edge: &str) -> IndexMeta {
        self.0.get(half_edge).copied().unwrap_or_default()
    }

    pub fn set(&mut self, half_edge: &str, index: IndexMeta) {
        self.0.insert(half_edge.to_string(), index);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeEndIndex {
    pub half_edge: String,
    pub index: IndexMeta,
    /// True when computed (rank-1 free abelian origin), false when echoed.
    pub computed: bool,
    pub declared: IndexMeta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EssentialReport {
    pub ends: Vec<EdgeEndIndex>,
    /// Every edge end has infinite index.
    pub essential: bool,
}

/// For a vertex with one generator and only trivial relators (so `Z`),
/// the boundary images are `a^{k_i}` and the image is `gcd(k_i)·Z`.
fn rank_one_index(gog: &GraphOfGroups, e: usize) -> Option<IndexMeta> {
    let v = gog.graph.origin(e);
    let gens = gog.vertex_generators(v);
    if gens.len() != 1 || gog.vertex_relators[v].iter().any(|r| !r.is_empty()) {
        return None;
    }
    let g = gens[0];
    let k = gog.boundary[e].iter().fold(0i64, |acc, w| acc.gcd(&w.exponent_sum(g)));
    Some(if k == 0 { IndexMeta::Infinite } else { IndexMeta::Finite(k.unsigned_abs()) })
}

pub fn essential_check(gog: &GraphOfGroups, meta: &SplittingMeta) -> EssentialReport {
    let ends: Vec<EdgeEndIndex> = gog
        .graph
        .half_edges
        .iter()
        .enumerate()
        .map(|(e, h)| {
            let declared = meta.get(&h.name);
            let computed = (e < gog.boundary.len() && h.origin < gog.vertex_relators.len())
                .then(|| rank_one_index(gog, e))
                .flatten();
            EdgeEndIndex {
                half_edge: h.name.clone(),
                index: computed.unwrap_or(declared),
                computed: computed.is_some(),
                declared,
            }
        })
        .collect();
    let essential = ends.iter().all(|end| end.index == IndexMeta::Infinite);
    EssentialReport { ends, essential }
}
