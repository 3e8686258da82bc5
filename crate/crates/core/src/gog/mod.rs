//! Graphs of groups over Serre graphs, their fundamental-group
//! presentations, and the collapse-to-one-edge move.
//!
//! A [`SerreGraph`] has oriented half-edges `e` with an inverse `ē ≠ e`
//! and an origin vertex; the terminus of `e` is the origin of `ē`. Half
//! edges created by [`SerreGraph::add_edge`] come in pairs `(2k, 2k+1)`, and
//! an *edge pair* is referred to by its index `k`.
//!
//! Vertex groups are finite presentations whose generators live in one
//! table shared by the whole graph of groups, so that a boundary word
//! naming another vertex's generator is representable and gets reported
//! by [`GraphOfGroups::validate`] rather than being unconstructible.

mod essential;
mod file;
mod pi1;

pub use essential::{essential_check, EdgeEndIndex, EssentialReport, IndexMeta, SplittingMeta};
pub use file::{EdgeSpec, EndMeta, GogFile, VertexSpec};
pub use pi1::{collapse_all_but_one, fundamental_presentation, OneEdgeSplitting, Pi1};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::words::{parse_word_with, GenId, ParseError, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GogError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("invalid name `{0}`")]
    BadName(String),
    #[error("{context}: {source}")]
    Word { context: String, source: ParseError },
    #[error("edge `{edge}` has {generators} edge generators but {images} images on the {side} side")]
    Arity { edge: String, side: &'static str, generators: usize, images: usize },
    #[error("edge pair {0} does not exist")]
    NoSuchEdge(usize),
    #[error("not a maximal subtree: {0}")]
    NotSpanningTree(String),
    #[error("graph of groups is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("{0}")]
    File(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfEdge {
    pub name: String,
    pub origin: usize,
    pub inv: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SerreGraph {
    pub vertices: Vec<String>,
    pub half_edges: Vec<HalfEdge>,
}

impl SerreGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> usize {
        self.vertices.push(name.to_string());
        self.vertices.len() - 1
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Adds `e: from → to` and `ē: to → from` (named `name` and
    /// `name_bar`); returns the edge-pair index.
    pub fn add_edge(&mut self, name: &str, from: usize, to: usize) -> usize {
        let e = self.half_edges.len();
        self.half_edges.push(HalfEdge { name: name.to_string(), origin: from, inv: e + 1 });
        self.half_edges.push(HalfEdge { name: format!("{name}_bar"), origin: to, inv: e });
        e / 2
    }

    pub fn origin(&self, e: usize) -> usize {
        self.half_edges[e].origin
    }

    pub fn inv(&self, e: usize) -> usize {
        self.half_edges[e].inv
    }

    pub fn terminus(&self, e: usize) -> usize {
        self.origin(self.inv(e))
    }

    pub fn pair_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    /// The positively oriented half-edge of pair `k`.
    pub fn pair_edge(&self, k: usize) -> usize {
        2 * k
    }

    pub fn pair_of(&self, e: usize) -> usize {
        e / 2
    }

    /// Vertices reachable from `start` without using pairs in `skip`.
    fn reach(&self, start: usize, skip: &BTreeSet<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for (e, h) in self.half_edges.iter().enumerate() {
                if h.origin != v || skip.contains(&self.pair_of(e)) {
                    continue;
                }
                let w = self.terminus(e);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.reach(0, &BTreeSet::new()).iter().all(|&s| s)
    }

    /// Connected components after deleting the pairs in `skip`, each a
    /// sorted vertex list; components are ordered by smallest vertex.
    pub fn components(&self, skip: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            if assigned[v] {
                continue;
            }
            let seen = self.reach(v, skip);
            let comp: Vec<usize> = (0..seen.len()).filter(|&w| seen[w]).collect();
            for &w in &comp {
                assigned[w] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Structural invariants: involutive fixed-point-free inverse, origins
    /// in range, connectedness, unique names.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let nh = self.half_edges.len();
        let mut names = BTreeSet::new();
        for v in &self.vertices {
            if !names.insert(v.as_str()) {
                out.push(Violation::DuplicateName(v.clone()));
            }
        }
        let mut edge_names = BTreeSet::new();
        for (e, h) in self.half_edges.iter().enumerate() {
            if !edge_names.insert(h.name.as_str()) {
                out.push(Violation::DuplicateName(h.name.clone()));
            }
            if h.origin >= self.vertices.len() {
                out.push(Violation::OriginOutOfRange(h.name.clone()));
            }
            if h.inv >= nh {
                out.push(Violation::InverseOutOfRange(h.name.clone()));
            } else if h.inv == e {
                out.push(Violation::SelfInverse(h.name.clone()));
            } else if self.half_edges[h.inv].inv != e {
                out.push(Violation::NotInvolution(h.name.clone()));
            } else if h.inv != e ^ 1 {
                out.push(Violation::Unpaired(h.name.clone()));
            }
        }
        let structurally_sound = out.is_empty();
        if structurally_sound && !self.is_connected() {
            out.push(Violation::Disconnected);
        }
        out
    }
}

/// Breadth-first maximal subtree: start at vertex 0 (the smallest id;
/// files list vertices in sorted order), visit each vertex's
/// outgoing half-edges in ascending id order, keep an edge pair when it
/// reaches a new vertex. Returns edge-pair indices.
pub fn spanning_tree(graph: &SerreGraph) -> Result<BTreeSet<usize>, GogError> {
    let mut tree = BTreeSet::new();
    if graph.vertices.is_empty() {
        return Ok(tree);
    }
    let mut seen = vec![false; graph.vertices.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for e in 0..graph.half_edges.len() {
            if graph.origin(e) != v {
                continue;
            }
            let w = graph.terminus(e);
            if !seen[w] {
                seen[w] = true;
                tree.insert(graph.pair_of(e));
                queue.push_back(w);
            }
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(tree)
    } else {
        Err(GogError::Disconnected)
    }
}

/// Checks that `tree` is a set of edge pairs forming a maximal subtree.
pub fn check_spanning_tree(graph: &SerreGraph, tree: &BTreeSet<usize>) -> Result<(), GogError> {
    let nv = graph.vertices.len();
    if let Some(&k) = tree.iter().find(|&&k| k >= graph.pair_count()) {
        return Err(GogError::NoSuchEdge(k));
    }
    if tree.len() + 1 != nv.max(1) {
        return Err(GogError::NotSpanningTree(format!(
            "{} edges for {} vertices",
            tree.len(),
            nv
        )));
    }
    // Union-find over the tree edges: a cycle or loop shows up as a repeat.
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &k in tree {
        let e = graph.pair_edge(k);
        let (a, b) = (find(&mut parent, graph.origin(e)), find(&mut parent, graph.terminus(e)));
        if a == b {
            return Err(GogError::NotSpanningTree(format!(
                "edge `{}` closes a cycle",
                graph.half_edges[e].name
            )));
        }
        parent[a] = b;
    }
    Ok(())
}

/// Every maximal subtree, up to `limit` of them, in lexicographic order of
/// edge-pair sets.
pub fn all_spanning_trees(graph: &SerreGraph, limit: usize) -> Vec<BTreeSet<usize>> {
    let need = graph.vertices.len().saturating_sub(1);
    let candidates: Vec<usize> = (0..graph.pair_count())
        .filter(|&k| {
            let e = graph.pair_edge(k);
            graph.origin(e) != graph.terminus(e)
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        graph: &SerreGraph,
        cand: &[usize],
        from: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if chosen.len() == need {
            let t: BTreeSet<usize> = chosen.iter().copied().collect();
            if check_spanning_tree(graph, &t).is_ok() {
                out.push(t);
            }
            return;
        }
        for i in from..cand.len() {
            chosen.push(cand[i]);
            rec(graph, cand, i + 1, need, chosen, out, limit);
            chosen.pop();
        }
    }
    rec(graph, &candidates, 0, need, &mut chosen, &mut out, limit);
    out
}

/// A structural problem found by [`GraphOfGroups::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "at", rename_all = "kebab-case")]
pub enum Violation {
    SelfInverse(String),
    NotInvolution(String),
    InverseOutOfRange(String),
    Unpaired(String),
    OriginOutOfRange(String),
    Disconnected,
    DuplicateName(String),
    EdgeGroupMismatch(String),
    BoundaryArity(String),
    ForeignGenerator { half_edge: String, generator: String },
    ForeignRelator { vertex: String, generator: String },
    GeneratorVertexOutOfRange(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfInverse(e) => write!(f, "edge equals its inverse: `{e}`"),
            Violation::NotInvolution(e) => write!(f, "inverse of inverse is not the edge: `{e}`"),
            Violation::InverseOutOfRange(e) => write!(f, "inverse of `{e}` is not an edge"),
            Violation::Unpaired(e) => {
                write!(f, "`{e}` is not stored next to its inverse (pairs must be (2k, 2k+1))")
            }
            Violation::OriginOutOfRange(e) => write!(f, "origin of `{e}` is not a vertex"),
            Violation::Disconnected => write!(f, "graph is disconnected"),
            Violation::DuplicateName(n) => write!(f, "duplicate name `{n}`"),
            Violation::EdgeGroupMismatch(e) => {
                write!(f, "edge group of `{e}` differs from that of its inverse")
            }
            Violation::BoundaryArity(e) => {
                write!(f, "boundary map of `{e}` does not give one image per edge generator")
            }
            Violation::ForeignGenerator { half_edge, generator } => write!(
                f,
                "boundary word of `{half_edge}` uses `{generator}`, which is not a generator of its origin vertex"
            ),
            Violation::ForeignRelator { vertex, generator } => {
                write!(f, "relator of vertex `{vertex}` uses foreign generator `{generator}`")
            }
            Violation::GeneratorVertexOutOfRange(g) => {
                write!(f, "generator `{g}` belongs to no vertex")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Properties taken on trust because they are undecidable in general.
    pub assumptions: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A vertex-group generator: owning vertex and local name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexGen {
    pub vertex: usize,
    pub name: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GraphOfGroups {
    pub graph: SerreGraph,
    /// All vertex generators; words below use indices into this table.
    pub generators: Vec<VertexGen>,
    /// Relators of each vertex group.
    pub vertex_relators: Vec<Vec<Word>>,
    /// Edge-group generators, per half-edge (shared by `e` and `ē`).
    pub edge_generators: Vec<Vec<String>>,
    /// `α_e` per half-edge: image of each edge generator in the origin group.
    pub boundary: Vec<Vec<Word>>,
}

fn valid_ident(s: &str) -> bool {
    crate::words::valid_ident(s)
}

impl GraphOfGroups {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex_generators(&self, v: usize) -> Vec<GenId> {
        (0..self.generators.len())
            .filter(|&i| self.generators[i].vertex == v)
            .map(|i| GenId(i as u32))
            .collect()
    }

    /// Resolves `name` as a generator of `v`, falling back to a unique
    /// generator of another vertex (which [`Self::validate`] then flags).
    fn resolver(&self, v: usize) -> impl Fn(&str) -> Option<GenId> + '_ {
        move |name: &str| {
            let own = self
                .generators
                .iter()
                .position(|g| g.vertex == v && g.name == name);
            if let Some(i) = own {
                return Some(GenId(i as u32));
            }
            let mut others = self.generators.iter().enumerate().filter(|(_, g)| g.name == name);
            match (others.next(), others.next()) {
                (Some((i, _)), None) => Some(GenId(i as u32)),
                _ => None,
            }
        }
    }

    pub fn parse_at(&self, v: usize, text: &str, context: impl Fn() -> String) -> Result<Word, GogError> {
        parse_word_with(text, &self.resolver(v)).map_err(|source| GogError::Word { context: context(), source })
    }

    pub fn add_vertex<S: AsRef<str>>(&mut self, name: &str, generators: &[S], relators: &[S]) -> Result<usize, GogError> {
        if !valid_ident(name) {
            return Err(GogError::BadName(name.to_string()));
        }
        if self.graph.vertex(name).is_some() {
            return Err(GogError::Duplicate(name.to_string()));
        }
        let v = self.graph.add_vertex(name);
        let mut seen = BTreeSet::new();
        for g in generators {
            let g = g.as_ref();
            if !valid_ident(g) {
                return Err(GogError::BadName(g.to_string()));
            }
            if !seen.insert(g) {
                return Err(GogError::Duplicate(format!("{name}.{g}")));
            }
            self.generators.push(VertexGen { vertex: v, name: g.to_string() });
        }
        let mut rels = Vec::new();
        for (i, r) in relators.iter().enumerate() {
            rels.push(self.parse_at(v, r.as_ref(), || format!("vertices.{name}.relators[{i}]"))?);
        }
        self.vertex_relators.push(rels);
        Ok(v)
    }

    /// Adds an edge `name: from → to` with edge group generators and the
    /// images `alpha` (in `from`) and `alpha_bar` (in `to`). Returns the
    /// edge-pair index.
    pub fn add_edge<S: AsRef<str>>(
        &mut self,
        name: &str,
        from: &str,
        to: &str,
        edge_generators: &[S],
        alpha: &[S],
        alpha_bar: &[S],
    ) -> Result<usize, GogError> {
        if !valid_ident(name) {
            return Err(GogError::BadName(name.to_string()));
        }
        let bar = format!("{name}_bar");
        if self.graph.half_edges.iter().any(|h| h.name == name || h.name == bar) {
            return Err(GogError::Duplicate(name.to_string()));
        }
        let vf = self.graph.vertex(from).ok_or_else(|| GogError::UnknownVertex(from.to_string()))?;
        let vt = self.graph.vertex(to).ok_or_else(|| GogError::UnknownVertex(to.to_string()))?;
        let gens: Vec<String> = edge_generators.iter().map(|g| g.as_ref().to_string()).collect();
        for (side, images) in [("alpha", alpha), ("alpha_bar", alpha_bar)] {
            if images.len() != gens.len() {
                return Err(GogError::Arity {
                    edge: name.to_string(),
                    side,
                    generators: gens.len(),
                    images: images.len(),
                });
            }
        }
        let parse_all = |v: usize, side: &str, ws: &[S]| -> Result<Vec<Word>, GogError> {
            ws.iter()
                .enumerate()
                .map(|(i, w)| self.parse_at(v, w.as_ref(), || format!("edge {name}: {side}[{i}]")))
                .collect()
        };
        let a = parse_all(vf, "alpha", alpha)?;
        let b = parse_all(vt, "alpha_bar", alpha_bar)?;
        let k = self.graph.add_edge(name, vf, vt);
        self.edge_generators.push(gens.clone());
        self.edge_generators.push(gens);
        self.boundary.push(a);
        self.boundary.push(b);
        Ok(k)
    }

    /// Name of a generator, qualified by its vertex.
    pub fn qualified(&self, g: GenId) -> String {
        match self.generators.get(g.index()) {
            Some(vg) => match self.graph.vertices.get(vg.vertex) {
                Some(v) => format!("{v}.{}", vg.name),
                None => vg.name.clone(),
            },
            None => format!("#{}", g.0),
        }
    }

    /// The presentation of vertex group `v` on its own generators.
    pub fn vertex_presentation(&self, v: usize) -> Presentation {
        let gens = self.vertex_generators(v);
        let local = |g: GenId| gens.iter().position(|&x| x == g).map(|i| GenId(i as u32));
        let relators = self.vertex_relators[v]
            .iter()
            .map(|r| r.substitute(|g| Word::gen(local(g).expect("validated vertex relator"))))
            .collect();
        let names = gens.iter().map(|g| self.generators[g.index()].name.clone()).collect();
        Presentation::new(names, relators).expect("vertex generators are distinct identifiers")
    }

    /// Checks every structural invariant. Injectivity of the boundary maps
    /// is not checked (undecidable in general) and is listed as an
    /// assumption instead.
    pub fn validate(&self) -> ValidationReport {
        let g = &self.graph;
        let mut violations = g.violations();
        let nh = g.half_edges.len();
        let nv = g.vertices.len();
        for vg in &self.generators {
            if vg.vertex >= nv {
                violations.push(Violation::GeneratorVertexOutOfRange(vg.name.clone()));
            }
        }
        let owner = |id: GenId| self.generators.get(id.index()).map(|vg| vg.vertex);
        for (v, rels) in self.vertex_relators.iter().enumerate() {
            for r in rels {
                for id in r.generators() {
                    if owner(id) != Some(v) {
                        violations.push(Violation::ForeignRelator {
                            vertex: g.vertices.get(v).cloned().unwrap_or_default(),
                            generator: self.qualified(id),
                        });
                    }
                }
            }
        }
        if self.edge_generators.len() != nh || self.boundary.len() != nh {
            violations.push(Violation::BoundaryArity("<all>".into()));
            return self.report(violations);
        }
        for (e, h) in g.half_edges.iter().enumerate() {
            if h.inv < nh && self.edge_generators[e] != self.edge_generators[h.inv] {
                violations.push(Violation::EdgeGroupMismatch(h.name.clone()));
            }
            if self.boundary[e].len() != self.edge_generators[e].len() {
                violations.push(Violation::BoundaryArity(h.name.clone()));
            }
            for w in &self.boundary[e] {
                for id in w.generators() {
                    if owner(id) != Some(h.origin) {
                        violations.push(Violation::ForeignGenerator {
                            half_edge: h.name.clone(),
                            generator: self.qualified(id),
                        });
                    }
                }
            }
        }
        violations.dedup();
        self.report(violations)
    }

    fn report(&self, violations: Vec<Violation>) -> ValidationReport {
        ValidationReport {
            violations,
            assumptions: vec!["boundary maps α_e are assumed injective (not checked)".to_string()],
        }
    }

    pub fn ensure_valid(&self) -> Result<(), GogError> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            Err(GogError::Invalid(r.violations))
        }
    }

    /// The sub-graph of groups on `vertices` using the edge pairs in
    /// `pairs` (both ends must lie in `vertices`), with vertex order and
    /// names preserved. Also returns where each generator went.
    pub fn restrict(&self, vertices: &[usize], pairs: &[usize]) -> (GraphOfGroups, Vec<Option<GenId>>) {
        let mut out = GraphOfGroups::new();
        let mut gen_map = vec![None; self.generators.len()];
        for &v in vertices {
            let nv = out.graph.add_vertex(&self.graph.vertices[v]);
            for id in self.vertex_generators(v) {
                gen_map[id.index()] = Some(GenId(out.generators.len() as u32));
                out.generators.push(VertexGen { vertex: nv, name: self.generators[id.index()].name.clone() });
            }
        }
        let remap = |w: &Word| w.substitute(|g| Word::gen(gen_map[g.index()].expect("generator inside restriction")));
        for &v in vertices {
            out.vertex_relators.push(self.vertex_relators[v].iter().map(remap).collect());
        }
        let local = |v: usize| vertices.iter().position(|&x| x == v).expect("edge end inside restriction");
        for &k in pairs {
            let e = self.graph.pair_edge(k);
            let ebar = self.graph.inv(e);
            let nk = out.graph.half_edges.len();
            out.graph.half_edges.push(HalfEdge {
                name: self.graph.half_edges[e].name.clone(),
                origin: local(self.graph.origin(e)),
                inv: nk + 1,
            });
            out.graph.half_edges.push(HalfEdge {
                name: self.graph.half_edges[ebar].name.clone(),
                origin: local(self.graph.origin(ebar)),
                inv: nk,
            });
            for h in [e, ebar] {
                out.edge_generators.push(self.edge_generators[h].clone());
                out.boundary.push(self.boundary[h].iter().map(remap).collect());
            }
        }
        (out, gen_map)
    }
}
