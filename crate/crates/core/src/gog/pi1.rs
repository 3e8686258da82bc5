use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{check_spanning_tree, spanning_tree, GogError, GraphOfGroups, HalfEdge, SerreGraph, VertexGen};
use crate::words::{GenId, Presentation, Word};

/// `π₁(Γ, T)` in raw and Tietze-simplified form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pi1 {
    pub tree: BTreeSet<usize>,
    /// Vertex generators, then one letter per half-edge; relators are the
    /// vertex relators, `e·ē` per pair, `e` per tree pair, then
    /// `e⁻¹·α_e(g)·e·α_ē(g)⁻¹` per half-edge and edge generator.
    pub raw: Presentation,
    /// `ē = e⁻¹` and tree letters `= 1` eliminated, relators cyclically
    /// reduced and deduplicated.
    pub simplified: Presentation,
    /// Generator of `simplified` for each vertex generator.
    pub vertex_gen_image: Vec<GenId>,
    /// Value in `simplified` of each half-edge letter.
    pub edge_image: Vec<Word>,
}

/// Disjoint names for the vertex generators: the local name when it is
/// unique and clashes with no edge letter, else `{vertex}_{name}`.
fn vertex_gen_names(gog: &GraphOfGroups) -> Vec<String> {
    let mut count: BTreeMap<&str, usize> = BTreeMap::new();
    for g in &gog.generators {
        *count.entry(&g.name).or_default() += 1;
    }
    let mut taken: BTreeSet<String> = gog.graph.half_edges.iter().map(|h| h.name.clone()).collect();
    let mut out = Vec::new();
    for g in &gog.generators {
        let mut name = if count[g.name.as_str()] == 1 && !taken.contains(&g.name) {
            g.name.clone()
        } else {
            format!("{}_{}", gog.graph.vertices[g.vertex], g.name)
        };
        while taken.contains(&name) {
            name.push('_');
        }
        taken.insert(name.clone());
        out.push(name);
    }
    out
}

pub fn fundamental_presentation(gog: &GraphOfGroups, tree: &BTreeSet<usize>) -> Result<Pi1, GogError> {
    gog.ensure_valid()?;
    check_spanning_tree(&gog.graph, tree)?;
    let graph = &gog.graph;
    let nvg = gog.generators.len();
    let letter = |e: usize| GenId((nvg + e) as u32);

    let mut generators = vertex_gen_names(gog);
    generators.extend(graph.half_edges.iter().map(|h| h.name.clone()));

    let mut relators: Vec<Word> = gog.vertex_relators.iter().flatten().cloned().collect();
    for k in 0..graph.pair_count() {
        let e = graph.pair_edge(k);
        relators.push(Word::gen(letter(e)).concat(&Word::gen(letter(graph.inv(e)))));
    }
    for &k in tree {
        relators.push(Word::gen(letter(graph.pair_edge(k))));
    }
    for e in 0..graph.half_edges.len() {
        let ebar = graph.inv(e);
        let x = Word::gen(letter(e));
        for (img, img_bar) in gog.boundary[e].iter().zip(&gog.boundary[ebar]) {
            relators.push(x.inverse().concat(img).concat(&x).concat(&img_bar.inverse()));
        }
    }
    let raw = Presentation::new(generators.clone(), relators).expect("disjoint generator names");

    // Tietze elimination in one pass: keep vertex generators and the
    // positive letter of each non-tree pair.
    let mut kept: Vec<String> = generators[..nvg].to_vec();
    let vertex_gen_image: Vec<GenId> = (0..nvg).map(|i| GenId(i as u32)).collect();
    let mut edge_image = vec![Word::empty(); graph.half_edges.len()];
    for k in 0..graph.pair_count() {
        if tree.contains(&k) {
            continue;
        }
        let e = graph.pair_edge(k);
        let id = GenId(kept.len() as u32);
        kept.push(graph.half_edges[e].name.clone());
        edge_image[e] = Word::gen(id);
        edge_image[graph.inv(e)] = Word::power(id, -1);
    }
    let image = |g: GenId| {
        if g.index() < nvg {
            Word::gen(vertex_gen_image[g.index()])
        } else {
            edge_image[g.index() - nvg].clone()
        }
    };
    let simplified_relators = raw.relators().iter().map(|r| r.substitute(image)).collect();
    let simplified = Presentation::new(kept, simplified_relators)
        .expect("subset of raw generators")
        .dedup_relators();
    Ok(Pi1 { tree: tree.clone(), raw, simplified, vertex_gen_image, edge_image })
}

/// Result of collapsing every edge pair but one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OneEdgeSplitting {
    /// `A *_C B`: the kept pair joins two components.
    Amalgam {
        edge: String,
        edge_generators: Vec<String>,
        a_vertices: Vec<String>,
        a: Presentation,
        b_vertices: Vec<String>,
        b: Presentation,
        /// Images of the edge generators in `a`.
        alpha: Vec<Word>,
        /// Images of the edge generators in `b`.
        alpha_bar: Vec<Word>,
    },
    /// `H*_C`: the kept pair has both ends in one component.
    Hnn {
        edge: String,
        edge_generators: Vec<String>,
        base_vertices: Vec<String>,
        base: Presentation,
        alpha: Vec<Word>,
        alpha_bar: Vec<Word>,
    },
}

/// Collapses one component of `gog` minus `keep` to its simplified `π₁`, returning the vertex names, the presentation, and
/// the image of each original generator (`None` outside the component).
fn collapse_component(
    gog: &GraphOfGroups,
    vertices: &[usize],
    keep: usize,
) -> Result<(Vec<String>, Presentation, Vec<Option<GenId>>), GogError> {
    let inside: BTreeSet<usize> = vertices.iter().copied().collect();
    let pairs: Vec<usize> = (0..gog.graph.pair_count())
        .filter(|&k| k != keep && inside.contains(&gog.graph.origin(gog.graph.pair_edge(k))))
        .collect();
    let (sub, gen_map) = gog.restrict(vertices, &pairs);
    let tree = spanning_tree(&sub.graph)?;
    let pi = fundamental_presentation(&sub, &tree)?;
    let images = gen_map.iter().map(|g| g.map(|g| pi.vertex_gen_image[g.index()])).collect();
    let names = vertices.iter().map(|&v| gog.graph.vertices[v].clone()).collect();
    Ok((names, pi.simplified, images))
}

pub fn collapse_all_but_one(gog: &GraphOfGroups, keep: usize) -> Result<OneEdgeSplitting, GogError> {
    if keep >= gog.graph.pair_count() {
        return Err(GogError::NoSuchEdge(keep));
    }
    gog.ensure_valid()?;
    let graph = &gog.graph;
    let e = graph.pair_edge(keep);
    let ebar = graph.inv(e);
    let comps = graph.components(&BTreeSet::from([keep]));
    let comp_of = |v: usize| comps.iter().position(|c| c.contains(&v)).expect("every vertex has a component");
    let (ca, cb) = (comp_of(graph.origin(e)), comp_of(graph.terminus(e)));
    let map_words = |words: &[Word], images: &[Option<GenId>]| -> Vec<Word> {
        words
            .iter()
            .map(|w| w.substitute(|g| Word::gen(images[g.index()].expect("boundary word inside its component"))))
            .collect()
    };
    let edge = graph.half_edges[e].name.clone();
    let edge_generators = gog.edge_generators[e].clone();
    if ca == cb {
        let (base_vertices, base, images) = collapse_component(gog, &comps[ca], keep)?;
        Ok(OneEdgeSplitting::Hnn {
            edge,
            edge_generators,
            base_vertices,
            base,
            alpha: map_words(&gog.boundary[e], &images),
            alpha_bar: map_words(&gog.boundary[ebar], &images),
        })
    } else {
        let (a_vertices, a, ia) = collapse_component(gog, &comps[ca], keep)?;
        let (b_vertices, b, ib) = collapse_component(gog, &comps[cb], keep)?;
        Ok(OneEdgeSplitting::Amalgam {
            edge,
            edge_generators,
            a_vertices,
            a,
            b_vertices,
            b,
            alpha: map_words(&gog.boundary[e], &ia),
            alpha_bar: map_words(&gog.boundary[ebar], &ib),
        })
    }
}

impl OneEdgeSplitting {
    pub fn kind(&self) -> &'static str {
        match self {
            OneEdgeSplitting::Amalgam { .. } => "amalgam",
            OneEdgeSplitting::Hnn { .. } => "hnn",
        }
    }

    /// The one-edge graph of groups: one or two vertices named after the
    /// collapsed vertex sets (joined with `_`).
    pub fn to_graph_of_groups(&self) -> GraphOfGroups {
        let mut gog = GraphOfGroups::new();
        let push_vertex = |gog: &mut GraphOfGroups, names: &[String], p: &Presentation| -> (usize, u32) {
            let v = gog.graph.add_vertex(&names.join("_"));
            let offset = gog.generators.len() as u32;
            for g in p.generators() {
                gog.generators.push(VertexGen { vertex: v, name: g.clone() });
            }
            let shift = |w: &Word| w.substitute(|g| Word::gen(GenId(g.0 + offset)));
            gog.vertex_relators.push(p.relators().iter().map(shift).collect());
            (v, offset)
        };
        let shift_all =
            |ws: &[Word], offset: u32| ws.iter().map(|w| w.substitute(|g| Word::gen(GenId(g.0 + offset)))).collect();
        let (edge, gens, from, to, alpha, alpha_bar) = match self {
            OneEdgeSplitting::Amalgam { edge, edge_generators, a_vertices, a, b_vertices, b, alpha, alpha_bar } => {
                let (va, oa) = push_vertex(&mut gog, a_vertices, a);
                let (vb, ob) = push_vertex(&mut gog, b_vertices, b);
                (edge, edge_generators, va, vb, shift_all(alpha, oa), shift_all(alpha_bar, ob))
            }
            OneEdgeSplitting::Hnn { edge, edge_generators, base_vertices, base, alpha, alpha_bar } => {
                let (v, o) = push_vertex(&mut gog, base_vertices, base);
                (edge, edge_generators, v, v, shift_all(alpha, o), shift_all(alpha_bar, o))
            }
        };
        let SerreGraph { half_edges, .. } = &mut gog.graph;
        half_edges.push(HalfEdge { name: edge.clone(), origin: from, inv: 1 });
        half_edges.push(HalfEdge { name: format!("{edge}_bar"), origin: to, inv: 0 });
        gog.edge_generators = vec![gens.clone(), gens.clone()];
        gog.boundary = vec![alpha, alpha_bar];
        gog
    }

    /// Simplified `π₁` of the one-edge graph of groups.
    pub fn presentation(&self) -> Result<Presentation, GogError> {
        let gog = self.to_graph_of_groups();
        let tree = spanning_tree(&gog.graph)?;
        Ok(fundamental_presentation(&gog, &tree)?.simplified)
    }
}
