use serde::Serialize;

use crate::abelian::{abelian_invariants, standard_symplectic, AbelianInvariants, PairingForm};
use crate::error::{Error, Result};
use crate::fundtree::link::HandlebodyLink;
use crate::group::{FreeProductInjections, Presentation, Word};
use crate::tree::{canonical_code, join, BasedTree, CanonicalCode};

/// Data on the edge between a node and its parent: a closed surface of
/// genus `genus`, its intersection form, and the images of the surface
/// group generators `a₁,b₁,…,a_g,b_g` in both endpoint groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeData {
    pub genus: u32,
    pub pairing: PairingForm,
    pub to_parent: Vec<Word>,
    pub to_child: Vec<Word>,
}

impl EdgeData {
    pub fn surface_group(&self) -> Presentation {
        Presentation::surface_group(self.genus as usize)
    }
}

/// A based tree with a group at every node and surface data on every edge.
/// `edges[c - 1]` belongs to the edge from node `c` to its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundTree {
    shape: BasedTree,
    nodes: Vec<Presentation>,
    edges: Vec<EdgeData>,
}

impl FundTree {
    /// The shape's edge labels are overwritten with the edge genera.
    pub fn new(shape: BasedTree, nodes: Vec<Presentation>, edges: Vec<EdgeData>) -> Result<Self> {
        if nodes.len() != shape.node_count() || edges.len() != shape.edge_count() {
            return Err(Error::Invalid(format!(
                "{} node groups and {} edges for a tree of {} nodes",
                nodes.len(),
                edges.len(),
                shape.node_count()
            )));
        }
        let mut parents = shape.parents().to_vec();
        let mut labels = vec![None];
        for (c, p, _) in shape.edges() {
            let e = &edges[c - 1];
            let n = 2 * e.genus as usize;
            if e.pairing.matrix().rows() != n {
                return Err(Error::Invalid(format!("edge {c}: pairing size differs from 2·genus")));
            }
            if e.to_parent.len() != n || e.to_child.len() != n {
                return Err(Error::Invalid(format!("edge {c}: expected {n} generator images per side")));
            }
            for w in &e.to_parent {
                nodes[p].check_word(w)?;
            }
            for w in &e.to_child {
                nodes[c].check_word(w)?;
            }
            labels.push(Some(e.genus));
            parents[c] = Some(p);
        }
        let mut labeled = BasedTree::from_parts(parents, labels)?;
        for v in 0..shape.node_count() {
            labeled.set_payload(v, shape.payload(v).map(String::from))?;
        }
        Ok(FundTree {
            shape: labeled,
            nodes,
            edges,
        })
    }

    /// One node carrying `group`.
    pub fn single(group: Presentation) -> Self {
        FundTree {
            shape: BasedTree::single(),
            nodes: vec![group],
            edges: vec![],
        }
    }

    pub fn shape(&self) -> &BasedTree {
        &self.shape
    }

    pub fn node_group(&self, v: usize) -> Option<&Presentation> {
        self.nodes.get(v)
    }

    pub fn nodes(&self) -> &[Presentation] {
        &self.nodes
    }

    /// Edge data of the edge whose child endpoint is `child`.
    pub fn edge(&self, child: usize) -> Option<&EdgeData> {
        child.checked_sub(1).and_then(|i| self.edges.get(i))
    }

    pub fn edges(&self) -> &[EdgeData] {
        &self.edges
    }

    /// Necessary-condition fingerprint: equal for equivalent trees.
    pub fn fingerprint(&self) -> Fingerprint {
        let node_h1: Vec<AbelianInvariants> = self.nodes.iter().map(abelian_invariants).collect();
        let mut decorated = self.shape.clone();
        for (v, h) in node_h1.iter().enumerate() {
            decorated.set_payload(v, Some(h.to_string())).expect("node in range");
        }
        Fingerprint {
            shape: canonical_code(&self.shape),
            decorated: decorated_code(&decorated),
            node_h1,
            genera: self.edges.iter().map(|e| e.genus).collect(),
        }
    }
}

/// Canonical code that also records each node's payload.
fn decorated_code(t: &BasedTree) -> CanonicalCode {
    let n = t.node_count();
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (c, p, _) in t.edges() {
        kids[p].push(c);
    }
    let mut codes: Vec<String> = vec![String::new(); n];
    for &v in t.bfs_order().iter().rev() {
        let mut parts: Vec<String> = kids[v]
            .iter()
            .map(|&c| format!("{}:{}", t.label(c).unwrap_or(0), std::mem::take(&mut codes[c])))
            .collect();
        parts.sort_unstable();
        codes[v] = format!("[{}]({})", t.payload(v).unwrap_or(""), parts.concat());
    }
    CanonicalCode::from_raw(std::mem::take(&mut codes[0]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub shape: CanonicalCode,
    /// Shape code with every node's H₁ folded in.
    pub decorated: CanonicalCode,
    pub node_h1: Vec<AbelianInvariants>,
    pub genera: Vec<u32>,
}

impl Fingerprint {
    /// Whether two fundamental trees can possibly be equivalent.
    pub fn compatible(&self, other: &Fingerprint) -> bool {
        self.decorated == other.decorated
    }
}

/// Graft `t2` onto node `at` of `t1`: the shapes are joined and the two
/// identified nodes carry the free product of their groups.
pub fn graft_fundtree(t1: &FundTree, at: usize, t2: &FundTree) -> Result<FundTree> {
    let shape = join(&t1.shape, at, &t2.shape)?;
    let (merged, inj): (Presentation, FreeProductInjections) = t1.nodes[at].free_product(&t2.nodes[0]);
    let mut nodes = t1.nodes.clone();
    nodes[at] = merged;
    nodes.extend(t2.nodes[1..].iter().cloned());
    let mut edges = t1.edges.clone();
    for (c, p, _) in t2.shape.edges() {
        let mut e = t2.edges[c - 1].clone();
        if p == 0 {
            e.to_parent = e.to_parent.iter().map(|w| inj.right(w)).collect();
        }
        edges.push(e);
    }
    FundTree::new(shape, nodes, edges)
}

/// The star-shaped fundamental tree of a handlebody link. Leaf `i` carries
/// `handlebodies[i]`, a free group of rank `gᵢ`; the surface generators map
/// into the base by `aⱼ ↦ mⱼ`, `bⱼ ↦ lⱼ` and into the leaf by `aⱼ ↦ 1`,
/// `bⱼ ↦ fⱼ`.
pub fn link_to_fundtree(link: &HandlebodyLink, handlebodies: &[Presentation]) -> Result<FundTree> {
    let comps = link.components();
    if handlebodies.len() != comps.len() {
        return Err(Error::Precondition(format!(
            "{} handlebody groups for {} components",
            handlebodies.len(),
            comps.len()
        )));
    }
    let mut nodes = vec![link.ambient().clone()];
    let mut edges = Vec::with_capacity(comps.len());
    let mut tree_edges = Vec::with_capacity(comps.len());
    for (c, hb) in comps.iter().zip(handlebodies) {
        let g = c.genus as usize;
        if hb.generator_count() != g || !hb.relators().is_empty() {
            return Err(Error::Precondition(format!(
                "component {}: handlebody group must be free of rank {g}",
                c.id
            )));
        }
        if c.longitudes.len() != g || c.meridians.len() < g {
            return Err(Error::Precondition(format!(
                "component {}: needs {g} longitudes and at least {g} meridians",
                c.id
            )));
        }
        let mut to_parent = Vec::with_capacity(2 * g);
        let mut to_child = Vec::with_capacity(2 * g);
        for j in 0..g {
            to_parent.push(c.meridians[j].clone());
            to_parent.push(c.longitudes[j].clone());
            to_child.push(Word::identity());
            to_child.push(Word::generator(j as u32));
        }
        nodes.push(hb.clone());
        tree_edges.push((0, c.genus));
        edges.push(EdgeData {
            genus: c.genus,
            pairing: standard_symplectic(g),
            to_parent,
            to_child,
        });
    }
    let mut shape = BasedTree::from_edges(&tree_edges)?;
    for (i, c) in comps.iter().enumerate() {
        shape.set_payload(i + 1, Some(c.label.clone()))?;
    }
    FundTree::new(shape, nodes, edges)
}

/// Free groups of the right ranks for [`link_to_fundtree`].
pub fn handlebody_groups(link: &HandlebodyLink) -> Vec<Presentation> {
    link.components().iter().map(|c| Presentation::free_group(c.genus as usize)).collect()
}
