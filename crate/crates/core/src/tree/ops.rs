use serde::Serialize;

use crate::error::Result;
use crate::tree::based::BasedTree;

/// Barycentric subdivision: original nodes keep their ids, the barycenter
/// of edge `c` (child endpoint `c`) gets id `node_count + c - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaryDiagram {
    pub original: BasedTree,
    /// `(barycenter, endpoint)` arrows, two per barycenter, parent first.
    pub arrows: Vec<(usize, usize)>,
}

impl BaryDiagram {
    pub fn node_count(&self) -> usize {
        self.original.node_count() + self.original.edge_count()
    }

    pub fn barycenter(&self, edge: usize) -> usize {
        self.original.node_count() + edge - 1
    }

    pub fn barycenters(&self) -> std::ops::Range<usize> {
        self.original.node_count()..self.node_count()
    }

    pub fn is_barycenter(&self, node: usize) -> bool {
        self.barycenters().contains(&node)
    }

    /// The subdivided tree as a based tree in its own right: both halves of
    /// an edge carry the original label.
    pub fn as_tree(&self) -> BasedTree {
        let n = self.original.node_count();
        let mut parents = vec![None; self.node_count()];
        let mut labels = vec![None; self.node_count()];
        for (c, p, l) in self.original.edges() {
            let b = n + c - 1;
            parents[b] = Some(p);
            labels[b] = Some(l);
            parents[c] = Some(b);
            labels[c] = Some(l);
        }
        BasedTree::from_parts(parents, labels).expect("subdivision is a tree")
    }
}

pub fn subdivision(t: &BasedTree) -> BaryDiagram {
    let n = t.node_count();
    let arrows = t.edges().flat_map(|(c, p, _)| [(n + c - 1, p), (n + c - 1, c)]).collect();
    BaryDiagram {
        original: t.clone(),
        arrows,
    }
}

/// Glue the base of `t2` onto node `at` of `t1`. Non-base nodes of `t2`
/// are appended after those of `t1` in order.
pub fn join(t1: &BasedTree, at: usize, t2: &BasedTree) -> Result<BasedTree> {
    t1.check_node(at)?;
    let off = t1.node_count() - 1;
    let mut parents = t1.parents().to_vec();
    let mut labels = t1.labels().to_vec();
    for (c, p, l) in t2.edges() {
        debug_assert_eq!(c, parents.len() - off);
        parents.push(Some(if p == 0 { at } else { p + off }));
        labels.push(Some(l));
    }
    let mut out = BasedTree::from_parts(parents, labels)?;
    for v in 0..t1.node_count() {
        out.set_payload(v, t1.payload(v).map(String::from))?;
    }
    for v in 1..t2.node_count() {
        out.set_payload(v + off, t2.payload(v).map(String::from))?;
    }
    Ok(out)
}

/// The edges incident to one node, as a star-shaped tree based at it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: usize,
    /// Leaf `i` of `tree` is the far end of edge `edges[i - 1]`.
    pub tree: BasedTree,
    pub edges: Vec<usize>,
}

/// One star per node, in node order.
pub fn star_decomposition(t: &BasedTree) -> Vec<Star> {
    (0..t.node_count())
        .map(|v| {
            let mut edges: Vec<usize> = t.parent(v).map(|_| v).into_iter().collect();
            edges.extend(t.children(v));
            let tree = BasedTree::from_edges(&edges.iter().map(|&e| (0, t.label(e).unwrap_or(0))).collect::<Vec<_>>())
                .expect("star is a tree");
            Star { center: v, tree, edges }
        })
        .collect()
}
