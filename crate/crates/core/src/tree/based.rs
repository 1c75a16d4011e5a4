use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rooted tree whose base is node 0 and whose edges carry genus labels.
///
/// Edge `i` (for `i ≥ 1`) joins node `i` to its parent and is identified
/// with its child endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct BasedTree {
    parents: Vec<Option<usize>>,
    labels: Vec<Option<u32>>,
    payloads: Vec<Option<String>>,
}

/// Wire form: `{"parents":[null,0,1,1],"labels":[null,1,2,0]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct TreeJson {
    parents: Vec<Option<usize>>,
    labels: Vec<Option<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    payloads: Option<Vec<Option<String>>>,
}

impl TryFrom<TreeJson> for BasedTree {
    type Error = Error;

    fn try_from(j: TreeJson) -> Result<Self> {
        let mut t = BasedTree::from_parts(j.parents, j.labels)?;
        if let Some(p) = j.payloads {
            if p.len() != t.node_count() {
                return Err(Error::Invalid("payloads length differs from node count".into()));
            }
            t.payloads = p;
        }
        Ok(t)
    }
}

impl From<BasedTree> for TreeJson {
    fn from(t: BasedTree) -> Self {
        let payloads = t.payloads.iter().any(Option::is_some).then_some(t.payloads);
        TreeJson {
            parents: t.parents,
            labels: t.labels,
            payloads,
        }
    }
}

impl BasedTree {
    /// The one-node tree.
    pub fn single() -> Self {
        BasedTree {
            parents: vec![None],
            labels: vec![None],
            payloads: vec![None],
        }
    }

    pub fn from_parts(parents: Vec<Option<usize>>, labels: Vec<Option<u32>>) -> Result<Self> {
        let n = parents.len();
        if n == 0 {
            return Err(Error::Invalid("a tree needs at least the base node".into()));
        }
        if labels.len() != n {
            return Err(Error::Invalid(format!("{} labels for {n} nodes", labels.len())));
        }
        if parents[0].is_some() || labels[0].is_some() {
            return Err(Error::Invalid("the base node 0 has no parent and no label".into()));
        }
        for i in 1..n {
            match (parents[i], labels[i]) {
                (Some(p), Some(_)) if p < n && p != i => {}
                (Some(p), Some(_)) => return Err(Error::Invalid(format!("node {i} has invalid parent {p}"))),
                _ => return Err(Error::Invalid(format!("node {i} needs a parent and a label"))),
            }
        }
        // Every node reaches the base within n steps.
        for i in 1..n {
            let mut cur = i;
            let mut steps = 0;
            while let Some(p) = parents[cur] {
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(Error::Invalid(format!("parent pointers from node {i} form a cycle")));
                }
            }
        }
        Ok(BasedTree {
            parents,
            labels,
            payloads: vec![None; n],
        })
    }

    /// Convenience constructor from `(parent, label)` pairs for nodes `1..`.
    pub fn from_edges(edges: &[(usize, u32)]) -> Result<Self> {
        let mut parents = vec![None];
        let mut labels = vec![None];
        for &(p, l) in edges {
            parents.push(Some(p));
            labels.push(Some(l));
        }
        BasedTree::from_parts(parents, labels)
    }

    /// Append a child of `parent` with edge label `label`, returning its id.
    pub fn add_child(&mut self, parent: usize, label: u32) -> Result<usize> {
        self.check_node(parent)?;
        self.parents.push(Some(parent));
        self.labels.push(Some(label));
        self.payloads.push(None);
        Ok(self.parents.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.parents.len()
    }

    pub fn edge_count(&self) -> usize {
        self.node_count() - 1
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parents.get(node).copied().flatten()
    }

    /// Label of the edge from `node` to its parent.
    pub fn label(&self, node: usize) -> Option<u32> {
        self.labels.get(node).copied().flatten()
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parents
    }

    pub fn labels(&self) -> &[Option<u32>] {
        &self.labels
    }

    pub fn payload(&self, node: usize) -> Option<&str> {
        self.payloads.get(node).and_then(|p| p.as_deref())
    }

    pub fn set_payload(&mut self, node: usize, payload: Option<String>) -> Result<()> {
        self.check_node(node)?;
        self.payloads[node] = payload;
        Ok(())
    }

    pub fn children(&self, node: usize) -> Vec<usize> {
        (1..self.node_count()).filter(|&i| self.parents[i] == Some(node)).collect()
    }

    /// Neighbors of `node`, parent first.
    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        self.parent(node).into_iter().chain(self.children(node)).collect()
    }

    /// Edges as `(child, parent, label)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (1..self.node_count()).map(|i| (i, self.parents[i].unwrap_or(0), self.labels[i].unwrap_or(0)))
    }

    pub(crate) fn check_node(&self, node: usize) -> Result<()> {
        if node < self.node_count() {
            Ok(())
        } else {
            Err(Error::Invalid(format!("node {node} not in a tree of {} nodes", self.node_count())))
        }
    }

    /// Number of edges between `node` and the base.
    pub fn depth(&self, node: usize) -> Result<usize> {
        self.check_node(node)?;
        let mut d = 0;
        let mut cur = node;
        while let Some(p) = self.parents[cur] {
            cur = p;
            d += 1;
        }
        Ok(d)
    }

    /// Nodes ordered so that every parent precedes its children.
    pub fn bfs_order(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut kids = vec![Vec::new(); n];
        for i in 1..n {
            if let Some(p) = self.parents[i] {
                kids[p].push(i);
            }
        }
        let mut order = vec![0];
        let mut k = 0;
        while k < order.len() {
            let v = order[k];
            order.extend_from_slice(&kids[v]);
            k += 1;
        }
        order
    }

    /// The same unbased tree with `node` as the new base. Node ids are
    /// renumbered in breadth-first order from the new base; the returned
    /// vector maps new ids to old ids.
    pub fn rerooted(&self, node: usize) -> Result<(BasedTree, Vec<usize>)> {
        self.check_node(node)?;
        let n = self.node_count();
        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        for (c, p, l) in self.edges() {
            adj[c].push((p, l));
            adj[p].push((c, l));
        }
        let mut old_of = vec![node];
        let mut new_of = vec![usize::MAX; n];
        new_of[node] = 0;
        let mut parents = vec![None];
        let mut labels = vec![None];
        let mut payloads = vec![self.payloads[node].clone()];
        let mut k = 0;
        while k < old_of.len() {
            let v = old_of[k];
            for &(w, l) in &adj[v] {
                if new_of[w] == usize::MAX {
                    new_of[w] = old_of.len();
                    old_of.push(w);
                    parents.push(Some(new_of[v]));
                    labels.push(Some(l));
                    payloads.push(self.payloads[w].clone());
                }
            }
            k += 1;
        }
        Ok((
            BasedTree {
                parents,
                labels,
                payloads,
            },
            old_of,
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

impl fmt::Display for BasedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depths() {
        let t = BasedTree::from_edges(&[(0, 1), (1, 1), (2, 1)]).unwrap();
        assert_eq!(t.depth(0).unwrap(), 0);
        assert_eq!(t.depth(1).unwrap(), 1);
        assert_eq!(t.depth(3).unwrap(), 3);
        assert!(t.depth(4).is_err());
    }

    #[test]
    fn validation() {
        assert!(BasedTree::from_parts(vec![], vec![]).is_err());
        assert!(BasedTree::from_parts(vec![None, Some(2), Some(1)], vec![None, Some(1), Some(1)]).is_err());
        assert!(BasedTree::from_parts(vec![None, Some(0)], vec![None, None]).is_err());
        assert!(BasedTree::from_parts(vec![None, Some(5)], vec![None, Some(0)]).is_err());
        // children may precede parents in id order
        let t = BasedTree::from_parts(vec![None, Some(2), Some(0)], vec![None, Some(1), Some(2)]).unwrap();
        assert_eq!(t.depth(1).unwrap(), 2);
        assert_eq!(t.bfs_order(), vec![0, 2, 1]);
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"parents":[null,0,1,1],"labels":[null,1,2,0]}"#;
        let t = BasedTree::from_json(s).unwrap();
        assert_eq!(t.to_json(), s);
        assert_eq!(t.children(1), vec![2, 3]);
        assert_eq!(t.label(2), Some(2));
        assert!(BasedTree::from_json(r#"{"parents":[0],"labels":[null]}"#).is_err());
        let mut u = t.clone();
        u.set_payload(2, Some("F2".into())).unwrap();
        let back = BasedTree::from_json(&u.to_json()).unwrap();
        assert_eq!(back.payload(2), Some("F2"));
    }

    #[test]
    fn reroot_keeps_edges() {
        let t = BasedTree::from_edges(&[(0, 1), (1, 2), (1, 3)]).unwrap();
        let (r, old) = t.rerooted(3).unwrap();
        assert_eq!(old[0], 3);
        assert_eq!(r.node_count(), 4);
        assert_eq!(r.label(1), Some(3));
        let mut ls: Vec<u32> = r.edges().map(|e| e.2).collect();
        ls.sort();
        assert_eq!(ls, vec![1, 2, 3]);
    }
}
