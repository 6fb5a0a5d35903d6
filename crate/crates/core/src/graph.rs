//! Finite simplicial graphs with a fixed vertex order.
//!
//! Graphs here carry the *opposite* commutation convention: two generators
//! of `G(Γ)` commute exactly when their vertices are **not** adjacent.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simplicial graph. Vertex indices follow the order in which the
/// vertices were listed; adjacency lists are kept sorted.
#[derive(Debug, Clone)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

/// On-disk graph format: `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(vertices: &[S], edges: &[(T, T)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{n}`")));
            }
        }
        let mut g = Graph {
            adj: vec![Vec::new(); names.len()],
            names,
            index,
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (g.vertex(a.as_ref())?, g.vertex(b.as_ref())?);
            pairs.push((a, b));
        }
        g.add_edges(pairs)?;
        Ok(g)
    }

    /// Builds a graph on vertices `0..names.len()` from index pairs.
    pub fn from_indices(names: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{n}`")));
            }
        }
        let mut g = Graph {
            adj: vec![Vec::new(); names.len()],
            names,
            index,
        };
        g.add_edges(edges)?;
        Ok(g)
    }

    fn add_edges(&mut self, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<()> {
        let n = self.names.len();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange(a.max(b)));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at `{}`", self.names[a])));
            }
            if self.adj[a].contains(&b) {
                return Err(Error::InvalidGraph(format!(
                    "repeated edge {{{}, {}}}",
                    self.names[a], self.names[b]
                )));
            }
            self.adj[a].push(b);
            self.adj[b].push(a);
        }
        for l in &mut self.adj {
            l.sort_unstable();
        }
        Ok(())
    }

    pub fn empty() -> Self {
        Graph {
            names: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let edges: Vec<(&str, &str)> = spec.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        Graph::new(&spec.vertices, &edges)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .map(|(a, b)| [self.names[a].clone(), self.names[b].clone()])
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GraphSpec = serde_json::from_str(text)?;
        Graph::from_spec(&spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("graph spec serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub(crate) fn check(&self, v: usize) -> Result<()> {
        if v < self.names.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// `lk(v)`: the neighbours of `v`, sorted.
    pub fn link(&self, v: usize) -> Result<&[usize]> {
        self.check(v)?;
        Ok(&self.adj[v])
    }

    /// Unchecked neighbour list for hot loops.
    #[inline]
    pub(crate) fn nbrs(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// `st(v) = lk(v) ∪ {v}`, sorted.
    pub fn star(&self, v: usize) -> Result<Vec<usize>> {
        let mut s = self.link(v)?.to_vec();
        let pos = s.binary_search(&v).unwrap_err();
        s.insert(pos, v);
        Ok(s)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Whether the generators `u` and `v` commute in `G(Γ)`, i.e. `{u,v}` is
    /// not an edge.
    pub fn commutes(&self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SameVertex);
        }
        Ok(!self.adjacent(u, v))
    }

    /// Complement graph on the same vertex list.
    pub fn opposite(&self) -> Graph {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for (u, row) in adj.iter_mut().enumerate() {
            for v in 0..n {
                if v != u && !self.adjacent(u, v) {
                    row.push(v);
                }
            }
        }
        Graph {
            names: self.names.clone(),
            index: self.index.clone(),
            adj,
        }
    }

    /// Induced subgraph on `keep` (taken in increasing index order). Returns
    /// the subgraph and the map from its indices back to ours.
    pub fn induced(&self, keep: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        for &v in &set {
            self.check(v)?;
        }
        let back: Vec<usize> = set.into_iter().collect();
        let mut fwd = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let names = back.iter().map(|&v| self.names[v].clone()).collect();
        let edges = self
            .edges()
            .filter(|&(a, b)| fwd[a] != usize::MAX && fwd[b] != usize::MAX)
            .map(|(a, b)| (fwd[a], fwd[b]));
        Ok((Graph::from_indices(names, edges)?, back))
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        q.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1 && self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !self.adjacent(a, b)))
    }

    /// Breadth-first spanning tree from `root`: visit order and parent array.
    /// Neighbours are visited in increasing index order.
    pub fn bfs_tree(&self, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let n = self.vertex_count();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = vec![root];
        seen[root] = true;
        let mut q = VecDeque::from([root]);
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    order.push(y);
                    q.push_back(y);
                }
            }
        }
        (order, parent)
    }
}

/// A few named graphs used throughout tests, docs and the CLI.
pub mod named {
    use super::Graph;

    fn letters(n: usize) -> Vec<String> {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_indices(letters(n), (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_indices(letters(n), (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::from_indices(letters(n), edges).unwrap()
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::from_indices(letters(n), []).unwrap()
    }

    /// The 5-cycle `a-b-c-d-e-a` with the chord `{a, c}`.
    pub fn c5_plus_chord() -> Graph {
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.push((0, 2));
        Graph::from_indices(letters(5), e).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn ids(g: &Graph, names: &[&str]) -> Vec<usize> {
        names.iter().map(|n| g.vertex(n).unwrap()).collect()
    }

    #[test]
    fn link_examples() {
        let p = path(3);
        assert_eq!(p.link(1).unwrap(), &ids(&p, &["a", "c"])[..]);
        assert!(edgeless(2).link(0).unwrap().is_empty());
        let k = complete(3);
        assert_eq!(k.link(0).unwrap(), &[1, 2]);
        assert_eq!(p.star(1).unwrap(), vec![0, 1, 2]);
        assert_eq!(p.link(7), Err(Error::VertexOutOfRange(7)));
        assert_eq!(p.vertex("z"), Err(Error::UnknownVertex("z".into())));
    }

    #[test]
    fn commutes_examples() {
        assert!(!path(2).commutes(0, 1).unwrap());
        assert!(edgeless(2).commutes(0, 1).unwrap());
        let c5 = cycle(5);
        assert!(c5.commutes(0, 2).unwrap());
        assert!(c5.commutes(1, 4).unwrap());
        assert_eq!(c5.commutes(3, 3), Err(Error::SameVertex));
    }

    #[test]
    fn opposite_examples() {
        assert_eq!(path(2).opposite(), edgeless(2));
        let opp = path(3).opposite();
        assert_eq!(opp.edges().collect::<Vec<_>>(), vec![(0, 2)]);
        for g in [cycle(5), c5_plus_chord(), complete(4), path(4), Graph::empty()] {
            assert_eq!(g.opposite().opposite(), g);
        }
    }

    #[test]
    fn rejects_non_simplicial_input() {
        assert!(Graph::new(&["a"], &[("a", "a")]).is_err());
        assert!(Graph::new(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(Graph::new(&["a", "a"], &[] as &[(&str, &str)]).is_err());
        assert!(Graph::new(&["a"], &[("a", "q")]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::from_json(r#"{"vertices":["x","y","z"],"edges":[["z","x"]]}"#).unwrap();
        assert!(g.adjacent(0, 2));
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(g.to_spec().edges, vec![["x".to_string(), "z".to_string()]]);
    }

    #[test]
    fn structure_queries() {
        assert!(path(4).is_tree());
        assert!(!cycle(4).is_tree());
        assert!(!edgeless(2).is_tree());
        assert_eq!(edgeless(3).components().len(), 3);
        assert!(Graph::empty().is_connected());
        let (sub, back) = cycle(5).induced(&[4, 0, 1]).unwrap();
        assert_eq!(back, vec![0, 1, 4]);
        assert_eq!(sub.names(), &["a", "b", "e"]);
        assert_eq!(sub.edge_count(), 2);
        let (order, parent) = cycle(5).bfs_tree(0);
        assert_eq!(order, vec![0, 1, 4, 2, 3]);
        assert_eq!(parent[3], Some(4));
    }
}
