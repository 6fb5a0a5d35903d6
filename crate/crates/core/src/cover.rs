//! Finite pieces of the universal cover `p: ỹΓ → Γ` of a connected graph.
//!
//! A cover vertex is a reduced (non-backtracking) walk from the basepoint and
//! projects to its last vertex. The cover is never built; neighbourhoods are
//! expanded on demand. A deck transformation is stored as the reduced closed
//! walk it sends the basepoint to, and acts by prepending that walk and
//! cancelling backtracks.
//!
//! Cover vertices are totally ordered shortlex: shorter walks first, then
//! lexicographically by `Γ`'s vertex order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A vertex of `ỹΓ`: a reduced walk starting at the basepoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverVertex {
    walk: Vec<usize>,
}

impl CoverVertex {
    pub fn walk(&self) -> &[usize] {
        &self.walk
    }

    /// `p(x)`.
    pub fn projection(&self) -> usize {
        *self.walk.last().expect("walks are non-empty")
    }

    /// Distance from the basepoint.
    pub fn depth(&self) -> usize {
        self.walk.len() - 1
    }

    /// Path distance in the cover tree.
    pub fn distance(&self, other: &CoverVertex) -> usize {
        let lcp = self.walk.iter().zip(&other.walk).take_while(|(a, b)| a == b).count();
        self.walk.len() + other.walk.len() - 2 * lcp
    }

    pub fn parent(&self) -> Option<CoverVertex> {
        (self.walk.len() > 1).then(|| CoverVertex {
            walk: self.walk[..self.walk.len() - 1].to_vec(),
        })
    }

    pub fn names(&self, g: &Graph) -> Vec<String> {
        self.walk.iter().map(|&v| g.name(v).to_string()).collect()
    }
}

impl Ord for CoverVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.walk
            .len()
            .cmp(&other.walk.len())
            .then_with(|| self.walk.cmp(&other.walk))
    }
}

impl PartialOrd for CoverVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A deck transformation, stored as the image of the basepoint: a reduced
/// closed walk at the basepoint. The trivial walk is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Deck {
    image: CoverVertex,
}

impl Deck {
    pub fn loop_walk(&self) -> &[usize] {
        self.image.walk()
    }

    pub fn is_identity(&self) -> bool {
        self.image.walk.len() == 1
    }

    pub fn inverse(&self) -> Deck {
        let mut w = self.image.walk.clone();
        w.reverse();
        Deck {
            image: CoverVertex { walk: w },
        }
    }
}

/// Appends `tail` to `walk`, cancelling each backtrack `x y x → x`.
fn push_cancel(walk: &mut Vec<usize>, tail: impl IntoIterator<Item = usize>) {
    for z in tail {
        let n = walk.len();
        if n >= 2 && walk[n - 2] == z {
            walk.pop();
        } else {
            walk.push(z);
        }
    }
}

/// The universal cover of a connected graph, or of a connected induced
/// subgraph of it (walks then use only the active vertices but keep the
/// parent graph's indices).
#[derive(Debug, Clone)]
pub struct Cover {
    graph: Arc<Graph>,
    base: usize,
    active: Vec<bool>,
    links: Vec<Vec<usize>>,
}

impl Cover {
    /// The cover of `graph` based at `base` (`cover_basepoint`).
    pub fn new(graph: Arc<Graph>, base: usize) -> Result<Cover> {
        let all: Vec<usize> = (0..graph.vertex_count()).collect();
        Cover::on_subgraph(graph, base, &all)
    }

    /// The cover of the subgraph induced on `active`, based at `base`.
    pub fn on_subgraph(graph: Arc<Graph>, base: usize, active: &[usize]) -> Result<Cover> {
        graph.check(base)?;
        let mut mask = vec![false; graph.vertex_count()];
        for &a in active {
            graph.check(a)?;
            mask[a] = true;
        }
        if !mask[base] {
            return Err(Error::InvalidWalk(format!("basepoint `{}` is not active", graph.name(base))));
        }
        let links: Vec<Vec<usize>> = (0..graph.vertex_count())
            .map(|v| {
                if mask[v] {
                    graph.nbrs(v).iter().copied().filter(|&u| mask[u]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        // connectivity of the active subgraph
        let mut seen = vec![false; graph.vertex_count()];
        let mut stack = vec![base];
        seen[base] = true;
        while let Some(x) = stack.pop() {
            for &y in &links[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if (0..mask.len()).any(|v| mask[v] && !seen[v]) {
            return Err(Error::Disconnected);
        }
        Ok(Cover {
            graph,
            base,
            active: mask,
            links,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active.get(v).copied().unwrap_or(false)
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    pub fn basepoint(&self) -> CoverVertex {
        CoverVertex { walk: vec![self.base] }
    }

    /// Validates a walk and wraps it as a cover vertex.
    pub fn vertex(&self, walk: Vec<usize>) -> Result<CoverVertex> {
        let bad = |why: &str| Error::InvalidWalk(format!("{walk:?}: {why}"));
        if walk.first() != Some(&self.base) {
            return Err(bad("does not start at the basepoint"));
        }
        for (i, &v) in walk.iter().enumerate() {
            if !self.is_active(v) {
                return Err(bad("leaves the covered subgraph"));
            }
            if i >= 1 && self.links[walk[i - 1]].binary_search(&v).is_err() {
                return Err(bad("consecutive vertices are not adjacent"));
            }
            if i >= 2 && walk[i - 2] == v {
                return Err(bad("backtracks"));
            }
        }
        Ok(CoverVertex { walk })
    }

    pub fn vertex_by_names(&self, names: &[&str]) -> Result<CoverVertex> {
        let walk = names.iter().map(|n| self.graph.vertex(n)).collect::<Result<Vec<_>>>()?;
        self.vertex(walk)
    }

    fn check_vertex(&self, x: &CoverVertex) -> Result<()> {
        if x.walk.first() != Some(&self.base) || !x.walk.iter().all(|&v| self.is_active(v)) {
            return Err(Error::AmbientMismatch("cover vertex from a different cover".into()));
        }
        Ok(())
    }

    /// The neighbour of `x` lying over `u` (which must be adjacent to `p(x)`).
    pub(crate) fn step(&self, x: &CoverVertex, u: usize) -> CoverVertex {
        let mut walk = x.walk.clone();
        push_cancel(&mut walk, [u]);
        CoverVertex { walk }
    }

    /// `lk(x)` in `ỹΓ`, one neighbour per `Γ`-neighbour of `p(x)`, in
    /// `Γ`'s order.
    pub fn neighbors(&self, x: &CoverVertex) -> Vec<CoverVertex> {
        self.links[x.projection()].iter().map(|&u| self.step(x, u)).collect()
    }

    /// `st(x) = lk(x) ∪ {x}`.
    pub fn star(&self, x: &CoverVertex) -> Vec<CoverVertex> {
        let mut s = self.neighbors(x);
        s.push(x.clone());
        s
    }

    /// The unique deck transformation `σ` with `σ(b) = a`.
    pub fn deck_from_pair(&self, a: &CoverVertex, b: &CoverVertex) -> Result<Deck> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a.projection() != b.projection() {
            return Err(Error::FiberMismatch(
                self.graph.name(a.projection()).into(),
                self.graph.name(b.projection()).into(),
            ));
        }
        let mut walk = a.walk.clone();
        push_cancel(&mut walk, b.walk.iter().rev().skip(1).copied());
        Ok(Deck {
            image: CoverVertex { walk },
        })
    }

    pub fn identity_deck(&self) -> Deck {
        Deck { image: self.basepoint() }
    }

    pub fn deck(&self, loop_walk: Vec<usize>) -> Result<Deck> {
        let image = self.vertex(loop_walk)?;
        if image.projection() != self.base {
            return Err(Error::InvalidWalk("deck loop must return to the basepoint".into()));
        }
        Ok(Deck { image })
    }

    pub fn apply_deck(&self, sigma: &Deck, x: &CoverVertex) -> Result<CoverVertex> {
        self.check_vertex(&sigma.image)?;
        self.check_vertex(x)?;
        Ok(self.apply_unchecked(sigma, x))
    }

    pub(crate) fn apply_unchecked(&self, sigma: &Deck, x: &CoverVertex) -> CoverVertex {
        let mut walk = sigma.image.walk.clone();
        push_cancel(&mut walk, x.walk[1..].iter().copied());
        CoverVertex { walk }
    }

    /// Smallest subtree containing every seed: the union of the geodesics
    /// from the first seed to the others.
    pub fn steiner_subtree<'a>(&self, seeds: impl IntoIterator<Item = &'a CoverVertex>) -> Result<Subtree> {
        let mut it = seeds.into_iter();
        let first = it.next().ok_or_else(|| Error::InvalidWalk("no seeds".into()))?;
        self.check_vertex(first)?;
        let mut set: HashSet<CoverVertex> = HashSet::new();
        set.insert(first.clone());
        for s in it {
            self.check_vertex(s)?;
            let lcp = first.walk.iter().zip(&s.walk).take_while(|(a, b)| a == b).count();
            for k in lcp..=first.walk.len() {
                set.insert(CoverVertex {
                    walk: first.walk[..k].to_vec(),
                });
            }
            for k in lcp..=s.walk.len() {
                set.insert(CoverVertex {
                    walk: s.walk[..k].to_vec(),
                });
            }
        }
        // an lcp of 0 cannot happen (shared basepoint), so no empty walks
        Ok(Subtree {
            vertices: set.into_iter().collect(),
        })
    }

    /// `p^{-1}(v) ∩ T` in cover order.
    pub fn fiber_in(&self, t: &Subtree, v: usize) -> Result<Vec<CoverVertex>> {
        self.graph.check(v)?;
        Ok(t.vertices.iter().filter(|x| x.projection() == v).cloned().collect())
    }
}

/// A finite vertex set of `ỹΓ` whose induced subgraph is a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    vertices: BTreeSet<CoverVertex>,
}

/// Whether the induced subgraph on `set` is connected (and non-empty).
///
/// Rooting `ỹΓ` at the basepoint, induced edges are exactly the
/// parent-child pairs inside the set, and the set is connected iff exactly
/// one member has its parent outside.
pub fn is_induced_subtree(set: &BTreeSet<CoverVertex>) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut tops = 0;
    let mut edges = 0;
    for x in set {
        match x.parent() {
            Some(p) if set.contains(&p) => edges += 1,
            _ => tops += 1,
        }
    }
    debug_assert!(edges < set.len(), "induced subgraph of a tree has a cycle");
    tops == 1 && edges + 1 == set.len()
}

impl Subtree {
    pub fn new(vertices: impl IntoIterator<Item = CoverVertex>) -> Result<Subtree> {
        let vertices: BTreeSet<CoverVertex> = vertices.into_iter().collect();
        if !is_induced_subtree(&vertices) {
            return Err(Error::InvalidWalk("vertex set does not span a subtree".into()));
        }
        Ok(Subtree { vertices })
    }

    pub fn singleton(x: CoverVertex) -> Subtree {
        Subtree {
            vertices: BTreeSet::from([x]),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, x: &CoverVertex) -> bool {
        self.vertices.contains(x)
    }

    /// Vertices in cover order.
    pub fn iter(&self) -> impl Iterator<Item = &CoverVertex> {
        self.vertices.iter()
    }

    pub fn vertex_set(&self) -> &BTreeSet<CoverVertex> {
        &self.vertices
    }

    pub fn is_subset(&self, other: &Subtree) -> bool {
        self.vertices.is_subset(&other.vertices)
    }

    /// Distance in `ỹΓ` from `x` to the nearest vertex of the tree.
    pub fn distance_to(&self, x: &CoverVertex) -> usize {
        self.vertices.iter().map(|y| y.distance(x)).min().unwrap_or(usize::MAX)
    }


    /// Serialisable form: one list of vertex names per walk.
    pub fn to_walks(&self, g: &Graph) -> SubtreeWalks {
        SubtreeWalks(self.vertices.iter().map(|x| x.names(g)).collect())
    }

    pub fn from_walks(cover: &Cover, walks: &SubtreeWalks) -> Result<Subtree> {
        let mut set = BTreeSet::new();
        for w in &walks.0 {
            let names: Vec<&str> = w.iter().map(String::as_str).collect();
            set.insert(cover.vertex_by_names(&names)?);
        }
        Subtree::new(set)
    }
}

/// JSON form of a [`Subtree`]: a list of walks, each a list of vertex names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubtreeWalks(pub Vec<Vec<String>>);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn cover(g: Graph) -> Cover {
        Cover::new(Arc::new(g), 0).unwrap()
    }

    fn v(c: &Cover, names: &[&str]) -> CoverVertex {
        c.vertex_by_names(names).unwrap()
    }

    #[test]
    fn basepoint() {
        let c = cover(cycle(5));
        assert_eq!(c.basepoint().walk(), &[0]);
        assert_eq!(c.basepoint().projection(), 0);
        assert_eq!(c.basepoint(), c.basepoint());
        assert_eq!(Cover::new(Arc::new(edgeless(2)), 0).unwrap_err(), Error::Disconnected);
        assert!(Cover::new(Arc::new(path(2)), 3).is_err());
    }

    #[test]
    fn neighbors_examples() {
        let c = cover(path(2));
        assert_eq!(c.neighbors(&c.basepoint()), vec![v(&c, &["a", "b"])]);
        let t = cover(complete(3));
        let ab = v(&t, &["a", "b"]);
        let n: BTreeSet<_> = t.neighbors(&ab).into_iter().collect();
        assert_eq!(n, BTreeSet::from([v(&t, &["a"]), v(&t, &["a", "b", "c"])]));
    }

    #[test]
    fn neighbors_cover_the_link() {
        let c = cover(c5_plus_chord());
        let mut frontier = vec![c.basepoint()];
        for _ in 0..3 {
            let mut next = Vec::new();
            for x in &frontier {
                let ns = c.neighbors(x);
                assert_eq!(ns.len(), c.graph().degree(x.projection()));
                let proj: Vec<usize> = ns.iter().map(|y| y.projection()).collect();
                assert_eq!(proj, c.graph().link(x.projection()).unwrap());
                next.extend(ns);
            }
            frontier = next;
        }
    }

    #[test]
    fn deck_examples() {
        let c = cover(complete(3));
        let a = c.basepoint();
        let b = v(&c, &["a", "b", "c", "a"]);
        assert!(c.deck_from_pair(&a, &a).unwrap().is_identity());
        let sigma = c.deck_from_pair(&a, &b).unwrap();
        assert_eq!(sigma.loop_walk(), &[0, 2, 1, 0]);
        assert_eq!(c.apply_deck(&sigma, &b).unwrap(), a);
        // (a,c,b,a)·(a,b) cancels the backtrack b,a,b; the image must stay over b
        assert_eq!(c.apply_deck(&sigma, &v(&c, &["a", "b"])).unwrap(), v(&c, &["a", "c", "b"]));
        assert_eq!(c.deck_from_pair(&b, &a).unwrap(), sigma.inverse());
        let tau = c.deck(vec![0, 1, 2, 0]).unwrap();
        assert_eq!(c.apply_deck(&tau, &a).unwrap(), v(&c, &["a", "b", "c", "a"]));
        let x = v(&c, &["a", "c", "b"]);
        assert_eq!(c.apply_deck(&tau, &c.apply_deck(&tau.inverse(), &x).unwrap()).unwrap(), x);
        assert!(matches!(
            c.deck_from_pair(&a, &v(&c, &["a", "b"])),
            Err(Error::FiberMismatch(_, _))
        ));
        assert!(c.apply_deck(&c.identity_deck(), &CoverVertex { walk: vec![1] }).is_err());
    }

    #[test]
    fn fibers() {
        let c = cover(path(2));
        let t = Subtree::singleton(c.basepoint());
        assert_eq!(c.fiber_in(&t, 0).unwrap(), vec![c.basepoint()]);
        assert!(c.fiber_in(&t, 1).unwrap().is_empty());
        let k = cover(complete(3));
        let seeds = [v(&k, &["a", "b", "c", "a", "b"]), v(&k, &["a", "c", "b"])];
        let s = k.steiner_subtree(&seeds).unwrap();
        for u in 0..3 {
            let f = k.fiber_in(&s, u).unwrap();
            assert!(f.windows(2).all(|p| p[0] < p[1]));
            for (i, x) in f.iter().enumerate() {
                for y in &f[i + 1..] {
                    assert!(x.distance(y) >= 2);
                }
            }
        }
    }

    #[test]
    fn steiner_examples() {
        let c = cover(complete(3));
        let a = c.basepoint();
        assert_eq!(c.steiner_subtree([&a]).unwrap().len(), 1);
        let ab = v(&c, &["a", "b"]);
        assert_eq!(c.steiner_subtree([&a, &ab]).unwrap().len(), 2);
        // frozen by a breadth-first search of the line cover of the triangle
        let abc = v(&c, &["a", "b", "c"]);
        let s = c.steiner_subtree([&a, &abc]).unwrap();
        let expect: BTreeSet<_> = [a.clone(), ab.clone(), abc.clone()].into_iter().collect();
        assert_eq!(s.vertex_set(), &expect);
        let other = v(&c, &["a", "c", "b"]);
        let s = c.steiner_subtree([&abc, &other]).unwrap();
        assert_eq!(s.len(), 5);
        assert!(is_induced_subtree(s.vertex_set()));
    }

    #[test]
    fn induced_subtree_checks() {
        let c = cover(path(3));
        let a = c.basepoint();
        let ab = v(&c, &["a", "b"]);
        let abc = v(&c, &["a", "b", "c"]);
        assert!(is_induced_subtree(&BTreeSet::from([a.clone(), ab.clone(), abc.clone()])));
        assert!(!is_induced_subtree(&BTreeSet::from([a.clone(), abc.clone()])));
        assert!(!is_induced_subtree(&BTreeSet::new()));
        assert!(is_induced_subtree(&BTreeSet::from([ab, abc])));
    }

    #[test]
    fn walk_validation() {
        let c = cover(cycle(4));
        assert!(c.vertex(vec![0, 1, 0]).is_err());
        assert!(c.vertex(vec![0, 2]).is_err());
        assert!(c.vertex(vec![1]).is_err());
        let sub = Cover::on_subgraph(Arc::new(cycle(4)), 0, &[0, 1, 2]).unwrap();
        assert!(sub.vertex(vec![0, 3]).is_err());
        assert_eq!(sub.neighbors(&sub.basepoint()).len(), 1);
        assert_eq!(
            Cover::on_subgraph(Arc::new(cycle(5)), 0, &[0, 2]).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn subtree_json() {
        let c = cover(complete(3));
        let s = c
            .steiner_subtree([&c.basepoint(), &v(&c, &["a", "c", "b"])])
            .unwrap();
        let walks = s.to_walks(c.graph());
        assert_eq!(walks.0[0], vec!["a".to_string()]);
        let text = serde_json::to_string(&walks).unwrap();
        let back: SubtreeWalks = serde_json::from_str(&text).unwrap();
        assert_eq!(Subtree::from_walks(&c, &back).unwrap(), s);
    }
}
