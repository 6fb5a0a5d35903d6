//! The map `φ(Γ,T)` into the anti-tree group and the construction of a
//! finite tree `T` for which it is a quasi-isometric embedding.
//!
//! For a finite subtree `T` of the universal cover, `φ(Γ,T)` sends `v` to the
//! product of the vertices of `T` lying over `v`, taken in increasing cover
//! order. The builder grows `T` one vertex of `Γ` at a time along a
//! breadth-first spanning tree, each time making the newly lifted vertex
//! surviving by taking a union of deck translates, and joins components by
//! length-two paths.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::cover::{Cover, CoverVertex, Deck, Subtree};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSpec};
use crate::word::{find_cancellation, is_reduced, Letter, Occurrence, Reducer, Word};

/// How the surviving loop after each new vertex is organised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuildStrategy {
    /// Re-run the key step from the tree obtained after the new vertex, once
    /// per earlier spanning-tree vertex, and take the union of the results.
    /// Uses [`SigmaRule::LinkAnchored`].
    #[default]
    Union,
    /// Apply the key step for every spanning-tree vertex in turn, feeding
    /// each result into the next, with the full `Σ`. Grows very fast.
    Literal,
}

/// Which deck transformations the key step translates `T₁` by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaRule {
    /// Every `σ` with `σ(T₁) ∩ T₁ ≠ ∅`.
    Full,
    /// The identity and every `σ` with `σ(x'') = x'` for `x' ∈ lk(v')` and
    /// `x'' ∈ T₁` over the same vertex.
    LinkAnchored,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildOptions {
    pub strategy: BuildStrategy,
}

impl BuildStrategy {
    fn sigma_rule(self) -> SigmaRule {
        match self {
            BuildStrategy::Union => SigmaRule::LinkAnchored,
            BuildStrategy::Literal => SigmaRule::Full,
        }
    }
}

/// `Σ = {σ : σ(T₁) ∩ T₁ ≠ ∅}`, sorted, via every same-fiber pair of `T₁`.
pub fn sigma_set(cover: &Cover, t1: &Subtree) -> Result<Vec<Deck>> {
    let mut fibers: BTreeMap<usize, Vec<&CoverVertex>> = BTreeMap::new();
    for x in t1.iter() {
        fibers.entry(x.projection()).or_default().push(x);
    }
    let mut out: HashSet<Deck> = HashSet::new();
    for xs in fibers.values() {
        for a in xs {
            for b in xs {
                out.insert(cover.deck_from_pair(a, b)?);
            }
        }
    }
    let mut out: Vec<Deck> = out.into_iter().collect();
    out.sort();
    Ok(out)
}

fn sigma_link_anchored(cover: &Cover, t1: &Subtree, vp: &CoverVertex) -> Result<Vec<Deck>> {
    let mut fibers: HashMap<usize, Vec<&CoverVertex>> = HashMap::new();
    for x in t1.iter() {
        fibers.entry(x.projection()).or_default().push(x);
    }
    let mut out: HashSet<Deck> = HashSet::from([cover.identity_deck()]);
    for xp in cover.neighbors(vp) {
        for xpp in fibers.get(&xp.projection()).into_iter().flatten() {
            out.insert(cover.deck_from_pair(&xp, xpp)?);
        }
    }
    let mut out: Vec<Deck> = out.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Result of one key step, with the sizes the audit needs.
#[derive(Debug, Clone)]
pub struct KeyStep {
    pub tree: Subtree,
    pub distance: usize,
    pub t1_size: usize,
    pub sigma_size: usize,
}

/// The key step with the full `Σ`: `T = ⋃_{σ∈Σ} σ(T₁)` where `T₁` is the
/// Steiner tree of `T₀ ∪ st(v')`.
pub fn key_step(cover: &Cover, t0: &Subtree, vp: &CoverVertex) -> Result<Subtree> {
    Ok(key_step_with(cover, t0, vp, SigmaRule::Full)?.tree)
}

pub fn key_step_with(cover: &Cover, t0: &Subtree, vp: &CoverVertex, rule: SigmaRule) -> Result<KeyStep> {
    cover.vertex(vp.walk().to_vec())?;
    let distance = t0.distance_to(vp);
    let star = cover.star(vp);
    let t1 = cover.steiner_subtree(t0.iter().chain(star.iter()))?;
    let sigma = match rule {
        SigmaRule::Full => sigma_set(cover, &t1)?,
        SigmaRule::LinkAnchored => sigma_link_anchored(cover, &t1, vp)?,
    };
    let mut union: HashSet<CoverVertex> = HashSet::with_capacity(t1.len() * 2);
    for s in &sigma {
        for x in t1.iter() {
            union.insert(cover.apply_unchecked(s, x));
        }
    }
    let set: BTreeSet<CoverVertex> = union.into_iter().collect();
    let tree = Subtree::new(set).map_err(|_| Error::Internal("union of translates is disconnected".into()))?;
    Ok(KeyStep {
        tree,
        distance,
        t1_size: t1.len(),
        sigma_size: sigma.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    /// Key step at the newly added vertex.
    First,
    /// Key step at an earlier spanning-tree vertex.
    Survive,
    /// Union of the survive steps of one level.
    Union,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub level: usize,
    pub kind: StepKind,
    pub vertex: String,
    /// Walk of `v'` (empty for union records).
    pub walk: Vec<String>,
    /// Vertices of the graph covered at this level.
    pub active: usize,
    pub distance: Option<usize>,
    pub sigma_size: Option<usize>,
    pub t0_size: usize,
    pub t1_size: Option<usize>,
    pub t_size: usize,
    /// Set when `d(v', T₀) > 1`.
    #[serde(default)]
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ComponentLog {
    pub vertices: Vec<String>,
    pub root: String,
    pub spanning_tree: Vec<[String; 2]>,
    /// Valence-one removal order: the reverse of the build order.
    pub leaf_order: Vec<String>,
    pub steps: Vec<StepRecord>,
    /// Tree size after each level, starting from the single basepoint.
    pub tree_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinRecord {
    pub left: usize,
    pub right: usize,
    pub middle: usize,
}

/// Construction trace.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BuildLog {
    #[serde(default)]
    pub strategy: BuildStrategy,
    #[serde(default)]
    pub components: Vec<ComponentLog>,
    #[serde(default)]
    pub joins: Vec<JoinRecord>,
    /// Cover walk of each tree vertex; `None` for join midpoints.
    #[serde(default)]
    pub walks: Vec<Option<Vec<String>>>,
}

impl BuildLog {
    pub fn steps(&self) -> impl Iterator<Item = &StepRecord> {
        self.components.iter().flat_map(|c| c.steps.iter())
    }

    pub fn flagged_steps(&self) -> usize {
        self.steps().filter(|s| s.flagged).count()
    }
}

/// `φ(Γ,T)` with `T` re-indexed as an abstract tree `t0, t1, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    source: Graph,
    tree: Graph,
    images: Vec<Vec<usize>>,
    f_set: Vec<usize>,
    log: BuildLog,
}

fn tree_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("t{i}")).collect()
}

impl Embedding {
    /// Assembles an embedding without checking the invariants; see
    /// [`Embedding::structural_problems`].
    pub fn from_parts(source: Graph, tree: Graph, images: Vec<Vec<usize>>, f_set: Vec<usize>, log: BuildLog) -> Result<Self> {
        if images.len() != source.vertex_count() {
            return Err(Error::InvalidEmbedding(format!(
                "{} images for {} generators",
                images.len(),
                source.vertex_count()
            )));
        }
        for &t in images.iter().flatten().chain(&f_set) {
            tree.check(t)?;
        }
        Ok(Embedding {
            source,
            tree,
            images,
            f_set,
            log,
        })
    }

    /// `φ(Γ,T)` for a subtree of `cover`, with `F` given as cover vertices.
    pub fn from_subtree(cover: &Cover, t: &Subtree, f: &[CoverVertex]) -> Result<Self> {
        let g = cover.graph();
        let verts: Vec<&CoverVertex> = t.iter().collect();
        let index: HashMap<&CoverVertex, usize> = verts.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut edges = Vec::new();
        let mut images = vec![Vec::new(); g.vertex_count()];
        for (i, x) in verts.iter().enumerate() {
            if let Some(p) = x.parent() {
                if let Some(&j) = index.get(&p) {
                    edges.push((j, i));
                }
            }
            images[x.projection()].push(i);
        }
        let mut f_set = Vec::with_capacity(f.len());
        for x in f {
            let &i = index
                .get(x)
                .ok_or_else(|| Error::InvalidEmbedding(format!("F-vertex {:?} is not in T", x.walk())))?;
            f_set.push(i);
        }
        f_set.sort_unstable();
        f_set.dedup();
        let tree = Graph::from_indices(tree_names(verts.len()), edges)?;
        let log = BuildLog {
            walks: verts.iter().map(|x| Some(x.names(g))).collect(),
            ..BuildLog::default()
        };
        Ok(Embedding {
            source: g.clone(),
            tree,
            images,
            f_set,
            log,
        })
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn tree_size(&self) -> usize {
        self.tree.vertex_count()
    }

    /// Tree vertices over `v`, increasing.
    pub fn image(&self, v: usize) -> &[usize] {
        &self.images[v]
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn f_set(&self) -> &[usize] {
        &self.f_set
    }

    pub fn log(&self) -> &BuildLog {
        &self.log
    }

    /// `φ(v)` as a positive word over `G(T)`; `ε` for an empty fiber.
    pub fn phi_image(&self, v: usize) -> Result<Word> {
        self.source.check(v)?;
        Ok(Word(self.images[v].iter().map(|&t| Letter::pos(t)).collect()))
    }

    /// Letter-by-letter image of `w`; inverse letters map to the reversed,
    /// inverted fiber word.
    pub fn homomorphic_word(&self, w: &Word) -> Result<Word> {
        w.check(&self.source)?;
        let mut out = Vec::new();
        for l in &w.0 {
            let img = &self.images[l.vertex];
            if l.inverse {
                out.extend(img.iter().rev().map(|&t| Letter::neg(t)));
            } else {
                out.extend(img.iter().map(|&t| Letter::pos(t)));
            }
        }
        Ok(Word(out))
    }

    /// Normal form of `φ(w)` in `G(T)`.
    pub fn phi(&self, w: &Word) -> Result<Word> {
        crate::word::reduce(&self.tree, &self.homomorphic_word(w)?)
    }

    /// `‖φ(w)‖`.
    pub fn phi_length(&self, w: &Word) -> Result<usize> {
        let h = self.homomorphic_word(w)?;
        let mut r = Reducer::new(&self.tree);
        r.extend(&h.0);
        Ok(r.len())
    }

    /// Invariant violations, empty when the embedding is well formed: the
    /// target is a tree, every image is strictly increasing, independent and
    /// disjoint from the others, `F` lies in the images, and for connected
    /// `Γ` every generator has an `F`-vertex over it.
    pub fn structural_problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.tree.is_tree() {
            out.push(format!(
                "target is not a tree ({} vertices, {} edges, {} components)",
                self.tree.vertex_count(),
                self.tree.edge_count(),
                self.tree.components().len()
            ));
        }
        let mut owner: Vec<Option<usize>> = vec![None; self.tree.vertex_count()];
        for (v, img) in self.images.iter().enumerate() {
            let name = self.source.name(v);
            if !img.windows(2).all(|p| p[0] < p[1]) {
                out.push(format!("image of `{name}` is not strictly increasing"));
            }
            if !self.tree.is_independent(img) {
                out.push(format!("image of `{name}` is not an independent set"));
            }
            for &t in img {
                match owner[t] {
                    Some(u) if u != v => out.push(format!(
                        "tree vertex `{}` lies in the images of `{}` and `{name}`",
                        self.tree.name(t),
                        self.source.name(u)
                    )),
                    _ => owner[t] = Some(v),
                }
            }
        }
        let mut covered = vec![false; self.source.vertex_count()];
        for &t in &self.f_set {
            match owner[t] {
                Some(v) => covered[v] = true,
                None => out.push(format!("F-vertex `{}` lies in no image", self.tree.name(t))),
            }
        }
        if self.source.vertex_count() > 0 && self.source.is_connected() {
            for (v, c) in covered.iter().enumerate() {
                if !c {
                    out.push(format!("no F-vertex lies over `{}`", self.source.name(v)));
                }
            }
        }
        out
    }

    pub fn to_certificate(&self) -> Certificate {
        let t = |i: usize| self.tree.name(i).to_string();
        Certificate {
            source_graph: self.source.to_spec(),
            tree: TreeSpec {
                vertices: self.tree.names().to_vec(),
                edges: self.tree.edges().map(|(a, b)| [t(a), t(b)]).collect(),
            },
            images: (0..self.source.vertex_count())
                .map(|v| (self.source.name(v).to_string(), self.images[v].iter().map(|&i| t(i)).collect()))
                .collect(),
            f_set: self.f_set.iter().map(|&i| t(i)).collect(),
            log: CertificateLog::new(&self.log),
        }
    }

    pub fn from_certificate(c: &Certificate) -> Result<Self> {
        let source = Graph::from_spec(&c.source_graph)?;
        let edges: Vec<(&str, &str)> = c.tree.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let tree = Graph::new(&c.tree.vertices, &edges)?;
        let mut images = vec![Vec::new(); source.vertex_count()];
        for (name, ts) in &c.images {
            let v = source.vertex(name)?;
            images[v] = ts.iter().map(|t| tree.vertex(t)).collect::<Result<_>>()?;
        }
        let f_set = c.f_set.iter().map(|t| tree.vertex(t)).collect::<Result<_>>()?;
        Embedding::from_parts(source, tree, images, f_set, c.log.to_build_log())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_certificate()).expect("certificate serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Certificate = serde_json::from_str(text)?;
        Embedding::from_certificate(&c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

/// The embedding certificate exchanged between the CLI subcommands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub source_graph: GraphSpec,
    pub tree: TreeSpec,
    pub images: BTreeMap<String, Vec<String>>,
    pub f_set: Vec<String>,
    #[serde(default)]
    pub log: CertificateLog,
}

/// The log as written to certificates: flat summaries plus the full trace.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CertificateLog {
    #[serde(default)]
    pub strategy: BuildStrategy,
    #[serde(default)]
    pub spanning_tree: Vec<[String; 2]>,
    #[serde(default)]
    pub leaf_order: Vec<String>,
    #[serde(default)]
    pub sigma_sizes: Vec<usize>,
    #[serde(default)]
    pub tree_sizes: Vec<usize>,
    #[serde(default)]
    pub flagged_steps: usize,
    #[serde(default)]
    pub components: Vec<ComponentLog>,
    #[serde(default)]
    pub joins: Vec<JoinRecord>,
    #[serde(default)]
    pub walks: Vec<Option<Vec<String>>>,
}

impl CertificateLog {
    fn new(log: &BuildLog) -> Self {
        CertificateLog {
            strategy: log.strategy,
            spanning_tree: log.components.iter().flat_map(|c| c.spanning_tree.iter().cloned()).collect(),
            leaf_order: log.components.iter().flat_map(|c| c.leaf_order.iter().cloned()).collect(),
            sigma_sizes: log.steps().filter_map(|s| s.sigma_size).collect(),
            tree_sizes: log.components.iter().flat_map(|c| c.tree_sizes.iter().copied()).collect(),
            flagged_steps: log.flagged_steps(),
            components: log.components.clone(),
            joins: log.joins.clone(),
            walks: log.walks.clone(),
        }
    }

    fn to_build_log(&self) -> BuildLog {
        BuildLog {
            strategy: self.strategy,
            components: self.components.clone(),
            joins: self.joins.clone(),
            walks: self.walks.clone(),
        }
    }
}

/// Joins two embeddings of disjoint graphs: the trees are connected through
/// a fresh middle vertex adjacent to vertex `0` of each.
pub fn join_trees(e1: &Embedding, e2: &Embedding) -> Result<Embedding> {
    let (n1, n2) = (e1.tree_size(), e2.tree_size());
    let mut names: Vec<String> = e1.source.names().to_vec();
    names.extend(e2.source.names().iter().cloned());
    let k = e1.source.vertex_count();
    let edges = e1.source.edges().chain(e2.source.edges().map(|(a, b)| (a + k, b + k)));
    let source = Graph::from_indices(names, edges)
        .map_err(|_| Error::InvalidGraph("joined source graphs share a vertex name".into()))?;
    let middle = n1 + n2;
    let tree_edges = e1
        .tree
        .edges()
        .chain(e2.tree.edges().map(|(a, b)| (a + n1, b + n1)))
        .chain([(0, middle), (n1, middle)]);
    let tree = Graph::from_indices(tree_names(n1 + n2 + 1), tree_edges)?;
    let mut images = e1.images.clone();
    images.extend(e2.images.iter().map(|img| img.iter().map(|&t| t + n1).collect()));
    let mut f_set = e1.f_set.clone();
    f_set.extend(e2.f_set.iter().map(|&t| t + n1));
    let mut log = e1.log.clone();
    log.components.extend(e2.log.components.iter().cloned());
    log.joins.extend(e2.log.joins.iter().map(|j| JoinRecord {
        left: j.left + n1,
        right: j.right + n1,
        middle: j.middle + n1,
    }));
    log.joins.push(JoinRecord {
        left: 0,
        right: n1,
        middle,
    });
    let pad = |l: &BuildLog, n: usize| {
        let mut w = l.walks.clone();
        w.resize(n, None);
        w
    };
    log.walks = pad(&e1.log, n1);
    log.walks.extend(pad(&e2.log, n2));
    log.walks.push(None);
    Embedding::from_parts(source, tree, images, f_set, log)
}

/// Builds the embedding with the default strategy.
pub fn build_embedding(g: &Graph) -> Result<Embedding> {
    build_embedding_with(g, BuildOptions::default())
}

pub fn build_embedding_with(g: &Graph, opts: BuildOptions) -> Result<Embedding> {
    let m = g.vertex_count();
    if m == 0 {
        let tree = Graph::from_indices(tree_names(1), [])?;
        let log = BuildLog {
            strategy: opts.strategy,
            walks: vec![None],
            ..BuildLog::default()
        };
        return Embedding::from_parts(g.clone(), tree, Vec::new(), Vec::new(), log);
    }
    let comps = g.components();
    if comps.len() == 1 {
        return build_connected(Arc::new(g.clone()), opts);
    }
    let mut acc: Option<Embedding> = None;
    for comp in &comps {
        let (sub, _) = g.induced(comp)?;
        let e = build_connected(Arc::new(sub), opts)?;
        acc = Some(match acc {
            None => e,
            Some(a) => join_trees(&a, &e)?,
        });
    }
    let joined = acc.expect("at least two components");
    // back to g's vertex order
    let mut images = vec![Vec::new(); m];
    for (i, img) in joined.images.iter().enumerate() {
        images[g.vertex(joined.source.name(i))?] = img.clone();
    }
    Embedding::from_parts(g.clone(), joined.tree, images, joined.f_set, joined.log)
}

fn build_connected(g: Arc<Graph>, opts: BuildOptions) -> Result<Embedding> {
    let m = g.vertex_count();
    let (order, parent) = g.bfs_tree(0);
    let mut lift: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &v in &order {
        lift[v] = match parent[v] {
            None => vec![v],
            Some(p) => {
                let mut w = lift[p].clone();
                w.push(v);
                w
            }
        };
    }
    let name = |v: usize| g.name(v).to_string();
    let mut log = ComponentLog {
        vertices: g.names().to_vec(),
        root: name(0),
        spanning_tree: order[1..]
            .iter()
            .map(|&v| [name(parent[v].expect("non-root")), name(v)])
            .collect(),
        leaf_order: order.iter().rev().map(|&v| name(v)).collect(),
        steps: Vec::new(),
        tree_sizes: vec![1],
    };
    let full = Cover::new(g.clone(), 0)?;
    let mut t = Subtree::singleton(full.basepoint());
    let rule = opts.strategy.sigma_rule();

    for k in 1..m {
        let v = order[k];
        let cover = Cover::on_subgraph(g.clone(), 0, &order[..=k])?;
        let vp = cover.vertex(lift[v].clone())?;
        let record = |kind, u: usize, t0: usize, s: &KeyStep| StepRecord {
            level: k,
            kind,
            vertex: name(u),
            walk: lift[u].iter().map(|&x| name(x)).collect(),
            active: k + 1,
            distance: Some(s.distance),
            sigma_size: Some(s.sigma_size),
            t0_size: t0,
            t1_size: Some(s.t1_size),
            t_size: s.tree.len(),
            flagged: s.distance > 1,
        };
        let first = key_step_with(&cover, &t, &vp, rule)?;
        log.steps.push(record(StepKind::First, v, t.len(), &first));
        t = first.tree;
        match opts.strategy {
            BuildStrategy::Literal => {
                for &u in &order[..=k] {
                    let up = cover.vertex(lift[u].clone())?;
                    let s = key_step_with(&cover, &t, &up, rule)?;
                    log.steps.push(record(StepKind::Survive, u, t.len(), &s));
                    t = s.tree;
                }
            }
            BuildStrategy::Union => {
                let mut acc: BTreeSet<CoverVertex> = t.vertex_set().clone();
                for &u in &order[..k] {
                    let up = cover.vertex(lift[u].clone())?;
                    let s = key_step_with(&cover, &t, &up, rule)?;
                    log.steps.push(record(StepKind::Survive, u, t.len(), &s));
                    acc.extend(s.tree.iter().cloned());
                }
                let t0 = t.len();
                t = Subtree::new(acc).map_err(|_| Error::Internal("union of survive steps is disconnected".into()))?;
                log.steps.push(StepRecord {
                    level: k,
                    kind: StepKind::Union,
                    vertex: name(v),
                    walk: Vec::new(),
                    active: k + 1,
                    distance: None,
                    sigma_size: None,
                    t0_size: t0,
                    t1_size: None,
                    t_size: t.len(),
                    flagged: false,
                });
            }
        }
        log.tree_sizes.push(t.len());
    }

    if m >= 2 && !bounds::le_tower(&BigUint::from(t.len()), bounds::tree_size_exponent(m as u64)) {
        return Err(Error::Internal(format!(
            "tree has {} vertices, above the 2^2^((m-1)^2) bound for m = {m}",
            t.len()
        )));
    }
    let f: Vec<CoverVertex> = order.iter().map(|&u| full.vertex(lift[u].clone())).collect::<Result<_>>()?;
    let mut e = Embedding::from_subtree(&full, &t, &f)?;
    e.log.strategy = opts.strategy;
    e.log.components = vec![log];
    Ok(e)
}

/// Outcome of a surviving check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurvivalVerdict {
    Pass,
    Fail(Occurrence),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurvivalCertificate {
    pub word: Word,
    pub homomorphic_word: Word,
    pub checked_vertices: Vec<usize>,
    pub verdict: SurvivalVerdict,
}

impl SurvivalCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == SurvivalVerdict::Pass
    }
}

/// Checks that the homomorphic word of the reduced word `w` has no
/// cancellation of any `F`-vertex.
pub fn check_surviving(e: &Embedding, w: &Word) -> Result<SurvivalCertificate> {
    check_surviving_for(e, w, e.f_set())
}

/// As [`check_surviving`], for an arbitrary set of tree vertices.
///
/// A cancellation of `t` removes two `t`-letters and the letter count of each
/// vertex in a reduced word is an invariant of the element, so if reduction
/// keeps every `t`-letter there is nothing to find. Only when some are lost
/// is the word searched for a witness.
pub fn check_surviving_for(e: &Embedding, w: &Word, checked: &[usize]) -> Result<SurvivalCertificate> {
    if !is_reduced(&e.source, w)? {
        return Err(Error::NotReduced);
    }
    for &t in checked {
        e.tree.check(t)?;
    }
    let h = e.homomorphic_word(w)?;
    let mut before = vec![0usize; e.tree.vertex_count()];
    for l in &h.0 {
        before[l.vertex] += 1;
    }
    let mut r = Reducer::new(&e.tree);
    r.extend(&h.0);
    let mut verdict = SurvivalVerdict::Pass;
    for &t in checked {
        if r.occurrences(t) < before[t] {
            if let Some(occ) = find_cancellation(&e.tree, &h, t)? {
                verdict = SurvivalVerdict::Fail(occ);
                break;
            }
        }
    }
    Ok(SurvivalCertificate {
        word: w.clone(),
        homomorphic_word: h,
        checked_vertices: checked.to_vec(),
        verdict,
    })
}
