//! Punctured-disk configuration for a finite tree.
//!
//! Every tree vertex gets a disk; disks overlap exactly along tree edges.
//! Each overlap (lens) gets one puncture, each disk three private punctures
//! away from every lens, and three more punctures go outside all disks, for
//! `n = |E| + 3|V| + 3` in total. Coordinates are exact rationals.
//!
//! Layout: the root disk has radius 1 at the origin. A vertex with `k`
//! children puts them on its own boundary circle with radius `1/(8k)` of its
//! own, fanned over ±60° around its outward direction (the full circle at
//! the root). Every subtree then stays inside a ball of radius `8/7` of its
//! top disk, which keeps unrelated disks apart.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds;
use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// An exact rational, serialised as `"p/q"` (or `"p"`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub BigRational);

impl Q {
    pub fn int(n: i64) -> Q {
        Q(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Q {
        Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BigRational::from_str(&s)
            .map(Q)
            .map_err(|_| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    fn dist2(&self, o: &Point) -> BigRational {
        let dx = &self.x.0 - &o.x.0;
        let dy = &self.y.0 - &o.y.0;
        &dx * &dx + &dy * &dy
    }

    fn offset(&self, r: &BigRational, u: &(BigRational, BigRational)) -> Point {
        Point {
            x: Q(&self.x.0 + r * &u.0),
            y: Q(&self.y.0 + r * &u.1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disk {
    pub name: String,
    pub parent: Option<usize>,
    pub center: Point,
    pub radius: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum PunctureKind {
    /// In the lens of the edge `[parent, child]`.
    Lens { edge: [usize; 2] },
    Private { disk: usize },
    Exterior,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Puncture {
    #[serde(flatten)]
    pub kind: PunctureKind,
    pub at: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskConfiguration {
    /// One disk per tree vertex, in the tree's vertex order.
    pub disks: Vec<Disk>,
    /// Tree edges as `[parent, child]`.
    pub edges: Vec<[usize; 2]>,
    pub punctures: Vec<Puncture>,
}

/// A rational unit vector close to angle `theta`, from the parametrisation
/// `((1-t²)/(1+t²), 2t/(1+t²))` with `t ≈ tan(θ/2)` of denominator `den`.
fn unit(theta: f64, den: i64) -> (BigRational, BigRational) {
    let theta = theta.rem_euclid(std::f64::consts::TAU);
    // tan(θ/2) blows up near θ = π; use u(θ) = -u(θ - π) there
    let flip = (theta - std::f64::consts::PI).abs() < std::f64::consts::FRAC_PI_2;
    let h = if flip { theta - std::f64::consts::PI } else { theta } / 2.0;
    let p = (h.tan() * den as f64).round() as i64;
    let t = BigRational::new(BigInt::from(p), BigInt::from(den));
    let one = BigRational::one();
    let s = &one + &t * &t;
    let c = (&one - &t * &t) / &s;
    let sn = (&t + &t) / &s;
    if flip {
        (-c, -sn)
    } else {
        (c, sn)
    }
}

fn children_of(tree: &Graph, root: usize) -> (Vec<usize>, Vec<Option<usize>>, Vec<Vec<usize>>) {
    let (order, parent) = tree.bfs_tree(root);
    let mut kids = vec![Vec::new(); tree.vertex_count()];
    for &v in &order {
        if let Some(p) = parent[v] {
            kids[p].push(v);
        }
    }
    (order, parent, kids)
}

/// Disks, lens punctures, private punctures and exterior punctures for a
/// tree rooted at its vertex `0`.
pub fn plan_configuration(tree: &Graph) -> Result<DiskConfiguration> {
    if !tree.is_tree() {
        return Err(Error::InvalidGraph("disk configurations are planned for trees only".into()));
    }
    let n = tree.vertex_count();
    let (order, parent, kids) = children_of(tree, 0);
    let deg60 = std::f64::consts::PI / 3.0;
    let mut center: Vec<Option<Point>> = vec![None; n];
    let mut radius: Vec<BigRational> = vec![BigRational::zero(); n];
    let mut dir: Vec<(BigRational, BigRational)> = vec![(BigRational::one(), BigRational::zero()); n];
    let mut angle = vec![0.0f64; n];
    center[0] = Some(Point { x: Q::int(0), y: Q::int(0) });
    radius[0] = BigRational::one();
    let mut punctures = Vec::new();
    let mut edges = Vec::new();

    for &v in &order {
        let cv = center[v].clone().expect("parents are placed first");
        let k = kids[v].len();
        let den = 64 * k.max(1) as i64;
        let rc = &radius[v] / BigRational::from_integer(BigInt::from(8 * k.max(1)));
        for (i, &c) in kids[v].iter().enumerate() {
            let theta = if parent[v].is_none() {
                std::f64::consts::TAU * i as f64 / k as f64
            } else if k == 1 {
                angle[v]
            } else {
                angle[v] - deg60 + 2.0 * deg60 * i as f64 / (k - 1) as f64
            };
            let u = unit(theta, den);
            angle[c] = theta;
            center[c] = Some(cv.offset(&radius[v], &u));
            radius[c] = rc.clone();
            dir[c] = u;
            edges.push([v, c]);
        }
    }
    // lens punctures: halfway into the child disk along the edge direction
    for &[v, c] in &edges {
        let cc = center[c].as_ref().expect("placed");
        let half = -&radius[c] / BigRational::from_integer(BigInt::from(2));
        punctures.push(Puncture {
            kind: PunctureKind::Lens { edge: [v, c] },
            at: cc.offset(&half, &dir[c]),
        });
    }
    // private punctures: on the circle of half radius, facing away from the
    // parent
    for v in 0..n {
        let cv = center[v].as_ref().expect("placed");
        let half = &radius[v] / BigRational::from_integer(BigInt::from(2));
        let offsets: [f64; 3] = if parent[v].is_none() {
            [0.0, 2.0 * std::f64::consts::PI / 3.0, 4.0 * std::f64::consts::PI / 3.0]
        } else {
            let d40 = 40f64.to_radians();
            [-d40, 0.0, d40]
        };
        for off in offsets {
            punctures.push(Puncture {
                kind: PunctureKind::Private { disk: v },
                at: cv.offset(&half, &unit(angle[v] + off, 64)),
            });
        }
    }
    // everything sits within 8/7 of the root disk; go past 2
    for i in 1..=3 {
        punctures.push(Puncture {
            kind: PunctureKind::Exterior,
            at: Point {
                x: Q::int(2 + i),
                y: Q::int(0),
            },
        });
    }
    let disks = (0..n)
        .map(|v| Disk {
            name: tree.name(v).to_string(),
            parent: parent[v],
            center: center[v].clone().expect("placed"),
            radius: Q(radius[v].clone()),
        })
        .collect();
    Ok(DiskConfiguration {
        disks,
        edges,
        punctures,
    })
}

/// A rational `s ≥ sqrt(x)`, for `x ≥ 0`.
fn sqrt_upper(x: &BigRational) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let f = x.to_f64().unwrap_or(f64::MAX).sqrt();
    let mut bump = 1.0 + 1e-12;
    loop {
        if let Some(s) = BigRational::from_float(f * bump) {
            if &(&s * &s) >= x {
                return s;
            }
        }
        bump *= 1.0 + 1e-6;
    }
}

/// Outcome of the exact geometric audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryAudit {
    pub pass: bool,
    pub disks: usize,
    /// Adjacent pairs shown to overlap with boundaries crossing twice.
    pub overlaps_checked: usize,
    /// Enclosing-ball comparisons that separate all non-adjacent pairs.
    pub separations_checked: usize,
    pub lens_punctures: usize,
    pub private_punctures: usize,
    pub exterior_punctures: usize,
    /// Overlap graph equals the tree, which has no triangles.
    pub triple_free: bool,
    pub problems: Vec<String>,
}

impl DiskConfiguration {
    pub fn n(&self) -> usize {
        self.punctures.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn inside(&self, p: &Point, d: usize) -> bool {
        let disk = &self.disks[d];
        p.dist2(&disk.center) < &disk.radius.0 * &disk.radius.0
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.disks.len()];
        for &[a, b] in &self.edges {
            nb[a].push(b);
            nb[b].push(a);
        }
        nb
    }

    /// Exact audit of the configuration.
    ///
    /// Each subtree gets an enclosing ball computed bottom-up. Disks of two
    /// non-adjacent vertices either lie under different children of their
    /// common ancestor, or one is an ancestor at distance at least two; both
    /// cases are settled by comparing enclosing balls. With the overlap graph
    /// pinned to the tree, a point inside a disk can only also lie in a
    /// neighbouring disk, so punctures are classified against neighbours.
    pub fn audit(&self) -> GeometryAudit {
        let n = self.disks.len();
        let mut problems = Vec::new();
        let mut audit = GeometryAudit {
            pass: false,
            disks: n,
            overlaps_checked: 0,
            separations_checked: 0,
            lens_punctures: 0,
            private_punctures: 0,
            exterior_punctures: 0,
            triple_free: false,
            problems: Vec::new(),
        };
        let names: Vec<String> = self.disks.iter().map(|d| d.name.clone()).collect();
        let tree = Graph::from_indices(names, self.edges.iter().map(|&[a, b]| (a, b)));
        let tree = match tree {
            Ok(t) if t.is_tree() => t,
            _ => {
                audit.problems.push("edges do not form a tree on the disks".into());
                return audit;
            }
        };
        let (order, _, kids) = children_of(&tree, 0);

        for &[a, b] in &self.edges {
            let (da, db) = (&self.disks[a], &self.disks[b]);
            let d2 = da.center.dist2(&db.center);
            let lo = &da.radius.0 - &db.radius.0;
            let hi = &da.radius.0 + &db.radius.0;
            audit.overlaps_checked += 1;
            if !(lo.clone() * lo < d2 && d2 < hi.clone() * hi) {
                problems.push(format!("disks {} and {} do not cross in two points", da.name, db.name));
            }
        }

        // enclosing ball radius per subtree, bottom-up
        let mut ball: Vec<BigRational> = self.disks.iter().map(|d| d.radius.0.clone()).collect();
        for &v in order.iter().rev() {
            for &c in &kids[v] {
                let d = sqrt_upper(&self.disks[v].center.dist2(&self.disks[c].center));
                let reach = d + &ball[c];
                if reach > ball[v] {
                    ball[v] = reach;
                }
            }
        }
        let apart = |x: usize, rx: &BigRational, y: usize, ry: &BigRational| {
            let s = rx + ry;
            self.disks[x].center.dist2(&self.disks[y].center) > &s * &s
        };
        for &v in &order {
            for (i, &c1) in kids[v].iter().enumerate() {
                for &c2 in &kids[v][i + 1..] {
                    audit.separations_checked += 1;
                    if !apart(c1, &ball[c1], c2, &ball[c2]) {
                        problems.push(format!("subtrees under {} and {} may touch", names_of(self, c1), names_of(self, c2)));
                    }
                }
                for &g in &kids[c1] {
                    audit.separations_checked += 1;
                    if !apart(v, &self.disks[v].radius.0, g, &ball[g]) {
                        problems.push(format!("disk {} may touch the subtree under {}", names_of(self, v), names_of(self, g)));
                    }
                }
            }
        }

        let nb = self.neighbours();
        let only_in = |p: &Point, want: &[usize]| {
            want.iter().all(|&d| self.inside(p, d))
                && want
                    .iter()
                    .flat_map(|&d| nb[d].iter())
                    .filter(|x| !want.contains(x))
                    .all(|&x| !self.inside(p, x))
        };
        let mut lens_seen = vec![0usize; self.edges.len()];
        let edge_index: std::collections::HashMap<[usize; 2], usize> =
            self.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut private_seen = vec![0usize; n];
        let root_reach = &ball[0];
        for (i, p) in self.punctures.iter().enumerate() {
            match p.kind {
                PunctureKind::Lens { edge } => {
                    audit.lens_punctures += 1;
                    match edge_index.get(&edge) {
                        Some(&k) => lens_seen[k] += 1,
                        None => problems.push(format!("puncture {i} names a missing edge")),
                    }
                    if !only_in(&p.at, &edge) {
                        problems.push(format!("lens puncture {i} is not in exactly its two disks"));
                    }
                }
                PunctureKind::Private { disk } => {
                    audit.private_punctures += 1;
                    if disk >= n {
                        problems.push(format!("puncture {i} names a missing disk"));
                        continue;
                    }
                    private_seen[disk] += 1;
                    if !only_in(&p.at, &[disk]) {
                        problems.push(format!("private puncture {i} is not in exactly its disk"));
                    }
                }
                PunctureKind::Exterior => {
                    audit.exterior_punctures += 1;
                    let d2 = p.at.dist2(&self.disks[0].center);
                    if d2 <= root_reach * root_reach {
                        problems.push(format!("exterior puncture {i} is not outside every disk"));
                    }
                }
            }
        }
        if lens_seen.iter().any(|&c| c != 1) {
            problems.push("some lens does not hold exactly one puncture".into());
        }
        if private_seen.iter().any(|&c| c != 3) {
            problems.push("some disk does not hold exactly three private punctures".into());
        }
        if audit.exterior_punctures != 3 {
            problems.push(format!("{} exterior punctures, expected 3", audit.exterior_punctures));
        }
        audit.triple_free = problems.is_empty();
        audit.pass = problems.is_empty();
        audit.problems = problems;
        audit
    }

    /// Brute-force exact audit over all pairs, disks and punctures.
    /// Quadratic; meant as an oracle on small trees.
    pub fn audit_brute_force(&self) -> Vec<String> {
        let n = self.disks.len();
        let mut problems = Vec::new();
        let mut adjacent = vec![vec![false; n]; n];
        for &[a, b] in &self.edges {
            adjacent[a][b] = true;
            adjacent[b][a] = true;
        }
        let mut overlap = vec![vec![false; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                let (da, db) = (&self.disks[a], &self.disks[b]);
                let s = &da.radius.0 + &db.radius.0;
                let o = da.center.dist2(&db.center) < &s * &s;
                overlap[a][b] = o;
                overlap[b][a] = o;
                if o != adjacent[a][b] {
                    problems.push(format!("overlap of {} and {} is {o}", da.name, db.name));
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if overlap[a][b] && overlap[b][c] && overlap[a][c] {
                        problems.push(format!("possible triple intersection {a} {b} {c}"));
                    }
                }
            }
        }
        for (i, p) in self.punctures.iter().enumerate() {
            let hit: Vec<usize> = (0..n).filter(|&d| self.inside(&p.at, d)).collect();
            let want: Vec<usize> = match p.kind {
                PunctureKind::Lens { edge } => {
                    let mut e = edge.to_vec();
                    e.sort_unstable();
                    e
                }
                PunctureKind::Private { disk } => vec![disk],
                PunctureKind::Exterior => vec![],
            };
            if hit != want {
                problems.push(format!("puncture {i} lies in disks {hit:?}, expected {want:?}"));
            }
        }
        problems
    }
}

fn names_of(c: &DiskConfiguration, v: usize) -> &str {
    &c.disks[v].name
}

/// Puncture and strand counts for an embedding's tree, with the bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidReport {
    pub pass: bool,
    pub m: usize,
    pub tree_vertices: usize,
    pub tree_edges: usize,
    /// Punctures actually placed.
    pub n: usize,
    /// `|E| + 3|V| + 3`.
    pub n_formula: usize,
    /// `4|V| + 2`.
    pub n_bound: usize,
    /// `n - 1`: strands of the pure braid group.
    pub strands: usize,
    /// `n ≤ 4·2^(2^((m-1)²)) + 2`, for `m ≥ 2`.
    pub tree_bound_pass: Option<bool>,
    /// `e = m²` in `n ≤ 2^(2^e)`; absent when `m < 2`.
    pub strand_bound_exponent: Option<u64>,
    pub strand_bound_pass: Option<bool>,
    pub geometry: GeometryAudit,
    pub notes: Vec<String>,
    pub disclaimer: String,
}

pub const DISCLAIMER: &str = "The mapping classes attached to the disks exist as sufficiently high powers \
of pseudo-Anosov maps on the punctured subsurfaces; they are not computed here.";

pub fn strand_report(e: &Embedding) -> Result<BraidReport> {
    let cfg = plan_configuration(e.tree())?;
    Ok(strand_report_for(e.source().vertex_count(), e.source().is_connected(), &cfg))
}

pub fn strand_report_for(m: usize, connected: bool, cfg: &DiskConfiguration) -> BraidReport {
    let v = cfg.disks.len();
    let edges = cfg.edges.len();
    let n = cfg.n();
    let geometry = cfg.audit();
    let mut notes = Vec::new();
    let n_big = BigUint::from(n);
    let (tree_bound_pass, strand_bound_exponent, strand_bound_pass) = if m >= 2 {
        let e = (m * m) as u64;
        let tb = connected.then(|| {
            let t = bounds::tree_size_exponent(m as u64);
            // n ≤ 4·2^(2^t) + 2 ⟺ (n - 2)/4 ≤ 2^(2^t)
            let q = (n_big.clone() - 2u32 + 3u32) / 4u32;
            bounds::le_tower(&q, t)
        });
        if !connected {
            notes.push("tree-size bound applies to connected graphs only".into());
        }
        (tb, Some(e), Some(bounds::le_tower(&n_big, e)))
    } else {
        notes.push("strand bound skipped: stated for m >= 2".into());
        (None, None, None)
    };
    let n_formula = edges + 3 * v + 3;
    let n_bound = 4 * v + 2;
    BraidReport {
        pass: geometry.pass
            && n == n_formula
            && n == n_bound
            && tree_bound_pass != Some(false)
            && strand_bound_pass != Some(false),
        m,
        tree_vertices: v,
        tree_edges: edges,
        n,
        n_formula,
        n_bound,
        strands: n.saturating_sub(1),
        tree_bound_pass,
        strand_bound_exponent,
        strand_bound_pass,
        geometry,
        notes,
        disclaimer: DISCLAIMER.into(),
    }
}

impl BraidReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_table(&self) -> String {
        let v = |b: bool| if b { "PASS" } else { "FAIL" };
        let opt = |b: Option<bool>| b.map_or("", v);
        let mut s = String::new();
        let g = &self.geometry;
        s += &format!("{:<16} {:<5} {} vertices, {} edges, m = {}\n", "tree", "", self.tree_vertices, self.tree_edges, self.m);
        s += &format!(
            "{:<16} {:<5} n = {} (|E|+3|V|+3 = {}, 4|V|+2 = {}), strands {}\n",
            "punctures",
            v(self.n == self.n_formula && self.n == self.n_bound),
            self.n,
            self.n_formula,
            self.n_bound,
            self.strands
        );
        s += &format!(
            "{:<16} {:<5} {} overlaps, {} separations, {}+{}+{} punctures\n",
            "geometry",
            v(g.pass),
            g.overlaps_checked,
            g.separations_checked,
            g.lens_punctures,
            g.private_punctures,
            g.exterior_punctures
        );
        s += &format!("{:<16} {:<5}\n", "tree bound", opt(self.tree_bound_pass));
        s += &format!(
            "{:<16} {:<5} {}\n",
            "strand bound",
            opt(self.strand_bound_pass),
            self.strand_bound_exponent.map_or("skipped".into(), |e| format!("n <= 2^2^{e}"))
        );
        for n in &self.notes {
            s += &format!("{:<16} {:<5} {n}\n", "note", "");
        }
        s += &format!("{:<16} {:<5}\n", "verdict", v(self.pass));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::build_embedding;
    use crate::graph::named::*;

    fn star(k: usize) -> Graph {
        let names: Vec<String> = (0..=k).map(|i| format!("s{i}")).collect();
        Graph::from_indices(names, (1..=k).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn unit_vectors_are_unit() {
        for i in 0..24 {
            let (c, s) = unit(i as f64 * std::f64::consts::PI / 12.0, 64);
            assert_eq!(&c * &c + &s * &s, BigRational::one());
            let a = (s.to_f64().unwrap()).atan2(c.to_f64().unwrap());
            let want = i as f64 * std::f64::consts::PI / 12.0;
            let diff = (a - want).rem_euclid(std::f64::consts::TAU);
            assert!(diff < 0.05 || diff > std::f64::consts::TAU - 0.05, "i = {i}");
        }
    }

    #[test]
    fn puncture_counts() {
        for (g, n) in [(path(1), 6), (path(2), 10), (path(3), 14)] {
            let c = plan_configuration(&g).unwrap();
            assert_eq!(c.n(), n);
            assert!(c.audit().pass, "{:?}", c.audit().problems);
            assert!(c.audit_brute_force().is_empty());
        }
    }

    #[test]
    fn rejects_non_trees() {
        assert!(plan_configuration(&cycle(3)).is_err());
        assert!(plan_configuration(&edgeless(2)).is_err());
    }

    #[test]
    fn audits_agree_on_shapes() {
        for g in [star(1), star(5), star(12), path(7)] {
            let c = plan_configuration(&g).unwrap();
            let a = c.audit();
            assert!(a.pass, "{:?}", a.problems);
            assert!(c.audit_brute_force().is_empty());
        }
        let e = build_embedding(&cycle(5)).unwrap();
        let c = plan_configuration(e.tree()).unwrap();
        assert!(c.audit().pass);
        assert_eq!(c.audit_brute_force(), Vec::<String>::new());
    }

    #[test]
    fn audit_catches_moved_disks() {
        let mut c = plan_configuration(&path(3)).unwrap();
        c.disks[2].center = c.disks[0].center.clone();
        let a = c.audit();
        assert!(!a.pass);
        assert!(!c.audit_brute_force().is_empty());
        let mut c = plan_configuration(&path(2)).unwrap();
        c.punctures[0].at = Point { x: Q::int(5), y: Q::int(5) };
        assert!(!c.audit().pass);
    }

    #[test]
    fn json_round_trip() {
        let c = plan_configuration(&star(3)).unwrap();
        let back = DiskConfiguration::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn report_numbers() {
        let e = build_embedding(&path(2)).unwrap();
        let r = strand_report(&e).unwrap();
        assert_eq!((r.n, r.n_bound, r.strands), (10, 10, 9));
        assert_eq!(r.strand_bound_exponent, Some(4));
        assert_eq!(r.strand_bound_pass, Some(true));
        assert!(r.pass);
        let e = build_embedding(&edgeless(1)).unwrap();
        let r = strand_report(&e).unwrap();
        assert_eq!(r.n, 6);
        assert_eq!(r.strand_bound_pass, None);
        assert!(r.pass);
    }
}
