#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use raag_embed::graph::{named, Graph};
use raag_embed::word::{Letter, Word};

/// The graphs the pipeline is exercised on.
pub fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("P2", named::path(2)),
        ("P4", named::path(4)),
        ("K3", named::complete(3)),
        ("K4", named::complete(4)),
        ("C4", named::cycle(4)),
        ("C5", named::cycle(5)),
        ("edgeless-3", named::edgeless(3)),
        ("C5-plus-chord", named::c5_plus_chord()),
    ]
}

/// One graph per isomorphism class on `n` vertices, found by minimising the
/// edge bitmask over all vertex permutations.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u32;
                for (i, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                        let j = pairs.iter().position(|&e| e == (x, y)).unwrap();
                        m |= 1 << j;
                    }
                }
                m
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let edges = pairs.iter().enumerate().filter(|(i, _)| canon >> i & 1 == 1).map(|(_, &e)| e);
            out.push(Graph::from_indices(names, edges).unwrap());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every word of length exactly `len`.
pub fn all_words(g: &Graph, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..g.vertex_count()).flat_map(|v| [Letter::pos(v), Letter::neg(v)]).collect();
    let mut out = vec![Word::identity()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.0.clone();
                    v.push(l);
                    Word(v)
                })
            })
            .collect();
    }
    out
}

/// All words reachable from `w` by swapping adjacent letters of distinct
/// commuting generators and deleting adjacent inverse pairs.
pub fn rewrite_closure(g: &Graph, w: &Word) -> HashSet<Vec<Letter>> {
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([w.0.clone()]);
    let mut q = VecDeque::from([w.0.clone()]);
    while let Some(x) = q.pop_front() {
        for i in 0..x.len().saturating_sub(1) {
            let (a, b) = (x[i], x[i + 1]);
            let next = if a.vertex == b.vertex {
                if a.inverse == b.inverse {
                    continue;
                }
                let mut y = x.clone();
                y.drain(i..i + 2);
                y
            } else if !g.adjacent(a.vertex, b.vertex) {
                let mut y = x.clone();
                y.swap(i, i + 1);
                y
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                q.push_back(next);
            }
        }
    }
    seen
}

/// Tolerances and sizes used by the acceptance run.
pub const ORACLE_MAX_VERTICES: usize = 4;
pub const ORACLE_MAX_LEN: usize = 6;
pub const BALL_COUNT_MAX_L: usize = 8;
pub const PIPELINE_DEPTH: usize = 4;
pub const PIPELINE_FALLBACK_DEPTH: usize = 3;
pub const BALL_CAP: usize = 1_000_000;
pub const QI_SAMPLES: usize = 1000;
pub const QI_MAX_LEN: usize = 20;
pub const QI_SEED: u64 = 42;
pub const SYMBOLIC_M: std::ops::RangeInclusive<u32> = 2..=64;
/// Trees up to this size also get the all-pairs geometry oracle.
pub const BRUTE_GEOMETRY_MAX: usize = 400;
