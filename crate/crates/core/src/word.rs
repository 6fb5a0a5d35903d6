//! Words in `G(Γ)`: parsing, reduction to the canonical normal form,
//! support, and cancellation detection.
//!
//! Reduction works letter by letter. A reduced word `w` followed by `x^e`
//! fails to be reduced exactly when the last `x`-letter of `w` is `x^-e` and
//! every later letter commutes with `x`; in that case deleting that letter
//! gives a reduced word for `w·x^e`. [`Reducer`] keeps, per vertex, a chain of
//! its live occurrences so each step costs `O(deg x)`.
//!
//! The canonical representative of an element is the lexicographically least
//! reduced word, letters ordered by vertex index and then `+ < -`. Any two
//! reduced words for an element differ by commuting swaps, so this is the
//! least linear extension of the dependency order on the letters.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A generator or its inverse. Ordered by vertex, then `+ < -`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub vertex: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(vertex: usize) -> Self {
        Letter { vertex, inverse: false }
    }

    pub fn neg(vertex: usize) -> Self {
        Letter { vertex, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            vertex: self.vertex,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A finite sequence of letters. The empty word is the identity.
///
/// Words do not carry their graph; every operation takes the ambient
/// [`Graph`] and checks that the letters belong to it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        for l in &self.0 {
            g.check(l.vertex)?;
        }
        Ok(())
    }

    /// Parses whitespace-separated tokens `v`, `v^-1` or `v^k`. `ε` and `1`
    /// stand for the empty word.
    pub fn parse(g: &Graph, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "ε" || tok == "1" {
                continue;
            }
            let (name, exp) = match tok.rsplit_once('^') {
                Some((name, e)) if !name.is_empty() => match e.parse::<i64>() {
                    Ok(k) => (name, k),
                    Err(_) => return Err(Error::WordParse(format!("bad exponent in `{tok}`"))),
                },
                Some(_) => return Err(Error::WordParse(format!("missing vertex in `{tok}`"))),
                None => (tok, 1),
            };
            let v = g.vertex(name)?;
            let l = if exp < 0 { Letter::neg(v) } else { Letter::pos(v) };
            for _ in 0..exp.unsigned_abs() {
                out.push(l);
            }
        }
        Ok(Word(out))
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> WordDisplay<'a> {
        WordDisplay { word: self, graph: g }
    }

    pub fn to_text(&self, g: &Graph) -> String {
        self.display(g).to_string()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    graph: &'a Graph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "ε");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.graph.name(l.vertex))?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// A cancelling pair `v^±1 … v^∓1` at positions `start < end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occurrence {
    pub start: usize,
    pub end: usize,
    pub vertex: usize,
}

const NONE: usize = usize::MAX;

/// Incremental free reduction with per-vertex occurrence chains.
///
/// Can be reused across words; [`Reducer::reset`] only touches the vertices
/// used by the previous word.
pub struct Reducer<'g> {
    graph: &'g Graph,
    letters: Vec<Letter>,
    alive: Vec<bool>,
    prev: Vec<usize>,
    top: Vec<usize>,
    count: Vec<u32>,
    marked: Vec<bool>,
    touched: Vec<usize>,
    live: usize,
}

impl<'g> Reducer<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.vertex_count();
        Reducer {
            graph,
            letters: Vec::new(),
            alive: Vec::new(),
            prev: Vec::new(),
            top: vec![NONE; n],
            count: vec![0; n],
            marked: vec![false; n],
            touched: Vec::new(),
            live: 0,
        }
    }

    pub fn reset(&mut self) {
        for &v in &self.touched {
            self.top[v] = NONE;
            self.count[v] = 0;
            self.marked[v] = false;
        }
        self.touched.clear();
        self.letters.clear();
        self.alive.clear();
        self.prev.clear();
        self.live = 0;
    }

    /// Appends a letter; returns `true` if it cancelled against an earlier one.
    #[inline]
    pub fn push(&mut self, l: Letter) -> bool {
        let x = l.vertex;
        let p = self.top[x];
        if p != NONE && self.letters[p].inverse != l.inverse {
            let blocked = self.graph.nbrs(x).iter().any(|&y| {
                let t = self.top[y];
                t != NONE && t > p
            });
            if !blocked {
                self.alive[p] = false;
                self.top[x] = self.prev[p];
                self.count[x] -= 1;
                self.live -= 1;
                return true;
            }
        }
        if !self.marked[x] {
            self.marked[x] = true;
            self.touched.push(x);
        }
        let pos = self.letters.len();
        self.letters.push(l);
        self.alive.push(true);
        self.prev.push(p);
        self.top[x] = pos;
        self.count[x] += 1;
        self.live += 1;
        false
    }

    pub fn extend(&mut self, ls: &[Letter]) {
        for &l in ls {
            self.push(l);
        }
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Number of live `v`-letters in the current reduced word.
    pub fn occurrences(&self, v: usize) -> usize {
        self.count[v] as usize
    }

    pub fn contains(&self, v: usize) -> bool {
        self.count[v] > 0
    }

    /// The current reduced word (not yet canonical).
    pub fn reduced(&self) -> Vec<Letter> {
        self.letters
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(&l, _)| l)
            .collect()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.touched.iter().copied().filter(|&v| self.count[v] > 0).collect()
    }
}

/// Lexicographically least rearrangement of a reduced word.
fn canonical_order(g: &Graph, reduced: &[Letter]) -> Vec<Letter> {
    let n = reduced.len();
    if n <= 1 {
        return reduced.to_vec();
    }
    let mut last = vec![NONE; g.vertex_count()];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0u32; n];
    for (j, l) in reduced.iter().enumerate() {
        let x = l.vertex;
        for &y in std::iter::once(&x).chain(g.nbrs(x)) {
            let i = last[y];
            if i != NONE {
                succ[i].push(j);
                indeg[j] += 1;
            }
        }
        last[x] = j;
    }
    let mut heap: BinaryHeap<Reverse<(Letter, usize)>> = (0..n)
        .filter(|&j| indeg[j] == 0)
        .map(|j| Reverse((reduced[j], j)))
        .collect();
    let mut out = Vec::with_capacity(n);
    while let Some(Reverse((l, j))) = heap.pop() {
        out.push(l);
        for &k in &succ[j] {
            indeg[k] -= 1;
            if indeg[k] == 0 {
                heap.push(Reverse((reduced[k], k)));
            }
        }
    }
    out
}

/// Canonical normal form of `w`.
pub fn reduce(g: &Graph, w: &Word) -> Result<Word> {
    w.check(g)?;
    let mut r = Reducer::new(g);
    r.extend(&w.0);
    Ok(Word(canonical_order(g, &r.reduced())))
}

/// `‖w‖`, the length of a shortest word for the element.
pub fn word_length(g: &Graph, w: &Word) -> Result<usize> {
    w.check(g)?;
    let mut r = Reducer::new(g);
    r.extend(&w.0);
    Ok(r.len())
}

pub fn is_reduced(g: &Graph, w: &Word) -> Result<bool> {
    Ok(word_length(g, w)? == w.len())
}

/// `supp(w)`: vertices occurring in a reduced word for `w`.
pub fn support(g: &Graph, w: &Word) -> Result<BTreeSet<usize>> {
    w.check(g)?;
    let mut r = Reducer::new(g);
    r.extend(&w.0);
    Ok(r.support())
}

pub fn elements_equal(g: &Graph, u: &Word, v: &Word) -> Result<bool> {
    u.check(g)?;
    v.check(g)?;
    Ok(word_length(g, &u.concat(&v.inverse()))? == 0)
}

/// Whether the subword strictly between `i` and `j` has support disjoint
/// from `lk(v)`.
fn enclosed_avoids_link(r: &mut Reducer<'_>, w: &[Letter], i: usize, j: usize, v: usize) -> bool {
    r.reset();
    r.extend(&w[i + 1..j]);
    !r.graph.nbrs(v).iter().any(|&y| r.contains(y))
}

/// Finds a cancellation of `v` in `w`, preferring an innermost one.
///
/// Consecutive `v`-letters are tried first, left to right; only if none of
/// them cancels are the remaining opposite-sign pairs scanned, shortest span
/// first.
pub fn find_cancellation(g: &Graph, w: &Word, v: usize) -> Result<Option<Occurrence>> {
    g.check(v)?;
    w.check(g)?;
    let pos: Vec<usize> = w.0.iter().enumerate().filter(|(_, l)| l.vertex == v).map(|(i, _)| i).collect();
    let mut r = Reducer::new(g);
    for pair in pos.windows(2) {
        let (i, j) = (pair[0], pair[1]);
        if w.0[i].inverse != w.0[j].inverse && enclosed_avoids_link(&mut r, &w.0, i, j, v) {
            return Ok(Some(Occurrence { start: i, end: j, vertex: v }));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (a, &i) in pos.iter().enumerate() {
        for &j in pos.iter().skip(a + 2) {
            if w.0[i].inverse != w.0[j].inverse {
                pairs.push((i, j));
            }
        }
    }
    pairs.sort_by_key(|&(i, j)| (j - i, i));
    for (i, j) in pairs {
        if enclosed_avoids_link(&mut r, &w.0, i, j, v) {
            return Ok(Some(Occurrence { start: i, end: j, vertex: v }));
        }
    }
    Ok(None)
}

/// The quotient `η` killing every vertex outside `keep`, followed by
/// normalisation. The result is expressed in `g`'s indices; its letters all
/// lie in `keep`, and it is the normal form of the image in `G(keep)` since
/// the induced subgraph keeps the relative vertex order.
pub fn quotient_to_subgraph(g: &Graph, keep: &[usize], w: &Word) -> Result<Word> {
    w.check(g)?;
    let mut mask = vec![false; g.vertex_count()];
    for &k in keep {
        g.check(k)?;
        mask[k] = true;
    }
    let kept = Word(w.0.iter().copied().filter(|l| mask[l.vertex]).collect());
    reduce(g, &kept)
}
