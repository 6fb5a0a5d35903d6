//! Enumeration of word-metric balls and seeded random reduced words.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::word::{reduce, Letter, Reducer, Word};

/// Streams the canonical normal form of every element of length `≤ max_len`,
/// shortest first and lexicographically within a length. One layer of the
/// ball is held in memory at a time.
pub struct ReducedWords<'g> {
    graph: &'g Graph,
    max_len: usize,
    layer: Vec<Word>,
    layer_len: usize,
    next: usize,
}

pub fn enumerate_reduced_words(g: &Graph, max_len: usize) -> ReducedWords<'_> {
    ReducedWords {
        graph: g,
        max_len,
        layer: vec![Word::identity()],
        layer_len: 0,
        next: 0,
    }
}

fn letters(g: &Graph) -> Vec<Letter> {
    (0..g.vertex_count()).flat_map(|v| [Letter::pos(v), Letter::neg(v)]).collect()
}

/// All canonical words of length `len + 1` extending words of `layer`.
fn next_layer(g: &Graph, layer: &[Word]) -> Vec<Word> {
    let alphabet = letters(g);
    let mut r = Reducer::new(g);
    let mut out = BTreeSet::new();
    for w in layer {
        for &l in &alphabet {
            r.reset();
            r.extend(&w.0);
            if !r.push(l) {
                let mut ext = w.0.clone();
                ext.push(l);
                out.insert(reduce(g, &Word(ext)).expect("letters are in range"));
            }
        }
    }
    out.into_iter().collect()
}

impl Iterator for ReducedWords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if self.next < self.layer.len() {
                self.next += 1;
                return Some(self.layer[self.next - 1].clone());
            }
            if self.layer_len >= self.max_len || self.layer.is_empty() {
                return None;
            }
            self.layer = next_layer(self.graph, &self.layer);
            self.layer_len += 1;
            self.next = 0;
        }
    }
}

/// Number of elements in the ball of radius `max_len`, stopping early once
/// `cap` is exceeded.
pub fn ball_size(g: &Graph, max_len: usize, cap: usize) -> usize {
    let mut layer = vec![Word::identity()];
    let mut total = 1;
    for _ in 0..max_len {
        layer = next_layer(g, &layer);
        total += layer.len();
        if total > cap || layer.is_empty() {
            break;
        }
    }
    total
}

/// A canonical word of length exactly `len`, determined by `seed`: random
/// letters are appended and any letter that would shorten the word is
/// redrawn.
pub fn random_reduced_word(g: &Graph, len: usize, seed: u64) -> Result<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_reduced_word_with(g, len, &mut rng)
}

pub fn random_reduced_word_with<R: Rng>(g: &Graph, len: usize, rng: &mut R) -> Result<Word> {
    let m = g.vertex_count();
    if len == 0 {
        return Ok(Word::identity());
    }
    if m == 0 {
        return Err(Error::Unreachable(len));
    }
    let mut r = Reducer::new(g);
    while r.len() < len {
        let l = Letter {
            vertex: rng.random_range(0..m),
            inverse: rng.random_bool(0.5),
        };
        if r.push(l) {
            // undo: the cancelled letter comes straight back
            r.push(l.inv());
        }
    }
    reduce(g, &Word(r.reduced()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::word::is_reduced;

    /// |{(x, y) ∈ Z² : |x| + |y| ≤ L}| by direct lattice enumeration.
    fn lattice_ball(l: i64) -> usize {
        let mut n = 0;
        for x in -l..=l {
            for y in -l..=l {
                if x.abs() + y.abs() <= l {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn small_balls() {
        let one = edgeless(1);
        assert_eq!(enumerate_reduced_words(&one, 0).collect::<Vec<_>>(), vec![Word::identity()]);
        let z: Vec<Word> = enumerate_reduced_words(&one, 2).collect();
        let texts: Vec<String> = z.iter().map(|w| w.to_text(&one)).collect();
        assert_eq!(texts, ["ε", "a", "a^-1", "a a", "a^-1 a^-1"]);
        let e2 = edgeless(2);
        assert_eq!(lattice_ball(1), 5);
        assert_eq!(lattice_ball(2), 13);
        assert_eq!(enumerate_reduced_words(&e2, 1).count(), 5);
        assert_eq!(enumerate_reduced_words(&e2, 2).count(), 13);
        assert_eq!(ball_size(&e2, 2, usize::MAX), 13);
        assert_eq!(enumerate_reduced_words(&Graph::empty(), 3).count(), 1);
    }

    #[test]
    fn free_group_ball() {
        // F_2: 1 + 4 + 12 + 36
        assert_eq!(enumerate_reduced_words(&path(2), 3).count(), 53);
    }

    #[test]
    fn enumeration_is_canonical_and_unique() {
        let g = path(3);
        let all: Vec<Word> = enumerate_reduced_words(&g, 4).collect();
        let set: BTreeSet<&Word> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        for w in &all {
            assert_eq!(&reduce(&g, w).unwrap(), w);
        }
        assert!(all.windows(2).all(|p| (p[0].len(), &p[0]) < (p[1].len(), &p[1])));
    }

    #[test]
    fn random_words() {
        let g = cycle(5);
        assert_eq!(random_reduced_word(&g, 0, 1).unwrap(), Word::identity());
        let a = random_reduced_word(&g, 12, 7).unwrap();
        assert_eq!(a, random_reduced_word(&g, 12, 7).unwrap());
        assert_eq!(a.len(), 12);
        assert!(is_reduced(&g, &a).unwrap());
        assert_eq!(reduce(&g, &a).unwrap(), a);
        assert_eq!(random_reduced_word(&Graph::empty(), 3, 0), Err(Error::Unreachable(3)));
    }
}
