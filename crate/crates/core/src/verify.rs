//! Bounded checks of an embedding: injectivity on a word ball, the length
//! bounds `‖w‖ ≤ ‖φ(w)‖ ≤ |V(T)|·‖w‖`, surviving certificates, the relations
//! of `G(Γ)`, and the size bounds on `T` and the puncture count.
//!
//! Word corpora are checked in parallel; results are merged in word order so
//! reports do not depend on scheduling.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::embed::{check_surviving, Embedding, StepKind, SurvivalVerdict};
use crate::enumerate::{ball_size, enumerate_reduced_words, random_reduced_word_with};
use crate::error::Result;
use crate::word::{Reducer, Word};

/// Failure lists in reports are truncated to this many entries.
pub const MAX_LISTED: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Radius of the exhaustive ball.
    pub depth: usize,
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Largest ball checked exhaustively; the radius shrinks until it fits.
    pub ball_cap: usize,
    /// Worker threads, 0 for the rayon default.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            depth: 4,
            samples: 1000,
            max_len: 20,
            seed: 42,
            ball_cap: 1_000_000,
            jobs: 0,
        }
    }
}

/// An exact ratio `num/den`, with its decimal value for display.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: usize,
    pub den: usize,
    pub value: f64,
}

impl Ratio {
    fn new(num: usize, den: usize) -> Self {
        let g = gcd(num, den).max(1);
        let (num, den) = (num / g, den / g);
        Ratio {
            num,
            den,
            value: num as f64 / den as f64,
        }
    }

    fn lt(&self, other: &Ratio) -> bool {
        (self.num as u128) * (other.den as u128) < (other.num as u128) * (self.den as u128)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCheck {
    pub pass: bool,
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsCheck {
    pub pass: bool,
    pub commuting_pairs: usize,
    pub non_commuting_pairs: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityCheck {
    pub pass: bool,
    pub requested_depth: usize,
    pub depth: usize,
    pub words_checked: usize,
    pub first_violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QiViolation {
    pub index: usize,
    pub word: String,
    pub length: usize,
    pub image_length: usize,
    /// The same word also failed its surviving check.
    pub surviving_failed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QiCheck {
    pub pass: bool,
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    pub upper_bound: usize,
    pub min_ratio: Option<Ratio>,
    pub max_ratio: Option<Ratio>,
    pub violation_count: usize,
    pub violations: Vec<QiViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivalFailure {
    pub index: usize,
    pub word: String,
    pub tree_vertex: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum SurvivalMode {
    Exhaustive { depth: usize },
    Sampled { samples: usize, max_len: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivingCheck {
    pub pass: bool,
    pub mode: SurvivalMode,
    pub words_checked: usize,
    pub failure_count: usize,
    pub failures: Vec<SurvivalFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSizeAudit {
    pub m: usize,
    pub tree_size: usize,
    /// `e` in the bound `2^(2^e)`.
    pub exponent: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceAudit {
    pub pass: bool,
    pub steps_checked: usize,
    pub flagged_steps: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandAudit {
    pub m: usize,
    /// Decimal strings: these are big integers in general.
    pub punctures: String,
    pub strands: String,
    pub formula: String,
    pub formula_pass: bool,
    /// `None` when `m < 2`.
    pub bound_exponent: Option<u64>,
    pub bound_pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsAudit {
    pub pass: bool,
    pub tree_size: Option<TreeSizeAudit>,
    pub recurrence: RecurrenceAudit,
    pub strands: StrandAudit,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub graph: GraphSummary,
    pub tree_size: usize,
    pub f_size: usize,
    pub config: VerifyConfig,
    pub structure: StructureCheck,
    pub relations: RelationsCheck,
    pub injectivity: InjectivityCheck,
    pub surviving: Vec<SurvivingCheck>,
    pub qi: QiCheck,
    pub bounds: BoundsAudit,
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

/// The `i`-th sampled word: length uniform in `1..=max_len`, drawn from its
/// own ChaCha stream so samples are independent of evaluation order.
pub fn sample_word(e: &Embedding, i: usize, max_len: usize, seed: u64) -> Option<Word> {
    let g = e.source();
    if g.vertex_count() == 0 || max_len == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    let len = rng.random_range(1..=max_len);
    random_reduced_word_with(g, len, &mut rng).ok()
}

fn sample_corpus(e: &Embedding, samples: usize, max_len: usize, seed: u64) -> Vec<Word> {
    (0..samples).filter_map(|i| sample_word(e, i, max_len, seed)).collect()
}

/// Largest radius `≤ depth` whose ball has at most `cap` elements.
fn fitting_depth(e: &Embedding, depth: usize, cap: usize) -> usize {
    let mut d = depth;
    while d > 1 && ball_size(e.source(), d, cap) > cap {
        d -= 1;
    }
    d
}

/// Nontrivial canonical words of length `≤ depth`.
fn ball(e: &Embedding, depth: usize) -> Vec<Word> {
    enumerate_reduced_words(e.source(), depth).skip(1).collect()
}

/// Kernel check on the ball: `φ(w) ≠ 1` for every nontrivial `w`.
pub fn verify_injectivity_ball(e: &Embedding, depth: usize, cfg: &VerifyConfig) -> InjectivityCheck {
    let used = fitting_depth(e, depth.max(1), cfg.ball_cap);
    let words = ball(e, used);
    let tree = e.tree();
    let first = pool(cfg.jobs).install(|| {
        words
            .par_iter()
            .map_init(
                || Reducer::new(tree),
                |r, w| {
                    r.reset();
                    r.extend(&e.homomorphic_word(w).expect("ball word").0);
                    r.is_empty()
                },
            )
            .collect::<Vec<bool>>()
            .into_iter()
            .position(|trivial| trivial)
    });
    InjectivityCheck {
        pass: first.is_none(),
        requested_depth: depth,
        depth: used,
        words_checked: words.len(),
        first_violation: first.map(|i| words[i].to_text(e.source())),
    }
}

/// Length-ratio check over seeded samples.
pub fn verify_qi_bounds(e: &Embedding, samples: usize, max_len: usize, seed: u64, jobs: usize) -> QiCheck {
    let words = sample_corpus(e, samples, max_len, seed);
    let results: Vec<(usize, bool)> = pool(jobs).install(|| {
        words
            .par_iter()
            .map(|w| {
                let n = e.phi_length(w).expect("sample word");
                let survived = check_surviving(e, w).map(|c| c.passed()).unwrap_or(false);
                (n, survived)
            })
            .collect()
    });
    let bound = e.tree_size();
    let mut min_ratio: Option<Ratio> = None;
    let mut max_ratio: Option<Ratio> = None;
    let mut violations = Vec::new();
    let mut violation_count = 0;
    for (i, (w, &(n, survived))) in words.iter().zip(&results).enumerate() {
        let r = Ratio::new(n, w.len());
        if min_ratio.is_none_or(|m| r.lt(&m)) {
            min_ratio = Some(r);
        }
        if max_ratio.is_none_or(|m| m.lt(&r)) {
            max_ratio = Some(r);
        }
        if n < w.len() || n > bound * w.len() {
            violation_count += 1;
            if violations.len() < MAX_LISTED {
                violations.push(QiViolation {
                    index: i,
                    word: w.to_text(e.source()),
                    length: w.len(),
                    image_length: n,
                    surviving_failed: !survived,
                });
            }
        }
    }
    QiCheck {
        pass: violation_count == 0,
        samples: words.len(),
        max_len,
        seed,
        upper_bound: bound,
        min_ratio,
        max_ratio,
        violation_count,
        violations,
    }
}

/// Surviving certificates over a ball or a seeded sample.
pub fn verify_surviving(e: &Embedding, mode: SurvivalMode, cfg: &VerifyConfig) -> SurvivingCheck {
    let (mode, words) = match mode {
        SurvivalMode::Exhaustive { depth } => {
            let used = fitting_depth(e, depth.max(1), cfg.ball_cap);
            (SurvivalMode::Exhaustive { depth: used }, ball(e, used))
        }
        SurvivalMode::Sampled {
            samples,
            max_len,
            seed,
        } => (mode, sample_corpus(e, samples, max_len, seed)),
    };
    let verdicts: Vec<SurvivalVerdict> = pool(cfg.jobs).install(|| {
        words
            .par_iter()
            .map(|w| check_surviving(e, w).expect("canonical words are reduced").verdict)
            .collect()
    });
    let mut failures = Vec::new();
    let mut failure_count = 0;
    for (i, v) in verdicts.iter().enumerate() {
        if let SurvivalVerdict::Fail(occ) = v {
            failure_count += 1;
            if failures.len() < MAX_LISTED {
                failures.push(SurvivalFailure {
                    index: i,
                    word: words[i].to_text(e.source()),
                    tree_vertex: e.tree().name(occ.vertex).to_string(),
                    start: occ.start,
                    end: occ.end,
                });
            }
        }
    }
    SurvivingCheck {
        pass: failure_count == 0,
        mode,
        words_checked: words.len(),
        failure_count,
        failures,
    }
}

/// Commutators of generator images: trivial exactly for non-adjacent pairs.
pub fn verify_relations(e: &Embedding) -> RelationsCheck {
    let g = e.source();
    let mut out = RelationsCheck {
        pass: true,
        commuting_pairs: 0,
        non_commuting_pairs: 0,
        failures: Vec::new(),
    };
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            let (a, b) = (e.phi_image(u).expect("in range"), e.phi_image(v).expect("in range"));
            let comm = a.concat(&b).concat(&a.inverse()).concat(&b.inverse());
            let mut r = Reducer::new(e.tree());
            r.extend(&comm.0);
            let commute = !g.adjacent(u, v);
            if commute {
                out.commuting_pairs += 1;
            } else {
                out.non_commuting_pairs += 1;
            }
            if r.is_empty() != commute {
                out.pass = false;
                out.failures.push(format!(
                    "[{}, {}] should {}be trivial",
                    g.name(u),
                    g.name(v),
                    if commute { "" } else { "not " }
                ));
            }
        }
    }
    out
}

/// Size bounds on `T`, the per-step growth recurrence, and the puncture
/// arithmetic.
pub fn audit_bounds(e: &Embedding) -> BoundsAudit {
    let g = e.source();
    let m = g.vertex_count();
    let size = BigUint::from(e.tree_size());
    let mut notes = Vec::new();

    let tree_size = if m >= 2 && g.is_connected() {
        let exponent = bounds::tree_size_exponent(m as u64);
        Some(TreeSizeAudit {
            m,
            tree_size: e.tree_size(),
            exponent,
            pass: bounds::le_tower(&size, exponent),
        })
    } else {
        notes.push(if m < 2 {
            "tree-size bound skipped: needs m >= 2".to_string()
        } else {
            "tree-size bound skipped: source graph is disconnected".to_string()
        });
        None
    };

    let mut recurrence = RecurrenceAudit {
        pass: true,
        steps_checked: 0,
        flagged_steps: 0,
        violations: Vec::new(),
    };
    for s in e.log().steps() {
        if s.kind == StepKind::Union {
            continue;
        }
        if s.flagged || s.distance.is_some_and(|d| d > 1) {
            recurrence.flagged_steps += 1;
            continue;
        }
        recurrence.steps_checked += 1;
        let cap = BigUint::from(s.t0_size + s.active).pow(3);
        if BigUint::from(s.t_size) > cap {
            recurrence.pass = false;
            recurrence.violations.push(format!(
                "level {} at `{}`: {} > ({} + {})^3",
                s.level, s.vertex, s.t_size, s.t0_size, s.active
            ));
        }
    }
    if recurrence.flagged_steps > 0 {
        notes.push(format!(
            "{} key steps had d(v', T0) > 1 and are outside the recurrence",
            recurrence.flagged_steps
        ));
    }

    let strands = strand_audit(m, &size);
    if strands.bound_pass.is_none() {
        notes.push("strand bound 2^2^(m^2) skipped: stated for m >= 2".into());
    }
    BoundsAudit {
        pass: tree_size.as_ref().is_none_or(|t| t.pass)
            && recurrence.pass
            && strands.formula_pass
            && strands.bound_pass != Some(false),
        tree_size,
        recurrence,
        strands,
        notes,
    }
}

fn strand_audit(m: usize, size: &BigUint) -> StrandAudit {
    let n = bounds::punctures(size);
    let formula = size * 4u32 + 2u32;
    let bound_exponent = (m >= 2).then(|| (m * m) as u64);
    StrandAudit {
        m,
        punctures: n.to_string(),
        strands: (&n - 1u32).to_string(),
        formula: formula.to_string(),
        formula_pass: n == formula,
        bound_exponent,
        bound_pass: bound_exponent.map(|ex| bounds::le_tower(&n, ex)),
    }
}

/// Every check, in a fixed order.
pub fn verify(e: &Embedding, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let problems = e.structural_problems();
    let structure = StructureCheck {
        pass: problems.is_empty(),
        problems,
    };
    let relations = verify_relations(e);
    let injectivity = verify_injectivity_ball(e, cfg.depth, cfg);
    let surviving = vec![
        verify_surviving(e, SurvivalMode::Exhaustive { depth: cfg.depth }, cfg),
        verify_surviving(
            e,
            SurvivalMode::Sampled {
                samples: cfg.samples,
                max_len: cfg.max_len,
                seed: cfg.seed,
            },
            cfg,
        ),
    ];
    let qi = verify_qi_bounds(e, cfg.samples, cfg.max_len, cfg.seed, cfg.jobs);
    let bounds = audit_bounds(e);
    let g = e.source();
    Ok(VerificationReport {
        pass: structure.pass
            && relations.pass
            && injectivity.pass
            && surviving.iter().all(|s| s.pass)
            && qi.pass
            && bounds.pass,
        graph: GraphSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            components: g.components().len(),
        },
        tree_size: e.tree_size(),
        f_size: e.f_set().len(),
        config: *cfg,
        structure,
        relations,
        injectivity,
        surviving,
        qi,
        bounds,
    })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Human-readable summary, one line per check.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let mut row = |name: &str, pass: Option<bool>, detail: String| {
            let v = pass.map_or("", verdict);
            let _ = writeln!(s, "{name:<16} {v:<5} {detail}");
        };
        row(
            "graph",
            None,
            format!(
                "{} vertices, {} edges, {} component(s)",
                self.graph.vertices, self.graph.edges, self.graph.components
            ),
        );
        row("tree", None, format!("{} vertices, |F| = {}", self.tree_size, self.f_size));
        row("structure", Some(self.structure.pass), self.structure.problems.join("; "));
        row(
            "relations",
            Some(self.relations.pass),
            format!(
                "{} commuting, {} non-commuting pairs",
                self.relations.commuting_pairs, self.relations.non_commuting_pairs
            ),
        );
        let inj = &self.injectivity;
        row(
            "injectivity",
            Some(inj.pass),
            format!(
                "ball L={} ({} words){}",
                inj.depth,
                inj.words_checked,
                inj.first_violation.as_ref().map(|w| format!(", kernel contains {w}")).unwrap_or_default()
            ),
        );
        for sv in &self.surviving {
            let what = match sv.mode {
                SurvivalMode::Exhaustive { depth } => format!("exhaustive L={depth}"),
                SurvivalMode::Sampled { samples, max_len, seed } => {
                    format!("{samples} samples, max len {max_len}, seed {seed}")
                }
            };
            row(
                "surviving",
                Some(sv.pass),
                format!("{what}: {} words, {} failures", sv.words_checked, sv.failure_count),
            );
        }
        let q = &self.qi;
        let fmt = |r: &Option<Ratio>| r.map_or("-".to_string(), |r| format!("{}/{}", r.num, r.den));
        row(
            "qi bounds",
            Some(q.pass),
            format!(
                "{} samples, ratio min {} max {}, bound {}, {} violations",
                q.samples,
                fmt(&q.min_ratio),
                fmt(&q.max_ratio),
                q.upper_bound,
                q.violation_count
            ),
        );
        let b = &self.bounds;
        match &b.tree_size {
            Some(t) => row(
                "tree-size bound",
                Some(t.pass),
                format!("{} <= 2^2^{} (m = {})", t.tree_size, t.exponent, t.m),
            ),
            None => row("tree-size bound", None, "skipped".into()),
        }
        row(
            "recurrence",
            Some(b.recurrence.pass),
            format!(
                "{} key steps, {} flagged",
                b.recurrence.steps_checked, b.recurrence.flagged_steps
            ),
        );
        let st = &b.strands;
        row(
            "punctures",
            Some(st.formula_pass),
            format!("n = {} = 4|V(T)|+2, strands {}", st.punctures, st.strands),
        );
        row(
            "strand bound",
            st.bound_pass,
            st.bound_exponent.map_or("skipped".into(), |e| format!("n <= 2^2^{e}")),
        );
        for n in &b.notes {
            row("note", None, n.clone());
        }
        row("verdict", Some(self.pass), String::new());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::build_embedding;
    use crate::graph::named::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            depth: 3,
            samples: 50,
            max_len: 8,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn tree_sources_are_isometric() {
        for g in [path(2), path(4), edgeless(2), edgeless(1)] {
            let e = build_embedding(&g).unwrap();
            let q = verify_qi_bounds(&e, 40, 10, 1, 0);
            assert!(q.pass);
            assert_eq!(q.min_ratio.unwrap().value, 1.0);
            assert_eq!(q.max_ratio.unwrap().value, 1.0);
        }
    }

    #[test]
    fn c5_passes_everything() {
        let e = build_embedding(&cycle(5)).unwrap();
        let r = verify(&e, &small()).unwrap();
        assert!(r.pass, "{}", r.to_table());
        assert_eq!(r.relations.commuting_pairs, 5);
        assert_eq!(r.relations.non_commuting_pairs, 5);
    }

    #[test]
    fn report_is_independent_of_thread_count() {
        let e = build_embedding(&cycle(4)).unwrap();
        let one = verify(&e, &VerifyConfig { jobs: 1, ..small() }).unwrap();
        let four = verify(&e, &VerifyConfig { jobs: 4, ..small() }).unwrap();
        assert_eq!(one.to_json(), four.to_json());
        assert_eq!(one.to_table(), four.to_table());
    }

    #[test]
    fn samples_are_reproducible() {
        let e = build_embedding(&cycle(5)).unwrap();
        assert_eq!(sample_word(&e, 3, 20, 42), sample_word(&e, 3, 20, 42));
        assert_ne!(sample_word(&e, 3, 20, 42), sample_word(&e, 4, 20, 42));
        let w = sample_word(&e, 0, 20, 42).unwrap();
        assert!((1..=20).contains(&w.len()));
    }

    #[test]
    fn single_vertex_audit_is_skipped() {
        let e = build_embedding(&edgeless(1)).unwrap();
        let b = audit_bounds(&e);
        assert!(b.pass);
        assert!(b.tree_size.is_none());
        assert_eq!(b.strands.bound_pass, None);
        assert_eq!(b.strands.punctures, "6");
        let inj = verify_injectivity_ball(&e, 4, &VerifyConfig::default());
        assert!(inj.pass);
    }

    #[test]
    fn edge_audit_numbers() {
        let e = build_embedding(&path(2)).unwrap();
        let b = audit_bounds(&e);
        let t = b.tree_size.unwrap();
        assert_eq!((t.tree_size, t.exponent, t.pass), (2, 1, true));
        assert_eq!(b.strands.punctures, "10");
        assert_eq!(b.strands.formula, "10");
        assert_eq!(b.strands.bound_exponent, Some(4));
        assert_eq!(b.strands.bound_pass, Some(true));
    }

    #[test]
    fn broken_embedding_is_caught() {
        // images of the triangle on a single tree vertex each: a, b, c
        // collapse onto a path, so `a` and `c` wrongly commute
        let src = complete(3);
        let tree = crate::graph::Graph::from_indices(vec!["t0".into(), "t1".into(), "t2".into()], [(0, 1), (1, 2)]).unwrap();
        let e = Embedding::from_parts(src, tree, vec![vec![0], vec![1], vec![2]], vec![0, 1, 2], Default::default()).unwrap();
        let r = verify(&e, &small()).unwrap();
        assert!(r.structure.pass);
        assert!(!r.relations.pass);
        assert!(!r.pass);
    }

    #[test]
    fn ball_cap_lowers_the_depth() {
        let e = build_embedding(&complete(3)).unwrap();
        let cfg = VerifyConfig {
            ball_cap: 100,
            ..VerifyConfig::default()
        };
        let inj = verify_injectivity_ball(&e, 4, &cfg);
        assert!(inj.depth < 4);
        assert!(inj.words_checked < 100);
    }
}
