//! Markov triples, continuants and the continuant-versus-R-sequence search.
//!
//! Continuants are read off 2×2 matrix products: for a word `w` with
//! `M(x) = [[x, 1], [1, 0]]`,
//!
//! ```text
//! M(w₀)…M(wₙ) = [[K(w),        K̆(w)  ],
//!                [K(w₁…wₙ),    K̆₂(w) ]]
//! ```
//!
//! which fixes the edge conventions `K̆(()) = 0` and `K̆₂(w) = 0` for
//! `|w| = 1` used by the `*_extended` helpers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::ExactRatio;
use crate::cayley::Component;
use crate::error::{Error, Result};

/// Deepest tree [`markov_tree`] will build (about `2^depth` vertices).
pub const MAX_MARKOV_DEPTH: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkovTriple {
    v: [BigInt; 3],
}

impl MarkovTriple {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let v = [a.into(), b.into(), c.into()];
        for x in &v {
            crate::seqcore::require_positive("Markov component", x)?;
        }
        Ok(MarkovTriple { v })
    }

    pub fn components(&self) -> &[BigInt; 3] {
        &self.v
    }

    pub fn canonical(&self) -> MarkovTriple {
        let mut v = self.v.clone();
        v.sort();
        MarkovTriple { v }
    }

    pub fn is_solution(&self) -> bool {
        eval_m(self).is_zero()
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.v[0], self.v[1], self.v[2])
    }
}

/// `x² + y² + z² − 3xyz`.
pub fn eval_m(t: &MarkovTriple) -> BigInt {
    let [a, b, c] = &t.v;
    a * a + b * b + c * c - BigInt::from(3) * a * b * c
}

/// Replaces the selected component `x` by `3·(product of the others) − x`.
pub fn markov_neighbor(t: &MarkovTriple, which: Component) -> Result<MarkovTriple> {
    let value = eval_m(t);
    if !value.is_zero() {
        return Err(Error::NotMarkov {
            triple: Box::new(t.clone()),
            value,
        });
    }
    let i = which.index();
    let product: BigInt = (0..3).filter(|&j| j != i).map(|j| &t.v[j]).product();
    let replacement = BigInt::from(3) * product - &t.v[i];
    if !replacement.is_positive() {
        return Err(Error::NonPositiveResult { value: replacement });
    }
    let mut v = t.v.clone();
    v[i] = replacement;
    Ok(MarkovTriple { v })
}

/// Canonical Markov triples reachable from `(1,1,1)` within a number of moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovTree {
    /// Sorted ascending.
    pub vertices: Vec<MarkovTriple>,
    /// Index of the vertex that first reached each vertex; `None` for the root.
    pub parents: Vec<Option<usize>>,
    /// Number of moves from the root.
    pub depths: Vec<usize>,
}

pub fn markov_tree(depth: usize) -> Result<MarkovTree> {
    if depth > MAX_MARKOV_DEPTH {
        return Err(Error::DepthExceeded {
            depth,
            cap: MAX_MARKOV_DEPTH,
        });
    }
    let root = MarkovTriple::new(1, 1, 1)?;
    // vertex -> (parent, depth)
    let mut found: BTreeMap<MarkovTriple, (Option<MarkovTriple>, usize)> = BTreeMap::new();
    found.insert(root.clone(), (None, 0));
    let mut level = vec![root];
    for d in 1..=depth {
        let mut next = Vec::new();
        for v in &level {
            for which in Component::ALL {
                let w = markov_neighbor(v, which)?.canonical();
                if !found.contains_key(&w) {
                    found.insert(w.clone(), (Some(v.clone()), d));
                    next.push(w);
                }
            }
        }
        next.sort();
        level = next;
    }
    let vertices: Vec<MarkovTriple> = found.keys().cloned().collect();
    let index_of = |t: &MarkovTriple| vertices.binary_search(t).expect("known vertex");
    let parents = found
        .values()
        .map(|(p, _)| p.as_ref().map(index_of))
        .collect();
    let depths = found.values().map(|(_, d)| *d).collect();
    Ok(MarkovTree {
        vertices,
        parents,
        depths,
    })
}

/// Finite sequence of positive partial quotients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u64>);

impl Word {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if let Some(position) = entries.iter().position(|&e| e == 0) {
            return Err(Error::ZeroEntry { position });
        }
        Ok(Word(entries))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` repeated `k` times.
    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Every word of length `len` with entries in `1..=max_entry`, in
    /// lexicographic order.
    pub fn all_of_length(len: usize, max_entry: u64) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (1..=max_entry).map(move |e| {
                        let mut v = w.0.clone();
                        v.push(e);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn continuant_of(entries: &[u64]) -> BigInt {
    // Right to left: (K(suffix), K(suffix without its head)).
    let (mut k, mut k_prev) = (BigInt::one(), BigInt::zero());
    for &x in entries.iter().rev() {
        let next = &k * x + &k_prev;
        k_prev = std::mem::replace(&mut k, next);
    }
    k
}

/// `K(a₀, …, aₙ)` with `K() = 1`.
pub fn continuant(w: &Word) -> BigInt {
    continuant_of(&w.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BreveLevel {
    /// `K̆(w) = K(w without its last entry)`
    One,
    /// `K̆₂(w) = K(w without its first and last entries)`
    Two,
}

pub fn breve_continuant(w: &Word, level: BreveLevel) -> Result<BigInt> {
    let n = w.len();
    match level {
        BreveLevel::One if n >= 1 => Ok(continuant_of(&w.0[..n - 1])),
        BreveLevel::One => Err(Error::TooShort { len: n, need: 1 }),
        BreveLevel::Two if n >= 2 => Ok(continuant_of(&w.0[1..n - 1])),
        BreveLevel::Two => Err(Error::TooShort { len: n, need: 2 }),
    }
}

/// `K̆` with `K̆(()) = 0`.
pub fn breve_extended(w: &Word) -> BigInt {
    breve_continuant(w, BreveLevel::One).unwrap_or_default()
}

/// `K̆₂` with value 0 on words shorter than two.
pub fn breve2_extended(w: &Word) -> BigInt {
    breve_continuant(w, BreveLevel::Two).unwrap_or_default()
}

/// Splitting formula `K̆(α²β) = K(α)·K̆(αβ) + K̆(α)·K̆₂(αβ)`.
pub fn split_identity_check(alpha: &Word, beta: &Word) -> bool {
    let ab = alpha.concat(beta);
    let lhs = breve_extended(&alpha.pow(2).concat(beta));
    let rhs =
        continuant(alpha) * breve_extended(&ab) + breve_extended(alpha) * breve2_extended(&ab);
    lhs == rhs
}

/// `K̆(α²)·K̆(λαρ) = K̆(α)·(K̆(λα²ρ) + K̆(λρ))`, the cross-multiplied form of
/// `K̆(α²)/K̆(α) = (K̆(λα²ρ) + K̆(λρ))/K̆(λαρ)`.
pub fn geodesic_ratio_check(alpha: &Word, lambda: &Word, rho: &Word) -> bool {
    let wrap = |core: &Word| breve_extended(&lambda.concat(core).concat(rho));
    let lhs = breve_extended(&alpha.pow(2)) * wrap(alpha);
    let rhs = breve_extended(alpha) * (wrap(&alpha.pow(2)) + wrap(&Word::empty()));
    lhs == rhs
}

/// `K̆(β), K̆(αβ), K̆(α²β), …` generated by the three-term recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicSequence {
    /// `K̆(α²)/K̆(α)`.
    pub multiplier: ExactRatio,
    pub terms: Vec<BigInt>,
}

/// Generates `count` terms of `K̆(α^k β)` by
/// `K̆(α^{k+1}β) = μ·K̆(α^kβ) − K̆(α^{k−1}β)`, `μ = K̆(α²)/K̆(α)`,
/// checking each term against direct evaluation.
pub fn geodesic_sequence(alpha: &Word, beta: &Word, count: usize) -> Result<GeodesicSequence> {
    if alpha.len() % 2 == 1 {
        return Err(Error::OddAlpha { len: alpha.len() });
    }
    if alpha.is_empty() {
        return Err(Error::TooShort { len: 0, need: 2 });
    }
    let mu = BigRational::new(breve_extended(&alpha.pow(2)), breve_extended(alpha));
    let direct = |k: usize| breve_extended(&alpha.pow(k).concat(beta));

    let mut terms: Vec<BigInt> = Vec::with_capacity(count);
    for k in 0..count {
        let term = if k < 2 {
            direct(k)
        } else {
            let next = &mu * BigRational::from_integer(terms[k - 1].clone())
                - BigRational::from_integer(terms[k - 2].clone());
            assert!(next.is_integer(), "non-integral recurrence term {next}");
            let next = next.to_integer();
            assert_eq!(
                next,
                direct(k),
                "recurrence disagrees with direct evaluation"
            );
            next
        };
        terms.push(term);
    }
    Ok(GeodesicSequence {
        multiplier: mu.into(),
        terms,
    })
}

pub const DEFAULT_MAX_ENTRY: u64 = 3;
pub const DEFAULT_MAX_LEN: usize = 4;
pub const DEFAULT_MAX_TERMS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_entry: u64,
    /// Applies to both α (even lengths only) and β.
    pub max_len: usize,
    pub max_terms: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_entry: DEFAULT_MAX_ENTRY,
            max_len: DEFAULT_MAX_LEN,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

/// A pair `(α, β)` whose continuant sequence agrees with `R_k(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub alpha: Word,
    pub beta: Word,
    pub s: BigInt,
    pub b: BigInt,
    pub terms: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatchReport {
    pub bounds: SearchBounds,
    pub examined: usize,
    /// Pairs with `K̆(β) = 1`, each compared against `T_k(b)`.
    pub s1_candidates: usize,
    pub matches_s_ge_2: Vec<Finding>,
    pub s1_coincidences: Vec<Finding>,
}

enum Outcome {
    Skipped,
    Compared {
        s_is_one: bool,
        hit: Option<Finding>,
    },
}

fn compare_pair(alpha: &Word, beta: &Word, max_terms: usize) -> Outcome {
    let s = breve_extended(beta);
    if s.is_zero() {
        return Outcome::Skipped;
    }
    let seq = geodesic_sequence(alpha, beta, max_terms).expect("alpha is even and non-empty");
    let b = breve_extended(&alpha.concat(beta));

    // R_0 = s, R_1 = b, R_{k+1} = (2b/s)·R_k − R_{k−1}, in exact rationals.
    let k = BigRational::new(&b * 2, s.clone());
    let (mut r0, mut r1) = (
        BigRational::from_integer(s.clone()),
        BigRational::from_integer(b.clone()),
    );
    let mut hit = true;
    for term in &seq.terms {
        if r0 != BigRational::from_integer(term.clone()) {
            hit = false;
            break;
        }
        let r2 = &k * &r1 - &r0;
        r0 = std::mem::replace(&mut r1, r2);
    }
    let s_is_one = s.is_one();
    Outcome::Compared {
        s_is_one,
        hit: hit.then(|| Finding {
            alpha: alpha.clone(),
            beta: beta.clone(),
            s,
            b,
            terms: seq.terms,
        }),
    }
}

/// Exhaustively compares continuant sequences `K̆(α^k β)` against the
/// R-sequence with `s = K̆(β)` and `b = K̆(αβ)`, aligned at index 0.
pub fn r_match_search(bounds: SearchBounds) -> RMatchReport {
    let alphas: Vec<Word> = (2..=bounds.max_len)
        .step_by(2)
        .flat_map(|len| Word::all_of_length(len, bounds.max_entry))
        .collect();
    let betas: Vec<Word> = (0..=bounds.max_len)
        .flat_map(|len| Word::all_of_length(len, bounds.max_entry))
        .collect();

    let outcomes: Vec<Outcome> = alphas
        .par_iter()
        .flat_map_iter(|a| {
            betas
                .iter()
                .map(move |b| compare_pair(a, b, bounds.max_terms))
        })
        .collect();

    let mut report = RMatchReport {
        bounds,
        examined: 0,
        s1_candidates: 0,
        matches_s_ge_2: Vec::new(),
        s1_coincidences: Vec::new(),
    };
    for outcome in outcomes {
        let Outcome::Compared { s_is_one, hit } = outcome else {
            continue;
        };
        report.examined += 1;
        if s_is_one {
            report.s1_candidates += 1;
        }
        match (hit, s_is_one) {
            (Some(f), true) => report.s1_coincidences.push(f),
            (Some(f), false) => report.matches_s_ge_2.push(f),
            (None, _) => {}
        }
    }
    report
}
