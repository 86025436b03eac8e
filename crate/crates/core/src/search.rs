//! Bounded exhaustive enumeration of `C_s` solutions and their
//! classification.
//!
//! For each pair `a ≤ b` the equation is solved for `c` exactly:
//! `c = (ab ± √((a²−s²)(b²−s²)))/s`, so the work is one square-root test per
//! pair rather than a scan over `c`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{exact_sqrt, exact_sqrt_u128, ExactRatio};
use crate::cayley::{base_value, conjugates, neighbor_moves, reduce, Triple};
use crate::error::{Error, Result};
use crate::seqcore::{r_val, PrefixCache, RFamilyParams};

/// Default cap on the number of quadratic solves per enumeration.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

fn quadratic_solves(bound: u64) -> u128 {
    let b = bound as u128;
    b * (b + 1) / 2
}

/// All canonical solutions `a ≤ b ≤ c ≤ bound`, ascending.
pub fn enumerate_solutions(s: u64, bound: u64, budget: u128) -> Result<Vec<Triple>> {
    if s == 0 {
        return Err(Error::NonPositive {
            what: "s",
            value: BigInt::zero(),
        });
    }
    let needed = quadratic_solves(bound);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let small = s < (1 << 31) && bound < (1 << 31);
    let rows: Vec<Vec<[u64; 3]>> = (1..=bound)
        .into_par_iter()
        .map(|a| {
            if small {
                row_small(s, a, bound)
            } else {
                row_big(s, a, bound)
            }
        })
        .collect();
    Ok(rows
        .into_iter()
        .flatten()
        .map(|[a, b, c]| Triple::new(s, a, b, c).expect("positive components"))
        .collect())
}

// All c-roots for a fixed a; components below 2^31 keep every product in i128.
fn row_small(s: u64, a: u64, bound: u64) -> Vec<[u64; 3]> {
    let (s, a_i) = (s as i128, a as i128);
    let fa = a_i * a_i - s * s;
    let mut out = Vec::new();
    for b in a..=bound {
        let b_i = b as i128;
        let disc = fa * (b_i * b_i - s * s);
        if disc < 0 {
            continue;
        }
        let Some(r) = exact_sqrt_u128(disc as u128) else {
            continue;
        };
        let (ab, r) = (a_i * b_i, r as i128);
        let mut push = |num: i128| {
            if num > 0 && num % s == 0 {
                let c = num / s;
                if c >= b_i && c <= bound as i128 {
                    out.push([a, b, c as u64]);
                }
            }
        };
        push(ab - r);
        if r != 0 {
            push(ab + r);
        }
    }
    out
}

fn row_big(s: u64, a: u64, bound: u64) -> Vec<[u64; 3]> {
    let (s, a_b) = (BigInt::from(s), BigInt::from(a));
    let fa = &a_b * &a_b - &s * &s;
    let mut out = Vec::new();
    for b in a..=bound {
        let b_b = BigInt::from(b);
        let disc = &fa * (&b_b * &b_b - &s * &s);
        let Some(r) = exact_sqrt(&disc) else { continue };
        let ab = &a_b * &b_b;
        let mut roots = vec![&ab - &r];
        if !r.is_zero() {
            roots.push(&ab + &r);
        }
        for num in roots {
            let (c, rem) = num.div_rem(&s);
            if rem.is_zero() && c >= b_b {
                if let Some(c) = c.to_u64().filter(|&c| c <= bound) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// `(b, n, m)` with a triple equal to `(R_n(b), R_{n+m}(b), R_m(b))` up to order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyIndex {
    pub b: BigInt,
    pub n: usize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(FamilyIndex),
    /// Reduction stopped at a triple that is not of the form `{s, p, p}`.
    NotBase {
        terminal: Triple,
    },
    /// Reduction reached `{s, p, p}` but `s ∤ 2p`.
    NonIntegralFamily {
        terminal: Triple,
        p: BigInt,
    },
}

impl Membership {
    pub fn index(&self) -> Option<&FamilyIndex> {
        match self {
            Membership::Member(f) => Some(f),
            _ => None,
        }
    }
}

/// Recovers `(b, n, m)` from the reduction trace of `t`.
///
/// The trace ends at a base triple `(s, p, p)`; replaying it backwards
/// gives indices relative to `p`. When `p` itself is `R_k(b')` for a
/// smaller `b'`, the indices are rescaled by `k` (`R_n(R_k(b')) = R_{nk}(b')`)
/// so that `b` is the smallest base generating `t`.
pub fn family_membership(t: &Triple) -> Result<Membership> {
    family_membership_cached(t, &PrefixCache::new())
}

pub(crate) fn family_membership_cached(t: &Triple, cache: &PrefixCache) -> Result<Membership> {
    let trace = reduce(t)?;
    let terminal = trace.last().expect("non-empty trace").clone();
    let Some(p) = base_value(&terminal) else {
        return Ok(Membership::NotBase { terminal });
    };
    let s = t.s().clone();
    let fam = RFamilyParams::new(s.clone(), p.clone())?;
    if !fam.is_integral() {
        return Ok(Membership::NonIntegralFamily { terminal, p });
    }

    let (mut n, mut m) = if p == s {
        (0, 0)
    } else {
        let mut idx = terminal
            .components()
            .clone()
            .map(|v| if v == s { 0usize } else { 1 });
        for pair in trace.windows(2).rev() {
            let moved = (0..3)
                .find(|&i| pair[0].components()[i] != pair[1].components()[i])
                .expect("each step changes one position");
            idx[moved] = (0..3).filter(|&i| i != moved).map(|i| idx[i]).sum();
        }
        idx.sort_unstable();
        assert_eq!(idx[2], idx[0] + idx[1], "indices must form (n, n+m, m)");
        (idx[0], idx[1])
    };

    let mut b = p.clone();
    if p > s {
        let (root, k) = smallest_base(&s, &p)?;
        b = root;
        n *= k;
        m *= k;
    }

    let fam = RFamilyParams::new(s, b.clone())?;
    let mut expected = [
        cache.r_val(&fam, n)?,
        cache.r_val(&fam, n + m)?,
        cache.r_val(&fam, m)?,
    ];
    expected.sort();
    assert_eq!(
        &expected,
        t.canonical().components(),
        "recovered family does not reproduce {t}"
    );
    Ok(Membership::Member(FamilyIndex { b, n, m }))
}

/// Smallest `b' > s` with `s | 2b'` and `R_k(b') = p` for some `k ≥ 1`.
fn smallest_base(s: &BigInt, p: &BigInt) -> Result<(BigInt, usize)> {
    // b' must be a multiple of step = s / gcd(s, 2).
    let step = s / s.gcd(&BigInt::from(2));
    let j_min = s / &step + BigInt::one();
    let r_at = |k: usize, j: &BigInt| -> Result<BigInt> {
        r_val(&RFamilyParams::new(s.clone(), &step * j)?, k)
    };

    let mut best = (p.clone(), 1usize);
    for k in 2.. {
        if &r_at(k, &j_min)? > p {
            break;
        }
        let (mut lo, mut hi) = (j_min.clone(), p / &step);
        while lo <= hi {
            let mid = (&lo + &hi) / 2;
            match r_at(k, &mid)?.cmp(p) {
                std::cmp::Ordering::Equal => {
                    let b = &step * &mid;
                    if b < best.0 {
                        best = (b, k);
                    }
                    break;
                }
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid - 1,
            }
        }
    }
    Ok(best)
}

/// Tags attached to one enumerated solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Canonical (sorted) triple.
    pub triple: Triple,
    /// Conjugates of the three components, in canonical order.
    pub conjugates: [ExactRatio; 3],
    pub base: bool,
    pub family: Option<FamilyIndex>,
    /// Smallest index (into the classify output) of the conjugation
    /// component within the bound.
    pub component: usize,
    /// No conjugate is a positive integer.
    pub isolated: bool,
    /// Some integral conjugate move leaves the bound.
    pub frontier_limited: bool,
}

impl Classification {
    pub fn tags(&self) -> Vec<String> {
        let mut tags = Vec::new();
        if self.base {
            tags.push("base".to_string());
        }
        if let Some(f) = &self.family {
            tags.push(format!("r_family(b={},n={},m={})", f.b, f.n, f.m));
        }
        tags.push(format!("component={}", self.component));
        if self.isolated {
            tags.push("isolated".to_string());
        }
        if self.frontier_limited {
            tags.push("frontier_limited".to_string());
        }
        tags
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
    }
}

/// Enumerates and tags every solution with components `≤ bound`.
pub fn classify(s: u64, bound: u64, budget: u128) -> Result<Vec<Classification>> {
    let triples = enumerate_solutions(s, bound, budget)?;
    let index: HashMap<&Triple, usize> = triples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let bound_big = BigInt::from(bound);
    let cache = PrefixCache::new();

    struct Local {
        conjugates: [ExactRatio; 3],
        base: bool,
        family: Option<FamilyIndex>,
        links: Vec<usize>,
        isolated: bool,
        frontier_limited: bool,
    }

    let locals: Vec<Local> = triples
        .par_iter()
        .map(|t| -> Result<Local> {
            let conjugates = conjugates(t)?;
            let isolated = conjugates.iter().all(|c| c.positive_integer().is_none());
            let mut links = Vec::new();
            let mut frontier_limited = false;
            for (which, moved) in neighbor_moves(t)? {
                if moved.get(which) > &bound_big {
                    frontier_limited = true;
                } else {
                    links.push(index[&moved.canonical()]);
                }
            }
            let family = family_membership_cached(t, &cache)?.index().cloned();
            Ok(Local {
                conjugates,
                base: base_value(t).is_some(),
                family,
                links,
                isolated,
                frontier_limited,
            })
        })
        .collect::<Result<_>>()?;

    let mut sets = DisjointSet::new(triples.len());
    for (i, l) in locals.iter().enumerate() {
        for &j in &l.links {
            sets.union(i, j);
        }
    }
    let mut first_of_root = HashMap::new();
    let component: Vec<usize> = (0..triples.len())
        .map(|i| *first_of_root.entry(sets.find(i)).or_insert(i))
        .collect();

    Ok(triples
        .into_iter()
        .zip(locals)
        .zip(component)
        .map(|((triple, l), component)| Classification {
            triple,
            conjugates: l.conjugates,
            base: l.base,
            family: l.family,
            component,
            isolated: l.isolated,
            frontier_limited: l.frontier_limited,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::eval_c;

    fn t(s: i64, a: i64, b: i64, c: i64) -> Triple {
        Triple::new(s, a, b, c).unwrap()
    }

    /// O(bound³) scan over every sorted triple.
    fn brute_force(s: i64, bound: i64) -> Vec<Triple> {
        let mut out = vec![];
        for a in 1..=bound {
            for b in a..=bound {
                for c in b..=bound {
                    let tri = t(s, a, b, c);
                    if eval_c(&tri).is_zero() {
                        out.push(tri);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_cubic_scan() {
        for s in 1..=13 {
            assert_eq!(
                enumerate_solutions(s as u64, 60, DEFAULT_BUDGET).unwrap(),
                brute_force(s, 60)
            );
        }
    }

    #[test]
    fn big_path_matches_small_path() {
        for s in [1u64, 3, 12, 24] {
            let rows_small: Vec<_> = (1..=80).flat_map(|a| row_small(s, a, 80)).collect();
            let rows_big: Vec<_> = (1..=80).flat_map(|a| row_big(s, a, 80)).collect();
            assert_eq!(rows_small, rows_big);
        }
    }

    #[test]
    fn enumeration_examples() {
        let e = enumerate_solutions(12, 40, DEFAULT_BUDGET).unwrap();
        assert!(e.contains(&t(12, 13, 15, 20)));
        assert!(e.contains(&t(12, 15, 20, 37)));
        let e = enumerate_solutions(24, 80, DEFAULT_BUDGET).unwrap();
        assert!(e.contains(&t(24, 26, 51, 74)));
        let e = enumerate_solutions(5, 10, DEFAULT_BUDGET).unwrap();
        for p in 1..=10 {
            assert!(
                e.contains(&t(5, 5, p, p).canonical()),
                "missing (5,{p},{p})"
            );
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            enumerate_solutions(1, 100, 100),
            Err(Error::BudgetExceeded {
                needed: 5050,
                budget: 100
            })
        );
        assert!(enumerate_solutions(0, 10, 100).is_err());
    }

    #[test]
    fn membership_examples() {
        assert_eq!(
            family_membership(&t(3, 21, 4053, 291)).unwrap(),
            Membership::Member(FamilyIndex {
                b: BigInt::from(6),
                n: 2,
                m: 4
            })
        );
        assert!(matches!(
            family_membership(&t(24, 26, 51, 74)).unwrap(),
            Membership::NotBase { .. }
        ));
        assert!(matches!(
            family_membership(&t(7, 7, 9, 9)).unwrap(),
            Membership::NonIntegralFamily { .. }
        ));
        assert_eq!(
            family_membership(&t(1, 2, 26, 7)).unwrap().index(),
            Some(&FamilyIndex {
                b: BigInt::from(2),
                n: 1,
                m: 2
            })
        );
        assert_eq!(
            family_membership(&t(4, 4, 4, 4)).unwrap().index(),
            Some(&FamilyIndex {
                b: BigInt::from(4),
                n: 0,
                m: 0
            })
        );
        // p < s: (6, 3, 3) is R_0, R_1, R_1 of b = 3 with multiplier 1.
        assert_eq!(
            family_membership(&t(6, 6, 3, 3)).unwrap().index(),
            Some(&FamilyIndex {
                b: BigInt::from(3),
                n: 0,
                m: 1
            })
        );
    }

    #[test]
    fn smallest_base_descends() {
        let big = BigInt::from;
        assert_eq!(smallest_base(&big(3), &big(21)).unwrap(), (big(6), 2));
        assert_eq!(smallest_base(&big(3), &big(4053)).unwrap(), (big(6), 6));
        assert_eq!(smallest_base(&big(1), &big(7)).unwrap(), (big(2), 2));
        assert_eq!(smallest_base(&big(1), &big(8)).unwrap(), (big(8), 1));
        // 1351 = T_6(2) = T_3(7) = T_2(26): the smallest base wins.
        assert_eq!(smallest_base(&big(1), &big(1351)).unwrap(), (big(2), 6));
    }

    #[test]
    fn isolated_and_pair() {
        let c = classify(24, 80, DEFAULT_BUDGET).unwrap();
        let iso = c.iter().find(|x| x.triple == t(24, 26, 51, 74)).unwrap();
        assert!(iso.isolated);
        assert_eq!(
            iso.conjugates.clone().map(|r| r.to_string()),
            ["577/2", "328/3", "73/2"]
        );

        let c = classify(12, 40, DEFAULT_BUDGET).unwrap();
        let a = c.iter().find(|x| x.triple == t(12, 13, 15, 20)).unwrap();
        let members: Vec<_> = c.iter().filter(|x| x.component == a.component).collect();
        assert_eq!(members.len(), 2);
        assert!(members.iter().all(|x| x.family.is_none()));
    }

    #[test]
    fn s1_all_family() {
        let c = classify(1, 100, DEFAULT_BUDGET).unwrap();
        assert!(c.iter().all(|x| x.family.is_some()));
    }
}
