//! Cayley's cubic `C_s(x,y,z) = s(x²+y²+z²) − s³ − 2xyz` over the positive
//! integers: evaluation, conjugation moves, reduction and the R-family.

mod graph;

pub use graph::{solution_graph, FrontierMark, GraphEdge, SolutionGraph};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::ExactRatio;
use crate::error::{Error, Result};
use crate::seqcore::{r_prefix, require_positive, RFamilyParams};

/// Selects one of the three positions of a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    A,
    B,
    C,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::A, Component::B, Component::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Component> {
        Self::ALL.get(i).copied()
    }

    fn others(self) -> (usize, usize) {
        match self {
            Component::A => (1, 2),
            Component::B => (0, 2),
            Component::C => (0, 1),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::A => "a",
            Component::B => "b",
            Component::C => "c",
        })
    }
}

/// Positive integers `(a, b, c)` together with the surface parameter `s`.
///
/// Positions are kept as given; [`Triple::canonical`] sorts them ascending.
/// Ordering compares `s` first, then the components lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    s: BigInt,
    v: [BigInt; 3],
}

impl Triple {
    pub fn new(
        s: impl Into<BigInt>,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self> {
        Self::from_parts(s.into(), [a.into(), b.into(), c.into()])
    }

    pub fn from_parts(s: BigInt, v: [BigInt; 3]) -> Result<Self> {
        require_positive("s", &s)?;
        for x in &v {
            require_positive("triple component", x)?;
        }
        Ok(Triple { s, v })
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn components(&self) -> &[BigInt; 3] {
        &self.v
    }

    pub fn get(&self, which: Component) -> &BigInt {
        &self.v[which.index()]
    }

    pub fn max_component(&self) -> &BigInt {
        self.v.iter().max().expect("three components")
    }

    /// Same triple with components sorted ascending.
    pub fn canonical(&self) -> Triple {
        let mut v = self.v.clone();
        v.sort();
        Triple {
            s: self.s.clone(),
            v,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.v[0] <= self.v[1] && self.v[1] <= self.v[2]
    }

    pub fn is_solution(&self) -> bool {
        eval_c(self).is_zero()
    }

    fn replaced(&self, which: Component, value: BigInt) -> Triple {
        debug_assert!(value.is_positive());
        let mut v = self.v.clone();
        v[which.index()] = value;
        Triple {
            s: self.s.clone(),
            v,
        }
    }

    fn ensure_solution(&self) -> Result<()> {
        let value = eval_c(self);
        if value.is_zero() {
            Ok(())
        } else {
            Err(Error::NotASolution {
                triple: Box::new(self.clone()),
                value,
            })
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.v[0], self.v[1], self.v[2])
    }
}

/// `s(a²+b²+c²) − s³ − 2abc` on raw integers of any sign.
pub fn cayley_form(s: &BigInt, a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    s * (a * a + b * b + c * c) - s * s * s - BigInt::from(2) * a * b * c
}

pub fn eval_c(t: &Triple) -> BigInt {
    let [a, b, c] = &t.v;
    cayley_form(&t.s, a, b, c)
}

fn conjugate_unchecked(t: &Triple, which: Component) -> ExactRatio {
    let (i, j) = which.others();
    let x = &t.v[which.index()];
    let two_yz = BigInt::from(2) * &t.v[i] * &t.v[j];
    ExactRatio::new(two_yz - &t.s * x, t.s.clone())
}

/// The other root `x̄ = 2yz/s − x` of `C_s` read as a quadratic in the
/// selected component.
pub fn conjugate_component(t: &Triple, which: Component) -> Result<ExactRatio> {
    t.ensure_solution()?;
    Ok(conjugate_unchecked(t, which))
}

/// All three conjugates, in position order.
pub fn conjugates(t: &Triple) -> Result<[ExactRatio; 3]> {
    t.ensure_solution()?;
    Ok(Component::ALL.map(|c| conjugate_unchecked(t, c)))
}

/// Triples reached by one conjugation move, in position order.
///
/// Only integral, positive conjugates that differ from the current value
/// produce a neighbor.
pub fn neighbors(t: &Triple) -> Result<Vec<Triple>> {
    Ok(neighbor_moves(t)?.into_iter().map(|(_, w)| w).collect())
}

pub(crate) fn neighbor_moves(t: &Triple) -> Result<Vec<(Component, Triple)>> {
    t.ensure_solution()?;
    let mut out = Vec::with_capacity(3);
    for which in Component::ALL {
        let Some(value) = conjugate_unchecked(t, which).positive_integer() else {
            continue;
        };
        if &value == t.get(which) {
            continue;
        }
        let w = t.replaced(which, value);
        assert!(w.is_solution(), "conjugate of a solution must solve C_s");
        out.push((which, w));
    }
    Ok(out)
}

/// `(R_n(b), R_{n+m}(b), R_m(b))`, checked against `C_s = 0` before return.
pub fn family_triple(fam: &RFamilyParams, n: usize, m: usize) -> Result<Triple> {
    let r = r_prefix(fam, n + m + 1)?;
    let t = Triple::from_parts(
        fam.s().clone(),
        [r[n].clone(), r[n + m].clone(), r[m].clone()],
    )?;
    assert!(t.is_solution(), "R-family triple {t} fails C_{}", fam.s());
    Ok(t)
}

/// Shape flags of a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    /// `s = 1` and the multiset is `{x, x, 1}`.
    pub singular: bool,
    /// The multiset is `{s, p, p}` for some `p`.
    pub base: bool,
}

pub fn is_singular(t: &Triple) -> Shape {
    let base = base_value(t).is_some();
    let singular = base && t.s == BigInt::from(1);
    Shape { singular, base }
}

/// `p` when the multiset of `t` is `{s, p, p}`.
pub fn base_value(t: &Triple) -> Option<BigInt> {
    let c = t.canonical();
    let [x, y, z] = &c.v;
    if x == &t.s && y == z {
        Some(y.clone())
    } else if z == &t.s && x == y {
        Some(x.clone())
    } else {
        None
    }
}

/// Repeatedly swaps the largest component for its conjugate while that
/// conjugate is integral, positive and strictly smaller.
///
/// The returned trace starts with `t` and ends at the terminal triple.
/// Ties for the maximum go to the lowest position.
pub fn reduce(t: &Triple) -> Result<Vec<Triple>> {
    t.ensure_solution()?;
    let mut trace = vec![t.clone()];
    loop {
        let cur = trace.last().expect("non-empty trace");
        let max = cur.max_component();
        let which = Component::ALL
            .into_iter()
            .find(|&c| cur.get(c) == max)
            .expect("max is a component");
        let step = conjugate_unchecked(cur, which)
            .positive_integer()
            .filter(|v| v < max);
        match step {
            Some(v) => {
                let next = cur.replaced(which, v);
                trace.push(next);
            }
            None => return Ok(trace),
        }
    }
}

/// Subtractive Euclid path from `(n, m)` to a pair containing zero.
///
/// For `p ≥ 2` this mirrors the reduction of `(T_n(p), T_{n+m}(p), T_m(p))`
/// step for step.
pub fn euclid_index_path(n: usize, m: usize) -> Result<Vec<(usize, usize)>> {
    if n == 0 && m == 0 {
        return Err(Error::BothZero);
    }
    let mut path = vec![(n, m)];
    let (mut x, mut y) = (n, m);
    while x != 0 && y != 0 {
        if x <= y {
            y -= x;
        } else {
            x -= y;
        }
        path.push((x, y));
    }
    Ok(path)
}
