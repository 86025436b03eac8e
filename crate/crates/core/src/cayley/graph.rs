use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;

use super::{neighbor_moves, Triple};
use crate::error::{Error, Result};

/// An edge between two vertices. `component` is the position, in the
/// canonical (sorted) order of `from`, whose value was conjugated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub component: usize,
}

/// A conjugate that leads out of the bound.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FrontierMark {
    pub vertex: usize,
    pub component: usize,
    pub value: BigInt,
}

/// Conjugation graph of solutions with every maximal component `≤ bound`.
///
/// Vertices are canonical triples in ascending order; edges satisfy
/// `from < to` and appear once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionGraph {
    pub s: BigInt,
    pub bound: BigInt,
    pub vertices: Vec<Triple>,
    pub edges: Vec<GraphEdge>,
    pub frontier: Vec<FrontierMark>,
}

impl SolutionGraph {
    pub fn index_of(&self, t: &Triple) -> Option<usize> {
        self.vertices.binary_search(&t.canonical()).ok()
    }

    /// Vertices adjacent to `v`, ascending.
    pub fn adjacent(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.from == v {
                    Some(e.to)
                } else if e.to == v {
                    Some(e.from)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Breadth-first closure of conjugation moves from `seed`.
pub fn solution_graph(seed: &Triple, bound: &BigInt) -> Result<SolutionGraph> {
    let seed = seed.canonical();
    seed.ensure_solution()?;
    if seed.max_component() > bound {
        return Err(Error::BoundTooSmall {
            bound: bound.clone(),
            max: seed.max_component().clone(),
        });
    }

    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seed.clone());
    queue.push_back(seed.clone());
    while let Some(v) = queue.pop_front() {
        for (_, w) in neighbor_moves(&v)? {
            let w = w.canonical();
            if w.max_component() <= bound && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }

    let vertices: Vec<Triple> = seen.into_iter().collect();
    let index: BTreeMap<&Triple, usize> =
        vertices.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = BTreeSet::new();
    let mut linked = BTreeSet::new();
    let mut frontier = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for (which, moved) in neighbor_moves(v)? {
            if moved.get(which) > bound {
                frontier.push(FrontierMark {
                    vertex: i,
                    component: which.index(),
                    value: moved.get(which).clone(),
                });
                continue;
            }
            let w = moved.canonical();
            let j = index[&w];
            if i < j && linked.insert((i, j)) {
                edges.insert(GraphEdge {
                    from: i,
                    to: j,
                    component: which.index(),
                });
            }
        }
    }

    Ok(SolutionGraph {
        s: seed.s().clone(),
        bound: bound.clone(),
        vertices,
        edges: edges.into_iter().collect(),
        frontier,
    })
}
