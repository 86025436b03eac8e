//! Wire formats: JSON values, DOT graphs and CSV records.
//!
//! Integers are written as JSON numbers in full decimal, however large.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Number, Value};

use crate::cayley::{SolutionGraph, Triple};
use crate::markov::{Finding, MarkovTree, RMatchReport};
use crate::pell::{PellInstance, PellSolution, Provenance};
use crate::search::Classification;

pub fn int(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integer"))
}

pub fn triple(t: &Triple) -> Value {
    Value::Array(t.components().iter().map(int).collect())
}

/// `{"s":…, "bound":…, "vertices":[[a,b,c],…], "edges":[[i,j,component],…],
/// "frontier":[[i,component,value],…]}`
pub fn graph_json(g: &SolutionGraph) -> Value {
    json!({
        "s": int(&g.s),
        "bound": int(&g.bound),
        "vertices": g.vertices.iter().map(triple).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|e| json!([e.from, e.to, e.component])).collect::<Vec<_>>(),
        "frontier": g
            .frontier
            .iter()
            .map(|f| json!([f.vertex, f.component, int(&f.value)]))
            .collect::<Vec<_>>(),
    })
}

pub fn graph_dot(g: &SolutionGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph cayley_s{} {{", g.s).unwrap();
    for (i, v) in g.vertices.iter().enumerate() {
        writeln!(out, "  v{i} [label=\"{v}\"];").unwrap();
    }
    for e in &g.edges {
        writeln!(
            out,
            "  v{} -- v{} [label=\"{}\"];",
            e.from, e.to, e.component
        )
        .unwrap();
    }
    for (k, f) in g.frontier.iter().enumerate() {
        writeln!(out, "  f{k} [label=\"{}\", shape=plaintext];", f.value).unwrap();
        writeln!(
            out,
            "  v{} -- f{k} [label=\"{}\", style=dashed];",
            f.vertex, f.component
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// `{"d":…, "rhs":…, "form":"z2-da2"|"a2-dz2", "solutions":[[z,a],…], "provenance":…}`
pub fn pell_json(inst: &PellInstance, solutions: &[PellSolution], provenance: Provenance) -> Value {
    json!({
        "d": int(inst.d()),
        "rhs": int(inst.rhs()),
        "form": inst.form().as_str(),
        "solutions": solutions.iter().map(|p| json!([int(&p.z), int(&p.a)])).collect::<Vec<_>>(),
        "provenance": provenance.as_str(),
    })
}

fn finding_json(f: &Finding) -> Value {
    json!({
        "alpha": f.alpha.entries(),
        "beta": f.beta.entries(),
        "s": int(&f.s),
        "b": int(&f.b),
        "terms": f.terms.iter().map(int).collect::<Vec<_>>(),
    })
}

pub fn r_match_json(r: &RMatchReport) -> Value {
    json!({
        "bounds": {
            "max_entry": r.bounds.max_entry,
            "max_len": r.bounds.max_len,
            "max_terms": r.bounds.max_terms,
        },
        "examined": r.examined,
        "s1_candidates": r.s1_candidates,
        "matches_s_ge_2": r.matches_s_ge_2.iter().map(finding_json).collect::<Vec<_>>(),
        "s1_coincidences": r.s1_coincidences.iter().map(finding_json).collect::<Vec<_>>(),
    })
}

pub fn markov_tree_json(t: &MarkovTree) -> Value {
    json!({
        "vertices": t
            .vertices
            .iter()
            .map(|v| Value::Array(v.components().iter().map(int).collect()))
            .collect::<Vec<_>>(),
        "parents": t.parents,
        "depths": t.depths,
    })
}

/// Tree edges run from parent to child.
pub fn markov_tree_dot(t: &MarkovTree) -> String {
    let mut out = String::from("digraph markov {\n");
    for (i, v) in t.vertices.iter().enumerate() {
        writeln!(out, "  m{i} [label=\"{v}\"];").unwrap();
    }
    for (i, p) in t.parents.iter().enumerate() {
        if let Some(p) = p {
            writeln!(out, "  m{p} -> m{i};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub const CLASSIFY_CSV_HEADER: [&str; 8] =
    ["s", "a", "b", "c", "tags", "conj_a", "conj_b", "conj_c"];

pub fn classification_record(c: &Classification) -> Vec<String> {
    let [a, b, cc] = c.triple.components();
    let mut rec = vec![
        c.triple.s().to_string(),
        a.to_string(),
        b.to_string(),
        cc.to_string(),
        c.tags().join(";"),
    ];
    rec.extend(c.conjugates.iter().map(|r| r.to_string()));
    rec
}

pub fn classification_json(c: &Classification) -> Value {
    json!({
        "s": int(c.triple.s()),
        "triple": triple(&c.triple),
        "tags": c.tags(),
        "conjugates": c.conjugates.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    })
}
