use std::io::Write;

use anyhow::{bail, Result};
use cayley_core::cayley::{
    base_value, cayley_form, family_triple, is_singular, reduce, solution_graph,
};
use cayley_core::export::{self, int, CLASSIFY_CSV_HEADER};
use cayley_core::markov::{
    breve_continuant, continuant, geodesic_sequence, markov_tree, r_match_search, BreveLevel,
    SearchBounds,
};
use cayley_core::pell::{
    pell_family_one, pell_family_two, pell_oracle_with, FamilySolution, Provenance,
};
use cayley_core::search::{classify, enumerate_solutions, family_membership, Membership};
use cayley_core::{PellInstance, PellSolution, RFamilyParams, Triple, Word};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::{Cli, Command, Format, Status};

const NOTE_CHEBYSHEV: &str =
    "note: T_n is the first-kind Chebyshev polynomial, T_0 = 1, T_1 = x, T_{n+1} = 2x T_n - T_{n-1}";
const NOTE_FAMILY_ONE: &str =
    "note: family one uses a = R*_{n-1}(y) and d = y^2 - s^2, so that z^2 - d a^2 = s^2";
const NOTE_FAMILY_TWO: &str =
    "note: family two uses a = s (R_{n+m} - R_{|n-m|}) / 2, so that a^2 - d z^2 = -s^2 d";

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<Status> {
    let g = &cli.global;
    let note = |text: &str| {
        if g.note_corrections {
            eprintln!("{text}");
        }
    };
    let name = command_name(&cli.command);
    let format = |default: Format, allowed: &[Format]| -> Result<Format> {
        let f = g.format.unwrap_or(default);
        if !allowed.contains(&f) {
            bail!("{name} does not support --format {}", format_name(f));
        }
        Ok(f)
    };

    match &cli.command {
        Command::Verify { s, triple } => {
            let f = format(Format::Json, &[Format::Json, Format::Text])?;
            let [a, b, c] = triple;
            let value = cayley_form(s, a, b, c);
            let positive = triple.iter().all(|x| x > &BigInt::ZERO) && s > &BigInt::ZERO;
            let solution = positive && value == BigInt::ZERO;
            match f {
                Format::Json => line(out, &json!({"value": int(&value), "solution": solution}))?,
                _ => writeln!(out, "value={value} solution={solution}")?,
            }
            Ok(if solution { Status::Ok } else { Status::Failed })
        }

        Command::Family { s, b, n, m } => {
            let f = format(Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
            note(NOTE_CHEBYSHEV);
            let fam = RFamilyParams::new(s.clone(), b.clone())?;
            let t = family_triple(&fam, *n, *m)?;
            match f {
                Format::Json => line(
                    out,
                    &json!({"s": int(s), "b": int(b), "n": n, "m": m, "triple": export::triple(&t)}),
                )?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["s", "a", "b", "c"])?;
                    w.write_record(triple_record(&t))?;
                    w.flush()?;
                }
                _ => writeln!(out, "{t}")?,
            }
            Ok(Status::Ok)
        }

        Command::Graph { s, triple, bound } => {
            let f = format(Format::Json, &[Format::Json, Format::Dot, Format::Text])?;
            let seed = Triple::from_parts(s.clone(), triple.clone())?;
            let graph = solution_graph(&seed, bound)?;
            match f {
                Format::Json => line(out, &export::graph_json(&graph))?,
                Format::Dot => write!(out, "{}", export::graph_dot(&graph))?,
                _ => {
                    for (i, v) in graph.vertices.iter().enumerate() {
                        writeln!(out, "{i}: {v}")?;
                    }
                    for e in &graph.edges {
                        writeln!(out, "{} -- {} ({})", e.from, e.to, e.component)?;
                    }
                    for fr in &graph.frontier {
                        writeln!(
                            out,
                            "{} -> {} ({}, beyond bound)",
                            fr.vertex, fr.value, fr.component
                        )?;
                    }
                }
            }
            Ok(Status::Ok)
        }

        Command::Reduce { s, triple } => {
            let f = format(Format::Json, &[Format::Json, Format::Text])?;
            let t = Triple::from_parts(s.clone(), triple.clone())?;
            let trace = reduce(&t)?;
            let terminal = trace.last().expect("trace is never empty");
            let shape = is_singular(terminal);
            let base = base_value(terminal);
            let membership = family_membership(&t)?;
            match f {
                Format::Json => {
                    let family = match &membership {
                        Membership::Member(fi) => json!({"b": int(&fi.b), "n": fi.n, "m": fi.m}),
                        _ => Value::Null,
                    };
                    line(
                        out,
                        &json!({
                            "s": int(s),
                            "trace": trace.iter().map(export::triple).collect::<Vec<_>>(),
                            "singular": shape.singular,
                            "base": base.as_ref().map(int),
                            "family": family,
                        }),
                    )?
                }
                _ => {
                    for step in &trace {
                        writeln!(out, "{step}")?;
                    }
                    match &membership {
                        Membership::Member(fi) => {
                            writeln!(out, "family b={} n={} m={}", fi.b, fi.n, fi.m)?
                        }
                        Membership::NotBase { .. } => {
                            writeln!(out, "family none (not a base triple)")?
                        }
                        Membership::NonIntegralFamily { p, .. } => {
                            writeln!(out, "family none (s does not divide 2*{p})")?
                        }
                    }
                }
            }
            Ok(Status::Ok)
        }

        Command::PellOne { s, y, n, count } => {
            let f = format(Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
            note(NOTE_FAMILY_ONE);
            let fam = RFamilyParams::new(s.clone(), y.clone())?;
            let found = (*n..*n + *count)
                .map(|k| pell_family_one(&fam, k))
                .collect::<Result<Vec<_>, _>>()?;
            emit_family(out, f, &found, Provenance::FamilyOne)?;
            Ok(Status::Ok)
        }

        Command::PellTwo { s, p, n, m, count } => {
            let f = format(Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
            note(NOTE_FAMILY_TWO);
            let fam = RFamilyParams::new(s.clone(), p.clone())?;
            let found = (*m..*m + *count)
                .map(|k| pell_family_two(&fam, *n, k))
                .collect::<Result<Vec<_>, _>>()?;
            emit_family(out, f, &found, Provenance::FamilyTwo)?;
            Ok(Status::Ok)
        }

        Command::PellOracle {
            d,
            rhs,
            bound,
            form,
            include_zero,
        } => {
            let f = format(Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
            let inst = PellInstance::new(d.clone(), rhs.clone(), *form)?;
            let sols = pell_oracle_with(&inst, *bound, *include_zero);
            emit_pell(out, f, &inst, &sols, Provenance::Oracle)?;
            Ok(Status::Ok)
        }

        Command::Search { s, bound } => {
            let f = format(Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
            let sols = enumerate_solutions(*s, *bound, g.budget)?;
            match f {
                Format::Json => line(
                    out,
                    &json!({
                        "s": s,
                        "bound": bound,
                        "solutions": sols.iter().map(export::triple).collect::<Vec<_>>(),
                    }),
                )?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["s", "a", "b", "c"])?;
                    for t in &sols {
                        w.write_record(triple_record(t))?;
                    }
                    w.flush()?;
                }
                _ => {
                    for t in &sols {
                        writeln!(out, "{t}")?;
                    }
                }
            }
            Ok(Status::Ok)
        }

        Command::Classify { s, bound } => {
            let f = format(Format::Csv, &[Format::Json, Format::Csv, Format::Text])?;
            note(NOTE_CHEBYSHEV);
            let rows = classify(*s, *bound, g.budget)?;
            match f {
                Format::Json => {
                    for c in &rows {
                        line(out, &export::classification_json(c))?;
                    }
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(CLASSIFY_CSV_HEADER)?;
                    for c in &rows {
                        w.write_record(export::classification_record(c))?;
                    }
                    w.flush()?;
                }
                _ => {
                    for c in &rows {
                        writeln!(out, "{} {}", c.triple, c.tags().join(" "))?;
                    }
                }
            }
            Ok(Status::Ok)
        }

        Command::MarkovTree { depth } => {
            let f = format(Format::Json, &[Format::Json, Format::Dot, Format::Text])?;
            let tree = markov_tree(*depth)?;
            match f {
                Format::Json => line(out, &export::markov_tree_json(&tree))?,
                Format::Dot => write!(out, "{}", export::markov_tree_dot(&tree))?,
                _ => {
                    for v in &tree.vertices {
                        writeln!(out, "{v}")?;
                    }
                }
            }
            Ok(Status::Ok)
        }

        Command::Continuant { word, beta, count } => {
            let f = format(Format::Json, &[Format::Json, Format::Text])?;
            let w = Word::new(word.clone())?;
            let k = continuant(&w);
            let k1 = breve_continuant(&w, BreveLevel::One).ok();
            let k2 = breve_continuant(&w, BreveLevel::Two).ok();
            let geodesic = match beta {
                Some(b) => Some(geodesic_sequence(&w, &Word::new(b.clone())?, *count)?),
                None => None,
            };
            match f {
                Format::Json => {
                    let mut v = json!({
                        "word": word,
                        "continuant": int(&k),
                        "breve": k1.as_ref().map(int),
                        "breve2": k2.as_ref().map(int),
                    });
                    if let (Some(seq), Some(b)) = (&geodesic, beta) {
                        v["beta"] = json!(b);
                        v["multiplier"] = json!(seq.multiplier.to_string());
                        v["geodesic"] = Value::Array(seq.terms.iter().map(int).collect());
                    }
                    line(out, &v)?
                }
                _ => {
                    let opt = |x: &Option<BigInt>| x.as_ref().map_or("-".into(), BigInt::to_string);
                    writeln!(out, "K={k} breve={} breve2={}", opt(&k1), opt(&k2))?;
                    if let Some(seq) = &geodesic {
                        let terms: Vec<String> = seq.terms.iter().map(BigInt::to_string).collect();
                        writeln!(
                            out,
                            "multiplier={} geodesic={}",
                            seq.multiplier,
                            terms.join(",")
                        )?;
                    }
                }
            }
            Ok(Status::Ok)
        }

        Command::RMatch {
            max_entry,
            max_len,
            max_terms,
        } => {
            let f = format(Format::Json, &[Format::Json, Format::Text])?;
            if *max_entry == 0 || *max_len < 2 || *max_terms == 0 {
                bail!("r-match needs max-entry >= 1, max-len >= 2 and max-terms >= 1");
            }
            let report = r_match_search(SearchBounds {
                max_entry: *max_entry,
                max_len: *max_len,
                max_terms: *max_terms,
            });
            match f {
                Format::Json => line(out, &export::r_match_json(&report))?,
                _ => {
                    writeln!(
                        out,
                        "examined={} s1_candidates={} s1_coincidences={} matches_s_ge_2={}",
                        report.examined,
                        report.s1_candidates,
                        report.s1_coincidences.len(),
                        report.matches_s_ge_2.len()
                    )?;
                    for m in &report.matches_s_ge_2 {
                        writeln!(
                            out,
                            "match s={} b={} alpha={} beta={}",
                            m.s, m.b, m.alpha, m.beta
                        )?;
                    }
                }
            }
            Ok(if report.matches_s_ge_2.is_empty() {
                Status::Ok
            } else {
                Status::Failed
            })
        }
    }
}

fn line(out: &mut impl Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(v)?)?;
    Ok(())
}

fn triple_record(t: &Triple) -> Vec<String> {
    std::iter::once(t.s())
        .chain(t.components())
        .map(BigInt::to_string)
        .collect()
}

fn emit_family(
    out: &mut impl Write,
    f: Format,
    found: &[FamilySolution],
    provenance: Provenance,
) -> Result<()> {
    // Consecutive indices of one family may solve different instances.
    let mut groups: Vec<(&PellInstance, Vec<PellSolution>)> = Vec::new();
    for fs in found {
        match groups.last_mut() {
            Some((inst, sols)) if *inst == &fs.instance => sols.push(fs.solution.clone()),
            _ => groups.push((&fs.instance, vec![fs.solution.clone()])),
        }
    }
    for (inst, sols) in groups {
        emit_pell(out, f, inst, &sols, provenance)?;
    }
    Ok(())
}

fn emit_pell(
    out: &mut impl Write,
    f: Format,
    inst: &PellInstance,
    sols: &[PellSolution],
    provenance: Provenance,
) -> Result<()> {
    match f {
        Format::Json => line(out, &export::pell_json(inst, sols, provenance))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["d", "rhs", "form", "z", "a"])?;
            for p in sols {
                w.write_record([
                    inst.d().to_string(),
                    inst.rhs().to_string(),
                    inst.form().to_string(),
                    p.z.to_string(),
                    p.a.to_string(),
                ])?;
            }
            w.flush()?;
        }
        _ => {
            let pairs: Vec<String> = sols.iter().map(|p| format!("({},{})", p.z, p.a)).collect();
            writeln!(out, "{}", pairs.join(","))?;
        }
    }
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Family { .. } => "family",
        Command::Graph { .. } => "graph",
        Command::Reduce { .. } => "reduce",
        Command::PellOne { .. } => "pell-one",
        Command::PellTwo { .. } => "pell-two",
        Command::PellOracle { .. } => "pell-oracle",
        Command::Search { .. } => "search",
        Command::Classify { .. } => "classify",
        Command::MarkovTree { .. } => "markov-tree",
        Command::Continuant { .. } => "continuant",
        Command::RMatch { .. } => "r-match",
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Dot => "dot",
        Format::Text => "text",
    }
}
