//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use cayley_core::cayley::{cayley_form, conjugates, eval_c, family_triple, solution_graph};
use cayley_core::markov::{
    eval_m, geodesic_ratio_check, geodesic_sequence, markov_neighbor, markov_tree, r_match_search,
    split_identity_check, SearchBounds,
};
use cayley_core::pell::{
    pell_family_one, pell_family_two, pell_oracle, verify_pell, PellForm, PellInstance,
    PellSolution,
};
use cayley_core::search::{classify, enumerate_solutions, DEFAULT_BUDGET};
use cayley_core::seqcore::{r_prefix, r_star_val, r_val};
use cayley_core::{Component, RFamilyParams, Triple, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ints(vals: &[i64]) -> Vec<BigInt> {
    vals.iter().copied().map(big).collect()
}

fn chain_s3_b6() -> Outcome {
    let fam = RFamilyParams::new(3, 6).map_err(|e| e.to_string())?;
    let t = family_triple(&fam, 2, 4).map_err(|e| e.to_string())?;
    ensure!(
        t.components() == &ints(&[21, 4053, 291])[..],
        "family gave {t}"
    );
    ensure!(eval_c(&t).is_zero(), "C_3 of {t} is {}", eval_c(&t));
    ensure!(
        cayley_form(&big(3), &big(21), &big(56451), &big(4053)).is_zero(),
        "C_3(21,56451,4053) is not zero"
    );

    let g = solution_graph(&t, &big(1_000_000)).map_err(|e| e.to_string())?;
    let at = g.index_of(&t).ok_or("seed missing from graph")?;
    let reached: BTreeSet<Triple> = g
        .adjacent(at)
        .into_iter()
        .map(|i| g.vertices[i].clone())
        .collect();
    for expected in [[21, 4053, 56451], [291, 4053, 786261]] {
        let want =
            Triple::new(3, expected[0], expected[1], expected[2]).map_err(|e| e.to_string())?;
        ensure!(reached.contains(&want), "{want} is not adjacent to {t}");
    }
    Ok(())
}

fn pell_table() -> Outcome {
    let expected = [(2, 1), (7, 4), (26, 15), (97, 56), (362, 209), (1351, 780)]
        .map(|(z, a)| PellSolution::new(z, a))
        .to_vec();
    let fam = RFamilyParams::new(1, 2).map_err(|e| e.to_string())?;
    let mut got = Vec::new();
    for n in 1..=6 {
        let r = pell_family_one(&fam, n).map_err(|e| e.to_string())?;
        ensure!(
            r.instance.d() == &big(3) && r.instance.rhs() == &big(1),
            "wrong instance at n={n}"
        );
        got.push(r.solution);
    }
    ensure!(got == expected, "family-one gave {got:?}");
    let inst = PellInstance::new(3, 1, PellForm::ZSquared).map_err(|e| e.to_string())?;
    let oracle = pell_oracle(&inst, 1400);
    ensure!(oracle == expected, "oracle gave {oracle:?}");
    Ok(())
}

fn pell_960() -> Outcome {
    let fam = RFamilyParams::new(1, 4).map_err(|e| e.to_string())?;
    let expected = [(4, 120), (31, 960), (244, 7560)];
    for (m, (z, a)) in (1..=3).zip(expected) {
        let r = pell_family_two(&fam, 2, m).map_err(|e| e.to_string())?;
        ensure!(
            r.solution == PellSolution::new(z, a),
            "m={m}: got {:?}",
            r.solution
        );
        ensure!(
            r.instance.d() == &big(960) && r.instance.rhs() == &big(-960),
            "m={m}: instance d={} rhs={}",
            r.instance.d(),
            r.instance.rhs()
        );
        ensure!(
            verify_pell(&r.instance, &r.solution),
            "m={m} fails a²−960z²=−960"
        );
        ensure!(
            big(a) * big(a) - big(960) * big(z) * big(z) == big(-960),
            "m={m} direct check"
        );
    }
    Ok(())
}

fn isolated_solutions() -> Outcome {
    let rows = classify(24, 80, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let target = Triple::new(24, 26, 51, 74).map_err(|e| e.to_string())?;
    let row = rows
        .iter()
        .find(|c| c.triple == target)
        .ok_or("(26,51,74) not found")?;
    ensure!(row.isolated, "(26,51,74) not tagged isolated");
    // positional: conjugates of 26, 51, 74 respectively
    let want = [(577, 2), (328, 3), (73, 2)].map(|(n, d)| BigRational::new(big(n), big(d)));
    for (got, want) in row.conjugates.iter().zip(&want) {
        ensure!(got.as_rational() == want, "conjugate {got} != {want}");
    }
    let oracle = conjugates(&target).map_err(|e| e.to_string())?;
    ensure!(
        oracle == row.conjugates,
        "classify conjugates disagree with cayley::conjugates"
    );

    let rows = classify(12, 40, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let seed = Triple::new(12, 13, 15, 20).map_err(|e| e.to_string())?;
    let comp = rows
        .iter()
        .find(|c| c.triple == seed)
        .ok_or("(13,15,20) not found")?
        .component;
    let members: Vec<_> = rows.iter().filter(|c| c.component == comp).collect();
    let triples: Vec<String> = members.iter().map(|c| c.triple.to_string()).collect();
    ensure!(
        triples == ["13,15,20", "15,20,37"],
        "component is {triples:?}"
    );
    ensure!(
        members.iter().all(|c| c.family.is_none() && !c.base),
        "component carries a family tag"
    );
    Ok(())
}

/// T_n(x) by the plain three-term recurrence.
fn chebyshev_upto(x: i64, limit: i64) -> Vec<i64> {
    let mut out = vec![1, x];
    if x == 1 {
        return vec![1];
    }
    while out[out.len() - 1] <= limit {
        let k = out.len();
        out.push(2 * x * out[k - 1] - out[k - 2]);
    }
    out.pop();
    out
}

fn s1_completeness() -> Outcome {
    const BOUND: i64 = 1500;
    let mut generated = BTreeSet::new();
    for x in 1..=BOUND {
        let t = chebyshev_upto(x, BOUND);
        for n in 0..t.len() {
            for m in 0..t.len() - n {
                let mut v = [t[n], t[n + m], t[m]];
                v.sort_unstable();
                generated.insert(v);
            }
        }
    }
    let found: BTreeSet<[i64; 3]> = enumerate_solutions(1, BOUND as u64, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|t| {
            let c = t.components();
            [0, 1, 2].map(|i| i64::try_from(&c[i]).expect("small"))
        })
        .collect();
    let missing = generated.difference(&found).count();
    let extra = found.difference(&generated).count();
    ensure!(
        missing == 0 && extra == 0,
        "{missing} missing, {extra} extra"
    );
    println!("  s=1 bound {BOUND}: {} triples", found.len());
    Ok(())
}

/// s·T_n(y/s) in exact rationals.
fn scaled_chebyshev(s: i64, y: i64, n: usize) -> BigRational {
    let x = BigRational::new(big(y), big(s));
    let (mut t0, mut t1) = (BigRational::one(), x.clone());
    for _ in 0..n {
        let t2 = BigRational::from_integer(big(2)) * &x * &t1 - &t0;
        t0 = std::mem::replace(&mut t1, t2);
    }
    t0 * BigRational::from_integer(big(s))
}

fn special_recurrence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20_240_601);
    let mut samples = 0;
    while samples < 200 {
        let s: i64 = rng.gen_range(1..=10);
        let b: i64 = rng.gen_range(1..=30);
        if (2 * b) % s != 0 {
            continue;
        }
        let (n, m) = (rng.gen_range(0..=8usize), rng.gen_range(0..=8usize));
        let fam = RFamilyParams::new(s, b).map_err(|e| e.to_string())?;
        let r = r_prefix(&fam, n + m + 1).map_err(|e| e.to_string())?;
        for k in [n, m, n + m] {
            ensure!(
                BigRational::from_integer(r[k].clone()) == scaled_chebyshev(s, b, k),
                "R_{k} disagrees with sT_k(b/s) for s={s} b={b}"
            );
        }
        let value = cayley_form(&big(s), &r[n], &r[n + m], &r[m]);
        ensure!(
            value.is_zero(),
            "C_{s}(R_{n},R_{},R_{m}) = {value} at b={b}",
            n + m
        );
        // family_triple itself requires positive entries, which fails when 2b = s.
        if 2 * b != s {
            let t = family_triple(&fam, n, m).map_err(|e| e.to_string())?;
            ensure!(eval_c(&t).is_zero(), "eval_c({t}) != 0");
        }
        samples += 1;
    }

    let mut checked = 0;
    for s in 1..=8i64 {
        for y in 1..=40i64 {
            if (2 * y) % s != 0 {
                continue;
            }
            let fam = RFamilyParams::new(s, y).map_err(|e| e.to_string())?;
            let d = big(y * y - s * s);
            let rv = |n| r_val(&fam, n).map_err(|e| e.to_string());
            let rs = |n| r_star_val(&fam, n).map_err(|e| e.to_string());
            for n in 1..=10usize {
                let first = rv(n)? * rv(n)? - &d * rs(n - 1)? * rs(n - 1)?;
                ensure!(
                    first == big(s * s),
                    "R_n²−dR*² = {first} at s={s} y={y} n={n}"
                );
                if n >= 2 {
                    let second = rv(n)? * rv(n - 1)? - &d * rs(n - 1)? * rs(n - 2)?;
                    ensure!(
                        second == big(s * y),
                        "coupled identity {second} at s={s} y={y} n={n}"
                    );
                }
                checked += 1;
            }
        }
    }
    println!("  200 random family triples, {checked} Pell identity instances");
    Ok(())
}

fn words(max_len: usize, min_len: usize) -> Vec<Word> {
    (min_len..=max_len)
        .flat_map(|len| Word::all_of_length(len, 3))
        .collect()
}

fn continuant_suite() -> Outcome {
    let mut count = 0;
    for alpha in words(4, 1) {
        for beta in words(3, 0) {
            ensure!(
                split_identity_check(&alpha, &beta),
                "split fails at α={alpha:?} β={beta:?}"
            );
            count += 1;
        }
    }
    let sides = words(2, 0);
    for alpha in Word::all_of_length(2, 3)
        .into_iter()
        .chain(Word::all_of_length(4, 3))
    {
        for lambda in &sides {
            for rho in &sides {
                ensure!(
                    geodesic_ratio_check(&alpha, lambda, rho),
                    "ratio fails at α={alpha:?} λ={lambda:?} ρ={rho:?}"
                );
                count += 1;
            }
        }
    }
    let w = |v: Vec<u64>| Word::new(v).map_err(|e| e.to_string());
    let seq = geodesic_sequence(&w(vec![1, 1])?, &w(vec![2])?, 4).map_err(|e| e.to_string())?;
    ensure!(
        seq.terms == ints(&[1, 2, 5, 13]),
        "geodesic sequence {:?}",
        seq.terms
    );
    println!("  {count} identity instances");
    Ok(())
}

fn falsification_harness() -> Outcome {
    let report = r_match_search(SearchBounds::default());
    println!(
        "  examined {} pairs, {} with s=1, {} s=1 coincidences",
        report.examined,
        report.s1_candidates,
        report.s1_coincidences.len()
    );
    for f in &report.matches_s_ge_2 {
        println!("  MATCH s={} b={} α={:?} β={:?}", f.s, f.b, f.alpha, f.beta);
    }
    ensure!(report.examined > 0, "nothing examined");
    ensure!(
        report.matches_s_ge_2.is_empty(),
        "{} matches with s ≥ 2",
        report.matches_s_ge_2.len()
    );
    Ok(())
}

fn markov_suite() -> Outcome {
    let tree = markov_tree(6).map_err(|e| e.to_string())?;
    for v in &tree.vertices {
        ensure!(eval_m(v).is_zero(), "eval_m({v:?}) != 0");
        for which in Component::ALL {
            let once = markov_neighbor(v, which).map_err(|e| e.to_string())?;
            let twice = markov_neighbor(&once, which).map_err(|e| e.to_string())?;
            ensure!(&twice == v, "involution fails at {v:?} on {which}");
        }
    }
    println!("  {} vertices at depth 6", tree.vertices.len());
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("chain s=3 b=6", chain_s3_b6),
        ("Pell table s=1 y=2", pell_table),
        ("Pell d=960 family two", pell_960),
        ("isolated solutions and the s=12 pair", isolated_solutions),
        ("s=1 completeness at 1500", s1_completeness),
        ("R-family and coupled Pell identities", special_recurrence),
        ("continuant identities", continuant_suite),
        ("no R-sequence match with s >= 2", falsification_harness),
        ("Markov tree depth 6", markov_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(()) => println!("PASS {}: {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
