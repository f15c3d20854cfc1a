//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{bell, dr, mll_formula_count, oracle_behavior, tree_oracle};
use gmc::cli::{run, EXIT_OK};
use gmc::decomposition::{additive_pair, census, check_demorgan_dual, decompose_mall, CensusMode};
use gmc::exponentials::{emll_nondecomposability_check, EmllSearchBounds};
use gmc::formulas::{
    behavior_masks, canonicalize, complement_atoms, enumerate_formulas, negate, parse, Formula, Language,
};
use gmc::intuitionistic::{imll_behavior, imll_census};
use gmc::partitions::{
    all_partitions, all_polarized_partitions, closure, dual, is_orthogonal, simulate_cut_merge, Mode, Partition,
    PartitionSet,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gmc(args: &[&str]) -> gmc::cli::Outcome {
    run(std::iter::once("gmc").chain(args.iter().copied()))
}

fn dr4_path() -> String {
    format!("{}/data/dr4.json", env!("CARGO_MANIFEST_DIR"))
}

fn leaves<'a>(proof: &'a Value, out: &mut Vec<&'a str>) {
    let premises = proof["premises"].as_array().map(Vec::as_slice).unwrap_or_default();
    if premises.is_empty() {
        out.push(proof["conclusion"].as_str().unwrap_or_default());
    }
    for p in premises {
        leaves(p, out);
    }
}

/// Splits `|- a1, a2, G1` into its argument atoms and its context names.
fn split_leaf(leaf: &str) -> (BTreeSet<String>, BTreeSet<String>) {
    let body = leaf.trim_start_matches("|-").trim();
    let (mut atoms, mut contexts) = (BTreeSet::new(), BTreeSet::new());
    for item in body.split(',').map(str::trim) {
        if item.starts_with('a') {
            atoms.insert(item.to_string());
        } else {
            contexts.insert(item.to_string());
        }
    }
    (atoms, contexts)
}

fn dr_additive() -> Check {
    let out = gmc(&["--json", "decompose", "--system", "mall", &dr4_path()]);
    ensure(out.status == EXIT_OK, || format!("exit {}: {}", out.status, out.stderr))?;
    let doc: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let text = doc["formula"].as_str().unwrap_or_default();
    let pair = |i, j| Formula::par(vec![Formula::atom(i), Formula::atom(j)]);
    let expected = Formula::Plus(vec![
        Formula::tensor(vec![pair(1, 2), pair(3, 4)]),
        Formula::tensor(vec![pair(1, 3), pair(2, 4)]),
    ]);
    let got = parse(text, Language::Mall).map_err(|e| e.to_string())?;
    ensure(canonicalize(&got) == canonicalize(&expected), || format!("formula {text}"))?;
    ensure(text == "((a1|a2)*(a3|a4)) + ((a1|a3)*(a2|a4))", || format!("printed as {text}"))?;

    let proofs = doc["proofs"].as_array().ok_or("no proofs")?;
    ensure(proofs.len() == 2, || format!("{} proofs", proofs.len()))?;
    let wanted = [[["a1", "a2"], ["a3", "a4"]], [["a1", "a3"], ["a2", "a4"]]];
    for (proof, want) in proofs.iter().zip(wanted) {
        let mut ls = Vec::new();
        leaves(proof, &mut ls);
        let split: Vec<_> = ls.iter().map(|l| split_leaf(l)).collect();
        let atoms: BTreeSet<BTreeSet<String>> = split.iter().map(|(a, _)| a.clone()).collect();
        let want: BTreeSet<BTreeSet<String>> = want.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect();
        ensure(atoms == want && ls.len() == 2, || format!("open premises {ls:?}"))?;
        let contexts: BTreeSet<&String> = split.iter().flat_map(|(_, c)| c).collect();
        ensure(split.iter().all(|(_, c)| c.len() == 1) && contexts.len() == 2, || {
            format!("contexts not distinct in {ls:?}")
        })?;
    }
    Ok(format!("{text}; open premises match"))
}

fn dr_mll() -> Check {
    let out = gmc(&["assert-nondecomposable", "--system", "mll", &dr4_path()]);
    ensure(out.status == EXIT_OK, || format!("exit {}: {}{}", out.status, out.stdout, out.stderr))?;
    let expected = mll_formula_count(4);
    ensure(out.stdout.contains(&format!("({expected} formulas examined)")), || out.stdout.trim().to_string())?;
    Ok(format!("{} (expected {expected})", out.stdout.trim()))
}

fn imll_all_decompose() -> Check {
    let mut notes = Vec::new();
    for n in 1..=4 {
        let r = imll_census(n).map_err(|e| e.to_string())?;
        ensure(r.non_decomposable == 0, || format!("n = {n}: {} non-decomposable", r.non_decomposable))?;
        let mut witnesses = 0;
        for e in &r.entries {
            if let Some(w) = &e.witness {
                witnesses += 1;
                let b = imll_behavior(w).map_err(|e| e.to_string())?;
                ensure(b == e.right && b.len() == e.right.len(), || {
                    format!("witness {w} realizes {b}, not {}", e.right)
                })?;
            }
        }
        notes.push(format!(
            "n={n}: {} connectives, {witnesses} witnesses, {} outside-schema",
            r.connectives, r.outside_schema
        ));
    }
    Ok(notes.join("; "))
}

fn random_connective(rng: &mut StdRng) -> Option<(usize, PartitionSet)> {
    let n = rng.gen_range(1..=5);
    let parts: Vec<Partition> = all_partitions(n, 9).ok()?.collect();
    let k = rng.gen_range(1..=3.min(parts.len()));
    let gens = parts.choose_multiple(rng, k).cloned();
    let c = closure(&PartitionSet::from_partitions(n, gens).ok()?, Mode::Unpolarized).ok()?;
    (!c.right.is_empty()).then_some((n, c.left))
}

fn mall_totality() -> Check {
    let mut rng = StdRng::seed_from_u64(0x3_2);
    let (mut done, mut partitions) = (0, 0);
    while done < 100 {
        let Some((n, left)) = random_connective(&mut rng) else { continue };
        let d = decompose_mall(&left).map_err(|e| format!("{left}: {e}"))?;
        ensure(d.proofs.len() == left.len(), || format!("{left}: {} proofs", d.proofs.len()))?;
        for (p, t) in left.iter().zip(&d.proofs) {
            let mut got: Vec<u32> = t
                .leaves()
                .iter()
                .map(|s| s.succedent.iter().flat_map(|f| f.arg_atoms()).fold(0, |m, i| m | 1 << (i - 1)))
                .collect();
            got.sort_unstable();
            let mut want = p.class_masks().to_vec();
            want.sort_unstable();
            ensure(got == want, || format!("arity {n}, {p}: premises {got:?}"))?;
            partitions += 1;
        }
        done += 1;
    }
    Ok(format!("{done} connectives, {partitions} partitions"))
}

fn demorgan() -> Check {
    let c = dr();
    let left = decompose_mall(&c.left).map_err(|e| e.to_string())?.formula;
    let right = complement_atoms(&decompose_mall(&c.right).map_err(|e| e.to_string())?.formula);
    ensure(!check_demorgan_dual(&left, &right).map_err(|e| e.to_string())?, || format!("{left} vs {right}"))?;
    let pair = additive_pair(&c).map_err(|e| e.to_string())?;
    ensure(!pair.dual, || "additive pair reported dual".into())?;

    let mut runner = TestRunner::deterministic();
    for i in 0..50 {
        let n = 1 + i % 6;
        let f = common::arb_mll(n).new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        ensure(check_demorgan_dual(&f, &negate(&f)).map_err(|e| e.to_string())?, || format!("{f}"))?;
    }
    Ok(format!("DR pair not dual ({right}); 50 random negation pairs dual"))
}

fn emll_on_dr() -> Check {
    let bounds = EmllSearchBounds::default();
    ensure(bounds.max_size == 11 && bounds.max_modal_depth == 2 && bounds.max_weakenings == 3, || {
        format!("default bounds {bounds:?}")
    })?;
    let v = emll_nondecomposability_check(&dr(), &bounds).map_err(|e| e.to_string())?;
    ensure(v.no_counterexample(), || format!("counterexamples {:?}", v.counterexamples))?;
    ensure(v.anomalies.is_empty(), || format!("{} anomalies", v.anomalies.len()))?;
    ensure(v.inconclusive.is_empty(), || format!("{} inconclusive", v.inconclusive.len()))?;
    let audited: usize = v.by_reason.values().sum();
    ensure(audited == v.candidates, || format!("{audited} audited of {}", v.candidates))?;
    let reasons: Vec<String> = v.by_reason.iter().map(|(r, k)| format!("{r:?} {k}")).collect();
    Ok(format!("{} candidates, {} rechecked; {}", v.candidates, v.rechecked, reasons.join(", ")))
}

fn agree(p: &Partition, q: &Partition, mode: Mode) -> Result<(), String> {
    let orth = is_orthogonal(p, q, mode).map_err(|e| e.to_string())?;
    let merged = simulate_cut_merge(p, q, mode).map_err(|e| e.to_string())?.succeeded();
    ensure(orth == tree_oracle(p, q, mode == Mode::Polarized) && orth == merged, || format!("{p} vs {q} ({mode:?})"))
}

fn properties() -> Check {
    let mut pairs = 0;
    for n in 1..=4 {
        let parts: Vec<Partition> = all_partitions(n, 9).map_err(|e| e.to_string())?.collect();
        let polarized: Vec<Partition> = all_polarized_partitions(n, false, 6).map_err(|e| e.to_string())?.collect();
        for (set, mode) in [(&parts, Mode::Unpolarized), (&polarized, Mode::Polarized)] {
            for p in set {
                for q in set {
                    agree(p, q, mode)?;
                    pairs += 1;
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    let random = |rng: &mut StdRng, n: usize, polarized: bool| {
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let checked = if polarized { rng.gen_range(0..1u32 << n) } else { 0 };
        Partition::from_labels(&labels, checked).unwrap()
    };
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=6);
        let (p, q) = (random(&mut rng, n, false), random(&mut rng, n, false));
        agree(&p, &q, Mode::Unpolarized)?;
        let (p, q) = (random(&mut rng, n, true), random(&mut rng, n, true));
        agree(&p, &q, Mode::Polarized)?;
    }

    for n in 1..=4 {
        let parts: Vec<Partition> = all_partitions(n, 9).map_err(|e| e.to_string())?.collect();
        let subset = |mask: u32| {
            PartitionSet::from_partitions(
                n,
                parts.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()),
            )
            .unwrap()
        };
        let mask_of =
            |s: &PartitionSet| s.iter().fold(0u32, |m, p| m | 1 << parts.iter().position(|q| q == p).unwrap());
        let duals: Vec<u32> = (0u32..1 << parts.len())
            .map(|mask| dual(&subset(mask), Mode::Unpolarized).map(|d| mask_of(&d)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for (mask, &d) in duals.iter().enumerate() {
            let expected = (0..parts.len())
                .filter(|&j| {
                    (0..parts.len()).filter(|i| mask >> i & 1 == 1).all(|i| tree_oracle(&parts[i], &parts[j], false))
                })
                .fold(0u32, |m, j| m | 1 << j);
            ensure(d == expected, || format!("n = {n}: dual of {mask:b}"))?;
            for i in 0..parts.len() {
                ensure(duals[mask | 1 << i] & !d == 0, || format!("n = {n}: not antitone at {mask:b}"))?;
            }
            let dd = duals[d as usize];
            ensure(dd & mask as u32 == mask as u32, || format!("n = {n}: not extensive at {mask:b}"))?;
            ensure(duals[dd as usize] == d, || format!("n = {n}: closure not idempotent at {mask:b}"))?;
        }
    }

    let mut formulas = 0;
    for n in 1..=5 {
        for f in enumerate_formulas(n, 6).map_err(|e| e.to_string())? {
            ensure(behavior_masks(&f).map_err(|e| e.to_string())? == oracle_behavior(&f), || {
                format!("behavior of {f}")
            })?;
            formulas += 1;
        }
    }

    let counts: Vec<u64> = (1..=5).map(|n| all_partitions(n, 9).map(|p| p.count() as u64).unwrap_or(0)).collect();
    ensure(counts == [1, 2, 5, 15, 52] && counts.iter().zip(1..).all(|(&c, n)| c == bell(n)), || {
        format!("counts {counts:?}")
    })?;
    Ok(format!("{pairs} exhaustive pairs, 20000 random pairs, Galois n<=4, {formulas} behaviors, Bell {counts:?}"))
}

fn census_sanity() -> Check {
    let mut notes = Vec::new();
    for n in 2..=3 {
        let r = census(n, CensusMode::Exhaustive).map_err(|e| e.to_string())?;
        ensure(r.non_decomposable == 0, || format!("n = {n}: {}", r.non_decomposable))?;
        notes.push(format!("n={n}: 0 of {}", r.connectives));
    }
    let r = census(4, CensusMode::Exhaustive).map_err(|e| e.to_string())?;
    ensure(r.non_decomposable > 0, || "n = 4: none".into())?;
    let target = dr().left;
    ensure(r.non_decomposable_entries().any(|e| e.left == target), || "n = 4: DR missing".into())?;
    notes.push(format!("n=4: {} of {} including DR", r.non_decomposable, r.connectives));
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 MALL decomposition of DR", Duration::from_secs(1), dr_additive),
        ("2 DR non-decomposable in MLL", Duration::from_secs(10), dr_mll),
        ("3 IMLL census n<=4", Duration::from_secs(600), imll_all_decompose),
        ("4 MALL totality on 100 random connectives", Duration::from_secs(60), mall_totality),
        ("5 De Morgan duality of additive witnesses", Duration::MAX, demorgan),
        ("6 EMLL check on DR at default bounds", Duration::from_secs(900), emll_on_dr),
        ("7 property suites", Duration::MAX, properties),
        ("8 census sanity", Duration::from_secs(300), census_sanity),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let limit_text = if limit == Duration::MAX { "none".to_string() } else { format!("{limit:?}") };
        let (ok, detail) = match result {
            Ok(d) if elapsed < limit => (true, d),
            Ok(d) => (false, format!("{d}; over time")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!("{} [{name}] {detail} ({:.2?}, limit {limit_text})", if ok { "PASS" } else { "FAIL" }, elapsed);
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
