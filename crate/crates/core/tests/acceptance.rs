//! Acceptance suite. Prints one PASS/FAIL line per criterion, followed by the
//! failing sub-checks, and exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rayon::prelude::*;

use ratvis::gca::{apply_derivation, check_differential};
use ratvis::hbs::{build_hbs, linearized_homology, sphere_source, truncated_source, HbsOptions, SignRegime};
use ratvis::rational::q;
use ratvis::sullivan::{block_partition_count, flag_tower_with_unit, partition_types};
use ratvis::visibility::{analyze, analyze_with, catalog, catalog_entry, grassmannian, visible_degrees, CatalogEntry};
use ratvis::Q;

struct Criterion {
    title: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Criterion {
    fn new(title: &'static str) -> Self {
        Criterion {
            title,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.checked += 1;
        self.failures.push(what);
    }

    fn report(&self, n: usize, started: Instant) -> bool {
        let ok = self.failures.is_empty();
        println!(
            "{} {n}. {} ({} checks, {} failed, {:.2?})",
            if ok { "PASS" } else { "FAIL" },
            self.title,
            self.checked,
            self.failures.len(),
            started.elapsed()
        );
        for f in &self.failures {
            println!("       - {f}");
        }
        ok
    }
}

fn set(v: impl IntoIterator<Item = u32>) -> BTreeSet<u32> {
    v.into_iter().collect()
}

fn odd_range(from: u32, to: u32, step: usize) -> BTreeSet<u32> {
    set((from..=to).step_by(step))
}

fn show(s: &BTreeSet<u32>) -> String {
    format!("{s:?}")
}

/// Pascal's triangle, rows `0..=n`.
fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigInt::from(1); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

/// Table values keyed by row number and parameter.
fn table_value(row: &str, n: Option<u32>) -> Option<BTreeSet<u32>> {
    let n = n.unwrap_or(0);
    Some(match row {
        "1" => odd_range(3, 4 * n - 1, 4),
        "2" => set([4 * n - 1]),
        "3" => set([5]),
        "4" => set([7]),
        "5" | "7" | "7'" | "8" | "9" | "20" => set([11]),
        "6" | "6'" => set([3, 11]),
        "10" => set([2 * n + 1]),
        "11" => odd_range(3, 2 * n + 1, 2),
        "12" => set([4 * n - 1]),
        "13" => set([15]),
        "14" => set([7]),
        "15" => set([4 * n - 1]),
        "16" => odd_range(3, 4 * n - 1, 4),
        "17" => odd_range(7, 4 * n - 1, 4),
        "18" => set([2 * n - 1]),
        "19" => set([23]),
        _ => return None,
    })
}

fn parameter(id: &str) -> Option<u32> {
    id.split_once(":n=").and_then(|(_, n)| n.parse().ok())
}

type RowResult = (String, String, Option<BTreeSet<u32>>, Result<BTreeSet<u32>, String>);

fn entry(id: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.id == id)
}

fn criterion_tables() -> Criterion {
    let mut c = Criterion::new("table reproduction");
    let entries: Vec<CatalogEntry> = catalog().into_iter().filter(|e| e.table > 0).collect();
    let required: Vec<String> = ["1:n=2", "1:n=3", "5", "6", "6'", "2:n=2", "3", "4", "7", "7'", "8", "9", "13", "14", "19", "20"]
        .iter()
        .map(|s| s.to_string())
        .chain((1..=5).map(|n| format!("11:n={n}")))
        .chain((1..=4).flat_map(|n| [format!("16:n={n}"), format!("17:n={n}")]))
        .chain((2..=4).flat_map(|n| [format!("10:n={n}"), format!("12:n={n}"), format!("15:n={n}"), format!("18:n={n}")]))
        .filter(|id| id != "17:n=1")
        .collect();
    for id in &required {
        c.check(entries.iter().any(|e| &e.id == id), || format!("row {id} missing from the catalog"));
    }
    let results: Vec<RowResult> = entries
        .par_iter()
        .map(|e| {
            let want = table_value(e.row(), parameter(&e.id));
            let got = visible_degrees(&e.problem).map(|r| set(r.vd)).map_err(|err| err.to_string());
            (e.id.clone(), e.name().to_string(), want, got)
        })
        .collect();
    for (id, name, want, got) in results {
        match (want, got) {
            (None, _) => c.fail(format!("row {id} ({name}) has no table value")),
            (Some(_), Err(err)) => c.fail(format!("row {id} ({name}): {err}")),
            (Some(w), Ok(g)) => c.check(w == g, || format!("row {id} ({name}): expected {}, computed {}", show(&w), show(&g))),
        }
    }
    c
}

fn criterion_truncated() -> Criterion {
    let mut c = Criterion::new("truncated algebra closed form, 2 <= m <= 8, |x| in {2, 4}");
    let binom = pascal(8);
    for l in [2u32, 4] {
        for m in 2..=8u32 {
            let built = truncated_source(l, m).and_then(|(cdga, k)| build_hbs(&cdga, &k, HbsOptions::default()));
            let a = match built {
                Ok(a) => a,
                Err(e) => {
                    c.fail(format!("l = {l}, m = {m}: {e}"));
                    continue;
                }
            };
            let mut want: BTreeSet<String> = ["x⊗1*".to_string(), "y⊗1*".into(), "y⊗x*".into()].into();
            want.extend((2..m).map(|s| format!("y⊗(x^{s})*")));
            let got: BTreeSet<String> = a.generators.iter().map(|g| g.name()).collect();
            c.check(got == want, || format!("l = {l}, m = {m}: generators {got:?}"));
            let Ok(x1) = a.find("x", "1") else {
                c.fail(format!("l = {l}, m = {m}: no x⊗1*"));
                continue;
            };
            let x1 = a.generator_element(x1);
            for s in 0..m {
                let label = match s {
                    0 => "1".to_string(),
                    1 => "x".to_string(),
                    _ => format!("x^{s}"),
                };
                let sign = if s % 2 == 0 { q(1) } else { q(-1) };
                let coeff = sign * Q::from_integer(binom[m as usize][s as usize].clone());
                let expected = x1.pow(m - s).scale(&coeff);
                match a.find("y", &label).and_then(|g| a.delta(g).cloned()) {
                    Ok(d) => c.check(d == expected, || format!("l = {l}, m = {m}, s = {s}: δ = {d}, expected {expected}")),
                    Err(e) => c.fail(format!("l = {l}, m = {m}, s = {s}: {e}")),
                }
            }
        }
    }
    c
}

fn criterion_spheres() -> Criterion {
    let mut c = Criterion::new("sphere models and translation into spheres, m <= 6");
    for m in 1..=6u32 {
        for (n, degree) in [(2 * m + 1, 2 * m + 1), (2 * m, 4 * m - 1)] {
            match sphere_source(n).and_then(|(cdga, k)| build_hbs(&cdga, &k, HbsOptions::default())) {
                Ok(a) => {
                    let dims = linearized_homology(&a, a.max_degree()).dims();
                    c.check(dims == vec![(degree, 1)], || format!("S^{n}: linearized homology {dims:?}"));
                }
                Err(e) => c.fail(format!("S^{n}: {e}")),
            }
        }
        for (id, what, want) in [
            (format!("18:n={}", m + 1), format!("vd(SO{}, S^{})", 2 * m + 2, 2 * m + 1), set([2 * m + 1])),
            (format!("12:n={m}"), format!("vd(SO{}, S^{})", 2 * m + 1, 2 * m), set([4 * m - 1])),
        ] {
            match entry(&id).map(|e| visible_degrees(&e.problem)) {
                Some(Ok(r)) => {
                    let got = set(r.vd);
                    c.check(got == want, || format!("{what} = {}, expected {}", show(&got), show(&want)));
                }
                Some(Err(e)) => c.fail(format!("{what}: {e}")),
                None => c.fail(format!("{id} missing from the catalog")),
            }
        }
    }
    c
}

fn criterion_flags() -> Criterion {
    let mut c = Criterion::new("flag manifolds and complex projective spaces");
    for m in 2..=6u32 {
        let want = odd_range(3, 2 * m - 1, 2);
        for id in [format!("flag-su:m={m}"), format!("11:n={}", m - 1)] {
            let Some(e) = entry(&id) else {
                c.fail(format!("{id} missing from the catalog"));
                continue;
            };
            match visible_degrees(&e.problem) {
                Ok(r) => {
                    let got = set(r.vd.iter().copied());
                    c.check(got == want, || format!("vd(SU{m}, {}) = {}, expected {}", e.name(), show(&got), show(&want)));
                    if id.starts_with("11") {
                        let dims: BTreeMap<u32, usize> = r.homotopy.iter().copied().collect();
                        let expected: BTreeMap<u32, usize> = want.iter().map(|&i| (i, 1)).collect();
                        c.check(dims == expected, || format!("π_*(aut_1 CP^{}) dims {dims:?}", m - 1));
                    }
                }
                Err(err) => c.fail(format!("{id}: {err}")),
            }
        }
    }
    for m in 1..=4u32 {
        let want = odd_range(7, 4 * m - 1, 4);
        let id = format!("flag-sp:m={m}");
        match entry(&id).map(|e| visible_degrees(&e.problem)) {
            Some(Ok(r)) => {
                let got = set(r.vd);
                c.check(got == want, || format!("vd(Sp{m}, flag) = {}, expected {}", show(&got), show(&want)));
            }
            Some(Err(e)) => c.fail(format!("{id}: {e}")),
            None => c.fail(format!("{id} missing from the catalog")),
        }
    }
    c
}

fn c1_label(s: u32) -> String {
    if s == 1 {
        "c1".into()
    } else {
        format!("c1^{s}")
    }
}

fn criterion_signed_values() -> Criterion {
    let mut c = Criterion::new("signed values of δ_0 and μ̃̃ (Grassmannian, Cayley plane)");
    for m in 2..=4u32 {
        let a = match grassmannian(m, m).and_then(|p| analyze(&p)) {
            Ok(a) => a,
            Err(e) => {
                c.fail(format!("m = {m}: {e}"));
                continue;
            }
        };
        let hbs = &a.hbs;
        for s in 1..m {
            let sign = if s % 2 == 0 { q(1) } else { q(-1) };
            let target = format!("c{}", m - s + 1);
            let Ok(pair) = hbs.find(&target, "1") else {
                c.fail(format!("m = {m}: no generator {target}⊗1*"));
                continue;
            };
            match hbs.find(&format!("tau{}'", m + 1), &c1_label(s)) {
                Ok(g) => {
                    let got = hbs.delta_linear(g).linear_coefficient(pair);
                    let want = sign.clone() * q(s as i64);
                    c.check(got == want, || {
                        format!("m = {m}, s = {s}: coefficient of {target}⊗1* in δ_0(tau{}'⊗({})*) is {got}, expected {want}", m + 1, c1_label(s))
                    });
                    let image = a.mu.image(g);
                    let want_mu: Vec<Q> =
                        a.mu.targets.iter().map(|t| if *t == format!("tau{}", m - s + 1) { q(1) } else { q(0) }).collect();
                    c.check(image == &want_mu, || {
                        format!("m = {m}, s = {s}: μ̃̃(tau{}'⊗({})*) = {}, expected tau{}", m + 1, c1_label(s), a.mu.format(image), m - s + 1)
                    });
                }
                Err(e) => c.fail(format!("m = {m}, s = {s}: {e}")),
            }
            let top = 2 * m - s + 1;
            match hbs.find(&format!("tau{top}'"), &c1_label(m)) {
                Ok(g) => {
                    let got = hbs.delta_linear(g).linear_coefficient(pair);
                    let want = if m % 2 == 0 { q(1) } else { q(-1) };
                    c.check(got == want, || {
                        format!("m = {m}, s = {s}: coefficient of {target}⊗1* in δ_0(tau{top}'⊗({})*) is {got}, expected {want}", c1_label(m))
                    });
                }
                Err(e) => c.fail(format!("m = {m}, s = {s}: {e}")),
            }
        }
    }
    let cayley = catalog_entry("19").and_then(|e| analyze(&e.problem));
    match cayley {
        Ok(a) => {
            let hbs = &a.hbs;
            match (hbs.find("x23'", "y8^2"), hbs.find("y8", "1")) {
                (Ok(g), Ok(y8)) => {
                    let want = hbs.generator_element(y8).scale(&q(3));
                    let got = hbs.delta_linear(g);
                    c.check(got == want, || format!("δ_0(x23'⊗(y8^2)*) = {got}, expected 3*y8⊗1*"));
                }
                _ => c.fail("F4/Spin9: generators x23'⊗(y8^2)* or y8⊗1* missing".into()),
            }
            match hbs.find("x23'", "y8") {
                Ok(g) => {
                    let image = a.mu.image(g);
                    c.check(image.iter().all(|x| x == &q(0)), || format!("μ̃̃(x23'⊗y8*) = {}", a.mu.format(image)));
                }
                Err(e) => c.fail(format!("F4/Spin9: {e}")),
            }
        }
        Err(e) => c.fail(format!("F4/Spin9: {e}")),
    }
    c
}

/// Type counts of compositions of `s` into parts of size at most `k`.
fn compositions(s: u32, k: usize) -> BTreeMap<Vec<u32>, u64> {
    fn rec(left: u32, k: usize, counts: &mut Vec<u32>, out: &mut BTreeMap<Vec<u32>, u64>) {
        if left == 0 {
            *out.entry(counts.clone()).or_insert(0) += 1;
            return;
        }
        for part in 1..=(k as u32).min(left) {
            counts[part as usize - 1] += 1;
            rec(left - part, k, counts, out);
            counts[part as usize - 1] -= 1;
        }
    }
    let mut out = BTreeMap::new();
    rec(s, k, &mut vec![0; k], &mut out);
    out
}

fn criterion_partitions() -> Criterion {
    let mut c = Criterion::new("block partition counts against enumeration, s <= 8, k <= 4");
    for s in 1..=8u32 {
        for k in 1..=4usize {
            let oracle = compositions(s, k);
            let types = partition_types(s, k);
            for t in &types {
                let got = block_partition_count(t).ok();
                let want = oracle.get(&t.counts).copied().unwrap_or(0);
                c.check(got == Some(want), || format!("s = {s}, type {:?}: {got:?}, expected {want}", t.counts));
            }
            for counts in oracle.keys() {
                c.check(types.iter().any(|t| &t.counts == counts), || format!("s = {s}, k = {k}: type {counts:?} not enumerated"));
            }
        }
        let total: u64 = partition_types(s, s as usize).iter().filter_map(|t| block_partition_count(t).ok()).sum();
        c.check(total == 1 << (s - 1), || format!("s = {s}: total {total}, expected {}", 1u64 << (s - 1)));
    }
    c
}

fn entry_structure(e: &CatalogEntry) -> Vec<String> {
    let mut bad = Vec::new();
    let a = match analyze_with(&e.problem, true) {
        Ok(a) => a,
        Err(err) => return vec![format!("{}: {err}", e.id)],
    };
    if !check_differential(&a.model.cdga.d) || !check_differential(&a.reduction.small.cdga.d) {
        bad.push(format!("{}: d² ≠ 0", e.id));
    }
    match a.hbs.check_delta_squared() {
        Ok(true) => {}
        Ok(false) => bad.push(format!("{}: δ² ≠ 0", e.id)),
        Err(err) => bad.push(format!("{}: {err}", e.id)),
    }
    if !a.hbs.check_delta0_squared() {
        bad.push(format!("{}: δ_0² ≠ 0", e.id));
    }
    if !a.reduction.w.check_commutes() {
        bad.push(format!("{}: w does not commute with d", e.id));
    }
    if !a.check_chain_map() {
        bad.push(format!("{}: μ̃̃ ∘ δ_0 ≠ 0", e.id));
    }
    let base = match visible_degrees(&e.problem) {
        Ok(r) => r,
        Err(err) => return vec![format!("{}: {err}", e.id)],
    };
    for (sign, regime) in [(true, SignRegime::Tau), (false, SignRegime::Plain), (true, SignRegime::Plain)] {
        let mut p = e.problem.clone();
        if sign {
            p.options.elimination_sign = p.options.elimination_sign.opposite();
        }
        p.options.regime = regime;
        match visible_degrees(&p) {
            Ok(r) if r.vd == base.vd && r.homotopy == base.homotopy => {}
            Ok(r) => bad.push(format!("{}: vd {:?} under {} / {regime}, {:?} by default", e.id, r.vd, p.options.elimination_sign, base.vd)),
            Err(err) => bad.push(format!("{}: {err}", e.id)),
        }
    }
    bad
}

fn property(c: &mut Criterion, name: &str, test: impl Fn(&mut TestRunner) -> Result<(), String>) {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let r = test(&mut runner);
    c.check(r.is_ok(), || format!("{name}: {}", r.unwrap_err()));
}

fn criterion_structure() -> Criterion {
    let mut c = Criterion::new("structural properties of all models");
    let entries = catalog();
    let bad: Vec<String> = entries.par_iter().flat_map(entry_structure).collect();
    c.checked += entries.len();
    c.failures.extend(bad);
    for m in 1..=4u32 {
        for k in 1..=m.min(6 - m) {
            for unit in [2u32, 4] {
                match flag_tower_with_unit(m, k, unit) {
                    Ok(t) => {
                        c.check(t.stages.iter().all(|s| check_differential(&s.d)), || format!("tower ({m}, {k}, {unit}): d² ≠ 0"));
                        c.check(t.maps.iter().all(|p| p.check_commutes()), || format!("tower ({m}, {k}, {unit}): a stage map does not commute"));
                    }
                    Err(e) => c.fail(format!("tower ({m}, {k}, {unit}): {e}")),
                }
            }
        }
    }

    let alg = common::algebra();
    let d = common::differential(&alg);
    c.check(check_differential(&d), || "test differential fails d² = 0".into());
    let h = || common::homogeneous(alg.clone(), 12);
    property(&mut c, "graded commutativity", |runner| {
        runner
            .run(&(h(), h()), |(x, y)| {
                let sign = common::koszul(x.degree().unwrap_or(0), y.degree().unwrap_or(0));
                prop_assert_eq!(&x * &y, (&y * &x).scale(&sign));
                Ok(())
            })
            .map_err(|e| e.to_string())
    });
    property(&mut c, "associativity", |runner| {
        runner
            .run(&(h(), h(), h()), |(x, y, z)| {
                prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                Ok(())
            })
            .map_err(|e| e.to_string())
    });
    property(&mut c, "Leibniz rule", |runner| {
        runner
            .run(&(h(), h()), |(x, y)| {
                let dxy = apply_derivation(&d, &(&x * &y)).map_err(|e| TestCaseError::fail(e.to_string()))?;
                let dx = apply_derivation(&d, &x).map_err(|e| TestCaseError::fail(e.to_string()))?;
                let dy = apply_derivation(&d, &y).map_err(|e| TestCaseError::fail(e.to_string()))?;
                let sign = if x.degree().unwrap_or(0) % 2 == 1 { q(-1) } else { q(1) };
                prop_assert_eq!(dxy, &(&dx * &y) + &(&x * &dy).scale(&sign));
                Ok(())
            })
            .map_err(|e| e.to_string())
    });
    c
}

fn main() -> ExitCode {
    let criteria: [fn() -> Criterion; 7] = [
        criterion_tables,
        criterion_truncated,
        criterion_spheres,
        criterion_flags,
        criterion_signed_values,
        criterion_partitions,
        criterion_structure,
    ];
    let mut failed = 0;
    for (i, f) in criteria.iter().enumerate() {
        let t = Instant::now();
        if !f().report(i + 1, t) {
            failed += 1;
        }
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
