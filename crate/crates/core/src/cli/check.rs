//! The invariant suite run by `check`.

use rayon::prelude::*;

use super::render::{CheckReport, CheckResult};
use crate::gca::{check_differential, GcaElement};
use crate::hbs::{build_hbs, truncated_source, HbsOptions};
use crate::rational::{binomial, Q};
use crate::sullivan::{block_partition_count, flag_tower, flag_tower_with_unit, partition_types};
use crate::visibility::{analyze, catalog, visible_degrees, CatalogEntry};
use crate::{Error, Result};

/// Type counts of all compositions of `s` with parts at most `k`, by enumeration of cut sets.
pub fn enumerate_block_types(s: u32, k: usize) -> std::collections::BTreeMap<Vec<u32>, u64> {
    let mut out = std::collections::BTreeMap::new();
    if s == 0 {
        out.insert(vec![0; k], 1);
        return out;
    }
    for cuts in 0u64..(1 << (s - 1)) {
        let mut counts = vec![0u32; k];
        let mut len = 1usize;
        let mut ok = true;
        for pos in 0..s {
            let cut = pos == s - 1 || cuts & (1 << pos) != 0;
            if cut {
                if len > k {
                    ok = false;
                    break;
                }
                counts[len - 1] += 1;
                len = 1;
            } else {
                len += 1;
            }
        }
        if ok {
            *out.entry(counts).or_insert(0) += 1;
        }
    }
    out
}

fn result(name: impl Into<String>, failures: Vec<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed: failures.is_empty(),
        detail: failures.join("; "),
    }
}

fn partitions() -> Vec<CheckResult> {
    let mut bad = Vec::new();
    for s in 0..=8u32 {
        for k in 1..=4usize {
            let oracle = enumerate_block_types(s, k);
            for t in partition_types(s, k) {
                let got = block_partition_count(&t).unwrap_or(0);
                let want = oracle.get(&t.counts).copied().unwrap_or(0);
                if got != want {
                    bad.push(format!("s = {s}, type {:?}: {got} != {want}", t.counts));
                }
            }
        }
    }
    let mut totals = Vec::new();
    for s in 1..=8u32 {
        let total: u64 = partition_types(s, s as usize)
            .iter()
            .map(|t| block_partition_count(t).unwrap_or(0))
            .sum();
        if total != 1 << (s - 1) {
            totals.push(format!("s = {s}: total {total}"));
        }
    }
    vec![
        result("block partition counts agree with enumeration (s <= 8, k <= 4)", bad),
        result("block partition totals are 2^(s-1) (s <= 8)", totals),
    ]
}

fn truncated_models() -> Result<CheckResult> {
    let mut bad = Vec::new();
    for l in [2u32, 4] {
        for m in 2..=8u32 {
            let (cdga, k) = truncated_source(l, m)?;
            let a = build_hbs(&cdga, &k, HbsOptions::default())?;
            let x1 = a.generator_element(a.find("x", "1")?);
            let xb = a.h.index_of_label("x").ok_or_else(|| Error::UnknownGenerator("x".into()))?;
            // u = u(x⊗x*) = ±1
            let u = a.augmentation.get(a.source.alg.index_of("x")?, xb).cloned().unwrap_or_default();
            if a.generators.len() != m as usize + 1 {
                bad.push(format!("l = {l}, m = {m}: {} generators", a.generators.len()));
            }
            for s in 0..m {
                let label = match s {
                    0 => "1".to_string(),
                    1 => "x".to_string(),
                    _ => format!("x^{s}"),
                };
                let g = a.find("y", &label)?;
                let coeff = Q::from_integer(binomial(m as u64, s as u64)) * num_traits::pow(u.clone(), s as usize);
                let want: GcaElement = x1.pow(m - s).scale(&coeff);
                if a.delta(g)? != &want {
                    bad.push(format!("l = {l}, m = {m}, s = {s}"));
                }
            }
            if !a.check_delta_squared()? {
                bad.push(format!("l = {l}, m = {m}: δ² ≠ 0"));
            }
        }
    }
    Ok(result("truncated models: δ(y⊗(x^s)*) = binom(m, s) u^s (x⊗1*)^(m-s), δ² = 0", bad))
}

fn towers() -> Result<CheckResult> {
    let mut bad = Vec::new();
    for m in 1..=4u32 {
        for k in 1..=m {
            for unit in [2u32, 4] {
                let t = if unit == 2 { flag_tower(m, k)? } else { flag_tower_with_unit(m, k, unit)? };
                if !t.stages.iter().all(|s| check_differential(&s.d)) {
                    bad.push(format!("(m, k, unit) = ({m}, {k}, {unit}): d² ≠ 0"));
                }
                if !t.maps.iter().all(|p| p.check_commutes()) {
                    bad.push(format!("(m, k, unit) = ({m}, {k}, {unit}): φ does not commute"));
                }
                if !t.last().is_minimal() {
                    bad.push(format!("(m, k, unit) = ({m}, {k}, {unit}): last stage not minimal"));
                }
            }
        }
    }
    Ok(result("flag towers: d² = 0, tower maps commute, last stage minimal (m <= 4)", bad))
}

fn entry_checks(e: &CatalogEntry) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let a = analyze(&e.problem)?;
    if !check_differential(&a.model.cdga.d) || !check_differential(&a.reduction.small.cdga.d) {
        bad.push("d² ≠ 0".into());
    }
    if !a.reduction.w.check_commutes() {
        bad.push("w does not commute with d".into());
    }
    let top = a.reduction.small.cdga.alg.max_degree() + 1;
    if !a.reduction.is_trivial() && !a.reduction.w.check_quasi_iso(top) {
        bad.push("w is not a quasi-isomorphism".into());
    }
    if !a.check_chain_map() {
        bad.push("μ̃̃ ∘ δ_0 ≠ 0".into());
    }
    if !a.hbs.check_delta0_squared() {
        bad.push("δ_0² ≠ 0".into());
    }
    let r = visible_degrees(&e.problem)?;
    if !r.vd.iter().all(|d| r.n_g.contains(d)) {
        bad.push("vd ⊄ n(G)".into());
    }
    let mut flipped = e.problem.clone();
    flipped.options.elimination_sign = flipped.options.elimination_sign.opposite();
    let f = visible_degrees(&flipped)?;
    if f.vd != r.vd || f.homotopy != r.homotopy {
        bad.push("result depends on the elimination sign".into());
    }
    Ok(bad)
}

pub fn run_checks() -> CheckReport {
    let mut checks = partitions();
    for c in [truncated_models(), towers()] {
        checks.push(c.unwrap_or_else(|e| result("model construction", vec![e.to_string()])));
    }
    let entries = catalog();
    let per_entry: Vec<CheckResult> = entries
        .par_iter()
        .map(|e| {
            let name = format!("catalog {} ({}): models, chain map, vd ⊆ n(G), sign invariance", e.id, e.name());
            match entry_checks(e) {
                Ok(bad) => result(name, bad),
                Err(err) => result(name, vec![err.to_string()]),
            }
        })
        .collect();
    checks.extend(per_entry);
    let failures = checks.iter().filter(|c| !c.passed).count();
    CheckReport {
        schema: "ratvis.check/v1".into(),
        checks,
        failures,
    }
}
