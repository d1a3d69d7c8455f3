//! Text and JSON renderings of command results.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::hbs::HbsAlgebra;
use crate::rational::fmt_q;
use crate::sullivan::FlagTower;
use crate::visibility::{CertificateReport, DegreeStatus, VisibilityReport};

pub fn set(v: impl IntoIterator<Item = u32>) -> String {
    let items: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn certificate_line(c: &CertificateReport) -> String {
    match c {
        CertificateReport::Decomposable { degree, class, restriction } => {
            format!("degree {degree}: (Bι)*({class}) = {restriction} is decomposable")
        }
        CertificateReport::Congruence {
            degree,
            class,
            partner,
            scale,
            dual,
        } => {
            let u: Vec<String> = dual.iter().map(|(l, q)| format!("{q}·({l})*")).collect();
            format!(
                "degree {degree}: π(({scale})·(Bι)*({class}) ⊗ 1*) ≡ π((Bι)*({partner}) ⊗ [{}]) mod decomposables",
                u.join(" + ")
            )
        }
        CertificateReport::Inconclusive { degree, class } => {
            format!("degree {degree}: criterion inconclusive for {class}")
        }
    }
}

pub fn report_text(r: &VisibilityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}  [{} ⊃ {}]", r.name, r.group, r.subgroup);
    let _ = writeln!(s, "vd = {}; n(G) = {}", set(r.vd.iter().copied()), set(r.n_g.iter().copied()));
    let fd = r
        .cohomology
        .formal_dimension
        .map_or(String::new(), |n| format!(", formal dimension {n}"));
    let _ = writeln!(s, "H*(G/U) = {}{fd}", r.cohomology.poincare);
    let _ = writeln!(s, "small model:");
    for line in &r.small_model {
        let _ = writeln!(s, "  {line}");
    }
    if !r.eliminated.is_empty() {
        let pairs: Vec<String> = r.eliminated.iter().map(|(x, h)| format!("({x}, {h})")).collect();
        let _ = writeln!(s, "eliminated pairs: {}", pairs.join(" "));
    }
    let _ = writeln!(s, "degree  dim V_G  dim π(aut)  rank  status");
    for d in &r.degrees {
        let status = match d.status {
            DegreeStatus::Visible => "visible",
            DegreeStatus::NotVisible => "not visible",
            DegreeStatus::Inconclusive => "inconclusive",
        };
        let _ = writeln!(
            s,
            "{:<6}  {:<7}  {:<10}  {:<4}  {status}{}",
            d.degree,
            d.v_g_dim,
            d.homotopy_dim,
            d.rank,
            if d.image.is_empty() {
                String::new()
            } else {
                format!("  image: {}", d.image.join(", "))
            }
        );
    }
    let hom: Vec<String> = r.homotopy.iter().map(|(i, n)| format!("π_{i}: {n}")).collect();
    let _ = writeln!(s, "π_*(aut_1(G/U)) ⊗ Q: {}", if hom.is_empty() { "0".into() } else { hom.join(", ") });
    let _ = writeln!(s, "certificates:");
    for c in &r.certificates {
        let _ = writeln!(s, "  {}", certificate_line(c));
    }
    let _ = writeln!(s, "sign regime: {}, elimination sign: {}", r.regime, r.elimination_sign);
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiAutReport {
    pub schema: String,
    pub name: String,
    pub poincare: String,
    pub homotopy: Vec<(u32, usize)>,
}

pub fn pi_aut_text(r: &PiAutReport) -> String {
    let mut s = format!("{}\nH* = {}\n", r.name, r.poincare);
    if r.homotopy.is_empty() {
        s.push_str("π_*(aut_1) ⊗ Q = 0\n");
    }
    for (i, n) in &r.homotopy {
        let _ = writeln!(s, "dim π_{i}(aut_1) ⊗ Q = {n}");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HbsGeneratorRow {
    pub name: String,
    pub degree: i64,
    pub delta: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HbsReport {
    pub schema: String,
    pub source: Vec<String>,
    pub cohomology: String,
    pub full: bool,
    pub generators: Vec<HbsGeneratorRow>,
    pub augmentation: Vec<(String, String)>,
    pub homotopy: Vec<(u32, usize)>,
}

impl HbsReport {
    pub fn new(a: &HbsAlgebra, homotopy: Vec<(u32, usize)>) -> Self {
        let generators = a
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| HbsGeneratorRow {
                name: g.name(),
                degree: g.degree,
                delta: match a.delta(i) {
                    Ok(d) => d.to_string(),
                    Err(_) => a.delta_linear(i).to_string(),
                },
            })
            .collect();
        let augmentation = a
            .augmentation
            .values
            .iter()
            .filter(|(_, u)| !num_traits::Zero::is_zero(u))
            .map(|(g, u)| (g.name(), fmt_q(u)))
            .collect();
        let source = a.source.describe().lines().map(|l| l.trim().to_string()).collect();
        HbsReport {
            schema: "ratvis.hbs/v1".into(),
            source,
            cohomology: a.h.poincare(),
            full: a.is_full(),
            generators,
            augmentation,
            homotopy,
        }
    }
}

pub fn hbs_text(r: &HbsReport) -> String {
    let mut s = String::from("source:\n");
    for l in &r.source {
        let _ = writeln!(s, "  {l}");
    }
    let _ = writeln!(s, "H* = {}", r.cohomology);
    let _ = writeln!(s, "generators{}:", if r.full { "" } else { " (linear part of δ)" });
    for g in &r.generators {
        let _ = writeln!(s, "  δ({}) = {}    [deg {}]", g.name, g.delta, g.degree);
    }
    for (n, u) in &r.augmentation {
        let _ = writeln!(s, "  u({n}) = {u}");
    }
    let hom: Vec<String> = r.homotopy.iter().map(|(i, n)| format!("π_{i}: {n}")).collect();
    let _ = writeln!(s, "homology of (Q, δ_0): {}", if hom.is_empty() { "0".into() } else { hom.join(", ") });
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub id: String,
    pub name: String,
    pub expected: Vec<u32>,
    pub computed: Option<Vec<u32>>,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesReport {
    pub schema: String,
    pub rows: Vec<TableRow>,
    pub failures: usize,
}

pub fn tables_text(t: &TablesReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<14} {:<20} {:<28} {:<28} result", "row", "G/U", "expected vd", "computed vd");
    for r in &t.rows {
        let computed = match (&r.computed, &r.error) {
            (Some(c), _) => set(c.iter().copied()),
            (None, Some(e)) => format!("error: {e}"),
            (None, None) => "-".into(),
        };
        let mut line = format!(
            "{:<14} {:<20} {:<28} {:<28} {}",
            r.id,
            r.name,
            set(r.expected.iter().copied()),
            computed,
            if r.pass { "PASS" } else { "FAIL" }
        );
        if let (false, Some(c)) = (r.pass, &r.computed) {
            let e: BTreeSet<u32> = r.expected.iter().copied().collect();
            let c: BTreeSet<u32> = c.iter().copied().collect();
            let missing: Vec<u32> = e.difference(&c).copied().collect();
            let extra: Vec<u32> = c.difference(&e).copied().collect();
            let _ = write!(line, "  (missing {}, extra {})", set(missing), set(extra));
        }
        s.push_str(line.trim_end());
        s.push('\n');
    }
    let _ = writeln!(s, "{} rows, {} failures", t.rows.len(), t.failures);
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStage {
    pub s: u32,
    pub differentials: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReport {
    pub schema: String,
    pub m: u32,
    pub k: u32,
    pub unit: u32,
    pub stages: Vec<TowerStage>,
}

impl TowerReport {
    pub fn new(t: &FlagTower) -> Self {
        let stages = t
            .stages
            .iter()
            .enumerate()
            .map(|(s, c)| TowerStage {
                s: s as u32,
                differentials: (0..c.alg.len())
                    .filter(|&i| c.alg.is_odd(i))
                    .map(|i| (c.alg.generator(i).name.clone(), c.d.image(i).to_string()))
                    .collect(),
            })
            .collect();
        TowerReport {
            schema: "ratvis.flag-tower/v1".into(),
            m: t.m,
            k: t.k,
            unit: t.unit,
            stages,
        }
    }
}

pub fn tower_text(t: &TowerReport) -> String {
    let mut s = String::new();
    for st in &t.stages {
        let _ = writeln!(s, "stage {}:", st.s);
        for (n, d) in &st.differentials {
            let _ = writeln!(s, "  d {n} = {d}");
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: String,
    pub checks: Vec<CheckResult>,
    pub failures: usize,
}

pub fn check_text(r: &CheckReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let _ = writeln!(
            s,
            "{} {}{}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) }
        );
    }
    let _ = writeln!(s, "{} checks, {} failures", r.checks.len(), r.failures);
    s
}
