//! Homogeneous spaces with stored visible degrees.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{GroupData, VisibilityProblem};
use crate::gca::{Algebra, AlgebraRef, GcaElement, Generator};
use crate::poly::parse_polynomial;
use crate::{Error, Result};

/// Where the restriction data of an entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// restriction map written out for this case
    PaperCase,
    /// rational type plus a representative restriction with the required decomposability
    Decomposability,
    /// symmetric-function restriction of a flag manifold
    Derived,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// row label, e.g. `6'` or `11:n=3`
    pub id: String,
    /// 1 or 2 for the two tables, 0 for the flag manifolds
    pub table: u8,
    pub problem: VisibilityProblem,
    pub expected_vd: BTreeSet<u32>,
    pub provenance: Provenance,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.problem.name
    }

    /// Row number without parameters: `11` for `11:n=3`.
    pub fn row(&self) -> &str {
        self.id.split(':').next().unwrap_or(&self.id)
    }
}

type Gens = Vec<(String, u32)>;

fn gens(list: &[(&str, u32)]) -> Gens {
    list.iter().map(|&(n, d)| (n.to_string(), d)).collect()
}

fn parsed(texts: Vec<String>) -> impl FnOnce(&AlgebraRef) -> Vec<GcaElement> {
    move |a| {
        texts
            .iter()
            .map(|t| parse_polynomial(a, t).unwrap_or_else(|e| panic!("catalog polynomial `{t}`: {e}")))
            .collect()
    }
}

fn strs(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

struct Row {
    id: String,
    table: u8,
    name: String,
    group: String,
    classes: Gens,
    subgroup: String,
    base: Gens,
    fibers: Option<Vec<String>>,
    expected: BTreeSet<u32>,
    provenance: Provenance,
}

impl Row {
    fn build(self, restriction: impl FnOnce(&AlgebraRef) -> Vec<GcaElement>) -> CatalogEntry {
        let classes = self.classes.iter().map(|(n, d)| Generator::new(n.clone(), *d)).collect();
        let group = GroupData::new(self.group, classes).expect("catalog group");
        let base = Algebra::new(self.base.iter().map(|(n, d)| Generator::new(n.clone(), *d)).collect()).expect("catalog base");
        let r = restriction(&base);
        let mut problem = VisibilityProblem::new(self.name, group, self.subgroup, base, r).expect("catalog problem");
        if let Some(f) = self.fibers {
            problem = problem.with_fiber_names(f).expect("catalog fibers");
        }
        CatalogEntry {
            id: self.id,
            table: self.table,
            problem,
            expected_vd: self.expected,
            provenance: self.provenance,
        }
    }
}

fn range(from: u32, to: u32, step: usize) -> BTreeSet<u32> {
    (from..=to).step_by(step).collect()
}

fn so_odd(n: u32) -> Gens {
    (1..=n).map(|i| (format!("p{i}"), 4 * i)).collect()
}

fn primed(letter: &str, n: u32, unit: u32) -> Gens {
    (1..=n).map(|i| (format!("{letter}{i}'"), unit * i)).collect()
}

fn g2() -> Gens {
    gens(&[("y4", 4), ("y12", 12)])
}

fn g2_row(id: &str, name: &str, sub: &str, base: Gens, restriction: &[&str], expected: &[u32], prov: Provenance) -> CatalogEntry {
    Row {
        id: id.into(),
        table: 1,
        name: name.into(),
        group: "G2".into(),
        classes: g2(),
        subgroup: sub.into(),
        base,
        fibers: None,
        expected: expected.iter().copied().collect(),
        provenance: prov,
    }
    .build(parsed(strs(restriction)))
}

fn table1() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 2..=3u32 {
        let mut base = gens(&[("chi", 2)]);
        base.extend(primed("p", n - 1, 4));
        let pp = |i: u32| -> String {
            if i == 0 {
                "1".into()
            } else if i >= n {
                "0".into()
            } else {
                format!("p{i}'")
            }
        };
        let res = (1..=n)
            .map(|i| {
                let s = if i % 2 == 1 { "-" } else { "" };
                format!("{s}(chi^2*{} + {})", pp(i - 1), pp(i))
            })
            .collect();
        out.push(
            Row {
                id: format!("1:n={n}"),
                table: 1,
                name: format!("SO{}/SO{}xSO2", 2 * n + 1, 2 * n - 1),
                group: format!("SO{}", 2 * n + 1),
                classes: so_odd(n),
                subgroup: format!("SO{}xSO2", 2 * n - 1),
                base,
                fibers: Some((1..=n).map(|i| format!("tau{}", 2 * i)).collect()),
                expected: range(3, 4 * n - 1, 4),
                provenance: Provenance::PaperCase,
            }
            .build(parsed(res)),
        );
    }
    for n in 2..=3u32 {
        let res = (1..=n).map(|i| if i < n { format!("p{i}'") } else { "0".into() }).collect();
        out.push(
            Row {
                id: format!("2:n={n}"),
                table: 1,
                name: format!("SO{}/SO{}", 2 * n + 1, 2 * n - 1),
                group: format!("SO{}", 2 * n + 1),
                classes: so_odd(n),
                subgroup: format!("SO{}", 2 * n - 1),
                base: primed("p", n - 1, 4),
                fibers: None,
                expected: [4 * n - 1].into(),
                provenance: Provenance::Decomposability,
            }
            .build(parsed(res)),
        );
    }
    out.push(
        Row {
            id: "3".into(),
            table: 1,
            name: "SU3/SO3".into(),
            group: "SU3".into(),
            classes: gens(&[("c2", 4), ("c3", 6)]),
            subgroup: "SO3".into(),
            base: gens(&[("p1", 4)]),
            fibers: None,
            expected: [5].into(),
            provenance: Provenance::Decomposability,
        }
        .build(parsed(strs(&["-p1", "0"]))),
    );
    out.push(
        Row {
            id: "4".into(),
            table: 1,
            name: "Sp2/SU2".into(),
            group: "Sp2".into(),
            classes: gens(&[("q1", 4), ("q2", 8)]),
            subgroup: "SU2".into(),
            base: gens(&[("c2", 4)]),
            fibers: None,
            expected: [7].into(),
            provenance: Provenance::Decomposability,
        }
        .build(parsed(strs(&["c2", "c2^2"]))),
    );
    let pc = Provenance::PaperCase;
    let dc = Provenance::Decomposability;
    out.push(g2_row("5", "G2/SO4", "SO4", gens(&[("p1", 4), ("chi", 4)]), &["p1 - chi", "chi^2*p1 - 2*chi^3"], &[11], pc));
    let u2 = || gens(&[("c1", 2), ("c2", 4)]);
    out.push(g2_row("6", "G2/U2", "U2", u2(), &["c1^2 - 3*c2", "c1^2*c2^2 - 4*c2^3"], &[3, 11], pc));
    out.push(g2_row("7", "G2/SU2", "SU2", gens(&[("c2", 4)]), &["3*c2", "c2^3"], &[11], dc));
    out.push(g2_row("6'", "G2/U2[1]", "U2", u2(), &["c1^2 - c2", "c1^2*c2^2"], &[3, 11], pc));
    out.push(g2_row("7'", "G2/SU2[1]", "SU2", gens(&[("c2", 4)]), &["c2", "c2^3"], &[11], dc));
    out.push(g2_row("8", "G2/SO3", "SO3", gens(&[("p1", 4)]), &["4*p1", "p1^3"], &[11], dc));
    out.push(g2_row("9", "G2/SO3[28]", "SO3", gens(&[("p1", 4)]), &["28*p1", "p1^3"], &[11], dc));
    out
}

fn table2() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let dc = Provenance::Decomposability;
    let su = |n: u32| -> Gens { (2..=n + 1).map(|i| (format!("c{i}"), 2 * i)).collect() };
    let sp = |n: u32| -> Gens { (1..=n).map(|i| (format!("q{i}"), 4 * i)).collect() };
    for n in 2..=5u32 {
        let res = (2..=n + 1).map(|i| if i <= n { format!("c{i}'") } else { "0".into() }).collect();
        let base = (2..=n).map(|i| (format!("c{i}'"), 2 * i)).collect();
        out.push(
            Row {
                id: format!("10:n={n}"),
                table: 2,
                name: format!("SU{}/SU{n}", n + 1),
                group: format!("SU{}", n + 1),
                classes: su(n),
                subgroup: format!("SU{n}"),
                base,
                fibers: None,
                expected: [2 * n + 1].into(),
                provenance: dc,
            }
            .build(parsed(res)),
        );
    }
    for n in 1..=5u32 {
        let c = |i: u32| if i == 0 { "1".to_string() } else if i > n { "0".to_string() } else { format!("c{i}'") };
        let res = (2..=n + 1).map(|i| format!("{} - c1'*{}", c(i), c(i - 1))).collect();
        out.push(
            Row {
                id: format!("11:n={n}"),
                table: 2,
                name: format!("SU{}/S(U{n}xU1)", n + 1),
                group: format!("SU{}", n + 1),
                classes: su(n),
                subgroup: format!("S(U{n}xU1)"),
                base: primed("c", n, 2),
                fibers: None,
                expected: range(3, 2 * n + 1, 2),
                provenance: Provenance::PaperCase,
            }
            .build(parsed(res)),
        );
    }
    for n in 1..=6u32 {
        let mut base = primed("p", n - 1, 4);
        base.push(("chi".into(), 2 * n));
        let res = (1..=n).map(|i| if i < n { format!("p{i}'") } else { "chi^2".into() }).collect();
        out.push(
            Row {
                id: format!("12:n={n}"),
                table: 2,
                name: format!("SO{}/SO{}", 2 * n + 1, 2 * n),
                group: format!("SO{}", 2 * n + 1),
                classes: so_odd(n),
                subgroup: format!("SO{}", 2 * n),
                base,
                fibers: None,
                expected: [4 * n - 1].into(),
                provenance: Provenance::PaperCase,
            }
            .build(parsed(res)),
        );
    }
    out.push(
        Row {
            id: "13".into(),
            table: 2,
            name: "SO9/SO7".into(),
            group: "SO9".into(),
            classes: so_odd(4),
            subgroup: "SO7".into(),
            base: primed("p", 3, 4),
            fibers: None,
            expected: [15].into(),
            provenance: dc,
        }
        .build(parsed(strs(&["p1'", "p2'", "p3'", "0"]))),
    );
    out.push(
        Row {
            id: "14".into(),
            table: 2,
            name: "Spin7/G2".into(),
            group: "Spin7".into(),
            classes: gens(&[("p1", 4), ("p2", 8), ("p3", 12)]),
            subgroup: "G2".into(),
            base: g2(),
            fibers: None,
            expected: [7].into(),
            provenance: dc,
        }
        .build(parsed(strs(&["y4", "y4^2", "y12"]))),
    );
    for n in 2..=5u32 {
        let res = (1..=n).map(|i| if i < n { format!("q{i}'") } else { "0".into() }).collect();
        out.push(
            Row {
                id: format!("15:n={n}"),
                table: 2,
                name: format!("Sp{n}/Sp{}", n - 1),
                group: format!("Sp{n}"),
                classes: sp(n),
                subgroup: format!("Sp{}", n - 1),
                base: primed("q", n - 1, 4),
                fibers: None,
                expected: [4 * n - 1].into(),
                provenance: dc,
            }
            .build(parsed(res)),
        );
    }
    let q = |n: u32, i: u32| {
        if i == 0 {
            "1".to_string()
        } else if i >= n {
            "0".to_string()
        } else {
            format!("q{i}'")
        }
    };
    for n in 1..=4u32 {
        let mut base = gens(&[("t", 2)]);
        base.extend(primed("q", n - 1, 4));
        let res = (1..=n).map(|i| format!("{} + t^2*{}", q(n, i), q(n, i - 1))).collect();
        out.push(
            Row {
                id: format!("16:n={n}"),
                table: 2,
                name: format!("Sp{n}/Sp{}xU1", n - 1),
                group: format!("Sp{n}"),
                classes: sp(n),
                subgroup: format!("Sp{}xU1", n - 1),
                base,
                fibers: None,
                expected: range(3, 4 * n - 1, 4),
                provenance: Provenance::PaperCase,
            }
            .build(parsed(res)),
        );
    }
    for n in 2..=4u32 {
        let mut base = primed("q", n - 1, 4);
        base.push(("q1''".into(), 4));
        let res = (1..=n).map(|i| format!("{} + q1''*{}", q(n, i), q(n, i - 1))).collect();
        out.push(
            Row {
                id: format!("17:n={n}"),
                table: 2,
                name: format!("Sp{n}/Sp{}xSp1", n - 1),
                group: format!("Sp{n}"),
                classes: sp(n),
                subgroup: format!("Sp{}xSp1", n - 1),
                base,
                fibers: None,
                expected: range(7, 4 * n - 1, 4),
                provenance: Provenance::PaperCase,
            }
            .build(parsed(res)),
        );
    }
    for n in 2..=7u32 {
        let mut classes: Gens = (1..n).map(|i| (format!("p{i}"), 4 * i)).collect();
        classes.push(("e".into(), 2 * n));
        let mut res: Vec<String> = (1..n).map(|i| format!("p{i}'")).collect();
        res.push("0".into());
        out.push(
            Row {
                id: format!("18:n={n}"),
                table: 2,
                name: format!("SO{}/SO{}", 2 * n, 2 * n - 1),
                group: format!("SO{}", 2 * n),
                classes,
                subgroup: format!("SO{}", 2 * n - 1),
                base: primed("p", n - 1, 4),
                fibers: None,
                expected: [2 * n - 1].into(),
                provenance: Provenance::PaperCase,
            }
            .build(parsed(res)),
        );
    }
    out.push(
        Row {
            id: "19".into(),
            table: 2,
            name: "F4/Spin9".into(),
            group: "F4".into(),
            classes: gens(&[("y4", 4), ("y12", 12), ("y16", 16), ("y24", 24)]),
            subgroup: "Spin9".into(),
            base: gens(&[("y4", 4), ("y8", 8), ("y12", 12), ("y16", 16)]),
            fibers: None,
            expected: [23].into(),
            provenance: Provenance::PaperCase,
        }
        .build(parsed(strs(&["y4", "y12", "y16", "y8^3"]))),
    );
    out.push(
        Row {
            id: "20".into(),
            table: 2,
            name: "G2/SU3".into(),
            group: "G2".into(),
            classes: g2(),
            subgroup: "SU3".into(),
            base: gens(&[("c2", 4), ("c3", 6)]),
            fibers: None,
            expected: [11].into(),
            provenance: dc,
        }
        .build(parsed(strs(&["c2", "c3^2"]))),
    );
    out
}

/// `e_1..e_m` of `t_1..t_m`.
fn elementary(ts: &[GcaElement]) -> Vec<GcaElement> {
    let alg = ts[0].algebra().clone();
    let mut e = vec![GcaElement::one(&alg)];
    for t in ts {
        let mut next = e.clone();
        next.push(GcaElement::zero(&alg));
        for i in 1..next.len() {
            next[i] = &e.get(i).cloned().unwrap_or_else(|| GcaElement::zero(&alg)) + &(t * &e[i - 1]);
        }
        e = next;
    }
    e.remove(0);
    e
}

fn flags() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for m in 2..=6u32 {
        out.push(
            Row {
                id: format!("flag-su:m={m}"),
                table: 0,
                name: format!("SU{m}/T"),
                group: format!("SU{m}"),
                classes: (2..=m).map(|i| (format!("c{i}"), 2 * i)).collect(),
                subgroup: format!("T{}", m - 1),
                base: (1..m).map(|i| (format!("t{i}"), 2)).collect(),
                fibers: None,
                expected: range(3, 2 * m - 1, 2),
                provenance: Provenance::Derived,
            }
            .build(|a| {
                let mut ts: Vec<GcaElement> = (0..a.len()).map(|i| GcaElement::generator(a, i)).collect();
                let sum = ts.iter().fold(GcaElement::zero(a), |acc, t| &acc + t);
                ts.push(-&sum);
                elementary(&ts).into_iter().skip(1).collect()
            }),
        );
    }
    for m in 1..=4u32 {
        out.push(
            Row {
                id: format!("flag-sp:m={m}"),
                table: 0,
                name: format!("Sp{m}/Sp1^{m}"),
                group: format!("Sp{m}"),
                classes: (1..=m).map(|i| (format!("q{i}"), 4 * i)).collect(),
                subgroup: format!("Sp1^{m}"),
                base: (1..=m).map(|i| (format!("s{i}"), 4)).collect(),
                fibers: None,
                expected: range(7, 4 * m - 1, 4),
                provenance: Provenance::Derived,
            }
            .build(|a| {
                let ss: Vec<GcaElement> = (0..a.len()).map(|i| GcaElement::generator(a, i)).collect();
                elementary(&ss)
            }),
        );
    }
    out
}

/// Every entry of both tables, then the flag manifolds.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut v = table1();
    v.extend(table2());
    v.extend(flags());
    v
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
        .flat_map(char::to_lowercase)
        .collect()
}

/// Looks an entry up by id (`6'`, `11:n=3`) or by name (`G2/U2`, `Spin(7)/G2`).
pub fn catalog_entry(key: &str) -> Result<CatalogEntry> {
    let k = normalize(key);
    catalog()
        .into_iter()
        .find(|e| e.id == key || normalize(&e.problem.name) == k)
        .ok_or_else(|| Error::UnknownCatalogEntry(key.to_string()))
}

/// Entries whose row number, id or name matches one of `rows`; all entries when empty.
pub fn catalog_rows(rows: &[String]) -> Vec<CatalogEntry> {
    let all = catalog();
    if rows.is_empty() {
        return all;
    }
    all.into_iter()
        .filter(|e| {
            rows.iter()
                .any(|r| e.row() == r || &e.id == r || normalize(&e.problem.name) == normalize(r))
        })
        .collect()
}

/// `U(m+k)/U(m) x U(k)` with classes `C_l ↦ Σ_{i+j=l} c'_i c_j` and fibers `tau1..tau{m+k}`.
pub fn grassmannian(m: u32, k: u32) -> Result<VisibilityProblem> {
    if k == 0 || m < k {
        return Err(Error::Validation(format!("Grassmannian needs m >= k >= 1, got m = {m}, k = {k}")));
    }
    let mut base: Vec<Generator> = (1..=m).map(|i| Generator::new(format!("c{i}'"), 2 * i)).collect();
    base.extend((1..=k).map(|i| Generator::new(format!("c{i}"), 2 * i)));
    let alg = Algebra::new(base)?;
    let factor = |name: String, i: u32, top: u32| -> Result<GcaElement> {
        match i {
            0 => Ok(GcaElement::one(&alg)),
            i if i > top => Ok(GcaElement::zero(&alg)),
            _ => GcaElement::named(&alg, &name),
        }
    };
    let mut restriction = Vec::new();
    for l in 1..=m + k {
        let mut e = GcaElement::zero(&alg);
        for i in 0..=l.min(m) {
            let a = factor(format!("c{i}'"), i, m)?;
            let b = factor(format!("c{}", l - i), l - i, k)?;
            e = &e + &(&a * &b);
        }
        restriction.push(e);
    }
    let classes = (1..=m + k).map(|l| Generator::new(format!("C{l}"), 2 * l)).collect();
    let group = GroupData::new(format!("U{}", m + k), classes)?;
    VisibilityProblem::new(format!("U{}/U{m}xU{k}", m + k), group, format!("U{m}xU{k}"), alg, restriction)?
        .with_fiber_names((1..=m + k).map(|l| format!("tau{l}")).collect())
}
