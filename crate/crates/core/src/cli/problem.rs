//! Problem files.
//!
//! ```toml
//! [group]
//! name = "G2"
//! classes = [{ name = "y4", degree = 4 }, { name = "y12", degree = 12 }]
//!
//! [subgroup]
//! name = "U2"
//! generators = [{ name = "c1", degree = 2 }, { name = "c2", degree = 4 }]
//!
//! [restriction]
//! y4 = "c1^2 - 3*c2"
//! y12 = "c1^2*c2^2 - 4*c2^3"
//!
//! [fibers]            # optional names of the odd generators
//! y4 = "x3"
//!
//! [cohomology]        # optional explicit H*(G/U)
//! basis = [{ label = "1", degree = 0 }, { label = "c1", degree = 2 }]
//! products = [{ left = "c1", right = "c1", value = { "c1^2" = "1" } }]
//!
//! [options]
//! truncation = 12
//! regime = "tau"      # or "plain"
//! elimination_sign = "plus"
//! reduce = true
//! ```

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use crate::cohomology::{BasisElement, FiniteGradedAlgebra};
use crate::gca::{Algebra, Generator};
use crate::hbs::SignRegime;
use crate::linalg::SparseVec;
use crate::poly::parse_polynomial;
use crate::rational::parse_q;
use crate::sullivan::ElimSign;
use crate::visibility::{GroupData, ProblemOptions, VisibilityProblem};
use crate::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedDegree {
    name: Spanned<String>,
    degree: Spanned<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSection {
    name: String,
    classes: Spanned<Vec<NamedDegree>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubgroupSection {
    name: String,
    generators: Spanned<Vec<NamedDegree>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisEntry {
    label: Spanned<String>,
    degree: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductEntry {
    left: Spanned<String>,
    right: Spanned<String>,
    value: Spanned<BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CohomologySection {
    basis: Spanned<Vec<BasisEntry>>,
    #[serde(default)]
    products: Vec<ProductEntry>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct OptionsSection {
    truncation: Option<u32>,
    regime: Option<Spanned<String>>,
    elimination_sign: Option<Spanned<String>>,
    reduce: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    group: Spanned<GroupSection>,
    subgroup: SubgroupSection,
    restriction: Spanned<BTreeMap<String, Spanned<String>>>,
    fibers: Option<BTreeMap<String, String>>,
    cohomology: Option<Spanned<CohomologySection>>,
    #[serde(default)]
    options: OptionsSection,
}

/// 1-based line and column of a byte offset.
pub fn line_column(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

struct Ctx<'a> {
    path: &'a str,
    src: &'a str,
}

impl Ctx<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        let (line, column) = line_column(self.src, offset);
        Error::Parse {
            path: self.path.to_string(),
            line,
            column,
            message: message.into(),
        }
    }

    fn at(&self, span: Range<usize>, message: impl Into<String>) -> Error {
        self.err(span.start, message)
    }
}

fn generators(ctx: &Ctx, list: &[NamedDegree]) -> Result<Vec<Generator>> {
    list.iter()
        .map(|g| {
            if g.name.get_ref().is_empty() {
                return Err(ctx.at(g.name.span(), "empty generator name"));
            }
            Ok(Generator::new(g.name.get_ref().clone(), *g.degree.get_ref()))
        })
        .collect()
}

fn parse_options(ctx: &Ctx, o: &OptionsSection) -> Result<ProblemOptions> {
    let mut out = ProblemOptions {
        truncation: o.truncation,
        ..ProblemOptions::default()
    };
    if let Some(r) = &o.regime {
        out.regime = r
            .get_ref()
            .parse::<SignRegime>()
            .map_err(|_| ctx.at(r.span(), format!("unknown sign regime `{}`, expected `tau` or `plain`", r.get_ref())))?;
    }
    if let Some(s) = &o.elimination_sign {
        out.elimination_sign = s
            .get_ref()
            .parse::<ElimSign>()
            .map_err(|_| ctx.at(s.span(), format!("unknown elimination sign `{}`, expected `plus` or `minus`", s.get_ref())))?;
    }
    if let Some(r) = o.reduce {
        out.reduce = r;
    }
    Ok(out)
}

fn parse_cohomology(ctx: &Ctx, c: &Spanned<CohomologySection>) -> Result<FiniteGradedAlgebra> {
    let sec = c.get_ref();
    let basis: Vec<BasisElement> = sec
        .basis
        .get_ref()
        .iter()
        .map(|b| BasisElement {
            label: b.label.get_ref().clone(),
            degree: b.degree,
        })
        .collect();
    let index = |s: &Spanned<String>| -> Result<usize> {
        basis
            .iter()
            .position(|b| &b.label == s.get_ref())
            .ok_or_else(|| ctx.at(s.span(), format!("unknown basis element `{}`", s.get_ref())))
    };
    let mut products = Vec::new();
    for p in &sec.products {
        let i = index(&p.left)?;
        let j = index(&p.right)?;
        let mut v = SparseVec::new();
        for (label, coef) in p.value.get_ref() {
            let k = basis
                .iter()
                .position(|b| &b.label == label)
                .ok_or_else(|| ctx.at(p.value.span(), format!("unknown basis element `{label}`")))?;
            let q = parse_q(coef).ok_or_else(|| ctx.at(p.value.span(), format!("`{coef}` is not a rational number")))?;
            v.insert(k, q);
        }
        products.push(((i, j), v));
    }
    FiniteGradedAlgebra::from_table(basis, products).map_err(|e| ctx.at(c.span(), e.to_string()))
}

/// Parses a problem file; `path` is used in diagnostics only.
pub fn parse_problem(path: &str, src: &str) -> Result<VisibilityProblem> {
    let ctx = Ctx { path, src };
    let raw: RawProblem = toml::from_str(src).map_err(|e| {
        let off = e.span().map_or(0, |s| s.start);
        ctx.err(off, e.message().to_string())
    })?;
    let group_sec = raw.group.get_ref();
    let classes = generators(&ctx, group_sec.classes.get_ref())?;
    if classes.is_empty() {
        return Err(ctx.at(group_sec.classes.span(), "group needs at least one class"));
    }
    let group = GroupData::new(group_sec.name.clone(), classes.clone()).map_err(|e| ctx.at(group_sec.classes.span(), e.to_string()))?;
    let base_gens = generators(&ctx, raw.subgroup.generators.get_ref())?;
    let base = Algebra::new(base_gens).map_err(|e| ctx.at(raw.subgroup.generators.span(), e.to_string()))?;

    let restr = raw.restriction.get_ref();
    if restr.is_empty() {
        return Err(ctx.at(raw.restriction.span(), "restriction is empty"));
    }
    for key in restr.keys() {
        if !classes.iter().any(|c| &c.name == key) {
            return Err(ctx.at(restr[key].span(), format!("`{key}` is not a class of the group")));
        }
    }
    let mut restriction = Vec::new();
    for c in &classes {
        let text = restr
            .get(&c.name)
            .ok_or_else(|| ctx.at(raw.restriction.span(), format!("missing restriction for `{}`", c.name)))?;
        // the span covers the opening quote
        let start = text.span().start + 1;
        let e = parse_polynomial(&base, text.get_ref()).map_err(|pe| ctx.err(start + pe.offset, pe.message))?;
        if !e.is_homogeneous() || (!e.is_zero() && e.degree() != Some(c.degree)) {
            return Err(ctx.at(text.span(), format!("restriction of `{}` must be homogeneous of degree {}", c.name, c.degree)));
        }
        restriction.push(e);
    }
    let name = format!("{}/{}", group_sec.name, raw.subgroup.name);
    let mut problem = VisibilityProblem::new(name, group, raw.subgroup.name.clone(), base, restriction)
        .map_err(|e| ctx.at(raw.group.span(), e.to_string()))?;
    if let Some(f) = &raw.fibers {
        let mut names = problem.fiber_names.clone();
        for (key, v) in f {
            let i = classes
                .iter()
                .position(|c| &c.name == key)
                .ok_or_else(|| ctx.err(0, format!("[fibers]: `{key}` is not a class of the group")))?;
            names[i] = v.clone();
        }
        problem = problem.with_fiber_names(names)?;
    }
    if let Some(c) = &raw.cohomology {
        problem.cohomology = Some(Arc::new(parse_cohomology(&ctx, c)?));
    }
    problem.options = parse_options(&ctx, &raw.options)?;
    Ok(problem)
}

#[cfg(test)]
mod tests {
    use super::*;

    const G2U2: &str = r#"
[group]
name = "G2"
classes = [{ name = "y4", degree = 4 }, { name = "y12", degree = 12 }]

[subgroup]
name = "U2"
generators = [{ name = "c1", degree = 2 }, { name = "c2", degree = 4 }]

[restriction]
y4 = "c1^2 - 3*c2"
y12 = "c1^2*c2^2 - 4*c2^3"
"#;

    #[test]
    fn parses_g2_u2() {
        let p = parse_problem("g2.toml", G2U2).unwrap();
        assert_eq!(p.name, "G2/U2");
        assert_eq!(p.restriction[0].to_string(), "c1^2 - 3*c2");
        assert_eq!(p.fiber_names, ["x3", "x11"]);
    }

    #[test]
    fn polynomial_errors_point_into_the_string() {
        let src = G2U2.replace("c1^2 - 3*c2", "c1^2 - 3*q2");
        match parse_problem("g2.toml", &src) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (11, 16)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_restriction_is_rejected() {
        let src = G2U2.replace("y4 = \"c1^2 - 3*c2\"\ny12 = \"c1^2*c2^2 - 4*c2^3\"\n", "");
        let e = parse_problem("g2.toml", &src).unwrap_err();
        assert!(e.to_string().contains("restriction is empty"), "{e}");
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let src = G2U2.replace("c1^2 - 3*c2", "c1");
        assert!(parse_problem("g2.toml", &src).is_err());
    }

    #[test]
    fn line_columns() {
        assert_eq!(line_column("ab\ncd", 4), (2, 2));
        assert_eq!(line_column("ab", 0), (1, 1));
    }
}
