//! The linearised model of the left translation `G -> aut_1(G/U)`, visible
//! degrees, certificates from the division-functor criterion, and the catalog.

mod catalog;
mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cohomology::FiniteGradedAlgebra;
use crate::gca::{AlgebraRef, GcaElement, Generator, Monomial};
use crate::hbs::{build_hbs, expand_linear, linearized_homology, HbsAlgebra, HbsOptions, LinearizedHomology, SignRegime};
use crate::linalg::{in_span, SparseVec, Subspace, Vector};
use crate::rational::{fmt_q, Q};
use crate::sullivan::{
    build_pure_model, default_fiber_names, pure_cohomology, reduce_contractible_pairs, ChangeOfBasis, ElimSign, KMap,
    PureSullivanModel, Reduction,
};
use crate::{Error, Result};

pub use catalog::{catalog, catalog_entry, catalog_rows, grassmannian, CatalogEntry, Provenance};
pub use report::{
    CertificateReport, CohomologySummary, DegreeReport, DegreeStatus, VisibilityReport, REPORT_SCHEMA,
};

/// Generators `c_1..c_k` of `H*(BG; Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub name: String,
    pub classes: Vec<Generator>,
}

impl GroupData {
    pub fn new(name: impl Into<String>, classes: Vec<Generator>) -> Result<Self> {
        for c in &classes {
            if c.degree == 0 || c.degree % 2 == 1 {
                return Err(Error::Validation(format!("class {} has degree {}, expected positive even", c.name, c.degree)));
            }
        }
        Ok(GroupData {
            name: name.into(),
            classes,
        })
    }

    /// `n(G)`: degrees of the generators of `V_G`.
    pub fn n_g(&self) -> BTreeSet<u32> {
        self.classes.iter().map(|c| c.degree - 1).collect()
    }

    /// `dim (V_G)^i` for every `i` in `n(G)`.
    pub fn v_g_dims(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for c in &self.classes {
            *m.entry(c.degree - 1).or_insert(0) += 1;
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemOptions {
    /// degree through which `H*(G/U)` is computed; must cover the model
    pub truncation: Option<u32>,
    pub regime: SignRegime,
    pub elimination_sign: ElimSign,
    pub reduce: bool,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        ProblemOptions {
            truncation: None,
            regime: SignRegime::Tau,
            elimination_sign: ElimSign::Plus,
            reduce: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VisibilityProblem {
    pub name: String,
    pub group: GroupData,
    pub subgroup_name: String,
    /// `H*(BU; Q) = Q[h]`
    pub subgroup: AlgebraRef,
    /// `(Bι)* c_j`, one per class of `group`
    pub restriction: Vec<GcaElement>,
    pub fiber_names: Vec<String>,
    /// explicit `H*(G/U)`, used when the model's cohomology is not a complete intersection
    pub cohomology: Option<Arc<FiniteGradedAlgebra>>,
    pub options: ProblemOptions,
}

impl VisibilityProblem {
    pub fn new(
        name: impl Into<String>,
        group: GroupData,
        subgroup_name: impl Into<String>,
        subgroup: AlgebraRef,
        restriction: Vec<GcaElement>,
    ) -> Result<Self> {
        if restriction.len() != group.classes.len() {
            return Err(Error::DimensionMismatch {
                expected: group.classes.len(),
                found: restriction.len(),
            });
        }
        let fiber_names = default_fiber_names(&group.classes);
        let p = VisibilityProblem {
            name: name.into(),
            group,
            subgroup_name: subgroup_name.into(),
            subgroup,
            restriction,
            fiber_names,
            cohomology: None,
            options: ProblemOptions::default(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_fiber_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.group.classes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.group.classes.len(),
                found: names.len(),
            });
        }
        self.fiber_names = names;
        Ok(self)
    }

    pub fn with_options(mut self, options: ProblemOptions) -> Self {
        self.options = options;
        self
    }

    /// Restriction images are homogeneous of the class degree.
    pub fn validate(&self) -> Result<()> {
        for (c, r) in self.group.classes.iter().zip(&self.restriction) {
            if !Arc::ptr_eq(r.algebra(), &self.subgroup) {
                return Err(Error::AmbientMismatch);
            }
            if !r.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("(Bι)*({}) = {r}", c.name)));
            }
            if !r.is_zero() && r.degree() != Some(c.degree) {
                return Err(Error::DegreeMismatch(format!(
                    "(Bι)*({}) = {r} has degree {}, expected {}",
                    c.name,
                    r.degree().unwrap_or(0),
                    c.degree
                )));
            }
        }
        Ok(())
    }
}

/// Everything computed on the way to the visible degrees.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub model: PureSullivanModel,
    pub reduction: Reduction,
    pub h: Arc<FiniteGradedAlgebra>,
    pub kmap: KMap,
    pub hbs: HbsAlgebra,
    pub homology: LinearizedHomology,
    pub mu: MuMap,
    /// `κ` on the base generators of the pure model
    pub kappa_base: Vec<SparseVec>,
    pub formal_dimension: Option<u32>,
}

/// The linear part of the translation model: one vector over `V_G` per
/// retained generator.
#[derive(Debug, Clone)]
pub struct MuMap {
    /// names of the `V_G` generators (fibers of the pure model)
    pub targets: Vec<String>,
    pub target_degrees: Vec<u32>,
    pub images: Vec<Vector>,
}

impl MuMap {
    pub fn image(&self, g: usize) -> &Vector {
        &self.images[g]
    }

    /// Applies the map to the linear part of an element.
    pub fn apply(&self, e: &GcaElement) -> Vector {
        let mut out = vec![Q::zero(); self.targets.len()];
        for (m, c) in e.terms() {
            let mut f = m.factors();
            if let (Some((g, 1)), None) = (f.next(), f.next()) {
                for (o, x) in out.iter_mut().zip(&self.images[g]) {
                    *o += c * x;
                }
            }
        }
        out
    }

    pub fn format(&self, v: &[Q]) -> String {
        let mut parts = Vec::new();
        for (x, n) in v.iter().zip(&self.targets) {
            if x.is_zero() {
                continue;
            }
            let neg = x < &Q::zero();
            let a = if neg { -x.clone() } else { x.clone() };
            let t = if a.is_one() { n.clone() } else { format!("{}*{n}", fmt_q(&a)) };
            if parts.is_empty() {
                parts.push(if neg { format!("-{t}") } else { t });
            } else {
                parts.push(format!("{} {t}", if neg { "-" } else { "+" }));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

/// `κ = k ∘ ρ` on a polynomial in the base generators of the pure model.
fn kappa(model: &PureSullivanModel, red: &Reduction, kmap: &KMap, p: &GcaElement) -> Result<SparseVec> {
    let walg = &model.cdga.alg;
    let zalg = &red.small.cdga.alg;
    let mut images = vec![GcaElement::zero(zalg); walg.len()];
    for (pos, &b) in model.base.iter().enumerate() {
        images[b] = red.retraction[pos].clone();
    }
    kmap.apply(&p.substitute(zalg, &images)?)
}

/// `μ̃̃(v ⊗ b*)` for every retained generator, from the terms of `w(v)`
/// with exactly one odd factor: `x_j P(h) ↦ σ(b) <κ(P), b*> x_j`.
pub fn mu_linear(model: &PureSullivanModel, red: &Reduction, hbs: &HbsAlgebra) -> Result<MuMap> {
    let walg = &model.cdga.alg;
    let targets: Vec<String> = model.fiber.iter().map(|&f| walg.generator(f).name.clone()).collect();
    let target_degrees: Vec<u32> = model.fiber.iter().map(|&f| walg.degree(f)).collect();
    let pos_of: BTreeMap<usize, usize> = model.fiber.iter().enumerate().map(|(p, &f)| (f, p)).collect();
    let zalg = &red.small.cdga.alg;
    // per source generator: list of (target position, coefficient, κ(P))
    let mut expansions: Vec<Vec<(usize, Q, SparseVec)>> = Vec::with_capacity(zalg.len());
    for v in 0..zalg.len() {
        let wv = &red.w.images[v];
        let mut terms = Vec::new();
        for (m, c) in wv.terms() {
            let odd: Vec<(usize, u32)> = m.factors().filter(|&(g, _)| walg.is_odd(g)).collect();
            if odd.len() != 1 {
                continue;
            }
            let (x, _) = odd[0];
            let rest: Vec<(usize, u32)> = m.factors().filter(|&(g, _)| g != x).collect();
            let p = GcaElement::monomial(walg, Monomial::from_sorted(rest), Q::one());
            let k = kappa(model, red, &hbs.kmap, &p)?;
            terms.push((pos_of[&x], c.clone(), k));
        }
        expansions.push(terms);
    }
    let mut images = Vec::with_capacity(hbs.generators.len());
    for g in &hbs.generators {
        let mut out = vec![Q::zero(); targets.len()];
        let sigma = hbs.regime.factor(hbs.h.degree_of(g.b));
        for (j, c, k) in &expansions[g.v] {
            if let Some(x) = k.get(&g.b) {
                out[*j] += c * x * &sigma;
            }
        }
        images.push(out);
    }
    Ok(MuMap {
        targets,
        target_degrees,
        images,
    })
}

/// Label-matched map from a small model into an explicitly given cohomology.
fn explicit_kmap(red: &Reduction, h: &Arc<FiniteGradedAlgebra>, needed: u32) -> Result<KMap> {
    let z = &red.small.cdga;
    let mut images = vec![SparseVec::new(); z.alg.len()];
    for (i, g) in z.alg.generators().iter().enumerate() {
        if let Some(b) = h.index_of_label(&g.name) {
            if z.d.image(i).is_zero() {
                images[i] = h.basis_vector(b);
            }
        }
    }
    let k = KMap::new(z.clone(), h.clone(), images)?;
    k.check(needed)?;
    Ok(k)
}

pub fn analyze(p: &VisibilityProblem) -> Result<Analysis> {
    analyze_with(p, false)
}

/// As [`analyze`]; `full_delta` keeps the whole differential of the
/// function-space model instead of its linear part.
pub fn analyze_with(p: &VisibilityProblem, full_delta: bool) -> Result<Analysis> {
    p.validate()?;
    let model = build_pure_model(&p.group.classes, &p.fiber_names, &p.subgroup, &p.restriction)?;
    let reduction = if p.options.reduce {
        reduce_contractible_pairs(&model, p.options.elimination_sign)?
    } else {
        Reduction {
            small: model.clone(),
            w: ChangeOfBasis::identity(&model.cdga),
            retraction: model.base.iter().map(|&i| GcaElement::generator(&model.cdga.alg, i)).collect(),
            eliminated: Vec::new(),
        }
    };
    let needed = reduction.small.cdga.alg.max_degree().max(1) + 1;
    if let Some(t) = p.options.truncation {
        if t < needed {
            return Err(Error::TruncationTooSmall { truncation: t, needed });
        }
    }
    let target = p.options.truncation.unwrap_or(needed);
    let (h, kmap, formal_dimension) = match pure_cohomology(&reduction.small, target) {
        Ok(pc) => (pc.h, pc.kmap, Some(pc.formal_dimension)),
        Err(e) => match &p.cohomology {
            Some(h) => (h.clone(), explicit_kmap(&reduction, h, target)?, None),
            None => return Err(e),
        },
    };
    let hbs = build_hbs(
        &reduction.small.cdga,
        &kmap,
        HbsOptions {
            regime: p.options.regime,
            linear_only: !full_delta,
        },
    )?;
    let max = hbs.max_degree().max(p.group.n_g().iter().copied().max().unwrap_or(0));
    let homology = linearized_homology(&hbs, max);
    let mu = mu_linear(&model, &reduction, &hbs)?;
    let kappa_base = model
        .base
        .iter()
        .map(|&b| kappa(&model, &reduction, &kmap, &GcaElement::generator(&model.cdga.alg, b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Analysis {
        model,
        reduction,
        h,
        kmap,
        hbs,
        homology,
        mu,
        kappa_base,
        formal_dimension,
    })
}

impl Analysis {
    /// `μ̃̃ ∘ δ_0 = 0` on every retained generator and on the degree-zero pairs.
    pub fn check_chain_map(&self) -> bool {
        let zero = |v: &Vector| v.iter().all(|x| x.is_zero());
        (0..self.hbs.generators.len()).all(|g| zero(&self.mu.apply(&self.hbs.delta_linear(g))))
            && self.hbs.degree_zero_delta().iter().all(|x| zero(&self.mu.apply(x)))
    }

    /// `dim π_i(aut_1(G/U)) ⊗ Q` for the degrees with nonzero value.
    pub fn homotopy_dims(&self) -> Vec<(u32, usize)> {
        self.homology.dims()
    }

    /// Image of `H^i(Q(μ̃̃))` inside `(V_G)^i`, as a reduced basis.
    pub fn image_in_degree(&self, i: u32) -> Vec<Vector> {
        let Some(dh) = self.homology.in_degree(i) else {
            return Vec::new();
        };
        let mut span = Subspace::new(self.mu.targets.len());
        let mut basis = Vec::new();
        for k in 0..dh.dim() {
            let v = self.mu.apply(&dh.class_element(&self.hbs, k));
            if span.insert(&v) {
                basis.push(v);
            }
        }
        basis
    }
}

/// Linear parts of `π((Bι)* c_j ⊗ b*)` for every class and basis element.
struct DivisionFunctor {
    algebra: AlgebraRef,
    lin: Vec<BTreeMap<usize, GcaElement>>,
}

fn division_functor(p: &VisibilityProblem, a: &Analysis) -> Result<DivisionFunctor> {
    let walg = &a.model.cdga.alg;
    let base = &p.subgroup;
    let kappa = (0..base.len())
        .map(|g| {
            let wi = walg.index_of(&base.generator(g).name)?;
            let pos = a.model.base.iter().position(|&b| b == wi).ok_or(Error::AmbientMismatch)?;
            Ok(a.kappa_base[pos].clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let bound = p.group.classes.iter().map(|c| c.degree).max().unwrap_or(0);
    let (algebra, expansions) = expand_linear(base, &kappa, &a.h, p.options.regime, &p.restriction, bound)?;
    let lin = expansions
        .into_iter()
        .map(|t| t.into_iter().map(|(b, v)| (b, v.linear_part())).filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    Ok(DivisionFunctor { algebra, lin })
}

/// Evidence that degree `|c_i| - 1` is visible.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// `(Bι)* c_i` is decomposable in `Q[h]`
    Decomposable { class: String, degree: u32, restriction: String },
    /// `s·π((Bι)* c_i ⊗ 1*) ≡ π((Bι)* c_j ⊗ u*)` modulo decomposables,
    /// with `u* = Σ a_b b*`
    Congruence {
        class: String,
        partner: String,
        degree: u32,
        scale: Q,
        dual: Vec<(String, Q)>,
    },
    Inconclusive { class: String, degree: u32 },
}

impl Certificate {
    pub fn degree(&self) -> u32 {
        match self {
            Certificate::Decomposable { degree, .. }
            | Certificate::Congruence { degree, .. }
            | Certificate::Inconclusive { degree, .. } => *degree,
        }
    }

    pub fn certifies(&self) -> bool {
        !matches!(self, Certificate::Inconclusive { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            Certificate::Decomposable { class, degree, restriction } => {
                format!("degree {degree}: (Bι)*({class}) = {restriction} is decomposable")
            }
            Certificate::Congruence {
                class,
                partner,
                degree,
                scale,
                dual,
            } => {
                let u = dual
                    .iter()
                    .map(|(l, c)| format!("{}*({l})*", fmt_q(c)))
                    .collect::<Vec<_>>()
                    .join(" + ");
                format!("degree {degree}: {}·(Bι)*({class})⊗1* ≡ (Bι)*({partner})⊗[{u}] mod decomposables", fmt_q(scale))
            }
            Certificate::Inconclusive { class, degree } => {
                format!("degree {degree}: criterion inconclusive for {class}")
            }
        }
    }
}

/// One certificate per class `c_i`, following the division-functor criterion.
pub fn certificate_thm12(p: &VisibilityProblem, a: &Analysis) -> Result<Vec<Certificate>> {
    let df = division_functor(p, a)?;
    let h = &a.h;
    let mut out = Vec::new();
    for (i, (c, r)) in p.group.classes.iter().zip(&p.restriction).enumerate() {
        let degree = c.degree - 1;
        if r.is_decomposable() {
            out.push(Certificate::Decomposable {
                class: c.name.clone(),
                degree,
                restriction: r.to_string(),
            });
            continue;
        }
        let li = df.lin[i].get(&h.unit()).cloned().unwrap_or_else(|| GcaElement::zero(&df.algebra));
        let coords = |e: &GcaElement| -> Vector {
            (0..df.algebra.len()).map(|g| e.linear_coefficient(g)).collect()
        };
        let target = coords(&li);
        let lead = target.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Q::one);
        let scale = Q::one() / lead;
        let mut found = None;
        for (j, cj) in p.group.classes.iter().enumerate() {
            if cj.degree <= c.degree {
                continue;
            }
            let du = cj.degree - c.degree;
            let bs: Vec<usize> = h.by_degree(du).to_vec();
            if bs.is_empty() {
                continue;
            }
            let cols: Vec<Vector> = bs
                .iter()
                .map(|b| coords(&df.lin[j].get(b).cloned().unwrap_or_else(|| GcaElement::zero(&df.algebra))))
                .collect();
            if let Some(x) = in_span(&target, &cols)? {
                // replay the relation
                let mut rest = target.clone();
                for (col, a) in cols.iter().zip(&x) {
                    for (r, v) in rest.iter_mut().zip(col) {
                        *r -= a * v;
                    }
                }
                if rest.iter().any(|v| !v.is_zero()) {
                    return Err(Error::Invariant(format!("certificate for {} does not replay", c.name)));
                }
                let dual = bs
                    .iter()
                    .zip(&x)
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(&b, a)| (h.label(b).to_string(), a * &scale))
                    .collect();
                found = Some(Certificate::Congruence {
                    class: c.name.clone(),
                    partner: cj.name.clone(),
                    degree,
                    scale: scale.clone(),
                    dual,
                });
                break;
            }
        }
        out.push(found.unwrap_or(Certificate::Inconclusive {
            class: c.name.clone(),
            degree,
        }));
    }
    Ok(out)
}

/// Visible degrees by the recognition principle: `i` is visible when the
/// image of `H^i(Q(μ̃̃))` is all of `(V_G)^i`.
pub fn visible_degrees(p: &VisibilityProblem) -> Result<VisibilityReport> {
    let a = analyze(p)?;
    if !a.check_chain_map() {
        return Err(Error::Invariant("μ̃̃ ∘ δ_0 ≠ 0".into()));
    }
    let certificates = certificate_thm12(p, &a)?;
    Ok(VisibilityReport::build(p, &a, &certificates))
}
