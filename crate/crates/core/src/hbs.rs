//! The function-space model on generators `v ⊗ b*` for a formal source.
//!
//! `v` runs over the generators of a Sullivan model `(∧V, d)` and `b` over
//! the chosen basis of `H = H*(∧V, d)`. Writing
//! `Φ(v) = Σ_b (v ⊗ b*) ⊗ b` in `E ⊗ H` and extending multiplicatively, the
//! differential is read off from `Φ(dv) = Σ_b δ(v ⊗ b*) ⊗ b`. Pairs of degree
//! zero are replaced by their augmentation value `u`, pairs of negative
//! degree by zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::FiniteGradedAlgebra;
use crate::gca::{Algebra, AlgebraRef, Cdga, Derivation, GcaElement, Generator, Monomial};
use crate::linalg::{kernel_basis, RationalMatrix, SparseVec, Subspace, Vector};
use crate::rational::{fmt_q, sign_q, tau_sign, Q};
use crate::sullivan::{pure_cohomology, KMap, PureSullivanModel};
use crate::{Error, Result};

/// Where the `(-1)^τ(|b|)` factor of the augmentation goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignRegime {
    /// `u(v ⊗ b*) = (-1)^τ(|b|) <k(v), b*>`
    #[default]
    Tau,
    /// `u(v ⊗ b*) = <k(v), b*>`
    Plain,
}

impl SignRegime {
    pub fn factor(self, degree: u32) -> Q {
        match self {
            SignRegime::Tau => tau_sign(degree),
            SignRegime::Plain => Q::one(),
        }
    }
}

impl fmt::Display for SignRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignRegime::Tau => "tau",
            SignRegime::Plain => "plain",
        })
    }
}

impl std::str::FromStr for SignRegime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tau" => Ok(SignRegime::Tau),
            "plain" => Ok(SignRegime::Plain),
            _ => Err(Error::Validation(format!("unknown sign regime '{s}' (expected tau or plain)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HbsGenerator {
    /// index of `v` in the source algebra
    pub v: usize,
    pub v_name: String,
    /// index of `b` in the basis of `H`
    pub b: usize,
    pub b_label: String,
    pub degree: i64,
}

impl HbsGenerator {
    pub fn name(&self) -> String {
        pair_name(&self.v_name, &self.b_label)
    }
}

impl fmt::Display for HbsGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `v⊗b*`, with the label parenthesised when it is a product.
pub fn pair_name(v: &str, label: &str) -> String {
    if label.contains(['*', '^']) {
        format!("{v}⊗({label})*")
    } else {
        format!("{v}⊗{label}*")
    }
}

/// Values of `u` on the degree-zero pairs.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Augmentation {
    pub values: Vec<(HbsGenerator, Q)>,
}

impl Augmentation {
    pub fn get(&self, v: usize, b: usize) -> Option<&Q> {
        self.values.iter().find(|(g, _)| g.v == v && g.b == b).map(|(_, q)| q)
    }
}

/// `u(v ⊗ b*)` for `|v| = |b|`.
pub fn u_value(v: usize, b: usize, kmap: &KMap, regime: SignRegime) -> Result<Q> {
    let dv = kmap.source.alg.degree(v);
    let db = kmap.target.degree_of(b);
    if dv != db {
        return Err(Error::DegreeMismatch(format!(
            "u({}) needs |v| = |b|, got {dv} and {db}",
            pair_name(&kmap.source.alg.generator(v).name, kmap.target.label(b))
        )));
    }
    let k = kmap.images[v].get(&b).cloned().unwrap_or_else(Q::zero);
    Ok(regime.factor(db) * k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HbsOptions {
    pub regime: SignRegime,
    /// keep only terms of word length <= 1 in δ
    pub linear_only: bool,
}

#[derive(Debug, Clone)]
pub struct HbsAlgebra {
    pub source: Cdga,
    pub h: Arc<FiniteGradedAlgebra>,
    pub kmap: KMap,
    pub regime: SignRegime,
    /// retained generators; `generators[i]` is generator `i` of `algebra`
    pub generators: Vec<HbsGenerator>,
    pub algebra: AlgebraRef,
    pub augmentation: Augmentation,
    delta: Vec<GcaElement>,
    full: bool,
    /// `δ_0` of the degree-zero pairs, in augmentation order
    degree_zero_delta: Vec<GcaElement>,
    lookup: HashMap<(usize, usize), usize>,
}

/// An element of `E ⊗ H`, indexed by basis elements of `H`.
type Tensor = BTreeMap<usize, GcaElement>;

struct Expander<'a> {
    e: &'a AlgebraRef,
    h: &'a FiniteGradedAlgebra,
    phi: Vec<Tensor>,
    linear_only: bool,
}

impl Expander<'_> {
    fn trim(&self, x: GcaElement) -> GcaElement {
        if self.linear_only {
            let mut t = x.linear_part();
            t.add_term(Monomial::one(), x.constant_term());
            t
        } else {
            x
        }
    }

    /// `(e ⊗ b)(f ⊗ c) = (-1)^{|b||f|} ef ⊗ bc`, dropping `H`-degrees above `bound`.
    fn mul(&self, a: &Tensor, b: &Tensor, bound: u32) -> Result<Tensor> {
        let mut out: Tensor = BTreeMap::new();
        for (&i, x) in a {
            let di = self.h.degree_of(i);
            for (&j, y) in b {
                if di + self.h.degree_of(j) > bound {
                    continue;
                }
                let prod = self.h.mul_basis(i, j)?;
                if prod.is_empty() {
                    continue;
                }
                let mut xy = self.trim(x * y);
                if xy.is_zero() {
                    continue;
                }
                if di % 2 == 1 && y.degree().unwrap_or(0) % 2 == 1 {
                    xy = -&xy;
                }
                for (k, c) in prod {
                    let entry = out.entry(k).or_insert_with(|| GcaElement::zero(self.e));
                    entry.add_scaled(&xy, &c);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    fn expand(&self, p: &GcaElement, bound: u32) -> Result<Tensor> {
        let mut total: Tensor = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut acc: Tensor = BTreeMap::from([(self.h.unit(), GcaElement::scalar(self.e, c.clone()))]);
            for (g, e) in m.factors() {
                for _ in 0..e {
                    acc = self.mul(&acc, &self.phi[g], bound)?;
                    if acc.is_empty() {
                        break;
                    }
                }
            }
            for (k, v) in acc {
                let entry = total.entry(k).or_insert_with(|| GcaElement::zero(self.e));
                *entry = &*entry + &v;
            }
        }
        total.retain(|_, v| !v.is_zero());
        Ok(total)
    }
}

pub fn build_hbs(source: &Cdga, kmap: &KMap, options: HbsOptions) -> Result<HbsAlgebra> {
    if !Arc::ptr_eq(&kmap.source.alg, &source.alg) {
        return Err(Error::AmbientMismatch);
    }
    let h = kmap.target.clone();
    let salg = &source.alg;
    let top = salg.max_degree();
    if !h.is_closed() && h.computed_to() < top + 1 {
        return Err(Error::TruncationTooSmall {
            truncation: h.computed_to(),
            needed: top + 1,
        });
    }
    let mut generators = Vec::new();
    let mut augmentation = Augmentation::default();
    for v in 0..salg.len() {
        let dv = salg.degree(v);
        for b in 0..h.dim() {
            let db = h.degree_of(b);
            if db > dv {
                continue;
            }
            let g = HbsGenerator {
                v,
                v_name: salg.generator(v).name.clone(),
                b,
                b_label: h.label(b).to_string(),
                degree: dv as i64 - db as i64,
            };
            if db == dv {
                let u = u_value(v, b, kmap, options.regime)?;
                augmentation.values.push((g, u));
            } else {
                generators.push(g);
            }
        }
    }
    let algebra = Algebra::new(
        generators
            .iter()
            .map(|g| Generator::new(g.name(), g.degree as u32))
            .collect(),
    )?;
    // Algebra::new sorts stably by degree
    generators.sort_by_key(|g| g.degree);
    let lookup: HashMap<(usize, usize), usize> = generators.iter().enumerate().map(|(i, g)| ((g.v, g.b), i)).collect();

    let mut phi: Vec<Tensor> = vec![BTreeMap::new(); salg.len()];
    for g in &generators {
        phi[g.v].insert(g.b, GcaElement::generator(&algebra, lookup[&(g.v, g.b)]));
    }
    for (g, u) in &augmentation.values {
        if !u.is_zero() {
            phi[g.v].insert(g.b, GcaElement::scalar(&algebra, u.clone()));
        }
    }
    let ex = Expander {
        e: &algebra,
        h: &h,
        phi,
        linear_only: options.linear_only,
    };
    let expansions: Vec<Tensor> = (0..salg.len())
        .into_par_iter()
        .map(|v| {
            let dv = source.d.image(v);
            if dv.is_zero() {
                Ok(BTreeMap::new())
            } else {
                ex.expand(dv, salg.degree(v) + 1)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let coefficient = |v: usize, b: usize| expansions[v].get(&b).cloned().unwrap_or_else(|| GcaElement::zero(&algebra));
    let delta: Vec<GcaElement> = generators.iter().map(|g| coefficient(g.v, g.b)).collect();
    let degree_zero_delta: Vec<GcaElement> = augmentation
        .values
        .iter()
        .map(|(g, _)| coefficient(g.v, g.b).linear_part())
        .collect();
    for v in 0..salg.len() {
        for &b in h.by_degree(salg.degree(v) + 1) {
            let c = coefficient(v, b);
            if !c.is_zero() {
                return Err(Error::Invariant(format!(
                    "u does not annihilate δ({}) = {c}",
                    pair_name(&salg.generator(v).name, h.label(b))
                )));
            }
        }
    }
    Ok(HbsAlgebra {
        source: source.clone(),
        h,
        kmap: kmap.clone(),
        regime: options.regime,
        generators,
        algebra,
        augmentation,
        delta,
        full: !options.linear_only,
        degree_zero_delta,
        lookup,
    })
}

/// Expansion of polynomials in an evenly generated algebra with zero
/// differential: the pairs `h ⊗ b*` of positive degree become generators,
/// degree-zero pairs are replaced by `σ(|b|) <κ(h), b*>`. Only terms of word
/// length at most one are kept. Returns the pair algebra and, per polynomial,
/// its components in `E ⊗ H`.
pub fn expand_linear(
    base: &AlgebraRef,
    kappa: &[SparseVec],
    h: &FiniteGradedAlgebra,
    regime: SignRegime,
    polys: &[GcaElement],
    bound: u32,
) -> Result<(AlgebraRef, Vec<BTreeMap<usize, GcaElement>>)> {
    if kappa.len() != base.len() {
        return Err(Error::DimensionMismatch {
            expected: base.len(),
            found: kappa.len(),
        });
    }
    let mut gens = Vec::new();
    for g in 0..base.len() {
        for b in 0..h.dim() {
            if h.degree_of(b) < base.degree(g) {
                gens.push(Generator::new(pair_name(&base.generator(g).name, h.label(b)), base.degree(g) - h.degree_of(b)));
            }
        }
    }
    let algebra = Algebra::new(gens)?;
    let mut phi: Vec<Tensor> = vec![BTreeMap::new(); base.len()];
    for (g, t) in phi.iter_mut().enumerate() {
        for b in 0..h.dim() {
            let db = h.degree_of(b);
            if db < base.degree(g) {
                let i = algebra.index_of(&pair_name(&base.generator(g).name, h.label(b)))?;
                t.insert(b, GcaElement::generator(&algebra, i));
            } else if db == base.degree(g) {
                let u = regime.factor(db) * kappa[g].get(&b).cloned().unwrap_or_else(Q::zero);
                if !u.is_zero() {
                    t.insert(b, GcaElement::scalar(&algebra, u));
                }
            }
        }
    }
    let ex = Expander {
        e: &algebra,
        h,
        phi,
        linear_only: true,
    };
    let out = polys
        .iter()
        .map(|p| {
            if !Arc::ptr_eq(p.algebra(), base) {
                return Err(Error::AmbientMismatch);
            }
            ex.expand(p, bound)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((algebra, out))
}

impl HbsAlgebra {
    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn index_of(&self, v: usize, b: usize) -> Option<usize> {
        self.lookup.get(&(v, b)).copied()
    }

    /// Index of the retained generator `v ⊗ b*`, looked up by names.
    pub fn find(&self, v: &str, b_label: &str) -> Result<usize> {
        let vi = self.source.alg.index_of(v)?;
        let bi = self
            .h
            .index_of_label(b_label)
            .ok_or_else(|| Error::UnknownGenerator(format!("basis element {b_label}")))?;
        self.index_of(vi, bi)
            .ok_or_else(|| Error::UnknownGenerator(format!("{} is not a retained generator", pair_name(v, b_label))))
    }

    pub fn generator_element(&self, i: usize) -> GcaElement {
        GcaElement::generator(&self.algebra, i)
    }

    /// `δ(g)`; only the linear part is available when built with `linear_only`.
    pub fn delta(&self, i: usize) -> Result<&GcaElement> {
        if !self.full {
            return Err(Error::Validation("model was built with the linear part of δ only".into()));
        }
        Ok(&self.delta[i])
    }

    pub fn delta_linear(&self, i: usize) -> GcaElement {
        self.delta[i].linear_part()
    }

    pub fn degree_zero_delta(&self) -> &[GcaElement] {
        &self.degree_zero_delta
    }

    /// `δ(δ(g)) = 0` for every retained generator.
    pub fn check_delta_squared(&self) -> Result<bool> {
        if !self.full {
            return Err(Error::Validation("δ² needs the full differential".into()));
        }
        let d = Derivation::new(&self.algebra, self.delta.clone())?;
        Ok(self.delta.iter().all(|x| d.apply(x).map(|y| y.is_zero()).unwrap_or(false)))
    }

    /// `δ_0 ∘ δ_0 = 0` on indecomposables.
    pub fn check_delta0_squared(&self) -> bool {
        let lin: Vec<GcaElement> = self.delta.iter().map(|x| x.linear_part()).collect();
        let apply = |x: &GcaElement| {
            let mut out = GcaElement::zero(&self.algebra);
            for (m, c) in x.terms() {
                if let Some((g, 1)) = m.factors().next() {
                    out.add_scaled(&lin[g], c);
                }
            }
            out
        };
        lin.iter().all(|x| apply(x).is_zero()) && self.degree_zero_delta.iter().all(|x| apply(x).is_zero())
    }

    pub fn max_degree(&self) -> u32 {
        self.algebra.max_degree()
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (i, g) in self.generators.iter().enumerate() {
            let d = if self.full {
                self.delta[i].to_string()
            } else {
                format!("{} + (decomposables)", self.delta[i].linear_part())
            };
            s.push_str(&format!("  δ({}) = {}    [deg {}]\n", g.name(), d, g.degree));
        }
        for (g, u) in &self.augmentation.values {
            if !u.is_zero() {
                s.push_str(&format!("  u({}) = {}\n", g.name(), fmt_q(u)));
            }
        }
        s
    }
}

/// Homology of `(Q(E/M_u), δ_0)` in one degree.
#[derive(Debug, Clone)]
pub struct DegreeHomology {
    pub degree: u32,
    /// generator indices spanning `Q^n`
    pub chain_basis: Vec<usize>,
    /// cycle representatives of a homology basis, in `chain_basis` coordinates
    pub classes: Vec<Vector>,
    pub boundaries: Subspace,
}

impl DegreeHomology {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// A class as an element of `E`.
    pub fn class_element(&self, a: &HbsAlgebra, k: usize) -> GcaElement {
        let mut e = GcaElement::zero(&a.algebra);
        for (c, &g) in self.classes[k].iter().zip(&self.chain_basis) {
            if !c.is_zero() {
                e.add_term(Monomial::generator(g), c.clone());
            }
        }
        e
    }
}

#[derive(Debug, Clone)]
pub struct LinearizedHomology {
    pub degrees: Vec<DegreeHomology>,
}

impl LinearizedHomology {
    pub fn in_degree(&self, n: u32) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| d.degree == n)
    }

    /// `(degree, dim)` for the nonzero degrees.
    pub fn dims(&self) -> Vec<(u32, usize)> {
        self.degrees.iter().filter(|d| d.dim() > 0).map(|d| (d.degree, d.dim())).collect()
    }
}

fn linear_column(x: &GcaElement, basis: &[usize]) -> Vector {
    basis
        .iter()
        .map(|&g| x.coefficient(&Monomial::generator(g)))
        .collect()
}

/// `H^n(Q(E/M_u), δ_0)` for `1 <= n <= max_degree`.
pub fn linearized_homology(a: &HbsAlgebra, max_degree: u32) -> LinearizedHomology {
    let by_degree = |n: u32| -> Vec<usize> {
        a.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.degree == n as i64)
            .map(|(i, _)| i)
            .collect()
    };
    let degrees = (1..=max_degree)
        .into_par_iter()
        .map(|n| {
            let chain_basis = by_degree(n);
            let next = by_degree(n + 1);
            let cols: Vec<Vector> = chain_basis.iter().map(|&g| linear_column(&a.delta[g], &next)).collect();
            let cycles = if chain_basis.is_empty() {
                Vec::new()
            } else {
                kernel_basis(&RationalMatrix::from_columns(&cols, next.len()).expect("dimensions"))
            };
            let mut boundaries = Subspace::new(chain_basis.len());
            let incoming: Vec<GcaElement> = if n == 1 {
                a.degree_zero_delta.clone()
            } else {
                by_degree(n - 1).iter().map(|&g| a.delta[g].clone()).collect()
            };
            for x in &incoming {
                boundaries.insert(&linear_column(x, &chain_basis));
            }
            let mut span = boundaries.clone();
            let classes = cycles.into_iter().filter(|z| span.insert(z)).collect();
            DegreeHomology {
                degree: n,
                chain_basis,
                classes,
                boundaries,
            }
        })
        .collect();
    LinearizedHomology { degrees }
}

/// `(∧(x, y), dy = x^m)` with `|x| = l` even, and its map onto `Q[x]/(x^m)`.
pub fn truncated_source(l: u32, m: u32) -> Result<(Cdga, KMap)> {
    if l == 0 || l % 2 == 1 || m < 2 {
        return Err(Error::Validation(format!("truncated algebra needs even l > 0 and m >= 2, got l = {l}, m = {m}")));
    }
    let alg = Algebra::new(vec![Generator::new("x", l), Generator::new("y", l * m - 1)])?;
    let x = GcaElement::named(&alg, "x")?;
    let cdga = Cdga::new(Derivation::from_named(&alg, vec![("y", x.pow(m))])?)?;
    let model = PureSullivanModel::from_cdga(cdga.clone(), None)?;
    let pc = pure_cohomology(&model, l * m)?;
    Ok((cdga, pc.kmap))
}

/// Minimal model of `S^n` with its map onto cohomology: `∧(x)` for odd `n`,
/// `∧(x, y), dy = x^2` for even `n`.
pub fn sphere_source(n: u32) -> Result<(Cdga, KMap)> {
    if n == 0 {
        return Err(Error::Validation("S^0 has no minimal model".into()));
    }
    if n.is_multiple_of(2) {
        return truncated_source(n, 2);
    }
    let alg = Algebra::new(vec![Generator::new("x", n)])?;
    let cdga = Cdga::new(Derivation::new(&alg, vec![GcaElement::zero(&alg)])?)?;
    let model = PureSullivanModel::from_cdga(cdga.clone(), None)?;
    let pc = pure_cohomology(&model, n + 1)?;
    Ok((cdga, pc.kmap))
}

/// Coefficients `(-1)^s binom(m, s)` of the truncated-algebra example, as an oracle helper.
pub fn truncated_delta_coefficient(m: u32, s: u32) -> Q {
    sign_q(s as u64) * Q::from_integer(crate::rational::binomial(m as u64, s as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn truncated(l: u32, m: u32) -> (Cdga, KMap) {
        truncated_source(l, m).unwrap()
    }

    #[test]
    fn cp2_model() {
        let (cdga, k) = truncated(2, 3);
        let a = build_hbs(&cdga, &k, HbsOptions::default()).unwrap();
        let names: Vec<_> = a.generators.iter().map(|g| g.name()).collect();
        assert_eq!(names, ["y⊗(x^2)*", "x⊗1*", "y⊗x*", "y⊗1*"]);
        let x1 = a.generator_element(a.find("x", "1").unwrap());
        for s in 0..3 {
            let label = ["1", "x", "x^2"][s as usize];
            let g = a.find("y", label).unwrap();
            assert_eq!(a.delta(g).unwrap(), &x1.pow(3 - s).scale(&truncated_delta_coefficient(3, s)));
        }
        assert!(a.check_delta_squared().unwrap());
        let hom = linearized_homology(&a, 6);
        assert_eq!(hom.dims(), vec![(3, 1), (5, 1)]);
    }

    #[test]
    fn point_source() {
        let alg = Algebra::new(vec![Generator::new("a", 2), Generator::new("z", 1)]).unwrap();
        let a = GcaElement::named(&alg, "a").unwrap();
        let cdga = Cdga::new(Derivation::from_named(&alg, vec![("z", a.clone())]).unwrap()).unwrap();
        let model = PureSullivanModel::from_cdga(cdga.clone(), None).unwrap();
        let pc = pure_cohomology(&model, 4).unwrap();
        assert_eq!(pc.h.dim(), 1);
        let h = build_hbs(&cdga, &pc.kmap, HbsOptions::default()).unwrap();
        assert_eq!(h.generators.len(), 2);
        let z = h.find("z", "1").unwrap();
        assert_eq!(h.delta(z).unwrap(), &h.generator_element(h.find("a", "1").unwrap()));
        assert_eq!(u_value(0, 0, &pc.kmap, SignRegime::Tau).ok(), None);
    }
}
