//! Free graded-commutative algebras over `Q`.
//!
//! Even generators are polynomial, odd generators exterior. Generators are
//! stored in canonical order (degree, then declaration order) and every
//! monomial keeps its factors in that order, so a monomial is a sorted list
//! of `(generator index, exponent)` pairs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_q, Q};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

#[derive(Debug)]
pub struct Algebra {
    gens: Vec<Generator>,
    lookup: HashMap<String, usize>,
}

pub type AlgebraRef = Arc<Algebra>;

impl Algebra {
    /// Builds the free algebra; generators are re-sorted stably by degree.
    pub fn new(gens: Vec<Generator>) -> Result<AlgebraRef> {
        let mut gens = gens;
        gens.sort_by_key(|g| g.degree);
        let mut lookup = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::ZeroDegree(g.name.clone()));
            }
            if lookup.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(Algebra { gens, lookup }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.gens[i].degree
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.gens[i].is_odd()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup.contains_key(name)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }
}

/// Canonically ordered product of generator powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Monomial(vec![(i as u32, 1)])
    }

    /// Builds from already sorted factors; odd generators must have exponent 1.
    pub fn from_sorted(factors: Vec<(usize, u32)>) -> Self {
        Monomial(factors.into_iter().map(|(g, e)| (g as u32, e)).collect())
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(g, e)| (g as usize, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, alg: &Algebra) -> u32 {
        self.0.iter().map(|&(g, e)| alg.degree(g as usize) * e).sum()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(g, _)| g as usize == i)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn odd_count(&self, alg: &Algebra) -> usize {
        self.0.iter().filter(|&&(g, _)| alg.is_odd(g as usize)).count()
    }

    pub fn display(&self, alg: &Algebra) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(g, e)| {
                let name = &alg.generator(g as usize).name;
                if e == 1 {
                    name.clone()
                } else if name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                    format!("{name}^{e}")
                } else {
                    format!("({name})^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Product of two canonical monomials: `None` if an odd generator repeats,
/// otherwise the Koszul sign (`true` = negative) and the product.
pub fn mul_monomials(alg: &Algebra, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
    let mut out = Vec::with_capacity(a.0.len() + b.0.len());
    let (mut i, mut j) = (0, 0);
    let mut negative = false;
    // odd factors of `a` not yet emitted
    let mut odd_left_a: usize = a.0.iter().filter(|&&(g, _)| alg.is_odd(g as usize)).count();
    while i < a.0.len() || j < b.0.len() {
        if j >= b.0.len() || (i < a.0.len() && a.0[i].0 < b.0[j].0) {
            if alg.is_odd(a.0[i].0 as usize) {
                odd_left_a -= 1;
            }
            out.push(a.0[i]);
            i += 1;
        } else if i >= a.0.len() || b.0[j].0 < a.0[i].0 {
            if alg.is_odd(b.0[j].0 as usize) && odd_left_a % 2 == 1 {
                negative = !negative;
            }
            out.push(b.0[j]);
            j += 1;
        } else {
            let g = a.0[i].0;
            if alg.is_odd(g as usize) {
                return None;
            }
            out.push((g, a.0[i].1 + b.0[j].1));
            i += 1;
            j += 1;
        }
    }
    Some((negative, Monomial(out)))
}

/// Sorts an unordered list of generator powers into canonical form.
///
/// Returns `None` exactly when an odd generator occurs twice.
pub fn normalize_monomial(alg: &Algebra, factors: &[(usize, u32)]) -> Result<Option<(i8, Monomial)>> {
    let mut word: Vec<usize> = Vec::new();
    for &(g, e) in factors {
        if g >= alg.len() {
            return Err(Error::UnknownGenerator(format!("#{g}")));
        }
        for _ in 0..e {
            word.push(g);
        }
    }
    let odd: Vec<usize> = word.iter().copied().filter(|&g| alg.is_odd(g)).collect();
    let mut inversions = 0usize;
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            if odd[i] == odd[j] {
                return Ok(None);
            }
            if odd[i] > odd[j] {
                inversions += 1;
            }
        }
    }
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for g in word {
        *counts.entry(g as u32).or_insert(0) += 1;
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Ok(Some((sign, Monomial(counts.into_iter().collect()))))
}

/// Same as [`normalize_monomial`] with generators given by name.
pub fn normalize_named(alg: &Algebra, factors: &[(&str, u32)]) -> Result<Option<(i8, Monomial)>> {
    let idx = factors
        .iter()
        .map(|&(n, e)| Ok((alg.index_of(n)?, e)))
        .collect::<Result<Vec<_>>>()?;
    normalize_monomial(alg, &idx)
}

/// Every monomial of total degree `n`, in increasing monomial order.
pub fn monomials_of_degree(alg: &Algebra, n: u32) -> Vec<Monomial> {
    fn rec(alg: &Algebra, slot: usize, left: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial(cur.clone()));
            return;
        }
        if slot == alg.len() {
            return;
        }
        let d = alg.degree(slot);
        let max_e = if alg.is_odd(slot) { 1 } else { left / d };
        for e in (0..=max_e.min(left / d)).rev() {
            if e > 0 {
                cur.push((slot as u32, e));
            }
            rec(alg, slot + 1, left - e * d, cur, out);
            if e > 0 {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(alg, 0, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[derive(Clone)]
pub struct GcaElement {
    alg: AlgebraRef,
    terms: BTreeMap<Monomial, Q>,
}

impl PartialEq for GcaElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl fmt::Debug for GcaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl GcaElement {
    pub fn zero(alg: &AlgebraRef) -> Self {
        GcaElement {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(alg: &AlgebraRef, c: Q) -> Self {
        let mut e = Self::zero(alg);
        e.add_term(Monomial::one(), c);
        e
    }

    pub fn one(alg: &AlgebraRef) -> Self {
        Self::scalar(alg, Q::one())
    }

    pub fn generator(alg: &AlgebraRef, i: usize) -> Self {
        Self::monomial(alg, Monomial::generator(i), Q::one())
    }

    pub fn named(alg: &AlgebraRef, name: &str) -> Result<Self> {
        Ok(Self::generator(alg, alg.index_of(name)?))
    }

    pub fn monomial(alg: &AlgebraRef, m: Monomial, c: Q) -> Self {
        let mut e = Self::zero(alg);
        e.add_term(m, c);
        e
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        assert!(Arc::ptr_eq(&self.alg, &other.alg), "elements live in different algebras");
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = Self::zero(&self.alg);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((neg, m)) = mul_monomials(&self.alg, a, b) {
                    let c = x * y;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        GcaElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree(&self.alg));
        let d = it.next()?;
        if it.all(|x| x == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn component(&self, n: u32) -> Self {
        GcaElement {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(&self.alg) == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn filter_length(&self, keep: impl Fn(u32) -> bool) -> Self {
        GcaElement {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m.word_length()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms that are a single generator.
    pub fn linear_part(&self) -> Self {
        self.filter_length(|l| l == 1)
    }

    /// Terms of word length at least two.
    pub fn decomposable_part(&self) -> Self {
        self.filter_length(|l| l >= 2)
    }

    pub fn constant_term(&self) -> Q {
        self.coefficient(&Monomial::one())
    }

    /// No constant and no linear terms.
    pub fn is_decomposable(&self) -> bool {
        self.terms.keys().all(|m| m.word_length() >= 2)
    }

    /// Coefficient of generator `i` in the linear part.
    pub fn linear_coefficient(&self, i: usize) -> Q {
        self.coefficient(&Monomial::generator(i))
    }

    /// Generators occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.terms.keys().flat_map(|m| m.factors().map(|(g, _)| g)).collect();
        s.sort();
        s.dedup();
        s
    }

    /// Evaluates the algebra map sending generator `i` to `images[i]`.
    pub fn substitute(&self, target: &AlgebraRef, images: &[GcaElement]) -> Result<Self> {
        if images.len() != self.alg.len() {
            return Err(Error::DimensionMismatch {
                expected: self.alg.len(),
                found: images.len(),
            });
        }
        for im in images {
            if !Arc::ptr_eq(im.algebra(), target) {
                return Err(Error::AmbientMismatch);
            }
        }
        let mut out = Self::zero(target);
        let mut powers: HashMap<(usize, u32), GcaElement> = HashMap::new();
        for (m, c) in &self.terms {
            let mut acc = Self::scalar(target, c.clone());
            for (g, e) in m.factors() {
                let p = powers.entry((g, e)).or_insert_with(|| images[g].pow(e)).clone();
                acc = &acc * &p;
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Rewrites into another algebra containing generators of the same names.
    pub fn transport(&self, target: &AlgebraRef) -> Result<Self> {
        let images = self
            .alg
            .generators()
            .iter()
            .map(|g| {
                let e = GcaElement::named(target, &g.name)?;
                if target.degree(target.index_of(&g.name)?) != g.degree {
                    return Err(Error::DegreeMismatch(format!("generator {} changes degree", g.name)));
                }
                Ok(e)
            })
            .collect::<Result<Vec<_>>>();
        match images {
            Ok(images) => self.substitute(target, &images),
            Err(e) => {
                // generators absent from the target are allowed when unused
                let used = self.support();
                let mut imgs = Vec::with_capacity(self.alg.len());
                for (i, g) in self.alg.generators().iter().enumerate() {
                    if target.contains(&g.name) {
                        imgs.push(GcaElement::named(target, &g.name)?);
                    } else if used.contains(&i) {
                        return Err(e);
                    } else {
                        imgs.push(GcaElement::zero(target));
                    }
                }
                self.substitute(target, &imgs)
            }
        }
    }
}

/// Larger exponents on earlier generators first.
fn display_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let n = a.0.iter().chain(&b.0).map(|&(g, _)| g + 1).max().unwrap_or(0);
    for g in 0..n {
        let (ea, eb) = (a.exponent(g as usize), b.exponent(g as usize));
        if ea != eb {
            return eb.cmp(&ea);
        }
    }
    std::cmp::Ordering::Equal
}

impl fmt::Display for GcaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            a.degree(&self.alg)
                .cmp(&b.degree(&self.alg))
                .then_with(|| display_order(a, b))
        });
        let mut first = true;
        for (m, c) in terms {
            let neg = c < &Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{}", m.display(&self.alg))?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), m.display(&self.alg))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a GcaElement> for &'a GcaElement {
    type Output = GcaElement;
    fn add(self, rhs: &'a GcaElement) -> GcaElement {
        self.try_add(rhs).expect("elements live in different algebras")
    }
}

impl<'a> Sub<&'a GcaElement> for &'a GcaElement {
    type Output = GcaElement;
    fn sub(self, rhs: &'a GcaElement) -> GcaElement {
        self.try_add(&-rhs).expect("elements live in different algebras")
    }
}

impl<'a> Mul<&'a GcaElement> for &'a GcaElement {
    type Output = GcaElement;
    fn mul(self, rhs: &'a GcaElement) -> GcaElement {
        self.try_mul(rhs).expect("elements live in different algebras")
    }
}

impl Neg for &GcaElement {
    type Output = GcaElement;
    fn neg(self) -> GcaElement {
        self.scale(&-Q::one())
    }
}

/// A degree +1 derivation, given by its values on generators.
#[derive(Clone, Debug)]
pub struct Derivation {
    alg: AlgebraRef,
    images: Vec<GcaElement>,
}

impl Derivation {
    /// Validates ambient and degrees of the images.
    pub fn new(alg: &AlgebraRef, images: Vec<GcaElement>) -> Result<Self> {
        let d = Self::from_images_unchecked(alg, images)?;
        for (i, im) in d.images.iter().enumerate() {
            if !im.is_zero() && im.degree() != Some(alg.degree(i) + 1) {
                return Err(Error::DegreeMismatch(format!(
                    "d({}) = {} is not homogeneous of degree {}",
                    alg.generator(i).name,
                    im,
                    alg.degree(i) + 1
                )));
            }
        }
        Ok(d)
    }

    /// Only ambient and arity are checked.
    pub fn from_images_unchecked(alg: &AlgebraRef, images: Vec<GcaElement>) -> Result<Self> {
        if images.len() != alg.len() {
            return Err(Error::DimensionMismatch {
                expected: alg.len(),
                found: images.len(),
            });
        }
        if images.iter().any(|e| !Arc::ptr_eq(e.algebra(), alg)) {
            return Err(Error::AmbientMismatch);
        }
        Ok(Derivation {
            alg: alg.clone(),
            images,
        })
    }

    pub fn zero(alg: &AlgebraRef) -> Self {
        Derivation {
            alg: alg.clone(),
            images: vec![GcaElement::zero(alg); alg.len()],
        }
    }

    /// Values given by generator name; unnamed generators are closed.
    pub fn from_named(alg: &AlgebraRef, values: Vec<(&str, GcaElement)>) -> Result<Self> {
        let mut images = vec![GcaElement::zero(alg); alg.len()];
        for (n, e) in values {
            images[alg.index_of(n)?] = e;
        }
        Self::new(alg, images)
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn image(&self, i: usize) -> &GcaElement {
        &self.images[i]
    }

    pub fn images(&self) -> &[GcaElement] {
        &self.images
    }

    pub fn apply_monomial(&self, m: &Monomial) -> GcaElement {
        let alg = &self.alg;
        let factors: Vec<(usize, u32)> = m.factors().collect();
        let mut out = GcaElement::zero(alg);
        let mut prefix_degree = 0u32;
        for (i, &(g, e)) in factors.iter().enumerate() {
            let dg = &self.images[g];
            if !dg.is_zero() {
                let pre = GcaElement::monomial(alg, Monomial::from_sorted(factors[..i].to_vec()), Q::one());
                let post = GcaElement::monomial(alg, Monomial::from_sorted(factors[i + 1..].to_vec()), Q::one());
                let mid = if e > 1 {
                    let rest = GcaElement::monomial(alg, Monomial::from_sorted(vec![(g, e - 1)]), Q::from_integer(e.into()));
                    &rest * dg
                } else {
                    dg.clone()
                };
                let mut t = &(&pre * &mid) * &post;
                if prefix_degree % 2 == 1 {
                    t = -&t;
                }
                out = &out + &t;
            }
            prefix_degree += alg.degree(g) * e;
        }
        out
    }

    pub fn apply(&self, p: &GcaElement) -> Result<GcaElement> {
        if !Arc::ptr_eq(p.algebra(), &self.alg) {
            return Err(Error::AmbientMismatch);
        }
        let mut out = GcaElement::zero(&self.alg);
        for (m, c) in p.terms() {
            out.add_scaled(&self.apply_monomial(m), c);
        }
        Ok(out)
    }
}

pub fn apply_derivation(d: &Derivation, p: &GcaElement) -> Result<GcaElement> {
    d.apply(p)
}

/// True iff every image has the right degree and `d(d(g)) = 0` for every generator.
pub fn check_differential(d: &Derivation) -> bool {
    let alg = d.algebra();
    (0..alg.len()).all(|i| {
        let im = d.image(i);
        let degree_ok = im.is_zero() || im.degree() == Some(alg.degree(i) + 1);
        degree_ok && d.apply(im).map(|x| x.is_zero()).unwrap_or(false)
    })
}

/// A free graded-commutative algebra with a differential.
#[derive(Clone, Debug)]
pub struct Cdga {
    pub alg: AlgebraRef,
    pub d: Derivation,
}

impl Cdga {
    pub fn new(d: Derivation) -> Result<Self> {
        if !check_differential(&d) {
            return Err(Error::Invariant("d∘d ≠ 0".into()));
        }
        Ok(Cdga {
            alg: d.algebra().clone(),
            d,
        })
    }

    pub fn differential(&self, name: &str) -> Result<&GcaElement> {
        Ok(self.d.image(self.alg.index_of(name)?))
    }

    pub fn gen(&self, name: &str) -> Result<GcaElement> {
        GcaElement::named(&self.alg, name)
    }

    /// `d` has no linear part on any generator.
    pub fn is_minimal(&self) -> bool {
        self.d.images().iter().all(|e| e.is_decomposable())
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (i, g) in self.alg.generators().iter().enumerate() {
            s.push_str(&format!("  d({}) = {}    [deg {}]\n", g.name, self.d.image(i), g.degree));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn alg() -> AlgebraRef {
        Algebra::new(vec![
            Generator::new("x11", 11),
            Generator::new("x3", 3),
            Generator::new("h1", 2),
            Generator::new("h2", 2),
        ])
        .unwrap()
    }

    #[test]
    fn canonical_order_is_degree_then_declaration() {
        let a = alg();
        let names: Vec<_> = a.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["h1", "h2", "x3", "x11"]);
    }

    #[test]
    fn normalize_examples() {
        let a = alg();
        assert!(normalize_named(&a, &[("x3", 1), ("x3", 1)]).unwrap().is_none());
        let (s, m) = normalize_named(&a, &[("x11", 1), ("x3", 1)]).unwrap().unwrap();
        assert_eq!(s, -1);
        assert_eq!(m.display(&a), "x3*x11");
        let (s, m) = normalize_named(&a, &[("h1", 1), ("h1", 1)]).unwrap().unwrap();
        assert_eq!(s, 1);
        assert_eq!(m.display(&a), "h1^2");
        assert!(normalize_named(&a, &[("y", 1)]).is_err());
    }

    #[test]
    fn multiply_examples() {
        let a = alg();
        let h1 = GcaElement::named(&a, "h1").unwrap();
        let h2 = GcaElement::named(&a, "h2").unwrap();
        let x3 = GcaElement::named(&a, "x3").unwrap();
        let x11 = GcaElement::named(&a, "x11").unwrap();
        assert_eq!((&(&h1 + &h2) * &h1).to_string(), "h1^2 + h1*h2");
        assert!((&x3 * &x3).is_zero());
        assert!((&(&x3 * &x11) * &x3).is_zero());
        assert_eq!(&x11 * &x3, -&(&x3 * &x11));
    }

    #[test]
    fn leibniz_on_truncated_model() {
        let a = Algebra::new(vec![Generator::new("x", 2), Generator::new("y", 5)]).unwrap();
        let x = GcaElement::named(&a, "x").unwrap();
        let y = GcaElement::named(&a, "y").unwrap();
        let d = Derivation::from_named(&a, vec![("y", x.pow(3))]).unwrap();
        assert!(check_differential(&d));
        assert_eq!(d.apply(&(&y * &x)).unwrap(), x.pow(4));
        assert!(d.apply(&GcaElement::one(&a)).unwrap().is_zero());
    }

    #[test]
    fn corrupted_differential_detected() {
        let a = Algebra::new(vec![Generator::new("x1", 1), Generator::new("c1'", 2), Generator::new("tau2", 3)]).unwrap();
        let bad = &GcaElement::named(&a, "c1'").unwrap() * &GcaElement::named(&a, "x1").unwrap();
        let mut images = vec![GcaElement::zero(&a); 3];
        images[a.index_of("tau2").unwrap()] = bad;
        let d = Derivation::from_images_unchecked(&a, images).unwrap();
        assert!(!check_differential(&d));
    }

    #[test]
    fn monomial_enumeration() {
        let a = Algebra::new(vec![Generator::new("c1", 2), Generator::new("c2", 4), Generator::new("e", 3)]).unwrap();
        let ms = monomials_of_degree(&a, 7);
        let shown: Vec<_> = ms.iter().map(|m| m.display(&a)).collect();
        assert_eq!(shown.len(), 2);
        assert!(shown.contains(&"c1^2*e".to_string()));
        assert!(shown.contains(&"e*c2".to_string()));
        assert_eq!(monomials_of_degree(&a, 0).len(), 1);
        assert_eq!(monomials_of_degree(&a, 1).len(), 0);
    }

    #[test]
    fn substitution_is_algebra_map() {
        let a = Algebra::new(vec![Generator::new("c1", 2), Generator::new("c2", 4)]).unwrap();
        let c1 = GcaElement::named(&a, "c1").unwrap();
        let c2 = GcaElement::named(&a, "c2").unwrap();
        let p = &(&c1 * &c1) - &c2.scale(&q(3));
        let images = vec![c1.clone(), c1.pow(2).scale(&crate::rational::qr(1, 3))];
        assert!(p.substitute(&a, &images).unwrap().is_zero());
    }
}
