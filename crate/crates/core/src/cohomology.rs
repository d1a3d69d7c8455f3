//! Finite graded algebras `Q[h]/(P)` with a monomial basis, multiplication
//! table and dual pairing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::gca::{monomials_of_degree, mul_monomials, Algebra, AlgebraRef, GcaElement, Generator, Monomial};
use crate::linalg::{row_reduce, sparse_add_scaled, RationalMatrix, SparseVec};
use crate::rational::{sign_q, Q};
use crate::{Error, Result};

/// Hard cap used when no truncation is given.
pub const DEFAULT_CAP: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: u32,
}

/// The functional `b*` dual to basis element `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualBasisElement {
    pub index: usize,
    pub degree: u32,
}

#[derive(Debug, Clone)]
pub struct GradedAlgebraPresentation {
    pub algebra: AlgebraRef,
    pub relations: Vec<GcaElement>,
    pub truncation: Option<u32>,
}

impl GradedAlgebraPresentation {
    pub fn new(algebra: AlgebraRef, relations: Vec<GcaElement>, truncation: Option<u32>) -> Result<Self> {
        for r in &relations {
            if !Arc::ptr_eq(r.algebra(), &algebra) {
                return Err(Error::AmbientMismatch);
            }
            if !r.is_homogeneous() {
                return Err(Error::Inhomogeneous(r.to_string()));
            }
        }
        if let Some(n) = truncation {
            if n < algebra.max_degree() {
                return Err(Error::TruncationTooSmall {
                    truncation: n,
                    needed: algebra.max_degree(),
                });
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(GradedAlgebraPresentation {
            algebra,
            relations,
            truncation,
        })
    }
}

#[derive(Debug, Clone)]
struct NormalForms {
    algebra: AlgebraRef,
    /// normal form of every monomial of each computed degree
    forms: Vec<HashMap<Monomial, SparseVec>>,
    /// basis index -> monomial
    monomials: Vec<Monomial>,
}

#[derive(Debug, Clone)]
pub struct FiniteGradedAlgebra {
    basis: Vec<BasisElement>,
    by_degree: Vec<Vec<usize>>,
    table: HashMap<(usize, usize), SparseVec>,
    computed_to: u32,
    closed: bool,
    forms: Option<NormalForms>,
}

fn elimination_key(m: &Monomial, n_gens: usize) -> Vec<u32> {
    (0..n_gens).rev().map(|g| m.exponent(g)).collect()
}

/// `Q[h]/(P)` computed degreewise; fails unless it closes up below the truncation.
pub fn quotient_algebra(pres: &GradedAlgebraPresentation) -> Result<FiniteGradedAlgebra> {
    let cap = pres.truncation.unwrap_or(DEFAULT_CAP);
    let a = build_quotient(pres, cap)?;
    if !a.closed {
        return Err(Error::NotClosed(cap));
    }
    Ok(a)
}

/// `Q[h]/(P)` through degree `n`; closure is recorded but not required.
pub fn quotient_algebra_truncated(pres: &GradedAlgebraPresentation, n: u32) -> Result<FiniteGradedAlgebra> {
    build_quotient(pres, n)
}

fn build_quotient(pres: &GradedAlgebraPresentation, cap: u32) -> Result<FiniteGradedAlgebra> {
    let alg = &pres.algebra;
    let window = alg.max_degree().max(1);
    let mut basis = Vec::new();
    let mut monomials = Vec::new();
    let mut by_degree: Vec<Vec<usize>> = Vec::new();
    let mut forms: Vec<HashMap<Monomial, SparseVec>> = Vec::new();
    let mut zero_run = 0u32;
    let mut closed = false;
    let mut computed_to = 0;
    for n in 0..=cap {
        let mut cols = monomials_of_degree(alg, n);
        cols.sort_by_key(|m| std::cmp::Reverse(elimination_key(m, alg.len())));
        let col_of: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for r in &pres.relations {
            let d = r.degree().unwrap_or(0);
            if d > n {
                continue;
            }
            for m in monomials_of_degree(alg, n - d) {
                let mut row = vec![Q::zero(); cols.len()];
                let mut nonzero = false;
                for (t, c) in r.terms() {
                    if let Some((neg, p)) = mul_monomials(alg, &m, t) {
                        let j = col_of[&p];
                        if neg {
                            row[j] -= c;
                        } else {
                            row[j] += c;
                        }
                        nonzero = true;
                    }
                }
                if nonzero && row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let (pivots, reduced) = if rows.is_empty() {
            (Vec::new(), None)
        } else {
            let e = row_reduce(&RationalMatrix::from_rows(rows, cols.len())?);
            (e.pivots.clone(), Some(e.reduced))
        };
        let free: Vec<usize> = (0..cols.len()).filter(|c| !pivots.contains(c)).collect();
        let mut free_sorted = free.clone();
        free_sorted.sort_by(|&a, &b| cols[a].cmp(&cols[b]));
        let mut global_of: HashMap<usize, usize> = HashMap::new();
        let mut this_degree = Vec::new();
        for &c in &free_sorted {
            let idx = basis.len();
            basis.push(BasisElement {
                label: cols[c].display(alg),
                degree: n,
            });
            monomials.push(cols[c].clone());
            global_of.insert(c, idx);
            this_degree.push(idx);
        }
        let mut nf: HashMap<Monomial, SparseVec> = HashMap::new();
        for &c in &free {
            nf.insert(cols[c].clone(), BTreeMap::from([(global_of[&c], Q::one())]));
        }
        if let Some(red) = &reduced {
            for (r, &p) in pivots.iter().enumerate() {
                let mut v = SparseVec::new();
                for &c in &free {
                    let x = red.get(r, c);
                    if !x.is_zero() {
                        v.insert(global_of[&c], -x.clone());
                    }
                }
                nf.insert(cols[p].clone(), v);
            }
        }
        forms.push(nf);
        by_degree.push(this_degree);
        computed_to = n;
        if by_degree[n as usize].is_empty() {
            zero_run += 1;
            if zero_run >= window {
                closed = true;
                break;
            }
        } else {
            zero_run = 0;
        }
    }
    if closed {
        // drop trailing empty degrees
        while computed_to > 0 && by_degree[computed_to as usize].is_empty() {
            by_degree.pop();
            forms.pop();
            computed_to -= 1;
        }
    }
    let mut a = FiniteGradedAlgebra {
        basis,
        by_degree,
        table: HashMap::new(),
        computed_to,
        closed,
        forms: Some(NormalForms {
            algebra: alg.clone(),
            forms,
            monomials,
        }),
    };
    a.fill_table_from_forms()?;
    Ok(a)
}

impl FiniteGradedAlgebra {
    fn fill_table_from_forms(&mut self) -> Result<()> {
        let forms = self.forms.as_ref().expect("presentation algebra");
        let alg = forms.algebra.clone();
        let mut table = HashMap::new();
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                let d = self.basis[i].degree + self.basis[j].degree;
                if d > self.computed_to {
                    continue;
                }
                let v = match mul_monomials(&alg, &forms.monomials[i], &forms.monomials[j]) {
                    None => SparseVec::new(),
                    Some((neg, m)) => {
                        let mut v = forms.forms[d as usize][&m].clone();
                        if neg {
                            for x in v.values_mut() {
                                *x = -x.clone();
                            }
                        }
                        v
                    }
                };
                table.insert((i, j), v);
            }
        }
        self.table = table;
        Ok(())
    }

    /// A complete algebra from an explicit basis and products.
    ///
    /// `basis[0]` must be the unit in degree 0. Products not listed are zero,
    /// except those with the unit; a product given for `(i, j)` only is
    /// extended to `(j, i)` by graded commutativity.
    pub fn from_table(basis: Vec<BasisElement>, products: Vec<((usize, usize), SparseVec)>) -> Result<Self> {
        if basis.is_empty() || basis[0].degree != 0 {
            return Err(Error::InvalidAlgebra("basis must start with the unit in degree 0".into()));
        }
        if basis.iter().skip(1).any(|b| b.degree == 0) {
            return Err(Error::InvalidAlgebra("degree 0 must be spanned by the unit".into()));
        }
        let top = basis.iter().map(|b| b.degree).max().unwrap_or(0);
        let mut by_degree = vec![Vec::new(); top as usize + 1];
        for (i, b) in basis.iter().enumerate() {
            by_degree[b.degree as usize].push(i);
        }
        let n = basis.len();
        let mut table: HashMap<(usize, usize), SparseVec> = HashMap::new();
        for ((i, j), v) in products {
            if i >= n || j >= n {
                return Err(Error::InvalidAlgebra(format!("product index ({i}, {j}) out of range")));
            }
            let d = basis[i].degree + basis[j].degree;
            for (&k, x) in &v {
                if k >= n || (basis[k].degree != d && !x.is_zero()) {
                    return Err(Error::InvalidAlgebra(format!("product ({i}, {j}) has a term of the wrong degree")));
                }
            }
            table.insert((i, j), v);
        }
        for i in 0..n {
            for j in 0..n {
                if i == 0 {
                    table.insert((0, j), BTreeMap::from([(j, Q::one())]));
                    continue;
                }
                if j == 0 {
                    table.insert((i, 0), BTreeMap::from([(i, Q::one())]));
                    continue;
                }
                if !table.contains_key(&(i, j)) {
                    let v = match table.get(&(j, i)) {
                        Some(w) => {
                            let s = sign_q((basis[i].degree * basis[j].degree) as u64);
                            w.iter().map(|(k, x)| (*k, x * &s)).collect()
                        }
                        None => SparseVec::new(),
                    };
                    table.insert((i, j), v);
                }
            }
        }
        let a = FiniteGradedAlgebra {
            basis,
            by_degree,
            table,
            computed_to: top,
            closed: true,
            forms: None,
        };
        if !a.check_commutative() {
            return Err(Error::InvalidAlgebra("table is not graded commutative".into()));
        }
        if !a.check_associative() {
            return Err(Error::InvalidAlgebra("table is not associative".into()));
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn dual(&self, i: usize) -> DualBasisElement {
        DualBasisElement {
            index: i,
            degree: self.basis[i].degree,
        }
    }

    /// Basis indices in degree `n` (empty outside the computed range).
    pub fn by_degree(&self, n: u32) -> &[usize] {
        self.by_degree.get(n as usize).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dims(&self) -> Vec<usize> {
        self.by_degree.iter().map(|v| v.len()).collect()
    }

    pub fn computed_to(&self) -> u32 {
        self.computed_to
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Highest degree with a nonzero basis element.
    pub fn top_degree(&self) -> u32 {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn basis_vector(&self, i: usize) -> SparseVec {
        BTreeMap::from([(i, Q::one())])
    }

    pub fn is_evenly_graded(&self) -> bool {
        self.basis.iter().all(|b| b.degree % 2 == 0)
    }

    pub fn ambient(&self) -> Option<&AlgebraRef> {
        self.forms.as_ref().map(|f| &f.algebra)
    }

    /// Basis element as a monomial of the presentation, if any.
    pub fn basis_monomial(&self, i: usize) -> Option<&Monomial> {
        self.forms.as_ref().map(|f| &f.monomials[i])
    }

    fn check_range(&self, d: u32) -> Result<bool> {
        if d <= self.computed_to {
            Ok(true)
        } else if self.closed {
            Ok(false)
        } else {
            Err(Error::BeyondTruncation {
                requested: d,
                top: self.computed_to,
            })
        }
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Result<SparseVec> {
        let d = self.basis[i].degree + self.basis[j].degree;
        if !self.check_range(d)? {
            return Ok(SparseVec::new());
        }
        Ok(self.table.get(&(i, j)).cloned().unwrap_or_default())
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (i, x) in a {
            for (j, y) in b {
                let p = self.mul_basis(*i, *j)?;
                sparse_add_scaled(&mut out, &p, &(x * y));
            }
        }
        Ok(out)
    }

    /// Coefficient of basis element `b` in the ordered product of `factors`.
    ///
    /// Factors of the wrong total degree give 0.
    pub fn pair_product(&self, b: &DualBasisElement, factors: &[SparseVec]) -> Result<Q> {
        let mut total = 0;
        for f in factors {
            if let Some((&i, _)) = f.iter().next() {
                total += self.basis[i].degree;
            } else {
                return Ok(Q::zero());
            }
        }
        if total != b.degree {
            return Ok(Q::zero());
        }
        let mut acc = self.basis_vector(self.unit());
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc.get(&b.index).cloned().unwrap_or_else(Q::zero))
    }

    /// Class of a polynomial in the presentation generators.
    pub fn class_of(&self, e: &GcaElement) -> Result<SparseVec> {
        let forms = self
            .forms
            .as_ref()
            .ok_or_else(|| Error::InvalidAlgebra("algebra has no presentation".into()))?;
        if !Arc::ptr_eq(e.algebra(), &forms.algebra) {
            return Err(Error::AmbientMismatch);
        }
        let mut out = SparseVec::new();
        for (m, c) in e.terms() {
            let d = m.degree(&forms.algebra);
            if !self.check_range(d)? {
                continue;
            }
            sparse_add_scaled(&mut out, &forms.forms[d as usize][m], c);
        }
        Ok(out)
    }

    pub fn check_commutative(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let d = self.degree_of(i) + self.degree_of(j);
                if d > self.computed_to {
                    continue;
                }
                let (Ok(a), Ok(b)) = (self.mul_basis(i, j), self.mul_basis(j, i)) else {
                    return false;
                };
                let s = sign_q((self.degree_of(i) * self.degree_of(j)) as u64);
                let b: SparseVec = b.into_iter().map(|(k, x)| (k, x * &s)).collect();
                if a != b {
                    return false;
                }
            }
        }
        true
    }

    pub fn check_associative(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = self.degree_of(i) + self.degree_of(j) + self.degree_of(k);
                    if d > self.computed_to {
                        continue;
                    }
                    let (ei, ej, ek) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let l = self.mul(&self.mul(&ei, &ej).unwrap_or_default(), &ek);
                    let r = self.mul(&ei, &self.mul(&ej, &ek).unwrap_or_default());
                    match (l, r) {
                        (Ok(l), Ok(r)) if l == r => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    /// Poincaré polynomial as text, e.g. `1 + t^2 + t^4`.
    pub fn poincare(&self) -> String {
        let mut parts = Vec::new();
        for (n, v) in self.by_degree.iter().enumerate() {
            if v.is_empty() {
                continue;
            }
            let c = if v.len() == 1 { String::new() } else { v.len().to_string() };
            parts.push(match n {
                0 => v.len().to_string(),
                1 => format!("{c}t"),
                _ => format!("{c}t^{n}"),
            });
        }
        parts.join(" + ")
    }

    pub fn format_vector(&self, v: &SparseVec) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(i, x)| {
                if x.is_one() {
                    self.label(*i).to_string()
                } else {
                    format!("{}*{}", crate::rational::fmt_q(x), self.label(*i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for FiniteGradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poincare())
    }
}

/// `Q[x]/(x^m)` with `|x| = l`.
pub fn truncated_polynomial(name: &str, l: u32, m: u32) -> Result<FiniteGradedAlgebra> {
    let alg = Algebra::new(vec![Generator::new(name, l)])?;
    let x = GcaElement::named(&alg, name)?;
    quotient_algebra(&GradedAlgebraPresentation::new(alg, vec![x.pow(m)], None)?)
}

/// Cohomology of an odd sphere, given by an explicit table.
pub fn odd_sphere(name: &str, n: u32) -> Result<FiniteGradedAlgebra> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidAlgebra(format!("S^{n} is not an odd sphere")));
    }
    FiniteGradedAlgebra::from_table(
        vec![
            BasisElement {
                label: "1".into(),
                degree: 0,
            },
            BasisElement {
                label: name.into(),
                degree: n,
            },
        ],
        vec![],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn truncated_polynomial_basis() {
        let h = truncated_polynomial("x", 2, 4).unwrap();
        let labels: Vec<_> = h.basis().iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["1", "x", "x^2", "x^3"]);
        assert!(h.is_closed());
        let x = h.basis_vector(1);
        let x2 = h.dual(2);
        assert_eq!(h.pair_product(&x2, &[x.clone(), x.clone()]).unwrap(), q(1));
        let h3 = truncated_polynomial("x", 2, 3).unwrap();
        let x = h3.basis_vector(1);
        for b in 0..h3.dim() {
            assert_eq!(h3.pair_product(&h3.dual(b), &[x.clone(), x.clone(), x.clone()]).unwrap(), q(0));
        }
    }

    #[test]
    fn g2_u2_is_cp5() {
        let alg = Algebra::new(vec![Generator::new("c1", 2), Generator::new("c2", 4)]).unwrap();
        let c1 = GcaElement::named(&alg, "c1").unwrap();
        let c2 = GcaElement::named(&alg, "c2").unwrap();
        let r1 = &c1.pow(2) - &c2.scale(&q(3));
        let r2 = &(&c1.pow(2) * &c2.pow(2)) - &c2.pow(3).scale(&q(4));
        let h = quotient_algebra(&GradedAlgebraPresentation::new(alg, vec![r1, r2], None).unwrap()).unwrap();
        assert_eq!(h.poincare(), "1 + t^2 + t^4 + t^6 + t^8 + t^10");
        assert_eq!(h.label(h.by_degree(8)[0]), "c1^4");
        assert!(h.check_associative());
        assert!(h.check_commutative());
    }

    #[test]
    fn explicit_odd_sphere() {
        let s = odd_sphere("e", 7).unwrap();
        assert_eq!(s.dim(), 2);
        let e = s.basis_vector(1);
        assert!(s.mul(&e, &e).unwrap().is_empty());
        assert!(odd_sphere("e", 4).is_err());
    }

    #[test]
    fn unclosed_presentation_is_reported() {
        let alg = Algebra::new(vec![Generator::new("a", 2), Generator::new("b", 2)]).unwrap();
        let a = GcaElement::named(&alg, "a").unwrap();
        let pres = GradedAlgebraPresentation::new(alg, vec![a.pow(2)], Some(12)).unwrap();
        assert!(matches!(quotient_algebra(&pres), Err(Error::NotClosed(12))));
        let t = quotient_algebra_truncated(&pres, 6).unwrap();
        assert!(!t.is_closed());
        assert!(t.mul_basis(t.by_degree(6)[0], t.by_degree(2)[0]).is_err());
    }
}
