//! Pure Sullivan models, maps between models, maps to cohomology, pair
//! elimination and the flag-manifold tower.

mod partitions;
mod reduce;
mod tower;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::cohomology::{quotient_algebra, quotient_algebra_truncated, FiniteGradedAlgebra, GradedAlgebraPresentation};
use crate::gca::{monomials_of_degree, Algebra, AlgebraRef, Cdga, Derivation, GcaElement, Generator, Monomial};
use crate::linalg::{kernel_basis, sparse_add_scaled, to_dense, RationalMatrix, SparseVec, Subspace, Vector};
use crate::rational::Q;
use crate::{Error, Result};

pub use partitions::{block_partition_count, partition_types, PartitionType};
pub use reduce::{reduce_contractible_pairs, ElimSign, Reduction};
pub use tower::{flag_tower, flag_tower_with_unit, FlagTower};

/// `(∧(h, x), d)` with `h` even and closed and `d x_j = P_j(h)`.
#[derive(Debug, Clone)]
pub struct PureSullivanModel {
    pub cdga: Cdga,
    pub base: Vec<usize>,
    pub fiber: Vec<usize>,
    /// name of the class `c_j` each fiber generator comes from
    pub fiber_source: Vec<String>,
}

impl PureSullivanModel {
    pub fn algebra(&self) -> &AlgebraRef {
        &self.cdga.alg
    }

    pub fn base_generators(&self) -> Vec<&Generator> {
        self.base.iter().map(|&i| self.cdga.alg.generator(i)).collect()
    }

    pub fn fiber_generators(&self) -> Vec<&Generator> {
        self.fiber.iter().map(|&i| self.cdga.alg.generator(i)).collect()
    }

    pub fn fiber_differential(&self, j: usize) -> &GcaElement {
        self.cdga.d.image(self.fiber[j])
    }

    /// Wraps a cdga whose even generators are closed and whose odd
    /// generators have differentials in the even ones.
    pub fn from_cdga(cdga: Cdga, fiber_source: Option<Vec<String>>) -> Result<Self> {
        let alg = cdga.alg.clone();
        let base: Vec<usize> = (0..alg.len()).filter(|&i| !alg.is_odd(i)).collect();
        let fiber: Vec<usize> = (0..alg.len()).filter(|&i| alg.is_odd(i)).collect();
        for &b in &base {
            if !cdga.d.image(b).is_zero() {
                return Err(Error::Validation(format!("even generator {} is not closed", alg.generator(b).name)));
            }
        }
        for &f in &fiber {
            if cdga.d.image(f).support().iter().any(|g| alg.is_odd(*g)) {
                return Err(Error::Validation(format!(
                    "d({}) involves odd generators",
                    alg.generator(f).name
                )));
            }
        }
        let fiber_source =
            fiber_source.unwrap_or_else(|| fiber.iter().map(|&f| alg.generator(f).name.clone()).collect());
        Ok(PureSullivanModel {
            cdga,
            base,
            fiber,
            fiber_source,
        })
    }

    pub fn describe(&self) -> String {
        self.cdga.describe()
    }
}

/// Default name `x{deg c - 1}`, disambiguated by the class name on collision.
pub fn default_fiber_names(classes: &[Generator]) -> Vec<String> {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for c in classes {
        *counts.entry(c.degree).or_insert(0) += 1;
    }
    classes
        .iter()
        .map(|c| {
            if counts[&c.degree] > 1 {
                format!("x{}_{}", c.degree - 1, c.name)
            } else {
                format!("x{}", c.degree - 1)
            }
        })
        .collect()
}

/// The model `∧(h, x)` with `d x_j = (Bι)* c_j`.
pub fn build_pure_model(
    classes: &[Generator],
    fiber_names: &[String],
    base: &AlgebraRef,
    restriction: &[GcaElement],
) -> Result<PureSullivanModel> {
    if restriction.len() != classes.len() || fiber_names.len() != classes.len() {
        return Err(Error::DimensionMismatch {
            expected: classes.len(),
            found: restriction.len().min(fiber_names.len()),
        });
    }
    for g in base.generators() {
        if g.is_odd() {
            return Err(Error::Validation(format!("base generator {} has odd degree", g.name)));
        }
    }
    for (c, r) in classes.iter().zip(restriction) {
        if c.degree % 2 == 1 {
            return Err(Error::Validation(format!("class {} has odd degree", c.name)));
        }
        if !Arc::ptr_eq(r.algebra(), base) {
            return Err(Error::AmbientMismatch);
        }
        if !r.is_homogeneous() {
            return Err(Error::Inhomogeneous(format!("restriction of {}: {}", c.name, r)));
        }
        if let Some(d) = r.degree() {
            if d != c.degree {
                return Err(Error::DegreeMismatch(format!(
                    "restriction of {} has degree {d}, expected {}",
                    c.name, c.degree
                )));
            }
        }
    }
    let mut gens: Vec<Generator> = base.generators().to_vec();
    for (c, n) in classes.iter().zip(fiber_names) {
        gens.push(Generator::new(n.clone(), c.degree - 1));
    }
    let alg = Algebra::new(gens)?;
    let mut images = vec![GcaElement::zero(&alg); alg.len()];
    for (n, r) in fiber_names.iter().zip(restriction) {
        images[alg.index_of(n)?] = r.transport(&alg)?;
    }
    let cdga = Cdga::new(Derivation::new(&alg, images)?)?;
    let base_idx = base
        .generators()
        .iter()
        .map(|g| alg.index_of(&g.name))
        .collect::<Result<Vec<_>>>()?;
    let fiber_idx = fiber_names.iter().map(|n| alg.index_of(n)).collect::<Result<Vec<_>>>()?;
    Ok(PureSullivanModel {
        cdga,
        base: base_idx,
        fiber: fiber_idx,
        fiber_source: classes.iter().map(|c| c.name.clone()).collect(),
    })
}

/// Degreewise coordinates for a free graded-commutative algebra.
struct GradedPieces {
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl GradedPieces {
    fn new(alg: &Algebra, max: u32) -> Self {
        let bases: Vec<Vec<Monomial>> = (0..=max).map(|n| monomials_of_degree(alg, n)).collect();
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        GradedPieces { bases, index }
    }

    fn coords(&self, e: &GcaElement, n: u32) -> Vector {
        let mut v = vec![Q::zero(); self.bases[n as usize].len()];
        for (m, c) in e.terms() {
            if let Some(&i) = self.index[n as usize].get(m) {
                v[i] += c;
            }
        }
        v
    }

    /// Matrix of `d : A^n -> A^{n+1}` (columns indexed by degree-n monomials).
    fn differential(&self, cdga: &Cdga, n: u32) -> RationalMatrix {
        let cols: Vec<Vector> = self.bases[n as usize]
            .iter()
            .map(|m| self.coords(&cdga.d.apply_monomial(m), n + 1))
            .collect();
        let rows = self.bases[n as usize + 1].len();
        RationalMatrix::from_columns(&cols, rows).expect("consistent dimensions")
    }
}

struct DegreeCohomology {
    cycles: Vec<Vector>,
    boundaries: Subspace,
    dim: usize,
}

fn cohomology_in_degree(cdga: &Cdga, pieces: &GradedPieces, n: u32) -> DegreeCohomology {
    let z = kernel_basis(&pieces.differential(cdga, n));
    let mut b = Subspace::new(pieces.bases[n as usize].len());
    if n > 0 {
        let dm = pieces.differential(cdga, n - 1);
        for j in 0..dm.cols() {
            b.insert(&dm.column(j));
        }
    }
    let dim = z.len() - b.dim();
    DegreeCohomology {
        cycles: z,
        boundaries: b,
        dim,
    }
}

/// `dim H^n` of a cdga for `n <= max`, by linear algebra on monomials.
pub fn cohomology_dims(cdga: &Cdga, max: u32) -> Vec<usize> {
    let pieces = GradedPieces::new(&cdga.alg, max + 1);
    (0..=max).map(|n| cohomology_in_degree(cdga, &pieces, n).dim).collect()
}

/// An algebra map of models given on generators.
#[derive(Debug, Clone)]
pub struct ChangeOfBasis {
    pub source: Cdga,
    pub target: Cdga,
    pub images: Vec<GcaElement>,
}

impl ChangeOfBasis {
    pub fn new(source: Cdga, target: Cdga, images: Vec<GcaElement>) -> Result<Self> {
        if images.len() != source.alg.len() {
            return Err(Error::DimensionMismatch {
                expected: source.alg.len(),
                found: images.len(),
            });
        }
        for (i, im) in images.iter().enumerate() {
            if !Arc::ptr_eq(im.algebra(), &target.alg) {
                return Err(Error::AmbientMismatch);
            }
            if !im.is_zero() && im.degree() != Some(source.alg.degree(i)) {
                return Err(Error::DegreeMismatch(format!(
                    "image of {} is not of degree {}",
                    source.alg.generator(i).name,
                    source.alg.degree(i)
                )));
            }
        }
        Ok(ChangeOfBasis { source, target, images })
    }

    pub fn identity(cdga: &Cdga) -> Self {
        let images = (0..cdga.alg.len()).map(|i| GcaElement::generator(&cdga.alg, i)).collect();
        ChangeOfBasis {
            source: cdga.clone(),
            target: cdga.clone(),
            images,
        }
    }

    pub fn apply(&self, e: &GcaElement) -> Result<GcaElement> {
        e.substitute(&self.target.alg, &self.images)
    }

    pub fn image_of(&self, name: &str) -> Result<&GcaElement> {
        Ok(&self.images[self.source.alg.index_of(name)?])
    }

    /// `w(d z) = d(w z)` for every generator `z`.
    pub fn check_commutes(&self) -> bool {
        (0..self.source.alg.len()).all(|i| {
            let lhs = self.apply(self.source.d.image(i));
            let rhs = self.target.d.apply(&self.images[i]);
            matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
        })
    }

    /// `self ∘ inner`, where `inner` maps into `self.source`.
    pub fn after(&self, inner: &ChangeOfBasis) -> Result<ChangeOfBasis> {
        let images = inner.images.iter().map(|e| {
            let e = e.transport(&self.source.alg)?;
            self.apply(&e)
        });
        ChangeOfBasis::new(inner.source.clone(), self.target.clone(), images.collect::<Result<Vec<_>>>()?)
    }

    /// Induced map on cohomology is bijective in every degree `<= max`.
    pub fn check_quasi_iso(&self, max: u32) -> bool {
        let sp = GradedPieces::new(&self.source.alg, max + 1);
        let tp = GradedPieces::new(&self.target.alg, max + 1);
        for n in 0..=max {
            let hs = cohomology_in_degree(&self.source, &sp, n);
            let ht = cohomology_in_degree(&self.target, &tp, n);
            if hs.dim != ht.dim {
                return false;
            }
            let mut span = ht.boundaries.clone();
            let base = span.dim();
            for z in &hs.cycles {
                if hs.boundaries.contains(z) {
                    continue;
                }
                let mut elem = GcaElement::zero(&self.source.alg);
                for (i, c) in z.iter().enumerate() {
                    if !c.is_zero() {
                        elem.add_term(sp.bases[n as usize][i].clone(), c.clone());
                    }
                }
                let Ok(img) = self.apply(&elem) else {
                    return false;
                };
                span.insert(&tp.coords(&img, n));
            }
            if span.dim() - base != ht.dim {
                return false;
            }
        }
        true
    }
}

/// An algebra map from a model to a finite graded algebra with zero differential.
#[derive(Debug, Clone)]
pub struct KMap {
    pub source: Cdga,
    pub target: Arc<FiniteGradedAlgebra>,
    pub images: Vec<SparseVec>,
}

impl KMap {
    pub fn new(source: Cdga, target: Arc<FiniteGradedAlgebra>, images: Vec<SparseVec>) -> Result<Self> {
        if images.len() != source.alg.len() {
            return Err(Error::DimensionMismatch {
                expected: source.alg.len(),
                found: images.len(),
            });
        }
        for (i, v) in images.iter().enumerate() {
            for &b in v.keys() {
                if b >= target.dim() || target.degree_of(b) != source.alg.degree(i) {
                    return Err(Error::KMap(format!(
                        "image of {} has a component of the wrong degree",
                        source.alg.generator(i).name
                    )));
                }
            }
        }
        Ok(KMap { source, target, images })
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Result<SparseVec> {
        let mut acc = self.target.basis_vector(self.target.unit());
        for (g, e) in m.factors() {
            for _ in 0..e {
                acc = self.target.mul(&acc, &self.images[g])?;
                if acc.is_empty() {
                    return Ok(acc);
                }
            }
        }
        Ok(acc)
    }

    pub fn apply(&self, e: &GcaElement) -> Result<SparseVec> {
        if !Arc::ptr_eq(e.algebra(), &self.source.alg) {
            return Err(Error::AmbientMismatch);
        }
        let mut out = SparseVec::new();
        for (m, c) in e.terms() {
            sparse_add_scaled(&mut out, &self.apply_monomial(m)?, c);
        }
        Ok(out)
    }

    /// `k(d z) = 0` on generators and `k` onto `H^n` for `n <= max`.
    pub fn check(&self, max: u32) -> Result<()> {
        for i in 0..self.source.alg.len() {
            let v = self.apply(self.source.d.image(i))?;
            if !v.is_empty() {
                return Err(Error::KMap(format!(
                    "k(d {}) = {} is nonzero",
                    self.source.alg.generator(i).name,
                    self.target.format_vector(&v)
                )));
            }
        }
        let max = max.min(self.target.computed_to());
        for n in 1..=max {
            let dim = self.target.by_degree(n).len();
            if dim == 0 {
                continue;
            }
            let mut span = Subspace::new(self.target.dim());
            for m in monomials_of_degree(&self.source.alg, n) {
                let v = self.apply_monomial(&m)?;
                if !v.is_empty() {
                    span.insert(&to_dense(&v, self.target.dim()));
                    if span.dim() == dim {
                        break;
                    }
                }
            }
            if span.dim() != dim {
                return Err(Error::KMap(format!("not surjective in degree {n}")));
            }
        }
        Ok(())
    }
}

/// `H*` of a pure model whose nonzero fiber differentials form a regular
/// sequence, together with the map `k`.
#[derive(Debug, Clone)]
pub struct PureCohomology {
    pub h: Arc<FiniteGradedAlgebra>,
    pub kmap: KMap,
    pub formal_dimension: u32,
}

/// Coefficients of `prod (1 - t^|P|) prod (1 + t^|x|) / prod (1 - t^|h|)` up to `t^n`.
fn expected_dims(base: &[u32], relations: &[u32], closed: &[u32], n: u32) -> Vec<i128> {
    let len = n as usize + 1;
    let mut s = vec![0i128; len];
    s[0] = 1;
    for &r in relations {
        for i in (r as usize..len).rev() {
            s[i] -= s[i - r as usize];
        }
    }
    for &x in closed {
        for i in (x as usize..len).rev() {
            s[i] += s[i - x as usize];
        }
    }
    for &h in base {
        for i in h as usize..len {
            s[i] += s[i - h as usize];
        }
    }
    s
}

/// Computes `H = Q[h]/(dx) ⊗ ∧(closed x)` through degree `needed`
/// (or completely when the formal dimension allows) and the map
/// `k(h) = [h]`, `k(x) = [x]` for closed `x`, `k(x) = 0` otherwise.
pub fn pure_cohomology(model: &PureSullivanModel, needed: u32) -> Result<PureCohomology> {
    let alg = &model.cdga.alg;
    let closed: Vec<usize> = model.fiber.iter().copied().filter(|&f| model.cdga.d.image(f).is_zero()).collect();
    let open: Vec<usize> = model.fiber.iter().copied().filter(|&f| !model.cdga.d.image(f).is_zero()).collect();
    if open.len() != model.base.len() {
        return Err(Error::Validation(format!(
            "{} nonzero fiber differentials against {} base generators: cohomology is not a complete intersection, supply it explicitly",
            open.len(),
            model.base.len()
        )));
    }
    let mut gens: Vec<Generator> = model.base.iter().map(|&i| alg.generator(i).clone()).collect();
    gens.extend(closed.iter().map(|&i| alg.generator(i).clone()));
    let halg = Algebra::new(gens)?;
    let relations = open
        .iter()
        .map(|&f| model.cdga.d.image(f).transport(&halg))
        .collect::<Result<Vec<_>>>()?;
    let base_deg: Vec<u32> = model.base.iter().map(|&i| alg.degree(i)).collect();
    let rel_deg: Vec<u32> = open.iter().map(|&f| alg.degree(f) + 1).collect();
    let closed_deg: Vec<u32> = closed.iter().map(|&f| alg.degree(f)).collect();
    let formal_dimension =
        rel_deg.iter().sum::<u32>() + closed_deg.iter().sum::<u32>() - base_deg.iter().sum::<u32>();
    let window = halg.max_degree().max(1);
    let pres = GradedAlgebraPresentation::new(halg.clone(), relations, Some((formal_dimension + window).max(window)))?;
    let h = if formal_dimension <= needed.max(window) {
        quotient_algebra(&pres)?
    } else {
        quotient_algebra_truncated(&pres, needed.max(window))?
    };
    let expect = expected_dims(&base_deg, &rel_deg, &closed_deg, h.computed_to());
    let dims = h.dims();
    for (n, e) in expect.iter().enumerate() {
        let got = dims.get(n).copied().unwrap_or(0) as i128;
        if got != *e {
            return Err(Error::Validation(format!(
                "fiber differentials are not a regular sequence (dim H^{n} = {got}, expected {e})"
            )));
        }
    }
    let h = Arc::new(h);
    let mut images = vec![SparseVec::new(); alg.len()];
    for &i in model.base.iter().chain(&closed) {
        let g = GcaElement::named(&halg, &alg.generator(i).name)?;
        images[i] = h.class_of(&g)?;
    }
    let kmap = KMap::new(model.cdga.clone(), h.clone(), images)?;
    kmap.check(needed)?;
    Ok(PureCohomology {
        h,
        kmap,
        formal_dimension,
    })
}
