//! Elimination of contractible pairs `(x, h)` with `dx = c h + R`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ChangeOfBasis, PureSullivanModel};
use crate::gca::{Algebra, AlgebraRef, Cdga, Derivation, GcaElement, Generator, Monomial};
use crate::rational::Q;
use crate::{Error, Result};

/// Global sign applied to every rewritten fiber generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElimSign {
    #[default]
    Plus,
    Minus,
}

impl std::fmt::Display for ElimSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ElimSign::Plus => "plus",
            ElimSign::Minus => "minus",
        })
    }
}

impl std::str::FromStr for ElimSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(ElimSign::Plus),
            "minus" => Ok(ElimSign::Minus),
            _ => Err(Error::Validation(format!("unknown elimination sign '{s}' (expected plus or minus)"))),
        }
    }
}

impl ElimSign {
    pub fn opposite(self) -> Self {
        match self {
            ElimSign::Plus => ElimSign::Minus,
            ElimSign::Minus => ElimSign::Plus,
        }
    }

    fn factor(self) -> Q {
        match self {
            ElimSign::Plus => Q::one(),
            ElimSign::Minus => -Q::one(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub small: PureSullivanModel,
    /// `w : small -> original`
    pub w: ChangeOfBasis,
    /// image of each original base generator (in `original.base` order) as a
    /// polynomial in the surviving base generators
    pub retraction: Vec<GcaElement>,
    /// `(fiber, base)` names in elimination order
    pub eliminated: Vec<(String, String)>,
}

impl Reduction {
    pub fn is_trivial(&self) -> bool {
        self.eliminated.is_empty()
    }
}

struct State {
    cdga: Cdga,
    fiber_source: Vec<String>,
    /// current generators -> original model
    w: Vec<GcaElement>,
    /// original base generators -> current algebra
    rho: Vec<GcaElement>,
}

/// Splits `p` as `sum_k a_k h^k` with `a_k` free of `h`.
fn powers_of(p: &GcaElement, h: usize) -> Vec<GcaElement> {
    let alg = p.algebra();
    let mut out: Vec<GcaElement> = Vec::new();
    for (m, c) in p.terms() {
        let k = m.exponent(h) as usize;
        let rest: Vec<(usize, u32)> = m.factors().filter(|&(g, _)| g != h).collect();
        while out.len() <= k {
            out.push(GcaElement::zero(alg));
        }
        out[k].add_term(Monomial::from_sorted(rest), c.clone());
    }
    out
}

fn find_pair(cdga: &Cdga) -> Option<(usize, usize, Q)> {
    let alg = &cdga.alg;
    (0..alg.len()).filter(|&i| alg.is_odd(i)).find_map(|x| {
        let dx = cdga.d.image(x);
        (0..alg.len())
            .filter(|&h| !alg.is_odd(h))
            .find(|&h| !dx.linear_coefficient(h).is_zero())
            .map(|h| (x, h, dx.linear_coefficient(h)))
    })
}

fn step(st: State, x: usize, h: usize, c: Q, sign: ElimSign) -> Result<State> {
    let old = &st.cdga.alg;
    let sigma = sign.factor();
    let dx = st.cdga.d.image(x).clone();
    let ch = GcaElement::monomial(old, Monomial::generator(h), c.clone());
    let r = &dx - &ch;
    let h0 = r.scale(&(-Q::one() / c.clone()));

    let keep: Vec<usize> = (0..old.len()).filter(|&i| i != x && i != h).collect();
    let new_alg = Algebra::new(keep.iter().map(|&i| old.generator(i).clone()).collect())?;
    // algebra map old -> new killing x and sending h to h0
    let mut to_new = vec![GcaElement::zero(&new_alg); old.len()];
    for &i in &keep {
        to_new[i] = GcaElement::named(&new_alg, &old.generator(i).name)?;
    }
    to_new[h] = h0.transport(&new_alg)?;

    let mut images = vec![GcaElement::zero(&new_alg); new_alg.len()];
    let mut w = vec![GcaElement::zero(st.w[0].algebra()); new_alg.len()];
    let mut fiber_source = Vec::new();
    let mut src_iter = st.fiber_source.iter();
    for i in 0..old.len() {
        if old.is_odd(i) {
            let s = src_iter.next().cloned().unwrap_or_default();
            if i != x {
                fiber_source.push(s);
            }
        }
    }

    for &i in &keep {
        let ni = new_alg.index_of(&old.generator(i).name)?;
        if !old.is_odd(i) {
            w[ni] = st.w[i].clone();
            continue;
        }
        let p = st.cdga.d.image(i).clone();
        let parts = powers_of(&p, h);
        let psub = p.substitute(&new_alg, &to_new)?;
        // S = (1/c) sum_k a_k sum_{i<k} h^i h0^{k-1-i}
        let mut s = GcaElement::zero(old);
        let hg = GcaElement::generator(old, h);
        for (k, a) in parts.iter().enumerate().skip(1) {
            if a.is_zero() {
                continue;
            }
            let mut inner = GcaElement::zero(old);
            for j in 0..k {
                inner = &inner + &(&hg.pow(j as u32) * &h0.pow((k - 1 - j) as u32));
            }
            s = &s + &(a * &inner);
        }
        s = s.scale(&(Q::one() / c.clone()));
        let psub_old = psub.transport(old)?;
        if &p - &psub_old != &s * &dx {
            return Err(Error::Invariant(format!(
                "elimination identity fails for d({})",
                old.generator(i).name
            )));
        }
        images[ni] = psub.scale(&sigma);
        let xs = &GcaElement::generator(old, x) * &s;
        let yi = &GcaElement::generator(old, i) - &xs;
        w[ni] = yi.substitute(st.w[0].algebra(), &st.w)?.scale(&sigma);
    }
    let cdga = Cdga::new(Derivation::new(&new_alg, images)?)?;
    let rho = st
        .rho
        .iter()
        .map(|e| e.substitute(&new_alg, &to_new))
        .collect::<Result<Vec<_>>>()?;
    Ok(State {
        cdga,
        fiber_source,
        w,
        rho,
    })
}

/// Repeatedly eliminates `(x, h)` where `dx` has a nonzero linear coefficient
/// on the base generator `h`, lowest-degree `x` first.
pub fn reduce_contractible_pairs(m: &PureSullivanModel, sign: ElimSign) -> Result<Reduction> {
    let orig = &m.cdga.alg;
    let mut st = State {
        cdga: m.cdga.clone(),
        fiber_source: m.fiber_source.clone(),
        w: (0..orig.len()).map(|i| GcaElement::generator(orig, i)).collect(),
        rho: m.base.iter().map(|&i| GcaElement::generator(orig, i)).collect(),
    };
    let mut eliminated = Vec::new();
    while let Some((x, h, c)) = find_pair(&st.cdga) {
        let a = &st.cdga.alg;
        eliminated.push((a.generator(x).name.clone(), a.generator(h).name.clone()));
        st = step(st, x, h, c, sign)?;
    }
    if eliminated.is_empty() {
        return Ok(Reduction {
            small: m.clone(),
            w: ChangeOfBasis::identity(&m.cdga),
            retraction: st.rho,
            eliminated,
        });
    }

    // prime the surviving fiber generators
    let cur = st.cdga.alg.clone();
    let gens: Vec<Generator> = cur
        .generators()
        .iter()
        .map(|g| {
            if g.is_odd() {
                Generator::new(format!("{}'", g.name), g.degree)
            } else {
                g.clone()
            }
        })
        .collect();
    let fin: AlgebraRef = Algebra::new(gens)?;
    let rename: Vec<GcaElement> = (0..cur.len()).map(|i| GcaElement::generator(&fin, i)).collect();
    let images = (0..cur.len())
        .map(|i| st.cdga.d.image(i).substitute(&fin, &rename))
        .collect::<Result<Vec<_>>>()?;
    let cdga = Cdga::new(Derivation::new(&fin, images)?)?;
    let retraction = st
        .rho
        .iter()
        .map(|e| e.substitute(&fin, &rename))
        .collect::<Result<Vec<_>>>()?;
    let small = PureSullivanModel::from_cdga(cdga.clone(), Some(st.fiber_source))?;
    let w = ChangeOfBasis::new(cdga, m.cdga.clone(), st.w)?;
    if !w.check_commutes() {
        return Err(Error::Invariant("reduction map does not commute with d".into()));
    }
    Ok(Reduction {
        small,
        w,
        retraction,
        eliminated,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{build_pure_model, default_fiber_names};
    use super::*;
    use crate::rational::{q, sign_q};

    fn case1(m: u32) -> PureSullivanModel {
        // SO(2m+1) ⊃ SO(2) x SO(2m-1)
        let mut gens = vec![Generator::new("chi", 2)];
        for i in 1..m {
            gens.push(Generator::new(format!("p{i}'"), 4 * i));
        }
        let base = Algebra::new(gens).unwrap();
        let chi = GcaElement::named(&base, "chi").unwrap();
        let pp = |i: u32| {
            if i == 0 {
                GcaElement::one(&base)
            } else if i >= m {
                GcaElement::zero(&base)
            } else {
                GcaElement::named(&base, &format!("p{i}'")).unwrap()
            }
        };
        let classes: Vec<Generator> = (1..=m).map(|i| Generator::new(format!("p{i}"), 4 * i)).collect();
        let names: Vec<String> = (1..=m).map(|i| format!("tau{}", 4 * i - 1)).collect();
        let res: Vec<GcaElement> = (1..=m)
            .map(|i| (&(&chi.pow(2) * &pp(i - 1)) + &pp(i)).scale(&sign_q(i as u64)))
            .collect();
        build_pure_model(&classes, &names, &base, &res).unwrap()
    }

    #[test]
    fn case1_reduces_to_even_sphere_model() {
        for m in 2..=4 {
            let r = reduce_contractible_pairs(&case1(m), ElimSign::Plus).unwrap();
            let z = &r.small;
            assert_eq!(z.algebra().len(), 2);
            let top = format!("tau{}'", 4 * m - 1);
            let d = z.cdga.differential(&top).unwrap();
            let chi = z.cdga.gen("chi").unwrap();
            assert_eq!(d, &-&chi.pow(2 * m));
            assert!(r.w.check_commutes());
            assert!(r.w.check_quasi_iso(4 * m + 2));
        }
    }

    #[test]
    fn minus_sign_also_commutes() {
        let r = reduce_contractible_pairs(&case1(3), ElimSign::Minus).unwrap();
        assert!(r.w.check_commutes());
        assert!(r.w.check_quasi_iso(14));
    }

    #[test]
    fn f4_spin9_keeps_x23() {
        let base = Algebra::new(
            [("y4", 4), ("y8", 8), ("y12", 12), ("y16", 16)]
                .iter()
                .map(|&(n, d)| Generator::new(n, d))
                .collect(),
        )
        .unwrap();
        let g = |n: &str| GcaElement::named(&base, n).unwrap();
        let classes: Vec<Generator> = [4, 12, 16, 24].iter().map(|&d| Generator::new(format!("c{d}"), d)).collect();
        let m = build_pure_model(&classes, &default_fiber_names(&classes), &base, &[g("y4"), g("y12"), g("y16"), g("y8").pow(3)])
            .unwrap();
        let r = reduce_contractible_pairs(&m, ElimSign::Plus).unwrap();
        let names: Vec<_> = r.small.algebra().generators().iter().map(|g| g.name.clone()).collect();
        assert_eq!(names, ["y8", "x23'"]);
        assert_eq!(r.small.cdga.differential("x23'").unwrap().to_string(), "y8^3");
        assert_eq!(r.eliminated.len(), 3);
    }

    #[test]
    fn no_linear_terms_is_fixed_point() {
        let base = Algebra::new(vec![Generator::new("a", 2)]).unwrap();
        let a = GcaElement::named(&base, "a").unwrap();
        let classes = vec![Generator::new("c", 6)];
        let m = build_pure_model(&classes, &default_fiber_names(&classes), &base, &[a.pow(3).scale(&q(2))]).unwrap();
        let r = reduce_contractible_pairs(&m, ElimSign::Plus).unwrap();
        assert!(r.is_trivial());
        assert!(r.w.check_commutes());
        assert_eq!(r.small.describe(), m.describe());
    }
}
