//! The tower of quasi-isomorphic models `∧W_(s)` of a two-block flag manifold.
//!
//! `W_(0)` has base generators `c_1..c_k`, `c'_1..c'_m` and odd generators
//! `tau_1..tau_{m+k}` with `d tau_l = sum_{i+j=l} c'_i c_j`. Stage `s` drops
//! `tau_1..tau_s` and `c'_1..c'_s`, and
//!
//! ```text
//! d_(s) tau_l = sum_{i=s+1}^{l} c'_i c_{l-i} + sum_{j=0}^{s} A_j c_{l-j},
//! A_j = sum over types (i_1..i_k) of weight j of (-1)^{i_1+..+i_k} Q^(j)_{i} c_1^{i_1}..c_k^{i_k}.
//! ```

use super::{block_partition_count, partition_types, ChangeOfBasis};
use crate::gca::{Algebra, AlgebraRef, Cdga, Derivation, GcaElement, Generator};
use crate::rational::{sign_q, Q};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct FlagTower {
    pub m: u32,
    pub k: u32,
    /// degree of `c_1`
    pub unit: u32,
    /// `stages[s]` is `∧W_(s)`, `s = 0..=m`
    pub stages: Vec<Cdga>,
    /// `maps[s-1] = phi_s : ∧W_(s) -> ∧W_(s-1)`
    pub maps: Vec<ChangeOfBasis>,
}

impl FlagTower {
    pub fn last(&self) -> &Cdga {
        self.stages.last().expect("tower has stage 0")
    }

    pub fn tau_name(&self, l: u32) -> String {
        tau_name(l)
    }

    pub fn c_name(&self, i: u32) -> String {
        c_name(self.unit, i, false)
    }

    pub fn c_prime_name(&self, i: u32) -> String {
        c_name(self.unit, i, true)
    }
}

fn tau_name(l: u32) -> String {
    format!("tau{l}")
}

fn c_name(unit: u32, i: u32, prime: bool) -> String {
    let letter = if unit == 4 { "q" } else { "c" };
    if prime {
        format!("{letter}{i}'")
    } else {
        format!("{letter}{i}")
    }
}

fn stage_algebra(m: u32, k: u32, unit: u32, s: u32) -> Result<AlgebraRef> {
    let mut gens = Vec::new();
    for i in 1..=k {
        gens.push(Generator::new(c_name(unit, i, false), unit * i));
    }
    for i in s + 1..=m {
        gens.push(Generator::new(c_name(unit, i, true), unit * i));
    }
    for l in s + 1..=m + k {
        gens.push(Generator::new(tau_name(l), unit * l - 1));
    }
    Algebra::new(gens)
}

fn c(alg: &AlgebraRef, unit: u32, k: u32, i: i64) -> Result<GcaElement> {
    if i == 0 {
        Ok(GcaElement::one(alg))
    } else if i < 0 || i > k as i64 {
        Ok(GcaElement::zero(alg))
    } else {
        GcaElement::named(alg, &c_name(unit, i as u32, false))
    }
}

fn c_prime(alg: &AlgebraRef, unit: u32, m: u32, s: u32, i: i64) -> Result<GcaElement> {
    if i == 0 {
        Ok(GcaElement::one(alg))
    } else if i <= s as i64 || i > m as i64 {
        Ok(GcaElement::zero(alg))
    } else {
        GcaElement::named(alg, &c_name(unit, i as u32, true))
    }
}

/// `A_j` as a polynomial in `c_1..c_k`.
pub fn a_coefficient(alg: &AlgebraRef, unit: u32, k: u32, j: u32) -> Result<GcaElement> {
    let mut out = GcaElement::zero(alg);
    for t in partition_types(j, k as usize) {
        let q = block_partition_count(&t)?;
        let mut term = GcaElement::scalar(alg, sign_q(t.blocks() as u64) * Q::from_integer(q.into()));
        for (l, &e) in t.counts.iter().enumerate() {
            if e > 0 {
                term = &term * &c(alg, unit, k, l as i64 + 1)?.pow(e);
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

fn stage(m: u32, k: u32, unit: u32, s: u32) -> Result<Cdga> {
    let alg = stage_algebra(m, k, unit, s)?;
    let a: Vec<GcaElement> = (0..=s).map(|j| a_coefficient(&alg, unit, k, j)).collect::<Result<_>>()?;
    let mut images = vec![GcaElement::zero(&alg); alg.len()];
    for l in s + 1..=m + k {
        let mut d = GcaElement::zero(&alg);
        for i in s + 1..=l {
            d = &d + &(&c_prime(&alg, unit, m, s, i as i64)? * &c(&alg, unit, k, (l - i) as i64)?);
        }
        for (j, aj) in a.iter().enumerate() {
            d = &d + &(aj * &c(&alg, unit, k, l as i64 - j as i64)?);
        }
        images[alg.index_of(&tau_name(l))?] = d;
    }
    Cdga::new(Derivation::new(&alg, images)?)
}

/// `phi_s(tau_l) = tau_l - tau_s c_{l-s}`, identity on base generators.
fn connecting_map(k: u32, unit: u32, s: u32, src: &Cdga, tgt: &Cdga) -> Result<ChangeOfBasis> {
    let ta = &tgt.alg;
    let mut images = Vec::with_capacity(src.alg.len());
    for g in src.alg.generators() {
        let mut e = GcaElement::named(ta, &g.name)?;
        if let Some(l) = g.name.strip_prefix("tau").and_then(|x| x.parse::<u32>().ok()) {
            let ts = GcaElement::named(ta, &tau_name(s))?;
            e = &e - &(&ts * &c(ta, unit, k, l as i64 - s as i64)?);
        }
        images.push(e);
    }
    ChangeOfBasis::new(src.clone(), tgt.clone(), images)
}

/// Tower for the unitary case (`deg c_i = 2i`), `m >= k >= 1`.
pub fn flag_tower(m: u32, k: u32) -> Result<FlagTower> {
    flag_tower_with_unit(m, k, 2)
}

/// Same tower with `deg c_i = unit * i`; `unit = 4` gives the symplectic analogue.
pub fn flag_tower_with_unit(m: u32, k: u32, unit: u32) -> Result<FlagTower> {
    if k == 0 || m < k {
        return Err(Error::Validation(format!("flag tower needs m >= k >= 1, got m = {m}, k = {k}")));
    }
    if unit == 0 || unit % 2 == 1 {
        return Err(Error::Validation(format!("unit degree must be even and positive, got {unit}")));
    }
    let stages: Vec<Cdga> = (0..=m).map(|s| stage(m, k, unit, s)).collect::<Result<_>>()?;
    let mut maps = Vec::new();
    for s in 1..=m {
        let phi = connecting_map(k, unit, s, &stages[s as usize], &stages[s as usize - 1])?;
        if !phi.check_commutes() {
            return Err(Error::Invariant(format!("tower map phi_{s} does not commute with d")));
        }
        maps.push(phi);
    }
    Ok(FlagTower {
        m,
        k,
        unit,
        stages,
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::check_differential;

    #[test]
    fn first_stage_matches_hand_computation() {
        let t = flag_tower(2, 2).unwrap();
        let d = t.stages[1].differential("tau2").unwrap();
        let a = &t.stages[1].alg;
        let g = |n: &str| GcaElement::named(a, n).unwrap();
        let expected = &(&g("c2'") - &g("c1").pow(2)) + &g("c2");
        assert_eq!(d, &expected);
    }

    #[test]
    fn stages_are_differentials_and_last_is_minimal() {
        for m in 1..=4 {
            for k in 1..=m {
                let t = flag_tower(m, k).unwrap();
                assert!(t.stages.iter().all(|s| check_differential(&s.d)));
                assert!(t.maps.iter().all(|p| p.check_commutes()));
                assert!(t.last().is_minimal());
            }
        }
    }

    #[test]
    fn top_coefficient_sign() {
        for m in 1..=4u32 {
            let t = flag_tower(m, 1).unwrap();
            let d = t.last().differential(&format!("tau{}", m + 1)).unwrap();
            let c1 = t.last().gen("c1").unwrap();
            assert_eq!(d, &c1.pow(m + 1).scale(&sign_q(m as u64)));
        }
    }

    #[test]
    fn symplectic_degrees() {
        let t = flag_tower_with_unit(2, 1, 4).unwrap();
        let a = &t.stages[0].alg;
        assert_eq!(a.degree(a.index_of("tau3").unwrap()), 11);
        assert_eq!(a.degree(a.index_of("q2'").unwrap()), 8);
        assert!(t.maps.iter().all(|p| p.check_quasi_iso(12)));
    }
}
