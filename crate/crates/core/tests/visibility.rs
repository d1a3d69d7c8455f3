use std::collections::BTreeSet;

use rayon::prelude::*;
use ratvis::gca::{GcaElement, Monomial};
use ratvis::rational::q;
use ratvis::visibility::{analyze, catalog, grassmannian, visible_degrees, CatalogEntry, VisibilityReport};

fn reports() -> Vec<(CatalogEntry, VisibilityReport)> {
    catalog()
        .into_par_iter()
        .map(|e| {
            let r = visible_degrees(&e.problem).unwrap_or_else(|err| panic!("{}: {err}", e.id));
            (e, r)
        })
        .collect()
}

#[test]
fn vd_is_contained_in_n_g() {
    for (e, r) in reports() {
        let n: BTreeSet<u32> = r.n_g.iter().copied().collect();
        assert!(r.vd.iter().all(|d| n.contains(d)), "{}: {:?} ⊄ {:?}", e.id, r.vd, r.n_g);
    }
}

#[test]
fn certified_degrees_are_visible() {
    let mut bad = Vec::new();
    for (e, r) in reports() {
        let missing: Vec<u32> = r.certified_degrees().into_iter().filter(|d| !r.vd.contains(d)).collect();
        if !missing.is_empty() {
            bad.push(format!("{} certifies {missing:?}, vd = {:?}", e.id, r.vd));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn certified_degrees_are_detected() {
    for (e, r) in reports() {
        for d in r.certified_degrees() {
            assert!(r.detected_degrees.contains(&d), "{}: degree {d}", e.id);
        }
    }
}

#[test]
fn complex_projective_entries_are_fully_visible() {
    for (e, r) in reports() {
        if ["1", "6", "6'", "11", "16"].contains(&e.row()) {
            assert_eq!(r.vd, r.n_g, "{}", e.id);
        }
    }
}

#[test]
fn equal_rank_entries_have_no_even_homotopy() {
    let mut seen = 0;
    for e in catalog() {
        let a = analyze(&e.problem).unwrap();
        if a.h.is_evenly_graded() {
            seen += 1;
            for (i, n) in a.homotopy_dims() {
                assert!(i % 2 == 1, "{}: π_{i} has dimension {n}", e.id);
            }
        }
    }
    assert!(seen >= 10);
}

#[test]
fn rational_types_of_catalog_spaces() {
    for e in catalog() {
        let a = analyze(&e.problem).unwrap();
        let dims = a.h.dims();
        let total: usize = dims.iter().sum();
        match e.row() {
            "2" | "3" | "4" | "7" | "7'" | "8" | "9" | "10" | "12" | "13" | "14" | "15" | "18" | "20" => {
                assert_eq!(total, 2, "{}: {:?}", e.id, dims)
            }
            "1" | "6" | "6'" | "11" | "16" => {
                for (d, n) in dims.iter().enumerate() {
                    assert_eq!(*n, usize::from(d % 2 == 0), "{}: degree {d}", e.id);
                }
            }
            "19" => assert_eq!(a.h.poincare(), "1 + t^8 + t^16", "{}", e.id),
            _ => {}
        }
    }
}

/// `c'_i` with `(1 + c'_1 + c'_2 + ...)(1 + c_1 + c_2 + ...) = 1`, summed over compositions of `i`.
fn inverse_class(alg: &ratvis::gca::AlgebraRef, i: u32, k: u32) -> GcaElement {
    fn rec(alg: &ratvis::gca::AlgebraRef, left: u32, k: u32, acc: GcaElement, out: &mut GcaElement) {
        if left == 0 {
            *out = &*out + &acc;
            return;
        }
        for part in 1..=left.min(k) {
            let c = GcaElement::named(alg, &format!("c{part}")).unwrap();
            rec(alg, left - part, k, (&acc * &c).scale(&q(-1)), out);
        }
    }
    let mut out = GcaElement::zero(alg);
    rec(alg, i, k, GcaElement::one(alg), &mut out);
    out
}

#[test]
fn grassmannian_differentials_match_inverse_series() {
    for m in 1..=4u32 {
        let a = analyze(&grassmannian(m, m).unwrap()).unwrap();
        let small = &a.reduction.small.cdga;
        for l in m + 1..=2 * m {
            let mut want = GcaElement::zero(&small.alg);
            for j in 1..=m {
                let i = l - j;
                if (1..=m).contains(&i) {
                    let cj = GcaElement::named(&small.alg, &format!("c{j}")).unwrap();
                    want = &want + &(&inverse_class(&small.alg, i, m) * &cj);
                }
            }
            let got = small.differential(&format!("tau{l}'")).unwrap();
            assert_eq!(got, &want, "m = {m}, l = {l}");
        }
    }
}

#[test]
fn grassmannian_delta_zero_values() {
    for m in 2..=4u32 {
        let a = analyze(&grassmannian(m, m).unwrap()).unwrap();
        let small = &a.reduction.small.cdga;
        let hbs = &a.hbs;
        let c1 = hbs.source.alg.index_of("c1").unwrap();
        let c1_class = hbs.h.index_of_label("c1").unwrap();
        assert_eq!(hbs.augmentation.get(c1, c1_class), Some(&q(-1)), "u(c1⊗c1*)");
        for s in 1..m {
            let r = m - s + 1;
            let label = if s == 1 { "c1".to_string() } else { format!("c1^{s}") };
            let monomial = {
                let e = &GcaElement::named(&small.alg, "c1").unwrap().pow(s) * &GcaElement::named(&small.alg, &format!("c{r}")).unwrap();
                e.terms().keys().next().cloned().unwrap_or_else(Monomial::one)
            };
            let coefficient = small.differential(&format!("tau{}'", m + 1)).unwrap().coefficient(&monomial);
            let sign = if s % 2 == 0 { q(1) } else { q(-1) };
            assert_eq!(coefficient, sign.clone() * q(s as i64 + 1), "m = {m}, s = {s}");
            let pair = hbs.find(&format!("c{r}"), "1").unwrap();
            let g = hbs.find(&format!("tau{}'", m + 1), &label).unwrap();
            let got = hbs.delta_linear(g).linear_coefficient(pair);
            assert_eq!(got, coefficient * sign, "m = {m}, s = {s}");

            let top = hbs.find(&format!("tau{}'", 2 * m - s + 1), &format!("c1^{m}")).unwrap();
            assert_eq!(hbs.delta_linear(top).linear_coefficient(pair), q(1), "m = {m}, s = {s}");
            assert!(a.mu.image(top).iter().all(|x| x == &q(0)));
        }
    }
}
