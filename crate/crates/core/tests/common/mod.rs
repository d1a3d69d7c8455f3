#![allow(dead_code)]

use proptest::prelude::*;
use ratvis::gca::{monomials_of_degree, Algebra, AlgebraRef, Derivation, GcaElement, Generator};
use ratvis::rational::{q, qr};
use ratvis::Q;

/// Mixed parities, two generators in one odd degree.
pub fn algebra() -> AlgebraRef {
    Algebra::new(vec![
        Generator::new("a", 2),
        Generator::new("b", 3),
        Generator::new("c", 4),
        Generator::new("e", 5),
        Generator::new("e2", 5),
        Generator::new("f", 7),
    ])
    .unwrap()
}

pub fn differential(alg: &AlgebraRef) -> Derivation {
    let g = |n: &str| GcaElement::named(alg, n).unwrap();
    let a = g("a");
    let c = g("c");
    Derivation::from_named(
        alg,
        vec![
            ("b", a.pow(2)),
            ("e", &a * &c),
            ("e2", a.pow(3).scale(&q(2))),
            ("f", &c.pow(2) - &a.pow(4)),
        ],
    )
    .unwrap()
}

pub fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| qr(n, d))
}

/// Homogeneous elements of degree at most `max`.
pub fn homogeneous(alg: AlgebraRef, max: u32) -> impl Strategy<Value = GcaElement> {
    let degrees: Vec<u32> = (0..=max).filter(|&d| !monomials_of_degree(&alg, d).is_empty()).collect();
    prop::sample::select(degrees).prop_flat_map(move |d| {
        let mons = monomials_of_degree(&alg, d);
        let alg = alg.clone();
        prop::collection::vec((prop::sample::select(mons), rational()), 1..4).prop_map(move |terms| {
            let mut e = GcaElement::zero(&alg);
            for (m, c) in terms {
                e.add_term(m, c);
            }
            e
        })
    })
}

/// Sign of swapping homogeneous elements of degrees `p` and `q`.
pub fn koszul(p: u32, r: u32) -> Q {
    if p % 2 == 1 && r % 2 == 1 {
        q(-1)
    } else {
        q(1)
    }
}
