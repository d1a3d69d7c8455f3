//! Rational homotopy of `aut_1(S^n)` and the translation `SO(n+1) -> aut_1(S^n)`.

use ratvis::hbs::{build_hbs, linearized_homology, sphere_source, HbsOptions};
use ratvis::visibility::{catalog_entry, visible_degrees};

fn main() -> ratvis::Result<()> {
    for n in 2..=9 {
        let (source, kmap) = sphere_source(n)?;
        let model = build_hbs(&source, &kmap, HbsOptions::default())?;
        let dims = linearized_homology(&model, model.max_degree()).dims();
        println!("S^{n}: π_*(aut_1) ⊗ Q = {dims:?}");
    }

    // even spheres: SO(2n+1)/SO(2n); odd spheres: SO(2n)/SO(2n-1)
    for id in ["12:n=2", "12:n=3", "18:n=3", "18:n=4"] {
        let r = visible_degrees(&catalog_entry(id)?.problem)?;
        println!("{:<12} vd = {:?}, n(G) = {:?}", r.name, r.vd, r.n_g);
        for d in r.degrees.iter().filter(|d| d.v_g_dim > 0) {
            println!("    degree {}: dim V_G = {}, rank = {}", d.degree, d.v_g_dim, d.rank);
        }
    }
    Ok(())
}
