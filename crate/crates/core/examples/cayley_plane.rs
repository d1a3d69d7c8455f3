//! `F4/Spin(9)`: homotopy of `aut_1` that the translation does not reach.

use ratvis::visibility::{analyze, catalog_entry, visible_degrees};

fn main() -> ratvis::Result<()> {
    let p = catalog_entry("19")?.problem;
    let a = analyze(&p)?;
    println!("H* = {}", a.h);
    print!("{}", a.reduction.small.describe());

    let hbs = &a.hbs;
    for (v, b) in [("x23'", "y8^2"), ("x23'", "y8"), ("x15'", "1")] {
        if let Ok(g) = hbs.find(v, b) {
            println!(
                "{}: δ_0 = {}, μ̃̃ = {}",
                hbs.generators[g],
                hbs.delta_linear(g),
                a.mu.format(a.mu.image(g))
            );
        }
    }

    let r = visible_degrees(&p)?;
    for d in &r.degrees {
        if d.v_g_dim + d.homotopy_dim > 0 {
            println!("degree {:>2}: V_G {}, π(aut) {}, rank {}", d.degree, d.v_g_dim, d.homotopy_dim, d.rank);
        }
    }
    println!("vd = {:?}", r.vd);
    Ok(())
}
