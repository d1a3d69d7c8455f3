//! Function-space model of a truncated polynomial algebra `Q[x]/(x^m)`.
//!
//! ```text
//! cargo run --example truncated_model -- 2 4
//! ```

use ratvis::hbs::{build_hbs, linearized_homology, truncated_source, HbsOptions};

fn main() -> ratvis::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("integer argument"));
    let l = args.next().unwrap_or(2);
    let m = args.next().unwrap_or(4);

    let (source, kmap) = truncated_source(l, m)?;
    let model = build_hbs(&source, &kmap, HbsOptions::default())?;
    println!("H* = {}", model.h);
    for (i, g) in model.generators.iter().enumerate() {
        println!("  δ({g}) = {}", model.delta(i)?);
    }
    for (g, u) in &model.augmentation.values {
        println!("  u({g}) = {u}");
    }
    assert!(model.check_delta_squared()?);

    let homology = linearized_homology(&model, model.max_degree());
    println!("π_*(aut_1) ⊗ Q: {:?}", homology.dims());
    Ok(())
}
