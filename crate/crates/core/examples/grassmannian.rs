//! Linear differential and translation map on the complex Grassmannian `U(2m)/U(m)xU(m)`.

use ratvis::visibility::{analyze, grassmannian};

fn main() -> ratvis::Result<()> {
    let m = 3;
    let a = analyze(&grassmannian(m, m)?)?;
    let hbs = &a.hbs;
    for s in 1..m {
        let label = if s == 1 { "c1".to_string() } else { format!("c1^{s}") };
        let g = hbs.find(&format!("tau{}'", m + 1), &label)?;
        println!("δ_0({}) = {}", hbs.generators[g], hbs.delta_linear(g));
        println!("μ̃̃({}) = {}", hbs.generators[g], a.mu.format(a.mu.image(g)));
        let top = hbs.find(&format!("tau{}'", 2 * m - s + 1), &format!("c1^{m}"))?;
        println!("δ_0({}) = {}", hbs.generators[top], hbs.delta_linear(top));
    }
    Ok(())
}
