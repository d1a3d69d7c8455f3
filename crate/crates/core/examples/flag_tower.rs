//! The tower of minimal models of the two-block flag manifold `U(m+k)/U(m)xU(k)`,
//! eliminating one pair `(tau_s, c'_s)` per stage.

use ratvis::gca::check_differential;
use ratvis::sullivan::flag_tower;

fn main() -> ratvis::Result<()> {
    let (m, k) = (3, 2);
    let tower = flag_tower(m, k)?;
    for (s, stage) in tower.stages.iter().enumerate() {
        println!("stage {s}:");
        print!("{}", stage.describe());
        assert!(check_differential(&stage.d));
    }
    for (s, phi) in tower.maps.iter().enumerate() {
        println!("phi_{} commutes with d: {}", s + 1, phi.check_commutes());
    }
    println!("last stage minimal: {}", tower.last().is_minimal());
    Ok(())
}
