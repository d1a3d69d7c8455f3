//! Visible degrees of `G2` acting on `G2/U(2)`, with the division-functor certificates.

use ratvis::visibility::{analyze, catalog_entry, certificate_thm12, visible_degrees};

fn main() -> ratvis::Result<()> {
    let entry = catalog_entry("G2/U2")?;
    let p = &entry.problem;
    for (c, r) in p.group.classes.iter().zip(&p.restriction) {
        println!("(Bι)*({}) = {r}", c.name);
    }

    let a = analyze(p)?;
    println!("H*(G2/U2) = {}", a.h);
    for cert in certificate_thm12(p, &a)? {
        println!("  {}", cert.describe());
    }

    let report = visible_degrees(p)?;
    println!("vd = {:?}", report.vd);
    Ok(())
}
