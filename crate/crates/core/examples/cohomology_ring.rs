//! Normal-form basis and dual pairing of a quotient ring.

use ratvis::cohomology::{quotient_algebra, GradedAlgebraPresentation};
use ratvis::gca::{Algebra, Generator};
use ratvis::poly::parse_polynomial;

fn main() -> ratvis::Result<()> {
    // H*(G2/U2) = Q[c1, c2] / (c1^2 - 3 c2, c1^2 c2^2 - 4 c2^3)
    let alg = Algebra::new(vec![Generator::new("c1", 2), Generator::new("c2", 4)])?;
    let relations = ["c1^2 - 3*c2", "c1^2*c2^2 - 4*c2^3"]
        .iter()
        .map(|r| parse_polynomial(&alg, r).map_err(|e| ratvis::Error::Validation(e.to_string())))
        .collect::<ratvis::Result<Vec<_>>>()?;
    let h = quotient_algebra(&GradedAlgebraPresentation::new(alg.clone(), relations, None)?)?;
    println!("{h}");
    for (i, b) in h.basis().iter().enumerate() {
        println!("  b{i} = {} (degree {})", b.label, b.degree);
    }
    let c2 = h.class_of(&parse_polynomial(&alg, "c2").expect("c2"))?;
    let c1 = h.class_of(&parse_polynomial(&alg, "c1").expect("c1"))?;
    println!("c1 * c2 = {}", h.format_vector(&h.mul(&c1, &c2)?));
    println!("c2^2 = {}", h.format_vector(&h.mul(&c2, &c2)?));
    Ok(())
}
