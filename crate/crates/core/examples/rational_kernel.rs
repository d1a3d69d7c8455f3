//! Exact kernel and image over `Q`.

use ratvis::linalg::{image_basis, kernel_basis, rank, RationalMatrix};
use ratvis::rational::fmt_q;

fn main() {
    let m = RationalMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 3]]);
    println!("rank = {}", rank(&m));
    for k in kernel_basis(&m) {
        let v: Vec<String> = k.iter().map(fmt_q).collect();
        println!("kernel: ({})", v.join(", "));
    }
    for b in image_basis(&m) {
        let v: Vec<String> = b.iter().map(fmt_q).collect();
        println!("image:  ({})", v.join(", "));
    }
}
