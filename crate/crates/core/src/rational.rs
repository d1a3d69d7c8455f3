//! Arbitrary-precision rationals and the sign function `tau`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^k` as a rational.
pub fn sign_q(k: u64) -> Q {
    if k.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Greatest integer in `(n + 1) / 2`.
pub fn tau(n: u32) -> u32 {
    n.div_ceil(2)
}

/// `(-1)^{tau(n)}`.
pub fn tau_sign(n: u32) -> Q {
    sign_q(tau(n) as u64)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Plain text form: `3`, `-1/2`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `a` or `a/b` with optional sign.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn is_unit(x: &Q) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_values() {
        assert_eq!(tau(0), 0);
        assert_eq!(tau(1), 1);
        assert_eq!(tau(2), 1);
        assert_eq!(tau(3), 2);
        assert_eq!(tau(4), 2);
        for n in 0..40u32 {
            assert_eq!(tau(n) % 2, (n * (n + 1) / 2) % 2);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(8, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-3/2"), Some(qr(-3, 2)));
        assert_eq!(fmt_q(&qr(6, 4)), "3/2");
        assert_eq!(fmt_q(&q(-7)), "-7");
        assert_eq!(parse_q("1/0"), None);
    }
}
