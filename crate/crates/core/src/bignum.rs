//! Arbitrary-precision integer helpers: factorials, binomials and accurate
//! natural logarithms of big integers and rationals.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::LN_2;

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Natural logarithm of a positive big integer, accurate to a few ulps even
/// far beyond the `f64` range.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * LN_2
}

/// `(ln|r|, sign)` for an exact rational; zero maps to `(-inf, 0)`.
pub fn ln_abs_rational(r: &BigRational) -> (f64, i8) {
    let sign = match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => return (f64::NEG_INFINITY, 0),
        Sign::Plus => 1,
    };
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    (ln_biguint(num) - ln_biguint(den), sign)
}

/// ln Γ(h/2) for a positive integer `h`, evaluated through exact factorials.
///
/// Integer arguments use Γ(j) = (j-1)!; half-integers use
/// Γ(j + 1/2) = (2j)! √π / (4^j j!).
pub fn ln_gamma_half_integer(h: u64) -> f64 {
    assert!(h > 0, "Γ has a pole at 0");
    if h % 2 == 0 {
        ln_biguint(&factorial(h / 2 - 1))
    } else {
        let j = (h - 1) / 2;
        let num = factorial(2 * j);
        let den = factorial(j) << (2 * j) as usize;
        ln_biguint(&num) - ln_biguint(&den) + 0.5 * std::f64::consts::PI.ln()
    }
}

pub fn ln_factorial(n: u64) -> f64 {
    ln_biguint(&factorial(n))
}

pub fn to_bigint(u: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, u)
}

pub fn rational_from_biguint(u: BigUint) -> BigRational {
    BigRational::from_integer(to_bigint(u))
}

/// Best-effort `f64` for display; saturates to ±inf outside the range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let (ln, sign) = ln_abs_rational(r);
    if sign == 0 {
        return 0.0;
    }
    if ln.abs() < 700.0 {
        r.to_f64().unwrap_or(f64::NAN)
    } else {
        f64::from(sign) * ln.exp()
    }
}
