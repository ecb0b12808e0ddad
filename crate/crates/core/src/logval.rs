//! Values stored as `ln|v|` plus a unit phase, so that factorials and large
//! powers never overflow.

use crate::bignum::ln_abs_rational;
use num_complex::Complex64;
use num_rational::BigRational;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogMagnitudeValue {
    log_abs: f64,
    /// Unit complex number; `0` for the zero value.
    phase: Complex64,
}

impl LogMagnitudeValue {
    pub fn zero() -> Self {
        LogMagnitudeValue {
            log_abs: f64::NEG_INFINITY,
            phase: Complex64::new(0.0, 0.0),
        }
    }

    pub fn one() -> Self {
        Self::from_log(0.0, 1.0)
    }

    /// `sign · e^{log_abs}` for a real sign (±1; 0 gives zero).
    pub fn from_log(log_abs: f64, sign: f64) -> Self {
        if sign == 0.0 || log_abs == f64::NEG_INFINITY {
            return Self::zero();
        }
        LogMagnitudeValue {
            log_abs,
            phase: Complex64::new(sign.signum(), 0.0),
        }
    }

    pub fn from_log_phase(log_abs: f64, phase: Complex64) -> Self {
        if log_abs == f64::NEG_INFINITY || phase.norm() == 0.0 {
            return Self::zero();
        }
        LogMagnitudeValue {
            log_abs,
            phase: phase / phase.norm(),
        }
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_log(x.abs().ln(), x.signum() * f64::from(u8::from(x != 0.0)))
    }

    pub fn from_complex(z: Complex64) -> Self {
        let r = z.norm();
        if r == 0.0 {
            return Self::zero();
        }
        LogMagnitudeValue {
            log_abs: r.ln(),
            phase: z / r,
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let (ln, sign) = ln_abs_rational(r);
        Self::from_log(ln, f64::from(sign))
    }

    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn log10_abs(&self) -> f64 {
        self.log_abs / std::f64::consts::LN_10
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    /// Sign of the real part of the phase: -1, 0 or 1.
    pub fn sign(&self) -> i8 {
        if self.is_zero() || self.phase.re == 0.0 {
            0
        } else if self.phase.re > 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        LogMagnitudeValue {
            log_abs: self.log_abs + other.log_abs,
            phase: self.phase * other.phase,
        }
    }

    /// Panics when dividing by zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by a zero LogMagnitudeValue");
        if self.is_zero() {
            return Self::zero();
        }
        LogMagnitudeValue {
            log_abs: self.log_abs - other.log_abs,
            phase: self.phase / other.phase,
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one();
        }
        if self.is_zero() {
            assert!(n > 0, "negative power of zero");
            return Self::zero();
        }
        LogMagnitudeValue {
            log_abs: self.log_abs * n as f64,
            phase: self.phase.powi(n as i32),
        }
    }

    /// Scales by `e^{delta}`.
    pub fn scale_log(&self, delta: f64) -> Self {
        if self.is_zero() {
            return *self;
        }
        LogMagnitudeValue {
            log_abs: self.log_abs + delta,
            phase: self.phase,
        }
    }

    /// Real part in linear scale; saturates to ±inf.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.phase.re * self.log_abs.exp()
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        self.phase * self.log_abs.exp()
    }

    /// Real part of `self / other` in linear scale. Two zeros give 1 and a
    /// nonzero over zero gives +inf.
    pub fn ratio(&self, other: &Self) -> f64 {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => 1.0,
            (false, true) => f64::INFINITY,
            (true, false) => 0.0,
            (false, false) => (self.phase / other.phase).re * (self.log_abs - other.log_abs).exp(),
        }
    }

    /// Sum of values, returning the sum together with the largest summand
    /// magnitude (as a log) for cancellation checks.
    pub fn sum(values: &[Self]) -> (Self, f64) {
        let max = values
            .iter()
            .map(|v| v.log_abs)
            .fold(f64::NEG_INFINITY, f64::max);
        if max == f64::NEG_INFINITY {
            return (Self::zero(), max);
        }
        let s: Complex64 = values
            .iter()
            .filter(|v| !v.is_zero())
            .map(|v| v.phase * (v.log_abs - max).exp())
            .sum();
        (Self::from_complex(s).scale_log(max), max)
    }
}

impl fmt::Display for LogMagnitudeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let l10 = self.log10_abs();
        let exponent = l10.floor();
        let mantissa = 10f64.powf(l10 - exponent);
        let sign = if self.phase.re < 0.0 { "-" } else { "" };
        write!(f, "{sign}{mantissa:.12}e{exponent}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn zero_and_sign() {
        assert!(LogMagnitudeValue::zero().is_zero());
        assert_eq!(LogMagnitudeValue::from_real(-2.0).sign(), -1);
        assert_eq!(LogMagnitudeValue::from_real(0.0).sign(), 0);
        assert_eq!(
            LogMagnitudeValue::zero().ratio(&LogMagnitudeValue::zero()),
            1.0
        );
        let r = BigRational::new(BigInt::from(-5), BigInt::from(24));
        assert!((LogMagnitudeValue::from_rational(&r).to_f64() + 5.0 / 24.0).abs() < 1e-16);
    }

    #[test]
    fn huge_magnitudes_stay_finite() {
        let big = LogMagnitudeValue::from_log(5000.0, 1.0);
        let prod = big.mul(&big);
        assert_eq!(prod.log_abs(), 10000.0);
        assert!((prod.div(&big).ratio(&big) - 1.0).abs() < 1e-15);
        assert_eq!(
            format!("{}", LogMagnitudeValue::from_real(-1234.5)),
            "-1.234500000000e3"
        );
    }

    #[test]
    fn sum_cancels() {
        let a = LogMagnitudeValue::from_real(3.0);
        let b = LogMagnitudeValue::from_real(-3.0);
        let (s, max) = LogMagnitudeValue::sum(&[a, b]);
        assert!(s.is_zero());
        assert!((max - 3f64.ln()).abs() < 1e-16);
    }

    proptest! {
        #[test]
        fn products_add_logs(a in -300.0f64..300.0, b in -300.0f64..300.0, sa in prop::bool::ANY, sb in prop::bool::ANY) {
            let x = LogMagnitudeValue::from_log(a, if sa { 1.0 } else { -1.0 });
            let y = LogMagnitudeValue::from_log(b, if sb { 1.0 } else { -1.0 });
            let p = x.mul(&y);
            prop_assert!((p.log_abs() - (a + b)).abs() <= 1e-12 * (1.0 + a.abs() + b.abs()));
            prop_assert_eq!(p.sign(), x.sign() * y.sign());
            // against direct evaluation within the double range
            let direct = (a.exp() * if sa { 1.0 } else { -1.0 }) * (b.exp() * if sb { 1.0 } else { -1.0 });
            if direct.is_finite() && direct != 0.0 && direct.abs() > 1e-300 {
                prop_assert!((p.to_f64() / direct - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn powers_scale_logs(a in -10.0f64..10.0, n in -20i64..20) {
            let x = LogMagnitudeValue::from_log(a, -1.0);
            let p = x.powi(n);
            prop_assert!((p.log_abs() - a * n as f64).abs() < 1e-12);
            prop_assert_eq!(p.sign(), if n % 2 == 0 { 1 } else { -1 });
        }
    }
}
