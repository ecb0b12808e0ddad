//! Leading-order saddle-point estimates of A(n) in log-magnitude arithmetic,
//! and a quadrature cross-check of the sphere-integral representation.

use crate::bignum::{ln_factorial, ln_gamma_half_integer};
use crate::error::{Error, Result};
use crate::exact_enum::CountTable;
use crate::logval::LogMagnitudeValue;
use crate::multipoly::RationalPolynomial;
use crate::quadrature::{adaptive_gk15, sphere2_integral};
use crate::sphere_critical::{
    build_psi, find_maxima, hessian_det_sphere, CriticalPointRecord, SphericalMaximizer,
};
use crate::weights::WeightSpec;
use num_traits::ToPrimitive;
use std::f64::consts::PI;

/// Sums cancelling below this fraction of the largest summand are zero.
pub const CANCELLATION_REL: f64 = 1e-10;
pub const IMAG_REL_TOL: f64 = 1e-8;
pub const IMAG_ABS_TOL: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimateRequest {
    pub n: u32,
    pub k: u32,
    pub c: usize,
}

impl EstimateRequest {
    pub fn new(n: u32, k: u32, c: usize) -> Self {
        EstimateRequest { n, k, c }
    }

    /// Edge count `nk/2`, if integral.
    pub fn m(&self) -> Option<u64> {
        let nk = u64::from(self.n) * u64::from(self.k);
        (nk % 2 == 0).then_some(nk / 2)
    }

    /// `n(k/2 - 1) = m - n`, if integral.
    pub fn ell(&self) -> Option<u64> {
        self.m().map(|m| m - u64::from(self.n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagnostic {
    /// The summands over critical points cancelled exactly.
    ParityCancellation,
    /// `nk` is odd, so no graph exists and the estimate is zero.
    NonIntegralEuler,
}

impl Diagnostic {
    pub fn as_str(self) -> &'static str {
        match self {
            Diagnostic::ParityCancellation => "parity cancellation",
            Diagnostic::NonIntegralEuler => "non-integral Euler characteristic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: LogMagnitudeValue,
    pub diagnostic: Option<Diagnostic>,
    /// |Im| / |Re| of the critical-point sum before taking the real part.
    pub imag_residual: f64,
}

impl Estimate {
    fn zero(diagnostic: Diagnostic) -> Self {
        Estimate {
            value: LogMagnitudeValue::zero(),
            diagnostic: Some(diagnostic),
            imag_residual: 0.0,
        }
    }
}

fn checked_ell(req: &EstimateRequest) -> Result<Option<u64>> {
    match req.ell() {
        None => Ok(None),
        Some(0) => Err(Error::InvalidArgument(format!(
            "the Euler characteristic n(k/2-1) must be positive (n = {}, k = {})",
            req.n, req.k
        ))),
        Some(l) => Ok(Some(l)),
    }
}

/// Sums complex log-values, applying the cancellation and realness rules.
fn real_sum(terms: &[LogMagnitudeValue]) -> Result<(LogMagnitudeValue, f64, bool)> {
    let (sum, max_log) = LogMagnitudeValue::sum(terms);
    if sum.is_zero() || sum.log_abs() - max_log < CANCELLATION_REL.ln() {
        return Ok((LogMagnitudeValue::zero(), 0.0, true));
    }
    let p = sum.phase();
    if p.im.abs() > IMAG_REL_TOL * p.re.abs() + IMAG_ABS_TOL {
        return Err(Error::ImaginaryResidual {
            residual: p.im.abs(),
            real: p.re.abs(),
        });
    }
    let imag = p.im.abs() / p.re.abs();
    let real = LogMagnitudeValue::from_log(sum.log_abs() + p.re.abs().ln(), p.re.signum());
    Ok((real, imag, false))
}

/// `Γ(ℓ)/(2π) Σ_{z∈Ψ} (-g(z))^{-ℓ} / sqrt((-1)^{c-1} det Hess g(z))`, with
/// the principal square root.
pub fn estimate_critical_points(
    req: &EstimateRequest,
    psi: &[CriticalPointRecord],
) -> Result<Estimate> {
    let Some(ell) = checked_ell(req)? else {
        return Ok(Estimate::zero(Diagnostic::NonIntegralEuler));
    };
    if psi.is_empty() {
        return Err(Error::InvalidArgument("empty critical-point set".into()));
    }
    let sign = if req.c % 2 == 1 { 1.0 } else { -1.0 };
    let mut terms = Vec::with_capacity(psi.len());
    for (index, rec) in psi.iter().enumerate() {
        if !rec.nondegenerate {
            return Err(Error::Degenerate {
                index,
                det_abs: rec.hess_det_g.norm(),
            });
        }
        if rec.x.len() != req.c {
            return Err(Error::DimensionMismatch {
                expected: req.c,
                found: rec.x.len(),
            });
        }
        let base = LogMagnitudeValue::from_complex(-rec.g_of_z).powi(-(ell as i64));
        let root = LogMagnitudeValue::from_complex((rec.hess_det_g * sign).sqrt());
        terms.push(base.div(&root));
    }
    let (sum, imag, cancelled) = real_sum(&terms)?;
    if cancelled {
        return Ok(Estimate::zero(Diagnostic::ParityCancellation));
    }
    let prefactor = ln_factorial(ell - 1) - (2.0 * PI).ln();
    Ok(Estimate {
        value: sum.scale_log(prefactor),
        diagnostic: None,
        imag_residual: imag,
    })
}

/// The same estimate written over real maximizers:
/// `k^{m+(c-1)/2} (k/2-1)^{n-m} sqrt(k/2-1) / (√8 π) · Γ(m-n) · Σ_{x∈Φ} V(x)^n / sqrt((-1)^{c-1} det Hess_S f(x))`.
///
/// `phi` holds one representative per antipodal pair; both members are
/// summed.
pub fn estimate_sphere_maxima(
    req: &EstimateRequest,
    v: &RationalPolynomial,
    phi: &[SphericalMaximizer],
) -> Result<Estimate> {
    let Some(ell) = checked_ell(req)? else {
        return Ok(Estimate::zero(Diagnostic::NonIntegralEuler));
    };
    let m = req.m().expect("ℓ integral implies m integral");
    if phi.is_empty() {
        return Err(Error::InvalidArgument("empty maximizer set".into()));
    }
    if v.nvars() != req.c {
        return Err(Error::DimensionMismatch {
            expected: req.c,
            found: v.nvars(),
        });
    }
    let sign = if req.c % 2 == 1 { 1.0 } else { -1.0 };
    let mut terms = Vec::with_capacity(2 * phi.len());
    for rep in phi {
        for x in [rep.clone(), rep.antipode(req.k)] {
            let value = v.eval_real(&x.x)?;
            let det = hessian_det_sphere(v, &x.x)? * sign;
            let num = LogMagnitudeValue::from_real(value).powi(i64::from(req.n));
            terms.push(num.scale_log(-0.5 * det.ln()));
        }
    }
    let (sum, imag, cancelled) = real_sum(&terms)?;
    if cancelled {
        return Ok(Estimate::zero(Diagnostic::ParityCancellation));
    }
    let k = f64::from(req.k);
    let c = req.c as f64;
    let half_k_minus_1 = k / 2.0 - 1.0;
    let prefactor = (m as f64 + (c - 1.0) / 2.0) * k.ln() - ell as f64 * half_k_minus_1.ln()
        + 0.5 * half_k_minus_1.ln()
        - 0.5 * 8f64.ln()
        - PI.ln()
        + ln_factorial(ell - 1);
    Ok(Estimate {
        value: sum.scale_log(prefactor),
        diagnostic: None,
        imag_residual: imag,
    })
}

/// Estimate from `V` alone: maxima search, lift to Ψ, evaluate.
pub fn estimate_for_potential(
    req: &EstimateRequest,
    v: &RationalPolynomial,
    restarts: usize,
    seed: u64,
) -> Result<Estimate> {
    if req.ell().is_none() {
        return Ok(Estimate::zero(Diagnostic::NonIntegralEuler));
    }
    let maxima = find_maxima(v, restarts, seed)?;
    let psi = build_psi(v, &maxima)?;
    estimate_critical_points(req, &psi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport {
    pub quadrature: f64,
    pub exact: f64,
    /// `|quadrature/exact - 1|`, or `|quadrature| / scale` when exact is zero.
    pub rel_error: f64,
}

const QUAD_ABS_REL: f64 = 1e-10;
const QUAD_SPHERE_REL: f64 = 1e-9;

/// Compares `2^{m+(c-2)/2} Γ(m+c/2) / ((2π)^{c/2} n!) ∫_{S^{c-1}} V^n ω`
/// with `exact`, for `c ≤ 3`.
pub fn quadrature_check(
    req: &EstimateRequest,
    v: &RationalPolynomial,
    exact: &num_rational::BigRational,
) -> Result<QuadratureReport> {
    if v.nvars() != req.c {
        return Err(Error::DimensionMismatch {
            expected: req.c,
            found: v.nvars(),
        });
    }
    let exact_f = exact.to_f64().unwrap_or(f64::NAN);
    let Some(m) = req.m() else {
        return Ok(QuadratureReport {
            quadrature: 0.0,
            exact: exact_f,
            rel_error: if exact_f == 0.0 { 0.0 } else { 1.0 },
        });
    };
    let terms: Vec<(Vec<i32>, f64)> = v
        .terms()
        .map(|(w, c)| {
            (
                w.exps().iter().map(|&e| e as i32).collect(),
                c.to_f64().unwrap_or(f64::NAN),
            )
        })
        .collect();
    let eval = |x: &[f64]| -> f64 {
        terms
            .iter()
            .map(|(w, c)| w.iter().zip(x).fold(*c, |acc, (&e, &xi)| acc * xi.powi(e)))
            .sum()
    };
    let n = req.n as i32;
    let c = req.c;
    let vmax = v.max_abs_coefficient() * (v.len() as f64);
    let (integral, area) = match c {
        1 => (eval(&[1.0]).powi(n) + eval(&[-1.0]).powi(n), 2.0),
        2 => {
            let scale = 2.0 * PI * vmax.powi(n);
            let i = adaptive_gk15(
                |t: f64| eval(&[t.cos(), t.sin()]).powi(n),
                0.0,
                2.0 * PI,
                QUAD_ABS_REL * scale,
                QUAD_ABS_REL,
            )?;
            (i, 2.0 * PI)
        }
        3 => {
            let scale = 4.0 * PI * vmax.powi(n);
            let i = sphere2_integral(|p| eval(&p).powi(n), QUAD_SPHERE_REL, scale)?;
            (i, 4.0 * PI)
        }
        _ => return Err(Error::UnsupportedDimension(c)),
    };
    let cf = c as f64;
    let ln_prefactor = (m as f64 + (cf - 2.0) / 2.0) * 2f64.ln()
        + ln_gamma_half_integer(2 * m + c as u64)
        - cf / 2.0 * (2.0 * PI).ln()
        - ln_factorial(u64::from(req.n));
    let prefactor = ln_prefactor.exp();
    let quadrature = prefactor * integral;
    let rel_error = if exact_f != 0.0 {
        (quadrature / exact_f - 1.0).abs()
    } else {
        (quadrature / (prefactor * area * vmax.powi(n))).abs()
    };
    Ok(QuadratureReport {
        quadrature,
        exact: exact_f,
        rel_error,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: u32,
    /// `None` when `n(k/2-1)` is not an integer.
    pub ell: Option<u64>,
    pub exact: LogMagnitudeValue,
    pub estimate: LogMagnitudeValue,
    pub ratio: f64,
    pub abs_ratio_minus_1: f64,
    pub diagnostic: Option<Diagnostic>,
}

/// Exact A(n) against the leading-order estimate along `n_list`.
pub fn convergence_table(
    spec: &WeightSpec,
    n_list: &[u32],
    restarts: usize,
    seed: u64,
) -> Result<Vec<ConvergenceRow>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "n values must be strictly increasing".into(),
        ));
    }
    let v = spec.potential();
    let k = spec.degree();
    let c = spec.colors();
    let needs_psi = n_list
        .iter()
        .any(|&n| EstimateRequest::new(n, k, c).ell().is_some_and(|l| l > 0));
    let psi = if needs_psi {
        let maxima = find_maxima(&v, restarts, seed)?;
        build_psi(&v, &maxima)?
    } else {
        Vec::new()
    };
    let table = CountTable::series(spec, n_list);
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let req = EstimateRequest::new(n, k, c);
        let exact = LogMagnitudeValue::from_rational(table.get(n).expect("computed above"));
        let est = match req.ell() {
            Some(0) => Estimate {
                value: LogMagnitudeValue::one(),
                diagnostic: None,
                imag_residual: 0.0,
            },
            _ => estimate_critical_points(&req, &psi)?,
        };
        let ratio = exact.ratio(&est.value);
        rows.push(ConvergenceRow {
            n,
            ell: req.ell(),
            exact,
            estimate: est.value,
            ratio,
            abs_ratio_minus_1: (ratio - 1.0).abs(),
            diagnostic: est.diagnostic,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_enum::exact_a_series;
    use crate::multipoly::{build_elementary_symmetric, MultiIndex};
    use crate::sphere_critical::{default_restarts, DEFAULT_SEED};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn single_cubic() -> WeightSpec {
        WeightSpec::unit_weight(1, 3, vec![3]).unwrap()
    }

    #[test]
    fn single_color_estimate_closed_form() {
        let v = single_cubic().potential();
        for n in [2u32, 10, 40] {
            let req = EstimateRequest::new(n, 3, 1);
            let est = estimate_for_potential(&req, &v, 1, DEFAULT_SEED).unwrap();
            let ell = u64::from(n / 2);
            let expect = ln_factorial(ell - 1) - (2.0 * PI).ln() + ell as f64 * 1.5f64.ln();
            assert!((est.value.log_abs() - expect).abs() < 1e-12);
            assert_eq!(est.value.sign(), 1);
            let phi = find_maxima(&v, 1, DEFAULT_SEED).unwrap();
            let prop = estimate_sphere_maxima(&req, &v, &phi).unwrap();
            assert!((prop.value.ratio(&est.value) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_nk_is_zero() {
        let v = single_cubic().potential();
        let est =
            estimate_for_potential(&EstimateRequest::new(3, 3, 1), &v, 1, DEFAULT_SEED).unwrap();
        assert!(est.value.is_zero());
        assert_eq!(est.diagnostic, Some(Diagnostic::NonIntegralEuler));
    }

    #[test]
    fn parity_cancellation_for_e4() {
        let v = build_elementary_symmetric(4, 4).unwrap();
        let maxima = find_maxima(&v, default_restarts(4), DEFAULT_SEED).unwrap();
        let psi = build_psi(&v, &maxima).unwrap();
        let odd = estimate_critical_points(&EstimateRequest::new(5, 4, 4), &psi).unwrap();
        assert!(odd.value.is_zero());
        assert_eq!(odd.diagnostic, Some(Diagnostic::ParityCancellation));
        let even = estimate_critical_points(&EstimateRequest::new(6, 4, 4), &psi).unwrap();
        assert_eq!(even.value.sign(), 1);
    }

    #[test]
    fn scaling_covariance() {
        let base = WeightSpec::from_entries(
            2,
            3,
            [
                (MultiIndex::new(vec![3, 0]), q(1, 1)),
                (MultiIndex::new(vec![2, 1]), q(1, 2)),
                (MultiIndex::new(vec![0, 3]), q(2, 3)),
            ],
        )
        .unwrap();
        let t = q(7, 3);
        let scaled = base.scaled(&t);
        for n in [4u32, 10] {
            let req = EstimateRequest::new(n, 3, 2);
            let a = estimate_for_potential(&req, &base.potential(), 200, DEFAULT_SEED).unwrap();
            let b = estimate_for_potential(&req, &scaled.potential(), 200, DEFAULT_SEED).unwrap();
            let expected = (7.0f64 / 3.0).powi(n as i32);
            assert!((b.value.ratio(&a.value) / expected - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn quadrature_examples() {
        let spec = single_cubic();
        let req = EstimateRequest::new(2, 3, 1);
        let r = quadrature_check(&req, &spec.potential(), &q(5, 24)).unwrap();
        assert!(r.rel_error < 1e-12);

        let two = WeightSpec::from_entries(
            2,
            3,
            [
                (MultiIndex::new(vec![3, 0]), q(1, 1)),
                (MultiIndex::new(vec![0, 3]), q(1, 1)),
            ],
        )
        .unwrap();
        let exact = exact_a_series(2, &two);
        assert_eq!(exact, q(5, 12));
        let r = quadrature_check(&EstimateRequest::new(2, 3, 2), &two.potential(), &exact).unwrap();
        assert!(r.rel_error < 1e-8, "{r:?}");

        let e3 = build_elementary_symmetric(3, 3).unwrap();
        let r = quadrature_check(&EstimateRequest::new(2, 3, 3), &e3, &q(1, 2)).unwrap();
        assert!(r.rel_error < 1e-6, "{r:?}");

        let r = quadrature_check(&EstimateRequest::new(0, 3, 3), &e3, &q(1, 1)).unwrap();
        assert!(r.rel_error < 1e-9, "{r:?}");
        let four = build_elementary_symmetric(4, 3).unwrap();
        assert!(quadrature_check(&EstimateRequest::new(2, 3, 4), &four, &q(1, 1)).is_err());
    }

    #[test]
    fn single_color_convergence_improves() {
        let ns: Vec<u32> = (10..=30).step_by(2).collect();
        let rows = convergence_table(&single_cubic(), &ns, 1, DEFAULT_SEED).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].abs_ratio_minus_1 < w[0].abs_ratio_minus_1);
        }
        assert!(rows.last().unwrap().abs_ratio_minus_1 <= 0.1);
        let odd = convergence_table(&single_cubic(), &[3], 1, DEFAULT_SEED).unwrap();
        assert_eq!(odd[0].ratio, 1.0);
    }
}
