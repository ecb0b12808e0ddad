//! Proper c-edge-colorings of k-regular multigraphs: the potential is the
//! elementary symmetric polynomial `e_k`, whose critical data is known in
//! closed form.

use crate::asymptotics::{estimate_for_potential, EstimateRequest};
use crate::bignum::{binomial, factorial, ln_biguint, ln_factorial, rational_from_biguint};
use crate::error::{Error, Result};
use crate::exact_enum::{exact_a_series, CountTable};
use crate::logval::LogMagnitudeValue;
use crate::multipoly::build_elementary_symmetric;
use crate::sphere_critical::{tau_roots, CriticalPointRecord};
use crate::weights::WeightSpec;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::{LN_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringMode {
    Exact,
    ClosedForm,
    ViaCriticalPoints,
    BruteForce,
}

impl ColoringMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ColoringMode::Exact => "exact",
            ColoringMode::ClosedForm => "closed_form",
            ColoringMode::ViaCriticalPoints => "via_critical_points",
            ColoringMode::BruteForce => "brute_force",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringRequest {
    pub n: u32,
    pub k: u32,
    pub c: usize,
    pub mode: ColoringMode,
}

impl ColoringRequest {
    pub fn new(n: u32, k: u32, c: usize, mode: ColoringMode) -> Self {
        ColoringRequest { n, k, c, mode }
    }

    fn estimate_request(&self) -> EstimateRequest {
        EstimateRequest::new(self.n, self.k, self.c)
    }

    fn validate(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::InvalidArgument(format!(
                "need k >= 3, got {}",
                self.k
            )));
        }
        if self.c == 0 {
            return Err(Error::InvalidArgument("need at least one color".into()));
        }
        Ok(())
    }
}

/// A coloring count: exact when enumerated, log-magnitude when asymptotic.
#[derive(Debug, Clone, PartialEq)]
pub enum ColoringValue {
    Exact(BigRational),
    Approx(LogMagnitudeValue),
}

impl ColoringValue {
    pub fn to_log(&self) -> LogMagnitudeValue {
        match self {
            ColoringValue::Exact(r) => LogMagnitudeValue::from_rational(r),
            ColoringValue::Approx(v) => *v,
        }
    }
}

/// Exact `P_k^c(n)`; zero when `k > c` and `n > 0`.
pub fn exact_p(req: &ColoringRequest) -> Result<BigRational> {
    req.validate()?;
    if req.k as usize > req.c {
        return Ok(if req.n == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        });
    }
    let spec = WeightSpec::elementary_symmetric(req.c, req.k)?;
    Ok(exact_a_series(req.n, &spec))
}

/// Exact `P_k^c(n)` for every `n` in `ns`, sharing powers of `e_k`.
pub fn exact_p_table(k: u32, c: usize, ns: &[u32]) -> Result<CountTable> {
    ColoringRequest::new(0, k, c, ColoringMode::Exact).validate()?;
    if k as usize > c {
        let mut table = CountTable::default();
        for &n in ns {
            let value = if n == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            table.insert(n, value, crate::exact_enum::Provenance::Series);
        }
        return Ok(table);
    }
    let spec = WeightSpec::elementary_symmetric(c, k)?;
    Ok(CountTable::series(&spec, ns))
}

/// Integral `ℓ = n(k/2-1)` for a positive request, `None` otherwise.
fn positive_ell(req: &ColoringRequest) -> Result<Option<u64>> {
    req.validate()?;
    if req.n == 0 {
        return Err(Error::InvalidArgument("closed forms need n >= 1".into()));
    }
    Ok(req.estimate_request().ell().filter(|&l| l > 0))
}

/// `(k-1)/(c-1)`, the common off-diagonal Hessian entry at the maximizer.
fn g_tilde(k: u32, c: usize) -> f64 {
    (f64::from(k) - 1.0) / (c as f64 - 1.0)
}

/// Closed-form leading asymptotics of `P_k^c(n)`:
/// `c = k`, n even: `Γ(ℓ) 2^{k/2} / (2π) · (2/(k-2))^{ℓ-1/2}`;
/// `c > k`: `Γ(ℓ) √(k-2) / (2π) · ((k-1)/(c-1)+1)^{(1-c)/2} (k C(c,k))^n c^{-nk/2} (2k/(k-2))^ℓ`;
/// zero otherwise.
pub fn closed_form_p(req: &ColoringRequest) -> Result<LogMagnitudeValue> {
    let Some(ell) = positive_ell(req)? else {
        return Ok(LogMagnitudeValue::zero());
    };
    let (n, k, c) = (f64::from(req.n), f64::from(req.k), req.c as f64);
    let base = ln_factorial(ell - 1) - (2.0 * PI).ln();
    let ell = ell as f64;
    let log = if req.c == req.k as usize {
        if req.n % 2 == 1 {
            return Ok(LogMagnitudeValue::zero());
        }
        base + k / 2.0 * LN_2 + (ell - 0.5) * (2.0 / (k - 2.0)).ln()
    } else if req.c > req.k as usize {
        let choose = ln_biguint(&binomial(req.c as u64, u64::from(req.k)));
        base + 0.5 * (k - 2.0).ln()
            + (1.0 - c) / 2.0 * (g_tilde(req.k, req.c) + 1.0).ln()
            + n * (k.ln() + choose)
            - n * k / 2.0 * c.ln()
            + ell * (2.0 * k / (k - 2.0)).ln()
    } else {
        return Ok(LogMagnitudeValue::zero());
    };
    Ok(LogMagnitudeValue::from_log(log, 1.0))
}

/// Analytic Ψ for `V = e_k`, in the same order and normalization as the
/// numerical pipeline: one representative per antipodal pair with its first
/// coordinate positive, then every root `τ`.
pub fn critical_data_ek(k: u32, c: usize) -> Result<Vec<CriticalPointRecord>> {
    if k < 3 || k as usize > c {
        return Err(Error::InvalidArgument(format!(
            "closed-form critical data needs 3 <= k <= c, got k = {k}, c = {c}"
        )));
    }
    let kf = f64::from(k);
    let scale = (c as f64).powf(-0.5);
    let (patterns, det_g, det_sphere): (Vec<Vec<f64>>, f64, f64) = if c == k as usize {
        // sign patterns with a positive first entry, lexicographically largest first
        let patterns = (0..1u32 << (c - 1))
            .map(|bits| {
                (0..c)
                    .map(|i| {
                        if i > 0 && bits >> (c - 1 - i) & 1 == 1 {
                            -scale
                        } else {
                            scale
                        }
                    })
                    .collect()
            })
            .collect();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let det_g = sign * 2f64.powi(k as i32 - 1) * (kf - 2.0);
        let det_sphere = kf.powi(k as i32 - 1) * sign * 2f64.powi(k as i32 - 1);
        (patterns, det_g, det_sphere)
    } else {
        let gt = g_tilde(k, c);
        let sign = if c % 2 == 1 { 1.0 } else { -1.0 };
        let det_g = sign * (gt + 1.0).powi(c as i32 - 1) * (gt * (c as f64 - 1.0) - 1.0);
        let det_sphere = kf.powi(c as i32 - 1) * sign * (gt + 1.0).powi(c as i32 - 1);
        (vec![vec![scale; c]], det_g, det_sphere)
    };
    let choose = binomial(c as u64, u64::from(k))
        .to_f64()
        .expect("small binomial");
    let mut records = Vec::new();
    for x in patterns {
        let sigma: f64 = x.iter().map(|v| v.signum()).product();
        let value = sigma * choose * (c as f64).powf(-kf / 2.0);
        for tau in tau_roots(value, k)? {
            let z: Vec<Complex64> = x.iter().map(|&xi| tau * xi).collect();
            records.push(CriticalPointRecord {
                x: x.clone(),
                tau,
                z,
                g_of_z: tau * tau * ((2.0 - kf) / (2.0 * kf)),
                hess_det_g: Complex64::new(det_g, 0.0),
                hess_det_sphere: det_sphere,
                nondegenerate: true,
                grad_residual: 0.0,
            });
        }
    }
    Ok(records)
}

/// Numerical estimate of `P_k^c(n)` from the maxima search on `e_k`.
pub fn via_critical_points(
    req: &ColoringRequest,
    restarts: usize,
    seed: u64,
) -> Result<LogMagnitudeValue> {
    if positive_ell(req)?.is_none() || req.k as usize > req.c {
        return Ok(LogMagnitudeValue::zero());
    }
    let v = build_elementary_symmetric(req.c, req.k)?;
    Ok(estimate_for_potential(&req.estimate_request(), &v, restarts, seed)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleCaps {
    pub max_n: u32,
    pub max_c: usize,
}

impl Default for TupleCaps {
    fn default() -> Self {
        TupleCaps { max_n: 4, max_c: 4 }
    }
}

/// Number of tuples `(M^(1), …, M^(c))` of symmetric zero-diagonal
/// `{0,1}`-matrices whose rows sum to at most 1 in each color and to exactly
/// `k` in total: the vertex-labeled properly c-edge-colored k-regular
/// multigraphs on `n` vertices.
pub fn brute_force_tuples(n: u32, k: u32, c: usize, caps: TupleCaps) -> Result<BigUint> {
    if n > caps.max_n {
        return Err(Error::CapExceeded {
            what: "vertices",
            value: u64::from(n),
            cap: u64::from(caps.max_n),
        });
    }
    if c > caps.max_c {
        return Err(Error::CapExceeded {
            what: "colors",
            value: c as u64,
            cap: caps.max_c as u64,
        });
    }
    let n = n as usize;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut used = vec![0u32; n];
    let count = tuple_search(&pairs, 0, &mut used, k, c as u32);
    Ok(BigUint::from(count))
}

/// Assigns a color subset to each pair in turn; a vertex is complete when
/// its last pair has been assigned.
fn tuple_search(pairs: &[(usize, usize)], idx: usize, used: &mut [u32], k: u32, c: u32) -> u64 {
    let Some(&(i, j)) = pairs.get(idx) else {
        return u64::from(used.iter().all(|u| u.count_ones() == k));
    };
    let mut total = 0;
    for mask in 0..1u32 << c {
        if used[i] & mask != 0 || used[j] & mask != 0 {
            continue;
        }
        if (used[i] | mask).count_ones() > k || (used[j] | mask).count_ones() > k {
            continue;
        }
        used[i] |= mask;
        used[j] |= mask;
        // vertex i sees its last pair when j is the final vertex
        let n = used.len();
        let closed = j == n - 1 && used[i].count_ones() != k;
        if !closed {
            total += tuple_search(pairs, idx + 1, used, k, c);
        }
        used[i] &= !mask;
        used[j] &= !mask;
    }
    total
}

/// Asymptotic number of k-regular vertex-labeled loopless multigraphs,
/// `(kn/e)^{kn/2} √2 exp((k²-4k+3)/4) / (k!)^n`; zero when `kn` is odd.
pub fn bender_canfield_count(n: u32, k: u32) -> Result<LogMagnitudeValue> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("need k >= 3, got {k}")));
    }
    let nk = u64::from(n) * u64::from(k);
    if nk % 2 == 1 || n == 0 {
        return Ok(LogMagnitudeValue::zero());
    }
    let kf = f64::from(k);
    let half = nk as f64 / 2.0;
    let log = half * ((nk as f64).ln() - 1.0) + 0.5 * LN_2 + (kf * kf - 4.0 * kf + 3.0) / 4.0
        - f64::from(n) * ln_factorial(u64::from(k));
    Ok(LogMagnitudeValue::from_log(log, 1.0))
}

/// Closed-form expected number of proper c-edge-colorings of a uniform
/// random k-regular vertex-labeled multigraph:
/// `c = k`, n even: `2^{(k-1)/2} (k!/√k^k)^n exp(-(k²-4k+3)/4)`;
/// `c > k`: `((k-1)/(c-1)+1)^{(1-c)/2} (k! C(c,k))^n c^{-nk/2} exp(-(k²-4k+3)/4)`;
/// zero otherwise.
pub fn closed_form_e(req: &ColoringRequest) -> Result<LogMagnitudeValue> {
    if positive_ell(req)?.is_none() {
        return Ok(LogMagnitudeValue::zero());
    }
    let (n, k, c) = (f64::from(req.n), f64::from(req.k), req.c as f64);
    let tail = -(k * k - 4.0 * k + 3.0) / 4.0;
    let ln_kfact = ln_factorial(u64::from(req.k));
    let log = if req.c == req.k as usize {
        if req.n % 2 == 1 {
            return Ok(LogMagnitudeValue::zero());
        }
        (k - 1.0) / 2.0 * LN_2 + n * (ln_kfact - k / 2.0 * k.ln()) + tail
    } else if req.c > req.k as usize {
        let choose = ln_biguint(&binomial(req.c as u64, u64::from(req.k)));
        (1.0 - c) / 2.0 * (g_tilde(req.k, req.c) + 1.0).ln() + n * (ln_kfact + choose)
            - n * k / 2.0 * c.ln()
            + tail
    } else {
        return Ok(LogMagnitudeValue::zero());
    };
    Ok(LogMagnitudeValue::from_log(log, 1.0))
}

/// `n! P_k^c(n)` divided by the asymptotic multigraph count.
pub fn empirical_e_from_exact(n: u32, k: u32, p: &BigRational) -> Result<LogMagnitudeValue> {
    let labeled =
        LogMagnitudeValue::from_rational(&(p * rational_from_biguint(factorial(u64::from(n)))));
    if labeled.is_zero() {
        return Ok(LogMagnitudeValue::zero());
    }
    let bc = bender_canfield_count(n, k)?;
    if bc.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "no k-regular multigraphs with n = {n}, k = {k}"
        )));
    }
    Ok(labeled.div(&bc))
}

pub fn empirical_e(req: &ColoringRequest) -> Result<LogMagnitudeValue> {
    let p = exact_p(req)?;
    empirical_e_from_exact(req.n, req.k, &p)
}

/// Dispatches on `req.mode`.
pub fn coloring_count(
    req: &ColoringRequest,
    restarts: usize,
    seed: u64,
    caps: TupleCaps,
) -> Result<ColoringValue> {
    match req.mode {
        ColoringMode::Exact => exact_p(req).map(ColoringValue::Exact),
        ColoringMode::ClosedForm => closed_form_p(req).map(ColoringValue::Approx),
        ColoringMode::ViaCriticalPoints => {
            via_critical_points(req, restarts, seed).map(ColoringValue::Approx)
        }
        ColoringMode::BruteForce => {
            req.validate()?;
            let tuples = brute_force_tuples(req.n, req.k, req.c, caps)?;
            let p =
                rational_from_biguint(tuples) / rational_from_biguint(factorial(u64::from(req.n)));
            Ok(ColoringValue::Exact(p))
        }
    }
}
