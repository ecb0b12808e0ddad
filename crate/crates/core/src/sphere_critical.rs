//! Global maxima of |V| on the real unit sphere and the critical points of
//! `g = -|x|²/2 + V` lying over them.
//!
//! Maxima are found by multistart Riemannian gradient ascent with
//! backtracking, then polished with projected Newton steps. Each maximizer
//! `x` lifts to `k - 2` critical points `z = τ x` of `g`, one per root of
//! `τ^{2-k} = k V(x)`.

use crate::error::{Error, Result};
use crate::multipoly::{MultiIndex, RationalPolynomial};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub const DEFAULT_SEED: u64 = 42;
pub const TOL_STAT: f64 = 1e-10;
pub const TOL_CRIT: f64 = 1e-9;
pub const TOL_DEGEN: f64 = 1e-8;
/// Angular distance below which two (folded) maximizers are merged.
pub const CLUSTER_ANGLE: f64 = 1e-6;
/// Clusters with |V| >= (1 - GLOBAL_MAX_REL) * max are kept.
pub const GLOBAL_MAX_REL: f64 = 1e-9;

const ASCENT_MAX_ITERS: usize = 5000;
const ASCENT_GRAD_TOL: f64 = 1e-7;
const NEWTON_MAX_ITERS: usize = 60;

pub fn default_restarts(c: usize) -> usize {
    200.max(100 * c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphericalMaximizer {
    pub x: Vec<f64>,
    /// Signed V(x).
    pub value: f64,
    /// Riemannian gradient norm at convergence.
    pub grad_norm: f64,
    /// Set when `x` is the chosen representative of `{x, -x}`.
    pub antipodal_rep: bool,
}

impl SphericalMaximizer {
    pub fn antipode(&self, k: u32) -> SphericalMaximizer {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        SphericalMaximizer {
            x: self.x.iter().map(|v| -v).collect(),
            value: sign * self.value,
            grad_norm: self.grad_norm,
            antipodal_rep: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointRecord {
    pub x: Vec<f64>,
    pub tau: Complex64,
    pub z: Vec<Complex64>,
    pub g_of_z: Complex64,
    pub hess_det_g: Complex64,
    pub hess_det_sphere: f64,
    pub nondegenerate: bool,
    /// max_i |∂g/∂x_i (z)|
    pub grad_residual: f64,
}

/// Polynomial compiled to `f64` coefficients for fast real evaluation.
#[derive(Debug, Clone)]
struct FloatPoly {
    terms: Vec<(Vec<u32>, f64)>,
}

impl FloatPoly {
    fn from_exact(p: &RationalPolynomial) -> Self {
        FloatPoly {
            terms: p
                .terms()
                .map(|(w, c)| (w.exps().to_vec(), c.to_f64().unwrap_or(f64::NAN)))
                .collect(),
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(w, c)| {
                w.iter()
                    .zip(x)
                    .fold(*c, |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }
}

/// V with its gradient and Hessian compiled for real evaluation.
struct RealDerivatives {
    c: usize,
    k: u32,
    v: FloatPoly,
    grad: Vec<FloatPoly>,
    hess: Vec<Vec<FloatPoly>>,
}

impl RealDerivatives {
    fn new(v: &RationalPolynomial, k: u32) -> Self {
        RealDerivatives {
            c: v.nvars(),
            k,
            v: FloatPoly::from_exact(v),
            grad: v.gradient().iter().map(FloatPoly::from_exact).collect(),
            hess: v
                .hessian()
                .iter()
                .map(|row| row.iter().map(FloatPoly::from_exact).collect())
                .collect(),
        }
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.v.eval(x)
    }

    fn gradient(&self, x: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.c, self.grad.iter().map(|p| p.eval(x)))
    }

    fn hessian(&self, x: &[f64]) -> DMatrix<f64> {
        DMatrix::from_fn(self.c, self.c, |i, j| self.hess[i][j].eval(x))
    }

    fn riemannian_gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        let eg = self.gradient(x.as_slice());
        let radial = x.dot(&eg);
        eg - x * radial
    }
}

/// Orthonormal basis of the tangent space at unit `x`, as the rows of a
/// `(c-1) × c` matrix (Householder construction).
pub fn tangent_basis(x: &[f64]) -> DMatrix<f64> {
    let c = x.len();
    let (j, xj) = x
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .expect("nonempty");
    let mut v = DVector::from_column_slice(x);
    v[j] += if xj >= 0.0 { 1.0 } else { -1.0 };
    let vv = v.dot(&v);
    let h = DMatrix::<f64>::identity(c, c) - (&v * v.transpose()) * (2.0 / vv);
    let rows: Vec<_> = (0..c)
        .filter(|&i| i != j)
        .map(|i| h.row(i).into_owned())
        .collect();
    DMatrix::from_rows(&rows)
}

fn normalize(v: DVector<f64>) -> DVector<f64> {
    let n = v.norm();
    v / n
}

fn required_degree(v: &RationalPolynomial) -> Result<u32> {
    match v.homogeneous_degree() {
        Some(k) if k >= 3 => Ok(k),
        Some(k) => Err(Error::InvalidArgument(format!(
            "V must have degree k >= 3, got {k}"
        ))),
        None if v.is_zero() => Err(Error::NoNonzeroValue),
        None => Err(Error::InvalidArgument("V must be homogeneous".into())),
    }
}

/// One multistart run: gradient ascent on `s·V` (s = sign of V at the start),
/// then projected Newton polishing. Returns the polished point if it is a
/// nondegenerate local maximum of |V| within tolerance.
fn ascend(d: &RealDerivatives, start: DVector<f64>) -> Option<(DVector<f64>, f64)> {
    let mut x = normalize(start);
    let s = if d.value(x.as_slice()) < 0.0 {
        -1.0
    } else {
        1.0
    };
    let h = |p: &DVector<f64>| s * d.value(p.as_slice());

    let mut step = 1.0;
    for _ in 0..ASCENT_MAX_ITERS {
        let rg = d.riemannian_gradient(&x) * s;
        let gn2 = rg.norm_squared();
        if gn2.sqrt() < ASCENT_GRAD_TOL {
            break;
        }
        let hx = h(&x);
        let mut accepted = false;
        while step > 1e-14 {
            let cand = normalize(&x + &rg * step);
            if h(&cand) >= hx + 1e-4 * step * gn2 {
                x = cand;
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }

    // projected Newton polish
    let tol = TOL_STAT * 1f64.max(f64::from(d.k) * d.value(x.as_slice()).abs());
    let mut gnorm = d.riemannian_gradient(&x).norm();
    for _ in 0..NEWTON_MAX_ITERS {
        if gnorm <= 0.25 * tol {
            break;
        }
        let p = tangent_basis(x.as_slice());
        let eg = d.gradient(x.as_slice()) * s;
        let radial = x.dot(&eg);
        let hr = &p * (d.hessian(x.as_slice()) * s) * p.transpose()
            - DMatrix::<f64>::identity(d.c - 1, d.c - 1) * radial;
        let rhs = -(&p * &eg);
        let Some(xi) = hr.lu().solve(&rhs) else {
            break;
        };
        let cand = normalize(&x + p.transpose() * xi);
        let cand_norm = d.riemannian_gradient(&cand).norm();
        if !(cand_norm < gnorm) {
            break;
        }
        x = cand;
        gnorm = cand_norm;
    }
    if gnorm > tol {
        return None;
    }
    // reject saddles and minima of |V|
    let p = tangent_basis(x.as_slice());
    let eg = d.gradient(x.as_slice()) * s;
    let hr = &p * (d.hessian(x.as_slice()) * s) * p.transpose()
        - DMatrix::<f64>::identity(d.c - 1, d.c - 1) * x.dot(&eg);
    let max_eig = hr
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    (max_eig < 0.0).then_some((x, gnorm))
}

/// Of `{x, -x}`, the lexicographically larger one: the first coordinate that
/// is not numerically zero is made positive.
fn fold_antipode(x: DVector<f64>) -> DVector<f64> {
    match x.iter().find(|v| v.abs() > 1e-9) {
        Some(&v) if v < 0.0 => -x,
        _ => x,
    }
}

fn angle_between(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    2.0 * ((a - b).norm() / 2.0).min(1.0).asin()
}

/// Global maxima of |V| on `S^{c-1}`, one representative per antipodal pair,
/// ordered lexicographically (largest first).
pub fn find_maxima(
    v: &RationalPolynomial,
    restarts: usize,
    seed: u64,
) -> Result<Vec<SphericalMaximizer>> {
    let k = required_degree(v)?;
    let c = v.nvars();
    if c == 1 {
        let value = v.eval_real(&[1.0])?;
        if value == 0.0 {
            return Err(Error::NoNonzeroValue);
        }
        return Ok(vec![SphericalMaximizer {
            x: vec![1.0],
            value,
            grad_norm: 0.0,
            antipodal_rep: true,
        }]);
    }
    let d = RealDerivatives::new(v, k);
    let mut found: Vec<(DVector<f64>, f64, f64)> = Vec::new();
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let start = DVector::from_fn(c, |_, _| StandardNormal.sample(&mut rng));
        let Some((x, gnorm)) = ascend(&d, start) else {
            continue;
        };
        let x = fold_antipode(x);
        if found
            .iter()
            .any(|(y, _, _)| angle_between(&x, y) <= CLUSTER_ANGLE)
        {
            continue;
        }
        let value = d.value(x.as_slice());
        found.push((x, value, gnorm));
    }
    if found.is_empty() {
        return Err(Error::NonConvergence { restarts });
    }
    let best = found.iter().map(|(_, v, _)| v.abs()).fold(0.0, f64::max);
    if best == 0.0 {
        return Err(Error::NoNonzeroValue);
    }
    let mut kept: Vec<SphericalMaximizer> = found
        .into_iter()
        .filter(|(_, v, _)| v.abs() >= (1.0 - GLOBAL_MAX_REL) * best)
        .map(|(x, value, grad_norm)| SphericalMaximizer {
            x: x.as_slice().to_vec(),
            value,
            grad_norm,
            antipodal_rep: true,
        })
        .collect();
    // lexicographic, largest first; coordinates within 1e-9 compare equal
    kept.sort_by(|a, b| {
        b.x.iter()
            .zip(&a.x)
            .find(|(p, q)| (*p - *q).abs() > 1e-9)
            .map_or(std::cmp::Ordering::Equal, |(p, q)| p.total_cmp(q))
    });
    Ok(kept)
}

/// `e^{iπ p/q}`, exact on multiples of π/2.
fn unit_phase(p: i64, q: i64) -> Complex64 {
    let p = p.rem_euclid(2 * q);
    if (2 * p) % q == 0 {
        return match 2 * p / q {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, std::f64::consts::PI * p as f64 / q as f64)
}

/// All `k - 2` roots of `τ^{k-2} = 1 / (k V(x))`: the principal root times
/// `e^{2πij/(k-2)}`, `j = 0, ..., k-3`.
pub fn tau_roots(value: f64, k: u32) -> Result<Vec<Complex64>> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("need k >= 3, got {k}")));
    }
    if value == 0.0 {
        return Err(Error::ZeroValue);
    }
    let q = i64::from(k - 2);
    let target = 1.0 / (f64::from(k) * value);
    let modulus = target.abs().powf(1.0 / q as f64);
    let base = i64::from(target < 0.0);
    Ok((0..q)
        .map(|j| unit_phase(base + 2 * j, q) * modulus)
        .collect())
}

fn quadratic_part(c: usize) -> RationalPolynomial {
    let half = BigRational::new((-1).into(), 2.into());
    RationalPolynomial::from_terms(
        c,
        (0..c).map(|i| {
            let mut e = vec![0; c];
            e[i] = 2;
            (MultiIndex::new(e), half.clone())
        }),
    )
    .expect("consistent dimensions")
}

/// `g = -|x|²/2 + V`.
pub fn potential_g(v: &RationalPolynomial) -> RationalPolynomial {
    v.add(&quadratic_part(v.nvars())).expect("same dimensions")
}

fn complex_hessian(hess: &[Vec<RationalPolynomial>], z: &[Complex64]) -> DMatrix<Complex64> {
    let c = z.len();
    DMatrix::from_fn(c, c, |i, j| hess[i][j].eval(z).expect("dimensions checked"))
}

/// det Hess g(z) by LU with partial pivoting.
pub fn hessian_det_g(v: &RationalPolynomial, z: &[Complex64]) -> Result<Complex64> {
    if z.len() != v.nvars() {
        return Err(Error::DimensionMismatch {
            expected: v.nvars(),
            found: z.len(),
        });
    }
    let hess = potential_g(v).hessian();
    Ok(complex_hessian(&hess, z).lu().determinant())
}

/// Spherical Hessian of `log(V / V(x))` at `x` in an orthonormal tangent
/// frame: `P Hess V(x) Pᵀ / V(x) - k I`.
pub fn spherical_hessian(v: &RationalPolynomial, x: &[f64]) -> Result<DMatrix<f64>> {
    let k = required_degree(v)?;
    let c = v.nvars();
    if x.len() != c {
        return Err(Error::DimensionMismatch {
            expected: c,
            found: x.len(),
        });
    }
    let value = v.eval_real(x)?;
    if value == 0.0 {
        return Err(Error::ZeroValue);
    }
    if c == 1 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let d = RealDerivatives::new(v, k);
    let p = tangent_basis(x);
    Ok(&p * d.hessian(x) * p.transpose() / value
        - DMatrix::<f64>::identity(c - 1, c - 1) * f64::from(k))
}

/// det of the spherical Hessian; fails unless it is negative definite.
pub fn hessian_det_sphere(v: &RationalPolynomial, x: &[f64]) -> Result<f64> {
    let m = spherical_hessian(v, x)?;
    if m.nrows() == 0 {
        return Ok(1.0);
    }
    let eig = m.symmetric_eigen().eigenvalues;
    if let Some(&bad) = eig.iter().find(|&&e| e >= 0.0) {
        return Err(Error::PositiveEigenvalue { eigenvalue: bad });
    }
    Ok(eig.iter().product())
}

/// Lifts each representative maximizer to its `k - 2` critical points of `g`.
pub fn build_psi(
    v: &RationalPolynomial,
    maxima: &[SphericalMaximizer],
) -> Result<Vec<CriticalPointRecord>> {
    let k = required_degree(v)?;
    if maxima.is_empty() {
        return Err(Error::InvalidArgument("no maximizers supplied".into()));
    }
    let g = potential_g(v);
    let grad = g.gradient();
    let hess = g.hessian();
    let mut records = Vec::new();
    for m in maxima {
        let value = v.eval_real(&m.x)?;
        let det_sphere = hessian_det_sphere(v, &m.x)?;
        for tau in tau_roots(value, k)? {
            let z: Vec<Complex64> = m.x.iter().map(|&xi| tau * xi).collect();
            let residual = grad
                .iter()
                .map(|p| p.eval(&z).expect("dimensions").norm())
                .fold(0.0, f64::max);
            let znorm = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let tolerance = TOL_CRIT * 1f64.max(znorm);
            if residual > tolerance {
                return Err(Error::ResidualCheck {
                    index: records.len(),
                    residual,
                    tolerance,
                });
            }
            let det = complex_hessian(&hess, &z).lu().determinant();
            records.push(CriticalPointRecord {
                x: m.x.clone(),
                tau,
                g_of_z: g.eval(&z)?,
                z,
                hess_det_g: det,
                hess_det_sphere: det_sphere,
                nondegenerate: det.norm() > TOL_DEGEN,
                grad_residual: residual,
            });
        }
    }
    Ok(records)
}

/// `‖Hess g(z) z - (k-2) z‖ / ‖z‖`.
pub fn radial_residual(v: &RationalPolynomial, z: &[Complex64]) -> Result<f64> {
    let k = required_degree(v)?;
    let hess = potential_g(v).hessian();
    let h = complex_hessian(&hess, z);
    let zv = DVector::from_column_slice(z);
    let lhs = &h * &zv;
    let rhs = &zv * Complex64::new(f64::from(k) - 2.0, 0.0);
    Ok((lhs - rhs).norm() / zv.norm())
}

/// Relative gap in `det Hess_S f(x) = k^{c-1}/(k-2) · det Hess g(z)`.
pub fn hessian_identity_gap(record: &CriticalPointRecord, k: u32) -> f64 {
    let c = record.x.len() as i32;
    let scale = f64::from(k).powi(c - 1) / (f64::from(k) - 2.0);
    let rhs = record.hess_det_g * scale;
    (Complex64::new(record.hess_det_sphere, 0.0) - rhs).norm() / record.hess_det_sphere.abs()
}

/// `max_i |x_i| - min_i |x_i|`.
pub fn coordinate_spread(x: &[f64]) -> f64 {
    let abs = x.iter().map(|v| v.abs());
    abs.clone().fold(f64::NEG_INFINITY, f64::max) - abs.fold(f64::INFINITY, f64::min)
}

/// Residual `|τ^{2-k} - kV(x)| / |kV(x)|`.
pub fn tau_residual(tau: Complex64, value: f64, k: u32) -> f64 {
    let kv = f64::from(k) * value;
    (tau.powi(2 - k as i32) - kv).norm() / kv.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::build_elementary_symmetric;
    use crate::weights::WeightSpec;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ek_maximizer_counts() {
        for (k, c, reps) in [
            (3u32, 3usize, 4usize),
            (3, 4, 1),
            (4, 4, 8),
            (3, 5, 1),
            (4, 5, 1),
        ] {
            let v = build_elementary_symmetric(c, k).unwrap();
            let max = find_maxima(&v, default_restarts(c), DEFAULT_SEED).unwrap();
            assert_eq!(max.len(), reps, "k={k} c={c}");
            let s = (c as f64).powf(-0.5);
            for m in &max {
                assert!(coordinate_spread(&m.x) < 1e-8);
                assert!((m.x[0] - s).abs() < 1e-8);
                assert!(m.grad_norm <= TOL_STAT);
                let norm: f64 = m.x.iter().map(|v| v * v).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn single_color_special_case() {
        let v = WeightSpec::unit_weight(1, 3, vec![3]).unwrap().potential();
        let m = find_maxima(&v, 10, 1).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].x, vec![1.0]);
        assert!((m[0].value - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let v = RationalPolynomial::zero(2);
        assert_eq!(find_maxima(&v, 10, 1).unwrap_err(), Error::NoNonzeroValue);
    }

    #[test]
    fn tau_root_examples() {
        let r = tau_roots(1.0 / 6.0, 3).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - Complex64::new(2.0, 0.0)).norm() < 1e-15);

        let r = tau_roots(0.3, 4).unwrap();
        let expect = (4.0f64 * 0.3).powf(-0.5);
        assert!((r[0].re - expect).abs() < 1e-15 && r[0].im == 0.0);
        assert!((r[1].re + expect).abs() < 1e-15 && r[1].im == 0.0);

        let r = tau_roots(-0.2, 5).unwrap();
        assert_eq!(r.len(), 3);
        for t in &r {
            assert!(tau_residual(*t, -0.2, 5) < 1e-10);
            assert!(!(t.im == 0.0 && t.re > 0.0));
        }
        assert_eq!(tau_roots(0.0, 3).unwrap_err(), Error::ZeroValue);
    }

    #[test]
    fn psi_single_color() {
        let v = WeightSpec::unit_weight(1, 3, vec![3]).unwrap().potential();
        let m = find_maxima(&v, 10, 1).unwrap();
        let psi = build_psi(&v, &m).unwrap();
        assert_eq!(psi.len(), 1);
        let r = &psi[0];
        assert!((r.tau - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert!((r.g_of_z - Complex64::new(-2.0 / 3.0, 0.0)).norm() < 1e-14);
        // g'' = -1 + z = 1
        assert!((r.hess_det_g - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(r.hess_det_sphere, 1.0);
    }

    #[test]
    fn psi_three_colors_sign_patterns() {
        let v = build_elementary_symmetric(3, 3).unwrap();
        let m = find_maxima(&v, default_restarts(3), DEFAULT_SEED).unwrap();
        let psi = build_psi(&v, &m).unwrap();
        assert_eq!(psi.len(), 4);
        for r in &psi {
            // g(z) = -1/2 for every sign pattern, det = 4
            assert!((r.g_of_z - Complex64::new(-0.5, 0.0)).norm() < 1e-12);
            assert!((r.hess_det_g - Complex64::new(4.0, 0.0)).norm() < 1e-10);
            assert!(hessian_identity_gap(r, 3) < 1e-8);
            assert!(radial_residual(&v, &r.z).unwrap() < 1e-8);
        }
    }

    #[test]
    fn scaling_moves_tau_only() {
        let v = build_elementary_symmetric(3, 3).unwrap();
        let m = find_maxima(&v, default_restarts(3), DEFAULT_SEED).unwrap();
        let base = build_psi(&v, &m).unwrap();
        let t: f64 = 8.0;
        let scaled = v.scale(&q(8, 1));
        let ms = find_maxima(&scaled, default_restarts(3), DEFAULT_SEED).unwrap();
        let psi = build_psi(&scaled, &ms).unwrap();
        assert_eq!(psi.len(), base.len());
        let factor = t.powf(1.0 / (2.0 - 3.0));
        for (a, b) in base.iter().zip(&psi) {
            assert!(
                (b.tau - a.tau * factor).norm() < 1e-12,
                "{} {}",
                b.tau,
                a.tau * factor
            );
        }
    }

    #[test]
    fn two_color_closed_form_lagrange() {
        // V = x1² x2 (Λ_(2,1) = 2): maximizer (√(2/3), ±1/√3), spherical
        // Hessian of log(cos²t sin t) is -6, det Hess g = -2.
        let v = WeightSpec::from_entries(2, 3, [(MultiIndex::new(vec![2, 1]), q(2, 1))])
            .unwrap()
            .potential();
        let m = find_maxima(&v, 200, DEFAULT_SEED).unwrap();
        assert_eq!(m.len(), 2);
        let psi = build_psi(&v, &m).unwrap();
        for r in &psi {
            assert!((r.x[0] - (2.0f64 / 3.0).sqrt()).abs() < 1e-9);
            assert!((r.x[1].abs() - 3f64.powf(-0.5)).abs() < 1e-9);
            assert!((r.hess_det_sphere + 6.0).abs() < 1e-8);
            assert!((r.hess_det_g - Complex64::new(-2.0, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn sphere_hessian_rejects_non_maximum() {
        let v = build_elementary_symmetric(3, 3).unwrap();
        // close to the zero set of V the spherical Hessian is indefinite
        let eps = 1e-3;
        let n = (1.0f64 + 2.0 * eps * eps).sqrt();
        let x = [1.0 / n, eps / n, eps / n];
        assert!(matches!(
            hessian_det_sphere(&v, &x).unwrap_err(),
            Error::PositiveEigenvalue { .. }
        ));
        assert_eq!(
            hessian_det_sphere(&v, &[1.0, 0.0, 0.0]).unwrap_err(),
            Error::ZeroValue
        );
    }

    #[test]
    fn determinism() {
        let v = build_elementary_symmetric(4, 4).unwrap();
        let a = find_maxima(&v, 300, 7).unwrap();
        let b = find_maxima(&v, 300, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tangent_basis_orthonormal() {
        let x = [0.6, -0.8, 0.0];
        let p = tangent_basis(&x);
        let pp = &p * p.transpose();
        assert!((pp - DMatrix::<f64>::identity(2, 2)).norm() < 1e-14);
        let px = &p * DVector::from_column_slice(&x);
        assert!(px.norm() < 1e-14);
    }
}
