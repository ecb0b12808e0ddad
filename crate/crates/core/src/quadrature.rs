//! One-dimensional quadrature rules used to integrate over circles and
//! 2-spheres.

use crate::error::{Error, Result};
use std::f64::consts::PI;

// 15-point Kronrod abscissae on [0, 1] (symmetric), with weights; the
// embedded 7-point Gauss rule uses the odd-indexed abscissae.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Kronrod estimate and |Kronrod - Gauss| on `[a, b]`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Globally adaptive Gauss–Kronrod integration: the interval with the
/// largest error estimate is bisected until the summed error is below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn adaptive_gk15<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    const MAX_INTERVALS: usize = 2000;
    let (v, e) = gk15(&f, a, b);
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let total: f64 = pieces.iter().map(|p| p.2).sum();
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureNonConvergence(format!(
                "error estimate {err:e} after {MAX_INTERVALS} subintervals"
            )));
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (lo, hi, _, _) = pieces.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// ∫ over S² of `f` in spherical angles: Gauss–Legendre in θ ∈ [0, π] with
/// the `sin θ` Jacobian, trapezoid in φ. `n` θ-nodes and `2n` φ-nodes.
pub fn sphere2_product_rule<F: Fn([f64; 3]) -> f64>(f: &F, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let m = 2 * n;
    let dphi = 2.0 * PI / m as f64;
    let mut total = 0.0;
    for (t, w) in nodes.iter().zip(&weights) {
        let theta = 0.5 * PI * (t + 1.0);
        let (st, ct) = theta.sin_cos();
        let mut ring = 0.0;
        for j in 0..m {
            let (sp, cp) = (j as f64 * dphi).sin_cos();
            ring += f([st * cp, st * sp, ct]);
        }
        total += w * 0.5 * PI * st * ring * dphi;
    }
    total
}

/// Doubles the θ-resolution until successive results agree to `rel_tol`.
pub fn sphere2_integral<F: Fn([f64; 3]) -> f64>(f: F, rel_tol: f64, scale: f64) -> Result<f64> {
    let mut n = 8;
    let mut prev = sphere2_product_rule(&f, n);
    while n <= 512 {
        n *= 2;
        let cur = sphere2_product_rule(&f, n);
        if (cur - prev).abs() <= rel_tol * cur.abs().max(scale) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureNonConvergence(format!(
        "sphere product rule unstable at {n} θ-nodes"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_weights_are_consistent() {
        let kron: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        let gauss: f64 = 2.0 * WG[..3].iter().sum::<f64>() + WG[3];
        assert!((kron - 2.0).abs() < 1e-15);
        assert!((gauss - 2.0).abs() < 1e-15);
        // Kronrod is exact through degree 23, Gauss through 13
        for deg in [2i32, 10, 14, 22] {
            let (v, _) = gk15(&|x: f64| x.powi(deg), -1.0, 1.0);
            let exact = 2.0 / f64::from(deg + 1);
            assert!((v - exact).abs() < 1e-14, "degree {deg}");
        }
        let (_, e) = gk15(&|x: f64| x.powi(12), -1.0, 1.0);
        assert!(e < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let v = adaptive_gk15(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12, 1e-12).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((v / exact - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gauss_legendre_exactness() {
        let (x, w) = gauss_legendre(5);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m8: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((m8 - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn sphere_area_and_moments() {
        let area = sphere2_integral(|_| 1.0, 1e-12, 1.0).unwrap();
        assert!((area - 4.0 * PI).abs() < 1e-12);
        // ∫ x² y² z² dω = 4π/105
        let m = sphere2_integral(|p| (p[0] * p[1] * p[2]).powi(2), 1e-12, 1.0).unwrap();
        assert!((m - 4.0 * PI / 105.0).abs() < 1e-14);
    }
}
