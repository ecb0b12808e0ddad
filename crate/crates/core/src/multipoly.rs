//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, ordered graded
//! lexicographically, so iteration and printing are reproducible. Floating
//! point enters only at evaluation time, either in plain double precision or
//! in double-double (106-bit mantissa) arithmetic.

use crate::error::{Error, Result};
use crate::weights::WeightSpec;
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use twofloat::TwoFloat;

/// Complex point in `C^c` at which polynomials are evaluated.
pub type ComplexVector = Vec<Complex64>;

/// Exponent vector `w = (w_1, ..., w_c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn zero(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |w|
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// w! = w_1! ... w_c!
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .map(|&e| BigInt::from(crate::bignum::factorial(u64::from(e))))
            .product()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|e| e % 2 == 0)
    }

    /// Applies a color relabelling: entry `i` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> MultiIndex {
        let mut out = vec![0; self.0.len()];
        for (i, &e) in self.0.iter().enumerate() {
            out[perm[i]] = e;
        }
        MultiIndex(out)
    }

    /// All compositions of `total` into `parts` non-negative parts, in
    /// lexicographically decreasing order.
    pub fn compositions(total: u32, parts: usize) -> Vec<MultiIndex> {
        fn rec(left: u32, slot: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if slot + 1 == cur.len() {
                cur[slot] = left;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for v in (0..=left).rev() {
                cur[slot] = v;
                rec(left - v, slot + 1, cur, out);
            }
        }
        if parts == 0 {
            return if total == 0 {
                vec![MultiIndex(vec![])]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        rec(total, 0, &mut vec![0; parts], &mut out);
        out
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

// Graded lexicographic: total degree first, then exponent vectors lexicographically.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Evaluation precision. `DoubleDouble` carries a 106-bit mantissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    DoubleDouble,
}

impl Precision {
    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            0..=53 => Ok(Precision::Double),
            54..=106 => Ok(Precision::DoubleDouble),
            _ => Err(Error::InvalidArgument(format!(
                "precision of {bits} bits is not supported (max 106)"
            ))),
        }
    }

    pub fn mantissa_bits(self) -> u32 {
        match self {
            Precision::Double => 53,
            Precision::DoubleDouble => 106,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, BigRational>,
}

impl RationalPolynomial {
    pub fn zero(nvars: usize) -> Self {
        RationalPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(MultiIndex::zero(nvars), c)
    }

    pub fn monomial(w: MultiIndex, c: BigRational) -> Self {
        let nvars = w.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        RationalPolynomial { nvars, terms }
    }

    /// The coordinate function `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, i), BigRational::one())
    }

    /// Sums duplicate monomials and drops zero coefficients.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, BigRational)>,
    {
        let mut map: BTreeMap<MultiIndex, BigRational> = BTreeMap::new();
        for (w, c) in terms {
            if w.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: w.len(),
                });
            }
            *map.entry(w).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(RationalPolynomial { nvars, terms: map })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// `Some(k)` iff every term has total degree `k`; `None` for the zero
    /// polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(MultiIndex::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, k: u32) -> bool {
        self.terms.keys().all(|w| w.degree() == k)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn coefficient(&self, w: &MultiIndex) -> Result<BigRational> {
        if w.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: w.len(),
            });
        }
        Ok(self.terms.get(w).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = terms.entry(w.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(w);
            }
        }
        Ok(RationalPolynomial {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        RationalPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, t: &BigRational) -> Self {
        if t.is_zero() {
            return Self::zero(self.nvars);
        }
        RationalPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * t)).collect(),
        }
    }

    /// Common denominator and integer numerators of all coefficients.
    fn integer_form(&self) -> (BigInt, Vec<(&MultiIndex, BigInt)>) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .terms
            .iter()
            .map(|(w, c)| (w, c.numer() * (&den / c.denom())))
            .collect();
        (den, nums)
    }

    /// Exact product. Numerators are convolved as integers over a common
    /// denominator so that no gcd is taken inside the double loop.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let (dp, np) = self.integer_form();
        let (dq, nq) = other.integer_form();
        let mut acc: HashMap<MultiIndex, BigInt> = HashMap::with_capacity(np.len() * nq.len());
        for (wp, cp) in &np {
            for (wq, cq) in &nq {
                let slot = acc.entry(wp.add(wq)).or_insert_with(BigInt::zero);
                *slot += cp * cq;
            }
        }
        let den = dp * dq;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w, BigRational::new(c, den.clone())))
            .collect();
        Ok(RationalPolynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// `p^n` by binary exponentiation; `p^0 = 1`.
    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same dimensions");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same dimensions");
            }
        }
        result
    }

    pub fn partial(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.0[i] > 0)
            .map(|(w, c)| {
                let mut e = w.0.clone();
                let k = e[i];
                e[i] -= 1;
                (
                    MultiIndex(e),
                    c * BigRational::from_integer(BigInt::from(k)),
                )
            })
            .collect();
        RationalPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    pub fn hessian(&self) -> Vec<Vec<Self>> {
        let grad = self.gradient();
        let mut h = vec![vec![Self::zero(self.nvars); self.nvars]; self.nvars];
        for i in 0..self.nvars {
            for j in i..self.nvars {
                let d = grad[i].partial(j);
                h[j][i] = d.clone();
                h[i][j] = d;
            }
        }
        h
    }

    /// Truncated exponential `exp(p)` keeping terms of degree `<= max_degree`.
    /// Requires `p` to have no constant term.
    pub fn exp_truncated(&self, max_degree: u32) -> Result<Self> {
        if self.terms.keys().any(|w| w.degree() == 0) {
            return Err(Error::InvalidArgument(
                "exp_truncated needs a polynomial without constant term".into(),
            ));
        }
        let mut sum = Self::one(self.nvars);
        let mut power = Self::one(self.nvars);
        for j in 1..=max_degree {
            power = power.mul(self)?.truncated(max_degree);
            let inv_fact = BigRational::new(
                BigInt::one(),
                BigInt::from(crate::bignum::factorial(u64::from(j))),
            );
            sum = sum.add(&power.scale(&inv_fact))?;
        }
        Ok(sum)
    }

    pub fn truncated(&self, max_degree: u32) -> Self {
        RationalPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() <= max_degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Relabels variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        RationalPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.permuted(perm), c.clone()))
                .collect(),
        }
    }

    fn check_point_len(&self, len: usize) -> Result<()> {
        if len != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: len,
            });
        }
        Ok(())
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &[BigRational]) -> Result<BigRational> {
        self.check_point_len(x.len())?;
        let mut total = BigRational::zero();
        for (w, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&w.0) {
                if e > 0 {
                    t *= num_traits::pow(xi.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Direct sum of monomial values in double precision.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        self.check_point_len(z.len())?;
        let powers = power_table(z, self.max_exponents());
        Ok(self
            .terms
            .iter()
            .map(|(w, c)| {
                let mono =
                    w.0.iter()
                        .enumerate()
                        .fold(Complex64::one(), |acc, (i, &e)| acc * powers[i][e as usize]);
                mono * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum())
    }

    pub fn eval_real(&self, x: &[f64]) -> Result<f64> {
        let z: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Ok(self.eval(&z)?.re)
    }

    /// Evaluation in double-double arithmetic.
    pub fn eval_extended(&self, z: &[Complex<TwoFloat>]) -> Result<Complex<TwoFloat>> {
        self.check_point_len(z.len())?;
        let zero = Complex::new(TwoFloat::from(0.0), TwoFloat::from(0.0));
        let one = Complex::new(TwoFloat::from(1.0), TwoFloat::from(0.0));
        let maxe = self.max_exponents();
        let powers: Vec<Vec<Complex<TwoFloat>>> = z
            .iter()
            .zip(&maxe)
            .map(|(zi, &m)| {
                let mut row = vec![one];
                for _ in 0..m {
                    let last = *row.last().expect("nonempty");
                    row.push(last * zi);
                }
                row
            })
            .collect();
        let mut total = zero;
        for (w, c) in &self.terms {
            let coeff = rational_to_twofloat(c);
            let mut mono = one;
            for (i, &e) in w.0.iter().enumerate() {
                mono = mono * powers[i][e as usize];
            }
            total = total + mono * Complex::new(coeff, TwoFloat::from(0.0));
        }
        Ok(total)
    }

    /// Evaluates at `z` in the requested precision, rounding the result to
    /// double precision.
    pub fn eval_with(&self, z: &[Complex64], precision: Precision) -> Result<Complex64> {
        match precision {
            Precision::Double => self.eval(z),
            Precision::DoubleDouble => {
                let zz: Vec<Complex<TwoFloat>> = z
                    .iter()
                    .map(|c| Complex::new(TwoFloat::from(c.re), TwoFloat::from(c.im)))
                    .collect();
                let r = self.eval_extended(&zz)?;
                Ok(Complex64::new(r.re.hi() + r.re.lo(), r.im.hi() + r.im.lo()))
            }
        }
    }

    fn max_exponents(&self) -> Vec<u32> {
        let mut m = vec![0; self.nvars];
        for w in self.terms.keys() {
            for (mi, &e) in m.iter_mut().zip(&w.0) {
                *mi = (*mi).max(e);
            }
        }
        m
    }
}

fn power_table(z: &[Complex64], maxe: Vec<u32>) -> Vec<Vec<Complex64>> {
    z.iter()
        .zip(maxe)
        .map(|(zi, m)| {
            let mut row = Vec::with_capacity(m as usize + 1);
            row.push(Complex64::one());
            for _ in 0..m {
                let last = *row.last().expect("nonempty");
                row.push(last * zi);
            }
            row
        })
        .collect()
}

/// Rounds a rational to the nearest double-double.
pub fn rational_to_twofloat(r: &BigRational) -> TwoFloat {
    let hi = r.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return TwoFloat::from(hi);
    }
    let rest = r - BigRational::from_float(hi).expect("finite");
    let lo = rest.to_f64().unwrap_or(0.0);
    TwoFloat::new_add(hi, lo)
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first
        for (idx, (w, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &e) in w.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// `g = -Σ x_i²/2 + Σ_w Λ_w x^w / w!`.
pub fn build_g(weights: &WeightSpec) -> RationalPolynomial {
    let c = weights.colors();
    let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    let quad = (0..c).map(|i| {
        let mut e = vec![0; c];
        e[i] = 2;
        (MultiIndex(e), half.clone())
    });
    let v = weights.potential();
    let all = quad.chain(v.terms.into_iter());
    RationalPolynomial::from_terms(c, all).expect("consistent dimensions")
}

/// `e_k(x_1, ..., x_c)`, all coefficients one.
pub fn build_elementary_symmetric(c: usize, k: u32) -> Result<RationalPolynomial> {
    if k as usize > c || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "elementary symmetric e_{k} needs 1 <= k <= c = {c}"
        )));
    }
    let terms = MultiIndex::compositions(k, c)
        .into_iter()
        .filter(|w| w.0.iter().all(|&e| e <= 1))
        .map(|w| (w, BigRational::one()));
    RationalPolynomial::from_terms(c, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn mono(e: &[u32], c: BigRational) -> RationalPolynomial {
        RationalPolynomial::monomial(MultiIndex::new(e.to_vec()), c)
    }

    fn x(c: usize, i: usize) -> RationalPolynomial {
        RationalPolynomial::variable(c, i)
    }

    #[test]
    fn add_examples() {
        let p = x(2, 0);
        assert!(p.add(&p.neg()).unwrap().is_zero());

        let s = mono(&[2, 0], q(1, 2)).add(&mono(&[1, 1], q(1, 1))).unwrap();
        assert_eq!(s.len(), 2);

        let e2 = build_elementary_symmetric(2, 2).unwrap();
        let twice = e2.add(&e2).unwrap();
        assert_eq!(twice, mono(&[1, 1], q(2, 1)));
    }

    #[test]
    fn add_dimension_mismatch() {
        let err = x(2, 0).add(&x(3, 0)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        assert!(x(2, 0).mul(&x(3, 0)).is_err());
    }

    #[test]
    fn mul_examples() {
        let a = x(2, 0).add(&x(2, 1)).unwrap();
        let b = x(2, 0).sub(&x(2, 1)).unwrap();
        let expect = mono(&[2, 0], q(1, 1)).sub(&mono(&[0, 2], q(1, 1))).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expect);

        let p = mono(&[1, 2], q(3, 7));
        assert_eq!(RationalPolynomial::one(2).mul(&p).unwrap(), p);

        let e3 = build_elementary_symmetric(3, 3).unwrap();
        assert_eq!(e3.mul(&e3).unwrap(), mono(&[2, 2, 2], q(1, 1)));
    }

    #[test]
    fn pow_examples() {
        let p = mono(&[1, 0], q(5, 3));
        assert_eq!(p.pow(0), RationalPolynomial::one(2));
        let e3 = build_elementary_symmetric(3, 3).unwrap();
        assert_eq!(e3.pow(2), mono(&[2, 2, 2], q(1, 1)));
        let cube = mono(&[3], q(1, 6));
        assert_eq!(cube.pow(2), mono(&[6], q(1, 36)));
    }

    #[test]
    fn coefficient_examples() {
        let p = mono(&[6], q(1, 36));
        assert_eq!(p.coefficient(&MultiIndex::new(vec![6])).unwrap(), q(1, 36));
        assert_eq!(p.coefficient(&MultiIndex::new(vec![5])).unwrap(), q(0, 1));
        // (x1 x2 x3)^2 / 2, expanded by hand
        let e3 = build_elementary_symmetric(3, 3).unwrap();
        let half_sq = e3.pow(2).scale(&q(1, 2));
        assert_eq!(
            half_sq
                .coefficient(&MultiIndex::new(vec![2, 2, 2]))
                .unwrap(),
            q(1, 2)
        );
        assert!(p.coefficient(&MultiIndex::new(vec![1, 1])).is_err());
    }

    #[test]
    fn gradient_examples() {
        let p = mono(&[2], q(1, 2));
        assert_eq!(p.gradient(), vec![x(1, 0)]);
        let e3 = build_elementary_symmetric(3, 3).unwrap();
        let g = e3.gradient();
        assert_eq!(g[0], mono(&[0, 1, 1], q(1, 1)));
        assert_eq!(g[1], mono(&[1, 0, 1], q(1, 1)));
        assert_eq!(g[2], mono(&[1, 1, 0], q(1, 1)));
    }

    #[test]
    fn hessian_examples() {
        let p = mono(&[2], q(1, 2));
        assert_eq!(p.hessian(), vec![vec![RationalPolynomial::one(1)]]);
        let h = mono(&[1, 1], q(1, 1)).hessian();
        assert!(h[0][0].is_zero() && h[1][1].is_zero());
        assert_eq!(h[0][1], RationalPolynomial::one(2));
        assert_eq!(h[1][0], RationalPolynomial::one(2));

        let mut w = WeightSpec::new(3, 3).unwrap();
        w.insert(MultiIndex::new(vec![1, 1, 1]), q(1, 1)).unwrap();
        let g = build_g(&w);
        let hg = g.hessian();
        let hv = w.potential().hessian();
        for i in 0..3 {
            let diff = hg[i][i].sub(&hv[i][i]).unwrap();
            assert_eq!(diff, RationalPolynomial::constant(3, q(-1, 1)));
        }
    }

    #[test]
    fn eval_examples() {
        let e3 = build_elementary_symmetric(3, 3).unwrap();
        let one = vec![Complex64::new(1.0, 0.0); 3];
        assert_eq!(e3.eval(&one).unwrap(), Complex64::new(1.0, 0.0));

        let s = 3f64.powf(-0.5);
        let v = e3.eval(&[Complex64::new(s, 0.0); 3]).unwrap();
        assert!((v.re - 3f64.powf(-1.5)).abs() < 1e-15);

        // g(z) = τ²(2-k)/(2k) at the critical point τ = 2 of -x²/2 + x³/6
        let mut w = WeightSpec::new(1, 3).unwrap();
        w.insert(MultiIndex::new(vec![3]), q(1, 1)).unwrap();
        let g = build_g(&w);
        let val = g.eval(&[Complex64::new(2.0, 0.0)]).unwrap();
        assert!((val.re + 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn eval_extended_agrees_and_is_sharper() {
        let p = mono(&[1], q(1, 3)).add(&mono(&[0], q(-1, 3))).unwrap();
        // 1/3 x - 1/3 at x = 1 is exactly zero
        let d = p
            .eval_with(&[Complex64::new(1.0, 0.0)], Precision::DoubleDouble)
            .unwrap();
        assert!(d.norm() < 1e-30);
        assert_eq!(Precision::from_bits(64).unwrap(), Precision::DoubleDouble);
        assert!(Precision::from_bits(200).is_err());
    }

    #[test]
    fn build_g_examples() {
        let mut w = WeightSpec::new(1, 3).unwrap();
        w.insert(MultiIndex::new(vec![3]), q(1, 1)).unwrap();
        let g = build_g(&w);
        let expect = mono(&[2], q(-1, 2)).add(&mono(&[3], q(1, 6))).unwrap();
        assert_eq!(g, expect);

        let mut w = WeightSpec::new(3, 3).unwrap();
        w.insert(MultiIndex::new(vec![1, 1, 1]), q(1, 1)).unwrap();
        let g = build_g(&w);
        let mut expect = mono(&[1, 1, 1], q(1, 1));
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 2;
            expect = expect.add(&mono(&e, q(-1, 2))).unwrap();
        }
        assert_eq!(g, expect);

        let empty = build_g(&WeightSpec::new(2, 3).unwrap());
        assert_eq!(empty.len(), 2);
        assert!(empty.is_homogeneous_of(2));
    }

    #[test]
    fn elementary_symmetric_examples() {
        let e3 = build_elementary_symmetric(3, 3).unwrap();
        assert_eq!(e3, mono(&[1, 1, 1], q(1, 1)));
        assert_eq!(build_elementary_symmetric(4, 3).unwrap().len(), 4);
        assert!(build_elementary_symmetric(2, 3).is_err());
        let spec = WeightSpec::elementary_symmetric(4, 3).unwrap();
        assert_eq!(spec.potential(), build_elementary_symmetric(4, 3).unwrap());
    }

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex::new(vec![0, 3]);
        let b = MultiIndex::new(vec![2, 0]);
        assert!(b < a);
        assert!(MultiIndex::new(vec![1, 2]) < MultiIndex::new(vec![2, 1]));
        assert_eq!(MultiIndex::compositions(3, 2).len(), 4);
    }

    #[test]
    fn truncated_exponential() {
        // exp(x) up to degree 3
        let e = x(1, 0).exp_truncated(3).unwrap();
        assert_eq!(e.coefficient(&MultiIndex::new(vec![3])).unwrap(), q(1, 6));
        assert!(RationalPolynomial::one(1).exp_truncated(2).is_err());
    }
}
