//! Exact values of the automorphism-weighted count A(n).
//!
//! Three independent routes are provided and cross-check each other:
//!
//! * [`exact_a_series`]: coefficient extraction from `V^n / n!`, weighted by
//!   per-color perfect-matching counts `(2s_i - 1)!!`.
//! * [`exact_a_partition_sum`]: sum over multiplicity functions `{t_w}`
//!   (how many vertices carry each multidegree), never forming `V^n`.
//! * [`brute_force_a`]: explicit set partitions of labelled half-edges.

use crate::bignum::{factorial, rational_from_biguint};
use crate::error::{Error, Result};
use crate::multipoly::{MultiIndex, RationalPolynomial};
use crate::weights::WeightSpec;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub const DEFAULT_HALF_EDGE_CAP: u32 = 8;
/// Largest `n·k` for which exhaustive matching enumeration is allowed.
pub const EXHAUSTIVE_MATCHING_CAP: u32 = 6;

/// `t!!` with `(-1)!! = 0!! = 1`.
pub fn double_factorial(t: i64) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = t;
    while i > 1 {
        acc *= i as u64;
        i -= 2;
    }
    acc
}

/// `m = nk/2`, or `None` when `nk` is odd.
fn edge_count(n: u32, k: u32) -> Option<u32> {
    let nk = n * k;
    (nk % 2 == 0).then_some(nk / 2)
}

/// `∏_i (w_i - 1)!!` for an exponent vector with all entries even.
fn matching_weight(w: &MultiIndex) -> BigUint {
    w.exps()
        .iter()
        .map(|&e| double_factorial(i64::from(e) - 1))
        .product()
}

/// A(n) from the even-exponent coefficients of a precomputed `V^n`.
pub fn a_from_power(power: &RationalPolynomial, n: u32) -> BigRational {
    let mut sum = BigRational::zero();
    for (w, coeff) in power.terms() {
        if w.all_even() {
            sum += coeff * rational_from_biguint(matching_weight(w));
        }
    }
    sum / rational_from_biguint(factorial(u64::from(n)))
}

/// `A(n) = Σ_{|s|=m} ∏_i (2s_i-1)!! [x^{2s}] V^n / n!` with `m = nk/2`.
pub fn exact_a_series(n: u32, spec: &WeightSpec) -> BigRational {
    if edge_count(n, spec.degree()).is_none() {
        return BigRational::zero();
    }
    let v = spec.potential();
    let mut power = RationalPolynomial::one(spec.colors());
    for _ in 0..n {
        power = power.mul(&v).expect("same dimensions");
    }
    a_from_power(&power, n)
}

/// Sum over multiplicity functions `{t_w}` with `Σ t_w = n` and all color
/// totals `Σ t_w w_i = 2 s_i` even, of
/// `∏_i (2s_i-1)!! · ∏_w Λ_w^{t_w} / (t_w! (w!)^{t_w})`.
pub fn exact_a_partition_sum(n: u32, spec: &WeightSpec) -> BigRational {
    if edge_count(n, spec.degree()).is_none() {
        return BigRational::zero();
    }
    let support: Vec<(MultiIndex, BigRational)> = spec
        .support()
        .map(|(w, v)| (w.clone(), v.clone()))
        .collect();
    let mut total = BigRational::zero();
    let mut counts = vec![0u32; support.len()];
    visit_multiplicities(&support, n, 0, &mut counts, &mut |t| {
        let c = spec.colors();
        let mut color_totals = vec![0u32; c];
        let mut term = BigRational::one();
        for ((w, lam), &tw) in support.iter().zip(t) {
            if tw == 0 {
                continue;
            }
            for (tot, &e) in color_totals.iter_mut().zip(w.exps()) {
                *tot += tw * e;
            }
            let denom = BigInt::from(factorial(u64::from(tw)))
                * num_traits::pow(w.factorial(), tw as usize);
            term *= num_traits::pow(lam.clone(), tw as usize) / BigRational::from_integer(denom);
        }
        if color_totals.iter().all(|t| t % 2 == 0) {
            let doubles: BigUint = color_totals
                .iter()
                .map(|&t| double_factorial(i64::from(t) - 1))
                .product();
            total += term * rational_from_biguint(doubles);
        }
    });
    total
}

fn visit_multiplicities<F: FnMut(&[u32])>(
    support: &[(MultiIndex, BigRational)],
    left: u32,
    slot: usize,
    counts: &mut Vec<u32>,
    f: &mut F,
) {
    if slot == support.len() {
        if left == 0 {
            f(counts);
        }
        return;
    }
    if slot + 1 == support.len() {
        counts[slot] = left;
        f(counts);
        counts[slot] = 0;
        return;
    }
    for t in 0..=left {
        counts[slot] = t;
        visit_multiplicities(support, left - t, slot + 1, counts, f);
    }
    counts[slot] = 0;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceOptions {
    pub half_edge_cap: u32,
    /// Count per-color matchings by enumeration instead of `(2s-1)!!`.
    pub exhaustive_matchings: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            half_edge_cap: DEFAULT_HALF_EDGE_CAP,
            exhaustive_matchings: false,
        }
    }
}

/// A(n) by enumerating set partitions of explicitly labelled half-edges.
///
/// For each color-count vector `s` with `|s| = m`, the half-edge sets
/// `H_1 ⊔ ... ⊔ H_c` (`|H_i| = 2s_i`) are partitioned into `n` blocks of size
/// `k` whose multidegrees lie in the support of Λ. Each partition contributes
/// `∏_v Λ_{deg v}`; the sum is multiplied by the number of per-color perfect
/// matchings and divided by `∏_i (2s_i)!`.
pub fn brute_force_a(n: u32, spec: &WeightSpec, opts: BruteForceOptions) -> Result<BigRational> {
    let k = spec.degree();
    let nk = n * k;
    if nk > opts.half_edge_cap {
        return Err(Error::CapExceeded {
            what: "n*k half-edges",
            value: u64::from(nk),
            cap: u64::from(opts.half_edge_cap),
        });
    }
    if opts.exhaustive_matchings && nk > EXHAUSTIVE_MATCHING_CAP {
        return Err(Error::CapExceeded {
            what: "n*k half-edges (exhaustive matchings)",
            value: u64::from(nk),
            cap: u64::from(EXHAUSTIVE_MATCHING_CAP),
        });
    }
    let Some(m) = edge_count(n, k) else {
        return Ok(BigRational::zero());
    };
    let c = spec.colors();
    let weights: BTreeMap<Vec<u32>, BigRational> = spec
        .support()
        .map(|(w, v)| (w.exps().to_vec(), v.clone()))
        .collect();
    let mut total = BigRational::zero();
    for s in MultiIndex::compositions(m, c) {
        let mut labels = Vec::with_capacity(nk as usize);
        for (color, &si) in s.exps().iter().enumerate() {
            labels.extend(std::iter::repeat_n(color, 2 * si as usize));
        }
        let partitions = partition_weight_sum(&labels, n as usize, k as usize, c, &weights);
        if partitions.is_zero() {
            continue;
        }
        let mut matchings = BigUint::one();
        let mut label_group = BigUint::one();
        for &si in s.exps() {
            let h = 2 * u64::from(si);
            matchings *= if opts.exhaustive_matchings {
                count_perfect_matchings(h as usize)
            } else {
                double_factorial(h as i64 - 1)
            };
            label_group *= factorial(h);
        }
        total += partitions * rational_from_biguint(matchings) / rational_from_biguint(label_group);
    }
    Ok(total)
}

/// Σ over set partitions of the labels into `blocks` blocks of size `k` of
/// `∏_block Λ_{multidegree(block)}`, via restricted growth strings.
fn partition_weight_sum(
    labels: &[usize],
    blocks: usize,
    k: usize,
    colors: usize,
    weights: &BTreeMap<Vec<u32>, BigRational>,
) -> BigRational {
    struct State<'a> {
        labels: &'a [usize],
        blocks: usize,
        k: usize,
        colors: usize,
        weights: &'a BTreeMap<Vec<u32>, BigRational>,
        degs: Vec<Vec<u32>>,
        sizes: Vec<usize>,
        total: BigRational,
    }

    fn rec(st: &mut State<'_>, idx: usize) {
        if idx == st.labels.len() {
            if st.degs.len() == st.blocks {
                let mut prod = BigRational::one();
                for d in &st.degs {
                    match st.weights.get(d) {
                        Some(v) => prod *= v,
                        None => return,
                    }
                }
                st.total += prod;
            }
            return;
        }
        let color = st.labels[idx];
        for b in 0..st.degs.len() {
            if st.sizes[b] < st.k {
                st.sizes[b] += 1;
                st.degs[b][color] += 1;
                let closed_ok = st.sizes[b] < st.k || st.weights.contains_key(&st.degs[b]);
                if closed_ok {
                    rec(st, idx + 1);
                }
                st.sizes[b] -= 1;
                st.degs[b][color] -= 1;
            }
        }
        if st.degs.len() < st.blocks {
            let mut d = vec![0u32; st.colors];
            d[color] += 1;
            st.degs.push(d);
            st.sizes.push(1);
            let closed_ok = st.k > 1 || st.weights.contains_key(&st.degs[st.degs.len() - 1]);
            if closed_ok {
                rec(st, idx + 1);
            }
            st.degs.pop();
            st.sizes.pop();
        }
    }

    if labels.is_empty() {
        return if blocks == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        };
    }
    if weights.is_empty() {
        return BigRational::zero();
    }
    debug_assert!(weights.keys().all(|w| w.len() == colors));
    let mut st = State {
        labels,
        blocks,
        k,
        colors,
        weights,
        degs: Vec::new(),
        sizes: Vec::new(),
        total: BigRational::zero(),
    };
    rec(&mut st, 0);
    st.total
}

/// Number of perfect matchings of `h` labelled points, by enumeration.
pub fn count_perfect_matchings(h: usize) -> BigUint {
    fn rec(used: &mut Vec<bool>) -> u64 {
        let Some(first) = used.iter().position(|u| !u) else {
            return 1;
        };
        used[first] = true;
        let mut total = 0;
        for j in first + 1..used.len() {
            if !used[j] {
                used[j] = true;
                total += rec(used);
                used[j] = false;
            }
        }
        used[first] = false;
        total
    }
    if h % 2 == 1 {
        return BigUint::zero();
    }
    BigUint::from(rec(&mut vec![false; h]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Series,
    PartitionSum,
    BruteForce,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Series => "series",
            Provenance::PartitionSum => "partition-sum",
            Provenance::BruteForce => "brute-force",
        }
    }
}

/// Exact A(n) values keyed by `n`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CountTable {
    entries: BTreeMap<u32, (BigRational, Provenance)>,
}

impl CountTable {
    /// Series values for every `n` in `ns`, sharing the powers of `V`.
    pub fn series(spec: &WeightSpec, ns: &[u32]) -> Self {
        let mut table = CountTable::default();
        let Some(&max_n) = ns.iter().max() else {
            return table;
        };
        let v = spec.potential();
        let mut power = RationalPolynomial::one(spec.colors());
        for n in 0..=max_n {
            if n > 0 {
                power = power.mul(&v).expect("same dimensions");
            }
            if ns.contains(&n) {
                let value = if edge_count(n, spec.degree()).is_some() {
                    a_from_power(&power, n)
                } else {
                    BigRational::zero()
                };
                table.entries.insert(n, (value, Provenance::Series));
            }
        }
        table
    }

    pub fn insert(&mut self, n: u32, value: BigRational, provenance: Provenance) {
        self.entries.insert(n, (value, provenance));
    }

    pub fn get(&self, n: u32) -> Option<&BigRational> {
        self.entries.get(&n).map(|(v, _)| v)
    }

    pub fn provenance(&self, n: u32) -> Option<Provenance> {
        self.entries.get(&n).map(|(_, p)| *p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigRational, Provenance)> {
        self.entries.iter().map(|(n, (v, p))| (*n, v, *p))
    }
}

/// One-edge contributions of the counting formula with generic weights.
#[derive(Debug, Clone, PartialEq)]
pub struct OneEdgeReport {
    /// `[x_i²] exp(Σ λ_w x^w / w!)` per color.
    pub series: Vec<BigRational>,
    /// `λ_{e_i}²/2 + λ_{2e_i}/2` per color.
    pub closed_form: Vec<BigRational>,
}

impl OneEdgeReport {
    pub fn holds(&self) -> bool {
        self.series == self.closed_form
    }

    pub fn total(&self) -> BigRational {
        self.series.iter().cloned().sum()
    }
}

/// Checks the one-edge identity for formal weights `λ_w` on all `w` with
/// `|w| ∈ {1, 2}` (missing keys are zero).
pub fn one_edge_check(
    colors: usize,
    lambdas: &BTreeMap<MultiIndex, BigRational>,
) -> Result<OneEdgeReport> {
    for w in lambdas.keys() {
        if w.len() != colors || !(1..=2).contains(&w.degree()) {
            return Err(Error::InvalidWeight {
                key: w.exps().to_vec(),
                reason: "one-edge weights need |w| in {1, 2}".into(),
            });
        }
    }
    let exponent = RationalPolynomial::from_terms(
        colors,
        lambdas
            .iter()
            .map(|(w, l)| (w.clone(), l / BigRational::from_integer(w.factorial()))),
    )?;
    let series_poly = exponent.exp_truncated(2)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let lam = |w: MultiIndex| lambdas.get(&w).cloned().unwrap_or_else(BigRational::zero);
    let mut series = Vec::with_capacity(colors);
    let mut closed_form = Vec::with_capacity(colors);
    for i in 0..colors {
        let mut sq = vec![0; colors];
        sq[i] = 2;
        let sq = MultiIndex::new(sq);
        series.push(series_poly.coefficient(&sq)?);
        let single = lam(MultiIndex::unit(colors, i));
        closed_form.push(&single * &single * &half + lam(sq) * &half);
    }
    Ok(OneEdgeReport {
        series,
        closed_form,
    })
}
