//! Vertex-incidence weights Λ_w indexed by compositions of `k` into `c` parts.

use crate::error::{Error, Result};
use crate::multipoly::{MultiIndex, RationalPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSpec {
    colors: usize,
    degree: u32,
    weights: BTreeMap<MultiIndex, BigRational>,
}

impl WeightSpec {
    /// Empty spec (all Λ_w = 0).
    pub fn new(colors: usize, degree: u32) -> Result<Self> {
        if colors == 0 {
            return Err(Error::InvalidArgument("need at least one color".into()));
        }
        if degree == 0 {
            return Err(Error::InvalidArgument("degree k must be positive".into()));
        }
        Ok(WeightSpec {
            colors,
            degree,
            weights: BTreeMap::new(),
        })
    }

    pub fn from_entries<I>(colors: usize, degree: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, BigRational)>,
    {
        let mut spec = Self::new(colors, degree)?;
        for (w, value) in entries {
            if spec.weights.contains_key(&w) {
                return Err(Error::InvalidWeight {
                    key: w.exps().to_vec(),
                    reason: "duplicate key".into(),
                });
            }
            spec.insert(w, value)?;
        }
        Ok(spec)
    }

    /// Λ_w = 1 on every 0/1 composition, which turns `V` into `e_k`.
    pub fn elementary_symmetric(colors: usize, degree: u32) -> Result<Self> {
        if degree as usize > colors {
            return Err(Error::InvalidArgument(format!(
                "e_{degree} needs k <= c = {colors}"
            )));
        }
        let entries = MultiIndex::compositions(degree, colors)
            .into_iter()
            .filter(|w| w.exps().iter().all(|&e| e <= 1))
            .map(|w| (w, BigRational::one()));
        Self::from_entries(colors, degree, entries)
    }

    /// Sets Λ_w; a zero value removes the key.
    pub fn insert(&mut self, w: MultiIndex, value: BigRational) -> Result<()> {
        self.validate_key(&w)?;
        if value.is_zero() {
            self.weights.remove(&w);
        } else {
            self.weights.insert(w, value);
        }
        Ok(())
    }

    fn validate_key(&self, w: &MultiIndex) -> Result<()> {
        if w.len() != self.colors {
            return Err(Error::InvalidWeight {
                key: w.exps().to_vec(),
                reason: format!("length {} != c = {}", w.len(), self.colors),
            });
        }
        if w.degree() != self.degree {
            return Err(Error::InvalidWeight {
                key: w.exps().to_vec(),
                reason: format!("|w| = {} != k = {}", w.degree(), self.degree),
            });
        }
        Ok(())
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn weight(&self, w: &MultiIndex) -> BigRational {
        self.weights
            .get(w)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Nonzero weights in graded-lex order.
    pub fn support(&self) -> impl Iterator<Item = (&MultiIndex, &BigRational)> {
        self.weights.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `V(x) = Σ_w Λ_w x^w / w!`, homogeneous of degree `k`.
    pub fn potential(&self) -> RationalPolynomial {
        let terms = self.weights.iter().map(|(w, lam)| {
            let coeff = lam / BigRational::from_integer(w.factorial());
            (w.clone(), coeff)
        });
        RationalPolynomial::from_terms(self.colors, terms).expect("keys validated")
    }

    /// Λ_w ↦ t·Λ_w.
    pub fn scaled(&self, t: &BigRational) -> Self {
        let mut out = Self::new(self.colors, self.degree).expect("already valid");
        for (w, v) in &self.weights {
            out.insert(w.clone(), v * t).expect("same key");
        }
        out
    }

    /// Relabels colors: color `i` becomes color `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.colors];
        if perm.len() != self.colors
            || perm
                .iter()
                .any(|&p| p >= self.colors || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidArgument(
                "not a permutation of the colors".into(),
            ));
        }
        let entries = self
            .weights
            .iter()
            .map(|(w, v)| (w.permuted(perm), v.clone()));
        Self::from_entries(self.colors, self.degree, entries)
    }

    /// Uniform weight Λ on every composition (the single-color case gives
    /// `V = Λ x^k / k!`).
    pub fn uniform(colors: usize, degree: u32, value: BigRational) -> Result<Self> {
        let entries = MultiIndex::compositions(degree, colors)
            .into_iter()
            .map(|w| (w, value.clone()));
        Self::from_entries(colors, degree, entries)
    }

    pub fn unit_weight(colors: usize, degree: u32, w: Vec<u32>) -> Result<Self> {
        Self::from_entries(
            colors,
            degree,
            [(MultiIndex::new(w), BigRational::from_integer(BigInt::one()))],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_keys() {
        let mut s = WeightSpec::new(2, 3).unwrap();
        assert!(s
            .insert(MultiIndex::new(vec![2]), BigRational::one())
            .is_err());
        assert!(s
            .insert(MultiIndex::new(vec![2, 0]), BigRational::one())
            .is_err());
        assert!(s
            .insert(MultiIndex::new(vec![2, 1]), BigRational::one())
            .is_ok());
        let dup = WeightSpec::from_entries(
            2,
            3,
            vec![
                (MultiIndex::new(vec![2, 1]), BigRational::one()),
                (MultiIndex::new(vec![2, 1]), BigRational::one()),
            ],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn potential_divides_by_multi_factorial() {
        let s = WeightSpec::unit_weight(1, 3, vec![3]).unwrap();
        let v = s.potential();
        assert_eq!(
            v.coefficient(&MultiIndex::new(vec![3])).unwrap(),
            BigRational::new(1.into(), 6.into())
        );
    }

    #[test]
    fn permutation_validation() {
        let s = WeightSpec::elementary_symmetric(3, 2).unwrap();
        assert!(s.permuted(&[0, 0, 1]).is_err());
        assert_eq!(s.permuted(&[2, 0, 1]).unwrap(), s);
    }
}
