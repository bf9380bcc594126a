//! Polynomials in nilpotent ψ-classes with series coefficients.
//!
//! On `M̄_{g,h}` every monomial `ψ_1^{k_1}···ψ_h^{k_h}` of total degree above
//! the dimension vanishes, so products are computed modulo that cap. Exponent
//! vectors are indexed by marked point; the map keeps them in canonical
//! order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// Truncation order used for coefficients that are exactly zero.
pub const EXACT_ZERO_ORDER: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
pub struct PsiPolynomial<T> {
    points: usize,
    cap: u32,
    terms: BTreeMap<Vec<u32>, TruncatedSeries<T>>,
}

impl<T: Scalar> PartialEq for PsiPolynomial<T> {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.cap == other.cap && self.terms == other.terms
    }
}

impl<T: Scalar> PsiPolynomial<T> {
    pub fn zero(points: usize, cap: u32) -> Self {
        Self {
            points,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(points: usize, cap: u32, c: TruncatedSeries<T>) -> Self {
        Self::monomial(points, cap, vec![0; points], c)
    }

    /// `c·ψ^exps`, or zero if the monomial is above the cap.
    pub fn monomial(points: usize, cap: u32, exps: Vec<u32>, c: TruncatedSeries<T>) -> Self {
        assert_eq!(exps.len(), points, "exponent vector has wrong length");
        let mut p = Self::zero(points, cap);
        if exps.iter().sum::<u32>() <= cap {
            p.terms.insert(exps, c);
        }
        p
    }

    /// `c·ψ_i` (zero-based point index).
    pub fn psi(points: usize, cap: u32, i: usize, c: TruncatedSeries<T>) -> Self {
        let mut exps = vec![0; points];
        exps[i] = 1;
        Self::monomial(points, cap, exps, c)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &TruncatedSeries<T>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `ψ^exps`, exactly zero when absent.
    pub fn coefficient(&self, exps: &[u32]) -> TruncatedSeries<T> {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(EXACT_ZERO_ORDER))
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.points, other.points, "ψ-polynomials over different point counts");
        assert_eq!(self.cap, other.cap, "ψ-polynomials with different caps");
    }

    fn accumulate(&mut self, exps: Vec<u32>, c: TruncatedSeries<T>) {
        if exps.iter().sum::<u32>() > self.cap {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => *existing = existing.add(&c),
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            points: self.points,
            cap: self.cap,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product with every monomial above the cap discarded.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(self.points, self.cap);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<u32>() > self.cap {
                    continue;
                }
                let exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.accumulate(exps, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &TruncatedSeries<T>) -> Self {
        Self {
            points: self.points,
            cap: self.cap,
            terms: self.terms.iter().map(|(e, s)| (e.clone(), s.mul(c))).collect(),
        }
    }

    /// Inverse by geometric expansion around the ψ-degree-0 part:
    /// `(P₀ + N)⁻¹ = P₀⁻¹ Σ_k (−N P₀⁻¹)^k`, which is finite because `N` is
    /// nilpotent under the cap.
    pub fn inverse(&self) -> Result<Self> {
        let zero_exps = vec![0; self.points];
        let p0 = self
            .terms
            .get(&zero_exps)
            .ok_or(Error::ZeroLeadingCoefficient)?;
        let p0_inv = p0.inverse()?;
        let mut nilpotent = self.clone();
        nilpotent.terms.remove(&zero_exps);
        let step = nilpotent.scale(&p0_inv).neg();

        let one = Self::constant(self.points, self.cap, TruncatedSeries::one(EXACT_ZERO_ORDER));
        let mut sum = one.clone();
        let mut power = one;
        for _ in 0..self.cap {
            power = power.mul(&step);
            if power.is_empty() {
                break;
            }
            sum = sum.add(&power);
        }
        Ok(sum.scale(&p0_inv))
    }

    /// `Σ coeff(k)·integral(k)` over all stored monomials.
    pub fn integrate(&self, integral: impl Fn(&[u32]) -> T) -> TruncatedSeries<T> {
        self.terms
            .iter()
            .fold(TruncatedSeries::zero(EXACT_ZERO_ORDER), |acc, (e, c)| {
                let w = integral(e);
                if w.is_zero() {
                    acc
                } else {
                    acc.add(&c.scale(&w))
                }
            })
    }
}
