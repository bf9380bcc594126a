//! Truncated Laurent series in one formal variable.
//!
//! A [`TruncatedSeries`] stores `Σ_{k=lowest}^{order-1} c_k x^k + O(x^order)`.
//! Coefficients below `lowest` are exactly zero (the principal part is
//! finite); coefficients at or above `order` are unknown and every accessor
//! refuses to invent them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest relative precision [`TruncatedSeries::inverse`] will expand.
pub const MAX_INVERSE_PRECISION: i64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct TruncatedSeries<T> {
    lowest: i64,
    /// `coeffs[k]` is the coefficient of `x^(lowest + k)`. Known
    /// coefficients past the stored prefix (and below `order`) are zero.
    coeffs: Vec<T>,
    order: i64,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Builds `Σ coeffs[k] x^(lowest+k) + O(x^order)`.
    ///
    /// Entries at or beyond `order` are dropped; known coefficients not
    /// listed in `coeffs` are zero.
    pub fn new(lowest: i64, mut coeffs: Vec<T>, order: i64) -> Self {
        if order <= lowest {
            return Self::empty(order, order);
        }
        let len = (order - lowest).min(coeffs.len() as i64) as usize;
        coeffs.truncate(len);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self {
            lowest,
            coeffs,
            order,
        }
    }

    /// `0 + O(x^order)`.
    pub fn zero(order: i64) -> Self {
        Self {
            lowest: order.min(0),
            coeffs: Vec::new(),
            order,
        }
    }

    /// Zero with an explicit lowest exponent, so products keep the
    /// truncation bookkeeping `lowest = a.lowest + b.lowest`.
    fn empty(lowest: i64, order: i64) -> Self {
        Self {
            lowest: lowest.min(order),
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(T::one(), 0, order)
    }

    /// `c·x^power + O(x^order)`.
    pub fn monomial(c: T, power: i64, order: i64) -> Self {
        Self::new(power, vec![c], order)
    }

    /// One past the last stored exponent.
    fn end(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64
    }

    pub fn lowest_exponent(&self) -> i64 {
        self.lowest
    }

    pub fn truncation_order(&self) -> i64 {
        self.order
    }

    /// Number of known coefficients starting at the lowest exponent.
    pub fn precision(&self) -> i64 {
        self.order - self.lowest
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; an error if `k` lies at or past the truncation.
    pub fn coeff(&self, k: i64) -> Result<T> {
        if k >= self.order {
            return Err(Error::BeyondTruncation {
                requested: k,
                order: self.order,
            });
        }
        if k < self.lowest || k >= self.end() {
            return Ok(T::zero());
        }
        Ok(self.coeffs[(k - self.lowest) as usize].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exponent of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.lowest + i as i64)
    }

    /// Drops known-zero leading coefficients so the first stored one is nonzero.
    pub fn trimmed(&self) -> Self {
        match self.valuation() {
            Some(v) => Self {
                lowest: v,
                coeffs: self.coeffs[(v - self.lowest) as usize..].to_vec(),
                order: self.order,
            },
            None => Self::zero(self.order),
        }
    }

    /// Lowers the truncation order. Raising it would require inventing
    /// coefficients, so that is an error.
    pub fn truncate(&self, order: i64) -> Result<Self> {
        if order > self.order {
            return Err(Error::BeyondTruncation {
                requested: order - 1,
                order: self.order,
            });
        }
        Ok(Self::new(self.lowest, self.coeffs.clone(), order))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            lowest: self.lowest + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            order: self.order,
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let order = self.order.min(other.order);
        let lowest = self.lowest.min(other.lowest).min(order);
        let end = self.end().max(other.end()).min(order);
        let coeffs = (lowest..end)
            .map(|k| f(self.coeff(k).unwrap(), other.coeff(k).unwrap()))
            .collect();
        Self::new(lowest, coeffs, order)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// Cauchy product. The result is known up to
    /// `min(a.order + b.lowest, b.order + a.lowest)`.
    pub fn mul(&self, other: &Self) -> Self {
        let lowest = self.lowest.saturating_add(other.lowest);
        let order = self
            .order
            .saturating_add(other.lowest)
            .min(other.order.saturating_add(self.lowest));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::empty(lowest, order);
        }
        let window = (order - lowest).max(0) as usize;
        let n = window.min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(lowest, coeffs, order)
    }

    /// Multiplicative inverse; `lowest` becomes `-lowest` and the relative
    /// precision is preserved.
    pub fn inverse(&self) -> Result<Self> {
        let lead = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c.clone(),
            _ => return Err(Error::ZeroLeadingCoefficient),
        };
        let n = self.precision();
        if self.coeffs.len() > 1 && n > MAX_INVERSE_PRECISION {
            return Err(Error::UnsupportedRegime(format!(
                "inverse of a polynomial known to order {} is an infinite series; truncate it first",
                self.order
            )));
        }
        let inv_lead = T::one() / lead;
        let mut out: Vec<T> = vec![inv_lead.clone()];
        if self.coeffs.len() > 1 {
            for k in 1..n as usize {
                let mut acc = T::zero();
                for j in 1..=k.min(self.coeffs.len() - 1) {
                    acc = acc + self.coeffs[j].clone() * out[k - j].clone();
                }
                out.push(-(acc * inv_lead.clone()));
            }
        }
        Ok(Self::new(-self.lowest, out, (-self.lowest).saturating_add(n)))
    }

    /// `self^e`; `e = 0` gives `1` carrying the same relative precision.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.precision());
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Taylor expansion of `sin(scale·x)` with every coefficient below
    /// `order` known.
    pub fn sin(scale: &T, order: i64) -> Self {
        if scale.is_zero() || order <= 1 {
            return Self::zero(order.max(0));
        }
        // term_k = scale^k / k!, alternating over odd k.
        let mut coeffs = Vec::with_capacity((order - 1) as usize);
        let mut term = scale.clone();
        for k in 1..order {
            if k > 1 {
                term = term * scale.clone() / T::from_count(k as u64);
            }
            let c = match k % 4 {
                1 => term.clone(),
                3 => -term.clone(),
                _ => T::zero(),
            };
            coeffs.push(c);
        }
        Self::new(1, coeffs, order)
    }

    /// `true` iff both series are known through `x^last` and agree on every
    /// coefficient up to and including it.
    pub fn agrees_through(&self, other: &Self, last: i64) -> Result<bool> {
        let first = self.lowest.min(other.lowest);
        for k in first..=last {
            if self.coeff(k)? != other.coeff(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(f).collect(),
            order: self.order,
        }
    }
}

/// Two series are equal when they share a truncation order and every known
/// coefficient agrees, independent of how many zeros are stored.
impl<T: Scalar> PartialEq for TruncatedSeries<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.order != other.order {
            return false;
        }
        let lowest = self.lowest.min(other.lowest);
        let end = self.end().max(other.end());
        (lowest..end).all(|k| self.coeff(k).unwrap() == other.coeff(k).unwrap())
    }
}

/// Free-function form of [`TruncatedSeries::mul`].
pub fn series_mul<T: Scalar>(a: &TruncatedSeries<T>, b: &TruncatedSeries<T>) -> TruncatedSeries<T> {
    a.mul(b)
}

/// Free-function form of [`TruncatedSeries::inverse`].
pub fn series_inverse<T: Scalar>(a: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
    a.inverse()
}

/// Free-function form of [`TruncatedSeries::sin`].
pub fn sin_series<T: Scalar>(scale: &T, order: i64) -> TruncatedSeries<T> {
    TruncatedSeries::sin(scale, order)
}

impl<T: Scalar> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, rhs: Self) -> Self::Output {
        TruncatedSeries::add(self, rhs)
    }
}

impl<T: Scalar> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, rhs: Self) -> Self::Output {
        TruncatedSeries::sub(self, rhs)
    }
}

impl<T: Scalar> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, rhs: Self) -> Self::Output {
        TruncatedSeries::mul(self, rhs)
    }
}

impl<T: Scalar> Neg for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn neg(self) -> Self::Output {
        self.map(|c| -c.clone())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.lowest + i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(x^{})", self.order)
    }
}
