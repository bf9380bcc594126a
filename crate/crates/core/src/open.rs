//! Framed disc invariants `C(g;h|d;n_1..n_h|a)` in closed form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hodge::{bg_table, BgTable};
use crate::psi::EXACT_ZERO_ORDER;
use crate::scalar::{factorial, int, rat, rpow};
use crate::{Rational, Series};

/// Key of an open invariant. Parts are kept in non-increasing order, so two
/// keys differing by a permutation of the parts compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenInvariantKey {
    g: u32,
    d: u64,
    parts: Vec<u64>,
    a: i64,
}

impl OpenInvariantKey {
    /// Validates `h = |parts| ≥ 1`, every part positive and `Σ parts = d`.
    pub fn new(g: u32, h: usize, d: u64, parts: &[u64], a: i64) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidKey("boundary count h must be at least 1".into()));
        }
        if parts.len() != h {
            return Err(Error::InvalidKey(format!(
                "expected {h} winding parts, got {}",
                parts.len()
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidKey("winding parts must be positive".into()));
        }
        let sum: u64 = parts.iter().sum();
        if sum != d {
            return Err(Error::InvalidKey(format!("parts sum to {sum}, not d = {d}")));
        }
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|x, y| y.cmp(x));
        Ok(Self { g, d, parts, a })
    }

    /// Shorthand with `h` and `d` read off the parts.
    pub fn from_parts(g: u32, parts: &[u64], a: i64) -> Result<Self> {
        Self::new(g, parts.len(), parts.iter().sum(), parts, a)
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn h(&self) -> usize {
        self.parts.len()
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn with_framing(&self, a: i64) -> Self {
        Self { a, ..self.clone() }
    }
}

impl fmt::Display for OpenInvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({};{}|{};{}|{})", self.g, self.h(), self.d, parts.join(","), self.a)
    }
}

/// Parses the display form `(g;h|d;n1,n2,...|a)`; the parentheses are optional.
impl FromStr for OpenInvariantKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidKey(format!("cannot parse key {s:?}; expected (g;h|d;n1,...|a)"));
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let sections: Vec<&str> = body.split('|').collect();
        let [gh, dn, a] = sections.as_slice() else {
            return Err(bad());
        };
        let (g, h) = gh.split_once(';').ok_or_else(bad)?;
        let (d, n) = dn.split_once(';').ok_or_else(bad)?;
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
        let parts = n.split(',').map(num).collect::<Result<Vec<_>>>()?;
        let a = a.trim().parse::<i64>().map_err(|_| bad())?;
        Self::new(num(g)? as u32, num(h)? as usize, num(d)?, &parts, a)
    }
}

/// `Π_{j=1}^{n−1} (j − n·a) / (n−1)!`.
pub fn winding_factor(n: u64, a: i64) -> Rational {
    assert!(n >= 1, "winding number must be positive");
    let na = BigInt::from(n) * BigInt::from(a);
    let num = (1..n).fold(BigInt::one(), |acc, j| acc * (BigInt::from(j) - &na));
    Rational::new(num, factorial(n - 1))
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Genus-zero closed form `(a(1−a))^{h−1} Π w(n_i,a) d^{h−3}`, which covers
/// the disc and annulus cases as `h = 1, 2`.
fn genus_zero(key: &OpenInvariantKey) -> Rational {
    let a = int(key.a);
    let framing = &a * (int(1) - &a);
    let h = key.h() as i64;
    let windings = key
        .parts
        .iter()
        .fold(Rational::one(), |acc, &n| acc * winding_factor(n, key.a));
    rpow(&framing, h - 1) * windings * rpow(&int(key.d as i64), h - 3)
}

fn one_boundary_from_table(table: &BgTable, g: usize, d: u64) -> Rational {
    rpow(&int(d as i64), 2 * g as i64 - 2) * &table.values()[g]
}

/// Closed-form value of `C(g;h|d;n|a)`.
///
/// Genus zero is evaluated for every framing. For `g ≥ 1` only `a ∈ {0,1}` is
/// available. There `h > 1` vanishes because of the `(a(1−a))^{h−1}` factor,
/// `h = 1, a = 0` is `d^{2g−2} b_g`, and `a = 1` follows from the framing
/// symmetry.
pub fn open_invariant(key: &OpenInvariantKey) -> Result<Rational> {
    if key.g == 0 {
        return Ok(genus_zero(key));
    }
    if key.a != 0 && key.a != 1 {
        return Err(Error::UnsupportedRegime(format!(
            "{key}: genus {} at framing {} needs triple Hodge integrals",
            key.g, key.a
        )));
    }
    if key.h() > 1 {
        return Ok(Rational::zero());
    }
    let g = key.g as usize;
    let at_zero = one_boundary_from_table(&bg_table(g), g, key.d);
    Ok(if key.a == 0 {
        at_zero
    } else {
        sign(key.d as i64 - 1) * at_zero
    })
}

/// `C(…|1−a) = (−1)^{d−h} C(…|a)`.
pub fn verify_framing_symmetry(key: &OpenInvariantKey) -> Result<bool> {
    let here = open_invariant(key)?;
    let mirrored = open_invariant(&key.with_framing(1 - key.a))?;
    Ok(mirrored == sign(key.d as i64 - key.h() as i64) * here)
}

/// Degrees whose `N_d` failed to be an integer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegralityReport {
    pub non_integral: Vec<u64>,
}

impl IntegralityReport {
    pub fn is_integral(&self) -> bool {
        self.non_integral.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegerInvariants {
    pub framing: i64,
    /// `values[d−1] = N_d`.
    pub values: Vec<Rational>,
    pub report: IntegralityReport,
}

impl IntegerInvariants {
    /// The values as integers, if they all are.
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.values
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }
}

/// `(−1)^{ad} C(0;1|d;d|a)`, the left side of the divisor sum defining `N_d`.
pub fn disc_multicover_lhs(d: u64, a: i64) -> Rational {
    sign(a * d as i64) * winding_factor(d, a) / int(d as i64 * d as i64)
}

/// `Σ_{k|d} N_{d/k}/k²` from `values[j−1] = N_j`.
pub fn divisor_sum(values: &[Rational], d: u64) -> Rational {
    (1..=d)
        .filter(|&k| d.is_multiple_of(k))
        .fold(Rational::zero(), |acc, k| {
            acc + &values[(d / k - 1) as usize] / int((k * k) as i64)
        })
}

/// Solves `(−1)^{ad} C(0;1|d;d|a) = Σ_{k|d} N_{d/k}/k²` for `N_1..N_dmax` by
/// increasing-`d` elimination.
pub fn integer_invariants(dmax: u64, a: i64) -> IntegerInvariants {
    let mut values: Vec<Rational> = Vec::with_capacity(dmax as usize);
    let mut report = IntegralityReport::default();
    for d in 1..=dmax {
        let known = (2..=d)
            .filter(|&k| d.is_multiple_of(k))
            .fold(Rational::zero(), |acc, k| {
                acc + &values[(d / k - 1) as usize] / int((k * k) as i64)
            });
        let n = disc_multicover_lhs(d, a) - known;
        if !n.is_integer() {
            report.non_integral.push(d);
        }
        values.push(n);
    }
    IntegerInvariants {
        framing: a,
        values,
        report,
    }
}

/// `Σ_{g≤gmax} λ^{2g−1} C(g;1|d;d|0)`, known through `λ^{2gmax−1}`.
pub fn open_potential_series(d: u64, gmax: usize) -> Series {
    let table = bg_table(gmax);
    let coeffs = (0..2 * gmax + 1)
        .map(|k| {
            if k % 2 == 0 {
                one_boundary_from_table(&table, k / 2, d)
            } else {
                Rational::zero()
            }
        })
        .collect();
    Series::new(-1, coeffs, 2 * gmax as i64)
}

/// Laurent expansion of `1/(2d sin(λd/2))`, known through `λ^{last}`.
pub fn disc_reference_series(d: u64, last: i64) -> Series {
    let order = (last + 3).max(2);
    let sin = Series::sin(&rat(d as i64, 2), order);
    let den = sin.mul(&Series::monomial(int(2 * d as i64), 0, EXACT_ZERO_ORDER));
    den.inverse().expect("leading coefficient d² is nonzero")
}

/// Disc multiple-cover formula through `λ^{2gmax−1}`.
pub fn verify_disc_ov(d: u64, gmax: usize) -> bool {
    let last = 2 * gmax as i64 - 1;
    let lhs = open_potential_series(d, gmax);
    let rhs = disc_reference_series(d, last);
    lhs.agrees_through(&rhs, last).unwrap_or(false)
}

/// Partitions of `d` into exactly `h` positive parts, each non-increasing,
/// listed in lexicographically decreasing order.
pub fn partitions(d: u64, h: usize) -> Vec<Vec<u64>> {
    fn go(rest: u64, slots: usize, cap: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // Leave at least one for each remaining slot.
        let hi = cap.min(rest.saturating_sub(slots as u64 - 1));
        let lo = rest.div_ceil(slots as u64);
        for p in (lo..=hi).rev() {
            prefix.push(p);
            go(rest - p, slots - 1, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if h == 0 || (h as u64) > d {
        return out;
    }
    go(d, h, d, &mut Vec::with_capacity(h), &mut out);
    out
}
