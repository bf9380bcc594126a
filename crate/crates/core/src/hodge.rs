//! Hodge-integral bookkeeping.
//!
//! * `b_g`, the coefficients of `(u/2)/sin(u/2)`, which are the one-point
//!   integrals `∫ψ^{2g−2}λ_g`.
//! * Genus-zero ψ integrals, by the multinomial formula and independently by
//!   the string equation.
//! * [`HodgeExpr`], polynomials in the Chern classes `c_1..c_g` of the Hodge
//!   bundle and the equivariant parameter `λ`, reduced modulo
//!   `c(𝔼)c(𝔼^∨) = 1`.
//! * Closed multiple-cover contributions `C(g,d)` and the sphere formula.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::psi::EXACT_ZERO_ORDER;
use crate::scalar::{factorial, int, rat, rpow};
use crate::{Rational, Series};

/// `b_0..b_gmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct BgTable {
    values: Vec<Rational>,
}

impl BgTable {
    pub fn get(&self, g: usize) -> Option<&Rational> {
        self.values.get(g)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Largest genus stored.
    pub fn gmax(&self) -> usize {
        self.values.len() - 1
    }
}

/// Even-power coefficients of `(u/2)·sin(u/2)^{-1}`.
///
/// Panics if an odd coefficient is nonzero, which would mean the series
/// layer is broken.
pub fn bg_table(gmax: usize) -> BgTable {
    let order = 2 * gmax as i64 + 2;
    let sin = Series::sin(&rat(1, 2), order);
    let inv = sin.inverse().expect("sin(u/2) has leading coefficient 1/2");
    let series = inv.mul(&Series::monomial(rat(1, 2), 1, EXACT_ZERO_ORDER));
    debug_assert!(series.truncation_order() > 2 * gmax as i64);
    let mut values = Vec::with_capacity(gmax + 1);
    for k in 0..=(2 * gmax as i64) {
        let c = series.coeff(k).expect("within truncation");
        if k % 2 == 1 {
            assert!(c.is_zero(), "odd coefficient of (u/2)/sin(u/2) is {c}");
        } else {
            values.push(c);
        }
    }
    BgTable { values }
}

/// `∫_{M̄_{0,h}} ψ_1^{k_1}···ψ_h^{k_h}`: the multinomial
/// `(h−3)!/(k_1!···k_h!)` when the degrees add up to `h−3`, otherwise 0.
pub fn psi_integral_genus0(k: &[u32]) -> Rational {
    let h = k.len();
    let total: u64 = k.iter().map(|&x| x as u64).sum();
    if h < 3 || total != (h - 3) as u64 {
        return Rational::zero();
    }
    let den = k.iter().fold(num_bigint::BigInt::one(), |acc, &x| acc * factorial(x as u64));
    Rational::new(factorial(total), den)
}

/// Same integral by the string equation
/// `⟨τ_0 ∏τ_{k_i}⟩ = Σ_j ⟨τ_{k_j−1} ∏_{i≠j} τ_{k_i}⟩` down to `⟨τ_0³⟩ = 1`.
pub fn psi_integral_oracle(k: &[u32]) -> Rational {
    let h = k.len();
    let total: usize = k.iter().map(|&x| x as usize).sum();
    if h < 3 || total + 3 != h {
        return Rational::zero();
    }
    if h == 3 {
        return Rational::one();
    }
    // Σk = h−3 < h forces some k_i = 0.
    let zero_at = k.iter().position(|&x| x == 0).expect("a τ_0 insertion exists");
    let rest: Vec<u32> = k
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != zero_at)
        .map(|(_, &x)| x)
        .collect();
    let mut acc = Rational::zero();
    for j in 0..rest.len() {
        if rest[j] > 0 {
            let mut lowered = rest.clone();
            lowered[j] -= 1;
            acc += psi_integral_oracle(&lowered);
        }
    }
    acc
}

/// Monomial `c_1^{e_1}···c_g^{e_g} λ^p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HodgeMonomial {
    pub chern: Vec<u32>,
    pub lambda: u32,
}

impl HodgeMonomial {
    /// Weighted degree: `c_i` has degree `i`, `λ` degree 1.
    pub fn degree(&self) -> u32 {
        self.chern_degree() + self.lambda
    }

    pub fn chern_degree(&self) -> u32 {
        self.chern.iter().enumerate().map(|(i, &e)| (i as u32 + 1) * e).sum()
    }

    pub fn is_pure_lambda(&self) -> bool {
        self.chern.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        Self {
            chern: self.chern.iter().zip(&other.chern).map(|(a, b)| a + b).collect(),
            lambda: self.lambda + other.lambda,
        }
    }
}

/// Element of `ℚ[c_1..c_g, λ]` for a fixed genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeExpr {
    genus: usize,
    terms: BTreeMap<HodgeMonomial, Rational>,
}

impl HodgeExpr {
    pub fn zero(genus: usize) -> Self {
        Self {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(genus: usize, c: Rational) -> Self {
        Self::term(genus, vec![0; genus], 0, c)
    }

    pub fn one(genus: usize) -> Self {
        Self::constant(genus, Rational::one())
    }

    /// `coef · c^chern · λ^lambda`.
    pub fn term(genus: usize, chern: Vec<u32>, lambda: u32, coef: Rational) -> Self {
        assert_eq!(chern.len(), genus, "Chern exponent vector has wrong length");
        let mut e = Self::zero(genus);
        e.accumulate(HodgeMonomial { chern, lambda }, coef);
        e
    }

    /// The class `c_i`, with `c_0 = 1` and `c_i = 0` for `i > g`.
    pub fn chern_class(genus: usize, i: usize) -> Self {
        if i == 0 {
            return Self::one(genus);
        }
        if i > genus {
            return Self::zero(genus);
        }
        let mut chern = vec![0; genus];
        chern[i - 1] = 1;
        Self::term(genus, chern, 0, Rational::one())
    }

    pub fn lambda(genus: usize, power: u32) -> Self {
        Self::term(genus, vec![0; genus], power, Rational::one())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HodgeMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, chern: &[u32], lambda: u32) -> Rational {
        let key = HodgeMonomial {
            chern: chern.to_vec(),
            lambda,
        };
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    fn accumulate(&mut self, m: HodgeMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.genus, other.genus);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.genus);
        for (m, v) in &self.terms {
            out.accumulate(m.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.genus, other.genus);
        let mut out = Self::zero(self.genus);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.accumulate(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// The expression is a rational constant (possibly zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.is_pure_lambda() && m.lambda == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}

impl fmt::Display for HodgeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest λ power first reads more naturally.
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(x, _), (y, _)| y.lambda.cmp(&x.lambda).then_with(|| x.chern.cmp(&y.chern)));
        for (n, (m, c)) in ordered.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.chern.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("c{}", i + 1)),
                    _ => factors.push(format!("c{}^{}", i + 1, e)),
                }
            }
            match m.lambda {
                0 => {}
                1 => factors.push("λ".to_string()),
                p => factors.push(format!("λ^{p}")),
            }
            if factors.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `c_g(𝔼^∨ ⊗ (sλ)) = Σ_{i=0}^{g} (−1)^i c_i (sλ)^{g−i}`.
pub fn chern_top_dual_twist(genus: usize, s: &Rational) -> HodgeExpr {
    let mut out = HodgeExpr::zero(genus);
    for i in 0..=genus {
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        let p = (genus - i) as u32;
        let coef = sign * rpow(s, p as i64);
        let term = HodgeExpr::chern_class(genus, i).mul(&HodgeExpr::lambda(genus, p));
        out = out.add(&term.scale(&coef));
    }
    out
}

/// Normal form modulo the ideal generated by the homogeneous components of
/// `c(𝔼)c(𝔼^∨) − 1`.
///
/// The degree-`2i` component gives the rule
/// `c_i² → −2 Σ_{k=1}^{i} (−1)^k c_{i−k} c_{i+k}` (odd components vanish
/// identically). In weighted grevlex with `c_1 > … > c_g` each right-hand
/// side is smaller than `c_i²`, and the leading terms `c_i²` are pairwise
/// coprime, so these rules form a Gröbner basis. Normal forms are therefore
/// square-free in the `c_i` and unique.
pub fn mumford_reduce(expr: &HodgeExpr) -> HodgeExpr {
    let g = expr.genus;
    let mut pending: Vec<(HodgeMonomial, Rational)> =
        expr.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
    let mut done = HodgeExpr::zero(g);
    while let Some((m, c)) = pending.pop() {
        let Some(i0) = m.chern.iter().position(|&e| e >= 2) else {
            done.accumulate(m, c);
            continue;
        };
        let i = i0 + 1;
        let mut base = m.clone();
        base.chern[i0] -= 2;
        for k in 1..=i {
            if i + k > g {
                break;
            }
            let sign = if k % 2 == 0 { int(-2) } else { int(2) };
            let mut next = base.clone();
            if i > k {
                next.chern[i - k - 1] += 1;
            }
            next.chern[i + k - 1] += 1;
            pending.push((next, &c * &sign));
        }
    }
    done
}

/// Checks `c_g(𝔼^∨(λ))·c_g(𝔼^∨(−λ)) = (−1)^g λ^{2g}` after reduction.
pub fn lambda_product_identity(genus: usize) -> bool {
    let lhs = chern_top_dual_twist(genus, &int(1)).mul(&chern_top_dual_twist(genus, &int(-1)));
    let sign = if genus.is_multiple_of(2) { int(1) } else { int(-1) };
    let rhs = HodgeExpr::lambda(genus, 2 * genus as u32).scale(&sign);
    mumford_reduce(&lhs) == rhs
}

/// `C(g,d) = d^{2g−3} Σ_{g_1+g_2=g} b_{g_1} b_{g_2}`, using a precomputed table.
pub fn closed_cover_from_table(table: &BgTable, g: usize, d: u64) -> Rational {
    assert!(d >= 1, "degree must be positive");
    assert!(g <= table.gmax(), "b_g table too short");
    let v = table.values();
    let sum = (0..=g).fold(Rational::zero(), |acc, g1| acc + &v[g1] * &v[g - g1]);
    sum * rpow(&int(d as i64), 2 * g as i64 - 3)
}

pub fn closed_cover_contribution(g: usize, d: u64) -> Rational {
    closed_cover_from_table(&bg_table(g), g, d)
}

/// `Σ_{g≤gmax} C(g,d) λ^{2g−2}`, known through `λ^{2gmax−2}`.
pub fn closed_potential_series(d: u64, gmax: usize) -> Series {
    let table = bg_table(gmax);
    let coeffs = (0..=2 * gmax)
        .map(|k| {
            if k % 2 == 0 {
                closed_cover_from_table(&table, k / 2, d)
            } else {
                Rational::zero()
            }
        })
        .collect();
    Series::new(-2, coeffs, 2 * gmax as i64 - 1)
}

/// Laurent expansion of `1/(d·(2 sin(λd/2))²)` known through `λ^{last}`.
pub fn sphere_reference_series(d: u64, last: i64) -> Series {
    let order = (last + 4).max(2);
    let sin = Series::sin(&rat(d as i64, 2), order);
    let den = sin.mul(&sin).scale(&int(4 * d as i64));
    den.inverse().expect("leading coefficient d³ is nonzero")
}

/// Sphere multiple-cover formula through `λ^{2gmax−2}`.
pub fn verify_sphere_ov(d: u64, gmax: usize) -> bool {
    let last = 2 * gmax as i64 - 2;
    let lhs = closed_potential_series(d, gmax);
    let rhs = sphere_reference_series(d, last);
    lhs.agrees_through(&rhs, last).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bg_values() {
        let t = bg_table(3);
        assert_eq!(t.values(), &[int(1), rat(1, 24), rat(7, 5760), rat(31, 967680)]);
        assert_eq!(bg_table(0).values(), &[int(1)]);
    }

    #[test]
    fn genus_zero_psi_integrals() {
        assert_eq!(psi_integral_genus0(&[0, 0, 0]), int(1));
        assert_eq!(psi_integral_genus0(&[1, 0, 0, 0]), int(1));
        assert_eq!(psi_integral_genus0(&[1, 1, 0, 0, 0]), int(2));
        assert_eq!(psi_integral_genus0(&[1, 1, 0, 0]), int(0));
        assert_eq!(psi_integral_oracle(&[3, 0, 0, 0, 0, 0]), int(1));
        assert_eq!(psi_integral_oracle(&[1, 0, 0, 0]), int(1));
        assert_eq!(psi_integral_oracle(&[2, 2, 1, 0, 0, 0, 0, 0]), int(30));
    }

    #[test]
    fn mumford_examples() {
        let c1 = HodgeExpr::chern_class(1, 1);
        assert!(mumford_reduce(&c1.mul(&c1)).is_zero());

        let lam = HodgeExpr::lambda(1, 1);
        let prod = lam.sub(&c1).mul(&lam.neg().sub(&c1));
        assert_eq!(mumford_reduce(&prod), lam.mul(&lam).neg());

        let a = HodgeExpr::chern_class(2, 1);
        let b = HodgeExpr::chern_class(2, 2);
        let rel = a.mul(&a).sub(&b.scale(&int(2)));
        assert!(mumford_reduce(&rel).is_zero());
        assert!(mumford_reduce(&b.mul(&b)).is_zero());
    }

    #[test]
    fn lambda_identity_through_genus_eight() {
        for g in 0..=8 {
            assert!(lambda_product_identity(g), "g = {g}");
        }
    }

    #[test]
    fn twist_expansion() {
        // c_1(𝔼^∨(−λ)) = −λ − c_1
        let e = chern_top_dual_twist(1, &int(-1));
        assert_eq!(e.coefficient(&[0], 1), int(-1));
        assert_eq!(e.coefficient(&[1], 0), int(-1));
        assert_eq!(chern_top_dual_twist(0, &int(5)), HodgeExpr::one(0));
    }

    #[test]
    fn closed_covers() {
        assert_eq!(closed_cover_contribution(0, 1), int(1));
        assert_eq!(closed_cover_contribution(0, 2), rat(1, 8));
        assert_eq!(closed_cover_contribution(1, 2), rat(1, 24));
    }

    #[test]
    fn sphere_formula() {
        assert!(verify_sphere_ov(1, 0));
        assert!(verify_sphere_ov(2, 3));
        for d in 1..=8 {
            assert!(verify_sphere_ov(d, 6), "d = {d}");
        }
    }

    #[test]
    fn display_form() {
        let e = chern_top_dual_twist(2, &int(1));
        assert_eq!(e.to_string(), "(1)*λ^2 + (-1)*c1*λ + (1)*c2");
    }

    fn arb_expr(g: usize) -> impl Strategy<Value = HodgeExpr> {
        prop::collection::vec(
            (prop::collection::vec(0u32..4, g), 0u32..4, -20i64..20, 1i64..6),
            0..6,
        )
        .prop_map(move |terms| {
            terms.into_iter().fold(HodgeExpr::zero(g), |acc, (c, l, n, d)| {
                acc.add(&HodgeExpr::term(g, c, l, rat(n, d)))
            })
        })
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(e in (1usize..5).prop_flat_map(arb_expr)) {
            let once = mumford_reduce(&e);
            prop_assert_eq!(mumford_reduce(&once), once.clone());
            for (m, _) in once.terms() {
                prop_assert!(m.chern.iter().all(|&x| x <= 1));
            }
        }

        #[test]
        fn reduction_is_linear(
            (x, y) in (1usize..5).prop_flat_map(|g| (arb_expr(g), arb_expr(g))),
            n in -5i64..5,
        ) {
            let s = int(n);
            let lhs = mumford_reduce(&x.scale(&s).add(&y));
            let rhs = mumford_reduce(&x).scale(&s).add(&mumford_reduce(&y));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduction_preserves_degree(e in (1usize..5).prop_flat_map(arb_expr)) {
            let degrees: std::collections::BTreeSet<u32> = e.terms().map(|(m, _)| m.degree()).collect();
            for (m, _) in mumford_reduce(&e).terms() {
                prop_assert!(degrees.contains(&m.degree()));
            }
        }
    }
}
