//! Torus localization of the open invariants.
//!
//! Everything here is built from weight lists and Chern classes of twisted
//! Hodge bundles, without reference to the closed formulas in
//! [`crate::open`], so the two routes check each other.
//!
//! An [`EulerExpression`] is `scalar · λ^p · H_num/H_den · Ψ_num/Ψ_den`
//! where the `H` are Hodge polynomials and the `Ψ` are ψ-polynomials with
//! λ-series coefficients. Integration over the fixed locus inverts `Ψ_den`
//! under the nilpotency cap, pairs every Hodge monomial with every ψ
//! monomial, and keeps the `λ^0` coefficient.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hodge::{bg_table, chern_top_dual_twist, mumford_reduce, psi_integral_genus0, HodgeExpr};
use crate::open::OpenInvariantKey;
use crate::psi::EXACT_ZERO_ORDER;
use crate::scalar::{int, rat};
use crate::{PsiPoly, Rational, Series};

/// Multiset of U(1) weights of complex lines, plus trivial real lines `(0)_ℝ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightList {
    weights: Vec<Rational>,
    trivial_count: usize,
}

impl WeightList {
    pub fn new(mut weights: Vec<Rational>, trivial_count: usize) -> Self {
        weights.sort();
        Self {
            weights,
            trivial_count,
        }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), 0)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn trivial_count(&self) -> usize {
        self.trivial_count
    }

    /// Real dimension: two per weight, one per trivial line.
    pub fn real_dimension(&self) -> usize {
        2 * self.weights.len() + self.trivial_count
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut w = self.weights.clone();
        w.extend(other.weights.iter().cloned());
        Self::new(w, self.trivial_count + other.trivial_count)
    }

    /// The part on which the torus acts nontrivially.
    pub fn moving(&self) -> Self {
        Self::new(self.weights.iter().filter(|w| !w.is_zero()).cloned().collect(), 0)
    }

    /// `(Π w, |w|)`, meaning `Π w · λ^{|w|}`; the product is 0 if any
    /// `(0)_ℝ` summand is present.
    pub fn euler_class(&self) -> (Rational, i64) {
        let product = if self.trivial_count > 0 {
            Rational::zero()
        } else {
            self.weights.iter().fold(Rational::one(), |acc, w| acc * w)
        };
        (product, self.weights.len() as i64)
    }
}

/// `H^0` of the degree-`d` disc sector: weights `j/d` for `j = 1..d` and one
/// `(0)_ℝ`.
pub fn tangent_weights_h0(d: u64) -> WeightList {
    assert!(d >= 1);
    WeightList::new((1..=d).map(|j| rat(j as i64, d as i64)).collect(), 1)
}

/// `H^1` of the framing line on a disc of winding `n`: weights `j/n − a`
/// for `j = 1..n−1`.
pub fn obstruction_weights_h1(n: u64, a: i64) -> WeightList {
    assert!(n >= 1);
    WeightList::new(
        (1..n).map(|j| rat(j as i64, n as i64) - int(a)).collect(),
        0,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedLocusKind {
    /// `(g;h) = (0;1)`: a single disc cover.
    PointDisc,
    /// `(g;h) = (0;2)`: two discs glued at a node.
    PointAnnulus,
    /// Everything else: a contracted genus-`g` curve with `h` discs attached.
    Stacky,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocusDescriptor {
    pub genus: usize,
    pub parts: Vec<u64>,
    pub kind: FixedLocusKind,
}

impl FixedLocusDescriptor {
    pub fn new(genus: usize, parts: &[u64]) -> Self {
        let kind = match (genus, parts.len()) {
            (0, 1) => FixedLocusKind::PointDisc,
            (0, 2) => FixedLocusKind::PointAnnulus,
            _ => FixedLocusKind::Stacky,
        };
        Self {
            genus,
            parts: parts.to_vec(),
            kind,
        }
    }

    pub fn from_key(key: &OpenInvariantKey) -> Self {
        Self::new(key.g() as usize, key.parts())
    }

    pub fn h(&self) -> usize {
        self.parts.len()
    }

    pub fn degree(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// `n_1···n_h`.
    pub fn automorphism_factor(&self) -> u64 {
        self.parts.iter().product()
    }

    /// Dimension of the contracted component (0 for the two point cases).
    pub fn psi_cap(&self) -> u32 {
        match self.kind {
            FixedLocusKind::Stacky => (3 * self.genus + self.h()) as u32 - 3,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EulerExpression {
    pub scalar: Rational,
    pub lambda_power: i64,
    pub hodge_numerator: HodgeExpr,
    pub hodge_denominator: HodgeExpr,
    pub psi_numerator: PsiPoly,
    pub psi_denominator: PsiPoly,
}

impl EulerExpression {
    pub fn unit(genus: usize, points: usize, cap: u32) -> Self {
        let one = PsiPoly::constant(points, cap, Series::one(EXACT_ZERO_ORDER));
        Self {
            scalar: Rational::one(),
            lambda_power: 0,
            hodge_numerator: HodgeExpr::one(genus),
            hodge_denominator: HodgeExpr::one(genus),
            psi_numerator: one.clone(),
            psi_denominator: one,
        }
    }

    /// Unit times the Euler class of a weight list.
    pub fn from_weights(genus: usize, points: usize, cap: u32, weights: &WeightList) -> Self {
        let (scalar, lambda_power) = weights.euler_class();
        Self {
            scalar,
            lambda_power,
            ..Self::unit(genus, points, cap)
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            scalar: &self.scalar * &other.scalar,
            lambda_power: self.lambda_power + other.lambda_power,
            hodge_numerator: self.hodge_numerator.mul(&other.hodge_numerator),
            hodge_denominator: self.hodge_denominator.mul(&other.hodge_denominator),
            psi_numerator: self.psi_numerator.mul(&other.psi_numerator),
            psi_denominator: self.psi_denominator.mul(&other.psi_denominator),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.scalar.is_zero() {
            return Err(Error::DimensionMismatch(
                "division by an Euler class with zero scalar".into(),
            ));
        }
        Ok(Self {
            scalar: &self.scalar / &other.scalar,
            lambda_power: self.lambda_power - other.lambda_power,
            hodge_numerator: self.hodge_numerator.mul(&other.hodge_denominator),
            hodge_denominator: self.hodge_denominator.mul(&other.hodge_numerator),
            psi_numerator: self.psi_numerator.mul(&other.psi_denominator),
            psi_denominator: self.psi_denominator.mul(&other.psi_numerator),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            scalar: &self.scalar * c,
            ..self.clone()
        }
    }
}

fn lambda_series(c: Rational, power: i64) -> Series {
    Series::monomial(c, power, EXACT_ZERO_ORDER)
}

/// Euler class of the obstruction bundle at the fixed locus.
///
/// Each disc of winding `n` contributes `H^1` weights `j/n − a`; each of the
/// `h − 1` nodes contributes `{a − 1, −a}`; a contracted genus-`g` curve
/// contributes `c_g(𝔼^∨((a−1)λ)) c_g(𝔼^∨(−aλ))`.
pub fn obstruction_euler(desc: &FixedLocusDescriptor, a: i64) -> EulerExpression {
    let g = desc.genus;
    let h = desc.h();
    let mut weights = WeightList::empty();
    for &n in &desc.parts {
        weights = weights.direct_sum(&obstruction_weights_h1(n, a));
    }
    for _ in 1..h {
        weights = weights.direct_sum(&WeightList::new(vec![int(a - 1), int(-a)], 0));
    }
    let mut e = EulerExpression::from_weights(g, h, desc.psi_cap(), &weights);
    e.hodge_numerator =
        chern_top_dual_twist(g, &int(a - 1)).mul(&chern_top_dual_twist(g, &int(-a)));
    e
}

/// Euler class of the virtual normal bundle at the fixed locus.
pub fn virtual_normal_euler(desc: &FixedLocusDescriptor) -> EulerExpression {
    let g = desc.genus;
    let h = desc.h();
    let cap = desc.psi_cap();
    let mut deformations = WeightList::empty();
    for &n in &desc.parts {
        deformations = deformations.direct_sum(&tangent_weights_h0(n).moving());
    }
    match desc.kind {
        FixedLocusKind::PointDisc => {
            // Infinitesimal automorphisms of the disc: one weight 1/d.
            let d = desc.parts[0] as i64;
            let automorphisms = WeightList::new(vec![rat(1, d)], 0);
            EulerExpression::from_weights(g, h, cap, &deformations)
                .div(&EulerExpression::from_weights(g, h, cap, &automorphisms))
                .expect("nonzero weight")
        }
        FixedLocusKind::PointAnnulus => {
            let (n1, n2) = (desc.parts[0] as i64, desc.parts[1] as i64);
            let node = WeightList::new(vec![int(1)], 0);
            let smoothing = EulerExpression {
                scalar: rat(1, n1) + rat(1, n2),
                lambda_power: 1,
                ..EulerExpression::unit(g, h, cap)
            };
            EulerExpression::from_weights(g, h, cap, &deformations)
                .mul(&smoothing)
                .div(&EulerExpression::from_weights(g, h, cap, &node))
                .expect("nonzero weight")
        }
        FixedLocusKind::Stacky => {
            let with_node = deformations.direct_sum(&WeightList::new(vec![int(1)], 0));
            let nodes = WeightList::new(vec![int(1); h], 0);
            let mut smoothing = PsiPoly::constant(h, cap, Series::one(EXACT_ZERO_ORDER));
            for (i, &n) in desc.parts.iter().enumerate() {
                let factor = PsiPoly::constant(h, cap, lambda_series(rat(1, n as i64), 1))
                    .sub(&PsiPoly::psi(h, cap, i, Series::one(EXACT_ZERO_ORDER)));
                smoothing = smoothing.mul(&factor);
            }
            let mut denominator = EulerExpression::from_weights(g, h, cap, &nodes);
            denominator.hodge_numerator = chern_top_dual_twist(g, &int(1));
            let mut numerator = EulerExpression::from_weights(g, h, cap, &with_node);
            numerator.psi_numerator = smoothing;
            numerator.div(&denominator).expect("nonzero weights")
        }
    }
}

/// `(1/(n_1···n_h)) · obstruction / normal`.
fn integrand(key: &OpenInvariantKey) -> EulerExpression {
    let desc = FixedLocusDescriptor::from_key(key);
    let obstruction = obstruction_euler(&desc, key.a());
    let normal = virtual_normal_euler(&desc);
    obstruction
        .div(&normal)
        .expect("normal bundle Euler class has nonzero scalar")
        .scale(&rat(1, desc.automorphism_factor() as i64))
}

fn check_regime(key: &OpenInvariantKey) -> Result<()> {
    if key.g() >= 1 && key.a() != 0 && key.a() != 1 {
        return Err(Error::UnsupportedRegime(format!(
            "{key}: genus {} at framing {} needs triple Hodge integrals; use the symbolic integrand",
            key.g(),
            key.a()
        )));
    }
    Ok(())
}

/// Integral of `c^chern · ψ^k` over the fixed component.
fn class_integral(desc: &FixedLocusDescriptor, chern: &[u32], psi: &[u32]) -> Result<Rational> {
    let g = desc.genus;
    let chern_degree: u32 = chern.iter().enumerate().map(|(i, &e)| (i as u32 + 1) * e).sum();
    let psi_degree: u32 = psi.iter().sum();
    if chern_degree + psi_degree != desc.psi_cap() {
        return Ok(Rational::zero());
    }
    if g == 0 {
        return Ok(match desc.kind {
            FixedLocusKind::Stacky => psi_integral_genus0(psi),
            _ => Rational::one(),
        });
    }
    let is_top_lambda = chern.iter().enumerate().all(|(i, &e)| e == u32::from(i + 1 == g));
    if desc.h() == 1 && is_top_lambda && psi[0] == 2 * g as u32 - 2 {
        return Ok(bg_table(g).values()[g].clone());
    }
    Err(Error::UnsupportedRegime(format!(
        "no evaluation for the Hodge monomial {chern:?} against ψ^{psi:?} in genus {g}"
    )))
}

/// Open invariant by localization.
pub fn localize_open(key: &OpenInvariantKey) -> Result<Rational> {
    check_regime(key)?;
    let desc = FixedLocusDescriptor::from_key(key);
    let expr = integrand(key);
    if expr.scalar.is_zero() {
        return Ok(Rational::zero());
    }
    let hodge_den = expr.hodge_denominator.as_constant().ok_or_else(|| {
        Error::UnsupportedRegime("Hodge classes remain in the denominator".into())
    })?;
    let hodge = mumford_reduce(&expr.hodge_numerator).scale(&(Rational::one() / hodge_den));
    let psi = expr.psi_numerator.mul(&expr.psi_denominator.inverse()?);

    let mut total = Series::zero(EXACT_ZERO_ORDER);
    for (m, r) in hodge.terms() {
        for (k, s) in psi.terms() {
            let w = class_integral(&desc, &m.chern, k)?;
            if !w.is_zero() {
                total = total.add(&s.shift(m.lambda as i64).scale(&(r * w)));
            }
        }
    }
    let total = total.shift(expr.lambda_power).scale(&expr.scalar);
    if let Some(v) = total.valuation() {
        let stray: Vec<i64> = (v..)
            .take(total.coefficients().len())
            .filter(|&p| p != 0 && !total.coeff(p).unwrap().is_zero())
            .collect();
        if !stray.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "{key}: nonzero coefficients at λ^{stray:?}"
            )));
        }
    }
    Ok(total.coeff(0).expect("exact series"))
}

/// Unevaluated integrand over `M̄_{g,h} × BU(1)`:
/// `prefactor · c_g(𝔼^∨(λ)) c_g(𝔼^∨((a−1)λ)) c_g(𝔼^∨(−aλ)) λ^{2h−3} / Π(λ − n_i ψ_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicIntegrand {
    pub key: OpenInvariantKey,
    pub prefactor: Rational,
    /// The three Hodge twists `1, a−1, −a`.
    pub twists: [Rational; 3],
    pub lambda_power: i64,
    /// The same integrand as assembled by the localization pipeline.
    pub expression: EulerExpression,
}

impl SymbolicIntegrand {
    pub fn vanishes(&self) -> bool {
        self.prefactor.is_zero()
    }

    /// Product of the three twisted top Chern classes, reduced.
    pub fn hodge_part(&self) -> HodgeExpr {
        let g = self.key.g() as usize;
        let product = self
            .twists
            .iter()
            .fold(HodgeExpr::one(g), |acc, s| acc.mul(&chern_top_dual_twist(g, s)));
        mumford_reduce(&product)
    }
}

fn lambda_multiple(s: &Rational) -> String {
    if s.is_one() {
        "λ".into()
    } else if *s == -Rational::one() {
        "-λ".into()
    } else {
        format!("{s}λ")
    }
}

impl fmt::Display for SymbolicIntegrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.key.g();
        let h = self.key.h();
        write!(f, "∫_{{M̄_{{{g},{h}}} × BU(1)}} ")?;
        if self.vanishes() {
            return write!(f, "0");
        }
        write!(f, "({})", self.prefactor)?;
        for s in &self.twists {
            write!(f, " · c_{g}(E^∨({}))", lambda_multiple(s))?;
        }
        write!(f, " · λ^{}", self.lambda_power)?;
        let dens: Vec<String> = self
            .key
            .parts()
            .iter()
            .enumerate()
            .map(|(i, n)| {
                if *n == 1 {
                    format!("(λ - ψ{})", i + 1)
                } else {
                    format!("(λ - {n}ψ{})", i + 1)
                }
            })
            .collect();
        write!(f, " / {}", dens.join(""))?;
        write!(f, "    [Hodge part reduced: {}]", self.hodge_part())
    }
}

/// The integrand of `key` in closed symbolic form, evaluated or not.
pub fn symbolic_integrand(key: &OpenInvariantKey) -> SymbolicIntegrand {
    let a = int(key.a());
    let expression = integrand(key);
    // Rescaling each λ/n_i − ψ_i to λ − n_i ψ_i absorbs n_1···n_h into the
    // prefactor.
    let rescale = key.parts().iter().fold(Rational::one(), |acc, &n| acc * int(n as i64));
    SymbolicIntegrand {
        key: key.clone(),
        prefactor: &expression.scalar * rescale,
        twists: [int(1), &a - int(1), -a],
        lambda_power: 2 * key.h() as i64 - 3,
        expression,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::open::{open_invariant, partitions, winding_factor};

    fn key(g: u32, parts: &[u64], a: i64) -> OpenInvariantKey {
        OpenInvariantKey::from_parts(g, parts, a).unwrap()
    }

    #[test]
    fn weight_lists() {
        let t = tangent_weights_h0(2);
        assert_eq!(t.weights(), &[rat(1, 2), int(1)]);
        assert_eq!(t.trivial_count(), 1);
        assert_eq!(t.real_dimension(), 5);
        assert_eq!(tangent_weights_h0(3).weights(), &[rat(1, 3), rat(2, 3), int(1)]);
        assert!(obstruction_weights_h1(1, 4).weights().is_empty());
        assert_eq!(obstruction_weights_h1(3, 0).weights(), &[rat(1, 3), rat(2, 3)]);
        assert_eq!(obstruction_weights_h1(2, 1).weights(), &[rat(-1, 2)]);
        assert_eq!(t.euler_class().0, int(0));
        assert_eq!(t.moving().euler_class(), (rat(1, 2), 2));
        assert_eq!(
            WeightList::new(vec![int(1), int(2)], 0),
            WeightList::new(vec![int(2), int(1)], 0)
        );
    }

    #[test]
    fn descriptor_kinds() {
        assert_eq!(FixedLocusDescriptor::new(0, &[3]).kind, FixedLocusKind::PointDisc);
        assert_eq!(FixedLocusDescriptor::new(0, &[1, 2]).kind, FixedLocusKind::PointAnnulus);
        let s = FixedLocusDescriptor::new(1, &[3, 2]);
        assert_eq!(s.kind, FixedLocusKind::Stacky);
        assert_eq!(s.automorphism_factor(), 6);
        assert_eq!(s.psi_cap(), 2);
    }

    #[test]
    fn obstruction_examples() {
        let e = obstruction_euler(&FixedLocusDescriptor::new(0, &[2]), 0);
        assert_eq!((e.scalar, e.lambda_power), (rat(1, 2), 1));
        let e = obstruction_euler(&FixedLocusDescriptor::new(0, &[1, 1]), 1);
        assert!(e.scalar.is_zero());
        let e = obstruction_euler(&FixedLocusDescriptor::new(1, &[1]), 0);
        let expected = chern_top_dual_twist(1, &int(-1)).mul(&chern_top_dual_twist(1, &int(0)));
        assert_eq!(e.hodge_numerator, expected);
        // (−c1 − λ)(−c1) = c1² + c1 λ
        assert_eq!(expected.coefficient(&[2], 0), int(1));
        assert_eq!(expected.coefficient(&[1], 1), int(1));
    }

    #[test]
    fn normal_bundle_examples() {
        let n = virtual_normal_euler(&FixedLocusDescriptor::new(0, &[3]));
        assert_eq!((n.scalar, n.lambda_power), (rat(2, 3), 2));
        let n = virtual_normal_euler(&FixedLocusDescriptor::new(0, &[1, 1]));
        assert_eq!((n.scalar, n.lambda_power), (int(2), 2));
        let n = virtual_normal_euler(&FixedLocusDescriptor::new(0, &[1, 1, 1]));
        // cap 0 keeps only λ³ from Π(λ − ψ_i)
        assert_eq!(n.psi_numerator.len(), 1);
        assert_eq!(n.psi_numerator.coefficient(&[0, 0, 0]).coeff(3).unwrap(), int(1));
    }

    #[test]
    fn localization_examples() {
        assert_eq!(localize_open(&key(0, &[2], 0)).unwrap(), rat(1, 4));
        assert_eq!(localize_open(&key(0, &[1, 1, 1], 2)).unwrap(), int(4));
        assert_eq!(localize_open(&key(2, &[1], 0)).unwrap(), rat(7, 5760));
        assert_eq!(localize_open(&key(2, &[3], 1)).unwrap(), rat(7, 640));
        assert_eq!(localize_open(&key(2, &[2, 1], 1)).unwrap(), int(0));
        assert!(matches!(
            localize_open(&key(1, &[1], 2)),
            Err(Error::UnsupportedRegime(_))
        ));
    }

    #[test]
    fn localization_matches_closed_form_small_grid() {
        for d in 1..=5 {
            for h in 1..=4 {
                for parts in partitions(d, h) {
                    for a in -2..=3 {
                        let k = key(0, &parts, a);
                        assert_eq!(localize_open(&k).unwrap(), open_invariant(&k).unwrap(), "{k}");
                    }
                }
            }
        }
        for g in 1..=3 {
            for d in 1..=4 {
                for a in 0..=1 {
                    let k = key(g, &[d], a);
                    assert_eq!(localize_open(&k).unwrap(), open_invariant(&k).unwrap(), "{k}");
                }
            }
        }
    }

    #[test]
    fn symbolic_examples() {
        let s = symbolic_integrand(&key(1, &[1], 2));
        assert_eq!(s.prefactor, winding_factor(1, 2));
        assert_eq!(s.twists, [int(1), int(1), int(-2)]);
        assert_eq!(s.lambda_power, -1);
        let text = s.to_string();
        assert!(text.contains("c_1(E^∨(λ)) · c_1(E^∨(λ)) · c_1(E^∨(-2λ))"), "{text}");
        assert!(text.contains("/ (λ - ψ1)"), "{text}");

        let s = symbolic_integrand(&key(1, &[1], 0));
        assert_eq!(s.hodge_part(), HodgeExpr::term(1, vec![1], 2, int(1)));

        assert!(symbolic_integrand(&key(2, &[1, 1], 1)).vanishes());
    }
}
