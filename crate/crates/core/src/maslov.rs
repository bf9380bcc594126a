//! Generalized Maslov index of totally real boundary conditions.
//!
//! A boundary loop is a map `θ ↦ A(θ)` into invertible complex matrices;
//! the totally real subspace at `θ` is `A(θ)·ℝⁿ`. The index is the winding
//! number of `det(A Ā^{-1}) = det A / conj(det A)`, found by unwrapping the
//! phase on a sample grid that is doubled until every step is below `π/2`.
//!
//! Loops whose entries are single phase monomials `c·e^{iqθ}` also admit an
//! exact path: expand the determinant symbolically, and if it collapses to one
//! monomial `c·e^{iQθ}` the index is `2Q` with no sampling at all.
//!
//! Riemann–Roch bookkeeping for bordered and nodal surfaces lives here too,
//! together with the cohomology dimensions of the two model families,
//! computed as the real dimension of the fixed space of an antilinear
//! involution.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{Float, FloatConst, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::int;
use crate::Rational;

type Sampler<F> = dyn Fn(F) -> Vec<Complex<F>> + Send + Sync;

/// `θ ↦ A(θ)`, row-major `n×n`.
#[derive(Clone)]
pub struct MatrixLoop<F> {
    dim: usize,
    sampler: Arc<Sampler<F>>,
}

impl<F> fmt::Debug for MatrixLoop<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixLoop").field("dim", &self.dim).finish_non_exhaustive()
    }
}

impl<F: Float + FloatConst + Send + Sync + 'static> MatrixLoop<F> {
    pub fn new(dim: usize, sampler: impl Fn(F) -> Vec<Complex<F>> + Send + Sync + 'static) -> Self {
        Self {
            dim,
            sampler: Arc::new(sampler),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sample(&self, theta: F) -> Vec<Complex<F>> {
        let m = (self.sampler)(theta);
        assert_eq!(m.len(), self.dim * self.dim, "sampler returned a matrix of the wrong size");
        m
    }

    pub fn det(&self, theta: F) -> Complex<F> {
        determinant(self.sample(theta), self.dim)
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(dim, move |_| {
            let mut m = vec![Complex::zero(); dim * dim];
            for i in 0..dim {
                m[i * dim + i] = Complex::one();
            }
            m
        })
    }

    /// `θ ↦ i·e^{imθ/2}`, the boundary condition of `L(m)`.
    pub fn line(m: i64) -> Self {
        let half = F::from(m).unwrap() / F::from(2).unwrap();
        Self::new(1, move |t| vec![Complex::<F>::i() * Complex::from_polar(F::one(), half * t)])
    }

    /// Columns `(1, e^{−idθ})` and `(i, −i e^{−idθ})`, the boundary
    /// condition `v = z̄^d ū` of `N(d)`.
    pub fn rank_two(d: i64) -> Self {
        let q = -F::from(d).unwrap();
        Self::new(2, move |t| {
            let e = Complex::from_polar(F::one(), q * t);
            let i = Complex::i();
            vec![Complex::one(), i, e, -(i * e)]
        })
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let n = a.dim + b.dim;
        Self::new(n, move |t| {
            let (ma, mb) = (a.sample(t), b.sample(t));
            let mut m = vec![Complex::zero(); n * n];
            for i in 0..a.dim {
                for j in 0..a.dim {
                    m[i * n + j] = ma[i * a.dim + j];
                }
            }
            for i in 0..b.dim {
                for j in 0..b.dim {
                    m[(a.dim + i) * n + a.dim + j] = mb[i * b.dim + j];
                }
            }
            m
        })
    }

    /// `A(θ)·R(θ)` for a loop of real matrices `R`; the spanned subspaces
    /// are unchanged.
    pub fn retrivialize(&self, real: impl Fn(F) -> Vec<F> + Send + Sync + 'static) -> Self {
        let a = self.clone();
        let n = self.dim;
        Self::new(n, move |t| {
            let (ma, r) = (a.sample(t), real(t));
            assert_eq!(r.len(), n * n);
            let mut m = vec![Complex::zero(); n * n];
            for i in 0..n {
                for j in 0..n {
                    m[i * n + j] = (0..n).fold(Complex::zero(), |acc, k| acc + ma[i * n + k] * r[k * n + j]);
                }
            }
            m
        })
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant<F: Float>(mut m: Vec<Complex<F>>, n: usize) -> Complex<F> {
    let mut det = Complex::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| {
                m[x * n + col]
                    .norm()
                    .partial_cmp(&m[y * n + col].norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty range");
        if m[pivot * n + col].is_zero() {
            return Complex::zero();
        }
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let p = m[col * n + col];
        det = det * p;
        for row in col + 1..n {
            let factor = m[row * n + col] / p;
            for j in col..n {
                let v = m[col * n + j];
                m[row * n + j] = m[row * n + j] - factor * v;
            }
        }
    }
    det
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaslovConfig {
    pub initial_samples: usize,
    /// Refinement stops with [`Error::NonConvergent`] beyond this many samples.
    pub max_samples: usize,
    /// Degeneracy floor relative to the largest sampled `|det A|`.
    pub floor_ratio: f64,
}

impl Default for MaslovConfig {
    fn default() -> Self {
        Self {
            initial_samples: 64,
            max_samples: 1 << 20,
            floor_ratio: 1e-9,
        }
    }
}

fn to_f64<F: Float>(x: F) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Winding number of `det A / conj(det A)` around the unit circle.
///
/// The grid is doubled until two consecutive levels both have every phase
/// step below `π/2` and give the same winding.
pub fn maslov_index<F>(lp: &MatrixLoop<F>, config: &MaslovConfig) -> Result<i64>
where
    F: Float + FloatConst + Send + Sync + 'static,
{
    let two_pi = F::TAU();
    let quarter = F::FRAC_PI_2();
    let mut n = config.initial_samples.max(4);
    let angle = |k: usize, n: usize| two_pi * F::from(k).unwrap() / F::from(n).unwrap();
    let mut dets: Vec<Complex<F>> = (0..n).map(|k| lp.det(angle(k, n))).collect();
    let mut previous: Option<i64> = None;
    loop {
        let max = dets.iter().map(|z| z.norm()).fold(F::zero(), F::max);
        let floor = F::from(config.floor_ratio).unwrap() * max;
        if let Some(k) = dets.iter().position(|z| z.norm().partial_cmp(&floor) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::DegenerateFrame {
                theta: to_f64(angle(k, n)),
                magnitude: to_f64(dets[k].norm()),
                floor: to_f64(floor),
            });
        }
        // φ = det / conj(det) = (det / |det|)².
        let phases: Vec<Complex<F>> = dets
            .iter()
            .map(|z| {
                let u = z / z.norm();
                u * u
            })
            .collect();
        let mut total = F::zero();
        let mut smooth = true;
        for k in 0..n {
            let step = (phases[(k + 1) % n] * phases[k].conj()).arg();
            if step.abs() >= quarter {
                smooth = false;
                break;
            }
            total = total + step;
        }
        if smooth {
            let winding = (to_f64(total) / (2.0 * PI)).round() as i64;
            // A coarse grid can alias a fast loop into small steps, so the
            // answer is accepted only once a finer grid reproduces it.
            if previous == Some(winding) {
                return Ok(winding);
            }
            previous = Some(winding);
        } else {
            previous = None;
        }
        if 2 * n > config.max_samples {
            return Err(Error::NonConvergent {
                budget: config.max_samples,
            });
        }
        let mut refined = Vec::with_capacity(2 * n);
        for (k, z) in dets.iter().enumerate() {
            refined.push(*z);
            refined.push(lp.det(angle(2 * k + 1, 2 * n)));
        }
        dets = refined;
        n *= 2;
    }
}

/// Degree of the complex double, which equals the Maslov index.
pub fn double_degree<F>(lp: &MatrixLoop<F>, config: &MaslovConfig) -> Result<i64>
where
    F: Float + FloatConst + Send + Sync + 'static,
{
    maslov_index(lp, config)
}

/// Exact index when `det B` on each diagonal block is `e^{ikθ}`.
pub fn symbolic_phase_index(blocks: &[i64]) -> i64 {
    blocks.iter().sum()
}

pub type ComplexRational = Complex<Rational>;

/// `c·e^{iqθ}` with complex rational `c` and rational `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseMonomial {
    pub coef: ComplexRational,
    pub q: Rational,
}

impl PhaseMonomial {
    pub fn zero() -> Self {
        Self {
            coef: Complex::new(int(0), int(0)),
            q: int(0),
        }
    }

    pub fn eval(&self, theta: f64) -> Complex<f64> {
        let c = Complex::new(
            self.coef.re.to_f64().unwrap_or(f64::NAN),
            self.coef.im.to_f64().unwrap_or(f64::NAN),
        );
        c * Complex::from_polar(1.0, self.q.to_f64().unwrap_or(f64::NAN) * theta)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n.into(), d.into()))
        }
        None => Ok(int(s.parse().map_err(|_| bad())?)),
    }
}

/// `i` with an optional rational multiplier: `""`, `"+"`, `"-"`, `"3/2"`.
fn parse_imaginary(s: &str) -> Result<Rational> {
    match s.trim() {
        "" | "+" => Ok(int(1)),
        "-" => Ok(int(-1)),
        t => parse_rational(t.trim_start_matches('+').trim_end_matches('*')),
    }
}

fn parse_coefficient(s: &str) -> Result<ComplexRational> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Complex::new(int(1), int(0)));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(parse_rational(s)?, int(0)));
    };
    // Split `a±b` at the last sign that is not the leading one.
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .next_back();
    match split {
        Some(k) => Ok(Complex::new(parse_rational(&body[..k])?, parse_imaginary(&body[k..])?)),
        None => Ok(Complex::new(int(0), parse_imaginary(body)?)),
    }
}

/// Grammar: `COEF`, `exp(Q)`, or `COEF*exp(Q)`, where `exp(Q)` stands for
/// `e^{iQθ}`, `Q` is a rational such as `-3/2`, and `COEF` is one of `a`,
/// `bi`, `a+bi`, `a-bi`, `i`, `-i` with rational `a`, `b` (parentheses
/// allowed).
impl FromStr for PhaseMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (coef, q) = match t.find("exp(") {
            Some(k) => {
                let inner = t[k + 4..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed exp( in {s:?}")))?;
                let c = t[..k].trim_end_matches('*');
                let c = match c {
                    "-" => "-1",
                    "+" => "1",
                    other => other,
                };
                (parse_coefficient(c)?, parse_rational(inner)?)
            }
            None => (parse_coefficient(&t)?, int(0)),
        };
        Ok(Self { coef, q })
    }
}

/// Matrix of phase monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprMatrix {
    dim: usize,
    entries: Vec<PhaseMonomial>,
}

impl ExprMatrix {
    pub fn new(rows: Vec<Vec<PhaseMonomial>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Parse("matrix must be square and nonempty".into()));
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|e| e.as_ref().parse()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `det A` as a sum of phase monomials, grouped by frequency.
    pub fn symbolic_determinant(&self) -> BTreeMap<Rational, ComplexRational> {
        let n = self.dim;
        let mut out: BTreeMap<Rational, ComplexRational> = BTreeMap::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, 1, &mut |p, sign| {
            let mut coef = Complex::new(int(sign), int(0));
            let mut q = int(0);
            for (i, &j) in p.iter().enumerate() {
                let e = &self.entries[i * n + j];
                coef *= e.coef.clone();
                q += &e.q;
            }
            if !coef.is_zero() {
                let slot = out.entry(q).or_insert_with(|| Complex::new(int(0), int(0)));
                *slot = slot.clone() + coef;
            }
        });
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `Some(2Q)` when `det A = c·e^{iQθ}` is a single monomial; `None` when
    /// the determinant has several frequencies and sampling is needed.
    pub fn exact_index(&self) -> Result<Option<i64>> {
        let det = self.symbolic_determinant();
        match det.len() {
            0 => Err(Error::DegenerateFrame {
                theta: 0.0,
                magnitude: 0.0,
                floor: 0.0,
            }),
            1 => {
                let q = det.keys().next().unwrap();
                let twice = q * int(2);
                if !twice.is_integer() {
                    return Err(Error::Parse(format!(
                        "det A ∝ e^{{i·{q}θ}} does not close into a loop of subspaces"
                    )));
                }
                Ok(Some(twice.to_integer().to_i64().expect("index fits in i64")))
            }
            _ => Ok(None),
        }
    }

    pub fn to_loop(&self) -> MatrixLoop<f64> {
        let m = self.clone();
        MatrixLoop::new(self.dim, move |t| m.entries.iter().map(|e| e.eval(t)).collect())
    }
}

/// Heap-style recursive enumeration with permutation signs.
fn permutations(p: &mut Vec<usize>, k: usize, sign: i64, f: &mut impl FnMut(&[usize], i64)) {
    if k == p.len() {
        f(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, if i == k { sign } else { -sign }, f);
        p.swap(k, i);
    }
}

/// Type `(g;h)`: genus `g` with `h` boundary circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BorderedType {
    pub g: u32,
    pub h: u32,
}

impl BorderedType {
    pub const DISC: Self = Self { g: 0, h: 1 };

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.g as i64 - self.h as i64
    }
}

/// `χ = μ + n·χ(Σ)`.
pub fn bordered_rr_chi(mu: i64, rank: u32, ty: BorderedType) -> i64 {
    mu + rank as i64 * ty.euler_characteristic()
}

/// `(g̃, h, k)` of the complex double: `(2g+h−1, h, 0)`.
pub fn double_type(ty: BorderedType) -> (u32, u32, u32) {
    (2 * ty.g + ty.h - 1, ty.h, 0)
}

/// `χ = μ + n(1 − g̃)`.
pub fn nodal_rr_chi(mu: i64, rank: u32, g_tilde: u32) -> i64 {
    mu + rank as i64 * (1 - g_tilde as i64)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodalBundleData {
    pub closed_degrees: Vec<i64>,
    pub bordered_indices: Vec<i64>,
}

/// `2·Σ deg + Σ μ`.
pub fn nodal_maslov(data: &NodalBundleData) -> i64 {
    2 * data.closed_degrees.iter().sum::<i64>() + data.bordered_indices.iter().sum::<i64>()
}

/// The two model families on the disc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleBundle {
    /// `L(k)`; `k ≥ 0` is the `L(m)` family and `k = −m−1` the dual one.
    Line(i64),
    /// `N(d)`, rank 2.
    RankTwo(u64),
}

impl ExampleBundle {
    pub fn rank(&self) -> u32 {
        match self {
            Self::Line(_) => 1,
            Self::RankTwo(_) => 2,
        }
    }

    pub fn maslov_exact(&self) -> i64 {
        match *self {
            Self::Line(k) => symbolic_phase_index(&[k]),
            Self::RankTwo(d) => symbolic_phase_index(&[-2 * d as i64]),
        }
    }

    pub fn boundary_loop(&self) -> MatrixLoop<f64> {
        match *self {
            Self::Line(k) => MatrixLoop::line(k),
            Self::RankTwo(d) => MatrixLoop::rank_two(d as i64),
        }
    }

    pub fn boundary_matrix(&self) -> ExprMatrix {
        let p = |s: String| s.parse::<PhaseMonomial>().expect("well-formed entry");
        let rows = match *self {
            Self::Line(k) => vec![vec![p(format!("i*exp({k}/2)"))]],
            Self::RankTwo(d) => vec![
                vec![p("1".into()), p("i".into())],
                vec![p(format!("exp(-{d})")), p(format!("-i*exp(-{d})"))],
            ],
        };
        ExprMatrix::new(rows).expect("square")
    }
}

/// Real dimension of `{x ∈ ℂⁿ : x_p = s_p·conj(x_{π(p)})}`.
fn antilinear_fixed_dimension(perm: &[usize], signs: &[i64]) -> usize {
    let n = perm.len();
    // Unknowns: Re x_p at 2p, Im x_p at 2p+1.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(2 * n);
    for p in 0..n {
        let s = int(signs[p]);
        let (q, mut re, mut im) = (perm[p], vec![int(0); 2 * n], vec![int(0); 2 * n]);
        re[2 * p] += int(1);
        re[2 * q] -= &s;
        im[2 * p + 1] += int(1);
        im[2 * q + 1] += &s;
        rows.push(re);
        rows.push(im);
    }
    2 * n - rank(rows)
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// `(dim H^0, dim H^1)` over ℝ, from the fixed space of the conjugation on
/// the complex cohomology of the double.
pub fn example_cohomology_dims(bundle: ExampleBundle) -> (usize, usize) {
    match bundle {
        ExampleBundle::Line(k) if k >= 0 => {
            // H^0: (a_0..a_m) with a_j = −conj(a_{m−j}).
            let m = k as usize;
            let perm: Vec<usize> = (0..=m).map(|j| m - j).collect();
            (antilinear_fixed_dimension(&perm, &vec![-1; m + 1]), 0)
        }
        ExampleBundle::Line(k) => {
            // H^1: (a_1..a_m) with a_{m+1−j} = −conj(a_j).
            let m = (-k - 1) as usize;
            let perm: Vec<usize> = (0..m).map(|j| m - 1 - j).collect();
            (0, antilinear_fixed_dimension(&perm, &vec![-1; m]))
        }
        ExampleBundle::RankTwo(d) => {
            // H^1: (a_{−(d−1)}..a_{−1}, a_1..a_{d−1}) mapped to the reversed
            // conjugate list, i.e. a_{−k} = conj(a_k).
            let n = 2 * (d as usize).saturating_sub(1);
            let perm: Vec<usize> = (0..n).map(|p| n - 1 - p).collect();
            (0, antilinear_fixed_dimension(&perm, &vec![1; n]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn cfg() -> MaslovConfig {
        MaslovConfig::default()
    }

    #[test]
    fn model_family_loops() {
        assert_eq!(maslov_index(&MatrixLoop::<f64>::line(4), &cfg()).unwrap(), 4);
        assert_eq!(maslov_index(&MatrixLoop::<f64>::line(-7), &cfg()).unwrap(), -7);
        assert_eq!(maslov_index(&MatrixLoop::<f64>::identity(3), &cfg()).unwrap(), 0);
        assert_eq!(maslov_index(&MatrixLoop::<f64>::rank_two(3), &cfg()).unwrap(), -6);
        assert_eq!(double_degree(&MatrixLoop::<f32>::line(5), &cfg()).unwrap(), 5);
    }

    #[test]
    fn refinement_kicks_in() {
        let small = MaslovConfig {
            initial_samples: 4,
            ..cfg()
        };
        // 4 and 8 samples alias the ninefold loop; refinement recovers it.
        assert_eq!(maslov_index(&MatrixLoop::<f64>::line(9), &small).unwrap(), 9);
        let tight = MaslovConfig {
            initial_samples: 4,
            max_samples: 16,
            ..cfg()
        };
        assert_eq!(
            maslov_index(&MatrixLoop::<f64>::line(9), &tight),
            Err(Error::NonConvergent { budget: 16 })
        );
    }

    #[test]
    fn degenerate_frame_is_reported() {
        let lp = MatrixLoop::<f64>::new(1, |t: f64| vec![Complex::new(t.cos(), 0.0)]);
        assert!(matches!(maslov_index(&lp, &cfg()), Err(Error::DegenerateFrame { .. })));
    }

    #[test]
    fn exact_paths() {
        for m in -10..=10 {
            let b = ExampleBundle::Line(m);
            assert_eq!(b.maslov_exact(), m);
            assert_eq!(b.boundary_matrix().exact_index().unwrap(), Some(m));
        }
        for d in 1..=10 {
            let b = ExampleBundle::RankTwo(d);
            assert_eq!(b.boundary_matrix().exact_index().unwrap(), Some(-2 * d as i64));
        }
        let mixed = ExprMatrix::parse(&[vec!["1", "exp(1)"], vec!["1", "2"]]).unwrap();
        assert_eq!(mixed.exact_index().unwrap(), None);
        assert_eq!(maslov_index(&mixed.to_loop(), &cfg()).unwrap(), 0);
    }

    #[test]
    fn entry_grammar() {
        let m: PhaseMonomial = "(1/2-3i)*exp(-5/2)".parse().unwrap();
        assert_eq!(m.coef, Complex::new(rat(1, 2), int(-3)));
        assert_eq!(m.q, rat(-5, 2));
        let m: PhaseMonomial = "-i * exp(3)".parse().unwrap();
        assert_eq!(m.coef, Complex::new(int(0), int(-1)));
        let m: PhaseMonomial = "exp(2)".parse().unwrap();
        assert_eq!(m.coef, Complex::new(int(1), int(0)));
        let m: PhaseMonomial = "-exp(2)".parse().unwrap();
        assert_eq!(m.coef, Complex::new(int(-1), int(0)));
        let m: PhaseMonomial = "2/3i".parse().unwrap();
        assert_eq!(m.coef, Complex::new(int(0), rat(2, 3)));
        let m: PhaseMonomial = "-4".parse().unwrap();
        assert_eq!((m.coef, m.q), (Complex::new(int(-4), int(0)), int(0)));
        assert!("exp(1".parse::<PhaseMonomial>().is_err());
        assert!("x".parse::<PhaseMonomial>().is_err());
    }

    #[test]
    fn cohomology_dims() {
        assert_eq!(example_cohomology_dims(ExampleBundle::Line(0)), (1, 0));
        assert_eq!(example_cohomology_dims(ExampleBundle::Line(3)), (4, 0));
        assert_eq!(example_cohomology_dims(ExampleBundle::Line(-4)), (0, 3));
        assert_eq!(example_cohomology_dims(ExampleBundle::RankTwo(4)), (0, 6));
        assert_eq!(example_cohomology_dims(ExampleBundle::RankTwo(1)), (0, 0));
    }

    #[test]
    fn riemann_roch_on_examples() {
        for k in -10..=10 {
            let b = ExampleBundle::Line(k);
            let (h0, h1) = example_cohomology_dims(b);
            assert_eq!(bordered_rr_chi(b.maslov_exact(), 1, BorderedType::DISC), h0 as i64 - h1 as i64);
            let (gt, _, _) = double_type(BorderedType::DISC);
            assert_eq!(nodal_rr_chi(b.maslov_exact(), 1, gt), h0 as i64 - h1 as i64);
        }
        for d in 1..=10 {
            let b = ExampleBundle::RankTwo(d);
            let (h0, h1) = example_cohomology_dims(b);
            assert_eq!(bordered_rr_chi(b.maslov_exact(), 2, BorderedType::DISC), h0 as i64 - h1 as i64);
        }
    }

    #[test]
    fn types_and_nodes() {
        assert_eq!(double_type(BorderedType { g: 0, h: 1 }), (0, 1, 0));
        assert_eq!(double_type(BorderedType { g: 0, h: 2 }), (1, 2, 0));
        assert_eq!(double_type(BorderedType { g: 1, h: 2 }), (3, 2, 0));
        assert_eq!(nodal_rr_chi(0, 2, 1), 0);
        assert_eq!(nodal_rr_chi(-6, 2, 0), -4);
        assert_eq!(nodal_maslov(&NodalBundleData::default()), 0);
        let d = NodalBundleData {
            closed_degrees: vec![3],
            bordered_indices: vec![-2],
        };
        assert_eq!(nodal_maslov(&d), 4);
        let smooth = NodalBundleData {
            closed_degrees: vec![],
            bordered_indices: vec![5],
        };
        assert_eq!(nodal_maslov(&smooth), 5);
    }

    fn real_loop(c: [f64; 4]) -> impl Fn(f64) -> Vec<f64> + Send + Sync + 'static {
        // Diagonally dominant, hence invertible for every θ.
        move |t: f64| {
            vec![
                3.0 + c[0] * t.cos(),
                c[1] * t.sin(),
                c[2] * (2.0 * t).cos(),
                -3.0 + c[3] * t.sin(),
            ]
        }
    }

    proptest! {
        #[test]
        fn trivialization_independence(d in 1i64..6, c in prop::array::uniform4(-1.0f64..1.0)) {
            let base = MatrixLoop::<f64>::rank_two(d);
            let moved = base.retrivialize(real_loop(c));
            prop_assert_eq!(maslov_index(&moved, &cfg()).unwrap(), maslov_index(&base, &cfg()).unwrap());
        }

        #[test]
        fn additivity(m in -8i64..8, d in 1i64..6) {
            let a = MatrixLoop::<f64>::line(m);
            let b = MatrixLoop::<f64>::rank_two(d);
            let sum = maslov_index(&a.block_diag(&b), &cfg()).unwrap();
            prop_assert_eq!(sum, maslov_index(&a, &cfg()).unwrap() + maslov_index(&b, &cfg()).unwrap());
        }

        #[test]
        fn winding_robustness(m in -30i64..30, n in 6usize..9) {
            let lp = MatrixLoop::<f64>::line(m);
            let full = MaslovConfig { initial_samples: 1 << n, ..cfg() };
            let half = MaslovConfig { initial_samples: 1 << (n - 1), ..cfg() };
            prop_assert_eq!(maslov_index(&lp, &full).unwrap(), maslov_index(&lp, &half).unwrap());
            prop_assert_eq!(maslov_index(&lp, &full).unwrap(), m);
        }
    }
}
