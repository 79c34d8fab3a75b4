//! Real trigonometric basis on the unit-period 2-torus.
//!
//! A [`TrigMode`] is the product `trig(2π m₁ θ₁) · trig(2π m₂ θ₂)` where each
//! factor is a sine (parity 0) or a cosine (parity 1). Frequencies are
//! non-negative; the complex-exponential form is never materialized.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of Z₂ selecting the trigonometric factor: `Sin` is 0, `Cos` is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Parity {
    Sin,
    Cos,
}

impl Parity {
    pub const fn bit(self) -> u8 {
        match self {
            Parity::Sin => 0,
            Parity::Cos => 1,
        }
    }

    pub const fn from_bit(bit: u8) -> Parity {
        if bit % 2 == 0 {
            Parity::Sin
        } else {
            Parity::Cos
        }
    }

    pub const fn flip(self) -> Parity {
        match self {
            Parity::Sin => Parity::Cos,
            Parity::Cos => Parity::Sin,
        }
    }

    /// `(-1)^parity`.
    pub const fn sign(self) -> f64 {
        match self {
            Parity::Sin => 1.0,
            Parity::Cos => -1.0,
        }
    }

    #[inline]
    pub fn apply(self, angle: f64) -> f64 {
        match self {
            Parity::Sin => angle.sin(),
            Parity::Cos => angle.cos(),
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl TryFrom<u8> for Parity {
    type Error = String;

    fn try_from(value: u8) -> std::result::Result<Self, Self::Error> {
        match value {
            0 => Ok(Parity::Sin),
            1 => Ok(Parity::Cos),
            other => Err(format!("parity must be 0 or 1, got {other}")),
        }
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        p.bit()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    First,
    Second,
}

/// One Fourier basis function Λ^{α,β}_{m₁,m₂}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrigMode {
    pub m1: u32,
    pub m2: u32,
    pub alpha: Parity,
    pub beta: Parity,
}

impl TrigMode {
    pub const fn new(m1: u32, m2: u32, alpha: Parity, beta: Parity) -> Self {
        TrigMode {
            m1,
            m2,
            alpha,
            beta,
        }
    }

    /// Shorthand taking parities as bits, e.g. `TrigMode::bits(1, 1, 0, 0)`.
    pub const fn bits(m1: u32, m2: u32, alpha: u8, beta: u8) -> Self {
        TrigMode::new(m1, m2, Parity::from_bit(alpha), Parity::from_bit(beta))
    }

    /// The all-cosine zero-frequency mode, identically 1.
    pub const fn constant() -> Self {
        TrigMode::new(0, 0, Parity::Cos, Parity::Cos)
    }

    pub fn eval(&self, p: TorusPoint) -> f64 {
        self.alpha.apply(TAU * self.m1 as f64 * p.theta1)
            * self.beta.apply(TAU * self.m2 as f64 * p.theta2)
    }

    /// Exact symbolic derivative along `axis`: `(scale, mode)` with
    /// `∂Λ = scale · mode`. The parity on the differentiated axis flips.
    pub fn partial(&self, axis: Axis) -> (f64, TrigMode) {
        match axis {
            Axis::First => (
                self.alpha.sign() * TAU * self.m1 as f64,
                TrigMode {
                    alpha: self.alpha.flip(),
                    ..*self
                },
            ),
            Axis::Second => (
                self.beta.sign() * TAU * self.m2 as f64,
                TrigMode {
                    beta: self.beta.flip(),
                    ..*self
                },
            ),
        }
    }

    /// True when a sine factor sits on a zero frequency.
    pub fn is_identically_zero(&self) -> bool {
        (self.m1 == 0 && self.alpha == Parity::Sin) || (self.m2 == 0 && self.beta == Parity::Sin)
    }

    pub fn is_constant(&self) -> bool {
        self.m1 == 0 && self.m2 == 0
    }

    pub fn is_two_dimensional(&self) -> bool {
        self.m1 >= 1 && self.m2 >= 1
    }

    pub fn max_frequency(&self) -> u32 {
        self.m1.max(self.m2)
    }

    pub fn frequency(&self, axis: Axis) -> u32 {
        match axis {
            Axis::First => self.m1,
            Axis::Second => self.m2,
        }
    }

    pub fn parity(&self, axis: Axis) -> Parity {
        match axis {
            Axis::First => self.alpha,
            Axis::Second => self.beta,
        }
    }

    /// Deterministic order used to break ties between equal coefficients.
    pub fn tie_key(&self) -> (u32, u32, u8, u8) {
        (
            self.m1 + self.m2,
            self.m1,
            self.alpha.bit(),
            self.beta.bit(),
        )
    }
}

impl fmt::Display for TrigMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.m1,
            self.m2,
            self.alpha.bit(),
            self.beta.bit()
        )
    }
}

impl std::str::FromStr for TrigMode {
    type Err = Error;

    /// Parses `m1,m2,alpha,beta`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .trim()
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "expected m1,m2,alpha,beta; got {s:?}"
            )));
        }
        let num = |i: usize| -> Result<u32> {
            parts[i]
                .trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("{:?}: {e}", parts[i])))
        };
        let par = |i: usize| -> Result<Parity> {
            let bit = num(i)?;
            u8::try_from(bit)
                .map_err(|e| Error::Parse(e.to_string()))
                .and_then(|b| Parity::try_from(b).map_err(Error::Parse))
        };
        Ok(TrigMode::new(num(0)?, num(1)?, par(2)?, par(3)?))
    }
}

/// Wraps a real into `[0, 1)`.
pub fn wrap_unit(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// A point of T² = [0,1)².
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub theta1: f64,
    pub theta2: f64,
}

impl TorusPoint {
    pub fn new(theta1: f64, theta2: f64) -> Self {
        TorusPoint {
            theta1: wrap_unit(theta1),
            theta2: wrap_unit(theta2),
        }
    }

    pub fn coords(&self) -> [f64; 2] {
        [self.theta1, self.theta2]
    }

    /// Signed shortest displacement `other - self` on each axis, in `[-1/2, 1/2)`.
    pub fn displacement_to(&self, other: TorusPoint) -> [f64; 2] {
        let d = |a: f64, b: f64| {
            let x = (b - a).rem_euclid(1.0);
            if x >= 0.5 {
                x - 1.0
            } else {
                x
            }
        };
        [d(self.theta1, other.theta1), d(self.theta2, other.theta2)]
    }

    /// Flat-torus geodesic distance.
    pub fn distance(&self, other: TorusPoint) -> f64 {
        let [a, b] = self.displacement_to(other);
        a.hypot(b)
    }

    pub fn offset(&self, d1: f64, d2: f64) -> TorusPoint {
        TorusPoint::new(self.theta1 + d1, self.theta2 + d2)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6})", self.theta1, self.theta2)
    }
}

/// Reduces a rational into `[0, 1)`.
pub fn reduce_unit(r: &BigRational) -> BigRational {
    r - r.floor()
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact lattice point on T², used for closed-form critical points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalTorusPoint {
    pub theta1: BigRational,
    pub theta2: BigRational,
}

impl RationalTorusPoint {
    pub fn new(theta1: BigRational, theta2: BigRational) -> Self {
        RationalTorusPoint {
            theta1: reduce_unit(&theta1),
            theta2: reduce_unit(&theta2),
        }
    }

    pub fn from_fractions(p1: i64, q1: i64, p2: i64, q2: i64) -> Self {
        RationalTorusPoint::new(rational(p1, q1), rational(p2, q2))
    }

    pub fn to_point(&self) -> TorusPoint {
        TorusPoint::new(
            self.theta1.to_f64().unwrap_or(f64::NAN),
            self.theta2.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn coordinate(&self, axis: Axis) -> &BigRational {
        match axis {
            Axis::First => &self.theta1,
            Axis::Second => &self.theta2,
        }
    }
}

impl fmt::Display for RationalTorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            fmt_rational(&self.theta1),
            fmt_rational(&self.theta2)
        )
    }
}

/// Formats a rational as `p/q` (or `p` when the denominator is 1).
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact value of `trig(2π·freq·t)` when `4·freq·t` is an integer, i.e. the
/// angle is a multiple of π/2. Returns `None` otherwise.
pub fn quarter_turn_value(parity: Parity, freq: u32, t: &BigRational) -> Option<i8> {
    let x = t * BigRational::from_integer(BigInt::from(4u64 * freq as u64));
    if !x.is_integer() {
        return None;
    }
    let n = x.to_integer().mod_floor(&BigInt::from(4)).to_u8()?;
    let v = match parity {
        Parity::Sin => [0, 1, 0, -1][n as usize],
        Parity::Cos => [1, 0, -1, 0][n as usize],
    };
    Some(v)
}

/// Exact value of a mode at a point where every angle is a multiple of π/2.
pub fn mode_exact_value(mode: &TrigMode, p: &RationalTorusPoint) -> Option<i8> {
    Some(
        quarter_turn_value(mode.alpha, mode.m1, &p.theta1)?
            * quarter_turn_value(mode.beta, mode.m2, &p.theta2)?,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: f64,
    pub mode: TrigMode,
}

/// A finite real trigonometric polynomial. Modes are unique and zero
/// coefficients are dropped; term order is the order of first appearance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct TrigPolynomial {
    terms: Vec<Term>,
}

/// Per-axis factor value and its first two derivatives.
#[inline]
fn factor_derivs(parity: Parity, freq: u32, theta: f64) -> (f64, f64, f64) {
    let w = TAU * freq as f64;
    let (s, c) = (w * theta).sin_cos();
    match parity {
        Parity::Sin => (s, w * c, -w * w * s),
        Parity::Cos => (c, -w * s, -w * w * c),
    }
}

impl TrigPolynomial {
    pub fn zero() -> Self {
        TrigPolynomial::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (f64, TrigMode)>>(terms: I) -> Self {
        let mut out: Vec<Term> = Vec::new();
        for (coeff, mode) in terms {
            match out.iter_mut().find(|t| t.mode == mode) {
                Some(t) => t.coeff += coeff,
                None => out.push(Term { coeff, mode }),
            }
        }
        out.retain(|t| t.coeff != 0.0);
        TrigPolynomial { terms: out }
    }

    pub fn single(coeff: f64, mode: TrigMode) -> Self {
        TrigPolynomial::from_terms([(coeff, mode)])
    }

    pub fn constant(c: f64) -> Self {
        TrigPolynomial::single(c, TrigMode::constant())
    }

    /// `lead + mu · pert`.
    pub fn two_term(lead: TrigMode, mu: f64, pert: TrigMode) -> Self {
        TrigPolynomial::from_terms([(1.0, lead), (mu, pert)])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mode: &TrigMode) -> f64 {
        self.terms
            .iter()
            .find(|t| t.mode == *mode)
            .map_or(0.0, |t| t.coeff)
    }

    pub fn max_frequency(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.mode.max_frequency())
            .max()
            .unwrap_or(0)
    }

    pub fn plus(&self, other: &TrigPolynomial) -> TrigPolynomial {
        TrigPolynomial::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|t| (t.coeff, t.mode)),
        )
    }

    pub fn scaled(&self, factor: f64) -> TrigPolynomial {
        TrigPolynomial::from_terms(self.terms.iter().map(|t| (t.coeff * factor, t.mode)))
    }

    pub fn eval(&self, p: TorusPoint) -> f64 {
        self.terms.iter().map(|t| t.coeff * t.mode.eval(p)).sum()
    }

    pub fn gradient(&self, p: TorusPoint) -> [f64; 2] {
        let mut g = [0.0; 2];
        for t in &self.terms {
            let (v1, d1, _) = factor_derivs(t.mode.alpha, t.mode.m1, p.theta1);
            let (v2, d2, _) = factor_derivs(t.mode.beta, t.mode.m2, p.theta2);
            g[0] += t.coeff * d1 * v2;
            g[1] += t.coeff * v1 * d2;
        }
        g
    }

    /// Symmetric second-derivative matrix; both off-diagonal entries come
    /// from the same accumulator.
    pub fn hessian(&self, p: TorusPoint) -> [[f64; 2]; 2] {
        let (mut h11, mut h12, mut h22) = (0.0, 0.0, 0.0);
        for t in &self.terms {
            let (v1, d1, dd1) = factor_derivs(t.mode.alpha, t.mode.m1, p.theta1);
            let (v2, d2, dd2) = factor_derivs(t.mode.beta, t.mode.m2, p.theta2);
            h11 += t.coeff * dd1 * v2;
            h12 += t.coeff * d1 * d2;
            h22 += t.coeff * v1 * dd2;
        }
        [[h11, h12], [h12, h22]]
    }

    /// Symbolic partial derivative as a new polynomial.
    pub fn partial(&self, axis: Axis) -> TrigPolynomial {
        TrigPolynomial::from_terms(self.terms.iter().map(|t| {
            let (s, m) = t.mode.partial(axis);
            (t.coeff * s, m)
        }))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for TrigPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·Λ{}", t.coeff, t.mode)?;
        }
        Ok(())
    }
}

pub fn mode_eval(mode: &TrigMode, p: TorusPoint) -> f64 {
    mode.eval(p)
}

pub fn mode_partial(mode: &TrigMode, axis: Axis) -> (f64, TrigMode) {
    mode.partial(axis)
}

pub fn poly_eval(poly: &TrigPolynomial, p: TorusPoint) -> f64 {
    poly.eval(p)
}

pub fn poly_gradient(poly: &TrigPolynomial, p: TorusPoint) -> [f64; 2] {
    poly.gradient(p)
}

pub fn poly_hessian(poly: &TrigPolynomial, p: TorusPoint) -> [[f64; 2]; 2] {
    poly.hessian(p)
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    m1: u32,
    m2: u32,
    alpha: Parity,
    beta: Parity,
    coeff: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl TryFrom<PolyJson> for TrigPolynomial {
    type Error = String;

    fn try_from(json: PolyJson) -> std::result::Result<Self, Self::Error> {
        if let Some(t) = json.terms.iter().find(|t| !t.coeff.is_finite()) {
            return Err(format!(
                "non-finite coefficient on mode ({},{})",
                t.m1, t.m2
            ));
        }
        Ok(TrigPolynomial::from_terms(json.terms.into_iter().map(
            |t| (t.coeff, TrigMode::new(t.m1, t.m2, t.alpha, t.beta)),
        )))
    }
}

impl From<TrigPolynomial> for PolyJson {
    fn from(p: TrigPolynomial) -> Self {
        PolyJson {
            terms: p
                .terms
                .into_iter()
                .map(|t| TermJson {
                    m1: t.mode.m1,
                    m2: t.mode.m2,
                    alpha: t.mode.alpha,
                    beta: t.mode.beta,
                    coeff: t.coeff,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pt(a: f64, b: f64) -> TorusPoint {
        TorusPoint::new(a, b)
    }

    #[test]
    fn parity_addition_is_mod_two() {
        assert_eq!(Parity::Cos + Parity::Cos, Parity::Sin);
        assert_eq!(Parity::Sin + Parity::Cos, Parity::Cos);
    }

    #[test]
    fn mode_eval_examples() {
        assert_eq!(TrigMode::bits(1, 1, 1, 1).eval(pt(0.0, 0.0)), 1.0);
        assert!((TrigMode::bits(1, 1, 0, 1).eval(pt(0.25, 0.0)) - 1.0).abs() < 1e-15);
        // cos(π/2)·cos(π/2)
        let v = TrigMode::bits(2, 3, 1, 1).eval(pt(1.0 / 8.0, 1.0 / 12.0));
        assert!(v.abs() < 1e-15, "{v}");
    }

    #[test]
    fn zero_frequency_modes() {
        let p = pt(0.37, 0.81);
        assert_eq!(TrigMode::bits(0, 0, 1, 1).eval(p), 1.0);
        assert_eq!(TrigMode::bits(0, 0, 0, 1).eval(p), 0.0);
        assert!(TrigMode::bits(0, 0, 1, 0).is_identically_zero());
        assert!(!TrigMode::constant().is_identically_zero());
    }

    #[test]
    fn partial_examples() {
        let (s, m) = TrigMode::bits(1, 1, 0, 0).partial(Axis::First);
        assert!((s - 2.0 * PI).abs() < 1e-15);
        assert_eq!(m, TrigMode::bits(1, 1, 1, 0));

        let (s, m) = TrigMode::bits(1, 2, 1, 1).partial(Axis::Second);
        assert!((s + 4.0 * PI).abs() < 1e-15);
        assert_eq!(m, TrigMode::bits(1, 2, 1, 0));

        let (s, _) = TrigMode::bits(0, 1, 1, 0).partial(Axis::First);
        assert_eq!(s, 0.0);
    }

    #[test]
    fn second_partial_returns_original_mode() {
        for m1 in 0..4 {
            for m2 in 0..4 {
                for a in 0..2 {
                    for b in 0..2 {
                        let mode = TrigMode::bits(m1, m2, a, b);
                        for (axis, f) in [(Axis::First, m1), (Axis::Second, m2)] {
                            let (s1, once) = mode.partial(axis);
                            let (s2, twice) = once.partial(axis);
                            assert_eq!(twice, mode);
                            let expect = -(TAU * f as f64).powi(2);
                            assert!((s1 * s2 - expect).abs() < 1e-9);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn poly_eval_examples() {
        assert_eq!(TrigPolynomial::zero().eval(pt(0.3, 0.4)), 0.0);
        let theta =
            TrigPolynomial::two_term(TrigMode::bits(1, 1, 0, 0), 0.03, TrigMode::bits(3, 5, 1, 1));
        assert!((theta.eval(pt(0.25, 0.25)) - 1.0).abs() < 1e-15);
        let p = TrigPolynomial::single(2.0, TrigMode::bits(1, 1, 1, 1));
        assert!((p.eval(pt(0.5, 0.0)) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn gradient_and_hessian_examples() {
        let c = TrigPolynomial::constant(3.0);
        assert_eq!(c.gradient(pt(0.1, 0.2)), [0.0, 0.0]);
        assert_eq!(c.hessian(pt(0.1, 0.2)), [[0.0; 2]; 2]);

        let ss = TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 0, 0));
        let g = ss.gradient(pt(0.25, 0.25));
        assert!(g[0].abs() < 1e-14 && g[1].abs() < 1e-14);
        let g = ss.gradient(pt(0.0, 0.25));
        assert!((g[0] - TAU).abs() < 1e-14 && g[1].abs() < 1e-14);

        let four_pi2 = 4.0 * PI * PI;
        let h = ss.hessian(pt(0.25, 0.25));
        assert!((h[0][0] + four_pi2).abs() < 1e-12);
        assert!((h[1][1] + four_pi2).abs() < 1e-12);
        assert!(h[0][1].abs() < 1e-12);

        let cc = TrigPolynomial::single(1.0, TrigMode::bits(1, 1, 1, 1));
        let h = cc.hessian(pt(0.0, 0.0));
        assert!((h[0][0] + four_pi2).abs() < 1e-12 && (h[1][1] + four_pi2).abs() < 1e-12);
        assert_eq!(h[0][1], h[1][0]);
    }

    #[test]
    fn construction_merges_and_drops_zeros() {
        let m = TrigMode::bits(1, 2, 0, 1);
        let p = TrigPolynomial::from_terms([(1.0, m), (0.5, m), (0.0, TrigMode::bits(3, 3, 1, 1))]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.coefficient(&m), 1.5);
        let cancelled = TrigPolynomial::from_terms([(1.0, m), (-1.0, m)]);
        assert!(cancelled.is_empty());
    }

    #[test]
    fn json_interchange_format() {
        let json = r#"{"terms":[{"m1":1,"m2":1,"alpha":0,"beta":0,"coeff":1.0},{"m1":3,"m2":5,"alpha":1,"beta":1,"coeff":0.03}]}"#;
        let p = TrigPolynomial::from_json(json).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coefficient(&TrigMode::bits(3, 5, 1, 1)), 0.03);
        let back: serde_json::Value = serde_json::from_str(&p.to_json().unwrap()).unwrap();
        assert_eq!(back["terms"][0]["alpha"], 0);
        assert_eq!(back["terms"][1]["coeff"], 0.03);
        assert!(TrigPolynomial::from_json(
            r#"{"terms":[{"m1":1,"m2":1,"alpha":2,"beta":0,"coeff":1.0}]}"#
        )
        .is_err());
    }

    #[test]
    fn torus_point_wraps() {
        let p = TorusPoint::new(-0.25, 1.5);
        assert_eq!(p.coords(), [0.75, 0.5]);
        assert_eq!(TorusPoint::new(-1e-300, 0.0).theta1, 0.0);
        let a = TorusPoint::new(0.95, 0.5);
        let b = TorusPoint::new(0.05, 0.5);
        assert!((a.distance(b) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn rational_points_reduce() {
        let p = RationalTorusPoint::from_fractions(5, 4, -1, 4);
        assert_eq!(p.theta1, rational(1, 4));
        assert_eq!(p.theta2, rational(3, 4));
        assert_eq!(p.to_string(), "(1/4, 3/4)");
        assert_eq!(fmt_rational(&rational(0, 3)), "0");
    }

    #[test]
    fn quarter_turn_exact_values() {
        assert_eq!(quarter_turn_value(Parity::Sin, 1, &rational(1, 4)), Some(1));
        assert_eq!(
            quarter_turn_value(Parity::Cos, 2, &rational(1, 4)),
            Some(-1)
        );
        assert_eq!(quarter_turn_value(Parity::Cos, 3, &rational(3, 4)), Some(0));
        assert_eq!(quarter_turn_value(Parity::Sin, 1, &rational(1, 3)), None);
    }

    #[test]
    fn parse_mode() {
        assert_eq!(
            "1,2,0,1".parse::<TrigMode>().unwrap(),
            TrigMode::bits(1, 2, 0, 1)
        );
        assert!("1,2,0".parse::<TrigMode>().is_err());
        assert!("1,2,0,3".parse::<TrigMode>().is_err());
    }
}
