//! Truncated generating series whose coefficients are exact polynomials in
//! `α`, `t` (for H-series) or `τ` (for γ-series).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{binomial, gamma_family, h_family, Family, FamilyError, MAX_SERIES_ORDER};
use crate::face_polynomials::{FaceVector, Int};

/// Exponent vector over `(α, t, τ)`.
pub type Monomial = [u32; 3];

/// Sparse polynomial in `α`, `t`, `τ` with exact integer coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly(BTreeMap<Monomial, Int>);

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(Int::one(), [0, 0, 0])
    }

    pub fn monomial(coeff: Int, exps: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(exps, coeff);
        p
    }

    pub fn alpha() -> Self {
        Poly::monomial(Int::one(), [1, 0, 0])
    }

    pub fn t() -> Self {
        Poly::monomial(Int::one(), [0, 1, 0])
    }

    pub fn tau() -> Self {
        Poly::monomial(Int::one(), [0, 0, 1])
    }

    /// `Σ_i h_i α^(n-i) t^i`.
    pub fn from_h<V: FaceVector + ?Sized>(h: &V) -> Self {
        let n = h.degree() as u32;
        let mut p = Poly::zero();
        for (i, c) in h.entries().iter().enumerate() {
            p.add_term([n - i as u32, i as u32, 0], c.clone());
        }
        p
    }

    /// `Σ_i γ_i τ^i`.
    pub fn from_gamma<V: FaceVector + ?Sized>(gamma: &V) -> Self {
        let mut p = Poly::zero();
        for (i, c) in gamma.entries().iter().enumerate() {
            p.add_term([0, 0, i as u32], c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, exps: Monomial) -> Int {
        self.0.get(&exps).cloned().unwrap_or_else(Int::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Int)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, exps: Monomial, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.0.entry(exps).or_insert_with(Int::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.0.remove(&exps);
        }
    }

    pub fn scale(&self, k: &Int) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(e, c)| (*e, c * k)).collect())
    }

    /// True when every term has total `(α, t)`-degree `d`.
    pub fn is_homogeneous(&self, d: i64) -> bool {
        self.0.keys().all(|e| i64::from(e[0] + e[1]) == d)
    }
}

impl std::ops::Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.0 {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl std::ops::Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.0 {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl std::ops::Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &rhs.0 {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (name, power) in ["a", "t", "τ"].iter().zip(e) {
                match power {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    p => write!(f, "*{name}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

/// How a coefficient list encodes a series in `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `Σ c_n x^n`.
    Ordinary,
    /// `Σ c_n x^n / n!`.
    Exponential,
}

/// A power series truncated after `x^order`.
///
/// `offset` is `Some(d)` when `c_n` is homogeneous in `(α, t)` of degree
/// `n + d` (H-series), and `None` for γ-series in `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSeries {
    pub normalization: Normalization,
    pub offset: Option<i64>,
    pub coeffs: Vec<Poly>,
}

impl GradedSeries {
    pub fn zero(normalization: Normalization, order: usize) -> Self {
        GradedSeries {
            normalization,
            offset: None,
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    /// The constant series `p`.
    pub fn constant(normalization: Normalization, order: usize, p: Poly) -> Self {
        let mut s = Self::zero(normalization, order);
        s.coeffs[0] = p;
        s
    }

    /// `e^(m x)` for a monomial `m`, as an exponential series: `c_n = m^n`.
    pub fn exp_of(order: usize, m: &Poly) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut power = Poly::one();
        for _ in 0..=order {
            coeffs.push(power.clone());
            power = &power * m;
        }
        GradedSeries {
            normalization: Normalization::Exponential,
            offset: None,
            coeffs,
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn same_shape(&self, other: &GradedSeries) -> usize {
        assert_eq!(
            self.normalization, other.normalization,
            "mixing ordinary and exponential series"
        );
        self.order().min(other.order())
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        let order = self.same_shape(other);
        GradedSeries {
            normalization: self.normalization,
            offset: None,
            coeffs: (0..=order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect(),
        }
    }

    pub fn sub(&self, other: &GradedSeries) -> GradedSeries {
        let order = self.same_shape(other);
        GradedSeries {
            normalization: self.normalization,
            offset: None,
            coeffs: (0..=order).map(|n| &self.coeffs[n] - &other.coeffs[n]).collect(),
        }
    }

    /// Cauchy product for ordinary series, binomial convolution for
    /// exponential ones.
    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        let order = self.same_shape(other);
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = Poly::zero();
                for k in 0..=n {
                    let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let term = a * b;
                    acc = match self.normalization {
                        Normalization::Ordinary => &acc + &term,
                        Normalization::Exponential => &acc + &term.scale(&binomial(n, k)),
                    };
                }
                acc
            })
            .collect();
        GradedSeries {
            normalization: self.normalization,
            offset: None,
            coeffs,
        }
    }

    /// Multiplies every coefficient by `p`.
    pub fn scale(&self, p: &Poly) -> GradedSeries {
        GradedSeries {
            normalization: self.normalization,
            offset: None,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// `x · self`, same order.
    pub fn mul_x(&self) -> GradedSeries {
        let mut coeffs = vec![Poly::zero(); self.coeffs.len()];
        for n in 1..self.coeffs.len() {
            coeffs[n] = match self.normalization {
                Normalization::Ordinary => self.coeffs[n - 1].clone(),
                // x · c x^(n-1)/(n-1)! = n c x^n/n!
                Normalization::Exponential => self.coeffs[n - 1].scale(&Int::from(n)),
            };
        }
        GradedSeries {
            normalization: self.normalization,
            offset: None,
            coeffs,
        }
    }

    /// `d/dx`; the result has order one less.
    pub fn derivative(&self) -> GradedSeries {
        let coeffs = (1..self.coeffs.len())
            .map(|n| match self.normalization {
                Normalization::Ordinary => self.coeffs[n].scale(&Int::from(n)),
                Normalization::Exponential => self.coeffs[n].clone(),
            })
            .collect::<Vec<_>>();
        GradedSeries {
            normalization: self.normalization,
            offset: None,
            coeffs: if coeffs.is_empty() { vec![Poly::zero()] } else { coeffs },
        }
    }

    pub fn truncate(&self, order: usize) -> GradedSeries {
        let mut out = self.clone();
        out.coeffs.truncate(order + 1);
        out
    }

    /// Whether each `c_n` is homogeneous of degree `n + offset`; γ-series
    /// (no offset) pass trivially.
    pub fn is_graded(&self) -> bool {
        match self.offset {
            None => true,
            Some(d) => self
                .coeffs
                .iter()
                .enumerate()
                .all(|(n, c)| c.is_homogeneous(n as i64 + d)),
        }
    }

    /// First index where the two series differ, up to the shorter order.
    pub fn first_difference(&self, other: &GradedSeries) -> Option<usize> {
        let order = self.same_shape(other);
        (0..=order).find(|&n| self.coeffs[n] != other.coeffs[n])
    }
}

/// The generating series available from the family recurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesName {
    /// `H_As(x) = Σ H(As^n) x^n`.
    As,
    /// `H_Cy(x) = Σ H(Cy^n) x^n`.
    Cy,
    /// `H_Pe(x) = Σ H(Pe^n) x^(n+1)/(n+1)!`.
    Pe,
    /// `H_St(x) = Σ H(St^n) x^n/n!`.
    St,
    /// `U(x) = x H_As(x)`.
    U,
    /// `V(x) = x H_Cy(x)`.
    V,
    /// `Σ γ(As^n) x^n`.
    GammaAs,
    /// `Σ γ(Cy^n) x^n`.
    GammaCy,
    /// `Σ γ(Pe^n) x^(n+1)/(n+1)!`.
    GammaPe,
    /// `Σ γ(St^n) x^n/n!`.
    GammaSt,
}

impl FromStr for SeriesName {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "as" => SeriesName::As,
            "cy" => SeriesName::Cy,
            "pe" => SeriesName::Pe,
            "st" => SeriesName::St,
            "u" => SeriesName::U,
            "v" => SeriesName::V,
            "gamma_as" => SeriesName::GammaAs,
            "gamma_cy" => SeriesName::GammaCy,
            "gamma_pe" => SeriesName::GammaPe,
            "gamma_st" => SeriesName::GammaSt,
            other => return Err(FamilyError::UnknownSeries(other.to_string())),
        })
    }
}

/// Builds the named series to order `order` from the recurrence values.
pub fn series(name: SeriesName, order: usize) -> Result<GradedSeries, FamilyError> {
    if order > MAX_SERIES_ORDER {
        return Err(FamilyError::OrderTooLarge(order));
    }
    use Normalization::{Exponential, Ordinary};
    // (normalization, index shift, H or γ, family)
    let (normalization, shift, family, is_gamma) = match name {
        SeriesName::As => (Ordinary, 0, Family::As, false),
        SeriesName::Cy => (Ordinary, 0, Family::Cy, false),
        SeriesName::Pe => (Exponential, 1, Family::Pe, false),
        SeriesName::St => (Exponential, 0, Family::St, false),
        SeriesName::U => (Ordinary, 1, Family::As, false),
        SeriesName::V => (Ordinary, 1, Family::Cy, false),
        SeriesName::GammaAs => (Ordinary, 0, Family::As, true),
        SeriesName::GammaCy => (Ordinary, 0, Family::Cy, true),
        SeriesName::GammaPe => (Exponential, 1, Family::Pe, true),
        SeriesName::GammaSt => (Exponential, 0, Family::St, true),
    };
    let coeffs = (0..=order)
        .map(|idx| {
            if idx < shift {
                Poly::zero()
            } else if is_gamma {
                Poly::from_gamma(&gamma_family(family, idx - shift))
            } else {
                Poly::from_h(&h_family(family, idx - shift))
            }
        })
        .collect();
    Ok(GradedSeries {
        normalization,
        offset: (!is_gamma).then_some(-(shift as i64)),
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_poly(values: &[i64]) -> Poly {
        Poly::from_h(&crate::face_polynomials::HVector::from_i64(values))
    }

    #[test]
    fn u_series_coefficients() {
        let u = series(SeriesName::U, 3).unwrap();
        assert!(u.coeffs[0].is_zero());
        assert_eq!(u.coeffs[1], Poly::one());
        assert_eq!(u.coeffs[2], &Poly::alpha() + &Poly::t());
        assert_eq!(u.coeffs[3], h_poly(&[1, 3, 1]));
        assert!(u.is_graded());
    }

    #[test]
    fn v_series_coefficients() {
        let v = series(SeriesName::V, 2).unwrap();
        assert!(v.coeffs[0].is_zero());
        assert_eq!(v.coeffs[1], Poly::one());
        assert_eq!(v.coeffs[2], &Poly::alpha() + &Poly::t());
    }

    #[test]
    fn gamma_series_at_tau_zero_are_one() {
        for name in [
            SeriesName::GammaAs,
            SeriesName::GammaCy,
            SeriesName::GammaPe,
            SeriesName::GammaSt,
        ] {
            let s = series(name, 10).unwrap();
            let start = if name == SeriesName::GammaPe { 1 } else { 0 };
            for c in &s.coeffs[start..] {
                assert_eq!(c.coeff([0, 0, 0]), Int::one());
            }
        }
    }

    #[test]
    fn every_h_series_is_graded() {
        for name in [SeriesName::As, SeriesName::Cy, SeriesName::Pe, SeriesName::St, SeriesName::V] {
            assert!(series(name, 12).unwrap().is_graded(), "{name:?}");
        }
    }

    #[test]
    fn order_limit() {
        assert_eq!(
            series(SeriesName::As, 31).unwrap_err(),
            FamilyError::OrderTooLarge(31)
        );
        assert!(series(SeriesName::Pe, 30).is_ok());
    }

    #[test]
    fn exponential_product_is_binomial() {
        // e^(αx) e^(tx) = e^((α+t)x)
        let a = GradedSeries::exp_of(6, &Poly::alpha());
        let t = GradedSeries::exp_of(6, &Poly::t());
        let sum = &Poly::alpha() + &Poly::t();
        assert_eq!(a.mul(&t), GradedSeries::exp_of(6, &sum));
        assert_eq!(a.derivative(), a.scale(&Poly::alpha()).truncate(5));
    }

    #[test]
    fn ordinary_operations() {
        // (1 - x)(1 + x + x^2 + ...) = 1
        let mut geometric = GradedSeries::zero(Normalization::Ordinary, 5);
        for c in &mut geometric.coeffs {
            *c = Poly::one();
        }
        let one = GradedSeries::constant(Normalization::Ordinary, 5, Poly::one());
        let one_minus_x = one.sub(&one.mul_x());
        assert_eq!(one_minus_x.mul(&geometric), one);
        assert_eq!(geometric.derivative().coeffs[2], Poly::monomial(Int::from(3), [0, 0, 0]));
    }

    #[test]
    fn series_names_parse() {
        assert_eq!("gamma_st".parse::<SeriesName>().unwrap(), SeriesName::GammaSt);
        assert!("w".parse::<SeriesName>().is_err());
        assert_eq!(h_poly(&[1, 3, 1]).to_string(), "1*t^2 + 3*a*t + 1*a^2");
    }
}
