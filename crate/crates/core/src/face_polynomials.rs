//! Exact-integer f-, h-, g- and γ-vectors of simple polytopes and the
//! transforms between them.
//!
//! Conventions, for an `n`-dimensional simple polytope `P`:
//!
//! * `F(α, t) = Σ_j f_j α^j t^(n-j)` with `f_n = 1`;
//! * `H(α, t) = F(α - t, t) = Σ_i h_i α^(n-i) t^i`;
//! * `H = Σ_i γ_i (αt)^i (α + t)^(n-2i)` when `H` is symmetric;
//! * `g_0 = 1`, `g_i = h_i - h_(i-1)` for `1 <= i <= n/2`.
//!
//! All vectors are stored in ascending index order.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Int = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("h-vector {0} is not symmetric")]
    NotSymmetric(HVector),
    #[error("g-vector entry {index} is not an integer")]
    NonIntegerResult { index: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("{kind} of degree {degree} has at most {max} entries, got {got}")]
    TooManyEntries {
        kind: &'static str,
        degree: usize,
        max: usize,
        got: usize,
    },
    #[error("f-vector must end with f_n = 1")]
    MissingTopFace,
}

/// Anything with a degree and a list of exact integer entries.
pub trait FaceVector {
    fn degree(&self) -> usize;
    fn entries(&self) -> &[Int];
}

fn ints<T: Into<Int> + Copy>(values: &[T]) -> Vec<Int> {
    values.iter().map(|&v| v.into()).collect()
}

fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `f_0, ..., f_n`; the last entry counts the polytope itself.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FVector(Vec<Int>);

/// `h_0, ..., h_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HVector(Vec<Int>);

/// `g_0, ..., g_⌊n/2⌋` together with `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GVector {
    degree: usize,
    entries: Vec<Int>,
}

/// `γ_0, ..., γ_⌊n/2⌋` together with `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GammaVector {
    degree: usize,
    entries: Vec<Int>,
}

impl FVector {
    pub fn new(entries: Vec<Int>) -> Result<Self, PolyError> {
        if entries.last().is_none_or(|top| !top.is_one()) {
            return Err(PolyError::MissingTopFace);
        }
        Ok(FVector(entries))
    }

    pub fn from_i64(values: &[i64]) -> Result<Self, PolyError> {
        Self::new(ints(values))
    }

    /// Proper faces only: `f_0, ..., f_(n-1)`.
    pub fn proper(&self) -> &[Int] {
        &self.0[..self.0.len() - 1]
    }
}

impl HVector {
    /// Panics on an empty vector; the smallest H-polynomial is the constant 1.
    pub fn new(entries: Vec<Int>) -> Self {
        assert!(!entries.is_empty(), "an h-vector has at least one entry");
        HVector(entries)
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(ints(values))
    }

    /// The H-polynomial of a point.
    pub fn one() -> Self {
        HVector(vec![Int::one()])
    }

    /// `h_i = h_(n-i)` for all `i`.
    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn sum(&self) -> Int {
        self.0.iter().sum()
    }
}

fn half_length(degree: usize) -> usize {
    degree / 2 + 1
}

fn padded(
    kind: &'static str,
    degree: usize,
    mut entries: Vec<Int>,
) -> Result<Vec<Int>, PolyError> {
    let max = half_length(degree);
    if entries.len() > max {
        return Err(PolyError::TooManyEntries {
            kind,
            degree,
            max,
            got: entries.len(),
        });
    }
    entries.resize(max, Int::zero());
    Ok(entries)
}

impl GammaVector {
    /// Missing trailing entries are zero.
    pub fn new(degree: usize, entries: Vec<Int>) -> Result<Self, PolyError> {
        Ok(GammaVector {
            degree,
            entries: padded("γ-vector", degree, entries)?,
        })
    }

    pub fn from_i64(degree: usize, values: &[i64]) -> Result<Self, PolyError> {
        Self::new(degree, ints(values))
    }

    /// `(1, 0, ..., 0)`: the γ-vector of the cube.
    pub fn cube(degree: usize) -> Self {
        Self::new(degree, vec![Int::one()]).expect("one entry always fits")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
    }
}

impl GVector {
    pub fn new(degree: usize, entries: Vec<Int>) -> Result<Self, PolyError> {
        Ok(GVector {
            degree,
            entries: padded("g-vector", degree, entries)?,
        })
    }

    pub fn from_i64(degree: usize, values: &[i64]) -> Result<Self, PolyError> {
        Self::new(degree, ints(values))
    }
}

macro_rules! dense_vector {
    ($ty:ty) => {
        impl FaceVector for $ty {
            fn degree(&self) -> usize {
                self.0.len() - 1
            }
            fn entries(&self) -> &[Int] {
                &self.0
            }
        }
    };
}

macro_rules! half_vector {
    ($ty:ty) => {
        impl FaceVector for $ty {
            fn degree(&self) -> usize {
                self.degree
            }
            fn entries(&self) -> &[Int] {
                &self.entries
            }
        }
    };
}

dense_vector!(FVector);
dense_vector!(HVector);
half_vector!(GVector);
half_vector!(GammaVector);

fn write_entries(f: &mut fmt::Formatter<'_>, entries: &[Int]) -> fmt::Result {
    f.write_str("(")?;
    for (k, v) in entries.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str(")")
}

macro_rules! display_vector {
    ($ty:ty, $name:literal) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_entries(f, self.entries())
            }
        }
        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}[n={}]", $name, self.degree())?;
                write_entries(f, self.entries())
            }
        }
    };
}

display_vector!(FVector, "f");
display_vector!(HVector, "h");
display_vector!(GVector, "g");
display_vector!(GammaVector, "γ");

/// Coefficients of `F(α - t, t)`:
/// `h_i = Σ_(j >= n-i) (-1)^(j-n+i) C(j, n-i) f_j`.
pub fn h_from_f(f: &FVector) -> HVector {
    let n = f.degree();
    let entries = (0..=n)
        .map(|i| {
            let a = n - i;
            (a..=n)
                .map(|j| {
                    let term = binomial(j, a) * &f.0[j];
                    if (j - a).is_multiple_of(2) {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    HVector(entries)
}

/// `f_i = Σ_(j=i..n) C(j, i) h_(n-j)`.
pub fn f_from_h(h: &HVector) -> FVector {
    let n = h.degree();
    let entries = (0..=n)
        .map(|i| (i..=n).map(|j| binomial(j, i) * &h.0[n - j]).sum())
        .collect();
    FVector(entries)
}

/// Solves `h_k = Σ_(i<=k) γ_i C(n-2i, k-i)` for `k <= n/2`, outermost
/// coefficient first. Requires Dehn–Sommerville symmetry.
pub fn gamma_from_h(h: &HVector) -> Result<GammaVector, PolyError> {
    if !h.is_symmetric() {
        return Err(PolyError::NotSymmetric(h.clone()));
    }
    let n = h.degree();
    let mut gamma: Vec<Int> = Vec::with_capacity(half_length(n));
    for k in 0..half_length(n) {
        let known: Int = gamma
            .iter()
            .enumerate()
            .map(|(i, g)| binomial(n - 2 * i, k - i) * g)
            .sum();
        gamma.push(&h.0[k] - known);
    }
    Ok(GammaVector {
        degree: n,
        entries: gamma,
    })
}

/// Expands `Σ γ_i (αt)^i (α + t)^(n-2i)`.
pub fn h_from_gamma(gamma: &GammaVector) -> HVector {
    let n = gamma.degree;
    let mut h = vec![Int::zero(); n + 1];
    for (i, g) in gamma.entries.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        for j in 0..=(n - 2 * i) {
            h[i + j] += binomial(n - 2 * i, j) * g;
        }
    }
    HVector(h)
}

/// `g_i = (n-2i+1) Σ_(j<=i) C(n-2j, i-j) γ_j / (n-i-j+1)`, evaluated in
/// exact rationals; every entry must come out integral.
pub fn g_from_gamma(gamma: &GammaVector) -> Result<GVector, PolyError> {
    let n = gamma.degree;
    let mut entries = Vec::with_capacity(half_length(n));
    for i in 0..half_length(n) {
        let sum: BigRational = (0..=i)
            .map(|j| {
                BigRational::new(
                    binomial(n - 2 * j, i - j) * &gamma.entries[j],
                    Int::from(n - i - j + 1),
                )
            })
            .sum();
        let value = sum * BigRational::from_integer(Int::from(n - 2 * i + 1));
        if !value.is_integer() {
            return Err(PolyError::NonIntegerResult { index: i });
        }
        entries.push(value.to_integer());
    }
    Ok(GVector { degree: n, entries })
}

/// `g_0 = h_0`, `g_i = h_i - h_(i-1)`.
pub fn g_from_h(h: &HVector) -> GVector {
    let n = h.degree();
    let entries = (0..half_length(n))
        .map(|i| {
            if i == 0 {
                h.0[0].clone()
            } else {
                &h.0[i] - &h.0[i - 1]
            }
        })
        .collect();
    GVector { degree: n, entries }
}

/// Prefix sums of `g`, mirrored to a symmetric h-vector.
pub fn h_from_g(g: &GVector) -> HVector {
    let n = g.degree;
    let mut h = vec![Int::zero(); n + 1];
    let mut running = Int::zero();
    for (i, gi) in g.entries.iter().enumerate() {
        running += gi;
        h[i] = running.clone();
        h[n - i] = running.clone();
    }
    HVector(h)
}

/// Product of H-polynomials; the h-vector of a product of polytopes.
pub fn convolve(a: &HVector, b: &HVector) -> HVector {
    HVector(poly_mul(&a.0, &b.0))
}

/// Componentwise `a <= b`; the degrees must agree.
pub fn leq_componentwise<A, B>(a: &A, b: &B) -> Result<bool, PolyError>
where
    A: FaceVector + ?Sized,
    B: FaceVector + ?Sized,
{
    if a.degree() != b.degree() {
        return Err(PolyError::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok(a.entries().iter().zip(b.entries()).all(|(x, y)| x <= y))
}

/// Plain coefficient convolution of dense univariate polynomials.
pub(crate) fn poly_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Entries as JSON numbers when they fit in `i64`, strings otherwise.
pub fn entries_to_json(entries: &[Int]) -> serde_json::Value {
    serde_json::Value::Array(
        entries
            .iter()
            .map(|v| match v.to_i64() {
                Some(small) => serde_json::Value::from(small),
                None => serde_json::Value::from(v.to_string()),
            })
            .collect(),
    )
}
