//! The associahedron, cyclohedron, permutohedron and stellohedron series.
//!
//! Each series is produced two ways: by the shaving recurrences, which build
//! `P^n` from the cylinder `P^(n-1) × I` by cutting codimension-2 faces, and
//! by closed formulas. Truncated generating series and the functional
//! equations they satisfy live in [`series`] and [`identities`].

pub mod construction;
pub mod identities;
pub mod series;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::face_complex::FaceError;
use crate::face_polynomials::{
    gamma_from_h, poly_mul, FaceVector, GammaVector, HVector, Int, PolyError,
};
use crate::graphs::{complete_graph, cycle_graph, path_graph, star_graph, GraphError, SimpleGraph};
use crate::node_set::NodeSet;

pub use construction::{construction_ind, ConstructionResult};
pub use identities::{check_identity, IdentityId, IdentityReport};
pub use series::{series, GradedSeries, Normalization, Poly, SeriesName};

/// Largest truncation order for generating series.
pub const MAX_SERIES_ORDER: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}` (expected as, cy, pe or st)")]
    UnknownFamily(String),
    #[error("unknown series `{0}`")]
    UnknownSeries(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("Eulerian number A({n}, {k}) needs 0 <= k < n")]
    OutOfRange { n: usize, k: usize },
    #[error("series order {0} exceeds the maximum of {MAX_SERIES_ORDER}")]
    OrderTooLarge(usize),
    #[error("{0} does not induce a complete subgraph")]
    VNotClique(NodeSet),
    #[error("graph is not connected")]
    NotConnected,
    #[error("γ-vector undefined: {0}")]
    GammaUndefined(#[from] PolyError),
    #[error(transparent)]
    Face(#[from] FaceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A named series of graph-associahedra indexed by dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Associahedra `As^n`, from path graphs.
    As,
    /// Cyclohedra `Cy^n`, from cycle graphs.
    Cy,
    /// Permutohedra `Pe^n`, from complete graphs.
    Pe,
    /// Stellohedra `St^n`, from star graphs.
    St,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::As, Family::Cy, Family::Pe, Family::St];

    pub fn name(self) -> &'static str {
        match self {
            Family::As => "as",
            Family::Cy => "cy",
            Family::Pe => "pe",
            Family::St => "st",
        }
    }

    /// The graph on `[n + 1]` whose graph-associahedron is the `n`-th member.
    ///
    /// Cycles need three nodes; `Cy^0` and `Cy^1` come from the path on one
    /// and two nodes, which is what a cycle degenerates to.
    pub fn graph(self, n: usize) -> Result<SimpleGraph, GraphError> {
        let m = n + 1;
        match self {
            Family::As => path_graph(m),
            Family::Cy if m < 3 => path_graph(m),
            Family::Cy => cycle_graph(m),
            Family::Pe => complete_graph(m),
            Family::St => star_graph(m),
        }
    }

    /// `(left, right)` families and the multiplicity of the shaved faces
    /// `left^(i-1) × right^(n-i-1)` in the step from `n - 1` to `n`.
    fn shaving(self, n: usize, i: usize) -> (Family, Family, Int) {
        match self {
            Family::As => (Family::As, Family::As, Int::one()),
            Family::Cy => (Family::As, Family::Cy, Int::from(2)),
            Family::Pe => (Family::Pe, Family::Pe, binomial(n, i)),
            Family::St => (Family::St, Family::Pe, binomial(n - 1, i - 1)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "as" => Ok(Family::As),
            "cy" => Ok(Family::Cy),
            "pe" => Ok(Family::Pe),
            "st" => Ok(Family::St),
            other => Err(FamilyError::UnknownFamily(other.to_string())),
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(Int::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * k)
}

/// Rows of Eulerian numbers up to `n`, by
/// `A(n, k) = (k + 1) A(n-1, k) + (n - k) A(n-1, k-1)`.
pub fn eulerian_row(n: usize) -> Vec<Int> {
    let mut row = vec![Int::one()];
    for size in 2..=n {
        row = (0..size)
            .map(|k| {
                let stay = row.get(k).map_or_else(Int::zero, |a| a * (k + 1));
                let climb = if k > 0 {
                    row.get(k - 1).map_or_else(Int::zero, |a| a * (size - k))
                } else {
                    Int::zero()
                };
                stay + climb
            })
            .collect();
    }
    if n == 0 {
        Vec::new()
    } else {
        row
    }
}

/// Permutations of `n` letters with exactly `k` descents.
pub fn eulerian(n: usize, k: usize) -> Result<Int, FamilyError> {
    if k >= n {
        return Err(FamilyError::OutOfRange { n, k });
    }
    Ok(eulerian_row(n).swap_remove(k))
}

/// `Σ_i a_i α^(d-i) t^i ↦ (α + t) · that`.
fn times_alpha_plus_t(h: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); h.len() + 1];
    for (i, v) in h.iter().enumerate() {
        out[i] += v;
        out[i + 1] += v;
    }
    out
}

/// Multiplies by `αt` (or by `τ` for γ-polynomials): shifts up one index.
fn times_shift(p: &[Int]) -> Vec<Int> {
    let mut out = Vec::with_capacity(p.len() + 1);
    out.push(Int::zero());
    out.extend_from_slice(p);
    out
}

fn add_into(acc: &mut Vec<Int>, p: &[Int]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Int::zero());
    }
    for (a, v) in acc.iter_mut().zip(p) {
        *a += v;
    }
}

#[derive(Default)]
struct Tables {
    h: HashMap<Family, Vec<HVector>>,
    gamma: HashMap<Family, Vec<GammaVector>>,
}

fn cache() -> &'static RwLock<Tables> {
    static CACHE: OnceLock<RwLock<Tables>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached_h(family: Family, n: usize) -> Option<HVector> {
    let tables = cache().read().expect("family cache poisoned");
    tables.h.get(&family).and_then(|t| t.get(n)).cloned()
}

fn cached_gamma(family: Family, n: usize) -> Option<GammaVector> {
    let tables = cache().read().expect("family cache poisoned");
    tables.gamma.get(&family).and_then(|t| t.get(n)).cloned()
}

/// `H(P^n)` from the recurrence
/// `H(P^n) = (α+t) H(P^(n-1)) + αt Σ_(i=1..n-1) c_i H(L^(i-1)) H(R^(n-i-1))`.
///
/// Values are cached process-wide. The table is computed without holding
/// the lock and published whole, so concurrent callers may duplicate work
/// but always see identical complete values.
pub fn h_family(family: Family, n: usize) -> HVector {
    if let Some(h) = cached_h(family, n) {
        return h;
    }
    let mut table: Vec<HVector> = vec![HVector::one()];
    for k in 1..=n {
        let mut next = times_alpha_plus_t(table[k - 1].entries());
        let mut shaved: Vec<Int> = Vec::new();
        for i in 1..k {
            let (left, right, weight) = family.shaving(k, i);
            let l = if left == family { table[i - 1].clone() } else { h_family(left, i - 1) };
            let r = if right == family { table[k - i - 1].clone() } else { h_family(right, k - i - 1) };
            let product: Vec<Int> = poly_mul(l.entries(), r.entries())
                .into_iter()
                .map(|v| v * &weight)
                .collect();
            add_into(&mut shaved, &product);
        }
        if !shaved.is_empty() {
            add_into(&mut next, &times_shift(&shaved));
        }
        table.push(HVector::new(next));
    }
    let result = table[n].clone();
    let mut tables = cache().write().expect("family cache poisoned");
    let slot = tables.h.entry(family).or_default();
    if slot.len() < table.len() {
        *slot = table;
    }
    result
}

/// `γ(P^n)` from `γ(P^n) = γ(P^(n-1)) + τ Σ_(i=1..n-1) c_i γ(L^(i-1)) γ(R^(n-i-1))`.
pub fn gamma_family(family: Family, n: usize) -> GammaVector {
    if let Some(g) = cached_gamma(family, n) {
        return g;
    }
    let mut table: Vec<GammaVector> = vec![GammaVector::cube(0)];
    for k in 1..=n {
        let mut next: Vec<Int> = table[k - 1].entries().to_vec();
        let mut shaved: Vec<Int> = Vec::new();
        for i in 1..k {
            let (left, right, weight) = family.shaving(k, i);
            let l = if left == family { table[i - 1].clone() } else { gamma_family(left, i - 1) };
            let r = if right == family {
                table[k - i - 1].clone()
            } else {
                gamma_family(right, k - i - 1)
            };
            let product: Vec<Int> = poly_mul(l.entries(), r.entries())
                .into_iter()
                .map(|v| v * &weight)
                .collect();
            add_into(&mut shaved, &product);
        }
        if !shaved.is_empty() {
            add_into(&mut next, &times_shift(&shaved));
        }
        while next.len() > k / 2 + 1 && next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        table.push(GammaVector::new(k, next).expect("γ-recurrence stays within ⌊n/2⌋"));
    }
    let result = table[n].clone();
    let mut tables = cache().write().expect("family cache poisoned");
    let slot = tables.gamma.entry(family).or_default();
    if slot.len() < table.len() {
        *slot = table;
    }
    result
}

/// Closed formulas for the h-vectors:
///
/// * `h_i(As^n) = C(n+1, i) C(n+1, i+1) / (n+1)` (Narayana numbers);
/// * `h_i(Cy^n) = C(n, i)^2`;
/// * `h_i(Pe^n) = A(n+1, i)` (Eulerian numbers);
/// * `h_i(St^n) = Σ_(k=i..n) C(n, k) A(k, i-1)` for `i > 0`, `h_0 = 1`.
pub fn closed_h(family: Family, n: usize) -> HVector {
    let entries = match family {
        Family::As => (0..=n)
            .map(|i| {
                let (q, r) = (binomial(n + 1, i) * binomial(n + 1, i + 1)).div_rem(&Int::from(n + 1));
                debug_assert!(r.is_zero());
                q
            })
            .collect(),
        Family::Cy => (0..=n).map(|i| binomial(n, i).pow(2)).collect(),
        Family::Pe => eulerian_row(n + 1),
        Family::St => {
            let rows: Vec<Vec<Int>> = (0..=n).map(eulerian_row).collect();
            (0..=n)
                .map(|i| {
                    if i == 0 {
                        return Int::one();
                    }
                    (i..=n).map(|k| binomial(n, k) * &rows[k][i - 1]).sum()
                })
                .collect()
        }
    };
    HVector::new(entries)
}

/// Closed formulas for the γ-vectors where one exists:
///
/// * `γ_i(As^n) = C(2i, i)/(i+1) · C(n, 2i)`;
/// * `γ_i(Cy^n) = n! / (i! i! (n-2i)!)`.
///
/// Permutohedra and stellohedra have no γ closed form of their own; their
/// γ-vectors are read off the closed h-vectors.
pub fn closed_gamma(family: Family, n: usize) -> GammaVector {
    let entries: Vec<Int> = match family {
        Family::As => (0..=n / 2)
            .map(|i| binomial(2 * i, i) / (i + 1) * binomial(n, 2 * i))
            .collect(),
        Family::Cy => (0..=n / 2)
            .map(|i| factorial(n) / (factorial(i) * factorial(i) * factorial(n - 2 * i)))
            .collect(),
        Family::Pe | Family::St => {
            return gamma_from_h(&closed_h(family, n)).expect("closed h-vectors are symmetric")
        }
    };
    GammaVector::new(n, entries).expect("⌊n/2⌋ + 1 entries")
}

/// `h_i(I^n) = C(n, i)`.
pub fn cube_h(n: usize) -> HVector {
    HVector::new((0..=n).map(|i| binomial(n, i)).collect())
}

/// Σ h_i(As^n) = Catalan(n + 1).
pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(values: &[i64]) -> HVector {
        HVector::from_i64(values)
    }

    fn gamma(n: usize, values: &[i64]) -> GammaVector {
        GammaVector::from_i64(n, values).unwrap()
    }

    /// Eulerian numbers by counting descents over all permutations.
    fn eulerian_by_descents(n: usize) -> Vec<i64> {
        fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<i64>) {
            if k == items.len() {
                let descents = items.windows(2).filter(|w| w[0] > w[1]).count();
                out[descents] += 1;
                return;
            }
            for j in k..items.len() {
                items.swap(k, j);
                permute(items, k + 1, out);
                items.swap(k, j);
            }
        }
        let mut out = vec![0i64; n];
        permute(&mut (1..=n).collect(), 0, &mut out);
        out
    }

    fn as_i64(v: &[Int]) -> Vec<i64> {
        v.iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(as_i64(&eulerian_row(3)), vec![1, 4, 1]);
        assert_eq!(eulerian(1, 0).unwrap(), Int::one());
        assert_eq!(as_i64(&eulerian_row(4)), vec![1, 11, 11, 1]);
        assert_eq!(eulerian(3, 3).unwrap_err(), FamilyError::OutOfRange { n: 3, k: 3 });
        assert!(eulerian(0, 0).is_err());
        for n in 1..=7 {
            assert_eq!(as_i64(&eulerian_row(n)), eulerian_by_descents(n), "n={n}");
        }
    }

    #[test]
    fn gamma_recurrence_examples() {
        assert_eq!(gamma_family(Family::As, 2), gamma(2, &[1, 1]));
        assert_eq!(gamma_family(Family::As, 3), gamma(3, &[1, 3]));
        assert_eq!(gamma_family(Family::Pe, 3), gamma(3, &[1, 8]));
        assert_eq!(gamma_family(Family::Cy, 2), gamma(2, &[1, 2]));
        assert_eq!(gamma_family(Family::St, 3), gamma(3, &[1, 4]));
        for f in Family::ALL {
            assert_eq!(gamma_family(f, 0), gamma(0, &[1]));
            assert_eq!(h_family(f, 0), h(&[1]));
            assert_eq!(h_family(f, 1), h(&[1, 1]));
        }
    }

    #[test]
    fn h_recurrence_examples() {
        assert_eq!(h_family(Family::Pe, 3), h(&[1, 11, 11, 1]));
        assert_eq!(h_family(Family::Pe, 4), h(&[1, 26, 66, 26, 1]));
        assert_eq!(h_family(Family::As, 3), h(&[1, 6, 6, 1]));
        assert_eq!(h_family(Family::Cy, 3), h(&[1, 9, 9, 1]));
        assert_eq!(h_family(Family::St, 2), h(&[1, 3, 1]));
        assert_eq!(h_family(Family::St, 3), h(&[1, 7, 7, 1]));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_h(Family::Cy, 2), h(&[1, 4, 1]));
        assert_eq!(closed_h(Family::As, 3), h(&[1, 6, 6, 1]));
        assert_eq!(closed_h(Family::St, 3), h(&[1, 7, 7, 1]));
        assert_eq!(closed_gamma(Family::Cy, 3), gamma(3, &[1, 6]));
        assert_eq!(closed_gamma(Family::As, 4), gamma(4, &[1, 6, 2]));
    }

    #[test]
    fn recurrence_matches_closed_form() {
        for f in Family::ALL {
            for n in 0..=10 {
                assert_eq!(h_family(f, n), closed_h(f, n), "{f} h n={n}");
                assert_eq!(gamma_family(f, n), closed_gamma(f, n), "{f} γ n={n}");
                assert_eq!(gamma_from_h(&h_family(f, n)).unwrap(), gamma_family(f, n));
            }
        }
    }

    #[test]
    fn vertex_counts() {
        for n in 0..=8 {
            assert_eq!(h_family(Family::As, n).sum(), catalan(n + 1));
            assert_eq!(h_family(Family::Cy, n).sum(), binomial(2 * n, n));
            assert_eq!(h_family(Family::Pe, n).sum(), factorial(n + 1));
        }
    }

    #[test]
    fn cube_vectors() {
        use crate::face_polynomials::h_from_gamma;
        for n in 0..=8 {
            assert_eq!(h_from_gamma(&GammaVector::cube(n)), cube_h(n));
            assert_eq!(gamma_from_h(&cube_h(n)).unwrap(), GammaVector::cube(n));
        }
    }

    #[test]
    fn family_graphs_and_names() {
        assert_eq!(Family::Cy.graph(1).unwrap(), path_graph(2).unwrap());
        assert_eq!(Family::Cy.graph(3).unwrap(), cycle_graph(4).unwrap());
        assert_eq!("pe".parse::<Family>().unwrap(), Family::Pe);
        assert!(matches!("xx".parse::<Family>(), Err(FamilyError::UnknownFamily(_))));
        assert_eq!(h_family(Family::As, 2).entries().len(), 3);
    }

    #[test]
    fn concurrent_fills_agree() {
        let handles: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(|| (h_family(Family::St, 12), gamma_family(Family::Cy, 12))))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|t| t.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(results[0].0, closed_h(Family::St, 12));
    }
}
