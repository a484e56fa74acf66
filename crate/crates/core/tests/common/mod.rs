//! Brute-force oracles shared by the integration tests. None of these go
//! through the library's own face enumeration or recurrences.

#![allow(dead_code)]

use gac_core::{BuildingSet, GammaVector, NodeSet};
use proptest::prelude::*;

/// `f_j` by checking every subfamily of the proper elements directly
/// against the nested-collection definition. Exponential in `|B|`.
pub fn brute_force_f(b: &BuildingSet) -> Vec<u64> {
    let proper: Vec<NodeSet> = b.elements().iter().copied().filter(|&s| s != b.ground()).collect();
    assert!(proper.len() <= 22, "oracle is exponential in |B|");
    let n = b.ground_size() - 1;
    let mut f = vec![0u64; n + 1];
    for mask in 0u64..1 << proper.len() {
        let chosen: Vec<NodeSet> = (0..proper.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| proper[i])
            .collect();
        if is_nested(b, &chosen) {
            f[n - chosen.len()] += 1;
        }
    }
    f
}

/// Pairwise nested-or-disjoint, and no union of two or more pairwise
/// disjoint members lies in `b`.
pub fn is_nested(b: &BuildingSet, chosen: &[NodeSet]) -> bool {
    for (i, &x) in chosen.iter().enumerate() {
        for &y in &chosen[i + 1..] {
            if !(x.is_subset(y) || y.is_subset(x) || x.is_disjoint(y)) {
                return false;
            }
        }
    }
    for mask in 0u64..1 << chosen.len() {
        if mask.count_ones() < 2 {
            continue;
        }
        let members: Vec<NodeSet> = (0..chosen.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| chosen[i])
            .collect();
        let disjoint = members
            .iter()
            .enumerate()
            .all(|(i, x)| members[i + 1..].iter().all(|y| x.is_disjoint(*y)));
        let union = members.iter().fold(NodeSet::EMPTY, |acc, s| acc.union(*s));
        if disjoint && b.contains(union) {
            return false;
        }
    }
    true
}

/// Coefficients of `Σ_j f_j (α - t)^j t^(n-j)`, listed from `α^n` down to
/// `α^0`, with `f_j` indexed by dimension.
pub fn h_of_f(f: &[u64]) -> Vec<i128> {
    let n = f.len() - 1;
    let mut h = vec![0i128; n + 1];
    for (i, slot) in h.iter_mut().enumerate() {
        for (j, &fj) in f.iter().enumerate().skip(i) {
            let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
            *slot += sign * binom(j as u64, i as u64) as i128 * fj as i128;
        }
    }
    h.reverse();
    h
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

/// Eulerian row `A(n, k)` by counting descents of every permutation.
pub fn descent_counts(n: usize) -> Vec<u64> {
    let mut row = vec![0u64; n.max(1)];
    for p in permutations(n) {
        let descents = p.windows(2).filter(|w| w[0] > w[1]).count();
        row[descents] += 1;
    }
    row
}

/// Nonempty cliques of `g`, by checking every node subset.
pub fn cliques(g: &gac_core::SimpleGraph) -> Vec<NodeSet> {
    g.nodes()
        .subsets()
        .filter(|s| !s.is_empty())
        .filter(|s| s.iter().all(|a| s.iter().all(|b| a == b || g.has_edge(a, b))))
        .collect()
}

/// A pair `a <= b` of γ-vectors of the same degree `n <= 8` with
/// `γ_0 = 1` and the remaining entries in `0..=5`.
pub fn gamma_pair() -> impl Strategy<Value = (GammaVector, GammaVector)> {
    (0usize..=8).prop_flat_map(|n| {
        let len = n / 2;
        (
            Just(n),
            prop::collection::vec(0i64..=5, len),
            prop::collection::vec(0i64..=5, len),
        )
            .prop_map(|(n, low, bump)| {
                let a: Vec<i64> = std::iter::once(1).chain(low.iter().copied()).collect();
                let b: Vec<i64> = std::iter::once(1)
                    .chain(low.iter().zip(&bump).map(|(x, d)| (x + d).min(5)))
                    .collect();
                (
                    GammaVector::from_i64(n, &a).unwrap(),
                    GammaVector::from_i64(n, &b).unwrap(),
                )
            })
    })
}
