//! Faces of a nestohedron via nested collections.
//!
//! For a connected building set `B` on a ground set of size `n + 1`, the
//! facets of `P_B` are indexed by `B \ {ground}`, and a collection of facets
//! meets in a face exactly when
//!
//! 1. any two members are nested or disjoint, and
//! 2. no two or more pairwise disjoint members have their union in `B`.
//!
//! A nested collection of `k` members is a face of dimension `n - k`; the
//! empty collection is the polytope itself.

use num_bigint::BigInt;
use thiserror::Error;

use crate::building_sets::BuildingSet;
use crate::face_polynomials::FVector;
use crate::node_set::NodeSet;

/// Largest ground set accepted by the exhaustive face enumeration.
pub const MAX_ENUMERATION_GROUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceError {
    #[error("building set is not connected")]
    NotConnected,
    #[error("ground set of size {0} exceeds the enumeration limit of {MAX_ENUMERATION_GROUND}")]
    GroundTooLarge(usize),
    #[error("{0} does not index a facet")]
    ElementNotFacet(NodeSet),
}

/// A set of facets with a nonempty common intersection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NestedCollection {
    pub facets: Vec<NodeSet>,
}

impl NestedCollection {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }
}

/// Checks the two face conditions for `facets` directly.
pub fn is_face(b: &BuildingSet, facets: &[NodeSet]) -> Result<bool, FaceError> {
    if !b.is_connected() {
        return Err(FaceError::NotConnected);
    }
    if let Some(&bad) = facets.iter().find(|&&s| s == b.ground() || !b.contains(s)) {
        return Err(FaceError::ElementNotFacet(bad));
    }
    let nested_or_disjoint = facets.iter().enumerate().all(|(k, &x)| {
        facets[k + 1..]
            .iter()
            .all(|&y| x.is_subset(y) || y.is_subset(x) || x.is_disjoint(y))
    });
    if !nested_or_disjoint {
        return Ok(false);
    }
    // every pairwise disjoint subfamily of size >= 2
    let count = facets.len();
    for mask in 1u64..(1u64 << count) {
        if mask.count_ones() < 2 {
            continue;
        }
        let chosen: Vec<NodeSet> = (0..count)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| facets[k])
            .collect();
        let disjoint = chosen
            .iter()
            .enumerate()
            .all(|(k, &x)| chosen[k + 1..].iter().all(|&y| x.is_disjoint(y)));
        if disjoint {
            let union = chosen.iter().fold(NodeSet::EMPTY, |acc, s| acc.union(*s));
            if b.contains(union) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of faces of each dimension, `f_0, ..., f_n` (with `f_n = 1`).
pub fn f_vector(b: &BuildingSet) -> Result<FVector, FaceError> {
    let counts = NestedComplex::new(b)?.count_by_size();
    let f = counts.iter().rev().map(|&c| BigInt::from(c)).collect();
    Ok(FVector::new(f).expect("the empty collection is always a face"))
}

/// Maximal nested collections (the vertices of `P_B`).
pub fn vertex_collections(b: &BuildingSet) -> Result<Vec<NestedCollection>, FaceError> {
    let mut out = Vec::new();
    for_each_vertex(b, |facets| {
        out.push(NestedCollection {
            facets: facets.to_vec(),
        })
    })?;
    Ok(out)
}

/// Streams the maximal nested collections to `visit` without storing them.
pub fn for_each_vertex<F>(b: &BuildingSet, mut visit: F) -> Result<(), FaceError>
where
    F: FnMut(&[NodeSet]),
{
    let complex = NestedComplex::new(b)?;
    let mut scratch = Vec::new();
    complex.walk(&mut |chosen: &[usize], maximal: bool| {
        if maximal {
            scratch.clear();
            scratch.extend(chosen.iter().map(|&k| complex.original[k]));
            scratch.sort();
            visit(&scratch);
        }
    });
    Ok(())
}

/// Whether the nested set complex is flag: every family of facets that
/// pairwise intersect has a common intersection.
pub fn is_flag(b: &BuildingSet) -> Result<bool, FaceError> {
    Ok(minimal_non_face(b)?.is_none())
}

/// A pairwise-intersecting family of at least three facets with empty total
/// intersection, if one exists.
///
/// Pairwise intersection already gives the nested-or-disjoint condition, so
/// a failure must be a family of pairwise disjoint members, each pair of
/// which has its union outside `B`, whose total union is in `B`.
pub fn minimal_non_face(b: &BuildingSet) -> Result<Option<Vec<NodeSet>>, FaceError> {
    let complex = NestedComplex::new(b)?;
    let mut chosen = Vec::new();
    let found = complex.search_non_face(0, 0, &mut chosen);
    Ok(found.then(|| {
        let mut family: Vec<NodeSet> = chosen.iter().map(|&k| complex.original[k]).collect();
        family.sort();
        family
    }))
}

/// Dense working form of a connected building set: ground relabeled to bits
/// `0..k`, facets sorted by cardinality descending, pairwise compatibility
/// precomputed as bit rows.
struct NestedComplex {
    dimension: usize,
    facets: Vec<u32>,
    original: Vec<NodeSet>,
    in_b: Vec<bool>,
    // compatible[i] = facets j forming a face together with facet i
    compatible: Vec<Vec<u64>>,
    words: usize,
}

impl NestedComplex {
    fn new(b: &BuildingSet) -> Result<Self, FaceError> {
        if !b.is_connected() {
            return Err(FaceError::NotConnected);
        }
        let k = b.ground_size();
        if k > MAX_ENUMERATION_GROUND {
            return Err(FaceError::GroundTooLarge(k));
        }
        let labels = b.ground().to_vec();
        let compress = |s: NodeSet| {
            labels
                .iter()
                .enumerate()
                .filter(|&(_, &l)| s.contains(l))
                .fold(0u32, |acc, (bit, _)| acc | (1 << bit))
        };
        let mut in_b = vec![false; 1 << k];
        for &e in b.elements() {
            in_b[compress(e) as usize] = true;
        }
        let mut original: Vec<NodeSet> = b.proper_elements().collect();
        original.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
        let facets: Vec<u32> = original.iter().map(|&s| compress(s)).collect();

        let words = facets.len().div_ceil(64);
        let mut compatible = vec![vec![0u64; words]; facets.len()];
        for i in 0..facets.len() {
            for j in (i + 1)..facets.len() {
                let (x, y) = (facets[i], facets[j]);
                let ok = if x & y == 0 {
                    !in_b[(x | y) as usize]
                } else {
                    x & y == x || x & y == y
                };
                if ok {
                    compatible[i][j / 64] |= 1 << (j % 64);
                    compatible[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        Ok(NestedComplex {
            dimension: k - 1,
            facets,
            original,
            in_b,
            compatible,
            words,
        })
    }

    /// Face counts indexed by collection size `0..=n`.
    fn count_by_size(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.dimension + 1];
        self.walk(&mut |chosen: &[usize], _| counts[chosen.len()] += 1);
        counts
    }

    /// Visits every nested collection once (members chosen in increasing
    /// index order), flagging the maximal ones.
    fn walk<F: FnMut(&[usize], bool)>(&self, visit: &mut F) {
        let all = self.full_row();
        let mut chosen = Vec::with_capacity(self.dimension);
        self.extend(&all, 0, &mut chosen, visit);
    }

    fn full_row(&self) -> Vec<u64> {
        let mut row = vec![0u64; self.words];
        for i in 0..self.facets.len() {
            row[i / 64] |= 1 << (i % 64);
        }
        row
    }

    fn extend<F: FnMut(&[usize], bool)>(
        &self,
        candidates: &[u64],
        start: usize,
        chosen: &mut Vec<usize>,
        visit: &mut F,
    ) {
        // A collection is maximal when no facet at all (any index) extends it.
        let mut maximal = true;
        let mut next = vec![0u64; self.words];
        for word in 0..self.words {
            let mut bits = candidates[word];
            while bits != 0 {
                let i = word * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if !self.extends(chosen, i) {
                    continue;
                }
                maximal = false;
                if i < start {
                    continue;
                }
                for (w, slot) in next.iter_mut().enumerate() {
                    *slot = candidates[w] & self.compatible[i][w];
                }
                chosen.push(i);
                self.extend(&next, i + 1, chosen, visit);
                chosen.pop();
            }
        }
        visit(chosen, maximal);
    }

    /// Facet `i`, already pairwise compatible with `chosen`, passes the
    /// disjoint-union condition on every subfamily of size >= 3 containing it.
    fn extends(&self, chosen: &[usize], i: usize) -> bool {
        let x = self.facets[i];
        let disjoint: Vec<u32> = chosen
            .iter()
            .map(|&c| self.facets[c])
            .filter(|&c| c & x == 0)
            .collect();
        if disjoint.len() < 2 {
            return true;
        }
        !self.disjoint_union_hits(&disjoint, 0, x, 1)
    }

    fn disjoint_union_hits(&self, pool: &[u32], from: usize, union: u32, size: usize) -> bool {
        if size >= 3 && self.in_b[union as usize] {
            return true;
        }
        (from..pool.len()).any(|k| {
            pool[k] & union == 0 && self.disjoint_union_hits(pool, k + 1, union | pool[k], size + 1)
        })
    }

    /// Depth-first search for a pairwise disjoint, pairwise compatible
    /// family of >= 3 facets whose union lies in `B`.
    fn search_non_face(&self, from: usize, union: u32, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() >= 3 && self.in_b[union as usize] {
            return true;
        }
        for i in from..self.facets.len() {
            let x = self.facets[i];
            if x & union != 0 {
                continue;
            }
            if !chosen
                .iter()
                .all(|&c| self.compatible[c][i / 64] >> (i % 64) & 1 == 1)
            {
                continue;
            }
            chosen.push(i);
            if self.search_non_face(i + 1, union | x, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}
