//! Building sets: validation, restriction, contraction, substitution and
//! decomposition.
//!
//! Restriction and contraction keep the original node labels and carry an
//! explicit ground set instead of renumbering to `[k]`. Use
//! [`BuildingSet::canonicalize`] when a `{1..k}` labeling is needed.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::node_set::{NodeSet, MAX_LABEL};

/// Largest supported ground set; subset enumeration is `2^m`.
pub const MAX_GROUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildingSetError {
    #[error("building set element is empty")]
    EmptyElement,
    #[error("element {set} is not contained in the ground set {ground}")]
    OutsideGround { set: NodeSet, ground: NodeSet },
    #[error("missing singleton {{{0}}}")]
    MissingSingleton(usize),
    #[error("{0} and {1} intersect but their union is not an element")]
    UnionViolation(NodeSet, NodeSet),
    #[error("{0} is not an element of the building set")]
    SNotInB(NodeSet),
    #[error("contraction along the whole ground set leaves an empty ground set")]
    EmptyGround,
    #[error("building set is not connected")]
    NotConnected,
    #[error("ground set of size {0} exceeds the supported maximum of {MAX_GROUND}")]
    GroundTooLarge(usize),
    #[error("substitution needs {expected} parts, got {got}")]
    PartCountMismatch { expected: usize, got: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A validated building set on an explicit ground set.
///
/// Elements are distinct, nonempty, and kept sorted by cardinality and then
/// lexicographically, so iteration order is deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BuildingSet {
    ground: NodeSet,
    elements: Vec<NodeSet>,
}

/// The partition of a set into the fewest disjoint building-set elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Parts ordered by their minimum label.
    pub parts: Vec<NodeSet>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn union(&self) -> NodeSet {
        self.parts.iter().fold(NodeSet::EMPTY, |acc, p| acc.union(*p))
    }
}

/// Checks the building-set axioms for `collection` on `[ground_size]`.
pub fn validate<I>(collection: I, ground_size: usize) -> Result<BuildingSet, BuildingSetError>
where
    I: IntoIterator<Item = NodeSet>,
{
    if ground_size > MAX_GROUND {
        return Err(BuildingSetError::GroundTooLarge(ground_size));
    }
    validate_on(NodeSet::interval(ground_size), collection)
}

/// Checks the building-set axioms for `collection` on an arbitrary ground set.
pub fn validate_on<I>(ground: NodeSet, collection: I) -> Result<BuildingSet, BuildingSetError>
where
    I: IntoIterator<Item = NodeSet>,
{
    if ground.len() > MAX_GROUND {
        return Err(BuildingSetError::GroundTooLarge(ground.len()));
    }
    let mut distinct = BTreeSet::new();
    for set in collection {
        if set.is_empty() {
            return Err(BuildingSetError::EmptyElement);
        }
        if !set.is_subset(ground) {
            return Err(BuildingSetError::OutsideGround { set, ground });
        }
        distinct.insert(set);
    }
    for label in ground {
        if !distinct.contains(&NodeSet::singleton(label)) {
            return Err(BuildingSetError::MissingSingleton(label));
        }
    }
    let elements: Vec<NodeSet> = distinct.into_iter().collect();
    let candidate = BuildingSet { ground, elements };
    for (k, &a) in candidate.elements.iter().enumerate() {
        for &b in &candidate.elements[k + 1..] {
            if a.intersects(b) && !candidate.contains(a.union(b)) {
                return Err(BuildingSetError::UnionViolation(a, b));
            }
        }
    }
    Ok(candidate)
}

impl BuildingSet {
    /// Wraps a collection already known to satisfy the axioms.
    pub(crate) fn from_trusted(ground: NodeSet, elements: impl IntoIterator<Item = NodeSet>) -> Self {
        let elements: BTreeSet<NodeSet> = elements.into_iter().collect();
        let built = BuildingSet {
            ground,
            elements: elements.into_iter().collect(),
        };
        debug_assert!(validate_on(ground, built.elements.iter().copied()).is_ok());
        built
    }

    /// The singletons of `[m]` together with `[m]`: its nestohedron is the simplex.
    pub fn simplex(m: usize) -> Result<Self, BuildingSetError> {
        if m > MAX_GROUND {
            return Err(BuildingSetError::GroundTooLarge(m));
        }
        let ground = NodeSet::interval(m);
        Ok(Self::from_trusted(
            ground,
            ground.iter().map(NodeSet::singleton).chain((m > 0).then_some(ground)),
        ))
    }

    /// Only the singletons of `[m]`.
    pub fn discrete(m: usize) -> Result<Self, BuildingSetError> {
        if m > MAX_GROUND {
            return Err(BuildingSetError::GroundTooLarge(m));
        }
        let ground = NodeSet::interval(m);
        Ok(Self::from_trusted(ground, ground.iter().map(NodeSet::singleton)))
    }

    pub fn ground(&self) -> NodeSet {
        self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn elements(&self) -> &[NodeSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, set: NodeSet) -> bool {
        self.elements.binary_search(&set).is_ok()
    }

    /// True iff the whole ground set is an element.
    pub fn is_connected(&self) -> bool {
        !self.ground.is_empty() && self.contains(self.ground)
    }

    /// Dimension of the nestohedron of a connected building set: `|ground| - 1`.
    pub fn dimension(&self) -> usize {
        self.ground.len().saturating_sub(1)
    }

    /// Elements other than the ground set; these index the facets.
    pub fn proper_elements(&self) -> impl Iterator<Item = NodeSet> + '_ {
        let ground = self.ground;
        self.elements.iter().copied().filter(move |&s| s != ground)
    }

    pub fn is_subset_of(&self, other: &BuildingSet) -> bool {
        self.ground == other.ground && self.elements.iter().all(|&s| other.contains(s))
    }

    /// `B|_S = {S' in B : S' ⊆ S}` on ground set `S`.
    pub fn restriction(&self, s: NodeSet) -> Result<BuildingSet, BuildingSetError> {
        if !self.contains(s) {
            return Err(BuildingSetError::SNotInB(s));
        }
        Ok(BuildingSet {
            ground: s,
            elements: self.elements.iter().copied().filter(|e| e.is_subset(s)).collect(),
        })
    }

    /// `B/S = {S' \ S : S' in B}` (empty images dropped, duplicates merged) on
    /// ground set `ground \ S`.
    pub fn contraction(&self, s: NodeSet) -> Result<BuildingSet, BuildingSetError> {
        if !self.contains(s) {
            return Err(BuildingSetError::SNotInB(s));
        }
        if s == self.ground {
            return Err(BuildingSetError::EmptyGround);
        }
        let images: BTreeSet<NodeSet> = self
            .elements
            .iter()
            .map(|e| e.difference(s))
            .filter(|e| !e.is_empty())
            .collect();
        Ok(BuildingSet {
            ground: self.ground.difference(s),
            elements: images.into_iter().collect(),
        })
    }

    /// Substitutes `parts[k]` for the `k`-th ground node (ascending label order).
    ///
    /// Part grounds are relabeled into consecutive blocks of `[k_1 + ... + k_r]`.
    /// The result contains every relabeled part element and, for each `S` in
    /// `self`, the union of the blocks indexed by `S`.
    pub fn substitution(&self, parts: &[BuildingSet]) -> Result<BuildingSet, BuildingSetError> {
        if !self.is_connected() || parts.iter().any(|p| !p.is_connected()) {
            return Err(BuildingSetError::NotConnected);
        }
        if parts.len() != self.ground.len() {
            return Err(BuildingSetError::PartCountMismatch {
                expected: self.ground.len(),
                got: parts.len(),
            });
        }
        let total: usize = parts.iter().map(BuildingSet::ground_size).sum();
        if total > MAX_GROUND {
            return Err(BuildingSetError::GroundTooLarge(total));
        }

        // block[label] = relabeled ground of the part substituted for `label`
        let mut block = [NodeSet::EMPTY; MAX_LABEL + 1];
        let mut elements = BTreeSet::new();
        let mut offset = 0;
        for (label, part) in self.ground.iter().zip(parts) {
            let relabel = relabeling(part.ground, offset);
            block[label] = relabel(part.ground);
            elements.extend(part.elements.iter().map(|&e| relabel(e)));
            offset += part.ground_size();
        }
        for s in &self.elements {
            elements.insert(s.iter().fold(NodeSet::EMPTY, |acc, l| acc.union(block[l])));
        }
        Ok(BuildingSet::from_trusted(NodeSet::interval(total), elements))
    }

    /// Splits `s` into the fewest pairwise disjoint elements of `self`.
    ///
    /// Each part is the union of all elements inside `s` through one node;
    /// union-closure makes that union an element, and the parts are exactly
    /// the maximal elements contained in `s`.
    pub fn decompose(&self, s: NodeSet) -> Result<Decomposition, BuildingSetError> {
        if !s.is_subset(self.ground) {
            return Err(BuildingSetError::OutsideGround {
                set: s,
                ground: self.ground,
            });
        }
        let inside: Vec<NodeSet> = self.elements.iter().copied().filter(|e| e.is_subset(s)).collect();
        let mut parts = Vec::new();
        let mut covered = NodeSet::EMPTY;
        for v in s {
            if covered.contains(v) {
                continue;
            }
            let part = inside
                .iter()
                .filter(|e| e.contains(v))
                .fold(NodeSet::EMPTY, |acc, e| acc.union(*e));
            covered = covered.union(part);
            parts.push(part);
        }
        Ok(Decomposition { parts })
    }

    /// Renumbers the ground set to `{1, ..., k}` preserving label order.
    pub fn canonicalize(&self) -> BuildingSet {
        let relabel = relabeling(self.ground, 0);
        BuildingSet::from_trusted(
            NodeSet::interval(self.ground.len()),
            self.elements.iter().map(|&e| relabel(e)),
        )
    }

    /// Parses the line-oriented text format:
    ///
    /// ```text
    /// # comment
    /// ground 3
    /// 1
    /// 2
    /// 3
    /// 1,2
    /// ```
    pub fn parse_text(text: &str) -> Result<BuildingSet, BuildingSetError> {
        let mut ground_size = None;
        let mut sets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| BuildingSetError::Parse {
                line: line_no,
                message,
            };
            match ground_size {
                None => {
                    let value = line
                        .strip_prefix("ground")
                        .filter(|rest| rest.starts_with(char::is_whitespace))
                        .ok_or_else(|| parse_err(format!("expected `ground <m>`, found `{line}`")))?;
                    let m: usize = value
                        .trim()
                        .parse()
                        .map_err(|_| parse_err(format!("invalid ground size `{}`", value.trim())))?;
                    if m == 0 {
                        return Err(parse_err("ground size must be positive".into()));
                    }
                    if m > MAX_GROUND {
                        return Err(BuildingSetError::GroundTooLarge(m));
                    }
                    ground_size = Some(m);
                }
                Some(m) => {
                    let mut set = NodeSet::EMPTY;
                    for token in line.split(',') {
                        let token = token.trim();
                        let label: usize = token
                            .parse()
                            .map_err(|_| parse_err(format!("invalid node label `{token}`")))?;
                        if label == 0 || label > m {
                            return Err(parse_err(format!("node label {label} outside [1, {m}]")));
                        }
                        set.insert(label);
                    }
                    sets.push(set);
                }
            }
        }
        let m = ground_size.ok_or(BuildingSetError::Parse {
            line: 0,
            message: "missing `ground <m>` header".into(),
        })?;
        validate(sets, m)
    }

    /// Inverse of [`BuildingSet::parse_text`] for sets on `[m]`; other grounds
    /// are canonicalized first.
    pub fn to_text(&self) -> String {
        let canonical;
        let bs = if self.ground == NodeSet::interval(self.ground.len()) {
            self
        } else {
            canonical = self.canonicalize();
            &canonical
        };
        let mut out = format!("ground {}\n", bs.ground.len());
        for e in &bs.elements {
            let labels: Vec<String> = e.iter().map(|l| l.to_string()).collect();
            out.push_str(&labels.join(","));
            out.push('\n');
        }
        out
    }
}

/// Maps the members of `ground`, in ascending order, to `offset+1, offset+2, ...`.
fn relabeling(ground: NodeSet, offset: usize) -> impl Fn(NodeSet) -> NodeSet {
    let mut target = [0usize; MAX_LABEL + 1];
    for (k, label) in ground.iter().enumerate() {
        target[label] = offset + k + 1;
    }
    move |s: NodeSet| s.iter().map(|l| target[l]).collect()
}

/// `J = {{1}, {2}, {1,2}}`, whose nestohedron is the interval.
pub fn interval_building_set() -> BuildingSet {
    BuildingSet::from_trusted(
        NodeSet::interval(2),
        [
            NodeSet::singleton(1),
            NodeSet::singleton(2),
            NodeSet::interval(2),
        ],
    )
}

impl fmt::Debug for BuildingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BuildingSet(ground={}, ", self.ground)?;
        f.debug_list().entries(self.elements.iter()).finish()?;
        f.write_str(")")
    }
}

impl fmt::Display for BuildingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.elements.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}
