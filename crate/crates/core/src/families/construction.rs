//! Growing a graph-associahedron by one dimension.
//!
//! Attaching a new node `m + 1` to a clique `V` of a connected graph `Γ` on
//! `[m]` turns `P_Γ × I` into `P_Γ'` by shaving the codimension-2 faces
//! `F_{m+1} ∩ F_S` for every proper `S ∈ B(Γ)` meeting `V`. Each shaved face
//! is `P_{B|S} × P_{B/S}`, so
//!
//! ```text
//! γ(P_Γ') = γ(P_Γ) + τ Σ_S γ(P_{B|S}) γ(P_{B/S})
//! H(P_Γ') = (α + t) H(P_Γ) + αt Σ_S H(P_{B|S}) H(P_{B/S})
//! ```

use num_traits::Zero;

use super::FamilyError;
use crate::face_polynomials::{poly_mul, FaceVector, GammaVector, HVector, Int};
use crate::graphs::SimpleGraph;
use crate::node_set::NodeSet;
use crate::summary::{polytope_vectors, VectorError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub graph: SimpleGraph,
    pub gamma: GammaVector,
    pub h: HVector,
}

impl From<VectorError> for FamilyError {
    fn from(e: VectorError) -> Self {
        match e {
            VectorError::Face(f) => FamilyError::Face(f),
            VectorError::Poly(p) => FamilyError::GammaUndefined(p),
        }
    }
}

fn add_into(acc: &mut Vec<Int>, p: &[Int]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Int::zero());
    }
    for (a, v) in acc.iter_mut().zip(p) {
        *a += v;
    }
}

/// Attaches node `max label + 1` to the clique `v` and returns the new
/// graph with its γ- and h-vectors computed through the shaving formulas.
///
/// The factors `P_{B|S}` and `P_{B/S}` are evaluated by face enumeration.
pub fn construction_ind(graph: &SimpleGraph, v: NodeSet) -> Result<ConstructionResult, FamilyError> {
    if !graph.is_connected() {
        return Err(FamilyError::NotConnected);
    }
    let is_clique = v
        .iter()
        .all(|a| v.iter().all(|b| a == b || graph.has_edge(a, b)));
    if v.is_empty() || !v.is_subset(graph.nodes()) || !is_clique {
        return Err(FamilyError::VNotClique(v));
    }

    let b = graph.graphical_building_set()?;
    let base = polytope_vectors(&b)?;
    let n = b.dimension() + 1;

    let mut gamma_shaved: Vec<Int> = Vec::new();
    let mut h_shaved: Vec<Int> = Vec::new();
    for s in b.proper_elements().filter(|s| s.intersects(v)) {
        let restricted = polytope_vectors(&b.restriction(s).expect("s is an element"))?;
        let contracted = polytope_vectors(&b.contraction(s).expect("s is a proper element"))?;
        add_into(
            &mut gamma_shaved,
            &poly_mul(restricted.gamma.entries(), contracted.gamma.entries()),
        );
        add_into(
            &mut h_shaved,
            &poly_mul(restricted.h.entries(), contracted.h.entries()),
        );
    }

    // γ' = γ + τ · shaved
    let mut gamma: Vec<Int> = base.gamma.entries().to_vec();
    let mut shifted = vec![Int::zero()];
    shifted.extend(gamma_shaved);
    add_into(&mut gamma, &shifted);
    while gamma.len() > n / 2 + 1 && gamma.last().is_some_and(|x| x.is_zero()) {
        gamma.pop();
    }

    // H' = (α + t) H + αt · shaved
    let mut h = vec![Int::zero(); n + 1];
    for (i, c) in base.h.entries().iter().enumerate() {
        h[i] += c;
        h[i + 1] += c;
    }
    let mut shifted = vec![Int::zero()];
    shifted.extend(h_shaved);
    add_into(&mut h, &shifted);

    let new_node = graph.nodes().max().expect("connected graph has a node") + 1;
    let mut extended = SimpleGraph::on_nodes(graph.nodes().union(NodeSet::singleton(new_node)));
    for (x, y) in graph.edges() {
        extended.add_edge(x, y).expect("edge of the original graph");
    }
    for u in v {
        extended.add_edge(u, new_node).expect("new edge to the clique");
    }

    Ok(ConstructionResult {
        graph: extended,
        gamma: GammaVector::new(n, gamma).map_err(FamilyError::GammaUndefined)?,
        h: HVector::new(h),
    })
}
