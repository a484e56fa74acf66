//! f-, h-, g- and γ-vectors of nestohedra and graph-associahedra.
//!
//! Faces are enumerated directly from building sets through nested
//! collections. On top of that the crate provides the inductive recurrences
//! and closed forms for associahedra, cyclohedra, permutohedra and
//! stellohedra, truncated generating-function identity checks, and
//! exhaustive verification of the upper and lower bounds for γ-vectors of
//! graph-associahedra over small graph classes.
//!
//! Node labels are 1-indexed throughout.

pub mod bounds;
pub mod building_sets;
pub mod face_complex;
pub mod face_polynomials;
pub mod families;
pub mod graphs;
pub mod node_set;
pub mod summary;

pub use building_sets::{interval_building_set, validate, BuildingSet, BuildingSetError, Decomposition};
pub use face_complex::{f_vector, is_face, is_flag, vertex_collections, FaceError, NestedCollection};
pub use face_polynomials::{
    convolve, f_from_h, g_from_gamma, g_from_h, gamma_from_h, h_from_f, h_from_g, h_from_gamma,
    leq_componentwise, FVector, FaceVector, GVector, GammaVector, HVector, Int, PolyError,
};
pub use graphs::{
    complete_graph, cycle_graph, enumerate_connected_graphs, enumerate_hamiltonian_graphs,
    enumerate_trees, path_graph, star_graph, GraphError, SimpleGraph,
};
pub use node_set::NodeSet;
pub use summary::{polytope_vectors, PolytopeVectors, VectorError};
