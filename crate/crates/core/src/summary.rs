//! The full f → h → g, γ pipeline for one building set.

use thiserror::Error;

use crate::building_sets::BuildingSet;
use crate::face_complex::{f_vector, FaceError};
use crate::face_polynomials::{
    g_from_h, gamma_from_h, h_from_f, FVector, GVector, GammaVector, HVector, PolyError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VectorError {
    #[error(transparent)]
    Face(#[from] FaceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeVectors {
    pub f: FVector,
    pub h: HVector,
    pub g: GVector,
    pub gamma: GammaVector,
}

/// Enumerates faces of `P_B` and derives every other vector from the counts.
pub fn polytope_vectors(b: &BuildingSet) -> Result<PolytopeVectors, VectorError> {
    let f = f_vector(b)?;
    let h = h_from_f(&f);
    let gamma = gamma_from_h(&h)?;
    let g = g_from_h(&h);
    Ok(PolytopeVectors { f, h, g, gamma })
}
