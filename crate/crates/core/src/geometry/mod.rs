//! Exact lattice and cone algebra: `G(S)`, `cone(S)`, relative interiors,
//! faces and extremal rays. No floating point is used anywhere.

pub mod cone;
pub mod lattice;
pub mod linalg;
mod lp;

pub use cone::{
    affine_span_intersection, cone_intersection, cone_member, describe, extremal_rays, faces,
    is_simplicial, relint_member, ConeDescription, ConeGens, Face, Subspace,
};
pub use lattice::{hnf, lattice_intersect, lattice_member, rank_one_generator, Lattice};

use crate::error::{Error, Result};

/// Ambient dimensions above this are rejected.
pub const MAX_AMBIENT_DIM: usize = 8;

pub(crate) fn check_ambient(dim: usize) -> Result<()> {
    if dim > MAX_AMBIENT_DIM {
        return Err(Error::DimensionTooLarge {
            dim,
            max: MAX_AMBIENT_DIM,
        });
    }
    Ok(())
}
