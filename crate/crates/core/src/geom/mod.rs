//! Intersection theory on the model varieties: Chow classes, canonical and
//! Todd classes, Chern data of resolutions, Riemann-Roch, and the
//! Grothendieck-Riemann-Roch pushforward to P¹.

mod chern;
mod chow;

pub use chern::{chern_from_resolution, euler_characteristic, grr_pushforward, ChernData};
pub use chow::{
    basis_labels, canonical_class, relative_canonical_class, relative_tangent_chern,
    relative_todd_class, relative_todd_total, tangent_chern, todd_class, todd_total, ChowClass,
    GeomError,
};
