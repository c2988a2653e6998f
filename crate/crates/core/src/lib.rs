//! Spherical catenoids in hyperbolic 3-space: the Gomes function, area
//! deficits, the stability constants, circle-pair geometry, competitor
//! annuli and mesh export.
//!
//! Every routine is generic over [`Real`] (`f32` or `f64`). The `*F64`
//! aliases fix the scalar for the common case.
//!
//! ```
//! use catenoid::{gomes_rho, Tolerance};
//!
//! let rho = gomes_rho(0.6_f64, &Tolerance::default()).unwrap();
//! assert!(rho > 0.4 && rho < 0.51);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod catenoid;
pub mod circles;
pub mod competitor;
pub mod constants;
pub mod error;
pub mod export;
pub mod quadrature;
pub mod scalar;

pub use crate::catenoid::{
    area_deficit, area_difference, catenary_x, concavity_terms, disk_area_total, gomes_rho, mvt_f,
    plane_separation, sample_catenary, tube_area, AreaReport, CatenarySample, Catenoid,
};
pub use crate::circles::{
    apply_isometry, axis_translation, boundary_circles, catenoids_for_circles,
    catenoids_for_distance, circle_from_center_radius, normalize_coaxial, plane_distance,
    plane_distance_closed, BoundaryPoint, CatenoidSolution, CatenoidSolutions, CircleAtInfinity,
    IsometryMap,
};
pub use crate::competitor::{
    classify_regime, competitor_area, find_cheaper_competitor, CompetitorReport, CompetitorSetup,
    Regime, RegimeLabel,
};
pub use crate::constants::{
    compute_k, constants_bundle, default_bundle, solve_a_0, solve_a_big_l, solve_a_c, solve_root,
    sufficient_neck, ConstantsBundle, RootFindConfig,
};
pub use crate::error::{Error, Result};
pub use crate::export::{
    build_mesh, sweep, write_obj, MeshData, MeshParams, SweepFunction, SweepTable,
};
pub use crate::quadrature::{QuadratureResult, Tolerance};
pub use crate::scalar::Real;
pub use num_complex::Complex;

pub type CatenoidF64 = Catenoid<f64>;
pub type CatenoidF32 = Catenoid<f32>;
pub type ToleranceF64 = Tolerance<f64>;
pub type ToleranceF32 = Tolerance<f32>;
pub type ConstantsBundleF64 = ConstantsBundle<f64>;
pub type ConstantsBundleF32 = ConstantsBundle<f32>;
pub type CircleF64 = CircleAtInfinity<f64>;
pub type IsometryMapF64 = IsometryMap<f64>;
pub type CatenoidSolutionsF64 = CatenoidSolutions<f64>;
pub type CompetitorReportF64 = CompetitorReport<f64>;
pub type MeshDataF64 = MeshData<f64>;
pub type SweepTableF64 = SweepTable<f64>;
