//! Exact-rational tilt stability on polarized surfaces.
//!
//! Numerical classes are stored H-contracted as `(r, c1·H^{n-1}, ch2·H^{n-2})`.
//! Everything downstream (tilted rank and degree, central charges, walls,
//! destabilizer enumeration, Reider-type criteria) is a function of that
//! triple together with the polarization data in [`Geometry`]. No floating
//! point is used anywhere in this crate.
//!
//! The tilt parameter is carried as `(s, τ)` with `τ = t²`, which keeps every
//! comparison rational: slopes at a common point compare by cross
//! multiplication because `t > 0` cancels.

pub mod destab;
pub mod error;
pub mod lattice;
pub mod rational;
pub mod reider;
pub mod tilt;
pub mod walls;

pub use destab::{
    bogomolov_cap, destabilizer_shape_report, enumerate_destabilizers, rank_bound_at,
    DestabilizerCandidate, EnumerateOptions, Enumeration, OpenFamily, Phase, Relation, ShapeRow,
    SubSide,
};
pub use error::{Error, ParseError, Result};
pub use lattice::{
    hodge_ok, mumford_slope, parse_divisor_list, shift1, standard_class, twist, DivisorData,
    Geometry, NumericalClass, QDivisor, StandardClass,
};
pub use rational::Q;
pub use reider::{
    bridgeland_obstruction_shapes, enumerate_obstruction_curves, fujita_bridgeland,
    fujita_classical, picard_rank_one_vanishing, reider_bridgeland, reider_classical,
    stable_extension_possible, CertificateStep, CertifiedBound, ObstructionShape, ReiderVerdict,
    Rel, VanishingCheck, VerdictStatus,
};
pub use tilt::{
    central_charge, deg_st, positivity_margin, quot_window_o, rank_s, slope_cmp, slope_frac,
    sub_window_l, verify_compact_form, CentralCharge, ProjectiveSlope, Side, SlopeOrdering,
    TiltPoint,
};
pub use walls::{
    in_circle, kodaira_region, side, thaddeus_ladder, wall, wall_polynomial, LadderRow, Wall,
    WallPolynomial, WallSide,
};
