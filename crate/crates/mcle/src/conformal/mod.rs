//! Numerical conformal machinery.
//!
//! * [`map`] — composable conformal maps built from elementary factors
//!   (Mobius transforms, Loewner slit maps, square roots and squares).
//! * [`loewner`] — driving paths, exact one-step chordal Loewner solutions,
//!   and trace extraction by reverse composition.
//! * [`driving`] — Euler-Maruyama sampling of SLE_kappa(rho) driving paths.
//! * [`zipper`] — geodesic zipper uniformization of Jordan domains onto the
//!   unit disc.
//! * [`modulus`] — boundary cross-ratios and the quadrilateral modulus
//!   `L(r)` with its bisection inverse.

pub mod driving;
pub mod loewner;
pub mod map;
pub mod modulus;
pub mod zipper;

pub use driving::{sample_driving, DrivingConfig, StopReason};
pub use loewner::{solve_loewner_forward, trace_from_driving, trace_tips, DrivingPath, LoewnerPoint};
pub use map::{Factor, MapRep};
pub use modulus::{cross_ratio, modulus_from_r, r_from_modulus, Quadrilateral};
pub use zipper::{densify_closed_polyline, zipper_uniformize, ZipperMap};
