//! Simulation and verification toolkit for multichordal SLE and CLE in the
//! non-simple regime `kappa in (4, 8)`.
//!
//! The crate is organised around the objects that appear in the resampling
//! description of multichordal SLE:
//!
//! * [`linkpat`] — planar (noncrossing) link patterns on `2N` boundary points:
//!   enumeration, crossing tests, rotation, and the pattern induced after a
//!   partial exploration.
//! * [`conformal`] — numerical conformal machinery: exact one-step Loewner
//!   slit maps, SLE_kappa(rho) driving paths, trace extraction, geodesic
//!   zipper uniformization of Jordan domains, cross-ratios and the
//!   quadrilateral modulus.
//! * [`hookup`] — the bichordal hookup probability
//!   `H(L) = Y(L) / (Y(L) - 2 cos(4 pi / kappa) Y(1/L))` built from the Gauss
//!   hypergeometric function, and the interior-pattern sampler it drives.
//! * [`chords`] — discretized multichordal configurations in the unit disc,
//!   face detection, single-chord and pair resampling, and the Gibbs kernel
//!   whose invariant law is the multichordal SLE.
//! * [`cle`] — one exploration-tree branch of a CLE (an SLE_kappa(kappa-6)),
//!   boundary-touching loop segments, partial explorations of annuli, and the
//!   delta-separation statistic of their marked points.
//! * [`harness`] — reproducible experiment orchestration, CSV/JSON-lines/SVG
//!   emission, and the deterministic counter-based seeding scheme.
//!
//! Every sampler is a pure function of its seed; see `examples/` for one
//! runnable program per capability and the `mcle` binary for the CLI.

pub mod chords;
pub mod cle;
pub mod conformal;
pub mod error;
pub mod geom;
pub mod harness;
pub mod hookup;
pub mod linkpat;

pub use error::{Error, Result};
