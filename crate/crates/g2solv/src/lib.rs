//! Exact-arithmetic toolkit for G2 structures on rank-one solvable
//! extensions of six-dimensional nilpotent Lie algebras.
//!
//! The crate computes, over the rationals (and over ℚ(i√2) where needed):
//!
//! * Chevalley–Eilenberg structure constants, Koszul connections, and
//!   conformal rescalings for the bundled example algebras ([`lie`],
//!   [`fixtures`]);
//! * the exterior calculus on the 7-dimensional frame — wedge, Hodge dual,
//!   interior product, d and δ ([`exterior`]);
//! * the standard 3-form, the torsion components τ1…τ4 of any 3-form, and
//!   its torsion-class label ([`g2`]);
//! * the real spin representation, spinor lifts of connections with totally
//!   skew torsion, and the calibration of the two convention constants
//!   ([`spin`]);
//! * the eleven-monomial torsion ansatz, the catalogued solution family,
//!   the isolated and complex solutions, and the holonomy reduction cases
//!   ([`ansatz`]);
//! * a random-restart numeric search for torsions admitting a parallel
//!   spinor ([`search`]);
//! * the exact cross-check batteries and the structured reports behind the
//!   `g2solv` command-line binary ([`verify`], [`report`]).

pub mod ansatz;
pub mod exterior;
pub mod fixtures;
pub mod g2;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod search;
pub mod spin;
pub mod verify;

pub use report::{run_search, run_tau, run_validate, run_verify, Check, RunReport, UsageError};
pub use search::SearchConfig;
