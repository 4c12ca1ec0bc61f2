//! Exact-arithmetic engine for deformations of finite-dimensional
//! associative algebras over Artin local base rings.
//!
//! The crate implements three equivalent pictures of a deformation and the
//! comparison maps between them:
//!
//! * deformations of the multiplication, as Maurer-Cartan elements of the
//!   Hochschild DG Lie algebra of coderivations of the bar coalgebra
//!   ([`hochschild`]),
//! * deformations of the differential of the canonical cobar-of-bar
//!   resolution ([`barcobar`], [`relations`]),
//! * flat algebras over the base together with an identification of the
//!   special fibre ([`flat`]).
//!
//! All scalars are rational numbers ([`exact::Rat`]); every check in the
//! crate is an exact equality, never a tolerance.  The nilpotent gauge
//! groups acting on the Maurer-Cartan sets, together with an order-by-order
//! equivalence solver, live in [`gauge`].

pub mod algebra;
pub mod barcobar;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod flat;
pub mod gauge;
pub mod hochschild;
pub mod io;
pub mod relations;

pub use error::{Error, Result};
pub use exact::Rat;
