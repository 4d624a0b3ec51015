//! Exact arithmetic around the Carlitz module over F_q[θ].
//!
//! Values live in F_q((w)) with w = (-θ)^{-1/(q-1)} ([`laurent`]); rigid analytic
//! functions of an extra variable t are truncated Tate-algebra elements ([`tate`]).
//! On top of these sit the special values ([`special`]), the period-matrix checks
//! ([`motive`]) and a linear relation miner ([`relations`]).

pub mod checks;
pub mod cli;
pub mod error;
pub mod expr;
pub mod field;
pub mod laurent;
pub mod linalg;
pub mod motive;
pub mod poly;
pub mod relations;
pub mod special;
pub mod tate;

pub use error::{Error, Result};
pub use field::{Field, FieldParams, Fq};
pub use laurent::{LaurentSeries, Precision, Sector};
pub use poly::{BiPoly, FqPoly};
pub use tate::{Profile, Tail, TateElem, ValBound};
