//! Exact coefficient arithmetic, sparse polynomials and truncated ℏ-series.

pub mod coeff;
pub mod expr;
pub mod linalg;
pub mod mpoly;
pub mod names;
pub mod parse;
pub mod series;
pub mod subst;

pub use coeff::Coeff;
pub use expr::{expand_expr, RationalExpr};
pub use linalg::{Echelon, Matrix};
pub use mpoly::{MPoly, Mono};
pub use names::VarNames;
pub use parse::{parse_expr, parse_poly, parse_series};
pub use series::HSeries;
pub use subst::{mpoly_subst, series_subst};
