//! Exact boundary measurements and Plücker coordinates of circular directed
//! networks, computed both from walk series and from flow generating
//! functions.

pub mod checks;
pub mod error;
pub mod flows;
pub mod generate;
pub mod involution;
pub mod network;
pub mod poly;
pub mod samples;
pub mod transform;
pub mod walks;

pub use error::{Error, Result};
pub use network::{Network, NetworkDoc, SourceIndexSet, Weight};
pub use poly::{Monomial, Poly, RationalFn, TruncatedSeries};
