//! Growth series and growth rates of Coxeter groups.

pub mod algnum;
pub mod catalog;
pub mod classify;
pub mod compare;
pub mod corpus;
pub mod cox;
pub mod coxfile;
pub mod growth;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod replay;
pub mod simplex;

pub use classify::{ClassifyError, ExponentTable, IrreducibleType};
pub use cox::{CanonicalForm, CoxError, CoxeterGraph, NodeSubset, Weight};
pub use growth::{growth_rate, growth_series, series_coeffs, steinberg, GrowthError, GrowthRate, GrowthSeries};
pub use par::Exec;
