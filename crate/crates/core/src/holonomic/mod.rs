//! Laurent-series solutions of first-order operators and the named families.

pub mod family;
pub mod stream;

pub use family::{
    check_family_assumptions, family_streams, gauss_2f1_partial, Block, FamilyConfig, FamilyData, FamilySpec, Law,
};
pub use stream::{check_assumption, leading_coefficient, solution_basis, HolonomicStream};
