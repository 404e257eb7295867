//! Differential operators over `Q(x)` and weighted Rodrigues operators.

pub mod op;
pub mod rodrigues;

pub use op::{cauchy_kernel, ratfunc_json, DiffOp, Var};
pub use rodrigues::{
    commutation_coeffs, commute_criterion, commute_quotient_by_ac, commutes_directly, rodrigues_with_c, FirstOrderData,
};
