//! The functional `phi_f`, Padé-type systems, the linear-algebra oracle and
//! the Rodrigues construction.

pub mod construct;
pub mod phi;
pub mod system;

pub use construct::{
    check_two_factor_layout, coefficient_check_with, coefficient_closed_form, family_plan, top_coefficient_check,
    rodrigues_construct, CoefficientCheck, RodriguesBlock, RodriguesPlan,
};
pub use phi::{q_and_remainder, PhiMap};
pub use system::{proportional, solve_pade_oracle, OracleSolution, PadeSystem, Verification};
