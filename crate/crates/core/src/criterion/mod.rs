//! Heights over the places of ℚ, the arithmetic constants of the criterion
//! and the explicit Chebyshev-type formulas with their growth estimates.

pub mod constants;
pub mod estimates;
pub mod explicit;
pub mod gop;
pub mod places;

pub use constants::{
    criterion_constants, den, eps_place, log_mu_const, mu_n, nu, real_json, table_json, table_markdown, threshold,
    threshold_row, threshold_table, v_alpha, CriterionReport, Nu, ThresholdRow, PUBLISHED_THRESHOLDS, REAL_BITS,
};
pub use estimates::{
    decay_check, denominator_at, denominator_growth, fit_slope, log_remainder_at, DecayPoint, DecayReport, GrowthReport,
};
pub use explicit::{
    compare_with_pipeline, explicit_p, explicit_p_with, explicit_pqr, explicit_q, explicit_q_with, explicit_r,
    pipeline_p, remainder_prefactor, remainder_start, remainder_term, PqrAgreement, SignConvention,
};
pub use gop::{g_operator_check, GOperatorReport};
pub use places::{
    factorize, h_v, height, is_prime, local_height_sum, log_abs, log_abs_at, log_abs_int, prime_divisors,
    product_formula_defect, support, totient, valuation, PlaceQ,
};
