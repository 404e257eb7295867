//! The determinants `Delta_n` and `Theta_n` and their closed forms.

pub mod closed;
pub mod delta;

pub use closed::{
    chebyshev_top_coefficient, corrected_identity_unit, delta_closed_chebyshev, delta_closed_corrected,
    delta_closed_examples, delta_corrected_chebyshev, theta_closed_chebyshev, theta_closed_corrected,
    theta_closed_examples, vandermonde, Correction, Diagnosis,
};
pub use delta::{build_delta, delta_by_remainders, theta_vandermonde_check, DetReport, DetSetup};
