//! Exact arithmetic over the rationals.

pub mod bipoly;
pub mod combinatorics;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use bipoly::{divided_difference, BiPoly};
pub use combinatorics::{binomial, factorial, factorial_q, falling, gen_binomial, pochhammer};
pub use laurent::{LaurentPoly, LaurentTail, Order};
pub use linalg::{det_bareiss, det_exact, nullspace, rank, rref};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
