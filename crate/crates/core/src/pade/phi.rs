//! The functional `phi_f : t^k -> f_k` and the remainder it encodes.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{divided_difference, BiPoly, LaurentTail, Poly, Rational};
use crate::holonomic::HolonomicStream;

/// `phi_f`, backed by a coefficient stream of `f`.
#[derive(Clone, Debug)]
pub struct PhiMap {
    stream: Arc<HolonomicStream>,
}

impl PhiMap {
    pub fn new(stream: Arc<HolonomicStream>) -> Self {
        PhiMap { stream }
    }

    pub fn stream(&self) -> &Arc<HolonomicStream> {
        &self.stream
    }

    /// `phi(t^k) = f_k`.
    pub fn moment(&self, k: usize) -> Rational {
        self.stream.get(k)
    }

    /// `sum_k p_k f_k` for a polynomial in `t`.
    pub fn apply(&self, p: &Poly) -> Rational {
        let Some(d) = p.degree() else {
            return Rational::zero();
        };
        let f = self.stream.prefix(d + 1);
        p.coeffs()
            .iter()
            .zip(&f)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, x)| c * x)
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `phi(t^shift p(t))`.
    pub fn apply_shifted(&self, p: &Poly, shift: usize) -> Rational {
        let Some(d) = p.degree() else {
            return Rational::zero();
        };
        let f = self.stream.prefix(d + shift + 1);
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * &f[i + shift])
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// The `K[z]`-linear extension to `K[z, t]`.
    pub fn apply_bivariate(&self, b: &BiPoly) -> Poly {
        b.by_t_power()
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (j, zp)| &acc + &zp.scale(&self.moment(j)))
    }

    pub fn kernel_member(&self, p: &Poly) -> bool {
        self.apply(p).is_zero()
    }
}

/// `Q = phi((P(z) - P(t)) / (z - t))` and the remainder `P f - Q`, whose
/// coefficient of `1/z^(k+1)` is `phi(t^k P(t))`. Both are computed from the
/// functional and again by series multiplication; any disagreement is an
/// error.
pub fn q_and_remainder(phi: &PhiMap, p: &Poly, precision: usize) -> Result<(Poly, LaurentTail)> {
    let q = phi.apply_bivariate(&divided_difference(p));
    let r = LaurentTail::new((0..precision).map(|k| phi.apply_shifted(p, k)).collect());
    let deg = p.degree().unwrap_or(0);
    let series = phi.stream().tail(precision + deg).mul_poly(p)?;
    if series.poly != q {
        return Err(Error::Internal(format!(
            "Q from phi ({q}) differs from the polynomial part of P f ({})",
            series.poly
        )));
    }
    if series.tail.truncate(precision) != r || series.tail.precision() < precision {
        return Err(Error::Internal(
            "remainder from phi differs from the tail of P f".into(),
        ));
    }
    Ok((q, r))
}
