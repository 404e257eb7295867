//! Padé-type systems, their verification and the linear-algebra oracle.

use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use super::phi::{q_and_remainder, PhiMap};
use crate::error::{Error, Result};
use crate::exact::{format_rational, nullspace, LaurentTail, Order, Poly, Rational};
use crate::holonomic::HolonomicStream;

/// Outcome of checking the two defining conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub degree_ok: bool,
    /// One entry per series: `Some(true)` when `ord >= n + 1` is decided.
    pub orders_ok: Vec<Option<bool>>,
    /// The two remainder computations agreed (otherwise construction fails).
    pub remainders_agree: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.remainders_agree && self.orders_ok.iter().all(|o| *o == Some(true))
    }
}

/// `(P, Q_1 .. Q_m)` with weights, degree bound and remainder tails.
#[derive(Clone, Debug)]
pub struct PadeSystem {
    pub p: Poly,
    pub qs: Vec<Poly>,
    pub labels: Vec<String>,
    pub weights: Vec<usize>,
    pub degree_bound: usize,
    pub remainders: Vec<LaurentTail>,
    pub orders: Vec<Order>,
    pub verified: Verification,
}

impl PadeSystem {
    /// Computes `Q_j` and the remainders for a given `P` and checks the
    /// conditions, starting from a slack of 5.
    pub fn assemble(
        p: Poly,
        streams: &[Arc<HolonomicStream>],
        weights: Vec<usize>,
        degree_bound: usize,
    ) -> Result<Self> {
        Self::assemble_with_slack(p, streams, weights, degree_bound, 5)
    }

    /// Precision starts at `sum n + deg P + slack` and the slack doubles
    /// while some order is still undecided or reported only as a lower
    /// bound, until it reaches 80.
    pub fn assemble_with_slack(
        p: Poly,
        streams: &[Arc<HolonomicStream>],
        weights: Vec<usize>,
        degree_bound: usize,
        slack: usize,
    ) -> Result<Self> {
        if streams.len() != weights.len() {
            return Err(Error::Hypothesis(format!(
                "{} series but {} weights",
                streams.len(),
                weights.len()
            )));
        }
        let base = weights.iter().sum::<usize>() + p.degree().unwrap_or(0);
        let mut slack = slack.max(1);
        loop {
            let precision = base + slack;
            let mut qs = Vec::new();
            let mut remainders = Vec::new();
            for s in streams {
                let (q, r) = q_and_remainder(&PhiMap::new(s.clone()), &p, precision)?;
                qs.push(q);
                remainders.push(r);
            }
            let orders: Vec<Order> = remainders.iter().map(LaurentTail::ord_inf).collect();
            let orders_ok: Vec<Option<bool>> = orders
                .iter()
                .zip(&weights)
                .map(|(o, &n)| o.at_least(n as i64 + 1))
                .collect();
            let settled = orders.iter().all(|o| o.is_exact()) && orders_ok.iter().all(Option::is_some);
            if settled || slack >= 80 {
                let degree_ok = !p.is_zero() && p.degree().unwrap_or(0) <= degree_bound;
                return Ok(PadeSystem {
                    labels: streams.iter().map(|s| s.label().to_string()).collect(),
                    p,
                    qs,
                    weights,
                    degree_bound,
                    remainders,
                    orders,
                    verified: Verification {
                        degree_ok,
                        orders_ok,
                        remainders_agree: true,
                    },
                });
            }
            slack *= 2;
        }
    }

    pub fn to_json(&self) -> Value {
        let rem: Vec<Value> = self
            .remainders
            .iter()
            .zip(&self.orders)
            .map(|(r, o)| {
                let lead: Vec<Value> = r
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .take(3)
                    .map(|(k, c)| json!({ "power": -(k as i64 + 1), "coeff": format_rational(c) }))
                    .collect();
                let order = match o {
                    Order::Exact(k) => json!({ "exact": k }),
                    Order::AtLeast(k) => json!({ "at_least": k }),
                };
                json!({ "order": order, "precision": r.precision(), "leading": lead })
            })
            .collect();
        json!({
            "P": self.p.to_strings(),
            "degree": self.p.degree(),
            "Qs": self.qs.iter().map(Poly::to_strings).collect::<Vec<_>>(),
            "labels": self.labels,
            "weights": self.weights,
            "degree_bound": self.degree_bound,
            "remainders": rem,
            "verified": {
                "degree_ok": self.verified.degree_ok,
                "orders_ok": self.verified.orders_ok,
                "remainders_agree": self.verified.remainders_agree,
                "passed": self.verified.passed(),
            },
        })
    }
}

/// Result of [`solve_pade_oracle`].
#[derive(Clone, Debug)]
pub struct OracleSolution {
    pub system: PadeSystem,
    pub kernel_dim: usize,
}

/// Solves `phi_j(t^k P) = 0` for `k < n_j` in the `M + 1` coefficients of
/// `P`. Among the nullspace basis the vector whose free variable has the
/// highest index is returned.
pub fn solve_pade_oracle(streams: &[Arc<HolonomicStream>], weights: &[usize], m: usize) -> Result<OracleSolution> {
    let n: usize = weights.iter().sum();
    if m < n {
        return Err(Error::Hypothesis(format!(
            "degree bound {m} is below the {n} conditions"
        )));
    }
    if streams.len() != weights.len() {
        return Err(Error::Hypothesis("one weight per series is required".into()));
    }
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for (s, &nj) in streams.iter().zip(weights) {
        let f = s.prefix(nj + m + 1);
        for k in 0..nj {
            rows.push(f[k..=k + m].to_vec());
        }
    }
    let basis = nullspace(&rows, m + 1);
    let kernel_dim = basis.len();
    let v = basis
        .into_iter()
        .last()
        .ok_or_else(|| Error::Internal("the Padé system has only the zero solution".into()))?;
    let p = Poly::from_coeffs(v);
    let system = PadeSystem::assemble(p, streams, weights.to_vec(), m)?;
    Ok(OracleSolution { system, kernel_dim })
}

/// Cross-multiplication test `p_i q_k = p_k q_i`; zero is proportional to
/// nothing.
pub fn proportional(p: &Poly, q: &Poly) -> bool {
    let Some(i0) = p.coeffs().iter().position(|c| !c.is_zero()) else {
        return false;
    };
    if q.is_zero() || q.coeff(i0).is_zero() {
        return false;
    }
    let len = p.coeffs().len().max(q.coeffs().len());
    let (p0, q0) = (p.coeff(i0), q.coeff(i0));
    (0..len).all(|i| p.coeff(i) * &q0 == q.coeff(i) * &p0)
}
