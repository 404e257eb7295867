//! `nu(u)`, denominators, `mu_n`, the criterion `V(alpha)`, its threshold
//! table and the constants of the linear-independence measure.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use super::places::{factorize, h_v, height, log_abs, log_abs_at, prime_divisors, totient, PlaceQ};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, Rational};

/// Mantissa bits carried by every real in a report.
pub const REAL_BITS: u32 = 53;

/// Relative error budget used for outward rounding of assembled logs.
const REL_ERR: f64 = 1e-13;

/// Renders a real at fixed precision.
pub fn real_json(x: f64) -> Value {
    if x.is_finite() {
        json!({ "value": format!("{x:.15e}"), "bits": REAL_BITS })
    } else {
        Value::Null
    }
}

/// `nu(u) = u prod_{q | u} q^(1/(q-1))` in exact form.
#[derive(Clone, Debug, PartialEq)]
pub struct Nu {
    pub u: u64,
    pub primes: Vec<u64>,
    pub log: f64,
}

impl Nu {
    pub fn value(&self) -> f64 {
        self.log.exp()
    }

    /// e.g. `6 * 2^(1/1) * 3^(1/2)`.
    pub fn expression(&self) -> String {
        let mut s = self.u.to_string();
        for q in &self.primes {
            s.push_str(&format!(" * {q}^(1/{})", q - 1));
        }
        s
    }
}

pub fn nu(u: u64) -> Result<Nu> {
    if u < 2 {
        return Err(Error::Hypothesis(format!("nu(u) needs u >= 2, got {u}")));
    }
    let primes = prime_divisors(u);
    let log = (u as f64).ln() + primes.iter().map(|&q| (q as f64).ln() / (q - 1) as f64).sum::<f64>();
    Ok(Nu { u, primes, log })
}

/// Least common multiple of the reduced denominators (1 for the empty set).
pub fn den<'a>(s: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    s.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn den_u64(a: &Rational) -> u64 {
    a.denom().to_u64().expect("denominator exceeds 64 bits")
}

/// `mu_n(a) = den(a)^n prod_{q | den(a)} q^floor(n/(q-1))`.
pub fn mu_n(a: &Rational, n: u64) -> BigInt {
    let d = den_u64(a);
    let mut out = BigInt::from(d).pow(n as u32);
    for q in prime_divisors(d) {
        out *= BigInt::from(q).pow((n / (q - 1)) as u32);
    }
    out
}

/// `log mu(a) = log den(a) + sum_{q | den(a)} log q / (q-1)`.
pub fn log_mu_const(a: &Rational) -> f64 {
    let d = den_u64(a);
    (d as f64).ln()
        + prime_divisors(d)
            .iter()
            .map(|&q| (q as f64).ln() / (q - 1) as f64)
            .sum::<f64>()
}

fn check_u(u: u64) -> Result<()> {
    if u < 2 {
        return Err(Error::Hypothesis(format!("u >= 2 is required, got {u}")));
    }
    Ok(())
}

/// `(2 - 1/u) log nu(u) + (u-1)/phi(u) + log 2`, the least `log |alpha|`
/// with `V(alpha) > 0`.
pub fn threshold(u: u64) -> Result<f64> {
    check_u(u)?;
    let nu = nu(u)?;
    Ok((2.0 - 1.0 / u as f64) * nu.log + (u - 1) as f64 / totient(u) as f64 + std::f64::consts::LN_2)
}

/// `V(alpha) = log|alpha| - log 2 - (2 - 1/u) log nu(u) - (u-1)/phi(u)`.
pub fn v_alpha(u: u64, alpha: &Rational) -> Result<f64> {
    check_u(u)?;
    if alpha.abs() < int(2) {
        return Err(Error::Hypothesis("|alpha| >= 2 is required".into()));
    }
    Ok(log_abs(alpha) - threshold(u)?)
}

/// One row of the threshold table.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdRow {
    pub u: u64,
    pub nu: Nu,
    pub phi: u64,
    pub exact: f64,
    /// `exact` rounded up to two decimals, in hundredths.
    pub hundredths: u64,
}

impl ThresholdRow {
    pub fn rounded(&self) -> String {
        format!("{}.{:02}", self.hundredths / 100, self.hundredths % 100)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "u": self.u,
            "nu": self.nu.expression(),
            "phi": self.phi,
            "threshold": real_json(self.exact),
            "log_alpha_at_least": self.rounded(),
        })
    }
}

/// Rounds up to hundredths; a value within the error budget of a grid point
/// is an error rather than a guess.
fn ceil_hundredths(x: f64) -> Result<u64> {
    let scaled = x * 100.0;
    let c = scaled.ceil();
    if (c - scaled).abs() < REL_ERR * scaled.abs().max(1.0) * 10.0 {
        return Err(Error::Internal(format!("{x} is too close to a two-decimal grid point")));
    }
    Ok(c as u64)
}

pub fn threshold_row(u: u64) -> Result<ThresholdRow> {
    let exact = threshold(u)?;
    Ok(ThresholdRow {
        u,
        nu: nu(u)?,
        phi: totient(u),
        exact,
        hundredths: ceil_hundredths(exact)?,
    })
}

pub fn threshold_table(us: impl IntoIterator<Item = u64>) -> Result<Vec<ThresholdRow>> {
    us.into_iter().map(threshold_row).collect()
}

/// The published two-decimal thresholds for `u = 2..=15`.
pub const PUBLISHED_THRESHOLDS: [(u64, &str); 14] = [
    (2, "3.78"),
    (3, "4.44"),
    (4, "5.84"),
    (5, "5.32"),
    (6, "8.76"),
    (7, "5.91"),
    (8, "7.65"),
    (9, "7.22"),
    (10, "9.40"),
    (11, "6.73"),
    (12, "10.59"),
    (13, "7.04"),
    (14, "9.92"),
    (15, "9.52"),
];

pub fn table_markdown(rows: &[ThresholdRow]) -> String {
    let mut s = String::from("| u | nu(u) | phi(u) | log alpha > |\n|---|---|---|---|\n");
    for r in rows {
        s.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            r.u,
            r.nu.expression(),
            r.phi,
            r.rounded()
        ));
    }
    s
}

pub fn table_json(rows: &[ThresholdRow]) -> Value {
    Value::Array(rows.iter().map(ThresholdRow::to_json).collect())
}

/// `epsilon_v(u)`: 1 when `p` does not divide `u`.
pub fn eps_place(u: u64, p: u64) -> u64 {
    u64::from(!u.is_multiple_of(p))
}

/// `log |nu(u)|_p^(-1) = (v_p(u) + [p | u]/(p-1)) log p`.
fn log_inv_abs_nu(u: u64, p: u64) -> f64 {
    let vp = factorize(u).into_iter().find(|(q, _)| *q == p).map_or(0, |(_, e)| e);
    if vp == 0 {
        return 0.0;
    }
    (vp as f64 + 1.0 / (p - 1) as f64) * (p as f64).ln()
}

/// Constants of the measure for the values of `2F1((1+l)/u, 1; (u+l)/u | 1/alpha^u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub u: u64,
    pub alpha: Rational,
    pub v0: PlaceQ,
    pub epsilon: f64,
    pub a: f64,
    pub b: f64,
    pub big_u: f64,
    pub v: f64,
    /// `V` with its rounding budget subtracted; applicability is tested on it.
    pub v_lower: f64,
    pub mu: Option<f64>,
    pub c: Option<f64>,
    pub eps_v0: Option<u64>,
}

impl CriterionReport {
    pub fn applicable(&self) -> bool {
        self.mu.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "u": self.u,
            "alpha": format_rational(&self.alpha),
            "v0": self.v0.to_string(),
            "epsilon": real_json(self.epsilon),
            "A": real_json(self.a),
            "B": real_json(self.b),
            "U": real_json(self.big_u),
            "V": real_json(self.v),
            "V_lower": real_json(self.v_lower),
            "mu": self.mu.map_or(Value::Null, real_json),
            "C": self.c.map_or(Value::Null, real_json),
            "eps_v0": self.eps_v0,
            "applicable": self.applicable(),
            "field": "Q",
        })
    }
}

/// Evaluates `A`, `B`, `U`, `V`, `mu(alpha, eps)` and `C(alpha, eps)`.
pub fn criterion_constants(u: u64, alpha: &Rational, v0: PlaceQ, epsilon: f64) -> Result<CriterionReport> {
    check_u(u)?;
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::Hypothesis("epsilon must be positive".into()));
    }
    if alpha == &int(0) || log_abs_at(alpha, v0) <= std::f64::consts::LN_2 {
        return Err(Error::Hypothesis(format!("|alpha|_{v0} > 2 is required")));
    }
    let ln2 = std::f64::consts::LN_2;
    let uf = u as f64;
    let nu = nu(u)?;
    let hv = h_v(alpha, v0);
    let (a, tail_b, big_u, eps_v0) = match v0 {
        PlaceQ::Infinite => (hv - ln2, (uf + 1.0) * ln2, (uf - 1.0) * hv + (uf + 1.0) * ln2, None),
        PlaceQ::Prime(p) => {
            let e = eps_place(u, p);
            // log |p|_p = -log p
            let a = hv + e as f64 * (p as f64).ln() / (p - 1) as f64;
            let inv_nu = log_inv_abs_nu(u, p);
            (a, inv_nu, (uf - 1.0) * hv + inv_nu, Some(e))
        }
    };
    let b =
        (uf - 1.0) * height(alpha) + (uf + 1.0) * ln2 + (2.0 * uf - 1.0) * nu.log / uf + (uf - 1.0) / totient(u) as f64
            - (uf - 1.0) * hv
            - tail_b;
    let v = a - b;
    let scale = a.abs() + b.abs() + 1.0;
    let v_lower = v - REL_ERR * scale;
    let (mu, c) = if v_lower > epsilon {
        let gap = v - epsilon;
        let mu = (a + big_u) / gap;
        let c = (-(ln2 / gap + 1.0) * (a + big_u)).exp();
        (Some(mu), Some(c))
    } else {
        (None, None)
    };
    Ok(CriterionReport {
        u,
        alpha: alpha.clone(),
        v0,
        epsilon,
        a,
        b,
        big_u,
        v,
        v_lower,
        mu,
        c,
        eps_v0,
    })
}
