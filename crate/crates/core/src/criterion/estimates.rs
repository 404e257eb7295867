//! Empirical growth of denominators and decay of remainders, compared with
//! their asymptotic bounds through fitted slopes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::constants::{nu, real_json};
use super::explicit::{explicit_p, remainder_prefactor, remainder_start, remainder_term};
use super::places::{log_abs, log_abs_at, log_abs_int, totient, valuation, PlaceQ};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, Rational};

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `(1/n) log D_n` for the ratios `((1+l)/u)_k / ((u+l)/u)_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub u: u64,
    /// `(n, (1/n) log D_n)`; `n = 0` is reported with `D_0 = 1` and ratio 0.
    pub points: Vec<(u64, f64)>,
    /// `log nu(u) + u / phi(u)`.
    pub bound: f64,
}

impl GrowthReport {
    /// Largest ratio over `lo <= n <= hi`.
    pub fn max_ratio(&self, lo: u64, hi: u64) -> f64 {
        self.points
            .iter()
            .filter(|(n, _)| (lo..=hi).contains(n))
            .map(|p| p.1)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "u": self.u,
            "bound": real_json(self.bound),
            "points": self.points.iter().map(|(n, r)| json!({ "n": n, "ratio": real_json(*r) })).collect::<Vec<_>>(),
        })
    }
}

/// Tracks `D_n` for `n = 0..=n_max` incrementally.
pub fn denominator_growth(u: u64, n_max: u64) -> Result<GrowthReport> {
    let nu = nu(u)?;
    let uq = int(u as i64);
    let mut ratios: Vec<Rational> = vec![Rational::one(); (u - 1) as usize];
    let mut d = BigInt::one();
    let mut points = vec![(0, 0.0)];
    for n in 1..=n_max {
        for (l, r) in ratios.iter_mut().enumerate() {
            let a = int(1 + l as i64) / &uq + int(n as i64 - 1);
            let b = int((u as usize + l) as i64) / &uq + int(n as i64 - 1);
            *r = &*r * a / b;
            d = d.lcm(r.denom());
        }
        points.push((n, log_abs_int(&d) / n as f64));
    }
    let bound = nu.log + u as f64 / totient(u) as f64;
    Ok(GrowthReport { u, points, bound })
}

/// Exact denominator `D_n` (for small `n`).
pub fn denominator_at(u: u64, n: u64) -> BigInt {
    let uq = int(u as i64);
    let mut d = BigInt::one();
    for l in 0..u - 1 {
        let mut r = Rational::one();
        for k in 0..n {
            r = r * (int(1 + l as i64) / &uq + int(k as i64)) / (int((u + l) as i64) / &uq + int(k as i64));
            d = d.lcm(r.denom());
        }
    }
    d
}

/// Per-`N` data of a decay check.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayPoint {
    pub n_big: usize,
    /// `max_{l,h} log |R_{uN,l,h}(alpha)|_v`.
    pub log_r: f64,
    /// `max_h log |P_{uN,h}(alpha)|_v`.
    pub log_p: f64,
    /// Largest number of remainder terms summed.
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayReport {
    pub u: usize,
    pub alpha: Rational,
    pub place: PlaceQ,
    pub points: Vec<DecayPoint>,
    pub slope_r: f64,
    pub slope_p: f64,
    pub bound_r: f64,
    /// At a prime place: the bound with `eps_v(u)` set to 0, i.e. `-u h_v(alpha)`.
    pub bound_r_without_eps: Option<f64>,
    pub bound_p: Option<f64>,
    pub slack: f64,
}

impl DecayReport {
    pub fn r_ok(&self) -> bool {
        self.slope_r <= self.bound_r + self.slack
    }

    pub fn r_ok_without_eps(&self) -> Option<bool> {
        self.bound_r_without_eps.map(|b| self.slope_r <= b + self.slack)
    }

    pub fn p_ok(&self) -> bool {
        self.bound_p.is_none_or(|b| self.slope_p <= b + self.slack)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "u": self.u,
            "alpha": format_rational(&self.alpha),
            "place": self.place.to_string(),
            "slope_R": real_json(self.slope_r),
            "bound_R": real_json(self.bound_r),
            "bound_R_without_eps": self.bound_r_without_eps.map_or(Value::Null, real_json),
            "R_ok_without_eps": self.r_ok_without_eps(),
            "slope_P": real_json(self.slope_p),
            "bound_P": self.bound_p.map_or(Value::Null, real_json),
            "slack": real_json(self.slack),
            "R_ok": self.r_ok(),
            "P_ok": self.p_ok(),
            "points": self.points.iter().map(|p| json!({
                "N": p.n_big,
                "log_R": real_json(p.log_r),
                "log_P": real_json(p.log_p),
                "terms": p.terms,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Truncation target: the omitted tail is below `2^-20` of the partial sum.
const TAIL_FRACTION: f64 = 1.0 / 1048576.0;

/// `sum_{k >= eps} term_k alpha^(-uk)` at the archimedean place, summed
/// until the geometric bound on the tail drops below the target. Returns
/// `(log |sum|, terms)`.
fn archimedean_series(u: usize, n_big: usize, l: usize, h: usize, alpha: &Rational) -> Result<(f64, usize)> {
    let x = alpha.recip().pow(u as i32);
    let log_x = log_abs(&x);
    let mut k = remainder_start(l, h);
    let mut sum = Rational::zero();
    let mut power = x.pow(k as i32);
    let mut terms = 0;
    loop {
        let t = remainder_term(u, n_big, l, h, k) * &power;
        sum += &t;
        terms += 1;
        // Later binomial ratios are at most the current one and the
        // Pochhammer ratio is below 1, so the tail is geometric in rho.
        let m = (u * (n_big + k) + l - h) as f64;
        let un = (u * n_big) as f64;
        let binom_ratio: f64 = (1..=u).map(|i| (m + i as f64) / (m + i as f64 - un)).product();
        let log_rho = binom_ratio.ln() + log_x;
        if log_rho < 0.0 && !t.is_zero() && !sum.is_zero() {
            let log_tail = log_abs(&t) + log_rho - (-log_rho.exp()).ln_1p();
            if log_tail < log_abs(&sum) + TAIL_FRACTION.ln() {
                return Ok((log_abs(&sum), terms));
            }
        }
        if terms > 100_000 {
            return Err(Error::InsufficientPrecision {
                needed: terms + 1,
                available: terms,
            });
        }
        power *= &x;
        k += 1;
    }
}

/// `sum_{k >= eps} term_k alpha^(-uk)` at a prime place. Terms are added
/// until `min_terms` have been taken and the last three each exceed the
/// partial sum's valuation by at least 20. Returns `(v_p(sum), terms)`.
fn padic_series(u: usize, n_big: usize, l: usize, h: usize, alpha: &Rational, p: u64) -> Result<(i64, usize)> {
    let x = alpha.recip().pow(u as i32);
    let mut k = remainder_start(l, h);
    let mut sum = Rational::zero();
    let mut margins = Vec::new();
    let mut terms = 0;
    loop {
        let t = remainder_term(u, n_big, l, h, k) * x.pow(k as i32);
        sum += &t;
        terms += 1;
        if !sum.is_zero() && !t.is_zero() {
            margins.push(valuation(&t, p) - valuation(&sum, p));
        }
        let n = margins.len();
        if terms >= 4 && n >= 3 && margins[n - 3..].iter().all(|&m| m >= 20) {
            return Ok((valuation(&sum, p), terms));
        }
        if terms > 2000 {
            return Err(Error::InsufficientPrecision {
                needed: terms + 1,
                available: terms,
            });
        }
        k += 1;
    }
}

/// `log |R_{uN,l,h}(alpha)|_v` from the closed remainder formula.
pub fn log_remainder_at(
    u: usize,
    n_big: usize,
    l: usize,
    h: usize,
    alpha: &Rational,
    v: PlaceQ,
) -> Result<(f64, usize)> {
    let pre = remainder_prefactor(u, n_big, l);
    let e = (u * n_big + l + 1) as i32 - h as i32;
    let front = &pre / alpha.pow(e);
    match v {
        PlaceQ::Infinite => {
            let (s, t) = archimedean_series(u, n_big, l, h, alpha)?;
            Ok((log_abs(&front) + s, t))
        }
        PlaceQ::Prime(p) => {
            let (vs, t) = padic_series(u, n_big, l, h, alpha, p)?;
            Ok((log_abs_at(&front, v) - vs as f64 * (p as f64).ln(), t))
        }
    }
}

/// Fits the decay of the remainders and the growth of `P` over `n_range`.
///
/// Bounds: `-u (h_v(alpha) - h_v(2))` at infinity and
/// `-u (h_v(alpha) + eps_v(u) log p / (p-1))` at a prime; `P` is bounded by
/// `u(u-1) log|alpha| + u(u+1) log 2` at infinity. The slack is `0.2 u`.
pub fn decay_check(
    u: usize,
    alpha: &Rational,
    v: PlaceQ,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<DecayReport> {
    if u < 2 {
        return Err(Error::Hypothesis("u >= 2 is required".into()));
    }
    let ln2 = std::f64::consts::LN_2;
    let uf = u as f64;
    let (bound_r, bound_r_without_eps, bound_p) = match v {
        PlaceQ::Infinite => {
            if alpha.abs() <= int(2) {
                return Err(Error::Hypothesis(
                    "|alpha| > 2 is required at the archimedean place".into(),
                ));
            }
            let la = log_abs(alpha);
            (
                -uf * (la - ln2),
                None,
                Some(uf * (uf - 1.0) * la + uf * (uf + 1.0) * ln2),
            )
        }
        PlaceQ::Prime(p) => {
            if alpha.is_zero() || log_abs_at(alpha, v) <= 0.0 {
                return Err(Error::Hypothesis(format!("|alpha|_{p} > 1 is required")));
            }
            let e = u64::from(!(u as u64).is_multiple_of(p)) as f64;
            let hv = log_abs_at(alpha, v);
            (-uf * (hv + e * (p as f64).ln() / (p - 1) as f64), Some(-uf * hv), None)
        }
    };
    let mut points = Vec::new();
    for n_big in n_range {
        let mut log_r = f64::NEG_INFINITY;
        let mut log_p = f64::NEG_INFINITY;
        let mut terms = 0;
        for h in 0..u {
            let p = explicit_p(u, n_big, h)?.eval(alpha);
            if !p.is_zero() {
                log_p = log_p.max(log_abs_at(&p, v));
            }
            for l in 0..u - 1 {
                let (r, t) = log_remainder_at(u, n_big, l, h, alpha, v)?;
                log_r = log_r.max(r);
                terms = terms.max(t);
            }
        }
        points.push(DecayPoint {
            n_big,
            log_r,
            log_p,
            terms,
        });
    }
    if points.len() < 2 {
        return Err(Error::Hypothesis("a slope needs at least two values of N".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.n_big as f64).collect();
    let rs: Vec<f64> = points.iter().map(|p| p.log_r).collect();
    let ps: Vec<f64> = points.iter().map(|p| p.log_p).collect();
    Ok(DecayReport {
        u,
        alpha: alpha.clone(),
        place: v,
        slope_r: fit_slope(&xs, &rs),
        slope_p: fit_slope(&xs, &ps),
        points,
        bound_r,
        bound_r_without_eps,
        bound_p,
        slack: 0.2 * uf,
    })
}
