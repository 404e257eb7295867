//! Places of ℚ, absolute values and logarithmic heights.
//!
//! Real quantities are `f64` logarithms assembled from exact integers; a
//! logarithm of a big integer is taken from its top 64 bits plus the shift.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// A place of ℚ: the archimedean one or a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceQ {
    Infinite,
    Prime(u64),
}

impl PlaceQ {
    /// Accepts `inf`, `infinity`, or a prime such as `5`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(PlaceQ::Infinite),
            t => {
                let p: u64 = t.parse().map_err(|_| Error::Parse(format!("not a place: {t:?}")))?;
                if !is_prime(p) {
                    return Err(Error::Parse(format!("{p} is not prime")));
                }
                Ok(PlaceQ::Prime(p))
            }
        }
    }
}

impl fmt::Display for PlaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceQ::Infinite => write!(f, "inf"),
            PlaceQ::Prime(p) => write!(f, "{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime factorization by trial division, as `(q, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        let mut e = 0;
        while n.is_multiple_of(q) {
            n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(q, _)| q).collect()
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, (q, _)| acc / q * (q - 1))
}

/// `log |n|` for a nonzero integer of any size.
pub fn log_abs_int(n: &BigInt) -> f64 {
    assert!(!n.is_zero(), "log of zero");
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log |x|` for a nonzero rational.
pub fn log_abs(x: &Rational) -> f64 {
    log_abs_int(x.numer()) - log_abs_int(x.denom())
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(x)` for a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> i64 {
    valuation_int(x.numer(), p) as i64 - valuation_int(x.denom(), p) as i64
}

/// `log |x|_v` with the normalized absolute value (`|p|_p = 1/p`).
pub fn log_abs_at(x: &Rational, v: PlaceQ) -> f64 {
    match v {
        PlaceQ::Infinite => log_abs(x),
        PlaceQ::Prime(p) => -(valuation(x, p) as f64) * (p as f64).ln(),
    }
}

/// Absolute logarithmic Weil height `log max(|p|, |q|)` of `p/q`.
pub fn height(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    log_abs_int(x.numer()).max(log_abs_int(x.denom()))
}

/// Local height `log max(1, |x|_v)`.
pub fn h_v(x: &Rational, v: PlaceQ) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    log_abs_at(x, v).max(0.0)
}

/// The places where `x` is not a unit, preceded by infinity.
pub fn support(x: &Rational) -> Vec<PlaceQ> {
    let mut out = vec![PlaceQ::Infinite];
    if x.is_zero() {
        return out;
    }
    let mut ps: Vec<u64> = Vec::new();
    for n in [x.numer(), x.denom()] {
        let n = n
            .abs()
            .to_u64()
            .expect("support() is limited to 64-bit numerators and denominators");
        ps.extend(prime_divisors(n));
    }
    ps.sort_unstable();
    ps.dedup();
    out.extend(ps.into_iter().map(PlaceQ::Prime));
    out
}

/// `sum_v h_v(x)` over [`support`]; equals [`height`] by the product formula.
pub fn local_height_sum(x: &Rational) -> f64 {
    support(x).into_iter().map(|v| h_v(x, v)).sum()
}

/// `sum_v log |x|_v`; zero by the product formula.
pub fn product_formula_defect(x: &Rational) -> f64 {
    support(x).into_iter().map(|v| log_abs_at(x, v)).sum()
}
