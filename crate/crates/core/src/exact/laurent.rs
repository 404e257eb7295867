//! Truncated Laurent series at infinity.
//!
//! A [`LaurentTail`] with `T` stored coefficients `f_0..f_{T-1}` stands for
//! `sum_k f_k / z^(k+1)` modulo `O(1/z^(T+1))`. Every operation computes the
//! exact number of coefficients that remain determined and stores it as the
//! new precision.

use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Result of [`LaurentPoly::ord_inf`] and [`LaurentTail::ord_inf`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Least `k` with a nonzero coefficient of `1/z^k`.
    Exact(i64),
    /// Every determined coefficient vanishes; the order is at least this.
    AtLeast(i64),
}

impl Order {
    /// A lower bound that is valid in both cases.
    pub fn lower_bound(self) -> i64 {
        match self {
            Order::Exact(k) | Order::AtLeast(k) => k,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Order::Exact(_))
    }

    /// Decides `ord >= bound` if the available precision allows it.
    pub fn at_least(self, bound: i64) -> Option<bool> {
        match self {
            Order::Exact(k) => Some(k >= bound),
            Order::AtLeast(k) if k >= bound => Some(true),
            Order::AtLeast(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentTail {
    coeffs: Vec<Rational>,
}

impl LaurentTail {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        LaurentTail { coeffs }
    }

    /// The zero series known to `precision` coefficients.
    pub fn zero(precision: usize) -> Self {
        LaurentTail {
            coeffs: vec![Rational::zero(); precision],
        }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `1/z^(k+1)`, if determined.
    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn truncate(&self, precision: usize) -> LaurentTail {
        LaurentTail {
            coeffs: self.coeffs[..precision.min(self.coeffs.len())].to_vec(),
        }
    }

    pub fn ord_inf(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Order::Exact(k as i64 + 1),
            None => Order::AtLeast(self.coeffs.len() as i64 + 1),
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentTail {
        LaurentTail {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `1/z^s`; precision grows by `s`.
    pub fn shift_down(&self, s: usize) -> LaurentTail {
        let mut coeffs = vec![Rational::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        LaurentTail { coeffs }
    }

    /// `d/dz`; the result is determined to one more coefficient.
    pub fn derivative(&self) -> LaurentTail {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (k, f) in self.coeffs.iter().enumerate() {
            coeffs.push(-(f * int(k as i64 + 1)));
        }
        LaurentTail { coeffs }
    }

    /// Product with a polynomial, split into its polynomial part and tail.
    /// Fails when fewer than `deg p` coefficients are known.
    pub fn mul_poly(&self, p: &Poly) -> Result<LaurentPoly> {
        let Some(d) = p.degree() else {
            return Ok(LaurentPoly::from_tail(LaurentTail::zero(self.precision())));
        };
        let t = self.precision();
        if t < d {
            return Err(Error::InsufficientPrecision {
                needed: d,
                available: t,
            });
        }
        let pc = p.coeffs();
        let mut poly = vec![Rational::zero(); d];
        for (i, pi) in pc.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            for k in 0..i {
                poly[i - k - 1] += pi * &self.coeffs[k];
            }
        }
        let tail = (0..t - d)
            .map(|m| {
                pc.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| c * &self.coeffs[m + i])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect();
        Ok(LaurentPoly {
            poly: Poly::from_coeffs(poly),
            tail: LaurentTail { coeffs: tail },
        })
    }

    /// Product of two tails with precision `min(T1 + ord g, T2 + ord f)`.
    pub fn mul_tail(&self, other: &LaurentTail) -> LaurentTail {
        let of = self.ord_inf().lower_bound() as usize;
        let og = other.ord_inf().lower_bound() as usize;
        let prec = (self.precision() + og).min(other.precision() + of);
        let mut coeffs = vec![Rational::zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let m = i + j + 1;
                if m >= prec {
                    break;
                }
                coeffs[m] += a * b;
            }
        }
        LaurentTail { coeffs }
    }
}

impl Add for &LaurentTail {
    type Output = LaurentTail;
    fn add(self, rhs: &LaurentTail) -> LaurentTail {
        let n = self.precision().min(rhs.precision());
        LaurentTail {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &LaurentTail {
    type Output = LaurentTail;
    fn sub(self, rhs: &LaurentTail) -> LaurentTail {
        let n = self.precision().min(rhs.precision());
        LaurentTail {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &LaurentTail {
    type Output = LaurentTail;
    fn neg(self) -> LaurentTail {
        LaurentTail {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Element of `K[z][[1/z]]` split as `poly + tail`; the split is the
/// projection onto polynomials and its complement.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    pub poly: Poly,
    pub tail: LaurentTail,
}

impl LaurentPoly {
    pub fn new(poly: Poly, tail: LaurentTail) -> Self {
        LaurentPoly { poly, tail }
    }

    pub fn from_tail(tail: LaurentTail) -> Self {
        LaurentPoly {
            poly: Poly::zero(),
            tail,
        }
    }

    /// A polynomial viewed as an exact series known to `precision` tail terms.
    pub fn from_poly(poly: Poly, precision: usize) -> Self {
        LaurentPoly {
            poly,
            tail: LaurentTail::zero(precision),
        }
    }

    /// Exact expansion of a rational function at infinity to `precision`
    /// tail coefficients.
    pub fn from_ratfunc(r: &RatFunc, precision: usize) -> Self {
        let (q, rem) = r.num().div_rem(r.den()).expect("nonzero denominator");
        let d = r.den().coeffs();
        let e = d.len() - 1;
        let de_inv = d[e].recip();
        let mut c: Vec<Rational> = Vec::with_capacity(precision);
        for m in 0..precision {
            let mut acc = if m < e { rem.coeff(e - 1 - m) } else { Rational::zero() };
            for (i, di) in d.iter().enumerate().take(e) {
                if i + m >= e && !di.is_zero() {
                    acc -= di * &c[i + m - e];
                }
            }
            c.push(acc * &de_inv);
        }
        LaurentPoly {
            poly: q,
            tail: LaurentTail { coeffs: c },
        }
    }

    pub fn precision(&self) -> usize {
        self.tail.precision()
    }

    pub fn ord_inf(&self) -> Order {
        match self.poly.degree() {
            Some(d) => Order::Exact(-(d as i64)),
            None => self.tail.ord_inf(),
        }
    }

    pub fn derivative(&self) -> LaurentPoly {
        LaurentPoly {
            poly: self.poly.derivative(),
            tail: self.tail.derivative(),
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        LaurentPoly {
            poly: self.poly.scale(c),
            tail: self.tail.scale(c),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Result<LaurentPoly> {
        let t = self.tail.mul_poly(p)?;
        Ok(LaurentPoly {
            poly: &(&self.poly * p) + &t.poly,
            tail: t.tail,
        })
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        let a = self.tail.mul_poly(&other.poly)?;
        let b = other.tail.mul_poly(&self.poly)?;
        let tt = self.tail.mul_tail(&other.tail);
        Ok(LaurentPoly {
            poly: &(&(&self.poly * &other.poly) + &a.poly) + &b.poly,
            tail: &(&a.tail + &b.tail) + &tt,
        })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            poly: &self.poly + &rhs.poly,
            tail: &self.tail + &rhs.tail,
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            poly: &self.poly - &rhs.poly,
            tail: &self.tail - &rhs.tail,
        }
    }
}
