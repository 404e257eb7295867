//! Linear differential operators `sum_i c_i(x) d^i` with rational-function
//! coefficients, kept with every derivative on the right.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{binomial, int, LaurentPoly, Poly, RatFunc, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    T,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::T => "t",
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    coeffs: Vec<RatFunc>,
    var: Var,
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<RatFunc>, var: Var) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        DiffOp { coeffs, var }
    }

    pub fn from_polys(coeffs: Vec<Poly>, var: Var) -> Self {
        DiffOp::new(coeffs.into_iter().map(RatFunc::from_poly).collect(), var)
    }

    pub fn zero(var: Var) -> Self {
        DiffOp {
            coeffs: Vec::new(),
            var,
        }
    }

    pub fn identity(var: Var) -> Self {
        DiffOp::mul_by(RatFunc::one(), var)
    }

    /// The multiplication operator `f -> c f`.
    pub fn mul_by(c: RatFunc, var: Var) -> Self {
        DiffOp::new(vec![c], var)
    }

    /// `d^k`.
    pub fn d_pow(k: usize, var: Var) -> Self {
        let mut coeffs = vec![RatFunc::zero(); k + 1];
        coeffs[k] = RatFunc::one();
        DiffOp { coeffs, var }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn relabel(&self, var: Var) -> DiffOp {
        DiffOp {
            coeffs: self.coeffs.clone(),
            var,
        }
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|x| x.scale(c)).collect(), self.var)
    }

    pub fn has_polynomial_coeffs(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_poly)
    }

    /// Ore-ring product `self * other`, using
    /// `d^i b = sum_k C(i,k) b^(k) d^(i-k)`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        if self.var != other.var {
            return Err(Error::VariableMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(DiffOp::zero(self.var));
        }
        let r = self.coeffs.len() - 1;
        let s = other.coeffs.len() - 1;
        // derivs[j][k] = k-th derivative of other.coeffs[j]
        let derivs: Vec<Vec<RatFunc>> = other
            .coeffs
            .iter()
            .map(|b| {
                let mut v = Vec::with_capacity(r + 1);
                let mut cur = b.clone();
                for _ in 0..=r {
                    let next = cur.derivative();
                    v.push(cur);
                    cur = next;
                }
                v
            })
            .collect();
        let mut out = vec![RatFunc::zero(); r + s + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for k in 0..=i {
                let c = Rational::from_integer(binomial(i, k));
                let ac = a.scale(&c);
                for (j, dj) in derivs.iter().enumerate() {
                    let bk = &dj[k];
                    if bk.is_zero() {
                        continue;
                    }
                    let idx = i - k + j;
                    out[idx] = &out[idx] + &(&ac * bk);
                }
            }
        }
        Ok(DiffOp::new(out, self.var))
    }

    /// Composes a nonempty list left to right.
    pub fn compose_all(ops: &[DiffOp]) -> Result<DiffOp> {
        let (first, rest) = ops
            .split_first()
            .ok_or_else(|| Error::Internal("empty operator product".into()))?;
        rest.iter().try_fold(first.clone(), |acc, op| acc.compose(op))
    }

    /// The adjoint `sum_j (-1)^j d_t^j P_j(t)` in normal form, in the other
    /// variable. Only defined for polynomial coefficients.
    pub fn adjoint(&self) -> Result<DiffOp> {
        let target = match self.var {
            Var::Z => Var::T,
            Var::T => Var::Z,
        };
        let mut acc = DiffOp::zero(target);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_poly() {
                return Err(Error::NonPolynomialCoefficient { index: j });
            }
            if c.is_zero() {
                continue;
            }
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            let term = DiffOp::d_pow(j, target)
                .scale(&sign)
                .compose(&DiffOp::mul_by(c.clone(), target))?;
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn apply_ratfunc(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut cur = f.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                cur = cur.derivative();
            }
            if !c.is_zero() {
                acc = &acc + &(c * &cur);
            }
        }
        acc
    }

    /// Image of a polynomial; may leave `K[x]` when coefficients are not
    /// polynomials.
    pub fn apply_poly(&self, p: &Poly) -> RatFunc {
        if self.has_polynomial_coeffs() {
            return RatFunc::from_poly(self.apply_poly_exact(p));
        }
        self.apply_ratfunc(&RatFunc::from_poly(p.clone()))
    }

    fn apply_poly_exact(&self, p: &Poly) -> Poly {
        let mut acc = Poly::zero();
        let mut cur = p.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                cur = cur.derivative();
            }
            if cur.is_zero() {
                break;
            }
            acc = &acc + &(c.num() * &cur);
        }
        acc
    }

    /// Image of a truncated Laurent series. Coefficients are expanded at
    /// infinity exactly; the result carries the precision that survives.
    pub fn apply_laurent(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        let order = self.order().unwrap_or(0);
        if f.precision() <= order && !self.is_zero() {
            return Err(Error::InsufficientPrecision {
                needed: order + 1,
                available: f.precision(),
            });
        }
        let mut acc: Option<LaurentPoly> = None;
        let mut cur = f.clone();
        let fdeg = f.poly.degree().unwrap_or(0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                cur = cur.derivative();
            }
            if c.is_zero() {
                continue;
            }
            let cdeg = c.degree().unwrap_or(0).unsigned_abs() as usize;
            let ce = LaurentPoly::from_ratfunc(c, cur.precision() + fdeg + cdeg + 2);
            let term = ce.mul(&cur)?;
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
        Ok(acc.unwrap_or_else(|| LaurentPoly::from_poly(Poly::zero(), f.precision())))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| json!([i, ratfunc_json(c)]))
                .collect(),
        )
    }
}

pub fn ratfunc_json(c: &RatFunc) -> Value {
    json!({ "num": c.num().to_strings(), "den": c.den().to_strings() })
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let v = self.var.name();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({})", c.display_in(v)),
                1 => format!("({})*d{v}", c.display_in(v)),
                _ => format!("({})*d{v}^{i}", c.display_in(v)),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.var, rhs.var, "operator variables differ");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = RatFunc::zero();
        DiffOp::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
            self.var,
        )
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            var: self.var,
        }
    }
}

/// `1/(z - t)` expanded as `sum_k t^k / z^(k+1)` at a numeric `t`.
pub fn cauchy_kernel(t: &Rational, precision: usize) -> LaurentPoly {
    let mut coeffs = Vec::with_capacity(precision);
    let mut p = int(1);
    for _ in 0..precision {
        coeffs.push(p.clone());
        p *= t;
    }
    LaurentPoly::from_tail(crate::exact::LaurentTail::new(coeffs))
}
