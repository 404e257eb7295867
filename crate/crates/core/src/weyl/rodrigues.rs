//! First-order operators `D = -a d + b` and their weighted Rodrigues
//! operators `(1/n!) (d + b/a)^n a^n prod_v a_v^(-r_v)`.

use num_traits::Zero;

use super::op::{DiffOp, Var};
use crate::error::{Error, Result};
use crate::exact::{factorial_q, int, Poly, RatFunc, Rational};

/// `D = -a(z) d + b(z)` with `a = a_1 ... a_l` kept factored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderData {
    a_factors: Vec<Poly>,
    b: Poly,
}

impl FirstOrderData {
    pub fn new(a_factors: Vec<Poly>, b: Poly) -> Result<Self> {
        if a_factors.is_empty() {
            return Err(Error::Hypothesis("at least one factor of a(z) is required".into()));
        }
        if a_factors.iter().any(Poly::is_zero) {
            return Err(Error::Hypothesis("every factor a_v(z) must be nonzero".into()));
        }
        Ok(FirstOrderData { a_factors, b })
    }

    /// Single-factor convenience constructor.
    pub fn simple(a: Poly, b: Poly) -> Result<Self> {
        FirstOrderData::new(vec![a], b)
    }

    pub fn a_factors(&self) -> &[Poly] {
        &self.a_factors
    }

    pub fn a(&self) -> Poly {
        self.a_factors.iter().fold(Poly::one(), |acc, f| &acc * f)
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    /// `max(deg a - 2, deg b - 1)`, with `deg 0 = -infinity`.
    pub fn w(&self) -> i64 {
        let a = self.a().degree_or_neg() - 2;
        match self.b.degree() {
            Some(v) => a.max(v as i64 - 1),
            None => a,
        }
    }

    /// `-a d + b` acting on `var`.
    pub fn operator(&self, var: Var) -> DiffOp {
        DiffOp::from_polys(vec![self.b.clone(), -&self.a()], var)
    }

    /// `d + b/a`.
    pub fn twisted_derivative(&self, var: Var) -> DiffOp {
        let ba = RatFunc::new(self.b.clone(), self.a()).expect("a nonzero");
        DiffOp::new(vec![ba, RatFunc::one()], var)
    }

    /// `a^n prod_v a_v^(-r_v)`.
    pub fn weight(&self, n: usize, r: &[usize]) -> Result<RatFunc> {
        if r.len() != self.a_factors.len() {
            return Err(Error::Hypothesis(format!(
                "weight vector has length {} but a(z) has {} factors",
                r.len(),
                self.a_factors.len()
            )));
        }
        let mut den = Poly::one();
        for (f, &rv) in self.a_factors.iter().zip(r) {
            den = &den * &f.pow(rv);
        }
        RatFunc::new(self.a().pow(n), den)
    }

    /// The weighted Rodrigues operator, built by `n` compositions.
    pub fn rodrigues_op(&self, n: usize, r: &[usize], var: Var) -> Result<DiffOp> {
        let e = self.twisted_derivative(var);
        let mut op = DiffOp::identity(var);
        for _ in 0..n {
            op = op.compose(&e)?;
        }
        let w = DiffOp::mul_by(self.weight(n, r)?, var);
        Ok(op.compose(&w)?.scale(&factorial_q(n).recip()))
    }

    /// Applies the weighted Rodrigues operator to `f` without forming it.
    pub fn rodrigues_apply(&self, n: usize, r: &[usize], f: &RatFunc) -> Result<RatFunc> {
        let ba = RatFunc::new(self.b.clone(), self.a())?;
        let mut g = &self.weight(n, r)? * f;
        for _ in 0..n {
            g = &g.derivative() + &(&ba * &g);
        }
        Ok(g.scale(&factorial_q(n).recip()))
    }
}

/// Decides whether `((b2 - b1)/a) * c` is a constant.
///
/// This is the quantity whose derivative appears in the commutator
/// `[R_{1,1}, R_{2,1}]` for `R_{j,n} = (1/n!) (d + b_j/a)^n c^n`, so it
/// decides commutativity for every pair of orders when `deg c <= 1`.
pub fn commute_criterion(a: &Poly, b1: &Poly, b2: &Poly, c: &Poly) -> Result<bool> {
    if c.degree().is_some_and(|d| d > 1) {
        return Err(Error::Hypothesis("commutation criterion needs deg c <= 1".into()));
    }
    if a.is_zero() || c.is_zero() {
        return Err(Error::Hypothesis("commutation criterion needs a c != 0".into()));
    }
    let num = &(b2 - b1) * c;
    Ok(match num.exact_div(a) {
        Some(q) => q.is_constant(),
        None => false,
    })
}

/// The reading `(b2 - b1) / (a c)` constant, kept for comparison.
pub fn commute_quotient_by_ac(a: &Poly, b1: &Poly, b2: &Poly, c: &Poly) -> bool {
    match (b2 - b1).exact_div(&(a * c)) {
        Some(q) => q.is_constant(),
        None => false,
    }
}

pub fn commutes_directly(r1: &DiffOp, r2: &DiffOp) -> Result<bool> {
    Ok(r1.compose(r2)? == r2.compose(r1)?)
}

/// `R_{j,n} = (1/n!) (d + b/a)^n c^n`.
pub fn rodrigues_with_c(a: &Poly, b: &Poly, c: &Poly, n: usize, var: Var) -> Result<DiffOp> {
    let ba = RatFunc::new(b.clone(), a.clone())?;
    let e = DiffOp::new(vec![ba, RatFunc::one()], var);
    let mut op = DiffOp::identity(var);
    for _ in 0..n {
        op = op.compose(&e)?;
    }
    let w = DiffOp::mul_by(RatFunc::from_poly(c.pow(n)), var);
    Ok(op.compose(&w)?.scale(&factorial_q(n).recip()))
}

/// Coefficients `c_{n,k,l}` with `t^k E^n = sum_l c_{n,k,l} E^(n-l) t^(k-l)`,
/// where `E = d + b/a` for any `b/a`. They satisfy
/// `c_{n,k,l} = c_{n-1,k,l} - k c_{n-1,k-1,l-1}` with `c_{0,k,0} = 1`.
pub fn commutation_coeffs(n: usize, k: usize) -> Vec<Rational> {
    if n == 0 {
        let mut v = vec![Rational::zero(); 1];
        v[0] = int(1);
        return v;
    }
    let prev = commutation_coeffs(n - 1, k);
    let prev_k1 = if k > 0 {
        commutation_coeffs(n - 1, k - 1)
    } else {
        Vec::new()
    };
    let len = n.min(k) + 1;
    (0..len)
        .map(|l| {
            let a = prev.get(l).cloned().unwrap_or_else(Rational::zero);
            let b = if l > 0 {
                prev_k1.get(l - 1).cloned().unwrap_or_else(Rational::zero)
            } else {
                Rational::zero()
            };
            a - b * int(k as i64)
        })
        .collect()
}
