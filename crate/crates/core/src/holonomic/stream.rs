//! Coefficient streams of Laurent series `f` with `D f` a polynomial.
//!
//! Writing `f = sum_k f_k / z^(k+1)`, the tail of `D f` vanishes iff
//! `sum_i a_i (k+i) f_(k+i-1) + sum_j b_j f_(k+j) = 0` for all `k >= 0`.
//! The highest index in that relation is `k + w + 1`, so `w + 1` seeds
//! determine the series whenever its coefficient never vanishes.

use std::sync::RwLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{int, LaurentPoly, LaurentTail, Rational};
use crate::weyl::{FirstOrderData, Var};

/// The leading recurrence coefficient `c_{k,w+1} = alpha k + beta`.
pub fn leading_coefficient(op: &FirstOrderData) -> Result<(Rational, Rational)> {
    let w = op.w();
    if w < 0 {
        return Err(Error::NegativeW);
    }
    let a = op.a();
    let u = a.degree().expect("a nonzero") as i64;
    let mut alpha = Rational::zero();
    let mut beta = Rational::zero();
    if u - 1 == w + 1 {
        let au = a.leading();
        alpha += &au;
        beta += au * int(u);
    }
    if op.b().degree().map(|v| v as i64) == Some(w + 1) {
        beta += op.b().leading();
    }
    Ok((alpha, beta))
}

/// Checks that `c_{k,w+1} != 0` for every `k >= 0`; reports the first
/// violating `k` otherwise.
pub fn check_assumption(op: &FirstOrderData) -> Result<()> {
    let (alpha, beta) = leading_coefficient(op)?;
    if alpha.is_zero() {
        return if beta.is_zero() {
            Err(Error::AssumptionViolated { k: 0 })
        } else {
            Ok(())
        };
    }
    let root = -beta / alpha;
    if root.is_integer() && root >= Rational::zero() {
        let k = root.to_integer();
        return Err(Error::AssumptionViolated {
            k: k.try_into().unwrap_or(u64::MAX),
        });
    }
    Ok(())
}

/// Memoized coefficient generator. Extension takes the write lock; reads
/// of an already cached prefix only take the read lock.
#[derive(Debug)]
pub struct HolonomicStream {
    source: FirstOrderData,
    label: String,
    seeds: usize,
    cache: RwLock<Vec<Rational>>,
}

impl Clone for HolonomicStream {
    fn clone(&self) -> Self {
        HolonomicStream {
            source: self.source.clone(),
            label: self.label.clone(),
            seeds: self.seeds,
            cache: RwLock::new(self.cache.read().expect("poisoned").clone()),
        }
    }
}

impl HolonomicStream {
    /// Stream with explicit seeds `f_0 .. f_w`.
    pub fn new(source: FirstOrderData, seeds: Vec<Rational>, label: impl Into<String>) -> Result<Self> {
        check_assumption(&source)?;
        let w = source.w() as usize;
        if seeds.len() != w + 1 {
            return Err(Error::Hypothesis(format!(
                "expected {} seed coefficients, got {}",
                w + 1,
                seeds.len()
            )));
        }
        Ok(HolonomicStream {
            source,
            label: label.into(),
            seeds: w + 1,
            cache: RwLock::new(seeds),
        })
    }

    pub fn source(&self) -> &FirstOrderData {
        &self.source
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn seed_count(&self) -> usize {
        self.seeds
    }

    pub fn get(&self, k: usize) -> Rational {
        if let Some(v) = self.cache.read().expect("poisoned").get(k) {
            return v.clone();
        }
        self.extend_to(k + 1);
        self.cache.read().expect("poisoned")[k].clone()
    }

    /// `f_0 .. f_(n-1)`.
    pub fn prefix(&self, n: usize) -> Vec<Rational> {
        self.extend_to(n);
        self.cache.read().expect("poisoned")[..n].to_vec()
    }

    pub fn tail(&self, n: usize) -> LaurentTail {
        LaurentTail::new(self.prefix(n))
    }

    fn extend_to(&self, n: usize) {
        let mut cache = self.cache.write().expect("poisoned");
        if cache.len() >= n {
            return;
        }
        let a = self.source.a();
        let b = self.source.b();
        let w1 = self.seeds; // w + 1
        let (alpha, beta) = leading_coefficient(&self.source).expect("checked at construction");
        while cache.len() < n {
            let top = cache.len();
            let k = top - w1;
            let mut acc = Rational::zero();
            for (i, ai) in a.coeffs().iter().enumerate() {
                if ai.is_zero() || k + i == 0 {
                    continue;
                }
                let idx = k + i - 1;
                if idx < top {
                    acc += ai * int((k + i) as i64) * &cache[idx];
                }
            }
            for (j, bj) in b.coeffs().iter().enumerate() {
                let idx = k + j;
                if !bj.is_zero() && idx < top {
                    acc += bj * &cache[idx];
                }
            }
            let lead = &alpha * int(k as i64) + &beta;
            cache.push(-acc / lead);
        }
    }

    /// Residual of the recurrence at step `k` (zero for a valid prefix).
    pub fn residual(&self, k: usize) -> Rational {
        let a = self.source.a();
        let b = self.source.b();
        let mut acc = Rational::zero();
        for (i, ai) in a.coeffs().iter().enumerate() {
            if k + i > 0 {
                acc += ai * int((k + i) as i64) * self.get(k + i - 1);
            }
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            acc += bj * self.get(k + j);
        }
        acc
    }

    /// `D f` to the given precision; its tail should vanish.
    pub fn apply_operator(&self, precision: usize) -> Result<LaurentPoly> {
        let f = LaurentPoly::from_tail(self.tail(precision));
        self.source.operator(Var::Z).apply_laurent(&f)
    }
}

/// Canonical basis: seeds are the unit vectors of length `w + 1`.
pub fn solution_basis(op: &FirstOrderData) -> Result<Vec<HolonomicStream>> {
    check_assumption(op)?;
    let w1 = op.w() as usize + 1;
    (0..w1)
        .map(|l| {
            let seeds = (0..w1).map(|i| if i == l { int(1) } else { int(0) }).collect();
            HolonomicStream::new(op.clone(), seeds, format!("f_{l}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{pochhammer, rat, Order, Poly};

    fn op(a: &[i64], b: &[i64]) -> FirstOrderData {
        FirstOrderData::simple(Poly::from_ints(a), Poly::from_ints(b)).unwrap()
    }

    #[test]
    fn assumption_examples() {
        assert!(check_assumption(&op(&[-1, 0, 1], &[0, -1])).is_ok());
        assert_eq!(
            check_assumption(&op(&[0, 0, 1], &[0, -2])),
            Err(Error::AssumptionViolated { k: 0 })
        );
        assert!(check_assumption(&op(&[0, 0, 0, 1], &[1])).is_ok());
        assert_eq!(check_assumption(&op(&[1], &[])), Err(Error::NegativeW));
        // a = z^2, b = -5z: k + 2 - 5 vanishes at k = 3
        assert_eq!(
            check_assumption(&op(&[0, 0, 1], &[0, -5])),
            Err(Error::AssumptionViolated { k: 3 })
        );
    }

    #[test]
    fn chebyshev_two_basis() {
        let basis = solution_basis(&op(&[-1, 0, 1], &[0, -1])).unwrap();
        assert_eq!(basis.len(), 1);
        let f = basis[0].prefix(9);
        for k in 0..4 {
            assert_eq!(f[2 * k], pochhammer(&rat(1, 2), k) / pochhammer(&int(1), k));
            assert!(f[2 * k + 1].is_zero());
        }
        assert_eq!(f[4], rat(3, 8));
        let df = basis[0].apply_operator(20).unwrap();
        assert!(matches!(df.tail.ord_inf(), Order::AtLeast(_)));
    }

    #[test]
    fn hermite_recurrence() {
        let (g, d) = (rat(2, 3), rat(-1, 5));
        let fo = FirstOrderData::simple(Poly::one(), Poly::from_coeffs(vec![d.clone(), g.clone()])).unwrap();
        let s = HolonomicStream::new(fo, vec![int(1)], "f").unwrap();
        assert_eq!(s.get(1), -d.clone() / &g);
        for k in 0..10 {
            let lhs = s.get(k + 2);
            let rhs = -(&d * s.get(k + 1) + int(k as i64 + 1) * s.get(k)) / &g;
            assert_eq!(lhs, rhs);
            assert!(s.residual(k).is_zero());
        }
    }

    #[test]
    fn concurrent_readers_agree() {
        let s = std::sync::Arc::new(solution_basis(&op(&[-1, 0, 0, 1], &[0, 0, -1])).unwrap().remove(1));
        let handles: Vec<_> = (0..4)
            .map(|i| {
                let s = s.clone();
                std::thread::spawn(move || s.prefix(20 + 5 * i))
            })
            .collect();
        let out: Vec<Vec<Rational>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for v in &out {
            assert_eq!(v[..], out[3][..v.len()]);
        }
    }
}
