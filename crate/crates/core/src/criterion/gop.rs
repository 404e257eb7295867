//! Residue test for `D = -a(z) d/dz + b(z)` with `a = prod (z - alpha_i)`
//! and `b = gamma prod (z - beta_j)` to be a G-operator.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct GOperatorReport {
    /// Roots of `a` in evaluation order (a zero root moved last).
    pub alphas: Vec<Rational>,
    /// `gamma prod_j (alpha_i - beta_j) / prod_{i' != i} (alpha_i - alpha_i')`.
    pub residues: Vec<Rational>,
    /// `gamma prod_j beta_j / alpha_j`, present when `0` is a root of `a`.
    pub zero_product: Option<Rational>,
    /// Every quantity is rational; with rational input this always holds.
    pub is_g_operator: bool,
}

impl GOperatorReport {
    pub fn to_json(&self) -> Value {
        json!({
            "alphas": self.alphas.iter().map(format_rational).collect::<Vec<_>>(),
            "residues": self.residues.iter().map(format_rational).collect::<Vec<_>>(),
            "zero_product": self.zero_product.as_ref().map(format_rational),
            "is_g_operator": self.is_g_operator,
        })
    }
}

pub fn g_operator_check(alphas: &[Rational], betas: &[Rational], gamma: &Rational) -> Result<GOperatorReport> {
    let m = alphas.len();
    if m < 2 {
        return Err(Error::Hypothesis("at least two roots alpha_i are required".into()));
    }
    if betas.len() != m - 1 {
        return Err(Error::Hypothesis(format!(
            "{m} roots alpha_i need {} roots beta_j",
            m - 1
        )));
    }
    for i in 0..m {
        for k in i + 1..m {
            if alphas[i] == alphas[k] {
                return Err(Error::Hypothesis(format!(
                    "alpha_{} = alpha_{} is repeated",
                    i + 1,
                    k + 1
                )));
            }
        }
    }
    let mut alphas = alphas.to_vec();
    let has_zero = if let Some(z) = alphas.iter().position(Zero::is_zero) {
        let zero = alphas.remove(z);
        alphas.push(zero);
        true
    } else {
        false
    };
    let residues = (0..m)
        .map(|i| {
            let num = betas.iter().fold(gamma.clone(), |acc, b| acc * (&alphas[i] - b));
            let den = (0..m)
                .filter(|&k| k != i)
                .fold(Rational::from_integer(1.into()), |acc, k| {
                    acc * (&alphas[i] - &alphas[k])
                });
            num / den
        })
        .collect();
    let zero_product = has_zero.then(|| betas.iter().zip(&alphas).fold(gamma.clone(), |acc, (b, a)| acc * b / a));
    Ok(GOperatorReport {
        alphas,
        residues,
        zero_product,
        is_g_operator: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn chebyshev_operator() {
        let r = g_operator_check(&[int(1), int(-1)], &[int(0)], &int(1)).unwrap();
        assert_eq!(r.residues, vec![rat(1, 2), rat(1, 2)]);
        assert!(r.is_g_operator);
        assert!(r.zero_product.is_none());
    }

    #[test]
    fn zero_gamma() {
        let r = g_operator_check(&[int(2), int(3), int(5)], &[int(1), int(7)], &int(0)).unwrap();
        assert!(r.residues.iter().all(Zero::is_zero));
    }

    #[test]
    fn zero_root() {
        let r = g_operator_check(&[int(0), int(1)], &[rat(1, 2)], &int(2)).unwrap();
        assert_eq!(r.alphas, vec![int(1), int(0)]);
        assert_eq!(r.residues, vec![int(1), int(1)]);
        assert_eq!(r.zero_product, Some(int(1)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(g_operator_check(&[int(1), int(1)], &[int(0)], &int(1)).is_err());
        assert!(g_operator_check(&[int(1)], &[], &int(1)).is_err());
        assert!(g_operator_check(&[int(1), int(2)], &[], &int(1)).is_err());
    }
}
