//! Sparse polynomials in two variables `z` and `t`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::poly::Poly;
use super::rational::Rational;

/// Map from `(power of z, power of t)` to a nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(zi: usize, tj: usize, c: Rational) -> Self {
        let mut b = BiPoly::zero();
        b.add_term(zi, tj, c);
        b
    }

    pub fn add_term(&mut self, zi: usize, tj: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((zi, tj)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(zi, tj));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, zi: usize, tj: usize) -> Rational {
        self.terms.get(&(zi, tj)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Embeds a univariate polynomial as a polynomial in `z`.
    pub fn from_z(p: &Poly) -> Self {
        let mut b = BiPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            b.add_term(i, 0, c.clone());
        }
        b
    }

    /// Embeds a univariate polynomial as a polynomial in `t`.
    pub fn from_t(p: &Poly) -> Self {
        let mut b = BiPoly::zero();
        for (j, c) in p.coeffs().iter().enumerate() {
            b.add_term(0, j, c.clone());
        }
        b
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Groups by powers of `t`: entry `j` is the `z`-polynomial multiplying `t^j`.
    pub fn by_t_power(&self) -> Vec<Poly> {
        let Some(dt) = self.t_degree() else {
            return Vec::new();
        };
        let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); dt + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[j];
            if row.len() <= i {
                row.resize(i + 1, Rational::zero());
            }
            row[i] = c.clone();
        }
        rows.into_iter().map(Poly::from_coeffs).collect()
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }
}

/// `(P(z) - P(t)) / (z - t) = sum_k p_k sum_{i+j=k-1} z^i t^j`.
pub fn divided_difference(p: &Poly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate().skip(1) {
        for i in 0..k {
            out.add_term(i, k - 1 - i, c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn z_minus_t() -> BiPoly {
        &BiPoly::term(1, 0, int(1)) - &BiPoly::term(0, 1, int(1))
    }

    #[test]
    fn examples() {
        let dd = divided_difference(&Poly::from_ints(&[0, 0, 1]));
        assert_eq!(dd, &BiPoly::term(1, 0, int(1)) + &BiPoly::term(0, 1, int(1)));
        assert!(divided_difference(&Poly::from_ints(&[7])).is_zero());
        let dd = divided_difference(&Poly::from_ints(&[0, -2, 0, 1]));
        let mut expected = BiPoly::zero();
        expected.add_term(2, 0, int(1));
        expected.add_term(1, 1, int(1));
        expected.add_term(0, 2, int(1));
        expected.add_term(0, 0, int(-2));
        assert_eq!(dd, expected);
    }

    #[test]
    fn reconstructs_p_of_z() {
        let p = Poly::from_ints(&[3, -1, 4, 1, -5, 9]);
        let lhs = &(&divided_difference(&p) * &z_minus_t()) + &BiPoly::from_t(&p);
        assert_eq!(lhs, BiPoly::from_z(&p));
    }

    #[test]
    fn grouping_by_t() {
        let dd = divided_difference(&Poly::from_ints(&[0, 0, 0, 1]));
        let rows = dd.by_t_power();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0], Poly::from_ints(&[0, 0, 1]));
        assert_eq!(rows[2], Poly::from_ints(&[1]));
    }
}
