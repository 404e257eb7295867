//! Exact determinants and nullspaces.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;

/// Integral-domain operations needed by fraction-free elimination.
pub trait BareissRing: Clone {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, other: &Self) -> Self;
}

impl BareissRing for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
}

impl BareissRing for Poly {
    fn zero_elem() -> Self {
        Poly::zero()
    }
    fn one_elem() -> Self {
        Poly::one()
    }
    fn is_zero_elem(&self) -> bool {
        Poly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        self.exact_div(other).expect("Bareiss quotient must be exact")
    }
}

/// Determinant by Bareiss elimination. Panics if `m` is not square.
pub fn det_bareiss<T: BareissRing>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return T::one_elem();
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut negate = false;
    let mut prev = T::one_elem();
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero_elem()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero_elem(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

pub fn det_exact(m: &[Vec<Rational>]) -> Rational {
    det_bareiss(m)
}

/// Reduced row echelon form with leftmost pivots; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace, one vector per free column in ascending
/// order; each basis vector has its own free variable set to 1.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_exact(&mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), int(1));
        assert_eq!(det_exact(&mat(&[&[1, 2], &[3, 4]])), int(-2));
        let v: Vec<Vec<Rational>> = (1..=4).map(|x: i64| (0..4).map(|k| int(x.pow(k))).collect()).collect();
        assert_eq!(det_exact(&v), int(12));
        assert_eq!(det_exact(&mat(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(det_exact(&mat(&[&[1, 2], &[2, 4]])), int(0));
    }

    #[test]
    fn polynomial_determinant() {
        let z = Poly::x();
        let m = vec![vec![z.clone(), Poly::one()], vec![Poly::one(), z.clone()]];
        assert_eq!(det_bareiss(&m), Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn nullspace_pins_highest_free_variable() {
        let m = mat(&[&[1, 1]]);
        let ns = nullspace(&m, 2);
        assert_eq!(ns, vec![vec![int(-1), int(1)]]);
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(nullspace(&m, 3).len(), 2);
        assert_eq!(rank(&m), 1);
    }
}
