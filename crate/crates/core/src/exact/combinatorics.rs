//! Rising factorials, factorials, and binomials over the rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{int, Rational};

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        if term.is_zero() {
            return Rational::zero();
        }
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn factorial_q(k: usize) -> Rational {
    Rational::from_integer(factorial(k))
}

/// Integer binomial `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `C(a, b) = (-1)^b (-a)_b / b!` for rational `a`.
pub fn gen_binomial(a: &Rational, b: usize) -> Rational {
    let p = pochhammer(&-a.clone(), b) / factorial_q(b);
    if b % 2 == 1 {
        -p
    } else {
        p
    }
}

/// Falling factorial `k (k-1) ... (k-n+1)` as a signed integer.
pub fn falling(k: i64, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * int(k - i as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(-2), 4), int(0));
        assert_eq!(pochhammer(&int(1), 5), int(120));
    }

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(&int(5), 2), int(10));
        assert_eq!(gen_binomial(&rat(-9, 7), 0), int(1));
        assert_eq!(gen_binomial(&rat(1, 2), 2), rat(-1, 8));
        for n in 0..12 {
            for k in 0..14 {
                assert_eq!(gen_binomial(&int(n as i64), k), Rational::from_integer(binomial(n, k)));
            }
        }
    }

    #[test]
    fn falling_factorial_vanishes_below_length() {
        assert_eq!(falling(5, 3), int(60));
        assert_eq!(falling(2, 3), int(0));
        assert_eq!(falling(7, 0), int(1));
    }
}
