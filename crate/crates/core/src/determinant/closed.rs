//! Closed forms for `Delta_n` and `Theta_n` of the named families, evaluated
//! exactly as displayed.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial_q, int, pochhammer, rat, Rational};
use crate::holonomic::FamilySpec;

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// `prod_{j1 < j2} (x_{j2} - x_{j1})`.
pub fn vandermonde(xs: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for j2 in 0..xs.len() {
        for j1 in 0..j2 {
            v *= &xs[j2] - &xs[j1];
        }
    }
    v
}

/// `prod_j prod_{j' != j} prod_{k=1..n} (x_{j'} - x_j - k eps)`.
fn cross_product(xs: &[Rational], n: usize, eps: i64) -> Rational {
    let mut v = Rational::one();
    for (j, xj) in xs.iter().enumerate() {
        for (jp, xjp) in xs.iter().enumerate() {
            if jp != j {
                for k in 1..=n {
                    v *= xjp - xj - int(k as i64 * eps);
                }
            }
        }
    }
    v
}

/// `(-1 / (n!)^d)^d`.
fn leading_unit(n: usize, d: usize) -> Rational {
    let f = factorial_q(n).pow(d as i32);
    (-f.recip()).pow(d as i32)
}

/// `Delta_n` of the Chebyshev-type family for `n = uN + s`:
/// `(-1)^((n+1)(u-1)) ((n+1)u - 1 - uN)_n / n! prod_{l=0}^{u-2} ((u-1)/u)_n / ((u+l)/u)_n`.
pub fn delta_closed_chebyshev(u: usize, n: usize) -> Result<Rational> {
    if u < 2 || n < 1 {
        return Err(Error::Hypothesis("need u >= 2 and n >= 1".into()));
    }
    let big_n = n / u;
    let base = int(((n + 1) * u - 1 - u * big_n) as i64);
    let mut v = sign((n + 1) * (u - 1)) * pochhammer(&base, n) / factorial_q(n);
    v *= chebyshev_theta_unsigned(u, n);
    Ok(v)
}

/// `prod_{l=0}^{u-2} ((u-1)/u)_n / ((u+l)/u)_n`.
fn chebyshev_theta_unsigned(u: usize, n: usize) -> Rational {
    let num = pochhammer(&rat(u as i64 - 1, u as i64), n);
    (0..u - 1)
        .map(|l| &num / pochhammer(&rat((u + l) as i64, u as i64), n))
        .fold(Rational::one(), |a, b| a * b)
}

/// `Theta_n = prod_l phi_l(t^l (t^u - 1)^n) = prod_l (-1)^n ((u-1)/u)_n / ((u+l)/u)_n`.
pub fn theta_closed_chebyshev(u: usize, n: usize) -> Rational {
    sign(n * (u - 1)) * chebyshev_theta_unsigned(u, n)
}

/// Leading coefficient of `P_{u-1}` as obtained in the determinant
/// computation: `((n+1)u - 1 - n)_n / n!`.
pub fn chebyshev_top_coefficient(u: usize, n: usize) -> Rational {
    pochhammer(&int(((n + 1) * u - 1 - n) as i64), n) / factorial_q(n)
}

/// The closed form of `Delta_n` for the Bessel, Laguerre and Hermite
/// families, `None` for families without one.
pub fn delta_closed_examples(spec: &FamilySpec, n: usize) -> Result<Option<Rational>> {
    spec.validate()?;
    Ok(match spec {
        FamilySpec::Chebyshev { u } => Some(delta_closed_chebyshev(*u, n)?),
        FamilySpec::Bessel { gamma } => {
            let d = gamma.len();
            let mut v = sign(d * (d - 1) / 2) * leading_unit(n, d) * cross_product(gamma, n, 1);
            for g in gamma {
                let top = pochhammer(&(g + int((d * (n + 1) + 1) as i64)), n);
                v *= top / pochhammer(&(g + int(2)), (d + 1) * n + d - 1);
            }
            Some(v * vandermonde(gamma))
        }
        FamilySpec::LaguerreGamma { gamma, delta } => {
            let d = gamma.len();
            let mut v = leading_unit(n, d);
            for (j, g) in gamma.iter().enumerate() {
                for (jp, gp) in gamma.iter().enumerate() {
                    if jp != j {
                        v *= (gp - g).pow(n as i32);
                    }
                }
                let p = pochhammer(&(delta + int(1)), d * n + j);
                v *= p / g.pow(((d - 1) * n + d) as i32);
            }
            Some(v * vandermonde(gamma))
        }
        FamilySpec::LaguerreDelta { gamma, delta } => {
            let d = delta.len();
            let mut v = leading_unit(n, d) * cross_product(delta, n, 1);
            for (j, dj) in delta.iter().enumerate() {
                v *= pochhammer(&(dj + int(1)), n) / gamma.pow(j as i32 + 1);
            }
            Some(v * vandermonde(delta))
        }
        FamilySpec::Hermite { gamma, delta } => {
            let d = delta.len();
            let mut v = leading_unit(n, d);
            for (j, dj) in delta.iter().enumerate() {
                for (jp, djp) in delta.iter().enumerate() {
                    if jp != j {
                        v *= (djp - dj).pow(n as i32);
                    }
                }
            }
            let tri = d * (d - 1) / 2;
            v *= sign(tri) * gamma.pow((d * n) as i32 - tri as i32);
            Some(v * vandermonde(delta))
        }
        FamilySpec::Lerch { .. } | FamilySpec::Custom { .. } => None,
    })
}

/// The reduced product formula for `Theta_n`, `None` where none is given.
pub fn theta_closed_examples(spec: &FamilySpec, n: usize) -> Result<Option<Rational>> {
    spec.validate()?;
    Ok(match spec {
        FamilySpec::Chebyshev { u } => Some(theta_closed_chebyshev(*u, n)),
        FamilySpec::Bessel { gamma } => {
            let d = gamma.len();
            let mut v = sign(d * (d - 1) / 2);
            for g in gamma {
                v /= pochhammer(&(g + int(2)), (d + 1) * n + d - 1);
            }
            Some(v * vandermonde(gamma))
        }
        FamilySpec::LaguerreGamma { gamma, delta } => {
            let d = gamma.len();
            let mut v = Rational::one();
            for (j, g) in gamma.iter().enumerate() {
                v *= pochhammer(&(delta + int(1)), d * n + j) / g.pow((d * (n + 1)) as i32);
            }
            Some(v * vandermonde(gamma))
        }
        FamilySpec::LaguerreDelta { gamma, delta } => {
            let mut v = Rational::one();
            for (j, dj) in delta.iter().enumerate() {
                v *= pochhammer(&(dj + int(1)), n) / gamma.pow((n + j + 1) as i32);
            }
            Some(v * vandermonde(delta))
        }
        FamilySpec::Hermite { gamma, delta } => {
            let d = delta.len();
            let tri = (d * (d - 1) / 2) as i32;
            Some((-gamma.recip()).pow(tri) * vandermonde(delta))
        }
        FamilySpec::Lerch { .. } | FamilySpec::Custom { .. } => None,
    })
}

/// A recorded departure from a displayed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Correction {
    /// The general identity holds with `((-1)^n / (n!)^(d-1))^W` in place of
    /// `(-1 / (n!)^(d-1))^W`, a factor `(-1)^((n+1)W)`.
    IdentityUnit,
    /// With `b_j = -gamma z + delta` the top coefficient of `P_d` carries
    /// `(-gamma)^(dn)`, not `gamma^(dn)`: a factor `(-1)^(dn)`.
    LaguerreLeadingSign,
    /// The Vandermonde reduction of `Theta_n` reverses `d` columns and needs
    /// `(-1)^(d(d-1)/2)`.
    LaguerreGammaThetaSign,
    /// The Pochhammer base is `(n+1)u - 1 - n` (as in the top coefficient of
    /// `P_{u-1}`), not `(n+1)u - 1 - uN`; with the corrected identity unit
    /// the overall sign is `+1`.
    ChebyshevBaseAndSign,
}

impl Correction {
    pub fn describe(self) -> &'static str {
        match self {
            Correction::IdentityUnit => "identity unit ((-1)^n/(n!)^(d-1))^W instead of (-1/(n!)^(d-1))^W",
            Correction::LaguerreLeadingSign => "top coefficient of P_d has (-gamma)^(dn)",
            Correction::LaguerreGammaThetaSign => "Theta_n needs (-1)^(d(d-1)/2) from reversing columns",
            Correction::ChebyshevBaseAndSign => "Pochhammer base (n+1)u-1-n and overall sign +1",
        }
    }
}

/// `(-1)^n / (n!)^(d-1)` to the power `W`, the unit observed in place of
/// `(-1 / (n!)^(d-1))^W`.
pub fn corrected_identity_unit(n: usize, d: usize, w: usize) -> Rational {
    sign(n * w) * factorial_q(n).pow(-((d as i32 - 1) * w as i32))
}

/// `((n+1)u - 1 - n)_n / n! prod_{l=0}^{u-2} ((u-1)/u)_n / ((u+l)/u)_n`.
pub fn delta_corrected_chebyshev(u: usize, n: usize) -> Rational {
    chebyshev_top_coefficient(u, n) * chebyshev_theta_unsigned(u, n)
}

/// The displayed closed form of `Delta_n` with the recorded corrections
/// applied, and the list of corrections used.
pub fn delta_closed_corrected(spec: &FamilySpec, n: usize) -> Result<Option<(Rational, Vec<Correction>)>> {
    let Some(shown) = delta_closed_examples(spec, n)? else {
        return Ok(None);
    };
    use Correction::*;
    Ok(Some(match spec {
        FamilySpec::Chebyshev { u } => (delta_corrected_chebyshev(*u, n), vec![ChebyshevBaseAndSign]),
        FamilySpec::Bessel { gamma }
        | FamilySpec::LaguerreDelta { delta: gamma, .. }
        | FamilySpec::Hermite { delta: gamma, .. } => {
            let d = gamma.len();
            let mut v = shown * sign((n + 1) * d);
            let mut used = vec![IdentityUnit];
            if matches!(spec, FamilySpec::LaguerreDelta { .. }) {
                v *= sign(d * n);
                used.push(LaguerreLeadingSign);
            }
            (v, used)
        }
        FamilySpec::LaguerreGamma { gamma, .. } => {
            let d = gamma.len();
            let v = shown * sign((n + 1) * d) * sign(d * n) * sign(d * (d - 1) / 2);
            (v, vec![IdentityUnit, LaguerreLeadingSign, LaguerreGammaThetaSign])
        }
        FamilySpec::Lerch { .. } | FamilySpec::Custom { .. } => return Ok(None),
    }))
}

/// The displayed `Theta_n` formula with the recorded corrections applied.
pub fn theta_closed_corrected(spec: &FamilySpec, n: usize) -> Result<Option<(Rational, Vec<Correction>)>> {
    let Some(shown) = theta_closed_examples(spec, n)? else {
        return Ok(None);
    };
    Ok(Some(match spec {
        FamilySpec::LaguerreGamma { gamma, .. } => {
            let d = gamma.len();
            (shown * sign(d * (d - 1) / 2), vec![Correction::LaguerreGammaThetaSign])
        }
        _ => (shown, Vec::new()),
    }))
}

/// How two values that should agree relate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnosis {
    Equal,
    /// `computed / expected`, with the sign of that ratio.
    Ratio {
        ratio: Rational,
        negative: bool,
    },
    /// Exactly one of the two values is zero.
    ZeroMismatch,
}

impl Diagnosis {
    pub fn of(computed: &Rational, expected: &Rational) -> Diagnosis {
        if computed == expected {
            Diagnosis::Equal
        } else if expected.is_zero() || computed.is_zero() {
            Diagnosis::ZeroMismatch
        } else {
            let ratio = computed / expected;
            let negative = ratio < Rational::zero();
            Diagnosis::Ratio { ratio, negative }
        }
    }

    pub fn is_equal(&self) -> bool {
        matches!(self, Diagnosis::Equal)
    }

    /// A pure sign flip.
    pub fn is_sign_only(&self) -> bool {
        matches!(self, Diagnosis::Ratio { ratio, .. } if *ratio == int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vandermonde_small() {
        assert_eq!(vandermonde(&[int(1), int(2), int(4)]), int(6));
        assert_eq!(vandermonde(&[int(5)]), int(1));
    }

    #[test]
    fn chebyshev_nonvanishing() {
        for u in 2..=4 {
            for n in 1..=6 {
                assert!(!delta_closed_chebyshev(u, n).unwrap().is_zero());
            }
        }
        // u = 2, n = 2 (N = 1, s = 0): (-1)^3 (6-1-2)_2/2! (1/2)_2/(1)_2
        assert_eq!(delta_closed_chebyshev(2, 2).unwrap(), rat(-9, 4));
        assert_eq!(chebyshev_top_coefficient(2, 1), int(2));
    }

    #[test]
    fn laguerre_delta_single() {
        let (g, d) = (rat(3, 2), rat(1, 3));
        let spec = FamilySpec::LaguerreDelta {
            gamma: g.clone(),
            delta: vec![d.clone()],
        };
        for n in 1..4 {
            let v = delta_closed_examples(&spec, n).unwrap().unwrap();
            assert_eq!(v, -pochhammer(&(&d + int(1)), n) / (factorial_q(n) * &g));
        }
    }

    #[test]
    fn hermite_theta_two() {
        let spec = FamilySpec::Hermite {
            gamma: int(1),
            delta: vec![int(0), int(1)],
        };
        assert_eq!(theta_closed_examples(&spec, 1).unwrap(), Some(int(-1)));
    }

    #[test]
    fn diagnosis_kinds() {
        assert!(Diagnosis::of(&int(2), &int(2)).is_equal());
        assert!(Diagnosis::of(&int(-2), &int(2)).is_sign_only());
        assert_eq!(Diagnosis::of(&int(0), &int(2)), Diagnosis::ZeroMismatch);
    }
}
