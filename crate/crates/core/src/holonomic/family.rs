//! Named families of first-order operators with explicit solution series.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::stream::{check_assumption, solution_basis, HolonomicStream};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, parse_rational, pochhammer, Poly, Rational};
use crate::weyl::FirstOrderData;

/// Untyped family description as it appears in configs and on the CLI.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FamilyConfig {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gamma: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub delta: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub alpha: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `D = -(z^u - 1) d - z^(u-1)`.
    Chebyshev { u: usize },
    /// `D_j = -z^2 d + gamma_j z - 1`.
    Bessel { gamma: Vec<Rational> },
    /// `D_j = -z d - gamma_j z + delta`.
    LaguerreGamma { gamma: Vec<Rational>, delta: Rational },
    /// `D_j = -z d - gamma z + delta_j`.
    LaguerreDelta { gamma: Rational, delta: Vec<Rational> },
    /// `D_j = -d + gamma z + delta_j`.
    Hermite { gamma: Rational, delta: Vec<Rational> },
    /// `D_j = -z A(z) d + gamma_j A(z)` with `A = prod_i (z - alpha_i)`.
    Lerch { alpha: Vec<Rational>, gamma: Vec<Rational> },
    /// A single `D = -a d + b` with the canonical solution basis.
    Custom { a: Poly, b: Poly },
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn single(v: &[String], name: &str, family: &str) -> Result<Rational> {
    match v {
        [x] => parse_rational(x),
        _ => Err(Error::InvalidFamily(format!(
            "{family} takes exactly one {name}, got {}",
            v.len()
        ))),
    }
}

fn is_negative_integer(x: &Rational) -> bool {
    x.is_integer() && x < &Rational::zero()
}

fn require_nonempty(v: &[Rational], what: &str) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidFamily(format!("at least one {what} is required")));
    }
    Ok(())
}

fn pairwise(v: &[Rational], what: &str, non_integral: bool) -> Result<()> {
    for (i, x) in v.iter().enumerate() {
        for y in &v[i + 1..] {
            let d = y - x;
            if non_integral && d.is_integer() {
                return Err(Error::InvalidFamily(format!(
                    "{what} differences must not be integers ({} - {} = {})",
                    format_rational(y),
                    format_rational(x),
                    format_rational(&d)
                )));
            }
            if d.is_zero() {
                return Err(Error::InvalidFamily(format!(
                    "{what} values must be pairwise distinct ({} repeated)",
                    format_rational(x)
                )));
            }
        }
    }
    Ok(())
}

impl FamilySpec {
    pub fn from_config(c: &FamilyConfig) -> Result<Self> {
        let name = c.family.as_str();
        let spec = match name {
            "chebyshev" | "chebyshev-u" => FamilySpec::Chebyshev {
                u: c.u.ok_or_else(|| Error::InvalidFamily("chebyshev needs u".into()))?,
            },
            "bessel" => FamilySpec::Bessel {
                gamma: parse_all(&c.gamma)?,
            },
            "laguerre-gamma" => FamilySpec::LaguerreGamma {
                gamma: parse_all(&c.gamma)?,
                delta: single(&c.delta, "delta", name)?,
            },
            "laguerre-delta" => FamilySpec::LaguerreDelta {
                gamma: single(&c.gamma, "gamma", name)?,
                delta: parse_all(&c.delta)?,
            },
            "hermite" => FamilySpec::Hermite {
                gamma: single(&c.gamma, "gamma", name)?,
                delta: parse_all(&c.delta)?,
            },
            "lerch" | "legendre" => FamilySpec::Lerch {
                alpha: parse_all(&c.alpha)?,
                gamma: parse_all(&c.gamma)?,
            },
            "custom" => FamilySpec::Custom {
                a: Poly::parse(
                    c.a.as_deref()
                        .ok_or_else(|| Error::InvalidFamily("custom needs a".into()))?,
                )?,
                b: Poly::parse(c.b.as_deref().unwrap_or("0"))?,
            },
            other => return Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_config(&self) -> FamilyConfig {
        let strs = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        let mut c = FamilyConfig {
            family: self.tag().to_string(),
            ..FamilyConfig::default()
        };
        match self {
            FamilySpec::Chebyshev { u } => c.u = Some(*u),
            FamilySpec::Bessel { gamma } => c.gamma = strs(gamma),
            FamilySpec::LaguerreGamma { gamma, delta } => {
                c.gamma = strs(gamma);
                c.delta = vec![format_rational(delta)];
            }
            FamilySpec::LaguerreDelta { gamma, delta } | FamilySpec::Hermite { gamma, delta } => {
                c.gamma = vec![format_rational(gamma)];
                c.delta = strs(delta);
            }
            FamilySpec::Lerch { alpha, gamma } => {
                c.alpha = strs(alpha);
                c.gamma = strs(gamma);
            }
            FamilySpec::Custom { a, b } => {
                c.a = Some(a.display_in("z"));
                c.b = Some(b.display_in("z"));
            }
        }
        c
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Chebyshev { .. } => "chebyshev",
            FamilySpec::Bessel { .. } => "bessel",
            FamilySpec::LaguerreGamma { .. } => "laguerre-gamma",
            FamilySpec::LaguerreDelta { .. } => "laguerre-delta",
            FamilySpec::Hermite { .. } => "hermite",
            FamilySpec::Lerch { .. } => "lerch",
            FamilySpec::Custom { .. } => "custom",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Chebyshev { u } => {
                if *u < 2 {
                    return Err(Error::InvalidFamily(format!("chebyshev needs u >= 2, got {u}")));
                }
            }
            FamilySpec::Bessel { gamma } => {
                require_nonempty(gamma, "gamma")?;
                for g in gamma {
                    if g.is_integer() && g < &int(-1) {
                        return Err(Error::InvalidFamily(format!(
                            "bessel gamma must not be an integer below -1, got {}",
                            format_rational(g)
                        )));
                    }
                }
                pairwise(gamma, "gamma", true)?;
            }
            FamilySpec::LaguerreGamma { gamma, delta } => {
                require_nonempty(gamma, "gamma")?;
                if gamma.iter().any(Zero::is_zero) {
                    return Err(Error::InvalidFamily("gamma values must be nonzero".into()));
                }
                pairwise(gamma, "gamma", false)?;
                if is_negative_integer(delta) {
                    return Err(Error::InvalidFamily("delta must not be a negative integer".into()));
                }
            }
            FamilySpec::LaguerreDelta { gamma, delta } => {
                require_nonempty(delta, "delta")?;
                if gamma.is_zero() {
                    return Err(Error::InvalidFamily("gamma must be nonzero".into()));
                }
                if delta.iter().any(is_negative_integer) {
                    return Err(Error::InvalidFamily(
                        "delta values must not be negative integers".into(),
                    ));
                }
                pairwise(delta, "delta", true)?;
            }
            FamilySpec::Hermite { gamma, delta } => {
                require_nonempty(delta, "delta")?;
                if gamma.is_zero() {
                    return Err(Error::InvalidFamily("gamma must be nonzero".into()));
                }
                pairwise(delta, "delta", false)?;
            }
            FamilySpec::Lerch { alpha, gamma } => {
                require_nonempty(alpha, "alpha")?;
                require_nonempty(gamma, "gamma")?;
                if alpha.iter().any(Zero::is_zero) {
                    return Err(Error::InvalidFamily("alpha values must be nonzero".into()));
                }
                pairwise(alpha, "alpha", false)?;
                if gamma.iter().any(is_negative_integer) {
                    return Err(Error::InvalidFamily(
                        "gamma values must not be negative integers".into(),
                    ));
                }
                pairwise(gamma, "gamma", true)?;
            }
            FamilySpec::Custom { a, .. } => {
                if a.is_zero() {
                    return Err(Error::InvalidFamily("a(z) must be nonzero".into()));
                }
            }
        }
        Ok(())
    }
}

/// Closed-form coefficient law of a named series, used to cross-check the
/// recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Law {
    /// `((1+l)/u)_k / ((u+l)/u)_k` at index `uk + l`, zero elsewhere.
    Chebyshev { u: usize, l: usize },
    /// `1 / (2 + gamma)_k`.
    Bessel { gamma: Rational },
    /// `(1 + delta)_k / gamma^(k+1)`.
    Laguerre { gamma: Rational, delta: Rational },
    /// `alpha^(k+1) / (k + 1 + gamma)`.
    Lerch { alpha: Rational, gamma: Rational },
    /// Defined by the recurrence only.
    Recurrence,
}

impl Law {
    pub fn value(&self, k: usize) -> Option<Rational> {
        match self {
            Law::Chebyshev { u, l } => {
                if k < *l || !(k - l).is_multiple_of(*u) {
                    return Some(Rational::zero());
                }
                let kk = (k - l) / u;
                let uq = int(*u as i64);
                let num = pochhammer(&(int(1 + *l as i64) / &uq), kk);
                let den = pochhammer(&(int((*u + *l) as i64) / &uq), kk);
                Some(num / den)
            }
            Law::Bessel { gamma } => Some(pochhammer(&(gamma + int(2)), k).recip()),
            Law::Laguerre { gamma, delta } => {
                Some(pochhammer(&(delta + int(1)), k) / num_traits::pow(gamma.clone(), k + 1))
            }
            Law::Lerch { alpha, gamma } => Some(num_traits::pow(alpha.clone(), k + 1) / (gamma + int(k as i64 + 1))),
            Law::Recurrence => None,
        }
    }
}

/// One operator `D_j` together with its solution series.
#[derive(Clone, Debug)]
pub struct Block {
    pub op: FirstOrderData,
    pub streams: Vec<Arc<HolonomicStream>>,
    pub laws: Vec<Law>,
}

impl Block {
    pub fn w(&self) -> usize {
        self.op.w() as usize
    }
}

/// A family in the two-factor layout `a = a_1 a_2` shared by all named
/// examples, with weights `r_j = (0, n)` and `F_h = z^h a_2^(dn)`.
#[derive(Clone, Debug)]
pub struct FamilyData {
    pub spec: FamilySpec,
    pub a1: Poly,
    pub a2: Poly,
    pub blocks: Vec<Block>,
}

impl FamilyData {
    pub fn d(&self) -> usize {
        self.blocks.len()
    }

    /// `W = sum_j (w_j + 1)`.
    pub fn big_w(&self) -> usize {
        self.blocks.iter().map(|b| b.w() + 1).sum()
    }

    /// `epsilon_{a_1}`: 1 if `deg a_1 = 1`, 0 if constant.
    pub fn eps_a1(&self) -> usize {
        usize::from(self.a1.degree() == Some(1))
    }

    pub fn is_custom(&self) -> bool {
        matches!(self.spec, FamilySpec::Custom { .. })
    }

    /// Weight vector `r_j` for order `n`.
    pub fn weights(&self, n: usize) -> Vec<usize> {
        if self.is_custom() {
            vec![0]
        } else {
            vec![0, n]
        }
    }

    /// `F = z^h a_2^(dn)` (or `z^h` for a custom operator).
    pub fn f_poly(&self, n: usize, h: usize) -> Poly {
        let base = Poly::monomial(int(1), h);
        if self.is_custom() {
            base
        } else {
            &base * &self.a2.pow(self.d() * n)
        }
    }

    /// `gamma_{j1,j2} = (b_{j1} - b_{j2}) / a_2` when it is a constant.
    pub fn gamma_pair(&self, j1: usize, j2: usize) -> Option<Rational> {
        let diff = self.blocks[j1].op.b() - self.blocks[j2].op.b();
        let q = diff.exact_div(&self.a2)?;
        q.is_constant().then(|| q.coeff(0))
    }

    /// Flat list of all series in block order.
    pub fn all_streams(&self) -> Vec<Arc<HolonomicStream>> {
        self.blocks.iter().flat_map(|b| b.streams.iter().cloned()).collect()
    }
}

fn block(op: FirstOrderData, seeds: Vec<(Vec<Rational>, Law, String)>) -> Result<Block> {
    let mut streams = Vec::new();
    let mut laws = Vec::new();
    for (s, law, label) in seeds {
        streams.push(Arc::new(HolonomicStream::new(op.clone(), s, label)?));
        laws.push(law);
    }
    Ok(Block { op, streams, laws })
}

/// Builds the operators, factorization and series of a family.
pub fn family_streams(spec: &FamilySpec) -> Result<FamilyData> {
    spec.validate()?;
    let z = Poly::x();
    let one = Poly::one();
    let two = |a1: Poly, a2: Poly, b: Poly| FirstOrderData::new(vec![a1, a2], b);
    let (a1, a2, blocks) = match spec {
        FamilySpec::Chebyshev { u } => {
            let u = *u;
            let a2 = &Poly::monomial(int(1), u) - &one;
            let b = Poly::monomial(int(-1), u - 1);
            let op = two(one.clone(), a2.clone(), b)?;
            let basis = solution_basis(&op)?;
            let blk = Block {
                op,
                laws: (0..basis.len()).map(|l| Law::Chebyshev { u, l }).collect(),
                streams: basis.into_iter().map(Arc::new).collect(),
            };
            (one.clone(), a2, vec![blk])
        }
        FamilySpec::Bessel { gamma } => {
            let blocks = gamma
                .iter()
                .enumerate()
                .map(|(j, g)| {
                    let op = two(z.clone(), z.clone(), Poly::from_coeffs(vec![int(-1), g.clone()]))?;
                    let law = Law::Bessel { gamma: g.clone() };
                    block(op, vec![(vec![law.value(0).unwrap()], law, format!("f_{}", j + 1))])
                })
                .collect::<Result<Vec<_>>>()?;
            (z.clone(), z.clone(), blocks)
        }
        FamilySpec::LaguerreGamma { gamma, delta } => {
            let blocks = gamma
                .iter()
                .enumerate()
                .map(|(j, g)| {
                    let op = two(
                        one.clone(),
                        z.clone(),
                        Poly::from_coeffs(vec![delta.clone(), -g.clone()]),
                    )?;
                    let law = Law::Laguerre {
                        gamma: g.clone(),
                        delta: delta.clone(),
                    };
                    block(op, vec![(vec![law.value(0).unwrap()], law, format!("f_{}", j + 1))])
                })
                .collect::<Result<Vec<_>>>()?;
            (one.clone(), z.clone(), blocks)
        }
        FamilySpec::LaguerreDelta { gamma, delta } => {
            let blocks = delta
                .iter()
                .enumerate()
                .map(|(j, dj)| {
                    let op = two(
                        z.clone(),
                        one.clone(),
                        Poly::from_coeffs(vec![dj.clone(), -gamma.clone()]),
                    )?;
                    let law = Law::Laguerre {
                        gamma: gamma.clone(),
                        delta: dj.clone(),
                    };
                    block(op, vec![(vec![law.value(0).unwrap()], law, format!("f_{}", j + 1))])
                })
                .collect::<Result<Vec<_>>>()?;
            (z.clone(), one.clone(), blocks)
        }
        FamilySpec::Hermite { gamma, delta } => {
            let blocks = delta
                .iter()
                .enumerate()
                .map(|(j, dj)| {
                    let op = two(
                        one.clone(),
                        one.clone(),
                        Poly::from_coeffs(vec![dj.clone(), gamma.clone()]),
                    )?;
                    block(op, vec![(vec![int(1)], Law::Recurrence, format!("f_{}", j + 1))])
                })
                .collect::<Result<Vec<_>>>()?;
            (one.clone(), one.clone(), blocks)
        }
        FamilySpec::Lerch { alpha, gamma } => {
            let a2 = Poly::from_roots(alpha);
            let m = alpha.len();
            let blocks = gamma
                .iter()
                .enumerate()
                .map(|(j, g)| {
                    let op = two(z.clone(), a2.clone(), a2.scale(g))?;
                    let seeds = alpha
                        .iter()
                        .enumerate()
                        .map(|(i, al)| {
                            let law = Law::Lerch {
                                alpha: al.clone(),
                                gamma: g.clone(),
                            };
                            let s = (0..m).map(|k| law.value(k).unwrap()).collect();
                            (s, law, format!("f_{},{}", i + 1, j + 1))
                        })
                        .collect();
                    block(op, seeds)
                })
                .collect::<Result<Vec<_>>>()?;
            (z.clone(), a2, blocks)
        }
        FamilySpec::Custom { a, b } => {
            let op = FirstOrderData::simple(a.clone(), b.clone())?;
            if op.w() < 0 {
                return Err(Error::NegativeW);
            }
            let blk = match solution_basis(&op) {
                Ok(basis) => Block {
                    laws: vec![Law::Recurrence; basis.len()],
                    streams: basis.into_iter().map(Arc::new).collect(),
                    op,
                },
                // Keep the operator so degenerate Rodrigues images can still
                // be reported; the series are unavailable.
                Err(Error::AssumptionViolated { .. }) => Block {
                    op,
                    streams: Vec::new(),
                    laws: Vec::new(),
                },
                Err(e) => return Err(e),
            };
            (Poly::one(), a.clone(), vec![blk])
        }
    };
    Ok(FamilyData {
        spec: spec.clone(),
        a1,
        a2,
        blocks,
    })
}

/// Re-checks the solution-basis assumption for every operator of a family.
pub fn check_family_assumptions(data: &FamilyData) -> Result<()> {
    for b in &data.blocks {
        check_assumption(&b.op)?;
    }
    Ok(())
}

/// `sum_{k < terms} (a)_k (b)_k / ((c)_k k!) x^k`.
pub fn gauss_2f1_partial(a: &Rational, b: &Rational, c: &Rational, x: &Rational, terms: usize) -> Result<Rational> {
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for k in 0..terms {
        sum += &term;
        let ck = c + int(k as i64);
        if ck.is_zero() {
            if k + 1 < terms {
                return Err(Error::DivisionByZero("2F1 lower parameter"));
            }
            break;
        }
        term = term * (a + int(k as i64)) * (b + int(k as i64)) / (ck * int(k as i64 + 1)) * x;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Order};

    fn cfg(family: &str) -> FamilyConfig {
        FamilyConfig {
            family: family.into(),
            ..FamilyConfig::default()
        }
    }

    #[test]
    fn laws_match_recurrence() {
        let specs = vec![
            FamilySpec::Chebyshev { u: 3 },
            FamilySpec::Bessel {
                gamma: vec![rat(0, 1), rat(1, 2)],
            },
            FamilySpec::LaguerreGamma {
                gamma: vec![int(1), int(3)],
                delta: rat(1, 3),
            },
            FamilySpec::LaguerreDelta {
                gamma: int(2),
                delta: vec![rat(1, 3), rat(1, 2)],
            },
            FamilySpec::Lerch {
                alpha: vec![int(1), int(-2)],
                gamma: vec![int(0), rat(1, 2)],
            },
        ];
        for s in specs {
            let data = family_streams(&s).unwrap();
            for b in &data.blocks {
                for (st, law) in b.streams.iter().zip(&b.laws) {
                    for k in 0..30 {
                        assert_eq!(Some(st.get(k)), law.value(k), "{s:?} k={k}");
                    }
                    let df = st.apply_operator(25).unwrap();
                    assert!(matches!(df.tail.ord_inf(), Order::AtLeast(_)), "{s:?}");
                }
            }
        }
    }

    #[test]
    fn named_values() {
        let data = family_streams(&FamilySpec::Bessel { gamma: vec![int(0)] }).unwrap();
        assert_eq!(data.blocks[0].streams[0].get(3), rat(1, 24));
        let data = family_streams(&FamilySpec::Lerch {
            alpha: vec![int(1)],
            gamma: vec![int(0)],
        })
        .unwrap();
        for k in 0..6 {
            assert_eq!(data.blocks[0].streams[0].get(k), rat(1, k as i64 + 1));
        }
        let data = family_streams(&FamilySpec::Chebyshev { u: 2 }).unwrap();
        assert_eq!(data.big_w(), 1);
        assert_eq!(data.blocks[0].streams[0].get(2), rat(1, 2));
    }

    #[test]
    fn validation() {
        let mut c = cfg("hermite");
        c.gamma = vec!["1".into()];
        c.delta = vec!["0".into(), "0".into()];
        assert!(matches!(FamilySpec::from_config(&c), Err(Error::InvalidFamily(_))));
        let mut c = cfg("bessel");
        c.gamma = vec!["0".into(), "1".into()];
        assert!(FamilySpec::from_config(&c).is_err());
        c.gamma = vec!["-3".into()];
        assert!(FamilySpec::from_config(&c).is_err());
        let mut c = cfg("chebyshev");
        c.u = Some(1);
        assert!(FamilySpec::from_config(&c).is_err());
        c.u = Some(4);
        let s = FamilySpec::from_config(&c).unwrap();
        assert_eq!(FamilySpec::from_config(&s.to_config()).unwrap(), s);
    }

    #[test]
    fn gauss_partial_sums() {
        assert_eq!(
            gauss_2f1_partial(&int(1), &int(2), &int(3), &int(0), 5).unwrap(),
            int(1)
        );
        let s = gauss_2f1_partial(&int(1), &int(1), &int(2), &rat(1, 2), 4).unwrap();
        assert_eq!(s * rat(1, 2), rat(131, 192));
        // z^-(l+1) 2F1((1+l)/u, 1, (u+l)/u | z^-u) against the u = 3 stream
        let data = family_streams(&FamilySpec::Chebyshev { u: 3 }).unwrap();
        let f1 = &data.blocks[0].streams[1];
        let (a, c) = (rat(2, 3), rat(4, 3));
        for terms in 1..=6 {
            let part = gauss_2f1_partial(&a, &int(1), &c, &int(1), terms).unwrap();
            let prev = gauss_2f1_partial(&a, &int(1), &c, &int(1), terms - 1).unwrap_or_default();
            assert_eq!(part - prev, f1.get(3 * (terms - 1) + 1));
        }
    }
}
