//! Padé-type approximants from products of weighted Rodrigues operators.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::phi::PhiMap;
use super::system::PadeSystem;
use crate::error::{Error, Result};
use crate::exact::{factorial_q, int, Poly, RatFunc, Rational};
use crate::holonomic::{check_assumption, FamilyData, HolonomicStream};
use crate::weyl::{commutes_directly, FirstOrderData, Var};

/// One factor `R_{D_j, n_j, r_j}` together with the series it targets.
#[derive(Clone, Debug)]
pub struct RodriguesBlock {
    pub op: FirstOrderData,
    pub r: Vec<usize>,
    pub n: usize,
    pub streams: Vec<Arc<HolonomicStream>>,
}

/// Blocks whose operator-level hypotheses (`w_j >= 0`, pairwise
/// commutation) have been checked, ready to be applied to several `F`.
#[derive(Clone, Debug)]
pub struct RodriguesPlan {
    blocks: Vec<RodriguesBlock>,
}

impl RodriguesPlan {
    pub fn new(blocks: Vec<RodriguesBlock>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Hypothesis("at least one operator is required".into()));
        }
        for b in &blocks {
            if b.op.w() < 0 {
                return Err(Error::NegativeW);
            }
            if b.r.len() != b.op.a_factors().len() {
                return Err(Error::Hypothesis(
                    "weight vector length differs from the factorization".into(),
                ));
            }
        }
        let ops = blocks
            .iter()
            .map(|b| b.op.rodrigues_op(b.n, &b.r, Var::Z))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                if !commutes_directly(&ops[i], &ops[j])? {
                    return Err(Error::NotCommuting(i, j));
                }
            }
        }
        Ok(RodriguesPlan { blocks })
    }

    pub fn blocks(&self) -> &[RodriguesBlock] {
        &self.blocks
    }

    /// `prod_v a_v^(sum_j r_{j,v})`, using the factorization of the first block.
    pub fn ideal_generator(&self) -> Poly {
        let factors = self.blocks[0].op.a_factors();
        (0..factors.len()).fold(Poly::one(), |acc, v| {
            let s: usize = self.blocks.iter().map(|b| b.r.get(v).copied().unwrap_or(0)).sum();
            &acc * &factors[v].pow(s)
        })
    }

    /// `deg F + sum_j (n_j (w_j + 1) - sum_v r_{j,v} deg a_v)`.
    pub fn degree_bound(&self, f: &Poly) -> Result<usize> {
        let mut m = f.degree_or_neg();
        for b in &self.blocks {
            m += b.n as i64 * (b.op.w() + 1);
            for (av, &rv) in b.op.a_factors().iter().zip(&b.r) {
                m -= rv as i64 * av.degree_or_neg();
            }
        }
        usize::try_from(m).map_err(|_| Error::Internal(format!("negative degree bound {m}")))
    }

    /// `P = prod_j R_{j, n_j} F`.
    pub fn polynomial(&self, f: &Poly) -> Result<Poly> {
        if f.is_zero() {
            return Err(Error::Hypothesis("F must be nonzero".into()));
        }
        if !self.ideal_generator().divides(f) {
            return Err(Error::IdealMembership);
        }
        let mut g = RatFunc::from_poly(f.clone());
        for b in self.blocks.iter().rev() {
            g = b.op.rodrigues_apply(b.n, &b.r, &g)?;
        }
        g.as_poly()
            .cloned()
            .ok_or_else(|| Error::Internal(format!("Rodrigues image {} is not a polynomial", g.display_in("z"))))
    }

    /// Builds and verifies the system for `F`. The zero image is reported
    /// before the series hypotheses are examined.
    pub fn construct(&self, f: &Poly) -> Result<PadeSystem> {
        self.construct_with_slack(f, 5)
    }

    /// [`construct`](Self::construct) with a chosen initial tail slack.
    pub fn construct_with_slack(&self, f: &Poly, slack: usize) -> Result<PadeSystem> {
        let p = self.polynomial(f)?;
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut streams = Vec::new();
        let mut weights = Vec::new();
        for b in &self.blocks {
            check_assumption(&b.op)?;
            if b.streams.is_empty() {
                return Err(Error::Hypothesis("operator has no solution series attached".into()));
            }
            for s in &b.streams {
                streams.push(s.clone());
                weights.push(b.n);
            }
        }
        let m = self.degree_bound(f)?;
        PadeSystem::assemble_with_slack(p, &streams, weights, m, slack)
    }
}

/// Checks every hypothesis and builds the system for `F`.
pub fn rodrigues_construct(blocks: Vec<RodriguesBlock>, f: &Poly) -> Result<PadeSystem> {
    RodriguesPlan::new(blocks)?.construct(f)
}

/// The plan for a family at order `n` (weights `r_j = (0, n)`).
pub fn family_plan(data: &FamilyData, n: usize) -> Result<RodriguesPlan> {
    let blocks = data
        .blocks
        .iter()
        .map(|b| RodriguesBlock {
            op: b.op.clone(),
            r: data.weights(n),
            n,
            streams: b.streams.clone(),
        })
        .collect();
    RodriguesPlan::new(blocks)
}

/// Both sides of the leading-coefficient identity
/// `phi_{j,u}(t^n P_h) = ((-1)^n / (n!)^(d-1)) prod_{j' != j} prod_{k=1..n}
/// (gamma_{j',j} - k eps) phi_{j,u}(t^h a_1^n a_2^(dn))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientCheck {
    pub direct: Rational,
    pub closed: Rational,
}

impl CoefficientCheck {
    pub fn agree(&self) -> bool {
        self.direct == self.closed
    }
}

/// Standing hypotheses of the determinant setup: `a_1` monic of degree at most
/// 1 and every `gamma_{j1,j2}` a nonzero constant.
pub fn check_two_factor_layout(data: &FamilyData) -> Result<()> {
    if data.is_custom() {
        return Err(Error::Hypothesis(
            "the identity needs the two-factor layout a = a_1 a_2".into(),
        ));
    }
    match data.a1.degree() {
        Some(0) | Some(1) if data.a1.leading().is_one() => {}
        _ => return Err(Error::Hypothesis("a_1 must be monic of degree at most 1".into())),
    }
    for j1 in 0..data.d() {
        for j2 in 0..data.d() {
            if j1 != j2 {
                match data.gamma_pair(j1, j2) {
                    Some(g) if !g.is_zero() => {}
                    _ => {
                        return Err(Error::Hypothesis(format!(
                            "(b_{} - b_{}) / a_2 is not a nonzero constant",
                            j1 + 1,
                            j2 + 1
                        )))
                    }
                }
            }
        }
    }
    Ok(())
}

/// The closed side of [`CoefficientCheck`] alone.
pub fn coefficient_closed_form(data: &FamilyData, n: usize, h: usize, j: usize, u: usize) -> Result<Rational> {
    check_two_factor_layout(data)?;
    let d = data.d();
    let eps = int(data.eps_a1() as i64);
    let mut c = factorial_q(n).pow(-(d as i32 - 1));
    if n % 2 == 1 {
        c = -c;
    }
    for jp in (0..d).filter(|&jp| jp != j) {
        let g = data.gamma_pair(jp, j).expect("checked");
        for k in 1..=n {
            c *= &g - int(k as i64) * &eps;
        }
    }
    let phi = PhiMap::new(stream_at(data, j, u)?);
    let base = &(&Poly::monomial(int(1), h) * &data.a1.pow(n)) * &data.a2.pow(d * n);
    Ok(c * phi.apply(&base))
}

fn stream_at(data: &FamilyData, j: usize, u: usize) -> Result<Arc<HolonomicStream>> {
    data.blocks
        .get(j)
        .and_then(|b| b.streams.get(u))
        .cloned()
        .ok_or_else(|| Error::Hypothesis(format!("no series f_{{{},{}}}", j + 1, u)))
}

/// Evaluates both sides with `P_h` supplied by the caller.
pub fn coefficient_check_with(
    data: &FamilyData,
    p_h: &Poly,
    n: usize,
    h: usize,
    j: usize,
    u: usize,
) -> Result<CoefficientCheck> {
    let closed = coefficient_closed_form(data, n, h, j, u)?;
    let direct = PhiMap::new(stream_at(data, j, u)?).apply_shifted(p_h, n);
    Ok(CoefficientCheck { direct, closed })
}

/// Builds `P_h = prod_j R_{j,n} z^h a_2^(dn)` and evaluates both sides.
pub fn top_coefficient_check(data: &FamilyData, n: usize, h: usize, j: usize, u: usize) -> Result<CoefficientCheck> {
    check_two_factor_layout(data)?;
    let p = family_plan(data, n)?.polynomial(&data.f_poly(n, h))?;
    coefficient_check_with(data, &p, n, h, j, u)
}
