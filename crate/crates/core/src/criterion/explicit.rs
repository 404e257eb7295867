//! Closed formulas for `P_{uN,h}`, `Q_{uN,l,h}` and the remainder
//! `R_{uN,l,h}` of the Chebyshev-type family `a = z^u - 1`, `b = -z^(u-1)`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{gen_binomial, int, pochhammer, LaurentTail, Poly, Rational};
use crate::holonomic::{family_streams, FamilyData, FamilySpec};
use crate::pade::{family_plan, q_and_remainder, PhiMap};

fn check(u: usize, n_big: usize, l: usize, h: usize) -> Result<()> {
    if u < 2 || n_big < 1 || l + 2 > u || h >= u {
        return Err(Error::Hypothesis(format!(
            "need u >= 2, N >= 1, 0 <= l <= u-2, 0 <= h <= u-1 (got u={u}, N={n_big}, l={l}, h={h})"
        )));
    }
    Ok(())
}

fn neg_pow(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `sum_{s<=k} C(uN - 1/u, s+N) C(u(s+N)+h, uN) C(1/u, k-s)`.
fn bracket(u: usize, n_big: usize, h: usize, k: usize) -> Rational {
    let uq = int(u as i64);
    let top = int((u * n_big) as i64) - uq.recip();
    let inv = uq.recip();
    (0..=k).fold(Rational::zero(), |acc, s| {
        acc + gen_binomial(&top, s + n_big)
            * gen_binomial(&int((u * (s + n_big) + h) as i64), u * n_big)
            * gen_binomial(&inv, k - s)
    })
}

/// Which overall sign to use for `P` and `Q`.
///
/// The displayed expansion carries `(-1)^(uN)`; expanding the Rodrigues
/// formula gives `(-1)^(uN + N)`, because the reindexing `k -> k + N` of
/// `C(uN - 1/u, k) (-1)^k` leaves a factor `(-1)^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    Displayed,
    Corrected,
}

/// Coefficients `p_{uk+h}` of `P_{uN,h}`, indexed by `k`.
fn p_blocks(u: usize, n_big: usize, h: usize, conv: SignConvention) -> Vec<Rational> {
    let sign = match conv {
        SignConvention::Displayed => neg_pow(u * n_big),
        SignConvention::Corrected => neg_pow(u * n_big + n_big),
    };
    (0..=n_big * (u - 1))
        .map(|k| &sign * neg_pow(k) * bracket(u, n_big, h, k))
        .collect()
}

fn ratio(u: usize, l: usize, k: usize) -> Rational {
    let uq = int(u as i64);
    pochhammer(&(int(1 + l as i64) / &uq), k) / pochhammer(&(int((u + l) as i64) / &uq), k)
}

/// `P_{uN,h}(z)` from its binomial expansion.
pub fn explicit_p(u: usize, n_big: usize, h: usize) -> Result<Poly> {
    explicit_p_with(u, n_big, h, SignConvention::Corrected)
}

pub fn explicit_p_with(u: usize, n_big: usize, h: usize, conv: SignConvention) -> Result<Poly> {
    check(u, n_big, 0, h)?;
    let blocks = p_blocks(u, n_big, h, conv);
    let mut c = vec![Rational::zero(); u * (u - 1) * n_big + h + 1];
    for (k, v) in blocks.into_iter().enumerate() {
        c[u * k + h] = v;
    }
    Ok(Poly::from_coeffs(c))
}

/// `Q_{uN,l,h}(z)` from the expansion of the divided difference.
pub fn explicit_q(u: usize, n_big: usize, l: usize, h: usize) -> Result<Poly> {
    explicit_q_with(u, n_big, l, h, SignConvention::Corrected)
}

pub fn explicit_q_with(u: usize, n_big: usize, l: usize, h: usize, conv: SignConvention) -> Result<Poly> {
    check(u, n_big, l, h)?;
    let p = p_blocks(u, n_big, h, conv);
    let top = (u - 1) * n_big;
    let start = usize::from(h < l + 1);
    let mut c = Vec::new();
    for v in start..=top {
        let s = (0..=top - v).fold(Rational::zero(), |acc, k| acc + &p[k + v] * ratio(u, l, k));
        let e = u * v + h - l - 1;
        if c.len() <= e {
            c.resize(e + 1, Rational::zero());
        }
        c[e] = s;
    }
    Ok(Poly::from_coeffs(c))
}

/// `((u-1)/u)_{uN} / ((u+l)/u)_{uN}`.
pub fn remainder_prefactor(u: usize, n_big: usize, l: usize) -> Rational {
    let uq = int(u as i64);
    pochhammer(&(int(u as i64 - 1) / &uq), u * n_big) / pochhammer(&(int((u + l) as i64) / &uq), u * n_big)
}

/// `eps_{l,h}`: 1 when `l < h`.
pub fn remainder_start(l: usize, h: usize) -> usize {
    usize::from(l < h)
}

/// The `k`-th summand `C(u(N+k)+l-h, uN) ((1+l)/u)_k / ((u+l)/u + uN)_k`
/// (without the prefactor and the power of `z`).
pub fn remainder_term(u: usize, n_big: usize, l: usize, h: usize, k: usize) -> Rational {
    let uq = int(u as i64);
    let top = (u * (n_big + k) + l) as i64 - h as i64;
    let b = gen_binomial(&int(top), u * n_big);
    let num = pochhammer(&(int(1 + l as i64) / &uq), k);
    let den = pochhammer(&(int((u + l) as i64) / &uq + int((u * n_big) as i64)), k);
    b * num / den
}

/// `R_{uN,l,h}` as a tail: entry `m` is the coefficient of `1/z^(m+1)`.
pub fn explicit_r(u: usize, n_big: usize, l: usize, h: usize, precision: usize) -> Result<LaurentTail> {
    check(u, n_big, l, h)?;
    let pre = remainder_prefactor(u, n_big, l);
    let mut c = vec![Rational::zero(); precision];
    let mut k = remainder_start(l, h);
    loop {
        let m = u * (n_big + k) + l - h;
        if m >= precision {
            break;
        }
        c[m] = &pre * remainder_term(u, n_big, l, h, k);
        k += 1;
    }
    Ok(LaurentTail::new(c))
}

/// Closed-form triple for one `(l, h)`.
pub fn explicit_pqr(u: usize, n_big: usize, l: usize, h: usize, precision: usize) -> Result<(Poly, Poly, LaurentTail)> {
    Ok((
        explicit_p(u, n_big, h)?,
        explicit_q(u, n_big, l, h)?,
        explicit_r(u, n_big, l, h, precision)?,
    ))
}

/// Agreement of the closed formulas with the generic construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqrAgreement {
    pub u: usize,
    pub n_big: usize,
    pub l: usize,
    pub h: usize,
    pub p_equal: bool,
    pub q_equal: bool,
    /// `P` and `Q` also agree under the displayed sign `(-1)^(uN)`.
    pub displayed_sign_equal: bool,
    pub r_equal: bool,
    /// Number of nonzero remainder coefficients compared.
    pub r_terms: usize,
}

impl PqrAgreement {
    pub fn all(&self) -> bool {
        self.p_equal && self.q_equal && self.r_equal
    }

    pub fn to_json(&self) -> Value {
        json!({
            "u": self.u, "N": self.n_big, "l": self.l, "h": self.h,
            "P": self.p_equal, "Q": self.q_equal, "displayed_sign_equal": self.displayed_sign_equal, "R": self.r_equal, "R_terms": self.r_terms,
        })
    }
}

/// Pipeline `P_{uN,h}` for the Chebyshev family.
pub fn pipeline_p(data: &FamilyData, n: usize, h: usize) -> Result<Poly> {
    family_plan(data, n)?.polynomial(&data.f_poly(n, h))
}

/// Compares every `(l, h)` for one `(u, N)`; the remainders are compared on
/// the first `r_terms` nonzero coefficients.
pub fn compare_with_pipeline(u: usize, n_big: usize, r_terms: usize) -> Result<Vec<PqrAgreement>> {
    check(u, n_big, 0, 0)?;
    let data = family_streams(&FamilySpec::Chebyshev { u })?;
    let n = u * n_big;
    let mut out = Vec::new();
    for h in 0..u {
        let p_pipe = pipeline_p(&data, n, h)?;
        let p_closed = explicit_p(u, n_big, h)?;
        for l in 0..u - 1 {
            let phi = PhiMap::new(data.blocks[0].streams[l].clone());
            // nonzero entries sit at u(N+k)+l-h; leave room for r_terms of them
            let precision = u * (n_big + r_terms + 1) + l + 1;
            let (q_pipe, r_pipe) = q_and_remainder(&phi, &p_pipe, precision)?;
            let r_closed = explicit_r(u, n_big, l, h, precision)?;
            let displayed_sign_equal = p_pipe == explicit_p_with(u, n_big, h, SignConvention::Displayed)?
                && q_pipe == explicit_q_with(u, n_big, l, h, SignConvention::Displayed)?;
            let nonzero = r_closed.coeffs().iter().filter(|c| !c.is_zero()).count();
            out.push(PqrAgreement {
                u,
                n_big,
                l,
                h,
                p_equal: p_pipe == p_closed,
                q_equal: q_pipe == explicit_q(u, n_big, l, h)?,
                displayed_sign_equal,
                r_equal: r_pipe == r_closed,
                r_terms: nonzero,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_matches_pipeline_u2() {
        let data = family_streams(&FamilySpec::Chebyshev { u: 2 }).unwrap();
        let direct = Poly::from_coeffs(vec![Rational::new((-3).into(), 2.into()), int(0), int(3)]);
        assert_eq!(pipeline_p(&data, 2, 0).unwrap(), direct);
        assert_eq!(explicit_p(2, 1, 0).unwrap(), direct);
        assert_eq!(
            explicit_p_with(2, 1, 0, SignConvention::Displayed).unwrap(),
            direct.scale(&int(-1))
        );
        assert_eq!(explicit_p(2, 2, 1).unwrap(), pipeline_p(&data, 4, 1).unwrap());
    }

    #[test]
    fn all_pairs_u3() {
        for a in compare_with_pipeline(3, 1, 10).unwrap() {
            assert!(a.all(), "{a:?}");
            assert!(!a.displayed_sign_equal);
            assert!(a.r_terms >= 10);
        }
    }

    #[test]
    fn remainder_leading_term() {
        let (u, n_big) = (3, 1);
        for l in 0..u - 1 {
            for h in 0..u {
                let r = explicit_r(u, n_big, l, h, 20).unwrap();
                let e = remainder_start(l, h);
                let m = u * (n_big + e) + l - h;
                assert!(r.coeffs()[..m].iter().all(Zero::is_zero));
                assert_eq!(
                    r.coeffs()[m],
                    remainder_prefactor(u, n_big, l) * remainder_term(u, n_big, l, h, e)
                );
            }
        }
    }

    #[test]
    fn bad_indices() {
        assert!(explicit_q(2, 1, 1, 0).is_err());
        assert!(explicit_p(3, 0, 0).is_err());
    }
}
