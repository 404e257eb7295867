//! The matrices `Delta_n(z)` and `Theta_n` built from the systems
//! `P_h = prod_j R_{j,n} [z^h a_2^(dn)]`, `h = 0..W`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::closed::{
    corrected_identity_unit, delta_closed_corrected, delta_closed_examples, theta_closed_corrected,
    theta_closed_examples, Correction, Diagnosis,
};
use crate::error::{Error, Result};
use crate::exact::{det_bareiss, det_exact, factorial_q, format_rational, int, LaurentTail, Poly, Rational};
use crate::holonomic::{family_streams, FamilyData, FamilySpec};
use crate::pade::{check_two_factor_layout, family_plan, PadeSystem, PhiMap};

/// A family at a fixed order `n` together with its derived constants.
#[derive(Clone, Debug)]
pub struct DetSetup {
    pub data: FamilyData,
    pub n: usize,
}

impl DetSetup {
    pub fn new(spec: &FamilySpec, n: usize) -> Result<Self> {
        let data = family_streams(spec)?;
        check_two_factor_layout(&data)?;
        Ok(DetSetup { data, n })
    }

    pub fn d(&self) -> usize {
        self.data.d()
    }

    pub fn big_w(&self) -> usize {
        self.data.big_w()
    }

    /// `P_h` and its approximations for `h = 0..W`.
    pub fn systems(&self) -> Result<Vec<PadeSystem>> {
        let plan = family_plan(&self.data, self.n)?;
        (0..=self.big_w())
            .map(|h| plan.construct(&self.data.f_poly(self.n, h)))
            .collect()
    }

    /// `prod_j [prod_{j' != j} prod_{k=1..n} (gamma_{j',j} - k eps)]^(w_j + 1)`.
    pub fn gamma_factor(&self) -> Rational {
        let eps = int(self.data.eps_a1() as i64);
        let mut v = Rational::one();
        for (j, b) in self.data.blocks.iter().enumerate() {
            let mut inner = Rational::one();
            for jp in (0..self.d()).filter(|&jp| jp != j) {
                let g = self.data.gamma_pair(jp, j).expect("checked at construction");
                for k in 1..=self.n {
                    inner *= &g - int(k as i64) * &eps;
                }
            }
            v *= inner.pow(b.w() as i32 + 1);
        }
        v
    }

    /// The `W x W` matrix `phi_{j,u}(t^k a_1^n a_2^(dn))`.
    pub fn theta_matrix(&self) -> Vec<Vec<Rational>> {
        let (n, d, w) = (self.n, self.d(), self.big_w());
        let base = &self.data.a1.pow(n) * &self.data.a2.pow(d * n);
        self.data
            .all_streams()
            .into_iter()
            .map(|s| {
                let phi = PhiMap::new(s);
                (0..w).map(|k| phi.apply_shifted(&base, k)).collect()
            })
            .collect()
    }
}

/// Everything computed by [`build_delta`].
#[derive(Clone, Debug)]
pub struct DetReport {
    pub family: FamilySpec,
    pub n: usize,
    pub d: usize,
    pub big_w: usize,
    pub delta: Rational,
    pub delta_degree: Option<usize>,
    pub theta: Rational,
    pub p_w: Rational,
    pub gamma_factor: Rational,
    /// Right-hand side of the general determinant identity.
    pub formula: Rational,
    pub formula_diagnosis: Diagnosis,
    pub closed_form: Option<Rational>,
    pub closed_diagnosis: Option<Diagnosis>,
    pub theta_closed: Option<Rational>,
    pub theta_diagnosis: Option<Diagnosis>,
    /// The identity with the unit `((-1)^n / (n!)^(d-1))^W`.
    pub formula_corrected: Rational,
    pub formula_corrected_diagnosis: Diagnosis,
    pub closed_corrected: Option<(Rational, Vec<Correction>)>,
    pub closed_corrected_diagnosis: Option<Diagnosis>,
    pub theta_corrected: Option<(Rational, Vec<Correction>)>,
    pub theta_corrected_diagnosis: Option<Diagnosis>,
    pub matrix: Vec<Vec<Poly>>,
}

impl DetReport {
    /// Exact agreement with the general identity.
    pub fn formula_match(&self) -> bool {
        self.formula_diagnosis.is_equal()
    }

    /// Exact agreement with the family's closed form, if it has one.
    pub fn closed_match(&self) -> Option<bool> {
        self.closed_diagnosis.as_ref().map(Diagnosis::is_equal)
    }

    /// Every comparison either holds as displayed or holds once the listed
    /// corrections are applied.
    pub fn explained(&self) -> bool {
        let ok = |shown: Option<&Diagnosis>, fixed: Option<&Diagnosis>| {
            shown.is_none_or(Diagnosis::is_equal) || fixed.is_some_and(Diagnosis::is_equal)
        };
        self.delta_degree.unwrap_or(0) == 0
            && ok(Some(&self.formula_diagnosis), Some(&self.formula_corrected_diagnosis))
            && ok(self.closed_diagnosis.as_ref(), self.closed_corrected_diagnosis.as_ref())
            && ok(self.theta_diagnosis.as_ref(), self.theta_corrected_diagnosis.as_ref())
    }

    /// Corrections that were actually needed for some comparison.
    pub fn corrections_used(&self) -> Vec<Correction> {
        let mut used = Vec::new();
        if !self.formula_match() {
            used.push(Correction::IdentityUnit);
        }
        if self.closed_match() == Some(false) {
            if let Some((_, c)) = &self.closed_corrected {
                used.extend(c.iter().copied());
            }
        }
        if self.theta_diagnosis.as_ref().is_some_and(|d| !d.is_equal()) {
            if let Some((_, c)) = &self.theta_corrected {
                used.extend(c.iter().copied());
            }
        }
        used.sort_by_key(|c| *c as u8);
        used.dedup();
        used
    }

    pub fn to_json(&self, dump_matrix: bool) -> Value {
        let diag = |d: &Diagnosis| match d {
            Diagnosis::Equal => json!({ "equal": true }),
            Diagnosis::Ratio { ratio, negative } => {
                json!({ "equal": false, "ratio": format_rational(ratio), "negative": negative })
            }
            Diagnosis::ZeroMismatch => json!({ "equal": false, "zero_mismatch": true }),
        };
        let mut v = json!({
            "family": self.family.to_config(),
            "n": self.n,
            "d": self.d,
            "W": self.big_w,
            "delta": format_rational(&self.delta),
            "delta_degree": self.delta_degree,
            "theta": format_rational(&self.theta),
            "p_W": format_rational(&self.p_w),
            "gamma_factor": format_rational(&self.gamma_factor),
            "formula": format_rational(&self.formula),
            "formula_check": diag(&self.formula_diagnosis),
            "closed_form": self.closed_form.as_ref().map(format_rational),
            "closed_check": self.closed_diagnosis.as_ref().map(diag),
            "theta_closed": self.theta_closed.as_ref().map(format_rational),
            "theta_check": self.theta_diagnosis.as_ref().map(diag),
            "formula_corrected": format_rational(&self.formula_corrected),
            "formula_corrected_check": diag(&self.formula_corrected_diagnosis),
            "closed_corrected": self.closed_corrected.as_ref().map(|(v, _)| format_rational(v)),
            "closed_corrected_check": self.closed_corrected_diagnosis.as_ref().map(diag),
            "theta_corrected_check": self.theta_corrected_diagnosis.as_ref().map(diag),
            "corrections_used": self.corrections_used().iter().map(|c| c.describe()).collect::<Vec<_>>(),
            "explained": self.explained(),
        });
        if dump_matrix {
            v["matrix"] = json!(self
                .matrix
                .iter()
                .map(|row| row.iter().map(Poly::to_strings).collect::<Vec<_>>())
                .collect::<Vec<_>>());
        }
        v
    }
}

/// Assembles `Delta_n(z)` over `Q[z]`, checks that it is constant and
/// compares it with the general identity and the family's closed forms.
pub fn build_delta(setup: &DetSetup) -> Result<DetReport> {
    let systems = setup.systems()?;
    let w = setup.big_w();
    let (n, d) = (setup.n, setup.d());
    let mut matrix: Vec<Vec<Poly>> = vec![systems.iter().map(|s| s.p.clone()).collect()];
    for r in 0..w {
        matrix.push(systems.iter().map(|s| s.qs[r].clone()).collect());
    }
    let delta_poly = det_bareiss(&matrix);
    let delta_degree = delta_poly.degree();
    if delta_degree.is_some_and(|k| k > 0) {
        return Err(Error::Internal(format!("Delta(z) = {delta_poly} is not constant")));
    }
    let delta = delta_poly.coeff(0);
    let theta = det_exact(&setup.theta_matrix());
    let p_w = systems[w].p.coeff((n + 1) * w);
    let gamma_factor = setup.gamma_factor();
    let unit = -(factorial_q(n).pow(d as i32 - 1)).recip();
    let formula = unit.pow(w as i32) * &p_w * &gamma_factor * &theta;
    let formula_diagnosis = Diagnosis::of(&delta, &formula);
    let closed_form = delta_closed_examples(&setup.data.spec, n)?;
    let closed_diagnosis = closed_form.as_ref().map(|c| Diagnosis::of(&delta, c));
    let theta_closed = theta_closed_examples(&setup.data.spec, n)?;
    let theta_diagnosis = theta_closed.as_ref().map(|c| Diagnosis::of(&theta, c));
    let formula_corrected = corrected_identity_unit(n, d, w) * &p_w * &gamma_factor * &theta;
    let formula_corrected_diagnosis = Diagnosis::of(&delta, &formula_corrected);
    let closed_corrected = delta_closed_corrected(&setup.data.spec, n)?;
    let closed_corrected_diagnosis = closed_corrected.as_ref().map(|(c, _)| Diagnosis::of(&delta, c));
    let theta_corrected = theta_closed_corrected(&setup.data.spec, n)?;
    let theta_corrected_diagnosis = theta_corrected.as_ref().map(|(c, _)| Diagnosis::of(&theta, c));
    Ok(DetReport {
        family: setup.data.spec.clone(),
        n,
        d,
        big_w: w,
        delta,
        delta_degree,
        theta,
        p_w,
        gamma_factor,
        formula,
        formula_diagnosis,
        closed_form,
        closed_diagnosis,
        theta_closed,
        theta_diagnosis,
        formula_corrected,
        formula_corrected_diagnosis,
        closed_corrected,
        closed_corrected_diagnosis,
        theta_corrected,
        theta_corrected_diagnosis,
        matrix,
    })
}

/// `Theta_n` computed directly against its reduced product formula.
pub fn theta_vandermonde_check(spec: &FamilySpec, n: usize) -> Result<(Rational, Option<Rational>)> {
    let setup = DetSetup::new(spec, n)?;
    Ok((det_exact(&setup.theta_matrix()), theta_closed_examples(spec, n)?))
}

fn series_det(m: &[Vec<LaurentTail>]) -> LaurentTail {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc: Option<LaurentTail> = None;
    for c in 0..m.len() {
        let minor: Vec<Vec<LaurentTail>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = m[0][c].mul_tail(&series_det(&minor));
        let term = if c % 2 == 1 { -&term } else { term };
        acc = Some(match acc {
            None => term,
            Some(a) => &a + &term,
        });
    }
    acc.expect("nonempty")
}

/// `Delta` recomputed after subtracting `f_{j,u}` times the first row from
/// each other row: the constant term of
/// `(-1)^W sum_l (-1)^l P_l det(remainder minor without column l)`.
pub fn delta_by_remainders(setup: &DetSetup) -> Result<Rational> {
    let systems = setup.systems()?;
    let w = setup.big_w();
    let top = systems[w].p.degree().unwrap_or(0);
    let precision = (setup.n + 1) * w + top + 2;
    let streams = setup.data.all_streams();
    let rows: Vec<Vec<LaurentTail>> = streams
        .iter()
        .map(|s| {
            let phi = PhiMap::new(s.clone());
            systems
                .iter()
                .map(|sys| LaurentTail::new((0..precision).map(|k| phi.apply_shifted(&sys.p, k)).collect()))
                .collect()
        })
        .collect();
    let mut total = Rational::zero();
    for (l, sys) in systems.iter().enumerate() {
        let minor: Vec<Vec<LaurentTail>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != l)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let prod = series_det(&minor).mul_poly(&sys.p)?;
        let c = prod.poly.coeff(0);
        if l % 2 == 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    Ok(if w.is_multiple_of(2) { total } else { -total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn hermite() -> FamilySpec {
        FamilySpec::Hermite {
            gamma: int(1),
            delta: vec![int(0), int(1)],
        }
    }

    #[test]
    fn hermite_two_by_one() {
        let r = build_delta(&DetSetup::new(&hermite(), 1).unwrap()).unwrap();
        assert!(r.delta_degree.unwrap_or(0) == 0);
        assert!(!r.delta.is_zero());
        assert!(r.formula_match(), "{:?} vs {:?}", r.delta, r.formula);
        assert_eq!(r.closed_match(), Some(true), "{:?}", r.closed_diagnosis);
    }

    #[test]
    fn chebyshev_single() {
        let spec = FamilySpec::Chebyshev { u: 2 };
        let r = build_delta(&DetSetup::new(&spec, 1).unwrap()).unwrap();
        assert!(r.formula_match());
        assert_eq!(r.p_w, int(2));
        assert_eq!(r.theta_diagnosis, Some(Diagnosis::Equal));
        // d = 1: Delta = (-1)^W p_W Theta
        assert_eq!(r.delta, -(&r.p_w * &r.theta));
    }

    #[test]
    fn p_w_by_derivatives() {
        let setup = DetSetup::new(&hermite(), 2).unwrap();
        let sys = setup.systems().unwrap();
        let w = setup.big_w();
        let mut p = sys[w].p.clone();
        let k = (setup.n + 1) * w;
        for _ in 0..k {
            p = p.derivative();
        }
        assert_eq!(p.coeff(0) / factorial_q(k), sys[w].p.coeff(k));
    }

    #[test]
    fn remainder_oracle_small() {
        let specs = [
            hermite(),
            FamilySpec::Chebyshev { u: 3 },
            FamilySpec::Bessel {
                gamma: vec![int(0), rat(1, 2)],
            },
        ];
        for spec in &specs {
            for n in 1..=2 {
                let setup = DetSetup::new(spec, n).unwrap();
                let r = build_delta(&setup).unwrap();
                assert_eq!(delta_by_remainders(&setup).unwrap(), r.delta, "{spec:?} n={n}");
            }
        }
    }

    #[test]
    fn theta_direct_vs_formula() {
        let (direct, closed) = theta_vandermonde_check(&hermite(), 3).unwrap();
        assert_eq!(Some(direct), closed);
        let lone = FamilySpec::Bessel { gamma: vec![rat(1, 3)] };
        let setup = DetSetup::new(&lone, 2).unwrap();
        let (direct, _) = theta_vandermonde_check(&lone, 2).unwrap();
        assert_eq!(direct, setup.theta_matrix()[0][0]);
    }
}
