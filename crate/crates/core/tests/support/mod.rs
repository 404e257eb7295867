//! Seeded random cases for the operator-algebra identities.

#![allow(dead_code)]

use num_traits::Zero;
use pade_core::exact::{binomial, falling, int, rat, LaurentPoly, LaurentTail, Poly, RatFunc, Rational};
use pade_core::weyl::{cauchy_kernel, commutation_coeffs, DiffOp, FirstOrderData, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Case = Result<(), String>;

pub struct Gen(ChaCha8Rng);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn small(&mut self, lo: usize, hi: usize) -> usize {
        self.0.gen_range(lo..=hi)
    }

    pub fn rational(&mut self) -> Rational {
        rat(self.0.gen_range(-5..=5), self.0.gen_range(1..=3))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn poly(&mut self, max_deg: usize) -> Poly {
        let d = self.small(0, max_deg);
        Poly::from_coeffs((0..=d).map(|_| self.rational()).collect())
    }

    pub fn nonzero_poly(&mut self, min_deg: usize, max_deg: usize) -> Poly {
        let d = self.small(min_deg, max_deg);
        let mut c: Vec<Rational> = (0..d).map(|_| self.rational()).collect();
        c.push(self.nonzero_rational());
        Poly::from_coeffs(c)
    }

    /// Polynomial coefficients of degree at most 3, order at most 3.
    pub fn op(&mut self) -> DiffOp {
        let order = self.small(0, 3);
        DiffOp::from_polys((0..=order).map(|_| self.poly(3)).collect(), Var::Z)
    }
}

fn e<T: std::fmt::Debug>(r: pade_core::Result<T>) -> Result<T, String> {
    r.map_err(|err| format!("{err:?}"))
}

fn t_pow(k: usize) -> Poly {
    Poly::monomial(int(1), k)
}

/// `(D*)* = D`.
pub fn involution(g: &mut Gen) -> Case {
    let d = g.op();
    let back = e(e(d.adjoint())?.adjoint())?;
    (back == d).then_some(()).ok_or_else(|| format!("(D*)* != D for {d:?}"))
}

/// `(D1 D2)* = D2* D1*`.
pub fn anti_homomorphism(g: &mut Gen) -> Case {
    let (d1, d2) = (g.op(), g.op());
    let lhs = e(e(d1.compose(&d2))?.adjoint())?;
    let rhs = e(e(d2.adjoint())?.compose(&e(d1.adjoint())?))?;
    (lhs == rhs)
        .then_some(())
        .ok_or_else(|| format!("(D1 D2)* != D2* D1* for {d1:?}, {d2:?}"))
}

/// `z^m d^n . 1/(z-t) = P(t, z) + D* . 1/(z-t)` at a random rational `t`,
/// compared on the polynomial part and the first 15 coefficients.
pub fn cauchy_identity(g: &mut Gen) -> Case {
    const PRECISION: usize = 15;
    let (m, n) = (g.small(0, 4), g.small(0, 4));
    let t = g.nonzero_rational();
    let mut cs = vec![Poly::zero(); n + 1];
    cs[n] = t_pow(m);
    let d = DiffOp::from_polys(cs, Var::Z);
    let lhs = e(d.apply_laurent(&cauchy_kernel(&t, PRECISION + m + n + 1)))?;

    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let mut p = Poly::zero();
    for k in 0..m.saturating_sub(n) {
        let c = &sign * falling((n + k) as i64, n) * num_traits::pow(t.clone(), k);
        p = &p + &Poly::monomial(c, m - n - k - 1);
    }
    if lhs.poly != p {
        return Err(format!("m={m} n={n}: polynomial part {} != {p}", lhs.poly));
    }
    if lhs.tail.precision() < PRECISION {
        return Err(format!(
            "m={m} n={n}: only {} coefficients survive",
            lhs.tail.precision()
        ));
    }
    let adj = e(d.adjoint())?;
    for k in 0..PRECISION {
        let image = adj.apply_poly(&t_pow(k));
        let want = image.as_poly().ok_or("adjoint left K[t]")?.eval(&t);
        if lhs.tail.coeffs()[k] != want {
            return Err(format!("m={m} n={n} k={k}: coefficient mismatch"));
        }
    }
    Ok(())
}

/// `t^k E^n = sum_l c_{n,k,l} E^(n-l) t^(k-l)` on two test polynomials, and the
/// value of the last coefficient.
pub fn commutation(g: &mut Gen) -> Case {
    let (n, k) = (g.small(0, 5), g.small(0, 5));
    let a = g.nonzero_poly(0, 3);
    let b = g.poly(3);
    let ea = e(FirstOrderData::simple(a, b))?.twisted_derivative(Var::T);
    let c = commutation_coeffs(n, k);
    let top = n.min(k);
    if c.len() != top + 1 {
        return Err(format!("n={n} k={k}: {} coefficients", c.len()));
    }
    let lead = if k >= n {
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        sign * falling(k as i64, n)
    } else {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        sign * Rational::from_integer(binomial(n, k)) * falling(k as i64, k)
    };
    if c[top] != lead {
        return Err(format!("n={n} k={k}: leading coefficient {} != {lead}", c[top]));
    }
    let pow_e = |j: usize, f: &RatFunc| (0..j).fold(f.clone(), |acc, _| ea.apply_ratfunc(&acc));
    for _ in 0..2 {
        let f = RatFunc::from_poly(g.poly(8));
        let lhs = &RatFunc::from_poly(t_pow(k)) * &pow_e(n, &f);
        let mut rhs = RatFunc::zero();
        for (l, cl) in c.iter().enumerate() {
            let shifted = &RatFunc::from_poly(t_pow(k - l)) * &f;
            rhs = &rhs + &pow_e(n - l, &shifted).scale(cl);
        }
        if lhs != rhs {
            return Err(format!("n={n} k={k}: operator identity fails"));
        }
    }
    Ok(())
}

/// `E^n a^n F` stays in the ideal generated by `prod_v a_v^(s_v)`.
pub fn ideal_stability(g: &mut Gen) -> Case {
    let l = g.small(1, 2);
    let factors: Vec<Poly> = (0..l).map(|_| g.nonzero_poly(1, 2)).collect();
    let b = g.poly(3);
    let s: Vec<usize> = (0..l).map(|_| g.small(0, 2)).collect();
    let n = g.small(1, 3);
    let gen = factors
        .iter()
        .zip(&s)
        .fold(Poly::one(), |acc, (f, &sv)| &acc * &f.pow(sv));
    let f = &gen * &g.nonzero_poly(0, 3);
    let op = e(FirstOrderData::new(factors, b))?;
    let image = e(op.rodrigues_apply(n, &vec![0; l], &RatFunc::from_poly(f)))?;
    let p = image
        .as_poly()
        .ok_or_else(|| format!("n={n}: image is not a polynomial"))?;
    p.exact_div(&gen)
        .map(|_| ())
        .ok_or_else(|| format!("n={n} s={s:?}: image leaves the ideal"))
}

/// `phi_{pi(D f)}(t^k) = phi_f(D*(t^k))` for `k <= 12` and a random series `f`.
pub fn functional_adjoint(g: &mut Gen) -> Case {
    const K: usize = 12;
    let d = g.op();
    let f = LaurentTail::new((0..K + 20).map(|_| g.rational()).collect());
    let image = e(d.apply_laurent(&LaurentPoly::from_tail(f.clone())))?;
    if image.tail.precision() <= K {
        return Err(format!("only {} coefficients of D f survive", image.tail.precision()));
    }
    let adj = e(d.adjoint())?;
    for k in 0..=K {
        let dk = adj.apply_poly(&t_pow(k));
        let dk = dk.as_poly().ok_or("adjoint left K[t]")?;
        let rhs = dk
            .coeffs()
            .iter()
            .zip(f.coeffs())
            .fold(Rational::zero(), |acc, (c, x)| acc + c * x);
        if image.tail.coeffs()[k] != rhs {
            return Err(format!("k={k}: phi mismatch for {d:?}"));
        }
    }
    Ok(())
}

pub type Property = fn(&mut Gen) -> Case;

pub const PROPERTIES: [(&str, Property, usize); 6] = [
    ("involution", involution, 200),
    ("anti-homomorphism", anti_homomorphism, 200),
    ("cauchy kernel identity", cauchy_identity, 200),
    ("commutation coefficients", commutation, 200),
    ("ideal stability", ideal_stability, 150),
    ("functional adjoint", functional_adjoint, 150),
];

/// Runs every property with its own seed; returns `(name, cases, failures)`.
pub fn run_suite(seed: u64) -> Vec<(&'static str, usize, Vec<String>)> {
    PROPERTIES
        .iter()
        .enumerate()
        .map(|(i, (name, prop, cases))| {
            let mut g = Gen::new(seed.wrapping_add(i as u64));
            let failures = (0..*cases).filter_map(|_| prop(&mut g).err()).collect();
            (*name, *cases, failures)
        })
        .collect()
}
