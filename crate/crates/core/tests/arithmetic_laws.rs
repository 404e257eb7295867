use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use pade_core::criterion::{den, log_mu_const, mu_n};
use pade_core::exact::{factorial_q, pochhammer, rat, Rational};
use proptest::prelude::*;

fn divides(a: &BigInt, b: &BigInt) -> bool {
    b.mod_floor(a).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mu_is_monotone_and_supermultiplicative(p in -50i64..50, q in 1i64..60, n1 in 0u64..40, n2 in 0u64..40) {
        let a = rat(p, q);
        let (lo, hi) = (n1.min(n2), n1.max(n2));
        prop_assert!(divides(&mu_n(&a, lo), &mu_n(&a, hi)));
        prop_assert!(divides(&(mu_n(&a, n1) * mu_n(&a, n2)), &mu_n(&a, n1 + n2)));
    }

    #[test]
    fn mu_clears_binomial_ratios(p in -50i64..50, q in 1i64..30, n in 0u64..25) {
        let a = rat(p, q);
        let mu = Rational::from_integer(mu_n(&a, n));
        for k in 0..=n as usize {
            let x = &mu * pochhammer(&a, k) / factorial_q(k);
            prop_assert!(x.is_integer(), "k = {}", k);
        }
    }

    #[test]
    fn mu_growth_constant(p in 1i64..50, q in 1i64..30) {
        let a = rat(p, q);
        let n = 400u64;
        let approx = pade_core::criterion::log_abs_int(&mu_n(&a, n)) / n as f64;
        prop_assert!(approx <= log_mu_const(&a) + 1e-12);
        prop_assert!(approx >= log_mu_const(&a) - 0.05);
    }

    #[test]
    fn den_is_lcm(p1 in -30i64..30, q1 in 1i64..40, p2 in -30i64..30, q2 in 1i64..40) {
        let (x, y) = (rat(p1, q1), rat(p2, q2));
        let d = den([&x, &y]);
        prop_assert!((Rational::from_integer(d.clone()) * &x).is_integer());
        prop_assert!((Rational::from_integer(d.clone()) * &y).is_integer());
        prop_assert_eq!(d, x.denom().lcm(y.denom()));
    }
}
