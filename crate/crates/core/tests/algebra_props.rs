use proptest::prelude::*;

use cauchy_lu::arith::{rising_factorial, Field, Polynomial, Rational, RationalFunction};
use cauchy_lu::matrix::{det_cofactor, det_elimination, transpose, ExactMatrix};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=24).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn polynomial(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(Polynomial::from_coeffs)
}

fn nonzero_polynomial(max_len: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfun() -> impl Strategy<Value = RationalFunction> {
    (polynomial(4), nonzero_polynomial(4)).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn square_matrix(max: usize) -> impl Strategy<Value = ExactMatrix<Rational>> {
    (1..=max).prop_flat_map(|n| {
        // small integers with plenty of zeros so row swaps get exercised
        prop::collection::vec(prop_oneof![Just(Rational::zero()), rational()], n * n).prop_map(move |v| {
            ExactMatrix::from_rows(v.chunks(n).map(<[Rational]>::to_vec).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), Rational::zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn polynomial_divrem_identity(a in polynomial(7), b in nonzero_polynomial(4)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn polynomial_gcd_divides_both(a in nonzero_polynomial(4), b in nonzero_polynomial(4), c in nonzero_polynomial(3)) {
        let x = &a * &c;
        let y = &b * &c;
        let g = x.gcd(&y);
        prop_assert!(g.leading_coeff().unwrap().is_one());
        prop_assert!(x.divrem(&g).unwrap().1.is_zero());
        prop_assert!(y.divrem(&g).unwrap().1.is_zero());
        // the common factor survives
        prop_assert!(g.divrem(&c.monic()).unwrap().1.is_zero());
    }

    #[test]
    fn polynomial_text_round_trip(a in polynomial(6)) {
        prop_assert_eq!(a.to_string().parse::<Polynomial>().unwrap(), a);
    }

    #[test]
    fn ratfun_field_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.sub_ref(&a), RationalFunction::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.checked_div(&a).unwrap(), RationalFunction::one());
        }
    }

    #[test]
    fn ratfun_canonical_form(a in ratfun()) {
        prop_assert_eq!(a.normalized(), a.clone());
        prop_assert_eq!(a.normalized().normalized(), a.normalized());
        let den = a.denom();
        prop_assert!(den.leading_coeff().unwrap().is_positive());
        prop_assert!(den.coeffs().iter().all(Rational::is_integer));
        prop_assert!(a.numer().gcd(den).is_one() || a.is_zero());
    }

    #[test]
    fn ratfun_text_round_trip(a in ratfun()) {
        prop_assert_eq!(a.to_string().parse::<RationalFunction>().unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfun(), b in ratfun(), t0 in rational()) {
        if let (Ok(x), Ok(y)) = (a.eval(&t0), b.eval(&t0)) {
            prop_assert_eq!(a.mul_ref(&b).eval(&t0).unwrap(), &x * &y);
            prop_assert_eq!(a.add_ref(&b).eval(&t0).unwrap(), &x + &y);
        }
    }

    #[test]
    fn rising_factorial_splits(a in rational(), m in 0u32..=10, n in 0u32..=10) {
        let shifted = a.add_ref(&Rational::from(m as i64));
        prop_assert_eq!(
            rising_factorial(&a, m + n),
            rising_factorial(&a, m).mul_ref(&rising_factorial(&shifted, n))
        );
    }

    #[test]
    fn rising_factorial_splits_symbolic(c in rational(), m in 0u32..=4, n in 0u32..=4) {
        let a = RationalFunction::t().add_ref(&RationalFunction::constant(c));
        let shifted = a.add_ref(&RationalFunction::from_integer(m));
        prop_assert_eq!(
            rising_factorial(&a, m + n),
            rising_factorial(&a, m).mul_ref(&rising_factorial(&shifted, n))
        );
    }

    #[test]
    fn determinant_routes_agree(m in square_matrix(5)) {
        let by_elimination = det_elimination(&m).unwrap();
        prop_assert_eq!(det_cofactor(&m).unwrap(), by_elimination.clone());
        prop_assert_eq!(det_elimination(&transpose(&m)).unwrap(), by_elimination);
    }

    #[test]
    fn determinant_is_linear_in_each_row(m in square_matrix(4), c in rational(), row_seed in 0usize..4) {
        let row = row_seed % m.rows() + 1;
        let mut scaled = m.clone();
        for l in 1..=m.cols() {
            scaled.set(row, l, m.get(row, l).mul_ref(&c));
        }
        let base = det_elimination(&m).unwrap();
        prop_assert_eq!(det_elimination(&scaled).unwrap(), &base * &c);
        prop_assert_eq!(det_cofactor(&scaled).unwrap(), &base * &c);
    }

    #[test]
    fn nonzero_scalar_inverse(a in nonzero_rational()) {
        let f = RationalFunction::constant(a.clone());
        prop_assert_eq!(f.recip().unwrap(), RationalFunction::constant(a.recip().unwrap()));
    }
}
