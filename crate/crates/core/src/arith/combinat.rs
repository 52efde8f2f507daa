//! Factorials, double factorials, binomials and rising factorials.

use num_bigint::BigInt;
use num_traits::One;

use super::{Field, Rational};
use crate::error::ArithError;

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `1/n!`, and exactly zero for negative `n` (the poles of Gamma).
pub fn reciprocal_factorial(n: i64) -> Rational {
    if n < 0 {
        return Rational::zero();
    }
    let n = u32::try_from(n).expect("factorial argument fits in u32");
    Rational::new(1, factorial(n)).expect("n! is positive")
}

/// `n!! = n (n-2) (n-4) ... 1` for odd `n`, with `(-1)!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt, ArithError> {
    if n < -1 || n % 2 == 0 {
        return Err(ArithError::Domain(format!(
            "double factorial is defined here for odd n >= -1, got {n}"
        )));
    }
    Ok((1..=n).step_by(2).fold(BigInt::one(), |acc, k| acc * k))
}

/// `n choose k`, zero when `k` lies outside `0..=n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    let Ok(k) = u64::try_from(k) else {
        return BigInt::from(0);
    };
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    // running product stays integral: C(n-k+i, i)
    (1..=k).fold(BigInt::one(), |acc, i| acc * (n - k + i) / i)
}

/// Pochhammer symbol `a (a+1) ... (a+n-1)`, equal to `Gamma(a+n)/Gamma(a)`.
pub fn rising_factorial<F: Field>(a: &F, n: u32) -> F {
    (0..n).fold(F::one(), |acc, m| {
        acc.mul_ref(&a.add_ref(&F::from_integer(m)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Polynomial, RationalFunction};

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(10), BigInt::from(3628800));
    }

    #[test]
    fn reciprocal_factorials() {
        assert_eq!(reciprocal_factorial(-1), Rational::zero());
        assert_eq!(reciprocal_factorial(-7), Rational::zero());
        assert_eq!(reciprocal_factorial(0), Rational::one());
        assert_eq!(reciprocal_factorial(3), Rational::new(1, 6).unwrap());
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(5).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert!(double_factorial(4).is_err());
        assert!(double_factorial(0).is_err());
        assert!(double_factorial(-3).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 1), BigInt::from(3));
        // 11! / (5! 6!)
        assert_eq!(binomial(11, 5), factorial(11) / (factorial(5) * factorial(6)));
        assert_eq!(binomial(11, 5), BigInt::from(462));
        assert_eq!(binomial(4, 7), BigInt::from(0));
        assert_eq!(binomial(4, -1), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }

    #[test]
    fn rising_factorials() {
        let half = Rational::new(1, 2).unwrap();
        assert_eq!(rising_factorial(&half, 0), Rational::one());
        // (1/2)(3/2)(5/2)
        let direct = &(&half * &Rational::new(3, 2).unwrap()) * &Rational::new(5, 2).unwrap();
        assert_eq!(rising_factorial(&half, 3), direct);
        assert_eq!(direct, Rational::new(15, 8).unwrap());

        let a = RationalFunction::from(Polynomial::from_coeffs(vec![
            Rational::one(),
            Rational::new(-1, 2).unwrap(),
        ]));
        assert_eq!(rising_factorial(&a, 1), a);
    }

    #[test]
    fn double_factorial_links_to_factorial() {
        for n in 1..=20u32 {
            let lhs = double_factorial(2 * n as i64 - 1).unwrap() * (BigInt::from(2).pow(n) * factorial(n));
            assert_eq!(lhs, factorial(2 * n), "n = {n}");
        }
    }

    #[test]
    fn reciprocal_times_factorial_is_one() {
        for n in 0..=25 {
            let prod = &reciprocal_factorial(n) * &Rational::from_integer(factorial(n as u32));
            assert!(prod.is_one());
        }
    }
}
