//! Closed-form LU factors of `M(s, t)`, the two product-to-Pochhammer
//! identities, the determinant as a diagonal product, and the six equivalent
//! expressions for the determinant at `t = 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{
    binomial, double_factorial, factorial, reciprocal_factorial, rising_factorial, Field, Rational,
    RationalFunction,
};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;

/// A deliberate single-constant corruption of one formula.
///
/// Only used to check that the verification suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// `16^(j-1)` becomes `15^(j-1)` in `U[j][l]`.
    UBaseFifteen,
    /// `256^(j-1)` becomes `256^j` in the third chain expression.
    E3ExponentShift,
    /// `256^(j-1)` becomes `32^(j-1)` in the third chain expression.
    E3BaseThirtyTwo,
    /// The `(-1)^j` sign is dropped from the Pochhammer side of the left identity.
    GammaLeftSignDropped,
    /// `(i+j-2)!` becomes `(i+j-1)!` in `L[i][j]`.
    LFactorialShift,
}

impl Fault {
    pub const ALL: [Fault; 5] = [
        Fault::UBaseFifteen,
        Fault::E3ExponentShift,
        Fault::E3BaseThirtyTwo,
        Fault::GammaLeftSignDropped,
        Fault::LFactorialShift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::UBaseFifteen => "u-base-fifteen",
            Fault::E3ExponentShift => "e3-exponent-shift",
            Fault::E3BaseThirtyTwo => "e3-base-thirty-two",
            Fault::GammaLeftSignDropped => "gamma-left-sign-dropped",
            Fault::LFactorialShift => "l-factorial-shift",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown fault {s:?}"))
    }
}

/// The six values of the `t = 1` simplification chain for one `s`, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainValues {
    pub s: usize,
    pub values: [Rational; 6],
}

impl ChainValues {
    pub fn all_equal(&self) -> bool {
        self.values.iter().all(|v| *v == self.values[0])
    }

    /// First `(a, b)` pair of 1-based expression numbers that disagree.
    pub fn first_disagreement(&self) -> Option<(usize, usize)> {
        (1..6)
            .find(|&k| self.values[k] != self.values[0])
            .map(|k| (1, k + 1))
    }
}

/// The formula set, optionally with one injected [`Fault`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Formulas {
    pub fault: Option<Fault>,
}

impl Formulas {
    pub const EXACT: Formulas = Formulas { fault: None };

    pub fn with_fault(fault: Fault) -> Self {
        Formulas { fault: Some(fault) }
    }

    fn has(&self, fault: Fault) -> bool {
        self.fault == Some(fault)
    }

    /// `L[i][j]`; zero above the diagonal, one on it.
    pub fn entry_l<F: Field>(&self, i: usize, j: usize, t: &F) -> Result<F> {
        assert!(i >= 1 && j >= 1, "indices are 1-based");
        let inv_diff = reciprocal_factorial(i as i64 - j as i64);
        if inv_diff.is_zero() {
            return Ok(F::zero());
        }
        let top = if self.has(Fault::LFactorialShift) { i + j - 1 } else { i + j - 2 };
        let factorials = &(&Rational::from_integer(factorial(top as u32)) * &inv_diff)
            * &reciprocal_factorial(2 * j as i64 - 2);

        let t2 = t.mul_ref(t);
        let mut ratio = F::from_rational(&factorials);
        for k in 1..=j {
            let even2 = square(2 * k);
            let num = t2.mul_ref(&F::from_integer(square(2 * j - 1))).sub_ref(&F::from_integer(even2));
            let den = t2.mul_ref(&F::from_integer(square(2 * i - 1))).sub_ref(&F::from_integer(even2));
            let den_inv = den.recip().map_err(|_| Error::SingularFactor {
                row: i,
                col: j,
                factor: format!("{}*t^2 - {}", square(2 * i - 1), even2),
            })?;
            ratio = ratio.mul_ref(&num).mul_ref(&den_inv);
        }
        Ok(ratio)
    }

    /// `U[j][l]`; zero below the diagonal.
    pub fn entry_u<F: Field>(&self, j: usize, l: usize, t: &F) -> Result<F> {
        assert!(j >= 1 && l >= 1, "indices are 1-based");
        let inv_diff = reciprocal_factorial(l as i64 - j as i64);
        if inv_diff.is_zero() {
            return Ok(F::zero());
        }
        let base: i64 = if self.has(Fault::UBaseFifteen) { 15 } else { 16 };
        let sign: i64 = if j.is_multiple_of(2) { 1 } else { -1 };
        let constant = BigInt::from(sign)
            * BigInt::from(base).pow((j - 1) as u32)
            * factorial(2 * j as u32 - 2);
        let tail = &Rational::new(factorial((j + l - 1) as u32), BigInt::from(l))? * &inv_diff;

        let t2 = t.mul_ref(t);
        let mut value = F::from_rational(&(&Rational::from_integer(constant) * &tail)).mul_ref(&t2.pow(j as u32 - 1));
        let even2 = square(2 * l);
        for k in 1..=j {
            let odd2 = square(2 * k - 1);
            let factor = t2.mul_ref(&F::from_integer(odd2)).sub_ref(&F::from_integer(even2));
            let inv = factor.recip().map_err(|_| Error::SingularFactor {
                row: j,
                col: l,
                factor: format!("{odd2}*t^2 - {even2}"),
            })?;
            value = value.mul_ref(&inv);
        }
        let odd2 = square(2 * j - 1);
        for k in 1..j {
            let even2 = square(2 * k);
            let factor = t2.mul_ref(&F::from_integer(odd2)).sub_ref(&F::from_integer(even2));
            let inv = factor.recip().map_err(|_| Error::SingularFactor {
                row: j,
                col: l,
                factor: format!("{odd2}*t^2 - {even2}"),
            })?;
            value = value.mul_ref(&inv);
        }
        Ok(value)
    }

    pub fn build_l<F: Field>(&self, s: usize, t: &F) -> Result<ExactMatrix<F>> {
        ExactMatrix::try_from_fn(s, s, |i, j| self.entry_l(i, j, t))
    }

    pub fn build_u<F: Field>(&self, s: usize, t: &F) -> Result<ExactMatrix<F>> {
        ExactMatrix::try_from_fn(s, s, |j, l| self.entry_u(j, l, t))
    }

    /// `prod_{k=1..j} ((2i-1)^2 t^2 - (2k)^2)` against
    /// `(-1)^j 4^j (1 - t(i-1/2))_j (1 + t(i-1/2))_j`.
    pub fn gamma_identity_left(&self, i: usize, j: usize) -> (RationalFunction, RationalFunction) {
        let t = RationalFunction::t();
        let t2 = t.mul_ref(&t);
        let odd2 = RationalFunction::from_integer(square(2 * i - 1));
        let lhs = (1..=j).fold(RationalFunction::one(), |acc, k| {
            acc.mul_ref(&t2.mul_ref(&odd2).sub_ref(&RationalFunction::from_integer(square(2 * k))))
        });

        let shift = t.scale(&Rational::new(2 * i as i64 - 1, 2).expect("nonzero"));
        let one = RationalFunction::one();
        let mut constant = BigInt::from(4).pow(j as u32);
        if j % 2 == 1 && !self.has(Fault::GammaLeftSignDropped) {
            constant = -constant;
        }
        let rhs = RationalFunction::from_integer(constant)
            .mul_ref(&rising_factorial(&one.sub_ref(&shift), j as u32))
            .mul_ref(&rising_factorial(&one.add_ref(&shift), j as u32));
        (lhs, rhs)
    }

    /// `prod_{k=1..j} ((2k-1)^2 t^2 - (2l)^2)` against
    /// `4^j t^(2j) (1/2 + l/t)_j (1/2 - l/t)_j`.
    pub fn gamma_identity_right(&self, j: usize, l: usize) -> (RationalFunction, RationalFunction) {
        let t = RationalFunction::t();
        let t2 = t.mul_ref(&t);
        let even2 = RationalFunction::from_integer(square(2 * l));
        let lhs = (1..=j).fold(RationalFunction::one(), |acc, k| {
            acc.mul_ref(&t2.mul_ref(&RationalFunction::from_integer(square(2 * k - 1))).sub_ref(&even2))
        });

        let half = RationalFunction::constant(Rational::new(1, 2).expect("nonzero"));
        let l_over_t = RationalFunction::from_integer(l as i64)
            .checked_div(&t)
            .expect("t is nonzero");
        let rhs = RationalFunction::from_integer(BigInt::from(4).pow(j as u32))
            .mul_ref(&t2.pow(j as u32))
            .mul_ref(&rising_factorial(&half.add_ref(&l_over_t), j as u32))
            .mul_ref(&rising_factorial(&half.sub_ref(&l_over_t), j as u32));
        (lhs, rhs)
    }

    /// `D_s = prod_{j=1..s} U[j][j]`; the empty product for `s = 0`.
    pub fn det_closed<F: Field>(&self, s: usize, t: &F) -> Result<F> {
        (1..=s).try_fold(F::one(), |acc, j| Ok(acc.mul_ref(&self.entry_u(j, j, t)?)))
    }

    /// All six `t = 1` expressions, each evaluated from its own formula.
    pub fn chain_t1(&self, s: usize) -> ChainValues {
        assert!(s >= 1, "chain is defined for s >= 1");
        ChainValues {
            s,
            values: [
                chain_e1(s),
                chain_e2(s),
                chain_e3(s, self.fault),
                chain_e4(s),
                chain_e5(s),
                chain_e6(s),
            ],
        }
    }

    pub fn det_t1(&self, s: usize) -> Rational {
        chain_e6(s)
    }
}

pub fn entry_l<F: Field>(i: usize, j: usize, t: &F) -> Result<F> {
    Formulas::EXACT.entry_l(i, j, t)
}

pub fn entry_u<F: Field>(j: usize, l: usize, t: &F) -> Result<F> {
    Formulas::EXACT.entry_u(j, l, t)
}

pub fn build_l<F: Field>(s: usize, t: &F) -> Result<ExactMatrix<F>> {
    Formulas::EXACT.build_l(s, t)
}

pub fn build_u<F: Field>(s: usize, t: &F) -> Result<ExactMatrix<F>> {
    Formulas::EXACT.build_u(s, t)
}

pub fn gamma_identity_left(i: usize, j: usize) -> (RationalFunction, RationalFunction) {
    Formulas::EXACT.gamma_identity_left(i, j)
}

pub fn gamma_identity_right(j: usize, l: usize) -> (RationalFunction, RationalFunction) {
    Formulas::EXACT.gamma_identity_right(j, l)
}

pub fn det_closed<F: Field>(s: usize, t: &F) -> Result<F> {
    Formulas::EXACT.det_closed(s, t)
}

pub fn chain_t1(s: usize) -> ChainValues {
    Formulas::EXACT.chain_t1(s)
}

pub fn det_t1(s: usize) -> Rational {
    chain_e6(s)
}

fn square(n: usize) -> i64 {
    (n * n) as i64
}

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n)
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den).expect("chain denominators are nonzero")
}

fn fact(n: usize) -> BigInt {
    factorial(n as u32)
}

fn pow_int(base: i64, exp: usize) -> BigInt {
    BigInt::from(base).pow(exp as u32)
}

// (1/s!) prod_j (-1)^j 16^(j-1) (2j-2)! (2j-1)!
//   / [prod_{k=1..j} (2k-2j-1)(2k+2j-1) * prod_{k=1..j-1} (2j-2k-1)(2j+2k-1)]
fn chain_e1(s: usize) -> Rational {
    let mut acc = ratio(BigInt::one(), fact(s));
    for j in 1..=s {
        let ji = j as i64;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let num = BigInt::from(sign) * pow_int(16, j - 1) * fact(2 * j - 2) * fact(2 * j - 1);
        let mut den = BigInt::one();
        for k in 1..=ji {
            den *= (2 * k - 2 * ji - 1) * (2 * k + 2 * ji - 1);
        }
        for k in 1..ji {
            den *= (2 * ji - 2 * k - 1) * (2 * ji + 2 * k - 1);
        }
        acc = &acc * &ratio(num, den);
    }
    acc
}

// (1/s!) prod_j 16^(j-1) (2j-1)!^2 / [(4j-1)!! (4j-3)!!]
fn chain_e2(s: usize) -> Rational {
    let mut acc = ratio(BigInt::one(), fact(s));
    for j in 1..=s {
        let ji = j as i64;
        let num = pow_int(16, j - 1) * fact(2 * j - 1).pow(2u32);
        let den = double_factorial(4 * ji - 1).expect("odd") * double_factorial(4 * ji - 3).expect("odd");
        acc = &acc * &ratio(num, den);
    }
    acc
}

// (4^s/s!) prod_j 256^(j-1) (2j-1)!^4 / [(4j-1)! (4j-2)!]
//
// The base is 256: substituting (4j-1)!! = (4j)!/(2^(2j) (2j)!) and
// (4j-3)!! = (4j-2)!/(2^(2j-1) (2j-1)!) into E2 leaves 2^(8j-6) = 4 * 256^(j-1)
// per factor. The variant with 32^(j-1) disagrees from s = 2 on.
fn chain_e3(s: usize, fault: Option<Fault>) -> Rational {
    let base = if fault == Some(Fault::E3BaseThirtyTwo) { 32 } else { 256 };
    let mut acc = ratio(pow_int(4, s), fact(s));
    for j in 1..=s {
        let exp = if fault == Some(Fault::E3ExponentShift) { j } else { j - 1 };
        let num = pow_int(base, exp) * fact(2 * j - 1).pow(4u32);
        let den = fact(4 * j - 1) * fact(4 * j - 2);
        acc = &acc * &ratio(num, den);
    }
    acc
}

// 4^s 16^(s(s-1)) / s!^2 / prod_j C(4j, 2j) C(4j-2, 2j-1)
fn chain_e4(s: usize) -> Rational {
    let head = ratio(pow_int(4, s) * pow_int(16, s * (s - 1)), fact(s).pow(2u32));
    let prod = (1..=s as u64).fold(BigInt::one(), |acc, j| {
        acc * binomial(4 * j, 2 * j as i64) * binomial(4 * j - 2, 2 * j as i64 - 1)
    });
    head.checked_div(&int(prod)).expect("binomials are positive")
}

// 4^s 16^(s(s-1)) / s!^2 / prod_{j=1..2s} C(2j, j)
fn chain_e5(s: usize) -> Rational {
    let head = ratio(pow_int(4, s) * pow_int(16, s * (s - 1)), fact(s).pow(2u32));
    let prod = (1..=2 * s as u64).fold(BigInt::one(), |acc, j| acc * binomial(2 * j, j as i64));
    head.checked_div(&int(prod)).expect("binomials are positive")
}

// 16^(s(s-1)) / s!^2 / prod_{j=0..2s-1} C(2j+1, j)
fn chain_e6(s: usize) -> Rational {
    let head = ratio(pow_int(16, s * (s - 1)), fact(s).pow(2u32));
    let prod = (0..2 * s as u64).fold(BigInt::one(), |acc, j| acc * binomial(2 * j + 1, j as i64));
    head.checked_div(&int(prod)).expect("binomials are positive")
}
