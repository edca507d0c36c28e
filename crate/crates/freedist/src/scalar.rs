//! Exact scalars: reduced big rationals and Gaussian rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational. `num_rational` keeps it reduced with a positive denominator.
pub type Scalar = BigRational;

pub fn q(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Scalar {
    qf(1, 2)
}

/// Size measure used for pivot selection.
pub(crate) fn weight(x: &Scalar) -> u64 {
    x.numer().bits() + x.denom().bits()
}

pub fn fmt_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_negative(x: &Scalar) -> bool {
    x.is_negative()
}

/// Complex number with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl GaussScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        GaussScalar { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        GaussScalar { re, im: Scalar::zero() }
    }

    pub fn i() -> Self {
        GaussScalar { re: Scalar::zero(), im: Scalar::one() }
    }

    pub fn zero() -> Self {
        Self::real(Scalar::zero())
    }

    pub fn one() -> Self {
        Self::real(Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussScalar { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussScalar { re: &self.re / &n, im: -(&self.im / &n) })
    }
}

impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", fmt_scalar(&self.re), fmt_scalar(&self.im))
    }
}

impl<'a> Add<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn add(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn sub(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn mul(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar { re: -self.re, im: -self.im }
    }
}

impl Add for GaussScalar {
    type Output = GaussScalar;
    fn add(self, o: GaussScalar) -> GaussScalar {
        &self + &o
    }
}

impl Sub for GaussScalar {
    type Output = GaussScalar;
    fn sub(self, o: GaussScalar) -> GaussScalar {
        &self - &o
    }
}

impl Mul for GaussScalar {
    type Output = GaussScalar;
    fn mul(self, o: GaussScalar) -> GaussScalar {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_after_ops() {
        let x = qf(2, 4) + qf(1, 6);
        assert_eq!(x, qf(2, 3));
        assert_eq!(x.denom(), &BigInt::from(3));
        let y = qf(3, -9);
        assert!(y.denom() > &BigInt::zero());
        assert_eq!(y, qf(-1, 3));
    }

    #[test]
    fn gauss_inverse() {
        let z = GaussScalar::new(q(1), q(2));
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, GaussScalar::one());
        assert_eq!(&GaussScalar::i() * &GaussScalar::i(), GaussScalar::real(q(-1)));
        assert!(GaussScalar::zero().inv().is_none());
    }
}
