use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact commutative ring with involution.
pub trait Scalar:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn conj(&self) -> Self;

    fn is_negative(&self) -> bool;

    /// `p/q`, or `p` for integers.
    fn render(&self) -> String;
}

pub type Rational = BigRational;

impl Scalar for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q` in lowest terms.
pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
