//! Minimal commutative-ring interface for the matrix kernels.
//!
//! The determinant and characteristic-polynomial routines are generic over
//! the scalar kind: rationals, univariate polynomials, or multivariate
//! polynomials. All three are integral domains containing the rationals,
//! which is exactly what fraction-free elimination and Faddeev-LeVerrier
//! need: `div_exact` is total on the divisions those algorithms perform.
//!
//! Arithmetic itself comes from the standard operator traits on
//! references; generic code carries the bound
//! `for<'a> &'a T: RingRef<T>`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rat;

/// Reference-operator bundle: `&T (+|-|*) &T -> T` and unary `-&T -> T`.
pub trait RingRef<Base>:
    Add<Self, Output = Base>
    + Sub<Self, Output = Base>
    + Mul<Self, Output = Base>
    + Neg<Output = Base>
    + Sized
    + Copy
{
}

impl<'a, Base, T> RingRef<Base> for &'a T where
    &'a T: Add<&'a T, Output = Base>
        + Sub<&'a T, Output = Base>
        + Mul<&'a T, Output = Base>
        + Neg<Output = Base>
{
}

pub trait Ring: Clone + PartialEq + std::fmt::Debug + Zero + One
where
    for<'a> &'a Self: RingRef<Self>,
{
    /// Exact division: `Some(q)` with `self = q * other` when such a `q`
    /// exists in the ring, `None` otherwise (in particular when `other` is
    /// zero).
    fn div_exact(&self, other: &Self) -> Option<Self>;

    /// Exact division by a nonzero integer. Total over rings of
    /// characteristic zero with rational coefficients.
    fn div_int(&self, k: u64) -> Self;
}

impl Ring for Rat {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }
    fn div_int(&self, k: u64) -> Self {
        self / Rat::from_integer(k.into())
    }
}
