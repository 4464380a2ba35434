//! Exact integer scalars.
//!
//! Every quantity in the engine is an integer (or a ratio of integers), and
//! every identity is checked with equality. The engine is generic over the
//! signed primitive width so callers can pick `i64` for speed or `i128` for
//! headroom; all arithmetic goes through [`Checked`] so overflow surfaces as
//! [`Error::Overflow`] instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{CheckedNeg, PrimInt, Signed};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

pub trait Int:
    PrimInt
    + Signed
    + CheckedNeg
    + Integer
    + Hash
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts a small constant into `Self`.
    fn lift(v: i64) -> Result<Self> {
        <Self as num_traits::NumCast>::from(v).ok_or(Error::Overflow)
    }

    fn to_i128(self) -> i128 {
        num_traits::ToPrimitive::to_i128(&self).expect("signed primitive fits in i128")
    }
}

impl<T> Int for T where
    T: PrimInt
        + Signed
        + CheckedNeg
        + Integer
        + Hash
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + Serialize
        + DeserializeOwned
        + 'static
{
}

/// An integer expression that poisons itself on overflow.
///
/// Build an expression with the usual operators and call [`Checked::get`]
/// once at the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checked<T>(Option<T>);

pub fn ck<T: Int>(v: T) -> Checked<T> {
    Checked(Some(v))
}

pub fn lit<T: Int>(v: i64) -> Checked<T> {
    Checked(T::lift(v).ok())
}

impl<T: Int> Checked<T> {
    pub fn get(self) -> Result<T> {
        self.0.ok_or(Error::Overflow)
    }

    /// Division that must be exact; a remainder is an internal error.
    pub fn div_exact(self, divisor: T, identity: &'static str) -> Result<T> {
        let v = self.get()?;
        let (q, r) = v.div_rem(&divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::inconsistent(
                identity,
                format!("{v} is not divisible by {divisor}"),
            ))
        }
    }

    pub fn max(self, other: Checked<T>) -> Checked<T> {
        Checked(self.0.zip(other.0).map(|(a, b)| a.max(b)))
    }
}

impl<T: Int> From<T> for Checked<T> {
    fn from(v: T) -> Self {
        ck(v)
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<T: Int> $trait for Checked<T> {
            type Output = Checked<T>;
            fn $method(self, rhs: Checked<T>) -> Checked<T> {
                Checked(self.0.zip(rhs.0).and_then(|(a, b)| a.$checked(&b)))
            }
        }

        impl<T: Int> $trait<T> for Checked<T> {
            type Output = Checked<T>;
            fn $method(self, rhs: T) -> Checked<T> {
                self.$method(ck(rhs))
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);

impl<T: Int> Neg for Checked<T> {
    type Output = Checked<T>;
    fn neg(self) -> Checked<T> {
        Checked(self.0.and_then(|a| a.checked_neg()))
    }
}

/// Sum of an iterator of integers, with overflow detection.
pub fn checked_sum<T: Int>(items: impl IntoIterator<Item = T>) -> Result<T> {
    items
        .into_iter()
        .fold(ck(T::zero()), |acc, v| acc + v)
        .get()
}
