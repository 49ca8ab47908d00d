use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_bigint::ToBigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Signed integer type usable as coordinates of exact ring elements:
/// `i64`, `i128` or `BigInt`.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + ToBigInt
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    fn of_u64(v: u64) -> Self {
        <Self as FromPrimitive>::from_u64(v).expect("u64 fits every scalar type")
    }

    fn of_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every scalar type")
    }

    /// p-adic valuation of a nonzero value; `None` for zero.
    fn p_valuation(&self, p: u32) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let p = <Self as Scalar>::of_u64(p as u64);
        let mut v = 0;
        let mut x = self.clone();
        loop {
            let (q, r) = x.div_rem(&p);
            if !r.is_zero() {
                return Some(v);
            }
            x = q;
            v += 1;
        }
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + ToBigInt
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Send
        + Sync
        + 'static
{
}
