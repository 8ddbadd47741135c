//! The coefficient-field abstraction shared by the Laurent algebra, the
//! residue engine and the linear solver.
//!
//! Two exact instantiations exist — [`Rational`] for numeric systems and
//! [`RatFunc`] for fully symbolic ones — plus `Complex<f64>` for oracle-side
//! floating-point work.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::rational::Rational;
use crate::ratfunc::RatFunc;

pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(k: i64) -> Self;

    /// Pivot-selection measure: prefer entries with fewer terms.
    fn complexity(&self) -> usize;

    /// Division known by the caller to be exact in the underlying domain
    /// (used by fraction-free elimination, where quotients of accumulated
    /// minors are polynomial again).
    fn div_exact(self, rhs: &Self) -> Self {
        self / rhs.clone()
    }
}

impl Coeff for Rational {
    fn from_i64(k: i64) -> Self {
        crate::rational::rat_int(k)
    }

    fn complexity(&self) -> usize {
        1
    }
}

impl Coeff for RatFunc {
    fn from_i64(k: i64) -> Self {
        RatFunc::constant(crate::rational::rat_int(k))
    }

    fn complexity(&self) -> usize {
        self.num().num_terms() + self.den().num_terms()
    }
}

impl Coeff for Complex64 {
    fn from_i64(k: i64) -> Self {
        Complex64::new(k as f64, 0.0)
    }

    fn complexity(&self) -> usize {
        1
    }
}
