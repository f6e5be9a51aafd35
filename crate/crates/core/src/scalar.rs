//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Complex numbers over a [`Real`] scalar.
pub type Complex<T> = num_complex::Complex<T>;

/// Real floating-point scalar the solver is generic over.
///
/// Implemented for `f32` and `f64`. The two associated tolerances give the
/// working precision of root refinement and of null-space detection, which
/// cannot be the same for both widths.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + 'static
{
    /// Absolute tolerance in k used when refining a bracketed root.
    fn default_refine_tol() -> Self;

    /// Relative singular-value threshold below which a direction counts as null.
    fn default_null_tol() -> Self;

    /// Converts an `f64` literal. Panics only if the value is not representable at all.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable")
    }

    /// Converts a count.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable")
    }

    /// Lossy conversion to `f64` for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn default_refine_tol() -> Self {
        1e-11
    }
    fn default_null_tol() -> Self {
        1e-8
    }
}

impl Real for f32 {
    fn default_refine_tol() -> Self {
        2e-5
    }
    fn default_null_tol() -> Self {
        2e-3
    }
}

/// `e^{i x}`.
#[inline]
pub fn cis<T: Real>(x: T) -> Complex<T> {
    Complex::new(x.cos(), x.sin())
}

/// Reduces an angle to `[-π, π]`; values already in range are returned unchanged.
pub fn wrap_angle<T: Real>(x: T) -> T {
    if x >= -T::PI() && x <= T::PI() {
        return x;
    }
    let two_pi = T::PI() + T::PI();
    let r = x - two_pi * (x / two_pi).round();
    if r < -T::PI() {
        r + two_pi
    } else if r > T::PI() {
        r - two_pi
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_stays_in_range() {
        for i in -50..50 {
            let x = f64::from(i) * 0.77;
            let w = wrap_angle(x);
            assert!((-std::f64::consts::PI..=std::f64::consts::PI).contains(&w));
            let d = (x - w) / (2.0 * std::f64::consts::PI);
            assert!((d - d.round()).abs() < 1e-12);
        }
    }

    #[test]
    fn cis_is_unit() {
        let z = cis(1.3f32);
        assert!((z.norm() - 1.0).abs() < 1e-6);
    }
}
