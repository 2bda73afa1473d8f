//! Complete Bell polynomials.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Add;

use crate::exact_kernel::binomial;
use crate::rational::ExactRational;
use crate::real::BigReal;

/// Values that can be scaled by a binomial coefficient.
pub trait BellScalar: Clone + for<'a> Add<&'a Self, Output = Self> {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn scale(&self, c: u64) -> Self;
}

impl BellScalar for ExactRational {
    fn zero_like(&self) -> Self {
        ExactRational::zero()
    }
    fn one_like(&self) -> Self {
        ExactRational::one()
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: u64) -> Self {
        self * &ExactRational::from(c as i64)
    }
}

impl BellScalar for BigReal {
    fn zero_like(&self) -> Self {
        BigReal::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        BigReal::one(self.prec())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: u64) -> Self {
        self * &BigReal::from_u64(c)
    }
}

impl BellScalar for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: u64) -> Self {
        self * c as f64
    }
}

/// `[Y_0, Y_1, ..., Y_m]` for arguments `xs = [x_1, ..., x_m]`, by
/// `Y_m = sum_{j<m} C(m-1, j) Y_j x_{m-j}`. An empty slice gives `[1]` as an
/// integer-typed one, so callers pass at least one argument for the scalar type.
pub fn bell_complete_all<T: BellScalar>(xs: &[T]) -> Vec<T> {
    let Some(first) = xs.first() else {
        return Vec::new();
    };
    let mut y = vec![first.one_like()];
    for m in 1..=xs.len() {
        let mut acc = first.zero_like();
        for j in 0..m {
            let c = binomial(m as u64 - 1, j as u64);
            let c = num_traits::ToPrimitive::to_u64(&c).expect("binomial fits u64");
            acc = acc + &y[j].mul_ref(&xs[m - j - 1]).scale(c);
        }
        y.push(acc);
    }
    y
}

/// `Y_m(x_1, ..., x_m)` with `m = xs.len()`; `Y_0 = 1`.
pub fn bell_complete<T: BellScalar>(xs: &[T]) -> Option<T> {
    bell_complete_all(xs).pop()
}

/// Exact Bell value `Y_m`, also defined for `m = 0`.
pub fn bell_complete_exact(xs: &[ExactRational]) -> ExactRational {
    bell_complete(xs).unwrap_or_else(ExactRational::one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn low_orders() {
        let (a, b, c) = (q(2, 3), q(-5, 7), q(3, 11));
        assert_eq!(bell_complete_exact(&[]), q(1, 1));
        assert_eq!(bell_complete_exact(&[a.clone()]), a);
        assert_eq!(bell_complete_exact(&[a.clone(), b.clone()]), &a * &a + b.clone());
        let y3 = bell_complete_exact(&[a.clone(), b.clone(), c.clone()]);
        assert_eq!(y3, &(&a * &a) * &a + q(3, 1) * &a * &b + c);
    }

    /// exp(sum x_m t^m/m!) with all x_m = 1 gives Bell numbers 1, 1, 2, 5, 15, 52.
    #[test]
    fn bell_numbers() {
        let ys = bell_complete_all(&[1.0f64; 5]);
        assert_eq!(ys, vec![1.0, 1.0, 2.0, 5.0, 15.0, 52.0]);
    }
}
