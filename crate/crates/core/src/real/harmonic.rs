//! Generalized harmonic numbers.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{domain, Result};
use crate::rational::ExactRational;

/// `H_n^{(r)} = sum_{k<=n} k^{-r}`, exact.
pub fn harmonic_generalized(n: u64, r: u32) -> Result<ExactRational> {
    if n == 0 || r == 0 {
        return Err(domain("harmonic numbers need n >= 1 and r >= 1"));
    }
    let mut acc = ExactRational::zero();
    for k in 1..=n {
        acc += &ExactRational::new(1, num_traits::pow(BigInt::from(k), r as usize))?;
    }
    Ok(acc)
}

/// `[H_1^{(r)}, ..., H_n^{(r)}]` in f64, summed with compensation.
pub fn harmonic_f64_table(n: usize, r: i32) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut s = crate::numeric::Neumaier::default();
    for k in 1..=n {
        s.add(libm::pow(k as f64, -r as f64));
        out.push(s.value());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::real::{bits_for_digits, gamma, BigReal};

    #[test]
    fn exact_values() {
        assert_eq!(harmonic_generalized(2, 1).unwrap(), q(3, 2));
        assert_eq!(harmonic_generalized(3, 2).unwrap(), q(49, 36));
        assert!(harmonic_generalized(0, 1).is_err());
    }

    /// H_n^{(r)} = ζ(r) - ψ^{(r-1)}(n+1) (-1)^r / (r-1)!; at r = 2, ψ'(1) - ψ'(n+1).
    #[test]
    fn polygamma_consistency() {
        let p = bits_for_digits(50);
        let h = BigReal::from_rational(&harmonic_generalized(3, 2).unwrap(), p);
        let one = BigReal::one(p);
        let via = gamma::polygamma(1, &one).unwrap() - gamma::polygamma(1, &BigReal::from_i64(4).with_prec(p)).unwrap();
        assert!((h - via).abs() < BigReal::pow10(-42, p));
    }

    #[test]
    fn float_table() {
        let t = harmonic_f64_table(4, 1);
        assert!((t[3] - 25.0 / 12.0).abs() < 1e-15);
    }
}
