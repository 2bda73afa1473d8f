//! Truncated formal Laurent series over exact rationals, and the expansions of
//! `1/ln^k(1-z)` and `(1/ln(1-z) + 1/z)^k`.

use alloc::borrow::Cow;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{domain, Error, Result};
use crate::exact_kernel::{binomial, pn_table, PnRoute, PnTable};
use crate::rational::ExactRational;
use crate::report::{combine_exact, VerificationReport};

/// `sum_{m = m_min}^{N} c_m z^m`, known exactly through `z^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    m_min: i64,
    coeffs: Vec<ExactRational>,
}

impl TruncatedSeries {
    /// Series whose first coefficient belongs to `z^{m_min}`. An empty vector
    /// gives a series known only through `z^{m_min - 1}`.
    pub fn new(m_min: i64, coeffs: Vec<ExactRational>) -> Self {
        Self { m_min, coeffs }
    }

    /// Zero through `z^order`.
    pub fn zero(m_min: i64, order: i64) -> Self {
        let len = (order - m_min + 1).max(0) as usize;
        Self::new(m_min, vec![ExactRational::zero(); len])
    }

    /// `c z^m`, known through `z^order`.
    pub fn monomial(m: i64, c: ExactRational, order: i64) -> Self {
        let mut s = Self::zero(m, order);
        if let Some(first) = s.coeffs.first_mut() {
            *first = c;
        }
        s
    }

    /// `1/(1-z)` through `z^order`.
    pub fn geometric(order: i64) -> Self {
        Self::new(0, vec![ExactRational::one(); (order + 1).max(0) as usize])
    }

    pub fn m_min(&self) -> i64 {
        self.m_min
    }

    /// Truncation order `N`.
    pub fn order(&self) -> i64 {
        self.m_min + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Coefficient of `z^m`: zero below `m_min`, `None` past the order.
    pub fn coeff(&self, m: i64) -> Option<ExactRational> {
        if m > self.order() {
            None
        } else if m < self.m_min {
            Some(ExactRational::zero())
        } else {
            Some(self.coeffs[(m - self.m_min) as usize].clone())
        }
    }

    fn at(&self, m: i64) -> Cow<'_, ExactRational> {
        if m < self.m_min || m > self.order() {
            Cow::Owned(ExactRational::zero())
        } else {
            Cow::Borrowed(&self.coeffs[(m - self.m_min) as usize])
        }
    }

    /// Drops every term past `z^order`.
    pub fn truncate(&self, order: i64) -> Self {
        let len = (order.min(self.order()) - self.m_min + 1).max(0) as usize;
        Self::new(self.m_min, self.coeffs[..len].to_vec())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.m_min + k, self.coeffs.clone())
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.m_min, self.coeffs.iter().map(|v| v * c).collect())
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.m_min + i as i64)
    }

    /// Nonzero coefficients with negative exponent.
    pub fn pole_part(&self) -> Vec<(i64, ExactRational)> {
        (self.m_min..0.min(self.order() + 1))
            .filter_map(|m| {
                let c = self.at(m);
                (!c.is_zero()).then(|| (m, c.into_owned()))
            })
            .collect()
    }

    pub fn is_pole_free(&self) -> bool {
        self.pole_part().is_empty()
    }

    /// Nonzero entries of `self - other` through the smaller order.
    pub fn difference(&self, other: &Self) -> Vec<(i64, ExactRational)> {
        let lo = self.m_min.min(other.m_min);
        let hi = self.order().min(other.order());
        (lo..=hi)
            .filter_map(|m| {
                let d = self.at(m).into_owned() - other.at(m).as_ref();
                (!d.is_zero()).then_some((m, d))
            })
            .collect()
    }

    pub fn derivative(&self) -> Self {
        let start = if self.m_min == 0 { 1 } else { self.m_min };
        let coeffs = (start..=self.order())
            .map(|m| self.at(m).into_owned() * ExactRational::from(m))
            .collect();
        Self::new(start - 1, coeffs)
    }

    /// Reciprocal by triangular solve. The result starts at `z^{-v}` for
    /// valuation `v` and is known through `z^{N-2v}`.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let a = &self.coeffs[(v - self.m_min) as usize..];
        let a0_inv = a[0].recip()?;
        let mut b: Vec<ExactRational> = Vec::with_capacity(a.len());
        b.push(a0_inv.clone());
        for k in 1..a.len() {
            let mut acc = ExactRational::zero();
            for j in 1..=k {
                if !a[j].is_zero() {
                    acc += &(&a[j] * &b[k - j]);
                }
            }
            b.push(-(acc * &a0_inv));
        }
        Ok(Self::new(-v, b))
    }

    /// `self^k` by repeated multiplication, `k >= 1`.
    pub fn powi(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(domain("series power needs k >= 1"));
        }
        let mut out = self.clone();
        for _ in 1..k {
            out = &out * self;
        }
        Ok(out)
    }
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let lo = self.m_min.min(rhs.m_min);
        let hi = self.order().min(rhs.order());
        let coeffs = (lo..=hi).map(|m| self.at(m).into_owned() + rhs.at(m).as_ref()).collect();
        TruncatedSeries::new(lo, coeffs)
    }
}

impl Sub<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.m_min, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Exact through `min(N_a + m_b, N_b + m_a)`.
impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let lo = self.m_min + rhs.m_min;
        let hi = (self.order() + rhs.m_min).min(rhs.order() + self.m_min);
        let mut coeffs = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for m in lo..=hi {
            let mut acc = ExactRational::zero();
            for i in self.m_min..=(m - rhs.m_min) {
                let a = self.at(i);
                if a.is_zero() {
                    continue;
                }
                acc += &(a.as_ref() * rhs.at(m - i).as_ref());
            }
            coeffs.push(acc);
        }
        TruncatedSeries::new(lo, coeffs)
    }
}

/// `-ln(1-z)/z = sum z^k/(k+1)` through `z^order`.
pub fn neg_log_ratio(order: i64) -> TruncatedSeries {
    TruncatedSeries::new(0, (0..=order).map(|k| ExactRational::frac(1, k + 1)).collect())
}

/// `1/ln(1-z)` through `z^order`, by inverting `-ln(1-z)/z`.
pub fn inv_log(order: i64) -> TruncatedSeries {
    let inv = neg_log_ratio(order + 1).inverse().expect("leading coefficient 1");
    -&inv.shift(-1)
}

/// `1/z + 1/ln(1-z)` with `n_terms` coefficients, `z^0` through
/// `z^{n_terms - 1}`. Independent of any p-table.
pub fn base_series(n_terms: usize) -> Result<TruncatedSeries> {
    if n_terms < 1 {
        return Err(domain("base series needs N >= 1"));
    }
    let l = inv_log(n_terms as i64 - 1);
    let s = &l + &TruncatedSeries::monomial(-1, ExactRational::one(), n_terms as i64 - 1);
    debug_assert!(s.at(-1).is_zero());
    Ok(TruncatedSeries::new(0, s.coeffs[1..].to_vec()))
}

/// `1/ln^k(1-z)` through `z^{n_terms - 1}`, including the pole part down to
/// `z^{-k}`.
pub fn inv_log_power(k: u32, n_terms: usize) -> Result<TruncatedSeries> {
    if k < 1 {
        return Err(domain("inverse log power needs k >= 1"));
    }
    if n_terms < 1 {
        return Err(domain("series needs N >= 1"));
    }
    let extra = n_terms + k as usize - 1;
    let base = base_series(extra)?;
    let l = &base - &TruncatedSeries::monomial(-1, ExactRational::one(), extra as i64 - 1);
    Ok(l.powi(k)?.truncate(n_terms as i64 - 1))
}

/// `(1/ln(1-z) + 1/z)^k` through `z^{n_terms - 1}`.
pub fn sum_power(k: u32, n_terms: usize) -> Result<TruncatedSeries> {
    if k < 1 {
        return Err(domain("sum power needs k >= 1"));
    }
    base_series(n_terms)?.powi(k)
}

/// `sum_{j=0}^{k} C(k,j) z^{-(k-j)} / ln^j(1-z)`, the binomial expansion of
/// `sum_power(k)` through the inverse-log powers. Pole cancellation is left to
/// the caller to observe.
pub fn binomial_reassembly(k: u32, n_terms: usize) -> Result<TruncatedSeries> {
    let order = n_terms as i64 - 1;
    let mut acc = TruncatedSeries::monomial(-(k as i64), ExactRational::one(), order);
    for j in 1..=k {
        let c = ExactRational::from_int(binomial(k as u64, j as u64));
        // the shift by -(k-j) lowers the order, so expand further first
        let l = inv_log_power(j, n_terms + (k - j) as usize)?;
        acc = &acc + &l.shift(-((k - j) as i64)).scale(&c);
    }
    Ok(acc.truncate(order))
}

fn table_for(n: usize) -> Result<Cow<'static, PnTable>> {
    let t = pn_table();
    if t.n_max() >= n {
        Ok(Cow::Borrowed(t))
    } else {
        Ok(Cow::Owned(PnTable::build(n, PnRoute::Recursion)?))
    }
}

fn r(v: i64) -> ExactRational {
    ExactRational::from(v)
}

/// Bracketed p-combinations of the displayed expansions.
struct PForms<'a> {
    t: &'a PnTable,
}

impl PForms<'_> {
    fn p(&self, n: i64) -> &ExactRational {
        self.t.p(n as usize)
    }

    fn lin(&self, terms: &[(i64, i64)]) -> ExactRational {
        terms.iter().map(|&(c, idx)| r(c) * self.p(idx)).sum()
    }

    /// `(n+1)p_{n+3} - n p_{n+2}`
    fn two(&self, n: i64) -> ExactRational {
        self.lin(&[(n + 1, n + 3), (-n, n + 2)])
    }

    /// `(n+1)(n+2)p_{n+4} - (n+1)(2n+1)p_{n+3} + n^2 p_{n+2}`
    fn three(&self, n: i64) -> ExactRational {
        self.lin(&[((n + 1) * (n + 2), n + 4), (-(n + 1) * (2 * n + 1), n + 3), (n * n, n + 2)])
    }

    fn four(&self, n: i64) -> ExactRational {
        self.lin(&[
            ((n + 1) * (n + 2) * (n + 3), n + 5),
            (-3 * (n + 1) * (n + 1) * (n + 2), n + 4),
            ((n + 1) * (3 * n * n + 3 * n + 1), n + 3),
            (-n * n * n, n + 2),
        ])
    }

    fn five(&self, n: i64) -> ExactRational {
        self.lin(&[
            ((n + 1) * (n + 2) * (n + 3) * (n + 4), n + 6),
            (-2 * (n + 1) * (n + 2) * (n + 3) * (2 * n + 3), n + 5),
            ((n + 1) * (n + 2) * (6 * n * n + 12 * n + 7), n + 4),
            (-(n + 1) * (2 * n + 1) * (2 * n * n + 2 * n + 1), n + 3),
            (n * n * n * n, n + 2),
        ])
    }
}

fn from_fn(m_min: i64, order: i64, f: impl Fn(i64) -> ExactRational) -> TruncatedSeries {
    TruncatedSeries::new(m_min, (m_min..=order).map(f).collect())
}

fn pole(coeffs: &[(i64, i64, i64)], m: i64) -> ExactRational {
    coeffs
        .iter()
        .find(|&&(e, _, _)| e == m)
        .map(|&(_, a, b)| ExactRational::frac(a, b))
        .unwrap_or_else(ExactRational::zero)
}

/// `1/ln^k(1-z)` assembled from the displayed p-coefficient formulas,
/// `k = 1..=5`, through `z^{n_terms - 1}`.
pub fn printed_inv_log_power(k: u32, n_terms: usize) -> Result<TruncatedSeries> {
    let order = n_terms as i64 - 1;
    let t = table_for(n_terms + 8)?;
    let f = PForms { t: &t };
    let s = match k {
        1 => from_fn(-1, order, |m| if m < 0 { r(-1) } else { f.p(m + 2).clone() }),
        2 => {
            let poles = [(-2, 1, 1), (-1, -1, 1)];
            from_fn(-2, order, |m| match m {
                m if m < 0 => pole(&poles, m),
                0 => f.p(3).clone(),
                n => f.two(n),
            })
        }
        3 => {
            let poles = [(-3, -1, 1), (-2, 3, 2), (-1, -1, 2)];
            from_fn(-3, order, |m| match m {
                m if m <= 0 => pole(&poles, m),
                n => f.three(n) * ExactRational::frac(1, 2),
            })
        }
        4 => {
            let poles = [(-4, 1, 1), (-3, -2, 1), (-2, 7, 6), (-1, -1, 6), (0, -1, 720)];
            from_fn(-4, order, |m| match m {
                m if m <= 0 => pole(&poles, m),
                n => f.four(n) * ExactRational::frac(1, 6),
            })
        }
        5 => {
            let poles = [(-5, -1, 1), (-4, 5, 2), (-3, -25, 12), (-2, 5, 8), (-1, -1, 24)];
            from_fn(-5, order, |m| match m {
                m if m <= 0 => pole(&poles, m),
                n => f.five(n) * ExactRational::frac(1, 24),
            })
        }
        _ => return Err(Error::Unsupported(format!("no displayed expansion for k = {k}"))),
    };
    Ok(s)
}

/// The printed low-order constants of the cube expansion, `z^0..z^3`.
pub const CUBE_PRINTED_CONSTANTS: [(i64, i64); 4] = [(1, 8), (1, 16), (-1, 24), (133, 4320)];

/// `(1/ln(1-z) + 1/z)^k` assembled from the displayed formulas, `k = 1..=5`,
/// through `z^{n_terms - 1}`. For `k = 3` the four printed constants are used
/// verbatim below `z^4`.
pub fn printed_sum_power(k: u32, n_terms: usize) -> Result<TruncatedSeries> {
    let order = n_terms as i64 - 1;
    let t = table_for(n_terms + 8)?;
    let f = PForms { t: &t };
    let s = match k {
        1 => from_fn(0, order, |m| f.p(m + 2).clone()),
        2 => from_fn(0, order, |m| match m {
            0 => ExactRational::frac(1, 4),
            n => f.lin(&[(n + 3, n + 3), (-n, n + 2)]),
        }),
        3 => from_fn(0, order, |m| match m {
            0..=3 => {
                let (a, b) = CUBE_PRINTED_CONSTANTS[m as usize];
                ExactRational::frac(a, b)
            }
            n => {
                f.lin(&[((n + 4) * (n + 5), n + 4), (-(n + 1) * (2 * n + 7), n + 3), (n * n, n + 2)])
                    * ExactRational::frac(1, 2)
            }
        }),
        4 => from_fn(0, order, |m| {
            let mut v = if m == 0 { ExactRational::frac(-1, 720) } else { f.four(m) * ExactRational::frac(1, 6) };
            let n = m + 1;
            v += &(f.three(n) * r(2));
            v += &(f.lin(&[(n + 2, n + 4), (-(n + 1), n + 3)]) * r(6));
            v += &(f.p(n + 4) * &r(4));
            v
        }),
        5 => from_fn(0, order, |m| {
            let mut v = if m == 0 { ExactRational::zero() } else { f.five(m) * ExactRational::frac(1, 24) };
            let n = m + 1;
            v += &(f.four(n) * ExactRational::frac(5, 6));
            v += &(f.lin(&[((n + 2) * (n + 3), n + 5), (-(n + 2) * (2 * n + 3), n + 4), ((n + 1) * (n + 1), n + 3)])
                * r(5));
            v += &(f.lin(&[(n + 3, n + 5), (-(n + 2), n + 4)]) * r(10));
            v += &(f.p(n + 5) * &r(5));
            v
        }),
        _ => return Err(Error::Unsupported(format!("no displayed expansion for k = {k}"))),
    };
    Ok(s)
}

/// Pole-cancelling polynomial in `1/z` for the k-th integration by parts of
/// the digamma representation: the bracket is `k!/ln^{k+1}(1-z) + P_k(1/z)`.
/// Entries are `(exponent, coefficient)` with negative exponents.
pub fn ibp_bracket_poles(k: u32) -> Result<Vec<(i64, ExactRational)>> {
    let fact = ExactRational::from_int(crate::exact_kernel::factorial(k as u64));
    let l = inv_log_power(k + 1, 1)?;
    Ok(l.pole_part().into_iter().map(|(m, c)| (m, -(c * &fact))).collect())
}

/// The brackets as displayed in the repeated integration by parts, `k = 1..=4`.
pub fn printed_ibp_bracket_poles(k: u32) -> Result<Vec<(i64, ExactRational)>> {
    let raw: &[(i64, i64)] = match k {
        1 => &[(-2, -1), (-1, 1)],
        2 => &[(-3, 2), (-2, -3), (-1, 1)],
        3 => &[(-4, -6), (-3, 12), (-2, -7), (-1, 1)],
        4 => &[(-5, 24), (-4, -60), (-3, 57), (-2, -22), (-1, 1)],
        _ => return Err(Error::Unsupported(format!("no displayed bracket for k = {k}"))),
    };
    Ok(raw.iter().map(|&(m, c)| (m, r(c))).collect())
}

/// Poles left over when the given `1/z` polynomial is added to
/// `k!/ln^{k+1}(1-z)`; empty iff the bracket is regular at `z = 0`.
pub fn bracket_residual_poles(k: u32, poly: &[(i64, ExactRational)]) -> Result<Vec<(i64, ExactRational)>> {
    let fact = ExactRational::from_int(crate::exact_kernel::factorial(k as u64));
    let mut s = inv_log_power(k + 1, 1)?.scale(&fact);
    for (m, c) in poly {
        s = &s + &TruncatedSeries::monomial(*m, c.clone(), 0);
    }
    Ok(s.pole_part())
}

/// `(n+3)p_{n+3} - n p_{n+2} = sum_{k=1}^{n+1} p_{k+1} p_{n-k+3}` for `1 <= n <= N`.
pub fn corollary1_check(n_max: usize) -> Result<VerificationReport> {
    if n_max < 2 {
        return Err(domain("corollary check needs N >= 2"));
    }
    let t = table_for(n_max + 3)?;
    let parts = (1..=n_max as i64)
        .map(|n| {
            let lhs = r(n + 3) * t.p(n as usize + 3) - r(n) * t.p(n as usize + 2);
            let rhs: ExactRational = (1..=n + 1).map(|k| t.p(k as usize + 1) * t.p((n - k + 3) as usize)).sum();
            VerificationReport::exact("COR1", lhs, rhs).param("n", n)
        })
        .collect();
    Ok(combine_exact("COR1", parts))
}

/// `sum_{n>=2} (n-1) p_{n+1} z^{n-2} = -1/z^2 + 1/((1-z) ln^2(1-z))`,
/// coefficientwise from `z^{-2}` through `z^N`.
pub fn derivative_identity_check(n_max: usize) -> Result<VerificationReport> {
    if n_max < 3 {
        return Err(domain("derivative identity check needs N >= 3"));
    }
    let order = n_max as i64;
    let t = table_for(n_max + 3)?;
    let lhs = from_fn(-2, order, |m| if m < 0 { r(0) } else { r(m + 1) * t.p(m as usize + 3) });
    let l2 = inv_log_power(2, n_max + 1)?;
    let rhs = &(&TruncatedSeries::geometric(order + 2) * &l2)
        - &TruncatedSeries::monomial(-2, ExactRational::one(), order);
    let parts = (-2..=order)
        .map(|m| {
            VerificationReport::exact("EQ15", lhs.at(m).into_owned(), rhs.at(m).into_owned()).param("m", m)
        })
        .collect();
    Ok(combine_exact("EQ15", parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn coeffs(s: &TruncatedSeries) -> Vec<ExactRational> {
        s.coeffs().to_vec()
    }

    #[test]
    fn base_series_values() {
        let b = base_series(4).unwrap();
        assert_eq!(coeffs(&b), vec![q(1, 2), q(1, 12), q(1, 24), q(19, 720)]);
        assert_eq!(base_series(5).unwrap().coeff(4).unwrap(), q(3, 160));
        assert_eq!(inv_log(3).coeff(-1).unwrap(), q(-1, 1));
        assert!(base_series(0).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let s = TruncatedSeries::new(-1, vec![q(2, 1), q(1, 3), q(-5, 7), q(1, 1), q(0, 1)]);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.m_min(), 1);
        let prod = &s * &inv;
        assert_eq!(prod.coeff(0).unwrap(), q(1, 1));
        for m in 1..=prod.order() {
            assert!(prod.coeff(m).unwrap().is_zero());
        }
        assert!(TruncatedSeries::zero(0, 4).inverse().is_err());
    }

    #[test]
    fn derivative_of_log_ratio() {
        // d/dz sum z^k/(k+1) = sum k z^{k-1}/(k+1)
        let d = neg_log_ratio(4).derivative();
        assert_eq!(d.m_min(), 0);
        assert_eq!(coeffs(&d), vec![q(1, 2), q(2, 3), q(3, 4), q(4, 5)]);
    }

    #[test]
    fn inverse_log_powers() {
        let l2 = inv_log_power(2, 6).unwrap();
        assert_eq!(l2.coeff(-2).unwrap(), q(1, 1));
        assert_eq!(l2.coeff(-1).unwrap(), q(-1, 1));
        let t = pn_table();
        assert_eq!(l2.coeff(1).unwrap(), q(2, 1) * t.p(4) - t.p(3).clone());
        let l3 = inv_log_power(3, 4).unwrap();
        assert_eq!(l3.coeff(-3).unwrap(), q(-1, 1));
        assert_eq!(l3.coeff(-2).unwrap(), q(3, 2));
        assert_eq!(l3.coeff(-1).unwrap(), q(-1, 2));
        assert!(inv_log_power(0, 4).is_err());
        for k in 1..=5 {
            let ours = inv_log_power(k, 30).unwrap();
            let printed = printed_inv_log_power(k, 30).unwrap();
            assert!(ours.difference(&printed).is_empty(), "k = {k}");
        }
    }

    #[test]
    fn sum_powers() {
        assert_eq!(sum_power(2, 3).unwrap().coeff(0).unwrap(), q(1, 4));
        let s3 = sum_power(3, 4).unwrap();
        assert_eq!(coeffs(&s3), vec![q(1, 8), q(1, 16), q(1, 24), q(133, 4320)]);
        assert_eq!(sum_power(1, 10).unwrap(), base_series(10).unwrap());
        for k in [1, 2, 4, 5] {
            let diff = sum_power(k, 30).unwrap().difference(&printed_sum_power(k, 30).unwrap());
            assert!(diff.is_empty(), "k = {k}");
        }
        // only the printed z^2 constant differs
        let diff = sum_power(3, 30).unwrap().difference(&printed_sum_power(3, 30).unwrap());
        assert_eq!(diff, vec![(2, q(1, 12))]);
    }

    #[test]
    fn powering_and_reassembly() {
        let n = 25;
        let b = base_series(n).unwrap();
        for k in 2..=5 {
            let s = sum_power(k, n).unwrap();
            assert_eq!(s, &sum_power(k - 1, n).unwrap() * &b);
            let re = binomial_reassembly(k, n).unwrap();
            assert!(re.is_pole_free());
            assert!(re.difference(&s).is_empty());
        }
    }

    #[test]
    fn integration_by_parts_brackets() {
        for k in 1..=3 {
            assert_eq!(ibp_bracket_poles(k).unwrap(), printed_ibp_bracket_poles(k).unwrap());
        }
        let fixed = ibp_bracket_poles(4).unwrap();
        let expect: Vec<_> = [(-5, 24), (-4, -60), (-3, 50), (-2, -15), (-1, 1)].iter().map(|&(m, c)| (m, r(c))).collect();
        assert_eq!(fixed, expect);
        assert!(bracket_residual_poles(4, &fixed).unwrap().is_empty());
        let left = bracket_residual_poles(4, &printed_ibp_bracket_poles(4).unwrap()).unwrap();
        assert_eq!(left, vec![(-3, r(7)), (-2, r(-7))]);
    }

    #[test]
    fn corollary_and_derivative_identity() {
        let c = corollary1_check(40).unwrap();
        assert!(c.pass);
        assert_eq!(c.terms, Some(40));
        let d = derivative_identity_check(30).unwrap();
        assert!(d.pass);
        assert!(corollary1_check(1).is_err());
    }

    #[test]
    fn truncation_bookkeeping() {
        let a = TruncatedSeries::new(-1, vec![q(1, 1); 5]);
        let b = TruncatedSeries::new(0, vec![q(1, 1); 3]);
        assert_eq!(a.order(), 3);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 1);
        assert_eq!(a.coeff(-3).unwrap(), q(0, 1));
        assert!(a.coeff(4).is_none());
    }
}
