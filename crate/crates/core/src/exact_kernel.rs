//! Exact combinatorics: Stirling numbers, the p_n family by three routes,
//! Nörlund numbers and both Bernoulli families.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::race::OnceBox;

use crate::error::{domain, Error, Result};
use crate::rational::ExactRational;
use crate::real::{consts, BigReal};

/// Default cap on table sizes.
pub const DEFAULT_N_MAX: usize = 200;

/// Signed Stirling numbers of the first kind and Stirling numbers of the
/// second kind, rows `0..=n_max`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    first: Vec<Vec<BigInt>>,
    second: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(n_max: usize) -> Self {
        let mut first = vec![vec![BigInt::one()]];
        let mut second = vec![vec![BigInt::one()]];
        for n in 0..n_max {
            let prev_s = &first[n];
            let prev_t = &second[n];
            let mut s = vec![BigInt::zero(); n + 2];
            let mut t = vec![BigInt::zero(); n + 2];
            for k in 1..=n + 1 {
                let a = prev_s.get(k - 1).cloned().unwrap_or_default();
                let b = prev_s.get(k).cloned().unwrap_or_default();
                // s(n+1,k) = s(n,k-1) - n s(n,k)
                s[k] = a - b * n;
                let a = prev_t.get(k - 1).cloned().unwrap_or_default();
                let b = prev_t.get(k).cloned().unwrap_or_default();
                // S(n+1,k) = S(n,k-1) + k S(n,k)
                t[k] = a + b * k;
            }
            first.push(s);
            second.push(t);
        }
        Self { first, second }
    }

    pub fn n_max(&self) -> usize {
        self.first.len() - 1
    }

    fn check(&self, n: i64, k: i64) -> Result<(usize, usize)> {
        if n < 0 || k < 0 {
            return Err(domain(format!("negative Stirling index ({n},{k})")));
        }
        if k > n {
            return Err(domain(format!("Stirling index k={k} exceeds n={n}")));
        }
        if n as usize > self.n_max() {
            return Err(domain(format!("n={n} exceeds table size {}", self.n_max())));
        }
        Ok((n as usize, k as usize))
    }

    pub fn first(&self, n: i64, k: i64) -> Result<&BigInt> {
        let (n, k) = self.check(n, k)?;
        Ok(&self.first[n][k])
    }

    pub fn second(&self, n: i64, k: i64) -> Result<&BigInt> {
        let (n, k) = self.check(n, k)?;
        Ok(&self.second[n][k])
    }

    /// Unsigned first kind, i.e. coefficients of the rising factorial.
    pub fn first_unsigned(&self, n: i64, k: i64) -> Result<BigInt> {
        let v = self.first(n, k)?;
        Ok(if (n - k) % 2 == 0 { v.clone() } else { -v })
    }
}

static STIRLING: OnceBox<StirlingTable> = OnceBox::new();

/// Shared table with `DEFAULT_N_MAX` rows.
pub fn stirling_table() -> &'static StirlingTable {
    STIRLING.get_or_init(|| Box::new(StirlingTable::new(DEFAULT_N_MAX)))
}

pub fn stirling_first(n: i64, k: i64) -> Result<ExactRational> {
    Ok(ExactRational::from_int(stirling_table().first(n, k)?.clone()))
}

pub fn stirling_second(n: i64, k: i64) -> Result<ExactRational> {
    Ok(ExactRational::from_int(stirling_table().second(n, k)?.clone()))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `p_n` from the Stirling-sum definition.
pub fn p_stirling(n: i64) -> Result<ExactRational> {
    if n < 2 {
        return Err(domain(format!("p_n needs n >= 2, got {n}")));
    }
    let t = stirling_table();
    if (n - 1) as usize > t.n_max() {
        return Err(domain(format!("n={n} exceeds N_max={}", t.n_max() + 1)));
    }
    p_stirling_with(t, n as usize)
}

fn p_stirling_with(t: &StirlingTable, n: usize) -> Result<ExactRational> {
    let m = (n - 1) as i64;
    let mut acc = ExactRational::zero();
    for k in 1..=m {
        acc += &ExactRational::new(t.first(m, k)?.clone(), k + 1)?;
    }
    let f = ExactRational::from_int(factorial(m as u64));
    let acc = acc.checked_div(&f)?;
    Ok(if n.is_multiple_of(2) { acc } else { -acc })
}

/// `p_2..=p_n` from the convolution recursion, seeded with `p_2 = 1/2`.
pub fn p_recursion_table(n: usize) -> Vec<ExactRational> {
    // out[i] = p_{i+2}
    let mut out: Vec<ExactRational> = Vec::with_capacity(n.saturating_sub(1));
    if n < 2 {
        return out;
    }
    out.push(ExactRational::frac(1, 2));
    for m in 2..n {
        // p_{m+1} = 1/(m+1) - sum_{j=1}^{m-1} p_{j+1}/(m-j+1)
        let mut v = ExactRational::frac(1, m as i64 + 1);
        for j in 1..m {
            let d = ExactRational::frac(1, (m - j + 1) as i64);
            v -= &(&out[j - 1] * &d);
        }
        out.push(v);
    }
    out
}

pub fn p_recursion(n: i64) -> Result<ExactRational> {
    if n < 2 {
        return Err(domain(format!("p_n needs n >= 2, got {n}")));
    }
    Ok(p_recursion_table(n as usize).pop().expect("nonempty"))
}

/// `B_n^{(n)}` computed directly as `(-1)^n ∫_0^1 x(x+1)...(x+n-1) dx`.
pub fn norlund_direct(t: &StirlingTable, n: usize) -> Result<ExactRational> {
    if n == 0 {
        return Ok(ExactRational::one());
    }
    let mut acc = ExactRational::zero();
    for k in 1..=n as i64 {
        acc += &ExactRational::new(t.first_unsigned(n as i64, k)?, k + 1)?;
    }
    Ok(if n.is_multiple_of(2) { acc } else { -acc })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PnRoute {
    StirlingSum,
    Recursion,
    NorlundBridge,
}

impl PnRoute {
    pub const ALL: [PnRoute; 3] = [PnRoute::StirlingSum, PnRoute::Recursion, PnRoute::NorlundBridge];

    pub fn name(self) -> &'static str {
        match self {
            PnRoute::StirlingSum => "stirling_sum",
            PnRoute::Recursion => "recursion",
            PnRoute::NorlundBridge => "norlund_bridge",
        }
    }
}

impl core::str::FromStr for PnRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PnRoute::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(s.into()))
    }
}

/// Memoized `p_2..=p_N`. Index 1 is never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct PnTable {
    values: Vec<ExactRational>,
    route: PnRoute,
}

impl PnTable {
    pub fn build(n_max: usize, route: PnRoute) -> Result<Self> {
        if n_max < 2 {
            return Err(domain("PnTable needs N >= 2"));
        }
        let values = match route {
            PnRoute::Recursion => p_recursion_table(n_max),
            PnRoute::StirlingSum => {
                let owned;
                let t = if n_max - 1 <= DEFAULT_N_MAX {
                    stirling_table()
                } else {
                    owned = StirlingTable::new(n_max - 1);
                    &owned
                };
                (2..=n_max).map(|n| p_stirling_with(t, n)).collect::<Result<Vec<_>>>()?
            }
            PnRoute::NorlundBridge => {
                // p_{m+1} = (-1)^{m+1} (B_m^{(m)} + m B_{m-1}^{(m-1)}) / m!
                let owned;
                let t = if n_max - 1 <= DEFAULT_N_MAX {
                    stirling_table()
                } else {
                    owned = StirlingTable::new(n_max - 1);
                    &owned
                };
                let mut prev = norlund_direct(t, 0)?;
                let mut out = Vec::with_capacity(n_max - 1);
                for m in 1..n_max {
                    let cur = norlund_direct(t, m)?;
                    let v = (&cur + &(&prev * &ExactRational::from(m as i64)))
                        .checked_div(&ExactRational::from_int(factorial(m as u64)))?;
                    out.push(if m % 2 == 1 { v } else { -v });
                    prev = cur;
                }
                out
            }
        };
        Ok(Self { values, route })
    }

    pub fn route(&self) -> PnRoute {
        self.route
    }

    /// Largest stored index.
    pub fn n_max(&self) -> usize {
        self.values.len() + 1
    }

    /// `p_n` for `2 <= n <= N`.
    pub fn get(&self, n: usize) -> Option<&ExactRational> {
        n.checked_sub(2).and_then(|i| self.values.get(i))
    }

    /// `p_n`, panicking outside the table.
    pub fn p(&self, n: usize) -> &ExactRational {
        self.get(n).unwrap_or_else(|| panic!("p_{n} outside table 2..={}", self.n_max()))
    }

    /// `(n, p_n)` pairs in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &ExactRational)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 2, v))
    }
}

static PN_DEFAULT: OnceBox<PnTable> = OnceBox::new();

/// Shared recursion-route table up to `DEFAULT_N_MAX + 1`.
pub fn pn_table() -> &'static PnTable {
    PN_DEFAULT.get_or_init(|| {
        Box::new(PnTable::build(DEFAULT_N_MAX + 1, PnRoute::Recursion).expect("static size"))
    })
}

/// Nörlund numbers `B_n^{(n)}`, `n = 0..=N`, derived from a p-table.
#[derive(Debug, Clone, PartialEq)]
pub struct NorlundTable {
    values: Vec<ExactRational>,
}

impl NorlundTable {
    pub fn from_pn(pn: &PnTable, n_max: usize) -> Result<Self> {
        if n_max + 1 > pn.n_max() {
            return Err(domain(format!("need p up to {}, table has {}", n_max + 1, pn.n_max())));
        }
        let mut values = Vec::with_capacity(n_max + 1);
        let mut partial = ExactRational::zero();
        let mut fact = BigInt::one();
        for n in 0..=n_max {
            if n > 0 {
                partial += pn.p(n + 1);
                fact *= n;
            }
            // B_n^{(n)} = (-1)^n n! (1 - sum_{k=0}^{n-1} p_{k+2})
            let v = (ExactRational::one() - &partial) * ExactRational::from_int(fact.clone());
            values.push(if n.is_multiple_of(2) { v } else { -v });
        }
        Ok(Self { values })
    }

    pub fn get(&self, n: usize) -> Option<&ExactRational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }
}

pub fn norlund(n: usize) -> Result<ExactRational> {
    let pn = pn_table();
    if n + 1 > pn.n_max() {
        return Err(domain(format!("n={n} exceeds N_max")));
    }
    Ok(NorlundTable::from_pn(pn, n)?.values.pop().expect("nonempty"))
}

const BERNOULLI_CACHE_EVEN: usize = 160;
static BERNOULLI_EVEN: OnceBox<Vec<ExactRational>> = OnceBox::new();

/// `B_0, B_2, ..., B_{2m}` through integer tangent numbers.
pub fn bernoulli_even_table(m: usize) -> Vec<ExactRational> {
    // Tangent numbers T_1..T_m by the in-place integer recurrence.
    let mut t: Vec<BigInt> = vec![BigInt::zero(); m + 1];
    if m >= 1 {
        t[1] = BigInt::one();
    }
    for k in 2..=m {
        t[k] = &t[k - 1] * (k - 1);
    }
    for k in 2..=m {
        for j in k..=m {
            t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
        }
    }
    let mut out = Vec::with_capacity(m + 1);
    out.push(ExactRational::one());
    for k in 1..=m {
        // B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))
        let four_k = BigInt::one() << (2 * k);
        let den = &four_k * (&four_k - 1u32);
        let v = ExactRational::new(&t[k] * (2 * k), den).expect("positive");
        out.push(if k % 2 == 1 { v } else { -v });
    }
    out
}

/// Classical Bernoulli number with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> ExactRational {
    if n == 1 {
        return ExactRational::frac(-1, 2);
    }
    if n % 2 == 1 {
        return ExactRational::zero();
    }
    let k = n / 2;
    let cache = BERNOULLI_EVEN.get_or_init(|| Box::new(bernoulli_even_table(BERNOULLI_CACHE_EVEN)));
    match cache.get(k) {
        Some(v) => v.clone(),
        None => bernoulli_even_table(k).pop().expect("nonempty"),
    }
}

/// `B_0..=B_n` from `sum_{k<=n} C(n+1,k) B_k = 0`; an independent oracle.
pub fn bernoulli_by_recurrence(n: usize) -> Vec<ExactRational> {
    let mut b: Vec<ExactRational> = Vec::with_capacity(n + 1);
    b.push(ExactRational::one());
    for m in 1..=n {
        let mut acc = ExactRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += &(bk * &ExactRational::from_int(binomial(m as u64 + 1, k as u64)));
        }
        b.push(-acc * ExactRational::frac(1, m as i64 + 1));
    }
    b
}

/// `sum_{k=1}^n (-1)^k (k-1)! S(n,k)`; zero for n >= 2.
pub fn signed_stirling2_sum(n: usize) -> Result<ExactRational> {
    let t = stirling_table();
    let mut acc = BigInt::zero();
    let mut fact = BigInt::one();
    for k in 1..=n {
        if k > 1 {
            fact *= k - 1;
        }
        let term = &fact * t.second(n as i64, k as i64)?;
        if k.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(ExactRational::from_int(acc))
}

/// `B_n / n` by the double sum over p-values and Stirling numbers of the second kind.
pub fn bernoulli_from_p(n: usize) -> Result<ExactRational> {
    if n == 0 {
        return Err(domain("bernoulli_from_p needs n >= 1"));
    }
    let t = stirling_table();
    let pn = pn_table();
    if n + 1 > pn.n_max() || n > t.n_max() {
        return Err(domain(format!("n={n} exceeds N_max")));
    }
    // inner(l) = sum_{k=l+1}^n (-1)^k (k-1)! S(n,k), built from the top down.
    let mut terms = vec![BigInt::zero(); n + 1];
    let mut fact = BigInt::one();
    for k in 1..=n {
        if k > 1 {
            fact *= k - 1;
        }
        let v = &fact * t.second(n as i64, k as i64)?;
        terms[k] = if k.is_multiple_of(2) { v } else { -v };
    }
    let mut acc = ExactRational::zero();
    let mut inner = BigInt::zero();
    for l in (0..n).rev() {
        inner += &terms[l + 1];
        acc += &(pn.p(l + 2) * &ExactRational::from_int(inner.clone()));
    }
    Ok(acc)
}

/// `b_n = (-1)^{n-1} n! p_{n+1}`, `b_0 = 1`.
pub fn bernoulli_second_kind(n: usize) -> Result<ExactRational> {
    if n == 0 {
        return Ok(ExactRational::one());
    }
    let pn = pn_table();
    let p = pn.get(n + 1).ok_or_else(|| domain(format!("n={n} exceeds N_max")))?;
    let v = p * &ExactRational::from_int(factorial(n as u64));
    Ok(if n % 2 == 1 { v } else { -v })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjectureCondition {
    /// `(n+1) p_{n+3} - n p_{n+2} < 0`
    NpDecreasing,
    /// `p_n < (p_{n+1} + p_{n-1})/2`
    Convex,
    /// `p_n^2 < p_{n-1} p_{n+1}`
    LogConvex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureReport {
    pub n_max: usize,
    /// `(n, holds)` for `2 <= n <= N-3`.
    pub np_decreasing: Vec<(usize, bool)>,
    /// `(n, holds)` for `3 <= n <= N-1`.
    pub convex: Vec<(usize, bool)>,
    pub log_convex: Vec<(usize, bool)>,
    pub first_counterexample: Option<(ConjectureCondition, usize)>,
}

impl ConjectureReport {
    pub fn all_hold(&self) -> bool {
        self.first_counterexample.is_none()
    }
}

pub fn conjecture_scan_with(pn: &PnTable, n_max: usize) -> Result<ConjectureReport> {
    if n_max < 5 {
        return Err(domain("conjecture scan needs N >= 5"));
    }
    if n_max > pn.n_max() {
        return Err(domain(format!("N={n_max} exceeds table size {}", pn.n_max())));
    }
    let p = |n: usize| pn.p(n);
    let np_decreasing: Vec<_> = (2..=n_max - 3)
        .map(|n| {
            let d = p(n + 3) * &ExactRational::from((n + 1) as i64) - p(n + 2) * &ExactRational::from(n as i64);
            (n, d.is_negative())
        })
        .collect();
    let half = ExactRational::frac(1, 2);
    let convex: Vec<_> = (3..n_max).map(|n| (n, *p(n) < (p(n + 1) + p(n - 1)) * &half)).collect();
    let log_convex: Vec<_> = (3..n_max).map(|n| (n, p(n) * p(n) < p(n - 1) * p(n + 1))).collect();
    let first = [
        (ConjectureCondition::NpDecreasing, &np_decreasing),
        (ConjectureCondition::Convex, &convex),
        (ConjectureCondition::LogConvex, &log_convex),
    ]
    .into_iter()
    .filter_map(|(c, v)| v.iter().find(|(_, ok)| !ok).map(|(n, _)| (c, *n)))
    .min_by_key(|(_, n)| *n);
    Ok(ConjectureReport { n_max, np_decreasing, convex, log_convex, first_counterexample: first })
}

pub fn conjecture_scan(n_max: usize) -> Result<ConjectureReport> {
    conjecture_scan_with(pn_table(), n_max)
}

/// `1 / (n (ln n + γ)^2)`.
pub fn p_asymptotic(n: u64, digits: u32) -> Result<BigReal> {
    if n < 2 {
        return Err(domain("p_asymptotic needs n >= 2"));
    }
    let bits = crate::real::bits_for_digits(digits);
    let nn = BigReal::from_u64(n).with_prec(bits);
    let l = nn.ln()? + consts::euler_gamma(bits);
    (nn * l.sqr()).recip()
}
