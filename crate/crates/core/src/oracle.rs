//! Direct evaluation of `g` and the brute-force checks built on it.
//!
//! The empirical period only looks at a finite window, and nothing bounds
//! where periodicity starts. A mismatch with the period engine is a
//! counterexample; agreement is evidence only.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, ensure_prime, lcm_big, valuation_big, Factorization, QuadPoly};
use crate::error::{Error, Result};
use crate::nat::BigNat;
use crate::period::{bk_factorization, is_eventually_periodic, kf_bound, normalize};

/// How the empirical result should be read.
pub const EMPIRICAL_NOTE: &str =
    "falsifier: a finite window can refute the computed period but cannot prove it";

/// Largest `k` for the subset enumeration in [`hua_check`].
pub const HUA_K_CAP: u64 = 12;

/// Default number of `g` evaluations the period scan may perform.
pub const DEFAULT_WINDOW_CAP: u64 = 20_000_000;

/// Window for [`empirical_smallest_period`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    /// First `n` checked; defaults to one past the largest integer zero of `f`.
    pub n0: Option<u64>,
    /// Each candidate period `t` is checked on `[n0, n0 + horizon * B_k]`.
    pub horizon: u64,
    /// Upper bound on the number of `g` evaluations.
    pub cap: u64,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            n0: None,
            horizon: 3,
            cap: DEFAULT_WINDOW_CAP,
        }
    }
}

/// One past the largest integer zero of `f`, and at least 1.
pub fn default_n0(f: &QuadPoly) -> u64 {
    f.integer_roots()
        .last()
        .map_or(1, |&r| u64::try_from(r + 1).unwrap_or(0).max(1))
}

/// `g(n)`, kept in a `u128` while it fits.
#[derive(Debug, Clone, PartialEq, Eq)]
enum GValue {
    Small(u128),
    Big(BigUint),
}

impl GValue {
    fn to_biguint(&self) -> BigUint {
        match self {
            GValue::Small(v) => BigUint::from(*v),
            GValue::Big(v) => v.clone(),
        }
    }

    fn valuation(&self, p: u64) -> u32 {
        match self {
            GValue::Small(v) => crate::arith::val_u128(*v, p),
            GValue::Big(v) => valuation_big(v, p).finite().unwrap_or(0) as u32,
        }
    }
}

/// `g` from nonzero window terms, as `prod_j lcm_{i<j} gcd(t_i, t_j)`.
fn g_from_terms(terms: &[u128]) -> GValue {
    let narrow = terms.iter().all(|&t| t <= u64::MAX as u128);
    let gcd = |x: u128, y: u128| -> u128 {
        if narrow {
            (x as u64).gcd(&(y as u64)) as u128
        } else {
            x.gcd(&y)
        }
    };
    let mut acc: Option<u128> = Some(1);
    'outer: for j in 1..terms.len() {
        let mut l = 1u128;
        for i in 0..j {
            let g = gcd(terms[i], terms[j]);
            if g > 1 {
                match (l / gcd(l, g)).checked_mul(g) {
                    Some(v) => l = v,
                    None => {
                        acc = None;
                        break 'outer;
                    }
                }
            }
        }
        acc = acc.and_then(|a| a.checked_mul(l));
        if acc.is_none() {
            break;
        }
    }
    match acc {
        Some(v) => GValue::Small(v),
        None => {
            let prod = terms.iter().fold(BigUint::one(), |p, &t| p * BigUint::from(t));
            let big: Vec<BigInt> = terms.iter().map(|&t| BigInt::from(t)).collect();
            GValue::Big(prod / lcm_big(&big).expect("terms are nonzero"))
        }
    }
}

fn abs_term(f: &QuadPoly, x: i128) -> Result<u128> {
    f.eval_checked(x)
        .map(i128::unsigned_abs)
        .ok_or_else(|| Error::InvalidArgument(format!("f({x}) overflows")))
}

/// The window terms `|f(n)|, ..., |f(n+k)|`.
fn window_terms(f: &QuadPoly, k: u64, n: i128) -> Result<Vec<u128>> {
    (0..=k as i128).map(|i| abs_term(f, n + i)).collect()
}

/// Moves `n` off the zeros of the window by adding multiples of `B_k`.
fn periodic_representative(f: &QuadPoly, k: u64, n: u64) -> Result<i128> {
    let terms = window_terms(f, k, n as i128)?;
    if terms.iter().all(|&t| t != 0) {
        return Ok(n as i128);
    }
    if !is_eventually_periodic(f, k) {
        return Err(Error::Undefined { n });
    }
    let bk = crate::arith::expand(&bk_factorization(&normalize(f), k)?)
        .to_i128()
        .ok_or(Error::CapExceeded {
            what: "B_k for the zero extension",
            cap: u64::MAX,
        })?;
    for a0 in 1..=(k as i128 + 3) {
        let m = n as i128 + a0 * bk;
        if window_terms(f, k, m)?.iter().all(|&t| t != 0) {
            return Ok(m);
        }
    }
    Err(Error::Internal(format!("no shift clears the zeros at n = {n}")))
}

/// `g(n) = prod_{i<=k} |f(n+i)| / lcm_{i<=k} f(n+i)`, extended periodically
/// through the zeros of `f` when `g` is eventually periodic.
pub fn g_eval(f: &QuadPoly, k: u64, n: u64) -> Result<BigUint> {
    let m = periodic_representative(f, k, n)?;
    Ok(g_from_terms(&window_terms(f, k, m)?).to_biguint())
}

/// `sum_{i>=1} max(0, #{t in window : p^i | t} - 1)`.
fn h_sum(terms: &[u128], p: u64) -> u32 {
    let vals: Vec<u32> = terms.iter().map(|&t| crate::arith::val_u128(t, p)).collect();
    let mut total = 0;
    for i in 1.. {
        let count = vals.iter().filter(|&&v| v >= i).count() as u32;
        if count <= 1 {
            break;
        }
        total += count - 1;
    }
    total
}

/// `nu_p(g(n))`, cross-checked against the count of window terms divisible
/// by each power of `p`.
pub fn g_p_eval(f: &QuadPoly, k: u64, n: u64, p: u64) -> Result<u32> {
    ensure_prime(p)?;
    let m = periodic_representative(f, k, n)?;
    let terms = window_terms(f, k, m)?;
    let direct = g_from_terms(&terms).valuation(p);
    let counted = h_sum(&terms, p);
    if direct != counted {
        return Err(Error::Internal(format!(
            "nu_{p}(g({n})) = {direct} but the power counts give {counted}"
        )));
    }
    Ok(direct)
}

/// Checks `g(n)` against the alternating product of gcds over all subsets
/// of the window with at least two elements.
pub fn hua_check(f: &QuadPoly, k: u64, n: u64) -> Result<bool> {
    if k > HUA_K_CAP {
        return Err(Error::CapExceeded {
            what: "k for subset enumeration",
            cap: HUA_K_CAP,
        });
    }
    let terms = window_terms(f, k, n as i128)?;
    if terms.contains(&0) {
        return Err(Error::Undefined { n });
    }
    let size = terms.len();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for mask in 1u32..(1 << size) {
        let r = mask.count_ones();
        if r < 2 {
            continue;
        }
        let g = (0..size)
            .filter(|&i| mask >> i & 1 == 1)
            .fold(0u128, |g, i| g.gcd(&terms[i]));
        // Subsets of size r contribute with exponent (-1)^r.
        if r % 2 == 0 {
            num *= BigUint::from(g);
        } else {
            den *= BigUint::from(g);
        }
    }
    let g = g_from_terms(&terms).to_biguint();
    Ok(num == g * den)
}

/// Whether every pairwise gcd in the window divides `B_k`, for primitive `f`.
pub fn gcd_divides_bk_check(f: &QuadPoly, k: u64, n: u64) -> Result<bool> {
    if !f.is_primitive() {
        return Err(Error::NotPrimitive {
            content: f.content(),
        });
    }
    let bk = crate::arith::expand(&bk_factorization(f, k)?);
    let terms = window_terms(f, k, n as i128)?;
    if terms.contains(&0) {
        return Err(Error::Undefined { n });
    }
    for j in 1..terms.len() {
        for i in 0..j {
            let g = BigUint::from(terms[i].gcd(&terms[j]));
            if !(&bk % g).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `g` on `[start, start + len)`; the window must avoid the zeros of `f`.
fn g_range(f: &QuadPoly, k: u64, start: u64, len: u64) -> Result<Vec<GValue>> {
    let mut ring: Vec<u128> = window_terms(f, k, start as i128)?;
    let mut out = Vec::with_capacity(len as usize);
    for idx in 0..len {
        if ring.contains(&0) {
            return Err(Error::Undefined { n: start + idx });
        }
        out.push(g_from_terms(&ring));
        ring.rotate_left(1);
        ring[k as usize] = abs_term(f, (start + idx) as i128 + k as i128 + 1)?;
    }
    Ok(out)
}

fn checked_window(bk: &BigUint, window: &Window) -> Result<(u64, u64)> {
    if window.horizon < 2 {
        return Err(Error::InvalidArgument("horizon must be at least 2".into()));
    }
    let bk = bk.to_u64().ok_or(Error::OracleCap {
        modulus: u128::MAX,
        cap: window.cap,
    })?;
    let span = bk
        .checked_mul(window.horizon)
        .and_then(|s| s.checked_add(bk + 1))
        .filter(|&s| s <= window.cap)
        .ok_or(Error::OracleCap {
            modulus: bk as u128 * (window.horizon as u128 + 1),
            cap: window.cap,
        })?;
    Ok((bk, span))
}

fn first_period<T: PartialEq>(vals: &[T], checked: u64, candidates: &[u64]) -> Option<u64> {
    candidates.iter().copied().find(|&t| {
        (0..=checked as usize).all(|i| vals[i] == vals[i + t as usize])
    })
}

/// Result of the empirical period scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalPeriod {
    pub period: BigNat,
    pub n0: u64,
    pub horizon: u64,
    /// Every candidate tried, in order, with whether it held on the window.
    pub divisor_checks: BTreeMap<BigNat, bool>,
}

/// `g` tabulated over a window long enough to test every divisor of `B_k`.
struct Scan {
    bk_factors: Factorization,
    n0: u64,
    checked: u64,
    vals: Vec<GValue>,
}

impl Scan {
    fn new(f: &QuadPoly, k: u64, window: &Window) -> Result<Self> {
        let bk_factors = bk_factorization(&normalize(f), k)?;
        let (bk, span) = checked_window(&crate::arith::expand(&bk_factors), window)?;
        let n0 = window.n0.unwrap_or_else(|| default_n0(f));
        let vals = g_range(f, k, n0, span)?;
        Ok(Scan {
            bk_factors,
            n0,
            checked: window.horizon * bk,
            vals,
        })
    }

    fn period(&self, f: &QuadPoly, k: u64, horizon: u64) -> Result<EmpiricalPeriod> {
        let mut divisor_checks = BTreeMap::new();
        for t in divisors(&self.bk_factors) {
            let t = t.to_u64().expect("divisor of B_k fits");
            let holds = first_period(&self.vals, self.checked, &[t]).is_some();
            divisor_checks.insert(BigNat::from(t), holds);
            if holds {
                return Ok(EmpiricalPeriod {
                    period: BigNat::from(t),
                    n0: self.n0,
                    horizon,
                    divisor_checks,
                });
            }
        }
        Err(Error::Internal(format!(
            "no divisor of B_k is a period of g on the window for {f}, k = {k}"
        )))
    }

    fn local_periods(&self) -> Result<BTreeMap<u64, u32>> {
        let mut out = BTreeMap::new();
        for (&p, &vb) in &self.bk_factors {
            let nus: Vec<u32> = self.vals.iter().map(|v| v.valuation(p)).collect();
            let candidates: Vec<u64> = (0..=vb).map(|j| p.pow(j)).collect();
            let t = first_period(&nus, self.checked, &candidates).ok_or_else(|| {
                Error::Internal(format!("nu_{p}(g) has no period dividing {p}^{vb}"))
            })?;
            out.insert(p, crate::arith::val_u64(t, p));
        }
        Ok(out)
    }
}

/// Least divisor `t` of `B_k` with `g(n + t) = g(n)` on the whole window.
pub fn empirical_smallest_period(f: &QuadPoly, k: u64, window: &Window) -> Result<EmpiricalPeriod> {
    Scan::new(f, k, window)?.period(f, k, window.horizon)
}

/// Exponent of the least period of `n -> nu_p(g(n))`, for each `p | B_k`.
pub fn empirical_local_periods(
    f: &QuadPoly,
    k: u64,
    window: &Window,
) -> Result<BTreeMap<u64, u32>> {
    Scan::new(f, k, window)?.local_periods()
}

/// Both scans from a single tabulation of `g`.
pub fn empirical_periods(
    f: &QuadPoly,
    k: u64,
    window: &Window,
) -> Result<(EmpiricalPeriod, BTreeMap<u64, u32>)> {
    let scan = Scan::new(f, k, window)?;
    Ok((scan.period(f, k, window.horizon)?, scan.local_periods()?))
}

/// Natural log of a positive big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("fits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopePoint {
    pub n: u64,
    pub log_lcm: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeReport {
    pub f: QuadPoly,
    pub k: u64,
    /// `2(k+1)`, or `k + i0 + 1` when `D = a^2 i0^2` with `i0 <= k`.
    pub predicted_c: u64,
    pub points: Vec<SlopePoint>,
    /// `|ratio - C| / C` at the largest sample.
    pub relative_deviation: f64,
}

/// Slope of the predicted growth `log lcm = C log n + o(log n)`.
pub fn predicted_slope(f: &QuadPoly, k: u64) -> u64 {
    match kf_bound(f).ok().and_then(|b| b.witness()) {
        Some(i0) if i0 <= k => k + i0 + 1,
        _ => 2 * (k + 1),
    }
}

/// `log lcm_{i<=k} f(n+i) / log n` at each sample point.
pub fn asymptotic_slope(f: &QuadPoly, k: u64, samples: &[u64]) -> Result<SlopeReport> {
    let start = default_n0(f);
    let mut points = Vec::with_capacity(samples.len());
    for &n in samples {
        if n < start.max(2) {
            return Err(Error::InvalidArgument(format!(
                "sample {n} must be at least {}",
                start.max(2)
            )));
        }
        let terms: Vec<BigInt> = (0..=k)
            .map(|i| f.eval_big(&BigInt::from(n + i)))
            .collect();
        let log_lcm = ln_big(&lcm_big(&terms)?);
        points.push(SlopePoint {
            n,
            log_lcm,
            ratio: log_lcm / (n as f64).ln(),
        });
    }
    let predicted_c = predicted_slope(f, k);
    let relative_deviation = points
        .iter()
        .max_by_key(|p| p.n)
        .map_or(f64::NAN, |p| (p.ratio - predicted_c as f64).abs() / predicted_c as f64);
    Ok(SlopeReport {
        f: *f,
        k,
        predicted_c,
        points,
        relative_deviation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSample {
    pub n: u64,
    pub g: BigNat,
    /// `a1 n + b1 + a1 i0`, a divisor of `g(n)`.
    pub linear_factor: BigNat,
}

/// Samples with strictly increasing `g` when `D = a^2 i0^2` with `i0 <= k`.
///
/// Then `f = (a1 x + b1)(a1 x + b1 + a1 i0)` and the shared factor
/// `a1 n + b1 + a1 i0` of `f(n)` and `f(n + i0)` divides `g(n)`.
pub fn unboundedness_witness(f: &QuadPoly, k: u64, count: usize) -> Result<Vec<WitnessSample>> {
    let f = normalize(f);
    let i0 = match kf_bound(&f)?.witness() {
        Some(i0) if i0 <= k => i0 as i128,
        _ => return Err(Error::EventuallyPeriodic { k }),
    };
    let a1 = crate::arith::isqrt_u128(f.a() as u128) as i128;
    let b = f.b() as i128;
    if a1 * a1 != f.a() as i128 || b % a1 != 0 || (b / a1 - a1 * i0) % 2 != 0 {
        return Err(Error::Internal(format!("{f} does not split as expected")));
    }
    let b1 = (b / a1 - a1 * i0) / 2;
    let mut out: Vec<WitnessSample> = Vec::with_capacity(count);
    let mut n = default_n0(&f);
    while out.len() < count {
        let g = g_from_terms(&window_terms(&f, k, n as i128)?).to_biguint();
        let linear = a1 * n as i128 + b1 + a1 * i0;
        let linear = BigUint::from(linear.unsigned_abs());
        if !(&g % &linear).is_zero() || g < linear {
            return Err(Error::Internal(format!(
                "{linear} does not divide g({n}) = {g}"
            )));
        }
        if out.last().is_none_or(|prev| prev.g.0 < g) {
            out.push(WitnessSample {
                n,
                g: g.into(),
                linear_factor: linear.into(),
            });
        }
        n += 1;
    }
    Ok(out)
}

/// Everything the oracle can say about one `(f, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub f: QuadPoly,
    pub k: u64,
    pub samples: Vec<(u64, BigNat)>,
    pub empirical_period: BigNat,
    pub n0: u64,
    pub horizon: u64,
    pub evidence: String,
    pub hua_consistent: bool,
    pub gcd_divides_bk: bool,
    pub valuation_counts_consistent: bool,
    pub divisor_checks: BTreeMap<BigNat, bool>,
    pub empirical_local_periods: BTreeMap<u64, u32>,
}

/// Number of `n` values sampled for the pointwise checks.
pub const SAMPLE_COUNT: u64 = 20;

pub fn oracle_report(f: &QuadPoly, k: u64, window: &Window) -> Result<OracleReport> {
    let (emp, local) = empirical_periods(f, k, window)?;
    let bk_factors: Factorization = bk_factorization(&normalize(f), k)?;
    let mut samples = Vec::new();
    let mut hua = true;
    let mut gcd_ok = true;
    let mut counts_ok = true;
    for n in emp.n0..emp.n0 + SAMPLE_COUNT {
        samples.push((n, BigNat::from(g_eval(f, k, n)?)));
        if k <= HUA_K_CAP {
            hua &= hua_check(f, k, n)?;
        }
        gcd_ok &= gcd_divides_bk_check(&normalize(f), k, n)?;
        for &p in bk_factors.keys() {
            match g_p_eval(f, k, n, p) {
                Ok(_) => {}
                Err(Error::Internal(_)) => counts_ok = false,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(OracleReport {
        f: *f,
        k,
        samples,
        empirical_period: emp.period,
        n0: emp.n0,
        horizon: emp.horizon,
        evidence: EMPIRICAL_NOTE.to_string(),
        hua_consistent: hua,
        gcd_divides_bk: gcd_ok,
        valuation_counts_consistent: counts_ok,
        divisor_checks: emp.divisor_checks,
        empirical_local_periods: local,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::smallest_period;

    fn poly(a: i64, b: i64, c: i64) -> QuadPoly {
        QuadPoly::new(a, b, c).unwrap()
    }

    #[test]
    fn g_examples() {
        let f = poly(1, 0, 1);
        assert_eq!(g_eval(&f, 1, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(g_eval(&f, 1, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(g_eval(&poly(1, 3, 0), 1, 1).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn g_matches_product_over_lcm() {
        for (f, k) in [(poly(1, 0, 1), 4), (poly(3, -2, -7), 5), (poly(2, 1, 1), 3)] {
            for n in 5..40u64 {
                let terms: Vec<BigInt> = (0..=k).map(|i| f.eval_big(&BigInt::from(n + i))).collect();
                let prod = terms.iter().fold(BigUint::one(), |p, t| p * t.magnitude());
                assert_eq!(g_eval(&f, k, n).unwrap(), prod / lcm_big(&terms).unwrap());
            }
        }
    }

    #[test]
    fn zero_extension() {
        // x^2 - 4 vanishes at 2; k = 1 is periodic since D = 16 = 1 * 4^2 gives bound 3.
        let f = poly(1, 0, -4);
        let bk = crate::period::compute_bk(&f, 1).unwrap().to_u64().unwrap();
        assert_eq!(g_eval(&f, 1, 2).unwrap(), g_eval(&f, 1, 2 + bk).unwrap());
        assert_eq!(g_eval(&poly(1, -3, 2), 1, 1), Err(Error::Undefined { n: 1 }));
    }

    #[test]
    fn g_p_examples() {
        let f = poly(1, 0, 1);
        assert_eq!(g_p_eval(&f, 1, 2, 5).unwrap(), 1);
        assert_eq!(g_p_eval(&f, 1, 1, 5).unwrap(), 0);
        let direct = crate::arith::val_u128(g_eval(&f, 2, 2).unwrap().to_u128().unwrap(), 2);
        assert_eq!(g_p_eval(&f, 2, 2, 2).unwrap(), direct);
    }

    #[test]
    fn hua_examples() {
        assert!(hua_check(&poly(1, 0, 1), 1, 7).unwrap());
        assert!(hua_check(&poly(1, 0, 1), 3, 2).unwrap());
        assert!(hua_check(&poly(1, 3, 0), 2, 5).unwrap());
        assert!(matches!(hua_check(&poly(1, 0, 1), 13, 2), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn gcd_check_examples() {
        assert!(gcd_divides_bk_check(&poly(1, 0, 1), 2, 7).unwrap());
        assert!(gcd_divides_bk_check(&poly(1, 0, 1), 1, 2).unwrap());
        assert!(gcd_divides_bk_check(&poly(1, 3, 0), 2, 3).unwrap());
    }

    #[test]
    fn empirical_examples() {
        let w = Window::default();
        assert_eq!(empirical_smallest_period(&poly(1, 0, 1), 1, &w).unwrap().period, 5);
        let r = smallest_period(&poly(1, 0, 1), 2).unwrap();
        assert_eq!(empirical_smallest_period(&poly(1, 0, 1), 2, &w).unwrap().period, r.period);
        let r = smallest_period(&poly(4, 0, 1), 1).unwrap();
        assert_eq!(empirical_smallest_period(&poly(4, 0, 1), 1, &w).unwrap().period, r.period);
        assert!(empirical_smallest_period(&poly(1, 0, 1), 1, &Window { horizon: 1, ..w }).is_err());
    }

    #[test]
    fn slope_predictions() {
        assert_eq!(predicted_slope(&poly(1, 0, 1), 1), 4);
        assert_eq!(predicted_slope(&poly(1, 2, 0), 2), 5);
        assert_eq!(predicted_slope(&poly(1, 2, 0), 1), 4);
        let r = asymptotic_slope(&poly(1, 0, 1), 1, &[10_000]).unwrap();
        assert!(r.relative_deviation < 0.10);
    }

    #[test]
    fn ln_big_is_accurate() {
        let x = BigUint::from(10u32).pow(50);
        assert!((ln_big(&x) - 50.0 * 10f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn witness_for_consecutive_product() {
        let f = poly(1, 1, 0);
        let w = unboundedness_witness(&f, 1, 10).unwrap();
        assert_eq!(w.len(), 10);
        for s in &w {
            // gcd(n(n+1), (n+1)(n+2)) = (n+1) gcd(n, 2).
            let n = s.n;
            assert_eq!(s.g, (n + 1) * n.gcd(&2));
            assert_eq!(s.linear_factor, n + 1);
        }
        let w = unboundedness_witness(&poly(1, 2, 0), 2, 8).unwrap();
        assert!(w.iter().all(|s| s.g.0 >= BigUint::from(s.n + 2)));
        assert_eq!(
            unboundedness_witness(&poly(1, 0, 1), 1, 3),
            Err(Error::EventuallyPeriodic { k: 1 })
        );
    }

    #[test]
    fn report_round_trips() {
        let r = oracle_report(&poly(1, 0, 1), 2, &Window::default()).unwrap();
        assert!(r.hua_consistent && r.gcd_divides_bk && r.valuation_counts_consistent);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<OracleReport>(&json).unwrap(), r);
    }
}
