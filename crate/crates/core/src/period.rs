//! Smallest period of `g(n) = prod_{i<=k} |f(n+i)| / lcm_{i<=k} f(n+i)`.
//!
//! The period is assembled twice: once as `A_k` (the guaranteed period `B_k`
//! with its correction factors removed, then the exceptional prime if any),
//! and once as the product of the local periods of `n -> nu_p(g(n))`. The two
//! must agree.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{
    ensure_prime, expand, factorize, floor_log, isqrt_u128, legendre_symbol, val_i128, val_u64,
    ExtNat, Factorization, QuadPoly,
};
use crate::distance::e_bracket;
use crate::error::{Error, Result};
use crate::nat::BigNat;

/// Largest `k` the engine accepts unless told otherwise.
pub const DEFAULT_K_CAP: u64 = 10_000;

/// `g` is eventually periodic exactly for `1 <= k <= bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KfBound {
    pub bound: ExtNat,
}

impl KfBound {
    pub fn contains(&self, k: u64) -> bool {
        k >= 1 && ExtNat::Finite(k) <= self.bound
    }

    /// The `i0` with `D = a^2 i0^2`, when one exists.
    pub fn witness(&self) -> Option<u64> {
        self.bound.finite().map(|l| l + 1)
    }
}

/// `p^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub exp: u32,
}

impl PrimePower {
    pub fn one(p: u64) -> Self {
        PrimePower { p, exp: 0 }
    }

    pub fn value(&self) -> BigUint {
        BigUint::from(self.p).pow(self.exp)
    }
}

/// An odd prime whose full power is dropped from `A_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalPrime {
    pub q: u64,
    /// `nu_q(A_k)`.
    pub exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    /// The polynomial as given.
    pub input: QuadPoly,
    /// Primitive form with positive leading coefficient.
    pub f: QuadPoly,
    pub k: u64,
    pub b_k: BigNat,
    pub b_k_factors: BTreeMap<u64, u32>,
    pub l_k: BigNat,
    pub xi2: BigNat,
    pub eta: BTreeMap<u64, BigNat>,
    pub a_k: BigNat,
    pub local_periods: BTreeMap<u64, PrimePower>,
    pub exceptional_prime: Option<ExceptionalPrime>,
    pub period: BigNat,
}

/// Divides out the content and makes the leading coefficient positive.
pub fn normalize(f: &QuadPoly) -> QuadPoly {
    let g = f.content() as i64;
    let sign = f.a().signum();
    QuadPoly::new(sign * f.a() / g, sign * f.b() / g, sign * f.c() / g)
        .expect("leading coefficient stays nonzero")
}

/// Finite exactly when `D = a^2 m^2` with `m >= 1`; then the bound is `m - 1`.
pub fn kf_bound(f: &QuadPoly) -> Result<KfBound> {
    let d = f.discriminant();
    let a2 = (f.a() as i128) * (f.a() as i128);
    let bound = if d > 0 && d % a2 == 0 {
        let q = (d / a2) as u128;
        let m = isqrt_u128(q);
        if m * m == q {
            ExtNat::Finite(m as u64 - 1)
        } else {
            ExtNat::Infinite
        }
    } else {
        ExtNat::Infinite
    };
    Ok(KfBound { bound })
}

pub fn is_eventually_periodic(f: &QuadPoly, k: u64) -> bool {
    kf_bound(f).is_ok_and(|b| b.contains(k))
}

fn require_periodic(f: &QuadPoly, k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let bound = kf_bound(f)?;
    match bound.witness() {
        Some(witness) if !bound.contains(k) => Err(Error::NotEventuallyPeriodic { k, witness }),
        _ => Ok(()),
    }
}

fn require_primitive(f: &QuadPoly) -> Result<()> {
    match f.content() {
        1 => Ok(()),
        content => Err(Error::NotPrimitive { content }),
    }
}

/// The `i`-th term `i (a^2 i^2 - D)`.
fn bk_term(f: &QuadPoly, i: u64) -> Result<i128> {
    let a = f.a() as i128;
    let i = i as i128;
    a.checked_mul(a)
        .and_then(|a2| a2.checked_mul(i * i))
        .and_then(|t| t.checked_sub(f.discriminant()))
        .and_then(|t| t.checked_mul(i))
        .ok_or_else(|| Error::InvalidArgument(format!("B_k term overflows at i = {i}")))
}

/// Prime factorization of `B_k = lcm_{1<=i<=k} i (a^2 i^2 - D)`.
pub fn bk_factorization(f: &QuadPoly, k: u64) -> Result<Factorization> {
    require_periodic(f, k)?;
    let mut out = Factorization::new();
    for i in 1..=k {
        let term = bk_term(f, i)?;
        if term == 0 {
            return Err(Error::ZeroTerm);
        }
        for (p, t) in factorize(term.unsigned_abs()) {
            let slot = out.entry(p).or_insert(0);
            *slot = (*slot).max(t);
        }
    }
    Ok(out)
}

pub fn compute_bk(f: &QuadPoly, k: u64) -> Result<BigUint> {
    Ok(expand(&bk_factorization(f, k)?))
}

/// `lcm(1, ..., k)`.
pub fn compute_lk(k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for p in 2..=k {
        if crate::arith::is_prime(p) {
            acc *= BigUint::from(p).pow(floor_log(k, p));
        }
    }
    acc
}

/// `nu_p(B_k)` without building `B_k`.
fn nu_bk(f: &QuadPoly, p: u64, k: u64) -> Result<u32> {
    let mut best = 0;
    for i in 1..=k {
        let term = bk_term(f, i)?;
        if term == 0 {
            return Err(Error::ZeroTerm);
        }
        best = best.max(val_i128(term, p));
    }
    Ok(best)
}

/// `k < p^t`, with `t = None` read as infinity.
fn below_power(k: u64, p: u64, t: Option<u32>) -> bool {
    t.is_none_or(|t| floor_log(k, p) < t)
}

/// Discriminant data at `p`; `nu = None` when `D = 0`.
struct Local {
    nu: Option<u32>,
    part: i128,
}

fn local(f: &QuadPoly, p: u64) -> Local {
    let d = f.discriminant();
    if d == 0 {
        return Local { nu: None, part: 0 };
    }
    let nu = val_i128(d, p);
    let part = if p == 2 {
        d / 4i128.pow(nu / 2)
    } else {
        d / (p as i128).pow(nu)
    };
    Local { nu: Some(nu), part }
}

/// Local period at a prime dividing `a`.
pub fn local_period_p_divides_a(f: &QuadPoly, p: u64, k: u64) -> Result<PrimePower> {
    ensure_prime(p)?;
    require_primitive(f)?;
    if f.a().rem_euclid(p as i64) != 0 {
        return Err(Error::WrongCase("p must divide a"));
    }
    require_periodic(f, k)?;
    let vb = nu_bk(f, p, k)?;
    let exp = if f.b().rem_euclid(p as i64) != 0 && val_u64(k + 1, p) < vb {
        vb
    } else {
        0
    };
    Ok(PrimePower { p, exp })
}

/// Local period at 2 when `a` is odd.
pub fn local_period_2(f: &QuadPoly, k: u64) -> Result<PrimePower> {
    require_primitive(f)?;
    if f.a() % 2 == 0 {
        return Err(Error::WrongCase("a must be odd"));
    }
    require_periodic(f, k)?;
    let vb = nu_bk(f, 2, k)? as i64;
    let lk = floor_log(k, 2) as i64;
    let vk1 = val_u64(k + 1, 2) as i64;
    let Local { nu, part } = local(f, 2);
    let half = nu.map(|v| v / 2);
    let exp = if below_power(k, 2, half) {
        if vk1 < lk {
            vb - 2 * lk
        } else {
            0
        }
    } else {
        let (nu, half) = (nu.unwrap() as i64, half.unwrap() as i64);
        let d4_is_1_mod_8 = part.rem_euclid(8) == 1;
        if !d4_is_1_mod_8 && vk1 < half {
            half
        } else if d4_is_1_mod_8 {
            vb - nu - 1
        } else {
            0
        }
    };
    prime_power_exp(2, exp)
}

/// Local period at an odd prime not dividing `a`.
pub fn local_period_odd_p(f: &QuadPoly, p: u64, k: u64) -> Result<PrimePower> {
    ensure_prime(p)?;
    require_primitive(f)?;
    if p == 2 || f.a().rem_euclid(p as i64) == 0 {
        return Err(Error::WrongCase("p must be odd and not divide a"));
    }
    require_periodic(f, k)?;
    let vb = nu_bk(f, p, k)? as i64;
    let lk = floor_log(k, p) as i64;
    let vk1 = val_u64(k + 1, p) as i64;
    let Local { nu, part } = local(f, p);
    let c = nu.map(|v| v.div_ceil(2));
    let exp = if below_power(k, p, c) {
        if vk1 < lk {
            vb - 2 * lk
        } else {
            0
        }
    } else {
        let (nu, c) = (nu.unwrap() as i64, c.unwrap() as i64);
        let residue = legendre_symbol(part, p)? == 1;
        if vk1 < c && (nu % 2 == 1 || !residue) {
            c
        } else if vk1 < vb - nu && nu % 2 == 0 && residue {
            vb - nu
        } else {
            0
        }
    };
    prime_power_exp(p, exp)
}

fn prime_power_exp(p: u64, exp: i64) -> Result<PrimePower> {
    let exp = u32::try_from(exp)
        .map_err(|_| Error::Internal(format!("negative exponent {exp} for local period at {p}")))?;
    Ok(PrimePower { p, exp })
}

/// Local period at `p`, picking the applicable closed form.
pub fn local_period(f: &QuadPoly, p: u64, k: u64) -> Result<PrimePower> {
    if f.a().rem_euclid(p as i64) == 0 {
        local_period_p_divides_a(f, p, k)
    } else if p == 2 {
        local_period_2(f, k)
    } else {
        local_period_odd_p(f, p, k)
    }
}

/// Local period at `p` not dividing `a`, read off the bracket exponent
/// `e` with `d_{p^e} <= k < d_{p^(e+1)}`.
pub fn local_period_via_bracket(f: &QuadPoly, p: u64, k: u64) -> Result<PrimePower> {
    ensure_prime(p)?;
    require_primitive(f)?;
    if f.a().rem_euclid(p as i64) == 0 {
        return Err(Error::WrongCase("p must not divide a"));
    }
    require_periodic(f, k)?;
    let e = e_bracket(f, p, k)?;
    if e == 0 {
        return Ok(PrimePower::one(p));
    }
    let vk1 = val_u64(k + 1, p);
    let square_class = |t: u32| PrimePower {
        p,
        exp: if vk1 < t { t } else { 0 },
    };
    let Local { nu, part } = local(f, p);
    let Some(nu) = nu else {
        return Ok(square_class(e.div_ceil(2)));
    };
    if p == 2 {
        let fl = 2 * (nu / 2);
        if (e == nu && part.rem_euclid(4) == 1) || e + 1 <= fl {
            return Ok(square_class(e.div_ceil(2)));
        }
        if e > nu && part.rem_euclid(8) == 1 {
            return Ok(PrimePower {
                p,
                exp: e - nu / 2,
            });
        }
        return Err(Error::Internal(format!(
            "bracket exponent {e} has no local period case for {f} at 2"
        )));
    }
    if e <= nu {
        Ok(square_class(e.div_ceil(2)))
    } else {
        Ok(square_class(e - nu / 2))
    }
}

fn sub_exp(p: u64, have: u32, take: i64) -> Result<u32> {
    u32::try_from(have as i64 - take)
        .map_err(|_| Error::Internal(format!("correction at {p} exceeds nu_p(B_k) = {have}")))
}

/// Exponent of `xi_2`.
fn xi2_exp(f: &QuadPoly, k: u64, vb: u32) -> i64 {
    let (vb, lk, vk1) = (vb as i64, floor_log(k, 2) as i64, val_u64(k + 1, 2) as i64);
    let a_even = f.a() % 2 == 0;
    if a_even {
        return if f.b() % 2 != 0 && vk1 < vb { 0 } else { vb };
    }
    let Local { nu, part } = local(f, 2);
    let half = nu.map(|v| v / 2);
    if below_power(k, 2, half) {
        return if vk1 < lk { 2 * lk } else { vb };
    }
    let (nu, half) = (nu.unwrap() as i64, half.unwrap() as i64);
    let d4_is_1_mod_8 = part.rem_euclid(8) == 1;
    if !d4_is_1_mod_8 && vk1 < half {
        vb - half
    } else if d4_is_1_mod_8 {
        nu + 1
    } else {
        vb
    }
}

/// Exponent of `eta_p` for odd `p` not dividing `a`, dividing `D`.
fn eta_exp(f: &QuadPoly, p: u64, k: u64, vb: u32) -> Result<i64> {
    let (vb, lk, vk1) = (vb as i64, floor_log(k, p) as i64, val_u64(k + 1, p) as i64);
    let Local { nu, part } = local(f, p);
    let c = nu.map(|v| v.div_ceil(2));
    if below_power(k, p, c) {
        return Ok(if vk1 < lk { 2 * lk } else { vb });
    }
    let (nu, c) = (nu.unwrap() as i64, c.unwrap() as i64);
    let residue = legendre_symbol(part, p)? == 1;
    Ok(if vk1 < c && (nu % 2 == 1 || !residue) {
        vb - c
    } else if vk1 < vb - nu && nu % 2 == 0 && residue {
        nu
    } else {
        vb
    })
}

/// `A_k` as an exponent map, together with `xi_2` and the `eta_p`.
struct AkParts {
    a_k: Factorization,
    xi2: u32,
    eta: BTreeMap<u64, u32>,
}

fn ak_parts(f: &QuadPoly, k: u64, bk: &Factorization) -> Result<AkParts> {
    let d = f.discriminant();
    let mut a_k = Factorization::new();
    let mut eta = BTreeMap::new();
    let vb2 = bk.get(&2).copied().unwrap_or(0);
    let xi2 = u32::try_from(xi2_exp(f, k, vb2))
        .map_err(|_| Error::Internal("negative xi_2 exponent".into()))?;
    for (&p, &vb) in bk {
        let pi = p as i64;
        let removed: i64 = if p == 2 {
            xi2 as i64
        } else if f.a() % pi == 0 {
            if f.b() % pi == 0 {
                vb as i64
            } else {
                0
            }
        } else if d % p as i128 == 0 {
            let t = eta_exp(f, p, k, vb)?;
            eta.insert(p, u32::try_from(t).map_err(|_| {
                Error::Internal(format!("negative eta exponent at {p}"))
            })?);
            t
        } else if legendre_symbol(d, p)? == -1 {
            vb as i64
        } else {
            0
        };
        let left = sub_exp(p, vb, removed)?;
        if left > 0 {
            a_k.insert(p, left);
        }
    }
    // eta_p is also defined at odd p | D outside B_k.
    if d != 0 {
        for (p, _) in factorize(d.unsigned_abs()) {
            if p != 2 && f.a() % p as i64 != 0 && !bk.contains_key(&p) {
                eta.insert(p, u32::try_from(eta_exp(f, p, k, 0)?).map_err(|_| {
                    Error::Internal(format!("negative eta exponent at {p}"))
                })?);
            }
        }
    }
    Ok(AkParts { a_k, xi2, eta })
}

/// `A_k` for a primitive `f`.
pub fn compute_ak(f: &QuadPoly, k: u64) -> Result<BigUint> {
    require_primitive(f)?;
    let bk = bk_factorization(f, k)?;
    Ok(expand(&ak_parts(f, k, &bk)?.a_k))
}

fn exceptional_prime(f: &QuadPoly, k: u64, a_k: &Factorization) -> Result<Option<ExceptionalPrime>> {
    let d = f.discriminant();
    let mut found = None;
    for (&q, &exp) in a_k {
        if q == 2 || exp == 0 || (val_u64(k + 1, q)) < exp {
            continue;
        }
        let qi = q as i64;
        let leading = f.a() % qi == 0 && f.b() % qi != 0;
        let split = f.a() % qi != 0 && d % q as i128 != 0 && legendre_symbol(d, q)? == 1;
        if leading || split {
            if found.is_some() {
                return Err(Error::Internal(format!(
                    "more than one exceptional prime for {f}, k = {k}"
                )));
            }
            found = Some(ExceptionalPrime { q, exp });
        }
    }
    Ok(found)
}

/// Smallest period with the default cap on `k`.
pub fn smallest_period(f: &QuadPoly, k: u64) -> Result<PeriodReport> {
    smallest_period_capped(f, k, DEFAULT_K_CAP)
}

pub fn smallest_period_capped(input: &QuadPoly, k: u64, k_cap: u64) -> Result<PeriodReport> {
    if k > k_cap {
        return Err(Error::CapExceeded { what: "k", cap: k_cap });
    }
    let f = normalize(input);
    require_periodic(&f, k)?;
    let bk = bk_factorization(&f, k)?;
    let AkParts { a_k, xi2, eta } = ak_parts(&f, k, &bk)?;

    let mut local_periods = BTreeMap::new();
    for (&p, &vb) in &bk {
        let lp = local_period(&f, p, k)?;
        if lp.exp > vb {
            return Err(Error::Internal(format!(
                "local period {}^{} exceeds nu_p(B_k) = {vb}",
                lp.p, lp.exp
            )));
        }
        local_periods.insert(p, lp);
    }

    let exceptional = exceptional_prime(&f, k, &a_k)?;
    let mut from_ak = a_k.clone();
    if let Some(ex) = exceptional {
        from_ak.remove(&ex.q);
    }
    let from_local: Factorization = local_periods
        .values()
        .filter(|lp| lp.exp > 0)
        .map(|lp| (lp.p, lp.exp))
        .collect();
    if from_ak != from_local {
        return Err(Error::Internal(format!(
            "period routes disagree for {f}, k = {k}: A_k gives {from_ak:?}, local periods give {from_local:?}"
        )));
    }

    Ok(PeriodReport {
        input: *input,
        f,
        k,
        b_k: expand(&bk).into(),
        b_k_factors: bk,
        l_k: compute_lk(k).into(),
        xi2: BigUint::from(2u32).pow(xi2).into(),
        eta: eta
            .into_iter()
            .map(|(p, t)| (p, BigUint::from(p).pow(t).into()))
            .collect(),
        a_k: expand(&a_k).into(),
        local_periods,
        exceptional_prime: exceptional,
        period: expand(&from_local).into(),
    })
}
