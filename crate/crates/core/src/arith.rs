//! Integer utilities shared by the solver, distance and period modules:
//! extended naturals, quadratic polynomials, p-adic valuations, Legendre
//! symbols, modular inverses and square roots modulo prime powers.
//!
//! Residues are canonical in `[0, m)`. Moduli are kept below `2^62` so that
//! products of two residues fit in a `u128`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest modulus the fixed-width residue arithmetic accepts.
pub const MAX_MODULUS: u64 = 1 << 62;

/// A nonnegative integer or infinity.
///
/// The derived ordering puts every `Finite` value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        ExtNat::Finite(v)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(x), ExtNat::Finite(y)) => ExtNat::Finite(x + y),
            _ => ExtNat::Infinite,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

// Finite values serialize as JSON numbers, infinity as the string "inf".
impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(v) => s.serialize_u64(*v),
            ExtNat::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ExtNat::Finite(v)),
            Raw::Text(t) if t == "inf" => Ok(ExtNat::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a nonnegative integer or \"inf\", got {t:?}"
            ))),
        }
    }
}

/// `f(x) = a x^2 + b x + c` with `a != 0`.
///
/// The discriminant and content are always recomputed from the coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoly")]
pub struct QuadPoly {
    a: i64,
    b: i64,
    c: i64,
}

#[derive(Deserialize)]
struct RawPoly {
    a: i64,
    b: i64,
    c: i64,
}

impl TryFrom<RawPoly> for QuadPoly {
    type Error = Error;

    fn try_from(raw: RawPoly) -> Result<Self> {
        QuadPoly::new(raw.a, raw.b, raw.c)
    }
}

impl QuadPoly {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a == 0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(QuadPoly { a, b, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn coefficients(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// `D = b^2 - 4ac`.
    pub fn discriminant(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    /// `gcd(|a|, |b|, |c|)`, always positive since `a != 0`.
    pub fn content(&self) -> u64 {
        let g = self.a.unsigned_abs().gcd(&self.b.unsigned_abs());
        g.gcd(&self.c.unsigned_abs())
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn negated(&self) -> QuadPoly {
        QuadPoly {
            a: -self.a,
            b: -self.b,
            c: -self.c,
        }
    }

    pub fn scaled(&self, d: i64) -> Result<QuadPoly> {
        QuadPoly::new(self.a * d, self.b * d, self.c * d)
    }

    /// Evaluates `f(x)`; callers keep `|x|` well below `2^50`.
    pub fn eval(&self, x: i128) -> i128 {
        (self.a as i128 * x + self.b as i128) * x + self.c as i128
    }

    pub fn eval_checked(&self, x: i128) -> Option<i128> {
        (self.a as i128)
            .checked_mul(x)?
            .checked_add(self.b as i128)?
            .checked_mul(x)?
            .checked_add(self.c as i128)
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        (BigInt::from(self.a) * x + BigInt::from(self.b)) * x + BigInt::from(self.c)
    }

    /// `f(x) mod m` as a canonical residue.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let m128 = m as i128;
        let x = x as i128 % m128;
        let a = (self.a as i128).rem_euclid(m128);
        let b = (self.b as i128).rem_euclid(m128);
        let c = (self.c as i128).rem_euclid(m128);
        let ax = (a * x).rem_euclid(m128);
        let axb = (ax + b).rem_euclid(m128);
        ((axb * x).rem_euclid(m128) + c).rem_euclid(m128) as u64
    }

    /// Integer roots in ascending order.
    pub fn integer_roots(&self) -> Vec<i128> {
        let d = self.discriminant();
        if d < 0 {
            return Vec::new();
        }
        let s = isqrt_u128(d as u128) as i128;
        if s * s != d {
            return Vec::new();
        }
        let two_a = 2 * self.a as i128;
        let mut roots: Vec<i128> = [-(self.b as i128) + s, -(self.b as i128) - s]
            .into_iter()
            .filter(|num| num % two_a == 0)
            .map(|num| num / two_a)
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots
    }

    /// The parts of `D` relevant at the prime `p`.
    pub fn discriminant_parts(&self, p: u64) -> Result<DiscriminantParts> {
        DiscriminantParts::new(self.discriminant(), p)
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.a {
            1 => f.write_str("x^2")?,
            -1 => f.write_str("-x^2")?,
            a => write!(f, "{a}x^2")?,
        }
        match self.b {
            0 => {}
            1 => f.write_str(" + x")?,
            -1 => f.write_str(" - x")?,
            b if b < 0 => write!(f, " - {}x", b.unsigned_abs())?,
            b => write!(f, " + {b}x")?,
        }
        match self.c {
            0 => Ok(()),
            c if c < 0 => write!(f, " - {}", c.unsigned_abs()),
            c => write!(f, " + {c}"),
        }
    }
}

/// `nu_p(D)` together with `D` stripped of its `p`-part.
///
/// For odd `p` the part is `D / p^nu_p(D)`; for `p = 2` it is
/// `D / 4^floor(nu_2(D)/2)`, which is odd exactly when `nu_2(D)` is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscriminantParts {
    pub p: u64,
    pub nu_d: u32,
    pub part: i128,
}

impl DiscriminantParts {
    pub fn new(d: i128, p: u64) -> Result<Self> {
        ensure_prime(p)?;
        if d == 0 {
            return Err(Error::InvalidArgument(
                "discriminant parts are undefined for D = 0".into(),
            ));
        }
        let nu_d = val_i128(d, p);
        let part = if p == 2 {
            d / 4i128.pow(nu_d / 2)
        } else {
            d / (p as i128).pow(nu_d)
        };
        Ok(DiscriminantParts { p, nu_d, part })
    }

    /// Residue of the part modulo `m`, in `[0, m)`.
    pub fn part_mod(&self, m: i128) -> i128 {
        self.part.rem_euclid(m)
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let mut d = 17u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

pub(crate) fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `p^e`, rejecting anything at or above [`MAX_MODULUS`].
pub fn prime_power(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .filter(|&m| m < MAX_MODULUS)
        .ok_or(Error::ModulusOverflow { base: p, exp: e })
}

/// Largest `t` with `p^t | n`, or infinity for `n = 0`.
pub fn p_adic_valuation(n: i128, p: u64) -> Result<ExtNat> {
    ensure_prime(p)?;
    if n == 0 {
        return Ok(ExtNat::Infinite);
    }
    Ok(ExtNat::Finite(val_i128(n, p) as u64))
}

/// Valuation of a nonzero integer; no primality check.
pub(crate) fn val_i128(n: i128, p: u64) -> u32 {
    debug_assert!(n != 0);
    val_u128(n.unsigned_abs(), p)
}

pub(crate) fn val_u128(mut n: u128, p: u64) -> u32 {
    debug_assert!(n != 0);
    let p = p as u128;
    let mut t = 0;
    while n % p == 0 {
        n /= p;
        t += 1;
    }
    t
}

pub(crate) fn val_u64(n: u64, p: u64) -> u32 {
    val_u128(n as u128, p)
}

/// Valuation of a big integer; infinity for zero.
pub fn valuation_big(n: &BigUint, p: u64) -> ExtNat {
    if n.is_zero() {
        return ExtNat::Infinite;
    }
    let p_big = BigUint::from(p);
    let mut t = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&p_big);
        if !r.is_zero() {
            break;
        }
        rest = q;
        t += 1;
    }
    ExtNat::Finite(t)
}

/// `floor(log_p k)` for `k >= 1`, i.e. `nu_p(lcm(1..k))`.
pub fn floor_log(k: u64, p: u64) -> u32 {
    debug_assert!(k >= 1 && p >= 2);
    let mut t = 0;
    let mut acc = p as u128;
    while acc <= k as u128 {
        acc *= p as u128;
        t += 1;
    }
    t
}

pub fn mul_mod(x: u64, y: u64, m: u64) -> u64 {
    ((x as u128 * y as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Canonical residue of a signed value.
pub fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Legendre symbol `(n / p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre_symbol(n: i128, p: u64) -> Result<i8> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    ensure_prime(p)?;
    let r = reduce(n, p);
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// `y` in `[0, m)` with `x y = 1 (mod m)`.
pub fn mod_inverse(x: i128, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if m == 1 {
        return Ok(0);
    }
    let (mut old_r, mut r) = (reduce(x, m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible {
            value: x,
            modulus: m,
        });
    }
    Ok(reduce(old_s, m))
}

/// A square root of the unit `n` modulo the odd prime `p`, if one exists.
///
/// Uses the `n^((p+1)/4)` shortcut for `p = 3 (mod 4)` and Tonelli-Shanks
/// otherwise.
fn sqrt_mod_prime(n: u64, p: u64) -> Option<u64> {
    debug_assert!(p > 2 && n % p != 0);
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(n, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Roots of `y^2 = u (mod p^m)` for a unit `u`, as residues mod `p^m`.
fn unit_sqrt_prime_power(u: u64, p: u64, m: u32) -> Vec<u64> {
    let modulus = p.pow(m);
    if p == 2 {
        let u8_ = u % 8;
        return match m {
            1 => vec![1],
            2 if u % 4 == 1 => vec![1, 3],
            2 => vec![],
            _ if u8_ != 1 => vec![],
            _ => {
                // Lift a root from mod 8 one bit at a time.
                let mut y = 1u64;
                for j in 3..m {
                    let next = 1u64 << (j + 1);
                    if mul_mod(y, y, next) != u % next {
                        y += 1 << (j - 1);
                    }
                }
                let half = modulus / 2;
                let mut roots = vec![
                    y % modulus,
                    (modulus - y) % modulus,
                    (y + half) % modulus,
                    (modulus - y + half) % modulus,
                ];
                roots.sort_unstable();
                roots.dedup();
                roots
            }
        };
    }
    let Some(mut y) = sqrt_mod_prime(u % p, p) else {
        return vec![];
    };
    // Newton steps y <- y - (y^2 - u) / (2y), one digit at a time.
    let mut pk = p;
    for _ in 1..m {
        pk *= p;
        let fy = (mul_mod(y, y, pk) as i128 - (u % pk) as i128).rem_euclid(pk as i128);
        let inv = mod_inverse(2 * y as i128, pk).expect("2y is a unit");
        y = reduce(y as i128 - (mul_mod(fy as u64, inv, pk) as i128), pk);
    }
    let mut roots = vec![y, (modulus - y) % modulus];
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// All `x` in `[0, p^e)` with `x^2 = n (mod p^e)`, sorted ascending.
pub fn sqrt_mod_prime_power(n: i128, p: u64, e: u32) -> Result<Vec<u64>> {
    ensure_prime(p)?;
    if e == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let modulus = prime_power(p, e)?;
    let r = reduce(n, modulus);
    if r == 0 {
        let step = p.pow(e.div_ceil(2));
        return Ok((0..modulus / step).map(|m| m * step).collect());
    }
    let v = val_u64(r, p);
    if v % 2 == 1 {
        return Ok(vec![]);
    }
    let half = v / 2;
    let unit = r / p.pow(v);
    let unit_roots = unit_sqrt_prime_power(unit, p, e - v);
    // x = p^(v/2) y with y determined mod p^(e-v); x is then fixed mod p^(e-v/2).
    let scale = p.pow(half);
    let step = p.pow(e - half);
    let mut roots: Vec<u64> = unit_roots
        .iter()
        .flat_map(|&y| (0..scale).map(move |t| (scale * y + t * step) % modulus))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

/// Least common multiple of the absolute values.
pub fn lcm_big(values: &[BigInt]) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for v in values {
        if v.is_zero() {
            return Err(Error::ZeroTerm);
        }
        acc = acc.lcm(v.magnitude());
    }
    Ok(acc)
}

pub(crate) fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Prime factorization as an exponent map.
pub type Factorization = BTreeMap<u64, u32>;

/// Trial-division factorization of a positive integer.
pub fn factorize(mut n: u128) -> Factorization {
    let mut out = Factorization::new();
    if n < 2 {
        return out;
    }
    for p in [2u128, 3] {
        while n % p == 0 {
            *out.entry(p as u64).or_default() += 1;
            n /= p;
        }
    }
    let mut d = 5u128;
    while d * d <= n {
        for q in [d, d + 2] {
            while n % q == 0 {
                *out.entry(q as u64).or_default() += 1;
                n /= q;
            }
        }
        d += 6;
    }
    if n > 1 {
        *out.entry(n as u64).or_default() += 1;
    }
    out
}

/// Rebuilds the integer from an exponent map.
pub fn expand(factors: &Factorization) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, (&p, &t)| {
        acc * BigUint::from(p).pow(t)
    })
}

/// All divisors of a factored integer, ascending.
pub fn divisors(factors: &Factorization) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for (&p, &t) in factors {
        let p = BigUint::from(p);
        let mut next = Vec::with_capacity(out.len() * (t as usize + 1));
        for d in &out {
            let mut pk = BigUint::one();
            for _ in 0..=t {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}
