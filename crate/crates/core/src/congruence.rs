//! Roots of `f(x) = 0 (mod p^e)` for quadratic `f`.
//!
//! [`solve`] evaluates the closed-form description of the root set, split by
//! whether `p | a`, `p = 2`, or `p` is odd. [`solve_brute`] scans every
//! residue and is the reference the closed forms are tested against.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{
    ensure_prime, mod_inverse, prime_power, reduce, sqrt_mod_prime_power, val_i128, QuadPoly,
};
use crate::error::{Error, Result};

/// Sorted, duplicate-free roots of `f` modulo `p^e`, as residues in `[0, p^e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    p: u64,
    e: u32,
    modulus: u64,
    residues: Vec<u64>,
}

impl SolutionSet {
    pub fn new(p: u64, e: u32, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        let modulus = prime_power(p, e)?;
        let set: BTreeSet<u64> = residues.into_iter().collect();
        if let Some(&r) = set.iter().next_back().filter(|&&r| r >= modulus) {
            return Err(Error::ResidueOutOfRange {
                residue: r,
                modulus,
            });
        }
        Ok(SolutionSet {
            p,
            e,
            modulus,
            residues: set.into_iter().collect(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

/// Which branch of the closed form produced a root set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveCase {
    /// `e = 0`: the single residue 0.
    ZeroExponent,
    /// `p | a` and `p | b`: no roots.
    LeadingEmpty,
    /// `p | a`, `p` does not divide `b`: one simple root.
    LeadingSimple,
    /// `p = 2`: a coset of `2^ceil(e/2)`.
    EvenSquareClass,
    /// `p = 2`: a coset of `2^(nu/2)` shifted by `2^(nu/2 - 1)`.
    EvenHalfShift,
    /// `p = 2`: no roots.
    EvenEmpty,
    /// `p = 2`: two branches lifted from a square root of `D/4`.
    EvenLifted,
    /// Odd `p`: a coset of `p^ceil(e/2)`.
    OddSquareClass,
    /// Odd `p`: no roots.
    OddEmpty,
    /// Odd `p`: two branches lifted from a square root of `D`.
    OddLifted,
}

fn require_primitive(f: &QuadPoly) -> Result<()> {
    match f.content() {
        1 => Ok(()),
        content => Err(Error::NotPrimitive { content }),
    }
}

/// Newton iteration from a simple root modulo `p` to a root modulo `p^e`.
fn hensel_lift(f: &QuadPoly, root: u64, p: u64, e: u32) -> Result<u64> {
    let mut x = root;
    let mut pk = p;
    for _ in 1..e {
        pk *= p;
        let fx = f.eval_mod(x, pk);
        let dfx = 2 * f.a() as i128 * x as i128 + f.b() as i128;
        let inv = mod_inverse(dfx, pk)?;
        x = reduce(x as i128 - (fx as u128 * inv as u128 % pk as u128) as i128, pk);
    }
    Ok(x)
}

/// `{ base mod step + m * step : m < count }`.
fn coset(base: i128, step: u64, count: u64) -> impl Iterator<Item = u64> {
    let start = reduce(base, step);
    (0..count).map(move |m| start + m * step)
}

/// Roots when `p | a`.
pub fn solve_p_divides_a(f: &QuadPoly, p: u64, e: u32) -> Result<SolutionSet> {
    Ok(solve_p_divides_a_case(f, p, e)?.0)
}

fn solve_p_divides_a_case(f: &QuadPoly, p: u64, e: u32) -> Result<(SolutionSet, SolveCase)> {
    ensure_prime(p)?;
    require_primitive(f)?;
    if f.a().rem_euclid(p as i64) != 0 {
        return Err(Error::WrongCase("p must divide a"));
    }
    if e == 0 {
        return Ok((SolutionSet::new(p, 0, [0])?, SolveCase::ZeroExponent));
    }
    if f.b().rem_euclid(p as i64) == 0 {
        return Ok((SolutionSet::new(p, e, [])?, SolveCase::LeadingEmpty));
    }
    // Mod p the polynomial is b x + c.
    let root = reduce(-(f.c() as i128) * mod_inverse(f.b() as i128, p)? as i128, p);
    let lifted = hensel_lift(f, root, p, e)?;
    Ok((SolutionSet::new(p, e, [lifted])?, SolveCase::LeadingSimple))
}

/// Roots modulo `2^e` when `a` is odd.
pub fn solve_odd_a_mod_2(f: &QuadPoly, e: u32) -> Result<SolutionSet> {
    Ok(solve_odd_a_mod_2_case(f, e)?.0)
}

fn solve_odd_a_mod_2_case(f: &QuadPoly, e: u32) -> Result<(SolutionSet, SolveCase)> {
    require_primitive(f)?;
    if f.a() % 2 == 0 {
        return Err(Error::WrongCase("a must be odd"));
    }
    if e == 0 {
        return Ok((SolutionSet::new(2, 0, [0])?, SolveCase::ZeroExponent));
    }
    let modulus = prime_power(2, e)?;
    let d = f.discriminant();
    let a = f.a() as i128;
    let b = f.b() as i128;
    let half_e_up = e.div_ceil(2);
    let half_e_down = e / 2;

    // Discriminant zero behaves as an infinite valuation: always a square class.
    let square_class = |half_b: i128| -> Result<SolutionSet> {
        let step = 1u64 << half_e_up;
        let inv = mod_inverse(a, step)? as i128;
        SolutionSet::new(2, e, coset(-inv * half_b, step, 1 << half_e_down))
    };
    if d == 0 {
        return Ok((square_class(b / 2)?, SolveCase::EvenSquareClass));
    }

    let nu = val_i128(d, 2);
    let fl = 2 * (nu / 2);
    let d4 = d / 4i128.pow(nu / 2);
    let d4_mod4 = d4.rem_euclid(4);
    let d4_mod8 = d4.rem_euclid(8);

    if (e + 1 == fl && d4_mod4 == 2) || e + 2 <= fl {
        return Ok((square_class(b / 2)?, SolveCase::EvenSquareClass));
    }
    if (e + 1 == fl && d4_mod4 != 2) || (e == fl && d4_mod4 == 1) {
        let h = nu / 2;
        let step = 1u64 << h;
        let inv = mod_inverse(a, step)? as i128;
        let base = inv * ((1i128 << (h - 1)) - b / 2);
        let set = SolutionSet::new(2, e, coset(base, step, 1 << half_e_down))?;
        return Ok((set, SolveCase::EvenHalfShift));
    }
    if (e == fl && d4_mod4 != 1) || (e > fl && d4_mod8 != 1) {
        return Ok((SolutionSet::new(2, e, [])?, SolveCase::EvenEmpty));
    }

    // Remaining: D4 = 1 (mod 8) and e > nu, with nu even.
    if nu == 0 {
        let roots = [hensel_lift(f, 0, 2, e)?, hensel_lift(f, 1, 2, e)?];
        return Ok((SolutionSet::new(2, e, roots)?, SolveCase::EvenLifted));
    }
    let h = nu / 2;
    let step = 1u64 << (e - h);
    let x = *sqrt_mod_prime_power(d / 4, 2, e)?
        .iter()
        .find(|&&r| r >= 1)
        .ok_or_else(|| Error::Internal("D/4 has no square root mod 2^e".into()))?;
    let inv = mod_inverse(a, step)? as i128;
    let residues = [x as i128, -(x as i128)]
        .into_iter()
        .flat_map(|sx| coset(inv * (sx - b / 2), step, 1 << h));
    let set = SolutionSet::new(2, e, residues)?;
    debug_assert!(set.residues().iter().all(|&r| r < modulus));
    Ok((set, SolveCase::EvenLifted))
}

/// Roots modulo `p^e` for odd `p` not dividing `a`.
pub fn solve_odd_p(f: &QuadPoly, p: u64, e: u32) -> Result<SolutionSet> {
    Ok(solve_odd_p_case(f, p, e)?.0)
}

fn solve_odd_p_case(f: &QuadPoly, p: u64, e: u32) -> Result<(SolutionSet, SolveCase)> {
    ensure_prime(p)?;
    require_primitive(f)?;
    if p == 2 || f.a().rem_euclid(p as i64) == 0 {
        return Err(Error::WrongCase("p must be odd and not divide a"));
    }
    if e == 0 {
        return Ok((SolutionSet::new(p, 0, [0])?, SolveCase::ZeroExponent));
    }
    let modulus = prime_power(p, e)?;
    let d = f.discriminant();
    let two_a = 2 * f.a() as i128;
    let b = f.b() as i128;
    let nu = if d == 0 { u32::MAX } else { val_i128(d, p) };

    if e <= nu {
        let step = p.pow(e.div_ceil(2));
        let inv = mod_inverse(two_a, step)? as i128;
        let set = SolutionSet::new(p, e, coset(-inv * b, step, p.pow(e / 2)))?;
        return Ok((set, SolveCase::OddSquareClass));
    }
    let d_p = d / (p as i128).pow(nu);
    if nu % 2 == 1 || crate::arith::legendre_symbol(d_p, p)? == -1 {
        return Ok((SolutionSet::new(p, e, [])?, SolveCase::OddEmpty));
    }
    let h = nu / 2;
    let step = p.pow(e - h);
    let x = *sqrt_mod_prime_power(d, p, e)?
        .iter()
        .find(|&&r| r >= 1)
        .ok_or_else(|| Error::Internal("D has no square root mod p^e".into()))?;
    let inv = mod_inverse(two_a, step)? as i128;
    let residues = [x as i128, -(x as i128)]
        .into_iter()
        .flat_map(|sx| coset(inv * (sx - b), step, p.pow(h)));
    let set = SolutionSet::new(p, e, residues)?;
    debug_assert!(set.residues().iter().all(|&r| r < modulus));
    Ok((set, SolveCase::OddLifted))
}

/// Roots of `f` modulo `p^e` from the closed form.
pub fn solve(f: &QuadPoly, p: u64, e: u32) -> Result<SolutionSet> {
    Ok(solve_with_case(f, p, e)?.0)
}

/// Like [`solve`], also reporting which branch applied.
pub fn solve_with_case(f: &QuadPoly, p: u64, e: u32) -> Result<(SolutionSet, SolveCase)> {
    ensure_prime(p)?;
    require_primitive(f)?;
    if e == 0 {
        return Ok((SolutionSet::new(p, 0, [0])?, SolveCase::ZeroExponent));
    }
    if f.a().rem_euclid(p as i64) == 0 {
        solve_p_divides_a_case(f, p, e)
    } else if p == 2 {
        solve_odd_a_mod_2_case(f, e)
    } else {
        solve_odd_p_case(f, p, e)
    }
}

/// Roots of `f` modulo `p^e` by scanning every residue.
pub fn solve_brute(f: &QuadPoly, p: u64, e: u32, cap: u64) -> Result<SolutionSet> {
    ensure_prime(p)?;
    let modulus = match p.checked_pow(e) {
        Some(m) if m <= cap => m,
        other => {
            return Err(Error::OracleCap {
                modulus: other.map_or(u128::MAX, u128::from),
                cap,
            })
        }
    };
    let residues = (0..modulus).filter(|&x| f.eval_mod(x, modulus) == 0);
    SolutionSet::new(p, e, residues)
}
