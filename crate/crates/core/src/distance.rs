//! Minimal circular distance between roots of `f` modulo `p^e`.

use serde::{Deserialize, Serialize};

use crate::arith::{ensure_prime, legendre_symbol, prime_power, val_i128, ExtNat, QuadPoly};
use crate::congruence::{solve, SolutionSet};
use crate::error::{Error, Result};
use crate::period::kf_bound;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalDistance {
    pub p: u64,
    pub e: u32,
    pub d: ExtNat,
}

/// Circular distance between two residues; `modulus` when they coincide.
pub fn pair_distance(x1: u64, x2: u64, modulus: u64) -> Result<u64> {
    for residue in [x1, x2] {
        if residue >= modulus {
            return Err(Error::ResidueOutOfRange { residue, modulus });
        }
    }
    if x1 == x2 {
        return Ok(modulus);
    }
    let gap = x1.abs_diff(x2);
    Ok(gap.min(modulus - gap))
}

/// Minimal distance read directly off a root set.
pub fn min_distance_from_set(s: &SolutionSet) -> MinimalDistance {
    let d = if s.e() == 0 {
        ExtNat::Finite(1)
    } else {
        let r = s.residues();
        match r.len() {
            0 => ExtNat::Infinite,
            1 => ExtNat::Finite(s.modulus()),
            _ => {
                // Adjacent gaps in sorted order, plus the wraparound gap.
                let wrap = s.modulus() - r[r.len() - 1] + r[0];
                let best = r.windows(2).map(|w| w[1] - w[0]).fold(wrap, u64::min);
                ExtNat::Finite(best)
            }
        }
    };
    MinimalDistance {
        p: s.p(),
        e: s.e(),
        d,
    }
}

/// Smallest `x` in `[1, p^e]` with `a^2 x^2 = D (mod p^e)`.
fn smallest_positive_root(f: &QuadPoly, p: u64, e: u32) -> Result<u64> {
    let a2 = f.a().checked_mul(f.a());
    let neg_d = i64::try_from(-f.discriminant()).ok();
    let (Some(a2), Some(neg_d)) = (a2, neg_d) else {
        return Err(Error::InvalidArgument(format!(
            "coefficients of a^2 x^2 - D overflow for {f}"
        )));
    };
    // The content divides a^2, hence is a unit modulo p.
    let aux = QuadPoly::new(a2, 0, neg_d)?;
    let g = aux.content() as i64;
    let aux = QuadPoly::new(a2 / g, 0, neg_d / g)?;
    let set = solve(&aux, p, e)?;
    set.residues()
        .iter()
        .map(|&r| if r == 0 { set.modulus() } else { r })
        .min()
        .ok_or_else(|| Error::Internal(format!("a^2 x^2 - D has no root mod {p}^{e} for {f}")))
}

/// Minimal distance from the closed form, without enumerating roots.
pub fn min_distance_closed(f: &QuadPoly, p: u64, e: u32) -> Result<MinimalDistance> {
    ensure_prime(p)?;
    if !f.is_primitive() {
        return Err(Error::NotPrimitive {
            content: f.content(),
        });
    }
    let d = closed_value(f, p, e)?;
    Ok(MinimalDistance { p, e, d })
}

fn closed_value(f: &QuadPoly, p: u64, e: u32) -> Result<ExtNat> {
    let fin = |v: u64| Ok(ExtNat::Finite(v));
    if e == 0 {
        return fin(1);
    }
    let pi = p as i64;
    if f.a().rem_euclid(pi) == 0 {
        return if f.b().rem_euclid(pi) == 0 {
            Ok(ExtNat::Infinite)
        } else {
            fin(prime_power(p, e)?)
        };
    }
    let disc = f.discriminant();
    let half_up = prime_power(p, e.div_ceil(2))?;
    if disc == 0 {
        return fin(half_up);
    }
    let nu = val_i128(disc, p);
    if p == 2 {
        let fl = 2 * (nu / 2);
        let d4 = disc / 4i128.pow(nu / 2);
        if (e == nu && d4.rem_euclid(4) == 1) || e + 1 <= fl {
            return fin(half_up);
        }
        if (e == fl && d4.rem_euclid(4) != 1) || (e > fl && d4.rem_euclid(8) != 1) {
            return Ok(ExtNat::Infinite);
        }
        if e > nu && d4.rem_euclid(8) == 1 {
            return fin(smallest_positive_root(f, 2, e + 1)?);
        }
        return Err(Error::Internal(format!(
            "no distance case for {f} at 2^{e}"
        )));
    }
    if e <= nu {
        return fin(half_up);
    }
    let d_p = disc / (p as i128).pow(nu);
    if nu % 2 == 1 || legendre_symbol(d_p, p)? == -1 {
        return Ok(ExtNat::Infinite);
    }
    fin(smallest_positive_root(f, p, e)?)
}

fn ceil_log(n: u128, p: u64) -> u32 {
    let mut t = 0;
    let mut acc = 1u128;
    while acc < n {
        acc = acc.saturating_mul(p as u128);
        t += 1;
    }
    t
}

/// The unique `e` with `d_{p^e} <= k < d_{p^(e+1)}`.
pub fn e_bracket(f: &QuadPoly, p: u64, k: u64) -> Result<u32> {
    ensure_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if let ExtNat::Finite(bound) = kf_bound(f)?.bound {
        if k > bound {
            return Err(Error::NotEventuallyPeriodic {
                k,
                witness: bound + 1,
            });
        }
    }
    let disc = f.discriminant();
    let a = f.a().unsigned_abs() as u128;
    let size = a * a * (k as u128) * (k as u128) + disc.unsigned_abs();
    let mut ceiling = ceil_log(size, p) + 2;
    if disc != 0 {
        ceiling = ceiling.max(val_i128(disc, p) + 2);
    }
    let k_ext = ExtNat::Finite(k);
    let mut e = 0u32;
    while min_distance_closed(f, p, e + 1)?.d <= k_ext {
        e += 1;
        if e > ceiling {
            return Err(Error::Internal(format!(
                "bracket scan for {f} at p = {p}, k = {k} passed ceiling {ceiling}"
            )));
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::solve_brute;
    use proptest::prelude::*;

    fn poly(a: i64, b: i64, c: i64) -> QuadPoly {
        QuadPoly::new(a, b, c).unwrap()
    }

    fn from_brute(f: &QuadPoly, p: u64, e: u32) -> ExtNat {
        min_distance_from_set(&solve_brute(f, p, e, 1_000_000).unwrap()).d
    }

    #[test]
    fn pair_distance_examples() {
        assert_eq!(pair_distance(2, 3, 5).unwrap(), 1);
        assert_eq!(pair_distance(4, 4, 25).unwrap(), 25);
        assert_eq!(pair_distance(1, 24, 25).unwrap(), 2);
        assert!(pair_distance(25, 1, 25).is_err());
    }

    #[test]
    fn from_set_examples() {
        let d = |p, e, r: &[u64]| min_distance_from_set(&SolutionSet::new(p, e, r.iter().copied()).unwrap()).d;
        assert_eq!(d(5, 1, &[2, 3]), ExtNat::Finite(1));
        assert_eq!(d(3, 2, &[]), ExtNat::Infinite);
        assert_eq!(d(2, 4, &[5]), ExtNat::Finite(16));
        assert_eq!(d(7, 0, &[0]), ExtNat::Finite(1));
        assert_eq!(d(5, 2, &[7, 18]), ExtNat::Finite(11));
    }

    #[test]
    fn closed_examples() {
        let d = |f: QuadPoly, p, e| min_distance_closed(&f, p, e).unwrap().d;
        assert_eq!(d(poly(1, 0, 1), 5, 1), ExtNat::Finite(1));
        assert_eq!(from_brute(&poly(1, 0, 1), 5, 1), ExtNat::Finite(1));
        assert_eq!(d(poly(1, 0, 1), 3, 1), ExtNat::Infinite);
        assert_eq!(d(poly(1, 0, -4), 2, 2), ExtNat::Finite(2));
        assert_eq!(from_brute(&poly(1, 0, -4), 2, 2), ExtNat::Finite(2));
        assert_eq!(d(poly(1, 0, 1), 5, 2), ExtNat::Finite(11));
        assert!(min_distance_closed(&poly(2, 4, 6), 3, 1).is_err());
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(e_bracket(&poly(1, 0, 1), 5, 1).unwrap(), 1);
        assert_eq!(e_bracket(&poly(1, 0, 1), 3, 4).unwrap(), 0);
        // d_1 = 1 <= 1 < d_2 = 2.
        assert_eq!(from_brute(&poly(1, 0, 1), 2, 1), ExtNat::Finite(2));
        assert_eq!(e_bracket(&poly(1, 0, 1), 2, 1).unwrap(), 0);
        assert_eq!(
            e_bracket(&poly(1, 3, 0), 2, 3),
            Err(Error::NotEventuallyPeriodic { k: 3, witness: 3 })
        );
    }

    #[test]
    fn witness_valuation_exists() {
        for a in 1..=4i64 {
            for b in -5..=5 {
                for c in -5..=5 {
                    let f = poly(a, b, c);
                    if !f.is_primitive() {
                        continue;
                    }
                    for p in [2u64, 3, 5] {
                        for e in 0..5u32 {
                            let lo = min_distance_closed(&f, p, e).unwrap().d;
                            let hi = min_distance_closed(&f, p, e + 1).unwrap().d;
                            if lo < hi && lo.is_finite() {
                                let bound = p.pow(e + 1) as i128;
                                let hit = (1..=bound).any(|m| {
                                    let v = f.eval(m);
                                    v != 0 && val_i128(v, p) == e
                                });
                                assert!(hit, "{f} p={p} e={e}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_bounds_the_valuation_maximum() {
        for a in 1..=5i64 {
            for b in -6..=6 {
                for c in -6..=6 {
                    let f = poly(a, b, c);
                    if !f.is_primitive() {
                        continue;
                    }
                    let bound = kf_bound(&f).unwrap().bound;
                    let disc = f.discriminant();
                    for k in 1..=50u64 {
                        if ExtNat::Finite(k) > bound {
                            break;
                        }
                        let max_val = |p: u64| {
                            (1..=k as i128)
                                .map(|i| val_i128((a as i128).pow(2) * i * i - disc, p))
                                .max()
                                .unwrap()
                        };
                        for p in [3u64, 5, 7] {
                            if a as u64 % p == 0 {
                                continue;
                            }
                            let e = e_bracket(&f, p, k).unwrap();
                            assert_eq!(max_val(p), e, "{f} p={p} k={k}");
                        }
                        if a % 2 == 1 && disc != 0 {
                            let nu = val_i128(disc, 2);
                            let d4 = disc / 4i128.pow(nu / 2);
                            let e = e_bracket(&f, 2, k).unwrap();
                            if d4.rem_euclid(8) == 1 && e > nu {
                                assert_eq!(max_val(2), e + 1, "{f} p=2 k={k}");
                            }
                        }
                    }
                }
            }
        }
    }

    fn primitive_poly() -> impl Strategy<Value = QuadPoly> {
        (-9i64..=9, -9i64..=9, -9i64..=9)
            .prop_filter("a != 0 and primitive", |&(a, b, c)| {
                a != 0 && QuadPoly::new(a, b, c).unwrap().is_primitive()
            })
            .prop_map(|(a, b, c)| poly(a, b, c))
    }

    proptest! {
        #[test]
        fn closed_matches_set(f in primitive_poly(),
                              p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
                              e in 0u32..14) {
            prop_assume!(p.pow(e) <= 10_000);
            prop_assert_eq!(min_distance_closed(&f, p, e).unwrap().d, from_brute(&f, p, e));
        }

        #[test]
        fn nondecreasing_in_e(f in primitive_poly(),
                              p in prop::sample::select(vec![2u64, 3, 5, 7]),
                              e in 0u32..10) {
            let lo = min_distance_closed(&f, p, e).unwrap().d;
            let hi = min_distance_closed(&f, p, e + 1).unwrap().d;
            prop_assert!(lo <= hi);
        }
    }
}
