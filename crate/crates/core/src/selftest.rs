//! Grid-wide consistency checks between the closed forms and the oracles.

use serde::{Deserialize, Serialize};

use crate::arith::{ExtNat, QuadPoly};
use crate::congruence::{solve, solve_brute};
use crate::distance::{min_distance_closed, min_distance_from_set};
use crate::error::Result;
use crate::oracle::{empirical_smallest_period, Window};
use crate::period::{
    compute_bk, is_eventually_periodic, local_period, local_period_via_bracket, smallest_period,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestConfig {
    /// Coefficients range over `[-coeff, coeff]`.
    pub coeff: i64,
    /// Largest modulus `p^e` for the exhaustive root scans.
    pub modulus_limit: u64,
    /// Period instances are limited to `B_k` at most this.
    pub bk_budget: u64,
    /// Largest window size `k`.
    pub k_max: u64,
    pub window: Window,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            coeff: 9,
            modulus_limit: 10_000,
            bk_budget: 20_000,
            k_max: 8,
            window: Window::default(),
        }
    }
}

impl SelftestConfig {
    /// A smaller grid that finishes in a few seconds.
    pub fn quick() -> Self {
        SelftestConfig {
            coeff: 4,
            modulus_limit: 1_000,
            bk_budget: 2_000,
            k_max: 5,
            window: Window::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
/// Failures kept per check; the count is still exact.
const KEEP: usize = 10;

struct Tally {
    name: &'static str,
    cases: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < KEEP {
            self.failures.push(what());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name.to_string(),
            cases: self.cases,
            failures: self.failures,
        }
    }
}

fn grid(coeff: i64) -> Vec<QuadPoly> {
    let mut out = Vec::new();
    for a in -coeff..=coeff {
        for b in -coeff..=coeff {
            for c in -coeff..=coeff {
                if let Ok(f) = QuadPoly::new(a, b, c) {
                    if f.is_primitive() {
                        out.push(f);
                    }
                }
            }
        }
    }
    out
}

/// Runs every check and reports each one, failing only on errors that
/// prevent a check from running at all.
pub fn run(config: &SelftestConfig) -> Result<Vec<CheckOutcome>> {
    let polys = grid(config.coeff);
    let mut roots = Tally::new("roots: closed form = exhaustive scan");
    let mut dist = Tally::new("minimal distance: closed form = scan, nondecreasing in e");
    for f in &polys {
        for p in PRIMES {
            let mut prev = ExtNat::Finite(0);
            let mut e = 0;
            while p.pow(e) <= config.modulus_limit {
                let brute = solve_brute(f, p, e, config.modulus_limit)?;
                roots.check(solve(f, p, e)? == brute, || format!("{f} mod {p}^{e}"));
                let direct = min_distance_from_set(&brute).d;
                let closed = min_distance_closed(f, p, e)?.d;
                dist.check(closed == direct && prev <= direct, || format!("{f} at {p}^{e}"));
                prev = direct;
                e += 1;
            }
        }
    }

    let mut periods = Tally::new("smallest period = empirical scan (falsifier)");
    let mut paths = Tally::new("local period: bracket path = closed form");
    for f in polys.iter().filter(|f| f.a() > 0) {
        for k in 1..=config.k_max {
            if !is_eventually_periodic(f, k) {
                break;
            }
            for p in PRIMES.iter().copied().filter(|&p| f.a() % p as i64 != 0) {
                let via = local_period_via_bracket(f, p, k)?;
                paths.check(via == local_period(f, p, k)?, || format!("{f} k={k} p={p}"));
            }
            if compute_bk(f, k)? > config.bk_budget.into() {
                continue;
            }
            let engine = smallest_period(f, k)?.period;
            let scan = empirical_smallest_period(f, k, &config.window)?.period;
            periods.check(engine == scan, || format!("{f} k={k}: {engine} vs {scan}"));
        }
    }
    Ok(vec![
        roots.finish(),
        dist.finish(),
        periods.finish(),
        paths.finish(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_grid_is_clean() {
        let out = run(&SelftestConfig::quick()).unwrap();
        assert_eq!(out.len(), 4);
        for check in &out {
            assert!(check.passed(), "{}: {:?}", check.name, check.failures);
            assert!(check.cases > 0, "{}", check.name);
        }
    }
}
