#![allow(dead_code)]

use std::io::Write;

use quadlcm_core::arith::QuadPoly;
use quadlcm_core::period::{compute_bk, is_eventually_periodic};

pub const COEFF: i64 = 9;

pub fn poly(a: i64, b: i64, c: i64) -> QuadPoly {
    QuadPoly::new(a, b, c).unwrap()
}

/// Every primitive `f` with coefficients in `[-COEFF, COEFF]`, `a != 0`.
pub fn primitive_grid() -> Vec<QuadPoly> {
    let mut out = Vec::new();
    for a in -COEFF..=COEFF {
        if a == 0 {
            continue;
        }
        for b in -COEFF..=COEFF {
            for c in -COEFF..=COEFF {
                let f = poly(a, b, c);
                if f.is_primitive() {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Primitive grid polynomials with `a > 0`; the rest are their negatives.
pub fn positive_grid() -> Vec<QuadPoly> {
    primitive_grid().into_iter().filter(|f| f.a() > 0).collect()
}

/// Deterministic `(f, k)` instances with `k <= 8`, `g` eventually periodic
/// and `B_k <= bk_budget`, at most `per_k` for each `k`, spread evenly over
/// the grid.
pub fn period_instances(bk_budget: u64, per_k: usize) -> Vec<(QuadPoly, u64)> {
    let grid = positive_grid();
    let mut out = Vec::new();
    for k in 1..=8u64 {
        let eligible: Vec<QuadPoly> = grid
            .iter()
            .copied()
            .filter(|f| is_eventually_periodic(f, k))
            .filter(|f| compute_bk(f, k).is_ok_and(|b| b <= bk_budget.into()))
            .collect();
        let stride = (eligible.len() / per_k).max(1);
        out.extend(eligible.into_iter().step_by(stride).take(per_k).map(|f| (f, k)));
    }
    out
}

/// Writes straight to stdout so the line shows even when the harness
/// captures output of passing tests.
pub fn report(criterion: u32, pass: bool, detail: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "criterion {criterion}: {} | {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}
