//! Exact periods of `g(n) = prod |f(n+i)| / lcm f(n+i)` for quadratic `f`,
//! together with brute-force oracles that check every closed form.

pub mod arith;
pub mod congruence;
pub mod distance;
pub mod error;
pub mod nat;
pub mod oracle;
pub mod period;
pub mod selftest;

pub use arith::{ExtNat, QuadPoly};
pub use congruence::{solve, SolutionSet};
pub use error::{Error, Result};
pub use nat::BigNat;
pub use period::{smallest_period, PeriodReport};
