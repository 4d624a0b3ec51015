//! Constructors for the named objects: Carlitz factorials, power sums,
//! multizeta values, the Carlitz period, Ω, multiple polylogarithms and
//! Anderson–Thakur polynomials.

mod anderson_thakur;
mod chang;
mod factorial;
mod index;
mod period;
mod polylog;
mod power_sum;
mod zeta;

pub use anderson_thakur::{anderson_thakur, interpolation_target, verify_at, AtPoly};
pub use chang::{at_tuple, certifying_tdeg, chang_eval, chang_rhs, ChangReport};
pub use factorial::{carlitz_factorial, d_factor};
pub use index::{parity, AlphaTuple, IndexTuple, Parity};
pub use period::{omega, pi_carlitz, omega_bound};
pub use polylog::{mcpl, omega_power_mcpl, polylog_bounds, PolylogBounds};
pub use power_sum::{power_sum, power_sum_valuation_bound};
pub use zeta::{mzv, mzv_bruteforce_oracle, zeta_cutoff, OracleValue};

/// Enumeration and search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest number of monic polynomials a single power sum may enumerate.
    pub max_monics: u64,
    /// Largest t-degree tried when solving for an Anderson–Thakur polynomial.
    pub at_max_tdeg: usize,
    /// Twists checked beyond the fitted ones (the identity is verified for i ≤ max(3, …)).
    pub at_checks: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_monics: 4096, at_max_tdeg: 12, at_checks: 3 }
    }
}

impl Caps {
    /// Largest degree whose monics fit in the enumeration budget.
    pub fn max_power_sum_degree(&self, q: u32) -> usize {
        let mut d = 0usize;
        let mut count = 1u64;
        while count.saturating_mul(q as u64) <= self.max_monics {
            count *= q as u64;
            d += 1;
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_caps() {
        let c = Caps::default();
        assert_eq!(c.max_power_sum_degree(2), 12);
        assert_eq!(c.max_power_sum_degree(3), 7);
        assert_eq!(c.max_power_sum_degree(4), 6);
        assert_eq!(c.max_power_sum_degree(64), 2);
    }
}
