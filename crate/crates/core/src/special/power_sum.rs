use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::{LaurentSeries, Precision};
use crate::poly::FqPoly;

use super::Caps;

/// Lower bound on the w-valuation of S_d(k).
///
/// Expanding a^{-k} = θ^{-dk}(1 + b θ^{-d})^{-k} over the monics a = θ^d + b, only the
/// powers b^m with m ≥ q^d - 1 survive the sum over b, since Σ_b b^m vanishes for
/// smaller m. This gives val_w S_d(k) ≥ (q-1)(dk + q^d - 1) for d ≥ 1.
pub fn power_sum_valuation_bound(q: u32, d: usize, k: u32) -> i64 {
    if d == 0 {
        return 0;
    }
    let qd = (q as i128).checked_pow(d as u32).unwrap_or(i128::MAX / 4).min(i64::MAX as i128 / 4);
    let b = (q as i128 - 1) * (d as i128 * k as i128 + qd - 1);
    b.min(crate::laurent::VAL_INF as i128) as i64
}

/// S_d(k) = Σ a^{-k} over monic a of degree d, by enumeration, to absolute precision `prec`.
pub fn power_sum(field: &Field, d: usize, k: u32, prec: i64, caps: &Caps) -> Result<LaurentSeries> {
    let cap = caps.max_power_sum_degree(field.q());
    if d > cap {
        return Err(Error::Resource(format!(
            "power sum S_{d}({k}) needs {}^{d} monics; the cap allows degree ≤ {cap}",
            field.q()
        )));
    }
    let mut acc = LaurentSeries::zero(field, Precision::Finite(prec));
    if prec <= power_sum_valuation_bound(field.q(), d, k) {
        return Ok(acc);
    }
    for a in FqPoly::monics(field, d) {
        let term = LaurentSeries::from_poly(&a.pow(k as u64)).inv_to(prec)?;
        acc = acc.add(&term);
    }
    Ok(acc)
}
