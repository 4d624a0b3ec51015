use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::{LaurentSeries, Precision};
use crate::poly::FqPoly;

use super::power_sum::{power_sum, power_sum_valuation_bound};
use super::{Caps, IndexTuple};

/// Smallest I such that every term with leading degree i_1 > I is O(w^prec).
pub fn zeta_cutoff(q: u32, idx: &IndexTuple, prec: i64) -> usize {
    let n1 = idx.weights()[0];
    let mut i = 0;
    while power_sum_valuation_bound(q, i + 1, n1) < prec {
        i += 1;
    }
    i
}

/// ζ(n_1, …, n_d) = Σ_{i_1 > ⋯ > i_d ≥ 0} ∏_j S_{i_j}(n_j), to absolute precision `prec`.
pub fn mzv(field: &Field, idx: &IndexTuple, prec: i64, caps: &Caps) -> Result<LaurentSeries> {
    let top = zeta_cutoff(field.q(), idx, prec);
    let w = idx.weights();
    let d = w.len();
    let zero = || LaurentSeries::zero(field, Precision::Finite(prec));
    // Level j holds V_j(i) = S_i(n_j) · Σ_{k<i} V_{j+1}(k) for i = 0..=top.
    let mut level: Vec<LaurentSeries> = Vec::with_capacity(top + 1);
    for i in 0..=top {
        level.push(power_sum(field, i, w[d - 1], prec, caps)?);
    }
    for j in (0..d - 1).rev() {
        let mut next = Vec::with_capacity(top + 1);
        let mut prefix = zero();
        for (i, below) in level.iter().enumerate() {
            // A vanishing prefix (nothing with smaller degree yet) makes the product vanish too.
            if prefix.is_zero() {
                next.push(zero());
            } else {
                next.push(power_sum(field, i, w[j], prec, caps)?.mul(&prefix));
            }
            prefix = prefix.add(below);
        }
        level = next;
    }
    Ok(level.iter().fold(zero(), |acc, v| acc.add(v)).truncate(prec))
}

/// Result of the direct oracle: the value and the precision it certifies.
#[derive(Clone, Debug)]
pub struct OracleValue {
    pub value: LaurentSeries,
    pub certified: i64,
}

const ORACLE_TERM_CAP: u64 = 2_000_000;

/// Direct sum over tuples of monics with deg a_1 > ⋯ > deg a_d, deg a_1 ≤ `maxdeg`.
///
/// Independent of the power-sum route: each term is a single inverse of the product
/// polynomial. Omitted terms have w-valuation ≥ n_1(maxdeg+1)(q-1).
pub fn mzv_bruteforce_oracle(field: &Field, idx: &IndexTuple, maxdeg: usize, prec: i64) -> Result<OracleValue> {
    let q = field.q() as i64;
    let w = idx.weights();
    let certified = prec.min(w[0] as i64 * (maxdeg as i64 + 1) * (q - 1));
    let d = w.len();
    let mut degs = vec![0usize; d];
    let mut acc = LaurentSeries::zero(field, Precision::Finite(certified));
    let mut count = 0u64;
    fn choose_degrees(
        field: &Field,
        w: &[u32],
        pos: usize,
        limit: usize,
        degs: &mut Vec<usize>,
        acc: &mut LaurentSeries,
        count: &mut u64,
        certified: i64,
    ) -> Result<()> {
        if pos == w.len() {
            let total: u64 = degs.iter().map(|&g| (field.q() as u64).pow(g as u32)).product();
            *count += total;
            if *count > ORACLE_TERM_CAP {
                return Err(Error::Resource(format!("oracle would enumerate more than {ORACLE_TERM_CAP} tuples")));
            }
            return sum_over_monics(field, w, degs, 0, &FqPoly::one(field), acc, certified);
        }
        let remaining = w.len() - pos - 1;
        for g in remaining..=limit {
            degs[pos] = g;
            choose_degrees(field, w, pos + 1, g.saturating_sub(1), degs, acc, count, certified)?;
        }
        Ok(())
    }
    fn sum_over_monics(
        field: &Field,
        w: &[u32],
        degs: &[usize],
        pos: usize,
        partial: &FqPoly,
        acc: &mut LaurentSeries,
        certified: i64,
    ) -> Result<()> {
        if pos == w.len() {
            let term = LaurentSeries::from_poly(partial).inv_to(certified)?;
            *acc = acc.add(&term);
            return Ok(());
        }
        for a in FqPoly::monics(field, degs[pos]) {
            sum_over_monics(field, w, degs, pos + 1, &partial.mul(&a.pow(w[pos] as u64)), acc, certified)?;
        }
        Ok(())
    }
    if maxdeg + 1 >= d {
        choose_degrees(field, w, 0, maxdeg, &mut degs, &mut acc, &mut count, certified)?;
    }
    Ok(OracleValue { value: acc, certified })
}
