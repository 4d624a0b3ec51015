use crate::field::{Field, Fq};
use crate::laurent::{LaurentSeries, Precision, VAL_INF};
use crate::tate::{Profile, Tail, TateElem, ValBound};

/// The Carlitz period π̃ = w^{-q} ∏_{i≥1} (1 - w^{(q-1)(q^i-1)})^{-1}, to absolute precision `prec`.
///
/// This is (-θ)^{q/(q-1)} ∏ (1 - θ^{1-q^i})^{-1} rewritten in w; θ^{1-q^i} carries the sign
/// (-1)^{q^i-1}, which is +1 in odd characteristic and irrelevant in characteristic 2.
pub fn pi_carlitz(field: &Field, prec: i64) -> LaurentSeries {
    let q = field.q() as i64;
    let rel = prec + q;
    let mut unit = LaurentSeries::one(field).truncate(rel.max(0));
    let mut i = 1u32;
    loop {
        let step = (q - 1) * (q.pow(i) - 1);
        if step >= rel {
            break;
        }
        let terms: Vec<(i64, Fq)> = (0..).map(|k| k * step).take_while(|&e| e < rel).map(|e| (e, Fq::ONE)).collect();
        unit = unit.mul(&LaurentSeries::from_terms(field, &terms, Precision::Finite(rel)));
        i += 1;
    }
    unit.shift(-q)
}

/// ν(j) = q^{j+1}: the coefficient of t^j in Ω is w^q times a sum of j distinct
/// monomials w^{(q-1)q^i}, i ≥ 1, the smallest being q + (q-1)(q + ⋯ + q^j).
pub fn omega_bound(q: u32, tdeg: usize) -> ValBound {
    let qq = q as i128;
    let nu = |j: usize| -> i64 {
        let v = qq.checked_pow(j as u32 + 1).unwrap_or(i128::MAX);
        v.min(VAL_INF as i128) as i64
    };
    ValBound::from_convex(tdeg + 1, nu)
}

/// Ω(t) = w^q ∏_{i≥1} (1 + t w^{(q-1)q^i}), truncated at t-degree `tdeg` with the
/// coefficient of t^m known to w^{profile(m)}.
///
/// The factor form follows from -t/θ^{q^i} = t w^{(q-1)q^i}.
pub fn omega(field: &Field, tdeg: usize, profile: Profile) -> TateElem {
    let q = field.q() as i64;
    let top = profile.max_upto(tdeg);
    let rel = top - q;
    let mut acc = TateElem::one(field);
    let mut i = 1u32;
    loop {
        let e = (q - 1) * q.pow(i);
        if e >= rel {
            break;
        }
        let factor = TateElem::polynomial(field, vec![LaurentSeries::one(field), LaurentSeries::monomial(field, Fq::ONE, e)]);
        acc = acc.mul(&factor).truncate_t(tdeg);
        i += 1;
    }
    let coeffs: Vec<LaurentSeries> = (0..=tdeg)
        .map(|m| {
            let c = if m <= acc.tdeg() { acc.coeff(m).clone() } else { LaurentSeries::zero(field, Precision::Exact) };
            c.shift(q).truncate(profile.at(m))
        })
        .collect();
    TateElem::new(field, coeffs, Tail::Bounded(omega_bound(field.q(), tdeg)))
}
