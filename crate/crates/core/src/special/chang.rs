use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::{LaurentSeries, VAL_INF};
use crate::tate::Profile;

use super::anderson_thakur::{anderson_thakur, AtPoly};
use super::factorial::carlitz_factorial;
use super::period::pi_carlitz;
use super::polylog::{omega_power_mcpl, PolylogBounds};
use super::zeta::mzv;
use super::{AlphaTuple, Caps, IndexTuple};

/// Both sides of the evaluation identity (Ω^c L)(θ^{q^N}) = (Γ ζ / π̃^c)^{q^N}.
#[derive(Clone, Debug)]
pub struct ChangReport {
    pub idx: IndexTuple,
    pub twist: u32,
    pub target: i64,
    pub lhs: LaurentSeries,
    pub rhs: LaurentSeries,
    /// Number of w-exponents on which the two sides are known to agree.
    pub window: Option<i64>,
    pub agrees: bool,
    pub at_polys: Vec<AtPoly>,
    /// t-truncation used for the left side.
    pub tdeg: usize,
}

/// The Anderson–Thakur tuple (H_{n_1 - 1}, …, H_{n_d - 1}) for `idx`.
pub fn at_tuple(field: &Field, idx: &IndexTuple, caps: &Caps) -> Result<(AlphaTuple, Vec<AtPoly>)> {
    let polys = idx.weights().iter().map(|&n| anderson_thakur(field, n, caps)).collect::<Result<Vec<_>>>()?;
    let alphas = AlphaTuple::new(polys.iter().map(|p| p.h.clone()).collect(), idx.weights().to_vec())?;
    Ok((alphas, polys))
}

/// Smallest t-truncation M for which the entire bound of Ω^c L certifies evaluation
/// at t = θ^{q^n} to `target`.
pub fn certifying_tdeg(field: &Field, bounds: &PolylogBounds, c: u32, n: u32, target: i64) -> Result<usize> {
    let q = field.q() as i64;
    let e = (q - 1) * q.pow(n);
    for m in 0..=4096usize {
        let horizon = (m + 1).max(bounds.t_alpha + c as usize * (n as usize + 2));
        let b = bounds.entire_tail(horizon);
        let table_ok = ((m + 1)..=horizon).all(|i| {
            let v = b.at(i);
            v >= VAL_INF || v - e * i as i64 >= target
        });
        let vh = b.at(horizon);
        let beyond_ok = vh >= VAL_INF || (b.slope() >= e && vh - e * horizon as i64 >= target);
        if table_ok && beyond_ok {
            return Ok(m);
        }
    }
    Err(Error::Resource("no t-truncation up to 4096 certifies the evaluation".into()))
}

/// (Γ_{n_1}⋯Γ_{n_d} ζ(n) / π̃^c)^{q^twist} to O(w^target).
pub fn chang_rhs(field: &Field, idx: &IndexTuple, twist: u32, target: i64, caps: &Caps) -> Result<LaurentSeries> {
    let q = field.q() as i64;
    let qn = q.pow(twist);
    let inner = target.div_euclid(qn) + i64::from(target.rem_euclid(qn) != 0);
    let gamma = idx
        .weights()
        .iter()
        .fold(crate::poly::FqPoly::one(field), |acc, &n| acc.mul(&carlitz_factorial(field, n as u64)));
    let g_deg = gamma.degree().unwrap_or(0) as i64;
    let work = inner + (q - 1) * g_deg + q;
    let c = idx.weight() as u64;
    let zeta = mzv(field, idx, work, caps)?;
    let pi_c = pi_carlitz(field, work).pow(c).inv()?;
    let x = LaurentSeries::from_poly(&gamma).mul(&zeta).mul(&pi_c).truncate(inner);
    Ok(x.twist(twist as i64)?.truncate(target))
}

/// Computes both sides of the evaluation identity at t = θ^{q^twist} to O(w^target).
pub fn chang_eval(field: &Field, idx: &IndexTuple, twist: u32, target: i64, caps: &Caps) -> Result<ChangReport> {
    let (alphas, at_polys) = at_tuple(field, idx, caps)?;
    let bounds = PolylogBounds::new(&alphas);
    let c = idx.weight();
    let tdeg = certifying_tdeg(field, &bounds, c, twist, target)?;
    let f = omega_power_mcpl(field, &alphas, tdeg, Profile::for_eval(field, twist, target), twist)?;
    let lhs = f.eval_at_theta_power(twist, target)?;
    let rhs = chang_rhs(field, idx, twist, target, caps)?;
    let ag = lhs.agreement(&rhs);
    Ok(ChangReport {
        idx: idx.clone(),
        twist,
        target,
        agrees: ag.agrees_to(target),
        window: ag.window.finite(),
        lhs,
        rhs,
        at_polys,
        tdeg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_weight_one_untwisted() {
        let f = Field::new(3).unwrap();
        let r = chang_eval(&f, &IndexTuple::single(1).unwrap(), 0, 40, &Caps::default()).unwrap();
        assert!(r.agrees, "{:?}", r.lhs.agreement(&r.rhs));
    }

    #[test]
    fn depth_two_twisted_once() {
        let f = Field::new(2).unwrap();
        let r = chang_eval(&f, &IndexTuple::new(vec![1, 2]).unwrap(), 1, 40, &Caps::default()).unwrap();
        assert!(r.agrees, "{:?}", r.lhs.agreement(&r.rhs));
    }

    #[test]
    fn weight_above_q_uses_nontrivial_polynomial() {
        let f = Field::new(2).unwrap();
        let r = chang_eval(&f, &IndexTuple::single(3).unwrap(), 1, 30, &Caps::default()).unwrap();
        assert!(!r.at_polys[0].h.is_one());
        assert!(r.agrees);
    }
}
