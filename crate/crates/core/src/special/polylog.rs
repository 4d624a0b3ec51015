use std::collections::HashMap;

use crate::error::Result;
use crate::field::Field;
use crate::laurent::{LaurentSeries, Precision, VAL_INF};
use crate::poly::BiPoly;
use crate::tate::{geometric_factor, Profile, Tail, TateElem, ValBound};

use super::period::omega;
use super::AlphaTuple;

/// Valuation data for the nested polylogarithm sum.
///
/// The term with indices i_1 > ⋯ > i_d has every t-coefficient of w-valuation at least
/// (q-1)·Σ_j f_j(i_j) with f_j(i) = n_j(q + ⋯ + q^i) - h_j q^i, h_j = deg_θ α_j, and each
/// power of t beyond deg_t(α_1⋯α_d) costs at least (q-1)q more.
#[derive(Clone, Debug)]
pub struct PolylogBounds {
    q: i128,
    weights: Vec<i128>,
    heights: Vec<i128>,
    /// Sum of the t-degrees of the α_j.
    pub t_alpha: usize,
}

impl PolylogBounds {
    pub fn new(alphas: &AlphaTuple) -> PolylogBounds {
        let q = alphas.alphas().first().map_or(2, |a| a.field().q()) as i128;
        PolylogBounds {
            q,
            weights: alphas.weights().iter().map(|&n| n as i128).collect(),
            heights: alphas.alphas().iter().map(|a| a.theta_degree().unwrap_or(0) as i128).collect(),
            t_alpha: alphas.alphas().iter().map(|a| a.t_degree().unwrap_or(0)).sum(),
        }
    }

    fn depth(&self) -> usize {
        self.weights.len()
    }

    /// f_j(i), which is strictly increasing in i under the norm condition.
    pub fn f(&self, j: usize, i: usize) -> i128 {
        let q = self.q;
        let qi = q.saturating_pow(i as u32).min(VAL_INF as i128);
        let geometric = (qi * q - q) / (q - 1);
        self.weights[j] * geometric - self.heights[j] * qi
    }

    /// (q-1)·Σ_j f_j(i_j) for a full index tuple.
    pub fn term_bound(&self, idx: &[usize]) -> i128 {
        (self.q - 1) * idx.iter().enumerate().map(|(j, &i)| self.f(j, i)).sum::<i128>()
    }

    /// Least possible Σ_{k ≥ from} f_k(i_k): every remaining index at its minimum d-1-k.
    fn rest_min(&self, from: usize) -> i128 {
        let d = self.depth();
        (from..d).map(|k| self.f(k, d - 1 - k)).sum()
    }

    fn clamp(v: i128) -> i64 {
        v.clamp(-(VAL_INF as i128), VAL_INF as i128) as i64
    }

    /// Smallest valuation of any term: all indices at their minimum.
    pub fn base(&self) -> i64 {
        Self::clamp((self.q - 1) * self.rest_min(0))
    }

    /// Valuation bound for every t-coefficient of L.
    pub fn tail(&self) -> ValBound {
        let d = self.depth();
        if d == 0 {
            return ValBound::new(vec![0, VAL_INF], VAL_INF);
        }
        let q = self.q;
        let base0 = (q - 1) * self.rest_min(0);
        // Powers of t beyond t_alpha need a geometric factor, hence i_1 ≥ 1.
        let base1 = (q - 1) * (self.f(0, (d - 1).max(1)) + self.rest_min(1));
        let mut table = vec![Self::clamp(base0); self.t_alpha + 1];
        table.push(Self::clamp(base1 + (q - 1) * q));
        ValBound::new(table, Self::clamp((q - 1) * q))
    }

    /// Valuation bound for Ω^c·L with c = Σ n_j, an entire function of t:
    /// qc + (q-1)Σ_j f_j(d-j) + (q-1)·E_c(m - t_alpha), where E_c(k) is the sum of the
    /// k smallest elements of the multiset {q^l with multiplicity c : l ≥ 1}.
    pub fn entire_tail(&self, horizon: usize) -> ValBound {
        let q = self.q;
        let c: i128 = self.weights.iter().sum();
        let base = q * c + (q - 1) * self.rest_min(0);
        let t_alpha = self.t_alpha;
        let e_c = move |k: usize| -> i128 {
            if c == 0 {
                return if k == 0 { 0 } else { VAL_INF as i128 };
            }
            let k = k as i128;
            let full = k / c;
            let part = k % c;
            let mut s = 0i128;
            for l in 1..=full {
                s = s.saturating_add(c.saturating_mul(q.saturating_pow(l as u32)));
            }
            s.saturating_add(part.saturating_mul(q.saturating_pow(full as u32 + 1)))
        };
        ValBound::from_convex(horizon, |m| {
            let k = m.saturating_sub(t_alpha);
            Self::clamp(base.saturating_add((q - 1).saturating_mul(e_c(k))))
        })
    }
}

/// Bounds for the polylogarithm of `alphas`.
pub fn polylog_bounds(alphas: &AlphaTuple) -> PolylogBounds {
    PolylogBounds::new(alphas)
}

fn enumerate_tuples(b: &PolylogBounds, threshold: i128) -> Vec<Vec<usize>> {
    let d = b.depth();
    let mut out = Vec::new();
    let mut cur = vec![0usize; d];
    fn rec(b: &PolylogBounds, pos: usize, upper: Option<usize>, partial: i128, threshold: i128, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let d = b.depth();
        if pos == d {
            out.push(cur.clone());
            return;
        }
        let rest = b.rest_min(pos + 1);
        let mut i = d - 1 - pos;
        loop {
            if upper.is_some_and(|u| i >= u) {
                break;
            }
            let here = partial + b.f(pos, i);
            if (b.q - 1) * (here + rest) >= threshold {
                break;
            }
            cur[pos] = i;
            rec(b, pos + 1, Some(i), here, threshold, cur, out);
            i += 1;
        }
    }
    rec(b, 0, None, 0, threshold, &mut cur, &mut out);
    out
}

/// L_{α,n}(t) = Σ_{i_1 > ⋯ > i_d ≥ 0} α_1^{(i_1)}⋯α_d^{(i_d)} / ∏_j ((t-θ^q)⋯(t-θ^{q^{i_j}}))^{n_j},
/// truncated at t-degree `tdeg`, the coefficient of t^m known to w^{profile(m)}.
pub fn mcpl(field: &Field, alphas: &AlphaTuple, tdeg: usize, profile: Profile) -> Result<TateElem> {
    if alphas.is_empty() {
        return Ok(TateElem::one(field));
    }
    let b = PolylogBounds::new(alphas);
    let q = field.q() as i128;
    let t_alpha = b.t_alpha as i128;
    let threshold = (0..=tdeg)
        .map(|m| profile.at(m) as i128 - (q - 1) * q * (m as i128 - t_alpha).max(0))
        .max()
        .unwrap();
    let pmax = profile.max_upto(tdeg);
    let mut coeffs: Vec<LaurentSeries> = (0..=tdeg).map(|m| LaurentSeries::zero(field, Precision::Finite(profile.at(m)))).collect();
    let mut geo_cache: HashMap<(u32, u32), TateElem> = HashMap::new();
    for tuple in enumerate_tuples(&b, threshold) {
        let term = polylog_term(field, alphas, &tuple, tdeg, pmax, &mut geo_cache)?;
        for (m, c) in coeffs.iter_mut().enumerate() {
            if m <= term.tdeg() {
                *c = c.add(&term.coeff(m).truncate(profile.at(m)));
            }
        }
    }
    Ok(TateElem::new(field, coeffs, Tail::Bounded(b.tail())))
}

fn polylog_term(
    field: &Field,
    alphas: &AlphaTuple,
    tuple: &[usize],
    tdeg: usize,
    pmax: i64,
    cache: &mut HashMap<(u32, u32), TateElem>,
) -> Result<TateElem> {
    let numerator = alphas
        .alphas()
        .iter()
        .zip(tuple)
        .fold(BiPoly::one(field), |acc, (a, &i)| acc.mul(&a.twist(i as u32)));
    let q = field.q() as i64;
    let depth_margin = (q - 1) * numerator.theta_degree().unwrap_or(0) as i64;
    let work = Profile::flat(pmax + depth_margin);
    let mut denom: Option<TateElem> = None;
    for l in 1..=tuple[0] {
        let c: u32 = alphas.weights().iter().zip(tuple).filter(|(_, &i)| i >= l).map(|(&n, _)| n).sum();
        let g = match cache.get(&(l as u32, c)) {
            Some(g) => g.clone(),
            None => {
                let g = geometric_factor(field, l as u32, c, tdeg)?;
                cache.insert((l as u32, c), g.clone());
                g
            }
        };
        let g = g.truncate_prec(work);
        denom = Some(match denom {
            None => g,
            Some(acc) => acc.mul(&g).truncate_prec(work),
        });
    }
    let num = TateElem::from_bipoly(&numerator);
    Ok(match denom {
        None => num.truncate_t(tdeg),
        Some(g) => num.mul(&g),
    })
}

/// Ω^c·L_{α,n} with c = Σ n_j, with the entire-function tail bound installed.
///
/// This is the form that can be evaluated at t = θ^{q^N} for any N; `eval_n` only sizes
/// the tabulated horizon of the bound.
pub fn omega_power_mcpl(field: &Field, alphas: &AlphaTuple, tdeg: usize, profile: Profile, eval_n: u32) -> Result<TateElem> {
    let b = PolylogBounds::new(alphas);
    let c: u32 = alphas.weights().iter().sum();
    let pmax = profile.max_upto(tdeg);
    let l_flat = Profile::flat(pmax);
    let om_flat = Profile::flat(pmax + (-b.base()).max(0));
    let om = omega(field, tdeg, om_flat).pow(c as u64);
    let l = mcpl(field, alphas, tdeg, l_flat)?;
    let prod = om.mul(&l).truncate_prec(profile);
    let horizon = (tdeg + 1).max(b.t_alpha + c as usize * (eval_n as usize + 2));
    Ok(prod.with_tail(Tail::Bounded(b.entire_tail(horizon))))
}
