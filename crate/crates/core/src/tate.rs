//! Truncated elements of the Tate algebra: polynomials in t of degree ≤ M with
//! [`LaurentSeries`] coefficients, plus a certified lower bound on the
//! w-valuation of every coefficient that is not tracked.
//!
//! The tail bound is what makes evaluation at t = θ^{q^N} (outside the unit disk)
//! a certified operation rather than a heuristic one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::laurent::{vadd, LaurentSeries, Precision, SeriesJson, VAL_INF};
use crate::poly::BiPoly;

fn vmul(a: i64, k: i64) -> i64 {
    if a >= VAL_INF {
        return VAL_INF;
    }
    ((a as i128) * (k as i128)).clamp(-(VAL_INF as i128), VAL_INF as i128) as i64
}

/// Lower bound ν(i) on `val_w` of the coefficient of t^i, valid for every i ≥ 0.
///
/// Stored as a table on `0..=H` continued linearly: ν(i) = ν(H) + slope·(i - H).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValBound {
    table: Vec<i64>,
    slope: i64,
}

impl ValBound {
    pub fn new(table: Vec<i64>, slope: i64) -> ValBound {
        assert!(!table.is_empty(), "a valuation bound needs at least one table entry");
        ValBound { table, slope }
    }

    /// ν(i) = base + slope·i.
    pub fn linear(base: i64, slope: i64) -> ValBound {
        ValBound::new(vec![base], slope)
    }

    /// Tabulates a convex function on `0..=horizon` and continues it with its last increment.
    pub fn from_convex(horizon: usize, f: impl Fn(usize) -> i64) -> ValBound {
        let table: Vec<i64> = (0..=horizon).map(&f).collect();
        let last = f(horizon + 1);
        let slope = if last >= VAL_INF { VAL_INF } else { last - table[horizon] };
        ValBound::new(table, slope)
    }

    pub fn horizon(&self) -> usize {
        self.table.len() - 1
    }

    pub fn slope(&self) -> i64 {
        self.slope
    }

    pub fn at(&self, i: usize) -> i64 {
        let h = self.horizon();
        if i <= h {
            self.table[i]
        } else {
            vadd(self.table[h], vmul(self.slope, (i - h) as i64))
        }
    }

    fn scale(&self, k: i64) -> ValBound {
        ValBound::new(self.table.iter().map(|&v| vmul(v, k)).collect(), vmul(self.slope, k))
    }

    fn offset(&self, v: i64) -> ValBound {
        ValBound::new(self.table.iter().map(|&x| vadd(x, v)).collect(), self.slope)
    }

    fn extended(&self, horizon: usize) -> ValBound {
        if horizon <= self.horizon() {
            return self.clone();
        }
        ValBound::new((0..=horizon).map(|i| self.at(i)).collect(), self.slope)
    }

    fn pointwise_min(&self, other: &ValBound) -> ValBound {
        let h = self.horizon().max(other.horizon());
        ValBound::new((0..=h).map(|i| self.at(i).min(other.at(i))).collect(), self.slope.min(other.slope))
    }

    /// Pointwise max; sound when both are valid bounds for the same function.
    /// Past the common horizon the continuation of whichever bound is larger there is kept.
    pub fn pointwise_max(&self, other: &ValBound) -> ValBound {
        let h = self.horizon().max(other.horizon());
        let (a, b) = (self.extended(h), other.extended(h));
        let table = (0..=h).map(|i| a.at(i).max(b.at(i))).collect();
        let slope = if a.table[h] >= b.table[h] { a.slope } else { b.slope };
        ValBound::new(table, slope)
    }

    /// Min-plus convolution, the valuation bound for a product; the table is cut at `cap`
    /// and the continuation slope lowered until it stays under the exact convolution.
    fn convolve(&self, other: &ValBound, cap: usize) -> ValBound {
        let full_h = self.horizon() + other.horizon();
        let s = self.slope.min(other.slope);
        let full: Vec<i64> =
            (0..=full_h).map(|k| (0..=k).map(|i| vadd(self.at(i), other.at(k - i))).min().unwrap()).collect();
        if full_h <= cap {
            return ValBound::new(full, s);
        }
        let mut base = full[cap];
        if base >= VAL_INF {
            base = *full[cap..].iter().min().unwrap();
        }
        let mut slope = s;
        if base < VAL_INF {
            for (k, &v) in full.iter().enumerate().skip(cap + 1) {
                if v < VAL_INF {
                    slope = slope.min((v - base).div_euclid((k - cap) as i64));
                }
            }
        }
        let mut table = full[..cap].to_vec();
        table.push(base);
        ValBound::new(table, slope)
    }
}

/// What is known about the coefficients of t^i for i > M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// All untracked coefficients vanish: the element is a polynomial in t.
    Zero,
    /// Certified lower bound on the valuation of every coefficient.
    Bounded(ValBound),
    /// Nothing is known; the element cannot be evaluated outside |t| ≤ 1.
    Unknown,
}

/// Per-degree coefficient precision P(m) = base + slope·m used by constructors.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub base: i64,
    pub slope: i64,
}

impl Profile {
    pub fn flat(base: i64) -> Profile {
        Profile { base, slope: 0 }
    }

    /// Precision needed so evaluation at t = θ^{q^n} lands at absolute precision `target`.
    pub fn for_eval(field: &Field, n: u32, target: i64) -> Profile {
        let q = field.q() as i64;
        Profile { base: target, slope: (q - 1) * q.pow(n) }
    }

    pub fn at(&self, m: usize) -> i64 {
        self.base + self.slope * m as i64
    }

    /// Largest precision requested on degrees `0..=tdeg`.
    pub fn max_upto(&self, tdeg: usize) -> i64 {
        self.at(0).max(self.at(tdeg))
    }
}

/// Element of the Tate algebra, truncated in t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateElem {
    field: Field,
    coeffs: Vec<LaurentSeries>,
    tail: Tail,
}

/// Outcome of comparing two Tate elements on their common truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TateAgreement {
    /// Common truncation order.
    pub tdeg: usize,
    /// Smallest per-coefficient comparison window.
    pub window: Precision,
    /// First `(t-degree, w-exponent)` where the elements differ.
    pub first_mismatch: Option<(usize, i64)>,
}

impl TateAgreement {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl TateElem {
    pub fn new(field: &Field, coeffs: Vec<LaurentSeries>, tail: Tail) -> TateElem {
        assert!(!coeffs.is_empty(), "a Tate element tracks at least the constant term");
        TateElem { field: field.clone(), coeffs, tail }
    }

    /// A polynomial in t.
    pub fn polynomial(field: &Field, coeffs: Vec<LaurentSeries>) -> TateElem {
        let coeffs = if coeffs.is_empty() { vec![LaurentSeries::zero(field, Precision::Exact)] } else { coeffs };
        TateElem::new(field, coeffs, Tail::Zero)
    }

    pub fn constant(c: LaurentSeries) -> TateElem {
        let field = c.field().clone();
        TateElem::polynomial(&field, vec![c])
    }

    pub fn one(field: &Field) -> TateElem {
        TateElem::constant(LaurentSeries::one(field))
    }

    pub fn zero(field: &Field) -> TateElem {
        TateElem::constant(LaurentSeries::zero(field, Precision::Exact))
    }

    /// The variable t.
    pub fn t(field: &Field) -> TateElem {
        TateElem::polynomial(field, vec![LaurentSeries::zero(field, Precision::Exact), LaurentSeries::one(field)])
    }

    /// Exact image of a polynomial in F_q[θ, t].
    pub fn from_bipoly(b: &BiPoly) -> TateElem {
        let coeffs = b.coeffs().iter().map(LaurentSeries::from_poly).collect();
        TateElem::polynomial(b.field(), coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Truncation order M.
    pub fn tdeg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LaurentSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &LaurentSeries {
        &self.coeffs[m]
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_polynomial(&self) -> bool {
        self.tail == Tail::Zero
    }

    /// Replaces the tail claim (constructors install closed-form bounds here).
    pub fn with_tail(mut self, tail: Tail) -> TateElem {
        self.tail = tail;
        self
    }

    /// Smallest coefficient precision over the tracked range.
    pub fn min_prec(&self) -> Precision {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap()
    }

    /// Valuation bound valid for every index, combining the tail claim with tracked data.
    pub fn effective_bound(&self) -> Option<ValBound> {
        let m = self.tdeg();
        let tracked = |i: usize| self.coeffs[i].val_bound();
        match &self.tail {
            Tail::Unknown => None,
            Tail::Zero => {
                let mut table: Vec<i64> = (0..=m).map(tracked).collect();
                table.push(VAL_INF);
                Some(ValBound::new(table, VAL_INF))
            }
            Tail::Bounded(b) => {
                let h = b.horizon().max(m + 1);
                let table = (0..=h).map(|i| if i <= m { b.at(i).max(tracked(i)) } else { b.at(i) }).collect();
                Some(ValBound::new(table, b.slope))
            }
        }
    }

    /// Drops t-degrees above `tdeg`; a polynomial that loses terms gets an exact-data tail.
    pub fn truncate_t(&self, tdeg: usize) -> TateElem {
        if tdeg >= self.tdeg() {
            return self.clone();
        }
        let tail = match &self.tail {
            Tail::Zero => Tail::Bounded(self.effective_bound().unwrap()),
            t => t.clone(),
        };
        TateElem::new(&self.field, self.coeffs[..=tdeg].to_vec(), tail)
    }

    /// Truncates each coefficient to the profile precision.
    pub fn truncate_prec(&self, profile: Profile) -> TateElem {
        let coeffs = self.coeffs.iter().enumerate().map(|(m, c)| c.truncate(profile.at(m))).collect();
        TateElem::new(&self.field, coeffs, self.tail.clone())
    }

    fn combined_tdeg(&self, other: &TateElem, both_poly: usize) -> usize {
        match (self.is_polynomial(), other.is_polynomial()) {
            (true, true) => both_poly,
            (true, false) => other.tdeg(),
            (false, true) => self.tdeg(),
            (false, false) => self.tdeg().min(other.tdeg()),
        }
    }

    fn zero_coeff(&self) -> LaurentSeries {
        LaurentSeries::zero(&self.field, Precision::Exact)
    }

    fn coeff_or_zero(&self, m: usize) -> LaurentSeries {
        if m <= self.tdeg() {
            self.coeffs[m].clone()
        } else {
            debug_assert!(self.is_polynomial());
            self.zero_coeff()
        }
    }

    pub fn add(&self, other: &TateElem) -> TateElem {
        let tdeg = self.combined_tdeg(other, self.tdeg().max(other.tdeg()));
        let coeffs = (0..=tdeg).map(|m| self.coeff_or_zero(m).add(&other.coeff_or_zero(m))).collect();
        let tail = match (&self.tail, &other.tail) {
            (Tail::Zero, Tail::Zero) => Tail::Zero,
            (Tail::Unknown, _) | (_, Tail::Unknown) => Tail::Unknown,
            _ => Tail::Bounded(self.effective_bound().unwrap().pointwise_min(&other.effective_bound().unwrap())),
        };
        TateElem::new(&self.field, coeffs, tail)
    }

    pub fn neg(&self) -> TateElem {
        TateElem::new(&self.field, self.coeffs.iter().map(|c| c.neg()).collect(), self.tail.clone())
    }

    pub fn sub(&self, other: &TateElem) -> TateElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TateElem) -> TateElem {
        let tdeg = self.combined_tdeg(other, self.tdeg() + other.tdeg());
        let mut coeffs = Vec::with_capacity(tdeg + 1);
        for m in 0..=tdeg {
            let lo = m.saturating_sub(other.tdeg());
            let hi = m.min(self.tdeg());
            let mut acc: Option<LaurentSeries> = None;
            for i in lo..=hi {
                let (a, b) = (&self.coeffs[i], &other.coeffs[m - i]);
                if a.is_zero() && a.is_exact() || b.is_zero() && b.is_exact() {
                    continue;
                }
                let term = a.mul(b);
                acc = Some(match acc {
                    None => term,
                    Some(s) => s.add(&term),
                });
            }
            coeffs.push(acc.unwrap_or_else(|| self.zero_coeff()));
        }
        let tail = match (&self.tail, &other.tail) {
            (Tail::Zero, Tail::Zero) => Tail::Zero,
            (Tail::Unknown, _) | (_, Tail::Unknown) => Tail::Unknown,
            _ => {
                let a = self.effective_bound().unwrap();
                let b = other.effective_bound().unwrap();
                let cap = a.horizon().max(b.horizon()).max(4 * (tdeg + 1));
                Tail::Bounded(a.convolve(&b, cap))
            }
        };
        TateElem::new(&self.field, coeffs, tail)
    }

    pub fn pow(&self, mut e: u64) -> TateElem {
        let mut base = self.clone();
        let mut acc = TateElem::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies every coefficient by a constant series.
    pub fn scale(&self, c: &LaurentSeries) -> TateElem {
        let coeffs = self.coeffs.iter().map(|x| x.mul(c)).collect();
        let tail = match &self.tail {
            Tail::Bounded(b) => Tail::Bounded(b.offset(c.val_bound())),
            t => t.clone(),
        };
        TateElem::new(&self.field, coeffs, tail)
    }

    /// Coefficient-wise n-fold Frobenius twist; t is fixed.
    pub fn twist(&self, n: u32) -> Result<TateElem> {
        let coeffs = self.coeffs.iter().map(|c| c.twist(n as i64)).collect::<Result<Vec<_>>>()?;
        let stride = (self.field.q() as i64).pow(n);
        let tail = match &self.tail {
            Tail::Bounded(b) => Tail::Bounded(b.scale(stride)),
            t => t.clone(),
        };
        Ok(TateElem::new(&self.field, coeffs, tail))
    }

    /// Evaluates at t = θ^{q^n}, certifying that the result is correct to O(w^target).
    pub fn eval_at_theta_power(&self, n: u32, target: i64) -> Result<LaurentSeries> {
        let f = &self.field;
        let q = f.q() as i64;
        let qn = q.pow(n);
        let e = (q - 1) * qn;
        let m = self.tdeg();
        for (j, c) in self.coeffs.iter().enumerate() {
            if let Precision::Finite(p) = c.prec() {
                let reach = p - e * j as i64;
                if reach < target {
                    return Err(Error::CannotCertify(format!(
                        "coefficient of t^{j} is known to w^{p}, which reaches only w^{reach} after substituting t = theta^(q^{n}); need w^{target}"
                    )));
                }
            }
        }
        match &self.tail {
            Tail::Zero => {}
            Tail::Unknown => {
                return Err(Error::CannotCertify("no tail bound for the untracked t-coefficients".into()));
            }
            Tail::Bounded(b) => {
                let h = b.horizon().max(m + 1);
                for i in (m + 1)..=h {
                    let v = b.at(i);
                    if v < VAL_INF && v - e * (i as i64) < target {
                        return Err(Error::CannotCertify(format!(
                            "tail bound at t^{i} is w^{v}, below w^{target} after substitution; raise the t-truncation"
                        )));
                    }
                }
                let vh = b.at(h);
                if vh < VAL_INF && (b.slope < e || vh - e * (h as i64) < target) {
                    return Err(Error::CannotCertify(format!(
                        "tail bound grows with slope {} beyond t^{h}, needs slope ≥ {e} and margin at the horizon",
                        b.slope
                    )));
                }
            }
        }
        let mut acc = LaurentSeries::zero(f, Precision::Finite(target));
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = j as i64 * qn;
            let term = c.truncate(target + e * j as i64).shift(-e * j as i64).scale(f.sign(k));
            acc = acc.add(&term);
        }
        Ok(acc.truncate(target))
    }

    pub fn agreement(&self, other: &TateElem) -> TateAgreement {
        let tdeg = self.tdeg().min(other.tdeg());
        let mut window = Precision::Exact;
        let mut first = None;
        for m in 0..=tdeg {
            let a = self.coeffs[m].agreement(&other.coeffs[m]);
            window = window.min(a.window);
            if first.is_none() {
                if let Some(e) = a.first_mismatch {
                    first = Some((m, e));
                }
            }
        }
        TateAgreement { tdeg, window, first_mismatch: first }
    }

    /// Tracked indices whose actual valuation undercuts the claimed tail bound.
    pub fn tail_violations(&self) -> Vec<usize> {
        match &self.tail {
            Tail::Bounded(b) => self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(i, c)| c.val().is_some_and(|v| v < b.at(*i)))
                .map(|(i, _)| i)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Adds `c·w^e` to the coefficient of t^m (used to perturb test inputs). Polynomials
    /// are padded with zeros when `m` exceeds their degree.
    pub fn perturbed(&self, m: usize, e: i64, c: Fq) -> TateElem {
        let mut out = self.clone();
        while out.coeffs.len() <= m {
            out.coeffs.push(LaurentSeries::zero(&self.field, Precision::Exact));
        }
        let bump = LaurentSeries::monomial(&self.field, c, e);
        out.coeffs[m] = out.coeffs[m].add(&bump);
        out
    }

    pub fn to_json(&self) -> TateJson {
        let (tail_bound, tail_slope) = match &self.tail {
            Tail::Zero => (Some(Vec::new()), None),
            Tail::Unknown => (None, None),
            Tail::Bounded(_) => {
                let eb = self.effective_bound().unwrap();
                let rows = ((self.tdeg() + 1)..=eb.horizon()).map(|i| (i, eb.at(i))).collect();
                (Some(rows), Some(eb.slope))
            }
        };
        TateJson { tdeg: self.tdeg(), coeffs: self.coeffs.iter().map(|c| c.to_json()).collect(), tail_bound, tail_slope }
    }
}

/// JSON form of a Tate element; `tail_slope` continues `tail_bound` linearly.
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct TateJson {
    pub tdeg: usize,
    pub coeffs: Vec<SeriesJson>,
    pub tail_bound: Option<Vec<(usize, i64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_slope: Option<i64>,
}

/// Binomial coefficient mod p by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..kd {
            c = c * ((nd - i) % p) % p;
        }
        let mut den = 1u64;
        for i in 1..=kd {
            den = den * (i % p) % p;
        }
        // Fermat inverse.
        let mut inv = 1u64;
        let (mut b, mut e) = (den, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc = acc * c % p * inv % p;
        n /= p;
        k /= p;
    }
    acc
}

/// `1/(t - θ^{q^l})^n` truncated at t-degree `tdeg`.
///
/// With e = (q-1)q^l one has -θ^{q^l} = w^{-e}, so the coefficient of t^k is the exact
/// monomial C(-n, k)·w^{e(n+k)}.
pub fn geometric_factor(field: &Field, l: u32, n: u32, tdeg: usize) -> Result<TateElem> {
    if l < 1 {
        return Err(Error::Domain(format!(
            "1/(t - theta^(q^{l})) is not a unit of the Tate algebra; the shift must be at least 1"
        )));
    }
    let q = field.q() as i64;
    let p = field.p() as u64;
    let e = (q - 1) * q.pow(l);
    let n64 = n as u64;
    let coeffs = (0..=tdeg)
        .map(|k| {
            let mag = binom_mod_p(n64 + k as u64 - 1, k as u64, p) as i64;
            let c = field.mul(field.from_int(mag), field.sign(k as i64));
            LaurentSeries::monomial(field, c, e * (n as i64 + k as i64))
        })
        .collect();
    Ok(TateElem::new(field, coeffs, Tail::Bounded(ValBound::linear(e * n as i64, e))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FqPoly;

    fn k(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn t_minus_theta_pow(f: &Field, power: u32) -> TateElem {
        let th = FqPoly::theta(f).pow((f.q() as u64).pow(power));
        TateElem::polynomial(f, vec![LaurentSeries::from_poly(&th).neg(), LaurentSeries::one(f)])
    }

    #[test]
    fn multiplying_by_one() {
        let f = k(3);
        let g = geometric_factor(&f, 1, 2, 8).unwrap();
        let h = g.mul(&TateElem::one(&f));
        assert_eq!(h.coeffs(), g.coeffs());
        let (a, b) = (h.effective_bound().unwrap(), g.effective_bound().unwrap());
        assert!((0..60).all(|i| a.at(i) == b.at(i)));
    }

    #[test]
    fn geometric_factor_inverts_linear_term() {
        for q in [2, 3, 4] {
            let f = k(q);
            let g = geometric_factor(&f, 1, 1, 10).unwrap();
            let prod = g.mul(&t_minus_theta_pow(&f, 1));
            assert_eq!(prod.tdeg(), 10);
            assert!(prod.coeff(0).agreement(&LaurentSeries::one(&f)).agrees());
            for m in 1..=10 {
                assert!(prod.coeff(m).is_zero(), "q={q} m={m}: {}", prod.coeff(m));
            }
        }
    }

    #[test]
    fn geometric_factor_constant_term() {
        let f = k(3);
        let g = geometric_factor(&f, 2, 3, 4).unwrap();
        // (-θ^9)^{-3}
        let expect = LaurentSeries::from_poly(&FqPoly::theta(&f).pow(9).neg()).pow(3).inv().unwrap();
        assert_eq!(g.coeff(0), &expect);
        assert!(matches!(geometric_factor(&f, 0, 1, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn q2_geometric_series() {
        let f = k(2);
        let g = geometric_factor(&f, 1, 1, 5).unwrap();
        for m in 0..=5 {
            // -θ^{-2} θ^{-2m}
            let expect = LaurentSeries::theta_pow(&f, -2 - 2 * m as i64).neg();
            assert_eq!(g.coeff(m), &expect);
        }
    }

    #[test]
    fn product_of_factors_matches_polynomial_inverse() {
        let f = k(2);
        let tdeg = 12;
        let prod = geometric_factor(&f, 1, 1, tdeg).unwrap().mul(&geometric_factor(&f, 2, 1, tdeg).unwrap());
        let poly = t_minus_theta_pow(&f, 1).mul(&t_minus_theta_pow(&f, 2));
        let check = prod.mul(&poly);
        assert!(check.coeff(0).agreement(&LaurentSeries::one(&f)).agrees());
        for m in 1..=tdeg {
            assert!(check.coeff(m).is_zero());
        }
        assert!(prod.tail_violations().is_empty());
    }

    #[test]
    fn add_negation_vanishes() {
        let f = k(5);
        let g = geometric_factor(&f, 1, 3, 6).unwrap();
        let z = g.add(&g.neg());
        assert!(z.coeffs().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn twist_fixes_t() {
        let f = k(3);
        let tt = TateElem::t(&f);
        let x = t_minus_theta_pow(&f, 0);
        assert_eq!(x.twist(1).unwrap(), t_minus_theta_pow(&f, 1));
        assert_eq!(tt.mul(&x).twist(1).unwrap(), tt.mul(&x.twist(1).unwrap()));
        assert_eq!(x.twist(0).unwrap(), x);
    }

    #[test]
    fn evaluation() {
        let f = k(3);
        let c = LaurentSeries::theta_pow(&f, 2);
        assert_eq!(TateElem::constant(c.clone()).eval_at_theta_power(0, 50).unwrap(), c.truncate(50));
        let x = t_minus_theta_pow(&f, 0);
        let v = x.eval_at_theta_power(1, 40).unwrap();
        let expect = LaurentSeries::poly_embed(&FqPoly::theta(&f).pow(3).sub(&FqPoly::theta(&f)), 40);
        assert_eq!(v, expect);
    }

    #[test]
    fn evaluation_refuses_without_tail() {
        let f = k(2);
        let g = geometric_factor(&f, 1, 1, 6).unwrap().with_tail(Tail::Unknown);
        assert!(matches!(g.eval_at_theta_power(0, 10), Err(Error::CannotCertify(_))));
        // 1/(t - θ^2) at t = θ^2 is a pole; the slope test must refuse.
        let g = geometric_factor(&f, 1, 1, 6).unwrap();
        assert!(matches!(g.eval_at_theta_power(1, 10), Err(Error::CannotCertify(_))));
        // At t = θ it converges: 1/(θ - θ^2).
        let v = g.eval_at_theta_power(0, 8).unwrap();
        let expect = LaurentSeries::from_poly(&FqPoly::theta(&f).sub(&FqPoly::theta(&f).pow(2))).inv_to(8).unwrap();
        assert!(v.agreement(&expect).agrees_to(8));
    }

    #[test]
    fn binomials_mod_p() {
        assert_eq!(binom_mod_p(4, 2, 3), 0);
        assert_eq!(binom_mod_p(5, 2, 7), 3);
        assert_eq!(binom_mod_p(3, 1, 2), 1);
        assert_eq!(binom_mod_p(0, 0, 5), 1);
    }

    #[test]
    fn convolution_bound_is_sound_past_the_cap() {
        let a = ValBound::new(vec![0, 1, 5, 9], 4);
        let b = ValBound::new(vec![0, 0, 0], 1);
        let capped = a.convolve(&b, 2);
        let full = a.convolve(&b, 100);
        for i in 0..40 {
            assert!(capped.at(i) <= full.at(i), "i={i}");
        }
    }

    fn arb_tate(q: u32) -> impl proptest::strategy::Strategy<Value = TateElem> {
        use proptest::prelude::*;
        proptest::collection::vec(proptest::collection::vec((0u8..q as u8, -4i64..12), 0..4), 1..5).prop_map(move |rows| {
            let f = Field::new(q).unwrap();
            let coeffs = rows
                .into_iter()
                .map(|terms| {
                    let terms: Vec<(i64, Fq)> = terms.into_iter().map(|(c, e)| (e, Fq(c))).collect();
                    LaurentSeries::from_terms(&f, &terms, Precision::Finite(30))
                })
                .collect();
            TateElem::new(&f, coeffs, Tail::Bounded(ValBound::linear(-4, 0)))
        })
    }

    proptest::proptest! {
        #[test]
        fn twist_is_multiplicative(a in arb_tate(3), b in arb_tate(3)) {
            let lhs = a.mul(&b).twist(1).unwrap();
            let rhs = a.twist(1).unwrap().mul(&b.twist(1).unwrap());
            proptest::prop_assert!(lhs.agreement(&rhs).agrees());
            proptest::prop_assert!(lhs.tail_violations().is_empty() && rhs.tail_violations().is_empty());
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_tate(2), b in arb_tate(2)) {
            let f = a.field().clone();
            let a = TateElem::polynomial(&f, a.coeffs().to_vec()).mul(&geometric_factor(&f, 1, 1, 20).unwrap());
            let b = TateElem::polynomial(&f, b.coeffs().to_vec()).mul(&geometric_factor(&f, 2, 1, 20).unwrap());
            let ea = a.eval_at_theta_power(0, 4).unwrap();
            let eb = b.eval_at_theta_power(0, 4).unwrap();
            let eab = a.mul(&b).eval_at_theta_power(0, 4).unwrap();
            proptest::prop_assert!(ea.mul(&eb).agreement(&eab).agrees());
        }

        #[test]
        fn tracked_coefficients_respect_product_tail(a in arb_tate(3)) {
            let g = geometric_factor(a.field(), 1, 2, 6).unwrap();
            let p = g.mul(&g).mul(&geometric_factor(a.field(), 2, 1, 6).unwrap());
            proptest::prop_assert!(p.tail_violations().is_empty());
        }
    }
}
