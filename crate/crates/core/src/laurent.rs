//! Truncated Laurent series in the uniformizer w = (-θ)^{-1/(q-1)}.
//!
//! Every object computed by this crate lives in F_q((w)): k_∞ = F_q((θ^{-1})) is
//! the subring of series whose exponents are all divisible by q - 1 (sector 0),
//! and the Carlitz period sits in sector -q mod (q - 1). With this choice
//! θ = -w^{-(q-1)} exactly, and a forward Frobenius twist is the exponent map
//! j ↦ j q^n.
//!
//! A series stores a dense window of coefficients starting at its valuation,
//! together with an absolute precision: coefficients of w^j are known for
//! j < prec, everything else is O(w^prec). Exact series (embedded
//! polynomials, monomials) carry [`Precision::Exact`].

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::poly::FqPoly;

/// Stand-in for +∞ in valuation bounds.
pub const VAL_INF: i64 = i64::MAX / 4;

/// Saturating sum of two valuation bounds, absorbing into [`VAL_INF`].
#[inline]
pub fn vadd(a: i64, b: i64) -> i64 {
    if a >= VAL_INF || b >= VAL_INF {
        VAL_INF
    } else {
        a.saturating_add(b).clamp(-VAL_INF, VAL_INF)
    }
}

/// Absolute precision of a series.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Precision {
    Finite(i64),
    Exact,
}

impl Precision {
    pub fn shift(self, k: i64) -> Precision {
        match self {
            Precision::Finite(p) => Precision::Finite(p + k),
            Precision::Exact => Precision::Exact,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Precision::Finite(p) => Some(p),
            Precision::Exact => None,
        }
    }

    /// Whether the coefficient of w^j is known.
    pub fn covers(self, j: i64) -> bool {
        match self {
            Precision::Finite(p) => j < p,
            Precision::Exact => true,
        }
    }

    fn as_bound(self) -> i64 {
        self.finite().unwrap_or(VAL_INF)
    }
}

/// Residue class mod (q-1) shared by all nonzero exponents.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    Pure(u32),
    Mixed,
}

impl Serialize for Sector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Sector::Pure(r) => s.serialize_u32(*r),
            Sector::Mixed => s.serialize_str("mixed"),
        }
    }
}

/// `|x|_∞ = |θ|_∞^{num/den}`, kept as a reduced fraction with positive denominator.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Norm {
    pub num: i64,
    pub den: i64,
}

impl Norm {
    pub fn new(num: i64, den: i64) -> Norm {
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        let s = if den < 0 { -1 } else { 1 };
        Norm { num: s * num / g, den: s * den / g }
    }
}

impl PartialOrd for Norm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Norm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Element of F_q((w)) known to a finite or infinite absolute precision.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    /// Exponent of `coeffs[0]`; unused when `coeffs` is empty.
    val: i64,
    /// Nonzero at both ends, or empty for a series that vanishes to its precision.
    coeffs: Vec<Fq>,
    prec: Precision,
    sector: Sector,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries[val={:?}, prec={:?}, sector={:?}] {}", self.val(), self.prec, self.sector, self)
    }
}

impl LaurentSeries {
    /// Series with coefficients `coeffs[k]` at w^{val + k}, truncated below `prec`.
    /// The sector is read off the nonzero exponents.
    pub fn from_coeffs(field: &Field, val: i64, coeffs: Vec<Fq>, prec: Precision) -> Self {
        let mut s = LaurentSeries { field: field.clone(), val, coeffs, prec, sector: Sector::Pure(0) };
        s.normalize();
        s.sector = s.observed_sector().unwrap_or(Sector::Pure(0));
        s
    }

    /// From sparse `(exponent, coefficient)` terms; repeated exponents are summed.
    pub fn from_terms(field: &Field, terms: &[(i64, Fq)], prec: Precision) -> Self {
        let live: Vec<&(i64, Fq)> = terms.iter().filter(|(e, c)| !c.is_zero() && prec.covers(*e)).collect();
        if live.is_empty() {
            return Self::zero(field, prec);
        }
        let lo = live.iter().map(|(e, _)| *e).min().unwrap();
        let hi = live.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![Fq::ZERO; (hi - lo + 1) as usize];
        for &&(e, c) in &live {
            let k = (e - lo) as usize;
            coeffs[k] = field.add(coeffs[k], c);
        }
        Self::from_coeffs(field, lo, coeffs, prec)
    }

    pub fn zero(field: &Field, prec: Precision) -> Self {
        LaurentSeries { field: field.clone(), val: 0, coeffs: Vec::new(), prec, sector: Sector::Pure(0) }
    }

    /// Zero in a prescribed sector (useful as an additive identity for pure-sector sums).
    pub fn zero_in_sector(field: &Field, prec: Precision, sector: Sector) -> Self {
        let mut z = Self::zero(field, prec);
        z.sector = sector;
        z
    }

    pub fn one(field: &Field) -> Self {
        Self::monomial(field, Fq::ONE, 0)
    }

    pub fn constant(field: &Field, c: Fq) -> Self {
        Self::monomial(field, c, 0)
    }

    /// Exact `c w^e`.
    pub fn monomial(field: &Field, c: Fq, e: i64) -> Self {
        Self::from_coeffs(field, e, vec![c], Precision::Exact)
    }

    /// The uniformizer w.
    pub fn w(field: &Field) -> Self {
        Self::monomial(field, Fq::ONE, 1)
    }

    /// Exact θ^k for any integer k: θ^k = (-1)^k w^{-k(q-1)}.
    pub fn theta_pow(field: &Field, k: i64) -> Self {
        let qm1 = field.q() as i64 - 1;
        Self::monomial(field, field.sign(k), -k * qm1)
    }

    /// Exact image of a polynomial under θ = -w^{-(q-1)}.
    pub fn from_poly(a: &FqPoly) -> Self {
        let field = a.field();
        let qm1 = field.q() as i64 - 1;
        let terms: Vec<(i64, Fq)> = a
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, &c)| (-(k as i64) * qm1, field.mul(c, field.sign(k as i64))))
            .collect();
        if terms.is_empty() {
            return Self::zero(field, Precision::Exact);
        }
        Self::from_terms(field, &terms, Precision::Exact)
    }

    /// Polynomial embedding truncated at absolute precision `prec` (w-units).
    pub fn poly_embed(a: &FqPoly, prec: i64) -> Self {
        Self::from_poly(a).truncate(prec)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Valuation, or `None` if the series vanishes to its precision.
    pub fn val(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// A lower bound on the true valuation: the valuation if known, else the precision.
    pub fn val_bound(&self) -> i64 {
        self.val().unwrap_or_else(|| self.prec.as_bound())
    }

    pub fn prec(&self) -> Precision {
        self.prec
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.prec == Precision::Exact
    }

    /// Coefficient of w^j, or `None` when j is beyond the precision.
    pub fn coeff(&self, j: i64) -> Option<Fq> {
        if !self.prec.covers(j) {
            return None;
        }
        if self.coeffs.is_empty() || j < self.val {
            return Some(Fq::ZERO);
        }
        Some(self.coeffs.get((j - self.val) as usize).copied().unwrap_or(Fq::ZERO))
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Fq)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, &c)| (self.val + k as i64, c))
    }

    /// Exponent one past the last stored coefficient.
    fn end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    fn observed_sector(&self) -> Option<Sector> {
        let qm1 = self.field.q() as i64 - 1;
        let mut seen: Option<i64> = None;
        for (e, _) in self.terms() {
            let r = e.rem_euclid(qm1);
            match seen {
                None => seen = Some(r),
                Some(s) if s != r => return Some(Sector::Mixed),
                _ => {}
            }
        }
        seen.map(|r| Sector::Pure(r as u32))
    }

    fn normalize(&mut self) {
        if let Precision::Finite(p) = self.prec {
            let keep = (p - self.val).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }

    fn check_field(&self, other: &LaurentSeries) {
        assert!(self.field == other.field, "series over different fields: {:?} vs {:?}", self.field, other.field);
    }

    fn merge_sector(a: &LaurentSeries, b: &LaurentSeries) -> Sector {
        match (a.is_zero(), b.is_zero()) {
            (true, false) => b.sector,
            (false, true) => a.sector,
            _ if a.sector == b.sector => a.sector,
            (true, true) => a.sector,
            _ => Sector::Mixed,
        }
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        self.check_field(other);
        let f = &self.field;
        let prec = self.prec.min(other.prec);
        let sector = Self::merge_sector(self, other);
        let (lo, hi) = match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero_in_sector(f, prec, sector),
            (false, true) => (self.val, self.end()),
            (true, false) => (other.val, other.end()),
            (false, false) => (self.val.min(other.val), self.end().max(other.end())),
        };
        let hi = match prec {
            Precision::Finite(p) => hi.min(p),
            Precision::Exact => hi,
        };
        if hi <= lo {
            return Self::zero_in_sector(f, prec, sector);
        }
        let mut out = vec![Fq::ZERO; (hi - lo) as usize];
        for s in [self, other] {
            for (k, &c) in s.coeffs.iter().enumerate() {
                let e = s.val + k as i64;
                if e >= hi {
                    break;
                }
                let idx = (e - lo) as usize;
                out[idx] = f.add(out[idx], c);
            }
        }
        let mut r = LaurentSeries { field: f.clone(), val: lo, coeffs: out, prec, sector };
        r.normalize();
        r
    }

    pub fn neg(&self) -> LaurentSeries {
        let f = &self.field;
        let mut r = self.clone();
        for c in r.coeffs.iter_mut() {
            *c = f.neg(*c);
        }
        r
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fq) -> LaurentSeries {
        let f = &self.field;
        let mut r = self.clone();
        for x in r.coeffs.iter_mut() {
            *x = f.mul(*x, c);
        }
        r.normalize();
        r
    }

    /// Multiplication by w^k.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        let qm1 = self.field.q() as i64 - 1;
        let mut r = self.clone();
        r.val += k;
        r.prec = r.prec.shift(k);
        if let Sector::Pure(s) = r.sector {
            r.sector = Sector::Pure((s as i64 + k).rem_euclid(qm1) as u32);
        }
        if r.coeffs.is_empty() {
            r.val = 0;
        }
        r
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        self.check_field(other);
        let f = &self.field;
        let qm1 = f.q() as i64 - 1;
        let sector = match (self.sector, other.sector) {
            (Sector::Pure(a), Sector::Pure(b)) => Sector::Pure(((a + b) as i64 % qm1) as u32),
            _ => Sector::Mixed,
        };
        let exact_zero = |s: &LaurentSeries| s.is_zero() && s.is_exact();
        if exact_zero(self) || exact_zero(other) {
            return Self::zero_in_sector(f, Precision::Exact, sector);
        }
        let prec = self.prec.shift(other.val_bound()).min(other.prec.shift(self.val_bound()));
        if self.is_zero() || other.is_zero() {
            return Self::zero_in_sector(f, prec, sector);
        }
        let lo = self.val + other.val;
        let mut hi = self.end() + other.end() - 1;
        if let Precision::Finite(p) = prec {
            hi = hi.min(p);
        }
        if hi <= lo {
            return Self::zero_in_sector(f, prec, sector);
        }
        let len = (hi - lo) as usize;
        let mut out = vec![0u8; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            let row = f.mul_row(a);
            let lim = (len - i).min(other.coeffs.len());
            for (slot, &b) in out[i..i + lim].iter_mut().zip(&other.coeffs[..lim]) {
                if b.0 != 0 {
                    *slot = f.add_row(Fq(*slot))[row[b.0 as usize] as usize];
                }
            }
        }
        let coeffs = out.into_iter().map(Fq).collect();
        let mut r = LaurentSeries { field: f.clone(), val: lo, coeffs, prec, sector };
        r.normalize();
        r
    }

    pub fn pow(&self, mut e: u64) -> LaurentSeries {
        let mut base = self.clone();
        let mut acc = LaurentSeries::one(&self.field);
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

    /// Multiplicative inverse at the precision implied by the input:
    /// `prec(1/f) = prec(f) - 2 val(f)`.
    ///
    /// Exact inputs are only invertible when they are monomials; use
    /// [`LaurentSeries::inv_to`] for the rest.
    pub fn inv(&self) -> Result<LaurentSeries> {
        self.inv_capped(None)
    }

    /// Inverse truncated at absolute precision at most `prec`.
    pub fn inv_to(&self, prec: i64) -> Result<LaurentSeries> {
        self.inv_capped(Some(prec))
    }

    fn inv_capped(&self, cap: Option<i64>) -> Result<LaurentSeries> {
        let f = &self.field;
        if self.is_zero() {
            return Err(Error::NotInvertible { prec: self.prec.as_bound() });
        }
        let v = self.val;
        let lead_inv = f.inv(self.coeffs[0])?;
        let qm1 = f.q() as i64 - 1;
        let sector = match self.sector {
            Sector::Pure(s) => Sector::Pure((-(s as i64)).rem_euclid(qm1) as u32),
            Sector::Mixed => Sector::Mixed,
        };
        if self.is_exact() && self.coeffs.len() == 1 {
            let r = LaurentSeries { field: f.clone(), val: -v, coeffs: vec![lead_inv], prec: Precision::Exact, sector };
            return Ok(match cap {
                Some(p) => r.truncate(p),
                None => r,
            });
        }
        let natural = match self.prec {
            Precision::Finite(p) => Some(p - 2 * v),
            Precision::Exact => None,
        };
        let out_prec = match (natural, cap) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return Err(Error::InfinitePrecision),
        };
        let len = (out_prec + v).max(0) as usize;
        // Unit part u = f / (c w^v) = 1 + Σ_{j>=1} u_j w^j; g = 1/u by the recurrence
        // g_k = -Σ_{j=1}^{k} u_j g_{k-j}.
        let tail: Vec<(usize, Fq)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, &c)| (j, f.neg(f.mul(c, lead_inv))))
            .collect();
        let mut g = vec![Fq::ZERO; len];
        if len > 0 {
            g[0] = Fq::ONE;
        }
        for k in 1..len {
            let mut acc = Fq::ZERO;
            for &(j, nu) in &tail {
                if j > k {
                    break;
                }
                let gk = g[k - j];
                if !gk.is_zero() {
                    acc = f.add(acc, f.mul(nu, gk));
                }
            }
            g[k] = acc;
        }
        for c in g.iter_mut() {
            *c = f.mul(*c, lead_inv);
        }
        let mut r = LaurentSeries { field: f.clone(), val: -v, coeffs: g, prec: Precision::Finite(out_prec), sector };
        r.normalize();
        Ok(r)
    }

    /// The n-fold Frobenius twist: w^j ↦ w^{j q^n}; coefficients in F_q are fixed.
    pub fn twist(&self, n: i64) -> Result<LaurentSeries> {
        if n < 0 {
            return Err(Error::Unsupported(format!(
                "inverse twist (n = {n}) would need exponents in q^{n}·Z; check the forward-twisted identity instead"
            )));
        }
        let stride = (self.field.q() as i64).pow(n as u32);
        if stride == 1 {
            return Ok(self.clone());
        }
        let prec = match self.prec {
            Precision::Finite(p) => Precision::Finite(p * stride),
            Precision::Exact => Precision::Exact,
        };
        if self.is_zero() {
            return Ok(Self::zero_in_sector(&self.field, prec, self.sector));
        }
        let mut coeffs = vec![Fq::ZERO; (self.coeffs.len() - 1) * stride as usize + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * stride as usize] = c;
        }
        // q ≡ 1 mod (q - 1), so the sector is unchanged.
        Ok(LaurentSeries { field: self.field.clone(), val: self.val * stride, coeffs, prec, sector: self.sector })
    }

    /// Drops everything at or beyond w^prec.
    pub fn truncate(&self, prec: i64) -> LaurentSeries {
        let mut r = self.clone();
        r.prec = r.prec.min(Precision::Finite(prec));
        r.normalize();
        r
    }

    /// `|f|_∞` as a power of `|θ|_∞`; `None` for a series that vanishes to its precision.
    pub fn norm(&self) -> Option<Norm> {
        let qm1 = self.field.q() as i64 - 1;
        self.val().map(|v| Norm::new(-v, qm1))
    }

    /// Compares two series on their common window of precision.
    pub fn agreement(&self, other: &LaurentSeries) -> Agreement {
        let d = self.sub(other);
        Agreement { window: d.prec, first_mismatch: d.val() }
    }

    /// Whether every nonzero exponent is divisible by q - 1 (i.e. the series lies in k_∞).
    pub fn in_k_infinity(&self) -> bool {
        self.is_zero() || self.sector == Sector::Pure(0)
    }

    pub fn to_json(&self) -> SeriesJson {
        let pm = self.field.params();
        SeriesJson {
            q: pm.q,
            p: pm.p,
            m: pm.m,
            w_def: "(-theta)^(-1/(q-1))",
            val: self.val().or(self.prec.finite()),
            prec: self.prec.finite(),
            sector: self.sector,
            coeffs: self.terms().map(|(e, c)| (e, c.to_int())).collect(),
        }
    }
}

/// Outcome of comparing two series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Agreement {
    /// Common precision: the comparison covers exponents below this.
    pub window: Precision,
    /// Least exponent inside the window where the series differ.
    pub first_mismatch: Option<i64>,
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }

    /// Agreement certified on at least `w^min_window`.
    pub fn agrees_to(&self, min_window: i64) -> bool {
        self.agrees() && self.window >= Precision::Finite(min_window)
    }
}

/// JSON form of a series; field order is part of the output format.
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct SeriesJson {
    pub q: u32,
    pub p: u32,
    pub m: u32,
    pub w_def: &'static str,
    pub val: Option<i64>,
    pub prec: Option<i64>,
    pub sector: Sector,
    pub coeffs: Vec<(i64, u32)>,
}

impl std::ops::Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        LaurentSeries::add(self, rhs)
    }
}

impl std::ops::Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        LaurentSeries::sub(self, rhs)
    }
}

impl std::ops::Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        LaurentSeries::mul(self, rhs)
    }
}

impl std::ops::Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries::neg(self)
    }
}

const DISPLAY_TERMS: usize = 12;

impl fmt::Display for LaurentSeries {
    /// Σ c·θ^k for sector-0 terms and c·(-θ)^(a/(q-1)) otherwise, descending in θ.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = &self.field;
        let qm1 = field.q() as i64 - 1;
        let mut parts = Vec::new();
        for (e, c) in self.terms().take(DISPLAY_TERMS) {
            if e % qm1 == 0 {
                let k = -e / qm1;
                let c = field.mul(c, field.sign(k));
                parts.push(match k {
                    0 => format!("{c}"),
                    1 => format!("{c}*theta"),
                    k => format!("{c}*theta^{k}"),
                });
            } else {
                let n = Norm::new(-e, qm1);
                parts.push(format!("{c}*(-theta)^({}/{})", n.num, n.den));
            }
        }
        let more = self.terms().nth(DISPLAY_TERMS).is_some();
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))?;
        if more {
            write!(f, " + ...")?;
        }
        if let Precision::Finite(p) = self.prec {
            let n = Norm::new(-p, qm1);
            if n.den == 1 {
                write!(f, " + O(theta^{})", n.num)?;
            } else {
                write!(f, " + O((-theta)^({}/{}))", n.num, n.den)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    #[test]
    fn add_zero_takes_min_precision() {
        let f = k(3);
        let a = LaurentSeries::from_terms(&f, &[(0, Fq(1)), (2, Fq(2))], Precision::Finite(10));
        let z = LaurentSeries::zero(&f, Precision::Finite(6));
        let s = a.add(&z);
        assert_eq!(s.prec(), Precision::Finite(6));
        assert_eq!(s.terms().collect::<Vec<_>>(), vec![(0, Fq(1)), (2, Fq(2))]);
    }

    #[test]
    fn char3_cancellation() {
        let f = k(3);
        let a = LaurentSeries::monomial(&f, Fq(1), 2).truncate(20);
        let b = LaurentSeries::monomial(&f, Fq(2), 2).truncate(20);
        let s = a.add(&b);
        assert!(s.is_zero());
        assert_eq!(s.prec(), Precision::Finite(20));
    }

    #[test]
    fn theta_plus_theta() {
        for q in [2, 3, 4, 5] {
            let f = k(q);
            let t = LaurentSeries::theta_pow(&f, 1);
            let s = t.add(&t);
            assert_eq!(s.sector(), Sector::Pure(0));
            if f.p() == 2 {
                assert!(s.is_zero());
            } else {
                assert_eq!(s.val(), Some(-(q as i64 - 1)));
                assert_eq!(s, LaurentSeries::from_poly(&FqPoly::constant(&f, f.from_int(2)).mul(&FqPoly::theta(&f))));
            }
        }
    }

    #[test]
    fn theta_times_inverse_is_exact_one() {
        for q in [2, 3, 4, 7] {
            let f = k(q);
            let t = LaurentSeries::theta_pow(&f, 1);
            let ti = t.inv().unwrap();
            assert_eq!(ti, LaurentSeries::theta_pow(&f, -1));
            assert_eq!(ti.terms().collect::<Vec<_>>(), vec![(q as i64 - 1, f.neg(Fq::ONE))]);
            assert_eq!(t.mul(&ti), LaurentSeries::one(&f));
        }
    }

    #[test]
    fn q2_theta_squared() {
        let f = k(2);
        let t = LaurentSeries::theta_pow(&f, 1);
        let t2 = t.mul(&t);
        assert_eq!(t2.val(), Some(-2));
        assert_eq!(t2.sector(), Sector::Pure(0));
    }

    #[test]
    fn geometric_inverse() {
        let f = k(5);
        let one_minus_w = LaurentSeries::from_terms(&f, &[(0, Fq::ONE), (1, f.neg(Fq::ONE))], Precision::Finite(30));
        let g = one_minus_w.inv().unwrap();
        assert_eq!(g.prec(), Precision::Finite(30));
        for j in 0..30 {
            assert_eq!(g.coeff(j), Some(Fq::ONE));
        }
        assert_eq!(g.coeff(30), None);
    }

    #[test]
    fn inverse_precision_contract() {
        let f = k(3);
        let a = LaurentSeries::from_terms(&f, &[(-4, Fq(1)), (-2, Fq(2)), (6, Fq(1))], Precision::Finite(20));
        let ai = a.inv().unwrap();
        assert_eq!(ai.val(), Some(4));
        assert_eq!(ai.prec(), Precision::Finite(28));
        let back = ai.inv().unwrap();
        assert_eq!(back.prec(), Precision::Finite(20));
        assert!(back.agreement(&a).agrees_to(20));
        let prod = a.mul(&ai);
        assert!(prod.agreement(&LaurentSeries::one(&f)).agrees_to(24));
    }

    #[test]
    fn zero_is_not_invertible() {
        let f = k(2);
        let z = LaurentSeries::zero(&f, Precision::Finite(7));
        assert_eq!(z.inv(), Err(Error::NotInvertible { prec: 7 }));
        let p = LaurentSeries::from_poly(&FqPoly::from_ints(&f, &[1, 1]).unwrap());
        assert_eq!(p.inv(), Err(Error::InfinitePrecision));
        assert!(p.inv_to(10).is_ok());
    }

    #[test]
    fn embeddings() {
        let f3 = k(3);
        let th = LaurentSeries::poly_embed(&FqPoly::theta(&f3), 10);
        assert_eq!(th.terms().collect::<Vec<_>>(), vec![(-2, Fq(2))]);
        let f2 = k(2);
        let a = FqPoly::from_ints(&f2, &[0, 1, 1]).unwrap();
        let e = LaurentSeries::poly_embed(&a, 10);
        assert_eq!(e.terms().collect::<Vec<_>>(), vec![(-2, Fq(1)), (-1, Fq(1))]);
        assert_eq!(LaurentSeries::poly_embed(&FqPoly::one(&f2), 5).terms().collect::<Vec<_>>(), vec![(0, Fq(1))]);
    }

    #[test]
    fn twists() {
        let f = k(3);
        let th = LaurentSeries::theta_pow(&f, 1);
        assert_eq!(th.twist(1).unwrap(), LaurentSeries::theta_pow(&f, 3));
        assert_eq!(th.twist(0).unwrap(), th);
        let w = LaurentSeries::w(&f).truncate(5);
        let tw = w.twist(1).unwrap();
        assert_eq!(tw.terms().collect::<Vec<_>>(), vec![(3, Fq(1))]);
        assert_eq!(tw.prec(), Precision::Finite(15));
        assert_eq!(tw.sector(), Sector::Pure(1));
        assert!(matches!(w.twist(-1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn norm_and_sector() {
        let f = k(4);
        let s = LaurentSeries::monomial(&f, Fq(1), -4);
        assert_eq!(s.norm(), Some(Norm::new(4, 3)));
        assert_eq!(s.sector(), Sector::Pure(2));
        let mixed = s.add(&LaurentSeries::one(&f));
        assert_eq!(mixed.sector(), Sector::Mixed);
    }

    #[test]
    fn display_format() {
        let f = k(3);
        let a = LaurentSeries::from_poly(&FqPoly::from_ints(&f, &[1, 0, 1]).unwrap()).truncate(4);
        assert_eq!(a.to_string(), "1*theta^2 + 1 + O(theta^-2)");
        let w = LaurentSeries::monomial(&f, Fq(1), -3).truncate(1);
        assert_eq!(w.to_string(), "1*(-theta)^(3/2) + O((-theta)^(-1/2))");
    }

    #[test]
    fn json_shape() {
        let f = k(2);
        let a = LaurentSeries::poly_embed(&FqPoly::from_ints(&f, &[0, 1, 1]).unwrap(), 3);
        let j = serde_json::to_string(&a.to_json()).unwrap();
        assert_eq!(j, r#"{"q":2,"p":2,"m":1,"w_def":"(-theta)^(-1/(q-1))","val":-2,"prec":3,"sector":0,"coeffs":[[-2,1],[-1,1]]}"#);
    }

    fn arb_series(q: u32, prec: i64) -> impl proptest::strategy::Strategy<Value = LaurentSeries> {
        use proptest::prelude::*;
        (-6i64..6, proptest::collection::vec(0u32..q, 1..24)).prop_map(move |(v, cs)| {
            let f = Field::new(q).unwrap();
            let coeffs = cs.into_iter().map(|c| Fq(c as u8)).collect();
            LaurentSeries::from_coeffs(&f, v, coeffs, Precision::Finite(prec))
        })
    }

    proptest::proptest! {
        #[test]
        fn twist_is_a_ring_homomorphism(a in arb_series(3, 20), b in arb_series(3, 20), n in 0i64..3) {
            let lhs = a.mul(&b).twist(n).unwrap();
            let rhs = a.twist(n).unwrap().mul(&b.twist(n).unwrap());
            proptest::prop_assert!(lhs.agreement(&rhs).agrees());
            let lhs = a.add(&b).twist(n).unwrap();
            let rhs = a.twist(n).unwrap().add(&b.twist(n).unwrap());
            proptest::prop_assert!(lhs.agreement(&rhs).agrees());
        }

        #[test]
        fn unit_times_inverse_is_one(a in arb_series(4, 30)) {
            if let Some(v) = a.val() {
                let ai = a.inv().unwrap();
                let prod = a.mul(&ai);
                let window = a.prec().finite().unwrap() - v;
                proptest::prop_assert!(prod.agreement(&LaurentSeries::one(a.field())).agrees_to(window));
            }
        }

        #[test]
        fn sectors_add_under_multiplication(e1 in -20i64..20, e2 in -20i64..20, c1 in 1u8..5, c2 in 1u8..5) {
            let f = Field::new(5).unwrap();
            let a = LaurentSeries::monomial(&f, Fq(c1), e1).add(&LaurentSeries::monomial(&f, Fq(1), e1 + 4)).truncate(40);
            let b = LaurentSeries::monomial(&f, Fq(c2), e2).truncate(40);
            let expect = (e1 + e2).rem_euclid(4) as u32;
            proptest::prop_assert_eq!(a.mul(&b).sector(), Sector::Pure(expect));
        }

        #[test]
        fn higher_precision_agrees_on_shared_window(a in arb_series(2, 40), b in arb_series(2, 40)) {
            let lo = a.truncate(15).mul(&b.truncate(15));
            let hi = a.mul(&b);
            proptest::prop_assert!(lo.agreement(&hi).agrees());
        }
    }
}
