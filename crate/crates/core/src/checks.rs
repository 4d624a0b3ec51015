//! Named identity checks.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::parse_targets;
use crate::field::Field;
use crate::laurent::LaurentSeries;
use crate::poly::FqPoly;
use crate::relations::{mine_confirmed, safety_margin, CertificateKind, RelationCertificate, Target};
use crate::special::{chang_eval, mcpl, mzv, AlphaTuple, Caps, IndexTuple};
use crate::tate::Profile;

pub const CHECK_NAMES: [&str; 6] = ["euler-like", "carlitz-even", "q2-identity", "frobenius-p", "shuffle", "chang"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
    Inconclusive,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "not applicable",
            CheckStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    /// w-precision to which the identity was compared.
    pub window: Option<i64>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CheckParams {
    pub prec: i64,
    pub n: Option<u32>,
    pub n1: Option<u32>,
    pub n2: Option<u32>,
    pub tuple: Option<IndexTuple>,
    pub twist: u32,
    pub tdeg: usize,
    pub degree_bound: usize,
    pub caps: Caps,
}

impl CheckParams {
    pub fn new(prec: i64) -> CheckParams {
        CheckParams { prec, n: None, n1: None, n2: None, tuple: None, twist: 0, tdeg: 16, degree_bound: 6, caps: Caps::default() }
    }

    fn need_n(&self, check: &str) -> Result<u32> {
        self.n.filter(|&n| n >= 1).ok_or_else(|| Error::Config(format!("check {check} needs --n ≥ 1")))
    }
}

fn zeta(field: &Field, w: &[u32], prec: i64, caps: &Caps) -> Result<LaurentSeries> {
    mzv(field, &IndexTuple::new(w.to_vec())?, prec, caps)
}

fn report(name: &str, status: CheckStatus, window: Option<i64>, detail: impl Into<String>) -> CheckReport {
    CheckReport { name: name.into(), status, window, detail: detail.into() }
}

/// Pass when `residual` vanishes to at least `prec`.
fn vanishing(name: &str, residual: &LaurentSeries, prec: i64, what: &str) -> CheckReport {
    let window = residual.prec().finite();
    match residual.val() {
        Some(v) if window.is_none_or(|w| v < w) => report(name, CheckStatus::Fail, window, format!("{what}: residual has valuation {v}")),
        _ if window.is_some_and(|w| w < prec) => {
            report(name, CheckStatus::Inconclusive, window, format!("{what}: only certified to w^{}", window.unwrap()))
        }
        _ => report(name, CheckStatus::Pass, window, format!("{what} vanishes to O(w^{})", window.unwrap_or(prec))),
    }
}

/// Runs a named check over `field`.
pub fn named_check(name: &str, field: &Field, params: &CheckParams) -> Result<CheckReport> {
    match name {
        "q2-identity" => q2_identity(field, params),
        "frobenius-p" => frobenius(field, params),
        "shuffle" => shuffle(field, params),
        "euler-like" => euler_like(field, params),
        "carlitz-even" => carlitz_even(field, params),
        "chang" => chang(field, params),
        other => Err(Error::Config(format!("unknown check {other:?}; known: {}", CHECK_NAMES.join(", ")))),
    }
}

fn q2_identity(field: &Field, p: &CheckParams) -> Result<CheckReport> {
    const NAME: &str = "q2-identity";
    if field.q() != 2 {
        return Ok(report(NAME, CheckStatus::NotApplicable, None, "the identity is stated for q = 2"));
    }
    // θ² + θ has valuation -2 in w.
    let z11 = zeta(field, &[1, 1], p.prec + 2, &p.caps)?;
    let z2 = zeta(field, &[2], p.prec, &p.caps)?;
    let factor = LaurentSeries::from_poly(&FqPoly::from_ints(field, &[0, 1, 1])?);
    let residual = factor.mul(&z11).sub(&z2).truncate(p.prec);
    Ok(vanishing(NAME, &residual, p.prec, "(theta^2+theta)*zeta(1,1) - zeta(2)"))
}

fn frobenius(field: &Field, p: &CheckParams) -> Result<CheckReport> {
    const NAME: &str = "frobenius-p";
    let n = p.need_n(NAME)?;
    let char_p = field.p();
    let lhs = zeta(field, &[char_p * n], p.prec, &p.caps)?;
    let rhs = zeta(field, &[n], p.prec, &p.caps)?.pow(char_p as u64);
    Ok(vanishing(NAME, &lhs.sub(&rhs), p.prec, &format!("zeta({}) - zeta({n})^{char_p}", char_p * n)))
}

/// Largest e with p^e dividing both weights and n1/p^e + n2/p^e ≤ q, if any.
pub fn shuffle_exponent(q: u32, p: u32, n1: u32, n2: u32) -> Option<u32> {
    let mut best = None;
    let mut e = 0;
    let mut pe = 1;
    while n1.is_multiple_of(pe) && n2.is_multiple_of(pe) {
        if n1 / pe + n2 / pe <= q {
            best = Some(e);
        }
        e += 1;
        pe *= p;
    }
    best
}

fn shuffle(field: &Field, p: &CheckParams) -> Result<CheckReport> {
    const NAME: &str = "shuffle";
    let (n1, n2) = match (p.n1, p.n2) {
        (Some(a), Some(b)) if a >= 1 && b >= 1 => (a, b),
        _ => return Err(Error::Config("check shuffle needs --n1 and --n2".into())),
    };
    if shuffle_exponent(field.q(), field.p(), n1, n2).is_none() {
        return Ok(report(NAME, CheckStatus::NotApplicable, None, format!("no p^e divides {n1} and {n2} with n1/p^e + n2/p^e ≤ q")));
    }
    let c = &p.caps;
    let lhs = zeta(field, &[n1], p.prec, c)?.mul(&zeta(field, &[n2], p.prec, c)?);
    let rhs = zeta(field, &[n1, n2], p.prec, c)?.add(&zeta(field, &[n2, n1], p.prec, c)?).add(&zeta(field, &[n1 + n2], p.prec, c)?);
    let what = format!("zeta({n1})zeta({n2}) - zeta({n1},{n2}) - zeta({n2},{n1}) - zeta({})", n1 + n2);
    let values = vanishing(NAME, &lhs.sub(&rhs), p.prec, &what);
    if values.status != CheckStatus::Pass {
        return Ok(values);
    }
    let series = shuffle_series(field, n1, n2, p.tdeg, p.prec)?;
    Ok(match series {
        None => report(NAME, CheckStatus::Pass, values.window, format!("{}; series identity holds to t^{}", values.detail, p.tdeg)),
        Some((m, e)) => report(NAME, CheckStatus::Fail, values.window, format!("series identity fails at t^{m}, w^{e}")),
    })
}

/// L_{1,n1} L_{1,n2} against L_{(1,1),(n1,n2)} + L_{(1,1),(n2,n1)} + L_{1,n1+n2}; returns the first mismatch.
pub fn shuffle_series(field: &Field, n1: u32, n2: u32, tdeg: usize, prec: i64) -> Result<Option<(usize, i64)>> {
    let prof = Profile::flat(prec);
    let l = |w: &[u32]| mcpl(field, &AlphaTuple::ones(field, &IndexTuple::new(w.to_vec())?), tdeg, prof);
    let lhs = l(&[n1])?.mul(&l(&[n2])?);
    let rhs = l(&[n1, n2])?.add(&l(&[n2, n1])?).add(&l(&[n1 + n2])?);
    Ok(lhs.agreement(&rhs).first_mismatch)
}

/// Mining precision satisfying the safety margin for the given targets.
fn mining_prec(field: &Field, targets: &str, degree_bound: usize, requested: i64, caps: &Caps) -> Result<i64> {
    let monos = parse_targets(targets)?;
    let mut min_val = 0;
    for m in &monos {
        if let Some(v) = m.eval(field, 1, caps)?.val() {
            min_val = min_val.min(v);
        }
    }
    Ok(requested.max(safety_margin(field.q(), degree_bound, monos.len(), min_val)))
}

/// Mines the comma-separated `targets` and confirms every relation at `confirm_prec`.
pub fn mine_expression(field: &Field, targets: &str, degree_bound: usize, prec: i64, confirm_prec: i64, caps: &Caps) -> Result<RelationCertificate> {
    let monos = parse_targets(targets)?;
    mine_confirmed(
        field,
        |n| monos.iter().map(|m| Ok(Target::new(m.to_string(), m.eval(field, n, caps)?))).collect(),
        degree_bound,
        prec,
        confirm_prec,
    )
}

fn euler_like(field: &Field, p: &CheckParams) -> Result<CheckReport> {
    const NAME: &str = "euler-like";
    let n = p.need_n(NAME)?;
    let (q, char_p) = (field.q(), field.p());
    let mut m = 2 * n;
    if m % (q - 1) != 0 {
        return Ok(report(NAME, CheckStatus::NotApplicable, None, format!("2n = {m} is not p^e(q-1)")));
    }
    m /= q - 1;
    while m % char_p == 0 {
        m /= char_p;
    }
    if m != 1 {
        return Ok(report(NAME, CheckStatus::NotApplicable, None, format!("2n = {} is not p^e(q-1)", 2 * n)));
    }
    let z = zeta(field, &[n], p.prec, &p.caps)?;
    let znn = zeta(field, &[n, n], p.prec, &p.caps)?;
    let z2n = zeta(field, &[2 * n], p.prec, &p.caps)?;
    let two = field.from_int(2);
    let residual = z.mul(&z).sub(&znn.scale(two)).sub(&z2n);
    let values = vanishing(NAME, &residual, p.prec, &format!("zeta({n})^2 - 2zeta({n},{n}) - zeta({})", 2 * n));
    if values.status != CheckStatus::Pass {
        return Ok(values);
    }
    let targets = format!("pi^{},zeta({n})^2,zeta({n},{n})", 2 * n);
    let prec = mining_prec(field, &targets, p.degree_bound, p.prec, &p.caps)?;
    let cert = mine_expression(field, &targets, p.degree_bound, prec, 2 * prec, &p.caps)?;
    let minus_two = field.neg(two);
    let found = cert.relations.iter().any(|r| !r[1].is_zero() && r[2] == r[1].scale(minus_two));
    Ok(if cert.kind == CertificateKind::Kernel && found && cert.all_confirmed() {
        report(NAME, CheckStatus::Pass, values.window, format!("{}; relation with pi^{} found at D={} and confirmed at w^{}", values.detail, 2 * n, p.degree_bound, 2 * prec))
    } else {
        report(NAME, CheckStatus::Fail, values.window, format!("no confirmed relation zeta({n})^2 - 2zeta({n},{n}) = c*pi^{} at D={}", 2 * n, p.degree_bound))
    })
}

fn carlitz_even(field: &Field, p: &CheckParams) -> Result<CheckReport> {
    const NAME: &str = "carlitz-even";
    let n = p.need_n(NAME)?;
    if n % (field.q() - 1) != 0 {
        return Ok(report(NAME, CheckStatus::NotApplicable, None, format!("{n} is odd for q = {}", field.q())));
    }
    let targets = format!("pi^{n},zeta({n})");
    let prec = mining_prec(field, &targets, p.degree_bound, p.prec, &p.caps)?;
    let cert = mine_expression(field, &targets, p.degree_bound, prec, 2 * prec, &p.caps)?;
    Ok(if cert.kind == CertificateKind::Kernel && cert.all_confirmed() {
        report(NAME, CheckStatus::Pass, Some(prec), format!("zeta({n})/pi^{n} is rational: relation at D={} confirmed at w^{}", p.degree_bound, 2 * prec))
    } else {
        report(NAME, CheckStatus::Fail, Some(prec), format!("no confirmed relation between pi^{n} and zeta({n}) at D={}", p.degree_bound))
    })
}

fn chang(field: &Field, p: &CheckParams) -> Result<CheckReport> {
    const NAME: &str = "chang";
    let idx = match (&p.tuple, p.n) {
        (Some(t), _) => t.clone(),
        (None, Some(n)) => IndexTuple::single(n)?,
        _ => return Err(Error::Config("check chang needs --tuple or --n".into())),
    };
    let r = chang_eval(field, &idx, p.twist, p.prec, &p.caps)?;
    let window = r.window.or(Some(p.prec));
    Ok(if r.agrees {
        report(NAME, CheckStatus::Pass, window, format!("both sides agree for {idx} at N={} to O(w^{})", p.twist, p.prec))
    } else {
        let at = r.lhs.agreement(&r.rhs).first_mismatch;
        report(NAME, CheckStatus::Fail, window, format!("sides differ for {idx} at N={}: first mismatch {at:?}", p.twist))
    })
}
