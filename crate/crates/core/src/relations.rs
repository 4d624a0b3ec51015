//! F_q[θ]-linear relations of bounded degree among Laurent series.
//!
//! A relation Σ_j p_j(θ) v_j = 0 with deg p_j ≤ D becomes an F_q-linear system in the
//! coefficients of the p_j: one equation per w-exponent in the mining window. Any exact
//! relation survives truncation, so a trivial kernel rules out relations at that bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::laurent::{LaurentSeries, Precision, Sector};
use crate::linalg::{kernel, rank, Matrix};
use crate::poly::FqPoly;

#[derive(Clone, Debug)]
pub struct Target {
    pub label: String,
    pub value: LaurentSeries,
}

impl Target {
    pub fn new(label: impl Into<String>, value: LaurentSeries) -> Target {
        Target { label: label.into(), value }
    }
}

/// The smallest admissible window end for `m` targets whose least valuation is `min_val`.
pub fn safety_margin(q: u32, degree_bound: usize, m: usize, min_val: i64) -> i64 {
    (degree_bound as i64 + 2) * (q as i64 - 1) * m as i64 + 2 * min_val.abs()
}

#[derive(Clone, Debug)]
pub struct MiningProblem {
    field: Field,
    targets: Vec<Target>,
    degree_bound: usize,
    prec: i64,
}

impl MiningProblem {
    /// Targets must be known to w^{prec + (q-1)·degree_bound} so every equation is exact.
    pub fn new(targets: Vec<Target>, degree_bound: usize, prec: i64) -> Result<MiningProblem> {
        let first = targets.first().ok_or_else(|| Error::Config("no targets to mine".into()))?;
        let field = first.value.field().clone();
        let q = field.q();
        let need = prec + (q as i64 - 1) * degree_bound as i64;
        for t in &targets {
            if t.value.field().params() != field.params() {
                return Err(Error::Config(format!("target {} lives over a different field", t.label)));
            }
            if t.value.sector() == Sector::Mixed {
                return Err(Error::Config(format!("target {} mixes exponent classes mod q-1", t.label)));
            }
            if !t.value.prec().covers(need - 1) {
                return Err(Error::Config(format!("target {} is known to {:?}, mining needs w^{need}", t.label, t.value.prec())));
            }
        }
        let min_val = targets.iter().filter_map(|t| t.value.val()).min().unwrap_or(0);
        let margin = safety_margin(q, degree_bound, targets.len(), min_val);
        if prec < margin {
            return Err(Error::Config(format!(
                "mining window w^{prec} is below the safety margin w^{margin} for {} targets at degree {degree_bound}",
                targets.len()
            )));
        }
        Ok(MiningProblem { field, targets, degree_bound, prec })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    fn unknowns(&self) -> usize {
        self.targets.len() * (self.degree_bound + 1)
    }

    /// Rows: w-exponents in [lowest, prec); columns: (target j, θ-degree e) at j·(D+1) + e.
    fn system(&self) -> Result<Matrix> {
        let f = &self.field;
        let step = f.q() as i64 - 1;
        let d = self.degree_bound;
        let lowest = self.targets.iter().filter_map(|t| t.value.val()).min().unwrap_or(self.prec) - step * d as i64;
        let mut m = Matrix::zeros(0, self.unknowns());
        for k in lowest..self.prec {
            let mut row = vec![Fq::ZERO; self.unknowns()];
            let mut any = false;
            for (j, t) in self.targets.iter().enumerate() {
                for e in 0..=d {
                    // θ^e = (-1)^e w^{-(q-1)e}
                    let c = t.value.coeff(k + step * e as i64).expect("window checked against target precision");
                    if !c.is_zero() {
                        row[j * (d + 1) + e] = f.mul(f.sign(e as i64), c);
                        any = true;
                    }
                }
            }
            if any {
                m.push_row(&row);
            }
        }
        if m.rows() < self.unknowns() {
            return Err(Error::Config(format!(
                "only {} nonzero equations for {} unknowns; raise the precision",
                m.rows(),
                self.unknowns()
            )));
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Kernel,
    NoneAtBound,
}

/// Valuation of Σ p_j v_j at a confirmation precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residual {
    /// Vanishes to the stated precision.
    AtLeast(i64),
    /// Nonzero, with this valuation: the candidate is refuted.
    Exact(i64),
}

impl Residual {
    pub fn value(self) -> i64 {
        match self {
            Residual::AtLeast(v) | Residual::Exact(v) => v,
        }
    }

    pub fn confirms(self) -> bool {
        matches!(self, Residual::AtLeast(_))
    }
}

#[derive(Clone, Debug)]
pub struct RelationCertificate {
    pub kind: CertificateKind,
    pub degree_bound: usize,
    pub prec: i64,
    pub labels: Vec<String>,
    /// F_q-basis of the truncated kernel, one vector of coefficient polynomials per element.
    pub kernel_basis: Vec<Vec<FqPoly>>,
    /// Kernel vectors divided by their content, leading component monic, deduplicated.
    pub relations: Vec<Vec<FqPoly>>,
    /// Confirmation precision and residual for each entry of `relations`.
    pub confirmations: Vec<(usize, Residual)>,
    pub confirm_prec: Option<i64>,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub kind: CertificateKind,
    #[serde(rename = "D")]
    pub degree_bound: usize,
    #[serde(rename = "N")]
    pub prec: i64,
    pub targets: Vec<String>,
    pub kernel: Option<Vec<Vec<Vec<u32>>>>,
    pub confirmations: Vec<(usize, i64)>,
    pub confirm_prec: Option<i64>,
}

impl RelationCertificate {
    /// Whether `coeffs` lies in the F_q-span of the truncated kernel.
    pub fn kernel_contains(&self, field: &Field, coeffs: &[FqPoly]) -> bool {
        let flat = |v: &[FqPoly]| -> Vec<Fq> {
            v.iter().flat_map(|p| (0..=self.degree_bound).map(move |e| p.coeff(e))).collect()
        };
        if coeffs.iter().any(|p| p.degree().is_some_and(|d| d > self.degree_bound)) {
            return false;
        }
        let target = flat(coeffs);
        if target.iter().all(|c| c.is_zero()) {
            return true;
        }
        let mut m = Matrix::zeros(0, target.len());
        for v in &self.kernel_basis {
            m.push_row(&flat(v));
        }
        let before = rank(field, &m);
        m.push_row(&target);
        rank(field, &m) == before
    }

    pub fn all_confirmed(&self) -> bool {
        self.confirmations.iter().all(|(_, r)| r.confirms())
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            kind: self.kind,
            degree_bound: self.degree_bound,
            prec: self.prec,
            targets: self.labels.clone(),
            kernel: match self.kind {
                CertificateKind::Kernel => {
                    Some(self.relations.iter().map(|v| v.iter().map(FqPoly::to_ints).collect()).collect())
                }
                CertificateKind::NoneAtBound => None,
            },
            confirmations: self.confirmations.iter().map(|&(i, r)| (i, r.value())).collect(),
            confirm_prec: self.confirm_prec,
        }
    }
}

fn normalize(field: &Field, v: Vec<FqPoly>) -> Vec<FqPoly> {
    let g = v.iter().fold(FqPoly::zero(field), |acc, p| acc.gcd(p));
    if g.is_zero() {
        return v;
    }
    let mut out: Vec<FqPoly> = v.iter().map(|p| p.div_exact(&g).expect("gcd divides every component")).collect();
    if let Some(lead) = out.iter().find(|p| !p.is_zero()).map(|p| p.leading()) {
        let inv = field.inv(lead).expect("nonzero leading coefficient");
        out = out.iter().map(|p| p.scale(inv)).collect();
    }
    out
}

/// Mines relations of degree ≤ D vanishing to w^N.
pub fn mine(problem: &MiningProblem) -> Result<RelationCertificate> {
    let f = &problem.field;
    let d = problem.degree_bound;
    let m = problem.system()?;
    let basis: Vec<Vec<FqPoly>> = kernel(f, &m)
        .into_iter()
        .map(|v| v.chunks(d + 1).map(|c| FqPoly::new(f, c.to_vec())).collect())
        .collect();
    let mut relations: Vec<Vec<FqPoly>> = Vec::new();
    for v in &basis {
        let n = normalize(f, v.clone());
        if !relations.contains(&n) {
            relations.push(n);
        }
    }
    relations.sort_by_key(|v| (v.iter().filter_map(|p| p.degree()).max(), v.iter().map(|p| p.to_ints()).collect::<Vec<_>>()));
    Ok(RelationCertificate {
        kind: if basis.is_empty() { CertificateKind::NoneAtBound } else { CertificateKind::Kernel },
        degree_bound: d,
        prec: problem.prec,
        labels: problem.targets.iter().map(|t| t.label.clone()).collect(),
        kernel_basis: basis,
        relations,
        confirmations: Vec::new(),
        confirm_prec: None,
    })
}

/// Σ_j p_j(θ) v_j.
pub fn combine(targets: &[LaurentSeries], coeffs: &[FqPoly]) -> Result<LaurentSeries> {
    let first = targets.first().ok_or_else(|| Error::Config("no targets".into()))?;
    if targets.len() != coeffs.len() {
        return Err(Error::Config(format!("{} coefficients for {} targets", coeffs.len(), targets.len())));
    }
    let mut acc: Option<LaurentSeries> = None;
    for (v, p) in targets.iter().zip(coeffs) {
        let term = LaurentSeries::from_poly(p).mul(v);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.unwrap_or_else(|| LaurentSeries::zero(first.field(), Precision::Exact)))
}

/// Valuation of Σ p_j v_j, where the v_j are recomputed at `prec`.
pub fn verify_candidate(targets: &[LaurentSeries], coeffs: &[FqPoly], prec: i64) -> Result<Residual> {
    let combo = combine(targets, coeffs)?.truncate(prec);
    let window = combo.prec().finite().unwrap_or(prec);
    Ok(match combo.val() {
        Some(v) if v < window => Residual::Exact(v),
        _ => Residual::AtLeast(window),
    })
}

/// Attaches confirmation residuals computed from targets known to `prec`.
pub fn confirm(cert: &mut RelationCertificate, targets: &[LaurentSeries], prec: i64) -> Result<()> {
    cert.confirmations = cert
        .relations
        .iter()
        .enumerate()
        .map(|(i, v)| verify_candidate(targets, v, prec).map(|r| (i, r)))
        .collect::<Result<Vec<_>>>()?;
    cert.confirm_prec = Some(prec);
    Ok(())
}

/// Mines at `prec` and confirms every relation at `confirm_prec`, recomputing targets with `eval`.
///
/// `eval(n)` must return the targets known to at least w^n.
pub fn mine_confirmed(
    field: &Field,
    eval: impl Fn(i64) -> Result<Vec<Target>>,
    degree_bound: usize,
    prec: i64,
    confirm_prec: i64,
) -> Result<RelationCertificate> {
    if confirm_prec <= prec {
        return Err(Error::Config(format!("confirmation precision {confirm_prec} must exceed {prec}")));
    }
    let extra = (field.q() as i64 - 1) * degree_bound as i64;
    let problem = MiningProblem::new(eval(prec + extra)?, degree_bound, prec)?;
    let mut cert = mine(&problem)?;
    if cert.kind == CertificateKind::Kernel {
        let hi: Vec<LaurentSeries> = eval(confirm_prec + extra)?.into_iter().map(|t| t.value).collect();
        confirm(&mut cert, &hi, confirm_prec)?;
    }
    Ok(cert)
}

/// For a relation a·v_0 + b·v_1 = 0, the ratio v_1/v_0 = -a/b in lowest terms, denominator monic.
pub fn ratio(field: &Field, rel: &[FqPoly]) -> Option<(FqPoly, FqPoly)> {
    let [a, b] = rel else {
        return None;
    };
    if b.is_zero() {
        return None;
    }
    let g = a.gcd(b);
    let num = a.neg().div_exact(&g).ok()?;
    let den = b.div_exact(&g).ok()?;
    let inv = field.inv(den.leading()).ok()?;
    Some((num.scale(inv), den.scale(inv)))
}
