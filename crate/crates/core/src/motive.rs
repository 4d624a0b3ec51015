//! Period-matrix systems (Φ, Ψ) and verification of Ψ^{(-1)} = ΦΨ.
//!
//! Φ contains α^{(-1)}, which has no representation here, so the identity is checked in
//! the equivalent forward-twisted form Ψ = Φ^{(1)} Ψ^{(1)}. Only Φ^{(1)} is materialized.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::poly::BiPoly;
use crate::special::{mcpl, omega, AlphaTuple};
use crate::tate::{Profile, TateElem};

/// Which construction produced the system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layout {
    /// One weight n and several α: first column Ω^n L_{α_i,n}.
    Depth1 { n: u32 },
    /// Nested polylogarithms of a full tuple.
    General,
}

#[derive(Clone, Debug)]
pub struct MotiveSystem {
    field: Field,
    layout: Layout,
    alphas: Vec<BiPoly>,
    weights: Vec<u32>,
    /// Φ^{(1)}, lower triangular; `None` is an exact zero.
    phi_twisted: Vec<Vec<Option<BiPoly>>>,
    /// Exponents e_j with Φ_{jj} = (t - θ)^{e_j}.
    diag_exponents: Vec<u32>,
    psi: Vec<Vec<Option<TateElem>>>,
    tdeg: usize,
    prec: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryReport {
    pub row: usize,
    pub col: usize,
    pub status: Status,
    /// Comparison covers w-exponents below this (`None` when both sides are exact).
    pub window: Option<i64>,
    /// First `(t-degree, w-exponent)` where Ψ and Φ^{(1)}Ψ^{(1)} differ.
    pub mismatch: Option<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub status: Status,
    pub tdeg: usize,
    /// Smallest comparison window over all entries.
    pub w_prec: Option<i64>,
    pub entries: Vec<EntryReport>,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub status: Status,
    pub window: ([usize; 2], Option<i64>),
    pub entries: Vec<(usize, usize, Status)>,
}

impl VerificationReport {
    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            status: self.status,
            window: ([0, self.tdeg], self.w_prec),
            entries: self.entries.iter().map(|e| (e.row, e.col, e.status)).collect(),
        }
    }

    /// Pass with at least the given certified window.
    pub fn passes_with(&self, min_tdeg: usize, min_prec: i64) -> bool {
        self.status == Status::Pass && self.tdeg >= min_tdeg && self.w_prec.is_none_or(|w| w >= min_prec)
    }
}

fn check_norms(alphas: &[BiPoly], weights: &[u32]) -> Result<()> {
    AlphaTuple::new(alphas.to_vec(), weights.to_vec()).map(|_| ())
}

struct PsiBuilder<'a> {
    field: &'a Field,
    tdeg: usize,
    prec: i64,
    omegas: HashMap<(u32, i64), TateElem>,
}

impl PsiBuilder<'_> {
    fn omega_pow(&mut self, c: u32, margin: i64) -> TateElem {
        let (field, tdeg, prec) = (self.field, self.tdeg, self.prec);
        self.omegas
            .entry((c, margin))
            .or_insert_with(|| omega(field, tdeg, Profile::flat(prec + margin)).pow(c as u64))
            .clone()
    }

    /// Ω^c · L_{alphas, weights} at flat precision `prec`.
    fn entry(&mut self, c: u32, alphas: &[BiPoly], weights: &[u32]) -> Result<TateElem> {
        let flat = Profile::flat(self.prec);
        if alphas.is_empty() {
            return Ok(self.omega_pow(c, 0).truncate_prec(flat));
        }
        let tuple = AlphaTuple::new(alphas.to_vec(), weights.to_vec())?;
        let l = mcpl(self.field, &tuple, self.tdeg, flat)?;
        let margin = (0..=l.tdeg()).map(|m| l.coeff(m).val_bound()).min().unwrap_or(0).min(0).abs();
        Ok(self.omega_pow(c, margin).mul(&l).truncate_prec(flat))
    }
}

impl MotiveSystem {
    /// The (r+1)×(r+1) system for one weight n and α_1, …, α_r.
    pub fn build_depth1(field: &Field, alphas: &[BiPoly], n: u32, tdeg: usize, prec: i64) -> Result<MotiveSystem> {
        if n == 0 {
            return Err(Error::Domain("weight must be at least 1".into()));
        }
        check_norms(alphas, &vec![n; alphas.len()])?;
        let size = alphas.len() + 1;
        let shifted = BiPoly::t_minus_theta_twisted(field, 1).pow(n);
        let mut phi = vec![vec![None; size]; size];
        phi[0][0] = Some(shifted.clone());
        for (i, a) in alphas.iter().enumerate() {
            phi[i + 1][0] = Some(a.mul(&shifted));
            phi[i + 1][i + 1] = Some(BiPoly::one(field));
        }
        let mut b = PsiBuilder { field, tdeg, prec, omegas: HashMap::new() };
        let mut psi = vec![vec![None; size]; size];
        psi[0][0] = Some(b.entry(n, &[], &[])?);
        for (i, a) in alphas.iter().enumerate() {
            psi[i + 1][0] = Some(b.entry(n, std::slice::from_ref(a), &[n])?);
            psi[i + 1][i + 1] = Some(TateElem::one(field));
        }
        let mut diag = vec![0; size];
        diag[0] = n;
        Ok(MotiveSystem {
            field: field.clone(),
            layout: Layout::Depth1 { n },
            alphas: alphas.to_vec(),
            weights: vec![n; alphas.len()],
            phi_twisted: phi,
            diag_exponents: diag,
            psi,
            tdeg,
            prec,
        })
    }

    /// The (d+1)×(d+1) system with Ψ_{ij} = Ω^{n_{j+1}+⋯+n_d} L_{α_{j+1..i}} (0-based rows and columns).
    pub fn build_general(field: &Field, alphas: &AlphaTuple, tdeg: usize, prec: i64) -> Result<MotiveSystem> {
        let d = alphas.depth();
        if d == 0 {
            return Err(Error::Domain("the general system needs depth at least 1".into()));
        }
        let weights = alphas.weights().to_vec();
        let tails: Vec<u32> = (0..=d).map(|j| weights[j..].iter().sum()).collect();
        let size = d + 1;
        let step = BiPoly::t_minus_theta_twisted(field, 1);
        let mut phi = vec![vec![None; size]; size];
        for j in 0..size {
            let diag = step.pow(tails[j]);
            if j < d {
                phi[j + 1][j] = Some(alphas.alphas()[j].mul(&diag));
            }
            phi[j][j] = Some(diag);
        }
        let mut b = PsiBuilder { field, tdeg, prec, omegas: HashMap::new() };
        let mut psi = vec![vec![None; size]; size];
        for i in 0..size {
            for j in 0..=i {
                psi[i][j] = Some(if i == d && j == d {
                    TateElem::one(field)
                } else {
                    b.entry(tails[j], &alphas.alphas()[j..i], &weights[j..i])?
                });
            }
        }
        Ok(MotiveSystem {
            field: field.clone(),
            layout: Layout::General,
            alphas: alphas.alphas().to_vec(),
            weights,
            phi_twisted: phi,
            diag_exponents: tails,
            psi,
            tdeg,
            prec,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn size(&self) -> usize {
        self.psi.len()
    }

    pub fn alphas(&self) -> &[BiPoly] {
        &self.alphas
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn tdeg(&self) -> usize {
        self.tdeg
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn psi(&self, i: usize, j: usize) -> Option<&TateElem> {
        self.psi[i][j].as_ref()
    }

    pub fn phi_twisted(&self, i: usize, j: usize) -> Option<&BiPoly> {
        self.phi_twisted[i][j].as_ref()
    }

    /// Diagonal of Φ itself, (t - θ)^{e_j}; it has no α^{(-1)} in it.
    pub fn phi_diagonal(&self) -> Vec<BiPoly> {
        let step = BiPoly::t_minus_theta_twisted(&self.field, 0);
        self.diag_exponents.iter().map(|&e| step.pow(e)).collect()
    }

    /// Both matrices vanish strictly above the diagonal.
    pub fn is_lower_triangular(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| ((i + 1)..n).all(|j| self.phi_twisted[i][j].is_none() && self.psi[i][j].is_none()))
    }

    /// det Φ, computed as the product of the diagonal of the lower-triangular Φ.
    pub fn det_phi(&self) -> BiPoly {
        self.phi_diagonal().iter().fold(BiPoly::one(&self.field), |acc, p| acc.mul(p))
    }

    /// The pair (c, s) with det Φ = c·(t - θ)^s, if det Φ has that shape.
    pub fn det_phi_shape(&self) -> Option<(Fq, u32)> {
        let det = self.det_phi();
        let s = det.t_degree()? as u32;
        let c = det.coeff(s as usize).coeffs().first().copied()?;
        if det.coeff(s as usize).degree() != Some(0) {
            return None;
        }
        let model = BiPoly::t_minus_theta_twisted(&self.field, 0).pow(s);
        let scaled = BiPoly::new(&self.field, model.coeffs().iter().map(|p| p.scale(c)).collect());
        (scaled == det).then_some((c, s))
    }

    /// Adds c·w^e to the t^m coefficient of Ψ_{ij}.
    pub fn corrupt_psi(&mut self, i: usize, j: usize, m: usize, e: i64, c: Fq) -> Result<()> {
        let entry = self.psi[i][j]
            .as_ref()
            .ok_or_else(|| Error::Domain(format!("Psi[{i}][{j}] is structurally zero")))?;
        if m > self.tdeg || (m > entry.tdeg() && !entry.is_polynomial()) {
            return Err(Error::Domain(format!("t^{m} is beyond the truncation t^{}", self.tdeg)));
        }
        self.psi[i][j] = Some(entry.perturbed(m, e, c));
        Ok(())
    }

    /// Checks Ψ = Φ^{(1)} Ψ^{(1)} entry by entry on the common truncation.
    pub fn verify(&self) -> Result<VerificationReport> {
        let n = self.size();
        let twisted: Vec<Vec<Option<TateElem>>> = self
            .psi
            .iter()
            .map(|row| row.iter().map(|e| e.as_ref().map(|x| x.twist(1)).transpose()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..=i {
                let mut rhs: Option<TateElem> = None;
                for k in 0..n {
                    if let (Some(p), Some(s)) = (&self.phi_twisted[i][k], &twisted[k][j]) {
                        let term = TateElem::from_bipoly(p).mul(s);
                        rhs = Some(match rhs {
                            None => term,
                            Some(acc) => acc.add(&term),
                        });
                    }
                }
                let lhs = self.psi[i][j].clone().unwrap_or_else(|| TateElem::zero(&self.field));
                let rhs = rhs.unwrap_or_else(|| TateElem::zero(&self.field));
                entries.push(compare_entry(i, j, &lhs, &rhs, self.tdeg));
            }
        }
        let w_prec = entries.iter().filter_map(|e| e.window).min();
        let status = if entries.iter().any(|e| e.status == Status::Fail) {
            Status::Fail
        } else if entries.iter().any(|e| e.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        Ok(VerificationReport { status, tdeg: self.tdeg, w_prec, entries })
    }
}

fn compare_entry(row: usize, col: usize, lhs: &TateElem, rhs: &TateElem, tdeg: usize) -> EntryReport {
    let lhs = lhs.truncate_t(tdeg);
    let rhs = rhs.truncate_t(tdeg);
    let ag = lhs.agreement(&rhs);
    let window = ag.window.finite();
    let status = if ag.first_mismatch.is_some() {
        Status::Fail
    } else {
        // Empty when nothing nonzero on either side lies inside the window.
        let floor = (0..=ag.tdeg)
            .flat_map(|m| [lhs.coeff(m).val(), rhs.coeff(m).val()])
            .flatten()
            .min();
        match (window, floor) {
            (Some(w), Some(v)) if w <= v => Status::Inconclusive,
            (Some(_), None) => Status::Inconclusive,
            _ => Status::Pass,
        }
    };
    EntryReport { row, col, status, window, mismatch: ag.first_mismatch }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FqPoly;
    use crate::special::IndexTuple;

    fn ones(f: &Field, w: &[u32]) -> AlphaTuple {
        AlphaTuple::ones(f, &IndexTuple::new(w.to_vec()).unwrap())
    }

    #[test]
    fn carlitz_tensor_power_is_one_by_one() {
        let f = Field::new(3).unwrap();
        let sys = MotiveSystem::build_depth1(&f, &[], 2, 8, 60).unwrap();
        assert_eq!(sys.size(), 1);
        let r = sys.verify().unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert_eq!(sys.det_phi_shape(), Some((Fq::ONE, 2)));
    }

    #[test]
    fn depth_one_system_verifies() {
        let f = Field::new(3).unwrap();
        let sys = MotiveSystem::build_depth1(&f, &[BiPoly::one(&f)], 1, 10, 80).unwrap();
        let r = sys.verify().unwrap();
        assert!(r.passes_with(10, 80), "{r:?}");
    }

    #[test]
    fn general_depth_one_matches_depth1_layout() {
        let f = Field::new(2).unwrap();
        let g = MotiveSystem::build_general(&f, &ones(&f, &[1]), 8, 60).unwrap();
        let d = MotiveSystem::build_depth1(&f, &[BiPoly::one(&f)], 1, 8, 60).unwrap();
        for i in 0..2 {
            for j in 0..=i {
                assert_eq!(g.psi(i, j), d.psi(i, j));
                assert_eq!(g.phi_twisted(i, j), d.phi_twisted(i, j));
            }
        }
    }

    #[test]
    fn three_by_three_system_verifies_and_is_triangular() {
        let f = Field::new(3).unwrap();
        let sys = MotiveSystem::build_general(&f, &ones(&f, &[1, 1]), 8, 80).unwrap();
        assert!(sys.is_lower_triangular());
        assert_eq!(sys.verify().unwrap().status, Status::Pass);
        // Diagonal exponents 2, 1, 0.
        assert_eq!(sys.det_phi_shape(), Some((Fq::ONE, 3)));
    }

    #[test]
    fn corruption_is_detected() {
        let f = Field::new(3).unwrap();
        let mut sys = MotiveSystem::build_general(&f, &ones(&f, &[1, 1]), 8, 80).unwrap();
        let v = sys.psi(2, 1).unwrap().coeff(0).val().unwrap();
        sys.corrupt_psi(2, 1, 0, v, Fq::ONE).unwrap();
        let r = sys.verify().unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.entries.iter().any(|e| (e.row, e.col) == (2, 1) && e.status == Status::Fail));
    }

    #[test]
    fn starved_precision_is_inconclusive() {
        let f = Field::new(3).unwrap();
        let sys = MotiveSystem::build_depth1(&f, &[BiPoly::one(&f)], 1, 4, 2).unwrap();
        let r = sys.verify().unwrap();
        assert_eq!(r.status, Status::Inconclusive);
    }

    #[test]
    fn norm_violation_is_rejected() {
        let f = Field::new(2).unwrap();
        let big = BiPoly::from_theta_poly(FqPoly::monomial(&f, Fq::ONE, 2));
        assert!(MotiveSystem::build_depth1(&f, &[big], 1, 4, 30).is_err());
    }
}
