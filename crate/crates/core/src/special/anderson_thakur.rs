use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::linalg::{solve, Matrix};
use crate::poly::{BiPoly, FqPoly};

use super::factorial::carlitz_factorial;
use super::Caps;

/// An Anderson–Thakur polynomial H_{n-1} ∈ F_q[θ, t].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtPoly {
    pub n: u32,
    pub h: BiPoly,
    /// Twists i for which the interpolation identity was checked exactly (0..=this).
    pub verified_upto: Option<usize>,
}

/// ℓ_i = ∏_{l=1}^{i} (θ - θ^{q^l}).
fn ell(field: &Field, i: usize) -> FqPoly {
    let q = field.q() as usize;
    let th = FqPoly::theta(field);
    (1..=i).fold(FqPoly::one(field), |acc, l| acc.mul(&th.sub(&FqPoly::monomial(field, Fq::ONE, q.pow(l as u32)))))
}

/// The exact polynomial Y_i = Γ_n S_i(n) ℓ_i^n that H^{(i)}(θ) must equal.
///
/// Since Ω^{(i)}(θ) = 1/(π̃ ℓ_i), the identity (H Ω^n)^{(i)}(θ) = Γ_n S_i(n)/π̃^n is
/// H^{(i)}(θ) = Y_i; every monic a of degree i divides ℓ_i, so Y_i = Γ_n Σ_a (ℓ_i/a)^n.
pub fn interpolation_target(field: &Field, n: u32, i: usize) -> Result<FqPoly> {
    let l = ell(field, i);
    let mut sum = FqPoly::zero(field);
    for a in FqPoly::monics(field, i) {
        sum = sum.add(&l.div_exact(&a)?.pow(n as u64));
    }
    Ok(carlitz_factorial(field, n as u64).mul(&sum))
}

fn satisfies(h: &BiPoly, n: u32, i: usize) -> Result<bool> {
    let lhs = h.twist(i as u32).eval_t_at_theta_power(1);
    Ok(lhs == interpolation_target(h.field(), n, i)?)
}

/// Solves for H_{n-1} by interpolation: unknown coefficients θ^a t^b with
/// a < ⌈nq/(q-1)⌉ and b ≤ B, B swept upward, fitted on small twists and verified on more.
pub fn anderson_thakur(field: &Field, n: u32, caps: &Caps) -> Result<AtPoly> {
    if n == 0 {
        return Err(Error::Domain("Anderson-Thakur polynomials are indexed by n ≥ 1".into()));
    }
    let q = field.q() as usize;
    if n as usize <= q {
        return Ok(AtPoly { n, h: BiPoly::one(field), verified_upto: None });
    }
    let a_max = (n as usize * q).div_ceil(q - 1);
    let mut targets: Vec<FqPoly> = Vec::new();
    let mut target = |i: usize| -> Result<FqPoly> {
        while targets.len() <= i {
            targets.push(interpolation_target(field, n, targets.len())?);
        }
        Ok(targets[i].clone())
    };
    for b_max in 0..=caps.at_max_tdeg {
        let mut i_fit = 0;
        while q.pow(i_fit as u32) <= b_max {
            i_fit += 1;
        }
        let fit_upto = i_fit + 1;
        // Column order (b, a): lower t-degrees pivot first.
        let cols: Vec<(usize, usize)> = (0..=b_max).flat_map(|b| (0..a_max).map(move |a| (a, b))).collect();
        let mut m = Matrix::zeros(0, cols.len());
        let mut rhs = Vec::new();
        for i in 0..=fit_upto {
            let y = target(i)?;
            let qi = q.pow(i as u32);
            let top = y.degree().unwrap_or(0).max((a_max - 1) * qi + b_max);
            for k in 0..=top {
                let row: Vec<Fq> = cols.iter().map(|&(a, b)| if a * qi + b == k { Fq::ONE } else { Fq::ZERO }).collect();
                m.push_row(&row);
                rhs.push(y.coeff(k));
            }
        }
        let Some(x) = solve(field, &m, &rhs) else {
            continue;
        };
        let mut grid = vec![vec![0u32; a_max]; b_max + 1];
        for (&(a, b), v) in cols.iter().zip(&x) {
            grid[b][a] = v.to_int();
        }
        let h = BiPoly::from_int_matrix(field, &grid)?;
        let check_upto = caps.at_checks.max(fit_upto + 1);
        let mut ok = true;
        for i in 0..=check_upto {
            if !satisfies(&h, n, i)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(AtPoly { n, h, verified_upto: Some(check_upto) });
        }
    }
    Err(Error::SearchExhausted(format!(
        "no H_{} with deg_theta < {a_max} and deg_t ≤ {} satisfies the interpolation identity",
        n - 1,
        caps.at_max_tdeg
    )))
}

/// Checks the interpolation identity for twists 0..=upto.
pub fn verify_at(h: &BiPoly, n: u32, upto: usize) -> Result<bool> {
    for i in 0..=upto {
        if !satisfies(h, n, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}
