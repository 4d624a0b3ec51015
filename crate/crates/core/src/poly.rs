//! Exact polynomials in F_q[θ] and F_q[θ, t].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};

/// A polynomial in F_q[θ], coefficients indexed by θ-degree.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial is
/// the empty vector and `degree()` is `None` for it.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPoly {
    field: Field,
    coeffs: Vec<Fq>,
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqPoly({})", self)
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.to_int()) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "theta")?,
                (1, c) => write!(f, "{c}*theta")?,
                (k, 1) => write!(f, "theta^{k}")?,
                (k, c) => write!(f, "{c}*theta^{k}")?,
            }
        }
        Ok(())
    }
}

impl FqPoly {
    pub fn zero(field: &Field) -> Self {
        FqPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, Fq::ONE)
    }

    pub fn constant(field: &Field, c: Fq) -> Self {
        Self::new(field, vec![c])
    }

    /// θ.
    pub fn theta(field: &Field) -> Self {
        Self::monomial(field, Fq::ONE, 1)
    }

    pub fn monomial(field: &Field, c: Fq, deg: usize) -> Self {
        let mut coeffs = vec![Fq::ZERO; deg + 1];
        coeffs[deg] = c;
        Self::new(field, coeffs)
    }

    pub fn new(field: &Field, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { field: field.clone(), coeffs }
    }

    /// From integer element codes, low degree first.
    pub fn from_ints(field: &Field, codes: &[u32]) -> Result<Self> {
        let coeffs = codes.iter().map(|&c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn to_ints(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.to_int()).collect()
    }

    pub fn coeff(&self, k: usize) -> Fq {
        self.coeffs.get(k).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fq::ONE
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f.add(self.coeff(k), other.coeff(k))).collect();
        FqPoly::new(f, coeffs)
    }

    pub fn neg(&self) -> FqPoly {
        let f = &self.field;
        FqPoly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fq) -> FqPoly {
        let f = &self.field;
        FqPoly::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(f);
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = f.mul_row(a);
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], Fq(row[b.0 as usize]));
            }
        }
        FqPoly::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> FqPoly {
        let mut base = self.clone();
        let mut acc = FqPoly::one(&self.field);
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

    /// Euclidean division `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::ZeroDivision { q: f.q() })?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((FqPoly::zero(f), self.clone()));
        }
        let mut quot = vec![Fq::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(c, dc));
            }
        }
        Ok((FqPoly::new(f, quot), FqPoly::new(f, rem)))
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &FqPoly) -> Result<FqPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Domain(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scaled to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> FqPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// The n-fold twist θ ↦ θ^{q^n} (coefficients in F_q are fixed by Frobenius).
    pub fn twist(&self, n: u32) -> FqPoly {
        let f = &self.field;
        if self.is_zero() {
            return self.clone();
        }
        let stride = (f.q() as usize).pow(n);
        let mut coeffs = vec![Fq::ZERO; (self.coeffs.len() - 1) * stride + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * stride] = c;
        }
        FqPoly::new(f, coeffs)
    }

    /// All monic polynomials of degree exactly `deg`, in increasing code order.
    pub fn monics(field: &Field, deg: usize) -> impl Iterator<Item = FqPoly> + '_ {
        let q = field.q() as u64;
        let count = q.pow(deg as u32);
        (0..count).map(move |mut code| {
            let mut coeffs = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                coeffs.push(Fq((code % q) as u8));
                code /= q;
            }
            coeffs.push(Fq::ONE);
            FqPoly::new(field, coeffs)
        })
    }
}

/// A polynomial in F_q[θ][t]: `coeffs[b]` is the coefficient of t^b.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    coeffs: Vec<FqPoly>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let scalar = match c.coeffs.iter().filter(|x| !x.is_zero()).count() {
                _ if b == 0 => format!("{c}"),
                _ if *c == FqPoly::one(&self.field) => String::new(),
                1 => format!("{c}*"),
                _ => format!("({c})*"),
            };
            match b {
                0 => write!(f, "{scalar}")?,
                1 => write!(f, "{scalar}t")?,
                b => write!(f, "{scalar}t^{b}")?,
            }
        }
        Ok(())
    }
}

impl BiPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FqPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        BiPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_theta_poly(FqPoly::one(field))
    }

    pub fn from_theta_poly(a: FqPoly) -> Self {
        let field = a.field().clone();
        Self::new(&field, vec![a])
    }

    /// From a dense matrix of element codes, `rows[b][a]` the coefficient of θ^a t^b.
    pub fn from_int_matrix(field: &Field, rows: &[Vec<u32>]) -> Result<Self> {
        let coeffs = rows.iter().map(|r| FqPoly::from_ints(field, r)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    /// Dense matrix of codes: one row per t-degree, each padded to the max θ-degree.
    pub fn to_int_matrix(&self) -> Vec<Vec<u32>> {
        let width = self.theta_degree().map_or(0, |d| d + 1);
        self.coeffs
            .iter()
            .map(|c| (0..width).map(|a| c.coeff(a).to_int()).collect())
            .collect()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, b: usize) -> FqPoly {
        self.coeffs.get(b).cloned().unwrap_or_else(|| FqPoly::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqPoly::one(&self.field)
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest θ-degree among the t-coefficients; `‖α‖ = |θ|^{theta_degree}`.
    pub fn theta_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        BiPoly::new(&self.field, (0..n).map(|b| self.coeff(b).add(&other.coeff(b))).collect())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut out = vec![FqPoly::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(&self.field, out)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        (0..e).fold(BiPoly::one(&self.field), |acc, _| acc.mul(self))
    }

    /// t - θ^{q^n}.
    pub fn t_minus_theta_twisted(field: &Field, n: u32) -> BiPoly {
        let qn = (field.q() as usize).pow(n);
        BiPoly::new(field, vec![FqPoly::monomial(field, field.neg(Fq::ONE), qn), FqPoly::one(field)])
    }

    /// θ ↦ θ^{q^n}, t fixed.
    pub fn twist(&self, n: u32) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c.twist(n)).collect())
    }

    /// Substitute t = θ^{e}: returns Σ_b c_b(θ) θ^{e b}.
    pub fn eval_t_at_theta_power(&self, e: usize) -> FqPoly {
        let f = &self.field;
        let mut acc = FqPoly::zero(f);
        for (b, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let shifted = FqPoly::monomial(f, Fq::ONE, e * b);
            acc = acc.add(&c.mul(&shifted));
        }
        acc
    }
}
