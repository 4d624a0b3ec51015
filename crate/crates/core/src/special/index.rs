use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::BiPoly;

/// Weights (n_1, …, n_d), each at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexTuple(Vec<u32>);

impl IndexTuple {
    pub fn new(weights: Vec<u32>) -> Result<IndexTuple> {
        if weights.is_empty() {
            return Err(Error::Domain("an index tuple needs depth at least 1".into()));
        }
        if weights.contains(&0) {
            return Err(Error::Domain(format!("weights must be positive, got {weights:?}")));
        }
        Ok(IndexTuple(weights))
    }

    pub fn single(n: u32) -> Result<IndexTuple> {
        IndexTuple::new(vec![n])
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Polynomials α_1, …, α_d ∈ F_q[θ, t] paired with weights, subject to the norm
/// condition (q-1)·deg_θ α_j < n_j q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTuple {
    alphas: Vec<BiPoly>,
    weights: Vec<u32>,
}

impl AlphaTuple {
    pub fn new(alphas: Vec<BiPoly>, weights: Vec<u32>) -> Result<AlphaTuple> {
        if alphas.len() != weights.len() {
            return Err(Error::Domain(format!("{} polynomials for {} weights", alphas.len(), weights.len())));
        }
        for (j, (a, &n)) in alphas.iter().zip(&weights).enumerate() {
            if a.is_zero() {
                return Err(Error::Domain(format!("alpha_{} is zero", j + 1)));
            }
            if n == 0 {
                return Err(Error::Domain("weights must be positive".into()));
            }
            let q = a.field().q() as u64;
            let h = a.theta_degree().unwrap_or(0) as u64;
            if (q - 1) * h >= n as u64 * q {
                return Err(Error::Domain(format!(
                    "alpha_{} has theta-degree {h}, violating (q-1)*deg < n*q = {} for n = {n}",
                    j + 1,
                    n as u64 * q
                )));
            }
        }
        Ok(AlphaTuple { alphas, weights })
    }

    /// The empty tuple, for which the polylogarithm is 1.
    pub fn empty() -> AlphaTuple {
        AlphaTuple { alphas: Vec::new(), weights: Vec::new() }
    }

    /// All α_j = 1.
    pub fn ones(field: &Field, idx: &IndexTuple) -> AlphaTuple {
        AlphaTuple { alphas: vec![BiPoly::one(field); idx.depth()], weights: idx.weights().to_vec() }
    }

    pub fn alphas(&self) -> &[BiPoly] {
        &self.alphas
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn depth(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// The consecutive sub-tuple `j..i` (0-based, half open).
    pub fn slice(&self, j: usize, i: usize) -> AlphaTuple {
        AlphaTuple { alphas: self.alphas[j..i].to_vec(), weights: self.weights[j..i].to_vec() }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// n is "even" exactly when q - 1 divides n.
pub fn parity(q: u32, n: u32) -> Parity {
    if n.is_multiple_of(q - 1) {
        Parity::Even
    } else {
        Parity::Odd
    }
}
