//! Dense linear algebra over F_q: row reduction, kernels, particular solutions.
//!
//! Pivots are always chosen as the first usable row in column order, so every
//! result is a deterministic function of the input matrix.

use crate::field::{Field, Fq};

/// Row-major dense matrix over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Fq>>) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fq {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fq) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fq] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[Fq]) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, field: &Field, x: &[Fq]) -> Vec<Fq> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).fold(Fq::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b))))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[dst] -= factor * row[src]
    fn axpy(&mut self, field: &Field, dst: usize, src: usize, factor: Fq, from_col: usize) {
        let neg = field.neg(factor);
        for c in from_col..self.cols {
            let s = self.data[src * self.cols + c];
            if !s.is_zero() {
                let d = &mut self.data[dst * self.cols + c];
                *d = field.add(*d, field.mul(neg, s));
            }
        }
    }

    fn scale_row(&mut self, field: &Field, r: usize, factor: Fq) {
        for c in 0..self.cols {
            let d = &mut self.data[r * self.cols + c];
            *d = field.mul(*d, factor);
        }
    }
}

/// Reduces to reduced row echelon form in place; returns the pivot columns.
pub fn rref(field: &Field, m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
        m.scale_row(field, r, inv);
        for i in 0..m.rows {
            if i != r {
                let f = m.get(i, c);
                if !f.is_zero() {
                    m.axpy(field, i, r, f, c);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of {x : m x = 0}, one vector per free column in increasing order.
pub fn kernel(field: &Field, m: &Matrix) -> Vec<Vec<Fq>> {
    let mut a = m.clone();
    let pivots = rref(field, &mut a);
    let mut is_pivot = vec![false; a.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..a.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Fq::ZERO; a.cols];
            v[free] = Fq::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(a.get(r, free));
            }
            v
        })
        .collect()
}

/// A solution of m x = b with all free variables zero, or `None` if inconsistent.
pub fn solve(field: &Field, m: &Matrix, b: &[Fq]) -> Option<Vec<Fq>> {
    assert_eq!(b.len(), m.rows);
    let mut aug = Matrix::zeros(0, m.cols + 1);
    for (r, &rhs) in b.iter().enumerate() {
        let mut row = m.row(r).to_vec();
        row.push(rhs);
        aug.push_row(&row);
    }
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Fq::ZERO; m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, m.cols);
    }
    Some(x)
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    rref(field, &mut m.clone()).len()
}
