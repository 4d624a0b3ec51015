//! Values checked against a standalone expansion in 1/θ over a prime field, plus frozen
//! coefficients derived from it.

use carlitz::special::{carlitz_factorial, mzv, pi_carlitz, power_sum, Caps, IndexTuple};
use carlitz::{Field, FqPoly, LaurentSeries};

/// Power series in x = 1/θ over F_p, dense and truncated at `len` terms.
#[derive(Clone, Debug, PartialEq)]
struct XSeries {
    p: i64,
    c: Vec<i64>,
}

impl XSeries {
    fn zero(p: i64, len: usize) -> Self {
        XSeries { p, c: vec![0; len] }
    }

    fn add(&self, o: &XSeries) -> XSeries {
        XSeries { p: self.p, c: self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % self.p).collect() }
    }

    fn mul(&self, o: &XSeries) -> XSeries {
        let len = self.c.len();
        let mut c = vec![0; len];
        for (i, a) in self.c.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, b) in o.c.iter().take(len - i).enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        XSeries { p: self.p, c }
    }

    fn pow(&self, n: u32) -> XSeries {
        let mut out = XSeries::zero(self.p, self.c.len());
        out.c[0] = 1;
        (0..n).fold(out, |acc, _| acc.mul(self))
    }
}

/// 1/a for a monic of degree d given by its lower coefficients (constant first).
fn reciprocal(p: i64, lower: &[i64], len: usize) -> XSeries {
    let d = lower.len();
    // a = θ^d (1 + Σ_k lower[d-k] x^k), invert the unit factor then shift by x^d.
    let mut unit = vec![0; len];
    unit[0] = 1;
    for k in 1..=d.min(len - 1) {
        unit[k] = lower[d - k];
    }
    let mut inv = vec![0i64; len];
    inv[0] = 1;
    for k in 1..len {
        let s: i64 = (1..=k.min(d)).map(|j| unit[j] * inv[k - j]).sum();
        inv[k] = (p - s % p) % p;
    }
    let mut c = vec![0; len];
    c[d..len].copy_from_slice(&inv[..len.saturating_sub(d)]);
    XSeries { p, c }
}

fn oracle_power_sum(p: i64, d: usize, n: u32, len: usize) -> XSeries {
    let mut total = XSeries::zero(p, len);
    for code in 0..(p as usize).pow(d as u32) {
        let lower: Vec<i64> = (0..d).map(|i| ((code / (p as usize).pow(i as u32)) % p as usize) as i64).collect();
        total = total.add(&reciprocal(p, &lower, len).pow(n));
    }
    total
}

fn oracle_zeta(p: i64, w: &[u32], len: usize) -> XSeries {
    // Degree d contributes only from θ^{-d} on, so d < len suffices.
    let maxd = len - 1;
    let mut sums = std::collections::HashMap::new();
    let mut s = |d: usize, n: u32| sums.entry((d, n)).or_insert_with(|| oracle_power_sum(p, d, n, len)).clone();
    // exact[d]: sum over degree chains for the remaining indices whose first degree is d.
    let mut exact: Vec<XSeries> = (0..=maxd).map(|d| s(d, *w.last().unwrap())).collect();
    for &n in w.iter().rev().skip(1) {
        let mut below = XSeries::zero(p, len);
        let mut next = Vec::with_capacity(maxd + 1);
        for (d, chain) in exact.iter().enumerate() {
            next.push(s(d, n).mul(&below));
            below = below.add(chain);
        }
        exact = next;
    }
    exact.iter().fold(XSeries::zero(p, len), |acc, x| acc.add(x))
}

/// Reads a library value as coefficients of θ^{-k}, using θ^{-k} = (-1)^k w^{k(q-1)}.
fn as_xseries(v: &LaurentSeries, p: i64, len: usize) -> XSeries {
    let step = p - 1;
    let c = (0..len as i64)
        .map(|k| {
            let raw = v.coeff(k * step).map(|c| c.to_int() as i64).unwrap_or(0);
            if k % 2 == 1 {
                (p - raw) % p
            } else {
                raw
            }
        })
        .collect();
    XSeries { p, c }
}

fn zeta(f: &Field, w: &[u32], prec: i64) -> LaurentSeries {
    mzv(f, &IndexTuple::new(w.to_vec()).unwrap(), prec, &Caps::default()).unwrap()
}

#[test]
fn power_sums_match_standalone_expansion() {
    for (p, len) in [(2i64, 40usize), (3, 30), (5, 12)] {
        let f = Field::new(p as u32).unwrap();
        for d in 0..3 {
            for n in 1..=4 {
                let lib = power_sum(&f, d, n, len as i64 * (p - 1), &Caps::default()).unwrap();
                assert_eq!(as_xseries(&lib, p, len), oracle_power_sum(p, d, n, len), "p={p} d={d} n={n}");
            }
        }
    }
}

#[test]
fn zeta_values_match_standalone_expansion() {
    for (p, len) in [(2i64, 14usize), (3, 9)] {
        let f = Field::new(p as u32).unwrap();
        for w in [&[1u32][..], &[2], &[3], &[1, 1], &[2, 1], &[1, 2]] {
            let lib = zeta(&f, w, len as i64 * (p - 1));
            assert_eq!(as_xseries(&lib, p, len), oracle_zeta(p, w, len), "p={p} {w:?}");
        }
    }
}

fn support(x: &XSeries) -> Vec<usize> {
    x.c.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, _)| k).collect()
}

// Frozen from the standalone expansion above.
#[test]
fn frozen_zeta_one_q2() {
    let f = Field::new(2).unwrap();
    assert_eq!(support(&as_xseries(&zeta(&f, &[1], 20), 2, 20)), vec![0, 2, 3, 4, 5, 9, 10, 11, 14, 17]);
}

// Frozen from the standalone expansion above.
#[test]
fn frozen_zeta_one_one_q2() {
    let f = Field::new(2).unwrap();
    let frozen = vec![2, 3, 4, 5, 8, 9, 12, 13, 14, 15, 16, 17, 18, 19];
    assert_eq!(support(&as_xseries(&zeta(&f, &[1, 1], 20), 2, 20)), frozen);
    assert_eq!(support(&oracle_zeta(2, &[1, 1], 20)), frozen);
}

// Γ_n = 1 for 1 ≤ n ≤ q.
#[test]
fn small_factorials_are_one() {
    for q in [2u32, 3, 4, 5] {
        let f = Field::new(q).unwrap();
        for n in 1..=q as u64 {
            assert_eq!(carlitz_factorial(&f, n), FqPoly::one(&f), "q={q} n={n}");
        }
    }
}

// π̃ = (−θ)^{q/(q−1)} Π_{i≥1} (1 − θ^{1−q^i})^{−1}, expanded independently for q = 3.
#[test]
fn carlitz_period_product() {
    let (p, len) = (3i64, 30usize);
    let f = Field::new(3).unwrap();
    let mut prod = XSeries::zero(p, len);
    prod.c[0] = 1;
    let mut i = 1;
    while 3usize.pow(i) - 1 < len {
        // (1 − x^{q^i − 1})^{−1} = Σ_k x^{k(q^i − 1)}
        let step = 3usize.pow(i) - 1;
        let mut geo = XSeries::zero(p, len);
        for k in (0..len).step_by(step) {
            geo.c[k] = 1;
        }
        prod = prod.mul(&geo);
        i += 1;
    }
    // π̃ / (−θ)^{q/(q−1)} = π̃ · w^q is a series in θ^{-1}.
    let pi = pi_carlitz(&f, (len as i64) * 2 - 3).mul(&LaurentSeries::monomial(&f, f.from_int(1), 3));
    assert_eq!(as_xseries(&pi, p, len), prod);
}
