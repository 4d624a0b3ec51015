use crate::field::Field;
use crate::poly::FqPoly;

/// D_i = ∏_{j<i} (θ^{q^i} - θ^{q^j}).
pub fn d_factor(field: &Field, i: u32) -> FqPoly {
    let q = field.q() as u64;
    let top = FqPoly::monomial(field, crate::field::Fq::ONE, q.pow(i) as usize);
    (0..i).fold(FqPoly::one(field), |acc, j| {
        let low = FqPoly::monomial(field, crate::field::Fq::ONE, q.pow(j) as usize);
        acc.mul(&top.sub(&low))
    })
}

/// Γ_n = ∏ D_i^{c_i} where n - 1 = Σ c_i q^i; requires n ≥ 1.
pub fn carlitz_factorial(field: &Field, n: u64) -> FqPoly {
    assert!(n >= 1, "the Carlitz factorial is indexed from 1");
    let q = field.q() as u64;
    let mut rest = n - 1;
    let mut acc = FqPoly::one(field);
    let mut i = 0;
    while rest > 0 {
        let digit = rest % q;
        if digit > 0 {
            acc = acc.mul(&d_factor(field, i).pow(digit));
        }
        rest /= q;
        i += 1;
    }
    acc
}
