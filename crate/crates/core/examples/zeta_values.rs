//! Multizeta values as Laurent series in w, checked against a brute-force sum.

use carlitz::special::{mzv, mzv_bruteforce_oracle, Caps, IndexTuple};
use carlitz::{Field, Result};

fn main() -> Result<()> {
    let field = Field::new(3)?;
    let caps = Caps::default();
    for weights in [vec![1], vec![2], vec![1, 1], vec![2, 1]] {
        let idx = IndexTuple::new(weights)?;
        println!("zeta{idx} = {}", mzv(&field, &idx, 24, &caps)?);
    }

    // ζ(3) = ζ(1)^3 in characteristic 3.
    let z1 = mzv(&field, &IndexTuple::single(1)?, 60, &caps)?;
    let z3 = mzv(&field, &IndexTuple::single(3)?, 60, &caps)?;
    println!("zeta(3) - zeta(1)^3 = {}", z3.sub(&z1.pow(3)));

    let idx = IndexTuple::new(vec![1, 1])?;
    let oracle = mzv_bruteforce_oracle(&field, &idx, 5, 40)?;
    let fast = mzv(&field, &idx, oracle.certified, &caps)?;
    println!("oracle agrees below w^{}: {}", oracle.certified, fast.sub(&oracle.value.truncate(oracle.certified)).is_zero());
    Ok(())
}
