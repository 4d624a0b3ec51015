//! Power sums over monics of fixed degree, their valuation bound, and Carlitz factorials.

use carlitz::special::{carlitz_factorial, power_sum, power_sum_valuation_bound, Caps};
use carlitz::{Field, Result};

fn main() -> Result<()> {
    let field = Field::new(3)?;
    for d in 0..3 {
        for k in [1, 2, 4] {
            let s = power_sum(&field, d, k, 40, &Caps::default())?;
            let bound = power_sum_valuation_bound(3, d, k);
            println!("S_{d}({k}): val {:?} (bound {bound}) = {s}", s.val());
        }
    }
    for n in [1, 3, 4, 10] {
        println!("Gamma_{n} = {}", carlitz_factorial(&field, n));
    }
    Ok(())
}
