//! Anderson-Thakur polynomials found by interpolation and verified on further twists.

use carlitz::special::{anderson_thakur, verify_at, Caps};
use carlitz::{Field, Result};

fn main() -> Result<()> {
    for (q, n) in [(2, 1), (2, 3), (2, 4), (3, 2), (3, 4), (3, 5)] {
        let field = Field::new(q)?;
        let at = anderson_thakur(&field, n, &Caps::default())?;
        println!(
            "q={q} n={n}: H = {}  (verified through twist {:?}, rechecked to 5: {})",
            at.h,
            at.verified_upto,
            verify_at(&at.h, n, 5)?
        );
    }
    Ok(())
}
