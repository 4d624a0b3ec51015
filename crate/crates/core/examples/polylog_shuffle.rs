//! Carlitz multiple polylogarithms as Tate series and the harmonic product identity.

use carlitz::checks::shuffle_series;
use carlitz::special::{mcpl, AlphaTuple, IndexTuple};
use carlitz::{Field, Profile, Result};

fn main() -> Result<()> {
    let field = Field::new(3)?;
    let idx = IndexTuple::new(vec![1, 2])?;
    let l = mcpl(&field, &AlphaTuple::ones(&field, &idx), 3, Profile::flat(20))?;
    for (m, c) in l.coeffs().iter().enumerate() {
        println!("L{idx} t^{m}: {c}");
    }
    match shuffle_series(&field, 1, 1, 12, 80)? {
        None => println!("L_1 * L_1 = 2 L_(1,1) + L_2 through t^12 and w^80"),
        Some((m, e)) => println!("harmonic product fails at t^{m}, w^{e}"),
    }
    Ok(())
}
