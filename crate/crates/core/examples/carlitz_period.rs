//! The Carlitz period and the Omega function, and the duality Ω(θ) = 1/π̃.

use carlitz::special::{omega, pi_carlitz};
use carlitz::{Field, LaurentSeries, Profile, Result};

fn main() -> Result<()> {
    for q in [2, 3, 4] {
        let field = Field::new(q)?;
        let pi = pi_carlitz(&field, 20);
        println!("q={q}: pi = {pi}");

        let target = 60;
        let om = omega(&field, 40, Profile::for_eval(&field, 0, target + q as i64));
        let at_theta = om.eval_at_theta_power(0, target + q as i64)?;
        let residual = at_theta.mul(&pi_carlitz(&field, target)).sub(&LaurentSeries::one(&field));
        println!("q={q}: pi * Omega(theta) - 1 = {residual}");
    }
    Ok(())
}
