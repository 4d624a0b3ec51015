//! Building the period matrix of a multizeta motive and checking Ψ = Φ^(1) Ψ^(1).

use carlitz::motive::MotiveSystem;
use carlitz::special::{at_tuple, Caps, IndexTuple};
use carlitz::{Field, Fq, Result};

fn main() -> Result<()> {
    let field = Field::new(3)?;
    let idx = IndexTuple::new(vec![1, 1])?;
    let (alphas, _) = at_tuple(&field, &idx, &Caps::default())?;
    let system = MotiveSystem::build_general(&field, &alphas, 16, 150)?;
    println!("det Phi = {}", system.det_phi());

    let report = system.verify()?;
    println!("{} over t^0..t^{} with w-precision {:?}", report.status, report.tdeg, report.w_prec);

    let mut corrupted = system.clone();
    corrupted.corrupt_psi(1, 0, 3, 7, Fq::ONE)?;
    println!("after corrupting Psi[1][0]: {}", corrupted.verify()?.status);
    Ok(())
}
