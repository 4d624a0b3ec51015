//! Evaluating Ω^c L at θ^(q^N) and comparing with Γ ζ / π̃^c.

use carlitz::special::{chang_eval, Caps, IndexTuple};
use carlitz::{Field, Result};

fn main() -> Result<()> {
    for (q, weights, twist) in [(3, vec![1], 0), (3, vec![1, 1], 0), (2, vec![1, 2], 1), (2, vec![3], 1)] {
        let field = Field::new(q)?;
        let idx = IndexTuple::new(weights)?;
        let r = chang_eval(&field, &idx, twist, 80, &Caps::default())?;
        println!(
            "q={q} {idx} N={twist}: agree={} window={:?} t-truncation={}",
            r.agrees, r.window, r.tdeg
        );
    }
    Ok(())
}
