//! The built-in identity checks.

use carlitz::checks::{named_check, CheckParams};
use carlitz::special::IndexTuple;
use carlitz::{Field, Result};

type Setup = fn(&mut CheckParams);

fn main() -> Result<()> {
    let runs: [(u32, &str, Setup); 6] = [
        (2, "q2-identity", |_| {}),
        (3, "frobenius-p", |p| p.n = Some(1)),
        (3, "shuffle", |p| (p.n1, p.n2) = (Some(1), Some(1))),
        (3, "euler-like", |p| p.n = Some(1)),
        (3, "carlitz-even", |p| p.n = Some(2)),
        (2, "chang", |p| (p.tuple, p.twist) = (IndexTuple::new(vec![1, 2]).ok(), 1)),
    ];
    for (q, name, setup) in runs {
        let field = Field::new(q)?;
        let mut params = CheckParams::new(120);
        setup(&mut params);
        let report = named_check(name, &field, &params)?;
        println!("q={q} {name}: {} ({})", report.status, report.detail);
    }
    Ok(())
}
