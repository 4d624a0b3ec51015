//! Searching for F_q[θ]-linear relations among products of π̃ and zeta values.

use carlitz::checks::mine_expression;
use carlitz::relations::CertificateKind;
use carlitz::special::Caps;
use carlitz::{Field, Result};

fn main() -> Result<()> {
    let runs = [(3, "pi^2,zeta(2)"), (3, "pi^2,zeta(1)^2,zeta(1,1)"), (4, "pi^2,zeta(1)^2,zeta(1,1)"), (2, "zeta(2),zeta(1,1)")];
    for (q, targets) in runs {
        let field = Field::new(q)?;
        let cert = mine_expression(&field, targets, 6, 200, 400, &Caps::default())?;
        print!("q={q} [{targets}]: ");
        match cert.kind {
            CertificateKind::NoneAtBound => println!("no relation with coefficient degree <= 6"),
            CertificateKind::Kernel => {
                for rel in &cert.relations {
                    let parts: Vec<String> = rel.iter().map(|c| format!("({c})")).collect();
                    println!("{} (confirmed: {})", parts.join(" , "), cert.all_confirmed());
                }
            }
        }
    }
    Ok(())
}
