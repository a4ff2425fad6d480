//! The second construction on a periodic base point, with its `B` and `B̄`
//! blocks and an exponent cap.

use chaoscert::piecewise::example32;
use chaoscert::rational::pow2;
use chaoscert::scrambled::{phi2, scrambled_params, BlockKind, Extent, Phi2Context};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = example32::system();
    for alpha in ["(12)", "(122)"] {
        let ctx = Phi2Context::new(&sys.matrix, &alpha.parse()?, None, Some(pow2(40)))?;
        println!(
            "alpha {alpha}: u = {}, v = {}, connector C = {}",
            ctx.u(),
            ctx.v(),
            ctx.connector
        );
        let c = &scrambled_params(2, 0)[0];
        let s = phi2(c, &ctx, &Extent::Blocks(14))?;
        for e in s.entries() {
            let tag = if e.capped { " (capped)" } else { "" };
            let idx = if matches!(e.kind, BlockKind::B | BlockKind::Psi) {
                format!("i={}", e.index)
            } else {
                String::new()
            };
            println!(
                "  stage {:2} {:>5} {:<6} {:>8} ^ {}{tag}",
                e.stage,
                format!("{:?}", e.kind),
                idx,
                e.word.to_string(),
                e.exponent
            );
        }
        println!("  total length {}\n", s.total_len());
    }
    Ok(())
}
