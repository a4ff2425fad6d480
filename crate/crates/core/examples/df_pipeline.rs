//! Distribution-function evidence for two scrambled points of the bundled
//! example: certified census, curves and the verdict.

use std::time::Instant;

use chaoscert::dfmetrics::{analyze_phi1_pair, seq_bound_table, DfOptions};
use chaoscert::piecewise::example32;
use chaoscert::rational::{approx, pow2};
use chaoscert::scrambled::{phi1, scrambled_params, Extent, Phi1Context};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let blocks: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(14);
    let sys = example32::system();
    let ctx = Phi1Context::new(&sys.matrix, &"(12)".parse()?, Some(pow2(64)))?;
    let fam = scrambled_params(2, 0);
    let a = phi1(&fam[0], &ctx, &Extent::Blocks(blocks))?;
    let b = phi1(&fam[1], &ctx, &Extent::Blocks(blocks))?;
    println!(
        "{} blocks, {} symbols, capped: {}",
        a.entries().len(),
        a.total_len(),
        a.any_capped()
    );

    for row in seq_bound_table(&a, 3..=12) {
        println!(
            "j={:2} near>={:.6} far<={:.6}",
            row.j,
            approx(&row.near),
            approx(&row.far)
        );
    }

    let start = Instant::now();
    let r = analyze_phi1_pair(
        &sys,
        &ctx,
        &a,
        &b,
        &DfOptions {
            orbit_len: 200,
            ..DfOptions::default()
        },
    )?;
    println!(
        "d0 = {}, window length {}, {:?}",
        r.d0,
        r.window_len,
        start.elapsed()
    );
    for p in &r.curve.points {
        let min_lower = p.lower.iter().min().unwrap();
        let at_d0 = r.grid.iter().position(|t| t == &r.d0).unwrap();
        println!(
            "n={:<24} entry={:2} min lower={:.6} upper(d0)={:.6}",
            p.n.to_string(),
            p.entry,
            approx(min_lower),
            approx(&p.upper[at_d0])
        );
    }
    println!("{}", serde_json::to_string_pretty(&r)?);
    Ok(())
}
