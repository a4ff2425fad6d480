//! The closed-form census against literal counting on a materialized prefix.

use std::time::Instant;

use chaoscert::dfmetrics::{direct_census, symbolic_census, Mode, WindowOracle};
use chaoscert::piecewise::example32;
use chaoscert::rational::{pow2, rat};
use chaoscert::scrambled::{phi1, scrambled_params, Extent, Phi1Context};
use num_bigint::BigUint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = example32::system();
    let ctx = Phi1Context::new(&sys.matrix, &"(12)".parse()?, Some(pow2(10)))?;
    let fam = scrambled_params(2, 3);
    let ext = Extent::Length(BigUint::from(1_000_000u32));
    let (a, b) = (phi1(&fam[0], &ctx, &ext)?, phi1(&fam[1], &ctx, &ext)?);
    let limit = BigUint::from(1_000_000u32);
    let mut oracle = WindowOracle::new(&sys, 5);

    let t = Instant::now();
    let s = symbolic_census(&a, &b, &mut oracle, Mode::Sequence, Some(&limit))?;
    println!("symbolic: {} checkpoints in {:?}", s.len(), t.elapsed());
    let t = Instant::now();
    let d = direct_census(&a, &b, &mut oracle, Mode::Sequence, &limit, 2_000_000)?;
    println!("direct:   {} checkpoints in {:?}", d.len(), t.elapsed());
    println!("identical: {}", s == d);

    let last = &s.last().expect("at least one block").census;
    let (lo, hi) = last.df_bounds(&rat(5, 9));
    println!(
        "n = {}, {} distance classes, F(5/9) in [{lo}, {hi}]",
        last.n,
        last.classes.len()
    );
    Ok(())
}
