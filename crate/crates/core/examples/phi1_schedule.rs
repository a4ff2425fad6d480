//! Block schedules of the first construction for three scrambled parameters.

use chaoscert::piecewise::example32;
use chaoscert::scrambled::{phi1, scrambled_params, Extent, Phi1Context};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = example32::system();
    let ctx = Phi1Context::new(&sys.matrix, &"(12)".parse()?, None)?;
    println!(
        "gadget: v1 = {}, v2 = {}; u words: {:?}",
        ctx.gadget.v1,
        ctx.gadget.v2,
        ctx.u_words(4)?
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
    );

    let params = scrambled_params(3, 7);
    let schedules = params
        .iter()
        .map(|c| phi1(c, &ctx, &Extent::Blocks(10)))
        .collect::<Result<Vec<_>, _>>()?;
    for (c, s) in params.iter().zip(&schedules) {
        println!("\n{c}: {} symbols", s.total_len());
        for e in s.entries() {
            println!(
                "  stage {} {:?} {:>5} ^ {}",
                e.stage,
                e.kind,
                e.word.to_string(),
                e.exponent
            );
        }
    }
    let same = schedules
        .iter()
        .all(|s| s.skeleton() == schedules[0].skeleton());
    println!("\nskeletons identical: {same}");
    let p: Vec<String> = schedules[0]
        .p_sequence()
        .take(20)
        .map(|p| p.to_string())
        .collect();
    println!("p_k: {} ...", p.join(", "));

    let mut out = std::io::stdout().lock();
    schedules[0].write_jsonl(&mut out)?;
    Ok(())
}
