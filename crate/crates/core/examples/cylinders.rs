//! Cylinder sets of the bundled example: the `(2/9)^k` contraction along
//! `(12)^k 1`, the singleton depth for `α = (12)`, and an itinerary.

use chaoscert::piecewise::example32;
use chaoscert::rational::{approx, parse_rational, rat};
use chaoscert::symbolic::format_symbols;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = example32::system();
    for k in 0..=8 {
        let mut w = [1u8, 2].repeat(k);
        w.push(1);
        let c = sys.cylinder(&w)?;
        let expected = num_traits::pow(rat(2, 9), k);
        println!(
            "V_{:<18} = {:?}  diam {} ({})",
            format_symbols(&w),
            c.hull().map(|h| (h.lo.to_string(), h.hi.to_string())),
            c.diameter(),
            if c.diameter() == expected {
                "= (2/9)^k"
            } else {
                "MISMATCH"
            }
        );
    }

    let tau = parse_rational("1e-9")?;
    let alpha: Vec<u8> = [1, 2].repeat(40);
    if let Some((n, d)) = sys.depth_below(&alpha, &tau)? {
        println!(
            "first prefix of (12) with diameter < 1e-9: {n} symbols, diameter {d} ~ {:.3e}",
            approx(&d)
        );
    }

    let x = sys.pick_representative(&alpha, 21)?;
    let itinerary: Vec<String> = sys
        .itinerary(&x, 21)?
        .iter()
        .map(|s| s.map_or("-".into(), |s| s.to_string()))
        .collect();
    println!(
        "a point of V_(12)^10 1: {x}\n  itinerary {}",
        itinerary.join("")
    );
    Ok(())
}
