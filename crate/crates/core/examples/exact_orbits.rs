//! Exact rational orbits and the finite distribution function `F^{(n)}`.

use chaoscert::dfmetrics::{df_n, orbit, OrbitPair};
use chaoscert::piecewise::example32;
use chaoscert::rational::{approx, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = example32::map();
    let (x0, y0) = (rat(1, 7), rat(1, 5));
    let pair = OrbitPair::new(&f, &x0, &y0, 40)?;
    let (xs, ys) = (orbit(&f, &x0, 8)?, orbit(&f, &y0, 8)?);
    for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
        println!("f^{i}: {x:>12} {y:>12}  d = {}", pair.distances[i]);
    }
    for t in [rat(1, 100), rat(1, 10), rat(1, 2), rat(2, 1)] {
        let v = df_n(&pair.distances, &t, 40)?;
        println!("F^(40)({t}) = {v} ~ {:.3}", approx(&v));
    }
    Ok(())
}
