//! Transition-matrix checks, admissible-word counts and the word gadgets.

use chaoscert::transition::TransitionMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["01;11", "011;101;110", "11;01"] {
        let a = TransitionMatrix::parse_inline(text)?;
        let counts: Vec<String> = (1..=8)
            .map(|n| a.count_admissible_words(n).map(|c| c.to_string()))
            .collect::<Result<_, _>>()?;
        println!(
            "A = {text}: irreducible {}, star row {:?}",
            a.is_irreducible(),
            a.star_row()
        );
        println!("  word counts for n = 1..8: {}", counts.join(", "));
        if let Ok(g) = a.find_equal_length_pair(1) {
            println!("  gadget at 1: v1 = {}, v2 = {}, l = {}", g.v1, g.v2, g.l);
        }
    }
    let a = TransitionMatrix::parse_inline("01;11")?;
    let words: Vec<String> = a
        .enumerate_admissible_words(4)?
        .iter()
        .map(|w| w.to_string())
        .collect();
    println!(
        "admissible words of length 4 for 01;11: {}",
        words.join(" ")
    );
    Ok(())
}
