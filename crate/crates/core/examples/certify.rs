//! Certificates for the bundled example and for a map read from JSON.

use chaoscert::piecewise::{example32, CodedSystem, MapConfig, PartitionConfig};
use chaoscert::transition::TransitionMatrix;

const TENT: &str = r#"{"domain": ["0", "1"], "pieces": [
  {"lo": "0", "hi": "1/2", "lo_closed": true, "hi_closed": true, "slope": "3", "intercept": "0"},
  {"lo": "1/2", "hi": "1", "lo_closed": false, "hi_closed": true, "slope": "-3", "intercept": "3"}]}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = example32::system().certify();
    println!(
        "bundled: {} (min gap {:?})",
        report.verdict.as_str(),
        report.min_gap.map(|g| g.to_string())
    );
    for row in &report.rows {
        println!("  row {}: holds = {}", row.row, row.holds);
    }

    // A steep tent map with two disjoint coding intervals and the full shift.
    let map = serde_json::from_str::<MapConfig>(TENT)?.build()?;
    let partition =
        serde_json::from_str::<PartitionConfig>(r#"{"1": ["0", "1/3"], "2": ["2/3", "1"]}"#)?
            .build()?;
    let full = CodedSystem::new(
        map.clone(),
        partition.clone(),
        TransitionMatrix::all_ones(2),
    )?;
    let r = full.certify();
    println!(
        "tent, full shift: {} (min gap {:?})",
        r.verdict.as_str(),
        r.min_gap.map(|g| g.to_string())
    );

    // The same map cannot cover a set it never reaches.
    let narrow =
        serde_json::from_str::<PartitionConfig>(r#"{"1": ["0", "1/4"], "2": ["1/2", "1"]}"#)?
            .build()?;
    let r = CodedSystem::new(map, narrow, TransitionMatrix::all_ones(2))?.certify();
    println!("tent, other partition: {}", r.verdict.as_str());
    for f in &r.failures {
        println!("  {f}");
    }
    Ok(())
}
