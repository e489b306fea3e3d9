//! Writing, loading, and running a scenario file. Rationals are
//! integers or "p/q" strings, complex numbers are [re, im] pairs, and an
//! `expected` block turns the file into a regression fixture.
//!
//! ```bash
//! cargo run -p coevents --example scenario_files
//! ```

use coevents::report::{run_scenario, RunOptions};
use coevents::scenario::parse_scenario;

fn main() -> coevents::Result<()> {
    // A three-path interferometer: the outer paths cancel exactly, so
    // the only reality left is the middle path.
    let text = r#"{
        "name": "small_interferometer",
        "description": "outer paths cancel, middle path survives",
        "space": ["upper", "middle", "lower"],
        "measure": {
            "kind": "amplitude",
            "amplitudes": ["1", ["0", "1"], "-1"]
        },
        "partitions": {
            "which_path": [["upper"], ["middle"], ["lower"]]
        },
        "expected": {
            "precluded_count": 2,
            "maximal_precluded": [["upper", "lower"]],
            "primitive_count": 1,
            "primitive_supports": [["middle"]],
            "all_primitives_homomorphic": true
        }
    }"#;

    let scenario = parse_scenario(text)?;
    println!(
        "loaded `{}`: {} histories, {} measure, {} mode",
        scenario.name,
        scenario.space.size(),
        scenario.measure.kind_name(),
        scenario.measure.mode()
    );

    let report = run_scenario(&scenario, &RunOptions::default())?;
    println!("expectations met: {}", report.expectations_met());
    println!("\nJSON report:\n{}", report.to_json());
    Ok(())
}
