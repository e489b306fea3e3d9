//! Preclusive separability on two non-interfering copies of the
//! triple-slit setup. The interchange condition (an event is null iff
//! both its halves are) forces every reality into a single copy, and the
//! weaker internal-cover condition follows side by side.
//!
//! ```bash
//! cargo run -p coevents --example separability
//! ```

use coevents::classicality::{
    check_preclusion_splits_with_nulls, check_internal_cover_with_nulls, restrict_and_check, verify_separability,
};
use coevents::coevent::enumerate_primitives;
use coevents::scenario::load_builtin_scenario;

fn main() -> coevents::Result<()> {
    let scenario = load_builtin_scenario("double_three_slit")?;
    let nulls = scenario.measure.enumerate_precluded()?;
    let primitives = enumerate_primitives(&nulls)?;

    println!(
        "double three-slit: {} null events, {} primitive coevents",
        nulls.precluded_count(),
        primitives.len()
    );
    for phi in primitives.coevents() {
        println!("  {phi}");
    }

    let copies = &scenario.bipartitions["copies"];
    let t1 = check_preclusion_splits_with_nulls(&nulls, copies)?;
    println!("\ninterchange condition across the copies: {}", t1.holds);
    for (side, event) in [("one", copies.one()), ("two", copies.two())] {
        let t2 = check_internal_cover_with_nulls(&nulls, event)?;
        println!("internal-cover condition on side {side}: {}", t2.holds);
    }
    let sep = verify_separability(&primitives, copies)?;
    println!("every primitive confined to one copy: {}", sep.holds);

    // Restricted to the which-copy question, each reality answers like a
    // single coarse history: copy one happened, or copy two did.
    println!("\nrestriction to the which-copy partition:");
    let partition = &scenario.partitions["which_copy"];
    for phi in primitives.coevents() {
        let report = restrict_and_check(phi, partition)?;
        println!(
            "  {phi} -> classical: {}, block {}",
            report.classical,
            report
                .containing_block
                .map(|b| b.to_string())
                .unwrap_or_else(|| "-".into())
        );
    }

    // Contrast: a split that cuts across the interference pattern fails
    // the interchange condition and strands a straddling support.
    let three = load_builtin_scenario("three_slit")?;
    let nulls3 = three.measure.enumerate_precluded()?;
    let bad_split = &three.bipartitions["a_vs_bc"];
    let t1 = check_preclusion_splits_with_nulls(&nulls3, bad_split)?;
    println!(
        "\nthree-slit split A | B+C: interchange condition {} (witness {})",
        t1.holds,
        t1.witness.map(|w| w.to_string()).unwrap_or_default()
    );
    let primitives3 = enumerate_primitives(&nulls3)?;
    let sep = verify_separability(&primitives3, bad_split)?;
    println!(
        "separability: {} (straddling: {})",
        sep.holds,
        sep.violators
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(())
}
