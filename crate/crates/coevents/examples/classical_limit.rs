//! When nothing interferes, the scheme collapses to the familiar
//! picture: every primitive coevent is a single positive-weight history
//! and behaves as an ordinary truth valuation.
//!
//! ```bash
//! cargo run -p coevents --example classical_limit
//! ```

use coevents::coevent::enumerate_primitives;
use coevents::{HistorySpace, MeasureSpec, Scalar};

fn main() -> coevents::Result<()> {
    let space = HistorySpace::new(["calm", "breeze", "gale", "storm"])?;
    let spec = MeasureSpec::classical(
        &space,
        vec![
            Scalar::ratio(1, 2)?,
            Scalar::ratio(1, 3)?,
            Scalar::ratio(1, 6)?,
            Scalar::from_int(0), // never happens
        ],
    )?;

    let nulls = spec.enumerate_precluded()?;
    println!("precluded events:");
    for event in nulls.precluded_events() {
        println!("  {event}");
    }

    let primitives = enumerate_primitives(&nulls)?;
    println!("\nprimitive coevents:");
    for phi in primitives.coevents() {
        let check = phi.is_homomorphic();
        println!(
            "  {phi}  weight {}  homomorphic: {}",
            spec.mu(phi.support())?,
            check.homomorphic
        );
        assert_eq!(phi.support().len(), 1);
        assert!(check.homomorphic);
    }
    println!("\nall realities are single histories with positive weight");
    Ok(())
}
