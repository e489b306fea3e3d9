//! Enumerating primitive coevents at growing sizes. The search walks the
//! minimal transversals of the complements of the maximal null events;
//! the brute-force oracle re-derives the same answer by scanning every
//! nonempty support.
//!
//! ```bash
//! cargo run --release -p coevents --example primitive_enumeration
//! ```

use coevents::coevent::{brute_force_primitives, enumerate_primitives, ORACLE_CAP};
use coevents::{ComplexScalar, HistorySpace, MeasureSpec, Scalar};
use std::time::Instant;

fn main() -> coevents::Result<()> {
    // Amplitudes repeating +1, +1, -1 produce a dense web of pairwise
    // cancellations while the total never vanishes.
    for n in 3..=12usize {
        let space = HistorySpace::new((0..n).map(|i| format!("g{i}")))?;
        let amps: Vec<ComplexScalar> = (0..n)
            .map(|i| ComplexScalar::real(Scalar::from_int(if i % 3 == 2 { -1 } else { 1 })))
            .collect();
        let spec = MeasureSpec::amplitude(&space, amps)?;
        if spec.is_precluded(&space.full_event())? {
            println!("{n:2} histories: the whole space is precluded, skipping");
            continue;
        }

        let start = Instant::now();
        let nulls = spec.enumerate_precluded()?;
        let primitives = enumerate_primitives(&nulls)?;
        let elapsed = start.elapsed();

        print!(
            "{n:2} histories: {:5} null events, {:4} maximal, {:4} primitives in {elapsed:?}",
            nulls.precluded_count(),
            nulls.maximal_masks().len(),
            primitives.len(),
        );
        if n <= ORACLE_CAP {
            let oracle = brute_force_primitives(&nulls)?;
            assert_eq!(oracle.support_masks(), primitives.support_masks());
            print!("  [oracle agrees]");
        }
        println!();
    }
    Ok(())
}
