//! Interference terms for the three measure kinds: classical weights
//! are additive, amplitude and decoherence measures break pairwise
//! additivity but satisfy the three-event sum rule exactly.
//!
//! ```bash
//! cargo run -p coevents --example interference
//! ```

use coevents::{ComplexScalar, HistorySpace, MeasureSpec, Scalar};

fn main() -> coevents::Result<()> {
    let space = HistorySpace::new(["A", "B", "C"])?;
    let a = space.event_from_labels(["A"])?;
    let b = space.event_from_labels(["B"])?;
    let c = space.event_from_labels(["C"])?;

    let classical = MeasureSpec::classical(
        &space,
        vec![
            Scalar::ratio(1, 2)?,
            Scalar::ratio(1, 3)?,
            Scalar::ratio(1, 6)?,
        ],
    )?;
    println!(
        "classical: I2(A,B) = {}   I3(A,B,C) = {}",
        classical.interference2(&a, &b)?,
        classical.interference3(&a, &b, &c)?
    );

    let amplitude = MeasureSpec::amplitude(
        &space,
        vec![
            ComplexScalar::real(Scalar::from_int(1)),
            ComplexScalar::real(Scalar::from_int(-1)),
            ComplexScalar::real(Scalar::from_int(1)),
        ],
    )?;
    println!(
        "amplitude: I2(A,B) = {}   I3(A,B,C) = {}",
        amplitude.interference2(&a, &b)?,
        amplitude.interference3(&a, &b, &c)?
    );

    // Any amplitude measure is the diagonal of a rank-one decoherence
    // matrix; the two agree on every event.
    let decoherence = amplitude.as_rank_one_decoherence().expect("amplitude kind");
    println!(
        "rank-one decoherence: I2(A,B) = {}   I3(A,B,C) = {}",
        decoherence.interference2(&a, &b)?,
        decoherence.interference3(&a, &b, &c)?
    );
    for event in space.all_events() {
        assert_eq!(amplitude.mu(&event)?, decoherence.mu(&event)?);
    }
    println!(
        "amplitude and rank-one decoherence agree on all {} events",
        space.event_count()
    );

    // The sum rule holds for every pairwise-disjoint triple, not just
    // the atoms.
    let mut checked = 0;
    for x in space.all_events() {
        for y in space.all_events() {
            if !x.is_disjoint(&y)? {
                continue;
            }
            for z in space.all_events() {
                if z.is_disjoint(&x)? && z.is_disjoint(&y)? {
                    assert!(amplitude.interference3(&x, &y, &z)?.is_zero());
                    checked += 1;
                }
            }
        }
    }
    println!("sum rule verified on {checked} disjoint triples");
    Ok(())
}
