//! Which classical inference rules does a coevent obey? Single-history
//! supports behave like ordinary truth valuations; wider supports keep
//! modus ponens, multiplicativity, and monotonicity but give up
//! negation: an event and its complement can both be denied.
//!
//! ```bash
//! cargo run -p coevents --example rule_checks
//! ```

use coevents::coevent::is_maximal_preclusive_filter;
use coevents::{Coevent, ComplexScalar, HistorySpace, MeasureSpec, Scalar};

fn main() -> coevents::Result<()> {
    let space = HistorySpace::new(["A", "B", "C"])?;
    let spec = MeasureSpec::amplitude(
        &space,
        vec![
            ComplexScalar::real(Scalar::from_int(1)),
            ComplexScalar::real(Scalar::from_int(-1)),
            ComplexScalar::real(Scalar::from_int(1)),
        ],
    )?;
    let nulls = spec.enumerate_precluded()?;

    for labels in [&["C"][..], &["A", "C"][..], &["A", "B", "C"][..]] {
        let phi = Coevent::new(space.event_from_labels(labels.iter().copied())?)?;
        println!("{phi}:");
        let report = phi.check_rules();
        for (name, outcome) in report.entries() {
            match &outcome.witness {
                None => println!("  {name}: pass"),
                Some(w) => println!("  {name}: FAIL, witness {w}"),
            }
        }
        let homomorphism = phi.is_homomorphic();
        println!(
            "  homomorphic: {}{}",
            homomorphism.homomorphic,
            homomorphism
                .witness
                .map(|w| format!(" (negation breaks at {w})"))
                .unwrap_or_default()
        );

        // The affirmed events always form a filter; primitivity is the
        // same thing as that filter being maximal among preclusive ones.
        let filter = phi.affirmed_filter()?;
        println!(
            "  affirms {} events; maximal preclusive filter: {}",
            filter.len(),
            is_maximal_preclusive_filter(&filter, &nulls)?
        );
        if phi.is_preclusive(&nulls)? {
            println!(
                "  preclusive: yes, primitive: {}",
                phi.is_primitive(&nulls)?
            );
        } else {
            println!("  preclusive: no");
        }
        println!();
    }
    Ok(())
}
