//! Cross-module invariants, mostly property-based. Strategies stay
//! small: the interesting structure lives in spaces of a dozen histories
//! or fewer, and exhaustive sweeps inside each case do the real work.

mod common;

use coevents::classicality::restrict_and_check;
use coevents::coevent::{
    brute_force_primitives, enumerate_primitives, is_maximal_preclusive_filter, Coevent,
};
use coevents::deduction::{rule_sound_for, InferenceRule, SchemeProfile};
use coevents::measure::MeasureSpec;
use coevents::scalar::{ComplexScalar, Scalar};
use coevents::{HistorySpace, Partition};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=3).prop_map(|(num, den)| Scalar::ratio(num, den).unwrap())
}

fn complex_rational() -> impl Strategy<Value = ComplexScalar> {
    (rational(), rational()).prop_map(|(re, im)| ComplexScalar::new(re, im))
}

fn amplitude_spec(max_n: usize) -> impl Strategy<Value = MeasureSpec> {
    prop::collection::vec(complex_rational(), 1..=max_n).prop_map(|amps| {
        let space = space_of(amps.len());
        MeasureSpec::amplitude(&space, amps).unwrap()
    })
}

proptest! {
    #[test]
    fn boolean_laws_hold(n in 1usize..=12, seed_a in any::<u32>(), seed_b in any::<u32>()) {
        let space = space_of(n);
        let full = space.full_event().mask();
        let a = space.event_from_mask(seed_a & full).unwrap();
        let b = space.event_from_mask(seed_b & full).unwrap();

        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.symmetric_difference(&a).unwrap(), space.empty_event());
        prop_assert_eq!(
            a.union(&b).unwrap().complement(),
            a.complement().intersect(&b.complement()).unwrap()
        );
        prop_assert_eq!(
            a.intersect(&b).unwrap().complement(),
            a.complement().union(&b.complement()).unwrap()
        );
        prop_assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        prop_assert_eq!(a.intersect(&a).unwrap(), a.clone());
        prop_assert!(a.intersect(&b).unwrap().is_subset(&a).unwrap());
    }

    #[test]
    fn empty_event_has_measure_zero(spec in amplitude_spec(8)) {
        let empty = spec.space().empty_event();
        prop_assert!(spec.mu(&empty).unwrap().is_zero());
    }

    #[test]
    fn sum_rule_on_random_triples(
        spec in amplitude_spec(10),
        picks in prop::collection::vec(any::<(u32, u32, u32)>(), 1..30),
    ) {
        let space = spec.space().clone();
        let full = space.full_event().mask();
        for (x, y, z) in picks {
            // Disjoint by construction.
            let a = x & full;
            let b = y & full & !a;
            let c = z & full & !a & !b;
            let ea = space.event_from_mask(a).unwrap();
            let eb = space.event_from_mask(b).unwrap();
            let ec = space.event_from_mask(c).unwrap();
            prop_assert!(spec.interference3(&ea, &eb, &ec).unwrap().is_zero());
        }
    }

    #[test]
    fn amplitude_equals_rank_one_decoherence(spec in amplitude_spec(8)) {
        let dec = spec.as_rank_one_decoherence().unwrap();
        prop_assert!(dec.validate().is_valid());
        for e in spec.space().all_events() {
            prop_assert_eq!(spec.mu(&e).unwrap(), dec.mu(&e).unwrap());
        }
    }

    #[test]
    fn incremental_sweep_matches_direct_summation(spec in amplitude_spec(10)) {
        // The enumeration walks subsets incrementally; mu() re-sums each
        // event from scratch. They must agree event by event.
        let nulls = spec.enumerate_precluded().unwrap();
        for e in spec.space().all_events() {
            prop_assert_eq!(
                nulls.contains(&e).unwrap(),
                spec.mu(&e).unwrap().is_zero()
            );
        }
    }

    #[test]
    fn null_structure_shape(spec in amplitude_spec(10)) {
        let nulls = spec.enumerate_precluded().unwrap();
        prop_assert!(nulls.is_precluded_mask(0), "the empty event is always null");
        let maximal = nulls.maximal_masks();
        for (i, &a) in maximal.iter().enumerate() {
            for (j, &b) in maximal.iter().enumerate() {
                if i != j {
                    prop_assert!(a & !b != 0, "maximal set is an antichain");
                }
            }
        }
        for &p in nulls.precluded_masks() {
            prop_assert!(
                maximal.iter().any(|&m| p & !m == 0),
                "every null event sits under a maximal one"
            );
        }
    }

    #[test]
    fn workers_do_not_change_results(spec in amplitude_spec(9), workers in 2usize..6) {
        let base = spec.enumerate_precluded_with_workers(1).unwrap();
        let parallel = spec.enumerate_precluded_with_workers(workers).unwrap();
        prop_assert_eq!(base.precluded_masks(), parallel.precluded_masks());
        prop_assert_eq!(base.maximal_masks(), parallel.maximal_masks());
    }

    #[test]
    fn primitives_are_minimal_preclusive_and_match_oracle(spec in amplitude_spec(9)) {
        let nulls = spec.enumerate_precluded().unwrap();
        if nulls.omega_precluded() {
            return Ok(());
        }
        let primitives = enumerate_primitives(&nulls).unwrap();
        let oracle = brute_force_primitives(&nulls).unwrap();
        prop_assert_eq!(primitives.support_masks(), oracle.support_masks());
        for phi in primitives.coevents() {
            prop_assert!(phi.is_preclusive(&nulls).unwrap());
            prop_assert!(phi.is_primitive(&nulls).unwrap());
        }
        let masks = primitives.support_masks();
        for (i, &a) in masks.iter().enumerate() {
            for (j, &b) in masks.iter().enumerate() {
                if i != j {
                    prop_assert!(a & !b != 0, "supports form an antichain");
                }
            }
        }
    }

    #[test]
    fn coevent_structure_is_multiplicative(n in 1usize..=8, support_seed in any::<u32>()) {
        let space = space_of(n);
        let full = space.full_event().mask();
        let support = support_seed & full;
        prop_assume!(support != 0);
        let phi = Coevent::new(space.event_from_mask(support).unwrap()).unwrap();
        prop_assert!(phi.evaluate(&space.full_event()).unwrap(), "unital");
        prop_assert!(!phi.evaluate(&space.empty_event()).unwrap(), "denies the empty event");
        for a in space.all_events() {
            for b in space.all_events() {
                let lhs = phi.evaluate(&a.intersect(&b).unwrap()).unwrap();
                let rhs = phi.evaluate(&a).unwrap() && phi.evaluate(&b).unwrap();
                prop_assert_eq!(lhs, rhs, "intersections multiply");
                if a.is_subset(&b).unwrap() && phi.evaluate(&a).unwrap() {
                    prop_assert!(phi.evaluate(&b).unwrap(), "affirmation climbs upward");
                }
            }
        }
    }
}

/// Primitivity coincides with affirming a maximal preclusive filter, for
/// every preclusive support over a batch of random small measures.
#[test]
fn primitivity_equals_filter_maximality() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..25 {
        let n = 2 + (rng.next_u32() as usize % 5);
        let spec = random_amplitude(&mut rng, n);
        let space = spec.space().clone();
        let nulls = spec.enumerate_precluded().unwrap();
        if nulls.omega_precluded() {
            continue;
        }
        for mask in 1..space.event_count() as u32 {
            let phi = Coevent::new(space.event_from_mask(mask).unwrap()).unwrap();
            if !phi.is_preclusive(&nulls).unwrap() {
                continue;
            }
            let filter = phi.affirmed_filter().unwrap();
            assert_eq!(
                phi.is_primitive(&nulls).unwrap(),
                is_maximal_preclusive_filter(&filter, &nulls).unwrap(),
                "support {mask:#b} over {n} histories"
            );
        }
    }
}

use rand::RngCore;

/// Restriction classicality coincides with the support sitting inside a
/// single block, for every coevent and every partition of spaces up to
/// six histories. The equality assertion lives inside restrict_and_check;
/// this drives it exhaustively.
#[test]
fn restriction_classicality_exhaustive() {
    for n in 1..=6usize {
        let space = space_of(n);
        for partition in all_partitions(&space) {
            for mask in 1..space.event_count() as u32 {
                let phi = Coevent::new(space.event_from_mask(mask).unwrap()).unwrap();
                let report = restrict_and_check(&phi, &partition).unwrap();
                let in_one_block = partition.blocks().iter().any(|b| mask & !b.mask() == 0);
                assert_eq!(report.classical, in_one_block);
                assert_eq!(report.containing_block.is_some(), report.classical);
            }
        }
    }
}

fn all_partitions(space: &HistorySpace) -> Vec<Partition> {
    let n = space.size();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    loop {
        let block_count = assignment.iter().copied().max().unwrap() + 1;
        let mut masks = vec![0u32; block_count];
        for (i, &b) in assignment.iter().enumerate() {
            masks[b] |= 1 << i;
        }
        let events = masks
            .into_iter()
            .map(|m| space.event_from_mask(m).unwrap())
            .collect();
        out.push(Partition::new(space, events).unwrap());

        let mut i = n as isize - 1;
        loop {
            if i <= 0 {
                return out;
            }
            let max_prefix = assignment[..i as usize].iter().copied().max().unwrap();
            if assignment[i as usize] <= max_prefix {
                assignment[i as usize] += 1;
                assignment[(i as usize + 1)..].fill(0);
                break;
            }
            i -= 1;
        }
    }
}

/// Every rule the multiplicative profile admits is sound for every
/// support-defined coevent on spaces up to six histories; negation fails
/// precisely for straddling supports, witnessed concretely.
#[test]
fn multiplicative_profile_soundness_exhaustive() {
    let profile = SchemeProfile::multiplicative();
    for n in 1..=6usize {
        let space = space_of(n);
        for mask in 1..space.event_count() as u32 {
            let phi = Coevent::new(space.event_from_mask(mask).unwrap()).unwrap();
            for rule in InferenceRule::ALL {
                if profile.admits(rule) {
                    assert!(rule_sound_for(rule, &phi).unwrap(), "{rule} on {phi}");
                }
            }
            let negation_sound = rule_sound_for(InferenceRule::Negation, &phi).unwrap();
            assert_eq!(
                negation_sound,
                mask.count_ones() == 1,
                "negation survives exactly on single-history supports"
            );
        }
    }
}
