//! Restriction of coevents to coarse-grained subalgebras and the
//! preclusive-separability checks.
//!
//! A coevent restricted to a partition subalgebra behaves classically
//! exactly when its support sits inside a single block; then the
//! restriction is the point evaluation at that block in the quotient.
//! [`restrict_and_check`] verifies the homomorphism property directly on
//! the block unions and cross-checks it against the support criterion.
//!
//! Both separability conditions are *verified*, never assumed: this module
//! is a checker over concrete finite instances, not a prover.

use crate::algebra::{Event, HistorySpace, Partition, Subalgebra};
use crate::coevent::{Coevent, PrimitiveSet, EXHAUSTIVE_CAP};
use crate::error::{Error, Result};
use crate::measure::{MeasureSpec, NullStructure};

/// A two-sided split of the history space into nonempty disjoint halves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    space: HistorySpace,
    one: Event,
    two: Event,
}

impl Bipartition {
    pub fn new(one: Event, two: Event) -> Result<Self> {
        if one.space() != two.space() {
            return Err(Error::MixedSpaces);
        }
        let space = one.space().clone();
        if one.is_empty() || two.is_empty() {
            return Err(Error::InvalidBipartition(
                "both sides must be nonempty".into(),
            ));
        }
        if !one.is_disjoint(&two)? {
            return Err(Error::InvalidBipartition("sides overlap".into()));
        }
        if one.union(&two)? != space.full_event() {
            return Err(Error::InvalidBipartition(
                "sides do not cover the space".into(),
            ));
        }
        Ok(Bipartition { space, one, two })
    }

    pub fn from_labels(space: &HistorySpace, one: &[String], two: &[String]) -> Result<Self> {
        Bipartition::new(
            space.event_from_labels(one.iter().map(String::as_str))?,
            space.event_from_labels(two.iter().map(String::as_str))?,
        )
    }

    pub fn space(&self) -> &HistorySpace {
        &self.space
    }

    pub fn one(&self) -> &Event {
        &self.one
    }

    pub fn two(&self) -> &Event {
        &self.two
    }

    pub fn as_partition(&self) -> Partition {
        Partition::new(&self.space, vec![self.one.clone(), self.two.clone()])
            .expect("bipartition sides tile the space")
    }
}

/// Outcome of restricting one coevent to a partition subalgebra.
#[derive(Clone, Debug)]
pub struct RestrictionReport {
    pub coevent: Coevent,
    pub partition: Partition,
    pub classical: bool,
    /// The block containing the support, present iff `classical`.
    pub containing_block: Option<Event>,
}

/// Evaluates the coevent on the block unions and decides whether the
/// restricted map is a unital homomorphism. The direct evaluation and
/// the support-in-one-block criterion must agree; a mismatch would be an
/// internal bug and panics.
pub fn restrict_and_check(phi: &Coevent, partition: &Partition) -> Result<RestrictionReport> {
    if phi.space() != partition.space() {
        return Err(Error::MixedSpaces);
    }
    let support = phi.support().mask();
    let containing_block = partition
        .blocks()
        .iter()
        .find(|b| support & !b.mask() == 0)
        .cloned();
    let by_support = containing_block.is_some();

    let subalgebra = Subalgebra::new(partition.clone());
    let masks = subalgebra.event_masks();
    let full = partition.space().full_event().mask();
    let affirms = |m: u32| support & !m == 0;

    let mut by_direct = affirms(full);
    if by_direct {
        'outer: for (i, &u) in masks.iter().enumerate() {
            if affirms(!u & full) == affirms(u) {
                by_direct = false;
                break;
            }
            // Pair check runs within the subalgebra only when it is small
            // enough; intersection preservation cannot fail for a
            // support-defined coevent, so the negation loop is the decider.
            if masks.len() <= (1 << EXHAUSTIVE_CAP) {
                for &v in masks.iter().skip(i) {
                    if affirms(u & v) != (affirms(u) && affirms(v)) {
                        by_direct = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    assert_eq!(
        by_direct, by_support,
        "restriction homomorphism check disagrees with the support criterion"
    );

    Ok(RestrictionReport {
        coevent: phi.clone(),
        partition: partition.clone(),
        classical: by_support,
        containing_block,
    })
}

/// Result of one exhaustive condition sweep.
#[derive(Clone, Debug)]
pub struct ConditionCheck {
    pub holds: bool,
    pub witness: Option<Event>,
}

/// Tests, over every event `A`, the interchange condition: `A` is
/// precluded iff both `A & one` and `A & two` are precluded.
pub fn check_preclusion_splits(spec: &MeasureSpec, b: &Bipartition) -> Result<ConditionCheck> {
    let nulls = spec.enumerate_precluded()?;
    check_preclusion_splits_with_nulls(&nulls, b)
}

pub fn check_preclusion_splits_with_nulls(nulls: &NullStructure, b: &Bipartition) -> Result<ConditionCheck> {
    if nulls.space() != b.space() {
        return Err(Error::MixedSpaces);
    }
    let space = nulls.space();
    let m1 = b.one().mask();
    let m2 = b.two().mask();
    for mask in 0..space.event_count() as u32 {
        let whole = nulls.is_precluded_mask(mask);
        let parts = nulls.is_precluded_mask(mask & m1) && nulls.is_precluded_mask(mask & m2);
        if whole != parts {
            return Ok(ConditionCheck {
                holds: false,
                witness: Some(space.event_from_mask(mask).expect("mask in range")),
            });
        }
    }
    Ok(ConditionCheck {
        holds: true,
        witness: None,
    })
}

/// Tests the weaker per-side condition: every subset of `s` that lies in
/// some precluded event at all lies in a precluded event inside `s`.
/// The witness on failure is the offending subset.
pub fn check_internal_cover(spec: &MeasureSpec, s: &Event) -> Result<ConditionCheck> {
    let nulls = spec.enumerate_precluded()?;
    check_internal_cover_with_nulls(&nulls, s)
}

pub fn check_internal_cover_with_nulls(nulls: &NullStructure, s: &Event) -> Result<ConditionCheck> {
    if nulls.space() != s.space() {
        return Err(Error::MixedSpaces);
    }
    let space = nulls.space();
    let total = space.event_count();
    let s_mask = s.mask();

    // covered_within[m] : some precluded C with m <= C <= s exists.
    // Downward closure over the subset lattice of s, walked in descending
    // numeric order so supersets are settled first.
    let mut covered_within = vec![false; total];
    let mut descending: Vec<u32> = Vec::new();
    let mut sub = s_mask;
    loop {
        descending.push(sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & s_mask;
    }
    for &m in &descending {
        if nulls.is_precluded_mask(m) {
            covered_within[m as usize] = true;
            continue;
        }
        let mut rest = s_mask & !m;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            if covered_within[(m | bit) as usize] {
                covered_within[m as usize] = true;
                break;
            }
        }
    }

    for &m in descending.iter().rev() {
        if nulls.is_covered_mask(m) && !covered_within[m as usize] {
            return Ok(ConditionCheck {
                holds: false,
                witness: Some(space.event_from_mask(m).expect("mask in range")),
            });
        }
    }
    Ok(ConditionCheck {
        holds: true,
        witness: None,
    })
}

/// Outcome of the separability verdict over a primitive set.
#[derive(Clone, Debug)]
pub struct SeparabilityCheck {
    pub holds: bool,
    /// Supports straddling both sides.
    pub violators: Vec<Event>,
}

/// True iff every primitive support is contained in one side of the
/// bipartition; straddling supports are listed otherwise.
pub fn verify_separability(prims: &PrimitiveSet, b: &Bipartition) -> Result<SeparabilityCheck> {
    if prims.null_structure().space() != b.space() {
        return Err(Error::MixedSpaces);
    }
    let m1 = b.one().mask();
    let m2 = b.two().mask();
    let violators: Vec<Event> = prims
        .coevents()
        .iter()
        .filter(|phi| {
            let f = phi.support().mask();
            f & !m1 != 0 && f & !m2 != 0
        })
        .map(|phi| phi.support().clone())
        .collect();
    Ok(SeparabilityCheck {
        holds: violators.is_empty(),
        violators,
    })
}
