//! Multiplicative coevents and their enumeration.
//!
//! A coevent here is the two-valued map `F*` determined by a nonempty
//! support `F`: it affirms exactly the events containing `F`. The module
//! answers three questions about them. Which are preclusive (deny every
//! null event)? Which are primitive (preclusive with inclusion-minimal
//! support)? And which classical inference rules does a given coevent
//! satisfy?
//!
//! Primitive supports are exactly the minimal transversals of the
//! hypergraph whose edges are the complements of the maximal null
//! events: a support escapes every null event precisely when it meets
//! every such complement. [`enumerate_primitives`] runs a depth-first
//! transversal search with subsumption pruning; [`brute_force_primitives`]
//! is the independent oracle that scans every nonempty subset.

use crate::algebra::{Event, HistorySpace};
use crate::error::{Error, Result};
use crate::measure::NullStructure;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Spaces up to this size get exhaustive rule and homomorphism checks;
/// larger ones are sampled.
pub const EXHAUSTIVE_CAP: usize = 10;

/// Ceiling for the brute-force enumeration oracle.
pub const ORACLE_CAP: usize = 12;

const SAMPLED_PAIRS: usize = 20_000;
const RULE_CHECK_SEED: u64 = 0x5EED_C0E7;

/// A multiplicative coevent, identified by its nonempty support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coevent {
    support: Event,
}

impl Coevent {
    pub fn new(support: Event) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(Coevent { support })
    }

    pub fn support(&self) -> &Event {
        &self.support
    }

    pub fn space(&self) -> &HistorySpace {
        self.support.space()
    }

    /// `true` iff the event contains the support.
    pub fn evaluate(&self, event: &Event) -> Result<bool> {
        self.support.is_subset(event)
    }

    fn affirms_mask(&self, event_mask: u32) -> bool {
        self.support.mask() & !event_mask == 0
    }

    /// A coevent is preclusive when it denies every precluded event,
    /// i.e. when its support sits inside no null event.
    pub fn is_preclusive(&self, nulls: &NullStructure) -> Result<bool> {
        if self.space() != nulls.space() {
            return Err(Error::MixedSpaces);
        }
        Ok(!nulls.is_covered_mask(self.support.mask()))
    }

    /// Whether no proper nonempty subset of the support stays preclusive.
    ///
    /// Only single-history deletions are tested. That suffices because
    /// being covered by no null event is upward closed: if some deeper
    /// subset `F' < F` were preclusive, then any one-step deletion
    /// `F - {x}` with `x` outside `F'` would already be preclusive, being
    /// a superset of `F'`.
    pub fn is_primitive(&self, nulls: &NullStructure) -> Result<bool> {
        if !self.is_preclusive(nulls)? {
            return Err(Error::NotPreclusive);
        }
        let mask = self.support.mask();
        let mut remaining = mask;
        while remaining != 0 {
            let bit = remaining & remaining.wrapping_neg();
            remaining ^= bit;
            let smaller = mask & !bit;
            if smaller != 0 && !nulls.is_covered_mask(smaller) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Tests the unital-homomorphism conditions directly: the whole space
    /// is affirmed, intersections multiply, and complements negate. The
    /// witness on failure is an event whose complement gets the same
    /// answer as the event itself.
    pub fn is_homomorphic(&self) -> HomomorphismCheck {
        let space = self.space();
        let n = space.size();
        let full = space.full_event().mask();
        if !self.affirms_mask(full) {
            return HomomorphismCheck {
                homomorphic: false,
                witness: None,
            };
        }
        let neg_witness = |mask: u32| -> Option<u32> {
            let phi_a = self.affirms_mask(mask);
            let phi_not_a = self.affirms_mask(!mask & full);
            (phi_a == phi_not_a).then_some(mask)
        };
        if n <= EXHAUSTIVE_CAP {
            for mask in 0..(1u32 << n) {
                if let Some(w) = neg_witness(mask) {
                    return HomomorphismCheck {
                        homomorphic: false,
                        witness: Some(space.event_from_mask(w).expect("mask in range")),
                    };
                }
                // Intersection preservation holds for every support-defined
                // coevent; checked anyway while we are here.
                debug_assert!({
                    let other = mask.rotate_left(1) & full;
                    self.affirms_mask(mask & other)
                        == (self.affirms_mask(mask) && self.affirms_mask(other))
                });
            }
            HomomorphismCheck {
                homomorphic: true,
                witness: None,
            }
        } else {
            // Sampled check, plus the single-history events that expose
            // every actual failure of negation for a straddling support.
            let mut rng = ChaCha8Rng::seed_from_u64(RULE_CHECK_SEED);
            for i in 0..n {
                if let Some(w) = neg_witness(1 << i) {
                    return HomomorphismCheck {
                        homomorphic: false,
                        witness: Some(space.event_from_mask(w).expect("mask in range")),
                    };
                }
            }
            for _ in 0..SAMPLED_PAIRS {
                let mask = rng.gen_range(0..(1u64 << n)) as u32;
                if let Some(w) = neg_witness(mask) {
                    return HomomorphismCheck {
                        homomorphic: false,
                        witness: Some(space.event_from_mask(w).expect("mask in range")),
                    };
                }
            }
            HomomorphismCheck {
                homomorphic: true,
                witness: None,
            }
        }
    }

    /// Evaluates the classical inference rules on this coevent, with a
    /// witness for every failure. Exhaustive over all event pairs for
    /// spaces up to [`EXHAUSTIVE_CAP`] histories, sampled beyond.
    pub fn check_rules(&self) -> RuleReport {
        let space = self.space();
        let n = space.size();
        let full = space.full_event().mask();
        let event = |mask: u32| space.event_from_mask(mask).expect("mask in range");

        let mut modus_ponens = RuleOutcome::pass();
        let mut negation = RuleOutcome::pass();
        let mut multiplicativity = RuleOutcome::pass();
        let mut monotonicity = RuleOutcome::pass();

        let visit_single = |mask: u32, negation: &mut RuleOutcome| {
            if negation.pass {
                let phi_a = self.affirms_mask(mask);
                let phi_not_a = self.affirms_mask(!mask & full);
                if !phi_a && !phi_not_a {
                    *negation = RuleOutcome::fail(RuleWitness::One(event(mask)));
                }
            }
        };
        let visit_pair = |a: u32,
                          b: u32,
                          modus_ponens: &mut RuleOutcome,
                          multiplicativity: &mut RuleOutcome,
                          monotonicity: &mut RuleOutcome| {
            let phi_a = self.affirms_mask(a);
            let phi_b = self.affirms_mask(b);
            if modus_ponens.pass {
                let implies = (!a & full) | b;
                if phi_a && self.affirms_mask(implies) && !phi_b {
                    *modus_ponens = RuleOutcome::fail(RuleWitness::Two(event(a), event(b)));
                }
            }
            if multiplicativity.pass && self.affirms_mask(a & b) != (phi_a && phi_b) {
                *multiplicativity = RuleOutcome::fail(RuleWitness::Two(event(a), event(b)));
            }
            if monotonicity.pass && a & !b == 0 && phi_a && !phi_b {
                *monotonicity = RuleOutcome::fail(RuleWitness::Two(event(a), event(b)));
            }
        };

        if n <= EXHAUSTIVE_CAP {
            let count = 1u32 << n;
            for a in 0..count {
                visit_single(a, &mut negation);
                for b in 0..count {
                    visit_pair(
                        a,
                        b,
                        &mut modus_ponens,
                        &mut multiplicativity,
                        &mut monotonicity,
                    );
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(RULE_CHECK_SEED);
            for i in 0..n {
                visit_single(1 << i, &mut negation);
            }
            for _ in 0..SAMPLED_PAIRS {
                let a = rng.gen_range(0..(1u64 << n)) as u32;
                let b = rng.gen_range(0..(1u64 << n)) as u32;
                visit_single(a, &mut negation);
                visit_pair(
                    a,
                    b,
                    &mut modus_ponens,
                    &mut multiplicativity,
                    &mut monotonicity,
                );
                // Subset pairs are rare in uniform samples; force some.
                visit_pair(
                    a & b,
                    b,
                    &mut modus_ponens,
                    &mut multiplicativity,
                    &mut monotonicity,
                );
            }
        }

        RuleReport {
            modus_ponens,
            negation,
            empty_event_denied: if self.affirms_mask(0) {
                RuleOutcome::fail(RuleWitness::One(space.empty_event()))
            } else {
                RuleOutcome::pass()
            },
            multiplicativity,
            monotonicity,
        }
    }

    /// All events affirmed by this coevent: the principal filter of its
    /// support, in canonical order.
    pub fn affirmed_filter(&self) -> Result<Vec<Event>> {
        let space = self.space();
        let n = space.size();
        if n > EXHAUSTIVE_CAP {
            return Err(Error::ExhaustiveCap {
                size: n,
                cap: EXHAUSTIVE_CAP,
            });
        }
        let base = self.support.mask();
        let free = !base & space.full_event().mask();
        // Enumerate subsets of the complement and join each onto the support.
        let mut masks = Vec::with_capacity(1 << free.count_ones());
        let mut sub = 0u32;
        loop {
            masks.push(base | sub);
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
        masks.sort_unstable();
        Ok(masks
            .into_iter()
            .map(|m| space.event_from_mask(m).expect("mask in range"))
            .collect())
    }
}

impl fmt::Display for Coevent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*", self.support)
    }
}

#[derive(Clone, Debug)]
pub struct HomomorphismCheck {
    pub homomorphic: bool,
    pub witness: Option<Event>,
}

#[derive(Clone, Debug)]
pub enum RuleWitness {
    One(Event),
    Two(Event, Event),
}

impl fmt::Display for RuleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleWitness::One(e) => write!(f, "{e}"),
            RuleWitness::Two(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RuleOutcome {
    pub pass: bool,
    pub witness: Option<RuleWitness>,
}

impl RuleOutcome {
    fn pass() -> Self {
        RuleOutcome {
            pass: true,
            witness: None,
        }
    }

    fn fail(witness: RuleWitness) -> Self {
        RuleOutcome {
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Per-rule verdicts for one coevent.
///
/// `modus_ponens`, `negation`, and `empty_event_denied` are the three
/// deductive conditions; `multiplicativity` and `monotonicity` are the
/// algebraic and order-theoretic companions.
#[derive(Clone, Debug)]
pub struct RuleReport {
    /// From `phi(A) = phi(A -> B) = 1` conclude `phi(B) = 1`.
    pub modus_ponens: RuleOutcome,
    /// From `phi(A) = 0` conclude `phi(not A) = 1`.
    pub negation: RuleOutcome,
    /// `phi(0) = 0`.
    pub empty_event_denied: RuleOutcome,
    /// `phi(A and B) = phi(A) * phi(B)`.
    pub multiplicativity: RuleOutcome,
    /// From `A <= B` and `phi(A) = 1` conclude `phi(B) = 1`.
    pub monotonicity: RuleOutcome,
}

impl RuleReport {
    pub fn entries(&self) -> [(&'static str, &RuleOutcome); 5] {
        [
            ("modus_ponens", &self.modus_ponens),
            ("negation", &self.negation),
            ("empty_event_denied", &self.empty_event_denied),
            ("multiplicativity", &self.multiplicativity),
            ("monotonicity", &self.monotonicity),
        ]
    }
}

/// All primitive coevents for one null structure, supports in canonical
/// order.
#[derive(Clone, Debug)]
pub struct PrimitiveSet {
    nulls: NullStructure,
    coevents: Vec<Coevent>,
}

impl PrimitiveSet {
    pub fn null_structure(&self) -> &NullStructure {
        &self.nulls
    }

    pub fn coevents(&self) -> &[Coevent] {
        &self.coevents
    }

    pub fn len(&self) -> usize {
        self.coevents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coevents.is_empty()
    }

    pub fn support_masks(&self) -> Vec<u32> {
        self.coevents.iter().map(|c| c.support().mask()).collect()
    }
}

/// Enumerates every primitive coevent by searching for the minimal
/// transversals of the complements of the maximal null events.
///
/// Errors with `TotalPreclusion` when the whole space is precluded, which
/// signals degenerate dynamics rather than "no realities found".
pub fn enumerate_primitives(nulls: &NullStructure) -> Result<PrimitiveSet> {
    if nulls.omega_precluded() {
        return Err(Error::TotalPreclusion);
    }
    let space = nulls.space();
    let full = space.full_event().mask();
    let edges: Vec<u32> = nulls.maximal_masks().iter().map(|&z| !z & full).collect();
    let supports = minimal_transversals(space.size(), &edges);
    Ok(PrimitiveSet {
        nulls: nulls.clone(),
        coevents: supports
            .into_iter()
            .map(|m| {
                Coevent::new(space.event_from_mask(m).expect("mask in range"))
                    .expect("transversals are nonempty")
            })
            .collect(),
    })
}

/// Independent oracle: scans all `2^N - 1` nonempty subsets, keeps the
/// preclusive ones, and filters to inclusion-minimal supports. Capped at
/// [`ORACLE_CAP`] histories.
pub fn brute_force_primitives(nulls: &NullStructure) -> Result<PrimitiveSet> {
    let space = nulls.space();
    let n = space.size();
    if n > ORACLE_CAP {
        return Err(Error::OracleCap {
            size: n,
            cap: ORACLE_CAP,
        });
    }
    if nulls.omega_precluded() {
        return Err(Error::TotalPreclusion);
    }
    let mut free: Vec<u32> = (1..(1u32 << n))
        .filter(|&m| !nulls.is_covered_mask(m))
        .collect();
    free.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then_with(|| a.cmp(b)));
    let mut minimal: Vec<u32> = Vec::new();
    for &candidate in &free {
        if !minimal.iter().any(|&kept| kept & !candidate == 0) {
            minimal.push(candidate);
        }
    }
    minimal.sort_unstable();
    Ok(PrimitiveSet {
        nulls: nulls.clone(),
        coevents: minimal
            .into_iter()
            .map(|m| {
                Coevent::new(space.event_from_mask(m).expect("mask in range"))
                    .expect("nonempty by construction")
            })
            .collect(),
    })
}

/// Depth-first enumeration of all minimal hitting sets.
///
/// At each node the uncovered edge with the fewest eligible histories is
/// chosen, and its histories are branched on in order of decreasing
/// global frequency; histories tried earlier at a node are excluded from
/// later sibling subtrees, so each minimal transversal is generated along
/// exactly one path. A partial set that already contains a recorded
/// transversal can only complete to supersets, hence the subsumption
/// prune. Completed transversals are kept only when every member has a
/// private edge.
fn minimal_transversals(n: usize, edges: &[u32]) -> Vec<u32> {
    debug_assert!(!edges.is_empty());
    debug_assert!(edges.iter().all(|&e| e != 0), "unhittable empty edge");

    let mut frequency = vec![0usize; n];
    for &e in edges {
        for (h, count) in frequency.iter_mut().enumerate() {
            if e & (1 << h) != 0 {
                *count += 1;
            }
        }
    }
    let mut branch_order: Vec<usize> = (0..n).collect();
    branch_order.sort_by(|&a, &b| frequency[b].cmp(&frequency[a]).then(a.cmp(&b)));

    struct Search<'a> {
        edges: &'a [u32],
        branch_order: &'a [usize],
        found: Vec<u32>,
    }

    impl Search<'_> {
        fn is_minimal(&self, transversal: u32) -> bool {
            let mut rest = transversal;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                if !self.edges.iter().any(|&e| e & transversal == bit) {
                    return false;
                }
            }
            true
        }

        fn recurse(&mut self, partial: u32, banned: u32) {
            if self.found.iter().any(|&t| t & !partial == 0) {
                return;
            }
            let mut chosen: Option<(u32, u32)> = None; // (eligible, count)
            for &e in self.edges {
                if e & partial != 0 {
                    continue;
                }
                let eligible = e & !banned;
                let count = eligible.count_ones();
                if count == 0 {
                    return; // uncovered edge with nothing left to pick
                }
                if chosen.is_none_or(|(_, best)| count < best) {
                    chosen = Some((eligible, count));
                }
            }
            match chosen {
                None => {
                    if self.is_minimal(partial) {
                        self.found.push(partial);
                    }
                }
                Some((eligible, _)) => {
                    let mut tried = 0u32;
                    for &h in self.branch_order {
                        let bit = 1u32 << h;
                        if eligible & bit != 0 {
                            self.recurse(partial | bit, banned | tried);
                            tried |= bit;
                        }
                    }
                }
            }
        }
    }

    let mut search = Search {
        edges,
        branch_order: &branch_order,
        found: Vec::new(),
    };
    search.recurse(0, 0);
    let mut found = search.found;
    found.sort_unstable();
    found
}

/// Verifies the three filter clauses on an explicit family of events —
/// nonempty and closed under intersection and supersets — then that no
/// member is precluded, and finally maximality: every enlargement by an
/// outside event drags in a precluded one.
pub fn is_maximal_preclusive_filter(events: &[Event], nulls: &NullStructure) -> Result<bool> {
    let space = nulls.space();
    let n = space.size();
    if n > EXHAUSTIVE_CAP {
        return Err(Error::ExhaustiveCap {
            size: n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    if events.is_empty() {
        return Ok(false);
    }
    for e in events {
        if e.space() != space {
            return Err(Error::MixedSpaces);
        }
    }
    let full = space.full_event().mask();
    let mut member = vec![false; 1 << n];
    for e in events {
        member[e.mask() as usize] = true;
    }
    // Closure under intersection and under supersets.
    for a in events {
        for b in events {
            if !member[(a.mask() & b.mask()) as usize] {
                return Ok(false);
            }
        }
        let free = !a.mask() & full;
        let mut sub = 0u32;
        loop {
            if !member[(a.mask() | sub) as usize] {
                return Ok(false);
            }
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
    }
    // Preclusive: no member is a null event.
    if events.iter().any(|e| nulls.is_precluded_mask(e.mask())) {
        return Ok(false);
    }
    // A finite filter is the principal filter of the meet of its members.
    let meet = events.iter().fold(full, |acc, e| acc & e.mask());
    // Maximal: adjoining any outside event e closes up to the principal
    // filter of meet & e, which must contain a precluded event.
    for candidate in 0..(1u32 << n) {
        if member[candidate as usize] {
            continue;
        }
        if !nulls.is_covered_mask(meet & candidate) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::MeasureSpec;
    use crate::scalar::{ComplexScalar, Scalar};

    fn three_slit_nulls() -> (HistorySpace, NullStructure) {
        let space = HistorySpace::new(["A", "B", "C"]).unwrap();
        let spec = MeasureSpec::amplitude(
            &space,
            vec![
                ComplexScalar::real(Scalar::from_int(1)),
                ComplexScalar::real(Scalar::from_int(-1)),
                ComplexScalar::real(Scalar::from_int(1)),
            ],
        )
        .unwrap();
        let nulls = spec.enumerate_precluded().unwrap();
        (space, nulls)
    }

    fn coevent(space: &HistorySpace, labels: &[&str]) -> Coevent {
        Coevent::new(space.event_from_labels(labels.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn evaluation_is_containment() {
        let (space, _) = three_slit_nulls();
        let phi = coevent(&space, &["A", "C"]);
        let ac = space.event_from_labels(["A", "C"]).unwrap();
        let a = space.event_from_labels(["A"]).unwrap();
        assert!(phi.evaluate(&ac).unwrap());
        assert!(!phi.evaluate(&a).unwrap());
        assert!(phi.evaluate(&space.full_event()).unwrap());
    }

    #[test]
    fn empty_support_rejected() {
        let (space, _) = three_slit_nulls();
        assert!(matches!(
            Coevent::new(space.empty_event()),
            Err(Error::EmptySupport)
        ));
    }

    #[test]
    fn preclusivity_on_three_slit() {
        let (space, nulls) = three_slit_nulls();
        assert!(coevent(&space, &["A", "C"]).is_preclusive(&nulls).unwrap());
        assert!(!coevent(&space, &["B"]).is_preclusive(&nulls).unwrap());
        assert!(coevent(&space, &["A", "B", "C"])
            .is_preclusive(&nulls)
            .unwrap());
    }

    #[test]
    fn primitivity_on_three_slit() {
        let (space, nulls) = three_slit_nulls();
        assert!(coevent(&space, &["A", "C"]).is_primitive(&nulls).unwrap());
        assert!(!coevent(&space, &["A", "B", "C"])
            .is_primitive(&nulls)
            .unwrap());
        assert!(matches!(
            coevent(&space, &["B"]).is_primitive(&nulls),
            Err(Error::NotPreclusive)
        ));
    }

    #[test]
    fn primitive_singletons_without_nulls() {
        let space = HistorySpace::new(["x", "y", "z"]).unwrap();
        let spec = MeasureSpec::classical(
            &space,
            vec![
                Scalar::from_int(1),
                Scalar::from_int(2),
                Scalar::from_int(3),
            ],
        )
        .unwrap();
        let nulls = spec.enumerate_precluded().unwrap();
        for i in 0..3 {
            let phi = Coevent::new(space.singleton(i).unwrap()).unwrap();
            assert!(phi.is_primitive(&nulls).unwrap());
        }
        let prims = enumerate_primitives(&nulls).unwrap();
        assert_eq!(prims.len(), 3);
        assert!(prims.coevents().iter().all(|c| c.support().len() == 1));
    }

    #[test]
    fn unique_three_slit_primitive() {
        let (space, nulls) = three_slit_nulls();
        let prims = enumerate_primitives(&nulls).unwrap();
        assert_eq!(prims.len(), 1);
        assert_eq!(
            prims.coevents()[0].support(),
            &space.event_from_labels(["A", "C"]).unwrap()
        );
        let oracle = brute_force_primitives(&nulls).unwrap();
        assert_eq!(oracle.support_masks(), prims.support_masks());
    }

    #[test]
    fn classical_zero_weight_primitives() {
        let space = HistorySpace::new(["h0", "h1", "h2"]).unwrap();
        let spec = MeasureSpec::classical(
            &space,
            vec![
                Scalar::from_int(0),
                Scalar::from_int(2),
                Scalar::from_int(3),
            ],
        )
        .unwrap();
        let nulls = spec.enumerate_precluded().unwrap();
        let prims = enumerate_primitives(&nulls).unwrap();
        assert_eq!(
            prims.support_masks(),
            vec![0b010, 0b100],
            "positive-weight singletons"
        );
    }

    #[test]
    fn total_preclusion_is_an_error() {
        let space = HistorySpace::new(["u", "v"]).unwrap();
        let spec =
            MeasureSpec::classical(&space, vec![Scalar::from_int(0), Scalar::from_int(0)]).unwrap();
        let nulls = spec.enumerate_precluded().unwrap();
        assert!(matches!(
            enumerate_primitives(&nulls),
            Err(Error::TotalPreclusion)
        ));
        assert!(matches!(
            brute_force_primitives(&nulls),
            Err(Error::TotalPreclusion)
        ));
    }

    #[test]
    fn homomorphism_checks() {
        let (space, _) = three_slit_nulls();
        let straddler = coevent(&space, &["A", "C"]);
        let check = straddler.is_homomorphic();
        assert!(!check.homomorphic);
        assert_eq!(
            check.witness.unwrap(),
            space.event_from_labels(["A"]).unwrap(),
            "first event in canonical order whose complement gets the same answer"
        );

        let singleton = coevent(&space, &["B"]);
        assert!(singleton.is_homomorphic().homomorphic);

        let omega = coevent(&space, &["A", "B", "C"]);
        assert!(!omega.is_homomorphic().homomorphic);
    }

    #[test]
    fn rule_report_three_slit() {
        let (space, _) = three_slit_nulls();
        let phi = coevent(&space, &["A", "C"]);
        let report = phi.check_rules();
        assert!(report.modus_ponens.pass);
        assert!(report.empty_event_denied.pass);
        assert!(report.multiplicativity.pass);
        assert!(report.monotonicity.pass);
        assert!(!report.negation.pass);
        match report.negation.witness.unwrap() {
            RuleWitness::One(e) => {
                assert_eq!(e, space.event_from_labels(["A"]).unwrap());
            }
            other => panic!("unexpected witness {other}"),
        }

        let singleton = coevent(&space, &["C"]);
        let report = singleton.check_rules();
        assert!(report.entries().iter().all(|(_, o)| o.pass));
    }

    #[test]
    fn affirmed_filter_and_maximality() {
        let (space, nulls) = three_slit_nulls();
        let phi = coevent(&space, &["A", "C"]);
        let filter = phi.affirmed_filter().unwrap();
        assert_eq!(
            filter,
            vec![
                space.event_from_labels(["A", "C"]).unwrap(),
                space.full_event()
            ]
        );
        assert!(is_maximal_preclusive_filter(&filter, &nulls).unwrap());

        let omega_filter = coevent(&space, &["A", "B", "C"]).affirmed_filter().unwrap();
        assert_eq!(omega_filter, vec![space.full_event()]);
        // Preclusive but enlargeable by A+C: not maximal.
        assert!(!is_maximal_preclusive_filter(&omega_filter, &nulls).unwrap());

        let b_filter = coevent(&space, &["B"]).affirmed_filter().unwrap();
        // Affirms the precluded A+B: not a preclusive filter at all.
        assert!(!is_maximal_preclusive_filter(&b_filter, &nulls).unwrap());
    }

    #[test]
    fn filter_clauses_checked_directly() {
        let (space, nulls) = three_slit_nulls();
        let ac = space.event_from_labels(["A", "C"]).unwrap();
        // Missing the superset Omega: not closed upward.
        assert!(!is_maximal_preclusive_filter(&[ac], &nulls).unwrap());
        assert!(!is_maximal_preclusive_filter(&[], &nulls).unwrap());
    }

    #[test]
    fn primitivity_matches_maximal_filter() {
        let (space, nulls) = three_slit_nulls();
        for mask in 1..space.event_count() as u32 {
            let phi = Coevent::new(space.event_from_mask(mask).unwrap()).unwrap();
            if !phi.is_preclusive(&nulls).unwrap() {
                continue;
            }
            let filter = phi.affirmed_filter().unwrap();
            assert_eq!(
                phi.is_primitive(&nulls).unwrap(),
                is_maximal_preclusive_filter(&filter, &nulls).unwrap(),
                "support {:#b}",
                mask
            );
        }
    }

    #[test]
    fn covered_space_has_no_classical_reality() {
        let (space, nulls) = three_slit_nulls();
        for i in 0..3 {
            let singleton = Coevent::new(space.singleton(i).unwrap()).unwrap();
            assert!(!singleton.is_preclusive(&nulls).unwrap());
        }
        assert!(!enumerate_primitives(&nulls).unwrap().is_empty());
    }

    #[test]
    fn freeness_is_upward_closed() {
        let (space, nulls) = three_slit_nulls();
        for mask in 1..space.event_count() as u32 {
            if nulls.is_covered_mask(mask) {
                continue;
            }
            for sup in mask..space.event_count() as u32 {
                if mask & !sup == 0 {
                    assert!(!nulls.is_covered_mask(sup));
                }
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let space = HistorySpace::new((0..13).map(|i| format!("h{i}"))).unwrap();
        let spec =
            MeasureSpec::classical(&space, (0..13).map(|_| Scalar::from_int(1)).collect()).unwrap();
        let nulls = spec.enumerate_precluded().unwrap();
        assert!(matches!(
            brute_force_primitives(&nulls),
            Err(Error::OracleCap { size: 13, cap: 12 })
        ));
        let phi = Coevent::new(space.singleton(0).unwrap()).unwrap();
        assert!(matches!(
            phi.affirmed_filter(),
            Err(Error::ExhaustiveCap { size: 13, cap: 10 })
        ));
        assert!(matches!(
            is_maximal_preclusive_filter(&[space.full_event()], &nulls),
            Err(Error::ExhaustiveCap { .. })
        ));
    }

    #[test]
    fn enumeration_matches_oracle_on_random_measures() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let n = rng.gen_range(2..=8usize);
            let labels: Vec<String> = (0..n).map(|i| format!("h{i}")).collect();
            let space = HistorySpace::new(labels).unwrap();
            let amps: Vec<ComplexScalar> = (0..n)
                .map(|_| {
                    ComplexScalar::new(
                        Scalar::from_int(rng.gen_range(-2..=2)),
                        Scalar::from_int(rng.gen_range(-2..=2)),
                    )
                })
                .collect();
            let spec = match MeasureSpec::amplitude(&space, amps) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let nulls = spec.enumerate_precluded().unwrap();
            if nulls.omega_precluded() {
                continue;
            }
            let fast = enumerate_primitives(&nulls).unwrap();
            let slow = brute_force_primitives(&nulls).unwrap();
            assert_eq!(fast.support_masks(), slow.support_masks());
            // Antichain check on the enumerated supports.
            let masks = fast.support_masks();
            for (i, &a) in masks.iter().enumerate() {
                for (j, &b) in masks.iter().enumerate() {
                    if i != j {
                        assert!(a & !b != 0, "supports must form an antichain");
                    }
                }
            }
        }
    }
}
