//! A checker for rule-cited inference about coevent judgments.
//!
//! Proofs are explicit step lists in a flat natural-deduction style:
//! suppositions open subproofs, contradiction discharges close them, and
//! every other step cites prior judgments under a named rule. The checker
//! validates each application against the rule's schema (set-algebra side
//! conditions are verified with the event operations) and against a
//! profile of admissible rules. It checks; it does not search for proofs.
//!
//! Judgments are total, so the two-valuedness rule amounts to
//! re-assertion and a discharge concludes the supposed judgment with its
//! value flipped. Discharges stay admissible in every profile: reasoning
//! *about* the answering map is classical even when the map itself
//! breaks the negation rule.

use crate::algebra::{Event, HistorySpace};
use crate::coevent::{enumerate_primitives, Coevent};
use crate::error::{Error, Result};
use crate::measure::NullStructure;
use std::collections::BTreeSet;
use std::fmt;

/// An assertion that the answering map gives `value` on `event`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub event: Event,
    pub value: bool,
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "phi({}) = {}",
            self.event,
            if self.value { 1 } else { 0 }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum InferenceRule {
    /// From `phi(A) = phi(B) = 1` conclude `phi(A and B) = 1`.
    Conjunction,
    /// Two-valuedness: `phi(A) != 1` means `phi(A) = 0`. Judgments here
    /// are total so an application re-asserts a cited judgment.
    Totality,
    /// From `phi(A) = 0` conclude `phi(not A) = 1`.
    Negation,
    /// From `A <= B` and `phi(A) = 1` conclude `phi(B) = 1`.
    Monotonicity,
    /// Opens a subproof from an assumed judgment.
    Supposition,
    /// Closes the innermost subproof on a contradiction, concluding the
    /// supposed judgment with flipped value.
    ContradictionDischarge,
}

impl InferenceRule {
    pub const ALL: [InferenceRule; 6] = [
        InferenceRule::Conjunction,
        InferenceRule::Totality,
        InferenceRule::Negation,
        InferenceRule::Monotonicity,
        InferenceRule::Supposition,
        InferenceRule::ContradictionDischarge,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InferenceRule::Conjunction => "conjunction",
            InferenceRule::Totality => "totality",
            InferenceRule::Negation => "negation",
            InferenceRule::Monotonicity => "monotonicity",
            InferenceRule::Supposition => "supposition",
            InferenceRule::ContradictionDischarge => "contradiction_discharge",
        }
    }

    pub fn parse(name: &str) -> Option<InferenceRule> {
        InferenceRule::ALL.into_iter().find(|r| r.name() == name)
    }
}

impl fmt::Display for InferenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Optional documented side condition on a step's concluded event,
/// verified with the event algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventIdentity {
    ComplementOf(Event),
    IntersectionOf(Event, Event),
}

impl EventIdentity {
    fn check(&self, concluded: &Event) -> Result<bool> {
        Ok(match self {
            EventIdentity::ComplementOf(e) => &e.complement() == concluded,
            EventIdentity::IntersectionOf(a, b) => &a.intersect(b)? == concluded,
        })
    }
}

/// One proof step: the concluded judgment, the rule, and its citations.
/// Citations are global judgment indices: premises first, then steps.
#[derive(Clone, Debug)]
pub struct ProofStep {
    pub label: Option<String>,
    pub rule: InferenceRule,
    pub conclude: Judgment,
    /// Cited judgments for `Conjunction`, `Totality`, `Negation`,
    /// `Monotonicity`.
    pub from: Vec<usize>,
    /// The supposition being closed, for `ContradictionDischarge`.
    pub supposition: Option<usize>,
    /// The two contradicting judgments, for `ContradictionDischarge`.
    pub contradiction: Option<(usize, usize)>,
    pub event_identity: Option<EventIdentity>,
}

impl ProofStep {
    pub fn display_name(&self, position: usize) -> String {
        match &self.label {
            Some(label) => format!("step {label}"),
            None => format!("step #{position}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Goal {
    Judgment(Judgment),
    Contradiction,
}

/// A rule-cited derivation over one history space.
#[derive(Clone, Debug)]
pub struct Proof {
    pub name: Option<String>,
    pub space: HistorySpace,
    pub premises: Vec<Judgment>,
    pub steps: Vec<ProofStep>,
    pub goal: Goal,
}

/// A named set of admissible inference rules.
#[derive(Clone, Debug)]
pub struct SchemeProfile {
    pub name: String,
    pub admissible: BTreeSet<InferenceRule>,
}

impl SchemeProfile {
    /// All six rules.
    pub fn classical() -> Self {
        SchemeProfile {
            name: "classical".into(),
            admissible: InferenceRule::ALL.into_iter().collect(),
        }
    }

    /// Everything except `Negation`, the one rule the multiplicative
    /// scheme gives up.
    pub fn multiplicative() -> Self {
        SchemeProfile {
            name: "multiplicative".into(),
            admissible: InferenceRule::ALL
                .into_iter()
                .filter(|r| *r != InferenceRule::Negation)
                .collect(),
        }
    }

    pub fn admits(&self, rule: InferenceRule) -> bool {
        self.admissible.contains(&rule)
    }
}

/// Verdict on a single step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepVerdict {
    Valid,
    RuleInadmissible(InferenceRule),
    Malformed(String),
}

impl fmt::Display for StepVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepVerdict::Valid => write!(f, "valid"),
            StepVerdict::RuleInadmissible(rule) => {
                write!(f, "rule `{rule}` is inadmissible in this profile")
            }
            StepVerdict::Malformed(why) => write!(f, "malformed application: {why}"),
        }
    }
}

/// Verdict on a whole proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofVerdict {
    Proven,
    BlockedAt {
        step: usize,
        label: Option<String>,
        verdict: StepVerdict,
    },
    /// Every step validated but the goal was never derived at the top
    /// level.
    GoalNotReached,
}

impl fmt::Display for ProofVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofVerdict::Proven => write!(f, "proven"),
            ProofVerdict::BlockedAt {
                step,
                label,
                verdict,
            } => {
                let name = match label {
                    Some(l) => format!("step {l}"),
                    None => format!("step #{step}"),
                };
                write!(f, "blocked at {name}: {verdict}")
            }
            ProofVerdict::GoalNotReached => write!(f, "all steps valid, goal not reached"),
        }
    }
}

/// Full check result: per-step verdicts plus the overall verdict.
#[derive(Clone, Debug)]
pub struct ProofCheck {
    pub profile: String,
    pub step_verdicts: Vec<StepVerdict>,
    pub verdict: ProofVerdict,
}

struct Record {
    judgment: Judgment,
    depth: usize,
    closed: bool,
    is_supposition: bool,
}

struct Context {
    records: Vec<Record>,
    open_suppositions: Vec<usize>,
}

impl Context {
    fn new(premises: &[Judgment]) -> Self {
        Context {
            records: premises
                .iter()
                .map(|j| Record {
                    judgment: j.clone(),
                    depth: 0,
                    closed: false,
                    is_supposition: false,
                })
                .collect(),
            open_suppositions: Vec::new(),
        }
    }

    fn depth(&self) -> usize {
        self.open_suppositions.len()
    }

    fn cite(&self, step_index: usize, global: usize) -> Result<&Record> {
        if global >= self.records.len() {
            return Err(Error::DanglingCitation {
                step: step_index,
                cited: global,
            });
        }
        Ok(&self.records[global])
    }
}

fn check_rule_application(
    context: &Context,
    step_index: usize,
    step: &ProofStep,
) -> Result<StepVerdict> {
    let cited = |global: usize| -> Result<std::result::Result<&Judgment, StepVerdict>> {
        let record = context.cite(step_index, global)?;
        if record.closed {
            return Ok(Err(StepVerdict::Malformed(format!(
                "citation {global} lies inside a discharged subproof"
            ))));
        }
        Ok(Ok(&record.judgment))
    };
    let malformed = |why: &str| Ok(StepVerdict::Malformed(why.to_string()));

    if let Some(identity) = &step.event_identity {
        if !identity.check(&step.conclude.event)? {
            return malformed("stated event identity does not hold");
        }
    }

    match step.rule {
        InferenceRule::Supposition => {
            if !step.from.is_empty() {
                return malformed("a supposition cites nothing");
            }
            Ok(StepVerdict::Valid)
        }
        InferenceRule::Conjunction => {
            let [a, b] = step.from[..] else {
                return malformed("conjunction cites exactly two judgments");
            };
            let ja = match cited(a)? {
                Ok(j) => j,
                Err(v) => return Ok(v),
            };
            let jb = match cited(b)? {
                Ok(j) => j,
                Err(v) => return Ok(v),
            };
            if !(ja.value && jb.value) {
                return malformed("conjunction needs two affirmed judgments");
            }
            if !step.conclude.value {
                return malformed("conjunction concludes an affirmation");
            }
            if step.conclude.event != ja.event.intersect(&jb.event)? {
                return malformed("concluded event is not the intersection of the cited events");
            }
            Ok(StepVerdict::Valid)
        }
        InferenceRule::Totality => {
            let [a] = step.from[..] else {
                return malformed("totality cites exactly one judgment");
            };
            let ja = match cited(a)? {
                Ok(j) => j,
                Err(v) => return Ok(v),
            };
            if &step.conclude != ja {
                return malformed(
                    "totality re-asserts a cited judgment (judgments here are already total)",
                );
            }
            Ok(StepVerdict::Valid)
        }
        InferenceRule::Negation => {
            let [a] = step.from[..] else {
                return malformed("negation cites exactly one judgment");
            };
            let ja = match cited(a)? {
                Ok(j) => j,
                Err(v) => return Ok(v),
            };
            if ja.value {
                return malformed("negation starts from a denied judgment");
            }
            if !step.conclude.value {
                return malformed("negation concludes an affirmation");
            }
            if step.conclude.event != ja.event.complement() {
                return malformed("concluded event is not the complement of the cited event");
            }
            Ok(StepVerdict::Valid)
        }
        InferenceRule::Monotonicity => {
            let [a] = step.from[..] else {
                return malformed("monotonicity cites exactly one judgment");
            };
            let ja = match cited(a)? {
                Ok(j) => j,
                Err(v) => return Ok(v),
            };
            if !ja.value || !step.conclude.value {
                return malformed("monotonicity carries an affirmation upward");
            }
            if !ja.event.is_subset(&step.conclude.event)? {
                return malformed("cited event is not a subset of the concluded event");
            }
            Ok(StepVerdict::Valid)
        }
        InferenceRule::ContradictionDischarge => {
            let Some(sup) = step.supposition else {
                return malformed("discharge names no supposition");
            };
            let Some((x, y)) = step.contradiction else {
                return malformed("discharge names no contradicting pair");
            };
            let sup_record = context.cite(step_index, sup)?;
            if !sup_record.is_supposition || sup_record.closed {
                return malformed("discharge must name an open supposition");
            }
            if context.open_suppositions.last() != Some(&sup) {
                return malformed("only the innermost open supposition can be discharged");
            }
            let jx = match cited(x)? {
                Ok(j) => j,
                Err(v) => return Ok(v),
            };
            let jy = match cited(y)? {
                Ok(j) => j,
                Err(v) => return Ok(v),
            };
            if jx.event != jy.event || jx.value == jy.value {
                return malformed("cited judgments do not contradict each other");
            }
            let supposed = &context.records[sup].judgment;
            if step.conclude.event != supposed.event || step.conclude.value == supposed.value {
                return malformed("discharge concludes the supposed judgment with flipped value");
            }
            Ok(StepVerdict::Valid)
        }
    }
}

/// Applies the step's structural effect to the context, independent of
/// whether its rule was admissible.
fn apply_step(context: &mut Context, step: &ProofStep) {
    match step.rule {
        InferenceRule::Supposition => {
            let index = context.records.len();
            context.records.push(Record {
                judgment: step.conclude.clone(),
                depth: context.depth() + 1,
                closed: false,
                is_supposition: true,
            });
            context.open_suppositions.push(index);
        }
        InferenceRule::ContradictionDischarge => {
            if let Some(sup) = step.supposition {
                if context.open_suppositions.last() == Some(&sup) {
                    context.open_suppositions.pop();
                    for record in context.records.iter_mut().skip(sup) {
                        record.closed = true;
                    }
                }
            }
            context.records.push(Record {
                judgment: step.conclude.clone(),
                depth: context.depth(),
                closed: false,
                is_supposition: false,
            });
        }
        _ => {
            context.records.push(Record {
                judgment: step.conclude.clone(),
                depth: context.depth(),
                closed: false,
                is_supposition: false,
            });
        }
    }
}

/// Checks a single step with the context produced by the steps before
/// it. The context is built structurally, so a step can be judged even
/// when an earlier one is inadmissible under the profile.
pub fn check_step(proof: &Proof, index: usize, profile: &SchemeProfile) -> Result<StepVerdict> {
    if index >= proof.steps.len() {
        return Err(Error::Proof(format!("no step at position {index}")));
    }
    let mut context = Context::new(&proof.premises);
    for step in &proof.steps[..index] {
        apply_step(&mut context, step);
    }
    verdict_for(&context, index, &proof.steps[index], profile)
}

fn verdict_for(
    context: &Context,
    index: usize,
    step: &ProofStep,
    profile: &SchemeProfile,
) -> Result<StepVerdict> {
    if !profile.admits(step.rule) {
        return Ok(StepVerdict::RuleInadmissible(step.rule));
    }
    check_rule_application(context, index, step)
}

/// Walks the whole proof: every step is checked in order, and the goal
/// must be established at the top level (outside any open supposition).
pub fn check_proof(proof: &Proof, profile: &SchemeProfile) -> Result<ProofCheck> {
    for judgment in proof
        .premises
        .iter()
        .chain(proof.steps.iter().map(|s| &s.conclude))
    {
        if judgment.event.space() != &proof.space {
            return Err(Error::MixedSpaces);
        }
    }
    let mut context = Context::new(&proof.premises);
    let mut step_verdicts = Vec::with_capacity(proof.steps.len());
    let mut blocked: Option<(usize, StepVerdict)> = None;
    for (index, step) in proof.steps.iter().enumerate() {
        let verdict = verdict_for(&context, index, step, profile)?;
        if verdict != StepVerdict::Valid && blocked.is_none() {
            blocked = Some((index, verdict.clone()));
        }
        step_verdicts.push(verdict);
        apply_step(&mut context, step);
    }
    let verdict = match blocked {
        Some((step, verdict)) => ProofVerdict::BlockedAt {
            step,
            label: proof.steps[step].label.clone(),
            verdict,
        },
        None => {
            let top_level: Vec<&Judgment> = context
                .records
                .iter()
                .filter(|r| !r.closed && r.depth == 0)
                .map(|r| &r.judgment)
                .collect();
            let reached = match &proof.goal {
                Goal::Judgment(goal) => top_level.contains(&goal),
                Goal::Contradiction => top_level.iter().enumerate().any(|(i, a)| {
                    top_level
                        .iter()
                        .skip(i + 1)
                        .any(|b| a.event == b.event && a.value != b.value)
                }),
            };
            if reached {
                ProofVerdict::Proven
            } else {
                ProofVerdict::GoalNotReached
            }
        }
    };
    Ok(ProofCheck {
        profile: profile.name.clone(),
        step_verdicts,
        verdict,
    })
}

/// Where a judgment sits in a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JudgmentSource {
    Premise(usize),
    Step { index: usize, label: Option<String> },
    Goal,
}

impl fmt::Display for JudgmentSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JudgmentSource::Premise(i) => write!(f, "premise {i}"),
            JudgmentSource::Step { index, label } => match label {
                Some(l) => write!(f, "step {l}"),
                None => write!(f, "step #{index}"),
            },
            JudgmentSource::Goal => write!(f, "goal"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CrosscheckEntry {
    pub source: JudgmentSource,
    pub judgment: Judgment,
    pub satisfied: usize,
    pub total: usize,
}

#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub primitive_count: usize,
    pub entries: Vec<CrosscheckEntry>,
}

/// Enumerates the primitive coevents for `nulls` and reports, for every
/// judgment in the proof, how many of them satisfy it. This shows
/// semantically which steps of a derivation survive once actual
/// coevents replace the classical picture.
///
/// Premises must be consistent with the null structure: denied premises
/// must be precluded events and affirmed premises must not be.
pub fn semantic_crosscheck(proof: &Proof, nulls: &NullStructure) -> Result<CrosscheckReport> {
    if nulls.space() != &proof.space {
        return Err(Error::MixedSpaces);
    }
    for premise in &proof.premises {
        let precluded = nulls.contains(&premise.event)?;
        if !premise.value && !precluded {
            return Err(Error::PremiseInconsistent(format!(
                "{premise}, but the event is not precluded"
            )));
        }
        if premise.value && precluded {
            return Err(Error::PremiseInconsistent(format!(
                "{premise}, but the event is precluded"
            )));
        }
    }
    let primitives = enumerate_primitives(nulls)?;
    let total = primitives.len();
    let satisfied_by = |judgment: &Judgment| -> Result<usize> {
        let mut count = 0;
        for phi in primitives.coevents() {
            if phi.evaluate(&judgment.event)? == judgment.value {
                count += 1;
            }
        }
        Ok(count)
    };
    let mut entries = Vec::new();
    for (i, premise) in proof.premises.iter().enumerate() {
        entries.push(CrosscheckEntry {
            source: JudgmentSource::Premise(i),
            judgment: premise.clone(),
            satisfied: satisfied_by(premise)?,
            total,
        });
    }
    for (index, step) in proof.steps.iter().enumerate() {
        entries.push(CrosscheckEntry {
            source: JudgmentSource::Step {
                index,
                label: step.label.clone(),
            },
            judgment: step.conclude.clone(),
            satisfied: satisfied_by(&step.conclude)?,
            total,
        });
    }
    if let Goal::Judgment(goal) = &proof.goal {
        entries.push(CrosscheckEntry {
            source: JudgmentSource::Goal,
            judgment: goal.clone(),
            satisfied: satisfied_by(goal)?,
            total,
        });
    }
    Ok(CrosscheckReport {
        primitive_count: total,
        entries,
    })
}

/// Soundness probe used in tests and reports: whether an inference rule,
/// read as a closure condition on a single coevent, holds for `phi` on
/// every event (pair) of its space.
pub fn rule_sound_for(rule: InferenceRule, phi: &Coevent) -> Result<bool> {
    let report = phi.check_rules();
    Ok(match rule {
        InferenceRule::Conjunction => report.multiplicativity.pass,
        InferenceRule::Totality => true,
        InferenceRule::Negation => report.negation.pass,
        InferenceRule::Monotonicity => report.monotonicity.pass,
        InferenceRule::Supposition | InferenceRule::ContradictionDischarge => true,
    })
}
