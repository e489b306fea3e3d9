//! The quantal measure: evaluation, validation, preclusion, and the
//! enumeration of all precluded events with their maximal antichain.
//!
//! Three measure kinds are supported. Classical weights sum per history
//! and give an ordinary additive measure. An amplitude vector gives
//! `mu(E) = |sum of member amplitudes|^2`. A Hermitian matrix `D` gives
//! `mu(E) = sum over pairs (g, g') in E of D[g][g']` (real part; the
//! imaginary part cancels under Hermiticity).
//!
//! [`MeasureSpec::mu`] always evaluates by direct summation over the
//! event's members. The full-sweep enumeration uses incremental updates
//! instead and is cross-checked against the direct route in tests, so the
//! two stay independent.

use crate::algebra::{Event, HistorySpace};
use crate::error::{Error, Result};
use crate::scalar::{ComplexScalar, NumericMode, Scalar};
use std::fmt;
use std::sync::Arc;

/// Default relative preclusion threshold for float-mode measures.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Entrywise relative tolerance for float-mode Hermiticity checks.
const HERMITICITY_TOL: f64 = 1e-12;

/// What counts as "measure zero".
///
/// `Exact` means a literal zero. `Epsilon(e)` precludes events with
/// `mu(E) <= e * mu(Omega)`, the relative reading of "small enough to be
/// treated as if it vanished".
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tolerance {
    Exact,
    Epsilon(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeasureKind {
    /// Nonnegative weight per history; `mu` is an ordinary measure.
    Classical(Vec<Scalar>),
    /// Complex amplitude per history; `mu(E) = |sum over E|^2`.
    Amplitude(Vec<ComplexScalar>),
    /// Hermitian history-pair matrix; `mu(E)` is the double sum over `E`.
    Decoherence(Vec<Vec<ComplexScalar>>),
}

impl MeasureKind {
    fn name(&self) -> &'static str {
        match self {
            MeasureKind::Classical(_) => "classical",
            MeasureKind::Amplitude(_) => "amplitude",
            MeasureKind::Decoherence(_) => "decoherence",
        }
    }

    fn scalars(&self) -> Vec<&Scalar> {
        match self {
            MeasureKind::Classical(w) => w.iter().collect(),
            MeasureKind::Amplitude(a) => a.iter().flat_map(|z| [&z.re, &z.im]).collect(),
            MeasureKind::Decoherence(m) => m
                .iter()
                .flat_map(|row| row.iter().flat_map(|z| [&z.re, &z.im]))
                .collect(),
        }
    }
}

/// A quantal measure on a history space.
#[derive(Clone, Debug)]
pub struct MeasureSpec {
    space: HistorySpace,
    kind: MeasureKind,
    tolerance: Tolerance,
    mode: NumericMode,
}

impl MeasureSpec {
    pub fn classical(space: &HistorySpace, weights: Vec<Scalar>) -> Result<Self> {
        Self::build(space, MeasureKind::Classical(weights))
    }

    pub fn amplitude(space: &HistorySpace, amplitudes: Vec<ComplexScalar>) -> Result<Self> {
        Self::build(space, MeasureKind::Amplitude(amplitudes))
    }

    /// Builds a decoherence-matrix measure. Hermiticity is not enforced
    /// here so that [`MeasureSpec::validate`] can report on broken
    /// inputs; run it before trusting the spec.
    pub fn decoherence(space: &HistorySpace, matrix: Vec<Vec<ComplexScalar>>) -> Result<Self> {
        if matrix.iter().any(|row| row.len() != space.size()) {
            let got = matrix.iter().map(Vec::len).max().unwrap_or(0);
            return Err(Error::ArityMismatch {
                expected: space.size(),
                got,
            });
        }
        Self::build(space, MeasureKind::Decoherence(matrix))
    }

    fn build(space: &HistorySpace, kind: MeasureKind) -> Result<Self> {
        let n = match &kind {
            MeasureKind::Classical(w) => w.len(),
            MeasureKind::Amplitude(a) => a.len(),
            MeasureKind::Decoherence(m) => m.len(),
        };
        if n != space.size() {
            return Err(Error::ArityMismatch {
                expected: space.size(),
                got: n,
            });
        }
        let mut modes = kind.scalars().into_iter().map(Scalar::mode);
        let mode = modes.next().expect("nonempty space");
        if modes.any(|m| m != mode) {
            return Err(Error::MixedNumericModes);
        }
        let tolerance = match mode {
            NumericMode::Exact => Tolerance::Exact,
            NumericMode::Float => Tolerance::Epsilon(DEFAULT_EPSILON),
        };
        Ok(MeasureSpec {
            space: space.clone(),
            kind,
            tolerance,
            mode,
        })
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Result<Self> {
        if let Tolerance::Epsilon(eps) = tolerance {
            if !eps.is_finite() || eps < 0.0 {
                return Err(Error::InvalidEpsilon(eps));
            }
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn space(&self) -> &HistorySpace {
        &self.space
    }

    pub fn kind(&self) -> &MeasureKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    pub fn mode(&self) -> NumericMode {
        self.mode
    }

    fn check_event(&self, e: &Event) -> Result<()> {
        if e.space() == &self.space {
            Ok(())
        } else {
            Err(Error::MixedSpaces)
        }
    }

    /// Negative values smaller than this (in magnitude) are treated as
    /// float roundoff rather than genuine positivity violations.
    fn negativity_floor(&self) -> f64 {
        match self.mode {
            NumericMode::Exact => 0.0,
            NumericMode::Float => {
                let scale: f64 = match &self.kind {
                    MeasureKind::Classical(w) => w.iter().map(|s| s.to_f64().abs()).sum(),
                    MeasureKind::Amplitude(a) => a.iter().map(|z| z.norm_sqr().to_f64()).sum(),
                    MeasureKind::Decoherence(m) => {
                        (0..m.len()).map(|i| m[i][i].re.to_f64().abs()).sum()
                    }
                };
                1e-12 * (1.0 + scale)
            }
        }
    }

    fn guard_nonnegative(&self, value: Scalar, e: &Event) -> Result<Scalar> {
        if value.is_negative() && value.to_f64() < -self.negativity_floor() {
            return Err(Error::NotWeaklyPositive(e.clone()));
        }
        Ok(value)
    }

    /// The measure of an event, by direct summation over its members.
    ///
    /// Errors with `NotWeaklyPositive` if a decoherence matrix produces a
    /// negative value beyond tolerance, which signals an invalid spec.
    pub fn mu(&self, e: &Event) -> Result<Scalar> {
        self.check_event(e)?;
        let members = e.members();
        let value = match &self.kind {
            MeasureKind::Classical(weights) => {
                let mut sum = Scalar::zero(self.mode);
                for &i in &members {
                    sum = &sum + &weights[i];
                }
                sum
            }
            MeasureKind::Amplitude(amps) => {
                let mut sum = ComplexScalar::zero(self.mode);
                for &i in &members {
                    sum = sum.add(&amps[i]);
                }
                sum.norm_sqr()
            }
            MeasureKind::Decoherence(matrix) => {
                let mut sum = ComplexScalar::zero(self.mode);
                for &i in &members {
                    for &j in &members {
                        sum = sum.add(&matrix[i][j]);
                    }
                }
                sum.re
            }
        };
        self.guard_nonnegative(value, e)
    }

    /// Whether `mu(e)` vanishes (exact mode) or falls below the relative
    /// threshold `eps * mu(Omega)` (epsilon mode).
    pub fn is_precluded(&self, e: &Event) -> Result<bool> {
        let value = self.mu(e)?;
        match self.tolerance {
            Tolerance::Exact => Ok(value.is_zero()),
            Tolerance::Epsilon(eps) => {
                let total = self.mu(&self.space.full_event())?;
                Ok(value.to_f64() <= eps * total.to_f64())
            }
        }
    }

    /// Checks the structural health of the spec: Hermiticity for
    /// decoherence matrices, nonnegative classical weights, and an
    /// exhaustive weak-positivity sweep over all `2^N` events.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport {
            kind: self.kind.name(),
            hermitian: None,
            nonnegative_weights: None,
            weak_positivity: PositivityCheck {
                ok: true,
                witness: None,
            },
        };
        match &self.kind {
            MeasureKind::Classical(weights) => {
                let bad = weights.iter().position(|w| w.is_negative());
                report.nonnegative_weights = Some(match bad {
                    None => WeightCheck {
                        ok: true,
                        witness: None,
                    },
                    Some(i) => WeightCheck {
                        ok: false,
                        witness: Some(self.space.label(i).to_string()),
                    },
                });
            }
            MeasureKind::Amplitude(_) => {}
            MeasureKind::Decoherence(matrix) => {
                report.hermitian = Some(self.check_hermiticity(matrix));
            }
        }
        // Weak positivity is what "into the nonnegative reals" demands;
        // it is checked on every event, not inferred from the matrix.
        let mut sweep = IncrementalMu::start(self, 0);
        let total = self.space.event_count();
        for t in 0..total {
            if t > 0 {
                sweep.step(t);
            }
            let value = sweep.value();
            if value.is_negative() && value.to_f64() < -self.negativity_floor() {
                report.weak_positivity = PositivityCheck {
                    ok: false,
                    witness: Some(
                        self.space
                            .event_from_mask(sweep.mask())
                            .expect("sweep mask in range"),
                    ),
                };
                break;
            }
        }
        report
    }

    // Paired (i,j)/(j,i) access; indices are the clearest expression.
    #[allow(clippy::needless_range_loop)]
    fn check_hermiticity(&self, matrix: &[Vec<ComplexScalar>]) -> HermiticityCheck {
        let n = matrix.len();
        for i in 0..n {
            for j in i..n {
                let a = &matrix[i][j];
                let b = matrix[j][i].conj();
                let ok = match self.mode {
                    NumericMode::Exact => *a == b,
                    NumericMode::Float => {
                        let scale = 1f64
                            .max(a.re.to_f64().hypot(a.im.to_f64()))
                            .max(b.re.to_f64().hypot(b.im.to_f64()));
                        let dr = (a.re.to_f64() - b.re.to_f64()).abs();
                        let di = (a.im.to_f64() - b.im.to_f64()).abs();
                        dr <= HERMITICITY_TOL * scale && di <= HERMITICITY_TOL * scale
                    }
                };
                if !ok {
                    return HermiticityCheck {
                        ok: false,
                        witness: Some((i, j)),
                    };
                }
            }
        }
        HermiticityCheck {
            ok: true,
            witness: None,
        }
    }

    /// Enumerates every precluded event and extracts the inclusion-maximal
    /// antichain. Equivalent to [`MeasureSpec::enumerate_precluded_with_workers`]
    /// with a single worker.
    pub fn enumerate_precluded(&self) -> Result<NullStructure> {
        self.enumerate_precluded_with_workers(1)
    }

    /// Full-sweep enumeration of precluded events.
    ///
    /// The `2^N` subsets are visited in Gray-code order so each step
    /// flips one history in or out: amplitude sums update in O(1) and
    /// decoherence sums in O(N) per subset. The index range splits across
    /// `workers` threads, each seeding its own incremental state at its
    /// range start; the merged output is re-sorted so results are
    /// bit-identical regardless of worker count.
    pub fn enumerate_precluded_with_workers(&self, workers: usize) -> Result<NullStructure> {
        let total = self.space.event_count();
        let threshold = match self.tolerance {
            Tolerance::Exact => None,
            Tolerance::Epsilon(eps) => {
                let omega = self.mu(&self.space.full_event())?;
                Some(eps * omega.to_f64())
            }
        };

        let workers = workers.max(1).min(total);
        let chunk = total.div_ceil(workers);
        let ranges: Vec<(usize, usize)> = (0..workers)
            .map(|w| (w * chunk, ((w + 1) * chunk).min(total)))
            .filter(|(lo, hi)| lo < hi)
            .collect();

        let sweep_range = |lo: usize, hi: usize| -> Result<Vec<u32>> {
            let mut found = Vec::new();
            let mut state = IncrementalMu::start(self, lo);
            for t in lo..hi {
                if t > lo {
                    state.step(t);
                }
                let value = state.value();
                if value.is_negative() && value.to_f64() < -self.negativity_floor() {
                    let witness = self
                        .space
                        .event_from_mask(state.mask())
                        .expect("sweep mask in range");
                    return Err(Error::NotWeaklyPositive(witness));
                }
                let null = match threshold {
                    None => value.is_zero(),
                    Some(bound) => value.to_f64() <= bound,
                };
                if null {
                    found.push(state.mask());
                }
            }
            Ok(found)
        };

        let mut masks: Vec<u32> = if ranges.len() == 1 {
            sweep_range(ranges[0].0, ranges[0].1)?
        } else {
            let mut parts: Vec<Result<Vec<u32>>> = Vec::new();
            std::thread::scope(|scope| {
                let handles: Vec<_> = ranges
                    .iter()
                    .map(|&(lo, hi)| scope.spawn(move || sweep_range(lo, hi)))
                    .collect();
                for handle in handles {
                    parts.push(handle.join().expect("sweep worker panicked"));
                }
            });
            let mut merged = Vec::new();
            for part in parts {
                merged.extend(part?);
            }
            merged
        };

        masks.sort_unstable();
        let maximal = maximal_antichain(&masks);
        Ok(NullStructure {
            space: self.space.clone(),
            precluded: Arc::new(masks),
            maximal: Arc::new(maximal),
        })
    }

    /// `mu(a u b) - mu(a) - mu(b)` for disjoint events: the pairwise
    /// interference term. Vanishes identically for classical measures.
    pub fn interference2(&self, a: &Event, b: &Event) -> Result<Scalar> {
        if !a.is_disjoint(b)? {
            return Err(Error::InvalidPartition(
                "interference terms require pairwise-disjoint events".into(),
            ));
        }
        let ab = a.union(b)?;
        Ok(&(&self.mu(&ab)? - &self.mu(a)?) - &self.mu(b)?)
    }

    /// The three-event sum rule
    /// `mu(abc) - mu(ab) - mu(bc) - mu(ac) + mu(a) + mu(b) + mu(c)`
    /// for pairwise-disjoint events. Vanishes identically for every
    /// quadratic (amplitude or decoherence) measure.
    pub fn interference3(&self, a: &Event, b: &Event, c: &Event) -> Result<Scalar> {
        if !(a.is_disjoint(b)? && b.is_disjoint(c)? && a.is_disjoint(c)?) {
            return Err(Error::InvalidPartition(
                "interference terms require pairwise-disjoint events".into(),
            ));
        }
        let ab = a.union(b)?;
        let bc = b.union(c)?;
        let ac = a.union(c)?;
        let abc = ab.union(c)?;
        let mut acc = self.mu(&abc)?;
        acc = &acc - &self.mu(&ab)?;
        acc = &acc - &self.mu(&bc)?;
        acc = &acc - &self.mu(&ac)?;
        acc = &acc + &self.mu(a)?;
        acc = &acc + &self.mu(b)?;
        acc = &acc + &self.mu(c)?;
        Ok(acc)
    }

    /// The rank-one decoherence matrix `D[g][g'] = amp(g) * conj(amp(g'))`
    /// reproducing an amplitude measure. Returns `None` for other kinds.
    pub fn as_rank_one_decoherence(&self) -> Option<MeasureSpec> {
        let MeasureKind::Amplitude(amps) = &self.kind else {
            return None;
        };
        let matrix: Vec<Vec<ComplexScalar>> = amps
            .iter()
            .map(|a| amps.iter().map(|b| a.mul(&b.conj())).collect())
            .collect();
        let spec =
            MeasureSpec::decoherence(&self.space, matrix).expect("square matrix from amplitudes");
        spec.with_tolerance(self.tolerance).ok()
    }
}

/// Keeps `mu` of the current Gray-code subset up to date across
/// single-history flips. Step `t` holds the subset with mask
/// `t ^ (t >> 1)`.
struct IncrementalMu<'a> {
    spec: &'a MeasureSpec,
    mask: u32,
    state: SweepState,
}

enum SweepState {
    Classical {
        sum: Scalar,
    },
    Amplitude {
        sum: ComplexScalar,
    },
    Decoherence {
        value: Scalar,
        // row_sums[h] = sum over members g of D[h][g]
        row_sums: Vec<ComplexScalar>,
    },
}

impl<'a> IncrementalMu<'a> {
    /// Seeds the state at Gray-code position `start` by direct summation.
    fn start(spec: &'a MeasureSpec, start: usize) -> Self {
        let mask = (start ^ (start >> 1)) as u32;
        let members: Vec<usize> = (0..spec.space.size())
            .filter(|i| mask & (1 << i) != 0)
            .collect();
        let mode = spec.mode;
        let state = match &spec.kind {
            MeasureKind::Classical(weights) => {
                let mut sum = Scalar::zero(mode);
                for &i in &members {
                    sum = &sum + &weights[i];
                }
                SweepState::Classical { sum }
            }
            MeasureKind::Amplitude(amps) => {
                let mut sum = ComplexScalar::zero(mode);
                for &i in &members {
                    sum = sum.add(&amps[i]);
                }
                SweepState::Amplitude { sum }
            }
            MeasureKind::Decoherence(matrix) => {
                let n = spec.space.size();
                let mut value = ComplexScalar::zero(mode);
                for &i in &members {
                    for &j in &members {
                        value = value.add(&matrix[i][j]);
                    }
                }
                let row_sums = (0..n)
                    .map(|h| {
                        let mut s = ComplexScalar::zero(mode);
                        for &g in &members {
                            s = s.add(&matrix[h][g]);
                        }
                        s
                    })
                    .collect();
                SweepState::Decoherence {
                    value: value.re,
                    row_sums,
                }
            }
        };
        IncrementalMu { spec, mask, state }
    }

    /// Advances from Gray position `t - 1` to `t`, flipping one history.
    fn step(&mut self, t: usize) {
        let flip = t.trailing_zeros() as usize;
        let bit = 1u32 << flip;
        let adding = self.mask & bit == 0;
        self.mask ^= bit;
        match &mut self.state {
            SweepState::Classical { sum } => {
                let MeasureKind::Classical(weights) = &self.spec.kind else {
                    unreachable!()
                };
                *sum = if adding {
                    &*sum + &weights[flip]
                } else {
                    &*sum - &weights[flip]
                };
            }
            SweepState::Amplitude { sum } => {
                let MeasureKind::Amplitude(amps) = &self.spec.kind else {
                    unreachable!()
                };
                *sum = if adding {
                    sum.add(&amps[flip])
                } else {
                    sum.sub(&amps[flip])
                };
            }
            SweepState::Decoherence { value, row_sums } => {
                let MeasureKind::Decoherence(matrix) = &self.spec.kind else {
                    unreachable!()
                };
                let two = Scalar::from_int(2);
                let two = match self.spec.mode {
                    NumericMode::Exact => two,
                    NumericMode::Float => two.to_float_scalar(),
                };
                let diag = &matrix[flip][flip].re;
                if adding {
                    // mu(E + h) = mu(E) + 2 Re(row_sums[h]) + D[h][h],
                    // with row_sums taken before h joins.
                    *value = &(&*value + &(&two * &row_sums[flip].re)) + diag;
                    for (h, s) in row_sums.iter_mut().enumerate() {
                        *s = s.add(&matrix[h][flip]);
                    }
                } else {
                    // Remove h first from the row sums, then
                    // mu(E - h) = mu(E) - 2 Re(row_sums[h]) - D[h][h].
                    for (h, s) in row_sums.iter_mut().enumerate() {
                        *s = s.sub(&matrix[h][flip]);
                    }
                    *value = &(&*value - &(&two * &row_sums[flip].re)) - diag;
                }
            }
        }
    }

    fn mask(&self) -> u32 {
        self.mask
    }

    fn value(&self) -> Scalar {
        match &self.state {
            SweepState::Classical { sum } => sum.clone(),
            SweepState::Amplitude { sum } => sum.norm_sqr(),
            SweepState::Decoherence { value, .. } => value.clone(),
        }
    }
}

/// Sorted candidate masks in, inclusion-maximal antichain out.
fn maximal_antichain(sorted_masks: &[u32]) -> Vec<u32> {
    let mut by_size: Vec<u32> = sorted_masks.to_vec();
    // Descending population count; ties ascending by value for determinism.
    by_size.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then_with(|| a.cmp(b)));
    let mut kept: Vec<u32> = Vec::new();
    for &candidate in &by_size {
        if !kept.iter().any(|&k| candidate & !k == 0) {
            kept.push(candidate);
        }
    }
    kept.sort_unstable();
    kept
}

/// The set of precluded events together with its maximal antichain.
///
/// Cheap to clone; the mask lists are shared.
#[derive(Clone, Debug)]
pub struct NullStructure {
    space: HistorySpace,
    precluded: Arc<Vec<u32>>,
    maximal: Arc<Vec<u32>>,
}

impl NullStructure {
    pub fn space(&self) -> &HistorySpace {
        &self.space
    }

    pub fn precluded_count(&self) -> usize {
        self.precluded.len()
    }

    pub fn precluded_masks(&self) -> &[u32] {
        &self.precluded
    }

    pub fn maximal_masks(&self) -> &[u32] {
        &self.maximal
    }

    pub fn precluded_events(&self) -> Vec<Event> {
        self.precluded
            .iter()
            .map(|&m| self.space.event_from_mask(m).expect("stored mask in range"))
            .collect()
    }

    pub fn maximal_events(&self) -> Vec<Event> {
        self.maximal
            .iter()
            .map(|&m| self.space.event_from_mask(m).expect("stored mask in range"))
            .collect()
    }

    pub fn is_precluded_mask(&self, mask: u32) -> bool {
        self.precluded.binary_search(&mask).is_ok()
    }

    pub fn contains(&self, e: &Event) -> Result<bool> {
        if e.space() != &self.space {
            return Err(Error::MixedSpaces);
        }
        Ok(self.is_precluded_mask(e.mask()))
    }

    /// Whether `mask` sits inside some precluded event.
    pub fn is_covered_mask(&self, mask: u32) -> bool {
        self.maximal.iter().any(|&z| mask & !z == 0)
    }

    pub fn omega_precluded(&self) -> bool {
        let full = self.space.full_event().mask();
        self.is_precluded_mask(full)
    }
}

/// Outcome of [`MeasureSpec::validate`].
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub kind: &'static str,
    /// Present for decoherence matrices.
    pub hermitian: Option<HermiticityCheck>,
    /// Present for classical weights; witness is the offending label.
    pub nonnegative_weights: Option<WeightCheck>,
    pub weak_positivity: PositivityCheck,
}

#[derive(Clone, Debug)]
pub struct HermiticityCheck {
    pub ok: bool,
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct WeightCheck {
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct PositivityCheck {
    pub ok: bool,
    pub witness: Option<Event>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.hermitian.as_ref().is_none_or(|c| c.ok)
            && self.nonnegative_weights.as_ref().is_none_or(|c| c.ok)
            && self.weak_positivity.ok
    }

    pub fn failure_message(&self) -> Option<String> {
        if let Some(c) = &self.hermitian {
            if !c.ok {
                let (i, j) = c.witness.unwrap_or((0, 0));
                return Some(format!(
                    "matrix is not Hermitian: entry ({i},{j}) differs from the conjugate of ({j},{i})"
                ));
            }
        }
        if let Some(c) = &self.nonnegative_weights {
            if !c.ok {
                return Some(format!(
                    "negative classical weight for history `{}`",
                    c.witness.as_deref().unwrap_or("?")
                ));
            }
        }
        if !self.weak_positivity.ok {
            return Some(match &self.weak_positivity.witness {
                Some(e) => format!("measure is negative on event {e}"),
                None => "measure is negative on some event".into(),
            });
        }
        None
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kind: {}", self.kind)?;
        if let Some(c) = &self.hermitian {
            write!(f, "; hermitian: {}", if c.ok { "ok" } else { "FAIL" })?;
        }
        if let Some(c) = &self.nonnegative_weights {
            write!(
                f,
                "; weights nonnegative: {}",
                if c.ok { "ok" } else { "FAIL" }
            )?;
        }
        write!(
            f,
            "; weakly positive: {}",
            if self.weak_positivity.ok {
                "ok"
            } else {
                "FAIL"
            }
        )?;
        if let Some(msg) = self.failure_message() {
            write!(f, " ({msg})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn three_slit() -> (HistorySpace, MeasureSpec) {
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
        (space, spec)
    }

    #[test]
    fn three_slit_measure_values() {
        let (space, spec) = three_slit();
        let ev = |labels: &[&str]| space.event_from_labels(labels.iter().copied()).unwrap();
        assert_eq!(spec.mu(&ev(&["A", "B"])).unwrap(), Scalar::from_int(0));
        assert_eq!(spec.mu(&ev(&["B", "C"])).unwrap(), Scalar::from_int(0));
        assert_eq!(spec.mu(&space.full_event()).unwrap(), Scalar::from_int(1));
        assert_eq!(spec.mu(&ev(&["A", "C"])).unwrap(), Scalar::from_int(4));
        assert_eq!(spec.mu(&space.empty_event()).unwrap(), Scalar::from_int(0));
    }

    #[test]
    fn preclusion_exact() {
        let (space, spec) = three_slit();
        let ab = space.event_from_labels(["A", "B"]).unwrap();
        assert!(spec.is_precluded(&ab).unwrap());
        assert!(!spec.is_precluded(&space.full_event()).unwrap());
        assert!(spec.is_precluded(&space.empty_event()).unwrap());
    }

    #[test]
    fn three_slit_null_structure() {
        let (space, spec) = three_slit();
        let nulls = spec.enumerate_precluded().unwrap();
        let ab = space.event_from_labels(["A", "B"]).unwrap();
        let bc = space.event_from_labels(["B", "C"]).unwrap();
        assert_eq!(
            nulls.precluded_events(),
            vec![space.empty_event(), ab.clone(), bc.clone()]
        );
        assert_eq!(nulls.maximal_events(), vec![ab, bc]);
    }

    #[test]
    fn classical_null_structures() {
        let space = HistorySpace::new(["h0", "h1"]).unwrap();
        let spec =
            MeasureSpec::classical(&space, vec![Scalar::from_int(0), Scalar::from_int(1)]).unwrap();
        let nulls = spec.enumerate_precluded().unwrap();
        let h0 = space.event_from_labels(["h0"]).unwrap();
        assert_eq!(
            nulls.precluded_events(),
            vec![space.empty_event(), h0.clone()]
        );
        assert_eq!(nulls.maximal_events(), vec![h0]);

        let positive =
            MeasureSpec::classical(&space, vec![Scalar::from_int(2), Scalar::from_int(1)]).unwrap();
        let nulls = positive.enumerate_precluded().unwrap();
        assert_eq!(nulls.precluded_events(), vec![space.empty_event()]);
        assert_eq!(nulls.maximal_events(), vec![space.empty_event()]);
    }

    #[test]
    fn validate_flags_negative_decoherence() {
        let space = HistorySpace::new(["h0", "h1"]).unwrap();
        let matrix_ok = vec![
            vec![
                ComplexScalar::real(Scalar::from_int(1)),
                ComplexScalar::real(Scalar::from_int(2)),
            ],
            vec![
                ComplexScalar::real(Scalar::from_int(2)),
                ComplexScalar::real(Scalar::from_int(1)),
            ],
        ];
        let spec = MeasureSpec::decoherence(&space, matrix_ok).unwrap();
        // mu values 0, 1, 1, 6: all nonnegative, so this one is valid.
        assert!(spec.validate().is_valid());

        let matrix_bad = vec![
            vec![
                ComplexScalar::real(Scalar::from_int(1)),
                ComplexScalar::real(Scalar::from_int(-2)),
            ],
            vec![
                ComplexScalar::real(Scalar::from_int(-2)),
                ComplexScalar::real(Scalar::from_int(1)),
            ],
        ];
        let spec = MeasureSpec::decoherence(&space, matrix_bad).unwrap();
        let report = spec.validate();
        assert!(!report.is_valid());
        assert_eq!(
            report.weak_positivity.witness.as_ref().unwrap(),
            &space.full_event()
        );
        // mu on the full event is 1 + 1 - 2 - 2 = -2.
        assert!(spec.mu(&space.full_event()).is_err());
    }

    #[test]
    fn validate_flags_non_hermitian() {
        let space = HistorySpace::new(["h0", "h1"]).unwrap();
        let i = ComplexScalar::new(Scalar::from_int(0), Scalar::from_int(1));
        let one = ComplexScalar::real(Scalar::from_int(1));
        let matrix = vec![vec![one.clone(), i.clone()], vec![i, one]];
        let spec = MeasureSpec::decoherence(&space, matrix).unwrap();
        let report = spec.validate();
        let hermitian = report.hermitian.unwrap();
        assert!(!hermitian.ok);
        assert_eq!(hermitian.witness, Some((0, 1)));
    }

    #[test]
    fn three_slit_validates() {
        let (_, spec) = three_slit();
        assert!(spec.validate().is_valid());
    }

    #[test]
    fn interference_terms() {
        let (space, spec) = three_slit();
        let a = space.event_from_labels(["A"]).unwrap();
        let b = space.event_from_labels(["B"]).unwrap();
        let c = space.event_from_labels(["C"]).unwrap();
        assert_eq!(spec.interference2(&a, &b).unwrap(), Scalar::from_int(-2));
        assert_eq!(spec.interference3(&a, &b, &c).unwrap(), Scalar::from_int(0));
        let ab = space.event_from_labels(["A", "B"]).unwrap();
        assert!(spec.interference2(&a, &ab).is_err());
    }

    #[test]
    fn classical_is_additive() {
        let space = HistorySpace::new(["x", "y", "z"]).unwrap();
        let spec = MeasureSpec::classical(
            &space,
            vec![
                Scalar::ratio(1, 2).unwrap(),
                Scalar::ratio(1, 3).unwrap(),
                Scalar::ratio(1, 6).unwrap(),
            ],
        )
        .unwrap();
        for a in space.all_events() {
            for b in space.all_events() {
                if a.is_disjoint(&b).unwrap() {
                    assert!(spec.interference2(&a, &b).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn amplitude_matches_rank_one_decoherence() {
        let space = HistorySpace::new(["p", "q", "r", "s"]).unwrap();
        let amps = vec![
            ComplexScalar::new(Scalar::from_int(1), Scalar::from_int(2)),
            ComplexScalar::new(Scalar::from_int(-1), Scalar::from_int(0)),
            ComplexScalar::new(Scalar::from_int(0), Scalar::from_int(-1)),
            ComplexScalar::new(Scalar::ratio(1, 2).unwrap(), Scalar::from_int(1)),
        ];
        let amp_spec = MeasureSpec::amplitude(&space, amps).unwrap();
        let dec_spec = amp_spec.as_rank_one_decoherence().unwrap();
        assert!(dec_spec.validate().is_valid());
        for e in space.all_events() {
            assert_eq!(amp_spec.mu(&e).unwrap(), dec_spec.mu(&e).unwrap());
        }
    }

    #[test]
    fn incremental_sweep_matches_direct_mu() {
        let (space, spec) = three_slit();
        let nulls = spec.enumerate_precluded().unwrap();
        for e in space.all_events() {
            assert_eq!(nulls.contains(&e).unwrap(), spec.mu(&e).unwrap().is_zero());
        }
    }

    #[test]
    fn worker_counts_agree() {
        let (_, spec) = three_slit();
        let base = spec.enumerate_precluded_with_workers(1).unwrap();
        for workers in [2, 3, 8] {
            let other = spec.enumerate_precluded_with_workers(workers).unwrap();
            assert_eq!(other.precluded_masks(), base.precluded_masks());
            assert_eq!(other.maximal_masks(), base.maximal_masks());
        }
    }

    #[test]
    fn epsilon_mode_preclusion() {
        let space = HistorySpace::new(["u", "v", "w"]).unwrap();
        let spec = MeasureSpec::amplitude(
            &space,
            vec![
                ComplexScalar::real(Scalar::Float(1.0)),
                ComplexScalar::real(Scalar::Float(-1.0 + 1e-13)),
                ComplexScalar::real(Scalar::Float(1.0)),
            ],
        )
        .unwrap();
        assert_eq!(spec.mode(), NumericMode::Float);
        assert!(matches!(spec.tolerance(), Tolerance::Epsilon(_)));
        let uv = space.event_from_labels(["u", "v"]).unwrap();
        // |1 - 1 + 1e-13|^2 is far below eps * mu(Omega) ~ 1e-9.
        assert!(spec.is_precluded(&uv).unwrap());
        assert!(!spec.is_precluded(&space.full_event()).unwrap());
        let nulls = spec.enumerate_precluded().unwrap();
        assert!(nulls.contains(&uv).unwrap());
    }

    #[test]
    fn mixed_modes_rejected() {
        let space = HistorySpace::new(["u", "v"]).unwrap();
        let result = MeasureSpec::classical(&space, vec![Scalar::from_int(1), Scalar::Float(0.5)]);
        assert!(matches!(result, Err(Error::MixedNumericModes)));
    }

    #[test]
    fn arity_checked() {
        let space = HistorySpace::new(["u", "v"]).unwrap();
        assert!(matches!(
            MeasureSpec::classical(&space, vec![Scalar::from_int(1)]),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn mixed_space_mu_rejected() {
        let (_, spec) = three_slit();
        let other = HistorySpace::new(["X"]).unwrap();
        assert!(matches!(
            spec.mu(&other.full_event()),
            Err(Error::MixedSpaces)
        ));
    }
}
