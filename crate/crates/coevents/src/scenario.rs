//! Scenario and proof files.
//!
//! Scenarios are JSON documents binding a history space to a measure,
//! plus optional named partitions, bipartitions, and an expectations
//! block for regression runs. Rationals are written as integers or
//! `"p/q"` strings and complex numbers as two-element `[re, im]` arrays
//! (a bare scalar means a real value). A scenario is parsed in
//! exact-rational mode when every numeric literal is an integer or a
//! `"p/q"` string; one float literal anywhere switches the whole measure
//! to float mode.
//!
//! Proof files carry a label list, premises, rule-cited steps, and a
//! goal; see [`crate::deduction`] for the step semantics.

use crate::algebra::{HistorySpace, Partition};
use crate::classicality::Bipartition;
use crate::deduction::{EventIdentity, Goal, InferenceRule, Judgment, Proof, ProofStep};
use crate::error::{Error, Result};
use crate::measure::{MeasureSpec, Tolerance};
use crate::scalar::{ComplexScalar, NumericMode, Scalar};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

pub const BUILTIN_SCENARIOS: &[(&str, &str)] = &[
    (
        "three_slit",
        include_str!("../data/scenarios/three_slit.json"),
    ),
    (
        "classical_die",
        include_str!("../data/scenarios/classical_die.json"),
    ),
    (
        "classical_with_null_history",
        include_str!("../data/scenarios/classical_with_null_history.json"),
    ),
    (
        "double_three_slit",
        include_str!("../data/scenarios/double_three_slit.json"),
    ),
    (
        "two_site_hopper",
        include_str!("../data/scenarios/two_site_hopper.json"),
    ),
];

pub const BUILTIN_PROOFS: &[(&str, &str)] = &[(
    "appendix_3slit",
    include_str!("../data/proofs/appendix_3slit.json"),
)];

/// Expectations block checked after a scenario run; any mismatch makes
/// the run exit nonzero.
#[derive(Clone, Debug, Default)]
pub struct Expectations {
    pub precluded_count: Option<usize>,
    pub maximal_precluded: Option<Vec<Vec<String>>>,
    pub primitive_count: Option<usize>,
    pub primitive_supports: Option<Vec<Vec<String>>>,
    pub all_primitives_homomorphic: Option<bool>,
}

/// A parsed and validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: Option<String>,
    pub space: HistorySpace,
    pub measure: MeasureSpec,
    pub partitions: BTreeMap<String, Partition>,
    pub bipartitions: BTreeMap<String, Bipartition>,
    pub expected: Option<Expectations>,
}

pub fn builtin_scenario_names() -> Vec<&'static str> {
    BUILTIN_SCENARIOS.iter().map(|(name, _)| *name).collect()
}

pub fn load_builtin_scenario(name: &str) -> Result<Scenario> {
    let (_, text) = BUILTIN_SCENARIOS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Scenario(format!("no built-in scenario named `{name}`")))?;
    parse_scenario(text)
}

/// Resolves a built-in name first, then a filesystem path.
pub fn resolve_scenario(name_or_path: &str) -> Result<Scenario> {
    if BUILTIN_SCENARIOS.iter().any(|(n, _)| *n == name_or_path) {
        return load_builtin_scenario(name_or_path);
    }
    load_scenario(Path::new(name_or_path))
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Scenario(format!("cannot read `{}`: {e}", path.display())))?;
    parse_scenario(&text)
}

pub fn builtin_proof_names() -> Vec<&'static str> {
    BUILTIN_PROOFS.iter().map(|(name, _)| *name).collect()
}

pub fn load_builtin_proof(name: &str) -> Result<Proof> {
    let (_, text) = BUILTIN_PROOFS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Proof(format!("no built-in proof named `{name}`")))?;
    parse_proof(text)
}

pub fn resolve_proof(name_or_path: &str) -> Result<Proof> {
    if BUILTIN_PROOFS.iter().any(|(n, _)| *n == name_or_path) {
        return load_builtin_proof(name_or_path);
    }
    let path = Path::new(name_or_path);
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Proof(format!("cannot read `{}`: {e}", path.display())))?;
    parse_proof(&text)
}

/// Parses and validates a scenario document. Measure validation runs as
/// part of loading; a non-Hermitian matrix or a negative measure is a
/// load error.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::Scenario(format!("json syntax: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Scenario("top level must be an object".into()))?;

    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("unnamed")
        .to_string();
    let description = obj
        .get("description")
        .and_then(Value::as_str)
        .map(str::to_string);

    let measure_value = obj
        .get("measure")
        .ok_or_else(|| Error::Scenario("missing `measure`".into()))?;
    let declared_space: Option<Vec<String>> = match obj.get("space") {
        None => None,
        Some(v) => Some(parse_label_list(v, "space")?),
    };

    let (space, measure) = parse_measure(measure_value, declared_space)?;

    let tolerance = match obj.get("tolerance") {
        None => None,
        Some(Value::String(s)) if s == "exact" => Some(Tolerance::Exact),
        Some(Value::Object(t)) => {
            let eps = t
                .get("epsilon")
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::Scenario("tolerance object needs `epsilon`".into()))?;
            Some(Tolerance::Epsilon(eps))
        }
        Some(other) => {
            return Err(Error::Scenario(format!(
                "tolerance must be \"exact\" or {{\"epsilon\": x}}, got {other}"
            )))
        }
    };
    let measure = match tolerance {
        Some(t) => measure.with_tolerance(t)?,
        None => measure,
    };

    let report = measure.validate();
    if let Some(msg) = report.failure_message() {
        return Err(Error::Scenario(format!("invalid measure: {msg}")));
    }

    let mut partitions = BTreeMap::new();
    if let Some(value) = obj.get("partitions") {
        let map = value
            .as_object()
            .ok_or_else(|| Error::Scenario("`partitions` must be an object".into()))?;
        for (pname, blocks) in map {
            let blocks = parse_label_list_list(blocks, &format!("partitions.{pname}"))?;
            let partition = Partition::from_label_blocks(&space, &blocks)
                .map_err(|e| Error::Scenario(format!("partition `{pname}`: {e}")))?;
            partitions.insert(pname.clone(), partition);
        }
    }

    let mut bipartitions = BTreeMap::new();
    if let Some(value) = obj.get("bipartitions") {
        let map = value
            .as_object()
            .ok_or_else(|| Error::Scenario("`bipartitions` must be an object".into()))?;
        for (bname, sides) in map {
            let sides = parse_label_list_list(sides, &format!("bipartitions.{bname}"))?;
            if sides.len() != 2 {
                return Err(Error::Scenario(format!(
                    "bipartition `{bname}` must have exactly two sides"
                )));
            }
            let bipartition = Bipartition::from_labels(&space, &sides[0], &sides[1])
                .map_err(|e| Error::Scenario(format!("bipartition `{bname}`: {e}")))?;
            bipartitions.insert(bname.clone(), bipartition);
        }
    }

    let expected = match obj.get("expected") {
        None => None,
        Some(value) => Some(parse_expectations(value)?),
    };

    Ok(Scenario {
        name,
        description,
        space,
        measure,
        partitions,
        bipartitions,
        expected,
    })
}

fn parse_measure(
    value: &Value,
    declared_space: Option<Vec<String>>,
) -> Result<(HistorySpace, MeasureSpec)> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Scenario("`measure` must be an object".into()))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Scenario("measure needs a `kind`".into()))?;

    match kind {
        "classical" => {
            let space = required_space(declared_space)?;
            let weights_value = obj
                .get("weights")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Scenario("classical measure needs `weights`".into()))?;
            let mut weights = Vec::with_capacity(weights_value.len());
            for (i, w) in weights_value.iter().enumerate() {
                weights.push(parse_scalar(w, &format!("weights[{i}]"))?);
            }
            let weights = unify_scalars(weights);
            Ok((space.clone(), MeasureSpec::classical(&space, weights)?))
        }
        "amplitude" => {
            let space = required_space(declared_space)?;
            let amps_value = obj
                .get("amplitudes")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Scenario("amplitude measure needs `amplitudes`".into()))?;
            let mut amps = Vec::with_capacity(amps_value.len());
            for (i, a) in amps_value.iter().enumerate() {
                amps.push(parse_complex(a, &format!("amplitudes[{i}]"))?);
            }
            let amps = unify_complex(amps);
            Ok((space.clone(), MeasureSpec::amplitude(&space, amps)?))
        }
        "decoherence" => {
            let space = required_space(declared_space)?;
            let rows = obj
                .get("matrix")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Scenario("decoherence measure needs `matrix`".into()))?;
            let mut matrix = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::Scenario(format!("matrix[{i}] must be an array")))?;
                let mut parsed = Vec::with_capacity(row.len());
                for (j, entry) in row.iter().enumerate() {
                    parsed.push(parse_complex(entry, &format!("matrix[{i}][{j}]"))?);
                }
                matrix.push(parsed);
            }
            let matrix = unify_matrix(matrix);
            Ok((space.clone(), MeasureSpec::decoherence(&space, matrix)?))
        }
        "two_site_hopper" => {
            let (labels, amps) = expand_hopper(obj)?;
            if let Some(declared) = declared_space {
                if declared != labels {
                    return Err(Error::Scenario(
                        "declared `space` does not match the generated hopper paths; omit it"
                            .into(),
                    ));
                }
            }
            let space = HistorySpace::new(labels)?;
            let amps = unify_complex(amps);
            Ok((space.clone(), MeasureSpec::amplitude(&space, amps)?))
        }
        other => Err(Error::Scenario(format!("unknown measure kind `{other}`"))),
    }
}

fn required_space(declared: Option<Vec<String>>) -> Result<HistorySpace> {
    let labels = declared.ok_or_else(|| Error::Scenario("missing `space` label list".into()))?;
    HistorySpace::new(labels)
}

/// Expands an n-step two-site hopper into explicit path histories.
/// Paths are digit strings starting at the initial site; the amplitude
/// of a path multiplies `unitary[to][from]` over its steps.
fn expand_hopper(
    obj: &serde_json::Map<String, Value>,
) -> Result<(Vec<String>, Vec<ComplexScalar>)> {
    let unitary_rows = obj
        .get("unitary")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Scenario("two_site_hopper needs a 2x2 `unitary`".into()))?;
    if unitary_rows.len() != 2 {
        return Err(Error::Scenario("hopper `unitary` must be 2x2".into()));
    }
    let mut unitary = Vec::with_capacity(2);
    for (i, row) in unitary_rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Scenario("hopper `unitary` must be 2x2".into()))?;
        if row.len() != 2 {
            return Err(Error::Scenario("hopper `unitary` must be 2x2".into()));
        }
        let mut parsed = Vec::with_capacity(2);
        for (j, entry) in row.iter().enumerate() {
            parsed.push(parse_complex(entry, &format!("unitary[{i}][{j}]"))?);
        }
        unitary.push(parsed);
    }
    let steps = obj
        .get("steps")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Scenario("two_site_hopper needs integer `steps` >= 1".into()))?
        as usize;
    if steps == 0 {
        return Err(Error::Scenario("hopper `steps` must be at least 1".into()));
    }
    let start = match obj.get("start") {
        None => 0usize,
        Some(v) => match v.as_u64() {
            Some(0) => 0,
            Some(1) => 1,
            _ => return Err(Error::Scenario("hopper `start` must be 0 or 1".into())),
        },
    };
    if steps > 16 {
        return Err(Error::Scenario(
            "hopper `steps` too large for the space cap".into(),
        ));
    }
    let count = 1usize << steps;
    let mut labels = Vec::with_capacity(count);
    let mut amps = Vec::with_capacity(count);
    let mode = unitary[0][0].mode();
    for t in 0..count {
        let mut label = String::with_capacity(steps + 1);
        label.push(if start == 0 { '0' } else { '1' });
        let mut amp = ComplexScalar::new(
            match mode {
                NumericMode::Exact => Scalar::from_int(1),
                NumericMode::Float => Scalar::Float(1.0),
            },
            Scalar::zero(mode),
        );
        let mut site = start;
        for k in 0..steps {
            // Leftmost digit after the start is the first step.
            let next = (t >> (steps - 1 - k)) & 1;
            label.push(if next == 0 { '0' } else { '1' });
            amp = amp.mul(&unitary[next][site]);
            site = next;
        }
        labels.push(label);
        amps.push(amp);
    }
    Ok((labels, amps))
}

fn parse_expectations(value: &Value) -> Result<Expectations> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Scenario("`expected` must be an object".into()))?;
    let mut out = Expectations::default();
    if let Some(v) = obj.get("precluded_count") {
        out.precluded_count =
            Some(v.as_u64().ok_or_else(|| {
                Error::Scenario("expected.precluded_count must be an integer".into())
            })? as usize);
    }
    if let Some(v) = obj.get("primitive_count") {
        out.primitive_count =
            Some(v.as_u64().ok_or_else(|| {
                Error::Scenario("expected.primitive_count must be an integer".into())
            })? as usize);
    }
    if let Some(v) = obj.get("maximal_precluded") {
        out.maximal_precluded = Some(parse_label_list_list(v, "expected.maximal_precluded")?);
    }
    if let Some(v) = obj.get("primitive_supports") {
        out.primitive_supports = Some(parse_label_list_list(v, "expected.primitive_supports")?);
    }
    if let Some(v) = obj.get("all_primitives_homomorphic") {
        out.all_primitives_homomorphic = Some(v.as_bool().ok_or_else(|| {
            Error::Scenario("expected.all_primitives_homomorphic must be a boolean".into())
        })?);
    }
    Ok(out)
}

fn parse_label_list(value: &Value, path: &str) -> Result<Vec<String>> {
    let array = value
        .as_array()
        .ok_or_else(|| Error::Scenario(format!("{path} must be an array of labels")))?;
    array
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Scenario(format!("{path} must contain strings")))
        })
        .collect()
}

fn parse_label_list_list(value: &Value, path: &str) -> Result<Vec<Vec<String>>> {
    let array = value
        .as_array()
        .ok_or_else(|| Error::Scenario(format!("{path} must be an array")))?;
    array
        .iter()
        .enumerate()
        .map(|(i, v)| parse_label_list(v, &format!("{path}[{i}]")))
        .collect()
}

/// Integer JSON numbers and `"p/q"` strings become exact rationals;
/// any other JSON number becomes a float.
fn parse_scalar(value: &Value, path: &str) -> Result<Scalar> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::from_int(i))
            } else if let Some(x) = n.as_f64() {
                Ok(Scalar::Float(x))
            } else {
                Err(Error::Scenario(format!("{path}: unrepresentable number")))
            }
        }
        Value::String(s) => {
            Scalar::parse_rational(s).map_err(|e| Error::Scenario(format!("{path}: {e}")))
        }
        other => Err(Error::Scenario(format!(
            "{path}: expected a number or \"p/q\" string, got {other}"
        ))),
    }
}

/// A complex literal is a bare scalar (real) or a `[re, im]` pair.
fn parse_complex(value: &Value, path: &str) -> Result<ComplexScalar> {
    match value {
        Value::Array(parts) => {
            if parts.len() != 2 {
                return Err(Error::Scenario(format!(
                    "{path}: complex values are [re, im] pairs"
                )));
            }
            let re = parse_scalar(&parts[0], &format!("{path}[0]"))?;
            let im = parse_scalar(&parts[1], &format!("{path}[1]"))?;
            Ok(ComplexScalar::new(re, im))
        }
        _ => Ok(ComplexScalar::real(parse_scalar(value, path)?)),
    }
}

fn unify_scalars(scalars: Vec<Scalar>) -> Vec<Scalar> {
    if scalars.iter().all(|s| s.mode() == NumericMode::Exact) {
        return scalars;
    }
    scalars.into_iter().map(|s| s.to_float_scalar()).collect()
}

fn unify_complex(values: Vec<ComplexScalar>) -> Vec<ComplexScalar> {
    let exact = values
        .iter()
        .all(|z| z.re.mode() == NumericMode::Exact && z.im.mode() == NumericMode::Exact);
    if exact {
        return values;
    }
    values.into_iter().map(|z| z.to_float_complex()).collect()
}

fn unify_matrix(matrix: Vec<Vec<ComplexScalar>>) -> Vec<Vec<ComplexScalar>> {
    let exact = matrix
        .iter()
        .flatten()
        .all(|z| z.re.mode() == NumericMode::Exact && z.im.mode() == NumericMode::Exact);
    if exact {
        return matrix;
    }
    matrix
        .into_iter()
        .map(|row| row.into_iter().map(|z| z.to_float_complex()).collect())
        .collect()
}

/// Parses a proof document. Citations must point backwards; labels are
/// display-only.
pub fn parse_proof(text: &str) -> Result<Proof> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::Proof(format!("json syntax: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Proof("top level must be an object".into()))?;
    let name = obj.get("name").and_then(Value::as_str).map(str::to_string);
    let labels = parse_label_list(
        obj.get("space")
            .ok_or_else(|| Error::Proof("missing `space`".into()))?,
        "space",
    )
    .map_err(|e| Error::Proof(e.to_string()))?;
    let space = HistorySpace::new(labels)?;

    let parse_judgment = |value: &Value, path: &str| -> Result<Judgment> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Proof(format!("{path} must be an object")))?;
        let labels = parse_label_list(
            obj.get("event")
                .ok_or_else(|| Error::Proof(format!("{path} needs `event`")))?,
            &format!("{path}.event"),
        )
        .map_err(|e| Error::Proof(e.to_string()))?;
        let event = space.event_from_labels(labels.iter().map(String::as_str))?;
        let value = match obj.get("value").and_then(Value::as_u64) {
            Some(0) => false,
            Some(1) => true,
            _ => {
                return Err(Error::Proof(format!("{path}.value must be 0 or 1")));
            }
        };
        Ok(Judgment { event, value })
    };

    let mut premises = Vec::new();
    if let Some(value) = obj.get("premises") {
        let array = value
            .as_array()
            .ok_or_else(|| Error::Proof("`premises` must be an array".into()))?;
        for (i, p) in array.iter().enumerate() {
            premises.push(parse_judgment(p, &format!("premises[{i}]"))?);
        }
    }

    let steps_value = obj
        .get("steps")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Proof("missing `steps` array".into()))?;
    let mut steps = Vec::with_capacity(steps_value.len());
    for (position, step_value) in steps_value.iter().enumerate() {
        let sobj = step_value
            .as_object()
            .ok_or_else(|| Error::Proof(format!("steps[{position}] must be an object")))?;
        let label = sobj
            .get("label")
            .and_then(Value::as_str)
            .map(str::to_string);
        let rule_name = sobj
            .get("rule")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Proof(format!("steps[{position}] needs a `rule`")))?;
        let rule = InferenceRule::parse(rule_name)
            .ok_or_else(|| Error::Proof(format!("unknown rule `{rule_name}`")))?;
        let conclude = parse_judgment(
            sobj.get("conclude")
                .ok_or_else(|| Error::Proof(format!("steps[{position}] needs `conclude`")))?,
            &format!("steps[{position}].conclude"),
        )?;
        let limit = premises.len() + position;
        let parse_ref = |v: &Value, what: &str| -> Result<usize> {
            let i = v
                .as_u64()
                .ok_or_else(|| Error::Proof(format!("steps[{position}].{what} must be an index")))?
                as usize;
            if i >= limit {
                return Err(Error::DanglingCitation {
                    step: position,
                    cited: i,
                });
            }
            Ok(i)
        };
        let mut from = Vec::new();
        if let Some(value) = sobj.get("from") {
            let array = value
                .as_array()
                .ok_or_else(|| Error::Proof(format!("steps[{position}].from must be an array")))?;
            for v in array {
                from.push(parse_ref(v, "from")?);
            }
        }
        let supposition = match sobj.get("suppose") {
            None => None,
            Some(v) => Some(parse_ref(v, "suppose")?),
        };
        let contradiction = match sobj.get("contradiction") {
            None => None,
            Some(v) => {
                let array = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                    Error::Proof(format!(
                        "steps[{position}].contradiction must be a pair of indices"
                    ))
                })?;
                Some((
                    parse_ref(&array[0], "contradiction")?,
                    parse_ref(&array[1], "contradiction")?,
                ))
            }
        };
        let event_identity = match sobj.get("event_identity") {
            None => None,
            Some(v) => {
                let iobj = v.as_object().ok_or_else(|| {
                    Error::Proof(format!(
                        "steps[{position}].event_identity must be an object"
                    ))
                })?;
                if let Some(c) = iobj.get("complement_of") {
                    let labels = parse_label_list(c, "event_identity.complement_of")
                        .map_err(|e| Error::Proof(e.to_string()))?;
                    Some(EventIdentity::ComplementOf(
                        space.event_from_labels(labels.iter().map(String::as_str))?,
                    ))
                } else if let Some(pair) = iobj.get("intersection_of") {
                    let lists = parse_label_list_list(pair, "event_identity.intersection_of")
                        .map_err(|e| Error::Proof(e.to_string()))?;
                    if lists.len() != 2 {
                        return Err(Error::Proof(
                            "intersection_of takes exactly two events".into(),
                        ));
                    }
                    Some(EventIdentity::IntersectionOf(
                        space.event_from_labels(lists[0].iter().map(String::as_str))?,
                        space.event_from_labels(lists[1].iter().map(String::as_str))?,
                    ))
                } else {
                    return Err(Error::Proof(
                        "event_identity must state complement_of or intersection_of".into(),
                    ));
                }
            }
        };
        steps.push(ProofStep {
            label,
            rule,
            conclude,
            from,
            supposition,
            contradiction,
            event_identity,
        });
    }

    let goal = match obj.get("goal") {
        Some(Value::String(s)) if s == "contradiction" => Goal::Contradiction,
        Some(v) => Goal::Judgment(parse_judgment(v, "goal")?),
        None => return Err(Error::Proof("missing `goal`".into())),
    };

    Ok(Proof {
        name,
        space,
        premises,
        steps,
        goal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::{check_proof, ProofVerdict, SchemeProfile, StepVerdict};
    use crate::measure::MeasureKind;

    #[test]
    fn builtins_parse() {
        for name in builtin_scenario_names() {
            let scenario = load_builtin_scenario(name).unwrap();
            assert_eq!(scenario.name, name);
        }
        for name in builtin_proof_names() {
            load_builtin_proof(name).unwrap();
        }
    }

    #[test]
    fn three_slit_is_exact_amplitude() {
        let scenario = load_builtin_scenario("three_slit").unwrap();
        assert_eq!(scenario.space.size(), 3);
        assert_eq!(scenario.measure.mode(), NumericMode::Exact);
        assert!(matches!(scenario.measure.tolerance(), Tolerance::Exact));
        assert!(matches!(scenario.measure.kind(), MeasureKind::Amplitude(_)));
        assert!(scenario.partitions.contains_key("detector_coarse"));
        assert!(scenario.bipartitions.contains_key("a_vs_bc"));
    }

    #[test]
    fn hopper_expands_to_paths() {
        let scenario = load_builtin_scenario("two_site_hopper").unwrap();
        assert_eq!(scenario.space.size(), 8);
        assert_eq!(scenario.space.label(0), "0000");
        assert_eq!(scenario.space.label(7), "0111");
        assert_eq!(scenario.measure.mode(), NumericMode::Exact);
        // Unnormalized balanced hopper: mu(Omega) = 8 after three steps.
        let omega = scenario.measure.mu(&scenario.space.full_event()).unwrap();
        assert_eq!(omega, Scalar::from_int(8));
    }

    #[test]
    fn float_literal_switches_mode() {
        let text = r#"{
            "name": "float_pair",
            "space": ["u", "v"],
            "measure": {"kind": "classical", "weights": [0.25, "3/4"]}
        }"#;
        let scenario = parse_scenario(text).unwrap();
        assert_eq!(scenario.measure.mode(), NumericMode::Float);
        assert!(matches!(
            scenario.measure.tolerance(),
            Tolerance::Epsilon(_)
        ));
    }

    #[test]
    fn non_hermitian_rejected_at_load() {
        let text = r#"{
            "name": "broken",
            "space": ["u", "v"],
            "measure": {"kind": "decoherence", "matrix": [[1, [0, 1]], [[0, 1], 1]]}
        }"#;
        let err = parse_scenario(text).unwrap_err();
        assert!(err.to_string().contains("Hermitian"), "{err}");
    }

    #[test]
    fn duplicate_labels_rejected() {
        let text = r#"{
            "name": "dup",
            "space": ["u", "u"],
            "measure": {"kind": "classical", "weights": [1, 1]}
        }"#;
        assert!(matches!(
            parse_scenario(text),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn parse_error_carries_position() {
        let err = parse_scenario("{ not json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn builtin_proof_checks_both_ways() {
        let proof = load_builtin_proof("appendix_3slit").unwrap();
        let classical = check_proof(&proof, &SchemeProfile::classical()).unwrap();
        assert_eq!(classical.verdict, ProofVerdict::Proven);

        let mult = check_proof(&proof, &SchemeProfile::multiplicative()).unwrap();
        match mult.verdict {
            ProofVerdict::BlockedAt { label, verdict, .. } => {
                assert_eq!(label.as_deref(), Some("3"));
                assert!(matches!(verdict, StepVerdict::RuleInadmissible(_)));
            }
            other => panic!("expected blocked verdict, got {other:?}"),
        }
    }

    #[test]
    fn forward_citation_rejected() {
        let text = r#"{
            "space": ["A", "B"],
            "premises": [],
            "steps": [
                {"rule": "totality", "from": [1], "conclude": {"event": ["A"], "value": 1}}
            ],
            "goal": "contradiction"
        }"#;
        assert!(matches!(
            parse_proof(text),
            Err(Error::DanglingCitation { step: 0, cited: 1 })
        ));
    }
}
