//! The JSON problem file.
//!
//! ```json
//! {"dim": 2, "radius": 2.0,
//!  "constraints": [{"a": [1, 0], "b": 0.5, "sense": ">="}]}
//! ```
//!
//! `dim` and `radius` are required, `constraints` defaults to empty and
//! unknown keys are rejected. `"<="` rows are negated into `≥` form when the
//! file is turned into a [`LinearSystem`].

use ellipsoid_core::{Constraint, LinearSystem, Vector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "<=")]
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConstraint {
    pub a: Vec<f64>,
    pub b: f64,
    pub sense: Sense,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dim: usize,
    pub radius: f64,
    #[serde(default)]
    pub constraints: Vec<ProblemConstraint>,
}

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ProblemError {
    ProblemError::Validation { field: field.into(), message: message.into() }
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &[u8]) -> Result<ProblemFile, ProblemError> {
    let file: ProblemFile = serde_json::from_slice(text).map_err(|e| ProblemError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.validate()?;
    Ok(file)
}

impl ProblemFile {
    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.dim == 0 {
            return Err(invalid("dim", "must be at least 1"));
        }
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(invalid("radius", format!("must be positive, got {}", self.radius)));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.a.len() != self.dim {
                return Err(invalid(
                    format!("constraints[{i}].a"),
                    format!("has length {}, expected dim = {}", c.a.len(), self.dim),
                ));
            }
            if c.a.iter().all(|x| *x == 0.0) {
                return Err(invalid(format!("constraints[{i}].a"), "normal is the zero vector"));
            }
        }
        Ok(())
    }

    /// Converts to `aᵀx ≥ b` form.
    pub fn to_system(&self) -> Result<LinearSystem, ProblemError> {
        self.validate()?;
        let rows = self
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let field = || format!("constraints[{i}]");
                let normal = Vector::from_slice(&c.a).map_err(|e| invalid(field(), e.to_string()))?;
                match c.sense {
                    Sense::AtLeast => Constraint::at_least(normal, c.b),
                    Sense::AtMost => Constraint::at_most(normal, c.b),
                }
                .map_err(|e| invalid(field(), e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        LinearSystem::new(self.dim, self.radius, rows).map_err(|e| invalid("problem", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_single_row() {
        let p = parse_problem(
            br#"{"dim":2,"radius":2.0,"constraints":[{"a":[1,0],"b":0.5,"sense":">="}]}"#,
        )
        .unwrap();
        assert_eq!(p.constraints.len(), 1);
        let sys = p.to_system().unwrap();
        assert_eq!(sys.constraints()[0].normal().as_slice(), &[1.0, 0.0]);
        assert_eq!(sys.constraints()[0].bound(), 0.5);
    }

    #[test]
    fn at_most_rows_are_negated() {
        let p = parse_problem(
            br#"{"dim":2,"radius":2.0,"constraints":[{"a":[1,0],"b":0.5,"sense":"<="}]}"#,
        )
        .unwrap();
        let sys = p.to_system().unwrap();
        assert_eq!(sys.constraints()[0].normal().as_slice(), &[-1.0, 0.0]);
        assert_eq!(sys.constraints()[0].bound(), -0.5);
    }

    #[test]
    fn length_mismatch_names_the_row() {
        let err = parse_problem(
            br#"{"dim":2,"radius":1,"constraints":[
                {"a":[1,0],"b":0,"sense":">="},
                {"a":[1],"b":0,"sense":">="}]}"#,
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, ProblemError::Validation { .. }));
        assert!(msg.contains("constraints[1].a"), "{msg}");
    }

    #[test]
    fn rejects_bad_input() {
        let cases: &[&[u8]] = &[
            br#"{"dim":2,"radius":0}"#,
            br#"{"dim":2,"radius":-1}"#,
            br#"{"dim":0,"radius":1}"#,
            br#"{"dim":2,"radius":1,"constraints":[{"a":[0,0],"b":1,"sense":">="}]}"#,
        ];
        for c in cases {
            assert!(matches!(parse_problem(c), Err(ProblemError::Validation { .. })));
        }
        let syntax: &[&[u8]] = &[
            br#"{"dim":2}"#,
            br#"{"radius":1}"#,
            br#"{"dim":2,"radius":1,"extra":true}"#,
            br#"{"dim":2,"radius":1,"constraints":[{"a":[1,0],"b":1,"sense":">"}]}"#,
            b"{\"dim\":2,\n\"radius\": oops}",
        ];
        for c in syntax {
            assert!(matches!(parse_problem(c), Err(ProblemError::Syntax { .. })), "{c:?}");
        }
        let Err(ProblemError::Syntax { line, .. }) = parse_problem(b"{\"dim\":2,\n\"radius\": oops}")
        else {
            unreachable!()
        };
        assert_eq!(line, 2);
    }

    #[test]
    fn constraints_key_is_optional() {
        let p = parse_problem(br#"{"dim":3,"radius":1.5}"#).unwrap();
        assert!(p.constraints.is_empty());
    }

    fn problem() -> impl Strategy<Value = ProblemFile> {
        (1usize..=5).prop_flat_map(|dim| {
            let row = (
                proptest::collection::vec(-1e6..1e6f64, dim)
                    .prop_filter("nonzero", |a| a.iter().any(|x| *x != 0.0)),
                proptest::num::f64::NORMAL | proptest::num::f64::ZERO,
                prop_oneof![Just(Sense::AtLeast), Just(Sense::AtMost)],
            )
                .prop_map(|(a, b, sense)| ProblemConstraint { a, b, sense });
            (1e-9..1e9f64, proptest::collection::vec(row, 0..8))
                .prop_map(move |(radius, constraints)| ProblemFile { dim, radius, constraints })
        })
    }

    proptest! {
        #[test]
        fn serialize_then_parse_is_identity(p in problem()) {
            prop_assert_eq!(parse_problem(p.to_json().as_bytes()).unwrap(), p);
        }
    }
}
