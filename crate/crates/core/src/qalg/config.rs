use serde::Deserialize;

use super::{Algebra, AlgebraCase};
use crate::error::{Error, Result};
use crate::scalars::{check_spec, Field, FieldKind, FieldSpec};

/// How the division property of a new algebra is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValidationLevel {
    Definite,
    Frobenius,
    Search(usize),
    Assert,
}

impl std::str::FromStr for ValidationLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "definite" => Ok(ValidationLevel::Definite),
            "frobenius" => Ok(ValidationLevel::Frobenius),
            "assert" => Ok(ValidationLevel::Assert),
            other => other
                .strip_prefix("search:")
                .and_then(|n| n.trim().parse().ok())
                .map(ValidationLevel::Search)
                .ok_or_else(|| Error::Config(format!("unknown validation level {other:?}"))),
        }
    }
}

impl std::fmt::Display for ValidationLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationLevel::Definite => write!(f, "definite"),
            ValidationLevel::Frobenius => write!(f, "frobenius"),
            ValidationLevel::Search(n) => write!(f, "search:{n}"),
            ValidationLevel::Assert => write!(f, "assert"),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    case: String,
    field: String,
    a: String,
    b: String,
    validation: String,
}

/// A parsed algebra config file. The structure constants stay as strings
/// until the concrete field type is chosen with [`AlgebraConfig::build`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraConfig {
    pub case: AlgebraCase,
    pub field: FieldSpec,
    pub a: String,
    pub b: String,
    pub validation: ValidationLevel,
}

impl AlgebraConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let case = match raw.case.as_str() {
            "A1" => AlgebraCase::A1,
            "A2" => AlgebraCase::A2,
            "B" => AlgebraCase::B,
            other => return Err(Error::Config(format!("unknown case {other:?}"))),
        };
        let field = FieldSpec::from_name(&raw.field).map_err(|e| Error::Config(e.to_string()))?;
        Ok(AlgebraConfig {
            case,
            field,
            a: raw.a,
            b: raw.b,
            validation: raw.validation.parse()?,
        })
    }

    /// The config in its file format, for echoing in reports.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "case": self.case.name(),
            "field": self.field.name(),
            "a": self.a,
            "b": self.b,
            "validation": self.validation.to_string(),
        })
    }

    pub fn field_kind(&self) -> FieldKind {
        self.field.kind()
    }

    /// Parses the structure constants in `F` and builds the algebra.
    pub fn build<F: Field>(&self) -> Result<Algebra<F>> {
        check_spec::<F>(&self.field).map_err(|e| Error::Config(e.to_string()))?;
        let parse = |s: &str| F::parse(s, &self.field).map_err(|e| Error::Config(e.to_string()));
        Algebra::new(
            self.field.clone(),
            self.case,
            parse(&self.a)?,
            parse(&self.b)?,
            self.validation,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::DivisionCertificate;
    use crate::scalars::{Gf2Rat, Rational};

    #[test]
    fn parses_levels() {
        assert_eq!(
            "search:50".parse::<ValidationLevel>().unwrap(),
            ValidationLevel::Search(50)
        );
        assert!("search:x".parse::<ValidationLevel>().is_err());
        assert!("strong".parse::<ValidationLevel>().is_err());
    }

    #[test]
    fn builds_case_b_with_named_indeterminates() {
        let cfg = AlgebraConfig::from_json(
            r#"{"case":"B","field":"F2(a,b)","a":"a","b":"b","validation":"frobenius"}"#,
        )
        .unwrap();
        let alg = cfg.build::<Gf2Rat>().unwrap();
        assert_eq!(alg.certificate(), DivisionCertificate::FrobeniusIndependent);
        assert_eq!(alg.a(), &Gf2Rat::s());
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            AlgebraConfig::from_json("{"),
            Err(Error::Config(_))
        ));
        let cfg = AlgebraConfig::from_json(
            r#"{"case":"A1","field":"Q","a":"x","b":"-1","validation":"definite"}"#,
        )
        .unwrap();
        assert!(matches!(cfg.build::<Rational>(), Err(Error::Config(_))));
        assert!(matches!(cfg.build::<Gf2Rat>(), Err(Error::Config(_))));
    }
}
