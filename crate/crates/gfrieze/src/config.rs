//! Run configuration: a flat JSON document naming the polygon, the rigid and
//! cluster tilting sets, the map mode, the `ε` assignment and the outputs.
//!
//! ```json
//! {
//!   "polygon_size": 8,
//!   "R": [[2,5],[2,7]],
//!   "T": [[1,7],[2,4],[2,5],[2,7],[5,7]],
//!   "mode": "modified",
//!   "epsilon": {"{1,7}": "u", "{2,4}": "v", "{2,5}": "1", "{2,7}": "1", "{5,7}": "z"},
//!   "outputs": ["text", "json", "report"]
//! }
//! ```
//!
//! `epsilon` is either the string `"auto"` (fresh variables on a free basis of
//! the quotient) or a map from `"{i,j}"` to a unit, covering `T` exactly.
//! `R` may be omitted in `original` mode, where it is forced to `T`.
//! Validation failures name the offending field; JSON syntax errors carry the
//! line and column reported by the parser.

use crate::ccmap::{CCContext, EpsilonChoice, MapMode};
use crate::laurent::{LaurentPoly, SignedMonomial, VarTable};
use crate::polygon::{Diagonal, PolygonCategory};
use serde::Deserialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

#[derive(Debug)]
pub enum ConfigError {
    Io(std::io::Error),
    /// JSON syntax or shape error, with line/column from the parser.
    Json(serde_json::Error),
    /// A semantic problem, naming the offending field.
    Field { field: &'static str, msg: String },
    Build(crate::ccmap::CcError),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(e) => write!(f, "cannot read config: {e}"),
            ConfigError::Json(e) => write!(f, "config is not valid JSON: {e}"),
            ConfigError::Field { field, msg } => write!(f, "config field \"{field}\": {msg}"),
            ConfigError::Build(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl From<crate::ccmap::CcError> for ConfigError {
    fn from(e: crate::ccmap::CcError) -> Self {
        ConfigError::Build(e)
    }
}

/// Requested output artifacts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OutputKind {
    Text,
    Json,
    Tikz,
    Dot,
    Report,
}

impl OutputKind {
    pub fn parse(s: &str) -> Option<OutputKind> {
        match s {
            "text" => Some(OutputKind::Text),
            "json" => Some(OutputKind::Json),
            "tikz" => Some(OutputKind::Tikz),
            "dot" => Some(OutputKind::Dot),
            "report" => Some(OutputKind::Report),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OutputKind::Text => "text",
            OutputKind::Json => "json",
            OutputKind::Tikz => "tikz",
            OutputKind::Dot => "dot",
            OutputKind::Report => "report",
        }
    }
}

/// The `ε` specification from the config file.
#[derive(Debug, Clone)]
pub enum EpsilonSpec {
    Auto,
    /// `"{i,j}"` to unit value, e.g. `"u"`, `"1"`, `"v^-1"`.
    Assignment(BTreeMap<String, String>),
}

/// A validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub polygon_size: u32,
    pub r: Vec<Diagonal>,
    pub t: Vec<Diagonal>,
    pub mode: MapMode,
    pub epsilon: EpsilonSpec,
    pub outputs: BTreeSet<OutputKind>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    polygon_size: u32,
    #[serde(rename = "R")]
    r: Option<Vec<[i64; 2]>>,
    #[serde(rename = "T")]
    t: Vec<[i64; 2]>,
    mode: Option<String>,
    epsilon: Option<serde_json::Value>,
    outputs: Option<Vec<String>>,
}

fn parse_mode(s: &str) -> Result<MapMode, ConfigError> {
    MapMode::parse(s).ok_or_else(|| ConfigError::Field {
        field: "mode",
        msg: format!("unknown mode `{s}` (expected modified, original or integer)"),
    })
}

fn parse_diagonals(
    model: &PolygonCategory,
    field: &'static str,
    raw: &[[i64; 2]],
) -> Result<Vec<Diagonal>, ConfigError> {
    raw.iter()
        .map(|&[a, b]| {
            model
                .diagonal(a, b)
                .map_err(|e| ConfigError::Field { field, msg: e.to_string() })
        })
        .collect()
}

/// Parse and validate a config document.
pub fn parse_config_str(input: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(input).map_err(ConfigError::Json)?;
    let model = PolygonCategory::new(raw.polygon_size).map_err(|e| ConfigError::Field {
        field: "polygon_size",
        msg: e.to_string(),
    })?;
    let mode = match raw.mode.as_deref() {
        Some(s) => parse_mode(s)?,
        None => MapMode::Modified,
    };
    let t = parse_diagonals(&model, "T", &raw.t)?;
    let r = match (&raw.r, mode) {
        (Some(r), _) => parse_diagonals(&model, "R", r)?,
        (None, MapMode::Original) => t.clone(),
        (None, _) => {
            return Err(ConfigError::Field {
                field: "R",
                msg: "required unless mode is `original`".into(),
            })
        }
    };
    let epsilon = match raw.epsilon {
        None => EpsilonSpec::Auto,
        Some(serde_json::Value::String(s)) if s == "auto" => EpsilonSpec::Auto,
        Some(serde_json::Value::Object(map)) => {
            let mut out = BTreeMap::new();
            for (k, v) in map {
                match v {
                    serde_json::Value::String(s) => {
                        out.insert(k, s);
                    }
                    other => {
                        return Err(ConfigError::Field {
                            field: "epsilon",
                            msg: format!("value for `{k}` must be a string, got {other}"),
                        })
                    }
                }
            }
            EpsilonSpec::Assignment(out)
        }
        Some(other) => {
            return Err(ConfigError::Field {
                field: "epsilon",
                msg: format!("expected \"auto\" or an object, got {other}"),
            })
        }
    };
    let outputs = match raw.outputs {
        None => BTreeSet::from([OutputKind::Text, OutputKind::Report]),
        Some(names) => {
            let mut set = BTreeSet::new();
            for n in names {
                let kind = OutputKind::parse(&n).ok_or_else(|| ConfigError::Field {
                    field: "outputs",
                    msg: format!("unknown output `{n}`"),
                })?;
                set.insert(kind);
            }
            set
        }
    };
    Ok(RunConfig { polygon_size: raw.polygon_size, r, t, mode, epsilon, outputs })
}

/// Read and parse a config file.
pub fn parse_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let input = std::fs::read_to_string(path).map_err(ConfigError::Io)?;
    parse_config_str(&input)
}

/// Turn an `ε` assignment map into a table and per-object unit images,
/// ordered by the sorted objects of `T`.
fn build_assignment(
    model: &PolygonCategory,
    t_objs: &[Diagonal],
    map: &BTreeMap<String, String>,
) -> Result<(Arc<VarTable>, Vec<SignedMonomial>), ConfigError> {
    let field = "epsilon";
    let mut images: BTreeMap<Diagonal, &String> = BTreeMap::new();
    for (key, value) in map {
        let d = model
            .parse_diagonal(key)
            .map_err(|e| ConfigError::Field { field, msg: e.to_string() })?;
        if !t_objs.contains(&d) {
            return Err(ConfigError::Field {
                field,
                msg: format!("{d} is not an object of T"),
            });
        }
        images.insert(d, value);
    }
    for t in t_objs {
        if !images.contains_key(t) {
            return Err(ConfigError::Field { field, msg: format!("missing image for {t}") });
        }
    }
    // variables: every identifier mentioned in any image, sorted
    let mut names: BTreeSet<String> = BTreeSet::new();
    for value in map.values() {
        let mut chars = value.char_indices().peekable();
        while let Some((start, c)) = chars.next() {
            if c.is_ascii_alphabetic() || c == '_' {
                let mut end = start + c.len_utf8();
                while let Some(&(k, c2)) = chars.peek() {
                    if c2.is_ascii_alphanumeric() || c2 == '_' {
                        end = k + c2.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                names.insert(value[start..end].to_string());
            }
        }
    }
    let vars = VarTable::new(names).map_err(|e| ConfigError::Field { field, msg: e.to_string() })?;
    let mut units = Vec::with_capacity(t_objs.len());
    for t in t_objs {
        let text = images[t];
        let poly = LaurentPoly::parse(&vars, text)
            .map_err(|e| ConfigError::Field { field, msg: format!("image of {t}: {e}") })?;
        let unit = poly.as_signed_monomial().ok_or_else(|| ConfigError::Field {
            field,
            msg: format!("image of {t} must be a signed monomial, got `{text}`"),
        })?;
        units.push(unit);
    }
    Ok((vars, units))
}

/// Build the assembled context described by a configuration.
pub fn build_context(config: &RunConfig) -> Result<CCContext, ConfigError> {
    let model = PolygonCategory::new(config.polygon_size)
        .map_err(|e| ConfigError::Field { field: "polygon_size", msg: e.to_string() })?;
    let t_objs: Vec<Diagonal> = {
        let set: BTreeSet<Diagonal> = config.t.iter().copied().collect();
        set.into_iter().collect()
    };
    let choice = match (&config.epsilon, config.mode) {
        (_, MapMode::Integer) => EpsilonChoice::ConstantOne,
        (EpsilonSpec::Auto, _) => EpsilonChoice::Auto,
        (EpsilonSpec::Assignment(map), _) => {
            let (vars, images) = build_assignment(&model, &t_objs, map)?;
            EpsilonChoice::Assignment { vars, images }
        }
    };
    CCContext::new(model, config.mode, &config.r, &config.t, choice, None).map_err(Into::into)
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE: &str = r#"{
        "polygon_size": 8,
        "R": [[2,5],[2,7]],
        "T": [[1,7],[2,4],[2,5],[2,7],[5,7]],
        "mode": "modified",
        "epsilon": {"{1,7}": "u", "{2,4}": "v", "{2,5}": "1", "{2,7}": "1", "{5,7}": "z"},
        "outputs": ["text","json","report"]
    }"#;

    #[test]
    fn reference_config_parses_and_builds() {
        let config = parse_config_str(REFERENCE).unwrap();
        assert_eq!(config.polygon_size, 8);
        assert_eq!(config.r.len(), 2);
        assert_eq!(config.mode, MapMode::Modified);
        assert_eq!(config.outputs.len(), 3);
        let ctx = build_context(&config).unwrap();
        assert_eq!(ctx.var_table().names(), ["u", "v", "z"]);
        let d46 = ctx.model().diagonal(4, 6).unwrap();
        assert_eq!(ctx.rho(d46).to_string(), "(1+v*z)/z");
    }

    #[test]
    fn original_mode_defaults_r_to_t() {
        let config = parse_config_str(
            r#"{"polygon_size": 8, "T": [[1,7],[2,4],[2,5],[2,7],[5,7]], "mode": "original"}"#,
        )
        .unwrap();
        assert_eq!(config.r, config.t);
        let ctx = build_context(&config).unwrap();
        assert_eq!(ctx.var_table().len(), 5);
    }

    #[test]
    fn degenerate_diagonal_is_named() {
        let err = parse_config_str(
            r#"{"polygon_size": 8, "R": [[2,3]], "T": [[1,7],[2,4],[2,5],[2,7],[5,7]]}"#,
        )
        .unwrap_err();
        assert_eq!(
            err.to_string(),
            "config field \"R\": degenerate diagonal {2,3}"
        );
    }

    #[test]
    fn bad_mode_and_bad_json_are_diagnosed() {
        let err = parse_config_str(
            r#"{"polygon_size": 8, "R": [], "T": [[1,7],[2,4],[2,5],[2,7],[5,7]], "mode": "turbo"}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("unknown mode `turbo`"));

        let err = parse_config_str("{ not json").unwrap_err();
        assert!(matches!(err, ConfigError::Json(_)));

        let err = parse_config_str(r#"{"polygon_size": 8, "T": [[1,7]]}"#).unwrap_err();
        assert!(err.to_string().contains("\"R\""));
    }

    #[test]
    fn epsilon_validation() {
        // non-unit image
        let err = parse_config_str(
            r#"{"polygon_size": 8, "R": [[2,5],[2,7]], "T": [[1,7],[2,4],[2,5],[2,7],[5,7]],
                "epsilon": {"{1,7}": "u+1", "{2,4}": "v", "{2,5}": "1", "{2,7}": "1", "{5,7}": "z"}}"#,
        )
        .and_then(|c| build_context(&c))
        .unwrap_err();
        assert!(err.to_string().contains("signed monomial"));

        // missing image
        let err = parse_config_str(
            r#"{"polygon_size": 8, "R": [[2,5],[2,7]], "T": [[1,7],[2,4],[2,5],[2,7],[5,7]],
                "epsilon": {"{1,7}": "u"}}"#,
        )
        .and_then(|c| build_context(&c))
        .unwrap_err();
        assert!(err.to_string().contains("missing image"));

        // ill-defined on the quotient
        let err = parse_config_str(
            r#"{"polygon_size": 8, "R": [[2,5],[2,7]], "T": [[1,7],[2,4],[2,5],[2,7],[5,7]],
                "epsilon": {"{1,7}": "u", "{2,4}": "v", "{2,5}": "u", "{2,7}": "1", "{5,7}": "z"}}"#,
        )
        .and_then(|c| build_context(&c))
        .unwrap_err();
        assert!(err.to_string().contains("not well-defined"));
    }
}
