//! Text format for fold scripts and two-fold configurations.
//!
//! Both are TOML documents tagged with a `format` name and a `version`.
//! Numbers are strings: decimals (`"1.6825070656623624"`) or exact
//! rationals (`"-5/2"`). Decimal output uses the shortest representation
//! that parses back to the same `f64`, so scripts round-trip losslessly.
//!
//! ```toml
//! format = "two-fold-config"
//! version = 1
//! p = ["-5/2", "-3"]
//! q = ["0", "1"]
//! ell = ["1", "0", "0"]
//! m = ["1", "0", "3/2"]
//! n = ["0", "1", "1"]
//! ```

use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::construction::{FoldScript, FoldStep, Frame};
use crate::fold::TwoFoldConfig;
use crate::geom::{format_rational, parse_rational, GeomError, Line, Point};

pub const SCRIPT_FORMAT: &str = "fold-script";
pub const CONFIG_FORMAT: &str = "two-fold-config";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error("malformed document: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("could not serialize: {0}")]
    Serialize(#[from] toml::ser::Error),
    #[error("expected format `{expected}`, found `{found}`")]
    WrongFormat {
        expected: &'static str,
        found: String,
    },
    #[error("unsupported version {0}")]
    UnsupportedVersion(u32),
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// A finite `f64` written as a string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn parse(s: &str) -> Option<Num> {
        let v = if s.contains('/') {
            parse_rational(s)?.to_f64()?
        } else {
            s.trim().parse::<f64>().ok()?
        };
        v.is_finite().then_some(Num(v))
    }
}

impl From<f64> for Num {
    fn from(v: f64) -> Self {
        Num(v)
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // -0.0 prints as 0.0
        write!(f, "{:?}", self.0 + 0.0)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Num::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("invalid number `{s}`")))
    }
}

#[derive(Serialize, Deserialize)]
struct ScriptDocument {
    format: String,
    version: u32,
    frame: Frame,
    steps: Vec<FoldStep>,
}

fn check_header(format: &str, version: u32, expected: &'static str) -> Result<(), ScriptError> {
    if format != expected {
        return Err(ScriptError::WrongFormat {
            expected,
            found: format.to_string(),
        });
    }
    if version != FORMAT_VERSION {
        return Err(ScriptError::UnsupportedVersion(version));
    }
    Ok(())
}

pub fn script_to_text(script: &FoldScript) -> Result<String, ScriptError> {
    let doc = ScriptDocument {
        format: SCRIPT_FORMAT.to_string(),
        version: FORMAT_VERSION,
        frame: script.frame.clone(),
        steps: script.steps.clone(),
    };
    Ok(toml::to_string(&doc)?)
}

pub fn script_from_text(text: &str) -> Result<FoldScript, ScriptError> {
    let doc: ScriptDocument = toml::from_str(text)?;
    check_header(&doc.format, doc.version, SCRIPT_FORMAT)?;
    Ok(FoldScript {
        frame: doc.frame,
        steps: doc.steps,
    })
}

#[derive(Serialize, Deserialize)]
struct ConfigDocument {
    format: String,
    version: u32,
    p: [String; 2],
    q: [String; 2],
    ell: [String; 3],
    m: [String; 3],
    n: [String; 3],
}

fn exact(s: &str) -> Result<BigRational, ScriptError> {
    parse_rational(s).ok_or_else(|| ScriptError::InvalidNumber(s.to_string()))
}

fn exact_point(v: &[String; 2]) -> Result<Point<BigRational>, ScriptError> {
    Ok(Point::new(exact(&v[0])?, exact(&v[1])?))
}

fn exact_line(v: &[String; 3]) -> Result<Line<BigRational>, ScriptError> {
    Ok(Line::new(exact(&v[0])?, exact(&v[1])?, exact(&v[2])?)?)
}

pub fn config_from_text(text: &str) -> Result<TwoFoldConfig, ScriptError> {
    let doc: ConfigDocument = toml::from_str(text)?;
    check_header(&doc.format, doc.version, CONFIG_FORMAT)?;
    Ok(TwoFoldConfig {
        p: exact_point(&doc.p)?,
        q: exact_point(&doc.q)?,
        ell: exact_line(&doc.ell)?,
        m: exact_line(&doc.m)?,
        n: exact_line(&doc.n)?,
    })
}

pub fn config_to_text(config: &TwoFoldConfig) -> Result<String, ScriptError> {
    let pt = |p: &Point<BigRational>| [format_rational(&p.x), format_rational(&p.y)];
    let ln = |l: &Line<BigRational>| {
        [
            format_rational(l.a()),
            format_rational(l.b()),
            format_rational(l.c()),
        ]
    };
    let doc = ConfigDocument {
        format: CONFIG_FORMAT.to_string(),
        version: FORMAT_VERSION,
        p: pt(&config.p),
        q: pt(&config.q),
        ell: ln(&config.ell),
        m: ln(&config.m),
        n: ln(&config.n),
    };
    Ok(toml::to_string(&doc)?)
}
