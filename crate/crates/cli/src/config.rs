//! Batch configuration. A [`RunConfig`] is exactly what one command-line
//! invocation means, in a form that round-trips through JSON.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use tiltstab::{
    standard_class, DivisorData, Geometry, NumericalClass, ParseError, StandardClass, TiltPoint,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: Geometry,
    pub command: Command,
    #[serde(default)]
    pub output: OutputMode,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Canonical form: pretty JSON, fields in declaration order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputMode {
    #[default]
    Human,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum Command {
    Slope {
        class: NumericalClass,
        point: TiltPoint,
    },
    Charge {
        class: NumericalClass,
        point: TiltPoint,
    },
    Wall {
        a: NumericalClass,
        b: NumericalClass,
    },
    Ladder {
        dmax: u32,
    },
    Destab {
        target: Target,
        point: TiltPoint,
        #[serde(default)]
        rank_max: Option<u32>,
        #[serde(default)]
        include_shifted: bool,
        #[serde(default)]
        include_torsion: bool,
    },
    Reider {
        d: u32,
        mode: ReiderMode,
        #[serde(default)]
        exclude: Vec<DivisorData>,
    },
    Plot {
        families: Vec<PlotFamily>,
        #[serde(default)]
        dmin: u32,
        dmax: u32,
        #[serde(default)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum ReiderMode {
    Classical,
    Bridgeland,
    Pic1,
}

/// Which one-parameter family of walls to draw, indexed by the length `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum PlotFamily {
    /// `L ⊗ I_Z` against `(0, H, H²/2)`.
    Thaddeus,
    /// `L ⊗ I_Z` against `O[1]`.
    OShift,
    /// `L ⊗ I_Z` against `I_W^∨[1]`.
    IdealDual,
}

impl PlotFamily {
    pub fn pair(self, d: u32, g: &Geometry) -> (NumericalClass, NumericalClass) {
        let sub = standard_class(StandardClass::LIdeal(d), g);
        let other = match self {
            PlotFamily::Thaddeus => StandardClass::Thaddeus,
            PlotFamily::OShift => StandardClass::OShift,
            PlotFamily::IdealDual => StandardClass::IdealDualShift(d),
        };
        (sub, standard_class(other, g))
    }

    pub fn name(self) -> &'static str {
        match self {
            PlotFamily::Thaddeus => "thaddeus",
            PlotFamily::OShift => "o_shift",
            PlotFamily::IdealDual => "ideal_dual",
        }
    }
}

/// A destabilization target: a named class or explicit `r,c1H,ch2H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Target {
    Named(StandardClass),
    Class(NumericalClass),
}

impl Target {
    pub fn resolve(&self, g: &Geometry) -> NumericalClass {
        match self {
            Target::Named(tag) => standard_class(*tag, g),
            Target::Class(c) => c.clone(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Named(tag) => tag.fmt(f),
            Target::Class(c) => c.fmt(f),
        }
    }
}

impl FromStr for Target {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<Self, ParseError> {
        if input.contains(',') {
            input.parse().map(Target::Class)
        } else {
            input.parse().map(Target::Named)
        }
    }
}

impl TryFrom<String> for Target {
    type Error = ParseError;

    fn try_from(s: String) -> Result<Self, ParseError> {
        s.parse()
    }
}

impl From<Target> for String {
    fn from(t: Target) -> String {
        t.to_string()
    }
}
