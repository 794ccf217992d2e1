use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Order `m(s, t)` of the product of two generators.
///
/// `Finite(1)` only appears on the diagonal. `Infinite` is a distinct variant
/// so it can never collide with a large finite label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    /// Commuting pair, drawn as no edge.
    pub const COMMUTE: Label = Label::Finite(2);
    pub const PLAIN: Label = Label::Finite(3);

    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Label::Infinite)
    }

    /// True when the pair is joined by an edge of the Coxeter graph.
    pub fn is_edge(self) -> bool {
        match self {
            Label::Finite(m) => m >= 3,
            Label::Infinite => true,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "∞" | "infinity" => Ok(Label::Infinite),
            _ => s
                .parse::<u32>()
                .map(Label::Finite)
                .map_err(|_| format!("invalid label `{s}`")),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Finite(m) => serializer.serialize_u32(*m),
            Label::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(m) => Ok(Label::Finite(m)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
