//! Rule set, play convention and outcome types.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{NimError, Result};

/// Which heaps may be touched and how many stones may be taken.
///
/// Both variants only allow removal from a heap tied for the maximum size.
/// `Bounded(k)` additionally caps a single removal at `k` stones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Bounded(u64),
    Greedy,
}

impl Variant {
    /// Validated bounded variant; `k` must be positive.
    pub fn bounded(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(NimError::InvalidK { k, min: 1 });
        }
        Ok(Variant::Bounded(k))
    }

    pub fn k(&self) -> Option<u64> {
        match self {
            Variant::Bounded(k) => Some(*k),
            Variant::Greedy => None,
        }
    }

    /// Largest legal removal from a largest heap of `largest` stones.
    pub fn max_removal(&self, largest: u64) -> u64 {
        match self {
            Variant::Bounded(k) => largest.min(*k),
            Variant::Greedy => largest,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Bounded(k) => write!(f, "bounded k={k}"),
            Variant::Greedy => f.write_str("greedy"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Play {
    Normal,
    Misere,
}

impl Play {
    pub fn as_str(&self) -> &'static str {
        match self {
            Play::Normal => "normal",
            Play::Misere => "misere",
        }
    }
}

impl fmt::Display for Play {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Play {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "normal" => Ok(Play::Normal),
            "misere" | "misère" => Ok(Play::Misere),
            other => Err(format!("unknown play convention `{other}` (expected normal or misere)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameSpec {
    pub variant: Variant,
    pub play: Play,
}

impl GameSpec {
    pub fn new(variant: Variant, play: Play) -> Result<Self> {
        if let Variant::Bounded(k) = variant {
            Variant::bounded(k)?;
        }
        Ok(GameSpec { variant, play })
    }

    pub fn bounded(k: u64, play: Play) -> Result<Self> {
        Ok(GameSpec {
            variant: Variant::bounded(k)?,
            play,
        })
    }

    pub fn greedy(play: Play) -> Self {
        GameSpec {
            variant: Variant::Greedy,
            play,
        }
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.play, self.variant)
    }
}

// Flat wire form shared by the CLI JSON output and the HTTP service.
impl Serialize for GameSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("GameSpec", 3)?;
        match self.variant {
            Variant::Bounded(k) => {
                st.serialize_field("variant", "bounded")?;
                st.serialize_field("k", &k)?;
            }
            Variant::Greedy => {
                st.serialize_field("variant", "greedy")?;
                st.skip_field("k")?;
            }
        }
        st.serialize_field("play", &self.play)?;
        st.end()
    }
}

/// Outcome class of a position: `P` (previous player wins) or `N` (next player wins).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    P,
    N,
}

impl Outcome {
    pub fn is_p(self) -> bool {
        self == Outcome::P
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::P => "P",
            Outcome::N => "N",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
