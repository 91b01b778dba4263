use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// The two vertex factors of a stage-`i` amalgam: `M` and its copy `M_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    #[serde(rename = "M")]
    Base,
    #[serde(rename = "C")]
    Copy,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::Base => Factor::Copy,
            Factor::Copy => Factor::Base,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::Base => "M",
            Factor::Copy => "C",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// One letter of a word: an element of a factor, or a stable letter `t^{±1}`.
///
/// Elements of the copy factor carry the underlying element of `M`; the copy
/// isomorphism is the tag itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Syllable<E> {
    Elem(Factor, E),
    Stable(Sign),
}

impl<E: GroupElement> Syllable<E> {
    pub fn base(g: E) -> Self {
        Syllable::Elem(Factor::Base, g)
    }

    pub fn copy(g: E) -> Self {
        Syllable::Elem(Factor::Copy, g)
    }

    pub fn t() -> Self {
        Syllable::Stable(Sign::Pos)
    }

    pub fn t_inv() -> Self {
        Syllable::Stable(Sign::Neg)
    }

    pub fn inverse(&self) -> Self {
        match self {
            Syllable::Elem(f, g) => Syllable::Elem(*f, g.inv()),
            Syllable::Stable(s) => Syllable::Stable(s.flip()),
        }
    }

    pub fn factor(&self) -> Option<Factor> {
        match self {
            Syllable::Elem(f, _) => Some(*f),
            Syllable::Stable(_) => None,
        }
    }

    pub fn payload(&self) -> Option<&E> {
        match self {
            Syllable::Elem(_, g) => Some(g),
            Syllable::Stable(_) => None,
        }
    }
}

/// A word in the stage-`stage` group: `M ∗_{G_{stage-1}} M_stage`, possibly
/// with stable letters centralizing the edge group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord<E> {
    pub stage: usize,
    pub syllables: Vec<Syllable<E>>,
}

impl<E: GroupElement> GroupWord<E> {
    pub fn new(stage: usize, syllables: Vec<Syllable<E>>) -> Self {
        GroupWord { stage, syllables }
    }

    pub fn empty(stage: usize) -> Self {
        GroupWord { stage, syllables: Vec::new() }
    }

    pub fn base(stage: usize, g: E) -> Self {
        GroupWord::new(stage, vec![Syllable::base(g)])
    }

    pub fn copy(stage: usize, g: E) -> Self {
        GroupWord::new(stage, vec![Syllable::copy(g)])
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Concatenation; stages must agree.
    pub fn concat(&self, other: &GroupWord<E>) -> Result<GroupWord<E>> {
        if self.stage != other.stage {
            return Err(Error::StageMismatch { expected: self.stage, got: other.stage });
        }
        let mut syllables = self.syllables.clone();
        syllables.extend(other.syllables.iter().cloned());
        Ok(GroupWord::new(self.stage, syllables))
    }

    /// Concatenation of same-stage words; panics on a stage mismatch.
    pub fn then(&self, other: &GroupWord<E>) -> GroupWord<E> {
        self.concat(other).expect("words of the same stage")
    }

    pub fn inverse(&self) -> GroupWord<E> {
        GroupWord::new(self.stage, self.syllables.iter().rev().map(Syllable::inverse).collect())
    }

    pub fn pow(&self, k: usize) -> GroupWord<E> {
        let mut syllables = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            syllables.extend(self.syllables.iter().cloned());
        }
        GroupWord::new(self.stage, syllables)
    }

    /// The same syllables at another stage.
    pub fn at_stage(&self, stage: usize) -> GroupWord<E> {
        GroupWord::new(stage, self.syllables.clone())
    }

    pub fn has_stable_letters(&self) -> bool {
        self.syllables.iter().any(|s| matches!(s, Syllable::Stable(_)))
    }

    /// Tags in order, e.g. `"MCt"`; lone edge elements count under their tag.
    pub fn tag_pattern(&self) -> String {
        self.syllables
            .iter()
            .map(|s| match s {
                Syllable::Elem(Factor::Base, _) => 'M',
                Syllable::Elem(Factor::Copy, _) => 'C',
                Syllable::Stable(Sign::Pos) => 't',
                Syllable::Stable(Sign::Neg) => 'T',
            })
            .collect()
    }
}

impl<E: GroupElement + fmt::Display> fmt::Display for GroupWord<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|s| match s {
                Syllable::Elem(fac, g) => format!("[{fac}:{g}]"),
                Syllable::Stable(Sign::Pos) => "t".to_string(),
                Syllable::Stable(Sign::Neg) => "t^-1".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

impl<E: GroupElement> Serialize for Syllable<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = match self {
            Syllable::Elem(f, g) => json!({"tag": f, "payload": g}),
            Syllable::Stable(Sign::Pos) => json!({"tag": "t", "payload": 1}),
            Syllable::Stable(Sign::Neg) => json!({"tag": "t", "payload": -1}),
        };
        v.serialize(s)
    }
}

impl<'de, E: GroupElement + DeserializeOwned> Deserialize<'de> for Syllable<E> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            tag: String,
            payload: serde_json::Value,
        }
        let raw = Raw::deserialize(d)?;
        let elem = |f: Factor| {
            serde_json::from_value::<E>(raw.payload.clone())
                .map(|g| Syllable::Elem(f, g))
                .map_err(serde::de::Error::custom)
        };
        match raw.tag.as_str() {
            "M" => elem(Factor::Base),
            "C" => elem(Factor::Copy),
            "t" => match raw.payload.as_i64() {
                Some(1) => Ok(Syllable::Stable(Sign::Pos)),
                Some(-1) => Ok(Syllable::Stable(Sign::Neg)),
                _ => Err(serde::de::Error::custom("stable letter payload must be 1 or -1")),
            },
            other => Err(serde::de::Error::custom(format!("unknown tag `{other}`"))),
        }
    }
}

impl<E: GroupElement> Serialize for GroupWord<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({"stage": self.stage, "syllables": self.syllables}).serialize(s)
    }
}

impl<'de, E: GroupElement + DeserializeOwned> Deserialize<'de> for GroupWord<E> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "E: GroupElement + DeserializeOwned")]
        struct Raw<E: GroupElement + DeserializeOwned> {
            stage: usize,
            syllables: Vec<Syllable<E>>,
        }
        let raw = Raw::<E>::deserialize(d)?;
        if raw.stage == 0 {
            return Err(serde::de::Error::custom("stages start at 1"));
        }
        Ok(GroupWord::new(raw.stage, raw.syllables))
    }
}
