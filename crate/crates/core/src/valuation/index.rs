use std::fmt;

use serde::{Deserialize, Serialize};

/// Ambient complex dimension. `Inf` is Val^{U(∞)} modulo everything of
/// weighted degree above `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Finite(u32),
    Inf { cap: u32 },
}

impl Dim {
    /// Largest weighted degree that survives.
    pub fn top(&self) -> u32 {
        match self {
            Dim::Finite(n) => 2 * n,
            Dim::Inf { cap } => *cap,
        }
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            Dim::Finite(n) => Some(*n),
            Dim::Inf { .. } => None,
        }
    }

    /// max(0, k−n) ≤ q ≤ ⌊k/2⌋ ≤ n.
    pub fn valid_mu(&self, k: u32, q: u32) -> bool {
        if 2 * q > k || k > self.top() {
            return false;
        }
        match self {
            Dim::Finite(n) => q + n >= k,
            Dim::Inf { .. } => true,
        }
    }

    pub fn mu_indices(&self) -> Vec<ValIndex> {
        let mut v = vec![];
        for k in 0..=self.top() {
            for q in 0..=k / 2 {
                if self.valid_mu(k, q) {
                    v.push(ValIndex { k, q });
                }
            }
        }
        v
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Inf { cap } => write!(f, "inf(cap {cap})"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(n) => ser.serialize_u32(*n),
            Dim::Inf { cap } => ser.serialize_str(&format!("inf:{cap}")),
        }
    }
}

impl<'de> Deserialize<'de> for Dim {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(de)? {
            Raw::N(n) => Ok(Dim::Finite(n)),
            Raw::S(s) => {
                let cap = s
                    .strip_prefix("inf:")
                    .and_then(|c| c.parse().ok())
                    .ok_or_else(|| serde::de::Error::custom("expected \"inf:<cap>\""))?;
                Ok(Dim::Inf { cap })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ValIndex {
    pub k: u32,
    pub q: u32,
}

impl ValIndex {
    pub fn new(k: u32, q: u32) -> Self {
        ValIndex { k, q }
    }
}

impl fmt::Display for ValIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu[{},{}]", self.k, self.q)
    }
}
