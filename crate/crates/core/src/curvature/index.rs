use std::fmt;

use serde::{Deserialize, Serialize};

use crate::valuation::Dim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Delta,
    N,
    B,
    Gamma,
}

impl Family {
    pub fn symbol(&self) -> &'static str {
        match self {
            Family::Delta => "Delta",
            Family::N => "N",
            Family::B => "B",
            Family::Gamma => "Gamma",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "Delta" | "D" | "delta" => Some(Family::Delta),
            "N" | "n" => Some(Family::N),
            "B" | "b" => Some(Family::B),
            "Gamma" | "G" | "gamma" => Some(Family::Gamma),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurvIndex {
    pub family: Family,
    pub k: u32,
    pub q: u32,
}

impl CurvIndex {
    pub fn delta(k: u32, q: u32) -> Self {
        CurvIndex { family: Family::Delta, k, q }
    }

    pub fn n(k: u32, q: u32) -> Self {
        CurvIndex { family: Family::N, k, q }
    }

    pub fn b(k: u32, q: u32) -> Self {
        CurvIndex { family: Family::B, k, q }
    }

    pub fn gamma(k: u32, q: u32) -> Self {
        CurvIndex { family: Family::Gamma, k, q }
    }

    /// Validity in Curv^{U(n)}. In the capped infinite-dimensional case Γ is
    /// unavailable since its definition depends on n.
    pub fn valid(&self, dim: Dim) -> bool {
        let (k, q) = (self.k, self.q);
        if k > dim.top() {
            return false;
        }
        let n = dim.finite();
        match self.family {
            Family::Delta => 2 * q <= k && n.is_none_or(|n| q + n >= k),
            Family::N => k > 2 * q && n.is_none_or(|n| q + n > k),
            Family::B => k > 2 * q && n.is_none_or(|n| q + n >= k),
            Family::Gamma => match n {
                None => false,
                Some(n) => 2 * q <= k && (q + n > k || (k == 2 * n && q == n)),
            },
        }
    }
}

impl fmt::Display for CurvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.family.symbol(), self.k, self.q)
    }
}

/// All valid indices of the Δ/N basis, ascending.
pub fn delta_n_indices(dim: Dim) -> Vec<CurvIndex> {
    let mut v = vec![];
    for k in 0..=dim.top() {
        for q in 0..=k / 2 {
            for idx in [CurvIndex::delta(k, q), CurvIndex::n(k, q)] {
                if idx.valid(dim) {
                    v.push(idx);
                }
            }
        }
    }
    v.sort();
    v
}

pub fn b_gamma_indices(dim: Dim) -> Vec<CurvIndex> {
    let mut v = vec![];
    for k in 0..=dim.top() {
        for q in 0..=k / 2 {
            for idx in [CurvIndex::b(k, q), CurvIndex::gamma(k, q)] {
                if idx.valid(dim) {
                    v.push(idx);
                }
            }
        }
    }
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases_have_equal_size() {
        for n in 1..7 {
            let d = Dim::Finite(n);
            assert_eq!(delta_n_indices(d).len(), b_gamma_indices(d).len(), "n = {n}");
        }
    }

    #[test]
    fn edge_indices() {
        let d = Dim::Finite(3);
        assert!(!CurvIndex::n(4, 1).valid(d));
        assert!(CurvIndex::delta(6, 3).valid(d));
        assert!(CurvIndex::gamma(6, 3).valid(d));
        assert!(!CurvIndex::gamma(4, 1).valid(d));
        assert!(CurvIndex::b(4, 1).valid(d));
    }
}
