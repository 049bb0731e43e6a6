//! JSON documents for every object the library emits.

use serde::{Deserialize, Serialize};

use crate::curvature::{CurvBasis, CurvElement, CurvIndex, CurvTensor, SemiLocalTensor};
use crate::error::{Error, Result};
use crate::scalar::trig::TrigMono;
use crate::scalar::{Lambda, LambdaScalar, TrigPoly};
use crate::valuation::{Dim, ValBasis, ValElement, ValIndex, ValTensor};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValTerm {
    pub index: [u32; 2],
    pub coeff: LambdaScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvTerm {
    #[serde(flatten)]
    pub index: CurvIndex,
    pub coeff: LambdaScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairTerm<A, B> {
    pub left: A,
    pub right: B,
    pub coeff: LambdaScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub sn: u32,
    pub cs: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub integrals: Vec<[u32; 2]>,
    pub coeff: LambdaScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TubeEntry<K> {
    pub key: K,
    pub value: Vec<TrigTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Document {
    Valuation { n: Dim, lambda: String, basis: ValBasis, terms: Vec<ValTerm> },
    Curvature { n: Dim, basis: CurvBasis, terms: Vec<CurvTerm> },
    ValTensor { n: Dim, lambda: String, terms: Vec<PairTerm<ValIndex, ValIndex>> },
    CurvTensor { n: Dim, terms: Vec<PairTerm<CurvIndex, CurvIndex>> },
    SemiLocal { n: Dim, lambda: String, terms: Vec<PairTerm<CurvIndex, ValIndex>> },
    Scalar { value: LambdaScalar },
    Trig { lambda: String, terms: Vec<TrigTerm> },
    ValTube { n: u32, lambda: String, entries: Vec<TubeEntry<ValIndex>> },
    CurvTube { n: u32, lambda: String, entries: Vec<TubeEntry<CurvIndex>> },
    ChernTube { n: u32, lambda: String, entries: Vec<TubeEntry<u32>> },
}

fn parse_lambda(s: &str) -> Result<Lambda> {
    Lambda::parse(s).ok_or_else(|| Error::Parse(format!("bad lambda '{s}'")))
}

pub fn trig_terms(p: &TrigPoly) -> Vec<TrigTerm> {
    p.terms()
        .map(|(m, c)| TrigTerm {
            sn: m.sn,
            cs: m.cs,
            integrals: m.atoms.iter().map(|(a, b)| [*a, *b]).collect(),
            coeff: c.clone(),
        })
        .collect()
}

pub fn trig_from_terms(lambda: Lambda, terms: &[TrigTerm]) -> TrigPoly {
    TrigPoly::raw(
        lambda,
        terms.iter().map(|t| {
            let mut atoms: Vec<(u32, u32)> = t.integrals.iter().map(|x| (x[0], x[1])).collect();
            atoms.sort_unstable();
            (TrigMono { sn: t.sn, cs: t.cs, atoms }, t.coeff.clone())
        }),
    )
}

impl Document {
    pub fn valuation(v: &ValElement) -> Self {
        Document::Valuation {
            n: v.dim,
            lambda: v.lambda.to_string(),
            basis: v.basis,
            terms: v.terms.iter().map(|((a, b), c)| ValTerm { index: [*a, *b], coeff: c.clone() }).collect(),
        }
    }

    pub fn curvature(c: &CurvElement) -> Self {
        Document::Curvature {
            n: c.dim,
            basis: c.basis,
            terms: c.terms.iter().map(|(i, c)| CurvTerm { index: *i, coeff: c.clone() }).collect(),
        }
    }

    pub fn val_tensor(t: &ValTensor) -> Self {
        Document::ValTensor {
            n: t.dim,
            lambda: t.lambda.to_string(),
            terms: t.terms.iter().map(|((a, b), c)| PairTerm { left: *a, right: *b, coeff: c.clone() }).collect(),
        }
    }

    pub fn curv_tensor(n: Dim, t: &CurvTensor) -> Self {
        Document::CurvTensor {
            n,
            terms: t.terms.iter().map(|((a, b), c)| PairTerm { left: *a, right: *b, coeff: c.clone() }).collect(),
        }
    }

    pub fn semi_local(n: Dim, lambda: &Lambda, t: &SemiLocalTensor) -> Self {
        Document::SemiLocal {
            n,
            lambda: lambda.to_string(),
            terms: t.terms.iter().map(|((a, b), c)| PairTerm { left: *a, right: *b, coeff: c.clone() }).collect(),
        }
    }

    pub fn tube<K: Copy>(
        entries: &std::collections::BTreeMap<K, TrigPoly>,
        n: u32,
        lambda: &Lambda,
        wrap: fn(u32, String, Vec<TubeEntry<K>>) -> Document,
    ) -> Self {
        let e = entries.iter().map(|(k, p)| TubeEntry { key: *k, value: trig_terms(p) }).collect();
        wrap(n, lambda.to_string(), e)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_valuation(self) -> Result<ValElement> {
        match self {
            Document::Valuation { n, lambda, basis, terms } => ValElement::from_terms(
                n,
                parse_lambda(&lambda)?,
                basis,
                terms.into_iter().map(|t| ((t.index[0], t.index[1]), t.coeff)),
            ),
            _ => Err(Error::Parse("expected a valuation document".into())),
        }
    }

    pub fn into_curvature(self) -> Result<CurvElement> {
        match self {
            Document::Curvature { n, basis, terms } => {
                if terms.is_empty() {
                    return Ok(CurvElement::zero(n, basis));
                }
                let c = CurvElement::from_terms(n, terms.into_iter().map(|t| (t.index, t.coeff)))?;
                if c.basis != basis && !c.is_zero() {
                    return Err(Error::Parse("basis tag disagrees with the families used".into()));
                }
                Ok(CurvElement { basis, ..c })
            }
            _ => Err(Error::Parse("expected a curvature document".into())),
        }
    }

    pub fn into_val_tensor(self) -> Result<ValTensor> {
        match self {
            Document::ValTensor { n, lambda, terms } => {
                let mut t = ValTensor::zero(n, parse_lambda(&lambda)?);
                for p in terms {
                    if !n.valid_mu(p.left.k, p.left.q) || !n.valid_mu(p.right.k, p.right.q) {
                        return Err(Error::Domain(format!("invalid tensor index {}@{}", p.left, p.right)));
                    }
                    t.add_term(p.left, p.right, &p.coeff);
                }
                Ok(t)
            }
            _ => Err(Error::Parse("expected a valuation tensor document".into())),
        }
    }

    pub fn into_curv_tensor(self) -> Result<CurvTensor> {
        match self {
            Document::CurvTensor { n, terms } => {
                let mut t = CurvTensor::zero();
                for p in terms {
                    if !p.left.valid(n) || !p.right.valid(n) {
                        return Err(Error::Domain(format!("invalid tensor index {}@{}", p.left, p.right)));
                    }
                    t.add_term(p.left, p.right, &p.coeff);
                }
                Ok(t)
            }
            _ => Err(Error::Parse("expected a curvature tensor document".into())),
        }
    }

    pub fn into_trig(self) -> Result<TrigPoly> {
        match self {
            Document::Trig { lambda, terms } => Ok(trig_from_terms(parse_lambda(&lambda)?, &terms)),
            _ => Err(Error::Parse("expected a trig document".into())),
        }
    }
}

impl From<&TrigPoly> for Document {
    fn from(p: &TrigPoly) -> Self {
        Document::Trig { lambda: p.lambda().to_string(), terms: trig_terms(p) }
    }
}
