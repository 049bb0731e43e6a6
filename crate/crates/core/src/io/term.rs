//! Term syntax for command-line input, e.g. `3/4*N:1,0 + mu:2,0 - pi^-1*lambda*tau:2,1`.
//!
//! A term is a `*`-separated product of factors (`p/q`, `pi`, `pi^e`,
//! `lambda`, `lambda^e`) and exactly one symbol `FAMILY:k,q`. Families:
//! `Delta`/`D`, `N`, `B`, `Gamma`/`G` for curvature measures, `mu`, `tau`
//! for valuations and `st` for the monomial s^k t^q.

use crate::curvature::{CurvElement, CurvIndex, Family};
use crate::error::{Error, Result};
use crate::scalar::rational::parse_rational;
use crate::scalar::{Lambda, LambdaScalar};
use crate::valuation::{Dim, ValBasis, ValElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Curv(CurvIndex),
    Val(ValBasis, u32, u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: LambdaScalar,
    pub symbol: Symbol,
}

fn perr(msg: String) -> Error {
    Error::Parse(msg)
}

fn split_signed(s: &str) -> Vec<(bool, String)> {
    let mut out = vec![];
    let mut cur = String::new();
    let mut neg = false;
    let mut prev = ' ';
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        if (ch == '+' || ch == '-') && prev != '^' && prev != '*' && !cur.is_empty() {
            out.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.is_empty() && prev != '^' {
            neg ^= ch == '-';
        } else {
            cur.push(ch);
        }
        prev = ch;
    }
    if !cur.is_empty() {
        out.push((neg, cur));
    }
    out
}

fn parse_exp(rest: &str, what: &str) -> Result<i32> {
    match rest.strip_prefix('^') {
        None if rest.is_empty() => Ok(1),
        Some(e) => e.parse().map_err(|_| perr(format!("bad exponent in '{what}'"))),
        None => Err(perr(format!("unexpected '{rest}' in '{what}'"))),
    }
}

fn parse_symbol(s: &str) -> Result<Symbol> {
    let (fam, idx) = s.split_once(':').ok_or_else(|| perr(format!("missing ':' in '{s}'")))?;
    let (k, q) = idx.split_once(',').ok_or_else(|| perr(format!("expected k,q in '{s}'")))?;
    let k: u32 = k.parse().map_err(|_| perr(format!("bad index in '{s}'")))?;
    let q: u32 = q.parse().map_err(|_| perr(format!("bad index in '{s}'")))?;
    Ok(match fam {
        "mu" => Symbol::Val(ValBasis::Mu, k, q),
        "tau" => Symbol::Val(ValBasis::Tau, k, q),
        "st" => Symbol::Val(ValBasis::St, k, q),
        f => {
            let family = Family::parse(f).ok_or_else(|| perr(format!("unknown family '{f}'")))?;
            Symbol::Curv(CurvIndex { family, k, q })
        }
    })
}

pub fn parse_terms(s: &str) -> Result<Vec<Term>> {
    let parts = split_signed(s);
    if parts.is_empty() {
        return Err(perr("empty expression".into()));
    }
    let mut out = vec![];
    for (neg, t) in parts {
        let mut coeff = LambdaScalar::int(if neg { -1 } else { 1 });
        let mut symbol = None;
        for f in t.split('*') {
            if f.contains(':') {
                if symbol.replace(parse_symbol(f)?).is_some() {
                    return Err(perr(format!("two symbols in '{t}'")));
                }
            } else if let Some(rest) = f.strip_prefix("lambda") {
                coeff = coeff.shift_lambda(parse_exp(rest, f)?);
            } else if let Some(rest) = f.strip_prefix("pi") {
                coeff = coeff.shift_pi(parse_exp(rest, f)?);
            } else {
                let r = parse_rational(f).ok_or_else(|| perr(format!("bad factor '{f}'")))?;
                coeff = coeff.scale(&r);
            }
        }
        let symbol = symbol.ok_or_else(|| perr(format!("no symbol in '{t}'")))?;
        out.push(Term { coeff, symbol });
    }
    Ok(out)
}

/// Parses a valuation; λ in coefficients is specialized by the mode.
pub fn parse_valuation(s: &str, dim: Dim, lambda: &Lambda) -> Result<ValElement> {
    let terms = parse_terms(s)?;
    let mut basis = None;
    let mut items = vec![];
    for t in terms {
        match t.symbol {
            Symbol::Val(b, k, q) => {
                if *basis.get_or_insert(b) != b {
                    return Err(perr("mixed valuation bases in one expression".into()));
                }
                items.push(((k, q), lambda.apply(&t.coeff)?));
            }
            Symbol::Curv(i) => return Err(perr(format!("{i} is a curvature measure, expected a valuation"))),
        }
    }
    ValElement::from_terms(dim, lambda.clone(), basis.unwrap_or(ValBasis::Mu), items)
}

pub fn parse_curvature(s: &str, dim: Dim, lambda: &Lambda) -> Result<CurvElement> {
    let mut items = vec![];
    for t in parse_terms(s)? {
        match t.symbol {
            Symbol::Curv(i) => items.push((i, lambda.apply(&t.coeff)?)),
            Symbol::Val(..) => return Err(perr("expected a curvature measure".into())),
        }
    }
    CurvElement::from_terms(dim, items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    #[test]
    fn parses_mixed_expression() {
        let t = parse_terms("3/4*N:1,0 + mu:2,0 - pi^-1*lambda^2*tau:2,1").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].coeff, LambdaScalar::ratio(3, 4));
        assert_eq!(t[0].symbol, Symbol::Curv(CurvIndex::n(1, 0)));
        assert_eq!(t[1].symbol, Symbol::Val(ValBasis::Mu, 2, 0));
        assert_eq!(t[2].coeff, LambdaScalar::monomial(rat(-1, 1), -1, 2));
    }

    #[test]
    fn leading_sign_and_errors() {
        let t = parse_terms("-2*Delta:0,0").unwrap();
        assert_eq!(t[0].coeff, LambdaScalar::int(-2));
        assert!(parse_terms("2*3").is_err());
        assert!(parse_terms("X:1,0").is_err());
        assert!(parse_terms("mu:1,0*N:1,0").is_err());
        assert!(parse_terms("").is_err());
    }

    #[test]
    fn builds_elements() {
        let v = parse_valuation("mu:1,0 + lambda*mu:2,1", Dim::Finite(2), &Lambda::value(2, 1)).unwrap();
        assert_eq!(v.coeff(2, 1), LambdaScalar::int(2));
        assert!(parse_valuation("mu:5,0", Dim::Finite(2), &Lambda::Formal).is_err());
        let c = parse_curvature("N:2,0", Dim::Finite(3), &Lambda::Formal).unwrap();
        assert_eq!(c.len(), 1);
        assert!(parse_curvature("N:1,0", Dim::Finite(1), &Lambda::Formal).is_err());
    }
}
