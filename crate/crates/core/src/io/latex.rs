//! LaTeX rendering in the style of displayed kinematic formulas.

use num_traits::{One, Signed};

use crate::curvature::{CurvElement, CurvIndex, CurvTensor, Family, SemiLocalTensor};
use crate::scalar::{LambdaScalar, Rational};
use crate::valuation::{ValBasis, ValElement, ValIndex, ValTensor};

const TERMS_PER_LINE: usize = 4;

fn sub(k: u32, q: u32) -> String {
    if k < 10 && q < 10 {
        format!("{k}{q}")
    } else {
        format!("{k},{q}")
    }
}

pub fn val_index(i: ValIndex) -> String {
    format!("\\mu_{{{}}}", sub(i.k, i.q))
}

pub fn curv_index(i: CurvIndex) -> String {
    let sym = match i.family {
        Family::Delta => "\\Delta",
        Family::N => "N",
        Family::B => "B",
        Family::Gamma => "\\Gamma",
    };
    format!("{sym}_{{{}}}", sub(i.k, i.q))
}

fn power(sym: &str, e: i32) -> String {
    if e == 1 {
        sym.to_string()
    } else {
        format!("{sym}^{{{e}}}")
    }
}

/// One monomial r π^p λ^l, unsigned; the sign is returned separately.
fn monomial(r: &Rational, p: i32, l: i32) -> (bool, String) {
    let neg = r.is_negative();
    let a = r.abs();
    let (mut num, mut den) = (a.numer().to_string(), a.denom().to_string());
    if p > 0 {
        num = if a.numer().is_one() { power("\\pi", p) } else { format!("{num}{}", power("\\pi", p)) };
    } else if p < 0 {
        den = if a.denom().is_one() { power("\\pi", -p) } else { format!("{den} {}", power("\\pi", -p)) };
    }
    let mut s = if den == "1" {
        num
    } else {
        format!("\\frac{{{num}}}{{{den}}}")
    };
    if l != 0 {
        let lam = power("\\lambda", l);
        s = if s == "1" { lam } else { format!("{s}{lam}") };
    }
    (neg, s)
}

/// Coefficient as a signed prefix: "+ \frac{2}{3\pi}", "- \lambda", "+ \left(...\right)".
pub fn coefficient(c: &LambdaScalar) -> (bool, String) {
    let terms = c.flat_terms();
    if terms.len() == 1 {
        let (l, p, r) = &terms[0];
        let (neg, s) = monomial(r, *p, *l);
        return (neg, if s == "1" { String::new() } else { s });
    }
    let mut body = String::new();
    for (i, (l, p, r)) in terms.iter().enumerate() {
        let (neg, s) = monomial(r, *p, *l);
        match (i, neg) {
            (0, true) => body.push('-'),
            (0, false) => {}
            (_, true) => body.push_str(" - "),
            (_, false) => body.push_str(" + "),
        }
        body.push_str(&s);
    }
    (false, format!("\\left({body}\\right)"))
}

fn render(name: &str, items: Vec<(bool, String, String)>) -> String {
    let mut out = String::from("\\begin{align*}\n");
    if items.is_empty() {
        out.push_str(&format!("{name} &= 0\n\\end{{align*}}\n"));
        return out;
    }
    for (i, (neg, c, body)) in items.iter().enumerate() {
        if i == 0 {
            out.push_str(&format!("{name} &= "));
            if *neg {
                out.push('-');
            }
        } else {
            if i % TERMS_PER_LINE == 0 {
                out.push_str(" \\\\\n&\\quad ");
            } else {
                out.push(' ');
            }
            out.push_str(if *neg { "- " } else { "+ " });
        }
        out.push_str(c);
        out.push_str(body);
    }
    out.push_str("\n\\end{align*}\n");
    out
}

/// A global kinematic tensor, e.g. `k(\chi)`, in ascending index order.
pub fn val_tensor(name: &str, t: &ValTensor) -> String {
    let items = t
        .terms()
        .map(|((a, b), c)| {
            let (neg, s) = coefficient(c);
            (neg, s, format!("{} \\otimes {}", val_index(*a), val_index(*b)))
        })
        .collect();
    render(name, items)
}

pub fn curv_tensor(name: &str, t: &CurvTensor) -> String {
    let items = t
        .terms()
        .map(|((a, b), c)| {
            let (neg, s) = coefficient(c);
            (neg, s, format!("{} \\otimes {}", curv_index(*a), curv_index(*b)))
        })
        .collect();
    render(name, items)
}

fn val_key(basis: ValBasis, a: u32, b: u32) -> String {
    match basis {
        ValBasis::Mu => val_index(ValIndex::new(a, b)),
        ValBasis::Tau => format!("\\tau_{{{}}}", sub(a, b)),
        ValBasis::St => match (a, b) {
            (0, 0) => "\\chi".into(),
            _ => {
                let mut m = String::new();
                if a > 0 {
                    m.push_str(&power("s", a as i32));
                }
                if b > 0 {
                    m.push_str(&power("t", b as i32));
                }
                m
            }
        },
    }
}

pub fn valuation(name: &str, v: &ValElement) -> String {
    let items = v
        .terms()
        .map(|((a, b), c)| {
            let (neg, s) = coefficient(c);
            (neg, s, val_key(v.basis(), *a, *b))
        })
        .collect();
    render(name, items)
}

pub fn curvature(name: &str, c: &CurvElement) -> String {
    let items = c
        .terms()
        .map(|(i, v)| {
            let (neg, s) = coefficient(v);
            (neg, s, curv_index(*i))
        })
        .collect();
    render(name, items)
}

pub fn semi_local(name: &str, t: &SemiLocalTensor) -> String {
    let items = t
        .terms()
        .map(|((a, b), c)| {
            let (neg, s) = coefficient(c);
            (neg, s, format!("{} \\otimes {}", curv_index(*a), val_index(*b)))
        })
        .collect();
    render(name, items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    #[test]
    fn coefficients() {
        let c = LambdaScalar::monomial(rat(16, 15), -1, 0);
        assert_eq!(coefficient(&c), (false, "\\frac{16}{15 \\pi}".into()));
        let c = LambdaScalar::monomial(rat(-1, 1), 0, 2);
        assert_eq!(coefficient(&c), (true, "\\lambda^{2}".into()));
        assert_eq!(coefficient(&LambdaScalar::one()), (false, String::new()));
        let c = LambdaScalar::monomial(rat(1, 2), 1, 0) + LambdaScalar::monomial(rat(-2, 1), 0, 1);
        assert_eq!(coefficient(&c).1, "\\left(\\frac{\\pi}{2} - 2\\lambda\\right)");
    }
}
