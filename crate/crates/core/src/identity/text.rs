//! Identity text grammar: `p6 = 3/4*p2*p4 - 1/8*p2^3`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::scalar::parse_rational;

use super::derive::{Identity, Lhs};
use super::poly::{Monomial, PowerSumPoly};

impl fmt::Display for Lhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lhs::PowerSum(m) => write!(f, "p{m}"),
            Lhs::Elementary(m) => write!(f, "e{m}"),
        }
    }
}

fn coefficient(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Factors of a monomial in ascending order, `Pf2` last.
fn factors(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    let mut parts = m.parts().to_vec();
    parts.reverse();
    let mut i = 0;
    while i < parts.len() {
        let k = parts[i];
        let run = parts[i..].iter().take_while(|&&x| x == k).count();
        out.push(if run == 1 { format!("p{k}") } else { format!("p{k}^{run}") });
        i += run;
    }
    match m.pf2() {
        0 => {}
        1 => out.push("Pf2".into()),
        e => out.push(format!("Pf2^{e}")),
    }
    out
}

impl fmt::Display for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut pieces = factors(m);
            if pieces.is_empty() || !mag.is_one() {
                pieces.insert(0, coefficient(&mag));
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

fn bad(s: &str) -> Error {
    Error::Parse(format!("malformed identity term {s:?}"))
}

fn indexed(tok: &str, prefix: &str) -> Option<usize> {
    tok.strip_prefix(prefix)?.parse().ok().filter(|&k: &usize| k >= 1)
}

fn parse_term(s: &str) -> Result<PowerSumPoly> {
    let mut coef = BigRational::one();
    let mut parts = Vec::new();
    let mut pf2 = 0;
    for factor in s.split('*') {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad(s))?),
            None => (factor, 1),
        };
        if base == "Pf2" {
            pf2 += exp;
        } else if let Some(k) = indexed(base, "p") {
            parts.extend(std::iter::repeat_n(k, exp));
        } else if exp == 1 {
            coef *= parse_rational(base).map_err(|_| bad(s))?;
        } else {
            return Err(bad(s));
        }
    }
    Ok(PowerSumPoly::term(Monomial::new(parts, pf2), coef))
}

impl std::str::FromStr for PowerSumPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = PowerSumPoly::zero();
        let mut sign_negative = false;
        let mut expect_term = true;
        for tok in tokens {
            if expect_term {
                let (neg, body) = match tok.strip_prefix('-') {
                    Some(b) if !b.is_empty() => (true, b),
                    _ => (false, tok),
                };
                let t = parse_term(body)?;
                acc = if neg != sign_negative { &acc - &t } else { &acc + &t };
                expect_term = false;
            } else {
                sign_negative = match tok {
                    "+" => false,
                    "-" => true,
                    _ => return Err(bad(tok)),
                };
                expect_term = true;
            }
        }
        if expect_term {
            return Err(Error::Parse(format!("dangling operator in {s:?}")));
        }
        Ok(acc)
    }
}

impl Identity {
    /// Inverse of `Display`.
    pub fn from_text(spec: AlgebraSpec, text: &str) -> Result<Identity> {
        let (lhs, rhs) = text.split_once('=').ok_or_else(|| Error::Parse(format!("no '=' in {text:?}")))?;
        let lhs = lhs.trim();
        let lhs = if let Some(m) = indexed(lhs, "p") {
            Lhs::PowerSum(m)
        } else if let Some(m) = indexed(lhs, "e") {
            Lhs::Elementary(m)
        } else {
            return Err(Error::Parse(format!("bad left-hand side {lhs:?}")));
        };
        Ok(Identity::new(spec, lhs, rhs.parse()?))
    }
}
