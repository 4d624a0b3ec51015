//! Small expression languages for the command line.
//!
//! Mining targets are products of powers of `pi` and `zeta(n1,...,nd)`, separated by
//! commas: `pi^2,zeta(1)^2,zeta(1,1)`. Polynomials in F_q[θ, t] are sums of terms such as
//! `2*theta^3*t`, with coefficients given as element codes.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::laurent::LaurentSeries;
use crate::poly::{BiPoly, FqPoly};
use crate::special::{mzv, pi_carlitz, Caps, IndexTuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Pi,
    Zeta(IndexTuple),
}

/// A product of atom powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    factors: Vec<(Atom, u32)>,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (atom, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match atom {
                Atom::Pi => write!(f, "pi")?,
                Atom::Zeta(idx) => {
                    let w: Vec<String> = idx.weights().iter().map(u32::to_string).collect();
                    write!(f, "zeta({})", w.join(","))?
                }
            }
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Monomial {
    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.factors
    }

    fn pi_power(&self) -> i64 {
        self.factors.iter().filter(|(a, _)| *a == Atom::Pi).map(|(_, e)| *e as i64).sum()
    }

    /// Value to O(w^prec).
    pub fn eval(&self, field: &Field, prec: i64, caps: &Caps) -> Result<LaurentSeries> {
        // Each factor of π̃ has valuation -q; ζ values have valuation 0.
        let work = prec + field.q() as i64 * (self.pi_power() + 1);
        let mut acc = LaurentSeries::one(field);
        for (atom, e) in &self.factors {
            let base = match atom {
                Atom::Pi => pi_carlitz(field, work),
                Atom::Zeta(idx) => mzv(field, idx, work, caps)?,
            };
            acc = acc.mul(&base.pow(*e as u64));
        }
        Ok(acc.truncate(prec))
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{tok}'")))
        }
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(self.rest().len());
        if len == 0 {
            return None;
        }
        let w = &self.rest()[..len];
        self.pos += len;
        Some(w)
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let s = &self.rest()[..len];
        self.pos += len;
        s.parse().map_err(|_| self.error("number out of range"))
    }

    fn peek_digit(&mut self) -> bool {
        self.skip_ws();
        self.rest().starts_with(|c: char| c.is_ascii_digit())
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat("^") {
            self.int()
        } else {
            Ok(1)
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {} in {:?}", self.pos, self.src))
    }
}

fn parse_monomial(c: &mut Cursor) -> Result<Monomial> {
    let mut factors = Vec::new();
    loop {
        let atom = match c.word() {
            Some("pi") => Atom::Pi,
            Some("zeta") => {
                c.expect("(")?;
                let mut w = vec![c.int()?];
                while c.eat(",") {
                    w.push(c.int()?);
                }
                c.expect(")")?;
                Atom::Zeta(IndexTuple::new(w)?)
            }
            Some(other) => return Err(c.error(&format!("unknown symbol '{other}'"))),
            None => return Err(c.error("expected 'pi' or 'zeta(...)'")),
        };
        factors.push((atom, c.exponent()?));
        if !c.eat("*") {
            return Ok(Monomial { factors });
        }
    }
}

/// Parses a comma-separated list of monomials.
pub fn parse_targets(src: &str) -> Result<Vec<Monomial>> {
    let mut c = Cursor::new(src);
    let mut out = vec![parse_monomial(&mut c)?];
    while c.eat(",") {
        out.push(parse_monomial(&mut c)?);
    }
    if !c.at_end() {
        return Err(c.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a polynomial in `theta` and `t`; coefficients are element codes in [0, q).
pub fn parse_bipoly(field: &Field, src: &str) -> Result<BiPoly> {
    let mut c = Cursor::new(src);
    let mut acc = BiPoly::zero(field);
    let mut negate = c.eat("-");
    loop {
        let mut coeff = Fq::ONE;
        let (mut a, mut b) = (0usize, 0usize);
        loop {
            if c.peek_digit() {
                let code = c.int()?;
                coeff = field.mul(coeff, field.elem(code)?);
            } else {
                match c.word() {
                    Some("theta") => a += c.exponent()? as usize,
                    Some("t") => b += c.exponent()? as usize,
                    Some(other) => return Err(c.error(&format!("unknown symbol '{other}'"))),
                    None => return Err(c.error("expected a coefficient, 'theta' or 't'")),
                }
            }
            if !c.eat("*") {
                break;
            }
        }
        if negate {
            coeff = field.neg(coeff);
        }
        let mut rows = vec![FqPoly::zero(field); b + 1];
        rows[b] = FqPoly::monomial(field, coeff, a);
        acc = acc.add(&BiPoly::new(field, rows));
        if c.eat("+") {
            negate = false;
        } else if c.eat("-") {
            negate = true;
        } else {
            break;
        }
    }
    if !c.at_end() {
        return Err(c.error("unexpected trailing input"));
    }
    Ok(acc)
}

/// Parses `1,1,2` into an index tuple.
pub fn parse_tuple(src: &str) -> Result<IndexTuple> {
    let weights = src
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad weight {s:?} in {src:?}"))))
        .collect::<Result<Vec<_>>>()?;
    IndexTuple::new(weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_round_trip() {
        let ts = parse_targets("pi^2, zeta(1)^2 ,zeta(1,1)").unwrap();
        assert_eq!(ts.len(), 3);
        let shown: Vec<String> = ts.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["pi^2", "zeta(1)^2", "zeta(1,1)"]);
        assert_eq!(parse_targets("pi*zeta(2)").unwrap()[0].factors().len(), 2);
    }

    #[test]
    fn bad_targets_are_parse_errors() {
        for bad in ["", "pi^", "zeta()", "zeta(0)", "e^2", "pi,,pi", "pi)"] {
            assert!(parse_targets(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn polynomials() {
        let f = Field::new(3).unwrap();
        let h = parse_bipoly(&f, "t + theta^2").unwrap();
        assert_eq!(h, BiPoly::from_int_matrix(&f, &[vec![0, 0, 1], vec![1]]).unwrap());
        let g = parse_bipoly(&f, "-theta*t^2 + 2").unwrap();
        assert_eq!(g, BiPoly::from_int_matrix(&f, &[vec![2], vec![], vec![0, 2]]).unwrap());
        assert!(parse_bipoly(&f, "3*t").is_err());
        assert!(parse_bipoly(&f, "x").is_err());
    }

    #[test]
    fn monomial_value_has_expected_valuation() {
        let f = Field::new(3).unwrap();
        let m = &parse_targets("pi^2*zeta(1)").unwrap()[0];
        let v = m.eval(&f, 40, &Caps::default()).unwrap();
        assert_eq!(v.val(), Some(-6));
        assert_eq!(v.prec(), crate::laurent::Precision::Finite(40));
    }
}
