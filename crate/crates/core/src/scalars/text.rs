//! Canonical string form of scalars.
//!
//! A scalar prints as an integer-coefficient fraction `N/D` in the variables
//! `q` and `l` (where `l` stands for `u = q^{2λ}`), e.g. `(1-l)/(1-q^2)`.
//! Each side is parenthesized when it has more than one term, terms are
//! ordered by `l`-degree then `q`-degree, and the lowest-order coefficient
//! of `D` is positive. `D` never contains `l`. Printing canonical values and
//! parsing the result gives the same value back.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::qfun::QFun;
use super::qufun::QUFun;
use super::Rational;
use crate::error::{Error, Result};

/// Integer bivariate polynomial keyed by `(l-degree, q-degree)`.
type BiPoly = BTreeMap<(usize, usize), BigInt>;

fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    let g = Poly::gcd(a, b);
    (a * b).div_exact(&g)
}

fn to_integer_form(numers: &[(usize, Poly)], den: &Poly) -> (BiPoly, BiPoly) {
    let mut lcm = BigInt::one();
    let all = numers.iter().map(|(_, p)| p).chain(std::iter::once(den));
    for p in all {
        for c in p.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
    }
    let mut num = BiPoly::new();
    let mut dd = BiPoly::new();
    for (b, p) in numers {
        for (a, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                num.insert((*b, a), (c * Rational::from_integer(lcm.clone())).to_integer());
            }
        }
    }
    for (a, c) in den.coeffs().iter().enumerate() {
        if !c.is_zero() {
            dd.insert((0, a), (c * Rational::from_integer(lcm.clone())).to_integer());
        }
    }
    let mut g = BigInt::zero();
    for c in num.values().chain(dd.values()) {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in num.values_mut().chain(dd.values_mut()) {
            *c /= &g;
        }
    }
    (num, dd)
}

fn write_bipoly(p: &BiPoly) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (&(b, a), c)) in p.iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || (a == 0 && b == 0) {
            factors.push(mag.to_string());
        }
        match a {
            0 => {}
            1 => factors.push("q".into()),
            _ => factors.push(format!("q^{a}")),
        }
        match b {
            0 => {}
            1 => factors.push("l".into()),
            _ => factors.push(format!("l^{b}")),
        }
        out.push_str(&factors.join("*"));
    }
    out
}

fn wrap(p: &BiPoly) -> String {
    let s = write_bipoly(p);
    if p.len() > 1 {
        format!("({s})")
    } else {
        s
    }
}

fn fraction_text(numers: &[(usize, Poly)], den: &Poly) -> String {
    let (num, dd) = to_integer_form(numers, den);
    if num.is_empty() {
        return "0".into();
    }
    if dd.len() == 1 && dd.get(&(0, 0)).is_some_and(|c| c.is_one()) {
        return write_bipoly(&num);
    }
    format!("{}/{}", wrap(&num), wrap(&dd))
}

pub fn qufun_to_text(x: &QUFun) -> String {
    let mut den = Poly::one();
    for c in x.coeffs() {
        if !c.is_zero() {
            den = poly_lcm(&den, c.den());
        }
    }
    // normalise the shared denominator so its lowest coefficient is 1
    if let Some(t) = den.trailing().cloned() {
        den = den.scale(&t.recip());
    }
    let numers: Vec<(usize, Poly)> = x
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(b, c)| {
            let (n, d) = c.parts();
            (b, n * &den.div_exact(d))
        })
        .collect();
    fraction_text(&numers, &den)
}

pub fn qfun_to_text(x: &QFun) -> String {
    if x.is_zero() {
        return "0".into();
    }
    fraction_text(&[(0, x.num().clone())], x.den())
}

pub fn rational_to_text(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at byte {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(BigInt::from_str(txt).unwrap())
    }

    fn exponent(&mut self) -> Result<usize> {
        if self.eat(b'^') {
            let e = self.integer()?;
            usize::try_from(e).or_else(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<((usize, usize), BigInt)> {
        let mut coeff = BigInt::one();
        let (mut a, mut b) = (0usize, 0usize);
        loop {
            match self.peek() {
                Some(b'q') => {
                    self.pos += 1;
                    a += self.exponent()?;
                }
                Some(b'l') => {
                    self.pos += 1;
                    b += self.exponent()?;
                }
                Some(c) if c.is_ascii_digit() => coeff *= self.integer()?,
                _ => return self.err("expected factor"),
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(((b, a), coeff))
    }

    /// poly := ['+'|'-'] term (('+'|'-') term)*
    fn poly(&mut self) -> Result<BiPoly> {
        let mut out = BiPoly::new();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else {
                if !self.eat(b'+') && !first {
                    break;
                }
                false
            };
            first = false;
            let (key, mut c) = self.term()?;
            if neg {
                c = -c;
            }
            let slot = out.entry(key).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                out.remove(&key);
            }
            match self.peek() {
                Some(b'+') | Some(b'-') => continue,
                _ => break,
            }
        }
        Ok(out)
    }

    fn side(&mut self) -> Result<BiPoly> {
        if self.eat(b'(') {
            let p = self.poly()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            Ok(p)
        } else {
            let neg = self.eat(b'-');
            let (key, c) = self.term()?;
            let mut p = BiPoly::new();
            if !c.is_zero() {
                p.insert(key, if neg { -c } else { c });
            }
            Ok(p)
        }
    }

    /// expr := side ['/' side] | poly
    fn expr(&mut self) -> Result<(BiPoly, BiPoly)> {
        let num = if self.peek() == Some(b'(') {
            self.side()?
        } else {
            let p = self.poly()?;
            if p.len() > 1 && self.peek() == Some(b'/') {
                return self.err("a multi-term numerator needs parentheses");
            }
            p
        };
        let den = if self.eat(b'/') {
            self.side()?
        } else {
            let mut one = BiPoly::new();
            one.insert((0, 0), BigInt::one());
            one
        };
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok((num, den))
    }
}

fn q_poly(p: &BiPoly, b: usize) -> Poly {
    let max = p.keys().filter(|k| k.0 == b).map(|k| k.1).max();
    let Some(max) = max else { return Poly::zero() };
    let mut coeffs = vec![Rational::zero(); max + 1];
    for (&(bb, a), c) in p {
        if bb == b {
            coeffs[a] = Rational::from_integer(c.clone());
        }
    }
    Poly::from_coeffs(coeffs)
}

pub fn parse_qufun(s: &str) -> Result<QUFun> {
    let (num, den) = Parser::new(s).expr()?;
    if den.keys().any(|k| k.0 > 0) {
        return Err(Error::Parse("the variable l may not appear in a denominator".into()));
    }
    let den = q_poly(&den, 0);
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let top = num.keys().map(|k| k.0).max().unwrap_or(0);
    let mut coeffs = Vec::with_capacity(top + 1);
    for b in 0..=top {
        coeffs.push(QFun::new(q_poly(&num, b), den.clone())?);
    }
    Ok(QUFun::from_coeffs(coeffs))
}

pub fn parse_qfun(s: &str) -> Result<QFun> {
    parse_qufun(s)?.as_qfun().ok_or_else(|| Error::Parse(format!("unexpected variable l in {s:?}")))
}

/// Accepts `p`, `-p` and `p/q`; floating-point literals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_coefficient_prints_as_expected() {
        // (1-u)/(1-q^2)
        let x = (&QUFun::one() - &QUFun::u()).div_qfun(&QFun::one_minus(1, 2)).unwrap();
        assert_eq!(qufun_to_text(&x), "(1-l)/(1-q^2)");
        assert_eq!(parse_qufun("(1-l)/(1-q^2)").unwrap(), x);
    }

    #[test]
    fn bare_polynomials_round_trip() {
        let x = QUFun::constant(QFun::one() + QFun::q_pow(2));
        assert_eq!(qufun_to_text(&x), "1+q^2");
        assert_eq!(parse_qufun("1+q^2").unwrap(), x);
        assert_eq!(parse_qufun("(1-q^4)/(1-q^2)").unwrap(), x);
        assert_eq!(parse_qufun("-1+l").unwrap(), QUFun::from_coeffs(vec![-QFun::one(), QFun::one()]));
        assert!(parse_qufun("1+q^2/3").is_err());
    }

    #[test]
    fn laurent_and_rational_forms() {
        let x = QFun::q() - QFun::q_pow(-1);
        assert_eq!(qfun_to_text(&x), "(-1+q^2)/q");
        assert_eq!(qfun_to_text(&QFun::q_pow(-1)), "1/q");
        let half = QFun::from_rational(Rational::new((-3).into(), 2.into()));
        assert_eq!(qfun_to_text(&half), "-3/2");
        assert_eq!(qfun_to_text(&QFun::zero()), "0");
        assert_eq!(parse_qfun("(-1+q^2)/q").unwrap(), x);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_qufun("1/(1-l)").is_err());
        assert!(parse_qufun("1/0").is_err());
        assert!(parse_qufun("q^").is_err());
        assert!(parse_qufun("1-q)").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn mixed_denominators_share_one_fraction() {
        // u/(1-q^2) + 1/q
        let x = &QUFun::u().div_qfun(&QFun::one_minus(1, 2)).unwrap() + &QUFun::constant(QFun::q_pow(-1));
        let s = qufun_to_text(&x);
        assert_eq!(s, "(1-q^2+q*l)/(q-q^3)");
        assert_eq!(parse_qufun(&s).unwrap(), x);
    }
}
