//! Formal expressions in the named generators of E and L.

use super::GradedError;
use crate::exact_geometry::linalg::{format_rational, parse_rational, to_f64, Rational};
use crate::ring_values::ExactReal;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Ring {
    E,
    L,
}

/// An angle `θ`, kept exact when it is a rational multiple of π or the
/// arccosine of a rational.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Angle {
    PiTimes(Rational),
    Acos(Rational),
    /// Radians, stored as the bits of an `f64`.
    Radians(u64),
}

impl Angle {
    pub fn pi_times(n: i64, d: i64) -> Angle {
        Angle::PiTimes(Rational::new(n.into(), d.into()))
    }

    pub fn radians(x: f64) -> Angle {
        Angle::Radians(x.to_bits())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Angle::PiTimes(r) => to_f64(r) * std::f64::consts::PI,
            Angle::Acos(c) => to_f64(c).acos(),
            Angle::Radians(b) => f64::from_bits(*b),
        }
    }

    /// `θ / 2π`.
    pub fn fraction(&self) -> ExactReal {
        match self {
            Angle::PiTimes(r) => ExactReal::rational(r / Rational::from_integer(2.into())),
            Angle::Acos(c) => ExactReal::angle_fraction(&(c * c), sign_of(c)),
            Angle::Radians(_) => ExactReal::numeric(self.to_f64() / std::f64::consts::TAU),
        }
    }

    /// `θ / π` when it is rational.
    pub fn pi_multiple(&self) -> Option<Rational> {
        match self {
            Angle::PiTimes(r) => Some(r.clone()),
            Angle::Acos(c) if c.is_zero() => Some(Rational::new(1.into(), 2.into())),
            Angle::Acos(c) if c.is_one() => Some(Rational::zero()),
            Angle::Acos(c) if *c == -Rational::one() => Some(Rational::one()),
            _ => None,
        }
    }

    /// `(cos² θ, sign cos θ)` when `cos² θ` is rational.
    pub fn cos2(&self) -> Option<(Rational, i8)> {
        match self {
            Angle::Acos(c) => Some((c * c, sign_of(c))),
            Angle::PiTimes(r) => {
                // cos²(rπ) = (1 + cos 2rπ)/2 is rational iff 2r has denominator 1, 2 or 3.
                let two_r = r * Rational::from_integer(2.into());
                let den = two_r.denom().to_i64()?;
                let num = two_r.numer().mod_floor(&BigInt::from(2 * den)).to_i64()?;
                let half = Rational::new(1.into(), 2.into());
                let cos_2: Rational = match (num, den) {
                    (0, 1) => Rational::one(),
                    (1, 1) => -Rational::one(),
                    (_, 2) => Rational::zero(),
                    (1, 3) | (5, 3) => half,
                    (2, 3) | (4, 3) => -half,
                    _ => return None,
                };
                let c2 = (Rational::one() + cos_2) / Rational::from_integer(2.into());
                let x = to_f64(r) * std::f64::consts::PI;
                let c = x.cos();
                let s = if c2.is_zero() { 0 } else if c > 0.0 { 1 } else { -1 };
                Some((c2, s))
            }
            Angle::Radians(_) => None,
        }
    }
}

fn sign_of(c: &Rational) -> i8 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiTimes(r) => {
                let (n, d) = (r.numer(), r.denom());
                let head = if n.is_one() {
                    String::new()
                } else if *n == BigInt::from(-1) {
                    "-".into()
                } else {
                    n.to_string()
                };
                if d.is_one() {
                    write!(f, "{head}pi")
                } else {
                    write!(f, "{head}pi/{d}")
                }
            }
            Angle::Acos(c) => write!(f, "acos({})", format_rational(c)),
            Angle::Radians(_) => write!(f, "{}", self.to_f64()),
        }
    }
}

/// A named generator of E (`p`, `q(λ)`) or L (`t`, `d`, `s`, `d'`, `a(θ)`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    P,
    Q(Rational),
    T,
    D,
    S,
    Dp,
    A(Angle),
}

impl Generator {
    pub fn degree(&self) -> usize {
        match self {
            Generator::A(_) => 2,
            _ => 1,
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            Generator::P | Generator::Q(_) => Ring::E,
            _ => Ring::L,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::P => f.write_str("p"),
            Generator::Q(l) => write!(f, "q({})", format_rational(l)),
            Generator::T => f.write_str("t"),
            Generator::D => f.write_str("d"),
            Generator::S => f.write_str("s"),
            Generator::Dp => f.write_str("d'"),
            Generator::A(a) => write!(f, "a({a})"),
        }
    }
}

pub type Monomial = BTreeMap<Generator, u32>;

/// An integer combination of monomials in the generators of one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedExpr {
    pub ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

fn monomial_degree(m: &Monomial) -> usize {
    m.iter().map(|(g, k)| g.degree() * *k as usize).sum()
}

impl NamedExpr {
    pub fn zero(ring: Ring) -> Self {
        NamedExpr { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, k: i64) -> Self {
        let mut e = NamedExpr::zero(ring);
        e.add_term(Monomial::new(), BigInt::from(k));
        e
    }

    pub fn gen(g: Generator) -> Self {
        let ring = g.ring();
        let mut e = NamedExpr::zero(ring);
        e.add_term(BTreeMap::from([(g, 1)]), BigInt::one());
        e
    }

    pub fn t() -> Self {
        Self::gen(Generator::T)
    }
    pub fn d() -> Self {
        Self::gen(Generator::D)
    }
    pub fn s() -> Self {
        Self::gen(Generator::S)
    }
    pub fn dp() -> Self {
        Self::gen(Generator::Dp)
    }
    pub fn a(theta: Angle) -> Self {
        Self::gen(Generator::A(theta))
    }
    pub fn p() -> Self {
        Self::gen(Generator::P)
    }
    pub fn q(lambda: Rational) -> Self {
        Self::gen(Generator::Q(lambda))
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let e = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree of a monomial; 0 for constants and for zero.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(monomial_degree).max().unwrap_or(0)
    }

    fn check_ring(&self, o: &NamedExpr) -> Result<Ring, GradedError> {
        if self.ring == o.ring {
            Ok(self.ring)
        } else if self.terms.keys().all(|m| m.is_empty()) {
            Ok(o.ring)
        } else if o.terms.keys().all(|m| m.is_empty()) {
            Ok(self.ring)
        } else {
            Err(GradedError::MixedRing)
        }
    }

    pub fn add(&self, o: &NamedExpr) -> Result<NamedExpr, GradedError> {
        let mut r = NamedExpr { ring: self.check_ring(o)?, terms: self.terms.clone() };
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn neg(&self) -> NamedExpr {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, o: &NamedExpr) -> Result<NamedExpr, GradedError> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> NamedExpr {
        let mut r = NamedExpr::zero(self.ring);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * k);
        }
        r
    }

    pub fn mul(&self, o: &NamedExpr) -> Result<NamedExpr, GradedError> {
        let mut r = NamedExpr::zero(self.check_ring(o)?);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                for (g, k) in m2 {
                    *m.entry(g.clone()).or_insert(0) += k;
                }
                r.add_term(m, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Result<NamedExpr, GradedError> {
        let mut r = NamedExpr::constant(self.ring, 1);
        for _ in 0..k {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// Parses an expression, inferring the ring from its generators.
    pub fn parse(s: &str) -> Result<NamedExpr, GradedError> {
        Parser::new(s, None).run()
    }

    /// Parses an expression in a given ring (needed for bare integers).
    pub fn parse_in(ring: Ring, s: &str) -> Result<NamedExpr, GradedError> {
        let e = Parser::new(s, Some(ring)).run()?;
        if e.terms.keys().any(|m| m.keys().any(|g| g.ring() != ring)) {
            return Err(GradedError::MixedRing);
        }
        Ok(NamedExpr { ring, ..e })
    }
}

impl fmt::Display for NamedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            let body: Vec<String> = m
                .iter()
                .map(|(g, k)| if *k == 1 { g.to_string() } else { format!("{g}^{k}") })
                .collect();
            match (a.is_one(), body.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => write!(f, "{}", body.join("*"))?,
                (false, false) => write!(f, "{a}*{}", body.join("*"))?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    i: usize,
    ring: Option<Ring>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: Option<Ring>) -> Self {
        Parser { src, chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(), i: 0, ring }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.src.len(), |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, GradedError> {
        Err(GradedError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn run(mut self) -> Result<NamedExpr, GradedError> {
        let e = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(e)
    }

    fn unit(&self) -> Result<Ring, GradedError> {
        match self.ring {
            Some(r) => Ok(r),
            None => Ok(Ring::L),
        }
    }

    fn expr(&mut self) -> Result<NamedExpr, GradedError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '(' || "ptdsqa".contains(c))
    }

    fn term(&mut self) -> Result<NamedExpr, GradedError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?)?;
            } else if self.starts_factor() {
                acc = acc.mul(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<NamedExpr, GradedError> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<NamedExpr, GradedError> {
        let base = self.primary()?;
        if self.eat('^') {
            let k = self.integer()?;
            let k = k.to_u32().filter(|k| *k <= 64);
            match k {
                Some(k) => base.pow(k),
                None => self.err("exponent out of range"),
            }
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<BigInt, GradedError> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.i].iter().map(|(_, c)| *c).collect();
        Ok(s.parse().expect("digits"))
    }

    /// The raw text between a `(` just consumed and its matching `)`.
    fn group_text(&mut self) -> Result<String, GradedError> {
        let mut depth = 1;
        let start = self.i;
        while let Some(c) = self.peek() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        let s = self.chars[start..self.i].iter().map(|(_, c)| *c).collect();
                        self.i += 1;
                        return Ok(s);
                    }
                }
                _ => {}
            }
            self.i += 1;
        }
        self.err("unbalanced parenthesis")
    }

    fn primary(&mut self) -> Result<NamedExpr, GradedError> {
        let Some(c) = self.peek() else {
            return self.err("unexpected end of input");
        };
        if c.is_ascii_digit() {
            let k = self.integer()?;
            let mut e = NamedExpr::zero(self.unit()?);
            e.add_term(Monomial::new(), k);
            return Ok(e);
        }
        self.i += 1;
        match c {
            '(' => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            'p' => Ok(NamedExpr::p()),
            't' => Ok(NamedExpr::t()),
            's' => Ok(NamedExpr::s()),
            'd' => Ok(if self.eat('\'') || self.eat('′') { NamedExpr::dp() } else { NamedExpr::d() }),
            'q' => {
                if !self.eat('(') {
                    return self.err("expected '(' after q");
                }
                let at = self.pos();
                let txt = self.group_text()?;
                match parse_rational(&txt) {
                    Some(l) if !l.is_negative() => Ok(NamedExpr::q(l)),
                    _ => Err(GradedError::Parse { pos: at, msg: format!("bad length {txt:?}") }),
                }
            }
            'a' => {
                if !self.eat('(') {
                    return self.err("expected '(' after a");
                }
                let at = self.pos();
                let txt = self.group_text()?;
                parse_angle(&txt)
                    .map(NamedExpr::a)
                    .ok_or(GradedError::Parse { pos: at, msg: format!("bad angle {txt:?}") })
            }
            _ => {
                self.i -= 1;
                self.err(format!("unexpected character {c:?}"))
            }
        }
    }
}

/// Angles: `pi`, `2pi/3`, `pi/4`, `3*pi/2`, `acos(1/3)`, or radians (`2`, `0.5`).
pub fn parse_angle(s: &str) -> Option<Angle> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('π', "pi");
    if let Some(inner) = s.strip_prefix("acos(").and_then(|r| r.strip_suffix(')')) {
        let c = parse_rational(inner)?;
        return (c.abs() <= Rational::one()).then_some(Angle::Acos(c));
    }
    if let Some(k) = s.find("pi") {
        let head = s[..k].trim_end_matches('*');
        let coef = match head {
            "" => Rational::one(),
            "-" => -Rational::one(),
            h => parse_rational(h)?,
        };
        let tail = &s[k + 2..];
        let den = if tail.is_empty() {
            Rational::one()
        } else {
            let d = parse_rational(tail.strip_prefix('/')?)?;
            if d.is_zero() {
                return None;
            }
            d
        };
        return Some(Angle::PiTimes(coef / den));
    }
    if let Some(r) = parse_rational(&s) {
        return Some(Angle::radians(to_f64(&r)));
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite()).map(Angle::radians)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::qfrac;

    #[test]
    fn parse_and_print() {
        let e = NamedExpr::parse("t*d - s").unwrap();
        assert_eq!(e.ring, Ring::L);
        assert_eq!(e.degree(), 2);
        let f = NamedExpr::parse("2d - t - s").unwrap();
        assert_eq!(f.to_string(), "-t + 2*d - s");
        let g = NamedExpr::parse("(s+t)(s-t)").unwrap();
        assert_eq!(g, NamedExpr::parse("s^2 - t^2").unwrap());
        let h = NamedExpr::parse("d d' - a(pi/2)").unwrap();
        assert_eq!(h.degree(), 2);
        assert_eq!(NamedExpr::parse("p*q(3/2) + 2p^2").unwrap().ring, Ring::E);
        assert!(matches!(NamedExpr::parse("p*t"), Err(GradedError::MixedRing)));
        assert!(matches!(NamedExpr::parse("t +* d"), Err(GradedError::Parse { .. })));
    }

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi/3"), Some(Angle::pi_times(1, 3)));
        assert_eq!(parse_angle("2*pi"), Some(Angle::pi_times(2, 1)));
        assert_eq!(parse_angle("3π/2"), Some(Angle::pi_times(3, 2)));
        assert_eq!(parse_angle("acos(1/3)"), Some(Angle::Acos(qfrac(1, 3))));
        assert_eq!(parse_angle("2"), Some(Angle::radians(2.0)));
        assert_eq!(Angle::pi_times(1, 3).cos2(), Some((qfrac(1, 4), 1)));
        assert_eq!(Angle::pi_times(2, 3).cos2(), Some((qfrac(1, 4), -1)));
        assert_eq!(Angle::pi_times(1, 2).cos2(), Some((qfrac(0, 1), 0)));
        assert_eq!(Angle::pi_times(1, 4).cos2(), Some((qfrac(1, 2), 1)));
        assert_eq!(Angle::pi_times(5, 6).cos2(), Some((qfrac(3, 4), -1)));
        assert_eq!(Angle::pi_times(1, 5).cos2(), None);
        assert_eq!(Angle::pi_times(1, 3).fraction(), ExactReal::rational(qfrac(1, 6)));
        assert_eq!(Angle::Acos(qfrac(1, 2)).fraction(), ExactReal::rational(qfrac(1, 6)));
    }
}
