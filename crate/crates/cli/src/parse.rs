//! A small expression parser for rational functions in one variable.
//!
//! Grammar: `+ - * / ^` with parentheses, integer and `p/q` literals, and
//! the variable `u` (or `T`). Division keeps denominators factored, so the
//! divisor must be (a power/product of) geometric binomials `a + b u^d`;
//! an input like `1/(1-u)^2` parses to a `RatFun` with the factored
//! denominator intact.

use igusa_core::poly::Polynomial;
use igusa_core::rational::{rat_int, Rat};
use igusa_core::ratfun::{DenFactor, RatFun};
use num_traits::{One, Zero};

#[derive(Debug, Clone)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ratfun parse error: {}", self.0)
    }
}

/// Partially factored rational expression.
#[derive(Debug, Clone)]
struct PExpr {
    num: Polynomial,
    num_factors: Vec<DenFactor>,
    den_factors: Vec<DenFactor>,
}

impl PExpr {
    fn from_poly(p: Polynomial) -> Self {
        PExpr {
            num: p,
            num_factors: vec![],
            den_factors: vec![],
        }
    }

    fn expand_num(&self) -> Polynomial {
        let mut acc = self.num.clone();
        for f in &self.num_factors {
            let mut coeffs = vec![Rat::zero(); f.d as usize + 1];
            coeffs[0] = Rat::one();
            coeffs[f.d as usize] = -f.c.clone();
            let base = Polynomial::from_coeffs(coeffs);
            for _ in 0..f.mult {
                acc = acc.mul(&base);
            }
        }
        acc
    }

    fn to_ratfun(&self) -> Result<RatFun, ParseError> {
        RatFun::new(self.expand_num(), self.den_factors.clone())
            .map_err(|e| ParseError(e.to_string()))
    }

    fn mul(&self, other: &PExpr) -> PExpr {
        // factor binomial numerators first so products keep their shape
        let a = self.clone().factored();
        let b = other.clone().factored();
        let mut num_factors = a.num_factors;
        num_factors.extend(b.num_factors);
        let mut den_factors = a.den_factors;
        den_factors.extend(b.den_factors);
        PExpr {
            num: a.num.mul(&b.num),
            num_factors,
            den_factors,
        }
    }

    fn add(&self, other: &PExpr, negate: bool) -> Result<PExpr, ParseError> {
        let a = self.to_ratfun()?;
        let mut b = other.to_ratfun()?;
        if negate {
            b = b.scale(&-Rat::one());
        }
        let sum = a.add(&b);
        Ok(PExpr {
            num: sum.num().clone(),
            num_factors: vec![],
            den_factors: sum.den_factors().to_vec(),
        })
    }

    /// Inverts: numerator must reduce to a constant times geometric
    /// binomials.
    fn invert(&self) -> Result<PExpr, ParseError> {
        let this = self.clone().factored();
        let num_factors = this.den_factors.clone();
        let mut den_factors = this.num_factors.clone();
        // recognize the residual numerator polynomial
        let p = &this.num;
        let scalar = match p.degree() {
            None => return Err(ParseError("division by zero".into())),
            Some(0) => p.coeff(0),
            Some(d) => {
                let a0 = p.coeff(0);
                if a0.is_zero() {
                    return Err(ParseError(
                        "cannot divide by an expression vanishing at 0".into(),
                    ));
                }
                let top = p.coeff(d);
                let middle_zero = (1..d).all(|i| p.coeff(i).is_zero());
                if !middle_zero {
                    return Err(ParseError(format!(
                        "divisor {p} is not a geometric binomial a + b*u^d; \
                         factor it explicitly"
                    )));
                }
                den_factors.push(DenFactor::new(-top / &a0, d as u32, 1));
                a0
            }
        };
        if scalar.is_zero() {
            return Err(ParseError("division by zero".into()));
        }
        Ok(PExpr {
            num: Polynomial::constant(scalar.recip()),
            num_factors,
            den_factors,
        })
    }

    /// Pulls a binomial numerator `a0 + a_d u^d` into the factor list so
    /// that powers and divisions keep the factored shape.
    fn factored(mut self) -> PExpr {
        if let Some(d) = self.num.degree() {
            if d >= 1 {
                let a0 = self.num.coeff(0);
                let top = self.num.coeff(d);
                let middle_zero = (1..d).all(|i| self.num.coeff(i).is_zero());
                if middle_zero && !a0.is_zero() {
                    self.num_factors.push(DenFactor::new(-top / &a0, d as u32, 1));
                    self.num = Polynomial::constant(a0);
                }
            }
        }
        self
    }

    fn pow(&self, k: i64) -> Result<PExpr, ParseError> {
        if k < 0 {
            return self.invert()?.pow(-k);
        }
        let base = self.clone().factored();
        let mut acc = PExpr::from_poly(Polynomial::one());
        for _ in 0..k {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

struct Tokens<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.bump();
            neg = true;
        }
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError("expected an integer".into()));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let v: i64 = s
            .parse()
            .map_err(|_| ParseError(format!("integer {s} out of range")))?;
        Ok(if neg { -v } else { v })
    }
}

/// Parses an expression like `(1+u)/(1-2*u^3)^2` into a factored `RatFun`.
pub fn parse_ratfun(input: &str) -> Result<RatFun, ParseError> {
    let mut t = Tokens {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let e = parse_sum(&mut t)?;
    if t.peek().is_some() {
        return Err(ParseError(format!(
            "unexpected trailing input at byte {}",
            t.pos
        )));
    }
    e.to_ratfun()
}

fn parse_sum(t: &mut Tokens) -> Result<PExpr, ParseError> {
    let mut acc = parse_product(t)?;
    loop {
        match t.peek() {
            Some(b'+') => {
                t.bump();
                let rhs = parse_product(t)?;
                acc = acc.add(&rhs, false)?;
            }
            Some(b'-') => {
                t.bump();
                let rhs = parse_product(t)?;
                acc = acc.add(&rhs, true)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_product(t: &mut Tokens) -> Result<PExpr, ParseError> {
    let mut acc = parse_power(t)?;
    loop {
        match t.peek() {
            Some(b'*') => {
                t.bump();
                let rhs = parse_power(t)?;
                acc = acc.mul(&rhs);
            }
            Some(b'/') => {
                t.bump();
                let rhs = parse_power(t)?;
                acc = acc.mul(&rhs.invert()?);
            }
            // implicit multiplication: `2u`, `2(1-u)`, `(1-u)(1+u)`, `u(...)`
            Some(c) if c == b'(' || c == b'u' || c == b'T' || c.is_ascii_digit() => {
                let rhs = parse_power(t)?;
                acc = acc.mul(&rhs);
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_power(t: &mut Tokens) -> Result<PExpr, ParseError> {
    let base = parse_atom(t)?;
    if t.peek() == Some(b'^') {
        t.bump();
        let k = t.integer()?;
        return base.pow(k);
    }
    Ok(base)
}

fn parse_atom(t: &mut Tokens) -> Result<PExpr, ParseError> {
    match t.peek() {
        Some(b'(') => {
            t.bump();
            let e = parse_sum(t)?;
            if t.bump() != Some(b')') {
                return Err(ParseError("expected ')'".into()));
            }
            Ok(e)
        }
        Some(b'u') | Some(b'T') => {
            t.bump();
            Ok(PExpr::from_poly(Polynomial::monomial(Rat::one(), 1)))
        }
        Some(b'-') => {
            t.bump();
            let e = parse_atom(t)?;
            Ok(PExpr {
                num: e.num.scale(&-Rat::one()),
                num_factors: e.num_factors,
                den_factors: e.den_factors,
            })
        }
        Some(c) if c.is_ascii_digit() => {
            let n = t.integer()?;
            Ok(PExpr::from_poly(Polynomial::constant(rat_int(n))))
        }
        other => Err(ParseError(format!("unexpected token {other:?}"))),
    }
}
