//! Text syntax for field elements, polynomials in `t`, points and maps.
//!
//! Constants use the field generator `g` (only for non-prime fields), the
//! function-field variable is `t`, and maps use `X` (affine) or `X`, `Y`
//! (homogeneous, as `[F : G]`). Operators: `+ - * / ^` and parentheses;
//! juxtaposition multiplies.

use std::collections::BTreeMap;

use crate::algebra::{Field, FqElem, FqPoly, RatFunc};
use crate::error::{Error, Result};
use crate::maps::RationalMap;
use crate::projective::ProjPoint;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Sym(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(d as u64))
                    .ok_or_else(|| Error::Parse("integer literal too large".into()))?;
                chars.next();
            }
            out.push(Tok::Num(n));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            chars.next();
        } else if c.is_ascii_alphabetic() {
            out.push(Tok::Sym(c));
            chars.next();
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(u64),
    Sym(char),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Bin('/', Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Sym(_) | Tok::Op('('))) {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => {
                let n = i64::try_from(*n).map_err(|_| Error::Parse("exponent too large".into()))?;
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }))
            }
            _ => Err(Error::Parse("exponent must be an integer literal".into())),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Sym(c)) => {
                self.pos += 1;
                Ok(Expr::Sym(c))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in '{s}'")));
    }
    Ok(e)
}

/// Operations shared by the evaluation targets.
trait Value: Sized + Clone {
    fn from_scalar(r: RatFunc) -> Self;
    fn symbol(c: char, field: &Field) -> Result<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn one(field: &Field) -> Self;

    fn pow(&self, e: i64, field: &Field) -> Result<Self> {
        let mut acc = Self::one(field);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(self);
        }
        if e < 0 {
            Self::one(field).div(&acc)
        } else {
            Ok(acc)
        }
    }
}

fn scalar_symbol(c: char, field: &Field) -> Result<RatFunc> {
    match c {
        't' => Ok(RatFunc::from_poly(FqPoly::var(field))),
        'g' if field.symbol() == Some('g') => {
            Ok(RatFunc::constant(field, field.from_coeffs(&[0, 1])))
        }
        'g' => Err(Error::Parse(
            "generator 'g' is only available for non-prime fields".into(),
        )),
        other => Err(Error::Parse(format!("unexpected symbol '{other}'"))),
    }
}

impl Value for RatFunc {
    fn from_scalar(r: RatFunc) -> Self {
        r
    }
    fn symbol(c: char, field: &Field) -> Result<Self> {
        scalar_symbol(c, field)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        RatFunc::div(self, o)
    }
    fn one(field: &Field) -> Self {
        RatFunc::one(field)
    }
}

/// A fraction of polynomials in `X` with coefficients in `F_q(t)`.
#[derive(Clone)]
struct XFrac {
    num: Vec<RatFunc>,
    den: Vec<RatFunc>,
}

fn xpoly_trim(mut v: Vec<RatFunc>) -> Vec<RatFunc> {
    while v.len() > 1 && v.last().is_some_and(RatFunc::is_zero) {
        v.pop();
    }
    v
}

fn xpoly_add(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    let field = a[0].field();
    let zero = RatFunc::zero(field);
    let n = a.len().max(b.len());
    xpoly_trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn xpoly_neg(a: &[RatFunc]) -> Vec<RatFunc> {
    a.iter().map(|c| -c).collect()
}

fn xpoly_mul(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    let field = a[0].field();
    let mut out = vec![RatFunc::zero(field); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    xpoly_trim(out)
}

impl Value for XFrac {
    fn from_scalar(r: RatFunc) -> Self {
        let one = RatFunc::one(r.field());
        XFrac {
            num: vec![r],
            den: vec![one],
        }
    }
    fn symbol(c: char, field: &Field) -> Result<Self> {
        match c {
            'X' => Ok(XFrac {
                num: vec![RatFunc::zero(field), RatFunc::one(field)],
                den: vec![RatFunc::one(field)],
            }),
            'Y' => Err(Error::Parse("'Y' is only allowed in homogeneous [F : G] literals".into())),
            _ => scalar_symbol(c, field).map(XFrac::from_scalar),
        }
    }
    fn add(&self, o: &Self) -> Self {
        XFrac {
            num: xpoly_add(&xpoly_mul(&self.num, &o.den), &xpoly_mul(&o.num, &self.den)),
            den: xpoly_mul(&self.den, &o.den),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&XFrac {
            num: xpoly_neg(&o.num),
            den: o.den.clone(),
        })
    }
    fn mul(&self, o: &Self) -> Self {
        XFrac {
            num: xpoly_mul(&self.num, &o.num),
            den: xpoly_mul(&self.den, &o.den),
        }
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.num.iter().all(RatFunc::is_zero) {
            return Err(Error::DivisionByZero);
        }
        Ok(XFrac {
            num: xpoly_mul(&self.num, &o.den),
            den: xpoly_mul(&self.den, &o.num),
        })
    }
    fn one(field: &Field) -> Self {
        XFrac::from_scalar(RatFunc::one(field))
    }
}

/// A polynomial in `X`, `Y` keyed by `(deg_X, deg_Y)`.
#[derive(Clone)]
struct XYPoly {
    field: Field,
    terms: BTreeMap<(usize, usize), RatFunc>,
}

impl XYPoly {
    fn clean(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }
}

impl Value for XYPoly {
    fn from_scalar(r: RatFunc) -> Self {
        let field = r.field().clone();
        XYPoly {
            field,
            terms: BTreeMap::from([((0, 0), r)]),
        }
        .clean()
    }
    fn symbol(c: char, field: &Field) -> Result<Self> {
        let key = match c {
            'X' => (1, 0),
            'Y' => (0, 1),
            _ => return scalar_symbol(c, field).map(XYPoly::from_scalar),
        };
        Ok(XYPoly {
            field: field.clone(),
            terms: BTreeMap::from([(key, RatFunc::one(field))]),
        })
    }
    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let e = terms.entry(*k).or_insert_with(|| RatFunc::zero(&self.field));
            *e = &*e + c;
        }
        XYPoly {
            field: self.field.clone(),
            terms,
        }
        .clean()
    }
    fn sub(&self, o: &Self) -> Self {
        let neg = XYPoly {
            field: o.field.clone(),
            terms: o.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        };
        self.add(&neg)
    }
    fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<(usize, usize), RatFunc> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                let e = terms
                    .entry((a + a2, b + b2))
                    .or_insert_with(|| RatFunc::zero(&self.field));
                *e = &*e + &(c * c2);
            }
        }
        XYPoly {
            field: self.field.clone(),
            terms,
        }
        .clean()
    }
    fn div(&self, o: &Self) -> Result<Self> {
        match o.terms.iter().collect::<Vec<_>>().as_slice() {
            [((0, 0), c)] => {
                let inv = c.inv()?;
                Ok(XYPoly {
                    field: self.field.clone(),
                    terms: self.terms.iter().map(|(k, v)| (*k, v * &inv)).collect(),
                })
            }
            [] => Err(Error::DivisionByZero),
            _ => Err(Error::Parse(
                "homogeneous forms may only be divided by constants".into(),
            )),
        }
    }
    fn one(field: &Field) -> Self {
        XYPoly::from_scalar(RatFunc::one(field))
    }
}

fn eval<V: Value>(e: &Expr, field: &Field) -> Result<V> {
    Ok(match e {
        Expr::Num(n) => V::from_scalar(RatFunc::constant(field, field.from_int((*n % field.characteristic() as u64) as i64))),
        Expr::Sym(c) => V::symbol(*c, field)?,
        Expr::Neg(a) => V::from_scalar(RatFunc::zero(field)).sub(&eval(a, field)?),
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval::<V>(a, field)?, eval::<V>(b, field)?);
            match op {
                '+' => a.add(&b),
                '-' => a.sub(&b),
                '*' => a.mul(&b),
                _ => a.div(&b)?,
            }
        }
        Expr::Pow(a, k) => eval::<V>(a, field)?.pow(*k, field)?,
    })
}

/// An element of `F_q(t)`.
pub fn parse_ratfunc(s: &str, field: &Field) -> Result<RatFunc> {
    eval(&parse_expr(s)?, field)
}

/// An element of `F_q[t]`.
pub fn parse_poly(s: &str, field: &Field) -> Result<FqPoly> {
    let r = parse_ratfunc(s, field)?;
    if !r.is_poly() {
        return Err(Error::Parse(format!("'{s}' is not a polynomial in t")));
    }
    Ok(r.num().clone())
}

/// An element of the constant field.
pub fn parse_elem(s: &str, field: &Field) -> Result<FqElem> {
    parse_ratfunc(s, field)?
        .as_constant()
        .ok_or_else(|| Error::Parse(format!("'{s}' is not a constant")))
}

/// `[x : y]`, `inf`, or an affine coordinate.
pub fn parse_point(s: &str, field: &Field) -> Result<ProjPoint> {
    let s = s.trim();
    if s == "inf" || s == "∞" {
        return Ok(ProjPoint::infinity(field));
    }
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let (x, y) = inner
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("point literal '{s}' needs ':'")))?;
        return ProjPoint::from_ratfuncs(&parse_ratfunc(x, field)?, &parse_ratfunc(y, field)?);
    }
    Ok(ProjPoint::from_ratfunc(&parse_ratfunc(s, field)?))
}

/// An affine literal such as `(X^2 + t)/X^2` (optionally prefixed by
/// `phi =`) or a homogeneous literal `[X^2 + Y^2 : X^2]`.
pub fn parse_map(s: &str, field: &Field) -> Result<RationalMap> {
    let s = s.trim();
    let s = match s.split_once('=') {
        Some((lhs, rhs)) if lhs.trim().chars().all(|c| c.is_alphanumeric() || c == '_') => rhs.trim(),
        _ => s,
    };
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let (fs, gs) = inner
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("map literal '{s}' needs ':'")))?;
        let f: XYPoly = eval(&parse_expr(fs)?, field)?;
        let g: XYPoly = eval(&parse_expr(gs)?, field)?;
        let degree = f
            .terms
            .keys()
            .chain(g.terms.keys())
            .map(|(a, b)| a + b)
            .next()
            .ok_or(Error::DegenerateMap)?;
        let form = |p: &XYPoly| -> Result<Vec<RatFunc>> {
            let mut out = vec![RatFunc::zero(field); degree + 1];
            for ((a, b), c) in &p.terms {
                if a + b != degree {
                    return Err(Error::Parse("forms must be homogeneous of equal degree".into()));
                }
                out[*a] = c.clone();
            }
            Ok(out)
        };
        return RationalMap::from_ratfuncs(&form(&f)?, &form(&g)?);
    }
    if s.contains('Y') {
        return Err(Error::Parse("'Y' is only allowed in homogeneous [F : G] literals".into()));
    }
    let v: XFrac = eval(&parse_expr(s)?, field)?;
    RationalMap::from_affine(&v.num, &v.den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_generators() {
        let f3 = Field::of_order(3).unwrap();
        assert_eq!(
            parse_poly("t^3+2*t+1", &f3).unwrap(),
            FqPoly::from_ints(&f3, &[1, 2, 0, 1])
        );
        assert_eq!(parse_poly("2t - 4", &f3).unwrap(), FqPoly::from_ints(&f3, &[2, 2]));
        assert!(parse_elem("g", &f3).is_err());
        let f4 = Field::of_order(4).unwrap();
        let g = parse_elem("g", &f4).unwrap();
        assert_eq!(parse_elem("g^2+g+1", &f4).unwrap(), FqElem::ZERO);
        assert_eq!(f4.format(g), "g");
        assert!(parse_poly("1/t", &f3).is_err());
        assert!(parse_poly("x + 1", &f3).is_err());
        assert!(parse_poly("(t + 1", &f3).is_err());
    }

    #[test]
    fn points() {
        let f2 = Field::of_order(2).unwrap();
        assert_eq!(parse_point("inf", &f2).unwrap(), ProjPoint::infinity(&f2));
        assert_eq!(
            parse_point("[t^2 : t]", &f2).unwrap(),
            ProjPoint::affine(FqPoly::from_ints(&f2, &[0, 1]))
        );
        assert_eq!(parse_point("1/t", &f2).unwrap(), parse_point("[1 : t]", &f2).unwrap());
    }

    #[test]
    fn map_literals_agree() {
        let f2 = Field::of_order(2).unwrap();
        let a = parse_map("(X^2+1)/X^2", &f2).unwrap();
        let b = parse_map("[X^2 + Y^2 : X^2]", &f2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(X^2+1)/X^2");
        assert_eq!(parse_map("phi = (X^2+1)/(X^2)", &f2).unwrap(), a);
        assert!(parse_map("[X^2 : X*Y]", &f2).is_err());
        assert!(parse_map("[X^2 : Y]", &f2).is_err());
    }
}
