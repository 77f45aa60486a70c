//! Univariate polynomials over a finite field, used both as the ring
//! `F_q[t]` and as polynomials in `X` over residue fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::field::{format_poly, Field, FqElem};
use crate::error::{Error, Result};

/// Degree with a dedicated sentinel for the zero polynomial, so that
/// `deg(fg) = deg f + deg g` holds unconditionally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    field: Field,
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FqElem>) -> FqPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> FqPoly {
        FqPoly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> FqPoly {
        FqPoly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> FqPoly {
        FqPoly::constant(field, FqElem::ONE)
    }

    pub fn constant(field: &Field, c: FqElem) -> FqPoly {
        FqPoly::new(field, vec![c])
    }

    /// The variable itself.
    pub fn var(field: &Field) -> FqPoly {
        FqPoly::monomial(field, FqElem::ONE, 1)
    }

    pub fn monomial(field: &Field, c: FqElem, n: usize) -> FqPoly {
        let mut coeffs = vec![FqElem::ZERO; n + 1];
        coeffs[n] = c;
        FqPoly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an option, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FqElem::ONE)
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn scale(&self, c: FqElem) -> FqPoly {
        let f = &self.field;
        FqPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplies by `var^n`.
    pub fn shift(&self, n: usize) -> FqPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FqElem::ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        FqPoly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn monic(&self) -> FqPoly {
        match self.field.inv(self.leading()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    pub fn divrem(&self, d: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let f = &self.field;
        let dd = d.deg().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((FqPoly::zero(f), self.clone()));
        }
        let mut quot = vec![FqElem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[i - dd] = factor;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(factor, dc));
            }
        }
        rem.truncate(dd);
        Ok((FqPoly::new(f, quot), FqPoly::new(f, rem)))
    }

    pub fn rem(&self, d: &FqPoly) -> Result<FqPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient when `d` is known to divide `self`.
    pub fn div_exact(&self, d: &FqPoly) -> Result<FqPoly> {
        let (q, r) = self.divrem(d)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    pub fn divides(&self, other: &FqPoly) -> bool {
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    pub fn pow(&self, mut e: u64) -> FqPoly {
        let mut base = self.clone();
        let mut acc = FqPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powmod(&self, mut e: u64, m: &FqPoly) -> Result<FqPoly> {
        let mut base = self.rem(m)?;
        let mut acc = FqPoly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> FqPoly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        FqPoly::new(f, coeffs)
    }

    /// `self(g)`.
    pub fn compose(&self, g: &FqPoly) -> FqPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(FqPoly::zero(&self.field), |acc, &c| {
                &(&acc * g) + &FqPoly::constant(&self.field, c)
            })
    }

    /// For a polynomial in `var^p` only, the `p`-th root.
    pub fn pth_root(&self) -> FqPoly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pth_root(c))
            .collect();
        FqPoly::new(f, coeffs)
    }

    /// Re-reads the coefficients in a field that contains this one.
    pub fn lift(&self, ext: &Field) -> FqPoly {
        debug_assert!(ext.contains(&self.field));
        FqPoly {
            field: ext.clone(),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn format_with(&self, var: &str) -> String {
        let idx: Vec<u32> = self.coeffs.iter().map(|c| c.index()).collect();
        format_poly(&self.field, &idx, var)
    }

    /// Number of times `pi` divides `self` (`None` for zero).
    pub fn multiplicity(&self, pi: &FqPoly) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(pi).ok()?;
            if !r.is_zero() {
                return Some(n);
            }
            cur = q;
            n += 1;
        }
    }
}

/// Monic greatest common divisor.
pub fn poly_gcd(a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// Returns `(g, s, u)` with `s a + u b = g`, `g` monic.
pub fn poly_ext_gcd(a: &FqPoly, b: &FqPoly) -> Result<(FqPoly, FqPoly, FqPoly)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let field = a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (FqPoly::one(field), FqPoly::zero(field));
    let (mut u0, mut u1) = (FqPoly::zero(field), FqPoly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let u = &u0 - &(&q * &u1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        u0 = u1;
        u1 = u;
    }
    let inv = field.inv(r0.leading())?;
    Ok((r0.scale(inv), s0.scale(inv), u0.scale(inv)))
}

impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("t"))
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqPoly({})", self)
    }
}

impl Add for &FqPoly {
    type Output = FqPoly;
    fn add(self, rhs: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        FqPoly::new(f, coeffs)
    }
}

impl Sub for &FqPoly {
    type Output = FqPoly;
    fn sub(self, rhs: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        FqPoly::new(f, coeffs)
    }
}

impl Neg for &FqPoly {
    type Output = FqPoly;
    fn neg(self) -> FqPoly {
        let f = &self.field;
        FqPoly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &FqPoly {
    type Output = FqPoly;
    fn mul(self, rhs: &FqPoly) -> FqPoly {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return FqPoly::zero(f);
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FqPoly::new(f, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FqPoly {
            type Output = FqPoly;
            fn $m(self, rhs: FqPoly) -> FqPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let f3 = f(3);
        let a = FqPoly::from_ints(&f3, &[-1, 0, 1]);
        let b = FqPoly::from_ints(&f3, &[-1, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), b);
        let c = FqPoly::from_ints(&f3, &[2, 0, 2]);
        assert_eq!(poly_gcd(&c, &FqPoly::zero(&f3)).unwrap(), c.monic());
        let f2 = f(2);
        let t = FqPoly::var(&f2);
        let t1 = FqPoly::from_ints(&f2, &[1, 1]);
        assert!(poly_gcd(&t, &t1).unwrap().is_one());
        let z = FqPoly::zero(&f2);
        assert_eq!(poly_gcd(&z, &z), Err(Error::BothZero));
    }

    #[test]
    fn degree_sentinel_is_additive() {
        let f2 = f(2);
        let z = FqPoly::zero(&f2);
        let t = FqPoly::var(&f2);
        assert_eq!((&z * &t).degree(), z.degree() + t.degree());
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn ext_gcd_bezout() {
        let f5 = f(5);
        let a = FqPoly::from_ints(&f5, &[1, 2, 3, 1]);
        let b = FqPoly::from_ints(&f5, &[4, 0, 1]);
        let (g, s, u) = poly_ext_gcd(&a, &b).unwrap();
        assert_eq!(&(&s * &a) + &(&u * &b), g);
    }

    #[test]
    fn display() {
        let f3 = f(3);
        assert_eq!(FqPoly::from_ints(&f3, &[1, 2, 0, 1]).to_string(), "t^3+2*t+1");
        let f4 = f(4);
        let g1 = f4.from_coeffs(&[1, 1]);
        let p = FqPoly::new(&f4, vec![FqElem::ONE, FqElem::ZERO, g1]);
        assert_eq!(p.to_string(), "(g+1)*t^2+1");
        assert_eq!(FqPoly::constant(&f4, g1).to_string(), "g+1");
        let p = FqPoly::new(&f4, vec![g1, FqElem::ONE]);
        assert_eq!(p.to_string(), "t+g+1");
    }
}
