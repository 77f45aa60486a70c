//! Elements of `F_q(t)` stored reduced with a monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, FqElem};
use super::poly::{poly_gcd, FqPoly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

impl RatFunc {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(RatFunc::zero(&field));
        }
        let g = poly_gcd(&num, &den)?;
        let (num, den) = (num.div_exact(&g)?, den.div_exact(&g)?);
        let lc = field.inv(den.leading())?;
        Ok(RatFunc {
            num: num.scale(lc),
            den: den.scale(lc),
        })
    }

    pub fn from_poly(num: FqPoly) -> RatFunc {
        let den = FqPoly::one(num.field());
        RatFunc { num, den }
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc::from_poly(FqPoly::zero(field))
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc::from_poly(FqPoly::one(field))
    }

    pub fn constant(field: &Field, c: FqElem) -> RatFunc {
        RatFunc::from_poly(FqPoly::constant(field, c))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a constant of `F_q`, if it is one.
    pub fn as_constant(&self) -> Option<FqElem> {
        (self.is_poly() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(RatFunc {
            num: base.num.pow(n),
            den: base.den.pow(n),
        })
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &FqPoly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}
