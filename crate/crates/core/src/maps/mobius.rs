use std::fmt;

use crate::algebra::{Field, FqPoly};
use crate::error::{Error, Result};
use crate::projective::ProjPoint;

use super::rational::RationalMap;

/// The transformation `X -> (aX + b) / (cX + d)` with entries in `F_q[t]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mobius {
    pub a: FqPoly,
    pub b: FqPoly,
    pub c: FqPoly,
    pub d: FqPoly,
}

impl Mobius {
    pub fn new(a: FqPoly, b: FqPoly, c: FqPoly, d: FqPoly) -> Result<Mobius> {
        let m = Mobius { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMobius);
        }
        Ok(m)
    }

    pub fn identity(field: &Field) -> Mobius {
        Mobius {
            a: FqPoly::one(field),
            b: FqPoly::zero(field),
            c: FqPoly::zero(field),
            d: FqPoly::one(field),
        }
    }

    /// `X -> X + s`.
    pub fn translation(s: FqPoly) -> Mobius {
        let field = s.field().clone();
        Mobius {
            a: FqPoly::one(&field),
            b: s,
            c: FqPoly::zero(&field),
            d: FqPoly::one(&field),
        }
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn det(&self) -> FqPoly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// Adjugate, which acts as the inverse on the projective line.
    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// Matrix product `self * other`, i.e. the composition `self ∘ other`.
    pub fn then_after(&self, other: &Mobius) -> Mobius {
        let (p, q) = (self, other);
        Mobius {
            a: &(&p.a * &q.a) + &(&p.b * &q.c),
            b: &(&p.a * &q.b) + &(&p.b * &q.d),
            c: &(&p.c * &q.a) + &(&p.d * &q.c),
            d: &(&p.c * &q.b) + &(&p.d * &q.d),
        }
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let x = &(&self.a * p.x()) + &(&self.b * p.y());
        let y = &(&self.c * p.x()) + &(&self.d * p.y());
        ProjPoint::new(x, y).expect("invertible matrix maps nonzero vectors to nonzero vectors")
    }

    pub fn to_map(&self) -> Result<RationalMap> {
        RationalMap::new(
            vec![self.b.clone(), self.a.clone()],
            vec![self.d.clone(), self.c.clone()],
        )
    }

    pub fn lift(&self, ext: &Field) -> Mobius {
        Mobius {
            a: self.a.lift(ext),
            b: self.b.lift(ext),
            c: self.c.lift(ext),
            d: self.d.lift(ext),
        }
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mobius{self}")
    }
}

impl serde::Serialize for Mobius {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `mu ∘ phi ∘ mu^-1`.
pub fn conjugate(phi: &RationalMap, mu: &Mobius) -> Result<RationalMap> {
    if mu.det().is_zero() {
        return Err(Error::SingularMobius);
    }
    mu.to_map()?.compose(phi)?.compose(&mu.inverse().to_map()?)
}
