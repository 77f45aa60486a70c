//! Points of the projective line over `F_q(t)`, reduction at a place and
//! the logarithmic distance.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::factor::factorize;
use crate::algebra::{Field, FqElem, FqPoly, Place, PlaceKind, RatFunc, Valuation};
use crate::error::{Error, Result};

/// A point `[x : y]` with coprime coordinates in `F_q[t]`; `y` is monic, or
/// `y = 0` and `x = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    x: FqPoly,
    y: FqPoly,
}

impl ProjPoint {
    pub fn new(x: FqPoly, y: FqPoly) -> Result<ProjPoint> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let g = crate::algebra::poly_gcd(&x, &y)?;
        let (x, y) = (x.div_exact(&g)?, y.div_exact(&g)?);
        let lead = if y.is_zero() { x.leading() } else { y.leading() };
        let inv = x.field().inv(lead)?;
        Ok(ProjPoint {
            x: x.scale(inv),
            y: y.scale(inv),
        })
    }

    /// `[x : 1]`.
    pub fn affine(x: FqPoly) -> ProjPoint {
        let y = FqPoly::one(x.field());
        ProjPoint { x, y }
    }

    pub fn constant(field: &Field, c: FqElem) -> ProjPoint {
        ProjPoint::affine(FqPoly::constant(field, c))
    }

    pub fn infinity(field: &Field) -> ProjPoint {
        ProjPoint {
            x: FqPoly::one(field),
            y: FqPoly::zero(field),
        }
    }

    pub fn from_ratfunc(r: &RatFunc) -> ProjPoint {
        ProjPoint {
            x: r.num().clone(),
            y: r.den().clone(),
        }
    }

    /// Point with coordinates in `F_q(t)`, scaled to coprime polynomials.
    pub fn from_ratfuncs(x: &RatFunc, y: &RatFunc) -> Result<ProjPoint> {
        ProjPoint::new(x.num() * y.den(), y.num() * x.den())
    }

    pub fn x(&self) -> &FqPoly {
        &self.x
    }

    pub fn y(&self) -> &FqPoly {
        &self.y
    }

    pub fn field(&self) -> &Field {
        self.x.field()
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// The affine coordinate `x / y`, if the point is finite.
    pub fn to_ratfunc(&self) -> Option<RatFunc> {
        (!self.is_infinity()).then(|| RatFunc::new(self.x.clone(), self.y.clone()).expect("y nonzero"))
    }

    /// Whether the point lies in `F_q[t]` (i.e. `y = 1`).
    pub fn is_integral(&self) -> bool {
        self.y.is_one()
    }

    /// `max(deg x, deg y)`, the height proxy used for search bounds.
    pub fn max_degree(&self) -> usize {
        self.x.deg().unwrap_or(0).max(self.y.deg().unwrap_or(0))
    }

    /// Re-reads the coordinates over an extension of the constant field.
    pub fn lift(&self, ext: &Field) -> ProjPoint {
        ProjPoint {
            x: self.x.lift(ext),
            y: self.y.lift(ext),
        }
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.is_infinity(), self.max_degree(), &self.y, &self.x).cmp(&(
            other.is_infinity(),
            other.max_degree(),
            &other.y,
            &other.x,
        ))
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            f.write_str("inf")
        } else if self.y.is_one() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "[{} : {}]", self.x, self.y)
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPoint({self})")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A point of the projective line over a residue field, stored as `[x : 1]`
/// or `[1 : 0]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResiduePoint {
    field: Field,
    x: FqElem,
    y: FqElem,
}

impl ResiduePoint {
    pub fn new(field: &Field, x: FqElem, y: FqElem) -> Result<ResiduePoint> {
        if y.is_zero() {
            if x.is_zero() {
                return Err(Error::ZeroPoint);
            }
            return Ok(ResiduePoint::infinity(field));
        }
        Ok(ResiduePoint::affine(field, field.div(x, y)?))
    }

    pub fn affine(field: &Field, x: FqElem) -> ResiduePoint {
        ResiduePoint {
            field: field.clone(),
            x,
            y: FqElem::ONE,
        }
    }

    pub fn infinity(field: &Field) -> ResiduePoint {
        ResiduePoint {
            field: field.clone(),
            x: FqElem::ONE,
            y: FqElem::ZERO,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn x(&self) -> FqElem {
        self.x
    }

    pub fn y(&self) -> FqElem {
        self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// Dense index in `0..=#k`: affine points by element index, infinity last.
    pub fn index(&self) -> usize {
        if self.is_infinity() {
            self.field.order() as usize
        } else {
            self.x.index() as usize
        }
    }

    pub fn from_index(field: &Field, i: usize) -> ResiduePoint {
        if i == field.order() as usize {
            ResiduePoint::infinity(field)
        } else {
            ResiduePoint::affine(field, field.elem(i as u32))
        }
    }

    /// All `#k + 1` points in index order.
    pub fn all(field: &Field) -> Vec<ResiduePoint> {
        (0..=field.order() as usize)
            .map(|i| ResiduePoint::from_index(field, i))
            .collect()
    }
}

impl fmt::Display for ResiduePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            f.write_str("inf")
        } else {
            f.write_str(&self.field.format(self.x))
        }
    }
}

impl fmt::Debug for ResiduePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResiduePoint({self})")
    }
}

impl Serialize for ResiduePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Coordinates of `p` scaled so that their minimum valuation at `place` is 0.
pub fn normalize_at(p: &ProjPoint, place: &Place) -> (RatFunc, RatFunc) {
    let x = RatFunc::from_poly(p.x.clone());
    let y = RatFunc::from_poly(p.y.clone());
    match place.kind() {
        PlaceKind::Finite(_) => (x, y),
        PlaceKind::Infinity => {
            let field = p.field();
            let scale = RatFunc::new(FqPoly::one(field), FqPoly::var(field).pow(p.max_degree() as u64))
                .expect("nonzero denominator");
            (&x * &scale, &y * &scale)
        }
    }
}

/// Image of `f` in the residue field at `place`; at infinity `f` is read
/// after scaling by `t^-scale`.
pub(crate) fn reduce_coeff(f: &FqPoly, place: &Place, scale: usize) -> FqElem {
    match place.kind() {
        PlaceKind::Finite(_) => place.reduce(f),
        PlaceKind::Infinity => f.coeff(scale),
    }
}

pub fn reduce_point(p: &ProjPoint, place: &Place) -> ResiduePoint {
    let d = p.max_degree();
    let k = place.residue_field();
    ResiduePoint::new(k, reduce_coeff(&p.x, place, d), reduce_coeff(&p.y, place, d))
        .expect("coprime coordinates do not both reduce to zero")
}

fn cross(p: &ProjPoint, q: &ProjPoint) -> FqPoly {
    &(&p.x * &q.y) - &(&q.x * &p.y)
}

/// `delta(P, Q)` at `place`; `Infinite` exactly when `P = Q`.
pub fn log_distance(p: &ProjPoint, q: &ProjPoint, place: &Place) -> Valuation {
    let c = cross(p, q);
    if c.is_zero() {
        return Valuation::Infinite;
    }
    match place.kind() {
        PlaceKind::Finite(pi) => Valuation::Finite(c.multiplicity(pi).unwrap_or(0) as i64),
        PlaceKind::Infinity => {
            let d = p.max_degree() + q.max_degree();
            Valuation::Finite(d as i64 - c.deg().expect("nonzero") as i64)
        }
    }
}

/// `delta` from arbitrary coordinates in `F_q(t)`, using the full formula
/// with both normalization minima.
pub fn log_distance_coords(
    (x1, y1): (&RatFunc, &RatFunc),
    (x2, y2): (&RatFunc, &RatFunc),
    place: &Place,
) -> Valuation {
    let c = &(x1 * y2) - &(x2 * y1);
    let v = |r: &RatFunc| place.valuation(r);
    match v(&c) {
        Valuation::Infinite => Valuation::Infinite,
        Valuation::Finite(vc) => {
            let m1 = v(x1).min(v(y1)).finite().expect("nonzero point");
            let m2 = v(x2).min(v(y2)).finite().expect("nonzero point");
            Valuation::Finite(vc - m1 - m2)
        }
    }
}

/// Places where `delta(P, Q) > 0`, with their values, in place order.
pub fn distance_support(p: &ProjPoint, q: &ProjPoint) -> Result<Vec<(Place, i64)>> {
    let c = cross(p, q);
    if c.is_zero() {
        return Err(Error::EqualPoints);
    }
    let mut out = Vec::new();
    for (pi, m) in factorize(&c)?.factors {
        out.push((Place::finite(pi)?, m as i64));
    }
    let inf = Place::infinity(p.field());
    if let Valuation::Finite(v) = log_distance(p, q, &inf) {
        if v > 0 {
            out.push((inf, v));
        }
    }
    Ok(out)
}

/// All polynomials of degree at most `b` (including zero).
pub fn polys_up_to(field: &Field, b: usize) -> impl Iterator<Item = FqPoly> + '_ {
    let q = field.order() as u64;
    (0..q.pow(b as u32 + 1)).map(move |mut code| {
        let coeffs = (0..=b)
            .map(|_| {
                let c = field.elem((code % q) as u32);
                code /= q;
                c
            })
            .collect();
        FqPoly::new(field, coeffs)
    })
}

/// Every point with a coprime representative of degree at most `b`, sorted.
pub fn enumerate_points(field: &Field, b: usize) -> Vec<ProjPoint> {
    let mut out = vec![ProjPoint::infinity(field)];
    for y in polys_up_to(field, b).filter(FqPoly::is_monic) {
        for x in polys_up_to(field, b) {
            if crate::algebra::poly_gcd(&x, &y).is_ok_and(|g| g.is_one()) {
                out.push(ProjPoint { x, y: y.clone() });
            }
        }
    }
    out.sort();
    out
}
