//! Places of `F_q(t)` and their valuations.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use super::factor::{is_irreducible, monic_irreducibles};
use super::field::{Field, FqElem};
use super::poly::FqPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    Finite(FqPoly),
    Infinity,
}

struct PlaceInner {
    kind: PlaceKind,
    field: Field,
    /// Built on first use, since large residue fields have no tables.
    residue: OnceLock<Result<Field>>,
}

/// A place of `F_q(t)` together with its residue field.
#[derive(Clone)]
pub struct Place(Arc<PlaceInner>);

impl Place {
    pub fn finite(pi: FqPoly) -> Result<Place> {
        if !pi.is_monic() || !is_irreducible(&pi) {
            return Err(Error::NotIrreducible(pi.to_string()));
        }
        let field = pi.field().clone();
        let residue = OnceLock::new();
        if pi.deg() == Some(1) {
            let _ = residue.set(Ok(field.clone()));
        }
        Ok(Place(Arc::new(PlaceInner {
            kind: PlaceKind::Finite(pi),
            field,
            residue,
        })))
    }

    pub fn infinity(field: &Field) -> Place {
        Place(Arc::new(PlaceInner {
            kind: PlaceKind::Infinity,
            field: field.clone(),
            residue: OnceLock::from(Ok(field.clone())),
        }))
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.0.kind
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.0.kind, PlaceKind::Infinity)
    }

    pub fn poly(&self) -> Option<&FqPoly> {
        match &self.0.kind {
            PlaceKind::Finite(p) => Some(p),
            PlaceKind::Infinity => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.poly().and_then(FqPoly::deg).unwrap_or(1)
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    /// The residue field, or `FieldTooLarge` past the size limit of
    /// table-based fields.
    pub fn try_residue_field(&self) -> Result<&Field> {
        let residue = self.0.residue.get_or_init(|| {
            let pi = self.poly().expect("infinity has its residue field preset");
            let idx: Vec<u32> = pi.coeffs().iter().map(|c| c.index()).collect();
            Field::quotient(&self.0.field, &idx, 't', None)
        });
        residue.as_ref().map_err(Clone::clone)
    }

    /// # Panics
    /// If the residue field is too large to tabulate.
    pub fn residue_field(&self) -> &Field {
        self.try_residue_field().expect("residue field within the size limit")
    }

    /// `#k(place) = q^degree`, saturating.
    pub fn residue_size(&self) -> u64 {
        (self.0.field.order() as u64).saturating_pow(self.degree() as u32)
    }

    /// Image of a polynomial in the residue field of a finite place.
    pub fn reduce(&self, f: &FqPoly) -> FqElem {
        match &self.0.kind {
            PlaceKind::Infinity => panic!("reduction at infinity needs a scaling degree"),
            PlaceKind::Finite(pi) => {
                if pi.deg() == Some(1) {
                    f.eval(self.0.field.neg(pi.coeff(0)))
                } else {
                    let r = f.rem(pi).expect("nonzero place polynomial");
                    let idx: Vec<u32> = r.coeffs().iter().map(|c| c.index()).collect();
                    self.residue_field().from_coeffs(&idx)
                }
            }
        }
    }

    pub fn valuation_poly(&self, f: &FqPoly) -> Valuation {
        match (&self.0.kind, f.deg()) {
            (_, None) => Valuation::Infinite,
            (PlaceKind::Infinity, Some(d)) => Valuation::Finite(-(d as i64)),
            (PlaceKind::Finite(pi), Some(_)) => {
                Valuation::Finite(f.multiplicity(pi).unwrap_or(0) as i64)
            }
        }
    }

    pub fn valuation(&self, r: &RatFunc) -> Valuation {
        match (self.valuation_poly(r.num()), self.valuation_poly(r.den())) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
            _ => Valuation::Infinite,
        }
    }
}

pub fn valuation(r: &RatFunc, place: &Place) -> Valuation {
    place.valuation(r)
}

/// All finite places of degree at most `n`, ordered by degree.
pub fn finite_places_up_to(field: &Field, n: usize) -> Vec<Place> {
    (1..=n)
        .flat_map(|e| monic_irreducibles(field, e))
        .map(|pi| Place::finite(pi).expect("irreducible by construction"))
        .collect()
}

impl PartialEq for Place {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Place {}

impl Hash for Place {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state);
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0.kind, &other.0.kind) {
            (PlaceKind::Finite(a), PlaceKind::Finite(b)) => a.cmp(b),
            (PlaceKind::Finite(_), PlaceKind::Infinity) => Ordering::Less,
            (PlaceKind::Infinity, PlaceKind::Finite(_)) => Ordering::Greater,
            (PlaceKind::Infinity, PlaceKind::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            PlaceKind::Finite(p) => write!(f, "{p}"),
            PlaceKind::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({self})")
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Valuation value; `Infinite` is the value of zero and compares above
/// every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        let f2 = Field::of_order(2).unwrap();
        let t = FqPoly::from_ints(&f2, &[0, 1]);
        let t1 = FqPoly::from_ints(&f2, &[1, 1]);
        let r = RatFunc::new(t.pow(2), t1.clone()).unwrap();
        assert_eq!(Place::finite(t.clone()).unwrap().valuation(&r), Valuation::Finite(2));
        assert_eq!(Place::finite(t1).unwrap().valuation(&r), Valuation::Finite(-1));
        let inv_t = RatFunc::new(FqPoly::one(&f2), t).unwrap();
        assert_eq!(Place::infinity(&f2).valuation(&inv_t), Valuation::Finite(1));
        assert_eq!(
            Place::infinity(&f2).valuation(&RatFunc::zero(&f2)),
            Valuation::Infinite
        );
    }

    #[test]
    fn residue_reduction_is_a_ring_map() {
        let f3 = Field::of_order(3).unwrap();
        let pi = FqPoly::from_ints(&f3, &[1, 0, 1]);
        let place = Place::finite(pi).unwrap();
        assert_eq!(place.residue_size(), 9);
        let k = place.residue_field();
        let a = FqPoly::from_ints(&f3, &[2, 1, 1, 2]);
        let b = FqPoly::from_ints(&f3, &[0, 2, 1]);
        assert_eq!(place.reduce(&(&a * &b)), k.mul(place.reduce(&a), place.reduce(&b)));
        assert_eq!(place.reduce(&(&a + &b)), k.add(place.reduce(&a), place.reduce(&b)));
    }

    #[test]
    fn rejects_reducible() {
        let f2 = Field::of_order(2).unwrap();
        assert!(Place::finite(FqPoly::from_ints(&f2, &[1, 0, 1])).is_err());
    }
}
