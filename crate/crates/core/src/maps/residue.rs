use std::collections::HashSet;
use std::fmt;

use crate::algebra::factor::extension_field;
use crate::algebra::linalg::{determinant, nullspace};
use crate::algebra::{poly_gcd, Field, FqElem, FqPoly, Place};
use crate::error::{Error, Result};
use crate::projective::{reduce_coeff, ResiduePoint};

use super::rational::{sylvester, RationalMap};

/// A map `[F : G]` of the projective line over a finite field; `f[j]` is the
/// coefficient of `X^j Y^(d-j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueMap {
    field: Field,
    f: Vec<FqElem>,
    g: Vec<FqElem>,
}

impl ResidueMap {
    /// Normalizes so that the first nonzero coefficient (scanning `F` then
    /// `G` from `X^d` down) is 1.
    pub fn new(field: &Field, f: Vec<FqElem>, g: Vec<FqElem>) -> Result<ResidueMap> {
        if f.len() != g.len() || f.is_empty() {
            return Err(Error::DegreeMismatch);
        }
        let Some(&lead) = f.iter().rev().chain(g.iter().rev()).find(|c| !c.is_zero()) else {
            return Err(Error::DegenerateResidueMap);
        };
        let inv = field.inv(lead)?;
        let scale = |v: Vec<FqElem>| v.into_iter().map(|c| field.mul(c, inv)).collect();
        let map = ResidueMap {
            field: field.clone(),
            f: scale(f),
            g: scale(g),
        };
        if map.resultant().is_zero() {
            return Err(Error::DegenerateResidueMap);
        }
        Ok(map)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn f(&self) -> &[FqElem] {
        &self.f
    }

    pub fn g(&self) -> &[FqElem] {
        &self.g
    }

    pub fn resultant(&self) -> FqElem {
        if self.f.len() == 1 {
            return FqElem::ONE;
        }
        determinant(&self.field, &sylvester(&self.f, &self.g, FqElem::ZERO))
    }

    fn form_at(&self, form: &[FqElem], x: FqElem, y: FqElem) -> FqElem {
        let k = &self.field;
        let d = self.degree();
        form.iter().enumerate().fold(FqElem::ZERO, |acc, (j, &c)| {
            let term = k.mul(c, k.mul(k.pow(x, j as u64), k.pow(y, (d - j) as u64)));
            k.add(acc, term)
        })
    }

    pub fn evaluate(&self, p: &ResiduePoint) -> ResiduePoint {
        let fx = self.form_at(&self.f, p.x(), p.y());
        let gx = self.form_at(&self.g, p.x(), p.y());
        ResiduePoint::new(&self.field, fx, gx).expect("nonzero resultant rules out a common zero")
    }

    /// The same map viewed over `F_q(t)` with constant coefficients.
    pub fn to_rational_map(&self) -> Result<RationalMap> {
        let lift = |v: &[FqElem]| v.iter().map(|&c| FqPoly::constant(&self.field, c)).collect();
        RationalMap::new(lift(&self.f), lift(&self.g))
    }

    fn x_poly(&self, v: &[FqElem]) -> FqPoly {
        FqPoly::new(&self.field, v.to_vec())
    }
}

impl fmt::Display for ResidueMap {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.x_poly(&self.f).format_with("X");
        let den = self.x_poly(&self.g);
        if den.is_one() {
            return out.write_str(&num);
        }
        let wrap = |s: String| {
            if s.contains('+') || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(out, "{}/{}", wrap(num), wrap(den.format_with("X")))
    }
}

impl fmt::Debug for ResidueMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueMap({self} over {:?})", self.field)
    }
}

impl serde::Serialize for ResidueMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Reduction of the place-normalized coefficients into the residue field.
pub fn reduce_map(phi: &RationalMap, place: &Place) -> Result<ResidueMap> {
    if phi.is_bad(place) {
        return Err(Error::BadReductionPlace(place.to_string()));
    }
    let k = place.try_residue_field()?;
    let m = phi.max_coeff_degree();
    let red = |form: &[FqPoly]| form.iter().map(|c| reduce_coeff(c, place, m)).collect();
    ResidueMap::new(k, red(phi.f()), red(phi.g()))
}

/// Finds a map of degree at most `d` over the samples' field (or an
/// extension of it) sending each `z` to its `w`.
pub fn rational_interpolate(
    samples: &[(ResiduePoint, ResiduePoint)],
    d: usize,
) -> Result<ResidueMap> {
    if samples.len() < 2 * d + 1 {
        return Err(Error::TooFewSamples {
            needed: 2 * d + 1,
            got: samples.len(),
        });
    }
    let mut seen = HashSet::new();
    for (z, _) in samples {
        if !seen.insert(z.clone()) {
            return Err(Error::DuplicateSample(z.to_string()));
        }
    }
    let field = samples[0].0.field().clone();
    interpolate_over(&field, samples, d)
}

fn monomials(k: &Field, z: &ResiduePoint, d: usize) -> Vec<FqElem> {
    (0..=d)
        .map(|j| k.mul(k.pow(z.x(), j as u64), k.pow(z.y(), (d - j) as u64)))
        .collect()
}

fn dot(k: &Field, a: &[FqElem], b: &[FqElem]) -> FqElem {
    a.iter()
        .zip(b)
        .fold(FqElem::ZERO, |acc, (&x, &y)| k.add(acc, k.mul(x, y)))
}

fn interpolate_over(
    k: &Field,
    samples: &[(ResiduePoint, ResiduePoint)],
    d: usize,
) -> Result<ResidueMap> {
    let n = d + 1;
    let monos: Vec<Vec<FqElem>> = samples.iter().map(|(z, _)| monomials(k, z, d)).collect();
    let rows: Vec<Vec<FqElem>> = samples
        .iter()
        .zip(&monos)
        .map(|((_, w), m)| {
            let mut row: Vec<FqElem> = m.iter().map(|&c| k.mul(w.y(), c)).collect();
            row.extend(m.iter().map(|&c| k.neg(k.mul(w.x(), c))));
            row
        })
        .collect();
    let basis = nullspace(k, &rows, 2 * n);
    let degenerate = |v: &[FqElem]| {
        monos
            .iter()
            .any(|m| dot(k, &v[..n], m).is_zero() && dot(k, &v[n..], m).is_zero())
    };
    // A sample whose degeneracy subspace contains all of T rules out every solution.
    let trapped = monos.iter().any(|m| {
        basis
            .iter()
            .all(|v| dot(k, &v[..n], m).is_zero() && dot(k, &v[n..], m).is_zero())
    });
    if basis.is_empty() || trapped {
        return Err(Error::NoAdmissibleSolution);
    }
    let q = k.order() as u64;
    let total = q.checked_pow(basis.len() as u32).unwrap_or(u64::MAX);
    for code in 1..total {
        let mut c = code;
        let mut v = vec![FqElem::ZERO; 2 * n];
        for b in &basis {
            let coeff = k.elem((c % q) as u32);
            c /= q;
            if coeff.is_zero() {
                continue;
            }
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = k.add(*vi, k.mul(coeff, bi));
            }
        }
        if !degenerate(&v) {
            let (f, g) = strip_common_factor(k, &v[..n], &v[n..])?;
            return ResidueMap::new(k, f, g);
        }
    }
    let ext = extension_field(k, 2)?;
    let lift = |p: &ResiduePoint| {
        if p.is_infinity() {
            ResiduePoint::infinity(&ext)
        } else {
            ResiduePoint::affine(&ext, p.x())
        }
    };
    let lifted: Vec<_> = samples.iter().map(|(z, w)| (lift(z), lift(w))).collect();
    interpolate_over(&ext, &lifted, d)
}

/// Divides two binary forms by their greatest common factor.
fn strip_common_factor(
    k: &Field,
    f: &[FqElem],
    g: &[FqElem],
) -> Result<(Vec<FqElem>, Vec<FqElem>)> {
    let d = f.len() - 1;
    let fx = FqPoly::new(k, f.to_vec());
    let gx = FqPoly::new(k, g.to_vec());
    let y_power = [&fx, &gx]
        .iter()
        .filter_map(|p| p.deg().map(|e| d - e))
        .min()
        .unwrap_or(0);
    let h = poly_gcd(&fx, &gx)?;
    let new_d = d - y_power - h.deg().unwrap_or(0);
    let pad = |p: FqPoly| {
        let mut c = p.coeffs().to_vec();
        c.resize(new_d + 1, FqElem::ZERO);
        c
    };
    Ok((pad(fx.div_exact(&h)?), pad(gx.div_exact(&h)?)))
}
