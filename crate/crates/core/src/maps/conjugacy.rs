//! Detection of maps conjugate to maps over a finite field, from a large
//! invariant set with constant pairwise distances.

use serde::Serialize;

use crate::algebra::factor::extension_field;
use crate::algebra::linalg::solve;
use crate::algebra::{poly_ext_gcd, Field, FqElem, FqPoly};
use crate::error::{Error, Result};
use crate::projective::{ProjPoint, ResiduePoint};

use super::mobius::{conjugate, Mobius};
use super::rational::RationalMap;
use super::residue::{rational_interpolate, ResidueMap};

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConjugacyOutcome {
    /// The set is within the degree bound, so no conjugacy is claimed.
    SmallSet { size: usize, bound: usize },
    Conjugate(ConjugacyWitness),
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyWitness {
    /// Degree of the constant-field extension the conjugacy lives over.
    pub extension_degree: u32,
    /// `a` when the coordinate change `t -> a + 1/t` was applied first to
    /// move the bad place `t - a` to infinity.
    pub shift: Option<String>,
    pub mobius: Mobius,
    pub psi: ResidueMap,
}

/// `t^m c(a + 1/t)`.
fn invert_poly(c: &FqPoly, a: FqElem, m: usize) -> FqPoly {
    let field = c.field();
    let lin = FqPoly::new(field, vec![FqElem::ONE, a]);
    let t = FqPoly::var(field);
    c.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, ci)| !ci.is_zero())
        .fold(FqPoly::zero(field), |acc, (i, &ci)| {
            &acc + &(&lin.pow(i as u64) * &t.pow((m - i) as u64)).scale(ci)
        })
}

/// Applies `t -> a + 1/t` to a map's coefficients.
pub fn invert_map(phi: &RationalMap, a: FqElem) -> Result<RationalMap> {
    let m = phi.max_coeff_degree();
    let tr = |form: &[FqPoly]| form.iter().map(|c| invert_poly(c, a, m)).collect();
    RationalMap::new(tr(phi.f()), tr(phi.g()))
}

/// Applies `t -> a + 1/t` to a point's coordinates.
pub fn invert_point(p: &ProjPoint, a: FqElem) -> ProjPoint {
    let m = p.max_degree();
    ProjPoint::new(invert_poly(p.x(), a, m), invert_poly(p.y(), a, m)).expect("automorphism keeps points nonzero")
}

fn cross(p: &ProjPoint, q: &ProjPoint) -> FqPoly {
    &(p.x() * q.y()) - &(q.x() * p.y())
}

/// Checks that all pairwise distances agree at every finite place, i.e.
/// that all cross terms are associates.
fn check_finite_equidistance(points: &[ProjPoint]) -> Result<()> {
    let mut reference: Option<(FqPoly, usize, usize)> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let c = cross(&points[i], &points[j]);
            if c.is_zero() {
                return Err(Error::DuplicateInput);
            }
            let c = c.monic();
            match &reference {
                None => reference = Some((c, i, j)),
                Some((r, a, b)) if *r != c => {
                    return Err(Error::HypothesisViolated(format!(
                        "cross terms of ({}, {}) and ({}, {}) differ: {} vs {}",
                        points[*a], points[*b], points[i], points[j], r, c
                    )));
                }
                _ => {}
            }
        }
    }
    Ok(())
}

fn as_constant_point(p: &ProjPoint, ext: &Field) -> Result<ResiduePoint> {
    if !p.x().is_constant() || !p.y().is_constant() {
        return Err(Error::ConjugacyVerificationFailed(format!(
            "{p} is not mapped to a constant point"
        )));
    }
    ResiduePoint::new(ext, p.x().coeff(0), p.y().coeff(0))
}

/// Given `phi` and a `phi`-invariant set whose pairwise distances are equal
/// at every finite place, either certifies that the set is small or finds a
/// coordinate change conjugating `phi` to a map over a finite field.
///
/// A single bad place is moved to infinity first when it has degree 1; bad
/// places of higher degree, or more than one bad place, are unsupported.
pub fn detect_constant_field_conjugacy(
    phi: &RationalMap,
    points: &[ProjPoint],
) -> Result<ConjugacyOutcome> {
    let d = phi.degree();
    let (phi, points, shift) = match phi.bad_places() {
        [] => (phi.clone(), points.to_vec(), None),
        [p] if p.is_infinite() => (phi.clone(), points.to_vec(), None),
        [p] if p.degree() == 1 => {
            let a = phi.field().neg(p.poly().expect("finite").coeff(0));
            let pts = points.iter().map(|q| invert_point(q, a)).collect();
            (invert_map(phi, a)?, pts, Some(phi.field().format(a)))
        }
        [p] => {
            return Err(Error::Unsupported(format!(
                "bad place {p} of degree {} cannot be moved to infinity over the constant field",
                p.degree()
            )))
        }
        many => {
            return Err(Error::HypothesisViolated(format!(
                "{} places of bad reduction",
                many.len()
            )))
        }
    };
    for p in &points {
        if !points.contains(&phi.evaluate(p)) {
            return Err(Error::HypothesisViolated(format!("set is not invariant at {p}")));
        }
    }
    let polynomial = phi.is_polynomial() && points.iter().all(|p| !p.is_infinity());
    let bound = if polynomial { d } else { 2 * d };
    if points.len() <= bound {
        return Ok(ConjugacyOutcome::SmallSet {
            size: points.len(),
            bound,
        });
    }
    check_finite_equidistance(&points)?;
    let mut witness = if polynomial {
        polynomial_branch(&phi, &points)?
    } else {
        rational_branch(&phi, &points)?
    };
    witness.shift = shift;
    Ok(ConjugacyOutcome::Conjugate(witness))
}

fn verify(phi: &RationalMap, mu: &Mobius, psi: ResidueMap, base: &Field) -> Result<ConjugacyWitness> {
    let ext = psi.field().clone();
    let conj = conjugate(&phi.lift(&ext)?, &mu.lift(&ext))?;
    if !conj.same_map(&psi.to_rational_map()?) {
        return Err(Error::ConjugacyVerificationFailed(format!(
            "{psi} differs from the conjugate {conj}"
        )));
    }
    let q = base.order() as f64;
    let extension_degree = ((ext.order() as f64).ln() / q.ln()).round() as u32;
    Ok(ConjugacyWitness {
        extension_degree,
        shift: None,
        mobius: mu.lift(&ext),
        psi,
    })
}

fn polynomial_branch(phi: &RationalMap, points: &[ProjPoint]) -> Result<ConjugacyWitness> {
    let field = phi.field().clone();
    let d = phi.degree();
    let (p0, p1) = (&points[0], &points[1]);
    // X -> (X - x0) / (x1 - x0) with denominators of x0 = a0/b0, x1 = a1/b1 cleared.
    let (a0, b0, a1, b1) = (p0.x(), p0.y(), p1.x(), p1.y());
    let eta = Mobius::new(
        b0 * b1,
        -&(a0 * b1),
        FqPoly::zero(&field),
        &(a1 * b0) - &(a0 * b1),
    )?;
    let samples: Vec<(ResiduePoint, ResiduePoint)> = points
        .iter()
        .map(|p| {
            Ok((
                as_constant_point(&eta.apply(p), &field)?,
                as_constant_point(&eta.apply(&phi.evaluate(p)), &field)?,
            ))
        })
        .collect::<Result<_>>()?;
    let vander = samples[..=d]
        .iter()
        .map(|(z, _)| (0..=d).map(|j| field.pow(z.x(), j as u64)).collect())
        .collect();
    let rhs: Vec<FqElem> = samples[..=d].iter().map(|(_, w)| w.x()).collect();
    let coeffs = solve(&field, &vander, &rhs)
        .ok_or_else(|| Error::ConjugacyVerificationFailed("sample inputs collide".into()))?;
    let mut g = vec![FqElem::ZERO; d + 1];
    g[0] = FqElem::ONE;
    let psi = ResidueMap::new(&field, coeffs, g)
        .map_err(|e| Error::ConjugacyVerificationFailed(format!("interpolated polynomial: {e}")))?;
    for (z, w) in &samples {
        if &psi.evaluate(z) != w {
            return Err(Error::ConjugacyVerificationFailed(format!(
                "{psi} does not send {z} to {w}"
            )));
        }
    }
    verify(phi, &eta, psi, &field)
}

fn rational_branch(phi: &RationalMap, points: &[ProjPoint]) -> Result<ConjugacyWitness> {
    let field = phi.field().clone();
    let d = phi.degree();
    let p0 = &points[0];
    let (g, s, u) = poly_ext_gcd(p0.x(), p0.y())?;
    debug_assert!(g.is_one());
    // M sends P0 to [0 : 1] and has determinant 1.
    let m = Mobius::new(p0.y().clone(), -p0.x(), s, u)?;
    let moved: Vec<ProjPoint> = points.iter().map(|p| m.apply(p)).collect();
    let x1 = moved[1].x().clone();
    let mut shifted = Vec::new();
    for p in &moved[1..] {
        let (quo, rem) = p.x().divrem(&x1)?;
        let ui = quo.coeff(0);
        if !rem.is_zero() || !quo.is_constant() || ui.is_zero() {
            return Err(Error::HypothesisViolated(format!(
                "{} is not a unit multiple of {}",
                p.x(),
                x1
            )));
        }
        shifted.push(p.y().scale(field.inv(ui)?));
    }
    let s1 = shifted[0].clone();
    let mut diffs = Vec::new();
    for si in &shifted {
        let diff = si - &s1;
        if !diff.is_constant() {
            return Err(Error::HypothesisViolated(format!("{diff} is not a constant")));
        }
        diffs.push(diff.coeff(0));
    }
    let mut e = 1;
    let (ext, shift_u) = loop {
        let ext = extension_field(&field, e)?;
        if ext.order() as usize > 2 * d + 1 {
            if let Some(u) = ext.elements().find(|&u| diffs.iter().all(|&di| !ext.add(u, di).is_zero())) {
                break (ext, u);
            }
        }
        e += 1;
    };
    let n = Mobius::new(
        FqPoly::one(&ext),
        FqPoly::zero(&ext),
        &FqPoly::constant(&ext, shift_u) - &s1.lift(&ext),
        x1.lift(&ext),
    )?;
    let mu = n.then_after(&m.lift(&ext));
    let samples: Vec<(ResiduePoint, ResiduePoint)> = points
        .iter()
        .map(|p| {
            let image = phi.evaluate(p).lift(&ext);
            Ok((
                as_constant_point(&mu.apply(&p.lift(&ext)), &ext)?,
                as_constant_point(&mu.apply(&image), &ext)?,
            ))
        })
        .collect::<Result<_>>()?;
    let psi = rational_interpolate(&samples, d)?;
    verify(phi, &mu, psi, &field)
}
