use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{enumerate_units, factorize, FqPoly};
use crate::error::{Error, Result};
use crate::maps::RationalMap;
use crate::projective::ProjPoint;

use super::orbit::{find_cycles_bounded, Budgets};

/// Affine periodic points of an integral polynomial map with their exact
/// periods. The point at infinity is always fixed and is reported apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicPoints {
    pub points: Vec<(ProjPoint, usize)>,
    pub infinity_period: usize,
}

impl PeriodicPoints {
    pub fn count_affine(&self) -> usize {
        self.points.len()
    }

    pub fn period_of(&self, p: &ProjPoint) -> Option<usize> {
        if p.is_infinity() {
            return Some(self.infinity_period);
        }
        self.points.iter().find(|(x, _)| x == p).map(|&(_, n)| n)
    }
}

/// Coefficients in `X` of a polynomial map with leading coefficient in `F_q^*`.
pub(crate) fn unit_leading_coeffs(phi: &RationalMap) -> Result<Vec<FqPoly>> {
    let coeffs = phi.polynomial_coeffs().ok_or(Error::NotUnitLeadingPolynomial)?;
    let lead = coeffs.last().expect("degree >= 0");
    if !lead.is_constant() || lead.is_zero() {
        return Err(Error::NotUnitLeadingPolynomial);
    }
    Ok(coeffs)
}

fn xpoly_mul(a: &[FqPoly], b: &[FqPoly]) -> Vec<FqPoly> {
    let field = a[0].field();
    let mut out = vec![FqPoly::zero(field); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

/// `phi(p(X))` by Horner's rule.
fn xpoly_compose(phi: &[FqPoly], p: &[FqPoly]) -> Vec<FqPoly> {
    let mut acc = vec![phi[phi.len() - 1].clone()];
    for c in phi.iter().rev().skip(1) {
        acc = xpoly_mul(&acc, p);
        acc[0] = &acc[0] + c;
    }
    acc
}

fn xpoly_eval(p: &[FqPoly], x: &FqPoly) -> FqPoly {
    p.iter()
        .rev()
        .fold(FqPoly::zero(x.field()), |acc, c| &(&acc * x) + c)
}

/// Monic divisors of `c` of degree at most `max_deg`.
fn monic_divisors(c: &FqPoly, max_deg: usize) -> Result<Vec<FqPoly>> {
    let fac = factorize(c)?;
    let mut out = vec![FqPoly::one(c.field())];
    for (pi, e) in &fac.factors {
        let dp = pi.deg().expect("factor is nonconstant");
        let mut next = Vec::new();
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*e {
                if cur.deg().unwrap_or(0) + dp > max_deg {
                    break;
                }
                cur = &cur * pi;
                next.push(cur.clone());
            }
        }
        out = next;
    }
    Ok(out)
}

/// Periodic points of `phi` in `F_q(t)`, found as integral roots of
/// `phi^n(X) - X` for `n = 1..q`.
pub fn periodic_points_integral(phi: &RationalMap) -> Result<PeriodicPoints> {
    let coeffs = unit_leading_coeffs(phi)?;
    if phi.degree() < 2 {
        return Err(Error::DegreeTooLow);
    }
    let field = phi.field().clone();
    let q = field.order() as usize;
    let units = enumerate_units(&field);
    // A point of degree above every non-leading coefficient degree has
    // strictly growing iterates, so it cannot be periodic.
    let max_deg = coeffs.iter().filter_map(FqPoly::deg).max().unwrap_or(0);
    let mut periods: BTreeMap<ProjPoint, usize> = BTreeMap::new();
    let mut iterate = vec![FqPoly::zero(&field), FqPoly::one(&field)];
    for n in 1..=q {
        iterate = xpoly_compose(&coeffs, &iterate);
        let mut psi = iterate.clone();
        psi[1] = &psi[1] - &FqPoly::one(&field);
        let mut roots = BTreeSet::new();
        while psi.len() > 1 && psi[0].is_zero() {
            roots.insert(FqPoly::zero(&field));
            psi.remove(0);
        }
        if psi.len() > 1 {
            for div in monic_divisors(&psi[0], max_deg)? {
                for &u in &units {
                    let r = div.scale(u);
                    if xpoly_eval(&psi, &r).is_zero() {
                        roots.insert(r);
                    }
                }
            }
        }
        for r in roots {
            periods.entry(ProjPoint::affine(r)).or_insert(n);
        }
    }
    Ok(PeriodicPoints {
        points: periods.into_iter().collect(),
        infinity_period: 1,
    })
}

/// Smallest `n <= q` with `phi^n = id` for a degree-1 unit-leading polynomial.
pub fn linear_period(phi: &RationalMap) -> Result<Option<usize>> {
    unit_leading_coeffs(phi)?;
    if phi.degree() != 1 {
        return Err(Error::HypothesisViolated("map is not linear".into()));
    }
    let id = RationalMap::identity(phi.field());
    let mut it = phi.clone();
    for n in 1..=phi.field().order() as usize {
        if it.same_map(&id) {
            return Ok(Some(n));
        }
        it = it.compose(phi)?;
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleMatch {
    pub bound: usize,
    pub points: Vec<(ProjPoint, usize)>,
}

/// Cross-checks the integral root search against brute-force orbits of all
/// points of degree at most `bound`.
pub fn periodic_oracle_match(phi: &RationalMap, bound: usize, budgets: Budgets) -> Result<OracleMatch> {
    let integral = periodic_points_integral(phi)?;
    let expected: BTreeMap<ProjPoint, usize> = integral
        .points
        .into_iter()
        .filter(|(p, _)| p.max_degree() <= bound)
        .collect();
    let mut found = BTreeMap::new();
    for cycle in find_cycles_bounded(phi, bound, budgets) {
        for p in &cycle {
            if !p.is_infinity() && p.max_degree() <= bound {
                found.insert(p.clone(), cycle.len());
            }
        }
    }
    for (p, n) in expected.iter() {
        if found.get(p) != Some(n) {
            return Err(Error::MismatchWitness(p.to_string()));
        }
    }
    if let Some(p) = found.keys().find(|p| !expected.contains_key(*p)) {
        return Err(Error::MismatchWitness(p.to_string()));
    }
    Ok(OracleMatch {
        bound,
        points: expected.into_iter().collect(),
    })
}
