//! Explicit families of maps with many periodic points or long cycles.

use serde::Serialize;

use crate::algebra::{enumerate_units, mul_order, Field, FqElem, FqPoly};
use crate::dynamics::{orbit, Budgets, OrbitRecord};
use crate::error::{Error, Result};
use crate::maps::RationalMap;
use crate::projective::ProjPoint;

/// A self-map of `F_q`; `table[i]` is the image of the element with index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    field: Field,
    table: Vec<FqElem>,
}

impl GraphSpec {
    pub fn new(field: &Field, table: Vec<FqElem>) -> Result<GraphSpec> {
        if table.len() != field.order() as usize || table.iter().any(|c| c.index() >= field.order()) {
            return Err(Error::HypothesisViolated(format!(
                "a graph over a field of order {} needs that many entries in the field",
                field.order()
            )));
        }
        Ok(GraphSpec {
            field: field.clone(),
            table,
        })
    }

    pub fn from_fn(field: &Field, f: impl Fn(FqElem) -> FqElem) -> GraphSpec {
        GraphSpec {
            field: field.clone(),
            table: field.elements().map(f).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn image(&self, a: FqElem) -> FqElem {
        self.table[a.index() as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetDegree {
    /// The unique interpolating polynomial of degree below `q`.
    Minimal,
    Exact(usize),
}

/// The polynomial over `F_q` inducing `g`, optionally raised to degree `d >= q`
/// by adding `X^(d-q) (X^q - X)`.
pub fn interpolate_graph(g: &GraphSpec, target: TargetDegree) -> Result<RationalMap> {
    let k = &g.field;
    let q = k.order() as usize;
    if let TargetDegree::Exact(d) = target {
        if d < q {
            return Err(Error::DegreeTooSmall { degree: d, q: q as u64 });
        }
    }
    // sum_a g(a) (1 - (X - a)^(q-1))
    let mut coeffs = FqPoly::zero(k);
    for a in k.elements() {
        let ga = g.image(a);
        if ga.is_zero() {
            continue;
        }
        let lin = FqPoly::new(k, vec![k.neg(a), FqElem::ONE]);
        let indicator = &FqPoly::one(k) - &lin.pow(q as u64 - 1);
        coeffs = &coeffs + &indicator.scale(ga);
    }
    if let TargetDegree::Exact(d) = target {
        let bump = &FqPoly::monomial(k, FqElem::ONE, d) - &FqPoly::monomial(k, FqElem::ONE, d + 1 - q);
        coeffs = &coeffs + &bump;
    }
    RationalMap::polynomial(&constant_coeffs(&coeffs))
}

/// Coefficients of `p` as constants of `F_q[t]`.
fn constant_coeffs(p: &FqPoly) -> Vec<FqPoly> {
    let k = p.field();
    let mut out: Vec<FqPoly> = p.coeffs().iter().map(|&c| FqPoly::constant(k, c)).collect();
    if out.is_empty() {
        out.push(FqPoly::zero(k));
    }
    out
}

/// Polynomial coefficients of `prod (X - r_i)` over `F_q[t]`.
fn product_of_roots(field: &Field, roots: impl Iterator<Item = Vec<FqPoly>>) -> Vec<FqPoly> {
    roots.fold(vec![FqPoly::one(field)], |acc, factor| {
        let mut out = vec![FqPoly::zero(field); acc.len() + factor.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        out
    })
}

/// `prod (X - f_i) + X`, which fixes every `f_i`.
pub fn fixed_points_poly(fs: &[FqPoly]) -> Result<RationalMap> {
    let Some(first) = fs.first() else {
        return Err(Error::HypothesisViolated("no fixed points given".into()));
    };
    let field = first.field().clone();
    for (i, f) in fs.iter().enumerate() {
        if fs[..i].contains(f) {
            return Err(Error::DuplicateInput);
        }
    }
    let mut coeffs = product_of_roots(&field, fs.iter().map(|f| vec![-f, FqPoly::one(&field)]));
    coeffs[1] = &coeffs[1] + &FqPoly::one(&field);
    RationalMap::polynomial(&coeffs)
}

/// `X prod (X^n - f_i^n) + wX` where `n` is the order of `w`; each `f_i`
/// lies on the `n`-cycle `f_i -> w f_i -> ... -> w^(n-1) f_i`.
pub fn multi_cycle_poly(w: FqElem, fs: &[FqPoly]) -> Result<Construction> {
    let Some(first) = fs.first() else {
        return Err(Error::HypothesisViolated("no cycle representatives given".into()));
    };
    let field = first.field().clone();
    let n = mul_order(&field, w).map_err(|_| Error::UnitOrderOne)? as usize;
    if n == 1 {
        return Err(Error::UnitOrderOne);
    }
    if fs.iter().any(FqPoly::is_zero) {
        return Err(Error::HypothesisViolated("cycle representatives must be nonzero".into()));
    }
    let powers: Vec<FqPoly> = fs.iter().map(|f| f.pow(n as u64)).collect();
    for (i, p) in powers.iter().enumerate() {
        if powers[..i].contains(p) {
            return Err(Error::PowersCollide);
        }
    }
    let factors = powers.iter().map(|p| {
        let mut c = vec![FqPoly::zero(&field); n + 1];
        c[0] = -p;
        c[n] = FqPoly::one(&field);
        c
    });
    let mut coeffs = vec![FqPoly::zero(&field)];
    coeffs.extend(product_of_roots(&field, factors));
    coeffs[1] = &coeffs[1] + &FqPoly::constant(&field, w);
    let map = RationalMap::polynomial(&coeffs)?;
    let mut cycles = Vec::new();
    for f in fs {
        let start = ProjPoint::affine(f.clone());
        let rec = orbit(&map, &start, Budgets::default());
        if rec.cycle.len() != n || rec.cycle[0] != start {
            return Err(Error::HypothesisViolated(format!("{f} is not on an {n}-cycle")));
        }
        cycles.push(rec);
    }
    Ok(Construction { map, orbits: cycles })
}

/// A map together with the orbits that witness its advertised dynamics.
#[derive(Clone, Debug, Serialize)]
pub struct Construction {
    pub map: RationalMap,
    pub orbits: Vec<OrbitRecord>,
}

/// `psi(X) / X^(2q-2)` with `psi` interpolating `0 -> 1 -> w_1 -> ... ->
/// w_(q-2) -> 0`, which has the `(q+1)`-cycle `0 -> inf -> 1 -> ... -> 0`.
pub fn sharp_rational_map(field: &Field) -> Result<Construction> {
    let q = field.order() as usize;
    let mut chain = vec![FqElem::ZERO];
    chain.extend(enumerate_units(field));
    let mut table = vec![FqElem::ZERO; q];
    for (i, &a) in chain.iter().enumerate() {
        table[a.index() as usize] = chain[(i + 1) % q];
    }
    let psi = interpolate_graph(&GraphSpec::new(field, table)?, TargetDegree::Exact(2 * q - 2))?;
    let num = psi.polynomial_coeffs().expect("interpolation is polynomial");
    let mut den = vec![FqPoly::zero(field); 2 * q - 1];
    den[2 * q - 2] = FqPoly::one(field);
    let map = RationalMap::new(num, den)?;
    let rec = orbit(&map, &ProjPoint::constant(field, FqElem::ZERO), Budgets::default());
    if !rec.is_closed() || rec.cycle.len() != q + 1 || map.bad_places().len() > 1 {
        return Err(Error::HypothesisViolated("sharp construction lost its cycle".into()));
    }
    Ok(Construction { map, orbits: vec![rec] })
}
