//! Strategies and property checks shared by the property suites and the
//! acceptance run.
#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use funcdyn_core::algebra::{
    factorize, finite_places_up_to, poly_gcd, Field, FqElem, FqPoly, Place, RatFunc, Valuation,
};
use funcdyn_core::constructions::{interpolate_graph, GraphSpec, TargetDegree};
use funcdyn_core::dynamics::{orbit, Budgets};
use funcdyn_core::maps::{conjugate, reduce_map, Mobius, RationalMap};
use funcdyn_core::projective::{log_distance, log_distance_coords, reduce_point, ProjPoint};

pub fn fields() -> &'static [Field] {
    static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();
    FIELDS.get_or_init(|| [2, 3, 4, 5, 7].iter().map(|&q| Field::of_order(q).unwrap()).collect())
}

pub fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(fields().to_vec())
}

pub fn poly(field: &Field, max_deg: usize) -> impl Strategy<Value = FqPoly> {
    let field = field.clone();
    let q = field.order();
    prop::collection::vec(0..q, 0..=max_deg + 1)
        .prop_map(move |c| FqPoly::new(&field, c.into_iter().map(|i| field.elem(i)).collect()))
}

pub fn nonzero_poly(field: &Field, max_deg: usize) -> impl Strategy<Value = FqPoly> {
    poly(field, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn point(field: &Field, max_deg: usize) -> impl Strategy<Value = ProjPoint> {
    (poly(field, max_deg), poly(field, max_deg)).prop_filter_map("not both zero", |(x, y)| ProjPoint::new(x, y).ok())
}

pub fn map(field: &Field, max_d: usize, coeff_deg: usize) -> impl Strategy<Value = RationalMap> {
    let field = field.clone();
    (1..=max_d).prop_flat_map(move |d| {
        prop::collection::vec(poly(&field, coeff_deg), 2 * d + 2).prop_filter_map("nonzero resultant", move |c| {
            RationalMap::new(c[..=d].to_vec(), c[d + 1..].to_vec()).ok()
        })
    })
}

/// Places of degree up to 2 plus infinity, extended until one is good.
pub fn good_places(phi: &RationalMap) -> Vec<Place> {
    let field = phi.field();
    let mut all = finite_places_up_to(field, 2);
    all.push(Place::infinity(field));
    let mut good: Vec<Place> = all.into_iter().filter(|p| !phi.is_bad(p)).collect();
    let mut e = 3;
    while good.is_empty() {
        good = finite_places_up_to(field, e).into_iter().filter(|p| !phi.is_bad(p)).collect();
        e += 1;
    }
    good
}

pub fn any_place(field: &Field, index: usize) -> Place {
    let mut all = finite_places_up_to(field, 2);
    all.push(Place::infinity(field));
    all[index % all.len()].clone()
}

/// A map with a cycle of length at least 2, in coordinates where its points
/// are not constants: a permutation of `F_q` interpolated to degree `q` or
/// `q + 1`, conjugated by a Mobius map with unit determinant.
#[derive(Clone, Debug)]
pub struct CycleInstance {
    pub map: RationalMap,
    pub cycle: Vec<ProjPoint>,
}

pub fn cycle_instance() -> impl Strategy<Value = CycleInstance> {
    field().prop_flat_map(|k| {
        let q = k.order() as usize;
        let elems: Vec<u32> = (0..q as u32).collect();
        (
            Just(k.clone()),
            Just(elems).prop_shuffle(),
            0..q,
            0..2usize,
            poly(&k, 1),
            poly(&k, 1),
            1..k.order(),
        )
            .prop_filter_map("cycle of length >= 2", |(k, perm, start, bump, s, r, u)| {
                let table: Vec<FqElem> = perm.iter().map(|&i| k.elem(i)).collect();
                let g = GraphSpec::new(&k, table).ok()?;
                let q = k.order() as usize;
                let phi = interpolate_graph(&g, TargetDegree::Exact(q + bump)).ok()?;
                // [[u + s r, s], [r, 1]] has determinant u.
                let one = FqPoly::one(&k);
                let a = &FqPoly::constant(&k, k.elem(u)) + &(&s * &r);
                let mu = Mobius::new(a, s, r, one).ok()?;
                let map = conjugate(&phi, &mu).ok()?;
                let rec = orbit(&phi, &ProjPoint::constant(&k, k.elem(start as u32)), Budgets::default());
                if rec.cycle.len() < 2 {
                    return None;
                }
                let cycle = rec.cycle.iter().map(|p| mu.apply(p)).collect();
                Some(CycleInstance { map, cycle })
            })
    })
}

pub fn finite(v: Valuation) -> i64 {
    v.finite().expect("distinct points")
}

pub fn triangle(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint, place: &Place) -> Result<(), TestCaseError> {
    let pr = log_distance(p, r, place);
    let lower = log_distance(p, q, place).min(log_distance(q, r, place));
    prop_assert!(pr >= lower, "delta({p},{r}) = {pr} below {lower} at {place}");
    Ok(())
}

pub fn non_contraction(phi: &RationalMap, p: &ProjPoint, q: &ProjPoint, place_index: usize) -> Result<(), TestCaseError> {
    let places = good_places(phi);
    let place = &places[place_index % places.len()];
    let before = log_distance(p, q, place);
    let after = log_distance(&phi.evaluate(p), &phi.evaluate(q), place);
    prop_assert!(after >= before, "{phi} contracts {p}, {q} at {place}: {before} -> {after}");
    Ok(())
}

pub fn commutation(phi: &RationalMap, p: &ProjPoint, place_index: usize) -> Result<(), TestCaseError> {
    let places = good_places(phi);
    let place = &places[place_index % places.len()];
    let psi = reduce_map(phi, place).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let left = reduce_point(&phi.evaluate(p), place);
    let right = psi.evaluate(&reduce_point(p, place));
    prop_assert_eq!(left, right, "{} at {} on {}", phi, place, p);
    Ok(())
}

pub fn cycle_isometry(inst: &CycleInstance, place_index: usize) -> Result<(), TestCaseError> {
    let places = good_places(&inst.map);
    let place = &places[place_index % places.len()];
    let c = &inst.cycle;
    let n = c.len();
    for k in 1..n {
        for i in 0..n {
            for j in i + 1..n {
                let a = finite(log_distance(&c[i], &c[j], place));
                let b = finite(log_distance(&c[(i + k) % n], &c[(j + k) % n], place));
                prop_assert_eq!(a, b, "{} at {}: ({}, {}) shifted by {}", inst.map, place, i, j, k);
            }
        }
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn gcd_rule(inst: &CycleInstance, place_index: usize) -> Result<(), TestCaseError> {
    let places = good_places(&inst.map);
    let place = &places[place_index % places.len()];
    let c = &inst.cycle;
    let n = c.len();
    for i in 0..n {
        for j in i + 1..n {
            let d = gcd(j - i, n);
            let a = finite(log_distance(&c[i], &c[j], place));
            let b = finite(log_distance(&c[0], &c[d], place));
            prop_assert_eq!(a, b, "{} at {}: ({}, {}) vs (0, {})", inst.map, place, i, j, d);
        }
    }
    Ok(())
}

/// Sum of `deg(v) * v(r)` over every place where `r` is not a unit.
pub fn product_formula(r: &RatFunc) -> Result<(), TestCaseError> {
    let field = r.field();
    let mut total = 0i64;
    let mut places = Vec::new();
    for f in [r.num(), r.den()] {
        for (pi, _) in factorize(f).unwrap().factors {
            places.push(Place::finite(pi).unwrap());
        }
    }
    places.push(Place::infinity(field));
    for place in &places {
        // Multiplicity oracle by repeated division, independent of factorize.
        let mult = |f: &FqPoly| match place.poly() {
            Some(pi) => {
                let mut f = f.clone();
                let mut m = 0i64;
                while pi.divides(&f) {
                    f = f.div_exact(pi).unwrap();
                    m += 1;
                }
                m
            }
            None => -(f.deg().unwrap() as i64),
        };
        let v = mult(r.num()) - mult(r.den());
        prop_assert_eq!(Valuation::Finite(v), place.valuation(r));
        total += place.degree() as i64 * v;
    }
    prop_assert_eq!(total, 0, "{}", r);
    Ok(())
}

/// Irreducibility by trial division with every monic polynomial of at most
/// half the degree.
pub fn irreducible_by_trial(f: &FqPoly) -> bool {
    let field = f.field();
    let n = f.deg().unwrap();
    (1..=n / 2).all(|e| funcdyn_core::algebra::factor::monic_polys(field, e).all(|g| !g.divides(f)))
}

pub fn factorize_round_trip(f: &FqPoly) -> Result<(), TestCaseError> {
    let fac = factorize(f).unwrap();
    prop_assert_eq!(&fac.expand(f.field()), f);
    for (i, (g, m)) in fac.factors.iter().enumerate() {
        prop_assert!(*m >= 1);
        prop_assert!(g.is_monic());
        prop_assert!(irreducible_by_trial(g), "{} is reducible", g);
        for (h, _) in &fac.factors[..i] {
            prop_assert!(poly_gcd(g, h).unwrap().is_one());
        }
    }
    Ok(())
}

pub fn scaling_invariance(p: &ProjPoint, q: &ProjPoint, a: &RatFunc, b: &RatFunc, place: &Place) -> Result<(), TestCaseError> {
    let lift = |pt: &ProjPoint, s: &RatFunc| {
        (&RatFunc::from_poly(pt.x().clone()) * s, &RatFunc::from_poly(pt.y().clone()) * s)
    };
    let (x1, y1) = lift(p, a);
    let (x2, y2) = lift(q, b);
    prop_assert_eq!(log_distance_coords((&x1, &y1), (&x2, &y2), place), log_distance(p, q, place));
    Ok(())
}

pub fn positivity_matches_reduction(p: &ProjPoint, q: &ProjPoint, place: &Place) -> Result<(), TestCaseError> {
    let collide = reduce_point(p, place) == reduce_point(q, place);
    let positive = log_distance(p, q, place) > Valuation::Finite(0);
    prop_assert_eq!(collide, positive);
    Ok(())
}
