use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::algebra::{finite_places_up_to, Place, RatFunc};
use crate::dynamics::{finite_orbit_analyze, periodic_points_integral, reduced_graph, OrbitRecord};
use crate::error::{Error, Result};
use crate::maps::{detect_constant_field_conjugacy, invert_point, reduce_map, ConjugacyOutcome, RationalMap};
use crate::projective::{distance_support, log_distance, reduce_point, ProjPoint};

use super::report::{Status, VerificationReport};

fn list(points: &[ProjPoint]) -> String {
    let items: Vec<String> = points.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn instance(phi: &RationalMap, points: &[ProjPoint]) -> String {
    format!("phi = {phi}, points {}", list(points))
}

fn too_many_bad(phi: &RationalMap) -> Option<String> {
    let bad = phi.bad_places();
    (bad.len() > 1).then(|| {
        let names: Vec<String> = bad.iter().map(ToString::to_string).collect();
        format!("{} places of bad reduction: {}", bad.len(), names.join(", "))
    })
}

/// Checks that `cycle` lists a genuine cycle of `phi` in orbit order.
pub fn verify_cycle(phi: &RationalMap, cycle: &[ProjPoint]) -> Result<()> {
    if cycle.is_empty() {
        return Err(Error::NotACycle("empty".into()));
    }
    let distinct: BTreeSet<&ProjPoint> = cycle.iter().collect();
    if distinct.len() != cycle.len() {
        return Err(Error::NotACycle(format!("repeated points in {}", list(cycle))));
    }
    for (i, p) in cycle.iter().enumerate() {
        let next = &cycle[(i + 1) % cycle.len()];
        let image = phi.evaluate(p);
        if &image != next {
            return Err(Error::NotACycle(format!("{p} maps to {image}, not {next}")));
        }
    }
    Ok(())
}

/// Places where some pairwise distance can be positive, plus every place of
/// degree at most 2 and infinity. Outside this set every distance is 0.
pub fn coverage_places(points: &[ProjPoint]) -> Result<Vec<Place>> {
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    let field = first.field();
    let mut places: BTreeSet<Place> = finite_places_up_to(field, 2).into_iter().collect();
    places.insert(Place::infinity(field));
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for (place, _) in distance_support(&points[i], &points[j])? {
                places.insert(place);
            }
        }
    }
    Ok(places.into_iter().collect())
}

fn good_coverage(phi: &RationalMap, points: &[ProjPoint]) -> Result<Vec<Place>> {
    Ok(coverage_places(points)?
        .into_iter()
        .filter(|p| !phi.is_bad(p))
        .collect())
}

/// Size of the smallest residue field at a place of good reduction.
pub fn min_good_residue(phi: &RationalMap) -> u64 {
    let field = phi.field();
    let inf = Place::infinity(field);
    let mut best = (!phi.is_bad(&inf)).then(|| inf.residue_size());
    let mut e = 1;
    while best.is_none() {
        best = finite_places_up_to(field, e)
            .iter()
            .filter(|p| p.degree() == e && !phi.is_bad(p))
            .map(Place::residue_size)
            .min();
        e += 1;
    }
    best.expect("some place is good")
}

fn delta(a: &ProjPoint, b: &ProjPoint, place: &Place) -> i64 {
    log_distance(a, b, place).finite().expect("distinct points")
}

/// First pair whose distance at `place` differs from that of the first pair.
fn unequal_pair(points: &[ProjPoint], place: &Place) -> Option<Value> {
    let mut first: Option<(usize, usize, i64)> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let v = delta(&points[i], &points[j], place);
            match first {
                None => first = Some((i, j, v)),
                Some((a, b, w)) if w != v => {
                    return Some(json!({
                        "place": place.to_string(),
                        "pair": [points[a].to_string(), points[b].to_string()],
                        "delta": w,
                        "other_pair": [points[i].to_string(), points[j].to_string()],
                        "other_delta": v,
                    }))
                }
                _ => {}
            }
        }
    }
    None
}

pub fn check_equidistance(phi: &RationalMap, cycle: &[ProjPoint]) -> Result<VerificationReport> {
    const CLAIM: &str = "equidistance";
    if let Some(reason) = too_many_bad(phi) {
        return Ok(VerificationReport::inapplicable(CLAIM, instance(phi, cycle), reason));
    }
    verify_cycle(phi, cycle)?;
    let mut r = VerificationReport::new(CLAIM, instance(phi, cycle));
    r.stat("length", cycle.len());
    if cycle.len() < 2 {
        r.status = Status::Inapplicable;
        r.reason = Some("a fixed point has no pairs".into());
        return Ok(r);
    }
    let places = good_coverage(phi, cycle)?;
    let mut positive = serde_json::Map::new();
    for place in &places {
        match unequal_pair(cycle, place) {
            Some(w) => r.fail(w),
            None => {
                let v = delta(&cycle[0], &cycle[1], place);
                if v > 0 {
                    positive.insert(place.to_string(), v.into());
                }
            }
        }
    }
    r.stat("places_checked", places.len());
    r.stat("positive_distances", Value::Object(positive));
    Ok(r)
}

pub fn check_cycle_bounds(phi: &RationalMap, cycle: &[ProjPoint]) -> Result<VerificationReport> {
    const CLAIM: &str = "cycle_bounds";
    if let Some(reason) = too_many_bad(phi) {
        return Ok(VerificationReport::inapplicable(CLAIM, instance(phi, cycle), reason));
    }
    verify_cycle(phi, cycle)?;
    let mut r = VerificationReport::new(CLAIM, instance(phi, cycle));
    let n = cycle.len();
    let q = phi.field().order() as usize;
    let d = phi.degree();
    r.stat("length", n);
    r.stat("q_plus_1", q + 1);
    // For F_q(t) the constant p^D of the general bound is q.
    r.stat("note", "p^D = q for the rational function field");
    if n > q + 1 {
        r.fail(json!({"bound": "q+1", "length": n, "limit": q + 1}));
    }
    r.stat("attains_q_plus_1", n == q + 1);
    for place in good_coverage(phi, cycle)? {
        let limit = place.residue_size() as usize + 1;
        if n > limit {
            r.fail(json!({"bound": "#k(p)+1", "place": place.to_string(), "length": n, "limit": limit}));
        }
    }
    r.stat("two_d", 2 * d);
    if n > 2 * d {
        match detect_constant_field_conjugacy(phi, cycle) {
            Ok(ConjugacyOutcome::Conjugate(w)) => {
                r.stat("conjugacy", json!({"psi": w.psi.to_string(), "mobius": w.mobius.to_string(),
                    "extension_degree": w.extension_degree}));
            }
            Ok(ConjugacyOutcome::SmallSet { size, bound }) => {
                r.fail(json!({"bound": "2d", "length": n, "small_set": [size, bound]}));
            }
            Err(Error::Unsupported(msg)) => {
                r.stat("conjugacy", format!("unsupported: {msg}"));
                if r.status == Status::Pass {
                    r.status = Status::Inapplicable;
                    r.reason = Some(msg);
                }
            }
            Err(e) => r.fail(json!({"bound": "2d", "length": n, "conjugacy_error": e.to_string()})),
        }
    }
    Ok(r)
}

/// Checks the distance relations along an orbit `P_{-m+1} -> ... -> P_0 -> P_0`
/// of some iterate of `phi`, given in that order.
fn check_fixed_point_chain(
    r: &mut VerificationReport,
    chain: &[ProjPoint],
    places: &[Place],
    kmin: u64,
) {
    let m = chain.len();
    let p = |i: usize| &chain[m - 1 - i];
    if m as u64 > kmin + 2 {
        r.fail(json!({"bound": "#k(p)+2", "chain": list(chain), "limit": kmin + 2}));
    }
    for place in places {
        for b in 2..m {
            for a in 1..b {
                let ba = delta(p(b), p(a), place);
                let b0 = delta(p(b), p(0), place);
                let a0 = delta(p(a), p(0), place);
                if ba != b0 || b0 > a0 {
                    r.fail(json!({
                        "bound": "fixed point chain",
                        "place": place.to_string(),
                        "chain": list(chain),
                        "a": a, "b": b,
                        "deltas": [ba, b0, a0],
                    }));
                }
            }
        }
        if let Some(w) = unequal_pair(&chain[1..], place) {
            r.fail(json!({"bound": "equidistance without first point", "chain": list(chain), "detail": w}));
        }
    }
}

pub fn check_orbit_bounds(phi: &RationalMap, orbit: &OrbitRecord) -> Result<VerificationReport> {
    const CLAIM: &str = "orbit_bounds";
    if !orbit.is_closed() {
        return Err(Error::NotClosed);
    }
    let points = orbit.points();
    if let Some(reason) = too_many_bad(phi) {
        return Ok(VerificationReport::inapplicable(CLAIM, instance(phi, &points), reason));
    }
    let report = finite_orbit_analyze(phi, orbit)?;
    let mut r = VerificationReport::new(CLAIM, instance(phi, &points));
    let kmin = min_good_residue(phi);
    let size = report.size();
    let n = report.cycle_length;
    let d = phi.degree();
    r.stat("size", size);
    r.stat("cycle_length", n);
    r.stat("tail_length", report.tail_length);
    r.stat("min_good_residue", kmin);
    let limit = 3 * kmin as usize + 6;
    r.stat("bound_3k_plus_6", limit);
    if size > limit {
        r.fail(json!({"bound": "3#k(p)+6", "size": size, "limit": limit}));
    }
    let places = good_coverage(phi, &points)?;
    if n >= 4 && report.tail_length > 1 {
        r.stat("tail_reductions", "checked");
        for place in &places {
            let tail = report.tail();
            let collide = if place.try_residue_field().is_ok() {
                let reduced: BTreeSet<usize> = tail.iter().map(|p| reduce_point(p, place).index()).collect();
                reduced.len() != tail.len()
            } else {
                // Points share a reduction exactly when their distance is positive.
                (0..tail.len()).any(|i| (i + 1..tail.len()).any(|j| delta(&tail[i], &tail[j], place) > 0))
            };
            if collide {
                r.fail(json!({"bound": "distinct tail reductions", "place": place.to_string(),
                    "tail": list(report.tail())}));
            }
        }
    } else {
        r.stat("tail_reductions", "inapplicable");
    }
    if n <= 3 {
        let mut checked = 0;
        for chain in report.chains.iter().filter(|c| c.len() >= 2) {
            check_fixed_point_chain(&mut r, chain, &places, kmin);
            checked += 1;
        }
        r.stat("fixed_point_chains", checked);
    }
    let cubic = 6 * d.pow(3) + 3;
    if size > cubic {
        match conjugate_iterate(phi, &report) {
            Some(k) => r.stat("conjugate_iterate", k),
            None => r.fail(json!({"bound": "6d^3+3", "size": size, "limit": cubic})),
        }
    }
    Ok(r)
}

/// Some `k <= 3` for which `phi^k` is detected as conjugate to a map over a
/// finite field, from the cycle or the `phi^n` chains of the orbit.
fn conjugate_iterate(phi: &RationalMap, report: &crate::dynamics::FiniteOrbitReport) -> Option<usize> {
    let conj = |map: &RationalMap, set: &[ProjPoint]| {
        matches!(detect_constant_field_conjugacy(map, set), Ok(ConjugacyOutcome::Conjugate(_)))
    };
    if conj(phi, report.cycle()) {
        return Some(1);
    }
    let n = report.cycle_length;
    if n > 3 {
        return None;
    }
    let iterate = phi.iterate(n).ok()?;
    report
        .chains
        .iter()
        .any(|c| c.len() > 2 && conj(&iterate, &c[1..]))
        .then_some(n)
}

pub fn check_reduced_dichotomy(
    phi: &RationalMap,
    cycle: &[ProjPoint],
    place: &Place,
) -> Result<VerificationReport> {
    const CLAIM: &str = "reduced_dichotomy";
    let inst = format!("{} at {place}", instance(phi, cycle));
    if let Some(reason) = too_many_bad(phi) {
        return Ok(VerificationReport::inapplicable(CLAIM, inst, reason));
    }
    if phi.is_bad(place) {
        return Ok(VerificationReport::inapplicable(CLAIM, inst, "bad reduction at the place"));
    }
    verify_cycle(phi, cycle)?;
    let mut r = VerificationReport::new(CLAIM, inst);
    let graph = reduced_graph(&reduce_map(phi, place)?)?;
    let n = cycle.len();
    let m = graph
        .period(&reduce_point(&cycle[0], place))
        .expect("good reduction maps periodic points to periodic points");
    r.stat("n", n);
    r.stat("m", m);
    if !(m == 1 || m == n) || !n.is_multiple_of(m) {
        r.fail(json!({"place": place.to_string(), "n": n, "m": m}));
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePoints {
    pub u: RatFunc,
    pub w: RatFunc,
    pub a: RatFunc,
    pub b: RatFunc,
}

fn cross(p: &ProjPoint, q: &ProjPoint) -> crate::algebra::FqPoly {
    &(p.x() * q.y()) - &(q.x() * p.y())
}

/// Solves for the units `(u, w)` attached to `P` by three points `Q_i`
/// equidistant from it at every finite place, and checks `A u + B w = 1`.
pub fn three_points_witness(
    q1: &ProjPoint,
    q2: &ProjPoint,
    q3: &ProjPoint,
    p: &ProjPoint,
) -> Result<(ThreePoints, VerificationReport)> {
    let all = [q1, q2, q3, p];
    for i in 0..4 {
        if all[..i].contains(&all[i]) {
            return Err(Error::DuplicateInput);
        }
    }
    for q in [q1, q2, q3] {
        for (place, _) in distance_support(p, q)? {
            if place.is_infinite() {
                continue;
            }
            let v: Vec<i64> = [q1, q2, q3].iter().map(|q| delta(p, q, &place)).collect();
            if v[0] != v[1] || v[1] != v[2] {
                return Err(Error::HypothesisViolated(format!(
                    "distances from {p} at {place} are {v:?}"
                )));
            }
        }
    }
    let ratio = |a, b| RatFunc::new(a, b).expect("distinct points have nonzero cross terms");
    let u = ratio(cross(q1, p), cross(q3, p));
    let w = ratio(cross(q2, p), cross(q3, p));
    let den = cross(q1, q2);
    let a = ratio(cross(q3, q2), den.clone());
    let b = ratio(cross(q1, q3), den);
    let mut r = VerificationReport::new(
        "three_points",
        format!("Q = {}, P = {p}", list(&[q1.clone(), q2.clone(), q3.clone()])),
    );
    r.stat("u", u.to_string());
    r.stat("w", w.to_string());
    r.stat("A", a.to_string());
    r.stat("B", b.to_string());
    for (name, x) in [("u", &u), ("w", &w)] {
        if x.as_constant().is_none_or(|c| c.is_zero()) {
            r.fail(json!({"not_a_unit": name, "value": x.to_string()}));
        }
    }
    let lhs = &(&a * &u) + &(&b * &w);
    if lhs != RatFunc::one(p.field()) {
        r.fail(json!({"unit_equation": lhs.to_string()}));
    }
    Ok((ThreePoints { u, w, a, b }, r))
}

/// `(Q1, Q2, Q3, P) = (P_{-1}, P_{-a}, P_0, P_{-m+1})` for every chain
/// `P_{-m+1} -> ... -> P_0` of an iterate and every `1 < a < m - 1`, in
/// coordinates where the bad place (if any) is at infinity.
pub fn fixed_point_configurations(phi: &RationalMap, orbit: &OrbitRecord) -> Result<Vec<[ProjPoint; 4]>> {
    let report = finite_orbit_analyze(phi, orbit)?;
    let mv: Box<dyn Fn(&ProjPoint) -> ProjPoint> = match phi.bad_places() {
        [] => Box::new(|p: &ProjPoint| p.clone()),
        [b] if b.is_infinite() => Box::new(|p: &ProjPoint| p.clone()),
        [b] if b.degree() == 1 => {
            let a = phi.field().neg(b.poly().expect("finite").coeff(0));
            Box::new(move |p: &ProjPoint| invert_point(p, a))
        }
        _ => return Ok(Vec::new()),
    };
    let mut out = Vec::new();
    for chain in &report.chains {
        let m = chain.len();
        if m < 4 {
            continue;
        }
        let p = |i: usize| mv(&chain[m - 1 - i]);
        for a in 2..m - 1 {
            out.push([p(1), p(a), p(0), p(m - 1)]);
        }
    }
    Ok(out)
}

pub fn check_equidistant_cardinality(points: &[ProjPoint], place: &Place) -> Result<VerificationReport> {
    for i in 0..points.len() {
        if points[..i].contains(&points[i]) {
            return Err(Error::DuplicateInput);
        }
    }
    if let Some(w) = unequal_pair(points, place) {
        return Err(Error::HypothesisViolated(w.to_string()));
    }
    let mut r = VerificationReport::new(
        "equidistant_cardinality",
        format!("{} at {place}", list(points)),
    );
    let limit = place.residue_size() as usize + 1;
    r.stat("size", points.len());
    r.stat("limit", limit);
    r.stat("equality", points.len() == limit);
    if points.len() > limit {
        r.fail(json!({"size": points.len(), "limit": limit}));
    }
    Ok(r)
}

pub fn check_per_bound_polynomial(phi: &RationalMap) -> Result<VerificationReport> {
    let per = periodic_points_integral(phi)?;
    let field = phi.field();
    let q = field.order() as usize;
    let d = phi.degree();
    let mut r = VerificationReport::new("per_bound_polynomial", format!("phi = {phi}"));
    let count = per.count_affine();
    let bound = (q - 1) * (d - 1) + 1;
    r.stat("periodic_points", count);
    r.stat("bound", bound);
    r.stat("equality", count == bound);
    r.stat("infinity_period", per.infinity_period);
    if count > bound {
        r.fail(json!({"bound": "(q-1)(d-1)+1", "count": count, "limit": bound}));
    }
    if let Some((p, _)) = per.points.iter().find(|(p, _)| !p.is_integral()) {
        r.fail(json!({"non_integral": p.to_string()}));
    }
    if let Some((p, n)) = per.points.iter().find(|(_, n)| *n > q) {
        r.fail(json!({"period_above_q": p.to_string(), "period": n}));
    }
    let fixed: Vec<ProjPoint> = per.points.iter().filter(|(_, n)| *n == 1).map(|(p, _)| p.clone()).collect();
    let lengths: BTreeSet<usize> = per.points.iter().map(|&(_, n)| n).filter(|&n| n > 1).collect();
    let all: Vec<ProjPoint> = per.points.iter().map(|(p, _)| p.clone()).collect();
    let conjugate = |set: &[ProjPoint]| {
        matches!(detect_constant_field_conjugacy(phi, set), Ok(ConjugacyOutcome::Conjugate(_)))
    };
    let case = if count <= d.min(q) {
        "min_d_q"
    } else if conjugate(&all) {
        "a"
    } else if lengths.is_empty() {
        if count > d {
            r.fail(json!({"case": "b", "count": count, "limit": d}));
        }
        "b"
    } else if lengths.len() == 1 && fixed.len() <= 1 && count - fixed.len() >= 2 * lengths.iter().next().unwrap() {
        "c"
    } else {
        r.fail(json!({"unclassified": all.iter().map(ToString::to_string).collect::<Vec<_>>()}));
        "none"
    };
    r.stat("case", case);
    // Sub-bounds for a union of n-cycles with at most one fixed point.
    if lengths.len() == 1 && fixed.len() <= 1 {
        let n = *lengths.iter().next().unwrap();
        let extra = fixed.len();
        for cycle in cycles_of_length(phi, &per.points, n) {
            let mut set = fixed.clone();
            set.extend(cycle);
            if n + extra > q {
                r.fail(json!({"bound": "n + #fix <= q", "n": n, "fixed": extra}));
            }
            if n + extra > d && !conjugate(&set) {
                r.fail(json!({"bound": "n + #fix <= d", "n": n, "fixed": extra, "set": list(&set)}));
            }
        }
        r.stat("cycle_length", n);
    }
    Ok(r)
}

fn cycles_of_length(phi: &RationalMap, points: &[(ProjPoint, usize)], n: usize) -> Vec<Vec<ProjPoint>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (p, k) in points {
        if *k != n || seen.contains(p) {
            continue;
        }
        let mut cycle = vec![p.clone()];
        let mut cur = phi.evaluate(p);
        while &cur != p {
            cycle.push(cur.clone());
            cur = phi.evaluate(&cur);
        }
        seen.extend(cycle.iter().cloned());
        out.push(cycle);
    }
    out
}
