use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{finite_places_up_to, Field, FqPoly, Place};
use crate::dynamics::{orbits_bounded, cycles_of, Budgets};
use crate::error::{Error, Result};
use crate::maps::RationalMap;
use crate::projective::polys_up_to;

use super::checks::{
    check_cycle_bounds, check_equidistance, check_orbit_bounds, check_per_bound_polynomial,
    check_reduced_dichotomy, fixed_point_configurations, three_points_witness,
};
use super::report::{Status, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `X^d + c_(d-1) X^(d-1) + ... + c_0`.
    MonicPolynomial,
    /// `[F : G]` with every coefficient of degree at most the bound.
    Rational,
    /// `[F : G]` with constant coefficients.
    ConstantRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Equidistance,
    CycleBounds,
    OrbitBounds,
    ReducedDichotomy,
    PerBound,
    ThreePoints,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Equidistance,
        Check::CycleBounds,
        Check::OrbitBounds,
        Check::ReducedDichotomy,
        Check::PerBound,
        Check::ThreePoints,
    ];
}

#[derive(Clone, Debug)]
pub struct CensusSpec {
    pub field: Field,
    pub family: Family,
    pub degree: usize,
    pub coeff_bound: usize,
    pub point_bound: usize,
    pub budgets: Budgets,
    pub checks: Vec<Check>,
    /// Beyond this many candidate maps, a seeded sample of this size is used.
    pub sample_cap: usize,
    pub seed: u64,
    pub workers: usize,
}

impl CensusSpec {
    pub fn new(field: &Field, family: Family, degree: usize) -> CensusSpec {
        CensusSpec {
            field: field.clone(),
            family,
            degree,
            coeff_bound: 0,
            point_bound: 1,
            budgets: Budgets { max_steps: 1000, max_degree: 16 },
            checks: Check::ALL.to_vec(),
            sample_cap: 2000,
            seed: 0,
            workers: 1,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckTally {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<VerificationReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    /// Size of the coefficient box before deduplication.
    pub candidates: u128,
    pub sampled: bool,
    /// Distinct maps with at most one place of bad reduction.
    pub maps: usize,
    pub skipped_degenerate: usize,
    pub skipped_bad_reduction: usize,
    pub cycles: usize,
    pub cycle_length_histogram: BTreeMap<usize, usize>,
    pub max_cycle_length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_cycle_map: Option<String>,
    /// Closed orbits with cycle length at least 4 and a tail of length at least 2.
    pub tail_checks_applicable: usize,
    /// Cycles of length exactly `q + 1`.
    pub q_plus_1_attained: usize,
    pub checks: BTreeMap<String, CheckTally>,
}

impl CensusReport {
    pub fn failures(&self) -> usize {
        self.checks.values().map(|t| t.fail).sum()
    }
}

struct MapOutcome {
    literal: String,
    cycle_lengths: Vec<usize>,
    tail_applicable: usize,
    reports: Vec<VerificationReport>,
}

fn digits(mut code: u128, radix: u128, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = (code % radix) as usize;
            code /= radix;
            d
        })
        .collect()
}

fn build(spec: &CensusSpec, coeffs: &[FqPoly], code: u128) -> Result<RationalMap> {
    let d = spec.degree;
    let radix = coeffs.len() as u128;
    let field = &spec.field;
    match spec.family {
        Family::MonicPolynomial => {
            let mut c: Vec<FqPoly> = digits(code, radix, d).into_iter().map(|i| coeffs[i].clone()).collect();
            c.push(FqPoly::one(field));
            RationalMap::polynomial(&c)
        }
        Family::Rational | Family::ConstantRational => {
            let c: Vec<FqPoly> = digits(code, radix, 2 * d + 2).into_iter().map(|i| coeffs[i].clone()).collect();
            RationalMap::new(c[..=d].to_vec(), c[d + 1..].to_vec())
        }
    }
}

fn run_checks(spec: &CensusSpec, phi: &RationalMap, places: &[Place]) -> MapOutcome {
    let orbits = orbits_bounded(phi, spec.point_bound, spec.budgets);
    let cycles = cycles_of(&orbits);
    let mut reports = Vec::new();
    let mut keep = |r: Result<VerificationReport>, claim: &str| match r {
        Ok(r) => reports.push(r),
        Err(e) => {
            let mut r = VerificationReport::new(claim, format!("phi = {phi}"));
            r.fail(serde_json::json!({"error": e.to_string()}));
            reports.push(r);
        }
    };
    for check in &spec.checks {
        match check {
            Check::Equidistance => {
                for c in &cycles {
                    keep(check_equidistance(phi, c), "equidistance");
                }
            }
            Check::CycleBounds => {
                for c in &cycles {
                    keep(check_cycle_bounds(phi, c), "cycle_bounds");
                }
            }
            Check::OrbitBounds => {
                for o in orbits.iter().filter(|o| o.is_closed()) {
                    keep(check_orbit_bounds(phi, o), "orbit_bounds");
                }
            }
            Check::ReducedDichotomy => {
                for c in &cycles {
                    for place in places.iter().filter(|p| !phi.is_bad(p)) {
                        keep(check_reduced_dichotomy(phi, c, place), "reduced_dichotomy");
                    }
                }
            }
            Check::PerBound => {
                if spec.family == Family::MonicPolynomial && spec.degree >= 2 {
                    keep(check_per_bound_polynomial(phi), "per_bound_polynomial");
                }
            }
            Check::ThreePoints => {
                for o in orbits.iter().filter(|o| o.is_closed()) {
                    match fixed_point_configurations(phi, o) {
                        Ok(configs) => {
                            for [q1, q2, q3, p] in configs {
                                keep(three_points_witness(&q1, &q2, &q3, &p).map(|(_, r)| r), "three_points");
                            }
                        }
                        Err(e) => keep(Err(e), "three_points"),
                    }
                }
            }
        }
    }
    let tail_applicable = orbits
        .iter()
        .filter(|o| o.is_closed() && o.cycle.len() >= 4 && o.transient.len() >= 2)
        .count();
    MapOutcome {
        literal: phi.to_string(),
        cycle_lengths: cycles.iter().map(Vec::len).collect(),
        tail_applicable,
        reports,
    }
}

/// The maps of a census box: deduplicated, with at most one bad place.
#[derive(Clone, Debug)]
pub struct CensusMaps {
    pub candidates: u128,
    pub sampled: bool,
    pub maps: Vec<RationalMap>,
    pub skipped_degenerate: usize,
    pub skipped_bad_reduction: usize,
}

/// Enumerates the coefficient box of `spec`, or a seeded sample of it when
/// the box is larger than `sample_cap`.
pub fn census_maps(spec: &CensusSpec) -> Result<CensusMaps> {
    if spec.degree < 1 {
        return Err(Error::DegreeTooLow);
    }
    let bound = match spec.family {
        Family::ConstantRational => 0,
        _ => spec.coeff_bound,
    };
    let coeffs: Vec<FqPoly> = polys_up_to(&spec.field, bound).collect();
    let slots = match spec.family {
        Family::MonicPolynomial => spec.degree,
        _ => 2 * spec.degree + 2,
    };
    let candidates = (coeffs.len() as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    let sampled = candidates > spec.sample_cap as u128;
    let codes: Vec<u128> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let mut seen = BTreeSet::new();
        while seen.len() < spec.sample_cap {
            seen.insert(rng.random_range(0..candidates));
        }
        seen.into_iter().collect()
    } else {
        (0..candidates).collect()
    };

    let mut out = CensusMaps { candidates, sampled, maps: Vec::new(), skipped_degenerate: 0, skipped_bad_reduction: 0 };
    let mut literals = BTreeSet::new();
    for code in codes {
        let Ok(phi) = build(spec, &coeffs, code) else {
            out.skipped_degenerate += 1;
            continue;
        };
        if !literals.insert(phi.homogeneous_literal()) {
            continue;
        }
        if phi.bad_places().len() > 1 {
            out.skipped_bad_reduction += 1;
            continue;
        }
        out.maps.push(phi);
    }
    Ok(out)
}

/// Runs the selected checks over every map of [`census_maps`].
pub fn census(spec: &CensusSpec) -> Result<CensusReport> {
    let CensusMaps { candidates, sampled, maps, skipped_degenerate, skipped_bad_reduction } = census_maps(spec)?;
    let mut places = finite_places_up_to(&spec.field, 2);
    places.push(Place::infinity(&spec.field));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers.max(1))
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let outcomes: Vec<MapOutcome> =
        pool.install(|| maps.par_iter().map(|phi| run_checks(spec, phi, &places)).collect());

    let q1 = spec.field.order() as usize + 1;
    let mut report = CensusReport {
        candidates,
        sampled,
        maps: maps.len(),
        skipped_degenerate,
        skipped_bad_reduction,
        cycles: 0,
        cycle_length_histogram: BTreeMap::new(),
        max_cycle_length: 0,
        max_cycle_map: None,
        tail_checks_applicable: 0,
        q_plus_1_attained: 0,
        checks: BTreeMap::new(),
    };
    for out in outcomes {
        for &n in &out.cycle_lengths {
            report.cycles += 1;
            *report.cycle_length_histogram.entry(n).or_default() += 1;
            if n == q1 {
                report.q_plus_1_attained += 1;
            }
            if n > report.max_cycle_length {
                report.max_cycle_length = n;
                report.max_cycle_map = Some(out.literal.clone());
            }
        }
        report.tail_checks_applicable += out.tail_applicable;
        for r in out.reports {
            let tally = report.checks.entry(r.claim.clone()).or_default();
            match r.status {
                Status::Pass => tally.pass += 1,
                Status::Inapplicable => tally.inapplicable += 1,
                Status::Fail => {
                    tally.fail += 1;
                    tally.first_failure.get_or_insert(r);
                }
            }
        }
    }
    Ok(report)
}
