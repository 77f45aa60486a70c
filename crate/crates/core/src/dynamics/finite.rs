use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::Place;
use crate::error::{Error, Result};
use crate::maps::RationalMap;
use crate::projective::{distance_support, log_distance, reduce_point, ProjPoint, ResiduePoint};

use super::orbit::OrbitRecord;

/// Pairwise distances at one place; `deltas[i][j]` is `None` on the diagonal.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaTable {
    pub place: Place,
    pub good: bool,
    pub deltas: Vec<Vec<Option<i64>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TailReduction {
    pub place: Place,
    pub tail: Vec<ResiduePoint>,
}

/// Structure of a finite orbit `P_{-m+1} -> ... -> P_0 -> ...` whose points
/// are listed tail first.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteOrbitReport {
    pub points: Vec<ProjPoint>,
    pub cycle_length: usize,
    pub tail_length: usize,
    /// The orbits of `phi^n` on the set, each ending in its fixed point.
    pub chains: Vec<Vec<ProjPoint>>,
    pub support: Vec<DeltaTable>,
    pub tail_reductions: Vec<TailReduction>,
}

impl FiniteOrbitReport {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn tail(&self) -> &[ProjPoint] {
        &self.points[..self.tail_length]
    }

    pub fn cycle(&self) -> &[ProjPoint] {
        &self.points[self.tail_length..]
    }

    pub fn table(&self, place: &Place) -> Option<&DeltaTable> {
        self.support.iter().find(|t| &t.place == place)
    }
}

pub fn finite_orbit_analyze(phi: &RationalMap, orbit: &OrbitRecord) -> Result<FiniteOrbitReport> {
    if !orbit.is_closed() || orbit.cycle.is_empty() {
        return Err(Error::NotClosed);
    }
    let points = orbit.points();
    let n = orbit.cycle.len();
    let m = orbit.transient.len();
    let chains = (0..n)
        .map(|r| points.iter().skip(r).step_by(n).cloned().collect())
        .collect();
    let mut places = BTreeSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for (place, _) in distance_support(&points[i], &points[j])? {
                places.insert(place);
            }
        }
    }
    let support: Vec<DeltaTable> = places
        .into_iter()
        .map(|place| {
            let deltas = points
                .iter()
                .map(|a| points.iter().map(|b| log_distance(a, b, &place).finite()).collect())
                .collect();
            DeltaTable {
                good: !phi.is_bad(&place),
                place,
                deltas,
            }
        })
        .collect();
    let tail_reductions = support
        .iter()
        .filter(|t| t.good && m > 0)
        .map(|t| TailReduction {
            place: t.place.clone(),
            tail: points[..m].iter().map(|p| reduce_point(p, &t.place)).collect(),
        })
        .collect();
    Ok(FiniteOrbitReport {
        cycle_length: n,
        tail_length: m,
        points,
        chains,
        support,
        tail_reductions,
    })
}
