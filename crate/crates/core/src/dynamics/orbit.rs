use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::maps::RationalMap;
use crate::projective::{enumerate_points, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EscapeReason {
    StepBudget,
    DegreeCutoff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "reason")]
pub enum OrbitStatus {
    Closed,
    Escaped(EscapeReason),
}

/// Search budgets. Coordinate degree stands in for height: an orbit whose
/// points exceed `max_degree` is reported as escaped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub max_steps: usize,
    pub max_degree: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_steps: 10_000,
            max_degree: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub start: ProjPoint,
    pub transient: Vec<ProjPoint>,
    pub cycle: Vec<ProjPoint>,
    #[serde(flatten)]
    pub status: OrbitStatus,
}

impl OrbitRecord {
    pub fn is_closed(&self) -> bool {
        self.status == OrbitStatus::Closed
    }

    /// All points of the orbit, tail first.
    pub fn points(&self) -> Vec<ProjPoint> {
        self.transient.iter().chain(&self.cycle).cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.transient.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn orbit(phi: &RationalMap, start: &ProjPoint, budgets: Budgets) -> OrbitRecord {
    let mut seq = vec![start.clone()];
    let mut index = HashMap::from([(start.clone(), 0usize)]);
    let escaped = |seq: Vec<ProjPoint>, reason| OrbitRecord {
        start: start.clone(),
        transient: seq,
        cycle: Vec::new(),
        status: OrbitStatus::Escaped(reason),
    };
    if start.max_degree() > budgets.max_degree {
        return escaped(seq, EscapeReason::DegreeCutoff);
    }
    loop {
        if seq.len() > budgets.max_steps {
            return escaped(seq, EscapeReason::StepBudget);
        }
        let next = phi.evaluate(seq.last().expect("nonempty"));
        if let Some(&i) = index.get(&next) {
            let cycle = seq.split_off(i);
            return OrbitRecord {
                start: start.clone(),
                transient: seq,
                cycle,
                status: OrbitStatus::Closed,
            };
        }
        if next.max_degree() > budgets.max_degree {
            return escaped(seq, EscapeReason::DegreeCutoff);
        }
        index.insert(next.clone(), seq.len());
        seq.push(next);
    }
}

/// Rotates a cycle so that its smallest point comes first.
pub fn canonical_rotation(cycle: &[ProjPoint]) -> Vec<ProjPoint> {
    let Some(min) = (0..cycle.len()).min_by(|&a, &b| cycle[a].cmp(&cycle[b])) else {
        return Vec::new();
    };
    cycle[min..].iter().chain(&cycle[..min]).cloned().collect()
}

/// Orbits of every point of degree at most `bound`.
pub fn orbits_bounded(phi: &RationalMap, bound: usize, budgets: Budgets) -> Vec<OrbitRecord> {
    enumerate_points(phi.field(), bound)
        .iter()
        .map(|p| orbit(phi, p, budgets))
        .collect()
}

/// Distinct cycles reached from points of degree at most `bound`, each in
/// canonical rotation, ordered by length then first point.
pub fn find_cycles_bounded(phi: &RationalMap, bound: usize, budgets: Budgets) -> Vec<Vec<ProjPoint>> {
    cycles_of(&orbits_bounded(phi, bound, budgets))
}

pub fn cycles_of(orbits: &[OrbitRecord]) -> Vec<Vec<ProjPoint>> {
    let set: BTreeSet<(usize, Vec<ProjPoint>)> = orbits
        .iter()
        .filter(|o| o.is_closed())
        .map(|o| (o.cycle.len(), canonical_rotation(&o.cycle)))
        .collect();
    set.into_iter().map(|(_, c)| c).collect()
}
