//! Orbits, cycles, periodic points and finite dynamics over residue fields.

mod finite;
mod graph;
mod orbit;
mod periodic;

pub use finite::{finite_orbit_analyze, DeltaTable, FiniteOrbitReport, TailReduction};
pub use graph::{reduced_graph, FunctionalGraph};
pub use orbit::{
    canonical_rotation, cycles_of, find_cycles_bounded, orbit, orbits_bounded, Budgets,
    EscapeReason, OrbitRecord, OrbitStatus,
};
pub use periodic::{
    linear_period, periodic_oracle_match, periodic_points_integral, OracleMatch, PeriodicPoints,
};

use crate::error::Result;
use crate::maps::RationalMap;
use crate::projective::{distance_support, ProjPoint};

/// CSV with one row per (cycle, place) pair where some distance is positive.
/// The `delta` column lists the distinct values seen on the cycle.
pub fn cycle_table_csv(phi: &RationalMap, cycles: &[Vec<ProjPoint>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| crate::Error::Unsupported(format!("csv: {e}"));
    w.write_record(["map", "cycle_length", "place", "delta"]).map_err(io)?;
    let literal = phi.to_string();
    for cycle in cycles {
        let mut rows: std::collections::BTreeMap<_, std::collections::BTreeSet<i64>> = Default::default();
        for i in 0..cycle.len() {
            for j in i + 1..cycle.len() {
                for (place, v) in distance_support(&cycle[i], &cycle[j])? {
                    rows.entry(place).or_default().insert(v);
                }
            }
        }
        for (place, values) in rows {
            let values: Vec<String> = values.iter().map(i64::to_string).collect();
            w.write_record([
                literal.as_str(),
                &cycle.len().to_string(),
                &place.to_string(),
                &values.join(";"),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Unsupported(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
