//! Executable checks of the structural claims about cycles and orbits.

mod census;
mod checks;
mod report;

pub use census::{census, census_maps, CensusMaps, CensusReport, CensusSpec, Check, CheckTally, Family};
pub use checks::{
    check_cycle_bounds, check_equidistance, check_equidistant_cardinality, check_orbit_bounds,
    check_per_bound_polynomial, check_reduced_dichotomy, coverage_places, fixed_point_configurations,
    min_good_residue, three_points_witness, verify_cycle, ThreePoints,
};
pub use report::{Status, VerificationReport};
