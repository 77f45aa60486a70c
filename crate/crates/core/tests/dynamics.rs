use funcdyn_core::algebra::{Field, Place};
use funcdyn_core::dynamics::{
    cycle_table_csv, find_cycles_bounded, finite_orbit_analyze, linear_period, orbit,
    periodic_oracle_match, periodic_points_integral, reduced_graph, Budgets, EscapeReason,
    OrbitStatus,
};
use funcdyn_core::maps::{reduce_map, RationalMap};
use funcdyn_core::parse::{parse_map, parse_point, parse_poly};
use funcdyn_core::projective::{ProjPoint, ResiduePoint};
use funcdyn_core::Error;

fn fld(q: u64) -> Field {
    Field::of_order(q).unwrap()
}

fn map(s: &str, q: u64) -> RationalMap {
    parse_map(s, &fld(q)).unwrap()
}

fn pts(field: &Field, list: &[&str]) -> Vec<ProjPoint> {
    list.iter().map(|s| parse_point(s, field).unwrap()).collect()
}

#[test]
fn orbit_examples() {
    let f2 = fld(2);
    let phi = map("(X^2+1)/X^2", 2);
    let o = orbit(&phi, &parse_point("0", &f2).unwrap(), Budgets::default());
    assert_eq!(o.status, OrbitStatus::Closed);
    assert!(o.transient.is_empty());
    assert_eq!(o.cycle, pts(&f2, &["0", "inf", "1"]));

    let sq = map("X^2", 2);
    let o = orbit(&sq, &parse_point("[1 : 1]", &f2).unwrap(), Budgets::default());
    assert_eq!(o.cycle, pts(&f2, &["1"]));

    let o = orbit(&map("X^2 + t", 2), &parse_point("t", &f2).unwrap(), Budgets::default());
    assert_eq!(o.status, OrbitStatus::Escaped(EscapeReason::DegreeCutoff));
    let degrees: Vec<usize> = o.transient.iter().map(ProjPoint::max_degree).collect();
    assert_eq!(degrees, vec![1, 2, 4, 8, 16, 32, 64]);

    let tight = Budgets { max_steps: 3, max_degree: 1000 };
    let o = orbit(&map("X^2 + t", 2), &parse_point("t", &f2).unwrap(), tight);
    assert_eq!(o.status, OrbitStatus::Escaped(EscapeReason::StepBudget));
}

#[test]
fn closed_orbits_follow_the_map() {
    let f3 = fld(3);
    let phi = map("X^2 + t*X + 1", 3);
    for p in funcdyn_core::projective::enumerate_points(&f3, 1) {
        let o = orbit(&phi, &p, Budgets::default());
        if !o.is_closed() {
            continue;
        }
        let all = o.points();
        for w in all.windows(2) {
            assert_eq!(phi.evaluate(&w[0]), w[1]);
        }
        assert_eq!(phi.evaluate(all.last().unwrap()), o.cycle[0]);
        let mut seen = std::collections::HashSet::new();
        assert!(all.iter().all(|p| seen.insert(p.clone())));
    }
}

#[test]
fn periodic_points_examples() {
    let f2 = fld(2);
    let per = periodic_points_integral(&map("X^2 + 1", 2)).unwrap();
    let expected: Vec<_> = pts(&f2, &["0", "1"]).into_iter().map(|p| (p, 2)).collect();
    assert_eq!(per.points, expected);
    assert_eq!(per.infinity_period, 1);

    let f3 = fld(3);
    let per = periodic_points_integral(&map("X^2", 3)).unwrap();
    let expected: Vec<_> = pts(&f3, &["0", "1"]).into_iter().map(|p| (p, 1)).collect();
    assert_eq!(per.points, expected);

    // (X - t)(X - t - 1) + X fixes t and t + 1.
    let psi = map("(X + t)*(X + t + 1) + X", 2);
    let per = periodic_points_integral(&psi).unwrap();
    for p in pts(&f2, &["t", "t+1"]) {
        assert_eq!(per.period_of(&p), Some(1));
    }

    assert_eq!(
        periodic_points_integral(&map("(X^2+1)/X^2", 2)).unwrap_err(),
        Error::NotUnitLeadingPolynomial
    );
    assert_eq!(
        periodic_points_integral(&map("t*X^2", 2)).unwrap_err(),
        Error::NotUnitLeadingPolynomial
    );
    assert_eq!(periodic_points_integral(&map("X + t", 2)).unwrap_err(), Error::DegreeTooLow);
}

#[test]
fn find_cycles_examples() {
    let f2 = fld(2);
    let cycles = find_cycles_bounded(&map("(X^2+1)/X^2", 2), 0, Budgets::default());
    assert_eq!(cycles, vec![pts(&f2, &["0", "inf", "1"])]);

    let cycles = find_cycles_bounded(&map("X^2", 2), 1, Budgets::default());
    assert_eq!(cycles, vec![pts(&f2, &["0"]), pts(&f2, &["1"]), pts(&f2, &["inf"])]);

    // wX with w of order 4 in F_5 permutes the units in one 4-cycle.
    let f5 = fld(5);
    let cycles = find_cycles_bounded(&map("2*X", 5), 0, Budgets::default());
    let four: Vec<_> = cycles.iter().filter(|c| c.len() == 4).collect();
    assert_eq!(four.len(), 1);
    assert_eq!(four[0], &pts(&f5, &["1", "2", "4", "3"]));
}

#[test]
fn oracle_agreement() {
    let f2 = fld(2);
    assert!(periodic_oracle_match(&map("X^2 + 1", 2), 2, Budgets::default()).is_ok());
    assert!(periodic_oracle_match(&map("X^2", 3), 1, Budgets::default()).is_ok());
    let psi = map("(X + t)*(X + t + 1) + X", 2);
    let m = periodic_oracle_match(&psi, 1, Budgets::default()).unwrap();
    for p in pts(&f2, &["t", "t+1"]) {
        assert!(m.points.contains(&(p, 1)));
    }
    for s in ["X^2 + t*X", "X^3 + t*X^2 + 1", "X^2 + t^2 + t"] {
        assert!(periodic_oracle_match(&map(s, 2), 2, Budgets::default()).is_ok(), "{s}");
    }
    for s in ["X^2 + t*X + 2", "X^3 + 2*X", "2*X^2 + t"] {
        assert!(periodic_oracle_match(&map(s, 3), 1, Budgets::default()).is_ok(), "{s}");
    }
}

#[test]
fn linear_maps_are_periodic() {
    for (s, q, n) in [("X + 1", 3, 3), ("2*X", 5, 4), ("X + t", 2, 2), ("4*X + t", 5, 2)] {
        assert_eq!(linear_period(&map(s, q)).unwrap(), Some(n), "{s}");
    }
}

#[test]
fn reduced_graph_examples() {
    let f2 = fld(2);
    let t = Place::finite(parse_poly("t", &f2).unwrap()).unwrap();
    let g = reduced_graph(&reduce_map(&map("X^2", 2), &t).unwrap()).unwrap();
    assert_eq!(g.successors(), &[0, 1, 2]);
    assert_eq!(g.cycle_lengths(), vec![1, 1, 1]);

    let g = reduced_graph(&reduce_map(&map("X^2 + 1", 2), &t).unwrap()).unwrap();
    assert_eq!(g.cycle_lengths(), vec![2, 1]);
    assert_eq!(g.successor(&ResiduePoint::affine(&f2, f2.elem(0))), ResiduePoint::affine(&f2, f2.elem(1)));

    let f3 = fld(3);
    let t3 = Place::finite(parse_poly("t", &f3).unwrap()).unwrap();
    let g = reduced_graph(&reduce_map(&map("X + 1", 3), &t3).unwrap()).unwrap();
    assert_eq!(g.cycle_lengths(), vec![3, 1]);
    assert!(g.tail_depths().iter().all(|&d| d == 0));

    // Over F_3, X^2 sends 2 to 1: one tail node of depth 1.
    let g = reduced_graph(&reduce_map(&map("X^2", 3), &t3).unwrap()).unwrap();
    assert_eq!(g.tail_depths(), &[0, 0, 1, 0]);
    let json = serde_json::to_value(&g).unwrap();
    assert_eq!(json["successors"], serde_json::json!(["0", "1", "1", "inf"]));
}

#[test]
fn finite_orbit_reports() {
    let f2 = fld(2);
    let phi = map("X^2 + X + 1", 2);
    let o = orbit(&phi, &parse_point("0", &f2).unwrap(), Budgets::default());
    let r = finite_orbit_analyze(&phi, &o).unwrap();
    assert_eq!(r.tail(), pts(&f2, &["0"]).as_slice());
    assert_eq!(r.cycle(), pts(&f2, &["1"]).as_slice());
    assert_eq!((r.cycle_length, r.size()), (1, 2));
    assert_eq!(r.chains, vec![pts(&f2, &["0", "1"])]);
    // 0 and 1 are at distance 0 everywhere.
    assert!(r.support.is_empty());

    let cyc = map("(X^2+1)/X^2", 2);
    let o = orbit(&cyc, &parse_point("0", &f2).unwrap(), Budgets::default());
    let r = finite_orbit_analyze(&cyc, &o).unwrap();
    assert_eq!(r.tail_length, 0);
    assert_eq!(r.chains.len(), 3);
    assert!(r.chains.iter().all(|c| c.len() == 1));

    let escaped = orbit(&map("X^2 + t", 2), &parse_point("t", &f2).unwrap(), Budgets::default());
    assert_eq!(finite_orbit_analyze(&phi, &escaped).unwrap_err(), Error::NotClosed);
}

#[test]
fn delta_tables_on_support() {
    let f3 = fld(3);
    // X -> t - X swaps 0 and t, which meet only at the place t.
    let phi = map("t - X", 3);
    let o = orbit(&phi, &parse_point("0", &f3).unwrap(), Budgets::default());
    assert_eq!(o.cycle, pts(&f3, &["0", "t"]));
    let r = finite_orbit_analyze(&phi, &o).unwrap();
    assert_eq!(r.support.len(), 1);
    let table = &r.support[0];
    assert_eq!(table.place.to_string(), "t");
    assert!(table.good);
    assert_eq!(table.deltas, vec![vec![None, Some(1)], vec![Some(1), None]]);

    let csv = cycle_table_csv(&phi, std::slice::from_ref(&o.cycle)).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("map,cycle_length,place,delta"));
    assert_eq!(lines.next(), Some(format!("{phi},2,t,1").as_str()));
    assert_eq!(lines.next(), None);
}
