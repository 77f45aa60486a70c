use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use funcdyn_core::algebra::{make_field, Field, FieldSpec, FqElem, Place};
use funcdyn_core::constructions::{
    fixed_points_poly, interpolate_graph, multi_cycle_poly, sharp_rational_map, Construction, GraphSpec,
    TargetDegree,
};
use funcdyn_core::dynamics::{
    cycle_table_csv, find_cycles_bounded, linear_period, orbit, periodic_oracle_match, periodic_points_integral,
    Budgets, OrbitRecord,
};
use funcdyn_core::maps::RationalMap;
use funcdyn_core::parse::{parse_elem, parse_map, parse_point, parse_poly};
use funcdyn_core::projective::ProjPoint;
use funcdyn_core::verify::{
    census, check_cycle_bounds, check_equidistance, check_orbit_bounds, check_per_bound_polynomial,
    check_reduced_dichotomy, CensusReport, CensusSpec, Check, Family, VerificationReport,
};
use funcdyn_core::{Error, Result};

#[derive(Parser)]
#[command(name = "funcdyn", version, about = "Dynamics of rational maps over Fq(t)")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Order of the constant field.
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Characteristic, used with --k.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Extension degree over F_p.
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Modulus coefficients over F_p, low to high, comma separated.
    #[arg(long, global = true)]
    modulus: Option<String>,
    #[arg(long, global = true, default_value_t = 10_000)]
    max_steps: usize,
    #[arg(long, global = true, default_value_t = 64)]
    max_degree: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, resultant, bad places and small cycles of a map.
    Analyze {
        #[arg(long)]
        map: String,
        /// Degree bound on the points searched for cycles.
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    Orbit {
        #[arg(long)]
        map: String,
        #[arg(long)]
        start: String,
    },
    /// Periodic points of a polynomial with unit leading coefficient.
    Periodic {
        #[arg(long)]
        map: String,
        /// Cross-check against a brute-force search over points of this degree.
        #[arg(long)]
        bound: Option<usize>,
    },
    #[command(subcommand)]
    Construct(Construct),
    #[command(subcommand)]
    Verify(Verify),
    Census(CensusArgs),
}

#[derive(Subcommand)]
enum Construct {
    /// A map with a cycle of length q + 1.
    Sharp,
    /// The polynomial inducing a self-map of F_q.
    Graph {
        /// Images of the field elements in index order, comma separated.
        #[arg(long)]
        table: String,
        #[arg(long)]
        deg: Option<usize>,
    },
    FixedPoints {
        #[arg(long)]
        points: String,
    },
    MultiCycle {
        #[arg(long)]
        w: String,
        #[arg(long)]
        points: String,
    },
}

#[derive(Args)]
struct CycleInput {
    #[arg(long)]
    map: String,
    /// A point on the cycle; the cycle is its orbit.
    #[arg(long, required_unless_present = "cycle")]
    start: Option<String>,
    /// The cycle itself, comma separated, in orbit order.
    #[arg(long)]
    cycle: Option<String>,
}

#[derive(Subcommand)]
enum Verify {
    Equidistance(CycleInput),
    CycleBounds(CycleInput),
    OrbitBounds {
        #[arg(long)]
        map: String,
        #[arg(long)]
        start: String,
    },
    Dichotomy {
        #[command(flatten)]
        input: CycleInput,
        /// A monic irreducible in t, or inf.
        #[arg(long)]
        place: String,
    },
    PerBound {
        #[arg(long)]
        map: String,
    },
    Census(CensusArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Monic,
    Rational,
    Constant,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Equidistance,
    CycleBounds,
    OrbitBounds,
    Dichotomy,
    PerBound,
    ThreePoints,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Monic)]
    family: FamilyArg,
    #[arg(long, default_value_t = 2)]
    deg: usize,
    #[arg(long, default_value_t = 1)]
    coeff_bound: usize,
    /// Degree bound on the starting points.
    #[arg(long, default_value_t = 1)]
    bound: usize,
    #[arg(long, default_value_t = 2000)]
    sample_cap: usize,
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Vec<CheckArg>,
}

/// A command result in every output format it supports.
struct Output {
    json: Value,
    table: String,
    csv: Option<String>,
    failed: bool,
}

impl Output {
    fn new(json: Value, table: String) -> Output {
        Output { json, table, csv: None, failed: false }
    }
}

fn field_of(o: &Opts) -> Result<Field> {
    match (o.q, o.p, o.k, &o.modulus) {
        (Some(q), None, None, None) => Field::of_order(q),
        (q, Some(p), k, Some(m)) => {
            let coeffs = m
                .split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| Error::Parse(format!("--modulus: bad coefficient {c}"))))
                .collect::<Result<Vec<_>>>()?;
            let spec = FieldSpec::with_modulus(p, coeffs)?;
            if k.is_some_and(|k| k != spec.k) || q.is_some_and(|q| q != spec.q()) {
                return Err(Error::Parse("--modulus degree disagrees with --k or --q".into()));
            }
            Field::from_spec(&spec)
        }
        (q, Some(p), k, None) => {
            let spec = make_field(p, k.unwrap_or(1))?;
            if q.is_some_and(|q| q != spec.q()) {
                return Err(Error::Parse("--q disagrees with --p and --k".into()));
            }
            Field::from_spec(&spec)
        }
        _ => Err(Error::Parse("give --q, or --p with optional --k and --modulus".into())),
    }
}

fn budgets(o: &Opts) -> Budgets {
    Budgets { max_steps: o.max_steps, max_degree: o.max_degree }
}

fn points(s: &str, field: &Field) -> Result<Vec<ProjPoint>> {
    s.split(',').map(|p| parse_point(p.trim(), field)).collect()
}

fn place(s: &str, field: &Field) -> Result<Place> {
    if s.trim() == "inf" {
        Ok(Place::infinity(field))
    } else {
        Place::finite(parse_poly(s, field)?)
    }
}

fn list(ps: &[ProjPoint]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn orbit_table(o: &OrbitRecord) -> String {
    format!(
        "start  {}\ntail   [{}]\ncycle  [{}]\nstatus {}\n",
        o.start,
        list(&o.transient),
        list(&o.cycle),
        if o.is_closed() { "closed".to_string() } else { format!("{:?}", o.status) }
    )
}

fn map_json(phi: &RationalMap) -> Value {
    let mut v = serde_json::to_value(phi).expect("maps serialize");
    v["literal"] = phi.to_string().into();
    v
}

fn cycle_of(input: &CycleInput, phi: &RationalMap, o: &Opts) -> Result<Vec<ProjPoint>> {
    let field = phi.field();
    if let Some(c) = &input.cycle {
        return points(c, field);
    }
    let start = parse_point(input.start.as_deref().unwrap_or_default(), field)?;
    let rec = orbit(phi, &start, budgets(o));
    if !rec.is_closed() || !rec.transient.is_empty() {
        return Err(Error::NotACycle(format!("{start} is not periodic within the budgets")));
    }
    Ok(rec.cycle)
}

fn report_output(r: VerificationReport) -> Output {
    let mut out = Output::new(serde_json::to_value(&r).expect("reports serialize"), format!("{r}\n"));
    out.failed = r.is_fail();
    out
}

fn construction_output(c: Construction) -> Output {
    let mut table = format!("map    {}\n", c.map);
    for o in &c.orbits {
        table += &format!("cycle  [{}]\n", list(&o.cycle));
    }
    let mut json = serde_json::to_value(&c).expect("constructions serialize");
    json["map"] = map_json(&c.map);
    Output::new(json, table)
}

fn census_output(r: CensusReport) -> Output {
    let mut table = format!(
        "maps {} (candidates {}{}), cycles {}, longest {}\n",
        r.maps,
        r.candidates,
        if r.sampled { ", sampled" } else { "" },
        r.cycles,
        r.max_cycle_length
    );
    for (claim, t) in &r.checks {
        table += &format!("{claim:<24} pass {:>6}  fail {:>4}  inapplicable {:>6}\n", t.pass, t.fail, t.inapplicable);
    }
    let failed = r.failures() > 0;
    let mut out = Output::new(serde_json::to_value(&r).expect("census reports serialize"), table);
    out.failed = failed;
    out
}

fn run_census(a: &CensusArgs, o: &Opts) -> Result<Output> {
    let family = match a.family {
        FamilyArg::Monic => Family::MonicPolynomial,
        FamilyArg::Rational => Family::Rational,
        FamilyArg::Constant => Family::ConstantRational,
    };
    let mut spec = CensusSpec::new(&field_of(o)?, family, a.deg);
    spec.coeff_bound = a.coeff_bound;
    spec.point_bound = a.bound;
    spec.budgets = budgets(o);
    spec.sample_cap = a.sample_cap;
    spec.seed = o.seed;
    spec.workers = o.workers;
    if !a.checks.is_empty() {
        spec.checks = a
            .checks
            .iter()
            .map(|c| match c {
                CheckArg::Equidistance => Check::Equidistance,
                CheckArg::CycleBounds => Check::CycleBounds,
                CheckArg::OrbitBounds => Check::OrbitBounds,
                CheckArg::Dichotomy => Check::ReducedDichotomy,
                CheckArg::PerBound => Check::PerBound,
                CheckArg::ThreePoints => Check::ThreePoints,
            })
            .collect();
    }
    Ok(census_output(census(&spec)?))
}

fn run(cli: &Cli) -> Result<Output> {
    let o = &cli.opts;
    match &cli.command {
        Command::Analyze { map, bound } => {
            let field = field_of(o)?;
            let phi = parse_map(map, &field)?;
            let cycles = find_cycles_bounded(&phi, *bound, budgets(o));
            let mut table = format!(
                "map          {phi}\nhomogeneous  {}\ndegree       {}\nresultant    {}\nbad places   [{}]\n",
                phi.homogeneous_literal(),
                phi.degree(),
                phi.resultant(),
                phi.bad_places().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            );
            for c in &cycles {
                table += &format!("cycle        [{}]\n", list(c));
            }
            let mut out = Output::new(json!({"map": map_json(&phi), "cycles": cycles}), table);
            out.csv = Some(cycle_table_csv(&phi, &cycles)?);
            Ok(out)
        }
        Command::Orbit { map, start } => {
            let field = field_of(o)?;
            let phi = parse_map(map, &field)?;
            let rec = orbit(&phi, &parse_point(start, &field)?, budgets(o));
            let mut out = Output::new(serde_json::to_value(&rec).expect("orbits serialize"), orbit_table(&rec));
            if rec.is_closed() {
                out.csv = Some(cycle_table_csv(&phi, std::slice::from_ref(&rec.cycle))?);
            }
            Ok(out)
        }
        Command::Periodic { map, bound } => {
            let field = field_of(o)?;
            let phi = parse_map(map, &field)?;
            let per = match periodic_points_integral(&phi) {
                Err(Error::DegreeTooLow) => {
                    let n = linear_period(&phi)?;
                    let table = match n {
                        Some(n) => format!("every point has period dividing {n}\n"),
                        None => "no iterate up to q is the identity\n".into(),
                    };
                    return Ok(Output::new(json!({"linear_period": n}), table));
                }
                r => r?,
            };
            let mut table = String::new();
            for (p, n) in &per.points {
                table += &format!("{p:<24} period {n}\n");
            }
            table += &format!("{:<24} period {}\n", "inf", per.infinity_period);
            let entries: Vec<Value> = per.points.iter().map(|(p, n)| json!({"point": p, "period": n})).collect();
            let mut json = json!({"points": entries, "infinity_period": per.infinity_period,
                "affine_count": per.count_affine()});
            let mut failed = false;
            if let Some(b) = bound {
                match periodic_oracle_match(&phi, *b, budgets(o)) {
                    Ok(_) => json["oracle"] = json!({"bound": b, "status": "match"}),
                    Err(Error::MismatchWitness(w)) => {
                        json["oracle"] = json!({"bound": b, "status": "mismatch", "witness": w});
                        table += &format!("oracle mismatch: {w}\n");
                        failed = true;
                    }
                    Err(e) => return Err(e),
                }
            }
            let mut out = Output::new(json, table);
            out.failed = failed;
            Ok(out)
        }
        Command::Construct(c) => {
            let field = field_of(o)?;
            let built = match c {
                Construct::Sharp => sharp_rational_map(&field)?,
                Construct::Graph { table, deg } => {
                    let values = table
                        .split(',')
                        .map(|s| parse_elem(s.trim(), &field))
                        .collect::<Result<Vec<FqElem>>>()?;
                    let g = GraphSpec::new(&field, values)?;
                    let target = deg.map_or(TargetDegree::Minimal, TargetDegree::Exact);
                    let map = interpolate_graph(&g, target)?;
                    Construction { map, orbits: Vec::new() }
                }
                Construct::FixedPoints { points } => {
                    let fs = points.split(',').map(|s| parse_poly(s.trim(), &field)).collect::<Result<Vec<_>>>()?;
                    let map = fixed_points_poly(&fs)?;
                    Construction { map, orbits: Vec::new() }
                }
                Construct::MultiCycle { w, points } => {
                    let fs = points.split(',').map(|s| parse_poly(s.trim(), &field)).collect::<Result<Vec<_>>>()?;
                    multi_cycle_poly(parse_elem(w, &field)?, &fs)?
                }
            };
            Ok(construction_output(built))
        }
        Command::Verify(v) => {
            let field = field_of(o)?;
            let report = match v {
                Verify::Equidistance(input) => {
                    let phi = parse_map(&input.map, &field)?;
                    check_equidistance(&phi, &cycle_of(input, &phi, o)?)?
                }
                Verify::CycleBounds(input) => {
                    let phi = parse_map(&input.map, &field)?;
                    check_cycle_bounds(&phi, &cycle_of(input, &phi, o)?)?
                }
                Verify::OrbitBounds { map, start } => {
                    let phi = parse_map(map, &field)?;
                    let rec = orbit(&phi, &parse_point(start, &field)?, budgets(o));
                    check_orbit_bounds(&phi, &rec)?
                }
                Verify::Dichotomy { input, place: p } => {
                    let phi = parse_map(&input.map, &field)?;
                    check_reduced_dichotomy(&phi, &cycle_of(input, &phi, o)?, &place(p, &field)?)?
                }
                Verify::PerBound { map } => check_per_bound_polynomial(&parse_map(map, &field)?)?,
                Verify::Census(a) => return run_census(a, o),
            };
            Ok(report_output(report))
        }
        Command::Census(a) => run_census(a, o),
    }
}

fn emit(out: &Output, o: &Opts) -> std::result::Result<(), String> {
    let text = match o.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json values serialize") + "\n",
        Format::Table => out.table.clone(),
        Format::Csv => out.csv.clone().ok_or("--format csv is only available for analyze and orbit")?,
    };
    match &o.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&out, &cli.opts) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if out.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
