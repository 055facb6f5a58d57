//! Browser bindings. Every export returns a JSON string for the page script.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use tourlen::bench::Fig1Curve;
use tourlen::estimators::EstimateReport;
use tourlen::generators::{grid_optimal_length, make_grid, GridSpec};
use tourlen::metric::compute_stats;
use tourlen::solvers::{best_start_nearest_town, exact_tour, nearest_town};
use tourlen::{prim_mst, Instance, NormPolicy, SolverLimit};

/// Exact solving in the page stays below this size to keep it responsive.
const BROWSER_EXACT_CAP: usize = 12;
const MAX_POINTS: usize = 2000;

fn report_json(r: &EstimateReport) -> Value {
    json!({
        "O1": r.o1,
        "O2": r.o2,
        "Ot1": r.ot1,
        "Ot2": r.ot2,
        "Otc1": r.otc1,
        "Otc2": r.otc2,
        "e": r.e_ratio,
        "lower": r.bounds.lower(),
        "upper": r.bounds.upper(),
        "consistent": r.bounds.is_consistent(),
    })
}

fn exact_json(instance: &Instance) -> Value {
    if instance.len() > BROWSER_EXACT_CAP {
        return Value::Null;
    }
    let limit = SolverLimit::new(BROWSER_EXACT_CAP).expect("cap in range");
    match exact_tour(instance, limit) {
        Ok(t) => json!({ "length": t.length, "order": t.order }),
        Err(_) => Value::Null,
    }
}

pub fn fig1_value(d_max: usize) -> Value {
    let curves: Vec<Value> = Fig1Curve::ALL
        .into_iter()
        .map(|c| json!({ "id": c.id(), "values": (1..=d_max).map(|d| c.e(d)).collect::<Vec<f64>>() }))
        .collect();
    json!({ "d_max": d_max, "curves": curves })
}

pub fn grid_value(sides: &str, spacing: f64) -> Result<Value, String> {
    let sides = sides
        .split(|c: char| c == ',' || c == 'x' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("not a side count: {s}")))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = GridSpec::new(sides, spacing).map_err(|e| e.to_string())?;
    if spec.point_count() > MAX_POINTS {
        return Err(format!("grid has {} points; limit is {MAX_POINTS}", spec.point_count()));
    }
    let instance = make_grid(&spec);
    let stats = compute_stats(&instance);
    let mst = prim_mst(&instance);
    let report = EstimateReport::new(&stats, mst.total, spec.dim());
    let points: Vec<&[f64]> = instance.points().collect();
    Ok(json!({
        "n": stats.n,
        "d": spec.dim(),
        "w0": stats.w0,
        "w1": stats.w1,
        "diameter": spec.diameter(),
        "mst": mst.total,
        "optimum": grid_optimal_length(&spec),
        "exact": exact_json(&instance),
        "estimates": report_json(&report),
        "points": if spec.dim() == 2 { json!(points) } else { Value::Null },
    }))
}

pub fn random_value(n: usize, seed: u64) -> Result<Value, String> {
    if !(3..=MAX_POINTS).contains(&n) {
        return Err(format!("n must be between 3 and {MAX_POINTS}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()]).collect();
    let instance = Instance::new(format!("random_{seed}"), 2, &pts, NormPolicy::EUCLIDEAN).map_err(|e| e.to_string())?;
    let stats = compute_stats(&instance);
    let mst = prim_mst(&instance);
    let report = EstimateReport::new(&stats, mst.total, 2);
    let single = nearest_town(&instance, 0).map_err(|e| e.to_string())?;
    let best = best_start_nearest_town(&instance).map_err(|e| e.to_string())?;
    let edges: Vec<[usize; 2]> = mst.edges.iter().map(|e| [e.i, e.j]).collect();
    Ok(json!({
        "n": n,
        "seed": seed,
        "points": pts,
        "w0": stats.w0,
        "w1": stats.w1,
        "mst": mst.total,
        "mst_edges": edges,
        "nearest_town": { "length": single.length, "order": single.order },
        "best_start": { "length": best.length, "order": best.order },
        "exact": exact_json(&instance),
        "estimates": report_json(&report),
    }))
}

/// `e(2^d + k, d)` for the four `k(d)` families, `d = 1..=d_max`.
#[wasm_bindgen]
pub fn fig1_curves(d_max: usize) -> String {
    fig1_value(d_max.clamp(1, 1000)).to_string()
}

/// Lattice statistics, closed forms and estimates for sides such as `4,3`.
#[wasm_bindgen]
pub fn grid_report(sides: &str, spacing: f64) -> Result<String, String> {
    grid_value(sides, spacing).map(|v| v.to_string())
}

/// Uniform random points in the unit square with MST, nearest-town tours,
/// bounds and estimates.
#[wasm_bindgen]
pub fn random_report(n: usize, seed: u32) -> Result<String, String> {
    random_value(n, u64::from(seed)).map(|v| v.to_string())
}
