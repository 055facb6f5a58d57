//! Analytic test objects: uniform lattices and tour-edge subdivisions.

use crate::error::GeneratorError;
use crate::metric::{check_order, Instance, NormPolicy, Tour};

/// A uniform lattice with `sides[i]` points along axis `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    sides: Vec<usize>,
    spacing: f64,
}

impl GridSpec {
    /// Every axis needs at least two points and at least one axis an even
    /// count, so that a unit-step Hamiltonian cycle exists.
    pub fn new(sides: Vec<usize>, spacing: f64) -> Result<Self, GeneratorError> {
        if sides.len() < 2 {
            return Err(GeneratorError::TooFewAxes(sides.len()));
        }
        if let Some((axis, &count)) = sides.iter().enumerate().find(|(_, &a)| a < 2) {
            return Err(GeneratorError::AxisTooShort { axis, count });
        }
        if sides.iter().all(|a| a % 2 == 1) {
            return Err(GeneratorError::AllSidesOdd(sides));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(GeneratorError::BadSpacing(spacing));
        }
        Ok(GridSpec { sides, spacing })
    }

    pub fn sides(&self) -> &[usize] {
        &self.sides
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn point_count(&self) -> usize {
        self.sides.iter().product()
    }

    /// Closed-form diameter `spacing·√Σ(a_i − 1)²`.
    pub fn diameter(&self) -> f64 {
        let sq: usize = self.sides.iter().map(|a| (a - 1) * (a - 1)).sum();
        self.spacing * (sq as f64).sqrt()
    }

    fn label(&self) -> String {
        let sides: Vec<String> = self.sides.iter().map(|a| a.to_string()).collect();
        format!("grid_{}", sides.join("x"))
    }
}

/// Lattice points at integer multiples of the spacing. The first axis varies
/// fastest.
pub fn make_grid(spec: &GridSpec) -> Instance {
    let n = spec.point_count();
    let d = spec.dim();
    let mut points = Vec::with_capacity(n);
    for mut index in 0..n {
        let mut p = Vec::with_capacity(d);
        for &a in &spec.sides {
            p.push((index % a) as f64 * spec.spacing);
            index /= a;
        }
        points.push(p);
    }
    Instance::new(spec.label(), d, &points, NormPolicy::EUCLIDEAN).expect("lattice points are distinct")
}

/// Optimal tour length of the lattice, `n·spacing`.
pub fn grid_optimal_length(spec: &GridSpec) -> f64 {
    spec.point_count() as f64 * spec.spacing
}

/// Number of equidistant points inserted on every tour edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubdivisionSpec {
    pub k: usize,
}

/// Inserts `k` equally spaced interior points on every edge of `tour`.
///
/// The original points keep their indices `0..n`; inserted points follow in
/// tour order, so the result has `n·(k + 1)` points. Fails if an inserted
/// point coincides with an existing one (crossing edges, or `n == 2` where
/// both edges share one segment).
pub fn subdivide_tour(
    instance: &Instance,
    tour: &Tour,
    spec: SubdivisionSpec,
) -> Result<Instance, GeneratorError> {
    let n = instance.len();
    if spec.k == 0 {
        return Err(GeneratorError::ZeroSubdivision(0));
    }
    if tour.order.len() != n {
        return Err(GeneratorError::TourMismatch {
            expected: n,
            found: tour.order.len(),
        });
    }
    check_order(&tour.order, n)?;

    let mut points: Vec<Vec<f64>> = instance.points().map(<[f64]>::to_vec).collect();
    let steps = (spec.k + 1) as f64;
    for (pos, &u) in tour.order.iter().enumerate() {
        let v = tour.order[(pos + 1) % n];
        let (a, b) = (instance.point(u), instance.point(v));
        for j in 1..=spec.k {
            let t = j as f64 / steps;
            points.push(a.iter().zip(b).map(|(x, y)| x + (y - x) * t).collect());
        }
    }
    Ok(Instance::new(
        format!("{}_sub{}", instance.name(), spec.k),
        instance.dim(),
        &points,
        instance.norm(),
    )?)
}
