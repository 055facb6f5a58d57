//! Metric instances: coordinates in R^d under the unrounded Euclidean norm.
//!
//! All three supported TSPLIB weight types are evaluated as plain Euclidean
//! distances. `ATT` instances carry a report scale of 1/√10, applied to tour
//! lengths (and on request to other lengths) so values line up with the
//! pseudo-Euclidean units in which ATT optima are published.

use std::collections::HashMap;

use crate::error::MetricError;
use crate::tsplib::{EdgeWeightType, NodeCoord, RawInstanceFile};

/// How lengths of an instance are measured and reported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormPolicy {
    report_scale: f64,
}

impl NormPolicy {
    /// Plain Euclidean, reported as is.
    pub const EUCLIDEAN: NormPolicy = NormPolicy { report_scale: 1.0 };
    /// Euclidean, reported divided by √10.
    pub const ATT: NormPolicy = NormPolicy {
        report_scale: 0.316_227_766_016_837_94,
    };

    pub fn for_edge_weight_type(ewt: EdgeWeightType) -> Self {
        match ewt {
            EdgeWeightType::Euc2d | EdgeWeightType::Ceil2d => NormPolicy::EUCLIDEAN,
            EdgeWeightType::Att => NormPolicy::ATT,
        }
    }

    pub fn report_scale(&self) -> f64 {
        self.report_scale
    }

    pub fn is_att(&self) -> bool {
        *self == NormPolicy::ATT
    }

    /// Converts a raw Euclidean length into reporting units.
    pub fn scale(&self, length: f64) -> f64 {
        length * self.report_scale
    }
}

/// A point set in R^d. Immutable once built; points are pairwise distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    dim: usize,
    coords: Vec<f64>,
    norm: NormPolicy,
}

/// Key for exact coordinate equality; folds -0.0 onto 0.0.
fn coord_key(point: &[f64]) -> Vec<u64> {
    point.iter().map(|&c| (c + 0.0).to_bits()).collect()
}

impl Instance {
    /// Builds an instance from a list of points. Every point must have `dim`
    /// finite coordinates and no two points may coincide.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        points: &[Vec<f64>],
        norm: NormPolicy,
    ) -> Result<Self, MetricError> {
        if points.len() < 2 {
            return Err(MetricError::TooFewPoints(points.len()));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(MetricError::DimensionMismatch {
                    index,
                    expected: dim,
                    found: p.len(),
                });
            }
            if let Some(&bad) = p.iter().find(|c| !c.is_finite()) {
                return Err(MetricError::NonFinite(bad));
            }
            coords.extend_from_slice(p);
        }
        let instance = Instance {
            name: name.into(),
            dim,
            coords,
            norm,
        };
        instance.check_distinct()?;
        Ok(instance)
    }

    fn check_distinct(&self) -> Result<(), MetricError> {
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::with_capacity(self.len());
        for i in 0..self.len() {
            if let Some(&j) = seen.get(&coord_key(self.point(i))) {
                return Err(MetricError::DuplicatePoint(j, i));
            }
            seen.insert(coord_key(self.point(i)), i);
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dimension of the ambient space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn norm(&self) -> NormPolicy {
        self.norm
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// Euclidean distance without bounds or identity checks.
    #[inline]
    pub(crate) fn dist(&self, i: usize, j: usize) -> f64 {
        self.point(i)
            .iter()
            .zip(self.point(j))
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Euclidean distance between two distinct vertices, in raw units.
    pub fn distance(&self, i: usize, j: usize) -> Result<f64, MetricError> {
        let n = self.len();
        for index in [i, j] {
            if index >= n {
                return Err(MetricError::IndexOutOfRange { index, n });
            }
        }
        if i == j {
            return Err(MetricError::SameVertex(i));
        }
        Ok(self.dist(i, j))
    }

    /// Full distance matrix, row-major. Meant for the small instances the
    /// exact solver handles.
    pub(crate) fn distance_matrix(&self) -> Vec<f64> {
        let n = self.len();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.dist(i, j);
                m[i * n + j] = d;
                m[j * n + i] = d;
            }
        }
        m
    }

    /// Converts a planar instance back into a TSPLIB record.
    pub fn to_raw(&self) -> Result<RawInstanceFile, MetricError> {
        if self.dim != 2 {
            return Err(MetricError::NotPlanar(self.dim));
        }
        let node_coords = self
            .points()
            .enumerate()
            .map(|(i, p)| NodeCoord {
                id: i as i64 + 1,
                x: p[0],
                y: p[1],
            })
            .collect::<Vec<_>>();
        Ok(RawInstanceFile {
            name: self.name.clone(),
            declared_type: "TSP".to_string(),
            comment: None,
            dimension: node_coords.len(),
            edge_weight_type: if self.norm.is_att() {
                EdgeWeightType::Att
            } else {
                EdgeWeightType::Euc2d
            },
            node_coords,
            warnings: Vec::new(),
        })
    }
}

/// Turns a parsed TSPLIB file into an [`Instance`]. Vertex `k` is the node
/// with id `k + 1`.
pub fn build_instance(raw: &RawInstanceFile) -> Result<Instance, MetricError> {
    let mut points = vec![Vec::new(); raw.node_coords.len()];
    for c in &raw.node_coords {
        let slot = usize::try_from(c.id - 1)
            .ok()
            .filter(|&s| s < points.len())
            .ok_or(MetricError::IndexOutOfRange {
                index: c.id.max(0) as usize,
                n: points.len(),
            })?;
        points[slot] = vec![c.x, c.y];
    }
    Instance::new(
        raw.name.clone(),
        2,
        &points,
        NormPolicy::for_edge_weight_type(raw.edge_weight_type),
    )
}

/// Extremal pairwise distances of an instance, in raw (unscaled) units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceStats {
    pub n: usize,
    /// Minimum pairwise distance.
    pub w0: f64,
    /// Maximum pairwise distance (diameter).
    pub w1: f64,
    /// Diagonal of the axis-aligned bounding box.
    pub bbox_diag: f64,
}

impl InstanceStats {
    /// The same statistics expressed in reporting units.
    pub fn scaled(&self, norm: NormPolicy) -> InstanceStats {
        InstanceStats {
            n: self.n,
            w0: norm.scale(self.w0),
            w1: norm.scale(self.w1),
            bbox_diag: norm.scale(self.bbox_diag),
        }
    }
}

/// Exact min/max over all n(n-1)/2 pairs.
pub fn compute_stats(instance: &Instance) -> InstanceStats {
    let n = instance.len();
    let mut w0 = f64::INFINITY;
    let mut w1 = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = instance.dist(i, j);
            w0 = w0.min(d);
            w1 = w1.max(d);
        }
    }
    let dim = instance.dim();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for p in instance.points() {
        for k in 0..dim {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let bbox_diag = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| (b - a) * (b - a))
        .sum::<f64>()
        .sqrt();
    InstanceStats {
        n,
        w0,
        w1,
        bbox_diag,
    }
}

/// A Hamiltonian cycle and its length in reporting units.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    pub order: Vec<usize>,
    pub length: f64,
}

pub(crate) fn check_order(order: &[usize], n: usize) -> Result<(), MetricError> {
    let fail = |reason: String| MetricError::NotAPermutation { n, reason };
    if order.len() != n {
        return Err(fail(format!("{} vertices listed", order.len())));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(fail(format!("vertex {v} out of range")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(fail(format!("vertex {v} repeated")));
        }
    }
    Ok(())
}

/// Raw Euclidean length of the closed cycle through `order`.
pub(crate) fn cycle_length(instance: &Instance, order: &[usize]) -> f64 {
    let n = order.len();
    (0..n)
        .map(|k| instance.dist(order[k], order[(k + 1) % n]))
        .sum()
}

/// Length of the cycle visiting `order`, scaled by the instance's report
/// scale. Nothing is rounded.
pub fn tour_length(instance: &Instance, order: &[usize]) -> Result<Tour, MetricError> {
    check_order(order, instance.len())?;
    Ok(Tour {
        order: order.to_vec(),
        length: instance.norm().scale(cycle_length(instance, order)),
    })
}

/// Converts a 1-based TSPLIB tour sequence into 0-based vertex indices.
pub fn order_from_sequence(sequence: &[usize]) -> Vec<usize> {
    sequence.iter().map(|&id| id.saturating_sub(1)).collect()
}
