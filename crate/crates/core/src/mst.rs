//! Minimum spanning tree of the complete Euclidean graph.

use crate::metric::{Instance, NormPolicy};

#[derive(Debug, Clone, PartialEq)]
pub struct MstEdge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

/// Spanning tree edges and their total, in raw Euclidean units.
#[derive(Debug, Clone, PartialEq)]
pub struct MstResult {
    pub edges: Vec<MstEdge>,
    pub total: f64,
}

impl MstResult {
    pub fn scaled_total(&self, norm: NormPolicy) -> f64 {
        norm.scale(self.total)
    }
}

/// Dense Prim: O(n²) time, O(n) extra memory, no heap.
///
/// The tree grows from vertex 0. Among equally close candidates the lowest
/// vertex index is attached first, and each vertex keeps the first (lowest
/// index) tree vertex that achieved its best distance.
pub fn prim_mst(instance: &Instance) -> MstResult {
    let n = instance.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut total = 0.0;

    let mut current = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let mut next = usize::MAX;
        let mut next_w = f64::INFINITY;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let d = instance.dist(current, v);
            if d < best[v] {
                best[v] = d;
                parent[v] = current;
            }
            if best[v] < next_w {
                next_w = best[v];
                next = v;
            }
        }
        in_tree[next] = true;
        total += next_w;
        edges.push(MstEdge {
            i: parent[next],
            j: next,
            w: next_w,
        });
        current = next;
    }

    MstResult { edges, total }
}
