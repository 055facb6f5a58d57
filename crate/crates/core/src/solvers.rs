//! Exact small-instance solver and the nearest-town construction heuristic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::SolverError;
use crate::metric::{cycle_length, tour_length, Instance, Tour};

/// Size cap for the exponential exact solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverLimit {
    max_exact_n: usize,
}

impl SolverLimit {
    pub const MIN_CAP: usize = 3;
    pub const MAX_CAP: usize = 20;

    pub fn new(max_exact_n: usize) -> Result<Self, SolverError> {
        if (Self::MIN_CAP..=Self::MAX_CAP).contains(&max_exact_n) {
            Ok(SolverLimit { max_exact_n })
        } else {
            Err(SolverError::InvalidCap(max_exact_n))
        }
    }

    pub fn max_exact_n(&self) -> usize {
        self.max_exact_n
    }
}

impl Default for SolverLimit {
    fn default() -> Self {
        SolverLimit { max_exact_n: 15 }
    }
}

fn into_tour(instance: &Instance, order: Vec<usize>) -> Tour {
    // orders built here are permutations by construction
    tour_length(instance, &order).expect("solver produced a non-permutation")
}

/// Optimal Hamiltonian cycle by subset dynamic programming.
///
/// `cost[mask][j]` is the shortest path that leaves vertex 0, visits exactly
/// the vertices in `mask` (over vertices `1..n`, bit `j` for vertex `j + 1`)
/// and ends at vertex `j + 1`. O(n²·2ⁿ) time and O(n·2ⁿ) memory. The returned
/// order starts at vertex 0.
pub fn exact_tour(instance: &Instance, limit: SolverLimit) -> Result<Tour, SolverError> {
    let n = instance.len();
    if n > limit.max_exact_n {
        return Err(SolverError::TooLarge {
            n,
            cap: limit.max_exact_n,
        });
    }
    let dist = instance.distance_matrix();
    let d = |a: usize, b: usize| dist[a * n + b];

    let m = n - 1;
    let full = (1usize << m) - 1;
    let mut cost = vec![f64::INFINITY; (full + 1) * m];
    let mut parent = vec![u8::MAX; (full + 1) * m];
    for j in 0..m {
        cost[(1 << j) * m + j] = d(0, j + 1);
    }

    for mask in 1..=full {
        for last in 0..m {
            if mask & (1 << last) == 0 {
                continue;
            }
            let here = cost[mask * m + last];
            if !here.is_finite() {
                continue;
            }
            for next in 0..m {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let to = mask | (1 << next);
                let candidate = here + d(last + 1, next + 1);
                let slot = to * m + next;
                if candidate < cost[slot] {
                    cost[slot] = candidate;
                    parent[slot] = last as u8;
                }
            }
        }
    }

    let mut best_last = 0;
    let mut best = f64::INFINITY;
    for last in 0..m {
        let total = cost[full * m + last] + d(last + 1, 0);
        if total < best {
            best = total;
            best_last = last;
        }
    }

    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    let mut last = best_last;
    loop {
        order.push(last + 1);
        let prev = parent[mask * m + last];
        mask &= !(1 << last);
        if prev == u8::MAX {
            break;
        }
        last = prev as usize;
    }
    order.push(0);
    order.reverse();
    Ok(into_tour(instance, order))
}

/// Greedy tour from `start`: always move to the closest unvisited vertex
/// (lowest index on ties), then close the cycle.
pub fn nearest_town(instance: &Instance, start: usize) -> Result<Tour, SolverError> {
    let n = instance.len();
    if start >= n {
        return Err(SolverError::StartOutOfRange { start, n });
    }
    Ok(into_tour(instance, nearest_town_order(instance, start)))
}

fn nearest_town_order(instance: &Instance, start: usize) -> Vec<usize> {
    let n = instance.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut current = start;
    visited[start] = true;
    order.push(start);
    for _ in 1..n {
        let mut next = usize::MAX;
        let mut next_d = f64::INFINITY;
        for (v, &seen) in visited.iter().enumerate() {
            if seen {
                continue;
            }
            let dv = instance.dist(current, v);
            if dv < next_d {
                next_d = dv;
                next = v;
            }
        }
        visited[next] = true;
        order.push(next);
        current = next;
    }
    order
}

/// Shortest nearest-town tour over all start vertices. Ties go to the lowest
/// start index, independent of evaluation order.
pub fn best_start_nearest_town(instance: &Instance) -> Result<Tour, SolverError> {
    let n = instance.len();
    if n < 3 {
        return Err(SolverError::TooFewPoints { need: 3, n });
    }
    let eval = |start: usize| (cycle_length(instance, &nearest_town_order(instance, start)), start);

    #[cfg(feature = "parallel")]
    let runs: Vec<(f64, usize)> = (0..n).into_par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let runs: Vec<(f64, usize)> = (0..n).map(eval).collect();

    let (_, start) = runs
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .expect("n >= 3");
    nearest_town(instance, start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::NormPolicy;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inst(pts: &[[f64; 2]]) -> Instance {
        let pts: Vec<Vec<f64>> = pts.iter().map(|p| p.to_vec()).collect();
        Instance::new("t", 2, &pts, NormPolicy::EUCLIDEAN).unwrap()
    }

    fn square() -> Instance {
        inst(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    }

    fn random(rng: &mut ChaCha8Rng, n: usize) -> Instance {
        let pts: Vec<[f64; 2]> = (0..n).map(|_| [rng.gen(), rng.gen()]).collect();
        inst(&pts)
    }

    /// Fixes vertex 0 and scans every ordering of the rest.
    fn brute_force(instance: &Instance) -> f64 {
        fn permute(rest: &mut Vec<usize>, k: usize, instance: &Instance, best: &mut f64) {
            if k == rest.len() {
                let mut order = vec![0];
                order.extend_from_slice(rest);
                let len: f64 = (0..order.len())
                    .map(|i| {
                        let (a, b) = (instance.point(order[i]), instance.point(order[(i + 1) % order.len()]));
                        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
                    })
                    .sum();
                *best = best.min(len);
                return;
            }
            for i in k..rest.len() {
                rest.swap(k, i);
                permute(rest, k + 1, instance, best);
                rest.swap(k, i);
            }
        }
        let mut rest: Vec<usize> = (1..instance.len()).collect();
        let mut best = f64::INFINITY;
        permute(&mut rest, 0, instance, &mut best);
        best
    }

    #[test]
    fn limit_range() {
        assert!(SolverLimit::new(2).is_err());
        assert!(SolverLimit::new(21).is_err());
        assert_eq!(SolverLimit::new(20).unwrap().max_exact_n(), 20);
        assert_eq!(SolverLimit::default().max_exact_n(), 15);
    }

    #[test]
    fn exact_on_square_and_grid() {
        let tour = exact_tour(&square(), SolverLimit::default()).unwrap();
        assert_eq!(tour.length, 4.0);
        assert!(tour.order == [0, 1, 2, 3] || tour.order == [0, 3, 2, 1]);
        let grid: Vec<[f64; 2]> = (0..3).flat_map(|y| (0..2).map(move |x| [x as f64, y as f64])).collect();
        let tour = exact_tour(&inst(&grid), SolverLimit::default()).unwrap();
        assert!((tour.length - 6.0).abs() < 1e-12);
    }

    #[test]
    fn exact_on_two_points() {
        let tour = exact_tour(&inst(&[[0.0, 0.0], [0.0, 1.5]]), SolverLimit::default()).unwrap();
        assert_eq!(tour.length, 3.0);
    }

    #[test]
    fn exact_rejects_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let big = random(&mut rng, 16);
        assert_eq!(
            exact_tour(&big, SolverLimit::default()),
            Err(SolverError::TooLarge { n: 16, cap: 15 })
        );
    }

    #[test]
    fn exact_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let n = rng.gen_range(3..=9);
            let instance = random(&mut rng, n);
            let exact = exact_tour(&instance, SolverLimit::default()).unwrap();
            let oracle = brute_force(&instance);
            assert!((exact.length - oracle).abs() <= 1e-9 * oracle);
        }
    }

    #[test]
    fn exact_invariant_under_rigid_motion_and_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..20 {
            let n = rng.gen_range(4..=10);
            let pts: Vec<[f64; 2]> = (0..n).map(|_| [rng.gen(), rng.gen()]).collect();
            let base = exact_tour(&inst(&pts), SolverLimit::default()).unwrap().length;
            let (theta, s, tx, ty): (f64, f64, f64, f64) = (rng.gen_range(0.0..6.3), rng.gen_range(0.1..10.0), rng.gen(), rng.gen());
            let moved: Vec<[f64; 2]> = pts
                .iter()
                .map(|p| {
                    [
                        s * (theta.cos() * p[0] - theta.sin() * p[1]) + tx,
                        s * (theta.sin() * p[0] + theta.cos() * p[1]) + ty,
                    ]
                })
                .collect();
            let other = exact_tour(&inst(&moved), SolverLimit::default()).unwrap().length;
            assert!((other - s * base).abs() <= 1e-9 * s * base);
        }
    }

    #[test]
    fn nearest_town_hand_traces() {
        assert_eq!(nearest_town(&square(), 0).unwrap().length, 4.0);
        let line = inst(&[[3.0, 0.0], [0.0, 0.0], [1.0, 0.0]]);
        let tour = nearest_town(&line, 1).unwrap();
        assert_eq!(tour.order, vec![1, 2, 0]);
        assert_eq!(tour.length, 6.0);
        assert_eq!(nearest_town(&line, 3), Err(SolverError::StartOutOfRange { start: 3, n: 3 }));
    }

    #[test]
    fn nearest_town_ties_take_lowest_index() {
        // from the centre every corner is equally far
        let plus = inst(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]);
        assert_eq!(nearest_town(&plus, 0).unwrap().order[1], 1);
    }

    #[test]
    fn heuristic_against_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut worst_best_start: f64 = 1.0;
        for _ in 0..200 {
            let n = rng.gen_range(3..=12);
            let instance = random(&mut rng, n);
            let exact = exact_tour(&instance, SolverLimit::default()).unwrap().length;
            let single = nearest_town(&instance, 0).unwrap();
            let best = best_start_nearest_town(&instance).unwrap();
            assert!(single.length >= exact - 1e-9);
            assert!(single.length <= 2.0 * exact);
            assert!(best.length <= single.length);
            worst_best_start = worst_best_start.max(best.length / exact);
            let mut sorted = best.order.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..n).collect::<Vec<_>>());
        }
        eprintln!("worst best-start/exact ratio over 200 instances: {worst_best_start:.4}");
    }

    #[test]
    fn best_start_on_square_and_minimum_size() {
        assert_eq!(best_start_nearest_town(&square()).unwrap().length, 4.0);
        let pair = inst(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(best_start_nearest_town(&pair), Err(SolverError::TooFewPoints { need: 3, n: 2 }));
    }
}
