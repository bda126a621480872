//! Ordering algorithms: complete distance graphs, minimal spanning trees,
//! Hamiltonian path extraction with degree diagnostics, loop closure,
//! sequential nearest-neighbor, and NN-CRUST on the R^3 embedding of SE(2).
//!
//! For a dense sample of a smooth simple curve the MST is a path (every
//! vertex of degree at most two) and visiting it end to end recovers the
//! curve order. A vertex of degree three or more means short chords exist,
//! i.e. the sample is not dense, and extraction refuses to guess.

use crate::error::{Error, Result};
use crate::lie::{wrap_angle, MetricWeights};
use crate::sampling::{SamplePoints, SampleSet};
use serde::{Deserialize, Serialize};

/// Which ordering algorithm produced a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mst,
    Nn,
    NnCrust,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Mst => "mst",
            Algorithm::Nn => "nn",
            Algorithm::NnCrust => "nncrust",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mst" => Ok(Algorithm::Mst),
            "nn" => Ok(Algorithm::Nn),
            "nncrust" => Ok(Algorithm::NnCrust),
            other => Err(Error::InvalidInput(format!("unknown algorithm {other}"))),
        }
    }
}

/// Symmetric nonnegative edge weights over all vertex pairs, zero diagonal.
#[derive(Clone, Debug)]
pub struct WeightedCompleteGraph {
    n: usize,
    w: Vec<f64>,
}

impl WeightedCompleteGraph {
    pub fn from_weights(n: usize, mut fill: impl FnMut(usize, usize) -> Result<f64>) -> Result<Self> {
        let mut w = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = fill(i, j)?;
                w[i * n + j] = d;
                w[j * n + i] = d;
            }
        }
        Ok(WeightedCompleteGraph { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.n + j]
    }
}

/// Number of worker threads for distance-matrix assembly: the GEOORD_THREADS
/// environment variable wins, then the available parallelism.
fn worker_count(requested: Option<usize>) -> usize {
    if let Ok(s) = std::env::var("GEOORD_THREADS") {
        if let Ok(k) = s.parse::<usize>() {
            if k >= 1 {
                return k;
            }
        }
    }
    requested
        .or_else(|| std::thread::available_parallelism().ok().map(|p| p.get()))
        .unwrap_or(1)
}

/// Compute all pairwise distances of a sample set. Surfaces an antipodal
/// rotation error together with the offending pair.
pub fn build_graph(s: &SampleSet) -> Result<WeightedCompleteGraph> {
    build_graph_with_threads(s, None)
}

/// Same as [`build_graph`] with an explicit worker count.
pub fn build_graph_with_threads(
    s: &SampleSet,
    threads: Option<usize>,
) -> Result<WeightedCompleteGraph> {
    let n = s.len();
    if n < 2 {
        return Err(Error::EmptySample { needed: 2, got: n });
    }
    let workers = worker_count(threads).min(n).max(1);
    if workers == 1 {
        return WeightedCompleteGraph::from_weights(n, |i, j| {
            s.distance(i, j).map_err(|e| match e {
                Error::AntipodalRotation { .. } => Error::AntipodalPair { i, j },
                other => other,
            })
        });
    }

    // Rows are striped over the workers; every slot is written exactly once,
    // so the result does not depend on the worker count.
    let mut rows: Vec<std::result::Result<Vec<f64>, (usize, usize)>> = Vec::with_capacity(n);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..workers {
            let sref = &*s;
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                let mut i = worker;
                while i < n {
                    let mut row = vec![0.0; n];
                    let mut bad = None;
                    for j in 0..n {
                        if i == j {
                            continue;
                        }
                        match sref.distance(i, j) {
                            Ok(d) => row[j] = d,
                            Err(_) => {
                                bad = Some((i.min(j), i.max(j)));
                                break;
                            }
                        }
                    }
                    out.push((i, bad.map_or(Ok(row), Err)));
                    i += workers;
                }
                out
            }));
        }
        let mut collected: Vec<(usize, std::result::Result<Vec<f64>, (usize, usize)>)> =
            Vec::with_capacity(n);
        for h in handles {
            collected.extend(h.join().expect("distance worker panicked"));
        }
        collected.sort_by_key(|(i, _)| *i);
        rows = collected.into_iter().map(|(_, r)| r).collect();
    });

    let mut w = vec![0.0; n * n];
    for (i, row) in rows.into_iter().enumerate() {
        match row {
            Ok(r) => w[i * n..(i + 1) * n].copy_from_slice(&r),
            Err((a, b)) => return Err(Error::AntipodalPair { i: a, j: b }),
        }
    }
    Ok(WeightedCompleteGraph { n, w })
}

/// A spanning tree as an edge list with adjacency access.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl SpanningTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j, _) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency().iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Prim's algorithm on the dense matrix, O(n^2). Ties between equal-weight
/// candidate edges go to the smallest (min index, max index) pair, which
/// makes the tree deterministic.
pub fn mst(g: &WeightedCompleteGraph) -> SpanningTree {
    let n = g.n();
    assert!(n >= 2, "mst needs at least two vertices");
    let mut in_tree = vec![false; n];
    // best edge from each outside vertex into the tree
    let mut best_w = vec![f64::INFINITY; n];
    let mut best_from = vec![usize::MAX; n];
    let mut edges = Vec::with_capacity(n - 1);

    in_tree[0] = true;
    for v in 1..n {
        best_w[v] = g.weight(0, v);
        best_from[v] = 0;
    }
    for _ in 1..n {
        let mut pick = usize::MAX;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            if pick == usize::MAX {
                pick = v;
                continue;
            }
            let (pw, pf) = (best_w[pick], best_from[pick]);
            let (vw, vf) = (best_w[v], best_from[v]);
            let p_key = (pw, pf.min(pick), pf.max(pick));
            let v_key = (vw, vf.min(v), vf.max(v));
            if v_key < p_key {
                pick = v;
            }
        }
        let from = best_from[pick];
        edges.push((from.min(pick), from.max(pick), best_w[pick]));
        in_tree[pick] = true;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let w = g.weight(pick, v);
            let cand = (w, pick.min(v), pick.max(v));
            let best = (best_w[v], best_from[v].min(v), best_from[v].max(v));
            if cand < best {
                best_w[v] = w;
                best_from[v] = pick;
            }
        }
    }
    SpanningTree { n, edges }
}

/// An ordering of the samples: a permutation plus the open/closed flag.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderedPath {
    pub order: Vec<usize>,
    pub closed: bool,
    pub algorithm: Algorithm,
    /// Max vertex degree seen in the spanning tree (2 for a clean path).
    pub max_degree: usize,
}

impl OrderedPath {
    /// Canonical orientation: open paths start at the smaller-index
    /// endpoint; cycles start at the global smallest index and run toward
    /// its smaller-index neighbor.
    pub fn canonicalize(&mut self) {
        let n = self.order.len();
        if n < 2 {
            return;
        }
        if self.closed {
            let pos = self
                .order
                .iter()
                .position(|&v| v == *self.order.iter().min().unwrap())
                .unwrap();
            self.order.rotate_left(pos);
            if n > 2 && self.order[n - 1] < self.order[1] {
                self.order[1..].reverse();
            }
        } else if self.order[n - 1] < self.order[0] {
            self.order.reverse();
        }
    }
}

/// Turn a degree-<=2 spanning tree into the unique path through it.
/// Branching vertices abort with their list: the sample was not dense.
pub fn extract_path(t: &SpanningTree) -> Result<OrderedPath> {
    let adj = t.adjacency();
    let branching: Vec<usize> = (0..t.n()).filter(|&v| adj[v].len() >= 3).collect();
    let max_degree = t.max_degree();
    if !branching.is_empty() {
        return Err(Error::BranchingTree {
            vertices: branching,
        });
    }
    let start = (0..t.n())
        .find(|&v| adj[v].len() == 1)
        .expect("acyclic degree-<=2 graph has an endpoint");
    let mut order = Vec::with_capacity(t.n());
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        order.push(cur);
        let next = adj[cur].iter().copied().find(|&x| x != prev);
        match next {
            Some(nxt) => {
                prev = cur;
                cur = nxt;
            }
            None => break,
        }
    }
    debug_assert_eq!(order.len(), t.n());
    let mut path = OrderedPath {
        order,
        closed: false,
        algorithm: Algorithm::Mst,
        max_degree,
    };
    path.canonicalize();
    Ok(path)
}

/// Default slack for [`close_loop`].
pub const DEFAULT_CLOSURE_SLACK: f64 = 0.25;

/// Decide whether an extracted open path is really a closed curve: the MST
/// of a closed curve drops exactly one polygon edge, so the endpoint-joining
/// edge should weigh about as much as the largest kept edge.
pub fn close_loop(mut p: OrderedPath, g: &WeightedCompleteGraph, slack: f64) -> OrderedPath {
    let n = p.order.len();
    if n < 4 {
        p.closed = false;
        return p;
    }
    let max_edge = p
        .order
        .windows(2)
        .map(|w| g.weight(w[0], w[1]))
        .fold(0.0f64, f64::max);
    let joining = g.weight(p.order[n - 1], p.order[0]);
    if joining <= (1.0 + slack) * max_edge {
        p.closed = true;
        p.canonicalize();
    }
    p
}

/// Greedy chain: from `start`, repeatedly hop to the nearest unvisited
/// vertex. Ties go to the smaller index.
pub fn order_nn_graph(g: &WeightedCompleteGraph, start: usize) -> OrderedPath {
    let n = g.n();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = start;
    visited[cur] = true;
    order.push(cur);
    for _ in 1..n {
        let mut pick = usize::MAX;
        let mut pick_w = f64::INFINITY;
        for v in 0..n {
            if !visited[v] && (g.weight(cur, v) < pick_w) {
                pick = v;
                pick_w = g.weight(cur, v);
            }
        }
        visited[pick] = true;
        order.push(pick);
        cur = pick;
    }
    OrderedPath {
        order,
        closed: false,
        algorithm: Algorithm::Nn,
        max_degree: 2,
    }
}

/// Sequential nearest-neighbor ordering of a sample set with a known start.
pub fn order_nn(s: &SampleSet, start: usize) -> Result<OrderedPath> {
    if start >= s.len() {
        return Err(Error::IndexOutOfRange {
            index: start,
            len: s.len(),
        });
    }
    let g = build_graph(s)?;
    Ok(order_nn_graph(&g, start))
}

/// NN-CRUST over the Euclidean embedding (sqrt(a) theta, sqrt(b) u,
/// sqrt(b) v) of an SE(2) sample. Angles are unwrapped greedily along
/// nearest-neighbor chains first, since the embedding needs a consistent
/// branch of theta.
pub fn order_nncrust_r3(s: &SampleSet, w: &MetricWeights) -> Result<OrderedPath> {
    let poses = match s.points() {
        SamplePoints::Se2(v) => v,
        other => {
            return Err(Error::ManifoldMismatch {
                expected: "se2",
                got: other.kind().as_str(),
            })
        }
    };
    let n = poses.len();
    if n < 2 {
        return Err(Error::EmptySample { needed: 2, got: n });
    }
    if n == 2 {
        return Ok(OrderedPath {
            order: vec![0, 1],
            closed: false,
            algorithm: Algorithm::NnCrust,
            max_degree: 1,
        });
    }

    // Greedy unwrap: visit points nearest-first, keeping each theta on the
    // branch closest to its predecessor.
    let mut unwrapped = vec![0.0f64; n];
    let mut visited = vec![false; n];
    let mut cur = 0usize;
    visited[0] = true;
    unwrapped[0] = poses[0].theta();
    for _ in 1..n {
        let mut pick = usize::MAX;
        let mut pick_d = f64::INFINITY;
        for v in 0..n {
            if !visited[v] {
                let d = s.distance(cur, v)?;
                if d < pick_d {
                    pick = v;
                    pick_d = d;
                }
            }
        }
        unwrapped[pick] = unwrapped[cur] + wrap_angle(poses[pick].theta() - poses[cur].theta());
        visited[pick] = true;
        cur = pick;
    }

    let sa = w.alpha().sqrt();
    let sb = w.beta().sqrt();
    let embedded: Vec<[f64; 3]> = (0..n)
        .map(|i| [sa * unwrapped[i], sb * poses[i].u, sb * poses[i].v])
        .collect();

    let d2 = |i: usize, j: usize| -> f64 {
        let (p, q) = (embedded[i], embedded[j]);
        (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)
    };

    // Edge set: nearest neighbor, then the nearest point in the opposite
    // half-space through p.
    let mut edges = std::collections::BTreeSet::new();
    for p in 0..n {
        let mut q = usize::MAX;
        let mut qd = f64::INFINITY;
        for c in 0..n {
            if c != p && d2(p, c) < qd {
                q = c;
                qd = d2(p, c);
            }
        }
        edges.insert((p.min(q), p.max(q)));
        let dir = [
            embedded[q][0] - embedded[p][0],
            embedded[q][1] - embedded[p][1],
            embedded[q][2] - embedded[p][2],
        ];
        let mut half = usize::MAX;
        let mut half_d = f64::INFINITY;
        for c in 0..n {
            if c == p || c == q {
                continue;
            }
            let to = [
                embedded[c][0] - embedded[p][0],
                embedded[c][1] - embedded[p][1],
                embedded[c][2] - embedded[p][2],
            ];
            let dot = dir[0] * to[0] + dir[1] * to[1] + dir[2] * to[2];
            if dot < 0.0 && d2(p, c) < half_d {
                half = c;
                half_d = d2(p, c);
            }
        }
        if half != usize::MAX {
            edges.insert((p.min(half), p.max(half)));
        }
    }

    let mut adj = vec![Vec::new(); n];
    for &(i, j) in &edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let offenders: Vec<usize> = (0..n).filter(|&v| adj[v].len() > 2).collect();
    if !offenders.is_empty() {
        return Err(Error::NonManifoldOutput {
            vertices: offenders,
        });
    }
    let endpoints: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 1).collect();
    let closed = endpoints.is_empty();
    if !closed && endpoints.len() != 2 {
        return Err(Error::NonManifoldOutput {
            vertices: endpoints,
        });
    }

    let start = if closed { 0 } else { endpoints[0].min(endpoints[1]) };
    let mut order = Vec::with_capacity(n);
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        order.push(cur);
        if order.len() == n {
            break;
        }
        let next = adj[cur].iter().copied().find(|&x| x != prev);
        match next {
            Some(nxt) => {
                prev = cur;
                cur = nxt;
            }
            None => break,
        }
    }
    if order.len() != n {
        // disconnected edge set (multiple components)
        let missing: Vec<usize> = (0..n).filter(|v| !order.contains(v)).collect();
        return Err(Error::NonManifoldOutput { vertices: missing });
    }
    let mut path = OrderedPath {
        order,
        closed,
        algorithm: Algorithm::NnCrust,
        max_degree: adj.iter().map(Vec::len).max().unwrap_or(0),
    };
    path.canonicalize();
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::PlanarMotion;
    use std::f64::consts::PI;

    fn plane_set(pts: Vec<[f64; 2]>) -> SampleSet {
        SampleSet::new(SamplePoints::Plane(pts), MetricWeights::unit()).unwrap()
    }

    #[test]
    fn graph_of_two_and_three_points() {
        let s = plane_set(vec![[0.0, 0.0], [3.0, 4.0]]);
        let g = build_graph(&s).unwrap();
        assert_eq!(g.weight(0, 1), 5.0);

        let s = plane_set(vec![[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]]);
        let g = build_graph(&s).unwrap();
        assert_eq!(g.weight(0, 1), 1.0);
        assert_eq!(g.weight(1, 2), 2.0);
        assert_eq!(g.weight(0, 2), 3.0);
        assert_eq!(g.weight(2, 0), 3.0);
    }

    #[test]
    fn threaded_graph_is_exactly_symmetric_on_se3_sets() {
        // rows are computed independently per worker, so exact symmetry is
        // a statement about the distance evaluation, not the storage
        use crate::lie::{exp_se3, Twist};
        let motions: Vec<crate::lie::RigidMotion3> = (0..12)
            .map(|k| {
                let t = k as f64 / 12.0;
                exp_se3(&Twist::new(
                    [0.8 * (6.28 * t).sin(), 0.8 * (6.28 * t).cos(), 0.1],
                    [3.0 * t, (9.42 * t).sin(), -t],
                ))
            })
            .collect();
        let s = SampleSet::new(SamplePoints::Se3(motions), MetricWeights::unit()).unwrap();
        let g = build_graph_with_threads(&s, Some(3)).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                assert_eq!(g.weight(i, j), g.weight(j, i));
            }
            assert_eq!(g.weight(i, i), 0.0);
        }
    }

    #[test]
    fn mst_picks_short_edges_of_a_chain() {
        let s = plane_set(vec![[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]]);
        let g = build_graph(&s).unwrap();
        let t = mst(&g);
        assert_eq!(t.edges().len(), 2);
        assert!((t.total_weight() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn mst_is_deterministic_on_equal_weight_square() {
        let s = plane_set(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let g = build_graph(&s).unwrap();
        let t1 = mst(&g);
        let t2 = mst(&g);
        assert_eq!(t1.edges(), t2.edges());
        // tie rule: sides (0,1), (0,3) and then (1,2) beat (2,3)
        assert_eq!(
            t1.edges().iter().map(|e| (e.0, e.1)).collect::<Vec<_>>(),
            vec![(0, 1), (0, 3), (1, 2)]
        );
    }

    #[test]
    fn extract_path_orders_a_chain() {
        let t = SpanningTree {
            n: 4,
            edges: vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)],
        };
        let p = extract_path(&t).unwrap();
        assert_eq!(p.order, vec![0, 1, 2, 3]);
        assert!(!p.closed);
        assert_eq!(p.max_degree, 2);
    }

    #[test]
    fn extract_path_rejects_star() {
        let t = SpanningTree {
            n: 4,
            edges: vec![(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)],
        };
        match extract_path(&t) {
            Err(Error::BranchingTree { vertices }) => assert_eq!(vertices, vec![0]),
            other => panic!("expected BranchingTree, got {other:?}"),
        }
    }

    #[test]
    fn shuffled_circle_in_se2_is_recovered() {
        // 8 poses on the unit circle, theta equal to the position angle,
        // presented in a scrambled order.
        let perm = [3usize, 7, 1, 5, 0, 6, 2, 4];
        let poses: Vec<PlanarMotion> = perm
            .iter()
            .map(|&k| {
                let t = 2.0 * PI * k as f64 / 8.0;
                PlanarMotion::new(t, t.cos(), t.sin())
            })
            .collect();
        let s = SampleSet::new(SamplePoints::Se2(poses), MetricWeights::unit()).unwrap();
        let g = build_graph(&s).unwrap();
        let p = close_loop(extract_path(&mst(&g)).unwrap(), &g, DEFAULT_CLOSURE_SLACK);
        assert!(p.closed);
        // Recovered order must be the cyclic order of the angles up to
        // direction; map back through the permutation.
        let angular: Vec<usize> = p.order.iter().map(|&i| perm[i]).collect();
        let pos0 = angular.iter().position(|&k| k == 0).unwrap();
        let forward: Vec<usize> = (0..8).map(|i| angular[(pos0 + i) % 8]).collect();
        let expected: Vec<usize> = (0..8).collect();
        let reversed: Vec<usize> = std::iter::once(0).chain((1..8).rev()).collect();
        assert!(
            forward == expected || forward == reversed,
            "got cyclic order {forward:?}"
        );

        // the brute-force shortest Hamiltonian cycle agrees with that order
        let mut best_cycle: Vec<usize> = (0..8).collect();
        let mut best_len = f64::INFINITY;
        let mut rest: Vec<usize> = (1..8).collect();
        permute(&mut rest, 0, &mut |tail| {
            let mut cycle = vec![0usize];
            cycle.extend_from_slice(tail);
            let mut len = 0.0;
            for i in 0..8 {
                len += g.weight(cycle[i], cycle[(i + 1) % 8]);
            }
            if len < best_len {
                best_len = len;
                best_cycle = cycle;
            }
        });
        let tour: Vec<usize> = best_cycle.iter().map(|&i| perm[i]).collect();
        let pos0 = tour.iter().position(|&k| k == 0).unwrap();
        let tour_fwd: Vec<usize> = (0..8).map(|i| tour[(pos0 + i) % 8]).collect();
        assert!(tour_fwd == expected || tour_fwd == reversed);
    }

    fn permute(xs: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == xs.len() {
            visit(xs);
            return;
        }
        for i in k..xs.len() {
            xs.swap(k, i);
            permute(xs, k + 1, visit);
            xs.swap(k, i);
        }
    }

    #[test]
    fn close_loop_accepts_circle_rejects_arc() {
        let circle: Vec<[f64; 2]> = (0..24)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 24.0;
                [t.cos(), t.sin()]
            })
            .collect();
        let s = plane_set(circle);
        let g = build_graph(&s).unwrap();
        let p = extract_path(&mst(&g)).unwrap();
        assert!(close_loop(p, &g, DEFAULT_CLOSURE_SLACK).closed);

        let arc: Vec<[f64; 2]> = (0..12)
            .map(|k| {
                let t = PI * k as f64 / 11.0;
                [t.cos(), t.sin()]
            })
            .collect();
        let s = plane_set(arc);
        let g = build_graph(&s).unwrap();
        let p = extract_path(&mst(&g)).unwrap();
        assert!(!close_loop(p, &g, DEFAULT_CLOSURE_SLACK).closed);
    }

    #[test]
    fn close_loop_never_closes_two_points() {
        let s = plane_set(vec![[0.0, 0.0], [1.0, 0.0]]);
        let g = build_graph(&s).unwrap();
        let p = extract_path(&mst(&g)).unwrap();
        assert!(!close_loop(p, &g, 10.0).closed);
    }

    #[test]
    fn nn_order_walks_collinear_points() {
        let s = plane_set(vec![[2.0, 0.0], [0.0, 0.0], [3.0, 0.0], [1.0, 0.0]]);
        let p = order_nn(&s, 1).unwrap();
        assert_eq!(p.order, vec![1, 3, 0, 2]);
    }

    #[test]
    fn greedy_from_mid_curve_start_differs_from_mst() {
        // Starting in the middle, the greedy chain has to jump back over
        // visited territory; MST extraction does not.
        let pts: Vec<[f64; 2]> = (0..7).map(|k| [k as f64, 0.0]).collect();
        let s = plane_set(pts);
        let greedy = order_nn(&s, 3).unwrap();
        let g = build_graph(&s).unwrap();
        let tree_path = extract_path(&mst(&g)).unwrap();
        assert_ne!(greedy.order, tree_path.order);
        assert_eq!(tree_path.order, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn nncrust_on_dense_circle_matches_mst_route() {
        let n = 40;
        let poses: Vec<PlanarMotion> = (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                PlanarMotion::new(0.3 * t.sin(), t.cos(), t.sin())
            })
            .collect();
        let s = SampleSet::new(SamplePoints::Se2(poses), MetricWeights::unit()).unwrap();
        let crust = order_nncrust_r3(&s, &MetricWeights::unit()).unwrap();
        assert!(crust.closed);
        let g = build_graph(&s).unwrap();
        let mut tree_path = close_loop(extract_path(&mst(&g)).unwrap(), &g, 0.25);
        tree_path.canonicalize();
        assert_eq!(crust.order, tree_path.order);
    }

    #[test]
    fn nncrust_three_points_is_a_path() {
        let poses = vec![
            PlanarMotion::new(0.0, 0.0, 0.0),
            PlanarMotion::new(0.1, 1.0, 0.0),
            PlanarMotion::new(0.2, 2.0, 0.0),
        ];
        let s = SampleSet::new(SamplePoints::Se2(poses), MetricWeights::unit()).unwrap();
        let p = order_nncrust_r3(&s, &MetricWeights::unit()).unwrap();
        assert_eq!(p.order, vec![0, 1, 2]);
    }

    #[test]
    fn canonicalize_cycles_and_paths() {
        let mut p = OrderedPath {
            order: vec![4, 2, 0, 1, 3],
            closed: true,
            algorithm: Algorithm::Mst,
            max_degree: 2,
        };
        p.canonicalize();
        assert_eq!(p.order[0], 0);
        assert!(p.order[1] < *p.order.last().unwrap());

        let mut p = OrderedPath {
            order: vec![5, 3, 1],
            closed: false,
            algorithm: Algorithm::Mst,
            max_degree: 2,
        };
        p.canonicalize();
        assert_eq!(p.order, vec![1, 3, 5]);
    }
}
