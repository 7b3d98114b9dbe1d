//! Theta graphs: a cycle of length at least `2k` together with a chord. The
//! finders here return certificates that [`verify_theta`] accepts; the
//! exhaustive variant doubles as an independent oracle for small hosts.

use crate::graph::{min_degree_core, Graph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Cycle plus chord. The chord joins two cycle vertices that are not
/// neighbors along the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaGraph {
    pub cycle: Vec<usize>,
    pub chord: (usize, usize),
}

impl ThetaGraph {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.cycle.contains(&v)
    }

    /// Vertices of the theta graph; same set as the cycle.
    pub fn vertices(&self) -> &[usize] {
        &self.cycle
    }

    /// Rotates the cycle to start at its smallest vertex, walks toward the
    /// smaller of its two cycle neighbors, and sorts the chord pair. Finders
    /// canonicalize so equal subgraphs serialize identically.
    pub fn canonicalize(&mut self) {
        let n = self.cycle.len();
        if n == 0 {
            return;
        }
        let p = (0..n).min_by_key(|&i| self.cycle[i]).unwrap();
        let next = self.cycle[(p + 1) % n];
        let prev = self.cycle[(p + n - 1) % n];
        let mut rotated = Vec::with_capacity(n);
        if next <= prev {
            rotated.extend((0..n).map(|i| self.cycle[(p + i) % n]));
        } else {
            rotated.extend((0..n).map(|i| self.cycle[(p + n - i) % n]));
        }
        self.cycle = rotated;
        if self.chord.0 > self.chord.1 {
            self.chord = (self.chord.1, self.chord.0);
        }
    }

    /// Edge list of the theta graph itself: cycle edges plus the chord.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let n = self.cycle.len();
        let mut edges: Vec<(usize, usize)> = (0..n)
            .map(|i| {
                let (a, b) = (self.cycle[i], self.cycle[(i + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.push((self.chord.0.min(self.chord.1), self.chord.0.max(self.chord.1)));
        edges
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThetaCheckError {
    #[error("cycle has {len} vertices, need at least {need}")]
    ShortCycle { len: usize, need: usize },
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("vertex {0} repeated on the cycle")]
    Repeated(usize),
    #[error("missing cycle edge {0} {1}")]
    MissingCycleEdge(usize, usize),
    #[error("chord endpoint {0} not on the cycle")]
    ChordOffCycle(usize),
    #[error("chord {0} {1} joins cycle neighbors")]
    ChordOnCycle(usize, usize),
    #[error("missing chord edge {0} {1}")]
    MissingChordEdge(usize, usize),
}

/// Checks that `t` is a cycle of length at least `2k` in `g` with a genuine
/// chord.
pub fn verify_theta(g: &Graph, t: &ThetaGraph, k: usize) -> Result<(), ThetaCheckError> {
    let cyc = &t.cycle;
    let n = cyc.len();
    let need = (2 * k).max(4);
    if n < need {
        return Err(ThetaCheckError::ShortCycle { len: n, need });
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in cyc.iter().enumerate() {
        if v >= g.n() {
            return Err(ThetaCheckError::OutOfRange(v));
        }
        if pos[v] != usize::MAX {
            return Err(ThetaCheckError::Repeated(v));
        }
        pos[v] = i;
    }
    for i in 0..n {
        let (u, v) = (cyc[i], cyc[(i + 1) % n]);
        if !g.has_edge(u, v) {
            return Err(ThetaCheckError::MissingCycleEdge(u.min(v), u.max(v)));
        }
    }
    let (a, b) = t.chord;
    for &e in [a, b].iter() {
        if e >= g.n() || pos[e] == usize::MAX {
            return Err(ThetaCheckError::ChordOffCycle(e));
        }
    }
    let gap = pos[a].abs_diff(pos[b]);
    if gap == 0 || gap == 1 || gap == n - 1 {
        return Err(ThetaCheckError::ChordOnCycle(a.min(b), a.max(b)));
    }
    if !g.has_edge(a, b) {
        return Err(ThetaCheckError::MissingChordEdge(a.min(b), a.max(b)));
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq)]
pub enum ThetaError {
    #[error("k must be at least 3, got {0}")]
    BadK(usize),
    #[error("host graph is not bipartite")]
    NotBipartite,
    #[error("vertex {vertex} has degree {degree}, need at least {need}")]
    LowDegree { vertex: usize, degree: usize, need: usize },
    #[error("average degree {have:.3} below required {need}")]
    LowAverageDegree { have: f64, need: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
}

/// Finds a theta graph in a bipartite host of minimum degree at least
/// `k >= 3`.
///
/// Grows a path from vertex 0, always appending the least unvisited neighbor
/// of the endpoint, until every neighbor of the endpoint lies on the path.
/// The cycle closes through the endpoint's farthest on-path neighbor; since
/// all those neighbors share a side, consecutive ones sit two apart, so the
/// cycle has at least `2k` vertices. Any intermediate neighbor supplies the
/// chord.
pub fn find_theta_min_degree(h: &Graph, k: usize) -> Result<ThetaGraph, ThetaError> {
    if k < 3 {
        return Err(ThetaError::BadK(k));
    }
    if h.n() == 0 {
        return Err(ThetaError::EmptyGraph);
    }
    if h.bipartition_of().is_none() {
        return Err(ThetaError::NotBipartite);
    }
    for v in 0..h.n() {
        if h.degree(v) < k {
            return Err(ThetaError::LowDegree { vertex: v, degree: h.degree(v), need: k });
        }
    }

    let mut on_path = vec![false; h.n()];
    let mut path = vec![0usize];
    on_path[0] = true;
    loop {
        let end = *path.last().unwrap();
        match h.neighbors(end).iter().find(|&&w| !on_path[w]) {
            Some(&w) => {
                on_path[w] = true;
                path.push(w);
            }
            None => break,
        }
    }
    let end = *path.last().unwrap();
    let mut pos = vec![usize::MAX; h.n()];
    for (i, &v) in path.iter().enumerate() {
        pos[v] = i;
    }
    let mut idxs: Vec<usize> = h.neighbors(end).iter().map(|&w| pos[w]).collect();
    idxs.sort_unstable();
    // all neighbors lie on the path, the nearest is the predecessor
    debug_assert!(idxs.len() >= k);
    debug_assert_eq!(*idxs.last().unwrap(), path.len() - 2);
    let first = idxs[0];
    let cycle: Vec<usize> = path[first..].to_vec();
    let chord_target = path[idxs[1]];
    let mut theta = ThetaGraph { cycle, chord: (end, chord_target) };
    theta.canonicalize();
    verify_theta(h, &theta, k).expect("maximal path construction yields a valid theta graph");
    Ok(theta)
}

/// Finds a theta graph in a bipartite host of average degree at least `2k`,
/// `k >= 3`, by peeling to the `k`-core (nonempty by an averaging argument)
/// and running the minimum-degree finder there.
pub fn find_theta_avg_degree(h: &Graph, k: usize) -> Result<ThetaGraph, ThetaError> {
    if k < 3 {
        return Err(ThetaError::BadK(k));
    }
    if h.n() == 0 {
        return Err(ThetaError::EmptyGraph);
    }
    if h.bipartition_of().is_none() {
        return Err(ThetaError::NotBipartite);
    }
    if h.m() < k * h.n() {
        return Err(ThetaError::LowAverageDegree {
            have: 2.0 * h.m() as f64 / h.n() as f64,
            need: 2 * k,
        });
    }
    let core = min_degree_core(h, k);
    assert!(
        core.graph.n() > 0,
        "a graph of average degree >= 2k has a nonempty subgraph of minimum degree >= k"
    );
    let inner = find_theta_min_degree(&core.graph, k)?;
    let mut theta = ThetaGraph {
        cycle: core.map_to_parent(&inner.cycle),
        chord: (core.parent_id(inner.chord.0), core.parent_id(inner.chord.1)),
    };
    theta.canonicalize();
    verify_theta(h, &theta, k).expect("core certificate maps back into the host");
    Ok(theta)
}

/// Exhaustive search, intended for small hosts and as an independent check of
/// the constructive finders. Cycles are enumerated in lexicographic order of
/// their canonical vertex sequence; the first cycle of length at least `2k`
/// admitting a chord is returned with its least chord.
pub fn find_theta_exhaustive(g: &Graph, k: usize) -> Option<ThetaGraph> {
    let mut visited = vec![false; g.n()];
    let mut path = Vec::new();
    for start in 0..g.n() {
        path.clear();
        path.push(start);
        visited[start] = true;
        if let Some(t) = theta_dfs(g, start, k, &mut path, &mut visited) {
            return Some(t);
        }
        visited[start] = false;
    }
    None
}

fn theta_dfs(
    g: &Graph,
    start: usize,
    k: usize,
    path: &mut Vec<usize>,
    visited: &mut Vec<bool>,
) -> Option<ThetaGraph> {
    let cur = *path.last().unwrap();
    if path.len() >= (2 * k).max(4)
        && path[1] < cur
        && g.has_edge(cur, start)
    {
        if let Some(t) = chord_for(g, path) {
            return Some(t);
        }
    }
    for &w in g.neighbors(cur) {
        if w <= start || visited[w] {
            continue;
        }
        visited[w] = true;
        path.push(w);
        if let Some(t) = theta_dfs(g, start, k, path, visited) {
            return Some(t);
        }
        path.pop();
        visited[w] = false;
    }
    None
}

/// Least chord of the cycle `path`, if it has one.
fn chord_for(g: &Graph, path: &[usize]) -> Option<ThetaGraph> {
    let n = path.len();
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if g.has_edge(path[i], path[j]) {
                let mut t = ThetaGraph { cycle: path.to_vec(), chord: (path[i], path[j]) };
                t.canonicalize();
                return Some(t);
            }
        }
    }
    None
}

/// Outcome of the path-or-bipartition dichotomy on a theta graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartsOutcome {
    /// A simple path of the requested length starting in `W` and ending in
    /// `Z`, listed as its vertex sequence.
    Path(Vec<usize>),
    /// No such path exists; `W` and `Z` then form a bipartition of the theta
    /// graph (checked before returning).
    Bipartition,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartsError {
    #[error("W and Z must partition the theta vertices: {0}")]
    BadPartition(String),
    #[error("path length {l} out of range 1..={max}")]
    BadLength { l: usize, max: usize },
    #[error("no W-to-Z path of length {l}, yet W/Z is not a bipartition; edge {u} {v} stays inside one part; state: {state}")]
    Contradiction { l: usize, u: usize, v: usize, state: String },
}

/// Searches the theta graph `t` (as its own host: cycle edges plus chord) for
/// a simple path of exactly `l` edges that starts in `w` and ends in `z`.
/// If none exists, every length-`l` path from `w` ends back in `w`, which
/// forces `w`/`z` to be a bipartition of `t`; that is checked and reported.
pub fn path_between_parts(
    t: &ThetaGraph,
    w: &[usize],
    z: &[usize],
    l: usize,
) -> Result<PartsOutcome, PartsError> {
    let mut verts: Vec<usize> = t.cycle.clone();
    verts.sort_unstable();
    let mut wz: Vec<usize> = w.iter().chain(z.iter()).copied().collect();
    wz.sort_unstable();
    if w.is_empty() || z.is_empty() {
        return Err(PartsError::BadPartition("a part is empty".into()));
    }
    if wz.windows(2).any(|p| p[0] == p[1]) {
        return Err(PartsError::BadPartition("parts overlap or repeat a vertex".into()));
    }
    if wz != verts {
        return Err(PartsError::BadPartition(
            "parts do not cover exactly the theta vertices".into(),
        ));
    }
    let max = t.cycle.len() - 1;
    if l == 0 || l > max {
        return Err(PartsError::BadLength { l, max });
    }

    // adjacency of the theta graph itself
    let mut adj: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for &(a, b) in &t.edge_list() {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let in_z: std::collections::BTreeSet<usize> = z.iter().copied().collect();

    let mut starts: Vec<usize> = w.to_vec();
    starts.sort_unstable();
    for &s in &starts {
        let mut path = vec![s];
        if let Some(found) = parts_dfs(&adj, &in_z, l, &mut path) {
            return Ok(PartsOutcome::Path(found));
        }
    }

    // no path: the dichotomy says W/Z must be a proper bipartition
    for (&a, list) in &adj {
        for &b in list {
            if a < b && in_z.contains(&a) == in_z.contains(&b) {
                let state = serde_json::json!({
                    "theta": t,
                    "w": w,
                    "z": z,
                })
                .to_string();
                return Err(PartsError::Contradiction { l, u: a, v: b, state });
            }
        }
    }
    Ok(PartsOutcome::Bipartition)
}

fn parts_dfs(
    adj: &std::collections::BTreeMap<usize, Vec<usize>>,
    in_z: &std::collections::BTreeSet<usize>,
    l: usize,
    path: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if path.len() == l + 1 {
        return in_z.contains(path.last().unwrap()).then(|| path.clone());
    }
    let cur = *path.last().unwrap();
    for &w in &adj[&cur] {
        if path.contains(&w) {
            continue;
        }
        path.push(w);
        if let Some(found) = parts_dfs(adj, in_z, l, path) {
            return Some(found);
        }
        path.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cycle_with_chord(n: usize, chord: (usize, usize)) -> (Graph, ThetaGraph) {
        let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.push(chord);
        let g = Graph::from_edges(n, &edges).unwrap();
        (g, ThetaGraph { cycle: (0..n).collect(), chord })
    }

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    // ---- certificate checking ----

    #[test]
    fn c6_with_long_chord_passes_for_k3() {
        let (g, t) = cycle_with_chord(6, (0, 3));
        assert!(verify_theta(&g, &t, 3).is_ok());
        assert_eq!(
            verify_theta(&g, &t, 4),
            Err(ThetaCheckError::ShortCycle { len: 6, need: 8 })
        );
    }

    #[test]
    fn square_in_k4_is_too_short_for_k3() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let t = ThetaGraph { cycle: vec![0, 1, 2, 3], chord: (0, 2) };
        assert_eq!(verify_theta(&g, &t, 3), Err(ThetaCheckError::ShortCycle { len: 4, need: 6 }));
        assert!(verify_theta(&g, &t, 2).is_ok());
    }

    #[test]
    fn chord_must_skip_cycle_neighbors() {
        let (g, _) = cycle_with_chord(6, (0, 3));
        let adjacent = ThetaGraph { cycle: (0..6).collect(), chord: (0, 1) };
        assert_eq!(verify_theta(&g, &adjacent, 3), Err(ThetaCheckError::ChordOnCycle(0, 1)));
        let wrap = ThetaGraph { cycle: (0..6).collect(), chord: (0, 5) };
        assert_eq!(verify_theta(&g, &wrap, 3), Err(ThetaCheckError::ChordOnCycle(0, 5)));
        let absent = ThetaGraph { cycle: (0..6).collect(), chord: (1, 4) };
        assert_eq!(verify_theta(&g, &absent, 3), Err(ThetaCheckError::MissingChordEdge(1, 4)));
    }

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let mut a = ThetaGraph { cycle: vec![4, 2, 7, 3, 9, 5], chord: (7, 5) };
        let mut b = ThetaGraph { cycle: vec![3, 7, 2, 4, 5, 9], chord: (5, 7) };
        a.canonicalize();
        b.canonicalize();
        assert_eq!(a, b);
        assert_eq!(a.cycle[0], 2);
    }

    // ---- minimum-degree finder ----

    #[test]
    fn finds_theta_in_k33() {
        let g = complete_bipartite(3, 3);
        let t = find_theta_min_degree(&g, 3).unwrap();
        assert_eq!(t.len(), 6);
        assert!(verify_theta(&g, &t, 3).is_ok());
    }

    #[test]
    fn rejects_low_degree_naming_vertex() {
        let g = complete_bipartite(2, 2);
        assert_eq!(
            find_theta_min_degree(&g, 3),
            Err(ThetaError::LowDegree { vertex: 0, degree: 2, need: 3 })
        );
    }

    #[test]
    fn rejects_k_below_three_and_odd_cycles() {
        let g = complete_bipartite(3, 3);
        assert_eq!(find_theta_min_degree(&g, 2), Err(ThetaError::BadK(2)));
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(find_theta_min_degree(&tri, 3), Err(ThetaError::NotBipartite));
    }

    #[test]
    fn min_degree_finder_matches_exhaustive_on_random_hosts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7e7a);
        for trial in 0..40 {
            let a = rng.gen_range(3..=6);
            let b = rng.gen_range(3..=6);
            let mut edges = Vec::new();
            for u in 0..a {
                for v in 0..b {
                    if rng.gen_bool(0.85) {
                        edges.push((u, a + v));
                    }
                }
            }
            let g = Graph::from_edges(a + b, &edges).unwrap();
            if g.min_degree() < 3 {
                continue;
            }
            let got = find_theta_min_degree(&g, 3).unwrap();
            assert!(verify_theta(&g, &got, 3).is_ok(), "trial {}", trial);
            assert!(find_theta_exhaustive(&g, 3).is_some(), "trial {}", trial);
        }
    }

    // ---- average-degree finder ----

    #[test]
    fn avg_degree_finder_needs_density() {
        let g = complete_bipartite(4, 4);
        assert!(matches!(
            find_theta_avg_degree(&g, 3),
            Err(ThetaError::LowAverageDegree { .. })
        ));
        let dense = complete_bipartite(6, 6);
        let t = find_theta_avg_degree(&dense, 3).unwrap();
        assert!(verify_theta(&dense, &t, 3).is_ok());
    }

    #[test]
    fn pendant_drags_average_below_threshold() {
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 0..3 {
                edges.push((u, 3 + v));
            }
        }
        edges.push((0, 6));
        let g = Graph::from_edges(7, &edges).unwrap();
        assert!(matches!(
            find_theta_avg_degree(&g, 3),
            Err(ThetaError::LowAverageDegree { .. })
        ));
    }

    #[test]
    fn avg_degree_certificate_lands_in_host_after_peeling() {
        // dense K6,6 with pendant chains attached; the core drops the chains
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in 0..6 {
                edges.push((u, 6 + v));
            }
        }
        edges.push((0, 12));
        edges.push((12, 13));
        let g = Graph::from_edges(14, &edges).unwrap();
        if g.m() >= 3 * g.n() {
            let t = find_theta_avg_degree(&g, 3).unwrap();
            assert!(verify_theta(&g, &t, 3).is_ok());
        } else {
            // 37 edges on 14 vertices: below the threshold, rejected
            assert!(find_theta_avg_degree(&g, 3).is_err());
        }
    }

    // ---- exhaustive finder ----

    #[test]
    fn exhaustive_finds_nothing_in_plain_cycle() {
        let edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let g = Graph::from_edges(8, &edges).unwrap();
        assert_eq!(find_theta_exhaustive(&g, 2), None);
    }

    #[test]
    fn exhaustive_is_deterministic_and_least() {
        let (g, _) = cycle_with_chord(6, (0, 3));
        let t = find_theta_exhaustive(&g, 3).unwrap();
        assert_eq!(t.cycle, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(t.chord, (0, 3));
        assert_eq!(find_theta_exhaustive(&g, 3).unwrap(), t);
    }

    // ---- path-or-bipartition dichotomy ----

    #[test]
    fn finds_crossing_path_in_c6_with_chord() {
        let (_, t) = cycle_with_chord(6, (0, 3));
        let w = vec![0, 2, 4];
        let z = vec![1, 3, 5];
        match path_between_parts(&t, &w, &z, 3).unwrap() {
            PartsOutcome::Path(p) => {
                assert_eq!(p.len(), 4);
                assert!(w.contains(&p[0]));
                assert!(z.contains(p.last().unwrap()));
            }
            PartsOutcome::Bipartition => panic!("odd-length paths must cross"),
        }
    }

    #[test]
    fn even_walks_stay_inside_a_true_side() {
        // C6 with a long chord is bipartite with the parity classes as sides
        let (_, t) = cycle_with_chord(6, (0, 3));
        let w = vec![0, 2, 4];
        let z = vec![1, 3, 5];
        assert_eq!(path_between_parts(&t, &w, &z, 2).unwrap(), PartsOutcome::Bipartition);
        assert_eq!(path_between_parts(&t, &w, &z, 4).unwrap(), PartsOutcome::Bipartition);
    }

    #[test]
    fn lopsided_split_yields_a_path() {
        let (_, t) = cycle_with_chord(6, (0, 3));
        let w = vec![0];
        let z = vec![1, 2, 3, 4, 5];
        match path_between_parts(&t, &w, &z, 2).unwrap() {
            PartsOutcome::Path(p) => assert_eq!(p.len(), 3),
            PartsOutcome::Bipartition => panic!("vertex 2 is reachable from 0 in two steps"),
        }
    }

    #[test]
    fn partition_validation() {
        let (_, t) = cycle_with_chord(6, (0, 3));
        assert!(matches!(
            path_between_parts(&t, &[0, 1], &[1, 2, 3, 4, 5], 2),
            Err(PartsError::BadPartition(_))
        ));
        assert!(matches!(
            path_between_parts(&t, &[0], &[1, 2, 3], 2),
            Err(PartsError::BadPartition(_))
        ));
        assert!(matches!(
            path_between_parts(&t, &[0], &[1, 2, 3, 4, 5], 0),
            Err(PartsError::BadLength { .. })
        ));
        assert!(matches!(
            path_between_parts(&t, &[0], &[1, 2, 3, 4, 5], 6),
            Err(PartsError::BadLength { .. })
        ));
    }
}
