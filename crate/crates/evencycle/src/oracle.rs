//! Brute-force oracles and instance generators: exact cycle search, exact
//! extremal edge counts on small hosts, polarity graphs of projective
//! planes, and seeded random or planted inputs. Everything here is
//! independent of the search machinery it cross-checks.

use crate::graph::{CycleCert, Graph};
use crate::theta::ThetaGraph;
use crate::trilayered::{Trilayered, WellPlacedCert};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use thiserror::Error;

/// Finds a simple cycle on exactly `len` vertices, or proves there is none.
/// Starts are tried in ascending order and each start only uses larger
/// vertex ids, with shortest-distance pruning toward the start; the first
/// cycle found is returned, so the result is deterministic.
pub fn contains_cycle(g: &Graph, len: usize) -> Option<CycleCert> {
    if len < 3 || g.n() < len {
        return None;
    }
    for s in 0..g.n() {
        let dist = bfs_from(g, s, s);
        let mut used = vec![false; g.n()];
        used[s] = true;
        let mut path = vec![s];
        if extend_cycle(g, s, s, len, &dist, &mut used, &mut path) {
            return Some(CycleCert { vertices: path });
        }
    }
    None
}

/// True when some cycle on exactly `len` vertices passes through `v`.
fn has_cycle_through(g: &Graph, len: usize, v: usize) -> bool {
    if len < 3 || g.n() < len {
        return false;
    }
    let dist = bfs_from(g, v, 0);
    let mut used = vec![false; g.n()];
    used[v] = true;
    let mut path = vec![v];
    extend_cycle(g, v, 0, len, &dist, &mut used, &mut path)
}

fn bfs_from(g: &Graph, s: usize, floor: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if v >= floor && dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

fn extend_cycle(
    g: &Graph,
    s: usize,
    floor: usize,
    len: usize,
    dist: &[usize],
    used: &mut [bool],
    path: &mut Vec<usize>,
) -> bool {
    let cur = *path.last().unwrap();
    let p = path.len();
    if p == len {
        // one orientation per cycle: second vertex below the last
        return path[1] < path[len - 1] && g.has_edge(cur, s);
    }
    for &v in g.neighbors(cur) {
        if v < floor || used[v] || dist[v] > len - p {
            continue;
        }
        used[v] = true;
        path.push(v);
        if extend_cycle(g, s, floor, len, dist, used, path) {
            return true;
        }
        path.pop();
        used[v] = false;
    }
    false
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExError {
    #[error("cycle length parameter k = {k} must be at least 2")]
    BadK { k: usize },
    #[error("n = {n} is over the exact-search budget of {max} for this k")]
    OverBudget { n: usize, max: usize },
}

/// Exact extremal value on `n` vertices with a densest witness.
#[derive(Clone, Debug)]
pub struct ExEntry {
    pub n: usize,
    pub k: usize,
    pub max_edges: usize,
    pub witness: Graph,
}

struct FreeClasses {
    /// Isomorphism classes per vertex count `1..=n`.
    #[cfg_attr(not(test), allow(dead_code))]
    counts: Vec<usize>,
    /// A densest representative per vertex count.
    best: Vec<Graph>,
}

/// Representatives of every isomorphism class of graph with no cycle on
/// exactly `2k` vertices, built one vertex at a time. Any such graph on `m`
/// vertices is such a graph on `m - 1` vertices plus a vertex, so extending
/// each representative by every neighborhood subset reaches every class,
/// and a new cycle of the forbidden length must pass through the new
/// vertex, which keeps the check local.
fn build_free_classes(n: usize, k: usize) -> Result<FreeClasses, ExError> {
    if k < 2 {
        return Err(ExError::BadK { k });
    }
    let max = if k == 2 { 9 } else { 8 };
    if n < 1 || n > max {
        return Err(ExError::OverBudget { n, max });
    }
    let mut reps = vec![Graph::empty(1)];
    let mut counts = vec![1];
    let mut best = vec![Graph::empty(1)];
    for m in 2..=n {
        let masks = 1usize << (m - 1);
        let survivors: Vec<(usize, usize, u64)> = reps
            .par_iter()
            .enumerate()
            .flat_map_iter(|(ri, g)| {
                (0..masks).filter_map(move |mask| {
                    let h = extend_by_vertex(g, mask);
                    if has_cycle_through(&h, 2 * k, m - 1) {
                        None
                    } else {
                        Some((ri, mask, wl_hash(&h)))
                    }
                })
            })
            .collect();
        let mut buckets: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        let mut next: Vec<Graph> = Vec::new();
        for (ri, mask, key) in survivors {
            let h = extend_by_vertex(&reps[ri], mask);
            let bucket = buckets.entry(key).or_default();
            if !bucket.iter().any(|&idx| isomorphic(&next[idx], &h)) {
                bucket.push(next.len());
                next.push(h);
            }
        }
        reps = next;
        counts.push(reps.len());
        best.push(reps.iter().max_by_key(|g| g.m()).expect("a class always survives").clone());
    }
    Ok(FreeClasses { counts, best })
}

fn extend_by_vertex(g: &Graph, mask: usize) -> Graph {
    let n = g.n();
    let mut edges = g.edges();
    for u in 0..n {
        if mask & (1 << u) != 0 {
            edges.push((u, n));
        }
    }
    Graph::from_edges(n + 1, &edges).expect("extension keeps edges simple")
}

/// Exact extremal edge counts for hosts with no cycle on `2k` vertices, for
/// every vertex count `1..=n`, each with a verified densest witness.
pub fn ex_brute(n: usize, k: usize) -> Result<Vec<ExEntry>, ExError> {
    let classes = build_free_classes(n, k)?;
    Ok((1..=n)
        .map(|m| {
            let witness = classes.best[m - 1].clone();
            ExEntry { n: m, k, max_edges: witness.m(), witness }
        })
        .collect())
}

/// Same extremal value by direct enumeration of all edge subsets; usable up
/// to 6 vertices and entirely independent of the incremental search.
pub fn ex_brute_naive(n: usize, k: usize) -> usize {
    assert!(k >= 2 && (1..=6).contains(&n));
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut beat = 0;
    for mask in 0u32..(1 << pairs.len()) {
        if (mask.count_ones() as usize) <= beat {
            continue;
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if contains_cycle(&g, 2 * k).is_none() {
            beat = edges.len();
        }
    }
    beat
}

/// Color-refinement hash: equal for isomorphic graphs, usually different
/// otherwise. Used to bucket candidates before the exact check.
pub fn wl_hash(g: &Graph) -> u64 {
    let n = g.n();
    let mut color: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    for _ in 0..n {
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut around: Vec<u64> = g.neighbors(v).iter().map(|&u| color[u]).collect();
            around.sort_unstable();
            let mut h = DefaultHasher::new();
            color[v].hash(&mut h);
            around.hash(&mut h);
            next.push(h.finish());
        }
        color = next;
    }
    color.sort_unstable();
    let mut h = DefaultHasher::new();
    (g.n() as u64, g.m() as u64).hash(&mut h);
    color.hash(&mut h);
    h.finish()
}

/// Exact isomorphism by backtracking, viable for small graphs.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let n = a.n();
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(a.degree(v)));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    assign(a, b, &order, 0, &mut map, &mut used)
}

fn assign(
    a: &Graph,
    b: &Graph,
    order: &[usize],
    pos: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    'cand: for w in 0..b.n() {
        if used[w] || b.degree(w) != a.degree(v) {
            continue;
        }
        for &p in &order[..pos] {
            if a.has_edge(v, p) != b.has_edge(w, map[p]) {
                continue 'cand;
            }
        }
        map[v] = w;
        used[w] = true;
        if assign(a, b, order, pos + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[w] = false;
    }
    false
}

/// Sides `0..a` and `a..a + b`, every cross edge present.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
    Graph::from_edges(a + b, &edges).unwrap()
}

/// Exactly `m` distinct cross edges between sides `0..l` and `l..l + r`,
/// chosen by a seeded partial shuffle of all pairs.
pub fn gen_random_bipartite(l: usize, r: usize, m: usize, seed: u64) -> Graph {
    assert!(m <= l * r, "m over the number of available pairs");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> =
        (0..l).flat_map(|u| (0..r).map(move |v| (u, l + v))).collect();
    let total = pairs.len();
    for i in 0..m {
        let j = rng.gen_range(i..total);
        pairs.swap(i, j);
    }
    pairs.truncate(m);
    pairs.sort_unstable();
    Graph::from_edges(l + r, &pairs).unwrap()
}

fn sample_distinct(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

/// Seeded bipartite graph with minimum degree at least `delta` on both
/// sides: every left vertex picks `delta` right neighbors, then short right
/// vertices are topped up.
pub fn gen_min_degree_bipartite(l: usize, r: usize, delta: usize, seed: u64) -> Graph {
    assert!(delta >= 1 && delta <= l && delta <= r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: HashSet<(usize, usize)> = HashSet::new();
    let mut rdeg = vec![0usize; r];
    for u in 0..l {
        for v in sample_distinct(&mut rng, r, delta) {
            if chosen.insert((u, v)) {
                rdeg[v] += 1;
            }
        }
    }
    for v in 0..r {
        while rdeg[v] < delta {
            let u = rng.gen_range(0..l);
            if chosen.insert((u, v)) {
                rdeg[v] += 1;
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = chosen.into_iter().map(|(u, v)| (u, l + v)).collect();
    edges.sort_unstable();
    Graph::from_edges(l + r, &edges).unwrap()
}

/// Layers `0..n1`, `n1..n1 + n2`, and onward; each allowed pair is an edge
/// independently with the given probability.
pub fn gen_random_trilayered(
    n1: usize,
    n2: usize,
    n3: usize,
    p12: f64,
    p23: f64,
    seed: u64,
) -> Trilayered {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in 0..n2 {
            if rng.gen_bool(p12) {
                edges.push((u, n1 + v));
            }
        }
    }
    for u in 0..n2 {
        for v in 0..n3 {
            if rng.gen_bool(p23) {
                edges.push((n1 + u, n1 + n2 + v));
            }
        }
    }
    let g = Graph::from_edges(n1 + n2 + n3, &edges).unwrap();
    Trilayered::new(
        g,
        (0..n1).collect(),
        (n1..n1 + n2).collect(),
        (n1 + n2..n1 + n2 + n3).collect(),
    )
    .unwrap()
}

/// Seeded trilayered graph meeting the degree floors `[d12:d21, d23:d32]`
/// exactly as minimums, by per-vertex sampling plus top-up on each block.
pub fn gen_trilayered_min_degree(
    n1: usize,
    n2: usize,
    n3: usize,
    d12: usize,
    d21: usize,
    d23: usize,
    d32: usize,
    seed: u64,
) -> Trilayered {
    assert!(d12 <= n2 && d21 <= n1 && d23 <= n3 && d32 <= n2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let block = |rng: &mut ChaCha8Rng,
                     left: usize,
                     right: usize,
                     dl: usize,
                     dr: usize,
                     off_l: usize,
                     off_r: usize| {
        let mut chosen: HashSet<(usize, usize)> = HashSet::new();
        let mut deg_r = vec![0usize; right];
        for u in 0..left {
            for v in sample_distinct(rng, right, dl) {
                if chosen.insert((u, v)) {
                    deg_r[v] += 1;
                }
            }
        }
        for v in 0..right {
            while deg_r[v] < dr {
                let u = rng.gen_range(0..left);
                if chosen.insert((u, v)) {
                    deg_r[v] += 1;
                }
            }
        }
        let mut list: Vec<(usize, usize)> =
            chosen.into_iter().map(|(u, v)| (off_l + u, off_r + v)).collect();
        list.sort_unstable();
        list
    };
    edges.extend(block(&mut rng, n1, n2, d12, d21, 0, n1));
    edges.extend(block(&mut rng, n2, n3, d23, d32, n1, n1 + n2));
    let g = Graph::from_edges(n1 + n2 + n3, &edges).unwrap();
    Trilayered::new(
        g,
        (0..n1).collect(),
        (n1..n1 + n2).collect(),
        (n1 + n2..n1 + n2 + n3).collect(),
    )
    .unwrap()
}

/// Points of the projective plane over a prime field, normalized so the
/// first nonzero coordinate is 1; two distinct points are adjacent when
/// their dot product vanishes. `q^2 + q + 1` vertices, `q(q + 1)^2 / 2`
/// edges, no four-cycle.
#[derive(Clone, Debug)]
pub struct PolarityGraph {
    pub q: u64,
    pub points: Vec<[u64; 3]>,
    pub graph: Graph,
}

pub fn polarity_graph(q: u64) -> PolarityGraph {
    assert!(matches!(q, 2 | 3 | 5 | 7 | 11 | 13), "prime q up to 13");
    let mut points: Vec<[u64; 3]> = vec![[0, 0, 1]];
    for z in 0..q {
        points.push([0, 1, z]);
    }
    for y in 0..q {
        for z in 0..q {
            points.push([1, y, z]);
        }
    }
    let n = points.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let dot: u64 = points[i].iter().zip(&points[j]).map(|(x, y)| x * y).sum();
            if dot % q == 0 {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(n, &edges).unwrap();
    PolarityGraph { q, points, graph }
}

/// A graph built around a known well-placed theta: explorable levels, the
/// certificate itself, and the length the extraction step must produce.
#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub root: usize,
    pub k: usize,
    pub d: usize,
    /// Level index of the theta's middle layer.
    pub mid_level: usize,
    /// Levels `0..=mid_level + 1`, each sorted.
    pub levels: Vec<Vec<usize>>,
    pub cert: WellPlacedCert,
    pub expected_len: usize,
}

impl PlantedInstance {
    /// The three consecutive levels around the theta as a trilayered graph.
    pub fn trilayer(&self) -> Trilayered {
        let i = self.mid_level;
        Trilayered::new(
            self.graph.clone(),
            self.levels[i - 1].clone(),
            self.levels[i].clone(),
            self.levels[i + 1].clone(),
        )
        .expect("planted levels satisfy the layer structure")
    }
}

/// Plants a well-placed theta two or three levels below a root and hides it
/// behind a seeded relabeling. The theta cycle has `2 max(k, 3)` vertices
/// and alternates between the two deepest levels; every cycle vertex on the
/// middle level has a witness one level up, and witnesses chain back to the
/// root, so extraction must return a cycle on exactly `2k` vertices.
pub fn gen_planted_well_placed(k: usize, seed: u64) -> PlantedInstance {
    assert!(k >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // a middle level at depth 2 needs a path of length 2k - 4 inside the
    // theta, so k = 2 always plants at depth 1
    let mid = if k == 2 { 1 } else { 1 + rng.gen_range(0..2usize) };
    let m = k.max(3);
    let decoys = 3;
    let root = 0usize;
    let (u_a, u_b, a0) = if mid == 1 { (root, root, 1) } else { (1, 2, 3) };
    let b0 = a0 + m;
    let first_decoy = b0 + m;
    let n = first_decoy + decoys;

    let mut edges: Vec<(usize, usize)> = Vec::new();
    if mid == 1 {
        for j in 0..m {
            edges.push((root, a0 + j));
        }
    } else {
        edges.push((root, u_a));
        edges.push((root, u_b));
        edges.push((u_a, a0));
        for j in 1..m {
            edges.push((u_b, a0 + j));
        }
    }
    for j in 0..m {
        edges.push((a0 + j, b0 + j));
        edges.push((b0 + j, a0 + (j + 1) % m));
    }
    // the chord spans three cycle edges, staying between the two layers
    edges.push((a0, b0 + 1));
    for t in 0..decoys {
        edges.push((root, first_decoy + t));
    }

    let mut perm: Vec<usize> = (0..n).collect();
    for idx in (1..n).rev() {
        let j = rng.gen_range(0..=idx);
        perm.swap(idx, j);
    }
    let mapped: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    let graph = Graph::from_edges(n, &mapped).expect("planted edges are simple");

    let map_sorted = |ids: Vec<usize>| -> Vec<usize> {
        let mut out: Vec<usize> = ids.into_iter().map(|v| perm[v]).collect();
        out.sort_unstable();
        out
    };
    let a_layer: Vec<usize> = (0..m).map(|j| a0 + j).collect();
    let b_layer: Vec<usize> = (0..m).map(|j| b0 + j).collect();
    let decoy_ids: Vec<usize> = (0..decoys).map(|t| first_decoy + t).collect();
    let levels: Vec<Vec<usize>> = if mid == 1 {
        vec![
            vec![perm[root]],
            map_sorted(a_layer.iter().chain(decoy_ids.iter()).copied().collect()),
            map_sorted(b_layer),
        ]
    } else {
        vec![
            vec![perm[root]],
            map_sorted(vec![u_a, u_b].into_iter().chain(decoy_ids).collect()),
            map_sorted(a_layer),
            map_sorted(b_layer),
        ]
    };

    let mut cycle = Vec::with_capacity(2 * m);
    for j in 0..m {
        cycle.push(perm[a0 + j]);
        cycle.push(perm[b0 + j]);
    }
    let mut theta = ThetaGraph { cycle, chord: (perm[a0], perm[b0 + 1]) };
    theta.canonicalize();
    let mut witnesses = BTreeMap::new();
    for j in 0..m {
        let w = if mid == 1 {
            root
        } else if j == 0 {
            u_a
        } else {
            u_b
        };
        witnesses.insert(perm[a0 + j], perm[w]);
    }
    let cert = WellPlacedCert { theta, witnesses };
    PlantedInstance {
        graph,
        root: perm[root],
        k,
        d: 1,
        mid_level: mid,
        levels,
        cert,
        expected_len: 2 * k,
    }
}
