//! Simple undirected graphs on dense vertex ids `0..n`, the shared text
//! format, cycle certificates, and the two degree reductions every search in
//! this crate starts from: the bipartite half and the minimum-degree core.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

/// Undirected simple graph. Adjacency lists stay sorted; self-loops and
/// parallel edges are rejected at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: {source}")]
    BadEdge { line: usize, source: GraphError },
    #[error("header says {expected} edges, file has {found} edge lines")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("empty input, expected a \"n m\" header line")]
    Empty,
}

impl Graph {
    /// Graph with `n` vertices and no edges. `n = 0` is legal.
    pub fn empty(n: usize) -> Self {
        Graph { n, m: 0, adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_edge(u, v)?;
            g.adj[u].push(v);
            g.adj[v].push(u);
            g.m += 1;
        }
        g.sort_adj()?;
        Ok(g)
    }

    fn check_edge(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for &w in [u, v].iter() {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    /// Sorts the adjacency lists; an equal pair of neighbors is a duplicate
    /// edge. Sorting once beats a linear scan per inserted edge at scale.
    fn sort_adj(&mut self) -> Result<(), GraphError> {
        for (v, list) in self.adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Text format: a `"n m"` header, then one `"u v"` line per edge. Output is
    /// sorted lexicographically with `u < v` and ends with a newline.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u, v));
        }
        s
    }

    /// Parses the text format. Edge lines may name the endpoints in either
    /// order; duplicates (in any order) are rejected with their line number.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(ParseError::Empty)?;
        let mut head = header.split_whitespace();
        let parse_num = |tok: Option<&str>, line: usize| -> Result<usize, ParseError> {
            tok.ok_or(ParseError::Malformed { line, msg: "expected two integers".into() })?
                .parse()
                .map_err(|_| ParseError::Malformed { line, msg: "expected two integers".into() })
        };
        let n = parse_num(head.next(), 1)?;
        let m = parse_num(head.next(), 1)?;
        if head.next().is_some() {
            return Err(ParseError::Malformed { line: 1, msg: "trailing tokens after header".into() });
        }
        let mut g = Graph::empty(n);
        let mut seen: Vec<(usize, usize, usize)> = Vec::new();
        for (idx, raw) in lines {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let mut it = raw.split_whitespace();
            let u = parse_num(it.next(), line)?;
            let v = parse_num(it.next(), line)?;
            if it.next().is_some() {
                return Err(ParseError::Malformed { line, msg: "trailing tokens after edge".into() });
            }
            g.check_edge(u, v).map_err(|source| ParseError::BadEdge { line, source })?;
            g.adj[u].push(v);
            g.adj[v].push(u);
            g.m += 1;
            seen.push((u.min(v), u.max(v), line));
        }
        if g.m != m {
            return Err(ParseError::WrongEdgeCount { expected: m, found: g.m });
        }
        if g.sort_adj().is_err() {
            // find the duplicate again to blame the right line
            seen.sort_unstable();
            let pair = seen.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1));
            let &(a, b, line) = pair.map(|w| &w[1]).expect("a duplicate exists");
            return Err(ParseError::BadEdge { line, source: GraphError::DuplicateEdge(a, b) });
        }
        Ok(g)
    }

    /// Proper two-coloring if one exists, found by breadth-first parity.
    /// Component roots are taken in increasing id order, so the result is
    /// deterministic.
    pub fn bipartition_of(&self) -> Option<Bipartition> {
        let side = self.bfs_parity()?;
        Some(Bipartition::from_sides(&side))
    }

    /// Breadth-first parity coloring; `None` if some edge joins equal colors.
    fn bfs_parity(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for root in 0..self.n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// Number of edges with one endpoint in `a` and the other in `b`.
    /// The slices must be disjoint.
    pub fn edges_between(&self, a: &[usize], b: &[usize]) -> usize {
        let mut in_b = vec![false; self.n];
        for &v in b {
            in_b[v] = true;
        }
        debug_assert!(a.iter().all(|&v| !in_b[v]), "edges_between needs disjoint sets");
        a.iter().map(|&u| self.adj[u].iter().filter(|&&v| in_b[v]).count()).sum()
    }

    pub fn is_independent_set(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &v in set {
            member[v] = true;
        }
        set.iter().all(|&u| self.adj[u].iter().all(|&v| !member[v]))
    }

    /// Induced subgraph on `verts` (deduplicated, any order). The result
    /// remembers the parent id of each new vertex so certificates can be
    /// mapped back.
    pub fn induced(&self, verts: &[usize]) -> InducedSubgraph {
        let mut ids: Vec<usize> = verts.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in ids.iter().enumerate() {
            assert!(v < self.n, "induced: vertex {} out of range", v);
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for &u in &ids {
            for &v in &self.adj[u] {
                if u < v && new_id[v] != usize::MAX {
                    edges.push((new_id[u], new_id[v]));
                }
            }
        }
        let graph = Graph::from_edges(ids.len(), &edges).expect("induced edges are simple");
        InducedSubgraph { graph, parent_ids: ids }
    }
}

/// Two-sided vertex partition. Sides are sorted and disjoint; together they
/// cover `0..n` of the graph they were built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    fn from_sides(side: &[bool]) -> Self {
        let left = (0..side.len()).filter(|&v| !side[v]).collect();
        let right = (0..side.len()).filter(|&v| side[v]).collect();
        Bipartition { left, right }
    }

    pub fn side_of(&self, v: usize) -> Option<bool> {
        if self.left.binary_search(&v).is_ok() {
            Some(false)
        } else if self.right.binary_search(&v).is_ok() {
            Some(true)
        } else {
            None
        }
    }
}

/// Spanning bipartite subgraph keeping at least half the edges, together with
/// the partition that realizes it.
///
/// Starts from breadth-first parity (so an already bipartite graph keeps every
/// edge) and then applies single-vertex moves while any vertex has more
/// same-side than cross-side neighbors. Each move strictly increases the cut,
/// so the loop terminates; at the fixpoint every vertex has at least half its
/// edges crossing, hence the subgraph has at least `ceil(m / 2)` edges.
pub fn bipartite_half(g: &Graph) -> (Bipartition, Graph) {
    let mut side = g.bfs_parity().unwrap_or_else(|| {
        // odd cycle somewhere: fall back to greedy sequential placement
        let mut side = vec![false; g.n()];
        for v in 0..g.n() {
            let cross = g.neighbors(v).iter().filter(|&&u| u < v && side[u]).count();
            let same = g.neighbors(v).iter().filter(|&&u| u < v && !side[u]).count();
            side[v] = same > cross;
        }
        side
    });
    loop {
        let mut moved = false;
        for v in 0..g.n() {
            let cross = g.neighbors(v).iter().filter(|&&u| side[u] != side[v]).count();
            let same = g.degree(v) - cross;
            if same > cross {
                side[v] = !side[v];
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    let edges: Vec<(usize, usize)> =
        g.edges().into_iter().filter(|&(u, v)| side[u] != side[v]).collect();
    let sub = Graph::from_edges(g.n(), &edges).expect("filtered edges are simple");
    debug_assert!(sub.m() * 2 >= g.m());
    (Bipartition::from_sides(&side), sub)
}

/// Induced subgraph with dense ids `0..k` and the id of each vertex in the
/// graph it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    parent_ids: Vec<usize>,
}

impl InducedSubgraph {
    pub fn parent_id(&self, v: usize) -> usize {
        self.parent_ids[v]
    }

    pub fn parent_ids(&self) -> &[usize] {
        &self.parent_ids
    }

    pub fn map_to_parent(&self, verts: &[usize]) -> Vec<usize> {
        verts.iter().map(|&v| self.parent_ids[v]).collect()
    }
}

/// Maximal induced subgraph of minimum degree at least `delta`, possibly
/// empty. Order of removals does not matter: the result is the unique such
/// subgraph, so this is idempotent.
pub fn min_degree_core(g: &Graph, delta: usize) -> InducedSubgraph {
    let mut alive = vec![true; g.n()];
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut queue: VecDeque<usize> = (0..g.n()).filter(|&v| deg[v] < delta).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] < delta {
                    queue.push_back(u);
                }
            }
        }
    }
    let verts: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    g.induced(&verts)
}

/// A cycle given as its vertex sequence; the edge back from the last vertex to
/// the first is implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCert {
    pub vertices: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleCheckError {
    #[error("expected length {expected}, certificate has {actual} vertices")]
    WrongLength { expected: usize, actual: usize },
    #[error("a cycle needs at least 3 vertices, certificate has {0}")]
    TooShort(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("vertex {0} repeated")]
    Repeated(usize),
    #[error("missing edge {0} {1}")]
    MissingEdge(usize, usize),
}

/// Checks that `cert` is a simple cycle of exactly `len` vertices in `g`.
pub fn verify_cycle(g: &Graph, cert: &CycleCert, len: usize) -> Result<(), CycleCheckError> {
    let vs = &cert.vertices;
    if vs.len() < 3 {
        return Err(CycleCheckError::TooShort(vs.len()));
    }
    if vs.len() != len {
        return Err(CycleCheckError::WrongLength { expected: len, actual: vs.len() });
    }
    let mut seen = vec![false; g.n()];
    for &v in vs {
        if v >= g.n() {
            return Err(CycleCheckError::OutOfRange(v));
        }
        if seen[v] {
            return Err(CycleCheckError::Repeated(v));
        }
        seen[v] = true;
    }
    for i in 0..vs.len() {
        let (u, v) = (vs[i], vs[(i + 1) % vs.len()]);
        if !g.has_edge(u, v) {
            return Err(CycleCheckError::MissingEdge(u.min(v), u.max(v)));
        }
    }
    Ok(())
}
