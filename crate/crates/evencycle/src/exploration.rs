//! Degree-capped level exploration: breadth-first levels that sidestep
//! high-degree vertices. A candidate with more than `delta * d` unexplored
//! neighbors is set aside unless such vertices make up more than a `1/(2k)`
//! fraction of the candidates, in which case the whole candidate set is taken
//! and the level is tagged big. Skipped candidates stay unexplored and may
//! become candidates again two levels later.

use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreParams {
    pub k: usize,
    pub d: usize,
    /// Cap multiplier; the degree cap is `delta_mult * d`.
    pub delta_mult: usize,
}

impl ExploreParams {
    pub fn new(k: usize, d: usize) -> Self {
        ExploreParams { k, d, delta_mult: k * k * k }
    }

    pub fn cap(&self) -> usize {
        self.delta_mult * self.d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelTag {
    Big,
    Normal,
}

/// One exploration step. `candidates` are the unexplored neighbors of the
/// previous chosen set, `big_set` those with unexplored degree over the cap
/// at the start of the step, `chosen` the vertices actually taken.
#[derive(Clone, Debug)]
pub struct Level {
    pub index: usize,
    pub candidates: Vec<usize>,
    pub big_set: Vec<usize>,
    pub chosen: Vec<usize>,
    pub tag: LevelTag,
}

#[derive(Clone, Debug)]
pub struct Exploration {
    pub root: usize,
    pub levels: Vec<Level>,
    parent: Vec<Option<usize>>,
}

impl Exploration {
    /// Least neighbor in the previous chosen level; `None` for the root and
    /// for unexplored vertices.
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Level index of an explored vertex.
    pub fn level_of(&self, v: usize) -> Option<usize> {
        self.levels.iter().find(|l| l.chosen.binary_search(&v).is_ok()).map(|l| l.index)
    }

    pub fn chosen(&self, i: usize) -> &[usize] {
        &self.levels[i].chosen
    }

    pub fn candidates(&self, i: usize) -> &[usize] {
        &self.levels[i].candidates
    }
}

/// Runs the capped exploration from `root` for `depth` steps, producing
/// levels `0..=depth` (later ones possibly empty).
pub fn explore(g: &Graph, root: usize, params: &ExploreParams, depth: usize) -> Exploration {
    assert!(root < g.n(), "root {} out of range", root);
    assert!(params.k >= 1 && params.d >= 1 && params.delta_mult >= 1);
    let cap = params.cap();
    let mut explored = vec![false; g.n()];
    let mut parent: Vec<Option<usize>> = vec![None; g.n()];
    explored[root] = true;
    let mut levels = vec![Level {
        index: 0,
        candidates: vec![root],
        big_set: Vec::new(),
        chosen: vec![root],
        tag: LevelTag::Normal,
    }];

    for index in 1..=depth {
        let prev = &levels[index - 1].chosen;
        let mut candidates: Vec<usize> = Vec::new();
        for &u in prev.iter() {
            for &v in g.neighbors(u) {
                if !explored[v] {
                    candidates.push(v);
                }
            }
        }
        candidates.sort_unstable();
        candidates.dedup();

        // unexplored degrees are a snapshot from before this level is marked
        let big_set: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&v| {
                let unexplored = g.neighbors(v).iter().filter(|&&u| !explored[u]).count();
                unexplored > cap
            })
            .collect();
        let big = 2 * params.k * big_set.len() > candidates.len();
        let tag = if big { LevelTag::Big } else { LevelTag::Normal };
        let chosen: Vec<usize> = if big {
            candidates.clone()
        } else {
            candidates.iter().copied().filter(|v| big_set.binary_search(v).is_err()).collect()
        };
        for &v in &chosen {
            explored[v] = true;
            parent[v] = prev.iter().copied().find(|&u| g.has_edge(u, v));
        }
        levels.push(Level { index, candidates, big_set, chosen, tag });
    }
    Exploration { root, levels, parent }
}

/// A vertex short of its guaranteed neighbor count.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error(
    "vertex {vertex} in level {level} has {found} neighbors in the previous level \
     and the next candidate set, needs {need}"
)]
pub struct MinDegreeViolation {
    pub vertex: usize,
    pub level: usize,
    pub found: usize,
    pub need: usize,
}

/// Checks that every vertex of level `i + 1` keeps at least `delta` neighbors
/// in the chosen level `i` plus the candidate set of level `i + 2`. This is
/// the guarantee for bipartite hosts of minimum degree `delta` when `delta`
/// is at most the cap; the last level has no next candidate set and is not
/// audited.
pub fn audit_min_degree(
    g: &Graph,
    ex: &Exploration,
    delta: usize,
) -> Result<(), MinDegreeViolation> {
    for win in ex.levels.windows(3) {
        let (prev, cur, next) = (&win[0], &win[1], &win[2]);
        for &v in &cur.chosen {
            let found = g
                .neighbors(v)
                .iter()
                .filter(|&&u| {
                    prev.chosen.binary_search(&u).is_ok()
                        || next.candidates.binary_search(&u).is_ok()
                })
                .count();
            if found < delta {
                return Err(MinDegreeViolation {
                    vertex: v,
                    level: cur.index,
                    found,
                    need: delta,
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelSummary {
    pub i: usize,
    pub size: usize,
    pub tag: LevelTag,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IneqRecord {
    pub id: String,
    pub i: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Level sizes plus the five growth inequalities, one record per level pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthAudit {
    pub levels: Vec<LevelSummary>,
    pub inequalities: Vec<IneqRecord>,
}

impl GrowthAudit {
    pub fn all_hold(&self) -> bool {
        self.inequalities.iter().all(|r| r.holds)
    }
}

/// Evaluates the growth inequalities on an exploration:
/// (5) `e(V_i, V_{i+1}) >= d |V_i|`,
/// (6) `e(V_i, V_{i+1}) <= 2k |V_{i+1}|`,
/// (7) `e(V_i, V'_{i+1}) <= 2k |V'_{i+1}|`,
/// (8) `2k |V_{i+1}| >= d |V_i|`, and
/// (9) `|V_{i+1}| >= d^2 |V_{i-1}| / (400 k ln k)` for `i >= 1`.
/// The first four are integer comparisons; (9) uses floating point.
pub fn audit_growth(g: &Graph, ex: &Exploration, k: usize, d: usize) -> GrowthAudit {
    let levels = ex
        .levels
        .iter()
        .map(|l| LevelSummary { i: l.index, size: l.chosen.len(), tag: l.tag })
        .collect();
    let mut inequalities = Vec::new();
    let mut push = |id: &str, i: usize, lhs: f64, rhs: f64, holds: bool| {
        inequalities.push(IneqRecord { id: id.to_string(), i, lhs, rhs, holds });
    };
    for i in 0..ex.levels.len().saturating_sub(1) {
        let vi = &ex.levels[i].chosen;
        let vnext = &ex.levels[i + 1].chosen;
        let cnext = &ex.levels[i + 1].candidates;
        let e_chosen = g.edges_between(vi, vnext);
        let e_cand = g.edges_between(vi, cnext);
        push("(5)", i, e_chosen as f64, (d * vi.len()) as f64, e_chosen >= d * vi.len());
        push(
            "(6)",
            i,
            e_chosen as f64,
            (2 * k * vnext.len()) as f64,
            e_chosen <= 2 * k * vnext.len(),
        );
        push("(7)", i, e_cand as f64, (2 * k * cnext.len()) as f64, e_cand <= 2 * k * cnext.len());
        push(
            "(8)",
            i,
            (2 * k * vnext.len()) as f64,
            (d * vi.len()) as f64,
            2 * k * vnext.len() >= d * vi.len(),
        );
        if i >= 1 {
            let vprev = &ex.levels[i - 1].chosen;
            let rhs = (d * d * vprev.len()) as f64 / (400.0 * k as f64 * (k as f64).ln());
            push("(9)", i, vnext.len() as f64, rhs, vnext.len() as f64 >= rhs);
        }
    }
    GrowthAudit { levels, inequalities }
}
