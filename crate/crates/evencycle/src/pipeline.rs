//! End-to-end search for a cycle on exactly `2k` vertices: take a bipartite
//! half, trim low-degree vertices, explore capped levels from a root, then
//! work each level with progressively heavier routes: a direct cycle search
//! on level unions, a theta between consecutive levels walked back to the
//! root, and a well-placed theta across three levels. Every certificate is
//! re-verified against the original graph before it is returned.

use crate::exploration::{audit_growth, explore, ExploreParams, Exploration, GrowthAudit};
use crate::graph::{
    bipartite_half, min_degree_core, verify_cycle, CycleCert, Graph, InducedSubgraph,
};
use crate::oracle::contains_cycle;
use crate::theta::{
    find_theta_avg_degree, find_theta_exhaustive, path_between_parts, PartsOutcome, ThetaGraph,
};
use crate::trilayered::{
    check_density_gates, find_well_placed_exhaustive, trilayered_dichotomy, DichotomyOutcome,
    PruneParams, Trilayered, WellPlacedCert, WELL_PLACED_EXHAUSTIVE_CAP,
};
use serde::Serialize;
use thiserror::Error;

/// A certificate tied to exploration levels. The vertex ids are those of the
/// explored graph.
#[derive(Clone, Debug)]
pub enum LevelCert {
    /// Theta graph inside the edges between levels `level` and `level + 1`;
    /// escape paths leave through parents.
    Pair { theta: ThetaGraph, level: usize },
    /// Well-placed theta graph across levels `level - 1`, `level`, and
    /// `level + 1`; escape paths leave through the witnesses.
    WellPlaced { cert: WellPlacedCert, level: usize },
}

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("certificate touches only {count} vertices of level {level}, needs 2")]
    ThinLevel { level: usize, count: usize },
    #[error("vertex {0} is off the levels the certificate claims")]
    OffLevel(usize),
    #[error("no escape step recorded for {vertex}")]
    NoStep { vertex: usize },
    #[error("escape path of {vertex} runs into the theta at {hit}")]
    PathHitsTheta { vertex: usize, hit: usize },
    #[error("level {level} sits too deep to close a cycle on {need} vertices")]
    TooDeep { level: usize, need: usize },
    #[error(transparent)]
    Parts(#[from] crate::theta::PartsError),
    #[error("extraction invariant broke: {0}")]
    Internal(String),
}

/// Turns a level certificate into a cycle on exactly `2k` vertices.
///
/// Every theta vertex on the certificate's level escapes along a path that
/// avoids the theta: the recorded witness or parent first, then parents up
/// to the root. The union of those paths is a tree; below its deepest
/// common vertex, the branch with the smallest child splits the theta
/// vertices of the level into a proper part `W`. The theta is connected and
/// not bipartite across that split, so it holds a path of the right even
/// length from `W` to the rest, and the two escape paths of its endpoints
/// close that path into the cycle.
pub fn extract_cycle(
    g: &Graph,
    ex: &Exploration,
    cert: &LevelCert,
    k: usize,
) -> Result<CycleCert, ExtractError> {
    let (theta, i) = match cert {
        LevelCert::Pair { theta, level } => (theta, *level),
        LevelCert::WellPlaced { cert, level } => (&cert.theta, *level),
    };
    let in_level = |lvl: usize, v: usize| -> bool {
        lvl < ex.levels.len() && ex.chosen(lvl).binary_search(&v).is_ok()
    };
    for &v in &theta.cycle {
        let ok = match cert {
            LevelCert::Pair { .. } => in_level(i, v) || in_level(i + 1, v),
            LevelCert::WellPlaced { .. } => {
                (i >= 1 && in_level(i - 1, v)) || in_level(i, v) || in_level(i + 1, v)
            }
        };
        if !ok {
            return Err(ExtractError::OffLevel(v));
        }
    }
    let y_set: Vec<usize> = theta.cycle.iter().copied().filter(|&v| in_level(i, v)).collect();
    if y_set.len() < 2 {
        return Err(ExtractError::ThinLevel { level: i, count: y_set.len() });
    }

    // escape paths, stored root-first; all have i + 1 vertices
    let mut down: Vec<Vec<usize>> = Vec::with_capacity(y_set.len());
    for &y in &y_set {
        let first = match cert {
            LevelCert::Pair { .. } => ex.parent(y),
            LevelCert::WellPlaced { cert, .. } => cert.witnesses.get(&y).copied(),
        }
        .ok_or(ExtractError::NoStep { vertex: y })?;
        if i == 0 || !in_level(i - 1, first) {
            return Err(ExtractError::OffLevel(first));
        }
        let mut p = vec![y, first];
        let mut cur = first;
        while let Some(q) = ex.parent(cur) {
            p.push(q);
            cur = q;
        }
        if cur != ex.root || p.len() != i + 1 {
            return Err(ExtractError::Internal(format!(
                "ancestry of {} does not reach the root in {} steps",
                y, i
            )));
        }
        for &v in &p[1..] {
            if theta.contains(v) {
                return Err(ExtractError::PathHitsTheta { vertex: y, hit: v });
            }
        }
        p.reverse();
        down.push(p);
    }

    // deepest position where all escape paths still agree
    let mut ell = 0;
    while down.iter().all(|p| p[ell + 1] == down[0][ell + 1]) {
        ell += 1;
    }
    let branch = down.iter().map(|p| p[ell + 1]).min().unwrap();
    let w_part: Vec<usize> = y_set
        .iter()
        .zip(&down)
        .filter(|(_, p)| p[ell + 1] == branch)
        .map(|(&y, _)| y)
        .collect();
    let z_part: Vec<usize> =
        theta.cycle.iter().copied().filter(|v| !w_part.contains(v)).collect();
    let depth = i - ell;
    if 2 * depth >= 2 * k {
        return Err(ExtractError::TooDeep { level: i, need: 2 * k });
    }
    let l = 2 * k - 2 * depth;

    let path = match path_between_parts(theta, &w_part, &z_part, l)? {
        PartsOutcome::Path(p) => p,
        PartsOutcome::Bipartition => {
            return Err(ExtractError::Internal(
                "theta split into independent parts along the escape tree".into(),
            ))
        }
    };
    let w_end = path[0];
    let z_end = *path.last().unwrap();
    // the path has even length and the levels alternate, so it ends on level i
    let zi = y_set.iter().position(|&y| y == z_end).ok_or_else(|| {
        ExtractError::Internal(format!("path endpoint {} left level {}", z_end, i))
    })?;
    let wi = y_set.iter().position(|&y| y == w_end).expect("the path starts inside W");

    let zp = &down[zi];
    let wp = &down[wi];
    let mut cycle = path;
    cycle.extend(zp[ell..i].iter().rev());
    cycle.extend(wp[ell + 1..i].iter().copied());
    let cert = CycleCert { vertices: cycle };
    verify_cycle(g, &cert, 2 * k)
        .map_err(|e| ExtractError::Internal(format!("assembled cycle fails: {}", e)))?;
    Ok(cert)
}

/// `80 sqrt(k log k) n^(1 + 1/k) + 10 k^2 n`.
pub fn bound(n: usize, k: usize) -> f64 {
    let kf = k as f64;
    let nf = n as f64;
    80.0 * (kf * kf.ln()).sqrt() * nf.powf(1.0 + 1.0 / kf) + 10.0 * kf * kf * nf
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub value: f64,
    pub within: bool,
}

pub fn audit_bound(g: &Graph, k: usize) -> BoundReport {
    let value = bound(g.n(), k);
    BoundReport { n: g.n(), k, edges: g.m(), value, within: (g.m() as f64) <= value }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelHit {
    pub level: usize,
    pub route: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub result: String,
    pub cycle: Option<Vec<usize>>,
    pub level_hits: Vec<LevelHit>,
    pub growth_audit: Option<GrowthAudit>,
    pub bound: BoundReport,
}

pub struct PipelineOutcome {
    pub cycle: Option<CycleCert>,
    pub report: PipelineReport,
}

fn outcome(
    cycle: Option<CycleCert>,
    level_hits: Vec<LevelHit>,
    growth_audit: Option<GrowthAudit>,
    bound: BoundReport,
) -> PipelineOutcome {
    let report = PipelineReport {
        result: if cycle.is_some() { "found" } else { "none" }.into(),
        cycle: cycle.as_ref().map(|c| c.vertices.clone()),
        level_hits,
        growth_audit,
        bound,
    };
    PipelineOutcome { cycle, report }
}

/// Hosts this small get one direct exact search before any exploration;
/// it also covers cycles a bipartite half would lose.
const DIRECT_GLOBAL_CAP: usize = 32;
const DIRECT_GLOBAL_LEN: usize = 8;

/// Level-pair subgraphs up to this size use the exhaustive theta finder.
const PAIR_EXHAUSTIVE_CAP: usize = 24;

fn pair_theta(sub: &Graph, k: usize) -> Option<ThetaGraph> {
    if sub.n() <= PAIR_EXHAUSTIVE_CAP {
        find_theta_exhaustive(sub, k)
    } else if k >= 3 {
        find_theta_avg_degree(sub, k).ok()
    } else {
        None
    }
}

fn lift_theta(sub: &InducedSubgraph, t: &ThetaGraph) -> ThetaGraph {
    ThetaGraph {
        cycle: sub.map_to_parent(&t.cycle),
        chord: (sub.parent_id(t.chord.0), sub.parent_id(t.chord.1)),
    }
}

fn merged(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u
}

/// Searches `g` for a cycle on exactly `2k` vertices. `d` scales the
/// exploration cap (default 1); `root` is a starting hint, used when it
/// survives the trimming. A returned certificate is always verified against
/// `g` itself; `None` means no route found a cycle, not that none exists.
pub fn find_even_cycle(
    g: &Graph,
    k: usize,
    d: Option<usize>,
    root: Option<usize>,
) -> PipelineOutcome {
    assert!(k >= 2, "need k >= 2");
    let bound_report = audit_bound(g, k);
    let mut hits: Vec<LevelHit> = Vec::new();

    if g.n() <= DIRECT_GLOBAL_CAP && 2 * k <= DIRECT_GLOBAL_LEN && g.m() > 0 {
        if let Some(cert) = contains_cycle(g, 2 * k) {
            verify_cycle(g, &cert, 2 * k).expect("the exact finder returns valid cycles");
            hits.push(LevelHit { level: 0, route: "direct-global".into() });
            return outcome(Some(cert), hits, None, bound_report);
        }
    }
    if g.m() == 0 {
        return outcome(None, hits, None, bound_report);
    }

    let (_, half) = bipartite_half(g);
    if half.m() == 0 {
        return outcome(None, hits, None, bound_report);
    }
    // a subgraph of minimum degree at least half the average always survives
    let delta_core = (half.m() + half.n() - 1) / half.n();
    let core = min_degree_core(&half, delta_core.max(1));
    debug_assert!(core.graph.n() > 0, "trimming below half the average keeps something");
    if core.graph.n() == 0 {
        return outcome(None, hits, None, bound_report);
    }
    let d = d.unwrap_or(1);
    let root_local =
        root.and_then(|r| core.parent_ids().binary_search(&r).ok()).unwrap_or(0);
    let ex = explore(&core.graph, root_local, &ExploreParams::new(k, d), k.max(2));
    let audit = audit_growth(&core.graph, &ex, k, d);

    for i in 1..ex.levels.len() {
        let prev = ex.chosen(i - 1);
        let cur = ex.chosen(i);
        if cur.is_empty() {
            break;
        }

        let pair = core.graph.induced(&merged(prev, cur));
        if let Some(c) = contains_cycle(&pair.graph, 2 * k) {
            let cert = CycleCert { vertices: core.map_to_parent(&pair.map_to_parent(&c.vertices)) };
            if verify_cycle(g, &cert, 2 * k).is_ok() {
                hits.push(LevelHit { level: i - 1, route: "cycle-pair".into() });
                return outcome(Some(cert), hits, Some(audit), bound_report);
            }
        }
        if i >= 2 {
            if let Some(t) = pair_theta(&pair.graph, k) {
                let cert = LevelCert::Pair { theta: lift_theta(&pair, &t), level: i - 1 };
                if let Ok(c) = extract_cycle(&core.graph, &ex, &cert, k) {
                    let cert = CycleCert { vertices: core.map_to_parent(&c.vertices) };
                    if verify_cycle(g, &cert, 2 * k).is_ok() {
                        hits.push(LevelHit { level: i - 1, route: "theta-pair".into() });
                        return outcome(Some(cert), hits, Some(audit), bound_report);
                    }
                }
            }
        }

        if i + 1 >= ex.levels.len() || ex.chosen(i + 1).is_empty() {
            continue;
        }
        let next = ex.chosen(i + 1);
        let triple = core.graph.induced(&merged(&merged(prev, cur), next));
        if let Some(c) = contains_cycle(&triple.graph, 2 * k) {
            let cert =
                CycleCert { vertices: core.map_to_parent(&triple.map_to_parent(&c.vertices)) };
            if verify_cycle(g, &cert, 2 * k).is_ok() {
                hits.push(LevelHit { level: i, route: "cycle-triple".into() });
                return outcome(Some(cert), hits, Some(audit), bound_report);
            }
        }
        let tri = match Trilayered::new(
            core.graph.clone(),
            prev.to_vec(),
            cur.to_vec(),
            next.to_vec(),
        ) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let found = if tri.vertex_count() <= WELL_PLACED_EXHAUSTIVE_CAP {
            find_well_placed_exhaustive(&tri, k)
                .map(|cert| (LevelCert::WellPlaced { cert, level: i }, "well-placed"))
        } else {
            let p = PruneParams::new(k, d, 1);
            if check_density_gates(&tri, &p).is_ok() {
                match trilayered_dichotomy(&tri, &p) {
                    Ok(DichotomyOutcome::Theta { theta, .. }) => {
                        Some((LevelCert::Pair { theta, level: i - 1 }, "dichotomy-theta"))
                    }
                    Ok(DichotomyOutcome::WellPlaced { cert, .. }) => {
                        Some((LevelCert::WellPlaced { cert, level: i }, "dichotomy-well-placed"))
                    }
                    Err(_) => None,
                }
            } else {
                None
            }
        };
        if let Some((cert, route)) = found {
            if let Ok(c) = extract_cycle(&core.graph, &ex, &cert, k) {
                let cert = CycleCert { vertices: core.map_to_parent(&c.vertices) };
                if verify_cycle(g, &cert, 2 * k).is_ok() {
                    hits.push(LevelHit { level: i, route: route.into() });
                    return outcome(Some(cert), hits, Some(audit), bound_report);
                }
            }
        }
    }
    outcome(None, hits, Some(audit), bound_report)
}
