//! Bounded shortest-path distances: exact hop counts up to a threshold Δ,
//! everything farther collapsed to `Beyond`.
//!
//! Classification only ever consumes distances at or below the gap threshold,
//! so instead of a full n×n distance matrix the cache runs one breadth-first
//! search per queried source, truncated at depth Δ, and memoizes the result.
//! After a warm-up pass for every source a workload will touch, the cache is
//! read-only and safe to query from many threads without synchronization.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{ColoredGraph, NodeId};

/// Exact hop distance when ≤ Δ; `Beyond` means strictly greater than Δ or
/// disconnected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundedDistance {
    Within(u32),
    Beyond,
}

impl BoundedDistance {
    #[inline]
    pub fn is_adjacent(self) -> bool {
        self == BoundedDistance::Within(1)
    }

    /// The hop count, when within the bound.
    pub fn hops(self) -> Option<u32> {
        match self {
            BoundedDistance::Within(d) => Some(d),
            BoundedDistance::Beyond => None,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DistanceError {
    #[error("invalid node id {0} for a graph with {1} nodes")]
    InvalidNode(u32, usize),
    #[error("distance table for source {0} not warmed; warm() every seed node before querying")]
    NotWarmed(u32),
    #[error("gap threshold must be in 1..={max}, got {0}", max = MAX_DELTA)]
    InvalidDelta(u32),
}

// Distances are stored as u8 per node with this sentinel for "beyond Δ or
// unreached", which caps Δ at 254.
const UNREACHED: u8 = u8::MAX;
const MAX_DELTA: u32 = (UNREACHED - 1) as u32;

/// Memoized truncated-BFS distance tables over one graph.
pub struct DistanceCache<'g> {
    graph: &'g ColoredGraph,
    delta: u32,
    tables: Vec<Option<Box<[u8]>>>,
}

impl<'g> DistanceCache<'g> {
    pub fn new(graph: &'g ColoredGraph, delta: u32) -> Result<Self, DistanceError> {
        if delta == 0 || delta > MAX_DELTA {
            return Err(DistanceError::InvalidDelta(delta));
        }
        Ok(DistanceCache {
            graph,
            delta,
            tables: vec![None; graph.node_count()],
        })
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn graph(&self) -> &'g ColoredGraph {
        self.graph
    }

    fn check_node(&self, v: NodeId) -> Result<(), DistanceError> {
        if v.index() >= self.graph.node_count() {
            return Err(DistanceError::InvalidNode(v.0, self.graph.node_count()));
        }
        Ok(())
    }

    /// Precomputes the BFS table for every listed source. Must cover every
    /// node a concurrent workload will query; duplicates are cheap no-ops.
    pub fn warm<I>(&mut self, sources: I) -> Result<(), DistanceError>
    where
        I: IntoIterator<Item = NodeId>,
    {
        for src in sources {
            self.check_node(src)?;
            if self.tables[src.index()].is_none() {
                self.tables[src.index()] = Some(bfs_table(self.graph, src, self.delta));
            }
        }
        Ok(())
    }

    pub fn warm_all(&mut self) {
        let n = self.graph.node_count();
        self.warm((0..n).map(|i| NodeId(i as u32)))
            .expect("all ids in range");
    }

    /// Exact hop distance between `u` and `v` if ≤ Δ, else `Beyond`.
    /// Symmetric in (u, v); served from the table of the lower id, which must
    /// have been warmed.
    pub fn bounded_distance(&self, u: NodeId, v: NodeId) -> Result<BoundedDistance, DistanceError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Ok(BoundedDistance::Within(0));
        }
        let (src, dst) = (u.min(v), u.max(v));
        let table = self.tables[src.index()]
            .as_ref()
            .ok_or(DistanceError::NotWarmed(src.0))?;
        Ok(match table[dst.index()] {
            UNREACHED => BoundedDistance::Beyond,
            d => BoundedDistance::Within(d as u32),
        })
    }

    /// Single-threaded convenience: warms the needed table on demand.
    pub fn bounded_distance_lazy(
        &mut self,
        u: NodeId,
        v: NodeId,
    ) -> Result<BoundedDistance, DistanceError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u != v {
            self.warm([u.min(v)])?;
        }
        self.bounded_distance(u, v)
    }
}

/// BFS from `source` truncated at depth `delta`; unreached nodes keep the
/// sentinel.
fn bfs_table(graph: &ColoredGraph, source: NodeId, delta: u32) -> Box<[u8]> {
    let mut dist = vec![UNREACHED; graph.node_count()].into_boxed_slice();
    dist[source.index()] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let d = dist[u.index()];
        if d as u32 == delta {
            continue;
        }
        for &v in graph.neighbors(u) {
            if dist[v.index()] == UNREACHED {
                dist[v.index()] = d + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_er_colored, parse_colored_graph, GraphSpec};

    fn path3() -> ColoredGraph {
        parse_colored_graph("a b\nb c", "a x\nb x\nc x").unwrap()
    }

    #[test]
    fn distance_to_self_is_zero() {
        let g = path3();
        let cache = DistanceCache::new(&g, 2).unwrap();
        // No warm-up needed for the identity case.
        assert_eq!(
            cache.bounded_distance(NodeId(0), NodeId(0)).unwrap(),
            BoundedDistance::Within(0)
        );
    }

    #[test]
    fn path_endpoints_at_distance_two() {
        let g = path3();
        let a = g.node_id("a").unwrap();
        let c = g.node_id("c").unwrap();
        let mut cache = DistanceCache::new(&g, 2).unwrap();
        cache.warm([a]).unwrap();
        assert_eq!(
            cache.bounded_distance(a, c).unwrap(),
            BoundedDistance::Within(2)
        );
    }

    #[test]
    fn beyond_when_over_threshold_or_disconnected() {
        let g = parse_colored_graph("a b\nb c\nc d", "a x\nb x\nc x\nd x\ne x").unwrap();
        let mut cache = DistanceCache::new(&g, 2).unwrap();
        cache.warm_all();
        let id = |l: &str| g.node_id(l).unwrap();
        assert_eq!(
            cache.bounded_distance(id("a"), id("d")).unwrap(),
            BoundedDistance::Beyond
        );
        assert_eq!(
            cache.bounded_distance(id("a"), id("e")).unwrap(),
            BoundedDistance::Beyond
        );
    }

    #[test]
    fn unwarmed_query_is_a_contract_error() {
        let g = path3();
        let cache = DistanceCache::new(&g, 2).unwrap();
        assert_eq!(
            cache.bounded_distance(NodeId(0), NodeId(2)).unwrap_err(),
            DistanceError::NotWarmed(0)
        );
    }

    #[test]
    fn invalid_node_and_delta_are_rejected() {
        let g = path3();
        assert_eq!(
            DistanceCache::new(&g, 0).unwrap_err(),
            DistanceError::InvalidDelta(0)
        );
        let cache = DistanceCache::new(&g, 1).unwrap();
        assert_eq!(
            cache.bounded_distance(NodeId(0), NodeId(9)).unwrap_err(),
            DistanceError::InvalidNode(9, 3)
        );
    }

    #[test]
    fn lazy_queries_match_warmed_queries() {
        let g = generate_er_colored(&GraphSpec {
            nodes: 30,
            edges: 45,
            num_colors: 2,
            rng_seed: 3,
        })
        .unwrap();
        let mut lazy = DistanceCache::new(&g, 3).unwrap();
        let mut warmed = DistanceCache::new(&g, 3).unwrap();
        warmed.warm_all();
        for u in 0..30u32 {
            for v in 0..30u32 {
                let (u, v) = (NodeId(u), NodeId(v));
                assert_eq!(
                    lazy.bounded_distance_lazy(u, v).unwrap(),
                    warmed.bounded_distance(u, v).unwrap()
                );
            }
        }
    }

    /// Reference all-pairs shortest paths (Floyd–Warshall), independent of
    /// the BFS path under test.
    fn floyd_warshall(g: &ColoredGraph) -> Vec<Vec<u32>> {
        const INF: u32 = u32::MAX / 4;
        let n = g.node_count();
        let mut d = vec![vec![INF; n]; n];
        for v in 0..n {
            d[v][v] = 0;
        }
        for (u, v) in g.edges() {
            d[u.index()][v.index()] = 1;
            d[v.index()][u.index()] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        d
    }

    #[test]
    fn agrees_with_floyd_warshall_capped_at_delta() {
        let g = generate_er_colored(&GraphSpec {
            nodes: 50,
            edges: 100,
            num_colors: 2,
            rng_seed: 42,
        })
        .unwrap();
        let oracle = floyd_warshall(&g);
        let delta = 4;
        let mut cache = DistanceCache::new(&g, delta).unwrap();
        cache.warm_all();
        for u in 0..50u32 {
            for v in 0..50u32 {
                let got = cache.bounded_distance(NodeId(u), NodeId(v)).unwrap();
                let expect = oracle[u as usize][v as usize];
                match got {
                    BoundedDistance::Within(d) => assert_eq!(d, expect, "pair {u} {v}"),
                    BoundedDistance::Beyond => assert!(expect > delta, "pair {u} {v}"),
                }
            }
        }
    }

    #[test]
    fn symmetric_and_triangle_consistent() {
        let g = generate_er_colored(&GraphSpec {
            nodes: 30,
            edges: 60,
            num_colors: 2,
            rng_seed: 8,
        })
        .unwrap();
        let delta = 4;
        let mut cache = DistanceCache::new(&g, delta).unwrap();
        cache.warm_all();
        let d = |u: u32, v: u32| cache.bounded_distance(NodeId(u), NodeId(v)).unwrap();
        for u in 0..30 {
            for v in 0..30 {
                assert_eq!(d(u, v), d(v, u));
            }
        }
        for u in 0..30 {
            for v in 0..30 {
                for w in 0..30 {
                    if let (Some(duv), Some(dvw)) = (d(u, v).hops(), d(v, w).hops()) {
                        if duv + dvw <= delta {
                            let duw = d(u, w)
                                .hops()
                                .expect("two-leg path within delta forces a finite distance");
                            assert!(duw <= duv + dvw, "triangle violated at {u} {v} {w}");
                        }
                    }
                }
            }
        }
    }
}
