//! The triangular Dehn-Sommerville digraph and vertex-disjoint routings on it.
//!
//! Coordinates: with `r = ⌊d/2⌋ + 1` sources, the graph has `r` columns. The
//! column at `x = r − 1 − k` (for `k = 0..r`) holds the nodes `(x, y)` with
//! `k ≤ y ≤ d − k`. Horizontal edges point east, vertical edges point north.
//! Source `k + 1` is the bottom node `(r − 1 − k, k)` of its column, i.e. `k`
//! diagonal steps north-west of sink 1. Sink `j` is `(r − 1, j − 1)` on the
//! east column, so source 1 and sink 1 are the same node.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::face::g_len;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoutingError {
    #[error("expected {expected} sinks, got {actual}")]
    BadCardinality { expected: usize, actual: usize },
    #[error("sink set {0:?} must be strictly increasing within 1..={1}")]
    BadSinks(Vec<usize>, usize),
}

pub type Node = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsGraph {
    d: usize,
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
    out_edges: Vec<Vec<usize>>,
}

impl DsGraph {
    pub fn new(d: usize) -> Self {
        let r = g_len(d);
        let mut nodes = Vec::new();
        for k in 0..r {
            for y in k..=d - k {
                nodes.push((r - 1 - k, y));
            }
        }
        nodes.sort_by_key(|&(x, y)| (x + y, x));
        let index: HashMap<Node, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let out_edges = nodes
            .iter()
            .map(|&(x, y)| {
                [(x + 1, y), (x, y + 1)]
                    .into_iter()
                    .filter_map(|n| index.get(&n).copied())
                    .collect()
            })
            .collect();
        Self {
            d,
            nodes,
            index,
            out_edges,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn source_count(&self) -> usize {
        g_len(self.d)
    }

    pub fn sink_count(&self) -> usize {
        self.d + 1
    }

    /// Nodes ordered so that every edge goes forward.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        self.out_edges
            .iter()
            .enumerate()
            .flat_map(move |(u, outs)| outs.iter().map(move |&v| (self.nodes[u], self.nodes[v])))
    }

    pub fn has_edge(&self, from: Node, to: Node) -> bool {
        match (self.index.get(&from), self.index.get(&to)) {
            (Some(&u), Some(&v)) => self.out_edges[u].contains(&v),
            _ => false,
        }
    }

    pub fn successors(&self, n: Node) -> impl Iterator<Item = Node> + '_ {
        let u = self.index[&n];
        self.out_edges[u].iter().map(|&v| self.nodes[v])
    }

    /// Node of source `s ∈ 1..=r`.
    pub fn source(&self, s: usize) -> Node {
        let r = self.source_count();
        (r - s, s - 1)
    }

    /// Node of sink `j ∈ 1..=d+1`.
    pub fn sink(&self, j: usize) -> Node {
        (self.source_count() - 1, j - 1)
    }

    /// Sink label of `n`, if it lies on the east column.
    pub fn sink_label(&self, n: Node) -> Option<usize> {
        (n.0 == self.source_count() - 1).then_some(n.1 + 1)
    }

    fn check_sinks(&self, sinks: &[usize]) -> Result<(), RoutingError> {
        let r = self.source_count();
        if sinks.len() != r {
            return Err(RoutingError::BadCardinality {
                expected: r,
                actual: sinks.len(),
            });
        }
        let increasing = sinks.windows(2).all(|w| w[0] < w[1]);
        if !increasing || sinks.iter().any(|&j| j == 0 || j > self.sink_count()) {
            return Err(RoutingError::BadSinks(sinks.to_vec(), self.sink_count()));
        }
        Ok(())
    }

    /// Maximum number of vertex-disjoint paths from the sources to distinct sinks in `sinks`.
    pub fn max_disjoint_paths(&self, sinks: &[usize]) -> usize {
        self.flow(sinks).0
    }

    /// A vertex-disjoint routing from all sources onto exactly `sinks`, if one exists.
    pub fn routing(&self, sinks: &[usize]) -> Result<Option<Routing>, RoutingError> {
        self.check_sinks(sinks)?;
        let (value, net) = self.flow(sinks);
        if value < self.source_count() {
            return Ok(None);
        }
        let routing = self.extract_paths(&net, sinks);
        assert!(
            routing.verify(self, sinks),
            "flow decomposition produced an invalid routing"
        );
        Ok(Some(routing))
    }

    pub fn routing_exists(&self, sinks: &[usize]) -> Result<bool, RoutingError> {
        self.check_sinks(sinks)?;
        Ok(self.max_disjoint_paths(sinks) == self.source_count())
    }

    // Node splitting: node i becomes in = 2i, out = 2i + 1 joined by a unit edge.
    fn flow(&self, sinks: &[usize]) -> (usize, FlowNet) {
        let n = self.nodes.len();
        let (s, t) = (2 * n, 2 * n + 1);
        let mut net = FlowNet::new(2 * n + 2);
        for (i, outs) in self.out_edges.iter().enumerate() {
            net.add_edge(2 * i, 2 * i + 1);
            for &j in outs {
                net.add_edge(2 * i + 1, 2 * j);
            }
        }
        for src in 1..=self.source_count() {
            net.add_edge(s, 2 * self.index[&self.source(src)]);
        }
        for &j in sinks {
            if let Some(&i) = self.index.get(&self.sink(j)) {
                net.add_edge(2 * i + 1, t);
            }
        }
        let value = net.max_flow(s, t);
        (value, net)
    }

    fn extract_paths(&self, net: &FlowNet, sinks: &[usize]) -> Routing {
        let n = self.nodes.len();
        let t = 2 * n + 1;
        let paths = (1..=self.source_count())
            .map(|src| {
                let mut cur = self.index[&self.source(src)];
                let mut nodes = vec![self.nodes[cur]];
                loop {
                    let out = 2 * cur + 1;
                    let next = net.used_targets(out).next().expect("unit of flow continues");
                    if next == t {
                        break;
                    }
                    cur = next / 2;
                    nodes.push(self.nodes[cur]);
                }
                let sink = self
                    .sink_label(*nodes.last().unwrap())
                    .expect("path ends on the east column");
                debug_assert!(sinks.contains(&sink));
                RoutedPath {
                    source: src,
                    sink,
                    nodes,
                }
            })
            .collect();
        Routing { paths }
    }

    /// Path counts with unit edge weights: entry `(i, j)` is the number of
    /// directed paths from source `i + 1` to sink `j + 1`.
    pub fn unit_path_matrix(&self) -> Matrix<BigInt> {
        let r = self.source_count();
        let mut data = Vec::with_capacity(r * (self.d + 1));
        for src in 1..=r {
            let mut count = vec![BigInt::zero(); self.nodes.len()];
            count[self.index[&self.source(src)]] = BigInt::from(1);
            for u in 0..self.nodes.len() {
                if count[u].is_zero() {
                    continue;
                }
                for &v in &self.out_edges[u] {
                    count[v] = &count[v] + &count[u];
                }
            }
            for j in 1..=self.d + 1 {
                data.push(count[self.index[&self.sink(j)]].clone());
            }
        }
        Matrix::new(r, self.d + 1, data).expect("shape matches data")
    }

    /// Plain-text drawing of the graph with an optional routing highlighted.
    ///
    /// Nodes are `o`, nodes on the routing `@`; edges used by the routing are
    /// drawn `====` and `H`, unused ones `----` and `|`. Sinks are labelled on
    /// the right (`*` marks a routed sink), sources on the left as `[s]`.
    pub fn render(&self, routing: Option<&Routing>) -> String {
        let r = self.source_count();
        let paths = routing.iter().flat_map(|rt| rt.paths.iter());
        let used_nodes: HashSet<Node> = paths.clone().flat_map(|p| p.nodes.iter().copied()).collect();
        let used_edges: HashSet<(Node, Node)> = paths
            .clone()
            .flat_map(|p| p.nodes.windows(2).map(|w| (w[0], w[1])))
            .collect();
        let routed_sinks: HashSet<usize> = paths.map(|p| p.sink).collect();

        let mut out = String::new();
        for y in (0..=self.d).rev() {
            let mut line = String::new();
            let mut below = String::new();
            for x in 0..r {
                let node = (x, y);
                if !self.index.contains_key(&node) {
                    line.push_str("     ");
                    below.push_str("     ");
                    continue;
                }
                let west = (x.wrapping_sub(1), y);
                if x > 0 && self.has_edge(west, node) {
                    line.push_str(if used_edges.contains(&(west, node)) {
                        "===="
                    } else {
                        "----"
                    });
                } else if y + 1 == r - x {
                    // bottom of column k = r - 1 - x is source k + 1
                    line.push_str(&format!("{:>4}", format!("[{}]", r - x)));
                } else {
                    line.push_str("    ");
                }
                line.push(if used_nodes.contains(&node) { '@' } else { 'o' });
                let south = (x, y.wrapping_sub(1));
                below.push_str("    ");
                below.push(if y > 0 && used_edges.contains(&(south, node)) {
                    'H'
                } else if y > 0 && self.has_edge(south, node) {
                    '|'
                } else {
                    ' '
                });
            }
            let mark = if routed_sinks.contains(&(y + 1)) { "*" } else { "" };
            let _ = writeln!(out, "{}  {}{}", line.trim_end(), y + 1, mark);
            if !below.trim().is_empty() {
                let _ = writeln!(out, "{}", below.trim_end());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutedPath {
    pub source: usize,
    pub sink: usize,
    pub nodes: Vec<Node>,
}

/// One directed path per source, pairwise vertex-disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Routing {
    pub paths: Vec<RoutedPath>,
}

impl Routing {
    /// Sinks reached, sorted.
    pub fn sinks(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.paths.iter().map(|p| p.sink).collect();
        s.sort_unstable();
        s
    }

    /// Checks that every source has a path along graph edges ending at its
    /// sink, that the sinks are exactly `sinks`, and that no two paths share a vertex.
    pub fn verify(&self, g: &DsGraph, sinks: &[usize]) -> bool {
        let sources_ok =
            self.paths.len() == g.source_count() && self.paths.iter().enumerate().all(|(i, p)| p.source == i + 1);
        let paths_ok = self.paths.iter().all(|p| {
            p.nodes.first() == Some(&g.source(p.source))
                && p.nodes.last() == Some(&g.sink(p.sink))
                && p.nodes.windows(2).all(|w| g.has_edge(w[0], w[1]))
        });
        let mut seen = HashSet::new();
        let disjoint = self.paths.iter().flat_map(|p| p.nodes.iter()).all(|n| seen.insert(*n));
        sources_ok && paths_ok && disjoint && self.sinks() == sinks
    }
}

/// The closed-form basis test. For even `d`: `b₁ = 1` and `b_i ≤ 2i − 1`.
/// For odd `d`: `{1} ∪ {b_i + 1}` passes the test for `d + 1`, i.e. `b_i ≤ 2i`.
pub fn ds_basis_predicate(b: &[usize], d: usize) -> Result<bool, RoutingError> {
    let r = g_len(d);
    if b.len() != r {
        return Err(RoutingError::BadCardinality {
            expected: r,
            actual: b.len(),
        });
    }
    if !b.windows(2).all(|w| w[0] < w[1]) || b.iter().any(|&x| x == 0 || x > d + 1) {
        return Err(RoutingError::BadSinks(b.to_vec(), d + 1));
    }
    if d.is_multiple_of(2) {
        Ok(b.iter().enumerate().all(|(i, &x)| x <= 2 * i + 1))
    } else {
        let lifted: Vec<usize> = std::iter::once(1).chain(b.iter().map(|x| x + 1)).collect();
        ds_basis_predicate(&lifted, d + 1)
    }
}

/// Edmonds-Karp on unit capacities.
#[derive(Debug, Clone)]
struct FlowNet {
    // (to, residual capacity, index of reverse edge, is_forward)
    adj: Vec<Vec<(usize, u8, usize, bool)>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        let (ru, rv) = (self.adj[v].len(), self.adj[u].len());
        self.adj[u].push((v, 1, ru, true));
        self.adj[v].push((u, 0, rv, false));
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        loop {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    reached = true;
                    break;
                }
                for (ei, &(v, cap, _, _)) in self.adj[u].iter().enumerate() {
                    if cap > 0 && v != s && prev[v].is_none() {
                        prev[v] = Some((u, ei));
                        queue.push_back(v);
                    }
                }
            }
            if !reached {
                return total;
            }
            let mut v = t;
            while let Some((u, ei)) = prev[v] {
                let (_, _, rev, _) = self.adj[u][ei];
                self.adj[u][ei].1 -= 1;
                self.adj[v][rev].1 += 1;
                v = u;
            }
            total += 1;
        }
    }

    /// Heads of saturated forward edges leaving `u`.
    fn used_targets(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().filter(|e| e.3 && e.1 == 0).map(|e| e.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::ds_matrix;
    use crate::linalg::for_each_subset;

    /// Test oracle: counts vertex-disjoint path systems from all sources onto
    /// exactly `sinks` by exhaustive backtracking.
    fn count_routings(g: &DsGraph, sinks: &[usize]) -> u64 {
        fn extend(
            g: &DsGraph,
            sinks: &[usize],
            src: usize,
            cur: Node,
            used: &mut HashSet<Node>,
            claimed: &mut Vec<usize>,
        ) -> u64 {
            let mut total = 0;
            if let Some(j) = g.sink_label(cur) {
                if sinks.contains(&j) && !claimed.contains(&j) {
                    claimed.push(j);
                    total += route(g, sinks, src + 1, used, claimed);
                    claimed.pop();
                }
            }
            let next: Vec<Node> = g.successors(cur).collect();
            for n in next {
                if used.insert(n) {
                    total += extend(g, sinks, src, n, used, claimed);
                    used.remove(&n);
                }
            }
            total
        }
        fn route(g: &DsGraph, sinks: &[usize], src: usize, used: &mut HashSet<Node>, claimed: &mut Vec<usize>) -> u64 {
            if src > g.source_count() {
                return 1;
            }
            let start = g.source(src);
            if !used.insert(start) {
                return 0;
            }
            let total = extend(g, sinks, src, start, used, claimed);
            used.remove(&start);
            total
        }
        route(g, sinks, 1, &mut HashSet::new(), &mut Vec::new())
    }

    fn all_sink_sets(d: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for_each_subset(d + 1, g_len(d), |s| out.push(s.iter().map(|i| i + 1).collect()));
        out
    }

    #[test]
    fn graph_shapes() {
        let g = DsGraph::new(4);
        assert_eq!((g.source_count(), g.sink_count()), (3, 5));
        assert_eq!(g.source(1), g.sink(1));
        assert_eq!(g.nodes().len(), 5 + 3 + 1);

        let g = DsGraph::new(10);
        assert_eq!((g.source_count(), g.sink_count()), (6, 11));

        let g = DsGraph::new(1);
        assert_eq!((g.source_count(), g.sink_count()), (1, 2));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![((0, 0), (0, 1))]);
    }

    #[test]
    fn ds10_edge_counts() {
        // DS_10: 11 sink-column edges, 14 more vertical, 20 horizontal.
        let g = DsGraph::new(10);
        let horizontal = g.edges().filter(|(a, b)| a.1 == b.1).count();
        let vertical = g.edges().filter(|(a, b)| a.0 == b.0).count();
        assert_eq!((horizontal, vertical), (25, 10 + 8 + 6 + 4 + 2));
        // DS_9: columns of heights 10, 8, 6, 4, 2 nodes.
        let g = DsGraph::new(9);
        assert_eq!(g.nodes().len(), 10 + 8 + 6 + 4 + 2);
        assert_eq!(g.edges().filter(|(a, b)| a.0 == b.0).count(), 9 + 7 + 5 + 3 + 1);
    }

    #[test]
    fn sources_leave_their_column() {
        for d in 1..=12 {
            let g = DsGraph::new(d);
            for s in 1..=g.source_count() {
                assert!(g.successors(g.source(s)).count() >= 1, "d={d} s={s}");
            }
            if d % 2 == 0 {
                // the top source of an even graph can only go east
                let top = g.source(g.source_count());
                assert_eq!(g.successors(top).collect::<Vec<_>>(), vec![(top.0 + 1, top.1)]);
            }
        }
    }

    #[test]
    fn staircase_reachability() {
        // Source s reaches exactly the sinks s..=d+1.
        for d in 1..=10 {
            let g = DsGraph::new(d);
            for s in 1..=g.source_count() {
                let mut seen = HashSet::from([g.source(s)]);
                let mut stack = vec![g.source(s)];
                while let Some(n) = stack.pop() {
                    for m in g.successors(n) {
                        if seen.insert(m) {
                            stack.push(m);
                        }
                    }
                }
                for j in 1..=d + 1 {
                    let reachable = seen.contains(&g.sink(j));
                    assert_eq!(reachable, j >= s, "d={d} s={s} j={j}");
                }
            }
        }
    }

    #[test]
    fn routing_examples() {
        let g = DsGraph::new(4);
        let rt = g.routing(&[1, 3, 5]).unwrap().unwrap();
        assert!(rt.verify(&g, &[1, 3, 5]));
        assert_eq!(g.routing_exists(&[1, 4, 5]), Ok(false));
        assert_eq!(
            g.routing_exists(&[1, 2]),
            Err(RoutingError::BadCardinality { expected: 3, actual: 2 })
        );
        assert!(g.routing_exists(&[1, 6, 7]).is_err());
        let routed: Vec<Vec<usize>> = all_sink_sets(4)
            .into_iter()
            .filter(|s| g.routing_exists(s).unwrap())
            .collect();
        assert_eq!(
            routed,
            vec![
                vec![1, 2, 3],
                vec![1, 2, 4],
                vec![1, 2, 5],
                vec![1, 3, 4],
                vec![1, 3, 5]
            ]
        );
    }

    #[test]
    fn bottleneck_blocks_every_completion() {
        let g = DsGraph::new(10);
        for_each_subset(3, 2, |rest| {
            // completions (1,3,5,8,a,b) with 8 < a < b <= 11
            let sinks = vec![1, 3, 5, 8, 9 + rest[0], 9 + rest[1]];
            assert_eq!(g.routing_exists(&sinks), Ok(false), "{sinks:?}");
            assert!(g.max_disjoint_paths(&sinks) < 6);
        });
    }

    #[test]
    fn predicate_examples() {
        assert_eq!(ds_basis_predicate(&[1, 3, 5], 4), Ok(true));
        assert_eq!(ds_basis_predicate(&[1, 4, 5], 4), Ok(false));
        assert_eq!(ds_basis_predicate(&[2, 4], 3), Ok(true));
        assert_eq!(ds_basis_predicate(&[3, 4], 3), Ok(false));
        assert!(matches!(
            ds_basis_predicate(&[1, 2], 4),
            Err(RoutingError::BadCardinality { .. })
        ));
    }

    #[test]
    fn flow_agrees_with_backtracking_oracle() {
        for d in 1..=8 {
            let g = DsGraph::new(d);
            for s in all_sink_sets(d) {
                let exists = count_routings(&g, &s) > 0;
                assert_eq!(g.routing_exists(&s).unwrap(), exists, "d={d} {s:?}");
                if exists {
                    assert!(g.routing(&s).unwrap().unwrap().verify(&g, &s));
                }
            }
        }
    }

    #[test]
    fn unit_path_matrix_examples() {
        let pm = DsGraph::new(4).unit_path_matrix();
        assert_eq!(pm.get(0, 0), &BigInt::from(1));
        assert_eq!(pm.get(2, 0), &BigInt::from(0));
        let minor = |cols: &[usize]| pm.select_columns(cols).determinant().unwrap();
        assert!(minor(&[0, 2, 4]) > BigInt::zero());
        assert!(minor(&[0, 3, 4]).is_zero());
    }

    #[test]
    fn lgv_counts_routings() {
        // Planar network with compatible boundary order: each maximal minor of the
        // unit path matrix equals the number of routings onto its columns.
        for d in 1..=7 {
            let g = DsGraph::new(d);
            let pm = g.unit_path_matrix();
            for s in all_sink_sets(d) {
                let cols: Vec<usize> = s.iter().map(|j| j - 1).collect();
                let det = pm.select_columns(&cols).determinant().unwrap();
                assert_eq!(det, BigInt::from(count_routings(&g, &s)), "d={d} {s:?}");
            }
        }
    }

    #[test]
    fn lgv_support_matches_ds_minors() {
        for d in 1..=8 {
            let pm = DsGraph::new(d).unit_path_matrix();
            let m = ds_matrix::<BigInt>(d);
            for s in all_sink_sets(d) {
                let cols: Vec<usize> = s.iter().map(|j| j - 1).collect();
                let lgv = pm.select_columns(&cols).determinant().unwrap();
                let ds = m.select_columns(&cols).determinant().unwrap();
                assert!(lgv >= BigInt::zero());
                assert_eq!(lgv > BigInt::zero(), !ds.is_zero(), "d={d} {s:?}");
            }
        }
    }

    #[test]
    fn bottleneck_law() {
        for n in 1..=5 {
            let d = 2 * n;
            let g = DsGraph::new(d);
            for s in all_sink_sets(d) {
                if s.iter().enumerate().any(|(i, &b)| b >= 2 * (i + 1)) {
                    assert_eq!(g.routing_exists(&s), Ok(false), "d={d} {s:?}");
                }
            }
        }
    }

    #[test]
    fn render_is_deterministic() {
        let g = DsGraph::new(4);
        let rt = g.routing(&[1, 3, 5]).unwrap().unwrap();
        let a = g.render(Some(&rt));
        assert_eq!(a, g.render(Some(&rt)));
        assert!(a.contains("5*"));
        assert!(a.lines().any(|l| l.trim_start().starts_with("[3]")));
        assert!(!g.render(None).contains('@'));
    }
}
