use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

/// Strongly connected components with their internal edge counts.
pub(crate) struct Component {
    pub nodes: Vec<usize>,
    pub edges: usize,
}

impl Component {
    /// Trivial (no internal edge) or a single simple cycle.
    pub fn is_sparse(&self) -> bool {
        self.edges <= self.nodes.len()
    }
}

pub(crate) fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Component> {
    let mut g = DiGraph::<(), ()>::with_capacity(n, edges.len());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for &(a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    let mut comp_of = vec![0; n];
    let sccs = tarjan_scc(&g);
    for (c, scc) in sccs.iter().enumerate() {
        for v in scc {
            comp_of[v.index()] = c;
        }
    }
    let mut out: Vec<Component> = sccs
        .iter()
        .map(|scc| Component {
            nodes: scc.iter().map(|v| v.index()).collect(),
            edges: 0,
        })
        .collect();
    for &(a, b) in edges {
        if comp_of[a] == comp_of[b] {
            out[comp_of[a]].edges += 1;
        }
    }
    out
}

/// Certified bracket `[lo, hi]` on the spectral radius of an irreducible
/// 0/1-multigraph given by local edges over `0..n`.
///
/// Power iteration runs on `A + I`, which is primitive, and stops once the
/// Collatz–Wielandt row-ratio bounds are within `target` of each other.
pub(crate) fn perron_bounds(n: usize, edges: &[(usize, usize)], target: f64) -> (f64, f64, usize) {
    let mut v = vec![1.0f64; n];
    let mut lo = 0.0;
    let mut hi = f64::INFINITY;
    let max_iter = 200_000usize;
    let mut iterations = 0;
    let out_degree_max = {
        let mut d = vec![0usize; n];
        for &(a, _) in edges {
            d[a] += 1;
        }
        d.into_iter().max().unwrap_or(0) + 1
    };
    // each row sum has at most `out_degree_max` terms
    let slack = 4.0 * f64::EPSILON * out_degree_max as f64;
    while iterations < max_iter {
        iterations += 1;
        let mut w = v.clone();
        for &(a, b) in edges {
            w[a] += v[b];
        }
        let (mut rlo, mut rhi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = w[i] / v[i];
            rlo = rlo.min(r);
            rhi = rhi.max(r);
        }
        lo = f64::max(lo, rlo * (1.0 - slack));
        hi = f64::min(hi, rhi * (1.0 + slack));
        if hi - lo <= target {
            break;
        }
        let m = w.iter().cloned().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / m).collect();
        if v.iter().any(|&x| x < 1e-280) {
            break;
        }
    }
    (lo - 1.0, hi - 1.0, iterations)
}
