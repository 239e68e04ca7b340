//! Graphs, graphic arrangements and the triangle count `Tri(G)`.

use std::fmt;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exactmath::Rational;
use crate::logder::{DegreeSequence, LogderError};
use crate::restriction::minimal_restriction;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge ({0}, {1}) appears twice")]
    Duplicate(usize, usize),
    #[error("vertex {vertex} outside 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
}

/// A simple graph on vertices `1..=n`; each edge is stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph {
            n,
            edges: Vec::new(),
            adj: vec![vec![false; n + 1]; n + 1],
        };
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(GraphError::OutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if g.adj[u][v] {
                return Err(GraphError::Duplicate(u, v));
            }
            g.adj[u][v] = true;
            g.adj[v][u] = true;
            g.edges.push((u, v));
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let e: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        Graph::new(n, &e).expect("valid")
    }

    pub fn cycle(n: usize) -> Graph {
        let e: Vec<(usize, usize)> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Graph::new(n, &e).expect("valid")
    }

    pub fn path(n: usize) -> Graph {
        let e: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::new(n, &e).expect("valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        (1..=self.n).filter(|&w| self.adj[u][w] && self.adj[v][w]).count()
    }

    /// Whether two distinct vertices have at least two common neighbours.
    pub fn has_4cycle(&self) -> bool {
        (1..=self.n).any(|u| (u + 1..=self.n).any(|v| self.common_neighbors(u, v) >= 2))
    }

    pub fn has_triangle(&self) -> bool {
        self.edges.iter().any(|&(u, v)| self.common_neighbors(u, v) >= 1)
    }

    /// Size of a largest complete subgraph.
    pub fn max_clique(&self) -> usize {
        fn grow(g: &Graph, clique: &mut Vec<usize>, start: usize, best: &mut usize) {
            *best = (*best).max(clique.len());
            for v in start..=g.n {
                if clique.iter().all(|&u| g.adj[u][v]) {
                    clique.push(v);
                    grow(g, clique, v + 1, best);
                    clique.pop();
                }
            }
        }
        let mut best = 0;
        grow(self, &mut Vec::new(), 1, &mut best);
        best
    }

    /// The induced subgraph on `1..=k`.
    pub fn induced_prefix(&self, k: usize) -> Graph {
        let e: Vec<(usize, usize)> = self.edges.iter().copied().filter(|&(_, v)| v <= k).collect();
        Graph::new(k, &e).expect("subgraph of a valid graph")
    }

    /// Parse `vertices n` followed by one `u v` edge per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| GraphError::Parse { line: i + 1, message };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match (n, toks.as_slice()) {
                (None, ["vertices", k]) => {
                    n = Some(k.parse::<usize>().map_err(|e| err(format!("bad vertex count: {e}")))?);
                }
                (None, _) => return Err(err("expected `vertices n`".into())),
                (Some(_), [a, b]) => {
                    let a = a.parse::<usize>().map_err(|e| err(format!("bad vertex: {e}")))?;
                    let b = b.parse::<usize>().map_err(|e| err(format!("bad vertex: {e}")))?;
                    edges.push((a, b));
                }
                (Some(_), _) => return Err(err("expected an edge `u v`".into())),
            }
        }
        let n = n.ok_or(GraphError::Parse {
            line: 0,
            message: "missing `vertices n`".into(),
        })?;
        Graph::new(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.n);
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.edges.iter().map(|(u, v)| format!("({u},{v})")).collect();
        write!(f, "G({}; {})", self.n, e.join(","))
    }
}

/// `A_G = {x_i - x_j : (i, j) in E}` in `K^n`.
pub fn graphic_arrangement(g: &Graph) -> Arrangement {
    let hs = g
        .edges
        .iter()
        .map(|&(u, v)| {
            let mut c = vec![Rational::zero(); g.n];
            c[u - 1] = Rational::one();
            c[v - 1] = Rational::from_int(-1);
            Hyperplane::new(c).expect("nonzero")
        })
        .collect();
    Arrangement::new(g.n, hs).expect("edges are distinct")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriReport {
    /// Largest number of triangles closed by one new edge.
    pub tri: usize,
    /// First non-edge attaining `tri`, when `tri > 0`.
    pub witness_edge: Option<(usize, usize)>,
    pub has_4cycle: bool,
    /// The four-case value of `t_{A_G}`.
    pub t_formula: usize,
}

pub fn tri_count(g: &Graph) -> TriReport {
    let mut tri = 0;
    let mut witness_edge = None;
    for u in 1..=g.n {
        for v in u + 1..=g.n {
            if g.adj[u][v] {
                continue;
            }
            let c = g.common_neighbors(u, v);
            if c > tri {
                tri = c;
                witness_edge = Some((u, v));
            }
        }
    }
    let has_4cycle = g.has_4cycle();
    TriReport {
        tri,
        witness_edge,
        has_4cycle,
        t_formula: formula_t(g.num_edges(), tri, has_4cycle),
    }
}

fn formula_t(e: usize, tri: usize, has_4cycle: bool) -> usize {
    if e == 1 {
        e
    } else if !has_4cycle {
        e.saturating_sub(1)
    } else if tri == 0 {
        e - 2
    } else {
        e - tri
    }
}

/// `t_{A_G}` by the four-case formula in `|E|`, 4-cycles and `Tri(G)`.
pub fn graphic_t(g: &Graph) -> usize {
    tri_count(g).t_formula
}

/// `t_{A_G}` with each codimension 2 flat weighted by `|A_X| - 1`.
///
/// A triangle of `G` gives a flat on three hyperplanes, and any other member of
/// its pencil meets `A_G` in `|E| - 2` places. The unweighted count misses this,
/// so for example `K_3` has `t = 1`.
pub fn corrected_graphic_t(g: &Graph) -> usize {
    let e = g.num_edges();
    if e <= 1 {
        return e;
    }
    let tri = tri_count(g).tri;
    let four = if g.has_4cycle() { 2 } else { 0 };
    let triangle = if g.has_triangle() { 2 } else { 0 };
    e - tri.max(four).max(triangle).max(1)
}

#[derive(Clone, Debug)]
pub struct GraphicCrosscheck {
    pub formula: usize,
    pub corrected: usize,
    pub search: usize,
    pub witness: Hyperplane,
}

impl GraphicCrosscheck {
    pub fn formula_agrees(&self) -> bool {
        self.formula == self.search
    }

    pub fn corrected_agrees(&self) -> bool {
        self.corrected == self.search
    }
}

/// Compare both closed forms with the general minimal restriction search.
pub fn crosscheck_graphic_t(g: &Graph) -> GraphicCrosscheck {
    let r = minimal_restriction(&graphic_arrangement(g));
    GraphicCrosscheck {
        formula: graphic_t(g),
        corrected: corrected_graphic_t(g),
        search: r.t_value,
        witness: r.witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriBoundReport {
    pub tri: usize,
    pub d: u32,
    pub holds: bool,
    pub tight: bool,
}

/// `d_{A_G} >= Tri(G)` for graphs where a new edge closes a triangle.
pub fn check_tri_bound(g: &Graph, seq: &DegreeSequence) -> Result<TriBoundReport, LogderError> {
    let tri = tri_count(g).tri;
    if tri == 0 {
        return Err(LogderError::Malformed("no new triangle can be made".into()));
    }
    if !seq.complete {
        return Err(LogderError::Incomplete);
    }
    let d = seq.d_max().unwrap_or(0);
    Ok(TriBoundReport {
        tri,
        d,
        holds: d as usize >= tri,
        tight: d as usize == tri,
    })
}
