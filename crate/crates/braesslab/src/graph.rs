//! Simple undirected graphs: canonical edge-set representation, family
//! generators, vertex identification (1-sums), twin pendent paths, and the
//! edge-list text format.
//!
//! Conventions, fixed once for the whole crate:
//! * vertices are 0-based everywhere, including files and the CLI;
//! * `path(n)` is 0-1-…-(n−1); `cycle(n)` additionally closes 0-(n−1);
//! * `star(n)` has its centre at vertex n−1;
//! * `broom(n, α)` has the handle 0-1-…-α and the bristles α+1..n−1 all
//!   adjacent to vertex α−1, so vertex 0 is the distinguished far pendent
//!   and the n−α pendents {α, α+1, …, n−1} share the neighbour α−1.
//!
//! Graphs are immutable values; every construction returns a new graph.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "graph must have at least one vertex".into(),
            ));
        }
        let mut es: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {a}")));
            }
            let e = (a.min(b), a.max(b));
            if e.1 >= n {
                return Err(Error::InvalidVertex { vertex: e.1, order: n });
            }
            es.push(e);
        }
        es.sort_unstable();
        if let Some(w) = es.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!(
                "duplicate edge {} {}",
                w[0].0, w[0].1
            )));
        }
        Ok(Graph { n, edges: es })
    }

    pub fn trivial() -> Graph {
        Graph { n: 1, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, order: self.n })
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).is_ok()
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidParameter(format!(
                "edge {} {} already present",
                u.min(v),
                u.max(v)
            )));
        }
        let mut es = self.edges.clone();
        es.push((u.min(v), u.max(v)));
        es.sort_unstable();
        Ok(Graph { n: self.n, edges: es })
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degree_vector(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// BFS distances from `v`; None marks unreachable vertices.
    pub fn bfs_distances(&self, v: usize) -> Vec<Option<usize>> {
        let adj = self.adjacency();
        let mut dist = vec![None; self.n];
        dist[v] = Some(0);
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected(self.components()))
        }
    }

    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n && self.is_connected()
    }

    pub fn eccentricity(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        self.require_connected()?;
        Ok(self
            .bfs_distances(v)
            .into_iter()
            .map(|d| d.unwrap())
            .max()
            .unwrap())
    }

    pub fn diameter(&self) -> Result<usize> {
        self.require_connected()?;
        let mut best = 0;
        for v in 0..self.n {
            best = best.max(self.eccentricity(v)?);
        }
        Ok(best)
    }

    pub fn is_cut_vertex(&self, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        self.require_connected()?;
        Ok(self.branches_at(v)?.branches.len() > 1)
    }

    /// Induced subgraph on `vertices` (sorted, deduplicated by the caller);
    /// returns the graph plus the map new-id → old-id.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut map_old = vec![usize::MAX; self.n];
        for (new, &old) in vertices.iter().enumerate() {
            self.check_vertex(old)?;
            map_old[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| map_old[*u] != usize::MAX && map_old[*v] != usize::MAX)
            .map(|&(u, v)| (map_old[u], map_old[v]));
        Ok((Graph::new(vertices.len(), edges)?, vertices.to_vec()))
    }

    pub fn branches_at(&self, v: usize) -> Result<BranchProfile> {
        self.check_vertex(v)?;
        self.require_connected()?;
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.n];
        let mut ncomp = 0;
        for s in 0..self.n {
            if s == v || comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = ncomp;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if w != v && comp[w] == usize::MAX {
                        comp[w] = ncomp;
                        stack.push(w);
                    }
                }
            }
            ncomp += 1;
        }
        let mut branches = Vec::new();
        for c in 0..ncomp {
            let mut verts: Vec<usize> =
                (0..self.n).filter(|&u| u != v && comp[u] == c).collect();
            verts.push(v);
            verts.sort_unstable();
            let (bg, map) = self.induced(&verts)?;
            let v_in_branch = map.iter().position(|&old| old == v).unwrap();
            let ecc = bg.eccentricity(v_in_branch)?;
            branches.push(Branch { vertices: verts, size: bg.n(), eccentricity: ecc });
        }
        Ok(BranchProfile { vertex: v, branches })
    }

    // ---- family generators ----

    pub fn complete(n: usize) -> Result<Graph> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges)
    }

    pub fn path(n: usize) -> Result<Graph> {
        Graph::new(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle needs n >= 3, got {n}"
            )));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::new(n, edges)
    }

    /// Star with centre n−1.
    pub fn star(n: usize) -> Result<Graph> {
        Graph::new(n, (0..n.saturating_sub(1)).map(|v| (v, n - 1)))
    }

    /// Broom: handle 0-1-…-α, bristles α+1..n−1 adjacent to vertex α−1.
    pub fn broom(n: usize, alpha: usize) -> Result<Graph> {
        if alpha == 0 || n <= alpha {
            return Err(Error::InvalidParameter(format!(
                "broom needs n > alpha >= 1, got n={n}, alpha={alpha}"
            )));
        }
        let mut edges: Vec<_> = (1..=alpha).map(|v| (v - 1, v)).collect();
        edges.extend((alpha + 1..n).map(|v| (alpha - 1, v)));
        Graph::new(n, edges)
    }

    // ---- edge-list text format ----

    /// Parses the crate's edge-list format: '#' comment lines, a first data
    /// line holding n, then one "u v" pair per line with 0 <= u < v < n.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            match n {
                None => {
                    n = Some(s.parse().map_err(|_| Error::Parse {
                        line,
                        message: format!("expected vertex count, got {s:?}"),
                    })?);
                }
                Some(nv) => {
                    let mut it = s.split_ascii_whitespace();
                    let parse = |tok: Option<&str>| -> Result<usize> {
                        tok.ok_or(Error::Parse {
                            line,
                            message: "expected \"u v\"".into(),
                        })?
                        .parse()
                        .map_err(|_| Error::Parse {
                            line,
                            message: format!("expected \"u v\", got {s:?}"),
                        })
                    };
                    let u = parse(it.next())?;
                    let v = parse(it.next())?;
                    if it.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            message: format!("trailing tokens after edge in {s:?}"),
                        });
                    }
                    if u >= v {
                        return Err(Error::Parse {
                            line,
                            message: format!("edges require u < v, got {u} {v}"),
                        });
                    }
                    if v >= nv {
                        return Err(Error::Parse {
                            line,
                            message: format!("endpoint {v} out of range for n={nv}"),
                        });
                    }
                    if edges.contains(&(u, v)) {
                        return Err(Error::Parse {
                            line,
                            message: format!("duplicate edge {u} {v}"),
                        });
                    }
                    edges.push((u, v));
                }
            }
        }
        match n {
            None => Err(Error::Parse { line: 0, message: "empty input".into() }),
            Some(nv) => Graph::new(nv, edges),
        }
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    /// Vertex ids in the host graph; always contains the profile's vertex.
    pub vertices: Vec<usize>,
    pub size: usize,
    /// Eccentricity of the profile vertex within the branch.
    pub eccentricity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchProfile {
    pub vertex: usize,
    pub branches: Vec<Branch>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwinPathSpec {
    pub v: usize,
    pub k1: usize,
    pub k2: usize,
}

impl TwinPathSpec {
    pub fn new(v: usize, k1: usize, k2: usize) -> Result<TwinPathSpec> {
        if k1 + k2 < 2 {
            return Err(Error::InvalidParameter(format!(
                "twin pendent paths need k1 + k2 >= 2, got k1={k1}, k2={k2}"
            )));
        }
        Ok(TwinPathSpec { v, k1, k2 })
    }

    /// Length of the cycle the tip–tip edge closes.
    pub fn k(&self) -> usize {
        self.k1 + self.k2 + 1
    }
}

/// 1-sum: glue `g2` onto `g1` by identifying `v2` with `v1`. Vertices of
/// `g1` keep their ids; the rest of `g2` is appended in increasing order.
/// Returns the new graph plus the map old-g2-id → new-id.
pub fn identify(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<(Graph, Vec<usize>)> {
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    let n1 = g1.n();
    let mut map = Vec::with_capacity(g2.n());
    let mut next = n1;
    for w in 0..g2.n() {
        if w == v2 {
            map.push(v1);
        } else {
            map.push(next);
            next += 1;
        }
    }
    let mut edges: Vec<(usize, usize)> = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&(u, v)| (map[u], map[v])));
    Ok((Graph::new(n1 + g2.n() - 1, edges)?, map))
}

/// Attaches two pendent paths of lengths k1 and k2 at `spec.v`, giving the
/// open twin-path graph. Returns the graph and the two path tips; a zero
/// length degenerates that tip to `v` itself.
pub fn attach_twin_paths(g: &Graph, spec: &TwinPathSpec) -> Result<(Graph, (usize, usize))> {
    g.check_vertex(spec.v)?;
    TwinPathSpec::new(spec.v, spec.k1, spec.k2)?;
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut chain = |start: usize, len: usize| -> usize {
        let mut prev = spec.v;
        for i in 0..len {
            edges.push((prev.min(start + i), prev.max(start + i)));
            prev = start + i;
        }
        prev
    };
    let tip1 = chain(n, spec.k1);
    let tip2 = chain(n + spec.k1, spec.k2);
    Ok((Graph::new(n + spec.k1 + spec.k2, edges)?, (tip1, tip2)))
}

/// Inserts the tip–tip edge, closing the cycle of length k1+k2+1 through v.
pub fn close_twin_paths(g_tilde: &Graph, tips: (usize, usize)) -> Result<Graph> {
    if tips.0 == tips.1 {
        return Err(Error::InvalidParameter(format!(
            "tips must be distinct, got {} twice",
            tips.0
        )));
    }
    if g_tilde.has_edge(tips.0, tips.1) {
        return Err(Error::InvalidParameter(format!(
            "tips {} and {} are already adjacent",
            tips.0, tips.1
        )));
    }
    g_tilde.with_edge(tips.0, tips.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Complete,
    Cycle,
    Path,
    Star,
    Broom,
}

impl FamilyKind {
    pub fn parse(s: &str) -> Result<FamilyKind> {
        match s {
            "complete" => Ok(FamilyKind::Complete),
            "cycle" => Ok(FamilyKind::Cycle),
            "path" => Ok(FamilyKind::Path),
            "star" => Ok(FamilyKind::Star),
            "broom" => Ok(FamilyKind::Broom),
            _ => Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Complete => "complete",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Path => "path",
            FamilyKind::Star => "star",
            FamilyKind::Broom => "broom",
        }
    }
}

/// Canonical labelled family member; `extra` is the broom handle length α
/// and must be None for the other kinds.
pub fn make_family(kind: FamilyKind, n: usize, extra: Option<usize>) -> Result<Graph> {
    if kind != FamilyKind::Broom && extra.is_some() {
        return Err(Error::InvalidParameter(format!(
            "family {} takes no extra parameter",
            kind.name()
        )));
    }
    match kind {
        FamilyKind::Complete => Graph::complete(n),
        FamilyKind::Cycle => Graph::cycle(n),
        FamilyKind::Path => Graph::path(n),
        FamilyKind::Star => Graph::star(n),
        FamilyKind::Broom => {
            let alpha = extra.ok_or_else(|| {
                Error::InvalidParameter("broom requires the handle length alpha".into())
            })?;
            Graph::broom(n, alpha)
        }
    }
}
