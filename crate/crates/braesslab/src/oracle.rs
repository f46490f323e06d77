//! Brute-force oracles: spanning-tree and 2-forest enumeration by direct
//! edge-subset iteration, a first-passage recomputation of Kemeny's
//! constant, and exhaustive catalogues of small connected graphs and trees.
//!
//! Everything here is deliberately independent of the determinant/inverse
//! pipeline so the two routes can certify each other. All entry points
//! refuse graphs beyond an explicit order bound instead of silently taking
//! hours.

use std::collections::HashMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, Int, Rat};
use crate::graph::Graph;
use crate::kemeny;

/// Default refusal bound for the enumeration oracles.
pub const DEFAULT_MAX_N: usize = 10;

fn check_bound(g: &Graph, bound: usize) -> Result<()> {
    if g.n() > bound {
        Err(Error::OracleBound { order: g.n(), bound })
    } else {
        Ok(())
    }
}

/// Visit every k-subset of 0..m.
fn for_each_combination(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // Advance to the next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    /// Returns false if x and y were already joined (the edge closes a cycle).
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx] = ry;
        true
    }
}

/// τ(G) by explicit enumeration of (n−1)-edge subsets.
pub fn enumerate_spanning_trees(g: &Graph, bound: usize) -> Result<Int> {
    check_bound(g, bound)?;
    let n = g.n();
    if n == 1 {
        return Ok(Int::one());
    }
    let edges = g.edges();
    let mut count = Int::zero();
    for_each_combination(edges.len(), n - 1, |subset| {
        let mut uf = UnionFind::new(n);
        if subset.iter().all(|&e| uf.union(edges[e].0, edges[e].1)) {
            count += 1;
        }
    });
    Ok(count)
}

/// One pass over all spanning 2-forests ((n−2)-edge acyclic subsets),
/// grouped by the vertex set of the component containing vertex 0, encoded
/// as a bitmask. Everything else (F, Q, pairwise censuses) reads off these
/// counts.
fn two_forest_side_counts(g: &Graph) -> HashMap<u64, Int> {
    let n = g.n();
    let edges = g.edges();
    let mut counts: HashMap<u64, Int> = HashMap::new();
    if n < 2 {
        return counts;
    }
    for_each_combination(edges.len(), n - 2, |subset| {
        let mut uf = UnionFind::new(n);
        if !subset.iter().all(|&e| uf.union(edges[e].0, edges[e].1)) {
            return;
        }
        // Acyclic with n−2 edges means exactly two components.
        let root0 = uf.find(0);
        let mut mask = 0u64;
        for v in 0..n {
            if uf.find(v) == root0 {
                mask |= 1 << v;
            }
        }
        *counts.entry(mask).or_insert_with(Int::zero) += 1;
    });
    counts
}

/// Forest matrix by enumeration: entry (i,j) counts the spanning 2-forests
/// separating i from j.
pub fn forest_matrix_bruteforce(g: &Graph, bound: usize) -> Result<Vec<Vec<Int>>> {
    check_bound(g, bound)?;
    let n = g.n();
    let counts = two_forest_side_counts(g);
    let mut f = vec![vec![Int::zero(); n]; n];
    for (mask, c) in &counts {
        for i in 0..n {
            for j in 0..n {
                if (mask >> i) & 1 != (mask >> j) & 1 {
                    f[i][j] += c;
                }
            }
        }
    }
    Ok(f)
}

/// Anchored matrix by enumeration: entry (i,j) counts the spanning
/// 2-forests with i and j together and v in the other component.
pub fn q_matrix_bruteforce(g: &Graph, v: usize, bound: usize) -> Result<Vec<Vec<Int>>> {
    check_bound(g, bound)?;
    g.check_vertex(v)?;
    let n = g.n();
    let counts = two_forest_side_counts(g);
    let mut q = vec![vec![Int::zero(); n]; n];
    for (mask, c) in &counts {
        let side = |u: usize| (mask >> u) & 1;
        for i in 0..n {
            for j in 0..n {
                if side(i) == side(j) && side(i) != side(v) {
                    q[i][j] += c;
                }
            }
        }
    }
    Ok(q)
}

/// Counts of the two-forest classes around an unordered pair {i,j} and a
/// witness vertex v: every forest separating i from j puts v on exactly one
/// side, so `separating == v_with_i + v_with_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestCensus {
    pub separating: Int,
    pub v_with_i: Int,
    pub v_with_j: Int,
}

pub fn census(g: &Graph, i: usize, j: usize, v: usize, bound: usize) -> Result<ForestCensus> {
    check_bound(g, bound)?;
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    g.check_vertex(v)?;
    if i == j {
        return Err(Error::InvalidParameter("census needs i != j".into()));
    }
    let counts = two_forest_side_counts(g);
    let mut c = ForestCensus {
        separating: Int::zero(),
        v_with_i: Int::zero(),
        v_with_j: Int::zero(),
    };
    for (mask, k) in &counts {
        let side = |u: usize| (mask >> u) & 1;
        if side(i) != side(j) {
            c.separating += k;
            if side(v) == side(i) {
                c.v_with_i += k;
            } else {
                c.v_with_j += k;
            }
        }
    }
    if c.separating != &c.v_with_i + &c.v_with_j {
        return Err(Error::Inconsistency(
            "two-forest census does not split over the witness vertex".into(),
        ));
    }
    Ok(c)
}

/// κ(G) from exact first-passage times, checked in both normalisations:
/// Σᵢⱼ wᵢ m_{i,j} wⱼ is κ with m_{i,i}=0 and κ+1 with m_{i,i}=1/wᵢ.
pub fn kemeny_bruteforce(g: &Graph, bound: usize) -> Result<Rat> {
    check_bound(g, bound)?;
    if g.n() < 2 {
        return Err(Error::InvalidParameter(
            "Kemeny's constant needs at least two vertices".into(),
        ));
    }
    g.require_connected()?;
    let m = kemeny::mfpt_matrix(g)?;
    let w = kemeny::stationary(g);
    let n = g.n();
    let mut plain = Rat::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                plain += &w[i] * &m[i][j] * &w[j];
            }
        }
    }
    let mut shifted = plain.clone();
    for i in 0..n {
        // w_i * (1/w_i) * w_i contributed by the return-time diagonal.
        shifted += &w[i];
    }
    if &shifted - &plain != rat(1) {
        return Err(Error::Inconsistency(
            "first-passage normalisations disagree by other than 1".into(),
        ));
    }
    Ok(plain)
}

/// One line of a verification report: a named exact comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub m: usize,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Cross-checks the determinant/inverse pipeline against enumeration on one
/// graph: τ, the full forest matrix, the anchored matrix at vertex 0, and
/// κ by three routes (combinatorial, first-passage, spectral).
pub fn verify_graph(g: &Graph, bound: usize) -> Result<VerificationReport> {
    check_bound(g, bound)?;
    g.require_connected()?;
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool| {
        checks.push(Check { name: name.to_string(), passed });
    };

    let data = crate::forest::forest_data(g)?;
    push(
        "tau matches enumeration",
        data.tau == enumerate_spanning_trees(g, bound)?,
    );
    push(
        "forest matrix matches enumeration",
        data.f == forest_matrix_bruteforce(g, bound)?,
    );
    push(
        "anchored matrix matches enumeration",
        crate::forest::q_matrix(g, 0)? == q_matrix_bruteforce(g, 0, bound)?,
    );

    if g.n() >= 2 {
        let exact = kemeny::kemeny_constant(g)?.exact;
        push("kappa matches first-passage", exact == kemeny_bruteforce(g, bound)?);
        let spectral = kemeny::kemeny_spectral(g)?;
        let e = kemeny::rat_to_f64(&exact);
        push(
            "kappa matches spectrum",
            (spectral - e).abs() < 1e-9 * (1.0 + e.abs()),
        );
    }
    Ok(VerificationReport { n: g.n(), m: g.m(), checks })
}

/// All connected graphs with up to `max_n` vertices, one representative per
/// isomorphism class (996 classes at max_n = 7). Representatives are found
/// by walking edge-set bitmasks in increasing order and marking off the
/// entire relabelling orbit of each new connected graph.
pub fn connected_catalogue(max_n: usize) -> Result<Vec<Graph>> {
    if max_n > 7 {
        return Err(Error::OracleBound { order: max_n, bound: 7 });
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let pair_index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let perms = permutations(n);
        let total = 1usize << pairs.len();
        let mut seen = vec![false; total];
        for mask in 0..total {
            if seen[mask] {
                continue;
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = Graph::new(n, edges)?;
            if !g.is_connected() {
                continue;
            }
            for perm in &perms {
                let mut image = 0usize;
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if (mask >> i) & 1 == 1 {
                        let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                        image |= 1 << pair_index[&(a, b)];
                    }
                }
                seen[image] = true;
            }
            out.push(g);
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// Canonical string of a tree rooted at `root` (children sorted by their
/// own canonical strings). Equal strings ⇔ rooted isomorphism.
pub fn ahu_rooted(g: &Graph, root: usize) -> Result<String> {
    if !g.is_tree() {
        return Err(Error::InvalidParameter("rooted canonical form needs a tree".into()));
    }
    g.check_vertex(root)?;
    let adj = g.adjacency();
    fn encode(adj: &[Vec<usize>], u: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[u]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| encode(adj, w, u))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    Ok(encode(&adj, root, usize::MAX))
}

/// Canonical string of a free tree: root at the centre (or the smaller of
/// the two centre strings). Equal strings ⇔ isomorphism.
pub fn ahu_free(g: &Graph) -> Result<String> {
    if !g.is_tree() {
        return Err(Error::InvalidParameter("canonical form needs a tree".into()));
    }
    let centres = tree_centres(g);
    let mut best: Option<String> = None;
    for c in centres {
        let s = ahu_rooted(g, c)?;
        if best.as_ref().map_or(true, |b| s < *b) {
            best = Some(s);
        }
    }
    Ok(best.unwrap())
}

fn tree_centres(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let adj = g.adjacency();
    let mut degree: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &u in &layer {
            degree[u] = 0;
            for &w in &adj[u] {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer
}

/// All trees with up to `max_n` vertices, one per isomorphism class,
/// generated by leaf addition and deduplicated by canonical form.
pub fn tree_catalogue(max_n: usize) -> Result<Vec<Graph>> {
    if max_n > 12 {
        return Err(Error::OracleBound { order: max_n, bound: 12 });
    }
    let mut out: Vec<Graph> = Vec::new();
    if max_n == 0 {
        return Ok(out);
    }
    let mut current = vec![Graph::trivial()];
    out.extend(current.iter().cloned());
    for n in 2..=max_n {
        let mut next = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for t in &current {
            for v in 0..t.n() {
                let mut edges: Vec<(usize, usize)> = t.edges().to_vec();
                edges.push((v, n - 1));
                let bigger = Graph::new(n, edges)?;
                if seen.insert(ahu_free(&bigger)?) {
                    next.push(bigger);
                }
            }
        }
        out.extend(next.iter().cloned());
        current = next;
    }
    Ok(out)
}
