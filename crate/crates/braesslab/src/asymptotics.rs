//! Sequence-level analysis: the paradoxicality ratio φ/(4m²τ), monotone
//! threshold certification over graph families, the tree machinery around
//! dᵀQ_{T,v}d (pendant-path decomposition, broom closed forms, branch lower
//! bounds), and the "grow a tail until paradoxical" construction.
//!
//! Asymptotic claims are never decided here: every report is an exact
//! finite-range statement (trends by exact rational comparison), with the
//! known limits of the built-in families carried only as annotations.

use num::Zero;

use crate::braess;
use crate::error::{Error, Result};
use crate::exact::{int, rat, Int, Rat};
use crate::forest;
use crate::graph::{identify, BranchProfile, FamilyKind, Graph};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// φ_G(v) / (4m²τ), exact. Divergence of this ratio along a family is
/// equivalent to the family being asymptotically paradoxical; at desk scale
/// we only ever report its exact values and trends.
pub fn ratio(g: &Graph, v: usize) -> Result<Rat> {
    let phi = braess::phi_v(g, v)?;
    let tau = forest::tau(g)?;
    let m = int(g.m() as i64);
    Ok(Rat::new(phi, int(4) * &m * &m * tau))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexPolicy {
    Fixed(usize),
    Pendent,
    Centre,
}

impl VertexPolicy {
    pub fn parse(s: &str) -> Result<VertexPolicy> {
        match s {
            "pendent" => Ok(VertexPolicy::Pendent),
            "centre" | "center" => Ok(VertexPolicy::Centre),
            other => other
                .parse::<usize>()
                .map(VertexPolicy::Fixed)
                .map_err(|_| {
                    Error::InvalidParameter(format!(
                        "vertex policy must be pendent, centre, or a vertex id; got {other:?}"
                    ))
                }),
        }
    }
}

type Generator = Box<dyn Fn(usize) -> Result<(Graph, usize)> + Send + Sync>;

/// A growing family n ↦ (Gₙ, vₙ). Built-in kinds use the canonical
/// labellings from the graph module; anything else goes through `custom`.
pub struct FamilySpec {
    name: String,
    gen: Generator,
}

impl FamilySpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn custom(
        name: impl Into<String>,
        gen: impl Fn(usize) -> Result<(Graph, usize)> + Send + Sync + 'static,
    ) -> FamilySpec {
        FamilySpec { name: name.into(), gen: Box::new(gen) }
    }

    pub fn builtin(
        kind: FamilyKind,
        policy: VertexPolicy,
        alpha: Option<usize>,
    ) -> Result<FamilySpec> {
        if kind != FamilyKind::Broom && alpha.is_some() {
            return Err(Error::InvalidParameter(format!(
                "family {} takes no alpha",
                kind.name()
            )));
        }
        let name = match policy {
            VertexPolicy::Fixed(v) => format!("{}@{v}", kind.name()),
            VertexPolicy::Pendent => format!("{}@pendent", kind.name()),
            VertexPolicy::Centre => format!("{}@centre", kind.name()),
        };
        Ok(FamilySpec {
            name,
            gen: Box::new(move |n| {
                let g = crate::graph::make_family(kind, n, alpha)?;
                let v = pick_vertex(kind, &g, policy)?;
                Ok((g, v))
            }),
        })
    }

    pub fn instantiate(&self, n: usize) -> Result<(Graph, usize)> {
        let (g, v) = (self.gen)(n)?;
        if g.n() != n {
            return Err(Error::Inconsistency(format!(
                "family {} generated order {} for n={n}",
                self.name,
                g.n()
            )));
        }
        g.check_vertex(v)?;
        g.require_connected()?;
        Ok((g, v))
    }
}

fn pick_vertex(kind: FamilyKind, g: &Graph, policy: VertexPolicy) -> Result<usize> {
    match policy {
        VertexPolicy::Fixed(v) => {
            g.check_vertex(v)?;
            Ok(v)
        }
        VertexPolicy::Pendent => {
            // Canonical distinguished pendent of the labelled families.
            let ok = matches!(
                kind,
                FamilyKind::Path | FamilyKind::Star | FamilyKind::Broom
            ) && g.n() >= 2;
            if ok && g.degree_vector()[0] == 1 {
                Ok(0)
            } else {
                Err(Error::InvalidParameter(format!(
                    "family {} has no canonical pendent vertex at n={}",
                    kind.name(),
                    g.n()
                )))
            }
        }
        VertexPolicy::Centre => {
            if kind == FamilyKind::Star && g.n() >= 2 {
                Ok(g.n() - 1)
            } else {
                Err(Error::InvalidParameter(format!(
                    "centre policy is only defined for stars, not {}",
                    kind.name()
                )))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdPoint {
    pub n: usize,
    pub phi_positive: bool,
    pub boundary: bool,
    pub ratio: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    pub family: String,
    pub k1: usize,
    pub k2: usize,
    pub points: Vec<ThresholdPoint>,
    /// Smallest tested n with Φ > 0.
    pub first_n_true: Option<usize>,
    /// Tested n with Φ = 0 exactly.
    pub boundary_ns: Vec<usize>,
    /// All tested n ≥ first_n_true have Φ > 0 and the ratio is
    /// non-decreasing over that tail; trivially true for (1,1). Covers the
    /// tested range only — the monotone-hypothesis extension is the
    /// caller's reading.
    pub certified: bool,
}

pub fn threshold_scan(
    fam: &FamilySpec,
    k1: usize,
    k2: usize,
    n_lo: usize,
    n_hi: usize,
) -> Result<ThresholdReport> {
    if n_lo > n_hi {
        return Err(Error::InvalidParameter(format!(
            "empty scan range {n_lo}..={n_hi}"
        )));
    }
    let ns: Vec<usize> = (n_lo.max(2)..=n_hi)
        .filter(|&n| fam.instantiate(n).is_ok())
        .collect();
    let eval = |&n: &usize| -> Result<ThresholdPoint> {
        let (g, v) = fam.instantiate(n)?;
        let b = braess::big_phi(&g, v, k1, k2)?;
        Ok(ThresholdPoint {
            n,
            phi_positive: b.verdict(),
            boundary: b.boundary(),
            ratio: ratio(&g, v)?,
        })
    };
    #[cfg(feature = "parallel")]
    let points: Result<Vec<ThresholdPoint>> = ns.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let points: Result<Vec<ThresholdPoint>> = ns.iter().map(eval).collect();
    let points = points?;

    let first_n_true = points.iter().find(|p| p.phi_positive).map(|p| p.n);
    let boundary_ns = points.iter().filter(|p| p.boundary).map(|p| p.n).collect();
    let certified = match first_n_true {
        None => false,
        Some(n0) => {
            let tail: Vec<&ThresholdPoint> =
                points.iter().filter(|p| p.n >= n0).collect();
            let all_true = tail.iter().all(|p| p.phi_positive);
            let monotone = tail.windows(2).all(|w| w[0].ratio <= w[1].ratio);
            ((k1, k2) == (1, 1)) || (all_true && monotone)
        }
    };
    Ok(ThresholdReport {
        family: fam.name().to_string(),
        k1,
        k2,
        points,
        first_n_true,
        boundary_ns,
        certified,
    })
}

/// The five (k₁,k₂) classes for which a star at a pendent vertex is ever
/// paradoxical, with their onset orders, recovered by scanning.
pub fn star_pendent_thresholds() -> Result<Vec<((usize, usize), Option<usize>)>> {
    let fam = FamilySpec::builtin(FamilyKind::Star, VertexPolicy::Pendent, None)?;
    [(1, 1), (0, 2), (1, 2), (2, 2), (2, 3)]
        .into_iter()
        .map(|(k1, k2)| {
            let rep = threshold_scan(&fam, k1, k2, 2, 55)?;
            Ok(((k1, k2), rep.first_n_true))
        })
        .collect()
}

/// Lower bound for dᵀQ_{T,v}d over trees with the given branch profile at v:
///   Σᵢ (nᵢ−eᵢ−1)(4nᵢ+4eᵢ−7) + eᵢ(2eᵢ−1)(2eᵢ+1)/3.
pub fn branch_min_dqd(profile: &BranchProfile) -> Result<Int> {
    let mut total = Int::zero();
    for b in &profile.branches {
        let (n, e) = (b.size as i64, b.eccentricity as i64);
        if e < 1 || n < e + 1 {
            return Err(Error::InvalidParameter(format!(
                "malformed branch profile: size {n}, eccentricity {e}"
            )));
        }
        total += int((n - e - 1) * (4 * n + 4 * e - 7)) + int(e * (2 * e - 1) * (2 * e + 1)) / int(3);
    }
    Ok(total)
}

/// dᵀQd of the broom B_{n,α} at the far pendent (vertex 0 in the canonical
/// labelling): 4(α−1)(n−α−1)² + (n−α−1)(4α²−3) + α(2α−1)(2α+1)/3.
pub fn broom_dqd(n: usize, alpha: usize) -> Result<Int> {
    if alpha == 0 || n <= alpha {
        return Err(Error::InvalidParameter(format!(
            "broom needs n > alpha >= 1, got n={n}, alpha={alpha}"
        )));
    }
    let (n, a) = (n as i64, alpha as i64);
    let b = n - a - 1;
    Ok(int(4 * (a - 1) * b * b) + int(b * (4 * a * a - 3)) + int(a * (2 * a - 1) * (2 * a + 1)) / int(3))
}

/// dᵀQ_{Pₙ,v}d closed form (0-based v; the 1-based index of the source
/// formula is v+1, converted exactly here and nowhere else):
///   4(n−1)v′² − 4(n²−1)v′ + (4n³−n)/3 − 1.
pub fn pn_dqd(n: usize, v: usize) -> Result<Int> {
    if n < 2 {
        return Err(Error::InvalidParameter("path needs n >= 2".into()));
    }
    if v >= n {
        return Err(Error::InvalidVertex { vertex: v, order: n });
    }
    let n = n as i64;
    let vp = v as i64 + 1;
    Ok(int(4 * (n - 1) * vp * vp - 4 * (n * n - 1) * vp) + int(4 * n * n * n - n) / int(3)
        - int(1))
}

/// Extremes of v ↦ dᵀQ_{Pₙ,v}d with their argument sets.
pub fn pn_dqd_extrema(n: usize) -> Result<(Int, Vec<usize>, Int, Vec<usize>)> {
    if n < 2 {
        return Err(Error::InvalidParameter("path needs n >= 2".into()));
    }
    let values: Vec<Int> = (0..n).map(|v| pn_dqd(n, v).unwrap()).collect();
    let min = values.iter().min().unwrap().clone();
    let max = values.iter().max().unwrap().clone();
    let argmin = (0..n).filter(|&v| values[v] == min).collect();
    let argmax = (0..n).filter(|&v| values[v] == max).collect();
    Ok((min, argmin, max, argmax))
}

fn require_tree(t: &Graph) -> Result<()> {
    if t.is_tree() {
        Ok(())
    } else {
        Err(Error::InvalidParameter("expected a tree".into()))
    }
}

/// dᵀQ_{T,v}d for a tree, computed from the combinatorial reading of Q:
/// q_{i,j} is the distance from v to the i–j path. Used as the inner route
/// of the pendant decomposition so the identity is tested independently of
/// the forest-matrix pipeline.
pub(crate) fn tree_dqd_combinatorial(t: &Graph, v: usize) -> Result<Int> {
    require_tree(t)?;
    t.check_vertex(v)?;
    let n = t.n();
    if n == 1 {
        return Ok(Int::zero());
    }
    let d = t.degree_vector();
    let dist_v: Vec<usize> = t.bfs_distances(v).into_iter().map(|x| x.unwrap()).collect();
    // Parent pointers toward v for path walking.
    let adj = t.adjacency();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![v];
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut qi = 0;
    while qi < order.len() {
        let u = order[qi];
        qi += 1;
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let meet_dist = |i: usize, j: usize| -> usize {
        // Distance from v to the i–j path = dist(v, lca-toward-v of i and j).
        let (mut a, mut b) = (i, j);
        while a != b {
            if dist_v[a] >= dist_v[b] {
                a = parent[a];
            } else {
                b = parent[b];
            }
        }
        dist_v[a]
    };
    let mut s = Int::zero();
    for i in 0..n {
        for j in 0..n {
            if i == v || j == v {
                continue;
            }
            s += int((d[i] * d[j]) as i64) * int(meet_dist(i, j) as i64);
        }
    }
    Ok(s)
}

/// dᵀQ_{T,v}d for a tree with pendent v, via the longest-path splitting:
/// with v = v₀, v₁, …, v_α a longest path from v, subtrees 𝒯ᵢ hanging off
/// the interior vertices (everything at vᵢ except the two path branches),
/// and Sᵢ = Σ_{j≥i}(nⱼ−1),
///
///   dᵀQd = 4ΣSᵢ² + Σ dᵀQ_{𝒯ᵢ,vᵢ}d + 4ΣSᵢ(2(α−i)+1) + α(2α−1)(2α+1)/3.
///
/// Must equal the direct computation; the inner terms use the combinatorial
/// tree route.
pub fn pendant_decomposition_dqd(t: &Graph, v: usize) -> Result<Int> {
    require_tree(t)?;
    t.check_vertex(v)?;
    if t.n() == 1 {
        return Err(Error::InvalidParameter(
            "pendant decomposition needs at least one edge".into(),
        ));
    }
    if t.degree_vector()[v] != 1 {
        return Err(Error::InvalidParameter(format!(
            "vertex {v} is not pendent"
        )));
    }
    let dist_v: Vec<usize> = t.bfs_distances(v).into_iter().map(|x| x.unwrap()).collect();
    let alpha = *dist_v.iter().max().unwrap();
    // Recover one longest path v = v0, v1, ..., v_alpha.
    let far = (0..t.n()).find(|&u| dist_v[u] == alpha).unwrap();
    let adj = t.adjacency();
    let mut path = vec![far];
    while *path.last().unwrap() != v {
        let u = *path.last().unwrap();
        let next = adj[u]
            .iter()
            .copied()
            .find(|&w| dist_v[w] + 1 == dist_v[u])
            .unwrap();
        path.push(next);
    }
    path.reverse();

    // Subtree orders and inner terms at the interior path vertices.
    let mut sizes = vec![1i64; alpha + 1];
    let mut inner = Int::zero();
    for i in 1..alpha {
        let vi = path[i];
        let prof = t.branches_at(vi)?;
        let mut verts: Vec<usize> = vec![vi];
        for b in &prof.branches {
            if b.vertices.contains(&path[i - 1]) || b.vertices.contains(&path[i + 1]) {
                continue;
            }
            verts.extend(b.vertices.iter().copied().filter(|&u| u != vi));
        }
        verts.sort_unstable();
        sizes[i] = verts.len() as i64;
        if verts.len() > 1 {
            let (sub, map) = t.induced(&verts)?;
            let vi_new = map.iter().position(|&old| old == vi).unwrap();
            inner += tree_dqd_combinatorial(&sub, vi_new)?;
        }
    }

    let a = alpha as i64;
    let mut total = int(a * (2 * a - 1) * (2 * a + 1)) / int(3) + inner;
    let mut suffix = 0i64; // S_i running from the top
    for i in (1..alpha).rev() {
        suffix += sizes[i] - 1;
        let s = suffix;
        total += int(4 * s * s) + int(4 * s * (2 * (a - i as i64) + 1));
    }
    Ok(total)
}

/// Equality-case shape of the branch lower bound: a branch B at v attains
/// the bound iff it is a path hung at v (when |B| = e+1) or a broom in
/// which v sits in the pendent cluster next to the common neighbour.
pub fn is_min_branch_shape(b: &Graph, v: usize) -> Result<bool> {
    require_tree(b)?;
    b.check_vertex(v)?;
    if b.n() < 2 {
        return Err(Error::InvalidParameter("branch needs at least one edge".into()));
    }
    let e = b.eccentricity(v)?;
    let reference = min_branch_reference(b.n(), e)?;
    Ok(crate::oracle::ahu_rooted(b, v)? == crate::oracle::ahu_rooted(&reference.0, reference.1)?)
}

/// Canonical minimiser for a branch of given order and eccentricity.
pub fn min_branch_reference(n: usize, e: usize) -> Result<(Graph, usize)> {
    if e < 1 || n < e + 1 {
        return Err(Error::InvalidParameter(format!(
            "branch shape needs n >= e+1 >= 2, got n={n}, e={e}"
        )));
    }
    if n == e + 1 {
        return Ok((Graph::path(n)?, 0));
    }
    // v = 0 and bristles 2..=n−e share the centre 1; a bare path of length
    // e−1 continues from the centre through n−e+1..n−1.
    let mut edges = vec![(0usize, 1usize)];
    edges.extend((2..=n - e).map(|b| (1, b)));
    let mut prev = 1;
    for u in n - e + 1..n {
        edges.push((prev.min(u), prev.max(u)));
        prev = u;
    }
    Ok((Graph::new(n, edges)?, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Increasing,
    Decreasing,
    Flat,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRow {
    pub n: usize,
    /// Eccentricity of the family vertex.
    pub alpha: usize,
    /// Branch count at the family vertex.
    pub ell: usize,
    /// Branches with eccentricity ≥ c·α — an explicit finite surrogate for
    /// "eccentricity comparable to α", not a limit statement.
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDescriptor {
    pub family: String,
    pub cutoff: Rat,
    pub rows: Vec<ProfileRow>,
    /// Trend of β·α³/n² by exact comparison of consecutive values.
    pub trend_beta_alpha3_over_n2: Trend,
    /// Trend of α/n^(2/3), compared exactly via cubes (α³/n²).
    pub trend_alpha_over_n23: Trend,
}

fn trend_of<F: Fn(&ProfileRow) -> (Int, Int)>(rows: &[ProfileRow], f: F) -> Trend {
    let mut up = false;
    let mut down = false;
    for w in rows.windows(2) {
        let (num_a, den_a) = f(&w[0]);
        let (num_b, den_b) = f(&w[1]);
        // Compare num_a/den_a vs num_b/den_b with positive denominators.
        let lhs = num_a * den_b;
        let rhs = num_b * den_a;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => up = true,
            std::cmp::Ordering::Greater => down = true,
            std::cmp::Ordering::Equal => {}
        }
    }
    match (up, down) {
        (true, true) => Trend::Mixed,
        (true, false) => Trend::Increasing,
        (false, true) => Trend::Decreasing,
        (false, false) => Trend::Flat,
    }
}

pub fn sequence_profile(
    fam: &FamilySpec,
    n_lo: usize,
    n_hi: usize,
    cutoff: &Rat,
) -> Result<SequenceDescriptor> {
    if cutoff <= &Rat::zero() || cutoff > &rat(1) {
        return Err(Error::InvalidParameter(format!(
            "cutoff must lie in (0,1], got {cutoff}"
        )));
    }
    let mut rows = Vec::new();
    for n in n_lo.max(2)..=n_hi {
        let Ok((g, v)) = fam.instantiate(n) else { continue };
        let alpha = g.eccentricity(v)?;
        let prof = g.branches_at(v)?;
        let threshold = cutoff * rat(alpha as i64);
        let beta = prof
            .branches
            .iter()
            .filter(|b| rat(b.eccentricity as i64) >= threshold)
            .count();
        rows.push(ProfileRow { n, alpha, ell: prof.branches.len(), beta });
    }
    let t1 = trend_of(&rows, |r| {
        (
            int((r.beta * r.alpha * r.alpha * r.alpha) as i64),
            int((r.n * r.n) as i64),
        )
    });
    let t2 = trend_of(&rows, |r| {
        (
            int((r.alpha * r.alpha * r.alpha) as i64),
            int((r.n * r.n) as i64),
        )
    });
    Ok(SequenceDescriptor {
        family: fam.name().to_string(),
        cutoff: cutoff.clone(),
        rows,
        trend_beta_alpha3_over_n2: t1,
        trend_alpha_over_n23: t2,
    })
}

/// Glues growing family members onto h at w (1-sum) until the composite is
/// (w,k₁,k₂)-paradoxical; returns the first success, or None at n_max.
pub fn augment_until_paradoxical(
    h: &Graph,
    w: usize,
    fam: &FamilySpec,
    k1: usize,
    k2: usize,
    n_max: usize,
) -> Result<Option<(usize, Graph)>> {
    h.require_connected()?;
    h.check_vertex(w)?;
    for n in 1..=n_max {
        let Ok((g, v)) = fam.instantiate(n) else { continue };
        let (composite, _) = identify(h, w, &g, v)?;
        if braess::big_phi(&composite, w, k1, k2)?.verdict() {
            return Ok(Some((n, composite)));
        }
    }
    Ok(None)
}
