//! Braess-edge detection and the twin-pendent-path criterion.
//!
//! A non-edge is a Braess edge when inserting it strictly increases
//! Kemeny's constant. For the special non-edge closing the tip–tip cycle
//! over twin pendent paths of lengths k1, k2 at v, the sign of the exact
//! rational
//!
//!   Φ(v,k1,k2) = k·φ(v) + 4m²τk·φ1 + (2mτk/3)·φ2 + (2τk/3)·φ3,
//!   k = k1+k2+1,  φ(v) = dᵀ(2f^v·1ᵀ − F)d = 2dᵀQ_{G,v}d,
//!
//! decides paradoxicality, and Δκ = Φ / (4k(m+k)(m+k−1)τ) exactly.

use std::cmp::Ordering;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rat, rat_int, Int, Rat};
use crate::forest;
use crate::graph::{attach_twin_paths, close_twin_paths, Graph, TwinPathSpec};
use crate::kemeny::kemeny_constant;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// φ_G(v) = 4m·dᵀf^v − dᵀFd, strictly positive for connected g, n ≥ 2.
pub fn phi_v(g: &Graph, v: usize) -> Result<Int> {
    if g.n() < 2 {
        return Err(Error::InvalidParameter(
            "phi needs at least two vertices".into(),
        ));
    }
    g.check_vertex(v)?;
    let phi = int(4 * g.m() as i64) * forest::dvec_dot_fv(g, v)? - forest::dfd(g)?;
    if !phi.is_positive() {
        return Err(Error::Inconsistency(format!(
            "phi({v}) = {phi} is not positive"
        )));
    }
    Ok(phi)
}

/// dᵀQ_{G,v}d computed from the Q matrix itself — an independent route;
/// always equals phi_v/2.
pub fn dqd(g: &Graph, v: usize) -> Result<Int> {
    let q = forest::q_matrix(g, v)?;
    let d = g.degree_vector();
    let mut s = Int::zero();
    for (i, row) in q.iter().enumerate() {
        for (j, qij) in row.iter().enumerate() {
            s += int((d[i] * d[j]) as i64) * qij;
        }
    }
    Ok(s)
}

/// The three weight polynomials in (k1,k2).
pub fn phi_polys(k1: usize, k2: usize) -> Result<(Rat, Rat, Rat)> {
    TwinPathSpec::new(0, k1, k2)?;
    let (a, b) = (rat(k1 as i64), rat(k2 as i64));
    let s = &a + &b;
    let phi1 = -rat(2) / rat(3) * &s * (&s - rat(1)) + rat(2) * &a * &b;
    let phi2 = -&s * (rat(5) * &s * &s - &s - rat(1)) + rat(12) * &a * &b * (&s + rat(1));
    let phi3 = -(&s + rat(1)) * &s * (&s - rat(1)) * (&s - rat(1));
    Ok((phi1, phi2, phi3))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiBreakdown {
    pub v: usize,
    pub k1: usize,
    pub k2: usize,
    pub phi_v: Int,
    pub phi1: Rat,
    pub phi2: Rat,
    pub phi3: Rat,
    pub m: usize,
    pub tau: Int,
    pub k: usize,
    pub phi: Rat,
}

impl PhiBreakdown {
    /// Strict positivity; a Braess edge must strictly increase Kemeny's
    /// constant, so Φ = 0 is not a paradox.
    pub fn verdict(&self) -> bool {
        self.phi.is_positive()
    }

    /// Φ = 0 exactly: not paradoxical, but on the boundary (e.g. C₆ at (1,2)).
    pub fn boundary(&self) -> bool {
        self.phi.is_zero()
    }

    /// Exact Δκ = κ(Ĝ) − κ(G̃) predicted from Φ.
    pub fn predicted_delta(&self) -> Rat {
        let mk = int((self.m + self.k) as i64);
        let den = rat(4) * rat(self.k as i64) * rat_int(&self.tau)
            * rat_int(&mk) * (rat_int(&mk) - rat(1));
        &self.phi / den
    }
}

pub fn big_phi(g: &Graph, v: usize, k1: usize, k2: usize) -> Result<PhiBreakdown> {
    let phi_v = phi_v(g, v)?;
    let (phi1, phi2, phi3) = phi_polys(k1, k2)?;
    let tau = forest::tau(g)?;
    let m = g.m();
    let k = k1 + k2 + 1;
    let (mr, tr, kr) = (rat(m as i64), rat_int(&tau), rat(k as i64));
    let phi = rat_int(&phi_v) * &kr
        + rat(4) * &mr * &mr * &tr * &kr * &phi1
        + rat(2) / rat(3) * &mr * &tr * &kr * &phi2
        + rat(2) / rat(3) * &tr * &kr * &phi3;
    Ok(PhiBreakdown {
        v,
        k1,
        k2,
        phi_v,
        phi1,
        phi2,
        phi3,
        m,
        tau,
        k,
        phi,
    })
}

#[derive(Debug, Clone)]
pub struct ParadoxEvidence {
    pub breakdown: PhiBreakdown,
    /// Exact Δκ = κ(Ĝ) − κ(G̃); present when verification was requested.
    pub delta: Option<Rat>,
}

impl ParadoxEvidence {
    pub fn verdict(&self) -> bool {
        self.breakdown.verdict()
    }
}

/// Paradoxicality verdict for the twin-path construction at v. With
/// `verify`, G̃ and Ĝ are actually built, Δκ is computed exactly, and both
/// the sign equivalence and the closed-form value of Δκ are asserted.
pub fn is_paradoxical_at(
    g: &Graph,
    v: usize,
    k1: usize,
    k2: usize,
    verify: bool,
) -> Result<ParadoxEvidence> {
    let breakdown = big_phi(g, v, k1, k2)?;
    let delta = if verify {
        let spec = TwinPathSpec::new(v, k1, k2)?;
        let (g_tilde, tips) = attach_twin_paths(g, &spec)?;
        let g_hat = close_twin_paths(&g_tilde, tips)?;
        let delta = kemeny_constant(&g_hat)?.exact - kemeny_constant(&g_tilde)?.exact;
        if delta.cmp(&Rat::zero()) != breakdown.phi.cmp(&Rat::zero()) {
            return Err(Error::Inconsistency(format!(
                "sign(delta kappa) = {:?} but sign(Phi) = {:?} at v={v}, (k1,k2)=({k1},{k2})",
                delta.cmp(&Rat::zero()),
                breakdown.phi.cmp(&Rat::zero()),
            )));
        }
        if delta != breakdown.predicted_delta() {
            return Err(Error::Inconsistency(format!(
                "delta kappa {delta} differs from Phi/(4k(m+k)(m+k-1)tau) at v={v}"
            )));
        }
        Some(delta)
    } else {
        None
    };
    Ok(ParadoxEvidence { breakdown, delta })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanEntry {
    pub edge: (usize, usize),
    pub delta: Rat,
    pub is_braess: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraessScanResult {
    /// One entry per non-edge, in lexicographic edge order.
    pub entries: Vec<ScanEntry>,
    pub paradoxical: bool,
    /// True for complete inputs: nothing to scan.
    pub no_non_edges: bool,
}

fn scan_edge(g: &Graph, base: &Rat, e: (usize, usize)) -> Result<ScanEntry> {
    let delta = kemeny_constant(&g.with_edge(e.0, e.1)?)?.exact - base;
    let is_braess = delta.is_positive();
    Ok(ScanEntry { edge: e, delta, is_braess })
}

fn scan_result(entries: Vec<ScanEntry>) -> BraessScanResult {
    BraessScanResult {
        paradoxical: entries.iter().any(|e| e.is_braess),
        no_non_edges: entries.is_empty(),
        entries,
    }
}

/// Exact Δκ for every non-edge. Candidate edges are evaluated in parallel
/// when the `parallel` feature is enabled; the result order is canonical
/// either way.
pub fn braess_scan(g: &Graph) -> Result<BraessScanResult> {
    g.require_connected()?;
    let base = kemeny_constant(g)?.exact;
    let candidates = g.non_edges();
    #[cfg(feature = "parallel")]
    let entries: Result<Vec<ScanEntry>> = candidates
        .par_iter()
        .map(|&e| scan_edge(g, &base, e))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let entries: Result<Vec<ScanEntry>> =
        candidates.iter().map(|&e| scan_edge(g, &base, e)).collect();
    Ok(scan_result(entries?))
}

/// Single-threaded scan, kept callable regardless of features so the two
/// lanes can be compared (see benches) and forced via --threads 1.
pub fn braess_scan_sequential(g: &Graph) -> Result<BraessScanResult> {
    g.require_connected()?;
    let base = kemeny_constant(g)?.exact;
    let entries: Result<Vec<ScanEntry>> = g
        .non_edges()
        .into_iter()
        .map(|e| scan_edge(g, &base, e))
        .collect();
    Ok(scan_result(entries?))
}

/// dᵀFd of the graph obtained from h by attaching a path through v with the
/// two ends at distances k1 and k2 (so the path contributes k−1 = k1+k2 new
/// vertices): closed form, must match the direct computation.
pub fn dfd_with_path(h: &Graph, v: usize, k1: usize, k2: usize) -> Result<Int> {
    h.check_vertex(v)?;
    if k1 + k2 < 1 {
        return Err(Error::InvalidParameter(
            "path attachment needs k1 + k2 >= 1".into(),
        ));
    }
    let tau = forest::tau(h)?;
    let km1 = int((k1 + k2) as i64);
    let dfd_h = forest::dfd(h)?;
    let dfv = forest::dvec_dot_fv(h, v)?;
    let cubic_times3 = int(4) * &km1 * &km1 * &km1 + int(2) * &km1;
    debug_assert!((&cubic_times3 % int(3)).is_zero());
    Ok(dfd_h
        + int(4) * &km1 * dfv
        + &tau
            * (cubic_times3 / int(3)
                + int(4 * h.m() as i64) * int((k1 * k1 + k2 * k2) as i64)))
}

/// dᵀFd of the graph obtained from h by attaching a cycle of length k at v:
/// closed form, must match the direct computation.
pub fn dfd_with_cycle(h: &Graph, v: usize, k: usize) -> Result<Int> {
    h.check_vertex(v)?;
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle attachment needs k >= 3, got {k}"
        )));
    }
    let tau = forest::tau(h)?;
    let kk = int(k as i64);
    let prod = (&kk + int(2 * h.m() as i64)) * (&kk - Int::one()) * &kk * (&kk + Int::one());
    debug_assert!(((int(2) * &tau * &prod) % int(3)).is_zero());
    Ok(&kk * forest::dfd(h)?
        + int(4) * &kk * &kk * forest::dvec_dot_fv(h, v)?
        + int(2) * &tau * prod / int(3))
}

/// The 4-vertex fixture used by the paradoxical-construction example:
/// triangle 0-1-2 with a pendent vertex 3 on vertex 1; the distinguished
/// vertex is 0 (a degree-2 triangle vertex, the unique φ = 118 spot up to
/// the 0↔2 symmetry).
pub fn triangle_with_pendant() -> (Graph, usize) {
    let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3)]).unwrap();
    (g, 0)
}

pub fn sign(r: &Rat) -> Ordering {
    r.cmp(&Rat::zero())
}
