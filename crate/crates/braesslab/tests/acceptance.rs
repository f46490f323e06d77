//! Acceptance suite: one test per headline guarantee, each printing a
//! single pass/fail line and enforcing its runtime budget. Random corpora
//! are seeded, so every run checks the same graphs.

use std::collections::BTreeSet;
use std::time::Instant;

use num::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use braesslab::asymptotics::{self, FamilySpec, VertexPolicy};
use braesslab::braess::{self, triangle_with_pendant};
use braesslab::exact::{int, Rat};
use braesslab::forest;
use braesslab::graph::{identify, FamilyKind, Graph};
use braesslab::kemeny;
use braesslab::oracle;

fn finish(name: &str, t: Instant, budget_s: f64) {
    let e = t.elapsed().as_secs_f64();
    assert!(
        e < budget_s,
        "[FAIL] {name}: exceeded runtime budget ({e:.2}s > {budget_s}s)"
    );
    println!("[PASS] {name} ({e:.2}s, budget {budget_s}s)");
}

/// Uniform random labelled tree (Prüfer decoding) plus up to `extra`
/// random chords; always connected.
fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let tree = if n == 1 {
        Graph::trivial()
    } else if n == 2 {
        Graph::new(2, [(0, 1)]).unwrap()
    } else {
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let mut deg = vec![1usize; n];
        for &a in &seq {
            deg[a] += 1;
        }
        let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        let mut edges = Vec::with_capacity(n - 1);
        for &a in &seq {
            let leaf = *leaves.iter().next().unwrap();
            leaves.remove(&leaf);
            edges.push((leaf.min(a), leaf.max(a)));
            deg[a] -= 1;
            if deg[a] == 1 {
                leaves.insert(a);
            }
        }
        let last: Vec<usize> = leaves.into_iter().collect();
        edges.push((last[0].min(last[1]), last[0].max(last[1])));
        Graph::new(n, edges).unwrap()
    };
    let mut g = tree;
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u.min(v), u.max(v)) {
            g = g.with_edge(u.min(v), u.max(v)).unwrap();
        }
    }
    g
}

#[test]
fn c01_star6_twin_path_closure_raises_kemeny_by_one_sixth() {
    let t = Instant::now();
    let s6 = Graph::star(6).unwrap();
    let ev = braess::is_paradoxical_at(&s6, 0, 1, 2, true).unwrap();
    assert!(ev.breakdown.verdict());
    let delta = ev.delta.unwrap();
    assert_eq!(delta, Rat::new(int(1), int(6)));
    assert!((delta.to_f64().unwrap() - 0.1667).abs() < 5e-4);
    finish(
        "c01 closing twin paths (1,2) on a 6-star raises Kemeny's constant by exactly 1/6",
        t,
        1.0,
    );
}

#[test]
fn c02_closed_form_battery_for_the_four_families() {
    let t = Instant::now();
    for n in 2..=10usize {
        let ni = n as i64;

        let k = Graph::complete(n).unwrap();
        let expect_dfd =
            int(2) * int(ni).pow(n as u32 - 2) * int((ni - 1).pow(3));
        assert_eq!(forest::dfd(&k).unwrap(), expect_dfd);
        // 2n^{n-3}(n-1)^2, written over n so n=2 stays integral.
        let expect_df =
            int(2) * int(ni).pow(n as u32 - 2) * int((ni - 1).pow(2)) / int(ni);
        for v in 0..n {
            assert_eq!(forest::dvec_dot_fv(&k, v).unwrap(), expect_df);
        }

        if n >= 3 {
            let c = Graph::cycle(n).unwrap();
            assert_eq!(
                forest::dfd(&c).unwrap(),
                int(2 * (ni - 1) * ni * ni * (ni + 1)) / int(3)
            );
            for v in 0..n {
                assert_eq!(
                    forest::dvec_dot_fv(&c, v).unwrap(),
                    int((ni - 1) * ni * (ni + 1)) / int(3)
                );
            }
        }

        let p = Graph::path(n).unwrap();
        assert_eq!(
            forest::dfd(&p).unwrap(),
            int(4 * (ni - 1).pow(3) + 2 * (ni - 1)) / int(3)
        );
        for v in 0..n {
            let vi = v as i64;
            assert_eq!(
                forest::dvec_dot_fv(&p, v).unwrap(),
                int(vi * vi + (ni - 1 - vi) * (ni - 1 - vi))
            );
        }

        let s = Graph::star(n).unwrap();
        assert_eq!(forest::dfd(&s).unwrap(), int(2 * (ni - 1) * (2 * ni - 3)));
        assert_eq!(forest::dvec_dot_fv(&s, n - 1).unwrap(), int(ni - 1));
        if n >= 3 {
            for v in 0..n - 1 {
                assert_eq!(forest::dvec_dot_fv(&s, v).unwrap(), int(3 * ni - 5));
            }
        }
    }
    finish(
        "c02 exact closed forms for dFd and d.f^v on complete/cycle/path/star, n = 2..10",
        t,
        5.0,
    );
}

#[test]
fn c03_family_threshold_table() {
    let t = Instant::now();
    let complete =
        FamilySpec::builtin(FamilyKind::Complete, VertexPolicy::Fixed(0), None).unwrap();
    let cycle = FamilySpec::builtin(FamilyKind::Cycle, VertexPolicy::Fixed(0), None).unwrap();

    let rep = asymptotics::threshold_scan(&complete, 1, 2, 2, 20).unwrap();
    assert_eq!(rep.first_n_true, Some(7));
    let rep = asymptotics::threshold_scan(&complete, 2, 2, 2, 20).unwrap();
    assert_eq!(rep.first_n_true, Some(13));
    let rep = asymptotics::threshold_scan(&cycle, 1, 2, 3, 20).unwrap();
    assert_eq!(rep.first_n_true, Some(7));
    assert_eq!(rep.boundary_ns, vec![6]);
    let rep = asymptotics::threshold_scan(&cycle, 2, 2, 3, 20).unwrap();
    assert_eq!(rep.first_n_true, Some(10));
    assert_eq!(rep.boundary_ns, vec![9]);

    assert_eq!(
        asymptotics::star_pendent_thresholds().unwrap(),
        vec![
            ((1, 1), Some(2)),
            ((0, 2), Some(12)),
            ((1, 2), Some(6)),
            ((2, 2), Some(9)),
            ((2, 3), Some(47)),
        ]
    );
    finish(
        "c03 paradoxicality onset orders for complete/cycle/star families match the known table",
        t,
        30.0,
    );
}

#[test]
fn c04_anchored_forest_matrix_fixture_on_p6() {
    let t = Instant::now();
    let q = forest::q_matrix(&Graph::path(6).unwrap(), 2).unwrap();
    let expect: [[i64; 6]; 6] = [
        [2, 1, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 1],
        [0, 0, 0, 1, 2, 2],
        [0, 0, 0, 1, 2, 3],
    ];
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(q[i][j], int(expect[i][j]), "entry ({i},{j})");
        }
    }
    finish(
        "c04 anchored 2-forest matrix of the 6-path matches the hand-computed fixture",
        t,
        1.0,
    );
}

fn corpus() -> Vec<Graph> {
    let mut graphs = oracle::connected_catalogue(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    while graphs.len() < 996 + 200 {
        let n = rng.gen_range(8..=10);
        let extra = rng.gen_range(0..=5);
        graphs.push(random_connected(&mut rng, n, extra));
    }
    graphs
}

#[test]
fn c05_determinant_pipeline_agrees_with_enumeration_oracles() {
    let t = Instant::now();
    let graphs = corpus();
    assert_eq!(graphs.len(), 1196);
    for g in &graphs {
        let data = forest::forest_data(g).unwrap();
        assert_eq!(
            data.tau,
            oracle::enumerate_spanning_trees(g, oracle::DEFAULT_MAX_N).unwrap()
        );
        assert_eq!(
            data.f,
            oracle::forest_matrix_bruteforce(g, oracle::DEFAULT_MAX_N).unwrap()
        );
        for v in 0..g.n() {
            assert_eq!(
                forest::q_matrix(g, v).unwrap(),
                oracle::q_matrix_bruteforce(g, v, oracle::DEFAULT_MAX_N).unwrap()
            );
        }
        if g.n() >= 2 {
            assert_eq!(
                kemeny::kemeny_constant(g).unwrap().exact,
                oracle::kemeny_bruteforce(g, oracle::DEFAULT_MAX_N).unwrap()
            );
        }
    }
    finish(
        "c05 tau, F, anchored matrices, and Kemeny agree with enumeration on 996 catalogued + 200 random graphs",
        t,
        600.0,
    );
}

#[test]
fn c06_polynomial_criterion_sign_equals_exact_kemeny_difference() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut combos = 0usize;
    for _ in 0..100 {
        let n = rng.gen_range(2..=6);
        let extra = rng.gen_range(0..=4);
        let g = random_connected(&mut rng, n, extra);
        for v in 0..g.n() {
            for k1 in 0..=5usize {
                for k2 in 0..=5usize {
                    let sigma = k1 + k2;
                    if !(2..=5).contains(&sigma) {
                        continue;
                    }
                    // Verification mode recomputes the exact Kemeny
                    // difference on the built graphs and errors on any
                    // sign or value mismatch with the polynomial route.
                    let ev = braess::is_paradoxical_at(&g, v, k1, k2, true).unwrap();
                    let delta = ev.delta.unwrap();
                    assert_eq!(
                        ev.breakdown.phi.is_positive(),
                        delta.is_positive()
                    );
                    assert_eq!(ev.breakdown.phi.is_zero(), delta.is_zero());
                    combos += 1;
                }
            }
        }
    }
    assert!(combos > 5000, "corpus unexpectedly small: {combos}");
    finish(
        "c06 sign of the twin-path polynomial equals the sign of the exact Kemeny difference (incl. zero)",
        t,
        600.0,
    );
}

#[test]
fn c07_closing_two_single_pendents_is_always_paradoxical() {
    let t = Instant::now();
    for g in corpus() {
        if g.n() < 2 {
            continue;
        }
        for v in 0..g.n() {
            assert!(
                braess::big_phi(&g, v, 1, 1).unwrap().verdict(),
                "(1,1) verdict false at vertex {v} of {}",
                g.to_edge_list().replace('\n', "; ")
            );
        }
    }
    finish(
        "c07 the (1,1) twin-path closure is paradoxical at every vertex of every corpus graph",
        t,
        600.0,
    );
}

#[test]
fn c08_pendant_path_augmentation_construction() {
    let t = Instant::now();
    let (h, w) = triangle_with_pendant();
    assert_eq!(braess::phi_v(&h, w).unwrap(), int(118));

    let path = FamilySpec::builtin(FamilyKind::Path, VertexPolicy::Pendent, None).unwrap();
    let (n, _) = asymptotics::augment_until_paradoxical(&h, w, &path, 1, 2, 30)
        .unwrap()
        .unwrap();
    assert_eq!(n, 5);

    for n in 2..=20usize {
        let p = Graph::path(n).unwrap();
        let (g, _) = identify(&h, w, &p, 0).unwrap();
        let ni = n as i64;
        assert_eq!(
            braess::phi_v(&g, w).unwrap(),
            int(118) + int(2 * (ni - 1) * (2 * ni - 1) * (2 * ni - 3))
        );
    }
    finish(
        "c08 gluing growing paths onto the 118-fixture follows the closed form and first succeeds at order 5",
        t,
        5.0,
    );
}

#[test]
fn c09_tree_machinery_bounds_and_decompositions() {
    let t = Instant::now();

    // Global lower bound with its exact equality class.
    for tr in oracle::tree_catalogue(8).unwrap() {
        if tr.n() < 2 {
            continue;
        }
        let bound = int((tr.n() - 1) as i64);
        for v in 0..tr.n() {
            let dqd = braess::dqd(&tr, v).unwrap();
            assert!(dqd >= bound);
            let is_star_centre = tr.degree_vector()[v] == tr.n() - 1;
            assert_eq!(dqd == bound, is_star_centre);
        }
    }

    // Branch-profile lower bound: attained exactly by broom-shaped branches.
    let mut profiles: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for tr in oracle::tree_catalogue(8).unwrap() {
        if tr.n() < 2 {
            continue;
        }
        for v in 0..tr.n() {
            let prof = tr.branches_at(v).unwrap();
            let bound = asymptotics::branch_min_dqd(&prof).unwrap();
            let dqd = braess::dqd(&tr, v).unwrap();
            assert!(dqd >= bound);
            let all_min = prof.branches.iter().all(|b| {
                let (sub, map) = tr.induced(&b.vertices).unwrap();
                let v_new = map.iter().position(|&old| old == v).unwrap();
                asymptotics::is_min_branch_shape(&sub, v_new).unwrap()
            });
            assert_eq!(dqd == bound, all_min);
            profiles.insert(
                prof.branches
                    .iter()
                    .map(|b| (b.size, b.eccentricity))
                    .collect(),
            );
        }
    }
    // Every observed profile is attained by gluing the canonical minimisers.
    for profile in &profiles {
        let mut acc = Graph::trivial();
        for &(n, e) in profile {
            let (b, bv) = asymptotics::min_branch_reference(n, e).unwrap();
            acc = identify(&acc, 0, &b, bv).unwrap().0;
        }
        let prof = acc.branches_at(0).unwrap();
        assert_eq!(
            braess::dqd(&acc, 0).unwrap(),
            asymptotics::branch_min_dqd(&prof).unwrap()
        );
    }

    // Pendant-path decomposition identity on every tree of order <= 9.
    for tr in oracle::tree_catalogue(9).unwrap() {
        if tr.n() < 2 {
            continue;
        }
        for v in 0..tr.n() {
            if tr.degree_vector()[v] != 1 {
                continue;
            }
            assert_eq!(
                asymptotics::pendant_decomposition_dqd(&tr, v).unwrap(),
                braess::dqd(&tr, v).unwrap()
            );
        }
    }

    assert_eq!(asymptotics::broom_dqd(6, 3).unwrap(), int(133));
    assert_eq!(
        braess::dqd(&Graph::broom(6, 3).unwrap(), 0).unwrap(),
        int(133)
    );
    finish(
        "c09 tree lower bounds, broom minimisers, and the pendant-path decomposition hold exhaustively",
        t,
        600.0,
    );
}

#[test]
fn c10_ratio_trends_along_the_built_in_families() {
    let t = Instant::now();

    let ratios = |f: &dyn Fn(usize) -> (Graph, usize), lo: usize, hi: usize| -> Vec<Rat> {
        (lo..=hi)
            .map(|n| {
                let (g, v) = f(n);
                asymptotics::ratio(&g, v).unwrap()
            })
            .collect()
    };

    let complete = ratios(&|n| (Graph::complete(n).unwrap(), 0), 5, 30);
    assert!(complete.windows(2).all(|w| w[0] > w[1]), "complete family not strictly decreasing");

    let star = ratios(&|n| (Graph::star(n).unwrap(), 0), 100, 200);
    let (lo, hi) = (Rat::new(int(19), int(10)), Rat::from(int(2)));
    assert!(star.iter().all(|r| *r > lo && *r < hi));
    assert!(star.windows(2).all(|w| w[0] < w[1]), "star family not strictly increasing");

    let cycle = ratios(&|n| (Graph::cycle(n).unwrap(), 0), 5, 200);
    assert!(cycle.windows(2).all(|w| w[0] < w[1]), "cycle family not strictly increasing");

    let path = ratios(&|n| (Graph::path(n).unwrap(), 0), 5, 200);
    assert!(path.windows(2).all(|w| w[0] < w[1]), "path family not strictly increasing");

    finish(
        "c10 exact ratio trends: complete decreasing; star pendent in (1.9,2) increasing; cycle/path increasing to n=200",
        t,
        60.0,
    );
}
