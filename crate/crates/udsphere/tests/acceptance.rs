//! End-to-end acceptance suite: exact counts on the generated extremal
//! configurations, growth-exponent fits against the predicted tables, and
//! the exhaustive linear-program certificates, each at its pinned tolerance.
//!
//! Heavy path-count series are computed once and shared between the tests
//! that read them.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use udsphere::counting::count_closed_traversals;
use udsphere::error::FitError;
use udsphere::scaling::upper_exponent;
use udsphere::{
    antipodal_free_path_exponent, bipartite_r3_construction, build_prescribed_graph,
    build_sphere_graph, count_cycles, count_paths, count_prescribed_copies, default_heights,
    fit_exponent, grid_incidence_scene, lift_scene, predicted_exponent, quadratic_c4_config,
    run_scaling, verify_half_k_bound, ConstructionKind, CountKind, Engine, ExponentFit,
    RegularGraphSpec, ScalingRun, UnitDistanceGraph, DEFAULT_BUDGET,
};

const PATTERN_SLOPE_TOLERANCE: f64 = 0.05;
const FULL_SLOPE_TOLERANCE: f64 = 0.25;
const CEILING_TOLERANCE: f64 = 0.25;

/// Per-circle budgets m for the path-family grids (free sets have m − 2
/// points). Sized so every closed-form estimate stays below the budget.
const PATH_GRIDS: &[(usize, &[u64])] = &[
    (4, &[42, 62, 92, 137]),
    (5, &[32, 47, 70, 104]),
    (6, &[32, 47, 70, 104]),
    (8, &[18, 26, 38, 56]),
    (9, &[26, 38, 56, 83]),
    (10, &[12, 17, 25, 37]),
];

/// Rich-set grid sides for the enhanced construction.
const ENHANCED_GRID: &[u64] = &[2, 3, 4, 5];

fn fitted(kind: ConstructionKind, mode: CountKind, grid: &[u64]) -> (ScalingRun, ExponentFit) {
    let run = run_scaling(kind, mode, Engine::Optimized, grid, DEFAULT_BUDGET)
        .unwrap_or_else(|e| panic!("scaling run failed for {kind:?}/{mode:?}: {e}"));
    let fit = fit_exponent(&run).expect("every grid has at least 3 points");
    (run, fit)
}

fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("table exponents are small")
}

struct PathFits {
    /// (k, pattern fit, full fit) for the plain path family.
    plain: Vec<(usize, (ScalingRun, ExponentFit), (ScalingRun, ExponentFit))>,
    enhanced_pattern: (ScalingRun, ExponentFit),
    enhanced_full: (ScalingRun, ExponentFit),
}

static PATH_FITS: OnceLock<PathFits> = OnceLock::new();

fn path_fits() -> &'static PathFits {
    PATH_FITS.get_or_init(|| {
        let plain = PATH_GRIDS
            .iter()
            .map(|&(k, grid)| {
                let kind = ConstructionKind::SpherePath { k };
                (
                    k,
                    fitted(kind, CountKind::Pattern, grid),
                    fitted(kind, CountKind::Paths, grid),
                )
            })
            .collect();
        let kind = ConstructionKind::SphereEnhanced { k: 7 };
        PathFits {
            plain,
            enhanced_pattern: fitted(kind, CountKind::Pattern, ENHANCED_GRID),
            enhanced_full: fitted(kind, CountKind::Paths, ENHANCED_GRID),
        }
    })
}

#[test]
fn quadratic_four_cycle_counts_and_slope() {
    // Exact counts: C(n−2, 2) four-cycles, the small sizes against the
    // reference engine, the large one against the closed form.
    let expected = [(4usize, 1u64), (5, 3), (10, 28), (50, 1128)];
    for &(n, want) in &expected {
        let cfg = quadratic_c4_config(n).unwrap();
        let g = build_sphere_graph(&cfg).unwrap();
        let engine = if n <= 10 { Engine::Naive } else { Engine::Optimized };
        let got = count_cycles(&g, 4, engine).unwrap();
        assert_eq!(got, BigUint::from(want), "four-cycles at n = {n}");
        let closed = (n as u64 - 2) * (n as u64 - 3) / 2;
        assert_eq!(got, BigUint::from(closed), "closed form at n = {n}");
    }

    let (run, fit) = fitted(
        ConstructionKind::QuadraticC4,
        CountKind::Cycles,
        &[50, 100, 200, 400],
    );
    assert!(
        (fit.slope - 2.0).abs() <= PATTERN_SLOPE_TOLERANCE,
        "quadratic slope {} not within {PATTERN_SLOPE_TOLERANCE} of 2",
        fit.slope
    );
    assert_eq!(run.series[0].1, BigUint::from(1128u32));
    println!(
        "[PASS] quadratic four-cycles: counts 1, 3, 28, 1128 exact; slope {:.4} = 2 ± {}",
        fit.slope, PATTERN_SLOPE_TOLERANCE
    );
}

#[test]
fn path_exponents_follow_the_five_periodic_pattern() {
    let fits = path_fits();
    for (k, (_, pattern_fit), (full_run, full_fit)) in &fits.plain {
        let target = rational_f64(&predicted_exponent(CountKind::Pattern, *k).unwrap());
        assert!(
            (pattern_fit.slope - target).abs() <= PATTERN_SLOPE_TOLERANCE,
            "k = {k}: pattern slope {} not within {PATTERN_SLOPE_TOLERANCE} of {target}",
            pattern_fit.slope
        );
        assert!(
            (full_fit.slope - target).abs() <= FULL_SLOPE_TOLERANCE,
            "k = {k}: full path slope {} (over {}) not within {FULL_SLOPE_TOLERANCE} of {target}",
            full_fit.slope,
            full_run.x_label
        );
        println!(
            "[PASS] paths k={k}: pattern slope {:.4} (target {target} ± {PATTERN_SLOPE_TOLERANCE}), \
             full slope {:.4} (± {FULL_SLOPE_TOLERANCE})",
            pattern_fit.slope, full_fit.slope
        );
    }
    // The rich-pair enhancement for k = 7 carries the extra third.
    let target = rational_f64(&predicted_exponent(CountKind::Paths, 7).unwrap());
    let slope = fits.enhanced_pattern.1.slope;
    assert!(
        (slope - target).abs() <= FULL_SLOPE_TOLERANCE,
        "enhanced k = 7 slope {slope} not within {FULL_SLOPE_TOLERANCE} of {target}"
    );
    println!(
        "[PASS] paths k=7 (enhanced): designated slope {:.4} (target {:.4} ± {FULL_SLOPE_TOLERANCE})",
        slope, target
    );
}

#[test]
fn no_fitted_slope_beats_its_upper_exponent() {
    let mut checked = Vec::new();
    let fits = path_fits();
    for (k, pattern, full) in &fits.plain {
        checked.push((format!("paths k={k} (pattern)"), pattern.1.slope, CountKind::Pattern, *k));
        checked.push((format!("paths k={k} (full)"), full.1.slope, CountKind::Paths, *k));
    }
    checked.push((
        "paths k=7 enhanced (pattern)".into(),
        fits.enhanced_pattern.1.slope,
        CountKind::Pattern,
        7,
    ));
    checked.push((
        "paths k=7 enhanced (full)".into(),
        fits.enhanced_full.1.slope,
        CountKind::Paths,
        7,
    ));

    // Cycle families, including the lengths whose sharp exponent is open.
    let cycle_grids: &[(usize, &[u64])] = &[
        (5, &[32, 47, 70, 104]),
        (6, &[22, 32, 47, 70]),
        (7, &[2, 3, 4, 5]),
        (10, &[12, 17, 25, 37]),
    ];
    for &(k, grid) in cycle_grids {
        let (_, fit) = fitted(ConstructionKind::SphereCycle { k }, CountKind::Cycles, grid);
        checked.push((format!("cycles k={k}"), fit.slope, CountKind::Cycles, k));
    }
    let (_, fit) = fitted(
        ConstructionKind::QuadraticC4,
        CountKind::Cycles,
        &[50, 100, 200, 400],
    );
    checked.push(("cycles k=4 (quadratic)".into(), fit.slope, CountKind::Cycles, 4));
    let (_, fit) = fitted(
        ConstructionKind::BipartiteK33,
        CountKind::PrescribedCopies,
        &[47, 97, 197, 397],
    );
    checked.push(("prescribed K33 copies".into(), fit.slope, CountKind::PrescribedCopies, 6));
    let (_, fit) = fitted(
        ConstructionKind::GridIncidence,
        CountKind::Incidences,
        &[4, 5, 6, 7, 8, 9, 10],
    );
    checked.push(("grid incidences".into(), fit.slope, CountKind::Incidences, 2));

    for (name, slope, mode, k) in &checked {
        let ceiling = rational_f64(&upper_exponent(*mode, *k)) + CEILING_TOLERANCE;
        assert!(
            *slope <= ceiling,
            "{name}: slope {slope} exceeds the ceiling {ceiling}"
        );
    }
    println!(
        "[PASS] upper-bound consistency: {} fitted slopes all below their ceilings (+{})",
        checked.len(),
        CEILING_TOLERANCE
    );
}

#[test]
fn incidence_duality_counts_are_exact() {
    for n in 1..=10usize {
        let scene = grid_incidence_scene(n).unwrap();
        let want = (n as u64).pow(4);
        assert_eq!(scene.incidence_count(), want, "incidences at N = {n}");
        assert_eq!(
            udsphere::graph::lifted_cross_pair_count(&scene),
            want,
            "lifted orthogonal cross-pairs at N = {n}"
        );
        // The lift is a bijection on incidences: cross-part adjacency in the
        // lifted point set equals the incidence relation pair by pair.
        let (points, lines) = lift_scene(&scene);
        for (pi, p) in points.iter().enumerate() {
            for (lj, l) in lines.iter().enumerate() {
                let incident = scene.lines[lj].contains(&scene.points[pi]);
                assert_eq!(
                    udsphere::is_unit_distance_sphere(p, l),
                    incident,
                    "duality mismatch at N = {n}, point {pi}, line {lj}"
                );
            }
        }
    }
    let (_, fit) = fitted(
        ConstructionKind::GridIncidence,
        CountKind::Incidences,
        &[4, 5, 6, 7, 8, 9, 10],
    );
    assert!(
        (fit.slope - 4.0 / 3.0).abs() <= 1e-6,
        "incidence slope {} not within 1e-6 of 4/3",
        fit.slope
    );
    println!(
        "[PASS] incidence duality: N^4 exact for N = 1..10 on both sides; slope {:.9} = 4/3 ± 1e-6",
        fit.slope
    );
}

#[test]
fn cubic_graph_programs_certify_half_k() {
    let cases = [
        ("K4", RegularGraphSpec::complete(4)),
        ("K33", RegularGraphSpec::complete_bipartite(3, 3)),
        ("prism", RegularGraphSpec::prism()),
    ];
    for (name, graph) in &cases {
        let report = verify_half_k_bound(graph).unwrap();
        assert!(
            report.violations.is_empty(),
            "{name}: {} pairs exceed k/2",
            report.violations.len()
        );
        assert!(
            report.closed_form_always_feasible,
            "{name}: closed-form point infeasible somewhere"
        );
        assert!(
            report.closed_form_decomposition_holds,
            "{name}: closed-form objective does not match its class decomposition"
        );
        let half_k = BigRational::new((graph.vertex_count as i64).into(), 2.into());
        assert_eq!(report.xi_bound, half_k);
        assert!(report.max_xi <= half_k, "{name}: max xi above k/2");
        if *name == "K4" {
            assert_eq!(report.max_xi, BigRational::from_integer(2.into()));
            let argmax = report.argmax.as_ref().expect("K4 sweep finds a maximum");
            assert!(argmax.h_edges.is_empty());
            assert_eq!(argmax.lambda, vec![3, 3, 3, 3]);
        }
        println!(
            "[PASS] exact programs for {name}: {} realizable pairs, max xi = {} <= {}/2, \
             closed form feasible with exact class decomposition",
            report.pairs_realizable, report.max_xi, graph.vertex_count
        );
    }
}

#[test]
fn bipartite_prescribed_copies_match_falling_factorials() {
    let spec = RegularGraphSpec::complete_bipartite(3, 3);
    let one = BigRational::one();
    for n in [20usize, 40, 80] {
        let cfg = bipartite_r3_construction(6, n, &default_heights(6), &one).unwrap();
        let g = build_prescribed_graph(&cfg, &spec).unwrap();
        let got = count_prescribed_copies(&g, &spec).unwrap();
        let c = (n - 3) as u64;
        let want = BigUint::from(c * (c - 1) * (c - 2));
        assert_eq!(got, want, "prescribed copies at n = {n}");
    }
    let (_, fit) = fitted(
        ConstructionKind::BipartiteK33,
        CountKind::PrescribedCopies,
        &[47, 97, 197, 397],
    );
    assert!(
        (fit.slope - 3.0).abs() <= PATTERN_SLOPE_TOLERANCE,
        "prescribed-copy slope {} not within {PATTERN_SLOPE_TOLERANCE} of 3",
        fit.slope
    );
    println!(
        "[PASS] prescribed copies: falling factorials exact at n = 20, 40, 80; slope {:.4} = 3 ± {}",
        fit.slope, PATTERN_SLOPE_TOLERANCE
    );
}

fn random_graph(rng: &mut ChaCha8Rng) -> UnitDistanceGraph {
    let n = rng.gen_range(4..=20usize);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(0.2) {
                edges.push((u, v));
            }
        }
    }
    UnitDistanceGraph::from_abstract_edges(n, edges)
}

/// A random partial matching of non-adjacent vertex pairs, standing in for
/// antipodal side data on abstract graphs.
fn random_antipodal(g: UnitDistanceGraph, rng: &mut ChaCha8Rng) -> UnitDistanceGraph {
    let n = g.vertex_count();
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    for u in 0..n {
        if used[u] || !rng.gen_bool(0.5) {
            continue;
        }
        if let Some(v) = (u + 1..n).find(|&v| !used[v] && !g.has_edge(u, v)) {
            used[u] = true;
            used[v] = true;
            pairs.push((u, v));
        }
    }
    g.with_antipodal_pairs(pairs).unwrap()
}

#[test]
fn counting_engines_agree_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2026);
    let mut graphs = 0u32;
    while graphs < 200 {
        let g = random_antipodal(random_graph(&mut rng), &mut rng);
        for k in 1..=8usize {
            let naive = count_paths(&g, k, Engine::Naive).unwrap();
            let fast = count_paths(&g, k, Engine::Optimized).unwrap();
            assert_eq!(naive.ordered_paths, fast.ordered_paths, "paths k = {k}");
            assert_eq!(naive.unordered_paths, fast.unordered_paths);
            let naive_free =
                udsphere::count_antipodal_free_paths(&g, k, Engine::Naive).unwrap();
            let fast_free =
                udsphere::count_antipodal_free_paths(&g, k, Engine::Optimized).unwrap();
            assert_eq!(naive_free, fast_free, "antipodal-free paths k = {k}");
            if k >= 3 {
                let naive_cycles = count_cycles(&g, k, Engine::Naive).unwrap();
                let fast_cycles = count_cycles(&g, k, Engine::Optimized).unwrap();
                assert_eq!(naive_cycles, fast_cycles, "cycles k = {k}");
                // Dihedral count times 2k is the closed traversal count.
                assert_eq!(
                    naive_cycles * BigUint::from(2 * k),
                    count_closed_traversals(&g, k),
                    "traversal identity k = {k}"
                );
            }
        }
        graphs += 1;
    }
    println!("[PASS] engine agreement: 200 seeded random graphs, all counts k <= 8 bit-exact");
}

#[test]
fn antipodal_free_counts_obey_planar_exponents() {
    let mut lines = Vec::new();
    for &(k, grid) in PATH_GRIDS {
        let (run, fit) = fitted(
            ConstructionKind::SpherePath { k },
            CountKind::AntipodalFreePaths,
            grid,
        );
        let ceiling = rational_f64(&antipodal_free_path_exponent(k)) + FULL_SLOPE_TOLERANCE;
        assert!(
            fit.slope <= ceiling,
            "k = {k}: antipodal-free slope {} above {ceiling}",
            fit.slope
        );
        run.validate().expect("positive, increasing series");
        lines.push(format!("k={k}: {:.3} <= {:.3}", fit.slope, ceiling));
    }
    let (_, fit) = fitted(
        ConstructionKind::SphereEnhanced { k: 7 },
        CountKind::AntipodalFreePaths,
        ENHANCED_GRID,
    );
    let ceiling = rational_f64(&antipodal_free_path_exponent(7)) + FULL_SLOPE_TOLERANCE;
    assert!(
        fit.slope <= ceiling,
        "enhanced k = 7: antipodal-free slope {} above {ceiling}",
        fit.slope
    );
    lines.push(format!("k=7 (enhanced): {:.3} <= {:.3}", fit.slope, ceiling));
    println!("[PASS] antipodal-free diagnostics: {}", lines.join("; "));
}

#[test]
fn budget_refusals_are_loud() {
    let err = run_scaling(
        ConstructionKind::SpherePath { k: 10 },
        CountKind::Pattern,
        Engine::Optimized,
        &[60],
        DEFAULT_BUDGET,
    )
    .unwrap_err();
    assert!(matches!(err, FitError::BudgetExceeded { size: 60, .. }));
    println!("[PASS] oversized grids are refused before any counting starts");
}
