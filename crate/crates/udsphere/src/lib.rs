//! Exact experiment workbench for unit-distance structures on the sphere of
//! radius 1/√2 and for prescribed-length subgraphs in 3-space.
//!
//! On this sphere two points are at unit distance exactly when their
//! position vectors are orthogonal, so everything here runs on exact integer
//! and rational arithmetic: extremal configurations are generated with
//! rational coordinates, paths/cycles/subgraph copies are counted exactly by
//! two independent engines, growth exponents are fitted on log–log series,
//! and the exponent-allocation linear programs for 3-regular pattern graphs
//! are solved by an exact rational simplex with verified certificates.

pub mod constructions;
pub mod counting;
pub mod error;
pub mod geom;
pub mod graph;
pub mod io;
pub mod lp;
pub mod scaling;

pub use constructions::{
    bipartite_r3_construction, cycle_construction, cycle_construction_sized,
    default_heights, enhanced_path_construction, enhanced_path_construction_sized,
    grid_incidence_scene, lift_scene, path_construction, path_construction_sized,
    quadratic_c4_config, rich_q_set, BipartiteR3Config, PatternData, PatternKind,
    PatternSlot, PlanarScene, PointLabel, RichSet, SphereConfig,
};
pub use counting::{
    closed_form_pattern_count, count_antipodal_free_paths, count_cycles, count_paths,
    count_pattern_paths, count_prescribed_copies, count_subgraph_copies, full_report,
    CountReport, Engine, RegularGraphSpec,
};
pub use geom::{
    common_unit_neighbors, is_antipodal, is_unit_distance_sphere, lift_line, lift_point,
    squared_distance_r3, CommonNeighbors, Direction, PlanarLine, PlanarPoint, R3Point,
};
pub use graph::{
    build_incidence_graph, build_prescribed_graph, build_r3_graph, build_sphere_graph,
    UnitDistanceGraph,
};
pub use lp::{
    base_case_check, builtin_graph, class_counts, closed_form_x, is_realizable, solve_xi,
    verify_half_k_bound, CertificateReport, LpOutcome, TypePair,
};
pub use scaling::{
    antipodal_free_path_exponent, bound_table, fit_exponent, fit_with_bounds,
    predicted_exponent, run_scaling, BoundRow, ConstructionKind, CountKind, ExponentFit,
    ScalingRun, DEFAULT_BUDGET,
};
