//! Scaling runs and growth-exponent fits: build a construction across a size
//! grid, count exactly, fit the log–log slope, and compare against the
//! predicted exponent tables.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::constructions::{
    bipartite_r3_construction, cycle_construction_sized, default_heights,
    enhanced_path_construction_sized, free_slot_count, grid_incidence_scene,
    path_construction_sized, quadratic_c4_config, PatternKind,
};
use crate::counting::{
    closed_form_pattern_count, count_antipodal_free_paths, count_cycles, count_paths,
    count_pattern_paths, count_prescribed_copies, Engine,
    RegularGraphSpec,
};
use crate::error::FitError;
use crate::graph::{build_prescribed_graph, build_sphere_graph};

/// Which quantity a scaling run counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountKind {
    Paths,
    AntipodalFreePaths,
    Cycles,
    Pattern,
    Incidences,
    PrescribedCopies,
}

impl CountKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountKind::Paths => "paths",
            CountKind::AntipodalFreePaths => "antipodal-free-paths",
            CountKind::Cycles => "cycles",
            CountKind::Pattern => "pattern",
            CountKind::Incidences => "incidences",
            CountKind::PrescribedCopies => "prescribed-copies",
        }
    }
}

/// The constructions the lab can scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    /// Size parameter: per-circle budget m = q + 2.
    SpherePath { k: usize },
    /// Size parameter: incidence-grid side of the rich set.
    SphereEnhanced { k: usize },
    /// Size parameter: per-circle budget, or grid side for k ≡ 2 (mod 5).
    SphereCycle { k: usize },
    /// Size parameter: total point count n.
    QuadraticC4,
    /// Size parameter: grid side N; counts incidences against 3N³ objects.
    GridIncidence,
    /// Size parameter: circle pool size c (n = c + 3); counts prescribed
    /// K_{3,3} tuples.
    BipartiteK33,
}

impl ConstructionKind {
    pub fn id(&self) -> String {
        match self {
            ConstructionKind::SpherePath { k } => format!("sphere-path-k{k}"),
            ConstructionKind::SphereEnhanced { k } => format!("sphere-enhanced-k{k}"),
            ConstructionKind::SphereCycle { k } => format!("sphere-cycle-k{k}"),
            ConstructionKind::QuadraticC4 => "quadratic-c4".into(),
            ConstructionKind::GridIncidence => "grid-incidence".into(),
            ConstructionKind::BipartiteK33 => "r3-bipartite-k33".into(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            ConstructionKind::SpherePath { k }
            | ConstructionKind::SphereEnhanced { k }
            | ConstructionKind::SphereCycle { k } => *k,
            ConstructionKind::QuadraticC4 => 4,
            ConstructionKind::GridIncidence => 2,
            ConstructionKind::BipartiteK33 => 6,
        }
    }

    /// Grid and bipartite runs count one fixed quantity; everything else
    /// counts what the caller asked for.
    fn effective_mode(&self, mode: CountKind) -> CountKind {
        match self {
            ConstructionKind::GridIncidence => CountKind::Incidences,
            ConstructionKind::BipartiteK33 => CountKind::PrescribedCopies,
            _ => mode,
        }
    }

    /// What the abscissa of the series measures. Full path counts are read
    /// against the total point count; designated-pattern, cycle, and
    /// antipodal-free series against the per-circle free-set size, the
    /// variable their closed forms are exact in.
    pub fn x_label(&self, mode: CountKind) -> &'static str {
        match self {
            ConstructionKind::SpherePath { .. }
            | ConstructionKind::SphereEnhanced { .. }
            | ConstructionKind::SphereCycle { .. } => match mode {
                CountKind::Paths => "points",
                _ => "free-set-size",
            },
            ConstructionKind::QuadraticC4 => "points",
            ConstructionKind::GridIncidence => "objects",
            ConstructionKind::BipartiteK33 => "circle-part-size",
        }
    }
}

/// An exactly-counted (size, count) series.
#[derive(Clone, Debug)]
pub struct ScalingRun {
    pub construction: String,
    pub k: usize,
    pub x_label: &'static str,
    pub mode: CountKind,
    pub series: Vec<(u64, BigUint)>,
}

impl ScalingRun {
    pub fn validate(&self) -> Result<(), String> {
        for w in self.series.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err("series sizes must strictly increase".into());
            }
        }
        if self.series.iter().any(|(_, c)| c.is_zero()) {
            return Err("series counts must be positive".into());
        }
        Ok(())
    }
}

/// Least-squares fit over (log x, log y).
#[derive(Clone, Copy, Debug)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
}

pub fn fit_exponent(run: &ScalingRun) -> Result<ExponentFit, FitError> {
    if run.series.len() < 3 {
        return Err(FitError::TooFewPoints(run.series.len()));
    }
    let xs: Vec<f64> = run.series.iter().map(|(x, _)| (*x as f64).ln()).collect();
    let ys: Vec<f64> = run
        .series
        .iter()
        .map(|(_, c)| c.to_f64().expect("count fits in f64 under the budget").ln())
        .collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0, f64::max);
    Ok(ExponentFit {
        slope,
        intercept,
        max_residual,
    })
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// The sharp predicted exponent for the designated path/cycle families.
/// Cycle lengths 3, 6, 7, 9 have no single value; those rows live in the
/// bound table.
pub fn predicted_exponent(kind: CountKind, k: usize) -> Result<BigRational, FitError> {
    match kind {
        CountKind::Paths | CountKind::Pattern => {
            let s = (2 * (k + 3) / 5) as i64;
            debug_assert!(k % 5 == 2 || s == free_slot_count(k) as i64);
            if k % 5 == 2 {
                Ok(BigRational::from_integer(s.into()) - ratio(2, 3))
            } else {
                Ok(BigRational::from_integer(s.into()))
            }
        }
        CountKind::Cycles => {
            if k == 4 {
                return Ok(BigRational::from_integer(2.into()));
            }
            if matches!(k, 3 | 6 | 7 | 9) {
                return Err(FitError::GapRow(k));
            }
            let base = BigRational::from_integer(((2 * k / 5) as i64).into());
            if k % 5 == 2 {
                Ok(base + ratio(1, 3))
            } else {
                Ok(base)
            }
        }
        CountKind::AntipodalFreePaths => Ok(antipodal_free_path_exponent(k)),
        CountKind::Incidences => Ok(ratio(4, 3)),
        CountKind::PrescribedCopies => Ok(BigRational::new((k as i64).into(), 2.into())),
    }
}

/// Antipodal-free paths obey the planar path exponent: ⌊k/3⌋ + 1 for
/// k ≡ 0, 1 (mod 3), and (k + 2)/3 for k ≡ 2 (mod 3).
pub fn antipodal_free_path_exponent(k: usize) -> BigRational {
    if k % 3 == 2 {
        ratio((k + 2) as i64, 3)
    } else {
        BigRational::from_integer(((k / 3 + 1) as i64).into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    SphereCycle,
    R3Cycle,
    PlanarCycle,
    AntipodalFreePath,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::SphereCycle => "sphere-cycle",
            BoundKind::R3Cycle => "r3-cycle",
            BoundKind::PlanarCycle => "planar-cycle",
            BoundKind::AntipodalFreePath => "antipodal-free-path",
        }
    }
}

/// One row of exponent bounds: count grows as n^e with e in
/// [lower, upper], possibly up to polylogarithmic factors.
#[derive(Clone, Debug)]
pub struct BoundRow {
    pub kind: BoundKind,
    pub k: usize,
    pub lower: BigRational,
    pub upper: BigRational,
    pub polylog: bool,
}

/// The reference table: the cycle lengths with an open gap, the 3-space and
/// planar four-cycle rows, and the antipodal-free path rows.
pub fn bound_table() -> Vec<BoundRow> {
    let mut rows = vec![
        BoundRow {
            kind: BoundKind::SphereCycle,
            k: 3,
            lower: BigRational::one(),
            upper: ratio(4, 3),
            polylog: false,
        },
        BoundRow {
            kind: BoundKind::SphereCycle,
            k: 6,
            lower: ratio(2, 1),
            upper: ratio(20, 9),
            polylog: true,
        },
        BoundRow {
            kind: BoundKind::SphereCycle,
            k: 7,
            lower: ratio(7, 3),
            upper: ratio(8, 3),
            polylog: true,
        },
        BoundRow {
            kind: BoundKind::SphereCycle,
            k: 9,
            lower: ratio(3, 1),
            upper: ratio(10, 3),
            polylog: true,
        },
        BoundRow {
            kind: BoundKind::R3Cycle,
            k: 4,
            lower: ratio(2, 1),
            upper: ratio(12, 5),
            polylog: true,
        },
        BoundRow {
            kind: BoundKind::PlanarCycle,
            k: 4,
            lower: BigRational::one(),
            upper: ratio(5, 3),
            polylog: true,
        },
    ];
    for k in 2..=12 {
        rows.push(BoundRow {
            kind: BoundKind::AntipodalFreePath,
            k,
            lower: BigRational::one(),
            upper: antipodal_free_path_exponent(k),
            polylog: true,
        });
    }
    rows
}

/// Upper exponent a fitted slope of this run must not exceed (beyond
/// tolerance): the sharp table value where one exists, the bound-table upper
/// the gap rows.
pub fn upper_exponent(kind: CountKind, k: usize) -> BigRational {
    match predicted_exponent(kind, k) {
        Ok(e) => e,
        Err(_) => bound_table()
            .into_iter()
            .find(|r| r.kind == BoundKind::SphereCycle && r.k == k)
            .map(|r| r.upper)
            .expect("gap rows are tabulated"),
    }
}

/// Closed-form estimate of the count at the given size, used to enforce the
/// enumeration budget before any counting starts.
pub fn predicted_count(
    kind: ConstructionKind,
    mode: CountKind,
    size: u64,
) -> BigUint {
    let q_of = |m: u64| BigUint::from(m.saturating_sub(2));
    match kind {
        ConstructionKind::SpherePath { k } => {
            closed_form_pattern_count(k, &q_of(size), None, PatternKind::Path)
        }
        ConstructionKind::SphereEnhanced { k } => {
            let n3 = size.pow(3);
            let q = BigUint::from(2 * n3 + size);
            let e = BigUint::from(size.pow(4));
            let pk = if mode == CountKind::Cycles {
                PatternKind::Cycle
            } else {
                PatternKind::Path
            };
            closed_form_pattern_count(k, &q, Some(&e), pk)
        }
        ConstructionKind::SphereCycle { k } => {
            if k % 5 == 2 {
                let n3 = size.pow(3);
                let q = BigUint::from(2 * n3 + size);
                let e = BigUint::from(size.pow(4));
                closed_form_pattern_count(k, &q, Some(&e), PatternKind::Cycle)
            } else {
                closed_form_pattern_count(k, &q_of(size), None, PatternKind::Cycle)
            }
        }
        ConstructionKind::QuadraticC4 => {
            let q = size.saturating_sub(2);
            BigUint::from(q * q.saturating_sub(1) / 2)
        }
        ConstructionKind::GridIncidence => BigUint::from(size).pow(4u32),
        ConstructionKind::BipartiteK33 => BigUint::from(size).pow(3u32),
    }
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Builds the construction at every grid size, counts exactly, and returns
/// the series. Refuses sizes whose closed-form estimate exceeds the budget.
pub fn run_scaling(
    kind: ConstructionKind,
    mode: CountKind,
    engine: Engine,
    grid: &[u64],
    budget: u64,
) -> Result<ScalingRun, FitError> {
    let mode = kind.effective_mode(mode);
    let budget_big = BigUint::from(budget);
    for &size in grid {
        let estimate = predicted_count(kind, mode, size);
        if estimate > budget_big {
            return Err(FitError::BudgetExceeded {
                size,
                estimate: estimate.to_string(),
                budget: budget.to_string(),
            });
        }
    }
    let k = kind.k();
    let mut series = Vec::with_capacity(grid.len());
    for &size in grid {
        series.push(count_at(kind, mode, engine, size).map_err(FitError::Construct)?);
    }
    let run = ScalingRun {
        construction: kind.id(),
        k,
        x_label: kind.x_label(mode),
        mode,
        series,
    };
    run.validate().map_err(FitError::Construct)?;
    Ok(run)
}

fn count_at(
    kind: ConstructionKind,
    mode: CountKind,
    engine: Engine,
    size: u64,
) -> Result<(u64, BigUint), String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match kind {
        ConstructionKind::SpherePath { k }
        | ConstructionKind::SphereEnhanced { k }
        | ConstructionKind::SphereCycle { k } => {
            let cfg = match kind {
                ConstructionKind::SpherePath { .. } => {
                    path_construction_sized(k, size as usize).map_err(|e| err(&e))?
                }
                ConstructionKind::SphereEnhanced { .. } => {
                    enhanced_path_construction_sized(k, size as usize).map_err(|e| err(&e))?
                }
                _ => cycle_construction_sized(k, size as usize).map_err(|e| err(&e))?,
            };
            let x = match mode {
                CountKind::Paths => cfg.len() as u64,
                _ => cfg
                    .pattern
                    .as_ref()
                    .and_then(|p| p.free_sets.first())
                    .map(|s| s.len() as u64)
                    .unwrap_or(cfg.len() as u64),
            };
            let count = match mode {
                CountKind::Pattern => count_pattern_paths(&cfg, k).map_err(|e| err(&e))?,
                CountKind::Paths => {
                    let g = build_sphere_graph(&cfg).map_err(|e| err(&e))?;
                    count_paths(&g, k, engine)
                        .map_err(|e| err(&e))?
                        .unordered_paths
                }
                CountKind::AntipodalFreePaths => {
                    let g = build_sphere_graph(&cfg).map_err(|e| err(&e))?;
                    count_antipodal_free_paths(&g, k, engine).map_err(|e| err(&e))?
                }
                CountKind::Cycles => {
                    let g = build_sphere_graph(&cfg).map_err(|e| err(&e))?;
                    count_cycles(&g, k, engine).map_err(|e| err(&e))?
                }
                _ => return Err("unsupported count for sphere runs".into()),
            };
            Ok((x, count))
        }
        ConstructionKind::QuadraticC4 => {
            let cfg = quadratic_c4_config(size as usize).map_err(|e| err(&e))?;
            let count = match mode {
                CountKind::Pattern => count_pattern_paths(&cfg, 4).map_err(|e| err(&e))?,
                CountKind::Cycles => {
                    let g = build_sphere_graph(&cfg).map_err(|e| err(&e))?;
                    count_cycles(&g, 4, engine).map_err(|e| err(&e))?
                }
                CountKind::Paths => {
                    let g = build_sphere_graph(&cfg).map_err(|e| err(&e))?;
                    count_paths(&g, 4, engine)
                        .map_err(|e| err(&e))?
                        .unordered_paths
                }
                CountKind::AntipodalFreePaths => {
                    let g = build_sphere_graph(&cfg).map_err(|e| err(&e))?;
                    count_antipodal_free_paths(&g, 4, engine).map_err(|e| err(&e))?
                }
                _ => return Err("unsupported count for the quadratic run".into()),
            };
            Ok((size, count))
        }
        ConstructionKind::GridIncidence => {
            let scene = grid_incidence_scene(size as usize).map_err(|e| err(&e))?;
            Ok((
                (scene.points.len() + scene.lines.len()) as u64,
                BigUint::from(scene.incidence_count()),
            ))
        }
        ConstructionKind::BipartiteK33 => {
            let n = size as usize + 3;
            let one = BigRational::one();
            let cfg = bipartite_r3_construction(6, n, &default_heights(6), &one)
                .map_err(|e| err(&e))?;
            let spec = RegularGraphSpec::complete_bipartite(3, 3);
            let g = build_prescribed_graph(&cfg, &spec).map_err(|e| err(&e))?;
            let count = count_prescribed_copies(&g, &spec).map_err(|e| err(&e))?;
            Ok((size, count))
        }
    }
}

/// Fits a run and reports how the slope sits against the prediction and the
/// never-exceed ceiling.
#[derive(Clone, Debug)]
pub struct FitReport {
    pub fit: ExponentFit,
    pub predicted: Option<BigRational>,
    pub upper: BigRational,
}

pub fn fit_with_bounds(run: &ScalingRun) -> Result<FitReport, FitError> {
    let fit = fit_exponent(run)?;
    let predicted = predicted_exponent(run.mode, run.k).ok();
    let upper = upper_exponent(run.mode, run.k);
    Ok(FitReport {
        fit,
        predicted,
        upper,
    })
}
