//! Generators for the extremal configurations: the great-circle path and
//! cycle constructions on the sphere, their rich-set enhancement for
//! k ≡ 2 (mod 5), the quadratic four-cycle configuration, the incidence grid
//! in the plane, and the line-plus-circle construction in 3-space.
//!
//! Every generator is deterministic and produces exact rational data. Sphere
//! configurations carry a *designated pattern*: the record of which point
//! plays which role in the intended path or cycle shape (free slot, pole,
//! chain successor, closing vertex), so the designated count can be evaluated
//! and audited independently of full enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::ConstructError;
use crate::geom::{lift_line, lift_point, Direction, PlanarLine, PlanarPoint, R3Point};

/// Role of a configuration point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointLabel {
    /// Member of the point set placed on circle `i`.
    Q(usize),
    /// North pole of circle `i` (the pole direction itself).
    North(usize),
    /// South pole of circle `i` (the negated pole).
    South(usize),
    /// Member of the rich enhancement set.
    Rich,
}

/// One position of a designated pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternSlot {
    /// Free choice from the free set of the given circle.
    Free(usize),
    North(usize),
    South(usize),
    /// Designated successor of the previous position's vertex.
    Chain,
    /// First half of a free orthogonal pair from the rich set.
    RichFirst,
    /// Second half: the partner recorded for the pair.
    RichSecond,
    /// Designated closing vertex, keyed by the vertex in the first slot.
    Closer,
    /// Designated pre-closing vertex, keyed by the vertex in the first slot.
    Precloser,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternKind {
    Path,
    Cycle,
}

/// Designated-structure side data attached to a generated configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternData {
    pub k: usize,
    pub kind: PatternKind,
    pub slots: Vec<PatternSlot>,
    /// Per circle: indices of the points eligible for `Free` slots.
    pub free_sets: Vec<Vec<usize>>,
    /// Designated successor map (chain edges and rich-to-chain edges).
    pub successor: BTreeMap<usize, usize>,
    /// First-slot vertex to closing vertex.
    pub closer: BTreeMap<usize, usize>,
    /// First-slot vertex to pre-closing vertex.
    pub precloser: BTreeMap<usize, usize>,
    /// Designated orthogonal pairs in the rich set, one per pair.
    pub rich_pairs: Vec<(usize, usize)>,
}

/// A labeled collection of sphere points together with the great circles
/// (given by their pole directions) the construction used.
#[derive(Clone, Debug)]
pub struct SphereConfig {
    pub points: Vec<Direction>,
    pub labels: Vec<PointLabel>,
    pub circles: Vec<Direction>,
    pub pattern: Option<PatternData>,
}

impl SphereConfig {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks the structural invariants: distinct points, circle membership
    /// of Q-labeled points, poles placed exactly at `±m_i`, and no Q point
    /// sitting on any pole.
    pub fn validate(&self) -> Result<(), String> {
        if self.points.len() != self.labels.len() {
            return Err("labels and points differ in length".into());
        }
        let mut seen = HashSet::new();
        for (i, p) in self.points.iter().enumerate() {
            if !seen.insert(p.clone()) {
                return Err(format!("duplicate point at index {i}"));
            }
        }
        let pole_set: HashSet<Direction> = self
            .circles
            .iter()
            .flat_map(|m| [m.clone(), m.negate()])
            .collect();
        for (i, (p, label)) in self.points.iter().zip(&self.labels).enumerate() {
            match label {
                PointLabel::Q(c) => {
                    let m = self
                        .circles
                        .get(*c)
                        .ok_or_else(|| format!("point {i} references missing circle {c}"))?;
                    if !p.dot(m).is_zero() {
                        return Err(format!("point {i} is not on circle {c}"));
                    }
                    if pole_set.contains(p) {
                        return Err(format!("point {i} is labeled Q but is a pole"));
                    }
                }
                PointLabel::North(c) => {
                    if Some(p) != self.circles.get(*c) {
                        return Err(format!("north pole {i} does not match circle {c}"));
                    }
                }
                PointLabel::South(c) => {
                    let m = self
                        .circles
                        .get(*c)
                        .ok_or_else(|| format!("pole {i} references missing circle {c}"))?;
                    if *p != m.negate() {
                        return Err(format!("south pole {i} does not match circle {c}"));
                    }
                }
                PointLabel::Rich => {}
            }
        }
        Ok(())
    }
}

/// Pole of circle `i`: `(0,0,1)` for the first circle, `(i, 1, i²+1)` after.
/// These are pairwise non-parallel and pairwise non-orthogonal.
fn circle_pole(i: usize) -> Direction {
    if i == 0 {
        Direction::new(0, 0, 1).unwrap()
    } else {
        let i = i as i64;
        Direction::new(i, 1, i * i + 1).unwrap()
    }
}

fn circles_for(count: usize) -> Vec<Direction> {
    (0..count).map(circle_pole).collect()
}

/// ⌈2k/5⌉, the number of great circles the construction budgets for.
fn circle_budget(k: usize) -> usize {
    (2 * k).div_ceil(5)
}

/// Free-slot positions of the k-vertex block pattern: position 1 plus every
/// position ≡ 3 or 0 (mod 5). Equals ⌊2(k+3)/5⌋ for k ≢ 2 (mod 5).
pub fn free_slot_count(k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    1 + (k + 2) / 5 + k / 5
}

/// Incremental assembly of a point set with exact deduplication.
struct Assembly {
    points: Vec<Direction>,
    labels: Vec<PointLabel>,
    index: HashMap<Direction, usize>,
}

impl Assembly {
    fn new() -> Self {
        Assembly {
            points: Vec::new(),
            labels: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn contains(&self, d: &Direction) -> bool {
        self.index.contains_key(d)
    }

    fn push(&mut self, d: Direction, label: PointLabel) -> usize {
        debug_assert!(!self.contains(&d));
        let idx = self.points.len();
        self.index.insert(d.clone(), idx);
        self.points.push(d);
        self.labels.push(label);
        idx
    }

    fn get_or_push(&mut self, d: Direction, label: PointLabel) -> usize {
        match self.index.get(&d) {
            Some(&i) => i,
            None => self.push(d, label),
        }
    }
}

/// Per-root chains through the circles: the root sits on circle 0 and level
/// `i` is the cross-product image on circle `i`. Roots whose chain collides
/// with a pole or any other placed point are removed and propagation
/// restarts, so the surviving designated maps are injective level to level.
fn filtered_chains(
    mut roots: Vec<Direction>,
    poles: &[Direction],
    op: &'static str,
) -> Result<(Vec<Direction>, Vec<Vec<Direction>>), ConstructError> {
    let levels = poles.len();
    let pole_set: HashSet<Direction> = poles
        .iter()
        .flat_map(|m| [m.clone(), m.negate()])
        .collect();
    'outer: loop {
        if roots.is_empty() {
            return Err(ConstructError::FilterExhausted {
                op,
                detail: "no seed point survives the collision filter".into(),
            });
        }
        let mut seen: HashSet<Direction> = pole_set.clone();
        let mut chains: Vec<Vec<Direction>> = Vec::with_capacity(roots.len());
        for ri in 0..roots.len() {
            let mut chain = Vec::with_capacity(levels);
            chain.push(roots[ri].clone());
            for lvl in 1..levels {
                match chain[lvl - 1].cross(&poles[lvl]) {
                    Ok(next) => chain.push(next),
                    Err(_) => {
                        roots.remove(ri);
                        continue 'outer;
                    }
                }
            }
            for p in &chain {
                if !seen.insert(p.clone()) {
                    roots.remove(ri);
                    continue 'outer;
                }
            }
            chains.push(chain);
        }
        return Ok((roots, chains));
    }
}

/// Path-pattern slot for position `i` (1-based) of the block layout.
fn path_slot(i: usize) -> PatternSlot {
    let block = (i - 1) / 5;
    match (i - 1) % 5 + 1 {
        1 => {
            if block == 0 {
                PatternSlot::Free(0)
            } else {
                PatternSlot::Chain
            }
        }
        2 => PatternSlot::North(block),
        3 => PatternSlot::Free(block),
        4 => PatternSlot::South(block),
        5 => PatternSlot::Free(block),
        _ => unreachable!(),
    }
}

/// Assembles a config from chains: poles first, then the chain points level
/// by level, recording free sets and the designated successor map.
fn assemble_chained(
    poles: &[Direction],
    chains: &[Vec<Direction>],
) -> (Assembly, Vec<Vec<usize>>, BTreeMap<usize, usize>) {
    let levels = poles.len();
    let mut asm = Assembly::new();
    for (c, m) in poles.iter().enumerate() {
        asm.push(m.clone(), PointLabel::North(c));
        asm.push(m.negate(), PointLabel::South(c));
    }
    let mut free_sets: Vec<Vec<usize>> = vec![Vec::new(); levels];
    let mut chain_idx: Vec<Vec<usize>> = Vec::with_capacity(chains.len());
    for chain in chains {
        let idxs: Vec<usize> = chain
            .iter()
            .enumerate()
            .map(|(lvl, p)| asm.push(p.clone(), PointLabel::Q(lvl)))
            .collect();
        for (lvl, &i) in idxs.iter().enumerate() {
            free_sets[lvl].push(i);
        }
        chain_idx.push(idxs);
    }
    let mut successor = BTreeMap::new();
    for idxs in &chain_idx {
        for w in idxs.windows(2) {
            successor.insert(w[0], w[1]);
        }
    }
    (asm, free_sets, successor)
}

/// The chained path construction: ⌈2k/5⌉ great circles, two poles each, and
/// chained point sets so the designated k-path pattern has
/// ⌊2(k+3)/5⌋ free slots.
pub fn path_construction(k: usize, n: usize) -> Result<SphereConfig, ConstructError> {
    if k < 1 {
        return Err(ConstructError::BadK {
            op: "path_construction",
            k,
            why: "need k ≥ 1",
        });
    }
    if n < 5 * k {
        return Err(ConstructError::TooFewPoints { k, n, min: 5 * k });
    }
    let b = circle_budget(k);
    let mut m = (5 * n) / (2 * k);
    while b * m > n {
        m -= 1;
    }
    if m < 3 {
        return Err(ConstructError::TooFewPoints { k, n, min: 3 * b });
    }
    path_construction_sized(k, m)
}

/// Same construction with the per-circle budget `m` (two poles plus `m − 2`
/// chained points) given directly.
pub fn path_construction_sized(k: usize, m: usize) -> Result<SphereConfig, ConstructError> {
    if k < 1 {
        return Err(ConstructError::BadK {
            op: "path_construction",
            k,
            why: "need k ≥ 1",
        });
    }
    if m < 3 {
        return Err(ConstructError::TooFewPoints {
            k,
            n: m,
            min: 3,
        });
    }
    let b = circle_budget(k);
    let poles = circles_for(b);
    let seeds: Vec<Direction> = (1..=(m - 2) as i64)
        .map(|t| Direction::new(t, 1, 0).unwrap())
        .collect();
    let (_, chains) = filtered_chains(seeds, &poles, "path_construction")?;
    let (asm, free_sets, successor) = assemble_chained(&poles, &chains);
    let slots: Vec<PatternSlot> = (1..=k).map(path_slot).collect();
    Ok(SphereConfig {
        points: asm.points,
        labels: asm.labels,
        circles: poles,
        pattern: Some(PatternData {
            k,
            kind: PatternKind::Path,
            slots,
            free_sets,
            successor,
            closer: BTreeMap::new(),
            precloser: BTreeMap::new(),
            rich_pairs: Vec::new(),
        }),
    })
}

/// A planar point–line scene.
#[derive(Clone, Debug)]
pub struct PlanarScene {
    pub points: Vec<PlanarPoint>,
    pub lines: Vec<PlanarLine>,
}

impl PlanarScene {
    /// Exhaustive exact incidence count.
    pub fn incidence_count(&self) -> u64 {
        let mut count = 0;
        for l in &self.lines {
            for p in &self.points {
                if l.contains(p) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn validate(&self) -> Result<(), String> {
        let mut seen = HashSet::new();
        for p in &self.points {
            if !seen.insert((p.x.clone(), p.y.clone())) {
                return Err("duplicate point".into());
            }
        }
        let mut seen = HashSet::new();
        for l in &self.lines {
            let (a, b, c) = l.coeffs();
            if !seen.insert((a.clone(), b.clone(), c.clone())) {
                return Err("duplicate line".into());
            }
        }
        Ok(())
    }
}

/// Central-projection lift of a whole scene: point directions and one pole
/// direction per line.
pub fn lift_scene(scene: &PlanarScene) -> (Vec<Direction>, Vec<Direction>) {
    (
        scene.points.iter().map(lift_point).collect(),
        scene.lines.iter().map(lift_line).collect(),
    )
}

/// The N⁴-incidence grid: points `[1, N] × [1, 2N²]` against the lines
/// `y = ax + b` with `a ∈ [1, N]`, `b ∈ [1, N²]`. Every line meets the grid
/// in exactly N points.
pub fn grid_incidence_scene(n: usize) -> Result<PlanarScene, ConstructError> {
    if n < 1 {
        return Err(ConstructError::BadK {
            op: "grid_incidence_scene",
            k: n,
            why: "need N ≥ 1",
        });
    }
    let n_i = n as i64;
    let mut points = Vec::with_capacity(n * 2 * n * n);
    for i in 1..=n_i {
        for j in 1..=2 * n_i * n_i {
            points.push(PlanarPoint::from_ints(i, j));
        }
    }
    let mut lines = Vec::with_capacity(n * n * n);
    for a in 1..=n_i {
        for b in 1..=n_i * n_i {
            // y = ax + b as ax − y + b = 0
            lines.push(PlanarLine::new(a, -1, b).unwrap());
        }
    }
    Ok(PlanarScene { points, lines })
}

/// A point set with many orthogonal pairs: the lift of the largest incidence
/// grid with at most `m` objects, or a single orthogonal axis triple when
/// even the smallest grid does not fit.
pub struct RichSet {
    pub points: Vec<Direction>,
    /// All orthogonal pairs, each recorded once as (i, j) with i < j.
    pub pairs: Vec<(usize, usize)>,
    /// The source scene when grid-built.
    pub scene: Option<PlanarScene>,
}

fn orthogonal_pairs(points: &[Direction]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].dot(&points[j]).is_zero() {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

pub fn rich_q_set(m: usize) -> Result<RichSet, ConstructError> {
    if m < 3 {
        return Err(ConstructError::TooFewPoints { k: 2, n: m, min: 3 });
    }
    let mut n = 0usize;
    while 3 * (n + 1).pow(3) <= m {
        n += 1;
    }
    if n < 2 {
        let points = vec![
            Direction::new(1, 0, 0).unwrap(),
            Direction::new(0, 1, 0).unwrap(),
            Direction::new(0, 0, 1).unwrap(),
        ];
        let pairs = orthogonal_pairs(&points);
        return Ok(RichSet {
            points,
            pairs,
            scene: None,
        });
    }
    let scene = grid_incidence_scene(n)?;
    let (mut points, line_lifts) = lift_scene(&scene);
    points.extend(line_lifts);
    let pairs = orthogonal_pairs(&points);
    Ok(RichSet {
        points,
        pairs,
        scene: Some(scene),
    })
}

impl RichSet {
    /// A configuration holding just the rich set, patterned for the
    /// two-vertex case (one free orthogonal pair).
    pub fn into_config(self) -> SphereConfig {
        let len = self.points.len();
        SphereConfig {
            points: self.points,
            labels: vec![PointLabel::Rich; len],
            circles: Vec::new(),
            pattern: Some(PatternData {
                k: 2,
                kind: PatternKind::Path,
                slots: vec![PatternSlot::RichFirst, PatternSlot::RichSecond],
                free_sets: Vec::new(),
                successor: BTreeMap::new(),
                closer: BTreeMap::new(),
                precloser: BTreeMap::new(),
                rich_pairs: self.pairs,
            }),
        }
    }
}

/// Core of the enhanced construction: rich points, their designated images
/// on circle 0, and the chains of those images through all circles. Rich
/// points whose image collides away are dropped along with their pairs.
struct EnhancedParts {
    rich: Vec<Direction>,
    /// Designated image on circle 0 per rich point.
    des: Vec<Direction>,
    chains: Vec<Vec<Direction>>,
}

fn build_enhanced_parts(
    mut rich: Vec<Direction>,
    poles: &[Direction],
) -> Result<EnhancedParts, ConstructError> {
    let pole_set: HashSet<Direction> = poles
        .iter()
        .flat_map(|p| [p.clone(), p.negate()])
        .collect();
    'outer: loop {
        if rich.is_empty() {
            return Err(ConstructError::FilterExhausted {
                op: "enhanced_path_construction",
                detail: "no rich point survives the collision filter".into(),
            });
        }
        // Rich points must be distinct and off every pole.
        let mut seen: HashSet<Direction> = pole_set.clone();
        for (i, q) in rich.iter().enumerate() {
            if !seen.insert(q.clone()) {
                rich.remove(i);
                continue 'outer;
            }
        }
        // Designated images on circle 0; the map need not be injective.
        let mut des = Vec::with_capacity(rich.len());
        for (i, q) in rich.iter().enumerate() {
            match q.cross(&poles[0]) {
                Ok(img) => des.push(img),
                Err(_) => {
                    rich.remove(i);
                    continue 'outer;
                }
            }
        }
        let mut roots: Vec<Direction> = Vec::new();
        let mut root_seen: HashSet<Direction> = HashSet::new();
        for img in &des {
            if seen.contains(img) && !root_seen.contains(img) {
                // Image hits a pole or a rich point: every rich source of
                // this image loses its designated neighbor.
                let bad = img.clone();
                rich = rich
                    .into_iter()
                    .zip(des)
                    .filter(|(_, d)| *d != bad)
                    .map(|(q, _)| q)
                    .collect();
                continue 'outer;
            }
            if root_seen.insert(img.clone()) {
                roots.push(img.clone());
            }
        }
        // Chain the distinct images through the remaining circles.
        let before: HashSet<Direction> = roots.iter().cloned().collect();
        let (kept, chains) = filtered_chains(roots, poles, "enhanced_path_construction")?;
        let kept_set: HashSet<Direction> = kept.iter().cloned().collect();
        if kept_set.len() != before.len() {
            rich = rich
                .into_iter()
                .zip(des)
                .filter(|(_, d)| kept_set.contains(d))
                .map(|(q, _)| q)
                .collect();
            continue 'outer;
        }
        // Chains may not collide with rich points either.
        for chain in &chains {
            for p in &chain[1..] {
                if seen.contains(p) {
                    let bad_root = chain[0].clone();
                    rich = rich
                        .into_iter()
                        .zip(des)
                        .filter(|(_, d)| *d != bad_root)
                        .map(|(q, _)| q)
                        .collect();
                    continue 'outer;
                }
            }
        }
        return Ok(EnhancedParts {
            rich,
            des,
            chains,
        });
    }
}

/// Enhanced-pattern slots: a free orthogonal pair, then the block layout
/// with the first position designated by the pair's second vertex.
fn enhanced_slots(k: usize) -> Vec<PatternSlot> {
    let mut slots = vec![PatternSlot::RichFirst, PatternSlot::RichSecond];
    for i in 1..=(k - 2) {
        let s = path_slot(i);
        slots.push(if i == 1 { PatternSlot::Chain } else { s });
    }
    slots
}

fn assemble_enhanced(
    k: usize,
    grid_n: usize,
    kind: PatternKind,
) -> Result<(SphereConfig, usize), ConstructError> {
    let b = circle_budget(k - 2);
    let poles = circles_for(b);
    let rich_set = rich_q_set(3 * grid_n.pow(3).max(1))?;
    let parts = build_enhanced_parts(rich_set.points, &poles)?;

    let (mut asm, free_sets, mut successor) = assemble_chained(&poles, &parts.chains);
    let rich_idx: Vec<usize> = parts
        .rich
        .iter()
        .map(|q| asm.push(q.clone(), PointLabel::Rich))
        .collect();
    // Designated edges from rich points into circle 0.
    for (ri, img) in parts.des.iter().enumerate() {
        let target = *asm.index.get(img).expect("image was placed");
        successor.insert(rich_idx[ri], target);
    }
    let rich_pairs: Vec<(usize, usize)> = orthogonal_pairs(&parts.rich)
        .into_iter()
        .map(|(i, j)| (rich_idx[i], rich_idx[j]))
        .collect();

    let slots = match kind {
        PatternKind::Path => enhanced_slots(k),
        PatternKind::Cycle => {
            let mut s = enhanced_slots(k - 1);
            s.push(PatternSlot::Closer);
            s
        }
    };
    let mut closer = BTreeMap::new();
    if kind == PatternKind::Cycle {
        // The pattern ends at the south pole of circle ℓ*; the closing vertex
        // for first-slot choice q is cross(q, m_{ℓ*}), on that circle.
        let ell = (k - 7) / 5;
        for (ri, q) in parts.rich.iter().enumerate() {
            let img = q.cross(&poles[ell]).expect("rich point is not a pole");
            let target = asm.get_or_push(img, PointLabel::Q(ell));
            closer.insert(rich_idx[ri], target);
        }
    }
    let total = asm.points.len();
    Ok((
        SphereConfig {
            points: asm.points,
            labels: asm.labels,
            circles: poles,
            pattern: Some(PatternData {
                k,
                kind,
                slots,
                free_sets,
                successor,
                closer,
                precloser: BTreeMap::new(),
                rich_pairs,
            }),
        },
        total,
    ))
}

/// The k ≡ 2 (mod 5) enhancement: the (k−2)-vertex construction whose first
/// circle is fed by a rich set with many orthogonal pairs, so the designated
/// pattern starts with a free orthogonal pair. `k = 2` returns the rich set
/// alone.
pub fn enhanced_path_construction(k: usize, n: usize) -> Result<SphereConfig, ConstructError> {
    if k % 5 != 2 {
        return Err(ConstructError::BadK {
            op: "enhanced_path_construction",
            k,
            why: "need k ≡ 2 (mod 5)",
        });
    }
    if k == 2 {
        return Ok(rich_q_set(n.max(3))?.into_config());
    }
    if k < 7 {
        return Err(ConstructError::BadK {
            op: "enhanced_path_construction",
            k,
            why: "need k = 2 or k ≥ 7",
        });
    }
    let mut best = None;
    let mut grid_n = 2;
    while let Ok((cfg, total)) = assemble_enhanced(k, grid_n, PatternKind::Path) {
        if total > n {
            break;
        }
        best = Some(cfg);
        grid_n += 1;
    }
    best.ok_or(ConstructError::TooFewPoints {
        k,
        n,
        min: 3 * 8 + 2 * circle_budget(k - 2),
    })
}

/// Same, sized by the incidence-grid parameter of the rich set.
pub fn enhanced_path_construction_sized(
    k: usize,
    grid_n: usize,
) -> Result<SphereConfig, ConstructError> {
    if k % 5 != 2 || k < 7 {
        return Err(ConstructError::BadK {
            op: "enhanced_path_construction",
            k,
            why: "need k ≡ 2 (mod 5), k ≥ 7",
        });
    }
    Ok(assemble_enhanced(k, grid_n, PatternKind::Path)?.0)
}

/// Closing structure of the cycle pattern by residue of k mod 5: how many
/// trailing pattern positions are replaced by designated closing vertices,
/// and the circle index the pattern's final pole lives on.
fn cycle_shape(k: usize) -> (usize, usize) {
    match k % 5 {
        0 => (1, k / 5 - 1),
        3 => (1, (k - 3) / 5),
        1 => (2, (k - 6) / 5),
        4 => (2, (k - 4) / 5),
        _ => (1, (k - 7) / 5),
    }
}

fn assemble_plain_cycle(k: usize, m: usize) -> Result<(SphereConfig, usize), ConstructError> {
    let b = circle_budget(k);
    let poles = circles_for(b);
    let seeds: Vec<Direction> = (1..=(m - 2) as i64)
        .map(|t| Direction::new(t, 1, 0).unwrap())
        .collect();
    let (_, chains) = filtered_chains(seeds, &poles, "cycle_construction")?;
    let (mut asm, free_sets, successor) = assemble_chained(&poles, &chains);

    // Four-cycles close through the antipodal pole pair alone: the pattern
    // (Q, N, Q, S) needs no designated closing vertex.
    if k == 4 {
        let total = asm.points.len();
        return Ok((
            SphereConfig {
                points: asm.points,
                labels: asm.labels,
                circles: poles,
                pattern: Some(PatternData {
                    k,
                    kind: PatternKind::Cycle,
                    slots: (1..=4).map(path_slot).collect(),
                    free_sets,
                    successor,
                    closer: BTreeMap::new(),
                    precloser: BTreeMap::new(),
                    rich_pairs: Vec::new(),
                }),
            },
            total,
        ));
    }

    let (tail, ell) = cycle_shape(k);
    let mut slots: Vec<PatternSlot> = (1..=(k - tail)).map(path_slot).collect();
    let mut closer = BTreeMap::new();
    let mut precloser = BTreeMap::new();
    if tail == 2 {
        slots.push(PatternSlot::Precloser);
    }
    slots.push(PatternSlot::Closer);

    for chain in &chains {
        let first = *asm.index.get(&chain[0]).expect("root was placed");
        if tail == 1 {
            // Ends at a pole of circle ℓ*; close with cross(first, m_{ℓ*}).
            let c = chain[0].cross(&poles[ell]).expect("chain point is no pole");
            let ci = asm.get_or_push(c, PointLabel::Q(ell));
            closer.insert(first, ci);
        } else {
            // Ends at a pole of circle ℓ*; two forced vertices: one on
            // circle ℓ* adjacent to the closing vertex, the closing vertex on
            // circle ℓ*+1 adjacent to the first.
            let c = chain[0]
                .cross(&poles[ell + 1])
                .expect("chain point is no pole");
            let pre = poles[ell].cross(&c).expect("poles are never orthogonal");
            let ci = asm.get_or_push(c, PointLabel::Q(ell + 1));
            let pi = asm.get_or_push(pre, PointLabel::Q(ell));
            closer.insert(first, ci);
            precloser.insert(first, pi);
        }
    }
    let total = asm.points.len();
    Ok((
        SphereConfig {
            points: asm.points,
            labels: asm.labels,
            circles: poles,
            pattern: Some(PatternData {
                k,
                kind: PatternKind::Cycle,
                slots,
                free_sets,
                successor,
                closer,
                precloser,
                rich_pairs: Vec::new(),
            }),
        },
        total,
    ))
}

/// The cycle construction: the path pattern shortened so it ends at a
/// pole, plus designated closing vertices that join the final pole back to
/// the first vertex. The designated count drops exactly one free slot
/// against the k-path pattern.
pub fn cycle_construction(k: usize, n: usize) -> Result<SphereConfig, ConstructError> {
    if k < 4 {
        return Err(ConstructError::BadK {
            op: "cycle_construction",
            k,
            why: "need k ≥ 4",
        });
    }
    if k % 5 == 2 {
        let mut best = None;
        let mut grid_n = 2;
        while let Ok((cfg, total)) = assemble_enhanced(k, grid_n, PatternKind::Cycle) {
            if total > n {
                break;
            }
            best = Some(cfg);
            grid_n += 1;
        }
        return best.ok_or(ConstructError::TooFewPoints { k, n, min: 5 * k });
    }
    if n < 5 * k {
        return Err(ConstructError::TooFewPoints { k, n, min: 5 * k });
    }
    let mut m = (5 * n) / (2 * k);
    loop {
        if m < 3 {
            return Err(ConstructError::TooFewPoints { k, n, min: 5 * k });
        }
        let (cfg, total) = assemble_plain_cycle(k, m)?;
        if total <= n {
            return Ok(cfg);
        }
        m -= 1;
    }
}

/// Cycle construction sized directly: per-circle budget `m` for
/// k ≢ 2 (mod 5), incidence-grid parameter for k ≡ 2 (mod 5).
pub fn cycle_construction_sized(k: usize, size: usize) -> Result<SphereConfig, ConstructError> {
    if k < 4 {
        return Err(ConstructError::BadK {
            op: "cycle_construction",
            k,
            why: "need k ≥ 4",
        });
    }
    if k % 5 == 2 {
        Ok(assemble_enhanced(k, size, PatternKind::Cycle)?.0)
    } else {
        if size < 3 {
            return Err(ConstructError::TooFewPoints { k, n: size, min: 3 });
        }
        Ok(assemble_plain_cycle(k, size)?.0)
    }
}

/// One circle, its two poles, and n−2 circle points: every pair of circle
/// points closes a four-cycle through the antipodal pole pair.
pub fn quadratic_c4_config(n: usize) -> Result<SphereConfig, ConstructError> {
    if n < 4 {
        return Err(ConstructError::TooFewPoints { k: 4, n, min: 4 });
    }
    let pole = circle_pole(0);
    let mut asm = Assembly::new();
    asm.push(pole.clone(), PointLabel::North(0));
    asm.push(pole.negate(), PointLabel::South(0));
    let mut free = Vec::with_capacity(n - 2);
    for t in 1..=(n - 2) as i64 {
        free.push(asm.push(Direction::new(t, 1, 0).unwrap(), PointLabel::Q(0)));
    }
    Ok(SphereConfig {
        points: asm.points,
        labels: asm.labels,
        circles: vec![pole],
        pattern: Some(PatternData {
            k: 4,
            kind: PatternKind::Cycle,
            slots: vec![
                PatternSlot::Free(0),
                PatternSlot::North(0),
                PatternSlot::Free(0),
                PatternSlot::South(0),
            ],
            free_sets: vec![free],
            successor: BTreeMap::new(),
            closer: BTreeMap::new(),
            precloser: BTreeMap::new(),
            rich_pairs: Vec::new(),
        }),
    })
}

/// The line-plus-circle configuration in 3-space: k/2 points on the z-axis
/// and the rest on a rational circle in the plane z = 0, so the squared
/// distance from line point i to every circle point is hᵢ² + r².
#[derive(Clone, Debug)]
pub struct BipartiteR3Config {
    pub line_points: Vec<R3Point>,
    pub circle_points: Vec<R3Point>,
    /// Squared lengths indexed by (line slot, circle slot).
    pub prescribed_lengths: Vec<Vec<BigRational>>,
}

impl BipartiteR3Config {
    pub fn validate(&self) -> Result<(), String> {
        let mut zs = HashSet::new();
        for p in &self.line_points {
            if !p.x.is_zero() || !p.y.is_zero() {
                return Err("line point off the z-axis".into());
            }
            if !zs.insert(p.z.clone()) {
                return Err("duplicate line point".into());
            }
        }
        for (i, p) in self.line_points.iter().enumerate() {
            for (j, q) in self.circle_points.iter().enumerate() {
                if crate::geom::squared_distance_r3(p, q) != self.prescribed_lengths[i][j] {
                    return Err(format!("prescribed length broken at ({i}, {j})"));
                }
            }
        }
        Ok(())
    }
}

pub fn bipartite_r3_construction(
    k: usize,
    n: usize,
    heights: &[BigRational],
    radius: &BigRational,
) -> Result<BipartiteR3Config, ConstructError> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(ConstructError::BadK {
            op: "bipartite_r3_construction",
            k,
            why: "need even k ≥ 2",
        });
    }
    if n <= k {
        return Err(ConstructError::TooFewPoints { k, n, min: k + 1 });
    }
    if heights.len() != k / 2 {
        return Err(ConstructError::DuplicateParams(format!(
            "expected {} heights, got {}",
            k / 2,
            heights.len()
        )));
    }
    let mut seen = HashSet::new();
    for h in heights {
        if !seen.insert(h.clone()) {
            return Err(ConstructError::DuplicateParams("heights".into()));
        }
    }
    if radius.is_zero() {
        return Err(ConstructError::DuplicateParams("radius must be nonzero".into()));
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    let line_points: Vec<R3Point> = heights
        .iter()
        .map(|h| R3Point::new(zero.clone(), zero.clone(), h.clone()))
        .collect();
    // Rational circle parametrization (r(1−t²)/(1+t²), 2rt/(1+t²), 0).
    let circle_points: Vec<R3Point> = (0..(n - k / 2) as i64)
        .map(|ti| {
            let t = BigRational::from_integer(BigInt::from(ti));
            let t2 = &t * &t;
            let denom = &one + &t2;
            let x = radius * (&one - &t2) / &denom;
            let y = radius * BigRational::from_integer(BigInt::from(2)) * &t / &denom;
            R3Point::new(x, y, zero.clone())
        })
        .collect();
    let r2 = radius * radius;
    let prescribed_lengths: Vec<Vec<BigRational>> = heights
        .iter()
        .map(|h| {
            let v = h * h + &r2;
            vec![v; circle_points.len()]
        })
        .collect();
    Ok(BipartiteR3Config {
        line_points,
        circle_points,
        prescribed_lengths,
    })
}

/// Integer heights 0, 1, …, k/2−1: the default slot heights.
pub fn default_heights(k: usize) -> Vec<BigRational> {
    (0..(k / 2) as i64)
        .map(|h| BigRational::from_integer(BigInt::from(h)))
        .collect()
}
