//! Exact counting of paths, antipodal-free paths, cycles, designated-pattern
//! structures, subgraph copies, and multipartite prescribed-length tuples.
//!
//! Two engines are maintained side by side. The naive engine is a plain
//! adjacency-list DFS and serves as the reference; the optimized engine
//! relabels by degree, walks bit rows, and parallelizes over the first
//! vertex. They must agree bit-exactly on every input.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap, HashSet};

use crate::constructions::{PatternKind, PatternSlot, PointLabel, SphereConfig};
use crate::error::{CountError, LpError};
use crate::graph::{BitRow, UnitDistanceGraph};

/// A fixed simple graph given by an edge list, used both as a counting
/// pattern and as the subject of the 3-regular verification sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularGraphSpec {
    pub vertex_count: usize,
    /// Normalized: u < v, sorted, duplicate-free.
    pub edges: Vec<(usize, usize)>,
}

impl RegularGraphSpec {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, LpError> {
        let mut normalized = Vec::with_capacity(edges.len());
        let mut seen = HashSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(LpError::BadGraph(format!("loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(LpError::BadGraph(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(LpError::BadGraph(format!("duplicate edge {e:?}")));
            }
            normalized.push(e);
        }
        normalized.sort_unstable();
        Ok(RegularGraphSpec {
            vertex_count,
            edges: normalized,
        })
    }

    pub fn complete(k: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..k {
            for v in (u + 1)..k {
                edges.push((u, v));
            }
        }
        RegularGraphSpec::new(k, edges).unwrap()
    }

    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3);
        let edges = (0..k).map(|i| (i, (i + 1) % k)).collect();
        RegularGraphSpec::new(k, edges).unwrap()
    }

    /// Complete bipartite graph with parts 0..a and a..a+b.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        RegularGraphSpec::new(a + b, edges).unwrap()
    }

    /// The triangular prism: two triangles joined by a perfect matching.
    pub fn prism() -> Self {
        RegularGraphSpec::new(
            6,
            vec![
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap()
    }

    /// The 3-cube graph.
    pub fn cube() -> Self {
        let mut edges = Vec::new();
        for u in 0..8usize {
            for bit in 0..3 {
                let v = u ^ (1 << bit);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        RegularGraphSpec::new(8, edges).unwrap()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn check_three_regular(&self) -> Result<(), LpError> {
        for (v, d) in self.degrees().iter().enumerate() {
            if *d != 3 {
                return Err(LpError::NotCubic {
                    vertex: v,
                    degree: *d,
                });
            }
        }
        Ok(())
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut n = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            n[u].push(v);
            n[v].push(u);
        }
        n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).is_ok()
    }

    /// Parses an edge list, one "u v" pair per line; `#` starts a comment.
    pub fn from_edge_list_text(text: &str) -> Result<Self, LpError> {
        let mut edges = Vec::new();
        let mut max = 0usize;
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |s: Option<&str>| -> Result<usize, LpError> {
                s.and_then(|t| t.parse().ok()).ok_or_else(|| {
                    LpError::BadGraph(format!("line {}: expected \"u v\"", ln + 1))
                })
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            max = max.max(u).max(v);
            edges.push((u, v));
        }
        if edges.is_empty() {
            return Err(LpError::BadGraph("empty edge list".into()));
        }
        RegularGraphSpec::new(max + 1, edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Naive,
    Optimized,
}

/// The counts attached to one (graph, k) query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub k: usize,
    pub ordered_paths: BigUint,
    pub unordered_paths: BigUint,
    pub antipodal_free_unordered: Option<BigUint>,
    pub cycles_dihedral: Option<BigUint>,
    pub engine: Engine,
}

fn halve(ordered: &BigUint) -> BigUint {
    debug_assert!((ordered % 2u32).is_zero());
    ordered / 2u32
}

/// Degree-descending relabeling; counting is invariant under it.
fn degree_order(g: &UnitDistanceGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    order
}

fn relabeled_rows(g: &UnitDistanceGraph, order: &[usize]) -> Vec<BitRow> {
    let n = g.vertex_count();
    let mut pos = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let mut rows = vec![BitRow::new(n); n];
    for (new, &old) in order.iter().enumerate() {
        for &w in g.neighbors(old) {
            rows[new].set(pos[w]);
        }
    }
    rows
}

fn relabeled_partner(g: &UnitDistanceGraph, order: &[usize]) -> Vec<Option<usize>> {
    let n = g.vertex_count();
    let mut pos = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    order
        .iter()
        .map(|&old| g.antipodal_partner(old).map(|p| pos[p]))
        .collect()
}

/// Bit-row DFS that counts ordered k-vertex paths from one start vertex.
/// With `partner` present it skips extensions creating an antipodal pair at
/// index distance two.
struct RowWalker<'a> {
    rows: &'a [BitRow],
    partner: Option<&'a [Option<usize>]>,
    k: usize,
    visited: BitRow,
    path: Vec<usize>,
    count: u128,
}

impl<'a> RowWalker<'a> {
    fn new(rows: &'a [BitRow], partner: Option<&'a [Option<usize>]>, k: usize) -> Self {
        let n = rows.len();
        RowWalker {
            rows,
            partner,
            k,
            visited: BitRow::new(n),
            path: Vec::with_capacity(k),
            count: 0,
        }
    }

    fn run(&mut self, start: usize) -> u128 {
        self.count = 0;
        self.visited.set(start);
        self.path.push(start);
        self.extend();
        self.path.pop();
        self.visited.clear(start);
        self.count
    }

    fn banned(&self) -> Option<usize> {
        let d = self.path.len();
        if d < 2 {
            return None;
        }
        self.partner.and_then(|p| p[self.path[d - 2]])
    }

    fn extend(&mut self) {
        let d = self.path.len();
        if d == self.k {
            self.count += 1;
            return;
        }
        let v = self.path[d - 1];
        let banned = self.banned();
        if d == self.k - 1 {
            // Leaf level: every admissible neighbor completes one path.
            let mut c = 0u32;
            for u in self.rows[v].ones_minus(Some(&self.visited)) {
                if Some(u) != banned {
                    c += 1;
                }
            }
            self.count += c as u128;
            return;
        }
        let cands: Vec<usize> = self.rows[v]
            .ones_minus(Some(&self.visited))
            .filter(|&u| Some(u) != banned)
            .collect();
        for u in cands {
            self.visited.set(u);
            self.path.push(u);
            self.extend();
            self.path.pop();
            self.visited.clear(u);
        }
    }
}

fn optimized_ordered_paths(
    g: &UnitDistanceGraph,
    k: usize,
    antipodal_free: bool,
) -> BigUint {
    let n = g.vertex_count();
    if k < 1 || k > n {
        return BigUint::zero();
    }
    let order = degree_order(g);
    let rows = relabeled_rows(g, &order);
    let partner = antipodal_free.then(|| relabeled_partner(g, &order));
    (0..n)
        .into_par_iter()
        .map(|s| {
            let mut w = RowWalker::new(&rows, partner.as_deref(), k);
            BigUint::from(w.run(s))
        })
        .reduce(BigUint::zero, |a, b| a + b)
}

fn naive_ordered_paths(g: &UnitDistanceGraph, k: usize, antipodal_free: bool) -> BigUint {
    let n = g.vertex_count();
    if k < 1 || k > n {
        return BigUint::zero();
    }
    let mut total = BigUint::zero();
    let mut visited = vec![false; n];
    let mut path = Vec::with_capacity(k);
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &UnitDistanceGraph,
        k: usize,
        antipodal_free: bool,
        visited: &mut Vec<bool>,
        path: &mut Vec<usize>,
        count: &mut u128,
    ) {
        let d = path.len();
        if d == k {
            *count += 1;
            return;
        }
        let v = path[d - 1];
        let banned = if antipodal_free && d >= 2 {
            g.antipodal_partner(path[d - 2])
        } else {
            None
        };
        for &u in g.neighbors(v) {
            if !visited[u] && Some(u) != banned {
                visited[u] = true;
                path.push(u);
                dfs(g, k, antipodal_free, visited, path, count);
                path.pop();
                visited[u] = false;
            }
        }
    }
    for s in 0..n {
        let mut count = 0u128;
        visited[s] = true;
        path.push(s);
        dfs(g, k, antipodal_free, &mut visited, &mut path, &mut count);
        path.pop();
        visited[s] = false;
        total += BigUint::from(count);
    }
    total
}

/// Counts k-vertex paths: ordered traversals and the unordered count
/// (`ordered / 2` for k ≥ 2).
pub fn count_paths(
    g: &UnitDistanceGraph,
    k: usize,
    engine: Engine,
) -> Result<CountReport, CountError> {
    if k < 1 {
        return Err(CountError::BadK { k, min: 1 });
    }
    let ordered = match engine {
        Engine::Naive => naive_ordered_paths(g, k, false),
        Engine::Optimized => optimized_ordered_paths(g, k, false),
    };
    let unordered = if k >= 2 { halve(&ordered) } else { ordered.clone() };
    Ok(CountReport {
        k,
        ordered_paths: ordered,
        unordered_paths: unordered,
        antipodal_free_unordered: None,
        cycles_dihedral: None,
        engine,
    })
}

/// Unordered count of k-paths with no antipodal pair at index distance two.
pub fn count_antipodal_free_paths(
    g: &UnitDistanceGraph,
    k: usize,
    engine: Engine,
) -> Result<BigUint, CountError> {
    if k < 1 {
        return Err(CountError::BadK { k, min: 1 });
    }
    if g.antipodal_pairs().is_none() {
        return Err(CountError::MissingAntipodalData);
    }
    let ordered = match engine {
        Engine::Naive => naive_ordered_paths(g, k, true),
        Engine::Optimized => optimized_ordered_paths(g, k, true),
    };
    Ok(if k >= 2 { halve(&ordered) } else { ordered })
}

/// Ordered closed traversals (all starting points, both directions) of
/// k-cycles; the dihedral count times 2k.
pub fn count_closed_traversals(g: &UnitDistanceGraph, k: usize) -> BigUint {
    let n = g.vertex_count();
    if k < 3 || k > n {
        return BigUint::zero();
    }
    let mut total = BigUint::zero();
    let mut visited = vec![false; n];
    let mut path = Vec::with_capacity(k);
    fn dfs(
        g: &UnitDistanceGraph,
        k: usize,
        start: usize,
        visited: &mut Vec<bool>,
        path: &mut Vec<usize>,
        count: &mut u128,
    ) {
        let d = path.len();
        let v = path[d - 1];
        if d == k {
            if g.has_edge(v, start) {
                *count += 1;
            }
            return;
        }
        for &u in g.neighbors(v) {
            if !visited[u] {
                visited[u] = true;
                path.push(u);
                dfs(g, k, start, visited, path, count);
                path.pop();
                visited[u] = false;
            }
        }
    }
    for s in 0..n {
        let mut count = 0u128;
        visited[s] = true;
        path.push(s);
        dfs(g, k, s, &mut visited, &mut path, &mut count);
        path.pop();
        visited[s] = false;
        total += BigUint::from(count);
    }
    total
}

fn optimized_cycles(g: &UnitDistanceGraph, k: usize) -> BigUint {
    let n = g.vertex_count();
    if k < 3 || k > n {
        return BigUint::zero();
    }
    let order = degree_order(g);
    let rows = relabeled_rows(g, &order);

    // Canonical traversal: smallest vertex first, then the smaller of its two
    // cycle neighbors; each cycle is visited exactly once.
    struct CycleWalker<'a> {
        rows: &'a [BitRow],
        k: usize,
        start: usize,
        visited: BitRow,
        path: Vec<usize>,
        count: u128,
    }
    impl<'a> CycleWalker<'a> {
        fn extend(&mut self) {
            let d = self.path.len();
            let v = self.path[d - 1];
            if d == self.k {
                if self.rows[v].contains(self.start) && self.path[1] < v {
                    self.count += 1;
                }
                return;
            }
            let cands: Vec<usize> = self.rows[v]
                .ones_minus(Some(&self.visited))
                .filter(|&u| u > self.start)
                .collect();
            for u in cands {
                self.visited.set(u);
                self.path.push(u);
                self.extend();
                self.path.pop();
                self.visited.clear(u);
            }
        }
    }

    (0..n)
        .into_par_iter()
        .map(|s| {
            let mut w = CycleWalker {
                rows: &rows,
                k,
                start: s,
                visited: BitRow::new(n),
                path: Vec::with_capacity(k),
                count: 0,
            };
            w.visited.set(s);
            w.path.push(s);
            w.extend();
            BigUint::from(w.count)
        })
        .reduce(BigUint::zero, |a, b| a + b)
}

/// Counts k-vertex cycles up to rotation and reflection.
pub fn count_cycles(
    g: &UnitDistanceGraph,
    k: usize,
    engine: Engine,
) -> Result<BigUint, CountError> {
    if k < 3 {
        return Err(CountError::BadK { k, min: 3 });
    }
    Ok(match engine {
        Engine::Naive => {
            let traversals = count_closed_traversals(g, k);
            let denom = BigUint::from(2 * k);
            debug_assert!((&traversals % &denom).is_zero());
            traversals / denom
        }
        Engine::Optimized => optimized_cycles(g, k),
    })
}

/// Fills every count the graph supports.
pub fn full_report(
    g: &UnitDistanceGraph,
    k: usize,
    engine: Engine,
) -> Result<CountReport, CountError> {
    let mut report = count_paths(g, k, engine)?;
    if g.antipodal_pairs().is_some() {
        report.antipodal_free_unordered = Some(count_antipodal_free_paths(g, k, engine)?);
    }
    if k >= 3 {
        report.cycles_dihedral = Some(count_cycles(g, k, engine)?);
    }
    Ok(report)
}

/// Evaluates the designated pattern of a configuration: the number of slot
/// assignments whose forced vertices all exist and whose consecutive pairs
/// (and the closing pair, for cycles) are exactly at unit distance. Free
/// slots range over the whole free set of their circle; coincidences between
/// slots are not excluded, which is what makes the closed form a product.
pub fn count_pattern_paths(config: &SphereConfig, k: usize) -> Result<BigUint, CountError> {
    let pat = config.pattern.as_ref().ok_or(CountError::PatternMissing)?;
    if pat.k != k {
        return Err(CountError::PatternKMismatch { pattern_k: pat.k, k });
    }
    let pts = &config.points;
    let orthogonal =
        |u: usize, v: usize| -> bool { pts[u].dot(&pts[v]).is_zero() };

    let mut pole_index: HashMap<(bool, usize), usize> = HashMap::new();
    for (i, label) in config.labels.iter().enumerate() {
        match label {
            PointLabel::North(c) => {
                pole_index.insert((true, *c), i);
            }
            PointLabel::South(c) => {
                pole_index.insert((false, *c), i);
            }
            _ => {}
        }
    }
    // Rich pairs grouped by first element.
    let mut pairs_by_first: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &pat.rich_pairs {
        pairs_by_first.entry(a).or_default().push(b);
    }

    // States: (first-slot vertex, current vertex) -> number of assignments.
    let mut states: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    for (si, slot) in pat.slots.iter().enumerate() {
        let mut next: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
        if si == 0 {
            match slot {
                PatternSlot::Free(c) => {
                    for &v in pat.free_sets.get(*c).map(|s| s.as_slice()).unwrap_or(&[]) {
                        next.insert((v, v), BigUint::one());
                    }
                }
                PatternSlot::RichFirst => {
                    for &a in pairs_by_first.keys() {
                        next.insert((a, a), BigUint::one());
                    }
                }
                _ => return Err(CountError::PatternMissing),
            }
        } else {
            for ((first, cur), cnt) in &states {
                let step = |target: usize, next: &mut BTreeMap<(usize, usize), BigUint>| {
                    if orthogonal(*cur, target) {
                        *next
                            .entry((*first, target))
                            .or_insert_with(BigUint::zero) += cnt;
                    }
                };
                match slot {
                    PatternSlot::Free(c) => {
                        for &v in
                            pat.free_sets.get(*c).map(|s| s.as_slice()).unwrap_or(&[])
                        {
                            step(v, &mut next);
                        }
                    }
                    PatternSlot::North(c) => {
                        if let Some(&v) = pole_index.get(&(true, *c)) {
                            step(v, &mut next);
                        }
                    }
                    PatternSlot::South(c) => {
                        if let Some(&v) = pole_index.get(&(false, *c)) {
                            step(v, &mut next);
                        }
                    }
                    PatternSlot::Chain => {
                        if let Some(&v) = pat.successor.get(cur) {
                            step(v, &mut next);
                        }
                    }
                    PatternSlot::RichSecond => {
                        if let Some(bs) = pairs_by_first.get(first) {
                            for &b in bs {
                                step(b, &mut next);
                            }
                        }
                    }
                    PatternSlot::Closer => {
                        if let Some(&v) = pat.closer.get(first) {
                            step(v, &mut next);
                        }
                    }
                    PatternSlot::Precloser => {
                        if let Some(&v) = pat.precloser.get(first) {
                            step(v, &mut next);
                        }
                    }
                    // A rich pair can only open the pattern.
                    PatternSlot::RichFirst => return Err(CountError::PatternMissing),
                }
            }
        }
        states = next;
    }
    let mut total = BigUint::zero();
    for ((first, cur), cnt) in states {
        if pat.kind == PatternKind::Cycle && !orthogonal(cur, first) {
            continue;
        }
        total += cnt;
    }
    Ok(total)
}

/// Closed form for the designated count: `q` to the number of free slots,
/// with the rich pair count `e` replacing one factor for k ≡ 2 (mod 5), and
/// one factor removed for cycles.
pub fn closed_form_pattern_count(
    k: usize,
    q: &BigUint,
    rich_pairs: Option<&BigUint>,
    kind: PatternKind,
) -> BigUint {
    use crate::constructions::free_slot_count as fsc;
    let pow = |e: usize| num_traits::pow(q.clone(), e);
    match (kind, k % 5) {
        (PatternKind::Path, 2) => {
            let e = rich_pairs.expect("rich pair count required for k ≡ 2 (mod 5)");
            if k == 2 {
                e.clone()
            } else {
                e * pow(fsc(k - 2) - 1)
            }
        }
        (PatternKind::Path, _) => pow(fsc(k)),
        (PatternKind::Cycle, 2) => {
            let e = rich_pairs.expect("rich pair count required for k ≡ 2 (mod 5)");
            e * pow(fsc(k - 2) - 2)
        }
        (PatternKind::Cycle, _) => {
            if k == 4 {
                pow(2)
            } else {
                pow(fsc(k) - 1)
            }
        }
    }
}

/// The free-set size and rich-pair count of a generated configuration, the
/// inputs to the closed form.
pub fn pattern_parameters(config: &SphereConfig) -> Option<(BigUint, Option<BigUint>)> {
    let pat = config.pattern.as_ref()?;
    let q = pat
        .free_sets
        .first()
        .map(|s| BigUint::from(s.len()))
        .unwrap_or_else(BigUint::zero);
    let e = if pat.rich_pairs.is_empty() {
        None
    } else {
        Some(BigUint::from(pat.rich_pairs.len()))
    };
    Some((q, e))
}

fn spec_rows(spec: &RegularGraphSpec) -> Vec<BitRow> {
    let mut rows = vec![BitRow::new(spec.vertex_count); spec.vertex_count];
    for &(u, v) in &spec.edges {
        rows[u].set(v);
        rows[v].set(u);
    }
    rows
}

/// Static matching order: most-constrained pattern vertex first.
fn embedding_order(spec: &RegularGraphSpec) -> Vec<usize> {
    let degs = spec.degrees();
    let nbrs = spec.neighbors();
    let mut order = Vec::with_capacity(spec.vertex_count);
    let mut placed = vec![false; spec.vertex_count];
    for _ in 0..spec.vertex_count {
        let best = (0..spec.vertex_count)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let anchored = nbrs[v].iter().filter(|&&w| placed[w]).count();
                (anchored, degs[v], std::cmp::Reverse(v))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    order
}

/// Counts injective maps V(spec) → V(g) carrying spec edges to edges
/// (and, in induced mode, non-edges to non-edges).
pub fn count_embeddings(
    g: &UnitDistanceGraph,
    spec: &RegularGraphSpec,
    induced: bool,
) -> BigUint {
    let kp = spec.vertex_count;
    if kp == 0 || kp > g.vertex_count() {
        return BigUint::zero();
    }
    let order = embedding_order(spec);
    let spec_adj = spec_rows(spec);
    let degs = spec.degrees();
    let n = g.vertex_count();

    struct Embedder<'a> {
        g: &'a UnitDistanceGraph,
        order: &'a [usize],
        spec_adj: &'a [BitRow],
        degs: &'a [usize],
        induced: bool,
        image: Vec<usize>,
        used: BitRow,
        count: u128,
    }
    impl<'a> Embedder<'a> {
        fn place(&mut self, step: usize) {
            if step == self.order.len() {
                self.count += 1;
                return;
            }
            let u = self.order[step];
            let mut anchors: Vec<(usize, bool)> = Vec::new();
            for prev in 0..step {
                let w = self.order[prev];
                anchors.push((self.image[w], self.spec_adj[u].contains(w)));
            }
            'cand: for v in 0..self.g.vertex_count() {
                if self.used.contains(v) || self.g.degree(v) < self.degs[u] {
                    continue;
                }
                for &(img, need_edge) in &anchors {
                    let has = self.g.has_edge(v, img);
                    if need_edge != has && (need_edge || self.induced) {
                        continue 'cand;
                    }
                }
                self.used.set(v);
                self.image[u] = v;
                self.place(step + 1);
                self.used.clear(v);
            }
        }
    }
    let mut e = Embedder {
        g,
        order: &order,
        spec_adj: &spec_adj,
        degs: &degs,
        induced,
        image: vec![usize::MAX; kp],
        used: BitRow::new(n),
        count: 0,
    };
    e.place(0);
    BigUint::from(e.count)
}

/// Automorphism count of a pattern graph, computed as the number of
/// edge-bijective self-embeddings.
pub fn automorphism_count(spec: &RegularGraphSpec) -> BigUint {
    let host = UnitDistanceGraph::from_spec(spec);
    count_embeddings(&host, spec, true)
}

/// Counts copies (vertex subsets with an isomorphism) of `spec` inside `g`:
/// labeled embeddings divided by the automorphism count.
pub fn count_subgraph_copies(
    g: &UnitDistanceGraph,
    spec: &RegularGraphSpec,
    induced: bool,
) -> BigUint {
    if spec.vertex_count > g.vertex_count() {
        return BigUint::zero();
    }
    let embeddings = count_embeddings(g, spec, induced);
    let aut = automorphism_count(spec);
    debug_assert!((&embeddings % &aut).is_zero());
    embeddings / aut
}

impl UnitDistanceGraph {
    /// An abstract host graph carrying just the spec's adjacency.
    pub fn from_spec(spec: &RegularGraphSpec) -> UnitDistanceGraph {
        UnitDistanceGraph::from_abstract_edges(spec.vertex_count, spec.edges.clone())
    }
}

/// Counts labeled k-tuples (p_1, …, p_k), p_i from part i, pairwise
/// distinct, such that every spec edge lands on a graph edge. This is the
/// multipartite count; parts may overlap.
pub fn count_prescribed_copies(
    g: &UnitDistanceGraph,
    spec: &RegularGraphSpec,
) -> Result<BigUint, CountError> {
    let parts = g.parts().ok_or(CountError::PartsMissing)?;
    if parts.len() != spec.vertex_count {
        return Err(CountError::PartMismatch {
            got: parts.len(),
            want: spec.vertex_count,
        });
    }
    let nbrs = spec.neighbors();
    let n = g.vertex_count();

    struct Tuples<'a> {
        g: &'a UnitDistanceGraph,
        parts: &'a [Vec<usize>],
        nbrs: &'a [Vec<usize>],
        image: Vec<usize>,
        used: BitRow,
        count: u128,
    }
    impl<'a> Tuples<'a> {
        fn place(&mut self, i: usize) {
            if i == self.parts.len() {
                self.count += 1;
                return;
            }
            'cand: for ci in 0..self.parts[i].len() {
                let v = self.parts[i][ci];
                if self.used.contains(v) {
                    continue;
                }
                for &j in &self.nbrs[i] {
                    if j < i && !self.g.has_edge(v, self.image[j]) {
                        continue 'cand;
                    }
                }
                self.used.set(v);
                self.image[i] = v;
                self.place(i + 1);
                self.used.clear(v);
            }
        }
    }
    let mut t = Tuples {
        g,
        parts,
        nbrs: &nbrs,
        image: vec![usize::MAX; parts.len()],
        used: BitRow::new(n),
        count: 0,
    };
    t.place(0);
    Ok(BigUint::from(t.count))
}
