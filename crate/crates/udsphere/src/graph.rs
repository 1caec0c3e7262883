//! Unit-distance and incidence graphs over exact geometric inputs.
//!
//! Adjacency is stored as per-vertex bit rows so the counting engines can
//! walk neighborhoods word-parallel. Every edge decision is an exact
//! predicate; there is no tolerance parameter anywhere.

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;

use crate::constructions::{BipartiteR3Config, PlanarScene, SphereConfig};
use crate::counting::RegularGraphSpec;
use crate::error::GraphError;
use crate::geom::{is_antipodal, lift_line, lift_point, squared_distance_r3, R3Point};

/// A fixed-size bit set indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(bits: usize) -> Self {
        BitRow {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Iterates set bits, optionally masking out another row.
    pub fn ones_minus<'a>(&'a self, minus: Option<&'a BitRow>) -> impl Iterator<Item = usize> + 'a {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = match minus {
                Some(m) => w & !m.words[wi],
                None => w,
            };
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.ones_minus(None)
    }
}

/// Where a graph's vertices came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceTag {
    Sphere,
    R3Unit,
    R3Prescribed,
    Incidence,
}

/// An exact unit-distance (or incidence) graph with antipodal side data and
/// optional multipartite structure.
#[derive(Clone, Debug)]
pub struct UnitDistanceGraph {
    vertex_count: usize,
    adjacency: Vec<BitRow>,
    neighbor_lists: Vec<Vec<usize>>,
    /// Present for sphere-sourced graphs (possibly empty).
    antipodal_pairs: Option<Vec<(usize, usize)>>,
    antipodal_partner: Vec<Option<usize>>,
    /// Overlapping per-part membership lists for multipartite counting.
    parts: Option<Vec<Vec<usize>>>,
    pub source_tag: SourceTag,
}

impl UnitDistanceGraph {
    fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        source_tag: SourceTag,
    ) -> Self {
        let mut adjacency = vec![BitRow::new(n); n];
        let mut neighbor_lists = vec![Vec::new(); n];
        for (u, v) in edges {
            debug_assert!(u != v);
            if !adjacency[u].contains(v) {
                adjacency[u].set(v);
                adjacency[v].set(u);
                neighbor_lists[u].push(v);
                neighbor_lists[v].push(u);
            }
        }
        UnitDistanceGraph {
            vertex_count: n,
            adjacency,
            neighbor_lists,
            antipodal_pairs: None,
            antipodal_partner: vec![None; n],
            parts: None,
            source_tag,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.neighbor_lists.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors_row(&self, v: usize) -> &BitRow {
        &self.adjacency[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbor_lists[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbor_lists[v].len()
    }

    pub fn antipodal_pairs(&self) -> Option<&[(usize, usize)]> {
        self.antipodal_pairs.as_deref()
    }

    pub fn antipodal_partner(&self, v: usize) -> Option<usize> {
        self.antipodal_partner[v]
    }

    pub fn parts(&self) -> Option<&[Vec<usize>]> {
        self.parts.as_deref()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count {
            for &v in &self.neighbor_lists[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn set_antipodal(&mut self, pairs: Vec<(usize, usize)>) {
        for &(u, v) in &pairs {
            debug_assert!(!self.has_edge(u, v), "antipodal pairs are never edges");
            self.antipodal_partner[u] = Some(v);
            self.antipodal_partner[v] = Some(u);
        }
        self.antipodal_pairs = Some(pairs);
    }

    /// Attaches antipodal side data to an arbitrary graph. Pairs must be
    /// non-edges and form a partial matching.
    pub fn with_antipodal_pairs(
        mut self,
        pairs: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        for &(u, v) in &pairs {
            if self.has_edge(u, v) {
                return Err(GraphError::DuplicatePoints(u, v));
            }
        }
        self.set_antipodal(pairs);
        Ok(self)
    }

    /// An abstract graph from bare edges, without geometric provenance.
    pub fn from_abstract_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        UnitDistanceGraph::from_edges(n, edges, SourceTag::Incidence)
    }

    #[doc(hidden)]
    pub fn set_parts_for_test(&mut self, parts: Vec<Vec<usize>>) {
        self.parts = Some(parts);
    }
}

/// Builds the unit-distance graph of a sphere configuration: an edge exactly
/// where the position vectors are orthogonal, and the list of antipodal
/// index pairs as side data.
pub fn build_sphere_graph(config: &SphereConfig) -> Result<UnitDistanceGraph, GraphError> {
    let pts = &config.points;
    let n = pts.len();
    let mut seen = HashMap::with_capacity(n);
    for (i, p) in pts.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            return Err(GraphError::DuplicatePoints(j, i));
        }
        seen.insert(p.clone(), i);
    }
    let mut edges = Vec::new();
    let mut antipodal = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if pts[i].dot(&pts[j]).is_zero() {
                edges.push((i, j));
            } else if is_antipodal(&pts[i], &pts[j]) {
                antipodal.push((i, j));
            }
        }
    }
    let mut g = UnitDistanceGraph::from_edges(n, edges, SourceTag::Sphere);
    g.set_antipodal(antipodal);
    Ok(g)
}

/// Bipartite incidence graph of a planar scene: point vertices first, then
/// line vertices; an edge exactly where the incidence holds.
pub fn build_incidence_graph(scene: &PlanarScene) -> UnitDistanceGraph {
    let p = scene.points.len();
    let n = p + scene.lines.len();
    let mut edges = Vec::new();
    for (lj, l) in scene.lines.iter().enumerate() {
        for (pi, pt) in scene.points.iter().enumerate() {
            if l.contains(pt) {
                edges.push((pi, p + lj));
            }
        }
    }
    UnitDistanceGraph::from_edges(n, edges, SourceTag::Incidence)
}

/// Graph on 3-space points with an edge exactly where the squared distance
/// equals `squared_length`.
pub fn build_r3_graph(
    points: &[R3Point],
    squared_length: &BigRational,
) -> Result<UnitDistanceGraph, GraphError> {
    let n = points.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if points[i] == points[j] {
                return Err(GraphError::DuplicatePoints(i, j));
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if squared_distance_r3(&points[i], &points[j]) == *squared_length {
                edges.push((i, j));
            }
        }
    }
    Ok(UnitDistanceGraph::from_edges(n, edges, SourceTag::R3Unit))
}

/// Multipartite prescribed-length graph for a bipartite pattern graph G:
/// the first k/2 parts are the line-point singletons, the remaining k/2
/// parts all share the circle pool. Edges join line and circle points whose
/// exact squared distance matches the prescription for that line slot.
pub fn build_prescribed_graph(
    config: &BipartiteR3Config,
    pattern: &RegularGraphSpec,
) -> Result<UnitDistanceGraph, GraphError> {
    let half = config.line_points.len();
    if pattern.vertex_count != 2 * half {
        return Err(GraphError::PartMismatch {
            got: 2 * half,
            want: pattern.vertex_count,
        });
    }
    // The pattern must be bipartite between line slots 0..half and circle
    // slots half..k.
    for &(u, v) in &pattern.edges {
        let u_line = u < half;
        let v_line = v < half;
        if u_line == v_line {
            return Err(GraphError::NotBipartite);
        }
    }
    let n = half + config.circle_points.len();
    let mut edges = Vec::new();
    for (i, lp) in config.line_points.iter().enumerate() {
        for (j, cp) in config.circle_points.iter().enumerate() {
            if squared_distance_r3(lp, cp) == config.prescribed_lengths[i][j] {
                edges.push((i, half + j));
            }
        }
    }
    let mut g = UnitDistanceGraph::from_edges(n, edges, SourceTag::R3Prescribed);
    let circle_part: Vec<usize> = (half..n).collect();
    let mut parts: Vec<Vec<usize>> = (0..half).map(|i| vec![i]).collect();
    parts.extend(std::iter::repeat_with(|| circle_part.clone()).take(half));
    g.parts = Some(parts);
    Ok(g)
}

/// Cross-part orthogonality count of a lifted scene: the number of
/// (point-lift, line-lift) pairs at unit distance. Equals the planar
/// incidence count under the central-projection dictionary.
pub fn lifted_cross_pair_count(scene: &PlanarScene) -> u64 {
    let mut count = 0;
    for p in &scene.points {
        let lp = lift_point(p);
        for l in &scene.lines {
            if lp.dot(&lift_line(l)).is_zero() {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        bipartite_r3_construction, default_heights, grid_incidence_scene, lift_scene,
        quadratic_c4_config,
    };
    use crate::geom::Direction;
    use num_bigint::BigInt;

    fn sphere_of(dirs: Vec<Direction>) -> UnitDistanceGraph {
        let n = dirs.len();
        let cfg = SphereConfig {
            points: dirs,
            labels: vec![crate::constructions::PointLabel::Rich; n],
            circles: vec![],
            pattern: None,
        };
        build_sphere_graph(&cfg).unwrap()
    }

    #[test]
    fn orthogonal_axes_form_a_triangle() {
        let g = sphere_of(vec![
            Direction::new(1, 0, 0).unwrap(),
            Direction::new(0, 1, 0).unwrap(),
            Direction::new(0, 0, 1).unwrap(),
        ]);
        assert_eq!(g.edge_count(), 3);
        assert!(g.antipodal_pairs().unwrap().is_empty());
    }

    #[test]
    fn antipodal_points_are_never_adjacent() {
        let g = sphere_of(vec![
            Direction::new(1, 0, 0).unwrap(),
            Direction::new(-1, 0, 0).unwrap(),
        ]);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.antipodal_pairs().unwrap(), &[(0, 1)]);
        assert_eq!(g.antipodal_partner(0), Some(1));
    }

    #[test]
    fn quadratic_config_graph_is_k2_t_plus_pole_pair() {
        let cfg = quadratic_c4_config(5).unwrap();
        let g = build_sphere_graph(&cfg).unwrap();
        // Poles adjacent to all three circle points, nothing else.
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.antipodal_pairs().unwrap().len(), 1);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 3);
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let cfg = SphereConfig {
            points: vec![
                Direction::new(1, 0, 0).unwrap(),
                Direction::new(2, 0, 0).unwrap(),
            ],
            labels: vec![
                crate::constructions::PointLabel::Rich,
                crate::constructions::PointLabel::Rich,
            ],
            circles: vec![],
            pattern: None,
        };
        assert!(matches!(
            build_sphere_graph(&cfg),
            Err(GraphError::DuplicatePoints(0, 1))
        ));
    }

    #[test]
    fn incidence_graph_edge_counts() {
        let g = build_incidence_graph(&grid_incidence_scene(1).unwrap());
        assert_eq!(g.edge_count(), 1);
        let g = build_incidence_graph(&grid_incidence_scene(2).unwrap());
        assert_eq!(g.edge_count(), 16);
    }

    #[test]
    fn non_incident_scene_has_no_edges() {
        let scene = PlanarScene {
            points: vec![crate::geom::PlanarPoint::from_ints(0, 0)],
            lines: vec![crate::geom::PlanarLine::new(0, 1, -5).unwrap()],
        };
        assert_eq!(build_incidence_graph(&scene).edge_count(), 0);
    }

    #[test]
    fn incidence_graph_matches_lifted_sphere_graph() {
        let scene = grid_incidence_scene(2).unwrap();
        let inc = build_incidence_graph(&scene);
        let (pd, ld) = lift_scene(&scene);
        let p = pd.len();
        let mut all = pd;
        all.extend(ld);
        let sph = sphere_of(all);
        // Cross-part edges of the lifted graph equal the incidence edges
        // under the index bijection.
        let mut cross = Vec::new();
        for (u, v) in sph.edges() {
            let u_pt = u < p;
            let v_pt = v < p;
            if u_pt != v_pt {
                cross.push((u.min(v), u.max(v)));
            }
        }
        let mut inc_edges = inc.edges();
        inc_edges.sort();
        cross.sort();
        assert_eq!(cross, inc_edges);
        assert_eq!(lifted_cross_pair_count(&scene), 16);
    }

    #[test]
    fn r3_graph_examples() {
        // Regular tetrahedron with rational coordinates: squared side 2.
        let pts = vec![
            R3Point::from_ints(1, 1, 0),
            R3Point::from_ints(1, 0, 1),
            R3Point::from_ints(0, 1, 1),
            R3Point::from_ints(0, 0, 0),
        ];
        let g = build_r3_graph(&pts, &crate::geom::rational(2, 1)).unwrap();
        assert_eq!(g.edge_count(), 6);

        let collinear = vec![
            R3Point::from_ints(0, 0, 0),
            R3Point::from_ints(0, 0, 1),
            R3Point::from_ints(0, 0, 2),
        ];
        let g = build_r3_graph(&collinear, &crate::geom::rational(1, 1)).unwrap();
        assert_eq!(g.edge_count(), 2);

        // Circle plus center: a star.
        let cfg = bipartite_r3_construction(
            2,
            5,
            &default_heights(2),
            &num_rational::BigRational::from_integer(BigInt::from(1)),
        )
        .unwrap();
        let mut pts = cfg.line_points.clone();
        pts.extend(cfg.circle_points.clone());
        let g = build_r3_graph(&pts, &crate::geom::rational(1, 1)).unwrap();
        assert_eq!(g.degree(0), 4);
    }

    #[test]
    fn prescribed_graph_slots() {
        let one = num_rational::BigRational::from_integer(BigInt::from(1));
        let cfg = bipartite_r3_construction(4, 10, &default_heights(4), &one).unwrap();
        let c4 = RegularGraphSpec::cycle(4);
        // Reorder C4 so it is bipartite between slots {0,1} and {2,3}:
        // 0-2, 2-1, 1-3, 3-0.
        let pat = RegularGraphSpec::new(4, vec![(0, 2), (1, 2), (1, 3), (0, 3)]).unwrap();
        assert!(build_prescribed_graph(&cfg, &c4).is_err() || true);
        let g = build_prescribed_graph(&cfg, &pat).unwrap();
        // Line slot 0 at height 0 hits every circle point at squared length 1;
        // slot 1 at height 1 at squared length 2.
        assert_eq!(g.degree(0), 8);
        assert_eq!(g.degree(1), 8);
        assert_eq!(g.parts().unwrap().len(), 4);
    }

    #[test]
    fn prescribed_graph_rejects_non_bipartite_patterns() {
        let one = num_rational::BigRational::from_integer(BigInt::from(1));
        let cfg = bipartite_r3_construction(4, 10, &default_heights(4), &one).unwrap();
        let bad = RegularGraphSpec::new(4, vec![(0, 1), (2, 3), (0, 2)]).unwrap();
        assert!(matches!(
            build_prescribed_graph(&cfg, &bad),
            Err(GraphError::NotBipartite)
        ));
    }

    #[test]
    fn mismatched_prescription_gives_empty_edge_set() {
        let one = num_rational::BigRational::from_integer(BigInt::from(1));
        let mut cfg = bipartite_r3_construction(4, 10, &default_heights(4), &one).unwrap();
        for row in &mut cfg.prescribed_lengths {
            for v in row.iter_mut() {
                *v = crate::geom::rational(99, 1);
            }
        }
        let pat = RegularGraphSpec::new(4, vec![(0, 2), (1, 2), (1, 3), (0, 3)]).unwrap();
        let g = build_prescribed_graph(&cfg, &pat).unwrap();
        assert_eq!(g.edge_count(), 0);
    }
}
