use std::collections::BTreeSet;

use serde::Serialize;

use super::{MapError, SimpleGraph};
use crate::groups::{FiniteGroup, Presentation, Word};

/// A map on a closed surface given by its vertices, edges and faces and the
/// incidences between them.
///
/// Each edge has two ends and two sides. In a map built from cosets both the
/// ends and the sides are distinct; degenerate maps built with
/// [`CombinatorialMap::from_incidence`] may have an edge with the same face
/// on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialMap {
    vertices: usize,
    faces: usize,
    edge_ends: Vec<[usize; 2]>,
    edge_sides: Vec<[usize; 2]>,
    vertex_face: BTreeSet<(usize, usize)>,
    graph: SimpleGraph,
}

/// Summary `{v, e, f, chi, genus, p, q}` of a validated rotary map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub chi: i64,
    pub genus: u64,
    pub p: usize,
    pub q: usize,
}

/// Builds the map whose vertices, edges and faces are the right cosets of
/// the three subgroups; a vertex, edge or face are incident when their cosets
/// intersect.
///
/// Every element lies in exactly one coset of each kind, so incidences are
/// read off element by element. The edge ends and sides must each be two
/// distinct cosets, the vertex-face incidence seen through the elements must
/// agree with the one seen through the edges, and the resulting graph must be
/// simple.
pub fn build_map_from_cosets(
    group: &FiniteGroup,
    vertex_subgroup: &[Word],
    edge_subgroup: &[Word],
    face_subgroup: &[Word],
) -> Result<CombinatorialMap, MapError> {
    let v = group.subgroup_cosets(vertex_subgroup);
    let e = group.subgroup_cosets(edge_subgroup);
    let f = group.subgroup_cosets(face_subgroup);

    let mut ends: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); e.count()];
    let mut sides: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); e.count()];
    let mut vertex_face = BTreeSet::new();
    for g in 0..group.order() {
        let edge = e.coset_of_element(g);
        ends[edge].insert(v.coset_of_element(g));
        sides[edge].insert(f.coset_of_element(g));
        vertex_face.insert((v.coset_of_element(g), f.coset_of_element(g)));
    }
    let pair = |set: &BTreeSet<usize>, what: &str, edge: usize| -> Result<[usize; 2], MapError> {
        match set.iter().copied().collect::<Vec<_>>().as_slice() {
            [a, b] => Ok([*a, *b]),
            other => Err(MapError::MalformedIncidence(format!(
                "edge {edge} meets {} {what}",
                other.len()
            ))),
        }
    };
    let edge_ends = (0..e.count())
        .map(|k| pair(&ends[k], "vertices", k))
        .collect::<Result<Vec<_>, _>>()?;
    let edge_sides = (0..e.count())
        .map(|k| pair(&sides[k], "faces", k))
        .collect::<Result<Vec<_>, _>>()?;
    let map = CombinatorialMap::assemble(v.count(), f.count(), edge_ends, edge_sides)?;
    if map.vertex_face != vertex_face {
        return Err(MapError::MalformedIncidence(
            "vertex-face incidence disagrees with the edges".into(),
        ));
    }
    Ok(map)
}

impl CombinatorialMap {
    /// The rotary map of a two-generator group `<y, z | ...>`: vertices are
    /// the cosets of `<z>`, edges those of `<yz>` and faces those of `<y>`.
    pub fn from_rotary_presentation(p: &Presentation, max_cosets: usize) -> Result<Self, MapError> {
        let group = FiniteGroup::realize(p, max_cosets)?;
        Self::from_rotary_group(&group)
    }

    pub fn from_rotary_group(group: &FiniteGroup) -> Result<Self, MapError> {
        let p = group.presentation();
        if p.generators().len() != 2 {
            return Err(MapError::MalformedIncidence(format!(
                "rotary map needs two generators, found {}",
                p.generators().len()
            )));
        }
        let y = Word(vec![crate::groups::Letter::new(0, false)]);
        let z = Word(vec![crate::groups::Letter::new(1, false)]);
        let yz = y.concat(&z);
        build_map_from_cosets(group, &[z], &[yz], &[y])
    }

    /// A map from explicit incidences: the two end vertices and the two side
    /// faces of every edge.
    pub fn from_incidence(
        vertices: usize,
        faces: usize,
        edge_ends: Vec<[usize; 2]>,
        edge_sides: Vec<[usize; 2]>,
    ) -> Result<Self, MapError> {
        if edge_ends.len() != edge_sides.len() {
            return Err(MapError::MalformedIncidence(format!(
                "{} edges with ends but {} with sides",
                edge_ends.len(),
                edge_sides.len()
            )));
        }
        if let Some(k) = edge_ends
            .iter()
            .position(|e| e.iter().any(|&x| x >= vertices))
        {
            return Err(MapError::MalformedIncidence(format!(
                "edge {k} has an unknown vertex"
            )));
        }
        if let Some(k) = edge_sides
            .iter()
            .position(|e| e.iter().any(|&x| x >= faces))
        {
            return Err(MapError::MalformedIncidence(format!(
                "edge {k} has an unknown face"
            )));
        }
        Self::assemble(vertices, faces, edge_ends, edge_sides)
    }

    fn assemble(
        vertices: usize,
        faces: usize,
        edge_ends: Vec<[usize; 2]>,
        edge_sides: Vec<[usize; 2]>,
    ) -> Result<Self, MapError> {
        let mut seen = BTreeSet::new();
        for (k, &[a, b]) in edge_ends.iter().enumerate() {
            if a == b {
                return Err(MapError::MalformedIncidence(format!(
                    "edge {k} is a loop at {a}"
                )));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(MapError::MalformedIncidence(format!(
                    "edge {k} is parallel to another edge between {a} and {b}"
                )));
            }
        }
        let graph = SimpleGraph::new(vertices, edge_ends.iter().map(|&[a, b]| (a, b)))?;
        let vertex_face = edge_ends
            .iter()
            .zip(&edge_sides)
            .flat_map(|(ends, sides)| {
                ends.iter()
                    .flat_map(move |&v| sides.iter().map(move |&f| (v, f)))
            })
            .collect();
        Ok(CombinatorialMap {
            vertices,
            faces,
            edge_ends,
            edge_sides,
            vertex_face,
            graph,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ends.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces
    }

    pub fn edge_ends(&self) -> &[[usize; 2]] {
        &self.edge_ends
    }

    pub fn edge_sides(&self) -> &[[usize; 2]] {
        &self.edge_sides
    }

    /// Vertex-face incidence pairs.
    pub fn vertex_face(&self) -> &BTreeSet<(usize, usize)> {
        &self.vertex_face
    }

    pub fn underlying_graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        (0..self.vertices).map(|v| self.graph.degree(v)).collect()
    }

    /// Number of edge sides on each face.
    pub fn face_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.faces];
        for s in self.edge_sides.iter().flatten() {
            sizes[*s] += 1;
        }
        sizes
    }

    /// `v - e + f`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edge_count() as i64 + self.faces as i64
    }

    /// `(2 - chi) / 2`, assuming the surface is orientable.
    pub fn genus_orientable(&self) -> Result<u64, MapError> {
        genus_from_chi(self.euler_characteristic())
    }

    /// Checks that all faces have the same size `p` and all vertices the
    /// same degree `q`, and returns `(p, q)`.
    pub fn validate_rotary_type(&self) -> Result<(usize, usize), MapError> {
        let sizes = self.face_sizes();
        let degrees = self.vertex_degrees();
        let p = sizes.first().copied().unwrap_or(0);
        let q = degrees.first().copied().unwrap_or(0);
        if let Some(f) = sizes.iter().position(|&s| s != p) {
            return Err(MapError::NotRegular(format!(
                "face {f} has {} sides, face 0 has {p}",
                sizes[f]
            )));
        }
        if let Some(v) = degrees.iter().position(|&d| d != q) {
            return Err(MapError::NotRegular(format!(
                "vertex {v} has degree {}, vertex 0 has {q}",
                degrees[v]
            )));
        }
        Ok((p, q))
    }

    pub fn report(&self) -> Result<MapReport, MapError> {
        let (p, q) = self.validate_rotary_type()?;
        Ok(MapReport {
            v: self.vertices,
            e: self.edge_count(),
            f: self.faces,
            chi: self.euler_characteristic(),
            genus: self.genus_orientable()?,
            p,
            q,
        })
    }
}

/// `(2 - chi) / 2`; odd `chi` cannot come from an orientable surface.
pub fn genus_from_chi(chi: i64) -> Result<u64, MapError> {
    if chi % 2 != 0 || chi > 2 {
        return Err(MapError::OddEuler(chi));
    }
    Ok(((2 - chi) / 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_MAX_COSETS;

    #[test]
    fn tetrahedron() {
        let p: Presentation = "<y, z | y^3, z^3, (y*z)^2>".parse().unwrap();
        let m = CombinatorialMap::from_rotary_presentation(&p, 100).unwrap();
        assert_eq!(
            (m.vertex_count(), m.edge_count(), m.face_count()),
            (4, 6, 4)
        );
        assert_eq!(m.euler_characteristic(), 2);
        assert_eq!(m.genus_orientable(), Ok(0));
        assert_eq!(m.validate_rotary_type(), Ok((3, 3)));
        assert_eq!(m.underlying_graph(), &SimpleGraph::complete(4));
    }

    #[test]
    fn gamma10_map() {
        let m = CombinatorialMap::from_rotary_presentation(
            &Presentation::gamma10(),
            DEFAULT_MAX_COSETS,
        )
        .unwrap();
        let r = m.report().unwrap();
        assert_eq!(
            r,
            MapReport {
                v: 54,
                e: 216,
                f: 144,
                chi: -18,
                genus: 10,
                p: 3,
                q: 8
            }
        );
        let g = m.underlying_graph();
        assert!(g.is_connected());
        assert_eq!(g.regular_degree(), Some(8));
        assert_eq!(m.face_sizes().iter().sum::<usize>(), 2 * 216);
    }

    #[test]
    fn degenerate_maps() {
        // a path drawn on the sphere: one face, both sides of every edge on it
        let path =
            CombinatorialMap::from_incidence(3, 1, vec![[0, 1], [1, 2]], vec![[0, 0], [0, 0]])
                .unwrap();
        assert_eq!(path.euler_characteristic(), 2);
        assert!(matches!(
            path.validate_rotary_type(),
            Err(MapError::NotRegular(_))
        ));
        assert!(matches!(
            CombinatorialMap::from_incidence(2, 1, vec![[0, 0]], vec![[0, 0]]),
            Err(MapError::MalformedIncidence(_))
        ));
        assert!(matches!(
            CombinatorialMap::from_incidence(2, 2, vec![[0, 1], [1, 0]], vec![[0, 1], [0, 1]]),
            Err(MapError::MalformedIncidence(_))
        ));
    }

    #[test]
    fn collapsing_group_is_malformed() {
        // <z> is everything, so each edge meets a single vertex
        let p: Presentation = "<y, z | y, z^4>".parse().unwrap();
        assert!(matches!(
            CombinatorialMap::from_rotary_presentation(&p, 100),
            Err(MapError::MalformedIncidence(_))
        ));
    }

    #[test]
    fn genus_parity() {
        assert_eq!(genus_from_chi(-18), Ok(10));
        assert_eq!(genus_from_chi(-3), Err(MapError::OddEuler(-3)));
    }
}
