//! Δ-complexes, joins and cones, and exact reduced integer homology.
//!
//! The boundary structure of the moduli space is recorded combinatorially: a
//! normal-crossings divisor at infinity yields an incidence complex whose
//! cells are ordered tuples of divisor components. Parallel edges occur in
//! the basic examples (two boundary components meeting in two points), so
//! the right notion is a Δ-complex — ordered simplices glued along ordered
//! faces — rather than an abstract simplicial complex.
//!
//! Homology is computed over ℤ via Smith normal form with arbitrary-precision
//! integers: exact ranks and torsion, no numerical error. The headline
//! consequence checked here: the boundary model of the coordinate surface Q
//! is a homology circle, and the model of M′ ≅ Q^{k−3} — a (k−3)-fold join —
//! is a homology sphere of dimension 2(k−3)−1.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num::bigint::BigInt;
use num::{Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

/// Errors from Δ-complex construction and validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaError {
    #[error("duplicate id {id:?} in dimension {dim}")]
    DuplicateId { dim: usize, id: String },
    #[error("cell {id:?} references unknown face {face:?}")]
    UnknownFace { id: String, face: String },
    #[error("cell {id:?} of dimension {dim} must list {expected} faces, got {got}")]
    WrongFaceCount {
        id: String,
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("vertex {id:?} must not list faces")]
    VertexWithFaces { id: String },
    #[error("boundary composition from dimension {dim} is nonzero")]
    BoundaryNotSquareZero { dim: usize },
    #[error("facet sets must be nonempty")]
    EmptyFacet,
    #[error("dimension key {key:?} is not a non-negative integer")]
    NonNumericDimension { key: String },
    #[error("dimension {dim} mixes vertex ids and face-bearing cells")]
    MixedCellKind { dim: usize },
    #[error("need k >= 4, got {k}")]
    KTooSmall { k: usize },
}

/// One cell: an id plus the ordered list of its codimension-1 faces, where
/// `faces[j]` is the face obtained by omitting the j-th vertex. Vertices have
/// an empty face list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    id: String,
    faces: Vec<String>,
}

impl Cell {
    pub fn new(id: impl Into<String>, faces: Vec<String>) -> Self {
        Cell {
            id: id.into(),
            faces,
        }
    }

    pub fn vertex(id: impl Into<String>) -> Self {
        Cell {
            id: id.into(),
            faces: Vec::new(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn faces(&self) -> &[String] {
        &self.faces
    }
}

/// A finite Δ-complex: for each dimension d, an ordered list of d-cells, each
/// holding ordered face references into dimension d−1. The chain complex uses
/// ∂σ = Σ_j (−1)^j faces[j], and ∂∂ = 0 is verified at construction.
///
/// Serializes as `{"cells": {"0": ["a", "b"], "1": [{"id": "e0", "faces":
/// ["a", "b"]}, …], …}}` with dimensions in ascending numeric order and
/// dimension 0 as plain id strings.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(try_from = "ComplexWire")]
pub struct DeltaComplex {
    cells: Vec<Vec<Cell>>,
}

impl DeltaComplex {
    /// Validates ids, face references, face counts, and ∂∂ = 0. Trailing
    /// empty dimensions are dropped.
    pub fn new(mut cells: Vec<Vec<Cell>>) -> Result<Self, DeltaError> {
        while cells.last().is_some_and(Vec::is_empty) {
            cells.pop();
        }
        let mut index: Vec<HashMap<&str, usize>> = Vec::with_capacity(cells.len());
        for (dim, layer) in cells.iter().enumerate() {
            let mut ids = HashMap::with_capacity(layer.len());
            for (pos, cell) in layer.iter().enumerate() {
                if ids.insert(cell.id(), pos).is_some() {
                    return Err(DeltaError::DuplicateId {
                        dim,
                        id: cell.id().to_string(),
                    });
                }
                if dim == 0 {
                    if !cell.faces().is_empty() {
                        return Err(DeltaError::VertexWithFaces {
                            id: cell.id().to_string(),
                        });
                    }
                } else {
                    if cell.faces().len() != dim + 1 {
                        return Err(DeltaError::WrongFaceCount {
                            id: cell.id().to_string(),
                            dim,
                            expected: dim + 1,
                            got: cell.faces().len(),
                        });
                    }
                    for face in cell.faces() {
                        if !index[dim - 1].contains_key(face.as_str()) {
                            return Err(DeltaError::UnknownFace {
                                id: cell.id().to_string(),
                                face: face.clone(),
                            });
                        }
                    }
                }
            }
            index.push(ids);
        }
        let complex = DeltaComplex { cells };
        for d in 2..complex.cells.len() {
            let lower = complex.boundary_matrix(d - 1);
            let upper = complex.boundary_matrix(d);
            for lower_row in &lower {
                let mut product_row = vec![BigInt::zero(); complex.cells[d].len()];
                for (coeff, upper_row) in lower_row.iter().zip(&upper) {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (acc, entry) in product_row.iter_mut().zip(upper_row) {
                        *acc += coeff * entry;
                    }
                }
                if product_row.iter().any(|entry| !entry.is_zero()) {
                    return Err(DeltaError::BoundaryNotSquareZero { dim: d });
                }
            }
        }
        Ok(complex)
    }

    /// The complex with no cells at all.
    pub fn empty() -> Self {
        DeltaComplex { cells: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of dimensions present (top dimension + 1); 0 for the empty
    /// complex.
    pub fn dim_count(&self) -> usize {
        self.cells.len()
    }

    /// The d-cells, in construction order.
    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    /// Alternating sum of cell counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, layer)| {
                let n = layer.len() as i64;
                if d % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    /// The boundary matrix from d-chains to (d−1)-chains (rows indexed by
    /// (d−1)-cells, columns by d-cells), for d ≥ 1.
    fn boundary_matrix(&self, d: usize) -> Vec<Vec<BigInt>> {
        let rows = self.cell_count(d - 1);
        let cols = self.cell_count(d);
        let index: HashMap<&str, usize> = self
            .cells(d - 1)
            .iter()
            .enumerate()
            .map(|(pos, cell)| (cell.id(), pos))
            .collect();
        let mut matrix = vec![vec![BigInt::zero(); cols]; rows];
        for (col, cell) in self.cells(d).iter().enumerate() {
            for (j, face) in cell.faces().iter().enumerate() {
                let row = index[face.as_str()];
                let sign = if j % 2 == 0 { 1 } else { -1 };
                matrix[row][col] += BigInt::from(sign);
            }
        }
        matrix
    }
}

// --- JSON wire format ---------------------------------------------------

#[derive(Deserialize)]
struct ComplexWire {
    cells: BTreeMap<String, Vec<CellWire>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CellWire {
    Vertex(String),
    Cell { id: String, faces: Vec<String> },
}

impl TryFrom<ComplexWire> for DeltaComplex {
    type Error = DeltaError;
    fn try_from(wire: ComplexWire) -> Result<Self, Self::Error> {
        let mut by_dim: BTreeMap<usize, Vec<CellWire>> = BTreeMap::new();
        for (key, cells) in wire.cells {
            let dim: usize = key
                .parse()
                .map_err(|_| DeltaError::NonNumericDimension { key: key.clone() })?;
            by_dim.insert(dim, cells);
        }
        let top = by_dim.keys().next_back().copied();
        let mut layers: Vec<Vec<Cell>> = Vec::new();
        if let Some(top) = top {
            for dim in 0..=top {
                let mut layer = Vec::new();
                for wire_cell in by_dim.remove(&dim).unwrap_or_default() {
                    let cell = match wire_cell {
                        CellWire::Vertex(id) if dim == 0 => Cell::vertex(id),
                        CellWire::Cell { id, faces } if dim > 0 => Cell::new(id, faces),
                        _ => return Err(DeltaError::MixedCellKind { dim }),
                    };
                    layer.push(cell);
                }
                layers.push(layer);
            }
        }
        DeltaComplex::new(layers)
    }
}

impl Serialize for DeltaComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct CellsView<'a>(&'a [Vec<Cell>]);
        struct VertexIds<'a>(&'a [Cell]);

        impl Serialize for VertexIds<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for cell in self.0 {
                    seq.serialize_element(cell.id())?;
                }
                seq.end()
            }
        }

        impl Serialize for CellsView<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (dim, layer) in self.0.iter().enumerate() {
                    if dim == 0 {
                        map.serialize_entry(&dim.to_string(), &VertexIds(layer))?;
                    } else {
                        map.serialize_entry(&dim.to_string(), layer)?;
                    }
                }
                map.end()
            }
        }

        let mut s = serializer.serialize_struct("DeltaComplex", 1)?;
        s.serialize_field("cells", &CellsView(&self.cells))?;
        s.end()
    }
}

// --- Constructions --------------------------------------------------------

/// The simplicial complex generated by the given facets (every nonempty
/// subset becomes a cell, each included once), embedded as a Δ-complex with
/// the vertices of each simplex sorted ascending. Cell ids are the sorted
/// vertex lists joined with "-".
pub fn from_facets(facets: &[Vec<i64>]) -> Result<DeltaComplex, DeltaError> {
    let mut by_dim: Vec<BTreeSet<Vec<i64>>> = Vec::new();
    for facet in facets {
        let vertices: BTreeSet<i64> = facet.iter().copied().collect();
        if vertices.is_empty() {
            return Err(DeltaError::EmptyFacet);
        }
        let vertices: Vec<i64> = vertices.into_iter().collect();
        // every nonempty subset, preserving ascending vertex order
        for mask in 1u64..(1 << vertices.len()) {
            let subset: Vec<i64> = vertices
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, v)| *v)
                .collect();
            let dim = subset.len() - 1;
            if by_dim.len() <= dim {
                by_dim.resize_with(dim + 1, BTreeSet::new);
            }
            by_dim[dim].insert(subset);
        }
    }
    let name = |subset: &[i64]| {
        subset
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join("-")
    };
    let mut layers: Vec<Vec<Cell>> = Vec::with_capacity(by_dim.len());
    for (dim, subsets) in by_dim.iter().enumerate() {
        let mut layer = Vec::with_capacity(subsets.len());
        for subset in subsets {
            if dim == 0 {
                layer.push(Cell::vertex(name(subset)));
            } else {
                let faces = (0..subset.len())
                    .map(|j| {
                        let mut face = subset.clone();
                        face.remove(j);
                        name(&face)
                    })
                    .collect();
                layer.push(Cell::new(name(subset), faces));
            }
        }
        layers.push(layer);
    }
    DeltaComplex::new(layers)
}

/// Key for one join cell: (K-cell, L-cell) with `None` the empty marker.
type JoinKey = (Option<(usize, usize)>, Option<(usize, usize)>);

/// The join K ∗ L: cells are pairs (σ, τ) of cells or empty markers (not
/// both empty), of dimension dim σ + dim τ + 1, with the faces of σ listed
/// before the faces of τ — the Δ-structure in which K-vertices precede
/// L-vertices. Joining with a point gives the cone; joining circles gives
/// odd-dimensional spheres.
pub fn join(k: &DeltaComplex, l: &DeltaComplex) -> DeltaComplex {
    let options = |c: &DeltaComplex| -> Vec<Option<(usize, usize)>> {
        let mut opts = vec![None];
        for dim in 0..c.dim_count() {
            for idx in 0..c.cell_count(dim) {
                opts.push(Some((dim, idx)));
            }
        }
        opts
    };
    let k_opts = options(k);
    let l_opts = options(l);
    let pair_dim = |x: &Option<(usize, usize)>, y: &Option<(usize, usize)>| -> isize {
        let dx = x.map_or(-1, |(d, _)| d as isize);
        let dy = y.map_or(-1, |(d, _)| d as isize);
        dx + dy + 1
    };

    // first pass: assign a deterministic id to every pair
    let mut ids: HashMap<JoinKey, String> = HashMap::new();
    let mut counters: Vec<usize> = Vec::new();
    let mut order: Vec<JoinKey> = Vec::new();
    for x in &k_opts {
        for y in &l_opts {
            if x.is_none() && y.is_none() {
                continue;
            }
            let dim = pair_dim(x, y) as usize;
            if counters.len() <= dim {
                counters.resize(dim + 1, 0);
            }
            ids.insert((*x, *y), format!("j{dim}.{}", counters[dim]));
            counters[dim] += 1;
            order.push((*x, *y));
        }
    }

    let face_index = |c: &DeltaComplex, dim: usize| -> HashMap<String, usize> {
        c.cells(dim)
            .iter()
            .enumerate()
            .map(|(pos, cell)| (cell.id().to_string(), pos))
            .collect()
    };
    let k_index: Vec<HashMap<String, usize>> =
        (0..k.dim_count()).map(|d| face_index(k, d)).collect();
    let l_index: Vec<HashMap<String, usize>> =
        (0..l.dim_count()).map(|d| face_index(l, d)).collect();

    // per-side faces of a cell option, as options one dimension down:
    // a vertex has the single face ∅, the marker ∅ has none
    let side_faces = |c: &DeltaComplex,
                      index: &[HashMap<String, usize>],
                      cell: &Option<(usize, usize)>|
     -> Vec<Option<(usize, usize)>> {
        match cell {
            None => Vec::new(),
            Some((0, _)) => vec![None],
            Some((dim, idx)) => c.cells(*dim)[*idx]
                .faces()
                .iter()
                .map(|f| Some((dim - 1, index[dim - 1][f])))
                .collect(),
        }
    };

    let mut layers: Vec<Vec<Cell>> = vec![Vec::new(); counters.len()];
    for (x, y) in order {
        let dim = pair_dim(&x, &y) as usize;
        let id = ids[&(x, y)].clone();
        if dim == 0 {
            layers[0].push(Cell::vertex(id));
            continue;
        }
        let mut faces = Vec::with_capacity(dim + 1);
        for fx in side_faces(k, &k_index, &x) {
            faces.push(ids[&(fx, y)].clone());
        }
        for fy in side_faces(l, &l_index, &y) {
            faces.push(ids[&(x, fy)].clone());
        }
        layers[dim].push(Cell::new(id, faces));
    }
    DeltaComplex::new(layers).expect("join of valid complexes is valid")
}

/// The cone over K: the join of a single point with K.
pub fn cone(k: &DeltaComplex) -> DeltaComplex {
    let point = DeltaComplex::new(vec![vec![Cell::vertex("pt")]])
        .expect("a single vertex is a valid complex");
    join(&point, k)
}

/// The boundary model of the coordinate surface Q: two vertices a, b and two
/// parallel edges joining them — a Δ-complex circle (one boundary component
/// is the fiber over the excluded trace, the other the excluded conic; they
/// meet in two points).
pub fn q_boundary_model() -> DeltaComplex {
    let a = "a".to_string();
    let b = "b".to_string();
    DeltaComplex::new(vec![
        vec![Cell::vertex(&a), Cell::vertex(&b)],
        vec![
            Cell::new("e0", vec![a.clone(), b.clone()]),
            Cell::new("e1", vec![a, b]),
        ],
    ])
    .expect("the circle model is a valid complex")
}

/// The boundary model of M′ ≅ Q^{k−3}: the (k−3)-fold join of the circle
/// model, a homology sphere of dimension 2(k−3)−1.
pub fn mprime_boundary_model(k: usize) -> Result<DeltaComplex, DeltaError> {
    if k < 4 {
        return Err(DeltaError::KTooSmall { k });
    }
    let factor = q_boundary_model();
    let mut model = factor.clone();
    for _ in 1..k - 3 {
        model = join(&model, &factor);
    }
    Ok(model)
}

/// The pair showing that the dual boundary complex is not an invariant of
/// the open variety alone: the plane (empty boundary complex) versus the
/// twice-punctured plane compactified with an overlapping-order violation
/// (a homology circle). Their homology profiles differ.
pub fn caution_example() -> (DeltaComplex, DeltaComplex) {
    (DeltaComplex::empty(), q_boundary_model())
}

// --- Homology --------------------------------------------------------------

/// One reduced homology group: free rank plus torsion coefficients in
/// divisibility order (each > 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    dim: usize,
    rank: usize,
    #[serde(with = "torsion_serde")]
    torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn new(dim: usize, rank: usize, torsion: Vec<u64>) -> Self {
        HomologyGroup {
            dim,
            rank,
            torsion: torsion.into_iter().map(BigInt::from).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {}: rank {}", self.dim, self.rank)?;
        if !self.torsion.is_empty() {
            let parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
            write!(f, " + {}", parts.join(" + "))?;
        }
        Ok(())
    }
}

/// The reduced integer homology of a complex: the list of dimensions with a
/// nontrivial group. An empty list means every reduced group vanishes (e.g.
/// a cone), and the empty complex also has an empty profile.
///
/// Serializes as `{"reduced": [{"dim": 1, "rank": 1, "torsion": []}]}`;
/// torsion coefficients are JSON integers (decimal strings if they ever
/// exceed u64).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    reduced: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn new(reduced: Vec<HomologyGroup>) -> Self {
        HomologyProfile { reduced }
    }

    /// The nontrivial groups, by ascending dimension.
    pub fn reduced(&self) -> &[HomologyGroup] {
        &self.reduced
    }

    /// True iff every reduced homology group vanishes.
    pub fn is_trivial(&self) -> bool {
        self.reduced.is_empty()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reduced.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.reduced.iter().map(HomologyGroup::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

mod torsion_serde {
    use super::*;
    use serde::de::Error as DeError;
    use serde::Deserializer;

    pub fn serialize<S: Serializer>(v: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(v.len()))?;
        for value in v {
            match value.to_u64() {
                Some(small) => seq.serialize_element(&small)?,
                None => seq.serialize_element(&value.to_string())?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Vec<BigInt>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Small(u64),
            Big(String),
        }
        Vec::<Wire>::deserialize(deserializer)?
            .into_iter()
            .map(|w| match w {
                Wire::Small(n) => Ok(BigInt::from(n)),
                Wire::Big(s) => s
                    .parse()
                    .map_err(|_| DeError::custom("invalid torsion coefficient")),
            })
            .collect()
    }
}

/// The nonzero invariant factors of an integer matrix, in divisibility order
/// (each divides the next), computed by unimodular row/column reduction. The
/// number of factors is the rank; factors > 1 are torsion coefficients of
/// the cokernel.
#[allow(clippy::needless_range_loop)] // row operations combine two rows of `m`
pub fn smith_normal_form(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    debug_assert!(
        m.iter().all(|r| r.len() == cols),
        "matrix must be rectangular"
    );
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest-magnitude nonzero entry of the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        'reduce: loop {
            // clear the pivot column with row operations
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = &m[i][t] / &m[t][t];
                if !q.is_zero() {
                    for j in t..cols {
                        let delta = &q * &m[t][j];
                        m[i][j] -= delta;
                    }
                }
                if !m[i][t].is_zero() {
                    m.swap(i, t); // strictly smaller remainder becomes pivot
                    continue 'reduce;
                }
            }
            // clear the pivot row with column operations
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = &m[t][j] / &m[t][t];
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    continue 'reduce;
                }
            }
            // pivot must divide the rest of the submatrix
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&m[i][j] % &m[t][t]).is_zero() {
                        for jj in t..cols {
                            let add = m[i][jj].clone();
                            m[t][jj] += add;
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        divisors.push(m[t][t].abs());
        t += 1;
    }
    divisors
}

/// Reduced integer homology: ranks from boundary-matrix ranks (with the
/// augmentation map in degree 0) and torsion from Smith normal form. Exact
/// and deterministic.
pub fn reduced_homology(k: &DeltaComplex) -> HomologyProfile {
    let dims = k.dim_count();
    if dims == 0 {
        return HomologyProfile::new(Vec::new());
    }
    // factors[d] = invariant factors of ∂_d, where ∂_0 is the augmentation
    // and ∂_d for d >= dims is the zero map
    let mut factors: Vec<Vec<BigInt>> = Vec::with_capacity(dims + 1);
    factors.push(smith_normal_form(vec![vec![
        BigInt::from(1);
        k.cell_count(0)
    ]]));
    for d in 1..dims {
        factors.push(smith_normal_form(k.boundary_matrix(d)));
    }
    factors.push(Vec::new());
    let mut groups = Vec::new();
    for d in 0..dims {
        let rank = k.cell_count(d) - factors[d].len() - factors[d + 1].len();
        let torsion: Vec<BigInt> = factors[d + 1]
            .iter()
            .filter(|f| f.to_u64() != Some(1) && **f != BigInt::from(1))
            .cloned()
            .collect();
        if rank > 0 || !torsion.is_empty() {
            groups.push(HomologyGroup {
                dim: d,
                rank,
                torsion,
            });
        }
    }
    HomologyProfile::new(groups)
}

/// True iff the reduced homology is free of rank 1 in degree n and zero in
/// every other degree — the homology-level certificate for "is a sphere S^n".
pub fn is_homology_sphere(k: &DeltaComplex, n: usize) -> bool {
    reduced_homology(k).reduced() == [HomologyGroup::new(n, 1, Vec::new())]
}
