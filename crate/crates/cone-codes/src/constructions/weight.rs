//! Weight reduction: X-reduction, Z-thickening and Hastings' coning.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::chain::{direct_sum, tensor, BasedComplex, CellLabel, WeightReport};
use crate::cone::{ConeSpec, Level};
use crate::css::CssCode;
use crate::f2linalg::BitMatrix;

use super::layer::pair_common_qubits;
use super::repetition::{repetition, string_defect};
use super::{column_matrix, concentrated, identity_reps, Construction, ConstructionError};

/// One weight inequality `measured ≤ num / den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCheck {
    pub stage: &'static str,
    pub quantity: &'static str,
    pub measured: usize,
    pub num: usize,
    pub den: usize,
}

impl WeightCheck {
    fn new(stage: &'static str, quantity: &'static str, measured: usize, limit: usize) -> Self {
        Self::ratio(stage, quantity, measured, limit, 1)
    }

    fn ratio(stage: &'static str, quantity: &'static str, measured: usize, num: usize, den: usize) -> Self {
        Self {
            stage,
            quantity,
            measured,
            num,
            den,
        }
    }

    #[must_use]
    pub fn holds(&self) -> bool {
        self.measured * self.den <= self.num
    }
}

impl std::fmt::Display for WeightCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let limit = if self.den == 1 {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, self.den)
        };
        write!(f, "{}: {} = {} (bound {})", self.stage, self.quantity, self.measured, limit)
    }
}

fn rank_among(sorted_neighbours: &[usize], x: usize) -> usize {
    sorted_neighbours.iter().position(|&y| y == x).expect("neighbour") + 1
}

fn columns_of(m: &BitMatrix) -> Vec<Vec<usize>> {
    (0..m.cols()).map(|c| m.column(c).ones_iter().collect()).collect()
}

fn rows_of(m: &BitMatrix) -> Vec<Vec<usize>> {
    (0..m.rows()).map(|r| m.row_ones(r).collect()).collect()
}

/// X-reduction: every qubit becomes a transposed repetition code of length `q_X`
/// and every X check a repetition code of length `w_X`, lowering X weights to 3.
///
/// # Errors
///
/// Rejects codes with `w_X = 0` or `q_X = 0`.
pub fn x_reduce(a: &CssCode) -> Result<Construction, ConstructionError> {
    let w = a.weights();
    if w.w_x == 0 || w.q_x == 0 {
        return Err(ConstructionError::Parameter("X-reduction needs w_X, q_X >= 1".into()));
    }
    let ac = a.complex();
    let d2 = ac.diff_ref(2);
    let d1 = ac.diff_ref(1);
    let checks_of_qubit = columns_of(d1);
    let qubits_of_check = rows_of(d1);
    let rq = repetition(w.q_x)?.transpose_complex();
    let rw = repetition(w.w_x)?;
    let c2 = BasedComplex::point(ac.basis(2).to_vec());
    let c1 = tensor(&rq, &BasedComplex::point(ac.basis(1).to_vec()))?;
    let c0 = tensor(&rw, &BasedComplex::point(ac.basis(0).to_vec()))?;
    let mut spec = ConeSpec::new(vec![Level::new(c0.clone(), 0), Level::new(c1.clone(), 0), Level::new(c2, 2)]);
    let at = |i: usize, l: &CellLabel| CellLabel::pair(CellLabel::whole(i as i64), l.clone());
    spec.set_block(
        1,
        2,
        2,
        column_matrix(c1.dim(1), a.n_z(), |g| {
            d2.column(g)
                .ones_iter()
                .flat_map(|q| (1..=w.q_x).map(move |i| (i, q)))
                .filter_map(|(i, q)| c1.index_of(1, &at(i, &ac.basis(1)[q])))
                .collect()
        }),
    )?;
    spec.set_block_by_labels(0, 1, 1, |l| {
        let p = l.parts().expect("pair");
        let i = (p[0].coord().expect("coord") / 2) as usize;
        let q = ac.index_of(1, &p[1]).expect("qubit");
        let checks = &checks_of_qubit[q];
        match checks.get(i - 1) {
            Some(&a0) => vec![at(rank_among(&qubits_of_check[a0], q), &ac.basis(0)[a0])],
            None => Vec::new(),
        }
    })?;
    let mut p = Vec::new();
    for g in 0..a.n_z() {
        for (a0, check) in qubits_of_check.iter().enumerate() {
            let common = ac.common_support(g, a0)?;
            if common.is_empty() {
                continue;
            }
            let mut ranks: Vec<usize> = common.iter().map(|&q| rank_among(check, q)).collect();
            ranks.sort_unstable();
            let defect = string_defect(w.w_x, &ranks)?;
            for i in defect.halves.ones_iter() {
                let cell = CellLabel::pair(CellLabel::half(i as i64 + 1), ac.basis(0)[a0].clone());
                p.push((c0.index_of(1, &cell).expect("defect cell"), g));
            }
        }
    }
    spec.set_block(0, 2, 2, BitMatrix::from_entries(c0.dim(1), a.n_z(), p))?;
    let reps1 = column_matrix(c1.dim(1), a.n(), |q| {
        (1..=w.q_x).filter_map(|i| c1.index_of(1, &at(i, &ac.basis(1)[q]))).collect()
    });
    let reps0 = column_matrix(c0.dim(0), a.n_x(), |a0| c0.index_of(0, &at(1, &ac.basis(0)[a0])).into_iter().collect());
    Ok(Construction {
        name: "x-reduce".into(),
        spec,
        declared: ac.clone(),
        declared_reps: vec![reps0, reps1, identity_reps(a.n_z())],
        regular_degrees: vec![0, 1, 2],
    })
}

/// Weight inequalities for an X-reduction `c` of `a`.
#[must_use]
pub fn x_reduce_checks(a: &WeightReport, c: &WeightReport) -> Vec<WeightCheck> {
    vec![
        WeightCheck::new("x-reduce", "w_X", c.w_x, 3),
        WeightCheck::new("x-reduce", "q_X", c.q_x, 3),
        WeightCheck::new("x-reduce", "q_Z", c.q_z, a.w_x * a.q_z),
    ]
}

/// Injective assignment of heights `1..=L` to the Z generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    heights: Vec<usize>,
    l: usize,
}

impl HeightFunction {
    /// # Errors
    ///
    /// Rejects heights outside `1..=L` and repeated heights.
    pub fn new(heights: Vec<usize>, l: usize) -> Result<Self, ConstructionError> {
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for (cell, &height) in heights.iter().enumerate() {
            if height < 1 || height > l {
                return Err(ConstructionError::HeightRange { cell, height, l });
            }
            if let Some(&first) = seen.get(&height) {
                return Err(ConstructionError::HeightCollision { first, second: cell, height });
            }
            seen.insert(height, cell);
        }
        Ok(Self { heights, l })
    }

    /// `h(a₂) = index + 1`.
    ///
    /// # Errors
    ///
    /// Fails when `n > L`.
    pub fn identity(n: usize, l: usize) -> Result<Self, ConstructionError> {
        Self::new((1..=n).collect(), l)
    }

    #[must_use]
    pub fn height(&self, cell: usize) -> usize {
        self.heights[cell]
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.l
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }
}

/// Z-thickening of length `L`: qubits and X checks become repetition codes
/// `R(L) ⊗ A₁`, `R(L) ⊗ A₀`, and generator `a₂` attaches at height `h(a₂)`.
///
/// # Errors
///
/// Rejects `L < 3` and height functions of the wrong size.
pub fn z_thicken(a: &CssCode, l: usize, h: &HeightFunction) -> Result<Construction, ConstructionError> {
    if l < 3 {
        return Err(ConstructionError::Parameter(format!("Z-thickening needs L >= 3, got {l}")));
    }
    if h.heights.len() != a.n_z() || h.l != l {
        return Err(ConstructionError::Parameter(format!(
            "height function covers {} generators up to {}, expected {} up to {l}",
            h.heights.len(),
            h.l,
            a.n_z()
        )));
    }
    let ac = a.complex();
    let r = repetition(l)?;
    let c1 = tensor(&r, &BasedComplex::point(ac.basis(1).to_vec()))?;
    let c0 = tensor(&r, &BasedComplex::point(ac.basis(0).to_vec()))?;
    let mut spec = ConeSpec::new(vec![
        Level::new(c0.clone(), 0),
        Level::new(c1.clone(), 1),
        Level::new(BasedComplex::point(ac.basis(2).to_vec()), 2),
    ]);
    let d2 = ac.diff_ref(2);
    let d1 = ac.diff_ref(1);
    spec.set_block(
        1,
        2,
        2,
        column_matrix(c1.dim(0), a.n_z(), |g| {
            let hc = CellLabel::whole(h.height(g) as i64);
            d2.column(g)
                .ones_iter()
                .filter_map(|q| c1.index_of(0, &CellLabel::pair(hc.clone(), ac.basis(1)[q].clone())))
                .collect()
        }),
    )?;
    for i in 1..=2 {
        spec.set_block_by_labels(0, 1, i, |lab| {
            let p = lab.parts().expect("pair");
            let q = ac.index_of(1, &p[1]).expect("qubit");
            d1.column(q)
                .ones_iter()
                .map(|a0| CellLabel::pair(p[0].clone(), ac.basis(0)[a0].clone()))
                .collect()
        })?;
    }
    let one = CellLabel::whole(1);
    let reps1 = column_matrix(c1.dim(0), a.n(), |q| {
        c1.index_of(0, &CellLabel::pair(one.clone(), ac.basis(1)[q].clone())).into_iter().collect()
    });
    let reps0 = column_matrix(c0.dim(0), a.n_x(), |a0| {
        c0.index_of(0, &CellLabel::pair(one.clone(), ac.basis(0)[a0].clone())).into_iter().collect()
    });
    Ok(Construction {
        name: "z-thicken".into(),
        spec,
        declared: ac.clone(),
        declared_reps: vec![reps0, reps1, identity_reps(a.n_z())],
        regular_degrees: vec![0, 1, 2],
    })
}

/// Weight inequalities for a Z-thickening `c` of `a` with an injective height function.
#[must_use]
pub fn z_thicken_checks(a: &WeightReport, c: &WeightReport) -> Vec<WeightCheck> {
    vec![
        WeightCheck::new("z-thicken", "w_Z", c.w_z, a.w_z.max(a.q_x + 2)),
        WeightCheck::new("z-thicken", "w_X", c.w_x, a.w_x + 2),
        WeightCheck::new("z-thicken", "q_Z", c.q_z, (a.q_z + 2).max(a.w_x)),
        WeightCheck::new("z-thicken", "q_Z (injective h)", c.q_z, a.w_x.max(3)),
        WeightCheck::new("z-thicken", "q_X", c.q_x, a.q_x.max(2)),
    ]
}

/// A 2-cell of a coning graph: a simple cycle given by its vertex sequence and
/// the edges `vertices[k] – vertices[k+1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Graph on the qubits of one Z generator, with a basis of simple cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConingGraph {
    pub generator: usize,
    /// Qubit index of each vertex.
    pub vertices: Vec<usize>,
    /// `(label, u, v)` with `u, v` vertex positions.
    pub edges: Vec<(CellLabel, usize, usize)>,
    pub faces: Vec<Face>,
    /// Connected components as sorted vertex positions, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl ConingGraph {
    /// The complex `F → E → V`, with faces `Int(k)`, vertices `Int(qubit)`.
    #[must_use]
    pub fn complex(&self) -> BasedComplex {
        let bases = vec![
            self.vertices.iter().map(|&q| CellLabel::Int(q as i64)).collect(),
            self.edges.iter().map(|(l, _, _)| l.clone()).collect(),
            (0..self.faces.len()).map(|k| CellLabel::Int(k as i64)).collect::<Vec<_>>(),
        ];
        let d1 = BitMatrix::from_entries(
            self.vertices.len(),
            self.edges.len(),
            self.edges.iter().enumerate().flat_map(|(e, &(_, u, v))| [(u, e), (v, e)]).collect::<Vec<_>>(),
        );
        let d2 = BitMatrix::from_entries(
            self.edges.len(),
            self.faces.len(),
            self.faces
                .iter()
                .enumerate()
                .flat_map(|(f, face)| face.edges.iter().map(move |&e| (e, f)))
                .collect::<Vec<_>>(),
        );
        BasedComplex::new(bases, vec![d1, d2]).expect("coning graph shapes")
    }

    /// The faces' boundaries span the cycle space and are independent.
    #[must_use]
    pub fn cycle_basis_is_complete(&self) -> bool {
        let c = self.complex();
        let cycle_dim = self.edges.len() - c.diff_ref(1).rank();
        c.diff_ref(2).rank() == self.faces.len() && self.faces.len() == cycle_dim
    }
}

/// Coning graph of generator `a2`: vertices are its qubits, and for every check
/// `a₀` the common qubits, in ascending order, are paired into edges `(p, a₀)`.
/// Faces are the fundamental cycles of a breadth-first spanning forest.
///
/// # Errors
///
/// Fails on unknown generators or odd overlaps.
pub fn coning_graph(a: &CssCode, a2: usize) -> Result<ConingGraph, ConstructionError> {
    if a2 >= a.n_z() {
        return Err(ConstructionError::Parameter(format!("generator {a2} out of range")));
    }
    let ac = a.complex();
    let vertices: Vec<usize> = a.h_z().column(a2).ones_iter().collect();
    let pos: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let mut edges = Vec::new();
    for a0 in ac.supports(2, a2, 0)? {
        let common: Vec<usize> = ac.common_support(a2, a0)?.into_iter().collect();
        for (p, (x, y)) in pair_common_qubits(&common)?.into_iter().enumerate() {
            edges.push((
                CellLabel::pair(CellLabel::Int(p as i64 + 1), CellLabel::Int(a0 as i64)),
                pos[&x],
                pos[&y],
            ));
        }
    }
    let n = vertices.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(_, u, v)) in edges.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; edges.len()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in &adj[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = Some((u, e));
                    tree[e] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    let mut faces = Vec::new();
    for (e, &(_, u, v)) in edges.iter().enumerate() {
        if tree[e] {
            continue;
        }
        let (mut x, mut y) = (u, v);
        let mut left = vec![(x, None)];
        let mut right = vec![(y, None)];
        while x != y {
            if depth[x] >= depth[y] {
                let (px, ex) = parent[x].expect("non-root");
                left.last_mut().expect("nonempty").1 = Some(ex);
                x = px;
                left.push((x, None));
            } else {
                let (py, ey) = parent[y].expect("non-root");
                right.last_mut().expect("nonempty").1 = Some(ey);
                y = py;
                right.push((y, None));
            }
        }
        right.pop();
        let mut verts: Vec<usize> = left.iter().map(|&(w, _)| w).collect();
        let mut path: Vec<usize> = left.iter().filter_map(|&(_, e)| e).collect();
        for &(w, ew) in right.iter().rev() {
            verts.push(w);
            path.push(ew.expect("edge toward the meeting vertex"));
        }
        path.push(e);
        faces.push(Face { vertices: verts, edges: path });
    }
    let mut uf: Vec<usize> = (0..n).collect();
    for &(_, u, v) in &edges {
        let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
        if ru != rv {
            uf[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut uf, v);
        comps.entry(r).or_default().push(v);
    }
    Ok(ConingGraph {
        generator: a2,
        vertices,
        edges,
        faces,
        components: comps.into_values().collect(),
    })
}

/// Fans every face with at least four vertices into triangles from its first vertex.
/// Digons and triangles are kept.
#[must_use]
pub fn triangulate(g: &ConingGraph) -> ConingGraph {
    let mut out = g.clone();
    out.faces.clear();
    for (k, face) in g.faces.iter().enumerate() {
        let m = face.vertices.len();
        if m <= 3 {
            out.faces.push(face.clone());
            continue;
        }
        let v = &face.vertices;
        let e = &face.edges;
        let mut chord = BTreeMap::new();
        for j in 2..m - 1 {
            let label = CellLabel::Tuple(vec![
                CellLabel::atom("chord"),
                CellLabel::Int(k as i64),
                CellLabel::Int(j as i64 + 1),
            ]);
            chord.insert(j, out.edges.len());
            out.edges.push((label, v[0], v[j]));
        }
        out.faces.push(Face {
            vertices: vec![v[0], v[1], v[2]],
            edges: vec![e[0], e[1], chord[&2]],
        });
        for j in 2..m - 2 {
            out.faces.push(Face {
                vertices: vec![v[0], v[j], v[j + 1]],
                edges: vec![chord[&j], e[j], chord[&(j + 1)]],
            });
        }
        out.faces.push(Face {
            vertices: vec![v[0], v[m - 2], v[m - 1]],
            edges: vec![chord[&(m - 2)], e[m - 2], e[m - 1]],
        });
    }
    out
}

/// Triangulated and Z-thickened coning graph of one generator, assembled.
fn thickened_graph(a: &CssCode, a2: usize) -> Result<(ConingGraph, BasedComplex, usize), ConstructionError> {
    let g = triangulate(&coning_graph(a, a2)?);
    let gc = CssCode::from_complex(g.complex())?;
    let l = gc.n_x().max(gc.n_z()).max(3);
    let thick = z_thicken(&gc, l, &HeightFunction::identity(gc.n_z(), l)?)?.assemble()?;
    let dim = thick.padded(2).homology(1)?.dim();
    if dim != 0 {
        return Err(ConstructionError::InternalLogical { generator: a2, dim });
    }
    Ok((g, thick, l))
}

fn tagged(x: CellLabel, t: CellLabel) -> CellLabel {
    CellLabel::pair(x, t)
}

/// Hastings' cone: each generator in `reduce` is replaced by the thickened,
/// triangulated coning graph on its support, one new generator per connected component.
///
/// # Errors
///
/// Fails on out-of-range generators or when a coning graph keeps internal logical operators.
pub fn hastings_cone(a: &CssCode, reduce: &[usize]) -> Result<Construction, ConstructionError> {
    let ac = a.complex();
    let mut reduce_sorted = reduce.to_vec();
    reduce_sorted.sort_unstable();
    reduce_sorted.dedup();
    if let Some(&bad) = reduce_sorted.iter().find(|&&g| g >= a.n_z()) {
        return Err(ConstructionError::Parameter(format!("generator {bad} out of range")));
    }
    let kept: Vec<usize> = (0..a.n_z()).filter(|g| reduce_sorted.binary_search(g).is_err()).collect();
    let mut graphs = Vec::new();
    let mut parts = Vec::new();
    for &g in &reduce_sorted {
        let (graph, thick, l) = thickened_graph(a, g)?;
        parts.push((CellLabel::Int(g as i64), thick));
        graphs.push((g, graph, l));
    }
    let g_dual = direct_sum(&parts)?.transpose_complex();
    let prime_tag = CellLabel::atom("A'");
    let g_tag = CellLabel::atom("G");
    let a_prime = concentrated(kept.iter().map(|&g| ac.basis(2)[g].clone()).collect(), 2);
    let c2 = direct_sum(&[(prime_tag.clone(), a_prime), (g_tag.clone(), g_dual)])?;
    let mut spec = ConeSpec::new(vec![
        Level::new(BasedComplex::point(ac.basis(0).to_vec()), 0),
        Level::new(BasedComplex::point(ac.basis(1).to_vec()), 1),
        Level::new(c2.clone(), 0),
    ]);
    let whole1 = CellLabel::whole(1);
    // Thickened-graph cell `(^s, (~1, x))` tagged by generator and by the `G` summand.
    let unwrap_g = |l: &CellLabel, s: u32| -> Option<CellLabel> {
        let outer = l.parts()?;
        if outer[1] != g_tag {
            return None;
        }
        let inner = outer[0].parts()?[0].parts()?;
        if inner[0] != CellLabel::Level(s) {
            return None;
        }
        let cell = inner[1].parts()?;
        (cell[0] == whole1).then(|| cell[1].clone())
    };
    spec.set_block_by_labels(1, 2, 2, |l| {
        let outer = l.parts().expect("summand");
        if outer[1] == prime_tag {
            let g = ac.index_of(2, &outer[0]).expect("kept generator");
            return ac.boundary_of(2, g).into_iter().map(|q| ac.basis(1)[q].clone()).collect();
        }
        match unwrap_g(l, 0) {
            Some(CellLabel::Int(q)) => vec![ac.basis(1)[q as usize].clone()],
            _ => Vec::new(),
        }
    })?;
    spec.set_block(0, 1, 1, ac.diff(1))?;
    spec.set_block_by_labels(0, 2, 1, |l| match unwrap_g(l, 1) {
        Some(edge) => match edge.parts() {
            Some([CellLabel::Int(_), CellLabel::Int(a0)]) => vec![ac.basis(0)[*a0 as usize].clone()],
            _ => Vec::new(),
        },
        None => Vec::new(),
    })?;

    let mut labels2: Vec<CellLabel> = kept.iter().map(|&g| ac.basis(2)[g].clone()).collect();
    let mut d2_cols: Vec<Vec<usize>> = kept.iter().map(|&g| ac.boundary_of(2, g)).collect();
    let mut rep_cols: Vec<Vec<usize>> = kept
        .iter()
        .map(|&g| c2.index_of(2, &tagged(ac.basis(2)[g].clone(), prime_tag.clone())).into_iter().collect())
        .collect();
    for (g, graph, l) in &graphs {
        for (k, comp) in graph.components.iter().enumerate() {
            labels2.push(CellLabel::Tuple(vec![
                CellLabel::atom("omega"),
                CellLabel::Int(*g as i64),
                CellLabel::Int(k as i64),
            ]));
            let qubits: Vec<usize> = comp.iter().map(|&v| graph.vertices[v]).collect();
            d2_cols.push(qubits.clone());
            rep_cols.push(
                (1..=*l as i64)
                    .flat_map(|i| qubits.iter().map(move |&q| (i, q)))
                    .filter_map(|(i, q)| {
                        let cell = CellLabel::pair(
                            CellLabel::Level(0),
                            CellLabel::pair(CellLabel::whole(i), CellLabel::Int(q as i64)),
                        );
                        let g_cell = tagged(tagged(cell, CellLabel::Int(*g as i64)), g_tag.clone());
                        c2.index_of(2, &g_cell)
                    })
                    .collect(),
            );
        }
    }
    let d2 = column_matrix(a.n(), labels2.len(), |c| d2_cols[c].clone());
    let declared = BasedComplex::new(
        vec![ac.basis(0).to_vec(), ac.basis(1).to_vec(), labels2.clone()],
        vec![ac.diff(1), d2],
    )?;
    let reps2 = column_matrix(c2.dim(2), labels2.len(), |c| rep_cols[c].clone());
    Ok(Construction {
        name: "hastings".into(),
        spec,
        declared,
        declared_reps: vec![identity_reps(a.n_x()), identity_reps(a.n()), reps2],
        regular_degrees: vec![1],
    })
}

/// Weight inequalities for a Hastings cone `c` of `a`, where `w_z_kept` is the
/// largest support among the generators left unreduced.
#[must_use]
pub fn hastings_checks(a: &WeightReport, w_z_kept: usize, c: &WeightReport) -> Vec<WeightCheck> {
    vec![
        WeightCheck::new("hastings", "w_Z", c.w_z, a.q_x + w_z_kept + 2),
        WeightCheck::ratio("hastings", "w_X", c.w_x, (2 * a.w_x + a.w_x * a.w_x * a.q_z).max(8), 2),
        WeightCheck::new("hastings", "q_Z", c.q_z, a.q_z.max(2)),
        WeightCheck::new("hastings", "q_X", c.q_x, (a.q_x + 1).max(4)),
    ]
}

/// Outcome of the full weight-reduction pipeline.
#[derive(Clone, Debug)]
pub struct WeightReduction {
    pub input: WeightReport,
    pub x_reduced: WeightReport,
    pub thickened: WeightReport,
    pub output: BasedComplex,
    pub output_weights: WeightReport,
    pub k_input: usize,
    pub k_output: usize,
    /// Every intermediate and final inequality, in pipeline order.
    pub checks: Vec<WeightCheck>,
}

impl WeightReduction {
    #[must_use]
    pub fn bounds_hold(&self) -> bool {
        self.checks.iter().all(WeightCheck::holds)
    }

    /// # Errors
    ///
    /// Names every violated inequality, or a change in `k`.
    pub fn check(&self) -> Result<(), ConstructionError> {
        let failed: Vec<String> = self.checks.iter().filter(|c| !c.holds()).map(ToString::to_string).collect();
        if !failed.is_empty() {
            return Err(ConstructionError::WeightBound(failed.join("; ")));
        }
        if self.k_input != self.k_output {
            return Err(ConstructionError::WeightBound(format!(
                "k changed from {} to {}",
                self.k_input, self.k_output
            )));
        }
        Ok(())
    }
}

/// X-reduction, then Z-thickening with `h` the identity and `L = max(3, n_Z)`,
/// then Hastings' coning of the original generators.
///
/// # Errors
///
/// Rejects codes that are not reasonable with respect to all generators and
/// propagates failures of each stage.
pub fn weight_reduce(a: &CssCode) -> Result<WeightReduction, ConstructionError> {
    let all: Vec<usize> = (0..a.n_z()).collect();
    if let Some(w) = a.is_reasonable(&all)? {
        return Err(ConstructionError::Unreasonable(w));
    }
    let input = a.weights();
    let mut checks = Vec::new();

    let d1 = x_reduce(a)?;
    d1.verify()?;
    let d1 = d1.code()?;
    let x_reduced = d1.weights();
    checks.extend(x_reduce_checks(&input, &x_reduced));

    let l = d1.n_z().max(3);
    let d = z_thicken(&d1, l, &HeightFunction::identity(d1.n_z(), l)?)?;
    d.verify()?;
    let d = d.code()?;
    let thickened = d.weights();
    checks.extend(z_thicken_checks(&x_reduced, &thickened));
    checks.extend([
        WeightCheck::new("x-reduce + z-thicken", "w_X", thickened.w_x, 5),
        WeightCheck::new("x-reduce + z-thicken", "q_Z", thickened.q_z, 3),
        WeightCheck::new("x-reduce + z-thicken", "q_X", thickened.q_x, 3),
    ]);

    let reduce: Vec<usize> = (0..a.n_z()).collect();
    let w_z_kept = d.h_z().column_weights().into_iter().skip(a.n_z()).max().unwrap_or(0);
    let c = hastings_cone(&d, &reduce)?;
    c.verify()?;
    let out = c.code()?;
    let output_weights = out.weights();
    checks.extend(hastings_checks(&thickened, w_z_kept, &output_weights));
    checks.extend([
        WeightCheck::new("final", "w_Z", output_weights.w_z, 10),
        WeightCheck::new("final", "w_X", output_weights.w_x, 42),
        WeightCheck::new("final", "q_Z", output_weights.q_z, 3),
        WeightCheck::new("final", "q_X", output_weights.q_x, 4),
    ]);
    Ok(WeightReduction {
        input,
        x_reduced,
        thickened,
        k_input: a.k(),
        k_output: out.k(),
        output_weights,
        output: out.into_complex(),
        checks,
    })
}
