//! Cube complexes inside products of finite graphs.
//!
//! A cell is a tuple with one entry per factor graph, each entry either a
//! vertex or an edge of that factor; its dimension is the number of edge
//! entries. Every factor edge carries a head (the Morse orientation), so each
//! cube has a unique all-tails corner and a unique all-heads corner.
//!
//! Two complexes are built here from a [`Gamma`]:
//!
//! * [`build_x`]: the square complex in `Θ1 × Θ2`, keeping every square whose
//!   two edge labels are adjacent in Γ.
//! * [`build_delta`]: the 3-dimensional complex in `U × V × W`
//!   (`U, V, W ≅ K_{2p,2p}`) whose vertices satisfy the Ω rule and whose cells
//!   are exactly the cubes with all corners admitted.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::gamma::{Gamma, GammaVertex};
use crate::simplicial::SimplicialComplex;

pub const MAX_FACTORS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorId {
    Theta1,
    Theta2,
    U,
    V,
    W,
}

impl fmt::Display for FactorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FactorId::Theta1 => "theta1",
            FactorId::Theta2 => "theta2",
            FactorId::U => "U",
            FactorId::V => "V",
            FactorId::W => "W",
        };
        f.write_str(s)
    }
}

/// Which side of a factor's bipartition a vertex lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    One,
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorEdge {
    pub label: String,
    pub ends: [u32; 2],
    pub head: u32,
}

impl FactorEdge {
    pub fn tail(&self) -> u32 {
        if self.ends[0] == self.head {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    pub fn other_end(&self, v: u32) -> u32 {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

/// A finite oriented graph used as a product factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorGraph {
    pub id: FactorId,
    vertices: Vec<String>,
    part: Vec<Part>,
    edges: Vec<FactorEdge>,
    incident: Vec<Vec<u32>>,
    simple: bool,
}

impl FactorGraph {
    fn new(id: FactorId, vertices: Vec<String>, part: Vec<Part>, edges: Vec<FactorEdge>) -> Self {
        let mut incident = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incident[e.ends[0] as usize].push(i as u32);
            incident[e.ends[1] as usize].push(i as u32);
        }
        let mut pairs: Vec<[u32; 2]> = edges
            .iter()
            .map(|e| {
                let mut p = e.ends;
                p.sort_unstable();
                p
            })
            .collect();
        pairs.sort_unstable();
        let n = pairs.len();
        pairs.dedup();
        FactorGraph {
            id,
            vertices,
            part,
            edges,
            incident,
            simple: pairs.len() == n,
        }
    }

    /// `Θ1` (edges `A±`, vertices `v1, v2`) or `Θ2` (edges `B±`, vertices
    /// `v3, v4`). Minus edges point to the second vertex, plus edges to the
    /// first. Edge `i` is the Γ vertex with id `i` (resp. `2p + i`).
    pub fn theta(id: FactorId, g: &Gamma) -> Self {
        let p = g.p();
        let (names, offset) = match id {
            FactorId::Theta1 => (["v1", "v2"], 0),
            FactorId::Theta2 => (["v3", "v4"], 2 * p),
            _ => panic!("theta factor must be Theta1 or Theta2"),
        };
        let edges = (0..2 * p)
            .map(|i| {
                let gv = g.vertex(offset + i);
                let head = match gv.sign {
                    crate::gamma::Sign::Plus => 0,
                    crate::gamma::Sign::Minus => 1,
                };
                FactorEdge {
                    label: gv.to_string(),
                    ends: [0, 1],
                    head,
                }
            })
            .collect();
        FactorGraph::new(
            id,
            names.iter().map(|s| s.to_string()).collect(),
            vec![Part::One, Part::Two],
            edges,
        )
    }

    /// `K_{2p,2p}` with part one the `a` labels and part two the `b` labels.
    /// Vertex `i` is the Γ vertex with id `i`. Edge `{a_n^s, b_m^t}` points to
    /// the `a` end when `s = t` and to the `b` end otherwise.
    pub fn complete_bipartite(id: FactorId, g: &Gamma) -> Self {
        let half = 2 * g.p();
        let vertices: Vec<String> = (0..2 * half).map(|i| g.vertex(i).to_string()).collect();
        let part = (0..2 * half)
            .map(|i| if i < half { Part::One } else { Part::Two })
            .collect();
        let mut edges = Vec::with_capacity((half * half) as usize);
        for a in 0..half {
            for b in half..2 * half {
                let (va, vb) = (g.vertex(a), g.vertex(b));
                let head = if va.sign == vb.sign { a } else { b };
                edges.push(FactorEdge {
                    label: format!("{va}~{vb}"),
                    ends: [a, b],
                    head,
                });
            }
        }
        FactorGraph::new(id, vertices, part, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_label(&self, v: u32) -> &str {
        &self.vertices[v as usize]
    }

    pub fn part(&self, v: u32) -> Part {
        self.part[v as usize]
    }

    pub fn edge(&self, e: u32) -> &FactorEdge {
        &self.edges[e as usize]
    }

    pub fn incident(&self, v: u32) -> &[u32] {
        &self.incident[v as usize]
    }

    /// No two edges share both endpoints.
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn out_degree(&self, v: u32) -> usize {
        self.incident(v)
            .iter()
            .filter(|&&e| self.edges[e as usize].head != v)
            .count()
    }

    pub fn in_degree(&self, v: u32) -> usize {
        self.incident(v).len() - self.out_degree(v)
    }

    fn edge_token(&self, e: u32) -> String {
        let edge = &self.edges[e as usize];
        let mut ends = [
            self.vertex_label(edge.ends[0]),
            self.vertex_label(edge.ends[1]),
        ];
        ends.sort_unstable();
        if self.simple {
            format!("e:{}:{}", ends[0], ends[1])
        } else {
            format!("e:{}:{}:{}", ends[0], ends[1], edge.label)
        }
    }
}

/// One coordinate of a cell: a factor vertex or a factor edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord(u32);

const EDGE_BIT: u32 = 1 << 31;

impl Coord {
    pub fn vertex(v: u32) -> Self {
        Coord(v)
    }

    pub fn edge(e: u32) -> Self {
        Coord(e | EDGE_BIT)
    }

    pub fn is_edge(self) -> bool {
        self.0 & EDGE_BIT != 0
    }

    pub fn index(self) -> u32 {
        self.0 & !EDGE_BIT
    }
}

/// A cell of a product of at most [`MAX_FACTORS`] graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeCell {
    len: u8,
    coords: [Coord; MAX_FACTORS],
}

impl CubeCell {
    pub fn new(coords: &[Coord]) -> Self {
        assert!(coords.len() <= MAX_FACTORS, "too many factors");
        let mut c = [Coord(0); MAX_FACTORS];
        c[..coords.len()].copy_from_slice(coords);
        CubeCell {
            len: coords.len() as u8,
            coords: c,
        }
    }

    pub fn vertex(vs: &[u32]) -> Self {
        let coords: Vec<Coord> = vs.iter().map(|&v| Coord::vertex(v)).collect();
        Self::new(&coords)
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords[..self.len as usize]
    }

    pub fn dim(&self) -> usize {
        self.coords().iter().filter(|c| c.is_edge()).count()
    }

    pub fn with(&self, factor: usize, c: Coord) -> Self {
        let mut out = *self;
        out.coords[factor] = c;
        out
    }

    /// Factor indices carrying an edge.
    pub fn directions(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_edge())
            .map(|(i, _)| i)
    }

    /// Factor vertex indices, for a 0-cell.
    pub fn vertex_indices(&self) -> Vec<u32> {
        debug_assert_eq!(self.dim(), 0);
        self.coords().iter().map(|c| c.index()).collect()
    }
}

/// Vertex classes of Δ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexType {
    Type1,
    Type2,
}

/// Which membership clause of Δ applies to a vertex with parts `(i, j, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaClause {
    AllSame,
    PairUV,
    PairVW,
    PairUW,
}

/// AllSame iff `i = j = k`; otherwise the unique constrained pair:
/// `(i, j) = (1, 2)` constrains `u, v`; `(j, k) = (1, 2)` constrains `v, w`;
/// `(i, k) = (2, 1)` constrains `u, w`.
pub fn omega_constraint(i: Part, j: Part, k: Part) -> OmegaClause {
    use Part::{One, Two};
    if i == j && j == k {
        OmegaClause::AllSame
    } else if (i, j) == (One, Two) {
        OmegaClause::PairUV
    } else if (j, k) == (One, Two) {
        OmegaClause::PairVW
    } else if (i, k) == (Two, One) {
        OmegaClause::PairUW
    } else {
        unreachable!("every mixed part triple has a constrained pair")
    }
}

/// A cube complex: a face-closed set of cells of a product of factor graphs.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    factors: Vec<FactorGraph>,
    cells: Vec<Vec<CubeCell>>,
    index: FxHashSet<CubeCell>,
}

impl PartialEq for CubeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors && self.cells == other.cells
    }
}

impl CubeComplex {
    /// Grows a complex dimension by dimension. A vertex is admitted when
    /// `vertex_ok` holds; a higher cube is admitted when all of its facets are
    /// and `cell_ok` holds. Each cube is generated once, from its all-tails
    /// corner.
    pub fn build(
        factors: Vec<FactorGraph>,
        vertex_ok: impl Fn(&[u32]) -> bool + Sync,
        cell_ok: impl Fn(&CubeCell) -> bool + Sync,
    ) -> Self {
        assert!(factors.len() <= MAX_FACTORS, "too many factors");
        let n = factors.len();
        let mut cc = CubeComplex {
            factors,
            cells: vec![Vec::new(); n + 1],
            index: FxHashSet::default(),
        };

        let sizes: Vec<u32> = cc.factors.iter().map(|f| f.vertex_count() as u32).collect();
        let total: u64 = sizes.iter().map(|&s| s as u64).product();
        let vertices: Vec<CubeCell> = (0..total)
            .into_par_iter()
            .filter_map(|mut flat| {
                let mut vs = [0u32; MAX_FACTORS];
                for f in (0..n).rev() {
                    vs[f] = (flat % sizes[f] as u64) as u32;
                    flat /= sizes[f] as u64;
                }
                vertex_ok(&vs[..n]).then(|| CubeCell::vertex(&vs[..n]))
            })
            .collect();
        cc.insert_layer(0, vertices);

        for k in 1..=n {
            let layer: Vec<CubeCell> = cc.cells[0]
                .par_iter()
                .flat_map_iter(|v| {
                    let out = cc.outgoing_directions(v, k > 1);
                    let mut found = Vec::new();
                    for mask in 1u32..(1 << n) {
                        if mask.count_ones() as usize != k {
                            continue;
                        }
                        let dirs: Vec<usize> = (0..n).filter(|f| mask & (1 << f) != 0).collect();
                        cc.grow(&dirs, &out, 0, *v, &cell_ok, &mut found);
                    }
                    found
                })
                .collect();
            cc.insert_layer(k, layer);
        }
        cc
    }

    // Edges leaving `v` in each factor; with `admitted_only`, just those whose
    // 1-cell is already in the complex.
    fn outgoing_directions(&self, v: &CubeCell, admitted_only: bool) -> Vec<Vec<u32>> {
        (0..self.factors.len())
            .map(|f| {
                let fg = &self.factors[f];
                let at = v.coords[f].index();
                fg.incident(at)
                    .iter()
                    .copied()
                    .filter(|&e| {
                        fg.edge(e).head != at
                            && (!admitted_only || self.contains(&v.with(f, Coord::edge(e))))
                    })
                    .collect()
            })
            .collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        &self,
        dirs: &[usize],
        out: &[Vec<u32>],
        depth: usize,
        cell: CubeCell,
        cell_ok: &(impl Fn(&CubeCell) -> bool + Sync),
        found: &mut Vec<CubeCell>,
    ) {
        if depth == dirs.len() {
            if self.facets(&cell).iter().all(|f| self.contains(f)) && cell_ok(&cell) {
                found.push(cell);
            }
            return;
        }
        let f = dirs[depth];
        for &e in &out[f] {
            self.grow(
                dirs,
                out,
                depth + 1,
                cell.with(f, Coord::edge(e)),
                cell_ok,
                found,
            );
        }
    }

    fn insert_layer(&mut self, k: usize, mut layer: Vec<CubeCell>) {
        layer.sort_unstable();
        layer.dedup();
        self.index.extend(layer.iter().copied());
        self.cells[k] = layer;
    }

    /// Builds a complex from an explicit cell list, checking face closure.
    pub fn from_cells(factors: Vec<FactorGraph>, cells: Vec<CubeCell>) -> Result<Self> {
        let n = factors.len();
        if n > MAX_FACTORS {
            return Err(Error::Parse(format!(
                "{n} factors exceed the supported {MAX_FACTORS}"
            )));
        }
        let mut layers = vec![Vec::new(); n + 1];
        for c in cells {
            if c.coords().len() != n {
                return Err(Error::Parse(format!("cell {c:?} has the wrong arity")));
            }
            layers[c.dim()].push(c);
        }
        let mut cc = CubeComplex {
            factors,
            cells: vec![Vec::new(); n + 1],
            index: FxHashSet::default(),
        };
        for (k, layer) in layers.into_iter().enumerate() {
            cc.insert_layer(k, layer);
        }
        if let Some(c) = cc.first_missing_face() {
            return Err(Error::Parse(format!(
                "cell list is not closed under faces: {}",
                cc.cell_tokens(&c)
            )));
        }
        Ok(cc)
    }

    pub fn factors(&self) -> &[FactorGraph] {
        &self.factors
    }

    pub fn factor(&self, f: usize) -> &FactorGraph {
        &self.factors[f]
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().rposition(|l| !l.is_empty()).unwrap_or(0)
    }

    pub fn cells(&self, k: usize) -> &[CubeCell] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.cells(k).len()
    }

    /// Cell counts by dimension, one entry per factor plus one.
    pub fn census(&self) -> Vec<usize> {
        (0..self.cells.len()).map(|k| self.count(k)).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.census().iter().sum()
    }

    pub fn contains(&self, c: &CubeCell) -> bool {
        self.index.contains(c)
    }

    fn require_vertex(&self, v: &CubeCell) -> Result<()> {
        if v.dim() == 0 && self.contains(v) {
            Ok(())
        } else {
            Err(Error::NotInComplex(self.cell_tokens(v)))
        }
    }

    /// The two ends of each edge coordinate, resolved every way.
    pub fn corners(&self, c: &CubeCell) -> Vec<CubeCell> {
        let mut out = vec![*c];
        for f in c.directions() {
            let ends = self.factors[f].edge(c.coords[f].index()).ends;
            out = out
                .into_iter()
                .flat_map(|x| ends.map(|v| x.with(f, Coord::vertex(v))))
                .collect();
        }
        out
    }

    /// Codimension-one faces.
    pub fn facets(&self, c: &CubeCell) -> Vec<CubeCell> {
        let mut out = Vec::with_capacity(2 * c.dim());
        for f in c.directions() {
            for v in self.factors[f].edge(c.coords[f].index()).ends {
                out.push(c.with(f, Coord::vertex(v)));
            }
        }
        out
    }

    pub fn tail_corner(&self, c: &CubeCell) -> CubeCell {
        let mut out = *c;
        for f in c.directions() {
            out = out.with(
                f,
                Coord::vertex(self.factors[f].edge(c.coords[f].index()).tail()),
            );
        }
        out
    }

    pub fn head_corner(&self, c: &CubeCell) -> CubeCell {
        let mut out = *c;
        for f in c.directions() {
            out = out.with(
                f,
                Coord::vertex(self.factors[f].edge(c.coords[f].index()).head),
            );
        }
        out
    }

    pub fn first_missing_face(&self) -> Option<CubeCell> {
        self.cells
            .iter()
            .skip(1)
            .flatten()
            .flat_map(|c| self.facets(c))
            .find(|f| !self.contains(f))
    }

    pub fn parts(&self, v: &CubeCell) -> Vec<Part> {
        v.coords()
            .iter()
            .enumerate()
            .map(|(f, c)| self.factors[f].part(c.index()))
            .collect()
    }

    /// Type 1 iff all coordinates lie in same-numbered parts.
    pub fn vertex_type(&self, v: &CubeCell) -> Result<VertexType> {
        self.require_vertex(v)?;
        Ok(self.vertex_type_unchecked(v))
    }

    fn vertex_type_unchecked(&self, v: &CubeCell) -> VertexType {
        let parts = self.parts(v);
        if parts.windows(2).all(|w| w[0] == w[1]) {
            VertexType::Type1
        } else {
            VertexType::Type2
        }
    }

    /// Link-vertex counts per factor at `v`.
    pub fn link_degrees(&self, v: &CubeCell) -> Vec<usize> {
        (0..self.factors.len())
            .map(|f| {
                let at = v.coords[f].index();
                self.factors[f]
                    .incident(at)
                    .iter()
                    .filter(|&&e| self.contains(&v.with(f, Coord::edge(e))))
                    .count()
            })
            .collect()
    }

    /// The unique factor contributing exactly four link vertices at `v`, if
    /// there is one.
    pub fn upsilon_factor(&self, v: &CubeCell) -> Option<usize> {
        let deg = self.link_degrees(v);
        let fours: Vec<usize> = (0..deg.len()).filter(|&f| deg[f] == 4).collect();
        (fours.len() == 1).then(|| fours[0])
    }

    /// The vertex link: one vertex per 1-cell at `v`, one `(k-1)`-simplex per
    /// `k`-cube at `v`.
    pub fn link(&self, v: &CubeCell) -> Result<SimplicialComplex<LinkVertexLabel>> {
        self.require_vertex(v)?;
        let n = self.factors.len();
        let per_factor: Vec<Vec<LinkVertexLabel>> = (0..n)
            .map(|f| {
                let fg = &self.factors[f];
                let at = v.coords[f].index();
                fg.incident(at)
                    .iter()
                    .filter(|&&e| self.contains(&v.with(f, Coord::edge(e))))
                    .map(|&e| {
                        let edge = fg.edge(e);
                        LinkVertexLabel {
                            factor: f as u8,
                            edge: e,
                            other_end: edge.other_end(at),
                            direction: if edge.head == at {
                                Direction::Incoming
                            } else {
                                Direction::Outgoing
                            },
                        }
                    })
                    .collect()
            })
            .collect();

        let mut simplices: Vec<Vec<LinkVertexLabel>> = Vec::new();
        for mask in 1u32..(1 << n) {
            let dirs: Vec<usize> = (0..n).filter(|f| mask & (1 << f) != 0).collect();
            self.link_faces(&per_factor, &dirs, 0, *v, &mut Vec::new(), &mut simplices);
        }
        Ok(SimplicialComplex::from_simplices(simplices)
            .expect("links of a cube complex are closed"))
    }

    #[allow(clippy::too_many_arguments)]
    fn link_faces(
        &self,
        per_factor: &[Vec<LinkVertexLabel>],
        dirs: &[usize],
        depth: usize,
        cell: CubeCell,
        chosen: &mut Vec<LinkVertexLabel>,
        out: &mut Vec<Vec<LinkVertexLabel>>,
    ) {
        if depth == dirs.len() {
            if self.contains(&cell) {
                out.push(chosen.clone());
            }
            return;
        }
        let f = dirs[depth];
        for l in &per_factor[f] {
            chosen.push(*l);
            self.link_faces(
                per_factor,
                dirs,
                depth + 1,
                cell.with(f, Coord::edge(l.edge)),
                chosen,
                out,
            );
            chosen.pop();
        }
    }

    /// Full subcomplex of the link on outgoing labels: cubes with `v` as their
    /// all-tails corner.
    pub fn ascending_link(&self, v: &CubeCell) -> Result<SimplicialComplex<LinkVertexLabel>> {
        Ok(self
            .link(v)?
            .full_subcomplex(|l| l.direction == Direction::Outgoing))
    }

    /// Full subcomplex of the link on incoming labels.
    pub fn descending_link(&self, v: &CubeCell) -> Result<SimplicialComplex<LinkVertexLabel>> {
        Ok(self
            .link(v)?
            .full_subcomplex(|l| l.direction == Direction::Incoming))
    }

    /// Path-connectivity of the 1-skeleton.
    pub fn is_connected(&self) -> bool {
        let verts = self.cells(0);
        if verts.is_empty() {
            return false;
        }
        let pos = |c: &CubeCell| verts.binary_search(c).unwrap();
        let mut adj = vec![Vec::new(); verts.len()];
        for e in self.cells(1) {
            let (t, h) = (pos(&self.tail_corner(e)), pos(&self.head_corner(e)));
            adj[t].push(h);
            adj[h].push(t);
        }
        let mut seen = vec![false; verts.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        reached == verts.len()
    }

    /// Export tokens of one cell.
    pub fn cell_tokens(&self, c: &CubeCell) -> String {
        c.coords()
            .iter()
            .enumerate()
            .map(|(f, &x)| {
                let fg = &self.factors[f];
                if x.is_edge() {
                    fg.edge_token(x.index())
                } else {
                    format!("v:{}", fg.vertex_label(x.index()))
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The cell-list text: header `cubecomplex factors=<n>`, then one
    /// `dim=<d> <tokens>` line per cell, lines sorted.
    pub fn to_cell_list(&self) -> String {
        let mut lines: Vec<String> = self
            .cells
            .par_iter()
            .flatten()
            .map(|c| format!("dim={} {}", c.dim(), self.cell_tokens(c)))
            .collect();
        lines.par_sort_unstable();
        let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum::<usize>() + 32);
        out.push_str(&format!("cubecomplex factors={}\n", self.factors.len()));
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }

    /// Parses a cell list against known ambient factors.
    pub fn from_cell_list(text: &str, factors: Vec<FactorGraph>) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty cell list".into()))?;
        let n: usize = header
            .strip_prefix("cubecomplex factors=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
        if n != factors.len() {
            return Err(Error::Parse(format!(
                "header declares {n} factors, {} supplied",
                factors.len()
            )));
        }
        let lookup: Vec<(FxHashMap<&str, u32>, TokenIndex)> = factors
            .iter()
            .map(|fg| {
                let vs = (0..fg.vertex_count() as u32)
                    .map(|v| (fg.vertex_label(v), v))
                    .collect();
                let es = (0..fg.edge_count() as u32)
                    .map(|e| (fg.edge_token(e), e))
                    .collect();
                (vs, es)
            })
            .collect();

        let mut cells = Vec::new();
        for line in lines.filter(|l| !l.is_empty()) {
            let bad = || Error::Parse(format!("bad cell line `{line}`"));
            let mut toks = line.split(' ');
            let d: usize = toks
                .next()
                .and_then(|t| t.strip_prefix("dim="))
                .and_then(|t| t.parse().ok())
                .ok_or_else(bad)?;
            let mut coords = Vec::with_capacity(n);
            for (f, tok) in toks.enumerate() {
                let (vs, es) = lookup.get(f).ok_or_else(bad)?;
                let c = if let Some(label) = tok.strip_prefix("v:") {
                    Coord::vertex(*vs.get(label).ok_or_else(bad)?)
                } else if tok.starts_with("e:") {
                    Coord::edge(*es.get(tok).ok_or_else(bad)?)
                } else {
                    return Err(bad());
                };
                coords.push(c);
            }
            let cell = CubeCell::new(&coords);
            if coords.len() != n || cell.dim() != d {
                return Err(bad());
            }
            cells.push(cell);
        }
        CubeComplex::from_cells(factors, cells)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Outgoing,
    Incoming,
}

/// A vertex of a link: the end at `v` of a 1-cell along `factor` using factor
/// edge `edge`. Outgoing iff the edge's head is `other_end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkVertexLabel {
    pub factor: u8,
    pub edge: u32,
    pub other_end: u32,
    pub direction: Direction,
}

impl fmt::Display for LinkVertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Outgoing => "out",
            Direction::Incoming => "in",
        };
        write!(f, "f{}.e{}.{}", self.factor, self.edge, dir)
    }
}

pub fn build_x(g: &Gamma) -> CubeComplex {
    let factors = vec![
        FactorGraph::theta(FactorId::Theta1, g),
        FactorGraph::theta(FactorId::Theta2, g),
    ];
    let b_offset = 2 * g.p();
    CubeComplex::build(
        factors,
        |_| true,
        |c| {
            c.dim() < 2 || {
                let [a, b] = [c.coords[0].index(), c.coords[1].index()];
                g.has_edge(g.vertex(a), g.vertex(b_offset + b))
            }
        },
    )
}

/// Whether the factor-vertex triple `(u, v, w)` of `U × V × W` lies in Δ.
pub fn delta_admits(g: &Gamma, u: u32, v: u32, w: u32) -> bool {
    let half = 2 * g.p();
    let part = |x: u32| if x < half { Part::One } else { Part::Two };
    let edge = |x: u32, y: u32| g.neighbor_ids(x).binary_search(&y).is_ok();
    match omega_constraint(part(u), part(v), part(w)) {
        OmegaClause::AllSame => true,
        OmegaClause::PairUV => edge(u, v),
        OmegaClause::PairVW => edge(v, w),
        OmegaClause::PairUW => edge(u, w),
    }
}

pub fn delta_factors(g: &Gamma) -> Vec<FactorGraph> {
    vec![
        FactorGraph::complete_bipartite(FactorId::U, g),
        FactorGraph::complete_bipartite(FactorId::V, g),
        FactorGraph::complete_bipartite(FactorId::W, g),
    ]
}

pub fn x_factors(g: &Gamma) -> Vec<FactorGraph> {
    vec![
        FactorGraph::theta(FactorId::Theta1, g),
        FactorGraph::theta(FactorId::Theta2, g),
    ]
}

pub fn build_delta(g: &Gamma) -> CubeComplex {
    CubeComplex::build(
        delta_factors(g),
        |vs| delta_admits(g, vs[0], vs[1], vs[2]),
        |_| true,
    )
}

/// The canonical identification of an `X` link vertex with a Γ vertex: a
/// `Θ1` edge is an `a` vertex, a `Θ2` edge a `b` vertex.
pub fn x_link_relabel(
    g: &Gamma,
    link: &SimplicialComplex<LinkVertexLabel>,
) -> BTreeMap<LinkVertexLabel, GammaVertex> {
    link.labels()
        .iter()
        .map(|l| {
            let id = if l.factor == 0 {
                l.edge
            } else {
                2 * g.p() + l.edge
            };
            (*l, g.vertex(id))
        })
        .collect()
}

/// Label space of `Γ ⋆ Υ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JoinLabel {
    Gamma(GammaVertex),
    Point(u32),
}

impl fmt::Display for JoinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JoinLabel::Gamma(v) => write!(f, "{v}"),
            JoinLabel::Point(i) => write!(f, "p{i}"),
        }
    }
}

/// At a type 2 vertex of Δ with four-point factor `upsilon`: link vertices in
/// the other two factors map to the Γ vertex at their far end, the four
/// `upsilon` vertices map to points `0..4` in label order.
pub fn type2_link_relabel(
    g: &Gamma,
    link: &SimplicialComplex<LinkVertexLabel>,
    upsilon: usize,
) -> BTreeMap<LinkVertexLabel, JoinLabel> {
    let mut next = 0;
    link.labels()
        .iter()
        .map(|l| {
            let target = if l.factor as usize == upsilon {
                next += 1;
                JoinLabel::Point(next - 1)
            } else {
                JoinLabel::Gamma(g.vertex(l.other_end))
            };
            (*l, target)
        })
        .collect()
}

/// Result of auditing the special 1-cells of Δ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecialCellAudit {
    /// 1-cells between type 2 vertices whose direction is the four-point
    /// factor at both ends; sorted.
    pub special: Vec<CubeCell>,
    pub type2_edges: usize,
    /// Type 2 to type 2 edges where the direction is the four-point factor
    /// at exactly one end.
    pub violations: Vec<CubeCell>,
}

/// Per-vertex data used by the audits: type and four-point factor.
pub fn vertex_profiles(cc: &CubeComplex) -> FxHashMap<CubeCell, (VertexType, Option<usize>)> {
    cc.cells(0)
        .par_iter()
        .map(|v| (*v, (cc.vertex_type_unchecked(v), cc.upsilon_factor(v))))
        .collect()
}

pub fn special_one_cells(cc: &CubeComplex) -> SpecialCellAudit {
    let profiles = vertex_profiles(cc);
    special_one_cells_with(cc, &profiles)
}

pub fn special_one_cells_with(
    cc: &CubeComplex,
    profiles: &FxHashMap<CubeCell, (VertexType, Option<usize>)>,
) -> SpecialCellAudit {
    let mut audit = SpecialCellAudit::default();
    for e in cc.cells(1) {
        let f = e.directions().next().unwrap();
        let (t, h) = (profiles[&cc.tail_corner(e)], profiles[&cc.head_corner(e)]);
        if t.0 != VertexType::Type2 || h.0 != VertexType::Type2 {
            continue;
        }
        audit.type2_edges += 1;
        let (at_tail, at_head) = (t.1 == Some(f), h.1 == Some(f));
        if at_tail != at_head {
            audit.violations.push(*e);
        } else if at_tail {
            audit.special.push(*e);
        }
    }
    audit
}

/// Checks one 3-cube: exactly two type 1 corners, antipodal, and exactly
/// three special edges forming a perfect matching of the six type 2 corners.
pub fn cube_pattern_violation(
    cc: &CubeComplex,
    cube: &CubeCell,
    profiles: &FxHashMap<CubeCell, (VertexType, Option<usize>)>,
    special: &FxHashSet<CubeCell>,
) -> Option<String> {
    let corners = cc.corners(cube);
    let type1: Vec<&CubeCell> = corners
        .iter()
        .filter(|c| profiles[*c].0 == VertexType::Type1)
        .collect();
    if type1.len() != 2 {
        return Some(format!("{} type 1 corners", type1.len()));
    }
    let antipodal = type1[0]
        .coords()
        .iter()
        .zip(type1[1].coords())
        .all(|(x, y)| x != y);
    if !antipodal {
        return Some("type 1 corners are not antipodal".into());
    }
    let mut edges = Vec::new();
    for c in &corners {
        for f in cube.directions() {
            let e = c.with(f, cube.coords[f]);
            if cc.tail_corner(&e) == *c {
                edges.push(e);
            }
        }
    }
    let specials: Vec<&CubeCell> = edges.iter().filter(|e| special.contains(*e)).collect();
    if specials.len() != 3 {
        return Some(format!("{} special edges", specials.len()));
    }
    let mut covered: Vec<CubeCell> = specials
        .iter()
        .flat_map(|e| [cc.tail_corner(e), cc.head_corner(e)])
        .collect();
    covered.sort_unstable();
    covered.dedup();
    let all_type2 = covered.iter().all(|c| profiles[c].0 == VertexType::Type2);
    if covered.len() != 6 || !all_type2 {
        return Some("special edges do not match the type 2 corners".into());
    }
    None
}

type TokenIndex = FxHashMap<String, u32>;

/// Writes the cell list of `cc` to `path`.
pub fn export_complex(cc: &CubeComplex, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, cc.to_cell_list())?;
    Ok(())
}

/// Reads a cell list written by [`export_complex`] against the given factors.
pub fn import_complex(path: &std::path::Path, factors: Vec<FactorGraph>) -> Result<CubeComplex> {
    let text = std::fs::read_to_string(path)?;
    CubeComplex::from_cell_list(&text, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{build_gamma, OffsetScheme, Sign};
    use crate::simplicial::{is_isomorphic_relabel, is_two_sphere};
    use Part::{One, Two};

    fn g(p: u32) -> Gamma {
        build_gamma(p, OffsetScheme::default()).unwrap()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_constraint(One, One, One), OmegaClause::AllSame);
        assert_eq!(omega_constraint(Two, Two, Two), OmegaClause::AllSame);
        assert_eq!(omega_constraint(One, Two, One), OmegaClause::PairUV);
        assert_eq!(omega_constraint(Two, One, One), OmegaClause::PairUW);
    }

    #[test]
    fn omega_exactly_one_clause_per_mixed_triple() {
        for i in [One, Two] {
            for j in [One, Two] {
                for k in [One, Two] {
                    if i == j && j == k {
                        continue;
                    }
                    let clauses = [
                        (i, j) == (One, Two),
                        (j, k) == (One, Two),
                        (i, k) == (Two, One),
                    ];
                    assert_eq!(clauses.iter().filter(|&&b| b).count(), 1, "{i:?}{j:?}{k:?}");
                }
            }
        }
    }

    #[test]
    fn factor_orientations() {
        let g = g(11);
        let k = FactorGraph::complete_bipartite(FactorId::U, &g);
        assert_eq!(k.vertex_count(), 44);
        assert_eq!(k.edge_count(), 484);
        assert!(k.is_simple());
        for v in 0..44 {
            assert_eq!(k.out_degree(v), 11);
            assert_eq!(k.in_degree(v), 11);
        }
        let t1 = FactorGraph::theta(FactorId::Theta1, &g);
        assert_eq!(t1.edge_count(), 22);
        assert!(!t1.is_simple());
        // A- edges point to v2, A+ edges to v1.
        assert_eq!(t1.out_degree(0), 11);
        for e in 0..22 {
            let edge = t1.edge(e);
            let minus = edge.label.starts_with("A-");
            assert_eq!(edge.head, u32::from(minus));
        }
    }

    #[test]
    fn x_census_and_squares() {
        let g = g(11);
        let x = build_x(&g);
        assert_eq!(x.census(), vec![4, 88, 88]);
        assert!(x.first_missing_face().is_none());
        let a0 = g.id(GammaVertex::a(Sign::Plus, 0));
        let b0 = g.id(GammaVertex::b(Sign::Plus, 0)) - 22;
        let b7m = g.id(GammaVertex::b(Sign::Minus, 7)) - 22;
        let sq = |b| CubeCell::new(&[Coord::edge(a0), Coord::edge(b)]);
        assert!(x.contains(&sq(b0)));
        assert!(!x.contains(&sq(b7m)));
    }

    #[test]
    fn x_links_are_gamma() {
        let g = g(11);
        let x = build_x(&g);
        let gc = g.to_complex();
        for v in x.cells(0) {
            let lk = x.link(v).unwrap();
            assert_eq!(lk.f_vector(), vec![44, 88]);
            let map = x_link_relabel(&g, &lk);
            assert!(is_isomorphic_relabel(&lk, &gc, &map).unwrap());
        }
    }

    #[test]
    fn x_ascending_link_at_v1_v3_is_minus_minus_quadrant() {
        let g = g(11);
        let x = build_x(&g);
        let v = CubeCell::vertex(&[0, 0]);
        let up = x.ascending_link(&v).unwrap();
        assert_eq!(up.f_vector(), vec![22, 22]);
        let map = x_link_relabel(&g, &up);
        assert!(map.values().all(|gv| gv.sign == Sign::Minus));
        assert!(crate::simplicial::is_connected(&up));
        assert!(up.adjacency().iter().all(|a| a.len() == 2));
    }

    #[test]
    fn vertex_type_examples() {
        let g = g(11);
        let cc = build_delta(&g);
        let id = |v: GammaVertex| g.id(v);
        let a0p = id(GammaVertex::a(Sign::Plus, 0));
        let a3m = id(GammaVertex::a(Sign::Minus, 3));
        let a5p = id(GammaVertex::a(Sign::Plus, 5));
        let b3p = id(GammaVertex::b(Sign::Plus, 3));
        let b1p = id(GammaVertex::b(Sign::Plus, 1));
        let b4m = id(GammaVertex::b(Sign::Minus, 4));
        let b7m = id(GammaVertex::b(Sign::Minus, 7));
        let v = |a, b, c| CubeCell::vertex(&[a, b, c]);
        assert_eq!(
            cc.vertex_type(&v(a0p, a3m, a5p)).unwrap(),
            VertexType::Type1
        );
        // Parts (2, 1, 1) constrain {u, w}; a0+ ~ b3- but not b3+.
        let b3m = id(GammaVertex::b(Sign::Minus, 3));
        assert_eq!(
            cc.vertex_type(&v(b3m, a0p, a0p)).unwrap(),
            VertexType::Type2
        );
        assert!(cc.vertex_type(&v(b3p, a0p, a0p)).is_err());
        assert_eq!(
            cc.vertex_type(&v(a0p, b1p, b4m)).unwrap(),
            VertexType::Type2
        );
        assert!(cc.contains(&v(a0p, a0p, a0p)));
        assert!(!cc.contains(&v(a0p, b7m, a0p)));
        assert!(matches!(
            cc.vertex_type(&v(a0p, b7m, a0p)),
            Err(Error::NotInComplex(_))
        ));
        assert!(cc.link(&v(a0p, b7m, a0p)).is_err());
    }

    #[test]
    fn small_delta_links() {
        // p = 13 keeps the default scheme valid and the complex small enough
        // for a debug-build unit test of every link shape.
        let g = g(13);
        let cc = build_delta(&g);
        assert!(cc.first_missing_face().is_none());
        let n1 = 2 * 26u64.pow(3);
        let n2 = 6 * 104 * 26;
        assert_eq!(cc.count(0) as u64, n1 + n2);
        let mut checked = [0, 0];
        for v in cc.cells(0).iter().step_by(97) {
            let lk = cc.link(v).unwrap();
            match cc.vertex_type(v).unwrap() {
                VertexType::Type1 => {
                    assert_eq!(lk.f_vector(), vec![12, 48, 64]);
                    assert_eq!(cc.upsilon_factor(v), None);
                    checked[0] += 1;
                }
                VertexType::Type2 => {
                    assert_eq!(lk.f_vector(), vec![56, 312, 416]);
                    let ups = cc.upsilon_factor(v).unwrap();
                    let map = type2_link_relabel(&g, &lk, ups);
                    let want = crate::simplicial::join(
                        &g.to_complex().map_labels(|&x| JoinLabel::Gamma(x)),
                        &SimplicialComplex::from_maximal((0..4).map(|i| [JoinLabel::Point(i)])),
                    )
                    .unwrap();
                    assert!(is_isomorphic_relabel(&lk, &want, &map).unwrap());
                    checked[1] += 1;
                }
            }
            assert!(is_two_sphere(&cc.ascending_link(v).unwrap()).is_pass());
            assert!(is_two_sphere(&cc.descending_link(v).unwrap()).is_pass());
        }
        assert!(checked[0] > 0 && checked[1] > 0);
    }

    #[test]
    fn extremal_corners_unique() {
        let g = g(11);
        let x = build_x(&g);
        for sq in x.cells(2) {
            let corners = x.corners(sq);
            assert_eq!(corners.len(), 4);
            let tail = x.tail_corner(sq);
            let head = x.head_corner(sq);
            assert_ne!(tail, head);
            // In Θ1 × Θ2 all four corners are distinct vertices.
            let mut cs = corners.clone();
            cs.sort_unstable();
            cs.dedup();
            assert_eq!(cs.len(), 4);
        }
    }

    #[test]
    fn cell_list_round_trip_x() {
        let g = g(11);
        let x = build_x(&g);
        let text = x.to_cell_list();
        assert!(text.starts_with("cubecomplex factors=2\n"));
        assert_eq!(text.lines().count(), 1 + 4 + 88 + 88);
        assert!(text.contains("dim=0 v:v1 v:v3\n"));
        assert!(text.contains("dim=2 e:v1:v2:A+0 e:v3:v4:B+0\n"));
        let back = CubeComplex::from_cell_list(&text, x_factors(&g)).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.to_cell_list(), text);
    }

    #[test]
    fn cell_list_rejects_open_lists() {
        let g = g(11);
        let text = "cubecomplex factors=2\ndim=1 e:v1:v2:A+0 v:v3\n";
        assert!(CubeComplex::from_cell_list(text, x_factors(&g)).is_err());
        let bad = "cubecomplex factors=2\ndim=0 v:v9 v:v3\n";
        assert!(CubeComplex::from_cell_list(bad, x_factors(&g)).is_err());
        let empty = CubeComplex::from_cell_list("cubecomplex factors=2\n", x_factors(&g)).unwrap();
        assert_eq!(empty.total_cells(), 0);
        assert_eq!(empty.to_cell_list(), "cubecomplex factors=2\n");
    }
}
