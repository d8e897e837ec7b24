//! Finite abstract simplicial complexes and the predicates used on vertex
//! links: flagness, the no-empty-square condition, connectivity, Euler
//! characteristic, 2-sphere recognition and joins.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A simplicial complex on labeled vertices.
///
/// Vertices are stored as indices into the sorted label table, so sorted
/// index vectors are also sorted by label. `simplices[k]` holds the
/// `k`-dimensional simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex<L> {
    labels: Vec<L>,
    simplices: Vec<BTreeSet<Vec<u32>>>,
}

/// Outcome of a check that reports a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

impl<L: Ord + Clone> SimplicialComplex<L> {
    pub fn empty() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            simplices: Vec::new(),
        }
    }

    /// The downward closure of the given faces.
    pub fn from_maximal<I, S>(faces: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = L>,
    {
        let faces: Vec<Vec<L>> = faces.into_iter().map(|f| f.into_iter().collect()).collect();
        let mut labels: Vec<L> = faces.iter().flatten().cloned().collect();
        labels.sort();
        labels.dedup();
        let mut sc = SimplicialComplex {
            labels,
            simplices: Vec::new(),
        };
        for face in &faces {
            let mut idx: Vec<u32> = face.iter().map(|l| sc.index_of(l).unwrap()).collect();
            idx.sort_unstable();
            idx.dedup();
            sc.insert_closed(&idx);
        }
        sc
    }

    /// Builds a complex from an explicit simplex list, which must already be
    /// closed under taking faces.
    pub fn from_simplices<I, S>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = L>,
    {
        let faces: Vec<Vec<L>> = simplices
            .into_iter()
            .map(|f| f.into_iter().collect())
            .collect();
        let mut labels: Vec<L> = faces.iter().flatten().cloned().collect();
        labels.sort();
        labels.dedup();
        let mut sc = SimplicialComplex {
            labels,
            simplices: Vec::new(),
        };
        for face in &faces {
            let mut idx: Vec<u32> = face.iter().map(|l| sc.index_of(l).unwrap()).collect();
            idx.sort_unstable();
            idx.dedup();
            if !idx.is_empty() {
                sc.insert_raw(idx);
            }
        }
        if let Some(missing) = sc.first_missing_face() {
            return Err(Error::NotClosed(format!("missing face {missing:?}")));
        }
        Ok(sc)
    }

    fn insert_raw(&mut self, idx: Vec<u32>) {
        let k = idx.len() - 1;
        if self.simplices.len() <= k {
            self.simplices.resize_with(k + 1, BTreeSet::new);
        }
        self.simplices[k].insert(idx);
    }

    fn insert_closed(&mut self, idx: &[u32]) {
        if idx.is_empty() || self.contains(idx) {
            return;
        }
        let n = idx.len();
        // Every nonempty subset; simplices here have at most a handful of vertices.
        for mask in 1u32..(1 << n) {
            let sub: Vec<u32> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| idx[i])
                .collect();
            self.insert_raw(sub);
        }
    }

    fn first_missing_face(&self) -> Option<Vec<u32>> {
        for layer in self.simplices.iter().skip(1) {
            for s in layer {
                for skip in 0..s.len() {
                    let face = drop_index(s, skip);
                    if !self.contains(&face) {
                        return Some(face);
                    }
                }
            }
        }
        None
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, v: u32) -> &L {
        &self.labels[v as usize]
    }

    pub fn index_of(&self, label: &L) -> Option<u32> {
        self.labels.binary_search(label).ok().map(|i| i as u32)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().rposition(|l| !l.is_empty())
    }

    /// Number of `k`-simplices.
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, BTreeSet::len)
    }

    /// Face counts `f_0, f_1, ...` up to the dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.dim().map_or(0, |d| d + 1))
            .map(|k| self.count(k))
            .collect()
    }

    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &[u32]> + '_ {
        self.simplices
            .get(k)
            .into_iter()
            .flat_map(|l| l.iter().map(Vec::as_slice))
    }

    pub fn simplex_labels(&self, k: usize) -> Vec<Vec<L>> {
        self.simplices(k)
            .map(|s| s.iter().map(|&v| self.label(v).clone()).collect())
            .collect()
    }

    /// Membership of a sorted index vector.
    pub fn contains(&self, s: &[u32]) -> bool {
        !s.is_empty()
            && self
                .simplices
                .get(s.len() - 1)
                .is_some_and(|l| l.contains(s))
    }

    pub fn contains_labels(&self, s: &[L]) -> bool {
        let mut idx = Vec::with_capacity(s.len());
        for l in s {
            match self.index_of(l) {
                Some(i) => idx.push(i),
                None => return false,
            }
        }
        idx.sort_unstable();
        self.contains(&idx)
    }

    /// Neighbor lists of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for e in self.simplices(1) {
            adj[e[0] as usize].push(e[1]);
            adj[e[1] as usize].push(e[0]);
        }
        adj
    }

    fn has_edge(&self, a: u32, b: u32) -> bool {
        let e = if a < b { [a, b] } else { [b, a] };
        self.contains(&e)
    }

    /// Simplices not properly contained in any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Vec<u32>> {
        let mut faces_of_larger: BTreeSet<Vec<u32>> = BTreeSet::new();
        for layer in self.simplices.iter().skip(1) {
            for s in layer {
                for skip in 0..s.len() {
                    faces_of_larger.insert(drop_index(s, skip));
                }
            }
        }
        self.simplices
            .iter()
            .flatten()
            .filter(|s| !faces_of_larger.contains(*s))
            .cloned()
            .collect()
    }

    /// The full subcomplex on the vertices whose label satisfies `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(&L) -> bool) -> Self {
        let kept: Vec<bool> = self.labels.iter().map(&keep).collect();
        let mut remap = vec![u32::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (i, l) in self.labels.iter().enumerate() {
            if kept[i] {
                remap[i] = labels.len() as u32;
                labels.push(l.clone());
            }
        }
        let simplices = self
            .simplices
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .filter(|s| s.iter().all(|&v| kept[v as usize]))
                    .map(|s| s.iter().map(|&v| remap[v as usize]).collect())
                    .collect::<BTreeSet<Vec<u32>>>()
            })
            .collect();
        let mut sc = SimplicialComplex { labels, simplices };
        sc.trim();
        sc
    }

    fn trim(&mut self) {
        while self.simplices.last().is_some_and(BTreeSet::is_empty) {
            self.simplices.pop();
        }
    }

    /// Applies an injective relabeling.
    pub fn map_labels<M: Ord + Clone>(&self, f: impl Fn(&L) -> M) -> SimplicialComplex<M> {
        SimplicialComplex::from_maximal(
            self.simplices
                .iter()
                .flatten()
                .map(|s| s.iter().map(|&v| f(self.label(v))).collect::<Vec<M>>()),
        )
    }

    /// The link of vertex `v`: faces `τ` with `v ∉ τ` and `τ ∪ {v}` a simplex.
    pub fn vertex_link(&self, v: u32) -> Self {
        let mut faces = Vec::new();
        for layer in self.simplices.iter().skip(1) {
            for s in layer {
                if s.contains(&v) {
                    faces.push(
                        s.iter()
                            .filter(|&&w| w != v)
                            .map(|&w| self.label(w).clone())
                            .collect::<Vec<L>>(),
                    );
                }
            }
        }
        SimplicialComplex::from_maximal(faces)
    }
}

fn drop_index(s: &[u32], skip: usize) -> Vec<u32> {
    s.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &v)| v)
        .collect()
}

/// Checks that every clique of the 1-skeleton spans a simplex. On failure
/// returns a minimal clique that does not.
pub fn is_flag<L: Ord + Clone>(sc: &SimplicialComplex<L>) -> Verdict<Vec<L>> {
    let Some(dim) = sc.dim() else {
        return Verdict::Pass;
    };
    let n = sc.vertex_count();
    let mut adj = sc.adjacency();
    for l in &mut adj {
        l.sort_unstable();
    }
    // Cliques of size k are grown from (k-1)-cliques, which at that point are
    // known to be simplices; any clique of size dim + 2 is a violation.
    for k in 3..=dim + 2 {
        for base in sc.simplices(k - 2) {
            let last = *base.last().unwrap();
            for w in (last + 1)..n as u32 {
                if base
                    .iter()
                    .all(|&b| adj[b as usize].binary_search(&w).is_ok())
                {
                    let mut clique = base.to_vec();
                    clique.push(w);
                    if !sc.contains(&clique) {
                        return Verdict::Fail(
                            clique.iter().map(|&v| sc.label(v).clone()).collect(),
                        );
                    }
                }
            }
        }
    }
    Verdict::Pass
}

/// All 4-cycles `a-b-c-d` of the 1-skeleton with neither diagonal `ac` nor
/// `bd` present, each once, `a` the least vertex and `b < d`.
pub fn empty_squares<L: Ord + Clone>(sc: &SimplicialComplex<L>) -> Vec<[L; 4]> {
    let adj = sc.adjacency();
    let n = sc.vertex_count() as u32;
    let mut out = Vec::new();
    for a in 0..n {
        for c in (a + 1)..n {
            if sc.has_edge(a, c) {
                continue;
            }
            let common: Vec<u32> = adj[a as usize]
                .iter()
                .copied()
                .filter(|&x| x > a && sc.has_edge(x, c))
                .collect();
            for (i, &b) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    if !sc.has_edge(b, d) {
                        let (b, d) = if b < d { (b, d) } else { (d, b) };
                        out.push([a, b, c, d].map(|v| sc.label(v).clone()));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Path-connectivity of the 1-skeleton. The empty complex is not connected.
pub fn is_connected<L: Ord + Clone>(sc: &SimplicialComplex<L>) -> bool {
    let n = sc.vertex_count();
    if n == 0 {
        return false;
    }
    let adj = sc.adjacency();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0u32]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    reached == n
}

pub fn euler_characteristic<L: Ord + Clone>(sc: &SimplicialComplex<L>) -> i64 {
    sc.f_vector()
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// The first clause of the closed-surface test that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SphereFailure<L> {
    NotPureTwoDimensional,
    EdgeDegree { edge: [L; 2], triangles: usize },
    VertexLinkNotCycle { vertex: L },
    Disconnected,
    EulerCharacteristic(i64),
}

impl<L: fmt::Display> fmt::Display for SphereFailure<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphereFailure::NotPureTwoDimensional => write!(f, "not pure 2-dimensional"),
            SphereFailure::EdgeDegree { edge, triangles } => write!(
                f,
                "edge {} {} lies in {} triangles",
                edge[0], edge[1], triangles
            ),
            SphereFailure::VertexLinkNotCycle { vertex } => {
                write!(f, "link of {vertex} is not a single cycle")
            }
            SphereFailure::Disconnected => write!(f, "disconnected"),
            SphereFailure::EulerCharacteristic(chi) => write!(f, "euler characteristic {chi}"),
        }
    }
}

/// Decides whether `sc` triangulates the 2-sphere: pure of dimension 2, every
/// edge in exactly two triangles, every vertex link a single cycle, connected,
/// and Euler characteristic 2.
pub fn is_two_sphere<L: Ord + Clone>(sc: &SimplicialComplex<L>) -> Verdict<SphereFailure<L>> {
    if sc.dim() != Some(2) {
        return Verdict::Fail(SphereFailure::NotPureTwoDimensional);
    }
    let mut edge_deg: BTreeMap<[u32; 2], usize> =
        sc.simplices(1).map(|e| ([e[0], e[1]], 0)).collect();
    let mut in_triangle = vec![false; sc.vertex_count()];
    for t in sc.simplices(2) {
        for (x, y) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *edge_deg.get_mut(&[x, y]).unwrap() += 1;
        }
        for &v in t {
            in_triangle[v as usize] = true;
        }
    }
    if in_triangle.iter().any(|&b| !b) {
        return Verdict::Fail(SphereFailure::NotPureTwoDimensional);
    }
    if edge_deg.values().any(|&d| d == 0) {
        return Verdict::Fail(SphereFailure::NotPureTwoDimensional);
    }
    if let Some((e, &d)) = edge_deg.iter().find(|(_, &d)| d != 2) {
        return Verdict::Fail(SphereFailure::EdgeDegree {
            edge: [sc.label(e[0]).clone(), sc.label(e[1]).clone()],
            triangles: d,
        });
    }
    for v in 0..sc.vertex_count() as u32 {
        let lk = sc.vertex_link(v);
        let cycle = lk.dim() == Some(1)
            && lk.vertex_count() >= 3
            && lk.adjacency().iter().all(|a| a.len() == 2)
            && is_connected(&lk);
        if !cycle {
            return Verdict::Fail(SphereFailure::VertexLinkNotCycle {
                vertex: sc.label(v).clone(),
            });
        }
    }
    if !is_connected(sc) {
        return Verdict::Fail(SphereFailure::Disconnected);
    }
    let chi = euler_characteristic(sc);
    if chi != 2 {
        return Verdict::Fail(SphereFailure::EulerCharacteristic(chi));
    }
    Verdict::Pass
}

/// The simplicial join: every union of a simplex (or nothing) from each side.
pub fn join<L: Ord + Clone + fmt::Display>(
    left: &SimplicialComplex<L>,
    right: &SimplicialComplex<L>,
) -> Result<SimplicialComplex<L>> {
    if let Some(l) = left.labels.iter().find(|l| right.index_of(l).is_some()) {
        return Err(Error::LabelCollision(l.to_string()));
    }
    let side = |sc: &SimplicialComplex<L>| -> Vec<Vec<L>> {
        let mut all = vec![Vec::new()];
        for k in 0..sc.simplices.len() {
            all.extend(sc.simplex_labels(k));
        }
        all
    };
    let (ls, rs) = (side(left), side(right));
    let mut faces = Vec::with_capacity(ls.len() * rs.len());
    for a in &ls {
        for b in &rs {
            if a.is_empty() && b.is_empty() {
                continue;
            }
            let mut s = a.clone();
            s.extend(b.iter().cloned());
            faces.push(s);
        }
    }
    Ok(SimplicialComplex::from_maximal(faces))
}

/// Whether `relabel` carries the simplices of `a` exactly onto those of `b`.
/// `relabel` must be defined and injective on the vertices of `a`.
pub fn is_isomorphic_relabel<L, M>(
    a: &SimplicialComplex<L>,
    b: &SimplicialComplex<M>,
    relabel: &BTreeMap<L, M>,
) -> Result<bool>
where
    L: Ord + Clone + fmt::Debug,
    M: Ord + Clone + fmt::Debug,
{
    let mut image = BTreeSet::new();
    for l in &a.labels {
        let m = relabel
            .get(l)
            .ok_or_else(|| Error::NotBijective(format!("{l:?} has no image")))?;
        if !image.insert(m.clone()) {
            return Err(Error::NotBijective(format!("{m:?} is hit twice")));
        }
    }
    if image.len() != b.vertex_count() || image.iter().any(|m| b.index_of(m).is_none()) {
        return Ok(false);
    }
    let layers = a.simplices.len().max(b.simplices.len());
    for k in 0..layers {
        if a.count(k) != b.count(k) {
            return Ok(false);
        }
        for s in a.simplices(k) {
            let mapped: Vec<M> = s.iter().map(|&v| relabel[a.label(v)].clone()).collect();
            if !b.contains_labels(&mapped) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl<L: Ord + Clone + fmt::Display> SimplicialComplex<L> {
    /// One `s v1 .. vk` line per maximal simplex, lines sorted.
    pub fn to_text(&self) -> String {
        let mut lines: Vec<String> = self
            .maximal_simplices()
            .iter()
            .map(|s| {
                let mut line = String::from("s");
                for &v in s {
                    line.push(' ');
                    line.push_str(&self.label(v).to_string());
                }
                line
            })
            .collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

impl<L: Ord + Clone + FromStr> SimplicialComplex<L> {
    pub fn from_text(text: &str) -> Result<Self> {
        let mut faces = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let mut toks = line.split_whitespace();
            if toks.next() != Some("s") {
                return Err(Error::Parse(format!("bad simplex line `{line}`")));
            }
            let face = toks
                .map(|t| {
                    t.parse::<L>()
                        .map_err(|_| Error::Parse(format!("bad vertex label `{t}`")))
                })
                .collect::<Result<Vec<L>>>()?;
            if face.is_empty() {
                return Err(Error::Parse(format!("empty simplex line `{line}`")));
            }
            faces.push(face);
        }
        Ok(SimplicialComplex::from_maximal(faces))
    }
}

/// Standard fixtures.
pub mod fixtures {
    use super::SimplicialComplex;

    /// `n` isolated points labeled `offset .. offset + n`.
    pub fn points(n: u32, offset: u32) -> SimplicialComplex<u32> {
        SimplicialComplex::from_maximal((offset..offset + n).map(|v| [v]))
    }

    /// The `n`-cycle on `offset .. offset + n`.
    pub fn cycle(n: u32, offset: u32) -> SimplicialComplex<u32> {
        SimplicialComplex::from_maximal((0..n).map(|i| [offset + i, offset + (i + 1) % n]))
    }

    /// Boundary of the cross-polytope on `{0,1} ⋆ {2,3} ⋆ {4,5}`.
    pub fn octahedron() -> SimplicialComplex<u32> {
        let mut faces = Vec::new();
        for x in [0, 1] {
            for y in [2, 3] {
                for z in [4, 5] {
                    faces.push([x, y, z]);
                }
            }
        }
        SimplicialComplex::from_maximal(faces)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    // Oracle for flagness: test every vertex subset of size 3 and 4.
    fn brute_flag(sc: &SimplicialComplex<u32>) -> bool {
        let n = sc.vertex_count() as u32;
        let e = |a: u32, b: u32| sc.contains(&[a.min(b), a.max(b)]);
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if e(a, b) && e(a, c) && e(b, c) {
                        if !sc.contains(&[a, b, c]) {
                            return false;
                        }
                        for d in c + 1..n {
                            if e(a, d) && e(b, d) && e(c, d) && !sc.contains(&[a, b, c, d]) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn triangle_boundary_is_not_flag() {
        let sc = SimplicialComplex::from_maximal([[1u32, 2], [2, 3], [1, 3]]);
        assert_eq!(is_flag(&sc), Verdict::Fail(vec![1, 2, 3]));
    }

    #[test]
    fn hollow_tetrahedron_is_not_flag() {
        let sc = SimplicialComplex::from_maximal([[0u32, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        assert_eq!(is_flag(&sc), Verdict::Fail(vec![0, 1, 2, 3]));
        assert!(!brute_flag(&sc));
    }

    #[test]
    fn join_of_three_four_point_sets() {
        let j = join(&join(&points(4, 0), &points(4, 4)).unwrap(), &points(4, 8)).unwrap();
        assert_eq!(j.f_vector(), vec![12, 48, 64]);
        assert!(is_flag(&j).is_pass());
        assert!(brute_flag(&j));
        assert_eq!(
            is_two_sphere(&j),
            Verdict::Fail(SphereFailure::EdgeDegree {
                edge: [0, 4],
                triangles: 4
            })
        );
    }

    #[test]
    fn octahedron_is_sphere() {
        let o = octahedron();
        assert_eq!(o.f_vector(), vec![6, 12, 8]);
        assert_eq!(euler_characteristic(&o), 2);
        assert!(is_two_sphere(&o).is_pass());
        assert!(is_connected(&o));
        assert!(is_flag(&o).is_pass());
    }

    #[test]
    fn suspension_of_22_cycle() {
        let s = join(&cycle(22, 0), &points(2, 100)).unwrap();
        assert_eq!(s.f_vector(), vec![24, 66, 44]);
        assert!(is_two_sphere(&s).is_pass());
    }

    #[test]
    fn sphere_failures() {
        // Two disjoint octahedra: everything local holds, connectivity fails.
        let o = octahedron();
        let shifted = o.map_labels(|v| v + 10);
        let mut faces: Vec<Vec<u32>> = o.simplex_labels(2);
        faces.extend(shifted.simplex_labels(2));
        let two = SimplicialComplex::from_maximal(faces);
        assert_eq!(
            is_two_sphere(&two),
            Verdict::Fail(SphereFailure::Disconnected)
        );

        // A triangle plus a dangling edge is not pure.
        let t = SimplicialComplex::from_maximal(vec![vec![0u32, 1, 2], vec![2, 3]]);
        assert_eq!(
            is_two_sphere(&t),
            Verdict::Fail(SphereFailure::NotPureTwoDimensional)
        );

        // Torus (7-vertex Möbius–Kantor triangulation): local conditions hold, χ = 0.
        let mut torus = Vec::new();
        for i in 0..7u32 {
            torus.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            torus.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        let torus = SimplicialComplex::from_maximal(torus);
        assert_eq!(torus.f_vector(), vec![7, 21, 14]);
        assert_eq!(
            is_two_sphere(&torus),
            Verdict::Fail(SphereFailure::EulerCharacteristic(0))
        );

        // Two octahedra glued at a vertex: the shared vertex link is two cycles.
        let glued = o.map_labels(|&v| if v == 0 { 0 } else { v + 10 });
        let mut faces: Vec<Vec<u32>> = o.simplex_labels(2);
        faces.extend(glued.simplex_labels(2));
        let wedge = SimplicialComplex::from_maximal(faces);
        assert_eq!(
            is_two_sphere(&wedge),
            Verdict::Fail(SphereFailure::VertexLinkNotCycle { vertex: 0 })
        );
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&cycle(22, 0)), 0);
        assert_eq!(euler_characteristic(&octahedron()), 2);
        assert_eq!(euler_characteristic(&SimplicialComplex::<u32>::empty()), 0);
    }

    #[test]
    fn connectivity() {
        let two = SimplicialComplex::from_maximal([[0u32, 1], [2, 3]]);
        assert!(!is_connected(&two));
        assert!(is_connected(&octahedron()));
        assert!(!is_connected(&SimplicialComplex::<u32>::empty()));
    }

    #[test]
    fn empty_square_detection() {
        let sq = cycle(4, 0);
        assert_eq!(empty_squares(&sq), vec![[0, 1, 2, 3]]);
        // Octahedron: each equator has a diagonal pair that is a non-edge but
        // its 4-cycles have both diagonals missing: 3 equators.
        assert_eq!(empty_squares(&octahedron()).len(), 3);
        // A 4-cycle with one diagonal is not empty.
        let filled = SimplicialComplex::from_maximal([[0u32, 1, 2], [0, 2, 3]]);
        assert!(empty_squares(&filled).is_empty());
        assert!(empty_squares(&cycle(6, 0)).is_empty());
    }

    #[test]
    fn join_counts() {
        let k44 = join(&points(4, 0), &points(4, 4)).unwrap();
        assert_eq!(k44.f_vector(), vec![8, 16]);
        assert!(matches!(
            join(&points(2, 0), &points(2, 1)),
            Err(Error::LabelCollision(_))
        ));
    }

    #[test]
    fn join_is_associative() {
        let (p, q, r) = (cycle(5, 0), points(2, 10), points(3, 20));
        let left = join(&join(&p, &q).unwrap(), &r).unwrap();
        let right = join(&p, &join(&q, &r).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn relabel_isomorphism() {
        let o = octahedron();
        let isolated = points(6, 0);
        let id: BTreeMap<u32, u32> = (0..6).map(|v| (v, v)).collect();
        assert!(!is_isomorphic_relabel(&o, &isolated, &id).unwrap());
        assert!(is_isomorphic_relabel(&o, &o, &id).unwrap());

        // Swapping the two poles of one axis is an automorphism, swapping
        // across axes is too; mapping 0 -> 2 and 2 -> 1 is not.
        let swap: BTreeMap<u32, u32> = [(0, 2), (1, 3), (2, 0), (3, 1), (4, 4), (5, 5)].into();
        assert!(is_isomorphic_relabel(&o, &o, &swap).unwrap());
        let bad: BTreeMap<u32, u32> = [(0, 2), (1, 0), (2, 1), (3, 3), (4, 4), (5, 5)].into();
        assert!(!is_isomorphic_relabel(&o, &o, &bad).unwrap());

        let not_inj: BTreeMap<u32, u32> = (0..6).map(|v| (v, v / 2)).collect();
        assert!(matches!(
            is_isomorphic_relabel(&o, &o, &not_inj),
            Err(Error::NotBijective(_))
        ));
    }

    #[test]
    fn full_subcomplex_of_octahedron() {
        let o = octahedron();
        let sub = o.full_subcomplex(|&v| v != 5);
        assert_eq!(sub.f_vector(), vec![5, 8, 4]);
        let cyc = o.full_subcomplex(|&v| v < 4);
        assert_eq!(cyc.f_vector(), vec![4, 4]);
    }

    #[test]
    fn from_simplices_requires_closure() {
        assert!(SimplicialComplex::from_simplices(vec![vec![0u32, 1]]).is_err());
        let ok = SimplicialComplex::from_simplices(vec![vec![0u32], vec![1], vec![0, 1]]).unwrap();
        assert_eq!(ok.f_vector(), vec![2, 1]);
    }

    #[test]
    fn text_round_trip() {
        let sc = SimplicialComplex::from_maximal(vec![vec![0u32, 1, 2], vec![2, 3], vec![7]]);
        let text = sc.to_text();
        assert_eq!(text, "s 0 1 2\ns 2 3\ns 7\n");
        assert_eq!(SimplicialComplex::<u32>::from_text(&text).unwrap(), sc);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_complex() -> impl Strategy<Value = SimplicialComplex<u32>> {
            prop::collection::vec(prop::collection::btree_set(0u32..9, 1..=4), 0..14)
                .prop_map(SimplicialComplex::from_maximal)
        }

        fn small_complex() -> impl Strategy<Value = SimplicialComplex<u32>> {
            prop::collection::vec(prop::collection::btree_set(0u32..5, 1..=2), 0..4)
                .prop_map(SimplicialComplex::from_maximal)
        }

        proptest! {
            #[test]
            fn downward_closed(sc in arb_complex()) {
                prop_assert!(sc.first_missing_face().is_none());
            }

            #[test]
            fn flag_matches_brute_force(sc in arb_complex()) {
                prop_assert_eq!(is_flag(&sc).is_pass(), brute_flag(&sc));
            }

            #[test]
            fn flag_witness_is_minimal_clique(sc in arb_complex()) {
                if let Verdict::Fail(w) = is_flag(&sc) {
                    prop_assert!(!sc.contains_labels(&w));
                    for skip in 0..w.len() {
                        let face: Vec<u32> = w.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                        prop_assert!(sc.contains_labels(&face));
                    }
                }
            }

            #[test]
            fn join_associative(a in small_complex(), b in small_complex(), c in small_complex()) {
                let b = b.map_labels(|v| v + 100);
                let c = c.map_labels(|v| v + 200);
                let left = join(&join(&a, &b).unwrap(), &c).unwrap();
                let right = join(&a, &join(&b, &c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn text_round_trips(sc in arb_complex()) {
                prop_assert_eq!(SimplicialComplex::<u32>::from_text(&sc.to_text()).unwrap(), sc);
            }
        }
    }
}
