//! The 4-partite modular graph Γ(p) and its cycle structure.
//!
//! Vertices are `a_i^±` and `b_j^±` for `i, j` in `Z/p`. Three edge families
//! join them:
//!
//! * `E1`: `a_i^s ~ b_j^s` when `j - i` is an `e1` offset (same sign),
//! * `E2`: `a_i^+ ~ b_j^-` when `j - i` is an `e2` offset,
//! * `E3`: `a_i^- ~ b_j^+` when `j - i` is an `e3` offset.
//!
//! With the default offsets `{0,1}`, `{3,5}`, `{0,2}` and `p = 11` the graph
//! is 4-regular, bipartite between the `a` and `b` families, and has girth 6.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A vertex `a_i^±` or `b_j^±`; `index` is always reduced mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaVertex {
    pub family: Family,
    pub sign: Sign,
    pub index: u32,
}

impl GammaVertex {
    pub fn new(family: Family, sign: Sign, index: u32) -> Self {
        GammaVertex {
            family,
            sign,
            index,
        }
    }

    pub fn a(sign: Sign, index: u32) -> Self {
        Self::new(Family::A, sign, index)
    }

    pub fn b(sign: Sign, index: u32) -> Self {
        Self::new(Family::B, sign, index)
    }
}

impl fmt::Display for GammaVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => 'A',
            Family::B => 'B',
        };
        write!(f, "{}{}{}", fam, self.sign.symbol(), self.index)
    }
}

impl FromStr for GammaVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad gamma vertex token `{s}`"));
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            _ => return Err(bad()),
        };
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(bad()),
        };
        let index = chars.as_str().parse::<u32>().map_err(|_| bad())?;
        Ok(GammaVertex::new(family, sign, index))
    }
}

/// Offsets `j - i (mod p)` defining the three edge families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OffsetScheme {
    pub e1: [u32; 2],
    pub e2: [u32; 2],
    pub e3: [u32; 2],
}

impl Default for OffsetScheme {
    fn default() -> Self {
        OffsetScheme {
            e1: [0, 1],
            e2: [3, 5],
            e3: [0, 2],
        }
    }
}

impl OffsetScheme {
    pub fn new(e1: [u32; 2], e2: [u32; 2], e3: [u32; 2]) -> Self {
        OffsetScheme { e1, e2, e3 }
    }

    /// Reduces every offset mod `p` and sorts each pair.
    pub fn reduced(&self, p: u32) -> Self {
        let red = |pair: [u32; 2]| {
            let mut r = [pair[0] % p, pair[1] % p];
            r.sort_unstable();
            r
        };
        OffsetScheme {
            e1: red(self.e1),
            e2: red(self.e2),
            e3: red(self.e3),
        }
    }
}

impl fmt::Display for OffsetScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "e1={},{} e2={},{} e3={},{}",
            self.e1[0], self.e1[1], self.e2[0], self.e2[1], self.e3[0], self.e3[1]
        )
    }
}

/// Γ(p; scheme). Vertices are numbered densely: family A before B, plus
/// before minus, then by index, which matches the derived `Ord` on
/// [`GammaVertex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    p: u32,
    scheme: OffsetScheme,
    adjacency: Vec<Vec<u32>>,
}

pub fn build_gamma(p: u32, scheme: OffsetScheme) -> Result<Gamma> {
    if p < 3 {
        return Err(Error::InvalidModulus(p));
    }
    let scheme = scheme.reduced(p);
    for (name, pair) in [("e1", scheme.e1), ("e2", scheme.e2), ("e3", scheme.e3)] {
        if pair[0] == pair[1] {
            return Err(Error::DuplicateOffset {
                set: name,
                offset: pair[0],
                p,
            });
        }
    }

    let mut g = Gamma {
        p,
        scheme,
        adjacency: vec![Vec::new(); 4 * p as usize],
    };
    for i in 0..p {
        for s in Sign::BOTH {
            for off in scheme.e1 {
                g.add_edge(GammaVertex::a(s, i), GammaVertex::b(s, (i + off) % p));
            }
        }
        for off in scheme.e2 {
            g.add_edge(
                GammaVertex::a(Sign::Plus, i),
                GammaVertex::b(Sign::Minus, (i + off) % p),
            );
        }
        for off in scheme.e3 {
            g.add_edge(
                GammaVertex::a(Sign::Minus, i),
                GammaVertex::b(Sign::Plus, (i + off) % p),
            );
        }
    }
    for nbrs in &mut g.adjacency {
        nbrs.sort_unstable();
    }
    Ok(g)
}

impl Gamma {
    fn add_edge(&mut self, a: GammaVertex, b: GammaVertex) {
        let (x, y) = (self.id(a), self.id(b));
        self.adjacency[x as usize].push(y);
        self.adjacency[y as usize].push(x);
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn scheme(&self) -> OffsetScheme {
        self.scheme
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn id(&self, v: GammaVertex) -> u32 {
        let fam = match v.family {
            Family::A => 0,
            Family::B => 2,
        };
        let sign = match v.sign {
            Sign::Plus => 0,
            Sign::Minus => 1,
        };
        (fam + sign) * self.p + v.index % self.p
    }

    pub fn vertex(&self, id: u32) -> GammaVertex {
        let block = id / self.p;
        let family = if block < 2 { Family::A } else { Family::B };
        let sign = if block.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        GammaVertex::new(family, sign, id % self.p)
    }

    pub fn vertices(&self) -> impl Iterator<Item = GammaVertex> + '_ {
        (0..self.vertex_count() as u32).map(|i| self.vertex(i))
    }

    pub fn neighbors(&self, v: GammaVertex) -> impl Iterator<Item = GammaVertex> + '_ {
        self.adjacency[self.id(v) as usize]
            .iter()
            .map(|&w| self.vertex(w))
    }

    pub(crate) fn neighbor_ids(&self, id: u32) -> &[u32] {
        &self.adjacency[id as usize]
    }

    pub fn degree(&self, v: GammaVertex) -> usize {
        self.adjacency[self.id(v) as usize].len()
    }

    pub fn has_edge(&self, u: GammaVertex, v: GammaVertex) -> bool {
        if u.index >= self.p || v.index >= self.p {
            return false;
        }
        self.adjacency[self.id(u) as usize]
            .binary_search(&self.id(v))
            .is_ok()
    }

    /// Every edge once, as `(a-side, b-side)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(GammaVertex, GammaVertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (x, nbrs) in self.adjacency.iter().enumerate() {
            for &y in nbrs {
                if (x as u32) < y {
                    out.push((self.vertex(x as u32), self.vertex(y)));
                }
            }
        }
        out
    }

    /// Γ as a 1-dimensional simplicial complex.
    pub fn to_complex(&self) -> SimplicialComplex<GammaVertex> {
        SimplicialComplex::from_maximal(self.edges().into_iter().map(|(a, b)| [a, b]))
    }

    /// Line-oriented edge list: a header, then one `A+i B-j` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("gamma p={} {}\n", self.p, self.scheme);
        for (a, b) in self.edges() {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }

    /// Parses [`Gamma::to_edge_list`] output. The edge lines must agree with
    /// the graph the header describes.
    pub fn from_edge_list(text: &str) -> Result<Gamma> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty gamma file".into()))?;
        let (p, scheme) = parse_gamma_header(header)?;
        let g = build_gamma(p, scheme)?;
        let mut seen = Vec::new();
        for line in lines {
            let mut toks = line.split_whitespace();
            let (Some(x), Some(y), None) = (toks.next(), toks.next(), toks.next()) else {
                return Err(Error::Parse(format!("bad edge line `{line}`")));
            };
            let (x, y): (GammaVertex, GammaVertex) = (x.parse()?, y.parse()?);
            if !g.has_edge(x, y) {
                return Err(Error::Parse(format!(
                    "edge {x} {y} is not an edge of gamma p={p} {scheme}"
                )));
            }
            seen.push(if x < y { (x, y) } else { (y, x) });
        }
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != g.edge_count() {
            return Err(Error::Parse(format!(
                "edge list has {} distinct edges, expected {}",
                seen.len(),
                g.edge_count()
            )));
        }
        Ok(g)
    }
}

fn parse_gamma_header(line: &str) -> Result<(u32, OffsetScheme)> {
    let bad = || Error::Parse(format!("bad gamma header `{line}`"));
    let mut toks = line.split_whitespace();
    if toks.next() != Some("gamma") {
        return Err(bad());
    }
    let mut p = None;
    let mut sets = [None; 3];
    for tok in toks {
        let (key, val) = tok.split_once('=').ok_or_else(bad)?;
        match key {
            "p" => p = Some(val.parse::<u32>().map_err(|_| bad())?),
            "e1" | "e2" | "e3" => {
                let (x, y) = val.split_once(',').ok_or_else(bad)?;
                let pair = [
                    x.parse::<u32>().map_err(|_| bad())?,
                    y.parse::<u32>().map_err(|_| bad())?,
                ];
                sets[(key.as_bytes()[1] - b'1') as usize] = Some(pair);
            }
            _ => return Err(bad()),
        }
    }
    match (p, sets) {
        (Some(p), [Some(e1), Some(e2), Some(e3)]) => Ok((p, OffsetScheme::new(e1, e2, e3))),
        _ => Err(bad()),
    }
}

/// A simple cycle, canonicalized: it starts at its least vertex and the
/// second vertex is less than the last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleWitness {
    pub vertices: Vec<GammaVertex>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Canonical form of any rotation or reflection of a cycle.
    pub fn canonical(mut vertices: Vec<GammaVertex>) -> Self {
        if let Some((pos, _)) = vertices.iter().enumerate().min_by_key(|(_, v)| **v) {
            vertices.rotate_left(pos);
        }
        let n = vertices.len();
        if n > 2 && vertices[n - 1] < vertices[1] {
            vertices[1..].reverse();
        }
        CycleWitness { vertices }
    }

    /// Consecutive vertices adjacent, wrap-around adjacent, all distinct.
    pub fn is_valid_in(&self, g: &Gamma) -> bool {
        let n = self.vertices.len();
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        n >= 3
            && sorted.len() == n
            && (0..n).all(|i| g.has_edge(self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Every simple cycle of length `3..=max_len`, each exactly once, sorted.
/// An empty result certifies girth greater than `max_len`.
pub fn find_short_cycles(g: &Gamma, max_len: usize) -> Result<Vec<CycleWitness>> {
    if !(3..=6).contains(&max_len) {
        return Err(Error::CycleBound(max_len));
    }
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(max_len);
    for start in 0..g.vertex_count() as u32 {
        path.clear();
        path.push(start);
        extend_cycles(g, max_len, &mut path, &mut out);
    }
    out.sort();
    Ok(out)
}

// DFS over paths whose vertices all exceed path[0]; a cycle is reported once
// its closing edge returns to path[0] and the second vertex precedes the last.
fn extend_cycles(g: &Gamma, max_len: usize, path: &mut Vec<u32>, out: &mut Vec<CycleWitness>) {
    let start = path[0];
    let last = *path.last().unwrap();
    for &next in g.neighbor_ids(last) {
        if next == start {
            if path.len() >= 3 && path[1] < last {
                out.push(CycleWitness {
                    vertices: path.iter().map(|&i| g.vertex(i)).collect(),
                });
            }
            continue;
        }
        if next < start || path.contains(&next) || path.len() == max_len {
            continue;
        }
        path.push(next);
        extend_cycles(g, max_len, path, out);
        path.pop();
    }
}

/// The five shapes a 4-cycle of Γ can take, by the sign classes it visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FourCycleCase {
    /// Inside `A+ ∪ A- ∪ B-`.
    APlusAMinusBMinus,
    /// Inside `A+ ∪ A- ∪ B+`.
    APlusAMinusBPlus,
    /// Inside `B+ ∪ B- ∪ A-`.
    BPlusBMinusAMinus,
    /// Inside `B+ ∪ B- ∪ A+`.
    BPlusBMinusAPlus,
    /// Meets all four classes.
    AllFour,
    /// Visits only one sign class per family; cannot occur for a 4-cycle
    /// unless a same-sign quadrant itself contains a 4-cycle.
    SingleQuadrant,
}

pub fn classify_four_cycle(c: &CycleWitness) -> FourCycleCase {
    let has = |f: Family, s: Sign| c.vertices.iter().any(|v| v.family == f && v.sign == s);
    let (ap, am) = (has(Family::A, Sign::Plus), has(Family::A, Sign::Minus));
    let (bp, bm) = (has(Family::B, Sign::Plus), has(Family::B, Sign::Minus));
    match (ap && am, bp && bm) {
        (true, true) => FourCycleCase::AllFour,
        (true, false) if bm => FourCycleCase::APlusAMinusBMinus,
        (true, false) => FourCycleCase::APlusAMinusBPlus,
        (false, true) if am => FourCycleCase::BPlusBMinusAMinus,
        (false, true) => FourCycleCase::BPlusBMinusAPlus,
        (false, false) => FourCycleCase::SingleQuadrant,
    }
}

/// Outcome for one `A_s ∪ B_t` quadrant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrantCheck {
    pub a_sign: Sign,
    pub b_sign: Sign,
    pub edges: usize,
    /// Length of the component through the quadrant's first vertex.
    pub component_len: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCycleReport {
    /// Edges inside `A+ ∪ A-` and inside `B+ ∪ B-`.
    pub same_family_edges: [usize; 2],
    pub quadrants: Vec<QuadrantCheck>,
}

impl SignCycleReport {
    pub fn pass(&self) -> bool {
        self.same_family_edges == [0, 0] && self.quadrants.iter().all(|q| q.pass)
    }
}

/// Checks that `A+ ∪ A-` and `B+ ∪ B-` are edgeless and that each of the four
/// quadrants `A_s ∪ B_t` induces a single cycle of length `2p`.
pub fn check_sign_cycles(g: &Gamma) -> SignCycleReport {
    let mut same = [0usize; 2];
    for (x, y) in g.edges() {
        if x.family == y.family {
            same[if x.family == Family::A { 0 } else { 1 }] += 1;
        }
    }

    let mut quadrants = Vec::with_capacity(4);
    for s in Sign::BOTH {
        for t in Sign::BOTH {
            quadrants.push(check_quadrant(g, s, t));
        }
    }
    SignCycleReport {
        same_family_edges: same,
        quadrants,
    }
}

fn check_quadrant(g: &Gamma, s: Sign, t: Sign) -> QuadrantCheck {
    let inside = |v: GammaVertex| match v.family {
        Family::A => v.sign == s,
        Family::B => v.sign == t,
    };
    let nbrs =
        |v: GammaVertex| -> Vec<GammaVertex> { g.neighbors(v).filter(|&w| inside(w)).collect() };
    let members: Vec<GammaVertex> = g.vertices().filter(|&v| inside(v)).collect();
    let edges = members.iter().map(|&v| nbrs(v).len()).sum::<usize>() / 2;

    let mut witness = None;
    if let Some(&bad) = members.iter().find(|&&v| nbrs(v).len() != 2) {
        witness = Some(format!(
            "vertex {bad} has quadrant degree {}",
            nbrs(bad).len()
        ));
    }

    // Walk the component through the first member.
    let mut component_len = 0;
    if witness.is_none() {
        let start = members[0];
        let mut prev = start;
        let mut cur = nbrs(start)[0];
        let mut walk = vec![start];
        while cur != start {
            walk.push(cur);
            let n = nbrs(cur);
            let next = if n[0] == prev { n[1] } else { n[0] };
            prev = cur;
            cur = next;
        }
        component_len = walk.len();
        if component_len != members.len() {
            witness = Some(format!(
                "component of length {component_len}: {}",
                CycleWitness::canonical(walk)
            ));
        }
    }

    QuadrantCheck {
        a_sign: s,
        b_sign: t,
        edges,
        component_len,
        pass: witness.is_none(),
        witness,
    }
}

/// Degree of every vertex equals 4.
pub fn degree_violations(g: &Gamma) -> Vec<(GammaVertex, usize)> {
    g.vertices()
        .map(|v| (v, g.degree(v)))
        .filter(|&(_, d)| d != 4)
        .collect()
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    (2..)
        .take_while(|d| d * d <= n)
        .all(|d| !n.is_multiple_of(d))
}
