//! Integral simplicial homology through the Smith normal form.
//!
//! Everything here is exact: entries are arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::simplicial::SimplicialComplex;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .map(|r| r.iter().map(|&x| x.into()).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i][j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.entries[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Boundary maps `∂_1, ..., ∂_d` of a complex of dimension `d`; element
/// `k - 1` is `∂_k`, with rows indexed by `(k-1)`-simplices and columns by
/// `k`-simplices, both in lexicographic order.
pub fn boundary_matrices<L: Ord + Clone>(sc: &SimplicialComplex<L>) -> Vec<IntegerMatrix> {
    let Some(dim) = sc.dim() else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(dim);
    for k in 1..=dim {
        let faces: Vec<&[u32]> = sc.simplices(k - 1).collect();
        let mut m = IntegerMatrix::zeros(faces.len(), sc.count(k));
        for (col, s) in sc.simplices(k).enumerate() {
            for skip in 0..s.len() {
                let face: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let row = faces
                    .binary_search(&face.as_slice())
                    .expect("complex is closed under faces");
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                m.set(row, col, BigInt::from(sign));
            }
        }
        out.push(m);
    }
    out
}

/// Invariant factors `d_1 | d_2 | ... | d_r` of `m`, all positive, where `r`
/// is the rank.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = m.entries.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&a, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);

        loop {
            let mut clean = true;
            // Column t.
            let pivot_row: Vec<(usize, BigInt)> = nonzero_row(&a[t], t);
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    for (j, v) in &pivot_row {
                        let d = &q * v;
                        a[i][*j] -= d;
                    }
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            // Row t.
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        if !row[t].is_zero() {
                            let d = &q * &row[t];
                            row[j] -= d;
                        }
                    }
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // A remainder smaller than the pivot survived; promote it.
            let col_best = min_nonzero(&a, t + 1..rows, t..t + 1);
            let row_best = min_nonzero(&a, t..t + 1, t + 1..cols);
            let pick = match (col_best, row_best) {
                (Some(c), Some(r)) => {
                    if a[c.0][c.1].abs() <= a[r.0][r.1].abs() {
                        c
                    } else {
                        r
                    }
                }
                (Some(c), None) => c,
                (None, Some(r)) => r,
                (None, None) => unreachable!("unclean pivot with no remainder"),
            };
            a.swap(t, pick.0);
            swap_cols(&mut a, t, pick.1);
        }
        diag.push(a[t][t].abs());
    }

    // diag(x, y) is equivalent to diag(gcd, lcm).
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            if !(&diag[j] % &diag[i]).is_zero() {
                let g = diag[i].gcd(&diag[j]);
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag
}

fn nonzero_row(row: &[BigInt], from: usize) -> Vec<(usize, BigInt)> {
    row.iter()
        .enumerate()
        .skip(from)
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j, v.clone()))
        .collect()
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

// Smallest nonzero |entry| in the given block; stops early on a unit.
fn min_nonzero(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let one = BigInt::one();
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[i][j];
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if abs == one {
                return Some((i, j));
            }
            if best.as_ref().is_none_or(|(_, b)| abs < *b) {
                best = Some(((i, j), abs));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Reduced integral homology, degrees `0..=dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Torsion coefficients per degree, each dividing the next.
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// True iff the only nonzero group is `Z` in degree `d`.
    pub fn is_homology_sphere_of_dim(&self, d: usize) -> bool {
        self.is_torsion_free()
            && self
                .betti
                .iter()
                .enumerate()
                .all(|(k, &b)| b == usize::from(k == d))
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .betti
            .iter()
            .zip(&self.torsion)
            .map(|(&b, tors)| {
                let mut terms = Vec::new();
                match b {
                    0 => {}
                    1 => terms.push("Z".to_string()),
                    _ => terms.push(format!("Z^{b}")),
                }
                terms.extend(tors.iter().map(|t| format!("Z/{t}")));
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Reduced homology from the ranks and invariant factors of the boundary
/// maps, with the augmentation `C_0 -> Z` as `∂_0`.
pub fn reduced_homology<L: Ord + Clone>(sc: &SimplicialComplex<L>) -> HomologyResult {
    let Some(dim) = sc.dim() else {
        return HomologyResult {
            betti: Vec::new(),
            torsion: Vec::new(),
        };
    };
    let factors: Vec<Vec<BigInt>> = boundary_matrices(sc)
        .iter()
        .map(smith_normal_form)
        .collect();
    // rank[k] = rank of ∂_k, k = 0..=dim+1.
    let mut rank = vec![0usize; dim + 2];
    rank[0] = 1;
    for (k, f) in factors.iter().enumerate() {
        rank[k + 1] = f.len();
    }
    let one = BigInt::one();
    let betti = (0..=dim)
        .map(|k| sc.count(k) - rank[k] - rank[k + 1])
        .collect();
    let torsion = (0..=dim)
        .map(|k| {
            factors
                .get(k)
                .map(|f| f.iter().filter(|d| **d != one).cloned().collect())
                .unwrap_or_default()
        })
        .collect();
    HomologyResult { betti, torsion }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::fixtures::*;
    use crate::simplicial::join;
    use proptest::prelude::*;

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    // Oracle: integer determinant by cofactor expansion.
    fn det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..(1 << n))
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
            .collect()
    }

    // Oracle: gcd of all k×k minors, for every k.
    fn minor_gcds(m: &[Vec<i64>]) -> Vec<i64> {
        let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
        let mut out = Vec::new();
        for k in 1..=r.min(c) {
            let mut g = 0i64;
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let sub: Vec<Vec<i64>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| m[i][j]).collect())
                        .collect();
                    g = g.gcd(&det(&sub));
                }
            }
            if g == 0 {
                break;
            }
            out.push(g);
        }
        out
    }

    #[test]
    fn snf_examples() {
        let id = IntegerMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(smith_normal_form(&id), bigs(&[1, 1, 1]));
        assert!(smith_normal_form(&IntegerMatrix::zeros(3, 4)).is_empty());
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m), bigs(&[2, 4]));
        assert_eq!(minor_gcds(&[vec![2, 4], vec![6, 8]]), vec![2, 8]);
        // diag(2, 3) ~ diag(1, 6).
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m), bigs(&[1, 6]));
        assert!(smith_normal_form(&IntegerMatrix::zeros(0, 5)).is_empty());
    }

    #[test]
    fn single_edge_boundary() {
        let e = SimplicialComplex::from_maximal([[1u32, 2]]);
        let d = boundary_matrices(&e);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0], IntegerMatrix::from_rows(&[vec![-1], vec![1]]));
    }

    #[test]
    fn boundary_ranks() {
        let tri = cycle(3, 0);
        assert_eq!(smith_normal_form(&boundary_matrices(&tri)[0]).len(), 2);
        let d = boundary_matrices(&octahedron());
        assert_eq!(smith_normal_form(&d[0]).len(), 5);
        assert_eq!(smith_normal_form(&d[1]).len(), 7);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let j = join(&join(&points(4, 0), &points(4, 4)).unwrap(), &points(4, 8)).unwrap();
        for sc in [octahedron(), j, cycle(22, 0)] {
            let d = boundary_matrices(&sc);
            for w in d.windows(2) {
                assert!(w[0].mul(&w[1]).is_zero());
            }
        }
    }

    #[test]
    fn homology_fixtures() {
        let o = reduced_homology(&octahedron());
        assert_eq!(o.betti, vec![0, 0, 1]);
        assert!(o.is_homology_sphere_of_dim(2));
        assert_eq!(o.to_string(), "(0, 0, Z)");

        let c = reduced_homology(&cycle(22, 0));
        assert_eq!(c.betti, vec![0, 1]);

        let two_points = reduced_homology(&points(2, 0));
        assert_eq!(two_points.betti, vec![1]);
    }

    #[test]
    fn projective_plane_has_torsion() {
        // 6-vertex RP^2.
        let faces = [
            [0u32, 1, 3],
            [1, 2, 3],
            [0, 2, 4],
            [2, 3, 4],
            [0, 3, 5],
            [3, 4, 5],
            [1, 4, 5],
            [0, 1, 4],
            [1, 2, 5],
            [0, 2, 5],
        ];
        let rp2 = SimplicialComplex::from_maximal(faces);
        let h = reduced_homology(&rp2);
        assert_eq!(h.betti, vec![0, 0, 0]);
        assert_eq!(h.torsion, vec![vec![], bigs(&[2]), vec![]]);
        assert_eq!(h.to_string(), "(0, Z/2, 0)");
    }

    #[test]
    fn joins_of_discrete_sets() {
        for (a, b, c) in [(2u32, 2u32, 2u32), (4, 4, 4), (2, 4, 4)] {
            let j = join(
                &join(&points(a, 0), &points(b, 10)).unwrap(),
                &points(c, 20),
            )
            .unwrap();
            let h = reduced_homology(&j);
            let want = ((a - 1) * (b - 1) * (c - 1)) as usize;
            assert_eq!(h.betti, vec![0, 0, want], "({a},{b},{c})");
            assert!(h.is_torsion_free());
        }
    }

    proptest! {
        #[test]
        fn snf_matches_minor_gcds(
            m in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
                prop::collection::vec(prop::collection::vec(-9i64..=9, c), r)
            })
        ) {
            let im = IntegerMatrix::from_rows(&m);
            let d = smith_normal_form(&im);
            for w in d.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            let gcds = minor_gcds(&m);
            prop_assert_eq!(d.len(), gcds.len());
            let mut prod = BigInt::one();
            for (k, g) in gcds.iter().enumerate() {
                prod *= &d[k];
                prop_assert_eq!(&prod, &BigInt::from(*g));
            }
        }
    }
}
