use crate::ffpoly::ExponentVector;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// The Newton region `conv(points) + R_{>=0}^n` of a monomial ideal,
/// described by exact integer facet inequalities `a . v >= b` with
/// `a >= 0` componentwise.
///
/// A lattice point lies in the region iff it satisfies every facet
/// inequality; the region is closed under adding nonnegative vectors
/// because every normal is nonnegative.
#[derive(Debug, Clone)]
pub struct NewtonRegion {
    nvars: usize,
    points: Vec<Vec<i64>>,
    /// Facets as `(normal, rhs)`: the region is `{v : normal.v >= rhs}`.
    facets: Vec<(Vec<i64>, i64)>,
}

impl NewtonRegion {
    pub fn new(nvars: usize, exponents: &[ExponentVector]) -> Self {
        let points: Vec<Vec<i64>> = exponents
            .iter()
            .map(|e| e.0.iter().map(|&x| x as i64).collect())
            .collect();
        let facets = enumerate_facets(nvars, &points);
        NewtonRegion { nvars, points, facets }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn facets(&self) -> &[(Vec<i64>, i64)] {
        &self.facets
    }

    /// Exact membership test for a lattice point.
    pub fn contains(&self, v: &ExponentVector) -> bool {
        if self.points.is_empty() {
            return false;
        }
        debug_assert_eq!(v.len(), self.nvars);
        self.facets.iter().all(|(a, b)| {
            let dot: i64 = a.iter().zip(&v.0).map(|(&ai, &vi)| ai * vi as i64).sum();
            dot >= *b
        })
    }
}

/// Every facet of `conv(P) + orthant` is the affine span of some `k`
/// generator points together with `n - k` coordinate rays, so
/// exhaustively solving all such configurations and keeping the valid
/// supporting hyperplanes yields a complete (possibly redundant)
/// inequality description.
fn enumerate_facets(nvars: usize, points: &[Vec<i64>]) -> Vec<(Vec<i64>, i64)> {
    let n = nvars;
    let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
    if points.is_empty() {
        return out;
    }
    if n == 0 {
        return out;
    }
    let mut point_sets = Vec::new();
    for k in 1..=n.min(points.len()) {
        combinations(points.len(), k, &mut |idx| point_sets.push(idx.to_vec()));
    }
    let mut axis_sets_by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for s in 0..n {
        combinations(n, s, &mut |idx| axis_sets_by_size[s].push(idx.to_vec()));
    }
    for pset in &point_sets {
        let k = pset.len();
        for aset in &axis_sets_by_size[n - k] {
            if let Some((a, b)) = solve_facet(n, points, pset, aset) {
                // Orient so all generator points are on the >= side.
                let sides: Vec<i64> = points
                    .iter()
                    .map(|p| a.iter().zip(p).map(|(&ai, &pi)| ai * pi).sum::<i64>() - b)
                    .collect();
                let (a, b) = if sides.iter().all(|&s| s >= 0) {
                    (a, b)
                } else if sides.iter().all(|&s| s <= 0) {
                    (a.iter().map(|&x| -x).collect(), -b)
                } else {
                    continue;
                };
                if a.iter().any(|&x| x < 0) || a.iter().all(|&x| x == 0) {
                    continue;
                }
                if !out.contains(&(a.clone(), b)) {
                    out.push((a, b));
                }
            }
        }
    }
    out
}

/// Solves for the hyperplane `a . x = b` through the chosen points with
/// `a` vanishing on the chosen axes. Returns `None` unless the solution
/// space is one-dimensional (degenerate configurations are covered by
/// other subsets).
fn solve_facet(
    n: usize,
    points: &[Vec<i64>],
    pset: &[usize],
    aset: &[usize],
) -> Option<(Vec<i64>, i64)> {
    let free: Vec<usize> = (0..n).filter(|j| !aset.contains(j)).collect();
    let k = free.len();
    debug_assert_eq!(k, pset.len());
    // Unknowns: a_j for j in free, then b. Equations: a . p - b = 0.
    let mut mat: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    for &pi in pset {
        let mut row: Vec<BigRational> = free
            .iter()
            .map(|&j| BigRational::from_integer(BigInt::from(points[pi][j])))
            .collect();
        row.push(BigRational::from_integer(BigInt::from(-1)));
        mat.push(row);
    }
    let null = nullspace(mat, k + 1)?;
    // Clear denominators and divide by content.
    let denom_lcm = null
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = null
        .iter()
        .map(|r| r.numer() * (&denom_lcm / r.denom()))
        .collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x.abs()));
    if content.is_zero() {
        return None;
    }
    let ints: Vec<i64> = ints
        .iter()
        .map(|x| i64::try_from(x / &content).ok())
        .collect::<Option<Vec<_>>>()?;
    let mut a = vec![0i64; n];
    for (idx, &j) in free.iter().enumerate() {
        a[j] = ints[idx];
    }
    Some((a, ints[k]))
}

/// One-dimensional nullspace of a `rows x cols` rational matrix, or
/// `None` when the nullity differs from one.
fn nullspace(mut mat: Vec<Vec<BigRational>>, cols: usize) -> Option<Vec<BigRational>> {
    let rows = mat.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pr = (r..rows).find(|&i| !mat[i][c].is_zero());
        let pr = match pr {
            None => continue,
            Some(pr) => pr,
        };
        mat.swap(r, pr);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let s = &mat[r][j] * &f;
                    mat[i][j] -= s;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if cols - pivot_cols.len() != 1 {
        return None;
    }
    let free_col = (0..cols).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut v = vec![BigRational::zero(); cols];
    v[free_col] = BigRational::one();
    for (row, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = -mat[row][free_col].clone();
    }
    Some(v)
}

fn combinations(n: usize, k: usize, emit: &mut impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, idx: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
        if idx.len() == k {
            emit(idx);
            return;
        }
        for i in start..n {
            idx.push(i);
            rec(i + 1, n, k, idx, emit);
            idx.pop();
        }
    }
    rec(0, n, k, &mut idx, emit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn segment_region_in_plane() {
        // (x^3, y^3): region a+b >= 3
        let r = NewtonRegion::new(2, &[ev(&[3, 0]), ev(&[0, 3])]);
        assert!(r.contains(&ev(&[3, 0])));
        assert!(r.contains(&ev(&[2, 1])));
        assert!(r.contains(&ev(&[1, 2])));
        assert!(!r.contains(&ev(&[1, 1])));
        assert!(!r.contains(&ev(&[2, 0])));
        assert!(r.contains(&ev(&[5, 0])));
    }

    #[test]
    fn midpoint_of_squares() {
        // (x^2, y^2): (1,1) is the Newton midpoint
        let r = NewtonRegion::new(2, &[ev(&[2, 0]), ev(&[0, 2])]);
        assert!(r.contains(&ev(&[1, 1])));
        assert!(!r.contains(&ev(&[1, 0])));
    }

    #[test]
    fn single_point_is_translated_orthant() {
        let r = NewtonRegion::new(3, &[ev(&[1, 2, 0])]);
        assert!(r.contains(&ev(&[1, 2, 0])));
        assert!(r.contains(&ev(&[1, 2, 5])));
        assert!(r.contains(&ev(&[2, 2, 0])));
        assert!(!r.contains(&ev(&[0, 2, 0])));
        assert!(!r.contains(&ev(&[1, 1, 9])));
    }

    #[test]
    fn origin_gives_whole_orthant() {
        let r = NewtonRegion::new(2, &[ev(&[0, 0]), ev(&[2, 1])]);
        assert!(r.contains(&ev(&[0, 0])));
        assert!(r.contains(&ev(&[7, 0])));
    }

    #[test]
    fn empty_region() {
        let r = NewtonRegion::new(2, &[]);
        assert!(!r.contains(&ev(&[0, 0])));
        assert!(r.is_empty());
    }

    #[test]
    fn three_variable_region() {
        // (x^2, y^2, z^2): (1,1,0), (1,0,1), (0,1,1) all inside
        let r = NewtonRegion::new(3, &[ev(&[2, 0, 0]), ev(&[0, 2, 0]), ev(&[0, 0, 2])]);
        assert!(r.contains(&ev(&[1, 1, 0])));
        assert!(r.contains(&ev(&[1, 0, 1])));
        assert!(r.contains(&ev(&[0, 1, 1])));
        assert!(!r.contains(&ev(&[1, 0, 0])));
        // (1,1,1) dominates e.g. (1,1,0)
        assert!(r.contains(&ev(&[1, 1, 1])));
    }
}
