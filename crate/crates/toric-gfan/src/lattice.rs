//! Exact integer linear algebra: Hermite normal form, saturated kernel
//! lattices and lattice indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

/// A lattice vector with arbitrary-precision integer coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatVec(pub Vec<Int>);

impl LatVec {
    pub fn zero(n: usize) -> Self {
        LatVec(vec![Int::zero(); n])
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatVec(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &LatVec) -> Int {
        assert_eq!(self.len(), other.len(), "dot: length mismatch");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &LatVec) -> LatVec {
        LatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatVec) -> LatVec {
        LatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatVec {
        LatVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> LatVec {
        LatVec(self.0.iter().map(|a| a * k).collect())
    }

    /// Divides out the gcd of the coordinates, keeping the direction.
    /// The zero vector is returned unchanged.
    pub fn primitive(&self) -> LatVec {
        let g = self
            .0
            .iter()
            .fold(Int::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatVec(self.0.iter().map(|c| c / &g).collect())
    }
}

impl std::fmt::Debug for LatVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[LatVec]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = Self::zero(r, c);
        for (i, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), c, "from_rows: ragged input");
            for (j, x) in v.0.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_cols(cols: &[LatVec]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let vs: Vec<LatVec> = rows.iter().map(|r| LatVec::from_i64(r)).collect();
        Self::from_rows(&vs)
    }

    pub fn row(&self, i: usize) -> LatVec {
        LatVec(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> LatVec {
        LatVec((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "mul: dimension mismatch");
        let mut m = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Int::zero();
                for k in 0..self.cols {
                    s += &self[(i, k)] * &other[(k, j)];
                }
                m[(i, j)] = s;
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &LatVec) -> LatVec {
        assert_eq!(self.cols, v.len(), "mul_vec: dimension mismatch");
        LatVec(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| &self[(i, j)] * &v.0[j])
                        .sum()
                })
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.data.swap(a * c + j, b * c + j);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square matrices only.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det: not square");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Int::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hnf(self);
        (0..h.rows).filter(|&i| !h.row(i).is_zero()).count()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Row Hermite normal form. Returns `(H, U)` with `U` unimodular and
/// `U * A = H`: row echelon, positive pivots, entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // clear below pivot_row in this column by gcd row operations
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..h.rows {
                if !h[(i, col)].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if h[(i, col)].abs() < h[(b, col)].abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..h.rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = div_floor_int(&h[(i, col)], &h[(pivot_row, col)]);
                row_sub_mul(&mut h, i, pivot_row, &q);
                row_sub_mul(&mut u, i, pivot_row, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            row_negate(&mut h, pivot_row);
            row_negate(&mut u, pivot_row);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..pivot_row {
            let q = div_floor_int(&h[(i, col)], &h[(pivot_row, col)]);
            if !q.is_zero() {
                row_sub_mul(&mut h, i, pivot_row, &q);
                row_sub_mul(&mut u, i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

fn div_floor_int(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

fn row_sub_mul(m: &mut IntMatrix, i: usize, j: usize, q: &Int) {
    for k in 0..m.cols {
        let v = &m[(i, k)] - q * &m[(j, k)];
        m[(i, k)] = v;
    }
}

fn row_negate(m: &mut IntMatrix, i: usize) {
    for k in 0..m.cols {
        let v = -m[(i, k)].clone();
        m[(i, k)] = v;
    }
}

/// Basis of the saturated kernel lattice `{x in Z^cols : A x = 0}`.
///
/// The span of the returned vectors is the full lattice kernel, so the
/// quotient of `Z^cols` by it is torsion-free.
pub fn kernel_basis(a: &IntMatrix) -> Vec<LatVec> {
    let at = a.transpose();
    let (h, u) = hnf(&at);
    let mut out = Vec::new();
    for i in 0..h.rows {
        if h.row(i).is_zero() {
            out.push(u.row(i));
        }
    }
    out
}

/// Index of the sublattice spanned by linearly independent `rays` inside
/// its saturation: the gcd of all maximal minors. Equals 1 exactly when
/// the rays extend to a lattice basis.
pub fn cone_index(rays: &[LatVec]) -> Result<Int, String> {
    if rays.is_empty() {
        return Ok(Int::one());
    }
    let d = rays.len();
    let n = rays[0].len();
    let m = IntMatrix::from_rows(rays);
    if m.rank() != d {
        return Err("cone_index: rays are linearly dependent".into());
    }
    let mut g = Int::zero();
    for cols in subsets_of_size(n, d) {
        let mut sub = IntMatrix::zero(d, d);
        for (i, ray) in rays.iter().enumerate() {
            for (jj, &j) in cols.iter().enumerate() {
                sub[(i, jj)] = ray.0[j].clone();
            }
        }
        g = g.gcd(&sub.det());
    }
    Ok(g)
}

/// All size-`k` subsets of `0..n`, lexicographic.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Solves `B x = w` for rational x cleared to an integer solution of
/// `B x = d w` returned as `(x, d)` with `d > 0`, or None if inconsistent.
/// `B` need not be square.
pub fn solve_scaled(b: &IntMatrix, w: &LatVec) -> Option<(LatVec, Int)> {
    // augmented HNF elimination over Q via fraction-free Gauss
    let rows = b.rows;
    let cols = b.cols;
    assert_eq!(w.len(), rows);
    // Build augmented rational system and do exact Gaussian elimination
    // with BigRational-free arithmetic: track numerator matrix and a common
    // denominator per row.
    use num_rational::BigRational;
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| BigRational::from(b[(i, j)].clone()))
                .chain(std::iter::once(BigRational::from(w.0[i].clone())))
                .collect()
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pr = 0;
    for pc in 0..cols {
        let Some(sel) = (pr..rows).find(|&i| !m[i][pc].is_zero()) else {
            continue;
        };
        m.swap(pr, sel);
        let inv = m[pr][pc].recip();
        for j in pc..=cols {
            let v = &m[pr][j] * &inv;
            m[pr][j] = v;
        }
        for i in 0..rows {
            if i != pr && !m[i][pc].is_zero() {
                let f = m[i][pc].clone();
                for j in pc..=cols {
                    let v = &m[i][j] - &f * &m[pr][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push((pr, pc));
        pr += 1;
        if pr == rows {
            break;
        }
    }
    // consistency: rows with zero coefficients must have zero rhs
    for i in pr..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::from(Int::zero()); cols];
    for &(r, c) in &pivots {
        x[c] = m[r][cols].clone();
    }
    // clear denominators
    let mut d = Int::one();
    for xi in &x {
        d = d.lcm(xi.denom());
    }
    let xi: Vec<Int> = x
        .iter()
        .map(|v| (v * BigRational::from(d.clone())).to_integer())
        .collect();
    Some((LatVec(xi), d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hnf_props(a: &IntMatrix) {
        let (h, u) = hnf(a);
        assert_eq!(u.mul(a), h, "U*A != H");
        let det = u.det();
        assert!(det.abs().is_one(), "U not unimodular: det {}", det);
        // echelon, positive pivots, reduced above
        let mut last_pivot: Option<usize> = None;
        for i in 0..h.rows {
            let r = h.row(i);
            let p = r.0.iter().position(|c| !c.is_zero());
            match (p, last_pivot) {
                (Some(p), Some(lp)) => assert!(p > lp, "not echelon"),
                (None, _) => {
                    for k in i..h.rows {
                        assert!(h.row(k).is_zero(), "zero rows not at bottom");
                    }
                    break;
                }
                _ => {}
            }
            if let Some(p) = p {
                assert!(h[(i, p)].is_positive(), "pivot not positive");
                for above in 0..i {
                    assert!(
                        !h[(above, p)].is_negative() && h[(above, p)] < h[(i, p)],
                        "entry above pivot not reduced"
                    );
                }
                last_pivot = Some(p);
            }
        }
    }

    #[test]
    fn hnf_identity() {
        let a = IntMatrix::identity(2);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_2x2() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        check_hnf_props(&a);
        let (h, _) = hnf(&a);
        // pivots 1 and 2 on the diagonal
        assert_eq!(h[(0, 0)], Int::from(1));
        assert_eq!(h[(1, 1)], Int::from(2));
        assert_eq!(h[(1, 0)], Int::from(0));
    }

    #[test]
    fn hnf_2x3() {
        let a = IntMatrix::from_i64(&[&[1, 1, 1], &[0, 1, 2]]);
        check_hnf_props(&a);
        let (h, _) = hnf(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 0, -1], &[0, 1, 2]]));
    }

    #[test]
    fn hnf_random_props() {
        // deterministic pseudo-random small matrices
        let mut seed: i64 = 12345;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % 7 - 3
        };
        for _ in 0..50 {
            let rows = 1 + (next().unsigned_abs() as usize % 4);
            let cols = 1 + (next().unsigned_abs() as usize % 4);
            let mut a = IntMatrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    a[(i, j)] = Int::from(next());
                }
            }
            check_hnf_props(&a);
        }
    }

    #[test]
    fn kernel_identity() {
        let a = IntMatrix::identity(3);
        assert!(kernel_basis(&a).is_empty());
    }

    #[test]
    fn kernel_rank_one() {
        let a = IntMatrix::from_i64(&[&[1, 1, 1], &[0, 1, 2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(a.mul_vec(v).is_zero());
        let expect = LatVec::from_i64(&[1, -2, 1]);
        assert!(*v == expect || *v == expect.neg());
    }

    #[test]
    fn kernel_rank_two_saturated() {
        let a = IntMatrix::from_i64(&[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).is_zero());
        }
        // saturation: HNF of the basis matrix has pivots 1
        let m = IntMatrix::from_rows(&k);
        let (h, _) = hnf(&m);
        for i in 0..h.rows {
            let r = h.row(i);
            let p = r.0.iter().position(|c| !c.is_zero()).unwrap();
            assert!(h[(i, p)].is_one(), "kernel basis not saturated");
        }
        // contains the stated vectors
        for target in [
            LatVec::from_i64(&[1, -2, 1, 0]),
            LatVec::from_i64(&[0, 1, -2, 1]),
        ] {
            assert!(a.mul_vec(&target).is_zero());
            // target must be an integer combination of k: solve via HNF membership
            let bm = IntMatrix::from_rows(&k);
            let (x, d) = solve_scaled(&bm.transpose(), &target).expect("in span");
            assert!(d.is_one(), "not an integer combination");
            assert_eq!(bm.transpose().mul_vec(&x), target);
        }
    }

    #[test]
    fn index_examples() {
        let e = |v: &[i64]| LatVec::from_i64(v);
        assert_eq!(cone_index(&[e(&[1, 0]), e(&[0, 1])]).unwrap(), Int::from(1));
        assert_eq!(cone_index(&[e(&[0, 1]), e(&[2, -1])]).unwrap(), Int::from(2));
        assert_eq!(cone_index(&[e(&[1, 0]), e(&[1, 1])]).unwrap(), Int::from(1));
        assert!(cone_index(&[e(&[1, 1]), e(&[2, 2])]).is_err());
    }

    #[test]
    fn index_symmetry() {
        let e = |v: &[i64]| LatVec::from_i64(v);
        let a = e(&[0, 1]);
        let b = e(&[2, -1]);
        let i1 = cone_index(&[a.clone(), b.clone()]).unwrap();
        let i2 = cone_index(&[b.clone(), a.clone()]).unwrap();
        let i3 = cone_index(&[a.neg(), b]).unwrap();
        assert_eq!(i1, i2);
        assert_eq!(i1, i3);
    }
}
