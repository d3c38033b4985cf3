//! Integer and rational linear algebra on small dense matrices: Smith normal
//! form and presentations of finitely generated abelian quotients of lattices.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += x * self.get(i, j);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: i64) {
        for j in 0..self.cols {
            let v = self.get(src, j);
            self.data[dst * self.cols + j] += c * v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: i64) {
        for i in 0..self.rows {
            let v = self.get(i, src);
            self.data[i * self.cols + dst] += c * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }
}

/// Result of a Smith normal form computation: `left * m * right = diag`.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Nonzero invariant factors, each dividing the next.
    pub factors: Vec<i64>,
    pub left: IMat,
    pub right: IMat,
    pub right_inv: IMat,
    pub diag: IMat,
}

pub fn smith_normal_form(m: &IMat) -> Smith {
    let mut a = m.clone();
    let mut left = IMat::identity(m.rows);
    let mut right = IMat::identity(m.cols);
    let mut right_inv = IMat::identity(m.cols);
    let (nr, nc) = (m.rows, m.cols);
    let mut factors = Vec::new();

    // Column operations on `a` are mirrored on `right` (A·E) and inversely on
    // `right_inv` (E⁻¹·A⁻¹), so right_inv stays the inverse of right.
    let col_swap = |a: &mut IMat, right: &mut IMat, right_inv: &mut IMat, x: usize, y: usize| {
        a.swap_cols(x, y);
        right.swap_cols(x, y);
        right_inv.swap_rows(x, y);
    };
    let col_add = |a: &mut IMat, right: &mut IMat, right_inv: &mut IMat, dst: usize, src: usize, c: i64| {
        a.add_col(dst, src, c);
        right.add_col(dst, src, c);
        right_inv.add_row(src, dst, -c);
    };

    for t in 0..nr.min(nc) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                let v = a.get(i, j).abs();
                if v != 0 && best.is_none_or(|(bi, bj)| v < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        col_swap(&mut a, &mut right, &mut right_inv, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                let q = a.get(i, t).div_euclid(a.get(t, t));
                if q != 0 {
                    a.add_row(i, t, -q);
                    left.add_row(i, t, -q);
                }
                if a.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                let q = a.get(t, j).div_euclid(a.get(t, t));
                if q != 0 {
                    col_add(&mut a, &mut right, &mut right_inv, j, t, -q);
                }
                if a.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block
                let p = a.get(t, t);
                let mut bad = None;
                'scan: for i in t + 1..nr {
                    for j in t + 1..nc {
                        if a.get(i, j) % p != 0 {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        a.add_row(t, i, 1);
                        left.add_row(t, i, 1);
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t..nr {
                let v = a.get(i, t).abs();
                if v != 0 && v < a.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t..nc {
                let v = a.get(t, j).abs();
                if v != 0 && v < a.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap_rows(t, best.0);
                left.swap_rows(t, best.0);
            } else if best.1 != t {
                col_swap(&mut a, &mut right, &mut right_inv, t, best.1);
            }
        }
        if a.get(t, t) < 0 {
            a.negate_row(t);
            left.negate_row(t);
        }
        factors.push(a.get(t, t));
    }
    Smith { factors, left, right, right_inv, diag: a }
}

/// Dense row-major rational matrix, used only for inverting lattice bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    pub n: usize,
    pub data: Vec<Rational64>,
}

impl QMat {
    pub fn from_int(m: &IMat) -> Self {
        assert_eq!(m.rows, m.cols);
        QMat { n: m.rows, data: m.data.iter().map(|&x| Rational64::from_integer(x)).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational64 {
        self.data[i * self.n + j]
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<QMat> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = vec![Rational64::zero(); n * n];
        for i in 0..n {
            inv[i * n + i] = Rational64::one();
        }
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r * n + c].is_zero())?;
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                    inv.swap(p * n + j, c * n + j);
                }
            }
            let piv = a[c * n + c];
            for j in 0..n {
                a[c * n + j] /= piv;
                inv[c * n + j] /= piv;
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a[r * n + c];
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (x, y) = (a[c * n + j], inv[c * n + j]);
                    a[r * n + j] -= f * x;
                    inv[r * n + j] -= f * y;
                }
            }
        }
        Some(QMat { n, data: inv })
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Rational64]) -> Vec<Rational64> {
        let mut out = vec![Rational64::zero(); self.n];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += *x * self.get(i, j);
            }
        }
        out
    }
}

/// A full-rank lattice `L ⊂ ℤ^n` given by a basis (rows), with coordinate
/// conversion.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub basis: IMat,
    basis_inv: QMat,
}

impl Lattice {
    pub fn new(basis: IMat) -> Option<Self> {
        if basis.rows != basis.cols {
            return None;
        }
        let basis_inv = QMat::from_int(&basis).inverse()?;
        Some(Lattice { basis, basis_inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Coordinates of `v` in the lattice basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let q: Vec<Rational64> = v.iter().map(|&x| Rational64::from_integer(x)).collect();
        self.basis_inv
            .left_apply(&q)
            .into_iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coords(v).is_some()
    }

    pub fn from_coords(&self, x: &[i64]) -> Vec<i64> {
        self.basis.left_apply(x)
    }
}

/// Presentation `L / M ≅ ⊕ ℤ/dᵢ ⊕ ℤ^f` of the quotient of a lattice by a
/// sublattice spanned by given generators.
#[derive(Debug, Clone)]
pub struct AbelianQuotient {
    lattice: Lattice,
    /// Invariant factors > 1, in divisibility order.
    pub torsion: Vec<i64>,
    pub free_rank: usize,
    right: IMat,
    right_inv: IMat,
    /// SNF column index for each output coordinate.
    kept: Vec<usize>,
}

impl AbelianQuotient {
    /// `generators` are ambient vectors lying in `lattice`.
    pub fn new(lattice: &Lattice, generators: &[Vec<i64>]) -> Option<Self> {
        let n = lattice.dim();
        let rows: Vec<Vec<i64>> = generators
            .iter()
            .map(|g| lattice.coords(g))
            .collect::<Option<_>>()?;
        let m = if rows.is_empty() { IMat::zeros(0, n) } else { IMat::from_rows(&rows, n) };
        let snf = smith_normal_form(&m);
        let rank = snf.factors.len();
        let mut torsion = Vec::new();
        let mut kept = Vec::new();
        for (i, &d) in snf.factors.iter().enumerate() {
            if d > 1 {
                torsion.push(d);
                kept.push(i);
            }
        }
        kept.extend(rank..n);
        Some(AbelianQuotient {
            lattice: lattice.clone(),
            torsion,
            free_rank: n - rank,
            right: snf.right,
            right_inv: snf.right_inv,
            kept,
        })
    }

    pub fn ngens(&self) -> usize {
        self.kept.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<i64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Normalizes raw coordinates: torsion entries reduced into `[0, d)`.
    pub fn normalize(&self, mut c: Vec<i64>) -> Vec<i64> {
        for (x, &d) in c.iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(d);
        }
        c
    }

    /// Class of an ambient lattice vector.
    pub fn project(&self, v: &[i64]) -> Option<Vec<i64>> {
        let x = self.lattice.coords(v)?;
        let y = self.right.left_apply(&x);
        Some(self.normalize(self.kept.iter().map(|&k| y[k]).collect()))
    }

    /// An ambient lattice vector in the given class.
    pub fn lift(&self, c: &[i64]) -> Vec<i64> {
        let mut y = vec![0; self.lattice.dim()];
        for (&k, &v) in self.kept.iter().zip(c) {
            y[k] = v;
        }
        let x = self.right_inv.left_apply(&y);
        self.lattice.from_coords(&x)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.normalize(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        self.normalize(a.iter().map(|x| -x).collect())
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.ngens()]
    }

    /// Coordinates of the i-th generator.
    pub fn generator(&self, i: usize) -> Vec<i64> {
        let mut c = self.zero();
        c[i] = 1;
        c
    }

    /// All elements of the torsion subgroup, in lexicographic coordinate order.
    pub fn torsion_elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![self.zero()];
        for (i, &d) in self.torsion.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for base in &out {
                for k in 0..d {
                    let mut c = base.clone();
                    c[i] = k;
                    next.push(c);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

pub fn rational_vec(v: &[i64]) -> Vec<Rational64> {
    v.iter().map(|&x| Rational64::from_integer(x)).collect()
}

pub fn is_nonneg(v: &[Rational64]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_check(m: &IMat) {
        let s = smith_normal_form(m);
        assert_eq!(s.left.mul(m).mul(&s.right), s.diag);
        assert_eq!(s.right.mul(&s.right_inv), IMat::identity(m.cols));
        for w in s.factors.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for i in 0..s.diag.rows {
            for j in 0..s.diag.cols {
                if i != j {
                    assert_eq!(s.diag.get(i, j), 0);
                }
            }
        }
    }

    #[test]
    fn snf_of_a1_coroot_in_coweights() {
        let m = IMat::from_rows(&[vec![2]], 1);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![2]);
    }

    #[test]
    fn snf_of_a2_cartan() {
        let m = IMat::from_rows(&[vec![2, -1], vec![-1, 2]], 2);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![1, 3]);
        diag_check(&m);
    }

    #[test]
    fn snf_rank_deficient() {
        let m = IMat::from_rows(&[vec![2, 4], vec![1, 2], vec![0, 0]], 2);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![1]);
        diag_check(&m);
    }

    #[test]
    fn quotient_of_coweights_by_a1_coroots() {
        let lat = Lattice::new(IMat::identity(1)).unwrap();
        let q = AbelianQuotient::new(&lat, &[vec![2]]).unwrap();
        assert_eq!(q.torsion, vec![2]);
        assert_eq!(q.project(&[1]), Some(vec![1]));
        assert_eq!(q.project(&[2]), Some(vec![0]));
        assert_eq!(q.project(&[-3]), Some(vec![1]));
        assert_eq!(q.project(&q.lift(&[1])), Some(vec![1]));
    }

    #[test]
    fn quotient_with_free_part() {
        // ℤ² modulo ⟨(2, 0)⟩ ≅ ℤ/2 ⊕ ℤ
        let lat = Lattice::new(IMat::identity(2)).unwrap();
        let q = AbelianQuotient::new(&lat, &[vec![2, 0]]).unwrap();
        assert_eq!(q.torsion, vec![2]);
        assert_eq!(q.free_rank, 1);
        assert!(!q.is_finite());
        assert_eq!(q.project(&[2, 0]), Some(vec![0, 0]));
    }

    #[test]
    fn lattice_membership() {
        let lat = Lattice::new(IMat::from_rows(&[vec![2, -1], vec![-1, 2]], 2)).unwrap();
        assert!(lat.contains(&[1, 1]));
        assert!(!lat.contains(&[1, 0]));
        assert!(Lattice::new(IMat::from_rows(&[vec![1, 2], vec![2, 4]], 2)).is_none());
    }

    proptest! {
        #[test]
        fn snf_diagonalizes(entries in proptest::collection::vec(-6i64..6, 12)) {
            let m = IMat { rows: 3, cols: 4, data: entries };
            diag_check(&m);
        }

        #[test]
        fn projection_kills_generators(entries in proptest::collection::vec(-5i64..5, 6), v in proptest::collection::vec(-9i64..9, 3)) {
            let lat = Lattice::new(IMat::identity(3)).unwrap();
            let gens = vec![entries[0..3].to_vec(), entries[3..6].to_vec()];
            let q = AbelianQuotient::new(&lat, &gens).unwrap();
            for g in &gens {
                prop_assert_eq!(q.project(g).unwrap(), q.zero());
            }
            let pv = q.project(&v).unwrap();
            let shifted: Vec<i64> = v.iter().zip(&gens[0]).map(|(a, b)| a + 3 * b).collect();
            prop_assert_eq!(q.project(&shifted).unwrap(), pv.clone());
            prop_assert_eq!(q.project(&q.lift(&pv)).unwrap(), pv);
        }
    }
}
