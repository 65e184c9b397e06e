//! Dense linear algebra over `F_p` and canonical subspaces.

use std::fmt;

use super::field::PrimeField;

/// Row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(";")?;
            }
            for x in self.row(r) {
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Matrix, f: &PrimeField) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                f.axpy(dst, self.get(r, k), other.row(k));
            }
        }
        out
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[u8], f: &PrimeField) -> Vec<u8> {
        (0..self.rows).map(|r| f.dot(self.row(r), v)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Row-reduces in place to reduced echelon form; returns pivot columns.
    pub fn rref(&mut self, f: &PrimeField) -> Vec<usize> {
        if f.p() == 2 && self.cols > 0 {
            let mut bits = BitMatrix::from_matrix(self);
            let pivots = bits.rref();
            *self = bits.to_matrix();
            return pivots;
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.get(r, c));
            f.scale(&mut self.data[r * cols..(r + 1) * cols], inv);
            let pivot_row = self.row(r).to_vec();
            for i in 0..rows {
                if i != r {
                    let coef = self.get(i, c);
                    if coef != 0 {
                        f.axpy(
                            &mut self.data[i * cols..(i + 1) * cols],
                            f.neg(coef),
                            &pivot_row,
                        );
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self, f: &PrimeField) -> Vec<Vec<u8>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn pow(&self, mut e: usize, f: &PrimeField) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }
}

/// GF(2) matrix with rows packed into 64-bit words.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn from_matrix(m: &Matrix) -> Self {
        let words = m.cols.div_ceil(64);
        let mut data = vec![0u64; m.rows * words];
        for r in 0..m.rows {
            for c in 0..m.cols {
                if m.get(r, c) & 1 == 1 {
                    data[r * words + c / 64] |= 1 << (c % 64);
                }
            }
        }
        BitMatrix {
            rows: m.rows,
            cols: m.cols,
            words,
            data,
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.bit(r, c) as u8);
            }
        }
        m
    }

    #[inline]
    fn bit(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn rref(&mut self) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.bit(i, c)) else {
                continue;
            };
            if pr != r {
                for k in 0..w {
                    self.data.swap(pr * w + k, r * w + k);
                }
            }
            let (head, tail) = self.data.split_at_mut(r * w);
            let (pivot, rest) = tail.split_at_mut(w);
            let (wi, bi) = (c / 64, c % 64);
            for row in head.chunks_exact_mut(w).chain(rest.chunks_exact_mut(w)) {
                if row[wi] >> bi & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(pivot.iter()) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// A subspace of `F_p^m` in canonical form: the nonzero rows of its reduced
/// echelon basis. Two subspaces are equal iff their bases are byte-equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    pivots: Vec<usize>,
    basis: Vec<Vec<u8>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}: {:?})",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            pivots: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            ambient,
            pivots: (0..ambient).collect(),
            basis,
        }
    }

    /// The span of arbitrary vectors.
    pub fn span(ambient: usize, vectors: &[Vec<u8>], f: &PrimeField) -> Self {
        if vectors.is_empty() || ambient == 0 {
            return Subspace::zero(ambient);
        }
        let mut m = Matrix::from_rows(ambient, vectors);
        let pivots = m.rref(f);
        let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Subspace {
            ambient,
            pivots,
            basis,
        }
    }

    /// Trusts that `basis` is already reduced echelon with these pivots.
    fn from_rref(ambient: usize, pivots: Vec<usize>, basis: Vec<Vec<u8>>) -> Self {
        Subspace {
            ambient,
            pivots,
            basis,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Flat byte key, unique per subspace of a fixed ambient space.
    pub fn key(&self) -> Vec<u8> {
        let mut k = Vec::with_capacity(1 + self.dim() * self.ambient);
        k.push(self.dim() as u8);
        for b in &self.basis {
            k.extend_from_slice(b);
        }
        k
    }

    /// `v` minus its component along the basis, read through the pivots.
    pub fn reduce(&self, v: &[u8], f: &PrimeField) -> Vec<u8> {
        let mut w = v.to_vec();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), b);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u8], f: &PrimeField) -> bool {
        self.reduce(v, f).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace, f: &PrimeField) -> bool {
        self.dim() <= other.dim() && self.basis.iter().all(|b| other.contains(b, f))
    }

    /// Coordinates of `v ∈ self` in the canonical basis (the pivot entries).
    pub fn coords(&self, v: &[u8]) -> Vec<u8> {
        self.pivots.iter().map(|&pc| v[pc]).collect()
    }

    /// Columns that are not pivots; they index a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Matrix of `F^m → F^m / self`, in coordinates indexed by the free
    /// columns; its kernel is exactly `self`.
    pub fn quotient_map(&self, f: &PrimeField) -> Matrix {
        let free = self.free_columns();
        let mut m = Matrix::zeros(free.len(), self.ambient);
        for c in 0..self.ambient {
            let mut e = vec![0u8; self.ambient];
            e[c] = 1;
            let red = self.reduce(&e, f);
            for (r, &fc) in free.iter().enumerate() {
                m.set(r, c, red[fc]);
            }
        }
        m
    }

    pub fn intersect(&self, other: &Subspace, f: &PrimeField) -> Subspace {
        // v ∈ self with (quotient by other)(v) = 0
        if self.dim() == 0 {
            return self.clone();
        }
        let q = other.quotient_map(f);
        let b = Matrix::from_rows(self.ambient, &self.basis).transpose();
        let coeffs = q.mul(&b, f).nullspace(f);
        let vectors: Vec<Vec<u8>> = coeffs
            .iter()
            .map(|c| {
                let mut v = vec![0u8; self.ambient];
                for (ci, bi) in c.iter().zip(&self.basis) {
                    f.axpy(&mut v, *ci, bi);
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vectors, f)
    }

    /// Every hyperplane of `self`, one per nonzero functional up to scalars,
    /// in a fixed order.
    pub fn hyperplanes(&self, f: &PrimeField) -> Vec<Subspace> {
        let k = self.dim();
        if k == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        // functionals normalized so that the first nonzero coordinate is 1
        for lead in 0..k {
            let tail = k - lead - 1;
            let count = (f.p() as usize).pow(tail as u32);
            for idx in 0..count {
                let mut func = vec![0u8; k];
                func[lead] = 1;
                let mut rem = idx;
                for slot in func.iter_mut().skip(lead + 1) {
                    *slot = (rem % f.p() as usize) as u8;
                    rem /= f.p() as usize;
                }
                let kernel = Matrix::from_vec(1, k, func).nullspace(f);
                let vectors: Vec<Vec<u8>> = kernel
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u8; self.ambient];
                        for (ci, bi) in c.iter().zip(&self.basis) {
                            f.axpy(&mut v, *ci, bi);
                        }
                        v
                    })
                    .collect();
                out.push(Subspace::span(self.ambient, &vectors, f));
            }
        }
        out
    }
}

/// Number of `k`-dimensional subspaces of `F_q^m`.
pub fn gaussian_binomial(m: usize, k: usize, q: u64) -> u128 {
    if k > m {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow((m - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Total number of subspaces of `F_q^m`.
pub fn subspace_count(m: usize, q: u64) -> u128 {
    (0..=m).map(|k| gaussian_binomial(m, k, q)).sum()
}

/// All `k`-dimensional subspaces of `F_p^m`, in a fixed order: pivot sets in
/// lexicographic order, then free entries counted in base `p`.
pub fn subspaces_of_dim(m: usize, k: usize, f: &PrimeField) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let p = f.p() as usize;
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..m {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let total = p.pow(free.len() as u32);
        for idx in 0..total {
            let mut basis = vec![vec![0u8; m]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                basis[r][pc] = 1;
            }
            let mut rem = idx;
            for &(r, c) in &free {
                basis[r][c] = (rem % p) as u8;
                rem /= p;
            }
            out.push(Subspace::from_rref(m, pivots.clone(), basis));
        }
        // next k-combination of 0..m
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < m - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

/// Every subspace of `ambient` that lies inside `within`, by dimension.
pub fn subspaces_within(within: &Subspace, f: &PrimeField) -> Vec<Subspace> {
    let k = within.dim();
    let mut out = Vec::new();
    for d in 0..=k {
        for coeffs in subspaces_of_dim(k, d, f) {
            let vectors: Vec<Vec<u8>> = coeffs
                .basis()
                .iter()
                .map(|c| {
                    let mut v = vec![0u8; within.ambient()];
                    for (ci, bi) in c.iter().zip(within.basis()) {
                        f.axpy(&mut v, *ci, bi);
                    }
                    v
                })
                .collect();
            out.push(Subspace::span(within.ambient(), &vectors, f));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn gaussian_counts() {
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(subspace_count(3, 2), 16);
        assert_eq!(subspace_count(8, 2), 417_199);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
    }

    #[test]
    fn enumeration_matches_counts() {
        for p in [2u32, 3] {
            let fp = f(p);
            for m in 0..=4 {
                for k in 0..=m {
                    let subs = subspaces_of_dim(m, k, &fp);
                    assert_eq!(subs.len() as u128, gaussian_binomial(m, k, p as u64));
                    let keys: HashSet<_> = subs.iter().map(|s| s.key()).collect();
                    assert_eq!(keys.len(), subs.len());
                    for s in &subs {
                        assert_eq!(&Subspace::span(m, s.basis(), &fp), s);
                    }
                }
            }
        }
    }

    #[test]
    fn hyperplane_counts() {
        let fp = f(3);
        let s = Subspace::full(3);
        let hs = s.hyperplanes(&fp);
        assert_eq!(hs.len(), 13);
        let keys: HashSet<_> = hs.iter().map(|h| h.key()).collect();
        assert_eq!(keys.len(), 13);
        assert!(hs.iter().all(|h| h.dim() == 2 && h.is_subspace_of(&s, &fp)));
    }

    #[test]
    fn nullspace_and_rank() {
        let fp = f(2);
        let m = Matrix::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(m.rank(&fp), 2);
        let ns = m.nullspace(&fp);
        assert_eq!(ns, vec![vec![1, 1, 1]]);
        let fp = f(5);
        let m = Matrix::from_rows(2, &[vec![2, 4]]);
        let ns = m.nullspace(&fp);
        assert_eq!(ns.len(), 1);
        assert_eq!(m.apply(&ns[0], &fp), vec![0]);
    }

    #[test]
    fn quotient_map_kernel() {
        let fp = f(3);
        let u = Subspace::span(4, &[vec![1, 2, 0, 1], vec![0, 1, 1, 0]], &fp);
        let q = u.quotient_map(&fp);
        assert_eq!(q.rows(), 2);
        let ker = Subspace::span(4, &q.nullspace(&fp), &fp);
        assert_eq!(ker, u);
    }

    #[test]
    fn intersections() {
        let fp = f(2);
        let a = Subspace::span(3, &[vec![1, 0, 0], vec![0, 1, 0]], &fp);
        let b = Subspace::span(3, &[vec![0, 1, 0], vec![0, 0, 1]], &fp);
        assert_eq!(
            a.intersect(&b, &fp),
            Subspace::span(3, &[vec![0, 1, 0]], &fp)
        );
    }

    fn arb_matrix(p: u8) -> impl Strategy<Value = Matrix> {
        (1usize..7, 1usize..9).prop_flat_map(move |(r, c)| {
            prop::collection::vec(0..p, r * c).prop_map(move |d| Matrix::from_vec(r, c, d))
        })
    }

    proptest! {
        #[test]
        fn bit_rref_matches_generic(m in arb_matrix(2)) {
            let fp = f(2);
            let mut bits = BitMatrix::from_matrix(&m);
            let piv_bits = bits.rref();
            // generic path, forced by going through p = 2 arithmetic row by row
            let mut g = m.clone();
            let (rows, cols) = (g.rows(), g.cols());
            let mut piv = Vec::new();
            let mut r = 0;
            for c in 0..cols {
                if r == rows { break; }
                let Some(pr) = (r..rows).find(|&i| g.get(i, c) != 0) else { continue };
                for k in 0..cols {
                    let (x, y) = (g.get(pr, k), g.get(r, k));
                    g.set(pr, k, y);
                    g.set(r, k, x);
                }
                for i in 0..rows {
                    if i != r && g.get(i, c) != 0 {
                        for k in 0..cols {
                            let v = g.get(i, k) ^ g.get(r, k);
                            g.set(i, k, v);
                        }
                    }
                }
                piv.push(c);
                r += 1;
            }
            prop_assert_eq!(piv_bits, piv);
            prop_assert_eq!(bits.to_matrix(), g);
            let _ = fp;
        }

        #[test]
        fn nullspace_is_kernel(m in arb_matrix(3)) {
            let fp = f(3);
            let ns = m.nullspace(&fp);
            prop_assert_eq!(ns.len(), m.cols() - m.rank(&fp));
            for v in &ns {
                prop_assert!(m.apply(v, &fp).iter().all(|&x| x == 0));
            }
        }
    }
}
