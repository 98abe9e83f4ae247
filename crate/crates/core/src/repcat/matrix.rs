use std::fmt;

/// Dense matrix over the prime field `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

pub(crate) fn inv_mod(x: u32, p: u32) -> u32 {
    debug_assert!(!x.is_multiple_of(p));
    let mut result = 1u64;
    let mut base = u64::from(x % p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        e >>= 1;
    }
    result as u32
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        FpMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = FpMatrix::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        FpMatrix { rows, cols, p, data: data.into_iter().map(|x| x % p).collect() }
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        FpMatrix::from_data(rows.len(), cols, p, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shapes");
        let p = u64::from(self.p);
        let mut out = FpMatrix::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += u64::from(self.get(i, k)) * u64::from(other.get(k, j));
                }
                out.data[i * other.cols + j] = (acc % p) as u32;
            }
        }
        out
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = u64::from(self.p);
        (0..self.rows)
            .map(|i| {
                let acc: u64 = (0..self.cols).map(|k| u64::from(self.get(i, k)) * u64::from(v[k])).sum();
                (acc % p) as u32
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in 0..m.cols {
                let v = (u64::from(m.get(r, j)) * u64::from(inv) % u64::from(p)) as u32;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i != r && f != 0 {
                    for j in 0..m.cols {
                        let v = (u64::from(m.get(i, j))
                            + u64::from(p - f) * u64::from(m.get(r, j)))
                            % u64::from(p);
                        m.set(i, j, v as u32);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(n, 2 * n, self.p);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        let mut inv = FpMatrix::zeros(n, n, self.p);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Basis of `{x : self * x = 0}` as vectors of length `cols`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u32; self.cols];
                x[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    let v = r.get(row, f);
                    x[pc] = (p - v) % p;
                }
                x
            })
            .collect()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.rows).map(|r| self.row(r)).collect();
        write!(f, "{}x{}{:?}", self.rows, self.cols, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let m = FpMatrix::from_rows(3, &[vec![1, 2, 0], vec![2, 1, 0]]);
        // second row = 2 * first mod 3
        assert_eq!(m.rank(), 1);
        let (r, piv) = FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]]).rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, FpMatrix::identity(2, 2));
    }

    #[test]
    fn nullspace_solves() {
        let m = FpMatrix::from_rows(5, &[vec![1, 2, 3], vec![0, 1, 4]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for x in ns {
            assert!(m.apply(&x).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn invertible_2x2_over_f2() {
        let mut count = 0;
        for bits in 0u32..16 {
            let data = (0..4).map(|i| (bits >> i) & 1).collect();
            if FpMatrix::from_data(2, 2, 2, data).is_invertible() {
                count += 1;
            }
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn matrix_inverse() {
        let m = FpMatrix::from_rows(3, &[vec![1, 2], vec![0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(2, 3));
        assert!(FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).inverse().is_none());
        assert_eq!(FpMatrix::zeros(0, 0, 2).inverse(), Some(FpMatrix::zeros(0, 0, 2)));
    }

    #[test]
    fn modular_inverse() {
        for p in [2u32, 3, 5, 7] {
            for x in 1..p {
                assert_eq!(x * inv_mod(x, p) % p, 1);
            }
        }
    }
}
