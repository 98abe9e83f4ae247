use super::matrix::FpMatrix;

/// A subspace of `F_p^n` given by its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates; the matching standard vectors span a complement.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// `v` minus its component along the basis; zero on every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.basis.p();
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let f = w[pc];
            if f != 0 {
                for (j, x) in w.iter_mut().enumerate() {
                    *x = ((u64::from(*x) + u64::from(p - f) * u64::from(self.basis.get(r, j)))
                        % u64::from(p)) as u32;
                }
            }
        }
        w
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if self.reduce(v).iter().all(|&x| x == 0) {
            Some(self.pivots.iter().map(|&pc| v[pc]).collect())
        } else {
            None
        }
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`, saturating.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = u128::from(q);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let Some(a) = q.checked_pow((n - i) as u32) else { return u128::MAX };
        let Some(b) = q.checked_pow((i + 1) as u32) else { return u128::MAX };
        num = match num.checked_mul(a - 1) {
            Some(x) => x,
            None => return u128::MAX,
        };
        den *= b - 1;
    }
    num / den
}

/// All subspaces of `F_p^n` of all dimensions.
pub fn subspace_count(n: usize, q: u32) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(n, k, q)))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Every `k`-dimensional subspace of `F_p^n`, enumerated through echelon forms.
pub fn subspaces(n: usize, k: usize, p: u32) -> Vec<Subspace> {
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = (p as usize).pow(free.len() as u32);
        for mut code in 0..total {
            let mut m = FpMatrix::zeros(k, n, p);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(r, pc, 1);
            }
            for &(r, c) in free.iter().rev() {
                m.set(r, c, (code % p as usize) as u32);
                code /= p as usize;
            }
            out.push(Subspace { basis: m, pivots: pivots.clone() });
        }
    }
    out
}
