//! Nilpotent representations of a quiver over `F_p` at small total dimension.
//!
//! Everything here is computed by brute force: matrix tuples are enumerated,
//! isomorphism is decided by searching the Hom-space for an invertible
//! intertwiner, and submodules come from per-vertex echelon enumeration.

mod catalog;
mod matrix;
mod subspace;
mod tables;

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::quiver::{DimVector, Quiver, QuiverError};

pub use catalog::{Catalog, ClassId};
pub use matrix::FpMatrix;
pub use subspace::{gaussian_binomial, subspace_count, subspaces, Subspace};
pub use tables::HallTables;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    Matrices,
    Subspaces,
    Homs,
}

impl fmt::Display for CapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CapKind::Matrices => "matrix-tuple",
            CapKind::Subspaces => "subspace",
            CapKind::Homs => "hom-space",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("{kind} cap exceeded at dimension vector {dim}: {count} > {cap}")]
    CapExceeded { kind: CapKind, dim: DimVector, count: u128, cap: u64 },
    #[error("representation shape mismatch: {0}")]
    Shape(String),
    #[error("class id {0} is not in the catalog")]
    UnknownClass(ClassId),
    #[error("representation of dimension {0} is not in the catalog")]
    NotCatalogued(DimVector),
    #[error("negative Ext dimension between classes {0} and {1}")]
    NegativeExt(ClassId, ClassId),
    #[error("non-integral extension count for A={0}, B={1}, M={2}")]
    NonIntegral(ClassId, ClassId, ClassId),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Enumeration limits. Exceeding one is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Matrix tuples per dimension vector during catalog enumeration.
    pub matrices: u64,
    /// Candidate subspace tuples per module during submodule enumeration.
    pub subspaces: u64,
    /// Points of a Hom-space enumerated for isomorphism and automorphism counts.
    pub homs: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { matrices: 1 << 20, subspaces: 1 << 20, homs: 1 << 22 }
    }
}

fn check_cap(kind: CapKind, dim: &DimVector, count: u128, cap: u64) -> Result<(), RepError> {
    if count > u128::from(cap) {
        Err(RepError::CapExceeded { kind, dim: dim.clone(), count, cap })
    } else {
        Ok(())
    }
}

/// A representation: one `F_p`-matrix per arrow, of shape `dim[target] x dim[source]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Representation {
    dim: DimVector,
    maps: Vec<FpMatrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{}{:?}", self.dim, self.maps)
    }
}

impl Representation {
    pub fn new(quiver: &Quiver, dim: DimVector, maps: Vec<FpMatrix>) -> Result<Self, RepError> {
        if dim.len() != quiver.vertex_count() {
            return Err(RepError::Shape(format!(
                "dimension vector {dim} for {} vertices",
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(RepError::Shape(format!(
                "{} maps for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (k, (&(s, t), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.rows() != dim.0[t] as usize || m.cols() != dim.0[s] as usize {
                return Err(RepError::Shape(format!(
                    "arrow {k} map is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dim.0[t],
                    dim.0[s]
                )));
            }
        }
        Ok(Representation { dim, maps })
    }

    pub fn zero(quiver: &Quiver, p: u32) -> Self {
        Representation::with_zero_maps(quiver, DimVector::zero(quiver.vertex_count()), p)
    }

    pub fn with_zero_maps(quiver: &Quiver, dim: DimVector, p: u32) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| FpMatrix::zeros(dim.0[t] as usize, dim.0[s] as usize, p))
            .collect();
        Representation { dim, maps }
    }

    pub fn simple(quiver: &Quiver, i: usize, p: u32) -> Self {
        Representation::with_zero_maps(quiver, quiver.unit_vector(i), p)
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    pub fn direct_sum(&self, quiver: &Quiver, other: &Representation) -> Representation {
        let dim = self.dim.add(&other.dim);
        let maps = quiver
            .arrows()
            .iter()
            .zip(self.maps.iter().zip(&other.maps))
            .map(|(&(s, t), (x, y))| {
                let p = x.p();
                let mut m = FpMatrix::zeros(dim.0[t] as usize, dim.0[s] as usize, p);
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        m.set(r, c, x.get(r, c));
                    }
                }
                for r in 0..y.rows() {
                    for c in 0..y.cols() {
                        m.set(x.rows() + r, x.cols() + c, y.get(r, c));
                    }
                }
                m
            })
            .collect();
        Representation { dim, maps }
    }

    /// Change of basis `M_a -> g_t M_a g_s^{-1}`; `None` if some `g_i` is singular.
    pub fn conjugate(&self, quiver: &Quiver, g: &[FpMatrix]) -> Option<Representation> {
        let inverses: Vec<FpMatrix> = g.iter().map(FpMatrix::inverse).collect::<Option<_>>()?;
        let maps = quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(&(s, t), m)| g[t].mul(m).mul(&inverses[s]))
            .collect();
        Some(Representation { dim: self.dim.clone(), maps })
    }

    /// Every long enough path acts as zero. Always true on acyclic quivers.
    pub fn is_nilpotent(&self, quiver: &Quiver) -> bool {
        if quiver.is_acyclic() {
            return true;
        }
        let n = self.dim.total() as usize;
        if n == 0 {
            return true;
        }
        let p = self.maps.first().map_or(2, FpMatrix::p);
        let offsets: Vec<usize> = self
            .dim
            .0
            .iter()
            .scan(0usize, |acc, &d| {
                let o = *acc;
                *acc += d as usize;
                Some(o)
            })
            .collect();
        let mut block = FpMatrix::zeros(n, n, p);
        for (&(s, t), m) in quiver.arrows().iter().zip(&self.maps) {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let i = offsets[t] + r;
                    let j = offsets[s] + c;
                    block.set(i, j, block.get(i, j) + m.get(r, c));
                }
            }
        }
        let mut power = block.clone();
        for _ in 1..n {
            power = power.mul(&block);
        }
        power.is_zero()
    }
}

/// Basis of `Hom(r, s)`: tuples `f_i : r_i -> s_i` with `f_t r_a = s_a f_s` for every arrow.
pub fn hom_basis(quiver: &Quiver, r: &Representation, s: &Representation) -> Vec<Vec<FpMatrix>> {
    let n = quiver.vertex_count();
    let p = r.maps.first().or(s.maps.first()).map_or(2, FpMatrix::p);
    let rd: Vec<usize> = r.dim.0.iter().map(|&x| x as usize).collect();
    let sd: Vec<usize> = s.dim.0.iter().map(|&x| x as usize).collect();
    let mut offsets = Vec::with_capacity(n);
    let mut unknowns = 0;
    for i in 0..n {
        offsets.push(unknowns);
        unknowns += sd[i] * rd[i];
    }
    let var = |i: usize, row: usize, col: usize| offsets[i] + row * rd[i] + col;

    let mut equations: Vec<Vec<u32>> = Vec::new();
    for (&(src, tgt), (ra, sa)) in quiver.arrows().iter().zip(r.maps.iter().zip(&s.maps)) {
        for row in 0..sd[tgt] {
            for col in 0..rd[src] {
                let mut eq = vec![0u32; unknowns];
                // (f_t r_a)[row][col]
                for k in 0..rd[tgt] {
                    let c = ra.get(k, col);
                    if c != 0 {
                        let v = var(tgt, row, k);
                        eq[v] = (eq[v] + c) % p;
                    }
                }
                // -(s_a f_s)[row][col]
                for k in 0..sd[src] {
                    let c = sa.get(row, k);
                    if c != 0 {
                        let v = var(src, k, col);
                        eq[v] = (eq[v] + p - c) % p;
                    }
                }
                equations.push(eq);
            }
        }
    }
    let solutions = if equations.is_empty() {
        (0..unknowns)
            .map(|k| {
                let mut x = vec![0u32; unknowns];
                x[k] = 1;
                x
            })
            .collect()
    } else {
        FpMatrix::from_rows(p, &equations).nullspace()
    };
    solutions
        .into_iter()
        .map(|x| {
            (0..n)
                .map(|i| {
                    let start = offsets[i];
                    FpMatrix::from_data(sd[i], rd[i], p, x[start..start + sd[i] * rd[i]].to_vec())
                })
                .collect()
        })
        .collect()
}

pub fn hom_dim(quiver: &Quiver, r: &Representation, s: &Representation) -> usize {
    hom_basis(quiver, r, s).len()
}

/// Calls `visit` on every element of the span of `basis` until it returns `true`.
fn search_span(
    basis: &[Vec<FpMatrix>],
    template: &[(usize, usize)],
    p: u32,
    mut visit: impl FnMut(&[FpMatrix]) -> bool,
) -> bool {
    let h = basis.len();
    let total = (p as u64).pow(h as u32);
    let mut coeffs = vec![0u32; h];
    for _ in 0..total {
        let element: Vec<FpMatrix> = template
            .iter()
            .enumerate()
            .map(|(i, &(rows, cols))| {
                let mut data = vec![0u64; rows * cols];
                for (b, &c) in basis.iter().zip(&coeffs) {
                    if c != 0 {
                        for (d, &x) in data.iter_mut().zip(b[i].data()) {
                            *d += u64::from(c) * u64::from(x);
                        }
                    }
                }
                FpMatrix::from_data(rows, cols, p, data.into_iter().map(|x| (x % u64::from(p)) as u32).collect())
            })
            .collect();
        if visit(&element) {
            return true;
        }
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    false
}

fn field_of(r: &Representation, fallback: u32) -> u32 {
    r.maps.first().map_or(fallback, FpMatrix::p)
}

/// Decides `r ~= s` by enumerating `Hom(r, s)` for an invertible element.
pub fn is_isomorphic(
    quiver: &Quiver,
    r: &Representation,
    s: &Representation,
    p: u32,
    caps: &Caps,
) -> Result<bool, RepError> {
    if r.dim != s.dim {
        return Ok(false);
    }
    if r == s {
        return Ok(true);
    }
    let basis = hom_basis(quiver, r, s);
    if basis.len() != hom_dim(quiver, r, r) || basis.len() != hom_dim(quiver, s, s) {
        return Ok(false);
    }
    let p = field_of(r, field_of(s, p));
    check_cap(CapKind::Homs, &r.dim, (p as u128).pow(basis.len() as u32), caps.homs)?;
    let template: Vec<(usize, usize)> = r.dim.0.iter().map(|&d| (d as usize, d as usize)).collect();
    Ok(search_span(&basis, &template, p, |f| f.iter().all(FpMatrix::is_invertible)))
}

/// `|Aut(r)|`, counted over all endomorphisms.
pub fn aut_order(quiver: &Quiver, r: &Representation, p: u32, caps: &Caps) -> Result<BigUint, RepError> {
    let basis = hom_basis(quiver, r, r);
    let p = field_of(r, p);
    check_cap(CapKind::Homs, &r.dim, (p as u128).pow(basis.len() as u32), caps.homs)?;
    let template: Vec<(usize, usize)> = r.dim.0.iter().map(|&d| (d as usize, d as usize)).collect();
    let mut count = 0u64;
    search_span(&basis, &template, p, |f| {
        if f.iter().all(FpMatrix::is_invertible) {
            count += 1;
        }
        false
    });
    Ok(BigUint::from(count))
}

/// An arrow-invariant subspace tuple together with the induced sub- and quotient module.
#[derive(Debug, Clone)]
pub struct Subrep {
    pub subspaces: Vec<Subspace>,
    pub sub: Representation,
    pub quotient: Representation,
}

/// Enumerates every subrepresentation of `m`.
pub fn for_each_subrep(
    quiver: &Quiver,
    m: &Representation,
    p: u32,
    caps: &Caps,
    mut visit: impl FnMut(Subrep),
) -> Result<(), RepError> {
    let p = field_of(m, p);
    let n = quiver.vertex_count();
    let count = m
        .dim
        .0
        .iter()
        .fold(1u128, |acc, &d| acc.saturating_mul(subspace_count(d as usize, p)));
    check_cap(CapKind::Subspaces, &m.dim, count, caps.subspaces)?;
    let choices: Vec<Vec<Subspace>> = m
        .dim
        .0
        .iter()
        .map(|&d| (0..=d as usize).flat_map(|k| subspaces(d as usize, k, p)).collect())
        .collect();
    // Arrows checked once both endpoints are chosen.
    let checks: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            quiver
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, &(s, t))| s.max(t) == v)
                .map(|(k, _)| k)
                .collect()
        })
        .collect();

    let invariant = |k: usize, chosen: &[&Subspace]| {
        let (s, t) = quiver.arrows()[k];
        let us = chosen[s].basis();
        (0..us.rows()).all(|j| chosen[t].coordinates(&m.maps[k].apply(us.row(j))).is_some())
    };

    let mut chosen: Vec<&Subspace> = Vec::with_capacity(n);
    let mut cursor = vec![0usize; n];
    let mut v = 0usize;
    if n == 0 {
        return Ok(());
    }
    loop {
        if cursor[v] == choices[v].len() {
            cursor[v] = 0;
            if v == 0 {
                break;
            }
            v -= 1;
            chosen.pop();
            cursor[v] += 1;
            continue;
        }
        chosen.push(&choices[v][cursor[v]]);
        if checks[v].iter().all(|&k| invariant(k, &chosen)) {
            if v + 1 == n {
                visit(induced(quiver, m, &chosen, p));
                chosen.pop();
                cursor[v] += 1;
            } else {
                v += 1;
            }
        } else {
            chosen.pop();
            cursor[v] += 1;
        }
    }
    Ok(())
}

fn induced(quiver: &Quiver, m: &Representation, chosen: &[&Subspace], p: u32) -> Subrep {
    let sub_dim = DimVector(chosen.iter().map(|u| u.dim() as u32).collect());
    let complements: Vec<Vec<usize>> = chosen.iter().map(|u| u.complement()).collect();
    let quot_dim = DimVector(complements.iter().map(|c| c.len() as u32).collect());
    let mut sub_maps = Vec::with_capacity(m.maps.len());
    let mut quot_maps = Vec::with_capacity(m.maps.len());
    for (k, &(s, t)) in quiver.arrows().iter().enumerate() {
        let map = &m.maps[k];
        let (us, ut) = (chosen[s], chosen[t]);
        let mut sm = FpMatrix::zeros(ut.dim(), us.dim(), p);
        for j in 0..us.dim() {
            let coords = ut.coordinates(&map.apply(us.basis().row(j))).expect("invariant subspace");
            for (i, c) in coords.into_iter().enumerate() {
                sm.set(i, j, c);
            }
        }
        sub_maps.push(sm);
        let (cs, ct) = (&complements[s], &complements[t]);
        let mut qm = FpMatrix::zeros(ct.len(), cs.len(), p);
        for (j, &col) in cs.iter().enumerate() {
            let image: Vec<u32> = (0..map.rows()).map(|r| map.get(r, col)).collect();
            let reduced = ut.reduce(&image);
            for (i, &c) in ct.iter().enumerate() {
                qm.set(i, j, reduced[c]);
            }
        }
        quot_maps.push(qm);
    }
    Subrep {
        subspaces: chosen.iter().map(|&u| u.clone()).collect(),
        sub: Representation { dim: sub_dim, maps: sub_maps },
        quotient: Representation { dim: quot_dim, maps: quot_maps },
    }
}
