//! Quivers, dimension vectors and Grothendieck-group classes.
//!
//! `K_0` of nilpotent representations is identified with `Z^{vertices}` via
//! dimension vectors, so classes are plain integer vectors.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("quiver must have at least one vertex")]
    NoVertices,
    #[error("arrow {index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: usize },
    #[error("arrow {index} references vertex {vertex} outside 0..{count}")]
    VertexOutOfRange { index: usize, vertex: usize, count: usize },
    #[error("vector length {0} does not match vertex count {1}")]
    LengthMismatch(usize, usize),
    #[error("half shift of {a:?} + {b:?} - {m:?} is not integral")]
    Parity { a: Vec<u32>, b: Vec<u32>, m: Vec<u32> },
    #[error("quiver file: {0}")]
    Io(String),
    #[error("quiver JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

/// A loop-free quiver on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        if vertex_count == 0 {
            return Err(QuiverError::NoVertices);
        }
        for (index, &(s, t)) in arrows.iter().enumerate() {
            for vertex in [s, t] {
                if vertex >= vertex_count {
                    return Err(QuiverError::VertexOutOfRange { index, vertex, count: vertex_count });
                }
            }
            if s == t {
                return Err(QuiverError::Loop { index, vertex: s });
            }
        }
        Ok(Quiver { vertex_count, arrows })
    }

    /// Linearly oriented `A_n`: arrows `i -> i+1`.
    pub fn linear(n: usize) -> Self {
        Quiver::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("A_n is loop-free")
    }

    pub fn disjoint_points(n: usize) -> Self {
        Quiver::new(n, Vec::new()).expect("no arrows")
    }

    pub fn kronecker() -> Self {
        Quiver::new(2, vec![(0, 1), (0, 1)]).expect("Kronecker is loop-free")
    }

    pub fn from_json_str(s: &str) -> Result<Self, QuiverError> {
        let raw: QuiverJson = serde_json::from_str(s).map_err(|e| QuiverError::Json(e.to_string()))?;
        Quiver::new(raw.vertices, raw.arrows.iter().map(|a| (a[0], a[1])).collect())
    }

    pub fn load(path: &Path) -> Result<Self, QuiverError> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| QuiverError::Io(format!("{}: {e}", path.display())))?;
        Quiver::from_json_str(&s)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(QuiverJson {
            vertices: self.vertex_count,
            arrows: self.arrows.iter().map(|&(s, t)| [s, t]).collect(),
        })
        .expect("quiver serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Number of edges joining `i` and `j` in either direction.
    pub fn edge_multiplicity(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&(s, t)| (s == i && t == j) || (s == j && t == i))
            .count()
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let n = self.vertex_count;
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == n
    }

    /// Symmetric generalized Cartan matrix `c_ij = 2 delta_ij - n_ij`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 2 } else { -(self.edge_multiplicity(i, j) as i64) })
                    .collect()
            })
            .collect()
    }

    /// Matrix `E` with `<d, e> = d^T E e`: identity minus the arrow count `i -> j`.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count;
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in &self.arrows {
            m[s][t] -= 1;
        }
        m
    }

    fn check_len(&self, len: usize) -> Result<(), QuiverError> {
        if len == self.vertex_count {
            Ok(())
        } else {
            Err(QuiverError::LengthMismatch(len, self.vertex_count))
        }
    }

    /// Euler form `<d, e> = sum_i d_i e_i - sum_{i -> j} d_i e_j`.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> Result<i64, QuiverError> {
        self.check_len(d.len())?;
        self.check_len(e.len())?;
        let diag: i64 = d.iter().zip(e).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        Ok(diag - off)
    }

    /// Symmetric Euler form `(d, e) = <d, e> + <e, d>`.
    pub fn sym_form(&self, d: &[i64], e: &[i64]) -> Result<i64, QuiverError> {
        Ok(self.euler_form(d, e)? + self.euler_form(e, d)?)
    }

    pub fn euler_dims(&self, d: &DimVector, e: &DimVector) -> i64 {
        self.euler_form(&d.to_k0().0, &e.to_k0().0)
            .expect("dimension vectors built for this quiver")
    }

    pub fn unit_vector(&self, i: usize) -> DimVector {
        let mut v = vec![0; self.vertex_count];
        v[i] = 1;
        DimVector(v)
    }

    /// `(A + B - M) / 2` as an exact class.
    pub fn half_shift(
        &self,
        a: &DimVector,
        b: &DimVector,
        m: &DimVector,
    ) -> Result<K0Class, QuiverError> {
        for v in [a, b, m] {
            self.check_len(v.len())?;
        }
        let doubled = doubled_shift(a, b, m);
        if doubled.iter().any(|x| x % 2 != 0) {
            return Err(QuiverError::Parity { a: a.0.clone(), b: b.0.clone(), m: m.0.clone() });
        }
        Ok(K0Class(doubled.into_iter().map(|x| x / 2).collect()))
    }
}

/// `A + B - M` (twice the half shift), no parity requirement.
pub fn doubled_shift(a: &DimVector, b: &DimVector, m: &DimVector) -> Vec<i64> {
    a.0.iter()
        .zip(&b.0)
        .zip(&m.0)
        .map(|((&x, &y), &z)| i64::from(x) + i64::from(y) - i64::from(z))
        .collect()
}

/// Dimension vector of a representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn to_k0(&self) -> K0Class {
        K0Class(self.0.iter().map(|&x| i64::from(x)).collect())
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&x, &y)| x.checked_sub(y))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    /// Converts an integer vector back if all entries are nonnegative.
    pub fn from_k0(c: &[i64]) -> Option<DimVector> {
        c.iter().map(|&x| u32::try_from(x).ok()).collect::<Option<Vec<_>>>().map(DimVector)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// An element of `K_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct K0Class(pub Vec<i64>);

impl K0Class {
    pub fn zero(n: usize) -> Self {
        K0Class(vec![0; n])
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        K0Class(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &K0Class) -> K0Class {
        K0Class(self.0.iter().zip(&other.0).map(|(x, y)| x - y).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

/// An element `alpha` of `K_0 (x) (1/2)Z`, stored as the integer vector `2 alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfK0Class {
    pub doubled: Vec<i64>,
}

impl HalfK0Class {
    pub fn zero(n: usize) -> Self {
        HalfK0Class { doubled: vec![0; n] }
    }

    pub fn from_k0(c: &K0Class) -> Self {
        HalfK0Class { doubled: c.0.iter().map(|x| 2 * x).collect() }
    }

    /// `d / 2` for an integer vector `d`.
    pub fn half_of(d: &[i64]) -> Self {
        HalfK0Class { doubled: d.to_vec() }
    }

    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|x| x % 2 == 0)
    }

    pub fn to_k0(&self) -> Option<K0Class> {
        self.is_integral().then(|| K0Class(self.doubled.iter().map(|x| x / 2).collect()))
    }

    pub fn add(&self, other: &HalfK0Class) -> HalfK0Class {
        HalfK0Class {
            doubled: self.doubled.iter().zip(&other.doubled).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn add_doubled(&self, d: &[i64]) -> HalfK0Class {
        HalfK0Class { doubled: self.doubled.iter().zip(d).map(|(x, y)| x + y).collect() }
    }

    pub fn sub_doubled(&self, d: &[i64]) -> HalfK0Class {
        HalfK0Class { doubled: self.doubled.iter().zip(d).map(|(x, y)| x - y).collect() }
    }
}

impl fmt::Display for HalfK0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .doubled
            .iter()
            .map(|&x| if x % 2 == 0 { (x / 2).to_string() } else { format!("{x}/2") })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
