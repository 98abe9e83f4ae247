use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::{check_cap, is_isomorphic, CapKind, Caps, FpMatrix, RepError, Representation};
use crate::quiver::{DimVector, Quiver};

/// Index of an isomorphism class in a [`Catalog`].
pub type ClassId = usize;

/// All isomorphism classes of representations up to a total-dimension bound.
///
/// Classes are ordered by total dimension, then dimension vector, then the
/// lexicographically smallest matrix tuple in the class, which is also the
/// stored representative. Every matrix tuple of total dimension at most the
/// bound is indexed, so classifying a representation is a hash lookup.
#[derive(Debug, Clone)]
pub struct Catalog {
    quiver: Quiver,
    p: u32,
    max_dim: u32,
    caps: Caps,
    classes: Vec<Representation>,
    index: HashMap<Representation, ClassId>,
    by_dim: BTreeMap<DimVector, Vec<ClassId>>,
}

/// Dimension vectors of total at most `bound`, ordered by (total, lexicographic).
pub(crate) fn dimension_vectors(n: usize, bound: u32) -> Vec<DimVector> {
    fn go(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<DimVector>) {
        if cur.len() == n {
            out.push(DimVector(cur.clone()));
            return;
        }
        for d in 0..=left {
            cur.push(d);
            go(n, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, bound, &mut Vec::with_capacity(n), &mut out);
    out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
    out
}

/// All matrix tuples of the given dimension vector in lexicographic order.
pub(crate) fn matrix_tuples(
    quiver: &Quiver,
    dim: &DimVector,
    p: u32,
    cap: u64,
) -> Result<Vec<Representation>, RepError> {
    let shapes: Vec<(usize, usize)> = quiver
        .arrows()
        .iter()
        .map(|&(s, t)| (dim.0[t] as usize, dim.0[s] as usize))
        .collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let count = (p as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
    check_cap(CapKind::Matrices, dim, count, cap)?;
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u32; entries];
    for _ in 0..count {
        let mut offset = 0;
        let maps = shapes
            .iter()
            .map(|&(r, c)| {
                let m = FpMatrix::from_data(r, c, p, digits[offset..offset + r * c].to_vec());
                offset += r * c;
                m
            })
            .collect();
        out.push(Representation { dim: dim.clone(), maps });
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

impl Catalog {
    pub fn enumerate(quiver: &Quiver, p: u32, max_dim: u32, caps: Caps) -> Result<Self, RepError> {
        let mut catalog = Catalog {
            quiver: quiver.clone(),
            p,
            max_dim,
            caps,
            classes: Vec::new(),
            index: HashMap::new(),
            by_dim: BTreeMap::new(),
        };
        for dim in dimension_vectors(quiver.vertex_count(), max_dim) {
            let mut ids: Vec<ClassId> = Vec::new();
            for rep in matrix_tuples(quiver, &dim, p, caps.matrices)? {
                if !rep.is_nilpotent(quiver) {
                    continue;
                }
                let mut found = None;
                for &id in &ids {
                    if is_isomorphic(quiver, &catalog.classes[id], &rep, p, &caps)? {
                        found = Some(id);
                        break;
                    }
                }
                let id = match found {
                    Some(id) => id,
                    None => {
                        let id = catalog.classes.len();
                        catalog.classes.push(rep.clone());
                        ids.push(id);
                        id
                    }
                };
                catalog.index.insert(rep, id);
            }
            catalog.by_dim.insert(dim, ids);
        }
        Ok(catalog)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn max_dim(&self) -> u32 {
        self.max_dim
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn ids(&self) -> std::ops::Range<ClassId> {
        0..self.classes.len()
    }

    pub fn class(&self, id: ClassId) -> &Representation {
        &self.classes[id]
    }

    pub fn get(&self, id: ClassId) -> Result<&Representation, RepError> {
        self.classes.get(id).ok_or(RepError::UnknownClass(id))
    }

    pub fn dim(&self, id: ClassId) -> &DimVector {
        &self.classes[id].dim
    }

    pub fn total(&self, id: ClassId) -> u32 {
        self.classes[id].dim.total()
    }

    pub fn classes_with_dim(&self, dim: &DimVector) -> &[ClassId] {
        self.by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn class_of(&self, rep: &Representation) -> Option<ClassId> {
        self.index.get(rep).copied()
    }

    /// Class of `rep`; fails if its dimension exceeds the bound.
    pub fn classify(&self, rep: &Representation) -> Result<ClassId, RepError> {
        self.class_of(rep).ok_or_else(|| RepError::NotCatalogued(rep.dim.clone()))
    }

    pub fn zero(&self) -> ClassId {
        0
    }

    /// The simple module at vertex `i`. Requires `max_dim >= 1`.
    pub fn simple(&self, i: usize) -> Option<ClassId> {
        let dim = self.quiver.unit_vector(i);
        self.classes_with_dim(&dim).first().copied()
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .classes
            .iter()
            .enumerate()
            .map(|(id, rep)| {
                let maps: Vec<Value> = rep
                    .maps
                    .iter()
                    .map(|m| json!({"rows": m.rows(), "cols": m.cols(), "entries": m.data()}))
                    .collect();
                json!({"id": id, "dim": rep.dim.0, "maps": maps})
            })
            .collect();
        json!({
            "quiver": self.quiver.to_json(),
            "q": self.p,
            "max_dim": self.max_dim,
            "classes": classes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_and_a2_counts() {
        let caps = Caps::default();
        assert_eq!(Catalog::enumerate(&Quiver::linear(1), 2, 2, caps).unwrap().len(), 3);
        assert_eq!(Catalog::enumerate(&Quiver::linear(1), 2, 3, caps).unwrap().len(), 4);
        let a2 = Catalog::enumerate(&Quiver::linear(2), 2, 2, caps).unwrap();
        assert_eq!(a2.len(), 7);
        assert_eq!(Catalog::enumerate(&Quiver::kronecker(), 3, 0, caps).unwrap().len(), 1);
    }

    #[test]
    fn ordering_and_simples() {
        let a2 = Catalog::enumerate(&Quiver::linear(2), 2, 2, Caps::default()).unwrap();
        let dims: Vec<Vec<u32>> = a2.ids().map(|i| a2.dim(i).0.clone()).collect();
        assert_eq!(
            dims,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![1, 1], vec![2, 0]]
        );
        // zero map sorts before the identity map
        assert!(a2.class(4).maps()[0].is_zero());
        assert!(!a2.class(5).maps()[0].is_zero());
        assert_eq!(a2.simple(0), Some(2));
        assert_eq!(a2.simple(1), Some(1));
        assert_eq!(a2.zero(), 0);
    }

    #[test]
    fn every_tuple_is_indexed() {
        let q = Quiver::linear(2);
        let cat = Catalog::enumerate(&q, 3, 3, Caps::default()).unwrap();
        for dim in dimension_vectors(2, 3) {
            for rep in matrix_tuples(&q, &dim, 3, u64::MAX).unwrap() {
                let id = cat.classify(&rep).unwrap();
                assert_eq!(cat.dim(id), &dim);
            }
        }
    }

    #[test]
    fn cap_is_reported_with_dimension() {
        let caps = Caps { matrices: 3, ..Caps::default() };
        let err = Catalog::enumerate(&Quiver::kronecker(), 2, 2, caps).unwrap_err();
        match err {
            RepError::CapExceeded { kind: CapKind::Matrices, dim, count, cap } => {
                assert_eq!(dim, DimVector(vec![1, 1]));
                assert_eq!(count, 4);
                assert_eq!(cap, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_export_lists_classes() {
        let cat = Catalog::enumerate(&Quiver::linear(2), 2, 1, Caps::default()).unwrap();
        let v = cat.to_json();
        assert_eq!(v["classes"].as_array().unwrap().len(), 3);
        assert_eq!(v["classes"][2]["dim"], json!([1, 0]));
        assert_eq!(v["classes"][2]["maps"][0], json!({"rows": 0, "cols": 1, "entries": []}));
    }
}
