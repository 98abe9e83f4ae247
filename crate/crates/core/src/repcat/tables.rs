use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{aut_order, for_each_subrep, hom_dim, Catalog, ClassId, RepError};
use crate::coeff::QuadField;
use crate::quiver::Quiver;

/// Memoized Hall numbers, automorphism orders and Hom dimensions of a sealed catalog.
///
/// `filtrations(m)` lists every `(A, B, F^M_{AB})` with `F^M_{AB} > 0`, where `B`
/// is the submodule class and `A` the quotient class.
#[derive(Debug, Clone)]
pub struct HallTables {
    catalog: Catalog,
    field: QuadField,
    aut: Vec<BigUint>,
    hom: Vec<Vec<u32>>,
    euler: Vec<Vec<i64>>,
    filtrations: Vec<Vec<(ClassId, ClassId, u64)>>,
    hall: HashMap<(ClassId, ClassId, ClassId), u64>,
}

impl HallTables {
    /// Fills every table. Parallel over classes; results are gathered in id order.
    pub fn build(catalog: Catalog) -> Result<Self, RepError> {
        let field = QuadField::new(catalog.p().into())
            .map_err(|e| RepError::Shape(e.to_string()))?;
        let quiver = catalog.quiver().clone();
        let p = catalog.p();
        let caps = *catalog.caps();
        let ids: Vec<ClassId> = catalog.ids().collect();

        let aut = ids
            .par_iter()
            .map(|&m| aut_order(&quiver, catalog.class(m), p, &caps))
            .collect::<Result<Vec<_>, _>>()?;

        let hom: Vec<Vec<u32>> = ids
            .par_iter()
            .map(|&a| {
                ids.iter()
                    .map(|&b| hom_dim(&quiver, catalog.class(a), catalog.class(b)) as u32)
                    .collect()
            })
            .collect();

        let euler = ids
            .iter()
            .map(|&a| ids.iter().map(|&b| quiver.euler_dims(catalog.dim(a), catalog.dim(b))).collect())
            .collect();

        let filtrations = ids
            .par_iter()
            .map(|&m| {
                let mut counts: BTreeMap<(ClassId, ClassId), u64> = BTreeMap::new();
                let mut failure = None;
                for_each_subrep(&quiver, catalog.class(m), p, &caps, |s| {
                    match (catalog.classify(&s.quotient), catalog.classify(&s.sub)) {
                        (Ok(a), Ok(b)) => *counts.entry((a, b)).or_default() += 1,
                        (Err(e), _) | (_, Err(e)) => failure = Some(e),
                    }
                })?;
                match failure {
                    Some(e) => Err(e),
                    None => Ok(counts.into_iter().map(|((a, b), c)| (a, b, c)).collect::<Vec<_>>()),
                }
            })
            .collect::<Result<Vec<_>, RepError>>()?;

        let hall = filtrations
            .iter()
            .enumerate()
            .flat_map(|(m, list)| list.iter().map(move |&(a, b, c)| ((a, b, m), c)))
            .collect();

        Ok(HallTables { catalog, field, aut, hom, euler, filtrations, hall })
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn quiver(&self) -> &Quiver {
        self.catalog.quiver()
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn len(&self) -> usize {
        self.catalog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.catalog.is_empty()
    }

    /// `a_M = |Aut(M)|`.
    pub fn aut(&self, m: ClassId) -> &BigUint {
        &self.aut[m]
    }

    pub fn hom_dim(&self, a: ClassId, b: ClassId) -> u32 {
        self.hom[a][b]
    }

    /// Euler form of the dimension vectors of two classes.
    pub fn euler(&self, a: ClassId, b: ClassId) -> i64 {
        self.euler[a][b]
    }

    /// `dim Ext^1(a, b) = dim Hom(a, b) - <a, b>`, valid because the category is hereditary.
    pub fn ext_dim(&self, a: ClassId, b: ClassId) -> Result<u32, RepError> {
        let e = i64::from(self.hom[a][b]) - self.euler[a][b];
        u32::try_from(e).map_err(|_| RepError::NegativeExt(a, b))
    }

    /// `F^M_{AB}`: submodules `X` of `M` with `X ~= B` and `M/X ~= A`.
    pub fn hall_number(&self, a: ClassId, b: ClassId, m: ClassId) -> u64 {
        self.hall.get(&(a, b, m)).copied().unwrap_or(0)
    }

    pub fn filtrations(&self, m: ClassId) -> &[(ClassId, ClassId, u64)] {
        &self.filtrations[m]
    }

    /// `|Ext^1(A, B)_M| = F^M_{AB} q^{hom(A,B)} a_A a_B / a_M`.
    pub fn ext_count(&self, a: ClassId, b: ClassId, m: ClassId) -> Result<BigUint, RepError> {
        let f = self.hall_number(a, b, m);
        if f == 0 {
            return Ok(BigUint::zero());
        }
        let num = BigUint::from(f)
            * BigUint::from(self.q()).pow(self.hom_dim(a, b))
            * &self.aut[a]
            * &self.aut[b];
        let (quot, rem) = num.div_rem(&self.aut[m]);
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(RepError::NonIntegral(a, b, m))
        }
    }

    /// `|Ext^1(A, B)_M|` for every `M`, counted from cocycles instead of Hall numbers.
    ///
    /// Each tuple `Z_a : A_s -> B_t` gives the extension with maps
    /// `[[B_a, Z_a], [0, A_a]]`; cohomologous tuples form cosets of size
    /// `q^{sum_i a_i b_i - hom(A, B)}`.
    pub fn extension_classes(&self, a: ClassId, b: ClassId) -> Result<BTreeMap<ClassId, BigUint>, RepError> {
        let quiver = self.quiver();
        let (ra, rb) = (self.catalog.class(a), self.catalog.class(b));
        let p = self.q();
        let dim = ra.dim().add(rb.dim());
        let shapes: Vec<(usize, usize)> = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| (rb.dim().0[t] as usize, ra.dim().0[s] as usize))
            .collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let count = (p as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
        super::check_cap(super::CapKind::Matrices, &dim, count, self.catalog.caps().matrices)?;
        let mut tally: BTreeMap<ClassId, u64> = BTreeMap::new();
        let mut digits = vec![0u32; entries];
        for _ in 0..count {
            let mut offset = 0;
            let maps = quiver
                .arrows()
                .iter()
                .enumerate()
                .map(|(k, &(s, t))| {
                    let (zr, zc) = shapes[k];
                    let (bt, bs) = (rb.dim().0[t] as usize, rb.dim().0[s] as usize);
                    let mut e = super::FpMatrix::zeros(dim.0[t] as usize, dim.0[s] as usize, p);
                    let (bm, am) = (&rb.maps()[k], &ra.maps()[k]);
                    for r in 0..bm.rows() {
                        for c in 0..bm.cols() {
                            e.set(r, c, bm.get(r, c));
                        }
                    }
                    for r in 0..am.rows() {
                        for c in 0..am.cols() {
                            e.set(bt + r, bs + c, am.get(r, c));
                        }
                    }
                    for r in 0..zr {
                        for c in 0..zc {
                            e.set(r, bs + c, digits[offset + r * zc + c]);
                        }
                    }
                    offset += zr * zc;
                    e
                })
                .collect();
            let ext = super::Representation::new(quiver, dim.clone(), maps)?;
            *tally.entry(self.catalog.classify(&ext)?).or_default() += 1;
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < p {
                    break;
                }
                *d = 0;
            }
        }
        let coset: u32 = ra.dim().0.iter().zip(&rb.dim().0).map(|(x, y)| x * y).sum::<u32>() - self.hom_dim(a, b);
        let coset = BigUint::from(p).pow(coset);
        tally
            .into_iter()
            .map(|(m, n)| {
                let (quot, rem) = BigUint::from(n).div_rem(&coset);
                if rem.is_zero() {
                    Ok((m, quot))
                } else {
                    Err(RepError::NonIntegral(a, b, m))
                }
            })
            .collect()
    }

    /// `a_M q^{ext(M, M)}`: automorphisms in the 1-periodic derived category.
    pub fn derived_aut(&self, m: ClassId) -> Result<BigUint, RepError> {
        Ok(&self.aut[m] * BigUint::from(self.q()).pow(self.ext_dim(m, m)?))
    }

    /// Overwrites one Hall number. Only for negative-control fixtures.
    #[doc(hidden)]
    pub fn corrupt_hall_number(&mut self, a: ClassId, b: ClassId, m: ClassId, value: u64) {
        if value == 0 {
            self.hall.remove(&(a, b, m));
        } else {
            self.hall.insert((a, b, m), value);
        }
        let list = &mut self.filtrations[m];
        list.retain(|&(x, y, _)| (x, y) != (a, b));
        if value != 0 {
            list.push((a, b, value));
            list.sort();
        }
    }

    pub fn is_unit(&self, m: ClassId) -> bool {
        self.aut[m].is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcat::Caps;

    fn tables(quiver: Quiver, p: u32, d: u32) -> HallTables {
        HallTables::build(Catalog::enumerate(&quiver, p, d, Caps::default()).unwrap()).unwrap()
    }

    #[test]
    fn a1_hall_numbers() {
        let t = tables(Quiver::linear(1), 2, 2);
        // ids: 0, S, S^2
        assert_eq!(t.hall_number(1, 1, 2), 3);
        assert_eq!(t.hall_number(0, 2, 2), 1);
        assert_eq!(t.hall_number(2, 0, 2), 1);
        assert_eq!(*t.aut(2), BigUint::from(6u32));
        assert_eq!(t.ext_dim(2, 2).unwrap(), 0);
    }

    #[test]
    fn a2_hall_numbers_and_ext_counts() {
        let t = tables(Quiver::linear(2), 2, 2);
        let c = t.catalog();
        let (s1, s2) = (c.simple(0).unwrap(), c.simple(1).unwrap());
        let p1 = 5;
        let split = 4;
        assert_eq!(t.hall_number(s1, s2, p1), 1);
        assert_eq!(t.hall_number(s2, s1, p1), 0);
        assert_eq!(t.ext_count(s1, s2, p1).unwrap(), BigUint::from(1u32));
        assert_eq!(t.ext_count(s1, s2, split).unwrap(), BigUint::from(1u32));
        assert_eq!(t.ext_dim(s1, s2).unwrap(), 1);
        assert_eq!(t.ext_dim(s2, s1).unwrap(), 0);
        for m in c.ids() {
            assert_eq!(t.hall_number(0, m, m), 1);
            assert_eq!(t.hall_number(m, 0, m), 1);
        }
    }

    #[test]
    fn euler_identity_and_ext_partition() {
        for (quiver, p, d) in [
            (Quiver::linear(2), 2, 3),
            (Quiver::linear(2), 3, 3),
            (Quiver::linear(3), 2, 3),
            (Quiver::kronecker(), 2, 3),
        ] {
            let t = tables(quiver, p, d);
            let c = t.catalog();
            for a in c.ids() {
                for b in c.ids() {
                    assert!(i64::from(t.hom_dim(a, b)) >= t.euler(a, b));
                    let ext = t.ext_dim(a, b).unwrap();
                    if c.total(a) + c.total(b) > d {
                        continue;
                    }
                    let sum: BigUint = c.ids().map(|m| t.ext_count(a, b, m).unwrap()).sum();
                    assert_eq!(sum, BigUint::from(p).pow(ext), "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn cocycle_count_matches_hall_route() {
        for (quiver, p) in [(Quiver::linear(2), 2), (Quiver::linear(2), 3), (Quiver::kronecker(), 2), (Quiver::linear(3), 2)] {
            let t = tables(quiver, p, 3);
            let c = t.catalog();
            for a in c.ids() {
                for b in c.ids() {
                    if c.total(a) + c.total(b) > 3 {
                        continue;
                    }
                    let direct = t.extension_classes(a, b).unwrap();
                    for m in c.ids() {
                        let expected = direct.get(&m).cloned().unwrap_or_default();
                        assert_eq!(t.ext_count(a, b, m).unwrap(), expected, "a={a} b={b} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn corruption_fixture_changes_lookup() {
        let mut t = tables(Quiver::linear(1), 2, 2);
        t.corrupt_hall_number(1, 1, 2, 4);
        assert_eq!(t.hall_number(1, 1, 2), 4);
        assert!(t.filtrations(2).contains(&(1, 1, 4)));
    }
}
