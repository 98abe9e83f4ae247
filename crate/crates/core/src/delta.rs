//! Delta-Hall numbers, the Delta-Hall algebra, derived Hall numbers and `Xi`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::coeff::{QuadField, QuadNumber, Rational};
use crate::element::LinComb;
use crate::error::{Error, Result};
use crate::hall::{big, check_truncation};
use crate::quiver::{doubled_shift, DimVector, Quiver};
use crate::repcat::{Caps, Catalog, ClassId, HallTables};

pub type DeltaElement = LinComb<ClassId>;

/// Elements of the derived Hall algebra in the basis `u_M`.
pub type DerivedElement = LinComb<ClassId>;

/// One hexagon `N -> A -> I -> B -> L -> M -> N` contributing to `F^M_{AB}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeCycle {
    pub l: ClassId,
    pub i: ClassId,
    pub n: ClassId,
    pub a: ClassId,
    pub b: ClassId,
    pub m: ClassId,
    /// `F^B_{LI} F^M_{NL} F^A_{IN}`
    pub count: BigUint,
}

/// `<L,I,N> = <L,I> + <I,I> + <I,N> - <L,N>`.
pub fn lin_bracket(t: &HallTables, l: ClassId, i: ClassId, n: ClassId) -> i64 {
    t.euler(l, i) + t.euler(i, i) + t.euler(i, n) - t.euler(l, n)
}

/// Every triple `(L, I, N)` with `F^B_{LI} F^M_{NL} F^A_{IN} > 0`, found by walking
/// filtrations of `B` and `M`. No dimension filtering.
pub fn three_cycles(t: &HallTables, a: ClassId, b: ClassId, m: ClassId) -> Vec<ThreeCycle> {
    let mut out = Vec::new();
    for &(l, i, f_b) in t.filtrations(b) {
        for &(n, l2, f_m) in t.filtrations(m) {
            if l2 != l {
                continue;
            }
            let f_a = t.hall_number(i, n, a);
            if f_a == 0 {
                continue;
            }
            out.push(ThreeCycle {
                l,
                i,
                n,
                a,
                b,
                m,
                count: BigUint::from(f_b) * f_m * f_a,
            });
        }
    }
    out
}

/// `(A + B - M) / 2`, if it is a dimension vector.
fn middle_dim(t: &HallTables, a: ClassId, b: ClassId, m: ClassId) -> Option<DimVector> {
    let cat = t.catalog();
    let d = doubled_shift(cat.dim(a), cat.dim(b), cat.dim(m));
    d.iter()
        .all(|x| *x >= 0 && x % 2 == 0)
        .then(|| DimVector(d.iter().map(|x| (x / 2) as u32).collect()))
}

fn cycles_filtered(t: &HallTables, a: ClassId, b: ClassId, m: ClassId) -> Vec<ThreeCycle> {
    let Some(mid) = middle_dim(t, a, b, m) else {
        return Vec::new();
    };
    let cat = t.catalog();
    let mut cycles = three_cycles(t, a, b, m);
    cycles.retain(|c| cat.dim(c.i) == &mid);
    cycles
}

fn cycle_weight(t: &HallTables, c: &ThreeCycle) -> Rational {
    big(&(t.aut(c.l) * t.aut(c.i) * t.aut(c.n) * &c.count))
}

/// `F^M_{AB} = sum v^{<L,I,N>} a_L a_I a_N / a_M F^B_{LI} F^M_{NL} F^A_{IN}`.
pub fn delta_hall_number(t: &HallTables, a: ClassId, b: ClassId, m: ClassId) -> QuadNumber {
    let field = t.field();
    let mut total = field.zero();
    for c in cycles_filtered(t, a, b, m) {
        let w = cycle_weight(t, &c) / big(t.aut(m));
        total += &field.vpow(lin_bracket(t, c.l, c.i, c.n)).scale(&w);
    }
    total
}

/// Derived Hall number `G^M_{AB}`: the same three-cycle sum over `a_A a_B`.
pub fn derived_hall_number(t: &HallTables, a: ClassId, b: ClassId, m: ClassId) -> QuadNumber {
    let field = t.field();
    let denom = big(&(t.aut(a) * t.aut(b)));
    let mut total = field.zero();
    for c in cycles_filtered(t, a, b, m) {
        let w = cycle_weight(t, &c) / &denom;
        total += &field.vpow(lin_bracket(t, c.l, c.i, c.n)).scale(&w);
    }
    total
}

/// Classes `M` with `M = A + B - 2I` for some dimension vector `0 <= I <= min(A, B)`.
pub(crate) fn product_support(cat: &Catalog, a: ClassId, b: ClassId) -> Vec<ClassId> {
    let (da, db) = (cat.dim(a), cat.dim(b));
    let bounds: Vec<u32> = da.0.iter().zip(&db.0).map(|(x, y)| *x.min(y)).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; bounds.len()];
    loop {
        let m: Vec<u32> = (0..cur.len()).map(|k| da.0[k] + db.0[k] - 2 * cur[k]).collect();
        out.extend_from_slice(cat.classes_with_dim(&DimVector(m)));
        let mut k = 0;
        while k < cur.len() {
            cur[k] += 1;
            if cur[k] <= bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == cur.len() {
            break;
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn product_support_checked(t: &HallTables, a: ClassId, b: ClassId) -> Result<Vec<ClassId>> {
    let cat = t.catalog();
    check_truncation(t, cat.total(a) + cat.total(b))?;
    Ok(product_support(cat, a, b))
}

/// `ã_M = a_M |Ext^1(M, M)|`.
pub fn derived_aut(t: &HallTables, m: ClassId) -> Result<BigUint> {
    Ok(t.derived_aut(m)?)
}

/// `Xi(u_M) = [M] / a_M`.
pub fn xi_map(t: &HallTables, m: ClassId) -> DeltaElement {
    DeltaElement::basis(m, t.field().rational(Rational::one() / big(t.aut(m))))
}

/// Linear extension of `Xi`.
pub fn xi_apply(t: &HallTables, x: &DerivedElement) -> DeltaElement {
    x.map_basis(|&m, c| Ok::<_, Error>(xi_map(t, m).scaled(c))).expect("infallible")
}

/// `Xi^{-1}([M]) = a_M u_M`.
pub fn xi_inverse(t: &HallTables, x: &DeltaElement) -> DerivedElement {
    x.iter().map(|(&m, c)| (m, c.scale(&big(t.aut(m))))).collect()
}

/// Image of `B_i` in the Delta-Hall algebra: `-v^{-1} [S_i] / a_{S_i}`.
pub fn theta_generator(t: &HallTables, i: usize) -> Result<DeltaElement> {
    let cat = t.catalog();
    if i >= cat.quiver().vertex_count() {
        return Err(Error::Precondition(format!("vertex {i} out of range")));
    }
    let s = cat
        .simple(i)
        .ok_or_else(|| Error::Config("catalog bound must be at least 1".into()))?;
    let coeff = -t.field().vpow(-1).scale(&(Rational::one() / big(t.aut(s))));
    Ok(DeltaElement::basis(s, coeff))
}

/// Derived product `u_A * u_B = sum G^M_{AB} u_M`.
pub fn derived_product(t: &HallTables, x: &DerivedElement, y: &DerivedElement) -> Result<DerivedElement> {
    x.bilinear(y, |&a, &b| {
        Ok(product_support_checked(t, a, b)?
            .into_iter()
            .map(|m| (m, derived_hall_number(t, a, b, m)))
            .collect())
    })
}

/// Hall tables together with every Delta-Hall structure constant `F^M_{AB}` with
/// `|A| + |B| <= D`.
#[derive(Debug, Clone)]
pub struct DeltaAlgebra {
    tables: HallTables,
    products: HashMap<(ClassId, ClassId), Vec<(ClassId, QuadNumber)>>,
}

impl DeltaAlgebra {
    pub fn new(tables: HallTables) -> Self {
        let cat = tables.catalog();
        let bound = cat.max_dim();
        let pairs: Vec<(ClassId, ClassId)> = cat
            .ids()
            .flat_map(|a| cat.ids().map(move |b| (a, b)))
            .filter(|&(a, b)| cat.total(a) + cat.total(b) <= bound)
            .collect();
        let products = pairs
            .par_iter()
            .map(|&(a, b)| {
                let terms: Vec<(ClassId, QuadNumber)> = product_support(cat, a, b)
                    .into_iter()
                    .map(|m| (m, delta_hall_number(&tables, a, b, m)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                ((a, b), terms)
            })
            .collect();
        DeltaAlgebra { tables, products }
    }

    /// Enumerates the catalog, fills the tables and the structure constants.
    pub fn build(quiver: &Quiver, q: u64, max_dim: u32, caps: Caps) -> Result<Self> {
        let field = QuadField::new(q)?;
        let catalog = Catalog::enumerate(quiver, field.q(), max_dim, caps)?;
        Ok(Self::new(HallTables::build(catalog)?))
    }

    pub fn tables(&self) -> &HallTables {
        &self.tables
    }

    pub fn catalog(&self) -> &Catalog {
        self.tables.catalog()
    }

    pub fn field(&self) -> QuadField {
        self.tables.field()
    }

    /// Nonzero `(M, F^M_{AB})` for a basis pair.
    pub fn structure(&self, a: ClassId, b: ClassId) -> Result<&[(ClassId, QuadNumber)]> {
        let cat = self.catalog();
        check_truncation(&self.tables, cat.total(a) + cat.total(b))?;
        Ok(self.products.get(&(a, b)).map_or(&[], Vec::as_slice))
    }

    pub fn coeff(&self, a: ClassId, b: ClassId, m: ClassId) -> QuadNumber {
        match self.products.get(&(a, b)) {
            Some(terms) => terms
                .iter()
                .find(|(x, _)| *x == m)
                .map_or_else(|| self.field().zero(), |(_, c)| c.clone()),
            None => delta_hall_number(&self.tables, a, b, m),
        }
    }

    pub fn basis(&self, m: ClassId) -> DeltaElement {
        DeltaElement::basis(m, self.field().one())
    }

    pub fn unit(&self) -> DeltaElement {
        self.basis(self.catalog().zero())
    }

    pub fn product(&self, x: &DeltaElement, y: &DeltaElement) -> Result<DeltaElement> {
        x.bilinear(y, |&a, &b| Ok(self.structure(a, b)?.iter().cloned().collect()))
    }

    /// Both sides of `sum_X F^X_{AB} F^M_{XC} = sum_Y F^M_{AY} F^Y_{BC}` for all `M` at once.
    pub fn assoc_sides(&self, a: ClassId, b: ClassId, c: ClassId) -> Result<(DeltaElement, DeltaElement)> {
        let (xa, xb, xc) = (self.basis(a), self.basis(b), self.basis(c));
        let left = self.product(&self.product(&xa, &xb)?, &xc)?;
        let right = self.product(&xa, &self.product(&xb, &xc)?)?;
        Ok((left, right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::QuadNumber;

    fn alg(quiver: Quiver, q: u64, d: u32) -> DeltaAlgebra {
        DeltaAlgebra::build(&quiver, q, d, Caps::default()).unwrap()
    }

    fn qn(a: (i64, i64), b: (i64, i64), q: u32) -> QuadNumber {
        QuadNumber::from_parts(
            Rational::new(a.0.into(), a.1.into()),
            Rational::new(b.0.into(), b.1.into()),
            q,
        )
    }

    #[test]
    fn brackets() {
        let a = alg(Quiver::linear(1), 2, 2);
        let t = a.tables();
        assert_eq!(lin_bracket(t, 1, 0, 1), -1);
        assert_eq!(lin_bracket(t, 0, 1, 0), 1);
        assert_eq!(lin_bracket(t, 0, 0, 0), 0);
    }

    #[test]
    fn a1_numbers() {
        let a = alg(Quiver::linear(1), 2, 2);
        let t = a.tables();
        assert_eq!(delta_hall_number(t, 1, 1, 2), qn((0, 1), (1, 4), 2));
        assert_eq!(delta_hall_number(t, 1, 1, 0), qn((0, 1), (1, 1), 2));
        assert_eq!(derived_hall_number(t, 1, 1, 2), qn((0, 1), (3, 2), 2));
        assert_eq!(derived_hall_number(t, 1, 1, 0), qn((0, 1), (1, 1), 2));
        for m in t.catalog().ids() {
            assert!(derived_hall_number(t, 0, m, m).is_one());
        }
    }

    #[test]
    fn a1_square() {
        let a = alg(Quiver::linear(1), 2, 2);
        let s = a.basis(1);
        let expected: DeltaElement =
            [(0, qn((0, 1), (1, 1), 2)), (2, qn((0, 1), (1, 4), 2))].into_iter().collect();
        assert_eq!(a.product(&s, &s).unwrap(), expected);
    }

    #[test]
    fn a2_numbers_and_products() {
        let a = alg(Quiver::linear(2), 2, 2);
        let t = a.tables();
        let (s1, s2, p1) = (2, 1, 5);
        assert!(delta_hall_number(t, s1, s2, p1).is_one());
        assert!(delta_hall_number(t, s2, s1, p1).is_zero());
        let prod = a.product(&a.basis(s2), &a.basis(s1)).unwrap();
        assert_eq!(prod, DeltaElement::basis(4, qn((0, 1), (1, 1), 2)));
    }

    #[test]
    fn unit_laws() {
        let a = alg(Quiver::linear(2), 3, 2);
        for m in a.catalog().ids() {
            let x = a.basis(m);
            assert_eq!(a.product(&a.unit(), &x).unwrap(), x);
            assert_eq!(a.product(&x, &a.unit()).unwrap(), x);
        }
    }

    #[test]
    fn truncation() {
        let a = alg(Quiver::linear(1), 2, 2);
        assert_eq!(
            a.product(&a.basis(2), &a.basis(1)),
            Err(Error::Truncation { needed: 3, bound: 2 })
        );
    }

    #[test]
    fn derived_aut_values() {
        let a1 = alg(Quiver::linear(1), 2, 1);
        assert_eq!(derived_aut(a1.tables(), 1).unwrap(), BigUint::one());
        assert_eq!(derived_aut(a1.tables(), 0).unwrap(), BigUint::one());
        let a2 = alg(Quiver::linear(2), 2, 2);
        assert_eq!(derived_aut(a2.tables(), 5).unwrap(), BigUint::one());
    }

    #[test]
    fn xi_examples() {
        let a = alg(Quiver::linear(1), 2, 2);
        let t = a.tables();
        assert_eq!(xi_map(t, 0), a.unit());
        assert_eq!(xi_map(t, 2), DeltaElement::basis(2, qn((1, 6), (0, 1), 2)));
        let u = DerivedElement::basis(1, t.field().one());
        let lhs = xi_apply(t, &derived_product(t, &u, &u).unwrap());
        let rhs = a.product(&xi_apply(t, &u), &xi_apply(t, &u)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(xi_inverse(t, &xi_apply(t, &u)), u);
    }

    #[test]
    fn theta_examples() {
        let a1 = alg(Quiver::linear(1), 2, 1);
        assert_eq!(theta_generator(a1.tables(), 0).unwrap(), DeltaElement::basis(1, qn((0, 1), (-1, 2), 2)));
        let a2 = alg(Quiver::linear(2), 2, 1);
        assert_eq!(theta_generator(a2.tables(), 0).unwrap(), DeltaElement::basis(2, qn((0, 1), (-1, 2), 2)));
        let a2 = alg(Quiver::linear(2), 3, 1);
        assert_eq!(theta_generator(a2.tables(), 0).unwrap(), DeltaElement::basis(2, qn((0, 1), (-1, 6), 3)));
        assert!(theta_generator(a2.tables(), 5).is_err());
    }

    #[test]
    fn support_matches_three_cycles() {
        let a = alg(Quiver::linear(2), 2, 3);
        let t = a.tables();
        let cat = t.catalog();
        for x in cat.ids() {
            for y in cat.ids() {
                if cat.total(x) + cat.total(y) > 3 {
                    continue;
                }
                let support = product_support(cat, x, y);
                for m in cat.ids() {
                    let any = !three_cycles(t, x, y, m).is_empty();
                    if any {
                        assert!(support.contains(&m));
                    }
                }
            }
        }
    }
}
