//! The classical Ringel-Hall algebra, in the dual convention
//! `[A] <> [B] = sum_M |Ext^1(A,B)_M| / |Hom(A,B)| [M]`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::coeff::{qpow_rational, Rational};
use crate::element::LinComb;
use crate::error::{Error, Result};
use crate::repcat::{ClassId, HallTables};

pub type HallElement = LinComb<ClassId, Rational>;

pub(crate) fn big(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

pub(crate) fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn check_truncation(tables: &HallTables, needed: u32) -> Result<()> {
    let bound = tables.catalog().max_dim();
    if needed > bound {
        Err(Error::Truncation { needed, bound })
    } else {
        Ok(())
    }
}

/// Structure constant `|Ext^1(A,B)_M| / |Hom(A,B)|`.
pub fn hall_structure_constant(tables: &HallTables, a: ClassId, b: ClassId, m: ClassId) -> Result<Rational> {
    let ext = tables.ext_count(a, b, m)?;
    Ok(big(&ext) / big(&BigUint::from(tables.q()).pow(tables.hom_dim(a, b))))
}

/// The same constant through Riedtmann-Peng: `F^M_{AB} a_A a_B / a_M`.
pub fn riedtmann_peng_constant(tables: &HallTables, a: ClassId, b: ClassId, m: ClassId) -> Rational {
    int(tables.hall_number(a, b, m)) * big(tables.aut(a)) * big(tables.aut(b)) / big(tables.aut(m))
}

fn basis_product(tables: &HallTables, a: ClassId, b: ClassId) -> Result<HallElement> {
    let cat = tables.catalog();
    check_truncation(tables, cat.total(a) + cat.total(b))?;
    let dim = cat.dim(a).add(cat.dim(b));
    let mut out = HallElement::zero();
    for &m in cat.classes_with_dim(&dim) {
        out.add_term(m, hall_structure_constant(tables, a, b, m)?);
    }
    Ok(out)
}

pub fn hall_product(tables: &HallTables, x: &HallElement, y: &HallElement) -> Result<HallElement> {
    x.bilinear(y, |&a, &b| basis_product(tables, a, b))
}

/// Both sides of `sum_X F^X_{AB} F^M_{XC} = sum_Y F^M_{AY} F^Y_{BC}`.
pub fn assoc3(
    tables: &HallTables,
    a: ClassId,
    b: ClassId,
    c: ClassId,
    m: ClassId,
) -> Result<(Rational, Rational)> {
    let cat = tables.catalog();
    check_truncation(tables, cat.total(a) + cat.total(b) + cat.total(c))?;
    let mut left = BigUint::zero();
    let mut right = BigUint::zero();
    for x in cat.ids() {
        left += BigUint::from(tables.hall_number(a, b, x)) * tables.hall_number(x, c, m);
        right += BigUint::from(tables.hall_number(a, x, m)) * tables.hall_number(b, c, x);
    }
    Ok((big(&left), big(&right)))
}

/// Both sides of Green's formula for `(M, N, X, Y)`:
/// `sum_E F^E_{MN} F^E_{XY} / a_E` against
/// `sum_{A,B,C,D} q^{-<A,D>} F^M_{AB} F^N_{CD} F^X_{AC} F^Y_{BD} a_A a_B a_C a_D / (a_M a_N a_X a_Y)`.
pub fn green_check(
    tables: &HallTables,
    m: ClassId,
    n: ClassId,
    x: ClassId,
    y: ClassId,
) -> Result<(Rational, Rational)> {
    let cat = tables.catalog();
    check_truncation(tables, cat.total(m) + cat.total(n))?;
    let e_dim = cat.dim(m).add(cat.dim(n));
    if cat.dim(x).add(cat.dim(y)) != e_dim {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let mut lhs = Rational::zero();
    for &e in cat.classes_with_dim(&e_dim) {
        let f = tables.hall_number(m, n, e) * tables.hall_number(x, y, e);
        if f != 0 {
            lhs += int(f) / big(tables.aut(e));
        }
    }
    let mut rhs = Rational::zero();
    for &(a, b, f_m) in tables.filtrations(m) {
        for &(c, d, f_n) in tables.filtrations(n) {
            let f_x = tables.hall_number(a, c, x);
            let f_y = tables.hall_number(b, d, y);
            if f_x == 0 || f_y == 0 {
                continue;
            }
            let weight = tables.aut(a) * tables.aut(b) * tables.aut(c) * tables.aut(d)
                * BigUint::from(f_m)
                * f_n
                * f_x
                * f_y;
            rhs += big(&weight) * qpow_rational(tables.q(), -tables.euler(a, d));
        }
    }
    let denom = tables.aut(m) * tables.aut(n) * tables.aut(x) * tables.aut(y);
    Ok((lhs, rhs / big(&denom)))
}

pub fn unit() -> HallElement {
    HallElement::basis(0, Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::repcat::{Caps, Catalog};

    fn tables(quiver: Quiver, p: u32, d: u32) -> HallTables {
        HallTables::build(Catalog::enumerate(&quiver, p, d, Caps::default()).unwrap()).unwrap()
    }

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn unit_law() {
        let t = tables(Quiver::linear(2), 2, 2);
        for m in t.catalog().ids() {
            let bm = HallElement::basis(m, Rational::one());
            assert_eq!(hall_product(&t, &unit(), &bm).unwrap(), bm);
            assert_eq!(hall_product(&t, &bm, &unit()).unwrap(), bm);
        }
    }

    #[test]
    fn a2_simple_product() {
        let t = tables(Quiver::linear(2), 2, 2);
        let c = t.catalog();
        let (s1, s2) = (c.simple(0).unwrap(), c.simple(1).unwrap());
        let prod = hall_product(
            &t,
            &HallElement::basis(s1, Rational::one()),
            &HallElement::basis(s2, Rational::one()),
        )
        .unwrap();
        let expected: HallElement = [(4, frac(1, 1)), (5, frac(1, 1))].into_iter().collect();
        assert_eq!(prod, expected);
    }

    #[test]
    fn a1_square_of_simple() {
        let t = tables(Quiver::linear(1), 2, 2);
        let s = HallElement::basis(1, Rational::one());
        let prod = hall_product(&t, &s, &s).unwrap();
        assert_eq!(prod, HallElement::basis(2, frac(1, 2)));
    }

    #[test]
    fn truncation_is_reported() {
        let t = tables(Quiver::linear(1), 2, 2);
        let s2 = HallElement::basis(2, Rational::one());
        let s1 = HallElement::basis(1, Rational::one());
        assert_eq!(
            hall_product(&t, &s2, &s1),
            Err(Error::Truncation { needed: 3, bound: 2 })
        );
    }

    #[test]
    fn assoc3_examples() {
        let t = tables(Quiver::linear(1), 2, 3);
        assert_eq!(assoc3(&t, 0, 0, 0, 0).unwrap(), (frac(1, 1), frac(1, 1)));
        let (l, r) = assoc3(&t, 1, 1, 1, 3).unwrap();
        assert_eq!(l, r);
        // full flags of F_2^3: 7 * 3
        assert_eq!(l, frac(21, 1));
        assert_eq!(assoc3(&t, 1, 1, 0, 3).unwrap(), (Rational::zero(), Rational::zero()));
    }

    #[test]
    fn green_examples() {
        let t = tables(Quiver::linear(2), 2, 2);
        let c = t.catalog();
        let (s1, s2) = (c.simple(0).unwrap(), c.simple(1).unwrap());
        assert_eq!(green_check(&t, 0, 0, 0, 0).unwrap(), (frac(1, 1), frac(1, 1)));
        assert_eq!(green_check(&t, s1, s2, s2, s1).unwrap(), (frac(1, 1), frac(1, 1)));
        assert_eq!(green_check(&t, s1, s2, s1, s1).unwrap(), (Rational::zero(), Rational::zero()));
    }

    #[test]
    fn riedtmann_peng_agrees_with_cocycle_route() {
        for (quiver, p) in [(Quiver::linear(2), 2), (Quiver::linear(2), 3), (Quiver::kronecker(), 2)] {
            let t = tables(quiver, p, 3);
            let c = t.catalog();
            for a in c.ids() {
                for b in c.ids() {
                    if c.total(a) + c.total(b) > 3 {
                        continue;
                    }
                    let direct = t.extension_classes(a, b).unwrap();
                    let hom = big(&BigUint::from(p).pow(t.hom_dim(a, b)));
                    for m in c.ids() {
                        let ext = direct.get(&m).map(big).unwrap_or_default();
                        assert_eq!(riedtmann_peng_constant(&t, a, b, m), ext.clone() / hom.clone());
                        assert_eq!(hall_structure_constant(&t, a, b, m).unwrap(), ext / hom.clone());
                    }
                }
            }
        }
    }
}
