//! Images of the universal iquantum group generators and relation instances.

use num_traits::One;

use crate::coeff::{QuadField, QuadNumber, Rational};
use crate::delta::{theta_generator, DeltaElement};
use crate::error::{Error, Result};
use crate::extended::{ExtElement, ExtLabel, ExtendedAlgebra};
use crate::hall::{big, int};
use crate::quiver::K0Class;

/// `b_i = -1/(q-1) v^{-<S_i,S_i>} [S_i]` and `k_i = -q^{-1} [K_i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorImages {
    pub b: Vec<ExtElement>,
    pub k: Vec<ExtElement>,
}

pub fn make_images(ext: &ExtendedAlgebra) -> Result<GeneratorImages> {
    let t = ext.tables();
    let cat = t.catalog();
    let n = cat.quiver().vertex_count();
    let field = t.field();
    let q = i64::from(t.q());
    let mut b = Vec::with_capacity(n);
    let mut k = Vec::with_capacity(n);
    for i in 0..n {
        let s = cat
            .simple(i)
            .ok_or_else(|| Error::Config("catalog bound must be at least 1".into()))?;
        let coeff = field.vpow(-t.euler(s, s)).scale(&Rational::new((-1).into(), (q - 1).into()));
        b.push(ExtElement::basis(ExtLabel::new(s, &K0Class::zero(n)), coeff));
        let e_i = K0Class(cat.quiver().unit_vector(i).0.iter().map(|&x| i64::from(x)).collect());
        k.push(ExtElement::basis(
            ExtLabel::new(cat.zero(), &e_i),
            field.rational(Rational::new((-1).into(), q.into())),
        ));
    }
    Ok(GeneratorImages { b, k })
}

/// Images `-v^{-1} [S_i] / a_{S_i}` in the plain Delta-Hall algebra.
pub fn plain_images(ext: &ExtendedAlgebra) -> Result<Vec<DeltaElement>> {
    let n = ext.tables().quiver().vertex_count();
    (0..n).map(|i| theta_generator(ext.tables(), i)).collect()
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// `k_i k_j = k_j k_i`, `k_i k_j = q^{-2} [K_{e_i + e_j}]`, and `k_i` commutes with
/// every `[M][K_0]` in the truncation.
pub fn check_k_relations(ext: &ExtendedAlgebra, images: &GeneratorImages) -> Result<RelationReport> {
    let t = ext.tables();
    let cat = t.catalog();
    let n = images.k.len();
    let q = t.q();
    let mut report = RelationReport::default();
    for i in 0..n {
        for j in 0..n {
            let ij = ext.product(&images.k[i], &images.k[j])?;
            let ji = ext.product(&images.k[j], &images.k[i])?;
            report.record(ij == ji, || format!("k_{i} k_{j} != k_{j} k_{i}"));
            let mut sum = K0Class::zero(n);
            sum.0[i] += 1;
            sum.0[j] += 1;
            let expected = ext
                .k_element(&sum)
                .scaled(&t.field().rational(Rational::new(1.into(), (u64::from(q) * u64::from(q)).into())));
            report.record(ij == expected, || format!("k_{i} k_{j} != q^-2 [K_(e_{i}+e_{j})]"));
        }
        for m in cat.ids() {
            let x = ext.basis(m, &K0Class::zero(n));
            let left = ext.product(&images.k[i], &x)?;
            let right = ext.product(&x, &images.k[i])?;
            report.record(left == right, || format!("k_{i} does not commute with [{m}]"));
        }
    }
    Ok(report)
}

fn check_pair(ext: &ExtendedAlgebra, images: &GeneratorImages, i: usize, j: usize) -> Result<usize> {
    let n = images.b.len();
    if i >= n || j >= n {
        return Err(Error::Precondition(format!("vertex pair ({i}, {j}) out of range")));
    }
    if i == j {
        return Err(Error::Precondition("pair needs two distinct vertices".into()));
    }
    Ok(ext.tables().quiver().edge_multiplicity(i, j))
}

/// `b_i b_j = b_j b_i`. Requires `i != j` and no arrows between them.
pub fn check_commuting_pair(ext: &ExtendedAlgebra, images: &GeneratorImages, i: usize, j: usize) -> Result<bool> {
    let n_ij = check_pair(ext, images, i, j)?;
    if n_ij != 0 {
        return Err(Error::Precondition(format!("vertices {i} and {j} are joined by {n_ij} arrows")));
    }
    let (bi, bj) = (&images.b[i], &images.b[j]);
    Ok(ext.product(bi, bj)? == ext.product(bj, bi)?)
}

/// `b_i^2 b_j`, `b_i b_j b_i` and `b_j b_i^2`.
pub fn rank2_products(ext: &ExtendedAlgebra, images: &GeneratorImages, i: usize, j: usize) -> Result<[ExtElement; 3]> {
    check_pair(ext, images, i, j)?;
    let (bi, bj) = (&images.b[i], &images.b[j]);
    let bibi = ext.product(bi, bi)?;
    let bibj = ext.product(bi, bj)?;
    Ok([
        ext.product(&bibi, bj)?,
        ext.product(&bibj, bi)?,
        ext.product(&ext.product(bj, bi)?, bi)?,
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rank2Relation {
    pub i: usize,
    pub j: usize,
    pub n_ij: usize,
    /// `R = lambda k_i b_j`, when such a scalar exists.
    pub lambda: Option<QuadNumber>,
    /// `R - lambda k_i b_j`, or all of `R` when no scalar fits.
    pub residual: ExtElement,
}

/// Solves `b_i^2 b_j - [2] b_i b_j b_i + b_j b_i^2 = lambda k_i b_j`.
pub fn discover_rank2_relation(
    ext: &ExtendedAlgebra,
    images: &GeneratorImages,
    i: usize,
    j: usize,
) -> Result<Rank2Relation> {
    let n_ij = check_pair(ext, images, i, j)?;
    if n_ij != 1 {
        return Err(Error::Precondition(format!("rank-2 template needs one arrow between {i} and {j}, found {n_ij}")));
    }
    let cat = ext.tables().catalog();
    let needed = 2 * cat.total(cat.simple(i).unwrap_or(0)) + cat.total(cat.simple(j).unwrap_or(0));
    if cat.max_dim() < needed {
        return Err(Error::Truncation { needed, bound: cat.max_dim() });
    }
    let field = ext.tables().field();
    let [p1, p2, p3] = rank2_products(ext, images, i, j)?;
    let r = p1.minus(&p2.scaled(&field.qint(2))).plus(&p3);
    let target = ext.product(&images.k[i], &images.b[j])?;
    let lambda = target.iter().next().and_then(|(label, c)| {
        let num = r.get(label).cloned().unwrap_or_else(|| field.zero());
        num.try_div(c).ok()
    });
    let (lambda, residual) = match lambda {
        Some(l) => {
            let residual = r.minus(&target.scaled(&l));
            if residual.is_zero() {
                (Some(l), residual)
            } else {
                (None, r)
            }
        }
        None => (None, r),
    };
    Ok(Rank2Relation { i, j, n_ij, lambda, residual })
}

/// Finds `c` rational and `k` in `[-bound, bound]` with `value_s = c v_s^k` at every
/// specialization `s`, checking each candidate exactly.
pub fn fit_monomial(values: &[QuadNumber], bound: i64) -> Option<(Rational, i64)> {
    let first = values.first()?;
    for k in -bound..=bound {
        let Ok(c) = first.try_div(&first.field().vpow(k)) else {
            continue;
        };
        if !c.is_rational() {
            continue;
        }
        let c = c.a().clone();
        if values.iter().all(|x| *x == x.field().vpow(k).scale(&c)) {
            return Some((c, k));
        }
    }
    None
}

/// `c v^k` in the field.
pub fn eval_monomial(field: QuadField, c: &Rational, k: i64) -> QuadNumber {
    field.vpow(k).scale(c)
}

/// `a_{S_i} / (q - 1)`: the extended image of `B_i` reduces to this multiple of the plain one.
pub fn image_ratio(ext: &ExtendedAlgebra, i: usize) -> Result<Rational> {
    let t = ext.tables();
    let s = t.catalog().simple(i).ok_or_else(|| Error::Config("catalog bound must be at least 1".into()))?;
    Ok(big(t.aut(s)) / (int(u64::from(t.q())) - Rational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::DeltaAlgebra;
    use crate::extended::{reduce_phi, Lattice};
    use crate::quiver::{HalfK0Class, Quiver};
    use crate::repcat::Caps;

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
    fn images_a1() {
        let d = alg(Quiver::linear(1), 2, 1);
        let e = ExtendedAlgebra::new(&d, Lattice::Integral);
        let im = make_images(&e).unwrap();
        assert_eq!(im.b[0], ExtElement::basis(ExtLabel::new(1, &K0Class(vec![0])), qn((0, 1), (-1, 2), 2)));
        assert_eq!(im.k[0], ExtElement::basis(ExtLabel::new(0, &K0Class(vec![1])), qn((-1, 2), (0, 1), 2)));
    }

    #[test]
    fn images_a2_q3() {
        let d = alg(Quiver::linear(2), 3, 1);
        let e = ExtendedAlgebra::new(&d, Lattice::Integral);
        let im = make_images(&e).unwrap();
        let s2 = d.catalog().simple(1).unwrap();
        let label = ExtLabel::new(s2, &K0Class(vec![0, 0]));
        assert_eq!(im.b[1].get(&label), Some(&qn((0, 1), (-1, 6), 3)));
        let plain = plain_images(&e).unwrap();
        for i in 0..2 {
            let reduced = reduce_phi(&im.b[i]).unwrap();
            let scale = image_ratio(&e, i).unwrap();
            assert_eq!(plain[i].scaled(&d.field().rational(scale)), reduced);
        }
    }

    #[test]
    fn k_relations_and_negative_control() {
        let d = alg(Quiver::linear(2), 2, 2);
        let e = ExtendedAlgebra::new(&d, Lattice::Integral);
        let im = make_images(&e).unwrap();
        let report = check_k_relations(&e, &im).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        fn broken(d: &[i64], a: &HalfK0Class, b: &HalfK0Class) -> HalfK0Class {
            a.add(a).add(b).add_doubled(d)
        }
        let bad = e.clone().with_shift_rule(broken);
        assert!(!check_k_relations(&bad, &im).unwrap().passed());
    }

    #[test]
    fn commuting_pairs() {
        let d = alg(Quiver::disjoint_points(2), 2, 2);
        let e = ExtendedAlgebra::new(&d, Lattice::Integral);
        let im = make_images(&e).unwrap();
        assert!(check_commuting_pair(&e, &im, 0, 1).unwrap());
        assert!(matches!(check_commuting_pair(&e, &im, 0, 0), Err(Error::Precondition(_))));
        let d = alg(Quiver::linear(2), 2, 2);
        let e = ExtendedAlgebra::new(&d, Lattice::Integral);
        let im = make_images(&e).unwrap();
        assert!(matches!(check_commuting_pair(&e, &im, 0, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn monomial_fit() {
        let f2 = QuadField::new(2).unwrap();
        let f3 = QuadField::new(3).unwrap();
        let c = Rational::new((-3).into(), 2.into());
        let values = [eval_monomial(f2, &c, -3), eval_monomial(f3, &c, -3)];
        assert_eq!(fit_monomial(&values, 10), Some((c, -3)));
        let mixed = [f2.integer(1) + f2.vpow(1), f3.integer(1) + f3.vpow(1)];
        assert_eq!(fit_monomial(&mixed, 10), None);
    }
}

