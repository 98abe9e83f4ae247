//! Extended, twisted and half-`K_0` Delta-Hall algebras.

use std::fmt;

use num_traits::One;
use serde_json::Value;

use crate::coeff::{QuadNumber, Rational};
use crate::delta::{three_cycles, DeltaAlgebra, DeltaElement, DerivedElement};
use crate::element::LinComb;
use crate::error::{Error, Result};
use crate::hall::big;
use crate::quiver::{doubled_shift, DimVector, HalfK0Class, K0Class, Quiver, QuiverError};
use crate::repcat::{ClassId, HallTables};

/// Basis label `[M][K_alpha]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtLabel {
    pub class: ClassId,
    pub kappa: HalfK0Class,
}

impl ExtLabel {
    pub fn new(class: ClassId, kappa: &K0Class) -> Self {
        ExtLabel { class, kappa: HalfK0Class::from_k0(kappa) }
    }

    pub fn half(class: ClassId, kappa: HalfK0Class) -> Self {
        ExtLabel { class, kappa }
    }
}

impl fmt::Display for ExtLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}][K{}]", self.class, self.kappa)
    }
}

pub type ExtElement = LinComb<ExtLabel>;

/// Elements of `Q(sqrt q)[1/2 K_0]` tensored with the Delta-Hall (or derived) algebra.
pub type TensorElement = LinComb<(ClassId, HalfK0Class)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lattice {
    /// `alpha` in `K_0`
    Integral,
    /// `alpha` in `1/2 K_0`
    Half,
}

/// `phi(alpha, beta) = v^{alpha^T T beta}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistForm {
    t: Vec<Vec<i64>>,
}

impl TwistForm {
    pub fn new(t: Vec<Vec<i64>>) -> Result<Self> {
        let n = t.len();
        if t.iter().any(|row| row.len() != n) {
            return Err(Error::Config("twist matrix must be square".into()));
        }
        Ok(TwistForm { t })
    }

    pub fn zero(n: usize) -> Self {
        TwistForm { t: vec![vec![0; n]; n] }
    }

    /// `T = -E` with `E` the Euler matrix, so that `phi(alpha, beta) = v^{-<alpha, beta>}`.
    pub fn semi_derived(quiver: &Quiver) -> Self {
        let t = quiver
            .euler_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(|x| -x).collect())
            .collect();
        TwistForm { t }
    }

    /// Parses `{"T": [[..], ..]}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let rows = value
            .get("T")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Config("twist JSON needs an array field \"T\"".into()))?;
        let t = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Config("twist rows must be arrays".into()))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| Error::Config("twist entries must be integers".into())))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(t)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.t
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn eval(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                s += xi * self.t[i][j] * yj;
            }
        }
        s
    }
}

/// Doubled `K`-label of a product term from the doubled shift `A + B - M` and the
/// doubled factor labels.
pub type ShiftRule = fn(&[i64], &HalfK0Class, &HalfK0Class) -> HalfK0Class;

fn standard_shift(d: &[i64], alpha: &HalfK0Class, beta: &HalfK0Class) -> HalfK0Class {
    alpha.add(beta).add_doubled(d)
}

fn dim_k0(d: &DimVector) -> Vec<i64> {
    d.0.iter().map(|&x| i64::from(x)).collect()
}

fn add_vec(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// `[A][K_alpha] * [B][K_beta] = phi(A + 2 alpha, B + 2 beta) sum F^M_{AB} [M][K_{(A+B-M)/2 + alpha + beta}]`.
///
/// Without a twist this is the extended algebra; with [`Lattice::Half`] labels may be
/// half-integral.
#[derive(Clone)]
pub struct ExtendedAlgebra<'a> {
    delta: &'a DeltaAlgebra,
    lattice: Lattice,
    twist: Option<TwistForm>,
    shift: ShiftRule,
}

impl<'a> ExtendedAlgebra<'a> {
    pub fn new(delta: &'a DeltaAlgebra, lattice: Lattice) -> Self {
        ExtendedAlgebra { delta, lattice, twist: None, shift: standard_shift }
    }

    pub fn twisted(delta: &'a DeltaAlgebra, twist: TwistForm) -> Result<Self> {
        let n = delta.catalog().quiver().vertex_count();
        if twist.dim() != n {
            return Err(Error::Config(format!("twist matrix is {0}x{0}, quiver has {n} vertices", twist.dim())));
        }
        Ok(ExtendedAlgebra { delta, lattice: Lattice::Integral, twist: Some(twist), shift: standard_shift })
    }

    /// Replaces the `K`-shift rule. Only for negative-control fixtures.
    #[doc(hidden)]
    pub fn with_shift_rule(mut self, shift: ShiftRule) -> Self {
        self.shift = shift;
        self
    }

    pub fn delta(&self) -> &'a DeltaAlgebra {
        self.delta
    }

    pub fn tables(&self) -> &'a HallTables {
        self.delta.tables()
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn twist(&self) -> Option<&TwistForm> {
        self.twist.as_ref()
    }

    fn rank(&self) -> usize {
        self.delta.catalog().quiver().vertex_count()
    }

    pub fn check_label(&self, label: &ExtLabel) -> Result<()> {
        if self.lattice == Lattice::Integral && !label.kappa.is_integral() {
            return Err(Error::HalfIntegral(label.kappa.to_string()));
        }
        Ok(())
    }

    pub fn basis(&self, class: ClassId, kappa: &K0Class) -> ExtElement {
        ExtElement::basis(ExtLabel::new(class, kappa), self.delta.field().one())
    }

    pub fn k_element(&self, kappa: &K0Class) -> ExtElement {
        self.basis(self.delta.catalog().zero(), kappa)
    }

    pub fn unit(&self) -> ExtElement {
        self.k_element(&K0Class::zero(self.rank()))
    }

    fn basis_product(&self, x: &ExtLabel, y: &ExtLabel) -> Result<ExtElement> {
        self.check_label(x)?;
        self.check_label(y)?;
        let cat = self.delta.catalog();
        let field = self.delta.field();
        let scale = match &self.twist {
            Some(t) => {
                let lhs = add_vec(&dim_k0(cat.dim(x.class)), &x.kappa.doubled);
                let rhs = add_vec(&dim_k0(cat.dim(y.class)), &y.kappa.doubled);
                field.vpow(t.eval(&lhs, &rhs))
            }
            None => field.one(),
        };
        let mut out = ExtElement::zero();
        for (m, f) in self.delta.structure(x.class, y.class)? {
            let d = doubled_shift(cat.dim(x.class), cat.dim(y.class), cat.dim(*m));
            if d.iter().any(|v| v % 2 != 0) {
                return Err(Error::Quiver(QuiverError::Parity {
                    a: cat.dim(x.class).0.clone(),
                    b: cat.dim(y.class).0.clone(),
                    m: cat.dim(*m).0.clone(),
                }));
            }
            let kappa = (self.shift)(&d, &x.kappa, &y.kappa);
            out.add_term(ExtLabel::half(*m, kappa), f * &scale);
        }
        Ok(out)
    }

    pub fn product(&self, x: &ExtElement, y: &ExtElement) -> Result<ExtElement> {
        x.bilinear(y, |a, b| self.basis_product(a, b))
    }

    /// True iff `[0][K_alpha]` commutes with every `[M][K_0]` in the truncation.
    pub fn central_check(&self, alpha: &K0Class) -> Result<bool> {
        let k = self.k_element(alpha);
        let zero = K0Class::zero(self.rank());
        for m in self.delta.catalog().ids() {
            let x = self.basis(m, &zero);
            if self.product(&k, &x)? != self.product(&x, &k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Phi~([M][K_alpha]) = [M]`.
pub fn reduce_phi(x: &ExtElement) -> Result<DeltaElement> {
    let mut out = DeltaElement::zero();
    for (label, c) in x.iter() {
        if !label.kappa.is_integral() {
            return Err(Error::HalfIntegral(label.kappa.to_string()));
        }
        out.add_term(label.class, c.clone());
    }
    Ok(out)
}

/// `deg([M][K_alpha]) = M + 2 alpha`.
pub fn degree(t: &HallTables, label: &ExtLabel) -> K0Class {
    K0Class(add_vec(&dim_k0(t.catalog().dim(label.class)), &label.kappa.doubled))
}

/// `[M][K_{-M/2}]`, the degree-zero basis vector over `M`.
pub fn degree_zero_label(t: &HallTables, m: ClassId) -> ExtLabel {
    let d: Vec<i64> = dim_k0(t.catalog().dim(m)).into_iter().map(|x| -x).collect();
    ExtLabel::half(m, HalfK0Class::half_of(&d))
}

/// `Xi~([M] * [K_alpha]) = v^{-<M,M>} [M][K_alpha]`, extended linearly from the
/// iHall basis (labels reused for `[M] * [K_alpha]`).
pub fn xi_tilde(t: &HallTables, x: &ExtElement) -> ExtElement {
    x.iter()
        .map(|(l, c)| (l.clone(), c * &t.field().vpow(-t.euler(l.class, l.class))))
        .collect()
}

pub fn xi_tilde_inverse(t: &HallTables, x: &ExtElement) -> ExtElement {
    x.iter()
        .map(|(l, c)| (l.clone(), c * &t.field().vpow(t.euler(l.class, l.class))))
        .collect()
}

/// `F~^M_{AB} = sum v^{-<A,B>} q^{<N,L>} a_L a_I a_N / a_M F^B_{LI} F^M_{NL} F^A_{IN}`.
pub fn tilde_hall_number(t: &HallTables, a: ClassId, b: ClassId, m: ClassId) -> QuadNumber {
    let field = t.field();
    let mut total = field.zero();
    for c in three_cycles(t, a, b, m) {
        let w = big(&(t.aut(c.l) * t.aut(c.i) * t.aut(c.n) * &c.count)) / big(t.aut(m));
        total += &field.vpow(2 * t.euler(c.n, c.l) - t.euler(a, b)).scale(&w);
    }
    total
}

/// Exponent `<M,M> - <A,A> - <B,B>` relating `F~` and the Delta-Hall number.
pub fn lemma_exponent(t: &HallTables, a: ClassId, b: ClassId, m: ClassId) -> i64 {
    t.euler(m, m) - t.euler(a, a) - t.euler(b, b)
}

/// `([A] * [K_alpha]) * ([B] * [K_beta]) = sum F~^M_{AB} [M] * [K_{(A+B-M)/2 + alpha + beta}]`
/// in the iHall algebra.
pub fn ihall_product(delta: &DeltaAlgebra, x: &ExtElement, y: &ExtElement) -> Result<ExtElement> {
    let t = delta.tables();
    let cat = t.catalog();
    x.bilinear(y, |p, r| {
        let mut out = ExtElement::zero();
        for m in crate::delta::product_support_checked(t, p.class, r.class)? {
            let f = tilde_hall_number(t, p.class, r.class, m);
            if f.is_zero() {
                continue;
            }
            let d = doubled_shift(cat.dim(p.class), cat.dim(r.class), cat.dim(m));
            out.add_term(ExtLabel::half(m, standard_shift(&d, &p.kappa, &r.kappa)), f);
        }
        Ok(out)
    })
}

/// Structure constants of the semi-derived Hall algebra in the basis `[M] <> [K_alpha]`,
/// computed by the explicit formula `v^{-<A + 2 alpha, B + 2 beta>} F~`.
pub fn semi_derived_product(delta: &DeltaAlgebra, x: &ExtElement, y: &ExtElement) -> Result<ExtElement> {
    let t = delta.tables();
    let cat = t.catalog();
    let quiver = cat.quiver();
    x.bilinear(y, |p, r| {
        let lhs = add_vec(&dim_k0(cat.dim(p.class)), &p.kappa.doubled);
        let rhs = add_vec(&dim_k0(cat.dim(r.class)), &r.kappa.doubled);
        let scale = t.field().vpow(-quiver.euler_form(&lhs, &rhs)?);
        ihall_product(delta, &ExtElement::basis(p.clone(), scale), &ExtElement::basis(r.clone(), t.field().one()))
    })
}

/// `Phi_(x)([M][K_alpha]) = [M] (x) [K_{M/2 + alpha}]`.
pub fn phi_tensor(t: &HallTables, x: &ExtElement) -> TensorElement {
    x.iter()
        .map(|(l, c)| ((l.class, l.kappa.add_doubled(&dim_k0(t.catalog().dim(l.class)))), c.clone()))
        .collect()
}

pub fn phi_tensor_inverse(t: &HallTables, x: &TensorElement) -> ExtElement {
    x.iter()
        .map(|((m, k), c)| (ExtLabel::half(*m, k.sub_doubled(&dim_k0(t.catalog().dim(*m)))), c.clone()))
        .collect()
}

/// `(x (x) u) * (y (x) w) = (x * y) (x) (u w)` with the Delta-Hall product on the left factor.
pub fn tensor_product(delta: &DeltaAlgebra, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    x.bilinear(y, |(a, ka), (b, kb)| {
        let k = ka.add(kb);
        Ok(delta.structure(*a, *b)?.iter().map(|(m, f)| ((*m, k.clone()), f.clone())).collect())
    })
}

/// `Psi_(x)([M][K_alpha]) = a_M u_M (x) [K_{M/2 + alpha}]`.
pub fn psi_tensor(t: &HallTables, x: &ExtElement) -> TensorElement {
    phi_tensor(t, x).iter().map(|((m, k), c)| ((*m, k.clone()), c.scale(&big(t.aut(*m))))).collect()
}

/// `u_M (x) [K_alpha] -> [M][K_{alpha - M/2}] / a_M`.
pub fn psi_tensor_inverse(t: &HallTables, x: &TensorElement) -> ExtElement {
    let scaled: TensorElement = x
        .iter()
        .map(|((m, k), c)| ((*m, k.clone()), c.scale(&(Rational::one() / big(t.aut(*m))))))
        .collect();
    phi_tensor_inverse(t, &scaled)
}

/// Product on `DH_1 (x) Q(1/2 K_0)` from the derived Hall numbers.
pub fn derived_tensor_product(t: &HallTables, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    x.bilinear(y, |(a, ka), (b, kb)| {
        let k = ka.add(kb);
        let prod = crate::delta::derived_product(
            t,
            &DerivedElement::basis(*a, t.field().one()),
            &DerivedElement::basis(*b, t.field().one()),
        )?;
        Ok(prod.iter().map(|(m, c)| ((*m, k.clone()), c.clone())).collect())
    })
}
