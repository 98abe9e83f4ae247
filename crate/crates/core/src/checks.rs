//! Exhaustive identity sweeps over a truncated catalog.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coeff::QuadNumber;
use crate::delta::{
    derived_hall_number, derived_product, product_support, three_cycles, xi_apply, DeltaAlgebra,
    DerivedElement,
};
use crate::element::LinComb;
use crate::error::{Error, Result};
use crate::extended::{
    degree, degree_zero_label, derived_tensor_product, ihall_product, lemma_exponent, phi_tensor,
    phi_tensor_inverse, psi_tensor, psi_tensor_inverse, reduce_phi, semi_derived_product,
    tensor_product, tilde_hall_number, xi_tilde, ExtElement, ExtLabel, ExtendedAlgebra, Lattice,
    TensorElement, TwistForm,
};
use crate::hall::{assoc3, big, green_check};
use crate::iqg::{
    check_commuting_pair, check_k_relations, discover_rank2_relation, image_ratio, make_images,
    plain_images, rank2_products,
};
use crate::quiver::{HalfK0Class, K0Class};
use crate::repcat::{Catalog, ClassId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Green,
    Assoc,
    ExtAssoc,
    TwistAssoc,
    DerivedIso,
    Central,
    Parity,
    Lemma43,
    Tensor,
    Rank1,
    Rank2,
    Commute,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Green,
        Suite::Assoc,
        Suite::ExtAssoc,
        Suite::TwistAssoc,
        Suite::DerivedIso,
        Suite::Central,
        Suite::Parity,
        Suite::Lemma43,
        Suite::Tensor,
        Suite::Rank1,
        Suite::Rank2,
        Suite::Commute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Green => "green",
            Suite::Assoc => "assoc",
            Suite::ExtAssoc => "ext-assoc",
            Suite::TwistAssoc => "twist-assoc",
            Suite::DerivedIso => "derived-iso",
            Suite::Central => "central",
            Suite::Parity => "parity",
            Suite::Lemma43 => "lemma43",
            Suite::Tensor => "tensor",
            Suite::Rank1 => "rank1",
            Suite::Rank2 => "rank2",
            Suite::Commute => "commute",
        }
    }

    /// Smallest catalog bound the sweep accepts.
    pub fn min_dim(self) -> u32 {
        match self {
            Suite::Green | Suite::Parity | Suite::Lemma43 | Suite::Central | Suite::Rank1 => 1,
            Suite::Rank2 => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown check suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub suite: Suite,
    pub checked: u64,
    pub failures: Vec<Value>,
    /// Suite-specific output that is not pass/fail (relation scalars, exported products).
    pub details: Vec<Value>,
}

impl CheckReport {
    fn new(suite: Suite) -> Self {
        CheckReport { suite, checked: 0, failures: Vec::new(), details: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, part: Part) {
        self.checked += part.checked;
        self.failures.extend(part.failures);
    }

    fn record(&mut self, ok: bool, failure: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    pub fn to_json(&self, delta: &DeltaAlgebra) -> Value {
        json!({
            "suite": self.suite.name(),
            "q": delta.tables().q(),
            "max_dim": delta.catalog().max_dim(),
            "checked": self.checked,
            "passed": self.passed(),
            "failures": self.failures,
            "details": self.details,
        })
    }
}

#[derive(Default)]
struct Part {
    checked: u64,
    failures: Vec<Value>,
}

impl Part {
    fn record(&mut self, ok: bool, failure: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    fn merge(mut self, other: Part) -> Part {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }
}

/// Runs `f` on every item in parallel and merges the parts in item order.
fn sweep<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<Part> + Sync + Send) -> Result<Part> {
    let parts = items.par_iter().map(f).collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().fold(Part::default(), Part::merge))
}

fn coeff_json(c: &QuadNumber) -> Value {
    c.to_json()
}

fn elem_json<K: Ord + Clone + fmt::Debug>(x: &LinComb<K>) -> Value {
    Value::Array(x.iter().map(|(k, c)| json!({"label": format!("{k:?}"), "coeff": coeff_json(c)})).collect())
}

fn ext_json(x: &ExtElement) -> Value {
    Value::Array(
        x.iter()
            .map(|(l, c)| json!({"m": l.class, "kshift": l.kappa.doubled, "coeff": coeff_json(c)}))
            .collect(),
    )
}

fn pairs(cat: &Catalog, bound: u32) -> Vec<(ClassId, ClassId)> {
    cat.ids()
        .flat_map(|a| cat.ids().map(move |b| (a, b)))
        .filter(|&(a, b)| cat.total(a) + cat.total(b) <= bound)
        .collect()
}

fn triples(cat: &Catalog, bound: u32) -> Vec<(ClassId, ClassId, ClassId)> {
    pairs(cat, bound)
        .into_iter()
        .flat_map(|(a, b)| cat.ids().map(move |c| (a, b, c)))
        .filter(|&(a, b, c)| cat.total(a) + cat.total(b) + cat.total(c) <= bound)
        .collect()
}

fn all_triples(cat: &Catalog) -> Vec<(ClassId, ClassId, ClassId)> {
    cat.ids()
        .flat_map(|a| cat.ids().flat_map(move |b| cat.ids().map(move |m| (a, b, m))))
        .collect()
}

/// `0`, every `e_i` and `-e_0`.
pub fn k_labels(n: usize) -> Vec<HalfK0Class> {
    let mut out = vec![HalfK0Class::zero(n)];
    for i in 0..n {
        let mut d = vec![0; n];
        d[i] = 2;
        out.push(HalfK0Class::half_of(&d));
    }
    let mut d = vec![0; n];
    d[0] = -2;
    out.push(HalfK0Class::half_of(&d));
    out
}

/// `0` and every `e_i / 2`.
pub fn half_k_labels(n: usize) -> Vec<HalfK0Class> {
    let mut out = vec![HalfK0Class::zero(n)];
    for i in 0..n {
        let mut d = vec![0; n];
        d[i] = 1;
        out.push(HalfK0Class::half_of(&d));
    }
    out
}

/// Five reproducible integer twist matrices with entries in `[-2, 2]`.
pub fn random_twists(n: usize, seed: u64) -> Vec<TwistForm> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..5)
        .map(|_| {
            let t = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            TwistForm::new(t).expect("square")
        })
        .collect()
}

pub const TWIST_SEED: u64 = 0x5eed;

fn requires(delta: &DeltaAlgebra, suite: Suite) -> Result<()> {
    let d = delta.catalog().max_dim();
    if d < suite.min_dim() {
        return Err(Error::Config(format!(
            "suite {suite} needs --max-dim at least {}, got {d}",
            suite.min_dim()
        )));
    }
    Ok(())
}

/// Runs one suite. `twist` replaces the default twist family of `twist-assoc`.
pub fn run_check(delta: &DeltaAlgebra, suite: Suite, twist: Option<&TwistForm>) -> Result<CheckReport> {
    requires(delta, suite)?;
    let mut report = CheckReport::new(suite);
    match suite {
        Suite::Green => report.absorb(green_suite(delta)?),
        Suite::Assoc => report.absorb(assoc_suite(delta)?),
        Suite::ExtAssoc => {
            report.absorb(ext_assoc(&ExtendedAlgebra::new(delta, Lattice::Integral), &k_labels(rank(delta)))?);
            report.absorb(ext_assoc(&ExtendedAlgebra::new(delta, Lattice::Half), &half_k_labels(rank(delta)))?);
        }
        Suite::TwistAssoc => {
            let forms = match twist {
                Some(t) => vec![t.clone()],
                None => {
                    let mut v = vec![TwistForm::semi_derived(delta.catalog().quiver())];
                    v.extend(random_twists(rank(delta), TWIST_SEED));
                    v
                }
            };
            for form in forms {
                let alg = ExtendedAlgebra::twisted(delta, form)?;
                report.absorb(ext_assoc(&alg, &k_labels(rank(delta)))?);
            }
            let (part, raw_irrational) = semi_derived_suite(delta)?;
            report.absorb(part);
            report.details.push(json!({"raw_basis_irrational_constants": raw_irrational}));
        }
        Suite::DerivedIso => report.absorb(derived_suite(delta)?),
        Suite::Central => report.absorb(central_suite(delta)?),
        Suite::Parity => report.absorb(parity_suite(delta)?),
        Suite::Lemma43 => report.absorb(lemma43_suite(delta)?),
        Suite::Tensor => report.absorb(tensor_suite(delta)?),
        Suite::Rank1 => rank1_suite(delta, &mut report)?,
        Suite::Rank2 => rank2_suite(delta, &mut report)?,
        Suite::Commute => commute_suite(delta, &mut report)?,
    }
    Ok(report)
}

fn rank(delta: &DeltaAlgebra) -> usize {
    delta.catalog().quiver().vertex_count()
}

fn green_suite(delta: &DeltaAlgebra) -> Result<Part> {
    let t = delta.tables();
    let cat = t.catalog();
    let mn = pairs(cat, cat.max_dim());
    sweep(&mn, |&(m, n)| {
        let mut part = Part::default();
        let e_dim = cat.dim(m).add(cat.dim(n));
        for x in cat.ids() {
            for y in cat.ids() {
                if cat.dim(x).add(cat.dim(y)) != e_dim {
                    continue;
                }
                let (l, r) = green_check(t, m, n, x, y)?;
                part.record(l == r, || {
                    json!({"m": m, "n": n, "x": x, "y": y, "lhs": l.to_string(), "rhs": r.to_string()})
                });
            }
        }
        Ok(part)
    })
}

fn assoc_suite(delta: &DeltaAlgebra) -> Result<Part> {
    let t = delta.tables();
    let cat = t.catalog();
    let abc = triples(cat, cat.max_dim());
    let part = sweep(&abc, |&(a, b, c)| {
        let mut part = Part::default();
        let (l, r) = delta.assoc_sides(a, b, c)?;
        part.record(l == r, || json!({"a": a, "b": b, "c": c, "lhs": elem_json(&l), "rhs": elem_json(&r)}));
        let dim = cat.dim(a).add(cat.dim(b)).add(cat.dim(c));
        for &m in cat.classes_with_dim(&dim) {
            let (l, r) = assoc3(t, a, b, c, m)?;
            part.record(l == r, || {
                json!({"a": a, "b": b, "c": c, "m": m, "hall_lhs": l.to_string(), "hall_rhs": r.to_string()})
            });
        }
        Ok(part)
    })?;
    let mut units = Part::default();
    for m in cat.ids() {
        let x = delta.basis(m);
        let ok = delta.product(&delta.unit(), &x)? == x && delta.product(&x, &delta.unit())? == x;
        units.record(ok, || json!({"unit_law": m}));
    }
    Ok(part.merge(units))
}

fn label_triples(cat: &Catalog, ks: &[HalfK0Class]) -> Vec<(ExtLabel, ExtLabel, ExtLabel)> {
    let labels: Vec<ExtLabel> = cat
        .ids()
        .flat_map(|m| ks.iter().map(move |k| ExtLabel::half(m, k.clone())))
        .collect();
    let bound = cat.max_dim();
    let mut out = Vec::new();
    for x in &labels {
        for y in &labels {
            if cat.total(x.class) + cat.total(y.class) > bound {
                continue;
            }
            for z in &labels {
                if cat.total(x.class) + cat.total(y.class) + cat.total(z.class) <= bound {
                    out.push((x.clone(), y.clone(), z.clone()));
                }
            }
        }
    }
    out
}

/// Associativity and unit laws of an extended (possibly twisted or half) algebra.
pub fn ext_assoc_check(alg: &ExtendedAlgebra, ks: &[HalfK0Class]) -> Result<(u64, Vec<Value>)> {
    let part = ext_assoc(alg, ks)?;
    Ok((part.checked, part.failures))
}

fn ext_assoc(alg: &ExtendedAlgebra, ks: &[HalfK0Class]) -> Result<Part> {
    let cat = alg.tables().catalog();
    let one = alg.tables().field().one();
    let cases = label_triples(cat, ks);
    let twist = alg.twist().map(|t| t.matrix().to_vec());
    let part = sweep(&cases, |(x, y, z)| {
        let (ex, ey, ez) = (
            ExtElement::basis(x.clone(), one.clone()),
            ExtElement::basis(y.clone(), one.clone()),
            ExtElement::basis(z.clone(), one.clone()),
        );
        let l = alg.product(&alg.product(&ex, &ey)?, &ez)?;
        let r = alg.product(&ex, &alg.product(&ey, &ez)?)?;
        let mut part = Part::default();
        part.record(l == r, || {
            json!({"x": x.to_string(), "y": y.to_string(), "z": z.to_string(), "twist": twist,
                   "lhs": ext_json(&l), "rhs": ext_json(&r)})
        });
        Ok(part)
    })?;
    let mut units = Part::default();
    for m in cat.ids() {
        for k in ks {
            let x = ExtElement::basis(ExtLabel::half(m, k.clone()), one.clone());
            let ok = alg.product(&alg.unit(), &x)? == x && alg.product(&x, &alg.unit())? == x;
            units.record(ok, || json!({"unit_law": ExtLabel::half(m, k.clone()).to_string()}));
        }
    }
    Ok(part.merge(units))
}

/// Structure constants of the semi-derived Hall algebra, read off the twisted
/// algebra with `phi = v^{-<.,.>}` through `[M] <> [K_a] -> v^{-<M,M>} [M][K_a]`, must be
/// rational and agree with the explicit formula. Also counts irrational constants on
/// the raw `[M][K_a]` basis, which is reported but not required to vanish.
pub fn semi_derived_rationality(delta: &DeltaAlgebra) -> Result<(u64, Vec<Value>, u64)> {
    let (part, raw) = semi_derived_suite(delta)?;
    Ok((part.checked, part.failures, raw))
}

fn semi_derived_suite(delta: &DeltaAlgebra) -> Result<(Part, u64)> {
    let t = delta.tables();
    let cat = t.catalog();
    let alg = ExtendedAlgebra::twisted(delta, TwistForm::semi_derived(cat.quiver()))?;
    let ks = k_labels(rank(delta));
    let labels: Vec<ExtLabel> = cat
        .ids()
        .flat_map(|m| ks.iter().map(move |k| ExtLabel::half(m, k.clone())))
        .collect();
    let mut cases = Vec::new();
    for x in &labels {
        for y in &labels {
            if cat.total(x.class) + cat.total(y.class) <= cat.max_dim() {
                cases.push((x.clone(), y.clone()));
            }
        }
    }
    let one = t.field().one();
    let results = cases
        .par_iter()
        .map(|(x, y)| {
            let ex = ExtElement::basis(x.clone(), one.clone());
            let ey = ExtElement::basis(y.clone(), one.clone());
            let raw = alg.product(&ex, &ey)?;
            let raw_irrational = raw.iter().filter(|(_, c)| !c.is_rational()).count() as u64;
            let via_twist = crate::extended::xi_tilde_inverse(t, &alg.product(&xi_tilde(t, &ex), &xi_tilde(t, &ey))?);
            let explicit = semi_derived_product(delta, &ex, &ey)?;
            let mut part = Part::default();
            for (l, c) in via_twist.iter() {
                part.record(c.is_rational(), || {
                    json!({"x": x.to_string(), "y": y.to_string(), "term": l.to_string(), "coeff": coeff_json(c)})
                });
            }
            part.record(via_twist == explicit, || {
                json!({"x": x.to_string(), "y": y.to_string(), "via_twist": ext_json(&via_twist), "explicit": ext_json(&explicit)})
            });
            Ok((part, raw_irrational))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = Part::default();
    let mut raw = 0;
    for (p, r) in results {
        total = total.merge(p);
        raw += r;
    }
    Ok((total, raw))
}

fn derived_suite(delta: &DeltaAlgebra) -> Result<Part> {
    let t = delta.tables();
    let cat = t.catalog();
    let all = all_triples(cat);
    let scaling = sweep(&all, |&(a, b, m)| {
        let g = derived_hall_number(t, a, b, m);
        let f = delta.coeff(a, b, m);
        let mut part = Part::default();
        let lhs = g.scale(&big(&(t.aut(a) * t.aut(b))));
        let rhs = f.scale(&big(t.aut(m)));
        part.record(lhs == rhs, || json!({"a": a, "b": b, "m": m, "g": coeff_json(&g), "f": coeff_json(&f)}));
        Ok(part)
    })?;
    let ab = pairs(cat, cat.max_dim());
    let one = t.field().one();
    let hom = sweep(&ab, |&(a, b)| {
        let (ua, ub) = (DerivedElement::basis(a, one.clone()), DerivedElement::basis(b, one.clone()));
        let lhs = xi_apply(t, &derived_product(t, &ua, &ub)?);
        let rhs = delta.product(&xi_apply(t, &ua), &xi_apply(t, &ub))?;
        let mut part = Part::default();
        part.record(lhs == rhs, || json!({"a": a, "b": b, "lhs": elem_json(&lhs), "rhs": elem_json(&rhs)}));
        Ok(part)
    })?;
    let abc = triples(cat, cat.max_dim());
    let assoc = sweep(&abc, |&(a, b, c)| {
        let u = |x| DerivedElement::basis(x, one.clone());
        let l = derived_product(t, &derived_product(t, &u(a), &u(b))?, &u(c))?;
        let r = derived_product(t, &u(a), &derived_product(t, &u(b), &u(c))?)?;
        let mut part = Part::default();
        part.record(l == r, || json!({"derived_assoc": [a, b, c]}));
        Ok(part)
    })?;
    Ok(scaling.merge(hom).merge(assoc))
}

fn central_suite(delta: &DeltaAlgebra) -> Result<Part> {
    let t = delta.tables();
    let cat = t.catalog();
    let n = rank(delta);
    let alg = ExtendedAlgebra::new(delta, Lattice::Integral);
    let mut part = Part::default();
    let mut alphas = vec![K0Class::zero(n)];
    for k in k_labels(n).into_iter().skip(1) {
        alphas.push(k.to_k0().expect("integral"));
    }
    alphas.push(K0Class(vec![1; n]));
    for alpha in &alphas {
        part.record(alg.central_check(alpha)?, || json!({"not_central": alpha.0}));
    }
    // Phi~ is multiplicative, and kills [K_a] - 1 and its multiples.
    let ks = k_labels(n);
    let one = t.field().one();
    let mut cases = Vec::new();
    for (a, b) in pairs(cat, cat.max_dim()) {
        for ka in &ks {
            for kb in &ks {
                cases.push((ExtLabel::half(a, ka.clone()), ExtLabel::half(b, kb.clone())));
            }
        }
    }
    let hom = sweep(&cases, |(x, y)| {
        let ex = ExtElement::basis(x.clone(), one.clone());
        let ey = ExtElement::basis(y.clone(), one.clone());
        let lhs = reduce_phi(&alg.product(&ex, &ey)?)?;
        let rhs = delta.product(&reduce_phi(&ex)?, &reduce_phi(&ey)?)?;
        let mut part = Part::default();
        part.record(lhs == rhs, || json!({"x": x.to_string(), "y": y.to_string(), "lhs": elem_json(&lhs), "rhs": elem_json(&rhs)}));
        Ok(part)
    })?;
    let mut kernel = Part::default();
    for alpha in &alphas {
        let g = alg.k_element(alpha).minus(&alg.unit());
        kernel.record(reduce_phi(&g)?.is_zero(), || json!({"kernel_generator": alpha.0}));
        for m in cat.ids() {
            let x = alg.basis(m, &K0Class::zero(n));
            let left = reduce_phi(&alg.product(&x, &g)?)?;
            let right = reduce_phi(&alg.product(&g, &x)?)?;
            kernel.record(left.is_zero() && right.is_zero(), || json!({"kernel_ideal": alpha.0, "m": m}));
        }
    }
    Ok(part.merge(hom).merge(kernel))
}

fn parity_suite(delta: &DeltaAlgebra) -> Result<Part> {
    let t = delta.tables();
    let cat = t.catalog();
    let quiver = cat.quiver();
    let all = all_triples(cat);
    sweep(&all, |&(a, b, m)| {
        let mut part = Part::default();
        let dim = |x: ClassId| -> Vec<i64> { cat.dim(x).0.iter().map(|&v| i64::from(v)).collect() };
        let (da, db, dm) = (dim(a), dim(b), dim(m));
        let sym = |x: &[i64], y: &[i64]| quiver.sym_form(x, y);
        for c in three_cycles(t, a, b, m) {
            let (dl, di, dn) = (dim(c.l), dim(c.i), dim(c.n));
            let ok_dims = (0..da.len()).all(|k| {
                2 * di[k] == da[k] + db[k] - dm[k]
                    && 2 * dl[k] == dm[k] + db[k] - da[k]
                    && 2 * dn[k] == dm[k] + da[k] - db[k]
            });
            let lhs = 2 * sym(&dn, &dl)?;
            let rhs = t.euler(m, m) - t.euler(a, a) - t.euler(b, b) + sym(&da, &db)?;
            part.record(ok_dims && lhs == rhs, || {
                json!({"a": a, "b": b, "m": m, "l": c.l, "i": c.i, "n": c.n, "form_lhs": lhs, "form_rhs": rhs})
            });
        }
        let f = delta_number(delta, a, b, m);
        if !f.is_zero() {
            let even = (0..da.len()).all(|k| (da[k] + db[k] - dm[k]) % 2 == 0);
            let supported = product_support(cat, a, b).contains(&m);
            part.record(even && supported, || json!({"a": a, "b": b, "m": m, "parity": even, "support": supported}));
        }
        Ok(part)
    })
}

fn delta_number(delta: &DeltaAlgebra, a: ClassId, b: ClassId, m: ClassId) -> QuadNumber {
    delta.coeff(a, b, m)
}

fn lemma43_suite(delta: &DeltaAlgebra) -> Result<Part> {
    let t = delta.tables();
    let cat = t.catalog();
    let all = all_triples(cat);
    let numbers = sweep(&all, |&(a, b, m)| {
        let tilde = tilde_hall_number(t, a, b, m);
        let hat = delta.coeff(a, b, m);
        let scaled = &hat * &t.field().vpow(lemma_exponent(t, a, b, m));
        let mut part = Part::default();
        part.record(tilde == scaled, || {
            json!({"a": a, "b": b, "m": m, "tilde": coeff_json(&tilde), "hat": coeff_json(&hat)})
        });
        Ok(part)
    })?;
    let alg = ExtendedAlgebra::new(delta, Lattice::Integral);
    let ks = k_labels(rank(delta));
    let one = t.field().one();
    let mut cases = Vec::new();
    for (a, b) in pairs(cat, cat.max_dim()) {
        for k in &ks {
            cases.push((ExtLabel::half(a, k.clone()), ExtLabel::half(b, ks[0].clone())));
        }
    }
    let hom = sweep(&cases, |(x, y)| {
        let ex = ExtElement::basis(x.clone(), one.clone());
        let ey = ExtElement::basis(y.clone(), one.clone());
        let lhs = xi_tilde(t, &ihall_product(delta, &ex, &ey)?);
        let rhs = alg.product(&xi_tilde(t, &ex), &xi_tilde(t, &ey))?;
        let mut part = Part::default();
        part.record(lhs == rhs, || json!({"x": x.to_string(), "y": y.to_string(), "lhs": ext_json(&lhs), "rhs": ext_json(&rhs)}));
        Ok(part)
    })?;
    Ok(numbers.merge(hom))
}

fn tensor_suite(delta: &DeltaAlgebra) -> Result<Part> {
    let t = delta.tables();
    let cat = t.catalog();
    let alg = ExtendedAlgebra::new(delta, Lattice::Half);
    let ks = half_k_labels(rank(delta));
    let one = t.field().one();
    let mut cases = Vec::new();
    for (a, b) in pairs(cat, cat.max_dim()) {
        for ka in &ks {
            for kb in &ks {
                cases.push((ExtLabel::half(a, ka.clone()), ExtLabel::half(b, kb.clone())));
            }
        }
    }
    let part = sweep(&cases, |(x, y)| {
        let ex = ExtElement::basis(x.clone(), one.clone());
        let ey = ExtElement::basis(y.clone(), one.clone());
        let prod = alg.product(&ex, &ey)?;
        let mut part = Part::default();
        let phi_l = phi_tensor(t, &prod);
        let phi_r = tensor_product(delta, &phi_tensor(t, &ex), &phi_tensor(t, &ey))?;
        part.record(phi_l == phi_r, || json!({"phi": [x.to_string(), y.to_string()]}));
        let psi_l = psi_tensor(t, &prod);
        let psi_r = derived_tensor_product(t, &psi_tensor(t, &ex), &psi_tensor(t, &ey))?;
        part.record(psi_l == psi_r, || json!({"psi": [x.to_string(), y.to_string()]}));
        let target = degree(t, x).add(&degree(t, y));
        for (l, _) in prod.iter() {
            part.record(degree(t, l) == target, || json!({"degree": [x.to_string(), y.to_string(), l.to_string()]}));
        }
        Ok(part)
    })?;
    let mut maps = Part::default();
    for m in cat.ids() {
        for k in &ks {
            let x = ExtElement::basis(ExtLabel::half(m, k.clone()), one.clone());
            maps.record(phi_tensor_inverse(t, &phi_tensor(t, &x)) == x, || json!({"phi_inverse": m}));
            maps.record(psi_tensor_inverse(t, &psi_tensor(t, &x)) == x, || json!({"psi_inverse": m}));
        }
        // degree zero <-> DH_1 (x) 1
        let z = ExtElement::basis(degree_zero_label(t, m), one.clone());
        let image = psi_tensor(t, &z);
        let expected = TensorElement::basis((m, HalfK0Class::zero(rank(delta))), one.scale(&big(t.aut(m))));
        maps.record(image == expected, || json!({"degree_zero": m}));
        let back = psi_tensor_inverse(t, &TensorElement::basis((m, HalfK0Class::zero(rank(delta))), one.clone()));
        let in_degree_zero = back.iter().all(|(l, _)| degree(t, l).is_zero());
        maps.record(in_degree_zero, || json!({"degree_zero_preimage": m}));
    }
    Ok(part.merge(maps))
}

fn rank1_suite(delta: &DeltaAlgebra, report: &mut CheckReport) -> Result<()> {
    let alg = ExtendedAlgebra::new(delta, Lattice::Integral);
    let images = make_images(&alg)?;
    let t = delta.tables();
    let k = check_k_relations(&alg, &images)?;
    report.checked += k.checked as u64;
    report.failures.extend(k.failures.into_iter().map(Value::String));
    let plain = plain_images(&alg)?;
    for (i, b) in images.b.iter().enumerate() {
        let expected = plain[i].scaled(&t.field().rational(image_ratio(&alg, i)?));
        report.record(reduce_phi(b)? == expected, || json!({"reduced_image": i}));
        report.details.push(json!({"i": i, "b": ext_json(b), "k": ext_json(&images.k[i])}));
    }
    Ok(())
}

fn rank2_suite(delta: &DeltaAlgebra, report: &mut CheckReport) -> Result<()> {
    let alg = ExtendedAlgebra::new(delta, Lattice::Integral);
    let images = make_images(&alg)?;
    let quiver = delta.catalog().quiver();
    let n = rank(delta);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            match quiver.edge_multiplicity(i, j) {
                0 => {}
                1 => {
                    let rel = discover_rank2_relation(&alg, &images, i, j)?;
                    let zero = rel.residual.is_zero();
                    report.record(zero, || json!({"i": i, "j": j, "residual": ext_json(&rel.residual)}));
                    report.details.push(json!({
                        "i": i, "j": j, "n_ij": 1, "residual_zero": zero,
                        "lambda": rel.lambda.as_ref().map(QuadNumber::to_json),
                    }));
                }
                n_ij => {
                    let prods = rank2_products(&alg, &images, i, j)?;
                    report.details.push(json!({
                        "i": i, "j": j, "n_ij": n_ij, "residual_zero": Value::Null, "lambda": Value::Null,
                        "products": {"bi_bi_bj": ext_json(&prods[0]), "bi_bj_bi": ext_json(&prods[1]), "bj_bi_bi": ext_json(&prods[2])},
                    }));
                }
            }
        }
    }
    Ok(())
}

fn commute_suite(delta: &DeltaAlgebra, report: &mut CheckReport) -> Result<()> {
    let alg = ExtendedAlgebra::new(delta, Lattice::Integral);
    let images = make_images(&alg)?;
    let quiver = delta.catalog().quiver();
    let n = rank(delta);
    for i in 0..n {
        for j in (i + 1)..n {
            if quiver.edge_multiplicity(i, j) == 0 {
                let ok = check_commuting_pair(&alg, &images, i, j)?;
                report.record(ok, || json!({"i": i, "j": j}));
            }
        }
    }
    Ok(())
}
