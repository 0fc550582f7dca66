//! Hochschild cochains `C•(A,V)` as an operad with multiplication and
//! Hochschild chains `C•(A,A)` as a cyclic unital comp module over it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, CoefficientPair, SparseVec};
use crate::comp_module::{CompModule, Complex};
use crate::element::{Chain, Cochain};
use crate::error::{Error, Result};
use crate::operad::Operad;
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::{flat_index, unflatten, Multi, TensorVector};

/// Degree caps of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub arity: usize,
    pub degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { arity: 6, degree: 6 }
    }
}

/// `C•(A,V)` with the substitution comp maps.
#[derive(Clone, Debug)]
pub struct HochschildOperad {
    algebra: Arc<Algebra>,
    pair: Arc<CoefficientPair>,
    arity_cap: usize,
    mu: Cochain,
    identity: Cochain,
    unit: Cochain,
}

impl HochschildOperad {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn pair(&self) -> &CoefficientPair {
        &self.pair
    }

    /// Dimension of `A`.
    pub fn d(&self) -> usize {
        self.algebra.dim()
    }

    /// Dimension of `V`.
    pub fn dv(&self) -> usize {
        self.pair.v().dim()
    }

    /// The same comp maps with `μ` replaced by `pi`. No axioms are checked.
    pub fn with_multiplication(&self, pi: Cochain) -> Result<HochschildOperad> {
        if pi.arity() != 2 || pi.out_dim() != self.dv() {
            return Err(Error::Usage(format!(
                "a multiplication must be a 2-cochain with values in V, got arity {}",
                pi.arity()
            )));
        }
        Ok(HochschildOperad { mu: pi, ..self.clone() })
    }

    /// `γ` applied to a value in `V`.
    pub fn gamma(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.pair.apply_gamma(v)
    }

    /// Builds a cochain from its values on basis tuples.
    pub fn cochain(&self, arity: usize, f: impl FnMut(&[u16]) -> SparseVec) -> Cochain {
        Cochain::from_fn(self.field(), arity, self.d(), self.dv(), f)
    }

    /// The `V`-valued cochain `a ↦ η(a)` composed with a linear map of `A`.
    pub fn cochain_from_linear(&self, arity: usize, f: impl Fn(&[u16]) -> SparseVec) -> Cochain {
        let pair = self.pair.clone();
        self.cochain(arity, |args| pair.apply_eta(&f(args)))
    }

    /// Whether `φ` vanishes whenever an argument is the unit.
    pub fn vanishes_on_units(&self, phi: &Cochain) -> bool {
        phi.support().iter().all(|args| !args.contains(&0))
    }
}

impl Operad for HochschildOperad {
    fn fingerprint(&self) -> Option<String> {
        Some(format!("{:?}|{:?}|{}", self.algebra, self.pair, self.mu))
    }

    type Elem = Cochain;

    fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    fn zero(&self, arity: usize) -> Cochain {
        Cochain::zero(self.field(), arity, self.dv())
    }

    fn basis(&self, arity: usize) -> Vec<Cochain> {
        self.basis_of(arity, Complex::Full)
    }

    fn dim(&self, arity: usize, complex: Complex) -> usize {
        let free = match complex {
            Complex::Full => self.d(),
            Complex::Normalized => self.d() - 1,
        };
        free.pow(arity as u32) * self.dv()
    }

    fn coords(&self, phi: &Cochain, complex: Complex) -> SparseVec {
        let (d, dv, p) = (self.d(), self.dv(), phi.arity());
        let mut out: SparseVec = Vec::with_capacity(phi.values().nnz());
        for (key, c) in phi.values().terms() {
            let args = &key[..p];
            let k = key[p] as usize;
            let index = match complex {
                Complex::Full => flat_index(args, d),
                Complex::Normalized => {
                    if args.contains(&0) {
                        continue;
                    }
                    let shifted: Multi = args.iter().map(|a| a - 1).collect();
                    flat_index(&shifted, d - 1)
                }
            };
            out.push((index * dv + k, c.clone()));
        }
        out.sort_by_key(|(i, _)| *i);
        out
    }

    fn from_coords(&self, arity: usize, complex: Complex, coords: &[(usize, Scalar)]) -> Cochain {
        let (d, dv) = (self.d(), self.dv());
        let mut phi = self.zero(arity);
        for (index, c) in coords {
            let (tuple, k) = (index / dv, index % dv);
            let args = match complex {
                Complex::Full => unflatten(tuple, d, arity),
                Complex::Normalized => unflatten(tuple, d - 1, arity).iter().map(|a| a + 1).collect(),
            };
            phi.set(&args, k, c.clone());
        }
        phi
    }

    /// `(φ ∘ᵢ ψ)(a₁,…) = φ(a₁,…,a_{i−1}, γψ(aᵢ,…,a_{i+q−1}), a_{i+q},…)`.
    fn comp_raw(&self, phi: &Cochain, i: usize, psi: &Cochain) -> Cochain {
        let (p, q) = (phi.arity(), psi.arity());
        let slot = i - 1;
        // φ's terms grouped by the basis index in slot i.
        let mut by_slot: BTreeMap<u16, Vec<(&Multi, &Scalar)>> = BTreeMap::new();
        for (key, c) in phi.values().terms() {
            by_slot.entry(key[slot]).or_default().push((key, c));
        }
        let mut out = TensorVector::zero(p + q);
        for (pkey, pc) in psi.values().terms() {
            let k = pkey[q] as usize;
            for (l, g) in self.pair.gamma(k) {
                let Some(terms) = by_slot.get(&(*l as u16)) else {
                    continue;
                };
                let coeff = pc * g;
                for (fkey, fc) in terms {
                    let mut key: Multi = Multi::with_capacity(p + q);
                    key.extend_from_slice(&fkey[..slot]);
                    key.extend_from_slice(&pkey[..q]);
                    key.extend_from_slice(&fkey[slot + 1..]);
                    out.add_term(key, &coeff * *fc);
                }
            }
        }
        Cochain::from_values(self.field(), p + q - 1, self.dv(), out)
    }

    fn multiplication(&self) -> &Cochain {
        &self.mu
    }

    fn identity(&self) -> &Cochain {
        &self.identity
    }

    fn unit(&self) -> &Cochain {
        &self.unit
    }
}

/// `C•(A,A)` as a cyclic unital comp module over `C•(A,V)`.
#[derive(Clone, Debug)]
pub struct HochschildModule {
    operad: HochschildOperad,
    degree_cap: usize,
}

/// Builds the operad and module for a validated algebra and coefficient
/// pair. Invalid inputs are refused.
pub fn build_hochschild(a: &Algebra, pair: Option<&CoefficientPair>, caps: Caps) -> Result<HochschildModule> {
    let report = a.validate();
    if let Some(f) = report.first_failure() {
        return Err(Error::Refused(format!(
            "algebra {} fails {}: {}",
            a.name(),
            f.check,
            f.detail.clone().unwrap_or_default()
        )));
    }
    let pair = match pair {
        Some(p) => {
            let report = p.validate(a);
            if let Some(f) = report.first_failure() {
                return Err(Error::Refused(format!(
                    "coefficient pair fails {}: {}",
                    f.check,
                    f.detail.clone().unwrap_or_default()
                )));
            }
            p.clone()
        }
        None => CoefficientPair::identity(a),
    };
    Ok(build_unchecked(a, pair, caps))
}

/// Like [`build_hochschild`] without validation, for constructing broken
/// instances on purpose.
pub fn build_unchecked(a: &Algebra, pair: CoefficientPair, caps: Caps) -> HochschildModule {
    let field = a.field();
    let (d, dv) = (a.dim(), pair.v().dim());
    let v = pair.v().clone();
    let mu = Cochain::from_fn(field, 2, d, dv, |args| {
        v.multiply_sparse(pair.eta(args[0] as usize), pair.eta(args[1] as usize))
    });
    let identity = Cochain::from_fn(field, 1, d, dv, |args| pair.eta(args[0] as usize).to_vec());
    let unit = Cochain::basis(field, &[], 0, dv);
    let operad = HochschildOperad {
        algebra: Arc::new(a.clone()),
        pair: Arc::new(pair),
        arity_cap: caps.arity,
        mu,
        identity,
        unit,
    };
    HochschildModule {
        operad,
        degree_cap: caps.degree,
    }
}

impl HochschildModule {
    pub fn algebra(&self) -> &Algebra {
        self.operad.algebra()
    }

    pub fn hochschild_operad(&self) -> &HochschildOperad {
        &self.operad
    }

    /// The module over the operad with multiplication replaced by `pi`.
    pub fn with_multiplication(&self, pi: Cochain) -> Result<HochschildModule> {
        Ok(HochschildModule {
            operad: self.operad.with_multiplication(pi)?,
            degree_cap: self.degree_cap,
        })
    }

    pub fn with_caps(&self, caps: Caps) -> HochschildModule {
        let mut m = self.clone();
        m.operad.arity_cap = caps.arity;
        m.degree_cap = caps.degree;
        m
    }

    pub fn caps(&self) -> Caps {
        Caps {
            arity: self.operad.arity_cap,
            degree: self.degree_cap,
        }
    }

    pub fn chain(&self, key: &[usize]) -> Chain {
        Chain::basis(self.field(), crate::tensor::multi(key))
    }

    /// Replaces the block of `x` starting at position `i` of length `p` by
    /// `γφ(block)`, term by term.
    fn replace_block(&self, phi: &Cochain, i: usize, x: &Chain) -> Chain {
        let p = phi.arity();
        let n = x.degree();
        let mut out = TensorVector::zero(n + 2 - p);
        let mut cache: BTreeMap<&[u16], SparseVec> = BTreeMap::new();
        for (key, c) in x.terms() {
            let block = &key[i..i + p];
            let value = cache
                .entry(block)
                .or_insert_with(|| self.operad.gamma(&phi.evaluate(block).expect("block length is the arity")));
            for (l, g) in value.iter() {
                let mut k: Multi = Multi::with_capacity(n + 2 - p);
                k.extend_from_slice(&key[..i]);
                k.push(*l as u16);
                k.extend_from_slice(&key[i + p..]);
                out.add_term(k, c * g);
            }
        }
        Chain::from_tensor(self.field(), out)
    }
}

impl CompModule for HochschildModule {
    fn fingerprint(&self) -> Option<String> {
        self.operad.fingerprint()
    }

    type Op = HochschildOperad;
    type Elem = Chain;

    fn operad(&self) -> &HochschildOperad {
        &self.operad
    }

    fn name(&self) -> String {
        format!("C({0},{0})", self.operad.algebra.name())
    }

    fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    fn zero(&self, degree: usize) -> Chain {
        Chain::zero(self.field(), degree)
    }

    fn dim(&self, degree: usize, complex: Complex) -> usize {
        let d = self.operad.d();
        match complex {
            Complex::Full => d.pow(degree as u32 + 1),
            Complex::Normalized => d * (d - 1).pow(degree as u32),
        }
    }

    fn basis(&self, degree: usize, complex: Complex) -> Vec<Chain> {
        let one = self.field().one();
        (0..self.dim(degree, complex))
            .map(|k| self.from_coords(degree, complex, &[(k, one.clone())]))
            .collect()
    }

    fn coords(&self, x: &Chain, complex: Complex) -> SparseVec {
        let d = self.operad.d();
        let n = x.degree();
        let mut out: SparseVec = Vec::with_capacity(x.tensor().nnz());
        for (key, c) in x.terms() {
            let index = match complex {
                Complex::Full => flat_index(key, d),
                Complex::Normalized => {
                    if key[1..].contains(&0) {
                        continue;
                    }
                    let rest: Multi = key[1..].iter().map(|a| a - 1).collect();
                    key[0] as usize * (d - 1).pow(n as u32) + flat_index(&rest, d - 1)
                }
            };
            out.push((index, c.clone()));
        }
        out.sort_by_key(|(i, _)| *i);
        out
    }

    fn from_coords(&self, degree: usize, complex: Complex, coords: &[(usize, Scalar)]) -> Chain {
        let d = self.operad.d();
        let mut x = self.zero(degree);
        for (index, c) in coords {
            let key = match complex {
                Complex::Full => unflatten(*index, d, degree + 1),
                Complex::Normalized => {
                    let block = (d - 1).pow(degree as u32);
                    let mut key: Multi = Multi::new();
                    key.push((index / block) as u16);
                    key.extend(unflatten(index % block, d - 1, degree).iter().map(|a| a + 1));
                    key
                }
            };
            x.add_term(key, c.clone());
        }
        x
    }

    /// `φ •ᵢ (a₀,…,a_n) = (a₀,…,a_{i−1}, γφ(aᵢ,…,a_{i+p−1}), a_{i+p},…,a_n)`;
    /// for `i = 0` the block starts at `a₀`.
    fn bullet_raw(&self, phi: &Cochain, i: usize, x: &Chain) -> Chain {
        self.replace_block(phi, i, x)
    }

    /// `t(a₀,…,a_n) = (a_n, a₀,…,a_{n−1})`.
    fn cyclic_raw(&self, x: &Chain) -> Chain {
        let n = x.degree();
        let tensor = x.tensor().map_keys(n + 1, |k| {
            let mut r: Multi = Multi::with_capacity(n + 1);
            r.push(k[n]);
            r.extend_from_slice(&k[..n]);
            r
        });
        Chain::from_tensor(self.field(), tensor)
    }

    /// Drops tensors with the unit in any position after the zeroth.
    fn project_normalized(&self, x: &Chain) -> Chain {
        let tensor = x.tensor().filtered(|k| !k[1..].contains(&0));
        Chain::from_tensor(self.field(), tensor)
    }
}

// ---------------------------------------------------------------------------
// Closed forms, computed directly on tensors without the comp module maps.

/// Term-by-term application of `f` to the basis tensors of `x`.
pub(crate) fn linear_on_terms(
    field: FieldSpec,
    out_len: usize,
    x: &Chain,
    mut f: impl FnMut(&[u16], &Scalar, &mut TensorVector),
) -> Chain {
    let mut out = TensorVector::zero(out_len);
    for (key, c) in x.terms() {
        f(key, c, &mut out);
    }
    Chain::from_tensor(field, out)
}

/// Pushes `coeff · (prefix, γφ(block), suffix)` for every component of `γφ(block)`.
pub(crate) fn push_substituted(
    op: &HochschildOperad,
    phi: &Cochain,
    prefix: &[u16],
    block: &[u16],
    suffix: &[u16],
    coeff: &Scalar,
    out: &mut TensorVector,
) {
    let value = op.gamma(&phi.evaluate(block).expect("block length is the arity"));
    for (l, g) in value {
        let mut key: Multi = prefix.iter().copied().collect();
        key.push(l as u16);
        key.extend_from_slice(suffix);
        out.add_term(key, coeff * &g);
    }
}

/// `ι_φ(a₀,…,a_n) = (a₀·γφ(a₁,…,a_p), a_{p+1},…,a_n)`.
pub fn iota_closed(op: &HochschildOperad, phi: &Cochain, x: &Chain) -> Chain {
    let (p, n) = (phi.arity(), x.degree());
    if p > n {
        return Chain::zero(op.field(), 0);
    }
    let a = op.algebra();
    linear_on_terms(op.field(), n - p + 1, x, |key, c, out| {
        let value = op.gamma(&phi.evaluate(&key[1..=p]).expect("arity"));
        let prod = a.multiply_sparse(&[(key[0] as usize, c.clone())], &value);
        for (l, s) in prod {
            let mut k: Multi = Multi::new();
            k.push(l as u16);
            k.extend_from_slice(&key[p + 1..]);
            out.add_term(k, s);
        }
    })
}

/// Index of `a` at position `k` of `t^r(a₀,…,a_n)`.
fn rotated(key: &[u16], r: usize, k: usize) -> u16 {
    let len = key.len();
    key[(k + len - r % len) % len]
}

/// `S_φ(x) = Σ_{j ≤ i} (−1)^{n(j−1)+(p−1)(i−1)} (1, y₀,…,y_{i−1}, γφ(yᵢ,…,y_{i+p−1}), y_{i+p},…,y_n)`
/// with `y = t^{j−1}x`.
pub fn s_closed(op: &HochschildOperad, phi: &Cochain, x: &Chain) -> Chain {
    let (p, n) = (phi.arity(), x.degree());
    if p > n {
        return Chain::zero(op.field(), 0);
    }
    let field = op.field();
    let top = n - p + 1;
    linear_on_terms(field, n - p + 3, x, |key, c, out| {
        for j in 1..=top {
            let y: Vec<u16> = (0..=n).map(|k| rotated(key, j - 1, k)).collect();
            for i in j..=top {
                let sign = field.sign(n as i64 * (j as i64 - 1) + (p as i64 - 1) * (i as i64 - 1));
                let mut prefix = vec![0u16];
                prefix.extend_from_slice(&y[..i]);
                push_substituted(op, phi, &prefix, &y[i..i + p], &y[i + p..], &(c * &sign), out);
            }
        }
    })
}

/// `𝓛_φ(x)` with the first sum substituting in place and the second sum
/// substituting the leading block of `t^{i−1}x`.
pub fn lie_closed(op: &HochschildOperad, phi: &Cochain, x: &Chain) -> Chain {
    let (p, n) = (phi.arity(), x.degree());
    if p > n + 1 {
        return Chain::zero(op.field(), 0);
    }
    let field = op.field();
    let pm1 = p as i64 - 1;
    linear_on_terms(field, n + 2 - p, x, |key, c, out| {
        for i in 1..=(n + 1 - p) {
            let sign = field.sign(pm1 * (i as i64 - 1));
            push_substituted(op, phi, &key[..i], &key[i..i + p], &key[i + p..], &(c * &sign), out);
        }
        for i in 1..=p {
            let y: Vec<u16> = (0..=n).map(|k| rotated(key, i - 1, k)).collect();
            let sign = field.sign(n as i64 * (i as i64 - 1) + pm1);
            push_substituted(op, phi, &[], &y[..p], &y[p..], &(c * &sign), out);
        }
    })
}

/// `(φ ⌣ ψ)(a₁,…,a_{p+q}) = ψ(a₁,…,a_q) · φ(a_{q+1},…,a_{p+q})` in `V`.
pub fn cup_closed(op: &HochschildOperad, phi: &Cochain, psi: &Cochain) -> Cochain {
    let (p, q) = (phi.arity(), psi.arity());
    let v = op.pair().v();
    op.cochain(p + q, |args| {
        let left = psi.evaluate(&args[..q]).expect("arity");
        let right = phi.evaluate(&args[q..]).expect("arity");
        v.multiply_sparse(&left, &right)
    })
}

/// The textbook coboundary
/// `(δφ)(a₁,…,a_{p+1}) = a₁φ(a₂,…) + Σᵢ (−1)ⁱ φ(…,aᵢa_{i+1},…) + (−1)^{p+1} φ(a₁,…,a_p)a_{p+1}`
/// with `A` acting on `V` through `η`.
pub fn delta_standard(op: &HochschildOperad, phi: &Cochain) -> Cochain {
    let p = phi.arity();
    let a = op.algebra();
    let v = op.pair().v();
    let field = op.field();
    op.cochain(p + 1, |args| {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut add = |vec: SparseVec, s: Scalar| {
            for (k, c) in vec {
                let e = acc.entry(k).or_insert_with(|| field.zero());
                *e = &*e + &(&c * &s);
            }
        };
        let first = op.pair().eta(args[0] as usize);
        add(v.multiply_sparse(first, &phi.evaluate(&args[1..]).expect("arity")), field.one());
        for i in 1..=p {
            let prod = a.basis_product(args[i - 1] as usize, args[i] as usize);
            for (l, s) in prod {
                let mut merged: Vec<u16> = args[..i - 1].to_vec();
                merged.push(*l as u16);
                merged.extend_from_slice(&args[i + 1..]);
                let value = phi.evaluate(&merged).expect("arity");
                add(value, &field.sign(i as i64) * s);
            }
        }
        let last = op.pair().eta(args[p] as usize);
        add(
            v.multiply_sparse(&phi.evaluate(&args[..p]).expect("arity"), last),
            field.sign(p as i64 + 1),
        );
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    })
}

/// All cochains of the given arities over the full basis.
pub fn basis_cochains(op: &HochschildOperad, arities: impl IntoIterator<Item = usize>, complex: Complex) -> Vec<Cochain> {
    arities.into_iter().flat_map(|p| op.basis_of(p, complex)).collect()
}

/// Every basis tensor of length `len` as a chain.
pub fn basis_chains(m: &HochschildModule, degrees: impl IntoIterator<Item = usize>, complex: Complex) -> Vec<Chain> {
    degrees.into_iter().flat_map(|n| m.basis(n, complex)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_algebra, dual_numbers};
    use crate::comp_module::{check_comp_module_axioms, check_cyclic_identities, Operators, Twist, Twisted};
    use crate::element::Vector;
    use crate::exec::Strategy;
    use crate::operad::check_operad_axioms;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn d_module() -> HochschildModule {
        build_hochschild(&dual_numbers(Q), None, Caps { arity: 7, degree: 6 }).unwrap()
    }

    fn euler(op: &HochschildOperad) -> Cochain {
        op.cochain(1, |a| if a[0] == 1 { vec![(1, Q.one())] } else { vec![] })
    }

    fn ch(m: &HochschildModule, key: &[usize]) -> Chain {
        m.chain(key)
    }

    #[test]
    fn comp_examples() {
        let m = d_module();
        let op = m.operad();
        let e = euler(op);
        assert_eq!(op.comp(&e, 1, &e).unwrap(), e);
        assert_eq!(op.comp(op.identity(), 1, &e).unwrap(), e);
        assert_eq!(&op.comp(op.multiplication(), 2, op.unit()).unwrap(), op.identity());
        // μ(x,x) = 0 in D
        assert!(op.multiplication().evaluate(&[1, 1]).unwrap().is_empty());
    }

    #[test]
    fn bar_circ_bracket_cup_examples() {
        let m = d_module();
        let op = m.operad();
        let (mu, e, one, unit) = (op.multiplication(), euler(op), op.identity(), op.unit());
        assert!(op.bar_circ(mu, mu).unwrap().is_zero());
        assert!(op.bar_circ(unit, &e).unwrap().is_zero());
        assert!(op.bar_circ(mu, unit).unwrap().is_zero());
        assert!(op.bracket(mu, mu).unwrap().is_zero());
        assert!(op.bracket(&e, &e).unwrap().is_zero());
        assert_eq!(&op.cup(one, one).unwrap(), mu);
        assert_eq!(&op.cup(unit, unit).unwrap(), unit);
        let c = op.cup(&e, one).unwrap();
        assert_eq!(c.evaluate(&[0, 1]).unwrap(), vec![(1, Q.one())]);
        assert!(c.evaluate(&[1, 1]).unwrap().is_empty());
        assert_eq!(c, cup_closed(op, &e, one));
    }

    #[test]
    fn delta_examples() {
        let m = d_module();
        let op = m.operad();
        assert!(op.delta(op.multiplication()).unwrap().is_zero());
        assert!(op.delta(&euler(op)).unwrap().is_zero());
        let x = Cochain::basis(Q, &[], 1, 2);
        assert!(op.delta(&x).unwrap().is_zero());
        // On the noncommutative M₂ a 0-cochain has δa(b) = ab − ba.
        let m2 = build_hochschild(&crate::algebra::matrix_algebra(Q, 2), None, Caps::default()).unwrap();
        let op2 = m2.operad();
        let a = Cochain::basis(Q, &[], 1, 4);
        let da = op2.delta(&a).unwrap();
        assert_eq!(da, delta_standard(op2, &a).scaled(&Q.from_i64(-1)));
        assert!(!da.is_zero());
    }

    #[test]
    fn codegeneracy_examples() {
        let m = d_module();
        let op = m.operad();
        assert_eq!(&op.codegeneracy(op.identity(), 0).unwrap(), op.unit());
        assert!(op.is_normalized(&euler(op)).unwrap());
        assert!(!op.is_normalized(op.multiplication()).unwrap());
        assert_eq!(&op.codegeneracy(op.multiplication(), 0).unwrap(), op.identity());
        assert!(op.codegeneracy(op.unit(), 0).is_err());
    }

    #[test]
    fn module_examples() {
        let m = d_module();
        let op = m.operad();
        let e = euler(op);
        assert_eq!(m.bullet(&e, 1, &ch(&m, &[0, 1])).unwrap(), ch(&m, &[0, 1]));
        assert!(m.bullet(&e, 0, &ch(&m, &[0, 1])).unwrap().is_zero());
        assert_eq!(m.bullet(&e, 0, &ch(&m, &[1, 1])).unwrap(), ch(&m, &[1, 1]));
        assert_eq!(m.t(&ch(&m, &[0, 1, 1])), ch(&m, &[1, 0, 1]));
        let x = ch(&m, &[0, 1, 1]);
        assert_eq!(m.face(0, &x).unwrap(), ch(&m, &[1, 1]));
        assert!(m.face(1, &x).unwrap().is_zero());
        assert_eq!(m.face(2, &x).unwrap(), ch(&m, &[1, 1]));
        assert_eq!(m.degeneracy(-1, &ch(&m, &[1])).unwrap(), ch(&m, &[0, 1]));
        let ops = Operators::new(&m, Complex::Full);
        assert!(ops.b(&ch(&m, &[0, 1])).unwrap().is_zero());
        assert_eq!(ops.b(&x).unwrap(), ch(&m, &[1, 1]).scaled(&Q.from_i64(2)));
    }

    #[test]
    fn connes_b_examples() {
        let m = d_module();
        let norm = Operators::new(&m, Complex::Normalized);
        assert_eq!(norm.connes_b(&ch(&m, &[1])).unwrap(), ch(&m, &[0, 1]));
        assert!(norm.connes_b(&ch(&m, &[0])).unwrap().is_zero());
        let g = build_hochschild(&cyclic_group_algebra(Q), None, Caps::default()).unwrap();
        let gn = Operators::new(&g, Complex::Normalized);
        // B(a₀,a₁) = (1,a₀,a₁) − (1,a₁,a₀)
        let b = gn.connes_b(&g.chain(&[1, 1])).unwrap();
        assert!(b.is_zero());
        let full = Operators::new(&m, Complex::Full);
        for n in 0..4 {
            for x in m.basis(n, Complex::Full) {
                let bb = full.connes_b(&full.connes_b(&x).unwrap()).unwrap();
                assert!(bb.is_zero(), "B² ≠ 0 on {x}");
                let nb = norm.connes_b(&norm.connes_b(&x).unwrap()).unwrap();
                assert!(nb.is_zero());
            }
        }
    }

    #[test]
    fn axiom_sweeps_pass_on_dual_numbers() {
        let m = d_module();
        let report = check_operad_axioms(m.operad(), 2, Strategy::Parallel).unwrap();
        assert!(report.passed, "{:?}", report.first_failure());
        let report = check_comp_module_axioms(&m, 3, 2, Strategy::Parallel).unwrap();
        assert!(report.passed, "{:?}", report.first_failure());
        assert_eq!(report.status.as_deref(), Some("cyclic"));
        let report = check_cyclic_identities(&m, 3, Strategy::Parallel).unwrap();
        assert!(report.passed, "{:?}", report.first_failure());
    }

    #[test]
    fn broken_instances_fail() {
        let m = d_module();
        let op = m.operad();
        let bad = op.cochain(2, |a| if a == [1, 1] { vec![(1, Q.one())] } else { vec![(0, Q.zero())] });
        let broken = m.with_multiplication(bad).unwrap();
        let report = check_operad_axioms(broken.operad(), 2, Strategy::Sequential).unwrap();
        assert!(!report.passed);
        let identity_t = Twisted { inner: m.clone(), twist: Twist::Identity };
        let report = check_comp_module_axioms(&identity_t, 2, 1, Strategy::Sequential).unwrap();
        assert_eq!(report.first_failure().unwrap().axiom, "t-compatibility");
        let para = Twisted { inner: m, twist: Twist::Scaled(Q.from_i64(2)) };
        let report = check_comp_module_axioms(&para, 2, 1, Strategy::Sequential).unwrap();
        assert!(report.passed);
        assert_eq!(report.status.as_deref(), Some("para-cyclic"));
        assert!(matches!(check_cyclic_identities(&para, 2, Strategy::Sequential), Err(Error::Refused(_))));
    }

    #[test]
    fn normalized_cochains_are_those_vanishing_on_units() {
        let m = d_module();
        let op = m.operad();
        for p in 0..=3 {
            for phi in op.basis(p) {
                assert_eq!(op.is_normalized(&phi).unwrap(), op.vanishes_on_units(&phi));
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let m = build_hochschild(&crate::algebra::matrix_algebra(Q, 2), None, Caps::default()).unwrap();
        for complex in [Complex::Full, Complex::Normalized] {
            for (k, x) in m.basis(2, complex).iter().enumerate() {
                assert_eq!(m.coords(x, complex), vec![(k, Q.one())]);
            }
            for (k, phi) in m.operad().basis_of(2, complex).iter().enumerate() {
                assert_eq!(m.operad().coords(phi, complex), vec![(k, Q.one())]);
            }
        }
    }
}
