//! Non-Σ operads with multiplication and the structure they induce on
//! cochains: bar-composition, Gerstenhaber bracket, cup product, coboundary
//! and codegeneracies.

use crate::algebra::SparseVec;
use crate::comp_module::Complex;
use crate::element::Vector;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::report::{AxiomCheck, AxiomReport, Violation};
use crate::scalar::{FieldSpec, Scalar};

/// A graded family `O(n)` with comp maps `∘ᵢ` and a multiplication.
///
/// Implementors supply the raw comp maps on the valid range; the provided
/// methods add the vanishing conventions, capacity checks and every derived
/// operation.
pub trait Operad: Send + Sync {
    type Elem: Vector;

    fn field(&self) -> FieldSpec;

    /// Largest arity operations may produce.
    fn arity_cap(&self) -> usize;

    fn zero(&self, arity: usize) -> Self::Elem;

    /// A basis of `O(arity)`.
    fn basis(&self, arity: usize) -> Vec<Self::Elem>;

    /// Dimension of `O(arity)` or of its normalized part.
    fn dim(&self, arity: usize, complex: Complex) -> usize;

    /// Coordinates in the basis of `O(arity)` or of its normalized part; on
    /// the normalized part, components outside it are ignored.
    fn coords(&self, phi: &Self::Elem, complex: Complex) -> SparseVec;

    fn from_coords(&self, arity: usize, complex: Complex, coords: &[(usize, Scalar)]) -> Self::Elem;

    /// `φ ∘ᵢ ψ` for `1 ≤ i ≤ p`.
    fn comp_raw(&self, phi: &Self::Elem, i: usize, psi: &Self::Elem) -> Self::Elem;

    /// Content identifier used to key cached matrices.
    fn fingerprint(&self) -> Option<String> {
        None
    }

    /// The operad multiplication `μ ∈ O(2)`.
    fn multiplication(&self) -> &Self::Elem;

    /// The identity `𝟙 ∈ O(1)`.
    fn identity(&self) -> &Self::Elem;

    /// The unit `e ∈ O(0)`.
    fn unit(&self) -> &Self::Elem;

    fn ensure_arity(&self, arity: usize, what: &'static str) -> Result<()> {
        if arity > self.arity_cap() {
            return Err(Error::Capacity {
                what,
                degree: arity,
                cap: self.arity_cap(),
            });
        }
        Ok(())
    }

    /// `φ ∘ᵢ ψ`, zero when `p < i` or `p = 0`.
    ///
    /// A zero result of nominal arity `p + q − 1 < 0` is returned in arity 0.
    fn comp(&self, phi: &Self::Elem, i: usize, psi: &Self::Elem) -> Result<Self::Elem> {
        let (p, q) = (phi.grade(), psi.grade());
        let arity = (p + q).saturating_sub(1);
        if p == 0 || i == 0 || i > p {
            return Ok(self.zero(arity));
        }
        self.ensure_arity(arity, "operad")?;
        Ok(self.comp_raw(phi, i, psi))
    }

    /// `φ ∘̄ ψ = Σᵢ (−1)^{(q−1)(i−1)} φ ∘ᵢ ψ`.
    fn bar_circ(&self, phi: &Self::Elem, psi: &Self::Elem) -> Result<Self::Elem> {
        let (p, q) = (phi.grade(), psi.grade());
        let mut acc = self.zero((p + q).saturating_sub(1));
        for i in 1..=p {
            let term = self.comp(phi, i, psi)?;
            let sign = self.field().sign((q as i64 - 1) * (i as i64 - 1));
            acc.add_scaled(&sign, &term);
        }
        Ok(acc)
    }

    /// `{φ, ψ} = φ ∘̄ ψ − (−1)^{(p−1)(q−1)} ψ ∘̄ φ`.
    fn bracket(&self, phi: &Self::Elem, psi: &Self::Elem) -> Result<Self::Elem> {
        let (p, q) = (phi.grade() as i64, psi.grade() as i64);
        let mut out = self.bar_circ(phi, psi)?;
        let other = self.bar_circ(psi, phi)?;
        out.add_scaled(&self.field().sign((p - 1) * (q - 1) + 1), &other);
        Ok(out)
    }

    /// `φ ⌣ ψ = (μ ∘₂ φ) ∘₁ ψ`.
    fn cup(&self, phi: &Self::Elem, psi: &Self::Elem) -> Result<Self::Elem> {
        self.ensure_arity(phi.grade() + psi.grade(), "operad")?;
        let inner = self.comp_raw(self.multiplication(), 2, phi);
        self.comp(&inner, 1, psi)
    }

    /// `δφ = {μ, φ}`.
    fn delta(&self, phi: &Self::Elem) -> Result<Self::Elem> {
        let mu = self.multiplication().clone();
        self.bracket(&mu, phi)
    }

    /// `σⱼ(φ) = φ ∘_{j+1} e` for `0 ≤ j < p`.
    fn codegeneracy(&self, phi: &Self::Elem, j: usize) -> Result<Self::Elem> {
        let p = phi.grade();
        if j >= p {
            return Err(Error::Usage(format!(
                "codegeneracy σ_{j} needs arity above {j}, got {p}"
            )));
        }
        self.comp(phi, j + 1, self.unit())
    }

    /// Whether every codegeneracy kills `φ`.
    fn is_normalized(&self, phi: &Self::Elem) -> Result<bool> {
        for j in 0..phi.grade() {
            if !self.codegeneracy(phi, j)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis of the full or normalized part of `O(arity)`.
    fn basis_of(&self, arity: usize, complex: Complex) -> Vec<Self::Elem> {
        (0..self.dim(arity, complex))
            .map(|k| self.from_coords(arity, complex, &[(k, self.field().one())]))
            .collect()
    }

    /// Basis elements of all arities up to `cap`, tagged with arity and
    /// position.
    fn basis_upto(&self, cap: usize) -> Vec<(usize, usize, Self::Elem)> {
        (0..=cap)
            .flat_map(|p| {
                self.basis(p)
                    .into_iter()
                    .enumerate()
                    .map(move |(k, b)| (p, k, b))
            })
            .collect()
    }
}

fn mismatch<E: Vector>(
    axiom: &str,
    indices: &[(&str, i64)],
    lhs: &E,
    rhs: &E,
) -> Option<Violation> {
    (lhs != rhs).then(|| Violation::new(axiom, indices, lhs, rhs))
}

/// Relation the composite `(φ ∘ᵢ ψ) ∘ⱼ χ` is rewritten to.
fn associativity_rhs<O: Operad>(
    op: &O,
    phi: &O::Elem,
    i: usize,
    psi: &O::Elem,
    j: usize,
    chi: &O::Elem,
) -> Result<O::Elem> {
    let q = psi.grade();
    let r = chi.grade();
    if j < i {
        op.comp(&op.comp(phi, j, chi)?, i + r - 1, psi)
    } else if j < q + i {
        op.comp(phi, i, &op.comp(psi, j - i + 1, chi)?)
    } else {
        op.comp(&op.comp(phi, j - q + 1, chi)?, i, psi)
    }
}

/// Verifies the operad axioms exhaustively on basis elements of arity at
/// most `cap`.
pub fn check_operad_axioms<O: Operad>(op: &O, cap: usize, strategy: Strategy) -> Result<AxiomReport> {
    op.ensure_arity(3 * cap.max(1) - 2, "operad")?;
    let basis = op.basis_upto(cap);
    let idx = |p: usize, k: usize| [("p", p as i64), ("phi", k as i64)];
    let mut checks = Vec::new();

    // Vanishing conventions.
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|a| (0..basis.len()).map(move |b| (a, b)))
        .collect();
    let found = exec::try_find_map_first(strategy, &pairs, |&(a, b)| -> Result<Option<Violation>> {
        let (p, ka, phi) = &basis[a];
        let (q, kb, psi) = &basis[b];
        for i in [*p + 1, *p + 2] {
            let c = op.comp(phi, i, psi)?;
            if !c.is_zero() {
                return Ok(Some(Violation::new(
                    "comp vanishes for p < i or p = 0",
                    &[("p", *p as i64), ("phi", *ka as i64), ("q", *q as i64), ("psi", *kb as i64), ("i", i as i64)],
                    &c,
                    op.zero(c.grade()),
                )));
            }
        }
        Ok(None)
    })?;
    checks.push(AxiomCheck::from_search("comp vanishes for p < i or p = 0", 2 * pairs.len(), found));

    // Three-case associativity.
    let mut triples = Vec::new();
    for a in 0..basis.len() {
        for b in 0..basis.len() {
            for c in 0..basis.len() {
                triples.push((a, b, c));
            }
        }
    }
    let counted: usize = triples
        .iter()
        .map(|&(a, b, _)| {
            let (p, q) = (basis[a].0, basis[b].0);
            if p == 0 {
                0
            } else {
                p * (p + q).saturating_sub(1)
            }
        })
        .sum();
    let found = exec::try_find_map_first(strategy, &triples, |&(a, b, c)| -> Result<Option<Violation>> {
        let (p, ka, phi) = &basis[a];
        let (q, kb, psi) = &basis[b];
        let (r, kc, chi) = &basis[c];
        for i in 1..=*p {
            let inner = op.comp(phi, i, psi)?;
            for j in 1..=(p + q).saturating_sub(1) {
                let lhs = op.comp(&inner, j, chi)?;
                let rhs = associativity_rhs(op, phi, i, psi, j, chi)?;
                let case = if j < i {
                    "comp associativity (j < i)"
                } else if j < q + i {
                    "comp associativity (i ≤ j < q + i)"
                } else {
                    "comp associativity (j ≥ q + i)"
                };
                let indices = [
                    ("p", *p as i64),
                    ("phi", *ka as i64),
                    ("q", *q as i64),
                    ("psi", *kb as i64),
                    ("r", *r as i64),
                    ("chi", *kc as i64),
                    ("i", i as i64),
                    ("j", j as i64),
                ];
                if let Some(v) = mismatch(case, &indices, &lhs, &rhs) {
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    })?;
    checks.push(AxiomCheck::from_search("comp associativity", counted, found));

    // Unitality of the identity.
    let one = op.identity();
    let found = exec::try_find_map_first(strategy, &basis, |(p, k, phi)| -> Result<Option<Violation>> {
        let left = op.comp(one, 1, phi)?;
        if let Some(v) = mismatch("𝟙 ∘₁ φ = φ", &idx(*p, *k), &left, phi) {
            return Ok(Some(v));
        }
        for i in 1..=*p {
            let right = op.comp(phi, i, one)?;
            let mut indices = idx(*p, *k).to_vec();
            indices.push(("i", i as i64));
            if let Some(v) = mismatch("φ ∘ᵢ 𝟙 = φ", &indices, &right, phi) {
                return Ok(Some(v));
            }
        }
        Ok(None)
    })?;
    let counted = basis.iter().map(|(p, _, _)| p + 1).sum();
    checks.push(AxiomCheck::from_search("identity is a two-sided unit", counted, found));

    // Multiplication.
    let mu = op.multiplication();
    let lhs = op.comp(mu, 1, mu)?;
    let rhs = op.comp(mu, 2, mu)?;
    checks.push(AxiomCheck::from_search(
        "μ ∘₁ μ = μ ∘₂ μ",
        1,
        mismatch("μ ∘₁ μ = μ ∘₂ μ", &[], &lhs, &rhs),
    ));
    let e = op.unit();
    let first = op.comp(mu, 1, e)?;
    let second = op.comp(mu, 2, e)?;
    let found = mismatch("μ ∘₁ e = 𝟙", &[("i", 1)], &first, one)
        .or_else(|| mismatch("μ ∘₂ e = 𝟙", &[("i", 2)], &second, one));
    checks.push(AxiomCheck::from_search("μ ∘₁ e = μ ∘₂ e = 𝟙", 2, found));

    Ok(AxiomReport::new("operad with multiplication", checks))
}

/// Chain-level identities of the cochain calculus, each returning the
/// violation if the two sides differ.
pub mod identities {
    use super::*;

    fn sign<O: Operad>(op: &O, exp: i64) -> crate::scalar::Scalar {
        op.field().sign(exp)
    }

    /// `{φ,{ψ,χ}} = {{φ,ψ},χ} + (−1)^{(p−1)(q−1)} {ψ,{φ,χ}}`.
    pub fn jacobi<O: Operad>(op: &O, phi: &O::Elem, psi: &O::Elem, chi: &O::Elem) -> Result<Option<Violation>> {
        let (p, q) = (phi.grade() as i64, psi.grade() as i64);
        let lhs = op.bracket(phi, &op.bracket(psi, chi)?)?;
        let mut rhs = op.bracket(&op.bracket(phi, psi)?, chi)?;
        rhs.add_scaled(&sign(op, (p - 1) * (q - 1)), &op.bracket(psi, &op.bracket(phi, chi)?)?);
        Ok(mismatch("graded Jacobi identity", &[("p", p), ("q", q), ("r", chi.grade() as i64)], &lhs, &rhs))
    }

    /// `{φ,ψ} + (−1)^{(p−1)(q−1)} {ψ,φ} = 0`.
    pub fn antisymmetry<O: Operad>(op: &O, phi: &O::Elem, psi: &O::Elem) -> Result<Option<Violation>> {
        let (p, q) = (phi.grade() as i64, psi.grade() as i64);
        let mut lhs = op.bracket(phi, psi)?;
        lhs.add_scaled(&sign(op, (p - 1) * (q - 1)), &op.bracket(psi, phi)?);
        let zero = op.zero(lhs.grade());
        Ok(mismatch("graded antisymmetry", &[("p", p), ("q", q)], &lhs, &zero))
    }

    /// `δδφ = 0`.
    pub fn delta_squared<O: Operad>(op: &O, phi: &O::Elem) -> Result<Option<Violation>> {
        let dd = op.delta(&op.delta(phi)?)?;
        let zero = op.zero(dd.grade());
        Ok(mismatch("δ ∘ δ = 0", &[("p", phi.grade() as i64)], &dd, &zero))
    }

    /// `δ(φ ⌣ ψ) = δφ ⌣ ψ + (−1)^p φ ⌣ δψ`.
    pub fn delta_leibniz<O: Operad>(op: &O, phi: &O::Elem, psi: &O::Elem) -> Result<Option<Violation>> {
        let p = phi.grade() as i64;
        let lhs = op.delta(&op.cup(phi, psi)?)?;
        let mut rhs = op.cup(&op.delta(phi)?, psi)?;
        rhs.add_scaled(&sign(op, p), &op.cup(phi, &op.delta(psi)?)?);
        Ok(mismatch(
            "δ(φ ⌣ ψ) = δφ ⌣ ψ + (−1)^p φ ⌣ δψ",
            &[("p", p), ("q", psi.grade() as i64)],
            &lhs,
            &rhs,
        ))
    }

    /// `φ ∘̄ δψ − (−1)^{p−1} δ(φ ∘̄ ψ) + (−1)^{p−1} δφ ∘̄ ψ = φ ⌣ ψ − (−1)^{pq} ψ ⌣ φ`.
    pub fn commutativity_defect<O: Operad>(op: &O, phi: &O::Elem, psi: &O::Elem) -> Result<Option<Violation>> {
        commutativity_with_signs(op, phi, psi, false)
    }

    /// The same identity with `(−1)^{p−1}` on `φ ∘̄ δψ` instead of on
    /// `δφ ∘̄ ψ`. The two agree for odd `p` and for cocycles; for even `p`
    /// this form is false in general.
    pub fn commutativity_defect_sign_on_first<O: Operad>(op: &O, phi: &O::Elem, psi: &O::Elem) -> Result<Option<Violation>> {
        commutativity_with_signs(op, phi, psi, true)
    }

    fn commutativity_with_signs<O: Operad>(op: &O, phi: &O::Elem, psi: &O::Elem, sign_on_first: bool) -> Result<Option<Violation>> {
        let (p, q) = (phi.grade() as i64, psi.grade() as i64);
        let s = sign(op, p - 1);
        let one = op.field().one();
        let (first, last) = if sign_on_first { (&s, &one) } else { (&one, &s) };
        let mut lhs = op.bar_circ(phi, &op.delta(psi)?)?.scaled(first);
        lhs.add_scaled(&s.neg_ref(), &op.delta(&op.bar_circ(phi, psi)?)?);
        lhs.add_scaled(last, &op.bar_circ(&op.delta(phi)?, psi)?);
        let mut rhs = op.cup(phi, psi)?;
        rhs.add_scaled(&sign(op, p * q + 1), &op.cup(psi, phi)?);
        Ok(mismatch("cup commutativity up to δ", &[("p", p), ("q", q)], &lhs, &rhs))
    }

    /// Normalized inputs give normalized `δφ`, `φ ⌣ ψ` and `{φ,ψ}`.
    pub fn normalized_closure<O: Operad>(op: &O, phi: &O::Elem, psi: &O::Elem) -> Result<Option<Violation>> {
        let outputs = [
            ("δφ is normalized", op.delta(phi)?),
            ("φ ⌣ ψ is normalized", op.cup(phi, psi)?),
            ("{φ,ψ} is normalized", op.bracket(phi, psi)?),
        ];
        for (name, out) in outputs {
            if !op.is_normalized(&out)? {
                return Ok(Some(Violation::new(
                    name,
                    &[("p", phi.grade() as i64), ("q", psi.grade() as i64)],
                    &out,
                    "an element killed by every codegeneracy",
                )));
            }
        }
        Ok(None)
    }
}
