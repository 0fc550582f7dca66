//! Para-cyclic unital comp modules over an operad with multiplication: the
//! maps `•ᵢ`, the cyclic operator, the induced cyclic module and the mixed
//! complex `(M, b, B)`.

use crate::algebra::SparseVec;
use crate::element::Vector;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::mutation::{MutableOp, Mutation};
use crate::operad::Operad;
use crate::report::{AxiomCheck, AxiomReport, Violation};
use crate::scalar::{FieldSpec, Scalar};

/// Which chain complex operators act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Complex {
    Full,
    /// The quotient by degenerate chains, realized as a projection onto the
    /// span of the non-degenerate basis tensors.
    Normalized,
}

pub type OpElem<M> = <<M as CompModule>::Op as Operad>::Elem;

pub trait CompModule: Send + Sync {
    type Op: Operad;
    type Elem: Vector;

    fn operad(&self) -> &Self::Op;

    fn name(&self) -> String;

    /// Largest degree operations may produce.
    fn degree_cap(&self) -> usize;

    fn zero(&self, degree: usize) -> Self::Elem;

    fn dim(&self, degree: usize, complex: Complex) -> usize;

    fn basis(&self, degree: usize, complex: Complex) -> Vec<Self::Elem>;

    /// Coordinates in [`CompModule::basis`]. On the normalized complex the
    /// degenerate part of `x` is ignored.
    fn coords(&self, x: &Self::Elem, complex: Complex) -> SparseVec;

    fn from_coords(&self, degree: usize, complex: Complex, coords: &[(usize, Scalar)]) -> Self::Elem;

    /// `φ •ᵢ x` on the range where it is defined: `i + p ≤ n + 1`.
    fn bullet_raw(&self, phi: &OpElem<Self>, i: usize, x: &Self::Elem) -> Self::Elem;

    /// The operator `t`.
    fn cyclic_raw(&self, x: &Self::Elem) -> Self::Elem;

    /// Projection killing the degenerate part.
    fn project_normalized(&self, x: &Self::Elem) -> Self::Elem;

    /// Content identifier used to key cached matrices; `None` disables
    /// caching.
    fn fingerprint(&self) -> Option<String> {
        None
    }

    fn field(&self) -> FieldSpec {
        self.operad().field()
    }

    fn ensure_degree(&self, degree: usize) -> Result<()> {
        if degree > self.degree_cap() {
            return Err(Error::Capacity {
                what: "comp module",
                degree,
                cap: self.degree_cap(),
            });
        }
        Ok(())
    }

    /// `φ •ᵢ x`, zero outside the declared range.
    fn bullet(&self, phi: &OpElem<Self>, i: usize, x: &Self::Elem) -> Result<Self::Elem> {
        let (p, n) = (phi.grade(), x.grade());
        if i + p > n + 1 {
            return Ok(self.zero((n + 1).saturating_sub(p)));
        }
        self.ensure_degree(n + 1 - p)?;
        Ok(self.bullet_raw(phi, i, x))
    }

    fn t(&self, x: &Self::Elem) -> Self::Elem {
        self.cyclic_raw(x)
    }

    fn t_pow(&self, x: &Self::Elem, k: usize) -> Self::Elem {
        let mut y = x.clone();
        for _ in 0..k {
            y = self.cyclic_raw(&y);
        }
        y
    }

    /// `dᵢ = μ •ᵢ` for `i < n` and `d_n = μ •₀ t`.
    fn face(&self, i: usize, x: &Self::Elem) -> Result<Self::Elem> {
        let n = x.grade();
        if n == 0 || i > n {
            return Err(Error::Usage(format!("face d_{i} undefined in degree {n}")));
        }
        let mu = self.operad().multiplication();
        if i < n {
            self.bullet(mu, i, x)
        } else {
            self.bullet(mu, 0, &self.t(x))
        }
    }

    /// `s_j = e •_{j+1}` for `−1 ≤ j ≤ n`; `j = −1` is `e •₀`.
    fn degeneracy(&self, j: i64, x: &Self::Elem) -> Result<Self::Elem> {
        let n = x.grade() as i64;
        if j < -1 || j > n {
            return Err(Error::Usage(format!("degeneracy s_{j} undefined in degree {n}")));
        }
        self.bullet(self.operad().unit(), (j + 1) as usize, x)
    }

    /// `N = Σᵢ (−1)^{in} tⁱ`.
    fn norm(&self, x: &Self::Elem) -> Self::Elem {
        let n = x.grade();
        let mut acc = self.zero(n);
        let mut y = x.clone();
        for i in 0..=n {
            acc.add_scaled(&self.field().sign((i * n) as i64), &y);
            y = self.t(&y);
        }
        acc
    }

    fn is_normalized_chain(&self, x: &Self::Elem) -> bool {
        self.project_normalized(x) == *x
    }
}

/// Whether `t^{n+1} = id` on every basis element of degree at most `cap`.
pub fn is_cyclic<M: CompModule>(m: &M, cap: usize) -> bool {
    cyclicity_violation(m, cap).is_none()
}

fn cyclicity_violation<M: CompModule>(m: &M, cap: usize) -> Option<Violation> {
    for n in 0..=cap {
        for (k, x) in m.basis(n, Complex::Full).iter().enumerate() {
            let y = m.t_pow(x, n + 1);
            if y != *x {
                return Some(Violation::new("t^{n+1} = id", &[("n", n as i64), ("x", k as i64)], y, x));
            }
        }
    }
    None
}

fn mismatch<E: Vector>(axiom: &str, indices: &[(&str, i64)], lhs: &E, rhs: &E) -> Option<Violation> {
    (lhs != rhs).then(|| Violation::new(axiom, indices, lhs, rhs))
}

/// The right-hand side of the relation for `φ •ᵢ (ψ •ⱼ x)`.
fn relation_rhs<M: CompModule>(
    m: &M,
    phi: &OpElem<M>,
    i: usize,
    psi: &OpElem<M>,
    j: usize,
    x: &M::Elem,
) -> Result<(M::Elem, &'static str)> {
    let (p, q) = (phi.grade(), psi.grade());
    if j < i {
        let inner = m.bullet(phi, i + q - 1, x)?;
        return Ok((m.bullet(psi, j, &inner)?, "φ•ᵢ(ψ•ⱼx) = ψ•ⱼ(φ•_{i+q−1}x), j < i"));
    }
    if p == 0 {
        let inner = m.bullet(phi, i, x)?;
        return Ok((m.bullet(psi, j + 1, &inner)?, "φ•ᵢ(ψ•ⱼx) = ψ•_{j+1}(φ•ᵢx), p = 0, i ≤ j"));
    }
    if i + p > j {
        let composed = m.operad().comp(phi, j - i + 1, psi)?;
        Ok((m.bullet(&composed, i, x)?, "φ•ᵢ(ψ•ⱼx) = (φ∘_{j−i+1}ψ)•ᵢx, j − p < i ≤ j"))
    } else {
        let inner = m.bullet(phi, i, x)?;
        Ok((m.bullet(psi, j - p + 1, &inner)?, "φ•ᵢ(ψ•ⱼx) = ψ•_{j−p+1}(φ•ᵢx), i ≤ j − p"))
    }
}

/// Verifies the comp module relations (including `i = 0`), unitality,
/// t-compatibility and cyclicity, exhaustively on basis elements with
/// `n ≤ degree_cap` and operad arities `≤ arity_cap`.
///
/// Cyclicity is reported in [`AxiomReport::status`] and does not by itself
/// fail the report: para-cyclic modules are valid.
pub fn check_comp_module_axioms<M: CompModule>(
    m: &M,
    degree_cap: usize,
    arity_cap: usize,
    strategy: Strategy,
) -> Result<AxiomReport> {
    let op = m.operad();
    let ops = op.basis_upto(arity_cap);
    let chains: Vec<(usize, usize, M::Elem)> = (0..=degree_cap)
        .flat_map(|n| {
            m.basis(n, Complex::Full)
                .into_iter()
                .enumerate()
                .map(move |(k, x)| (n, k, x))
        })
        .collect();
    let mut checks = Vec::new();

    // Three-case relations.
    let mut cases = Vec::new();
    for c in 0..chains.len() {
        for a in 0..ops.len() {
            for b in 0..ops.len() {
                cases.push((a, b, c));
            }
        }
    }
    let count = cases
        .iter()
        .map(|&(a, b, c)| {
            let (p, q, n) = (ops[a].0, ops[b].0, chains[c].0);
            if q > n + 1 || p > n + 2 - q {
                0
            } else {
                (n + 2 - q) * (n + 3 - q - p)
            }
        })
        .sum();
    let found = exec::try_find_map_first(strategy, &cases, |&(a, b, c)| -> Result<Option<Violation>> {
        let (p, ka, phi) = &ops[a];
        let (q, kb, psi) = &ops[b];
        let (n, kc, x) = &chains[c];
        if *q > n + 1 {
            return Ok(None);
        }
        let mid = n + 1 - q;
        if *p > mid + 1 {
            return Ok(None);
        }
        for j in 0..=mid {
            let inner = m.bullet(psi, j, x)?;
            for i in 0..=(mid + 1 - p) {
                let lhs = m.bullet(phi, i, &inner)?;
                let (rhs, name) = relation_rhs(m, phi, i, psi, j, x)?;
                let indices = [
                    ("p", *p as i64),
                    ("phi", *ka as i64),
                    ("q", *q as i64),
                    ("psi", *kb as i64),
                    ("n", *n as i64),
                    ("x", *kc as i64),
                    ("i", i as i64),
                    ("j", j as i64),
                ];
                if let Some(v) = mismatch(name, &indices, &lhs, &rhs) {
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    })?;
    checks.push(AxiomCheck::from_search("comp module relations", count, found));

    // Unitality for i = 0..n.
    let one = op.identity();
    let found = exec::try_find_map_first(strategy, &chains, |(n, k, x)| -> Result<Option<Violation>> {
        for i in 0..=*n {
            let y = m.bullet(one, i, x)?;
            if let Some(v) = mismatch("𝟙 •ᵢ x = x", &[("n", *n as i64), ("x", *k as i64), ("i", i as i64)], &y, x) {
                return Ok(Some(v));
            }
        }
        Ok(None)
    })?;
    let counted = chains.iter().map(|(n, _, _)| n + 1).sum();
    checks.push(AxiomCheck::from_search("unitality", counted, found));

    // t-compatibility.
    let pairs: Vec<(usize, usize)> = (0..chains.len())
        .flat_map(|c| (0..ops.len()).map(move |a| (a, c)))
        .collect();
    let count = pairs
        .iter()
        .map(|&(a, c)| (chains[c].0 + 1).saturating_sub(ops[a].0))
        .sum();
    let found = exec::try_find_map_first(strategy, &pairs, |&(a, c)| -> Result<Option<Violation>> {
        let (p, ka, phi) = &ops[a];
        let (n, kc, x) = &chains[c];
        if p > n {
            return Ok(None);
        }
        let tx = m.t(x);
        for i in 0..=(n - p) {
            let lhs = m.t(&m.bullet(phi, i, x)?);
            let rhs = m.bullet(phi, i + 1, &tx)?;
            let indices = [("p", *p as i64), ("phi", *ka as i64), ("n", *n as i64), ("x", *kc as i64), ("i", i as i64)];
            if let Some(v) = mismatch("t(φ•ᵢx) = φ•ᵢ₊₁t(x)", &indices, &lhs, &rhs) {
                return Ok(Some(v));
            }
        }
        Ok(None)
    })?;
    checks.push(AxiomCheck::from_search("t-compatibility", count, found));

    let mut report = AxiomReport::new(format!("cyclic comp module {}", m.name()), checks);
    let cyclic = cyclicity_violation(m, degree_cap);
    report.status = Some(if cyclic.is_none() { "cyclic" } else { "para-cyclic" }.to_string());
    report.checks.push(AxiomCheck {
        axiom: "t^{n+1} = id".into(),
        passed: cyclic.is_none(),
        checked: chains.len(),
        violation: cyclic,
    });
    Ok(report)
}

/// Verifies the simplicial and cyclic identities of the induced cyclic
/// module on basis chains of degree at most `cap`. Refuses on para-cyclic
/// modules, where the identities involving `d_n` need not hold.
pub fn check_cyclic_identities<M: CompModule>(m: &M, cap: usize, strategy: Strategy) -> Result<AxiomReport> {
    if let Some(v) = cyclicity_violation(m, cap + 1) {
        return Err(Error::Refused(format!(
            "module {} is only para-cyclic ({} fails at {:?})",
            m.name(),
            v.axiom,
            v.indices
        )));
    }
    let chains: Vec<(usize, usize, M::Elem)> = (0..=cap)
        .flat_map(|n| {
            m.basis(n, Complex::Full)
                .into_iter()
                .enumerate()
                .map(move |(k, x)| (n, k, x))
        })
        .collect();
    type Check<M> = fn(&M, usize, &<M as CompModule>::Elem) -> Result<Option<(&'static str, Vec<(&'static str, i64)>, String, String)>>;
    let families: Vec<(&str, Check<M>)> = vec![
        ("dᵢdⱼ = dⱼ₋₁dᵢ (i < j)", faces_faces::<M>),
        ("sᵢsⱼ = sⱼ₊₁sᵢ (i ≤ j)", degeneracies_degeneracies::<M>),
        ("dᵢsⱼ relations", faces_degeneracies::<M>),
        ("dᵢt = t dᵢ₋₁, d₀t = d_n", faces_cyclic::<M>),
        ("sᵢt = t sᵢ₋₁, s₀t = t²s_n", degeneracies_cyclic::<M>),
        ("e•₀x = t s_n(x)", extra_degeneracy::<M>),
    ];
    let mut checks = Vec::new();
    for (name, f) in families {
        let found = exec::try_find_map_first(strategy, &chains, |(n, k, x)| -> Result<Option<Violation>> {
            Ok(f(m, *n, x)?.map(|(axiom, mut idx, l, r)| {
                idx.push(("n", *n as i64));
                idx.push(("x", *k as i64));
                Violation::new(axiom, &idx, l, r)
            }))
        })?;
        checks.push(AxiomCheck::from_search(name, chains.len(), found));
    }
    Ok(AxiomReport::new(format!("cyclic module {}", m.name()), checks))
}

type Found = Option<(&'static str, Vec<(&'static str, i64)>, String, String)>;

fn differ<E: Vector>(axiom: &'static str, idx: Vec<(&'static str, i64)>, l: &E, r: &E) -> Found {
    (l != r).then(|| (axiom, idx, l.to_string(), r.to_string()))
}

fn faces_faces<M: CompModule>(m: &M, n: usize, x: &M::Elem) -> Result<Found> {
    if n < 2 {
        return Ok(None);
    }
    for j in 1..=n {
        let dj = m.face(j, x)?;
        for i in 0..j {
            let l = m.face(i, &dj)?;
            let r = m.face(j - 1, &m.face(i, x)?)?;
            if let Some(f) = differ("dᵢdⱼ = dⱼ₋₁dᵢ", vec![("i", i as i64), ("j", j as i64)], &l, &r) {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

fn degeneracies_degeneracies<M: CompModule>(m: &M, n: usize, x: &M::Elem) -> Result<Found> {
    for j in 0..=n {
        let sj = m.degeneracy(j as i64, x)?;
        for i in 0..=j {
            let l = m.degeneracy(i as i64, &sj)?;
            let r = m.degeneracy(j as i64 + 1, &m.degeneracy(i as i64, x)?)?;
            if let Some(f) = differ("sᵢsⱼ = sⱼ₊₁sᵢ", vec![("i", i as i64), ("j", j as i64)], &l, &r) {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

fn faces_degeneracies<M: CompModule>(m: &M, n: usize, x: &M::Elem) -> Result<Found> {
    for j in 0..=n {
        let sj = m.degeneracy(j as i64, x)?;
        for i in 0..=n + 1 {
            let l = m.face(i, &sj)?;
            let (r, name) = if i < j {
                (m.degeneracy(j as i64 - 1, &m.face(i, x)?)?, "dᵢsⱼ = sⱼ₋₁dᵢ (i < j)")
            } else if i == j || i == j + 1 {
                (x.clone(), "dⱼsⱼ = dⱼ₊₁sⱼ = id")
            } else {
                (m.degeneracy(j as i64, &m.face(i - 1, x)?)?, "dᵢsⱼ = sⱼdᵢ₋₁ (i > j + 1)")
            };
            if let Some(f) = differ(name, vec![("i", i as i64), ("j", j as i64)], &l, &r) {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

fn faces_cyclic<M: CompModule>(m: &M, n: usize, x: &M::Elem) -> Result<Found> {
    if n == 0 {
        return Ok(None);
    }
    let tx = m.t(x);
    if let Some(f) = differ("d₀t = d_n", vec![], &m.face(0, &tx)?, &m.face(n, x)?) {
        return Ok(Some(f));
    }
    for i in 1..=n {
        let l = m.face(i, &tx)?;
        let r = m.t(&m.face(i - 1, x)?);
        if let Some(f) = differ("dᵢt = t dᵢ₋₁", vec![("i", i as i64)], &l, &r) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn degeneracies_cyclic<M: CompModule>(m: &M, n: usize, x: &M::Elem) -> Result<Found> {
    let tx = m.t(x);
    let l = m.degeneracy(0, &tx)?;
    let r = m.t_pow(&m.degeneracy(n as i64, x)?, 2);
    if let Some(f) = differ("s₀t = t²s_n", vec![], &l, &r) {
        return Ok(Some(f));
    }
    for i in 1..=n {
        let l = m.degeneracy(i as i64, &tx)?;
        let r = m.t(&m.degeneracy(i as i64 - 1, x)?);
        if let Some(f) = differ("sᵢt = t sᵢ₋₁", vec![("i", i as i64)], &l, &r) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn extra_degeneracy<M: CompModule>(m: &M, n: usize, x: &M::Elem) -> Result<Found> {
    let l = m.degeneracy(-1, x)?;
    let r = m.t(&m.degeneracy(n as i64, x)?);
    Ok(differ("e•₀x = t s_n(x)", vec![], &l, &r))
}

// ---------------------------------------------------------------------------

/// The chain-level operators of the mixed complex and of the calculus,
/// acting on either the full or the normalized complex, optionally with one
/// summand's sign flipped.
pub struct Operators<'a, M: CompModule> {
    pub module: &'a M,
    pub complex: Complex,
    pub mutation: Option<Mutation>,
}

impl<'a, M: CompModule> Clone for Operators<'a, M> {
    fn clone(&self) -> Self {
        Operators {
            module: self.module,
            complex: self.complex,
            mutation: self.mutation,
        }
    }
}

impl<'a, M: CompModule> Operators<'a, M> {
    pub fn new(module: &'a M, complex: Complex) -> Self {
        Operators {
            module,
            complex,
            mutation: None,
        }
    }

    pub fn with_mutation(mut self, mutation: Option<Mutation>) -> Self {
        self.mutation = mutation;
        self
    }

    pub(crate) fn field(&self) -> FieldSpec {
        self.module.field()
    }

    /// Sign `(−1)^exp` of summand `term` of `op`, honouring the mutation.
    pub(crate) fn term_sign(&self, op: MutableOp, term: usize, exp: i64) -> Scalar {
        let flip = Mutation::flips(self.mutation, op, term) as i64;
        self.field().sign(exp + flip)
    }

    /// Projects onto the normalized complex when working there.
    pub fn finish(&self, x: M::Elem) -> M::Elem {
        match self.complex {
            Complex::Full => x,
            Complex::Normalized => self.module.project_normalized(&x),
        }
    }

    /// `b = Σ_{i<n} (−1)ⁱ μ•ᵢ + (−1)ⁿ μ•₀t`, zero on `M(0)`.
    pub fn b(&self, x: &M::Elem) -> Result<M::Elem> {
        let m = self.module;
        let n = x.grade();
        if n == 0 {
            return Ok(m.zero(0));
        }
        let mut acc = m.zero(n - 1);
        for i in 0..=n {
            acc.add_scaled(&self.term_sign(MutableOp::Boundary, i, i as i64), &m.face(i, x)?);
        }
        Ok(self.finish(acc))
    }

    /// Connes' `B`. On the normalized complex `B = Σᵢ (−1)^{in} e•₀tⁱ`; on
    /// the full complex `B = (1 − (−1)^{n+1}t) e•₀ N`.
    pub fn connes_b(&self, x: &M::Elem) -> Result<M::Elem> {
        let m = self.module;
        let n = x.grade();
        m.ensure_degree(n + 1)?;
        let e = m.operad().unit();
        let mut acc = m.zero(n + 1);
        let mut y = x.clone();
        for i in 0..=n {
            let sign = self.term_sign(MutableOp::Connes, i, (i * n) as i64);
            acc.add_scaled(&sign, &m.bullet(e, 0, &y)?);
            y = m.t(&y);
        }
        if self.complex == Complex::Full {
            let rotated = m.t(&acc);
            acc.add_scaled(&self.field().sign(n as i64), &rotated);
        }
        Ok(self.finish(acc))
    }

    pub fn t(&self, x: &M::Elem) -> M::Elem {
        self.finish(self.module.t(x))
    }

    pub fn norm(&self, x: &M::Elem) -> M::Elem {
        self.finish(self.module.norm(x))
    }
}

// ---------------------------------------------------------------------------

/// How [`Twisted`] replaces the cyclic operator of the wrapped module.
#[derive(Clone, Debug, PartialEq)]
pub enum Twist {
    /// `t := id`.
    Identity,
    /// `t := c·t`; para-cyclic unless `c^{n+1} = 1`.
    Scaled(Scalar),
}

/// A module with its cyclic operator replaced, used to exercise the
/// checkers on broken and para-cyclic structures.
pub struct Twisted<M> {
    pub inner: M,
    pub twist: Twist,
}

impl<M: CompModule> CompModule for Twisted<M> {
    type Op = M::Op;
    type Elem = M::Elem;

    fn operad(&self) -> &Self::Op {
        self.inner.operad()
    }

    fn name(&self) -> String {
        match &self.twist {
            Twist::Identity => format!("{} with t = id", self.inner.name()),
            Twist::Scaled(c) => format!("{} with t scaled by {c}", self.inner.name()),
        }
    }

    fn degree_cap(&self) -> usize {
        self.inner.degree_cap()
    }

    fn zero(&self, degree: usize) -> Self::Elem {
        self.inner.zero(degree)
    }

    fn dim(&self, degree: usize, complex: Complex) -> usize {
        self.inner.dim(degree, complex)
    }

    fn basis(&self, degree: usize, complex: Complex) -> Vec<Self::Elem> {
        self.inner.basis(degree, complex)
    }

    fn coords(&self, x: &Self::Elem, complex: Complex) -> SparseVec {
        self.inner.coords(x, complex)
    }

    fn from_coords(&self, degree: usize, complex: Complex, coords: &[(usize, Scalar)]) -> Self::Elem {
        self.inner.from_coords(degree, complex, coords)
    }

    fn bullet_raw(&self, phi: &OpElem<Self>, i: usize, x: &Self::Elem) -> Self::Elem {
        self.inner.bullet_raw(phi, i, x)
    }

    fn cyclic_raw(&self, x: &Self::Elem) -> Self::Elem {
        match &self.twist {
            Twist::Identity => x.clone(),
            Twist::Scaled(c) => self.inner.cyclic_raw(x).scaled(c),
        }
    }

    fn project_normalized(&self, x: &Self::Elem) -> Self::Elem {
        self.inner.project_normalized(x)
    }
}
