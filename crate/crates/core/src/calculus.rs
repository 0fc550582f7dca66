//! Cap product, Lie derivative and cyclic correction on a cyclic comp
//! module, graded commutators, and the chain-level identity suites.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::comp_module::{is_cyclic, CompModule, Complex, OpElem, Operators};
use crate::element::Vector;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::mutation::MutableOp;
use crate::operad::Operad;

/// The sign exponents of the calculus.
pub struct SignConventions;

impl SignConventions {
    /// `ζ(p,i) = (p−1)(i−1)`.
    pub fn zeta(p: usize, i: usize) -> i64 {
        (p as i64 - 1) * (i as i64 - 1)
    }

    /// `ξ(n,p,i) = n(i−1) + p − 1`.
    pub fn xi(n: usize, p: usize, i: usize) -> i64 {
        n as i64 * (i as i64 - 1) + p as i64 - 1
    }

    /// `θ(n,p,j,i) = n(j−1) + (p−1)(i−1)`.
    pub fn theta(n: usize, p: usize, j: usize, i: usize) -> i64 {
        n as i64 * (j as i64 - 1) + Self::zeta(p, i)
    }
}

fn check_degree<E: Vector>(what: &str, out: &E, expected: i64) -> Result<()> {
    if !out.is_zero() && out.grade() as i64 != expected {
        return Err(Error::Usage(format!(
            "{what} produced degree {} instead of {expected}",
            out.grade()
        )));
    }
    Ok(())
}

impl<'a, M: CompModule> Operators<'a, M> {
    /// `ι_φ x = (μ ∘₂ φ) •₀ x`, of degree `n − p`.
    pub fn iota(&self, phi: &OpElem<M>, x: &M::Elem) -> Result<M::Elem> {
        let m = self.module;
        let (p, n) = (phi.grade(), x.grade());
        if p > n {
            return Ok(m.zero(0));
        }
        let op = m.operad();
        op.ensure_arity(p + 1, "operad")?;
        let lifted = op.comp_raw(op.multiplication(), 2, phi);
        let out = m
            .bullet(&lifted, 0, x)?
            .scaled(&self.term_sign(MutableOp::Cap, 0, 0));
        check_degree("ι", &out, n as i64 - p as i64)?;
        Ok(self.finish(out))
    }

    /// `𝓛_φ x = Σᵢ (−1)^{ζ(p,i)} φ•ᵢx + Σᵢ (−1)^{ξ(n,p,i)} φ•₀t^{i−1}x`, of
    /// degree `n − p + 1`.
    ///
    /// The formula is total: for `p = n + 1` it reduces to
    /// `(−1)^{p−1} φ•₀N(x)`, for `p = 0` to `Σᵢ (−1)^{i−1} φ•ᵢx`, and it
    /// vanishes for `p > n + 1`.
    pub fn lie(&self, phi: &OpElem<M>, x: &M::Elem) -> Result<M::Elem> {
        let m = self.module;
        let (p, n) = (phi.grade(), x.grade());
        if p > n + 1 {
            return Ok(m.zero(0));
        }
        let mut acc = m.zero(n + 1 - p);
        let mut term = 0;
        for i in 1..=(n + 1 - p) {
            let sign = self.term_sign(MutableOp::Lie, term, SignConventions::zeta(p, i));
            acc.add_scaled(&sign, &m.bullet(phi, i, x)?);
            term += 1;
        }
        let mut y = x.clone();
        for i in 1..=p {
            let sign = self.term_sign(MutableOp::Lie, term, SignConventions::xi(n, p, i));
            acc.add_scaled(&sign, &m.bullet(phi, 0, &y)?);
            y = m.t(&y);
            term += 1;
        }
        check_degree("𝓛", &acc, n as i64 + 1 - p as i64)?;
        Ok(self.finish(acc))
    }

    /// `S_φ x = Σ_{j=1}^{n−p+1} Σ_{i=j}^{n−p+1} (−1)^{θ(n,p,j,i)} e•₀(φ•ᵢt^{j−1}x)`,
    /// of degree `n − p + 2`; zero for `p > n`.
    pub fn correction(&self, phi: &OpElem<M>, x: &M::Elem) -> Result<M::Elem> {
        let m = self.module;
        let (p, n) = (phi.grade(), x.grade());
        if p > n {
            return Ok(m.zero(0));
        }
        let e = m.operad().unit();
        let top = n + 1 - p;
        let mut acc = m.zero(top + 1);
        let mut y = x.clone();
        let mut term = 0;
        for j in 1..=top {
            for i in j..=top {
                let sign = self.term_sign(MutableOp::Correction, term, SignConventions::theta(n, p, j, i));
                acc.add_scaled(&sign, &m.bullet(e, 0, &m.bullet(phi, i, &y)?)?);
                term += 1;
            }
            y = m.t(&y);
        }
        check_degree("S", &acc, n as i64 + 2 - p as i64)?;
        Ok(self.finish(acc))
    }

    pub fn op_b(&self) -> GradedOperator<'a, M::Elem> {
        let ops = self.clone();
        GradedOperator::new("b", -1, 1, move |x| ops.b(x))
    }

    pub fn op_connes(&self) -> GradedOperator<'a, M::Elem> {
        let ops = self.clone();
        GradedOperator::new("B", 1, 1, move |x| ops.connes_b(x))
    }

    pub fn op_iota(&self, phi: &OpElem<M>) -> GradedOperator<'a, M::Elem>
    where
        OpElem<M>: 'a,
    {
        let (ops, phi) = (self.clone(), phi.clone());
        let p = phi.grade() as i64;
        GradedOperator::new("ι", -p, p, move |x| ops.iota(&phi, x))
    }

    pub fn op_lie(&self, phi: &OpElem<M>) -> GradedOperator<'a, M::Elem>
    where
        OpElem<M>: 'a,
    {
        let (ops, phi) = (self.clone(), phi.clone());
        let p = phi.grade() as i64;
        GradedOperator::new("𝓛", 1 - p, p - 1, move |x| ops.lie(&phi, x))
    }

    pub fn op_correction(&self, phi: &OpElem<M>) -> GradedOperator<'a, M::Elem>
    where
        OpElem<M>: 'a,
    {
        let (ops, phi) = (self.clone(), phi.clone());
        let p = phi.grade() as i64;
        GradedOperator::new("S", 2 - p, p, move |x| ops.correction(&phi, x))
    }
}

type Action<'a, E> = Arc<dyn Fn(&E) -> Result<E> + Send + Sync + 'a>;

/// A homogeneous linear operator on a graded module: it changes degree by
/// `shift` and carries `degree` in commutator signs.
#[derive(Clone)]
pub struct GradedOperator<'a, E> {
    pub name: String,
    pub shift: i64,
    pub degree: i64,
    action: Action<'a, E>,
}

impl<'a, E: Vector + 'a> GradedOperator<'a, E> {
    pub fn new(
        name: impl Into<String>,
        shift: i64,
        degree: i64,
        f: impl Fn(&E) -> Result<E> + Send + Sync + 'a,
    ) -> Self {
        GradedOperator {
            name: name.into(),
            shift,
            degree,
            action: Arc::new(f),
        }
    }

    pub fn apply(&self, x: &E) -> Result<E> {
        (self.action)(x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let (f, g) = (self.action.clone(), other.action.clone());
        GradedOperator::new(
            format!("{}{}", self.name, other.name),
            self.shift + other.shift,
            self.degree + other.degree,
            move |x| f(&g(x)?),
        )
    }

    /// `self + c·other`; both must shift degree equally.
    pub fn add_scaled(&self, c: i64, other: &Self) -> Result<Self> {
        if self.shift != other.shift || (self.degree - other.degree) % 2 != 0 {
            return Err(Error::Usage(format!(
                "cannot add {} (shift {}, degree {}) and {} (shift {}, degree {})",
                self.name, self.shift, self.degree, other.name, other.shift, other.degree
            )));
        }
        let (f, g) = (self.action.clone(), other.action.clone());
        Ok(GradedOperator::new(
            format!("({} + {c}·{})", self.name, other.name),
            self.shift,
            self.degree,
            move |x| {
                let mut out = f(x)?;
                let y = g(x)?;
                let s = y.field().from_i64(c);
                out.add_scaled(&s, &y);
                Ok(out)
            },
        ))
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.add_scaled(1, other)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.add_scaled(-1, other)
    }

    /// `[F,G] = FG − (−1)^{|F||G|} GF`.
    pub fn commutator(&self, other: &Self) -> Self {
        let sign = if (self.degree * other.degree).rem_euclid(2) == 0 { -1 } else { 1 };
        let fg = self.compose(other);
        let gf = other.compose(self);
        let mut out = fg.add_scaled(sign, &gf).expect("FG and GF are homogeneous of the same shift");
        out.name = format!("[{},{}]", self.name, other.name);
        out
    }
}

// ---------------------------------------------------------------------------
// Identity suites

/// A counterexample to an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub inputs: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    /// Name of the identity, written as the formula it checks.
    pub identity: String,
    pub checked: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// `pass`, `fail` or `refused`.
    pub status: String,
    pub inputs: String,
    pub identities: Vec<IdentityOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refusal: Option<String>,
    /// Preimages proving boundary membership, when the suite checks any.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str, inputs: String, identities: Vec<IdentityOutcome>) -> Self {
        let passed = identities.iter().all(|i| i.passed);
        SuiteReport {
            suite: suite.to_string(),
            status: if passed { "pass" } else { "fail" }.to_string(),
            inputs,
            identities,
            refusal: None,
            certificates: Vec::new(),
        }
    }

    pub fn refused(suite: &str, inputs: String, reason: String) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            status: "refused".to_string(),
            inputs,
            identities: Vec::new(),
            refusal: Some(reason),
            certificates: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn first_failure(&self) -> Option<&IdentityOutcome> {
        self.identities.iter().find(|i| !i.passed)
    }
}

/// Evaluates `eval` on every case and returns the first disagreement in
/// case order.
pub fn sweep<T, E, D, F>(strategy: Strategy, identity: &str, cases: &[T], describe: D, eval: F) -> Result<IdentityOutcome>
where
    T: Sync,
    E: Vector,
    D: Fn(&T) -> BTreeMap<String, String>,
    F: Fn(&T) -> Result<Option<(E, E)>> + Sync + Send,
{
    let indices: Vec<usize> = (0..cases.len()).collect();
    let found = exec::try_find_map_first(strategy, &indices, |&k| -> Result<Option<(usize, String, String)>> {
        Ok(match eval(&cases[k])? {
            Some((l, r)) if l != r => Some((k, l.to_string(), r.to_string())),
            _ => None,
        })
    })?;
    Ok(IdentityOutcome {
        identity: identity.to_string(),
        checked: cases.len(),
        passed: found.is_none(),
        witness: found.map(|(index, lhs, rhs)| Witness {
            inputs: describe(&cases[index]),
            lhs,
            rhs,
        }),
    })
}

/// Inputs to a suite: cochains `φ`, `ψ` and chains `x`, each tagged with a
/// label used in witnesses.
pub struct SuiteInputs<M: CompModule> {
    pub phis: Vec<(String, OpElem<M>)>,
    pub psis: Vec<(String, OpElem<M>)>,
    pub chains: Vec<(String, M::Elem)>,
    pub description: String,
    /// Use the k-th `φ`, `ψ` and `x` together instead of every combination.
    pub paired: bool,
}

impl<M: CompModule> SuiteInputs<M> {
    fn pairs(&self) -> Vec<(usize, usize)> {
        if self.paired {
            return (0..self.phis.len().min(self.chains.len())).map(|k| (k, k)).collect();
        }
        (0..self.phis.len())
            .flat_map(|a| (0..self.chains.len()).map(move |c| (a, c)))
            .collect()
    }

    fn triples(&self) -> Vec<(usize, usize, usize)> {
        if self.paired {
            let n = self.phis.len().min(self.psis.len()).min(self.chains.len());
            return (0..n).map(|k| (k, k, k)).collect();
        }
        let mut out = Vec::new();
        for a in 0..self.phis.len() {
            for b in 0..self.psis.len() {
                for c in 0..self.chains.len() {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    fn describe2(&self, &(a, c): &(usize, usize)) -> BTreeMap<String, String> {
        [
            ("phi".to_string(), self.phis[a].0.clone()),
            ("x".to_string(), self.chains[c].0.clone()),
        ]
        .into_iter()
        .collect()
    }

    fn describe3(&self, &(a, b, c): &(usize, usize, usize)) -> BTreeMap<String, String> {
        [
            ("phi".to_string(), self.phis[a].0.clone()),
            ("psi".to_string(), self.psis[b].0.clone()),
            ("x".to_string(), self.chains[c].0.clone()),
        ]
        .into_iter()
        .collect()
    }
}

/// Suite (a): `ι_φ ι_ψ = ι_{φ⌣ψ}` and `[b, ι_φ] = ι_{δφ}`.
pub fn suite_dg_module<M: CompModule>(ops: &Operators<M>, inputs: &SuiteInputs<M>, strategy: Strategy) -> Result<SuiteReport> {
    let op = ops.module.operad();
    let triples = inputs.triples();
    let first = sweep(strategy, "ι_φ ι_ψ = ι_{φ⌣ψ}", &triples, |t| inputs.describe3(t), |&(a, b, c)| {
        let (phi, psi, x) = (&inputs.phis[a].1, &inputs.psis[b].1, &inputs.chains[c].1);
        let lhs = ops.iota(phi, &ops.iota(psi, x)?)?;
        let rhs = ops.iota(&op.cup(phi, psi)?, x)?;
        Ok(Some((lhs, rhs)))
    })?;
    let pairs = inputs.pairs();
    let second = sweep(strategy, "[b, ι_φ] = ι_{δφ}", &pairs, |t| inputs.describe2(t), |&(a, c)| {
        let (phi, x) = (&inputs.phis[a].1, &inputs.chains[c].1);
        let lhs = ops.op_b().commutator(&ops.op_iota(phi)).apply(x)?;
        let rhs = ops.iota(&op.delta(phi)?, x)?;
        Ok(Some((lhs, rhs)))
    })?;
    Ok(SuiteReport::new("dg-module", inputs.description.clone(), vec![first, second]))
}

/// Suite (b): `[𝓛_φ, 𝓛_ψ] = 𝓛_{{φ,ψ}}`, `b = −𝓛_μ` and `[b, 𝓛_φ] + 𝓛_{δφ} = 0`.
pub fn suite_dg_lie<M: CompModule>(ops: &Operators<M>, inputs: &SuiteInputs<M>, strategy: Strategy) -> Result<SuiteReport> {
    let op = ops.module.operad();
    let triples = inputs.triples();
    let first = sweep(strategy, "[𝓛_φ, 𝓛_ψ] = 𝓛_{φ,ψ}", &triples, |t| inputs.describe3(t), |&(a, b, c)| {
        let (phi, psi, x) = (&inputs.phis[a].1, &inputs.psis[b].1, &inputs.chains[c].1);
        let lhs = ops.op_lie(phi).commutator(&ops.op_lie(psi)).apply(x)?;
        let rhs = ops.lie(&op.bracket(phi, psi)?, x)?;
        Ok(Some((lhs, rhs)))
    })?;
    let chains: Vec<usize> = (0..inputs.chains.len()).collect();
    let second = sweep(
        strategy,
        "b = −𝓛_μ",
        &chains,
        |&c| [("x".to_string(), inputs.chains[c].0.clone())].into_iter().collect(),
        |&c| {
            let x = &inputs.chains[c].1;
            let lhs = ops.b(x)?;
            let rhs = ops.lie(op.multiplication(), x)?.negated();
            Ok(Some((lhs, rhs)))
        },
    )?;
    let pairs = inputs.pairs();
    let third = sweep(strategy, "[b, 𝓛_φ] + 𝓛_{δφ} = 0", &pairs, |t| inputs.describe2(t), |&(a, c)| {
        let (phi, x) = (&inputs.phis[a].1, &inputs.chains[c].1);
        let mut lhs = ops.op_b().commutator(&ops.op_lie(phi)).apply(x)?;
        lhs.add_scaled(&ops.field().one(), &ops.lie(&op.delta(phi)?, x)?);
        let zero = ops.module.zero(lhs.grade());
        Ok(Some((lhs, zero)))
    })?;
    Ok(SuiteReport::new("dg-lie", inputs.description.clone(), vec![first, second, third]))
}

fn require_cyclic<M: CompModule>(ops: &Operators<M>, suite: &str, inputs: &SuiteInputs<M>) -> Option<SuiteReport> {
    let top = inputs.chains.iter().map(|(_, x)| x.grade()).max().unwrap_or(0) + 3;
    if !is_cyclic(ops.module, top.min(ops.module.degree_cap())) {
        return Some(SuiteReport::refused(
            suite,
            inputs.description.clone(),
            format!("{} is para-cyclic: t^(n+1) ≠ id", ops.module.name()),
        ));
    }
    None
}

/// Suite (c): `[B, S_φ] = 0` on the normalized complex.
pub fn suite_bs<M: CompModule>(ops: &Operators<M>, inputs: &SuiteInputs<M>, strategy: Strategy) -> Result<SuiteReport> {
    if let Some(r) = require_cyclic(ops, "cyclic-correction", inputs) {
        return Ok(r);
    }
    let ops = Operators { complex: Complex::Normalized, ..ops.clone() };
    let pairs = inputs.pairs();
    let first = sweep(strategy, "[B, S_φ] = 0", &pairs, |t| inputs.describe2(t), |&(a, c)| {
        let (phi, x) = (&inputs.phis[a].1, &inputs.chains[c].1);
        let lhs = ops.op_connes().commutator(&ops.op_correction(phi)).apply(x)?;
        let zero = ops.module.zero(lhs.grade());
        Ok(Some((lhs, zero)))
    })?;
    Ok(SuiteReport::new("cyclic-correction", inputs.description.clone(), vec![first]))
}

/// Suite (d): `𝓛_φ = [B + b, ι_φ + S_φ] − ι_{δφ} − S_{δφ}` on the normalized
/// complex, split by output degree, and `[𝓛_φ, B] = 0`.
pub fn suite_homotopy<M: CompModule>(ops: &Operators<M>, inputs: &SuiteInputs<M>, strategy: Strategy) -> Result<SuiteReport> {
    if let Some(r) = require_cyclic(ops, "homotopy", inputs) {
        return Ok(r);
    }
    let ops = Operators { complex: Complex::Normalized, ..ops.clone() };
    let op = ops.module.operad();
    let pairs = inputs.pairs();
    // Components of degree n − p + 1, n − p − 1 and n − p + 3.
    let main = sweep(strategy, "𝓛_φ = [B, ι_φ] + [b, S_φ] − S_{δφ}", &pairs, |t| inputs.describe2(t), |&(a, c)| {
        let (phi, x) = (&inputs.phis[a].1, &inputs.chains[c].1);
        let dphi = op.delta(phi)?;
        let mut rhs = ops.op_connes().commutator(&ops.op_iota(phi)).apply(x)?;
        rhs.add_scaled(&ops.field().one(), &ops.op_b().commutator(&ops.op_correction(phi)).apply(x)?);
        rhs.add_scaled(&ops.field().from_i64(-1), &ops.correction(&dphi, x)?);
        let lhs = ops.lie(phi, x)?;
        Ok(Some((lhs, rhs)))
    })?;
    let low = sweep(strategy, "[b, ι_φ] = ι_{δφ} (normalized)", &pairs, |t| inputs.describe2(t), |&(a, c)| {
        let (phi, x) = (&inputs.phis[a].1, &inputs.chains[c].1);
        let lhs = ops.op_b().commutator(&ops.op_iota(phi)).apply(x)?;
        let rhs = ops.iota(&op.delta(phi)?, x)?;
        Ok(Some((lhs, rhs)))
    })?;
    let high = sweep(strategy, "[B, S_φ] = 0 (top component)", &pairs, |t| inputs.describe2(t), |&(a, c)| {
        let (phi, x) = (&inputs.phis[a].1, &inputs.chains[c].1);
        let lhs = ops.op_connes().commutator(&ops.op_correction(phi)).apply(x)?;
        let zero = ops.module.zero(lhs.grade());
        Ok(Some((lhs, zero)))
    })?;
    let lie_b = sweep(strategy, "[𝓛_φ, B] = 0", &pairs, |t| inputs.describe2(t), |&(a, c)| {
        let (phi, x) = (&inputs.phis[a].1, &inputs.chains[c].1);
        let lhs = ops.op_lie(phi).commutator(&ops.op_connes()).apply(x)?;
        let zero = ops.module.zero(lhs.grade());
        Ok(Some((lhs, zero)))
    })?;
    Ok(SuiteReport::new("homotopy", inputs.description.clone(), vec![main, low, high, lie_b]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_algebra, dual_numbers};
    use crate::comp_module::{Twist, Twisted};
    use crate::element::{Chain, Cochain};
    use crate::hochschild::{basis_chains, basis_cochains, build_hochschild, iota_closed, lie_closed, s_closed, Caps, HochschildModule, HochschildOperad};
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn d_module() -> HochschildModule {
        build_hochschild(&dual_numbers(Q), None, Caps { arity: 7, degree: 7 }).unwrap()
    }

    fn euler(op: &HochschildOperad) -> Cochain {
        op.cochain(1, |a| if a[0] == 1 { vec![(1, Q.one())] } else { vec![] })
    }

    fn inputs(m: &HochschildModule, arities: std::ops::RangeInclusive<usize>, degrees: std::ops::RangeInclusive<usize>, complex: Complex) -> SuiteInputs<HochschildModule> {
        let phis: Vec<_> = basis_cochains(m.operad(), arities, complex)
            .into_iter()
            .enumerate()
            .map(|(k, c)| (format!("φ{k}"), c))
            .collect();
        let chains = basis_chains(m, degrees, complex)
            .into_iter()
            .map(|x| (x.to_string(), x))
            .collect();
        SuiteInputs { psis: phis.clone(), phis, chains, description: "basis".into(), paired: false }
    }

    #[test]
    fn calculus_examples() {
        let m = d_module();
        let op = m.operad();
        let full = Operators::new(&m, Complex::Full);
        let norm = Operators::new(&m, Complex::Normalized);
        let e = euler(op);
        let one_x = m.chain(&[0, 1]);
        assert_eq!(full.lie(&e, &one_x).unwrap(), one_x);
        assert_eq!(full.iota(&e, &one_x).unwrap(), m.chain(&[1]));
        assert_eq!(full.iota(op.unit(), &m.chain(&[1])).unwrap(), m.chain(&[1]));
        assert_eq!(full.iota(op.identity(), &one_x).unwrap(), m.face(0, &one_x).unwrap());
        assert!(norm.correction(&e, &one_x).unwrap().is_zero());
        assert_eq!(full.correction(&e, &one_x).unwrap(), m.chain(&[0, 0, 1]));
        for x in basis_chains(&m, 0..=3, Complex::Full) {
            let n = x.grade() as i64;
            assert_eq!(full.lie(op.identity(), &x).unwrap(), x.scaled(&Q.from_i64(n + 1)));
            assert_eq!(full.lie(op.multiplication(), &x).unwrap(), full.b(&x).unwrap().negated());
            // S_φ vanishes once p = n + 1
            let top = Cochain::basis(Q, &vec![1; x.grade() + 1], 1, 2);
            assert!(full.correction(&top, &x).unwrap().is_zero());
        }
        // S_𝟙 = Σ_{j<n} (n − j)(−1)^{jn} e•₀tʲ, so B − S_𝟙 = (−1)ⁿ e•₀tⁿ only for n ≤ 1.
        for x in basis_chains(&m, 0..=3, Complex::Normalized) {
            let n = x.grade();
            let shifted = |j: usize| norm.finish(m.bullet(op.unit(), 0, &m.t_pow(&x, j)).unwrap());
            let mut expected = m.zero(n + 1);
            for j in 0..n {
                expected.add_scaled(&(Q.from_i64((n - j) as i64) * Q.sign((j * n) as i64)), &shifted(j));
            }
            assert_eq!(norm.correction(op.identity(), &x).unwrap(), expected, "S_𝟙 on {x}");
            if n <= 1 {
                let mut lhs = norm.connes_b(&x).unwrap();
                lhs.add_scaled(&Q.from_i64(-1), &expected);
                assert_eq!(lhs, shifted(n).scaled(&Q.sign(n as i64)), "B − S_𝟙 on {x}");
            }
        }
    }

    #[test]
    fn closed_forms_agree() {
        let m = build_hochschild(&cyclic_group_algebra(Q), None, Caps { arity: 7, degree: 6 }).unwrap();
        let op = m.operad();
        let full = Operators::new(&m, Complex::Full);
        for phi in basis_cochains(op, 0..=2, Complex::Full) {
            for x in basis_chains(&m, 0..=3, Complex::Full) {
                assert_eq!(full.iota(&phi, &x).unwrap(), iota_closed(op, &phi, &x), "ι {phi} {x}");
                assert_eq!(full.lie(&phi, &x).unwrap(), lie_closed(op, &phi, &x), "𝓛 {phi} {x}");
                assert_eq!(full.correction(&phi, &x).unwrap(), s_closed(op, &phi, &x), "S {phi} {x}");
            }
        }
    }

    #[test]
    fn graded_commutator_signs() {
        let m = d_module();
        let ops = Operators::new(&m, Complex::Full);
        let e = euler(m.operad());
        let c = ops.op_b().commutator(&ops.op_iota(&e));
        assert_eq!((c.shift, c.degree), (-2, 2));
        let x = m.chain(&[0, 1, 1]);
        // |b||ι_E| is odd, so the commutator is bι + ιb
        let mut expected = ops.b(&ops.iota(&e, &x).unwrap()).unwrap();
        expected.add_scaled(&Q.one(), &ops.iota(&e, &ops.b(&x).unwrap()).unwrap());
        assert_eq!(c.apply(&x).unwrap(), expected);
        assert!(ops.op_b().add_scaled(1, &ops.op_connes()).is_err());
    }

    #[test]
    fn suites_pass_on_dual_numbers() {
        let m = d_module();
        let ops = Operators::new(&m, Complex::Full);
        let full = inputs(&m, 0..=2, 0..=3, Complex::Full);
        for s in [Strategy::Sequential, Strategy::Parallel] {
            let a = suite_dg_module(&ops, &full, s).unwrap();
            assert!(a.passed(), "{a:?}");
            let b = suite_dg_lie(&ops, &full, s).unwrap();
            assert!(b.passed(), "{b:?}");
        }
        let norm = inputs(&m, 0..=2, 0..=3, Complex::Normalized);
        let c = suite_bs(&ops, &norm, Strategy::Parallel).unwrap();
        assert!(c.passed(), "{c:?}");
        let d = suite_homotopy(&ops, &norm, Strategy::Parallel).unwrap();
        assert!(d.passed(), "{d:?}");
    }

    #[test]
    fn mutated_sign_is_caught() {
        let m = d_module();
        let norm = inputs(&m, 0..=2, 0..=3, Complex::Normalized);
        let ops = Operators::new(&m, Complex::Full).with_mutation(Some("flip-sign:S:1".parse().unwrap()));
        let d = suite_homotopy(&ops, &norm, Strategy::Sequential).unwrap();
        assert!(!d.passed());
        let w = d.first_failure().unwrap().witness.as_ref().unwrap();
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn para_cyclic_is_refused() {
        let m = d_module();
        let tw = Twisted { inner: m.clone(), twist: Twist::Scaled(Q.from_i64(2)) };
        let ops = Operators::new(&tw, Complex::Full);
        let x: Vec<(String, Chain)> = vec![("(1,x)".into(), m.chain(&[0, 1]))];
        let inputs = SuiteInputs::<Twisted<HochschildModule>> {
            phis: vec![("E".into(), euler(m.operad()))],
            psis: vec![],
            chains: x,
            description: "twisted".into(),
            paired: false,
        };
        assert_eq!(suite_bs(&ops, &inputs, Strategy::Sequential).unwrap().status, "refused");
        assert_eq!(suite_homotopy(&ops, &inputs, Strategy::Sequential).unwrap().status, "refused");
        assert!(suite_dg_module(&ops, &inputs, Strategy::Sequential).unwrap().passed());
    }
}
