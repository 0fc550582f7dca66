//! Runners that assemble inputs for every checker and collect the results
//! into one report.

use serde::Serialize;

use crate::calculus::{self, IdentityOutcome, SuiteInputs, SuiteReport, Witness};
use crate::comp_module::{check_comp_module_axioms, check_cyclic_identities, CompModule, Complex, Operators};
use crate::element::{Chain, Cochain, Vector};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::hochschild::{Caps, HochschildModule};
use crate::homology::{self, Chains};
use crate::mutation::Mutation;
use crate::operad::{check_operad_axioms, identities, Operad};
use crate::random;
use crate::report::{AxiomCheck, AxiomReport};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Largest chain degree swept.
    pub max_degree: usize,
    /// Largest cochain arity swept by the calculus suites.
    pub max_arity: usize,
    /// Largest arity in the operad axiom sweep.
    pub operad_cap: usize,
    pub trials: usize,
    pub seed: u64,
    pub mutation: Option<Mutation>,
    pub strategy: Strategy,
    /// Exhaustive calculus sweeps are skipped above this many triples.
    pub exhaustive_budget: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_degree: 4,
            max_arity: 2,
            operad_cap: 3,
            trials: 20,
            seed: 7,
            mutation: None,
            strategy: Strategy::current(),
            exhaustive_budget: 200_000,
        }
    }
}

impl VerifyConfig {
    /// Caps an instance needs so that every operator the suites apply stays
    /// materialized.
    pub fn caps(&self) -> Caps {
        Caps {
            arity: (3 * self.operad_cap - 2).max(2 * self.max_arity + 1).max(6),
            degree: (self.max_degree + 3).max(6),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Operad,
    CompModule,
    Simplicial,
    Calculus,
    HomologyLevel,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "operad" => Suite::Operad,
            "compmodule" => Suite::CompModule,
            "simplicial" => Suite::Simplicial,
            "calculus" => Suite::Calculus,
            "homology-level" => Suite::HomologyLevel,
            "all" => Suite::All,
            _ => {
                return Err(Error::Input(format!(
                    "unknown suite {s:?}; expected operad|compmodule|simplicial|calculus|homology-level|all"
                )))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub instance: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
    pub status: String,
    pub axioms: Vec<AxiomReport>,
    pub suites: Vec<SuiteReport>,
}

impl CheckReport {
    fn new(instance: String, cfg: &VerifyConfig, axioms: Vec<AxiomReport>, suites: Vec<SuiteReport>) -> Self {
        let failed = axioms.iter().any(|a| !a.passed) || suites.iter().any(|s| s.status == "fail" || s.status == "precondition-failed");
        CheckReport {
            instance,
            seed: cfg.seed,
            mutation: cfg.mutation.map(|m| m.to_string()),
            status: if failed { "fail" } else { "pass" }.to_string(),
            axioms,
            suites,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn push_suite(&mut self, suite: SuiteReport) {
        if suite.status == "fail" || suite.status == "precondition-failed" {
            self.status = "fail".to_string();
        }
        self.suites.push(suite);
    }
}

/// Runs `suite` on a Hochschild instance, rebuilt with the caps the sweep
/// needs.
pub fn run(m: &HochschildModule, suite: Suite, cfg: &VerifyConfig) -> Result<CheckReport> {
    let m = m.with_caps(cfg.caps());
    let mut axioms = Vec::new();
    let mut suites = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Operad {
        axioms.push(check_operad_axioms(m.operad(), cfg.operad_cap, cfg.strategy)?);
        suites.push(gerstenhaber_suite(m.operad(), cfg)?);
    }
    if all || suite == Suite::CompModule {
        axioms.push(check_comp_module_axioms(&m, cfg.max_degree, cfg.max_arity + 1, cfg.strategy)?);
    }
    if all || suite == Suite::Simplicial {
        axioms.push(check_cyclic_identities(&m, cfg.max_degree, cfg.strategy)?);
    }
    if all || suite == Suite::Calculus {
        suites.extend(calculus_suites(&m, cfg)?);
    }
    if all || suite == Suite::HomologyLevel {
        suites.push(homology_level_default(&m, cfg)?);
    }
    Ok(CheckReport::new(m.name(), cfg, axioms, suites))
}

fn outcome(identity: &str, checked: usize, violation: Option<crate::report::Violation>) -> IdentityOutcome {
    IdentityOutcome {
        identity: identity.to_string(),
        checked,
        passed: violation.is_none(),
        witness: violation.map(|v| Witness {
            inputs: v.indices.iter().map(|(k, x)| (k.clone(), x.to_string())).collect(),
            lhs: v.lhs,
            rhs: v.rhs,
        }),
    }
}

/// Gerstenhaber identities and the commutativity defect on seeded random
/// cochains of arity `≤ max_arity`.
pub fn gerstenhaber_suite<O: Operad>(op: &O, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rng = random::rng(cfg.seed);
    let draws: Vec<(O::Elem, O::Elem, O::Elem)> = (0..cfg.trials)
        .map(|_| {
            let one = |rng: &mut _| {
                let p = rand::Rng::gen_range(rng, 0..=cfg.max_arity);
                random::random_cochain(op, p, Complex::Full, rng)
            };
            (one(&mut rng), one(&mut rng), one(&mut rng))
        })
        .collect();
    let first = |f: &dyn Fn(&(O::Elem, O::Elem, O::Elem)) -> Result<Option<crate::report::Violation>>| -> Result<Option<crate::report::Violation>> {
        for (k, d) in draws.iter().enumerate() {
            if let Some(mut v) = f(d)? {
                v.indices.insert("trial".into(), k as i64);
                return Ok(Some(v));
            }
        }
        Ok(None)
    };
    let n = draws.len();
    let ids = vec![
        outcome(
            "φ∘̄δψ − (−1)^{p−1}δ(φ∘̄ψ) + (−1)^{p−1}δφ∘̄ψ = φ⌣ψ − (−1)^{pq}ψ⌣φ",
            n,
            first(&|(a, b, _)| identities::commutativity_defect(op, a, b))?,
        ),
        outcome("δδφ = 0", n, first(&|(a, _, _)| identities::delta_squared(op, a))?),
        outcome("δ(φ⌣ψ) = δφ⌣ψ + (−1)^p φ⌣δψ", n, first(&|(a, b, _)| identities::delta_leibniz(op, a, b))?),
        outcome("{φ,ψ} + (−1)^{(p−1)(q−1)}{ψ,φ} = 0", n, first(&|(a, b, _)| identities::antisymmetry(op, a, b))?),
        outcome("graded Jacobi identity", n, first(&|(a, b, c)| identities::jacobi(op, a, b, c))?),
    ];
    Ok(SuiteReport::new("gerstenhaber", format!("{n} seeded random triples, arity ≤ {}, seed {}", cfg.max_arity, cfg.seed), ids))
}

fn labelled<E>(prefix: &str, xs: Vec<E>) -> Vec<(String, E)> {
    xs.into_iter().enumerate().map(|(k, x)| (format!("{prefix}{k}"), x)).collect()
}

/// Basis inputs when the sweep fits the budget, `None` otherwise.
pub fn basis_inputs<M: CompModule>(m: &M, cfg: &VerifyConfig, complex: Complex) -> Option<SuiteInputs<M>> {
    let op = m.operad();
    let ncochains: usize = (0..=cfg.max_arity).map(|p| op.dim(p, complex)).sum();
    let nchains: usize = (0..=cfg.max_degree).map(|n| m.dim(n, complex)).sum();
    if ncochains * ncochains * nchains > cfg.exhaustive_budget {
        return None;
    }
    let phis: Vec<(String, _)> = (0..=cfg.max_arity)
        .flat_map(|p| op.basis_of(p, complex).into_iter().enumerate().map(move |(k, c)| (format!("basis cochain {k} of arity {p}"), c)))
        .collect();
    let chains = (0..=cfg.max_degree).flat_map(|n| m.basis(n, complex)).map(|x| (x.to_string(), x)).collect();
    Some(SuiteInputs {
        psis: phis.clone(),
        phis,
        chains,
        description: format!("all basis cochains of arity ≤ {} and chains of degree ≤ {} ({complex:?})", cfg.max_arity, cfg.max_degree).to_lowercase(),
        paired: false,
    })
}

/// `trials` seeded random triples `(φ, ψ, x)`.
pub fn random_inputs<M: CompModule>(m: &M, cfg: &VerifyConfig, complex: Complex) -> SuiteInputs<M> {
    let mut rng = random::rng(cfg.seed);
    let op = m.operad();
    let mut phis = Vec::new();
    let mut psis = Vec::new();
    let mut chains = Vec::new();
    for _ in 0..cfg.trials {
        let p = rand::Rng::gen_range(&mut rng, 0..=cfg.max_arity);
        phis.push(random::random_cochain(op, p, complex, &mut rng));
        let q = rand::Rng::gen_range(&mut rng, 0..=cfg.max_arity);
        psis.push(random::random_cochain(op, q, complex, &mut rng));
        let n = rand::Rng::gen_range(&mut rng, 0..=cfg.max_degree);
        chains.push(random::random_chain(m, n, complex, &mut rng));
    }
    SuiteInputs {
        phis: labelled("random φ", phis),
        psis: labelled("random ψ", psis),
        chains: chains.into_iter().map(|x| (x.to_string(), x)).collect(),
        description: format!("{} seeded random triples, seed {} ({complex:?})", cfg.trials, cfg.seed).to_lowercase(),
        paired: true,
    }
}

fn merge(name: &str, reports: Vec<SuiteReport>) -> SuiteReport {
    if let Some(r) = reports.iter().find(|r| r.status == "refused") {
        return r.clone();
    }
    let inputs = reports.iter().map(|r| r.inputs.clone()).collect::<Vec<_>>().join("; ");
    let mut ids: Vec<IdentityOutcome> = Vec::new();
    for r in reports {
        for id in r.identities {
            match ids.iter_mut().find(|x| x.identity == id.identity) {
                Some(x) => {
                    x.checked += id.checked;
                    if x.passed && !id.passed {
                        x.passed = false;
                        x.witness = id.witness;
                    }
                }
                None => ids.push(id),
            }
        }
    }
    SuiteReport::new(name, inputs, ids)
}

/// The four calculus suites, each on basis inputs (within budget) and on
/// seeded random inputs.
pub fn calculus_suites<M: CompModule>(m: &M, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let ops = Operators::new(m, Complex::Full).with_mutation(cfg.mutation);
    type Runner<M> = fn(&Operators<M>, &SuiteInputs<M>, Strategy) -> Result<SuiteReport>;
    let plan: [(&str, Complex, Runner<M>); 4] = [
        ("dg-module", Complex::Full, calculus::suite_dg_module),
        ("dg-lie", Complex::Full, calculus::suite_dg_lie),
        ("cyclic-correction", Complex::Normalized, calculus::suite_bs),
        ("homotopy", Complex::Normalized, calculus::suite_homotopy),
    ];
    let mut out = Vec::new();
    for (name, complex, runner) in plan {
        let mut parts = Vec::new();
        if let Some(inputs) = basis_inputs(m, cfg, complex) {
            parts.push(runner(&ops, &inputs, cfg.strategy)?);
        }
        if cfg.trials > 0 {
            parts.push(runner(&ops, &random_inputs(m, cfg, complex), cfg.strategy)?);
        }
        out.push(merge(name, parts));
    }
    Ok(out)
}

/// A basis of the cycles of `b` on normalized chains of degree `n`.
pub fn cycle_basis<M: CompModule>(m: &M, n: usize, strategy: Strategy) -> Result<Vec<M::Elem>> {
    let ops = Operators::new(m, Complex::Normalized);
    let space = Chains { module: m, complex: Complex::Normalized };
    homology::kernel_basis(&space, |x| ops.b(x), n, strategy)
}

/// Homology-level identities for cocycles `φ, ψ` and cycles `z` on
/// normalized chains: `[ι_ψ, 𝓛_φ] − ι_{ψ,φ}` and `𝓛_φ − [B, ι_φ]` send
/// cycles to boundaries (with certificates), and `[𝓛_φ, B] = 0`.
pub fn homology_level<M: CompModule>(
    m: &M,
    cocycles: &[(String, Cochain)],
    cycles: &[(String, Chain)],
    mutation: Option<Mutation>,
    strategy: Strategy,
) -> Result<SuiteReport>
where
    M: CompModule<Elem = Chain>,
    M::Op: Operad<Elem = Cochain>,
{
    let op = m.operad();
    let ops = Operators::new(m, Complex::Normalized).with_mutation(mutation);
    let inputs = format!("{} cocycles, {} cycles (normalized)", cocycles.len(), cycles.len());
    let plain = Operators::new(m, Complex::Normalized);
    for (label, phi) in cocycles {
        if !op.delta(phi)?.is_zero() {
            return Ok(precondition(&inputs, format!("{label} is not a cocycle")));
        }
    }
    for (label, z) in cycles {
        if !plain.b(z)?.is_zero() {
            return Ok(precondition(&inputs, format!("{label} is not a cycle")));
        }
    }
    let mut certificates = Vec::new();
    let mut leibniz = (0usize, None);
    let mut cartan = (0usize, None);
    let mut lie_b = (0usize, None);
    for (lphi, phi) in cocycles {
        for (lz, z) in cycles {
            let witness_inputs = |extra: Option<&str>| {
                let mut w: std::collections::BTreeMap<String, String> = [("phi".to_string(), lphi.clone()), ("z".to_string(), lz.clone())].into_iter().collect();
                if let Some(e) = extra {
                    w.insert("psi".into(), e.to_string());
                }
                w
            };
            for (lpsi, psi) in cocycles {
                let mut defect = ops.op_iota(psi).commutator(&ops.op_lie(phi)).apply(z)?;
                defect.add_scaled(&m.field().from_i64(-1), &ops.iota(&op.bracket(psi, phi)?, z)?);
                leibniz.0 += 1;
                let r = homology::is_hochschild_boundary(m, &defect, strategy)?;
                match r.certificate {
                    Some(c) => certificates.push(format!("[ι_{lpsi}, 𝓛_{lphi}]({lz}) − ι_{{{lpsi},{lphi}}}({lz}) = b({c})")),
                    None if leibniz.1.is_none() => {
                        leibniz.1 = Some(Witness { inputs: witness_inputs(Some(lpsi)), lhs: defect.to_string(), rhs: "a boundary".into() })
                    }
                    None => {}
                }
            }
            let mut defect = ops.lie(phi, z)?;
            defect.add_scaled(&m.field().from_i64(-1), &ops.op_connes().commutator(&ops.op_iota(phi)).apply(z)?);
            cartan.0 += 1;
            let r = homology::is_hochschild_boundary(m, &defect, strategy)?;
            match r.certificate {
                Some(c) => certificates.push(format!("𝓛_{lphi}({lz}) − [B, ι_{lphi}]({lz}) = b({c})")),
                None if cartan.1.is_none() => cartan.1 = Some(Witness { inputs: witness_inputs(None), lhs: defect.to_string(), rhs: "a boundary".into() }),
                None => {}
            }
            let lb = ops.op_lie(phi).commutator(&ops.op_connes()).apply(z)?;
            lie_b.0 += 1;
            if !lb.is_zero() && lie_b.1.is_none() {
                lie_b.1 = Some(Witness { inputs: witness_inputs(None), lhs: lb.to_string(), rhs: "0".into() });
            }
        }
    }
    let id = |name: &str, (checked, witness): (usize, Option<Witness>)| IdentityOutcome {
        identity: name.to_string(),
        checked,
        passed: witness.is_none(),
        witness,
    };
    let mut report = SuiteReport::new(
        "homology-level",
        inputs,
        vec![
            id("[ι_ψ, 𝓛_φ] − ι_{ψ,φ} ∈ im b on cycles", leibniz),
            id("𝓛_φ − [B, ι_φ] ∈ im b on cycles", cartan),
            id("[𝓛_φ, B] = 0", lie_b),
        ],
    );
    report.certificates = certificates;
    Ok(report)
}

fn precondition(inputs: &str, reason: String) -> SuiteReport {
    SuiteReport {
        suite: "homology-level".into(),
        status: "precondition-failed".into(),
        inputs: inputs.to_string(),
        identities: Vec::new(),
        refusal: Some(reason),
        certificates: Vec::new(),
    }
}

/// [`homology_level`] with cocycles spanning `HH^p` for `p ≤ max_arity`
/// and cycles spanning the normalized cycles of degree `≤ min(3, max_degree)`.
pub fn homology_level_default(m: &HochschildModule, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let h = homology::hochschild_cohomology(m.operad(), cfg.max_arity, cfg.strategy, None)?;
    let cocycles: Vec<(String, Cochain)> = h
        .representatives
        .into_iter()
        .enumerate()
        .flat_map(|(p, reps)| reps.into_iter().enumerate().map(move |(k, c)| (format!("HH^{p}[{k}]"), c)))
        .collect();
    let mut cycles = Vec::new();
    for n in 0..=cfg.max_degree.min(3) {
        for z in cycle_basis(m, n, cfg.strategy)? {
            cycles.push((z.to_string(), z));
        }
    }
    homology_level(m, &cocycles, &cycles, cfg.mutation, cfg.strategy)
}

/// Summary of axiom reports as a single-line status per check.
pub fn axiom_lines(r: &AxiomReport) -> Vec<String> {
    r.checks
        .iter()
        .map(|c: &AxiomCheck| format!("{} {}: {} checked", if c.passed { "ok  " } else { "FAIL" }, c.axiom, c.checked))
        .collect()
}
