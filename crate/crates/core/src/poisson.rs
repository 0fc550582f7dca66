//! Noncommutative Poisson structures: the Hochschild spaces with `μ`
//! replaced by an associative unital `π ∈ C²(A,V)`.

use serde::Serialize;

use crate::algebra::{Algebra, SparseVec};
use crate::calculus::{self, IdentityOutcome};
use crate::comp_module::{CompModule, Operators};
use crate::element::{Chain, Cochain, Vector};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::hochschild::{linear_on_terms, push_substituted, HochschildModule, HochschildOperad};
use crate::operad::Operad;
use crate::report::{AxiomCheck, AxiomReport, Violation};
use crate::scalar::Scalar;
use crate::tensor::Multi;

/// `π(u, v)` for `u, v ∈ A`, extended bilinearly.
pub fn apply2(pi: &Cochain, u: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> SparseVec {
    let mut acc = std::collections::BTreeMap::<usize, Scalar>::new();
    for (i, ui) in u {
        for (j, vj) in v {
            for (k, c) in pi.evaluate(&[*i as u16, *j as u16]).expect("arity 2") {
                let e = acc.entry(k).or_insert_with(|| c.field().zero());
                *e = &*e + &(ui * vj * c);
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `μ` with the square of basis element `i` replaced by `value`.
pub fn with_square(op: &HochschildOperad, i: usize, value: SparseVec) -> Cochain {
    let mu = op.multiplication().clone();
    op.cochain(2, |args| {
        if args[0] as usize == i && args[1] as usize == i {
            value.clone()
        } else {
            mu.evaluate(args).expect("arity 2")
        }
    })
}

/// Checks `π ∘₁ π = π ∘₂ π`, `π(1,1) = 1` and `π ∘₁ e = π ∘₂ e = 𝟙`; the
/// status records whether `π` is also a Hochschild 2-cocycle for `μ`.
pub fn validate_poisson(op: &HochschildOperad, pi: &Cochain, strategy: Strategy) -> Result<AxiomReport> {
    if pi.arity() != 2 || pi.out_dim() != op.dv() {
        return Err(Error::Usage(format!("π must be a 2-cochain with values in V, got arity {}", pi.arity())));
    }
    let v = op.pair().v();
    let d = op.d();
    let pi_op = op.with_multiplication(pi.clone())?;
    let left = pi_op.comp(pi, 1, pi)?;
    let right = pi_op.comp(pi, 2, pi)?;
    let triples: Vec<[u16; 3]> = (0..d * d * d)
        .map(|k| [(k / (d * d)) as u16, (k / d % d) as u16, (k % d) as u16])
        .collect();
    let assoc = exec::try_find_map_first(strategy, &triples, |t| -> Result<Option<Violation>> {
        let (l, r) = (left.evaluate(t)?, right.evaluate(t)?);
        Ok((l != r).then(|| {
            Violation::new(
                "π ∘₁ π = π ∘₂ π",
                &[("a", t[0] as i64), ("b", t[1] as i64), ("c", t[2] as i64)],
                v.format(&l),
                v.format(&r),
            )
        }))
    })?;
    let unit_value = pi.evaluate(&[0, 0])?;
    let one = op.pair().eta(0);
    let unit_check = (unit_value != one).then(|| Violation::new("π(1,1) = 1", &[], v.format(&unit_value), v.format(&one)));
    let e = op.unit();
    let mut unital = None;
    'outer: for (slot, side) in [(1usize, pi_op.comp(pi, 1, e)?), (2, pi_op.comp(pi, 2, e)?)] {
        for a in 0..d as u16 {
            let (l, r) = (side.evaluate(&[a])?, op.identity().evaluate(&[a])?);
            if l != r {
                unital = Some(Violation::new("π ∘ᵢ e = 𝟙", &[("i", slot as i64), ("a", a as i64)], v.format(&l), v.format(&r)));
                break 'outer;
            }
        }
    }
    let mut report = AxiomReport::new(
        format!("Poisson structure on {}", op.algebra().name()),
        vec![
            AxiomCheck::from_search("π ∘₁ π = π ∘₂ π", triples.len(), assoc),
            AxiomCheck::from_search("π(1,1) = 1", 1, unit_check),
            AxiomCheck::from_search("π ∘ᵢ e = 𝟙", 2 * d, unital),
        ],
    );
    let cocycle = op.delta(pi)?.is_zero();
    report.status = Some(if cocycle { "hochschild 2-cocycle" } else { "not a hochschild 2-cocycle" }.to_string());
    Ok(report)
}

/// The Hochschild spaces of `m` with multiplication `π`; refused unless `π`
/// validates.
pub fn poisson_module(m: &HochschildModule, pi: &Cochain, strategy: Strategy) -> Result<HochschildModule> {
    let report = validate_poisson(m.hochschild_operad(), pi, strategy)?;
    if let Some(check) = report.first_failure() {
        return Err(Error::Refused(format!("π is not a Poisson structure: {} fails", check.axiom)));
    }
    m.with_multiplication(pi.clone())
}

/// `b^π(a₀,…,a_n) = Σ_{i<n} (−1)ⁱ (…, γπ(aᵢ,a_{i+1}), …) + (−1)ⁿ (γπ(a_n,a₀), a₁,…,a_{n−1})`.
pub fn brylinski_closed(op: &HochschildOperad, pi: &Cochain, x: &Chain) -> Chain {
    let n = x.degree();
    let field = op.field();
    if n == 0 {
        return Chain::zero(field, 0);
    }
    linear_on_terms(field, n, x, |key, c, out| {
        for i in 0..n {
            push_substituted(op, pi, &key[..i], &key[i..i + 2], &key[i + 2..], &(c * &field.sign(i as i64)), out);
        }
        push_substituted(op, pi, &[], &[key[n], key[0]], &key[1..n], &(c * &field.sign(n as i64)), out);
    })
}

/// `(δ^π φ)(a₁,…,a_{p+1}) = π(γφ(a₁,…,a_p), a_{p+1}) + (−1)^{p−1} π(a₁, γφ(a₂,…))
/// + Σᵢ (−1)^{i+p−1} φ(…, γπ(aᵢ,a_{i+1}), …)`.
pub fn koszul_closed(op: &HochschildOperad, pi: &Cochain, phi: &Cochain) -> Cochain {
    let p = phi.arity();
    let field = op.field();
    op.cochain(p + 1, |args| {
        let mut acc = std::collections::BTreeMap::<usize, Scalar>::new();
        let mut add = |v: SparseVec, s: Scalar| {
            for (k, c) in v {
                let e = acc.entry(k).or_insert_with(|| field.zero());
                *e = &*e + &(c * &s);
            }
        };
        let one = field.one();
        let first = op.gamma(&phi.evaluate(&args[..p]).expect("arity"));
        add(apply2(pi, &first, &[(args[p] as usize, one.clone())]), one.clone());
        let last = op.gamma(&phi.evaluate(&args[1..]).expect("arity"));
        add(apply2(pi, &[(args[0] as usize, one.clone())], &last), field.sign(p as i64 - 1));
        for i in 1..=p {
            let inner = op.gamma(&pi.evaluate(&args[i - 1..=i]).expect("arity"));
            let mut key: Vec<u16> = args[..i - 1].to_vec();
            key.push(0);
            key.extend_from_slice(&args[i + 1..]);
            for (l, g) in inner {
                key[i - 1] = l as u16;
                let value = phi.evaluate(&key).expect("arity");
                add(value, &g * &field.sign((i + p) as i64 - 1));
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    })
}

/// `(φ ⌣_π ψ)(a₁,…,a_{p+q}) = π(γψ(a₁,…,a_q), γφ(a_{q+1},…,a_{p+q}))`.
pub fn poisson_cup_closed(op: &HochschildOperad, pi: &Cochain, phi: &Cochain, psi: &Cochain) -> Cochain {
    let (p, q) = (phi.arity(), psi.arity());
    op.cochain(p + q, |args| {
        let left = op.gamma(&psi.evaluate(&args[..q]).expect("arity"));
        let right = op.gamma(&phi.evaluate(&args[q..]).expect("arity"));
        apply2(pi, &left, &right)
    })
}

/// `φ ⌢_π (a₀,…,a_n) = (γπ(a₀, γφ(a₁,…,a_p)), a_{p+1},…,a_n)`.
pub fn poisson_cap_closed(op: &HochschildOperad, pi: &Cochain, phi: &Cochain, x: &Chain) -> Chain {
    let (p, n) = (phi.arity(), x.degree());
    let field = op.field();
    if p > n {
        return Chain::zero(field, 0);
    }
    linear_on_terms(field, n - p + 1, x, |key, c, out| {
        let value = op.gamma(&phi.evaluate(&key[1..=p]).expect("arity"));
        let head = op.gamma(&apply2(pi, &[(key[0] as usize, field.one())], &value));
        for (l, s) in head {
            let mut k = Multi::new();
            k.push(l as u16);
            k.extend_from_slice(&key[p + 1..]);
            out.add_term(k, c * &s);
        }
    })
}

/// `b^π = −𝓛^π_π` on every basis chain of degree `≤ max`, with the operators
/// of `ops` (so mutations apply).
pub fn brylinski_homotopy_check(ops: &Operators<HochschildModule>, max: usize, strategy: Strategy) -> Result<IdentityOutcome> {
    let m = ops.module;
    let pi = m.operad().multiplication().clone();
    let chains: Vec<Chain> = (0..=max).flat_map(|n| m.basis(n, ops.complex)).collect();
    calculus::sweep(
        strategy,
        "b^π = −𝓛^π_π",
        &chains,
        |x| [("x".to_string(), x.to_string())].into_iter().collect(),
        |x| Ok(Some((ops.b(x)?, ops.lie(&pi, x)?.negated()))),
    )
}

/// Poisson homology: homology of `b^π` on normalized chains.
pub fn poisson_homology(
    m: &HochschildModule,
    pi: &Cochain,
    max: usize,
    strategy: Strategy,
    cache: Option<&crate::homology::MatrixCache>,
) -> Result<crate::homology::Homology<Chain>> {
    let mp = poisson_module(m, pi, strategy)?;
    let mut h = crate::homology::hochschild_homology(&mp, max, strategy, cache)?;
    h.report.kind = "HP".into();
    Ok(h)
}

/// Poisson cohomology: cohomology of `δ^π = {π, ·}` on normalized cochains.
pub fn poisson_cohomology(
    m: &HochschildModule,
    pi: &Cochain,
    max: usize,
    strategy: Strategy,
    cache: Option<&crate::homology::MatrixCache>,
) -> Result<crate::homology::Homology<Cochain>> {
    let mp = poisson_module(m, pi, strategy)?;
    let mut h = crate::homology::hochschild_cohomology(mp.operad(), max, strategy, cache)?;
    h.report.kind = "HP^".into();
    Ok(h)
}

/// A structure found by [`search_dim2`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    /// `table[i][j][k]`: coefficient of `b_k` in `π(b_i, b_j)`.
    pub table: Vec<Vec<Vec<i64>>>,
    pub unital: bool,
    pub hochschild_cocycle: bool,
}

/// Every associative `π` on a 2-dimensional algebra (with `V = A`) whose
/// structure constants lie in `values` and with `π(1,1) = 1`.
pub fn search_dim2(a: &Algebra, values: &[i64], strategy: Strategy) -> Result<Vec<SearchHit>> {
    if a.dim() != 2 {
        return Err(Error::Usage(format!("search_dim2 needs a 2-dimensional algebra, got dimension {}", a.dim())));
    }
    let m = crate::hochschild::build_hochschild(a, None, crate::hochschild::Caps { arity: 3, degree: 2 })?;
    let op = m.hochschild_operad();
    let field = a.field();
    let r = values.len();
    // π(1,1) = 1 fixes the first two constants.
    let free = 6u32;
    let candidates: Vec<usize> = (0..r.pow(free)).collect();
    let hits = exec::map(strategy, &candidates, |&code| -> Result<Option<SearchHit>> {
        let mut digits = Vec::with_capacity(8);
        digits.extend([1i64, 0]);
        let mut c = code;
        for _ in 0..free {
            digits.push(values[c % r]);
            c /= r;
        }
        let table: Vec<Vec<Vec<i64>>> = (0..2).map(|i| (0..2).map(|j| digits[4 * i + 2 * j..4 * i + 2 * j + 2].to_vec()).collect()).collect();
        let pi = op.cochain(2, |args| {
            table[args[0] as usize][args[1] as usize]
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(k, v)| (k, field.from_i64(*v)))
                .collect()
        });
        let assoc = (0..8).all(|k| {
            let e = |i: usize| vec![(i, field.one())];
            let (x, y, z) = (e(k >> 2), e((k >> 1) & 1), e(k & 1));
            apply2(&pi, &apply2(&pi, &x, &y), &z) == apply2(&pi, &x, &apply2(&pi, &y, &z))
        });
        if !assoc {
            return Ok(None);
        }
        let unital = (0..2).all(|i| {
            let e = vec![(i, field.one())];
            let one = vec![(0, field.one())];
            apply2(&pi, &one, &e) == e && apply2(&pi, &e, &one) == e
        });
        Ok(Some(SearchHit {
            table,
            unital,
            hochschild_cocycle: op.delta(&pi)?.is_zero(),
        }))
    });
    Ok(hits.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_algebra, dual_numbers};
    use crate::comp_module::Complex;
    use crate::hochschild::{basis_chains, basis_cochains, build_hochschild, Caps};
    use crate::homology::hochschild_homology;
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn d_module() -> HochschildModule {
        build_hochschild(&dual_numbers(Q), None, Caps::default()).unwrap()
    }

    fn pi_prime(m: &HochschildModule) -> Cochain {
        with_square(m.hochschild_operad(), 1, vec![(0, Q.one())])
    }

    #[test]
    fn validation() {
        let m = d_module();
        let op = m.hochschild_operad();
        let mu = validate_poisson(op, op.multiplication(), Strategy::Sequential).unwrap();
        assert!(mu.passed);
        assert_eq!(mu.status.as_deref(), Some("hochschild 2-cocycle"));
        assert!(validate_poisson(op, &pi_prime(&m), Strategy::Parallel).unwrap().passed);
        // π″(x,x) = x, π″(1,x) = 0
        let bad = op.cochain(2, |a| match (a[0], a[1]) {
            (0, 0) => vec![(0, Q.one())],
            (1, 1) => vec![(1, Q.one())],
            _ => vec![],
        });
        let r = validate_poisson(op, &bad, Strategy::Sequential).unwrap();
        assert!(!r.passed);
        assert!(!r.violations().is_empty());
        // ε⊗ε is associative with π(1,1) = 1 yet not unital.
        let eps = op.cochain(2, |a| if a == [0, 0] { vec![(0, Q.one())] } else { vec![] });
        let r = validate_poisson(op, &eps, Strategy::Sequential).unwrap();
        assert!(r.check("π ∘₁ π = π ∘₂ π").unwrap().passed);
        assert!(r.check("π(1,1) = 1").unwrap().passed);
        assert!(!r.check("π ∘ᵢ e = 𝟙").unwrap().passed);
        assert!(matches!(poisson_module(&m, &eps, Strategy::Sequential), Err(Error::Refused(_))));
    }

    #[test]
    fn closed_forms_match_generic_operators() {
        let m = d_module();
        let op = m.hochschild_operad();
        let pp = pi_prime(&m);
        for pi in [op.multiplication().clone(), pp.clone()] {
            let mp = m.with_multiplication(pi.clone()).unwrap();
            let pop = mp.hochschild_operad();
            let ops = Operators::new(&mp, Complex::Full);
            for x in basis_chains(&mp, 0..=3, Complex::Full) {
                assert_eq!(ops.b(&x).unwrap(), brylinski_closed(op, &pi, &x));
                for phi in basis_cochains(op, 0..=2, Complex::Full) {
                    assert_eq!(ops.iota(&phi, &x).unwrap(), poisson_cap_closed(op, &pi, &phi, &x));
                }
            }
            for phi in basis_cochains(op, 0..=2, Complex::Full) {
                assert_eq!(pop.delta(&phi).unwrap(), koszul_closed(op, &pi, &phi));
                for psi in basis_cochains(op, 0..=1, Complex::Full) {
                    assert_eq!(pop.cup(&phi, &psi).unwrap(), poisson_cup_closed(op, &pi, &phi, &psi));
                }
            }
            assert_eq!(&pop.cup(op.identity(), op.identity()).unwrap(), &pi);
        }
        // π = μ gives back b and δ.
        let ops = Operators::new(&m, Complex::Full);
        for x in basis_chains(&m, 0..=3, Complex::Full) {
            assert_eq!(brylinski_closed(op, op.multiplication(), &x), ops.b(&x).unwrap());
        }
        for phi in basis_cochains(op, 0..=2, Complex::Full) {
            assert_eq!(koszul_closed(op, op.multiplication(), &phi), op.delta(&phi).unwrap());
        }
    }

    #[test]
    fn poisson_homology_of_pi_prime() {
        let m = d_module();
        let pp = pi_prime(&m);
        let mp = poisson_module(&m, &pp, Strategy::Parallel).unwrap();
        let ops = Operators::new(&mp, Complex::Full);
        for x in basis_chains(&mp, 3..=3, Complex::Full) {
            assert!(ops.b(&ops.b(&x).unwrap()).unwrap().is_zero());
        }
        let hp = poisson_homology(&m, &pp, 3, Strategy::Parallel, None).unwrap();
        assert_eq!(hp.report.dims(), vec![2, 0, 0, 0]);
        let g = build_hochschild(&cyclic_group_algebra(Q), None, Caps::default()).unwrap();
        assert_eq!(hochschild_homology(&g, 3, Strategy::Parallel, None).unwrap().report.dims(), vec![2, 0, 0, 0]);
        assert!(brylinski_homotopy_check(&ops, 3, Strategy::Parallel).unwrap().passed);
        let mutated = ops.clone().with_mutation(Some("flip-sign:L:0".parse().unwrap()));
        assert!(!brylinski_homotopy_check(&mutated, 3, Strategy::Parallel).unwrap().passed);
    }

    #[test]
    fn search_finds_known_structures() {
        let a = dual_numbers(Q);
        let hits = search_dim2(&a, &[-1, 0, 1], Strategy::Parallel).unwrap();
        let table = |xx: [i64; 2]| vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], xx.to_vec()]];
        let mu = hits.iter().find(|h| h.table == table([0, 0])).unwrap();
        assert!(mu.unital && mu.hochschild_cocycle);
        let prime = hits.iter().find(|h| h.table == table([1, 0])).unwrap();
        assert!(prime.unital);
        assert!(hits.iter().any(|h| !h.unital));
        assert_eq!(hits, search_dim2(&a, &[-1, 0, 1], Strategy::Sequential).unwrap());
    }
}
