use proptest::prelude::*;

use opcalc_core::algebra::{cyclic_group_algebra, dual_numbers, matrix_algebra, Algebra};
use opcalc_core::comp_module::{CompModule, Complex, Operators};
use opcalc_core::element::{Chain, Cochain, Vector};
use opcalc_core::exec::Strategy as Exec;
use opcalc_core::hochschild::{build_hochschild, lie_closed, s_closed, iota_closed, Caps, HochschildModule};
use opcalc_core::homology::{self, Chains, OperatorMatrix};
use opcalc_core::operad::{identities, Operad};
use opcalc_core::poisson;
use opcalc_core::random;
use opcalc_core::scalar::FieldSpec;
use opcalc_core::verify::{self, Suite, VerifyConfig};

const Q: FieldSpec = FieldSpec::Rationals;

fn module(a: &Algebra) -> HochschildModule {
    build_hochschild(a, None, Caps { arity: 7, degree: 7 }).unwrap()
}

fn algebras() -> impl Strategy<Value = Algebra> {
    prop_oneof![
        Just(dual_numbers(Q)),
        Just(cyclic_group_algebra(Q)),
        Just(dual_numbers(FieldSpec::Prime(3))),
        Just(matrix_algebra(Q, 2)),
    ]
}

fn field_of(a: &Algebra) -> FieldSpec {
    a.field()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn homology_ignores_basis_order(which in 0usize..3, tail in Just(vec![1usize, 2, 3]).prop_shuffle()) {
        let a = match which {
            0 => dual_numbers(Q),
            1 => cyclic_group_algebra(Q),
            _ => matrix_algebra(Q, 2),
        };
        let perm: Vec<usize> = std::iter::once(0).chain(tail.into_iter().filter(|&k| k < a.dim())).collect();
        let b = a.permuted(&perm).unwrap();
        let max = if a.dim() > 2 { 2 } else { 3 };
        let h = |x: &Algebra| homology::hochschild_homology(&module(x), max, Exec::Sequential, None).unwrap().report.dims();
        let c = |x: &Algebra| homology::hochschild_cohomology(module(x).operad(), 2, Exec::Sequential, None).unwrap().report.dims();
        prop_assert_eq!(h(&a), h(&b));
        prop_assert_eq!(c(&a), c(&b));
    }

    #[test]
    fn boundary_certificates_verify(a in algebras(), seed in any::<u64>(), n in 1usize..4) {
        let m = module(&a);
        let ops = Operators::new(&m, Complex::Normalized);
        let mut rng = random::rng(seed);
        let y: Chain = random::random_chain(&m, n + 1, Complex::Normalized, &mut rng);
        let z = ops.b(&y).unwrap();
        let r = homology::is_hochschild_boundary(&m, &z, Exec::Sequential).unwrap();
        prop_assert!(r.is_boundary);
        let cert = r.certificate.unwrap();
        prop_assert_eq!(ops.b(&cert).unwrap(), z);
    }

    #[test]
    fn mixed_complex_relations(a in algebras(), seed in any::<u64>(), n in 0usize..5) {
        let m = module(&a);
        let mut rng = random::rng(seed);
        for complex in [Complex::Full, Complex::Normalized] {
            let ops = Operators::new(&m, complex);
            let x: Chain = random::random_chain(&m, n, complex, &mut rng);
            prop_assert!(ops.b(&ops.b(&x).unwrap()).unwrap().is_zero());
            prop_assert!(ops.connes_b(&ops.connes_b(&x).unwrap()).unwrap().is_zero());
            let bb = ops.b(&ops.connes_b(&x).unwrap()).unwrap().plus(&ops.connes_b(&ops.b(&x).unwrap()).unwrap());
            prop_assert!(bb.is_zero(), "bB + Bb ≠ 0 on {}", x);
        }
        let x: Chain = random::random_chain(&m, n, Complex::Full, &mut rng);
        prop_assert_eq!(m.t_pow(&x, n + 1), x);
    }

    #[test]
    fn gerstenhaber_identities(a in algebras(), seed in any::<u64>(), p in 0usize..3, q in 0usize..3, r in 0usize..3) {
        let m = module(&a);
        let op = m.operad();
        let mut rng = random::rng(seed);
        let phi: Cochain = random::random_cochain(op, p, Complex::Full, &mut rng);
        let psi: Cochain = random::random_cochain(op, q, Complex::Full, &mut rng);
        let chi: Cochain = random::random_cochain(op, r, Complex::Full, &mut rng);
        prop_assert_eq!(identities::delta_squared(op, &phi).unwrap(), None);
        prop_assert_eq!(identities::antisymmetry(op, &phi, &psi).unwrap(), None);
        prop_assert_eq!(identities::jacobi(op, &phi, &psi, &chi).unwrap(), None);
        prop_assert_eq!(identities::delta_leibniz(op, &phi, &psi).unwrap(), None);
        prop_assert_eq!(identities::commutativity_defect(op, &phi, &psi).unwrap(), None);
        if p % 2 == 1 {
            // The two sign placements agree for odd p.
            prop_assert_eq!(identities::commutativity_defect_sign_on_first(op, &phi, &psi).unwrap(), None);
        }
    }

    #[test]
    fn closed_forms_match_generic_operators(a in algebras(), seed in any::<u64>(), p in 0usize..3, n in 0usize..4) {
        let m = module(&a);
        let op = m.hochschild_operad();
        let ops = Operators::new(&m, Complex::Full);
        let mut rng = random::rng(seed);
        let phi: Cochain = random::random_cochain(m.operad(), p, Complex::Full, &mut rng);
        let x: Chain = random::random_chain(&m, n, Complex::Full, &mut rng);
        prop_assert_eq!(iota_closed(op, &phi, &x), ops.iota(&phi, &x).unwrap());
        prop_assert_eq!(lie_closed(op, &phi, &x), ops.lie(&phi, &x).unwrap());
        let nops = Operators::new(&m, Complex::Normalized);
        let phin: Cochain = random::random_cochain(m.operad(), p, Complex::Normalized, &mut rng);
        let xn: Chain = random::random_chain(&m, n, Complex::Normalized, &mut rng);
        prop_assert_eq!(m.project_normalized(&s_closed(op, &phin, &xn)), nops.correction(&phin, &xn).unwrap());
    }

    #[test]
    fn poisson_with_mu_is_hochschild(a in algebras(), seed in any::<u64>(), n in 0usize..4, p in 0usize..3) {
        let m = module(&a);
        let op = m.hochschild_operad();
        let mu = op.multiplication().clone();
        let ops = Operators::new(&m, Complex::Full);
        let mut rng = random::rng(seed);
        let x: Chain = random::random_chain(&m, n, Complex::Full, &mut rng);
        let phi: Cochain = random::random_cochain(m.operad(), p, Complex::Full, &mut rng);
        prop_assert_eq!(poisson::brylinski_closed(op, &mu, &x), ops.b(&x).unwrap());
        prop_assert_eq!(poisson::koszul_closed(op, &mu, &phi), op.delta(&phi).unwrap());
        prop_assert_eq!(poisson::poisson_cup_closed(op, &mu, &phi, &phi), op.cup(&phi, &phi).unwrap());
    }

    #[test]
    fn matrix_text_round_trip(a in algebras(), n in 1usize..4) {
        let m = module(&a);
        let ops = Operators::new(&m, Complex::Full);
        let space = Chains { module: &m, complex: Complex::Full };
        let mat = homology::assemble(&space, "b", n, n - 1, |x| ops.b(x), Exec::Sequential).unwrap();
        let (key, back): (String, OperatorMatrix) = OperatorMatrix::from_text(&mat.to_text("k")).unwrap();
        prop_assert_eq!(key, "k".to_string());
        prop_assert_eq!(back, mat);
    }

    #[test]
    fn chain_files_round_trip(a in algebras(), seed in any::<u64>(), n in 0usize..4) {
        let m = module(&a);
        let mut rng = random::rng(seed);
        let x: Chain = random::random_chain(&m, n, Complex::Full, &mut rng);
        let text = serde_json::to_string(&x.to_file()).unwrap();
        let back = Chain::from_file(&serde_json::from_str(&text).unwrap(), field_of(&a), a.dim()).unwrap();
        prop_assert_eq!(back, x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn strategies_agree(seed in any::<u64>()) {
        let m = module(&dual_numbers(Q));
        let cfg = VerifyConfig { max_degree: 2, operad_cap: 2, trials: 4, seed, ..VerifyConfig::default() };
        let par = verify::run(&m, Suite::Calculus, &VerifyConfig { strategy: Exec::Parallel, ..cfg.clone() }).unwrap();
        let seq = verify::run(&m, Suite::Calculus, &VerifyConfig { strategy: Exec::Sequential, ..cfg }).unwrap();
        prop_assert_eq!(serde_json::to_string(&par).unwrap(), serde_json::to_string(&seq).unwrap());
        let hp = homology::hochschild_homology(&m, 3, Exec::Parallel, None).unwrap().report;
        let hs = homology::hochschild_homology(&m, 3, Exec::Sequential, None).unwrap().report;
        prop_assert_eq!(hp, hs);
    }

    #[test]
    fn cyclic_homology_agrees_with_hh_in_degree_zero(a in algebras()) {
        prop_assume!(a.field() == Q);
        let m = module(&a);
        let hc = homology::connes_cyclic_homology(&m, 1, Exec::Sequential).unwrap().report.dims();
        let hh = homology::hochschild_homology(&m, 1, Exec::Sequential, None).unwrap().report.dims();
        prop_assert_eq!(hc[0], hh[0]);
    }
}
