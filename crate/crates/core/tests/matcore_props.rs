use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use relcoh::matcore::{c64, herm_eig, kron, partial_trace, vn_entropy, ComplexMatrix, Subsystem};
use relcoh::states::{random_density, random_unitary};

fn hermitian(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |v| {
        let m = ComplexMatrix::from_fn(d, d, |i, j| c64(v[i * d + j].0, v[i * d + j].1));
        m.hermitian_part()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn eigensystem_reconstructs(m in (2usize..=6).prop_flat_map(hermitian)) {
        let e = herm_eig(&m).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&m) < 1e-10);
        for w in e.eigenvalues.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn partial_trace_of_product_recovers_factors(
        d_a in 2usize..=3, d_b in 2usize..=3, s1 in any::<u64>(), s2 in any::<u64>()
    ) {
        let a = random_density(d_a, d_a, s1).unwrap();
        let b = random_density(d_b, d_b, s2).unwrap();
        let ab = kron(a.matrix(), b.matrix());
        let got_a = partial_trace(&ab, (d_a, d_b), Subsystem::A).unwrap();
        let got_b = partial_trace(&ab, (d_a, d_b), Subsystem::B).unwrap();
        prop_assert!(got_a.max_abs_diff(a.matrix()) < 1e-13);
        prop_assert!(got_b.max_abs_diff(b.matrix()) < 1e-13);
    }

    #[test]
    fn entropy_is_unitarily_invariant(d in 2usize..=5, rank in 1usize..=5, s in any::<u64>()) {
        let rho = random_density(d, rank.min(d), s).unwrap();
        let u = random_unitary(d, s ^ 0x9e37_79b9);
        let before = vn_entropy(rho.matrix()).unwrap();
        let after = vn_entropy(&rho.matrix().conjugate_by(&u)).unwrap();
        assert_abs_diff_eq!(before, after, epsilon = 1e-10);
        prop_assert!(before >= 0.0 && before <= (d as f64).log2() + 1e-12, "S = {before:e}");
    }
}
