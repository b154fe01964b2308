use qsl_core::bounds::{bound_set, DimensionlessBounds, TraceInput};
use qsl_core::catalog::{fourier, grover, permutation, qutrit_mub_full, qutrit_phase_reduce};
use qsl_core::harness::{check_sample, run_random_campaign};
use qsl_core::linalg::{expm_hermitian_scaled, hermitian_from_spectrum, random_unitary, trace_abs};
use qsl_core::minimal_time::verify_dominance;
use qsl_core::{ComplexMatrix, EnergySpectrum, QutritFamily};

#[test]
fn evolved_gate_respects_its_own_time() {
    let levels = vec![0.0f64, 0.7, 3.1, 9.4];
    let basis = random_unitary::<f64>(4, 3).unwrap();
    let h = hermitian_from_spectrum(&basis, &levels).unwrap();
    for &t in &[0.05, 0.4, 1.3, 2.0] {
        let u = expm_hermitian_scaled(&h, t).unwrap();
        let ti = TraceInput::new(4, trace_abs(&u)).unwrap();
        let stats = EnergySpectrum::new(levels.clone()).unwrap().stats();
        let b = bound_set(&ti, &stats).unwrap();
        for v in [b.ml, b.mt, b.dual_ml, b.width_ml, b.width_mt] {
            assert!(t >= v - 1e-9, "t = {t}, bound {v}");
        }
        let o = check_sample(&EnergySpectrum::new(levels.clone()).unwrap(), t, &basis, 1).unwrap();
        assert!(o.passed());
    }
}

#[test]
fn catalog_gates_dominate() {
    let gates: Vec<ComplexMatrix> = vec![
        fourier(5).unwrap(),
        fourier(8).unwrap(),
        grover(6, 2).unwrap(),
        permutation(&[2, 0, 1, 3]).unwrap(),
        qutrit_mub_full([0.3, -1.2, 2.0], 0.5, 1.7, QutritFamily::Two),
    ];
    for (k, u) in gates.iter().enumerate() {
        let rec = verify_dominance(u, k as u64).unwrap();
        assert!(rec.pass, "gate {k}: {:?}", rec.worst);
        assert_eq!(rec.bounds, DimensionlessBounds::new(&TraceInput::new(u.n(), trace_abs(u)).unwrap()));
    }
}

#[test]
fn reduced_qutrit_has_same_profile() {
    let phis = [0.4f64, 2.1, -0.9];
    let full = qutrit_mub_full(phis, 1.1, 0.2, QutritFamily::One);
    let (reduced, _, _) = qutrit_phase_reduce(phis, 1.1, 0.2, QutritFamily::One);
    let red = qsl_core::catalog::qutrit_mub(&reduced);
    assert!((trace_abs(&full) - trace_abs(&red)).abs() < 1e-12);
}

#[test]
fn report_json_is_reproducible() {
    let a = run_random_campaign(&[2, 5], 40, 99).unwrap();
    let b = run_random_campaign(&[2, 5], 40, 99).unwrap();
    let ja = serde_json::to_string(&a).unwrap();
    assert_eq!(ja, serde_json::to_string(&b).unwrap());
    let v: serde_json::Value = serde_json::from_str(&ja).unwrap();
    assert_eq!(v["samples"], 80);
    assert_eq!(v["failures"], 0);
    assert!(v.get("elapsed").is_none());
}
