//! Cross-module properties: parser totality, expression/builtin agreement,
//! scaling laws for the flatness residuals, packed-coordinate round trips,
//! and consistency between the catalog's claimed flags and what the
//! numerical checks actually measure.

use finsler_core::axioms::{
    complex_lambdas, fundamental_tensors, homogeneity_scan_complex, homogeneity_scan_real,
    real_lambdas_absolute, real_lambdas_positive,
};
use finsler_core::flatness::{
    complex_df_residual_at, complex_pf_residual_at, dualflat_residual_at, hamel_residual_at,
    rigidity_scan,
};
use finsler_core::sample::{complex_samples, real_samples};
use finsler_core::{dsl, zoo, Classification, Cx, Kind, MetricField};
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// Parser totality: any input either parses or yields a positioned error.
// ---------------------------------------------------------------------------

fn assert_parse_is_total(source: &str, kind: Kind, params: &[String]) {
    match dsl::parse(source, kind, 2, params) {
        Ok(_) => {}
        Err(e) => {
            if let Some(pos) = e.position() {
                assert!(
                    pos >= 1 && pos <= source.len() + 1,
                    "error position {pos} outside 1..={} for source {source:?}",
                    source.len() + 1
                );
            }
            // Rendering the message must not panic either.
            let _ = e.to_string();
        }
    }
}

proptest! {
    #[test]
    fn parser_is_total_on_arbitrary_text(source in "\\PC{0,60}") {
        assert_parse_is_total(&source, Kind::Real, &[]);
        assert_parse_is_total(&source, Kind::Complex, &[]);
    }

    #[test]
    fn parser_is_total_on_token_soup(
        pieces in proptest::collection::vec(
            prop_oneof![
                Just("z_1"), Just("v_2"), Just("x_1"), Just("u_1"), Just("u_12"),
                Just("("), Just(")"), Just("+"), Just("-"), Just("*"), Just("/"),
                Just("^"), Just(","), Just("sqrt"), Just("normsq"), Just("herm"),
                Just("re"), Just("im"), Just("conj"), Just("abs"), Just("i"),
                Just("t"), Just("2"), Just("1.5"), Just("3e-2"), Just(".5"),
                Just("1.2.3"), Just("_"), Just("qq"), Just(" "),
            ],
            0..24,
        )
    ) {
        let source: String = pieces.concat();
        let params = vec!["t".to_string()];
        assert_parse_is_total(&source, Kind::Real, &params);
        assert_parse_is_total(&source, Kind::Complex, &params);
    }
}

#[test]
fn malformed_inputs_yield_positioned_errors() {
    let cases = [
        "sqrt(",
        "1 +",
        "normsq(q)",
        "v_9",
        "herm(v_1)",
        "(1",
        "1.2.3",
        ")",
        "conj conj",
        "re(v_1",
        "z_1 ** 2",
        "sqrt(normsq(u),2)",
        "",
    ];
    for source in cases {
        let err = dsl::parse(source, Kind::Complex, 2, &[])
            .err()
            .unwrap_or_else(|| panic!("{source:?} unexpectedly parsed"));
        let pos = err
            .position()
            .unwrap_or_else(|| panic!("{source:?} produced an unpositioned error: {err}"));
        assert!(
            pos >= 1 && pos <= source.len() + 1,
            "{source:?}: position {pos} out of range"
        );
        assert!(
            err.to_string().contains("offset"),
            "{source:?}: message lacks the offset: {err}"
        );
    }
}

// ---------------------------------------------------------------------------
// Expression twins agree with the builtin evaluations.
// ---------------------------------------------------------------------------

#[test]
fn expression_twins_match_builtins_on_500_samples() {
    for entry in zoo::zoo() {
        let Some(twin) = zoo::build_dsl_twin::<f64>(entry.name, None, &[]).unwrap() else {
            continue;
        };
        let builtin = zoo::build::<f64>(entry.name, None, &[]).unwrap();
        let spec = builtin.default_sample_spec(2023, 500);
        match entry.kind {
            Kind::Real => {
                for s in real_samples::<f64>(&spec, builtin.dim()) {
                    let a = builtin.evaluate_real(&s).unwrap();
                    let b = twin.evaluate_real(&s).unwrap();
                    assert!(
                        (a - b).abs() <= 1e-12 * (1.0 + a.abs()),
                        "{}: builtin {a} vs expression {b} at {s:?}",
                        entry.name
                    );
                }
            }
            Kind::Complex => {
                for s in complex_samples::<f64>(&spec, builtin.dim()) {
                    let a = builtin.evaluate_complex(&s).unwrap();
                    let b = twin.evaluate_complex(&s).unwrap();
                    assert!(
                        (a - b).abs() <= 1e-12 * (1.0 + a.abs()),
                        "{}: builtin {a} vs expression {b} at {s:?}",
                        entry.name
                    );
                }
            }
        }
    }
}

proptest! {
    /// Evaluating an expression metric off the sampling region must fail
    /// cleanly (domain or guard errors), never panic; where both the twin
    /// and the builtin succeed they agree.
    #[test]
    fn expression_evaluation_fails_cleanly_off_region(
        coords in proptest::collection::vec(-3.0f64..3.0, 8)
    ) {
        let twin = zoo::build_dsl_twin::<f64>("funk-complex-form", None, &[])
            .unwrap()
            .unwrap();
        let builtin = zoo::build::<f64>("funk-complex-form", None, &[]).unwrap();
        let s = finsler_core::ComplexTangentSample {
            z: vec![Cx::from_f64(coords[0], coords[1]), Cx::from_f64(coords[2], coords[3])],
            v: vec![Cx::from_f64(coords[4], coords[5]), Cx::from_f64(coords[6], coords[7])],
        };
        let a = builtin.evaluate_complex(&s);
        let b = twin.evaluate_complex(&s);
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }
}

// ---------------------------------------------------------------------------
// Scaling law: rescaling F by a constant s rescales the projective-flatness
// residual by s and the dual-flatness residual by s².
// ---------------------------------------------------------------------------

#[test]
fn constant_rescaling_scales_residuals_linearly_and_quadratically() {
    let base = MetricField::<f64>::from_expr_source(
        "perturbed-expr",
        "sqrt((1 + t*re(z_1)) * normsq(v))",
        Kind::Complex,
        2,
        &[("t".to_string(), 0.2)],
        false,
    )
    .unwrap();
    for s in [0.5, 2.0, 3.0] {
        let scaled = MetricField::<f64>::from_expr_source(
            "perturbed-expr-scaled",
            "s * sqrt((1 + t*re(z_1)) * normsq(v))",
            Kind::Complex,
            2,
            &[("s".to_string(), s), ("t".to_string(), 0.2)],
            false,
        )
        .unwrap();
        let spec = base.default_sample_spec(17, 30);
        for sample in complex_samples::<f64>(&spec, 2) {
            let p0 = complex_pf_residual_at(&base, &sample).unwrap().max_abs();
            let p1 = complex_pf_residual_at(&scaled, &sample).unwrap().max_abs();
            assert!(
                (p1 - s * p0).abs() <= 1e-8 * (1.0 + s * p0),
                "s={s}: projective residual {p1} vs expected {}",
                s * p0
            );
            let q0 = complex_df_residual_at(&base, &sample).unwrap().max_abs();
            let q1 = complex_df_residual_at(&scaled, &sample).unwrap().max_abs();
            assert!(
                (q1 - s * s * q0).abs() <= 1e-8 * (1.0 + s * s * q0),
                "s={s}: dual residual {q1} vs expected {}",
                s * s * q0
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Packed real coordinates round-trip bitwise.
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn complex_packing_round_trips_bitwise(
        coords in proptest::collection::vec(-1.0e6f64..1.0e6, 8)
    ) {
        let s = finsler_core::ComplexTangentSample {
            z: vec![Cx::<f64>::from_f64(coords[0], coords[1]), Cx::from_f64(coords[2], coords[3])],
            v: vec![Cx::from_f64(coords[4], coords[5]), Cx::from_f64(coords[6], coords[7])],
        };
        let packed = s.packed_real();
        let back = packed.packed_complex(2);
        for k in 0..2 {
            prop_assert_eq!(back.z[k].re.to_bits(), s.z[k].re.to_bits());
            prop_assert_eq!(back.z[k].im.to_bits(), s.z[k].im.to_bits());
            prop_assert_eq!(back.v[k].re.to_bits(), s.v[k].re.to_bits());
            prop_assert_eq!(back.v[k].im.to_bits(), s.v[k].im.to_bits());
        }
    }
}

// ---------------------------------------------------------------------------
// Catalog flags vs measured behavior.
// ---------------------------------------------------------------------------

#[test]
fn catalog_homogeneity_flags_match_measurements() {
    for entry in zoo::zoo() {
        let m = zoo::build::<f64>(entry.name, None, &[]).unwrap();
        let real_form = m.to_real();
        let spec = real_form.default_sample_spec(5, 40);

        if let Some(claim) = entry.flags.positively_homogeneous_real {
            let worst =
                homogeneity_scan_real(&real_form, &spec, &real_lambdas_positive::<f64>()).unwrap();
            assert_eq!(
                worst <= 1e-9,
                claim,
                "{}: positive-homogeneity residual {worst}",
                entry.name
            );
        }
        if let Some(claim) = entry.flags.absolutely_homogeneous_real {
            let worst =
                homogeneity_scan_real(&real_form, &spec, &real_lambdas_absolute::<f64>()).unwrap();
            assert_eq!(
                worst <= 1e-9,
                claim,
                "{}: absolute-homogeneity residual {worst}",
                entry.name
            );
        }
        if let Some(claim) = entry.flags.homogeneous_complex {
            let cspec = m.default_sample_spec(5, 40);
            let worst = homogeneity_scan_complex(&m, &cspec, &complex_lambdas::<f64>()).unwrap();
            assert_eq!(
                worst <= 1e-9,
                claim,
                "{}: complex-homogeneity residual {worst}",
                entry.name
            );
        }
    }
}

#[test]
fn catalog_flatness_flags_match_measurements() {
    for entry in zoo::zoo() {
        let m = zoo::build::<f64>(entry.name, None, &[]).unwrap();
        match entry.kind {
            Kind::Real => {
                let spec = m.default_sample_spec(9, 40);
                let mut worst_pf = 0.0f64;
                let mut worst_df = 0.0f64;
                for s in real_samples::<f64>(&spec, m.dim()) {
                    worst_pf = worst_pf.max(hamel_residual_at(&m, &s).unwrap().max_rel());
                    worst_df = worst_df.max(dualflat_residual_at(&m, &s).unwrap().max_rel());
                }
                if let Some(claim) = entry.flags.projectively_flat_real {
                    if claim {
                        assert!(worst_pf <= 1e-8, "{}: {worst_pf}", entry.name);
                    } else {
                        assert!(worst_pf >= 1e-4, "{}: {worst_pf}", entry.name);
                    }
                }
                if let Some(claim) = entry.flags.dually_flat_real {
                    if claim {
                        assert!(worst_df <= 1e-8, "{}: {worst_df}", entry.name);
                    } else {
                        assert!(worst_df >= 1e-4, "{}: {worst_df}", entry.name);
                    }
                }
            }
            Kind::Complex => {
                if entry.flags.homogeneous_complex != Some(true) {
                    continue;
                }
                let spec = m.default_sample_spec(9, 40);
                let summary = rigidity_scan(&m, &spec, 1e-8, 1e-4).unwrap();
                let expected = match entry.flags.complex_projectively_flat {
                    Some(true) => Classification::Minkowski,
                    Some(false) => Classification::NonFlat,
                    None => continue,
                };
                assert_eq!(
                    summary.classification, expected,
                    "{}: {summary:?}",
                    entry.name
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Fundamental tensors are invariant along the scaling orbit of the tangent.
// ---------------------------------------------------------------------------

#[test]
fn real_fundamental_tensor_is_scale_invariant() {
    for name in ["euclidean-real", "scaled-euclidean-real", "funk-real"] {
        let m = zoo::build::<f64>(name, None, &[]).unwrap();
        let spec = m.default_sample_spec(13, 10);
        for s in real_samples::<f64>(&spec, m.dim()) {
            let t0 = fundamental_tensors(&m, &s.x, &s.u).unwrap();
            for lam in [2.0, 0.3] {
                let scaled: Vec<f64> = s.u.iter().map(|&c| lam * c).collect();
                let t1 = fundamental_tensors(&m, &s.x, &scaled).unwrap();
                let mut scale = 0.0f64;
                let mut defect = 0.0f64;
                for a in 0..m.dim() {
                    for b in 0..m.dim() {
                        scale = scale.max(t0.g[a][b].abs());
                        defect = defect.max((t1.g[a][b] - t0.g[a][b]).abs());
                    }
                }
                assert!(
                    defect <= 1e-7 * (1.0 + scale),
                    "{name}: g moved by {defect} under u → {lam}·u"
                );
            }
        }
    }
}

#[test]
fn complex_fundamental_tensor_is_scale_invariant() {
    let lambdas = [
        Cx::<f64>::from_f64(2.0, 0.0),
        Cx::from_f64(0.7071067811865476, 0.7071067811865475),
    ];
    for name in [
        "complex-euclidean",
        "complex-hermitian-const",
        "complex-minkowski-phi",
        "perturbed-family",
        "hermitian-z-dependent",
    ] {
        let m = zoo::build::<f64>(name, None, &[]).unwrap();
        let spec = m.default_sample_spec(13, 10);
        for s in complex_samples::<f64>(&spec, m.dim()) {
            let t0 = fundamental_tensors(&m, &s.packed_base(), &s.packed_tangent()).unwrap();
            let g0 = t0.big_g.expect("complex metric has a complex tensor");
            for lam in lambdas {
                let scaled = finsler_core::ComplexTangentSample {
                    z: s.z.clone(),
                    v: s.v.iter().map(|&c| c * lam).collect(),
                };
                let t1 = fundamental_tensors(&m, &scaled.packed_base(), &scaled.packed_tangent())
                    .unwrap();
                let g1 = t1.big_g.expect("complex metric has a complex tensor");
                let mut scale = 0.0f64;
                let mut defect = 0.0f64;
                for a in 0..m.dim() {
                    for b in 0..m.dim() {
                        scale = scale.max(g0[a][b].modulus());
                        defect = defect.max((g1[a][b] - g0[a][b]).modulus());
                    }
                }
                assert!(
                    defect <= 1e-7 * (1.0 + scale),
                    "{name}: G moved by {defect} under v → λ·v with λ = {lam:?}"
                );
            }
        }
    }
}
