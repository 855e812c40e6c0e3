//! Quadrature, priors, posteriors and the falsifier end to end.

use std::f64::consts::PI;

use bloch_infogeo_core::bayes::*;
use bloch_infogeo_core::falsifier::*;
use bloch_infogeo_core::linalg::rotation;
use bloch_infogeo_core::metric::MetricModel;
use bloch_infogeo_core::quadrature::*;
use bloch_infogeo_core::{Error, Executor, Sequential};

/// Evaluates work items back to front; results must not change.
struct Reversed;

impl Executor for Reversed {
    fn map_indexed<T, F>(&self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        let mut out: Vec<(usize, T)> = (0..len).rev().map(|i| (i, f(i))).collect();
        out.reverse();
        out.into_iter().map(|(_, t)| t).collect()
    }
}

fn default_quad() -> Quadrature {
    Quadrature::sequential(QuadratureSpec::default()).unwrap()
}

#[test]
fn reference_volumes() {
    let q = default_quad();
    let v = |m| q.mass(&DensitySource::Volume(m)).unwrap();
    // Frozen from 30-digit one-dimensional quadrature of the radial profiles.
    assert!((v(MetricModel::BrodyHughston) - 0.098_310_342_4).abs() < 1e-9);
    assert!((v(MetricModel::BURES) - PI * PI).abs() < 1e-9);
    assert!((v(MetricModel::IDENTRIC) - 12.015_507_196_0).abs() < 1e-7);
    assert!((v(MetricModel::MOROZOVA_CHENTSOV) - 48.704_545_517_0).abs() < 1e-6);
    let ball = q.integrate(|p| p.r() * p.r() * p.sin_theta).unwrap();
    assert!((ball - 4.0 * PI / 3.0).abs() < 1e-12);
}

#[test]
fn normalizers_are_stable_under_doubling() {
    let q = default_quad();
    let fine = Quadrature::sequential(QuadratureSpec::default().doubled()).unwrap();
    for id in PriorId::ALL {
        let a = prior(&q, id).unwrap().normalizer();
        let b = prior(&fine, id).unwrap().normalizer();
        assert!((a - b).abs() < 1e-7, "{id}: {a} vs {b}");
    }
}

#[test]
fn gibbs_inequality_for_all_pairs() {
    let q = Quadrature::sequential(QuadratureSpec::with_nodes(64, 32, 16)).unwrap();
    let priors: Vec<_> = PriorId::ALL
        .iter()
        .map(|&id| prior(&q, id).unwrap())
        .collect();
    for (i, p) in priors.iter().enumerate() {
        for (j, r) in priors.iter().enumerate() {
            let d = q.relative_entropy(p, r).unwrap();
            if i == j {
                assert!(d.abs() < 2e-6);
            } else {
                assert!(d > 0.0, "{} || {}", p.label(), r.label());
            }
        }
    }
}

#[test]
fn marginals_integrate_to_one() {
    let q = Quadrature::sequential(QuadratureSpec::with_nodes(64, 32, 32)).unwrap();
    let gl = GaussLegendre::new(200);
    for id in PriorId::ALL {
        let p = prior(&q, id).unwrap();
        // r = sin(πs/2) absorbs the (1 − r²)^{−1/2} endpoint.
        let nodes: Vec<(f64, f64)> = gl
            .unit_interval()
            .map(|(s, w)| ((PI * s / 2.0).sin(), w * PI / 2.0 * (PI * s / 2.0).cos()))
            .collect();
        let radii: Vec<f64> = nodes.iter().map(|n| n.0).collect();
        let m = q.radial_marginal(&p, &radii).unwrap();
        let total: f64 = m.iter().zip(&nodes).map(|((_, v), (_, w))| v * w).sum();
        // MC's ln² endpoint limits the plain sine map to about 1e-4.
        assert!((total - 1.0).abs() < 2e-4, "{id}: {total}");
        assert!(m.iter().all(|(_, v)| *v >= 0.0));
    }
    assert!(q
        .radial_marginal(&prior(&q, PriorId::B).unwrap(), &[1.0])
        .is_err());
}

#[test]
fn executor_does_not_change_results() {
    let spec = QuadratureSpec::with_nodes(32, 16, 16);
    let a = Quadrature::new(spec, Sequential).unwrap();
    let b = Quadrature::new(spec, Reversed).unwrap();
    let pa = prior(&a, PriorId::Mc).unwrap();
    let pb = prior(&b, PriorId::Mc).unwrap();
    assert_eq!(pa.ln_mass().to_bits(), pb.ln_mass().to_bits());
    let qa = prior(&a, PriorId::Bh).unwrap();
    let d1 = a.relative_entropy_on(&spec, &pa, &qa);
    let d2 = b.relative_entropy_on(&spec, &pb, &qa);
    assert_eq!(d1.to_bits(), d2.to_bits());

    let cfg = SearchConfig::new(MetricModel::BrodyHughston, 3000, 5);
    assert_eq!(
        search(&cfg, &Sequential).unwrap(),
        search(&cfg, &Reversed).unwrap()
    );
}

#[test]
fn cube_posterior_rotation_invariance() {
    let q = default_quad();
    let b = prior(&q, PriorId::B).unwrap();
    let bh = prior(&q, PriorId::Bh).unwrap();
    let cube = AxisSet::platonic(Platonic::Cube);
    let rotations = [
        ([0.3, -1.2, 0.7], 0.9),
        ([1.0, 1.0, 0.0], 2.2),
        ([-0.4, 0.1, 1.3], 4.0),
        ([0.0, 1.0, 0.0], 0.35),
        ([2.0, -0.5, -1.0], 5.5),
    ];
    let base = q
        .relative_entropy(
            &posterior(&q, &b, &LikelihoodSpec::new(cube.clone(), 1).unwrap()).unwrap(),
            &bh,
        )
        .unwrap();
    for (axis, angle) in rotations {
        let l = LikelihoodSpec::new(cube.rotated(&rotation(&axis, angle)), 1).unwrap();
        let d = q
            .relative_entropy(&posterior(&q, &b, &l).unwrap(), &bh)
            .unwrap();
        assert!((d - base).abs() < 1e-6, "{axis:?}: {d} vs {base}");
    }
}

#[test]
fn posteriors_vanish_only_on_axis_poles() {
    let l = LikelihoodSpec::platonic(Platonic::Icosahedron);
    for a in l.axes().axes() {
        assert_eq!(l.factor(a), 0.0);
        let inside = [0.999 * a[0], 0.999 * a[1], 0.999 * a[2]];
        assert!(l.factor(&inside) > 0.0);
    }
}

#[test]
fn unreachable_tolerance_is_an_accuracy_error() {
    let spec = QuadratureSpec {
        tolerance: 1e-16,
        ..QuadratureSpec::with_nodes(8, 8, 8)
    };
    let q = Quadrature::sequential(spec).unwrap();
    let err = q
        .mass(&DensitySource::Volume(MetricModel::MOROZOVA_CHENTSOV))
        .unwrap_err();
    match err {
        Error::Accuracy { coarse, fine, .. } => assert!(coarse != fine),
        other => panic!("{other:?}"),
    }
}

#[test]
fn monotone_controls_have_no_violations() {
    for metric in [MetricModel::BURES, MetricModel::MAXIMAL] {
        for unital_only in [false, true] {
            let cfg = SearchConfig {
                unital_only,
                ..SearchConfig::new(metric, 20_000, 99)
            };
            let out = search(&cfg, &Sequential).unwrap();
            assert!(
                out.records.is_empty(),
                "{metric}: {:?}",
                out.records.first()
            );
        }
    }
}

#[test]
fn bh_violations_reverify() {
    let cfg = SearchConfig {
        unital_only: true,
        ..SearchConfig::new(MetricModel::BrodyHughston, 20_000, 3)
    };
    let out = search(&cfg, &Sequential).unwrap();
    assert!(!out.records.is_empty());
    assert_eq!(out.summary.violations, out.records.len());
    for rec in &out.records {
        assert!(rec.post > rec.pre);
        let again = reverify(rec).unwrap();
        assert!((again.ratio - rec.ratio).abs() <= 1e-12 * rec.ratio);
    }
}
