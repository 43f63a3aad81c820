use pmshock_core::solver::{regularized_cascade, CascadeSpec};
use pmshock_core::FluxSpec;

fn u0(x: f64) -> f64 {
    if x.abs() < 2.0 {
        (1.0 - x * x / 4.0).powi(2)
    } else {
        0.0
    }
}

#[test]
fn cascade_approaches_the_degenerate_solution() {
    for m in [1.25, 1.5] {
        let recs = regularized_cascade(&CascadeSpec::default(), &FluxSpec::Burgers, m, &u0).unwrap();
        let d: Vec<f64> = recs.iter().map(|r| r.sup_distance).collect();
        assert!(d[0] > d[1] && d[1] > d[2], "m={m}: {d:?}");
        for r in &recs {
            assert!(r.min_v >= (1.0 - 1e-12) / r.n as f64);
        }
    }
}

#[test]
fn misaligned_spacing_is_rejected() {
    let spec = CascadeSpec { dx: 0.3, ns: vec![10], ..Default::default() };
    assert!(regularized_cascade(&spec, &FluxSpec::Burgers, 1.25, &u0).is_err());
}
