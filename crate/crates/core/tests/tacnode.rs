use gapdet::gapprob::{
    tacnode_gap_direct, tacnode_gap_ratio, tacnode_gap_ratio_with, TacnodeOptions,
};
use gapdet::kernels::{GapSpec, TacnodeParams};
use gapdet::Error;

const TOL: f64 = 1e-8;

/// One-time gap probabilities of [-1, 1] from an independent dense-matrix
/// evaluation of the ratio formula (sigma, tau, value).
const ONE_TIME: [(f64, f64, f64); 9] = [
    (-2.0, -1.0, 0.462573826762),
    (-2.0, 0.0, 0.088455325077),
    (-2.0, 1.0, 0.462573826762),
    (0.0, -1.0, 0.945681222536),
    (0.0, 0.0, 0.672666944573),
    (0.0, 1.0, 0.945681222536),
    (2.0, -1.0, 0.999775314268),
    (2.0, 0.0, 0.995024284749),
    (2.0, 1.0, 0.999775314268),
];

fn unit_gap(r: usize) -> GapSpec {
    GapSpec::uniform(r, &[(-1.0, 1.0)]).unwrap()
}

#[test]
fn one_time_reference_values_by_both_routes() {
    for (sigma, tau, expect) in ONE_TIME {
        let p = TacnodeParams::new(sigma, vec![tau]).unwrap();
        let r = tacnode_gap_ratio(&unit_gap(1), &p, 40, TOL).unwrap();
        let d = tacnode_gap_direct(&unit_gap(1), &p, 40, TOL).unwrap();
        assert!(
            (r.re() - expect).abs() < 1e-11,
            "ratio ({sigma}, {tau}): {}",
            r.re()
        );
        assert!(
            (d.re() - expect).abs() < 1e-11,
            "direct ({sigma}, {tau}): {}",
            d.re()
        );
        assert!(r.re() >= 0.0 && r.re() <= 1.0 + 1e-6);
    }
}

#[test]
fn two_times() {
    let p = TacnodeParams::new(-1.0, vec![0.0, 1.0]).unwrap();
    let r = tacnode_gap_ratio(&unit_gap(2), &p, 40, TOL).unwrap().re();
    let d = tacnode_gap_direct(&unit_gap(2), &p, 40, TOL).unwrap().re();
    assert!((r - 0.228676907556).abs() < 1e-11, "{r}");
    assert!((r - d).abs() < 1e-3 * r);
    // a gap at two times is rarer than at either one
    for t in [0.0, 1.0] {
        let q = TacnodeParams::new(-1.0, vec![t]).unwrap();
        assert!(r < tacnode_gap_ratio(&unit_gap(1), &q, 40, TOL).unwrap().re());
    }
}

#[test]
fn deep_overlap_switches_to_extended_precision() {
    let p = TacnodeParams::new(-5.0, vec![1.5]).unwrap();
    let g = tacnode_gap_ratio(&GapSpec::uniform(1, &[(-0.6, 0.6)]).unwrap(), &p, 40, TOL).unwrap();
    assert!(g.extended);
    assert!(g.denominator.re() < 1e-12 && g.denominator.re() > 0.0);
    assert!(g.re() > 0.0 && g.re() < 1.0);

    let shallow = TacnodeParams::new(-1.0, vec![0.0]).unwrap();
    assert!(
        !tacnode_gap_ratio(&unit_gap(1), &shallow, 40, TOL)
            .unwrap()
            .extended
    );
}

#[test]
fn stability_window_and_division_instability() {
    let p = TacnodeParams::new(-15.0, vec![0.0]).unwrap();
    let spec = unit_gap(1);
    assert!(matches!(
        tacnode_gap_ratio(&spec, &p, 40, TOL),
        Err(Error::StabilityWindow { .. })
    ));
    let forced = TacnodeOptions {
        force_sigma: true,
        ..Default::default()
    };
    match tacnode_gap_ratio_with(&spec, &p, 40, TOL, &forced) {
        Err(Error::DivisionInstability { denominator }) => assert!(denominator < 1e-250),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn gap_probability_decreases_as_the_interval_grows() {
    let p = TacnodeParams::new(0.5, vec![0.3]).unwrap();
    let mut last = 1.0;
    for b in [0.25, 0.5, 1.0, 2.0] {
        let v = tacnode_gap_ratio(&GapSpec::uniform(1, &[(-b, b)]).unwrap(), &p, 40, TOL)
            .unwrap()
            .re();
        assert!(v < last, "{b}: {v}");
        last = v;
    }
}
