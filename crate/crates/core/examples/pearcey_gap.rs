//! Pearcey gap probabilities for a single interval and a union of two,
//! under both parametrizations of the vertical contour.

use gapdet::gapprob::pearcey_gap_with;
use gapdet::kernels::{AxisMap, PearceyParams};

fn main() -> gapdet::Result<()> {
    let cases = [
        (0.0, vec![-1.0, 1.0]),
        (2.0, vec![-0.5, 1.0]),
        (1.0, vec![-2.0, -1.0, 0.5, 1.5]),
    ];
    for (tau, endpoints) in cases {
        let p = PearceyParams::new(tau, endpoints.clone())?;
        for map in [AxisMap::Tangent, AxisMap::Algebraic] {
            let r = pearcey_gap_with(&p, map, 60, 1e-10)?;
            println!(
                "tau = {tau}, E = {endpoints:?}, {map:?}: {:.14} (imag {:.1e}, err {:.1e})",
                r.re(),
                r.imag_residual,
                r.err_estimate
            );
        }
    }
    Ok(())
}
