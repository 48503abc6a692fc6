//! Tacnode gap probabilities by the ratio and the direct route, for one and
//! two times, plus the z-weighted generating function.

use gapdet::gapprob::{tacnode_gap_direct, tacnode_gap_ratio};
use gapdet::kernels::{GapSpec, TacnodeParams};

fn main() -> gapdet::Result<()> {
    let one = GapSpec::uniform(1, &[(-1.0, 1.0)])?;
    for sigma in [-2.0, 0.0, 2.0] {
        let p = TacnodeParams::new(sigma, vec![0.5])?;
        let r = tacnode_gap_ratio(&one, &p, 40, 1e-10)?;
        let d = tacnode_gap_direct(&one, &p, 40, 1e-10)?;
        println!(
            "sigma = {sigma:>4}: ratio {:.15} (num {:.6e}, den {:.6e}), direct {:.15}",
            r.re(),
            r.numerator.re(),
            r.denominator.re(),
            d.re()
        );
    }

    let p = TacnodeParams::new(-1.0, vec![0.0, 1.0])?;
    let two = GapSpec::new(vec![vec![(-1.0, 0.0)], vec![(0.0, 1.0), (2.0, 3.0)]])?;
    println!(
        "two times: {:.15}",
        tacnode_gap_ratio(&two, &p, 40, 1e-10)?.re()
    );
    for z in [0.0, 0.5, 1.0] {
        let g = tacnode_gap_ratio(&two.clone().with_z(z), &p, 40, 1e-10)?;
        println!("  z = {z}: {:.15}", g.re());
    }
    Ok(())
}
