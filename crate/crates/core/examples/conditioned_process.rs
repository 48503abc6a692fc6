//! Conditioning a determinantal process on an empty set gives another one.
//! Its gap probabilities equal ratios of the original ones.

use gapdet::fredholm::fredholm_det;
use gapdet::kernels::{conditioned_kernel, AiryKernel, ConditionedKernel};
use gapdet::quadrature::DomainComponent;

fn main() -> gapdet::Result<()> {
    let a = DomainComponent::finite(1.0, 2.0, "A", 0)?;
    let e = DomainComponent::finite(-1.0, 0.0, "E", 0)?;

    let k = ConditionedKernel::new(&AiryKernel, std::slice::from_ref(&a), 80)?;
    println!("det(I - K_Ai) on A: {:.15}", k.restriction_det.re);
    for (x, y) in [(-1.0, -1.0), (-1.0, -0.5), (0.0, 0.0)] {
        println!(
            "K_A({x}, {y}) = {:.15}",
            conditioned_kernel(&AiryKernel, std::slice::from_ref(&a), 80, x, y)?
        );
    }

    let conditioned = fredholm_det(&k, std::slice::from_ref(&e), 20, 1e-12)?.re();
    let joint = fredholm_det(&AiryKernel, &[a.clone(), e], 40, 1e-12)?.re();
    let on_a = fredholm_det(&AiryKernel, &[a], 40, 1e-12)?.re();
    println!("gap of E given a gap on A: {conditioned:.15}");
    println!("joint gap / gap on A:      {:.15}", joint / on_a);
    Ok(())
}
