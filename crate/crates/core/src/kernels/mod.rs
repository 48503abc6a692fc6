//! Correlation kernels of the Airy, Pearcey and tacnode processes.

pub mod airy;
pub mod conditioned;
pub mod direct;
pub mod pearcey;
pub mod tacnode;

pub use airy::{airy_kernel, AiryKernel};
pub use conditioned::{conditioned_kernel, ConditionedKernel};
pub use direct::{ext_airy_kernel, script_a, TacnodeDirect};
pub use pearcey::{
    pearcey_domains, pearcey_kernel, AxisMap, ContourPoint, PearceyKernel, PearceyParams,
};
pub use tacnode::{tacnode_h_block, GapSpec, HKernel, Interval, TacnodeParams};
