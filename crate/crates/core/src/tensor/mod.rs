//! Tensor storage and the contraction and symmetrization kernels.

mod anti;
mod dense;
mod sym;
mod wedge;

pub use anti::AntiTensor;
pub use dense::DenseTensor;
pub use sym::{sym_product, SymTensor};
pub use wedge::{wedge_stage, Bracket, StagedWedge};
