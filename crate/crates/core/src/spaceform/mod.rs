//! Space forms `S^{p,q}`: stereographic charts, twisted pullbacks,
//! transfer of flat operators, and the restriction phases of
//! holomorphic-model operators.

mod lemma61;
mod stereo;

pub use lemma61::{
    holomorphic_restriction, lemma61_restriction_check, proportionality, require_phase, BasicOp,
    PhaseCheck,
};
pub use stereo::{pullback_tensor, transfer_operator, StereoPair, Tensor2, TransferredOperator};
