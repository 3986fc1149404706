//! The order on projections: comparison, meet and join, spectral criteria
//! for greatest lower bounds, spectrum identities, separativity witnesses and
//! states.

mod glb;
mod identities;
mod meet;
mod separation;
mod state;

pub use glb::{glb_criterion, glb_norm_check, nonzero_meet_check, GlbReport, NonzeroMeetReport, NormCheck};
pub use identities::{spectrum_identity_report, SpectrumIdentityReport, OPEN_UNIT_MARGIN};
pub use meet::{
    complement, gram_of_product, join, join_span, leq, meet_nullspace, meet_spectral, order_defect,
};
pub use separation::{check_witness, separativity_witness, SeparativityWitness, WitnessCheck};
pub use state::{state_centred_check, CentredReport, DensityState};

#[cfg(test)]
mod tests;
