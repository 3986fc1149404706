//! Constructive sequence procedures: decreasing and increasing equalizers,
//! range products of projection chains, the `EE` spectral-family estimate
//! and the self-adjoint gap element below a non-commuting pair.
//!
//! An equalizer turns a finite family `P_0, ..., P_k` into a decreasing (or
//! increasing) sequence with the same meet (or join). Two routes are offered:
//! the inner-sequence recursion, and the schedule-driven spectral sandwich
//! `Q_n = E^perp_{T_n*T_n}(t_{n,1})` followed by range products.

mod checks;
mod equalizer;
mod gap;
mod schedule;

pub use checks::{ee_inequality_check, techcon_check, EeReport, TechconReport, EE_SLACK};
pub use equalizer::{
    chain_bounds, decreasing_equalizer_recursive, decreasing_equalizer_spectral,
    equalizer_from_inner, increasing_equalizer, partial_meets, range_contained,
    range_product_projection, schedule_cut, ChainBounds, SpectralEqualizer, MAX_INNER_SCAN,
};
pub use gap::{gap_element, gap_function, GapCertificate, GapChecks};
pub use schedule::{ScheduleConfig, DEFAULT_DEPTH, MAX_DEPTH};
