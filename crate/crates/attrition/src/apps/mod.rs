//! Bundled application models: price signaling, labor-market signaling and
//! bargaining, each expressed as a [`SeparableModel`](crate::model::SeparableModel)
//! with registered closed forms where available.
//!
//! Attrition construction is wired end-to-end only for the price model; the
//! labor and bargaining adapters ship for flow evaluation and the
//! assumption-check suite.

mod bargaining;
mod labor;
mod price;

pub use bargaining::{
    bargaining_sc_paths, decode_bargaining_action, make_bargaining_model, BargainingParams,
    BuyerStrategy,
};
pub use labor::{decode_labor_action, labor_sc_paths, make_labor_model, LaborParams};
pub use price::{
    dominates_lowest, make_price_model, price_sc_paths, z_factor, PriceSignalingParams,
};
