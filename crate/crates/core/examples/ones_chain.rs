//! Extinction probability of a single error's segment, and the drifts that
//! drive the segment's growth.
//!
//! cargo run --example ones_chain

use errprop::analytics::{endpoint_drift, ones_chain_absorption, ones_chain_drift};

fn main() -> errprop::Result<()> {
    println!("interior drift {:.2}, endpoint drift {:.2}", ones_chain_drift(), endpoint_drift());
    for n in [4, 6, 8, 10, 20, 40, 60, 100] {
        println!("n={n:>3}  P(dies out) = {:.8}", ones_chain_absorption(n)?);
    }
    Ok(())
}
