//! Depolarizing strength of twirled two-qubit channels, exact and sampled.
//!
//! cargo run --release --example twirl_channels

use nalgebra::Matrix2;
use num_complex::Complex64;

use errprop::twirl::{builtin_channel, haar_twirl_oracle, lambda_from_kraus, ChannelTag, KrausSet};

fn main() -> errprop::Result<()> {
    for tag in ChannelTag::ALL {
        let k = builtin_channel(tag);
        let exact = lambda_from_kraus(&k).lambda;
        let mc = haar_twirl_oracle(&k, 10_000, 0)?;
        println!("{:<14} ops={:<2} lambda={exact:.6}  haar={:.6} ± {:.6}", tag.name(), k.len(), mc.lambda, mc.stderr);
    }

    // amplitude damping on the first qubit
    let c = |x: f64| Complex64::new(x, 0.0);
    let gamma: f64 = 0.3;
    let id = Matrix2::identity();
    let k0 = Matrix2::new(c(1.0), c(0.0), c(0.0), c((1.0 - gamma).sqrt())).kronecker(&id);
    let k1 = Matrix2::new(c(0.0), c(gamma.sqrt()), c(0.0), c(0.0)).kronecker(&id);
    let damping = KrausSet::new(vec![k0, k1])?;
    let mc = haar_twirl_oracle(&damping, 10_000, 0)?;
    println!(
        "{:<14} ops=2  lambda={:.6}  haar={:.6} ± {:.6}",
        "damping(0.3)",
        lambda_from_kraus(&damping).lambda,
        mc.lambda,
        mc.stderr
    );
    Ok(())
}
