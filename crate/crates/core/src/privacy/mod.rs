//! Randomness and mechanism primitives shared by every protocol.

mod budget;
mod debias;
mod hash;
mod noise;
mod prime;

pub use budget::{BudgetLedger, BudgetSplit, Step};
pub use debias::{amplified_epsilon, deamplified_epsilon, debias_params, DebiasParams, GroupRrModel};
pub use hash::{HashCoefficients, HashScheme, Member};
pub use noise::{laplace_sample, rr_flip, rr_one_probability, z4_density, z4_survival, z_gamma_sample, ZGamma4};
pub use prime::{is_prime, smallest_prime_above};
