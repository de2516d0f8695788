//! Exact computation of prime Hecke eigenvalues of Ikeda lifts.
//!
//! `λ_F(p)` is computed from the Fourier coefficient `a_f(p)` of the lifted
//! elliptic eigenform by three independent formulas whose agreement is
//! enforced on every call, and checked against exact lower and upper bounds
//! in `Q(√p)`.

pub mod cli;
pub mod exactnum;
pub mod ikeda;
pub mod modforms;
pub mod polyalg;
pub mod qseries;
pub mod selftest;

pub use exactnum::{pow_p_half, ExactError, Integer, QuadExt, Rational};
pub use ikeda::{
    bounds, build_g, build_tilde_gp, factorization_check, route_factored, route_reciprocal,
    route_sum, verify_prime, verify_range, EigenvalueReport, IkedaError, IkedaParams,
};
pub use modforms::{eigenform, load_eigenform, FormsError, FourierSeries};
pub use polyalg::{dickson, expand_product, IntPoly, Poly, QuadPoly};
pub use qseries::{q_binomial, q_binomial_eval, QPoly};
