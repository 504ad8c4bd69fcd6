//! Transfer operator, Fredholm determinant, dynamical zeta function, and the
//! spectral certificates built on them.

pub mod certificate;
pub mod fredholm;
pub mod markov;
pub mod poly;
pub mod series;
pub mod signed;
pub mod spectrum;

pub use certificate::{
    markov_minor_certificate, zeta_coefficient_bound, MinorCertificate, Verdict, ZetaBound,
    DEFAULT_DEGREE,
};
pub use fredholm::{det_series, solve_series, FredholmIndex, FredholmKind, FredholmSeries};
pub use markov::{
    ergodic_components, fredholm_markov, invariant_density, pf_apply, pf_counts,
    zeta_identity_check, zeta_series, DensityFn,
};
pub use series::PowerSeries;
pub use signed::{enumerate_generating_function, renewal_check, signed_fredholm, SignedFredholm};
pub use spectrum::{spectrum, SpectralZero, SpectrumReport};
