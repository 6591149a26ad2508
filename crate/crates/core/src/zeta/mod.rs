//! ζ on the critical line: Euler–Maclaurin and Riemann–Siegel evaluation,
//! zeros and their census, ζ′ at the zeros, and the mollified moments.

mod count;
mod euler_maclaurin;
mod hardy;
mod moments;
mod theta;
mod zeros;

pub use count::{arg_zeta_on_line, count_n, riemann_von_mangoldt, s_function, smooth_count, CountReport};
pub use euler_maclaurin::zeta_em;
pub use hardy::{hardy_z, hardy_z_em, riemann_siegel_z, zeta_critical, RIEMANN_SIEGEL_THRESHOLD};
pub use moments::{
    compute_moments, empirical_kappa_bound, zeta_prime_at_zero, zeta_prime_direct, MomentResult, ZetaPrime,
    MULTIPLE_ZERO_THRESHOLD,
};
pub use theta::{ln_gamma, rs_theta, rs_theta_asymptotic, rs_theta_derivative};
pub use zeros::{
    check_overlap, find_zeros, gram_point, ingest_zeros, read_zeros, write_zeros, ZeroList, ZeroSource,
    FIRST_ZERO_FLOOR, OVERLAP_HEIGHT,
};
