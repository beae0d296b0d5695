//! Exact-arithmetic library for Grothendieck-ring classes of matrix-jet
//! orbits, motivic/topological/twisted-topological zeta functions, and
//! monodromy zeta functions of determinantal varieties, together with an
//! exhaustive finite-field point-counting oracle that certifies every
//! symbolic formula at `L = q`.
//!
//! Module map:
//! - [`lring`]: Laurent-polynomial fractions in the Lefschetz symbol `L`,
//!   with point-count and Euler specializations.
//! - [`orbits`]: jet-orbit combinatorics and the closed-form classes
//!   `[C_lambda^l]` and `[alpha(C_lambda^l)]`.
//! - [`strata`]: contact-locus classes, exceptional-stratum classes
//!   `[E_J^o]`, and the fiber classes of the resolution.
//! - [`zeta`]: the four zeta functions plus the monodromy- and
//!   holomorphy-conjecture checkers.
//! - [`oracle`]: exhaustive enumeration of matrix jets over
//!   `F_q[t]/(t^{l+1})` by Smith invariants.

pub mod error;
pub mod lring;
pub mod oracle;
pub mod orbits;
pub mod ratfunc;
pub mod strata;
pub mod zeta;

pub use error::{Error, Result};
pub use lring::{lclass_euler, lclass_eval, lclass_order_at_one, Factored, LClass, LPoly};
pub use oracle::{
    count_contact, count_orbits, count_orbits_with_budget, oracle_budget, smith_invariants,
    verify_class, verify_shape, ContactTarget, JetMatrix, OrbitCensus, TruncRing, VerifyVerdict,
};
pub use orbits::{
    class_alpha_orbit, class_gl, class_grassmannian, class_orbit, class_parabolic_and_levi,
    enumerate_orbits, enumerate_orbits_where, image_signature, jump_data, Ent, JumpData,
    OrbitIndex, PointClass,
};
pub use ratfunc::{QPoly, RatFn, ZetaRat};
pub use strata::{
    contact_locus_class, determinantal_resolution, fiber_class, fiber_euler_closed, stratum_class,
    stratum_class_at_level, ContactProfile, ResolutionData, Source, StratumClass,
};
pub use zeta::{
    bernstein_sato_maximal, check_holomorphy, check_maximal_minors, check_monodromy_conjecture,
    eigenvalue_set, monodromy_zeta_at_point, monodromy_zeta_at_point_with, motivic_zeta_rational,
    motivic_zeta_series, topological_zeta, topological_zeta_via_strata, twisted_topological_zeta,
    twisted_topological_zeta_via_strata, BernsteinSato, CheckReport, CycloFactored, HolonomyEntry,
    HolReport, MotivicZeta, PoleReport, SignConvention, Verdict, Witness,
};
