//! Construction and certification of locally indistinguishable orthogonal
//! product states.
//!
//! The crate builds four families of multipartite product states with
//! exact integer amplitudes — bipartite, even-party, tripartite and
//! odd-party — and certifies, per party, that every orthogonality-
//! preserving local measurement operator is a scalar multiple of the
//! identity. The certification is an exact rational kernel computation
//! over the real parameterization of Hermitian operators, cross-checked by
//! a floating-point singular-value rank oracle. When a party admits a
//! nontrivial operator, a positive-definite witness is produced instead.
//!
//! ```
//! use loccert::{build_bipartite, certify, Overall};
//!
//! let set = build_bipartite(4, 7).unwrap();
//! assert_eq!(set.len(), 13);
//! let verdict = certify(&set).unwrap();
//! assert_eq!(verdict.overall, Overall::CertifiedIndistinguishable);
//! ```

pub mod certify;
pub mod construct;
pub mod error;
pub mod exactlin;
pub mod format;
pub mod render;
pub mod report;
pub mod states;

pub use certify::{
    assemble_constraints, certify, extract_witness, reduced_block_check, verdict_for_party,
    Overall, PartyVerdict, SetVerdict, Verdict,
};
pub use construct::{
    bob_base_permutation, build_bipartite, build_even, build_family, build_odd, build_tripartite,
    expected_count, stopper, upb_lower_bound, BobPermutation, FamilyParams,
};
pub use error::{Error, Result};
pub use exactlin::{
    nullspace, rank_exact, rank_float, HermitianBasis, HermitianOp, RationalMatrix,
};
pub use format::{parse_set, write_set};
pub use render::render_grid;
pub use report::{report_for, sweep, Report, ReportOptions};
pub use states::{
    check_pairwise_orthogonal, inner_product, tensor_amplitudes, FamilyTag, LocalKet,
    ProductState, StateSet, SystemShape,
};
