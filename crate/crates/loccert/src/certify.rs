//! The certification engine.
//!
//! For one party of an orthogonal product-state set, consider a measurement
//! operator `M†M = H` acting on that party alone. The measurement preserves
//! all pairwise orthogonalities iff `<psi_j| H_p |psi_i> = 0` for every
//! pair, a homogeneous linear system over the real `d^2`-dimensional space
//! of Hermitian operators. This module assembles that system exactly,
//! computes its kernel over the rationals, and decides:
//!
//! * kernel dimension 1 — only scalar multiples of the identity survive,
//!   the party's orthogonality-preserving measurements are all trivial;
//! * kernel dimension >= 2 — a nontrivial measurement exists, and a
//!   positive-definite non-identity witness is extracted.
//!
//! When every party is trivial the set is certified LOCC-indistinguishable
//! under the first-measurement criterion: no party can begin a perfect
//! discrimination protocol with an informative measurement. A nontrivial
//! witness only means this criterion does not certify the set; it does not
//! by itself yield a discrimination protocol.

use crate::error::{Error, Result};
use crate::exactlin::{
    is_identity_multiple, nullspace, HermitianBasis, HermitianOp, RationalMatrix,
};
use crate::states::{check_pairwise_orthogonal, FamilyTag, StateSet};
use crate::construct::{build_bipartite, build_tripartite};
use num::{BigInt, BigRational, One, Zero};
use rayon::prelude::*;

/// Outcome for one party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    /// Every orthogonality-preserving operator on this party is a scalar
    /// multiple of the identity.
    TrivialOnly,
    /// The solution space contains an operator independent of the identity.
    NontrivialExists,
}

/// Per-party certification result.
#[derive(Debug, Clone)]
pub struct PartyVerdict {
    pub party: usize,
    /// Dimension of the space of orthogonality-preserving Hermitian
    /// operators; always at least 1 (the identity).
    pub solution_dim: usize,
    pub verdict: Verdict,
    /// Present iff `verdict` is `NontrivialExists`: a positive-definite
    /// Hermitian operator, not a multiple of the identity, satisfying every
    /// constraint exactly.
    pub witness: Option<HermitianOp>,
}

/// Aggregate over all parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Overall {
    /// Every party is `TrivialOnly`: certified LOCC-indistinguishable
    /// (first-measurement criterion).
    CertifiedIndistinguishable,
    /// Some party admits a nontrivial orthogonality-preserving measurement;
    /// not certified by this criterion.
    NotCertified,
}

impl std::fmt::Display for Overall {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Overall::CertifiedIndistinguishable => {
                f.write_str("certified LOCC-indistinguishable (first-measurement criterion)")
            }
            Overall::NotCertified => f.write_str("not certified by this criterion"),
        }
    }
}

/// Full certification result.
#[derive(Debug, Clone)]
pub struct SetVerdict {
    pub parties: Vec<PartyVerdict>,
    pub overall: Overall,
}

impl SetVerdict {
    pub fn solution_dims(&self) -> Vec<usize> {
        self.parties.iter().map(|p| p.solution_dim).collect()
    }
}

fn ensure_orthogonal(set: &StateSet) -> Result<()> {
    let violations = check_pairwise_orthogonal(set);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::NotOrthogonal(violations))
    }
}

fn ensure_party(set: &StateSet, party: usize) -> Result<()> {
    if party >= set.shape().parties() {
        return Err(Error::PartyOutOfRange {
            party,
            parties: set.shape().parties(),
        });
    }
    Ok(())
}

/// Assembles the orthogonality-preservation constraints on `party` as an
/// exact rational matrix over the canonical Hermitian basis columns.
///
/// For each unordered state pair the scalar factor from all other parties
/// multiplies the bilinear form of the pair's factors on `party`; each pair
/// contributes a real row (diagonal and symmetric columns) and an imaginary
/// row (antisymmetric columns). Rows that come out identically zero are
/// still emitted, so the row count is exactly `2 * C(N, 2)`.
pub fn assemble_constraints(set: &StateSet, party: usize) -> Result<RationalMatrix> {
    ensure_party(set, party)?;
    ensure_orthogonal(set)?;
    Ok(assemble_inner(set, party))
}

fn assemble_inner(set: &StateSet, party: usize) -> RationalMatrix {
    let d = set.shape().dim(party);
    let basis = HermitianBasis::new(d);
    let states = set.states();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(states.len() * states.len());

    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            // scalar from every party except the measured one
            let mut c = BigInt::one();
            for q in 0..set.shape().parties() {
                if q == party {
                    continue;
                }
                c *= states[i].factor(q).dot(states[j].factor(q));
                if c.is_zero() {
                    break;
                }
            }
            let a = states[i].factor(party).coeffs();
            let b = states[j].factor(party).coeffs();
            let c = BigRational::from_integer(c);

            let mut re_row = vec![BigRational::zero(); basis.len()];
            let mut im_row = vec![BigRational::zero(); basis.len()];
            if !c.is_zero() {
                for k in 0..d {
                    if b[k] != 0 && a[k] != 0 {
                        re_row[basis.diag_col(k)] =
                            &c * BigRational::from_integer(BigInt::from(b[k] as i128 * a[k] as i128));
                    }
                }
                for k in 0..d {
                    for l in (k + 1)..d {
                        let sym = b[k] as i128 * a[l] as i128 + b[l] as i128 * a[k] as i128;
                        let anti = b[k] as i128 * a[l] as i128 - b[l] as i128 * a[k] as i128;
                        if sym != 0 {
                            re_row[basis.sym_col(k, l)] =
                                &c * BigRational::from_integer(BigInt::from(sym));
                        }
                        if anti != 0 {
                            im_row[basis.antisym_col(k, l)] =
                                &c * BigRational::from_integer(BigInt::from(anti));
                        }
                    }
                }
            }
            rows.push(re_row);
            rows.push(im_row);
        }
    }
    if rows.is_empty() {
        // single-state set: no pairs, no constraints
        return RationalMatrix::zero(0, basis.len());
    }
    RationalMatrix::from_rows(rows)
}

/// Picks a kernel element independent of the identity and returns the
/// positive-definite witness `I + X/(r+1)`, where `r` is the largest
/// row sum of coefficient magnitudes of `X`. Every Gershgorin disc of
/// `X/(r+1)` then has radius strictly below 1, so the witness is positive
/// definite; it satisfies the constraints because the kernel is a linear
/// space containing both `I` and `X`.
pub fn extract_witness(kernel_basis: &[Vec<BigRational>], dim: usize) -> Result<HermitianOp> {
    if kernel_basis.len() < 2 {
        return Err(Error::Logic(
            "witness extraction needs a kernel of dimension at least 2".into(),
        ));
    }
    let basis = HermitianBasis::new(dim);
    let x_coords = kernel_basis
        .iter()
        .find(|v| !is_identity_multiple(&basis, v))
        .ok_or_else(|| {
            Error::Logic("kernel of dimension >= 2 with no non-identity element".into())
        })?;
    let x = basis.operator(x_coords);
    let scale = (x.gershgorin_radius() + BigRational::one()).recip();

    let id = basis.identity_coords();
    let coords: Vec<BigRational> = id
        .iter()
        .zip(x_coords)
        .map(|(i, xc)| i + xc * &scale)
        .collect();
    Ok(basis.operator(&coords))
}

fn verdict_inner(set: &StateSet, party: usize) -> Result<PartyVerdict> {
    let d = set.shape().dim(party);
    let basis = HermitianBasis::new(d);
    let mat = assemble_inner(set, party);
    let kernel = nullspace(&mat);

    // the identity preserves orthogonality of an orthogonal set, so the
    // kernel can never be empty
    if kernel.is_empty() {
        return Err(Error::Logic(format!(
            "party {party}: empty solution space for an orthogonal set"
        )));
    }

    if kernel.len() == 1 {
        if !is_identity_multiple(&basis, &kernel[0]) {
            return Err(Error::Logic(format!(
                "party {party}: 1-dimensional solution space not spanned by the identity"
            )));
        }
        Ok(PartyVerdict {
            party,
            solution_dim: 1,
            verdict: Verdict::TrivialOnly,
            witness: None,
        })
    } else {
        let witness = extract_witness(&kernel, d)?;
        Ok(PartyVerdict {
            party,
            solution_dim: kernel.len(),
            verdict: Verdict::NontrivialExists,
            witness: Some(witness),
        })
    }
}

/// Certifies one party: kernel dimension 1 means `TrivialOnly`, otherwise a
/// witness is extracted.
pub fn verdict_for_party(set: &StateSet, party: usize) -> Result<PartyVerdict> {
    ensure_party(set, party)?;
    ensure_orthogonal(set)?;
    verdict_inner(set, party)
}

/// Runs the per-party certification for every party (in parallel; output
/// order and content are deterministic) and aggregates.
pub fn certify(set: &StateSet) -> Result<SetVerdict> {
    ensure_orthogonal(set)?;
    let parties: Vec<PartyVerdict> = (0..set.shape().parties())
        .into_par_iter()
        .map(|p| verdict_inner(set, p))
        .collect::<Result<_>>()?;
    let overall = if parties.iter().all(|p| p.verdict == Verdict::TrivialOnly) {
        Overall::CertifiedIndistinguishable
    } else {
        Overall::NotCertified
    };
    Ok(SetVerdict { parties, overall })
}

/// Mechanizes the block-reduction step behind the even and odd families:
/// the constraints a block party inherits from the full padded set must cut
/// out a solution space of the same dimension as the block set alone (with
/// its own stopper). Returns true when the kernel dimensions agree on every
/// party of the block.
///
/// `block_parties` is the 0-based, contiguous party list of one embedded
/// block: `[2s, 2s+1]` for the even family; `[0, 1, 2]` or `[2s+1, 2s+2]`
/// for the odd family.
pub fn reduced_block_check(set: &StateSet, block_parties: &[usize]) -> Result<bool> {
    let dims = set.shape().dims();
    let block_set = match set.family() {
        FamilyTag::Even => {
            let valid = block_parties.len() == 2
                && block_parties[0] % 2 == 0
                && block_parties[1] == block_parties[0] + 1
                && block_parties[1] < dims.len();
            if !valid {
                return Err(Error::InvalidParameter(format!(
                    "{block_parties:?} is not a block of the even family on {} parties",
                    dims.len()
                )));
            }
            build_bipartite(dims[block_parties[0]], dims[block_parties[1]])?
        }
        FamilyTag::Odd | FamilyTag::Tripartite => {
            if block_parties == [0, 1, 2] {
                build_tripartite(dims[0], dims[1], dims[2])?
            } else {
                let valid = block_parties.len() == 2
                    && block_parties[0] >= 3
                    && block_parties[0] % 2 == 1
                    && block_parties[1] == block_parties[0] + 1
                    && block_parties[1] < dims.len();
                if !valid {
                    return Err(Error::InvalidParameter(format!(
                        "{block_parties:?} is not a block of the odd family on {} parties",
                        dims.len()
                    )));
                }
                build_bipartite(dims[block_parties[0]], dims[block_parties[1]])?
            }
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "block reduction applies to generated even/odd sets, not '{other}'"
            )))
        }
    };

    ensure_orthogonal(set)?;
    for (local, &global) in block_parties.iter().enumerate() {
        let full_dim = nullspace(&assemble_inner(set, global)).len();
        let block_dim = nullspace(&assemble_inner(&block_set, local)).len();
        if full_dim != block_dim {
            return Ok(false);
        }
    }
    Ok(true)
}
