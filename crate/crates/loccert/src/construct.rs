//! Generators for the four families of locally indistinguishable
//! orthogonal product-state sets.
//!
//! Every family is built from exact `{-1, 0, +1}` coefficient vectors:
//! a bipartite list on `C^m x C^n` (`4 <= m <= n`), its even-party block
//! embedding, a tripartite surface construction, and the odd-party block
//! embedding that combines the two. Each generator also knows its count
//! formula, and everything it emits passes the exact pairwise
//! orthogonality check.

use crate::error::{Error, Result};
use crate::states::{FamilyTag, LocalKet, ProductState, StateSet, SystemShape};

/// The basis relabelling applied to the middle party of the tripartite
/// family. A bijection on `{1..n2}`, identity except on at most two points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BobPermutation {
    n2: usize,
    // mapping[i] = 1-based image of 1-based index i+1
    mapping: Vec<usize>,
}

impl BobPermutation {
    fn identity(n2: usize) -> Self {
        BobPermutation {
            n2,
            mapping: (1..=n2).collect(),
        }
    }

    fn swap(n2: usize, a: usize, b: usize) -> Self {
        let mut p = BobPermutation::identity(n2);
        p.mapping.swap(a - 1, b - 1);
        p
    }

    /// Image of a 1-based basis index.
    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i - 1]
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// The points the permutation moves, as 1-based `(from, to)` pairs.
    pub fn moved_points(&self) -> Vec<(usize, usize)> {
        self.mapping
            .iter()
            .enumerate()
            .filter(|(i, &v)| v != i + 1)
            .map(|(i, &v)| (i + 1, v))
            .collect()
    }
}

/// Chooses the middle-party relabelling for the tripartite family from the
/// two right-most dimensions: identity when `n3 - n2` is odd, swap of
/// `n2-1` and `n2` when the difference is even and nonzero, swap of `2` and
/// `n2-1` when `n2 = n3`.
pub fn bob_base_permutation(n2: usize, n3: usize) -> Result<BobPermutation> {
    if n2 < 4 || n2 > n3 {
        return Err(Error::InvalidParameter(format!(
            "permutation cases need 4 <= n2 <= n3, got n2={n2}, n3={n3}"
        )));
    }
    if n2 == n3 {
        Ok(BobPermutation::swap(n2, 2, n2 - 1))
    } else if (n3 - n2) % 2 == 1 {
        Ok(BobPermutation::identity(n2))
    } else {
        Ok(BobPermutation::swap(n2, n2 - 1, n2))
    }
}

/// The stopper state: every factor is the all-ones vector of its party.
pub fn stopper(shape: &SystemShape) -> ProductState {
    let factors = shape.dims().iter().map(|&d| LocalKet::all_ones(d)).collect();
    ProductState::new("stopper", factors)
}

/// The bipartite family on `C^m x C^n`, `4 <= m <= n`: exactly `2n - 1`
/// pairwise orthogonal product states.
///
/// The list is the all-ones stopper `phi_1`, a square of horizontal and
/// vertical dominoes touching row/column 1, one `(|1>-|2>)|l>` state per
/// extra column `l > m`, and a tail of dominoes alternating between rows
/// `m` and `m-1` through the extra columns.
pub fn build_bipartite(m: usize, n: usize) -> Result<StateSet> {
    if m < 4 {
        return Err(Error::InvalidParameter(format!(
            "bipartite family needs m >= 4, got m={m}"
        )));
    }
    if m > n {
        return Err(Error::InvalidParameter(format!(
            "bipartite family needs m <= n, got m={m}, n={n}"
        )));
    }
    let shape = SystemShape::new(vec![m, n])?;
    let mut states = Vec::with_capacity(2 * n - 1);
    let label = |states: &Vec<ProductState>| format!("phi_{}", states.len() + 1);

    // phi_1: the stopper
    states.push(stopper(&shape).with_label(label(&states)));

    // phi_i = |i>(|1>-|i>), i = 2..m
    for i in 2..=m {
        states.push(ProductState::new(
            label(&states),
            vec![LocalKet::basis(m, i), LocalKet::diff(n, 1, i)],
        ));
    }

    // phi_{m+1} = (|1>-|m>)|2>: closes the square against row 1.
    states.push(ProductState::new(
        label(&states),
        vec![LocalKet::diff(m, 1, m), LocalKet::basis(n, 2)],
    ));

    // phi_{m+j-1} = (|1>-|j-1>)|j>, j = 3..m
    for j in 3..=m {
        states.push(ProductState::new(
            label(&states),
            vec![LocalKet::diff(m, 1, j - 1), LocalKet::basis(n, j)],
        ));
    }

    // phi_{m+l-1} = (|1>-|2>)|l>, l = m+1..n
    for l in (m + 1)..=n {
        states.push(ProductState::new(
            label(&states),
            vec![LocalKet::diff(m, 1, 2), LocalKet::basis(n, l)],
        ));
    }

    // tail through the extra columns, alternating rows m and m-1;
    // a final domino that would need column n+1 is dropped
    if n > m {
        states.push(ProductState::new(
            label(&states),
            vec![LocalKet::basis(m, m), LocalKet::diff(n, 3, m + 1)],
        ));
        for k in 1..=((n - m) / 2) {
            let s = m + 2 * k - 1;
            states.push(ProductState::new(
                label(&states),
                vec![LocalKet::basis(m, m - 1), LocalKet::diff(n, s, s + 1)],
            ));
            let t = m + 2 * k;
            if t + 1 <= n {
                states.push(ProductState::new(
                    label(&states),
                    vec![LocalKet::basis(m, m), LocalKet::diff(n, t, t + 1)],
                ));
            }
        }
    }

    debug_assert_eq!(states.len(), 2 * n - 1);
    StateSet::unchecked(shape, states, FamilyTag::Bipartite)
}

// Offset of the vertical-domino row from n2: consecutive entries must
// alternate, and the parity is pinned at the i = n1-1 end so that row
// avoids the tiles the embedded bipartite states occupy in column n3.
fn vertical_offset(j: usize) -> usize {
    if j % 2 == 1 {
        1
    } else {
        0
    }
}

/// The tripartite family on `C^n1 x C^n2 x C^n3`, `4 <= n1 <= n2 <= n3`:
/// exactly `2(n1 + n3) - 3` pairwise orthogonal product states.
///
/// Top-surface part: the bipartite family on the last two parties, minus
/// its stopper, behind `|n1>` on the first party. Right-surface part: a
/// horizontal run `|i>(|p(1)>-|p(2)>)|n3>` plus a vertical run of
/// first-party dominoes whose middle factor alternates between rows
/// `p(n2)` and `p(n2-1)`, where `p` is [`bob_base_permutation`]. The one
/// state the two parts share is emitted once, then the stopper closes the
/// set.
pub fn build_tripartite(n1: usize, n2: usize, n3: usize) -> Result<StateSet> {
    if n1 < 4 || n1 > n2 || n2 > n3 {
        return Err(Error::InvalidParameter(format!(
            "tripartite family needs 4 <= n1 <= n2 <= n3, got ({n1},{n2},{n3})"
        )));
    }
    let shape = SystemShape::new(vec![n1, n2, n3])?;
    let pi = bob_base_permutation(n2, n3)?;

    let mut states = Vec::with_capacity(2 * (n1 + n3) - 3);
    states.push(stopper(&shape));

    // top surface: |n1> x (bipartite family on (n2, n3) minus stopper)
    let plan = build_bipartite(n2, n3)?;
    for (idx, psi) in plan.states().iter().skip(1).enumerate() {
        let mut factors = vec![LocalKet::basis(n1, n1)];
        factors.extend(psi.factors().iter().cloned());
        states.push(ProductState::new(format!("T_{}", idx + 1), factors));
    }
    debug_assert_eq!(states.len(), 1 + (2 * n3 - 2));

    // horizontal part of the right surface; exactly one of these
    // duplicates a top-surface state and is skipped by amplitude equality
    let h_factor = {
        let a = pi.apply(1);
        let b = pi.apply(2);
        let mut coeffs = vec![0i64; n2];
        coeffs[a - 1] = 1;
        coeffs[b - 1] = -1;
        LocalKet::new(coeffs).expect("difference ket is nonzero")
    };
    let mut duplicates = 0;
    for i in 1..=n1 {
        let cand = ProductState::new(
            format!("H_{i}"),
            vec![
                LocalKet::basis(n1, i),
                h_factor.clone(),
                LocalKet::basis(n3, n3),
            ],
        );
        if states.iter().any(|s| s.same_amplitudes(&cand)) {
            duplicates += 1;
            continue;
        }
        states.push(cand);
    }
    if duplicates != 1 {
        return Err(Error::Logic(format!(
            "expected exactly one overlap between surface parts, found {duplicates}"
        )));
    }

    // vertical part of the right surface
    for i in 1..(n1) {
        let row = pi.apply(n2 - vertical_offset(n1 - i));
        states.push(ProductState::new(
            format!("V_{i}"),
            vec![
                LocalKet::diff(n1, i, i + 1),
                LocalKet::basis(n2, row),
                LocalKet::basis(n3, n3),
            ],
        ));
    }

    debug_assert_eq!(states.len(), 2 * (n1 + n3) - 3);
    StateSet::unchecked(shape, states, FamilyTag::Tripartite)
}

fn check_sorted_min4(dims: &[usize]) -> Result<()> {
    if let Some(&d) = dims.iter().find(|&&d| d < 4) {
        return Err(Error::InvalidParameter(format!(
            "every dimension must be >= 4 for this family, got {d}"
        )));
    }
    if dims.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(format!(
            "dimensions must be non-decreasing, got {dims:?}"
        )));
    }
    Ok(())
}

/// Embeds the non-stopper states of `block` into `shape` at the given
/// parties, padding every other party with `|1>`.
fn embed_block(
    shape: &SystemShape,
    block: &StateSet,
    parties: &[usize],
    label_prefix: &str,
) -> Vec<ProductState> {
    block
        .states()
        .iter()
        .skip(1) // the block's own stopper is not embedded
        .map(|psi| {
            let mut factors: Vec<LocalKet> = shape
                .dims()
                .iter()
                .map(|&d| LocalKet::basis(d, 1))
                .collect();
            for (slot, &party) in parties.iter().enumerate() {
                factors[party] = psi.factor(slot).clone();
            }
            ProductState::new(format!("{label_prefix}{}", psi.label()), factors)
        })
        .collect()
}

/// The even-party family on `2k >= 4` parties with `4 <= n1 <= ... <= n2k`:
/// one bipartite block per party pair `(2s-1, 2s)`, every other party padded
/// with `|1>`, plus a global stopper. Yields
/// `2(n2 + n4 + ... + n2k - k) + 1` states.
pub fn build_even(dims: &[usize]) -> Result<StateSet> {
    if dims.len() % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "even family needs an even party count, got {}",
            dims.len()
        )));
    }
    if dims.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "even family needs at least 4 parties (k >= 2), got {}",
            dims.len()
        )));
    }
    check_sorted_min4(dims)?;
    let shape = SystemShape::new(dims.to_vec())?;
    let k = dims.len() / 2;

    let mut states = vec![stopper(&shape)];
    for s in 1..=k {
        let block = build_bipartite(dims[2 * s - 2], dims[2 * s - 1])?;
        states.extend(embed_block(
            &shape,
            &block,
            &[2 * s - 2, 2 * s - 1],
            &format!("b{s}_"),
        ));
    }

    let expected = expected_count(FamilyTag::Even, dims).expect("dims already validated");
    debug_assert_eq!(states.len(), expected);
    StateSet::unchecked(shape, states, FamilyTag::Even)
}

/// The odd-party family on `2k+1 >= 3` parties with `4 <= n1 <= ... <=
/// n2k+1`: the tripartite family on parties 1-3 plus one bipartite block
/// per party pair `(2s, 2s+1)` for `s = 2..k`, padded with `|1>`, plus a
/// global stopper. On 3 parties this is exactly [`build_tripartite`].
///
/// The block sums give `2(n1 + n3 + n5 + ... + n2k+1) - 2k - 1` states; see
/// [`expected_count`].
pub fn build_odd(dims: &[usize]) -> Result<StateSet> {
    if dims.len() % 2 != 1 {
        return Err(Error::InvalidParameter(format!(
            "odd family needs an odd party count, got {}",
            dims.len()
        )));
    }
    if dims.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "odd family needs at least 3 parties, got {}",
            dims.len()
        )));
    }
    check_sorted_min4(dims)?;
    if dims.len() == 3 {
        return Ok(build_tripartite(dims[0], dims[1], dims[2])?.retagged(FamilyTag::Odd));
    }
    let shape = SystemShape::new(dims.to_vec())?;
    let k = (dims.len() - 1) / 2;

    let mut states = vec![stopper(&shape)];
    let tri = build_tripartite(dims[0], dims[1], dims[2])?;
    states.extend(embed_block(&shape, &tri, &[0, 1, 2], "b1_"));
    for s in 2..=k {
        let block = build_bipartite(dims[2 * s - 1], dims[2 * s])?;
        states.extend(embed_block(
            &shape,
            &block,
            &[2 * s - 1, 2 * s],
            &format!("b{s}_"),
        ));
    }

    let expected = expected_count(FamilyTag::Odd, dims).expect("dims already validated");
    debug_assert_eq!(states.len(), expected);
    StateSet::unchecked(shape, states, FamilyTag::Odd)
}

/// The number of states each family produces for the given dimensions.
///
/// Bipartite `2n - 1`; tripartite `2(n1 + n3) - 3`; even parties
/// `2(n2 + n4 + ... + n2k - k) + 1`. For the odd family the blocks sum to
/// `2(n1 + n3 + ... + n2k+1) - 2k - 1`: the tripartite block contributes
/// `2(n1 + n3) - 4` non-stopper states and each bipartite block
/// `2*n_{2s+1} - 2`, so the odd total runs 2 below the even-style formula
/// with k block terms. Returns `None` for [`FamilyTag::External`].
pub fn expected_count(family: FamilyTag, dims: &[usize]) -> Option<usize> {
    match family {
        FamilyTag::Bipartite => {
            if dims.len() != 2 {
                return None;
            }
            Some(2 * dims[1] - 1)
        }
        FamilyTag::Tripartite => {
            if dims.len() != 3 {
                return None;
            }
            Some(2 * (dims[0] + dims[2]) - 3)
        }
        FamilyTag::Even => {
            if dims.len() < 4 || dims.len() % 2 != 0 {
                return None;
            }
            let k = dims.len() / 2;
            let sum: usize = (1..=k).map(|s| dims[2 * s - 1]).sum();
            Some(2 * (sum - k) + 1)
        }
        FamilyTag::Odd => {
            if dims.len() < 3 || dims.len() % 2 != 1 {
                return None;
            }
            let k = (dims.len() - 1) / 2;
            if k == 1 {
                return Some(2 * (dims[0] + dims[2]) - 3);
            }
            let pair_sum: usize = (2..=k).map(|s| dims[2 * s]).sum();
            Some((2 * (dims[0] + dims[2]) - 4) + 2 * pair_sum - 2 * (k - 1) + 1)
        }
        FamilyTag::External => None,
    }
}

/// Dispatches to the family builders from a tag plus dimension list.
pub fn build_family(family: FamilyTag, dims: &[usize]) -> Result<StateSet> {
    match family {
        FamilyTag::Bipartite => {
            if dims.len() != 2 {
                return Err(Error::InvalidParameter(format!(
                    "bipartite family needs exactly 2 dimensions, got {}",
                    dims.len()
                )));
            }
            build_bipartite(dims[0], dims[1])
        }
        FamilyTag::Tripartite => {
            if dims.len() != 3 {
                return Err(Error::InvalidParameter(format!(
                    "tripartite family needs exactly 3 dimensions, got {}",
                    dims.len()
                )));
            }
            build_tripartite(dims[0], dims[1], dims[2])
        }
        FamilyTag::Even => build_even(dims),
        FamilyTag::Odd => build_odd(dims),
        FamilyTag::External => Err(Error::InvalidParameter(
            "'external' is not a generator; load such sets from a file".into(),
        )),
    }
}

/// Family parameters: a tag, its dimensions, and the derived state count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: FamilyTag,
    pub dims: Vec<usize>,
    pub expected_count: usize,
}

impl FamilyParams {
    pub fn new(family: FamilyTag, dims: Vec<usize>) -> Result<Self> {
        let expected_count = expected_count(family, &dims).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no count formula for family '{family}' on {} dimension(s)",
                dims.len()
            ))
        })?;
        Ok(FamilyParams {
            family,
            dims,
            expected_count,
        })
    }
}

/// The simplest lower bound on the size of an unextendible product basis:
/// `1 + sum_i (d_i - 1)`.
pub fn upb_lower_bound(shape: &SystemShape) -> usize {
    1 + shape.dims().iter().map(|d| d - 1).sum::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::check_pairwise_orthogonal;

    #[test]
    fn stopper_examples() {
        let shape = SystemShape::new(vec![4, 5, 6]).unwrap();
        let s = stopper(&shape);
        assert!(s.factors().iter().all(|f| f.is_full_positive()));
        assert_eq!(s.factor(2).coeffs(), &[1, 1, 1, 1, 1, 1]);

        let shape = SystemShape::new(vec![2, 2]).unwrap();
        let s = stopper(&shape);
        assert_eq!(s.factor(0).coeffs(), &[1, 1]);
        assert_eq!(s.factor(1).coeffs(), &[1, 1]);
    }

    #[test]
    fn bipartite_counts_and_orthogonality() {
        for (m, n) in [(4, 7), (4, 4), (6, 12), (5, 9)] {
            let set = build_bipartite(m, n).unwrap();
            assert_eq!(set.len(), 2 * n - 1, "count for ({m},{n})");
            assert!(check_pairwise_orthogonal(&set).is_empty(), "({m},{n})");
        }
    }

    #[test]
    fn bipartite_rejects_bad_params() {
        assert!(build_bipartite(3, 5).is_err());
        assert!(build_bipartite(5, 4).is_err());
    }

    #[test]
    fn bipartite_4_4_has_empty_tail() {
        let set = build_bipartite(4, 4).unwrap();
        assert_eq!(set.len(), 7);
        // no factor touches a column beyond m in the square case
        for s in set.states() {
            assert!(s.factor(1).support().iter().all(|&c| c <= 4));
        }
    }

    #[test]
    fn bipartite_6_12_tail_matches_expected_dominoes() {
        let set = build_bipartite(6, 12).unwrap();
        assert_eq!(set.len(), 23);
        let tail: Vec<(Vec<usize>, Vec<usize>)> = set
            .states()
            .iter()
            .filter(|s| {
                let rows = s.factor(0).support();
                rows == vec![5] || rows == vec![6]
            })
            .map(|s| (s.factor(0).support(), s.factor(1).support()))
            .collect();
        let expected = vec![
            (vec![6], vec![3, 7]),
            (vec![5], vec![7, 8]),
            (vec![6], vec![8, 9]),
            (vec![5], vec![9, 10]),
            (vec![6], vec![10, 11]),
            (vec![5], vec![11, 12]),
        ];
        assert_eq!(tail, expected);
    }

    #[test]
    fn permutation_cases() {
        let p = bob_base_permutation(5, 6).unwrap();
        assert!(p.is_identity());

        let p = bob_base_permutation(5, 7).unwrap();
        assert_eq!(p.moved_points(), vec![(4, 5), (5, 4)]);

        let p = bob_base_permutation(6, 6).unwrap();
        assert_eq!(p.moved_points(), vec![(2, 5), (5, 2)]);

        assert!(bob_base_permutation(3, 5).is_err());
        assert!(bob_base_permutation(6, 5).is_err());
    }

    #[test]
    fn tripartite_456_structure() {
        let set = build_tripartite(4, 5, 6).unwrap();
        assert_eq!(set.len(), 17);
        assert!(check_pairwise_orthogonal(&set).is_empty());

        // horizontal part present for i = 1..3 plus the shared state kept
        // under its top-surface label
        let h: Vec<&str> = set
            .states()
            .iter()
            .map(|s| s.label())
            .filter(|l| l.starts_with("H_"))
            .collect();
        assert_eq!(h, vec!["H_1", "H_2", "H_3"]);
        let shared = ProductState::new(
            "shared",
            vec![
                LocalKet::basis(4, 4),
                LocalKet::diff(5, 1, 2),
                LocalKet::basis(6, 6),
            ],
        );
        assert!(set.states().iter().any(|s| s.same_amplitudes(&shared)));
    }

    #[test]
    fn tripartite_counts_and_orthogonality_across_cases() {
        // covers odd difference, even difference and equal right dimensions
        for (a, b, c) in [(4, 5, 6), (4, 5, 7), (4, 6, 6), (5, 5, 5), (4, 4, 5)] {
            let set = build_tripartite(a, b, c).unwrap();
            assert_eq!(set.len(), 2 * (a + c) - 3, "count for ({a},{b},{c})");
            assert!(
                check_pairwise_orthogonal(&set).is_empty(),
                "orthogonality for ({a},{b},{c})"
            );
        }
    }

    #[test]
    fn tripartite_rejects_bad_params() {
        assert!(build_tripartite(3, 5, 6).is_err());
        assert!(build_tripartite(5, 4, 6).is_err());
        assert!(build_tripartite(4, 6, 5).is_err());
    }

    #[test]
    fn even_family_counts() {
        let set = build_even(&[4, 5, 6, 7]).unwrap();
        assert_eq!(set.len(), 21);
        assert!(check_pairwise_orthogonal(&set).is_empty());

        let set = build_even(&[4, 4, 4, 4]).unwrap();
        assert_eq!(set.len(), 13);
        assert!(check_pairwise_orthogonal(&set).is_empty());
    }

    #[test]
    fn even_family_rejects_bad_params() {
        assert!(build_even(&[4, 5]).is_err());
        assert!(build_even(&[4, 5, 6]).is_err());
        assert!(build_even(&[3, 4, 5, 6]).is_err());
        assert!(build_even(&[4, 5, 5, 4]).is_err());
    }

    #[test]
    fn odd_family_reduces_to_tripartite() {
        let odd = build_odd(&[4, 5, 6]).unwrap();
        let tri = build_tripartite(4, 5, 6).unwrap();
        assert_eq!(odd.len(), tri.len());
        for (a, b) in odd.states().iter().zip(tri.states()) {
            assert_eq!(a.label(), b.label());
            assert!(a.same_amplitudes(b));
        }
        assert_eq!(odd.family(), FamilyTag::Odd);
    }

    #[test]
    fn odd_family_counts_follow_block_sums() {
        let set = build_odd(&[4, 5, 6, 7, 8]).unwrap();
        // tripartite block 2(4+6)-4 = 16, pair block 2*8-2 = 14, stopper 1
        assert_eq!(set.len(), 31);
        assert_eq!(
            expected_count(FamilyTag::Odd, &[4, 5, 6, 7, 8]),
            Some(31)
        );
        assert!(check_pairwise_orthogonal(&set).is_empty());

        let set = build_odd(&[4, 4, 4, 4, 4]).unwrap();
        assert_eq!(set.len(), 19);
        assert!(check_pairwise_orthogonal(&set).is_empty());
    }

    #[test]
    fn odd_family_rejects_bad_params() {
        assert!(build_odd(&[4, 5, 6, 7]).is_err());
        assert!(build_odd(&[3, 5, 6]).is_err());
        assert!(build_odd(&[4, 6, 5, 7, 8]).is_err());
    }

    #[test]
    fn upb_bound_examples() {
        let shape = SystemShape::new(vec![4, 5, 6]).unwrap();
        assert_eq!(upb_lower_bound(&shape), 13);
        let shape = SystemShape::new(vec![2, 2]).unwrap();
        assert_eq!(upb_lower_bound(&shape), 3);
    }

    #[test]
    fn upb_bound_coincides_with_even_family_on_equal_dims() {
        for d in 4..=8 {
            for k in [2usize, 3] {
                let dims = vec![d; 2 * k];
                let shape = SystemShape::new(dims.clone()).unwrap();
                assert_eq!(
                    upb_lower_bound(&shape),
                    expected_count(FamilyTag::Even, &dims).unwrap()
                );
            }
        }
    }

    #[test]
    fn count_formulas_hold_across_desk_ranges() {
        for m in 4..=12 {
            for n in m..=12 {
                let set = build_bipartite(m, n).unwrap();
                assert_eq!(set.len(), expected_count(FamilyTag::Bipartite, &[m, n]).unwrap());
            }
        }
        for n1 in 4..=6 {
            for n2 in n1..=6 {
                for n3 in n2..=6 {
                    let set = build_tripartite(n1, n2, n3).unwrap();
                    assert_eq!(
                        set.len(),
                        expected_count(FamilyTag::Tripartite, &[n1, n2, n3]).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn every_nonstopper_state_has_a_small_factor() {
        // each non-stopper state carries a basis-vector or two-term
        // difference factor; the stopper is the unique all-positive state
        for set in [
            build_bipartite(4, 7).unwrap(),
            build_tripartite(4, 5, 6).unwrap(),
            build_even(&[4, 4, 5, 5]).unwrap(),
        ] {
            let mut full_positive = 0;
            for s in set.states() {
                if s.factors().iter().all(|f| f.is_full_positive()) {
                    full_positive += 1;
                } else {
                    assert!(s
                        .factors()
                        .iter()
                        .any(|f| f.support().len() <= 2));
                }
            }
            assert_eq!(full_positive, 1);
        }
    }
}
