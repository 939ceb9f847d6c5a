//! Exact integer representations of multipartite product states.
//!
//! All amplitudes are plain integers and nothing is ever normalized: the
//! quantities this crate computes from states (inner products, orthogonality
//! constraints, kernels) are homogeneous, so scaling adds nothing but
//! floating-point error. Basis indices are 1-based at every I/O boundary;
//! in-memory vectors are 0-indexed as usual.

use crate::error::{Error, Result};
use num::BigInt;
use num::Zero;

/// The dimensions of a multipartite system, one entry per party.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SystemShape {
    dims: Vec<usize>,
}

impl SystemShape {
    /// Builds a shape from per-party dimensions. Needs at least two parties,
    /// each of dimension at least two.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "a system needs at least 2 parties, got {}",
                dims.len()
            )));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidParameter(format!(
                "every party dimension must be >= 2, got {d}"
            )));
        }
        Ok(SystemShape { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, party: usize) -> usize {
        self.dims[party]
    }

    /// Product of all party dimensions (the full tensor length).
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }
}

impl std::fmt::Display for SystemShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One party's unnormalized state: an exact integer coefficient vector.
///
/// Never the zero vector. Generated families only ever use coefficients in
/// `{-1, 0, +1}`, but external input may carry any nonzero integer vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalKet {
    coeffs: Vec<i64>,
}

impl LocalKet {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidParameter(
                "a local ket must have a nonzero coefficient vector".into(),
            ));
        }
        Ok(LocalKet { coeffs })
    }

    /// The basis ket `|i>` (1-based index) in dimension `dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= dim, "basis index {i} out of 1..={dim}");
        let mut coeffs = vec![0; dim];
        coeffs[i - 1] = 1;
        LocalKet { coeffs }
    }

    /// The difference ket `|a> - |b>` (1-based indices).
    pub fn diff(dim: usize, a: usize, b: usize) -> Self {
        assert!(a != b, "difference ket needs distinct indices");
        assert!(a >= 1 && a <= dim && b >= 1 && b <= dim);
        let mut coeffs = vec![0; dim];
        coeffs[a - 1] = 1;
        coeffs[b - 1] = -1;
        LocalKet { coeffs }
    }

    /// The all-ones ket `|1> + |2> + ... + |dim>`.
    pub fn all_ones(dim: usize) -> Self {
        LocalKet {
            coeffs: vec![1; dim],
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Exact dot product with another ket of the same dimension.
    pub fn dot(&self, other: &LocalKet) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = BigInt::zero();
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            acc += BigInt::from(*a) * BigInt::from(*b);
        }
        acc
    }

    /// 1-based indices of the nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// True when every coefficient is nonzero and positive.
    pub fn is_full_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c > 0)
    }

    /// Scales every coefficient by a nonzero integer.
    pub fn scale(&self, factor: i64) -> Result<Self> {
        if factor == 0 {
            return Err(Error::InvalidParameter(
                "scaling a ket by zero would produce the zero vector".into(),
            ));
        }
        Ok(LocalKet {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        })
    }

    /// Relabels basis kets: coefficient of `|i>` moves to `|perm(i)>`.
    /// `perm` maps 0-based old index to 0-based new index.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim());
        let mut coeffs = vec![0; self.dim()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[perm[i]] = c;
        }
        LocalKet { coeffs }
    }
}

/// A labelled product state: one `LocalKet` per party.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductState {
    label: String,
    factors: Vec<LocalKet>,
}

impl ProductState {
    pub fn new(label: impl Into<String>, factors: Vec<LocalKet>) -> Self {
        ProductState {
            label: label.into(),
            factors,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn factors(&self) -> &[LocalKet] {
        &self.factors
    }

    pub fn factor(&self, party: usize) -> &LocalKet {
        &self.factors[party]
    }

    /// True when the factor list matches the shape party by party.
    pub fn matches(&self, shape: &SystemShape) -> bool {
        self.factors.len() == shape.parties()
            && self
                .factors
                .iter()
                .zip(shape.dims())
                .all(|(f, &d)| f.dim() == d)
    }

    pub fn with_label(&self, label: impl Into<String>) -> Self {
        ProductState {
            label: label.into(),
            factors: self.factors.clone(),
        }
    }

    /// True iff both states have exactly the same coefficient vectors
    /// (labels are ignored).
    pub fn same_amplitudes(&self, other: &ProductState) -> bool {
        self.factors == other.factors
    }
}

/// Exact inner product of two product states of the same shape: the product
/// over parties of the factor dot products. Zero iff the states are
/// orthogonal.
pub fn inner_product(a: &ProductState, b: &ProductState) -> Result<BigInt> {
    if a.factors.len() != b.factors.len()
        || a.factors
            .iter()
            .zip(&b.factors)
            .any(|(x, y)| x.dim() != y.dim())
    {
        return Err(Error::ShapeMismatch(format!(
            "states '{}' and '{}' do not live on the same system",
            a.label, b.label
        )));
    }
    let mut acc = BigInt::from(1);
    for (x, y) in a.factors.iter().zip(&b.factors) {
        let d = x.dot(y);
        if d.is_zero() {
            return Ok(BigInt::zero());
        }
        acc *= d;
    }
    Ok(acc)
}

/// Kronecker expansion of a product state into a full coefficient vector of
/// length `prod(dims)`, party 1 slowest-varying.
pub fn tensor_amplitudes(s: &ProductState) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(1)];
    for f in &s.factors {
        let mut next = Vec::with_capacity(out.len() * f.dim());
        for v in &out {
            for c in f.coeffs() {
                next.push(v * BigInt::from(*c));
            }
        }
        out = next;
    }
    out
}

/// Which construction produced a state set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    Bipartite,
    Even,
    Tripartite,
    Odd,
    External,
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FamilyTag::Bipartite => "bipartite",
            FamilyTag::Even => "even",
            FamilyTag::Tripartite => "tripartite",
            FamilyTag::Odd => "odd",
            FamilyTag::External => "external",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for FamilyTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bipartite" => Ok(FamilyTag::Bipartite),
            "even" => Ok(FamilyTag::Even),
            "tripartite" => Ok(FamilyTag::Tripartite),
            "odd" => Ok(FamilyTag::Odd),
            "external" => Ok(FamilyTag::External),
            other => Err(Error::InvalidParameter(format!(
                "unknown family tag '{other}' (expected bipartite|even|tripartite|odd|external)"
            ))),
        }
    }
}

/// A shape plus a list of product states with distinct labels.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSet {
    shape: SystemShape,
    states: Vec<ProductState>,
    family: FamilyTag,
}

impl StateSet {
    /// Assembles a set from untrusted states: validates structure, label
    /// distinctness and exact pairwise orthogonality.
    pub fn checked(shape: SystemShape, states: Vec<ProductState>, family: FamilyTag) -> Result<Self> {
        let set = StateSet::unchecked(shape, states, family)?;
        let violations = check_pairwise_orthogonal(&set);
        if !violations.is_empty() {
            return Err(Error::NotOrthogonal(violations));
        }
        Ok(set)
    }

    /// Assembles a set validating structure and labels only; used by the
    /// generators, whose output is orthogonal by construction (and re-checked
    /// by the test suite).
    pub(crate) fn unchecked(
        shape: SystemShape,
        states: Vec<ProductState>,
        family: FamilyTag,
    ) -> Result<Self> {
        for s in &states {
            if !s.matches(&shape) {
                return Err(Error::ShapeMismatch(format!(
                    "state '{}' does not match shape {}",
                    s.label(),
                    shape
                )));
            }
        }
        let mut labels: Vec<&str> = states.iter().map(|s| s.label()).collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!(
                "duplicate state label '{}'",
                w[0]
            )));
        }
        Ok(StateSet {
            shape,
            states,
            family,
        })
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn states(&self) -> &[ProductState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn family(&self) -> FamilyTag {
        self.family
    }

    /// Same states under a different provenance tag.
    pub fn retagged(mut self, family: FamilyTag) -> Self {
        self.family = family;
        self
    }
}

/// Checks all distinct pairs for exact orthogonality. Returns the violating
/// label pairs, each ordered and the whole list sorted, so output is
/// deterministic regardless of state order.
pub fn check_pairwise_orthogonal(set: &StateSet) -> Vec<(String, String)> {
    let mut bad = Vec::new();
    let states = set.states();
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            // same shape by StateSet invariant
            let ip = inner_product(&states[i], &states[j]).expect("states share the set's shape");
            if !ip.is_zero() {
                let (a, b) = (states[i].label(), states[j].label());
                let pair = if a <= b {
                    (a.to_string(), b.to_string())
                } else {
                    (b.to_string(), a.to_string())
                };
                bad.push(pair);
            }
        }
    }
    bad.sort();
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ket(dim: usize, coeffs: &[i64]) -> LocalKet {
        assert_eq!(coeffs.len(), dim);
        LocalKet::new(coeffs.to_vec()).unwrap()
    }

    #[test]
    fn shape_rejects_bad_dims() {
        assert!(SystemShape::new(vec![4]).is_err());
        assert!(SystemShape::new(vec![4, 1]).is_err());
        assert!(SystemShape::new(vec![2, 2]).is_ok());
    }

    #[test]
    fn zero_ket_rejected() {
        assert!(LocalKet::new(vec![0, 0]).is_err());
        assert!(LocalKet::new(vec![]).is_err());
    }

    #[test]
    fn inner_product_difference_vs_sum() {
        // <(|1>-|2>)|3> , (|1>+|2>)|3>> = (1-1)*1 = 0
        let a = ProductState::new("a", vec![ket(3, &[1, -1, 0]), ket(3, &[0, 0, 1])]);
        let b = ProductState::new("b", vec![ket(3, &[1, 1, 0]), ket(3, &[0, 0, 1])]);
        assert_eq!(inner_product(&a, &b).unwrap(), BigInt::zero());
    }

    #[test]
    fn inner_product_identity_case() {
        let a = ProductState::new(
            "a",
            vec![LocalKet::basis(2, 1), LocalKet::basis(2, 1)],
        );
        assert_eq!(inner_product(&a, &a).unwrap(), BigInt::from(1));
    }

    #[test]
    fn inner_product_stopper_vs_white_state() {
        // stopper of C^4 x C^7 against |2>(|1>-|2>): second factor gives 1-1=0
        let stopper = ProductState::new(
            "stopper",
            vec![LocalKet::all_ones(4), LocalKet::all_ones(7)],
        );
        let phi2 = ProductState::new("phi_2", vec![LocalKet::basis(4, 2), LocalKet::diff(7, 1, 2)]);
        assert_eq!(inner_product(&stopper, &phi2).unwrap(), BigInt::zero());
    }

    #[test]
    fn inner_product_shape_mismatch() {
        let a = ProductState::new("a", vec![ket(2, &[1, 0]), ket(2, &[1, 0])]);
        let b = ProductState::new("b", vec![ket(3, &[1, 0, 0]), ket(2, &[1, 0])]);
        assert!(matches!(
            inner_product(&a, &b),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn tensor_amplitudes_examples() {
        // (|1>-|2>) x |1> in C^2 x C^2 -> (1,0,-1,0)
        let s = ProductState::new("s", vec![ket(2, &[1, -1]), ket(2, &[1, 0])]);
        let amp: Vec<i64> = tensor_amplitudes(&s)
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(amp, vec![1, 0, -1, 0]);

        // |2> x |3> in C^2 x C^3 -> last slot
        let s = ProductState::new("s", vec![LocalKet::basis(2, 2), LocalKet::basis(3, 3)]);
        let amp: Vec<i64> = tensor_amplitudes(&s)
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(amp, vec![0, 0, 0, 0, 0, 1]);

        // stopper of C^2 x C^2 -> all ones
        let s = ProductState::new("s", vec![LocalKet::all_ones(2), LocalKet::all_ones(2)]);
        let amp: Vec<i64> = tensor_amplitudes(&s)
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(amp, vec![1, 1, 1, 1]);
    }

    #[test]
    fn orthogonality_check_reports_sorted_pairs() {
        let shape = SystemShape::new(vec![2, 2]).unwrap();
        let s1 = ProductState::new("x", vec![LocalKet::basis(2, 1), LocalKet::basis(2, 1)]);
        let s2 = ProductState::new("a", vec![LocalKet::basis(2, 1), ket(2, &[1, 1])]);
        let set = StateSet::unchecked(shape, vec![s1, s2], FamilyTag::External).unwrap();
        let bad = check_pairwise_orthogonal(&set);
        assert_eq!(bad, vec![("a".to_string(), "x".to_string())]);
    }

    #[test]
    fn checked_set_rejects_duplicate_labels() {
        let shape = SystemShape::new(vec![2, 2]).unwrap();
        let s1 = ProductState::new("x", vec![LocalKet::basis(2, 1), LocalKet::basis(2, 1)]);
        let s2 = ProductState::new("x", vec![LocalKet::basis(2, 2), LocalKet::basis(2, 2)]);
        assert!(StateSet::checked(shape, vec![s1, s2], FamilyTag::External).is_err());
    }

    #[test]
    fn checked_set_rejects_duplicate_state() {
        let shape = SystemShape::new(vec![2, 2]).unwrap();
        let s1 = ProductState::new("x", vec![LocalKet::basis(2, 1), LocalKet::basis(2, 1)]);
        let s2 = s1.with_label("y");
        assert!(matches!(
            StateSet::checked(shape, vec![s1, s2], FamilyTag::External),
            Err(Error::NotOrthogonal(_))
        ));
    }
}
