//! Superpotential algebras: relation spaces, the subspaces `W^(r)`, Koszul-dual
//! relations and span comparison.
//!
//! Spaces of tensors are canonicalized by reduced row-echelon form over the
//! monomial basis in lexicographic tuple order, so equal spans have equal bases.

use crate::forms::{all_tuples, index_tuple, FormError, MultilinearForm};
use crate::linalg::Matrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpalgError {
    #[error("relation degree N={degree} must satisfy 2 ≤ N ≤ m={arity}")]
    InvalidDegree { degree: usize, arity: usize },
    #[error("contraction depth r={r} must satisfy 0 ≤ r ≤ m−1={max}")]
    InvalidDepth { r: usize, max: usize },
    #[error("tensors have mismatched shapes")]
    ShapeMismatch,
    #[error(transparent)]
    Form(#[from] FormError),
}

/// A subspace of degree-N tensors given by a canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSpace {
    pub dim: usize,
    pub degree: usize,
    pub basis: Vec<MultilinearForm>,
}

/// The span `W^(r)` of the `r`-fold left contractions of a superpotential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WSpace {
    pub r: usize,
    pub basis: Vec<MultilinearForm>,
}

impl RelationSpace {
    /// Canonical basis of the span of `tensors`, each of the given dim and arity `degree`.
    pub fn span_of(dim: usize, degree: usize, tensors: &[MultilinearForm]) -> Result<Self, SpalgError> {
        Ok(RelationSpace { dim, degree, basis: canonical_basis(dim, degree, tensors)? })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

fn canonical_basis(dim: usize, arity: usize, tensors: &[MultilinearForm]) -> Result<Vec<MultilinearForm>, SpalgError> {
    if tensors.iter().any(|t| t.dim() != dim || t.arity() != arity) {
        return Err(SpalgError::ShapeMismatch);
    }
    if tensors.is_empty() {
        return Ok(Vec::new());
    }
    let m = Matrix::from_rows(tensors.iter().map(MultilinearForm::to_dense).collect());
    let r = m.rref().matrix;
    (0..r.rows())
        .map(|i| MultilinearForm::from_dense(dim, arity, r.row(i)).map_err(SpalgError::from))
        .collect()
}

/// The vector `μ ↦ s_{λ μ κ}` for fixed prefix `λ` and suffix `κ`.
fn slice(s: &MultilinearForm, prefix: &[usize], suffix: &[usize]) -> Result<MultilinearForm, FormError> {
    let n = s.dim();
    let len = s.arity() - prefix.len() - suffix.len();
    MultilinearForm::from_fn(n, len, |mid| {
        let idx: Vec<usize> = prefix.iter().chain(mid).chain(suffix).copied().collect();
        s.get(&idx)
    })
}

fn check_degree(s: &MultilinearForm, degree: usize) -> Result<(), SpalgError> {
    if degree < 2 || degree > s.arity() {
        return Err(SpalgError::InvalidDegree { degree, arity: s.arity() });
    }
    Ok(())
}

/// The relation space `∂^{m−N}(𝕜s)`: contractions of `m−N` slots at every split `r+s = m−N`.
pub fn derive_relations(s: &MultilinearForm, degree: usize) -> Result<RelationSpace, SpalgError> {
    check_degree(s, degree)?;
    let n = s.dim();
    let depth = s.arity() - degree;
    let mut tensors = Vec::new();
    for left in 0..=depth {
        for prefix in all_tuples(n, left) {
            for suffix in all_tuples(n, depth - left) {
                tensors.push(slice(s, &prefix, &suffix)?);
            }
        }
    }
    RelationSpace::span_of(n, degree, &tensors)
}

pub fn wspace(s: &MultilinearForm, r: usize) -> Result<WSpace, SpalgError> {
    if r >= s.arity() {
        return Err(SpalgError::InvalidDepth { r, max: s.arity() - 1 });
    }
    let n = s.dim();
    let tensors = all_tuples(n, r).map(|prefix| slice(s, &prefix, &[])).collect::<Result<Vec<_>, _>>()?;
    Ok(WSpace { r, basis: canonical_basis(n, s.arity() - r, &tensors)? })
}

/// Annihilator of the relation space under full contraction.
pub fn koszul_dual_relations(s: &MultilinearForm, degree: usize) -> Result<RelationSpace, SpalgError> {
    let rel = derive_relations(s, degree)?;
    annihilator(&rel)
}

pub fn annihilator(space: &RelationSpace) -> Result<RelationSpace, SpalgError> {
    let (n, d) = (space.dim, space.degree);
    let kernel = if space.basis.is_empty() {
        (0..n.pow(d as u32))
            .map(|k| {
                let mut v = vec![Rational::from_integer(0.into()); n.pow(d as u32)];
                v[k] = Rational::from_integer(1.into());
                v
            })
            .collect()
    } else {
        Matrix::from_rows(space.basis.iter().map(MultilinearForm::to_dense).collect()).kernel()
    };
    let tensors = kernel
        .iter()
        .map(|v| MultilinearForm::from_dense(n, d, v))
        .collect::<Result<Vec<_>, _>>()?;
    RelationSpace::span_of(n, d, &tensors)
}

/// Equality of spans, compared through canonical bases.
pub fn span_equal(a: &[MultilinearForm], b: &[MultilinearForm]) -> Result<bool, SpalgError> {
    let Some(first) = a.iter().chain(b).next() else { return Ok(true) };
    let (n, m) = (first.dim(), first.arity());
    Ok(canonical_basis(n, m, a)? == canonical_basis(n, m, b)?)
}

/// `dim A!_ℓ` for the Koszul dual `T(V*)/R^⊥`, by dense linear algebra in degree `ℓ`.
///
/// Meant for small `n`; pairs with `dim W^(m−ℓ)` for `N ≤ ℓ ≤ m`.
pub fn koszul_dual_dimension(s: &MultilinearForm, degree: usize, ell: usize) -> Result<usize, SpalgError> {
    let dual = koszul_dual_relations(s, degree)?;
    let n = s.dim();
    let total = n.pow(ell as u32);
    if ell < degree {
        return Ok(total);
    }
    let mut rows = Vec::new();
    for left in 0..=ell - degree {
        let right = ell - degree - left;
        for t in &dual.basis {
            for a in 0..n.pow(left as u32) {
                for b in 0..n.pow(right as u32) {
                    let mut row = vec![Rational::from_integer(0.into()); total];
                    let (pa, pb) = (index_tuple(a, left, n), index_tuple(b, right, n));
                    for (mid, v) in t.entries() {
                        let idx: Vec<usize> = pa.iter().chain(mid).chain(&pb).copied().collect();
                        row[crate::forms::tuple_index(&idx, n)] = v.clone();
                    }
                    rows.push(row);
                }
            }
        }
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
    Ok(total - rank)
}
