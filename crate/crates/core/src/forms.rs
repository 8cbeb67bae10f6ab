//! Sparse multilinear forms over ℚ: nondegeneracy, twists, polars and pairings.
//!
//! A form `e` of arity `m` on an `n`-dimensional space is stored by its values
//! `e_{i₁⋯i_m}` on basis tuples (0-based). The same type holds the coefficient
//! tensor of a superpotential: a form and its dual superpotential have identical
//! coefficients, so [`dualize`] is the identity on the representation.
//!
//! Matrices act on column vectors: a twist `φ` sends basis vector `z_ℓ` to
//! `Σ_k φ_{kℓ} z_k`.

use crate::linalg::Matrix;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("form dimension and arity must be positive")]
    EmptyShape,
    #[error("index tuple {idx:?} does not fit a form of dim {dim} and arity {arity}")]
    BadIndex { idx: Vec<usize>, dim: usize, arity: usize },
    #[error("duplicate index tuple {0:?}")]
    DuplicateIndex(Vec<usize>),
    #[error("shape mismatch: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("dimension mismatch: form has dim {form}, matrix is {matrix}×{matrix}")]
    DimensionMismatch { form: usize, matrix: usize },
    #[error("form is degenerate in the {0} slot")]
    Degenerate(Slot),
    #[error("form is not preregular: {0}")]
    NotPreregular(String),
}

/// Which end of the index tuple a flattening or polar refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    First,
    Last,
}

impl std::fmt::Display for Slot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Slot::First => "first",
            Slot::Last => "last",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearForm {
    dim: usize,
    arity: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

/// Mixed-radix position of `t` among all tuples of its length, lexicographic.
pub fn tuple_index(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &i| acc * n + i)
}

/// Inverse of [`tuple_index`].
pub fn index_tuple(mut idx: usize, len: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

/// All tuples of the given length over `0..n`, in lexicographic order.
pub fn all_tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(len as u32)).map(move |k| index_tuple(k, len, n))
}

impl MultilinearForm {
    pub fn zero(dim: usize, arity: usize) -> Result<Self, FormError> {
        if dim == 0 || arity == 0 {
            return Err(FormError::EmptyShape);
        }
        Ok(MultilinearForm { dim, arity, entries: BTreeMap::new() })
    }

    /// Builds a form from explicit values; zero values are dropped, repeated tuples rejected.
    pub fn from_entries(
        dim: usize,
        arity: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Result<Self, FormError> {
        let mut form = Self::zero(dim, arity)?;
        for (idx, val) in entries {
            form.check_index(&idx)?;
            if form.entries.contains_key(&idx) {
                return Err(FormError::DuplicateIndex(idx));
            }
            if !val.is_zero() {
                form.entries.insert(idx, val);
            }
        }
        Ok(form)
    }

    /// Builds a form from a function on all `n^m` tuples.
    pub fn from_fn(dim: usize, arity: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Result<Self, FormError> {
        let mut form = Self::zero(dim, arity)?;
        for t in all_tuples(dim, arity) {
            let v = f(&t);
            if !v.is_zero() {
                form.entries.insert(t, v);
            }
        }
        Ok(form)
    }

    fn check_index(&self, idx: &[usize]) -> Result<(), FormError> {
        if idx.len() != self.arity || idx.iter().any(|&i| i >= self.dim) {
            return Err(FormError::BadIndex { idx: idx.to_vec(), dim: self.dim, arity: self.arity });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &[usize]) -> Rational {
        self.entries.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, idx: Vec<usize>, val: Rational) -> Result<(), FormError> {
        self.check_index(&idx)?;
        if val.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, val);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = MultilinearForm { dim: self.dim, arity: self.arity, entries: BTreeMap::new() };
        if !c.is_zero() {
            out.entries = self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    /// Coefficients as a dense vector indexed by [`tuple_index`].
    pub fn to_dense(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim.pow(self.arity as u32)];
        for (k, x) in &self.entries {
            v[tuple_index(k, self.dim)] = x.clone();
        }
        v
    }

    pub fn from_dense(dim: usize, arity: usize, v: &[Rational]) -> Result<Self, FormError> {
        Self::from_entries(dim, arity, v.iter().enumerate().map(|(k, x)| (index_tuple(k, arity, dim), x.clone())))
    }

    /// The `n × n^{m−1}` (first slot) or `n^{m−1} × n` (last slot) flattening.
    pub fn flattening(&self, slot: Slot) -> Matrix {
        let n = self.dim;
        let rest = n.pow(self.arity as u32 - 1);
        match slot {
            Slot::First => {
                let mut m = Matrix::zeros(n, rest);
                for (k, v) in &self.entries {
                    m[(k[0], tuple_index(&k[1..], n))] = v.clone();
                }
                m
            }
            Slot::Last => {
                let mut m = Matrix::zeros(rest, n);
                for (k, v) in &self.entries {
                    m[(tuple_index(&k[..k.len() - 1], n), k[k.len() - 1])] = v.clone();
                }
                m
            }
        }
    }
}

/// An invertible matrix with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistMatrix {
    entries: Matrix,
    inverse: Matrix,
}

impl TwistMatrix {
    /// `None` when the matrix is singular or not square.
    pub fn new(entries: Matrix) -> Option<Self> {
        let inverse = entries.inverse()?;
        Some(TwistMatrix { entries, inverse })
    }

    pub fn identity(n: usize) -> Self {
        TwistMatrix { entries: Matrix::identity(n), inverse: Matrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreregularityReport {
    pub nondegenerate_first_slot: bool,
    pub nondegenerate_last_slot: bool,
    pub twist: Option<TwistMatrix>,
    pub failure_witness: Option<Vec<Rational>>,
}

impl PreregularityReport {
    pub fn is_preregular(&self) -> bool {
        self.nondegenerate_first_slot && self.nondegenerate_last_slot && self.twist.is_some()
    }
}

/// Rank test for the flattening at `slot`; on failure returns a vector killed by that slot.
pub fn nondegeneracy(form: &MultilinearForm, slot: Slot) -> (bool, Option<Vec<Rational>>) {
    let flat = form.flattening(slot);
    let kernel = match slot {
        Slot::First => flat.left_kernel(),
        Slot::Last => flat.kernel(),
    };
    match kernel.into_iter().next() {
        None => (true, None),
        Some(w) => (false, Some(w)),
    }
}

/// Solves `Σ_k ℙ_{kℓ} e_{k i₁⋯i_{m−1}} = e_{i₁⋯i_{m−1} ℓ}` for an invertible `ℙ`.
pub fn find_twist(form: &MultilinearForm) -> Option<TwistMatrix> {
    let n = form.dim;
    let m = form.arity;
    let system = form.flattening(Slot::First).transpose();
    let mut p = Matrix::zeros(n, n);
    for l in 0..n {
        let rhs: Vec<Rational> = all_tuples(n, m - 1)
            .map(|mut t| {
                t.push(l);
                form.get(&t)
            })
            .collect();
        let col = system.solve(&rhs)?;
        for (k, v) in col.into_iter().enumerate() {
            p[(k, l)] = v;
        }
    }
    let twist = TwistMatrix::new(p)?;
    rotation_holds(form, &twist).then_some(twist)
}

/// Exact check of both halves of the rotation identity for `twist`.
pub fn rotation_holds(form: &MultilinearForm, twist: &TwistMatrix) -> bool {
    let n = form.dim;
    if twist.dim() != n {
        return false;
    }
    let (p, pinv) = (twist.matrix(), twist.inverse());
    all_tuples(n, form.arity - 1).all(|rest| {
        (0..n).all(|l| {
            let mut tail = rest.clone();
            tail.push(l);
            let lhs: Rational = (0..n)
                .map(|k| {
                    let mut head = vec![k];
                    head.extend(&rest);
                    &p[(k, l)] * form.get(&head)
                })
                .sum();
            let mut head_l = vec![l];
            head_l.extend(&rest);
            let lhs2: Rational = (0..n)
                .map(|k| {
                    let mut t = rest.clone();
                    t.push(k);
                    &pinv[(k, l)] * form.get(&t)
                })
                .sum();
            lhs == form.get(&tail) && lhs2 == form.get(&head_l)
        })
    })
}

pub fn check_preregular(form: &MultilinearForm) -> PreregularityReport {
    let (first, w1) = nondegeneracy(form, Slot::First);
    let (last, w2) = nondegeneracy(form, Slot::Last);
    PreregularityReport {
        nondegenerate_first_slot: first,
        nondegenerate_last_slot: last,
        twist: find_twist(form),
        failure_witness: w1.or(w2),
    }
}

/// `(φ⊗id^{⊗(m−1)})∘c` fixes the coefficient tensor, where `c` moves the last factor to the front.
pub fn is_twisted_superpotential(tensor: &MultilinearForm, phi: &TwistMatrix) -> Result<bool, FormError> {
    let n = tensor.dim;
    if phi.dim() != n {
        return Err(FormError::DimensionMismatch { form: n, matrix: phi.dim() });
    }
    let phi = phi.matrix();
    Ok(all_tuples(n, tensor.arity).all(|t| {
        let (k, rest) = (t[0], &t[1..]);
        let image: Rational = (0..n)
            .map(|l| {
                let mut u = rest.to_vec();
                u.push(l);
                &phi[(k, l)] * tensor.get(&u)
            })
            .sum();
        image == tensor.get(&t)
    }))
}

/// Passes between a form and its superpotential; both share one coefficient tensor.
pub fn dualize(form: &MultilinearForm) -> MultilinearForm {
    form.clone()
}

/// Canonical polar: `First` gives `ẽ` with `Σ_k ẽ_{ik} e_{kj} = δ_{ij}`, `Last` gives
/// `f̃` with `Σ_k f_{ik} f̃_{kj} = δ_{ij}` (`k` ranging over `(m−1)`-tuples).
///
/// The solution is supported on the pivot columns of the reduced row-echelon form
/// of the contracted flattening, with zeros elsewhere.
pub fn polar(form: &MultilinearForm, slot: Slot) -> Result<MultilinearForm, FormError> {
    let n = form.dim;
    let m = form.arity;
    // Both cases solve `A·y = e_i` with `A` of shape n × n^{m−1}.
    let a = match slot {
        Slot::First => form.flattening(Slot::Last).transpose(),
        Slot::Last => form.flattening(Slot::First),
    };
    if a.rank() < n {
        return Err(FormError::Degenerate(match slot {
            Slot::First => Slot::Last,
            Slot::Last => Slot::First,
        }));
    }
    let mut out = MultilinearForm::zero(n, m)?;
    for i in 0..n {
        let mut rhs = vec![Rational::zero(); n];
        rhs[i] = Rational::one();
        let y = a.solve(&rhs).expect("full-rank system is consistent");
        for (k, v) in y.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let rest = index_tuple(k, m - 1, n);
            let idx = match slot {
                Slot::First => std::iter::once(i).chain(rest).collect(),
                Slot::Last => rest.into_iter().chain(std::iter::once(i)).collect(),
            };
            out.entries.insert(idx, v);
        }
    }
    Ok(out)
}

/// Exact check of the polar identities for `candidate`.
pub fn verify_polar(form: &MultilinearForm, candidate: &MultilinearForm, slot: Slot) -> bool {
    if form.dim != candidate.dim || form.arity != candidate.arity {
        return false;
    }
    let product = match slot {
        Slot::First => contract_chain(candidate, form),
        Slot::Last => contract_chain(form, candidate),
    };
    product.is_identity()
}

/// `(x⋆y)_{ij} = Σ_k x_{ik} y_{kj}` over `(m−1)`-tuples `k`.
fn contract_chain(x: &MultilinearForm, y: &MultilinearForm) -> Matrix {
    x.flattening(Slot::First).mul(&y.flattening(Slot::Last))
}

fn same_shape(e: &MultilinearForm, f: &MultilinearForm) -> Result<(), FormError> {
    if e.dim != f.dim || e.arity != f.arity {
        return Err(FormError::ShapeMismatch(e.dim, e.arity, f.dim, f.arity));
    }
    Ok(())
}

/// Full contraction `e⊙f = Σ e_i f_i`.
pub fn odot(e: &MultilinearForm, f: &MultilinearForm) -> Result<Rational, FormError> {
    same_shape(e, f)?;
    Ok(e.entries.iter().filter_map(|(k, v)| f.entries.get(k).map(|w| v * w)).sum())
}

/// The contraction matrix `(e⋆f)_{ij} = Σ e_{i i₁⋯i_{m−1}} f_{i₁⋯i_{m−1} j}`.
pub fn star(e: &MultilinearForm, f: &MultilinearForm) -> Result<Matrix, FormError> {
    same_shape(e, f)?;
    Ok(contract_chain(e, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    pub(crate) fn eps2() -> MultilinearForm {
        MultilinearForm::from_entries(2, 2, [(vec![0, 1], int(1)), (vec![1, 0], int(-1))]).unwrap()
    }

    fn matrix_form(rows: &[&[i64]]) -> MultilinearForm {
        let n = rows.len();
        MultilinearForm::from_fn(n, 2, |t| int(rows[t[0]][t[1]])).unwrap()
    }

    #[test]
    fn tuple_encoding_round_trips() {
        for k in 0..27 {
            assert_eq!(tuple_index(&index_tuple(k, 3, 3), 3), k);
        }
        assert_eq!(index_tuple(5, 3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn zero_values_are_not_stored() {
        let f = MultilinearForm::from_entries(2, 1, [(vec![0], int(0)), (vec![1], int(2))]).unwrap();
        assert_eq!(f.entries().len(), 1);
        assert!(MultilinearForm::from_entries(2, 1, [(vec![2], int(1))]).is_err());
        assert!(MultilinearForm::from_entries(2, 1, [(vec![1], int(1)), (vec![1], int(1))]).is_err());
    }

    #[test]
    fn degenerate_witnesses() {
        let z = MultilinearForm::zero(3, 2).unwrap();
        assert_eq!(nondegeneracy(&z, Slot::First), (false, Some(vec![int(1), int(0), int(0)])));
        let e = matrix_form(&[&[1, 0], &[0, 0]]);
        assert_eq!(nondegeneracy(&e, Slot::First), (false, Some(vec![int(0), int(1)])));
        let r = check_preregular(&e);
        assert!(!r.nondegenerate_first_slot && !r.nondegenerate_last_slot);
        assert!(r.failure_witness.is_some());
    }

    #[test]
    fn twist_of_eps2_is_minus_identity() {
        let p = find_twist(&eps2()).unwrap();
        assert_eq!(*p.matrix(), Matrix::scalar(2, &int(-1)));
        assert!(check_preregular(&eps2()).is_preregular());
    }

    #[test]
    fn zero_row_has_no_twist() {
        let e = matrix_form(&[&[0, 0], &[1, 0]]);
        assert!(find_twist(&e).is_none());
    }

    #[test]
    fn superpotential_twist_check() {
        let e = eps2();
        assert!(is_twisted_superpotential(&e, &TwistMatrix::new(Matrix::scalar(2, &int(-1))).unwrap()).unwrap());
        assert!(!is_twisted_superpotential(&e, &TwistMatrix::identity(2)).unwrap());
        assert!(is_twisted_superpotential(&e, &TwistMatrix::identity(3)).is_err());
    }

    #[test]
    fn polar_of_bilinear_form_is_inverse() {
        let e = matrix_form(&[&[1, 1], &[0, 1]]);
        let pe = polar(&e, Slot::First).unwrap();
        let inv = e.flattening(Slot::First).inverse().unwrap();
        assert_eq!(pe.flattening(Slot::First), inv);
        assert!(verify_polar(&e, &pe, Slot::First));
        let pf = polar(&e, Slot::Last).unwrap();
        assert!(verify_polar(&e, &pf, Slot::Last));
        assert!(!verify_polar(&eps2(), &eps2(), Slot::First));
        assert!(polar(&MultilinearForm::zero(2, 3).unwrap(), Slot::First).is_err());
    }

    #[test]
    fn pairings_of_eps2() {
        let e = eps2();
        assert_eq!(odot(&e, &e).unwrap(), int(2));
        assert_eq!(star(&e, &e).unwrap(), Matrix::scalar(2, &int(-1)));
        let z = MultilinearForm::zero(2, 2).unwrap();
        assert_eq!(odot(&e, &z).unwrap(), int(0));
        assert!(star(&e, &z).unwrap().is_zero());
        assert!(odot(&e, &MultilinearForm::zero(3, 2).unwrap()).is_err());
    }
}
