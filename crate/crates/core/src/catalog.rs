//! Example forms and superpotentials with their parameter constraints.
//!
//! All indices are 0-based: the usual 1-based index `k` is `k − 1` here.

use crate::forms::{all_tuples, FormError, MultilinearForm};
use crate::linalg::Matrix;
use crate::rational::{frac, int, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("unknown parameter `{param}` for `{name}`")]
    UnknownParam { name: String, param: String },
    #[error(transparent)]
    Form(#[from] FormError),
}

fn violated(msg: impl Into<String>) -> CatalogError {
    CatalogError::Constraint(msg.into())
}

/// Sign and inversion pairs of a permutation tuple, or `None` for a repeated index.
fn inversions(t: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut seen = vec![false; t.len()];
    for &i in t {
        if i >= t.len() || std::mem::replace(&mut seen[i], true) {
            return None;
        }
    }
    let mut out = Vec::new();
    for a in 0..t.len() {
        for b in a + 1..t.len() {
            if t[a] > t[b] {
                out.push((t[a], t[b]));
            }
        }
    }
    Some(out)
}

/// Permutation-supported arity-`n` form with value `Π weight(i_j, i_{j'})` over inversions.
fn permutation_form(n: usize, weight: impl Fn(usize, usize) -> Rational) -> Result<MultilinearForm, FormError> {
    let mut entries = Vec::new();
    for t in all_tuples(n, n) {
        if let Some(inv) = inversions(&t) {
            let v = inv.iter().fold(Rational::one(), |acc, &(hi, lo)| acc * weight(hi, lo));
            entries.push((t, v));
        }
    }
    MultilinearForm::from_entries(n, n, entries)
}

/// `ε_{i₁⋯iₙ}`: the sign of the permutation, zero on repeated indices.
pub fn signature_form(n: usize) -> Result<MultilinearForm, CatalogError> {
    if n < 2 {
        return Err(violated("signature form needs n ≥ 2"));
    }
    Ok(permutation_form(n, |_, _| int(-1))?)
}

/// The skew-polynomial pair `(e_q, f_p)` with `q_{ji} = λ p_{ji}` for `j > i`.
///
/// `p` must be multiplicatively antisymmetric; `λ ∉ {0, −1}`.
pub fn ast_forms(p: &Matrix, lambda: &Rational) -> Result<(MultilinearForm, MultilinearForm), CatalogError> {
    let n = p.rows();
    if !p.is_square() || n < 2 {
        return Err(violated("p must be a square matrix of size ≥ 2"));
    }
    if lambda.is_zero() || *lambda == int(-1) {
        return Err(violated("λ must differ from 0 and −1"));
    }
    for i in 0..n {
        if !p[(i, i)].is_one() {
            return Err(violated(format!("p_{i}_{i} must be 1")));
        }
        for j in 0..n {
            if i != j && &p[(i, j)] * &p[(j, i)] != Rational::one() {
                return Err(violated(format!("p_{i}_{j}·p_{j}_{i} must be 1")));
            }
        }
    }
    let q = |a: usize, b: usize| -> Rational {
        if a > b {
            lambda * &p[(a, b)]
        } else {
            Rational::one() / (lambda * &p[(b, a)])
        }
    };
    // An inversion places the larger index `hi` before `lo`.
    let e = permutation_form(n, |hi, lo| -q(lo, hi))?;
    let f = permutation_form(n, |hi, lo| -p[(hi, lo)].clone())?;
    Ok((e, f))
}

/// The pair `(e_q, f_p)` with values `(−q)^{−ℓ(σ)}` and `(−p)^{−ℓ(σ)}`.
pub fn takeuchi_forms(n: usize, p: &Rational, q: &Rational) -> Result<(MultilinearForm, MultilinearForm), CatalogError> {
    if n < 2 {
        return Err(violated("n must be at least 2"));
    }
    if p.is_zero() || q.is_zero() {
        return Err(violated("p and q must be nonzero"));
    }
    if p * q == int(-1) {
        return Err(violated("pq must differ from −1"));
    }
    let e = permutation_form(n, |_, _| -(Rational::one() / q))?;
    let f = permutation_form(n, |_, _| -(Rational::one() / p))?;
    Ok((e, f))
}

/// Coefficients of `a Σ_cyc z₀z₁z₂ + b Σ_cyc z₀z₂z₁ + c Σ zᵢ³`.
pub fn sklyanin3(a: &Rational, b: &Rational, c: &Rational) -> Result<MultilinearForm, CatalogError> {
    if (a * b * c).is_zero() {
        return Err(violated("abc must be nonzero"));
    }
    let lhs = int(3) * a * b * c;
    let rhs = a * a * a + b * b * b + c * c * c;
    if &lhs * &lhs * &lhs == &rhs * &rhs * &rhs {
        return Err(violated("(3abc)³ must differ from (a³+b³+c³)³"));
    }
    let mut entries = Vec::new();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        entries.push((vec![i, j, k], a.clone()));
        entries.push((vec![i, k, j], b.clone()));
        entries.push((vec![i, i, i], c.clone()));
    }
    Ok(MultilinearForm::from_entries(3, 3, entries)?)
}

/// Relations `a z_{i+1}z_{i+2} + b z_{i+2}z_{i+1} + c z_i²` as degree-2 tensors.
pub fn sklyanin3_relations(a: &Rational, b: &Rational, c: &Rational) -> Result<Vec<MultilinearForm>, CatalogError> {
    (0..3)
        .map(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            quadratic(3, &[((j, k), a.clone()), ((k, j), b.clone()), ((i, i), c.clone())])
        })
        .collect()
}

fn quadratic(n: usize, terms: &[((usize, usize), Rational)]) -> Result<MultilinearForm, CatalogError> {
    let mut t = MultilinearForm::zero(n, 2)?;
    for ((a, b), v) in terms {
        let cur = t.get(&[*a, *b]);
        t.set(vec![*a, *b], cur + v)?;
    }
    Ok(t)
}

fn check_sklyanin4(al: &Rational, be: &Rational, ga: &Rational) -> Result<(), CatalogError> {
    let one = Rational::one();
    if !(al + be + ga + al * be * ga).is_zero() {
        return Err(violated("α+β+γ+αβγ must be 0"));
    }
    let m1 = -one.clone();
    if (*al == m1 && *be == one) || (*be == m1 && *ga == one) || (*al == one && *ga == m1) {
        return Err(violated("(α,β,γ) lies on an excluded line"));
    }
    if *be == m1 || *ga == one {
        return Err(violated("β ≠ −1 and γ ≠ 1 are required"));
    }
    Ok(())
}

/// The degree-4 superpotential of the four-dimensional Sklyanin algebra.
pub fn sklyanin4(al: &Rational, be: &Rational, ga: &Rational) -> Result<MultilinearForm, CatalogError> {
    check_sklyanin4(al, be, ga)?;
    let one = Rational::one();
    let two = int(2);
    let (ap, am) = (&one + al, &one - al);
    let (bp, gm) = (&one + be, &one - ga);
    let half = frac(1, 2);
    let rows: Vec<(Vec<[usize; 4]>, Rational)> = vec![
        (vec![[0, 1, 0, 1]], one.clone()),
        (vec![[1, 0, 1, 0]], -one.clone()),
        (vec![[0, 2, 0, 2]], &am / &bp),
        (vec![[2, 0, 2, 0]], -(&am / &bp)),
        (vec![[0, 3, 0, 3]], &ap / &gm),
        (vec![[3, 0, 3, 0]], -(&ap / &gm)),
        (vec![[1, 2, 1, 2]], ga * &ap / &gm),
        (vec![[2, 1, 2, 1]], -(ga * &ap / &gm)),
        (vec![[1, 3, 1, 3]], -(be * &am / &bp)),
        (vec![[3, 1, 3, 1]], be * &am / &bp),
        (vec![[2, 3, 2, 3]], al.clone()),
        (vec![[3, 2, 3, 2]], -al.clone()),
        (vec![[0, 1, 2, 3], [2, 3, 0, 1]], -(&ap * &half)),
        (vec![[1, 2, 3, 0], [3, 0, 1, 2]], &ap * &half),
        (vec![[0, 1, 3, 2], [3, 2, 0, 1]], &am * &half),
        (vec![[1, 3, 2, 0], [2, 0, 1, 3]], -(&am * &half)),
        (vec![[0, 2, 1, 3], [1, 3, 0, 2]], (&one - be) * &am / (&two * &bp)),
        (vec![[2, 1, 3, 0], [3, 0, 2, 1]], -((&one - be) * &am / (&two * &bp))),
        (vec![[0, 2, 3, 1], [3, 1, 0, 2]], -(&am * &half)),
        (vec![[2, 3, 1, 0], [1, 0, 2, 3]], &am * &half),
        (vec![[0, 3, 1, 2], [1, 2, 0, 3]], -((&one + ga) * &ap / (&two * &gm))),
        (vec![[3, 1, 2, 0], [2, 0, 3, 1]], (&one + ga) * &ap / (&two * &gm)),
        (vec![[0, 3, 2, 1], [2, 1, 0, 3]], &ap * &half),
        (vec![[3, 2, 1, 0], [1, 0, 3, 2]], -(&ap * &half)),
    ];
    let entries = rows
        .into_iter()
        .flat_map(|(idxs, v)| idxs.into_iter().map(move |i| (i.to_vec(), v.clone())));
    Ok(MultilinearForm::from_entries(4, 4, entries)?)
}

/// The six defining relations `f₁, …, f₆` as degree-2 tensors.
pub fn sklyanin4_relations(al: &Rational, be: &Rational, ga: &Rational) -> Result<Vec<MultilinearForm>, CatalogError> {
    check_sklyanin4(al, be, ga)?;
    let one = Rational::one;
    let mut out = Vec::new();
    for (k, c) in [(1usize, al), (2, be), (3, ga)] {
        let (a, b) = match k {
            1 => (2, 3),
            2 => (3, 1),
            _ => (1, 2),
        };
        out.push(quadratic(4, &[((0, k), one()), ((k, 0), -one()), ((a, b), -c.clone()), ((b, a), -c.clone())])?);
        out.push(quadratic(4, &[((0, k), one()), ((k, 0), one()), ((a, b), -one()), ((b, a), one())])?);
    }
    Ok(out)
}

fn check_metric(g: &Matrix) -> Result<(), CatalogError> {
    if !g.is_square() || g.rows() < 2 {
        return Err(violated("metric must be square of size ≥ 2"));
    }
    if g.transpose() != *g {
        return Err(violated("metric must be symmetric"));
    }
    if g.det().is_zero() {
        return Err(violated("metric must be invertible"));
    }
    Ok(())
}

/// `g_{ijkl} = g_{ij}g_{kl} + g_{il}g_{jk} − 2 g_{ik}g_{jl}`.
pub fn yang_mills(g: &Matrix) -> Result<MultilinearForm, CatalogError> {
    check_metric(g)?;
    Ok(MultilinearForm::from_fn(g.rows(), 4, |t| ym_coeff(g, t[0], t[1], t[2], t[3]))?)
}

fn ym_coeff(g: &Matrix, i: usize, j: usize, k: usize, l: usize) -> Rational {
    &g[(i, j)] * &g[(k, l)] + &g[(i, l)] * &g[(j, k)] - int(2) * &g[(i, k)] * &g[(j, l)]
}

/// The cubic relations `Σ (g_{ij}g_{kl}+g_{il}g_{jk}−2g_{ik}g_{jl}) x_j x_k x_l`, one per `i`.
pub fn yang_mills_relations(g: &Matrix) -> Result<Vec<MultilinearForm>, CatalogError> {
    check_metric(g)?;
    (0..g.rows())
        .map(|i| Ok(MultilinearForm::from_fn(g.rows(), 3, |t| ym_coeff(g, i, t[0], t[1], t[2]))?))
        .collect()
}

/// Which form of a two-sided family to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    E,
    F,
}

/// A named catalog entry with parameters, as accepted by the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogSpec {
    pub name: String,
    pub n: Option<usize>,
    pub params: BTreeMap<String, Rational>,
}

pub const CATALOG_NAMES: [&str; 6] = ["signature", "ast", "takeuchi", "sklyanin3", "sklyanin4", "yangmills"];

impl CatalogSpec {
    fn param(&self, key: &str, default: Rational) -> Rational {
        self.params.get(key).cloned().unwrap_or(default)
    }

    fn allow(&self, keys: &[&str], indexed: Option<&str>) -> Result<(), CatalogError> {
        for k in self.params.keys() {
            let ok = keys.contains(&k.as_str()) || indexed.is_some_and(|p| parse_pair(k, p).is_some());
            if !ok {
                return Err(CatalogError::UnknownParam { name: self.name.clone(), param: k.clone() });
            }
        }
        Ok(())
    }

    /// The matrix `p` and scalar `λ` of an `ast` entry.
    pub fn ast_parameters(&self) -> Result<(Matrix, Rational), CatalogError> {
        self.allow(&["lambda"], Some("p"))?;
        let n = self.n.unwrap_or(2);
        let mut p = ones(n);
        for (k, v) in &self.params {
            if let Some((i, j)) = parse_pair(k, "p") {
                if i >= n || j >= n || i == j {
                    return Err(violated(format!("{k} is out of range for n={n}")));
                }
                if v.is_zero() {
                    return Err(violated(format!("{k} must be nonzero")));
                }
                p[(i, j)] = v.clone();
                p[(j, i)] = Rational::one() / v;
            }
        }
        Ok((p, self.param("lambda", int(1))))
    }

    /// Builds the requested form; one-sided families ignore `side`.
    pub fn build(&self, side: Side) -> Result<MultilinearForm, CatalogError> {
        let pick = |(e, f): (MultilinearForm, MultilinearForm)| if side == Side::E { e } else { f };
        match self.name.as_str() {
            "signature" => {
                self.allow(&[], None)?;
                signature_form(self.n.unwrap_or(2))
            }
            "ast" => {
                let (p, lambda) = self.ast_parameters()?;
                Ok(pick(ast_forms(&p, &lambda)?))
            }
            "takeuchi" => {
                self.allow(&["p", "q"], None)?;
                Ok(pick(takeuchi_forms(self.n.unwrap_or(2), &self.param("p", int(1)), &self.param("q", int(1)))?))
            }
            "sklyanin3" => {
                self.allow(&["a", "b", "c"], None)?;
                sklyanin3(&self.param("a", int(1)), &self.param("b", int(2)), &self.param("c", int(3)))
            }
            "sklyanin4" => {
                self.allow(&["alpha", "beta", "gamma"], None)?;
                sklyanin4(&self.param("alpha", int(2)), &self.param("beta", int(1)), &self.param("gamma", int(-1)))
            }
            "yangmills" => {
                self.allow(&[], Some("g"))?;
                let n = self.n.unwrap_or(3);
                let mut g = Matrix::identity(n);
                for (k, v) in &self.params {
                    if let Some((i, j)) = parse_pair(k, "g") {
                        if i >= n || j >= n {
                            return Err(violated(format!("{k} is out of range for n={n}")));
                        }
                        g[(i, j)] = v.clone();
                        g[(j, i)] = v.clone();
                    }
                }
                yang_mills(&g)
            }
            other => Err(CatalogError::UnknownName(other.to_string())),
        }
    }
}

fn ones(n: usize) -> Matrix {
    Matrix::from_rows(vec![vec![Rational::one(); n]; n])
}

/// Parses keys like `p_0_1` into `(0, 1)`.
fn parse_pair(key: &str, prefix: &str) -> Option<(usize, usize)> {
    let rest = key.strip_prefix(prefix)?.strip_prefix('_')?;
    let (a, b) = rest.split_once('_')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}
