//! Presentations of the universal quantum groups attached to a pair of forms,
//! the bialgebra coacting on the pair of superpotential algebras, and the
//! numeric codeterminant.
//!
//! Generators are named `u_i_j` (or `a_i_j`, `b_i_j`, `z_i_j`) with 0-based
//! indices, and `De`, `DeInv`, `Df`, `DfInv` for the grouplikes.

mod verify;

pub use verify::{
    biideal_check, equivalence_check, recheck, sovereign_check, verify_antipode, verify_central_codet, verify_inverse_lemma,
    verify_pushout_maps, verify_s2_twist, Check, Status, VerificationReport, Verifier,
};

use crate::catalog::{ast_forms, CatalogError};
use crate::forms::{all_tuples, check_preregular, find_twist, polar, FormError, MultilinearForm, Slot, TwistMatrix};
use crate::linalg::Matrix;
use crate::ncpoly::{Alphabet, NcError, NcPoly, Symbol, TensorPoly, Word};
use crate::rational::Rational;
use crate::spalg::{koszul_dual_relations, SpalgError};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error("form `{0}` is not preregular")]
    NotPreregular(String),
    #[error("forms have different shapes")]
    ShapeMismatch,
    #[error("operation needs a presentation of kind {expected}, got {got}")]
    IncompatibleKind { expected: String, got: Kind },
    #[error("hypothesis not met: {0}")]
    HypothesisFailure(String),
    #[error("the form is zero")]
    ZeroForm,
    #[error("presentation is missing `{0}`")]
    Missing(String),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Spalg(#[from] SpalgError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    He,
    Hf,
    Hef,
    Se,
    Sf,
    Sef,
    Gef,
    OM,
    Ast,
}

impl Kind {
    pub const ALL: [Kind; 9] = [Kind::He, Kind::Hf, Kind::Hef, Kind::Se, Kind::Sf, Kind::Sef, Kind::Gef, Kind::OM, Kind::Ast];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::He => "he",
            Kind::Hf => "hf",
            Kind::Hef => "hef",
            Kind::Se => "se",
            Kind::Sf => "sf",
            Kind::Sef => "sef",
            Kind::Gef => "gef",
            Kind::OM => "om",
            Kind::Ast => "ast",
        }
    }

    fn uses_e(self) -> bool {
        !matches!(self, Kind::Hf | Kind::Sf)
    }

    fn uses_f(self) -> bool {
        !matches!(self, Kind::He | Kind::Se)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown presentation kind `{s}`"))
    }
}

/// Generators, relations and coalgebra data of a bialgebra or Hopf algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub kind: Kind,
    pub n: usize,
    pub m: usize,
    pub degree: Option<usize>,
    pub alphabet: Alphabet,
    pub relations: Vec<NcPoly>,
    pub coproduct: BTreeMap<Symbol, TensorPoly>,
    pub counit: BTreeMap<Symbol, Rational>,
    pub antipode: Option<BTreeMap<Symbol, NcPoly>>,
    /// A second antipode formula, equal to the first modulo the relations.
    pub antipode_alt: Option<BTreeMap<Symbol, NcPoly>>,
    pub e: Option<MultilinearForm>,
    pub f: Option<MultilinearForm>,
}

impl Presentation {
    pub fn gen(&self, name: &str) -> Result<NcPoly, HopfError> {
        Ok(self.alphabet.gen(name)?)
    }

    pub fn has(&self, name: &str) -> bool {
        self.alphabet.symbol(name).is_ok()
    }

    /// `ε(p)`, with unlisted symbols sent to zero.
    pub fn counit_of(&self, p: &NcPoly) -> Rational {
        p.eval(&|s| self.counit.get(&s).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn coproduct_of(&self, p: &NcPoly) -> Result<TensorPoly, HopfError> {
        Ok(crate::ncpoly::coproduct_extend(p, &|s| self.coproduct.get(&s).cloned(), &self.alphabet)?)
    }

    pub fn antipode_of(&self, p: &NcPoly) -> Result<NcPoly, HopfError> {
        let s = self.antipode.as_ref().ok_or_else(|| HopfError::Missing("antipode".into()))?;
        Ok(p.anti_substitute(&|x| s.get(&x).cloned()))
    }

    /// Indices of relations the counit does not kill, with the offending values.
    pub fn counit_violations(&self) -> Vec<(usize, Rational)> {
        self.relations
            .iter()
            .enumerate()
            .filter_map(|(k, r)| {
                let v = self.counit_of(r);
                (!v.is_zero()).then_some((k, v))
            })
            .collect()
    }

    /// The `n × n` matrix of generators named `{prefix}_i_j`.
    pub fn matrix(&self, prefix: &str) -> Result<Vec<Vec<NcPoly>>, HopfError> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.gen(&format!("{prefix}_{i}_{j}"))).collect())
            .collect()
    }

    /// Generator matrices carrying the matrix coproduct.
    pub fn matrix_prefixes(&self) -> &'static [&'static str] {
        match self.kind {
            Kind::He | Kind::Hf | Kind::Se | Kind::Sf => &["a", "b"],
            Kind::OM => &["z"],
            _ => &["u"],
        }
    }

    pub fn form_e(&self) -> Result<&MultilinearForm, HopfError> {
        self.e.as_ref().ok_or_else(|| HopfError::Missing("form e".into()))
    }

    pub fn form_f(&self) -> Result<&MultilinearForm, HopfError> {
        self.f.as_ref().ok_or_else(|| HopfError::Missing("form f".into()))
    }
}

fn matrix_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).flat_map(|i| (0..n).map(move |j| format!("{prefix}_{i}_{j}"))).collect()
}

fn sym(alpha: &Alphabet, name: &str) -> Symbol {
    alpha.symbol(name).expect("builder uses its own names")
}

fn sym_matrix(alpha: &Alphabet, prefix: &str, n: usize) -> Vec<Vec<Symbol>> {
    (0..n).map(|i| (0..n).map(|j| sym(alpha, &format!("{prefix}_{i}_{j}"))).collect()).collect()
}

fn word(syms: impl IntoIterator<Item = Symbol>) -> Word {
    Word(syms.into_iter().collect())
}

fn mono(syms: impl IntoIterator<Item = Symbol>, c: Rational) -> NcPoly {
    NcPoly::term(word(syms), c)
}

fn delta(i: usize, j: usize) -> Rational {
    if i == j {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Matrix coproduct `Δ(x_ij) = Σ_k x_ik ⊗ x_kj`, or the transposed variant `Σ_k x_kj ⊗ x_ik`.
fn matrix_coproduct(out: &mut BTreeMap<Symbol, TensorPoly>, x: &[Vec<Symbol>], transposed: bool) {
    let n = x.len();
    for i in 0..n {
        for j in 0..n {
            let mut t = TensorPoly::zero();
            for k in 0..n {
                let (l, r) = if transposed { (x[k][j], x[i][k]) } else { (x[i][k], x[k][j]) };
                t.add_term(word([l]), word([r]), Rational::one());
            }
            out.insert(x[i][j], t);
        }
    }
}

fn grouplike(out: &mut BTreeMap<Symbol, TensorPoly>, counit: &mut BTreeMap<Symbol, Rational>, d: Symbol) {
    out.insert(d, TensorPoly::term(word([d]), word([d]), Rational::one()));
    counit.insert(d, Rational::one());
}

fn matrix_counit(counit: &mut BTreeMap<Symbol, Rational>, x: &[Vec<Symbol>]) {
    for (i, row) in x.iter().enumerate() {
        for (j, &s) in row.iter().enumerate() {
            counit.insert(s, delta(i, j));
        }
    }
}

fn inverse_pair(d: Symbol, dinv: Symbol) -> [NcPoly; 2] {
    [
        &mono([d, dinv], Rational::one()) - &NcPoly::one(),
        &mono([dinv, d], Rational::one()) - &NcPoly::one(),
    ]
}

fn require_preregular(form: &MultilinearForm, label: &str) -> Result<TwistMatrix, HopfError> {
    let report = check_preregular(form);
    match report.twist {
        Some(t) if report.is_preregular() => Ok(t),
        _ => Err(HopfError::NotPreregular(label.to_string())),
    }
}

fn same_shape(e: &MultilinearForm, f: &MultilinearForm) -> Result<(), HopfError> {
    if e.dim() != f.dim() || e.arity() != f.arity() {
        return Err(HopfError::ShapeMismatch);
    }
    Ok(())
}

/// `Σ_I w_I x_{i₁ j₁}⋯x_{i_m j_m}` (`rows = true`) or `Σ_I w_I x_{j₁ i₁}⋯x_{j_m i_m}`,
/// optionally with the factor order reversed.
fn contracted_product(w: &MultilinearForm, x: &[Vec<Symbol>], fixed: &[usize], rows: bool, reversed: bool) -> NcPoly {
    let mut out = NcPoly::zero();
    for (idx, c) in w.entries() {
        let mut syms: Vec<Symbol> =
            idx.iter().zip(fixed).map(|(&i, &j)| if rows { x[i][j] } else { x[j][i] }).collect();
        if reversed {
            syms.reverse();
        }
        out.add_term(word(syms), c.clone());
    }
    out
}

/// `Σ c_{ij} = Σ ẽ_{i I} x_{j₁i₁}⋯x_{j_{m−1}i_{m−1}} e_{J j}` with an optional prefix and suffix symbol.
fn contragredient(
    left: &MultilinearForm,
    right: &MultilinearForm,
    x: &[Vec<Symbol>],
    i: usize,
    j: usize,
    prefix: Option<Symbol>,
    suffix: Option<Symbol>,
) -> NcPoly {
    let mut out = NcPoly::zero();
    let rights: Vec<(&Vec<usize>, &Rational)> = right.entries().iter().filter(|(k, _)| k[k.len() - 1] == j).collect();
    for (lk, lc) in left.entries().iter().filter(|(k, _)| k[0] == i) {
        for (rk, rc) in &rights {
            let mut syms: Vec<Symbol> = prefix.into_iter().collect();
            syms.extend(lk[1..].iter().zip(&rk[..rk.len() - 1]).map(|(&ii, &jj)| x[jj][ii]));
            syms.extend(suffix);
            out.add_term(word(syms), lc * *rc);
        }
    }
    out
}

/// The matrix `ℂ` built from a polar `ẽ` of `e`: `c_ij = D_e⁻¹ Σ ẽ_{i I} u_{J I} e_{J j}`.
pub fn matrix_c(p: &Presentation, e: &MultilinearForm, et: &MultilinearForm) -> Result<Vec<Vec<NcPoly>>, HopfError> {
    let u = sym_matrix(&p.alphabet, "u", p.n);
    let dinv = p.alphabet.symbol("DeInv").ok();
    Ok((0..p.n).map(|i| (0..p.n).map(|j| contragredient(et, e, &u, i, j, dinv, None)).collect()).collect())
}

/// The matrix `𝔻` built from a polar `f̃` of `f`: `d_ij = Σ f_{i I} u_{J I} f̃_{J j} D_f`.
pub fn matrix_d(p: &Presentation, f: &MultilinearForm, ft: &MultilinearForm) -> Result<Vec<Vec<NcPoly>>, HopfError> {
    let u = sym_matrix(&p.alphabet, "u", p.n);
    let d = p.alphabet.symbol("Df").ok();
    Ok((0..p.n).map(|i| (0..p.n).map(|j| contragredient(f, ft, &u, i, j, None, d)).collect()).collect())
}

fn conjugated(x: &[Vec<Symbol>], left: &Matrix, right: &Matrix, i: usize, j: usize) -> NcPoly {
    let n = x.len();
    let mut out = NcPoly::zero();
    for k in 0..n {
        for l in 0..n {
            out.add_term(word([x[k][l]]), &left[(i, k)] * &right[(l, j)]);
        }
    }
    out
}

/// `𝓗(e)`: generators `a`, `b`, `De^{±1}`.
pub fn build_he(e: &MultilinearForm) -> Result<Presentation, HopfError> {
    let twist = require_preregular(e, "e")?;
    let (n, m) = (e.dim(), e.arity());
    let mut names = matrix_names("a", n);
    names.extend(matrix_names("b", n));
    names.extend(["De".to_string(), "DeInv".to_string()]);
    let alpha = Alphabet::new(names)?;
    let (a, b) = (sym_matrix(&alpha, "a", n), sym_matrix(&alpha, "b", n));
    let (d, dinv) = (sym(&alpha, "De"), sym(&alpha, "DeInv"));

    let mut relations = Vec::new();
    for jt in all_tuples(n, m) {
        relations.push(&contracted_product(e, &a, &jt, true, false) - &mono([d], e.get(&jt)));
    }
    for jt in all_tuples(n, m) {
        relations.push(&contracted_product(e, &b, &jt, true, true) - &mono([dinv], e.get(&jt)));
    }
    relations.extend(inverse_pair(d, dinv));
    relations.extend(matrix_product_minus_identity(&a, &b));

    let (pm, pinv) = (twist.matrix(), twist.inverse());
    let mut antipode = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            antipode.insert(a[i][j], NcPoly::symbol(b[i][j]));
            let inner = conjugated(&a, pinv, pm, i, j);
            antipode.insert(b[i][j], &(&NcPoly::symbol(dinv) * &inner) * &NcPoly::symbol(d));
        }
    }
    antipode.insert(d, NcPoly::symbol(dinv));
    antipode.insert(dinv, NcPoly::symbol(d));

    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    matrix_coproduct(&mut coproduct, &a, false);
    matrix_coproduct(&mut coproduct, &b, true);
    matrix_counit(&mut counit, &a);
    matrix_counit(&mut counit, &b);
    grouplike(&mut coproduct, &mut counit, d);
    grouplike(&mut coproduct, &mut counit, dinv);

    Ok(Presentation {
        kind: Kind::He,
        n,
        m,
        degree: None,
        alphabet: alpha,
        relations,
        coproduct,
        counit,
        antipode: Some(antipode),
        antipode_alt: None,
        e: Some(e.clone()),
        f: None,
    })
}

/// `𝓗(f)`: generators `a`, `b`, `Df^{±1}`.
pub fn build_hf(f: &MultilinearForm) -> Result<Presentation, HopfError> {
    let twist = require_preregular(f, "f")?;
    let (n, m) = (f.dim(), f.arity());
    let mut names = matrix_names("a", n);
    names.extend(matrix_names("b", n));
    names.extend(["Df".to_string(), "DfInv".to_string()]);
    let alpha = Alphabet::new(names)?;
    let (a, b) = (sym_matrix(&alpha, "a", n), sym_matrix(&alpha, "b", n));
    let (d, dinv) = (sym(&alpha, "Df"), sym(&alpha, "DfInv"));

    let mut relations = Vec::new();
    for jt in all_tuples(n, m) {
        relations.push(&contracted_product(f, &a, &jt, false, false) - &mono([dinv], f.get(&jt)));
    }
    for jt in all_tuples(n, m) {
        relations.push(&contracted_product(f, &b, &jt, false, true) - &mono([d], f.get(&jt)));
    }
    relations.extend(inverse_pair(d, dinv));
    relations.extend(matrix_product_minus_identity(&b, &a));

    let qinv_t = twist.inverse().transpose();
    let q_t = twist.matrix().transpose();
    let mut antipode = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            antipode.insert(a[i][j], NcPoly::symbol(b[i][j]));
            let inner = conjugated(&a, &qinv_t, &q_t, i, j);
            antipode.insert(b[i][j], &(&NcPoly::symbol(dinv) * &inner) * &NcPoly::symbol(d));
        }
    }
    antipode.insert(d, NcPoly::symbol(dinv));
    antipode.insert(dinv, NcPoly::symbol(d));

    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    matrix_coproduct(&mut coproduct, &a, false);
    matrix_coproduct(&mut coproduct, &b, true);
    matrix_counit(&mut counit, &a);
    matrix_counit(&mut counit, &b);
    grouplike(&mut coproduct, &mut counit, d);
    grouplike(&mut coproduct, &mut counit, dinv);

    Ok(Presentation {
        kind: Kind::Hf,
        n,
        m,
        degree: None,
        alphabet: alpha,
        relations,
        coproduct,
        counit,
        antipode: Some(antipode),
        antipode_alt: None,
        e: None,
        f: Some(f.clone()),
    })
}

fn matrix_product_minus_identity(x: &[Vec<Symbol>], y: &[Vec<Symbol>]) -> Vec<NcPoly> {
    let n = x.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut r = NcPoly::constant(-delta(i, j));
            for k in 0..n {
                r.add_term(word([x[i][k], y[k][j]]), Rational::one());
            }
            out.push(r);
        }
    }
    out
}

/// `𝓗(e,f)`: generators `u`, `De^{±1}`, `Df^{±1}`.
///
/// The antipode uses the canonical polar `ẽ`; the alternative formula through `f̃`
/// is stored in `antipode_alt`.
pub fn build_hef(e: &MultilinearForm, f: &MultilinearForm) -> Result<Presentation, HopfError> {
    same_shape(e, f)?;
    require_preregular(e, "e")?;
    require_preregular(f, "f")?;
    let (n, m) = (e.dim(), e.arity());
    let mut names = matrix_names("u", n);
    names.extend(["De", "DeInv", "Df", "DfInv"].map(String::from));
    let alpha = Alphabet::new(names)?;
    let u = sym_matrix(&alpha, "u", n);
    let [de, dei, df, dfi] = ["De", "DeInv", "Df", "DfInv"].map(|s| sym(&alpha, s));

    let mut relations = Vec::new();
    for jt in all_tuples(n, m) {
        relations.push(&contracted_product(e, &u, &jt, true, false) - &mono([de], e.get(&jt)));
    }
    for jt in all_tuples(n, m) {
        relations.push(&contracted_product(f, &u, &jt, false, false) - &mono([dfi], f.get(&jt)));
    }
    relations.extend(inverse_pair(de, dei));
    relations.extend(inverse_pair(df, dfi));

    let et = polar(e, Slot::First)?;
    let ft = polar(f, Slot::Last)?;
    let mut antipode = BTreeMap::new();
    let mut alt = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            antipode.insert(u[i][j], contragredient(&et, e, &u, i, j, Some(dei), None));
            alt.insert(u[i][j], contragredient(f, &ft, &u, i, j, None, Some(df)));
        }
    }
    for (x, y) in [(de, dei), (dei, de), (df, dfi), (dfi, df)] {
        antipode.insert(x, NcPoly::symbol(y));
        alt.insert(x, NcPoly::symbol(y));
    }

    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    matrix_coproduct(&mut coproduct, &u, false);
    matrix_counit(&mut counit, &u);
    for d in [de, dei, df, dfi] {
        grouplike(&mut coproduct, &mut counit, d);
    }

    Ok(Presentation {
        kind: Kind::Hef,
        n,
        m,
        degree: None,
        alphabet: alpha,
        relations,
        coproduct,
        counit,
        antipode: Some(antipode),
        antipode_alt: Some(alt),
        e: Some(e.clone()),
        f: Some(f.clone()),
    })
}

/// Quotients: `Se`/`Sf`/`Sef` set the grouplikes to 1, `Gef` adds `De·Df − 1`.
pub fn build_quotient(p: &Presentation, kind: Kind) -> Result<Presentation, HopfError> {
    let (source, dropped): (Kind, &[&str]) = match kind {
        Kind::Se => (Kind::He, &["De", "DeInv"]),
        Kind::Sf => (Kind::Hf, &["Df", "DfInv"]),
        Kind::Sef => (Kind::Hef, &["De", "DeInv", "Df", "DfInv"]),
        Kind::Gef => (Kind::Hef, &[]),
        _ => return Err(HopfError::IncompatibleKind { expected: "se, sf, sef or gef".into(), got: kind }),
    };
    if p.kind != source {
        return Err(HopfError::IncompatibleKind { expected: source.to_string(), got: p.kind });
    }
    let mut q = if dropped.is_empty() { p.clone() } else { drop_symbols(p, dropped)? };
    q.kind = kind;
    if kind == Kind::Gef {
        let (de, df) = (q.gen("De")?, q.gen("Df")?);
        q.relations.push(&(&de * &df) - &NcPoly::one());
    }
    Ok(q)
}

/// Sends the named symbols to 1 and removes them from the alphabet.
fn drop_symbols(p: &Presentation, dropped: &[&str]) -> Result<Presentation, HopfError> {
    let keep: Vec<String> = p.alphabet.names().iter().filter(|s| !dropped.contains(&s.as_str())).cloned().collect();
    let alpha = Alphabet::new(keep)?;
    let map: Vec<Option<Symbol>> = p.alphabet.names().iter().map(|s| alpha.symbol(s).ok()).collect();
    let rw = |w: &Word| word(w.symbols().iter().filter_map(|&s| map[s as usize]));
    let rp = |x: &NcPoly| {
        let mut out = NcPoly::zero();
        for (w, c) in x.terms() {
            out.add_term(rw(w), c.clone());
        }
        out
    };
    let rmap = |m: &BTreeMap<Symbol, NcPoly>| -> BTreeMap<Symbol, NcPoly> {
        m.iter().filter_map(|(s, x)| Some((map[*s as usize]?, rp(x)))).collect()
    };
    let coproduct = p
        .coproduct
        .iter()
        .filter_map(|(s, t)| {
            let mut out = TensorPoly::zero();
            for ((l, r), c) in t.terms() {
                out.add_term(rw(l), rw(r), c.clone());
            }
            Some((map[*s as usize]?, out))
        })
        .collect();
    Ok(Presentation {
        kind: p.kind,
        n: p.n,
        m: p.m,
        degree: p.degree,
        alphabet: alpha,
        relations: p.relations.iter().map(rp).filter(|r| !r.is_zero()).collect(),
        coproduct,
        counit: p.counit.iter().filter_map(|(s, c)| Some((map[*s as usize]?, c.clone()))).collect(),
        antipode: p.antipode.as_ref().map(rmap),
        antipode_alt: p.antipode_alt.as_ref().map(rmap),
        e: p.e.clone(),
        f: p.f.clone(),
    })
}

fn need<'a>(x: Option<&'a MultilinearForm>, name: &str) -> Result<&'a MultilinearForm, HopfError> {
    x.ok_or_else(|| HopfError::Missing(format!("form {name}")))
}

/// Builds the presentation of the requested kind from the forms it needs.
pub fn build(kind: Kind, e: Option<&MultilinearForm>, f: Option<&MultilinearForm>, degree: Option<usize>) -> Result<Presentation, HopfError> {
    match kind {
        Kind::He => build_he(need(e, "e")?),
        Kind::Hf => build_hf(need(f, "f")?),
        Kind::Hef => build_hef(need(e, "e")?, need(f, "f")?),
        Kind::Se => build_quotient(&build_he(need(e, "e")?)?, kind),
        Kind::Sf => build_quotient(&build_hf(need(f, "f")?)?, kind),
        Kind::Sef | Kind::Gef => build_quotient(&build_hef(need(e, "e")?, need(f, "f")?)?, kind),
        Kind::OM => build_om(need(e, "e")?, need(f, "f")?, degree.unwrap_or(2)),
        Kind::Ast => Err(HopfError::IncompatibleKind { expected: "a form-based kind".into(), got: kind }),
    }
}

/// The bialgebra coacting on `A(e,N)` and `A(f,N)`: relations
/// `Σ e_{λ I} μ_J z_{I J}` and `Σ f_{λ J} ν_I z_{I J}` over `λ ∈ [n]^{m−N}` and
/// bases `μ`, `ν` of the annihilators of the relation spaces.
pub fn build_om(e: &MultilinearForm, f: &MultilinearForm, degree: usize) -> Result<Presentation, HopfError> {
    same_shape(e, f)?;
    let (n, m) = (e.dim(), e.arity());
    let mu = koszul_dual_relations(e, degree)?;
    let nu = koszul_dual_relations(f, degree)?;
    let alpha = Alphabet::new(matrix_names("z", n))?;
    let z = sym_matrix(&alpha, "z", n);
    let mut relations = Vec::new();
    // `slice(w, λ)` holds the entries `w_{λ I}` indexed by `I`.
    let slice = |w: &MultilinearForm, lam: &[usize]| -> Vec<(Vec<usize>, Rational)> {
        w.entries()
            .iter()
            .filter(|(k, _)| k.starts_with(lam))
            .map(|(k, v)| (k[lam.len()..].to_vec(), v.clone()))
            .collect()
    };
    for (form, dual, rows_from_form) in [(e, &mu, true), (f, &nu, false)] {
        for lam in all_tuples(n, m - degree) {
            let s = slice(form, &lam);
            for t in &dual.basis {
                let mut r = NcPoly::zero();
                for (fi, fc) in &s {
                    for (ti, tc) in t.entries() {
                        let (is, js) = if rows_from_form { (fi, ti) } else { (ti, fi) };
                        let syms = is.iter().zip(js).map(|(&i, &j)| z[i][j]);
                        r.add_term(word(syms), fc * tc);
                    }
                }
                relations.push(r);
            }
        }
    }
    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    matrix_coproduct(&mut coproduct, &z, false);
    matrix_counit(&mut counit, &z);
    Ok(Presentation {
        kind: Kind::OM,
        n,
        m,
        degree: Some(degree),
        alphabet: alpha,
        relations,
        coproduct,
        counit,
        antipode: None,
        antipode_alt: None,
        e: Some(e.clone()),
        f: Some(f.clone()),
    })
}

/// Lexicographically least index tuple with a nonzero coefficient.
pub fn canonical_column(form: &MultilinearForm) -> Result<Vec<usize>, HopfError> {
    form.entries().keys().next().cloned().ok_or(HopfError::ZeroForm)
}

/// `g₁ = e_J⁻¹ Σ e_I z_{I J}` and `g₂ = f_J⁻¹ Σ f_I z_{J I}` for the given columns.
pub fn grouplike_pair(p: &Presentation, e_col: &[usize], f_col: &[usize]) -> Result<(NcPoly, NcPoly), HopfError> {
    let (e, f) = (p.form_e()?, p.form_f()?);
    let z = sym_matrix_checked(p, p.matrix_prefixes()[0])?;
    let (ec, fc) = (e.get(e_col), f.get(f_col));
    if ec.is_zero() || fc.is_zero() {
        return Err(HopfError::ZeroForm);
    }
    let g1 = contracted_product(e, &z, e_col, true, false).scale(&(Rational::one() / ec));
    let g2 = contracted_product(f, &z, f_col, false, false).scale(&(Rational::one() / fc));
    Ok((g1, g2))
}

/// `g₁`, `g₂` at the canonical columns of `e` and `f`.
pub fn grouplikes_om(p: &Presentation) -> Result<(NcPoly, NcPoly), HopfError> {
    let (e, f) = (p.form_e()?, p.form_f()?);
    grouplike_pair(p, &canonical_column(e)?, &canonical_column(f)?)
}

fn sym_matrix_checked(p: &Presentation, prefix: &str) -> Result<Vec<Vec<Symbol>>, HopfError> {
    (0..p.n)
        .map(|i| (0..p.n).map(|j| Ok(p.alphabet.symbol(&format!("{prefix}_{i}_{j}"))?)).collect())
        .collect()
}

/// The codeterminant `e_J⁻¹ Σ e_I M_{i₁j₁}⋯M_{i_mj_m}` at the canonical column, and
/// whether every column with `e_J ≠ 0` gives the same value.
pub fn codeterminant_numeric(e: &MultilinearForm, mat: &Matrix) -> Result<(Rational, bool), HopfError> {
    if mat.rows() != e.dim() || mat.cols() != e.dim() {
        return Err(HopfError::ShapeMismatch);
    }
    let value = |col: &[usize]| -> Rational {
        let s: Rational = e
            .entries()
            .iter()
            .map(|(idx, c)| idx.iter().zip(col).fold(c.clone(), |acc, (&i, &j)| acc * &mat[(i, j)]))
            .sum();
        s / e.get(col)
    };
    let canonical = canonical_column(e)?;
    let v = value(&canonical);
    let independent = e.entries().keys().all(|col| value(col) == v);
    Ok((v, independent))
}

/// The `n = 2`-style presentation of the quantum group of a skew-polynomial pair:
/// generators `u`, `D`, `DInv` with the commutation relations and the two
/// expressions of `D`.
pub fn build_ast(p: &Matrix, lambda: &Rational) -> Result<Presentation, HopfError> {
    let (e, f) = ast_forms(p, lambda)?;
    let n = p.rows();
    let mut names = matrix_names("u", n);
    names.extend(["D".to_string(), "DInv".to_string()]);
    let alpha = Alphabet::new(names)?;
    let u = sym_matrix(&alpha, "u", n);
    let (d, dinv) = (sym(&alpha, "D"), sym(&alpha, "DInv"));
    let one = Rational::one();
    let mut relations = Vec::new();
    for j in 0..n {
        for i in 0..=j {
            for be in 0..n {
                for al in 0..n {
                    let pab = &p[(al, be)];
                    let mut r = mono([u[j][be], u[i][al]], one.clone());
                    if i < j {
                        let pji = &p[(j, i)];
                        if be > al {
                            r.add_term(word([u[i][al], u[j][be]]), -(pji * pab));
                            r.add_term(word([u[i][be], u[j][al]]), -((lambda - &one) * pji));
                        } else {
                            r.add_term(word([u[i][al], u[j][be]]), -(lambda * pji * pab));
                        }
                    } else if be > al {
                        r.add_term(word([u[i][al], u[i][be]]), -pab.clone());
                    } else {
                        continue;
                    }
                    relations.push(r);
                }
            }
        }
    }
    let cols: Vec<usize> = (0..n).collect();
    relations.push(&mono([d], one.clone()) - &contracted_product(&e, &u, &cols, true, false));
    relations.push(&mono([d], one.clone()) - &contracted_product(&f, &u, &cols, false, false));
    relations.extend(inverse_pair(d, dinv));

    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    matrix_coproduct(&mut coproduct, &u, false);
    matrix_counit(&mut counit, &u);
    grouplike(&mut coproduct, &mut counit, d);
    grouplike(&mut coproduct, &mut counit, dinv);
    Ok(Presentation {
        kind: Kind::Ast,
        n,
        m: n,
        degree: Some(2),
        alphabet: alpha,
        relations,
        coproduct,
        counit,
        antipode: None,
        antipode_alt: None,
        e: Some(e),
        f: Some(f),
    })
}

/// Dictionaries between the skew-polynomial presentation and `𝓗(e_q, f_p)`.
pub fn ast_dictionaries(ast: &Presentation, hef: &Presentation) -> Result<(BTreeMap<String, NcPoly>, BTreeMap<String, NcPoly>), HopfError> {
    let mut to_hef = BTreeMap::new();
    let mut to_ast = BTreeMap::new();
    for name in matrix_names("u", ast.n) {
        to_hef.insert(name.clone(), hef.gen(&name)?);
        to_ast.insert(name.clone(), ast.gen(&name)?);
    }
    to_hef.insert("D".into(), hef.gen("De")?);
    to_hef.insert("DInv".into(), hef.gen("DeInv")?);
    to_ast.insert("De".into(), ast.gen("D")?);
    to_ast.insert("DeInv".into(), ast.gen("DInv")?);
    to_ast.insert("Df".into(), ast.gen("DInv")?);
    to_ast.insert("DfInv".into(), ast.gen("D")?);
    Ok((to_hef, to_ast))
}

/// An alternative polar: the canonical one plus a kernel vector in row (or column) 0.
/// Returns `None` when the polar is unique.
pub fn alternative_polar(form: &MultilinearForm, slot: Slot) -> Result<Option<MultilinearForm>, HopfError> {
    let (n, m) = (form.dim(), form.arity());
    let base = polar(form, slot)?;
    let a = match slot {
        Slot::First => form.flattening(Slot::Last).transpose(),
        Slot::Last => form.flattening(Slot::First),
    };
    let Some(k) = a.kernel().into_iter().next() else { return Ok(None) };
    let mut out = base;
    for (idx, v) in k.into_iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let rest = crate::forms::index_tuple(idx, m - 1, n);
        let key: Vec<usize> = match slot {
            Slot::First => std::iter::once(0).chain(rest).collect(),
            Slot::Last => rest.into_iter().chain(std::iter::once(0)).collect(),
        };
        let cur = out.get(&key);
        out.set(key, cur + v)?;
    }
    Ok(Some(out))
}

/// The twist matrices `ℙ` of `e` and `ℚ` of `f`, when present.
pub fn twists(p: &Presentation) -> (Option<TwistMatrix>, Option<TwistMatrix>) {
    (p.e.as_ref().and_then(find_twist), p.f.as_ref().and_then(find_twist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::signature_form;
    use crate::rational::int;

    fn eps2() -> MultilinearForm {
        signature_form(2).unwrap()
    }

    #[test]
    fn relation_and_symbol_counts() {
        let he = build_he(&eps2()).unwrap();
        assert_eq!((he.alphabet.len(), he.relations.len()), (10, 14));
        let hef = build_hef(&eps2(), &eps2()).unwrap();
        assert_eq!((hef.alphabet.len(), hef.relations.len()), (8, 12));
        for p in [&he, &hef, &build_hf(&eps2()).unwrap()] {
            assert!(p.counit_violations().is_empty());
        }
    }

    #[test]
    fn quotients() {
        let hef = build_hef(&eps2(), &eps2()).unwrap();
        let sef = build_quotient(&hef, Kind::Sef).unwrap();
        assert_eq!(sef.alphabet.len(), 4);
        assert_eq!(sef.relations.len(), 8);
        assert!(sef.counit_violations().is_empty());
        let gef = build_quotient(&hef, Kind::Gef).unwrap();
        assert_eq!(gef.relations.len(), 13);
        assert!(build_quotient(&hef, Kind::Se).is_err());
    }

    #[test]
    fn antipode_for_bilinear_forms_is_conjugated_transpose() {
        // S(𝕌) = De⁻¹ E⁻¹ 𝕌ᵀ E for m = 2.
        let e = MultilinearForm::from_entries(2, 2, [(vec![0, 1], int(1)), (vec![1, 0], int(-3))]).unwrap();
        let hef = build_hef(&e, &eps2()).unwrap();
        let em = e.flattening(Slot::First);
        let einv = em.inverse().unwrap();
        let u = hef.matrix("u").unwrap();
        let dinv = hef.gen("DeInv").unwrap();
        let s = hef.antipode.as_ref().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut expect = NcPoly::zero();
                for k in 0..2 {
                    for l in 0..2 {
                        expect.add_scaled(&(&dinv * &u[l][k]), &(&einv[(i, k)] * &em[(l, j)]));
                    }
                }
                let sym = hef.alphabet.symbol(&format!("u_{i}_{j}")).unwrap();
                assert_eq!(s[&sym], expect);
            }
        }
    }

    #[test]
    fn codeterminant_of_signature_is_determinant() {
        let m = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(codeterminant_numeric(&eps2(), &m).unwrap(), (int(-2), true));
        assert_eq!(codeterminant_numeric(&eps2(), &Matrix::identity(2)).unwrap().0, int(1));
        assert!(codeterminant_numeric(&MultilinearForm::zero(2, 2).unwrap(), &m).is_err());
    }

    #[test]
    fn om_counts_and_grouplikes() {
        let om = build_om(&eps2(), &eps2(), 2).unwrap();
        assert_eq!(om.relations.len(), 6);
        assert!(om.counit_violations().is_empty());
        let col = canonical_column(&eps2()).unwrap();
        let (g1, _) = grouplike_pair(&om, &col, &col).unwrap();
        let z = om.matrix("z").unwrap();
        assert_eq!(g1, &(&z[0][0] * &z[1][1]) - &(&z[1][0] * &z[0][1]));
    }

    #[test]
    fn ast_presentation_counts() {
        let mut p = Matrix::from_i64(&[&[1, 2], &[1, 1]]);
        p[(1, 0)] = crate::rational::frac(1, 2);
        let ast = build_ast(&p, &int(3)).unwrap();
        // 4 + 1 + 1 commutation relations, two D expressions and two inverse relations.
        assert_eq!(ast.relations.len(), 4 + 2 + 4);
        assert!(ast.counit_violations().is_empty());
        assert!(build_ast(&p, &int(-1)).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in Kind::ALL {
            assert_eq!(k.as_str().parse::<Kind>().unwrap(), k);
        }
        assert!("xyz".parse::<Kind>().is_err());
    }
}
