//! Certified checks of Hopf-algebra identities modulo a truncated ideal.

use super::{
    alternative_polar, build_he, build_hf, matrix_c, matrix_d, sym_matrix_checked, twists, HopfError, Kind,
    Presentation,
};
use crate::forms::{odot, polar, star, Slot};
use crate::linalg::Matrix;
use crate::ncpoly::{verify_certificate, Alphabet, MembershipCertificate, NcPoly, Symbol, TensorPoly, TruncatedIdeal};
use crate::rational::Rational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Proved,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proved => "proved",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// One identity `target ≡ 0`.
///
/// `Proved` carries a certificate unless the identity was decided by exact
/// evaluation (counit and character checks). `Inconclusive` means the target
/// is outside the truncated span at `bound_used`; `residual` is its reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub target: NcPoly,
    pub certificate: Option<MembershipCertificate>,
    pub residual: Option<NcPoly>,
    pub bound_used: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub kind: Kind,
    /// Alphabet of the presentation whose ideal the targets live in.
    pub alphabet: Alphabet,
    pub checks: Vec<Check>,
    pub claims: Vec<String>,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        let has = |s| self.checks.iter().any(|c| c.status == s);
        if has(Status::Refuted) {
            Status::Refuted
        } else if has(Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Proved
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// A presentation with its truncated ideal; components are shared by all suites.
pub struct Verifier<'a> {
    pres: &'a Presentation,
    ideal: TruncatedIdeal,
}

impl<'a> Verifier<'a> {
    pub fn new(pres: &'a Presentation, max_len: usize) -> Self {
        let symbols: BTreeSet<Symbol> = (0..pres.alphabet.len() as Symbol).collect();
        Verifier { pres, ideal: TruncatedIdeal::with_symbols(pres.relations.clone(), max_len, symbols) }
    }

    pub fn presentation(&self) -> &Presentation {
        self.pres
    }

    pub fn max_len(&self) -> usize {
        self.ideal.max_len()
    }

    pub fn prove(&self, name: String, target: NcPoly) -> Check {
        let start = Instant::now();
        let bound = self.max_len();
        // Targets beyond the bound or in oversized components stay inconclusive without a residual.
        let (status, certificate, residual) = match self.ideal.certify(&target) {
            Ok(Some(c)) => (Status::Proved, Some(c), None),
            Ok(None) => (Status::Inconclusive, None, self.ideal.normal_form(&target).ok()),
            Err(_) => (Status::Inconclusive, None, None),
        };
        Check { name, status, target, certificate, residual, bound_used: bound, elapsed: start.elapsed() }
    }

    pub fn prove_all(&self, targets: Vec<(String, NcPoly)>) -> Vec<Check> {
        targets.into_par_iter().map(|(n, t)| self.prove(n, t)).collect()
    }

    fn report(&self, suite: &str, targets: Vec<(String, NcPoly)>, claims: Vec<String>) -> VerificationReport {
        let mut checks = counit_checks(self.pres, self.max_len());
        checks.extend(self.prove_all(targets));
        VerificationReport { suite: suite.into(), kind: self.pres.kind, alphabet: self.pres.alphabet.clone(), checks, claims }
    }

    fn name(&self, s: Symbol) -> &str {
        self.pres.alphabet.name(s)
    }

    /// `S(r) ∈ I` for each relation, and `S(x₁)x₂ = ε(x) = x₁S(x₂)` on generators.
    pub fn antipode(&self) -> Result<VerificationReport, HopfError> {
        let p = self.pres;
        p.antipode.as_ref().ok_or_else(|| HopfError::Missing("antipode".into()))?;
        let mut targets = Vec::new();
        for (k, r) in p.relations.iter().enumerate() {
            targets.push((format!("S(relation {k})"), p.antipode_of(r)?));
        }
        for &x in p.coproduct.keys() {
            let dx = &p.coproduct[&x];
            let eps = NcPoly::constant(p.counit.get(&x).cloned().unwrap_or_else(Rational::zero));
            let (mut left, mut right) = (NcPoly::zero(), NcPoly::zero());
            for ((l, r), c) in dx.terms() {
                let (lp, rp) = (NcPoly::term(l.clone(), Rational::one()), NcPoly::term(r.clone(), Rational::one()));
                left.add_scaled(&(&p.antipode_of(&lp)? * &rp), c);
                right.add_scaled(&(&lp * &p.antipode_of(&rp)?), c);
            }
            let name = self.name(x);
            targets.push((format!("S(x1)x2 = eps at {name}"), &left - &eps));
            targets.push((format!("x1S(x2) = eps at {name}"), &right - &eps));
        }
        Ok(self.report("antipode", targets, Vec::new()))
    }

    /// `ℂ𝕌 = 𝟙`, `𝕌𝔻 = 𝟙`, `ℂ = 𝔻`, and independence of the polars chosen.
    pub fn inverse_lemma(&self) -> Result<VerificationReport, HopfError> {
        let p = self.pres;
        require_kind(p, &[Kind::Hef, Kind::Sef, Kind::Gef])?;
        let (e, f) = (p.form_e()?, p.form_f()?);
        let et = polar(e, Slot::First)?;
        let ft = polar(f, Slot::Last)?;
        let c = matrix_c(p, e, &et)?;
        let d = matrix_d(p, f, &ft)?;
        let u = p.matrix("u")?;
        let n = p.n;
        let mut targets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let id = NcPoly::constant(if i == j { Rational::one() } else { Rational::zero() });
                let cu = (0..n).fold(NcPoly::zero(), |acc, k| &acc + &(&c[i][k] * &u[k][j]));
                let ud = (0..n).fold(NcPoly::zero(), |acc, k| &acc + &(&u[i][k] * &d[k][j]));
                targets.push((format!("(CU - 1)[{i},{j}]"), &cu - &id));
                targets.push((format!("(UD - 1)[{i},{j}]"), &ud - &id));
                targets.push((format!("(C - D)[{i},{j}]"), &c[i][j] - &d[i][j]));
            }
        }
        if let Some(et2) = alternative_polar(e, Slot::First)? {
            let c2 = matrix_c(p, e, &et2)?;
            for i in 0..n {
                for j in 0..n {
                    targets.push((format!("(C - C')[{i},{j}]"), &c[i][j] - &c2[i][j]));
                }
            }
        }
        if let Some(ft2) = alternative_polar(f, Slot::Last)? {
            let d2 = matrix_d(p, f, &ft2)?;
            for i in 0..n {
                for j in 0..n {
                    targets.push((format!("(D - D')[{i},{j}]"), &d[i][j] - &d2[i][j]));
                }
            }
        }
        Ok(self.report("inverse", targets, Vec::new()))
    }

    /// `D S²(x) D⁻¹ = η(x)` for the twist automorphisms. When a twist is scalar,
    /// also tries to certify that its `D` is central and `S² = id`, claiming "involutory" on success.
    pub fn s2_twist(&self) -> Result<VerificationReport, HopfError> {
        let p = self.pres;
        let s = p.antipode.as_ref().ok_or_else(|| HopfError::Missing("antipode".into()))?;
        let s2 = |x: &NcPoly| {
            let once = x.anti_substitute(&|y| s.get(&y).cloned());
            once.anti_substitute(&|y| s.get(&y).cloned())
        };
        let (pe, qf) = twists(p);
        let mut sides = Vec::new();
        if p.kind.uses_e() {
            let pm = pe.ok_or_else(|| HopfError::NotPreregular("e".into()))?;
            sides.push(("e", "De", "DeInv", pm.inverse().clone(), pm.matrix().clone()));
        }
        if p.kind.uses_f() {
            let qm = qf.ok_or_else(|| HopfError::NotPreregular("f".into()))?;
            sides.push(("f", "Df", "DfInv", qm.inverse().transpose(), qm.matrix().transpose()));
        }
        let gens: Vec<(String, Vec<Vec<Symbol>>)> = p
            .matrix_prefixes()
            .iter()
            .map(|pre| Ok((pre.to_string(), sym_matrix_checked(p, pre)?)))
            .collect::<Result<_, HopfError>>()?;
        let n = p.n;
        let mut targets = Vec::new();
        let mut involution_candidates = Vec::new();
        for (label, d, dinv, left, right) in &sides {
            let (dp, dip) = match (p.gen(d), p.gen(dinv)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => (NcPoly::one(), NcPoly::one()),
            };
            for (pre, x) in &gens {
                for i in 0..n {
                    for j in 0..n {
                        let sx = s2(&NcPoly::symbol(x[i][j]));
                        let eta = super::conjugated(x, left, right, i, j);
                        targets.push((format!("S2 twist ({label}) at {pre}_{i}_{j}"), &(&(&dp * &sx) * &dip) - &eta));
                    }
                }
            }
            if left.as_scalar().is_some() {
                involution_candidates.push(d.to_string());
            }
        }
        let mut report = self.report("s2", targets, Vec::new());
        if involution_candidates.is_empty() {
            return Ok(report);
        }
        // D is central, so S² = η = id.
        let mut extra = Vec::new();
        let others: Vec<Symbol> = (0..p.alphabet.len() as Symbol).collect();
        for d in &involution_candidates {
            if let Ok(ds) = p.alphabet.symbol(d) {
                for &y in &others {
                    let (dp, yp) = (NcPoly::symbol(ds), NcPoly::symbol(y));
                    extra.push((format!("[{d}, {}]", self.name(y)), &(&dp * &yp) - &(&yp * &dp)));
                }
            }
        }
        for (pre, x) in &gens {
            for (i, row) in x.iter().enumerate() {
                for (j, &xs) in row.iter().enumerate() {
                    let xp = NcPoly::symbol(xs);
                    extra.push((format!("S2 - id at {pre}_{i}_{j}"), &s2(&xp) - &xp));
                }
            }
        }
        // These checks only back the optional claim, so they are reported only when it holds.
        let checks = self.prove_all(extra);
        if checks.iter().all(|c| c.status == Status::Proved) {
            report.checks.extend(checks);
            report.claims.push("involutory".into());
        }
        Ok(report)
    }

    /// Centrality of the codeterminants and the intertwining relations with `f⋆e` and `e⋆f`.
    pub fn central_codet(&self) -> Result<VerificationReport, HopfError> {
        let p = self.pres;
        require_kind(p, &[Kind::Hef, Kind::Gef])?;
        let (e, f) = (p.form_e()?, p.form_f()?);
        let u = p.matrix("u")?;
        let [de, dei, df, dfi] = ["De", "DeInv", "Df", "DfInv"].map(|s| p.gen(s)).map(Result::unwrap);
        let nonzero_pairing = !odot(e, f)?.is_zero();
        let fe = star(f, e)?;
        let ef_t = star(e, f)?.transpose();
        let n = p.n;
        let mut targets = Vec::new();
        let mut claims = Vec::new();
        if nonzero_pairing {
            targets.push(("De Df - 1".to_string(), &(&de * &df) - &NcPoly::one()));
        }
        let side = |m: &Matrix, right: &NcPoly, left: &NcPoly, i: usize, j: usize| {
            let mut out = NcPoly::zero();
            for k in 0..n {
                out.add_scaled(&(&u[i][k] * right), &m[(k, j)]);
                out.add_scaled(&(left * &u[k][j]), &-&m[(i, k)]);
            }
            out
        };
        for i in 0..n {
            for j in 0..n {
                targets.push((format!("U(f*e)De - DfInv(f*e)U [{i},{j}]"), side(&fe, &de, &dfi, i, j)));
                targets.push((format!("U(e*f)^T Df - DeInv(e*f)^T U [{i},{j}]"), side(&ef_t, &df, &dei, i, j)));
            }
        }
        let scalar = |m: &Matrix| m.as_scalar().is_some_and(|c| !c.is_zero());
        if nonzero_pairing && (scalar(&fe) || scalar(&ef_t)) {
            for i in 0..n {
                for j in 0..n {
                    targets.push((format!("[De, u_{i}_{j}]"), &(&de * &u[i][j]) - &(&u[i][j] * &de)));
                }
            }
            claims.push("De central".into());
        }
        let mut report = self.report("central", targets, Vec::new());
        if report.status() == Status::Proved {
            report.claims = claims;
        }
        Ok(report)
    }

    /// The character `Φ` kills the relations and `S²(x) = Φ(x₁) x₂ Φ(S(x₃))`.
    pub fn sovereign(&self) -> Result<VerificationReport, HopfError> {
        let p = self.pres;
        let (pe, qf) = twists(p);
        let mut values: BTreeMap<Symbol, Rational> = BTreeMap::new();
        let mut assign = |pre: &str, m: &Matrix| -> Result<(), HopfError> {
            let x = sym_matrix_checked(p, pre)?;
            for (i, row) in x.iter().enumerate() {
                for (j, &s) in row.iter().enumerate() {
                    values.insert(s, m[(i, j)].clone());
                }
            }
            Ok(())
        };
        match p.kind {
            Kind::Se => {
                let t = pe.ok_or_else(|| HopfError::NotPreregular("e".into()))?;
                assign("a", t.inverse())?;
                assign("b", t.matrix())?;
            }
            Kind::Sf => {
                let t = qf.ok_or_else(|| HopfError::NotPreregular("f".into()))?;
                assign("a", &t.inverse().transpose())?;
                assign("b", &t.matrix().transpose())?;
            }
            Kind::Sef => {
                let (tp, tq) = (
                    pe.ok_or_else(|| HopfError::NotPreregular("e".into()))?,
                    qf.ok_or_else(|| HopfError::NotPreregular("f".into()))?,
                );
                if *tp.matrix() != tq.matrix().transpose() {
                    return Err(HopfError::HypothesisFailure("the twist of e differs from the transposed twist of f".into()));
                }
                assign("u", tp.inverse())?;
            }
            other => return Err(HopfError::IncompatibleKind { expected: "se, sf or sef".into(), got: other }),
        }
        let phi = |s: Symbol| values.get(&s).cloned().unwrap_or_else(Rational::zero);
        let start = Instant::now();
        let bound = self.max_len();
        let mut checks = counit_checks(p, bound);
        for (k, r) in p.relations.iter().enumerate() {
            let v = r.eval(&phi);
            checks.push(Check {
                name: format!("Phi(relation {k})"),
                status: if v.is_zero() { Status::Proved } else { Status::Refuted },
                target: r.clone(),
                certificate: None,
                residual: (!v.is_zero()).then(|| NcPoly::constant(v)),
                bound_used: bound,
                elapsed: start.elapsed(),
            });
        }
        let mut targets = Vec::new();
        for &x in p.coproduct.keys() {
            let xp = NcPoly::symbol(x);
            let s2 = p.antipode_of(&p.antipode_of(&xp)?)?;
            let mut rhs = NcPoly::zero();
            for ((l, r), c) in p.coproduct[&x].terms() {
                let rphi = p.antipode_of(&NcPoly::term(r.clone(), Rational::one()))?.eval(&phi);
                if rphi.is_zero() {
                    continue;
                }
                for ((l1, l2), c2) in p.coproduct_of(&NcPoly::term(l.clone(), Rational::one()))?.terms() {
                    let l1phi = NcPoly::term(l1.clone(), Rational::one()).eval(&phi);
                    rhs.add_term(l2.clone(), c * c2 * l1phi * &rphi);
                }
            }
            targets.push((format!("S2 = Phi-conjugation at {}", self.name(x)), &s2 - &rhs));
        }
        checks.extend(self.prove_all(targets));
        Ok(VerificationReport { suite: "sovereign".into(), kind: p.kind, alphabet: p.alphabet.clone(), checks, claims: Vec::new() })
    }

    /// `pa`'s relations, mapped through `dict`, lie in this presentation's ideal.
    pub fn images(&self, suite: &str, pa: &Presentation, dict: &BTreeMap<String, NcPoly>) -> Result<VerificationReport, HopfError> {
        let images = dictionary_images(pa, self.pres, dict)?;
        let targets = pa
            .relations
            .iter()
            .enumerate()
            .map(|(k, r)| (format!("{} relation {k}", pa.kind), r.substitute(&|s| Some(images[s as usize].clone()))))
            .collect();
        Ok(self.report(suite, targets, Vec::new()))
    }

    /// Runs a named suite; `all` runs every suite that applies to the kind.
    pub fn suite(&self, name: &str) -> Result<Vec<VerificationReport>, HopfError> {
        let k = self.pres.kind;
        Ok(match name {
            "antipode" => vec![self.antipode()?],
            "inverse" => vec![self.inverse_lemma()?],
            "s2" => vec![self.s2_twist()?],
            "central" => vec![self.central_codet()?],
            "sovereign" => vec![self.sovereign()?],
            "pushout" => vec![self.pushout()?],
            "counit" => vec![self.report("counit", Vec::new(), Vec::new())],
            "all" => {
                let mut out = Vec::new();
                if self.pres.antipode.is_some() {
                    out.push(self.antipode()?);
                    out.push(self.s2_twist()?);
                } else {
                    out.push(self.report("counit", Vec::new(), Vec::new()));
                }
                if matches!(k, Kind::Hef | Kind::Sef | Kind::Gef) {
                    out.push(self.inverse_lemma()?);
                }
                if matches!(k, Kind::Hef | Kind::Gef) {
                    out.push(self.central_codet()?);
                }
                if k == Kind::Hef {
                    out.push(self.pushout()?);
                }
                if matches!(k, Kind::Se | Kind::Sf) || (k == Kind::Sef && sovereign_applies(self.pres)) {
                    out.push(self.sovereign()?);
                }
                out
            }
            other => return Err(HopfError::Missing(format!("suite `{other}`"))),
        })
    }

    /// The canonical maps `𝓗(e) → 𝓗(e,f) ← 𝓗(f)` respect the relations.
    pub fn pushout(&self) -> Result<VerificationReport, HopfError> {
        let p = self.pres;
        require_kind(p, &[Kind::Hef])?;
        let he = build_he(p.form_e()?)?;
        let hf = build_hf(p.form_f()?)?;
        let s = p.antipode.as_ref().ok_or_else(|| HopfError::Missing("antipode".into()))?;
        let s_alt = p.antipode_alt.as_ref().unwrap_or(s);
        let mut targets = Vec::new();
        for (src, anti, label) in [(&he, s, "He"), (&hf, s_alt, "Hf")] {
            let mut dict = BTreeMap::new();
            for i in 0..p.n {
                for j in 0..p.n {
                    let u = p.alphabet.symbol(&format!("u_{i}_{j}"))?;
                    dict.insert(format!("a_{i}_{j}"), NcPoly::symbol(u));
                    dict.insert(format!("b_{i}_{j}"), anti[&u].clone());
                }
            }
            let images = dictionary_images(src, p, &dict)?;
            for (k, r) in src.relations.iter().enumerate() {
                targets.push((format!("{label} relation {k}"), r.substitute(&|x| Some(images[x as usize].clone()))));
            }
        }
        Ok(self.report("pushout", targets, Vec::new()))
    }
}

fn sovereign_applies(p: &Presentation) -> bool {
    match twists(p) {
        (Some(a), Some(b)) => *a.matrix() == b.matrix().transpose(),
        _ => false,
    }
}

fn require_kind(p: &Presentation, kinds: &[Kind]) -> Result<(), HopfError> {
    if kinds.contains(&p.kind) {
        return Ok(());
    }
    let expected = kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(", ");
    Err(HopfError::IncompatibleKind { expected, got: p.kind })
}

/// Image of each symbol of `src`: the dictionary entry, else the same-named symbol of `dst`.
fn dictionary_images(src: &Presentation, dst: &Presentation, dict: &BTreeMap<String, NcPoly>) -> Result<Vec<NcPoly>, HopfError> {
    src.alphabet
        .names()
        .iter()
        .map(|name| match dict.get(name) {
            Some(img) => Ok(img.clone()),
            None => Ok(dst.gen(name)?),
        })
        .collect()
}

/// Exact evaluation of the counit on every relation.
fn counit_checks(p: &Presentation, bound: usize) -> Vec<Check> {
    let start = Instant::now();
    let bad = p.counit_violations();
    if bad.is_empty() {
        return vec![Check {
            name: "counit".into(),
            status: Status::Proved,
            target: NcPoly::zero(),
            certificate: None,
            residual: None,
            bound_used: bound,
            elapsed: start.elapsed(),
        }];
    }
    bad.into_iter()
        .map(|(k, v)| Check {
            name: format!("counit of relation {k}"),
            status: Status::Refuted,
            target: p.relations[k].clone(),
            certificate: None,
            residual: Some(NcPoly::constant(v)),
            bound_used: bound,
            elapsed: start.elapsed(),
        })
        .collect()
}

pub fn verify_antipode(p: &Presentation, max_len: usize) -> Result<VerificationReport, HopfError> {
    Verifier::new(p, max_len).antipode()
}

pub fn verify_inverse_lemma(p: &Presentation, max_len: usize) -> Result<VerificationReport, HopfError> {
    Verifier::new(p, max_len).inverse_lemma()
}

pub fn verify_s2_twist(p: &Presentation, max_len: usize) -> Result<VerificationReport, HopfError> {
    Verifier::new(p, max_len).s2_twist()
}

pub fn verify_central_codet(p: &Presentation, max_len: usize) -> Result<VerificationReport, HopfError> {
    Verifier::new(p, max_len).central_codet()
}

pub fn verify_pushout_maps(p: &Presentation, max_len: usize) -> Result<VerificationReport, HopfError> {
    Verifier::new(p, max_len).pushout()
}

pub fn sovereign_check(p: &Presentation, max_len: usize) -> Result<VerificationReport, HopfError> {
    Verifier::new(p, max_len).sovereign()
}

/// Relations of `pa` mapped through `dict` into the ideal of `pb`.
pub fn equivalence_check(
    pa: &Presentation,
    pb: &Presentation,
    dict: &BTreeMap<String, NcPoly>,
    max_len: usize,
) -> Result<VerificationReport, HopfError> {
    Verifier::new(pb, max_len).images("equiv", pa, dict)
}

/// Re-validates every certificate and exact evaluation in a report without searching.
/// Returns the names of checks that fail to re-validate.
pub fn recheck(report: &VerificationReport, p: &Presentation) -> Vec<String> {
    let violations: BTreeSet<usize> = p.counit_violations().into_iter().map(|(k, _)| k).collect();
    report
        .checks
        .iter()
        .filter(|c| {
            if c.status != Status::Proved {
                return false;
            }
            match &c.certificate {
                Some(cert) => !verify_certificate(&c.target, &p.relations, cert),
                None if c.name == "counit" => !violations.is_empty(),
                None => false,
            }
        })
        .map(|c| c.name.clone())
        .collect()
}

/// Whether the ideal generated by `generators` (on top of the relations) is a
/// biideal: `ε` kills it and `(π⊗π)Δ` kills it, `π` being the truncated quotient map.
pub fn biideal_check(p: &Presentation, generators: &[NcPoly], max_len: usize) -> Result<bool, HopfError> {
    let mut rels = p.relations.clone();
    rels.extend(generators.iter().cloned());
    let symbols: BTreeSet<Symbol> = (0..p.alphabet.len() as Symbol).collect();
    let ideal = TruncatedIdeal::with_symbols(rels, max_len, symbols);
    for g in generators {
        if !p.counit_of(g).is_zero() {
            return Ok(false);
        }
        let mut image = TensorPoly::zero();
        for ((l, r), c) in p.coproduct_of(g)?.terms() {
            let nl = ideal.normal_form(&NcPoly::term(l.clone(), Rational::one()))?;
            let nr = ideal.normal_form(&NcPoly::term(r.clone(), Rational::one()))?;
            for (wl, cl) in nl.terms() {
                for (wr, cr) in nr.terms() {
                    image.add_term(wl.clone(), wr.clone(), c * cl * cr);
                }
            }
        }
        if !image.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::signature_form;
    use crate::hopf::{build_hef, build_om, build_quotient};
    use crate::rational::int;

    #[test]
    fn hef_signature_suites_prove_at_seven() {
        let e = signature_form(2).unwrap();
        let hef = build_hef(&e, &e).unwrap();
        let v = Verifier::new(&hef, 7);
        for r in v.suite("all").unwrap() {
            assert_eq!(r.status(), Status::Proved, "suite {} {:?}", r.suite, r.checks.iter().filter(|c| c.status != Status::Proved).map(|c| &c.name).collect::<Vec<_>>());
            assert!(recheck(&r, &hef).is_empty());
        }
    }

    #[test]
    fn relation_images_need_length_seven() {
        let e = signature_form(2).unwrap();
        let hef = build_hef(&e, &e).unwrap();
        let r = verify_antipode(&hef, 6).unwrap();
        let open: Vec<_> = r.checks.iter().filter(|c| c.status != Status::Proved).map(|c| c.name.as_str()).collect();
        assert_eq!(open.len(), 8);
        assert!(open.iter().all(|n| n.starts_with("S(relation")));
        assert!(r.checks.iter().filter(|c| c.status == Status::Inconclusive).all(|c| c.residual.as_ref().is_some_and(|x| !x.is_zero())));
    }

    #[test]
    fn s2_claims_involution_only_with_central_d() {
        let e = signature_form(2).unwrap();
        let f = crate::forms::MultilinearForm::from_entries(2, 2, [(vec![0, 1], int(1)), (vec![1, 0], int(-3))]).unwrap();
        let r = verify_s2_twist(&build_hef(&e, &f).unwrap(), 6).unwrap();
        assert_eq!(r.status(), Status::Proved);
        assert!(r.claims.is_empty());
        let r = verify_s2_twist(&build_hef(&e, &e).unwrap(), 6).unwrap();
        assert_eq!(r.claims, vec!["involutory".to_string()]);
    }

    #[test]
    fn tampered_counit_is_refuted() {
        let e = signature_form(2).unwrap();
        let mut hef = build_hef(&e, &e).unwrap();
        hef.relations[0] = &hef.relations[0] + &NcPoly::one();
        let r = verify_antipode(&hef, 4).unwrap();
        assert_eq!(r.status(), Status::Refuted);
        assert_eq!(r.checks[0].residual, Some(NcPoly::constant(int(1))));
    }

    #[test]
    fn low_bound_is_inconclusive() {
        let e = signature_form(2).unwrap();
        let hef = build_hef(&e, &e).unwrap();
        assert_eq!(verify_antipode(&hef, 3).unwrap().status(), Status::Inconclusive);
    }

    #[test]
    fn biideals_of_matrix_bialgebra() {
        let e = signature_form(2).unwrap();
        let om = build_om(&e, &e, 2).unwrap();
        let g = |s: &str| om.gen(s).unwrap();
        assert!(!biideal_check(&om, &[&g("z_0_0") - &g("z_1_1")], 4).unwrap());
        assert!(biideal_check(&om, &[&g("z_0_0") - &NcPoly::one(), g("z_0_1")], 4).unwrap());
    }

    #[test]
    fn sovereign_needs_matching_twists() {
        let e = signature_form(2).unwrap();
        let sef = build_quotient(&build_hef(&e, &e).unwrap(), Kind::Sef).unwrap();
        assert_eq!(sovereign_check(&sef, 5).unwrap().status(), Status::Proved);
    }
}
