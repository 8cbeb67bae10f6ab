//! JSON file formats. Rationals are canonical strings, words are lists of
//! symbol names, and maps are keyed by symbol name in sorted order.

use crate::forms::{FormError, MultilinearForm, PreregularityReport, TwistMatrix};
use crate::hopf::{Check, Kind, Presentation, Status, VerificationReport};
use crate::linalg::Matrix;
use crate::ncpoly::{Alphabet, MembershipCertificate, NcError, NcPoly, Summand, Symbol, TensorPoly, Word};
use crate::rational::{serde_str, Rational};
use crate::spalg::RelationSpace;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Duration;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error("invalid value: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> IoError {
    IoError::Invalid(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub idx: Vec<usize>,
    #[serde(with = "serde_str")]
    pub val: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub dim: usize,
    pub arity: usize,
    pub entries: Vec<EntryFile>,
}

impl From<&MultilinearForm> for FormFile {
    fn from(f: &MultilinearForm) -> Self {
        FormFile {
            dim: f.dim(),
            arity: f.arity(),
            entries: f.entries().iter().map(|(idx, v)| EntryFile { idx: idx.clone(), val: v.clone() }).collect(),
        }
    }
}

impl TryFrom<&FormFile> for MultilinearForm {
    type Error = FormError;
    fn try_from(f: &FormFile) -> Result<Self, FormError> {
        MultilinearForm::from_entries(f.dim, f.arity, f.entries.iter().map(|e| (e.idx.clone(), e.val.clone())))
    }
}

pub fn form_to_json(f: &MultilinearForm) -> String {
    to_pretty(&FormFile::from(f))
}

pub fn form_from_json(s: &str) -> Result<MultilinearForm, IoError> {
    let file: FormFile = serde_json::from_str(s)?;
    Ok(MultilinearForm::try_from(&file)?)
}

/// Indented JSON with arrays of scalars kept on one line, ending in a newline.
pub fn to_pretty<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable value");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("scalar array"));
        }
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(key).expect("string key"));
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalar")),
    }
}

pub type MatrixFile = Vec<Vec<String>>;

pub fn matrix_to_file(m: &Matrix) -> MatrixFile {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn matrix_from_file(rows: &MatrixFile) -> Result<Matrix, IoError> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(invalid("matrix rows have different lengths"));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|x| crate::rational::parse(x).map_err(|e| invalid(e.to_string()))).collect())
        .collect::<Result<Vec<Vec<Rational>>, IoError>>()?;
    Ok(Matrix::from_rows(parsed))
}

pub fn matrix_from_json(s: &str) -> Result<Matrix, IoError> {
    matrix_from_file(&serde_json::from_str(s)?)
}

fn vector_file(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn vector_from_file(v: &[String]) -> Result<Vec<Rational>, IoError> {
    v.iter().map(|x| crate::rational::parse(x).map_err(|e| invalid(e.to_string()))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreregularityFile {
    pub preregular: bool,
    pub nondegenerate_first_slot: bool,
    pub nondegenerate_last_slot: bool,
    pub twist: Option<MatrixFile>,
    pub failure_witness: Option<Vec<String>>,
}

impl From<&PreregularityReport> for PreregularityFile {
    fn from(r: &PreregularityReport) -> Self {
        PreregularityFile {
            preregular: r.is_preregular(),
            nondegenerate_first_slot: r.nondegenerate_first_slot,
            nondegenerate_last_slot: r.nondegenerate_last_slot,
            twist: r.twist.as_ref().map(|t| matrix_to_file(t.matrix())),
            failure_witness: r.failure_witness.as_deref().map(vector_file),
        }
    }
}

impl TryFrom<&PreregularityFile> for PreregularityReport {
    type Error = IoError;
    fn try_from(f: &PreregularityFile) -> Result<Self, IoError> {
        let twist = match &f.twist {
            Some(m) => Some(TwistMatrix::new(matrix_from_file(m)?).ok_or_else(|| invalid("singular twist"))?),
            None => None,
        };
        Ok(PreregularityReport {
            nondegenerate_first_slot: f.nondegenerate_first_slot,
            nondegenerate_last_slot: f.nondegenerate_last_slot,
            twist,
            failure_witness: f.failure_witness.as_deref().map(vector_from_file).transpose()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpaceFile {
    pub degree: usize,
    pub dim: usize,
    pub relations: Vec<FormFile>,
}

impl From<&RelationSpace> for RelationSpaceFile {
    fn from(r: &RelationSpace) -> Self {
        RelationSpaceFile { degree: r.degree, dim: r.dim, relations: r.basis.iter().map(FormFile::from).collect() }
    }
}

impl TryFrom<&RelationSpaceFile> for RelationSpace {
    type Error = IoError;
    fn try_from(f: &RelationSpaceFile) -> Result<Self, IoError> {
        let basis = f.relations.iter().map(MultilinearForm::try_from).collect::<Result<Vec<_>, _>>()?;
        if basis.iter().any(|b| b.dim() != f.dim || b.arity() != f.degree) {
            return Err(invalid("relation shape differs from the header"));
        }
        Ok(RelationSpace { dim: f.dim, degree: f.degree, basis })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub word: Vec<String>,
    #[serde(with = "serde_str")]
    pub val: Rational,
}

/// A polynomial together with its alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub alphabet: Vec<String>,
    pub terms: Vec<TermFile>,
}

fn word_names(a: &Alphabet, w: &Word) -> Vec<String> {
    w.symbols().iter().map(|&s| a.name(s).to_string()).collect()
}

fn word_from_names(a: &Alphabet, names: &[String]) -> Result<Word, IoError> {
    Ok(Word(names.iter().map(|n| a.symbol(n)).collect::<Result<_, _>>()?))
}

pub fn terms_to_file(a: &Alphabet, p: &NcPoly) -> Vec<TermFile> {
    p.terms().iter().map(|(w, c)| TermFile { word: word_names(a, w), val: c.clone() }).collect()
}

pub fn terms_from_file(a: &Alphabet, terms: &[TermFile]) -> Result<NcPoly, IoError> {
    let mut p = NcPoly::zero();
    for t in terms {
        p.add_term(word_from_names(a, &t.word)?, t.val.clone());
    }
    Ok(p)
}

pub fn poly_to_file(a: &Alphabet, p: &NcPoly) -> PolyFile {
    PolyFile { alphabet: a.names().to_vec(), terms: terms_to_file(a, p) }
}

pub fn poly_from_file(f: &PolyFile) -> Result<(Alphabet, NcPoly), IoError> {
    let a = Alphabet::new(f.alphabet.clone())?;
    let p = terms_from_file(&a, &f.terms)?;
    Ok((a, p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorTermFile {
    pub left: Vec<String>,
    pub right: Vec<String>,
    #[serde(with = "serde_str")]
    pub val: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub kind: String,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub alphabet: Vec<String>,
    pub relations: Vec<Vec<TermFile>>,
    pub coproduct: BTreeMap<String, Vec<TensorTermFile>>,
    pub counit: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<BTreeMap<String, Vec<TermFile>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_alt: Option<BTreeMap<String, Vec<TermFile>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<FormFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<FormFile>,
}

fn symbol_map_to_file(a: &Alphabet, m: &BTreeMap<Symbol, NcPoly>) -> BTreeMap<String, Vec<TermFile>> {
    m.iter().map(|(s, p)| (a.name(*s).to_string(), terms_to_file(a, p))).collect()
}

fn symbol_map_from_file(a: &Alphabet, m: &BTreeMap<String, Vec<TermFile>>) -> Result<BTreeMap<Symbol, NcPoly>, IoError> {
    m.iter().map(|(k, v)| Ok((a.symbol(k)?, terms_from_file(a, v)?))).collect()
}

impl From<&Presentation> for PresentationFile {
    fn from(p: &Presentation) -> Self {
        let a = &p.alphabet;
        PresentationFile {
            kind: p.kind.to_string(),
            n: p.n,
            m: p.m,
            degree: p.degree,
            alphabet: a.names().to_vec(),
            relations: p.relations.iter().map(|r| terms_to_file(a, r)).collect(),
            coproduct: p
                .coproduct
                .iter()
                .map(|(s, t)| {
                    let terms = t
                        .terms()
                        .iter()
                        .map(|((l, r), c)| TensorTermFile { left: word_names(a, l), right: word_names(a, r), val: c.clone() })
                        .collect();
                    (a.name(*s).to_string(), terms)
                })
                .collect(),
            counit: p.counit.iter().map(|(s, c)| (a.name(*s).to_string(), c.to_string())).collect(),
            antipode: p.antipode.as_ref().map(|m| symbol_map_to_file(a, m)),
            antipode_alt: p.antipode_alt.as_ref().map(|m| symbol_map_to_file(a, m)),
            e: p.e.as_ref().map(FormFile::from),
            f: p.f.as_ref().map(FormFile::from),
        }
    }
}

impl TryFrom<&PresentationFile> for Presentation {
    type Error = IoError;
    fn try_from(f: &PresentationFile) -> Result<Self, IoError> {
        let a = Alphabet::new(f.alphabet.clone())?;
        let kind: Kind = f.kind.parse().map_err(invalid)?;
        let relations = f.relations.iter().map(|r| terms_from_file(&a, r)).collect::<Result<_, _>>()?;
        let mut coproduct = BTreeMap::new();
        for (k, terms) in &f.coproduct {
            let mut t = TensorPoly::zero();
            for term in terms {
                t.add_term(word_from_names(&a, &term.left)?, word_from_names(&a, &term.right)?, term.val.clone());
            }
            coproduct.insert(a.symbol(k)?, t);
        }
        let counit = f
            .counit
            .iter()
            .map(|(k, v)| Ok((a.symbol(k)?, crate::rational::parse(v).map_err(|e| invalid(e.to_string()))?)))
            .collect::<Result<_, IoError>>()?;
        let antipode = f.antipode.as_ref().map(|m| symbol_map_from_file(&a, m)).transpose()?;
        let antipode_alt = f.antipode_alt.as_ref().map(|m| symbol_map_from_file(&a, m)).transpose()?;
        let e = f.e.as_ref().map(MultilinearForm::try_from).transpose()?;
        let ff = f.f.as_ref().map(MultilinearForm::try_from).transpose()?;
        Ok(Presentation {
            kind,
            n: f.n,
            m: f.m,
            degree: f.degree,
            alphabet: a,
            relations,
            coproduct,
            counit,
            antipode,
            antipode_alt,
            e,
            f: ff,
        })
    }
}

pub fn presentation_to_json(p: &Presentation) -> String {
    to_pretty(&PresentationFile::from(p))
}

pub fn presentation_from_json(s: &str) -> Result<Presentation, IoError> {
    let file: PresentationFile = serde_json::from_str(s)?;
    Presentation::try_from(&file)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandFile {
    #[serde(with = "serde_str")]
    pub coef: Rational,
    pub left: Vec<String>,
    pub relation: usize,
    pub right: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckFile {
    pub name: String,
    pub status: String,
    pub target: Vec<TermFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<SummandFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<Vec<TermFile>>,
    pub bound_used: usize,
}

/// Timings are left out so that reports are reproducible byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub suite: String,
    pub kind: String,
    pub status: String,
    pub alphabet: Vec<String>,
    pub claims: Vec<String>,
    pub checks: Vec<CheckFile>,
}

fn parse_status(s: &str) -> Result<Status, IoError> {
    match s {
        "proved" => Ok(Status::Proved),
        "refuted" => Ok(Status::Refuted),
        "inconclusive" => Ok(Status::Inconclusive),
        other => Err(invalid(format!("unknown status `{other}`"))),
    }
}

impl From<&VerificationReport> for ReportFile {
    fn from(r: &VerificationReport) -> Self {
        let a = &r.alphabet;
        ReportFile {
            suite: r.suite.clone(),
            kind: r.kind.to_string(),
            status: r.status().to_string(),
            alphabet: a.names().to_vec(),
            claims: r.claims.clone(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckFile {
                    name: c.name.clone(),
                    status: c.status.to_string(),
                    target: terms_to_file(a, &c.target),
                    certificate: c.certificate.as_ref().map(|cert| {
                        cert.summands
                            .iter()
                            .map(|s| SummandFile {
                                coef: s.coef.clone(),
                                left: word_names(a, &s.left),
                                relation: s.relation,
                                right: word_names(a, &s.right),
                            })
                            .collect()
                    }),
                    residual: c.residual.as_ref().map(|p| terms_to_file(a, p)),
                    bound_used: c.bound_used,
                })
                .collect(),
        }
    }
}

impl TryFrom<&ReportFile> for VerificationReport {
    type Error = IoError;
    fn try_from(f: &ReportFile) -> Result<Self, IoError> {
        let a = Alphabet::new(f.alphabet.clone())?;
        let checks = f
            .checks
            .iter()
            .map(|c| {
                let certificate = c
                    .certificate
                    .as_ref()
                    .map(|ss| {
                        let summands = ss
                            .iter()
                            .map(|s| {
                                Ok(Summand {
                                    coef: s.coef.clone(),
                                    left: word_from_names(&a, &s.left)?,
                                    relation: s.relation,
                                    right: word_from_names(&a, &s.right)?,
                                })
                            })
                            .collect::<Result<_, IoError>>()?;
                        Ok::<_, IoError>(MembershipCertificate { summands })
                    })
                    .transpose()?;
                Ok(Check {
                    name: c.name.clone(),
                    status: parse_status(&c.status)?,
                    target: terms_from_file(&a, &c.target)?,
                    certificate,
                    residual: c.residual.as_ref().map(|r| terms_from_file(&a, r)).transpose()?,
                    bound_used: c.bound_used,
                    elapsed: Duration::ZERO,
                })
            })
            .collect::<Result<_, IoError>>()?;
        Ok(VerificationReport {
            suite: f.suite.clone(),
            kind: f.kind.parse().map_err(invalid)?,
            alphabet: a,
            checks,
            claims: f.claims.clone(),
        })
    }
}

pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    to_pretty(&reports.iter().map(ReportFile::from).collect::<Vec<_>>())
}

pub fn reports_from_json(s: &str) -> Result<Vec<VerificationReport>, IoError> {
    let files: Vec<ReportFile> = serde_json::from_str(s)?;
    files.iter().map(VerificationReport::try_from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::signature_form;
    use crate::hopf::{build_hef, verify_inverse_lemma};
    use crate::rational::frac;

    #[test]
    fn form_round_trip_and_unknown_keys() {
        let mut e = signature_form(2).unwrap();
        e.set(vec![0, 0], frac(-3, 4)).unwrap();
        let s = form_to_json(&e);
        assert!(s.contains("\"-3/4\""));
        assert_eq!(form_from_json(&s).unwrap(), e);
        assert!(form_from_json(r#"{"dim":2,"arity":2,"entries":[],"extra":1}"#).is_err());
        assert!(form_from_json(r#"{"dim":2,"arity":2,"entries":[{"idx":[0,1],"val":"1/0"}]}"#).is_err());
    }

    #[test]
    fn presentation_and_report_round_trip() {
        let e = signature_form(2).unwrap();
        let hef = build_hef(&e, &e).unwrap();
        let s = presentation_to_json(&hef);
        assert_eq!(presentation_from_json(&s).unwrap(), hef);
        let r = verify_inverse_lemma(&hef, 6).unwrap();
        let js = reports_to_json(std::slice::from_ref(&r));
        let back = reports_from_json(&js).unwrap();
        assert_eq!(reports_to_json(&back), js);
        assert!(crate::hopf::recheck(&back[0], &hef).is_empty());
    }
}
