//! Exact membership in the truncated span of a two-sided ideal.
//!
//! The span `{ w₁·r·w₂ : |w₁| + len(r) + |w₂| ≤ max_len }` is split along the
//! finest abelian grading of the free algebra that makes every relation
//! homogeneous (weights solved for by linear algebra). Each generator is
//! homogeneous, so a query is decided component by component. A component is
//! brought to semi-echelon form by sparse exact elimination with deglex-largest
//! pivots; each pivot row records how it arose so certificates can be replayed
//! back onto the original generators.

use super::{MembershipCertificate, NcError, NcPoly, Summand, Symbol, Word};
use crate::linalg::Matrix;
use crate::rational::Rational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use smallvec::SmallVec;
use std::collections::BTreeSet;
use std::sync::{Arc, Mutex, OnceLock};

type Grade = SmallVec<[i32; 6]>;
type Row = Vec<(u32, Rational)>;

/// Decides `p ∈ span{ w₁·r·w₂ : |w₁| + len(r) + |w₂| ≤ max_len }` and returns a certificate.
pub fn ideal_member(
    p: &NcPoly,
    relations: &[NcPoly],
    max_len: usize,
) -> Result<Option<MembershipCertificate>, NcError> {
    TruncatedIdeal::new(relations.to_vec(), max_len).certify(p)
}

/// Relations with a length bound; components are computed lazily and cached.
pub struct TruncatedIdeal {
    relations: Vec<NcPoly>,
    max_len: usize,
    symbols: BTreeSet<Symbol>,
    weights: FxHashMap<Symbol, Grade>,
    rel_info: Vec<Option<(Grade, usize)>>,
    reach: OnceLock<Reach>,
    components: Mutex<FxHashMap<Grade, Arc<OnceLock<Component>>>>,
    limit: usize,
}

/// Default cap on the spanning products of one graded component.
pub const DEFAULT_COMPONENT_LIMIT: usize = 1_500_000;

/// `sets[k]`: grades of the words of length exactly `k`, for pruning word searches.
struct Reach {
    syms: Vec<(Symbol, Grade)>,
    sets: Vec<FxHashSet<Grade>>,
}

struct PivotRow {
    row: Row,
    origin: u32,
    scale: Rational,
    steps: Vec<(u32, Rational)>,
}

struct Component {
    columns: FxHashMap<Word, u32>,
    pivot_of: Vec<Option<u32>>,
    pivots: Vec<PivotRow>,
    generators: Vec<(u32, Word, Word)>,
    overflow: Option<usize>,
}

impl TruncatedIdeal {
    pub fn new(relations: Vec<NcPoly>, max_len: usize) -> Self {
        let symbols = relations.iter().flat_map(NcPoly::symbols).collect();
        Self::with_symbols(relations, max_len, symbols)
    }

    /// Like `new`, with extra symbols that occur in no relation but may appear in queries.
    pub fn with_symbols(relations: Vec<NcPoly>, max_len: usize, symbols: BTreeSet<Symbol>) -> Self {
        let weights = solve_grading(&relations, &symbols);
        let rel_info = relations
            .iter()
            .map(|r| {
                let (w, _) = r.leading()?;
                Some((grade_of(&weights, w), r.degree()))
            })
            .collect();
        TruncatedIdeal {
            relations,
            max_len,
            symbols,
            weights,
            rel_info,
            reach: OnceLock::new(),
            components: Mutex::new(FxHashMap::default()),
            limit: DEFAULT_COMPONENT_LIMIT,
        }
    }

    /// Caps the number of spanning products per component; larger components
    /// make queries fail with `NcError::SearchTooLarge` instead of exhausting memory.
    pub fn with_component_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn covers(&self, p: &NcPoly) -> bool {
        p.symbols().is_subset(&self.symbols)
    }

    fn extended(&self, p: &NcPoly) -> TruncatedIdeal {
        let mut symbols = self.symbols.clone();
        symbols.extend(p.symbols());
        Self::with_symbols(self.relations.clone(), self.max_len, symbols).with_component_limit(self.limit)
    }

    /// Certificate for `p` if it lies in the truncated span.
    pub fn certify(&self, p: &NcPoly) -> Result<Option<MembershipCertificate>, NcError> {
        if p.degree() > self.max_len {
            return Err(NcError::BoundTooSmall { max_len: self.max_len, degree: p.degree() });
        }
        if !self.covers(p) {
            return self.extended(p).certify(p);
        }
        let mut summands = Vec::new();
        for (g, part) in self.split_by_grade(p) {
            let cell = self.component(&g);
            let comp = cell.get().expect("initialized component");
            comp.usable()?;
            let Some(coeffs) = comp.reduce_to_zero(&part) else { return Ok(None) };
            summands.extend(comp.replay(coeffs).into_iter().map(|(gen, coef)| {
                let (rel, left, right) = comp.generators[gen as usize].clone();
                Summand { coef, left, relation: rel as usize, right }
            }));
        }
        Ok(Some(MembershipCertificate { summands }))
    }

    pub fn contains(&self, p: &NcPoly) -> Result<bool, NcError> {
        Ok(self.certify(p)?.is_some())
    }

    /// Remainder of `p` after full reduction: zero exactly on the truncated span,
    /// and linear in `p`, so it realizes the quotient map.
    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly, NcError> {
        if p.degree() > self.max_len {
            return Err(NcError::BoundTooSmall { max_len: self.max_len, degree: p.degree() });
        }
        if !self.covers(p) {
            return self.extended(p).normal_form(p);
        }
        let mut out = NcPoly::zero();
        for (g, part) in self.split_by_grade(p) {
            let cell = self.component(&g);
            let comp = cell.get().expect("initialized component");
            comp.usable()?;
            out.add_scaled(&comp.remainder(&part), &Rational::one());
        }
        Ok(out)
    }

    fn split_by_grade(&self, p: &NcPoly) -> Vec<(Grade, NcPoly)> {
        let mut parts: FxHashMap<Grade, NcPoly> = FxHashMap::default();
        for (w, c) in p.terms() {
            parts.entry(grade_of(&self.weights, w)).or_default().add_term(w.clone(), c.clone());
        }
        let mut v: Vec<_> = parts.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    fn component(&self, g: &Grade) -> Arc<OnceLock<Component>> {
        let cell = {
            let mut map = self.components.lock().expect("component cache poisoned");
            map.entry(g.clone()).or_default().clone()
        };
        cell.get_or_init(|| self.build_component(g));
        cell
    }

    fn reach(&self) -> &Reach {
        self.reach.get_or_init(|| {
            let min_len = self.rel_info.iter().flatten().map(|(_, l)| *l).min().unwrap_or(self.max_len);
            let budget = self.max_len.saturating_sub(min_len);
            let syms: Vec<(Symbol, Grade)> = self.symbols.iter().map(|&s| (s, self.weights[&s].clone())).collect();
            let mut sets = vec![FxHashSet::from_iter([self.zero_grade()])];
            for k in 0..budget {
                let next = sets[k].iter().flat_map(|g| syms.iter().map(move |(_, w)| add_grades(g, w))).collect();
                sets.push(next);
            }
            Reach { syms, sets }
        })
    }

    /// Words of length exactly `len` and grade `grade`, by depth-first search pruned on reachable grades.
    fn words_of_grade(&self, grade: &Grade, len: usize) -> Vec<Word> {
        fn go(reach: &Reach, rest: &Grade, left: usize, prefix: &mut Word, out: &mut Vec<Word>) {
            if left == 0 {
                if rest.iter().all(|&x| x == 0) {
                    out.push(prefix.clone());
                }
                return;
            }
            for (s, w) in &reach.syms {
                let next = sub_grades(rest, w);
                if reach.sets[left - 1].contains(&next) {
                    prefix.0.push(*s);
                    go(reach, &next, left - 1, prefix, out);
                    prefix.0.pop();
                }
            }
        }
        let reach = self.reach();
        let mut out = Vec::new();
        if reach.sets.get(len).is_some_and(|set| set.contains(grade)) {
            go(reach, grade, len, &mut Word::empty(), &mut out);
        }
        out
    }

    fn zero_grade(&self) -> Grade {
        let d = self.weights.values().next().map_or(0, |g| g.len());
        SmallVec::from_elem(0, d)
    }

    fn build_component(&self, target: &Grade) -> Component {
        let mut generators: Vec<(u32, Word, Word)> = Vec::new();
        let mut cache: FxHashMap<(Grade, usize), Vec<Word>> = FxHashMap::default();
        for (ri, info) in self.rel_info.iter().enumerate() {
            let Some((rg, len)) = info else { continue };
            if *len > self.max_len {
                continue;
            }
            let need = sub_grades(target, rg);
            let mut pairs: Vec<(Word, Word)> = Vec::new();
            // Each pair (w₁, w₂) is a split of one word of the needed grade.
            for total in 0..=self.max_len - len {
                let words = cache.entry((need.clone(), total)).or_insert_with(|| self.words_of_grade(&need, total));
                for w in words.iter() {
                    for i in 0..=total {
                        pairs.push((Word::from_slice(&w.0[..i]), Word::from_slice(&w.0[i..])));
                    }
                }
            }
            if generators.len() + pairs.len() > self.limit {
                return Component::overflow(generators.len() + pairs.len());
            }
            pairs.sort();
            generators.extend(pairs.into_iter().map(|(a, b)| (ri as u32, a, b)));
        }

        let mut words: Vec<Word> = Vec::new();
        let mut seen: FxHashMap<Word, ()> = FxHashMap::default();
        for (ri, l, r) in &generators {
            for w in self.relations[*ri as usize].terms().keys() {
                let full = l.concat(w).concat(r);
                if seen.insert(full.clone(), ()).is_none() {
                    words.push(full);
                }
            }
        }
        drop(seen);
        words.sort_unstable_by(|a, b| b.cmp(a));
        let columns: FxHashMap<Word, u32> = words.into_iter().enumerate().map(|(i, w)| (w, i as u32)).collect();

        let mut comp =
            Component { pivot_of: vec![None; columns.len()], columns, pivots: Vec::new(), generators, overflow: None };
        for gi in 0..comp.generators.len() {
            let (ri, l, r) = &comp.generators[gi];
            let mut row: Row = self.relations[*ri as usize]
                .terms()
                .iter()
                .map(|(w, c)| (comp.columns[&l.concat(w).concat(r)], c.clone()))
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            comp.insert(row, gi as u32);
        }
        comp
    }
}

impl Component {
    fn overflow(size: usize) -> Self {
        Component {
            columns: FxHashMap::default(),
            pivot_of: Vec::new(),
            pivots: Vec::new(),
            generators: Vec::new(),
            overflow: Some(size),
        }
    }

    fn usable(&self) -> Result<(), NcError> {
        match self.overflow {
            Some(size) => Err(NcError::SearchTooLarge { size }),
            None => Ok(()),
        }
    }

    fn insert(&mut self, mut row: Row, origin: u32) {
        let mut steps = Vec::new();
        while let Some((lead, c)) = row.first().cloned() {
            match self.pivot_of[lead as usize] {
                Some(pid) => {
                    row = axpy(&row, &-c.clone(), &self.pivots[pid as usize].row);
                    steps.push((pid, c));
                }
                None => {
                    let scale = Rational::one() / c;
                    for e in row.iter_mut() {
                        e.1 *= &scale;
                    }
                    self.pivot_of[lead as usize] = Some(self.pivots.len() as u32);
                    self.pivots.push(PivotRow { row, origin, scale, steps });
                    return;
                }
            }
        }
    }

    fn to_row(&self, p: &NcPoly) -> Option<Row> {
        let mut row: Row = Vec::with_capacity(p.len());
        for (w, c) in p.terms() {
            row.push((*self.columns.get(w)?, c.clone()));
        }
        row.sort_unstable_by_key(|e| e.0);
        Some(row)
    }

    /// Pivot coefficients expressing `p`, or `None` if a remainder survives.
    fn reduce_to_zero(&self, p: &NcPoly) -> Option<Vec<(u32, Rational)>> {
        let mut row = self.to_row(p)?;
        let mut used = Vec::new();
        while let Some((lead, c)) = row.first() {
            let pid = self.pivot_of[*lead as usize]?;
            let c = c.clone();
            row = axpy(&row, &-c.clone(), &self.pivots[pid as usize].row);
            used.push((pid, c));
        }
        Some(used)
    }

    fn remainder(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        let mut known = NcPoly::zero();
        for (w, c) in p.terms() {
            if self.columns.contains_key(w) {
                known.add_term(w.clone(), c.clone());
            } else {
                out.add_term(w.clone(), c.clone());
            }
        }
        let mut row = self.to_row(&known).expect("all words are columns");
        let mut rest: Row = Vec::new();
        while !row.is_empty() {
            let (lead, c) = row[0].clone();
            match self.pivot_of[lead as usize] {
                Some(pid) => row = axpy(&row, &-c, &self.pivots[pid as usize].row),
                None => {
                    rest.push((lead, c));
                    row.remove(0);
                }
            }
        }
        if !rest.is_empty() {
            let mut names: Vec<Option<&Word>> = vec![None; self.columns.len()];
            for (w, &i) in &self.columns {
                names[i as usize] = Some(w);
            }
            for (col, c) in rest {
                out.add_term(names[col as usize].expect("column word").clone(), c);
            }
        }
        out
    }

    /// Pushes pivot coefficients back onto generators.
    fn replay(&self, used: Vec<(u32, Rational)>) -> Vec<(u32, Rational)> {
        let mut a: Vec<Rational> = vec![Rational::zero(); self.pivots.len()];
        for (pid, c) in used {
            a[pid as usize] += c;
        }
        let mut gen: FxHashMap<u32, Rational> = FxHashMap::default();
        for k in (0..self.pivots.len()).rev() {
            if a[k].is_zero() {
                continue;
            }
            let piv = &self.pivots[k];
            let alpha = &a[k] * &piv.scale;
            *gen.entry(piv.origin).or_insert_with(Rational::zero) += &alpha;
            for (j, c) in &piv.steps {
                a[*j as usize] -= &alpha * c;
            }
        }
        let mut out: Vec<(u32, Rational)> = gen.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|e| e.0);
        out
    }
}

/// `x + c·y` for rows sorted by column.
fn axpy(x: &Row, c: &Rational, y: &Row) -> Row {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, c * &y[j].1));
            j += 1;
        } else {
            let v = &x[i].1 + c * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn add_grades(a: &Grade, b: &Grade) -> Grade {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_grades(a: &Grade, b: &Grade) -> Grade {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn grade_of(weights: &FxHashMap<Symbol, Grade>, w: &Word) -> Grade {
    let d = weights.values().next().map_or(0, |g| g.len());
    let mut g: Grade = SmallVec::from_elem(0, d);
    for s in w.symbols() {
        if let Some(ws) = weights.get(s) {
            for (x, y) in g.iter_mut().zip(ws) {
                *x += y;
            }
        }
    }
    g
}

/// Integer weight vectors on `symbols` under which every relation is homogeneous.
fn solve_grading(relations: &[NcPoly], symbols: &BTreeSet<Symbol>) -> FxHashMap<Symbol, Grade> {
    let syms: Vec<Symbol> = symbols.iter().copied().collect();
    let pos: FxHashMap<Symbol, usize> = syms.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let counts = |w: &Word| {
        let mut v = vec![0i64; syms.len()];
        for s in w.symbols() {
            v[pos[s]] += 1;
        }
        v
    };
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for r in relations {
        let mut words = r.terms().keys();
        let Some(first) = words.next() else { continue };
        let base = counts(first);
        for w in words {
            let c = counts(w);
            rows.push(c.iter().zip(&base).map(|(a, b)| Rational::from_integer((a - b).into())).collect());
        }
    }
    let basis: Vec<Vec<Rational>> = if rows.is_empty() {
        (0..syms.len())
            .map(|i| (0..syms.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    let scaled: Vec<Vec<i32>> = basis
        .iter()
        .map(|v| {
            let l = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
            v.iter().map(|x| (x.numer() * (&l / x.denom())).to_i32().expect("small grading weight")).collect()
        })
        .collect();
    syms.iter()
        .enumerate()
        .map(|(i, &s)| (s, scaled.iter().map(|v| v[i]).collect()))
        .collect()
}
