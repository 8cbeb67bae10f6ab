//! Independent oracles and random inputs shared by the integration tests.
#![allow(dead_code)]

use num_traits::{One, Zero};
use qgforms::forms::MultilinearForm;
use qgforms::linalg::Matrix;
use qgforms::ncpoly::{NcPoly, Symbol, Word};
use qgforms::rational::Rational;
use rand::rngs::StdRng;
use rand::Rng;
use std::collections::HashMap;

pub fn small_rational(rng: &mut StdRng) -> Rational {
    Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into())
}

pub fn random_matrix(rng: &mut StdRng, n: usize) -> Matrix {
    Matrix::from_rows((0..n).map(|_| (0..n).map(|_| small_rational(rng)).collect()).collect())
}

pub fn random_form(rng: &mut StdRng, n: usize, m: usize, density: f64) -> MultilinearForm {
    MultilinearForm::from_fn(n, m, |_| if rng.gen_bool(density) { small_rational(rng) } else { Rational::zero() })
        .expect("valid shape")
}

/// Determinant by the Leibniz permutation expansion.
pub fn leibniz_det(m: &Matrix) -> Rational {
    fn go(m: &Matrix, row: usize, used: &mut Vec<bool>, sign: i64, acc: Rational, out: &mut Rational) {
        let n = m.rows();
        if row == n {
            *out += acc * Rational::from_integer(sign.into());
            return;
        }
        let mut s = sign;
        for col in 0..n {
            if used[col] {
                continue;
            }
            // Sign flips once per unused column passed over.
            used[col] = true;
            go(m, row + 1, used, s, &acc * &m[(row, col)], out);
            used[col] = false;
            s = -s;
        }
    }
    let mut out = Rational::zero();
    go(m, 0, &mut vec![false; m.rows()], 1, Rational::one(), &mut out);
    out
}

/// Rank by textbook Gaussian elimination with rational pivots.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..cols {
                    let d = &f * &rows[rank][k];
                    rows[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All words of length ≤ `max_len` over `k` symbols.
pub fn words_up_to(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..k {
                let mut w2 = w.clone();
                w2.0.push(s as Symbol);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Enumerates every `w₁·r·w₂` of length ≤ `max_len` densely and reduces queries against it.
pub struct IdealOracle {
    index: HashMap<Word, usize>,
    pivots: Vec<(usize, Vec<Rational>)>,
}

impl IdealOracle {
    pub fn new(relations: &[NcPoly], symbols: usize, max_len: usize) -> Self {
        let words = words_up_to(symbols, max_len);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut oracle = IdealOracle { index, pivots: Vec::new() };
        for r in relations {
            let d = r.degree();
            if d > max_len {
                continue;
            }
            for l in &words {
                for rt in &words {
                    if l.len() + d + rt.len() <= max_len {
                        let v = oracle.dense(&r.sandwich(l, rt));
                        oracle.insert(v);
                    }
                }
            }
        }
        oracle
    }

    fn dense(&self, p: &NcPoly) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.index.len()];
        for (w, c) in p.terms() {
            v[self.index[w]] = c.clone();
        }
        v
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (col, row) in &self.pivots {
            if !v[*col].is_zero() {
                let f = v[*col].clone();
                for (k, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        v[k] -= &f * x;
                    }
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<Rational>) {
        let mut v = self.reduce(v);
        let Some(col) = v.iter().position(|x| !x.is_zero()) else { return };
        let inv = Rational::one() / &v[col];
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.pivots.iter_mut() {
            if !row[col].is_zero() {
                let f = row[col].clone();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        row[k] -= &f * x;
                    }
                }
            }
        }
        self.pivots.push((col, v));
    }

    pub fn contains(&self, p: &NcPoly) -> bool {
        self.reduce(self.dense(p)).iter().all(Zero::is_zero)
    }
}

pub fn random_poly(rng: &mut StdRng, symbols: usize, max_deg: usize, terms: usize) -> NcPoly {
    let mut p = NcPoly::zero();
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_deg);
        let w = Word((0..len).map(|_| rng.gen_range(0..symbols) as Symbol).collect());
        p.add_term(w, small_rational(rng));
    }
    p
}

/// Relation sets on 5 symbols mixing binomial, commutator and inhomogeneous relations.
pub fn random_relations(rng: &mut StdRng) -> Vec<NcPoly> {
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            let mut r = random_poly(rng, 5, 2, 2);
            while r.degree() < 2 {
                r = random_poly(rng, 5, 2, 2);
            }
            if rng.gen_bool(0.3) {
                r.add_term(Word::empty(), small_rational(rng));
            }
            r
        })
        .collect()
}

/// A random element of the truncated span: a combination of sandwiched relations.
pub fn random_member(rng: &mut StdRng, relations: &[NcPoly], max_len: usize) -> NcPoly {
    let mut p = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let r = &relations[rng.gen_range(0..relations.len())];
        let room = max_len - r.degree();
        let a = rng.gen_range(0..=room);
        let b = rng.gen_range(0..=room - a);
        let l = Word((0..a).map(|_| rng.gen_range(0..5) as Symbol).collect());
        let rt = Word((0..b).map(|_| rng.gen_range(0..5) as Symbol).collect());
        p.add_scaled(&r.sandwich(&l, &rt), &small_rational(rng));
    }
    p
}
