//! Trace polynomials of words in two generators.
//!
//! Reduction uses `g⁻¹ = Tr(g) − g` and `g² = Tr(g) g − 1` (Cayley–Hamilton),
//! which give
//!
//! * `Tr(U g⁻¹) = Tr(g) Tr(U) − Tr(U g)`
//! * `Tr(U g g) = Tr(g) Tr(U g) − Tr(U)`
//!
//! Every step either removes an inverse letter or shortens the word, so the
//! recursion ends at `Tr(1) = 2`, `Tr(A) = x`, `Tr(B) = y`, and powers of
//! `AB` via `Tr(U (AB)²) = z Tr(U AB) − Tr(U)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groups::Word;

use super::poly::TracePolynomial;

/// Memoizing trace reducer. The table is keyed by a canonical cyclic word:
/// the lexicographically smallest rotation of the word or of its inverse.
#[derive(Debug, Default)]
pub struct TraceReducer {
    memo: HashMap<Vec<i32>, TracePolynomial>,
}

impl TraceReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// `F_w` with `Tr ρ(w) = F_w(Tr A, Tr B, Tr AB)`.
    pub fn trace(&mut self, w: &Word) -> Result<TracePolynomial> {
        if w.max_generator() > 2 {
            return Err(Error::invalid(format!(
                "trace polynomials need words in two generators, got {w}"
            )));
        }
        Ok(self.reduce(w.letters().to_vec()))
    }

    fn reduce(&mut self, letters: Vec<i32>) -> TracePolynomial {
        let w = cyclic_reduce(letters);
        if w.is_empty() {
            return TracePolynomial::constant(2);
        }
        let key = canonical(&w);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let p = self.expand(w);
        self.memo.insert(key, p.clone());
        p
    }

    fn expand(&mut self, w: Vec<i32>) -> TracePolynomial {
        let n = w.len();
        if n == 1 {
            return generator_trace(w[0].abs());
        }
        // Rotate an inverse letter to the end.
        if let Some(pos) = w.iter().position(|&l| l < 0) {
            let rot = rotate(&w, pos + 1);
            let g = -rot[n - 1];
            let u = rot[..n - 1].to_vec();
            let mut ug = u.clone();
            ug.push(g);
            let tu = self.reduce(u);
            let tug = self.reduce(ug);
            return &(&generator_trace(g) * &tu) - &tug;
        }
        // Positive word: look for a cyclically repeated letter.
        if let Some(pos) = (0..n).find(|&i| w[i] == w[(i + 1) % n]) {
            let rot = rotate(&w, pos + 2);
            let g = rot[n - 1];
            let u = rot[..n - 2].to_vec();
            let ug = rot[..n - 1].to_vec();
            let tu = self.reduce(u);
            let tug = self.reduce(ug);
            return &(&generator_trace(g) * &tug) - &tu;
        }
        // Alternating positive word (AB)^k with k ≥ 1.
        let start = if w[0] == 1 { 0 } else { 1 };
        let rot = rotate(&w, start);
        if n == 2 {
            return TracePolynomial::z();
        }
        let u = rot[..n - 4].to_vec();
        let uab = rot[..n - 2].to_vec();
        let tu = self.reduce(u);
        let tuab = self.reduce(uab);
        &(&TracePolynomial::z() * &tuab) - &tu
    }
}

/// One-shot helper with a fresh memo table.
pub fn trace_polynomial(w: &Word) -> Result<TracePolynomial> {
    TraceReducer::new().trace(w)
}

fn generator_trace(g: i32) -> TracePolynomial {
    if g == 1 {
        TracePolynomial::x()
    } else {
        TracePolynomial::y()
    }
}

fn rotate(w: &[i32], k: usize) -> Vec<i32> {
    let k = k % w.len();
    w[k..].iter().chain(&w[..k]).copied().collect()
}

/// Free and cyclic reduction; both preserve the trace.
fn cyclic_reduce(letters: Vec<i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == -out[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}

fn canonical(w: &[i32]) -> Vec<i32> {
    let inv: Vec<i32> = w.iter().rev().map(|l| -l).collect();
    (0..w.len())
        .flat_map(|k| [rotate(w, k), rotate(&inv, k)])
        .min()
        .expect("nonempty word")
}
