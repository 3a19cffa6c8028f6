//! Exterior-algebra bookkeeping: lexicographic monomial bases for each
//! wedge power and exact wedge products on coordinate vectors.
//!
//! A degree-`p` monomial over an `n`-dimensional space is a strictly
//! increasing index list `[i_1 < ... < i_p]`; coordinates are taken in the
//! lexicographic ordering of those lists.

use crate::rational::Rat;
use num_traits::Zero;

/// Binomial coefficient, sizes stay tiny here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out: usize = 1;
    for i in 0..k.min(n - k) {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// All size-`p` increasing subsets of `0..n` in lexicographic order.
pub fn monomials(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, p));
    let mut current = Vec::with_capacity(p);
    fn rec(n: usize, p: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == p {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, p, i + 1, current, out);
            current.pop();
        }
    }
    rec(n, p, 0, &mut current, &mut out);
    out
}

/// Position of a sorted monomial in the lexicographic basis of `monomials(n, p)`.
pub fn monomial_index(n: usize, mono: &[usize]) -> usize {
    // Count subsets strictly before `mono` in lex order.
    let p = mono.len();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, &m) in mono.iter().enumerate() {
        for first in prev..m {
            rank += binomial(n - first - 1, p - pos - 1);
        }
        prev = m + 1;
    }
    rank
}

/// Sorts a generator index list in place; `None` when an index repeats,
/// otherwise the sign of the sorting permutation.
pub fn sort_sign(indices: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Wedge product of a `p`-vector and a `q`-vector over dimension `n`,
/// returned in the degree `p+q` monomial basis.
pub fn wedge(n: usize, p: usize, v: &[Rat], q: usize, w: &[Rat]) -> Vec<Rat> {
    let pmonos = monomials(n, p);
    let qmonos = monomials(n, q);
    assert_eq!(v.len(), pmonos.len(), "bad p-vector length");
    assert_eq!(w.len(), qmonos.len(), "bad q-vector length");
    let mut out = vec![Rat::zero(); binomial(n, p + q)];
    for (a, va) in v.iter().enumerate() {
        if va.is_zero() {
            continue;
        }
        for (b, wb) in w.iter().enumerate() {
            if wb.is_zero() {
                continue;
            }
            let mut idx: Vec<usize> = pmonos[a].iter().chain(qmonos[b].iter()).copied().collect();
            if let Some(sgn) = sort_sign(&mut idx) {
                let k = monomial_index(n, &idx);
                let term = va * wb * crate::rational::rat_int(sgn as i64);
                out[k] += term;
            }
        }
    }
    out
}

/// Wedge of several vectors of given degrees.
pub fn wedge_many(n: usize, factors: &[(usize, Vec<Rat>)]) -> (usize, Vec<Rat>) {
    let mut deg = 0;
    let mut acc = vec![Rat::from_integer(1.into())];
    for (p, v) in factors {
        acc = wedge(n, deg, &acc, *p, v);
        deg += p;
    }
    (deg, acc)
}
