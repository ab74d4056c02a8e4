//! Independent oracles for the integration suites. Nothing here calls the
//! library's induction, Σ, enumeration or group code; pairs are plain index
//! rows.

#![allow(dead_code)]

pub mod checks;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use itertools::Itertools;
use rauzykit::{Alphabet, Letter, Pair};

/// Two rows of letter indices.
pub type Rows = (Vec<usize>, Vec<usize>);

pub fn rows_of(p: &Pair) -> Rows {
    let r = |e| p.row(e).into_iter().map(Letter::index).collect();
    (r(0), r(1))
}

pub fn pair_of(alphabet: &Arc<Alphabet>, r: &Rows) -> Pair {
    let l = |v: &[usize]| v.iter().map(|&i| Letter::new(i)).collect::<Vec<_>>();
    Pair::new(alphabet, &l(&r.0), &l(&r.1)).unwrap()
}

pub fn irreducible(r: &Rows) -> bool {
    let n = r.0.len();
    (1..n).all(|k| {
        let a: HashSet<_> = r.0[..k].iter().collect();
        let b: HashSet<_> = r.1[..k].iter().collect();
        a != b
    })
}

/// `(right, kept_row)` in the library's move order.
pub const MOVES: [(bool, usize); 4] = [(true, 0), (true, 1), (false, 0), (false, 1)];

/// One induction move written directly from its definition.
pub fn induce(r: &Rows, right: bool, kept: usize) -> Rows {
    let mut rows = [r.0.clone(), r.1.clone()];
    let other = 1 - kept;
    if right {
        let anchor = *rows[kept].last().unwrap();
        let moved = rows[other].pop().unwrap();
        let k = rows[other].iter().position(|&x| x == anchor).unwrap();
        rows[other].insert(k + 1, moved);
    } else {
        let anchor = rows[kept][0];
        let moved = rows[other].remove(0);
        let k = rows[other].iter().position(|&x| x == anchor).unwrap();
        rows[other].insert(k, moved);
    }
    let [a, b] = rows;
    (a, b)
}

/// Orbit of `r` under the given moves.
pub fn brute_class(r: &Rows, moves: &[(bool, usize)]) -> HashSet<Rows> {
    let mut seen = HashSet::from([r.clone()]);
    let mut queue = VecDeque::from([r.clone()]);
    while let Some(s) = queue.pop_front() {
        for &(right, kept) in moves {
            let t = induce(&s, right, kept);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen
}

/// Every irreducible pair on `n` letters.
pub fn all_irreducible(n: usize) -> Vec<Rows> {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    perms
        .iter()
        .cartesian_product(perms.iter())
        .map(|(a, b)| (a.clone(), b.clone()))
        .filter(irreducible)
        .collect()
}

/// Irreducible pairs with top row `0, 1, …, n-1`.
pub fn all_irreducible_standardized(n: usize) -> Vec<Rows> {
    let top: Vec<usize> = (0..n).collect();
    (0..n)
        .permutations(n)
        .map(|b| (top.clone(), b))
        .filter(irreducible)
        .collect()
}

/// `π(i) = p1(p0⁻¹(i))`, 1-based.
pub fn one_line(r: &Rows) -> Vec<usize> {
    r.0.iter()
        .map(|x| r.1.iter().position(|y| y == x).unwrap() + 1)
        .collect()
}

/// The two classical non-labeled Rauzy steps on a one-line permutation.
pub fn classical_step(pi: &[usize], kind: usize) -> Vec<usize> {
    let n = pi.len();
    let last = pi[n - 1];
    if kind == 0 {
        let k = pi.iter().position(|&v| v == n).unwrap();
        (0..n)
            .map(|i| {
                if pi[i] <= last {
                    pi[i]
                } else if i == k {
                    last + 1
                } else {
                    pi[i] + 1
                }
            })
            .collect()
    } else {
        let k = pi.iter().position(|&v| v == n).unwrap() + 1;
        (1..=n)
            .map(|i| {
                if i <= k {
                    pi[i - 1]
                } else if i == k + 1 {
                    last
                } else {
                    pi[i - 2]
                }
            })
            .collect()
    }
}

pub fn classical_class(pi: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::from([pi.to_vec()]);
    let mut queue = VecDeque::from([pi.to_vec()]);
    while let Some(s) = queue.pop_front() {
        for kind in 0..2 {
            let t = classical_step(&s, kind);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen
}

/// `Ω_ij` mod 2 for top positions `i < j`: 1 when the order flips.
fn omega_mod2(pi: &[usize]) -> Vec<u32> {
    let n = pi.len();
    let mut rows = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if (i < j && pi[i] > pi[j]) || (i > j && pi[i] < pi[j]) {
                rows[i] |= 1 << j;
            }
        }
    }
    rows
}

fn form(omega: &[u32], x: u32, y: u32) -> u32 {
    let mut acc = 0;
    for (i, row) in omega.iter().enumerate() {
        if x >> i & 1 == 1 {
            acc ^= (row & y).count_ones() & 1;
        }
    }
    acc
}

/// Arf invariant of the quadratic form with `q(c_i) = 1` on the canonical
/// cycles and polar form `Ω` mod 2. `None` when `q` does not vanish on the
/// radical, which happens exactly when some singularity has odd degree.
pub fn arf_spin(r: &Rows) -> Option<u8> {
    let pi = one_line(r);
    let omega = omega_mod2(&pi);
    let mut vecs: Vec<(u32, u32)> = (0..pi.len()).map(|i| (1u32 << i, 1u32)).collect();
    let mut arf = 0;
    loop {
        let found = (0..vecs.len())
            .tuple_combinations()
            .find(|&(i, j)| form(&omega, vecs[i].0, vecs[j].0) == 1);
        let Some((i, j)) = found else { break };
        let (b, qb) = vecs.remove(j);
        let (a, qa) = vecs.remove(i);
        arf ^= qa & qb;
        for (c, qc) in vecs.iter_mut() {
            if form(&omega, *c, b) == 1 {
                *qc ^= qa ^ form(&omega, *c, a);
                *c ^= a;
            }
            if form(&omega, *c, a) == 1 {
                *qc ^= qb ^ form(&omega, *c, b);
                *c ^= b;
            }
        }
    }
    vecs.iter().all(|&(_, q)| q == 0).then_some(arf as u8)
}

/// Rank over ℚ of the antisymmetric intersection matrix, i.e. twice the genus.
pub fn omega_rank(r: &Rows) -> usize {
    let pi = one_line(r);
    let n = pi.len();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i < j && pi[i] > pi[j] {
                        1
                    } else if i > j && pi[i] < pi[j] {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..n {
            if i != rank && m[i][col] != 0 {
                let (f, g) = (m[i][col], m[rank][col]);
                for k in 0..n {
                    m[i][k] = m[i][k] * g - m[rank][k] * f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `p ∘ ν`: every letter `x` displayed as `ν⁻¹(x)`. `nu[x]` is `ν(x)`.
pub fn rename(r: &Rows, nu: &[usize]) -> Rows {
    let mut inv = vec![0; nu.len()];
    for (x, &y) in nu.iter().enumerate() {
        inv[y] = x;
    }
    let f = |v: &Vec<usize>| v.iter().map(|&x| inv[x]).collect();
    (f(&r.0), f(&r.1))
}

/// Every `ν` with `p ∘ ν` in the extended class, as image vectors.
pub fn brute_renamings(r: &Rows) -> BTreeSet<Vec<usize>> {
    let class = brute_class(r, &MOVES);
    let n = r.0.len();
    (0..n)
        .permutations(n)
        .filter(|nu| class.contains(&rename(r, nu)))
        .collect()
}

pub fn parity(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut transpositions = 0;
    for s in 0..images.len() {
        let mut x = s;
        let mut len = 0usize;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        transpositions += len.saturating_sub(1);
    }
    transpositions % 2
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn pair(s: &str) -> Pair {
    Pair::parse(s).unwrap()
}

/// Rows of letter names.
pub type Names = (Vec<String>, Vec<String>);

// Block builders. Letter names carry a block tag so blocks never collide.

pub fn twos(tag: &str, n: usize) -> Names {
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for k in 1..=n {
        let (u, v) = (format!("{tag}u{k}"), format!("{tag}v{k}"));
        top.extend([u.clone(), v.clone()]);
        bottom.extend([v, u]);
    }
    (top, bottom)
}

pub fn four_and_twos(tag: &str, n: usize) -> Names {
    let w: Vec<String> = (1..=4).map(|k| format!("{tag}w{k}")).collect();
    let (t, b) = twos(tag, n);
    let mut top = w.clone();
    top.extend(t);
    let mut bottom: Vec<String> = w.into_iter().rev().collect();
    bottom.extend(b);
    (top, bottom)
}

/// `[twos m] d e f [twos n]` over `d, e, f` named `{tag}d` and so on.
pub fn three_and_twos(tag: &str, m: usize, n: usize) -> Names {
    let (lt, lb) = twos(&format!("{tag}l"), m);
    let (rt, rb) = twos(&format!("{tag}r"), n);
    let [d, e, f] = ["d", "e", "f"].map(|s| format!("{tag}{s}"));
    let mut top = lt;
    top.extend([d.clone(), e.clone(), f.clone()]);
    top.extend(rt);
    let mut bottom = lb;
    bottom.extend([f, e, d]);
    bottom.extend(rb);
    (top, bottom)
}

/// `a B₁ s₁ B₂ s₂ … B_k z | z … a` with the given separators between blocks.
pub fn assemble(blocks: &[Names], separators: &[String]) -> Pair {
    let mut top = vec!["a".to_string()];
    let mut bottom = vec!["z".to_string()];
    for (i, (t, b)) in blocks.iter().enumerate() {
        top.extend(t.iter().cloned());
        bottom.extend(b.iter().cloned());
        if i + 1 < blocks.len() {
            top.push(separators[i].clone());
            bottom.push(separators[i].clone());
        }
    }
    top.push("z".into());
    bottom.push("a".into());
    Pair::from_names(&top, &bottom).unwrap()
}
