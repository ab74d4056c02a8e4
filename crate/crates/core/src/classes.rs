//! Rauzy classes and extended Rauzy classes, labeled and non-labeled, and the
//! renaming group of a class.
//!
//! Enumeration is breadth first, level by level, with moves tried in the
//! order `R0, R1, L0, L1`. Successors of a level may be computed in parallel;
//! they are collected in order and deduplicated sequentially, so the visit
//! order and every reported set are independent of scheduling.
//!
//! The renaming group is computed two ways. The brute-force path enumerates
//! the labeled extended class and tests every `ν ∈ Sym(A)`. The holonomy path
//! walks the non-labeled class only, keeping one labeled representative per
//! node; each move that lands on an already known node `v` yields the
//! discrepancy `δ` with `ω(R_u) = R_v ∘ δ`, and the group is `⟨δ⟩`.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{profile, Profile};
use crate::packed::Rows;
use crate::pairs::{Move, Pair};
use crate::perm::{
    check_alphabets, factorial, next_permutation, AllPermutations, Alphabet, GroupClassification,
    PermGroup, Permutation, CLOSURE_CAP,
};

/// Frontier size above which successor generation runs on the thread pool.
const PARALLEL_FRONTIER: usize = 4096;

/// Member limits for enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub labeled: usize,
    pub nonlabeled: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            labeled: 5_000_000,
            nonlabeled: 500_000,
        }
    }
}

impl Budget {
    /// A single user-supplied limit: `n` labeled members and a tenth of that
    /// (at least one) non-labeled members.
    pub fn from_limit(n: usize) -> Budget {
        Budget {
            labeled: n,
            nonlabeled: (n / 10).max(1),
        }
    }
}

/// Which moves generate the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Right induction only: the Rauzy class.
    Right,
    /// All four moves: the extended Rauzy class.
    Extended,
}

impl Flavor {
    pub fn moves(self) -> &'static [Move] {
        match self {
            Flavor::Right => &Move::RIGHT,
            Flavor::Extended => &Move::ALL,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Right => "right",
            Flavor::Extended => "extended",
        }
    }

    pub fn parse(s: &str) -> Result<Flavor> {
        match s {
            "right" => Ok(Flavor::Right),
            "extended" => Ok(Flavor::Extended),
            _ => Err(Error::Precondition(format!(
                "unknown flavor `{s}`, expected `right` or `extended`"
            ))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn successors(frontier: &[Rows], moves: &[Move], map: fn(Rows) -> Rows) -> Vec<Rows> {
    let expand = |r: &Rows| {
        let r = *r;
        moves.iter().map(move |&m| map(r.induce(m)))
    };
    if frontier.len() > PARALLEL_FRONTIER {
        frontier.par_iter().flat_map_iter(expand).collect()
    } else {
        frontier.iter().flat_map(expand).collect()
    }
}

/// Level-synchronous closure of `seed` under `moves`; `map` normalizes each
/// successor and `key` identifies nodes.
fn closure<K: std::hash::Hash + Eq + Copy>(
    seed: Rows,
    moves: &[Move],
    map: fn(Rows) -> Rows,
    key: fn(&Rows) -> K,
    limit: usize,
) -> Result<HashSet<K>> {
    let mut seen = HashSet::from([key(&seed)]);
    let mut frontier = vec![seed];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in successors(&frontier, moves, map) {
            if seen.insert(key(&r)) {
                if seen.len() > limit {
                    return Err(Error::BudgetExceeded {
                        limit,
                        visited: seen.len(),
                        frontier: frontier.len() + next.len(),
                    });
                }
                next.push(r);
            }
        }
        frontier = next;
    }
    Ok(seen)
}

/// A finished labeled enumeration: the members sorted by their canonical
/// key (the two row words as letter indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEnumeration {
    flavor: Flavor,
    alphabet: Arc<Alphabet>,
    members: Vec<u128>,
}

impl ClassEnumeration {
    pub(crate) fn from_sorted(flavor: Flavor, alphabet: Arc<Alphabet>, members: Vec<u128>) -> Self {
        ClassEnumeration {
            flavor,
            alphabet,
            members,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn index_of_key(&self, key: u128) -> Option<usize> {
        self.members.binary_search(&key).ok()
    }

    pub fn contains(&self, p: &Pair) -> bool {
        check_alphabets(&self.alphabet, p.alphabet()).is_ok()
            && self.index_of_key(p.rows().key()).is_some()
    }

    pub fn members(&self) -> impl Iterator<Item = Pair> + '_ {
        let n = self.alphabet.len();
        self.members
            .iter()
            .map(move |&k| Pair::from_rows(&self.alphabet, Rows::from_key(k, n)))
    }

    /// Number of distinct non-labeled permutations among the members.
    pub fn nonlabeled_len(&self) -> usize {
        let n = self.alphabet.len();
        self.members
            .iter()
            .map(|&k| Rows::from_key(k, n).nonlabeled_key())
            .collect::<HashSet<_>>()
            .len()
    }

    /// For each member (in member order) the member index reached by each
    /// move of the flavor.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        let n = self.alphabet.len();
        self.members
            .iter()
            .map(|&k| {
                let r = Rows::from_key(k, n);
                self.flavor
                    .moves()
                    .iter()
                    .map(|&m| {
                        self.index_of_key(r.induce(m).key())
                            .expect("class is closed under its moves")
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn enumerate_labeled(p: &Pair, flavor: Flavor, budget: Budget) -> Result<ClassEnumeration> {
    p.require_irreducible()?;
    let set = closure(*p.rows(), flavor.moves(), |r| r, Rows::key, budget.labeled)?;
    let mut members: Vec<u128> = set.into_iter().collect();
    members.sort_unstable();
    Ok(ClassEnumeration::from_sorted(
        flavor,
        p.alphabet().clone(),
        members,
    ))
}

/// The labeled Rauzy class of `p` under the default budget.
pub fn rauzy_class(p: &Pair) -> Result<ClassEnumeration> {
    enumerate_labeled(p, Flavor::Right, Budget::default())
}

/// The labeled extended Rauzy class of `p` under the default budget.
pub fn extended_class(p: &Pair) -> Result<ClassEnumeration> {
    enumerate_labeled(p, Flavor::Extended, Budget::default())
}

/// A non-labeled class: one-line permutations, packed and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonLabeledClass {
    pub flavor: Flavor,
    pub n: usize,
    members: Vec<u64>,
}

impl NonLabeledClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Pair) -> bool {
        p.len() == self.n
            && self
                .members
                .binary_search(&p.rows().nonlabeled_key())
                .is_ok()
    }

    /// One-line forms (1-based) in member order.
    pub fn one_line(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.members.iter().map(move |&k| {
            crate::packed::unpack_u64(k, self.n)
                .into_iter()
                .map(|x| x as usize + 1)
                .collect()
        })
    }
}

pub fn enumerate_nonlabeled(p: &Pair, flavor: Flavor, budget: Budget) -> Result<NonLabeledClass> {
    p.require_irreducible()?;
    let set = closure(
        p.rows().standardized(),
        flavor.moves(),
        |r| r.standardized(),
        Rows::nonlabeled_key,
        budget.nonlabeled,
    )?;
    let mut members: Vec<u64> = set.into_iter().collect();
    members.sort_unstable();
    Ok(NonLabeledClass {
        flavor,
        n: p.len(),
        members,
    })
}

fn check_closure_cap(n: usize) -> Result<()> {
    if n > CLOSURE_CAP {
        Err(Error::TooLarge {
            what: "renaming groups",
            size: n,
            limit: CLOSURE_CAP,
        })
    } else {
        Ok(())
    }
}

/// `Γ(p) = {ν : p ∘ ν ∈ R_ex(p)}` by enumerating the labeled extended class
/// and testing every renaming.
pub fn renaming_group_bruteforce_with(p: &Pair, budget: Budget) -> Result<PermGroup> {
    check_closure_cap(p.len())?;
    let class = enumerate_labeled(p, Flavor::Extended, budget).map_err(|e| match e {
        Error::BudgetExceeded { .. } => Error::Precondition(format!(
            "{e}; the holonomy method needs only the non-labeled class"
        )),
        e => e,
    })?;
    let elements: Vec<Permutation> = AllPermutations::new(p.alphabet())
        .filter(|nu| {
            class
                .index_of_key(p.rows().renamed(nu.raw()).key())
                .is_some()
        })
        .collect();
    let group = PermGroup::generate(p.alphabet(), &elements)?;
    if group.order() != elements.len() {
        return Err(Error::Internal(format!(
            "renamings of {p} are not closed: {} found, closure has {}",
            elements.len(),
            group.order()
        )));
    }
    Ok(group)
}

pub fn renaming_group_bruteforce(p: &Pair) -> Result<PermGroup> {
    renaming_group_bruteforce_with(p, Budget::default())
}

/// Output of the holonomy walk over a non-labeled class.
#[derive(Clone, Debug)]
pub struct Holonomy {
    pub group: PermGroup,
    pub nonlabeled_size: usize,
    /// Distinct discrepancy renamings met during the walk.
    pub discrepancies: usize,
}

/// Walks the non-labeled class of `p` and generates the group of
/// discrepancies between labeled representatives.
pub fn holonomy(p: &Pair, flavor: Flavor, budget: Budget) -> Result<Holonomy> {
    p.require_irreducible()?;
    check_closure_cap(p.len())?;
    let n = p.len();
    let mut reps: HashMap<u64, Rows> = HashMap::from([(p.rows().nonlabeled_key(), *p.rows())]);
    let mut queue = std::collections::VecDeque::from([*p.rows()]);
    let mut seen_delta = HashSet::new();
    let mut deltas = Vec::new();
    let identity: Vec<u8> = (0..n as u8).collect();
    seen_delta.insert(crate::packed::pack_u64(&identity));
    while let Some(r) = queue.pop_front() {
        for &mv in flavor.moves() {
            let next = r.induce(mv);
            match reps.entry(next.nonlabeled_key()) {
                Entry::Vacant(e) => {
                    e.insert(next);
                    if reps.len() > budget.nonlabeled {
                        return Err(Error::BudgetExceeded {
                            limit: budget.nonlabeled,
                            visited: reps.len(),
                            frontier: queue.len(),
                        });
                    }
                    queue.push_back(next);
                }
                Entry::Occupied(e) => {
                    let delta = next.renaming_to(e.get());
                    if seen_delta.insert(crate::packed::pack_u64(&delta)) {
                        deltas.push(Permutation::from_raw(p.alphabet(), delta));
                    }
                }
            }
        }
    }
    let group = PermGroup::generate(p.alphabet(), &deltas)?;
    Ok(Holonomy {
        group,
        nonlabeled_size: reps.len(),
        discrepancies: deltas.len(),
    })
}

/// `Γ(p)` by the holonomy method.
pub fn renaming_group_with(p: &Pair, budget: Budget) -> Result<PermGroup> {
    Ok(holonomy(p, Flavor::Extended, budget)?.group)
}

pub fn renaming_group(p: &Pair) -> Result<PermGroup> {
    renaming_group_with(p, Budget::default())
}

/// Predicted and computed covering degree of the labeled extended class over
/// the non-labeled one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub profile: Profile,
    pub simple: bool,
    /// `N!/2` for a simple profile, `N!` otherwise.
    pub predicted: u64,
    /// Order of the renaming group.
    pub computed: u64,
    pub classification: GroupClassification,
    pub generators: Vec<String>,
    pub nonlabeled_size: usize,
    /// Present when the labeled class fits the labeled budget.
    pub labeled_size: Option<usize>,
    /// `labeled_size / nonlabeled_size`, when the labeled class was enumerated.
    pub quotient: Option<u64>,
    pub pass: bool,
}

pub fn verify_ratio_with(p: &Pair, budget: Budget) -> Result<RatioReport> {
    p.require_irreducible()?;
    let prof = profile(p)?;
    let n = p.len();
    let simple = prof.is_simple();
    let predicted = if simple {
        factorial(n) / 2
    } else {
        factorial(n)
    }
    .max(1);
    let h = holonomy(p, Flavor::Extended, budget)?;
    let computed = h.group.order() as u64;
    let expected_labeled = computed as usize * h.nonlabeled_size;
    let (labeled_size, quotient) = if expected_labeled <= budget.labeled {
        let class = enumerate_labeled(p, Flavor::Extended, budget)?;
        let q = class.len() as u64 / h.nonlabeled_size as u64;
        (Some(class.len()), Some(q))
    } else {
        (None, None)
    };
    let exact = labeled_size.map_or(true, |l| l == expected_labeled);
    Ok(RatioReport {
        profile: prof,
        simple,
        predicted,
        computed,
        classification: h.group.classification(),
        generators: h.group.generators().iter().map(|g| g.to_string()).collect(),
        nonlabeled_size: h.nonlabeled_size,
        labeled_size,
        quotient,
        pass: predicted == computed && exact,
    })
}

pub fn verify_ratio(p: &Pair) -> Result<RatioReport> {
    verify_ratio_with(p, Budget::default())
}

/// Outcome of a path search between two pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternSearch {
    /// Induction moves carrying the source to the target, applied left to right.
    Found(Vec<Move>),
    /// The whole class was searched.
    NotFound,
    /// The budget ran out first.
    Unverified { visited: usize },
}

impl PatternSearch {
    pub fn path(&self) -> Option<&[Move]> {
        match self {
            PatternSearch::Found(p) => Some(p),
            _ => None,
        }
    }
}

type Parents = HashMap<u128, (u128, Move)>;

fn trace(parents: &Parents, root: u128, mut k: u128) -> Vec<Move> {
    let mut word = Vec::new();
    while k != root {
        let (parent, mv) = parents[&k];
        word.push(mv);
        k = parent;
    }
    word.reverse();
    word
}

/// Bidirectional breadth-first search for a word of the flavor's moves
/// carrying `p` to `target`. The side with the smaller frontier is expanded
/// one full level at a time.
pub fn find_pattern(
    p: &Pair,
    target: &Pair,
    flavor: Flavor,
    budget: Budget,
) -> Result<PatternSearch> {
    p.require_irreducible()?;
    check_alphabets(p.alphabet(), target.alphabet())?;
    if !target.is_irreducible() {
        return Ok(PatternSearch::NotFound);
    }
    let (src, dst) = (p.rows().key(), target.rows().key());
    if src == dst {
        return Ok(PatternSearch::Found(Vec::new()));
    }
    let mut fwd: Parents = HashMap::from([(src, (src, Move::Right0))]);
    let mut bwd: Parents = HashMap::from([(dst, (dst, Move::Right0))]);
    let mut ffront = vec![*p.rows()];
    let mut bfront = vec![*target.rows()];
    let moves = flavor.moves();
    while !ffront.is_empty() && !bfront.is_empty() {
        let forward = ffront.len() <= bfront.len();
        let mut next = Vec::new();
        let mut meet = None;
        {
            let (front, own, other) = if forward {
                (&ffront, &mut fwd, &bwd)
            } else {
                (&bfront, &mut bwd, &fwd)
            };
            'level: for r in front.iter() {
                let key = r.key();
                for &mv in moves {
                    let s = if forward {
                        r.induce(mv)
                    } else {
                        r.uninduce(mv)
                    };
                    let sk = s.key();
                    if let Entry::Vacant(e) = own.entry(sk) {
                        e.insert((key, mv));
                        if other.contains_key(&sk) {
                            meet = Some(sk);
                            break 'level;
                        }
                        next.push(s);
                    }
                }
            }
        }
        if let Some(m) = meet {
            let mut word = trace(&fwd, src, m);
            let mut back = trace(&bwd, dst, m);
            back.reverse();
            word.extend(back);
            return Ok(PatternSearch::Found(word));
        }
        if fwd.len() + bwd.len() > budget.labeled {
            return Ok(PatternSearch::Unverified {
                visited: fwd.len() + bwd.len(),
            });
        }
        if forward {
            ffront = next;
        } else {
            bfront = next;
        }
    }
    Ok(PatternSearch::NotFound)
}

/// A pair of the class of `p` that equals `shape ∘ ν'` for a bijection `ν'`
/// between the alphabets, with the word reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenamedMatch {
    pub path: Vec<Move>,
    pub pair: Pair,
    /// `(letter of p, letter of shape)` in the alphabet order of `p`.
    pub renaming: Vec<(String, String)>,
}

/// Breadth-first search of the non-labeled class of `p` for the shape of
/// `shape`, which may be written over another alphabet of the same size.
pub fn find_pattern_up_to_renaming(
    p: &Pair,
    shape: &Pair,
    flavor: Flavor,
    budget: Budget,
) -> Result<Option<RenamedMatch>> {
    p.require_irreducible()?;
    if p.len() != shape.len() {
        return Ok(None);
    }
    let goal = shape.rows().nonlabeled_key();
    let start = *p.rows();
    let mut parents: HashMap<u64, (u64, Move)> = HashMap::new();
    let root = start.nonlabeled_key();
    parents.insert(root, (root, Move::Right0));
    let mut queue = std::collections::VecDeque::from([start]);
    let mut found = root == goal;
    while !found {
        let Some(r) = queue.pop_front() else {
            return Ok(None);
        };
        let key = r.nonlabeled_key();
        for &mv in flavor.moves() {
            let s = r.induce(mv);
            let sk = s.nonlabeled_key();
            if let Entry::Vacant(e) = parents.entry(sk) {
                e.insert((key, mv));
                if parents.len() > budget.nonlabeled {
                    return Err(Error::BudgetExceeded {
                        limit: budget.nonlabeled,
                        visited: parents.len(),
                        frontier: queue.len(),
                    });
                }
                queue.push_back(s);
                if sk == goal {
                    found = true;
                    break;
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut k = goal;
    while k != root {
        let (parent, mv) = parents[&k];
        path.push(mv);
        k = parent;
    }
    path.reverse();
    let pair = p.apply_all(&path)?;
    let renaming = p
        .alphabet()
        .letters()
        .map(|x| {
            let pos = pair.position(0, x);
            (
                p.name(x).to_string(),
                shape.name(shape.letter_at(0, pos)).to_string(),
            )
        })
        .collect();
    Ok(Some(RenamedMatch {
        path,
        pair,
        renaming,
    }))
}

/// Every irreducible pair over `a, b, c, …` of size `n`, in canonical order.
pub fn all_irreducible(n: usize) -> Result<Vec<Pair>> {
    let alphabet = Alphabet::standard(n)?;
    let mut rows0: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::new();
    loop {
        let mut rows1: Vec<u8> = (0..n as u8).collect();
        loop {
            let r = Rows::from_words(&rows0, &rows1);
            if r.is_irreducible() {
                out.push(Pair::from_rows(&alphabet, r));
            }
            if !next_permutation(&mut rows1) {
                break;
            }
        }
        if !next_permutation(&mut rows0) {
            break;
        }
    }
    Ok(out)
}

/// Irreducible pairs with top row `a b c …`, one per non-labeled permutation.
pub fn all_irreducible_standardized(n: usize) -> Result<Vec<Pair>> {
    let alphabet = Alphabet::standard(n)?;
    let rows0: Vec<u8> = (0..n as u8).collect();
    let mut rows1 = rows0.clone();
    let mut out = Vec::new();
    loop {
        let r = Rows::from_words(&rows0, &rows1);
        if r.is_irreducible() {
            out.push(Pair::from_rows(&alphabet, r));
        }
        if !next_permutation(&mut rows1) {
            break;
        }
    }
    Ok(out)
}
