//! Switch moves between standard pairs, the renaming `μ_ω` recorded along a
//! switch path, and a breadth-first search for induction words realizing a
//! switch.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::packed::Rows;
use crate::pairs::{Move, Pair};
use crate::perm::{Alphabet, Letter, Permutation};

/// Largest alphabet for which [`realize_switch`] searches for a witness.
pub const REALIZE_CAP: usize = 7;

/// A switch move on a standard pair `a … z | z … a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SwitchMove {
    /// `{b,c}`-switch; `b` precedes `c` in both rows.
    Inner(Letter, Letter),
    /// `{a,d}`-switch.
    OuterA(Letter),
    /// `{d,z}`-switch.
    OuterZ(Letter),
}

impl SwitchMove {
    pub fn is_inner(self) -> bool {
        matches!(self, SwitchMove::Inner(..))
    }

    /// Parses `inner(b,c)`, `outer_a(d)` or `outer_z(d)`.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<SwitchMove> {
        let t = text.trim();
        let err = |m: &str| Error::Parse {
            column: 1,
            message: format!("`{t}`: {m}"),
        };
        let open = t.find('(').ok_or_else(|| err("missing `(`"))?;
        if !t.ends_with(')') {
            return Err(err("missing `)`"));
        }
        let args: Vec<&str> = t[open + 1..t.len() - 1].split(',').map(str::trim).collect();
        let letters = args
            .iter()
            .map(|a| alphabet.letter(a))
            .collect::<Result<Vec<_>>>()?;
        match (t[..open].trim(), letters.as_slice()) {
            ("inner", [b, c]) => Ok(SwitchMove::Inner(*b, *c)),
            ("outer_a", [d]) => Ok(SwitchMove::OuterA(*d)),
            ("outer_z", [d]) => Ok(SwitchMove::OuterZ(*d)),
            _ => Err(err("expected inner(b,c), outer_a(d) or outer_z(d)")),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplaySwitch {
            mv: *self,
            alphabet,
        }
    }

    /// The same move with its letters looked up by name in another alphabet.
    pub fn relabel(self, from: &Alphabet, to: &Alphabet) -> Result<SwitchMove> {
        let t = |x: Letter| to.letter(from.name(x));
        Ok(match self {
            SwitchMove::Inner(b, c) => SwitchMove::Inner(t(b)?, t(c)?),
            SwitchMove::OuterA(d) => SwitchMove::OuterA(t(d)?),
            SwitchMove::OuterZ(d) => SwitchMove::OuterZ(t(d)?),
        })
    }

    /// Checks the move's preconditions on `p`.
    pub fn check(self, p: &Pair) -> Result<()> {
        p.require_standard()?;
        let (a, z) = (p.first(0), p.first(1));
        let name = |x: Letter| p.name(x).to_string();
        let interior = |x: Letter| -> Result<()> {
            if x == a || x == z {
                Err(Error::Precondition(format!(
                    "{} is a corner letter of {p}",
                    name(x)
                )))
            } else {
                Ok(())
            }
        };
        match self {
            SwitchMove::Inner(b, c) => {
                interior(b)?;
                interior(c)?;
                if p.position(0, b) >= p.position(0, c) || p.position(1, b) >= p.position(1, c) {
                    return Err(Error::Precondition(format!(
                        "{} does not precede {} in both rows of {p}",
                        name(b),
                        name(c)
                    )));
                }
                Ok(())
            }
            SwitchMove::OuterA(d) | SwitchMove::OuterZ(d) => interior(d),
        }
    }

    /// The target pair of the move.
    pub fn apply(self, p: &Pair) -> Result<Pair> {
        self.check(p)?;
        let n = p.len();
        let r0 = p.rows().row(0);
        let r1 = p.rows().row(1);
        let (w0, w1) = match self {
            SwitchMove::Inner(b, c) => {
                let seg = |row: &[u8], e: usize| {
                    let (i, j) = (p.position(e, b), p.position(e, c));
                    let (u, v, w) = (&row[1..i], &row[i + 1..j], &row[j + 1..n - 1]);
                    let mut out = vec![row[0]];
                    out.extend_from_slice(v);
                    out.push(c.index() as u8);
                    out.extend_from_slice(u);
                    out.push(b.index() as u8);
                    out.extend_from_slice(w);
                    out.push(row[n - 1]);
                    out
                };
                (seg(r0, 0), seg(r1, 1))
            }
            SwitchMove::OuterA(d) | SwitchMove::OuterZ(d) => {
                let split = |row: &[u8], e: usize| {
                    let i = p.position(e, d);
                    (row[1..i].to_vec(), row[i + 1..n - 1].to_vec())
                };
                let (u0, v0) = split(r0, 0);
                let (u1, v1) = split(r1, 1);
                let (a, z, d) = (r0[0], r1[0], d.index() as u8);
                let build = |first: u8, v: &[u8], mid: u8, u: &[u8], last: u8| {
                    let mut out = vec![first];
                    out.extend_from_slice(v);
                    out.push(mid);
                    out.extend_from_slice(u);
                    out.push(last);
                    out
                };
                if matches!(self, SwitchMove::OuterA(_)) {
                    (build(d, &v0, a, &u0, z), build(z, &v1, a, &u1, d))
                } else {
                    (build(a, &v0, z, &u0, d), build(d, &v1, z, &u1, a))
                }
            }
        };
        Ok(Pair::from_rows(p.alphabet(), Rows::from_words(&w0, &w1)))
    }

    /// `μ_ω` for this move applied to `p`: `(a,z,d)` for an `{a,d}`-switch,
    /// the identity otherwise.
    pub fn mu(self, p: &Pair) -> Result<Permutation> {
        self.check(p)?;
        match self {
            SwitchMove::OuterA(d) => Permutation::cycle(p.alphabet(), &[p.first(0), p.first(1), d]),
            _ => Ok(Permutation::identity(p.alphabet())),
        }
    }

    /// Every legal switch move on a standard pair, inner moves first, each
    /// group in letter order.
    pub fn all_on(p: &Pair) -> Vec<SwitchMove> {
        if !p.is_standard() || !p.is_irreducible() {
            return Vec::new();
        }
        let (a, z) = (p.first(0), p.first(1));
        let interior: Vec<Letter> = p
            .alphabet()
            .letters()
            .filter(|&x| x != a && x != z)
            .collect();
        let mut out = Vec::new();
        for &b in &interior {
            for &c in &interior {
                if p.position(0, b) < p.position(0, c) && p.position(1, b) < p.position(1, c) {
                    out.push(SwitchMove::Inner(b, c));
                }
            }
        }
        out.extend(interior.iter().map(|&d| SwitchMove::OuterA(d)));
        out.extend(interior.iter().map(|&d| SwitchMove::OuterZ(d)));
        out
    }
}

struct DisplaySwitch<'a> {
    mv: SwitchMove,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplaySwitch<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = |x: Letter| self.alphabet.name(x);
        match self.mv {
            SwitchMove::Inner(b, c) => write!(f, "inner({},{})", n(b), n(c)),
            SwitchMove::OuterA(d) => write!(f, "outer_a({})", n(d)),
            SwitchMove::OuterZ(d) => write!(f, "outer_z({})", n(d)),
        }
    }
}

/// A sequence of switch moves from a standard pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchPath {
    pub start: Pair,
    pub moves: Vec<SwitchMove>,
}

impl SwitchPath {
    pub fn new(start: Pair, moves: Vec<SwitchMove>) -> SwitchPath {
        SwitchPath { start, moves }
    }

    /// Parses `inner(b,c); outer_a(d); outer_z(e)` over the start pair's alphabet.
    pub fn parse(start: Pair, text: &str) -> Result<SwitchPath> {
        let moves = text
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| SwitchMove::parse(start.alphabet(), s))
            .collect::<Result<Vec<_>>>()?;
        Ok(SwitchPath { start, moves })
    }

    /// Every pair along the path, the start included.
    pub fn pairs(&self) -> Result<Vec<Pair>> {
        let mut out = vec![self.start.clone()];
        for mv in &self.moves {
            let next = mv.apply(out.last().expect("non-empty"))?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<Pair> {
        Ok(self.pairs()?.pop().expect("non-empty"))
    }

    /// `μ_{ω1} μ_{ω2} ⋯ μ_{ωk}`, with corners read from the pair at each step.
    pub fn mu(&self) -> Result<Permutation> {
        let mut current = self.start.clone();
        let mut mu = Permutation::identity(current.alphabet());
        for mv in &self.moves {
            mu = mu.compose_unchecked(&mv.mu(&current)?);
            current = mv.apply(&current)?;
        }
        Ok(mu)
    }
}

impl fmt::Display for SwitchPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, mv) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", mv.display(self.start.alphabet()))?;
        }
        Ok(())
    }
}

/// Outcome of a realizability search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    /// A shortest induction word, lexicographically first in move order.
    Witness(Vec<Move>),
    /// The alphabet exceeds the search cap.
    Unverified,
}

/// Breadth-first search tree of the labeled extended class of one source
/// pair. The tree is grown on demand and shared between queries, so asking
/// for many targets from one source costs a single traversal.
pub struct InductionSearch {
    source: Pair,
    parents: HashMap<u128, (u128, Move)>,
    queue: VecDeque<Rows>,
    cap: usize,
}

impl InductionSearch {
    pub fn new(source: &Pair) -> Result<InductionSearch> {
        source.require_irreducible()?;
        let root = source.rows().key();
        let mut parents = HashMap::new();
        parents.insert(root, (root, Move::Right0));
        Ok(InductionSearch {
            source: source.clone(),
            parents,
            queue: VecDeque::from([*source.rows()]),
            cap: REALIZE_CAP,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> InductionSearch {
        self.cap = cap;
        self
    }

    pub fn source(&self) -> &Pair {
        &self.source
    }

    /// Nodes discovered so far.
    pub fn discovered(&self) -> usize {
        self.parents.len()
    }

    fn path_to(&self, key: u128) -> Vec<Move> {
        let root = self.source.rows().key();
        let mut word = Vec::new();
        let mut k = key;
        while k != root {
            let (parent, mv) = self.parents[&k];
            word.push(mv);
            k = parent;
        }
        word.reverse();
        word
    }

    /// Shortest induction word from the source to `target`, or `None` when
    /// `target` is outside the extended class.
    pub fn witness(&mut self, target: &Pair) -> Result<Realization> {
        crate::perm::check_alphabets(self.source.alphabet(), target.alphabet())?;
        if self.source.len() > self.cap {
            return Ok(Realization::Unverified);
        }
        let goal = target.rows().key();
        if self.parents.contains_key(&goal) {
            return Ok(Realization::Witness(self.path_to(goal)));
        }
        while let Some(rows) = self.queue.pop_front() {
            let key = rows.key();
            let mut found = false;
            for mv in Move::ALL {
                let next = rows.induce(mv);
                let nk = next.key();
                if let std::collections::hash_map::Entry::Vacant(e) = self.parents.entry(nk) {
                    e.insert((key, mv));
                    self.queue.push_back(next);
                    found |= nk == goal;
                }
            }
            if found {
                return Ok(Realization::Witness(self.path_to(goal)));
            }
        }
        Err(Error::Precondition(format!(
            "{target} is not in the extended class of {}",
            self.source
        )))
    }
}

/// Finds a shortest induction word carrying `p` to the target of `m`.
/// A missing witness is an internal error: every switch is realizable.
pub fn realize_switch(p: &Pair, m: SwitchMove) -> Result<Realization> {
    let target = m.apply(p)?;
    let mut search = InductionSearch::new(p)?;
    match search.witness(&target) {
        Err(Error::Precondition(msg)) => Err(Error::Internal(format!(
            "no induction word realizes {}: {msg}",
            m.display(p.alphabet())
        ))),
        other => other,
    }
}
