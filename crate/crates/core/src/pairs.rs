//! Labeled permutations ("pairs"), irreducibility, standardness, the four
//! Rauzy induction moves, renaming, and the projection to non-labeled
//! permutations.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::packed::Rows;
pub use crate::packed::{Move, Side};
use crate::perm::{check_alphabets, same_alphabet, Alphabet, Letter, Permutation, MAX_LETTERS};

/// A pair `p = (p0, p1)` of bijections from an alphabet onto positions.
///
/// Displayed as two rows, top row `p0`, e.g. `a b c | c b a`. Positions are
/// 0-based throughout the API.
#[derive(Clone)]
pub struct Pair {
    alphabet: Arc<Alphabet>,
    rows: Rows,
    pos: [[u8; MAX_LETTERS]; 2],
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && same_alphabet(&self.alphabet, &other.alphabet)
    }
}

impl Eq for Pair {}

impl Hash for Pair {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.key().hash(state);
        self.alphabet.hash(state);
    }
}

impl Pair {
    pub(crate) fn from_rows(alphabet: &Arc<Alphabet>, rows: Rows) -> Pair {
        debug_assert_eq!(alphabet.len(), rows.len());
        Pair {
            alphabet: alphabet.clone(),
            pos: [rows.positions(0), rows.positions(1)],
            rows,
        }
    }

    /// Builds a pair from its two row words.
    pub fn new(alphabet: &Arc<Alphabet>, row0: &[Letter], row1: &[Letter]) -> Result<Pair> {
        let n = alphabet.len();
        for (e, row) in [row0, row1].into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Precondition(format!(
                    "row {e} has {} letters, alphabet has {n}",
                    row.len()
                )));
            }
            let mut seen = [false; MAX_LETTERS];
            for l in row {
                if l.index() >= n || std::mem::replace(&mut seen[l.index()], true) {
                    return Err(Error::Precondition(format!("row {e} is not a bijection")));
                }
            }
        }
        let r0: Vec<u8> = row0.iter().map(|l| l.index() as u8).collect();
        let r1: Vec<u8> = row1.iter().map(|l| l.index() as u8).collect();
        Ok(Pair::from_rows(alphabet, Rows::from_words(&r0, &r1)))
    }

    /// Builds a pair from two rows of letter names; the alphabet is the set of
    /// names in `row0`.
    pub fn from_names<S: AsRef<str>>(row0: &[S], row1: &[S]) -> Result<Pair> {
        let alphabet = Alphabet::new(row0.iter().map(|s| s.as_ref().to_string()))?;
        let letters = |row: &[S]| {
            row.iter()
                .map(|s| alphabet.letter(s.as_ref()))
                .collect::<Result<Vec<_>>>()
        };
        let (w0, w1) = (letters(row0)?, letters(row1)?);
        Pair::new(&alphabet, &w0, &w1)
    }

    /// Parses `a b c | c b a`. The alphabet is the set of letters of the top
    /// row. Reducible pairs parse fine; check [`Pair::is_irreducible`].
    pub fn parse(text: &str) -> Result<Pair> {
        let (rows, _) = split_rows(text)?;
        for (k, &(column, name)) in rows[0].iter().enumerate() {
            if rows[0][..k].iter().any(|&(_, s)| s == name) {
                return Err(Error::Parse {
                    column,
                    message: format!("duplicate letter `{name}` in row 0"),
                });
            }
        }
        let alphabet =
            Alphabet::new(rows[0].iter().map(|(_, s)| s.to_string())).map_err(|e| match e {
                Error::InvalidAlphabet(m) => Error::Parse {
                    column: rows[0].first().map_or(1, |(c, _)| *c),
                    message: m,
                },
                Error::TooLarge { .. } => e,
                e => e,
            })?;
        Pair::parse_rows(&alphabet, rows)
    }

    /// Parses a pair over a given alphabet.
    pub fn parse_with(alphabet: &Arc<Alphabet>, text: &str) -> Result<Pair> {
        let (rows, _) = split_rows(text)?;
        Pair::parse_rows(alphabet, rows)
    }

    fn parse_rows(alphabet: &Arc<Alphabet>, rows: [Vec<(usize, &str)>; 2]) -> Result<Pair> {
        let n = alphabet.len();
        let mut words: [Vec<Letter>; 2] = [Vec::new(), Vec::new()];
        for e in 0..2 {
            let mut seen = [false; MAX_LETTERS];
            for &(column, name) in &rows[e] {
                let l = alphabet.letter(name).map_err(|_| Error::Parse {
                    column,
                    message: format!("letter `{name}` of row {e} does not occur in the top row"),
                })?;
                if std::mem::replace(&mut seen[l.index()], true) {
                    return Err(Error::Parse {
                        column,
                        message: format!("duplicate letter `{name}` in row {e}"),
                    });
                }
                words[e].push(l);
            }
            if words[e].len() != n {
                let column = rows[e].last().map_or(1, |(c, _)| *c);
                return Err(Error::Parse {
                    column,
                    message: format!("row {e} has {} letters, expected {n}", words[e].len()),
                });
            }
        }
        Pair::new(alphabet, &words[0], &words[1])
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.len() == 0
    }

    pub(crate) fn rows(&self) -> &Rows {
        &self.rows
    }

    /// Row `e` as a word of letters.
    pub fn row(&self, e: usize) -> Vec<Letter> {
        self.rows
            .row(e)
            .iter()
            .map(|&l| Letter::new(l as usize))
            .collect()
    }

    /// Letter at position `k` (0-based) of row `e`; this is `p_e⁻¹(k+1)`.
    #[inline]
    pub fn letter_at(&self, e: usize, k: usize) -> Letter {
        Letter::new(self.rows.w[e][k] as usize)
    }

    /// Position (0-based) of `x` in row `e`; this is `p_e(x) - 1`.
    #[inline]
    pub fn position(&self, e: usize, x: Letter) -> usize {
        self.pos[e][x.index()] as usize
    }

    pub fn first(&self, e: usize) -> Letter {
        self.letter_at(e, 0)
    }

    pub fn last(&self, e: usize) -> Letter {
        self.letter_at(e, self.len() - 1)
    }

    pub fn name(&self, x: Letter) -> &str {
        self.alphabet.name(x)
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.alphabet.letter(name)
    }

    /// `p1 ∘ p0⁻¹ ({1..k}) = {1..k}` only for `k = N`.
    pub fn is_irreducible(&self) -> bool {
        self.rows.is_irreducible()
    }

    /// The first letter of each row is the last letter of the other.
    pub fn is_standard(&self) -> bool {
        self.rows.is_standard()
    }

    pub(crate) fn require_irreducible(&self) -> Result<()> {
        if self.is_irreducible() {
            Ok(())
        } else {
            Err(Error::Reducible(self.to_string()))
        }
    }

    pub(crate) fn require_standard(&self) -> Result<()> {
        self.require_irreducible()?;
        if self.is_standard() {
            Ok(())
        } else {
            Err(Error::NotStandard(self.to_string()))
        }
    }

    /// One Rauzy induction move. `kept_row` is the row `ε` left unchanged.
    pub fn induce(&self, side: Side, kept_row: usize) -> Result<Pair> {
        self.apply(Move::new(side, kept_row))
    }

    pub fn apply(&self, mv: Move) -> Result<Pair> {
        self.require_irreducible()?;
        Ok(Pair::from_rows(&self.alphabet, self.rows.induce(mv)))
    }

    /// Applies a word of induction moves left to right.
    pub fn apply_all(&self, moves: &[Move]) -> Result<Pair> {
        self.require_irreducible()?;
        let mut rows = self.rows;
        for &mv in moves {
            rows = rows.induce(mv);
        }
        Ok(Pair::from_rows(&self.alphabet, rows))
    }

    /// Both rows written backwards. Conjugating a right move by this map
    /// gives the left move with the same kept row.
    pub fn mirror(&self) -> Pair {
        Pair::from_rows(&self.alphabet, self.rows.mirror())
    }

    /// `p ∘ ν = (p0 ∘ ν, p1 ∘ ν)`.
    pub fn rename(&self, nu: &Permutation) -> Result<Pair> {
        check_alphabets(&self.alphabet, nu.alphabet())?;
        Ok(Pair::from_rows(&self.alphabet, self.rows.renamed(nu.raw())))
    }

    /// The renaming `ν` with `self = other ∘ ν`, if the two pairs project to
    /// the same non-labeled permutation.
    pub fn renaming_from(&self, other: &Pair) -> Option<Permutation> {
        if !same_alphabet(&self.alphabet, &other.alphabet)
            || self.rows.nonlabeled_key() != other.rows.nonlabeled_key()
        {
            return None;
        }
        Some(Permutation::from_raw(
            &self.alphabet,
            self.rows.renaming_to(&other.rows),
        ))
    }

    pub fn to_nonlabeled(&self) -> NonLabeledPerm {
        let n = self.len();
        NonLabeledPerm {
            images: (0..n)
                .map(|k| self.pos[1][self.rows.w[0][k] as usize] + 1)
                .collect(),
        }
    }

    /// Row words as letter indices, row 0 then row 1.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut v = self.rows.row(0).to_vec();
        v.extend_from_slice(self.rows.row(1));
        v
    }
}

fn words(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices().chain([(s.len(), ' ')]) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(st)) => {
                out.push((offset + st + 1, &s[st..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn split_rows(text: &str) -> Result<([Vec<(usize, &str)>; 2], usize)> {
    let bars: Vec<usize> = text.match_indices('|').map(|(i, _)| i).collect();
    if bars.len() != 1 {
        return Err(Error::Parse {
            column: bars.get(1).map_or(text.len() + 1, |i| i + 1),
            message: "expected exactly one `|` separating the two rows".into(),
        });
    }
    let bar = bars[0];
    let top = words(&text[..bar], 0);
    let bottom = words(&text[bar + 1..], bar + 1);
    if top.is_empty() || bottom.is_empty() {
        return Err(Error::Parse {
            column: if top.is_empty() { 1 } else { bar + 2 },
            message: "empty row".into(),
        });
    }
    Ok(([top, bottom], bar))
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in 0..2 {
            if e == 1 {
                f.write_str(" |")?;
            }
            for (k, &l) in self.rows.row(e).iter().enumerate() {
                if k > 0 || e == 1 {
                    f.write_str(" ")?;
                }
                f.write_str(self.alphabet.name(Letter::new(l as usize)))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pair({self})")
    }
}

/// A permutation of `{1..N}` in one-line notation: `π(i) = p1(p0⁻¹(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonLabeledPerm {
    images: Vec<u8>,
}

impl NonLabeledPerm {
    pub fn from_one_line(images: &[usize]) -> Result<NonLabeledPerm> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in images {
            if i == 0 || i > n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Precondition(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
        }
        Ok(NonLabeledPerm {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// 1-based images.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// The pair over `a, b, c, …` whose top row is in alphabetical order and
    /// which projects to `self`.
    pub fn standard_pair(&self) -> Result<Pair> {
        let alphabet = Alphabet::standard(self.len())?;
        let n = self.len();
        let row0: Vec<u8> = (0..n as u8).collect();
        let mut row1 = vec![0u8; n];
        for (letter, &p) in self.images.iter().enumerate() {
            row1[p as usize - 1] = letter as u8;
        }
        Ok(Pair::from_rows(&alphabet, Rows::from_words(&row0, &row1)))
    }
}

impl fmt::Display for NonLabeledPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}
