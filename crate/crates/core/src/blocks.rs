//! Block decompositions of standard pairs, block forms, pair types and spin
//! parity.
//!
//! The interior of a standard pair `a … z | z … a` splits uniquely into
//! minimal *atoms*: position ranges holding the same letters in both rows.
//! Atoms of one letter are empty blocks; an atom whose bottom row is the top
//! row reversed is a `k`-reversal. Runs of atoms are then grouped greedily
//! into the five block forms:
//!
//! * form 0: an empty block;
//! * form 1: a reversal of `n ≥ 5` letters (shorter reversals are read as
//!   forms 2, 4 and 3 below);
//! * form 2: `n ≥ 1` consecutive 2-reversals;
//! * form 3: a 4-reversal followed by `n ≥ 0` 2-reversals;
//! * form 4: `m` 2-reversals, a 3-reversal, then `n` 2-reversals.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::invariants::profile;
use crate::packed::Rows;
use crate::pairs::{Move, Pair};
use crate::perm::{Alphabet, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Empty,
    Reversal { n: usize },
    Twos { n: usize },
    FourAndTwos { n: usize },
    ThreeAndTwos { m: usize, n: usize },
}

impl Form {
    pub fn number(self) -> u8 {
        match self {
            Form::Empty => 0,
            Form::Reversal { .. } => 1,
            Form::Twos { .. } => 2,
            Form::FourAndTwos { .. } => 3,
            Form::ThreeAndTwos { .. } => 4,
        }
    }

    /// Length of the block when it is a single reversal, whatever form label
    /// it carries.
    pub fn reversal_length(self) -> Option<usize> {
        match self {
            Form::Reversal { n } => Some(n),
            Form::Twos { n: 1 } => Some(2),
            Form::FourAndTwos { n: 0 } => Some(4),
            Form::ThreeAndTwos { m: 0, n: 0 } => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Form::Empty => f.write_str("form0"),
            Form::Reversal { n } => write!(f, "form1(n={n})"),
            Form::Twos { n } => write!(f, "form2(n={n})"),
            Form::FourAndTwos { n } => write!(f, "form3(n={n})"),
            Form::ThreeAndTwos { m, n } => write!(f, "form4(m={m},n={n})"),
        }
    }
}

/// A block: its letters in top-row order, the position of its first letter,
/// and its form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub letters: Vec<Letter>,
    pub start: usize,
    pub form: Form,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub letters: Vec<String>,
    pub form: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl Block {
    pub fn report(&self, alphabet: &Alphabet) -> BlockReport {
        let (m, n) = match self.form {
            Form::Empty => (None, None),
            Form::Reversal { n } | Form::Twos { n } | Form::FourAndTwos { n } => (None, Some(n)),
            Form::ThreeAndTwos { m, n } => (Some(m), Some(n)),
        };
        BlockReport {
            letters: self
                .letters
                .iter()
                .map(|&l| alphabet.name(l).to_string())
                .collect(),
            form: self.form.number(),
            m,
            n,
        }
    }
}

/// A standard pair written as corners `a`, `z` and a sequence of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub a: Letter,
    pub z: Letter,
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn report(&self, alphabet: &Alphabet) -> Vec<BlockReport> {
        self.blocks.iter().map(|b| b.report(alphabet)).collect()
    }

    pub fn non_empty(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.form != Form::Empty)
    }

    pub fn count(&self, pred: impl Fn(Form) -> bool) -> usize {
        self.blocks.iter().filter(|b| pred(b.form)).count()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayDecomposition { d: self, alphabet }
    }
}

struct DisplayDecomposition<'a> {
    d: &'a BlockDecomposition,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayDecomposition<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.d.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("{")?;
            for (k, &l) in b.letters.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                f.write_str(self.alphabet.name(l))?;
            }
            write!(f, "}}:{}", b.form)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Atom {
    Single,
    Reversal(usize),
}

/// Minimal atoms of the interior, or `None` if some atom is neither a single
/// letter nor a reversal.
fn atoms(rows: &Rows) -> Option<Vec<(usize, usize, Atom)>> {
    let n = rows.len();
    let pos1 = rows.positions(1);
    let mut out = Vec::new();
    let mut s = 1;
    while s + 1 < n {
        let mut reach = s;
        let mut t = s;
        loop {
            reach = reach.max(pos1[rows.w[0][t] as usize] as usize);
            if reach == t {
                break;
            }
            t += 1;
        }
        let len = t - s + 1;
        let atom = if len == 1 {
            Atom::Single
        } else if (0..len).all(|i| rows.w[1][s + i] == rows.w[0][t - i]) {
            Atom::Reversal(len)
        } else {
            return None;
        };
        out.push((s, len, atom));
        s = t + 1;
    }
    Some(out)
}

/// Greedy left-to-right grouping of atoms into blocks.
pub fn decompose(p: &Pair) -> Result<Option<BlockDecomposition>> {
    p.require_standard()?;
    let Some(atoms) = atoms(p.rows()) else {
        return Ok(None);
    };
    let is_two = |i: usize| atoms.get(i).is_some_and(|a| a.2 == Atom::Reversal(2));
    let count_twos = |from: usize| (from..).take_while(|&i| is_two(i)).count();
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < atoms.len() {
        let (start, _, atom) = atoms[i];
        let (form, used) = match atom {
            Atom::Single => (Form::Empty, 1),
            Atom::Reversal(2) => {
                let m = count_twos(i);
                if atoms.get(i + m).is_some_and(|a| a.2 == Atom::Reversal(3)) {
                    let n = count_twos(i + m + 1);
                    (Form::ThreeAndTwos { m, n }, m + 1 + n)
                } else {
                    (Form::Twos { n: m }, m)
                }
            }
            Atom::Reversal(3) => {
                let n = count_twos(i + 1);
                (Form::ThreeAndTwos { m: 0, n }, 1 + n)
            }
            Atom::Reversal(4) => {
                let n = count_twos(i + 1);
                (Form::FourAndTwos { n }, 1 + n)
            }
            Atom::Reversal(k) => (Form::Reversal { n: k }, 1),
        };
        let end = atoms[i + used - 1].0 + atoms[i + used - 1].1;
        blocks.push(Block {
            letters: (start..end).map(|k| p.letter_at(0, k)).collect(),
            start,
            form,
        });
        i += used;
    }
    Ok(Some(BlockDecomposition {
        a: p.first(0),
        z: p.first(1),
        blocks,
    }))
}

/// Whole-pair types, in the order their clauses are tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TypeTag {
    Hyperelliptic,
    OddCyclesOddSpin,
    ThreeOneEven,
    OddCyclesEvenSpin,
    EvenCycles,
    None,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Every type clause the decomposition satisfies, in clause order.
pub fn matching_types_of(d: &BlockDecomposition) -> Vec<TypeTag> {
    let ne: Vec<Form> = d.non_empty().map(|b| b.form).collect();
    let twos = |f: &Form| matches!(f, Form::Twos { .. });
    let rest_twos = |pred: &dyn Fn(&Form) -> bool| {
        ne.iter().filter(|f| pred(f)).count() == 1 && ne.iter().all(|f| pred(f) || twos(f))
    };
    let mut out = Vec::new();
    if ne.len() <= 1 && ne.iter().all(|f| f.reversal_length().is_some()) {
        out.push(TypeTag::Hyperelliptic);
    }
    if ne.iter().all(twos) {
        out.push(TypeTag::OddCyclesOddSpin);
    }
    if rest_twos(&|f| *f == Form::Reversal { n: 5 }) {
        out.push(TypeTag::ThreeOneEven);
    }
    if rest_twos(&|f| matches!(f, Form::FourAndTwos { .. })) {
        out.push(TypeTag::OddCyclesEvenSpin);
    }
    let four = |f: &Form| matches!(f, Form::ThreeAndTwos { .. });
    if ne.iter().any(four) && ne.iter().all(|f| four(f) || twos(f)) {
        out.push(TypeTag::EvenCycles);
    }
    out
}

pub fn matching_types(p: &Pair) -> Result<Vec<TypeTag>> {
    Ok(decompose(p)?.map_or_else(Vec::new, |d| matching_types_of(&d)))
}

/// The first matching type clause, or [`TypeTag::None`].
pub fn classify_type(p: &Pair) -> Result<TypeTag> {
    Ok(matching_types(p)?.first().copied().unwrap_or(TypeTag::None))
}

/// Spin parity, or why it has no value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinParity {
    Zero,
    One,
    /// The profile has an even entry.
    Undefined,
    /// Defined, but no block representative was found to evaluate it.
    NotComputed,
}

impl SpinParity {
    pub fn from_bit(bit: usize) -> SpinParity {
        if bit % 2 == 0 {
            SpinParity::Zero
        } else {
            SpinParity::One
        }
    }

    pub fn value(self) -> Option<u8> {
        match self {
            SpinParity::Zero => Some(0),
            SpinParity::One => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for SpinParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinParity::Zero => f.write_str("0"),
            SpinParity::One => f.write_str("1"),
            SpinParity::Undefined => f.write_str("undefined"),
            SpinParity::NotComputed => f.write_str("not_computed"),
        }
    }
}

impl Serialize for SpinParity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.value() {
            Some(v) => s.serialize_u8(v),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

/// `1 + N₃ + N₄ mod 2` for decompositions made of empty blocks, form 2,
/// form 3 and 5-reversals only.
pub fn spin_of_decomposition(d: &BlockDecomposition) -> SpinParity {
    let mut count = 1;
    for b in &d.blocks {
        match b.form {
            Form::Empty | Form::Twos { .. } => {}
            Form::FourAndTwos { .. } | Form::Reversal { n: 5 } => count += 1,
            _ => return SpinParity::NotComputed,
        }
    }
    SpinParity::from_bit(count)
}

/// Spin parity read off the blocks of `p` itself.
pub fn spin_from_blocks(p: &Pair) -> Result<SpinParity> {
    if !profile(p)?.is_spin_defined() {
        return Ok(SpinParity::Undefined);
    }
    Ok(match decompose(p)? {
        Some(d) => spin_of_decomposition(&d),
        None => SpinParity::NotComputed,
    })
}

/// Result of [`spin`]: the value, the pair it was read from, and a note when
/// the search gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinReport {
    pub value: SpinParity,
    pub representative: Option<Pair>,
    pub note: Option<String>,
}

fn spin_computable(rows: &Rows, alphabet: &std::sync::Arc<Alphabet>) -> Option<(SpinParity, Pair)> {
    if !rows.is_standard() {
        return None;
    }
    let q = Pair::from_rows(alphabet, *rows);
    let d = decompose(&q).ok()??;
    match spin_of_decomposition(&d) {
        SpinParity::NotComputed => None,
        v => Some((v, q)),
    }
}

/// Spin parity of `p`: searches the non-labeled extended class breadth first
/// (row 0 kept in alphabetical order) for a standard pair whose blocks give
/// the value. At most `budget` non-labeled permutations are visited.
pub fn spin_with_budget(p: &Pair, budget: usize) -> Result<SpinReport> {
    p.require_irreducible()?;
    if !profile(p)?.is_spin_defined() {
        return Ok(SpinReport {
            value: SpinParity::Undefined,
            representative: None,
            note: None,
        });
    }
    let alphabet = p.alphabet();
    if let Some((value, q)) = spin_computable(p.rows(), alphabet) {
        return Ok(SpinReport {
            value,
            representative: Some(q),
            note: None,
        });
    }
    let start = p.rows().standardized();
    let mut seen = HashSet::from([start.nonlabeled_key()]);
    let mut queue = VecDeque::from([start]);
    while let Some(rows) = queue.pop_front() {
        if let Some((value, q)) = spin_computable(&rows, alphabet) {
            return Ok(SpinReport {
                value,
                representative: Some(q),
                note: None,
            });
        }
        for mv in Move::ALL {
            let next = rows.induce(mv).standardized();
            if seen.insert(next.nonlabeled_key()) {
                if seen.len() > budget {
                    return Ok(SpinReport {
                        value: SpinParity::NotComputed,
                        representative: None,
                        note: Some(format!(
                            "budget of {budget} non-labeled permutations exhausted"
                        )),
                    });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(SpinReport {
        value: SpinParity::NotComputed,
        representative: None,
        note: Some(format!(
            "no block representative among {} non-labeled permutations",
            seen.len()
        )),
    })
}

pub fn spin(p: &Pair) -> Result<SpinParity> {
    Ok(spin_with_budget(p, crate::classes::Budget::default().nonlabeled)?.value)
}
