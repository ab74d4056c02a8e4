//! Prefix insertions: a new letter `x` placed immediately before an anchor
//! `b0` in the top row and before an anchor `b1` in the bottom row.
//!
//! Also here: the predicted `Σ` of an inserted pair, the transport of a
//! single insertion across a switch move, and the combined insertion rules
//! joining the blocks of a pair in block normal form into one odd cycle.

use std::fmt;
use std::sync::Arc;

use crate::blocks::{decompose, BlockDecomposition, Form};
use crate::error::{Error, Result};
use crate::invariants::sigma;
use crate::moves::SwitchMove;
use crate::pairs::Pair;
use crate::perm::{Alphabet, Letter, Permutation};

/// New letters `x_i` with anchors `b_i` (top row) and `c_i` (bottom row).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionRule {
    pub new_letters: Vec<String>,
    pub anchors0: Vec<Letter>,
    pub anchors1: Vec<Letter>,
}

impl InsertionRule {
    pub fn new(new_letters: Vec<String>, anchors0: Vec<Letter>, anchors1: Vec<Letter>) -> Self {
        InsertionRule {
            new_letters,
            anchors0,
            anchors1,
        }
    }

    pub fn single(x: &str, b0: Letter, b1: Letter) -> InsertionRule {
        InsertionRule::new(vec![x.to_string()], vec![b0], vec![b1])
    }

    pub fn empty() -> InsertionRule {
        InsertionRule::new(Vec::new(), Vec::new(), Vec::new())
    }

    pub fn len(&self) -> usize {
        self.new_letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_letters.is_empty()
    }

    /// Parses `x<-(b0,b1); y<-(b0',b1')` over `alphabet`.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<InsertionRule> {
        let mut rule = InsertionRule::empty();
        let mut offset = 0;
        for part in text.split(';') {
            let column = offset + 1 + (part.len() - part.trim_start().len());
            offset += part.len() + 1;
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let err = || Error::Parse {
                column,
                message: format!("`{part}`: expected `x<-(b0,b1)`"),
            };
            let (x, rest) = part.split_once("<-").ok_or_else(err)?;
            let args = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(err)?;
            let (b0, b1) = args.split_once(',').ok_or_else(err)?;
            rule.new_letters.push(x.trim().to_string());
            rule.anchors0.push(alphabet.letter(b0.trim())?);
            rule.anchors1.push(alphabet.letter(b1.trim())?);
        }
        rule.validate(alphabet)?;
        Ok(rule)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayRule {
            rule: self,
            alphabet,
        }
    }

    /// New letters fresh and distinct, anchors distinct within each row.
    pub fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        let k = self.len();
        if self.anchors0.len() != k || self.anchors1.len() != k {
            return Err(Error::Precondition(
                "insertion rule needs one anchor per row for each new letter".into(),
            ));
        }
        for (i, x) in self.new_letters.iter().enumerate() {
            if alphabet.letter(x).is_ok() {
                return Err(Error::Precondition(format!(
                    "new letter `{x}` already belongs to the alphabet"
                )));
            }
            if self.new_letters[..i].contains(x) {
                return Err(Error::Precondition(format!("new letter `{x}` is repeated")));
            }
        }
        for (row, anchors) in [&self.anchors0, &self.anchors1].into_iter().enumerate() {
            for (i, b) in anchors.iter().enumerate() {
                if b.index() >= alphabet.len() {
                    return Err(Error::Precondition(format!("anchor {i} is not a letter")));
                }
                if anchors[..i].contains(b) {
                    return Err(Error::Precondition(format!(
                        "anchor `{}` is used twice in row {row}",
                        alphabet.name(*b)
                    )));
                }
            }
        }
        Ok(())
    }
}

struct DisplayRule<'a> {
    rule: &'a InsertionRule,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayRule<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rule.len() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(
                f,
                "{}<-({},{})",
                self.rule.new_letters[i],
                self.alphabet.name(self.rule.anchors0[i]),
                self.alphabet.name(self.rule.anchors1[i])
            )?;
        }
        Ok(())
    }
}

/// All insertions of `rule` at once; no irreducibility check.
fn insert_raw(p: &Pair, rule: &InsertionRule) -> Result<Pair> {
    let rows: Vec<Vec<&str>> = [&rule.anchors0, &rule.anchors1]
        .into_iter()
        .enumerate()
        .map(|(e, anchors)| {
            let mut out = Vec::with_capacity(p.len() + rule.len());
            for l in p.row(e) {
                if let Some(i) = anchors.iter().position(|&b| b == l) {
                    out.push(rule.new_letters[i].as_str());
                }
                out.push(p.name(l));
            }
            out
        })
        .collect();
    Pair::from_names(&rows[0], &rows[1])
}

/// Inserts the rule's letters one at a time in the given order.
fn insert_sequentially(p: &Pair, rule: &InsertionRule, order: &[usize]) -> Result<Pair> {
    let mut q = p.clone();
    for &i in order {
        let b0 = q.letter(p.name(rule.anchors0[i]))?;
        let b1 = q.letter(p.name(rule.anchors1[i]))?;
        q = insert_raw(&q, &InsertionRule::single(&rule.new_letters[i], b0, b1))?;
    }
    Ok(q)
}

/// `Ext(x⃗; b⃗; c⃗)(p)`. The result is computed in one pass and, as a check,
/// by inserting the letters one by one first to last and last to first.
pub fn multi_insert(p: &Pair, rule: &InsertionRule) -> Result<Pair> {
    rule.validate(p.alphabet())?;
    if rule.is_empty() {
        return Ok(p.clone());
    }
    let direct = insert_raw(p, rule)?;
    let forward: Vec<usize> = (0..rule.len()).collect();
    let backward: Vec<usize> = forward.iter().rev().copied().collect();
    for order in [forward, backward] {
        let q = insert_sequentially(p, rule, &order)?;
        if q != direct {
            return Err(Error::Internal(format!(
                "insertions into {p} depend on their order: {q} vs {direct}"
            )));
        }
    }
    direct.require_irreducible()?;
    Ok(direct)
}

/// `Ext(x; b0; b1)(p)`.
pub fn prefix_insert(p: &Pair, x: &str, b0: Letter, b1: Letter) -> Result<Pair> {
    multi_insert(p, &InsertionRule::single(x, b0, b1))
}

/// Deletes one letter from both rows, keeping the order of the others.
/// Inverse of a prefix insertion; meant for tests.
pub fn remove_letter(p: &Pair, x: Letter) -> Result<Pair> {
    let rows: Vec<Vec<&str>> = (0..2)
        .map(|e| {
            p.row(e)
                .into_iter()
                .filter(|&l| l != x)
                .map(|l| p.name(l))
                .collect()
        })
        .collect();
    Pair::from_names(&rows[0], &rows[1])
}

/// `Σ` of `Ext(x; b0; b1)(p)` predicted from `Σ(p)` alone, over the alphabet
/// of `p` extended by `x`.
pub fn predicted_sigma(p: &Pair, x: &str, b0: Letter, b1: Letter) -> Result<Permutation> {
    let s = sigma(p)?;
    let (alphabet, map) = p.alphabet().extended(x)?;
    let xl = alphabet.letter(x)?;
    let mut images = vec![xl; alphabet.len()];
    let joined = s.apply(b1) != b0;
    for a in p.alphabet().letters() {
        let image = if joined && a == b1 {
            b0
        } else if joined && s.apply(a) == b0 {
            images[map[a.index()].index()] = xl;
            continue;
        } else {
            s.apply(a)
        };
        images[map[a.index()].index()] = map[image.index()];
    }
    images[xl.index()] = if joined { map[s.apply(b1).index()] } else { xl };
    Permutation::from_images(&alphabet, &images)
}

/// The single-letter rule `r'` with `ω(Ext_r(p)) = Ext_{r'}(ω(p))`.
pub fn transport_rule(p: &Pair, m: SwitchMove, rule: &InsertionRule) -> Result<InsertionRule> {
    if rule.len() != 1 {
        return Err(Error::Precondition(format!(
            "transport needs a single insertion, got {}",
            rule.len()
        )));
    }
    rule.validate(p.alphabet())?;
    m.check(p)?;
    let (a, z) = (p.first(0), p.first(1));
    let (mut b0, mut b1) = (rule.anchors0[0], rule.anchors1[0]);
    if b0 == a || b1 == z {
        return Err(Error::Precondition(
            "an anchor is the first letter of its row".into(),
        ));
    }
    match m {
        SwitchMove::Inner(..) => {}
        SwitchMove::OuterA(c) => {
            if c == b0 {
                b0 = z;
            } else if b0 == z {
                b0 = a;
            }
        }
        SwitchMove::OuterZ(c) => {
            if c == b1 {
                b1 = a;
            } else if b1 == a {
                b1 = z;
            }
        }
    }
    Ok(InsertionRule::single(&rule.new_letters[0], b0, b1))
}

/// One new letter of a combined rule: the sets its two anchors are drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    /// Which condition the slot comes from, e.g. `(a) j=1`.
    pub condition: String,
    pub top_name: String,
    pub top: Vec<Letter>,
    pub bottom_name: String,
    pub bottom: Vec<Letter>,
}

/// A pair `a B₁ s₁ … B_m s_m C₁ t₁ … C_n t_n` (forms 2 or 3 for the `B`,
/// form 4 for the `C`) and the anchor sets of its combined insertion rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedLayout {
    pub m: usize,
    pub n: usize,
    alphabet: Arc<Alphabet>,
    slots: Vec<Slot>,
}

impl CombinedLayout {
    pub fn of(q: &Pair) -> Result<CombinedLayout> {
        let d = decompose(q)?
            .ok_or_else(|| Error::Precondition(format!("{q} does not decompose into blocks")))?;
        CombinedLayout::from_decomposition(q, &d)
    }

    pub fn from_decomposition(q: &Pair, d: &BlockDecomposition) -> Result<CombinedLayout> {
        let bad = |m: String| Error::Precondition(format!("{q} is not in combined form: {m}"));
        let blocks = &d.blocks;
        if blocks.is_empty() || blocks.len() % 2 == 0 {
            return Err(bad("expected blocks separated by single letters".into()));
        }
        let mut bs: Vec<Vec<Letter>> = Vec::new();
        let mut cs: Vec<(Vec<Letter>, Vec<Letter>)> = Vec::new();
        for (i, block) in blocks.iter().enumerate().step_by(2) {
            let separator = match blocks.get(i + 1) {
                Some(b) if b.form == Form::Empty => b.letters[0],
                Some(_) => return Err(bad("two adjacent non-empty blocks".into())),
                None => d.z,
            };
            let mut letters = block.letters.clone();
            match block.form {
                Form::Twos { .. } | Form::FourAndTwos { .. } if cs.is_empty() => {
                    letters.push(separator);
                    bs.push(letters);
                }
                Form::ThreeAndTwos { m, .. } => {
                    let k = 2 * m;
                    let mut minus = letters[..k].to_vec();
                    minus.push(letters[k]);
                    minus.push(letters[k + 2]);
                    let mut plus = vec![letters[k + 1]];
                    plus.extend_from_slice(&letters[k + 3..]);
                    plus.push(separator);
                    cs.push((minus, plus));
                }
                f => return Err(bad(format!("unexpected {f} block"))),
            }
        }
        let (m, n) = (bs.len(), cs.len());
        let mut slots = Vec::new();
        let mut slot =
            |condition: String, top: (String, &Vec<Letter>), bottom: (String, &Vec<Letter>)| {
                let sorted = |v: &Vec<Letter>| {
                    let mut v = v.clone();
                    v.sort();
                    v
                };
                slots.push(Slot {
                    condition,
                    top_name: top.0,
                    top: sorted(top.1),
                    bottom_name: bottom.0,
                    bottom: sorted(bottom.1),
                });
            };
        for j in 1..=n {
            slot(
                format!("(a) j={j}"),
                (format!("C{j}+"), &cs[j - 1].1),
                (format!("C{j}-"), &cs[j - 1].0),
            );
        }
        for j in 1..n {
            slot(
                format!("(b) j={j}"),
                (format!("C{}-", j + 1), &cs[j].0),
                (format!("C{j}+"), &cs[j - 1].1),
            );
        }
        for j in 1..m {
            slot(
                format!("(c) j={j}"),
                (format!("B{}", j + 1), &bs[j]),
                (format!("B{j}"), &bs[j - 1]),
            );
        }
        if m > 0 && n > 0 {
            slot(
                "(d)".into(),
                ("C1-".into(), &cs[0].0),
                (format!("B{m}"), &bs[m - 1]),
            );
        }
        Ok(CombinedLayout {
            m,
            n,
            alphabet: q.alphabet().clone(),
            slots,
        })
    }

    /// `m + 2n − 1` (zero for a single `B` block).
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Checks every membership condition and the distinctness of anchors.
    pub fn validate(&self, choices: &[(Letter, Letter)]) -> Result<()> {
        if choices.len() != self.len() {
            return Err(Error::Precondition(format!(
                "expected {} anchor pairs, got {}",
                self.len(),
                choices.len()
            )));
        }
        let mut violated = Vec::new();
        for (slot, &(b, c)) in self.slots.iter().zip(choices) {
            if !slot.top.contains(&b) {
                violated.push(format!(
                    "{}: {} not in {}",
                    slot.condition,
                    self.alphabet.name(b),
                    slot.top_name
                ));
            }
            if !slot.bottom.contains(&c) {
                violated.push(format!(
                    "{}: {} not in {}",
                    slot.condition,
                    self.alphabet.name(c),
                    slot.bottom_name
                ));
            }
        }
        if !violated.is_empty() {
            return Err(Error::Precondition(violated.join("; ")));
        }
        Ok(())
    }

    /// Fresh names `x1, x2, …` for the new letters.
    pub fn fresh_names(&self) -> Vec<String> {
        (1..)
            .map(|i| format!("x{i}"))
            .filter(|x| self.alphabet.letter(x).is_err())
            .take(self.len())
            .collect()
    }

    /// The rule for the given anchor choices.
    pub fn rule(&self, choices: &[(Letter, Letter)]) -> Result<InsertionRule> {
        self.validate(choices)?;
        let rule = InsertionRule::new(
            self.fresh_names(),
            choices.iter().map(|c| c.0).collect(),
            choices.iter().map(|c| c.1).collect(),
        );
        rule.validate(&self.alphabet)?;
        Ok(rule)
    }

    /// Legal anchor choices, lexicographic in `(b₁, c₁, b₂, c₂, …)` by letter
    /// order, produced lazily.
    pub fn choices(&self) -> Choices<'_> {
        Choices {
            layout: self,
            index: vec![0; 2 * self.len()],
            done: self
                .slots
                .iter()
                .any(|s| s.top.is_empty() || s.bottom.is_empty()),
        }
    }

    /// The rule for the first legal choice.
    pub fn first_rule(&self) -> Result<InsertionRule> {
        let choice = self
            .choices()
            .next()
            .ok_or_else(|| Error::Precondition("no legal anchor choice".into()))?;
        self.rule(&choice)
    }
}

/// Iterator over legal anchor choices of a [`CombinedLayout`].
pub struct Choices<'a> {
    layout: &'a CombinedLayout,
    index: Vec<usize>,
    done: bool,
}

impl Choices<'_> {
    fn set(&self, k: usize) -> &[Letter] {
        let slot = &self.layout.slots[k / 2];
        if k % 2 == 0 {
            &slot.top
        } else {
            &slot.bottom
        }
    }

    fn current(&self) -> Vec<(Letter, Letter)> {
        (0..self.layout.len())
            .map(|i| {
                (
                    self.set(2 * i)[self.index[2 * i]],
                    self.set(2 * i + 1)[self.index[2 * i + 1]],
                )
            })
            .collect()
    }

    fn advance(&mut self) {
        for k in (0..self.index.len()).rev() {
            self.index[k] += 1;
            if self.index[k] < self.set(k).len() {
                return;
            }
            self.index[k] = 0;
        }
        self.done = true;
    }
}

impl Iterator for Choices<'_> {
    type Item = Vec<(Letter, Letter)>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            let c = self.current();
            self.advance();
            let distinct = |f: fn(&(Letter, Letter)) -> Letter| {
                let v: Vec<Letter> = c.iter().map(f).collect();
                (0..v.len()).all(|i| !v[..i].contains(&v[i]))
            };
            if distinct(|x| x.0) && distinct(|x| x.1) {
                return Some(c);
            }
        }
        None
    }
}

/// The combined rule of `q` for the given anchor choices.
pub fn combined_rule(
    q: &Pair,
    blocks: &BlockDecomposition,
    choices: &[(Letter, Letter)],
) -> Result<InsertionRule> {
    CombinedLayout::from_decomposition(q, blocks)?.rule(choices)
}
