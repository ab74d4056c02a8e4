//! Alphabets, permutations of an alphabet, and the closure of generated
//! subgroups of `Sym(A)`.
//!
//! Letters are dense indices into an [`Alphabet`]; the alphabet keeps its
//! display names sorted so that every text rendering is deterministic.
//! Multiplication is composition: `(μν)(x) = μ(ν(x))`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::packed;

/// Largest alphabet any pair or permutation may use.
pub const MAX_LETTERS: usize = 16;

/// Largest alphabet for which subgroup closures are enumerated element by element.
pub const CLOSURE_CAP: usize = 8;

/// Index of a letter inside its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(index: usize) -> Letter {
        debug_assert!(index < MAX_LETTERS);
        Letter(index as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered set of letter names. Names are kept sorted; a letter's index is
/// its rank in that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

fn check_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::InvalidAlphabet("empty letter name".into()));
    }
    if let Some(c) = name
        .chars()
        .find(|c| c.is_whitespace() || "()[]{},;|<-".contains(*c))
    {
        return Err(Error::InvalidAlphabet(format!(
            "letter `{name}` contains reserved character `{c}`"
        )));
    }
    Ok(())
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Alphabet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        for name in &names {
            check_name(name)?;
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidAlphabet(format!(
                "duplicate letter `{}`",
                w[0]
            )));
        }
        if names.len() < 2 {
            return Err(Error::InvalidAlphabet(format!(
                "an alphabet needs at least 2 letters, got {}",
                names.len()
            )));
        }
        if names.len() > MAX_LETTERS {
            return Err(Error::TooLarge {
                what: "alphabets",
                size: names.len(),
                limit: MAX_LETTERS,
            });
        }
        Ok(Arc::new(Alphabet { names }))
    }

    /// The alphabet `a, b, c, …` of size `n`.
    pub fn standard(n: usize) -> Result<Arc<Alphabet>> {
        if n > MAX_LETTERS {
            return Err(Error::TooLarge {
                what: "alphabets",
                size: n,
                limit: MAX_LETTERS,
            });
        }
        Alphabet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(Letter::new)
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .map(Letter::new)
            .map_err(|_| Error::UnknownLetter(name.to_string()))
    }

    /// A new alphabet with `name` added, together with the index map from the
    /// letters of `self` into it.
    pub fn extended(&self, name: &str) -> Result<(Arc<Alphabet>, Vec<Letter>)> {
        if self.letter(name).is_ok() {
            return Err(Error::Precondition(format!(
                "letter `{name}` already belongs to the alphabet"
            )));
        }
        let bigger = Alphabet::new(self.names.iter().cloned().chain([name.to_string()]))?;
        let map = self
            .names
            .iter()
            .map(|n| bigger.letter(n).expect("old letters survive"))
            .collect();
        Ok((bigger, map))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_alphabets(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> Result<()> {
    if same_alphabet(a, b) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch(format!("{{{a}}} vs {{{b}}}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl std::ops::BitXor for Parity {
    type Output = Parity;

    fn bitxor(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A bijection of an alphabet onto itself.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    alphabet: Arc<Alphabet>,
    map: Vec<u8>,
}

impl Permutation {
    pub fn identity(alphabet: &Arc<Alphabet>) -> Permutation {
        Permutation {
            alphabet: alphabet.clone(),
            map: (0..alphabet.len() as u8).collect(),
        }
    }

    /// Builds a permutation from the image of each letter, in letter order.
    pub fn from_images(alphabet: &Arc<Alphabet>, images: &[Letter]) -> Result<Permutation> {
        let n = alphabet.len();
        if images.len() != n {
            return Err(Error::Precondition(format!(
                "expected {n} images, got {}",
                images.len()
            )));
        }
        let mut seen = vec![false; n];
        for img in images {
            if img.index() >= n || std::mem::replace(&mut seen[img.index()], true) {
                return Err(Error::Precondition("images do not form a bijection".into()));
            }
        }
        Ok(Permutation {
            alphabet: alphabet.clone(),
            map: images.iter().map(|l| l.0).collect(),
        })
    }

    pub(crate) fn from_raw(alphabet: &Arc<Alphabet>, map: Vec<u8>) -> Permutation {
        debug_assert_eq!(map.len(), alphabet.len());
        Permutation {
            alphabet: alphabet.clone(),
            map,
        }
    }

    pub fn from_cycles(alphabet: &Arc<Alphabet>, cycles: &[Vec<Letter>]) -> Result<Permutation> {
        let n = alphabet.len();
        let mut map: Vec<u8> = (0..n as u8).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for l in cycle {
                if l.index() >= n {
                    return Err(Error::UnknownLetter(format!("#{}", l.index())));
                }
                if std::mem::replace(&mut used[l.index()], true) {
                    return Err(Error::Precondition(format!(
                        "letter `{}` appears in more than one cycle",
                        alphabet.name(*l)
                    )));
                }
            }
            for (i, l) in cycle.iter().enumerate() {
                map[l.index()] = cycle[(i + 1) % cycle.len()].0;
            }
        }
        Ok(Permutation {
            alphabet: alphabet.clone(),
            map,
        })
    }

    /// The single cycle `(l0, l1, …)`.
    pub fn cycle(alphabet: &Arc<Alphabet>, letters: &[Letter]) -> Result<Permutation> {
        Permutation::from_cycles(alphabet, &[letters.to_vec()])
    }

    /// Parses cycle notation such as `(a,b,c)(d,e)`. Whitespace is ignored and
    /// the empty string (or `()`) is the identity.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Permutation> {
        let mut cycles = Vec::new();
        let mut chars = text.char_indices().peekable();
        let err = |column: usize, message: &str| Error::Parse {
            column: column + 1,
            message: message.to_string(),
        };
        loop {
            while chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
                chars.next();
            }
            let Some((col, c)) = chars.next() else { break };
            if c != '(' {
                return Err(err(col, "expected `(`"));
            }
            let mut cycle = Vec::new();
            let mut name = String::new();
            let mut name_col = col + 1;
            loop {
                let Some((col, c)) = chars.next() else {
                    return Err(err(text.len(), "unterminated cycle"));
                };
                match c {
                    ',' | ')' => {
                        if name.is_empty() {
                            if !(c == ')' && cycle.is_empty()) {
                                return Err(err(col, "empty letter"));
                            }
                        } else {
                            let letter = alphabet
                                .letter(&name)
                                .map_err(|_| err(name_col, &format!("unknown letter `{name}`")))?;
                            cycle.push(letter);
                            name.clear();
                        }
                        if c == ')' {
                            break;
                        }
                    }
                    c if c.is_whitespace() => {}
                    c => {
                        if name.is_empty() {
                            name_col = col;
                        }
                        name.push(c);
                    }
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Permutation::from_cycles(alphabet, &cycles).map_err(|e| match e {
            Error::Precondition(m) => Error::Parse {
                column: 1,
                message: m,
            },
            e => e,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: Letter) -> Letter {
        Letter(self.map[x.index()])
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.map
    }

    pub fn images(&self) -> impl Iterator<Item = Letter> + '_ {
        self.map.iter().map(|&i| Letter(i))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_alphabets(&self.alphabet, &other.alphabet)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            alphabet: self.alphabet.clone(),
            map: other.map.iter().map(|&x| self.map[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation {
            alphabet: self.alphabet.clone(),
            map: inv,
        }
    }

    /// `ν⁻¹ ∘ self ∘ ν`.
    pub fn conjugate_by(&self, nu: &Permutation) -> Result<Permutation> {
        check_alphabets(&self.alphabet, &nu.alphabet)?;
        Ok(nu.inverse().compose_unchecked(&self.compose_unchecked(nu)))
    }

    /// All cycles, fixed points included, each starting at its smallest letter
    /// and ordered by that letter.
    pub fn all_cycles(&self) -> Vec<Vec<Letter>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(Letter::new(x));
                x = self.map[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Non-trivial cycles in canonical order; empty for the identity.
    pub fn cycles(&self) -> Vec<Vec<Letter>> {
        self.all_cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    pub fn parity(&self) -> Parity {
        let cycles = self.all_cycles().len();
        if (self.map.len() - cycles) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub(crate) fn key(&self) -> u64 {
        packed::pack_u64(&self.map)
    }
}

pub(crate) fn write_cycle(
    f: &mut impl fmt::Write,
    alphabet: &Alphabet,
    cycle: &[Letter],
) -> fmt::Result {
    f.write_char('(')?;
    for (i, l) in cycle.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        f.write_str(alphabet.name(*l))?;
    }
    f.write_char(')')
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in &cycles {
            write_cycle(f, &self.alphabet, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.map.cmp(&other.map)
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Every permutation of an alphabet in lexicographic image order.
pub struct AllPermutations {
    alphabet: Arc<Alphabet>,
    next: Option<Vec<u8>>,
}

impl AllPermutations {
    pub fn new(alphabet: &Arc<Alphabet>) -> AllPermutations {
        AllPermutations {
            alphabet: alphabet.clone(),
            next: Some((0..alphabet.len() as u8).collect()),
        }
    }
}

pub(crate) fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation::from_raw(&self.alphabet, current))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupClassification {
    Alternating,
    Symmetric,
    Other { order: u64 },
}

impl GroupClassification {
    pub fn order(&self, n: usize) -> u64 {
        match self {
            GroupClassification::Alternating => (factorial(n) / 2).max(1),
            GroupClassification::Symmetric => factorial(n),
            GroupClassification::Other { order } => *order,
        }
    }
}

impl fmt::Display for GroupClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClassification::Alternating => f.write_str("Alternating"),
            GroupClassification::Symmetric => f.write_str("Symmetric"),
            GroupClassification::Other { order } => write!(f, "Other(order {order})"),
        }
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > CLOSURE_CAP {
        Err(Error::TooLarge {
            what: "subgroup closure",
            size: n,
            limit: CLOSURE_CAP,
        })
    } else {
        Ok(())
    }
}

/// Breadth-first closure of `gens` from the identity. Stops as soon as more
/// than `stop_above` elements are known.
fn closure_keys(n: usize, gens: &[Vec<u8>], stop_above: usize) -> HashSet<u64> {
    let id: Vec<u8> = (0..n as u8).collect();
    let mut set = HashSet::new();
    set.insert(packed::pack_u64(&id));
    let mut queue = vec![id];
    let mut product = vec![0u8; n];
    while let Some(e) = queue.pop() {
        for g in gens {
            for i in 0..n {
                product[i] = e[g[i] as usize];
            }
            if set.insert(packed::pack_u64(&product)) {
                if set.len() > stop_above {
                    return set;
                }
                queue.push(product.clone());
            }
        }
    }
    set
}

fn classify(n: usize, size: usize, all_even: bool) -> GroupClassification {
    let full = factorial(n) as usize;
    if size == full {
        GroupClassification::Symmetric
    } else if size > full / 2 {
        // Only Sym(A) itself has more than N!/2 elements.
        GroupClassification::Symmetric
    } else if size == full / 2 && all_even {
        GroupClassification::Alternating
    } else {
        GroupClassification::Other { order: size as u64 }
    }
}

/// Classifies `<gens>` as the alternating group, the symmetric group, or
/// neither, by enumerating the closure.
pub fn classify_generated(
    alphabet: &Arc<Alphabet>,
    gens: &[Permutation],
) -> Result<GroupClassification> {
    let n = alphabet.len();
    check_cap(n)?;
    for g in gens {
        check_alphabets(alphabet, g.alphabet())?;
    }
    let raw: Vec<Vec<u8>> = gens.iter().map(|g| g.map.clone()).collect();
    let half = (factorial(n) / 2) as usize;
    let set = closure_keys(n, &raw, half.max(1));
    let all_even = gens.iter().all(Permutation::is_even);
    if set.len() > half && gens.iter().any(|g| !g.is_even()) {
        return Ok(GroupClassification::Symmetric);
    }
    Ok(classify(n, set.len(), all_even))
}

/// A subgroup of `Sym(A)` held as an explicit element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    alphabet: Arc<Alphabet>,
    generators: Vec<Permutation>,
    keys: HashSet<u64>,
    classification: GroupClassification,
}

impl PermGroup {
    /// Generates the subgroup spanned by `gens`. Redundant generators are
    /// dropped: a candidate is kept only if it is not yet in the closure of
    /// the ones kept before it.
    pub fn generate(alphabet: &Arc<Alphabet>, gens: &[Permutation]) -> Result<PermGroup> {
        let n = alphabet.len();
        check_cap(n)?;
        let mut kept: Vec<Permutation> = Vec::new();
        let mut raw: Vec<Vec<u8>> = Vec::new();
        let mut keys = closure_keys(n, &raw, usize::MAX);
        let full = factorial(n) as usize;
        for g in gens {
            check_alphabets(alphabet, g.alphabet())?;
            if keys.len() == full || keys.contains(&g.key()) {
                continue;
            }
            kept.push(g.clone());
            raw.push(g.map.clone());
            keys = closure_keys(n, &raw, usize::MAX);
        }
        let all_even = kept.iter().all(Permutation::is_even);
        let classification = classify(n, keys.len(), all_even);
        Ok(PermGroup {
            alphabet: alphabet.clone(),
            generators: kept,
            keys,
            classification,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// The irredundant generators retained by [`PermGroup::generate`].
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn classification(&self) -> GroupClassification {
        self.classification
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        same_alphabet(&self.alphabet, g.alphabet()) && self.keys.contains(&g.key())
    }

    /// Elements sorted by their image vectors.
    pub fn elements(&self) -> Vec<Permutation> {
        let n = self.alphabet.len();
        let mut out: Vec<Permutation> = self
            .keys
            .iter()
            .map(|&k| Permutation::from_raw(&self.alphabet, packed::unpack_u64(k, n)))
            .collect();
        out.sort();
        out
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        same_alphabet(&self.alphabet, &other.alphabet) && self.keys == other.keys
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        same_alphabet(&self.alphabet, &other.alphabet) && self.keys.is_subset(&other.keys)
    }
}
