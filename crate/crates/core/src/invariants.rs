//! The singularity data of a pair: `Σ(p)`, the marked structure
//! `N(p) = [X] Y`, the profile `P(p)`, the right action of renamings on
//! marked structures, and their centralizers.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairs::Pair;
use crate::perm::{
    check_alphabets, write_cycle, AllPermutations, Alphabet, Letter, PermGroup, Permutation,
    CLOSURE_CAP,
};

/// `Σ(p)`, evaluated letter by letter from the three-case rule.
pub fn sigma(p: &Pair) -> Result<Permutation> {
    p.require_irreducible()?;
    let n = p.len();
    let last0 = p.last(0);
    let last1 = p.last(1);
    // The letter right after `z_0` in row 1, and its image.
    let after_last0 = p.position(1, last0) + 1;
    debug_assert!(after_last0 < n && p.position(0, last1) + 1 < n);
    let case2_image = p.letter_at(0, p.position(0, last1) + 1);
    let mut images = vec![Letter::new(0); n];
    for x in p.alphabet().letters() {
        let k = p.position(1, x);
        images[x.index()] = if k == 0 {
            p.first(0)
        } else if k == after_last0 {
            case2_image
        } else {
            let y = p.letter_at(1, k - 1);
            p.letter_at(0, p.position(0, y) + 1)
        };
    }
    Permutation::from_images(p.alphabet(), &images)
        .map_err(|e| Error::Internal(format!("sigma of {p} is not a bijection: {e}")))
}

/// `N(p)`: a marked letter `X` and a permutation `Y` fixing it.
///
/// `entry` only affects display: the cycle of `Y` through that letter is
/// written starting from it. For a pair it is `Σ(p)(X)`, the letter `Y` jumps
/// over the marked point to reach. Equality and hashing ignore it.
#[derive(Clone, Debug)]
pub struct MarkedCycleStructure {
    marked: Letter,
    structure: Permutation,
    entry: Option<Letter>,
}

impl PartialEq for MarkedCycleStructure {
    fn eq(&self, other: &Self) -> bool {
        self.marked == other.marked && self.structure == other.structure
    }
}

impl Eq for MarkedCycleStructure {}

impl std::hash::Hash for MarkedCycleStructure {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.marked.hash(state);
        self.structure.hash(state);
    }
}

impl MarkedCycleStructure {
    pub fn new(marked: Letter, structure: Permutation) -> Result<MarkedCycleStructure> {
        if structure.apply(marked) != marked {
            return Err(Error::Precondition(format!(
                "{structure} does not fix the marked letter {}",
                structure.alphabet().name(marked)
            )));
        }
        Ok(MarkedCycleStructure {
            marked,
            structure,
            entry: None,
        })
    }

    pub fn marked(&self) -> Letter {
        self.marked
    }

    pub fn structure(&self) -> &Permutation {
        &self.structure
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.structure.alphabet()
    }

    /// `N ∗ ν`: marked letter `ν⁻¹(X)`, structure `ν⁻¹ Y ν`.
    pub fn act(&self, nu: &Permutation) -> Result<MarkedCycleStructure> {
        check_alphabets(self.alphabet(), nu.alphabet())?;
        let inv = nu.inverse();
        Ok(MarkedCycleStructure {
            marked: inv.apply(self.marked),
            structure: self.structure.conjugate_by(nu)?,
            entry: self.entry.map(|e| inv.apply(e)),
        })
    }

    /// Cycles of `Y` on the unmarked letters, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<Letter>> {
        self.structure
            .all_cycles()
            .into_iter()
            .filter(|c| c[0] != self.marked)
            .collect()
    }

    /// Cycle lengths of `Y` away from the marked letter.
    pub fn profile(&self) -> Profile {
        Profile::new(self.cycles().iter().map(Vec::len).collect())
    }

    /// Order of the centralizer, `∏ ℓ^k · k!` over cycle lengths `ℓ` with
    /// multiplicity `k`.
    pub fn centralizer_order(&self) -> u64 {
        let profile = self.profile();
        let mut order = 1u64;
        let lengths = profile.lengths();
        let mut i = 0;
        while i < lengths.len() {
            let l = lengths[i];
            let k = lengths[i..].iter().take_while(|&&x| x == l).count();
            order *= (l as u64).pow(k as u32) * crate::perm::factorial(k);
            i += k;
        }
        order
    }

    /// Generators of `{ν : N ∗ ν = N}`: each cycle as a rotation, and the
    /// letter-by-letter swap of consecutive cycles of equal length.
    pub fn centralizer_generators(&self) -> Vec<Permutation> {
        let alphabet = self.alphabet();
        let cycles = self.cycles();
        let mut gens = Vec::new();
        for c in &cycles {
            if c.len() > 1 {
                gens.push(Permutation::cycle(alphabet, c).expect("cycle of Y"));
            }
        }
        let mut by_len: Vec<&Vec<Letter>> = cycles.iter().collect();
        by_len.sort_by_key(|c| c.len());
        for w in by_len.windows(2) {
            if w[0].len() == w[1].len() {
                let swaps: Vec<Vec<Letter>> = w[0]
                    .iter()
                    .zip(w[1].iter())
                    .map(|(&x, &y)| vec![x, y])
                    .collect();
                gens.push(Permutation::from_cycles(alphabet, &swaps).expect("disjoint swaps"));
            }
        }
        gens
    }

    /// Elements of the centralizer by filtering `Sym(A)`.
    pub fn centralizer_elements(&self) -> Result<Vec<Permutation>> {
        let n = self.alphabet().len();
        if n > CLOSURE_CAP {
            return Err(Error::TooLarge {
                what: "centralizer by filtering",
                size: n,
                limit: CLOSURE_CAP,
            });
        }
        let y = &self.structure;
        Ok(AllPermutations::new(self.alphabet())
            .filter(|nu| {
                nu.apply(self.marked) == self.marked
                    && nu.compose_unchecked(y) == y.compose_unchecked(nu)
            })
            .collect())
    }

    /// The centralizer, as an explicit group when the alphabet is within the
    /// closure cap (both constructions are computed and must agree), and as a
    /// generator list otherwise.
    pub fn centralizer(&self) -> Result<Centralizer> {
        let generators = self.centralizer_generators();
        let order = self.centralizer_order();
        if self.alphabet().len() > CLOSURE_CAP {
            return Ok(Centralizer {
                generators,
                group: None,
                order,
            });
        }
        let elements = self.centralizer_elements()?;
        let group = PermGroup::generate(self.alphabet(), &generators)?;
        if group.order() != elements.len()
            || elements.iter().any(|e| !group.contains(e))
            || order != elements.len() as u64
        {
            return Err(Error::Internal(format!(
                "centralizer of {self}: filtered {} elements, generated {}, expected {order}",
                elements.len(),
                group.order()
            )));
        }
        Ok(Centralizer {
            generators,
            group: Some(group),
            order,
        })
    }
}

impl fmt::Display for MarkedCycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.alphabet();
        write!(f, "[{}]", alphabet.name(self.marked))?;
        for mut c in self.structure.cycles() {
            if let Some(e) = self.entry {
                if let Some(i) = c.iter().position(|&x| x == e) {
                    c.rotate_left(i);
                }
            }
            write_cycle(f, alphabet, &c)?;
        }
        Ok(())
    }
}

/// The centralizer `Z` of a marked structure.
#[derive(Clone, Debug)]
pub struct Centralizer {
    pub generators: Vec<Permutation>,
    /// Present when the alphabet is within the closure cap.
    pub group: Option<PermGroup>,
    pub order: u64,
}

impl Centralizer {
    /// `Z ⊆ Alt(A)`, decided on generators.
    pub fn is_even(&self) -> bool {
        self.generators.iter().all(Permutation::is_even)
    }
}

/// `N(p)`.
pub fn marked_structure(p: &Pair) -> Result<MarkedCycleStructure> {
    let s = sigma(p)?;
    let x = p.first(0);
    let images: Vec<Letter> = p
        .alphabet()
        .letters()
        .map(|a| {
            if a == x {
                x
            } else if s.apply(a) == x {
                s.apply(x)
            } else {
                s.apply(a)
            }
        })
        .collect();
    let structure = Permutation::from_images(p.alphabet(), &images)?;
    Ok(MarkedCycleStructure {
        marked: x,
        structure,
        entry: Some(s.apply(x)),
    })
}

/// `P(p)`: the cycle lengths of `Y` off the marked letter, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Profile {
    lengths: Vec<usize>,
}

impl Profile {
    pub fn new(mut lengths: Vec<usize>) -> Profile {
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Profile { lengths }
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn total(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Every length occurs once.
    pub fn is_simple(&self) -> bool {
        self.lengths.windows(2).all(|w| w[0] != w[1])
    }

    /// Every length is odd.
    pub fn is_spin_defined(&self) -> bool {
        self.lengths.iter().all(|l| l % 2 == 1)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.lengths.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

pub fn profile(p: &Pair) -> Result<Profile> {
    Ok(marked_structure(p)?.profile())
}
