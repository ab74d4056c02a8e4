//! Fixed-size row words and nibble packing used by the enumeration engine.
//!
//! A [`Rows`] value holds the two row words of a pair (letter indices in
//! position order). All four induction moves, their inverses and the
//! irreducibility test work directly on this `Copy` type so that class
//! enumeration never allocates per node.

use crate::perm::MAX_LETTERS;

pub(crate) fn pack_u64(v: &[u8]) -> u64 {
    debug_assert!(v.len() <= 16);
    v.iter().fold(0u64, |acc, &x| (acc << 4) | x as u64)
}

pub(crate) fn unpack_u64(mut key: u64, n: usize) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for slot in v.iter_mut().rev() {
        *slot = (key & 0xf) as u8;
        key >>= 4;
    }
    v
}

/// Which induction move: right or left, and the row `ε` that stays fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Right0,
    Right1,
    Left0,
    Left1,
}

impl Move {
    pub const RIGHT: [Move; 2] = [Move::Right0, Move::Right1];
    pub const ALL: [Move; 4] = [Move::Right0, Move::Right1, Move::Left0, Move::Left1];

    pub fn side(self) -> Side {
        match self {
            Move::Right0 | Move::Right1 => Side::Right,
            Move::Left0 | Move::Left1 => Side::Left,
        }
    }

    /// The row that the move leaves unchanged.
    pub fn kept_row(self) -> usize {
        match self {
            Move::Right0 | Move::Left0 => 0,
            Move::Right1 | Move::Left1 => 1,
        }
    }

    pub fn new(side: Side, kept_row: usize) -> Move {
        match (side, kept_row) {
            (Side::Right, 0) => Move::Right0,
            (Side::Right, _) => Move::Right1,
            (Side::Left, 0) => Move::Left0,
            (Side::Left, _) => Move::Left1,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Move::Right0 => "R0",
            Move::Right1 => "R1",
            Move::Left0 => "L0",
            Move::Left1 => "L1",
        }
    }
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Rows {
    pub n: u8,
    pub w: [[u8; MAX_LETTERS]; 2],
}

impl Rows {
    pub fn from_words(row0: &[u8], row1: &[u8]) -> Rows {
        debug_assert_eq!(row0.len(), row1.len());
        let mut w = [[0u8; MAX_LETTERS]; 2];
        w[0][..row0.len()].copy_from_slice(row0);
        w[1][..row1.len()].copy_from_slice(row1);
        Rows {
            n: row0.len() as u8,
            w,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn row(&self, e: usize) -> &[u8] {
        &self.w[e][..self.len()]
    }

    /// Position of `letter` in row `e`.
    #[inline]
    pub fn position(&self, e: usize, letter: u8) -> usize {
        self.row(e)
            .iter()
            .position(|&x| x == letter)
            .expect("letter in row")
    }

    pub fn positions(&self, e: usize) -> [u8; MAX_LETTERS] {
        let mut pos = [0u8; MAX_LETTERS];
        for (k, &l) in self.row(e).iter().enumerate() {
            pos[l as usize] = k as u8;
        }
        pos
    }

    pub fn is_irreducible(&self) -> bool {
        let n = self.len();
        let pos1 = self.positions(1);
        let mut reach = 0usize;
        for k in 0..n - 1 {
            reach = reach.max(pos1[self.w[0][k] as usize] as usize);
            if reach == k {
                return false;
            }
        }
        true
    }

    pub fn is_standard(&self) -> bool {
        let n = self.len();
        self.w[0][0] == self.w[1][n - 1] && self.w[1][0] == self.w[0][n - 1]
    }

    /// Applies one induction move. The input must be irreducible.
    pub fn induce(&self, mv: Move) -> Rows {
        let n = self.len();
        let e = mv.kept_row();
        let o = 1 - e;
        let mut out = *self;
        match mv.side() {
            Side::Right => {
                let anchor = self.w[e][n - 1];
                let k = self.position(o, anchor);
                let moved = self.w[o][n - 1];
                out.w[o].copy_within(k + 1..n - 1, k + 2);
                out.w[o][k + 1] = moved;
            }
            Side::Left => {
                let anchor = self.w[e][0];
                let k = self.position(o, anchor);
                let moved = self.w[o][0];
                out.w[o].copy_within(1..k, 0);
                out.w[o][k - 1] = moved;
            }
        }
        out
    }

    /// Inverse of [`Rows::induce`] for the same move.
    pub fn uninduce(&self, mv: Move) -> Rows {
        let n = self.len();
        let e = mv.kept_row();
        let o = 1 - e;
        let mut out = *self;
        match mv.side() {
            Side::Right => {
                let anchor = self.w[e][n - 1];
                let k = self.position(o, anchor);
                let moved = self.w[o][k + 1];
                out.w[o].copy_within(k + 2..n, k + 1);
                out.w[o][n - 1] = moved;
            }
            Side::Left => {
                let anchor = self.w[e][0];
                let k = self.position(o, anchor);
                let moved = self.w[o][k - 1];
                out.w[o].copy_within(0..k - 1, 1);
                out.w[o][0] = moved;
            }
        }
        out
    }

    /// Both rows reversed.
    pub fn mirror(&self) -> Rows {
        let mut out = *self;
        let n = self.len();
        out.w[0][..n].reverse();
        out.w[1][..n].reverse();
        out
    }

    /// Canonical key: row 0 then row 1, one nibble per letter.
    pub fn key(&self) -> u128 {
        let n = self.len();
        let mut k = 0u128;
        for e in 0..2 {
            for &l in &self.w[e][..n] {
                k = (k << 4) | l as u128;
            }
        }
        k
    }

    pub fn from_key(mut key: u128, n: usize) -> Rows {
        let mut w = [[0u8; MAX_LETTERS]; 2];
        for e in (0..2).rev() {
            for k in (0..n).rev() {
                w[e][k] = (key & 0xf) as u8;
                key >>= 4;
            }
        }
        Rows { n: n as u8, w }
    }

    /// One-line form of `p1 ∘ p0⁻¹` (0-based), packed.
    pub fn nonlabeled_key(&self) -> u64 {
        let pos1 = self.positions(1);
        let n = self.len();
        self.w[0][..n]
            .iter()
            .fold(0u64, |acc, &l| (acc << 4) | pos1[l as usize] as u64)
    }

    /// The relabelling with row 0 equal to `0, 1, …, n-1`.
    pub fn standardized(&self) -> Rows {
        let pos0 = self.positions(0);
        let mut out = *self;
        let n = self.len();
        for k in 0..n {
            out.w[0][k] = k as u8;
            out.w[1][k] = pos0[self.w[1][k] as usize];
        }
        out
    }

    /// The renaming `ν` with `self = other ∘ ν`, assuming both share the same
    /// non-labeled permutation. Returned as the image vector of `ν`.
    pub fn renaming_to(&self, other: &Rows) -> Vec<u8> {
        let n = self.len();
        let mut nu = vec![0u8; n];
        for k in 0..n {
            nu[self.w[0][k] as usize] = other.w[0][k];
        }
        nu
    }

    /// `self ∘ ν` where `nu` is the image vector of `ν`.
    pub fn renamed(&self, nu: &[u8]) -> Rows {
        let n = self.len();
        let mut inv = [0u8; MAX_LETTERS];
        for (x, &y) in nu.iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        let mut out = *self;
        for e in 0..2 {
            for k in 0..n {
                out.w[e][k] = inv[self.w[e][k] as usize];
            }
        }
        out
    }
}
