//! Finite words over a totally ordered alphabet and the stack-sorting
//! operators on them.
//!
//! A [`Word`] is a sequence of symbols `0..=255` ordered as integers. The two
//! partial sorting operators, [`hare`] and [`tortoise`], differ in how they
//! reposition repeated occurrences of the maximal symbol: `hare` sends every
//! occurrence to the end, `tortoise` only the first. Iterating `tortoise`
//! eventually sorts any word; [`tortoise_sort_index`] is the number of
//! iterations required.

use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A single symbol. The order of the alphabet is the integer order.
pub type Symbol = u8;

/// A finite word over symbols `0..=255`. The empty word is valid.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: &[Symbol]) -> Self {
        Word(symbols.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    /// Largest symbol, or `None` for the empty word.
    pub fn max_symbol(&self) -> Option<Symbol> {
        self.0.iter().copied().max()
    }

    /// True when the symbols are in nondecreasing order.
    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1])
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Subword from `start` (inclusive) to `end` (exclusive).
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }
}

impl Borrow<[Symbol]> for Word {
    fn borrow(&self) -> &[Symbol] {
        &self.0
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Symbol;
    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl fmt::Display for Word {
    /// Digit string when every symbol is a single digit, otherwise a
    /// comma-separated list of integers. A one-symbol word over a large
    /// alphabet renders without a comma and therefore re-parses as digits;
    /// the digit reading always wins on parse.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s <= 9) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses either a digit string (`11011000`) or a comma-separated list
    /// of integers (`3,1,4,15`). The empty string is the empty word.
    fn from_str(s: &str) -> Result<Word> {
        if s.is_empty() {
            return Ok(Word::empty());
        }
        if s.contains(',') {
            let mut syms = Vec::new();
            for part in s.split(',') {
                let v: u32 = part.trim().parse().map_err(|_| Error::WordParse {
                    input: s.to_string(),
                    msg: format!("bad symbol {part:?}"),
                })?;
                if v > 255 {
                    return Err(Error::WordParse {
                        input: s.to_string(),
                        msg: format!("symbol {v} exceeds 255"),
                    });
                }
                syms.push(v as Symbol);
            }
            Ok(Word(syms))
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as Symbol).ok_or(Error::WordParse {
                        input: s.to_string(),
                        msg: format!("bad digit {c:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map(Word)
        }
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Decomposition of a nonempty word around its maximal symbol: interleaving
/// `blocks` with `max_symbol` reconstructs the word, and every symbol inside
/// a block is strictly smaller than `max_symbol`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub max_symbol: Symbol,
    /// The `k + 1` (possibly empty) blocks between the `k` occurrences of
    /// the maximal symbol.
    pub blocks: Vec<Word>,
}

impl BlockDecomposition {
    /// Number of occurrences of the maximal symbol.
    pub fn occurrence_count(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Reassembles the original word.
    pub fn reassemble(&self) -> Word {
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                out.push(self.max_symbol);
            }
            out.extend_from_slice(b.symbols());
        }
        Word(out)
    }
}

/// Splits a nonempty word around its maximal symbol.
pub fn decompose_by_max(w: &Word) -> Result<BlockDecomposition> {
    let max = w
        .max_symbol()
        .ok_or_else(|| Error::Usage("cannot decompose the empty word".into()))?;
    let mut blocks = Vec::new();
    let mut cur = Vec::new();
    for &s in w.symbols() {
        if s == max {
            blocks.push(Word(std::mem::take(&mut cur)));
        } else {
            cur.push(s);
        }
    }
    blocks.push(Word(cur));
    Ok(BlockDecomposition { max_symbol: max, blocks })
}

/// One pass of the input through a stack. Before pushing a symbol, the stack
/// is popped while its top is smaller than the symbol; `pop_ties` controls
/// whether an equal top is popped as well. Remaining stack contents are
/// flushed at the end.
///
/// With `pop_ties = false` this computes `hare`, with `pop_ties = true` it
/// computes `tortoise`; both agree with the block recursions below.
fn stack_pass(w: &Word, pop_ties: bool) -> Word {
    let mut out = Vec::with_capacity(w.len());
    let mut stack: Vec<Symbol> = Vec::new();
    for &c in w.symbols() {
        while let Some(&top) = stack.last() {
            if top < c || (pop_ties && top == c) {
                out.push(top);
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(c);
    }
    while let Some(s) = stack.pop() {
        out.push(s);
    }
    Word(out)
}

/// The hare operator: every occurrence of the maximal symbol moves to the
/// end, blocks are transformed recursively. On binary words this is a full
/// sort.
pub fn hare(w: &Word) -> Word {
    stack_pass(w, false)
}

/// The tortoise operator: the first occurrence of the maximal symbol moves
/// to the end, the rest stay in place, blocks are transformed recursively.
/// On a binary word containing a 1 this repositions the first 1 at the end.
pub fn tortoise(w: &Word) -> Word {
    #[cfg(feature = "fault-injection")]
    {
        // Injected defect: one application too many.
        return stack_pass(&stack_pass(w, true), true);
    }
    #[cfg(not(feature = "fault-injection"))]
    stack_pass(w, true)
}

/// Reference implementation of `hare` following the block recursion
/// directly. Retained for differential testing against the stack pass.
pub fn hare_recursive(w: &Word) -> Word {
    if w.is_empty() {
        return Word::empty();
    }
    let dec = decompose_by_max(w).expect("nonempty");
    let mut out = Vec::with_capacity(w.len());
    for b in &dec.blocks {
        out.extend_from_slice(hare_recursive(b).symbols());
    }
    out.resize(w.len(), dec.max_symbol);
    Word(out)
}

/// Reference implementation of `tortoise` following the block recursion
/// directly. Retained for differential testing against the stack pass.
pub fn tortoise_recursive(w: &Word) -> Word {
    if w.is_empty() {
        return Word::empty();
    }
    let dec = decompose_by_max(w).expect("nonempty");
    let mut out = Vec::with_capacity(w.len());
    for (i, b) in dec.blocks.iter().enumerate() {
        out.extend_from_slice(tortoise_recursive(b).symbols());
        if i > 0 {
            out.push(dec.max_symbol);
        }
    }
    Word(out)
}

/// `k`-fold application of the tortoise operator; `k = 0` is the identity.
pub fn iterate_tortoise(w: &Word, k: usize) -> Word {
    let mut cur = w.clone();
    for _ in 0..k {
        cur = tortoise(&cur);
    }
    cur
}

/// The nondecreasing rearrangement of `w`.
pub fn sort(w: &Word) -> Word {
    let mut v = w.0.clone();
    v.sort_unstable();
    Word(v)
}

/// Iteration cap for [`tortoise_sort_index`]: sorting always terminates, so
/// exceeding the cap indicates an implementation defect, not bad input.
pub fn sort_index_cap(w: &Word) -> usize {
    w.len() * w.len()
}

/// Least `j >= 0` with `tortoise^(j)(w) = sort(w)`.
pub fn tortoise_sort_index(w: &Word) -> Result<usize> {
    let target = sort(w);
    let cap = sort_index_cap(w);
    let mut cur = w.clone();
    for j in 0..=cap {
        if cur == target {
            return Ok(j);
        }
        cur = tortoise(&cur);
    }
    Err(Error::IterationCap { len: w.len(), cap })
}

/// Canonical representative of the `k`-tortoise equivalence class of `w`:
/// two words are `k`-tortoise-equivalent exactly when their canonical keys
/// are equal.
pub fn canonical_key(w: &Word, k: usize) -> Word {
    iterate_tortoise(w, k)
}

/// Key for nearly-abelian equivalence: the word one tortoise application
/// short of sorted. Words that are already sorted are their own key.
pub fn nearly_abelian_key(w: &Word) -> Result<Word> {
    let idx = tortoise_sort_index(w)?;
    if idx == 0 {
        Ok(w.clone())
    } else {
        Ok(iterate_tortoise(w, idx - 1))
    }
}
