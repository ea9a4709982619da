//! Enumeration of the distinct length-`n` factors of a sequence prefix,
//! Parikh vectors, and left/right special factors.
//!
//! Factor sets of an infinite word are approximated from a finite prefix.
//! [`stable_factors`] doubles the prefix until the factor count stops
//! changing; the prefix length actually used is recorded in the result, and
//! no claim is made beyond it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::{
    paperfolding_rho_reference, thue_morse_rho_reference, InfiniteWord, PrefixBuffer,
};
use crate::word::{Symbol, Word};

/// Controls how long a prefix [`stable_factors`] enumerates before trusting
/// a factor count.
#[derive(Clone, Debug)]
pub struct StabilizationPolicy {
    /// Floor for the starting prefix length.
    pub initial_prefix: u64,
    /// The starting prefix length is `max(initial_prefix, per_length * n)`.
    pub per_length: u64,
    /// Number of consecutive doublings the count must survive unchanged.
    pub window: u32,
    /// Hard cap on the prefix length; exceeding it without stabilizing is a
    /// resource-cap error.
    pub max_prefix: u64,
    /// Allow stopping as soon as the count reaches the known closed-form
    /// value for the built-in sequences `f` and `t` (lengths >= 7). Purely
    /// an optimization; disable for enumeration that must not assume the
    /// closed forms.
    pub closed_form_targets: bool,
}

impl Default for StabilizationPolicy {
    fn default() -> Self {
        StabilizationPolicy {
            initial_prefix: 1024,
            per_length: 64,
            window: 2,
            max_prefix: 1 << 24,
            closed_form_targets: true,
        }
    }
}

impl StabilizationPolicy {
    /// Default policy with closed-form shortcuts disabled: every count comes
    /// from pure doubling. The verification suites use this.
    pub fn exact() -> Self {
        StabilizationPolicy { closed_form_targets: false, ..Default::default() }
    }

    fn initial_for(&self, n: usize) -> u64 {
        self.initial_prefix.max(self.per_length.saturating_mul(n as u64))
    }

    fn closed_form_target(&self, x: &InfiniteWord, n: usize) -> Option<usize> {
        if !self.closed_form_targets || n < 7 {
            return None;
        }
        match x.name() {
            "f" => Some(paperfolding_rho_reference(n)),
            "t" => Some(thue_morse_rho_reference(n)),
            _ => None,
        }
    }
}

/// The distinct length-`n` factors found in a prefix, with the position of
/// the first occurrence of each (in the sequence's native indexing).
#[derive(Clone, Debug, Serialize)]
pub struct FactorSet {
    factor_length: usize,
    prefix_length: u64,
    index_base: u64,
    factors: BTreeMap<Word, u64>,
}

impl FactorSet {
    pub fn factor_length(&self) -> usize {
        self.factor_length
    }

    /// Prefix length the enumeration actually scanned.
    pub fn prefix_length(&self) -> u64 {
        self.prefix_length
    }

    pub fn index_base(&self) -> u64 {
        self.index_base
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.factors.contains_key(w.symbols())
    }

    /// First occurrence of `w` in native indexing, if `w` is a factor.
    pub fn first_position(&self, w: &Word) -> Option<u64> {
        self.factors.get(w.symbols()).copied()
    }

    /// Factors in lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.factors.keys()
    }

    /// Factor/first-position pairs in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (&Word, u64)> {
        self.factors.iter().map(|(w, &p)| (w, p))
    }

    /// One factor per line, lexicographically sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in self.words() {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }
}

fn scan_windows(fs: &mut BTreeMap<Word, u64>, buf: &PrefixBuffer, n: usize, from: usize, to: usize) {
    let base = buf.source().index_base();
    let data = buf.symbols();
    for start in from..=to {
        let window = &data[start..start + n];
        if !fs.contains_key(window) {
            fs.insert(Word::from_symbols(window), base + start as u64);
        }
    }
}

/// The distinct length-`n` windows of the first `prefix_len` symbols of `x`.
pub fn factors(x: &InfiniteWord, n: usize, prefix_len: usize) -> Result<FactorSet> {
    if prefix_len < n {
        return Err(Error::Usage(format!(
            "prefix length {prefix_len} is shorter than factor length {n}"
        )));
    }
    let mut buf = PrefixBuffer::new(x.clone());
    buf.ensure(prefix_len);
    let mut map = BTreeMap::new();
    scan_windows(&mut map, &buf, n, 0, prefix_len - n);
    Ok(FactorSet {
        factor_length: n,
        prefix_length: prefix_len as u64,
        index_base: x.index_base(),
        factors: map,
    })
}

/// Enumerates length-`n` factors over a growing prefix until the count is
/// stable, per `policy`. The returned set records the prefix length used.
pub fn stable_factors(
    x: &InfiniteWord,
    n: usize,
    policy: &StabilizationPolicy,
) -> Result<FactorSet> {
    let target = policy.closed_form_target(x, n);
    let mut len = policy.initial_for(n).max(n as u64 + 1);
    if len > policy.max_prefix {
        return Err(Error::ResourceCap { n, max: policy.max_prefix });
    }

    let mut buf = PrefixBuffer::new(x.clone());
    let mut map = BTreeMap::new();
    buf.ensure(len as usize);
    scan_windows(&mut map, &buf, n, 0, len as usize - n);

    let mut streak = 0;
    loop {
        if let Some(t) = target {
            if map.len() == t {
                break;
            }
        }
        if streak >= policy.window {
            break;
        }
        if len >= policy.max_prefix {
            return Err(Error::ResourceCap { n, max: policy.max_prefix });
        }
        let prev_count = map.len();
        let prev_len = len as usize;
        len = (len * 2).min(policy.max_prefix);
        buf.ensure(len as usize);
        scan_windows(&mut map, &buf, n, prev_len - n + 1, len as usize - n);
        streak = if map.len() == prev_count { streak + 1 } else { 0 };
    }

    Ok(FactorSet {
        factor_length: n,
        prefix_length: len,
        index_base: x.index_base(),
        factors: map,
    })
}

/// Per-symbol occurrence counts of a word. Symbols that do not occur are
/// omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParikhVector {
    counts: BTreeMap<Symbol, u64>,
}

impl ParikhVector {
    pub fn counts(&self) -> &BTreeMap<Symbol, u64> {
        &self.counts
    }

    pub fn count(&self, sym: Symbol) -> u64 {
        self.counts.get(&sym).copied().unwrap_or(0)
    }

    /// Total number of symbols, i.e. the length of the word.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// The Parikh vector of `w`.
pub fn parikh(w: &Word) -> ParikhVector {
    let mut counts = BTreeMap::new();
    for &s in w.symbols() {
        *counts.entry(s).or_insert(0) += 1;
    }
    ParikhVector { counts }
}

/// Left and right special factors of a given length, determined within a
/// stabilized factor set of length `n + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialFactorReport {
    pub factor_length: usize,
    /// Prefix length used for the stabilized length-`n + 1` factor set.
    pub prefix_length: u64,
    pub left_special: BTreeSet<Word>,
    pub right_special: BTreeSet<Word>,
}

/// Length-`n` factors of `x` that extend on the left (resp. right) by at
/// least two distinct symbols.
pub fn special_factors(
    x: &InfiniteWord,
    n: usize,
    policy: &StabilizationPolicy,
) -> Result<SpecialFactorReport> {
    if n == 0 {
        return Err(Error::Usage("special factors require length >= 1".into()));
    }
    let extended = stable_factors(x, n + 1, policy)?;
    let mut left: HashMap<&[Symbol], BTreeSet<Symbol>> = HashMap::new();
    let mut right: HashMap<&[Symbol], BTreeSet<Symbol>> = HashMap::new();
    for w in extended.words() {
        let syms = w.symbols();
        left.entry(&syms[1..]).or_default().insert(syms[0]);
        right.entry(&syms[..n]).or_default().insert(syms[n]);
    }
    let collect = |m: HashMap<&[Symbol], BTreeSet<Symbol>>| {
        m.into_iter()
            .filter(|(_, exts)| exts.len() >= 2)
            .map(|(w, _)| Word::from_symbols(w))
            .collect::<BTreeSet<Word>>()
    };
    Ok(SpecialFactorReport {
        factor_length: n,
        prefix_length: extended.prefix_length(),
        left_special: collect(left),
        right_special: collect(right),
    })
}

/// Number of left special factors of the Thue–Morse word of length `n >= 2`:
/// 4 when `2n <= 3 * 2^floor(log2(n-1))`, else 2.
pub fn thue_morse_left_special_reference(n: usize) -> usize {
    assert!(n >= 2);
    let e = (n - 1).ilog2();
    if 2 * n <= 3 * (1usize << e) {
        4
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn factor_examples() {
        let f = InfiniteWord::paperfolding();
        let fs = factors(&f, 1, 64).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&w("0")) && fs.contains(&w("1")));
        assert_eq!(factors(&f, 2, 64).unwrap().len(), 4);
        assert!(matches!(factors(&f, 5, 3), Err(Error::Usage(_))));
    }

    #[test]
    fn factor_zero_length() {
        let t = InfiniteWord::thue_morse();
        let fs = factors(&t, 0, 10).unwrap();
        assert_eq!(fs.len(), 1);
        assert!(fs.contains(&Word::empty()));
    }

    #[test]
    fn first_positions_are_correct() {
        let t = InfiniteWord::thue_morse();
        let fs = factors(&t, 3, 64).unwrap();
        // t starts 0110100110010110...; 011 occurs first at index 0,
        // 110 at index 1, 101 at index 2, 010 at index 3, 100 at index 4.
        assert_eq!(fs.first_position(&w("011")), Some(0));
        assert_eq!(fs.first_position(&w("110")), Some(1));
        assert_eq!(fs.first_position(&w("101")), Some(2));
        assert_eq!(fs.first_position(&w("010")), Some(3));
        assert_eq!(fs.first_position(&w("100")), Some(4));
        let f = InfiniteWord::paperfolding();
        // f is 1-indexed: its first symbol is f_1 at position 1.
        let fs = factors(&f, 2, 64).unwrap();
        assert_eq!(fs.first_position(&w("00")), Some(1));
        assert_eq!(fs.first_position(&w("01")), Some(2));
        assert_eq!(fs.first_position(&w("10")), Some(3));
        assert_eq!(fs.first_position(&w("11")), Some(6));
    }

    #[test]
    fn stable_factor_examples() {
        let f = InfiniteWord::paperfolding();
        let t = InfiniteWord::thue_morse();
        let policy = StabilizationPolicy::default();
        assert_eq!(stable_factors(&f, 8, &policy).unwrap().len(), 32);
        assert_eq!(stable_factors(&t, 58, &policy).unwrap().len(), 178);
        let c = InfiniteWord::constant(0, 2);
        assert_eq!(stable_factors(&c, 5, &policy).unwrap().len(), 1);
        // Exact doubling finds the same counts without the shortcut.
        let exact = StabilizationPolicy::exact();
        assert_eq!(stable_factors(&f, 8, &exact).unwrap().len(), 32);
        assert_eq!(stable_factors(&t, 58, &exact).unwrap().len(), 178);
    }

    #[test]
    fn stabilization_respects_cap() {
        let t = InfiniteWord::thue_morse();
        let policy = StabilizationPolicy {
            initial_prefix: 32,
            per_length: 1,
            window: 30,
            max_prefix: 256,
            closed_form_targets: false,
        };
        assert!(matches!(
            stable_factors(&t, 5, &policy),
            Err(Error::ResourceCap { n: 5, max: 256 })
        ));
    }

    #[test]
    fn parikh_examples() {
        let p = parikh(&w("11011000"));
        assert_eq!(p.count(0), 4);
        assert_eq!(p.count(1), 4);
        assert_eq!(p.total(), 8);
        assert_eq!(parikh(&Word::empty()).total(), 0);
        let p = parikh(&w("001000110111001"));
        assert_eq!(p.count(0), 8);
        assert_eq!(p.count(1), 7);
    }

    #[test]
    fn special_factor_examples() {
        let t = InfiniteWord::thue_morse();
        let policy = StabilizationPolicy::default();
        let r5 = special_factors(&t, 5, &policy).unwrap();
        assert_eq!(r5.left_special.len(), 4);
        let r4 = special_factors(&t, 4, &policy).unwrap();
        assert_eq!(r4.left_special.len(), 2);
        let c = InfiniteWord::constant(0, 2);
        let rc = special_factors(&c, 3, &policy).unwrap();
        assert!(rc.left_special.is_empty() && rc.right_special.is_empty());
        assert!(matches!(
            special_factors(&t, 0, &policy),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn left_special_brute_force_confirmation() {
        // Recount left special factors of t at length 5 directly from a
        // long fixed prefix, without the stabilization machinery.
        let t = InfiniteWord::thue_morse();
        let prefix = t.prefix(4096);
        let mut six = BTreeSet::new();
        for win in prefix.symbols().windows(6) {
            six.insert(win.to_vec());
        }
        let mut left = BTreeSet::new();
        for word in &six {
            let mut with_zero = vec![0];
            with_zero.extend_from_slice(&word[1..]);
            let mut with_one = vec![1];
            with_one.extend_from_slice(&word[1..]);
            if six.contains(&with_zero) && six.contains(&with_one) {
                left.insert(word[1..].to_vec());
            }
        }
        let report = special_factors(&t, 5, &StabilizationPolicy::default()).unwrap();
        let expected: BTreeSet<Word> =
            left.into_iter().map(|v| Word::new(v)).collect();
        assert_eq!(report.left_special, expected);
    }

    #[test]
    fn monotone_in_prefix_length() {
        let f = InfiniteWord::paperfolding();
        for n in 1..=6 {
            let small = factors(&f, n, 64).unwrap();
            let large = factors(&f, n, 256).unwrap();
            for word in small.words() {
                assert!(large.contains(word));
            }
        }
    }

    #[test]
    fn thue_morse_factors_closed_under_reversal() {
        let t = InfiniteWord::thue_morse();
        let policy = StabilizationPolicy::exact();
        for n in 1..=20 {
            let fs = stable_factors(&t, n, &policy).unwrap();
            for word in fs.words() {
                assert!(fs.contains(&word.reversed()), "reversal of {word} missing");
            }
        }
    }

    #[test]
    fn left_special_count_identity() {
        // |LS(n)| = rho(n+1) - rho(n) when the length-n prefix occurs at
        // least twice, one more otherwise.
        let policy = StabilizationPolicy::exact();
        for x in [InfiniteWord::paperfolding(), InfiniteWord::thue_morse()] {
            for n in 1..=30usize {
                let ls = special_factors(&x, n, &policy).unwrap().left_special.len();
                let rho_n = stable_factors(&x, n, &policy).unwrap().len();
                let big = stable_factors(&x, n + 1, &policy).unwrap();
                let rho_n1 = big.len();
                let prefix = x.prefix(n);
                let buf = x.prefix(big.prefix_length() as usize);
                let occurrences = buf
                    .symbols()
                    .windows(n)
                    .filter(|win| *win == prefix.symbols())
                    .count();
                let bonus = if occurrences >= 2 { 0 } else { 1 };
                assert_eq!(ls, rho_n1 - rho_n + bonus, "{} at n = {n}", x.name());
            }
        }
    }

    #[test]
    fn thue_morse_left_special_formula() {
        let t = InfiniteWord::thue_morse();
        let policy = StabilizationPolicy::exact();
        for n in 2..=32 {
            let count = special_factors(&t, n, &policy).unwrap().left_special.len();
            assert_eq!(count, thue_morse_left_special_reference(n), "n = {n}");
        }
    }

    #[test]
    fn ones_occur_with_bounded_gaps() {
        let policy = StabilizationPolicy::exact();
        // Every length-9 factor of f and of t contains a 1; the minimal
        // such length is the longest 0-run plus one.
        for (x, minimal) in [
            (InfiniteWord::thue_morse(), 3usize),
            (InfiniteWord::paperfolding(), 4usize),
        ] {
            let fs = stable_factors(&x, 9, &policy).unwrap();
            for word in fs.words() {
                assert!(word.symbols().contains(&1));
            }
            for b in 1..=9usize {
                let all_contain_one = stable_factors(&x, b, &policy)
                    .unwrap()
                    .words()
                    .all(|w| w.symbols().contains(&1));
                assert_eq!(all_contain_one, b >= minimal, "{} at B = {b}", x.name());
            }
        }
    }

    #[test]
    fn factor_set_exports() {
        let t = InfiniteWord::thue_morse();
        let fs = factors(&t, 2, 16).unwrap();
        assert_eq!(fs.to_text(), "00\n01\n10\n11\n");
        let json = serde_json::to_value(&fs).unwrap();
        assert_eq!(json["factor_length"], 2);
        assert_eq!(json["factors"]["01"], 0);
    }
}
