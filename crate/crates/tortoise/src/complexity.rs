//! Complexity functions of infinite words: factor complexity, abelian
//! complexity, k-tortoise complexity, nearly-abelian complexity, the
//! agreement statistic between tortoise and abelian complexity, and full
//! equivalence-class reports.
//!
//! All four complexities share one mechanism: bucket the stabilized factor
//! set by a canonical key. The key is the factor itself for plain factor
//! complexity, its sorted rearrangement for abelian complexity,
//! `tortoise^(k)` for k-tortoise complexity, and the word one application
//! short of sorted for nearly-abelian complexity.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::{special_factors, stable_factors, FactorSet, SpecialFactorReport, StabilizationPolicy};
use crate::sequences::InfiniteWord;
use crate::word::{canonical_key, nearly_abelian_key, sort, Word};

/// Which complexity function a table reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexityKind {
    Factor,
    Abelian,
    /// k-tortoise complexity for the given k.
    Tortoise(usize),
    NearlyAbelian,
}

impl fmt::Display for ComplexityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityKind::Factor => write!(f, "rho"),
            ComplexityKind::Abelian => write!(f, "ab"),
            ComplexityKind::Tortoise(k) => write!(f, "tortoise({k})"),
            ComplexityKind::NearlyAbelian => write!(f, "nearly"),
        }
    }
}

/// Caches stabilized factor sets and special-factor reports of one sequence
/// so repeated complexity queries do not re-enumerate.
pub struct SequenceAnalyzer {
    x: InfiniteWord,
    policy: StabilizationPolicy,
    factor_sets: HashMap<usize, Rc<FactorSet>>,
    specials: HashMap<usize, Rc<SpecialFactorReport>>,
}

impl SequenceAnalyzer {
    pub fn new(x: InfiniteWord, policy: StabilizationPolicy) -> Self {
        SequenceAnalyzer {
            x,
            policy,
            factor_sets: HashMap::new(),
            specials: HashMap::new(),
        }
    }

    pub fn sequence(&self) -> &InfiniteWord {
        &self.x
    }

    pub fn policy(&self) -> &StabilizationPolicy {
        &self.policy
    }

    /// Stabilized length-`n` factor set, computed once per length.
    pub fn factor_set(&mut self, n: usize) -> Result<Rc<FactorSet>> {
        if let Some(fs) = self.factor_sets.get(&n) {
            return Ok(Rc::clone(fs));
        }
        let fs = Rc::new(stable_factors(&self.x, n, &self.policy)?);
        self.factor_sets.insert(n, Rc::clone(&fs));
        Ok(fs)
    }

    /// Special factors of length `n`, computed once per length.
    pub fn special(&mut self, n: usize) -> Result<Rc<SpecialFactorReport>> {
        if let Some(r) = self.specials.get(&n) {
            return Ok(Rc::clone(r));
        }
        let r = Rc::new(special_factors(&self.x, n, &self.policy)?);
        self.specials.insert(n, Rc::clone(&r));
        Ok(r)
    }

    /// Factor complexity: the number of distinct length-`n` factors.
    pub fn rho(&mut self, n: usize) -> Result<usize> {
        Ok(self.factor_set(n)?.len())
    }

    /// Abelian complexity: factors counted up to symbol rearrangement.
    pub fn rho_ab(&mut self, n: usize) -> Result<usize> {
        let fs = self.factor_set(n)?;
        count_distinct_keys(&fs, |w| Ok(sort(w)))
    }

    /// k-tortoise complexity: factors counted up to equality of
    /// `tortoise^(k)` images.
    pub fn rho_tortoise(&mut self, n: usize, k: usize) -> Result<usize> {
        if k == 0 {
            return Err(Error::Usage("tortoise complexity requires k >= 1".into()));
        }
        let fs = self.factor_set(n)?;
        count_distinct_keys(&fs, |w| Ok(canonical_key(w, k)))
    }

    /// Nearly-abelian complexity: factors counted up to equality one
    /// tortoise application short of sorted.
    pub fn rho_nearly_ab(&mut self, n: usize) -> Result<usize> {
        let fs = self.factor_set(n)?;
        count_distinct_keys(&fs, nearly_abelian_key)
    }

    /// Full partition of the stabilized length-`n` factor set into
    /// k-tortoise equivalence classes.
    pub fn class_report(&mut self, n: usize, k: usize) -> Result<ClassReport> {
        if k == 0 {
            return Err(Error::Usage("class report requires k >= 1".into()));
        }
        let fs = self.factor_set(n)?;
        let mut buckets: BTreeMap<Word, Vec<ClassMember>> = BTreeMap::new();
        for (w, pos) in fs.entries() {
            buckets
                .entry(canonical_key(w, k))
                .or_default()
                .push(ClassMember { word: w.clone(), first_position: pos });
        }
        let classes = buckets
            .into_iter()
            .map(|(key, members)| EquivClass { key, members })
            .collect();
        Ok(ClassReport {
            sequence: self.x.name().to_string(),
            n,
            k,
            prefix_length: fs.prefix_length(),
            classes,
        })
    }
}

fn count_distinct_keys(
    fs: &FactorSet,
    mut key: impl FnMut(&Word) -> Result<Word>,
) -> Result<usize> {
    let mut keys = BTreeSet::new();
    for w in fs.words() {
        keys.insert(key(w)?);
    }
    Ok(keys.len())
}

/// One factor together with its first occurrence, in native indexing.
#[derive(Clone, Debug, Serialize)]
pub struct ClassMember {
    pub word: Word,
    pub first_position: u64,
}

/// An equivalence class: the shared canonical key and the member factors.
#[derive(Clone, Debug, Serialize)]
pub struct EquivClass {
    pub key: Word,
    pub members: Vec<ClassMember>,
}

impl EquivClass {
    pub fn is_trivial(&self) -> bool {
        self.members.len() < 2
    }
}

/// Partition of a stabilized factor set under k-tortoise equivalence.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub sequence: String,
    pub n: usize,
    pub k: usize,
    pub prefix_length: u64,
    pub classes: Vec<EquivClass>,
}

impl ClassReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &EquivClass> {
        self.classes.iter().filter(|c| !c.is_trivial())
    }

    pub fn nontrivial_count(&self) -> usize {
        self.nontrivial().count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Result of comparing k-tortoise complexity against abelian complexity:
/// the largest `n` below the first disagreement, or a sentinel when the two
/// agree everywhere up to `n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementStat {
    pub k: usize,
    pub n_max: usize,
    /// `Some(v)` when the complexities agree for all `n <= v` and disagree
    /// at `v + 1`; `None` when no disagreement was found up to `n_max`.
    pub value: Option<usize>,
}

impl fmt::Display for AgreementStat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "none<={}", self.n_max),
        }
    }
}

/// Least `n` at which k-tortoise and abelian complexity disagree, minus
/// one; sentinel when they agree through `n_max`.
pub fn abel_stat(
    x: &InfiniteWord,
    k: usize,
    n_max: usize,
    policy: &StabilizationPolicy,
) -> Result<AgreementStat> {
    Ok(abel_stats(x, k, k, n_max, policy)?.pop().expect("one stat"))
}

/// [`abel_stat`] over an inclusive range of k, sharing factor enumeration.
pub fn abel_stats(
    x: &InfiniteWord,
    k_lo: usize,
    k_hi: usize,
    n_max: usize,
    policy: &StabilizationPolicy,
) -> Result<Vec<AgreementStat>> {
    if k_lo == 0 || k_lo > k_hi {
        return Err(Error::Usage("abel statistic requires 1 <= k_lo <= k_hi".into()));
    }
    if n_max == 0 {
        return Err(Error::Usage("abel statistic requires n_max >= 1".into()));
    }
    let mut az = SequenceAnalyzer::new(x.clone(), policy.clone());
    let mut ab_cache: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::new();
    for k in k_lo..=k_hi {
        let mut value = None;
        for n in 1..=n_max {
            let ab = match ab_cache.get(&n) {
                Some(&v) => v,
                None => {
                    let v = az.rho_ab(n)?;
                    ab_cache.insert(n, v);
                    v
                }
            };
            if az.rho_tortoise(n, k)? != ab {
                value = Some(n - 1);
                break;
            }
        }
        out.push(AgreementStat { k, n_max, value });
    }
    Ok(out)
}

/// Least `s` such that the k-tortoise complexity of the paperfolding word
/// equals `4n` for every `n` in `[s, n_max]`. The value is only verified up
/// to `n_max`.
pub fn pf_threshold(k: usize, n_max: usize, policy: &StabilizationPolicy) -> Result<usize> {
    Ok(pf_thresholds(k, k, n_max, policy)?.pop().expect("one threshold"))
}

/// [`pf_threshold`] over an inclusive range of k, sharing factor
/// enumeration.
pub fn pf_thresholds(
    k_lo: usize,
    k_hi: usize,
    n_max: usize,
    policy: &StabilizationPolicy,
) -> Result<Vec<usize>> {
    if k_lo == 0 || k_lo > k_hi {
        return Err(Error::Usage("threshold requires 1 <= k_lo <= k_hi".into()));
    }
    let mut az = SequenceAnalyzer::new(InfiniteWord::paperfolding(), policy.clone());
    let mut out = Vec::new();
    for k in k_lo..=k_hi {
        let mut last_bad = None;
        for n in 1..=n_max {
            if az.rho_tortoise(n, k)? != 4 * n {
                last_bad = Some(n);
            }
        }
        match last_bad {
            Some(n) if n == n_max => {
                return Err(Error::NoThreshold(format!(
                    "tortoise({k}) complexity of f still differs from 4n at n = {n_max}"
                )))
            }
            Some(n) => out.push(n + 1),
            None => out.push(1),
        }
    }
    Ok(out)
}

/// Spec-shaped one-shot wrappers around [`SequenceAnalyzer`].
pub fn rho(x: &InfiniteWord, n: usize, policy: &StabilizationPolicy) -> Result<usize> {
    SequenceAnalyzer::new(x.clone(), policy.clone()).rho(n)
}

pub fn rho_ab(x: &InfiniteWord, n: usize, policy: &StabilizationPolicy) -> Result<usize> {
    SequenceAnalyzer::new(x.clone(), policy.clone()).rho_ab(n)
}

pub fn rho_tortoise(
    x: &InfiniteWord,
    n: usize,
    k: usize,
    policy: &StabilizationPolicy,
) -> Result<usize> {
    SequenceAnalyzer::new(x.clone(), policy.clone()).rho_tortoise(n, k)
}

pub fn rho_nearly_ab(x: &InfiniteWord, n: usize, policy: &StabilizationPolicy) -> Result<usize> {
    SequenceAnalyzer::new(x.clone(), policy.clone()).rho_nearly_ab(n)
}

pub fn class_report(
    x: &InfiniteWord,
    n: usize,
    k: usize,
    policy: &StabilizationPolicy,
) -> Result<ClassReport> {
    SequenceAnalyzer::new(x.clone(), policy.clone()).class_report(n, k)
}

/// One table row: the complexity value at `n` together with the prefix
/// length the enumeration used.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub count: usize,
    pub prefix_length: u64,
}

/// A complexity table over a contiguous range of lengths.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexityTable {
    pub sequence: String,
    pub kind: ComplexityKind,
    pub rows: Vec<TableRow>,
}

impl ComplexityTable {
    /// CSV with header `n,count,prefix_length`; byte-stable for identical
    /// inputs.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,prefix_length\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n, r.count, r.prefix_length));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count).collect()
    }
}

impl fmt::Display for ComplexityTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {} complexity of {}", self.kind, self.sequence)?;
        writeln!(f, "{:>4} {:>8} {:>12}", "n", "count", "prefix_len")?;
        for r in &self.rows {
            writeln!(f, "{:>4} {:>8} {:>12}", r.n, r.count, r.prefix_length)?;
        }
        Ok(())
    }
}

/// Builds a complexity table for `n` in `[n_lo, n_hi]`.
pub fn complexity_table(
    x: &InfiniteWord,
    kind: ComplexityKind,
    n_lo: usize,
    n_hi: usize,
    policy: &StabilizationPolicy,
) -> Result<ComplexityTable> {
    if n_lo > n_hi {
        return Err(Error::Usage(format!("empty range {n_lo}..{n_hi}")));
    }
    let mut az = SequenceAnalyzer::new(x.clone(), policy.clone());
    let mut rows = Vec::with_capacity(n_hi - n_lo + 1);
    for n in n_lo..=n_hi {
        let count = match kind {
            ComplexityKind::Factor => az.rho(n)?,
            ComplexityKind::Abelian => az.rho_ab(n)?,
            ComplexityKind::Tortoise(k) => az.rho_tortoise(n, k)?,
            ComplexityKind::NearlyAbelian => az.rho_nearly_ab(n)?,
        };
        let prefix_length = az.factor_set(n)?.prefix_length();
        rows.push(TableRow { n, count, prefix_length });
    }
    Ok(ComplexityTable {
        sequence: x.name().to_string(),
        kind,
        rows,
    })
}
