//! Bounded-range verification of the structural facts about tortoise
//! equivalence on the paperfolding and Thue–Morse words.
//!
//! Each verifier enumerates factor sets over stabilized prefixes, checks a
//! claim for every length in the requested range, and returns a report
//! carrying the ranges, prefix lengths used, and concrete witnesses on
//! failure. The verifiers always enumerate by pure doubling (closed-form
//! shortcuts are disabled) so the counts they check are not assumed.
//!
//! The checks cover bounded ranges only; nothing here claims anything for
//! lengths beyond the range stated in the report.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::complexity::SequenceAnalyzer;
use crate::error::{Error, Result};
use crate::factors::StabilizationPolicy;
use crate::sequences::{thue_morse_rho_reference, InfiniteWord};
use crate::word::{Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

/// A concrete counterexample: the length at which a check failed, what was
/// expected, and the offending words with their first positions.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub n: usize,
    pub detail: String,
    pub words: Vec<Word>,
    pub positions: Vec<u64>,
}

/// Outcome of one verifier run. Reports are pure functions of the inputs
/// and reproduce bit-for-bit.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub sequence: String,
    pub n_lo: usize,
    pub n_hi: usize,
    /// Prefix length used per factor length.
    pub prefix_lengths: BTreeMap<usize, u64>,
    /// Number of individual assertions evaluated.
    pub checks: u64,
    pub outcome: Outcome,
    pub witnesses: Vec<Witness>,
    /// Named observed quantities, e.g. the empirical complexity gap.
    pub metrics: BTreeMap<String, u64>,
}

impl VerificationReport {
    fn new(suite: &str, sequence: &str, n_lo: usize, n_hi: usize) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            sequence: sequence.to_string(),
            n_lo,
            n_hi,
            prefix_lengths: BTreeMap::new(),
            checks: 0,
            outcome: Outcome::Pass,
            witnesses: Vec::new(),
            metrics: BTreeMap::new(),
        }
    }

    fn witness(&mut self, w: Witness) {
        self.outcome = Outcome::Fail;
        self.witnesses.push(w);
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max_prefix = self.prefix_lengths.values().max().copied().unwrap_or(0);
        write!(
            f,
            "{}[{}] n={}..{}: {} ({} checks; prefix<={})",
            self.suite,
            self.sequence,
            self.n_lo,
            self.n_hi,
            match self.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
            },
            self.checks,
            max_prefix
        )?;
        for (name, value) in &self.metrics {
            write!(f, "\n  {name} = {value}")?;
        }
        for w in &self.witnesses {
            let words: Vec<String> = w.words.iter().map(|x| x.to_string()).collect();
            let positions: Vec<String> = w.positions.iter().map(|p| p.to_string()).collect();
            write!(
                f,
                "\n  witness n={}: {} [{}] at [{}]",
                w.n,
                w.detail,
                words.join(", "),
                positions.join(", ")
            )?;
        }
        Ok(())
    }
}

fn exact(policy: &StabilizationPolicy) -> StabilizationPolicy {
    StabilizationPolicy { closed_form_targets: false, ..policy.clone() }
}

/// Every tortoise equivalence class of length-`n` paperfolding factors is a
/// singleton; injectivity holds for `n >= 8` and fails below.
pub fn verify_pf_injectivity(
    n_lo: usize,
    n_hi: usize,
    policy: &StabilizationPolicy,
) -> Result<VerificationReport> {
    let mut az = SequenceAnalyzer::new(InfiniteWord::paperfolding(), exact(policy));
    pf_injectivity_inner(&mut az, n_lo, n_hi)
}

fn pf_injectivity_inner(
    az: &mut SequenceAnalyzer,
    n_lo: usize,
    n_hi: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("pf-inj", "f", n_lo, n_hi);
    for n in n_lo..=n_hi {
        let cr = az.class_report(n, 1)?;
        report.prefix_lengths.insert(n, cr.prefix_length);
        for class in &cr.classes {
            report.checks += 1;
            if !class.is_trivial() {
                report.witness(Witness {
                    n,
                    detail: "distinct factors share a tortoise image".into(),
                    words: class.members.iter().map(|m| m.word.clone()).collect(),
                    positions: class.members.iter().map(|m| m.first_position).collect(),
                });
            }
        }
    }
    Ok(report)
}

/// Both the factor complexity and the tortoise complexity of the
/// paperfolding word equal `4n`; holds for `n >= 8` (the factor half
/// already from `n >= 7`).
pub fn verify_pf_rho_formula(
    n_lo: usize,
    n_hi: usize,
    policy: &StabilizationPolicy,
) -> Result<VerificationReport> {
    let mut az = SequenceAnalyzer::new(InfiniteWord::paperfolding(), exact(policy));
    pf_rho_inner(&mut az, n_lo, n_hi)
}

fn pf_rho_inner(
    az: &mut SequenceAnalyzer,
    n_lo: usize,
    n_hi: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("pf-rho", "f", n_lo, n_hi);
    for n in n_lo..=n_hi {
        let rho = az.rho(n)?;
        let rho_t = az.rho_tortoise(n, 1)?;
        report.prefix_lengths.insert(n, az.factor_set(n)?.prefix_length());
        report.checks += 2;
        if rho != 4 * n {
            report.witness(Witness {
                n,
                detail: format!("factor complexity {rho} != 4n = {}", 4 * n),
                words: vec![],
                positions: vec![],
            });
        }
        if rho_t != 4 * n {
            report.witness(Witness {
                n,
                detail: format!("tortoise complexity {rho_t} != 4n = {}", 4 * n),
                words: vec![],
                positions: vec![],
            });
        }
    }
    Ok(report)
}

/// Every nontrivial tortoise class of length-`n` Thue–Morse factors is a
/// pair `{01y, 10y}` with `y` left special.
///
/// Holds for `n >= 10`. At `n = 9` the enumeration finds one pair of a
/// different shape, `{001011001, 010011001}` (equivalent because deleting
/// the first 1 of either leaves `00011001`), so a run including `n = 9`
/// honestly fails with that witness.
pub fn verify_tm_class_structure(
    n_lo: usize,
    n_hi: usize,
    policy: &StabilizationPolicy,
) -> Result<VerificationReport> {
    let mut az = SequenceAnalyzer::new(InfiniteWord::thue_morse(), exact(policy));
    tm_class_structure_inner(&mut az, n_lo, n_hi)
}

fn tm_class_structure_inner(
    az: &mut SequenceAnalyzer,
    n_lo: usize,
    n_hi: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("tm-classes", "t", n_lo, n_hi);
    for n in n_lo..=n_hi {
        let cr = az.class_report(n, 1)?;
        report.prefix_lengths.insert(n, cr.prefix_length);
        for class in cr.nontrivial() {
            report.checks += 1;
            let words: Vec<Word> = class.members.iter().map(|m| m.word.clone()).collect();
            let positions: Vec<u64> = class.members.iter().map(|m| m.first_position).collect();
            if words.len() != 2 {
                report.witness(Witness {
                    n,
                    detail: format!("class has {} members, expected 2", words.len()),
                    words,
                    positions,
                });
                continue;
            }
            // Members are sorted lexicographically, so 01y sorts first.
            let (a, b) = (&words[0], &words[1]);
            let shape_ok = n >= 2
                && a.slice(0, 2).to_string() == "01"
                && b.slice(0, 2).to_string() == "10"
                && a.slice(2, n) == b.slice(2, n);
            if !shape_ok {
                report.witness(Witness {
                    n,
                    detail: "pair is not of the form {01y, 10y}".into(),
                    words,
                    positions,
                });
                continue;
            }
            let y = a.slice(2, n);
            let left_special = if y.is_empty() {
                az.rho(1)? >= 2
            } else {
                az.special(y.len())?.left_special.contains(&y)
            };
            report.checks += 1;
            if !left_special {
                report.witness(Witness {
                    n,
                    detail: format!("shared suffix {y} is not left special"),
                    words,
                    positions,
                });
            }
        }
    }
    Ok(report)
}

/// The four distinguished Thue–Morse positions for a given length `n >= 11`,
/// with the corresponding length-`n` subwords materialized.
///
/// Writing the binary expansion of `n - 3` with `m` digits, the positions
/// are `2^(m+1) - 2`, `2^(m+1) + 2^(m-1) - 2`, `2^(m+1) + 2^(m-1) +
/// 2^(m-2) - 2`, and `2^(m+1) + 2^m - 2`.
#[derive(Clone, Debug, Serialize)]
pub struct CounterPositions {
    pub n: usize,
    /// Number of binary digits of `n - 3`.
    pub m: u32,
    /// First two binary digits of `n - 3`.
    pub leading_bits: (Symbol, Symbol),
    pub positions: [u64; 4],
    pub words: [Word; 4],
}

impl CounterPositions {
    /// Indices (0-based) of the counter words that participate in
    /// nontrivial classes: all four when the leading bits are 10, the first
    /// and last when they are 11.
    pub fn relevant_indices(&self) -> &'static [usize] {
        if self.leading_bits.1 == 0 {
            &[0, 1, 2, 3]
        } else {
            &[0, 3]
        }
    }
}

/// Leading two binary digits of `n - 3` (requires `n - 3 >= 2`).
fn leading_bits(n: usize) -> (Symbol, Symbol) {
    let v = (n - 3) as u64;
    let m = 64 - v.leading_zeros();
    (1, ((v >> (m - 2)) & 1) as Symbol)
}

pub fn tm_counter_words(n: usize) -> Result<CounterPositions> {
    if n < 11 {
        return Err(Error::Domain(format!(
            "counter positions are defined for n >= 11, got {n}"
        )));
    }
    let v = (n - 3) as u64;
    let m = 64 - v.leading_zeros();
    let base = 1u64 << (m + 1);
    let positions = [
        base - 2,
        base + (1 << (m - 1)) - 2,
        base + (1 << (m - 1)) + (1 << (m - 2)) - 2,
        base + (1 << m) - 2,
    ];
    let t = InfiniteWord::thue_morse();
    let words = positions.map(|p| {
        Word::new((p..p + n as u64).map(|i| t.at(i)).collect())
    });
    Ok(CounterPositions {
        n,
        m,
        leading_bits: leading_bits(n),
        positions,
        words,
    })
}

/// Every member of a nontrivial tortoise class of length-`n` Thue–Morse
/// factors is one of the counter words (or its class partner), and the
/// counter words selected by the leading bits of `n - 3` are exactly the
/// ones lying in nontrivial classes; holds for `n >= 11`.
pub fn verify_tm_counters(
    n_lo: usize,
    n_hi: usize,
    policy: &StabilizationPolicy,
) -> Result<VerificationReport> {
    let mut az = SequenceAnalyzer::new(InfiniteWord::thue_morse(), exact(policy));
    tm_counters_inner(&mut az, n_lo, n_hi)
}

fn tm_counters_inner(
    az: &mut SequenceAnalyzer,
    n_lo: usize,
    n_hi: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("tm-counters", "t", n_lo, n_hi);
    for n in n_lo..=n_hi {
        let cp = tm_counter_words(n)?;
        let fs = az.factor_set(n)?;
        report.prefix_lengths.insert(n, fs.prefix_length());
        for (i, word) in cp.words.iter().enumerate() {
            report.checks += 1;
            if !fs.contains(word) {
                report.witness(Witness {
                    n,
                    detail: format!("counter word {} not found as a factor", i + 1),
                    words: vec![word.clone()],
                    positions: vec![cp.positions[i]],
                });
            }
        }

        let cr = az.class_report(n, 1)?;
        let relevant: BTreeSet<&Word> =
            cp.relevant_indices().iter().map(|&i| &cp.words[i]).collect();
        let mut nontrivial_members: BTreeSet<&Word> = BTreeSet::new();
        for class in cr.nontrivial() {
            for m in &class.members {
                nontrivial_members.insert(&m.word);
            }
            report.checks += 2;
            if class.members.len() != 2 {
                report.witness(Witness {
                    n,
                    detail: format!("class has {} members, expected 2", class.members.len()),
                    words: class.members.iter().map(|m| m.word.clone()).collect(),
                    positions: class.members.iter().map(|m| m.first_position).collect(),
                });
            }
            if !class.members.iter().any(|m| relevant.contains(&m.word)) {
                report.witness(Witness {
                    n,
                    detail: "nontrivial class contains no counter word".into(),
                    words: class.members.iter().map(|m| m.word.clone()).collect(),
                    positions: class.members.iter().map(|m| m.first_position).collect(),
                });
            }
        }
        for (i, word) in cp.words.iter().enumerate() {
            let should_merge = cp.relevant_indices().contains(&i);
            report.checks += 1;
            if should_merge != nontrivial_members.contains(word) {
                report.witness(Witness {
                    n,
                    detail: format!(
                        "counter word {} {} in a nontrivial class",
                        i + 1,
                        if should_merge { "is not" } else { "is" }
                    ),
                    words: vec![word.clone()],
                    positions: vec![cp.positions[i]],
                });
            }
        }
    }
    Ok(report)
}

/// The tortoise complexity of the Thue–Morse word equals its factor
/// complexity minus 4 when the binary expansion of `n - 3` starts 10, and
/// minus 2 otherwise; the factor complexity itself is cross-checked against
/// the classical recurrences. Holds for `n >= 10`.
pub fn verify_tm_rho_formula(
    n_lo: usize,
    n_hi: usize,
    policy: &StabilizationPolicy,
) -> Result<VerificationReport> {
    let mut az = SequenceAnalyzer::new(InfiniteWord::thue_morse(), exact(policy));
    tm_rho_inner(&mut az, n_lo, n_hi)
}

fn tm_rho_inner(
    az: &mut SequenceAnalyzer,
    n_lo: usize,
    n_hi: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("tm-rho", "t", n_lo, n_hi);
    for n in n_lo..=n_hi {
        let rho = az.rho(n)?;
        let rho_t = az.rho_tortoise(n, 1)?;
        report.prefix_lengths.insert(n, az.factor_set(n)?.prefix_length());
        report.checks += 2;
        let reference = thue_morse_rho_reference(n);
        if rho != reference {
            report.witness(Witness {
                n,
                detail: format!("enumerated factor complexity {rho} != recurrence value {reference}"),
                words: vec![],
                positions: vec![],
            });
        }
        let gap = if n >= 5 && leading_bits(n) == (1, 0) { 4 } else { 2 };
        if rho_t + gap != rho {
            report.witness(Witness {
                n,
                detail: format!("tortoise complexity {rho_t} != {rho} - {gap}"),
                words: vec![],
                positions: vec![],
            });
        }
    }
    Ok(report)
}

fn longest_common_suffix(a: &Word, b: &Word) -> Word {
    let (sa, sb) = (a.symbols(), b.symbols());
    let mut len = 0;
    while len < sa.len() && len < sb.len() && sa[sa.len() - 1 - len] == sb[sb.len() - 1 - len] {
        len += 1;
    }
    a.slice(sa.len() - len, sa.len())
}

/// For every nontrivial tortoise pair `w = uv`, `w' = u'v` (split at the
/// shared position of the second 1, with `u`, `u'` holding exactly one 1
/// each), the word `zv` is left special, `z` being the longest common
/// suffix of `u` and `u'`.
pub fn verify_left_special_lemma(
    x: &InfiniteWord,
    n_lo: usize,
    n_hi: usize,
    policy: &StabilizationPolicy,
) -> Result<VerificationReport> {
    let mut az = SequenceAnalyzer::new(x.clone(), exact(policy));
    left_special_lemma_inner(&mut az, n_lo, n_hi)
}

fn left_special_lemma_inner(
    az: &mut SequenceAnalyzer,
    n_lo: usize,
    n_hi: usize,
) -> Result<VerificationReport> {
    let name = az.sequence().name().to_string();
    if az.sequence().alphabet_size() != 2 {
        return Err(Error::Usage(format!(
            "the left-special lemma applies to binary sequences; {name} has alphabet size {}",
            az.sequence().alphabet_size()
        )));
    }
    let mut report = VerificationReport::new("lemma1", &name, n_lo, n_hi);
    for n in n_lo..=n_hi {
        let cr = az.class_report(n, 1)?;
        report.prefix_lengths.insert(n, cr.prefix_length);
        let nontrivial: Vec<Vec<(Word, u64)>> = cr
            .nontrivial()
            .map(|c| {
                c.members
                    .iter()
                    .map(|m| (m.word.clone(), m.first_position))
                    .collect()
            })
            .collect();
        for members in nontrivial {
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    report.checks += 1;
                    let (w1, p1) = &members[i];
                    let (w2, p2) = &members[j];
                    let ones1: Vec<usize> =
                        (0..n).filter(|&p| w1[p] == 1).collect();
                    let ones2: Vec<usize> =
                        (0..n).filter(|&p| w2[p] == 1).collect();
                    if ones1.is_empty() || ones2.is_empty() {
                        continue;
                    }
                    let (u1, u2, v) = if ones1.len() >= 2 {
                        if ones1[1] != ones2[1] {
                            report.witness(Witness {
                                n,
                                detail: "equivalent words disagree on the second 1".into(),
                                words: vec![w1.clone(), w2.clone()],
                                positions: vec![*p1, *p2],
                            });
                            continue;
                        }
                        let r = ones1[1];
                        (w1.slice(0, r), w2.slice(0, r), w1.slice(r, n))
                    } else {
                        (w1.clone(), w2.clone(), Word::empty())
                    };
                    let z = longest_common_suffix(&u1, &u2);
                    let zv = z.concat(&v);
                    let left_special = if zv.is_empty() {
                        az.rho(1)? >= 2
                    } else {
                        az.special(zv.len())?.left_special.contains(&zv)
                    };
                    if !left_special {
                        report.witness(Witness {
                            n,
                            detail: format!("{zv} is not left special"),
                            words: vec![w1.clone(), w2.clone()],
                            positions: vec![*p1, *p2],
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Tortoise complexity never exceeds factor complexity; the report records
/// the largest observed gap as `empirical_c`.
pub fn verify_sandwich(
    x: &InfiniteWord,
    n_lo: usize,
    n_hi: usize,
    policy: &StabilizationPolicy,
) -> Result<VerificationReport> {
    let mut az = SequenceAnalyzer::new(x.clone(), exact(policy));
    sandwich_inner(&mut az, n_lo, n_hi)
}

fn sandwich_inner(
    az: &mut SequenceAnalyzer,
    n_lo: usize,
    n_hi: usize,
) -> Result<VerificationReport> {
    let name = az.sequence().name().to_string();
    let mut report = VerificationReport::new("sandwich", &name, n_lo, n_hi);
    let mut max_gap = 0u64;
    for n in n_lo..=n_hi {
        let rho = az.rho(n)?;
        let rho_t = az.rho_tortoise(n, 1)?;
        report.prefix_lengths.insert(n, az.factor_set(n)?.prefix_length());
        report.checks += 1;
        if rho_t > rho {
            report.witness(Witness {
                n,
                detail: format!("tortoise complexity {rho_t} exceeds factor complexity {rho}"),
                words: vec![],
                positions: vec![],
            });
        } else {
            max_gap = max_gap.max((rho - rho_t) as u64);
        }
    }
    report.metrics.insert("empirical_c".into(), max_gap);
    Ok(report)
}

/// Which verifier to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    PfInjectivity,
    PfRho,
    TmClasses,
    TmCounters,
    TmRho,
    Lemma1,
    Sandwich,
}

impl Suite {
    /// Smallest length at which the claim is expected to hold; `verify_all`
    /// clamps its range to this. The class-shape claim starts at 10, not 9:
    /// see [`verify_tm_class_structure`].
    fn min_n(self) -> usize {
        match self {
            Suite::PfInjectivity | Suite::PfRho => 8,
            Suite::TmClasses | Suite::TmRho => 10,
            Suite::TmCounters => 11,
            Suite::Lemma1 | Suite::Sandwich => 1,
        }
    }
}

/// Runs every verifier over `[n_lo, n_hi]`, with each suite's lower end
/// clamped to the length its claim starts at. Factor enumeration is shared
/// across suites. The left-special lemma and sandwich checks run on both
/// built-in sequences.
pub fn verify_all(
    n_lo: usize,
    n_hi: usize,
    policy: &StabilizationPolicy,
) -> Result<Vec<VerificationReport>> {
    let exact_policy = exact(policy);
    let mut az_f = SequenceAnalyzer::new(InfiniteWord::paperfolding(), exact_policy.clone());
    let mut az_t = SequenceAnalyzer::new(InfiniteWord::thue_morse(), exact_policy);
    let mut reports = Vec::new();

    let suites = [
        Suite::PfInjectivity,
        Suite::PfRho,
        Suite::TmClasses,
        Suite::TmCounters,
        Suite::TmRho,
        Suite::Lemma1,
        Suite::Sandwich,
    ];
    for suite in suites {
        let lo = n_lo.max(suite.min_n());
        if lo > n_hi {
            continue;
        }
        match suite {
            Suite::PfInjectivity => reports.push(pf_injectivity_inner(&mut az_f, lo, n_hi)?),
            Suite::PfRho => reports.push(pf_rho_inner(&mut az_f, lo, n_hi)?),
            Suite::TmClasses => reports.push(tm_class_structure_inner(&mut az_t, lo, n_hi)?),
            Suite::TmCounters => reports.push(tm_counters_inner(&mut az_t, lo, n_hi)?),
            Suite::TmRho => reports.push(tm_rho_inner(&mut az_t, lo, n_hi)?),
            Suite::Lemma1 => {
                reports.push(left_special_lemma_inner(&mut az_f, lo, n_hi)?);
                reports.push(left_special_lemma_inner(&mut az_t, lo, n_hi)?);
            }
            Suite::Sandwich => {
                reports.push(sandwich_inner(&mut az_f, lo, n_hi)?);
                reports.push(sandwich_inner(&mut az_t, lo, n_hi)?);
            }
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> StabilizationPolicy {
        StabilizationPolicy::default()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn pf_injectivity_passes_in_range() {
        let r = verify_pf_injectivity(8, 24, &policy()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks > 0);
    }

    #[test]
    fn pf_injectivity_fails_below_range() {
        let r = verify_pf_injectivity(5, 5, &policy()).unwrap();
        assert!(!r.passed());
        // The witnesses are genuine: distinct equivalent factors.
        for witness in &r.witnesses {
            assert!(witness.words.len() >= 2);
            let key = crate::word::canonical_key(&witness.words[0], 1);
            for word in &witness.words[1..] {
                assert_ne!(word, &witness.words[0]);
                assert_eq!(crate::word::canonical_key(word, 1), key);
            }
        }
        // The gap rho(5) - rho^t(5) = 18 - 12 accounts for the merges.
        let merged: usize = r.witnesses.iter().map(|w| w.words.len() - 1).sum();
        assert_eq!(merged, 6);

        let r2 = verify_pf_injectivity(2, 2, &policy()).unwrap();
        assert!(!r2.passed());
        assert_eq!(r2.witnesses.len(), 1);
        assert_eq!(r2.witnesses[0].words, vec![w("01"), w("10")]);
    }

    #[test]
    fn pf_rho_passes_in_range() {
        let r = verify_pf_rho_formula(8, 24, &policy()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn pf_rho_fails_only_on_tortoise_half_at_seven() {
        let r = verify_pf_rho_formula(7, 7, &policy()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.witnesses.len(), 1);
        assert!(r.witnesses[0].detail.contains("tortoise complexity 26"));
    }

    #[test]
    fn tm_class_structure_examples() {
        let r = verify_tm_class_structure(10, 24, &policy()).unwrap();
        assert!(r.passed(), "{r}");

        let r = verify_tm_class_structure(58, 58, &policy()).unwrap();
        assert!(r.passed());

        // Counting both the shape and left-special checks per class: the
        // n = 12 row has four nontrivial classes.
        let mut az = SequenceAnalyzer::new(
            InfiniteWord::thue_morse(),
            StabilizationPolicy::exact(),
        );
        let cr = az.class_report(12, 1).unwrap();
        assert_eq!(cr.nontrivial_count(), 4);
        assert_eq!(
            az.rho(12).unwrap() - az.rho_tortoise(12, 1).unwrap(),
            4
        );
    }

    #[test]
    fn tm_class_structure_fails_at_nine() {
        // One of the three merged pairs at n = 9 does not have the
        // {01y, 10y} shape.
        let r = verify_tm_class_structure(9, 9, &policy()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(
            r.witnesses[0].words,
            vec![w("001011001"), w("010011001")]
        );
    }

    #[test]
    fn counter_positions_n58() {
        let cp = tm_counter_words(58).unwrap();
        assert_eq!(cp.m, 6);
        assert_eq!(cp.leading_bits, (1, 1));
        assert_eq!(cp.positions, [126, 158, 174, 190]);
        assert_eq!(cp.relevant_indices(), &[0, 3]);
        assert!(cp.positions.windows(2).all(|p| p[0] < p[1]));
        for word in &cp.words {
            assert_eq!(word.len(), 58);
        }
    }

    #[test]
    fn counter_positions_n11() {
        // n - 3 = 8 = [1000] in binary, so m = 4.
        let cp = tm_counter_words(11).unwrap();
        assert_eq!(cp.m, 4);
        assert_eq!(cp.leading_bits, (1, 0));
        assert_eq!(cp.positions, [30, 38, 42, 46]);
        // All four counter words occur in t at the claimed positions.
        let t = InfiniteWord::thue_morse();
        let prefix = t.prefix(80);
        for (i, word) in cp.words.iter().enumerate() {
            let start = cp.positions[i] as usize;
            assert_eq!(
                &prefix.symbols()[start..start + 11],
                word.symbols()
            );
        }
        assert!(matches!(tm_counter_words(10), Err(Error::Domain(_))));
    }

    #[test]
    fn tm_counters_pass_in_range() {
        let r = verify_tm_counters(11, 24, &policy()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn tm_rho_formula_examples() {
        let r = verify_tm_rho_formula(10, 24, &policy()).unwrap();
        assert!(r.passed(), "{r}");

        let mut az = SequenceAnalyzer::new(
            InfiniteWord::thue_morse(),
            StabilizationPolicy::exact(),
        );
        // n = 11: n - 3 = [1000], leading 10, so rho^t = 32 - 4 = 28.
        assert_eq!(az.rho(11).unwrap(), 32);
        assert_eq!(az.rho_tortoise(11, 1).unwrap(), 28);
        // n = 15: n - 3 = [1100], leading 11, so rho^t = 44 - 2 = 42.
        assert_eq!(az.rho(15).unwrap(), 44);
        assert_eq!(az.rho_tortoise(15, 1).unwrap(), 42);
        // n = 58: leading 11, so rho^t = 178 - 2 = 176.
        assert_eq!(az.rho(58).unwrap(), 178);
        assert_eq!(az.rho_tortoise(58, 1).unwrap(), 176);
    }

    #[test]
    fn lemma1_examples() {
        let t = InfiniteWord::thue_morse();
        let r = verify_left_special_lemma(&t, 9, 24, &policy()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks > 0);

        let f = InfiniteWord::paperfolding();
        let r = verify_left_special_lemma(&f, 2, 7, &policy()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks > 0);

        let c = InfiniteWord::constant(0, 2);
        let r = verify_left_special_lemma(&c, 1, 10, &policy()).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks, 0);
    }

    #[test]
    fn sandwich_examples() {
        let t = InfiniteWord::thue_morse();
        let r = verify_sandwich(&t, 10, 32, &policy()).unwrap();
        assert!(r.passed());
        assert_eq!(r.metrics["empirical_c"], 4);

        let f = InfiniteWord::paperfolding();
        let r = verify_sandwich(&f, 8, 32, &policy()).unwrap();
        assert!(r.passed());
        assert_eq!(r.metrics["empirical_c"], 0);

        let r = verify_sandwich(&f, 1, 7, &policy()).unwrap();
        assert!(r.passed());
        let mut az = SequenceAnalyzer::new(f, StabilizationPolicy::exact());
        for n in 3..=7 {
            assert!(az.rho(n).unwrap() > az.rho_tortoise(n, 1).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn verify_all_aggregate() {
        let reports = verify_all(11, 20, &policy()).unwrap();
        assert!(reports.iter().all(|r| r.passed()));
        // lemma1 and sandwich run on both sequences.
        assert_eq!(reports.len(), 9);
    }

    #[test]
    fn reports_are_reproducible() {
        let a = verify_tm_rho_formula(10, 16, &policy()).unwrap();
        let b = verify_tm_rho_formula(10, 16, &policy()).unwrap();
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn report_serialization() {
        let r = verify_pf_injectivity(2, 2, &policy()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["suite"], "pf-inj");
        assert_eq!(json["outcome"], "fail");
        assert_eq!(json["witnesses"][0]["words"][0], "01");
    }
}
