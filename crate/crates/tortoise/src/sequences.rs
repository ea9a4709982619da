//! Infinite sequences: the built-in paperfolding and Thue–Morse words, a
//! DFAO interpreter for arbitrary automatic sequences, and prefix
//! materialization.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// Paperfolding symbol `f_n` for `n >= 1`: write `n = n' * 2^k` with `n'`
/// odd; the symbol is 0 when `n' = 1 (mod 4)` and 1 when `n' = 3 (mod 4)`.
pub fn paperfolding_at(n: u64) -> Result<Symbol> {
    if n == 0 {
        return Err(Error::Domain(
            "paperfolding indices start at 1".into(),
        ));
    }
    let odd = n >> n.trailing_zeros();
    Ok(((odd >> 1) & 1) as Symbol)
}

/// Thue–Morse symbol `t_n` for `n >= 0`: the parity of the number of 1-digits
/// in the binary expansion of `n`.
pub fn thue_morse_at(n: u64) -> Symbol {
    (n.count_ones() & 1) as Symbol
}

/// Factor complexity of the Thue–Morse word by the classical recurrences
/// `rho(2n) = rho(n) + rho(n+1)` and `rho(2n+1) = 2 rho(n+1)` for `n >= 2`,
/// with initial values 1, 2, 4, 6, 10, 12.
pub fn thue_morse_rho_reference(n: usize) -> usize {
    match n {
        0 => 1,
        1 => 2,
        2 => 4,
        3 => 6,
        4 => 10,
        5 => 12,
        _ => {
            let half = n / 2;
            if n % 2 == 0 {
                thue_morse_rho_reference(half) + thue_morse_rho_reference(half + 1)
            } else {
                2 * thue_morse_rho_reference(half + 1)
            }
        }
    }
}

/// Factor complexity of the paperfolding word: `4n` for `n >= 7`, small
/// table below.
pub fn paperfolding_rho_reference(n: usize) -> usize {
    const SMALL: [usize; 7] = [1, 2, 4, 8, 12, 18, 23];
    if n < 7 {
        SMALL[n]
    } else {
        4 * n
    }
}

/// Deterministic finite automaton with output. Digits of the input number
/// are consumed most-significant first; the output attached to the final
/// state is the sequence symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    alphabet_size: u32,
    initial: usize,
    /// Output symbol per state.
    outputs: Vec<Symbol>,
    /// `transitions[state][digit]` is the successor state.
    transitions: Vec<Vec<usize>>,
    /// Original state ids as written in the description, by internal index.
    ids: Vec<u32>,
}

impl Dfao {
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn state_count(&self) -> usize {
        self.outputs.len()
    }

    /// Runs the automaton on the base-`b` digits of `n`, most significant
    /// digit first. `n = 0` is the empty digit word, so the output of the
    /// initial state.
    pub fn eval(&self, n: u64) -> Symbol {
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % self.base as u64) as usize);
            m /= self.base as u64;
        }
        let mut state = self.initial;
        for &d in digits.iter().rev() {
            state = self.transitions[state][d];
        }
        self.outputs[state]
    }

    /// The 2-state automaton of the Thue–Morse word.
    pub fn thue_morse() -> Dfao {
        Dfao {
            base: 2,
            alphabet_size: 2,
            initial: 0,
            outputs: vec![0, 1],
            transitions: vec![vec![0, 1], vec![1, 0]],
            ids: vec![0, 1],
        }
    }

    /// A 5-state automaton of the paperfolding word (msd-first). State 0 is
    /// the start; the other states track the digit preceding the most recent
    /// 1 (the output if the input ends now) and the last digit read.
    pub fn paperfolding() -> Dfao {
        // 1: (0, last=1)  2: (0, last=0)  3: (1, last=1)  4: (1, last=0)
        Dfao {
            base: 2,
            alphabet_size: 2,
            initial: 0,
            outputs: vec![0, 0, 0, 1, 1],
            transitions: vec![
                vec![0, 1],
                vec![2, 3],
                vec![2, 1],
                vec![4, 3],
                vec![4, 1],
            ],
            ids: vec![0, 1, 2, 3, 4],
        }
    }

    /// Parses the plain-text description format:
    ///
    /// ```text
    /// base 2 alphabet 2 initial 0
    /// state 0 output 0
    /// state 1 output 1
    /// trans 0 0 0
    /// trans 0 1 1
    /// trans 1 0 1
    /// trans 1 1 0
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored. Every
    /// `(state, digit)` pair must have exactly one transition.
    pub fn parse(text: &str) -> Result<Dfao> {
        let mut header: Option<(u32, u32, u32)> = None;
        let mut states: Vec<(u32, Symbol)> = Vec::new();
        let mut trans: Vec<(u32, u32, u32, usize)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let parse_num = |s: &str| -> Result<u32> {
                s.parse().map_err(|_| Error::DfaoParse {
                    line: lineno,
                    msg: format!("expected a number, found {s:?}"),
                })
            };
            match tokens[0] {
                "base" => {
                    if tokens.len() != 6 || tokens[2] != "alphabet" || tokens[4] != "initial" {
                        return Err(Error::DfaoParse {
                            line: lineno,
                            msg: "header must be `base <b> alphabet <A> initial <s0>`".into(),
                        });
                    }
                    if header.is_some() {
                        return Err(Error::DfaoParse {
                            line: lineno,
                            msg: "duplicate header".into(),
                        });
                    }
                    let b = parse_num(tokens[1])?;
                    let a = parse_num(tokens[3])?;
                    let s0 = parse_num(tokens[5])?;
                    if b < 2 {
                        return Err(Error::DfaoParse {
                            line: lineno,
                            msg: format!("base must be at least 2, found {b}"),
                        });
                    }
                    if a == 0 || a > 256 {
                        return Err(Error::DfaoParse {
                            line: lineno,
                            msg: format!("alphabet size must be in 1..=256, found {a}"),
                        });
                    }
                    header = Some((b, a, s0));
                }
                "state" => {
                    if tokens.len() != 4 || tokens[2] != "output" {
                        return Err(Error::DfaoParse {
                            line: lineno,
                            msg: "state line must be `state <id> output <sym>`".into(),
                        });
                    }
                    let id = parse_num(tokens[1])?;
                    let out = parse_num(tokens[3])?;
                    if out > 255 {
                        return Err(Error::DfaoParse {
                            line: lineno,
                            msg: format!("output {out} exceeds 255"),
                        });
                    }
                    if states.iter().any(|&(i, _)| i == id) {
                        return Err(Error::DfaoParse {
                            line: lineno,
                            msg: format!("duplicate state {id}"),
                        });
                    }
                    states.push((id, out as Symbol));
                }
                "trans" => {
                    if tokens.len() != 4 {
                        return Err(Error::DfaoParse {
                            line: lineno,
                            msg: "transition line must be `trans <from> <digit> <to>`".into(),
                        });
                    }
                    let from = parse_num(tokens[1])?;
                    let digit = parse_num(tokens[2])?;
                    let to = parse_num(tokens[3])?;
                    trans.push((from, digit, to, lineno));
                }
                other => {
                    return Err(Error::DfaoParse {
                        line: lineno,
                        msg: format!("unknown directive {other:?}"),
                    });
                }
            }
        }

        let (base, alphabet_size, initial_id) = header.ok_or(Error::DfaoParse {
            line: 1,
            msg: "missing header line".into(),
        })?;
        if states.is_empty() {
            return Err(Error::DfaoParse {
                line: 1,
                msg: "no states declared".into(),
            });
        }

        let index: HashMap<u32, usize> =
            states.iter().enumerate().map(|(i, &(id, _))| (id, i)).collect();
        let initial = *index.get(&initial_id).ok_or_else(|| {
            Error::DfaoInvalid(format!("initial state {initial_id} is not declared"))
        })?;

        for &(id, out) in &states {
            if out as u32 >= alphabet_size {
                return Err(Error::DfaoInvalid(format!(
                    "state {id} output {out} exceeds alphabet size {alphabet_size}"
                )));
            }
        }

        let mut transitions = vec![vec![usize::MAX; base as usize]; states.len()];
        for &(from, digit, to, lineno) in &trans {
            let fi = *index.get(&from).ok_or_else(|| {
                Error::DfaoInvalid(format!("transition from undeclared state {from}"))
            })?;
            let ti = *index.get(&to).ok_or_else(|| {
                Error::DfaoInvalid(format!("transition to undeclared state {to}"))
            })?;
            if digit >= base {
                return Err(Error::DfaoParse {
                    line: lineno,
                    msg: format!("digit {digit} exceeds base {base}"),
                });
            }
            if transitions[fi][digit as usize] != usize::MAX {
                return Err(Error::DfaoInvalid(format!(
                    "duplicate transition for state {from} on digit {digit}"
                )));
            }
            transitions[fi][digit as usize] = ti;
        }
        for (i, row) in transitions.iter().enumerate() {
            for (digit, &target) in row.iter().enumerate() {
                if target == usize::MAX {
                    return Err(Error::DfaoInvalid(format!(
                        "state {} has no transition on digit {digit}",
                        states[i].0
                    )));
                }
            }
        }

        Ok(Dfao {
            base,
            alphabet_size,
            initial,
            outputs: states.iter().map(|&(_, o)| o).collect(),
            transitions,
            ids: states.iter().map(|&(id, _)| id).collect(),
        })
    }

    /// Renders the automaton in the text format accepted by [`Dfao::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "base {} alphabet {} initial {}\n",
            self.base, self.alphabet_size, self.ids[self.initial]
        );
        for (i, &o) in self.outputs.iter().enumerate() {
            out.push_str(&format!("state {} output {}\n", self.ids[i], o));
        }
        for (i, row) in self.transitions.iter().enumerate() {
            for (digit, &target) in row.iter().enumerate() {
                out.push_str(&format!(
                    "trans {} {} {}\n",
                    self.ids[i], digit, self.ids[target]
                ));
            }
        }
        out
    }
}

/// Loads a DFAO description from a file.
pub fn load_dfao(path: impl AsRef<Path>) -> Result<Dfao> {
    let text = std::fs::read_to_string(path)?;
    Dfao::parse(&text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Backend {
    Paperfolding,
    ThueMorse,
    Constant(Symbol),
    Dfao(Dfao),
}

/// An infinite word: a deterministic symbol source indexed from
/// `index_base` (0 or 1) upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteWord {
    name: String,
    alphabet_size: u32,
    index_base: u64,
    backend: Backend,
}

impl InfiniteWord {
    /// The paperfolding word `f`, indexed from 1.
    pub fn paperfolding() -> Self {
        InfiniteWord {
            name: "f".into(),
            alphabet_size: 2,
            index_base: 1,
            backend: Backend::Paperfolding,
        }
    }

    /// The Thue–Morse word `t`, indexed from 0.
    pub fn thue_morse() -> Self {
        InfiniteWord {
            name: "t".into(),
            alphabet_size: 2,
            index_base: 0,
            backend: Backend::ThueMorse,
        }
    }

    /// The constant word `sym sym sym ...`, indexed from 0.
    pub fn constant(sym: Symbol, alphabet_size: u32) -> Self {
        assert!((sym as u32) < alphabet_size);
        InfiniteWord {
            name: format!("const{sym}"),
            alphabet_size,
            index_base: 0,
            backend: Backend::Constant(sym),
        }
    }

    /// The sequence computed by a DFAO.
    pub fn from_dfao(name: impl Into<String>, dfao: Dfao, index_base: u64) -> Self {
        InfiniteWord {
            name: name.into(),
            alphabet_size: dfao.alphabet_size(),
            index_base,
            backend: Backend::Dfao(dfao),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    /// First valid index (0 or 1).
    pub fn index_base(&self) -> u64 {
        self.index_base
    }

    /// Symbol at index `i`; requires `i >= index_base`.
    pub fn at(&self, i: u64) -> Symbol {
        debug_assert!(i >= self.index_base, "index {i} below base {}", self.index_base);
        match &self.backend {
            Backend::Paperfolding => paperfolding_at(i).expect("index >= 1"),
            Backend::ThueMorse => thue_morse_at(i),
            Backend::Constant(s) => *s,
            Backend::Dfao(d) => d.eval(i),
        }
    }

    /// The word formed by the first `len` symbols.
    pub fn prefix(&self, len: usize) -> Word {
        Word::new(
            (0..len as u64)
                .map(|off| self.at(self.index_base + off))
                .collect(),
        )
    }
}

impl fmt::Display for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// A lazily grown materialized prefix of an infinite word.
#[derive(Clone, Debug)]
pub struct PrefixBuffer {
    source: InfiniteWord,
    data: Vec<Symbol>,
}

impl PrefixBuffer {
    pub fn new(source: InfiniteWord) -> Self {
        PrefixBuffer { source, data: Vec::new() }
    }

    pub fn source(&self) -> &InfiniteWord {
        &self.source
    }

    /// Extends the materialized prefix to at least `len` symbols.
    pub fn ensure(&mut self, len: usize) {
        let base = self.source.index_base();
        while self.data.len() < len {
            let i = base + self.data.len() as u64;
            self.data.push(self.source.at(i));
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Materialized symbols; call [`PrefixBuffer::ensure`] first.
    pub fn symbols(&self) -> &[Symbol] {
        &self.data
    }
}
