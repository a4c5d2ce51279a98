//! Words over `{A, C0, C1, C2}` tracking an `(a, b)` state.
//!
//! Letters `A` and `C0` decrement the defect and drop the budget by `2b - 1`;
//! letters `C1` and `C2` keep the defect and drop the budget by `b` (the
//! worst case: every transition inequality is an equality and all slack is
//! zero). The worst-case tree branches binarily at every non-terminal node,
//! and its leaf count equals `mubar` of the root.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::local::mubar;
use crate::model::LocalPair;

/// Tracked `(a, b)` state of a word; admissible at every reachable state.
pub type WordState = LocalPair;

/// The four-letter alphabet. Under the projection `nu`, `A` maps to `A` and
/// every `C_i` maps to `C`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    C0,
    C1,
    C2,
}

impl Letter {
    /// Image under the two-letter projection.
    pub fn nu(self) -> char {
        match self {
            Letter::A => 'A',
            _ => 'C',
        }
    }

    /// Whether the letter decrements the defect.
    pub fn is_decrement(self) -> bool {
        matches!(self, Letter::A | Letter::C0)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Letter::A => "A",
            Letter::C0 => "C0",
            Letter::C1 => "C1",
            Letter::C2 => "C2",
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A word together with the state reached by replaying it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    final_state: WordState,
}

impl Word {
    /// Replay `letters` from `root`, validating every intermediate state.
    pub fn replay(root: WordState, letters: Vec<Letter>) -> Result<Word> {
        if !root.is_admissible() {
            return Err(Error::InadmissiblePair { a: root.a, b: root.b });
        }
        let mut state = root;
        for &l in &letters {
            state = step(state, l)?;
        }
        Ok(Word {
            letters,
            final_state: state,
        })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn final_state(&self) -> WordState {
        self.final_state
    }

    /// A word is terminal when its whole defect has been consumed.
    pub fn is_terminal(&self) -> bool {
        self.final_state.b == 0
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn step(s: WordState, letter: Letter) -> Result<WordState> {
    if s.b == 0 {
        return Err(Error::TerminalState);
    }
    let next = if letter.is_decrement() {
        WordState::new(s.a - (2 * s.b - 1), s.b - 1)
    } else {
        match s.a.checked_sub(s.b) {
            Some(a) => WordState::new(a, s.b),
            None => return Err(Error::InadmissiblePair { a: 0, b: s.b }),
        }
    };
    if next.is_admissible() {
        Ok(next)
    } else {
        Err(Error::InadmissiblePair {
            a: next.a,
            b: next.b,
        })
    }
}

/// Worst-case successors of a state, in alphabet order, omitting any that
/// would leave the admissible domain. `A` and `C0` land on
/// `(a - (2b-1), b-1)`; `C1` and `C2` on `(a - b, b)`.
pub fn transitions(s: WordState) -> Result<Vec<(Letter, WordState)>> {
    if s.b == 0 {
        return Err(Error::TerminalState);
    }
    let mut out = Vec::with_capacity(4);
    for letter in [Letter::A, Letter::C0, Letter::C1, Letter::C2] {
        if let Ok(next) = step(s, letter) {
            out.push((letter, next));
        }
    }
    Ok(out)
}

/// The worst-case word tree rooted at `root`, returned as its set of
/// terminal words in lexicographic letter order.
///
/// Every non-terminal node has exactly two children: one takes `A`, the
/// other takes `C0` when `a < b(b+1)` (the defect-keeping branch is
/// inadmissible there) and otherwise whichever of the `C0`/`C1` successors
/// has the larger subtree leaf count, ties going to `C0`. `C2` behaves
/// identically to `C1` and is never emitted. The leaf count equals
/// `mubar(root)`.
pub fn worst_case_words(root: WordState) -> Result<Vec<Word>> {
    if !root.is_admissible() {
        return Err(Error::InadmissiblePair { a: root.a, b: root.b });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    build(root, &mut prefix, &mut out);
    out.sort_by(|w1, w2| w1.letters.cmp(&w2.letters));
    Ok(out)
}

fn build(s: WordState, prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
    if s.b == 0 {
        out.push(Word {
            letters: prefix.clone(),
            final_state: s,
        });
        return;
    }
    let dec = WordState::new(s.a - (2 * s.b - 1), s.b - 1);
    prefix.push(Letter::A);
    build(dec, prefix, out);
    prefix.pop();

    let (letter, next) = if s.a < s.b * (s.b + 1) {
        (Letter::C0, dec)
    } else {
        let keep = WordState::new(s.a - s.b, s.b);
        let n_dec = mubar(dec).expect("decrement successor is admissible");
        let n_keep = mubar(keep).expect("guarded keep successor is admissible");
        if n_dec >= n_keep {
            (Letter::C0, dec)
        } else {
            (Letter::C1, keep)
        }
    };
    prefix.push(letter);
    build(next, prefix, out);
    prefix.pop();
}

/// Letterwise image under `nu`: `A` stays `A`, every `C_i` becomes `C`.
pub fn nu_project(w: &Word) -> String {
    w.letters().iter().map(|l| l.nu()).collect()
}

/// `true` iff the `nu`-images are pairwise distinct and none is a proper
/// prefix of another.
pub fn check_prefix_free(words: &[Word]) -> bool {
    let mut images: Vec<String> = words.iter().map(nu_project).collect();
    images.sort();
    images
        .windows(2)
        .all(|w| w[0] != w[1] && !w[1].starts_with(w[0].as_str()))
}

/// Position encoding of a terminal word: `m[j]` counts the defect-keeping
/// letters between the `j`-th and `(j+1)`-th decrement letters, and
/// `letters` records which of `A`/`C0` occupies each decrement position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositionEncoding {
    pub m: Vec<u32>,
    pub letters: Vec<Letter>,
}

impl PositionEncoding {
    /// The weighted budget `b*m[0] + (b-1)*m[1] + ... + 1*m[b-1]` spent on
    /// defect-keeping letters.
    pub fn weighted_budget(&self) -> u64 {
        let b = self.m.len() as u64;
        self.m
            .iter()
            .enumerate()
            .map(|(j, &mj)| (b - j as u64) * mj as u64)
            .sum()
    }
}

/// Encode a terminal word from `root`. The vector `m` always satisfies
/// `b*m[0] + ... + 1*m[b-1] <= a - b^2`, i.e. lies in the integer simplex.
pub fn encode_positions(w: &Word, root: WordState) -> Result<PositionEncoding> {
    if w.final_state().b != 0 {
        return Err(Error::NonTerminalWord(w.final_state().b));
    }
    let b = root.b as usize;
    let mut m = Vec::with_capacity(b);
    let mut letters = Vec::with_capacity(b);
    let mut run = 0u32;
    for &l in w.letters() {
        if l.is_decrement() {
            m.push(run);
            letters.push(l);
            run = 0;
        } else {
            run += 1;
        }
    }
    debug_assert_eq!(m.len(), b, "terminal word has exactly b decrement letters");
    let enc = PositionEncoding { m, letters };
    debug_assert!(enc.weighted_budget() <= (root.a as u64).saturating_sub((root.b * root.b) as u64));
    Ok(enc)
}

/// Test hook shared with the verifier: encodings of a word set are pairwise
/// distinct and all lie inside the simplex budget.
pub fn encodings_injective_and_in_simplex(words: &[Word], root: WordState) -> Result<bool> {
    let budget = (root.a - root.b * root.b) as u64;
    let mut seen = HashSet::with_capacity(words.len());
    for w in words {
        let enc = encode_positions(w, root)?;
        if enc.weighted_budget() > budget || !seen.insert((enc.m, enc.letters)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn transitions_at_4_2() {
        // the defect-keeping branch would land on (2, 2), outside the domain
        let ts = transitions(WordState::new(4, 2)).unwrap();
        assert_eq!(
            ts,
            vec![
                (Letter::A, WordState::new(1, 1)),
                (Letter::C0, WordState::new(1, 1)),
            ]
        );
    }

    #[test]
    fn transitions_at_12_3() {
        let ts = transitions(WordState::new(12, 3)).unwrap();
        assert_eq!(
            ts,
            vec![
                (Letter::A, WordState::new(7, 2)),
                (Letter::C0, WordState::new(7, 2)),
                (Letter::C1, WordState::new(9, 3)),
                (Letter::C2, WordState::new(9, 3)),
            ]
        );
    }

    #[test]
    fn transitions_terminal_errors() {
        assert_eq!(transitions(WordState::new(5, 0)), Err(Error::TerminalState));
    }

    #[test]
    fn words_at_2_1() {
        let ws = worst_case_words(WordState::new(2, 1)).unwrap();
        let shown: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, vec!["A", "C1 A", "C1 C0"]);
    }

    #[test]
    fn words_at_4_2() {
        let ws = worst_case_words(WordState::new(4, 2)).unwrap();
        assert_eq!(ws.len(), 4);
        let shown: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, vec!["A A", "A C0", "C0 A", "C0 C0"]);
    }

    #[test]
    fn words_at_terminal_root() {
        let ws = worst_case_words(WordState::new(9, 0)).unwrap();
        assert_eq!(ws.len(), 1);
        assert!(ws[0].is_empty());
    }

    #[test]
    fn words_inadmissible_root_errors() {
        assert!(worst_case_words(WordState::new(3, 2)).is_err());
    }

    #[test]
    fn nu_projection() {
        let w = Word::replay(
            WordState::new(12, 3),
            vec![Letter::A, Letter::C1, Letter::C0],
        )
        .unwrap();
        assert_eq!(nu_project(&w), "ACC");
        let empty = Word::replay(WordState::new(5, 0), vec![]).unwrap();
        assert_eq!(nu_project(&empty), "");
        let w = Word::replay(
            WordState::new(17, 3),
            vec![Letter::C2, Letter::C2, Letter::A],
        )
        .unwrap();
        assert_eq!(nu_project(&w), "CCA");
    }

    #[test]
    fn prefix_free_checks() {
        let ws = worst_case_words(WordState::new(6, 2)).unwrap();
        assert!(check_prefix_free(&ws));

        // synthetic violation: A is a prefix of A C1
        let root = WordState::new(9, 2);
        let w1 = Word::replay(root, vec![Letter::A]).unwrap();
        let w2 = Word::replay(root, vec![Letter::A, Letter::C1]).unwrap();
        assert!(!check_prefix_free(&[w1.clone(), w2]));
        assert!(check_prefix_free(&[w1]));
    }

    #[test]
    fn encoding_at_4_2() {
        let root = WordState::new(4, 2);
        let w = Word::replay(root, vec![Letter::A, Letter::A]).unwrap();
        let enc = encode_positions(&w, root).unwrap();
        assert_eq!(enc.m, vec![0, 0]);
        assert_eq!(enc.letters, vec![Letter::A, Letter::A]);
    }

    #[test]
    fn encoding_counts_keep_runs() {
        let root = WordState::new(12, 3);
        let w = Word::replay(
            root,
            vec![Letter::C1, Letter::A, Letter::C0, Letter::A],
        )
        .unwrap();
        let enc = encode_positions(&w, root).unwrap();
        assert_eq!(enc.m, vec![1, 0, 0]);
        assert_eq!(enc.letters, vec![Letter::A, Letter::C0, Letter::A]);
        assert_eq!(enc.weighted_budget(), 3); // 3*1 + 2*0 + 1*0 <= 12 - 9
    }

    #[test]
    fn encoding_zero_budget_forces_zero_vector() {
        let root = WordState::new(36, 6);
        for w in worst_case_words(root).unwrap() {
            let enc = encode_positions(&w, root).unwrap();
            assert!(enc.m.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn encoding_rejects_non_terminal() {
        let root = WordState::new(12, 3);
        let w = Word::replay(root, vec![Letter::A]).unwrap();
        assert_eq!(
            encode_positions(&w, root),
            Err(Error::NonTerminalWord(2))
        );
    }

    #[test]
    fn leaf_count_matches_local_bound_small() {
        for (a, b, want) in [(2, 1, 3), (4, 2, 4), (12, 3, 22), (16, 4, 16)] {
            let ws = worst_case_words(WordState::new(a, b)).unwrap();
            assert_eq!(BigInt::from(ws.len()), BigInt::from(want as u32), "({a},{b})");
        }
    }
}
