//! Relator words `W(x, y) = x^a1 y^b1 ... x^ak y^bk` in `Z_3 * Z_5`.
//!
//! Exponents are stored reduced, `0 < a < 3` and `0 < b < 5`. When a word is
//! evaluated in `SL(2)` each syllable is lifted to the balanced representative
//! of its exponent (`x^2 -> x^-1`, `y^3 -> y^-2`, `y^4 -> y^-1`), so that
//! `tr W(X, Y)` is the same polynomial whichever evaluation route is used.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Order of `x`.
pub const X_ORDER: u8 = 3;
/// Order of `y`.
pub const Y_ORDER: u8 = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: &'static str },
    #[error("word reduces to the identity or to a power of a single generator")]
    EmptyAfterReduction,
    #[error("reduced word {reduced:?} does not have the alternating x...y shape")]
    NotAlternatingReducible { reduced: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X,
    Y,
}

impl Gen {
    pub fn order(self) -> u8 {
        match self {
            Gen::X => X_ORDER,
            Gen::Y => Y_ORDER,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
        }
    }
}

/// One syllable `x^a y^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub a: u8,
    pub b: u8,
}

/// A relator word in normal alternating form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    syllables: Vec<Syllable>,
}

/// Lift of a reduced exponent to its balanced representative.
pub fn balanced_exponent(gen: Gen, e: u8) -> i32 {
    let n = gen.order() as i32;
    let e = e as i32;
    if 2 * e > n {
        e - n
    } else {
        e
    }
}

impl GroupWord {
    /// Builds a word from syllables, checking the exponent ranges.
    pub fn from_syllables(syllables: Vec<Syllable>) -> Option<Self> {
        let ok = !syllables.is_empty()
            && syllables
                .iter()
                .all(|s| (1..X_ORDER).contains(&s.a) && (1..Y_ORDER).contains(&s.b));
        ok.then_some(GroupWord { syllables })
    }

    /// Convenience constructor from `(a, b)` pairs; panics on invalid input.
    pub fn from_pairs(pairs: &[(u8, u8)]) -> Self {
        GroupWord::from_syllables(pairs.iter().map(|&(a, b)| Syllable { a, b }).collect())
            .expect("invalid syllable exponents")
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Syllable count `k`.
    pub fn k(&self) -> usize {
        self.syllables.len()
    }

    pub fn rotate(&self, by: usize) -> Self {
        let mut s = self.syllables.clone();
        let n = s.len();
        s.rotate_left(by % n);
        GroupWord { syllables: s }
    }

    /// Letters with positive exponents, `(gen, reduced exponent)`.
    pub fn letters(&self) -> impl Iterator<Item = (Gen, u8)> + '_ {
        self.syllables.iter().flat_map(|s| [(Gen::X, s.a), (Gen::Y, s.b)])
    }

    /// Letters with balanced exponents, as used for `SL(2)` evaluation.
    pub fn lifted_letters(&self) -> impl Iterator<Item = (Gen, i32)> + '_ {
        self.letters().map(|(g, e)| (g, balanced_exponent(g, e)))
    }

    /// Letters as a sequence of single generators (`x^2 -> x x`).
    pub fn expanded(&self) -> Vec<Gen> {
        self.letters()
            .flat_map(|(g, e)| core::iter::repeat_n(g, e as usize))
            .collect()
    }

    /// The inverse `W^-1` as a generator string, `y^(5-bk) x^(3-ak) ...`.
    pub fn inverse_string(&self) -> String {
        let mut pairs = Vec::with_capacity(2 * self.k());
        for s in self.syllables.iter().rev() {
            pairs.push((Gen::Y, Y_ORDER - s.b));
            pairs.push((Gen::X, X_ORDER - s.a));
        }
        render(&pairs)
    }

    /// `W^-1` in normal form: a cyclic rotation of the inverse brings it
    /// back to alternating shape. Returns the rotated word and its
    /// generator string.
    pub fn inverse(&self) -> (GroupWord, String) {
        let n = self.k();
        let mut syl = Vec::with_capacity(n);
        // y^bk' x^ak' y^b(k-1)' ... x^a1' ; conjugating by y^bk' gives
        // x^ak' y^b(k-1)' ... x^a1' y^bk'
        for i in (0..n).rev() {
            let a = X_ORDER - self.syllables[i].a;
            let b = Y_ORDER - self.syllables[(i + n - 1) % n].b;
            syl.push(Syllable { a, b });
        }
        (GroupWord { syllables: syl }, self.inverse_string())
    }

    pub fn to_pairs(&self) -> Vec<(u8, u8)> {
        self.syllables.iter().map(|s| (s.a, s.b)).collect()
    }
}

fn render(pairs: &[(Gen, u8)]) -> String {
    let mut out = String::new();
    for (i, &(g, e)) in pairs.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push(g.symbol());
        if e != 1 {
            let _ = write!(out, "^{e}");
        }
    }
    out
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(Gen, u8)> = self.letters().collect();
        f.write_str(&render(&pairs))
    }
}

impl FromStr for GroupWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Parses `word := syl+ ; syl := gen pow? ; gen := "x" | "y" ; pow := "^" "-"? digit+`,
/// whitespace ignored, then reduces to normal form.
pub fn parse_word(text: &str) -> Result<GroupWord, WordError> {
    let tokens = tokenize(text)?;
    let mut stack: Vec<(Gen, u8)> = Vec::new();
    for (g, e) in tokens {
        let e = reduce(&e, g.order());
        push_reduced(&mut stack, g, e);
    }
    if stack.len() < 2 {
        return Err(WordError::EmptyAfterReduction);
    }
    let alternating_xy = stack.first().is_some_and(|p| p.0 == Gen::X)
        && stack.last().is_some_and(|p| p.0 == Gen::Y);
    if !alternating_xy {
        return Err(WordError::NotAlternatingReducible { reduced: render(&stack) });
    }
    let syllables = stack
        .chunks_exact(2)
        .map(|c| Syllable { a: c[0].1, b: c[1].1 })
        .collect();
    Ok(GroupWord { syllables })
}

fn push_reduced(stack: &mut Vec<(Gen, u8)>, g: Gen, e: u8) {
    if e == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.0 == g => {
            let merged = (top.1 + e) % g.order();
            if merged == 0 {
                stack.pop();
            } else {
                top.1 = merged;
            }
        }
        _ => stack.push((g, e)),
    }
}

fn reduce(e: &BigInt, order: u8) -> u8 {
    e.mod_floor(&BigInt::from(order)).to_u8().unwrap_or(0)
}

fn tokenize(text: &str) -> Result<Vec<(Gen, BigInt)>, WordError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() {
            break;
        }
        let g = match bytes[i] {
            b'x' => Gen::X,
            b'y' => Gen::Y,
            _ => return Err(WordError::SyntaxError { pos: i, msg: "expected generator 'x' or 'y'" }),
        };
        i += 1;
        skip_ws(&mut i);
        let mut exp = BigInt::from(1);
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            skip_ws(&mut i);
            let neg = i < bytes.len() && bytes[i] == b'-';
            if neg {
                i += 1;
                skip_ws(&mut i);
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(WordError::SyntaxError { pos: i, msg: "expected exponent digits" });
            }
            exp = text[start..i].parse().map_err(|_| WordError::SyntaxError {
                pos: start,
                msg: "bad exponent",
            })?;
            if neg {
                exp = -exp;
            }
        }
        out.push((g, exp));
    }
    if out.is_empty() {
        return Err(WordError::EmptyAfterReduction);
    }
    Ok(out)
}

/// All words with exactly `k` syllables, in lexicographic order of
/// `(a1, b1, ..., ak, bk)`.
pub fn all_words(k: usize) -> impl Iterator<Item = GroupWord> {
    let per = ((X_ORDER - 1) * (Y_ORDER - 1)) as usize;
    let total = per.pow(k as u32);
    (0..total).map(move |mut idx| {
        let mut syl = alloc::vec![Syllable { a: 1, b: 1 }; k];
        for s in syl.iter_mut().rev() {
            let d = idx % per;
            idx /= per;
            s.a = 1 + (d / (Y_ORDER as usize - 1)) as u8;
            s.b = 1 + (d % (Y_ORDER as usize - 1)) as u8;
        }
        GroupWord { syllables: syl }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn normal_forms() {
        assert_eq!(parse_word("xy").unwrap().to_pairs(), [(1, 1)]);
        assert_eq!(parse_word("x^2 y^3 x y").unwrap().to_pairs(), [(2, 3), (1, 1)]);
        assert_eq!(parse_word("x^4 y^6").unwrap().to_pairs(), [(1, 1)]);
        assert_eq!(parse_word("xyxy").unwrap().k(), 2);
    }

    #[test]
    fn reduction_errors() {
        assert_eq!(parse_word("x^3 y"), Err(WordError::EmptyAfterReduction));
        assert_eq!(parse_word("x^3"), Err(WordError::EmptyAfterReduction));
        assert_eq!(parse_word(""), Err(WordError::EmptyAfterReduction));
        assert_eq!(parse_word("x y^5 x^2"), Err(WordError::EmptyAfterReduction));
        assert!(matches!(parse_word("yx"), Err(WordError::NotAlternatingReducible { .. })));
        assert!(matches!(parse_word("x y x"), Err(WordError::NotAlternatingReducible { .. })));
        assert!(matches!(parse_word("xz"), Err(WordError::SyntaxError { pos: 1, .. })));
        assert!(matches!(parse_word("x^"), Err(WordError::SyntaxError { .. })));
    }

    #[test]
    fn merging_cascades() {
        // x y y^4 x y -> x (y^5) x y -> x x y -> x^2 y
        assert_eq!(parse_word("x y y^4 x y").unwrap().to_pairs(), [(2, 1)]);
        // negative and huge exponents
        assert_eq!(parse_word("x^-1 y^-1").unwrap().to_pairs(), [(2, 4)]);
        assert_eq!(
            parse_word("x^100000000000000000000001 y^7").unwrap().to_pairs(),
            [(2, 2)]
        );
    }

    #[test]
    fn serialisation_round_trip() {
        let w = parse_word("x^2 y^3 x y").unwrap();
        assert_eq!(w.to_string(), "x^2 y^3 x y");
        assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn inverse_strings() {
        assert_eq!(GroupWord::from_pairs(&[(1, 1)]).inverse_string(), "y^4 x^2");
        assert_eq!(GroupWord::from_pairs(&[(2, 3)]).inverse_string(), "y^2 x");
    }

    #[test]
    fn double_inverse_is_identity() {
        let w = GroupWord::from_pairs(&[(1, 2), (2, 4)]);
        let (inv, _) = w.inverse();
        let (back, _) = inv.inverse();
        // the normal-form inverse is a rotation of the literal inverse; two
        // rotations by one syllable compose back to the original word
        assert_eq!(back, w);
        let lit = parse_word(&format_inverse_of_string(&w.inverse_string()));
        assert_eq!(lit.unwrap(), w);
    }

    // inverts a rendered generator string by reversing and negating exponents
    fn format_inverse_of_string(s: &str) -> String {
        s.split_whitespace()
            .rev()
            .map(|tok| {
                let (g, e) = tok.split_once('^').unwrap_or((tok, "1"));
                alloc::format!("{g}^-{e}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    #[test]
    fn balanced_lifts() {
        assert_eq!(balanced_exponent(Gen::X, 2), -1);
        assert_eq!(balanced_exponent(Gen::Y, 2), 2);
        assert_eq!(balanced_exponent(Gen::Y, 3), -2);
        assert_eq!(balanced_exponent(Gen::Y, 4), -1);
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(all_words(1).count(), 8);
        assert_eq!(all_words(2).count(), 64);
        let first: Vec<_> = all_words(1).map(|w| w.to_pairs()[0]).collect();
        assert_eq!(first[0], (1, 1));
        assert_eq!(first[7], (2, 4));
    }
}
