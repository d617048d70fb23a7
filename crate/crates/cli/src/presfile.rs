//! Plain-text presentation files.
//!
//! ```text
//! # torus
//! generators a b
//! relator a b a^-1 b^-1
//! relator from_W2_square: a^2
//! ```
//!
//! `generators` comes first and lists names, or gives a count `N` meaning
//! `g1 .. gN`. Each `relator` line holds one word; tokens are generator names
//! with an optional integer exponent `^e`. An optional provenance label
//! (`from_x3`, `from_y5`, `from_W2_pair`, `from_W2_square`, `given`) precedes
//! a colon. Text after `#` is ignored.

use std::fmt::Write;

use tracelab_core::subgroups::{Presentation, Provenance, Relator};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct PresentationFileError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPresentation {
    pub names: Vec<String>,
    pub presentation: Presentation,
}

fn err(line: usize, msg: impl Into<String>) -> PresentationFileError {
    PresentationFileError { line, msg: msg.into() }
}

fn valid_name(s: &str) -> bool {
    let mut ch = s.chars();
    ch.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_presentation(text: &str) -> Result<NamedPresentation, PresentationFileError> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (directive, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match directive {
            "generators" => {
                if names.is_some() {
                    return Err(err(line_no, "duplicate generators line"));
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let list = match toks.as_slice() {
                    [n] if n.chars().all(|c| c.is_ascii_digit()) => {
                        let n: usize = n.parse().map_err(|_| err(line_no, "bad generator count"))?;
                        (1..=n).map(|k| format!("g{k}")).collect()
                    }
                    _ => {
                        let list: Vec<String> = toks.iter().map(|s| s.to_string()).collect();
                        if let Some(bad) = list.iter().find(|s| !valid_name(s)) {
                            return Err(err(line_no, format!("invalid generator name '{bad}'")));
                        }
                        for (j, a) in list.iter().enumerate() {
                            if list[..j].contains(a) {
                                return Err(err(line_no, format!("generator '{a}' listed twice")));
                            }
                        }
                        list
                    }
                };
                names = Some(list);
            }
            "relator" | "relator:" => {
                let names = names.as_ref().ok_or_else(|| err(line_no, "relator before generators"))?;
                let rest = if directive == "relator:" { rest } else { rest.trim_start() };
                let (label, body) = match rest.split_once(':') {
                    Some((l, b)) => {
                        let l = l.trim();
                        let p = if l.is_empty() {
                            Provenance::Given
                        } else {
                            Provenance::from_name(l).ok_or_else(|| err(line_no, format!("unknown label '{l}'")))?
                        };
                        (p, b)
                    }
                    None => (Provenance::Given, rest),
                };
                let mut word = Vec::new();
                for tok in body.split_whitespace() {
                    let (name, exp) = match tok.split_once('^') {
                        Some((n, e)) => {
                            (n, e.parse::<i32>().map_err(|_| err(line_no, format!("bad exponent in '{tok}'")))?)
                        }
                        None => (tok, 1),
                    };
                    let g = names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| err(line_no, format!("unknown generator '{name}'")))?;
                    let letter = g as i32 + 1;
                    for _ in 0..exp.unsigned_abs() {
                        word.push(if exp > 0 { letter } else { -letter });
                    }
                }
                relators.push(Relator { word, provenance: label });
            }
            other => return Err(err(line_no, format!("unknown directive '{other}'"))),
        }
    }
    let names = names.ok_or_else(|| err(0, "missing generators line"))?;
    let presentation = Presentation { generators: names.len(), relators, square_roots: Vec::new(), conjugator: None };
    Ok(NamedPresentation { names, presentation })
}

/// Writes `p` in the file format, naming generators `g1 .. gN`.
pub fn write_presentation(p: &Presentation, header: &str) -> String {
    let mut out = String::new();
    for line in header.lines() {
        let _ = writeln!(out, "# {line}");
    }
    let names: Vec<String> = (1..=p.generators).map(|k| format!("g{k}")).collect();
    let _ = writeln!(out, "generators {}", names.join(" "));
    for r in &p.relators {
        let word: Vec<String> = r
            .word
            .iter()
            .map(|&l| {
                let n = &names[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    n.clone()
                } else {
                    format!("{n}^-1")
                }
            })
            .collect();
        if r.provenance == Provenance::Given {
            let _ = writeln!(out, "relator {}", word.join(" "));
        } else {
            let _ = writeln!(out, "relator {}: {}", r.provenance.name(), word.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_torus() {
        let p = parse_presentation("# torus\ngenerators a b\nrelator a b a^-1 b^-1\n").unwrap();
        assert_eq!(p.names, vec!["a", "b"]);
        assert_eq!(p.presentation.relators[0].word, vec![1, 2, -1, -2]);
    }

    #[test]
    fn labels_counts_and_exponents() {
        let p = parse_presentation("generators 3\nrelator from_W2_square: g1^2 g3^-2\n").unwrap();
        assert_eq!(p.presentation.generators, 3);
        assert_eq!(p.presentation.relators[0].word, vec![1, 1, -3, -3]);
        assert_eq!(p.presentation.relators[0].provenance, Provenance::FromW2Square);
    }

    #[test]
    fn round_trip() {
        let src = "generators 2\nrelator from_x3: g1 g2^-1\nrelator g2 g2\n";
        let p = parse_presentation(src).unwrap();
        let text = write_presentation(&p.presentation, "x");
        let q = parse_presentation(&text).unwrap();
        assert_eq!(p.presentation, q.presentation);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_presentation("relator a").unwrap_err().line, 1);
        assert_eq!(parse_presentation("generators a\n\nrelator b").unwrap_err().line, 3);
        assert_eq!(parse_presentation("generators a\nrelator a^x").unwrap_err().line, 2);
        assert!(parse_presentation("generators a a").is_err());
        assert!(parse_presentation("# nothing").is_err());
        assert!(parse_presentation("generators a\nrelator bogus: a").is_err());
    }
}
