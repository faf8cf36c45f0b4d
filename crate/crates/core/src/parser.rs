//! Recursive-descent parser for the term DSL.
//!
//! ```text
//! term    := factor (";" factor)*
//! factor  := atom ("*" atom)*
//! atom    := NAME | "id[" word "]" | "swap[" sword "," sword "]" | "(" term ")"
//! word    := "1" | NAME ("," NAME)* | "(" word ")"
//! sword   := "1" | NAME | "(" word ")"
//! ```
//!
//! `;` composes left to right and binds looser than `*`. Both are
//! left-associative. Whitespace is insignificant.

use crate::error::{Error, Result};
use crate::term::{ObjectWord, Term};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    One,
    Semi,
    Star,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name `{n}`"),
            Tok::One => "`1`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let single = match c {
            b';' => Some(Tok::Semi),
            b'*' => Some(Tok::Star),
            b',' => Some(Tok::Comma),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(t) = single {
            toks.push((t, i));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            toks.push((Tok::Name(text[start..i].to_owned()), start));
        } else if c == b'1' && !bytes.get(i + 1).is_some_and(u8::is_ascii_alphanumeric) {
            toks.push((Tok::One, i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::Lex {
                offset: i,
                message: format!("unexpected character {ch:?}"),
            });
        }
    }
    toks.push((Tok::Eof, text.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Parse {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.describe()]))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.factor()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            t = t.then(self.factor()?);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = t.tensor(self.atom()?);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Name(n) if n == "id" => {
                self.bump();
                self.expect(Tok::LBracket)?;
                let w = self.word()?;
                self.expect(Tok::RBracket)?;
                Ok(Term::Id(w))
            }
            Tok::Name(n) if n == "swap" => {
                self.bump();
                self.expect(Tok::LBracket)?;
                let x = self.swap_word()?;
                self.expect(Tok::Comma)?;
                let y = self.swap_word()?;
                self.expect(Tok::RBracket)?;
                Ok(Term::Swap(x, y))
            }
            Tok::Name(n) => {
                self.bump();
                Ok(Term::Gen(n))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.error(&["generator name", "`id[`", "`swap[`", "`(`"])),
        }
    }

    fn word(&mut self) -> Result<ObjectWord> {
        match self.peek().clone() {
            Tok::One => {
                self.bump();
                Ok(ObjectWord::unit())
            }
            Tok::LParen => {
                self.bump();
                let w = self.word()?;
                self.expect(Tok::RParen)?;
                Ok(w)
            }
            Tok::Name(first) => {
                self.bump();
                let mut labels = vec![first];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    match self.bump() {
                        Tok::Name(n) => labels.push(n),
                        _ => {
                            self.pos -= 1;
                            return Err(self.error(&["object name"]));
                        }
                    }
                }
                Ok(ObjectWord(labels))
            }
            _ => Err(self.error(&["`1`", "object name", "`(`"])),
        }
    }

    fn swap_word(&mut self) -> Result<ObjectWord> {
        match self.peek().clone() {
            Tok::One => {
                self.bump();
                Ok(ObjectWord::unit())
            }
            Tok::Name(n) => {
                self.bump();
                Ok(ObjectWord(vec![n]))
            }
            Tok::LParen => {
                self.bump();
                let w = self.word()?;
                self.expect(Tok::RParen)?;
                Ok(w)
            }
            _ => Err(self.error(&["`1`", "object name", "`(`"])),
        }
    }
}

/// Parse DSL text into an (unchecked) term.
pub fn parse(text: &str) -> Result<Term> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`;`", "`*`", "end of input"]));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::ObjectWord;
    use proptest::prelude::*;

    fn s1() -> ObjectWord {
        ObjectWord::single("S1")
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse("cap ; copants").unwrap(),
            Term::gen("cap").then(Term::gen("copants"))
        );
        assert_eq!(
            parse("(id[S1] * cap) ; pants").unwrap(),
            Term::id(["S1"])
                .tensor(Term::gen("cap"))
                .then(Term::gen("pants"))
        );
        assert_eq!(
            parse("swap[S1,S1] ; pants").unwrap(),
            Term::swap(s1(), s1()).then(Term::gen("pants"))
        );
    }

    #[test]
    fn star_binds_tighter_than_semicolon() {
        assert_eq!(
            parse("a * b ; c").unwrap(),
            Term::gen("a").tensor(Term::gen("b")).then(Term::gen("c"))
        );
        assert_eq!(
            parse("a ; b * c").unwrap(),
            Term::gen("a").then(Term::gen("b").tensor(Term::gen("c")))
        );
        assert_eq!(
            parse("a;b;c").unwrap(),
            Term::gen("a").then(Term::gen("b")).then(Term::gen("c"))
        );
    }

    #[test]
    fn words() {
        assert_eq!(parse("id[1]").unwrap(), Term::Id(ObjectWord::unit()));
        assert_eq!(parse("id[a, b]").unwrap(), Term::id(["a", "b"]));
        assert_eq!(parse("id[(a,b)]").unwrap(), Term::id(["a", "b"]));
        assert_eq!(
            parse("swap[(a,b),1]").unwrap(),
            Term::swap(ObjectWord::new(["a", "b"]), ObjectWord::unit())
        );
    }

    #[test]
    fn lex_error_has_offset() {
        assert_eq!(
            parse("cap ; $").unwrap_err(),
            Error::Lex {
                offset: 6,
                message: "unexpected character '$'".into()
            }
        );
        assert!(matches!(parse("2"), Err(Error::Lex { offset: 0, .. })));
    }

    #[test]
    fn parse_error_has_expected_set() {
        match parse("cap ; ").unwrap_err() {
            Error::Parse {
                offset,
                expected,
                found,
            } => {
                assert_eq!(offset, 6);
                assert!(expected.contains(&"`(`".to_string()));
                assert_eq!(found, "end of input");
            }
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(parse("(cap"), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(
            parse("cap cup"),
            Err(Error::Parse { offset: 4, .. })
        ));
        assert!(matches!(
            parse("swap[a,b,c]"),
            Err(Error::Parse { offset: 8, .. })
        ));
        assert!(matches!(
            parse("id[a,]"),
            Err(Error::Parse { offset: 5, .. })
        ));
    }

    fn label() -> impl Strategy<Value = String> {
        prop_oneof![
            Just("a".to_owned()),
            Just("S1".to_owned()),
            Just("x_2".to_owned())
        ]
    }

    fn word() -> impl Strategy<Value = ObjectWord> {
        proptest::collection::vec(label(), 0..4).prop_map(ObjectWord)
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            prop_oneof![Just("pants"), Just("cap"), Just("f1")].prop_map(Term::gen),
            word().prop_map(Term::Id),
            (word(), word()).prop_map(|(x, y)| Term::Swap(x, y)),
        ];
        leaf.prop_recursive(5, 64, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.then(b)),
                (inner.clone(), inner).prop_map(|(a, b)| a.tensor(b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_round_trips(t in arb_term()) {
            prop_assert_eq!(parse(&t.render()).unwrap(), t);
        }
    }
}
