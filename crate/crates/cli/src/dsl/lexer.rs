use super::{DslError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Str(String),
    Punct(&'static str),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Str(s) => format!("{s:?}"),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

const PUNCT: [&str; 13] = ["->", "=>", "{", "}", "(", ")", "[", "]", ":", ";", ",", ".", "="];

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits the input into tokens with their starting positions. `#` starts a
/// comment running to the end of the line.
pub fn lex(text: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let span = Span { line, col };
        if c.is_whitespace() {
            bump!();
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump!();
            }
        } else if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match bump!() {
                    None | Some('\n') => {
                        return Err(DslError::Syntax {
                            line: span.line,
                            col: span.col,
                            expected: vec!["closing `\"`".into()],
                            found: "end of line".into(),
                        })
                    }
                    Some('"') => break,
                    Some('\\') => match bump!() {
                        Some(e @ ('"' | '\\')) => s.push(e),
                        other => {
                            return Err(DslError::Syntax {
                                line,
                                col: col - 1,
                                expected: vec!["`\\\"` or `\\\\`".into()],
                                found: other.map_or("end of input".into(), |c| format!("`\\{c}`")),
                            })
                        }
                    },
                    Some(c) => s.push(c),
                }
            }
            out.push((Tok::Str(s), span));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump!().unwrap());
            }
            if chars.peek().is_some_and(|&c| is_ident_start(c)) {
                // names such as `2a` are allowed
                while chars.peek().is_some_and(|&c| is_ident_char(c)) {
                    s.push(bump!().unwrap());
                }
                out.push((Tok::Ident(s), span));
            } else {
                let n = s.parse().map_err(|_| DslError::Syntax {
                    line: span.line,
                    col: span.col,
                    expected: vec!["a number that fits in 64 bits".into()],
                    found: format!("`{s}`"),
                })?;
                out.push((Tok::Int(n), span));
            }
        } else if is_ident_start(c) {
            let mut s = String::new();
            while chars.peek().is_some_and(|&c| is_ident_char(c)) {
                s.push(bump!().unwrap());
            }
            out.push((Tok::Ident(s), span));
        } else {
            let rest: String = chars.clone().take(2).collect();
            let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) else {
                return Err(DslError::Syntax {
                    line,
                    col,
                    expected: vec!["a name, number or punctuation".into()],
                    found: format!("`{c}`"),
                });
            };
            for _ in 0..p.len() {
                bump!();
            }
            out.push((Tok::Punct(p), span));
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn arrows_and_names() {
        assert_eq!(
            toks("mor f: a -> b; # tail\n"),
            [
                Tok::Ident("mor".into()),
                Tok::Ident("f".into()),
                Tok::Punct(":"),
                Tok::Ident("a".into()),
                Tok::Punct("->"),
                Tok::Ident("b".into()),
                Tok::Punct(";"),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn quoted_labels_and_numbers() {
        assert_eq!(
            toks(r#""<1>" 12 "a\"b" 2x"#),
            [
                Tok::Str("<1>".into()),
                Tok::Int(12),
                Tok::Str("a\"b".into()),
                Tok::Ident("2x".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_count_lines_and_columns() {
        let t = lex("a\n  b").unwrap();
        assert_eq!(t[1].1, Span { line: 2, col: 3 });
    }

    #[test]
    fn stray_characters_are_reported() {
        let e = lex("a @").unwrap_err();
        assert!(matches!(e, DslError::Syntax { line: 1, col: 3, .. }));
        assert!(lex("\"open").is_err());
    }
}
