use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Dot,
    Star,
    At,
    Amp,
    Plus,
    Lolli,
    Liff,
    Arrow,
    Tilde,
    Bang,
    Quest,
    /// `/\`: a quantifier in linear text, conjunction in intuitionistic text.
    Wedge,
    /// `\/`: likewise, an existential or a disjunction.
    Vee,
    Turnstile,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
            t => format!("`{}`", t.text()),
        }
    }

    pub(crate) fn text(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::Star => "*",
            Tok::At => "@",
            Tok::Amp => "&",
            Tok::Plus => "+",
            Tok::Lolli => "-o",
            Tok::Liff => "o-o",
            Tok::Arrow => "->",
            Tok::Tilde => "~",
            Tok::Bang => "!",
            Tok::Quest => "?",
            Tok::Wedge => "/\\",
            Tok::Vee => "\\/",
            Tok::Turnstile => "|-",
            Tok::Ident(_) | Tok::Eof => "",
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Tokenizes `text`; positions are 1-based and offset by `(line0, col0)`
/// so fragments cut out of a larger file report file coordinates.
pub(crate) fn lex(text: &str, line0: usize, col0: usize) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (line0, col0);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let peek = |k: usize| chars.get(i + k).copied();
        let at = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let prev_ident = i > 0 && ident_char(chars[i - 1]);
        let (tok, len) = if c == 'o' && !prev_ident && peek(1) == Some('-') && peek(2) == Some('o') && !peek(3).is_some_and(ident_char) {
            (Tok::Liff, 3)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && ident_char(chars[j]) {
                j += 1;
            }
            (Tok::Ident(chars[i..j].iter().collect()), j - i)
        } else {
            match (c, peek(1)) {
                ('-', Some('o')) => (Tok::Lolli, 2),
                ('-', Some('>')) => (Tok::Arrow, 2),
                ('/', Some('\\')) => (Tok::Wedge, 2),
                ('\\', Some('/')) => (Tok::Vee, 2),
                ('|', Some('-')) => (Tok::Turnstile, 2),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('[', _) => (Tok::LBracket, 1),
                (']', _) => (Tok::RBracket, 1),
                (',', _) => (Tok::Comma, 1),
                (':', _) => (Tok::Colon, 1),
                ('.', _) => (Tok::Dot, 1),
                ('*', _) => (Tok::Star, 1),
                ('@', _) => (Tok::At, 1),
                ('&', _) => (Tok::Amp, 1),
                ('+', _) => (Tok::Plus, 1),
                ('~', _) => (Tok::Tilde, 1),
                ('!', _) => (Tok::Bang, 1),
                ('?', _) => (Tok::Quest, 1),
                _ => return Err(SyntaxError::Parse { line: at.0, col: at.1, msg: format!("unexpected character `{c}`") }),
            }
        };
        out.push(Spanned { tok, line: at.0, col: at.1 });
        i += len;
        col += len;
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}
