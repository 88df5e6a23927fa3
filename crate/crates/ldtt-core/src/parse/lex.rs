//! Lexer for the surface language.

use thiserror::Error;

use super::ast::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    // keywords
    Def,
    CheckEq,
    Pragma,
    Let,
    Be,
    In,
    Case,
    Of,
    As,
    Keep,
    Lam,
    Clam,
    Llam,
    Cap,
    Sub,
    PiKw,
    SgKw,
    UnivU,
    UnivL,
    El,
    Lt,
    Mt,
    Lift,
    Sig,
    Unsig,
    Pr1,
    Pr2,
    Fst,
    Snd,
    Inl,
    Inr,
    Refl,
    UnitTm,
    TopTm,
    Abort,
    UnitTy,
    TopTy,
    ZeroTy,
    IdKw,
    J1,
    J2,
    Split1,
    Split2,
    Ua,
    // symbols
    LParen,
    RParen,
    LAngle,
    RAngle,
    LBrack,
    RBrack,
    Dot,
    Comma,
    Semi,
    Colon,
    ColonEq,
    EqEq,
    Arrow,
    LolliSym,
    Star,
    Amp,
    PlusSym,
    Pipe,
    FatArrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            other => format!("`{}`", other.text()),
        }
    }

    pub fn text(&self) -> &'static str {
        use Tok::*;
        match self {
            Ident(_) => "<ident>",
            Def => "def",
            CheckEq => "checkeq",
            Pragma => "pragma",
            Let => "let",
            Be => "be",
            In => "in",
            Case => "case",
            Of => "of",
            As => "as",
            Keep => "keep",
            Lam => "lam",
            Clam => "clam",
            Llam => "llam",
            Cap => "cap",
            Sub => "sub",
            PiKw => "Pi",
            SgKw => "Sg",
            UnivU => "U",
            UnivL => "L",
            El => "El",
            Lt => "Lt",
            Mt => "Mt",
            Lift => "lift",
            Sig => "sig",
            Unsig => "unsig",
            Pr1 => "pr1",
            Pr2 => "pr2",
            Fst => "fst",
            Snd => "snd",
            Inl => "inl",
            Inr => "inr",
            Refl => "refl",
            UnitTm => "unit",
            TopTm => "top",
            Abort => "abort",
            UnitTy => "Unit",
            TopTy => "Top",
            ZeroTy => "Zero",
            IdKw => "Id",
            J1 => "J1",
            J2 => "J2",
            Split1 => "split1",
            Split2 => "split2",
            Ua => "ua",
            LParen => "(",
            RParen => ")",
            LAngle => "<",
            RAngle => ">",
            LBrack => "[",
            RBrack => "]",
            Dot => ".",
            Comma => ",",
            Semi => ";",
            Colon => ":",
            ColonEq => ":=",
            EqEq => "==",
            Arrow => "->",
            LolliSym => "-o",
            Star => "*",
            Amp => "&",
            PlusSym => "(+)",
            Pipe => "|",
            FatArrow => "=>",
            Eof => "<eof>",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("lex error at line {}, column {}: {msg}", span.line, span.col)]
pub struct LexError {
    pub span: SourceSpan,
    pub msg: String,
}

pub struct Lexed {
    pub toks: Vec<(Tok, SourceSpan)>,
}

fn keyword(s: &str) -> Option<Tok> {
    use Tok::*;
    Some(match s {
        "def" => Def,
        "checkeq" => CheckEq,
        "pragma" => Pragma,
        "let" => Let,
        "be" => Be,
        "in" => In,
        "case" => Case,
        "of" => Of,
        "as" => As,
        "keep" => Keep,
        "lam" => Lam,
        "clam" => Clam,
        "llam" => Llam,
        "cap" => Cap,
        "sub" => Sub,
        "Pi" => PiKw,
        "Sg" => SgKw,
        "U" => UnivU,
        "L" => UnivL,
        "El" => El,
        "Lt" => Lt,
        "Mt" => Mt,
        "lift" => Lift,
        "sig" => Sig,
        "unsig" => Unsig,
        "pr1" => Pr1,
        "pr2" => Pr2,
        "fst" => Fst,
        "snd" => Snd,
        "inl" => Inl,
        "inr" => Inr,
        "refl" => Refl,
        "unit" => UnitTm,
        "top" => TopTm,
        "abort" => Abort,
        "Unit" => UnitTy,
        "Top" => TopTy,
        "Zero" => ZeroTy,
        "Id" => IdKw,
        "J1" => J1,
        "J2" => J2,
        "split1" => Split1,
        "split2" => Split2,
        "ua" => Ua,
        _ => return None,
    })
}

pub fn lex(src: &str) -> Result<Lexed, LexError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let n = bytes.len();
    macro_rules! span {
        ($start:expr, $len:expr, $l:expr, $c:expr) => {
            SourceSpan { start: $start, end: $start + $len, line: $l, col: $c }
        };
    }
    while i < n {
        let c = bytes[i] as char;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && i + 1 < n && bytes[i + 1] == b'-' {
            while i < n && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let (l0, c0, start) = (line, col, i);
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < n && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            let word = &src[i..j];
            let tok = keyword(word).unwrap_or_else(|| Tok::Ident(word.to_string()));
            toks.push((tok, span!(start, j - i, l0, c0)));
            col += (j - i) as u32;
            i = j;
            continue;
        }
        let two = if i + 1 < n { &src[i..i + 2] } else { "" };
        let three = if i + 2 < n { &src[i..i + 3] } else { "" };
        let (tok, len) = match (c, two, three) {
            (_, _, "(+)") => (Tok::PlusSym, 3),
            (_, ":=", _) => (Tok::ColonEq, 2),
            (_, "==", _) => (Tok::EqEq, 2),
            (_, "->", _) => (Tok::Arrow, 2),
            (_, "-o", _) => (Tok::LolliSym, 2),
            (_, "=>", _) => (Tok::FatArrow, 2),
            ('(', _, _) => (Tok::LParen, 1),
            (')', _, _) => (Tok::RParen, 1),
            ('<', _, _) => (Tok::LAngle, 1),
            ('>', _, _) => (Tok::RAngle, 1),
            ('[', _, _) => (Tok::LBrack, 1),
            (']', _, _) => (Tok::RBrack, 1),
            ('.', _, _) => (Tok::Dot, 1),
            (',', _, _) => (Tok::Comma, 1),
            (';', _, _) => (Tok::Semi, 1),
            (':', _, _) => (Tok::Colon, 1),
            ('*', _, _) => (Tok::Star, 1),
            ('&', _, _) => (Tok::Amp, 1),
            ('|', _, _) => (Tok::Pipe, 1),
            other => {
                return Err(LexError {
                    span: span!(start, 1, l0, c0),
                    msg: format!("unexpected character `{}`", other.0),
                })
            }
        };
        toks.push((tok, span!(start, len, l0, c0)));
        i += len;
        col += len as u32;
    }
    toks.push((Tok::Eof, span!(n, 0, line, col)));
    Ok(Lexed { toks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_symbols_and_keywords() {
        let l = lex("def f : A -o B := x ; -- comment\n(+)").unwrap();
        let kinds: Vec<&Tok> = l.toks.iter().map(|(t, _)| t).collect();
        assert!(matches!(kinds[0], Tok::Def));
        assert!(matches!(kinds[3], Tok::Ident(s) if s == "A"));
        assert!(matches!(kinds[4], Tok::LolliSym));
        assert!(matches!(kinds[8], Tok::Semi));
        assert!(matches!(kinds[9], Tok::PlusSym));
    }

    #[test]
    fn spans_point_into_source() {
        let src = "def f : U := x ;";
        let l = lex(src).unwrap();
        for (t, s) in &l.toks {
            if *t != Tok::Eof {
                assert!(s.start < s.end && s.end <= src.len());
            }
        }
    }
}
