//! Recursive descent parser. Deterministic: applications bind tightest,
//! then `*`, then `&` and `(+)`, then `-o` and `->` (right associative);
//! binder and let forms extend as far right as possible.

use thiserror::Error;

use super::ast::*;
use super::lex::{lex, LexError, Tok};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {}, column {}: expected {expected}, found {found}", span.line, span.col)]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("{0}")]
    Lex(#[from] LexError),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

pub fn parse(src: &str) -> Result<Vec<SurfaceDecl>, SyntaxError> {
    let lexed = lex(src)?;
    let mut p = Parser { toks: lexed.toks, pos: 0 };
    let mut decls = Vec::new();
    while !p.at(&Tok::Eof) {
        decls.push(p.decl()?);
    }
    Ok(decls)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let r = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        r
    }

    fn expect(&mut self, t: &Tok) -> Result<SourceSpan, ParseError> {
        if self.at(t) {
            Ok(self.bump().1)
        } else {
            Err(self.err(&t.describe()))
        }
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError {
            span: self.span(),
            expected: expected.to_string(),
            found: self.peek().describe(),
        }
    }

    fn ident(&mut self) -> Result<(String, SourceSpan), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().1;
                Ok((s, sp))
            }
            _ => Err(self.err("identifier")),
        }
    }

    // ------------------------------------------------------------------
    // declarations
    // ------------------------------------------------------------------

    fn decl(&mut self) -> Result<SurfaceDecl, ParseError> {
        let start = self.span();
        match self.peek() {
            Tok::Def => {
                self.bump();
                let (name, _) = self.ident()?;
                let params = self.tele()?;
                self.expect(&Tok::Colon)?;
                let ty = self.expr()?;
                let body = if self.at(&Tok::ColonEq) {
                    self.bump();
                    Some(self.expr()?)
                } else {
                    None
                };
                let end = self.expect(&Tok::Semi)?;
                let kind = if body.is_some() { DeclKind::Def } else { DeclKind::Check };
                Ok(SurfaceDecl {
                    kind,
                    name,
                    params,
                    ty: Some(ty),
                    body,
                    rhs: None,
                    span: start.join(end),
                })
            }
            Tok::CheckEq => {
                self.bump();
                let params = self.tele()?;
                let lhs = self.expr()?;
                self.expect(&Tok::EqEq)?;
                let rhs = self.expr()?;
                self.expect(&Tok::Colon)?;
                let ty = self.expr()?;
                let end = self.expect(&Tok::Semi)?;
                Ok(SurfaceDecl {
                    kind: DeclKind::EqCheck,
                    name: String::new(),
                    params,
                    ty: Some(ty),
                    body: Some(lhs),
                    rhs: Some(rhs),
                    span: start.join(end),
                })
            }
            Tok::Pragma => {
                self.bump();
                let (name, _) = self.ident()?;
                let end = self.expect(&Tok::Semi)?;
                Ok(SurfaceDecl {
                    kind: DeclKind::Flag,
                    name,
                    params: vec![],
                    ty: None,
                    body: None,
                    rhs: None,
                    span: start.join(end),
                })
            }
            _ => Err(self.err("`def`, `checkeq` or `pragma`")),
        }
    }

    /// A telescope group starts with `(` followed by identifiers and `:`,
    /// or directly by `;` for an empty cartesian part.
    fn starts_tele_group(&self) -> bool {
        if !self.at(&Tok::LParen) {
            return false;
        }
        if matches!(self.peek_at(1), Tok::Semi) {
            return true;
        }
        let mut k = 1;
        while matches!(self.peek_at(k), Tok::Ident(_)) {
            k += 1;
        }
        k > 1 && matches!(self.peek_at(k), Tok::Colon)
    }

    fn tele(&mut self) -> Result<Vec<TeleBind>, ParseError> {
        let mut binds = Vec::new();
        while self.starts_tele_group() {
            self.expect(&Tok::LParen)?;
            let mut linear = false;
            loop {
                if self.at(&Tok::RParen) {
                    break;
                }
                if self.at(&Tok::Semi) {
                    self.bump();
                    linear = true;
                    continue;
                }
                let start = self.span();
                let mut names = vec![self.ident()?.0];
                while matches!(self.peek(), Tok::Ident(_)) {
                    names.push(self.ident()?.0);
                }
                self.expect(&Tok::Colon)?;
                let ty = self.expr()?;
                let span = start.join(self.span());
                binds.push(TeleBind { names, ty, linear, span });
                if self.at(&Tok::Comma) {
                    self.bump();
                }
            }
            self.expect(&Tok::RParen)?;
        }
        Ok(binds)
    }

    // ------------------------------------------------------------------
    // expressions
    // ------------------------------------------------------------------

    pub fn expr(&mut self) -> Result<SExpr, ParseError> {
        match self.peek() {
            Tok::Lam | Tok::Clam | Tok::Llam | Tok::Cap | Tok::Sub | Tok::PiKw | Tok::SgKw => {
                self.binder()
            }
            Tok::Let => self.let_form(),
            Tok::Case => self.case_form(),
            Tok::Split1 | Tok::Split2 => self.split_form(),
            Tok::J1 | Tok::J2 => self.j_form(),
            _ => self.arrow_level(),
        }
    }

    fn binder(&mut self) -> Result<SExpr, ParseError> {
        let start = self.span();
        let kind = match self.bump().0 {
            Tok::Lam => BinderKind::Lam,
            Tok::Clam => BinderKind::Clam,
            Tok::Llam => BinderKind::Llam,
            Tok::Cap => BinderKind::Cap,
            Tok::Sub => BinderKind::Sub,
            Tok::PiKw => BinderKind::Pi,
            Tok::SgKw => BinderKind::Sg,
            _ => unreachable!(),
        };
        self.expect(&Tok::LParen)?;
        let mut names = vec![self.ident()?.0];
        while matches!(self.peek(), Tok::Ident(_)) {
            names.push(self.ident()?.0);
        }
        self.expect(&Tok::Colon)?;
        let ann = self.expr()?;
        self.expect(&Tok::RParen)?;
        self.expect(&Tok::Dot)?;
        let body = self.expr()?;
        let span = start.join(body.span);
        Ok(SExpr {
            node: SNode::Binder { kind, names, ann: ann.boxed(), body: body.boxed() },
            span,
        })
    }

    fn let_form(&mut self) -> Result<SExpr, ParseError> {
        let start = self.span();
        self.expect(&Tok::Let)?;
        // let * be e in t | let x be e in t | let x * y be e in t
        // | let x , y be e in t
        if self.at(&Tok::Star) {
            self.bump();
            self.expect(&Tok::Be)?;
            let scrut = self.expr()?;
            self.expect(&Tok::In)?;
            let body = self.expr()?;
            let span = start.join(body.span);
            return Ok(SExpr {
                node: SNode::LetUnit { scrut: scrut.boxed(), body: body.boxed() },
                span,
            });
        }
        let (x, _) = self.ident()?;
        match self.peek().clone() {
            Tok::Be => {
                self.bump();
                let scrut = self.expr()?;
                self.expect(&Tok::In)?;
                let body = self.expr()?;
                let span = start.join(body.span);
                Ok(SExpr {
                    node: SNode::LetL { name: x, scrut: scrut.boxed(), body: body.boxed() },
                    span,
                })
            }
            Tok::Star | Tok::Comma => {
                let tensor = self.bump().0 == Tok::Star;
                let (y, _) = self.ident()?;
                self.expect(&Tok::Be)?;
                let scrut = self.expr()?;
                self.expect(&Tok::In)?;
                let body = self.expr()?;
                let span = start.join(body.span);
                let node = if tensor {
                    SNode::LetTen { x, y, scrut: scrut.boxed(), body: body.boxed() }
                } else {
                    SNode::LetSub { x, y, scrut: scrut.boxed(), body: body.boxed() }
                };
                Ok(SExpr { node, span })
            }
            _ => Err(self.err("`be`, `*` or `,`")),
        }
    }

    fn case_form(&mut self) -> Result<SExpr, ParseError> {
        let start = self.span();
        self.expect(&Tok::Case)?;
        let scrut = self.expr()?;
        self.expect(&Tok::Of)?;
        self.expect(&Tok::Inl)?;
        let (ln, _) = self.ident()?;
        self.expect(&Tok::FatArrow)?;
        let left = self.expr()?;
        self.expect(&Tok::Pipe)?;
        self.expect(&Tok::Inr)?;
        let (rn, _) = self.ident()?;
        self.expect(&Tok::FatArrow)?;
        let right = self.expr()?;
        let span = start.join(right.span);
        Ok(SExpr {
            node: SNode::Case {
                scrut: scrut.boxed(),
                left_name: ln,
                left: left.boxed(),
                right_name: rn,
                right: right.boxed(),
            },
            span,
        })
    }

    fn keep_clause(&mut self) -> Result<Vec<(String, SExpr)>, ParseError> {
        if !self.at(&Tok::Keep) {
            return Ok(vec![]);
        }
        self.bump();
        self.expect(&Tok::LBrack)?;
        let mut out = Vec::new();
        while !self.at(&Tok::RBrack) {
            let (name, _) = self.ident()?;
            self.expect(&Tok::Colon)?;
            let ty = self.expr()?;
            out.push((name, ty));
            if self.at(&Tok::Comma) {
                self.bump();
            }
        }
        self.expect(&Tok::RBrack)?;
        Ok(out)
    }

    fn split_form(&mut self) -> Result<SExpr, ParseError> {
        let start = self.span();
        let linear = self.bump().0 == Tok::Split2;
        let scrut = self.app_atom()?;
        self.expect(&Tok::As)?;
        let (mname, _) = self.ident()?;
        self.expect(&Tok::Dot)?;
        let motive = self.expr()?;
        let keep = self.keep_clause()?;
        self.expect(&Tok::In)?;
        let (x, _) = self.ident()?;
        let (y, _) = self.ident()?;
        self.expect(&Tok::Dot)?;
        let branch = self.expr()?;
        let span = start.join(branch.span);
        Ok(SExpr {
            node: SNode::Split {
                linear,
                scrut: scrut.boxed(),
                motive_name: mname,
                motive: motive.boxed(),
                keep,
                x,
                y,
                branch: branch.boxed(),
            },
            span,
        })
    }

    fn j_form(&mut self) -> Result<SExpr, ParseError> {
        let start = self.span();
        let linear = self.bump().0 == Tok::J2;
        let proof = self.app_atom()?;
        self.expect(&Tok::As)?;
        let (x, _) = self.ident()?;
        let (y, _) = self.ident()?;
        let (p, _) = self.ident()?;
        self.expect(&Tok::Dot)?;
        let motive = self.expr()?;
        let keep = self.keep_clause()?;
        self.expect(&Tok::In)?;
        let (z, _) = self.ident()?;
        self.expect(&Tok::Dot)?;
        let branch = self.expr()?;
        let span = start.join(branch.span);
        Ok(SExpr {
            node: SNode::JElim {
                linear,
                proof: proof.boxed(),
                xyp: (x, y, p),
                motive: motive.boxed(),
                keep,
                z,
                branch: branch.boxed(),
            },
            span,
        })
    }

    fn arrow_level(&mut self) -> Result<SExpr, ParseError> {
        // dependent arrow: ( x .. : A ) -> B
        if self.starts_dep_arrow() {
            let start = self.span();
            self.expect(&Tok::LParen)?;
            let mut names = vec![self.ident()?.0];
            while matches!(self.peek(), Tok::Ident(_)) {
                names.push(self.ident()?.0);
            }
            self.expect(&Tok::Colon)?;
            let ann = self.expr()?;
            self.expect(&Tok::RParen)?;
            self.expect(&Tok::Arrow)?;
            let body = self.arrow_level()?;
            let span = start.join(body.span);
            return Ok(SExpr {
                node: SNode::Binder {
                    kind: BinderKind::Pi,
                    names,
                    ann: ann.boxed(),
                    body: body.boxed(),
                },
                span,
            });
        }
        let lhs = self.additive_level()?;
        match self.peek() {
            Tok::Arrow => {
                self.bump();
                let rhs = self.arrow_level()?;
                let span = lhs.span.join(rhs.span);
                Ok(SExpr { node: SNode::Arrow(lhs.boxed(), rhs.boxed()), span })
            }
            Tok::LolliSym => {
                self.bump();
                let rhs = self.arrow_level()?;
                let span = lhs.span.join(rhs.span);
                Ok(SExpr { node: SNode::Lolli(lhs.boxed(), rhs.boxed()), span })
            }
            _ => Ok(lhs),
        }
    }

    fn starts_dep_arrow(&self) -> bool {
        if !self.at(&Tok::LParen) {
            return false;
        }
        let mut k = 1;
        while matches!(self.peek_at(k), Tok::Ident(_)) {
            k += 1;
        }
        // a parenthesized binder group followed by an arrow
        if k == 1 || !matches!(self.peek_at(k), Tok::Colon) {
            return false;
        }
        // scan to the matching close paren
        let mut depth = 1;
        let mut j = k + 1;
        loop {
            match self.peek_at(j) {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                Tok::Eof => return false,
                _ => {}
            }
            j += 1;
        }
        matches!(self.peek_at(j + 1), Tok::Arrow)
    }

    fn additive_level(&mut self) -> Result<SExpr, ParseError> {
        let mut lhs = self.tensor_level()?;
        loop {
            let node = match self.peek() {
                Tok::Amp => SNode::WithTy as fn(_, _) -> _,
                Tok::PlusSym => SNode::PlusTy as fn(_, _) -> _,
                _ => break,
            };
            self.bump();
            let rhs = self.tensor_level()?;
            let span = lhs.span.join(rhs.span);
            lhs = SExpr { node: node(lhs.boxed(), rhs.boxed()), span };
        }
        Ok(lhs)
    }

    fn tensor_level(&mut self) -> Result<SExpr, ParseError> {
        let mut lhs = self.application()?;
        while self.at(&Tok::Star) {
            self.bump();
            let rhs = self.application()?;
            let span = lhs.span.join(rhs.span);
            lhs = SExpr { node: SNode::Tensor(lhs.boxed(), rhs.boxed()), span };
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_)
                | Tok::UnivU
                | Tok::UnivL
                | Tok::UnitTy
                | Tok::TopTy
                | Tok::ZeroTy
                | Tok::UnitTm
                | Tok::TopTm
                | Tok::LParen
                | Tok::LAngle
                | Tok::El
                | Tok::Lt
                | Tok::Mt
                | Tok::Lift
                | Tok::Sig
                | Tok::Unsig
                | Tok::Pr1
                | Tok::Pr2
                | Tok::Fst
                | Tok::Snd
                | Tok::Inl
                | Tok::Inr
                | Tok::Refl
                | Tok::Abort
                | Tok::IdKw
                | Tok::Ua
        )
    }

    fn application(&mut self) -> Result<SExpr, ParseError> {
        let mut head = self.app_atom()?;
        while self.starts_atom() {
            let arg = self.app_atom()?;
            let span = head.span.join(arg.span);
            head = SExpr { node: SNode::App(head.boxed(), arg.boxed()), span };
        }
        Ok(head)
    }

    /// One application item: a prefix operator with its arguments, or an atom.
    fn app_atom(&mut self) -> Result<SExpr, ParseError> {
        let start = self.span();
        let op = match self.peek() {
            Tok::Lt => Some(PrefixOp::Lt),
            Tok::Mt => Some(PrefixOp::Mt),
            Tok::El => Some(PrefixOp::El),
            Tok::Lift => Some(PrefixOp::Lift),
            Tok::Sig => Some(PrefixOp::Sig),
            Tok::Unsig => Some(PrefixOp::Unsig),
            Tok::Pr1 => Some(PrefixOp::Pr1),
            Tok::Pr2 => Some(PrefixOp::Pr2),
            Tok::Fst => Some(PrefixOp::Fst),
            Tok::Snd => Some(PrefixOp::Snd),
            Tok::Inl => Some(PrefixOp::Inl),
            Tok::Inr => Some(PrefixOp::Inr),
            Tok::Refl => Some(PrefixOp::Refl),
            Tok::Abort => Some(PrefixOp::Abort),
            _ => None,
        };
        if let Some(op) = op {
            self.bump();
            let arg = self.app_atom()?;
            let span = start.join(arg.span);
            return Ok(SExpr { node: SNode::Prefix(op, arg.boxed()), span });
        }
        if self.at(&Tok::IdKw) {
            self.bump();
            let a = self.app_atom()?;
            let m = self.app_atom()?;
            let n = self.app_atom()?;
            let span = start.join(n.span);
            return Ok(SExpr { node: SNode::IdTy(a.boxed(), m.boxed(), n.boxed()), span });
        }
        if self.at(&Tok::Ua) {
            self.bump();
            let mut args = Vec::new();
            for _ in 0..5 {
                args.push(self.app_atom()?);
            }
            let span = start.join(args.last().unwrap().span);
            return Ok(SExpr { node: SNode::UaTm(args), span });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<SExpr, ParseError> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(SExpr { node: SNode::Var(s), span: start })
            }
            Tok::UnivU => {
                self.bump();
                Ok(SExpr { node: SNode::UnivU, span: start })
            }
            Tok::UnivL => {
                self.bump();
                Ok(SExpr { node: SNode::UnivL, span: start })
            }
            Tok::UnitTy => {
                self.bump();
                Ok(SExpr { node: SNode::UnitTy, span: start })
            }
            Tok::TopTy => {
                self.bump();
                Ok(SExpr { node: SNode::TopTy, span: start })
            }
            Tok::ZeroTy => {
                self.bump();
                Ok(SExpr { node: SNode::ZeroTy, span: start })
            }
            Tok::UnitTm => {
                self.bump();
                Ok(SExpr { node: SNode::UnitTm, span: start })
            }
            Tok::TopTm => {
                self.bump();
                Ok(SExpr { node: SNode::TopTm, span: start })
            }
            Tok::LAngle => {
                self.bump();
                let a = self.expr()?;
                self.expect(&Tok::Comma)?;
                let b = self.expr()?;
                let end = self.expect(&Tok::RAngle)?;
                Ok(SExpr {
                    node: SNode::WithPair(a.boxed(), b.boxed()),
                    span: start.join(end),
                })
            }
            Tok::LParen => {
                self.bump();
                let a = self.expr()?;
                if self.at(&Tok::Comma) {
                    self.bump();
                    let b = self.expr()?;
                    let end = self.expect(&Tok::RParen)?;
                    Ok(SExpr { node: SNode::Pair(a.boxed(), b.boxed()), span: start.join(end) })
                } else {
                    self.expect(&Tok::RParen)?;
                    Ok(a)
                }
            }
            _ => Err(self.err("an expression")),
        }
    }
}

impl SExpr {
    pub fn boxed(self) -> Box<SExpr> {
        Box::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_def() {
        let ds = parse("def f (A : U) : L := cap (x : El A) . Unit ;").unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].kind, DeclKind::Def);
        assert_eq!(ds[0].name, "f");
        assert_eq!(ds[0].params.len(), 1);
    }

    #[test]
    fn missing_assign_is_reported_at_terminator() {
        let e = parse("def g : A -o B").unwrap_err();
        let SyntaxError::Parse(p) = e else { panic!("expected parse error") };
        assert!(p.expected.contains(';'));
    }

    #[test]
    fn precedence_tensor_before_lolli() {
        let ds = parse("def f : A * B -o C ; ").unwrap();
        let ty = ds[0].ty.as_ref().unwrap();
        assert!(matches!(&ty.node, SNode::Lolli(l, _) if matches!(l.node, SNode::Tensor(_, _))));
    }

    #[test]
    fn dependent_arrow() {
        let ds = parse("def f : (x : El A) -> L ;").unwrap();
        let ty = ds[0].ty.as_ref().unwrap();
        assert!(matches!(&ty.node, SNode::Binder { kind: BinderKind::Pi, .. }));
    }

    #[test]
    fn checkeq_with_tele() {
        let ds = parse("checkeq (A : U ; u : Lt (El A)) u == u : Lt (El A) ;").unwrap();
        assert_eq!(ds[0].kind, DeclKind::EqCheck);
        assert_eq!(ds[0].params.len(), 2);
        assert!(ds[0].params[1].linear);
    }

    #[test]
    fn all_let_forms() {
        let src = "def a : T := sig (let x be u in lift x) ;
                   def b : T := sig (let x * y be u in (x , y)) ;
                   def c : T := sig (let * be u in unit) ;
                   def d : T := sig (let x , y be u in (x , y)) ;";
        assert_eq!(parse(src).unwrap().len(), 4);
    }

    #[test]
    fn case_and_with_pair() {
        let src = "def a : T := sig (case u of inl x => < x , x > | inr y => w) ;";
        assert!(parse(src).is_ok());
    }

    #[test]
    fn split_and_j_forms() {
        let src = "def a : T := split1 s as t . C in x y . c ;
                   def b : T := sig (split2 s as t . C keep [ u : D ] in x y . c) ;
                   def e : T := J1 p as x y q . C in z . c ;
                   def f : T := sig (J2 p as x y q . C keep [ ] in z . c) ;";
        assert_eq!(parse(src).unwrap().len(), 4);
    }
}
